//! Blocks, cut vertices and the 2-separation tree of a constraint graph.
use minorcsp::graphs::{articulation_vertices, blocks, tutte_decompose};
use minorcsp::pattern::Graph;

fn main() {
    // Two 4-cycles glued at vertex 3, plus a pendant edge.
    let g = Graph::from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6), (6, 3), (6, 7)]).unwrap();
    println!("cut vertices: {:?}", articulation_vertices(&g));
    for b in blocks(&g) {
        println!("block {:?}", b);
    }

    let k4 = Graph::from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
    let tree = tutte_decompose(&k4).unwrap();
    for (i, n) in tree.nodes.iter().enumerate() {
        println!("node {i} {:?}: {:?} virtual {:?}", n.kind, n.vertices, n.virtual_edges);
    }
}
