//! Build patterns from the catalogue, from graphs and by subdivision.
use minorcsp::graphs::constraint_graph;
use minorcsp::occurrence::{is_star_like, isomorphic};
use minorcsp::pattern::{make_named, pattern_from_graph, Graph, Part};

fn main() {
    for name in ["C3", "J", "K", "L", "M", "E", "pivot:2"] {
        let p = make_named(name).unwrap().into_plain().unwrap();
        println!(
            "{name:8} points={} parts={} +{} -{} star-like={}",
            p.num_points(),
            p.num_parts(),
            p.positive().len(),
            p.negative().len(),
            is_star_like(&p)
        );
    }

    let k4 = Graph::from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let pg = pattern_from_graph(&k4);
    println!("PG(K4): {} points in {} parts", pg.num_points(), pg.num_parts());
    assert_eq!(constraint_graph(&pg).num_edges(), 6);

    let c3 = make_named("C3").unwrap().into_plain().unwrap();
    let (sub, new_part) = c3.subdivide(Part(0), Part(1)).unwrap();
    println!("C3 subdivided once: {} parts, new part {:?}", sub.num_parts(), new_part);
    let (again, _) = c3.subdivide(Part(0), Part(1)).unwrap();
    assert!(isomorphic(&sub, &again));
}
