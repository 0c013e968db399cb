//! Sub-pattern and topological-minor occurrence in an instance's microstructure.
use minorcsp::occurrence::{find_sub_pattern, occurs_tm, occurs_tm_with, TmOptions};
use minorcsp::pattern::{make_named, pattern_from_instance, Instance};

fn main() {
    // A 5-cycle of disequalities over two colours.
    let mut inst = Instance::uniform(5, 2);
    for i in 0..5 {
        inst.constrain(i, (i + 1) % 5, [(0, 1), (1, 0)]);
    }
    let micro = pattern_from_instance(&inst);
    let c3 = make_named("C3").unwrap();

    let sp = find_sub_pattern(&c3, &micro).unwrap();
    println!("C3 as a sub-pattern: {}", sp.is_some());

    let w = occurs_tm(&c3, &micro).unwrap().expect("the cycle is a subdivided triangle");
    println!("C3 as a topological minor after {} subdivisions", w.depth());
    for (u, v) in &w.steps {
        println!("  subdivide {:?}-{:?}", u, v);
    }
    assert!(w.verify(&c3, &micro));

    let slow = occurs_tm_with(&c3, &micro, TmOptions::exhaustive()).unwrap();
    assert!(slow.is_some());
}
