//! Closure under an operation versus absence of the matching augmented pattern.
use minorcsp::cli::gen_random;
use minorcsp::occurrence::find_sub_pattern;
use minorcsp::pattern::{instance_relation, pattern_from_instance, polymorphism_pattern, OperationTable, RelationSpec};
use minorcsp::solvers::check_polymorphism;

fn main() {
    let ops = [
        ("min", OperationTable::from_fn(2, 3, |a| a[0].min(a[1])).unwrap()),
        ("first", OperationTable::from_fn(2, 3, |a| a[0]).unwrap()),
        ("sum mod 3", OperationTable::from_fn(2, 3, |a| (a[0] + a[1]) % 3).unwrap()),
    ];
    let pattern = polymorphism_pattern(2);
    for seed in 0..4 {
        let inst = gen_random(4, 3, 0.5, seed).unwrap();
        let micro = pattern_from_instance(&inst);
        for (name, f) in &ops {
            let closed = check_polymorphism(f, &inst).unwrap();
            let rel = instance_relation(&RelationSpec::Polymorphism(f.clone()), &inst).unwrap();
            let found = find_sub_pattern(&pattern, (&micro, &rel)).unwrap().is_some();
            assert_eq!(closed, !found);
            println!("seed {seed} {name:10} closed={closed}");
        }
    }
}
