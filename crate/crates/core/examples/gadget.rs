//! Encode 3-SAT formulas as binary instances and look for the path pattern.
use minorcsp::gadgets::{build_sat_gadget, gadget_path, verify_gadget, Cnf, Variant};

fn main() {
    let sat = Cnf::new(2, vec![[1, 2, 2], [-1, -2, -2]]).unwrap();
    let unsat = Cnf::new(1, vec![[1, 1, 1], [-1, -1, -1]]).unwrap();
    for (name, phi) in [("sat", &sat), ("unsat", &unsat)] {
        let g = build_sat_gadget(phi);
        println!("{name}: {} variables, path {:?}", g.instance.num_vars(), gadget_path(&g).map(|p| p.len()));
        for variant in [Variant::Standard, Variant::GloballyConsistent] {
            let r = verify_gadget(phi, variant, None).unwrap();
            println!("  {variant:?}: satisfiable={} path={} agree={}", r.satisfiable, r.path, r.agree);
        }
    }
}
