//! Report which tractable classes random instances fall into.
use minorcsp::cli::gen_random;
use minorcsp::solvers::classify;

fn main() {
    for seed in 0..6 {
        let inst = gen_random(6, 3, 0.4, seed).unwrap();
        let r = classify(&inst).unwrap();
        println!(
            "seed {seed}: acyclic={} K={} L={} K_neq={} C3_neq={} pivot={:?} -> {:?}",
            r.acyclic, r.forb_tm_k, r.forb_tm_l, r.forb_tm_k_neq, r.forb_tm_c3_neq, r.forb_sp_pivot, r.recommended
        );
    }
}
