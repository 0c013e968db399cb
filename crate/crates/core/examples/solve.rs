//! Solve the same instances with every method and compare.
use minorcsp::cli::gen_random;
use minorcsp::solvers::{solve, Method, SolveError};

fn main() {
    let methods = [
        Method::Bruteforce,
        Method::Mac,
        Method::Acyclic,
        Method::Articulation,
        Method::Tutte,
        Method::AcClass,
        Method::SacClass,
        Method::Auto,
    ];
    for seed in 0..5 {
        let inst = gen_random(7, 3, 0.35, seed).unwrap();
        print!("seed {seed}:");
        for m in methods {
            match solve(&inst, m, 1 << 20) {
                Ok(r) => print!(" {m:?}={:?}", r.status),
                Err(SolveError::NotInClass | SolveError::NotAcyclic) => print!(" {m:?}=-"),
                Err(e) => print!(" {m:?}=error({e})"),
            }
        }
        println!();
    }
}
