mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use minorcsp::gadgets::{
    build_sat_gadget, gadget_path, make_globally_consistent, verify_gadget, Cnf, Role, Variant, CLAUSE, LANE,
};
use minorcsp::graphs::{
    constraint_graph, graph_topological_minor, instance_constraint_graph, tutte_decompose, two_separations,
};
use minorcsp::io;
use minorcsp::occurrence::{find_sub_pattern, is_star_like, occurs_tm, occurs_tm_with, sub_pattern, TmOptions};
use minorcsp::pattern::{
    make_named, make_pivot, pattern_from_graph, pattern_from_instance, AnyPattern, AugmentedPattern, Graph, Pattern,
    Point,
};
use minorcsp::solvers::{establish_ac, establish_sac};
use proptest::prelude::*;
use rand::Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

/// Topological-minor occurrence by trying every subdivision sequence up to
/// the part-count bound and checking each with the SP oracle.
fn oracle_tm(p: &Pattern, q: &Pattern) -> bool {
    fn go(p: &Pattern, q: &Pattern, budget: usize) -> bool {
        if oracle_sp(p, q).is_some() {
            return true;
        }
        budget > 0 && p.edge_part_pairs().into_iter().any(|(u, v)| go(&p.subdivide(u, v).unwrap().0, q, budget - 1))
    }
    go(p, q, q.num_parts().saturating_sub(p.num_parts()))
}

/// A negative pattern drawn so that it is often star-like.
fn random_negative(r: &mut impl Rng) -> Pattern {
    let p = random_pattern(r, 4, 2).negative_reduct();
    if r.gen_bool(0.5) {
        return p;
    }
    // keep only a spanning forest of the part graph
    let mut seen = BTreeSet::new();
    let mut keep = Vec::new();
    for e in p.negative() {
        let (a, b) = e.ends();
        let key = (p.part_of(a).unwrap(), p.part_of(b).unwrap());
        if seen.insert((key.0.min(key.1), key.0.max(key.1))) {
            keep.push((a, b));
        }
    }
    Pattern::new(p.part_groups().into_values(), [], keep).unwrap()
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn microstructure_is_complete(seed in any::<u64>()) {
        let inst = random_instance(&mut rng(seed), 6, 3);
        let pi = pattern_from_instance(&inst);
        prop_assert!(pi.is_complete());
        prop_assert_eq!(pi.num_points(), inst.domains().iter().map(|d| d.len()).sum::<usize>());
    }

    #[test]
    fn subdivision_counts(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_pattern(&mut r, 4, 3);
        for (u, v) in p.edge_part_pairs() {
            let (q, new) = p.subdivide(u, v).unwrap();
            let between = |set: &BTreeSet<minorcsp::pattern::Edge>| set.iter().filter(|e| {
                let (a, b) = e.ends();
                let pair = (p.part_of(a).unwrap(), p.part_of(b).unwrap());
                pair == (u, v) || pair == (v, u)
            }).count();
            prop_assert_eq!(q.num_points(), p.num_points() + between(p.positive()) + 2 * between(p.negative()));
            prop_assert_eq!(q.num_parts(), p.num_parts() + 1);
            prop_assert!(new.is_some());
        }
    }

    #[test]
    fn graph_patterns_are_negative(seed in any::<u64>()) {
        let g = random_graph_no_isolated(&mut rng(seed), 6);
        let pg = pattern_from_graph(&g);
        prop_assert!(pg.positive().is_empty());
        prop_assert_eq!(pg.negative().len(), g.num_edges());
        // constraint_graph(PG(G)) is G with vertices renamed by part representative
        let rep: BTreeMap<u32, u32> = g.edges().iter().enumerate()
            .flat_map(|(i, &(a, b))| [(a, pg.part_of(Point(2 * i as u32)).unwrap().0), (b, pg.part_of(Point(2 * i as u32 + 1)).unwrap().0)])
            .collect();
        let renamed = Graph::from_edges(g.edges().iter().map(|&(a, b)| (rep[&a], rep[&b]))).unwrap();
        prop_assert_eq!(constraint_graph(&pg), renamed);
    }

    #[test]
    fn normalisation_is_idempotent(seed in any::<u64>()) {
        let mut inst = random_instance(&mut rng(seed), 5, 3);
        inst.normalize();
        let once = inst.clone();
        inst.normalize();
        prop_assert_eq!(once, inst);
    }

    #[test]
    fn sp_matches_the_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = random_pattern(&mut r, 4, 2);
        let p = if r.gen_bool(0.5) { shrink(&mut r, &q) } else { random_pattern(&mut r, 3, 2) };
        let found = sub_pattern(&p, &q);
        prop_assert_eq!(found.is_some(), oracle_sp(&p, &q).is_some());
        if let Some(e) = found {
            prop_assert!(e.verify(&p, &q));
        }
    }

    #[test]
    fn lemma_one_on_random_triples(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_pattern(&mut r, 4, 2);
        let shrunk = shrink(&mut r, &c);
        let b = random_subdivision(&mut r, &shrunk, 1);
        let a = shrink(&mut r, &b);
        for p in [&a, &b, &c] {
            prop_assert!(sub_pattern(p, p).is_some());
            prop_assert!(occurs_tm(p, p).unwrap().is_some());
        }
        if sub_pattern(&a, &b).is_some() {
            prop_assert!(occurs_tm(&a, &b).unwrap().is_some());
        }
        if sub_pattern(&a, &b).is_some() && sub_pattern(&b, &c).is_some() {
            prop_assert!(sub_pattern(&a, &c).is_some());
        }
        if occurs_tm(&a, &b).unwrap().is_some() && occurs_tm(&b, &c).unwrap().is_some() {
            prop_assert!(occurs_tm(&a, &c).unwrap().is_some());
        }
    }

    #[test]
    fn star_criterion_is_sound_for_the_definition(seed in any::<u64>()) {
        let p = random_negative(&mut rng(seed));
        let criterion = is_star_like(&p);
        let definition = oracle_star_like(&p);
        prop_assert!(!criterion || definition, "criterion accepts {:?}", p);
        if p.points().all(|x| p.negative_degree(x) <= 1) {
            prop_assert_eq!(criterion, definition, "{:?}", p);
        }
    }

    #[test]
    fn ac_and_sac_only_remove(seed in any::<u64>()) {
        let inst = random_instance(&mut rng(seed), 6, 3);
        for reduce in [establish_ac, establish_sac] {
            let once = reduce(&inst);
            prop_assert_eq!(reduce(&once), once.clone());
            for v in 0..inst.num_vars() {
                prop_assert!(once.domain(v).is_subset(inst.domain(v)));
            }
            for (u, v, rel) in once.constraints() {
                for &(a, b) in rel {
                    prop_assert!(inst.allowed(u, a, v, b));
                }
            }
        }
    }

    #[test]
    fn instances_round_trip(seed in any::<u64>()) {
        let inst = random_instance(&mut rng(seed), 6, 4);
        let (back, _) = io::instance_from_json(io::instance_to_json(&inst)).unwrap();
        prop_assert_eq!(back, inst);
    }

    #[test]
    fn patterns_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_pattern(&mut r, 4, 3);
        let any: AnyPattern = if r.gen_bool(0.5) {
            let pts: Vec<Point> = p.points().collect();
            let tuples: Vec<Vec<Point>> = (0..3).map(|_| (0..2).map(|_| pts[r.gen_range(0..pts.len())]).collect()).collect();
            AugmentedPattern::augment(p, 2, tuples).unwrap().into()
        } else {
            p.into()
        };
        prop_assert_eq!(io::pattern_from_json(io::any_pattern_to_json(&any)).unwrap(), any);
    }

    #[test]
    fn graphs_round_trip(seed in any::<u64>()) {
        let g = random_graph_no_isolated(&mut rng(seed), 7);
        prop_assert_eq!(io::graph_from_json(io::graph_to_json(&g)).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(config(60))]

    #[test]
    fn exhaustive_tm_matches_the_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_pattern(&mut r, 3, 2);
        let q = if r.gen_bool(0.5) {
            random_subdivision(&mut r, &p, 2)
        } else {
            random_pattern(&mut r, 5, 2)
        };
        let found = occurs_tm_with(&p, &q, TmOptions::exhaustive()).unwrap();
        prop_assert_eq!(found.is_some(), oracle_tm(&p, &q), "{:?} in {:?}", p, q);
        if let Some(w) = &found {
            prop_assert!(w.verify(&p, &q));
            let back = io::witness_from_json(io::witness_to_json(w)).unwrap();
            prop_assert_eq!(&back, w);
            prop_assert!(back.verify(&p, &q));
        }
        // the shortcuts must not change the answer
        prop_assert_eq!(occurs_tm(&p, &q).unwrap().is_some(), found.is_some());
    }

    #[test]
    fn star_like_patterns_collapse(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_negative(&mut r);
        prop_assume!(is_star_like(&p));
        let inst = random_instance(&mut r, 6, 3);
        let pi = pattern_from_instance(&inst);
        let sp = find_sub_pattern(&p, &pi).unwrap().is_some();
        let tm = occurs_tm_with(&p, &pi, TmOptions::exhaustive()).unwrap().is_some();
        prop_assert_eq!(sp, tm);
    }

    #[test]
    fn ac_creates_no_occurrences(seed in any::<u64>()) {
        let inst = random_instance(&mut rng(seed), 6, 3);
        let (pi, pac) = (pattern_from_instance(&inst), pattern_from_instance(&establish_ac(&inst)));
        for key in ["J", "K", "C3"] {
            let p = make_named(key).unwrap();
            if find_sub_pattern(&p, &pac).unwrap().is_some() {
                prop_assert!(find_sub_pattern(&p, &pi).unwrap().is_some());
            }
            if occurs_tm(&p, &pac).unwrap().is_some() {
                prop_assert!(occurs_tm(&p, &pi).unwrap().is_some());
            }
        }
    }

    #[test]
    fn graph_minor_matches_the_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let h = random_graph_no_isolated(&mut r, 4);
        let g = random_graph_no_isolated(&mut r, 5);
        let found = graph_topological_minor(&h, &g).unwrap();
        prop_assert_eq!(found.is_some(), oracle_graph_tm(&h, &g));
        if let Some(w) = found {
            prop_assert!(w.verify(&h, &g));
        }
    }

    #[test]
    fn decompositions_reassemble(seed in any::<u64>()) {
        let g = random_graph_no_isolated(&mut rng(seed), 7);
        prop_assume!(g.is_connected());
        let t = tutte_decompose(&g).unwrap();
        prop_assert_eq!(t.reassemble(), g.clone());
        for (sep, side) in two_separations(&g) {
            let cut: BTreeSet<u32> = sep.iter().copied().collect();
            let rest: BTreeSet<u32> = g.vertices().difference(&cut).copied().collect();
            let comps = g.induced(&rest).components();
            prop_assert!(comps.len() >= 2);
            prop_assert!(!side.is_empty() && side.is_subset(&rest) && side.len() < rest.len());
        }
    }

    #[test]
    fn globally_consistent_outputs_extend(seed in any::<u64>()) {
        let inst = random_instance(&mut rng(seed), 3, 2);
        let gc = make_globally_consistent(&inst);
        prop_assert!(every_point_extends(&gc));
        // original values gain no new compatibilities
        for u in 0..inst.num_vars() {
            for v in u + 1..inst.num_vars() {
                for &a in inst.domain(u) {
                    for &b in inst.domain(v) {
                        prop_assert_eq!(gc.allowed(u, a, v, b), inst.allowed(u, a, v, b));
                    }
                }
            }
        }
    }

    #[test]
    fn gadget_paths_follow_the_chain(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3usize);
        let m = r.gen_range(1..=3usize);
        let clauses = (0..m)
            .map(|_| std::array::from_fn(|_| r.gen_range(1..=n as i32) * if r.gen_bool(0.5) { 1 } else { -1 }))
            .collect();
        let phi = Cnf::new(n, clauses).unwrap();
        let g = build_sat_gadget(&phi);
        prop_assert_eq!(gadget_path(&g).is_some(), phi.is_satisfiable());
        if let Some(path) = gadget_path(&g) {
            let ps: Vec<usize> = path.iter().filter_map(|&(v, _)| match g.roles[v] {
                Role::P { index } => Some(index),
                _ => None,
            }).collect();
            prop_assert_eq!(ps, (0..=n + m).collect::<Vec<_>>());
        }
        // no positive edge joins a chain-lane value to a clause-lane value
        let lane = |v: usize| matches!(g.roles[v], Role::V { .. } | Role::Vbar { .. });
        for v in (0..g.instance.num_vars()).filter(|&v| lane(v)) {
            for w in (0..g.instance.num_vars()).filter(|&w| w != v && lane(w)) {
                prop_assert!(g.instance.is_constrained(v, w));
                prop_assert!(!g.instance.allowed(v, LANE, w, CLAUSE));
            }
        }
        let cg = instance_constraint_graph(&g.instance);
        prop_assert_eq!(cg.num_vertices(), g.instance.num_vars());
    }
}

#[test]
fn pivot_shape() {
    for k in 1..=5 {
        let p = make_pivot(k);
        assert_eq!(p.negative().len(), 3 * k as usize);
        let centres =
            p.parts().into_iter().filter(|&u| p.part_points(u).iter().any(|&x| p.negative_degree(x) == 2)).count();
        assert_eq!(centres, 1);
    }
}

#[test]
fn three_checkers_agree_on_the_smallest_gadgets() {
    for c in all_clauses(1) {
        let phi = Cnf::new(1, vec![c]).unwrap();
        let r = verify_gadget(&phi, Variant::Standard, Some(7)).unwrap();
        assert!(r.agree, "{c:?}");
    }
}
