//! The twelve acceptance criteria. Runs without the libtest harness and
//! prints one PASS/FAIL line per criterion; exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use minorcsp::gadgets::{build_gc_gadget, build_sat_gadget, gadget_path, make_globally_consistent, Cnf};
use minorcsp::graphs::{
    constraint_graph, graph_topological_minor_with, instance_constraint_graph, is_acyclic, MinorLimits,
};
use minorcsp::occurrence::{find_sub_pattern, forbids_with, occurs_tm, occurs_tm_with, sub_pattern, Mode, TmOptions};
use minorcsp::pattern::{
    make_named, make_pivot, pattern_from_graph, pattern_from_instance, polymorphism_pattern, AnyPattern, Graph,
    Instance, OperationTable, RelationSpec,
};
use minorcsp::solvers::{
    brute_force_solve, check_polymorphism, establish_ac, establish_sac, mac_solve, solve_acyclic, solve_articulation,
    solve_tutte_scheme, SolveResult, Status,
};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn named(k: &str) -> AnyPattern {
    make_named(k).unwrap()
}

fn exhaustive() -> TmOptions {
    TmOptions::exhaustive()
}

fn occurs(p: &AnyPattern, inst: &Instance, mode: Mode) -> bool {
    !forbids_with(std::slice::from_ref(p), inst, mode, Some(&RelationSpec::Neq), exhaustive()).unwrap().forbids
}

// 1
fn constructive_arithmetic() -> Outcome {
    let pg = pattern_from_graph(&Graph::cycle(3));
    ensure(
        pg.num_points() == 6 && pg.num_parts() == 3 && pg.negative().len() == 3 && pg.positive().is_empty(),
        || format!("PG(C3) has {} points, {} parts", pg.num_points(), pg.num_parts()),
    )?;
    let mut r = rng(1);
    let mut draws = 0;
    while draws < 200 {
        let p = random_pattern(&mut r, 4, 3);
        let parts = p.parts();
        if parts.len() < 2 {
            continue;
        }
        let u = parts[r.gen_range(0..parts.len())];
        let v = parts[r.gen_range(0..parts.len())];
        if u == v {
            continue;
        }
        let pos = p.positive().iter().filter(|e| spans(&p, e.ends(), u, v)).count();
        let neg = p.negative().iter().filter(|e| spans(&p, e.ends(), u, v)).count();
        let (q, new) = p.subdivide(u, v).unwrap();
        if pos + neg == 0 {
            ensure(q == p && new.is_none(), || "edgeless subdivision changed the pattern".into())?;
            continue;
        }
        draws += 1;
        ensure(q.num_points() == p.num_points() + pos + 2 * neg && q.num_parts() == p.num_parts() + 1, || {
            format!("counts off after subdividing {u:?} {v:?} of {p:?}")
        })?;
    }
    Ok(format!("PG(C3) = 6 points / 3 parts / 3 negatives; {draws} subdivisions"))
}

fn spans(
    p: &minorcsp::pattern::Pattern,
    (a, b): (minorcsp::pattern::Point, minorcsp::pattern::Point),
    u: minorcsp::pattern::Part,
    v: minorcsp::pattern::Part,
) -> bool {
    let (pa, pb) = (p.part_of(a).unwrap(), p.part_of(b).unwrap());
    (pa, pb) == (u, v) || (pa, pb) == (v, u)
}

// 2
fn lemma_one() -> Outcome {
    let mut r = rng(2);
    let (mut sp_chains, mut tm_chains) = (0, 0);
    for i in 0..200 {
        let c = random_pattern(&mut r, 4, 2);
        // half the triples are built as chains so the premises hold often
        let (a, b) = if i % 2 == 0 {
            let b = shrink(&mut r, &c);
            (shrink(&mut r, &b), b)
        } else {
            (random_pattern(&mut r, 3, 2), random_pattern(&mut r, 4, 2))
        };
        let b_sub = random_subdivision(&mut r, &b, 1);
        let c_sub = random_subdivision(&mut r, &c, 1);
        for p in [&a, &b, &c] {
            ensure(sub_pattern(p, p).is_some(), || format!("SP not reflexive on {p:?}"))?;
            ensure(occurs_tm(p, p).unwrap().is_some(), || format!("TM not reflexive on {p:?}"))?;
        }
        for (p, q) in [(&a, &b), (&b, &c), (&a, &c), (&a, &b_sub), (&b, &c_sub)] {
            let sp = sub_pattern(p, q);
            ensure(sp.is_some() == oracle_sp(p, q).is_some(), || {
                format!("SP disagrees with oracle on {p:?} in {q:?}")
            })?;
            if let Some(e) = sp {
                ensure(e.verify(p, q), || "embedding does not verify".into())?;
                ensure(occurs_tm(p, q).unwrap().is_some(), || format!("SP without TM: {p:?} in {q:?}"))?;
            }
        }
        if sub_pattern(&a, &b).is_some() && sub_pattern(&b, &c).is_some() {
            sp_chains += 1;
            ensure(sub_pattern(&a, &c).is_some(), || format!("SP not transitive: {a:?} {b:?} {c:?}"))?;
        }
        let tm = |p, q| occurs_tm(p, q).unwrap();
        if let (Some(w1), Some(w2)) = (tm(&a, &b_sub), tm(&b_sub, &c_sub)) {
            tm_chains += 1;
            ensure(w1.verify(&a, &b_sub) && w2.verify(&b_sub, &c_sub), || "TM witness does not verify".into())?;
            ensure(tm(&a, &c_sub).is_some(), || format!("TM not transitive: {a:?} {b_sub:?} {c_sub:?}"))?;
        }
    }
    ensure(sp_chains >= 50 && tm_chains >= 50, || format!("too few chains: SP {sp_chains}, TM {tm_chains}"))?;
    Ok(format!("200 triples; {sp_chains} SP chains, {tm_chains} TM chains"))
}

// 3
fn graph_lemma() -> Outcome {
    let mut r = rng(3);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..100 {
        let g = random_graph_no_isolated(&mut r, 5);
        let q = random_complete_pattern(&mut r, 6, 3);
        let cg = constraint_graph(&q);
        let tm = occurs_tm_with(&pattern_from_graph(&g), &q, exhaustive()).unwrap();
        let graph = graph_topological_minor_with(&g, &cg, MinorLimits::unbounded()).unwrap();
        let oracle = oracle_graph_tm(&g, &cg);
        ensure(tm.is_some() == graph.is_some() && graph.is_some() == oracle, || {
            format!("G={g:?} Q={q:?}: pattern {} graph {} oracle {oracle}", tm.is_some(), graph.is_some())
        })?;
        if let Some(w) = &tm {
            ensure(w.verify(&pattern_from_graph(&g), &q), || "TM witness does not verify".into())?;
        }
        if oracle {
            yes += 1
        } else {
            no += 1
        }
    }
    Ok(format!("100 pairs ({yes} minors, {no} non-minors)"))
}

// 4
fn acyclicity() -> Outcome {
    let mut r = rng(4);
    let c3: AnyPattern = pattern_from_graph(&Graph::cycle(3)).into();
    let mut acyclic = 0;
    for i in 0..300 {
        let inst = if i % 3 == 0 { random_tree_instance(&mut r, 6, 3) } else { random_instance(&mut r, 6, 3) };
        let member = !occurs(&c3, &inst, Mode::Tm);
        let a = is_acyclic(&instance_constraint_graph(&inst));
        ensure(member == a, || format!("ForbTM(PG(C3)) {member} but acyclic {a} on {inst:?}"))?;
        acyclic += a as usize;
    }
    Ok(format!("300 instances ({acyclic} acyclic)"))
}

// 5
fn star_collapse() -> Outcome {
    let mut r = rng(5);
    let pats: Vec<(&str, AnyPattern)> =
        vec![("J", named("J")), ("Pivot(1)", make_pivot(1).into()), ("Pivot(2)", make_pivot(2).into())];
    let mut members = [0usize; 3];
    for _ in 0..200 {
        let inst = random_instance(&mut r, 8, 3);
        for (k, (name, p)) in pats.iter().enumerate() {
            let sp = !occurs(p, &inst, Mode::Sp);
            let tm = !occurs(p, &inst, Mode::Tm);
            ensure(sp == tm, || format!("{name}: ForbSP {sp} vs ForbTM {tm} on {inst:?}"))?;
            members[k] += sp as usize;
        }
    }
    Ok(format!("200 instances; members J {}, Pivot(1) {}, Pivot(2) {}", members[0], members[1], members[2]))
}

fn agree(name: &str, r: &SolveResult, truth: &SolveResult, inst: &Instance) -> Result<(), String> {
    ensure(r.status == truth.status, || {
        format!("{name}: {:?} vs brute force {:?} on {inst:?}", r.status, truth.status)
    })?;
    ensure(r.status == Status::Unsat || r.verifies(inst), || format!("{name}: assignment fails on {inst:?}"))
}

// 6
fn solver_equivalence() -> Outcome {
    let mut r = rng(6);
    let (mut sat, mut acyclic) = (0, 0);
    for i in 0..500 {
        let inst = if i % 4 == 0 { random_tree_instance(&mut r, 7, 3) } else { random_instance(&mut r, 7, 3) };
        let truth = brute_force_solve(&inst).unwrap();
        ensure(truth.is_sat() == oracle_sat(&inst), || format!("brute force disagrees with enumeration on {inst:?}"))?;
        agree("mac", &mac_solve(&inst), &truth, &inst)?;
        agree(
            "articulation",
            &solve_articulation(&inst, &mut |s: &Instance| Ok(mac_solve(s))).unwrap(),
            &truth,
            &inst,
        )?;
        agree("tutte", &solve_tutte_scheme(&inst), &truth, &inst)?;
        if is_acyclic(&instance_constraint_graph(&inst)) {
            acyclic += 1;
            agree("acyclic", &solve_acyclic(&inst).unwrap(), &truth, &inst)?;
        }
        sat += truth.is_sat() as usize;
    }
    Ok(format!("500 instances ({sat} SAT, {acyclic} acyclic)"))
}

fn class_protocol(seed: u64, key: &str, reduce: fn(&Instance) -> Instance) -> Result<(usize, usize, usize), String> {
    let mut r = rng(seed);
    let p = named(key);
    let (mut members, mut sat, mut tried) = (0, 0, 0);
    while members < 200 {
        tried += 1;
        if tried > 200_000 {
            return Err(format!("only {members} members in {tried} draws"));
        }
        let inst = random_instance(&mut r, 6, 3);
        if occurs(&p, &inst, Mode::Tm) {
            continue;
        }
        members += 1;
        let nonempty = !reduce(&inst).has_empty_domain() || inst.num_vars() == 0;
        let truth = oracle_sat(&inst);
        ensure(nonempty == truth, || format!("{key}: propagation says {nonempty}, search {truth} on {inst:?}"))?;
        sat += truth as usize;
    }
    Ok((members, sat, tried))
}

// 7
fn ac_decides() -> Outcome {
    let (m, sat, tried) = class_protocol(7, "K_neq", establish_ac)?;
    Ok(format!("{m} members of ForbTM(K≠) from {tried} draws ({sat} SAT)"))
}

// 8
fn sac_decides() -> Outcome {
    let (m, sat, tried) = class_protocol(8, "C3_neq", establish_sac)?;
    Ok(format!("{m} members of ForbTM(PG(C3)≠) from {tried} draws ({sat} SAT)"))
}

// 9
fn ac_monotone() -> Outcome {
    let mut r = rng(9);
    let pats = [named("J"), named("K"), pattern_from_graph(&Graph::cycle(3)).into()];
    let mut hits = 0;
    for _ in 0..200 {
        let inst = random_instance(&mut r, 6, 3);
        let ac = establish_ac(&inst);
        let (pi, pac) = (pattern_from_instance(&inst), pattern_from_instance(&ac));
        for p in &pats {
            if find_sub_pattern(p, &pac).unwrap().is_some() {
                hits += 1;
                ensure(find_sub_pattern(p, &pi).unwrap().is_some(), || {
                    format!("SP occurrence appears under AC: {inst:?}")
                })?;
            }
            if occurs_tm_with(p, &pac, exhaustive()).unwrap().is_some() {
                ensure(occurs_tm_with(p, &pi, exhaustive()).unwrap().is_some(), || {
                    format!("TM occurrence appears under AC: {inst:?}")
                })?;
            }
        }
    }
    Ok(format!("200 instances, {hits} SP occurrences in AC(I) all present in I"))
}

// 10
fn gadget_correspondence() -> Outcome {
    let mut formulas = Vec::new();
    for n in 1..=2 {
        let clauses = all_clauses(n);
        for &c in &clauses {
            formulas.push(Cnf::new(n as usize, vec![c]).unwrap());
            for &d in &clauses {
                formulas.push(Cnf::new(n as usize, vec![c, d]).unwrap());
            }
        }
    }
    let exhaustive_count = formulas.len();
    let mut r = rng(10);
    for _ in 0..100 {
        let n = r.gen_range(1..=3usize);
        let m = r.gen_range(1..=3usize);
        let clauses = (0..m)
            .map(|_| std::array::from_fn(|_| r.gen_range(1..=n as i32) * if r.gen_bool(0.5) { 1 } else { -1 }))
            .collect();
        formulas.push(Cnf::new(n, clauses).unwrap());
    }
    let mut unsat = 0;
    for phi in &formulas {
        let g = build_sat_gadget(phi);
        let s = phi.is_satisfiable();
        ensure(gadget_path(&g).is_some() == s, || format!("path/SAT mismatch on {:?}", phi.clauses()))?;
        unsat += !s as usize;
    }
    let mut min_depths = std::collections::BTreeSet::new();
    let mut tm_checked = 0;
    for c in all_clauses(1) {
        let phi = Cnf::new(1, vec![c]).unwrap();
        let g = build_sat_gadget(&phi);
        let pi = pattern_from_instance(&g.instance);
        let w = occurs_tm_with(&g.pattern, &pi, exhaustive()).unwrap();
        ensure(w.is_some() == phi.is_satisfiable(), || format!("TM/SAT mismatch on {c:?}"))?;
        if let Some(w) = &w {
            ensure(w.verify(&g.pattern, &pi), || "witness does not verify".into())?;
            ensure(w.depth() <= 3, || format!("minimal depth {} exceeds 3 on {c:?}", w.depth()))?;
            min_depths.insert(w.depth());
        }
        // the path witness: the middle edge of M subdivided n(m+1)+2m-1 = 3 times
        let canonical = subdivide_middle(&g.pattern, 3);
        let sp = oracle_sp(&canonical, &pi).is_some();
        ensure(sp == phi.is_satisfiable(), || format!("depth-3 path witness {sp} on {c:?}"))?;
        tm_checked += 1;
    }
    Ok(format!(
        "{exhaustive_count} exhaustive + 100 random formulas ({unsat} UNSAT); {tm_checked} exact TM checks, depth-3 path witness present, minimal depths {min_depths:?}"
    ))
}

/// Subdivides the one part pair of `p` that carries no negative edge `k` times,
/// always at the pair next to the far end.
fn subdivide_middle(p: &minorcsp::pattern::Pattern, k: usize) -> minorcsp::pattern::Pattern {
    let neg_pairs: std::collections::BTreeSet<_> = p
        .negative()
        .iter()
        .map(|e| {
            let (a, b) = e.ends();
            let (x, y) = (p.part_of(a).unwrap(), p.part_of(b).unwrap());
            (x.min(y), x.max(y))
        })
        .collect();
    let (mut u, v) = p.edge_part_pairs().into_iter().find(|pair| !neg_pairs.contains(pair)).unwrap();
    let mut cur = p.clone();
    for _ in 0..k {
        let (next, new) = cur.subdivide(u, v).unwrap();
        cur = next;
        u = new.unwrap();
    }
    cur
}

// 11
fn global_consistency() -> Outcome {
    let mut r = rng(11);
    for _ in 0..50 {
        let inst = random_instance(&mut r, 4, 2);
        let gc = make_globally_consistent(&inst);
        ensure(every_point_extends(&gc), || format!("a point does not extend in GC({inst:?})"))?;
    }
    let mut checked = 0;
    for c in all_clauses(1) {
        let phi = Cnf::new(1, vec![c]).unwrap();
        let g = build_gc_gadget(&phi);
        ensure(gadget_path(&g).is_some() == phi.is_satisfiable(), || format!("GC path/SAT mismatch on {c:?}"))?;
        ensure(every_point_extends(&g.instance), || format!("GC gadget not globally consistent on {c:?}"))?;
        checked += 1;
    }
    let unsat = Cnf::new(1, vec![[1, 1, 1], [-1, -1, -1]]).unwrap();
    ensure(gadget_path(&build_gc_gadget(&unsat)).is_none(), || "GC path on an unsatisfiable formula".into())?;
    Ok(format!("50 random instances; {checked} n=m=1 GC gadgets plus one UNSAT control"))
}

// 12
fn polymorphisms() -> Outcome {
    let mut r = rng(12);
    let pat: AnyPattern = polymorphism_pattern(2).into();
    let (mut ops, mut closed) = (0, 0);
    for d in 1..=3u32 {
        let cells = (d * d) as usize;
        let count = d.pow(cells as u32);
        for code in 0..count {
            let mut table = Vec::with_capacity(cells);
            let mut c = code;
            for _ in 0..cells {
                table.push(c % d);
                c /= d;
            }
            let f = OperationTable::from_fn(2, d, |t| table[(t[0] * d + t[1]) as usize]).unwrap();
            let spec = RelationSpec::Polymorphism(f.clone());
            for _ in 0..20 {
                let n = r.gen_range(2..=4);
                let mut inst = Instance::uniform(n, d);
                for u in 0..n {
                    for v in u + 1..n {
                        if r.gen_bool(0.6) {
                            inst.set_relation(u, v, random_relation(&mut r, d));
                        }
                    }
                }
                let poly = check_polymorphism(&f, &inst).unwrap();
                let absent = forbids_with(std::slice::from_ref(&pat), &inst, Mode::Sp, Some(&spec), exhaustive())
                    .unwrap()
                    .forbids;
                ensure(poly == absent, || format!("f={table:?}: closure {poly}, pattern absent {absent} on {inst:?}"))?;
                closed += poly as usize;
            }
            ops += 1;
        }
    }
    Ok(format!("{ops} operations x 20 instances ({closed} closed)"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let min = |m: u64| Duration::from_secs(60 * m);
    let criteria = [
        Criterion {
            id: 1,
            name: "constructive arithmetic",
            limit: Duration::from_secs(1),
            run: constructive_arithmetic,
        },
        Criterion { id: 2, name: "reflexivity, SP implies TM, transitivity", limit: min(1), run: lemma_one },
        Criterion { id: 3, name: "pattern TM vs graph TM", limit: min(5), run: graph_lemma },
        Criterion { id: 4, name: "acyclicity", limit: min(2), run: acyclicity },
        Criterion { id: 5, name: "star-like SP/TM collapse", limit: min(2), run: star_collapse },
        Criterion { id: 6, name: "solvers agree with brute force", limit: min(10), run: solver_equivalence },
        Criterion { id: 7, name: "AC decides ForbTM(K≠)", limit: min(10), run: ac_decides },
        Criterion { id: 8, name: "SAC decides ForbTM(PG(C3)≠)", limit: min(10), run: sac_decides },
        Criterion { id: 9, name: "AC never creates occurrences", limit: min(2), run: ac_monotone },
        Criterion { id: 10, name: "gadget SAT / path / TM correspondence", limit: min(15), run: gadget_correspondence },
        Criterion { id: 11, name: "global consistency", limit: min(5), run: global_consistency },
        Criterion { id: 12, name: "polymorphism closure vs augmented pattern", limit: min(10), run: polymorphisms },
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let results: Vec<(&Criterion, Outcome, Duration)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .filter(|c| only.is_empty() || only.contains(&c.id))
            .map(|c| {
                s.spawn(move || {
                    let t = Instant::now();
                    let out = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("panicked".into()));
                    (c, out, t.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failed = 0;
    for (c, out, took) in results {
        let verdict = match (&out, took <= c.limit) {
            (Ok(_), true) => "PASS",
            _ => "FAIL",
        };
        let detail = match out {
            Ok(d) if took <= c.limit => d,
            Ok(d) => format!("{d}; over the {:?} limit", c.limit),
            Err(e) => e,
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("{verdict} {:>2} {} [{:.2?}] {detail}", c.id, c.name, took);
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
