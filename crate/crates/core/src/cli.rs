//! The `minorcsp` command line.
//!
//! Output is JSON on stdout unless `--human` is given. Exit codes: 0 ok or
//! true, 1 false or not found, 2 usage or input error, 10 SAT, 20 UNSAT,
//! 30 instance outside the requested class.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::gadgets::{build_gc_gadget, build_sat_gadget, verify_gadget, Cnf, Variant};
use crate::graphs::{instance_constraint_graph, tutte_decompose};
use crate::io;
use crate::occurrence::{find_sub_pattern, occurs_tm_with, PatternRef, TmOptions};
use crate::pattern::{
    make_named, pattern_from_instance, AnyPattern, AugmentedPattern, Instance, Part, PatternError, RelationSpec, Value,
};
use crate::solvers::{
    self, classify_with, establish_ac, establish_sac, ClassifyOptions, Method, SolveError, Status, DEFAULT_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SAT: i32 = 10;
pub const EXIT_UNSAT: i32 = 20;
pub const EXIT_NOT_IN_CLASS: i32 = 30;

/// Environment variable overriding the brute-force search-space cap.
pub const CAP_VAR: &str = "MINORCSP_CAP";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("density {0} is outside [0, 1]")]
    BadDensity(f64),
}

/// Random instance on `vars` variables sharing the domain `0..dom`.
///
/// Each unordered pair `{i, j}`, `i < j` in ascending order, is constrained
/// with probability `density`. A constrained pair keeps each value pair with
/// probability one half, redrawn until the relation is neither empty nor the
/// full product (with a one-value domain it is left empty). The stream comes
/// from `ChaCha8Rng::seed_from_u64(seed)`.
pub fn gen_random(vars: usize, dom: u32, density: f64, seed: u64) -> Result<Instance, GenError> {
    if !(0.0..=1.0).contains(&density) {
        return Err(GenError::BadDensity(density));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inst = Instance::uniform(vars, dom);
    let all: Vec<(Value, Value)> = (0..dom).flat_map(|a| (0..dom).map(move |b| (a, b))).collect();
    for u in 0..vars {
        for v in u + 1..vars {
            if !rng.gen_bool(density) || dom == 0 {
                continue;
            }
            if all.len() == 1 {
                inst.set_relation(u, v, []);
                continue;
            }
            loop {
                let pick: Vec<(Value, Value)> = all.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
                if !pick.is_empty() && pick.len() < all.len() {
                    inst.set_relation(u, v, pick);
                    break;
                }
            }
        }
    }
    Ok(inst)
}

#[derive(Parser, Debug)]
#[command(name = "minorcsp", version, about = "Forbidden patterns and topological minors for binary CSPs")]
pub struct Cli {
    /// Print tables instead of JSON.
    #[arg(long, global = true)]
    pub human: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sub-pattern occurrence of a pattern in an instance or another pattern.
    CheckSp(CheckArgs),
    /// Topological-minor occurrence.
    CheckTm(CheckTmArgs),
    /// Report tractable-class membership and a recommended solver.
    Classify(ClassifyArgs),
    /// Solve an instance; exits 10 (SAT), 20 (UNSAT) or 30 (outside the method's class).
    Solve(SolveArgs),
    /// Establish arc consistency and print the reduced instance.
    Ac(InstanceArg),
    /// Establish singleton arc consistency and print the reduced instance.
    Sac(InstanceArg),
    /// Subdivide the part pair `U V` of a pattern.
    Subdivide(SubdivideArgs),
    /// Generate gadget or random instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Compare satisfiability, path existence and topological-minor occurrence.
    VerifyGadget(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Catalogue key (C3, J, K, K_neq, L, M, Mprime, pivot:k, pivot_neq:k, ..) or pattern JSON file.
    #[arg(long)]
    pub pattern: String,
    /// Instance JSON; the target is its microstructure.
    #[arg(long, conflicts_with = "target", required_unless_present = "target")]
    pub instance: Option<PathBuf>,
    /// Pattern JSON target.
    #[arg(long)]
    pub target: Option<PathBuf>,
    /// Relation on an instance target for augmented patterns: `neq` (default) or an operation-table JSON file.
    #[arg(long)]
    pub relation: Option<String>,
    /// Include the occurrence found.
    #[arg(long)]
    pub witness: bool,
}

#[derive(Args, Debug)]
pub struct CheckTmArgs {
    #[command(flatten)]
    pub check: CheckArgs,
    /// Skip the graph-minor and star-like shortcuts.
    #[arg(long)]
    pub exhaustive: bool,
    /// Stop after this many subdivision steps (errors when below the exact bound).
    #[arg(long)]
    pub max_depth: Option<usize>,
}

#[derive(Args, Debug)]
pub struct InstanceArg {
    /// Instance JSON file, `-` for stdin.
    #[arg(long)]
    pub instance: PathBuf,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub input: InstanceArg,
    /// Largest k checked for Pivot(k) and Pivot≠(k).
    #[arg(long, default_value_t = 2)]
    pub pivot_bound: u32,
    /// Add the Tutte decomposition of each component of the constraint graph.
    #[arg(long)]
    pub emit_decomposition: bool,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: InstanceArg,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
}

#[derive(Args, Debug)]
pub struct SubdivideArgs {
    /// Catalogue key or pattern JSON file.
    #[arg(long)]
    pub pattern: String,
    /// The two part ids (a part is named by its smallest point).
    #[arg(long, num_args = 2, value_names = ["U", "V"])]
    pub parts: Vec<u32>,
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// Build the hardness gadget of a 3-CNF (DIMACS) formula.
    SatGadget(GadgetArgs),
    /// Seeded random instance.
    Random(RandomArgs),
}

#[derive(Args, Debug)]
pub struct GadgetArgs {
    /// DIMACS file, `-` for stdin.
    #[arg(long)]
    pub cnf: PathBuf,
    #[arg(long, value_enum, default_value_t = Variant::Standard)]
    pub variant: Variant,
}

#[derive(Args, Debug)]
pub struct RandomArgs {
    #[arg(long)]
    pub vars: usize,
    /// Every domain is `0..dom`.
    #[arg(long)]
    pub dom: u32,
    /// Probability that a pair of variables is constrained.
    #[arg(long)]
    pub density: f64,
    /// ChaCha8 seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub gadget: GadgetArgs,
    /// Also run the exact topological-minor check when the gadget has at most this many variables.
    #[arg(long)]
    pub tm_limit: Option<usize>,
}

/// Runs the command line on `argv` (program name first) against the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    run_with(argv, &mut out, &mut err)
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(Output { code, json, human }) => {
            let text = if cli.human { human } else { serde_json::to_string_pretty(&json).expect("JSON value") };
            let _ = writeln!(out, "{text}");
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

struct Output {
    code: i32,
    json: Json,
    human: String,
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    use anyhow::Context;
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_pattern(key: &str) -> anyhow::Result<AnyPattern> {
    match make_named(key) {
        Ok(p) => Ok(p),
        Err(PatternError::UnknownName(_)) if Path::new(key).exists() => {
            Ok(io::parse_pattern(&read_input(Path::new(key))?)?)
        }
        Err(e) => Err(anyhow::anyhow!("{e} (neither a catalogue key nor a readable file)")),
    }
}

fn load_instance(path: &Path) -> anyhow::Result<(Instance, io::Labels)> {
    Ok(io::parse_instance(&read_input(path)?)?)
}

fn load_cnf(path: &Path) -> anyhow::Result<Cnf> {
    Ok(Cnf::from_dimacs(&read_input(path)?)?)
}

fn brute_force_cap() -> anyhow::Result<u128> {
    match std::env::var(CAP_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| anyhow::anyhow!("{CAP_VAR}={s:?} is not a nonnegative integer")),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn execute(cli: &Cli) -> anyhow::Result<Output> {
    match &cli.command {
        Command::CheckSp(a) => check(a, None),
        Command::CheckTm(a) => {
            let opts = TmOptions { fast_paths: !a.exhaustive, max_depth: a.max_depth };
            check(&a.check, Some(opts))
        }
        Command::Classify(a) => classify_cmd(a),
        Command::Solve(a) => solve_cmd(a),
        Command::Ac(a) => reduce_cmd(a, "arc consistency", establish_ac),
        Command::Sac(a) => reduce_cmd(a, "singleton arc consistency", establish_sac),
        Command::Subdivide(a) => subdivide_cmd(a),
        Command::Gen(GenCommand::SatGadget(a)) => gadget_cmd(a),
        Command::Gen(GenCommand::Random(a)) => {
            let inst = gen_random(a.vars, a.dom, a.density, a.seed)?;
            let json = io::instance_to_json(&inst);
            let human = format!("{} variables, {} constraints", inst.num_vars(), inst.constraints().count());
            Ok(Output { code: EXIT_OK, json, human })
        }
        Command::VerifyGadget(a) => {
            let phi = load_cnf(&a.gadget.cnf)?;
            let r = verify_gadget(&phi, a.gadget.variant, a.tm_limit)?;
            let human = format!(
                "satisfiable {}\npath        {}\ntm          {}\nagree       {}",
                r.satisfiable,
                r.path,
                r.topological_minor.map_or("skipped".to_string(), |t| t.to_string()),
                r.agree
            );
            Ok(Output { code: if r.agree { EXIT_OK } else { EXIT_FALSE }, json: serde_json::to_value(&r)?, human })
        }
    }
}

fn check(a: &CheckArgs, tm: Option<TmOptions>) -> anyhow::Result<Output> {
    let p = load_pattern(&a.pattern)?;
    let (target, target_rel) = match (&a.instance, &a.target) {
        (Some(path), _) => {
            let (inst, _) = load_instance(path)?;
            let rel = match (p.relation(), &a.relation) {
                (None, _) => None,
                (Some(_), None) => Some(RelationSpec::Neq.instance_relation(&inst)?),
                (Some(_), Some(r)) if r == "neq" => Some(RelationSpec::Neq.instance_relation(&inst)?),
                (Some(_), Some(file)) => {
                    let f = io::parse_operation(&read_input(Path::new(file))?)?;
                    Some(RelationSpec::Polymorphism(f).instance_relation(&inst)?)
                }
            };
            (pattern_from_instance(&inst), rel)
        }
        (None, Some(path)) => {
            let q = load_pattern(&path.to_string_lossy())?;
            let rel = q.relation().cloned();
            (q.base().clone(), rel)
        }
        (None, None) => unreachable!("clap requires a target"),
    };
    let q = PatternRef { pattern: &target, relation: target_rel.as_ref() };
    let (found, witness) = match tm {
        None => {
            let e = find_sub_pattern(&p, q)?;
            (e.is_some(), e.map(|e| io::embedding_to_json(&e)))
        }
        Some(opts) => {
            let w = occurs_tm_with(&p, q, opts)?;
            (w.is_some(), w.map(|w| io::witness_to_json(&w)))
        }
    };
    let mut json = json!({ "found": found });
    let mut human = if found { "found".to_string() } else { "not found".to_string() };
    if a.witness {
        if let Some(w) = witness {
            human.push_str(&format!("\nwitness {w}"));
            json["witness"] = w;
        }
    }
    Ok(Output { code: if found { EXIT_OK } else { EXIT_FALSE }, json, human })
}

fn classify_cmd(a: &ClassifyArgs) -> anyhow::Result<Output> {
    let (inst, _) = load_instance(&a.input.instance)?;
    let report = classify_with(&inst, ClassifyOptions { pivot_bound: a.pivot_bound })?;
    let mut json = serde_json::to_value(&report)?;
    let mut rows = vec![
        ("acyclic".to_string(), report.acyclic.to_string()),
        ("ForbTM(K)".into(), report.forb_tm_k.to_string()),
        ("ForbTM(L)".into(), report.forb_tm_l.to_string()),
        ("ForbTM(K≠)".into(), report.forb_tm_k_neq.to_string()),
        ("ForbTM(PG(C3)≠)".into(), report.forb_tm_c3_neq.to_string()),
    ];
    for ((k, plain), (_, neq)) in report.forb_sp_pivot.iter().zip(&report.forb_sp_pivot_neq) {
        rows.push((format!("ForbSP(Pivot({k}))"), plain.to_string()));
        rows.push((format!("ForbSP(Pivot≠({k}))"), neq.to_string()));
    }
    rows.push(("recommended".into(), json["recommended"].as_str().unwrap_or_default().to_string()));
    let width = rows.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0);
    let human = rows.iter().map(|(l, v)| format!("{l:<width$} {v}")).collect::<Vec<_>>().join("\n");
    if a.emit_decomposition {
        let g = instance_constraint_graph(&inst);
        let trees: Vec<Json> = g
            .components()
            .into_iter()
            .map(|c| match tutte_decompose(&g.induced(&c)) {
                Ok(t) => t.to_json(),
                Err(e) => json!({ "error": e.to_string() }),
            })
            .collect();
        json["decomposition"] = Json::Array(trees);
    }
    Ok(Output { code: EXIT_OK, json, human })
}

fn solve_cmd(a: &SolveArgs) -> anyhow::Result<Output> {
    let (inst, labels) = load_instance(&a.input.instance)?;
    let cap = brute_force_cap()?;
    let method = match a.method {
        Method::Auto => classify_with(&inst, ClassifyOptions::default())?.recommended,
        m => m,
    };
    let r = match solvers::solve(&inst, method, cap) {
        Ok(r) => r,
        Err(e @ (SolveError::NotInClass | SolveError::NotAcyclic)) => {
            let json = json!({ "status": "NOT_IN_CLASS", "method": method, "reason": e.to_string() });
            return Ok(Output { code: EXIT_NOT_IN_CLASS, json, human: format!("not in class: {e}") });
        }
        Err(e) => return Err(e.into()),
    };
    let assignment = r.assignment.as_ref().map(|a| io::assignment_to_json(&inst, &labels, a));
    let json = json!({ "status": r.status, "method": method, "assignment": assignment, "stats": r.stats });
    let human = match &assignment {
        Some(Json::Object(m)) => {
            let rows: Vec<String> = m.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            format!("SAT via {}\n{}", json["method"].as_str().unwrap_or_default(), rows.join("\n"))
        }
        _ => format!("{:?} via {}", r.status, json["method"].as_str().unwrap_or_default()).to_uppercase(),
    };
    let code = match r.status {
        Status::Sat => EXIT_SAT,
        Status::Unsat => EXIT_UNSAT,
    };
    Ok(Output { code, json, human })
}

fn reduce_cmd(a: &InstanceArg, what: &str, f: fn(&Instance) -> Instance) -> anyhow::Result<Output> {
    let (inst, labels) = load_instance(&a.instance)?;
    let reduced = f(&inst);
    let wiped = reduced.has_empty_domain() && inst.num_vars() > 0;
    let json = io::instance_to_json_labelled(&reduced, &labels);
    let removed: usize = (0..inst.num_vars()).map(|v| inst.domain(v).len() - reduced.domain(v).len()).sum();
    let human = if wiped { format!("{what}: domain wipeout") } else { format!("{what}: removed {removed} values") };
    Ok(Output { code: if wiped { EXIT_FALSE } else { EXIT_OK }, json, human })
}

fn subdivide_cmd(a: &SubdivideArgs) -> anyhow::Result<Output> {
    let p = load_pattern(&a.pattern)?;
    let (q, new_part) = p.base().subdivide(Part(a.parts[0]), Part(a.parts[1]))?;
    let out: AnyPattern = match p.relation() {
        None => q.into(),
        Some(r) => AugmentedPattern::new(q, r.clone())?.into(),
    };
    let json = json!({ "pattern": io::any_pattern_to_json(&out), "new_part": new_part.map(|x| x.0) });
    let human = format!(
        "{} points, {} parts, {} positive, {} negative edges; new part {}",
        out.base().num_points(),
        out.base().num_parts(),
        out.base().positive().len(),
        out.base().negative().len(),
        new_part.map_or("none".to_string(), |x| x.0.to_string())
    );
    Ok(Output { code: EXIT_OK, json, human })
}

fn gadget_cmd(a: &GadgetArgs) -> anyhow::Result<Output> {
    let phi = load_cnf(&a.cnf)?;
    let g = match a.variant {
        Variant::Standard => build_sat_gadget(&phi),
        Variant::GloballyConsistent => build_gc_gadget(&phi),
    };
    let mut json = io::instance_to_json(&g.instance);
    json["provenance"] = serde_json::to_value(g.provenance())?;
    json["path_ends"] = json!([g.instance.name(g.source), g.instance.name(g.target)]);
    let human = format!(
        "{} variables, {} constraints, path from {} to {}",
        g.instance.num_vars(),
        g.instance.constraints().count(),
        g.instance.name(g.source),
        g.instance.name(g.target)
    );
    Ok(Output { code: EXIT_OK, json, human })
}
