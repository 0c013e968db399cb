//! JSON formats for patterns, instances, graphs, witnesses and operation tables.
//!
//! Instance values in files are labels. A variable whose labels are all
//! nonnegative integers keeps them as values; otherwise its values are the
//! label positions `0, 1, ..` and the labels are kept in [`Labels`] for output.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::occurrence::{Embedding, TmWitness};
use crate::pattern::{
    AnyPattern, AugmentedPattern, Graph, Instance, OperationTable, Part, Pattern, PatternError, Point, Relation, Value,
    Var,
};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> IoError {
    IoError::Invalid(msg.into())
}

#[derive(Serialize, Deserialize)]
struct RelationJson {
    arity: usize,
    tuples: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct PatternJson {
    points: Vec<u32>,
    parts: Vec<Vec<u32>>,
    #[serde(default)]
    positive: Vec<[u32; 2]>,
    #[serde(default)]
    negative: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    relation: Option<RelationJson>,
}

pub fn pattern_to_json(p: &Pattern, rel: Option<&Relation>) -> Json {
    let edges = |set: &BTreeSet<crate::pattern::Edge>| -> Vec<[u32; 2]> {
        set.iter()
            .map(|e| {
                let (a, b) = e.ends();
                [a.0, b.0]
            })
            .collect()
    };
    let doc = PatternJson {
        points: p.points().map(|x| x.0).collect(),
        parts: p.part_groups().into_values().map(|g| g.into_iter().map(|x| x.0).collect()).collect(),
        positive: edges(p.positive()),
        negative: edges(p.negative()),
        relation: rel.map(|r| RelationJson {
            arity: r.arity,
            tuples: r.tuples.iter().map(|t| t.iter().map(|x| x.0).collect()).collect(),
        }),
    };
    serde_json::to_value(doc).expect("plain data serialises")
}

pub fn any_pattern_to_json(p: &AnyPattern) -> Json {
    pattern_to_json(p.base(), p.relation())
}

pub fn parse_pattern(text: &str) -> Result<AnyPattern, IoError> {
    pattern_from_json(serde_json::from_str(text)?)
}

pub fn pattern_from_json(v: Json) -> Result<AnyPattern, IoError> {
    let doc: PatternJson = serde_json::from_value(v)?;
    let listed: BTreeSet<u32> = doc.points.iter().copied().collect();
    let grouped: Vec<u32> = doc.parts.iter().flatten().copied().collect();
    if let Some(&x) = grouped.iter().find(|x| !listed.contains(x)) {
        return Err(PatternError::UnknownPoint(Point(x)).into());
    }
    if grouped.len() != listed.len() {
        return Err(invalid("every point must lie in exactly one part"));
    }
    let pairs = |v: &[[u32; 2]]| v.iter().map(|&[a, b]| (Point(a), Point(b))).collect::<Vec<_>>();
    let p = Pattern::new(
        doc.parts.iter().map(|g| g.iter().map(|&x| Point(x)).collect::<Vec<_>>()),
        pairs(&doc.positive),
        pairs(&doc.negative),
    )?;
    Ok(match doc.relation {
        None => p.into(),
        Some(r) => {
            AugmentedPattern::augment(p, r.arity, r.tuples.into_iter().map(|t| t.into_iter().map(Point).collect()))?
                .into()
        }
    })
}

/// External label of each value, per variable.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Labels(Vec<BTreeMap<Value, Json>>);

impl Labels {
    pub fn label(&self, v: Var, a: Value) -> Json {
        self.0.get(v).and_then(|m| m.get(&a)).cloned().unwrap_or_else(|| json!(a))
    }
}

#[derive(Serialize, Deserialize)]
struct VariableJson {
    name: String,
    domain: Vec<Json>,
}

#[derive(Serialize, Deserialize)]
struct ConstraintJson {
    scope: [Json; 2],
    allowed: Vec<[Json; 2]>,
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    variables: Vec<VariableJson>,
    #[serde(default)]
    constraints: Vec<ConstraintJson>,
}

pub fn instance_to_json(inst: &Instance) -> Json {
    instance_to_json_labelled(inst, &Labels::default())
}

/// Like [`instance_to_json`], writing values through `labels`.
pub fn instance_to_json_labelled(inst: &Instance, labels: &Labels) -> Json {
    let unique = inst.names().iter().collect::<BTreeSet<_>>().len() == inst.num_vars();
    let scope = |v: Var| {
        if unique {
            json!(inst.name(v))
        } else {
            json!(v)
        }
    };
    let doc = InstanceJson {
        variables: (0..inst.num_vars())
            .map(|v| VariableJson {
                name: inst.name(v).to_string(),
                domain: inst.domain(v).iter().map(|&a| labels.label(v, a)).collect(),
            })
            .collect(),
        constraints: inst
            .constraints()
            .map(|(u, v, r)| ConstraintJson {
                scope: [scope(u), scope(v)],
                allowed: r.iter().map(|&(a, b)| [labels.label(u, a), labels.label(v, b)]).collect(),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("plain data serialises")
}

pub fn parse_instance(text: &str) -> Result<(Instance, Labels), IoError> {
    instance_from_json(serde_json::from_str(text)?)
}

pub fn instance_from_json(v: Json) -> Result<(Instance, Labels), IoError> {
    let doc: InstanceJson = serde_json::from_value(v)?;
    let mut inst = Instance::default();
    let mut labels = Vec::new();
    let mut lookup: Vec<BTreeMap<String, Value>> = Vec::new();
    for var in &doc.variables {
        let numeric: Option<Vec<Value>> =
            var.domain.iter().map(|l| l.as_u64().and_then(|x| Value::try_from(x).ok())).collect();
        let values: Vec<Value> = match &numeric {
            Some(vals) => vals.clone(),
            None => (0..var.domain.len() as Value).collect(),
        };
        if values.iter().collect::<BTreeSet<_>>().len() != values.len() {
            return Err(invalid(format!("variable {} repeats a domain label", var.name)));
        }
        let keys: BTreeMap<String, Value> =
            var.domain.iter().map(|l| l.to_string()).zip(values.iter().copied()).collect();
        labels.push(if numeric.is_some() {
            BTreeMap::new()
        } else {
            values.iter().copied().zip(var.domain.iter().cloned()).collect()
        });
        lookup.push(keys);
        inst.add_variable(var.name.clone(), values);
    }
    let find_var = |s: &Json| -> Result<Var, IoError> {
        let v = match s {
            Json::Number(n) => n.as_u64().map(|x| x as Var),
            Json::String(name) => inst.var_by_name(name),
            _ => None,
        };
        v.filter(|&v| v < inst.num_vars()).ok_or_else(|| invalid(format!("unknown variable {s}")))
    };
    let mut scopes = Vec::new();
    for c in &doc.constraints {
        let (u, v) = (find_var(&c.scope[0])?, find_var(&c.scope[1])?);
        if u == v {
            return Err(invalid(format!("constraint scope repeats variable {}", inst.name(u))));
        }
        let mut allowed = Vec::new();
        for [a, b] in &c.allowed {
            let val = |w: Var, l: &Json| {
                lookup[w]
                    .get(&l.to_string())
                    .copied()
                    .ok_or_else(|| invalid(format!("label {l} not in the domain of {}", inst.name(w))))
            };
            allowed.push((val(u, a)?, val(v, b)?));
        }
        scopes.push((u, v, allowed));
    }
    for (u, v, allowed) in scopes {
        inst.constrain(u, v, allowed);
    }
    Ok((inst, Labels(labels)))
}

/// Assignment keyed by variable name with external labels.
pub fn assignment_to_json(inst: &Instance, labels: &Labels, a: &[Value]) -> Json {
    let map: serde_json::Map<String, Json> =
        a.iter().enumerate().map(|(v, &x)| (inst.name(v).to_string(), labels.label(v, x))).collect();
    Json::Object(map)
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<u32>,
    edges: Vec<[u32; 2]>,
}

pub fn graph_to_json(g: &Graph) -> Json {
    let doc = GraphJson {
        vertices: g.vertices().iter().copied().collect(),
        edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
    };
    serde_json::to_value(doc).expect("plain data serialises")
}

pub fn parse_graph(text: &str) -> Result<Graph, IoError> {
    graph_from_json(serde_json::from_str(text)?)
}

pub fn graph_from_json(v: Json) -> Result<Graph, IoError> {
    let doc: GraphJson = serde_json::from_value(v)?;
    Ok(Graph::new(doc.vertices, doc.edges.into_iter().map(|[a, b]| (a, b)))?)
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    steps: Vec<[String; 2]>,
    map: BTreeMap<String, String>,
}

pub fn witness_to_json(w: &TmWitness) -> Json {
    let doc = WitnessJson {
        steps: w.steps.iter().map(|(u, v)| [u.0.to_string(), v.0.to_string()]).collect(),
        map: w.embedding.point_map.iter().map(|(a, b)| (a.0.to_string(), b.0.to_string())).collect(),
    };
    serde_json::to_value(doc).expect("plain data serialises")
}

pub fn embedding_to_json(e: &Embedding) -> Json {
    witness_to_json(&TmWitness { steps: Vec::new(), embedding: e.clone() })
}

pub fn witness_from_json(v: Json) -> Result<TmWitness, IoError> {
    let doc: WitnessJson = serde_json::from_value(v)?;
    let id = |s: &str| s.parse::<u32>().map_err(|_| invalid(format!("bad id {s:?}")));
    let steps = doc.steps.iter().map(|[u, v]| Ok((Part(id(u)?), Part(id(v)?)))).collect::<Result<_, IoError>>()?;
    let point_map = doc.map.iter().map(|(a, b)| Ok((Point(id(a)?), Point(id(b)?)))).collect::<Result<_, IoError>>()?;
    Ok(TmWitness { steps, embedding: Embedding { point_map } })
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    arity: usize,
    domain: Vec<Value>,
    table: Vec<(Vec<Value>, Value)>,
}

/// `{"arity":k,"domain":[..],"table":[[[args..],out],..]}`.
pub fn parse_operation(text: &str) -> Result<OperationTable, IoError> {
    let doc: TableJson = serde_json::from_str(text)?;
    Ok(OperationTable::new(doc.arity, doc.domain, doc.table)?)
}

pub fn operation_to_json(f: &OperationTable) -> Json {
    let doc = TableJson {
        arity: f.arity(),
        domain: f.domain().iter().copied().collect(),
        table: f.entries().map(|(a, &b)| (a.clone(), b)).collect(),
    };
    serde_json::to_value(doc).expect("plain data serialises")
}
