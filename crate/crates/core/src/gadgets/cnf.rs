use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("formula needs at least one clause")]
    NoClauses,
    #[error("literal {0} names no variable")]
    BadLiteral(i32),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A 3-CNF formula. Literals are signed 1-based variable indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    num_vars: usize,
    clauses: Vec<[i32; 3]>,
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self, CnfError> {
        if clauses.is_empty() {
            return Err(CnfError::NoClauses);
        }
        if let Some(&l) = clauses.iter().flatten().find(|l| **l == 0 || l.unsigned_abs() as usize > num_vars) {
            return Err(CnfError::BadLiteral(l));
        }
        Ok(Cnf { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }

    /// Whether `assignment[i]` (for `x_{i+1}`) satisfies every clause.
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0)))
    }

    /// Truth-table search.
    pub fn is_satisfiable(&self) -> bool {
        (0u64..1 << self.num_vars).any(|bits| {
            let a: Vec<bool> = (0..self.num_vars).map(|i| bits >> i & 1 == 1).collect();
            self.satisfied_by(&a)
        })
    }

    /// Parses DIMACS: `c` comment lines, a `p cnf <vars> <clauses>` header,
    /// then clauses of exactly three literals, each ended by `0`.
    pub fn from_dimacs(text: &str) -> Result<Self, CnfError> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut pending: Vec<i32> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |msg: &str| CnfError::Parse { line: i + 1, msg: msg.to_string() };
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let f: Vec<&str> = line.split_whitespace().collect();
                if f.len() != 4 || f[1] != "cnf" || header.is_some() {
                    return Err(err("expected a single `p cnf <vars> <clauses>` header"));
                }
                let n = f[2].parse().map_err(|_| err("bad variable count"))?;
                let m = f[3].parse().map_err(|_| err("bad clause count"))?;
                header = Some((n, m));
                continue;
            }
            if header.is_none() {
                return Err(err("clause before header"));
            }
            for tok in line.split_whitespace() {
                let l: i32 = tok.parse().map_err(|_| err("bad literal"))?;
                if l != 0 {
                    pending.push(l);
                    continue;
                }
                let clause: [i32; 3] =
                    pending.as_slice().try_into().map_err(|_| err("clause must have exactly 3 literals"))?;
                clauses.push(clause);
                pending.clear();
            }
        }
        let (n, m) = header.ok_or(CnfError::Parse { line: 0, msg: "missing header".into() })?;
        if !pending.is_empty() {
            return Err(CnfError::Parse { line: text.lines().count(), msg: "unterminated clause".into() });
        }
        if clauses.len() != m {
            return Err(CnfError::Parse {
                line: 0,
                msg: format!("header announces {m} clauses, found {}", clauses.len()),
            });
        }
        Cnf::new(n, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            out.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_round_trip() {
        let text = "c tiny\np cnf 2 2\n1 -2 2 0\n-1 -1 2 0\n";
        let phi = Cnf::from_dimacs(text).unwrap();
        assert_eq!(phi.clauses(), &[[1, -2, 2], [-1, -1, 2]]);
        assert_eq!(Cnf::from_dimacs(&phi.to_dimacs()).unwrap(), phi);
        assert!(phi.is_satisfiable());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Cnf::from_dimacs("p cnf 1 1\n1 1 0\n"), Err(CnfError::Parse { .. })));
        assert_eq!(Cnf::from_dimacs("p cnf 1 1\n1 2 1 0\n").unwrap_err(), CnfError::BadLiteral(2));
        assert_eq!(Cnf::new(1, vec![]).unwrap_err(), CnfError::NoClauses);
    }

    #[test]
    fn contradiction() {
        assert!(!Cnf::new(1, vec![[1, 1, 1], [-1, -1, -1]]).unwrap().is_satisfiable());
    }
}
