//! 3-SAT to single-tree packing gadget.
//!
//! Vertex layout: `0` is the root, `1..=n` are the variable selectors,
//! `n + 2i - 1` / `n + 2i` are the literals `x_i` / `¬x_i`, and `3n + j`
//! is clause `j`. The root may serve all `n` selectors, each selector only
//! one of its two literals, each literal every clause, and clauses nothing.
//! A tree spanning `1 + 2n + m` vertices exists iff the formula is
//! satisfiable.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, BufReader, Read};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::packing::{verify_packing, Packing};

/// Signed, 1-based DIMACS literal.
pub type Literal = i32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatInstance {
    num_vars: usize,
    clauses: Vec<[Literal; 3]>,
}

impl SatInstance {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::Cnf("formula has no variables".into()));
        }
        if clauses.is_empty() {
            return Err(Error::Cnf("formula has no clauses".into()));
        }
        let clauses = clauses
            .into_iter()
            .enumerate()
            .map(|(j, c)| {
                let lits: [Literal; 3] = c
                    .as_slice()
                    .try_into()
                    .map_err(|_| Error::Cnf(format!("clause {} has {} literals, expected 3", j + 1, c.len())))?;
                for &l in &lits {
                    if l == 0 || l.unsigned_abs() as usize > num_vars {
                        return Err(Error::Cnf(format!(
                            "clause {} references variable {} outside 1..={num_vars}",
                            j + 1,
                            l.unsigned_abs()
                        )));
                    }
                }
                Ok(lits)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SatInstance { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// `assignment[i - 1]` is the value of variable `i`.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0))
        })
    }
}

/// Parses DIMACS CNF: `c` comment lines, one `p cnf <vars> <clauses>`
/// header, then zero-terminated clauses that may span lines. A `%` line ends
/// the clause section (SATLIB files use it).
pub fn parse_dimacs<R: Read>(source: R) -> Result<SatInstance> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut last_line = 0;

    for (idx, line) in BufReader::new(source).lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(Error::Dimacs {
                    line: line_no,
                    reason: "duplicate problem line".into(),
                });
            }
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or_else(|| Error::Dimacs {
                line: line_no,
                reason: format!("malformed problem line {trimmed:?}"),
            })?);
            continue;
        }
        if header.is_none() {
            return Err(Error::Dimacs {
                line: line_no,
                reason: "clause before the problem line".into(),
            });
        }
        for token in trimmed.split_whitespace() {
            let lit: Literal = token.parse().map_err(|_| Error::Dimacs {
                line: line_no,
                reason: format!("bad literal {token:?}"),
            })?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }

    let (num_vars, num_clauses) = header.ok_or_else(|| Error::Dimacs {
        line: last_line,
        reason: "missing problem line".into(),
    })?;
    if !current.is_empty() {
        return Err(Error::Dimacs {
            line: last_line,
            reason: "last clause is not terminated by 0".into(),
        });
    }
    if clauses.len() != num_clauses {
        return Err(Error::Dimacs {
            line: last_line,
            reason: format!("header announces {num_clauses} clauses, found {}", clauses.len()),
        });
    }
    SatInstance::new(num_vars, clauses)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum VertexRole {
    Root,
    Selector { var: usize },
    Literal { var: usize, negated: bool },
    Clause { index: usize },
}

#[derive(Debug, Clone)]
pub struct ReductionOutput {
    pub instance: Instance,
    pub gamma: usize,
    pub labels: Vec<VertexRole>,
}

impl ReductionOutput {
    pub fn selector(&self, var: usize) -> usize {
        var
    }

    pub fn literal(&self, lit: Literal) -> usize {
        literal_vertex(self.num_vars(), lit)
    }

    pub fn clause(&self, index: usize) -> usize {
        3 * self.num_vars() + index
    }

    /// `|V'| - Γ = (1 + 3n + m) - (1 + 2n + m)`.
    pub fn num_vars(&self) -> usize {
        self.instance.n() - self.gamma
    }

    /// Sidecar metadata: `{"gamma": Γ, "labels": {"<vertex>": {...}}}`.
    pub fn metadata_json(&self) -> serde_json::Value {
        let labels: BTreeMap<String, VertexRole> = self
            .labels
            .iter()
            .enumerate()
            .map(|(v, r)| (v.to_string(), *r))
            .collect();
        serde_json::json!({ "gamma": self.gamma, "labels": labels })
    }
}

fn literal_vertex(n: usize, lit: Literal) -> usize {
    let i = lit.unsigned_abs() as usize;
    if lit > 0 {
        n + 2 * i - 1
    } else {
        n + 2 * i
    }
}

/// Builds the gadget (`K = 1`) and its threshold `Γ = 1 + 2n + m`. A clause
/// repeating a literal gets a single literal–clause edge.
pub fn reduce_3sat(sat: &SatInstance) -> ReductionOutput {
    let n = sat.num_vars();
    let m = sat.clauses().len();
    let total = 1 + 3 * n + m;

    let mut labels = Vec::with_capacity(total);
    let mut capacities = Vec::with_capacity(total);
    labels.push(VertexRole::Root);
    capacities.push(n);
    for var in 1..=n {
        labels.push(VertexRole::Selector { var });
        capacities.push(1);
    }
    for var in 1..=n {
        for negated in [false, true] {
            labels.push(VertexRole::Literal { var, negated });
            capacities.push(m);
        }
    }
    for index in 1..=m {
        labels.push(VertexRole::Clause { index });
        capacities.push(0);
    }

    let mut edges = Vec::with_capacity(3 * n + 3 * m);
    edges.extend((1..=n).map(|i| (0, i)));
    for i in 1..=n {
        edges.push((i, literal_vertex(n, i as Literal)));
        edges.push((i, literal_vertex(n, -(i as Literal))));
    }
    for (j, clause) in sat.clauses().iter().enumerate() {
        let distinct: BTreeSet<usize> = clause.iter().map(|&l| literal_vertex(n, l)).collect();
        edges.extend(distinct.into_iter().map(|lv| (lv, 3 * n + j + 1)));
    }

    let instance = Instance::general(total, 0, edges, capacities, 1).expect("gadget is a valid connected instance");
    ReductionOutput {
        instance,
        gamma: 1 + 2 * n + m,
        labels,
    }
}

/// Reads the truth assignment off a witness tree: `x_i` is true iff its
/// literal vertex is spanned. Returns `None` when the tree spans fewer than
/// `Γ` vertices.
pub fn extract_assignment(out: &ReductionOutput, p: &Packing) -> Result<Option<Vec<bool>>> {
    let report = verify_packing(&out.instance, p)?;
    if !report.valid {
        return Err(Error::Unverified(report.violations.len()));
    }
    if p.objective() < out.gamma {
        return Ok(None);
    }
    let tree = &p.trees()[0];
    let n = out.num_vars();
    let mut assignment = Vec::with_capacity(n);
    for var in 1..=n {
        let pos = tree.contains(out.literal(var as Literal));
        let neg = tree.contains(out.literal(-(var as Literal)));
        if pos && neg {
            return Err(Error::ConflictingLiterals(var));
        }
        assignment.push(pos);
    }
    Ok(Some(assignment))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packing::RootedTree;

    pub(crate) fn sample_formula() -> SatInstance {
        SatInstance::new(4, vec![vec![1, 2, -3], vec![1, -2, 4], vec![-2, 3, -4]]).unwrap()
    }

    #[test]
    fn sample_gadget_shape() {
        let out = reduce_3sat(&sample_formula());
        assert_eq!(out.instance.n(), 16);
        assert_eq!(out.instance.edge_count(), 21);
        assert_eq!(out.gamma, 12);
        let caps = out.instance.capacities();
        assert_eq!(caps[0], 4);
        assert_eq!(&caps[1..5], &[1; 4]);
        assert_eq!(&caps[5..13], &[3; 8]);
        assert_eq!(&caps[13..], &[0; 3]);
    }

    #[test]
    fn repeated_literal_collapses_edges() {
        let sat = SatInstance::new(1, vec![vec![1, 1, 1]]).unwrap();
        let out = reduce_3sat(&sat);
        assert_eq!(out.instance.n(), 5);
        assert_eq!(out.instance.edge_count(), 4);
        assert_eq!(out.gamma, 4);
    }

    #[test]
    fn complementary_literals_in_one_clause_are_fine() {
        let sat = SatInstance::new(2, vec![vec![1, -1, 2]]).unwrap();
        let out = reduce_3sat(&sat);
        assert_eq!(out.instance.edge_count(), 6 + 3);
    }

    #[test]
    fn rejects_bad_formulas() {
        assert!(SatInstance::new(0, vec![vec![1, 2, 3]]).is_err());
        assert!(SatInstance::new(3, vec![]).is_err());
        assert!(SatInstance::new(3, vec![vec![1, 2]]).is_err());
        assert!(SatInstance::new(3, vec![vec![1, 2, 3, -1]]).is_err());
        assert!(SatInstance::new(2, vec![vec![1, 2, 3]]).is_err());
    }

    fn sample_witness(out: &ReductionOutput) -> Packing {
        // x1, ¬x2, x3, ¬x4; C1 via x1, C2 via x1, C3 via ¬x2.
        let mut t = RootedTree::null(0);
        for (var, lit) in [(1, 1), (2, -2), (3, 3), (4, -4)] {
            t.attach(0, out.selector(var));
            t.attach(out.selector(var), out.literal(lit));
        }
        t.attach(out.literal(1), out.clause(1));
        t.attach(out.literal(1), out.clause(2));
        t.attach(out.literal(-2), out.clause(3));
        Packing::new(vec![t])
    }

    #[test]
    fn sample_witness_extracts_assignment() {
        let sat = sample_formula();
        let out = reduce_3sat(&sat);
        let p = sample_witness(&out);
        assert_eq!(p.objective(), 12);
        let phi = extract_assignment(&out, &p).unwrap().unwrap();
        assert_eq!(phi, vec![true, false, true, false]);
        assert!(sat.is_satisfied_by(&phi));
    }

    #[test]
    fn small_tree_yields_none() {
        let out = reduce_3sat(&sample_formula());
        let mut t = RootedTree::null(0);
        t.attach(0, 1);
        assert_eq!(extract_assignment(&out, &Packing::new(vec![t])).unwrap(), None);
    }

    #[test]
    fn both_literals_is_an_error() {
        let out = reduce_3sat(&sample_formula());
        let mut t = RootedTree::null(0);
        t.attach(0, 1);
        t.attach(1, out.literal(1));
        t.attach(1, out.literal(-1));
        assert!(matches!(extract_assignment(&out, &Packing::new(vec![t])), Err(Error::Unverified(_))));
    }

    #[test]
    fn dimacs_parse() {
        let text = "c sample\np cnf 4 3\n1 2 -3 0\n1 -2\n 4 0 -2 3 -4 0\n%\n0\n";
        assert_eq!(parse_dimacs(text.as_bytes()).unwrap(), sample_formula());
    }

    #[test]
    fn dimacs_errors() {
        let cases = [
            ("1 2 3 0\n", "before the problem line"),
            ("p cnf 3 1\n1 2 3\n", "not terminated"),
            ("p cnf 3 2\n1 2 3 0\n", "announces 2"),
            ("p cnf x 1\n1 2 3 0\n", "malformed"),
            ("p cnf 3 1\n1 2 a 0\n", "bad literal"),
            ("", "missing problem line"),
        ];
        for (text, needle) in cases {
            let err = parse_dimacs(text.as_bytes()).unwrap_err();
            assert!(err.to_string().contains(needle), "{text:?}: {err}");
        }
        let err = parse_dimacs("p cnf 3 1\n1 2 0\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Cnf(_)));
    }

    #[test]
    fn metadata_has_gamma_and_roles() {
        let out = reduce_3sat(&sample_formula());
        let meta = out.metadata_json();
        assert_eq!(meta["gamma"], 12);
        assert_eq!(meta["labels"]["0"]["role"], "root");
        assert_eq!(meta["labels"]["6"], serde_json::json!({"role": "literal", "var": 1, "negated": true}));
        assert_eq!(meta["labels"]["15"], serde_json::json!({"role": "clause", "index": 3}));
    }
}
