//! Problem instances: an undirected graph with a designated root, a per-vertex
//! child capacity and the number of trees (stripes) to pack.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    General,
    Complete,
    Tree,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphKind::General => "general",
            GraphKind::Complete => "complete",
            GraphKind::Tree => "tree",
        })
    }
}

/// A validated instance. Immutable once built.
///
/// Vertices are `0..n`. For [`GraphKind::Complete`] the edge list is empty
/// and adjacency is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    kind: GraphKind,
    n: usize,
    root: usize,
    edges: Vec<(usize, usize)>,
    capacities: Vec<usize>,
    k: usize,
    adjacency: Vec<Vec<usize>>,
}

impl Instance {
    /// Builds an instance and checks every invariant: ids in range, no
    /// self-loops or duplicate edges, connectivity (and acyclicity for
    /// trees), `1 <= K <= n`.
    pub fn new(
        kind: GraphKind,
        n: usize,
        root: usize,
        edges: Vec<(usize, usize)>,
        capacities: Vec<usize>,
        k: usize,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n", "must be positive"));
        }
        if root >= n {
            return Err(Error::invalid("root", format!("{root} is not in [0, {n})")));
        }
        if capacities.len() != n {
            return Err(Error::invalid(
                "capacities",
                format!("expected {n} entries, found {}", capacities.len()),
            ));
        }
        if k == 0 || k > n {
            return Err(Error::invalid("K", format!("K out of range: {k} is not in [1, {n}]")));
        }

        let mut adjacency = vec![Vec::new(); n];
        if kind == GraphKind::Complete {
            if !edges.is_empty() {
                return Err(Error::invalid("edges", "must be omitted for a complete graph"));
            }
        } else {
            let mut seen = HashSet::with_capacity(edges.len());
            for (i, &(u, v)) in edges.iter().enumerate() {
                if u >= n || v >= n {
                    return Err(Error::invalid(
                        format!("edges[{i}]"),
                        format!("[{u}, {v}] has a vertex outside [0, {n})"),
                    ));
                }
                if u == v {
                    return Err(Error::invalid(format!("edges[{i}]"), format!("self-loop on {u}")));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(Error::invalid(format!("edges[{i}]"), format!("duplicate edge [{u}, {v}]")));
                }
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
            for list in &mut adjacency {
                list.sort_unstable();
            }
            if kind == GraphKind::Tree && edges.len() != n - 1 {
                return Err(Error::invalid(
                    "edges",
                    format!("not a tree: {} edges on {n} vertices", edges.len()),
                ));
            }
        }

        let inst = Instance {
            kind,
            n,
            root,
            edges,
            capacities,
            k,
            adjacency,
        };
        if inst.kind != GraphKind::Complete && !inst.is_connected() {
            let reason = match kind {
                GraphKind::Tree => "not a tree: graph is disconnected",
                _ => "graph is disconnected",
            };
            return Err(Error::invalid("edges", reason));
        }
        Ok(inst)
    }

    pub fn complete(n: usize, root: usize, capacities: Vec<usize>, k: usize) -> Result<Self> {
        Self::new(GraphKind::Complete, n, root, Vec::new(), capacities, k)
    }

    pub fn tree(n: usize, root: usize, edges: Vec<(usize, usize)>, capacities: Vec<usize>, k: usize) -> Result<Self> {
        Self::new(GraphKind::Tree, n, root, edges, capacities, k)
    }

    pub fn general(n: usize, root: usize, edges: Vec<(usize, usize)>, capacities: Vec<usize>, k: usize) -> Result<Self> {
        Self::new(GraphKind::General, n, root, edges, capacities, k)
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Number of trees to pack.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn capacities(&self) -> &[usize] {
        &self.capacities
    }

    pub fn capacity(&self, v: usize) -> usize {
        self.capacities[v]
    }

    /// Edges as given in the input; empty for complete graphs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        match self.kind {
            GraphKind::Complete => self.n * (self.n - 1) / 2,
            _ => self.edges.len(),
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n || u == v {
            return false;
        }
        match self.kind {
            GraphKind::Complete => true,
            _ => self.adjacency[u].binary_search(&v).is_ok(),
        }
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> Box<dyn Iterator<Item = usize> + '_> {
        match self.kind {
            GraphKind::Complete => Box::new((0..self.n).filter(move |&w| w != v)),
            _ => Box::new(self.adjacency[v].iter().copied()),
        }
    }

    pub fn check_kind(&self, expected: GraphKind) -> Result<()> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                expected,
                found: self.kind,
            })
        }
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([self.root]);
        seen[self.root] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(s)?;
        file.into_instance()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&InstanceFile::from(self)).expect("instance serialises")
    }
}

/// Reads an instance from its JSON form.
pub fn load_instance<R: Read>(source: R) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_reader(source)?;
    file.into_instance()
}

pub fn save_instance<W: Write>(inst: &Instance, mut sink: W) -> Result<()> {
    serde_json::to_writer(&mut sink, &InstanceFile::from(inst))?;
    sink.write_all(b"\n")?;
    Ok(())
}

/// On-disk layout. Integers are read signed so negative values are reported
/// against the field that carries them.
#[derive(Debug, Serialize, Deserialize)]
struct InstanceFile {
    kind: GraphKind,
    n: i64,
    #[serde(default)]
    root: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<[i64; 2]>>,
    capacities: Vec<i64>,
    #[serde(rename = "K")]
    k: i64,
}

fn non_negative(field: impl FnOnce() -> String, value: i64) -> Result<usize> {
    usize::try_from(value).map_err(|_| Error::invalid(field(), format!("must be non-negative, got {value}")))
}

impl InstanceFile {
    fn into_instance(self) -> Result<Instance> {
        let n = non_negative(|| "n".into(), self.n)?;
        let root = non_negative(|| "root".into(), self.root)?;
        if self.k < 1 {
            return Err(Error::invalid("K", format!("K out of range: {} is not in [1, {n}]", self.k)));
        }
        let k = self.k as usize;
        let capacities = self
            .capacities
            .iter()
            .enumerate()
            .map(|(i, &c)| non_negative(|| format!("capacities[{i}]"), c))
            .collect::<Result<Vec<_>>>()?;
        let edges = match (self.kind, self.edges) {
            (GraphKind::Complete, Some(e)) if !e.is_empty() => {
                return Err(Error::invalid("edges", "must be omitted for a complete graph"));
            }
            (GraphKind::Complete, _) => Vec::new(),
            (_, None) => return Err(Error::invalid("edges", "required for general and tree instances")),
            (_, Some(e)) => e
                .iter()
                .enumerate()
                .map(|(i, &[u, v])| {
                    Ok((
                        non_negative(|| format!("edges[{i}]"), u)?,
                        non_negative(|| format!("edges[{i}]"), v)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Instance::new(self.kind, n, root, edges, capacities, k)
    }
}

impl From<&Instance> for InstanceFile {
    fn from(inst: &Instance) -> Self {
        InstanceFile {
            kind: inst.kind,
            n: inst.n as i64,
            root: inst.root as i64,
            edges: match inst.kind {
                GraphKind::Complete => None,
                _ => Some(inst.edges.iter().map(|&(u, v)| [u as i64, v as i64]).collect()),
            },
            capacities: inst.capacities.iter().map(|&c| c as i64).collect(),
            k: inst.k as i64,
        }
    }
}
