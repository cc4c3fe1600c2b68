//! Rooted trees, packings, the capacity verifier and the spanning objective.

use std::collections::BTreeSet;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;

/// One r-tree, stored as its `(parent, child)` edges in insertion order.
///
/// Valid trees give every non-root vertex exactly one parent, so the edge
/// list is the parent map. The list is kept verbatim so that malformed input
/// can still be represented and reported on by [`verify_packing`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedTree {
    root: usize,
    edges: Vec<(usize, usize)>,
}

impl RootedTree {
    /// The null r-tree `({root}, ∅)`.
    pub fn null(root: usize) -> Self {
        RootedTree { root, edges: Vec::new() }
    }

    pub fn from_edges(root: usize, edges: Vec<(usize, usize)>) -> Self {
        RootedTree { root, edges }
    }

    /// Builds the single-branch tree following `path` from its first vertex.
    pub fn from_path(path: &[usize]) -> Self {
        let root = path[0];
        RootedTree {
            root,
            edges: path.windows(2).map(|w| (w[0], w[1])).collect(),
        }
    }

    pub fn attach(&mut self, parent: usize, child: usize) {
        self.edges.push((parent, child));
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// `(parent, child)` pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_null(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn parent_of(&self, v: usize) -> Option<usize> {
        self.edges.iter().find(|&&(_, c)| c == v).map(|&(p, _)| p)
    }

    /// `V_k`: the root plus every endpoint.
    pub fn vertex_set(&self) -> BTreeSet<usize> {
        let mut set = BTreeSet::from([self.root]);
        for &(p, c) in &self.edges {
            set.insert(p);
            set.insert(c);
        }
        set
    }

    pub fn contains(&self, v: usize) -> bool {
        v == self.root || self.edges.iter().any(|&(p, c)| p == v || c == v)
    }

    /// `|V_k|`.
    pub fn size(&self) -> usize {
        self.vertex_set().len()
    }

    /// `C_T(v)`.
    pub fn child_count(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(p, _)| p == v).count()
    }

    /// Edge list sorted, used to compare trees independent of insertion order.
    pub fn canonical(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }
}

/// An ordered family of rooted trees sharing one root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packing {
    trees: Vec<RootedTree>,
}

impl Packing {
    pub fn new(trees: Vec<RootedTree>) -> Self {
        Packing { trees }
    }

    pub fn nulls(root: usize, k: usize) -> Self {
        Packing {
            trees: vec![RootedTree::null(root); k],
        }
    }

    pub fn trees(&self) -> &[RootedTree] {
        &self.trees
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn objective(&self) -> usize {
        objective(self)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&PackingFile::from(self)).expect("packing serialises")
    }
}

/// `Σ_k |V_k|`; a vertex spanned by `j` trees counts `j` times.
pub fn objective(p: &Packing) -> usize {
    p.trees.iter().map(RootedTree::size).sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationKind {
    VertexOutOfRange,
    /// The root appears as somebody's child.
    RootHasParent,
    MultipleParents,
    NotAnEdge { parent: usize },
    /// The vertex's parent chain does not lead back to the root.
    Unreachable,
    CapacityExceeded { used: usize, capacity: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// `None` for capacity violations, which aggregate over all trees.
    pub tree: Option<usize>,
    pub vertex: usize,
    #[serde(flatten)]
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Checks every tree against the instance graph and the per-vertex capacity
/// bound `Σ_k C_{T_k}(v) <= c_v`. Only a tree-count mismatch is an error;
/// everything else is itemised in the report.
pub fn verify_packing(inst: &Instance, p: &Packing) -> Result<Verification> {
    if p.len() != inst.k() {
        return Err(Error::TreeCount {
            expected: inst.k(),
            found: p.len(),
        });
    }
    let n = inst.n();
    let root = inst.root();
    let mut violations = Vec::new();
    let mut used = vec![0usize; n];

    for (k, tree) in p.trees().iter().enumerate() {
        let mut viol = |vertex, kind| {
            violations.push(Violation {
                tree: Some(k),
                vertex,
                kind,
            })
        };
        if tree.root() != root {
            viol(tree.root(), ViolationKind::Unreachable);
        }
        let mut parent: Vec<Option<usize>> = vec![None; n];
        for &(u, v) in tree.edges() {
            if u >= n || v >= n {
                viol(if u >= n { u } else { v }, ViolationKind::VertexOutOfRange);
                continue;
            }
            used[u] += 1;
            if v == root {
                viol(v, ViolationKind::RootHasParent);
                continue;
            }
            if parent[v].is_some() {
                viol(v, ViolationKind::MultipleParents);
                continue;
            }
            if !inst.has_edge(u, v) {
                viol(v, ViolationKind::NotAnEdge { parent: u });
            }
            parent[v] = Some(u);
        }

        // 0 unknown, 1 on the current walk, 2 reaches root, 3 does not.
        let mut state = vec![0u8; n];
        state[root] = 2;
        let mut walk = Vec::new();
        for start in 0..n {
            if parent[start].is_none() || state[start] != 0 {
                continue;
            }
            let mut v = start;
            let outcome = loop {
                match state[v] {
                    2 => break 2,
                    1 | 3 => break 3,
                    _ => {}
                }
                state[v] = 1;
                walk.push(v);
                match parent[v] {
                    Some(p) => v = p,
                    None => break 3,
                }
            };
            for w in walk.drain(..) {
                state[w] = outcome;
                if outcome == 3 {
                    viol(w, ViolationKind::Unreachable);
                }
            }
        }
    }

    for (v, &u) in used.iter().enumerate() {
        if u > inst.capacity(v) {
            violations.push(Violation {
                tree: None,
                vertex: v,
                kind: ViolationKind::CapacityExceeded {
                    used: u,
                    capacity: inst.capacity(v),
                },
            });
        }
    }

    Ok(Verification {
        valid: violations.is_empty(),
        violations,
    })
}

#[derive(Debug, Serialize, Deserialize)]
struct TreeFile {
    edges: Vec<[usize; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
struct PackingFile {
    trees: Vec<TreeFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    objective: Option<usize>,
}

impl From<&Packing> for PackingFile {
    fn from(p: &Packing) -> Self {
        PackingFile {
            trees: p
                .trees()
                .iter()
                .map(|t| TreeFile {
                    edges: t.edges().iter().map(|&(u, v)| [u, v]).collect(),
                })
                .collect(),
            objective: Some(p.objective()),
        }
    }
}

/// A packing read from disk, together with the objective the file claims.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedPacking {
    pub packing: Packing,
    pub declared_objective: Option<usize>,
}

/// Writes `{"trees":[{"edges":[[parent,child],...]},...],"objective":N}`.
pub fn save_packing<W: Write>(p: &Packing, mut sink: W) -> Result<()> {
    serde_json::to_writer(&mut sink, &PackingFile::from(p))?;
    sink.write_all(b"\n")?;
    Ok(())
}

/// Reads a packing file. The root is not stored in the file, so it is taken
/// from the instance the packing belongs to.
pub fn load_packing<R: Read>(source: R, root: usize) -> Result<LoadedPacking> {
    let file: PackingFile = serde_json::from_reader(source)?;
    Ok(LoadedPacking {
        packing: Packing::new(
            file.trees
                .into_iter()
                .map(|t| RootedTree::from_edges(root, t.edges.into_iter().map(|[u, v]| (u, v)).collect()))
                .collect(),
        ),
        declared_objective: file.objective,
    })
}
