//! Two-stage exact algorithm for complete graphs.
//!
//! Stage one builds, for every tree, a Hamiltonian path of the vertices that
//! still have capacity (plus the root) and charges one unit to every path
//! vertex except the last. Stage two lets each path vertex spend its residual
//! capacity attaching the vertices its tree is still missing.
//!
//! Stage two only scans path vertices. That loses nothing: a vertex with
//! positive residual capacity after stage one had positive capacity when every
//! path was built, so it lies on every path whose root capacity was nonzero,
//! and on a null path its tree has no capacity to hand out anyway (the root
//! had none).

use crate::error::Result;
use crate::instance::{GraphKind, Instance};
use crate::packing::{Packing, RootedTree};

/// The path `s_k`; starts at the root, possibly just `[root]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StagePath {
    vertices: Vec<usize>,
}

impl StagePath {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn termination(&self) -> usize {
        *self.vertices.last().expect("path is never empty")
    }

    pub fn is_singleton(&self) -> bool {
        self.vertices.len() == 1
    }
}

/// Stage one. Paths list the root first, then every other vertex with
/// current capacity `> 0` in ascending id order.
pub fn build_stage_paths(inst: &Instance) -> Result<(Vec<StagePath>, Vec<usize>)> {
    inst.check_kind(GraphKind::Complete)?;
    let root = inst.root();
    let mut residual = inst.capacities().to_vec();
    let mut paths = Vec::with_capacity(inst.k());

    for _ in 0..inst.k() {
        let mut vertices = vec![root];
        if residual[root] > 0 {
            vertices.extend((0..inst.n()).filter(|&v| v != root && residual[v] > 0));
            for &v in &vertices[..vertices.len() - 1] {
                residual[v] -= 1;
            }
        }
        paths.push(StagePath { vertices });
    }
    Ok((paths, residual))
}

/// Stage two. Scans each path from the root; a vertex with residual
/// capacity adopts missing vertices in ascending id order. `residual` is
/// shared across trees.
pub fn attach_stage(inst: &Instance, paths: &[StagePath], residual: &[usize]) -> Packing {
    let n = inst.n();
    let mut residual = residual.to_vec();
    let mut in_tree = vec![false; n];
    let mut trees = Vec::with_capacity(paths.len());

    for path in paths {
        let mut tree = RootedTree::from_path(path.vertices());
        in_tree.iter_mut().for_each(|b| *b = false);
        for &v in path.vertices() {
            in_tree[v] = true;
        }
        let mut missing = (0..n).filter(|&v| !in_tree[v]).peekable();
        for &v in path.vertices() {
            while residual[v] > 0 {
                let Some(w) = missing.next() else { break };
                tree.attach(v, w);
                residual[v] -= 1;
            }
            if missing.peek().is_none() {
                break;
            }
        }
        trees.push(tree);
    }
    Packing::new(trees)
}

pub fn solve_complete(inst: &Instance) -> Result<Packing> {
    let (paths, residual) = build_stage_paths(inst)?;
    Ok(attach_stage(inst, &paths, &residual))
}

/// `min{k̄ + Σ c_v, k̄ n} + (K − k̄)` with `k̄ = min{c_r, K}`; the trailing term
/// counts the root of each null tree.
pub fn closed_form_value(inst: &Instance) -> usize {
    let k = inst.k();
    let kbar = inst.capacity(inst.root()).min(k);
    let total: usize = inst.capacities().iter().sum();
    (kbar + total).min(kbar * inst.n()) + (k - kbar)
}
