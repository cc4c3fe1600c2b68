//! Exhaustive solver for small instances of any kind, and a greedy BFS
//! baseline for general graphs.
//!
//! The objective equals `K` plus the total number of tree edges, since every
//! tree has one vertex more than it has edges. The search therefore maximises
//! edges under the shared capacity budget.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::packing::{Packing, RootedTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_n: usize,
    pub max_k: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_n: 8, max_k: 3 }
    }
}

struct Search<'a> {
    inst: &'a Instance,
    adjacency: Vec<Vec<usize>>,
    residual: Vec<usize>,
    residual_total: usize,
    in_tree: Vec<bool>,
    /// Finished trees, canonical (sorted) edge lists.
    done: Vec<Vec<(usize, usize)>>,
    current: Vec<(usize, usize)>,
    edges_so_far: usize,
    best_edges: usize,
    best: Vec<Vec<(usize, usize)>>,
    /// `K + min(Σ c_v, min(c_r, K)(n − 1))`, reached on many instances.
    ceiling: usize,
}

impl Search<'_> {
    fn finished(&self) -> bool {
        self.best_edges >= self.ceiling
    }

    /// Upper bound on edges still obtainable from the current state of the
    /// tree being grown plus all later trees.
    fn bound(&self, candidates_left: bool) -> usize {
        let inst = self.inst;
        let tree_size = self.current.len() + 1;
        let here = if candidates_left { inst.n() - tree_size } else { 0 };
        let later_trees = inst.k() - self.done.len() - 1;
        let later = later_trees.min(self.residual[inst.root()]) * (inst.n() - 1);
        self.residual_total.min(here + later)
    }

    /// Grows the current tree. `candidates` are `(parent, child)` edges
    /// leaving the tree; the first usable one is either taken or discarded
    /// for good, which generates every edge set exactly once.
    fn grow(&mut self, mut candidates: Vec<(usize, usize)>) {
        if self.finished() {
            return;
        }
        while let Some(&(u, v)) = candidates.last() {
            if self.in_tree[v] || self.residual[u] == 0 {
                candidates.pop();
            } else {
                break;
            }
        }
        let Some((u, v)) = candidates.pop() else {
            self.close_tree();
            return;
        };
        if self.edges_so_far + self.bound(true) <= self.best_edges {
            return;
        }

        // take (u, v)
        self.residual[u] -= 1;
        self.residual_total -= 1;
        self.in_tree[v] = true;
        self.current.push((u, v));
        self.edges_so_far += 1;
        let mut extended = candidates.clone();
        // pushed in reverse so the smallest neighbour is popped first
        extended.extend(
            self.adjacency[v]
                .iter()
                .rev()
                .filter(|&&w| !self.in_tree[w])
                .map(|&w| (v, w)),
        );
        self.grow(extended);
        self.edges_so_far -= 1;
        self.current.pop();
        self.in_tree[v] = false;
        self.residual_total += 1;
        self.residual[u] += 1;

        // discard (u, v)
        self.grow(candidates);
    }

    fn close_tree(&mut self) {
        let mut canon = self.current.clone();
        canon.sort_unstable();
        // Trees are kept in non-increasing canonical order; any packing can
        // be sorted that way without changing its objective.
        if let Some(prev) = self.done.last() {
            if canon > *prev {
                return;
            }
        }
        if self.done.len() + 1 == self.inst.k() {
            if self.edges_so_far > self.best_edges {
                self.best_edges = self.edges_so_far;
                self.best = self.done.clone();
                self.best.push(self.current.clone());
            }
            return;
        }

        let saved_current = std::mem::take(&mut self.current);
        let saved_in_tree = std::mem::replace(&mut self.in_tree, vec![false; self.inst.n()]);
        self.done.push(canon);
        let root = self.inst.root();
        self.in_tree[root] = true;
        let start = self.adjacency[root].iter().rev().map(|&w| (root, w)).collect();
        self.grow(start);
        self.done.pop();
        self.in_tree = saved_in_tree;
        self.current = saved_current;
    }
}

/// Exact optimum by exhaustive search with capacity accounting,
/// branch-and-bound and symmetry breaking between trees.
pub fn brute_force_solve(inst: &Instance, limits: Limits) -> Result<(usize, Packing)> {
    if inst.n() > limits.max_n {
        return Err(Error::LimitExceeded(format!(
            "n = {} exceeds the oracle limit {}",
            inst.n(),
            limits.max_n
        )));
    }
    if inst.k() > limits.max_k {
        return Err(Error::LimitExceeded(format!(
            "K = {} exceeds the oracle limit {}",
            inst.k(),
            limits.max_k
        )));
    }
    let n = inst.n();
    let root = inst.root();
    let adjacency: Vec<Vec<usize>> = (0..n).map(|v| inst.neighbors(v).collect()).collect();
    let residual_total: usize = inst.capacities().iter().sum();
    let kbar = inst.capacity(root).min(inst.k());

    let mut search = Search {
        inst,
        adjacency,
        residual: inst.capacities().to_vec(),
        residual_total,
        in_tree: vec![false; n],
        done: Vec::with_capacity(inst.k()),
        current: Vec::new(),
        edges_so_far: 0,
        best_edges: 0,
        best: vec![Vec::new(); inst.k()],
        ceiling: residual_total.min(kbar * (n - 1)),
    };
    search.in_tree[root] = true;
    let start = search.adjacency[root].iter().rev().map(|&w| (root, w)).collect();
    search.grow(start);

    let packing = Packing::new(
        search
            .best
            .into_iter()
            .map(|edges| RootedTree::from_edges(root, edges))
            .collect(),
    );
    Ok((inst.k() + search.best_edges, packing))
}

/// Heuristic for any instance: BFS trees grown round-robin, one attachment
/// per tree per round, while capacity lasts. No optimality guarantee.
pub fn greedy_general(inst: &Instance) -> Packing {
    let n = inst.n();
    let k = inst.k();
    let root = inst.root();
    let adjacency: Vec<Vec<usize>> = (0..n).map(|v| inst.neighbors(v).collect()).collect();
    let mut residual = inst.capacities().to_vec();
    let mut trees = vec![RootedTree::null(root); k];
    let mut in_tree = vec![vec![false; n]; k];
    let mut frontier: Vec<VecDeque<usize>> = vec![VecDeque::from([root]); k];
    // next neighbour index to try, per tree and vertex
    let mut cursor = vec![vec![0usize; n]; k];
    for flags in &mut in_tree {
        flags[root] = true;
    }

    loop {
        let mut progressed = false;
        for t in 0..k {
            while let Some(&u) = frontier[t].front() {
                if residual[u] == 0 {
                    frontier[t].pop_front();
                    continue;
                }
                let nbrs = &adjacency[u];
                while cursor[t][u] < nbrs.len() && in_tree[t][nbrs[cursor[t][u]]] {
                    cursor[t][u] += 1;
                }
                if cursor[t][u] == nbrs.len() {
                    frontier[t].pop_front();
                    continue;
                }
                let v = nbrs[cursor[t][u]];
                trees[t].attach(u, v);
                in_tree[t][v] = true;
                residual[u] -= 1;
                frontier[t].push_back(v);
                progressed = true;
                break;
            }
        }
        if !progressed {
            break;
        }
    }
    Packing::new(trees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packing::verify_packing;

    #[test]
    fn triangle_single_tree() {
        let inst = Instance::complete(3, 0, vec![1, 1, 1], 1).unwrap();
        let (value, p) = brute_force_solve(&inst, Limits::default()).unwrap();
        assert_eq!(value, 3);
        assert!(verify_packing(&inst, &p).unwrap().valid);
        assert_eq!(p.objective(), 3);
    }

    #[test]
    fn path_two_trees() {
        let inst = Instance::tree(3, 0, vec![(0, 1), (1, 2)], vec![1, 1, 1], 2).unwrap();
        let (value, p) = brute_force_solve(&inst, Limits::default()).unwrap();
        assert_eq!(value, 4);
        assert_eq!(p.objective(), 4);
    }

    #[test]
    fn zero_capacities() {
        let inst = Instance::general(4, 0, vec![(0, 1), (1, 2), (2, 3), (3, 0)], vec![0; 4], 3).unwrap();
        assert_eq!(brute_force_solve(&inst, Limits::default()).unwrap(), (3, Packing::nulls(0, 3)));
        assert_eq!(greedy_general(&inst), Packing::nulls(0, 3));
    }

    #[test]
    fn limits_are_enforced() {
        let inst = Instance::complete(9, 0, vec![1; 9], 1).unwrap();
        assert!(matches!(brute_force_solve(&inst, Limits::default()), Err(Error::LimitExceeded(_))));
        let inst = Instance::complete(5, 0, vec![1; 5], 4).unwrap();
        assert!(matches!(brute_force_solve(&inst, Limits::default()), Err(Error::LimitExceeded(_))));
        assert!(brute_force_solve(&inst, Limits { max_n: 5, max_k: 4 }).is_ok());
    }

    #[test]
    fn capacity_bound_below_ceiling() {
        // Cycle 0-1-2-3-0, root capacity 1, others 1, K = 2: one tree can be
        // the Hamiltonian path 0-1-2-3, the second must be null.
        let inst = Instance::general(4, 0, vec![(0, 1), (1, 2), (2, 3), (3, 0)], vec![1, 1, 1, 1], 2).unwrap();
        let (value, p) = brute_force_solve(&inst, Limits::default()).unwrap();
        assert_eq!(value, 5);
        assert!(verify_packing(&inst, &p).unwrap().valid);
    }

    #[test]
    fn greedy_round_robin_spreads_capacity() {
        let inst = Instance::complete(4, 0, vec![2, 1, 1, 1], 2).unwrap();
        let p = greedy_general(&inst);
        assert!(verify_packing(&inst, &p).unwrap().valid);
        assert!(p.objective() <= 7);
    }
}
