#![allow(dead_code)]

use mbrtp::reduction::SatInstance;
use mbrtp::{Instance, Packing, RootedTree};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_complete(rng: &mut StdRng, max_n: usize, max_k: usize, max_cap: usize) -> Instance {
    let n = rng.gen_range(1..=max_n);
    let k = rng.gen_range(1..=max_k.min(n));
    let root = rng.gen_range(0..n);
    let caps = (0..n).map(|_| rng.gen_range(0..=max_cap)).collect();
    Instance::complete(n, root, caps, k).unwrap()
}

/// Random labelled tree: vertex `v > 0` hangs off a uniformly chosen earlier
/// vertex, then labels are shuffled so the root is not always 0.
pub fn random_tree(rng: &mut StdRng, n: usize, k: usize, max_cap: usize) -> Instance {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let edges = (1..n).map(|v| (perm[rng.gen_range(0..v)], perm[v])).collect();
    let caps = (0..n).map(|_| rng.gen_range(0..=max_cap)).collect();
    let root = rng.gen_range(0..n);
    Instance::tree(n, root, edges, caps, k).unwrap()
}

/// Random connected graph: a random tree plus extra edges.
pub fn random_general(rng: &mut StdRng, n: usize, k: usize, max_cap: usize, extra: usize) -> Instance {
    let t = random_tree(rng, n, k, max_cap);
    let mut edges = t.edges().to_vec();
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && !edges.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u)) {
            edges.push((u, v));
        }
    }
    Instance::general(n, t.root(), edges, t.capacities().to_vec(), k).unwrap()
}

pub fn random_3cnf(rng: &mut StdRng, max_vars: usize, max_clauses: usize) -> SatInstance {
    let n = rng.gen_range(1..=max_vars);
    let m = rng.gen_range(1..=max_clauses);
    random_3cnf_exact(rng, n, m)
}

pub fn random_3cnf_exact(rng: &mut StdRng, n: usize, m: usize) -> SatInstance {
    let clauses = (0..m)
        .map(|_| {
            (0..3)
                .map(|_| {
                    let v = rng.gen_range(1..=n as i32);
                    if rng.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    SatInstance::new(n, clauses).unwrap()
}

/// Truth-table satisfiability.
pub fn satisfiable(sat: &SatInstance) -> bool {
    let n = sat.num_vars();
    (0u32..1 << n).any(|mask| {
        let assignment: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        sat.is_satisfied_by(&assignment)
    })
}

/// Naive optimum: every tree is a parent function `V \ {r} -> {none} ∪ N(v)`
/// that reaches the root, and every K-tuple of such functions is tried.
/// Only for tiny graphs.
pub fn naive_optimum(inst: &Instance) -> usize {
    let n = inst.n();
    let root = inst.root();
    let others: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    let choices: Vec<Vec<Option<usize>>> = others
        .iter()
        .map(|&v| std::iter::once(None).chain(inst.neighbors(v).map(Some)).collect())
        .collect();

    // All valid trees as child-count vectors and sizes.
    let mut trees: Vec<(Vec<usize>, usize)> = Vec::new();
    let mut idx = vec![0usize; others.len()];
    loop {
        let mut parent = vec![None; n];
        for (j, &v) in others.iter().enumerate() {
            parent[v] = choices[j][idx[j]];
        }
        let reaches = |mut v: usize| {
            for _ in 0..=n {
                if v == root {
                    return true;
                }
                match parent[v] {
                    Some(p) => v = p,
                    None => return false,
                }
            }
            false
        };
        if others.iter().all(|&v| parent[v].is_none() || reaches(v)) {
            let mut counts = vec![0; n];
            let mut size = 1;
            for &v in &others {
                if let Some(p) = parent[v] {
                    counts[p] += 1;
                    size += 1;
                }
            }
            trees.push((counts, size));
        }
        let mut j = 0;
        while j < idx.len() && idx[j] + 1 == choices[j].len() {
            idx[j] = 0;
            j += 1;
        }
        if j == idx.len() {
            break;
        }
        idx[j] += 1;
    }

    let k = inst.k();
    let mut best = 0;
    let mut pick = vec![0usize; k];
    loop {
        let mut used = vec![0; n];
        let mut total = 0;
        for &t in &pick {
            for (u, c) in used.iter_mut().zip(&trees[t].0) {
                *u += c;
            }
            total += trees[t].1;
        }
        if (0..n).all(|v| used[v] <= inst.capacity(v)) {
            best = best.max(total);
        }
        let mut j = 0;
        while j < k && pick[j] + 1 == trees.len() {
            pick[j] = 0;
            j += 1;
        }
        if j == k {
            return best;
        }
        pick[j] += 1;
    }
}

/// Packings that look plausible but break one rule each.
pub fn tamper(p: &Packing, inst: &Instance) -> Vec<Packing> {
    let root = inst.root();
    let n = inst.n();
    let mut out = Vec::new();
    let trees = p.trees().to_vec();

    // a non-edge (if the graph has one)
    if let Some((u, v)) = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .find(|&(u, v)| u != v && v != root && !inst.has_edge(u, v))
    {
        let mut t = trees.clone();
        t[0] = RootedTree::from_edges(root, vec![(root, u), (u, v)]);
        if u == root {
            t[0] = RootedTree::from_edges(root, vec![(u, v)]);
        }
        out.push(Packing::new(t));
    }
    // detached edge whose parent is not in the tree
    if n >= 3 {
        let mut t = trees.clone();
        let (a, b) = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .find(|&(u, v)| u != root && v != root && u != v && inst.has_edge(u, v))
            .unwrap_or((root, root));
        if a != root {
            t[0] = RootedTree::from_edges(root, vec![(a, b)]);
            out.push(Packing::new(t));
        }
    }
    // root as a child
    if let Some(w) = inst.neighbors(root).next() {
        let mut t = trees.clone();
        t[0] = RootedTree::from_edges(root, vec![(root, w), (w, root)]);
        out.push(Packing::new(t));
    }
    // over capacity: give the root one more child than it can afford in every tree
    if let Some(w) = inst.neighbors(root).next() {
        let c = inst.capacity(root);
        if c < inst.k() {
            let mut t = trees;
            for tree in t.iter_mut().take(c + 1) {
                *tree = RootedTree::from_edges(root, vec![(root, w)]);
            }
            out.push(Packing::new(t));
        }
    }
    out
}
