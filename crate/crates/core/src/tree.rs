//! Exact dynamic program for tree instances.
//!
//! Every vertex `u` keeps a vector `g(u)` whose `k`-th entry is the optimum of
//! the sub-instance restricted to the subtree of `u` with `k` trees. The
//! entry is a knapsack over the children: `u` hands each child some number
//! `i ∈ {0..k}` of its `k` stripes, paying `i` units of capacity, and the
//! child then spans `g(child)_i` vertex occurrences below it.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::instance::{GraphKind, Instance};
use crate::packing::{Packing, RootedTree};

/// `g(v)`: entry `k - 1` holds the optimal value with `k` trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripeValueVector(Vec<usize>);

impl StripeValueVector {
    pub fn new(values: Vec<usize>) -> Self {
        StripeValueVector(values)
    }

    /// `g(v)` of a leaf: `1, 2, ..., k`.
    pub fn leaf(k: usize) -> Self {
        StripeValueVector((1..=k).collect())
    }

    /// `g(v)_k`, 1-based. `value(0)` is 0: an unserved child spans nothing.
    pub fn value(&self, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            self.0[k - 1]
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// DP table for one knapsack: `f_d^k(c)` for `d = 0..=children`,
/// `c = 0..=min(c_u, k d_max)`, and the allocation to child `d` that won.
#[derive(Debug, Clone)]
pub struct DpTable {
    k: usize,
    width: usize,
    values: Vec<usize>,
    choices: Vec<usize>,
}

impl DpTable {
    /// Rows beyond the stored width would repeat the last column: every
    /// extra unit exceeds `k` per child, which no allocation can use.
    pub fn value(&self, d: usize, c: usize) -> usize {
        self.values[d * self.width + c.min(self.width - 1)]
    }

    pub fn choice(&self, d: usize, c: usize) -> usize {
        self.choices[d * self.width + c.min(self.width - 1)]
    }

    pub fn children(&self) -> usize {
        self.values.len() / self.width - 1
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Follows the recorded choices from `(children, c)` back to `d = 0`.
    pub fn backtrack(&self, c: usize) -> Vec<usize> {
        let mut c = c.min(self.width - 1);
        let mut alloc = vec![0; self.children()];
        for d in (1..=self.children()).rev() {
            let i = self.choice(d, c);
            alloc[d - 1] = i;
            c -= i;
        }
        alloc
    }
}

/// Fills the table with the recurrence
///
/// ```text
/// f_d(0)  = k
/// f_d(c)  = k + Σ_{j<=d} g(v_j)_k                                  c >= k d
/// f_d(c)  = max( f_{d-1}(c), max_{1<=i<=min(k,c)} f_{d-1}(c-i) + g(v_d)_i )   otherwise
/// ```
///
/// with `f_0(c) = k`. Ties keep the smaller allocation, so skipping a child
/// wins over serving it when both are optimal.
pub fn build_table(k: usize, capacity: usize, children: &[&StripeValueVector]) -> Result<DpTable> {
    for (index, g) in children.iter().enumerate() {
        if g.len() < k {
            return Err(Error::ShortVector { index, len: g.len(), k });
        }
    }
    let d_max = children.len();
    let width = capacity.min(k * d_max) + 1;
    let mut values = vec![k; (d_max + 1) * width];
    let mut choices = vec![0; (d_max + 1) * width];
    let mut saturated = k;

    for d in 1..=d_max {
        let g = children[d - 1];
        saturated += g.value(k);
        let (prev, cur) = values.split_at_mut(d * width);
        let prev = &prev[(d - 1) * width..];
        let cur = &mut cur[..width];
        let choice = &mut choices[d * width..(d + 1) * width];
        for c in 1..width {
            if c >= k * d {
                cur[c] = saturated;
                choice[c] = k;
                continue;
            }
            let mut best = prev[c];
            let mut best_i = 0;
            for i in 1..=k.min(c) {
                let v = prev[c - i] + g.value(i);
                if v > best {
                    best = v;
                    best_i = i;
                }
            }
            cur[c] = best;
            choice[c] = best_i;
        }
    }
    Ok(DpTable {
        k,
        width,
        values,
        choices,
    })
}

/// Solves the per-vertex knapsack: the value `f_{n(u)}^k(c_u)` and, per
/// child, how many of the `k` stripes it receives.
pub fn ns_mckp(k: usize, capacity: usize, children: &[&StripeValueVector]) -> Result<(usize, Vec<usize>)> {
    let table = build_table(k, capacity, children)?;
    Ok((table.value(children.len(), capacity), table.backtrack(capacity)))
}

/// Parent pointers and children lists of the instance tree hung from its root,
/// plus a BFS order (parents before children).
struct Rooted {
    children: Vec<Vec<usize>>,
    order: Vec<usize>,
}

fn hang(inst: &Instance) -> Rooted {
    let n = inst.n();
    let mut seen = vec![false; n];
    let mut children = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([inst.root()]);
    seen[inst.root()] = true;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for w in inst.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                children[u].push(w);
                queue.push_back(w);
            }
        }
    }
    Rooted { children, order }
}

fn g_vectors(inst: &Instance, rooted: &Rooted) -> Result<Vec<StripeValueVector>> {
    let k_max = inst.k();
    let mut g: Vec<StripeValueVector> = vec![StripeValueVector(Vec::new()); inst.n()];
    for &u in rooted.order.iter().rev() {
        let kids: Vec<&StripeValueVector> = rooted.children[u].iter().map(|&v| &g[v]).collect();
        let values = (1..=k_max)
            .map(|k| build_table(k, inst.capacity(u), &kids).map(|t| t.value(kids.len(), inst.capacity(u))))
            .collect::<Result<Vec<_>>>()?;
        g[u] = StripeValueVector(values);
    }
    Ok(g)
}

/// `g(v)` for every vertex, indexed by vertex id. Children are processed
/// before parents (reverse BFS order), without recursion.
pub fn compute_g(inst: &Instance) -> Result<Vec<StripeValueVector>> {
    inst.check_kind(GraphKind::Tree)?;
    g_vectors(inst, &hang(inst))
}

/// The optimum `g(root)_K` without building a packing.
pub fn solve_tree_value(inst: &Instance) -> Result<usize> {
    let g = compute_g(inst)?;
    Ok(g[inst.root()].value(inst.k()))
}

/// Optimal value and a packing attaining it.
///
/// The root holds all stripe indices `0..K`. A vertex holding a set `S`
/// re-solves its knapsack with `|S|` stripes and passes the smallest `i_v`
/// indices of `S` to each child `v` allocated `i_v`; the edge `(u, v)` goes
/// into exactly those trees.
pub fn solve_tree(inst: &Instance) -> Result<(usize, Packing)> {
    inst.check_kind(GraphKind::Tree)?;
    let rooted = hang(inst);
    let g = g_vectors(inst, &rooted)?;
    let root = inst.root();
    let value = g[root].value(inst.k());

    let mut trees = vec![RootedTree::null(root); inst.k()];
    let mut queue = VecDeque::from([(root, (0..inst.k()).collect::<Vec<_>>())]);
    while let Some((u, held)) = queue.pop_front() {
        let kids: Vec<&StripeValueVector> = rooted.children[u].iter().map(|&v| &g[v]).collect();
        if kids.is_empty() {
            continue;
        }
        let (_, alloc) = ns_mckp(held.len(), inst.capacity(u), &kids)?;
        for (&v, &i) in rooted.children[u].iter().zip(&alloc) {
            if i == 0 {
                continue;
            }
            let given = held[..i].to_vec();
            for &t in &given {
                trees[t].attach(u, v);
            }
            queue.push_back((v, given));
        }
    }
    Ok((value, Packing::new(trees)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packing::verify_packing;

    fn leaf(k: usize) -> StripeValueVector {
        StripeValueVector::leaf(k)
    }

    /// Every allocation tuple in `{0..k}^d` with `Σ i <= c`.
    fn brute_mckp(k: usize, c: usize, kids: &[&StripeValueVector]) -> usize {
        let d = kids.len();
        let mut best = k;
        let mut alloc = vec![0; d];
        loop {
            let used: usize = alloc.iter().sum();
            if used <= c {
                best = best.max(k + kids.iter().zip(&alloc).map(|(g, &i)| g.value(i)).sum::<usize>());
            }
            let mut j = 0;
            while j < d && alloc[j] == k {
                alloc[j] = 0;
                j += 1;
            }
            if j == d {
                return best;
            }
            alloc[j] += 1;
        }
    }

    #[test]
    fn no_children() {
        assert_eq!(ns_mckp(3, 5, &[]).unwrap(), (3, vec![]));
    }

    #[test]
    fn two_leaves_k2_c2() {
        let (a, b) = (leaf(2), leaf(2));
        let kids = [&a, &b];
        assert_eq!(brute_mckp(2, 2, &kids), 4);
        let (value, alloc) = ns_mckp(2, 2, &kids).unwrap();
        assert_eq!(value, 4);
        assert!(alloc.iter().sum::<usize>() <= 2);
        assert_eq!(2 + alloc.iter().zip(&kids).map(|(&i, g)| g.value(i)).sum::<usize>(), 4);
        // Ties keep the skip at d = 2, so the first child takes both stripes.
        assert_eq!(alloc, vec![2, 0]);
    }

    #[test]
    fn saturation_gives_everything() {
        let a = StripeValueVector::new(vec![3, 5]);
        let b = leaf(2);
        let c = StripeValueVector::new(vec![2, 4]);
        let kids = [&a, &b, &c];
        for cap in 6..10 {
            let (value, alloc) = ns_mckp(2, cap, &kids).unwrap();
            assert_eq!(value, 2 + 5 + 2 + 4);
            assert_eq!(alloc, vec![2, 2, 2]);
        }
    }

    #[test]
    fn short_vector_is_rejected() {
        let a = leaf(1);
        assert!(matches!(ns_mckp(2, 2, &[&a]), Err(Error::ShortVector { index: 0, len: 1, k: 2 })));
    }

    #[test]
    fn table_base_row_follows_closed_cases() {
        // d = 1: k if c = 0, k + g_c for 1 <= c < k, k + g_k for c >= k.
        let g = StripeValueVector::new(vec![2, 5, 7]);
        let t = build_table(3, 10, &[&g]).unwrap();
        assert_eq!(t.value(1, 0), 3);
        assert_eq!(t.value(1, 1), 3 + 2);
        assert_eq!(t.value(1, 2), 3 + 5);
        assert_eq!(t.value(1, 3), 3 + 7);
        assert_eq!(t.value(1, 9), 3 + 7);
    }

    #[test]
    fn star_capacity_one() {
        let inst = Instance::tree(3, 0, vec![(0, 1), (0, 2)], vec![1, 0, 0], 2).unwrap();
        let g = compute_g(&inst).unwrap();
        assert_eq!(g[0].as_slice(), &[2, 3]);
        assert_eq!(g[1].as_slice(), &[1, 2]);
    }

    #[test]
    fn path_capacities_one_one_zero() {
        let inst = Instance::tree(3, 0, vec![(0, 1), (1, 2)], vec![1, 1, 0], 2).unwrap();
        let g = compute_g(&inst).unwrap();
        assert_eq!(g[2].as_slice(), &[1, 2]);
        assert_eq!(g[1].as_slice(), &[2, 3]);
        assert_eq!(g[0].as_slice(), &[3, 4]);
        let (value, p) = solve_tree(&inst).unwrap();
        assert_eq!(value, 4);
        assert_eq!(p.trees()[0], RootedTree::from_path(&[0, 1, 2]));
        assert!(p.trees()[1].is_null());
        assert!(verify_packing(&inst, &p).unwrap().valid);
    }

    #[test]
    fn single_vertex() {
        let inst = Instance::tree(1, 0, vec![], vec![2], 1).unwrap();
        assert_eq!(solve_tree(&inst).unwrap(), (1, Packing::nulls(0, 1)));
        let inst = Instance::tree(3, 1, vec![(0, 1), (1, 2)], vec![0, 0, 0], 3).unwrap();
        assert_eq!(solve_tree(&inst).unwrap(), (3, Packing::nulls(1, 3)));
    }

    #[test]
    fn star_three_leaves_cap_two() {
        let inst = Instance::tree(4, 0, vec![(0, 1), (0, 2), (0, 3)], vec![2, 0, 0, 0], 1).unwrap();
        let (value, p) = solve_tree(&inst).unwrap();
        assert_eq!(value, 3);
        assert_eq!(p.objective(), 3);
    }

    #[test]
    fn leaves_are_identity() {
        let inst = Instance::tree(4, 2, vec![(0, 1), (1, 2), (2, 3)], vec![1, 1, 1, 1], 4).unwrap();
        let g = compute_g(&inst).unwrap();
        assert_eq!(g[0].as_slice(), &[1, 2, 3, 4]);
        assert_eq!(g[3].as_slice(), &[1, 2, 3, 4]);
    }

    #[test]
    fn deep_path_does_not_overflow_stack() {
        let n = 20_000;
        let edges = (1..n).map(|v| (v - 1, v)).collect();
        let inst = Instance::tree(n, 0, edges, vec![1; n], 1).unwrap();
        assert_eq!(solve_tree_value(&inst).unwrap(), n);
    }

    #[test]
    fn rejects_complete() {
        let inst = Instance::complete(3, 0, vec![1; 3], 1).unwrap();
        assert!(matches!(compute_g(&inst), Err(Error::KindMismatch { .. })));
    }
}
