//! Unlabeled tree enumeration and the tree-indexed terms of the inverse
//! map's potential: for a tree T with vertex polynomial P, sum over all
//! edge labelings l : E -> {1..n} of the product over vertices of P
//! differentiated along the labels of incident edges, then weight by
//! 1/|Aut T|.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::HnError;
use crate::poly::Poly;

/// Largest vertex count the enumerator accepts (free tree counts grow
/// quickly past this).
pub const MAX_TREE_SIZE: u32 = 9;

/// Rooted unlabeled tree in canonical form: children sorted by code.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RootedTree {
    pub children: Vec<RootedTree>,
}

impl RootedTree {
    pub fn leaf() -> RootedTree {
        RootedTree { children: Vec::new() }
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(RootedTree::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        self.children
            .iter()
            .map(|c| c.height() + 1)
            .max()
            .unwrap_or(0)
    }

    /// Canonical parenthesization; equal codes iff isomorphic as rooted
    /// trees (children are kept sorted).
    pub fn code(&self) -> String {
        let mut s = String::from("(");
        for c in &self.children {
            s.push_str(&c.code());
        }
        s.push(')');
        s
    }

    fn sort(&mut self) {
        for c in &mut self.children {
            c.sort();
        }
        self.children.sort();
    }

    /// Order of the automorphism group fixing the root.
    pub fn aut(&self) -> u64 {
        let mut total = 1u64;
        let mut i = 0;
        while i < self.children.len() {
            let mut j = i;
            while j < self.children.len() && self.children[j] == self.children[i] {
                j += 1;
            }
            let mult = (j - i) as u64;
            total *= factorial(mult);
            total *= self.children[i].aut().pow(mult as u32);
            i = j;
        }
        total
    }

    /// Edge list of the underlying labeled-by-traversal tree; vertex 0 is
    /// the root, vertices numbered in preorder.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::with_capacity(self.size() - 1);
        let mut next = 1usize;
        fn walk(t: &RootedTree, me: usize, next: &mut usize, edges: &mut Vec<(usize, usize)>) {
            for c in &t.children {
                let id = *next;
                *next += 1;
                edges.push((me, id));
                walk(c, id, next, edges);
            }
        }
        walk(self, 0, &mut next, &mut edges);
        edges
    }
}

fn factorial(k: u64) -> u64 {
    (1..=k).product::<u64>().max(1)
}

/// All canonical rooted trees with exactly `m` vertices.
pub fn rooted_trees(m: u32) -> Result<Vec<RootedTree>, HnError> {
    if m == 0 || m > MAX_TREE_SIZE {
        return Err(HnError::CapExceeded);
    }
    // table[k] = rooted trees of size k+1.
    let mut table: Vec<Vec<RootedTree>> = vec![vec![RootedTree::leaf()]];
    for size in 2..=m as usize {
        // Flatten smaller trees into one ordered pool; children are chosen
        // as a non-increasing sequence from the pool to avoid duplicates.
        let pool: Vec<RootedTree> = table.iter().flatten().cloned().collect();
        let mut out = Vec::new();
        let mut chosen: Vec<usize> = Vec::new();
        build_children(&pool, size - 1, usize::MAX, &mut chosen, &mut out);
        table.push(out);
    }
    Ok(table.pop().unwrap())
}

fn build_children(
    pool: &[RootedTree],
    remaining: usize,
    max_idx: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<RootedTree>,
) {
    if remaining == 0 {
        let mut t = RootedTree {
            children: chosen.iter().map(|&i| pool[i].clone()).collect(),
        };
        t.sort();
        out.push(t);
        return;
    }
    for (i, cand) in pool.iter().enumerate() {
        if i > max_idx {
            break;
        }
        let s = cand.size();
        if s > remaining {
            continue;
        }
        chosen.push(i);
        build_children(pool, remaining - s, i, chosen, out);
        chosen.pop();
    }
}

/// A free (unrooted) tree in centroid-canonical form, with the order of
/// its automorphism group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeTree {
    /// A rooted representative (rooted at a centroid).
    pub rooted: RootedTree,
    pub aut: u64,
}

impl FreeTree {
    pub fn size(&self) -> usize {
        self.rooted.size()
    }
}

/// Centroid-canonical code of the free tree underlying a rooted tree.
fn free_code(t: &RootedTree) -> (String, FreeTree) {
    let m = t.size();
    // Recover adjacency from the edge list, then find centroid(s).
    let edges = t.edges();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let centroids = find_centroids(&adj);
    if centroids.len() == 1 {
        let r = reroot(&adj, centroids[0]);
        let aut = r.aut();
        (r.code(), FreeTree { rooted: r, aut })
    } else {
        // Bicentroid: canonical code is the sorted pair of half-codes
        // across the central edge.
        let (c0, c1) = (centroids[0], centroids[1]);
        let h0 = reroot_avoiding(&adj, c0, c1);
        let h1 = reroot_avoiding(&adj, c1, c0);
        let (lo, hi) = if h0.code() <= h1.code() { (h0.clone(), h1.clone()) } else { (h1.clone(), h0.clone()) };
        let aut = if lo == hi {
            2 * lo.aut() * hi.aut()
        } else {
            lo.aut() * hi.aut()
        };
        let mut code = String::from("[");
        code.push_str(&lo.code());
        code.push_str(&hi.code());
        code.push(']');
        // Representative rooted at one centroid: hi hangs off lo's root.
        let mut rep = lo.clone();
        rep.children.push(hi);
        rep.sort();
        (code, FreeTree { rooted: rep, aut })
    }
}

fn find_centroids(adj: &[Vec<usize>]) -> Vec<usize> {
    let m = adj.len();
    if m == 1 {
        return vec![0];
    }
    // subtree sizes from an arbitrary root (0) by iterative postorder
    let mut parent = vec![usize::MAX; m];
    let mut order = Vec::with_capacity(m);
    let mut stack = vec![0usize];
    let mut seen = vec![false; m];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut size = vec![1usize; m];
    for &v in order.iter().rev() {
        if parent[v] != usize::MAX {
            size[parent[v]] += size[v];
        }
    }
    let mut best = m;
    let mut centroids = Vec::new();
    for v in 0..m {
        // Largest component after removing v.
        let mut heaviest = m - size[v];
        for &w in &adj[v] {
            if parent[w] == v {
                heaviest = heaviest.max(size[w]);
            }
        }
        if heaviest < best {
            best = heaviest;
            centroids = vec![v];
        } else if heaviest == best {
            centroids.push(v);
        }
    }
    centroids
}

fn reroot(adj: &[Vec<usize>], root: usize) -> RootedTree {
    reroot_avoiding(adj, root, usize::MAX)
}

fn reroot_avoiding(adj: &[Vec<usize>], root: usize, avoid: usize) -> RootedTree {
    fn build(adj: &[Vec<usize>], v: usize, parent: usize, avoid: usize) -> RootedTree {
        let mut t = RootedTree {
            children: adj[v]
                .iter()
                .filter(|&&w| w != parent && w != avoid)
                .map(|&w| build(adj, w, v, avoid))
                .collect(),
        };
        t.children.sort();
        t
    }
    build(adj, root, usize::MAX, avoid)
}

/// All free trees on `m` vertices with automorphism group orders.
pub fn free_trees(m: u32) -> Result<Vec<FreeTree>, HnError> {
    let rooted = rooted_trees(m)?;
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut out = Vec::new();
    for r in rooted {
        let (code, ft) = free_code(&r);
        if seen.insert(code) {
            out.push(ft);
        }
    }
    Ok(out)
}

/// The tree value Q_{T,P} by contraction: process vertices bottom-up; each
/// node carries the vector of its subtree value differentiated in the j-th
/// direction along its parent edge.
pub fn tree_value(p: &Poly, t: &RootedTree) -> Poly {
    contract(p, &t.children, p)
}

/// contract(q, children): sum over labels of children edges of
/// (D_labels q) * product of child subtree vectors at those labels.
fn contract(q: &Poly, children: &[RootedTree], p: &Poly) -> Poly {
    match children.split_first() {
        None => q.clone(),
        Some((first, rest)) => {
            let n = p.nvars();
            let mut acc = Poly::zero(q.ring(), n);
            for j in 0..n {
                let dq = q.diff(j);
                if dq.is_zero() {
                    continue;
                }
                let inner = contract(&dq, rest, p);
                if inner.is_zero() {
                    continue;
                }
                // Child vector component j: D_j P contracted with the
                // child's own children.
                let child_j = contract(&p.diff(j), &first.children, p);
                acc = acc.add(&inner.mul(&child_j));
            }
            acc
        }
    }
}

/// The m-th potential via the tree expansion:
/// Q_[m] = sum over free trees T with m vertices of Q_{T,P} / |Aut T|.
pub fn potential_by_trees(p: &Poly, m: u32) -> Result<Poly, HnError> {
    let mut acc = Poly::zero(p.ring(), p.nvars());
    for ft in free_trees(m)? {
        let v = tree_value(p, &ft.rooted);
        acc = acc.add(&v.scale_rational(1, ft.aut as i64));
    }
    Ok(acc)
}
