//! Slow reference implementations used to cross-check the optimized code
//! paths in tests. Everything here favors directness over speed.

use alloc::vec;
use alloc::vec::Vec;

use crate::poly::{Poly, PolyMatrix};

/// Derivative via substitution: expand p(z + h e_i) with a fresh variable h
/// and read off the h-linear part. Exercises multiplication instead of the
/// power rule.
pub fn expand_diff(p: &Poly, i: usize) -> Poly {
    let n = p.nvars();
    let ring = p.ring();
    // Work in n+1 variables, h at index n.
    let ext = |exps: &[u32]| -> Vec<u32> {
        let mut e = exps.to_vec();
        e.push(0);
        e
    };
    let zi_plus_h = Poly::variable(ring, n + 1, i).add(&Poly::variable(ring, n + 1, n));
    let mut shifted = Poly::zero(ring, n + 1);
    for (m, c) in p.terms() {
        let mut exps = ext(&m.exps);
        let ei = exps[i];
        exps[i] = 0;
        let base = Poly::from_terms(ring, n + 1, [(exps, c.clone())]).unwrap();
        shifted = shifted.add(&base.mul(&zi_plus_h.pow(ei)));
    }
    // Extract the coefficient of h^1 and drop the h variable.
    let mut out = Poly::zero(ring, n);
    for (m, c) in shifted.terms() {
        if m.exps[n] == 1 {
            let exps = m.exps[..n].to_vec();
            out = out.add(&Poly::from_terms(ring, n, [(exps, c.clone())]).unwrap());
        }
    }
    out
}

/// Nilpotency via Newton's identities: the characteristic polynomial of M
/// is t^k exactly when every elementary symmetric function of the
/// eigenvalues vanishes. Characteristic zero only.
pub fn matrix_power_is_nilpotent(m: &PolyMatrix) -> bool {
    let k = m.rows();
    assert_eq!(k, m.cols());
    let ring = m.ring();
    assert_eq!(ring.characteristic(), 0);
    let n = m.nvars();
    let traces: Vec<Poly> = (1..=k as u32)
        .map(|j| m.trace_power(j).unwrap())
        .collect();
    let mut elem: Vec<Poly> = vec![Poly::one(ring, n)]; // e_0 = 1
    for j in 1..=k {
        // j e_j = sum_{i=1}^{j} (-1)^{i-1} e_{j-i} t_i
        let mut acc = Poly::zero(ring, n);
        for i in 1..=j {
            let term = elem[j - i].mul(&traces[i - 1]);
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        elem.push(acc.scale_rational(1, j as i64));
    }
    elem[1..].iter().all(Poly::is_zero)
}

/// All labeled trees on `m` vertices as edge lists, via Prüfer sequences.
pub fn labeled_trees(m: usize) -> Vec<Vec<(usize, usize)>> {
    assert!(m >= 1);
    if m == 1 {
        return vec![vec![]];
    }
    if m == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut out = Vec::new();
    let len = m - 2;
    let mut seq = vec![0usize; len];
    loop {
        out.push(decode_pruefer(m, &seq));
        // Odometer over [0, m)^len.
        let mut pos = 0;
        loop {
            if pos == len {
                return out;
            }
            seq[pos] += 1;
            if seq[pos] < m {
                break;
            }
            seq[pos] = 0;
            pos += 1;
        }
    }
}

fn decode_pruefer(m: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; m];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(m - 1);
    for &s in seq {
        let leaf = (0..m).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..m).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// The tree value by its definition: sum over all edge labelings
/// l : E -> {1..n} of the product over vertices of the polynomial p
/// differentiated along the labels of its incident edges. Exponential in
/// the edge count; keep m and n tiny.
pub fn literal_tree_value(p: &Poly, m: usize, edges: &[(usize, usize)]) -> Poly {
    let n = p.nvars();
    let ring = p.ring();
    if edges.is_empty() {
        assert_eq!(m, 1);
        return p.clone();
    }
    let mut acc = Poly::zero(ring, n);
    let mut labels = vec![0usize; edges.len()];
    loop {
        let mut prod = Poly::one(ring, n);
        for v in 0..m {
            let mut factor = p.clone();
            for (e, &(a, b)) in edges.iter().enumerate() {
                if a == v || b == v {
                    factor = factor.diff(labels[e]);
                }
            }
            prod = prod.mul(&factor);
        }
        acc = acc.add(&prod);
        let mut pos = 0;
        loop {
            if pos == labels.len() {
                return acc;
            }
            labels[pos] += 1;
            if labels[pos] < n {
                break;
            }
            labels[pos] = 0;
            pos += 1;
        }
    }
}
