//! Sparse multivariate polynomials with the differential operators used
//! throughout the crate: partials, gradient, Laplacian, Hessian,
//! directional powers, and exact polynomial matrices.
//!
//! Terms are keyed by (total degree, exponent vector) so iteration is
//! degree-graded; truncated series arithmetic relies on that ordering.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::error::HnError;
use crate::scalar::{CoeffDisplay, Ring, Scalar};

/// Exponent vector with cached total degree; the cached degree sorts first
/// so `BTreeMap` iteration is graded.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub deg: u32,
    pub exps: Vec<u32>,
}

impl Mono {
    pub fn new(exps: Vec<u32>) -> Mono {
        let deg = exps.iter().sum();
        Mono { deg, exps }
    }

    pub fn unit(n: usize) -> Mono {
        Mono { deg: 0, exps: vec![0; n] }
    }
}

/// Sparse multivariate polynomial over one of the exact rings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    ring: Ring,
    terms: BTreeMap<Mono, Scalar>,
}

impl Poly {
    pub fn zero(ring: Ring, n: usize) -> Poly {
        Poly { n, ring, terms: BTreeMap::new() }
    }

    pub fn constant(ring: Ring, n: usize, c: Scalar) -> Poly {
        let mut p = Poly::zero(ring, n);
        p.add_term(Mono::unit(n), c);
        p
    }

    pub fn one(ring: Ring, n: usize) -> Poly {
        Poly::constant(ring, n, Scalar::one(ring))
    }

    /// The variable z_{i+1} (indices are 0-based in code).
    pub fn variable(ring: Ring, n: usize, i: usize) -> Poly {
        assert!(i < n, "variable index out of range");
        let mut exps = vec![0u32; n];
        exps[i] = 1;
        let mut p = Poly::zero(ring, n);
        p.add_term(Mono::new(exps), Scalar::one(ring));
        p
    }

    pub fn from_terms(
        ring: Ring,
        n: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>,
    ) -> Result<Poly, HnError> {
        let mut p = Poly::zero(ring, n);
        for (exps, c) in terms {
            if exps.len() != n {
                return Err(HnError::LengthMismatch);
            }
            let c = c.promote(ring)?;
            p.add_term(Mono::new(exps), c);
        }
        Ok(p)
    }

    /// sigma_2 = sum z_i^2.
    pub fn sigma2(ring: Ring, n: usize) -> Poly {
        let mut p = Poly::zero(ring, n);
        for i in 0..n {
            let mut exps = vec![0u32; n];
            exps[i] = 2;
            p.add_term(Mono::new(exps), Scalar::one(ring));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.deg)
    }

    /// Order o(P): minimal total degree of a nonzero term; `None` for 0.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.deg)
    }

    /// Degree when homogeneous (zero polynomial gives `None`; a nonzero
    /// inhomogeneous polynomial also gives `None`).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        if self.order() == Some(d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn coefficient(&self, exps: &[u32]) -> Scalar {
        let m = Mono::new(exps.to_vec());
        self.terms
            .get(&m)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.ring))
    }

    fn add_term(&mut self, m: Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.exps.len(), self.n);
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().try_add(&c).expect("uniform ring");
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Promote all coefficients into a compatible larger ring.
    pub fn promote(&self, ring: Ring) -> Result<Poly, HnError> {
        if ring == self.ring {
            return Ok(self.clone());
        }
        self.ring.unify(ring)?;
        let mut out = Poly::zero(ring, self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.promote(ring)?);
        }
        Ok(out)
    }

    fn unified(&self, other: &Poly) -> (Poly, Poly) {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let ring = self.ring.unify(other.ring).expect("ring mismatch");
        (
            self.promote(ring).expect("promotable"),
            other.promote(ring).expect("promotable"),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (mut a, b) = self.unified(other);
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        a
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(self.ring, self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn scalar_mul(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.ring, self.n);
        }
        let ring = self.ring.unify(s.ring()).expect("ring mismatch");
        let mut out = Poly::zero(ring, self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.try_mul(s).expect("uniform ring"));
        }
        out
    }

    pub fn scale_rational(&self, num: i64, den: i64) -> Poly {
        let s = Scalar::one(self.ring)
            .scale_rational(num, den)
            .expect("rational scaling");
        self.scalar_mul(&s)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.mul_trunc(other, None)
    }

    /// Product keeping only terms of total degree <= `max_deg`.
    pub fn mul_trunc(&self, other: &Poly, max_deg: Option<u32>) -> Poly {
        let (a, b) = self.unified(other);
        let mut out = Poly::zero(a.ring, a.n);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let deg = ma.deg + mb.deg;
                if let Some(cap) = max_deg {
                    if deg > cap {
                        break; // graded iteration: later terms only grow
                    }
                }
                let exps: Vec<u32> = ma
                    .exps
                    .iter()
                    .zip(mb.exps.iter())
                    .map(|(x, y)| x + y)
                    .collect();
                out.add_term(
                    Mono { deg, exps },
                    ca.try_mul(cb).expect("uniform ring"),
                );
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        self.pow_trunc(e, None)
    }

    pub fn pow_trunc(&self, e: u32, max_deg: Option<u32>) -> Poly {
        let mut acc = Poly::one(self.ring, self.n);
        for _ in 0..e {
            acc = acc.mul_trunc(self, max_deg);
        }
        acc
    }

    /// Drop all terms of total degree > `max_deg`.
    pub fn truncate_degree(&self, max_deg: u32) -> Poly {
        let mut out = Poly::zero(self.ring, self.n);
        for (m, c) in &self.terms {
            if m.deg > max_deg {
                break;
            }
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// The homogeneous part of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        let mut out = Poly::zero(self.ring, self.n);
        for (m, c) in &self.terms {
            if m.deg == d {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Partial derivative D_i.
    pub fn diff(&self, i: usize) -> Poly {
        assert!(i < self.n, "variable index out of range");
        let mut out = Poly::zero(self.ring, self.n);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[i] = e - 1;
            let factor = Scalar::from_int(self.ring, e as i64);
            out.add_term(
                Mono { deg: m.deg - 1, exps },
                c.try_mul(&factor).expect("uniform ring"),
            );
        }
        out
    }

    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.n).map(|i| self.diff(i)).collect()
    }

    pub fn laplacian(&self) -> Poly {
        let mut out = Poly::zero(self.ring, self.n);
        for i in 0..self.n {
            out = out.add(&self.diff(i).diff(i));
        }
        out
    }

    pub fn hessian(&self) -> PolyMatrix {
        let grad = self.gradient();
        let mut entries = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                entries.push(grad[i].diff(j));
            }
        }
        PolyMatrix { rows: self.n, cols: self.n, n: self.n, ring: self.ring, entries }
    }

    /// (sum beta_i D_i)^k applied to self.
    pub fn directional_power(&self, beta: &[Scalar], k: u32) -> Result<Poly, HnError> {
        if beta.len() != self.n {
            return Err(HnError::LengthMismatch);
        }
        let mut acc = self.clone();
        for _ in 0..k {
            let mut next = Poly::zero(acc.ring, acc.n);
            for i in 0..acc.n {
                next = next.add(&acc.diff(i).scalar_mul(&beta[i]));
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Applies sum_i (deg + offset) to each graded component, i.e. the
    /// Euler operator z.d/dz shifted by a constant.
    pub fn euler_shifted(&self, offset: i64) -> Poly {
        let mut out = Poly::zero(self.ring, self.n);
        for (m, c) in &self.terms {
            let factor = Scalar::from_int(self.ring, m.deg as i64 + offset);
            out.add_term(m.clone(), c.try_mul(&factor).expect("uniform ring"));
        }
        out
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar, HnError> {
        if point.len() != self.n {
            return Err(HnError::LengthMismatch);
        }
        let mut ring = self.ring;
        for s in point {
            ring = ring.unify(s.ring())?;
        }
        // Power cache per variable.
        let max_exp: Vec<u32> = (0..self.n)
            .map(|i| self.terms.keys().map(|m| m.exps[i]).max().unwrap_or(0))
            .collect();
        let mut powers: Vec<Vec<Scalar>> = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut col = Vec::with_capacity(max_exp[i] as usize + 1);
            col.push(Scalar::one(ring));
            let base = point[i].promote(ring)?;
            for e in 1..=max_exp[i] {
                let prev = col[(e - 1) as usize].clone();
                col.push(prev.try_mul(&base)?);
            }
            powers.push(col);
        }
        let mut acc = Scalar::zero(ring);
        for (m, c) in &self.terms {
            let mut t = c.promote(ring)?;
            for i in 0..self.n {
                if m.exps[i] > 0 {
                    t = t.try_mul(&powers[i][m.exps[i] as usize])?;
                }
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }
}

/// Bilinear pairing of two polynomial vectors: sum_i u_i * v_i.
pub fn poly_bilinear(u: &[Poly], v: &[Poly]) -> Poly {
    assert_eq!(u.len(), v.len());
    assert!(!u.is_empty());
    let mut out = Poly::zero(u[0].ring(), u[0].nvars());
    for (a, b) in u.iter().zip(v.iter()) {
        out = out.add(&a.mul(b));
    }
    out
}

/// Rectangular matrix of polynomials over a common ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    n: usize,
    ring: Ring,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Result<PolyMatrix, HnError> {
        if entries.len() != rows * cols || entries.is_empty() {
            return Err(HnError::LengthMismatch);
        }
        let n = entries[0].nvars();
        let mut ring = entries[0].ring();
        for e in &entries {
            if e.nvars() != n {
                return Err(HnError::LengthMismatch);
            }
            ring = ring.unify(e.ring())?;
        }
        let entries = entries
            .into_iter()
            .map(|e| e.promote(ring).expect("unifiable"))
            .collect();
        Ok(PolyMatrix { rows, cols, n, ring, entries })
    }

    pub fn zero(ring: Ring, n: usize, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            rows,
            cols,
            n,
            ring,
            entries: vec![Poly::zero(ring, n); rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize, size: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zero(ring, n, size, size);
        for i in 0..size {
            *m.at_mut(i, i) = Poly::one(ring, n);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Poly {
        &mut self.entries[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.add(b))
            .collect();
        PolyMatrix::new(self.rows, self.cols, entries).expect("shape checked")
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let ring = self.ring.unify(other.ring).expect("ring mismatch");
        let mut out = PolyMatrix::zero(ring, self.n, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(ring, self.n);
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(other.at(k, j)));
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Result<PolyMatrix, HnError> {
        if self.rows != self.cols {
            return Err(HnError::NotSquare);
        }
        let mut acc = PolyMatrix::identity(self.ring, self.n, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.ring, self.n, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn trace(&self) -> Result<Poly, HnError> {
        if self.rows != self.cols {
            return Err(HnError::NotSquare);
        }
        let mut acc = Poly::zero(self.ring, self.n);
        for i in 0..self.rows {
            acc = acc.add(self.at(i, i));
        }
        Ok(acc)
    }

    /// Tr M^m; computes u_m(P) when M = Hes P.
    pub fn trace_power(&self, m: u32) -> Result<Poly, HnError> {
        self.pow(m)?.trace()
    }

    /// Nilpotency over a field: M nilpotent iff M^size = 0.
    pub fn is_nilpotent(&self) -> Result<bool, HnError> {
        if self.rows != self.cols {
            return Err(HnError::NotSquare);
        }
        Ok(self.pow(self.rows as u32)?.is_zero())
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Vec<Vec<Scalar>>, HnError> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(self.at(i, j).evaluate(point)?);
            }
            out.push(row);
        }
        Ok(out)
    }
}

/// Nilpotency of a square scalar matrix via the size-th power.
pub fn scalar_matrix_is_nilpotent(m: &[Vec<Scalar>]) -> Result<bool, HnError> {
    let k = m.len();
    if m.iter().any(|r| r.len() != k) {
        return Err(HnError::NotSquare);
    }
    if k == 0 {
        return Ok(true);
    }
    let ring = m[0][0].ring();
    let mut acc: Vec<Vec<Scalar>> = m.to_vec();
    for _ in 1..k {
        let mut next = vec![vec![Scalar::zero(ring); k]; k];
        for i in 0..k {
            for j in 0..k {
                let mut s = Scalar::zero(ring);
                for l in 0..k {
                    s = s.try_add(&acc[i][l].try_mul(&m[l][j])?)?;
                }
                next[i][j] = s;
            }
        }
        acc = next;
    }
    Ok(acc.iter().all(|r| r.iter().all(Scalar::is_zero)))
}

fn mono_string(m: &Mono) -> String {
    let mut s = String::new();
    for (i, &e) in m.exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        let _ = write!(s, "z{}", i + 1);
        if e > 1 {
            let _ = write!(s, "^{}", e);
        }
    }
    s
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let modular = self.ring.is_modular();
        if modular {
            write!(f, "(")?;
        }
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            let mut first = true;
            // Highest degree first.
            for (m, c) in self.terms.iter().rev() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                let mono = mono_string(m);
                let mut cs = String::new();
                let _ = write!(cs, "{}", CoeffDisplay(c));
                if mono.is_empty() {
                    write!(f, "{}", cs)?;
                } else if c.is_one() {
                    write!(f, "{}", mono)?;
                } else if cs.as_str() == "-1" {
                    write!(f, "-{}", mono)?;
                } else if cs[1..].contains('+') || cs[1..].contains('-') {
                    write!(f, "({})*{}", cs, mono)?;
                } else {
                    write!(f, "{}*{}", cs, mono)?;
                }
            }
        }
        if modular {
            write!(f, ") mod {}", self.ring.characteristic())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi, vec_from_ints};

    fn z(i: usize) -> Poly {
        Poly::variable(Ring::Qi, 3, i)
    }

    /// (z1 + i z2)^d in two variables, the canonical isotropic power.
    pub(crate) fn iso_power(d: u32) -> Poly {
        let z1 = Poly::variable(Ring::Qi, 2, 0);
        let z2 = Poly::variable(Ring::Qi, 2, 1);
        let i = Scalar::i(Ring::Qi).unwrap();
        z1.add(&z2.scalar_mul(&i)).pow(d)
    }

    #[test]
    fn diff_examples() {
        // D_1(z1^2 z2) = 2 z1 z2
        let p = z(0).pow(2).mul(&z(1));
        let expect = z(0).mul(&z(1)).scale_rational(2, 1);
        assert_eq!(p.diff(0), expect);
        // D_2(z1^3) = 0
        assert!(z(0).pow(3).diff(1).is_zero());
        // D_1((z1+i z2)^3) = 3 (z1+i z2)^2, against the expansion oracle.
        let h = iso_power(3);
        let d = h.diff(0);
        let expect = iso_power(2).scale_rational(3, 1);
        assert_eq!(d, expect);
        assert_eq!(d, crate::oracle::expand_diff(&h, 0));
    }

    #[test]
    fn gradient_and_laplacian() {
        let n = 3;
        let sigma2 = Poly::sigma2(Ring::Q, n);
        let half = sigma2.scale_rational(1, 2);
        let grad = half.gradient();
        for (i, g) in grad.iter().enumerate() {
            assert_eq!(*g, Poly::variable(Ring::Q, n, i));
        }
        assert!(Poly::one(Ring::Q, n).gradient().iter().all(Poly::is_zero));
        // Laplacian(sigma2) = 2n
        assert_eq!(
            sigma2.laplacian(),
            Poly::constant(Ring::Q, n, q(2 * n as i64, 1))
        );
        // Laplacian(z1 z2) = 0
        let p = Poly::variable(Ring::Q, 2, 0).mul(&Poly::variable(Ring::Q, 2, 1));
        assert!(p.laplacian().is_zero());
        // Laplacian(z1^2 z2^2) = 2 z2^2 + 2 z1^2
        let p = Poly::variable(Ring::Q, 2, 0)
            .pow(2)
            .mul(&Poly::variable(Ring::Q, 2, 1).pow(2));
        let expect = Poly::variable(Ring::Q, 2, 0)
            .pow(2)
            .add(&Poly::variable(Ring::Q, 2, 1).pow(2))
            .scale_rational(2, 1);
        assert_eq!(p.laplacian(), expect);
        // Gradient of (z1+i z2)^2 termwise vs oracle.
        let h = iso_power(2);
        for i in 0..2 {
            assert_eq!(h.diff(i), crate::oracle::expand_diff(&h, i));
        }
    }

    #[test]
    fn hessian_examples() {
        // Hes(z1 z2) = [[0,1],[1,0]]
        let p = Poly::variable(Ring::Q, 2, 0).mul(&Poly::variable(Ring::Q, 2, 1));
        let h = p.hessian();
        assert!(h.at(0, 0).is_zero());
        assert_eq!(*h.at(0, 1), Poly::one(Ring::Q, 2));
        assert_eq!(*h.at(1, 0), Poly::one(Ring::Q, 2));
        // Hes((z1+i z2)^2) = [[2, 2i],[2i, -2]]
        let h = iso_power(2).hessian();
        let two = Poly::constant(Ring::Qi, 2, qi(2, 1, 0, 1));
        let two_i = Poly::constant(Ring::Qi, 2, qi(0, 1, 2, 1));
        assert_eq!(*h.at(0, 0), two);
        assert_eq!(*h.at(0, 1), two_i);
        assert_eq!(*h.at(1, 0), two_i);
        assert_eq!(*h.at(1, 1), two.neg());
        // Hes(sigma2/2) = I
        let h = Poly::sigma2(Ring::Q, 3).scale_rational(1, 2).hessian();
        assert_eq!(h, PolyMatrix::identity(Ring::Q, 3, 3));
    }

    #[test]
    fn directional_power_examples() {
        // beta=(1,0), k=1, z1^2 -> 2 z1
        let p = Poly::variable(Ring::Q, 2, 0).pow(2);
        let beta = vec_from_ints(Ring::Q, &[1, 0]);
        assert_eq!(
            p.directional_power(&beta, 1).unwrap(),
            Poly::variable(Ring::Q, 2, 0).scale_rational(2, 1)
        );
        // beta_D^N P = N! P(beta) for homogeneous P of degree N.
        let p = iso_power(3); // N = 3
        let one = Scalar::one(Ring::Qi);
        let two = Scalar::from_int(Ring::Qi, 2);
        let beta = [one, two];
        let result = p.directional_power(&beta, 3).unwrap();
        let expected_value = p.evaluate(&beta).unwrap().try_mul(&Scalar::from_int(Ring::Qi, 6)).unwrap();
        assert_eq!(result, Poly::constant(Ring::Qi, 2, expected_value));
        // beta=(1,0), k=1 on (z1+i z2)^3 -> 3 (z1+i z2)^2
        let beta = vec_from_ints(Ring::Qi, &[1, 0]);
        assert_eq!(
            iso_power(3).directional_power(&beta, 1).unwrap(),
            iso_power(2).scale_rational(3, 1)
        );
        assert_eq!(
            p.directional_power(&vec_from_ints(Ring::Qi, &[1]), 1),
            Err(HnError::LengthMismatch)
        );
    }

    #[test]
    fn nilpotency_examples() {
        // Hes((z1+i z2)^2) is nilpotent.
        assert!(iso_power(2).hessian().is_nilpotent().unwrap());
        // [[0,1],[1,0]] is not.
        let p = Poly::variable(Ring::Q, 2, 0).mul(&Poly::variable(Ring::Q, 2, 1));
        assert!(!p.hessian().is_nilpotent().unwrap());
        // Zero matrix is.
        assert!(PolyMatrix::zero(Ring::Q, 2, 2, 2).is_nilpotent().unwrap());
        let bad = PolyMatrix::zero(Ring::Q, 2, 2, 3);
        assert_eq!(bad.is_nilpotent(), Err(HnError::NotSquare));
    }

    #[test]
    fn trace_power_examples() {
        // Tr Hes(z1 z2)^2 = 2
        let p = Poly::variable(Ring::Q, 2, 0).mul(&Poly::variable(Ring::Q, 2, 1));
        assert_eq!(
            p.hessian().trace_power(2).unwrap(),
            Poly::constant(Ring::Q, 2, q(2, 1))
        );
        // Hes((z1+i z2)^2): all trace powers vanish.
        let h = iso_power(2).hessian();
        for m in 1..=4 {
            assert!(h.trace_power(m).unwrap().is_zero());
        }
        // identity 2x2, m=3 -> 2
        let id = PolyMatrix::identity(Ring::Q, 2, 2);
        assert_eq!(
            id.trace_power(3).unwrap(),
            Poly::constant(Ring::Q, 2, q(2, 1))
        );
    }

    #[test]
    fn evaluate_examples() {
        // sigma2 at (1, i) = 0
        let p = Poly::sigma2(Ring::Qi, 2);
        let i = Scalar::i(Ring::Qi).unwrap();
        let one = Scalar::one(Ring::Qi);
        assert!(p.evaluate(&[one.clone(), i.clone()]).unwrap().is_zero());
        // (z1+i z2)^3 at (1, 0) = 1
        let zero = Scalar::zero(Ring::Qi);
        assert!(iso_power(3).evaluate(&[one.clone(), zero.clone()]).unwrap().is_one());
        // Hes((z1+i z2)^3) at (1,0) = 6 [[1, i],[i, -1]]
        let h = iso_power(3).hessian().evaluate(&[one, zero]).unwrap();
        assert_eq!(h[0][0], qi(6, 1, 0, 1));
        assert_eq!(h[0][1], qi(0, 1, 6, 1));
        assert_eq!(h[1][0], qi(0, 1, 6, 1));
        assert_eq!(h[1][1], qi(-6, 1, 0, 1));
    }

    #[test]
    fn operator_properties_random() {
        use rand::rngs::SmallRng;
        use rand::{Rng, SeedableRng};
        let mut rng = SmallRng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(1..4usize);
            let p = crate::corpus::random_poly(&mut rng, Ring::Qi, n, 4, 2);
            let qq = crate::corpus::random_poly(&mut rng, Ring::Qi, n, 3, 0);
            // D_i D_j = D_j D_i
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(p.diff(i).diff(j), p.diff(j).diff(i));
                }
            }
            // Hes P symmetric
            let h = p.hessian();
            assert_eq!(h, h.transpose());
            // Tr Hes P = Laplacian P
            assert_eq!(h.trace().unwrap(), p.laplacian());
            // Leibniz
            for i in 0..n {
                let lhs = p.mul(&qq).diff(i);
                let rhs = p.diff(i).mul(&qq).add(&p.mul(&qq.diff(i)));
                assert_eq!(lhs, rhs);
            }
            // Euler on homogeneous parts
            if let Some(d) = p.degree() {
                let hpart = p.homogeneous_part(d);
                let mut euler = Poly::zero(hpart.ring(), n);
                for i in 0..n {
                    euler = euler.add(&Poly::variable(hpart.ring(), n, i).mul(&hpart.diff(i)));
                }
                assert_eq!(euler, hpart.scale_rational(d as i64, 1));
            }
        }
    }

    #[test]
    fn nilpotency_iff_trace_powers_vanish() {
        use rand::rngs::SmallRng;
        use rand::SeedableRng;
        let mut rng = SmallRng::seed_from_u64(11);
        for _ in 0..30 {
            let p = crate::corpus::random_poly(&mut rng, Ring::Qi, 3, 3, 0);
            let m = p.hessian();
            let nil = m.is_nilpotent().unwrap();
            let traces_vanish =
                (1..=3).all(|k| m.trace_power(k).unwrap().is_zero());
            assert_eq!(nil, traces_vanish);
            assert_eq!(nil, crate::oracle::matrix_power_is_nilpotent(&m));
        }
    }

    #[test]
    fn display_and_degree() {
        let p = iso_power(2);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.homogeneous_degree(), Some(2));
        assert_eq!(Poly::zero(Ring::Q, 2).degree(), None);
        let txt = alloc::format!("{}", p);
        assert!(!txt.is_empty());
        let fp_poly = Poly::variable(Ring::Fp(5), 2, 0).pow(2);
        assert_eq!(alloc::format!("{}", fp_poly), "(z1^2) mod 5");
    }
}
