//! Vanishing behavior of Laplacian^m P^{m+1} over prime characteristic:
//! over a field of characteristic p the iterates vanish unconditionally
//! from m = d(p-1)/2 on for any degree-d polynomial, and from m = p-1 on
//! for Hessian-nilpotent input. Both rest on differential operators
//! commuting with multiplication by p-th powers.

use alloc::vec::Vec;

use crate::error::HnError;
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Per-exponent vanishing record over a modular ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPReport {
    pub p: u64,
    pub degree: u32,
    /// Exponent from which vanishing is guaranteed.
    pub threshold: u32,
    /// (m, Laplacian^m P^{m+1} == 0) for m = 1..=threshold+margin.
    pub scan: Vec<(u32, bool)>,
    /// All entries at or beyond the threshold vanish.
    pub holds: bool,
}

fn laplacian_iterate(p: &Poly, m: u32) -> Poly {
    let mut t = p.pow(m + 1);
    for _ in 0..m {
        t = t.laplacian();
    }
    t
}

fn scan_from_threshold(p: &Poly, threshold: u32, margin: u32) -> (Vec<(u32, bool)>, bool) {
    let mut scan = Vec::new();
    let mut holds = true;
    for m in 1..=threshold + margin {
        let ok = laplacian_iterate(p, m).is_zero();
        if m >= threshold && !ok {
            holds = false;
        }
        scan.push((m, ok));
    }
    (scan, holds)
}

/// Unconditional vanishing for polynomials over characteristic p:
/// writing m+1 = qp + r with 0 <= r < p, Laplacian^m P^{m+1} equals
/// P^{qp} Laplacian^m P^r, which is zero as soon as 2m strictly exceeds
/// deg P^r <= d(p-1). The often-quoted threshold m >= d(p-1)/2 misses
/// the equality boundary: for P = z1 over F_3, m = 1 has
/// Laplacian(z1^2) = 2 != 0. So when d(p-1) is even and the boundary
/// exponent lands on r = p-1, the guarantee starts one step later.
/// Checks the guaranteed range plus `margin` extra exponents and
/// records the full scan.
pub fn vc_charp(p: &Poly, margin: u32) -> Result<CharPReport, HnError> {
    let ch = p.ring().characteristic();
    if ch == 0 {
        return Err(HnError::UnsupportedRing);
    }
    let d = p.degree().ok_or(HnError::ZeroPolynomial)?;
    if d < 1 {
        return Err(HnError::DegreeTooSmall);
    }
    let pp = ch as u32;
    let base = (d * (pp - 1)).div_ceil(2);
    let boundary_tight = d * (pp - 1) % 2 == 0 && (base + 1) % pp == pp - 1;
    let threshold = if boundary_tight { base + 1 } else { base };
    let (scan, holds) = scan_from_threshold(p, threshold, margin);
    Ok(CharPReport { p: ch, degree: d, threshold, scan, holds })
}

/// Sharper bound for Hessian-nilpotent input over characteristic p:
/// vanishing from m = p-1 on. Refuses non-nilpotent Hessians.
pub fn vc_charp_hn(p: &Poly, margin: u32) -> Result<CharPReport, HnError> {
    let ch = p.ring().characteristic();
    if ch == 0 {
        return Err(HnError::UnsupportedRing);
    }
    if !p.hessian().is_nilpotent()? {
        return Err(HnError::NotHessianNilpotent);
    }
    let d = p.degree().ok_or(HnError::ZeroPolynomial)?;
    let threshold = (ch as u32).saturating_sub(1).max(1);
    let (scan, holds) = scan_from_threshold(p, threshold, margin);
    Ok(CharPReport { p: ch, degree: d, threshold, scan, holds })
}

/// The mechanism behind both bounds: every constant-coefficient operator
/// commutes with multiplication by p-th powers. Checked here for the
/// Laplacian and all first partials: Lambda(u^p v) = u^p Lambda(v).
pub fn frobenius_commutation(u: &Poly, v: &Poly) -> Result<bool, HnError> {
    let ch = u.ring().characteristic();
    if ch == 0 {
        return Err(HnError::UnsupportedRing);
    }
    let up = u.pow(ch as u32);
    let lhs = up.mul(v).laplacian();
    let rhs = up.mul(&v.laplacian());
    if lhs != rhs {
        return Ok(false);
    }
    for i in 0..u.nvars() {
        if up.mul(v).diff(i) != up.mul(&v.diff(i)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A constant-coefficient differential operator sum_j c_j D^{e_j}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaOp {
    /// (exponents of D_1..D_n, coefficient)
    pub terms: Vec<(Vec<u32>, Scalar)>,
}

impl LambdaOp {
    /// Smallest total order among the terms; this is the guaranteed
    /// degree drop per application.
    pub fn min_order(&self) -> Option<u32> {
        self.terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, _)| e.iter().sum())
            .min()
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero(p.ring(), p.nvars());
        for (exps, c) in &self.terms {
            let mut t = p.clone();
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    t = t.diff(i);
                }
            }
            out = out.add(&t.scalar_mul(c));
        }
        out
    }
}

/// The general form: for a strictly degree-decreasing operator Lambda
/// over characteristic p, Lambda^m f^{m+1} = 0 for large m; the same
/// p-th-power argument gives the explicit bound delta m > d(p-1) with
/// delta the minimal order of Lambda, with the same boundary-equality
/// adjustment as the Laplacian case.
pub fn lambda_vc(op: &LambdaOp, f: &Poly, margin: u32) -> Result<CharPReport, HnError> {
    let ch = f.ring().characteristic();
    if ch == 0 {
        return Err(HnError::UnsupportedRing);
    }
    let delta = op.min_order().ok_or(HnError::ZeroPolynomial)?;
    if delta == 0 {
        return Err(HnError::NonDegreeDecreasing);
    }
    let d = f.degree().ok_or(HnError::ZeroPolynomial)?;
    let pp = ch as u32;
    let base = (d * (pp - 1)).div_ceil(delta);
    let boundary_tight = delta * base == d * (pp - 1) && (base + 1) % pp == pp - 1;
    let threshold = if boundary_tight { base + 1 } else { base };
    let mut scan = Vec::new();
    let mut holds = true;
    for m in 1..=threshold + margin {
        let mut t = f.pow(m + 1);
        for _ in 0..m {
            t = op.apply(&t);
        }
        let ok = t.is_zero();
        if m >= threshold && !ok {
            holds = false;
        }
        scan.push((m, ok));
    }
    Ok(CharPReport { p: ch, degree: d, threshold, scan, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{fp, Ring};
    use rand::rngs::SmallRng;
    use rand::SeedableRng;

    #[test]
    fn vanishing_holds_for_random_modular_polynomials() {
        let mut rng = SmallRng::seed_from_u64(67);
        for &prime in &[3u64, 5] {
            for _ in 0..6 {
                let p = crate::corpus::random_poly(&mut rng, Ring::Fp(prime), 2, 3, 1);
                if p.is_zero() {
                    continue;
                }
                let r = vc_charp(&p, 2).unwrap();
                assert!(r.holds, "p={} poly={}", prime, p);
            }
        }
    }

    #[test]
    fn sharper_bound_for_nilpotent_hessians() {
        // Over F_5, i = 2 since 2^2 = -1: (z1 + 2 z2)^3 is isotropic-power.
        let ring = Ring::Fp(5);
        let z1 = Poly::variable(ring, 2, 0);
        let z2 = Poly::variable(ring, 2, 1);
        let p = z1.add(&z2.scalar_mul(&fp(5, 2))).pow(3);
        assert!(p.hessian().is_nilpotent().unwrap());
        let r = vc_charp_hn(&p, 3).unwrap();
        assert_eq!(r.threshold, 4);
        assert!(r.holds);
        // Non-nilpotent input is refused.
        let q = z1.pow(2).mul(&z2);
        assert_eq!(vc_charp_hn(&q, 1), Err(HnError::NotHessianNilpotent));
    }

    #[test]
    fn boundary_equality_needs_the_extra_step() {
        // Over F_3, Laplacian(z1^2) = 2 != 0, so vanishing for P = z1
        // only starts at m = 2, one past d(p-1)/2.
        let p = Poly::variable(Ring::Fp(3), 1, 0);
        let r = vc_charp(&p, 2).unwrap();
        assert_eq!(r.threshold, 2);
        assert_eq!(r.scan[0], (1, false));
        assert!(r.holds);
    }

    #[test]
    fn characteristic_zero_is_rejected() {
        let p = Poly::sigma2(Ring::Q, 2);
        assert_eq!(vc_charp(&p, 1), Err(HnError::UnsupportedRing));
        assert_eq!(vc_charp_hn(&p, 1), Err(HnError::UnsupportedRing));
    }

    #[test]
    fn frobenius_commutation_spot_checks() {
        let mut rng = SmallRng::seed_from_u64(71);
        for &prime in &[3u64, 5, 7] {
            for _ in 0..5 {
                let u = crate::corpus::random_poly(&mut rng, Ring::Fp(prime), 2, 2, 0);
                let v = crate::corpus::random_poly(&mut rng, Ring::Fp(prime), 2, 3, 0);
                assert!(frobenius_commutation(&u, &v).unwrap());
            }
        }
    }

    #[test]
    fn lambda_operator_general_form() {
        // Lambda = D1^2 + D2 over F_3 (min order 1).
        let ring = Ring::Fp(3);
        let op = LambdaOp {
            terms: alloc::vec![
                (alloc::vec![2, 0], Scalar::one(ring)),
                (alloc::vec![0, 1], Scalar::one(ring)),
            ],
        };
        assert_eq!(op.min_order(), Some(1));
        let mut rng = SmallRng::seed_from_u64(73);
        for _ in 0..4 {
            let f = crate::corpus::random_poly(&mut rng, ring, 2, 2, 1);
            if f.is_zero() {
                continue;
            }
            let r = lambda_vc(&op, &f, 1).unwrap();
            assert!(r.holds, "f={}", f);
        }
        // Operator with a constant term does not decrease degree.
        let bad = LambdaOp {
            terms: alloc::vec![(alloc::vec![0, 0], Scalar::one(ring))],
        };
        assert_eq!(lambda_vc(&bad, &Poly::sigma2(ring, 2), 1), Err(HnError::NonDegreeDecreasing));
        // The Laplacian as a LambdaOp reproduces the basic scan.
        let lap = LambdaOp {
            terms: alloc::vec![
                (alloc::vec![2, 0], Scalar::one(ring)),
                (alloc::vec![0, 2], Scalar::one(ring)),
            ],
        };
        let f = Poly::variable(ring, 2, 0).pow(2).mul(&Poly::variable(ring, 2, 1));
        let via_lambda = lambda_vc(&lap, &f, 1).unwrap();
        let direct = vc_charp(&f, 1).unwrap();
        assert_eq!(via_lambda.threshold, direct.threshold);
        assert_eq!(via_lambda.scan, direct.scan);
    }
}
