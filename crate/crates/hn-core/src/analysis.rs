//! Criteria for Hessian nilpotency and self-inversion, and the degree-2
//! slices obtained by differentiating a homogeneous polynomial d-2 times
//! along a fixed direction.

use alloc::vec::Vec;

use crate::error::HnError;
use crate::poly::{poly_bilinear, Poly, PolyMatrix};
use crate::scalar::Scalar;

/// <grad P, grad Q>.
pub fn gradient_pairing(p: &Poly, q: &Poly) -> Poly {
    poly_bilinear(&p.gradient(), &q.gradient())
}

/// Direct criterion: (Hes P)^n = 0 as a polynomial matrix.
pub fn is_hn_direct(p: &Poly) -> Result<bool, HnError> {
    p.hessian().is_nilpotent()
}

/// Trace criterion: Tr (Hes P)^m = 0 for m = 1..n. Over a field of
/// characteristic zero this is equivalent to nilpotency.
pub fn is_hn_traces(p: &Poly) -> Result<bool, HnError> {
    let h = p.hessian();
    let n = p.nvars() as u32;
    for m in 1..=n {
        if !h.trace_power(m)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Power criterion: for P with vanishing terms of degree < 2,
/// Hes P is nilpotent iff Laplacian^m P^m = 0 for m = 1..n.
pub fn is_hn_powers(p: &Poly) -> Result<bool, HnError> {
    match p.order() {
        None => return Ok(true), // zero polynomial
        Some(o) if o < 2 => return Err(HnError::OrderTooSmall),
        _ => {}
    }
    let n = p.nvars() as u32;
    for m in 1..=n {
        let mut term = p.pow(m);
        for _ in 0..m {
            term = term.laplacian();
        }
        if !term.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-exponent record of the vanishing condition
/// Laplacian^m P^{m+1} = 0 for m = 1..=m_max.
pub fn vanishing_scan(p: &Poly, m_max: u32) -> Vec<(u32, bool)> {
    (1..=m_max)
        .map(|m| {
            let mut term = p.pow(m + 1);
            for _ in 0..m {
                term = term.laplacian();
            }
            (m, term.is_zero())
        })
        .collect()
}

/// All three Hessian-nilpotency criteria side by side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnReport {
    pub direct: bool,
    pub traces: bool,
    /// None when the power criterion does not apply (order < 2).
    pub powers: Option<bool>,
    pub harmonic: bool,
}

impl HnReport {
    pub fn is_hn(&self) -> bool {
        self.direct
    }

    pub fn consistent(&self) -> bool {
        self.direct == self.traces && self.powers.map_or(true, |p| p == self.direct)
    }
}

pub fn hn_report(p: &Poly) -> Result<HnReport, HnError> {
    let direct = is_hn_direct(p)?;
    let traces = if p.ring().characteristic() == 0 {
        is_hn_traces(p)?
    } else {
        direct
    };
    let powers = match is_hn_powers(p) {
        Ok(b) => Some(b),
        Err(HnError::OrderTooSmall) => None,
        Err(e) => return Err(e),
    };
    Ok(HnReport {
        direct,
        traces,
        powers,
        harmonic: p.laplacian().is_zero(),
    })
}

/// Self-inversion criterion: with vanishing terms of degree < 2 and
/// nilpotent (Hes P)(0), the deformation z - t grad P is its own inverse
/// up to the sign convention exactly when <grad P, grad P> = 0.
pub fn is_self_inverting(p: &Poly) -> Result<bool, HnError> {
    if let Some(o) = p.order() {
        if o < 2 {
            return Err(HnError::OrderTooSmall);
        }
    }
    let n = p.nvars();
    let origin: Vec<Scalar> = alloc::vec![Scalar::zero(p.ring()); n];
    let h0 = p.hessian().evaluate(&origin)?;
    if !crate::poly::scalar_matrix_is_nilpotent(&h0)? {
        return Err(HnError::HessianAtOriginNotNilpotent);
    }
    Ok(gradient_pairing(p, p).is_zero())
}

/// Definition-level check: Q_t = P, i.e. Q_[m] = 0 for 2 <= m <= m_max.
pub fn self_inverting_by_potentials(p: &Poly, m_max: u32) -> bool {
    let pots = crate::inversion::potentials_recursive(p, m_max);
    pots.iter().skip(1).all(Poly::is_zero)
}

/// For harmonic P the pairing criterion collapses further:
/// Laplacian P^2 = 2 P Laplacian P + 2 <grad P, grad P>, so a harmonic P
/// is self-inverting iff Laplacian P^2 = 0.
pub fn harmonic_self_inverting(p: &Poly) -> Result<bool, HnError> {
    if !p.laplacian().is_zero() {
        return Err(HnError::NotHarmonic);
    }
    Ok(p.pow(2).laplacian().is_zero())
}

/// <grad P^m, grad P^m> = m^2 P^{2m-2} <grad P, grad P>; hence powers of a
/// self-inverting polynomial stay self-inverting.
pub fn power_pairing_identity(p: &Poly, m: u32) -> bool {
    assert!(m >= 1);
    let pm = p.pow(m);
    let lhs = gradient_pairing(&pm, &pm);
    let rhs = p
        .pow(2 * m - 2)
        .mul(&gradient_pairing(p, p))
        .scale_rational((m as i64) * (m as i64), 1);
    lhs == rhs
}

/// The degree-2 slice of a homogeneous P of degree d >= 2 along beta:
/// P_beta = (beta . D)^{d-2} P. Its Hessian equals (d-2)! (Hes P)(beta).
pub fn direction_slice(p: &Poly, beta: &[Scalar]) -> Result<Poly, HnError> {
    let d = p.homogeneous_degree().ok_or(HnError::NotHomogeneous)?;
    if d < 2 {
        return Err(HnError::DegreeTooSmall);
    }
    p.directional_power(beta, d - 2)
}

/// Checks Hes (P_beta) = (d-2)! (Hes P)(beta) entrywise.
pub fn slice_hessian_check(p: &Poly, beta: &[Scalar]) -> Result<bool, HnError> {
    let d = p.homogeneous_degree().ok_or(HnError::NotHomogeneous)?;
    if d < 2 {
        return Err(HnError::DegreeTooSmall);
    }
    let slice = direction_slice(p, beta)?;
    let hs = slice.hessian();
    let hp = p.hessian().evaluate(beta)?;
    let mut fact = Scalar::one(p.ring());
    for k in 2..=(d - 2) as i64 {
        fact = fact.try_mul(&Scalar::from_int(p.ring(), k))?;
    }
    let n = p.nvars();
    for i in 0..n {
        for j in 0..n {
            let expect = Poly::constant(p.ring(), n, hp[i][j].try_mul(&fact)?);
            if *hs.at(i, j) != expect {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Hessian-nilpotency of every degree-2 slice, decided exactly: for
/// homogeneous P, Hes P is nilpotent iff (Hes P)(beta) is nilpotent for
/// all beta; a single nonzero trace power certifies failure.
pub fn slice_nilpotent_at(p: &Poly, beta: &[Scalar]) -> Result<bool, HnError> {
    let hp = p.hessian().evaluate(beta)?;
    crate::poly::scalar_matrix_is_nilpotent(&hp)
}

/// Identity used throughout: (Hes P) grad P = (1/2) grad <grad P, grad P>.
pub fn hessian_gradient_identity(p: &Poly) -> bool {
    let h = p.hessian();
    let grad = p.gradient();
    let pairing = poly_bilinear(&grad, &grad);
    let n = p.nvars();
    for i in 0..n {
        let mut lhs = Poly::zero(p.ring(), n);
        for j in 0..n {
            lhs = lhs.add(&h.at(i, j).mul(&grad[j]));
        }
        if lhs != pairing.diff(i).scale_rational(1, 2) {
            return false;
        }
    }
    true
}

/// Tr Hes^m as polynomials, m = 1..=m_max.
pub fn trace_powers(p: &Poly, m_max: u32) -> Result<Vec<Poly>, HnError> {
    let h = p.hessian();
    (1..=m_max).map(|m| h.trace_power(m)).collect()
}

/// Convenience wrapper exposing PolyMatrix for callers that want the raw
/// Hessian alongside the report.
pub fn hessian_of(p: &Poly) -> PolyMatrix {
    p.hessian()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Ring, Scalar};
    use rand::rngs::SmallRng;
    use rand::SeedableRng;

    fn iso3() -> Poly {
        // (z1 + i z2)^3
        let z1 = Poly::variable(Ring::Qi, 2, 0);
        let z2 = Poly::variable(Ring::Qi, 2, 1);
        let i = Scalar::i(Ring::Qi).unwrap();
        z1.add(&z2.scalar_mul(&i)).pow(3)
    }

    #[test]
    fn criteria_agree_on_examples() {
        let p = iso3();
        let r = hn_report(&p).unwrap();
        assert!(r.is_hn());
        assert!(r.consistent());
        assert!(r.harmonic);
        // z1^2 z2 is not Hessian-nilpotent.
        let q = Poly::variable(Ring::Q, 2, 0)
            .pow(2)
            .mul(&Poly::variable(Ring::Q, 2, 1));
        let r = hn_report(&q).unwrap();
        assert!(!r.is_hn());
        assert!(r.consistent());
    }

    #[test]
    fn criteria_agree_on_random_inputs() {
        let mut rng = SmallRng::seed_from_u64(53);
        for _ in 0..25 {
            let p = crate::corpus::random_poly(&mut rng, Ring::Qi, 3, 3, 2);
            let r = hn_report(&p).unwrap();
            assert!(r.consistent(), "inconsistent report for {}", p);
        }
    }

    #[test]
    fn power_criterion_needs_order_two() {
        let p = Poly::variable(Ring::Q, 2, 0);
        assert_eq!(is_hn_powers(&p), Err(HnError::OrderTooSmall));
        // report survives by leaving the power criterion out
        let r = hn_report(&p).unwrap();
        assert_eq!(r.powers, None);
    }

    #[test]
    fn self_inversion_examples() {
        let p = iso3();
        assert!(is_self_inverting(&p).unwrap());
        assert!(self_inverting_by_potentials(&p, 5));
        assert!(harmonic_self_inverting(&p).unwrap());
        // z1 z2 is harmonic but not self-inverting.
        let q = Poly::variable(Ring::Qi, 2, 0).mul(&Poly::variable(Ring::Qi, 2, 1));
        assert!(!is_self_inverting(&q).is_ok() || !is_self_inverting(&q).unwrap());
        // (z1 + i z2)^d vs (z1 - i z2)^d: sum is harmonic but the pairing
        // does not vanish.
        let z1 = Poly::variable(Ring::Qi, 2, 0);
        let z2 = Poly::variable(Ring::Qi, 2, 1);
        let i = Scalar::i(Ring::Qi).unwrap();
        let plus = z1.add(&z2.scalar_mul(&i)).pow(3);
        let minus = z1.sub(&z2.scalar_mul(&i)).pow(3);
        let s = plus.add(&minus);
        assert!(s.laplacian().is_zero());
        assert!(!harmonic_self_inverting(&s).unwrap());
        assert!(!self_inverting_by_potentials(&s, 3));
    }

    #[test]
    fn identities_hold_on_random_inputs() {
        let mut rng = SmallRng::seed_from_u64(59);
        for _ in 0..15 {
            let p = crate::corpus::random_poly(&mut rng, Ring::Qi, 3, 3, 0);
            assert!(hessian_gradient_identity(&p));
            for m in 1..=3 {
                assert!(power_pairing_identity(&p, m));
            }
        }
    }

    #[test]
    fn slice_examples() {
        let p = iso3();
        let one = Scalar::one(Ring::Qi);
        let zero = Scalar::zero(Ring::Qi);
        let beta = [one, zero];
        // (beta . D)^{d-2} (z1 + i z2)^3 with beta = e1: 3 (z1 + i z2)^2.
        let slice = direction_slice(&p, &beta).unwrap();
        let z1 = Poly::variable(Ring::Qi, 2, 0);
        let z2 = Poly::variable(Ring::Qi, 2, 1);
        let i = Scalar::i(Ring::Qi).unwrap();
        assert_eq!(
            slice,
            z1.add(&z2.scalar_mul(&i)).pow(2).scale_rational(3, 1)
        );
        assert!(slice_hessian_check(&p, &beta).unwrap());
        assert!(slice_nilpotent_at(&p, &beta).unwrap());
        // Non-homogeneous input is rejected.
        let bad = p.add(&Poly::one(Ring::Qi, 2));
        assert_eq!(direction_slice(&bad, &beta), Err(HnError::NotHomogeneous));
    }

    #[test]
    fn slice_checks_on_random_homogeneous() {
        let mut rng = SmallRng::seed_from_u64(61);
        for _ in 0..10 {
            let p = crate::corpus::random_homogeneous(&mut rng, Ring::Qi, 3, 4);
            let beta = [
                Scalar::from_int(Ring::Qi, 1),
                Scalar::from_int(Ring::Qi, -2),
                Scalar::from_int(Ring::Qi, 3),
            ];
            assert!(slice_hessian_check(&p, &beta).unwrap());
            // Slice nilpotency must match the direct criterion when the
            // direct criterion holds (specialization of a nilpotent matrix).
            if is_hn_direct(&p).unwrap() {
                assert!(slice_nilpotent_at(&p, &beta).unwrap());
            }
        }
    }

    #[test]
    fn vanishing_scan_examples() {
        let p = iso3();
        for (m, ok) in vanishing_scan(&p, 4) {
            assert!(ok, "scan failed at m={}", m);
        }
        let q = Poly::variable(Ring::Q, 2, 0)
            .pow(2)
            .mul(&Poly::variable(Ring::Q, 2, 1));
        let scan = vanishing_scan(&q, 3);
        assert!(scan.iter().any(|&(_, ok)| !ok));
    }
}
