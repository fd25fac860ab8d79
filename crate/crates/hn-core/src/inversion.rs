//! The potentials Q_[m] attached to the deformation F_t = z - t grad P,
//! whose inverse is G_t = z + t grad Q_t with
//! Q_t = sum_{m>=1} t^{m-1} Q_[m], computed along independent routes:
//! a quadratic recursion, direct map inversion, the tree expansion, and a
//! closed form available exactly when Hes P is nilpotent.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::HnError;
use crate::poly::{poly_bilinear, Poly};
use crate::scalar::Scalar;
use crate::series::{self, FormalMap};
use crate::tree;

fn big_factorial(k: u32) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 2..=k as u64 {
        acc *= BigInt::from(i);
    }
    acc
}

/// 1 / (2^a * b! * c!) as a scalar in the ring of `p`.
fn inverse_factorial_scale(p: &Poly, a: u32, b: u32, c: u32) -> Result<Scalar, HnError> {
    let denom = BigInt::from(2).pow(a) * big_factorial(b) * big_factorial(c);
    let r = BigRational::new(BigInt::from(1), denom);
    Scalar::from_rational(p.ring(), r)
}

/// Q_[1..=m_max] by the recursion
/// Q_[m] = (1 / (2(m-1))) sum_{k+l=m} <grad Q_[k], grad Q_[l]>.
pub fn potentials_recursive(p: &Poly, m_max: u32) -> Vec<Poly> {
    let mut q: Vec<Poly> = Vec::with_capacity(m_max as usize);
    let mut grads: Vec<Vec<Poly>> = Vec::with_capacity(m_max as usize);
    for m in 1..=m_max {
        let next = if m == 1 {
            p.clone()
        } else {
            let mut acc = Poly::zero(p.ring(), p.nvars());
            for k in 1..m {
                let l = m - k;
                acc = acc.add(&poly_bilinear(
                    &grads[k as usize - 1],
                    &grads[l as usize - 1],
                ));
            }
            acc.scale_rational(1, 2 * (m as i64 - 1))
        };
        grads.push(next.gradient());
        q.push(next);
    }
    q
}

/// Q_[1..=m_max] read off from the compositional inverse of z - t grad P.
/// `z_trunc` must cover deg Q_[m_max] (for homogeneous P of degree d this
/// is m_max (d-2) + 2).
pub fn potentials_by_inversion(
    p: &Poly,
    m_max: u32,
    z_trunc: u32,
) -> Result<Vec<Poly>, HnError> {
    let f = series::symmetric_map(p, m_max, z_trunc, true);
    let g = series::invert_map(&f)?;
    series::extract_potentials(&g)
}

/// Q_[1..=m_max] by the sum over unlabeled trees (capped at 9 vertices).
pub fn potentials_by_trees(p: &Poly, m_max: u32) -> Result<Vec<Poly>, HnError> {
    (1..=m_max).map(|m| tree::potential_by_trees(p, m)).collect()
}

/// Closed form valid for Hessian-nilpotent P:
/// Q_[m+1] = Laplacian^m P^{m+1} / (2^m m! (m+1)!). Refuses inputs whose
/// Hessian is not nilpotent.
pub fn potentials_closed_hn(p: &Poly, m_max: u32) -> Result<Vec<Poly>, HnError> {
    if !p.hessian().is_nilpotent()? {
        return Err(HnError::NotHessianNilpotent);
    }
    Ok(closed_form_terms(p, m_max)?)
}

/// The closed-form terms Laplacian^m P^{m+1} / (2^m m! (m+1)!) for
/// m = 0..m_max-1, computed without any nilpotency check.
pub fn closed_form_terms(p: &Poly, m_max: u32) -> Result<Vec<Poly>, HnError> {
    let mut out = Vec::with_capacity(m_max as usize);
    for m in 0..m_max {
        let mut term = p.pow(m + 1);
        for _ in 0..m {
            term = term.laplacian();
        }
        let s = inverse_factorial_scale(p, m, m, m + 1)?;
        out.push(term.scalar_mul(&s));
    }
    Ok(out)
}

/// The deformation and its inverse as formal maps, for display.
pub struct InversionPair {
    pub forward: FormalMap,
    pub inverse: FormalMap,
    pub potentials: Vec<Poly>,
}

pub fn inversion_pair(p: &Poly, m_max: u32, z_trunc: u32) -> Result<InversionPair, HnError> {
    let forward = series::symmetric_map(p, m_max, z_trunc, true);
    let inverse = series::invert_map(&forward)?;
    let potentials = series::extract_potentials(&inverse)?;
    Ok(InversionPair { forward, inverse, potentials })
}

/// t-coefficients of the three associated closed functions:
/// U_t = P(G_t), V_t with V_t(F_t) = sigma_2/2 - t P, W_t with
/// W_t(F_t) = sigma_2. All derived from the potentials:
/// u_m = (m+1) Q_[m+1], v_0 = sigma_2/2, v_m = (E-1) Q_[m],
/// w_m = 2 v_m + 2 u_{m-1}, with E the Euler operator.
pub struct SigmaFunctions {
    pub u: Vec<Poly>,
    pub v: Vec<Poly>,
    pub w: Vec<Poly>,
}

pub fn sigma_functions(p: &Poly, m_max: u32) -> SigmaFunctions {
    let pots = potentials_recursive(p, m_max + 1);
    sigma_from_potentials(p, &pots, m_max)
}

fn sigma_from_potentials(p: &Poly, pots: &[Poly], m_max: u32) -> SigmaFunctions {
    let ring = p.ring();
    let n = p.nvars();
    let mut u = Vec::with_capacity(m_max as usize + 1);
    let mut v = Vec::with_capacity(m_max as usize + 1);
    let mut w = Vec::with_capacity(m_max as usize + 1);
    for m in 0..=m_max {
        u.push(pots[m as usize].scale_rational(m as i64 + 1, 1));
        if m == 0 {
            v.push(Poly::sigma2(ring, n).scale_rational(1, 2));
        } else {
            v.push(pots[m as usize - 1].euler_shifted(-1));
        }
    }
    for m in 0..=m_max {
        if m == 0 {
            w.push(Poly::sigma2(ring, n));
        } else {
            let wm = v[m as usize]
                .scale_rational(2, 1)
                .add(&u[m as usize - 1].scale_rational(2, 1));
            w.push(wm);
        }
    }
    SigmaFunctions { u, v, w }
}

/// Closed forms of the same coefficients for Hessian-nilpotent P:
/// u_m = Laplacian^m P^{m+1} / (2^m (m!)^2),
/// v_m = (E - 1) Laplacian^{m-1} P^m / (2^{m-1} (m-1)! m!),
/// w_m = (E + m - 1) Laplacian^{m-1} P^m / (2^{m-2} (m-1)! m!).
pub fn sigma_functions_hn(p: &Poly, m_max: u32) -> Result<SigmaFunctions, HnError> {
    if !p.hessian().is_nilpotent()? {
        return Err(HnError::NotHessianNilpotent);
    }
    let ring = p.ring();
    let n = p.nvars();
    let mut u = Vec::with_capacity(m_max as usize + 1);
    let mut v = Vec::with_capacity(m_max as usize + 1);
    let mut w = Vec::with_capacity(m_max as usize + 1);
    for m in 0..=m_max {
        let mut um = p.pow(m + 1);
        for _ in 0..m {
            um = um.laplacian();
        }
        u.push(um.scalar_mul(&inverse_factorial_scale(p, m, m, m)?));
        if m == 0 {
            v.push(Poly::sigma2(ring, n).scale_rational(1, 2));
            w.push(Poly::sigma2(ring, n));
        } else {
            let mut core = p.pow(m);
            for _ in 0..m - 1 {
                core = core.laplacian();
            }
            let scale = inverse_factorial_scale(p, m - 1, m - 1, m)?;
            let core = core.scalar_mul(&scale);
            v.push(core.euler_shifted(-1));
            w.push(core.euler_shifted(m as i64 - 1).scale_rational(2, 1));
        }
    }
    Ok(SigmaFunctions { u, v, w })
}

/// Verifies the defining compositions up to the truncation orders:
/// U_t(F_t) = P, V_t(F_t) = sigma_2/2 - t P, W_t(F_t) = sigma_2, and the
/// linear relation W_t = 2 V_t + 2 t U_t.
pub fn sigma_composition_check(
    p: &Poly,
    sf: &SigmaFunctions,
    z_trunc: u32,
) -> Result<bool, HnError> {
    use crate::series::TSeries;
    let ring = p.ring();
    let n = p.nvars();
    let m_max = sf.u.len() as u32 - 1;
    let f = series::symmetric_map(p, m_max, z_trunc, true);
    let useries = TSeries::from_coeffs(sf.u.clone(), z_trunc);
    let vseries = TSeries::from_coeffs(sf.v.clone(), z_trunc);
    let wseries = TSeries::from_coeffs(sf.w.clone(), z_trunc);

    // W = 2V + 2tU
    let rel = wseries.sub(&vseries.scale_rational(2, 1)).sub(&useries.scale_rational(2, 1).shift_t(1));
    if !rel.is_zero() {
        return Ok(false);
    }

    let u_of_f = series::compose_series(&useries, &f)?;
    let expect_u = TSeries::from_poly(p, m_max, z_trunc);
    if !u_of_f.sub(&expect_u).is_zero() {
        return Ok(false);
    }

    let v_of_f = series::compose_series(&vseries, &f)?;
    let sigma_half = Poly::sigma2(ring, n).scale_rational(1, 2);
    let expect_v = TSeries::from_poly(&sigma_half, m_max, z_trunc)
        .sub(&TSeries::from_poly(p, m_max, z_trunc).shift_t(1));
    if !v_of_f.sub(&expect_v).is_zero() {
        return Ok(false);
    }

    let w_of_f = series::compose_series(&wseries, &f)?;
    let expect_w = TSeries::from_poly(&Poly::sigma2(ring, n), m_max, z_trunc);
    Ok(w_of_f.sub(&expect_w).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Ring;
    use rand::rngs::SmallRng;
    use rand::SeedableRng;

    #[test]
    fn recursion_matches_inversion_and_trees() {
        let mut rng = SmallRng::seed_from_u64(41);
        for _ in 0..4 {
            let p = crate::corpus::random_poly(&mut rng, Ring::Q, 2, 3, 2);
            let m_max = 4u32;
            let by_rec = potentials_recursive(&p, m_max);
            let by_tree = potentials_by_trees(&p, m_max).unwrap();
            // deg Q_[m] <= m(d-2)+2 with d = 3 here.
            let z_trunc = m_max + 2;
            let by_inv = potentials_by_inversion(&p, m_max, z_trunc + 1).unwrap();
            for m in 0..m_max as usize {
                assert_eq!(by_rec[m], by_tree[m], "tree mismatch at m={}", m + 1);
                assert_eq!(
                    by_rec[m].truncate_degree(z_trunc),
                    by_inv[m].truncate_degree(z_trunc),
                    "inversion mismatch at m={}",
                    m + 1
                );
            }
        }
    }

    #[test]
    fn closed_form_agrees_on_nilpotent_input() {
        // (z1 + i z2)^3 has nilpotent Hessian.
        let z1 = Poly::variable(Ring::Qi, 2, 0);
        let z2 = Poly::variable(Ring::Qi, 2, 1);
        let i = Scalar::i(Ring::Qi).unwrap();
        let p = z1.add(&z2.scalar_mul(&i)).pow(3);
        let m_max = 4u32;
        let closed = potentials_closed_hn(&p, m_max).unwrap();
        let rec = potentials_recursive(&p, m_max);
        assert_eq!(closed, rec);
    }

    #[test]
    fn closed_form_refuses_non_nilpotent() {
        let p = Poly::variable(Ring::Q, 2, 0).pow(2).mul(&Poly::variable(Ring::Q, 2, 1));
        assert!(!p.hessian().is_nilpotent().unwrap());
        assert_eq!(
            potentials_closed_hn(&p, 3),
            Err(HnError::NotHessianNilpotent)
        );
    }

    #[test]
    fn sigma_compositions_hold_generally() {
        let mut rng = SmallRng::seed_from_u64(43);
        for _ in 0..3 {
            let p = crate::corpus::random_homogeneous(&mut rng, Ring::Q, 2, 3);
            let m_max = 3u32;
            let sf = sigma_functions(&p, m_max);
            // Compositions hold modulo terms the truncation cannot see;
            // z_trunc covers deg of every coefficient composed with F.
            let z_trunc = (m_max + 2) * 3;
            assert!(sigma_composition_check(&p, &sf, z_trunc).unwrap());
        }
    }

    #[test]
    fn sigma_closed_forms_match_on_nilpotent_input() {
        let z1 = Poly::variable(Ring::Qi, 2, 0);
        let z2 = Poly::variable(Ring::Qi, 2, 1);
        let i = Scalar::i(Ring::Qi).unwrap();
        let p = z1.add(&z2.scalar_mul(&i)).pow(4);
        let m_max = 3u32;
        let generic = sigma_functions(&p, m_max);
        let closed = sigma_functions_hn(&p, m_max).unwrap();
        assert_eq!(generic.u, closed.u);
        assert_eq!(generic.v, closed.v);
        assert_eq!(generic.w, closed.w);
    }

    #[test]
    fn inversion_pair_round_trip() {
        let p = Poly::sigma2(Ring::Q, 2)
            .mul(&Poly::variable(Ring::Q, 2, 1))
            .scale_rational(1, 6);
        let pair = inversion_pair(&p, 3, 6).unwrap();
        assert_eq!(pair.potentials[0], p.truncate_degree(6));
        let comp = crate::series::compose_map(&pair.forward, &pair.inverse).unwrap();
        assert!(comp.is_identity());
    }
}
