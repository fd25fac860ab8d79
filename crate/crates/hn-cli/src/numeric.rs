//! Floating-point layer: evaluating exact polynomials over C, estimating
//! sup norms on the unit sphere, and the convergence-radius formulas for
//! the deformation inverse.

use hn_core::inversion::potentials_recursive;
use hn_core::{analysis, HnError, Poly};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, thiserror::Error)]
pub enum NumericError {
    #[error("numeric evaluation needs characteristic zero")]
    ModularRing,
    #[error("radius formula needs a homogeneous polynomial of degree >= {0}")]
    DegreeTooSmall(u32),
    #[error("{0}")]
    Core(#[from] HnError),
}

/// A polynomial with coefficients lowered to f64 complex numbers.
#[derive(Debug, Clone)]
pub struct NumericPoly {
    pub n: usize,
    pub terms: Vec<(Vec<u32>, Complex64)>,
}

impl NumericPoly {
    pub fn from_poly(p: &Poly) -> Result<NumericPoly, NumericError> {
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            let (re, im) = c.to_rational_parts().ok_or(NumericError::ModularRing)?;
            let re = re.to_f64().unwrap_or(f64::NAN);
            let im = im.to_f64().unwrap_or(f64::NAN);
            terms.push((m.exps.clone(), Complex64::new(re, im)));
        }
        Ok(NumericPoly { n: p.nvars(), terms })
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (exps, c) in &self.terms {
            let mut t = *c;
            for (zi, &e) in z.iter().zip(exps.iter()) {
                t *= zi.powu(e);
            }
            acc += t;
        }
        acc
    }

    /// All complex partial derivatives at z.
    pub fn grad_eval(&self, z: &[Complex64]) -> Vec<Complex64> {
        let mut g = vec![Complex64::new(0.0, 0.0); self.n];
        for (exps, c) in &self.terms {
            for k in 0..self.n {
                if exps[k] == 0 {
                    continue;
                }
                let mut t = *c * exps[k] as f64;
                for (j, (zi, &e)) in z.iter().zip(exps.iter()).enumerate() {
                    let e = if j == k { e - 1 } else { e };
                    t *= zi.powu(e);
                }
                g[k] += t;
            }
        }
        g
    }
}

fn random_unit_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    // Gaussian components (Box-Muller) normalized to the unit sphere of
    // C^n viewed as R^{2n}.
    let mut coords = vec![0.0f64; 2 * n];
    for pair in coords.chunks_mut(2) {
        let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = rng.gen_range(0.0..1.0);
        let r = (-2.0 * u1.ln()).sqrt();
        pair[0] = r * (core::f64::consts::TAU * u2).cos();
        if pair.len() > 1 {
            pair[1] = r * (core::f64::consts::TAU * u2).sin();
        }
    }
    let norm = coords.iter().map(|x| x * x).sum::<f64>().sqrt();
    (0..n)
        .map(|i| Complex64::new(coords[2 * i] / norm, coords[2 * i + 1] / norm))
        .collect()
}

fn sphere_norm(z: &[Complex64]) -> f64 {
    z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Estimate max |P| over the unit sphere of C^n: random starts followed
/// by projected gradient ascent on |P|^2 along the real sphere S^{2n-1}.
pub fn sup_norm(p: &NumericPoly, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = p.n;
    let mut best = 0.0f64;
    let starts = samples.max(1);
    for _ in 0..starts {
        let mut z = random_unit_point(&mut rng, n);
        let mut val = p.eval(&z).norm_sqr();
        let mut step = 0.5f64;
        for _ in 0..200 {
            // d|P|^2 along x_k is 2 Re(conj(P) P_k), along y_k it is
            // -2 Im(conj(P) P_k); as a complex vector: 2 conj(P P_k...).
            let f = p.eval(&z);
            let g = p.grad_eval(&z);
            let mut dir: Vec<Complex64> = g
                .iter()
                .map(|gk| {
                    let w = f.conj() * gk;
                    2.0 * Complex64::new(w.re, -w.im)
                })
                .collect();
            // Project out the radial component (real inner product).
            let radial: f64 = dir
                .iter()
                .zip(z.iter())
                .map(|(d, zi)| d.re * zi.re + d.im * zi.im)
                .sum();
            for (d, zi) in dir.iter_mut().zip(z.iter()) {
                *d -= radial * zi;
            }
            let dn = sphere_norm(&dir);
            if dn < 1e-14 {
                break;
            }
            // Backtracking line search on the sphere.
            let mut advanced = false;
            while step > 1e-12 {
                let cand: Vec<Complex64> = z
                    .iter()
                    .zip(dir.iter())
                    .map(|(zi, d)| zi + (step / dn) * d)
                    .collect();
                let nm = sphere_norm(&cand);
                let cand: Vec<Complex64> = cand.iter().map(|c| c / nm).collect();
                let cv = p.eval(&cand).norm_sqr();
                if cv > val {
                    z = cand;
                    val = cv;
                    advanced = true;
                    step *= 1.5;
                    break;
                }
                step *= 0.5;
            }
            if !advanced {
                break;
            }
        }
        best = best.max(val);
    }
    best.sqrt()
}

/// Radius below which the deformation z - t grad P of a homogeneous P of
/// degree d >= 3 in n variables is invertible with convergent power
/// series inverse at t = 1: (n 2^{d-1} |P|)^{1/(2-d)}.
pub fn radius_general(p: &Poly, sup: f64) -> Result<f64, NumericError> {
    let d = p
        .homogeneous_degree()
        .filter(|&d| d >= 3)
        .ok_or(NumericError::DegreeTooSmall(3))?;
    let n = p.nvars() as f64;
    let base = n * 2f64.powi(d as i32 - 1) * sup;
    Ok(base.powf(1.0 / (2.0 - d as f64)))
}

/// Sharper radius for Hessian-nilpotent P, homogeneous of degree d >= 4:
/// (2^{d+1} |P|)^{1/(2-d)}. Refuses inputs that are not
/// Hessian-nilpotent.
pub fn radius_hn(p: &Poly, sup: f64) -> Result<f64, NumericError> {
    let d = p
        .homogeneous_degree()
        .filter(|&d| d >= 4)
        .ok_or(NumericError::DegreeTooSmall(4))?;
    if !analysis::is_hn_direct(p)? {
        return Err(NumericError::Core(HnError::NotHessianNilpotent));
    }
    let base = 2f64.powi(d as i32 + 1) * sup;
    Ok(base.powf(1.0 / (2.0 - d as f64)))
}

#[derive(Debug, Clone)]
pub struct BoundCheck {
    pub m: usize,
    /// Largest |Q_[m]| seen over the sampled ball.
    pub observed: f64,
    /// n^{m-1} |P|_{S(0,2r)}^m / (2^{m-1} r^{2m-2}).
    pub bound: f64,
    pub holds: bool,
}

/// Check the growth bound on the inverse-potential terms Q_[m] at random
/// points of the closed ball B(0, r): for homogeneous P of degree d,
/// |Q_[m](a)| <= n^{m-1} ((2r)^d |P|)^m / (2^{m-1} r^{2m-2}).
pub fn potential_bound_check(
    p: &Poly,
    m_max: usize,
    r: f64,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<Vec<BoundCheck>, NumericError> {
    let d = p
        .homogeneous_degree()
        .ok_or(NumericError::DegreeTooSmall(2))?;
    let n = p.nvars();
    let sup = sup_norm(&NumericPoly::from_poly(p)?, 40, seed ^ 0x5eed);
    let sup_2r = (2.0 * r).powi(d as i32) * sup;
    let potentials = potentials_recursive(p, m_max as u32);
    let numeric: Vec<NumericPoly> = potentials
        .iter()
        .map(NumericPoly::from_poly)
        .collect::<Result<_, _>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut observed = vec![0.0f64; m_max];
    for _ in 0..samples {
        let dir = random_unit_point(&mut rng, n);
        let rho: f64 = rng.gen_range(0.0..=1.0);
        let a: Vec<Complex64> = dir.iter().map(|z| z * (r * rho)).collect();
        for (m, q) in numeric.iter().enumerate() {
            observed[m] = observed[m].max(q.eval(&a).norm());
        }
    }
    Ok((1..=m_max)
        .map(|m| {
            let bound = (n as f64).powi(m as i32 - 1) * sup_2r.powi(m as i32)
                / (2f64.powi(m as i32 - 1) * r.powi(2 * m as i32 - 2));
            BoundCheck {
                m,
                observed: observed[m - 1],
                bound,
                holds: observed[m - 1] <= bound + tol,
            }
        })
        .collect())
}

fn big_binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn big_factorial(k: u64) -> BigInt {
    (1..=k).map(BigInt::from).product::<BigInt>().max(BigInt::from(1))
}

/// Exact check of the multi-index factorial bound
/// sum_{|alpha| = m, alpha in N^n} alpha! <= m! C(m+n-1, m).
pub fn factorial_sum_check(m: u64, n: usize) -> (BigInt, BigInt, bool) {
    fn walk(n: usize, remaining: u64, acc: &BigInt, total: &mut BigInt) {
        if n == 1 {
            *total += acc * big_factorial(remaining);
            return;
        }
        for e in 0..=remaining {
            let acc2 = acc * big_factorial(e);
            walk(n - 1, remaining - e, &acc2, total);
        }
    }
    let mut lhs = BigInt::from(0);
    walk(n, m, &BigInt::from(1), &mut lhs);
    let rhs = big_factorial(m) * big_binomial(m + n as u64 - 1, m);
    let holds = lhs <= rhs;
    (lhs, rhs, holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    #[test]
    fn sup_norm_of_simple_forms() {
        // max of |(z1 + i z2)^4| on the unit sphere of C^2 is 4.
        let p = parse_poly("(z1+i*z2)^4", None).unwrap();
        let np = NumericPoly::from_poly(&p).unwrap();
        let s = sup_norm(&np, 60, 11);
        assert!((s - 4.0).abs() < 0.04, "got {}", s);

        // max of |z1^2 + z2^2| on the sphere is 1.
        let q = parse_poly("z1^2 + z2^2", None).unwrap();
        let nq = NumericPoly::from_poly(&q).unwrap();
        let s2 = sup_norm(&nq, 60, 12);
        assert!((s2 - 1.0).abs() < 0.01, "got {}", s2);
    }

    #[test]
    fn radius_values() {
        let p = parse_poly("(z1+i*z2)^4", None).unwrap();
        let r = radius_hn(&p, 4.0).unwrap();
        assert!((r - 128f64.powf(-0.5)).abs() < 1e-12);

        // Degree 3, n = 2, |P| = 1: (2 * 4 * 1)^(-1) = 1/8.
        let q = parse_poly("z1^3", Some(2)).unwrap();
        let r2 = radius_general(&q, 1.0).unwrap();
        assert!((r2 - 0.125).abs() < 1e-12);

        // z1 z2 has a non-nilpotent Hessian; the sharper radius refuses it.
        let bad = parse_poly("z1*z2", None).unwrap();
        assert!(radius_hn(&bad, 1.0).is_err());
    }

    #[test]
    fn growth_bound_holds_on_samples() {
        let p = parse_poly("(z1+i*z2)^4", None).unwrap();
        let checks = potential_bound_check(&p, 4, 0.05, 200, 1e-9, 5).unwrap();
        assert!(checks.iter().all(|c| c.holds));
    }

    #[test]
    fn factorial_sum_bound_small_cases() {
        for n in 1..=8 {
            for m in 0..=8 {
                let (lhs, rhs, holds) = factorial_sum_check(m, n);
                assert!(holds, "m={} n={} lhs={} rhs={}", m, n, lhs, rhs);
            }
        }
        // n = 1 is the equality case.
        let (lhs, rhs, _) = factorial_sum_check(5, 1);
        assert_eq!(lhs, rhs);
    }
}
