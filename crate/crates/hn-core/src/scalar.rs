//! Exact coefficient rings: arbitrary-precision rationals, Gaussian
//! rationals and prime fields (with a quadratic extension carrying `i`
//! when -1 is a non-residue).
//!
//! Scalars are immutable values in canonical reduced form, so equality is
//! structural equality.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::HnError;

/// Tag identifying the coefficient ring of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    /// Rationals.
    Q,
    /// Gaussian rationals Q(i).
    Qi,
    /// Prime field F_p.
    Fp(u64),
    /// F_p[x]/(x^2+1) for primes p = 3 (mod 4), written a+bi.
    Fp2(u64),
}

impl Ring {
    /// Prime-field constructor; rejects composite moduli.
    pub fn fp(p: u64) -> Result<Ring, HnError> {
        if is_prime(p) {
            Ok(Ring::Fp(p))
        } else {
            Err(HnError::NotPrime(p))
        }
    }

    /// Smallest ring of characteristic p containing a square root of -1:
    /// F_p itself when p = 2 or p = 1 (mod 4), the quadratic extension
    /// otherwise.
    pub fn fp_with_i(p: u64) -> Result<Ring, HnError> {
        if !is_prime(p) {
            return Err(HnError::NotPrime(p));
        }
        if p == 2 || p % 4 == 1 {
            Ok(Ring::Fp(p))
        } else {
            Ok(Ring::Fp2(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::Q | Ring::Qi => 0,
            Ring::Fp(p) | Ring::Fp2(p) => *p,
        }
    }

    pub fn is_modular(&self) -> bool {
        self.characteristic() != 0
    }

    /// Common ring two operands promote to, if any. Q embeds in Q(i) and
    /// F_p in F_p[i]; exact and modular rings never mix.
    pub fn unify(self, other: Ring) -> Result<Ring, HnError> {
        match (self, other) {
            (a, b) if a == b => Ok(a),
            (Ring::Q, Ring::Qi) | (Ring::Qi, Ring::Q) => Ok(Ring::Qi),
            (Ring::Fp(p), Ring::Fp2(q)) | (Ring::Fp2(q), Ring::Fp(p)) if p == q => Ok(Ring::Fp2(p)),
            _ => Err(HnError::RingMismatch),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Q => write!(f, "Q"),
            Ring::Qi => write!(f, "QI"),
            Ring::Fp(p) => write!(f, "F{}", p),
            Ring::Fp2(p) => write!(f, "F{}[i]", p),
        }
    }
}

/// An element of one of the supported exact rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Qi(BigRational, BigRational),
    Fp { p: u64, v: u64 },
    Fp2 { p: u64, re: u64, im: u64 },
}

impl Scalar {
    pub fn ring(&self) -> Ring {
        match self {
            Scalar::Q(_) => Ring::Q,
            Scalar::Qi(_, _) => Ring::Qi,
            Scalar::Fp { p, .. } => Ring::Fp(*p),
            Scalar::Fp2 { p, .. } => Ring::Fp2(*p),
        }
    }

    pub fn zero(ring: Ring) -> Scalar {
        Scalar::from_int(ring, 0)
    }

    pub fn one(ring: Ring) -> Scalar {
        Scalar::from_int(ring, 1)
    }

    pub fn from_int(ring: Ring, k: i64) -> Scalar {
        match ring {
            Ring::Q => Scalar::Q(BigRational::from_integer(BigInt::from(k))),
            Ring::Qi => Scalar::Qi(
                BigRational::from_integer(BigInt::from(k)),
                BigRational::zero(),
            ),
            Ring::Fp(p) => Scalar::Fp { p, v: reduce_mod(k, p) },
            Ring::Fp2(p) => Scalar::Fp2 { p, re: reduce_mod(k, p), im: 0 },
        }
    }

    pub fn from_rational(ring: Ring, r: BigRational) -> Result<Scalar, HnError> {
        match ring {
            Ring::Q => Ok(Scalar::Q(r)),
            Ring::Qi => Ok(Scalar::Qi(r, BigRational::zero())),
            Ring::Fp(p) => {
                let num = rational_mod(&r, p)?;
                Ok(Scalar::Fp { p, v: num })
            }
            Ring::Fp2(p) => {
                let num = rational_mod(&r, p)?;
                Ok(Scalar::Fp2 { p, re: num, im: 0 })
            }
        }
    }

    /// The imaginary unit, where the ring has one.
    pub fn i(ring: Ring) -> Result<Scalar, HnError> {
        match ring {
            Ring::Q => Err(HnError::NoImaginaryUnit),
            Ring::Qi => Ok(Scalar::Qi(BigRational::zero(), BigRational::one())),
            Ring::Fp(p) => match sqrt_minus_one(p) {
                Some(v) => Ok(Scalar::Fp { p, v }),
                None => Err(HnError::NoImaginaryUnit),
            },
            Ring::Fp2(p) => Ok(Scalar::Fp2 { p, re: 0, im: 1 }),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(a) => a.is_zero(),
            Scalar::Qi(a, b) => a.is_zero() && b.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
            Scalar::Fp2 { re, im, .. } => *re == 0 && *im == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(self.ring())
    }

    /// Promote into a larger ring of the same characteristic.
    pub fn promote(&self, ring: Ring) -> Result<Scalar, HnError> {
        if self.ring() == ring {
            return Ok(self.clone());
        }
        match (self, ring) {
            (Scalar::Q(a), Ring::Qi) => Ok(Scalar::Qi(a.clone(), BigRational::zero())),
            (Scalar::Fp { p, v }, Ring::Fp2(q)) if p == &q => {
                Ok(Scalar::Fp2 { p: *p, re: *v, im: 0 })
            }
            _ => Err(HnError::RingMismatch),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, HnError> {
        let ring = self.ring().unify(other.ring())?;
        let (a, b) = (self.promote(ring)?, other.promote(ring)?);
        Ok(match (a, b) {
            (Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            (Scalar::Qi(xr, xi), Scalar::Qi(yr, yi)) => Scalar::Qi(xr + yr, xi + yi),
            (Scalar::Fp { p, v: x }, Scalar::Fp { v: y, .. }) => {
                Scalar::Fp { p, v: add_mod(x, y, p) }
            }
            (Scalar::Fp2 { p, re: xr, im: xi }, Scalar::Fp2 { re: yr, im: yi, .. }) => {
                Scalar::Fp2 { p, re: add_mod(xr, yr, p), im: add_mod(xi, yi, p) }
            }
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, HnError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, HnError> {
        let ring = self.ring().unify(other.ring())?;
        let (a, b) = (self.promote(ring)?, other.promote(ring)?);
        Ok(match (a, b) {
            (Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            (Scalar::Qi(xr, xi), Scalar::Qi(yr, yi)) => Scalar::Qi(
                &xr * &yr - &xi * &yi,
                &xr * &yi + &xi * &yr,
            ),
            (Scalar::Fp { p, v: x }, Scalar::Fp { v: y, .. }) => {
                Scalar::Fp { p, v: mul_mod(x, y, p) }
            }
            (Scalar::Fp2 { p, re: xr, im: xi }, Scalar::Fp2 { re: yr, im: yi, .. }) => {
                let re = sub_mod(mul_mod(xr, yr, p), mul_mod(xi, yi, p), p);
                let im = add_mod(mul_mod(xr, yi, p), mul_mod(xi, yr, p), p);
                Scalar::Fp2 { p, re, im }
            }
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, HnError> {
        if other.is_zero() {
            return Err(HnError::DivisionByZero);
        }
        self.try_mul(&other.inverse()?)
    }

    pub fn inverse(&self) -> Result<Scalar, HnError> {
        if self.is_zero() {
            return Err(HnError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::Qi(a, b) => {
                let norm = a * a + b * b;
                Scalar::Qi(a / &norm, -b / &norm)
            }
            Scalar::Fp { p, v } => Scalar::Fp { p: *p, v: inv_mod(*v, *p) },
            Scalar::Fp2 { p, re, im } => {
                // Norm a^2+b^2 is nonzero for p = 3 (mod 4) since -1 is
                // a non-residue.
                let norm = add_mod(mul_mod(*re, *re, *p), mul_mod(*im, *im, *p), *p);
                let ninv = inv_mod(norm, *p);
                Scalar::Fp2 {
                    p: *p,
                    re: mul_mod(*re, ninv, *p),
                    im: mul_mod(sub_mod(0, *im, *p), ninv, *p),
                }
            }
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Qi(a, b) => Scalar::Qi(-a, -b),
            Scalar::Fp { p, v } => Scalar::Fp { p: *p, v: sub_mod(0, *v, *p) },
            Scalar::Fp2 { p, re, im } => Scalar::Fp2 {
                p: *p,
                re: sub_mod(0, *re, *p),
                im: sub_mod(0, *im, *p),
            },
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.ring());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base).expect("same ring");
            }
            base = base.try_mul(&base).expect("same ring");
            e >>= 1;
        }
        acc
    }

    /// Rational scaling, convenient for the many m!/2^m coefficients.
    pub fn scale_rational(&self, num: i64, den: i64) -> Result<Scalar, HnError> {
        assert!(den != 0);
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        let factor = Scalar::from_rational(self.ring(), r)?;
        self.try_mul(&factor)
    }

    /// Real and imaginary parts as rationals (exact rings only).
    pub fn to_rational_parts(&self) -> Option<(BigRational, BigRational)> {
        match self {
            Scalar::Q(a) => Some((a.clone(), BigRational::zero())),
            Scalar::Qi(a, b) => Some((a.clone(), b.clone())),
            _ => None,
        }
    }
}

/// Standard C-bilinear form sum u_i v_i (bilinear, not Hermitian).
pub fn bilinear(u: &[Scalar], v: &[Scalar]) -> Result<Scalar, HnError> {
    if u.len() != v.len() {
        return Err(HnError::LengthMismatch);
    }
    if u.is_empty() {
        return Err(HnError::LengthMismatch);
    }
    let mut ring = u[0].ring();
    for s in u.iter().chain(v.iter()) {
        ring = ring.unify(s.ring())?;
    }
    let mut acc = Scalar::zero(ring);
    for (a, b) in u.iter().zip(v.iter()) {
        acc = acc.try_add(&a.try_mul(b)?)?;
    }
    Ok(acc)
}

/// Exact square root of a nonnegative rational, when one exists.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer().sqrt();
    let den = r.denom().sqrt();
    if &(&num * &num) == r.numer() && &(&den * &den) == r.denom() {
        Some(BigRational::new(num, den))
    } else {
        None
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn sqrt_minus_one(p: u64) -> Option<u64> {
    if p == 2 {
        return Some(1);
    }
    if p % 4 != 1 {
        return None;
    }
    // Desk-scale moduli; a linear scan is fine.
    (1..p).find(|&x| mul_mod(x, x, p) == p - 1)
}

fn reduce_mod(k: i64, p: u64) -> u64 {
    let m = k.rem_euclid(p as i64);
    m as u64
}

fn rational_mod(r: &BigRational, p: u64) -> Result<u64, HnError> {
    let pb = BigInt::from(p);
    let num = ((r.numer() % &pb) + &pb) % &pb;
    let den = ((r.denom() % &pb) + &pb) % &pb;
    let num: u64 = num.try_into().unwrap();
    let den: u64 = den.try_into().unwrap();
    if den == 0 {
        return Err(HnError::DivisionByZero);
    }
    Ok(mul_mod(num, inv_mod(den, p), p))
}

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + p as u128 - b as u128 % p as u128) % p as u128) as u64
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a nonzero mod p.
    pow_mod(a % p, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(a) => fmt_rational(a, f),
            Scalar::Qi(a, b) => {
                if b.is_zero() {
                    return fmt_rational(a, f);
                }
                if !a.is_zero() {
                    fmt_rational(a, f)?;
                    if !b.is_negative() {
                        write!(f, "+")?;
                    }
                }
                if b.is_one() {
                    write!(f, "i")
                } else if (-b).is_one() {
                    write!(f, "-i")
                } else {
                    fmt_rational(b, f)?;
                    write!(f, "i")
                }
            }
            Scalar::Fp { p, v } => write!(f, "{} mod {}", v, p),
            Scalar::Fp2 { p, re, im } => {
                if *im == 0 {
                    write!(f, "{} mod {}", re, p)
                } else if *re == 0 {
                    write!(f, "{}i mod {}", im, p)
                } else {
                    write!(f, "{}+{}i mod {}", re, im, p)
                }
            }
        }
    }
}

/// Coefficient-only text (no `mod p` suffix), used inside polynomial terms.
pub struct CoeffDisplay<'a>(pub &'a Scalar);

impl fmt::Display for CoeffDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Scalar::Fp { v, .. } => write!(f, "{}", v),
            Scalar::Fp2 { re, im, .. } => {
                if *im == 0 {
                    write!(f, "{}", re)
                } else if *re == 0 {
                    write!(f, "{}i", im)
                } else {
                    write!(f, "{}+{}i", re, im)
                }
            }
            s => write!(f, "{}", s),
        }
    }
}

/// Convenience constructors used heavily in tests.
pub fn q(num: i64, den: i64) -> Scalar {
    Scalar::Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

pub fn qi(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Scalar {
    Scalar::Qi(
        BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
        BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
    )
}

pub fn fp(p: u64, v: i64) -> Scalar {
    Scalar::Fp { p, v: reduce_mod(v, p) }
}

/// Dot-free helper for building scalar vectors in tests and the corpus.
pub fn vec_from_ints(ring: Ring, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| Scalar::from_int(ring, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rational_add() {
        // 1/2 + 1/3 = 5/6
        assert_eq!(q(1, 2).try_add(&q(1, 3)).unwrap(), q(5, 6));
    }

    #[test]
    fn gaussian_conjugate_product() {
        // (1+i)(1-i) = 2
        let a = qi(1, 1, 1, 1);
        let b = qi(1, 1, -1, 1);
        assert_eq!(a.try_mul(&b).unwrap(), qi(2, 1, 0, 1));
    }

    #[test]
    fn fp_mul() {
        // 3*4 = 2 in F_5
        assert_eq!(fp(5, 3).try_mul(&fp(5, 4)).unwrap(), fp(5, 2));
    }

    #[test]
    fn ring_mismatch_and_div_by_zero() {
        assert_eq!(q(1, 1).try_add(&fp(5, 1)), Err(HnError::RingMismatch));
        assert_eq!(fp(5, 1).try_add(&fp(7, 1)), Err(HnError::RingMismatch));
        assert_eq!(q(1, 1).try_div(&q(0, 1)), Err(HnError::DivisionByZero));
        assert_eq!(Ring::fp(6), Err(HnError::NotPrime(6)));
    }

    #[test]
    fn bilinear_examples() {
        let ring = Ring::Qi;
        let i = Scalar::i(ring).unwrap();
        let one = Scalar::one(ring);
        let zero = Scalar::zero(ring);
        // (1, i).(1, i) = 0 (isotropic)
        assert!(bilinear(&[one.clone(), i.clone()], &[one.clone(), i.clone()])
            .unwrap()
            .is_zero());
        // (1, 0).(0, 1) = 0
        assert!(bilinear(&[one.clone(), zero.clone()], &[zero, one]).unwrap().is_zero());
        // (2, 3).(1, 1) = 5
        let u = vec_from_ints(Ring::Q, &[2, 3]);
        let v = vec_from_ints(Ring::Q, &[1, 1]);
        assert_eq!(bilinear(&u, &v).unwrap(), q(5, 1));
        assert_eq!(
            bilinear(&[q(1, 1)], &[q(1, 1), q(2, 1)]),
            Err(HnError::LengthMismatch)
        );
    }

    #[test]
    fn bilinear_symmetric_and_linear() {
        // Deterministic small sweep standing in for random triples.
        for a in -2i64..3 {
            for b in -2i64..3 {
                let u = vec![q(a, 1), q(b, 1), q(a - b, 1)];
                let v = vec![q(b, 1), q(1, 1), q(a, 1)];
                let w = vec![q(2, 1), q(-a, 1), q(3, 1)];
                let uv = bilinear(&u, &v).unwrap();
                let vu = bilinear(&v, &u).unwrap();
                assert_eq!(uv, vu);
                // <u, v+w> = <u,v> + <u,w>
                let vw: Vec<Scalar> = v
                    .iter()
                    .zip(w.iter())
                    .map(|(x, y)| x.try_add(y).unwrap())
                    .collect();
                let lhs = bilinear(&u, &vw).unwrap();
                let rhs = uv.try_add(&bilinear(&u, &w).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn ring_axioms_spot_checks() {
        let xs = [q(2, 3), q(-1, 2), q(7, 5)];
        let [a, b, c] = xs.clone();
        let ab_c = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let a_bc = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        assert_eq!(ab_c, a_bc);
        let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let rhs = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(a.try_mul(&a.inverse().unwrap()).unwrap().is_one());

        for p in [2u64, 3, 5, 7, 13] {
            for v in 1..p.min(11) {
                let s = fp(p, v as i64);
                assert!(s.try_mul(&s.inverse().unwrap()).unwrap().is_one());
            }
        }
    }

    #[test]
    fn fp2_field_ops() {
        let ring = Ring::fp_with_i(7).unwrap();
        assert_eq!(ring, Ring::Fp2(7));
        let i = Scalar::i(ring).unwrap();
        assert_eq!(i.try_mul(&i).unwrap(), Scalar::from_int(ring, -1));
        let x = Scalar::Fp2 { p: 7, re: 3, im: 5 };
        assert!(x.try_mul(&x.inverse().unwrap()).unwrap().is_one());

        // p = 13: i lives in F_13 itself.
        let ring13 = Ring::fp_with_i(13).unwrap();
        assert_eq!(ring13, Ring::Fp(13));
        let i13 = Scalar::i(ring13).unwrap();
        assert_eq!(i13.try_mul(&i13).unwrap(), Scalar::from_int(ring13, -1));
    }

    #[test]
    fn sqrt_of_rationals() {
        use num_traits::FromPrimitive;
        let r = BigRational::from_u64(49).unwrap() / BigRational::from_u64(4).unwrap();
        assert_eq!(rational_sqrt(&r), Some(BigRational::new(7.into(), 2.into())));
        let nr = BigRational::from_u64(2).unwrap();
        assert_eq!(rational_sqrt(&nr), None);
    }
}
