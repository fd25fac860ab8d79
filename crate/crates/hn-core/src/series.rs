//! Formal power series in a deformation parameter t with polynomial
//! coefficients, truncated in both t and total z-degree, plus formal maps
//! C^n -> C^n and their compositional inverses.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::HnError;
use crate::poly::Poly;
use crate::scalar::{Ring, Scalar};

/// sum_{m=0}^{t_trunc} t^m c_m(z), with every c_m truncated to total
/// z-degree <= z_trunc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TSeries {
    ring: Ring,
    n: usize,
    z_trunc: u32,
    coeffs: Vec<Poly>,
}

impl TSeries {
    pub fn zero(ring: Ring, n: usize, t_trunc: u32, z_trunc: u32) -> TSeries {
        TSeries {
            ring,
            n,
            z_trunc,
            coeffs: vec![Poly::zero(ring, n); t_trunc as usize + 1],
        }
    }

    /// Constant-in-t series from a plain polynomial.
    pub fn from_poly(p: &Poly, t_trunc: u32, z_trunc: u32) -> TSeries {
        let mut s = TSeries::zero(p.ring(), p.nvars(), t_trunc, z_trunc);
        s.coeffs[0] = p.truncate_degree(z_trunc);
        s
    }

    pub fn from_coeffs(coeffs: Vec<Poly>, z_trunc: u32) -> TSeries {
        assert!(!coeffs.is_empty());
        let ring = coeffs[0].ring();
        let n = coeffs[0].nvars();
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.truncate_degree(z_trunc))
            .collect();
        TSeries { ring, n, z_trunc, coeffs }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn t_trunc(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn z_trunc(&self) -> u32 {
        self.z_trunc
    }

    pub fn coeff(&self, m: u32) -> &Poly {
        &self.coeffs[m as usize]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, m: u32, p: Poly) {
        self.coeffs[m as usize] = p.truncate_degree(self.z_trunc);
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    fn check_shape(&self, other: &TSeries) {
        assert_eq!(self.n, other.n);
        assert_eq!(self.z_trunc, other.z_trunc);
        assert_eq!(self.coeffs.len(), other.coeffs.len());
    }

    pub fn add(&self, other: &TSeries) -> TSeries {
        self.check_shape(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a.add(b))
            .collect();
        TSeries::from_coeffs(coeffs, self.z_trunc)
    }

    pub fn sub(&self, other: &TSeries) -> TSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TSeries {
        let coeffs = self.coeffs.iter().map(Poly::neg).collect();
        TSeries::from_coeffs(coeffs, self.z_trunc)
    }

    pub fn scalar_mul(&self, s: &Scalar) -> TSeries {
        let coeffs = self.coeffs.iter().map(|c| c.scalar_mul(s)).collect();
        TSeries::from_coeffs(coeffs, self.z_trunc)
    }

    pub fn scale_rational(&self, num: i64, den: i64) -> TSeries {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.scale_rational(num, den))
            .collect();
        TSeries::from_coeffs(coeffs, self.z_trunc)
    }

    pub fn poly_mul(&self, p: &Poly) -> TSeries {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.mul_trunc(p, Some(self.z_trunc)))
            .collect();
        TSeries::from_coeffs(coeffs, self.z_trunc)
    }

    pub fn mul(&self, other: &TSeries) -> TSeries {
        self.check_shape(other);
        let t = self.coeffs.len();
        let mut out = TSeries::zero(self.ring, self.n, self.t_trunc(), self.z_trunc);
        for i in 0..t {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..t - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let prod = self.coeffs[i].mul_trunc(&other.coeffs[j], Some(self.z_trunc));
                out.coeffs[i + j] = out.coeffs[i + j].add(&prod);
            }
        }
        out
    }

    /// Multiply by t^k, dropping coefficients past the truncation order.
    pub fn shift_t(&self, k: u32) -> TSeries {
        let t = self.coeffs.len();
        let mut out = TSeries::zero(self.ring, self.n, self.t_trunc(), self.z_trunc);
        for i in 0..t {
            let j = i + k as usize;
            if j < t {
                out.coeffs[j] = self.coeffs[i].clone();
            }
        }
        out
    }

    /// d/dt.
    pub fn t_derivative(&self) -> TSeries {
        let mut out = TSeries::zero(self.ring, self.n, self.t_trunc(), self.z_trunc);
        for m in 1..self.coeffs.len() {
            out.coeffs[m - 1] = self.coeffs[m].scale_rational(m as i64, 1);
        }
        out
    }

    pub fn diff(&self, i: usize) -> TSeries {
        let coeffs = self.coeffs.iter().map(|c| c.diff(i)).collect();
        TSeries::from_coeffs(coeffs, self.z_trunc)
    }

    /// Applies sum_i (deg_z + offset) to each z-graded component of every
    /// t-coefficient (the Euler operator in z, shifted).
    pub fn euler_shifted(&self, offset: i64) -> TSeries {
        let coeffs = self.coeffs.iter().map(|c| c.euler_shifted(offset)).collect();
        TSeries::from_coeffs(coeffs, self.z_trunc)
    }

    pub fn promote(&self, ring: Ring) -> Result<TSeries, HnError> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.promote(ring)?);
        }
        Ok(TSeries::from_coeffs(coeffs, self.z_trunc))
    }
}

/// A formal map C^n -> C^n depending on t: one series per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalMap {
    pub components: Vec<TSeries>,
}

impl FormalMap {
    pub fn identity(ring: Ring, n: usize, t_trunc: u32, z_trunc: u32) -> FormalMap {
        let components = (0..n)
            .map(|i| {
                TSeries::from_poly(&Poly::variable(ring, n, i), t_trunc, z_trunc)
            })
            .collect();
        FormalMap { components }
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn ring(&self) -> Ring {
        self.components[0].ring()
    }

    pub fn t_trunc(&self) -> u32 {
        self.components[0].t_trunc()
    }

    pub fn z_trunc(&self) -> u32 {
        self.components[0].z_trunc()
    }

    pub fn sub(&self, other: &FormalMap) -> FormalMap {
        let components = self
            .components
            .iter()
            .zip(other.components.iter())
            .map(|(a, b)| a.sub(b))
            .collect();
        FormalMap { components }
    }

    /// True when the map equals the identity up to both truncations.
    pub fn is_identity(&self) -> bool {
        let id = FormalMap::identity(self.ring(), self.nvars(), self.t_trunc(), self.z_trunc());
        self.sub(&id).components.iter().all(TSeries::is_zero)
    }
}

/// The deformation F_t = z - t grad P (orientation +1 gives z + t grad P).
pub fn symmetric_map(p: &Poly, t_trunc: u32, z_trunc: u32, negate: bool) -> FormalMap {
    let ring = p.ring();
    let n = p.nvars();
    let grad = p.gradient();
    let components = (0..n)
        .map(|i| {
            let mut s = TSeries::from_poly(&Poly::variable(ring, n, i), t_trunc, z_trunc);
            if t_trunc >= 1 {
                let g = if negate { grad[i].neg() } else { grad[i].clone() };
                s.set_coeff(1, g);
            }
            s
        })
        .collect();
    FormalMap { components }
}

/// Substitute z_i <- map_i(t, z) into a plain polynomial. Monomial values
/// are memoized: each exponent vector is reduced one variable at a time so
/// common sub-monomials are computed once.
pub fn compose_poly(p: &Poly, map: &FormalMap) -> Result<TSeries, HnError> {
    let n = map.nvars();
    if p.nvars() != n {
        return Err(HnError::LengthMismatch);
    }
    let ring = p.ring().unify(map.ring())?;
    let t_trunc = map.t_trunc();
    let z_trunc = map.z_trunc();
    let mut cache: BTreeMap<Vec<u32>, TSeries> = BTreeMap::new();
    let mut acc = TSeries::zero(ring, n, t_trunc, z_trunc);
    for (m, c) in p.terms() {
        let val = mono_value(&m.exps, map, &mut cache, ring, n, t_trunc, z_trunc)?;
        acc = acc.add(&val.scalar_mul(&c.promote(ring)?));
    }
    Ok(acc)
}

fn mono_value(
    exps: &[u32],
    map: &FormalMap,
    cache: &mut BTreeMap<Vec<u32>, TSeries>,
    ring: Ring,
    n: usize,
    t_trunc: u32,
    z_trunc: u32,
) -> Result<TSeries, HnError> {
    if let Some(v) = cache.get(exps) {
        return Ok(v.clone());
    }
    let value = match exps.iter().position(|&e| e > 0) {
        None => TSeries::from_poly(&Poly::one(ring, n), t_trunc, z_trunc),
        Some(i) => {
            let mut smaller = exps.to_vec();
            smaller[i] -= 1;
            let rest = mono_value(&smaller, map, cache, ring, n, t_trunc, z_trunc)?;
            rest.mul(&map.components[i].promote(ring)?)
        }
    };
    cache.insert(exps.to_vec(), value.clone());
    Ok(value)
}

/// Substitute a formal map into every t-coefficient of a series:
/// (s o map)(t, z) = sum_m t^m s_m(map(t, z)).
pub fn compose_series(s: &TSeries, map: &FormalMap) -> Result<TSeries, HnError> {
    let ring = s.ring().unify(map.ring())?;
    let mut acc = TSeries::zero(ring, map.nvars(), map.t_trunc(), map.z_trunc());
    for m in 0..=s.t_trunc().min(map.t_trunc()) {
        let sub = compose_poly(s.coeff(m), map)?;
        acc = acc.add(&sub.shift_t(m));
    }
    Ok(acc)
}

pub fn compose_map(f: &FormalMap, g: &FormalMap) -> Result<FormalMap, HnError> {
    let mut components = Vec::with_capacity(f.components.len());
    for c in &f.components {
        components.push(compose_series(c, g)?);
    }
    Ok(FormalMap { components })
}

/// Inverse of a square scalar matrix by Gaussian elimination.
pub fn scalar_matrix_inverse(m: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>, HnError> {
    let k = m.len();
    if m.iter().any(|r| r.len() != k) {
        return Err(HnError::NotSquare);
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    let ring = m[0][0].ring();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut inv: Vec<Vec<Scalar>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { Scalar::one(ring) } else { Scalar::zero(ring) })
                .collect()
        })
        .collect();
    for col in 0..k {
        let pivot = (col..k).find(|&r| !a[r][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => return Err(HnError::NonInvertibleLinearPart),
        };
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let inv_p = a[col][col].inverse()?;
        for j in 0..k {
            a[col][j] = a[col][j].try_mul(&inv_p)?;
            inv[col][j] = inv[col][j].try_mul(&inv_p)?;
        }
        for r in 0..k {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..k {
                let da = a[col][j].try_mul(&f)?;
                a[r][j] = a[r][j].try_sub(&da)?;
                let di = inv[col][j].try_mul(&f)?;
                inv[r][j] = inv[r][j].try_sub(&di)?;
            }
        }
    }
    Ok(inv)
}

/// Compositional inverse G of F with F(G) = G(F) = id, assuming F has no
/// constant term and an invertible t-constant linear part. Solves grade by
/// grade in total z-degree after inverting the linear part as a t-series.
pub fn invert_map(f: &FormalMap) -> Result<FormalMap, HnError> {
    let ring = f.ring();
    let n = f.nvars();
    let t_trunc = f.t_trunc();
    let z_trunc = f.z_trunc();

    for c in &f.components {
        for m in 0..=t_trunc {
            if !c.coeff(m).coefficient(&vec![0; n]).is_zero() {
                return Err(HnError::ConstantTermInMap);
            }
        }
    }

    // Linear part L(t): per t-order, the matrix of degree-1 coefficients.
    let mut l: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(t_trunc as usize + 1);
    for m in 0..=t_trunc {
        let mut mat = vec![vec![Scalar::zero(ring); n]; n];
        for (i, row) in mat.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let mut exps = vec![0u32; n];
                exps[j] = 1;
                *entry = f.components[i].coeff(m).coefficient(&exps);
            }
        }
        l.push(mat);
    }

    // R(t) = L(t)^{-1} as a t-series of scalar matrices.
    let r0 = scalar_matrix_inverse(&l[0])?;
    let mut r: Vec<Vec<Vec<Scalar>>> = vec![r0.clone()];
    for m in 1..=t_trunc as usize {
        // R_m = -R_0 sum_{i=1}^{m} L_i R_{m-i}
        let mut s = vec![vec![Scalar::zero(ring); n]; n];
        for i in 1..=m {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let prod = l[i][a][c].try_mul(&r[m - i][c][b])?;
                        s[a][b] = s[a][b].try_add(&prod)?;
                    }
                }
            }
        }
        let mut rm = vec![vec![Scalar::zero(ring); n]; n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let prod = r0[a][c].try_mul(&s[c][b])?;
                    rm[a][b] = rm[a][b].try_sub(&prod)?;
                }
            }
        }
        r.push(rm);
    }

    // Apply R(t) to a vector of series.
    let apply_r = |v: &[TSeries]| -> Result<Vec<TSeries>, HnError> {
        let mut out = vec![TSeries::zero(ring, n, t_trunc, z_trunc); n];
        for (m, rm) in r.iter().enumerate() {
            for a in 0..n {
                for b in 0..n {
                    if rm[a][b].is_zero() {
                        continue;
                    }
                    let term = v[b].scalar_mul(&rm[a][b]).shift_t(m as u32);
                    out[a] = out[a].add(&term);
                }
            }
        }
        Ok(out)
    };

    // F minus its linear part: z-order >= 2.
    let mut f_high = f.clone();
    for (i, c) in f_high.components.iter_mut().enumerate() {
        for m in 0..=t_trunc {
            let mut p = c.coeff(m).clone();
            p = p.sub(&p.homogeneous_part(1));
            let _ = i;
            c.set_coeff(m, p);
        }
    }

    // Start with the inverted linear part; refine one z-degree at a time.
    let z_vec: Vec<TSeries> = (0..n)
        .map(|i| TSeries::from_poly(&Poly::variable(ring, n, i), t_trunc, z_trunc))
        .collect();
    let mut g = FormalMap { components: apply_r(&z_vec)? };

    for k in 2..=z_trunc {
        let h = compose_map(&f_high, &g)?;
        // Degree-k correction: G_k = -R [F_high(G)]_k.
        let mut hk: Vec<TSeries> = Vec::with_capacity(n);
        for c in &h.components {
            let coeffs = c
                .coeffs()
                .iter()
                .map(|p| p.homogeneous_part(k))
                .collect::<Vec<_>>();
            hk.push(TSeries::from_coeffs(coeffs, z_trunc));
        }
        let corr = apply_r(&hk)?;
        for i in 0..n {
            g.components[i] = g.components[i].sub(&corr[i]);
        }
    }
    Ok(g)
}

/// Reads off the potentials Q_[1], ..., Q_[t_trunc] from an inverse map of
/// the form G = z + sum_{m>=1} t^m grad Q_[m]. Fails when some coefficient
/// vector field is not a gradient.
pub fn extract_potentials(g: &FormalMap) -> Result<Vec<Poly>, HnError> {
    let ring = g.ring();
    let n = g.nvars();
    let t_trunc = g.t_trunc();
    let z_trunc = g.z_trunc();
    let mut out = Vec::with_capacity(t_trunc as usize);
    for m in 1..=t_trunc {
        // The t^m coefficient of G - id (for m >= 1, just the coefficient).
        let field: Vec<Poly> = (0..n)
            .map(|i| g.components[i].coeff(m).clone())
            .collect();
        // Euler integration: if field = grad Q then the degree-h part of
        // sum_i z_i field_i equals h * (degree-h part of Q).
        let mut s = Poly::zero(ring, n);
        for (i, fi) in field.iter().enumerate() {
            s = s.add(&Poly::variable(ring, n, i).mul(fi));
        }
        let mut q = Poly::zero(ring, n);
        if let Some(dmax) = s.degree() {
            for h in 1..=dmax {
                q = q.add(&s.homogeneous_part(h).scale_rational(1, h as i64));
            }
            if !s.homogeneous_part(0).is_zero() {
                return Err(HnError::NonSymmetricJacobian);
            }
        }
        // The candidate only integrates the field below the z-truncation;
        // verify the gradient matches there.
        for (i, fi) in field.iter().enumerate() {
            if q.diff(i).truncate_degree(z_trunc - 1) != fi.truncate_degree(z_trunc - 1) {
                return Err(HnError::NonSymmetricJacobian);
            }
        }
        out.push(q);
    }
    Ok(out)
}
