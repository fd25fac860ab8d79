//! Seeded generators for test inputs: random dense-ish polynomials and a
//! fixed catalog of harmonic-form specifications exercised by the test
//! suite and `selftest`.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::poly::Poly;
use crate::scalar::{Ring, Scalar};

fn random_scalar<R: Rng>(rng: &mut R, ring: Ring) -> Scalar {
    let num = rng.gen_range(-4i64..=4);
    let den = *[1i64, 2, 3].get(rng.gen_range(0..3usize)).unwrap();
    match ring {
        Ring::Qi => {
            let im_num = rng.gen_range(-4i64..=4);
            let re = Scalar::one(Ring::Qi).scale_rational(num, den).unwrap();
            let im = Scalar::i(Ring::Qi)
                .unwrap()
                .scale_rational(im_num, den)
                .unwrap();
            re.try_add(&im).unwrap()
        }
        _ => Scalar::from_int(ring, num)
            .scale_rational(1, den)
            .unwrap_or_else(|_| Scalar::from_int(ring, num)),
    }
}

/// Random polynomial with terms of total degree in [min_deg, max_deg];
/// roughly half of the candidate monomials get a nonzero coefficient.
pub fn random_poly<R: Rng>(
    rng: &mut R,
    ring: Ring,
    n: usize,
    max_deg: u32,
    min_deg: u32,
) -> Poly {
    let mut p = Poly::zero(ring, n);
    let mut exps = vec![0u32; n];
    loop {
        let deg: u32 = exps.iter().sum();
        if deg >= min_deg && deg <= max_deg && rng.gen_bool(0.5) {
            let c = random_scalar(rng, ring);
            p = p.add(&Poly::from_terms(ring, n, [(exps.clone(), c)]).unwrap());
        }
        // Odometer over exponent vectors of bounded degree.
        let mut pos = 0;
        loop {
            if pos == n {
                return p;
            }
            exps[pos] += 1;
            if exps.iter().sum::<u32>() <= max_deg {
                break;
            }
            exps[pos] = 0;
            pos += 1;
        }
    }
}

/// Random homogeneous polynomial of exact degree d.
pub fn random_homogeneous<R: Rng>(rng: &mut R, ring: Ring, n: usize, d: u32) -> Poly {
    let p = random_poly(rng, ring, n, d, d);
    if p.is_zero() {
        // Guarantee a nonzero output.
        let mut exps = vec![0u32; n];
        exps[0] = d;
        Poly::from_terms(ring, n, [(exps, Scalar::one(ring))]).unwrap()
    } else {
        p
    }
}

/// The standard isotropic direction pair spanning coordinates (2j, 2j+1):
/// e_{2j} + i e_{2j+1}, which pairs to zero with itself.
pub fn isotropic_axis(ring: Ring, n: usize, j: usize) -> Result<Vec<Scalar>, crate::HnError> {
    assert!(2 * j + 1 < n);
    let i = Scalar::i(ring)?;
    let mut v = vec![Scalar::zero(ring); n];
    v[2 * j] = Scalar::one(ring);
    v[2 * j + 1] = i;
    Ok(v)
}

/// A catalog entry: a harmonic-form spec plus its expected classification.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub spec: crate::graph::HarmonicSpec,
    pub expect_hn: bool,
    pub expect_self_inverting: bool,
}

fn qi_sparse(n: usize, entries: &[(usize, i64, i64)]) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(Ring::Qi); n];
    let i = Scalar::i(Ring::Qi).unwrap();
    for &(idx, re, im) in entries {
        let re_s = Scalar::from_int(Ring::Qi, re);
        let im_s = i.clone().scale_rational(im, 1).unwrap();
        v[idx] = re_s.try_add(&im_s).unwrap();
    }
    v
}

fn entry(
    name: &'static str,
    n: usize,
    d: u32,
    forms: Vec<(Vec<Scalar>, i64, i64)>,
    expect_hn: bool,
    expect_self_inverting: bool,
) -> CorpusEntry {
    use crate::graph::{HarmonicForm, HarmonicSpec};
    let i = Scalar::i(Ring::Qi).unwrap();
    let forms = forms
        .into_iter()
        .map(|(alpha, cre, cim)| HarmonicForm {
            c: Scalar::from_int(Ring::Qi, cre)
                .try_add(&i.clone().scale_rational(cim, 1).unwrap())
                .unwrap(),
            alpha,
        })
        .collect();
    CorpusEntry {
        name,
        spec: HarmonicSpec::new(Ring::Qi, n, d, forms).expect(name),
        expect_hn,
        expect_self_inverting,
    }
}

/// Fixed catalog of harmonic polynomials built from isotropic linear
/// forms: orthogonal families (Hessian-nilpotent and self-inverting),
/// families within a single isotropic span, and conjugate pairs whose
/// directions pair non-trivially (harmonic but not Hessian-nilpotent).
pub fn standard_corpus() -> Vec<CorpusEntry> {
    // Pairwise orthogonal isotropic base directions in blocks of two
    // coordinates: v_j = e_{2j} + i e_{2j+1}.
    let v = |n: usize, j: usize| qi_sparse(n, &[(2 * j, 1, 0), (2 * j + 1, 0, 1)]);
    // The conjugate of v_j, pairing 2 with v_j.
    let w = |n: usize, j: usize| qi_sparse(n, &[(2 * j, 1, 0), (2 * j + 1, 0, -1)]);
    // Combination a v_0 + b v_1 inside one isotropic span (n >= 4).
    let combo = |n: usize, a: i64, b: i64| {
        qi_sparse(n, &[(0, a, 0), (1, 0, a), (2, b, 0), (3, 0, b)])
    };
    alloc::vec![
        entry("single-cubic", 2, 3, alloc::vec![(v(2, 0), 1, 0)], true, true),
        entry("single-quartic", 2, 4, alloc::vec![(v(2, 0), 1, 0)], true, true),
        entry(
            "single-quartic-complex-coeff",
            2,
            4,
            alloc::vec![(v(2, 0), 2, 3)],
            true,
            true
        ),
        entry(
            "orthogonal-pair-cubic",
            4,
            3,
            alloc::vec![(v(4, 0), 1, 0), (v(4, 1), 1, 0)],
            true,
            true
        ),
        entry(
            "orthogonal-pair-quartic",
            4,
            4,
            alloc::vec![(v(4, 0), 1, 0), (v(4, 1), 2, 1)],
            true,
            true
        ),
        entry(
            "orthogonal-triple-cubic",
            6,
            3,
            alloc::vec![(v(6, 0), 1, 0), (v(6, 1), 1, 0), (v(6, 2), 3, 0)],
            true,
            true
        ),
        entry(
            "orthogonal-triple-quartic",
            6,
            4,
            alloc::vec![(v(6, 0), 1, 0), (v(6, 1), -1, 0), (v(6, 2), 0, 1)],
            true,
            true
        ),
        entry(
            "span-triple-cubic",
            4,
            3,
            alloc::vec![
                (combo(4, 1, 1), 1, 0),
                (combo(4, 1, -1), 1, 0),
                (combo(4, 1, 2), -2, 0)
            ],
            true,
            true
        ),
        entry(
            "span-quadruple-quartic",
            4,
            4,
            alloc::vec![
                (combo(4, 1, 0), 1, 0),
                (combo(4, 0, 1), 1, 0),
                (combo(4, 1, 1), 1, 0),
                (combo(4, 1, -1), 1, 0)
            ],
            true,
            true
        ),
        entry(
            "conjugate-pair-cubic",
            2,
            3,
            alloc::vec![(v(2, 0), 1, 0), (w(2, 0), 1, 0)],
            false,
            false
        ),
        entry(
            "conjugate-pair-quartic",
            2,
            4,
            alloc::vec![(v(2, 0), 1, 0), (w(2, 0), 1, 0)],
            false,
            false
        ),
        entry(
            "conjugate-pair-signed",
            2,
            4,
            alloc::vec![(v(2, 0), 1, 0), (w(2, 0), -1, 0)],
            false,
            false
        ),
        entry(
            "mixed-components-quartic",
            4,
            4,
            alloc::vec![(v(4, 0), 1, 0), (w(4, 0), 1, 0), (v(4, 1), 1, 0)],
            false,
            false
        ),
        entry(
            "mixed-components-sextuple",
            6,
            4,
            alloc::vec![(v(6, 0), 1, 0), (w(6, 0), 2, 0), (v(6, 2), 1, 0)],
            false,
            false
        ),
        entry("single-cubic-offset-block", 4, 3, alloc::vec![(v(4, 1), 1, 0)], true, true),
        entry(
            "orthogonal-pair-cubic-coeffs",
            4,
            3,
            alloc::vec![(v(4, 0), 3, 0), (v(4, 1), -2, 1)],
            true,
            true
        ),
        entry(
            "span-pair-quartic",
            4,
            4,
            alloc::vec![(combo(4, 1, 1), 1, 0), (combo(4, 2, -1), 1, 0)],
            true,
            true
        ),
        entry(
            "conjugate-pair-complex-coeff",
            2,
            3,
            alloc::vec![(v(2, 0), 1, 0), (w(2, 0), 0, 1)],
            false,
            false
        ),
        entry(
            "orthogonal-quadruple-quartic",
            6,
            4,
            alloc::vec![
                (v(6, 0), 1, 0),
                (v(6, 1), 1, 0),
                (v(6, 2), 1, 0),
                (combo(6, 1, 1), 1, 0)
            ],
            true,
            true
        ),
        entry(
            "mixed-span-conjugate-cubic",
            4,
            3,
            alloc::vec![(v(4, 0), 1, 0), (w(4, 0), 1, 0), (v(4, 1), 1, 0)],
            false,
            false
        ),
    ]
}

/// Random isotropic vector in n = 2 * blocks variables: a combination
/// sum_j c_j v_j + d_j w_j of the block direction v_j = e_{2j} + i e_{2j+1}
/// and its conjugate w_j, with the last d chosen so the self-pairing
/// (which equals 4 sum_j c_j d_j) vanishes.
pub fn random_isotropic<R: Rng>(rng: &mut R, blocks: usize) -> Vec<Scalar> {
    assert!(blocks >= 1);
    let ring = Ring::Qi;
    loop {
        let c: Vec<i64> = (0..blocks).map(|_| rng.gen_range(-3i64..=3)).collect();
        let d_head: Vec<i64> = (0..blocks - 1).map(|_| rng.gen_range(-3i64..=3)).collect();
        if c[blocks - 1] == 0 {
            continue;
        }
        let dot: i64 = c.iter().zip(d_head.iter()).map(|(a, b)| a * b).sum();
        // d_last = -dot / c_last, exact as a rational.
        let d_last = Scalar::from_int(ring, -dot)
            .try_div(&Scalar::from_int(ring, c[blocks - 1]))
            .unwrap();
        let i = Scalar::i(ring).unwrap();
        let mut alpha = vec![Scalar::zero(ring); 2 * blocks];
        for j in 0..blocks {
            let cj = Scalar::from_int(ring, c[j]);
            let dj = if j + 1 < blocks {
                Scalar::from_int(ring, d_head[j])
            } else {
                d_last.clone()
            };
            // alpha_{2j} = c_j + d_j, alpha_{2j+1} = i (c_j - d_j)
            alpha[2 * j] = cj.try_add(&dj).unwrap();
            alpha[2 * j + 1] = i.try_mul(&cj.try_sub(&dj).unwrap()).unwrap();
        }
        if alpha.iter().all(Scalar::is_zero) {
            continue;
        }
        // Half the time flip to the conjugate direction (negating the
        // odd coordinates preserves the self-pairing). Without this, a
        // single block could only ever produce multiples of e_0 + i e_1.
        if rng.gen_bool(0.5) {
            for j in 0..blocks {
                alpha[2 * j + 1] = alpha[2 * j + 1].neg();
            }
        }
        debug_assert!(crate::scalar::bilinear(&alpha, &alpha).unwrap().is_zero());
        return alpha;
    }
}

/// Random valid harmonic-form spec with k isotropic directions in
/// n = 2 * blocks variables; retries until the powers are independent.
pub fn random_harmonic_spec<R: Rng>(
    rng: &mut R,
    blocks: usize,
    d: u32,
    k: usize,
) -> crate::graph::HarmonicSpec {
    use crate::graph::{HarmonicForm, HarmonicSpec};
    // Only 2*blocks independent isotropic powers exist, so more forms
    // than that can never pass the independence check.
    assert!(k <= 2 * blocks, "k must be at most 2 * blocks");
    let ring = Ring::Qi;
    loop {
        let forms: Vec<HarmonicForm> = (0..k)
            .map(|_| HarmonicForm {
                c: Scalar::from_int(ring, *[1, 2, -1, 3].get(rng.gen_range(0..4usize)).unwrap()),
                alpha: random_isotropic(rng, blocks),
            })
            .collect();
        if let Ok(spec) = HarmonicSpec::new(ring, 2 * blocks, d, forms) {
            return spec;
        }
    }
}

/// Twenty fixed specs whose graphs are edgeless by construction: each
/// form lives in its own coordinate block, so the summands are pairwise
/// disjoint and the whole is Hessian-nilpotent.
pub fn orthogonal_block_specs() -> Vec<crate::graph::HarmonicSpec> {
    use crate::graph::{HarmonicForm, HarmonicSpec};
    let ring = Ring::Qi;
    let mut out = Vec::with_capacity(20);
    let mut c_seed = 1i64;
    for idx in 0..20usize {
        let blocks = 2 + idx % 2;
        let n = 2 * blocks;
        let d = 3 + ((idx / 2) % 2) as u32;
        let forms: Vec<HarmonicForm> = (0..blocks)
            .map(|j| {
                c_seed = (c_seed % 5) + 1;
                HarmonicForm {
                    c: Scalar::from_int(ring, c_seed),
                    alpha: isotropic_axis(ring, n, j).unwrap(),
                }
            })
            .collect();
        out.push(HarmonicSpec::new(ring, n, d, forms).unwrap());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::bilinear;
    use rand::rngs::SmallRng;
    use rand::SeedableRng;

    #[test]
    fn corpus_expectations_hold() {
        for e in standard_corpus() {
            let p = e.spec.assemble();
            assert!(p.laplacian().is_zero(), "{} not harmonic", e.name);
            assert_eq!(
                crate::analysis::is_hn_direct(&p).unwrap(),
                e.expect_hn,
                "{} hn mismatch",
                e.name
            );
            assert_eq!(
                e.spec.is_hn_by_psi().unwrap(),
                e.expect_hn,
                "{} psi mismatch",
                e.name
            );
            assert_eq!(
                crate::analysis::is_self_inverting(&p).unwrap(),
                e.expect_self_inverting,
                "{} self-inversion mismatch",
                e.name
            );
        }
    }

    #[test]
    fn random_poly_respects_bounds() {
        let mut rng = SmallRng::seed_from_u64(3);
        for _ in 0..20 {
            let p = random_poly(&mut rng, Ring::Q, 3, 4, 2);
            if let Some(d) = p.degree() {
                assert!(d <= 4);
                assert!(p.order().unwrap() >= 2);
            }
        }
    }

    #[test]
    fn random_homogeneous_is_homogeneous() {
        let mut rng = SmallRng::seed_from_u64(5);
        for _ in 0..20 {
            let p = random_homogeneous(&mut rng, Ring::Qi, 4, 3);
            assert_eq!(p.homogeneous_degree(), Some(3));
        }
    }

    #[test]
    fn corpus_has_twenty_entries_within_limits() {
        let corpus = standard_corpus();
        assert_eq!(corpus.len(), 20);
        for e in &corpus {
            assert!(e.spec.n <= 6);
            assert!(e.spec.d == 3 || e.spec.d == 4);
            assert!(e.spec.k() <= 4);
        }
        let blocks = orthogonal_block_specs();
        assert_eq!(blocks.len(), 20);
        for s in &blocks {
            assert!(s.graph().unwrap().is_edgeless());
        }
    }

    #[test]
    fn random_isotropic_vectors_are_isotropic() {
        let mut rng = SmallRng::seed_from_u64(79);
        for _ in 0..50 {
            let blocks = rng.gen_range(1..=3usize);
            let a = random_isotropic(&mut rng, blocks);
            assert!(bilinear(&a, &a).unwrap().is_zero());
        }
        let mut rng = SmallRng::seed_from_u64(83);
        let spec = random_harmonic_spec(&mut rng, 2, 3, 2);
        assert!(spec.validate().is_ok());
    }

    #[test]
    fn isotropic_axis_pairs_to_zero() {
        let v = isotropic_axis(Ring::Qi, 6, 1).unwrap();
        assert!(bilinear(&v, &v).unwrap().is_zero());
    }
}
