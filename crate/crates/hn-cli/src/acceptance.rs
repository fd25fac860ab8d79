//! Self-test suite: twelve independent checks covering inversion,
//! composition, the nilpotency criteria, graph trace identities, slices,
//! disjoint additivity, self-inversion, the sigma functional equations,
//! characteristic-p vanishing, tree machinery, numeric bounds and IO
//! round-trips. Shared by `hn selftest` and the integration tests.

use hn_core::graph;
use hn_core::tree::{free_trees, RootedTree};
use hn_core::{analysis, charp, corpus, inversion, series, Poly, Ring, Scalar};
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

use crate::numeric::{self, NumericPoly};
use crate::parse::parse_poly;

pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub run: fn(u64) -> Result<(), String>,
}

pub fn all() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, name: "inversion methods agree on the fixed corpus", run: c01_inversion_agreement },
        Criterion { id: 2, name: "forward and inverse maps compose to the identity", run: c02_composition_identity },
        Criterion { id: 3, name: "nilpotency criteria are equivalent on random inputs", run: c03_criteria_equivalence },
        Criterion { id: 4, name: "Hessian trace powers match the form-matrix traces", run: c04_trace_identity },
        Criterion { id: 5, name: "directional slices have evaluated Hessians", run: c05_slice_hessian },
        Criterion { id: 6, name: "disjoint summands add component-wise", run: c06_disjoint_additivity },
        Criterion { id: 7, name: "self-inverting members have trivial higher terms", run: c07_self_inverting },
        Criterion { id: 8, name: "sigma functions satisfy their functional equations", run: c08_sigma_equations },
        Criterion { id: 9, name: "iterated Laplacians vanish past the char-p threshold", run: c09_charp_vanishing },
        Criterion { id: 10, name: "tree counts, automorphisms and restricted values", run: c10_tree_machinery },
        Criterion { id: 11, name: "numeric growth bounds and sup-norm recovery", run: c11_numeric_bounds },
        Criterion { id: 12, name: "parse/print round-trips in every ring", run: c12_round_trip },
    ]
}

/// Run every criterion, printing one line each; returns true iff all pass.
pub fn run_all(seed: u64, mut out: impl FnMut(&str)) -> bool {
    let mut ok = true;
    for c in all() {
        match (c.run)(seed) {
            Ok(()) => out(&format!("PASS {:>2}: {}", c.id, c.name)),
            Err(e) => {
                ok = false;
                out(&format!("FAIL {:>2}: {} -- {}", c.id, c.name, e));
            }
        }
    }
    ok
}

fn err<T>(msg: String) -> Result<T, String> {
    Err(msg)
}

fn z_trunc_for(d: u32, m_max: u32) -> u32 {
    m_max * (d - 2) + 2
}

// Criterion 1: Q_[1..5] computed by the Newton-style recursion, by the
// sum over unlabeled trees, and by direct power-series inversion of
// z - t grad P agree exactly on all 20 fixed corpus entries; on the
// Hessian-nilpotent members the iterated-Laplacian closed form agrees
// as well.
fn c01_inversion_agreement(_seed: u64) -> Result<(), String> {
    const M: u32 = 5;
    for e in corpus::standard_corpus() {
        let p = e.spec.assemble();
        let zt = z_trunc_for(e.spec.d, M);
        let by_rec = inversion::potentials_recursive(&p, M);
        let by_tree = inversion::potentials_by_trees(&p, M).map_err(|x| x.to_string())?;
        let by_inv =
            inversion::potentials_by_inversion(&p, M, zt).map_err(|x| x.to_string())?;
        if by_rec != by_tree {
            return err(format!("{}: recursion vs trees", e.name));
        }
        if by_rec != by_inv {
            return err(format!("{}: recursion vs map inversion", e.name));
        }
        if e.expect_hn {
            let by_closed =
                inversion::potentials_closed_hn(&p, M).map_err(|x| x.to_string())?;
            if by_rec != by_closed {
                return err(format!("{}: recursion vs closed form", e.name));
            }
        }
    }
    Ok(())
}

// Criterion 2: F_t o G_t = id and G_t o F_t = id through z-degree 11,
// exactly in every t coefficient, on the same corpus.
fn c02_composition_identity(_seed: u64) -> Result<(), String> {
    const M: u32 = 5;
    for e in corpus::standard_corpus() {
        let p = e.spec.assemble();
        let zt = z_trunc_for(e.spec.d, M).max(11);
        let pair = inversion::inversion_pair(&p, M, zt).map_err(|x| x.to_string())?;
        let fg = series::compose_map(&pair.forward, &pair.inverse)
            .map_err(|x| x.to_string())?;
        if !fg.is_identity() {
            return err(format!("{}: F(G) != id", e.name));
        }
        let gf = series::compose_map(&pair.inverse, &pair.forward)
            .map_err(|x| x.to_string())?;
        if !gf.is_identity() {
            return err(format!("{}: G(F) != id", e.name));
        }
    }
    Ok(())
}

// Criterion 3: on 500 random polynomials (n <= 4, deg <= 4, order >= 2),
// nilpotency of the Hessian matrix is equivalent to the vanishing of
// Laplacian^m P^m for 1 <= m <= n — zero mismatches. Known nilpotent
// inputs from the corpus are mixed in so both truth values occur.
fn c03_criteria_equivalence(seed: u64) -> Result<(), String> {
    let mut rng = SmallRng::seed_from_u64(seed ^ 0x03);
    let mut inputs: Vec<Poly> = Vec::new();
    for _ in 0..500 {
        let ring = if rng.gen_bool(0.5) { Ring::Q } else { Ring::Qi };
        let n = rng.gen_range(1..=4usize);
        let p = corpus::random_poly(&mut rng, ring, n, 4, 2);
        if !p.is_zero() {
            inputs.push(p);
        }
    }
    for e in corpus::standard_corpus() {
        if e.spec.n <= 4 && e.spec.d <= 4 {
            inputs.push(e.spec.assemble());
        }
    }
    let mut saw_true = false;
    for p in &inputs {
        let direct = analysis::is_hn_direct(p).map_err(|x| x.to_string())?;
        let mut by_powers = true;
        for m in 1..=p.nvars() as u32 {
            let mut q = p.pow(m);
            for _ in 0..m {
                q = q.laplacian();
            }
            if !q.is_zero() {
                by_powers = false;
                break;
            }
        }
        if direct != by_powers {
            return err(format!("mismatch on {}", p));
        }
        saw_true |= direct;
    }
    if !saw_true {
        return err("no nilpotent input exercised the equivalence".into());
    }
    Ok(())
}

// Criterion 4: Tr Hes^m(P) = (d(d-1))^m Tr Psi^m for m <= 4 on 50 random
// isotropic-form specs, including every shifted variant Psi_{P;j},
// 0 <= j <= d-2.
fn c04_trace_identity(seed: u64) -> Result<(), String> {
    let mut rng = SmallRng::seed_from_u64(seed ^ 0x04);
    for case in 0..50 {
        let blocks = rng.gen_range(1..=3usize);
        let d = rng.gen_range(3..=4u32);
        // at most 2*blocks independent isotropic powers exist
        let k = rng.gen_range(1..=3usize.min(2 * blocks));
        let spec = corpus::random_harmonic_spec(&mut rng, blocks, d, k);
        if !spec.trace_identity_check(4).map_err(|x| x.to_string())? {
            return err(format!("case {}: trace identity failed (n={}, d={}, k={})",
                case, spec.n, spec.d, spec.k()));
        }
    }
    Ok(())
}

// Criterion 5: for homogeneous P of degree d and direction beta, the
// Hessian of the slice (beta . D)^{d-2} P equals (d-2)! times the
// Hessian of P evaluated at beta — 100 random pairs, d in {2,3,4,5}.
fn c05_slice_hessian(seed: u64) -> Result<(), String> {
    let mut rng = SmallRng::seed_from_u64(seed ^ 0x05);
    for case in 0..100 {
        let ring = if rng.gen_bool(0.5) { Ring::Q } else { Ring::Qi };
        let n = rng.gen_range(2..=4usize);
        let d = rng.gen_range(2..=5u32);
        let p = corpus::random_homogeneous(&mut rng, ring, n, d);
        if p.is_zero() {
            continue;
        }
        let beta: Vec<Scalar> = (0..n)
            .map(|_| Scalar::from_int(ring, rng.gen_range(-3..=3i64)))
            .collect();
        if !analysis::slice_hessian_check(&p, &beta).map_err(|x| x.to_string())? {
            return err(format!("case {}: slice identity failed (n={}, d={})", case, n, d));
        }
    }
    Ok(())
}

// Criterion 6: on 20 specs whose summands live in pairwise-orthogonal
// coordinate blocks, nilpotency holds iff it holds per component, and
// both the closed-form terms and the potentials Q_[1..5] add up
// component-wise; the components test as disjoint.
fn c06_disjoint_additivity(_seed: u64) -> Result<(), String> {
    for (idx, spec) in corpus::orthogonal_block_specs().iter().enumerate() {
        if !graph::components_disjoint(spec).map_err(|x| x.to_string())? {
            return err(format!("spec {}: components not disjoint", idx));
        }
        let r = graph::reduction_check(spec, 5).map_err(|x| x.to_string())?;
        if !r.hn_equivalence {
            return err(format!("spec {}: nilpotency not equivalent per component", idx));
        }
        if !r.closed_terms_additive {
            return err(format!("spec {}: closed-form terms not additive", idx));
        }
        if !r.potentials_additive {
            return err(format!("spec {}: potentials not additive", idx));
        }
    }
    Ok(())
}

// Criterion 7: every self-inverting corpus member has grad-pairing zero
// and Q_[m] = 0 exactly for 2 <= m <= 6; every other member shows a
// nonzero Q_[m] by m = 3 and fails the pairing test.
fn c07_self_inverting(_seed: u64) -> Result<(), String> {
    for e in corpus::standard_corpus() {
        let p = e.spec.assemble();
        let self_inv = analysis::is_self_inverting(&p).map_err(|x| x.to_string())?;
        if self_inv != e.expect_self_inverting {
            return err(format!("{}: pairing test disagrees with catalog", e.name));
        }
        if e.expect_self_inverting {
            let q = inversion::potentials_recursive(&p, 6);
            if q[1..].iter().any(|qm| !qm.is_zero()) {
                return err(format!("{}: higher potential term nonzero", e.name));
            }
        } else {
            let q = inversion::potentials_recursive(&p, 3);
            if q[1..].iter().all(|qm| qm.is_zero()) {
                return err(format!("{}: all potential terms vanish up to m=3", e.name));
            }
        }
    }
    Ok(())
}

// Criterion 8: U_t(F_t) = P, V_t(F_t) = sigma_2/2 - tP, W_t(F_t) =
// sigma_2 through degree 11; W_t = 2V_t + 2tU_t exactly; and on the
// nilpotent members the homogeneous closed-form coefficients match the
// general recursion exactly.
fn c08_sigma_equations(_seed: u64) -> Result<(), String> {
    const M: u32 = 4;
    for e in corpus::standard_corpus() {
        let p = e.spec.assemble();
        let zt = z_trunc_for(e.spec.d, M + 1).max(11);
        let sf = inversion::sigma_functions(&p, M);
        if !inversion::sigma_composition_check(&p, &sf, zt).map_err(|x| x.to_string())? {
            return err(format!("{}: functional equations failed", e.name));
        }
        if e.expect_hn {
            let closed = inversion::sigma_functions_hn(&p, M).map_err(|x| x.to_string())?;
            if closed.u != sf.u || closed.v != sf.v || closed.w != sf.w {
                return err(format!("{}: closed-form sigma terms differ", e.name));
            }
        }
    }
    Ok(())
}

// Criterion 9: over F_p, Laplacian^m P^{m+1} = 0 for every
// m >= ceil(d(p-1)/2) — zero failures on 200 random polynomials for
// each p in {2,3,5}, n <= 3, deg <= 4.
fn c09_charp_vanishing(seed: u64) -> Result<(), String> {
    let mut rng = SmallRng::seed_from_u64(seed ^ 0x09);
    for p in [2u64, 3, 5] {
        let ring = Ring::Fp(p);
        let mut done = 0;
        while done < 200 {
            let n = rng.gen_range(1..=3usize);
            let poly = corpus::random_poly(&mut rng, ring, n, 4, 0);
            if poly.is_zero() || poly.degree() == Some(0) {
                continue;
            }
            done += 1;
            let report = charp::vc_charp(&poly, 2).map_err(|x| x.to_string())?;
            if !report.holds {
                return err(format!(
                    "p={}: vanishing failed past threshold {} on {}",
                    p, report.threshold, poly
                ));
            }
        }
    }
    Ok(())
}

fn brute_force_aut(edges: &[(usize, usize)], m: usize) -> u64 {
    // Count permutations of the vertex set preserving the edge set.
    let mut adj = vec![vec![false; m]; m];
    for &(a, b) in edges {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut perm: Vec<usize> = (0..m).collect();
    let mut count = 0u64;
    // Heap's algorithm.
    let mut c = vec![0usize; m];
    let mut check = |perm: &[usize]| {
        let ok = edges.iter().all(|&(a, b)| adj[perm[a]][perm[b]]);
        if ok {
            count += 1;
        }
    };
    check(&perm);
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            check(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    count
}

// Criterion 10: unlabeled tree counts are 1,1,1,2,3,6,11,23,47 for
// 1..=9 vertices; the structural automorphism count matches a
// permutation brute force for every tree with <= 7 vertices; and the
// adjacency-restricted expansion of a tree term over a spec's graph
// equals the unrestricted value on 30 random spec/tree pairs.
fn c10_tree_machinery(seed: u64) -> Result<(), String> {
    let expected = [1usize, 1, 1, 2, 3, 6, 11, 23, 47];
    for m in 1..=9u32 {
        let trees = free_trees(m).map_err(|x| x.to_string())?;
        if trees.len() != expected[m as usize - 1] {
            return err(format!("free tree count at m={}: {} != {}", m, trees.len(), expected[m as usize - 1]));
        }
        if m <= 7 {
            for t in &trees {
                let edges = t.rooted.edges();
                let brute = brute_force_aut(&edges, m as usize);
                if brute != t.aut {
                    return err(format!("m={}: |Aut| {} != brute force {}", m, t.aut, brute));
                }
            }
        }
    }
    let mut rng = SmallRng::seed_from_u64(seed ^ 0x10);
    let mut pool: Vec<RootedTree> = Vec::new();
    for m in 1..=4u32 {
        pool.extend(free_trees(m).map_err(|x| x.to_string())?.into_iter().map(|t| t.rooted));
    }
    for case in 0..30 {
        let blocks = rng.gen_range(1..=2usize);
        let d = rng.gen_range(3..=4u32);
        let k = rng.gen_range(1..=3usize.min(2 * blocks));
        let spec = corpus::random_harmonic_spec(&mut rng, blocks, d, k);
        let t = &pool[rng.gen_range(0..pool.len())];
        let p = spec.assemble();
        let restricted =
            graph::restricted_tree_value(&spec, t).map_err(|x| x.to_string())?;
        let plain = hn_core::tree::tree_value(&p, t);
        if restricted != plain {
            return err(format!("case {}: restricted tree value differs (|T|={})", case, t.size()));
        }
    }
    Ok(())
}

// Criterion 11: the growth bound on Q_[m] over the ball B(0,r) holds at
// 1000 sampled points per corpus entry (absolute tolerance 1e-9); the
// multi-index factorial bound is exact for m, n <= 8; and the sup-norm
// estimator recovers the analytic values 4 for (z1+iz2)^4 and 1 for
// sigma_2 within 1% relative error.
fn c11_numeric_bounds(seed: u64) -> Result<(), String> {
    for (idx, e) in corpus::standard_corpus().iter().enumerate() {
        let p = e.spec.assemble();
        let checks = numeric::potential_bound_check(&p, 4, 0.1, 1000, 1e-9, seed ^ idx as u64)
            .map_err(|x| x.to_string())?;
        if let Some(c) = checks.iter().find(|c| !c.holds) {
            return err(format!(
                "{}: bound violated at m={} ({} > {})",
                e.name, c.m, c.observed, c.bound
            ));
        }
    }
    for n in 1..=8usize {
        for m in 0..=8u64 {
            let (lhs, rhs, holds) = numeric::factorial_sum_check(m, n);
            if !holds {
                return err(format!("factorial bound failed at m={}, n={}: {} > {}", m, n, lhs, rhs));
            }
        }
    }
    let quartic = parse_poly("(z1+i*z2)^4", None).map_err(|x| x.to_string())?;
    let s = numeric::sup_norm(&NumericPoly::from_poly(&quartic).map_err(|x| x.to_string())?, 60, seed ^ 0x11);
    if (s - 4.0).abs() / 4.0 > 0.01 {
        return err(format!("sup norm of (z1+iz2)^4: {} (want 4 within 1%)", s));
    }
    let sigma = Poly::sigma2(Ring::Q, 3);
    let s2 = numeric::sup_norm(&NumericPoly::from_poly(&sigma).map_err(|x| x.to_string())?, 60, seed ^ 0x12);
    if (s2 - 1.0).abs() > 0.01 {
        return err(format!("sup norm of sigma_2: {} (want 1 within 1%)", s2));
    }
    Ok(())
}

// Criterion 12: parse(print(P)) = P on 1000 random polynomials across
// the rationals, Gaussian rationals and prime fields.
fn c12_round_trip(seed: u64) -> Result<(), String> {
    let mut rng = SmallRng::seed_from_u64(seed ^ 0x12);
    let rings = [Ring::Q, Ring::Qi, Ring::Fp(2), Ring::Fp(5), Ring::Fp(13), Ring::Fp2(7)];
    let mut done = 0;
    while done < 1000 {
        let ring = rings[rng.gen_range(0..rings.len())];
        let n = rng.gen_range(1..=4usize);
        let p = corpus::random_poly(&mut rng, ring, n, 4, 0);
        if p.is_zero() {
            continue;
        }
        done += 1;
        let printed = format!("{}", p);
        let reparsed = parse_poly(&printed, Some(n))
            .map_err(|x| format!("{}: {}", printed, x))?
            .promote(ring)
            .map_err(|x| x.to_string())?;
        if reparsed != p {
            return err(format!("round trip changed {}", printed));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    // The full suite runs in the dedicated integration-test target; here
    // we only check the harness shape.
    #[test]
    fn suite_is_complete_and_ordered() {
        let cs = super::all();
        assert_eq!(cs.len(), 12);
        for (i, c) in cs.iter().enumerate() {
            assert_eq!(c.id, i + 1);
        }
    }
}
