//! Homogeneous harmonic polynomials presented as sums of d-th powers of
//! isotropic linear forms, P = sum c_i <alpha_i, z>^d, the graph whose
//! edges mark non-orthogonal pairs of directions, and the matrix / trace
//! identities that decide Hessian nilpotency on the k x k level.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::HnError;
use crate::poly::{Poly, PolyMatrix};
use crate::scalar::{bilinear, Ring, Scalar};
use crate::tree::RootedTree;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicForm {
    pub c: Scalar,
    pub alpha: Vec<Scalar>,
}

/// P = sum_i c_i h_{alpha_i}^d with every alpha_i isotropic and the powers
/// h_{alpha_i}^d linearly independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicSpec {
    pub ring: Ring,
    pub n: usize,
    pub d: u32,
    pub forms: Vec<HarmonicForm>,
}

impl HarmonicSpec {
    pub fn new(
        ring: Ring,
        n: usize,
        d: u32,
        forms: Vec<HarmonicForm>,
    ) -> Result<HarmonicSpec, HnError> {
        let spec = HarmonicSpec { ring, n, d, forms };
        spec.validate()?;
        Ok(spec)
    }

    pub fn k(&self) -> usize {
        self.forms.len()
    }

    pub fn validate(&self) -> Result<(), HnError> {
        if self.d < 2 {
            return Err(HnError::DegreeTooSmall);
        }
        if self.forms.is_empty() {
            return Err(HnError::ZeroPolynomial);
        }
        for f in &self.forms {
            if f.alpha.len() != self.n {
                return Err(HnError::LengthMismatch);
            }
            if f.c.is_zero() || f.alpha.iter().all(Scalar::is_zero) {
                return Err(HnError::ZeroPolynomial);
            }
            if !bilinear(&f.alpha, &f.alpha)?.is_zero() {
                return Err(HnError::NotIsotropic);
            }
        }
        // Exact rank of the expanded powers h_i^d.
        let powers: Vec<Poly> = self
            .forms
            .iter()
            .map(|f| self.linear_form(&f.alpha).pow(self.d))
            .collect();
        let mut monos: Vec<Vec<u32>> = Vec::new();
        for p in &powers {
            for (m, _) in p.terms() {
                if !monos.contains(&m.exps) {
                    monos.push(m.exps.clone());
                }
            }
        }
        let rows: Vec<Vec<Scalar>> = powers
            .iter()
            .map(|p| monos.iter().map(|e| p.coefficient(e)).collect())
            .collect();
        if scalar_rank(rows)? != self.k() {
            return Err(HnError::DependentForms);
        }
        Ok(())
    }

    pub fn linear_form(&self, alpha: &[Scalar]) -> Poly {
        let mut p = Poly::zero(self.ring, self.n);
        for (i, a) in alpha.iter().enumerate() {
            p = p.add(&Poly::variable(self.ring, self.n, i).scalar_mul(a));
        }
        p
    }

    pub fn assemble(&self) -> Poly {
        let mut p = Poly::zero(self.ring, self.n);
        for f in &self.forms {
            p = p.add(&self.linear_form(&f.alpha).pow(self.d).scalar_mul(&f.c));
        }
        p
    }

    /// A_P = (<alpha_i, alpha_j>), k x k over scalars; diagonal vanishes
    /// by isotropy.
    pub fn a_matrix(&self) -> Result<Vec<Vec<Scalar>>, HnError> {
        let k = self.k();
        let mut m = vec![vec![Scalar::zero(self.ring); k]; k];
        for i in 0..k {
            for j in 0..k {
                m[i][j] = bilinear(&self.forms[i].alpha, &self.forms[j].alpha)?;
            }
        }
        Ok(m)
    }

    /// Psi_P = (<alpha_i, alpha_j> c_j h_{alpha_j}^{d-2}); nilpotent iff
    /// Hes P is.
    pub fn psi_matrix(&self) -> Result<PolyMatrix, HnError> {
        self.psi_shifted(0)
    }

    /// Psi_{P;j} = B^j A_P Gamma B^{d-2-j} with B = diag(h_{alpha_i}) and
    /// Gamma = diag(c_i), for 0 <= j <= d-2. All shifts share their trace
    /// powers.
    pub fn psi_shifted(&self, j: u32) -> Result<PolyMatrix, HnError> {
        if j > self.d - 2 {
            return Err(HnError::IndexOutOfRange);
        }
        let a = self.a_matrix()?;
        let k = self.k();
        let mut entries = Vec::with_capacity(k * k);
        for r in 0..k {
            let hr = self.linear_form(&self.forms[r].alpha).pow(j);
            for s in 0..k {
                let hs = self
                    .linear_form(&self.forms[s].alpha)
                    .pow(self.d - 2 - j)
                    .scalar_mul(&self.forms[s].c);
                entries.push(hr.scalar_mul(&a[r][s]).mul(&hs));
            }
        }
        PolyMatrix::new(k, k, entries)
    }

    /// Tr Hes^m(P) = (d(d-1))^m Tr Psi_{P;j}^m for every admissible shift
    /// j and every m = 1..=m_max.
    pub fn trace_identity_check(&self, m_max: u32) -> Result<bool, HnError> {
        let p = self.assemble();
        let hes = p.hessian();
        // The Hessian side does not depend on the shift; build its trace
        // powers once, incrementally.
        let mut lhs = Vec::with_capacity(m_max as usize);
        let mut hpow = hes.clone();
        for m in 1..=m_max {
            lhs.push(hpow.trace()?);
            if m < m_max {
                hpow = hpow.mul(&hes);
            }
        }
        let factor = Scalar::from_int(self.ring, (self.d as i64) * (self.d as i64 - 1));
        for j in 0..=self.d - 2 {
            let psi = self.psi_shifted(j)?;
            let mut ppow = psi.clone();
            let mut fpow = Scalar::one(self.ring);
            for m in 1..=m_max {
                fpow = fpow.try_mul(&factor)?;
                let rhs = ppow.trace()?.scalar_mul(&fpow);
                if lhs[m as usize - 1] != rhs {
                    return Ok(false);
                }
                if m < m_max {
                    ppow = ppow.mul(&psi);
                }
            }
        }
        Ok(true)
    }

    /// Hessian nilpotency decided on the k x k level: Psi_P nilpotent.
    pub fn is_hn_by_psi(&self) -> Result<bool, HnError> {
        self.psi_matrix()?.is_nilpotent()
    }

    /// The graph on [k]: i ~ j iff <alpha_i, alpha_j> != 0.
    pub fn graph(&self) -> Result<Graph, HnError> {
        let a = self.a_matrix()?;
        let k = self.k();
        let mut adj = vec![vec![false; k]; k];
        for i in 0..k {
            for j in 0..k {
                if i != j && !a[i][j].is_zero() {
                    adj[i][j] = true;
                }
            }
        }
        Ok(Graph { adj })
    }

    /// Dimension of the span of the directions alpha_i.
    pub fn span_dim(&self) -> Result<usize, HnError> {
        let rows: Vec<Vec<Scalar>> = self.forms.iter().map(|f| f.alpha.clone()).collect();
        scalar_rank(rows)
    }

    /// One sub-spec per connected component of the graph.
    pub fn split_by_components(&self) -> Result<Vec<HarmonicSpec>, HnError> {
        let comps = self.graph()?.components();
        Ok(comps
            .into_iter()
            .map(|idx| HarmonicSpec {
                ring: self.ring,
                n: self.n,
                d: self.d,
                forms: idx.into_iter().map(|i| self.forms[i].clone()).collect(),
            })
            .collect())
    }
}

/// Exact rank by Gaussian elimination.
pub fn scalar_rank(mut rows: Vec<Vec<Scalar>>) -> Result<usize, HnError> {
    let nrows = rows.len();
    if nrows == 0 {
        return Ok(0);
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        let pivot = (row..nrows).find(|&r| !rows[r][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        rows.swap(row, pivot);
        let inv = rows[row][col].inverse()?;
        for c in col..ncols {
            rows[row][c] = rows[row][c].try_mul(&inv)?;
        }
        for r in 0..nrows {
            if r == row || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for c in col..ncols {
                let d = rows[row][c].try_mul(&f)?;
                rows[r][c] = rows[r][c].try_sub(&d)?;
            }
        }
        rank += 1;
        row += 1;
        if row == nrows {
            break;
        }
    }
    Ok(rank)
}

/// Simple undirected graph on {0..k-1} via adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn k(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        let k = self.k();
        let mut e = 0;
        for i in 0..k {
            for j in i + 1..k {
                if self.adj[i][j] {
                    e += 1;
                }
            }
        }
        e
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&b| b).count()
    }

    pub fn is_edgeless(&self) -> bool {
        self.edge_count() == 0
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let k = self.k();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for s in 0..k {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in 0..k {
                    if self.adj[v][w] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Path on k >= 2 vertices: connected, k-1 edges, max degree 2.
    pub fn is_path(&self) -> bool {
        let k = self.k();
        k >= 2
            && self.is_connected()
            && self.edge_count() == k - 1
            && (0..k).all(|v| self.degree(v) <= 2)
    }

    /// Cycle: connected and 2-regular.
    pub fn is_cycle(&self) -> bool {
        let k = self.k();
        k >= 3 && self.is_connected() && (0..k).all(|v| self.degree(v) == 2)
    }

    /// Complete bipartite with part sizes {a, b} (in either order).
    pub fn is_complete_bipartite(&self, a: usize, b: usize) -> bool {
        let k = self.k();
        if k != a + b || k == 0 {
            return false;
        }
        // 2-color greedily from vertex 0; disconnected or odd-cycle
        // structures fail below.
        let mut color = vec![usize::MAX; k];
        for s in 0..k {
            if color[s] != usize::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in 0..k {
                    if self.adj[v][w] {
                        if color[w] == usize::MAX {
                            color[w] = 1 - color[v];
                            stack.push(w);
                        } else if color[w] == color[v] {
                            return false;
                        }
                    }
                }
            }
        }
        let part0 = (0..k).filter(|&v| color[v] == 0).count();
        let part1 = k - part0;
        if !((part0 == a && part1 == b) || (part0 == b && part1 == a)) {
            return false;
        }
        for i in 0..k {
            for j in i + 1..k {
                let expect = color[i] != color[j];
                if self.adj[i][j] != expect {
                    return false;
                }
            }
        }
        true
    }
}

/// Structural consequences of Hessian nilpotency for the graph, checked
/// on a concrete spec (d >= 4, P assumed HN):
/// span dimension in {1, 2, k-1, k} forces an edgeless graph; span
/// dimension k-2 with a connected graph forces K(4, k-4); the graph is
/// never a path or a cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub k: usize,
    pub span: usize,
    pub edgeless: bool,
    pub connected: bool,
    pub is_path_or_cycle: bool,
    /// None when no clause applies to this span dimension.
    pub clause_holds: Option<bool>,
    pub consistent: bool,
}

pub fn structure_report(spec: &HarmonicSpec) -> Result<StructureReport, HnError> {
    if spec.d < 4 {
        return Err(HnError::DegreeTooSmall);
    }
    if !spec.is_hn_by_psi()? {
        return Err(HnError::NotHessianNilpotent);
    }
    let g = spec.graph()?;
    let k = spec.k();
    let span = spec.span_dim()?;
    let edgeless = g.is_edgeless();
    let connected = g.is_connected();
    let is_path_or_cycle = g.is_path() || g.is_cycle();
    let clause_holds = if span == 1 || span == 2 || span + 1 == k || span == k {
        Some(edgeless)
    } else if span + 2 == k && connected {
        Some(k >= 8 && g.is_complete_bipartite(4, k - 4))
    } else {
        None
    };
    let consistent = clause_holds.unwrap_or(true) && !is_path_or_cycle;
    Ok(StructureReport {
        k,
        span,
        edgeless,
        connected,
        is_path_or_cycle,
        clause_holds,
        consistent,
    })
}

/// Connectedness reduction: P is Hessian-nilpotent iff each component sum
/// is, and the closed-form terms add over components:
/// Laplacian^m P^{m+1} = sum_i Laplacian^m P_i^{m+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    pub component_count: usize,
    pub hn_whole: bool,
    pub hn_parts: Vec<bool>,
    pub hn_equivalence: bool,
    pub closed_terms_additive: bool,
    pub potentials_additive: bool,
}

pub fn reduction_check(spec: &HarmonicSpec, m_max: u32) -> Result<ReductionReport, HnError> {
    let parts = spec.split_by_components()?;
    let p = spec.assemble();
    let hn_whole = crate::analysis::is_hn_direct(&p)?;
    let mut hn_parts = Vec::with_capacity(parts.len());
    for part in &parts {
        hn_parts.push(crate::analysis::is_hn_direct(&part.assemble())?);
    }
    let hn_equivalence = hn_whole == hn_parts.iter().all(|&b| b);

    // Laplacian^m P^{m+1} additivity over disjoint summands.
    let mut closed_terms_additive = true;
    let whole_terms = crate::inversion::closed_form_terms(&p, m_max)?;
    let part_terms: Vec<Vec<Poly>> = parts
        .iter()
        .map(|s| crate::inversion::closed_form_terms(&s.assemble(), m_max))
        .collect::<Result<_, _>>()?;
    for m in 0..m_max as usize {
        let mut acc = Poly::zero(spec.ring, spec.n);
        for pt in &part_terms {
            acc = acc.add(&pt[m]);
        }
        if acc != whole_terms[m] {
            closed_terms_additive = false;
        }
    }

    // Q_[m] additivity for disjoint summands.
    let whole_pots = crate::inversion::potentials_recursive(&p, m_max);
    let part_pots: Vec<Vec<Poly>> = parts
        .iter()
        .map(|s| crate::inversion::potentials_recursive(&s.assemble(), m_max))
        .collect();
    let mut potentials_additive = true;
    for m in 0..m_max as usize {
        let mut acc = Poly::zero(spec.ring, spec.n);
        for pp in &part_pots {
            acc = acc.add(&pp[m]);
        }
        if acc != whole_pots[m] {
            potentials_additive = false;
        }
    }

    Ok(ReductionReport {
        component_count: parts.len(),
        hn_whole,
        hn_parts,
        hn_equivalence,
        closed_terms_additive,
        potentials_additive,
    })
}

/// Pairwise gradient-orthogonality of the component sums (their direction
/// sets pair to zero across components by construction).
pub fn components_disjoint(spec: &HarmonicSpec) -> Result<bool, HnError> {
    let parts = spec.split_by_components()?;
    let polys: Vec<Poly> = parts.iter().map(HarmonicSpec::assemble).collect();
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            if !crate::analysis::gradient_pairing(&polys[i], &polys[j]).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Maps f : V(T) -> [k] sending adjacent tree vertices to distinct
/// adjacent graph vertices; only these contribute to the tree value of an
/// assembled spec. Tree vertices are numbered in preorder.
pub fn omega_maps(t: &RootedTree, g: &Graph) -> Vec<Vec<usize>> {
    let m = t.size();
    let k = g.k();
    let edges = t.edges();
    let mut out = Vec::new();
    let mut assign = vec![0usize; m];
    fn rec(
        pos: usize,
        m: usize,
        k: usize,
        edges: &[(usize, usize)],
        g: &Graph,
        assign: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == m {
            out.push(assign.clone());
            return;
        }
        'next: for c in 0..k {
            for &(a, b) in edges {
                // Check edges whose both endpoints are assigned so far.
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                if hi == pos && lo < pos {
                    let other = assign[lo];
                    if other == c || !g.adj[other][c] {
                        continue 'next;
                    }
                }
            }
            assign[pos] = c;
            rec(pos + 1, m, k, edges, g, assign, out);
        }
    }
    rec(0, m, k, &edges, g, &mut assign, &mut out);
    out
}

/// Tree value computed only over the restricted maps f in
/// Omega(T, G(P)), with vertex v carrying c_{f(v)} h_{alpha_{f(v)}}^d.
/// Must agree with the unrestricted tree value of the assembled P.
pub fn restricted_tree_value(spec: &HarmonicSpec, t: &RootedTree) -> Result<Poly, HnError> {
    let g = spec.graph()?;
    let vertex_polys: Vec<Poly> = spec
        .forms
        .iter()
        .map(|f| spec.linear_form(&f.alpha).pow(spec.d).scalar_mul(&f.c))
        .collect();
    let m = t.size();
    let edges = t.edges();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); m];
    for &(a, b) in &edges {
        children[a].push(b);
    }
    let mut acc = Poly::zero(spec.ring, spec.n);
    for f in omega_maps(t, &g) {
        let assigned: Vec<&Poly> = f.iter().map(|&i| &vertex_polys[i]).collect();
        acc = acc.add(&assigned_value(&assigned, &children, spec.n));
    }
    Ok(acc)
}

fn assigned_value(polys: &[&Poly], children: &[Vec<usize>], n: usize) -> Poly {
    assigned_contract(polys[0], 0, &children[0], polys, children, n)
}

/// contract(q, cs): sum over labels on the edges to children in cs of
/// (D_label q) times the child's subtree vector at that label.
fn assigned_contract(
    q: &Poly,
    from: usize,
    cs: &[usize],
    polys: &[&Poly],
    children: &[Vec<usize>],
    n: usize,
) -> Poly {
    match cs.split_first() {
        None => q.clone(),
        Some((&c, rest)) => {
            let mut acc = Poly::zero(q.ring(), n);
            for j in 0..n {
                let dq = q.diff(j);
                if dq.is_zero() {
                    continue;
                }
                let inner = assigned_contract(&dq, from, rest, polys, children, n);
                if inner.is_zero() {
                    continue;
                }
                let child = assigned_contract(
                    &polys[c].diff(j),
                    c,
                    &children[c],
                    polys,
                    children,
                    n,
                );
                acc = acc.add(&inner.mul(&child));
            }
            acc
        }
    }
}

impl core::fmt::Display for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let k = self.k();
        let mut edges = String::new();
        for i in 0..k {
            for j in i + 1..k {
                if self.adj[i][j] {
                    if !edges.is_empty() {
                        edges.push_str(", ");
                    }
                    edges.push_str(&alloc::format!("{}-{}", i + 1, j + 1));
                }
            }
        }
        write!(f, "vertices: {}; edges: [{}]", k, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, vec_from_ints};

    fn form(re_im: &[(i64, i64)]) -> Vec<Scalar> {
        re_im.iter().map(|&(a, b)| qi(a, 1, b, 1)).collect()
    }

    fn spec_one_form() -> HarmonicSpec {
        HarmonicSpec::new(
            Ring::Qi,
            2,
            4,
            vec![HarmonicForm {
                c: Scalar::one(Ring::Qi),
                alpha: form(&[(1, 0), (0, 1)]),
            }],
        )
        .unwrap()
    }

    fn spec_orthogonal_pair() -> HarmonicSpec {
        HarmonicSpec::new(
            Ring::Qi,
            4,
            4,
            vec![
                HarmonicForm {
                    c: Scalar::one(Ring::Qi),
                    alpha: form(&[(1, 0), (0, 1), (0, 0), (0, 0)]),
                },
                HarmonicForm {
                    c: qi(2, 1, 0, 1),
                    alpha: form(&[(0, 0), (0, 0), (1, 0), (0, 1)]),
                },
            ],
        )
        .unwrap()
    }

    fn spec_conjugate_pair() -> HarmonicSpec {
        // (1, i) and (1, -i): both isotropic, pairing is 2.
        HarmonicSpec::new(
            Ring::Qi,
            2,
            4,
            vec![
                HarmonicForm {
                    c: Scalar::one(Ring::Qi),
                    alpha: form(&[(1, 0), (0, 1)]),
                },
                HarmonicForm {
                    c: Scalar::one(Ring::Qi),
                    alpha: form(&[(1, 0), (0, -1)]),
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn validation_rejects_bad_specs() {
        // Non-isotropic direction.
        let bad = HarmonicSpec::new(
            Ring::Qi,
            2,
            3,
            vec![HarmonicForm {
                c: Scalar::one(Ring::Qi),
                alpha: form(&[(1, 0), (1, 0)]),
            }],
        );
        assert_eq!(bad.err(), Some(HnError::NotIsotropic));
        // Repeated direction: dependent powers.
        let alpha = form(&[(1, 0), (0, 1)]);
        let bad = HarmonicSpec::new(
            Ring::Qi,
            2,
            3,
            vec![
                HarmonicForm { c: Scalar::one(Ring::Qi), alpha: alpha.clone() },
                HarmonicForm { c: qi(2, 1, 0, 1), alpha },
            ],
        );
        assert_eq!(bad.err(), Some(HnError::DependentForms));
        // Degree too small.
        let bad = HarmonicSpec::new(
            Ring::Qi,
            2,
            1,
            vec![HarmonicForm {
                c: Scalar::one(Ring::Qi),
                alpha: form(&[(1, 0), (0, 1)]),
            }],
        );
        assert_eq!(bad.err(), Some(HnError::DegreeTooSmall));
    }

    #[test]
    fn assembled_specs_are_harmonic() {
        for spec in [spec_one_form(), spec_orthogonal_pair(), spec_conjugate_pair()] {
            let p = spec.assemble();
            assert!(p.laplacian().is_zero());
            assert_eq!(p.homogeneous_degree(), Some(spec.d));
        }
    }

    #[test]
    fn graph_edges_track_pairings() {
        assert!(spec_one_form().graph().unwrap().is_edgeless());
        assert!(spec_orthogonal_pair().graph().unwrap().is_edgeless());
        let g = spec_conjugate_pair().graph().unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.is_connected());
    }

    #[test]
    fn psi_nilpotency_matches_direct_criterion() {
        for spec in [spec_one_form(), spec_orthogonal_pair(), spec_conjugate_pair()] {
            let direct = crate::analysis::is_hn_direct(&spec.assemble()).unwrap();
            assert_eq!(spec.is_hn_by_psi().unwrap(), direct);
        }
        assert!(spec_orthogonal_pair().is_hn_by_psi().unwrap());
        assert!(!spec_conjugate_pair().is_hn_by_psi().unwrap());
    }

    #[test]
    fn trace_identity_holds_for_all_shifts() {
        for spec in [spec_one_form(), spec_orthogonal_pair(), spec_conjugate_pair()] {
            assert!(spec.trace_identity_check(4).unwrap());
        }
    }

    #[test]
    fn reduction_over_components() {
        let spec = spec_orthogonal_pair();
        assert!(components_disjoint(&spec).unwrap());
        let r = reduction_check(&spec, 3).unwrap();
        assert_eq!(r.component_count, 2);
        assert!(r.hn_whole);
        assert!(r.hn_equivalence);
        assert!(r.closed_terms_additive);
        assert!(r.potentials_additive);
        // Non-HN connected spec: single component, still consistent.
        let r = reduction_check(&spec_conjugate_pair(), 3).unwrap();
        assert_eq!(r.component_count, 1);
        assert!(!r.hn_whole);
        assert!(r.hn_equivalence);
    }

    #[test]
    fn structure_report_on_hn_specs() {
        // k = 1, span 1: clause forces edgeless; holds.
        let r = structure_report(&spec_one_form()).unwrap();
        assert_eq!(r.clause_holds, Some(true));
        assert!(r.consistent);
        // Orthogonal pair: span 2, k = 2 -> edgeless clause.
        let r = structure_report(&spec_orthogonal_pair()).unwrap();
        assert_eq!(r.span, 2);
        assert_eq!(r.clause_holds, Some(true));
        assert!(r.consistent);
        // Non-HN spec is refused.
        assert_eq!(
            structure_report(&spec_conjugate_pair()),
            Err(HnError::NotHessianNilpotent)
        );
    }

    #[test]
    fn graph_shape_predicates() {
        let path3 = Graph {
            adj: vec![
                vec![false, true, false],
                vec![true, false, true],
                vec![false, true, false],
            ],
        };
        assert!(path3.is_path());
        assert!(!path3.is_cycle());
        let tri = Graph {
            adj: vec![
                vec![false, true, true],
                vec![true, false, true],
                vec![true, true, false],
            ],
        };
        assert!(tri.is_cycle());
        assert!(!tri.is_path());
        // K(1,2) is the 3-path.
        assert!(path3.is_complete_bipartite(1, 2));
        assert!(!tri.is_complete_bipartite(1, 2));
    }

    #[test]
    fn restricted_tree_sum_matches_plain_tree_value() {
        // Maps outside the adjacency-restricted set contribute nothing, so the
        // restricted sum equals the direct tree value of the assembled P.
        let spec = spec_conjugate_pair();
        let p = spec.assemble();
        for m in 1..=3u32 {
            for ft in crate::tree::free_trees(m).unwrap() {
                let full = crate::tree::tree_value(&p, &ft.rooted);
                let restricted = restricted_tree_value(&spec, &ft.rooted).unwrap();
                assert_eq!(full, restricted, "tree size {}", m);
            }
        }
        // Edgeless graph: only constant maps survive on trees with edges.
        let spec = spec_orthogonal_pair();
        let g = spec.graph().unwrap();
        let star = crate::tree::free_trees(3).unwrap();
        for ft in star {
            assert!(omega_maps(&ft.rooted, &g).is_empty());
            let p = spec.assemble();
            let full = crate::tree::tree_value(&p, &ft.rooted);
            assert_eq!(full, restricted_tree_value(&spec, &ft.rooted).unwrap());
            assert!(full.is_zero());
        }
    }

    #[test]
    fn span_dim_examples() {
        assert_eq!(spec_one_form().span_dim().unwrap(), 1);
        assert_eq!(spec_orthogonal_pair().span_dim().unwrap(), 2);
        assert_eq!(spec_conjugate_pair().span_dim().unwrap(), 2);
        let rows = alloc::vec![
            vec_from_ints(Ring::Q, &[1, 2, 3]),
            vec_from_ints(Ring::Q, &[2, 4, 6]),
            vec_from_ints(Ring::Q, &[0, 1, 0]),
        ];
        assert_eq!(scalar_rank(rows).unwrap(), 2);
    }
}
