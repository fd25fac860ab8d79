//! File formats: JSON for polynomials and harmonic-form specs, DOT for
//! graphs, CSV for numeric tables.

use hn_core::graph::{Graph, HarmonicForm, HarmonicSpec};
use hn_core::{HnError, Poly, Ring, Scalar};
use serde::{Deserialize, Serialize};

use crate::parse::{parse_scalar, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Ring(#[from] HnError),
    #[error("unknown ring tag '{0}' (expected Q, QI, Fp(p) or Fp2(p))")]
    BadRingTag(String),
    #[error("{0}")]
    BadInput(String),
}

pub fn ring_tag(ring: Ring) -> String {
    match ring {
        Ring::Q => "Q".to_string(),
        Ring::Qi => "QI".to_string(),
        Ring::Fp(p) => format!("Fp({})", p),
        Ring::Fp2(p) => format!("Fp2({})", p),
    }
}

pub fn parse_ring_tag(tag: &str) -> Result<Ring, IoError> {
    let t = tag.trim();
    if t == "Q" {
        return Ok(Ring::Q);
    }
    if t.eq_ignore_ascii_case("QI") {
        return Ok(Ring::Qi);
    }
    for (prefix, ext) in [("Fp(", false), ("Fp2(", true)] {
        if let Some(rest) = t.strip_prefix(prefix) {
            if let Some(num) = rest.strip_suffix(')') {
                let p: u64 = num
                    .parse()
                    .map_err(|_| IoError::BadRingTag(tag.to_string()))?;
                let ring = Ring::fp(p)?;
                return if ext { Ok(Ring::fp_with_i(p)?) } else { Ok(ring) };
            }
        }
    }
    Err(IoError::BadRingTag(tag.to_string()))
}

/// One monomial: exponent vector plus coefficient as exact strings.
#[derive(Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub re: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: usize,
    pub ring: String,
    pub terms: Vec<TermJson>,
}

fn scalar_parts(s: &Scalar) -> (String, Option<String>) {
    match s {
        Scalar::Q(a) => (a.to_string(), None),
        Scalar::Qi(a, b) => (a.to_string(), Some(b.to_string())),
        Scalar::Fp { v, .. } => (v.to_string(), None),
        Scalar::Fp2 { re, im, .. } => (re.to_string(), Some(im.to_string())),
    }
}

fn scalar_from_parts(ring: Ring, re: &str, im: Option<&str>) -> Result<Scalar, IoError> {
    let mut s = parse_scalar(re, ring)?;
    if let Some(im) = im {
        let b = parse_scalar(im, ring)?;
        if !b.is_zero() {
            let i = Scalar::i(ring)?;
            s = s.try_add(&b.try_mul(&i)?)?;
        }
    }
    Ok(s)
}

pub fn poly_to_json(p: &Poly) -> PolyJson {
    let terms = p
        .terms()
        .map(|(m, c)| {
            let (re, im) = scalar_parts(c);
            TermJson { exp: m.exps.clone(), re, im }
        })
        .collect();
    PolyJson { n: p.nvars(), ring: ring_tag(p.ring()), terms }
}

pub fn poly_from_json(j: &PolyJson) -> Result<Poly, IoError> {
    let ring = parse_ring_tag(&j.ring)?;
    let mut terms = Vec::with_capacity(j.terms.len());
    for t in &j.terms {
        if t.exp.len() != j.n {
            return Err(IoError::BadInput(format!(
                "term exponent vector has length {}, expected {}",
                t.exp.len(),
                j.n
            )));
        }
        let c = scalar_from_parts(ring, &t.re, t.im.as_deref())?;
        terms.push((t.exp.clone(), c));
    }
    Ok(Poly::from_terms(ring, j.n, terms)?)
}

pub fn poly_to_string(p: &Poly) -> String {
    serde_json::to_string_pretty(&poly_to_json(p)).expect("poly serializes")
}

pub fn poly_from_str(s: &str) -> Result<Poly, IoError> {
    let j: PolyJson = serde_json::from_str(s)?;
    poly_from_json(&j)
}

/// One summand c * (alpha . z)^d; entries are scalar expressions in the
/// text grammar, e.g. "1", "i", "-3/2".
#[derive(Debug, Serialize, Deserialize)]
pub struct FormJson {
    pub c: String,
    pub alpha: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SpecJson {
    pub n: usize,
    pub d: u32,
    /// Defaults to Gaussian rationals when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    pub forms: Vec<FormJson>,
}

pub fn spec_to_json(spec: &HarmonicSpec) -> SpecJson {
    let forms = spec
        .forms
        .iter()
        .map(|f| FormJson {
            c: f.c.to_string(),
            alpha: f.alpha.iter().map(|a| a.to_string()).collect(),
        })
        .collect();
    let ring = if spec.ring == Ring::Qi { None } else { Some(ring_tag(spec.ring)) };
    SpecJson { n: spec.n, d: spec.d, ring, forms }
}

pub fn spec_from_json(j: &SpecJson) -> Result<HarmonicSpec, IoError> {
    let ring = match &j.ring {
        Some(tag) => parse_ring_tag(tag)?,
        None => Ring::Qi,
    };
    let mut forms = Vec::with_capacity(j.forms.len());
    for f in &j.forms {
        if f.alpha.len() != j.n {
            return Err(IoError::BadInput(format!(
                "alpha has length {}, expected {}",
                f.alpha.len(),
                j.n
            )));
        }
        let c = parse_scalar(&f.c, ring)?;
        let alpha = f
            .alpha
            .iter()
            .map(|a| parse_scalar(a, ring))
            .collect::<Result<Vec<_>, _>>()?;
        forms.push(HarmonicForm { c, alpha });
    }
    Ok(HarmonicSpec::new(ring, j.n, j.d, forms)?)
}

pub fn spec_to_string(spec: &HarmonicSpec) -> String {
    serde_json::to_string_pretty(&spec_to_json(spec)).expect("spec serializes")
}

pub fn spec_from_str(s: &str) -> Result<HarmonicSpec, IoError> {
    let j: SpecJson = serde_json::from_str(s)?;
    spec_from_json(&j)
}

/// Undirected graph in DOT format, vertices numbered from 1.
pub fn graph_to_dot(g: &Graph) -> String {
    let mut out = String::from("graph {\n");
    for v in 0..g.k() {
        out.push_str(&format!("  {};\n", v + 1));
    }
    for i in 0..g.k() {
        for j in (i + 1)..g.k() {
            if g.adj[i][j] {
                out.push_str(&format!("  {} -- {};\n", i + 1, j + 1));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Rows of equal length become a CSV table under the given header.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use hn_core::scalar::{q, qi};

    #[test]
    fn ring_tags_round_trip() {
        for ring in [Ring::Q, Ring::Qi, Ring::Fp(7), Ring::Fp2(11)] {
            assert_eq!(parse_ring_tag(&ring_tag(ring)).unwrap(), ring);
        }
        assert!(parse_ring_tag("R").is_err());
        assert!(parse_ring_tag("Fp(6)").is_err());
    }

    #[test]
    fn poly_json_round_trip() {
        let p = parse_poly("(3/2+1/2i)*z1^2*z2 + z3", None).unwrap();
        let back = poly_from_str(&poly_to_string(&p)).unwrap();
        assert_eq!(back, p);

        let q = parse_poly("2*z1^2*z2 + 6*z2^3 mod 7", None).unwrap();
        let back = poly_from_str(&poly_to_string(&q)).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn poly_json_reads_documented_shape() {
        let src = r#"{"n":3,"ring":"QI","terms":[{"exp":[2,1,0],"re":"3/2","im":"1/2"},{"exp":[0,0,1],"re":"1"}]}"#;
        let p = poly_from_str(src).unwrap();
        assert_eq!(p, parse_poly("(3/2+1/2i)*z1^2*z2 + z3", None).unwrap());
    }

    #[test]
    fn spec_json_round_trip() {
        let src = r#"{"n":4,"d":3,"forms":[{"c":"1","alpha":["1","i","0","0"]}]}"#;
        let spec = spec_from_str(src).unwrap();
        assert_eq!(spec.n, 4);
        assert_eq!(spec.d, 3);
        assert_eq!(spec.forms[0].c, q(1, 1).promote(Ring::Qi).unwrap());
        assert_eq!(spec.forms[0].alpha[1], qi(0, 1, 1, 1));
        let back = spec_from_str(&spec_to_string(&spec)).unwrap();
        assert_eq!(back.forms[0].alpha, spec.forms[0].alpha);
    }

    #[test]
    fn dot_and_csv_shapes() {
        let spec = spec_from_str(
            r#"{"n":4,"d":3,"forms":[{"c":"1","alpha":["1","i","0","0"]},{"c":"1","alpha":["1","0","0","i"]}]}"#,
        )
        .unwrap();
        let g = spec.graph().unwrap();
        let dot = graph_to_dot(&g);
        assert!(dot.starts_with("graph {"));
        assert!(dot.contains("1 -- 2;"));
        let csv = csv_table(&["m", "value"], &[vec!["1".into(), "0.5".into()]]);
        assert_eq!(csv, "m,value\n1,0.5\n");
    }
}
