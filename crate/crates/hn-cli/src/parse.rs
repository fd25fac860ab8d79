//! Text grammar for polynomials over Q, Q(i) and prime fields.
//!
//! ```text
//! input    := expr ('mod' uint)?
//! expr     := term (('+' | '-') term)*
//! term     := ('-')? factor ('*' factor)*
//! factor   := primary ('^' uint)?
//! primary  := rational 'i'? | 'i' | 'z' uint | '(' expr ')'
//! rational := uint ('/' uint)?
//! ```
//!
//! Examples: `(3/2+1/2i)*z1^2*z2 + z3`, `4 mod 7`. The ring is inferred:
//! a `mod p` suffix selects the prime field (extended by i when the input
//! uses `i` and p = 3 mod 4); otherwise `i` selects Gaussian rationals.

use hn_core::{HnError, Poly, Ring, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// (byte position, message)
    Syntax(usize, String),
    Ring(HnError),
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseError::Syntax(pos, msg) => write!(f, "parse error at byte {}: {}", pos, msg),
            ParseError::Ring(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for ParseError {}

impl From<HnError> for ParseError {
    fn from(e: HnError) -> ParseError {
        ParseError::Ring(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Imag,
    Var(usize), // 0-based
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Mod,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            'i' => {
                toks.push((i, Tok::Imag));
                i += 1;
            }
            'm' => {
                if src[i..].starts_with("mod") {
                    toks.push((i, Tok::Mod));
                    i += 3;
                } else {
                    return Err(ParseError::Syntax(i, "unexpected character".into()));
                }
            }
            'z' => {
                let start = i + 1;
                let mut j = start;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j == start {
                    return Err(ParseError::Syntax(i, "variable needs an index".into()));
                }
                let idx: usize = src[start..j]
                    .parse()
                    .map_err(|_| ParseError::Syntax(i, "variable index too large".into()))?;
                if idx == 0 {
                    return Err(ParseError::Syntax(i, "variables start at z1".into()));
                }
                toks.push((i, Tok::Var(idx - 1)));
                i = j;
            }
            '0'..='9' => {
                let start = i;
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let v: u64 = src[start..j]
                    .parse()
                    .map_err(|_| ParseError::Syntax(start, "integer too large".into()))?;
                toks.push((start, Tok::Int(v)));
                i = j;
            }
            _ => return Err(ParseError::Syntax(i, format!("unexpected character '{}'", c))),
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ring: Ring,
    n: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        match self.toks.get(self.pos) {
            Some((p, _)) => *p,
            // just past the final token, for errors at end of input
            None => self.toks.last().map(|(p, _)| p + 1).unwrap_or(0),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::Syntax(self.here(), format!("expected {:?}", t)))
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            negate = true;
        }
        let mut acc = self.factor()?;
        if negate {
            acc = acc.neg();
        }
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.bump() {
                Some(Tok::Int(e)) => {
                    let e = u32::try_from(e).map_err(|_| {
                        ParseError::Syntax(self.here(), "exponent too large".into())
                    })?;
                    Ok(base.pow(e))
                }
                _ => Err(ParseError::Syntax(self.here(), "expected exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Poly, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(num)) => {
                let mut den = 1u64;
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.bump() {
                        Some(Tok::Int(d)) if d != 0 => den = d,
                        _ => {
                            return Err(ParseError::Syntax(
                                self.here(),
                                "expected nonzero denominator".into(),
                            ))
                        }
                    }
                }
                let mut s = Scalar::from_int(self.ring, num as i64)
                    .scale_rational(1, den as i64)?;
                if self.peek() == Some(&Tok::Imag) {
                    self.pos += 1;
                    s = s.try_mul(&Scalar::i(self.ring)?)?;
                }
                Ok(Poly::constant(self.ring, self.n, s))
            }
            Some(Tok::Imag) => Ok(Poly::constant(self.ring, self.n, Scalar::i(self.ring)?)),
            Some(Tok::Var(idx)) => Ok(Poly::variable(self.ring, self.n, idx)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => Err(ParseError::Syntax(pos, "expected a value".into())),
        }
    }
}

/// Parse a polynomial; variable count is `n_hint` or, if `None`, the
/// largest index appearing (minimum 1).
pub fn parse_poly(src: &str, n_hint: Option<usize>) -> Result<Poly, ParseError> {
    let toks = lex(src)?;
    // Split off an optional trailing "mod p".
    let (body, modulus) = match toks.iter().position(|(_, t)| *t == Tok::Mod) {
        Some(k) => {
            if k + 2 != toks.len() {
                return Err(ParseError::Syntax(
                    toks[k].0,
                    "mod must be followed by a single prime at the end".into(),
                ));
            }
            match toks[k + 1].1 {
                Tok::Int(p) => (&toks[..k], Some(p)),
                _ => {
                    return Err(ParseError::Syntax(toks[k + 1].0, "expected a prime".into()))
                }
            }
        }
        None => (&toks[..], None),
    };
    let uses_i = body.iter().any(|(_, t)| *t == Tok::Imag);
    let ring = match modulus {
        Some(p) => {
            if uses_i {
                Ring::fp_with_i(p)?
            } else {
                Ring::fp(p)?
            }
        }
        None => {
            if uses_i {
                Ring::Qi
            } else {
                Ring::Q
            }
        }
    };
    let max_var = body
        .iter()
        .filter_map(|(_, t)| match t {
            Tok::Var(i) => Some(i + 1),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let n = match n_hint {
        Some(n) => {
            if max_var > n {
                return Err(ParseError::Syntax(0, "variable index exceeds n".into()));
            }
            n
        }
        None => max_var.max(1),
    };
    let mut p = Parser { toks: body.to_vec(), pos: 0, ring, n };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::Syntax(p.here(), "trailing input".into()));
    }
    Ok(poly)
}

/// Parse a single scalar (a variable-free expression, e.g. "3/2", "-i",
/// "1+2i") directly into the given ring, so rationals reduce modulo p
/// in prime fields.
pub fn parse_scalar(src: &str, ring: Ring) -> Result<Scalar, ParseError> {
    let toks = lex(src)?;
    if toks.iter().any(|(_, t)| matches!(t, Tok::Mod | Tok::Var(_))) {
        return Err(ParseError::Syntax(0, "expected a constant".into()));
    }
    let mut p = Parser { toks, pos: 0, ring, n: 1 };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::Syntax(p.here(), "trailing input".into()));
    }
    Ok(poly.coefficient(&[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::SmallRng;
    use rand::SeedableRng;

    #[test]
    fn grammar_examples() {
        let p = parse_poly("(3/2+1/2i)*z1^2*z2 + z3", None).unwrap();
        assert_eq!(p.nvars(), 3);
        assert_eq!(p.ring(), Ring::Qi);
        assert_eq!(p.degree(), Some(3));
        let q = parse_poly("4 mod 7", None).unwrap();
        assert_eq!(q.ring(), Ring::Fp(7));
        assert!(q.degree() == Some(0));
        let r = parse_poly("z1*z2 - z3^2", None).unwrap();
        assert_eq!(r.ring(), Ring::Q);
        // i over F_7 (7 = 3 mod 4) lands in the quadratic extension.
        let s = parse_poly("i*z1 mod 7", None).unwrap();
        assert_eq!(s.ring(), Ring::Fp2(7));
        // i over F_5 stays in the prime field (2^2 = -1).
        let t = parse_poly("i*z1 mod 5", None).unwrap();
        assert_eq!(t.ring(), Ring::Fp(5));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_poly("z0", None).is_err());
        assert!(parse_poly("1/0", None).is_err());
        assert!(parse_poly("z1 +", None).is_err());
        assert!(parse_poly("(z1", None).is_err());
        assert!(parse_poly("z1 mod 6", None).is_err()); // 6 not prime
        assert!(parse_poly("z1 $ z2", None).is_err());
        assert!(parse_poly("z1 mod 7 + z2", None).is_err());
    }

    #[test]
    fn print_parse_round_trip_random() {
        let mut rng = SmallRng::seed_from_u64(89);
        for ring in [Ring::Q, Ring::Qi, Ring::Fp(7), Ring::Fp(13), Ring::Fp2(11)] {
            for _ in 0..40 {
                let p = hn_core::corpus::random_poly(&mut rng, ring, 3, 4, 0);
                if p.is_zero() {
                    continue;
                }
                let printed = format!("{}", p);
                let reparsed = parse_poly(&printed, Some(3)).unwrap();
                let reparsed = reparsed.promote(ring).unwrap();
                assert_eq!(reparsed, p, "round trip failed for {}", printed);
            }
        }
    }

    #[test]
    fn scalar_parsing() {
        let s = parse_scalar("3/2+1/2i", Ring::Qi).unwrap();
        assert_eq!(format!("{}", s), "3/2+1/2i");
        assert!(parse_scalar("z1", Ring::Q).is_err());
        let neg = parse_scalar("-2/3", Ring::Q).unwrap();
        assert_eq!(format!("{}", neg), "-2/3");
    }
}
