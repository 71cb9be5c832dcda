//! Line-oriented presentation format:
//!
//! ```text
//! # comment
//! gen x2 2
//! gen x6 6
//! rel x2^3 - 2*x6
//! rel x6^2
//! top 12
//! ```
//!
//! Polynomials accept `+ - * ^`, parentheses, integer literals and
//! juxtaposition as multiplication (`2 x2 x6`). Products of odd generators
//! pick up Koszul signs in the order written.

use num_bigint::BigInt;

use super::poly::{GeneratorSpec, PolynomialExpr};
use super::presentation::RingPresentation;
use super::GradingError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::Open);
                i += 1
            }
            ')' => {
                out.push(Tok::Close);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Num(text.parse().unwrap()));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    gens: &'a [GeneratorSpec],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<PolynomialExpr, String> {
        let mut acc = PolynomialExpr::zero();
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<PolynomialExpr, String> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Open) => {}
                _ => break,
            }
            let f = self.factor()?;
            acc = acc.mul(&f, self.gens);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PolynomialExpr, String> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| "exponent too large".to_string())?;
                    Ok(base.pow(e, self.gens))
                }
                _ => Err("expected exponent after '^'".into()),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<PolynomialExpr, String> {
        let arity = self.gens.len();
        match self.next() {
            Some(Tok::Num(n)) => Ok(PolynomialExpr::constant(arity, n)),
            Some(Tok::Minus) => Ok(self.factor()?.scale(&BigInt::from(-1))),
            Some(Tok::Ident(name)) => self
                .gens
                .iter()
                .position(|g| g.name == name)
                .map(|i| PolynomialExpr::generator(arity, i))
                .ok_or_else(|| format!("unknown generator {name}")),
            Some(Tok::Open) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::Close) => Ok(e),
                    _ => Err("expected ')'".into()),
                }
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of input".into()),
        }
    }
}

/// Parses one polynomial over `gens`.
pub fn parse_polynomial(text: &str, gens: &[GeneratorSpec]) -> Result<PolynomialExpr, GradingError> {
    let err = |msg: String| GradingError::Parse { line: 0, message: msg };
    let toks = tokenize(text).map_err(err)?;
    if toks.is_empty() {
        return Err(err("empty polynomial".into()));
    }
    let mut p = Parser { toks, pos: 0, gens };
    let e = p.expr().map_err(err)?;
    if p.pos != p.toks.len() {
        return Err(err(format!("trailing input at token {}", p.pos + 1)));
    }
    Ok(e)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses the whole presentation format. A missing `top` line defaults to
/// the largest degree any relation or generator reaches.
pub fn parse_presentation(text: &str) -> Result<RingPresentation, GradingError> {
    let mut gens: Vec<GeneratorSpec> = Vec::new();
    let mut rels: Vec<(usize, String)> = Vec::new();
    let mut top: Option<u32> = None;
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let err = |message: String| GradingError::Parse {
            line: line_no,
            message,
        };
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match kw {
            "gen" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [name, deg] = parts[..] else {
                    return Err(err("expected `gen <name> <degree>`".into()));
                };
                if !is_identifier(name) {
                    return Err(err(format!("invalid generator name {name:?}")));
                }
                let degree: u32 = deg.parse().map_err(|_| err(format!("invalid degree {deg:?}")))?;
                if !rels.is_empty() {
                    return Err(err("generators must precede relations".into()));
                }
                gens.push(GeneratorSpec::new(name, degree));
            }
            "rel" => rels.push((line_no, rest.to_string())),
            "top" => {
                let d = rest.parse().map_err(|_| err(format!("invalid top degree {rest:?}")))?;
                top = Some(d);
            }
            other => return Err(err(format!("unknown keyword {other:?}"))),
        }
    }
    let mut relations = Vec::new();
    for (line, src) in rels {
        let p = parse_polynomial(&src, &gens).map_err(|e| match e {
            GradingError::Parse { message, .. } => GradingError::Parse { line, message },
            other => other,
        })?;
        relations.push(p);
    }
    let top = top.unwrap_or_else(|| {
        relations
            .iter()
            .flat_map(|r| r.degrees(&gens))
            .chain(gens.iter().map(|g| g.degree))
            .max()
            .unwrap_or(0)
    });
    RingPresentation::new(gens, relations, top)
}

/// Inverse of [`parse_presentation`].
pub fn format_presentation(p: &RingPresentation) -> String {
    let mut out = String::new();
    for g in p.generators() {
        out.push_str(&format!("gen {} {}\n", g.name, g.degree));
    }
    for r in p.relations() {
        out.push_str(&format!("rel {}\n", p.show(r)));
    }
    out.push_str(&format!("top {}\n", p.top_degree()));
    out
}
