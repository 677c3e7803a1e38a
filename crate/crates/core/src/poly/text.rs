use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Coeff, GaussPoly, Gaussian, Mono, Poly, PolyError, VarSet};

fn mono_text(vars: VarSet, m: &Mono) -> String {
    let names = vars.names();
    let mut parts = Vec::new();
    for i in 0..2 {
        match m[i] {
            0 => {}
            1 => parts.push(names[i].to_string()),
            k => parts.push(format!("{}^{}", names[i], k)),
        }
    }
    parts.join("*")
}

/// Sign and unsigned text of a coefficient.
fn coeff_text(g: &Gaussian) -> (bool, String, bool) {
    if Zero::is_zero(&g.im) {
        let mag = g.re.abs();
        (g.re.is_negative(), mag.to_string(), One::is_one(&mag))
    } else if Zero::is_zero(&g.re) {
        let mag = g.im.abs();
        let s = if One::is_one(&mag) { "w".to_string() } else { format!("{mag}*w") };
        (g.im.is_negative(), s, false)
    } else {
        (false, g.to_string(), false)
    }
}

pub(super) fn render<C: Coeff>(p: &Poly<C>) -> String {
    let terms = p.terms();
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in terms.iter().enumerate() {
        let (neg, mag, unit) = coeff_text(&c.to_gaussian());
        let mono = mono_text(p.vars(), m);
        let body = if mono.is_empty() {
            mag
        } else if unit {
            mono
        } else {
            format!("{mag}*{mono}")
        };
        match (idx, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, PolyError> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut toks = Vec::new();
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            toks.push(Tok::Num(digits.parse().expect("digit run")));
        } else if ch.is_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_alphanumeric() {
                i += 1;
            }
            toks.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*^()".contains(ch) {
            toks.push(Tok::Op(ch));
            i += 1;
        } else {
            return Err(PolyError::Parse(format!("unexpected character {ch:?}")));
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    vars: VarSet,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<GaussPoly, PolyError> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<GaussPoly, PolyError> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = acc * self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<GaussPoly, PolyError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let k: u32 = n
                        .try_into()
                        .map_err(|_| PolyError::Parse("exponent too large".into()))?;
                    Ok(base.pow(k))
                }
                _ => Err(PolyError::Parse("expected an exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<GaussPoly, PolyError> {
        let tok = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| PolyError::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(GaussPoly::constant(self.vars, Gaussian::from_int(n))),
            Tok::Ident(name) => match name.as_str() {
                "w" => Ok(GaussPoly::omega(self.vars)),
                other => {
                    let idx = self
                        .vars
                        .names()
                        .iter()
                        .position(|n| *n == other)
                        .ok_or_else(|| PolyError::Parse(format!("unknown variable {other}")))?;
                    Ok(GaussPoly::var(self.vars, idx))
                }
            },
            Tok::Op('(') => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(PolyError::Parse("missing ')'".into()));
                }
                Ok(inner)
            }
            Tok::Op('-') => Ok(-self.power()?),
            Tok::Op(c) => Err(PolyError::Parse(format!("unexpected {c:?}"))),
        }
    }
}

/// Parse the canonical text form (`2*E1^2 - 8*E2`, `(-1 + w)*a1`).
/// Without an explicit variable set it is inferred from the names used.
pub fn parse_poly<C: Coeff>(s: &str, vars: Option<VarSet>) -> Result<Poly<C>, PolyError> {
    let toks = tokenize(s)?;
    let mut seen = None;
    for t in &toks {
        if let Tok::Ident(name) = t {
            let set = match name.as_str() {
                "E1" | "E2" => VarSet::Elementary,
                "a1" | "a2" => VarSet::Alpha,
                "w" => continue,
                other => return Err(PolyError::Parse(format!("unknown variable {other}"))),
            };
            if seen.is_some_and(|s| s != set) {
                return Err(PolyError::Parse("mixed variable sets".into()));
            }
            seen = Some(set);
        }
    }
    let vars = match (vars, seen) {
        (Some(v), Some(s)) if v != s => return Err(PolyError::VarMismatch(v, s)),
        (Some(v), _) => v,
        (None, Some(s)) => s,
        (None, None) => VarSet::Elementary,
    };
    let mut p = Parser { toks, pos: 0, vars };
    if p.toks.is_empty() {
        return Err(PolyError::Parse("empty input".into()));
    }
    let g = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(PolyError::Parse(format!("trailing input at token {}", p.pos)));
    }
    g.map_coeffs(C::from_gaussian)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPoly;

    #[test]
    fn parse_render_roundtrip() {
        for s in ["2*E1^2 - 8*E2", "-E1", "E1^3 - 3*E1*E2 + 1", "0", "-4"] {
            let p: IntPoly = parse_poly(s, None).unwrap();
            assert_eq!(p.to_string(), s);
        }
        for s in ["(-1 + w)*E1", "w", "-w*E2 + (3 - 2*w)", "2*w*a1^2"] {
            let p: GaussPoly = parse_poly(s, None).unwrap();
            assert_eq!(p.to_string(), s);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(parse_poly::<BigInt>("w", None).is_err());
        assert!(parse_poly::<BigInt>("E1 + a1", None).is_err());
        assert!(parse_poly::<BigInt>("E1 +", None).is_err());
        assert!(parse_poly::<BigInt>("x", None).is_err());
        assert!(parse_poly::<BigInt>("(E1", None).is_err());
    }
}
