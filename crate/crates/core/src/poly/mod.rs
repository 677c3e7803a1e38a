//! Exact polynomials in ℤ[E₁,E₂] and ℤ[α₁,α₂] (optionally over ℤ[ω]),
//! localizations at 𝒟 or α₁−α₂, and fraction-free linear algebra.

mod coeff;
mod linalg;
mod loc;
mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub use coeff::{Coeff, Gaussian};
pub use linalg::{bareiss, bareiss_rank, specialized_rank, BareissResult};
pub use loc::{LocPoly, Localization};
pub use text::parse_poly;

/// Integer polynomial.
pub type IntPoly = Poly<BigInt>;
/// Polynomial with Gaussian-integer coefficients (ω rendered as `w`).
pub type GaussPoly = Poly<Gaussian>;

/// Exponent vector `[e₀, e₁]` for the two variables of a [`VarSet`].
pub type Mono = [u32; 2];

/// Which pair of variables a polynomial is written in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum VarSet {
    /// E₁ (degree 2), E₂ (degree 4)
    Elementary,
    /// α₁, α₂ (degree 2 each)
    Alpha,
}

impl VarSet {
    pub fn weights(self) -> [i64; 2] {
        match self {
            VarSet::Elementary => [2, 4],
            VarSet::Alpha => [2, 2],
        }
    }

    pub fn names(self) -> [&'static str; 2] {
        match self {
            VarSet::Elementary => ["E1", "E2"],
            VarSet::Alpha => ["a1", "a2"],
        }
    }

    pub fn degree_of(self, m: &Mono) -> i64 {
        let w = self.weights();
        w[0] * m[0] as i64 + w[1] * m[1] as i64
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable-set mismatch: {0:?} vs {1:?}")]
    VarMismatch(VarSet, VarSet),
    #[error("not divisible; remainder witness {remainder}")]
    NonDivisible { remainder: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not symmetric under a1 <-> a2: {0}")]
    NotSymmetric(String),
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("coefficient leaves the target ring: {0}")]
    CoefficientRing(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<C: Coeff> {
    vars: VarSet,
    terms: BTreeMap<Mono, C>,
}

/// Graded lexicographic comparison: weighted degree, then first exponent.
pub fn mono_cmp(vars: VarSet, a: &Mono, b: &Mono) -> Ordering {
    vars.degree_of(a)
        .cmp(&vars.degree_of(b))
        .then(a[0].cmp(&b[0]))
        .then(a[1].cmp(&b[1]))
}

fn mono_divides(a: &Mono, b: &Mono) -> bool {
    a[0] <= b[0] && a[1] <= b[1]
}

impl<C: Coeff> Poly<C> {
    pub fn zero(vars: VarSet) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: VarSet) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn constant(vars: VarSet, c: C) -> Self {
        Self::monomial(vars, [0, 0], c)
    }

    pub fn int(vars: VarSet, n: i64) -> Self {
        Self::constant(vars, C::from_i64(n))
    }

    pub fn monomial(vars: VarSet, m: Mono, c: C) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Variable `i` (0 or 1) of the set.
    pub fn var(vars: VarSet, i: usize) -> Self {
        let mut m = [0, 0];
        m[i] = 1;
        Self::monomial(vars, m, C::one())
    }

    /// Build from `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms(vars: VarSet, terms: impl IntoIterator<Item = (Mono, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(old) => old.add(&c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&[0, 0]).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// The constant coefficient when the polynomial is constant.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&[0, 0]).cloned(),
            _ => None,
        }
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> Vec<(Mono, C)> {
        let mut v: Vec<(Mono, C)> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| mono_cmp(self.vars, &b.0, &a.0));
        v
    }

    pub fn leading_term(&self) -> Option<(Mono, C)> {
        self.terms
            .iter()
            .max_by(|a, b| mono_cmp(self.vars, a.0, b.0))
            .map(|(m, c)| (*m, c.clone()))
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VarMismatch(self.vars, other.vars))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, c.neg());
        }
        Ok(r)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut r = Self::zero(self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term([m1[0] + m2[0], m1[1] + m2[1]], c1.mul(c2));
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.vars, self.terms.iter().map(|(m, x)| (*m, x.mul(c))))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.vars);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Multivariate exact division; `NonDivisible` carries the first
    /// remainder whose leading term the divisor cannot absorb.
    pub fn exact_divide(&self, d: &Self) -> Result<Self, PolyError> {
        self.check(d)?;
        let (dm, dc) = d.leading_term().ok_or(PolyError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quo = Self::zero(self.vars);
        while let Some((rm, rc)) = rem.leading_term() {
            let c = if mono_divides(&dm, &rm) { rc.exact_div(&dc) } else { None };
            let Some(c) = c else {
                return Err(PolyError::NonDivisible {
                    remainder: rem.to_string(),
                });
            };
            let t = Self::monomial(self.vars, [rm[0] - dm[0], rm[1] - dm[1]], c);
            rem = &rem - &(&t * d);
            quo = &quo + &t;
        }
        Ok(quo)
    }

    pub fn divides(&self, p: &Self) -> bool {
        p.exact_divide(self).is_ok()
    }

    /// Common weighted degree of all terms; `Ok(None)` encodes −∞ for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<i64>, PolyError> {
        let mut degs = self.terms.keys().map(|m| self.vars.degree_of(m));
        let Some(d) = degs.next() else {
            return Ok(None);
        };
        if degs.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(PolyError::NotHomogeneous(self.to_string()))
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_ok()
    }

    /// α₁ ↔ α₂.
    pub fn swap_alpha(&self) -> Result<Self, PolyError> {
        if self.vars != VarSet::Alpha {
            return Err(PolyError::VarMismatch(self.vars, VarSet::Alpha));
        }
        Ok(Self::from_terms(
            self.vars,
            self.terms.iter().map(|(m, c)| ([m[1], m[0]], c.clone())),
        ))
    }

    pub fn is_symmetric(&self) -> bool {
        self.swap_alpha().is_ok_and(|s| s == *self)
    }

    /// Substitute E₁ ↦ α₁+α₂, E₂ ↦ α₁α₂.
    pub fn from_elementary(&self) -> Result<Self, PolyError> {
        if self.vars != VarSet::Elementary {
            return Err(PolyError::VarMismatch(self.vars, VarSet::Elementary));
        }
        let e1 = Self::var(VarSet::Alpha, 0) + Self::var(VarSet::Alpha, 1);
        let e2 = Self::from_terms(VarSet::Alpha, [([1, 1], C::one())]);
        let mut r = Self::zero(VarSet::Alpha);
        for (m, c) in &self.terms {
            r = r + (e1.pow(m[0]) * e2.pow(m[1])).scale(c);
        }
        Ok(r)
    }

    /// Unique preimage of a symmetric α-polynomial under [`Self::from_elementary`].
    pub fn to_elementary(&self) -> Result<Self, PolyError> {
        if self.vars != VarSet::Alpha {
            return Err(PolyError::VarMismatch(self.vars, VarSet::Alpha));
        }
        if !self.is_symmetric() {
            return Err(PolyError::NotSymmetric(self.to_string()));
        }
        let mut rem = self.clone();
        let mut out = Self::zero(VarSet::Elementary);
        while let Some((m, c)) = rem.leading_term() {
            // symmetric leading term under lex with α₁ first has m[0] >= m[1]
            if m[0] < m[1] {
                return Err(PolyError::NotSymmetric(self.to_string()));
            }
            let t = Self::monomial(VarSet::Elementary, [m[0] - m[1], m[1]], c);
            rem = &rem - &t.from_elementary()?;
            out = &out + &t;
        }
        Ok(out)
    }

    /// Map coefficients into another coefficient ring.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> Option<D>) -> Result<Poly<D>, PolyError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let d = f(c).ok_or_else(|| PolyError::CoefficientRing(self.to_string()))?;
            terms.push((*m, d));
        }
        Ok(Poly::from_terms(self.vars, terms))
    }

    pub fn to_gauss(&self) -> GaussPoly {
        self.map_coeffs(|c| Some(c.to_gaussian()))
            .expect("embedding into Gaussian integers is total")
    }

    /// ω ↦ −ω on coefficients.
    pub fn conj(&self) -> Self {
        Self::from_terms(self.vars, self.terms.iter().map(|(m, c)| (*m, c.conj())))
    }

    /// Evaluate at integer values of the two variables.
    pub fn specialize(&self, point: &[BigInt; 2]) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let v = num_traits::pow(point[0].clone(), m[0] as usize)
                * num_traits::pow(point[1].clone(), m[1] as usize);
            acc = acc.add(&c.mul(&C::from_int(v)));
        }
        acc
    }

    /// `[[exponents, coefficient], ...]` in canonical order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .into_iter()
                .map(|(m, c)| Value::Array(vec![Value::from(vec![m[0], m[1]]), c.to_json()]))
                .collect(),
        )
    }

    pub fn from_json(vars: VarSet, v: &Value) -> Result<Self, PolyError> {
        let bad = |msg: &str| PolyError::Parse(msg.to_string());
        let arr = v.as_array().ok_or_else(|| bad("expected a list of terms"))?;
        let mut terms = Vec::new();
        for t in arr {
            let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("term must be [exps, coeff]"))?;
            let exps = pair[0].as_array().filter(|e| e.len() == 2).ok_or_else(|| bad("exponent vector must have length 2"))?;
            let mut m = [0u32; 2];
            for (i, e) in exps.iter().enumerate() {
                m[i] = e
                    .as_u64()
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| bad("exponent must be a nonnegative integer"))?;
            }
            terms.push((m, C::from_json(&pair[1]).map_err(PolyError::Parse)?));
        }
        Ok(Self::from_terms(vars, terms))
    }
}

impl Poly<Gaussian> {
    /// The integer polynomial when no coefficient has an ω part.
    pub fn to_int(&self) -> Option<IntPoly> {
        self.map_coeffs(<BigInt as Coeff>::from_gaussian).ok()
    }

    pub fn omega(vars: VarSet) -> Self {
        Self::constant(vars, Gaussian::omega())
    }
}

/// E₁²−4E₂.
pub fn discriminant<C: Coeff>() -> Poly<C> {
    Poly::from_terms(
        VarSet::Elementary,
        [([2, 0], C::one()), ([0, 1], C::from_i64(-4))],
    )
}

/// E₁ and E₂ written in the given variable set.
pub fn elementary_pair<C: Coeff>(vars: VarSet) -> (Poly<C>, Poly<C>) {
    match vars {
        VarSet::Elementary => (Poly::var(vars, 0), Poly::var(vars, 1)),
        VarSet::Alpha => (
            Poly::var(vars, 0) + Poly::var(vars, 1),
            Poly::from_terms(vars, [([1, 1], C::one())]),
        ),
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<C: Coeff> $tr<&Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            /// Panics on a variable-set mismatch; use the `try_` form to handle it.
            fn $m(self, rhs: &Poly<C>) -> Poly<C> {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<C: Coeff> $tr<Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$m(&rhs)
            }
        }
        impl<C: Coeff> $tr<&Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: &Poly<C>) -> Poly<C> {
                (&self).$m(rhs)
            }
        }
        impl<C: Coeff> $tr<Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::from_terms(self.vars, self.terms.iter().map(|(m, c)| (*m, c.neg())))
    }
}

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::render(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> IntPoly {
        parse_poly(s, Some(VarSet::Alpha)).unwrap()
    }
    fn e(s: &str) -> IntPoly {
        parse_poly(s, Some(VarSet::Elementary)).unwrap()
    }

    #[test]
    fn ring_ops_examples() {
        assert_eq!(a("(a1 - a2)*(a1 - a2)"), a("a1^2 - 2*a1*a2 + a2^2"));
        assert!((e("E1") * IntPoly::zero(VarSet::Elementary)).is_zero());
        let w = GaussPoly::omega(VarSet::Elementary);
        assert_eq!(&w * &w, GaussPoly::int(VarSet::Elementary, -1));
    }

    #[test]
    fn mismatch_is_an_error() {
        assert!(matches!(
            e("E1").try_add(&a("a1")),
            Err(PolyError::VarMismatch(VarSet::Elementary, VarSet::Alpha))
        ));
    }

    #[test]
    fn exact_divide_examples() {
        assert_eq!(a("a2^2 - a1^2").exact_divide(&a("a2 - a1")).unwrap(), a("a1 + a2"));
        assert_eq!(a("(a1 - a2)^2").exact_divide(&a("a2 - a1")).unwrap(), a("a2 - a1"));
        assert!(matches!(
            a("a1").exact_divide(&a("a2 - a1")),
            Err(PolyError::NonDivisible { .. })
        ));
        assert_eq!(a("a1").exact_divide(&IntPoly::zero(VarSet::Alpha)), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn to_elementary_examples() {
        assert_eq!(a("a1 + a2").to_elementary().unwrap(), e("E1"));
        assert_eq!(a("(a1 - a2)^2").to_elementary().unwrap(), e("E1^2 - 4*E2"));
        assert!(matches!(a("a1").to_elementary(), Err(PolyError::NotSymmetric(_))));
    }

    #[test]
    fn homogeneous_degree_examples() {
        assert_eq!(e("E1^2 - 4*E2").homogeneous_degree(), Ok(Some(4)));
        assert_eq!(IntPoly::zero(VarSet::Elementary).homogeneous_degree(), Ok(None));
        assert!(e("E1 + E2").homogeneous_degree().is_err());
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(e("-8*E2 + 2*E1^2").to_string(), "2*E1^2 - 8*E2");
        let p = parse_poly::<Gaussian>("(-1 + w)*E1", None).unwrap();
        assert_eq!(p.to_string(), "(-1 + w)*E1");
        assert_eq!(IntPoly::zero(VarSet::Elementary).to_string(), "0");
        assert_eq!(e("E1^2*E2 - E1^4 + 7").to_string(), "-E1^4 + E1^2*E2 + 7");
    }

    #[test]
    fn json_roundtrip() {
        let p = e("2*E1^2 - 8*E2");
        let j = p.to_json();
        assert_eq!(j.to_string(), "[[[2,0],2],[[0,1],-8]]");
        assert_eq!(IntPoly::from_json(VarSet::Elementary, &j).unwrap(), p);
        let g = parse_poly::<Gaussian>("w*E1 - 3", None).unwrap();
        assert_eq!(GaussPoly::from_json(VarSet::Elementary, &g.to_json()).unwrap(), g);
    }

    #[test]
    fn specialize_and_substitute() {
        let d = discriminant::<BigInt>();
        let da = d.from_elementary().unwrap();
        assert_eq!(da, a("(a1 - a2)^2"));
        let pt = [BigInt::from(3), BigInt::from(7)];
        assert_eq!(da.specialize(&pt), BigInt::from(16));
    }
}
