use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

/// Coefficient ring of a [`Poly`](super::Poly): the integers or the Gaussian
/// integers ℤ[ω] with ω² = −1.
pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `Some(q)` with `self = q * other` when such a `q` exists.
    fn exact_div(&self, other: &Self) -> Option<Self>;
    fn from_int(n: BigInt) -> Self;
    fn to_gaussian(&self) -> Gaussian;
    /// `None` when the value leaves the coefficient ring (an ω part in ℤ).
    fn from_gaussian(g: &Gaussian) -> Option<Self>;
    /// Complex conjugation ω ↦ −ω; identity on ℤ.
    fn conj(&self) -> Self;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, String>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn from_i64(n: i64) -> Self {
        Self::from_int(BigInt::from(n))
    }
}

pub(crate) fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

pub(crate) fn int_from_json(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("expected an integer, got {n}")),
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| format!("expected an integer string, got {s:?}")),
        other => Err(format!("expected an integer, got {other}")),
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (q, r) = self.div_rem(other);
        Zero::is_zero(&r).then_some(q)
    }
    fn from_int(n: BigInt) -> Self {
        n
    }
    fn to_gaussian(&self) -> Gaussian {
        Gaussian::new(self.clone(), <BigInt as Zero>::zero())
    }
    fn from_gaussian(g: &Gaussian) -> Option<Self> {
        Zero::is_zero(&g.im).then(|| g.re.clone())
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn to_json(&self) -> Value {
        int_to_json(self)
    }
    fn from_json(v: &Value) -> Result<Self, String> {
        int_from_json(v)
    }
}

/// Gaussian integer `re + im·ω`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Gaussian {
    pub re: BigInt,
    pub im: BigInt,
}

impl Gaussian {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Gaussian {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn omega() -> Self {
        Gaussian::new(0, 1)
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `ω^k` for any integer `k`.
    pub fn omega_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Gaussian::new(1, 0),
            1 => Gaussian::new(0, 1),
            2 => Gaussian::new(-1, 0),
            _ => Gaussian::new(0, -1),
        }
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = <BigInt as Zero>::zero();
        match (self.re == z, self.im == z) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}", imag_text(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "({} {} {})", self.re, sign, imag_text(&self.im.abs()))
            }
        }
    }
}

fn imag_text(im: &BigInt) -> String {
    if One::is_one(im) {
        "w".to_string()
    } else if *im == -<BigInt as One>::one() {
        "-w".to_string()
    } else {
        format!("{im}*w")
    }
}

impl Coeff for Gaussian {
    fn zero() -> Self {
        Gaussian::default()
    }
    fn one() -> Self {
        Gaussian::new(1, 0)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add(&self, o: &Self) -> Self {
        Gaussian {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
    fn sub(&self, o: &Self) -> Self {
        Gaussian {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
    fn mul(&self, o: &Self) -> Self {
        Gaussian {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn neg(&self) -> Self {
        Gaussian {
            re: -&self.re,
            im: -&self.im,
        }
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        let n = o.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        let t = self.mul(&o.conj());
        let (qr, rr) = t.re.div_rem(&n);
        let (qi, ri) = t.im.div_rem(&n);
        (Zero::is_zero(&rr) && Zero::is_zero(&ri)).then_some(Gaussian { re: qr, im: qi })
    }
    fn from_int(n: BigInt) -> Self {
        Gaussian {
            re: n,
            im: <BigInt as Zero>::zero(),
        }
    }
    fn to_gaussian(&self) -> Gaussian {
        self.clone()
    }
    fn from_gaussian(g: &Gaussian) -> Option<Self> {
        Some(g.clone())
    }
    fn conj(&self) -> Self {
        Gaussian {
            re: self.re.clone(),
            im: -&self.im,
        }
    }
    fn to_json(&self) -> Value {
        Value::Array(vec![int_to_json(&self.re), int_to_json(&self.im)])
    }
    fn from_json(v: &Value) -> Result<Self, String> {
        match v {
            Value::Array(xs) if xs.len() == 2 => Ok(Gaussian {
                re: int_from_json(&xs[0])?,
                im: int_from_json(&xs[1])?,
            }),
            other => int_from_json(other).map(Gaussian::from_int),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_squared_is_minus_one() {
        let w = Gaussian::omega();
        assert_eq!(w.mul(&w), Gaussian::new(-1, 0));
        assert_eq!(Gaussian::omega_pow(-1), Gaussian::new(0, -1));
        assert_eq!(Gaussian::omega_pow(-2), Gaussian::new(-1, 0));
    }

    #[test]
    fn gaussian_division() {
        let a = Gaussian::new(3, 1);
        let b = Gaussian::new(1, 1);
        let p = a.mul(&b);
        assert_eq!(p.exact_div(&b), Some(a));
        assert_eq!(Gaussian::new(1, 0).exact_div(&Gaussian::new(1, 1)), None);
        assert_eq!(Gaussian::new(2, 0).exact_div(&Gaussian::new(1, 1)), Some(Gaussian::new(1, -1)));
    }

    #[test]
    fn integer_division() {
        let six = BigInt::from(6);
        assert_eq!(six.exact_div(&BigInt::from(-3)), Some(BigInt::from(-2)));
        assert_eq!(six.exact_div(&BigInt::from(4)), None);
        assert_eq!(six.exact_div(&BigInt::from(0)), None);
    }

    #[test]
    fn gaussian_text() {
        assert_eq!(Gaussian::new(-1, 1).to_string(), "(-1 + w)");
        assert_eq!(Gaussian::new(0, -3).to_string(), "-3*w");
        assert_eq!(Gaussian::new(5, 0).to_string(), "5");
    }
}
