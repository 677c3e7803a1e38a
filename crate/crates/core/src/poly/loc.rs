use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{discriminant, Coeff, Poly, PolyError, VarSet};

/// The single element inverted in a localized ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Localization {
    /// 𝒟 = E₁² − 4E₂ in ℤ[E₁,E₂]
    Discriminant,
    /// α₁ − α₂ in ℤ[α₁,α₂]
    AlphaDiff,
}

impl Localization {
    pub fn vars(self) -> VarSet {
        match self {
            Localization::Discriminant => VarSet::Elementary,
            Localization::AlphaDiff => VarSet::Alpha,
        }
    }

    pub fn base<C: Coeff>(self) -> Poly<C> {
        match self {
            Localization::Discriminant => discriminant(),
            Localization::AlphaDiff => Poly::var(VarSet::Alpha, 0) - Poly::var(VarSet::Alpha, 1),
        }
    }

    pub fn for_vars(vars: VarSet) -> Self {
        match vars {
            VarSet::Elementary => Localization::Discriminant,
            VarSet::Alpha => Localization::AlphaDiff,
        }
    }
}

/// `numerator / base^power`, kept with the smallest possible power.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocPoly<C: Coeff> {
    num: Poly<C>,
    power: u32,
    base: Localization,
}

impl<C: Coeff> LocPoly<C> {
    pub fn new(num: Poly<C>, power: u32, base: Localization) -> Result<Self, PolyError> {
        if num.vars() != base.vars() {
            return Err(PolyError::VarMismatch(num.vars(), base.vars()));
        }
        let mut l = LocPoly { num, power, base };
        l.normalize();
        Ok(l)
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        let base = Localization::for_vars(p.vars());
        LocPoly { num: p, power: 0, base }
    }

    pub fn zero(base: Localization) -> Self {
        Self::from_poly(Poly::zero(base.vars()))
    }

    pub fn one(base: Localization) -> Self {
        Self::from_poly(Poly::one(base.vars()))
    }

    /// `base^{-k}`.
    pub fn base_inverse_pow(base: Localization, k: u32) -> Self {
        LocPoly {
            num: Poly::one(base.vars()),
            power: k,
            base,
        }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.power = 0;
            return;
        }
        let b = self.base.base::<C>();
        while self.power > 0 {
            match self.num.exact_divide(&b) {
                Ok(q) => {
                    self.num = q;
                    self.power -= 1;
                }
                Err(_) => break,
            }
        }
    }

    pub fn normalized(&self) -> Self {
        let mut c = self.clone();
        c.normalize();
        c
    }

    pub fn numerator(&self) -> &Poly<C> {
        &self.num
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn base(&self) -> Localization {
        self.base
    }

    pub fn vars(&self) -> VarSet {
        self.base.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.power == 0 && self.num.is_one()
    }

    /// The polynomial when no denominator remains.
    pub fn as_poly(&self) -> Option<&Poly<C>> {
        (self.power == 0).then_some(&self.num)
    }

    fn check(&self, o: &Self) -> Result<(), PolyError> {
        if self.base == o.base {
            Ok(())
        } else {
            Err(PolyError::VarMismatch(self.vars(), o.vars()))
        }
    }

    fn lift(&self, power: u32) -> Poly<C> {
        &self.num * &self.base.base::<C>().pow(power - self.power)
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, PolyError> {
        self.check(o)?;
        let k = self.power.max(o.power);
        Self::new(self.lift(k) + o.lift(k), k, self.base)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, PolyError> {
        self.try_add(&-o)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, PolyError> {
        self.check(o)?;
        Self::new(&self.num * &o.num, self.power + o.power, self.base)
    }

    pub fn scale_poly(&self, p: &Poly<C>) -> Self {
        self * &Self::from_poly(p.clone())
    }

    /// Exact quotient by a power of the base times a unit constant.
    pub fn divide_by_base_pow(&self, k: u32) -> Self {
        let mut r = self.clone();
        r.power += k;
        r.normalize();
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.base);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Inverse when the element is a unit constant times a power of the base.
    pub fn try_inverse(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        let b = self.base.base::<C>();
        let mut n = self.num.clone();
        let mut k = 0u32;
        while let Ok(q) = n.exact_divide(&b) {
            n = q;
            k += 1;
        }
        let c = n.as_constant()?;
        let inv = C::one().exact_div(&c)?;
        let num = Poly::constant(self.vars(), inv) * b.pow(self.power);
        Self::new(num, k, self.base).ok()
    }

    pub fn swap_alpha(&self) -> Result<Self, PolyError> {
        if self.base != Localization::AlphaDiff {
            return Err(PolyError::VarMismatch(self.vars(), VarSet::Alpha));
        }
        // the base changes sign under the swap
        let mut num = self.num.swap_alpha()?;
        if self.power % 2 == 1 {
            num = -num;
        }
        Self::new(num, self.power, self.base)
    }

    pub fn conj(&self) -> Self {
        LocPoly {
            num: self.num.conj(),
            power: self.power,
            base: self.base,
        }
    }

    /// Rewrite an α-localized symmetric element over E with 𝒟 in the
    /// denominator; requires an even power.
    pub fn to_elementary(&self) -> Result<Self, PolyError> {
        match self.base {
            Localization::Discriminant => Ok(self.clone()),
            Localization::AlphaDiff => {
                let mut num = self.num.clone();
                let mut power = self.power;
                if power % 2 == 1 {
                    num = &num * &Localization::AlphaDiff.base::<C>();
                    power += 1;
                }
                Self::new(num.to_elementary()?, power / 2, Localization::Discriminant)
            }
        }
    }

    /// E-localized to α-localized via E₁ ↦ α₁+α₂, E₂ ↦ α₁α₂, 𝒟 ↦ (α₁−α₂)².
    pub fn from_elementary(&self) -> Result<Self, PolyError> {
        match self.base {
            Localization::AlphaDiff => Ok(self.clone()),
            Localization::Discriminant => {
                Self::new(self.num.from_elementary()?, 2 * self.power, Localization::AlphaDiff)
            }
        }
    }
}

impl<C: Coeff> fmt::Display for LocPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.power == 0 {
            return write!(f, "{}", self.num);
        }
        let base = self.base.base::<C>();
        let num = if self.num.num_terms() > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        if self.power == 1 {
            write!(f, "{num}/({base})")
        } else {
            write!(f, "{num}/({base})^{}", self.power)
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<C: Coeff> $tr<&LocPoly<C>> for &LocPoly<C> {
            type Output = LocPoly<C>;
            fn $m(self, rhs: &LocPoly<C>) -> LocPoly<C> {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<C: Coeff> $tr<LocPoly<C>> for LocPoly<C> {
            type Output = LocPoly<C>;
            fn $m(self, rhs: LocPoly<C>) -> LocPoly<C> {
                (&self).$m(&rhs)
            }
        }
        impl<C: Coeff> $tr<&LocPoly<C>> for LocPoly<C> {
            type Output = LocPoly<C>;
            fn $m(self, rhs: &LocPoly<C>) -> LocPoly<C> {
                (&self).$m(rhs)
            }
        }
        impl<C: Coeff> $tr<LocPoly<C>> for &LocPoly<C> {
            type Output = LocPoly<C>;
            fn $m(self, rhs: LocPoly<C>) -> LocPoly<C> {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<C: Coeff> Neg for &LocPoly<C> {
    type Output = LocPoly<C>;
    fn neg(self) -> LocPoly<C> {
        LocPoly {
            num: -&self.num,
            power: self.power,
            base: self.base,
        }
    }
}

impl<C: Coeff> Neg for LocPoly<C> {
    type Output = LocPoly<C>;
    fn neg(self) -> LocPoly<C> {
        -&self
    }
}
