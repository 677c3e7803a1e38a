//! The rank-two Frobenius extensions A = R[X]/(X² − E₁X + E₂) over R, R_α,
//! R_𝒟 and R_α𝒟, their involutions, and the separability and Galois data.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::{bareiss, Gaussian, GaussPoly, LocPoly, Localization, Poly, VarSet};

pub type Scalar = LocPoly<Gaussian>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FrobError {
    #[error("operation needs {0}")]
    RingMismatch(String),
    #[error("{0} is not invertible in this ring")]
    NotInvertible(String),
    #[error("invalid characteristic {0}: expected 0 or a prime up to 10000")]
    InvalidCharacteristic(u64),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum RingTag {
    R,
    RAlpha,
    RD,
    RAlphaD,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct BaseRing {
    pub tag: RingTag,
    /// Adjoin ω with ω² = −1.
    pub omega: bool,
}

impl BaseRing {
    pub const ALL: [RingTag; 4] = [RingTag::R, RingTag::RAlpha, RingTag::RD, RingTag::RAlphaD];

    pub fn new(tag: RingTag, omega: bool) -> Self {
        BaseRing { tag, omega }
    }

    /// `R`, `R_alpha`, `R_D`, `R_alphaD`, optionally suffixed `_w` for ω.
    pub fn parse(s: &str) -> Result<Self, FrobError> {
        let (core, omega) = match s.strip_suffix("_w") {
            Some(c) => (c, true),
            None => (s, false),
        };
        let tag = match core {
            "R" => RingTag::R,
            "R_alpha" | "R_a" => RingTag::RAlpha,
            "R_D" => RingTag::RD,
            "R_alphaD" | "R_aD" => RingTag::RAlphaD,
            _ => return Err(FrobError::Parse(s.to_string())),
        };
        Ok(BaseRing { tag, omega })
    }

    pub fn has_alpha(self) -> bool {
        matches!(self.tag, RingTag::RAlpha | RingTag::RAlphaD)
    }

    pub fn localized(self) -> bool {
        matches!(self.tag, RingTag::RD | RingTag::RAlphaD)
    }

    pub fn vars(self) -> VarSet {
        if self.has_alpha() {
            VarSet::Alpha
        } else {
            VarSet::Elementary
        }
    }

    pub fn loc(self) -> Localization {
        Localization::for_vars(self.vars())
    }

    pub fn int(self, n: i64) -> Scalar {
        LocPoly::from_poly(Poly::int(self.vars(), n))
    }

    pub fn omega_unit(self) -> Result<Scalar, FrobError> {
        if !self.omega {
            return Err(FrobError::RingMismatch("an ω-extension".into()));
        }
        Ok(LocPoly::from_poly(GaussPoly::omega(self.vars())))
    }

    fn var(self, i: usize) -> Scalar {
        LocPoly::from_poly(Poly::var(self.vars(), i))
    }

    pub fn e1(self) -> Scalar {
        if self.has_alpha() {
            self.var(0) + self.var(1)
        } else {
            self.var(0)
        }
    }

    pub fn e2(self) -> Scalar {
        if self.has_alpha() {
            self.var(0) * self.var(1)
        } else {
            self.var(1)
        }
    }

    pub fn alpha(self, i: usize) -> Result<Scalar, FrobError> {
        if !self.has_alpha() {
            return Err(FrobError::RingMismatch("an α-ring".into()));
        }
        Ok(self.var(i))
    }

    pub fn discriminant(self) -> Scalar {
        let e1 = self.e1();
        &e1 * &e1 - self.int(4) * self.e2()
    }

    pub fn inverse(self, x: &Scalar) -> Result<Scalar, FrobError> {
        if x.is_zero() {
            return Err(FrobError::NotInvertible(x.to_string()));
        }
        if !self.localized() {
            // only constant units
            if let Some(p) = x.as_poly() {
                if let Some(c) = p.as_constant() {
                    if c.norm() == BigInt::one() {
                        let inv = Gaussian::new(c.re.clone(), -c.im.clone());
                        return Ok(LocPoly::from_poly(Poly::constant(self.vars(), inv)));
                    }
                }
            }
            return Err(FrobError::NotInvertible(x.to_string()));
        }
        x.try_inverse().ok_or_else(|| FrobError::NotInvertible(x.to_string()))
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let core = match self.tag {
            RingTag::R => "R",
            RingTag::RAlpha => "R_alpha",
            RingTag::RD => "R_D",
            RingTag::RAlphaD => "R_alphaD",
        };
        write!(f, "{core}{}", if self.omega { "_w" } else { "" })
    }
}

/// `a + bX`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FrobElement {
    pub a: Scalar,
    pub b: Scalar,
}

impl FrobElement {
    pub fn new(a: Scalar, b: Scalar) -> Self {
        FrobElement { a, b }
    }

    pub fn add(&self, o: &Self) -> Self {
        FrobElement::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        FrobElement::new(&self.a - &o.a, &self.b - &o.b)
    }

    pub fn neg(&self) -> Self {
        FrobElement::new(-&self.a, -&self.b)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        FrobElement::new(s * &self.a, s * &self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl fmt::Display for FrobElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*X", self.a, self.b)
    }
}

/// Coefficients on 1⊗1, X⊗1, 1⊗X, X⊗X.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement(pub [Scalar; 4]);

impl TensorElement {
    pub fn pure(x: &FrobElement, y: &FrobElement) -> Self {
        TensorElement([&x.a * &y.a, &x.b * &y.a, &x.a * &y.b, &x.b * &y.b])
    }

    pub fn add(&self, o: &Self) -> Self {
        TensorElement(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        TensorElement(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        TensorElement(std::array::from_fn(|i| s * &self.0[i]))
    }

    pub fn swap(&self) -> Self {
        let c = &self.0;
        TensorElement([c[0].clone(), c[2].clone(), c[1].clone(), c[3].clone()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
}

/// The algebra A over one of the base rings.
#[derive(Clone, Copy, Debug)]
pub struct Frobenius {
    pub ring: BaseRing,
}

impl Frobenius {
    pub fn new(ring: BaseRing) -> Self {
        Frobenius { ring }
    }

    pub fn elem(&self, a: i64, b: i64) -> FrobElement {
        FrobElement::new(self.ring.int(a), self.ring.int(b))
    }

    pub fn one(&self) -> FrobElement {
        self.elem(1, 0)
    }

    pub fn x(&self) -> FrobElement {
        self.elem(0, 1)
    }

    pub fn scalar(&self, s: Scalar) -> FrobElement {
        FrobElement::new(s, self.ring.int(0))
    }

    /// Solid dot X₁ = X.
    pub fn x1(&self) -> FrobElement {
        self.x()
    }

    /// Hollow dot X₂ = E₁ − X.
    pub fn x2(&self) -> FrobElement {
        FrobElement::new(self.ring.e1(), self.ring.int(-1))
    }

    /// Star dot X★ = X₁ − X₂ = 2X − E₁.
    pub fn xstar(&self) -> FrobElement {
        FrobElement::new(-self.ring.e1(), self.ring.int(2))
    }

    pub fn basis(&self) -> [FrobElement; 2] {
        [self.one(), self.x()]
    }

    pub fn tensor_basis(&self) -> Vec<TensorElement> {
        let [o, x] = self.basis();
        vec![
            TensorElement::pure(&o, &o),
            TensorElement::pure(&x, &o),
            TensorElement::pure(&o, &x),
            TensorElement::pure(&x, &x),
        ]
    }

    /// Uses X² = E₁X − E₂.
    pub fn mul(&self, p: &FrobElement, q: &FrobElement) -> FrobElement {
        let bd = &p.b * &q.b;
        FrobElement::new(&p.a * &q.a - &bd * self.ring.e2(), &p.a * &q.b + &p.b * &q.a + &bd * self.ring.e1())
    }

    pub fn tensor_mul(&self, s: &TensorElement, t: &TensorElement) -> TensorElement {
        let basis = self.basis();
        let mut acc = self.tensor_zero();
        for i in 0..4 {
            for j in 0..4 {
                let (l1, r1) = (&basis[i & 1], &basis[i >> 1]);
                let (l2, r2) = (&basis[j & 1], &basis[j >> 1]);
                let prod = TensorElement::pure(&self.mul(l1, l2), &self.mul(r1, r2));
                acc = acc.add(&prod.scale(&(&s.0[i] * &t.0[j])));
            }
        }
        acc
    }

    pub fn tensor_zero(&self) -> TensorElement {
        TensorElement(std::array::from_fn(|_| self.ring.int(0)))
    }

    pub fn eps(&self, p: &FrobElement) -> Scalar {
        p.b.clone()
    }

    pub fn delta(&self, p: &FrobElement) -> TensorElement {
        let r = self.ring;
        TensorElement([-(&p.a * r.e1()) - &p.b * r.e2(), p.a.clone(), p.a.clone(), p.b.clone()])
    }

    pub fn m(&self, t: &TensorElement) -> FrobElement {
        let [o, x] = self.basis();
        let xx = self.mul(&x, &x);
        o.scale(&t.0[0]).add(&x.scale(&(&t.0[1] + &t.0[2]))).add(&xx.scale(&t.0[3]))
    }

    /// `(f ⊗ g)(t)` for R-linear `f`, `g`.
    pub fn apply2(&self, f: impl Fn(&FrobElement) -> FrobElement, g: impl Fn(&FrobElement) -> FrobElement, t: &TensorElement) -> TensorElement {
        let [o, x] = self.basis();
        let (fo, fx, go, gx) = (f(&o), f(&x), g(&o), g(&x));
        let parts = [(&fo, &go), (&fx, &go), (&fo, &gx), (&fx, &gx)];
        parts
            .iter()
            .zip(&t.0)
            .fold(self.tensor_zero(), |acc, ((l, r), c)| acc.add(&TensorElement::pure(l, r).scale(c)))
    }

    /// σ₊(a + bX) = (a + E₁b) − bX.
    pub fn sigma_plus(&self, p: &FrobElement) -> FrobElement {
        FrobElement::new(&p.a + &p.b * self.ring.e1(), -&p.b)
    }

    pub fn sigma_minus(&self, p: &FrobElement) -> FrobElement {
        self.sigma_plus(p).neg()
    }

    /// Swaps α₁ and α₂ in the coefficients, fixing X.
    pub fn sigma_alpha(&self, p: &FrobElement) -> Result<FrobElement, FrobError> {
        if !self.ring.has_alpha() {
            return Err(FrobError::RingMismatch("an α-ring for σ_α".into()));
        }
        let sw = |s: &Scalar| s.swap_alpha().expect("α variables");
        Ok(FrobElement::new(sw(&p.a), sw(&p.b)))
    }

    fn disc_inverse(&self) -> Result<Scalar, FrobError> {
        if !self.ring.localized() {
            return Err(FrobError::RingMismatch("a 𝒟-localized ring".into()));
        }
        self.ring.inverse(&self.ring.discriminant())
    }

    /// X★⁻¹ = 𝒟⁻¹X★.
    pub fn xstar_inverse(&self) -> Result<FrobElement, FrobError> {
        Ok(self.xstar().scale(&self.disc_inverse()?))
    }

    /// Δ_𝒟 = (X★⁻¹ ⊗ 1)·Δ.
    pub fn delta_d(&self, p: &FrobElement) -> Result<TensorElement, FrobError> {
        let left = TensorElement::pure(&self.xstar_inverse()?, &self.one());
        Ok(self.tensor_mul(&left, &self.delta(p)))
    }

    /// e = Δ_𝒟(1) = 𝒟⁻¹Δ(X★).
    pub fn separability_idempotent(&self) -> Result<TensorElement, FrobError> {
        self.delta_d(&self.one())
    }

    /// e₁ = (X − α₁)/(α₂ − α₁), e₂ = (X − α₂)/(α₁ − α₂).
    pub fn lee_idempotents(&self) -> Result<(FrobElement, FrobElement), FrobError> {
        if self.ring.tag != RingTag::RAlphaD {
            return Err(FrobError::RingMismatch("R_alphaD".into()));
        }
        let (a1, a2) = (self.ring.alpha(0)?, self.ring.alpha(1)?);
        let d12 = self.ring.inverse(&(&a2 - &a1))?;
        let d21 = self.ring.inverse(&(&a1 - &a2))?;
        let e1 = FrobElement::new(-&a1, self.ring.int(1)).scale(&d12);
        let e2 = FrobElement::new(-&a2, self.ring.int(1)).scale(&d21);
        Ok((e1, e2))
    }

    /// Matrix of an R-linear map on {1, X}; column j is the image of basis j.
    pub fn matrix_of(&self, f: impl Fn(&FrobElement) -> FrobElement) -> [[Scalar; 2]; 2] {
        let [o, x] = self.basis();
        let (fo, fx) = (f(&o), f(&x));
        [[fo.a, fx.a], [fo.b, fx.b]]
    }

    /// Actions of 1, σ, X, Xσ on A.
    pub fn crossed_product_matrices(&self) -> [[[Scalar; 2]; 2]; 4] {
        let x = self.x();
        [
            self.matrix_of(|p| p.clone()),
            self.matrix_of(|p| self.sigma_plus(p)),
            self.matrix_of(|p| self.mul(&x, p)),
            self.matrix_of(|p| self.mul(&x, &self.sigma_plus(p))),
        ]
    }

    /// The 4×4 matrix with the four actions as columns (entries read
    /// row by row), its determinant, and whether it is invertible.
    pub fn galois_check(&self) -> (Vec<Vec<Scalar>>, Scalar, bool) {
        let mats = self.crossed_product_matrices();
        let u: Vec<Vec<Scalar>> = (0..4)
            .map(|r| mats.iter().map(|mm| mm[r / 2][r % 2].clone()).collect())
            .collect();
        let polys: Vec<Vec<GaussPoly>> = u
            .iter()
            .map(|r| r.iter().map(|s| s.as_poly().expect("polynomial entries").clone()).collect())
            .collect();
        let det = LocPoly::from_poly(bareiss(&polys, self.ring.vars()).det.expect("square"));
        let galois = self.ring.inverse(&det).is_ok();
        (u, det, galois)
    }

    /// Named identities of the algebra, each checked on a basis.
    pub fn identities(&self) -> Vec<(String, bool)> {
        let r = self.ring;
        let mut out: Vec<(String, bool)> = Vec::new();
        let mut check = |name: &str, ok: bool| out.push((name.to_string(), ok));
        let [o, x] = self.basis();
        let basis = [o.clone(), x.clone()];
        let e1 = r.e1();
        let e2 = r.e2();
        check("X*X = E1*X - E2", self.mul(&x, &x) == FrobElement::new(-&e2, e1.clone()));
        check("eps(1) = 0, eps(X) = 1", self.eps(&o).is_zero() && self.eps(&x).is_one());
        check("eps(X2) = -1", self.eps(&self.x2()) == r.int(-1));
        check("m(Delta(1)) = Xstar", self.m(&self.delta(&o)) == self.xstar());
        check("Xstar^2 = D", self.mul(&self.xstar(), &self.xstar()) == self.scalar(r.discriminant()));
        let frob = self.tensor_basis().iter().enumerate().all(|(i, _)| {
            let (u, v) = (&basis[i & 1], &basis[i >> 1]);
            self.tensor_mul(&TensorElement::pure(u, &o), &self.delta(v)) == self.delta(&self.mul(u, v))
        });
        check("(m x id)(id x Delta) = Delta m", frob);
        let counit = basis.iter().all(|b| {
            let d = self.delta(b);
            let [o, x] = self.basis();
            let parts = [(&o, &o), (&x, &o), (&o, &x), (&x, &x)];
            let back = parts.iter().zip(&d.0).fold(self.scalar(r.int(0)), |acc, ((l, rr), c)| acc.add(&rr.scale(&(&self.eps(l) * c))));
            &back == b
        });
        check("(eps x id) Delta = id", counit);
        check("eps sigma+ = -eps", basis.iter().all(|b| self.eps(&self.sigma_plus(b)) == -self.eps(b)));
        check("eps sigma- = eps", basis.iter().all(|b| self.eps(&self.sigma_minus(b)) == self.eps(b)));
        let sp = |p: &FrobElement| self.sigma_plus(p);
        let sm = |p: &FrobElement| self.sigma_minus(p);
        let id = |p: &FrobElement| p.clone();
        check(
            "(s+ x s+) Delta s+ = -Delta",
            basis.iter().all(|b| self.apply2(sp, sp, &self.delta(&sp(b))) == self.delta(b).scale(&r.int(-1))),
        );
        check(
            "(s- x s-) Delta s- = Delta",
            basis.iter().all(|b| self.apply2(sm, sm, &self.delta(&sm(b))) == self.delta(b)),
        );
        let tb = self.tensor_basis();
        check("s+ m (s+ x s+) = m", tb.iter().all(|t| sp(&self.m(&self.apply2(sp, sp, t))) == self.m(t)));
        check("s- m (s- x s-) = -m", tb.iter().all(|t| sm(&self.m(&self.apply2(sm, sm, t))) == self.m(t).neg()));
        for (name, f, g) in [
            ("m (s+ x 1) Delta = 0", &sp as &dyn Fn(&FrobElement) -> FrobElement, &id as &dyn Fn(&FrobElement) -> FrobElement),
            ("m (1 x s+) Delta = 0", &id, &sp),
            ("m (s- x 1) Delta = 0", &sm, &id),
            ("m (1 x s-) Delta = 0", &id, &sm),
        ] {
            check(name, basis.iter().all(|b| self.m(&self.apply2(f, g, &self.delta(b))).is_zero()));
        }
        check("s+ s+ = id", basis.iter().all(|b| sp(&sp(b)) == *b));
        let x2 = self.x2();
        check(
            "neck cutting: a = X eps(a) - eps(X2 a)",
            basis.iter().all(|b| x.scale(&self.eps(b)).sub(&o.scale(&self.eps(&self.mul(&x2, b)))) == *b),
        );
        check("dot slide: s+(X a) = X2 s+(a)", basis.iter().all(|b| sp(&self.mul(&x, b)) == self.mul(&x2, &sp(b))));
        let xs = self.xstar();
        check("star flip: s+(Xstar a) = Xstar s-(a)", basis.iter().all(|b| sp(&self.mul(&xs, b)) == self.mul(&xs, &sm(b))));
        if r.omega {
            let w = r.omega_unit().expect("omega ring");
            check("w^2 = -1", &w * &w == r.int(-1));
        }
        if r.localized() {
            let dd = |b: &FrobElement| self.delta_d(b).expect("localized");
            check("m Delta_D = id", basis.iter().all(|b| self.m(&dd(b)) == *b));
            let e = self.separability_idempotent().expect("localized");
            check("m(e) = 1", self.m(&e) == o);
            check("e e = e", self.tensor_mul(&e, &e) == e);
            check("swap(e) = e", e.swap() == e);
            let k = TensorElement::pure(&x, &o).sub(&TensorElement::pure(&o, &x));
            check("e (X x 1 - 1 x X) = 0", self.tensor_mul(&e, &k).is_zero());
            let d1 = self.delta(&o);
            let dinv = self.disc_inverse().expect("localized");
            check("e = D^-1 Delta(1)^2", self.tensor_mul(&d1, &d1).scale(&dinv) == e);
        }
        if r.has_alpha() {
            let (a1, a2) = (r.alpha(0).unwrap(), r.alpha(1).unwrap());
            let xa1 = FrobElement::new(-&a1, r.int(1));
            let xa2 = FrobElement::new(-&a2, r.int(1));
            let sa = |p: &FrobElement| self.sigma_alpha(p).expect("alpha ring");
            check("s(X - a1) = a2 - X", sp(&xa1) == xa2.neg());
            check("s(X - a2) = a1 - X", sp(&xa2) == xa1.neg());
            check("s_a(X) = X, s_a(X - a1) = X - a2", sa(&x) == x && sa(&xa1) == xa2);
            check("s s_a (X - a1) = -(X - a1)", sp(&sa(&xa1)) == xa1.neg());
            check("s s_a (X - a2) = -(X - a2)", sp(&sa(&xa2)) == xa2.neg());
            check("s s_a = s_a s", basis.iter().chain([&xa1]).all(|b| sp(&sa(b)) == sa(&sp(b))));
        }
        if r.tag == RingTag::RAlphaD {
            let (e1, e2) = self.lee_idempotents().expect("alpha D");
            let (a1, a2) = (r.alpha(0).unwrap(), r.alpha(1).unwrap());
            check("e1 + e2 = 1", e1.add(&e2) == o);
            check("e1^2 = e1, e2^2 = e2", self.mul(&e1, &e1) == e1 && self.mul(&e2, &e2) == e2);
            check("e1 e2 = 0", self.mul(&e1, &e2).is_zero());
            let diff = e2.sub(&e1);
            check("(e2 - e1)^2 = 1", self.mul(&diff, &diff) == o);
            check("Delta(e1) = (a2 - a1) e1 x e1", self.delta(&e1) == TensorElement::pure(&e1, &e1).scale(&(&a2 - &a1)));
            check("Delta(e2) = (a1 - a2) e2 x e2", self.delta(&e2) == TensorElement::pure(&e2, &e2).scale(&(&a1 - &a2)));
            check("eps(e1) = (a2 - a1)^-1", self.eps(&e1) == r.inverse(&(&a2 - &a1)).unwrap());
            let astar_inv = r.inverse(&(&a1 - &a2)).unwrap();
            check("Xstar / astar = e2 - e1", self.xstar().scale(&astar_inv) == diff);
        }
        let (_, det, galois) = self.galois_check();
        check("det U = -D", det == -r.discriminant());
        check("Galois iff D invertible", galois == r.localized());
        out
    }
}

/// Structure of F[y]/(y² − a₁y + a₂) over a field F.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadraticKind {
    SeparableField,
    InseparableField,
    SplitProduct,
    Nilpotent,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Classification {
    pub kind: QuadraticKind,
    pub discriminant: String,
    /// The two roots when the polynomial factors over F.
    pub roots: Option<[String; 2]>,
}

fn parse_rational(s: &str) -> Result<BigRational, FrobError> {
    let err = || FrobError::Parse(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer().clone(), q.denom().clone());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == n && &rd * &rd == d).then(|| BigRational::new(rn, rd))
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Classifies y² − a₁y + a₂ over ℚ (`characteristic = 0`, rational inputs
/// such as `"3/4"`) or over 𝔽_p for a prime p ≤ 10⁴.
pub fn classify_quadratic(characteristic: u64, a1: &str, a2: &str) -> Result<Classification, FrobError> {
    let (a1, a2) = (parse_rational(a1)?, parse_rational(a2)?);
    if characteristic == 0 {
        let d = &a1 * &a1 - BigRational::from_integer(4.into()) * &a2;
        let two = BigRational::from_integer(2.into());
        let (kind, roots) = if d.is_zero() {
            let r = (&a1 / &two).to_string();
            (QuadraticKind::Nilpotent, Some([r.clone(), r]))
        } else if let Some(s) = rational_sqrt(&d) {
            let r1 = (&a1 + &s) / &two;
            let r2 = (&a1 - &s) / &two;
            (QuadraticKind::SplitProduct, Some([r1.to_string(), r2.to_string()]))
        } else {
            (QuadraticKind::SeparableField, None)
        };
        return Ok(Classification {
            kind,
            discriminant: d.to_string(),
            roots,
        });
    }
    if characteristic > 10_000 || !is_prime(characteristic) {
        return Err(FrobError::InvalidCharacteristic(characteristic));
    }
    let p = characteristic as i64;
    let modp = |q: &BigRational| -> Result<i64, FrobError> {
        let pb = BigInt::from(p);
        let den = q.denom().mod_floor_pos(&pb);
        if den.is_zero() {
            return Err(FrobError::Parse(format!("{q} has denominator divisible by {p}")));
        }
        let num = q.numer().mod_floor_pos(&pb);
        // den^{p-2} is the inverse mod p
        let inv = den.modpow(&BigInt::from(p - 2), &pb);
        Ok(i64::try_from((num * inv) % &pb).expect("small"))
    };
    let (b1, b2) = (modp(&a1)?, modp(&a2)?);
    let d = (b1 * b1 - 4 * b2).rem_euclid(p);
    let roots: Vec<i64> = (0..p).filter(|y| (y * y - b1 * y + b2).rem_euclid(p) == 0).collect();
    let kind = if p == 2 {
        if b1 == 0 {
            // y² + a₂ = (y + √a₂)² when a₂ is a square
            if (0..p).any(|y| (y * y - b2).rem_euclid(p) == 0) {
                QuadraticKind::Nilpotent
            } else {
                QuadraticKind::InseparableField
            }
        } else if roots.is_empty() {
            QuadraticKind::SeparableField
        } else {
            QuadraticKind::SplitProduct
        }
    } else if d == 0 {
        QuadraticKind::Nilpotent
    } else if roots.is_empty() {
        QuadraticKind::SeparableField
    } else {
        QuadraticKind::SplitProduct
    };
    let roots = match roots.as_slice() {
        [r] => Some([r.to_string(), r.to_string()]),
        [r, s] => Some([r.to_string(), s.to_string()]),
        _ => None,
    };
    Ok(Classification {
        kind,
        discriminant: d.to_string(),
        roots,
    })
}

trait ModPos {
    fn mod_floor_pos(&self, m: &BigInt) -> BigInt;
}

impl ModPos for BigInt {
    fn mod_floor_pos(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_rings() -> Vec<BaseRing> {
        BaseRing::ALL
            .iter()
            .flat_map(|&t| [BaseRing::new(t, false), BaseRing::new(t, true)])
            .collect()
    }

    #[test]
    fn identities_hold_in_every_ring() {
        for r in all_rings() {
            for (name, ok) in Frobenius::new(r).identities() {
                assert!(ok, "{name} fails over {r}");
            }
        }
    }

    #[test]
    fn crossed_product_matrix_of_x_sigma() {
        let f = Frobenius::new(BaseRing::new(RingTag::R, false));
        let [_, s, x, xs] = f.crossed_product_matrices();
        let show = |m: &[[Scalar; 2]; 2]| format!("[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1]);
        assert_eq!(show(&xs), "[[0, E2], [1, 0]]");
        assert_eq!(show(&s), "[[1, E1], [0, -1]]");
        assert_eq!(show(&x), "[[0, -E2], [1, E1]]");
        let (_, det, galois) = f.galois_check();
        assert_eq!(det.to_string(), "-E1^2 + 4*E2");
        assert!(!galois);
        assert!(Frobenius::new(BaseRing::new(RingTag::RD, false)).galois_check().2);
    }

    #[test]
    fn eq57_values() {
        let f = Frobenius::new(BaseRing::new(RingTag::R, false));
        let id = |p: &FrobElement| p.clone();
        let sp = |p: &FrobElement| f.sigma_plus(p);
        let sm = |p: &FrobElement| f.sigma_minus(p);
        assert!(f.m(&f.apply2(sp, id, &f.delta(&f.one()))).is_zero());
        assert!(f.m(&f.apply2(id, sm, &f.delta(&f.x()))).is_zero());
        assert_eq!(f.m(&f.delta(&f.one())), f.xstar());
    }

    #[test]
    fn sigma_alpha_needs_alpha_ring() {
        let f = Frobenius::new(BaseRing::new(RingTag::R, false));
        assert!(f.sigma_alpha(&f.x()).is_err());
        assert!(f.lee_idempotents().is_err());
        assert!(f.separability_idempotent().is_err());
    }

    #[test]
    fn lee_counit_value() {
        let r = BaseRing::new(RingTag::RAlphaD, false);
        let f = Frobenius::new(r);
        let (e1, _) = f.lee_idempotents().unwrap();
        assert_eq!(f.eps(&e1).to_string(), "-1/(a1 - a2)");
    }

    #[test]
    fn ring_names_round_trip() {
        for r in all_rings() {
            assert_eq!(BaseRing::parse(&r.to_string()).unwrap(), r);
        }
        assert!(BaseRing::parse("Q").is_err());
    }

    #[test]
    fn classify_examples() {
        use QuadraticKind::*;
        let k = |c, a, b| classify_quadratic(c, a, b).unwrap().kind;
        assert_eq!(k(0, "0", "1"), SeparableField);
        let split = classify_quadratic(0, "0", "-1").unwrap();
        assert_eq!(split.kind, SplitProduct);
        assert_eq!(split.roots, Some(["1".to_string(), "-1".to_string()]));
        assert_eq!(k(0, "2", "1"), Nilpotent);
        assert_eq!(k(0, "1/2", "1/16"), Nilpotent);
        assert_eq!(k(5, "2", "1"), Nilpotent);
        assert_eq!(k(3, "0", "1"), SeparableField);
        assert_eq!(k(5, "0", "1"), SplitProduct);
        assert_eq!(k(2, "0", "1"), Nilpotent);
        assert_eq!(k(2, "0", "0"), Nilpotent);
        assert_eq!(k(2, "1", "1"), SeparableField);
        assert_eq!(k(2, "1", "0"), SplitProduct);
        assert_eq!(classify_quadratic(4, "0", "1").unwrap_err(), FrobError::InvalidCharacteristic(4));
        assert_eq!(classify_quadratic(10007, "0", "1").unwrap_err(), FrobError::InvalidCharacteristic(10007));
        assert!(classify_quadratic(0, "x", "1").is_err());
    }
}
