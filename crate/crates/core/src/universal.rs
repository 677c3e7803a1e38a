//! State spaces from the universal construction: Gram matrices of spanning
//! cobordisms, ranks, graded ranks and induced linear maps.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::cobordism::{CobError, Cobordism, Gen, Level, Meom, Word};
use crate::evaluation::{evaluate, EvalError, EvalMode};
use crate::poly::{bareiss, specialized_rank, Coeff, GaussPoly, Gaussian, Poly, VarSet};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum UniversalError {
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("Gram matrix of the target basis is singular")]
    SingularGram,
    #[error("standard spanning sets need unmarked circles")]
    MarkedPoints,
    #[error(transparent)]
    Cobordism(#[from] CobError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

const VARS: VarSet = VarSet::Elementary;

/// Evaluation of the closed surface `W`.
pub fn eval_closed(w: &Cobordism, mode: EvalMode) -> Result<GaussPoly, UniversalError> {
    Ok(evaluate(&w.close()?, mode)?)
}

/// Pairing of `u, v: ∅ → C`: evaluation of `mirror(u) ∘ v`.
pub fn pairing(u: &Cobordism, v: &Cobordism, mode: EvalMode) -> Result<GaussPoly, UniversalError> {
    if u.top != v.top {
        return Err(UniversalError::BoundaryMismatch(format!("{} vs {}", u.top, v.top)));
    }
    eval_closed(&u.mirror().compose(v)?, mode)
}

pub fn gram(boundary: &Meom, spanning: &[Cobordism], mode: EvalMode) -> Result<Vec<Vec<GaussPoly>>, UniversalError> {
    for (i, w) in spanning.iter().enumerate() {
        if !w.bottom.is_empty() || w.top != *boundary {
            return Err(UniversalError::BoundaryMismatch(format!(
                "element {i} goes {} → {}, expected ∅ → {boundary}",
                w.bottom, w.top
            )));
        }
    }
    let n = spanning.len();
    let mut g = vec![vec![GaussPoly::zero(VARS); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = pairing(&spanning[i], &spanning[j], mode)?;
            g[j][i] = v.clone();
            g[i][j] = v;
        }
    }
    Ok(g)
}

/// Evaluations of `probe ∘ W` for each probe `C → ∅`.
pub fn state_vector(w: &Cobordism, probes: &[Cobordism], mode: EvalMode) -> Result<Vec<GaussPoly>, UniversalError> {
    probes
        .iter()
        .map(|p| {
            if p.bottom != w.top || !p.top.is_empty() || !w.bottom.is_empty() {
                return Err(UniversalError::BoundaryMismatch(format!("{} vs {}", w.top, p.bottom)));
            }
            eval_closed(&p.compose(w)?, mode)
        })
        .collect()
}

/// Multiset of q-degrees as a Laurent polynomial.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GradedRank(pub BTreeMap<i64, usize>);

impl GradedRank {
    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn from_degrees(degrees: impl IntoIterator<Item = i64>) -> Self {
        let mut m = BTreeMap::new();
        for d in degrees {
            *m.entry(d).or_insert(0) += 1;
        }
        GradedRank(m)
    }
}

impl fmt::Display for GradedRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(&d, &c)| {
                let q = match d {
                    0 => String::new(),
                    1 => "q".to_string(),
                    d => format!("q^{d}"),
                };
                match (c, q.is_empty()) {
                    (c, true) => c.to_string(),
                    (1, false) => q,
                    (c, false) => format!("{c}*{q}"),
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Debug)]
pub struct StateSpace {
    pub boundary: Meom,
    pub spanning: Vec<Cobordism>,
    pub gram: Vec<Vec<GaussPoly>>,
    pub mode: EvalMode,
}

impl StateSpace {
    pub fn new(boundary: &Meom, spanning: Vec<Cobordism>, mode: EvalMode) -> Result<Self, UniversalError> {
        let gram = gram(boundary, &spanning, mode)?;
        Ok(StateSpace {
            boundary: boundary.clone(),
            spanning,
            gram,
            mode,
        })
    }

    pub fn rank(&self) -> usize {
        bareiss(&self.gram, VARS).rank
    }

    pub fn det(&self) -> GaussPoly {
        bareiss(&self.gram, VARS).det.expect("Gram matrices are square")
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.spanning.iter().map(|w| w.degree()).collect()
    }

    /// Indices of a maximal independent subset chosen greedily by ascending
    /// degree, ties in input order.
    pub fn independent_subset(&self) -> Vec<usize> {
        let degs = self.degrees();
        let mut order: Vec<usize> = (0..degs.len()).collect();
        order.sort_by_key(|&i| degs[i]);
        let mut chosen: Vec<usize> = Vec::new();
        for i in order {
            let mut trial = chosen.clone();
            trial.push(i);
            let rows: Vec<Vec<GaussPoly>> = trial.iter().map(|&r| self.gram[r].clone()).collect();
            if bareiss(&rows, VARS).rank == trial.len() {
                chosen = trial;
            }
        }
        chosen
    }

    pub fn graded_rank(&self) -> GradedRank {
        let degs = self.degrees();
        GradedRank::from_degrees(self.independent_subset().into_iter().map(|i| degs[i]))
    }

    /// Rank after substituting integers for E₁, E₂.
    pub fn specialized_rank(&self, point: &[BigInt; 2]) -> usize {
        specialized_rank(&self.gram, point)
    }
}

/// Element of the fraction field of ℤ[ω][E₁,E₂], reduced when the
/// denominator divides the numerator.
#[derive(Clone, Debug)]
pub struct Frac {
    pub num: GaussPoly,
    pub den: GaussPoly,
}

impl Frac {
    pub fn new(num: GaussPoly, den: GaussPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if let Ok(q) = num.exact_divide(&den) {
            return Frac {
                num: q,
                den: GaussPoly::one(VARS),
            };
        }
        // make the leading denominator coefficient positive when it is real
        let flip = den
            .leading_term()
            .map(|(_, c)| c.im == BigInt::from(0) && c.re < BigInt::from(0))
            .unwrap_or(false);
        if flip {
            Frac { num: -num, den: -den }
        } else {
            Frac { num, den }
        }
    }

    pub fn from_poly(p: GaussPoly) -> Self {
        Frac {
            num: p,
            den: GaussPoly::one(VARS),
        }
    }

    pub fn as_poly(&self) -> Option<&GaussPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, o: &Frac) -> Frac {
        Frac::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn add(&self, o: &Frac) -> Frac {
        if self.den == o.den {
            return Frac::new(&self.num + &o.num, self.den.clone());
        }
        Frac::new(&self.num * &o.den + &o.num * &self.den, &self.den * &o.den)
    }

    pub fn scale(&self, c: &Gaussian) -> Frac {
        Frac::new(self.num.scale(c), self.den.clone())
    }
}

impl PartialEq for Frac {
    fn eq(&self, o: &Frac) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Matrix of a linear map; column `b` holds the coordinates of the image
/// of source basis element `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedMatrix {
    pub entries: Vec<Vec<Frac>>,
}

impl InducedMatrix {
    /// Whether every entry is a polynomial.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.as_poly().is_some())
    }

    /// Polynomial entries, if integral.
    pub fn as_polys(&self) -> Option<Vec<Vec<GaussPoly>>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|e| e.as_poly().cloned()).collect())
            .collect()
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Frac::from_poly(GaussPoly::int(VARS, (i == j) as i64)))
                    .collect()
            })
            .collect();
        InducedMatrix { entries }
    }

    pub fn mul(&self, o: &InducedMatrix) -> InducedMatrix {
        let inner = o.entries.len();
        let cols = o.entries.first().map_or(0, |r| r.len());
        let entries = self
            .entries
            .iter()
            .map(|row| {
                (0..cols)
                    .map(|j| {
                        (0..inner).fold(Frac::from_poly(GaussPoly::zero(VARS)), |acc, k| {
                            acc.add(&row[k].mul(&o.entries[k][j]))
                        })
                    })
                    .collect()
            })
            .collect();
        InducedMatrix { entries }
    }

    pub fn scale(&self, c: &Gaussian) -> InducedMatrix {
        InducedMatrix {
            entries: self.entries.iter().map(|r| r.iter().map(|e| e.scale(c)).collect()).collect(),
        }
    }

    pub fn from_polys(rows: Vec<Vec<GaussPoly>>) -> Self {
        InducedMatrix {
            entries: rows.into_iter().map(|r| r.into_iter().map(Frac::from_poly).collect()).collect(),
        }
    }
}

impl fmt::Display for InducedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Matrix of `[V] ↦ [W ∘ V]` from `basis0` (boundary of `W`'s source) to
/// `basis1`, solving `Gram₁ · x = ⟨basis₁, W ∘ b⟩` by Cramer's rule.
pub fn induced_matrix(
    w: &Cobordism,
    basis0: &[Cobordism],
    basis1: &[Cobordism],
    mode: EvalMode,
) -> Result<InducedMatrix, UniversalError> {
    let g1 = gram(&w.top, basis1, mode)?;
    let det = bareiss(&g1, VARS).det.expect("square");
    if det.is_zero() {
        return Err(UniversalError::SingularGram);
    }
    let n = basis1.len();
    let mut entries = vec![Vec::with_capacity(basis0.len()); n];
    for b in basis0 {
        if !b.bottom.is_empty() || b.top != w.bottom {
            return Err(UniversalError::BoundaryMismatch(format!("source element ends on {}, map starts at {}", b.top, w.bottom)));
        }
        let image = w.compose(b)?;
        let y: Vec<GaussPoly> = basis1.iter().map(|t| pairing(t, &image, mode)).collect::<Result<_, _>>()?;
        for (row, out) in entries.iter_mut().enumerate() {
            let mut m = g1.clone();
            for (i, r) in m.iter_mut().enumerate() {
                r[row] = y[i].clone();
            }
            let num = bareiss(&m, VARS).det.expect("square");
            out.push(Frac::new(num, det.clone()));
        }
    }
    Ok(InducedMatrix { entries })
}

/// Cup forests with at most one dot per cup bounding an unmarked meom,
/// ordered with circle 0 as the lowest bit (1⊗1, X⊗1, 1⊗X, X⊗X, ...).
pub fn standard_spanning(c: &Meom) -> Result<Vec<Cobordism>, UniversalError> {
    if c.num_marks() > 0 {
        return Err(UniversalError::MarkedPoints);
    }
    c.validate()?;
    // parents before children
    let mut order: Vec<usize> = Vec::new();
    while order.len() < c.len() {
        for x in 0..c.len() {
            if !order.contains(&x) && c.circles[x].parent.is_none_or(|p| order.contains(&p)) {
                order.push(x);
            }
        }
    }
    let pos: Vec<usize> = {
        let mut p = vec![0; c.len()];
        for (i, &x) in order.iter().enumerate() {
            p[x] = i;
        }
        p
    };
    let k = c.len();
    let mut out = Vec::with_capacity(1 << k);
    for e in 0..(1usize << k) {
        let mut word: Vec<Gen> = order
            .iter()
            .map(|&x| Gen::Cup {
                parent: c.circles[x].parent.map(|p| pos[p]),
            })
            .collect();
        for (x, &px) in pos.iter().enumerate() {
            if e >> x & 1 == 1 {
                word.push(Gen::Dot { circle: px, arc: 0 });
            }
        }
        let built = Word::from_empty(word).build()?;
        let w = built.relabel(Level::Top, &order, &vec![0; k]);
        debug_assert_eq!(w.top, *c);
        out.push(w);
    }
    Ok(out)
}

/// Matrix form of the (1+1)-dimensional TQFT maps on {1, X}, in the
/// product basis order of [`standard_spanning`].
pub mod tqft {
    use super::*;

    fn p(n: i64) -> GaussPoly {
        GaussPoly::int(VARS, n)
    }

    fn e1() -> GaussPoly {
        Poly::var(VARS, 0)
    }

    fn e2() -> GaussPoly {
        Poly::var(VARS, 1)
    }

    /// σ₊(1) = 1, σ₊(X) = E₁ − X.
    pub fn sigma_plus() -> Vec<Vec<GaussPoly>> {
        vec![vec![p(1), e1()], vec![p(0), p(-1)]]
    }

    pub fn sigma_minus() -> Vec<Vec<GaussPoly>> {
        sigma_plus().into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect()
    }

    pub fn unit() -> Vec<Vec<GaussPoly>> {
        vec![vec![p(1)], vec![p(0)]]
    }

    pub fn dotted_unit() -> Vec<Vec<GaussPoly>> {
        vec![vec![p(0)], vec![p(1)]]
    }

    /// ε(1) = 0, ε(X) = 1.
    pub fn counit() -> Vec<Vec<GaussPoly>> {
        vec![vec![p(0), p(1)]]
    }

    /// m on 1⊗1, X⊗1, 1⊗X, X⊗X.
    pub fn multiplication() -> Vec<Vec<GaussPoly>> {
        vec![vec![p(1), p(0), p(0), -e2()], vec![p(0), p(1), p(1), e1()]]
    }

    /// Δ(1) = X⊗1 + 1⊗X − E₁ 1⊗1, Δ(X) = X⊗X − E₂ 1⊗1.
    pub fn comultiplication() -> Vec<Vec<GaussPoly>> {
        vec![vec![-e1(), -e2()], vec![p(1), p(0)], vec![p(1), p(0)], vec![p(0), p(1)]]
    }
}

/// Lift an integer-coefficient matrix.
pub fn gauss_matrix<C: Coeff>(m: &[Vec<Poly<C>>]) -> Vec<Vec<GaussPoly>> {
    m.iter().map(|r| r.iter().map(|x| x.to_gauss()).collect()).collect()
}
