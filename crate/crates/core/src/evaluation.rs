//! The two evaluations of closed seamed surfaces: the signed coloring sum
//! with values in ℤ[E₁,E₂], and its ω-twisted variant over ℤ[ω][E₁,E₂].

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Coeff, GaussPoly, Gaussian, IntPoly, LocPoly, Localization, Poly, VarSet};
use crate::surface::{ClosedSeamedSurface, Coloring, SurfaceError};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalMode {
    #[default]
    Plain,
    Omega,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EvalResult<C: Coeff> {
    pub value: Poly<C>,
    pub degree: i64,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("invalid surface: {0:?}")]
    Invalid(Vec<SurfaceError>),
    #[error(transparent)]
    Coloring(#[from] SurfaceError),
    /// A polynomiality, symmetry or degree check failed; indicates a bug.
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

fn sign<C: Coeff>(odd: bool) -> C {
    if odd {
        C::from_i64(-1)
    } else {
        C::one()
    }
}

fn alpha_mono(d1: u64, d2: u64) -> IntPoly {
    Poly::monomial(VarSet::Alpha, [d1 as u32, d2 as u32], BigInt::from(1))
}

/// α₂ − α₁
fn alpha_gap() -> IntPoly {
    Poly::var(VarSet::Alpha, 1) - Poly::var(VarSet::Alpha, 0)
}

/// `(−1)^s α₁^{d₁} α₂^{d₂} / (α₂−α₁)^{χ/2}` with `s = θ₁ + χ(F̄₁)/2`.
pub fn eval_colored(f: &ClosedSeamedSurface, c: &Coloring) -> Result<LocPoly<BigInt>, EvalError> {
    let st = f.coloring_stats(c)?;
    let s = st.theta1 as i64 + st.chi_f1_bar / 2;
    let k = f.euler_characteristic() / 2;
    let mono = alpha_mono(st.d1, st.d2);
    Ok(divide_by_gap(mono.scale(&sign(s % 2 != 0)), k))
}

/// Companion formula using the color-2 closure and α₁−α₂ in the denominator.
/// It agrees with [`eval_colored`] up to the factor `(−1)^{θ(F)}`.
pub fn eval_colored_dual(f: &ClosedSeamedSurface, c: &Coloring) -> Result<LocPoly<BigInt>, EvalError> {
    let st = f.coloring_stats(c)?;
    let s = st.theta1 as i64 + st.chi_f2_bar / 2;
    let k = f.euler_characteristic() / 2;
    let mono = alpha_mono(st.d1, st.d2).scale(&sign(s % 2 != 0));
    Ok(if k >= 0 {
        LocPoly::new(mono, k as u32, Localization::AlphaDiff).expect("alpha variables")
    } else {
        let base: IntPoly = Localization::AlphaDiff.base();
        LocPoly::from_poly(mono * base.pow((-k) as u32))
    })
}

/// `p / (α₂−α₁)^k` for any integer `k`, inside the α-localization.
fn divide_by_gap(p: IntPoly, k: i64) -> LocPoly<BigInt> {
    if k >= 0 {
        // (α₂−α₁)^{-k} = (−1)^k (α₁−α₂)^{-k}
        LocPoly::new(p.scale(&sign(k % 2 != 0)), k as u32, Localization::AlphaDiff)
            .expect("alpha variables")
    } else {
        LocPoly::from_poly(p * alpha_gap().pow((-k) as u32))
    }
}

/// Evaluation of one connected component, exact in ℤ[α₁,α₂] before
/// conversion to the elementary basis.
fn eval_component(f: &ClosedSeamedSurface) -> Result<IntPoly, EvalError> {
    let comps = f.components();
    debug_assert_eq!(comps.len(), 1);
    let Some(base) = f.propagate_coloring(&comps[0]) else {
        return Ok(IntPoly::zero(VarSet::Elementary));
    };
    let c = Coloring { color: base };
    let k = f.euler_characteristic() / 2;
    let mut num = IntPoly::zero(VarSet::Alpha);
    for col in [c.swapped(), c] {
        let st = f.coloring_stats(&col)?;
        let s = st.theta1 as i64 + st.chi_f1_bar / 2;
        num = num + alpha_mono(st.d1, st.d2).scale(&sign(s % 2 != 0));
        if cfg!(debug_assertions) {
            let a = eval_colored(f, &col)?;
            let mut b = eval_colored_dual(f, &col)?;
            if f.theta() % 2 == 1 {
                b = -b;
            }
            if a != b {
                return Err(EvalError::Internal(format!(
                    "sign conventions disagree on a coloring: {a} vs {b}"
                )));
            }
        }
    }
    let alpha = if k >= 0 {
        num.exact_divide(&alpha_gap().pow(k as u32))
            .map_err(|e| EvalError::Internal(format!("coloring sum not polynomial: {e}")))?
    } else {
        num * alpha_gap().pow((-k) as u32)
    };
    let value = alpha
        .to_elementary()
        .map_err(|e| EvalError::Internal(format!("coloring sum not symmetric: {e}")))?;
    check_degree(&value, f.degree())?;
    Ok(value)
}

fn check_degree<C: Coeff>(value: &Poly<C>, degree: i64) -> Result<(), EvalError> {
    match value.homogeneous_degree() {
        Ok(None) => Ok(()),
        Ok(Some(d)) if d == degree => Ok(()),
        Ok(Some(d)) => Err(EvalError::Internal(format!("value {value} has degree {d}, expected {degree}"))),
        Err(e) => Err(EvalError::Internal(e.to_string())),
    }
}

/// Sum over all checkerboard colorings, computed componentwise and multiplied.
pub fn eval(f: &ClosedSeamedSurface) -> Result<EvalResult<BigInt>, EvalError> {
    f.validate().map_err(EvalError::Invalid)?;
    let mut value = IntPoly::one(VarSet::Elementary);
    for comp in f.split_components() {
        value = value * eval_component(&comp)?;
        if value.is_zero() {
            break;
        }
    }
    Ok(EvalResult {
        value,
        degree: f.degree(),
    })
}

/// Reference evaluation summing every admissible coloring of the whole
/// surface at once; exponential in the number of components.
pub fn eval_all_colorings(f: &ClosedSeamedSurface) -> Result<EvalResult<BigInt>, EvalError> {
    f.validate().map_err(EvalError::Invalid)?;
    let mut total = LocPoly::zero(Localization::AlphaDiff);
    for c in f.admissible_colorings() {
        total = total + eval_colored(f, &c)?;
    }
    let poly = total
        .as_poly()
        .ok_or_else(|| EvalError::Internal(format!("coloring sum not polynomial: {total}")))?;
    let value = poly
        .to_elementary()
        .map_err(|e| EvalError::Internal(e.to_string()))?;
    check_degree(&value, f.degree())?;
    Ok(EvalResult {
        value,
        degree: f.degree(),
    })
}

/// `ω^{−θ(F)} ⟨F⟩`.
pub fn eval_omega(f: &ClosedSeamedSurface) -> Result<EvalResult<Gaussian>, EvalError> {
    let plain = eval(f)?;
    let twist = Gaussian::omega_pow(-(f.theta() as i64));
    Ok(EvalResult {
        value: plain.value.to_gauss().scale(&twist),
        degree: plain.degree,
    })
}

/// Evaluation in either mode, with coefficients in ℤ[ω].
pub fn evaluate(f: &ClosedSeamedSurface, mode: EvalMode) -> Result<GaussPoly, EvalError> {
    match mode {
        EvalMode::Plain => eval(f).map(|r| r.value.to_gauss()),
        EvalMode::Omega => eval_omega(f).map(|r| r.value),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{discriminant, parse_poly};
    use crate::surface::{Facet, Seam, Side};

    fn e(s: &str) -> IntPoly {
        parse_poly(s, Some(VarSet::Elementary)).unwrap()
    }

    fn a_frac(num: &str) -> LocPoly<BigInt> {
        // num / (α₂ − α₁)
        let n: IntPoly = parse_poly(num, Some(VarSet::Alpha)).unwrap();
        LocPoly::new(-n, 1, Localization::AlphaDiff).unwrap()
    }

    #[test]
    fn spheres() {
        assert!(eval(&ClosedSeamedSurface::sphere(0)).unwrap().value.is_zero());
        assert!(eval(&ClosedSeamedSurface::sphere(1)).unwrap().value.is_one());
        assert_eq!(eval(&ClosedSeamedSurface::sphere(2)).unwrap().value, e("E1"));
    }

    #[test]
    fn genus_three() {
        assert_eq!(eval(&ClosedSeamedSurface::genus(3, 0)).unwrap().value.to_string(), "2*E1^2 - 8*E2");
    }

    #[test]
    fn genus_family() {
        let d = discriminant::<BigInt>();
        for n in 0..4u32 {
            let dn = d.pow(n);
            assert!(eval(&ClosedSeamedSurface::genus(2 * n, 0)).unwrap().value.is_zero());
            assert_eq!(eval(&ClosedSeamedSurface::genus(2 * n + 1, 0)).unwrap().value, dn.scale(&BigInt::from(2)));
            assert_eq!(eval(&ClosedSeamedSurface::genus(2 * n, 1)).unwrap().value, dn);
            assert_eq!(eval(&ClosedSeamedSurface::genus(2 * n + 1, 1)).unwrap().value, e("E1") * &dn);
        }
    }

    #[test]
    fn belt_sphere_terms() {
        let f = crate::surface::tests::dotted_belt_sphere();
        let c1 = Coloring { color: vec![2, 1, 2] };
        assert_eq!(eval_colored(&f, &c1).unwrap(), a_frac("-a1"));
        assert_eq!(eval_colored(&f, &c1.swapped()).unwrap(), a_frac("a2"));
        assert!(eval(&f).unwrap().value.is_one());
    }

    #[test]
    fn dotted_sphere_single_coloring() {
        let f = ClosedSeamedSurface::sphere(1);
        // θ₁ = 0 and χ(F̄₁) = 2 give s = 1
        let c = Coloring { color: vec![1] };
        assert_eq!(eval_colored(&f, &c).unwrap(), a_frac("-a1"));
        assert_eq!(eval_colored(&f, &c.swapped()).unwrap(), a_frac("a2"));
    }

    #[test]
    fn tori_with_two_seams() {
        assert_eq!(eval(&ClosedSeamedSurface::two_seam_torus(true)).unwrap().value, e("-2"));
        assert_eq!(eval(&ClosedSeamedSurface::two_seam_torus(false)).unwrap().value, e("2"));
    }

    #[test]
    fn one_seam_sphere() {
        assert_eq!(eval(&ClosedSeamedSurface::seamed_sphere(1, 0)).unwrap().value, e("-1"));
        assert_eq!(eval(&ClosedSeamedSurface::seamed_sphere(0, 1)).unwrap().value, e("1"));
        let w = eval_omega(&ClosedSeamedSurface::seamed_sphere(1, 0)).unwrap().value;
        assert_eq!(w, GaussPoly::omega(VarSet::Elementary));
    }

    #[test]
    fn odd_surface_is_zero() {
        let odd = ClosedSeamedSurface::new(
            vec![Facet::new(1, 0, 2)],
            vec![Seam::new((0, 0), (0, 1), Side::A)],
        );
        assert!(eval(&odd).unwrap().value.is_zero());
    }

    #[test]
    fn omega_examples() {
        let t = eval_omega(&ClosedSeamedSurface::two_seam_torus(true)).unwrap().value;
        assert_eq!(t, GaussPoly::int(VarSet::Elementary, 2));
        let g = ClosedSeamedSurface::genus(3, 1);
        assert_eq!(eval_omega(&g).unwrap().value, eval(&g).unwrap().value.to_gauss());
    }

    #[test]
    fn dual_formula_differs_by_seam_parity() {
        let f = ClosedSeamedSurface::seamed_sphere(1, 0);
        for c in f.admissible_colorings() {
            assert_eq!(eval_colored_dual(&f, &c).unwrap(), -eval_colored(&f, &c).unwrap());
        }
    }

    #[test]
    fn reference_sum_agrees() {
        let f = crate::surface::tests::dotted_belt_sphere()
            .disjoint_union(&ClosedSeamedSurface::genus(1, 1))
            .disjoint_union(&ClosedSeamedSurface::two_seam_torus(false));
        assert_eq!(eval(&f).unwrap(), eval_all_colorings(&f).unwrap());
    }

    #[test]
    fn invalid_surface_rejected() {
        let bad = ClosedSeamedSurface::new(vec![Facet::new(0, 0, 1)], vec![]);
        assert!(matches!(eval(&bad), Err(EvalError::Invalid(_))));
    }
}
