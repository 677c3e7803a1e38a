use num_bigint::BigInt;

use super::{Coeff, Poly, VarSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BareissResult<C: Coeff> {
    /// Rank over the fraction field.
    pub rank: usize,
    /// Determinant, for square input.
    pub det: Option<Poly<C>>,
    /// Columns holding the echelon pivots, in order.
    pub pivot_cols: Vec<usize>,
}

/// Fraction-free Gaussian elimination. Every division is exact because each
/// intermediate entry is a minor of the input.
pub fn bareiss<C: Coeff>(matrix: &[Vec<Poly<C>>], vars: VarSet) -> BareissResult<C> {
    let n = matrix.len();
    let m = matrix.first().map_or(0, |r| r.len());
    assert!(matrix.iter().all(|r| r.len() == m), "ragged matrix");
    let mut a: Vec<Vec<Poly<C>>> = matrix.to_vec();
    let mut prev = Poly::one(vars);
    let mut r = 0;
    let mut negate = false;
    let mut pivot_cols = Vec::new();
    for col in 0..m {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            negate = !negate;
        }
        for i in r + 1..n {
            for j in col + 1..m {
                let t = &a[r][col] * &a[i][j] - &a[i][col] * &a[r][j];
                a[i][j] = t
                    .exact_divide(&prev)
                    .expect("Bareiss step must divide exactly");
            }
            a[i][col] = Poly::zero(vars);
        }
        prev = a[r][col].clone();
        pivot_cols.push(col);
        r += 1;
    }
    let det = (n == m).then(|| {
        if r < n {
            Poly::zero(vars)
        } else if n == 0 {
            Poly::one(vars)
        } else if negate {
            -&a[n - 1][n - 1]
        } else {
            a[n - 1][n - 1].clone()
        }
    });
    BareissResult {
        rank: r,
        det,
        pivot_cols,
    }
}

pub fn bareiss_rank<C: Coeff>(matrix: &[Vec<Poly<C>>], vars: VarSet) -> usize {
    bareiss(matrix, vars).rank
}

/// Rank after substituting integers for the two variables.
pub fn specialized_rank<C: Coeff>(matrix: &[Vec<Poly<C>>], point: &[BigInt; 2]) -> usize {
    let vals: Vec<Vec<Poly<C>>> = matrix
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| Poly::constant(VarSet::Elementary, p.specialize(point)))
                .collect()
        })
        .collect();
    bareiss(&vals, VarSet::Elementary).rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, IntPoly};

    fn m(rows: &[&[&str]]) -> Vec<Vec<IntPoly>> {
        rows.iter()
            .map(|r| r.iter().map(|s| parse_poly(s, Some(VarSet::Elementary)).unwrap()).collect())
            .collect()
    }

    #[test]
    fn two_by_two() {
        let r = bareiss(&m(&[&["0", "1"], &["1", "E1"]]), VarSet::Elementary);
        assert_eq!(r.rank, 2);
        assert_eq!(r.det.unwrap().to_string(), "-1");
    }

    #[test]
    fn zero_matrix() {
        let r = bareiss(&m(&[&["0", "0", "0"], &["0", "0", "0"], &["0", "0", "0"]]), VarSet::Elementary);
        assert_eq!(r.rank, 0);
        assert!(r.det.unwrap().is_zero());
    }

    #[test]
    fn rectangular_with_skipped_column() {
        let r = bareiss(&m(&[&["0", "E1", "E2"], &["0", "E1^2", "E1*E2"], &["0", "0", "1"]]), VarSet::Elementary);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![1, 2]);
    }

    #[test]
    fn symbolic_three_by_three() {
        let mat = m(&[&["E1", "1", "0"], &["E2", "E1", "1"], &["0", "E2", "E1"]]);
        // cofactor expansion by hand
        let det = parse_poly::<BigInt>("E1^3 - 2*E1*E2", None).unwrap();
        assert_eq!(bareiss(&mat, VarSet::Elementary).det.unwrap(), det);
    }

    #[test]
    fn swapped_rows_change_sign() {
        let r = bareiss(&m(&[&["0", "E1"], &["E2", "3"]]), VarSet::Elementary);
        assert_eq!(r.det.unwrap().to_string(), "-E1*E2");
    }

    #[test]
    fn specialized_rank_drops_on_special_points() {
        let mat = m(&[&["E1", "2"], &["E2", "E1"]]);
        assert_eq!(specialized_rank(&mat, &[BigInt::from(2), BigInt::from(2)]), 1);
        assert_eq!(specialized_rank(&mat, &[BigInt::from(3), BigInt::from(2)]), 2);
    }
}
