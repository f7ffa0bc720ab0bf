//! Hermite and Smith normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{abs_cmp, IntMatrix};

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `U * M = H` and `U` unimodular. The nonzero rows of `H`
/// come first: pivots strictly move right, each pivot is positive, and the entries
/// above a pivot lie in `[0, pivot)`. Zero rows sit at the bottom and `U` is
/// square; [`hnf_basis`] drops them.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (h, u, _) = hnf_with_rank(m);
    (h, u)
}

pub(crate) fn hnf_with_rank(m: &IntMatrix) -> (IntMatrix, IntMatrix, usize) {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        while let Some(p) = (r..rows)
            .filter(|&i| !h.get(i, c).is_zero())
            .min_by(|&a, &b| abs_cmp(h.get(a, c), h.get(b, c)).then(a.cmp(&b)))
        {
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = -h.get(i, c).div_floor(h.get(r, c));
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                if !h.get(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h.get(i, c).div_floor(h.get(r, c));
            h.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    (h, u, r)
}

/// The nonzero rows of the Hermite normal form: a canonical basis of the row space.
pub fn hnf_basis(m: &IntMatrix) -> IntMatrix {
    let (h, _, rank) = hnf_with_rank(m);
    let rows: Vec<Vec<BigInt>> = (0..rank).map(|i| h.row(i).to_vec()).collect();
    IntMatrix::from_rows(m.cols(), &rows).expect("rows have matching length")
}

/// Smith normal form with the inverse of the column transform.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Smith normal form: `(D, U, V)` with `U * M * V = D`, `D` diagonal, positive
/// invariant factors forming a divisibility chain, `U` and `V` unimodular.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = smith(m);
    (s.d, s.u, s.v)
}

pub fn smith(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // column operations are mirrored on v and, inverted, on v_inv
    let swap_cols = |d: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, a: usize, b: usize| {
        d.swap_cols(a, b);
        v.swap_cols(a, b);
        v_inv.swap_rows(a, b);
    };
    let add_col = |d: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, t: usize, s: usize, f: &BigInt| {
        d.add_col_multiple(t, s, f);
        v.add_col_multiple(t, s, f);
        v_inv.add_row_multiple(s, t, &-f);
    };

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !d.get(i, j).is_zero())
            .min_by(|&a, &b| abs_cmp(d.get(a.0, a.1), d.get(b.0, b.1)).then(a.cmp(&b)))
        else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        swap_cols(&mut d, &mut v, &mut v_inv, t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -d.get(i, t).div_floor(d.get(t, t));
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -d.get(t, j).div_floor(d.get(t, t));
                add_col(&mut d, &mut v, &mut v_inv, j, t, &q);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // bring the smallest remainder in row/column t into the pivot
                let best_row = (t + 1..rows)
                    .filter(|&i| !d.get(i, t).is_zero())
                    .min_by(|&a, &b| abs_cmp(d.get(a, t), d.get(b, t)));
                let best_col = (t + 1..cols)
                    .filter(|&j| !d.get(t, j).is_zero())
                    .min_by(|&a, &b| abs_cmp(d.get(t, a), d.get(t, b)));
                match (best_row, best_col) {
                    (Some(i), Some(j)) => {
                        if abs_cmp(d.get(i, t), d.get(t, j)).is_le() {
                            d.swap_rows(t, i);
                            u.swap_rows(t, i);
                        } else {
                            swap_cols(&mut d, &mut v, &mut v_inv, t, j);
                        }
                    }
                    (Some(i), None) => {
                        d.swap_rows(t, i);
                        u.swap_rows(t, i);
                    }
                    (None, Some(j)) => swap_cols(&mut d, &mut v, &mut v_inv, t, j),
                    (None, None) => {}
                }
                continue;
            }
            let offending = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(d.get(i, j) % d.get(t, t)).is_zero());
            match offending {
                Some((i, _)) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SmithDecomposition { d, u, v, v_inv, rank: t }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(cols, rows).unwrap()
    }

    #[test]
    fn hnf_of_gcd_column() {
        let a = m(1, &[vec![6], vec![10]]);
        let (h, u) = hnf(&a);
        assert_eq!(h, m(1, &[vec![2], vec![0]]));
        assert_eq!(u.mul(&a).unwrap(), h);
        assert_eq!(u.determinant().unwrap().abs(), BigInt::from(1));
    }

    #[test]
    fn hnf_identity_is_fixed() {
        let i = IntMatrix::identity(3);
        let (h, u) = hnf(&i);
        assert_eq!(h, i);
        assert_eq!(u, i);
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let a = m(2, &[vec![2, 5], vec![0, 3]]);
        let h = hnf_basis(&a);
        assert_eq!(h, m(2, &[vec![2, 2], vec![0, 3]]));
    }

    #[test]
    fn snf_examples() {
        let (d, u, v) = snf(&m(2, &[vec![2, 0], vec![0, 3]]));
        assert_eq!(d, m(2, &[vec![1, 0], vec![0, 6]]));
        assert_eq!(u.mul(&m(2, &[vec![2, 0], vec![0, 3]])).unwrap().mul(&v).unwrap(), d);

        let (d, _, _) = snf(&IntMatrix::zeros(2, 3));
        assert!(d.is_zero());

        let (d, _, _) = snf(&m(2, &[vec![1, -1]]));
        assert_eq!(d, m(2, &[vec![1, 0]]));
    }

    #[test]
    fn smith_tracks_inverse_column_transform() {
        let a = m(3, &[vec![4, 6, 2], vec![2, 8, 10], vec![0, 3, 9]]);
        let s = smith(&a);
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(3));
        assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d);
    }
}
