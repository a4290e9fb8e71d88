use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{IntMatrix, IntVec};

/// Smith normal form `left * m * right = diag(diagonal)` with `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    /// Length `min(rows, cols)`, nonnegative, zeros trailing.
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Pivot is the entry of smallest absolute value in the trailing block; ties go to
/// the lowest row, then the lowest column.
fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let n = rows.min(cols);

    'diag: for t in 0..n {
        loop {
            let Some((pi, pj)) = find_pivot(&a, t) else {
                break 'diag;
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let p = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&p);
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&p);
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
            if let Some(i) = offender {
                let one = BigInt::from(1);
                a.add_row_multiple(t, i, &one);
                left.add_row_multiple(t, i, &one);
                continue;
            }
            break;
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let diagonal = (0..n).map(|i| a[(i, i)].clone()).collect();
    Smith { diagonal, left, right }
}

/// Basis (as rows) of the integer kernel `{ v : m v = 0 }`; saturated by construction.
pub fn kernel_vectors(m: &IntMatrix) -> Vec<IntVec> {
    let s = smith_normal_form(m);
    let r = s.rank();
    (r..m.cols()).map(|j| s.right.column(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> Smith {
        let s = smith_normal_form(m);
        let d = s.left.mul(m).mul(&s.right);
        assert!(d.is_diagonal());
        for (i, x) in s.diagonal.iter().enumerate() {
            assert_eq!(&d[(i, i)], x);
            assert!(!x.is_negative());
        }
        for w in s.diagonal.windows(2) {
            if !w[0].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            } else {
                assert!(w[1].is_zero());
            }
        }
        assert_eq!(s.left.determinant().abs(), BigInt::from(1));
        assert_eq!(s.right.determinant().abs(), BigInt::from(1));
        s
    }

    #[test]
    fn two_by_two_example() {
        let s = check(&IntMatrix::from_i64_rows(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn identity_and_zero() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.diagonal, vec![BigInt::from(1); 3]);
        let s = check(&IntMatrix::zeros(2, 2));
        assert_eq!(s.diagonal, vec![BigInt::zero(); 2]);
    }

    #[test]
    fn rectangular_and_divisibility_fixup() {
        // diag(2, 3) needs the divisibility step to become diag(1, 6).
        let s = check(&IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
        let s = check(&IntMatrix::from_i64_rows(&[&[3, -1, 4], &[2, 6, 8]]));
        assert_eq!(s.rank(), 2);
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(3, 0));
    }
}
