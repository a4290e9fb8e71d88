//! Rational linear algebra over `BigRational`, used for spans, coordinates and inverses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{IntMatrix, IntVec};

pub type Rat = BigRational;
pub type RatVec = Vec<Rat>;

pub fn rat(v: &BigInt) -> Rat {
    Rat::from_integer(v.clone())
}

pub fn rat_vec(v: &[BigInt]) -> RatVec {
    v.iter().map(rat).collect()
}

pub fn rat_dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Returns the integer vector if every entry is integral.
pub fn integral(v: &[Rat]) -> Option<IntVec> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

/// Dense rational matrix, rows of equal length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: Vec<RatVec>,
    pub cols: usize,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows: vec![vec![Rat::zero(); cols]; rows], cols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = Rat::one();
        }
        m
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        RatMatrix { rows: m.row_vecs().iter().map(|r| rat_vec(r)).collect(), cols: m.cols() }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn apply(&self, v: &[Rat]) -> RatVec {
        self.rows.iter().map(|r| rat_dot(r, v)).collect()
    }

    pub fn apply_int(&self, v: &[BigInt]) -> RatVec {
        self.apply(&rat_vec(v))
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.n_rows());
        let mut out = Self::zeros(self.n_rows(), other.cols);
        for i in 0..self.n_rows() {
            for k in 0..self.cols {
                if self.rows[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = &self.rows[i][k] * &other.rows[k][j];
                    out.rows[i][j] += v;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = Self::zeros(self.cols, self.n_rows());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                t.rows[j][i] = x.clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        RatMatrix { rows: self.rows.iter().map(|r| r.iter().map(|x| x * c).collect()).collect(), cols: self.cols }
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        RatMatrix {
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
            cols: self.cols,
        }
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        let rows: Option<Vec<IntVec>> = self.rows.iter().map(|r| integral(r)).collect();
        rows.map(|r| IntMatrix::from_rows(&r, self.cols))
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        let n = self.n_rows();
        if n != self.cols {
            return None;
        }
        let mut a = self.rows.clone();
        let mut inv = Self::identity(n).rows;
        for col in 0..n {
            let p = (col..n).find(|&i| !a[i][col].is_zero())?;
            a.swap(col, p);
            inv.swap(col, p);
            let pivot = a[col][col].clone();
            for j in 0..n {
                a[col][j] = &a[col][j] / &pivot;
                inv[col][j] = &inv[col][j] / &pivot;
            }
            for i in 0..n {
                if i == col || a[i][col].is_zero() {
                    continue;
                }
                let f = a[i][col].clone();
                for j in 0..n {
                    let d = &f * &a[col][j];
                    a[i][j] -= d;
                    let d = &f * &inv[col][j];
                    inv[i][j] -= d;
                }
            }
        }
        Some(RatMatrix { rows: inv, cols: n })
    }

    /// True iff symmetric with all leading principal minors positive.
    pub fn is_positive_definite(&self) -> bool {
        let n = self.n_rows();
        if n != self.cols {
            return false;
        }
        for i in 0..n {
            for j in 0..n {
                if self.rows[i][j] != self.rows[j][i] {
                    return false;
                }
            }
        }
        // Gaussian elimination without pivoting; pivots are ratios of leading minors.
        let mut a = self.rows.clone();
        for k in 0..n {
            if !a[k][k].is_positive() {
                return false;
            }
            for i in k + 1..n {
                let f = &a[i][k] / &a[k][k];
                for j in k..n {
                    let d = &f * &a[k][j];
                    a[i][j] -= d;
                }
            }
        }
        true
    }
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(rows: &mut Vec<RatVec>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &pivot;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..cols {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Rank over Q of a list of integer vectors of length `dim`.
pub fn rank(vectors: &[IntVec], dim: usize) -> usize {
    if vectors.is_empty() || dim == 0 {
        return 0;
    }
    if rank_mod_p(vectors, dim) == vectors.len().min(dim) {
        return vectors.len().min(dim);
    }
    let mut rows: Vec<RatVec> = vectors.iter().map(|v| rat_vec(v)).collect();
    rref(&mut rows, dim).len()
}

const RANK_PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % RANK_PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

/// Rank modulo a large prime; a lower bound for the rank over Q.
pub fn rank_mod_p(vectors: &[IntVec], dim: usize) -> usize {
    let p = BigInt::from(RANK_PRIME);
    let mut rows: Vec<Vec<u64>> =
        vectors.iter().map(|v| v.iter().map(|x| x.mod_floor(&p).to_u64().unwrap()).collect()).collect();
    let mut r = 0;
    for c in 0..dim {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = pow_mod(rows[r][c], RANK_PRIME - 2);
        for j in c..dim {
            rows[r][j] = mul_mod(rows[r][j], inv);
        }
        for i in r + 1..rows.len() {
            let f = rows[i][c];
            if f == 0 {
                continue;
            }
            for j in c..dim {
                let d = mul_mod(f, rows[r][j]);
                rows[i][j] = (rows[i][j] + RANK_PRIME - d) % RANK_PRIME;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Indices of a maximal linearly independent subset, chosen greedily in order.
pub fn independent_subset(vectors: &[IntVec], dim: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<RatVec> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut trial = basis.clone();
        trial.push(rat_vec(v));
        let r = rref(&mut trial, dim).len();
        if r > basis.len() {
            basis = trial;
            chosen.push(i);
        }
    }
    chosen
}

/// Coordinates of `v` with respect to linearly independent `basis`, if `v` lies in their span.
pub fn coordinates(basis: &[RatVec], v: &[Rat]) -> Option<RatVec> {
    let dim = v.len();
    let n = basis.len();
    // Augmented system: columns are basis vectors, right-hand side v.
    let mut rows: Vec<RatVec> = (0..dim)
        .map(|i| {
            let mut row: RatVec = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows, n + 1);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r][n].clone();
    }
    Some(x)
}

/// The unique rational linear map sending `domain[i]` to `image[i]`, where `domain`
/// spans Q^dim. Returns None if the prescription is inconsistent.
pub fn linear_map_from(domain: &[IntVec], image: &[IntVec], dim: usize, out_dim: usize) -> Option<RatMatrix> {
    let basis_idx = independent_subset(domain, dim);
    if basis_idx.len() != dim {
        return None;
    }
    let d = RatMatrix {
        rows: (0..dim).map(|i| basis_idx.iter().map(|&j| rat(&domain[j][i])).collect()).collect(),
        cols: dim,
    };
    let im = RatMatrix {
        rows: (0..out_dim).map(|i| basis_idx.iter().map(|&j| rat(&image[j][i])).collect()).collect(),
        cols: dim,
    };
    let phi = im.mul(&d.inverse()?);
    for (x, y) in domain.iter().zip(image) {
        if phi.apply_int(x) != rat_vec(y) {
            return None;
        }
    }
    Some(phi)
}

pub fn format_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
