use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::matrix::{is_zero_vec, IntMatrix, IntVec};
use super::rational::{coordinates, integral, rat_vec};
use super::snf::{kernel_vectors, smith_normal_form};
use crate::error::{Error, Result};

/// Row-style Hermite normal form of the lattice spanned by `gens`: positive pivots,
/// entries above each pivot reduced into `[0, pivot)`, zero rows dropped.
pub fn hermite_rows(gens: &[IntVec], dim: usize) -> Vec<IntVec> {
    let mut rows: Vec<IntVec> = gens.iter().filter(|g| !is_zero_vec(g)).cloned().collect();
    let mut r = 0;
    for c in 0..dim {
        if r == rows.len() {
            break;
        }
        loop {
            let pivot = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()).then(i.cmp(&j)));
            let Some(p) = pivot else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                for j in c..dim {
                    let d = &q * &rows[r][j];
                    rows[i][j] -= d;
                }
                done &= rows[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if r == rows.len() || rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            if q.is_zero() {
                continue;
            }
            for j in c..dim {
                let d = &q * &rows[r][j];
                rows[i][j] -= d;
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// A sublattice of `Z^ambient`, stored by its Hermite basis so equality is lattice equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: usize,
    basis: Vec<IntVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl Lattice {
    pub fn span(ambient: usize, gens: &[IntVec]) -> Self {
        for g in gens {
            assert_eq!(g.len(), ambient, "generator has wrong length");
        }
        Lattice { ambient, basis: hermite_rows(gens, ambient) }
    }

    pub fn zero(ambient: usize) -> Self {
        Lattice { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Lattice { ambient, basis: IntMatrix::identity(ambient).row_vecs() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[IntVec] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.basis, self.ambient)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let basis: Vec<_> = self.basis.iter().map(|b| rat_vec(b)).collect();
        coordinates(&basis, &rat_vec(v)).is_some_and(|c| integral(&c).is_some())
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn is_saturated(&self) -> bool {
        saturate(self) == *self
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice(Z^{}; {:?})", self.ambient, self.basis)
    }
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<i64>> = self.basis.iter().map(|b| super::to_i64_vec(b)).collect();
        rows.serialize(s)
    }
}

/// Saturated kernel `{ v in Z^cols : m v = 0 }`.
pub fn kernel_basis(m: &IntMatrix) -> Lattice {
    Lattice::span(m.cols(), &kernel_vectors(m))
}

/// `(l ⊗ Q) ∩ Z^n`.
pub fn saturate(l: &Lattice) -> Lattice {
    if l.rank() == 0 {
        return l.clone();
    }
    let annihilator = kernel_vectors(&l.basis_matrix());
    let ann = IntMatrix::from_rows(&annihilator, l.ambient);
    kernel_basis(&ann)
}

pub fn lattice_rank(l: &Lattice) -> usize {
    l.rank()
}

pub fn lattice_index(sub: &Lattice, sup: &Lattice) -> Result<LatticeIndex> {
    if sub.ambient != sup.ambient {
        return Err(Error::NotSublattice);
    }
    let sup_basis: Vec<_> = sup.basis.iter().map(|b| rat_vec(b)).collect();
    let mut coords = Vec::with_capacity(sub.rank());
    for v in &sub.basis {
        let c = coordinates(&sup_basis, &rat_vec(v)).ok_or(Error::NotSublattice)?;
        coords.push(integral(&c).ok_or(Error::NotSublattice)?);
    }
    if sub.rank() != sup.rank() {
        return Ok(LatticeIndex::Infinite);
    }
    let m = IntMatrix::from_rows(&coords, sup.rank());
    let product = smith_normal_form(&m).diagonal.iter().fold(BigInt::one(), |acc, d| acc * d);
    Ok(LatticeIndex::Finite(product))
}
