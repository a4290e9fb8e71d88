use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::FormalCharacter;
use crate::linalg::rational::{independent_subset, rat_vec, Rat, RatMatrix};
use crate::linalg::{IntMatrix, IntVec};

/// Distinct weights with multiplicities and their pairings under `(Σ w wᵀ)^{-1}`, which
/// every weight-permuting automorphism preserves.
#[derive(Clone, Debug)]
pub struct WeightTable {
    pub rank: usize,
    pub distinct: Vec<IntVec>,
    pub mult: Vec<usize>,
    pub gram: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    /// Adjugate and determinant of the matrix whose columns are the basis weights.
    basis_adj: IntMatrix,
    basis_det: BigInt,
    signature: Vec<(usize, Vec<(Rat, usize)>)>,
    index: HashMap<IntVec, usize>,
}

impl WeightTable {
    /// None if the weights do not span `X ⊗ Q`.
    pub fn new(f: &FormalCharacter) -> Option<Self> {
        let mut distinct: Vec<IntVec> = f.sorted_weights();
        distinct.dedup();
        let mult: Vec<usize> = distinct.iter().map(|d| f.weights.iter().filter(|w| *w == d).count()).collect();
        let inv = f.second_moment().inverse()?;
        let images: Vec<Vec<Rat>> = distinct.iter().map(|d| inv.apply_int(d)).collect();
        let gram: Vec<Vec<Rat>> = distinct
            .iter()
            .map(|a| {
                let ar = rat_vec(a);
                images.iter().map(|b| ar.iter().zip(b).map(|(x, y)| x * y).sum()).collect()
            })
            .collect();
        let basis = independent_subset(&distinct, f.rank);
        if basis.len() != f.rank {
            return None;
        }
        let cols: Vec<IntVec> = basis.iter().map(|&i| distinct[i].clone()).collect();
        let bm = IntMatrix::from_columns(&cols, f.rank);
        let basis_det = bm.determinant();
        let basis_adj = RatMatrix::from_int(&bm)
            .inverse()?
            .scale(&Rat::from_integer(basis_det.clone()))
            .to_int()
            .expect("adjugate is integral");
        let signature = (0..distinct.len())
            .map(|i| {
                let mut row: Vec<(Rat, usize)> = (0..distinct.len()).map(|j| (gram[i][j].clone(), mult[j])).collect();
                row.sort();
                (mult[i], row)
            })
            .collect();
        let index = distinct.iter().enumerate().map(|(i, d)| (d.clone(), i)).collect();
        Some(WeightTable { rank: f.rank, distinct, mult, gram, basis, basis_adj, basis_det, signature, index })
    }
}

/// Enumerates lattice isomorphisms carrying the weight multiset of `a` onto that of `b`,
/// calling `visit` on each until it returns true. Returns whether the visit stopped early.
pub fn weight_maps(a: &WeightTable, b: &WeightTable, visit: &mut dyn FnMut(&IntMatrix) -> bool) -> bool {
    if a.rank != b.rank || a.distinct.len() != b.distinct.len() {
        return false;
    }
    let mut ms: Vec<usize> = a.mult.clone();
    let mut mt: Vec<usize> = b.mult.clone();
    ms.sort_unstable();
    mt.sort_unstable();
    if ms != mt {
        return false;
    }
    if a.rank == 0 {
        return visit(&IntMatrix::identity(0));
    }
    let mut images = Vec::with_capacity(a.basis.len());
    let mut used = vec![false; b.distinct.len()];
    rec(a, b, &mut images, &mut used, visit)
}

fn rec(
    a: &WeightTable,
    b: &WeightTable,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    visit: &mut dyn FnMut(&IntMatrix) -> bool,
) -> bool {
    let k = images.len();
    if k == a.basis.len() {
        return leaf(a, b, images, visit);
    }
    let src = a.basis[k];
    for cand in 0..b.distinct.len() {
        if used[cand] || a.signature[src] != b.signature[cand] {
            continue;
        }
        let consistent = (0..k).all(|j| a.gram[src][a.basis[j]] == b.gram[cand][images[j]]);
        if !consistent {
            continue;
        }
        used[cand] = true;
        images.push(cand);
        let stop = rec(a, b, images, used, visit);
        images.pop();
        used[cand] = false;
        if stop {
            return true;
        }
    }
    false
}

fn leaf(a: &WeightTable, b: &WeightTable, images: &[usize], visit: &mut dyn FnMut(&IntMatrix) -> bool) -> bool {
    let image: Vec<IntVec> = images.iter().map(|&j| b.distinct[j].clone()).collect();
    let scaled = IntMatrix::from_columns(&image, a.rank).mul(&a.basis_adj);
    let mut data = Vec::with_capacity(a.rank * a.rank);
    for i in 0..a.rank {
        for j in 0..a.rank {
            let (q, r) = scaled[(i, j)].div_rem(&a.basis_det);
            if !r.is_zero() {
                return false;
            }
            data.push(q);
        }
    }
    let g = IntMatrix::from_vec(a.rank, a.rank, data);
    if !g.determinant().abs().is_one() {
        return false;
    }
    let mut hit = vec![false; b.distinct.len()];
    for (i, w) in a.distinct.iter().enumerate() {
        match b.index.get(&g.apply(w)) {
            Some(&j) if b.mult[j] == a.mult[i] && !hit[j] => hit[j] = true,
            _ => return false,
        }
    }
    visit(&g)
}
