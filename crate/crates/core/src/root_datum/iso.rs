use num_bigint::BigInt;

use super::based::{base, centre_basis, default_functional, preserves_datum_between, solve_map};
use super::RootDatum;
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntVec};

const NODE_CAP: usize = 1_000_000;

/// Searches for a lattice isomorphism `X₁ → X₂` carrying roots to roots and coroots to
/// coroots. Simple systems are matched by Cartan-preserving backtracking, then the map is
/// extended over the centre (rank ≤ 1) by `z₁ ↦ ±z₂`.
pub fn iso_root_data(d1: &RootDatum, d2: &RootDatum) -> Result<Option<IntMatrix>> {
    if d1.rank != d2.rank || d1.roots.len() != d2.roots.len() {
        return Ok(None);
    }
    let c1 = centre_basis(d1);
    let c2 = centre_basis(d2);
    if c1.len() != c2.len() {
        return Ok(None);
    }
    if c1.len() > 1 {
        return Err(Error::Unsupported(format!("isomorphism search for central rank {}", c1.len())));
    }
    let b1 = base(d1, &default_functional(d1))?;
    let b2 = base(d2, &default_functional(d2))?;
    let (k1, k2) = (b1.cartan_matrix(), b2.cartan_matrix());
    if k1.rows() != k2.rows() {
        return Ok(None);
    }
    let s1 = b1.simple_roots();
    let s2 = b2.simple_roots();
    let n = s1.len();

    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut nodes = 0usize;
    let mut found = None;
    let mut try_perm = |perm: &[usize]| -> bool {
        for sign in [1i64, -1] {
            if c1.is_empty() && sign < 0 {
                break;
            }
            let mut from = s1.clone();
            let mut to: Vec<IntVec> = perm.iter().map(|&j| s2[j].clone()).collect();
            if let (Some(z1), Some(z2)) = (c1.first(), c2.first()) {
                from.push(z1.clone());
                to.push(z2.iter().map(|x| x * BigInt::from(sign)).collect());
            }
            if let Some(g) = solve_map(&from, &to, d1.rank) {
                if preserves_datum_between(d1, d2, &g) {
                    found = Some(g);
                    return true;
                }
            }
        }
        false
    };

    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        k1: &IntMatrix,
        k2: &IntMatrix,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        nodes: &mut usize,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > NODE_CAP {
            return Err(Error::SizeBound { cap: NODE_CAP });
        }
        let n = k1.rows();
        if k == n {
            return Ok(visit(perm));
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            let ok = (0..=k).all(|j| {
                let pj = if j == k { cand } else { perm[j] };
                k1[(k, j)] == k2[(cand, pj)] && k1[(j, k)] == k2[(pj, cand)]
            });
            if ok {
                perm[k] = cand;
                used[cand] = true;
                if rec(k + 1, k1, k2, perm, used, nodes, visit)? {
                    return Ok(true);
                }
                used[cand] = false;
            }
        }
        Ok(false)
    }
    rec(0, &k1, &k2, &mut perm, &mut used, &mut nodes, &mut try_perm)?;
    Ok(found)
}
