use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::RootDatum;
use crate::error::{Error, Result};
use crate::linalg::rational::{rat_vec, RatMatrix};
use crate::linalg::{dot, kernel_vectors, to_i64_vec, IntMatrix, IntVec};

/// A root datum together with a choice of simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedRootDatum {
    pub datum: RootDatum,
    /// Indices into `datum.roots`.
    pub simple: Vec<usize>,
    /// Functional on X that defined the positive system, when known.
    pub functional: Option<IntVec>,
}

impl BasedRootDatum {
    pub fn simple_roots(&self) -> Vec<IntVec> {
        self.simple.iter().map(|&i| self.datum.roots[i].clone()).collect()
    }

    pub fn simple_coroots(&self) -> Vec<IntVec> {
        self.simple.iter().map(|&i| self.datum.coroots[i].clone()).collect()
    }

    /// `C_ij = <α_i, α_j∨>` over the simple roots.
    pub fn cartan_matrix(&self) -> IntMatrix {
        let n = self.simple.len();
        let mut c = IntMatrix::zeros(n, n);
        for (a, &i) in self.simple.iter().enumerate() {
            for (b, &j) in self.simple.iter().enumerate() {
                c[(a, b)] = dot(&self.datum.roots[i], &self.datum.coroots[j]);
            }
        }
        c
    }

    /// Checks that Δ is independent and every root is a same-signed integer combination of Δ.
    pub fn is_valid_base(&self) -> bool {
        let simple = self.simple_roots();
        let basis: Vec<_> = simple.iter().map(|v| rat_vec(v)).collect();
        if crate::linalg::rational::rank(&simple, self.datum.rank) != simple.len() {
            return false;
        }
        self.datum.roots.iter().all(|r| match crate::linalg::rational::coordinates(&basis, &rat_vec(r)) {
            Some(c) => {
                c.iter().all(|x| x.is_integer())
                    && (c.iter().all(|x| !x.is_negative()) || c.iter().all(|x| !x.is_positive()))
            }
            None => false,
        })
    }

    /// Permutation of Δ induced by `g`, if `g` maps Δ onto Δ.
    pub fn induced_permutation(&self, g: &IntMatrix) -> Option<Vec<usize>> {
        let simple = self.simple_roots();
        simple
            .iter()
            .map(|r| {
                let img = g.apply(r);
                simple.iter().position(|s| *s == img)
            })
            .collect()
    }

    /// True iff `g` maps roots to roots, Δ onto Δ, and is compatible with coroots.
    pub fn preserves(&self, g: &IntMatrix) -> bool {
        preserves_datum(&self.datum, g) && self.induced_permutation(g).is_some()
    }
}

/// Whether `g` is an automorphism of X carrying (R, R∨) to itself compatibly.
pub(crate) fn preserves_datum(d: &RootDatum, g: &IntMatrix) -> bool {
    preserves_datum_between(d, d, g)
}

/// Whether `g : X₁ → X₂` is a lattice isomorphism with `g(R₁) = R₂` and `gᵀ α'∨ = α∨`.
pub(crate) fn preserves_datum_between(d1: &RootDatum, d2: &RootDatum, g: &IntMatrix) -> bool {
    if d1.roots.len() != d2.roots.len() || g.determinant().abs() != BigInt::one() {
        return false;
    }
    let index = d2.root_index();
    let gt = g.transpose();
    d1.roots.iter().zip(&d1.coroots).all(|(r, c)| match index.get(&g.apply(r)) {
        Some(&j) => gt.apply(&d2.coroots[j]) == *c,
        None => false,
    })
}

/// Smallest `M ≥ 2` such that `(M^{n-1}, ..., M, 1)` pairs nonzero with every root.
pub fn default_functional(d: &RootDatum) -> IntVec {
    let n = d.rank;
    let bound = d.roots.iter().flat_map(|r| r.iter().map(|x| x.abs())).max().unwrap_or_else(BigInt::zero);
    let mut m = BigInt::from(2);
    loop {
        let mut f = vec![BigInt::one(); n];
        for i in (0..n.saturating_sub(1)).rev() {
            f[i] = &f[i + 1] * &m;
        }
        if d.roots.iter().all(|r| !dot(r, &f).is_zero()) || m > &bound * 2 + 2 {
            return f;
        }
        m += 1;
    }
}

/// Δ = indecomposable roots among those positive on `functional`.
pub fn base(d: &RootDatum, functional: &[BigInt]) -> Result<BasedRootDatum> {
    if let Some(r) = d.roots.iter().find(|r| dot(r, functional).is_zero()) {
        return Err(Error::NotGeneric { root: to_i64_vec(r) });
    }
    let positive: Vec<usize> = (0..d.roots.len()).filter(|&i| dot(&d.roots[i], functional).is_positive()).collect();
    let pos_set: HashSet<&IntVec> = positive.iter().map(|&i| &d.roots[i]).collect();
    let mut simple = Vec::new();
    for &i in &positive {
        let decomposable = positive.iter().any(|&j| {
            j != i && {
                let rest: IntVec = d.roots[i].iter().zip(&d.roots[j]).map(|(a, b)| a - b).collect();
                pos_set.contains(&rest)
            }
        });
        if !decomposable {
            simple.push(i);
        }
    }
    Ok(BasedRootDatum { datum: d.clone(), simple, functional: Some(functional.to_vec()) })
}

/// All permutations of the nodes preserving the Cartan matrix, in lexicographic order.
pub fn diagram_automorphisms(cartan: &IntMatrix, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = cartan.rows();
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        k: usize,
        c: &IntMatrix,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        let n = c.rows();
        if k == n {
            if out.len() >= cap {
                return Err(Error::SizeBound { cap });
            }
            out.push(perm.clone());
            return Ok(());
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            let ok = (0..=k).all(|j| {
                let pj = if j == k { cand } else { perm[j] };
                c[(k, j)] == c[(cand, pj)] && c[(j, k)] == c[(pj, cand)]
            });
            if ok {
                perm[k] = cand;
                used[cand] = true;
                rec(k + 1, c, perm, used, out, cap)?;
                used[cand] = false;
                perm[k] = usize::MAX;
            }
        }
        Ok(())
    }
    rec(0, cartan, &mut perm, &mut used, &mut out, cap)?;
    Ok(out)
}

/// Primitive generator of `{x : <x, α∨> = 0 for all coroots}` when that has rank ≤ 1.
pub(crate) fn centre_basis(d: &RootDatum) -> Vec<IntVec> {
    if d.coroots.is_empty() {
        return IntMatrix::identity(d.rank).row_vecs();
    }
    let m = IntMatrix::from_rows(&d.coroots, d.rank);
    crate::linalg::Lattice::span(d.rank, &kernel_vectors(&m)).basis().to_vec()
}

/// Candidate lattice maps sending `from_basis` columns to `to_basis` columns.
pub(crate) fn solve_map(from_basis: &[IntVec], to_basis: &[IntVec], dim: usize) -> Option<IntMatrix> {
    let p = RatMatrix::from_int(&IntMatrix::from_columns(from_basis, dim));
    let q = RatMatrix::from_int(&IntMatrix::from_columns(to_basis, dim));
    let g = q.mul(&p.inverse()?);
    g.to_int()
}

/// Automorphisms of X preserving R, R∨ compatibly and Δ as a set. This realizes the
/// outer automorphism group, including permutations of isomorphic components.
///
/// The group is finite exactly when the centre has rank ≤ 1; larger centres are rejected.
pub fn out_group(b: &BasedRootDatum) -> Result<Vec<IntMatrix>> {
    let d = &b.datum;
    let centre = centre_basis(d);
    if centre.len() > 1 {
        return Err(Error::Unsupported(format!("automorphism group is infinite for central rank {}", centre.len())));
    }
    let simple = b.simple_roots();
    let perms = diagram_automorphisms(&b.cartan_matrix(), super::DEFAULT_GROUP_CAP)?;
    let signs: &[i64] = if centre.is_empty() { &[1] } else { &[1, -1] };
    let mut out = Vec::new();
    for perm in perms {
        for &sign in signs {
            let mut from = simple.clone();
            let mut to: Vec<IntVec> = perm.iter().map(|&j| simple[j].clone()).collect();
            if let Some(z) = centre.first() {
                from.push(z.clone());
                to.push(z.iter().map(|x| x * sign).collect());
            }
            if let Some(g) = solve_map(&from, &to, d.rank) {
                if preserves_datum(d, &g) {
                    out.push(g);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}
