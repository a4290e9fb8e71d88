//! Brute-force references written without the library's search, stripping or lattice code.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rootdata::formal_character::FormalBiCharacter;

use super::{small, Key};

type Q = BigRational;

fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

/// Rank over Q by plain Gaussian elimination.
pub fn rank_q(vectors: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<Q>> = vectors.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[rank][c];
                for j in 0..cols {
                    let d = &f * &rows[rank][j];
                    rows[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of `{x : rows · x = 0}` over Q.
pub fn nullspace_q(rows: &[Vec<i64>], dim: usize) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = rows.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..dim {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let lead = m[rank][c].clone();
        for x in m[rank].iter_mut() {
            *x /= &lead;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..dim {
                    let d = &f * &m[rank][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    (0..dim)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); dim];
            v[free] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][free].clone();
            }
            v
        })
        .collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sorted(mut v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    v.sort();
    v
}

/// Integer matrices permuting the weight multiset, found by trying every assignment of
/// images to a basis chosen among the weights.
pub fn weight_symmetries(weights: &[Vec<i64>]) -> Vec<Vec<Vec<i64>>> {
    let r = weights[0].len();
    let mut distinct: Vec<Vec<i64>> = weights.to_vec();
    distinct.sort();
    distinct.dedup();
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for w in &distinct {
        let mut trial = basis.clone();
        trial.push(w.clone());
        if rank_q(&trial) == trial.len() {
            basis = trial;
        }
    }
    assert_eq!(basis.len(), r, "weights span X ⊗ Q");
    // Inverse of the matrix with the basis as columns.
    let mut aug: Vec<Vec<Q>> = (0..r)
        .map(|i| {
            let mut row: Vec<Q> = basis.iter().map(|b| q(b[i])).collect();
            row.extend((0..r).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..r {
        let p = (c..r).find(|&i| !aug[i][c].is_zero()).unwrap();
        aug.swap(c, p);
        let lead = aug[c][c].clone();
        for x in aug[c].iter_mut() {
            *x /= &lead;
        }
        for i in 0..r {
            if i != c && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..2 * r {
                    let d = &f * &aug[c][j];
                    aug[i][j] -= d;
                }
            }
        }
    }
    let inv: Vec<Vec<Q>> = aug.iter().map(|row| row[r..].to_vec()).collect();
    let target = sorted(weights.to_vec());
    let mut out = Vec::new();
    let mut choice = vec![0usize; r];
    loop {
        let images: Vec<&Vec<i64>> = choice.iter().map(|&i| &distinct[i]).collect();
        // g = images · inv, with images as columns.
        let mut g = vec![vec![0i64; r]; r];
        let mut ok = true;
        'fill: for (i, row) in g.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let v: Q = (0..r).map(|t| q(images[t][i]) * &inv[t][j]).sum();
                if !v.is_integer() {
                    ok = false;
                    break 'fill;
                }
                *entry = v.to_integer().try_into().unwrap();
            }
        }
        if ok {
            let mapped = sorted(weights.iter().map(|w| g.iter().map(|row| dot(row, w)).collect()).collect());
            if mapped == target {
                out.push(g);
            }
        }
        let mut i = 0;
        while i < r {
            choice[i] += 1;
            if choice[i] < distinct.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    out
}

/// `Σ gᵀg / |S|`.
pub fn averaged_form(weights: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let group = weight_symmetries(weights);
    let r = weights[0].len();
    let n = Q::from_integer(BigInt::from(group.len()));
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let s: i64 = group.iter().map(|g| (0..r).map(|t| g[t][i] * g[t][j]).sum::<i64>()).sum();
                    q(s) / &n
                })
                .collect()
        })
        .collect()
}

/// `2Gα / (αᵀGα)` if integral.
fn coroot(alpha: &[i64], form: &[Vec<Q>], weights: &[Vec<i64>]) -> Option<Vec<i64>> {
    let ga: Vec<Q> = form.iter().map(|row| row.iter().zip(alpha).map(|(g, &a)| g * q(a)).sum()).collect();
    let norm: Q = ga.iter().zip(alpha).map(|(g, &a)| g * q(a)).sum();
    let c: Vec<Q> = ga.iter().map(|x| x * q(2) / &norm).collect();
    // Integral against every weight; the weights span X, so c is integral.
    for w in weights {
        let p: Q = c.iter().zip(w).map(|(x, &y)| x * q(y)).sum();
        if !p.is_integer() {
            return None;
        }
    }
    Some(c.iter().map(|x| x.to_integer().try_into().unwrap()).collect())
}

fn reflect(x: &[i64], alpha: &[i64], c: &[i64]) -> Vec<i64> {
    let p = dot(x, c);
    x.iter().zip(alpha).map(|(a, b)| a - p * b).collect()
}

/// Weyl group elements as matrices with their signs.
fn weyl_elements(roots: &[Vec<i64>], coroots: &[Vec<i64>], r: usize) -> Vec<(Vec<Vec<i64>>, i64)> {
    let id: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    let gens: Vec<Vec<Vec<i64>>> = roots
        .iter()
        .zip(coroots)
        .map(|(a, c)| (0..r).map(|i| (0..r).map(|j| i64::from(i == j) - a[i] * c[j]).collect()).collect())
        .collect();
    let mut seen: HashMap<Vec<Vec<i64>>, i64> = HashMap::new();
    seen.insert(id.clone(), 1);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        let sign = seen[&g];
        for s in &gens {
            let h: Vec<Vec<i64>> =
                (0..r).map(|i| (0..r).map(|j| (0..r).map(|t| s[i][t] * g[t][j]).sum()).collect()).collect();
            if !seen.contains_key(&h) {
                seen.insert(h.clone(), -sign);
                queue.push_back(h);
            }
        }
    }
    seen.into_iter().collect()
}

/// Whether the W-invariant weight multiset is a nonnegative sum of irreducible characters:
/// multiply by the Weyl denominator and read off the coefficients at strictly dominant
/// exponents.
pub fn is_sum_of_irreducibles(weights: &[Vec<i64>], roots: &[Vec<i64>], coroots: &[Vec<i64>]) -> bool {
    let r = weights[0].len();
    let functional: Vec<i64> = (0..r).map(|i| 1000i64.pow((r - 1 - i) as u32)).collect();
    let positive: Vec<usize> = (0..roots.len()).filter(|&i| dot(&roots[i], &functional) > 0).collect();
    let two_rho: Vec<i64> = (0..r).map(|j| positive.iter().map(|&i| roots[i][j]).sum()).collect();
    let mut product: HashMap<Vec<i64>, i64> = HashMap::new();
    for (g, sign) in weyl_elements(roots, coroots, r) {
        let shifted: Vec<i64> = g.iter().map(|row| dot(row, &two_rho)).collect();
        for w in weights {
            let e: Vec<i64> = w.iter().zip(&shifted).map(|(a, b)| 2 * a + b).collect();
            *product.entry(e).or_insert(0) += sign;
        }
    }
    product.iter().filter(|(e, _)| positive.iter().all(|&i| dot(e, &coroots[i]) > 0)).all(|(_, &c)| c >= 0)
}

/// Every negation-closed subset of the weight differences satisfying the candidate
/// conditions, as sorted `(root, coroot)` lists.
pub fn brute_force_candidates(b: &FormalBiCharacter) -> Vec<Key> {
    let weights: Vec<Vec<i64>> = b.character.weights.iter().map(|w| small(w)).collect();
    let form = averaged_form(&weights);
    brute_force_with_form(b, &form)
}

pub fn restriction_rows(b: &FormalBiCharacter) -> Vec<Vec<i64>> {
    b.restriction.row_vecs().iter().map(|r| small(r)).collect()
}

pub fn differences(b: &FormalBiCharacter) -> Vec<Vec<i64>> {
    let weights: Vec<Vec<i64>> = b.character.weights.iter().map(|w| small(w)).collect();
    let res = restriction_rows(b);
    let mut set: HashSet<Vec<i64>> = HashSet::new();
    for a in &weights {
        for c in &weights {
            let d: Vec<i64> = a.iter().zip(c).map(|(x, y)| x - y).collect();
            if res.iter().any(|row| dot(row, &d) != 0) {
                set.insert(d);
            }
        }
    }
    sorted(set.into_iter().collect())
}

pub fn brute_force_with_form(b: &FormalBiCharacter, form: &[Vec<Q>]) -> Vec<Key> {
    let weights: Vec<Vec<i64>> = b.character.weights.iter().map(|w| small(w)).collect();
    let target = sorted(weights.clone());
    let res = restriction_rows(b);
    let s = b.ss_rank;
    let diffs = differences(b);
    let kernel = nullspace_q(&res, b.character.rank);
    let reps: Vec<Vec<i64>> =
        diffs.iter().filter(|d| **d > d.iter().map(|x| -x).collect::<Vec<_>>()).cloned().collect();
    assert!(reps.len() <= 16, "difference set too large for exhaustive search");
    let mut out = Vec::new();
    for mask in 0u32..(1 << reps.len()) {
        let mut roots: Vec<Vec<i64>> = Vec::new();
        for (i, a) in reps.iter().enumerate() {
            if mask >> i & 1 == 1 {
                roots.push(a.clone());
                roots.push(a.iter().map(|x| -x).collect());
            }
        }
        let Some(coroots) = roots.iter().map(|a| coroot(a, form, &weights)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let set: HashSet<&Vec<i64>> = roots.iter().collect();
        let reduced = roots.iter().all(|a| !set.contains(&a.iter().map(|x| 2 * x).collect::<Vec<_>>()));
        if !reduced {
            continue;
        }
        let closed = roots.iter().zip(&coroots).all(|(a, c)| roots.iter().all(|x| set.contains(&reflect(x, a, c))));
        if !closed {
            continue;
        }
        if s == 0 {
            if roots.is_empty() {
                out.push(Vec::new());
            }
            continue;
        }
        // span R = U^⊥ for U the characters trivial on T^ss: full rank s and orthogonal to U.
        let orthogonal = roots.iter().all(|a| {
            kernel.iter().all(|u| {
                let p: Q = (0..a.len()).map(|i| (0..a.len()).map(|j| q(a[i]) * &form[i][j] * &u[j]).sum::<Q>()).sum();
                p.is_zero()
            })
        });
        if roots.is_empty() || rank_q(&roots) != s || !orthogonal {
            continue;
        }
        let invariant = roots
            .iter()
            .zip(&coroots)
            .all(|(a, c)| sorted(weights.iter().map(|w| reflect(w, a, c)).collect()) == target);
        if !invariant || !is_sum_of_irreducibles(&weights, &roots, &coroots) {
            continue;
        }
        let mut key: Key = roots.into_iter().zip(coroots).collect();
        key.sort();
        out.push(key);
    }
    out.sort();
    out
}

/// Relation search over the box `[-bound, bound]^k`: returns, for each vector, whether it
/// is a torsion relation and whether it is an exact relation.
pub fn box_relations(exps: &[Vec<i64>], tors: &[i64], m: i64, bound: i64, visit: &mut dyn FnMut(&[i64], bool, bool)) {
    let k = tors.len();
    let n = exps.first().map_or(0, |e| e.len());
    let mut c = vec![-bound; k];
    loop {
        let torsion = (0..n).all(|p| (0..k).map(|i| exps[i][p] * c[i]).sum::<i64>() == 0);
        let exact = torsion && (0..k).map(|i| tors[i] * c[i]).sum::<i64>().rem_euclid(m) == 0;
        visit(&c, torsion, exact);
        let mut i = 0;
        while i < k {
            c[i] += 1;
            if c[i] <= bound {
                break;
            }
            c[i] = -bound;
            i += 1;
        }
        if i == k {
            break;
        }
    }
}

/// Echelon basis in `i128` for fast membership tests.
pub struct EchelonLattice {
    rows: Vec<(usize, Vec<i128>)>,
}

impl EchelonLattice {
    /// `rows` must already be in row-echelon form with increasing pivots.
    pub fn new(rows: &[Vec<i64>]) -> Self {
        let rows = rows
            .iter()
            .map(|r| {
                let p = r.iter().position(|&x| x != 0).expect("nonzero row");
                (p, r.iter().map(|&x| i128::from(x)).collect())
            })
            .collect::<Vec<_>>();
        assert!(rows.windows(2).all(|w| w[0].0 < w[1].0), "pivots increase");
        EchelonLattice { rows }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let mut c: Vec<i128> = v.iter().map(|&x| i128::from(x)).collect();
        for (p, row) in &self.rows {
            if c[..*p].iter().any(|&x| x != 0) {
                return false;
            }
            if c[*p] % row[*p] != 0 {
                return false;
            }
            let f = c[*p] / row[*p];
            for (x, y) in c.iter_mut().zip(row) {
                *x -= f * y;
            }
        }
        c.iter().all(|&x| x == 0)
    }
}

pub fn abs_max(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_default()
}
