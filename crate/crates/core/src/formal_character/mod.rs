//! Formal characters (weight multisets of a torus in `GL_k`) and bi-characters
//! `T^ss ⊂ T ⊂ GL_k`.

mod search;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub use search::{weight_maps, WeightTable};

use crate::error::{Error, Result};
use crate::linalg::rational::{format_rat, integral, rat, rat_vec, Rat, RatMatrix, RatVec};
use crate::linalg::{hermite_rows, is_zero_vec, smith_normal_form, IntMatrix, IntVec};
use crate::root_datum::DEFAULT_GROUP_CAP;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalCharacter {
    /// Rank r of the torus; weights live in `Z^r`.
    pub rank: usize,
    pub weights: Vec<IntVec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalBiCharacter {
    pub character: FormalCharacter,
    pub ss_rank: usize,
    /// `s × r` matrix restricting characters of T to T^ss.
    pub restriction: IntMatrix,
}

/// Symmetric positive-definite rational form on `X ⊗ Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramForm {
    pub matrix: RatMatrix,
}

impl GramForm {
    pub fn new(matrix: RatMatrix) -> Result<Self> {
        if !matrix.is_positive_definite() {
            return Err(Error::Invalid("form is not positive definite".into()));
        }
        Ok(GramForm { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.cols
    }

    pub fn pair(&self, a: &[Rat], b: &[Rat]) -> Rat {
        let gb = self.matrix.apply(b);
        a.iter().zip(&gb).map(|(x, y)| x * y).sum()
    }

    pub fn pair_int(&self, a: &[BigInt], b: &[BigInt]) -> Rat {
        self.pair(&rat_vec(a), &rat_vec(b))
    }

    /// `gᵀ G g = G`.
    pub fn is_invariant_under(&self, g: &IntMatrix) -> bool {
        let gr = RatMatrix::from_int(g);
        gr.transpose().mul(&self.matrix).mul(&gr) == self.matrix
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.matrix.rows.iter().map(|r| r.iter().map(format_rat).collect()).collect()
    }
}

impl Serialize for GramForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl FormalCharacter {
    pub fn new(rank: usize, weights: Vec<IntVec>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| w.len() != rank) {
            return Err(Error::Invalid(format!("weight of length {} in rank {}", w.len(), rank)));
        }
        Ok(FormalCharacter { rank, weights })
    }

    pub fn from_i64(rank: usize, weights: &[&[i64]]) -> Self {
        let w = weights.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
        FormalCharacter::new(rank, w).expect("weight lengths match rank")
    }

    pub fn k(&self) -> usize {
        self.weights.len()
    }

    /// Weights sorted lexicographically.
    pub fn sorted_weights(&self) -> Vec<IntVec> {
        let mut w = self.weights.clone();
        w.sort();
        w
    }

    /// True iff the weights span `Z^rank`.
    pub fn is_canonical(&self) -> bool {
        let h = hermite_rows(&self.weights, self.rank);
        h.len() == self.rank && (0..self.rank).all(|i| h[i][i].is_one())
    }

    /// `Σ w wᵀ` over the weight multiset.
    pub fn second_moment(&self) -> RatMatrix {
        let r = self.rank;
        let mut m = RatMatrix::zeros(r, r);
        for w in &self.weights {
            for i in 0..r {
                if w[i].is_zero() {
                    continue;
                }
                for j in 0..r {
                    m.rows[i][j] += rat(&(&w[i] * &w[j]));
                }
            }
        }
        m
    }
}

/// Re-bases X onto the lattice generated by the weights. Returns the new character and
/// the `r' × r` matrix whose rows are the chosen basis, so `w = Bᵀ w'`.
fn rebase(f: &FormalCharacter) -> Result<(FormalCharacter, Vec<IntVec>)> {
    if f.rank > 0 && f.weights.iter().all(|w| is_zero_vec(w)) {
        return Err(Error::ZeroTorus);
    }
    let basis = hermite_rows(&f.weights, f.rank);
    let brows: Vec<RatVec> = basis.iter().map(|b| rat_vec(b)).collect();
    let weights = f
        .weights
        .iter()
        .map(|w| {
            let c = crate::linalg::rational::coordinates(&brows, &rat_vec(w)).expect("weight lies in its own span");
            integral(&c).expect("Hermite basis generates the weight lattice")
        })
        .collect();
    Ok((FormalCharacter { rank: basis.len(), weights }, basis))
}

pub fn canonicalize(f: &FormalCharacter) -> Result<FormalCharacter> {
    Ok(rebase(f)?.0)
}

impl FormalBiCharacter {
    pub fn new(character: FormalCharacter, restriction: IntMatrix) -> Result<Self> {
        if restriction.cols() != character.rank {
            return Err(Error::Invalid(format!(
                "restriction has {} columns, torus rank is {}",
                restriction.cols(),
                character.rank
            )));
        }
        let s = restriction.rows();
        if s > character.rank {
            return Err(Error::Invalid("semisimple rank exceeds torus rank".into()));
        }
        let snf = smith_normal_form(&restriction);
        if snf.diagonal.iter().any(|d| !d.is_one()) {
            return Err(Error::Invalid("restriction is not surjective".into()));
        }
        Ok(FormalBiCharacter { character, ss_rank: s, restriction })
    }

    pub fn from_i64(rank: usize, weights: &[&[i64]], restriction: &[&[i64]]) -> Result<Self> {
        let f = FormalCharacter::from_i64(rank, weights);
        let m = if restriction.is_empty() { IntMatrix::zeros(0, rank) } else { IntMatrix::from_i64_rows(restriction) };
        FormalBiCharacter::new(f, m)
    }

    /// Bi-character of a torus `Z^n` inside `GL_n` with the standard restriction to the
    /// sum-zero coroot lattice. `(a_i) ↦ (a_i - a_{i+1})`.
    pub fn gl_standard(n: usize) -> Self {
        let weights: Vec<IntVec> = IntMatrix::identity(n).row_vecs();
        let mut r = IntMatrix::zeros(n.saturating_sub(1), n);
        for i in 0..n.saturating_sub(1) {
            r[(i, i)] = BigInt::one();
            r[(i, i + 1)] = -BigInt::one();
        }
        FormalBiCharacter::new(FormalCharacter { rank: n, weights }, r).expect("standard restriction is surjective")
    }

    pub fn kernel_vectors(&self) -> Vec<IntVec> {
        crate::linalg::kernel_vectors(&self.restriction)
    }

    pub fn is_canonical(&self) -> bool {
        self.character.is_canonical()
    }
}

/// Canonicalizes the character and re-bases the semisimple lattice onto the image of the
/// restricted weights' lattice.
pub fn canonicalize_bicharacter(b: &FormalBiCharacter) -> Result<FormalBiCharacter> {
    let (character, basis) = rebase(&b.character)?;
    let r = character.rank;
    // Columns: restriction of each new basis vector.
    let cols: Vec<IntVec> = basis.iter().map(|v| b.restriction.apply(v)).collect();
    let img = hermite_rows(&cols, b.ss_rank);
    let img_rows: Vec<RatVec> = img.iter().map(|v| rat_vec(v)).collect();
    let mut m = IntMatrix::zeros(img.len(), r);
    for (j, c) in cols.iter().enumerate() {
        let coords = crate::linalg::rational::coordinates(&img_rows, &rat_vec(c)).expect("column lies in image");
        let coords = integral(&coords).expect("Hermite basis of image");
        for (i, x) in coords.into_iter().enumerate() {
            m[(i, j)] = x;
        }
    }
    FormalBiCharacter::new(character, m)
}

/// The k weights restricted to `T^ss`.
pub fn restrict_to_ss(b: &FormalBiCharacter) -> FormalCharacter {
    FormalCharacter { rank: b.ss_rank, weights: b.character.weights.iter().map(|w| b.restriction.apply(w)).collect() }
}

/// Automorphisms of X permuting the weight multiset, sorted. Requires a canonical character.
pub fn symmetry_group(f: &FormalCharacter, cap: usize) -> Result<Vec<IntMatrix>> {
    let table = WeightTable::new(f).ok_or_else(|| Error::Invalid("weights do not span X ⊗ Q".into()))?;
    let mut out = Vec::new();
    let mut overflow = false;
    search::weight_maps(&table, &table, &mut |g| {
        if out.len() >= cap {
            overflow = true;
            return true;
        }
        out.push(g.clone());
        false
    });
    if overflow {
        return Err(Error::SizeBound { cap });
    }
    out.sort();
    Ok(out)
}

/// `(1/|S|) Σ gᵀ P g` over `group`.
pub fn average_form(group: &[IntMatrix], p: &RatMatrix) -> RatMatrix {
    let n = p.cols;
    if *p == RatMatrix::identity(n) {
        let mut sum = IntMatrix::zeros(n, n);
        for g in group {
            let gtg = g.transpose().mul(g);
            for i in 0..n {
                for j in 0..n {
                    sum[(i, j)] += &gtg[(i, j)];
                }
            }
        }
        return RatMatrix::from_int(&sum).scale(&Rat::new(BigInt::one(), BigInt::from(group.len().max(1))));
    }
    let mut sum = RatMatrix::zeros(n, n);
    for g in group {
        let gr = RatMatrix::from_int(g);
        sum = sum.add(&gr.transpose().mul(p).mul(&gr));
    }
    sum.scale(&Rat::new(BigInt::one(), BigInt::from(group.len().max(1))))
}

pub fn averaged_inner_product(f: &FormalCharacter, cap: usize) -> Result<GramForm> {
    let s = symmetry_group(f, cap)?;
    GramForm::new(average_form(&s, &RatMatrix::identity(f.rank)))
}

/// `(Σ w wᵀ)^{-1}`, invariant under every automorphism permuting the weights.
pub fn weight_dual_form(f: &FormalCharacter) -> Result<GramForm> {
    let inv = f.second_moment().inverse().ok_or_else(|| Error::Invalid("weights do not span X ⊗ Q".into()))?;
    GramForm::new(inv)
}

/// A lattice isomorphism `φ` with `φ(w_i) = w'_{σ(i)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterIso {
    pub map: IntMatrix,
    pub permutation: Vec<usize>,
}

fn permutation_for(f1: &FormalCharacter, f2: &FormalCharacter, g: &IntMatrix) -> Vec<usize> {
    let mut used = vec![false; f2.k()];
    f1.weights
        .iter()
        .map(|w| {
            let img = g.apply(w);
            let j = (0..f2.k()).find(|&j| !used[j] && f2.weights[j] == img).expect("weights correspond");
            used[j] = true;
            j
        })
        .collect()
}

pub fn iso_formal_characters(f1: &FormalCharacter, f2: &FormalCharacter) -> Option<CharacterIso> {
    if f1.rank != f2.rank || f1.k() != f2.k() {
        return None;
    }
    let (t1, t2) = (WeightTable::new(f1)?, WeightTable::new(f2)?);
    let mut found = None;
    search::weight_maps(&t1, &t2, &mut |g| {
        found = Some(g.clone());
        true
    });
    found.map(|map| CharacterIso { permutation: permutation_for(f1, f2, &map), map })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiCharacterIso {
    pub character: CharacterIso,
    /// Isomorphism of the semisimple lattices with `res₂ ∘ φ = ψ ∘ res₁`.
    pub ss_map: IntMatrix,
}

/// `ψ` with `ψ R₁ = R₂ φ`, if it exists and is a lattice isomorphism.
pub(crate) fn induced_ss_map(b1: &FormalBiCharacter, b2: &FormalBiCharacter, phi: &IntMatrix) -> Option<IntMatrix> {
    let s = b1.ss_rank;
    if s != b2.ss_rank {
        return None;
    }
    if s == 0 {
        return Some(IntMatrix::identity(0));
    }
    let r1 = RatMatrix::from_int(&b1.restriction);
    let section = r1.transpose().mul(&r1.mul(&r1.transpose()).inverse()?);
    let target = RatMatrix::from_int(&b2.restriction.mul(phi));
    let psi = target.mul(&section);
    if psi.mul(&r1) != target {
        return None;
    }
    let psi = psi.to_int()?;
    psi.determinant().abs().is_one().then_some(psi)
}

pub fn iso_formal_bicharacters(b1: &FormalBiCharacter, b2: &FormalBiCharacter) -> Option<BiCharacterIso> {
    let (f1, f2) = (&b1.character, &b2.character);
    if f1.rank != f2.rank || f1.k() != f2.k() || b1.ss_rank != b2.ss_rank {
        return None;
    }
    let (t1, t2) = (WeightTable::new(f1)?, WeightTable::new(f2)?);
    let mut found = None;
    search::weight_maps(&t1, &t2, &mut |g| {
        if let Some(psi) = induced_ss_map(b1, b2, g) {
            found = Some((g.clone(), psi));
            return true;
        }
        false
    });
    found.map(|(map, ss_map)| BiCharacterIso {
        character: CharacterIso { permutation: permutation_for(f1, f2, &map), map },
        ss_map,
    })
}

/// Default cap used when enumerating symmetry groups for averaged forms.
pub const SYMMETRY_CAP: usize = DEFAULT_GROUP_CAP;
