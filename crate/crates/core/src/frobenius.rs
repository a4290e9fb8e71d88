//! Frobenius tori from eigenvalues modelled as monomials `ζ_m^t · Π p_j^{e_j}` over a
//! declared base of primes.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formal_character::FormalCharacter;
use crate::linalg::rational::{format_rat, Rat};
use crate::linalg::{kernel_basis, kernel_vectors, IntMatrix, IntVec, Lattice};
use crate::root_datum::RootDatum;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenvalue {
    /// Exponents over the factor base.
    pub exp: IntVec,
    /// Exponent of `ζ_m`.
    pub tor: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialEigenvalueSystem {
    pub base: Vec<u64>,
    pub m: u64,
    pub eigenvalues: Vec<Eigenvalue>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilContext {
    pub p: u64,
    /// `q_v = p^s`.
    pub s: u64,
    /// Admissible denominators of `exponent_p / s`.
    pub denominators: Vec<u64>,
}

impl WeilContext {
    pub fn new(p: u64, s: u64) -> Self {
        WeilContext { p, s, denominators: vec![1, 2] }
    }
}

impl MonomialEigenvalueSystem {
    pub fn new(base: Vec<u64>, m: u64, eigenvalues: Vec<Eigenvalue>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("torsion order m must be positive".into()));
        }
        let distinct: HashSet<u64> = base.iter().copied().collect();
        if distinct.len() != base.len() || base.iter().any(|&p| p < 2) {
            return Err(Error::Invalid("factor base must consist of distinct integers ≥ 2".into()));
        }
        if let Some(e) = eigenvalues.iter().find(|e| e.exp.len() != base.len()) {
            return Err(Error::Invalid(format!(
                "exponent vector of length {} over a base of size {}",
                e.exp.len(),
                base.len()
            )));
        }
        Ok(MonomialEigenvalueSystem { base, m, eigenvalues })
    }

    /// Eigenvalues given as `(exponents, torsion exponent)` pairs.
    pub fn from_i64(base: &[u64], m: u64, eigenvalues: &[(&[i64], i64)]) -> Result<Self> {
        let ev = eigenvalues
            .iter()
            .map(|(e, t)| Eigenvalue { exp: crate::linalg::int_vec(e), tor: BigInt::from(*t) })
            .collect();
        Self::new(base.to_vec(), m, ev)
    }

    pub fn k(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `n × k` matrix of prime exponents, one column per eigenvalue.
    fn exponent_matrix(&self) -> IntMatrix {
        let (n, k) = (self.base.len(), self.k());
        let mut e = IntMatrix::zeros(n, k);
        for (j, ev) in self.eigenvalues.iter().enumerate() {
            for i in 0..n {
                e[(i, j)] = ev.exp[i].clone();
            }
        }
        e
    }

    pub fn power(&self, c: i64) -> Self {
        let c = BigInt::from(c);
        MonomialEigenvalueSystem {
            base: self.base.clone(),
            m: self.m,
            eigenvalues: self
                .eigenvalues
                .iter()
                .map(|e| Eigenvalue { exp: e.exp.iter().map(|x| x * &c).collect(), tor: &e.tor * &c })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationLattices {
    /// `{ e : Π α_i^{e_i} = 1 }`.
    pub exact: Lattice,
    /// `{ e : Π α_i^{e_i} is a root of unity }`, saturated.
    pub torsion: Lattice,
}

pub fn relation_lattices(sys: &MonomialEigenvalueSystem) -> RelationLattices {
    let k = sys.k();
    let e = sys.exponent_matrix();
    let torsion = kernel_basis(&e);
    // Unknowns (e, y): E e = 0 and t·e + m y = 0.
    let n = sys.base.len();
    let mut big = IntMatrix::zeros(n + 1, k + 1);
    for i in 0..n {
        for j in 0..k {
            big[(i, j)] = e[(i, j)].clone();
        }
    }
    for j in 0..k {
        big[(n, j)] = sys.eigenvalues[j].tor.clone();
    }
    big[(n, k)] = BigInt::from(sys.m);
    let gens: Vec<IntVec> = kernel_vectors(&big).into_iter().map(|v| v[..k].to_vec()).collect();
    RelationLattices { exact: Lattice::span(k, &gens), torsion }
}

/// Dimension of the identity component: `k − rank(torsion relations)`.
pub fn frobenius_torus_rank(sys: &MonomialEigenvalueSystem) -> usize {
    sys.k() - relation_lattices(sys).torsion.rank()
}

/// The character lattice `Z^k / torsion` presented by a basis of the functionals vanishing
/// on torsion relations; weight `i` is the image of `e_i`.
pub fn torus_character_lattice(sys: &MonomialEigenvalueSystem) -> FormalCharacter {
    let k = sys.k();
    let torsion = relation_lattices(sys).torsion;
    let functionals: Vec<IntVec> = if torsion.rank() == 0 {
        IntMatrix::identity(k).row_vecs()
    } else {
        kernel_basis(&torsion.basis_matrix()).basis().to_vec()
    };
    let r = functionals.len();
    let weights = (0..k).map(|i| functionals.iter().map(|f| f[i].clone()).collect()).collect();
    FormalCharacter { rank: r, weights }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeilReport {
    pub index: usize,
    /// Always true for monomials in positive primes times roots of unity.
    pub equal_absolute_values: bool,
    pub equal_absolute_values_reason: String,
    pub unit_away_from_p: bool,
    /// `exponent_p / s` as a reduced fraction.
    pub ratio: String,
    pub ratio_admissible: bool,
}

impl WeilReport {
    pub fn passed(&self) -> bool {
        self.equal_absolute_values && self.unit_away_from_p && self.ratio_admissible
    }
}

pub fn weil_conditions(sys: &MonomialEigenvalueSystem, ctx: &WeilContext) -> Result<Vec<WeilReport>> {
    let pi = sys
        .base
        .iter()
        .position(|&q| q == ctx.p)
        .ok_or_else(|| Error::Invalid(format!("prime {} is not in the factor base", ctx.p)))?;
    if ctx.s == 0 {
        return Err(Error::Invalid("s must be positive".into()));
    }
    Ok(sys
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, ev)| {
            let unit = ev.exp.iter().enumerate().all(|(j, x)| j == pi || x.is_zero());
            let ratio = Rat::new(ev.exp[pi].clone(), BigInt::from(ctx.s));
            let denom = ratio.denom().clone();
            let admissible = ctx.denominators.iter().any(|&d| BigInt::from(d) == denom);
            WeilReport {
                index: i,
                equal_absolute_values: true,
                equal_absolute_values_reason: "monomial in positive rationals times a root of unity: \
                                               every complex absolute value is the same real number"
                    .into(),
                unit_away_from_p: unit,
                ratio: format_rat(&ratio),
                ratio_admissible: admissible,
            }
        })
        .collect())
}

/// Whether the Frobenius torus has the rank of the datum's maximal torus.
pub fn maximality_witness(sys: &MonomialEigenvalueSystem, d: &RootDatum) -> bool {
    frobenius_torus_rank(sys) == d.rank
}

/// Index of `exact` in `torsion`, finite with exponent dividing m.
pub fn torsion_quotient_order(l: &RelationLattices) -> BigInt {
    match crate::linalg::lattice_index(&l.exact, &l.torsion) {
        Ok(crate::linalg::LatticeIndex::Finite(n)) => n,
        _ => BigInt::zero(),
    }
}
