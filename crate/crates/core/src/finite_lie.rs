//! Finite groups of Lie type named symbolically, their ℓ-ranks, and the prediction of
//! `Lie_ℓ(G^der(F_ℓ))` from a quasi-split descriptor.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::galois_forms::{frobenius_orbits, is_prime, GaloisFormDescriptor};
use crate::root_datum::{Family, SimpleType};

/// `ᵈX_n(ℓ^{d·f})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteLieFactor {
    pub ty: SimpleType,
    pub d: usize,
    pub f: usize,
    pub ell: u64,
}

fn twist_allowed(ty: SimpleType, d: usize) -> bool {
    match d {
        1 => true,
        2 => {
            matches!(ty.family, Family::A if ty.rank >= 2)
                || matches!(ty.family, Family::D)
                || ty == SimpleType { family: Family::E, rank: 6 }
        }
        3 => ty == SimpleType { family: Family::D, rank: 4 },
        _ => false,
    }
}

impl FiniteLieFactor {
    pub fn new(ty: SimpleType, d: usize, f: usize, ell: u64) -> Result<Self> {
        if f == 0 {
            return Err(Error::Invalid("field exponent must be positive".into()));
        }
        if !twist_allowed(ty, d) {
            return Err(Error::Invalid(format!("no twist of order {d} for {ty}")));
        }
        Ok(FiniteLieFactor { ty, d, f, ell })
    }

    pub fn chevalley(ty: SimpleType, f: usize, ell: u64) -> Self {
        FiniteLieFactor { ty, d: 1, f, ell }
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for FiniteLieFactor {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d > 1 {
            write!(out, "{}", self.d)?;
        }
        let e = self.d * self.f;
        if e == 1 {
            write!(out, "{}({})", self.ty, self.ell)
        } else {
            write!(out, "{}({}^{})", self.ty, self.ell, e)
        }
    }
}

impl Serialize for FiniteLieFactor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FiniteLieFactor", 5)?;
        st.serialize_field("name", &self.name())?;
        st.serialize_field("type", &self.ty)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("f", &self.f)?;
        st.serialize_field("ell", &self.ell)?;
        st.end()
    }
}

/// Sorted multiset of factors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct LieMultiset {
    pub factors: Vec<FiniteLieFactor>,
}

impl LieMultiset {
    pub fn new(mut factors: Vec<FiniteLieFactor>) -> Self {
        factors.sort();
        LieMultiset { factors }
    }

    pub fn union(&self, other: &LieMultiset) -> LieMultiset {
        LieMultiset::new(self.factors.iter().chain(&other.factors).copied().collect())
    }

    pub fn names(&self) -> Vec<String> {
        self.factors.iter().map(FiniteLieFactor::name).collect()
    }
}

impl fmt::Display for LieMultiset {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{{{}}}", self.names().join(", "))
    }
}

/// `rk_ℓ^g` of one factor: `f·n` when the geometric type is `g`.
pub fn lie_rank(g: SimpleType, factor: &FiniteLieFactor) -> Result<usize> {
    if factor.ell < 5 {
        return Err(Error::SmallPrime(factor.ell));
    }
    Ok(if factor.ty == g { factor.f * g.rank } else { 0 })
}

pub fn total_rank(m: &LieMultiset) -> Result<usize> {
    let Some(first) = m.factors.first() else {
        return Ok(0);
    };
    if m.factors.iter().any(|x| x.ell != first.ell) {
        return Err(Error::MixedPrime);
    }
    m.factors.iter().map(|x| lie_rank(x.ty, x)).sum()
}

pub fn lie_multiset_of_points(desc: &GaloisFormDescriptor, ell: u64) -> Result<LieMultiset> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    if ell < 5 {
        return Err(Error::SmallPrime(ell));
    }
    let factors = frobenius_orbits(desc, ell)?
        .into_iter()
        .map(|(c, f, d)| FiniteLieFactor::new(desc.components[c].ty, d, f, ell))
        .collect::<Result<Vec<_>>>()?;
    Ok(LieMultiset::new(factors))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    Ramified,
    SmallPrime,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceRow {
    pub ell: u64,
    pub status: RowStatus,
    pub factors: LieMultiset,
}

/// One row per prime in `lo..=hi`.
pub fn congruence_table(desc: &GaloisFormDescriptor, lo: u64, hi: u64) -> Vec<CongruenceRow> {
    (lo..=hi)
        .filter(|&ell| is_prime(ell))
        .map(|ell| match lie_multiset_of_points(desc, ell) {
            Ok(factors) => CongruenceRow { ell, status: RowStatus::Ok, factors },
            Err(Error::SmallPrime(_)) => {
                CongruenceRow { ell, status: RowStatus::SmallPrime, factors: LieMultiset::default() }
            }
            Err(_) => CongruenceRow { ell, status: RowStatus::Ramified, factors: LieMultiset::default() },
        })
        .collect()
}
