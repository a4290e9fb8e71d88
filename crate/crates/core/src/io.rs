//! JSON documents read by the command line and the reports it writes.
//!
//! Integers in input documents are 64-bit; integers in reports fall back to decimal strings
//! when they do not fit.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::finite_lie::CongruenceRow;
use crate::formal_character::{FormalBiCharacter, FormalCharacter};
use crate::frobenius::{Eigenvalue, MonomialEigenvalueSystem, WeilContext};
use crate::galois_forms::{AbelianGaloisDescriptor, OuterGaloisAction};
use crate::linalg::{int_vec, IntMatrix, IntVec};
use crate::reconstruction::{check_uniqueness_under_hypothesis_a, statistics_of, CandidateReport, EmbeddedRootDatum};
use crate::root_datum::{BasedRootDatum, RootDatum, SimpleType, SimpleTypeMultiset};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Deserialize)]
pub struct DatumDoc {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    #[serde(default)]
    pub simple: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct BiCharacterDoc {
    pub k: usize,
    pub r: usize,
    pub weights: Vec<Vec<i64>>,
    pub s: usize,
    pub restriction: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct EigenvalueDoc {
    pub exp: Vec<i64>,
    #[serde(default)]
    pub tor: i64,
}

#[derive(Clone, Debug, Deserialize)]
pub struct WeilDoc {
    pub p: u64,
    pub s: u64,
    #[serde(default)]
    pub denominators: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct EigenSystemDoc {
    pub base: Vec<u64>,
    #[serde(default = "one")]
    pub m: u64,
    pub eigenvalues: Vec<EigenvalueDoc>,
    #[serde(default)]
    pub weil: Option<WeilDoc>,
}

fn one() -> u64 {
    1
}

#[derive(Clone, Debug, Deserialize)]
pub struct ActionDoc {
    pub based: DatumDoc,
    pub m: u64,
    #[serde(rename = "H")]
    pub h: Vec<u64>,
    #[serde(default)]
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
}

/// Either a list of simple types or a root datum to classify.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum TypesDoc {
    Types {
        types: Vec<String>,
        #[serde(default)]
        central_rank: usize,
    },
    Datum(DatumDoc),
}

fn matrix(rows: &[Vec<i64>], cols: usize, what: &str) -> Result<IntMatrix> {
    if let Some(r) = rows.iter().find(|r| r.len() != cols) {
        return Err(Error::Invalid(format!("{what}: row of length {} where {cols} expected", r.len())));
    }
    let rows: Vec<IntVec> = rows.iter().map(|r| int_vec(r)).collect();
    Ok(IntMatrix::from_rows(&rows, cols))
}

impl DatumDoc {
    /// The datum exactly as written; validation is left to the caller.
    pub fn datum(&self) -> Result<RootDatum> {
        let check = |vs: &[Vec<i64>], what: &str| match vs.iter().find(|v| v.len() != self.rank) {
            Some(v) => Err(Error::Invalid(format!("{what} of length {} in rank {}", v.len(), self.rank))),
            None => Ok(()),
        };
        check(&self.roots, "root")?;
        check(&self.coroots, "coroot")?;
        Ok(RootDatum::new(
            self.rank,
            self.roots.iter().map(|v| int_vec(v)).collect(),
            self.coroots.iter().map(|v| int_vec(v)).collect(),
        ))
    }

    /// Uses `simple` when present, otherwise the base of the default functional.
    pub fn based(&self) -> Result<BasedRootDatum> {
        let d = self.datum()?;
        if !d.validate().is_valid() {
            return Err(Error::Invalid("root datum fails validation".into()));
        }
        match &self.simple {
            Some(simple) => {
                if simple.iter().any(|&i| i >= d.roots.len()) {
                    return Err(Error::Invalid("simple root index out of range".into()));
                }
                let b = BasedRootDatum { datum: d, simple: simple.clone(), functional: None };
                if !b.is_valid_base() {
                    return Err(Error::Invalid("listed simple roots do not form a base".into()));
                }
                Ok(b)
            }
            None => {
                let f = crate::root_datum::default_functional(&d);
                crate::root_datum::base(&d, &f)
            }
        }
    }
}

impl BiCharacterDoc {
    pub fn bicharacter(&self) -> Result<FormalBiCharacter> {
        if self.weights.len() != self.k {
            return Err(Error::Invalid(format!("k = {} but {} weights given", self.k, self.weights.len())));
        }
        if self.restriction.len() != self.s {
            return Err(Error::Invalid(format!("s = {} but restriction has {} rows", self.s, self.restriction.len())));
        }
        let w = matrix(&self.weights, self.r, "weights")?;
        let res = matrix(&self.restriction, self.r, "restriction")?;
        FormalBiCharacter::new(FormalCharacter::new(self.r, w.row_vecs())?, res)
    }
}

impl EigenSystemDoc {
    pub fn system(&self) -> Result<MonomialEigenvalueSystem> {
        let ev =
            self.eigenvalues.iter().map(|e| Eigenvalue { exp: int_vec(&e.exp), tor: BigInt::from(e.tor) }).collect();
        MonomialEigenvalueSystem::new(self.base.clone(), self.m, ev)
    }

    pub fn weil(&self) -> Option<WeilContext> {
        self.weil.as_ref().map(|w| {
            let mut ctx = WeilContext::new(w.p, w.s);
            if let Some(d) = &w.denominators {
                ctx.denominators = d.clone();
            }
            ctx
        })
    }
}

impl ActionDoc {
    pub fn action(&self) -> Result<OuterGaloisAction> {
        let based = self.based.based()?;
        let desc = AbelianGaloisDescriptor::new(self.m, &self.h)?;
        let n = based.datum.rank;
        let gens = self
            .action
            .iter()
            .map(|(k, rows)| {
                let r: u64 =
                    k.trim().parse().map_err(|_| Error::Invalid(format!("residue key {k:?} is not an integer")))?;
                if rows.len() != n {
                    return Err(Error::Invalid(format!("image of {r} has {} rows, rank is {n}", rows.len())));
                }
                Ok((r, matrix(rows, n, "automorphism")?))
            })
            .collect::<Result<Vec<_>>>()?;
        OuterGaloisAction::new(based, desc, &gens)
    }
}

impl TypesDoc {
    pub fn types(&self) -> Result<SimpleTypeMultiset> {
        match self {
            TypesDoc::Types { types, central_rank } => {
                let ts = types.iter().map(|t| t.parse::<SimpleType>()).collect::<Result<Vec<_>>>()?;
                Ok(SimpleTypeMultiset::new(ts, *central_rank))
            }
            TypesDoc::Datum(d) => {
                let d = d.datum()?;
                if !d.validate().is_valid() {
                    return Err(Error::Invalid("root datum fails validation".into()));
                }
                crate::root_datum::classify(&d)
            }
        }
    }
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> std::result::Result<T, serde_json::Error> {
    serde_json::from_str(text)
}

pub fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn vec_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn vecs_json(vs: &[IntVec]) -> Value {
    Value::Array(vs.iter().map(|v| vec_json(v)).collect())
}

pub fn matrix_json(m: &IntMatrix) -> Value {
    vecs_json(&m.row_vecs())
}

pub fn datum_json(d: &RootDatum) -> Value {
    json!({ "rank": d.rank, "roots": vecs_json(&d.roots), "coroots": vecs_json(&d.coroots) })
}

pub fn bicharacter_json(b: &FormalBiCharacter) -> Value {
    json!({
        "k": b.character.k(),
        "r": b.character.rank,
        "weights": vecs_json(&b.character.weights),
        "s": b.ss_rank,
        "restriction": matrix_json(&b.restriction),
    })
}

fn candidate_json(c: &EmbeddedRootDatum) -> Value {
    let hw: Vec<Value> =
        c.highest_weights.iter().map(|(w, m)| json!({ "weight": vec_json(w), "multiplicity": m })).collect();
    json!({
        "datum": datum_json(&c.datum),
        "types": c.types,
        "factor_types": c.factor_types,
        "hypothesis_a": c.hypothesis_a(),
        "statistics": statistics_of(&c.types),
        "highest_weights": hw,
    })
}

pub fn candidate_report_json(r: &CandidateReport) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "bicharacter": bicharacter_json(&r.bicharacter),
        "form": r.form,
        "form_source": r.form_source,
        "differences": r.differences,
        "admissible_roots": r.admissible,
        "search_nodes": r.nodes,
        "candidate_count": r.candidates.len(),
        "unique": r.unique(),
        "hypothesis_a": r.hypothesis_a(),
        "uniqueness_verdict": check_uniqueness_under_hypothesis_a(r),
        "candidates": r.candidates.iter().map(candidate_json).collect::<Vec<_>>(),
    })
}

pub fn congruence_row_json(row: &CongruenceRow) -> Value {
    json!({ "schema_version": SCHEMA_VERSION, "ell": row.ell, "status": row.status, "factors": row.factors })
}
