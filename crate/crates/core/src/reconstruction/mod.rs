//! Root data of reductive subgroups of `GL_k` realizing a formal bi-character.
//!
//! Roots are sought among weight differences. A root `α` must be orthogonal to the
//! characters killing `T^ss` under a form invariant for the weight symmetries, its
//! coroot `2Gα/(α,α)` must be integral, and its reflection must permute the weights.
//! The surviving set is a root system; candidates are its full-rank reduced subsystems
//! whose weight multiset splits into irreducible characters.

mod highest_weight;
mod subsystems;

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

pub use highest_weight::{decompose, WeylData};
pub use subsystems::{full_rank_subsystems, Budget, RootTable};

use crate::error::{Error, Result};
use crate::formal_character::{
    average_form, induced_ss_map, symmetry_group, weight_dual_form, FormalBiCharacter, GramForm, WeightTable,
};
use crate::linalg::rational::{integral, rank, rat_vec, Rat, RatMatrix, RatVec};
use crate::linalg::{dot, is_zero_vec, scale_vec, sub_vec, IntVec};
use crate::root_datum::{
    classify, hypothesis_a, preserves_datum_between, Family, RootDatum, SimpleType, SimpleTypeMultiset,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_differences: usize,
    pub max_nodes: u64,
    /// Largest symmetry group averaged explicitly; beyond it the weight-dual form is used.
    pub averaging_group_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_differences: 512, max_nodes: 10_000_000, averaging_group_cap: 5040 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormSource {
    /// Average of `gᵀg` over the symmetry group of the weights.
    Averaged,
    /// `(Σ w wᵀ)^{-1}`.
    WeightDual,
    Supplied,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedRootDatum {
    pub bicharacter: FormalBiCharacter,
    pub datum: RootDatum,
    /// Partition of root indices into irreducible factors.
    pub factors: Vec<Vec<usize>>,
    pub factor_types: Vec<SimpleType>,
    pub types: SimpleTypeMultiset,
    /// Highest weights of the irreducible constituents of the standard representation.
    pub highest_weights: Vec<(IntVec, usize)>,
}

impl EmbeddedRootDatum {
    pub fn hypothesis_a(&self) -> bool {
        hypothesis_a(&self.types)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorStatistics {
    /// `a_n` for every `n` with a nonzero count.
    pub a_counts: BTreeMap<usize, usize>,
    pub a4_parity: usize,
}

impl FactorStatistics {
    pub fn a(&self, n: usize) -> usize {
        self.a_counts.get(&n).copied().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisVerdict {
    /// Some candidate satisfies Hypothesis A and the candidate is unique.
    Unique,
    /// Some candidate satisfies Hypothesis A yet several candidates exist.
    Violation,
    /// No candidate satisfies Hypothesis A.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateReport {
    pub bicharacter: FormalBiCharacter,
    pub form: GramForm,
    pub form_source: FormSource,
    pub differences: usize,
    pub admissible: usize,
    pub nodes: u64,
    pub candidates: Vec<EmbeddedRootDatum>,
}

impl CandidateReport {
    pub fn hypothesis_a(&self) -> Vec<bool> {
        self.candidates.iter().map(|c| c.hypothesis_a()).collect()
    }

    /// Whether all candidates coincide as embedded root data.
    pub fn unique(&self) -> bool {
        self.candidates.len() <= 1
    }
}

/// Nonzero differences of weights that survive restriction to `T^ss`, sorted.
pub fn weight_differences(b: &FormalBiCharacter) -> Vec<IntVec> {
    let mut distinct = b.character.sorted_weights();
    distinct.dedup();
    let mut out: HashSet<IntVec> = HashSet::new();
    for x in &distinct {
        for y in &distinct {
            if x != y {
                let d = sub_vec(x, y);
                if !is_zero_vec(&b.restriction.apply(&d)) {
                    out.insert(d);
                }
            }
        }
    }
    let mut out: Vec<IntVec> = out.into_iter().collect();
    out.sort();
    out
}

/// The functional `β ↦ 2(β, α)/(α, α)` as a vector.
pub fn coroot_of(alpha: &[BigInt], g: &GramForm) -> RatVec {
    let ga = g.matrix.apply(&rat_vec(alpha));
    let norm: Rat = rat_vec(alpha).iter().zip(&ga).map(|(x, y)| x * y).sum();
    let scale = Rat::from_integer(BigInt::from(2)) / norm;
    ga.iter().map(|x| x * &scale).collect()
}

/// The averaged form when the symmetry group is small enough, otherwise the weight-dual form.
pub fn choose_form(b: &FormalBiCharacter, caps: &Caps) -> Result<(GramForm, FormSource)> {
    match symmetry_group(&b.character, caps.averaging_group_cap) {
        Ok(s) => Ok((GramForm::new(average_form(&s, &RatMatrix::identity(b.character.rank)))?, FormSource::Averaged)),
        Err(Error::SizeBound { .. }) => Ok((weight_dual_form(&b.character)?, FormSource::WeightDual)),
        Err(e) => Err(e),
    }
}

fn reflect(x: &[BigInt], alpha: &[BigInt], coroot: &[BigInt]) -> IntVec {
    sub_vec(x, &scale_vec(&dot(x, coroot), alpha))
}

fn sorted_multiset(ws: impl Iterator<Item = IntVec>) -> Vec<IntVec> {
    let mut v: Vec<IntVec> = ws.collect();
    v.sort();
    v
}

/// Weight differences passing the per-root conditions, with their integral coroots.
pub fn admissible_roots(b: &FormalBiCharacter, g: &GramForm, diffs: &[IntVec]) -> Vec<(IntVec, IntVec)> {
    let kernel = b.kernel_vectors();
    let weights = b.character.sorted_weights();
    let mut out = Vec::new();
    for alpha in diffs {
        if kernel.iter().any(|u| !g.pair_int(alpha, u).is_zero()) {
            continue;
        }
        let Some(coroot) = integral(&coroot_of(alpha, g)) else {
            continue;
        };
        let image = sorted_multiset(weights.iter().map(|w| reflect(w, alpha, &coroot)));
        if image == weights {
            out.push((alpha.clone(), coroot));
        }
    }
    out
}

/// Connected components of the graph joining roots with `<α, β∨> ≠ 0`.
fn components(roots: &[IntVec], coroots: &[IntVec]) -> Vec<Vec<usize>> {
    let n = roots.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for bidx in 0..n {
                if comp[bidx] == usize::MAX
                    && (!dot(&roots[a], &coroots[bidx]).is_zero() || !dot(&roots[bidx], &coroots[a]).is_zero())
                {
                    comp[bidx] = id;
                    members.push(bidx);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

fn is_reduced_type_a(roots: &[IntVec], dim: usize) -> bool {
    let set: HashSet<&IntVec> = roots.iter().collect();
    let two = BigInt::from(2);
    let reduced = roots.iter().all(|r| !set.contains(&scale_vec(&two, r)));
    let n = rank(roots, dim);
    reduced && roots.len() == n * (n + 1)
}

pub fn enumerate_root_data(b: &FormalBiCharacter, caps: &Caps) -> Result<CandidateReport> {
    let (form, source) = choose_form(b, caps)?;
    enumerate_with_form(b, form, source, caps)
}

pub fn enumerate_with_form(
    b: &FormalBiCharacter,
    form: GramForm,
    source: FormSource,
    caps: &Caps,
) -> Result<CandidateReport> {
    if !b.is_canonical() {
        return Err(Error::Invalid("bi-character is not canonical".into()));
    }
    let r = b.character.rank;
    let diffs = weight_differences(b);
    if diffs.len() > caps.max_differences {
        return Err(Error::CapExceeded(format!(
            "{} weight differences exceed the cap of {}",
            diffs.len(),
            caps.max_differences
        )));
    }
    let admissible = admissible_roots(b, &form, &diffs);
    let (roots, coroots): (Vec<IntVec>, Vec<IntVec>) = admissible.iter().cloned().unzip();
    let mut budget = Budget { nodes: 0, cap: caps.max_nodes };

    let mut per_component: Vec<Vec<Vec<IntVec>>> = Vec::new();
    let comps = components(&roots, &coroots);
    let total_rank: usize =
        comps.iter().map(|c| rank(&c.iter().map(|&i| roots[i].clone()).collect::<Vec<_>>(), r)).sum();
    let mut candidates = Vec::new();
    if total_rank == b.ss_rank {
        for comp in &comps {
            let croots: Vec<IntVec> = comp.iter().map(|&i| roots[i].clone()).collect();
            let crank = rank(&croots, r);
            if is_reduced_type_a(&croots, r) {
                budget.tick()?;
                per_component.push(vec![croots]);
                continue;
            }
            let ccoroots: Vec<IntVec> = comp.iter().map(|&i| coroots[i].clone()).collect();
            let table = RootTable::new(croots.clone(), r, &|i, v| reflect(v, &croots[i], &ccoroots[i]));
            let subs = full_rank_subsystems(&table, crank, &mut budget)?;
            per_component.push(subs.into_iter().map(|s| s.into_iter().map(|i| croots[i].clone()).collect()).collect());
        }
        let coroot_of_root: std::collections::HashMap<IntVec, IntVec> = admissible.iter().cloned().collect();
        let mut choice = vec![0usize; per_component.len()];
        'outer: loop {
            budget.tick()?;
            if per_component.iter().all(|c| !c.is_empty()) {
                let mut chosen: Vec<IntVec> = Vec::new();
                for (c, &i) in per_component.iter().zip(&choice) {
                    chosen.extend(c[i].iter().cloned());
                }
                if let Some(c) = build_candidate(b, &chosen, &coroot_of_root, &form)? {
                    candidates.push(c);
                }
            } else {
                break;
            }
            for i in 0..choice.len() {
                choice[i] += 1;
                if choice[i] < per_component[i].len() {
                    continue 'outer;
                }
                choice[i] = 0;
            }
            break;
        }
    }
    candidates.sort_by(|a, b| (&a.datum.roots, &a.datum.coroots).cmp(&(&b.datum.roots, &b.datum.coroots)));
    candidates.dedup_by(|a, b| a.datum == b.datum);
    Ok(CandidateReport {
        bicharacter: b.clone(),
        form,
        form_source: source,
        differences: diffs.len(),
        admissible: admissible.len(),
        nodes: budget.nodes,
        candidates,
    })
}

fn build_candidate(
    b: &FormalBiCharacter,
    roots: &[IntVec],
    coroot_of_root: &std::collections::HashMap<IntVec, IntVec>,
    form: &GramForm,
) -> Result<Option<EmbeddedRootDatum>> {
    let r = b.character.rank;
    let datum = RootDatum::new(r, roots.to_vec(), roots.iter().map(|a| coroot_of_root[a].clone()).collect()).sorted();
    let Some(highest_weights) = decompose(&b.character.weights, &datum, form) else {
        return Ok(None);
    };
    let factors = components(&datum.roots, &datum.coroots);
    let mut factor_types = Vec::with_capacity(factors.len());
    for f in &factors {
        let sub = RootDatum::new(
            r,
            f.iter().map(|&i| datum.roots[i].clone()).collect(),
            f.iter().map(|&i| datum.coroots[i].clone()).collect(),
        );
        let t = classify(&sub)?;
        factor_types.push(t.factors[0]);
    }
    let types = classify(&datum)?;
    Ok(Some(EmbeddedRootDatum { bicharacter: b.clone(), datum, factors, factor_types, types, highest_weights }))
}

/// Under Hypothesis A the candidate must be unique; several candidates are a finding.
pub fn check_uniqueness_under_hypothesis_a(report: &CandidateReport) -> HypothesisVerdict {
    if !report.candidates.iter().any(|c| c.hypothesis_a()) {
        HypothesisVerdict::NotApplicable
    } else if report.unique() {
        HypothesisVerdict::Unique
    } else {
        HypothesisVerdict::Violation
    }
}

pub fn statistics_of(types: &SimpleTypeMultiset) -> FactorStatistics {
    let mut a_counts = BTreeMap::new();
    for t in &types.factors {
        if t.family == Family::A {
            *a_counts.entry(t.rank).or_insert(0) += 1;
        }
    }
    let a4_parity = a_counts.get(&4).copied().unwrap_or(0) % 2;
    FactorStatistics { a_counts, a4_parity }
}

pub fn factor_statistics(report: &CandidateReport) -> Vec<FactorStatistics> {
    report.candidates.iter().map(|c| statistics_of(&c.types)).collect()
}

/// Pairs of candidates that disagree on `a_n` for some `n ∉ {1,2,3,4,5,7,8}` or on the
/// parity of `a_4`.
pub fn statistics_violations(stats: &[FactorStatistics]) -> Vec<(usize, usize, String)> {
    let exempt = [1usize, 2, 3, 4, 5, 7, 8];
    let mut out = Vec::new();
    for i in 0..stats.len() {
        for j in i + 1..stats.len() {
            let keys: HashSet<usize> = stats[i].a_counts.keys().chain(stats[j].a_counts.keys()).copied().collect();
            let mut keys: Vec<usize> = keys.into_iter().filter(|n| !exempt.contains(n)).collect();
            keys.sort_unstable();
            for n in keys {
                if stats[i].a(n) != stats[j].a(n) {
                    out.push((i, j, format!("a_{n}: {} vs {}", stats[i].a(n), stats[j].a(n))));
                }
            }
            if stats[i].a4_parity != stats[j].a4_parity {
                out.push((i, j, "parity of a_4".to_string()));
            }
        }
    }
    out
}

/// Whether a bi-character isomorphism carries `(R₁, R₁∨)` onto `(R₂, R₂∨)`.
pub fn same_conjugacy_class(c1: &EmbeddedRootDatum, c2: &EmbeddedRootDatum) -> bool {
    let (b1, b2) = (&c1.bicharacter, &c2.bicharacter);
    if b1.character.k() != b2.character.k() || c1.datum.roots.len() != c2.datum.roots.len() {
        return false;
    }
    let (Some(t1), Some(t2)) = (WeightTable::new(&b1.character), WeightTable::new(&b2.character)) else {
        return false;
    };
    let mut found = false;
    crate::formal_character::weight_maps(&t1, &t2, &mut |g| {
        found = preserves_datum_between(&c1.datum, &c2.datum, g) && induced_ss_map(b1, b2, g).is_some();
        found
    });
    found
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalityReport {
    pub blocks_orthogonal: bool,
    pub length_ratios_match: bool,
    pub failures: Vec<String>,
}

impl OrthogonalityReport {
    pub fn passed(&self) -> bool {
        self.blocks_orthogonal && self.length_ratios_match
    }
}

/// Distinct factors must be orthogonal; within a factor the squared root lengths must
/// have the ratio of its type.
pub fn killing_orthogonality_check(c: &EmbeddedRootDatum, g: &GramForm) -> OrthogonalityReport {
    let mut failures = Vec::new();
    let roots = &c.datum.roots;
    for (i, fi) in c.factors.iter().enumerate() {
        for fj in &c.factors[i + 1..] {
            for &a in fi {
                for &b in fj {
                    if !g.pair_int(&roots[a], &roots[b]).is_zero() {
                        failures.push(format!("roots {a} and {b} in distinct factors are not orthogonal"));
                    }
                }
            }
        }
    }
    let blocks_orthogonal = failures.is_empty();
    let mut length_ratios_match = true;
    for (f, ty) in c.factors.iter().zip(&c.factor_types) {
        let mut lengths: Vec<Rat> = f.iter().map(|&a| g.pair_int(&roots[a], &roots[a])).collect();
        lengths.sort();
        lengths.dedup();
        let expected = match ty.family {
            Family::A | Family::D | Family::E => 1,
            Family::B | Family::C | Family::F if ty.rank >= 2 => 2,
            Family::B | Family::C | Family::F => 1,
            Family::G => 3,
        };
        let ok = match lengths.as_slice() {
            [_] => expected == 1,
            [short, long] => expected > 1 && long / short == Rat::from_integer(BigInt::from(expected)),
            _ => false,
        };
        if !ok {
            length_ratios_match = false;
            failures.push(format!("factor {ty} has squared lengths {lengths:?}"));
        }
    }
    OrthogonalityReport { blocks_orthogonal, length_ratios_match, failures }
}
