//! Root data `(X, R, X∨, R∨)` with `X = X∨ = Z^rank` paired by the dot product.
//!
//! Roots and coroots are index-aligned: `coroots[i]` is the coroot of `roots[i]`.

mod based;
mod cartan;
mod iso;
mod weyl;

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

pub(crate) use based::preserves_datum_between;
pub use based::{base, default_functional, diagram_automorphisms, out_group, BasedRootDatum};
pub use cartan::{
    cartan_matrix_of_type, classify, classify_cartan, dynkin_components, hypothesis_a, Family, SimpleType,
    SimpleTypeMultiset,
};
pub use iso::iso_root_data;
pub use weyl::{group_closure, weyl_group, DEFAULT_GROUP_CAP};

use crate::linalg::{dot, is_zero_vec, neg_vec, rational::rank, scale_vec, sub_vec, IntMatrix, IntVec};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootDatum {
    pub rank: usize,
    pub roots: Vec<IntVec>,
    pub coroots: Vec<IntVec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Count,
    Length,
    ZeroRoot,
    DuplicateRoot,
    Pairing,
    RootReflection,
    CorootReflection,
    NonReduced,
    Negation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    fn push(&mut self, kind: ViolationKind, detail: String) {
        self.violations.push(Violation { kind, detail });
    }
}

fn show(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl RootDatum {
    pub fn new(rank: usize, roots: Vec<IntVec>, coroots: Vec<IntVec>) -> Self {
        RootDatum { rank, roots, coroots }
    }

    pub fn from_i64(rank: usize, roots: &[&[i64]], coroots: &[&[i64]]) -> Self {
        let conv = |vs: &[&[i64]]| vs.iter().map(|v| crate::linalg::int_vec(v)).collect();
        RootDatum { rank, roots: conv(roots), coroots: conv(coroots) }
    }

    /// Split torus of the given rank.
    pub fn torus(rank: usize) -> Self {
        RootDatum { rank, roots: Vec::new(), coroots: Vec::new() }
    }

    /// `GL_n` with its diagonal torus: roots and coroots `e_i - e_j`.
    pub fn gl(n: usize) -> Self {
        let mut roots = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut v = vec![BigInt::zero(); n];
                    v[i] += 1;
                    v[j] -= 1;
                    roots.push(v);
                }
            }
        }
        let coroots = roots.clone();
        RootDatum { rank: n, roots, coroots }.sorted()
    }

    /// Adjoint datum of a Cartan matrix `C_ij = <α_i, α_j∨>`: X is the root lattice.
    pub fn adjoint_from_cartan(cartan: &IntMatrix) -> Self {
        let n = cartan.rows();
        let simple: Vec<IntVec> = IntMatrix::identity(n).row_vecs();
        let simple_co: Vec<IntVec> = (0..n).map(|j| cartan.column(j)).collect();
        let mut seen: HashSet<IntVec> = HashSet::new();
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        let mut queue: Vec<(IntVec, IntVec)> = simple.iter().cloned().zip(simple_co.iter().cloned()).collect();
        while let Some((r, c)) = queue.pop() {
            if !seen.insert(r.clone()) {
                continue;
            }
            for j in 0..n {
                let p = dot(&r, &simple_co[j]);
                let nr = sub_vec(&r, &scale_vec(&p, &simple[j]));
                let q = dot(&simple[j], &c);
                let nc = sub_vec(&c, &scale_vec(&q, &simple_co[j]));
                if !seen.contains(&nr) {
                    queue.push((nr, nc));
                }
            }
            roots.push(r);
            coroots.push(c);
        }
        RootDatum { rank: n, roots, coroots }.sorted()
    }

    pub fn simply_connected_from_cartan(cartan: &IntMatrix) -> Self {
        Self::adjoint_from_cartan(&cartan.transpose()).dual().sorted()
    }

    pub fn adjoint(ty: SimpleType) -> Self {
        Self::adjoint_from_cartan(&cartan_matrix_of_type(ty))
    }

    pub fn simply_connected(ty: SimpleType) -> Self {
        Self::simply_connected_from_cartan(&cartan_matrix_of_type(ty))
    }

    pub fn dual(&self) -> Self {
        RootDatum { rank: self.rank, roots: self.coroots.clone(), coroots: self.roots.clone() }
    }

    pub fn direct_sum(&self, other: &RootDatum) -> Self {
        let n = self.rank + other.rank;
        let pad_left = |v: &IntVec| {
            let mut w = v.clone();
            w.resize(n, BigInt::zero());
            w
        };
        let pad_right = |v: &IntVec| {
            let mut w = vec![BigInt::zero(); self.rank];
            w.extend(v.iter().cloned());
            w
        };
        let mut roots: Vec<IntVec> = self.roots.iter().map(pad_left).collect();
        roots.extend(other.roots.iter().map(pad_right));
        let mut coroots: Vec<IntVec> = self.coroots.iter().map(pad_left).collect();
        coroots.extend(other.coroots.iter().map(pad_right));
        RootDatum { rank: n, roots, coroots }
    }

    /// Image under a unimodular change of coordinates `x ↦ g x`; coroots move by `g^{-T}`.
    pub fn transform(&self, g: &IntMatrix) -> Option<Self> {
        let inv = crate::linalg::rational::RatMatrix::from_int(g).inverse()?.to_int()?;
        let inv_t = inv.transpose();
        Some(RootDatum {
            rank: self.rank,
            roots: self.roots.iter().map(|r| g.apply(r)).collect(),
            coroots: self.coroots.iter().map(|c| inv_t.apply(c)).collect(),
        })
    }

    /// Roots sorted lexicographically, coroots kept aligned.
    pub fn sorted(mut self) -> Self {
        let mut pairs: Vec<(IntVec, IntVec)> = self.roots.drain(..).zip(self.coroots.drain(..)).collect();
        pairs.sort();
        let (roots, coroots) = pairs.into_iter().unzip();
        self.roots = roots;
        self.coroots = coroots;
        self
    }

    pub fn root_index(&self) -> HashMap<IntVec, usize> {
        self.roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect()
    }

    /// `s_α(x) = x - <x, α∨> α` for the root at `i`.
    pub fn reflect(&self, i: usize, x: &[BigInt]) -> IntVec {
        let p = dot(x, &self.coroots[i]);
        sub_vec(x, &scale_vec(&p, &self.roots[i]))
    }

    /// Dual reflection on X∨: `u ↦ u - <α, u> α∨`.
    pub fn coreflect(&self, i: usize, u: &[BigInt]) -> IntVec {
        let p = dot(&self.roots[i], u);
        sub_vec(u, &scale_vec(&p, &self.coroots[i]))
    }

    pub fn reflection_matrix(&self, i: usize) -> IntMatrix {
        let n = self.rank;
        let mut m = IntMatrix::identity(n);
        for a in 0..n {
            for b in 0..n {
                m[(a, b)] -= &self.roots[i][a] * &self.coroots[i][b];
            }
        }
        m
    }

    pub fn semisimple_rank(&self) -> usize {
        rank(&self.roots, self.rank)
    }

    pub fn central_rank(&self) -> usize {
        self.rank - self.semisimple_rank()
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }
}

pub fn validate(d: &RootDatum) -> ValidationReport {
    use ViolationKind::*;
    let mut report = ValidationReport::default();
    if d.roots.len() != d.coroots.len() {
        report.push(Count, format!("{} roots but {} coroots", d.roots.len(), d.coroots.len()));
    }
    for v in d.roots.iter().chain(&d.coroots) {
        if v.len() != d.rank {
            report.push(Length, format!("vector {} does not have length {}", show(v), d.rank));
        }
    }
    if !report.is_valid() {
        return report;
    }

    let index = d.root_index();
    if index.len() != d.roots.len() {
        report.push(DuplicateRoot, "root list contains repeats".into());
    }
    let coroot_set: HashSet<&IntVec> = d.coroots.iter().collect();
    let two = BigInt::from(2);
    for (i, (r, c)) in d.roots.iter().zip(&d.coroots).enumerate() {
        if is_zero_vec(r) {
            report.push(ZeroRoot, format!("root {i} is zero"));
            continue;
        }
        let p = dot(r, c);
        if p != two {
            report.push(Pairing, format!("pairing of root {} with its coroot is {p}, expected 2", show(r)));
        }
        match index.get(&neg_vec(r)) {
            None => report.push(Negation, format!("-{} is not a root", show(r))),
            Some(&j) if d.coroots[j] != neg_vec(c) => {
                report.push(Negation, format!("coroot of -{} is not -{}", show(r), show(c)))
            }
            _ => {}
        }
        if index.contains_key(&scale_vec(&two, r)) {
            report.push(NonReduced, format!("both {} and its double are roots", show(r)));
        }
    }
    if report.has(Pairing) || report.has(ZeroRoot) {
        return report;
    }
    'roots: for i in 0..d.roots.len() {
        for j in 0..d.roots.len() {
            let image = d.reflect(i, &d.roots[j]);
            if !index.contains_key(&image) {
                report.push(
                    RootReflection,
                    format!("reflection in {} sends {} outside R", show(&d.roots[i]), show(&d.roots[j])),
                );
                break 'roots;
            }
        }
    }
    'coroots: for i in 0..d.roots.len() {
        for j in 0..d.coroots.len() {
            let image = d.coreflect(i, &d.coroots[j]);
            if !coroot_set.contains(&image) {
                report.push(
                    CorootReflection,
                    format!("dual reflection in {} sends {} outside R∨", show(&d.coroots[i]), show(&d.coroots[j])),
                );
                break 'coroots;
            }
        }
    }
    report
}
