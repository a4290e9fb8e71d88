//! Seeded random inputs: bi-characters of small reductive groups and unstructured noise.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rootdata::formal_character::{
    average_form, canonicalize_bicharacter, FormalBiCharacter, FormalCharacter, GramForm,
};
use rootdata::linalg::rational::RatMatrix;
use rootdata::linalg::{saturate, IntMatrix, IntVec, Lattice};
use rootdata::reconstruction::WeylData;
use rootdata::root_datum::{weyl_group, RootDatum, SimpleType};

use super::{big, oracle, random_unimodular};

pub struct Sample {
    pub label: String,
    pub bicharacter: FormalBiCharacter,
}

const MAX_K: usize = 8;
const MAX_R: usize = 4;
const MAX_D: usize = 24;

fn semisimple(rng: &mut ChaCha8Rng) -> (String, RootDatum) {
    let shapes: &[&[&str]] = &[
        &["A_1"],
        &["A_1"],
        &["A_2"],
        &["B_2"],
        &["G_2"],
        &["A_3"],
        &["B_3"],
        &["C_3"],
        &["A_1", "A_1"],
        &["A_1", "A_2"],
        &["A_1", "A_1", "A_1"],
    ];
    let shape = shapes.choose(rng).unwrap();
    let mut label = Vec::new();
    let mut d = RootDatum::torus(0);
    for t in shape.iter() {
        let ty: SimpleType = t.parse().unwrap();
        let sc = rng.gen_bool(0.5);
        let piece = if sc { RootDatum::simply_connected(ty) } else { RootDatum::adjoint(ty) };
        label.push(format!("{}{}", if sc { "sc " } else { "ad " }, t));
        d = d.direct_sum(&piece);
    }
    (label.join(" + "), d)
}

/// All weights of the irreducible module whose highest weight is the dominant conjugate
/// of `v`.
fn irreducible(wd: &WeylData, v: &IntVec) -> Vec<IntVec> {
    let lambda = wd.dominant_conjugate(v);
    let all = |_: &IntVec| true;
    let mut out = Vec::new();
    for (mu, m) in wd.dominant_character(&lambda, &all).unwrap() {
        let m: usize = m.try_into().unwrap();
        for w in wd.orbit(&mu, &all).unwrap() {
            out.extend(std::iter::repeat_n(w, m));
        }
    }
    out
}

fn template(rng: &mut ChaCha8Rng) -> Option<Sample> {
    let (label, ss) = semisimple(rng);
    let torus = rng.gen_range(0..=MAX_R.saturating_sub(ss.rank));
    let d = ss.direct_sum(&RootDatum::torus(torus));
    let r = d.rank;
    let w = weyl_group(&d, 100_000).unwrap();
    let form = GramForm::new(average_form(&w, &RatMatrix::identity(r))).unwrap();
    let wd = WeylData::new(&d, &form);
    let mut weights: Vec<IntVec> = Vec::new();
    let summands = rng.gen_range(1..=3);
    for _ in 0..summands {
        for _attempt in 0..10 {
            let v: Vec<i64> = (0..r).map(|_| rng.gen_range(-2..=2)).collect();
            let ws = irreducible(&wd, &big(&v));
            if weights.len() + ws.len() <= MAX_K {
                weights.extend(ws);
                break;
            }
        }
    }
    if weights.is_empty() {
        return None;
    }
    let coroot_lattice = saturate(&Lattice::span(r, &d.coroots));
    let restriction = IntMatrix::from_rows(coroot_lattice.basis(), r);
    let b = FormalBiCharacter::new(FormalCharacter::new(r, weights).ok()?, restriction).ok()?;
    let b = canonicalize_bicharacter(&b).ok()?;
    Some(Sample { label: format!("{label} + T{torus}"), bicharacter: b })
}

fn noise(rng: &mut ChaCha8Rng) -> Option<Sample> {
    let r = rng.gen_range(1..=MAX_R);
    let k = rng.gen_range(2..=MAX_K);
    let s = rng.gen_range(0..=r);
    let weights: Vec<IntVec> =
        (0..k).map(|_| big(&(0..r).map(|_| rng.gen_range(-1..=1)).collect::<Vec<_>>())).collect();
    let rows: Vec<IntVec> = (0..s).map(|_| big(&(0..r).map(|_| rng.gen_range(-1..=1)).collect::<Vec<_>>())).collect();
    let restriction = if s == 0 { IntMatrix::zeros(0, r) } else { IntMatrix::from_rows(&rows, r) };
    let b = FormalBiCharacter::new(FormalCharacter::new(r, weights).ok()?, restriction).ok()?;
    let b = canonicalize_bicharacter(&b).ok()?;
    Some(Sample { label: format!("noise r={r} k={k} s={s}"), bicharacter: b })
}

fn acceptable(b: &FormalBiCharacter) -> bool {
    b.character.k() <= MAX_K && b.character.rank <= MAX_R && oracle::differences(b).len() <= MAX_D
}

/// `n` inputs with `k ≤ 8`, `r ≤ 4` and at most 24 weight differences; about two thirds
/// come from actual representations.
pub fn corpus(seed: u64, n: usize) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let sample = if rng.gen_bool(0.67) { template(&mut rng) } else { noise(&mut rng) };
        if let Some(s) = sample.filter(|s| acceptable(&s.bicharacter)) {
            out.push(s);
        }
    }
    out
}

/// A random valid root datum of total rank at most 6, in random coordinates.
pub fn random_datum(rng: &mut ChaCha8Rng) -> (String, RootDatum) {
    let types = ["A_1", "A_2", "A_3", "A_4", "B_2", "B_3", "C_3", "G_2", "D_4", "B_4", "C_4", "F_4"];
    let mut d = RootDatum::torus(0);
    let mut label = Vec::new();
    let pieces = rng.gen_range(1..=2);
    for _ in 0..pieces {
        let t = types.choose(rng).unwrap();
        let ty: SimpleType = t.parse().unwrap();
        if d.rank + ty.rank > 6 {
            continue;
        }
        let sc = rng.gen_bool(0.5);
        d = d.direct_sum(&if sc { RootDatum::simply_connected(ty) } else { RootDatum::adjoint(ty) });
        label.push(format!("{}{}", if sc { "sc " } else { "ad " }, t));
    }
    let torus = rng.gen_range(0..=6 - d.rank);
    d = d.direct_sum(&RootDatum::torus(torus));
    let g = random_unimodular(rng, d.rank, 12);
    let d = d.transform(&g).expect("unimodular");
    (format!("{} + T{torus}", label.join(" + ")), d)
}
