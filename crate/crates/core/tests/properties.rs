mod support;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rootdata::finite_lie::{lie_multiset_of_points, total_rank, FiniteLieFactor, LieMultiset};
use rootdata::formal_character::{
    average_form, averaged_inner_product, canonicalize, symmetry_group, FormalCharacter, GramForm,
};
use rootdata::frobenius::{frobenius_torus_rank, relation_lattices, MonomialEigenvalueSystem};
use rootdata::galois_forms::{
    is_prime, quasi_split_descriptor, AbelianGaloisDescriptor, GaloisFormDescriptor, OuterGaloisAction,
};
use rootdata::linalg::rational::{rank, Rat, RatMatrix};
use rootdata::linalg::{kernel_basis, kernel_vectors, smith_normal_form, IntMatrix, IntVec};
use rootdata::reconstruction::{
    check_uniqueness_under_hypothesis_a, enumerate_root_data, enumerate_with_form, Caps, FormSource, HypothesisVerdict,
};
use rootdata::root_datum::{base, default_functional, iso_root_data, out_group, RootDatum, SimpleType};
use rootdata::Error;
use support::corpus::{corpus, random_datum, Sample};
use support::oracle::brute_force_with_form;
use support::{big, key_of, random_unimodular, Key};

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> IntMatrix {
    IntMatrix::from_vec(rows, cols, entries.iter().take(rows * cols).map(|&x| BigInt::from(x)).collect())
}

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=5)
        .prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-9i64..=9, r * c)))
        .prop_map(|(r, c, e)| matrix(r, c, &e))
}

fn shared_corpus() -> &'static [Sample] {
    static CORPUS: OnceLock<Vec<Sample>> = OnceLock::new();
    CORPUS.get_or_init(|| corpus(314, 40))
}

fn keys(report: &rootdata::reconstruction::CandidateReport) -> Vec<Key> {
    let mut k: Vec<Key> = report.candidates.iter().map(|c| key_of(&c.datum.roots, &c.datum.coroots)).collect();
    k.sort();
    k
}

/// A random positive definite integer matrix `AᵀA + I`.
fn positive_definite(n: usize, entries: &[i64]) -> RatMatrix {
    let a = matrix(n, n, entries);
    let mut p = a.transpose().mul(&a);
    for i in 0..n {
        p[(i, i)] += BigInt::one();
    }
    RatMatrix::from_int(&p)
}

fn to_oracle_form(g: &RatMatrix) -> Vec<Vec<Rat>> {
    g.rows.clone()
}

fn a2a2_swap() -> GaloisFormDescriptor {
    let d = RootDatum::simply_connected(SimpleType::a(2)).direct_sum(&RootDatum::simply_connected(SimpleType::a(2)));
    let b = base(&d, &default_functional(&d)).unwrap();
    let swap = out_group(&b)
        .unwrap()
        .into_iter()
        .find(|g| {
            let p = b.induced_permutation(g).unwrap();
            p[0] >= 2 && g.mul(g).is_identity()
        })
        .unwrap();
    let a = OuterGaloisAction::new(b, AbelianGaloisDescriptor::new(8, &[1, 7]).unwrap(), &[(3, swap)]).unwrap();
    quasi_split_descriptor(&a).unwrap()
}

fn a6_quadratic() -> GaloisFormDescriptor {
    let d = RootDatum::adjoint(SimpleType::a(6));
    let b = base(&d, &default_functional(&d)).unwrap();
    let flip = out_group(&b).unwrap().into_iter().find(|g| !g.is_identity()).unwrap();
    let a = OuterGaloisAction::new(b, AbelianGaloisDescriptor::new(5, &[1, 4]).unwrap(), &[(2, flip)]).unwrap();
    quasi_split_descriptor(&a).unwrap()
}

fn next_prime(mut n: u64, step: u64) -> u64 {
    while !is_prime(n) {
        n += step;
    }
    n
}

fn shape(m: &LieMultiset) -> Vec<(SimpleType, usize, usize)> {
    m.factors.iter().map(|f| (f.ty, f.d, f.f)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalisation(m in small_matrix()) {
        let s = smith_normal_form(&m);
        let d = s.left.mul(&m).mul(&s.right);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let expected = if i == j { s.diagonal[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(&d[(i, j)], &expected);
            }
        }
        prop_assert!(s.left.determinant().abs().is_one());
        prop_assert!(s.right.determinant().abs().is_one());
        for w in s.diagonal.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn kernel_satisfies_rank_nullity(m in small_matrix()) {
        let ker = kernel_vectors(&m);
        for v in &ker {
            prop_assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
        prop_assert_eq!(ker.len() + rank(&m.row_vecs(), m.cols()), m.cols());
        prop_assert!(kernel_basis(&m).is_saturated());
    }

    #[test]
    fn canonicalize_is_idempotent(r in 1usize..=3, raw in prop::collection::vec(-3i64..=3, 3 * 6), k in 1usize..=6) {
        let weights: Vec<_> = raw.chunks(3).take(k).map(|c| big(&c[..r])).collect();
        let f = FormalCharacter::new(r, weights).unwrap();
        if let Ok(c) = canonicalize(&f) {
            prop_assert!(c.is_canonical());
            prop_assert_eq!(canonicalize(&c).unwrap(), c);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn root_data_survive_recoordinatisation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (label, d) = random_datum(&mut rng);
        prop_assert!(d.validate().is_valid(), "{}", label);
        prop_assert_eq!(d.dual().dual(), d.clone());
        prop_assert!(d.dual().validate().is_valid());
        let g = random_unimodular(&mut rng, d.rank, 10);
        let e = d.transform(&g).unwrap();
        prop_assert!(e.validate().is_valid());
        if d.central_rank() > 1 {
            prop_assert!(matches!(iso_root_data(&d, &e), Err(Error::Unsupported(_))));
            return Ok(());
        }
        let iso = iso_root_data(&d, &e).unwrap();
        prop_assert!(iso.is_some(), "{}", label);
        prop_assert!(iso_root_data(&e, &d).unwrap().is_some());
    }

    #[test]
    fn averaged_form_is_invariant(r in 1usize..=3, raw in prop::collection::vec(-2i64..=2, 3 * 6), k in 2usize..=6) {
        let weights: Vec<_> = raw.chunks(3).take(k).map(|c| big(&c[..r])).collect();
        let Ok(f) = canonicalize(&FormalCharacter::new(r, weights).unwrap()) else { return Ok(()); };
        let group = symmetry_group(&f, 5040).unwrap();
        let form = averaged_inner_product(&f, 5040).unwrap();
        for g in &group {
            prop_assert!(form.is_invariant_under(g));
        }
    }

    #[test]
    fn frobenius_rank_ignores_order_and_powers(
        exps in prop::collection::vec(prop::collection::vec(-4i64..=4, 2), 1..=5),
        tors in prop::collection::vec(0i64..6, 5),
        shift in 0usize..5,
        c in prop_oneof![-3i64..=-1, 1i64..=3],
    ) {
        let evs: Vec<(&[i64], i64)> = exps.iter().zip(&tors).map(|(e, &t)| (e.as_slice(), t)).collect();
        let sys = MonomialEigenvalueSystem::from_i64(&[2, 3], 6, &evs).unwrap();
        let mut rotated = evs.clone();
        rotated.rotate_left(shift % evs.len());
        let rot = MonomialEigenvalueSystem::from_i64(&[2, 3], 6, &rotated).unwrap();
        let n = frobenius_torus_rank(&sys);
        prop_assert_eq!(frobenius_torus_rank(&rot), n);
        prop_assert_eq!(frobenius_torus_rank(&sys.power(c)), n);
        prop_assert_eq!(relation_lattices(&sys.power(c)).torsion, relation_lattices(&sys).torsion);
        prop_assert!(relation_lattices(&sys).torsion.contains_lattice(&relation_lattices(&sys).exact));
    }

    #[test]
    fn local_forms_depend_on_the_residue_class(start in 7u64..9000, step in 1u64..40) {
        for (desc, m) in [(a6_quadratic(), 5u64), (a2a2_swap(), 8)] {
            let ell = next_prime(start, 1);
            let other = next_prime(ell + m * step, m);
            let a = lie_multiset_of_points(&desc, ell).unwrap();
            let b = lie_multiset_of_points(&desc, other).unwrap();
            prop_assert_eq!(shape(&a), shape(&b), "{} vs {}", ell, other);
        }
    }

    #[test]
    fn total_rank_is_additive(
        a in prop::collection::vec((1usize..=8, 1usize..=3), 0..=4),
        b in prop::collection::vec((1usize..=8, 1usize..=3), 0..=4),
        ell in prop::sample::select(vec![5u64, 7, 11, 13, 9973]),
    ) {
        let build = |v: &[(usize, usize)]| LieMultiset::new(v.iter().map(|&(n, f)| FiniteLieFactor::chevalley(SimpleType::a(n), f, ell)).collect());
        let (x, y) = (build(&a), build(&b));
        prop_assert_eq!(total_rank(&x.union(&y)).unwrap(), total_rank(&x).unwrap() + total_rank(&y).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn candidates_do_not_depend_on_the_invariant_form(index in 0usize..40, entries in prop::collection::vec(-2i64..=2, 16)) {
        let sample = &shared_corpus()[index];
        let b = &sample.bicharacter;
        let r = b.character.rank;
        let default = enumerate_root_data(b, &Caps::default()).unwrap();
        let group = symmetry_group(&b.character, 5040).unwrap();
        let g = average_form(&group, &positive_definite(r, &entries));
        let other = enumerate_with_form(b, GramForm::new(g.clone()).unwrap(), FormSource::Supplied, &Caps::default()).unwrap();
        prop_assert_eq!(keys(&default), keys(&other), "{}", sample.label);
        prop_assert_eq!(brute_force_with_form(b, &to_oracle_form(&g)), keys(&other), "{}", sample.label);
    }
}

#[test]
fn every_candidate_is_a_valid_root_datum() {
    for s in shared_corpus() {
        let report = enumerate_root_data(&s.bicharacter, &Caps::default()).unwrap();
        for c in &report.candidates {
            assert!(c.datum.validate().is_valid(), "{}", s.label);
        }
    }
}

#[test]
fn hypothesis_a_candidates_share_their_factors() {
    let factor_sets = |c: &rootdata::reconstruction::EmbeddedRootDatum| {
        let mut f: Vec<Vec<IntVec>> = c
            .factors
            .iter()
            .map(|idx| {
                let mut roots: Vec<IntVec> = idx.iter().map(|&i| c.datum.roots[i].clone()).collect();
                roots.sort();
                roots
            })
            .collect();
        f.sort();
        f
    };
    let mut with_a = 0;
    for s in shared_corpus() {
        let report = enumerate_root_data(&s.bicharacter, &Caps::default()).unwrap();
        assert_ne!(check_uniqueness_under_hypothesis_a(&report), HypothesisVerdict::Violation, "{}", s.label);
        let good: Vec<_> = report.candidates.iter().filter(|c| c.hypothesis_a()).collect();
        with_a += usize::from(!good.is_empty());
        for pair in good.windows(2) {
            assert_eq!(factor_sets(pair[0]), factor_sets(pair[1]), "{}", s.label);
        }
    }
    assert!(with_a > 0, "corpus never satisfies hypothesis A");
}
