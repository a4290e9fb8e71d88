#![allow(dead_code)]

pub mod corpus;
pub mod oracle;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rootdata::linalg::{IntMatrix, IntVec};

pub fn small(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("small entry")).collect()
}

pub fn big(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Product of random elementary matrices and sign flips; always unimodular.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> IntMatrix {
    let mut g = IntMatrix::identity(n);
    if n == 0 {
        return g;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            if rng.gen_bool(0.3) {
                for c in 0..n {
                    g[(i, c)] = -g[(i, c)].clone();
                }
            }
            continue;
        }
        let t = BigInt::from(rng.gen_range(-1i64..=1));
        for c in 0..n {
            let add = &t * &g[(j, c)];
            g[(i, c)] += add;
        }
    }
    g
}

/// Sorted `(root, coroot)` pairs, the comparison key for candidates.
pub type Key = Vec<(Vec<i64>, Vec<i64>)>;

pub fn key_of(roots: &[IntVec], coroots: &[IntVec]) -> Key {
    let mut k: Key = roots.iter().zip(coroots).map(|(r, c)| (small(r), small(c))).collect();
    k.sort();
    k
}

/// Standard weights of `GL_n` with restriction to the derived torus of a block-diagonal
/// product of `SL_{n_i}`.
pub fn block_sl(blocks: &[usize]) -> rootdata::formal_character::FormalBiCharacter {
    use rootdata::formal_character::{FormalBiCharacter, FormalCharacter};
    let n: usize = blocks.iter().sum();
    let s: usize = blocks.iter().map(|b| b - 1).sum();
    let mut r = IntMatrix::zeros(s, n);
    let (mut row, mut start) = (0, 0);
    for &b in blocks {
        for i in start..start + b - 1 {
            r[(row, i)] = BigInt::from(1);
            r[(row, i + 1)] = BigInt::from(-1);
            row += 1;
        }
        start += b;
    }
    let f = FormalCharacter::new(n, IntMatrix::identity(n).row_vecs()).unwrap();
    FormalBiCharacter::new(f, r).unwrap()
}
