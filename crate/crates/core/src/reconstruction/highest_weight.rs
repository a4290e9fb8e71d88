//! Irreducible characters by Freudenthal's recursion and highest-weight stripping of a
//! weight multiset.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::formal_character::GramForm;
use crate::linalg::rational::{rat_vec, Rat, RatVec};
use crate::linalg::{dot, IntVec};
use crate::root_datum::{base, default_functional, RootDatum};

/// Positive system, simple roots and the data Freudenthal's formula needs.
pub struct WeylData<'a> {
    form: &'a GramForm,
    simple: Vec<IntVec>,
    simple_coroots: Vec<IntVec>,
    positive: Vec<(IntVec, IntVec)>,
    functional: IntVec,
    rho: RatVec,
}

impl<'a> WeylData<'a> {
    pub fn new(d: &RootDatum, form: &'a GramForm) -> Self {
        let functional = default_functional(d);
        let b = base(d, &functional).expect("default functional is generic");
        let positive: Vec<(IntVec, IntVec)> = d
            .roots
            .iter()
            .zip(&d.coroots)
            .filter(|(r, _)| dot(r, &functional).is_positive())
            .map(|(r, c)| (r.clone(), c.clone()))
            .collect();
        let mut rho = vec![Rat::zero(); d.rank];
        for (r, _) in &positive {
            for (x, y) in rho.iter_mut().zip(r) {
                *x += Rat::new(y.clone(), BigInt::from(2));
            }
        }
        WeylData { form, simple: b.simple_roots(), simple_coroots: b.simple_coroots(), positive, functional, rho }
    }

    pub fn height(&self, x: &[BigInt]) -> BigInt {
        dot(x, &self.functional)
    }

    pub fn is_dominant(&self, x: &[BigInt]) -> bool {
        self.simple_coroots.iter().all(|c| !dot(x, c).is_negative())
    }

    pub fn dominant_conjugate(&self, x: &[BigInt]) -> IntVec {
        let mut v = x.to_vec();
        loop {
            let Some(i) = self.simple_coroots.iter().position(|c| dot(&v, c).is_negative()) else {
                return v;
            };
            let n = dot(&v, &self.simple_coroots[i]);
            for (a, b) in v.iter_mut().zip(&self.simple[i]) {
                *a -= &n * b;
            }
        }
    }

    /// The W-orbit of `x`, or None as soon as an element fails `allowed`.
    pub fn orbit(&self, x: &[BigInt], allowed: &dyn Fn(&IntVec) -> bool) -> Option<Vec<IntVec>> {
        let mut seen: HashSet<IntVec> = HashSet::new();
        let mut queue = VecDeque::new();
        if !allowed(&x.to_vec()) {
            return None;
        }
        seen.insert(x.to_vec());
        queue.push_back(x.to_vec());
        while let Some(v) = queue.pop_front() {
            for (a, c) in self.simple.iter().zip(&self.simple_coroots) {
                let n = dot(&v, c);
                if n.is_zero() {
                    continue;
                }
                let w: IntVec = v.iter().zip(a).map(|(p, q)| p - &n * q).collect();
                if !seen.contains(&w) {
                    if !allowed(&w) {
                        return None;
                    }
                    seen.insert(w.clone());
                    queue.push_back(w);
                }
            }
        }
        let mut out: Vec<IntVec> = seen.into_iter().collect();
        out.sort();
        Some(out)
    }

    fn norm_shifted(&self, x: &[BigInt]) -> Rat {
        let v: RatVec = rat_vec(x).iter().zip(&self.rho).map(|(a, b)| a + b).collect();
        self.form.pair(&v, &v)
    }

    /// Dominant weights of the irreducible module of highest weight `lambda` with their
    /// multiplicities. Returns None when some dominant weight fails `allowed`.
    pub fn dominant_character(
        &self,
        lambda: &[BigInt],
        allowed: &dyn Fn(&IntVec) -> bool,
    ) -> Option<Vec<(IntVec, BigInt)>> {
        let mut dominant: HashSet<IntVec> = HashSet::new();
        let mut queue = VecDeque::new();
        dominant.insert(lambda.to_vec());
        queue.push_back(lambda.to_vec());
        while let Some(mu) = queue.pop_front() {
            for (alpha, coroot) in &self.positive {
                let n = dot(&mu, coroot);
                let mut step = mu.clone();
                let mut k = BigInt::zero();
                while k < n {
                    k += 1;
                    for (a, b) in step.iter_mut().zip(alpha) {
                        *a -= b;
                    }
                    let d = self.dominant_conjugate(&step);
                    if !dominant.contains(&d) {
                        if !allowed(&d) {
                            return None;
                        }
                        dominant.insert(d.clone());
                        queue.push_back(d);
                    }
                }
            }
        }
        let mut order: Vec<IntVec> = dominant.into_iter().collect();
        order.sort_by(|a, b| self.height(b).cmp(&self.height(a)).then(a.cmp(b)));

        let top = self.norm_shifted(lambda);
        let mut mult: HashMap<IntVec, BigInt> = HashMap::new();
        for mu in &order {
            if mu.as_slice() == lambda {
                mult.insert(mu.clone(), BigInt::from(1));
                continue;
            }
            let mut sum = Rat::zero();
            for (alpha, _) in &self.positive {
                let mut nu: IntVec = mu.clone();
                loop {
                    for (a, b) in nu.iter_mut().zip(alpha) {
                        *a += b;
                    }
                    let Some(m) = mult.get(&self.dominant_conjugate(&nu)) else {
                        break;
                    };
                    sum += Rat::from_integer(m.clone()) * self.form.pair_int(&nu, alpha);
                }
            }
            let denom = &top - self.norm_shifted(mu);
            let m = Rat::from_integer(BigInt::from(2)) * sum / denom;
            debug_assert!(m.is_integer());
            mult.insert(mu.clone(), m.to_integer());
        }
        Some(
            order
                .into_iter()
                .map(|mu| {
                    let m = mult[&mu].clone();
                    (mu, m)
                })
                .collect(),
        )
    }
}

/// Highest weights (with multiplicity) of irreducible characters summing to the weight
/// multiset, or None if no such decomposition exists.
pub fn decompose(weights: &[IntVec], d: &RootDatum, form: &GramForm) -> Option<Vec<(IntVec, usize)>> {
    let wd = WeylData::new(d, form);
    let mut remaining: BTreeMap<IntVec, BigInt> = BTreeMap::new();
    for w in weights {
        *remaining.entry(w.clone()).or_default() += 1;
    }
    let mut out: BTreeMap<IntVec, usize> = BTreeMap::new();
    while !remaining.is_empty() {
        let best_height = remaining.keys().map(|w| wd.height(w)).max().expect("nonempty");
        let lambda = remaining.keys().find(|w| wd.height(w) == best_height).expect("maximum attained").clone();
        if !wd.is_dominant(&lambda) {
            return None;
        }
        let present = |v: &IntVec| remaining.contains_key(v);
        let chars = wd.dominant_character(&lambda, &present)?;
        let mut subtract: Vec<(IntVec, BigInt)> = Vec::new();
        for (mu, m) in chars {
            for v in wd.orbit(&mu, &present)? {
                subtract.push((v, m.clone()));
            }
        }
        for (v, m) in subtract {
            let entry = remaining.get_mut(&v)?;
            *entry -= m;
            if entry.is_negative() {
                return None;
            }
            if entry.is_zero() {
                remaining.remove(&v);
            }
        }
        *out.entry(lambda).or_default() += 1;
    }
    Some(out.into_iter().collect())
}
