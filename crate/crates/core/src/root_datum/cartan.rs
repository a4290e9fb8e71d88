use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::based::{base, default_functional};
use super::RootDatum;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A connected Dynkin type such as `A_6` or `E_8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(Error::Invalid(format!("no simple type {family:?}_{rank}")))
        }
    }

    pub fn a(rank: usize) -> Self {
        SimpleType { family: Family::A, rank }
    }

    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }

    /// Order of the automorphism group of the Dynkin diagram.
    pub fn diagram_symmetry_order(&self) -> usize {
        match (self.family, self.rank) {
            (Family::A, n) if n >= 2 => 2,
            (Family::D, 4) => 6,
            (Family::D, _) => 2,
            (Family::E, 6) => 2,
            _ => 1,
        }
    }

    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}_{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::Invalid(format!("unknown type label {s:?}"))),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let rank: usize = rest.parse().map_err(|_| Error::Invalid(format!("bad rank in {s:?}")))?;
        SimpleType::new(family, rank)
    }
}

impl Serialize for SimpleType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Bourbaki-numbered Cartan matrix, `C_ij = <α_i, α_j∨>`.
pub fn cartan_matrix_of_type(ty: SimpleType) -> IntMatrix {
    let n = ty.rank;
    let mut c = IntMatrix::identity(n);
    for i in 0..n {
        c[(i, i)] = BigInt::from(2);
    }
    let link = |c: &mut IntMatrix, i: usize, j: usize, cij: i64, cji: i64| {
        c[(i, j)] = BigInt::from(cij);
        c[(j, i)] = BigInt::from(cji);
    };
    match ty.family {
        Family::A => {
            for i in 0..n.saturating_sub(1) {
                link(&mut c, i, i + 1, -1, -1);
            }
        }
        Family::B | Family::C => {
            for i in 0..n - 2 {
                link(&mut c, i, i + 1, -1, -1);
            }
            // B_n: α_n short, so <α_{n-1}, α_n∨> = -2.
            if ty.family == Family::B {
                link(&mut c, n - 2, n - 1, -2, -1);
            } else {
                link(&mut c, n - 2, n - 1, -1, -2);
            }
        }
        Family::D => {
            for i in 0..n - 2 {
                link(&mut c, i, i + 1, -1, -1);
            }
            link(&mut c, n - 3, n - 1, -1, -1);
        }
        Family::E => {
            link(&mut c, 0, 2, -1, -1);
            link(&mut c, 1, 3, -1, -1);
            for i in 2..n - 1 {
                link(&mut c, i, i + 1, -1, -1);
            }
        }
        Family::F => {
            link(&mut c, 0, 1, -1, -1);
            link(&mut c, 1, 2, -2, -1);
            link(&mut c, 2, 3, -1, -1);
        }
        Family::G => link(&mut c, 0, 1, -1, -3),
    }
    c
}

fn entry(c: &IntMatrix, i: usize, j: usize) -> i64 {
    c[(i, j)].to_i64().unwrap_or(i64::MIN)
}

/// Connected components of the Dynkin diagram, each sorted, ordered by smallest node.
pub fn dynkin_components(cartan: &IntMatrix) -> Vec<Vec<usize>> {
    let n = cartan.rows();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && (!cartan[(i, j)].is_zero() || !cartan[(j, i)].is_zero()) {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Identifies the finite type of a connected Cartan matrix.
pub fn classify_cartan(cartan: &IntMatrix) -> Result<SimpleType> {
    let n = cartan.rows();
    if n == 0 {
        return Err(Error::UnknownDiagram);
    }
    let mut edges = Vec::new();
    for i in 0..n {
        if entry(cartan, i, i) != 2 {
            return Err(Error::UnknownDiagram);
        }
        for j in i + 1..n {
            let (a, b) = (entry(cartan, i, j), entry(cartan, j, i));
            if (a == 0) != (b == 0) || a > 0 || b > 0 {
                return Err(Error::UnknownDiagram);
            }
            if a != 0 {
                let m = a * b;
                if !(1..=3).contains(&m) {
                    return Err(Error::UnknownDiagram);
                }
                edges.push((i, j, m));
            }
        }
    }
    if dynkin_components(cartan).len() != 1 || edges.len() != n - 1 {
        return Err(Error::UnknownDiagram);
    }
    if n == 1 {
        return Ok(SimpleType::a(1));
    }
    let degree = |v: usize| edges.iter().filter(|&&(a, b, _)| a == v || b == v).count();
    let multi: Vec<_> = edges.iter().filter(|e| e.2 > 1).collect();
    let max_degree = (0..n).map(degree).max().unwrap_or(0);

    match multi.as_slice() {
        [] => {
            if max_degree <= 2 {
                return SimpleType::new(Family::A, n);
            }
            let branch: Vec<usize> = (0..n).filter(|&v| degree(v) == 3).collect();
            if branch.len() != 1 || max_degree > 3 {
                return Err(Error::UnknownDiagram);
            }
            let centre = branch[0];
            let mut arms: Vec<usize> = edges
                .iter()
                .filter_map(|&(a, b, _)| match (a == centre, b == centre) {
                    (true, _) => Some(b),
                    (_, true) => Some(a),
                    _ => None,
                })
                .map(|start| arm_length(&edges, centre, start))
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => SimpleType::new(Family::D, n),
                [1, 2, 2] => SimpleType::new(Family::E, 6),
                [1, 2, 3] => SimpleType::new(Family::E, 7),
                [1, 2, 4] => SimpleType::new(Family::E, 8),
                _ => Err(Error::UnknownDiagram),
            }
        }
        [&(i, j, m)] => {
            if max_degree > 2 {
                return Err(Error::UnknownDiagram);
            }
            if m == 3 {
                return if n == 2 { SimpleType::new(Family::G, 2) } else { Err(Error::UnknownDiagram) };
            }
            if n == 2 {
                return SimpleType::new(Family::B, 2);
            }
            let (end, other) = if degree(i) == 1 {
                (i, j)
            } else if degree(j) == 1 {
                (j, i)
            } else {
                return if n == 4 { SimpleType::new(Family::F, 4) } else { Err(Error::UnknownDiagram) };
            };
            // <long, short∨> = -2
            if entry(cartan, other, end) == -2 {
                SimpleType::new(Family::B, n)
            } else {
                SimpleType::new(Family::C, n)
            }
        }
        _ => Err(Error::UnknownDiagram),
    }
}

fn arm_length(edges: &[(usize, usize, i64)], from: usize, start: usize) -> usize {
    let mut prev = from;
    let mut cur = start;
    let mut len = 1;
    loop {
        let next = edges.iter().find_map(|&(a, b, _)| {
            if a == cur && b != prev {
                Some(b)
            } else if b == cur && a != prev {
                Some(a)
            } else {
                None
            }
        });
        match next {
            Some(n) => {
                prev = cur;
                cur = n;
                len += 1;
            }
            None => return len,
        }
    }
}

/// Multiset of simple factors plus the rank of the centre.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SimpleTypeMultiset {
    /// Sorted.
    pub factors: Vec<SimpleType>,
    pub central_rank: usize,
}

impl SimpleTypeMultiset {
    pub fn new(mut factors: Vec<SimpleType>, central_rank: usize) -> Self {
        factors.sort();
        SimpleTypeMultiset { factors, central_rank }
    }

    /// Count `a_n` of factors of type `A_n`.
    pub fn count_a(&self, n: usize) -> usize {
        self.factors.iter().filter(|t| t.family == Family::A && t.rank == n).count()
    }

    pub fn union(&self, other: &SimpleTypeMultiset) -> SimpleTypeMultiset {
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().copied());
        SimpleTypeMultiset::new(f, self.central_rank + other.central_rank)
    }
}

pub fn classify(d: &RootDatum) -> Result<SimpleTypeMultiset> {
    let central = d.central_rank();
    if d.roots.is_empty() {
        return Ok(SimpleTypeMultiset::new(Vec::new(), central));
    }
    let f = default_functional(d);
    let based = base(d, &f).map_err(|_| Error::Invalid("no generic functional".into()))?;
    let cartan = based.cartan_matrix();
    let mut factors = Vec::new();
    let mut expected_roots = 0;
    for comp in dynkin_components(&cartan) {
        let sub = IntMatrix::from_rows(
            &comp.iter().map(|&i| comp.iter().map(|&j| cartan[(i, j)].clone()).collect()).collect::<Vec<_>>(),
            comp.len(),
        );
        let ty = classify_cartan(&sub)?;
        expected_roots += ty.root_count();
        factors.push(ty);
    }
    if expected_roots != d.roots.len() {
        return Err(Error::UnknownDiagram);
    }
    Ok(SimpleTypeMultiset::new(factors, central))
}

/// Every factor is `A_n` with `n ∉ {1,2,3,5,7,8}`, and at most one factor is `A_4`.
pub fn hypothesis_a(t: &SimpleTypeMultiset) -> bool {
    let excluded = [1, 2, 3, 5, 7, 8];
    t.factors.iter().all(|f| f.family == Family::A && !excluded.contains(&f.rank)) && t.count_a(4) <= 1
}
