//! Full-rank reduced subsystems of a (possibly non-reduced) irreducible root system,
//! closed under their own reflections.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::rational::{rank, rank_mod_p};
use crate::linalg::{neg_vec, scale_vec, IntVec};
use num_bigint::BigInt;

/// Roots with their reflection table: `reflect[i][j]` is the index of `s_i(root_j)`.
pub struct RootTable {
    pub roots: Vec<IntVec>,
    pub reflect: Vec<Vec<usize>>,
    pub neg: Vec<usize>,
    pub double: Vec<Option<usize>>,
    pub half: Vec<Option<usize>>,
    pub dim: usize,
}

impl RootTable {
    /// `reflect_fn(i, v)` reflects `v` in root `i`; the set must be closed under it.
    pub fn new(roots: Vec<IntVec>, dim: usize, reflect_fn: &dyn Fn(usize, &IntVec) -> IntVec) -> Self {
        let index: HashMap<IntVec, usize> = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let reflect = (0..roots.len()).map(|i| roots.iter().map(|r| index[&reflect_fn(i, r)]).collect()).collect();
        let neg = roots.iter().map(|r| index[&neg_vec(r)]).collect();
        let two = BigInt::from(2);
        let double = roots.iter().map(|r| index.get(&scale_vec(&two, r)).copied()).collect();
        let mut half = vec![None; roots.len()];
        for (i, d) in roots.iter().enumerate() {
            if let Some(j) = index.get(&scale_vec(&two, d)) {
                half[*j] = Some(i);
            }
        }
        RootTable { roots, reflect, neg, double, half, dim }
    }

    pub fn rank_of(&self, subset: &[usize]) -> usize {
        let v: Vec<IntVec> = subset.iter().map(|&i| self.roots[i].clone()).collect();
        rank(&v, self.dim)
    }
}

/// Search state shared across components so the node cap is global.
pub struct Budget {
    pub nodes: u64,
    pub cap: u64,
}

impl Budget {
    pub fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::CapExceeded(format!("search tree exceeded {} nodes", self.cap)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Open,
    In,
    Out,
}

/// All reduced subsets of `table` closed under their own reflections whose span has rank
/// `target`. Each result is a sorted list of indices.
pub fn full_rank_subsystems(table: &RootTable, target: usize, budget: &mut Budget) -> Result<Vec<Vec<usize>>> {
    // One representative per ± pair, in the table's order.
    let pairs: Vec<usize> = (0..table.roots.len()).filter(|&i| i < table.neg[i]).collect();
    let mut state = vec![State::Open; table.roots.len()];
    let mut out = Vec::new();
    rec(table, target, &pairs, 0, &mut state, &mut out, budget)?;
    out.sort();
    Ok(out)
}

fn rec(
    t: &RootTable,
    target: usize,
    pairs: &[usize],
    pos: usize,
    state: &mut Vec<State>,
    out: &mut Vec<Vec<usize>>,
    budget: &mut Budget,
) -> Result<()> {
    budget.tick()?;
    let Some(next) = (pos..pairs.len()).find(|&p| state[pairs[p]] == State::Open) else {
        let chosen: Vec<usize> = (0..t.roots.len()).filter(|&i| state[i] == State::In).collect();
        if t.rank_of(&chosen) == target {
            out.push(chosen);
        }
        return Ok(());
    };
    let root = pairs[next];

    let saved = state.clone();
    if include(t, root, state) {
        rec(t, target, pairs, next + 1, state, out, budget)?;
    }
    *state = saved.clone();

    state[root] = State::Out;
    state[t.neg[root]] = State::Out;
    if reachable_rank(t, state, target) {
        rec(t, target, pairs, next + 1, state, out, budget)?;
    }
    *state = saved;
    Ok(())
}

/// Adds `root` and closes under reflections. False on conflict with an excluded root or
/// with reducedness.
fn include(t: &RootTable, root: usize, state: &mut [State]) -> bool {
    let mut work = vec![root, t.neg[root]];
    let mut members: Vec<usize> = (0..t.roots.len()).filter(|&i| state[i] == State::In).collect();
    while let Some(x) = work.pop() {
        match state[x] {
            State::In => continue,
            State::Out => return false,
            State::Open => {}
        }
        let doubled = t.double[x].is_some_and(|d| state[d] == State::In);
        let halved = t.half[x].is_some_and(|h| state[h] == State::In);
        if doubled || halved {
            return false;
        }
        state[x] = State::In;
        for &y in &members {
            work.push(t.reflect[x][y]);
            work.push(t.reflect[y][x]);
        }
        work.push(t.reflect[x][x]);
        members.push(x);
    }
    true
}

fn reachable_rank(t: &RootTable, state: &[State], target: usize) -> bool {
    let live: Vec<IntVec> =
        (0..t.roots.len()).filter(|&i| state[i] != State::Out).map(|i| t.roots[i].clone()).collect();
    if live.len() < target {
        return false;
    }
    if rank_mod_p(&live, t.dim) >= target {
        return true;
    }
    rank(&live, t.dim) >= target
}
