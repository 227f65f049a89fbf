//! Maximisers of `<v, g(M)>` over the feasible assignments.
//!
//! The objective is separable and each term `v_k g(m)` is concave in `m` up to
//! `cap(p)`, so placing players one at a time on the arm with the largest
//! marginal gain is optimal. Forcing a support set first and continuing
//! greedily stays optimal over the assignments containing that support.
//! [`brute_force`] enumerates every assignment and is used as an oracle.

use crate::error::{Error, Result};
use crate::model::{cap, marginal_gain, value_unchecked, Assignment, ConstraintSpec};

/// Enumeration limit for [`brute_force`].
pub const BRUTE_FORCE_LIMIT: u128 = 10_000_000;

/// One maximisation problem.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveRequest {
    /// Per-arm weights (true or estimated means).
    pub values: Vec<f64>,
    /// Player budget `M`.
    pub players: usize,
    pub p: f64,
    pub constraint: ConstraintSpec,
}

impl SolveRequest {
    pub fn new(values: Vec<f64>, players: usize, p: f64, constraint: ConstraintSpec) -> Self {
        Self {
            values,
            players,
            p,
            constraint,
        }
    }

    pub fn unconstrained(values: Vec<f64>, players: usize, p: f64) -> Self {
        Self::new(values, players, p, ConstraintSpec::Unconstrained)
    }

    pub fn arms(&self) -> usize {
        self.values.len()
    }

    /// Objective value of `assignment` under this request's weights.
    pub fn value(&self, assignment: &Assignment) -> f64 {
        value_unchecked(&self.values, assignment.counts(), self.p)
    }

    fn validate(&self) -> Result<usize> {
        let arms = self.arms();
        if arms == 0 {
            return Err(Error::InvalidInstance("no arms".into()));
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(Error::InvalidInstance(format!(
                "p = {} not in (0, 1)",
                self.p
            )));
        }
        if let Some(v) = self.values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidInstance(format!(
                "value {v} is not a finite nonnegative real"
            )));
        }
        let per_arm = cap(self.p);
        if self.players > arms * per_arm {
            return Err(Error::Infeasible(format!(
                "budget {} exceeds K * cap = {arms} * {per_arm}",
                self.players
            )));
        }
        match &self.constraint {
            ConstraintSpec::Unconstrained => {}
            ConstraintSpec::ForcedSupport(forced) => {
                if let Some(&k) = forced.iter().find(|&&k| k >= arms) {
                    return Err(Error::Infeasible(format!("forced arm {k} out of range")));
                }
                if forced.len() > self.players {
                    return Err(Error::Infeasible(format!(
                        "{} forced arms but only {} players",
                        forced.len(),
                        self.players
                    )));
                }
                if per_arm == 0 && !forced.is_empty() {
                    return Err(Error::Infeasible("cap(p) = 0".into()));
                }
            }
            ConstraintSpec::MaxZeroArms(nu) => {
                if *nu > arms {
                    return Err(Error::Infeasible(format!("nu = {nu} exceeds K = {arms}")));
                }
                if arms - nu > self.players {
                    return Err(Error::Infeasible(format!(
                        "{} arms must be covered but only {} players",
                        arms - nu,
                        self.players
                    )));
                }
            }
        }
        Ok(per_arm)
    }
}

/// Solves `req` with the exact method for its constraint kind.
pub fn solve(req: &SolveRequest) -> Result<Assignment> {
    match &req.constraint {
        ConstraintSpec::Unconstrained => solve_sequential(req),
        ConstraintSpec::ForcedSupport(_) => solve_forced_support(req),
        ConstraintSpec::MaxZeroArms(_) => solve_max_zero_arms(req),
    }
}

/// Places players one at a time on the arm with the largest marginal gain.
///
/// Ties go to the lowest arm index. Arms at `cap(p)` are skipped even when all
/// remaining gains are zero, so the full budget is always placed.
pub fn solve_sequential(req: &SolveRequest) -> Result<Assignment> {
    let per_arm = req.validate()?;
    let mut counts = Assignment::zeros(req.arms());
    greedy_fill(
        &req.values,
        req.p,
        per_arm,
        &mut counts,
        req.players,
        |_| {},
    )?;
    Ok(counts)
}

/// One player on every forced arm, then the sequential loop for the rest.
///
/// An `Unconstrained` request is treated as an empty forced set.
pub fn solve_forced_support(req: &SolveRequest) -> Result<Assignment> {
    let per_arm = req.validate()?;
    let forced: &[usize] = match &req.constraint {
        ConstraintSpec::ForcedSupport(arms) => arms,
        ConstraintSpec::Unconstrained => &[],
        ConstraintSpec::MaxZeroArms(_) => {
            return Err(Error::Infeasible(
                "expected a forced-support constraint".into(),
            ))
        }
    };
    forced_fill(&req.values, req.players, req.p, per_arm, forced)
}

fn forced_fill(
    values: &[f64],
    players: usize,
    p: f64,
    per_arm: usize,
    forced: &[usize],
) -> Result<Assignment> {
    let mut counts = Assignment::zeros(values.len());
    let mut placed = 0;
    for &k in forced {
        if counts[k] == 0 {
            counts.add_player(k);
            placed += 1;
        }
    }
    greedy_fill(values, p, per_arm, &mut counts, players - placed, |_| {})?;
    Ok(counts)
}

/// Best assignment leaving at most `nu` arms empty.
///
/// Enumerates every zero-set of size `nu`, solves the forced-support problem
/// on its complement and keeps the best; ties go to the lexicographically
/// smallest zero-set.
pub fn solve_max_zero_arms(req: &SolveRequest) -> Result<Assignment> {
    let per_arm = req.validate()?;
    let ConstraintSpec::MaxZeroArms(nu) = req.constraint else {
        return Err(Error::Infeasible(
            "expected a max-zero-arms constraint".into(),
        ));
    };
    let arms = req.arms();
    if nu >= arms {
        let mut counts = Assignment::zeros(arms);
        greedy_fill(
            &req.values,
            req.p,
            per_arm,
            &mut counts,
            req.players,
            |_| {},
        )?;
        return Ok(counts);
    }
    let mut best: Option<(f64, Assignment)> = None;
    for zero_set in Combinations::new(arms, nu) {
        let forced: Vec<usize> = (0..arms).filter(|k| !zero_set.contains(k)).collect();
        let candidate = forced_fill(&req.values, req.players, req.p, per_arm, &forced)?;
        let value = req.value(&candidate);
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            best = Some((value, candidate));
        }
    }
    Ok(best.map(|(_, a)| a).expect("at least one zero-set"))
}

/// Selected marginal gains of the sequential loop, in placement order.
pub fn sequential_trace(req: &SolveRequest) -> Result<(Assignment, Vec<f64>)> {
    let per_arm = req.validate()?;
    let mut counts = Assignment::zeros(req.arms());
    let mut gains = Vec::with_capacity(req.players);
    greedy_fill(
        &req.values,
        req.p,
        per_arm,
        &mut counts,
        req.players,
        |gain| gains.push(gain),
    )?;
    Ok((counts, gains))
}

fn greedy_fill(
    values: &[f64],
    p: f64,
    per_arm: usize,
    counts: &mut Assignment,
    remaining: usize,
    mut on_pick: impl FnMut(f64),
) -> Result<()> {
    for _ in 0..remaining {
        let mut best: Option<(usize, f64)> = None;
        for (k, &v) in values.iter().enumerate() {
            let m = counts[k];
            if m >= per_arm {
                continue;
            }
            let gain = v * marginal_gain(m, p);
            if best.is_none_or(|(_, b)| gain > b) {
                best = Some((k, gain));
            }
        }
        let (k, gain) = best.ok_or_else(|| Error::Infeasible("every arm is at cap".into()))?;
        counts.add_player(k);
        on_pick(gain);
    }
    Ok(())
}

/// Number of compositions of `players` into `arms` parts, each at most `per_arm`.
pub fn count_assignments(arms: usize, players: usize, per_arm: usize) -> u128 {
    let mut ways = vec![0u128; players + 1];
    ways[0] = 1;
    for _ in 0..arms {
        let mut next = vec![0u128; players + 1];
        for (total, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for m in 0..=per_arm.min(players - total) {
                next[total + m] = next[total + m].saturating_add(w);
            }
        }
        ways = next;
    }
    ways[players]
}

/// Calls `visit` on every feasible assignment in lexicographic order.
pub fn for_each_assignment(
    arms: usize,
    players: usize,
    per_arm: usize,
    mut visit: impl FnMut(&Assignment),
) {
    fn rec(
        k: usize,
        left: usize,
        per_arm: usize,
        counts: &mut Vec<usize>,
        visit: &mut dyn FnMut(&Assignment),
    ) {
        let arms = counts.len();
        if k + 1 == arms {
            if left <= per_arm {
                counts[k] = left;
                let a = Assignment::new(counts.clone());
                visit(&a);
            }
            return;
        }
        let rest_cap = per_arm * (arms - k - 1);
        let lo = left.saturating_sub(rest_cap);
        for m in lo..=per_arm.min(left) {
            counts[k] = m;
            rec(k + 1, left - m, per_arm, counts, visit);
        }
    }
    if arms == 0 {
        return;
    }
    let mut counts = vec![0; arms];
    rec(0, players, per_arm, &mut counts, &mut visit);
}

/// Exhaustive maximiser; the lexicographically smallest maximiser wins ties.
pub fn brute_force(req: &SolveRequest) -> Result<Assignment> {
    let per_arm = req.validate()?;
    let count = count_assignments(req.arms(), req.players, per_arm);
    if count > BRUTE_FORCE_LIMIT {
        return Err(Error::EnumerationTooLarge {
            count,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut best: Option<(f64, Assignment)> = None;
    for_each_assignment(req.arms(), req.players, per_arm, |a| {
        if !req.constraint.admits(a) {
            return;
        }
        let value = req.value(a);
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            best = Some((value, a.clone()));
        }
    });
    best.map(|(_, a)| a)
        .ok_or_else(|| Error::Infeasible("no assignment satisfies the constraint".into()))
}

/// `k`-subsets of `0..n` in lexicographic order.
pub(crate) struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}
