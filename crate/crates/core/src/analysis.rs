//! Instance-dependent quantities governing the regret of Cautious Greedy.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::{g, Assignment, ConstraintSpec, InstanceConfig};
use crate::solver::{
    brute_force, count_assignments, for_each_assignment, solve_max_zero_arms, solve_sequential,
    SolveRequest, BRUTE_FORCE_LIMIT,
};

/// Default bisection tolerance of [`compute_r`].
pub const R_TOLERANCE: f64 = 1e-6;

/// Which constraint levels `nu` enter the minimum defining `r`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RRange {
    /// `nu` in `{0, ..., nu*}`; defined for every instance.
    #[default]
    ZeroToNuStar,
    /// `nu` in `{1, ..., nu*}`; empty (and `r` infinite) when `nu* = 0`.
    OneToNuStar,
}

/// Diagnostics for a known instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceDiagnostics {
    pub optimal: Assignment,
    pub nu_star: usize,
    /// `mu_(nu*+1) - mu_(j)` for `j = 1..=nu*`.
    pub gaps: Vec<f64>,
    /// Value lost by the best assignment emptying only `nu* - 1` arms;
    /// infinite (serialized as `null`) when `nu* = 0`.
    #[serde(serialize_with = "finite_or_null")]
    pub delta_super: f64,
    #[serde(serialize_with = "finite_or_null")]
    pub r: f64,
    pub elimination_condition: bool,
}

fn finite_or_null<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_none()
    }
}

/// The optimal assignment on the true means: exhaustive search when the
/// enumeration is tractable (cross-checked against the sequential solver),
/// otherwise the sequential solver alone.
pub fn optimal_assignment(config: &InstanceConfig) -> Result<Assignment> {
    let req = true_request(config, ConstraintSpec::Unconstrained);
    let greedy = solve_sequential(&req)?;
    match brute_force(&req) {
        Ok(exact) => {
            if req.value(&exact) != req.value(&greedy) {
                return Err(Error::Infeasible(format!(
                    "sequential solver returned {greedy}, exhaustive search {exact}"
                )));
            }
            Ok(exact)
        }
        Err(Error::EnumerationTooLarge { .. }) => Ok(greedy),
        Err(e) => Err(e),
    }
}

fn true_request(config: &InstanceConfig, constraint: ConstraintSpec) -> SolveRequest {
    SolveRequest::new(
        config.means().to_vec(),
        config.players(),
        config.p(),
        constraint,
    )
}

/// Arms sorted by increasing mean, ties by index.
pub fn arms_by_mean(means: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..means.len()).collect();
    order.sort_by(|&a, &b| means[a].total_cmp(&means[b]).then(a.cmp(&b)));
    order
}

/// Number of arms the optimal assignment leaves empty.
pub fn compute_nu_star(config: &InstanceConfig) -> Result<usize> {
    Ok(optimal_assignment(config)?.zero_arms())
}

/// Gaps `mu_(nu*+1) - mu_(j)` and the value gap to the best assignment
/// emptying at most `nu* - 1` arms.
pub fn compute_gaps(config: &InstanceConfig, nu_star: usize) -> Result<(Vec<f64>, f64)> {
    let means = config.means();
    if nu_star >= config.arms() {
        return Err(Error::Infeasible(format!(
            "nu* = {nu_star} must be below K = {}",
            config.arms()
        )));
    }
    let order = arms_by_mean(means);
    let pivot = means[order[nu_star]];
    let gaps = order[..nu_star].iter().map(|&k| pivot - means[k]).collect();
    if nu_star == 0 {
        return Ok((gaps, f64::INFINITY));
    }
    let optimal = optimal_assignment(config)?;
    let constrained = solve_max_zero_arms(&true_request(
        config,
        ConstraintSpec::MaxZeroArms(nu_star - 1),
    ))?;
    let p = config.p();
    let delta = means
        .iter()
        .zip(optimal.counts().iter().zip(constrained.counts()))
        .map(|(&mu, (&a, &b))| mu * (g(a, p) - g(b, p)))
        .sum();
    Ok((gaps, delta))
}

/// Smallest sup-norm perturbation `eps` (keeping the means in `[0, 1]`) that
/// makes `alternative` at least as good as `incumbent`, or `None` when no
/// admissible perturbation does.
///
/// The best perturbation moves each coordinate by `eps` towards the sign of
/// `g(alternative) - g(incumbent)`, truncated at the box.
pub fn flip_radius(
    means: &[f64],
    incumbent: &Assignment,
    alternative: &Assignment,
    p: f64,
    tolerance: f64,
) -> Option<f64> {
    let diff: Vec<f64> = alternative
        .counts()
        .iter()
        .zip(incumbent.counts())
        .map(|(&a, &b)| g(a, p) - g(b, p))
        .collect();
    // room[k]: how far coordinate k can move in the helpful direction
    let room: Vec<f64> = diff
        .iter()
        .zip(means)
        .map(|(&d, &mu)| if d > 0.0 { 1.0 - mu } else { mu })
        .collect();
    let base: f64 = means.iter().zip(&diff).map(|(&mu, &d)| mu * d).sum();
    if base >= 0.0 {
        return Some(0.0);
    }
    let advantage = |eps: f64| -> f64 {
        base + diff
            .iter()
            .zip(&room)
            .map(|(&d, &r)| d.abs() * eps.min(r))
            .sum::<f64>()
    };
    let l1: f64 = diff.iter().map(|d| d.abs()).sum();
    if l1 == 0.0 {
        return None;
    }
    let closed = -base / l1;
    let min_room = diff
        .iter()
        .zip(&room)
        .filter(|(d, _)| **d != 0.0)
        .map(|(_, &r)| r)
        .fold(f64::INFINITY, f64::min);
    if closed <= min_room {
        return Some(closed);
    }
    let max_room = room.iter().cloned().fold(0.0, f64::max);
    if advantage(max_room) < 0.0 {
        return None;
    }
    let (mut lo, mut hi) = (min_room, max_room);
    while hi - lo > tolerance {
        let mid = 0.5 * (lo + hi);
        if advantage(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// Constrained optima `M*_nu` for the levels selected by `range`.
pub fn constrained_optima(
    config: &InstanceConfig,
    nu_star: usize,
    range: RRange,
) -> Result<Vec<(usize, Assignment)>> {
    let first = match range {
        RRange::ZeroToNuStar => 0,
        RRange::OneToNuStar => 1,
    };
    (first..=nu_star)
        .map(|nu| {
            Ok((
                nu,
                solve_max_zero_arms(&true_request(config, ConstraintSpec::MaxZeroArms(nu)))?,
            ))
        })
        .collect()
}

/// Minimum sup-norm perturbation of the means that changes some constrained
/// optimum `M*_nu`. Zero when some `M*_nu` is not unique; infinite when the
/// selected range is empty.
pub fn compute_r(config: &InstanceConfig, tolerance: f64, range: RRange) -> Result<f64> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::InvalidInstance(format!(
            "tolerance {tolerance} must be positive"
        )));
    }
    let count = count_assignments(config.arms(), config.players(), config.cap());
    if count > BRUTE_FORCE_LIMIT {
        return Err(Error::EnumerationTooLarge {
            count,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let nu_star = compute_nu_star(config)?;
    let means = config.means();
    let mut r = f64::INFINITY;
    for (nu, incumbent) in constrained_optima(config, nu_star, range)? {
        for_each_assignment(config.arms(), config.players(), config.cap(), |alt| {
            if alt == &incumbent || alt.zero_arms() > nu {
                return;
            }
            if let Some(eps) = flip_radius(means, &incumbent, alt, config.p(), tolerance) {
                r = r.min(eps);
            }
        });
    }
    Ok(r)
}

/// Sufficient condition for `nu* = 0`: with `alpha = M p / K`, requires
/// `p <= 0.1`, `2p < alpha < 1` and
/// `min_k mu_k / max_k mu_k >= 1.3 exp(-alpha) (1 - alpha)`.
pub fn check_elimination_condition(config: &InstanceConfig) -> bool {
    let p = config.p();
    let alpha = config.players() as f64 * p / config.arms() as f64;
    let means = config.means();
    let max = means.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = means.iter().cloned().fold(f64::INFINITY, f64::min);
    if max <= 0.0 {
        return false;
    }
    p <= 0.1 && alpha > 2.0 * p && alpha < 1.0 && min / max >= 1.3 * (-alpha).exp() * (1.0 - alpha)
}

/// Both sides of `Delta^(nu*) >= (g(m + 1) - g(m)) Delta_(nu*)` where `m` is
/// the optimal player count on the `(nu* + 1)`-th worst arm.
pub fn third_term_sides(config: &InstanceConfig) -> Result<(f64, f64)> {
    let optimal = optimal_assignment(config)?;
    let nu_star = optimal.zero_arms();
    if nu_star == 0 {
        return Err(Error::Vacuous("nu* = 0".into()));
    }
    let (gaps, delta_super) = compute_gaps(config, nu_star)?;
    let order = arms_by_mean(config.means());
    let m = optimal[order[nu_star]];
    let p = config.p();
    Ok((delta_super, (g(m + 1, p) - g(m, p)) * gaps[nu_star - 1]))
}

/// Evaluates the third-term inequality; errors when `nu* = 0`.
pub fn check_third_term_inequality(config: &InstanceConfig) -> Result<bool> {
    let (lhs, rhs) = third_term_sides(config)?;
    Ok(lhs >= rhs)
}

/// All diagnostics at once.
pub fn diagnose(
    config: &InstanceConfig,
    tolerance: f64,
    range: RRange,
) -> Result<InstanceDiagnostics> {
    let optimal = optimal_assignment(config)?;
    let nu_star = optimal.zero_arms();
    let (gaps, delta_super) = compute_gaps(config, nu_star)?;
    let r = compute_r(config, tolerance, range)?;
    Ok(InstanceDiagnostics {
        optimal,
        nu_star,
        gaps,
        delta_super,
        r,
        elimination_condition: check_elimination_condition(config),
    })
}
