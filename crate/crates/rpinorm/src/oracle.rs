//! Independent cross-checks for the norm dynamic program.
//!
//! Three views of the same quantity keep each other honest:
//!
//! 1. [`brute_force_norm`] enumerates every nondecreasing index assignment
//!    directly (capped, exponential) and must agree with the DP exactly.
//! 2. [`functional_F`] evaluates the greedy per-interval pairing: each
//!    monotone run of the norming function pays its signed variation times
//!    the extremal value of the reversed argument over that run. It
//!    dominates every pairing integral whose reparametrization respects
//!    the runs.
//! 3. [`integral_norm_estimate`] realizes the norm as an honest integral:
//!    a concentrating reparametrization squeezes each run's variation into
//!    a small window around a DP-chosen basepoint, and the exact piecewise
//!    linear integral then approaches the DP value from below as the
//!    window margin shrinks, without ever exceeding it.

use crate::norms::{dp_extremes, WeightSequence};
use crate::profiles::{
    apply_reparam, critical_points, PiecewiseLinearFunction, Reparametrization,
};
use crate::{Error, Result, VALUE_EQ_TOL};

/// Cap used by callers that do not pick their own enumeration budget.
pub const DEFAULT_ENUMERATION_CAP: u64 = 5_000_000;

/// Largest absolute assignment sum, found by enumerating all
/// `C(p + k - 1, k)` nondecreasing index tuples. Errors when that count
/// exceeds `cap`.
pub fn brute_force_norm(
    candidates: &[f64],
    weights: &WeightSequence,
    cap: u64,
) -> Result<f64> {
    if candidates.is_empty() {
        return Err(Error::InvalidInput("candidate list must be nonempty".into()));
    }
    let tuples = multiset_count(candidates.len() as u64, weights.len() as u64);
    if tuples > cap as u128 {
        return Err(Error::Capacity(format!(
            "enumeration needs {tuples} tuples, cap is {cap}"
        )));
    }
    let mut best = 0.0f64;
    let mut stack: Vec<(usize, usize, f64)> = vec![(0, 0, 0.0)];
    let ws = weights.weights();
    while let Some((i, j_min, acc)) = stack.pop() {
        if i == ws.len() {
            best = best.max(acc.abs());
            continue;
        }
        for (j, &c) in candidates.iter().enumerate().skip(j_min) {
            stack.push((i + 1, j, acc + ws[i] * c));
        }
    }
    Ok(best)
}

/// `C(p + k - 1, k)` without overflow for the sizes callers can afford.
fn multiset_count(p: u64, k: u64) -> u128 {
    let mut num: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul((p + i) as u128);
        num /= (i + 1) as u128;
        if num > u128::from(u64::MAX) {
            return num;
        }
    }
    num
}

/// A maximal interval on which a PL function is strictly monotone, with
/// its signed variation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotoneRun {
    pub a: f64,
    pub b: f64,
    pub delta: f64,
}

/// Maximal strict-monotone runs of `f` in order. Plateaus separate runs;
/// two runs in the same direction can therefore follow each other.
pub fn monotone_runs(f: &PiecewiseLinearFunction) -> Vec<MonotoneRun> {
    let mut runs: Vec<MonotoneRun> = Vec::new();
    let mut open: Option<MonotoneRun> = None;
    for w in f.points().windows(2) {
        let (t0, v0) = w[0];
        let (t1, v1) = w[1];
        let dv = v1 - v0;
        if dv.abs() <= VALUE_EQ_TOL {
            if let Some(run) = open.take() {
                runs.push(run);
            }
            continue;
        }
        match &mut open {
            Some(run) if (run.delta > 0.0) == (dv > 0.0) => {
                run.b = t1;
                run.delta += dv;
            }
            Some(run) => {
                runs.push(*run);
                open = Some(MonotoneRun { a: t0, b: t1, delta: dv });
            }
            None => {
                open = Some(MonotoneRun { a: t0, b: t1, delta: dv });
            }
        }
    }
    if let Some(run) = open {
        runs.push(run);
    }
    runs
}

/// Extremal values of `t -> phi(-t)` on the closed interval `[lo, hi]`:
/// endpoint values plus every breakpoint of the reversal strictly inside.
fn star_extrema(phi: &PiecewiseLinearFunction, lo: f64, hi: f64) -> (f64, f64) {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for v in [phi.evaluate(-lo), phi.evaluate(-hi)] {
        min = min.min(v);
        max = max.max(v);
    }
    for &(t, v) in phi.points() {
        if -t > lo && -t < hi {
            min = min.min(v);
            max = max.max(v);
        }
    }
    (min, max)
}

/// The greedy per-interval functional: each monotone run of `psi` pays its
/// signed variation times the maximal (rising run) or minimal (falling
/// run) value of the reversal of `phi` over the run's closure.
pub fn functional_f(phi: &PiecewiseLinearFunction, psi: &PiecewiseLinearFunction) -> f64 {
    monotone_runs(psi)
        .into_iter()
        .map(|run| {
            let (min, max) = star_extrema(phi, run.a, run.b);
            run.delta * if run.delta > 0.0 { max } else { min }
        })
        .sum()
}

/// Recipe for a concentrating reparametrization: one basepoint target per
/// monotone run of the norming function, plus a window margin.
///
/// The construction maps the window `(targets[i] - eta_i, targets[i] +
/// eta_i)`, with `eta_i = eta / 2^i`, onto the bulk `(a_i + eta_i, b_i -
/// eta_i)` of run `i`, so composing the norming function with the result
/// concentrates run `i`'s variation into the window around `targets[i]`.
/// Coincident targets are spread `eta/4` apart (with narrowed windows)
/// to keep the map a bijection.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationPlan {
    pub targets: Vec<f64>,
    pub eta: f64,
    pub intervals: Vec<(f64, f64)>,
}

/// Builds the concentrating reparametrization for a plan.
///
/// Validity requires `eta` below half the shortest interval length and
/// windows that stay pairwise disjoint after coincident targets are
/// spread; a plan violating either is rejected rather than silently
/// adjusted.
pub fn make_concentrating_reparam(plan: &ConcentrationPlan) -> Result<Reparametrization> {
    let k = plan.intervals.len();
    if k == 0 {
        return Err(Error::InvalidInput("plan has no intervals".into()));
    }
    if plan.targets.len() != k {
        return Err(Error::InvalidInput(format!(
            "plan has {} targets for {k} intervals",
            plan.targets.len()
        )));
    }
    if !plan.eta.is_finite() || plan.eta <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "plan margin must be positive, got {}",
            plan.eta
        )));
    }
    for (i, &(a, b)) in plan.intervals.iter().enumerate() {
        if !a.is_finite() || !b.is_finite() || a >= b {
            return Err(Error::InvalidInput(format!(
                "interval {i} = ({a}, {b}) is not a proper interval"
            )));
        }
        if i + 1 < k && plan.intervals[i + 1].0 < b {
            return Err(Error::InvalidInput(format!(
                "intervals {i} and {} overlap",
                i + 1
            )));
        }
        let eta_i = plan.eta / (1u64 << i.min(52)) as f64;
        if eta_i >= (b - a) / 2.0 {
            return Err(Error::InvalidInput(format!(
                "margin {eta_i} is not below half the length of interval {i}"
            )));
        }
    }
    if plan
        .targets
        .windows(2)
        .any(|w| w[0] > w[1])
        || plan.targets.iter().any(|t| !t.is_finite())
    {
        return Err(Error::InvalidInput(
            "targets must be finite and nondecreasing".into(),
        ));
    }

    // Spread runs of coincident targets eta/4 apart; their windows narrow
    // to stay inside the spread spacing.
    let mut centers = plan.targets.clone();
    let mut half_width: Vec<f64> = (0..k)
        .map(|i| plan.eta / (1u64 << i.min(52)) as f64)
        .collect();
    let mut i = 0;
    while i < k {
        let mut j = i;
        while j + 1 < k && plan.targets[j + 1] == plan.targets[i] {
            j += 1;
        }
        if j > i {
            for (step, slot) in (i..=j).enumerate() {
                centers[slot] = plan.targets[i] + step as f64 * plan.eta / 4.0;
                half_width[slot] = half_width[slot].min(plan.eta / 16.0);
            }
        }
        i = j + 1;
    }

    let mut points = Vec::with_capacity(2 * k);
    for i in 0..k {
        let (a, b) = plan.intervals[i];
        let eta_i = plan.eta / (1u64 << i.min(52)) as f64;
        points.push((centers[i] - half_width[i], a + eta_i));
        points.push((centers[i] + half_width[i], b - eta_i));
    }
    if points.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(Error::InvalidInput(
            "concentration windows overlap; shrink eta or separate targets".into(),
        ));
    }
    Reparametrization::new(points)
}

/// Exact value of the pairing integral of `phi` against the derivative of
/// `psi . h`: the integrand is piecewise linear times piecewise constant,
/// so each segment of the common breakpoint refinement integrates in
/// closed form (trapezoid rule is exact there).
pub fn integral_functional(
    phi: &PiecewiseLinearFunction,
    psi: &PiecewiseLinearFunction,
    h: &Reparametrization,
) -> f64 {
    let composed = apply_reparam(psi, h);
    let pts = composed.points();
    if pts.len() < 2 {
        return 0.0;
    }
    let lo = pts[0].0;
    let hi = pts[pts.len() - 1].0;
    let mut grid: Vec<f64> = pts.iter().map(|&(t, _)| t).collect();
    grid.extend(
        phi.points()
            .iter()
            .map(|&(t, _)| -t)
            .filter(|&t| t > lo && t < hi),
    );
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();
    let mut total = 0.0;
    for w in grid.windows(2) {
        let (x, y) = (w[0], w[1]);
        if y <= x {
            continue;
        }
        let slope = (composed.evaluate(y) - composed.evaluate(x)) / (y - x);
        if slope == 0.0 {
            continue;
        }
        let fx = phi.evaluate(-x);
        let fy = phi.evaluate(-y);
        total += slope * (y - x) * (fx + fy) / 2.0;
    }
    total
}

/// Norm estimates from concentrating reparametrizations, one per margin in
/// `etas`: the DP picks extremal basepoints, the plan squeezes each run of
/// `psi` around them, and the exact integral is evaluated. Estimates never
/// exceed the true norm and approach it as the margin shrinks.
pub fn integral_norm_estimate(
    phi: &PiecewiseLinearFunction,
    psi: &PiecewiseLinearFunction,
    etas: &[f64],
) -> Result<Vec<f64>> {
    let runs = monotone_runs(psi);
    if runs.is_empty() {
        return Err(Error::InvalidInput(
            "the norming function must be nonzero".into(),
        ));
    }
    if phi.is_zero_function() {
        return Ok(vec![0.0; etas.len()]);
    }
    // Candidate values and positions of the reversal of phi, left to
    // right: the critical points of phi, reversed and negated.
    let mut cps = critical_points(phi);
    cps.reverse();
    let positions: Vec<f64> = cps.iter().map(|&(t, _)| -t).collect();
    let candidates: Vec<f64> = cps.iter().map(|&(_, v)| v).collect();
    let weights = WeightSequence::new(runs.iter().map(|r| r.delta).collect())?;
    let dp = dp_extremes(&candidates, &weights)?;
    let assignment = if dp.max_sum >= -dp.min_sum {
        &dp.argmax
    } else {
        &dp.argmin
    };
    let targets: Vec<f64> = assignment.iter().map(|&j| positions[j]).collect();
    let intervals: Vec<(f64, f64)> = runs.iter().map(|r| (r.a, r.b)).collect();
    let mut out = Vec::with_capacity(etas.len());
    for &eta in etas {
        let plan = ConcentrationPlan {
            targets: targets.clone(),
            eta,
            intervals: intervals.clone(),
        };
        let h = make_concentrating_reparam(&plan)?;
        out.push(integral_functional(phi, psi, &h).abs());
    }
    Ok(out)
}
