//! Standard reparametrization-invariant norms and their relatives.
//!
//! A norming function with monotone runs of signed variations
//! `m_0, ..., m_{k-1}` induces a norm on the model class: the supremum,
//! over all reparametrizations of the norming function, of the pairing
//! integral with the time reversal of the argument. That supremum has a
//! finite combinatorial form: it is the largest absolute value of
//! `sum_i m_i * c_{j_i}` over nondecreasing index assignments
//! `j_0 <= ... <= j_{k-1}` into the candidate list `c` of reversed profile
//! values. [`dp_extremes`] computes both the maximal and minimal such sum
//! in `O(k*p)` by an order-constrained dynamic program, and
//! [`standard_norm`] takes the larger magnitude of the two.
//!
//! Interval geometry never enters: a [`WeightSequence`] deliberately
//! carries no positions, and two norming functions with equal weight
//! sequences induce the same norm.
//!
//! The module also provides the named weight families (`S`, `Lambda`,
//! `S_n`, perturbed `S_n`, `L_n`), the classic closed-form norms they
//! reproduce, and combinators for building new norms from old ones.

use crate::profiles::{star_values, total_variation, CriticalProfile};
use crate::{Error, Result, VALUE_EQ_TOL};

/// Signed variations of a norming function's monotone runs, in order.
/// Finite, nonempty, every entry nonzero (entries at or below the value
/// tolerance are rejected: a vanishing variation is not a run).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence {
    weights: Vec<f64>,
}

impl WeightSequence {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidInput("weight sequence must be nonempty".into()));
        }
        for (i, &m) in weights.iter().enumerate() {
            if !m.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "weight {i} must be finite, got {m}"
                )));
            }
            if m.abs() <= VALUE_EQ_TOL {
                return Err(Error::InvalidInput(format!(
                    "weight {i} must be nonzero, got {m}"
                )));
            }
        }
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Total variation of any norming function with these weights.
    pub fn variation(&self) -> f64 {
        self.weights.iter().map(|m| m.abs()).sum()
    }
}

/// Weight sequence of a norming profile: its consecutive differences.
/// The zero profile induces no norm and is rejected.
pub fn weights_of(psi: &CriticalProfile) -> Result<WeightSequence> {
    if psi.is_zero() {
        return Err(Error::InvalidInput(
            "the zero profile does not induce a norm".into(),
        ));
    }
    WeightSequence::new(psi.values().windows(2).map(|w| w[1] - w[0]).collect())
}

/// Canonical profile realizing a weight sequence: adjacent weights of
/// equal sign are merged (they can always share an assignment index, so
/// the induced norm is unchanged), then cumulative sums prefixed with 0.
pub fn profile_of(w: &WeightSequence) -> CriticalProfile {
    let mut merged: Vec<f64> = Vec::with_capacity(w.len());
    for &m in w.weights() {
        match merged.last_mut() {
            Some(last) if (*last > 0.0) == (m > 0.0) => *last += m,
            _ => merged.push(m),
        }
    }
    let mut values = Vec::with_capacity(merged.len() + 1);
    values.push(0.0);
    let mut acc = 0.0;
    for m in merged {
        acc += m;
        values.push(acc);
    }
    CriticalProfile::new(values).expect("merged cumulative sums alternate by construction")
}

/// Extremal sums of the order-constrained assignment problem, with the
/// assignments that attain them. `min_sum <= 0 <= max_sum` whenever the
/// candidate list contains 0, which reversed profile value lists always
/// do.
#[derive(Debug, Clone, PartialEq)]
pub struct DpExtremes {
    pub max_sum: f64,
    pub min_sum: f64,
    /// Nondecreasing candidate indices attaining `max_sum`; ties resolve
    /// toward the smallest indices so results are reproducible.
    pub argmax: Vec<usize>,
    /// Nondecreasing candidate indices attaining `min_sum`.
    pub argmin: Vec<usize>,
}

/// Maximizes and minimizes `sum_i weights[i] * candidates[j_i]` over
/// nondecreasing `j_0 <= ... <= j_{k-1}` in one `O(k*p)` sweep.
///
/// Recurrence over `best[i][j]` (first `i` weights, last index at most
/// `j`): take `best[i-1][j] + m_{i-1} * c_j`, or inherit `best[i][j-1]`.
/// Values use two rolling rows; the take/skip choices are kept for the
/// assignment backtraces.
pub fn dp_extremes(candidates: &[f64], weights: &WeightSequence) -> Result<DpExtremes> {
    if candidates.is_empty() {
        return Err(Error::InvalidInput(
            "candidate list must be nonempty".into(),
        ));
    }
    if candidates.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidInput("candidates must be finite".into()));
    }
    let p = candidates.len();
    let k = weights.len();
    let mut max_prev = vec![0.0f64; p];
    let mut min_prev = vec![0.0f64; p];
    let mut max_take = vec![vec![false; p]; k];
    let mut min_take = vec![vec![false; p]; k];
    let mut max_cur = vec![0.0f64; p];
    let mut min_cur = vec![0.0f64; p];
    for (i, &m) in weights.weights().iter().enumerate() {
        for j in 0..p {
            let take_max = max_prev[j] + m * candidates[j];
            let take_min = min_prev[j] + m * candidates[j];
            if j == 0 {
                max_cur[0] = take_max;
                max_take[i][0] = true;
                min_cur[0] = take_min;
                min_take[i][0] = true;
            } else {
                // Strict comparison: on ties the skip branch wins, which
                // steers the backtrace to the smallest candidate indices.
                if take_max > max_cur[j - 1] {
                    max_cur[j] = take_max;
                    max_take[i][j] = true;
                } else {
                    max_cur[j] = max_cur[j - 1];
                }
                if take_min < min_cur[j - 1] {
                    min_cur[j] = take_min;
                    min_take[i][j] = true;
                } else {
                    min_cur[j] = min_cur[j - 1];
                }
            }
        }
        std::mem::swap(&mut max_prev, &mut max_cur);
        std::mem::swap(&mut min_prev, &mut min_cur);
    }
    Ok(DpExtremes {
        max_sum: max_prev[p - 1],
        min_sum: min_prev[p - 1],
        argmax: backtrace(&max_take, p),
        argmin: backtrace(&min_take, p),
    })
}

fn backtrace(take: &[Vec<bool>], p: usize) -> Vec<usize> {
    let k = take.len();
    let mut out = vec![0usize; k];
    let mut j = p - 1;
    for i in (0..k).rev() {
        // Column 0 always records a take, so the walk terminates.
        while !take[i][j] {
            j -= 1;
        }
        out[i] = j;
    }
    out
}

/// The standard norm of `phi` with respect to the norming profile `psi`:
/// the larger magnitude of the two extremal assignment sums over the
/// reversed profile values of `phi`. Zero iff `phi` is the zero profile.
pub fn standard_norm(phi: &CriticalProfile, psi: &CriticalProfile) -> Result<f64> {
    Ok(standard_norm_weights(phi, &weights_of(psi)?))
}

/// Standard norm against an explicit weight sequence.
pub fn standard_norm_weights(phi: &CriticalProfile, weights: &WeightSequence) -> f64 {
    let candidates = star_values(phi);
    let dp = dp_extremes(&candidates, weights)
        .expect("reversed profile values are a nonempty finite list");
    dp.max_sum.max(-dp.min_sum)
}

// ---------------------------------------------------------------------------
// Named weight families.

/// `S`: a single unit rise. Its norm is the sup norm.
pub fn s_weights() -> WeightSequence {
    WeightSequence::new(vec![1.0]).unwrap()
}

/// `Lambda`: a unit bump (rise then fall). Its norm is the range.
pub fn lambda_weights() -> WeightSequence {
    WeightSequence::new(vec![1.0, -1.0]).unwrap()
}

/// `S_n`: `n` alternating unit steps `(+1, -1, +1, ...)`. `S_1 = S`,
/// `S_2 = Lambda`; from `n = l(phi)` on, the norm stabilizes at half the
/// total variation of compactly supported `phi`.
pub fn sn_weights(n: usize) -> Result<WeightSequence> {
    if n == 0 {
        return Err(Error::InvalidInput("S_n requires n >= 1".into()));
    }
    WeightSequence::new((0..n).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect())
}

/// Perturbed `S_n`: step `i` has weight `(-1)^i + e_i`. A perturbation
/// that cancels a step is rejected - the run would vanish.
pub fn sn_perturbed_weights(n: usize, e: &[f64]) -> Result<WeightSequence> {
    if n == 0 {
        return Err(Error::InvalidInput("S_n requires n >= 1".into()));
    }
    if e.len() != n {
        return Err(Error::InvalidInput(format!(
            "perturbation vector has length {}, expected {n}",
            e.len()
        )));
    }
    let weights: Vec<f64> = e
        .iter()
        .enumerate()
        .map(|(i, &ei)| if i % 2 == 0 { 1.0 + ei } else { -1.0 + ei })
        .collect();
    if let Some(i) = weights.iter().position(|m| m.abs() <= VALUE_EQ_TOL) {
        return Err(Error::InvalidInput(format!(
            "perturbation cancels step {i} of S_{n}"
        )));
    }
    WeightSequence::new(weights)
}

/// `L_n`: `n` alternating unit bumps, `2n` weights
/// `(+1, -1, -1, +1, +1, -1, ...)`. The supremum of the induced norms
/// over `n` recovers the total variation.
pub fn ln_weights(n: usize) -> Result<WeightSequence> {
    if n == 0 {
        return Err(Error::InvalidInput("L_n requires n >= 1".into()));
    }
    let mut weights = Vec::with_capacity(2 * n);
    for i in 0..n {
        if i % 2 == 0 {
            weights.extend_from_slice(&[1.0, -1.0]);
        } else {
            weights.extend_from_slice(&[-1.0, 1.0]);
        }
    }
    WeightSequence::new(weights)
}

/// The default named catalog: `S`, `Lambda`, `S_n` up to 8, `L_n` up to 4
/// (duplicates `S_1`, `S_2`, `L_1` are omitted; they coincide with `S` and
/// `Lambda`).
pub fn standard_catalog() -> Vec<(String, WeightSequence)> {
    let mut out = vec![
        ("S".to_string(), s_weights()),
        ("Lambda".to_string(), lambda_weights()),
    ];
    for n in 3..=8 {
        out.push((format!("S_{n}"), sn_weights(n).unwrap()));
    }
    for n in 2..=4 {
        out.push((format!("L_{n}"), ln_weights(n).unwrap()));
    }
    out
}

// ---------------------------------------------------------------------------
// Classic norms.

/// Largest absolute value attained.
pub fn sup_norm(p: &CriticalProfile) -> f64 {
    p.sup()
}

/// Difference between the largest and smallest value attained.
pub fn range_norm(p: &CriticalProfile) -> f64 {
    let max = p.values().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = p.values().iter().cloned().fold(f64::INFINITY, f64::min);
    max - min
}

/// Total variation.
pub fn tv_norm(p: &CriticalProfile) -> f64 {
    total_variation(p)
}

/// Absolute right-tail value. A seminorm: zero on every compactly
/// supported profile.
pub fn tail_seminorm(p: &CriticalProfile) -> f64 {
    p.values().last().unwrap().abs()
}

/// `max over t1 <= t2 of |2 f(t1) - f(t2)|`: an invariant norm that is
/// not induced by any norming profile. Evaluated by the same dynamic
/// program, but over the forward value list (no time reversal) with
/// weights `(2, -1)`.
pub fn asym_norm(p: &CriticalProfile) -> f64 {
    let weights = WeightSequence::new(vec![2.0, -1.0]).unwrap();
    let dp = dp_extremes(p.values(), &weights).expect("profile values are nonempty");
    dp.max_sum.max(-dp.min_sum)
}

// ---------------------------------------------------------------------------
// Combinators.

/// Classic closed-form norms by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classic {
    Sup,
    Range,
    Tv,
    Tail,
    Asym,
}

impl Classic {
    pub fn evaluate(self, p: &CriticalProfile) -> f64 {
        match self {
            Classic::Sup => sup_norm(p),
            Classic::Range => range_norm(p),
            Classic::Tv => tv_norm(p),
            Classic::Tail => tail_seminorm(p),
            Classic::Asym => asym_norm(p),
        }
    }
}

/// A norm built from standard and classic pieces. Construction validates
/// (positive coefficients, `p >= 1`), so evaluation is total.
#[derive(Debug, Clone, PartialEq)]
pub enum Norm {
    Standard(WeightSequence),
    Classic(Classic),
    LinearCombo(Vec<(f64, Norm)>),
    SupFamily(Vec<Norm>),
    /// `l_p` composition: `(sum_i N_i(phi)^p)^(1/p)`. Monotone in each
    /// argument, so the norm axioms are preserved.
    MonotoneCompose(Vec<Norm>, f64),
}

impl Norm {
    pub fn evaluate(&self, p: &CriticalProfile) -> f64 {
        match self {
            Norm::Standard(w) => standard_norm_weights(p, w),
            Norm::Classic(c) => c.evaluate(p),
            Norm::LinearCombo(terms) => {
                terms.iter().map(|(c, n)| c * n.evaluate(p)).sum()
            }
            Norm::SupFamily(norms) => norms
                .iter()
                .map(|n| n.evaluate(p))
                .fold(f64::NEG_INFINITY, f64::max),
            Norm::MonotoneCompose(norms, q) => norms
                .iter()
                .map(|n| n.evaluate(p).powf(*q))
                .sum::<f64>()
                .powf(1.0 / q),
        }
    }
}

/// Positive combination `sum_i coeffs[i] * norms[i]`.
pub fn linear_combo(norms: Vec<Norm>, coeffs: Vec<f64>) -> Result<Norm> {
    if norms.is_empty() || norms.len() != coeffs.len() {
        return Err(Error::InvalidInput(
            "linear combination needs matching nonempty norm and coefficient lists".into(),
        ));
    }
    if coeffs.iter().any(|c| !c.is_finite() || *c <= 0.0) {
        return Err(Error::InvalidInput(
            "linear combination coefficients must be positive and finite".into(),
        ));
    }
    Ok(Norm::LinearCombo(coeffs.into_iter().zip(norms).collect()))
}

/// Pointwise supremum of finitely many norms.
pub fn sup_family(norms: Vec<Norm>) -> Result<Norm> {
    if norms.is_empty() {
        return Err(Error::InvalidInput("sup family needs at least one norm".into()));
    }
    Ok(Norm::SupFamily(norms))
}

/// `l_p` composition of finitely many norms, `p >= 1`.
pub fn monotone_compose(norms: Vec<Norm>, p: f64) -> Result<Norm> {
    if norms.is_empty() {
        return Err(Error::InvalidInput(
            "monotone composition needs at least one norm".into(),
        ));
    }
    if !p.is_finite() || p < 1.0 {
        return Err(Error::InvalidInput(format!(
            "monotone composition requires p >= 1, got {p}"
        )));
    }
    Ok(Norm::MonotoneCompose(norms, p))
}
