//! Piecewise linear functions, critical profiles, and reparametrizations.
//!
//! The model class is functions that vanish on a left half-line, are
//! eventually constant on the right, and consist of finitely many monotone
//! pieces in between. A [`PiecewiseLinearFunction`] is one concrete
//! parametrization; its [`CriticalProfile`] is the ordered list of values
//! at monotone-run boundaries, which is the complete invariant under
//! orientation-preserving reparametrization. Norms downstream depend on a
//! function only through its profile, so [`canonicalize`] is the bridge
//! every other module crosses.
//!
//! Interval geometry (where the runs sit, how long they are) is erased by
//! canonicalization on purpose: two functions with the same profile are
//! the same point of the quotient space this crate works in.

use crate::{Error, Result, VALUE_EQ_TOL};

/// A piecewise linear function given by breakpoints `(t_i, v_i)` with
/// strictly increasing `t_i`. The function is 0 on `(-inf, t_0]`
/// (enforced via `v_0 = 0`), linear between breakpoints, and constant
/// `v_last` on `[t_last, +inf)`. The empty list is the zero function.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinearFunction {
    points: Vec<(f64, f64)>,
}

impl PiecewiseLinearFunction {
    /// Validates breakpoints: finite coordinates, strictly increasing
    /// times, first value 0 (within [`VALUE_EQ_TOL`], stored as exact 0).
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        for &(t, v) in &points {
            if !t.is_finite() || !v.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "non-finite breakpoint ({t}, {v})"
                )));
            }
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidInput(format!(
                    "breakpoint times must be strictly increasing, got {} then {}",
                    w[0].0, w[1].0
                )));
            }
        }
        let mut points = points;
        if let Some(first) = points.first_mut() {
            if first.1.abs() > VALUE_EQ_TOL {
                return Err(Error::InvalidInput(format!(
                    "first breakpoint value must be 0 (left tail), got {}",
                    first.1
                )));
            }
            first.1 = 0.0;
        }
        Ok(Self { points })
    }

    /// The zero function.
    pub fn zero() -> Self {
        Self { points: Vec::new() }
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn is_zero_function(&self) -> bool {
        self.points.iter().all(|&(_, v)| v.abs() <= VALUE_EQ_TOL)
    }

    /// Pointwise evaluation, including both constant tails.
    pub fn evaluate(&self, t: f64) -> f64 {
        let pts = &self.points;
        if pts.is_empty() {
            return 0.0;
        }
        if t <= pts[0].0 {
            return 0.0;
        }
        if t >= pts[pts.len() - 1].0 {
            return pts[pts.len() - 1].1;
        }
        // Index of the last breakpoint with time <= t; t is strictly
        // inside the breakpoint span here.
        let idx = match pts.binary_search_by(|p| p.0.partial_cmp(&t).unwrap()) {
            Ok(i) => return pts[i].1,
            Err(i) => i - 1,
        };
        let (t0, v0) = pts[idx];
        let (t1, v1) = pts[idx + 1];
        v0 + (v1 - v0) * ((t - t0) / (t1 - t0))
    }
}

/// The value sequence `(u_0, ..., u_m)` of a function at its monotone-run
/// boundaries: `u_0 = 0`, consecutive values distinct, and differences
/// strictly alternating in sign. `(0)` alone is the zero function; the
/// profile has compact support iff `u_m = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalProfile {
    values: Vec<f64>,
}

impl CriticalProfile {
    /// Accepts only already-reduced value lists; see [`Self::reduce`] for
    /// the forgiving constructor.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let p = Self::validate_head(values)?;
        for (i, w) in p.values.windows(2).enumerate() {
            let d = w[1] - w[0];
            if d.abs() <= VALUE_EQ_TOL {
                return Err(Error::InvalidInput(format!(
                    "profile values {} and {} at positions {i}, {} are not distinct",
                    w[0],
                    w[1],
                    i + 1
                )));
            }
        }
        for (i, w) in p.values.windows(3).enumerate() {
            if ((w[1] - w[0]) > 0.0) == ((w[2] - w[1]) > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "profile differences must alternate in sign at position {}",
                    i + 1
                )));
            }
        }
        Ok(p)
    }

    /// Reduces an arbitrary value sequence starting at 0 to canonical
    /// form: plateau steps (differences within [`VALUE_EQ_TOL`]) are
    /// merged, runs in one direction keep only their final value.
    pub fn reduce(values: Vec<f64>) -> Result<Self> {
        let head = Self::validate_head(values)?;
        Ok(Self {
            values: reduce_values(&head.values),
        })
    }

    fn validate_head(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("profile must be nonempty".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("profile values must be finite".into()));
        }
        if values[0].abs() > VALUE_EQ_TOL {
            return Err(Error::InvalidInput(format!(
                "profile must start at 0, got {}",
                values[0]
            )));
        }
        let mut values = values;
        values[0] = 0.0;
        Ok(Self { values })
    }

    /// The zero function's profile, `(0)`.
    pub fn zero() -> Self {
        Self { values: vec![0.0] }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.len() == 1
    }

    /// Compact support: the right tail value is 0.
    pub fn is_compact(&self) -> bool {
        self.values[self.values.len() - 1].abs() <= VALUE_EQ_TOL
    }

    /// Largest absolute value attained.
    pub fn sup(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// A concrete piecewise linear representative with breakpoints at
    /// `0, spacing, 2*spacing, ...` carrying the profile values.
    pub fn representative(&self, spacing: f64) -> Result<PiecewiseLinearFunction> {
        if !spacing.is_finite() || spacing <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "representative spacing must be positive, got {spacing}"
            )));
        }
        if self.is_zero() {
            return Ok(PiecewiseLinearFunction::zero());
        }
        let points = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| (i as f64 * spacing, v))
            .collect();
        PiecewiseLinearFunction::new(points)
    }
}

fn reduce_values(values: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = vec![values[0]];
    let mut dir = 0i8;
    for &v in &values[1..] {
        let last = *out.last().unwrap();
        let d = v - last;
        if d.abs() <= VALUE_EQ_TOL {
            continue;
        }
        let s = if d > 0.0 { 1 } else { -1 };
        if s == dir {
            *out.last_mut().unwrap() = v;
        } else {
            out.push(v);
            dir = s;
        }
    }
    out
}

/// Extracts the critical profile of a piecewise linear function: values at
/// monotone-run boundaries, with collinear breakpoints, plateaus, and
/// sub-tolerance wobbles merged away. Idempotent through
/// [`CriticalProfile::representative`].
pub fn canonicalize(f: &PiecewiseLinearFunction) -> CriticalProfile {
    if f.points().is_empty() {
        return CriticalProfile::zero();
    }
    let raw: Vec<f64> = f.points().iter().map(|&(_, v)| v).collect();
    CriticalProfile {
        values: reduce_values(&raw),
    }
}

/// Breakpoints `(t, value)` of the canonical profile inside a concrete
/// parametrization: the first breakpoint, one representative per retained
/// extremum (the earliest breakpoint attaining it), and the last
/// breakpoint. Positions are what canonicalization deliberately forgets;
/// the integral oracle needs them back.
pub fn critical_points(f: &PiecewiseLinearFunction) -> Vec<(f64, f64)> {
    let pts = f.points();
    if pts.is_empty() {
        return Vec::new();
    }
    let mut out: Vec<(f64, f64)> = vec![pts[0]];
    let mut dir = 0i8;
    for &(t, v) in &pts[1..] {
        let last = out.last().unwrap().1;
        let d = v - last;
        if d.abs() <= VALUE_EQ_TOL {
            continue;
        }
        let s = if d > 0.0 { 1 } else { -1 };
        if s == dir {
            *out.last_mut().unwrap() = (t, v);
        } else {
            out.push((t, v));
            dir = s;
        }
    }
    // The reduction keeps the final value of each run; the run that ends
    // the function must report the last breakpoint's time even when a
    // closing plateau was merged.
    if let Some(last) = out.last_mut() {
        if (last.1 - pts[pts.len() - 1].1).abs() <= VALUE_EQ_TOL {
            last.0 = pts[pts.len() - 1].0;
        }
    }
    out
}

/// Values of the time reversal `t -> f(-t)` at its monotone-run
/// boundaries: the profile values in reverse order. This list always
/// contains 0 (its last entry) and is the candidate list the norm dynamic
/// program optimizes over.
pub fn star_values(p: &CriticalProfile) -> Vec<f64> {
    let mut v = p.values().to_vec();
    v.reverse();
    v
}

/// Total variation: sum of absolute profile differences.
pub fn total_variation(p: &CriticalProfile) -> f64 {
    p.values().windows(2).map(|w| (w[1] - w[0]).abs()).sum()
}

/// Positive and negative variation `(V+, V-)`; `V+ - V- = u_m` and for
/// compact support both halves equal `V/2`.
pub fn variation_split(p: &CriticalProfile) -> (f64, f64) {
    let mut plus = 0.0;
    let mut minus = 0.0;
    for w in p.values().windows(2) {
        let d = w[1] - w[0];
        if d > 0.0 {
            plus += d;
        } else {
            minus += -d;
        }
    }
    (plus, minus)
}

/// Running positive and negative variation of `f` along its breakpoint
/// grid, as PL functions. Both are nondecreasing, and
/// `V+ - V-` reproduces `f` pointwise on the grid.
pub fn variation_profiles(
    f: &PiecewiseLinearFunction,
) -> (PiecewiseLinearFunction, PiecewiseLinearFunction) {
    let pts = f.points();
    if pts.is_empty() {
        return (
            PiecewiseLinearFunction::zero(),
            PiecewiseLinearFunction::zero(),
        );
    }
    let mut plus = Vec::with_capacity(pts.len());
    let mut minus = Vec::with_capacity(pts.len());
    let (mut p, mut m) = (0.0f64, 0.0f64);
    plus.push((pts[0].0, 0.0));
    minus.push((pts[0].0, 0.0));
    for w in pts.windows(2) {
        let d = w[1].1 - w[0].1;
        if d > 0.0 {
            p += d;
        } else {
            m += -d;
        }
        plus.push((w[1].0, p));
        minus.push((w[1].0, m));
    }
    (
        PiecewiseLinearFunction { points: plus },
        PiecewiseLinearFunction { points: minus },
    )
}

/// Number of interior alternation points of the profile:
/// `max(len - 2, 0)`. This is the length of the minimal separating set
/// for the time reversal, and the pivot of the reconstruction pipeline.
pub fn l_of(p: &CriticalProfile) -> usize {
    p.values().len().saturating_sub(2)
}

/// Smallest absolute difference between consecutive profile values
/// (0 when fewer than two values). Controls how hard the profile is to
/// pin down: stabilization gaps and safe perturbation sizes scale with it.
pub fn separation_margin(p: &CriticalProfile) -> f64 {
    let m = p
        .values()
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .fold(f64::INFINITY, f64::min);
    if m.is_finite() {
        m
    } else {
        0.0
    }
}

/// Pointwise sum on the merged breakpoint grid.
pub fn add(
    f: &PiecewiseLinearFunction,
    g: &PiecewiseLinearFunction,
) -> PiecewiseLinearFunction {
    let mut grid: Vec<f64> = f
        .points()
        .iter()
        .chain(g.points().iter())
        .map(|&(t, _)| t)
        .collect();
    if grid.is_empty() {
        return PiecewiseLinearFunction::zero();
    }
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();
    let points = grid
        .into_iter()
        .map(|t| (t, f.evaluate(t) + g.evaluate(t)))
        .collect();
    PiecewiseLinearFunction { points }
}

pub fn negate(f: &PiecewiseLinearFunction) -> PiecewiseLinearFunction {
    scale(f, -1.0)
}

pub fn scale(f: &PiecewiseLinearFunction, lambda: f64) -> PiecewiseLinearFunction {
    PiecewiseLinearFunction {
        points: f.points().iter().map(|&(t, v)| (t, lambda * v)).collect(),
    }
}

/// A strictly increasing piecewise linear bijection of the real line with
/// unit-slope tails beyond its breakpoints. The empty breakpoint list is
/// the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Reparametrization {
    points: Vec<(f64, f64)>,
}

impl Reparametrization {
    /// Breakpoints must be finite and strictly increasing in both
    /// coordinates.
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        for &(t, v) in &points {
            if !t.is_finite() || !v.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "non-finite reparametrization breakpoint ({t}, {v})"
                )));
            }
        }
        for w in points.windows(2) {
            if !(w[1].0 > w[0].0 && w[1].1 > w[0].1) {
                return Err(Error::InvalidInput(format!(
                    "reparametrization must increase strictly in both coordinates, \
                     got ({}, {}) then ({}, {})",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(Self { points })
    }

    pub fn identity() -> Self {
        Self { points: Vec::new() }
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        piecewise_monotone_eval(&self.points, t, |p| p.0, |p| p.1)
    }

    /// Inverse map; well defined because the forward map is a strictly
    /// increasing bijection.
    pub fn invert(&self, v: f64) -> f64 {
        piecewise_monotone_eval(&self.points, v, |p| p.1, |p| p.0)
    }
}

fn piecewise_monotone_eval(
    points: &[(f64, f64)],
    x: f64,
    key: impl Fn(&(f64, f64)) -> f64,
    val: impl Fn(&(f64, f64)) -> f64,
) -> f64 {
    if points.is_empty() {
        return x;
    }
    let first = &points[0];
    let last = &points[points.len() - 1];
    if x <= key(first) {
        return val(first) + (x - key(first));
    }
    if x >= key(last) {
        return val(last) + (x - key(last));
    }
    let idx = match points
        .binary_search_by(|p| key(p).partial_cmp(&x).unwrap())
    {
        Ok(i) => return val(&points[i]),
        Err(i) => i - 1,
    };
    let (a, b) = (&points[idx], &points[idx + 1]);
    val(a) + (val(b) - val(a)) * ((x - key(a)) / (key(b) - key(a)))
}

/// Composition `f . h`, sampled on `h`'s breakpoints together with the
/// preimages of `f`'s breakpoints. The canonical profile is unchanged:
/// reparametrization permutes parametrizations within one equivalence
/// class.
pub fn apply_reparam(
    f: &PiecewiseLinearFunction,
    h: &Reparametrization,
) -> PiecewiseLinearFunction {
    if f.points().is_empty() {
        return PiecewiseLinearFunction::zero();
    }
    let mut grid: Vec<f64> = f.points().iter().map(|&(t, _)| h.invert(t)).collect();
    grid.extend(h.points().iter().map(|&(s, _)| s));
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();
    let points: Vec<(f64, f64)> = grid
        .into_iter()
        .map(|s| (s, f.evaluate(h.evaluate(s))))
        .collect();
    // Float inversion can leave the leading value a hair off 0; snap it
    // rather than reject the whole composition.
    let mut points = points;
    if let Some(first) = points.first_mut() {
        if first.1.abs() <= VALUE_EQ_TOL {
            first.1 = 0.0;
        }
    }
    PiecewiseLinearFunction { points }
}

/// Time reversal `t -> f(-t)`. Requires compact support: otherwise the
/// reversal has a nonzero left tail and leaves the model class.
pub fn reverse_time(f: &PiecewiseLinearFunction) -> Result<PiecewiseLinearFunction> {
    if !canonicalize(f).is_compact() {
        return Err(Error::Domain(
            "time reversal requires compact support (right tail value 0)".into(),
        ));
    }
    let mut points: Vec<(f64, f64)> =
        f.points().iter().map(|&(t, v)| (-t, v)).collect();
    points.reverse();
    PiecewiseLinearFunction::new(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pl(points: &[(f64, f64)]) -> PiecewiseLinearFunction {
        PiecewiseLinearFunction::new(points.to_vec()).unwrap()
    }

    fn profile(values: &[f64]) -> CriticalProfile {
        CriticalProfile::new(values.to_vec()).unwrap()
    }

    #[test]
    fn canonicalize_keeps_strict_extrema() {
        let f = pl(&[(0.0, 0.0), (1.0, 3.0), (2.0, 1.0), (3.0, 2.0), (4.0, 0.0)]);
        assert_eq!(canonicalize(&f).values(), &[0.0, 3.0, 1.0, 2.0, 0.0]);
    }

    #[test]
    fn canonicalize_merges_collinear_and_plateaus() {
        let f = pl(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (3.0, 2.0), (4.0, 0.5)]);
        assert_eq!(canonicalize(&f).values(), &[0.0, 2.0, 0.5]);
        let g = pl(&[(0.0, 0.0), (1.0, 3.0), (2.0, 3.0 + 5e-13), (3.0, 0.0)]);
        assert_eq!(canonicalize(&g).values(), &[0.0, 3.0, 0.0]);
    }

    #[test]
    fn canonicalize_zero_encodings() {
        assert!(canonicalize(&PiecewiseLinearFunction::zero()).is_zero());
        let f = pl(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
        assert!(canonicalize(&f).is_zero());
    }

    #[test]
    fn canonicalize_idempotent_through_representative() {
        let p = profile(&[0.0, 3.0, 1.0, 2.0, 0.0]);
        let again = canonicalize(&p.representative(1.0).unwrap());
        assert_eq!(again, p);
        let zero = CriticalProfile::zero();
        assert_eq!(canonicalize(&zero.representative(2.0).unwrap()), zero);
    }

    #[test]
    fn validation_rejects_bad_breakpoints() {
        assert!(PiecewiseLinearFunction::new(vec![(0.0, 0.0), (0.0, 1.0)]).is_err());
        assert!(PiecewiseLinearFunction::new(vec![(1.0, 2.0)]).is_err());
        assert!(PiecewiseLinearFunction::new(vec![(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn profile_validation() {
        assert!(CriticalProfile::new(vec![0.0, 1.0, 2.0]).is_err()); // no alternation
        assert!(CriticalProfile::new(vec![0.0, 1.0, 1.0]).is_err()); // not distinct
        assert!(CriticalProfile::new(vec![1.0, 0.0]).is_err()); // nonzero start
        assert!(CriticalProfile::new(vec![0.0, 1.0, -1.0, 0.5]).is_ok());
        let reduced = CriticalProfile::reduce(vec![0.0, 1.0, 2.0, 1.0]).unwrap();
        assert_eq!(reduced.values(), &[0.0, 2.0, 1.0]);
        assert!(CriticalProfile::reduce(vec![0.0, 0.0, 0.0]).unwrap().is_zero());
    }

    #[test]
    fn star_values_reverse_the_profile() {
        let p = profile(&[0.0, 3.0, 1.0, 2.0, 0.0]);
        assert_eq!(star_values(&p), vec![0.0, 2.0, 1.0, 3.0, 0.0]);
    }

    #[test]
    fn variation_and_margin_of_running_example() {
        let p = profile(&[0.0, 3.0, 1.0, 2.0, 0.0]);
        assert_eq!(total_variation(&p), 8.0);
        assert_eq!(variation_split(&p), (4.0, 4.0));
        assert_eq!(l_of(&p), 3);
        assert_eq!(separation_margin(&p), 1.0);
        assert_eq!(l_of(&CriticalProfile::zero()), 0);
        assert_eq!(separation_margin(&CriticalProfile::zero()), 0.0);
    }

    #[test]
    fn variation_profiles_split_the_function() {
        let f = pl(&[(0.0, 0.0), (1.0, -1.0), (2.0, 0.0)]);
        let (vp, vm) = variation_profiles(&f);
        assert_eq!(canonicalize(&vp).values(), &[0.0, 1.0]);
        assert_eq!(canonicalize(&vm).values(), &[0.0, 1.0]);
        // V+ - V- reproduces f on its grid.
        let back = add(&vp, &negate(&vm));
        assert_eq!(canonicalize(&back), canonicalize(&f));
    }

    #[test]
    fn add_merges_grids() {
        let f = pl(&[(0.0, 0.0), (2.0, 2.0)]);
        let g = pl(&[(1.0, 0.0), (3.0, -1.0)]);
        let s = add(&f, &g);
        assert_eq!(s.evaluate(2.0), 2.0 - 0.5);
        assert_eq!(s.evaluate(-5.0), 0.0);
        assert_eq!(s.evaluate(10.0), 1.0);
    }

    #[test]
    fn reparametrization_round_trips() {
        let h = Reparametrization::new(vec![(-1.0, -2.0), (1.0, 3.0)]).unwrap();
        for &t in &[-4.0, -1.0, -0.5, 0.0, 0.25, 1.0, 7.0] {
            let v = h.evaluate(t);
            assert!((h.invert(v) - t).abs() < 1e-12);
        }
        assert_eq!(Reparametrization::identity().evaluate(0.7), 0.7);
        assert!(Reparametrization::new(vec![(0.0, 0.0), (1.0, 0.0)]).is_err());
    }

    #[test]
    fn apply_reparam_preserves_profile() {
        let f = pl(&[(0.0, 0.0), (1.0, 3.0), (2.0, 1.0), (3.0, 2.0), (4.0, 0.0)]);
        let h = Reparametrization::new(vec![(0.0, 0.0), (0.5, 2.0), (1.0, 3.5)]).unwrap();
        let g = apply_reparam(&f, &h);
        let (pf, pg) = (canonicalize(&f), canonicalize(&g));
        assert_eq!(pf.values().len(), pg.values().len());
        for (a, b) in pf.values().iter().zip(pg.values()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn reverse_time_flips_profile() {
        let f = pl(&[(0.0, 0.0), (1.0, 3.0), (2.0, 1.0), (3.0, 2.0), (4.0, 0.0)]);
        let r = reverse_time(&f).unwrap();
        assert_eq!(canonicalize(&r).values(), &[0.0, 2.0, 1.0, 3.0, 0.0]);
        let open = pl(&[(0.0, 0.0), (1.0, 1.0)]);
        assert!(matches!(reverse_time(&open), Err(Error::Domain(_))));
    }

    #[test]
    fn critical_points_report_extremum_positions() {
        let f = pl(&[(0.0, 0.0), (1.0, 1.5), (2.0, 3.0), (3.0, 1.0), (4.0, 1.0)]);
        let cp = critical_points(&f);
        assert_eq!(cp, vec![(0.0, 0.0), (2.0, 3.0), (4.0, 1.0)]);
    }

    proptest! {
        // Dyadic integer-valued generators keep float arithmetic exact,
        // so structural equalities can be asserted without tolerances.
        #[test]
        fn reduce_is_idempotent(raw in proptest::collection::vec(-40i32..=40, 1..12)) {
            let mut values: Vec<f64> = raw.iter().map(|&k| k as f64 / 8.0).collect();
            values[0] = 0.0;
            let p = CriticalProfile::reduce(values).unwrap();
            let again = CriticalProfile::reduce(p.values().to_vec()).unwrap();
            prop_assert_eq!(p, again);
        }

        #[test]
        fn variation_split_matches_tail(raw in proptest::collection::vec(-40i32..=40, 1..12)) {
            let mut values: Vec<f64> = raw.iter().map(|&k| k as f64 / 8.0).collect();
            values[0] = 0.0;
            let p = CriticalProfile::reduce(values).unwrap();
            let (plus, minus) = variation_split(&p);
            let um = *p.values().last().unwrap();
            prop_assert_eq!(plus - minus, um);
            prop_assert_eq!(plus + minus, total_variation(&p));
        }

        #[test]
        fn scaling_preserves_l(raw in proptest::collection::vec(-40i32..=40, 1..12), k in 1i32..5) {
            let mut values: Vec<f64> = raw.iter().map(|&k| k as f64 / 8.0).collect();
            values[0] = 0.0;
            let p = CriticalProfile::reduce(values).unwrap();
            let f = p.representative(1.0).unwrap();
            let scaled = canonicalize(&scale(&f, k as f64));
            prop_assert_eq!(l_of(&p), l_of(&scaled));
        }
    }
}
