//! Two-sided bounds on the natural pseudo-distance between profiles.
//!
//! The pseudo-distance (the infimum over reparametrizations of the sup
//! difference) is not directly computable, but it is squeezed from both
//! sides:
//!
//! * every norm in a catalog gives a lower bound — norm values of the two
//!   inputs cannot differ by more than the weight mass times the
//!   distance;
//! * a monotone coupling of the two canonical value paths gives an upper
//!   bound — the discrete Frechet distance between variation-spaced
//!   samplings of the paths.
//!
//! Both bounds depend on the inputs only through their profiles, so the
//! whole sandwich is reparametrization invariant by construction.

use crate::norms::{standard_norm_weights, WeightSequence};
use crate::profiles::{total_variation, CriticalProfile};
use crate::{Error, Result};

/// Station count used by callers that do not pick their own refinement.
pub const DEFAULT_REFINEMENT: usize = 128;

/// Largest catalog-certified lower bound for the pseudo-distance between
/// two profiles, with the name of the certifying norm. An empty catalog
/// certifies only the trivial bound zero.
pub fn npd_lower(
    phi1: &CriticalProfile,
    phi2: &CriticalProfile,
    catalog: &[(String, WeightSequence)],
) -> Result<(f64, Option<String>)> {
    let mut best = 0.0f64;
    let mut witness = None;
    for (name, weights) in catalog {
        let gap = (standard_norm_weights(phi1, weights)
            - standard_norm_weights(phi2, weights))
        .abs();
        let bound = gap / weights.variation();
        if bound > best {
            best = bound;
            witness = Some(name.clone());
        }
    }
    Ok((best, witness))
}

/// Value stations along a profile's canonical path, spaced by variation:
/// each monotone run contributes stations proportional to its share of
/// the total variation (at least one), run endpoints always included,
/// with the resting tail value repeated twice on each side. Spacing by
/// variation rather than by time is what makes the sampling depend only
/// on the profile.
fn stations(p: &CriticalProfile, refinement: usize) -> Vec<f64> {
    let vals = p.values();
    let v = total_variation(p);
    let mut out = Vec::with_capacity(refinement + vals.len() + 4);
    out.push(vals[0]);
    out.push(vals[0]);
    out.push(vals[0]);
    for w in vals.windows(2) {
        let (a, b) = (w[0], w[1]);
        let share = if v > 0.0 {
            (refinement as f64 * (b - a).abs() / v - 1e-9).ceil() as usize
        } else {
            1
        };
        let n = share.max(1);
        for j in 1..=n {
            out.push(a + (b - a) * (j as f64 / n as f64));
        }
    }
    let last = *out.last().unwrap();
    out.push(last);
    out.push(last);
    out
}

/// Discrete Frechet distance between two value sequences: the cheapest
/// monotone coupling that visits every element of both, costed by the
/// worst paired difference.
fn discrete_frechet(a: &[f64], b: &[f64]) -> f64 {
    let mut prev = vec![0.0f64; b.len()];
    let mut row = vec![0.0f64; b.len()];
    for (i, &av) in a.iter().enumerate() {
        for (j, &bv) in b.iter().enumerate() {
            let cost = (av - bv).abs();
            let reach = if i == 0 && j == 0 {
                cost
            } else if i == 0 {
                row[j - 1].max(cost)
            } else if j == 0 {
                prev[j].max(cost)
            } else {
                prev[j].min(prev[j - 1]).min(row[j - 1]).max(cost)
            };
            row[j] = reach;
        }
        std::mem::swap(&mut prev, &mut row);
    }
    prev[b.len() - 1]
}

/// Coupling upper bound for the pseudo-distance between two profiles at
/// the given refinement. Finer refinements tighten the bound on distinct
/// profiles; equal profiles give zero at every refinement.
pub fn npd_upper(
    phi1: &CriticalProfile,
    phi2: &CriticalProfile,
    refinement: usize,
) -> Result<f64> {
    if refinement == 0 {
        return Err(Error::InvalidInput("refinement must be at least 1".into()));
    }
    let a = stations(phi1, refinement);
    let b = stations(phi2, refinement);
    if (a.len() as u128) * (b.len() as u128) > 200_000_000 {
        return Err(Error::Capacity(format!(
            "coupling table {} x {} exceeds the supported size",
            a.len(),
            b.len()
        )));
    }
    Ok(discrete_frechet(&a, &b))
}

/// Both bounds side by side, with the catalog witness for the lower one.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceSandwich {
    pub lower: f64,
    pub upper: f64,
    pub refinement: usize,
    pub witness_psi: Option<String>,
}

/// Computes the full sandwich: catalog lower bound, coupling upper bound.
pub fn sandwich(
    phi1: &CriticalProfile,
    phi2: &CriticalProfile,
    refinement: usize,
    catalog: &[(String, WeightSequence)],
) -> Result<DistanceSandwich> {
    let (lower, witness_psi) = npd_lower(phi1, phi2, catalog)?;
    let upper = npd_upper(phi1, phi2, refinement)?;
    Ok(DistanceSandwich { lower, upper, refinement, witness_psi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::standard_catalog;
    use crate::profiles::{apply_reparam, canonicalize, Reparametrization};
    use proptest::prelude::*;

    fn profile(values: &[f64]) -> CriticalProfile {
        CriticalProfile::new(values.to_vec()).unwrap()
    }

    #[test]
    fn bumps_of_different_heights() {
        let a = profile(&[0.0, 3.0, 0.0]);
        let b = profile(&[0.0, 5.0, 0.0]);
        let s = sandwich(&a, &b, 16, &standard_catalog()).unwrap();
        assert_eq!(s.lower, 2.0);
        assert_eq!(s.upper, 2.0);
        assert_eq!(s.witness_psi.as_deref(), Some("S"));
        assert_eq!(npd_upper(&a, &b, 512).unwrap(), 2.0);
    }

    #[test]
    fn distance_to_zero_is_the_height() {
        let z = CriticalProfile::zero();
        let b = profile(&[0.0, 5.0, 0.0]);
        let s = sandwich(&z, &b, 32, &standard_catalog()).unwrap();
        assert_eq!(s.lower, 5.0);
        assert_eq!(s.upper, 5.0);
    }

    #[test]
    fn small_catalog_lower_bound() {
        let a = profile(&[0.0, 3.0, 1.0, 2.0, 0.0]);
        let b = profile(&[0.0, 3.0, 0.0]);
        let catalog: Vec<(String, WeightSequence)> = vec![
            ("S".into(), crate::norms::s_weights()),
            ("Lambda".into(), crate::norms::lambda_weights()),
            ("S_3".into(), crate::norms::sn_weights(3).unwrap()),
        ];
        let (lower, witness) = npd_lower(&a, &b, &catalog).unwrap();
        assert!((lower - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(witness.as_deref(), Some("S_3"));
    }

    #[test]
    fn empty_catalog_certifies_zero() {
        let a = profile(&[0.0, 3.0, 0.0]);
        let b = profile(&[0.0, 5.0, 0.0]);
        assert_eq!(npd_lower(&a, &b, &[]).unwrap(), (0.0, None));
    }

    #[test]
    fn upper_bound_is_reparametrization_invariant() {
        let f = profile(&[0.0, 3.0, 1.0, 2.0, 0.0]).representative(1.0).unwrap();
        let h = Reparametrization::new(vec![
            (-1.0, 0.0),
            (0.5, 1.2),
            (2.0, 2.5),
            (4.0, 4.0),
        ])
        .unwrap();
        let g = apply_reparam(&f, &h);
        let s = sandwich(&canonicalize(&f), &canonicalize(&g), 512, &standard_catalog())
            .unwrap();
        assert!(s.upper <= 1e-6, "upper = {}", s.upper);
        assert!(s.lower <= 1e-6, "lower = {}", s.lower);
    }

    #[test]
    fn rejects_zero_refinement() {
        let a = profile(&[0.0, 3.0, 0.0]);
        assert!(npd_upper(&a, &a, 0).is_err());
    }

    fn dyadic_profile_strategy() -> impl Strategy<Value = CriticalProfile> {
        proptest::collection::vec((1u8..=24, proptest::bool::ANY), 1..=5).prop_filter_map(
            "walk must reduce to a valid profile",
            |steps| {
                let mut values = vec![0.0f64];
                let mut level = 0.0f64;
                let mut dir = 1.0f64;
                for (mag, close) in steps {
                    level += dir * f64::from(mag) / 8.0;
                    values.push(level);
                    dir = -dir;
                    if close {
                        values.push(0.0);
                        level = 0.0;
                    }
                }
                values.push(0.0);
                CriticalProfile::reduce(values).ok()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn sandwich_orders_and_symmetry(
            a in dyadic_profile_strategy(),
            b in dyadic_profile_strategy(),
        ) {
            let catalog = standard_catalog();
            let s = sandwich(&a, &b, 64, &catalog).unwrap();
            prop_assert!(s.lower <= s.upper + 1e-12, "{} > {}", s.lower, s.upper);
            let t = sandwich(&b, &a, 64, &catalog).unwrap();
            prop_assert!((s.lower - t.lower).abs() <= 1e-12);
            prop_assert!((s.upper - t.upper).abs() <= 1e-12);
            prop_assert_eq!(sandwich(&a, &a, 64, &catalog).unwrap().upper, 0.0);
        }

        #[test]
        fn upper_bound_triangle_inequality(
            a in dyadic_profile_strategy(),
            b in dyadic_profile_strategy(),
            c in dyadic_profile_strategy(),
        ) {
            let ab = npd_upper(&a, &b, 48).unwrap();
            let bc = npd_upper(&b, &c, 48).unwrap();
            let ac = npd_upper(&a, &c, 48).unwrap();
            prop_assert!(ac <= ab + bc + 1e-12, "{ac} > {ab} + {bc}");
        }
    }
}
