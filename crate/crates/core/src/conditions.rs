//! Teleportability conditions for both schemes, their concurrence-form
//! restatements, and the geometric picture: parameter moduli (u, v) lie on a
//! circle for the deterministic scheme and on an ellipse for the
//! probabilistic one. Includes the perimeter comparison between the two
//! loci.

use crate::entanglement::ConcurrenceTriple;
use crate::error::{Error, Result};
use crate::protocols::Protocol;
use crate::states::{params_from_concurrences_ap, WParams};
use serde::Serialize;

/// Default |residual| below which a condition counts as satisfied.
pub const CONDITION_TOLERANCE: f64 = 1e-9;

/// Moduli of the first and third resource parameters, the coordinates the
/// condition loci live in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometryPoint {
    pub u: f64,
    pub v: f64,
}

impl GeometryPoint {
    pub fn from_params(params: &WParams) -> Self {
        let [m0, _, m3] = params.moduli();
        GeometryPoint { u: m0, v: m3 }
    }
}

/// Where a parameter point sits relative to its scheme's condition locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    On,
    Inside,
    Outside,
}

/// Outcome of a condition check. `satisfied` iff |residual| < tolerance iff
/// `geometry == On`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionVerdict {
    pub protocol: Protocol,
    pub satisfied: bool,
    pub residual: f64,
    pub geometry: Geometry,
    pub success_probability: f64,
}

fn classify(residual: f64, tolerance: f64, inside_when_negative: bool) -> (bool, Geometry) {
    if residual.abs() < tolerance {
        (true, Geometry::On)
    } else if (residual < 0.0) == inside_when_negative {
        (false, Geometry::Inside)
    } else {
        (false, Geometry::Outside)
    }
}

/// Perfect-teleportation condition for the deterministic scheme:
/// `|l0|^2 + |l3|^2 = |l2|^2`, i.e. `u^2 + v^2 = 1/2`, a circle of radius
/// `1/sqrt(2)`. Success probability is 1 exactly when the condition holds.
pub fn check_ap_condition(params: &WParams) -> ConditionVerdict {
    check_ap_condition_with_tolerance(params, CONDITION_TOLERANCE)
}

pub fn check_ap_condition_with_tolerance(params: &WParams, tolerance: f64) -> ConditionVerdict {
    let [m0, m2, m3] = params.moduli();
    let residual = m0 * m0 + m3 * m3 - m2 * m2;
    let (satisfied, geometry) = classify(residual, tolerance, true);
    ConditionVerdict {
        protocol: Protocol::Ap,
        satisfied,
        residual,
        geometry,
        success_probability: if satisfied { 1.0 } else { 0.0 },
    }
}

/// Orthogonality condition for the probabilistic scheme: `|l0| = |l2|`,
/// i.e. `2u^2 + v^2 = 1`, an ellipse with semi-axes `1/sqrt(2)` and 1.
/// Success probability is `|l0|^2 + |l2|^2` whether or not the condition
/// holds.
pub fn check_proposed_condition(params: &WParams) -> ConditionVerdict {
    check_proposed_condition_with_tolerance(params, CONDITION_TOLERANCE)
}

pub fn check_proposed_condition_with_tolerance(
    params: &WParams,
    tolerance: f64,
) -> ConditionVerdict {
    let [m0, m2, _] = params.moduli();
    let residual = m0 * m0 - m2 * m2;
    let (satisfied, geometry) = classify(residual, tolerance, true);
    ConditionVerdict {
        protocol: Protocol::Proposed,
        satisfied,
        residual,
        geometry,
        success_probability: m0 * m0 + m2 * m2,
    }
}

/// Concurrence-form verdict for the deterministic scheme, with the extra
/// facts the inequality chain provides.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcurrenceConditionReport {
    pub verdict: ConditionVerdict,
    /// Whether `C_AB^2 <= C_BC * C_AC / 2` holds.
    pub bound_holds: bool,
    /// Whether the equality case `C_AB^2 = C_AC^2 / 2 = C_BC^2 / 2` holds.
    pub equality_case: bool,
    /// Parameters recovered from the triple when the equality case holds.
    pub equality_params: Option<WParams>,
}

/// Restates the deterministic-scheme condition on a concurrence triple:
/// `1/C_AB^2 = 1/C_BC^2 + 1/C_AC^2` (equivalently, `C_AB^2` is half the
/// harmonic mean of `C_BC^2` and `C_AC^2`).
pub fn check_ap_concurrence_condition(c: &ConcurrenceTriple) -> Result<ConcurrenceConditionReport> {
    check_ap_concurrence_condition_with_tolerance(c, CONDITION_TOLERANCE)
}

pub fn check_ap_concurrence_condition_with_tolerance(
    c: &ConcurrenceTriple,
    tolerance: f64,
) -> Result<ConcurrenceConditionReport> {
    for (name, value) in [("C_AB", c.cab), ("C_BC", c.cbc), ("C_AC", c.cac)] {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::Parameter(format!(
                "{name} must be positive and finite for the concurrence-form check, got {value}"
            )));
        }
    }
    let residual = 1.0 / (c.cab * c.cab) - 1.0 / (c.cbc * c.cbc) - 1.0 / (c.cac * c.cac);
    // Larger C_AB than the condition allows means a smaller leading term, a
    // negative residual, and a parameter point outside the circle.
    let (satisfied, geometry) = classify(residual, tolerance, false);
    let bound_holds = c.cab * c.cab <= 0.5 * c.cbc * c.cac + tolerance;
    let equality_case = (c.cab * c.cab - 0.5 * c.cac * c.cac).abs() < tolerance
        && (c.cab * c.cab - 0.5 * c.cbc * c.cbc).abs() < tolerance;
    let equality_params = if equality_case {
        params_from_concurrences_ap(c.cab, c.cbc, c.cac).ok()
    } else {
        None
    };
    Ok(ConcurrenceConditionReport {
        verdict: ConditionVerdict {
            protocol: Protocol::Ap,
            satisfied,
            residual,
            geometry,
            success_probability: if satisfied { 1.0 } else { 0.0 },
        },
        bound_holds,
        equality_case,
        equality_params,
    })
}

/// Restates the probabilistic-scheme condition on a concurrence triple:
/// `C_AB = C_BC`. Success probability follows the pair-ratio recovery
/// `2 C_AC^2 / (2 C_AC^2 + C_AB^2)`; a triple of zeros carries no scale
/// information and reports 0.
pub fn check_proposed_concurrence_condition(c: &ConcurrenceTriple) -> ConditionVerdict {
    check_proposed_concurrence_condition_with_tolerance(c, CONDITION_TOLERANCE)
}

pub fn check_proposed_concurrence_condition_with_tolerance(
    c: &ConcurrenceTriple,
    tolerance: f64,
) -> ConditionVerdict {
    // C_AB - C_BC = 2 |l3| (|l0| - |l2|) carries the sign of the
    // parameter-form residual |l0|^2 - |l2|^2, so inside is negative here
    // too.
    let residual = c.cab - c.cbc;
    let (satisfied, geometry) = classify(residual, tolerance, true);
    let denom = 2.0 * c.cac * c.cac + c.cab * c.cab;
    let success_probability = if denom > 0.0 { 2.0 * c.cac * c.cac / denom } else { 0.0 };
    ConditionVerdict {
        protocol: Protocol::Proposed,
        satisfied,
        residual,
        geometry,
        success_probability,
    }
}

/// Standard harmonic mean `2xy / (x + y)`; zero when both inputs are zero.
pub fn harmonic_mean(x: f64, y: f64) -> f64 {
    if x + y == 0.0 {
        0.0
    } else {
        2.0 * x * y / (x + y)
    }
}

/// Perimeters of the two condition loci.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerimeterComparison {
    /// Circumference of the circle `u^2 + v^2 = 1/2`: exactly `sqrt(2) pi`.
    pub circle: f64,
    /// The figure quoted for the ellipse, `sqrt(3) pi`, which matches the
    /// approximation `2 pi sqrt((a^2 + b^2)/2)`.
    pub ellipse_paper: f64,
    /// Arc length of the ellipse `2u^2 + v^2 = 1` by adaptive quadrature,
    /// accurate to 1e-8.
    pub ellipse_numeric: f64,
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(a, fa, m, fm, flm);
        let right = simpson(m, fm, b, fb, frm);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, flm, left, tol / 2.0, depth - 1)
                + recurse(f, m, fm, b, fb, frm, right, tol / 2.0, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson(a, fa, b, fb, fm);
    recurse(f, a, fa, b, fb, fm, whole, tol, 40)
}

pub fn perimeter_comparison() -> PerimeterComparison {
    use std::f64::consts::PI;
    let (a, b) = (std::f64::consts::FRAC_1_SQRT_2, 1.0);
    // Quarter arc of u = a cos t, v = b sin t, scaled by 4.
    let speed =
        move |t: f64| (a * a * t.sin() * t.sin() + b * b * t.cos() * t.cos()).sqrt();
    PerimeterComparison {
        circle: 2.0f64.sqrt() * PI,
        ellipse_paper: 3.0f64.sqrt() * PI,
        ellipse_numeric: 4.0 * adaptive_simpson(&speed, 0.0, PI / 2.0, 2.5e-9),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::concurrence_closed_form;
    use crate::qmath::cr;
    use crate::states::{ap_family, proposed_family, FamilyParameter, WBasis};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn rparams(l0: f64, l2: f64, l3: f64) -> WParams {
        WParams::new(cr(l0), cr(l2), cr(l3), WBasis::Resource).unwrap()
    }

    #[test]
    fn deterministic_condition_examples() {
        let on = check_ap_condition(&rparams(0.5, FRAC_1_SQRT_2, 0.5));
        assert!(on.satisfied);
        assert_eq!(on.geometry, Geometry::On);
        assert_eq!(on.success_probability, 1.0);

        let even = 1.0 / 3.0f64.sqrt();
        let outside = check_ap_condition(&rparams(even, even, even));
        assert!(!outside.satisfied);
        assert!((outside.residual - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(outside.geometry, Geometry::Outside);

        let center = check_ap_condition(&rparams(0.0, 1.0, 0.0));
        assert_eq!(center.geometry, Geometry::Inside);
        assert_eq!(center.success_probability, 0.0);

        let point = GeometryPoint::from_params(&rparams(0.5, FRAC_1_SQRT_2, 0.5));
        assert!((point.u * point.u + point.v * point.v - 0.5).abs() < 1e-12);
    }

    #[test]
    fn probabilistic_condition_examples() {
        let family = proposed_family(&FamilyParameter::new(99.0)).unwrap();
        let on = check_proposed_condition(&family);
        assert!(on.satisfied);
        assert_eq!(on.geometry, Geometry::On);
        assert!((on.success_probability - 0.99).abs() < 1e-12);

        let off = check_proposed_condition(&rparams(0.5, FRAC_1_SQRT_2, 0.5));
        assert!(!off.satisfied);
        assert!((off.residual + 0.25).abs() < 1e-12);
        assert_eq!(off.geometry, Geometry::Inside);
        assert!((off.success_probability - 0.75).abs() < 1e-12);

        let degenerate = check_proposed_condition(&rparams(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0));
        assert!(degenerate.satisfied);
        assert_eq!(degenerate.geometry, Geometry::On);
        assert!((degenerate.success_probability - 1.0).abs() < 1e-12);
    }

    #[test]
    fn concurrence_form_matches_parameter_form() {
        let equality = ConcurrenceTriple { cab: 0.5, cbc: FRAC_1_SQRT_2, cac: FRAC_1_SQRT_2 };
        let report = check_ap_concurrence_condition(&equality).unwrap();
        assert!(report.verdict.satisfied);
        assert!(report.bound_holds);
        assert!(report.equality_case);
        let recovered = report.equality_params.unwrap();
        let [m0, m2, m3] = recovered.moduli();
        assert!((m0 - 0.5).abs() < 1e-12);
        assert!((m2 - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((m3 - 0.5).abs() < 1e-12);

        let family = ap_family(&FamilyParameter::new(2.0)).unwrap();
        let triple = concurrence_closed_form(&family);
        let round_trip = check_ap_concurrence_condition(&triple).unwrap();
        assert!(round_trip.verdict.satisfied);

        let wrong = ConcurrenceTriple { cab: 0.9, cbc: 0.3, cac: 0.3 };
        let verdict = check_ap_concurrence_condition(&wrong).unwrap();
        assert!(!verdict.verdict.satisfied);
        assert!(!verdict.bound_holds);

        let zero = ConcurrenceTriple { cab: 0.0, cbc: 0.3, cac: 0.3 };
        assert!(check_ap_concurrence_condition(&zero).is_err());
    }

    #[test]
    fn concurrence_form_for_the_probabilistic_scheme() {
        let family = proposed_family(&FamilyParameter::new(5.0)).unwrap();
        let triple = concurrence_closed_form(&family);
        let verdict = check_proposed_concurrence_condition(&triple);
        assert!(verdict.satisfied);
        assert!((verdict.success_probability - 5.0 / 6.0).abs() < 1e-12);

        let off = check_proposed_concurrence_condition(&ConcurrenceTriple {
            cab: 0.5,
            cbc: FRAC_1_SQRT_2,
            cac: FRAC_1_SQRT_2,
        });
        assert!(!off.satisfied);

        let trivial =
            check_proposed_concurrence_condition(&ConcurrenceTriple { cab: 0.0, cbc: 0.0, cac: 0.4 });
        assert!(trivial.satisfied);
        assert!((trivial.success_probability - 1.0).abs() < 1e-12);
    }

    #[test]
    fn condition_residuals_agree_between_forms() {
        // The concurrence-form residual is exactly
        // -(parameter residual) / (4 m0^2 m2^2 m3^2), so verdicts agree.
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..300 {
            let a = 0.05 + 0.9 * next();
            let b = 0.05 + 0.9 * next();
            let d = 0.05 + 0.9 * next();
            let norm = (a * a + b * b + d * d).sqrt();
            let params = rparams(a / norm, b / norm, d / norm);
            let pv = check_ap_condition(&params);
            let cv = check_ap_concurrence_condition(&concurrence_closed_form(&params)).unwrap();
            if pv.residual.abs() > 1e-6 {
                assert_eq!(pv.satisfied, cv.verdict.satisfied);
                assert_eq!(pv.geometry, cv.verdict.geometry);
            }
        }
        for n in [0.05, 0.7, 3.0, 40.0] {
            let params = ap_family(&FamilyParameter::new(n)).unwrap();
            let pv = check_ap_condition(&params);
            let cv = check_ap_concurrence_condition(&concurrence_closed_form(&params)).unwrap();
            assert!(pv.satisfied && cv.verdict.satisfied);
            assert_eq!(cv.verdict.geometry, Geometry::On);
        }
    }

    #[test]
    fn harmonic_mean_restates_the_condition() {
        assert_eq!(harmonic_mean(0.0, 0.0), 0.0);
        assert!((harmonic_mean(2.0, 2.0) - 2.0).abs() < 1e-15);
        // C_AB^2 = H(C_BC^2, C_AC^2) / 2 is the same statement as the
        // reciprocal-sum condition.
        let (cbc, cac) = (0.8f64, 0.55f64);
        let cab2 = 0.5 * harmonic_mean(cbc * cbc, cac * cac);
        let triple = ConcurrenceTriple { cab: cab2.sqrt(), cbc, cac };
        let report = check_ap_concurrence_condition(&triple).unwrap();
        assert!(report.verdict.satisfied);
        assert!(report.bound_holds);
    }

    #[test]
    fn perimeters_match_frozen_references() {
        let p = perimeter_comparison();
        assert!((p.circle - 4.442882938158366).abs() < 1e-12);
        assert!((p.ellipse_paper - 5.441398092702654).abs() < 1e-12);
        // Complete elliptic integral value 4 E(1/2) for semi-axes 1/sqrt(2)
        // and 1.
        assert!((p.ellipse_numeric - 5.402575524190702).abs() < 1e-8);
        assert!(p.ellipse_numeric > p.circle);
    }
}
