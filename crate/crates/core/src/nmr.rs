//! Constructors for the experimentally preparable state families given by
//! the five-angle parametrization, plus their one-angle specializations that
//! land exactly on each protocol's condition locus.

use crate::error::{Error, Result};
use crate::qmath::{c, cr, PureState};
use crate::states::{make_w_state, WBasis, WParams};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

/// Angles of the five-term preparation: four rotation angles in [0, pi/2]
/// and one relative phase in [0, 2 pi].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NmrParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub phi: f64,
}

fn check_range(name: &str, value: f64, max: f64) -> Result<()> {
    if !value.is_finite() || !(0.0..=max).contains(&value) {
        return Err(Error::Parameter(format!(
            "{name} must lie in [0, {max:.6}], got {value}"
        )));
    }
    Ok(())
}

impl NmrParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64, phi: f64) -> Result<Self> {
        check_range("alpha", alpha, FRAC_PI_2)?;
        check_range("beta", beta, FRAC_PI_2)?;
        check_range("gamma", gamma, FRAC_PI_2)?;
        check_range("delta", delta, FRAC_PI_2)?;
        check_range("phi", phi, TAU)?;
        Ok(NmrParams { alpha, beta, gamma, delta, phi })
    }
}

/// Five-term three-qubit state of the angle parametrization:
/// `cos a|000> + sin a cos b sin g|001> + sin a sin b|010> +
/// sin a cos b cos g cos d|100> + e^{i phi} sin a cos b cos g sin d|111>`.
/// Normalized by construction.
pub fn nmr_general_state(p: &NmrParams) -> PureState {
    let (sa, ca) = p.alpha.sin_cos();
    let (sb, cb) = p.beta.sin_cos();
    let (sg, cg) = p.gamma.sin_cos();
    let (sd, cd) = p.delta.sin_cos();
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    amps[0b000] = cr(ca);
    amps[0b001] = cr(sa * cb * sg);
    amps[0b010] = cr(sa * sb);
    amps[0b100] = cr(sa * cb * cg * cd);
    amps[0b111] = c(p.phi.cos(), p.phi.sin()) * cr(sa * cb * cg * sd);
    PureState::new(3, amps).expect("trig identity keeps the norm at 1")
}

/// W-class parameters reached by the preparation at `alpha = pi/2`,
/// `delta = phi = 0`: `l0 = cos b cos g, l2 = cos b sin g, l3 = sin b`.
pub fn nmr_w_params(beta: f64, gamma: f64) -> WParams {
    let (sb, cb) = beta.sin_cos();
    let (sg, cg) = gamma.sin_cos();
    WParams::new(cr(cb * cg), cr(cb * sg), cr(sb), WBasis::Resource)
        .expect("trig identity keeps the norm at 1")
}

/// The state for [`nmr_w_params`].
pub fn nmr_w_state(beta: f64, gamma: f64) -> PureState {
    make_w_state(&nmr_w_params(beta, gamma))
}

/// One-angle family sitting exactly on the deterministic scheme's condition
/// circle: `sqrt(2 cos^2 b - 1)/sqrt(2)|100> + 1/sqrt(2)|001> + sin b|010>`
/// for `b` in (0, pi/4].
pub fn nmr_ap_params(beta: f64) -> Result<WParams> {
    if !beta.is_finite() || beta <= 0.0 || beta > FRAC_PI_4 {
        return Err(Error::Parameter(format!(
            "beta must lie in (0, pi/4] so the leading radical stays real, got {beta}"
        )));
    }
    let cb = beta.cos();
    // Clamp the radicand: at beta = pi/4 it is an exact zero up to rounding.
    let l0 = ((2.0 * cb * cb - 1.0).max(0.0) / 2.0).sqrt();
    Ok(WParams::new(cr(l0), cr(std::f64::consts::FRAC_1_SQRT_2), cr(beta.sin()), WBasis::Resource)
        .expect("coefficients are normalized by construction"))
}

/// The state for [`nmr_ap_params`].
pub fn nmr_ap_family(beta: f64) -> Result<PureState> {
    Ok(make_w_state(&nmr_ap_params(beta)?))
}

/// One-angle family sitting exactly on the probabilistic scheme's condition
/// ellipse: `cos b/sqrt(2) (|100> + |001>) + sin b|010>` for `b` in
/// (0, pi/2). Success probability is `cos^2 b`, approaching 1 as `b -> 0`.
pub fn nmr_proposed_params(beta: f64) -> Result<WParams> {
    if !beta.is_finite() || beta <= 0.0 || beta >= FRAC_PI_2 {
        return Err(Error::Parameter(format!(
            "beta must lie in the open interval (0, pi/2), got {beta}"
        )));
    }
    let half = cr(beta.cos() * std::f64::consts::FRAC_1_SQRT_2);
    Ok(WParams::new(half, half, cr(beta.sin()), WBasis::Resource)
        .expect("coefficients are normalized by construction"))
}

/// The state for [`nmr_proposed_params`].
pub fn nmr_proposed_family(beta: f64) -> Result<PureState> {
    Ok(make_w_state(&nmr_proposed_params(beta)?))
}
