//! State constructors: the input qubit, W-class resource states in both basis
//! conventions, the five-term canonical form, and the two one-parameter
//! resource families, plus reconstruction of parameters from concurrences.

use crate::error::{Error, Result};
use crate::qmath::{cr, vec_norm_sqr, PureState, NORM_TOLERANCE};
use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::f64::consts::FRAC_1_SQRT_2;

/// The unknown single-qubit state to be teleported, `alpha|0> + beta|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputQubit {
    alpha: Complex64,
    beta: Complex64,
}

impl InputQubit {
    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// Accepts any nonzero amplitude pair and rescales it to unit norm.
    pub fn normalized(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let state = PureState::normalized(1, vec![alpha, beta])?;
        Ok(Self { alpha: state.amplitude(0), beta: state.amplitude(1) })
    }

    pub fn to_state(&self) -> PureState {
        PureState::normalized(1, vec![self.alpha, self.beta]).expect("qubit is normalized")
    }
}

impl Serialize for InputQubit {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("InputQubit", 2)?;
        s.serialize_field("alpha", &[self.alpha.re, self.alpha.im])?;
        s.serialize_field("beta", &[self.beta.re, self.beta.im])?;
        s.end()
    }
}

/// Builds the input qubit, renormalizing drift up to the accepted tolerance
/// and rejecting anything further out.
pub fn make_input_qubit(alpha: Complex64, beta: Complex64) -> Result<InputQubit> {
    let state = PureState::new(1, vec![alpha, beta])?;
    Ok(InputQubit { alpha: state.amplitude(0), beta: state.amplitude(1) })
}

/// Which ket placement a `WParams` triple refers to.
///
/// The same `(lambda0, lambda2, lambda3)` triple names two different vectors:
/// `Resource` places them on `|100>, |001>, |010>` and `Canonical` on
/// `|000>, |101>, |110>`. A local flip of the first qubit maps one placement
/// onto the other with the triple unchanged, so all moduli-based quantities
/// agree between the two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WBasis {
    Resource,
    Canonical,
}

/// Parameters of a W-class state, tagged with their basis convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WParams {
    lambda0: Complex64,
    lambda2: Complex64,
    lambda3: Complex64,
    basis: WBasis,
}

impl WParams {
    /// Validates `|l0|^2+|l2|^2+|l3|^2 = 1` up to the accepted drift and
    /// renormalizes exactly.
    pub fn new(l0: Complex64, l2: Complex64, l3: Complex64, basis: WBasis) -> Result<Self> {
        let amps = [l0, l2, l3];
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm_sqr = vec_norm_sqr(&amps);
        if norm_sqr == 0.0 {
            return Err(Error::ZeroVector);
        }
        let deviation = (norm_sqr.sqrt() - 1.0).abs();
        if deviation > NORM_TOLERANCE {
            return Err(Error::Normalization { deviation });
        }
        Ok(Self::rescaled(l0, l2, l3, norm_sqr.sqrt(), basis))
    }

    /// Accepts any nonzero triple and rescales it to unit norm.
    pub fn normalized(l0: Complex64, l2: Complex64, l3: Complex64, basis: WBasis) -> Result<Self> {
        let amps = [l0, l2, l3];
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm_sqr = vec_norm_sqr(&amps);
        if norm_sqr == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(Self::rescaled(l0, l2, l3, norm_sqr.sqrt(), basis))
    }

    fn rescaled(l0: Complex64, l2: Complex64, l3: Complex64, norm: f64, basis: WBasis) -> Self {
        Self { lambda0: l0 / norm, lambda2: l2 / norm, lambda3: l3 / norm, basis }
    }

    pub fn lambda0(&self) -> Complex64 {
        self.lambda0
    }

    pub fn lambda2(&self) -> Complex64 {
        self.lambda2
    }

    pub fn lambda3(&self) -> Complex64 {
        self.lambda3
    }

    pub fn basis(&self) -> WBasis {
        self.basis
    }

    /// `(|lambda0|, |lambda2|, |lambda3|)`; identical in both bases.
    pub fn moduli(&self) -> [f64; 3] {
        [self.lambda0.norm(), self.lambda2.norm(), self.lambda3.norm()]
    }

    /// Same triple under the other basis tag. Valid because the two placements
    /// are related by a local flip of the first qubit that carries each
    /// coefficient along unchanged.
    pub fn in_basis(&self, basis: WBasis) -> Self {
        Self { basis, ..*self }
    }
}

impl Serialize for WParams {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("WParams", 4)?;
        s.serialize_field("lambda0", &[self.lambda0.re, self.lambda0.im])?;
        s.serialize_field("lambda2", &[self.lambda2.re, self.lambda2.im])?;
        s.serialize_field("lambda3", &[self.lambda3.re, self.lambda3.im])?;
        s.serialize_field("basis", &self.basis)?;
        s.end()
    }
}

/// Three-qubit state for the given parameters and basis placement.
pub fn make_w_state(params: &WParams) -> PureState {
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    match params.basis {
        WBasis::Resource => {
            amps[0b100] = params.lambda0;
            amps[0b001] = params.lambda2;
            amps[0b010] = params.lambda3;
        }
        WBasis::Canonical => {
            amps[0b000] = params.lambda0;
            amps[0b101] = params.lambda2;
            amps[0b110] = params.lambda3;
        }
    }
    PureState::normalized(3, amps).expect("params are normalized")
}

/// Five-term canonical three-qubit form: nonnegative weights on
/// `|000>, |100>, |101>, |110>, |111>` with one relative phase on `|100>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CanonicalParams {
    pub lambda0: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub lambda4: f64,
    pub phi: f64,
}

impl CanonicalParams {
    pub fn new(weights: [f64; 5], phi: f64) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) || !phi.is_finite() {
            return Err(Error::Parameter("canonical weights must be finite and nonnegative".into()));
        }
        let norm_sqr: f64 = weights.iter().map(|w| w * w).sum();
        if norm_sqr == 0.0 {
            return Err(Error::ZeroVector);
        }
        let deviation = (norm_sqr.sqrt() - 1.0).abs();
        if deviation > NORM_TOLERANCE {
            return Err(Error::Normalization { deviation });
        }
        let n = norm_sqr.sqrt();
        let [l0, l1, l2, l3, l4] = weights;
        Ok(Self {
            lambda0: l0 / n,
            lambda1: l1 / n,
            lambda2: l2 / n,
            lambda3: l3 / n,
            lambda4: l4 / n,
            phi: phi.rem_euclid(std::f64::consts::TAU),
        })
    }

    /// W-class slice of the canonical form (`lambda1 = lambda4 = 0`).
    pub fn w_class(l0: f64, l2: f64, l3: f64) -> Result<Self> {
        Self::new([l0, 0.0, l2, l3, 0.0], 0.0)
    }

    pub fn to_state(&self) -> PureState {
        let mut amps = vec![Complex64::new(0.0, 0.0); 8];
        amps[0b000] = cr(self.lambda0);
        amps[0b100] = Complex64::from_polar(self.lambda1, self.phi);
        amps[0b101] = cr(self.lambda2);
        amps[0b110] = cr(self.lambda3);
        amps[0b111] = cr(self.lambda4);
        PureState::normalized(3, amps).expect("params are normalized")
    }
}

/// Flips the first qubit (`sigma_x (x) I (x) I`), the local operation mapping
/// the canonical W-class placement onto the resource placement and back.
pub fn canonical_to_resource(state: &PureState) -> Result<PureState> {
    if state.num_qubits() != 3 {
        return Err(Error::QubitCount { expected: 3, actual: state.num_qubits() });
    }
    let mut amps = state.amplitudes().to_vec();
    for i in 0..4 {
        amps.swap(i, i | 0b100);
    }
    PureState::normalized(3, amps)
}

/// One real family knob plus two optional phases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyParameter {
    pub value: f64,
    pub phase1: f64,
    pub phase2: f64,
}

impl FamilyParameter {
    pub fn new(value: f64) -> Self {
        Self { value, phase1: 0.0, phase2: 0.0 }
    }

    pub fn with_phases(value: f64, phase1: f64, phase2: f64) -> Self {
        Self { value, phase1, phase2 }
    }

    fn validated(&self, knob: &str) -> Result<f64> {
        if !self.value.is_finite() || self.value < 0.0 {
            return Err(Error::Parameter(format!("{knob} must be finite and >= 0, got {}", self.value)));
        }
        if !self.phase1.is_finite() || !self.phase2.is_finite() {
            return Err(Error::Parameter(format!("{knob}-family phases must be finite")));
        }
        Ok(self.value)
    }
}

/// Resource family for the three-qubit-measurement protocol:
/// `lambda0 = e^{i phase1}/sqrt(2+2n)`, `lambda2 = 1/sqrt(2)`,
/// `lambda3 = sqrt(n) e^{i phase2}/sqrt(2+2n)`. Every member satisfies
/// `|lambda0|^2 + |lambda3|^2 = |lambda2|^2`.
pub fn ap_family(n: &FamilyParameter) -> Result<WParams> {
    let value = n.validated("n")?;
    let denom = (2.0 + 2.0 * value).sqrt();
    WParams::new(
        Complex64::from_polar(1.0 / denom, n.phase1),
        cr(FRAC_1_SQRT_2),
        Complex64::from_polar(value.sqrt() / denom, n.phase2),
        WBasis::Resource,
    )
}

/// Resource family for the two-qubit-measurement protocol:
/// `|lambda0| = |lambda2| = sqrt(m/(2+2m))`, `|lambda3| = sqrt(2/(2+2m))`.
/// Every member satisfies `|lambda0|^2 = |lambda2|^2`, and its first-branch
/// probability `|lambda0|^2 + |lambda2|^2` equals `m/(m+1)`.
pub fn proposed_family(m: &FamilyParameter) -> Result<WParams> {
    let value = m.validated("m")?;
    let denom = (2.0 + 2.0 * value).sqrt();
    WParams::new(
        Complex64::from_polar(value.sqrt() / denom, m.phase1),
        cr(value.sqrt() / denom),
        Complex64::from_polar(std::f64::consts::SQRT_2 / denom, m.phase2),
        WBasis::Resource,
    )
}

const CONSISTENCY_TOLERANCE: f64 = 1e-9;

/// Recovers canonical-basis parameters from a concurrence triple under the
/// convention `lambda2 = 1/sqrt(2)`:
/// `lambda0 = C_AB/(sqrt(2) C_BC)`, `lambda3 = C_AB/(sqrt(2) C_AC)`.
///
/// A triple is accepted only if the reconstruction is exact: the parameters
/// must normalize and reproduce the given triple, which pins the feasible set
/// to `C_AB = C_BC * C_AC` with `C_BC^2 + C_AC^2 = 1`.
pub fn params_from_concurrences_ap(cab: f64, cbc: f64, cac: f64) -> Result<WParams> {
    for (name, value) in [("C_AB", cab), ("C_BC", cbc), ("C_AC", cac)] {
        if !value.is_finite() || value <= 0.0 || value > 1.0 + 1e-12 {
            return Err(Error::Parameter(format!("{name} must lie in (0, 1], got {value}")));
        }
    }
    let l0 = cab / (std::f64::consts::SQRT_2 * cbc);
    let l3 = cab / (std::f64::consts::SQRT_2 * cac);
    let norm_sqr = l0 * l0 + 0.5 + l3 * l3;
    let deviation = (norm_sqr.sqrt() - 1.0).abs();
    if deviation > CONSISTENCY_TOLERANCE {
        return Err(Error::InconsistentConcurrences(format!(
            "triple ({cab}, {cbc}, {cac}) gives norm deviation {deviation:.3e}"
        )));
    }
    let params =
        WParams::new(cr(l0), cr(FRAC_1_SQRT_2), cr(l3), WBasis::Canonical)?;
    let [m0, m2, m3] = params.moduli();
    let implied = [2.0 * m0 * m3, 2.0 * m2 * m3, 2.0 * m0 * m2];
    let worst = [(implied[0] - cab).abs(), (implied[1] - cbc).abs(), (implied[2] - cac).abs()]
        .into_iter()
        .fold(0.0f64, f64::max);
    if worst > CONSISTENCY_TOLERANCE {
        return Err(Error::InconsistentConcurrences(format!(
            "triple ({cab}, {cbc}, {cac}) is not reproduced by its reconstruction (off by {worst:.3e})"
        )));
    }
    Ok(params)
}

/// Recovers canonical-basis parameters from `(C_AB, C_AC)` under the equal-pair
/// convention: `lambda0^2 = lambda2^2 = C_AC^2/(2 C_AC^2 + C_AB^2)` and
/// `lambda3^2 = C_AB^2/(2 C_AC^2 + C_AB^2)`.
///
/// Only the ratio of the two inputs is recoverable; the returned parameters
/// reproduce `(C_AB, C_AC)` up to one common scale factor, so callers should
/// read back the actual triple rather than assume the inputs verbatim.
pub fn params_from_concurrences_proposed(cab: f64, cac: f64) -> Result<WParams> {
    if !cab.is_finite() || cab < 0.0 {
        return Err(Error::Parameter(format!("C_AB must be finite and >= 0, got {cab}")));
    }
    if !cac.is_finite() || cac <= 0.0 {
        return Err(Error::Parameter(format!("C_AC must be finite and > 0, got {cac}")));
    }
    let denom = 2.0 * cac * cac + cab * cab;
    let l0 = (cac * cac / denom).sqrt();
    let l3 = (cab * cab / denom).sqrt();
    WParams::new(cr(l0), cr(l0), cr(l3), WBasis::Canonical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::c;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::TAU;

    #[test]
    fn input_qubit_examples() {
        let zero = make_input_qubit(cr(1.0), cr(0.0)).unwrap();
        assert_eq!(zero.to_state().amplitude(0), cr(1.0));
        let plus = make_input_qubit(cr(FRAC_1_SQRT_2), cr(FRAC_1_SQRT_2)).unwrap();
        assert!((plus.alpha().re - FRAC_1_SQRT_2).abs() < 1e-15);
        let q = make_input_qubit(cr(0.6), c(0.0, 0.8)).unwrap();
        assert!((q.alpha().norm_sqr() + q.beta().norm_sqr() - 1.0).abs() < 1e-15);
        assert!(make_input_qubit(cr(0.0), cr(0.0)).is_err());
        assert!(matches!(
            make_input_qubit(cr(0.6), cr(0.9)),
            Err(Error::Normalization { .. })
        ));
    }

    #[test]
    fn w_state_placement_resource_and_canonical() {
        let p = WParams::new(cr(0.5), cr(FRAC_1_SQRT_2), cr(0.5), WBasis::Resource).unwrap();
        let s = make_w_state(&p);
        assert!((s.amplitude(0b100).re - 0.5).abs() < 1e-15);
        assert!((s.amplitude(0b001).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s.amplitude(0b010).re - 0.5).abs() < 1e-15);

        let canon = make_w_state(&p.in_basis(WBasis::Canonical));
        assert!((canon.amplitude(0b000).re - 0.5).abs() < 1e-15);
        assert!((canon.amplitude(0b101).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((canon.amplitude(0b110).re - 0.5).abs() < 1e-15);

        let center = WParams::new(cr(0.0), cr(1.0), cr(0.0), WBasis::Resource).unwrap();
        assert_eq!(make_w_state(&center).amplitude(0b001), cr(1.0));
    }

    #[test]
    fn canonical_to_resource_matches_and_involutes() {
        let p = WParams::new(cr(0.5), cr(FRAC_1_SQRT_2), cr(0.5), WBasis::Canonical).unwrap();
        let ws = make_w_state(&p);
        let flipped = canonical_to_resource(&ws).unwrap();
        let expected = make_w_state(&p.in_basis(WBasis::Resource));
        for (a, b) in flipped.amplitudes().iter().zip(expected.amplitudes()) {
            assert!((a - b).norm() < 1e-15);
        }
        let twice = canonical_to_resource(&flipped).unwrap();
        for (a, b) in twice.amplitudes().iter().zip(ws.amplitudes()) {
            assert!((a - b).norm() < 1e-15);
        }
        let zero = canonical_to_resource(&PureState::basis(3, 0)).unwrap();
        assert_eq!(zero.amplitude(0b100), cr(1.0));
        assert!(canonical_to_resource(&PureState::basis(2, 0)).is_err());
    }

    #[test]
    fn ap_family_examples_and_balance() {
        let p = ap_family(&FamilyParameter::new(1.0)).unwrap();
        let [m0, m2, m3] = p.moduli();
        assert!((m0 - 0.5).abs() < 1e-15);
        assert!((m2 - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((m3 - 0.5).abs() < 1e-15);

        let edge = ap_family(&FamilyParameter::new(0.0)).unwrap();
        let [e0, e2, e3] = edge.moduli();
        assert!((e0 - FRAC_1_SQRT_2).abs() < 1e-15 && (e2 - FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(e3, 0.0);

        assert!(ap_family(&FamilyParameter::new(-1.0)).is_err());

        // The balance |l0|^2 + |l3|^2 = |l2|^2 holds across the whole family,
        // phases included.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let n = rng.gen::<f64>() * 1e6;
            let phases = (rng.gen::<f64>() * TAU, rng.gen::<f64>() * TAU);
            let w = ap_family(&FamilyParameter::with_phases(n, phases.0, phases.1)).unwrap();
            let [m0, m2, m3] = w.moduli();
            assert!((m0 * m0 + m3 * m3 - m2 * m2).abs() < 1e-12);
            assert!((m0 * m0 + m2 * m2 + m3 * m3 - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn proposed_family_examples_and_balance() {
        let p = proposed_family(&FamilyParameter::new(1.0)).unwrap();
        let [m0, m2, m3] = p.moduli();
        assert!((m0 - 0.5).abs() < 1e-15);
        assert!((m2 - 0.5).abs() < 1e-15);
        assert!((m3 - FRAC_1_SQRT_2).abs() < 1e-15);

        let big = proposed_family(&FamilyParameter::new(99.0)).unwrap();
        let [b0, b2, _] = big.moduli();
        assert!((b0 * b0 + b2 * b2 - 0.99).abs() < 1e-12);

        assert!(proposed_family(&FamilyParameter::new(-0.5)).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..1000 {
            let m = rng.gen::<f64>() * 1e4;
            let phases = (rng.gen::<f64>() * TAU, rng.gen::<f64>() * TAU);
            let w = proposed_family(&FamilyParameter::with_phases(m, phases.0, phases.1)).unwrap();
            let [m0, m2, m3] = w.moduli();
            assert!((m0 * m0 - m2 * m2).abs() < 1e-12);
            assert!((2.0 * m0 * m0 + m3 * m3 - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn concurrence_recovery_for_balanced_protocol() {
        let p = params_from_concurrences_ap(0.5, FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap();
        let [m0, m2, m3] = p.moduli();
        assert!((m0 - 0.5).abs() < 1e-12);
        assert!((m2 - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((m3 - 0.5).abs() < 1e-12);
        assert_eq!(p.basis(), WBasis::Canonical);

        // Round trip from triples generated by real parameter sets.
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let angle = rng.gen::<f64>() * 1.5 + 0.02;
            let (l0, l3) = (angle.cos() * FRAC_1_SQRT_2, angle.sin() * FRAC_1_SQRT_2);
            let triple = (2.0 * l0 * l3, std::f64::consts::SQRT_2 * l3, std::f64::consts::SQRT_2 * l0);
            let rec = params_from_concurrences_ap(triple.0, triple.1, triple.2).unwrap();
            let [r0, r2, r3] = rec.moduli();
            assert!((2.0 * r0 * r3 - triple.0).abs() < 1e-10);
            assert!((2.0 * r2 * r3 - triple.1).abs() < 1e-10);
            assert!((2.0 * r0 * r2 - triple.2).abs() < 1e-10);
        }

        assert!(matches!(
            params_from_concurrences_ap(0.9, 0.1, 0.1),
            Err(Error::InconsistentConcurrences(_))
        ));
        // Passes the normalization check but not the round trip: the implied
        // parameters reproduce a rescaled triple, so it must be rejected too.
        let scaled = params_from_concurrences_ap(0.81 / (0.9 * std::f64::consts::SQRT_2), 0.9, 0.9);
        assert!(matches!(scaled, Err(Error::InconsistentConcurrences(_))));
        assert!(params_from_concurrences_ap(0.0, 0.5, 0.5).is_err());
    }

    #[test]
    fn concurrence_recovery_for_equal_pair_protocol() {
        let limit = params_from_concurrences_proposed(0.0, 0.3).unwrap();
        let [m0, m2, m3] = limit.moduli();
        assert!((m0 - FRAC_1_SQRT_2).abs() < 1e-15 && (m2 - FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(m3, 0.0);

        // The pair is recovered up to one common scale.
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..200 {
            let cab = rng.gen::<f64>() * 0.9 + 0.05;
            let cac = rng.gen::<f64>() * 0.9 + 0.05;
            let rec = params_from_concurrences_proposed(cab, cac).unwrap();
            let [r0, _, r3] = rec.moduli();
            let implied = (2.0 * r0 * r3, 2.0 * r0 * r0);
            let scale = implied.0 / cab;
            assert!(scale > 0.0);
            assert!((implied.1 / cac - scale).abs() < 1e-10);
        }

        // Small C_AB: lambda3^2 approaches C_AB^2 / (2 C_AC^2).
        let rec = params_from_concurrences_proposed(1e-3, 0.5).unwrap();
        let l3_sqr = rec.moduli()[2].powi(2);
        let leading = 1e-6 / 0.5;
        assert!((l3_sqr - leading).abs() < leading * 3e-6);

        assert!(params_from_concurrences_proposed(0.4, 0.0).is_err());
    }

    #[test]
    fn canonical_params_build_five_term_state() {
        let p = CanonicalParams::new([0.5, 0.1, 0.6, 0.3, (1.0f64 - 0.25 - 0.01 - 0.36 - 0.09).sqrt()], 0.7)
            .unwrap();
        let s = p.to_state();
        assert!((s.amplitude(0b000).re - p.lambda0).abs() < 1e-15);
        let a100 = s.amplitude(0b100);
        assert!((a100.norm() - p.lambda1).abs() < 1e-15);
        assert!((a100.arg() - 0.7).abs() < 1e-12);
        assert!((crate::qmath::vec_norm_sqr(s.amplitudes()) - 1.0).abs() < 1e-12);

        let w = CanonicalParams::w_class(0.5, FRAC_1_SQRT_2, 0.5).unwrap();
        let ws = w.to_state();
        assert!((ws.amplitude(0b101).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(ws.amplitude(0b111), cr(0.0));

        assert!(CanonicalParams::new([0.5, -0.1, 0.6, 0.3, 0.0], 0.0).is_err());
    }
}
