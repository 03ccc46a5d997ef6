//! Entanglement quantities for the states this crate works with: Wootters
//! concurrence and partial-transpose negativity of two-qubit reductions (both
//! with closed-form counterparts on W-class parameters), one-vs-rest
//! concurrences, stabilizer-style operator expectations, the tangle, and the
//! three-way residual measure built from them.

use crate::error::{Error, Result};
use crate::qmath::{cr, DensityMatrix, Operator, PureState, EIGENVALUE_FLOOR};
use crate::states::WParams;
use serde::Serialize;

/// Pairwise concurrences of the three two-qubit reductions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConcurrenceTriple {
    pub cab: f64,
    pub cbc: f64,
    pub cac: f64,
}

/// Pairwise negativities of the three two-qubit reductions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NegativityTriple {
    pub nab: f64,
    pub nbc: f64,
    pub nca: f64,
}

/// Residual three-way entanglement and the quantities it is assembled from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThreePiReport {
    pub pi_a: f64,
    pub pi_b: f64,
    pub pi_c: f64,
    pub pi_abc: f64,
    /// `(C_A(BC), C_B(CA), C_C(AB))`.
    pub one_vs_rest: [f64; 3],
    pub tangle: f64,
}

/// Eigenvalues below this fraction of the largest are treated as the exact
/// zeros of a rank-deficient reduced state. Without the deflation, square
/// roots of rounding-level eigenvalues (about 1e-16) would contaminate the
/// concurrence at the 1e-8 level.
const RANK_CUTOFF: f64 = 1e-13;

fn spin_flip_frame() -> Operator {
    Operator::pauli_y().tensor(&Operator::pauli_y()).expect("4 <= 1024")
}

fn check_psd(evals: &[f64]) -> Result<()> {
    if let Some(&min) = evals.last() {
        if min < EIGENVALUE_FLOOR {
            return Err(Error::NotDensityMatrix(format!("eigenvalue {min:.3e} below floor")));
        }
    }
    Ok(())
}

/// Wootters concurrence of a two-qubit state: `max(0, r1 - r2 - r3 - r4)`
/// where `r_i` are the descending square roots of the eigenvalues of
/// `rho * rho_tilde`, `rho_tilde = (sy (x) sy) conj(rho) (sy (x) sy)`.
///
/// The eigenvalues are taken from the Hermitian matrix
/// `sqrt(rho) rho_tilde sqrt(rho)` (same spectrum), restricted to the support
/// of `rho` so that the zeros of a rank-deficient state stay exact.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.num_qubits() != 2 {
        return Err(Error::QubitCount { expected: 2, actual: rho.num_qubits() });
    }
    let (evals, evecs) = rho.as_operator().hermitian_eigen()?;
    check_psd(&evals)?;
    let frame = spin_flip_frame();
    let tilde = frame.matmul(&rho.as_operator().conjugate()).matmul(&frame);
    let cutoff = RANK_CUTOFF * evals[0].max(1e-300);
    let support: Vec<usize> = (0..4).filter(|&k| evals[k] > cutoff).collect();
    let r = support.len();
    // m[s][t] = sqrt(e_s) <v_s| tilde |v_t> sqrt(e_t) on the support.
    let mut m = Operator::zeros(r.max(1));
    for (si, &s) in support.iter().enumerate() {
        for (ti, &t) in support.iter().enumerate() {
            let mut acc = num_complex::Complex64::new(0.0, 0.0);
            for i in 0..4 {
                for j in 0..4 {
                    acc += evecs.get(i, s).conj() * tilde.get(i, j) * evecs.get(j, t);
                }
            }
            m.set(si, ti, acc * cr((evals[s] * evals[t]).sqrt()));
        }
    }
    let mut roots: Vec<f64> = if r == 0 {
        Vec::new()
    } else {
        m.hermitian_eigenvalues()?.into_iter().map(|e| e.max(0.0).sqrt()).collect()
    };
    roots.resize(4, 0.0);
    let c = roots[0] - roots[1] - roots[2] - roots[3];
    Ok(c.clamp(0.0, 1.0))
}

/// Concurrence triple `(C_AB, C_BC, C_AC) = (2|l0 l3|, 2|l2 l3|, 2|l0 l2|)`
/// from W-class parameter moduli (identical in either basis tag).
pub fn concurrence_closed_form(params: &WParams) -> ConcurrenceTriple {
    let [m0, m2, m3] = params.moduli();
    ConcurrenceTriple { cab: 2.0 * m0 * m3, cbc: 2.0 * m2 * m3, cac: 2.0 * m0 * m2 }
}

/// Negativity of a two-qubit state: twice the absolute sum of the negative
/// partial-transpose eigenvalues. Bell states score 1, separable states 0.
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    if rho.num_qubits() != 2 {
        return Err(Error::QubitCount { expected: 2, actual: rho.num_qubits() });
    }
    let evals = rho.as_operator().hermitian_eigen()?.0;
    check_psd(&evals)?;
    let pt = rho.partial_transpose(1)?;
    let negative_mass: f64 =
        pt.hermitian_eigenvalues()?.into_iter().filter(|e| *e < 0.0).map(f64::abs).sum();
    Ok((2.0 * negative_mass).clamp(0.0, 1.0))
}

/// Closed-form negativity triple from W-class parameter moduli:
/// `N_AB = sqrt(l2^4 + 4 l0^2 l3^2) - l2^2` and its two label rotations.
pub fn negativity_closed_form(params: &WParams) -> NegativityTriple {
    let [m0, m2, m3] = params.moduli();
    let (a, b, c) = (m0 * m0, m2 * m2, m3 * m3);
    NegativityTriple {
        nab: (b * b + 4.0 * a * c).sqrt() - b,
        nbc: (a * a + 4.0 * b * c).sqrt() - a,
        nca: (c * c + 4.0 * a * b).sqrt() - c,
    }
}

/// Concurrence between one qubit and the remaining pair of a pure three-qubit
/// state: `sqrt(2 (1 - Tr rho_pivot^2))`.
pub fn one_vs_rest_concurrence(state: &PureState, pivot: usize) -> Result<f64> {
    if state.num_qubits() != 3 {
        return Err(Error::QubitCount { expected: 3, actual: state.num_qubits() });
    }
    if pivot > 2 {
        return Err(Error::QubitIndex { index: pivot, num_qubits: 3 });
    }
    let reduced = state.density().partial_trace(&[pivot])?;
    Ok((2.0 * (1.0 - reduced.purity())).max(0.0).sqrt())
}

/// Expectations of the three correlation operators
/// `2(sx sx sz), 2(sx sz sx), 2(sz sx sx)`; on canonical W-class states with
/// real parameters their squares over 4 give the squared concurrence triple.
pub fn o_operator_expectations(state: &PureState) -> Result<[f64; 3]> {
    if state.num_qubits() != 3 {
        return Err(Error::QubitCount { expected: 3, actual: state.num_qubits() });
    }
    let x = Operator::pauli_x();
    let z = Operator::pauli_z();
    let mut out = [0.0; 3];
    for (slot, (first, second, third)) in
        [(&x, &x, &z), (&x, &z, &x), (&z, &x, &x)].into_iter().enumerate()
    {
        let op = first.tensor(second)?.tensor(third)?.scale(cr(2.0));
        out[slot] = op.expectation(state).re;
    }
    Ok(out)
}

/// Pairwise concurrences of a pure three-qubit state via the reduced-state
/// route (qubits labeled A=0, B=1, C=2).
pub fn pairwise_concurrences(state: &PureState) -> Result<ConcurrenceTriple> {
    let rho = state.density();
    Ok(ConcurrenceTriple {
        cab: concurrence(&rho.partial_trace(&[0, 1])?)?,
        cbc: concurrence(&rho.partial_trace(&[1, 2])?)?,
        cac: concurrence(&rho.partial_trace(&[0, 2])?)?,
    })
}

/// Pairwise negativities of a pure three-qubit state via the reduced-state
/// route.
pub fn pairwise_negativities(state: &PureState) -> Result<NegativityTriple> {
    let rho = state.density();
    Ok(NegativityTriple {
        nab: negativity(&rho.partial_trace(&[0, 1])?)?,
        nbc: negativity(&rho.partial_trace(&[1, 2])?)?,
        nca: negativity(&rho.partial_trace(&[0, 2])?)?,
    })
}

fn assemble_three_pi(
    one_vs_rest: [f64; 3],
    neg: &NegativityTriple,
    tangle: f64,
) -> ThreePiReport {
    let [ca, cb, cc] = one_vs_rest;
    let pi_a = ca * ca - neg.nab * neg.nab - neg.nca * neg.nca;
    let pi_b = cb * cb - neg.nbc * neg.nbc - neg.nab * neg.nab;
    let pi_c = cc * cc - neg.nca * neg.nca - neg.nbc * neg.nbc;
    ThreePiReport {
        pi_a,
        pi_b,
        pi_c,
        pi_abc: (pi_a + pi_b + pi_c) / 3.0,
        one_vs_rest,
        tangle,
    }
}

/// Residual three-way entanglement of a pure three-qubit state:
/// `pi_A = C_A(BC)^2 - N_AB^2 - N_AC^2` and cyclic, averaged over the three
/// pivots. The tangle `C_A(BC)^2 - C_AB^2 - C_AC^2` rides along in the report.
pub fn three_pi(state: &PureState) -> Result<ThreePiReport> {
    let one_vs_rest = [
        one_vs_rest_concurrence(state, 0)?,
        one_vs_rest_concurrence(state, 1)?,
        one_vs_rest_concurrence(state, 2)?,
    ];
    let neg = pairwise_negativities(state)?;
    let conc = pairwise_concurrences(state)?;
    let tangle = one_vs_rest[0] * one_vs_rest[0] - conc.cab * conc.cab - conc.cac * conc.cac;
    Ok(assemble_three_pi(one_vs_rest, &neg, tangle))
}

/// Closed-form counterpart of [`three_pi`] for W-class parameters: pairwise
/// quantities from the parameter formulas, one-vs-rest from the W-class
/// Pythagorean sums, tangle identically zero.
pub fn three_pi_closed_form(params: &WParams) -> ThreePiReport {
    let conc = concurrence_closed_form(params);
    let neg = negativity_closed_form(params);
    let one_vs_rest = [
        (conc.cab * conc.cab + conc.cac * conc.cac).sqrt(),
        (conc.cab * conc.cab + conc.cbc * conc.cbc).sqrt(),
        (conc.cac * conc.cac + conc.cbc * conc.cbc).sqrt(),
    ];
    assemble_three_pi(one_vs_rest, &neg, 0.0)
}

/// Published closed form of the residual measure for equal-pair resource
/// states, expressed directly in `(C_AB, C_AC)`:
/// `4(C_AB^2 - N_AB^2) + 2(C_AC^2 - N_CA^2)` with the negativities
/// substituted from the same concurrence pair.
///
/// Kept exactly as published; measurements against the general
/// [`three_pi`] path show it carries an extra factor of 3 (it is the sum of
/// the three pivot residuals, not their mean). Tests record that relation
/// rather than patching the formula.
pub fn three_pi_closed_form_proposed(cab: f64, cac: f64) -> Result<f64> {
    if !cab.is_finite() || cab < 0.0 || !cac.is_finite() || cac < 0.0 {
        return Err(Error::Parameter(format!("concurrences must be finite and >= 0, got ({cab}, {cac})")));
    }
    if cac == 0.0 {
        if cab == 0.0 {
            return Ok(0.0);
        }
        return Err(Error::Parameter(format!("pair ({cab}, {cac}) is not realizable by an equal-pair state")));
    }
    let denom = 2.0 * cac * cac + cab * cab;
    let nab = cac * ((cac * cac + 4.0 * cab * cab).sqrt() - cac) / denom;
    let nca = ((cab.powi(4) + 4.0 * cac.powi(4)).sqrt() - cab * cab) / denom;
    Ok(4.0 * (cab * cab - nab * nab) + 2.0 * (cac * cac - nca * nca))
}
