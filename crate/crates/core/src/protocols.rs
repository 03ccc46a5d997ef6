//! Executable teleportation protocols over the three-qubit resource states.
//!
//! Qubit order in every joint state is (x, A, B, C) with x the input qubit as
//! the most significant bit. The three-qubit scheme measures (x, A, B) in the
//! four-vector M basis and leaves the output on C. The two-qubit scheme first
//! applies a projector pair that splits on qubit B, then measures (x, A) in
//! the P basis on the kept branch; B factors out as |0> and C carries the
//! output. Corrections are not hard-coded: each outcome's 2x2 transfer map is
//! matched against {I, Z, X, XZ} so condition-violating states still get the
//! best same-family correction.

use crate::error::{Error, Result};
use crate::qmath::{c, cr, vec_inner, vec_norm_sqr, Operator, PureState};
use crate::states::{make_input_qubit, InputQubit, WBasis, WParams};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

/// Which teleportation scheme a result refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Protocol {
    /// Three-qubit measurement scheme (deterministic when its condition holds).
    Ap,
    /// Two-qubit measurement scheme with a heralded failure branch.
    Proposed,
}

/// Single-qubit correction Bob applies after hearing the outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Correction {
    #[serde(rename = "I")]
    Identity,
    Z,
    X,
    #[serde(rename = "XZ")]
    XZ,
    #[serde(rename = "none")]
    None,
}

impl Correction {
    /// Applies the correction to a single-qubit amplitude pair.
    pub fn apply(&self, amps: [Complex64; 2]) -> [Complex64; 2] {
        let [a, b] = amps;
        match self {
            Correction::Identity | Correction::None => [a, b],
            Correction::Z => [a, -b],
            Correction::X => [b, a],
            // X then Z composed as the matrix product X*Z.
            Correction::XZ => [-b, a],
        }
    }
}

/// Fidelity at or above `1 - SUCCESS_FIDELITY_TOLERANCE` counts as success.
pub const SUCCESS_FIDELITY_TOLERANCE: f64 = 1e-9;

/// Outcomes with probability below this are reported without an output state
/// (the conditional state is undefined on a measure-zero branch).
const PROB_FLOOR: f64 = 1e-20;

/// Gram-Schmidt residuals with norm below this are treated as linearly
/// dependent directions and dropped.
const GS_DROP: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    ApM,
    ProposedP,
    Bell,
}

/// An ordered measurement basis plus an orthonormal completion of its span's
/// complement. When the protocol's orthogonality condition holds the vectors
/// themselves are orthonormal and the completion never fires.
#[derive(Debug, Clone, Serialize)]
pub struct MeasurementBasis {
    pub kind: BasisKind,
    pub outcome_labels: Vec<String>,
    pub vectors: Vec<PureState>,
    pub completion: Vec<PureState>,
}

impl MeasurementBasis {
    /// Standard two-qubit Bell basis, ordered Phi+, Phi-, Psi+, Psi-.
    pub fn bell() -> Self {
        let h = cr(std::f64::consts::FRAC_1_SQRT_2);
        let zero = cr(0.0);
        let make = |amps: [Complex64; 4]| PureState::new(2, amps.to_vec()).expect("unit norm");
        MeasurementBasis {
            kind: BasisKind::Bell,
            outcome_labels: ["Phi+", "Phi-", "Psi+", "Psi-"].map(String::from).to_vec(),
            vectors: vec![
                make([h, zero, zero, h]),
                make([h, zero, zero, -h]),
                make([zero, h, h, zero]),
                make([zero, h, -h, zero]),
            ],
            completion: Vec::new(),
        }
    }

    /// Largest deviation of the Gram matrix of vectors + completion from the
    /// identity.
    pub fn gram_deviation(&self) -> f64 {
        let all: Vec<&PureState> = self.vectors.iter().chain(self.completion.iter()).collect();
        let mut worst = 0.0f64;
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                let g = a.inner(b);
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - cr(target)).norm());
            }
        }
        worst
    }
}

/// Orthonormalizes `raw` in order (two-pass Gram-Schmidt), returning one slot
/// per input (None for dependent directions) plus an orthonormal extension of
/// the span to the full dimension.
fn orthonormalize(
    dim: usize,
    raw: &[Vec<Complex64>],
) -> (Vec<Option<Vec<Complex64>>>, Vec<Vec<Complex64>>) {
    let mut kept: Vec<Vec<Complex64>> = Vec::new();
    let mut slots = Vec::with_capacity(raw.len());
    let reduce = |v: &[Complex64], kept: &[Vec<Complex64>]| -> Option<Vec<Complex64>> {
        let mut w = v.to_vec();
        for _ in 0..2 {
            for b in kept {
                let coeff = vec_inner(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= coeff * bi;
                }
            }
        }
        let norm = vec_norm_sqr(&w).sqrt();
        if norm < GS_DROP {
            return None;
        }
        for wi in &mut w {
            *wi /= cr(norm);
        }
        Some(w)
    };
    for v in raw {
        match reduce(v, &kept) {
            Some(w) => {
                slots.push(Some(w.clone()));
                kept.push(w);
            }
            None => slots.push(None),
        }
    }
    let mut completion = Vec::new();
    for j in 0..dim {
        if kept.len() == dim {
            break;
        }
        let mut e = vec![cr(0.0); dim];
        e[j] = cr(1.0);
        if let Some(w) = reduce(&e, &kept) {
            completion.push(w.clone());
            kept.push(w);
        }
    }
    (slots, completion)
}

fn resource_triple(params: &WParams) -> (Complex64, Complex64, Complex64) {
    // The runners read the parameter triple in the resource placement; the
    // canonical tag carries the same coefficients under a local flip of the
    // first resource qubit, so only the triple matters here.
    let p = params.in_basis(WBasis::Resource);
    (p.lambda0(), p.lambda2(), p.lambda3())
}

fn resource_amps(params: &WParams) -> [Complex64; 8] {
    let (l0, l2, l3) = resource_triple(params);
    let mut w = [cr(0.0); 8];
    w[0b100] = l0;
    w[0b001] = l2;
    w[0b010] = l3;
    w
}

fn m_vector_amps(params: &WParams) -> [Vec<Complex64>; 4] {
    let (l0, l2, l3) = resource_triple(params);
    let mut m = [(); 4].map(|_| vec![cr(0.0); 8]);
    for (i, sign) in [(0, 1.0), (1, -1.0)] {
        m[i][0b010] = l0;
        m[i][0b001] = l3;
        m[i][0b100] = l2 * cr(sign);
    }
    for (i, sign) in [(2, 1.0), (3, -1.0)] {
        m[i][0b110] = l0;
        m[i][0b101] = l3;
        m[i][0b000] = l2 * cr(sign);
    }
    m
}

fn p_vector_amps(params: &WParams) -> [Vec<Complex64>; 4] {
    let (l0, l2, _) = resource_triple(params);
    let mut p = [(); 4].map(|_| vec![cr(0.0); 4]);
    for (i, sign) in [(0, 1.0), (1, -1.0)] {
        p[i][0b01] = l0;
        p[i][0b10] = l2 * cr(sign);
    }
    for (i, sign) in [(2, 1.0), (3, -1.0)] {
        p[i][0b11] = l0;
        p[i][0b00] = l2 * cr(sign);
    }
    p
}

/// The four three-qubit measurement vectors of the deterministic scheme, in
/// outcome order M1+, M1-, M2+, M2-, plus an orthonormal completion of the
/// remaining subspace.
pub fn build_ap_basis(params: &WParams) -> MeasurementBasis {
    let raw = m_vector_amps(params);
    let (_, completion) = orthonormalize(8, &raw);
    MeasurementBasis {
        kind: BasisKind::ApM,
        outcome_labels: ["M1+", "M1-", "M2+", "M2-"].map(String::from).to_vec(),
        vectors: raw
            .into_iter()
            .map(|v| PureState::normalized(3, v).expect("nonzero measurement vector"))
            .collect(),
        completion: completion
            .into_iter()
            .map(|v| PureState::new(3, v).expect("unit norm"))
            .collect(),
    }
}

/// The four normalized two-qubit measurement vectors of the probabilistic
/// scheme, in outcome order P1+, P1-, P2+, P2-. Fails only when the
/// parameters make every P-vector zero.
pub fn build_proposed_basis(params: &WParams) -> Result<MeasurementBasis> {
    let raw = p_vector_amps(params);
    let (_, completion) = orthonormalize(4, &raw);
    let vectors = raw
        .into_iter()
        .map(|v| PureState::normalized(2, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(MeasurementBasis {
        kind: BasisKind::ProposedP,
        outcome_labels: ["P1+", "P1-", "P2+", "P2-"].map(String::from).to_vec(),
        vectors,
        completion: completion
            .into_iter()
            .map(|v| PureState::new(2, v).expect("unit norm"))
            .collect(),
    })
}

/// The three-qubit vectors pairing measurement outcomes with output states in
/// the probabilistic scheme's decomposition: the signed P-vector tensored
/// with |0> on B plus the lambda3 tail on |1>. Identical, up to term order,
/// to the M-vectors.
pub fn proposed_n_vectors(params: &WParams) -> [PureState; 4] {
    let (_, _, l3) = resource_triple(params);
    let p = p_vector_amps(params);
    let tails = [0b001usize, 0b001, 0b101, 0b101];
    let mut out = Vec::with_capacity(4);
    for (pv, tail) in p.into_iter().zip(tails) {
        let mut amps = vec![cr(0.0); 8];
        for xa in 0..4 {
            // (x, A) component rides on B = 0.
            amps[xa << 1] = pv[xa];
        }
        amps[tail] += l3;
        out.push(PureState::new(3, amps).expect("unit norm"));
    }
    out.try_into().expect("four vectors")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BranchLabel {
    F,
    #[serde(rename = "I-F")]
    IMinusF,
}

/// Projector on the joint (x, A, B) space that heralds the probabilistic
/// scheme's branches.
#[derive(Debug, Clone, Serialize)]
pub struct BranchProjector {
    pub label: BranchLabel,
    pub matrix: Operator,
}

/// `F = (I + I (x) sigma_z on B)/2` projects qubit B onto |0>; its complement
/// heralds the failure branch.
pub fn build_branch_projectors() -> (BranchProjector, BranchProjector) {
    let eye8 = Operator::identity(8);
    let zb = Operator::identity(4)
        .tensor(&Operator::pauli_z())
        .expect("8 <= 1024");
    let f = eye8.add(&zb).scale(cr(0.5));
    let rest = eye8.add(&f.scale(cr(-1.0)));
    (
        BranchProjector { label: BranchLabel::F, matrix: f },
        BranchProjector { label: BranchLabel::IMinusF, matrix: rest },
    )
}

/// One measurement outcome of a protocol run.
#[derive(Debug, Clone, Serialize)]
pub struct ProtocolRunReport {
    pub protocol: Protocol,
    pub outcome_label: String,
    /// Joint probability of reaching this outcome from the initial state.
    pub outcome_probability: f64,
    /// Probability of the branch the outcome lives in (1 for the
    /// deterministic scheme; the success or failure branch weight for the
    /// probabilistic one). Conditional probability = outcome / branch.
    pub branch_probability: f64,
    pub correction: Correction,
    /// Corrected conditional output on qubit C; absent on measure-zero
    /// outcomes and on the failure branch.
    pub output_state: Option<PureState>,
    /// Normalized leftover joint state on the failure branch.
    pub stranded_state: Option<PureState>,
    pub fidelity: Option<f64>,
    pub success: bool,
}

const CORRECTION_CANDIDATES: [Correction; 4] =
    [Correction::Identity, Correction::Z, Correction::X, Correction::XZ];

/// Picks the correction whose inverse best matches the outcome's transfer
/// map, by largest |tr(G T)| over the four candidates (they are orthogonal
/// under the trace inner product, so the perfect case is unambiguous).
fn derive_correction(t: &[[Complex64; 2]; 2]) -> Correction {
    let traces = [
        t[0][0] + t[1][1],          // I
        t[0][0] - t[1][1],          // Z
        t[1][0] + t[0][1],          // X
        t[0][1] - t[1][0],          // XZ
    ];
    let mut best = 0;
    for (i, tr) in traces.iter().enumerate() {
        if tr.norm() > traces[best].norm() + 1e-15 {
            best = i;
        }
    }
    CORRECTION_CANDIDATES[best]
}

struct OutcomeEval {
    prob: f64,
    output: Option<[Complex64; 2]>,
    fidelity: Option<f64>,
}

fn finish_outcome(raw: [Complex64; 2], correction: Correction, input: &InputQubit) -> OutcomeEval {
    let prob = raw[0].norm_sqr() + raw[1].norm_sqr();
    if prob < PROB_FLOOR {
        return OutcomeEval { prob, output: None, fidelity: None };
    }
    let scale = cr(1.0 / prob.sqrt());
    let corrected = correction.apply([raw[0] * scale, raw[1] * scale]);
    let overlap = input.alpha().conj() * corrected[0] + input.beta().conj() * corrected[1];
    OutcomeEval {
        prob,
        output: Some(corrected),
        fidelity: Some(overlap.norm_sqr().clamp(0.0, 1.0)),
    }
}

struct PreparedAp {
    w: [Complex64; 8],
    labels: Vec<String>,
    corrections: Vec<Correction>,
    mhats: Vec<Option<Vec<Complex64>>>,
}

fn ap_transfer(mhat: &[Complex64], w: &[Complex64; 8]) -> [[Complex64; 2]; 2] {
    let mut t = [[cr(0.0); 2]; 2];
    for b in 0..8 {
        let k = b >> 2;
        for cbit in 0..2 {
            t[cbit][k] += mhat[b].conj() * w[((b & 3) << 1) | cbit];
        }
    }
    t
}

fn prepare_ap(params: &WParams) -> PreparedAp {
    let w = resource_amps(params);
    let raw = m_vector_amps(params);
    let (mhats, _) = orthonormalize(8, &raw);
    let mut labels: Vec<String> = ["M1+", "M1-", "M2+", "M2-"].map(String::from).to_vec();
    let mut corrections: Vec<Correction> = mhats
        .iter()
        .map(|slot| match slot {
            Some(mhat) => derive_correction(&ap_transfer(mhat, &w)),
            None => Correction::None,
        })
        .collect();
    labels.push("outside-basis".to_string());
    corrections.push(Correction::None);
    PreparedAp { w, labels, corrections, mhats }
}

fn eval_ap(prep: &PreparedAp, input: &InputQubit) -> Vec<OutcomeEval> {
    // phi = psi (x) W, 4 qubits, index x A B C.
    let mut phi = [cr(0.0); 16];
    for (abc, amp) in prep.w.iter().enumerate() {
        phi[abc] = input.alpha() * amp;
        phi[abc + 8] = input.beta() * amp;
    }
    let mut residual = phi;
    let mut evals = Vec::with_capacity(5);
    for (slot, correction) in prep.mhats.iter().zip(&prep.corrections) {
        let Some(mhat) = slot else {
            evals.push(OutcomeEval { prob: 0.0, output: None, fidelity: None });
            continue;
        };
        let mut raw = [cr(0.0); 2];
        for b in 0..8 {
            for cbit in 0..2 {
                raw[cbit] += mhat[b].conj() * phi[(b << 1) | cbit];
            }
        }
        for b in 0..8 {
            for cbit in 0..2 {
                residual[(b << 1) | cbit] -= mhat[b] * raw[cbit];
            }
        }
        evals.push(finish_outcome(raw, *correction, input));
    }
    evals.push(OutcomeEval {
        prob: residual.iter().map(|a| a.norm_sqr()).sum(),
        output: None,
        fidelity: None,
    });
    evals
}

struct PreparedProposed {
    w: [Complex64; 8],
    p1: f64,
    p2: f64,
    labels: Vec<String>,
    corrections: Vec<Correction>,
    phats: Vec<Option<Vec<Complex64>>>,
}

fn proposed_transfer(phat: &[Complex64], w: &[Complex64; 8]) -> [[Complex64; 2]; 2] {
    let mut t = [[cr(0.0); 2]; 2];
    for k in 0..2 {
        for a in 0..2 {
            for cbit in 0..2 {
                t[cbit][k] += phat[(k << 1) | a].conj() * w[(a << 2) | cbit];
            }
        }
    }
    t
}

fn prepare_proposed(params: &WParams) -> PreparedProposed {
    let w = resource_amps(params);
    let (l0, l2, l3) = resource_triple(params);
    let p1 = l0.norm_sqr() + l2.norm_sqr();
    let p2 = l3.norm_sqr();
    let raw = p_vector_amps(params);
    let (phats, _) = orthonormalize(4, &raw);
    let mut labels: Vec<String> = ["P1+", "P1-", "P2+", "P2-"].map(String::from).to_vec();
    let mut corrections: Vec<Correction> = phats
        .iter()
        .map(|slot| match slot {
            Some(phat) => derive_correction(&proposed_transfer(phat, &w)),
            None => Correction::None,
        })
        .collect();
    labels.push("outside-basis".to_string());
    corrections.push(Correction::None);
    labels.push("I-F".to_string());
    corrections.push(Correction::None);
    PreparedProposed { w, p1, p2, labels, corrections, phats }
}

/// Outcome evaluations in label order; the last two entries are the in-branch
/// remainder and the failure branch.
fn eval_proposed(prep: &PreparedProposed, input: &InputQubit) -> Vec<OutcomeEval> {
    // F-projected joint state: only B = 0 components survive, laid out as
    // index (x A) * 4 + c.
    let mut fphi = [cr(0.0); 8];
    for a in 0..2 {
        for cbit in 0..2 {
            let amp = prep.w[(a << 2) | cbit];
            fphi[(a << 1) | cbit] = input.alpha() * amp;
            fphi[(1 << 2) | (a << 1) | cbit] = input.beta() * amp;
        }
    }
    let mut residual = fphi;
    let mut evals = Vec::with_capacity(6);
    for (slot, correction) in prep.phats.iter().zip(&prep.corrections) {
        let Some(phat) = slot else {
            evals.push(OutcomeEval { prob: 0.0, output: None, fidelity: None });
            continue;
        };
        let mut raw = [cr(0.0); 2];
        for xa in 0..4 {
            for cbit in 0..2 {
                raw[cbit] += phat[xa].conj() * fphi[(xa << 1) | cbit];
            }
        }
        for xa in 0..4 {
            for cbit in 0..2 {
                residual[(xa << 1) | cbit] -= phat[xa] * raw[cbit];
            }
        }
        evals.push(finish_outcome(raw, *correction, input));
    }
    evals.push(OutcomeEval {
        prob: residual.iter().map(|a| a.norm_sqr()).sum(),
        output: None,
        fidelity: None,
    });
    evals.push(OutcomeEval { prob: prep.p2, output: None, fidelity: None });
    evals
}

fn stranded_state(input: &InputQubit) -> PureState {
    // psi_x (x) |010> on (A, B, C): the input survives untouched while the
    // resource collapses onto its B = 1 component.
    let mut amps = vec![cr(0.0); 16];
    amps[0b0010] = input.alpha();
    amps[0b1010] = input.beta();
    PureState::new(4, amps).expect("unit norm")
}

fn report_from_eval(
    protocol: Protocol,
    label: &str,
    correction: Correction,
    eval: &OutcomeEval,
    branch_probability: f64,
    in_basis: bool,
    stranded: Option<PureState>,
) -> ProtocolRunReport {
    let output_state = eval
        .output
        .map(|amps| PureState::new(1, amps.to_vec()).expect("normalized outcome"));
    let success = in_basis
        && eval
            .fidelity
            .map(|f| f >= 1.0 - SUCCESS_FIDELITY_TOLERANCE)
            .unwrap_or(false);
    ProtocolRunReport {
        protocol,
        outcome_label: label.to_string(),
        outcome_probability: eval.prob,
        branch_probability,
        correction,
        output_state,
        stranded_state: stranded,
        fidelity: eval.fidelity,
        success,
    }
}

/// Runs the deterministic scheme exactly: one report per measurement vector
/// plus a remainder outcome covering the orthogonal complement, with Born
/// probabilities, corrected conditional outputs on C, and fidelities against
/// the input. Probabilities always sum to 1, condition or no condition.
pub fn run_ap_protocol_exact(params: &WParams, input: &InputQubit) -> Vec<ProtocolRunReport> {
    let prep = prepare_ap(params);
    let evals = eval_ap(&prep, input);
    prep.labels
        .iter()
        .zip(&prep.corrections)
        .zip(&evals)
        .map(|((label, correction), eval)| {
            let in_basis = label != "outside-basis";
            report_from_eval(Protocol::Ap, label, *correction, eval, 1.0, in_basis, None)
        })
        .collect()
}

/// Runs the probabilistic scheme exactly. The kept branch (probability
/// |l0|^2 + |l2|^2) yields four measurement outcomes with equal conditional
/// probability 1/4 when the equal-moduli condition holds; the failure branch
/// (probability |l3|^2) reports the stranded joint state and no output.
pub fn run_proposed_protocol_exact(
    params: &WParams,
    input: &InputQubit,
) -> Vec<ProtocolRunReport> {
    let prep = prepare_proposed(params);
    let evals = eval_proposed(&prep, input);
    let last = evals.len() - 1;
    prep.labels
        .iter()
        .zip(&prep.corrections)
        .zip(&evals)
        .enumerate()
        .map(|(i, ((label, correction), eval))| {
            let failure = i == last;
            let branch = if failure { prep.p2 } else { prep.p1 };
            let stranded = if failure && prep.p2 > PROB_FLOOR {
                Some(stranded_state(input))
            } else {
                None
            };
            let in_basis = !failure && label != "outside-basis";
            report_from_eval(Protocol::Proposed, label, *correction, eval, branch, in_basis, stranded)
        })
        .collect()
}

/// How the sampler picks each trial's input qubit.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputSampler {
    Fixed { qubit: InputQubit },
    Haar,
}

/// Haar-random qubit: two complex standard normals, normalized.
pub fn haar_random_input<R: Rng + ?Sized>(rng: &mut R) -> InputQubit {
    loop {
        let mut g = || -> f64 { rng.sample(StandardNormal) };
        let a = c(g(), g());
        let b = c(g(), g());
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if norm > 1e-6 {
            return make_input_qubit(a / cr(norm), b / cr(norm)).expect("normalized");
        }
    }
}

/// Single deterministic Haar draw, seeded exactly like trial 0 of a sampling
/// run with the same seed.
pub fn haar_input_from_seed(seed: u64) -> InputQubit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0);
    haar_random_input(&mut rng)
}

/// Frequency of one label over a sampling run.
#[derive(Debug, Clone, Serialize)]
pub struct OutcomeStat {
    pub label: String,
    pub count: u64,
    pub frequency: f64,
    /// Binomial standard error sqrt(f (1-f) / trials).
    pub std_error: f64,
}

/// Deterministic summary of a seeded sampling run.
#[derive(Debug, Clone, Serialize)]
pub struct SampleSummary {
    pub protocol: Protocol,
    pub trials: u64,
    pub seed: u64,
    pub input: InputSampler,
    /// Branch frequencies (empty for the single-branch scheme).
    pub branch_stats: Vec<OutcomeStat>,
    pub outcome_stats: Vec<OutcomeStat>,
    /// Mean fidelity over trials whose outcome carries one.
    pub mean_fidelity: Option<f64>,
    pub fidelity_std_error: Option<f64>,
    pub fidelity_samples: u64,
}

fn stat(label: &str, count: u64, trials: u64) -> OutcomeStat {
    let f = count as f64 / trials as f64;
    OutcomeStat {
        label: label.to_string(),
        count,
        frequency: f,
        std_error: (f * (1.0 - f) / trials as f64).sqrt(),
    }
}

/// Samples `trials` protocol runs with Born-rule outcome draws. Each trial
/// reseeds the generator on its own stream of `seed`, so identical
/// `(seed, trials)` give bit-identical summaries regardless of evaluation
/// order.
pub fn run_monte_carlo(
    protocol: Protocol,
    params: &WParams,
    sampler: &InputSampler,
    trials: u64,
    seed: u64,
) -> Result<SampleSummary> {
    if trials == 0 {
        return Err(Error::Parameter("trials must be at least 1".into()));
    }
    enum Prep {
        Ap(PreparedAp),
        Proposed(PreparedProposed),
    }
    let prep = match protocol {
        Protocol::Ap => Prep::Ap(prepare_ap(params)),
        Protocol::Proposed => Prep::Proposed(prepare_proposed(params)),
    };
    let labels: &[String] = match &prep {
        Prep::Ap(p) => &p.labels,
        Prep::Proposed(p) => &p.labels,
    };
    let mut counts = vec![0u64; labels.len()];
    let mut fid_sum = 0.0;
    let mut fid_sq_sum = 0.0;
    let mut fid_n = 0u64;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let input = match sampler {
            InputSampler::Fixed { qubit } => *qubit,
            InputSampler::Haar => haar_random_input(&mut rng),
        };
        let evals = match &prep {
            Prep::Ap(p) => eval_ap(p, &input),
            Prep::Proposed(p) => eval_proposed(p, &input),
        };
        let draw: f64 = rng.gen();
        let mut cumulative = 0.0;
        let mut picked = evals.len() - 1;
        for (i, eval) in evals.iter().enumerate() {
            cumulative += eval.prob;
            if draw < cumulative {
                picked = i;
                break;
            }
        }
        counts[picked] += 1;
        if let Some(f) = evals[picked].fidelity {
            fid_sum += f;
            fid_sq_sum += f * f;
            fid_n += 1;
        }
    }
    let outcome_stats: Vec<OutcomeStat> = labels
        .iter()
        .zip(&counts)
        .map(|(label, &count)| stat(label, count, trials))
        .collect();
    let branch_stats = match protocol {
        Protocol::Ap => Vec::new(),
        Protocol::Proposed => {
            let failures = *counts.last().expect("failure slot");
            vec![stat("F", trials - failures, trials), stat("I-F", failures, trials)]
        }
    };
    let (mean_fidelity, fidelity_std_error) = if fid_n == 0 {
        (None, None)
    } else {
        let mean = fid_sum / fid_n as f64;
        let se = if fid_n > 1 {
            let var = ((fid_sq_sum - fid_sum * fid_sum / fid_n as f64) / (fid_n - 1) as f64)
                .max(0.0);
            Some((var / fid_n as f64).sqrt())
        } else {
            Some(0.0)
        };
        (Some(mean), se)
    };
    Ok(SampleSummary {
        protocol,
        trials,
        seed,
        input: sampler.clone(),
        branch_stats,
        outcome_stats,
        mean_fidelity,
        fidelity_std_error,
        fidelity_samples: fid_n,
    })
}
