#![allow(dead_code)]

//! Shared generators for the integration tests. Everything is seeded, so
//! every run sees the same sample sets.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wteleport::qmath::{Operator, PureState};
use wteleport::states::{InputQubit, WBasis, WParams};
use wteleport::Complex64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Arbitrary normalized W-class parameters with complex entries.
pub fn random_params<R: Rng>(rng: &mut R) -> WParams {
    loop {
        let l0 = random_complex(rng);
        let l2 = random_complex(rng);
        let l3 = random_complex(rng);
        if (l0.norm_sqr() + l2.norm_sqr() + l3.norm_sqr()).sqrt() > 0.1 {
            return WParams::normalized(l0, l2, l3, WBasis::Resource).expect("nonzero triple");
        }
    }
}

/// Arbitrary normalized W-class parameters with every modulus bounded away
/// from zero, for quantities that divide by them.
pub fn random_params_full_support<R: Rng>(rng: &mut R) -> WParams {
    loop {
        let params = random_params(rng);
        if params.moduli().iter().all(|&m| m > 0.05) {
            return params;
        }
    }
}

/// Real nonnegative parameters, where the operator-expectation identity is
/// exact.
pub fn random_real_params<R: Rng>(rng: &mut R) -> WParams {
    loop {
        let l0: f64 = rng.gen_range(0.0..1.0);
        let l2: f64 = rng.gen_range(0.0..1.0);
        let l3: f64 = rng.gen_range(0.0..1.0);
        if (l0 * l0 + l2 * l2 + l3 * l3).sqrt() > 0.1 {
            return WParams::normalized(
                Complex64::new(l0, 0.0),
                Complex64::new(l2, 0.0),
                Complex64::new(l3, 0.0),
                WBasis::Resource,
            )
            .expect("nonzero triple");
        }
    }
}

pub fn random_pure_state<R: Rng>(rng: &mut R, num_qubits: usize) -> PureState {
    let dim = 1usize << num_qubits;
    loop {
        let amps: Vec<Complex64> = (0..dim).map(|_| random_complex(rng)).collect();
        if let Ok(state) = PureState::normalized(num_qubits, amps) {
            return state;
        }
    }
}

pub fn random_input<R: Rng>(rng: &mut R) -> InputQubit {
    wteleport::protocols::haar_random_input(rng)
}

/// Random single-qubit unitary from three angles.
pub fn random_su2<R: Rng>(rng: &mut R) -> Operator {
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::PI);
    let phi1: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let phi2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let (s, c) = (theta.sin(), theta.cos());
    Operator::from_rows(&[
        vec![Complex64::from_polar(c, phi1), Complex64::from_polar(s, phi2)],
        vec![-Complex64::from_polar(s, -phi2), Complex64::from_polar(c, -phi1)],
    ])
}

/// Applies a product of single-qubit unitaries to a three-qubit state.
pub fn apply_local<R: Rng>(rng: &mut R, state: &PureState) -> PureState {
    let u = random_su2(rng)
        .tensor(&random_su2(rng))
        .expect("dims in range")
        .tensor(&random_su2(rng))
        .expect("dims in range");
    let amps = u.apply_vec(state.amplitudes());
    PureState::new(3, amps).expect("unitary preserves the norm")
}

/// Log-uniform family knob covering [lo, hi].
pub fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}
