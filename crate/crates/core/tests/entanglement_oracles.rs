//! Cross-validation of the closed-form entanglement quantities against the
//! numeric eigensolver routes, at sample sizes the unit tests do not reach.

mod common;

use common::{
    apply_local, random_params, random_params_full_support, random_pure_state,
    random_real_params, rng,
};
use rand::Rng;
use wteleport::entanglement::{
    concurrence, concurrence_closed_form, negativity, negativity_closed_form,
    o_operator_expectations, pairwise_concurrences, pairwise_negativities, three_pi,
    three_pi_closed_form,
};
use wteleport::qmath::DensityMatrix;
use wteleport::states::{make_w_state, WBasis};

#[test]
fn closed_forms_match_the_eigensolver_on_w_class_states() {
    let mut rng = rng(0xC0FFEE);
    for _ in 0..1000 {
        let params = random_params(&mut rng);
        let state = make_w_state(&params);

        let numeric_c = pairwise_concurrences(&state).unwrap();
        let closed_c = concurrence_closed_form(&params);
        assert!((numeric_c.cab - closed_c.cab).abs() < 1e-9, "cab for {params:?}");
        assert!((numeric_c.cbc - closed_c.cbc).abs() < 1e-9, "cbc for {params:?}");
        assert!((numeric_c.cac - closed_c.cac).abs() < 1e-9, "cac for {params:?}");

        let numeric_n = pairwise_negativities(&state).unwrap();
        let closed_n = negativity_closed_form(&params);
        assert!((numeric_n.nab - closed_n.nab).abs() < 1e-9, "nab for {params:?}");
        assert!((numeric_n.nbc - closed_n.nbc).abs() < 1e-9, "nbc for {params:?}");
        assert!((numeric_n.nca - closed_n.nca).abs() < 1e-9, "nca for {params:?}");
    }
}

#[test]
fn negativity_equals_concurrence_on_pure_two_qubit_states() {
    let mut rng = rng(0xBEEF);
    for _ in 0..500 {
        let state = random_pure_state(&mut rng, 2);
        let rho = DensityMatrix::from_pure(&state);
        let c = concurrence(&rho).unwrap();
        let n = negativity(&rho).unwrap();
        assert!((c - n).abs() < 1e-10, "C={c} N={n} for {state:?}");
    }
}

#[test]
fn pairwise_quantities_are_local_unitary_invariant() {
    let mut rng = rng(0x10CA1);
    for _ in 0..50 {
        let state = random_pure_state(&mut rng, 3);
        let rotated = apply_local(&mut rng, &state);

        let c = pairwise_concurrences(&state).unwrap();
        let cr = pairwise_concurrences(&rotated).unwrap();
        assert!((c.cab - cr.cab).abs() < 1e-9);
        assert!((c.cbc - cr.cbc).abs() < 1e-9);
        assert!((c.cac - cr.cac).abs() < 1e-9);

        let n = pairwise_negativities(&state).unwrap();
        let nr = pairwise_negativities(&rotated).unwrap();
        assert!((n.nab - nr.nab).abs() < 1e-9);
        assert!((n.nbc - nr.nbc).abs() < 1e-9);
        assert!((n.nca - nr.nca).abs() < 1e-9);

        let pi = three_pi(&state).unwrap();
        let pir = three_pi(&rotated).unwrap();
        assert!((pi.pi_abc - pir.pi_abc).abs() < 1e-9);
    }
}

#[test]
fn operator_expectations_track_concurrences_for_real_parameters() {
    let mut rng = rng(0x0923);
    for _ in 0..1000 {
        let params = random_real_params(&mut rng);
        let state = make_w_state(&params.in_basis(WBasis::Canonical));
        let o = o_operator_expectations(&state).unwrap();
        let c = concurrence_closed_form(&params);
        // Operator order is (xxz, xzx, zxx); the z factor of the third one
        // hits both excited terms, so its expectation is -2 C_BC.
        assert!((o[0] - 2.0 * c.cab).abs() < 1e-9, "O1 vs C_AB for {params:?}");
        assert!((o[1] - 2.0 * c.cac).abs() < 1e-9, "O2 vs C_AC for {params:?}");
        assert!((o[2] + 2.0 * c.cbc).abs() < 1e-9, "O3 vs C_BC for {params:?}");
        for (e, want) in o.iter().zip([c.cab, c.cac, c.cbc]) {
            assert!((e * e / 4.0 - want * want).abs() < 1e-9, "squared identity");
        }
    }
}

#[test]
fn operator_expectations_drop_below_concurrences_under_phases() {
    // The identity is a real-parameter statement: a quarter-turn phase on the
    // first coefficient kills the first expectation while C_AB stays put.
    use wteleport::states::WParams;
    use wteleport::Complex64;
    let phased = WParams::new(
        Complex64::new(0.0, 0.5),
        Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        Complex64::new(0.5, 0.0),
        WBasis::Canonical,
    )
    .unwrap();
    let o = o_operator_expectations(&make_w_state(&phased)).unwrap();
    let c = concurrence_closed_form(&phased);
    assert!(o[0].abs() < 1e-12, "expectation collapses, got {}", o[0]);
    assert!((c.cab - 0.5).abs() < 1e-12, "concurrence is phase-blind");
    assert!((o[0] - 2.0 * c.cab).abs() > 0.9, "identity visibly fails off the real slice");
}

#[test]
fn w_class_states_carry_no_tangle() {
    let mut rng = rng(0x7A9);
    for _ in 0..300 {
        let params = random_params(&mut rng);
        let pi = three_pi(&make_w_state(&params)).unwrap();
        assert!(pi.tangle.abs() < 1e-9, "tangle {} for {params:?}", pi.tangle);
        let closed = three_pi_closed_form(&params);
        assert_eq!(closed.tangle, 0.0);
        assert!((pi.pi_abc - closed.pi_abc).abs() < 1e-9);
    }
}

#[test]
fn equal_moduli_states_have_symmetric_negativities() {
    let mut rng = rng(0x474);
    for _ in 0..200 {
        let m: f64 = common::log_uniform(&mut rng, 0.01, 100.0);
        let params = wteleport::states::proposed_family(
            &wteleport::states::FamilyParameter::with_phases(
                m,
                rng.gen_range(0.0..std::f64::consts::TAU),
                rng.gen_range(0.0..std::f64::consts::TAU),
            ),
        )
        .unwrap();
        let n = negativity_closed_form(&params);
        assert!((n.nab - n.nbc).abs() < 1e-12, "m={m}: {} vs {}", n.nab, n.nbc);
        let numeric = pairwise_negativities(&make_w_state(&params)).unwrap();
        assert!((numeric.nab - numeric.nbc).abs() < 1e-9);
    }
}

#[test]
fn full_support_states_keep_strictly_positive_quantities() {
    let mut rng = rng(0x5EED);
    for _ in 0..200 {
        let params = random_params_full_support(&mut rng);
        let c = concurrence_closed_form(&params);
        assert!(c.cab > 0.0 && c.cbc > 0.0 && c.cac > 0.0);
        let n = negativity_closed_form(&params);
        assert!(n.nab > 0.0 && n.nbc > 0.0 && n.nca > 0.0);
    }
}
