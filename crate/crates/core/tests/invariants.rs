use num_complex::Complex64;
use proptest::prelude::*;

use wqed_core::ensemble::{
    antibragg_chain, bragg_chain, chain, combined_chain, g2_zero_sweep, random_distance_g2_mc,
    waveguide_chain,
};
use wqed_core::observables::{
    freq_to_time, g2_trace, g2_zero, parseval_residual, psi_incoh_zero, FrequencyGrid,
};
use wqed_core::{DriveConfig, EmitterParams, Exec, TwoPhotonResponse};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn small_grid() -> FrequencyGrid {
    FrequencyGrid::new(20.0, 1 << 12).unwrap()
}

#[test]
fn quadrature_and_transform_agree_at_zero_delay() {
    let grid = FrequencyGrid::default();
    for (delta, n) in [(0.0, 50), (0.8, 120), (2.0, 400)] {
        let p = EmitterParams::new(0.01, delta).unwrap();
        let r = waveguide_chain(&p, &DriveConfig::waveguide(c(0.1), n).unwrap(), &grid).unwrap();
        let quad = psi_incoh_zero(&r, &grid, Exec::default()).unwrap();
        let trace = freq_to_time(&r.psi_incoh_samples())
            .unwrap()
            .value_at_zero();
        assert!(
            (quad - trace).norm() <= 1e-6 * quad.norm(),
            "{delta} {n}: {quad} {trace}"
        );
    }
}

#[test]
fn chain_spectra_satisfy_parseval() {
    let p = EmitterParams::new(0.02, 0.4).unwrap();
    let r = waveguide_chain(
        &p,
        &DriveConfig::waveguide(c(0.1), 80).unwrap(),
        &FrequencyGrid::default(),
    )
    .unwrap();
    assert!(parseval_residual(&r.psi_incoh_samples()) < 1e-10);
}

#[test]
fn correlations_relax_to_one() {
    let grid = FrequencyGrid::default();
    let p = EmitterParams::new(0.01, 0.5).unwrap();
    let r = waveguide_chain(&p, &DriveConfig::waveguide(c(0.1), 60).unwrap(), &grid).unwrap();
    let trace = g2_trace(&r, &grid).unwrap();
    for (tau, g) in trace.taus.iter().zip(&trace.g2) {
        if tau.abs() > 60.0 && tau.abs() < 100.0 {
            assert!((g - 1.0).abs() < 1e-4, "tau = {tau}: {g}");
        }
    }
}

#[test]
fn long_bragg_chains_lose_their_antibunching() {
    let grid = small_grid();
    let p = EmitterParams::new(0.01, 0.0).unwrap();
    let g = |n| {
        g2_zero(
            &bragg_chain(&p, &DriveConfig::bragg(c(0.1), n).unwrap(), &grid).unwrap(),
            &grid,
            Exec::default(),
        )
        .unwrap()
    };
    assert!(g(1) < 1e-12);
    assert!(g(2) < g(5) && g(5) < g(30));
    assert!((g(30) - 1.0).abs() < 0.1);
}

#[test]
fn antibragg_even_chains_have_no_coherent_output() {
    let grid = small_grid();
    let p = EmitterParams::new(0.01, 0.0).unwrap();
    for n in [2, 4, 10] {
        let r = antibragg_chain(&p, &DriveConfig::anti_bragg(c(0.1), n).unwrap(), &grid).unwrap();
        assert_eq!(r.alpha_out().value, c(0.0));
        assert_eq!(g2_zero(&r, &grid, Exec::default()).unwrap(), f64::INFINITY);
    }
    let odd = antibragg_chain(&p, &DriveConfig::anti_bragg(c(0.1), 5).unwrap(), &grid).unwrap();
    assert!(g2_zero(&odd, &grid, Exec::default()).unwrap().is_finite());
}

#[test]
fn combined_without_external_field_is_the_waveguide_chain() {
    let grid = small_grid();
    let p = EmitterParams::new(0.01, 0.0).unwrap();
    let a = combined_chain(&p, &DriveConfig::combined(c(0.1), 0.0, 90).unwrap(), &grid).unwrap();
    let b = waveguide_chain(&p, &DriveConfig::waveguide(c(0.1), 90).unwrap(), &grid).unwrap();
    assert_eq!(
        g2_trace(&a, &grid).unwrap().g2,
        g2_trace(&b, &grid).unwrap().g2
    );
}

#[test]
fn monte_carlo_is_seed_reproducible() {
    let p = EmitterParams::new(0.01, 0.0).unwrap();
    let d = DriveConfig::bragg(c(0.1), 6).unwrap();
    let a = random_distance_g2_mc(&p, &d, 20_000, 5).unwrap();
    assert_eq!(a, random_distance_g2_mc(&p, &d, 20_000, 5).unwrap());
    assert_ne!(
        a.g2_zero,
        random_distance_g2_mc(&p, &d, 20_000, 6).unwrap().g2_zero
    );
}

#[cfg(feature = "parallel")]
#[test]
fn execution_modes_are_bit_identical() {
    use wqed_core::ensemble::random_distance_g2_mc_with;
    let grid = small_grid();
    let p = EmitterParams::new(0.01, 0.3).unwrap();
    let d = DriveConfig::waveguide(c(0.1), 1).unwrap();
    let ns: Vec<usize> = (1..=40).collect();
    assert_eq!(
        g2_zero_sweep(&p, &d, &ns, &grid, Exec::Sequential).unwrap(),
        g2_zero_sweep(&p, &d, &ns, &grid, Exec::Parallel).unwrap()
    );
    let chain_d = d.with_emitters(70);
    let seq = chain(&p, &chain_d, &grid, Exec::Sequential).unwrap();
    let par = chain(&p, &chain_d, &grid, Exec::Parallel).unwrap();
    assert_eq!(seq.psi_incoh_samples(), par.psi_incoh_samples());

    let p0 = EmitterParams::new(0.01, 0.0).unwrap();
    let bd = DriveConfig::bragg(c(0.1), 8).unwrap();
    assert_eq!(
        random_distance_g2_mc_with(&p0, &bd, 30_000, 2, Exec::Sequential).unwrap(),
        random_distance_g2_mc_with(&p0, &bd, 30_000, 2, Exec::Parallel).unwrap()
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn resonant_chain_spectra_are_even_and_real(beta in 1e-3..0.1f64, n in 1usize..400, w in 0.0..15.0f64) {
        let p = EmitterParams::new(beta, 0.0).unwrap();
        let r = waveguide_chain(&p, &DriveConfig::waveguide(c(1.0), n).unwrap(), &small_grid()).unwrap();
        let (a, b) = (r.spectrum_per_drive(w), r.spectrum_per_drive(-w));
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-300));
        prop_assert!(a.im.abs() <= 1e-10 * a.norm().max(1e-300));
    }

    #[test]
    fn off_resonant_spectra_are_even(beta in 1e-3..0.1f64, delta in -3.0..3.0f64, n in 1usize..300, w in 0.0..15.0f64) {
        let p = EmitterParams::new(beta, delta).unwrap();
        let r = waveguide_chain(&p, &DriveConfig::waveguide(c(1.0), n).unwrap(), &small_grid()).unwrap();
        let (a, b) = (r.spectrum_per_drive(w), r.spectrum_per_drive(-w));
        prop_assert!((a - b).norm() <= 1e-10 * a.norm().max(1e-300));
    }

    #[test]
    fn g2_zero_is_non_negative(beta in 1e-3..0.1f64, delta in -2.0..2.0f64, n in 1usize..200) {
        let grid = small_grid();
        let p = EmitterParams::new(beta, delta).unwrap();
        let r = waveguide_chain(&p, &DriveConfig::waveguide(c(0.1), n).unwrap(), &grid).unwrap();
        prop_assert!(g2_zero(&r, &grid, Exec::default()).unwrap() >= 0.0);
    }
}
