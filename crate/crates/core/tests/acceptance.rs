//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wqed_core::coefficients::coherent_scattering_amplitude;
use wqed_core::ensemble::{
    antibragg_chain, antibunching_point, bragg_chain, g2_zero_sweep, random_distance_g2_mc,
    waveguide_chain, waveguide_direct_sum,
};
use wqed_core::observables::{
    approx_antibunching_length, approx_g2_zero, approx_large_od_spectrum, approx_psi_incoh_zero,
    freq_to_time, g2_trace, g2_zero, psi_incoh_zero, squeezing_spectrum, FrequencyGrid,
    SampledSpectrum,
};
use wqed_core::single::{incoherent_freq, incoherent_time, response_external};
use wqed_core::{DriveConfig, EmitterParams, Exec, TwoPhotonResponse};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn single_emitter_antibunching() -> Outcome {
    let grid = FrequencyGrid::default();
    let mut worst_psi: f64 = 0.0;
    let mut worst_g2: f64 = 0.0;
    for beta in [0.005, 0.01, 0.1] {
        for delta in [0.0, 0.5, 2.0] {
            let p = EmitterParams::new(beta, delta).map_err(|e| e.to_string())?;
            let r = response_external(&p, &DriveConfig::external(c(0.05)).unwrap())
                .map_err(|e| e.to_string())?;
            let a = coherent_scattering_amplitude(&p, c(0.05)).value;
            worst_psi = worst_psi.max(r.psi_total(0.0).norm() / (a * a).norm());
            let trace = g2_trace(&r, &grid).map_err(|e| e.to_string())?;
            worst_g2 = worst_g2
                .max(trace.g2_at_zero())
                .max(g2_zero(&r, &grid, Exec::default()).unwrap());
        }
    }
    check(
        worst_psi < 1e-12 && worst_g2 < 1e-12,
        format!("max |psi(0)|/|alpha_sc^2| = {worst_psi:.2e}, max g2(0) = {worst_g2:.2e}"),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let grid = FrequencyGrid::new(20.0, 1 << 12).unwrap();
    let mut worst: f64 = 0.0;
    let mut worst_case = String::new();
    for case in 0..1000 {
        let beta = rng.random_range(1e-3..0.05);
        let delta = rng.random_range(-3.0..3.0);
        let n = rng.random_range(1..=1000usize);
        let omega = match case % 4 {
            0 => rng.random_range(-1e-8..1e-8),
            1 => 0.0,
            _ => grid.omega(rng.random_range(0..grid.n_points())),
        };
        let p = EmitterParams::new(beta, delta).unwrap();
        let drive = DriveConfig::waveguide(c(0.1), n).unwrap();
        let closed = waveguide_chain(&p, &drive, &grid)
            .unwrap()
            .psi_incoh_freq(omega)
            .value;
        let direct = waveguide_direct_sum(&p, c(0.1), n, omega);
        let rel = (closed - direct).norm() / direct.norm();
        if rel > worst {
            worst = rel;
            worst_case = format!("beta={beta:.4}, delta={delta:.3}, N={n}, omega={omega:.3e}");
        }
    }
    check(
        worst < 1e-10,
        format!("worst relative error {worst:.2e} ({worst_case})"),
    )
}

fn fourier_consistency() -> Outcome {
    let grid = FrequencyGrid::default();
    let om = c(0.1);
    let mut worst: f64 = 0.0;
    for delta in [0.0, 0.5, 1.5] {
        let p = EmitterParams::new(0.01, delta).unwrap();
        let spec = SampledSpectrum::from_model(&|w: f64| incoherent_freq(&p, om, w).value, grid)
            .map_err(|e| e.to_string())?;
        let trace = freq_to_time(&spec).map_err(|e| e.to_string())?;
        for (j, v) in trace.values.iter().enumerate() {
            let tau = trace.grid.tau(j);
            if tau.abs() <= 10.0 {
                let exact = incoherent_time(&p, om, tau).value;
                worst = worst.max((v - exact).norm() / exact.norm());
            }
        }
    }
    check(
        worst < 1e-6,
        format!("max pointwise relative error on |tau| <= 10: {worst:.2e}"),
    )
}

fn waveguide_antibunching_point() -> Outcome {
    let p = EmitterParams::new(0.01, 0.0).unwrap();
    let drive = DriveConfig::waveguide(c(0.1), 1).unwrap();
    let ns: Vec<usize> = (1..=300).collect();
    let pts = g2_zero_sweep(&p, &drive, &ns, &FrequencyGrid::default(), Exec::default())
        .map_err(|e| e.to_string())?;
    let best = antibunching_point(&pts).ok_or("no finite g2")?;
    let at146 = pts.iter().find(|pt| pt.n == 146).unwrap().g2_zero;
    check(
        best.n == 146 && best.g2_zero < 1e-3,
        format!("minimum at N = {} with g2(0) = {:.3e} (g2(0) at N = 146: {at146:.3e}); expected N = 146", best.n, best.g2_zero),
    )
}

fn combined_minimum(beta: f64, ratio: f64) -> Result<(usize, f64), String> {
    let p = EmitterParams::new(beta, 0.0).unwrap();
    let drive = DriveConfig::combined(c(0.01), ratio, 1).unwrap();
    let ns: Vec<usize> = (1..=80).collect();
    let pts = g2_zero_sweep(&p, &drive, &ns, &FrequencyGrid::default(), Exec::default())
        .map_err(|e| e.to_string())?;
    let best = antibunching_point(&pts).ok_or("no finite g2")?;
    Ok((best.n, best.g2_zero))
}

fn combined_illumination() -> Outcome {
    let cases = [(0.01, 2.0, 29), (0.01, 10.0, 6), (0.03, 5.0, 3)];
    let mut ok = true;
    let mut parts = Vec::new();
    for (beta, ratio, expected) in cases {
        let (n, g2) = combined_minimum(beta, ratio)?;
        ok &= n == expected;
        parts.push(format!(
            "(beta={beta}, r={ratio}) -> N = {n} [g2 {g2:.2e}], expected {expected}"
        ));
    }
    check(ok, parts.join("; "))
}

fn bragg_pairs() -> Outcome {
    let p = EmitterParams::new(0.01, 0.0).unwrap();
    let grid = FrequencyGrid::default();
    let g = |n: usize| -> Result<f64, String> {
        let r = bragg_chain(&p, &DriveConfig::bragg(c(0.1), n).unwrap(), &grid)
            .map_err(|e| e.to_string())?;
        g2_zero(&r, &grid, Exec::default()).map_err(|e| e.to_string())
    };
    let (g1, g2) = (g(1)?, g(2)?);
    check(
        (g2 - 0.25).abs() <= 0.02 && g1 < 1e-12,
        format!("N = 2: g2(0) = {g2:.4}; N = 1: g2(0) = {g1:.2e}"),
    )
}

fn antibragg_plateau() -> Outcome {
    let beta: f64 = 0.01;
    let p = EmitterParams::new(beta, 0.0).unwrap();
    let n = 401;
    let t0 = 1.0 - 2.0 * beta;
    assert!(t0.powi(2 * n as i32) < 1e-6);
    let om = c(0.05);
    let grid = FrequencyGrid::default();
    let r = antibragg_chain(&p, &DriveConfig::anti_bragg(om, n).unwrap(), &grid)
        .map_err(|e| e.to_string())?;
    let a = r.first_scattering().value;
    let plateau = (r.psi_incoh_freq(0.0).value / (a * a)).norm();
    let expected = 1.0 / (beta * (1.0 - beta));
    let s = squeezing_spectrum(&r, &grid, 0.0).map_err(|e| e.to_string())?;
    let squeeze = s.minimum_at_zero().abs();
    let squeeze_expected = om.norm_sqr() / (2.0 - 2.0 * beta);
    let (e1, e2) = (
        (plateau / expected - 1.0).abs(),
        (squeeze / squeeze_expected - 1.0).abs(),
    );
    check(
        e1 < 1e-3 && e2 < 1e-3,
        format!("plateau {plateau:.6} vs {expected:.6} (rel {e1:.1e}); max squeezing {squeeze:.6e} vs {squeeze_expected:.6e} (rel {e2:.1e})"),
    )
}

fn appendix_approximations() -> Outcome {
    let grid = FrequencyGrid::default();
    let om = c(0.1);

    // large-OD spectrum, beta = 0.005, OD = 4βN = 8
    let p = EmitterParams::new(0.005, 0.0).unwrap();
    let r = waveguide_chain(&p, &DriveConfig::waveguide(om, 400).unwrap(), &grid)
        .map_err(|e| e.to_string())?;
    let mut spectrum_err: f64 = 0.0;
    for k in 0..=180 {
        let w = 0.2 + 0.01 * k as f64;
        for w in [w, -w] {
            let exact = r.psi_incoh_freq(w).value;
            let approx = approx_large_od_spectrum(&p, om, 400, w).unwrap();
            spectrum_err = spectrum_err.max((approx - exact).norm() / exact.norm());
        }
    }
    let a_ok = spectrum_err < 0.05;

    // integrated ψ_incoh(τ = 0), beta = 0.01, OD = 6 … 40
    let p = EmitterParams::new(0.01, 0.0).unwrap();
    let mut zero_err: f64 = 0.0;
    let mut worst_od = 0.0;
    for n in [150, 200, 250, 375, 500, 750, 1000] {
        let r = waveguide_chain(&p, &DriveConfig::waveguide(om, n).unwrap(), &grid)
            .map_err(|e| e.to_string())?;
        let exact = psi_incoh_zero(&r, &grid, Exec::default()).map_err(|e| e.to_string())?;
        let approx = approx_psi_incoh_zero(&p, om, n).unwrap();
        let err = (approx - exact).norm() / exact.norm();
        if err > zero_err {
            zero_err = err;
            worst_od = 0.04 * n as f64;
        }
    }
    let b_ok = zero_err < 0.05;

    // root of [1 − e^{4βN}√(β/(4πN))]², found here by independent bisection
    let beta = 0.01;
    let f = |n: f64| (4.0 * beta * n).exp() * (beta / (4.0 * PI * n)).sqrt() - 1.0;
    let (mut lo, mut hi) = (50.0, 400.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    let lib_root = approx_antibunching_length(&p).unwrap();
    let g_at = approx_g2_zero(&p, root.round() as usize).unwrap();
    let c_ok = (root - 152.0).abs() <= 2.0 && (lib_root - root).abs() < 1e-6 && g_at < 1e-3;

    check(
        a_ok && b_ok && c_ok,
        format!(
            "[{}] large-OD spectrum max rel err {spectrum_err:.3}; [{}] psi_incoh(0) max rel err {zero_err:.3} (at OD = {worst_od}); [{}] approx root N = {root:.3}",
            if a_ok { "ok" } else { "FAIL" },
            if b_ok { "ok" } else { "FAIL" },
            if c_ok { "ok" } else { "FAIL" },
        ),
    )
}

fn monte_carlo() -> Outcome {
    let p = EmitterParams::new(0.01, 0.0).unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [2, 4, 10] {
        let drive = DriveConfig::bragg(c(0.1), n).unwrap();
        let e = random_distance_g2_mc(&p, &drive, 100_000, 42).map_err(|e| e.to_string())?;
        let expected = 1.0 - 1.0 / n as f64;
        let z = (e.g2_zero - expected) / e.std_error;
        ok &= z.abs() < 3.0;
        parts.push(format!(
            "N = {n}: {:.4} ± {:.4} ({z:+.2} sigma)",
            e.g2_zero, e.std_error
        ));
    }
    check(ok, parts.join("; "))
}

fn scale_invariance() -> Outcome {
    let grid = FrequencyGrid::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut factors = vec![c(2.0)];
    factors.extend((0..3).map(|_| Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI))));

    let base_om = Complex64::new(0.03, 0.01);
    let configs: Vec<(EmitterParams, DriveConfig)> = vec![
        (
            EmitterParams::new(0.01, 0.7).unwrap(),
            DriveConfig::external(base_om).unwrap(),
        ),
        (
            EmitterParams::new(0.01, 0.7).unwrap(),
            DriveConfig::waveguide(base_om, 120).unwrap(),
        ),
        (
            EmitterParams::new(0.01, 0.0).unwrap(),
            DriveConfig::bragg(base_om, 7).unwrap(),
        ),
        (
            EmitterParams::new(0.01, 0.0).unwrap(),
            DriveConfig::anti_bragg(base_om, 9).unwrap(),
        ),
        (
            EmitterParams::new(0.01, 0.0).unwrap(),
            DriveConfig::combined(base_om, 2.0, 20).unwrap(),
        ),
    ];

    let g2s = |p: &EmitterParams, d: &DriveConfig| -> Result<(Vec<f64>, f64), String> {
        let r: Box<dyn TwoPhotonResponse> = match d.mode {
            wqed_core::DriveMode::ExternalSingle => {
                Box::new(response_external(p, d).map_err(|e| e.to_string())?)
            }
            _ => Box::new(
                wqed_core::ensemble::chain(p, d, &grid, Exec::default())
                    .map_err(|e| e.to_string())?,
            ),
        };
        let trace = g2_trace(&*r, &grid).map_err(|e| e.to_string())?;
        Ok((
            trace.g2,
            g2_zero(&*r, &grid, Exec::default()).map_err(|e| e.to_string())?,
        ))
    };

    let mut compared = 0;
    for (p, d) in &configs {
        let base = g2s(p, d)?;
        for k in &factors {
            let other = g2s(p, &d.scaled(*k).unwrap())?;
            if other.0 != base.0 || other.1.to_bits() != base.1.to_bits() {
                return Err(format!(
                    "{} geometry changed under drive factor {k}",
                    d.mode
                ));
            }
            compared += other.0.len() + 1;
        }
    }
    check(
        true,
        format!("{compared} g2 samples bit-identical across 5 geometries x 4 drive factors"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 single-emitter antibunching", single_emitter_antibunching),
        ("2 oracle equivalence", oracle_equivalence),
        ("3 Fourier consistency", fourier_consistency),
        (
            "4 waveguide antibunching point",
            waveguide_antibunching_point,
        ),
        ("5 combined illumination", combined_illumination),
        ("6 Bragg pair statistics", bragg_pairs),
        ("7 anti-Bragg plateau", antibragg_plateau),
        ("8 large-OD approximations", appendix_approximations),
        ("9 random-position Monte Carlo", monte_carlo),
        ("10 scale invariance", scale_invariance),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("criterion {name}: PASS - {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL - {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
