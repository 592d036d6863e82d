//! Turns a resolved config into output tables.

use num_complex::Complex64;

use wqed_core::coefficients::coherent_scattering_amplitude;
use wqed_core::ensemble::{self, antibunching_point, g2_zero_sweep, random_distance_g2_mc};
use wqed_core::observables::{
    g2_trace, g2_zero, psi_incoh_zero, squeezing_spectrum, FrequencyGrid,
};
use wqed_core::{single, DriveConfig, EmitterParams, Exec, Flags, TwoPhotonResponse};

use crate::config::{Command, ConfigError, Geometry, Observable, RunConfig};
use crate::output::Table;
use crate::CliError;

pub fn grid(cfg: &RunConfig) -> Result<FrequencyGrid, CliError> {
    Ok(FrequencyGrid::new(cfg.grid_width, cfg.grid_points)?)
}

pub fn params(cfg: &RunConfig) -> Result<EmitterParams, CliError> {
    Ok(EmitterParams::new(cfg.beta, cfg.delta)?)
}

pub fn drive_amplitude(cfg: &RunConfig) -> Complex64 {
    Complex64::new(cfg.drive_re, cfg.drive_im)
}

pub fn drive(cfg: &RunConfig, n: usize) -> Result<DriveConfig, CliError> {
    let om = drive_amplitude(cfg);
    Ok(match cfg.geometry {
        Geometry::External => DriveConfig::external(om)?,
        Geometry::Waveguide => DriveConfig::waveguide(om, n)?,
        Geometry::Bragg => DriveConfig::bragg(om, n)?,
        Geometry::AntiBragg => DriveConfig::anti_bragg(om, n)?,
        Geometry::Combined => DriveConfig::combined(om, cfg.ratio, n)?,
    })
}

/// Drive seen by the first emitter; sets the α_sc² normalisation.
pub fn first_emitter_drive(cfg: &RunConfig) -> Complex64 {
    match cfg.geometry {
        Geometry::Combined => drive_amplitude(cfg) * (1.0 + cfg.ratio),
        _ => drive_amplitude(cfg),
    }
}

fn single_count(cfg: &RunConfig) -> Result<usize, CliError> {
    cfg.n.single().ok_or_else(|| {
        ConfigError::Invalid {
            key: "n",
            reason: format!(
                "`{}` command needs a single emitter count, got `{}`",
                cfg.command.name(),
                cfg.n
            ),
        }
        .into()
    })
}

pub fn response(
    cfg: &RunConfig,
    grid: &FrequencyGrid,
) -> Result<Box<dyn TwoPhotonResponse>, CliError> {
    let p = params(cfg)?;
    match cfg.command {
        Command::Single => {
            if !matches!(
                cfg.geometry,
                Geometry::External | Geometry::Waveguide | Geometry::Combined
            ) {
                return Err(ConfigError::Invalid {
                    key: "geometry",
                    reason: format!(
                        "`{}` needs a chain; use the ensemble command",
                        cfg.geometry.name()
                    ),
                }
                .into());
            }
            Ok(Box::new(single::response(&p, &drive(cfg, 1)?)?))
        }
        _ => {
            let n = single_count(cfg)?;
            Ok(Box::new(ensemble::chain(
                &p,
                &drive(cfg, n)?,
                grid,
                Exec::default(),
            )?))
        }
    }
}

pub fn flags_text(flags: &Flags) -> String {
    let v: Vec<String> = flags.iter().map(|f| f.to_string()).collect();
    if v.is_empty() {
        "none".into()
    } else {
        v.join(";")
    }
}

/// Table for one `single` or `ensemble` evaluation.
pub fn evaluate(cfg: &RunConfig) -> Result<Table, CliError> {
    let grid = grid(cfg)?;
    let resp = response(cfg, &grid)?;
    let resp = &*resp;
    let n = resp.n_emitters() as f64;
    let a = resp.first_scattering().value;
    let a2 = (a * a).norm();
    let mut flags = resp.flags();
    let mut notes = Vec::new();

    let table = match cfg.observable {
        Observable::G2Trace => {
            let trace = g2_trace(resp, &grid)?;
            flags.extend(&trace.flags);
            notes.extend(trace.note);
            let mut t = Table::new(vec!["tau_gamma", "g2"], cfg.echo());
            for (tau, g) in trace.window(cfg.tau_max) {
                t.push(vec![tau, g]);
            }
            t
        }
        Observable::G2Zero => {
            let mut t = Table::new(vec!["n", "g2"], cfg.echo());
            t.push(vec![n, g2_zero(resp, &grid, Exec::default())?]);
            t
        }
        Observable::PsiIncohSpectrum => {
            let mut t = Table::new(
                vec![
                    "omega_over_gamma",
                    "re_psi",
                    "im_psi",
                    "abs_psi_over_alpha_sc2",
                ],
                cfg.echo(),
            );
            for w in grid
                .omegas()
                .into_iter()
                .filter(|w| w.abs() <= cfg.omega_max)
            {
                let psi = resp.psi_incoh_freq(w).value;
                t.push(vec![w, psi.re, psi.im, psi.norm() / a2]);
            }
            t
        }
        Observable::PsiIncohZero => {
            let psi = psi_incoh_zero(resp, &grid, Exec::default())?;
            let mut t = Table::new(
                vec!["n", "re_psi", "im_psi", "abs_psi_over_alpha_sc2"],
                cfg.echo(),
            );
            t.push(vec![n, psi.re, psi.im, psi.norm() / a2]);
            t
        }
        Observable::Squeezing => {
            let s = squeezing_spectrum(resp, &grid, cfg.theta)?;
            let mut t = Table::new(
                vec!["omega_over_gamma", "S_theta", "S_min", "theta_opt"],
                cfg.echo(),
            );
            for k in 0..s.omegas.len() {
                if s.omegas[k].abs() <= cfg.omega_max {
                    t.push(vec![
                        s.omegas[k],
                        s.values[k],
                        s.minimum[k],
                        s.optimal_theta[k],
                    ]);
                }
            }
            t
        }
    };
    let mut table = table;
    table.meta("flags", flags_text(&flags));
    for note in notes {
        table.meta("note", note);
    }
    Ok(table)
}

pub const SWEEP_COLUMNS: [&str; 7] = [
    "n",
    "g2",
    "re_psi",
    "im_psi",
    "abs_psi_over_alpha_sc2",
    "re_psi_coh",
    "im_psi_coh",
];

/// g²(0) and ψ_incoh(τ = 0) over a range of chain lengths.
pub fn sweep(cfg: &RunConfig) -> Result<Table, CliError> {
    if !matches!(
        cfg.observable,
        Observable::G2Zero | Observable::PsiIncohZero
    ) {
        return Err(ConfigError::Invalid {
            key: "observable",
            reason: format!(
                "sweep supports g2_zero and psi_incoh_zero, not {}",
                cfg.observable.name()
            ),
        }
        .into());
    }
    if cfg.geometry == Geometry::External {
        return Err(ConfigError::Invalid {
            key: "geometry",
            reason: "a single externally driven emitter has nothing to sweep".into(),
        }
        .into());
    }
    let grid = grid(cfg)?;
    let p = params(cfg)?;
    let ns = cfg.n.values();
    let points = g2_zero_sweep(&p, &drive(cfg, 1)?, &ns, &grid, Exec::default())?;
    let a = coherent_scattering_amplitude(&p, first_emitter_drive(cfg)).value;
    let a2 = (a * a).norm();

    let mut t = Table::new(SWEEP_COLUMNS.to_vec(), cfg.echo());
    let mut flags = Flags::default();
    for pt in &points {
        flags.extend(&pt.flags);
        let psi = pt.psi_incoh_zero;
        t.push(vec![
            pt.n as f64,
            pt.g2_zero,
            psi.re,
            psi.im,
            psi.norm() / a2,
            pt.psi_coh.re,
            pt.psi_coh.im,
        ]);
    }
    t.meta("flags", flags_text(&flags));
    match antibunching_point(&points) {
        Some(best) => {
            t.meta("antibunching_n", best.n.to_string());
            t.meta(
                "antibunching_g2",
                crate::output::format_number(best.g2_zero),
            );
        }
        None => t.meta("antibunching_n", "none"),
    }
    Ok(t)
}

/// Random emitter positions: g²(0) per chain length.
pub fn monte_carlo(cfg: &RunConfig) -> Result<Table, CliError> {
    let p = params(cfg)?;
    let mut t = Table::new(vec!["n", "g2", "std_error"], cfg.echo());
    for n in cfg.n.values() {
        let d = DriveConfig::bragg(Complex64::new(1.0, 0.0), n)?;
        let e = random_distance_g2_mc(&p, &d, cfg.samples, cfg.seed)?;
        t.push(vec![n as f64, e.g2_zero, e.std_error]);
    }
    t.meta("flags", flags_text(&p.flags()));
    Ok(t)
}
