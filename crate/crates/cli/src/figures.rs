//! Figure data with pinned defaults.
//!
//! Values the figure captions leave open (detunings, chain lengths, sweep
//! density, frequency window) are fixed here. Bump [`DEFAULTS_VERSION`]
//! whenever any of them changes; it is written into every panel file.

use num_complex::Complex64;

use wqed_core::ensemble::{effective_couplings, waveguide_chain};
use wqed_core::observables::approx_g2_zero;
use wqed_core::single::incoherent_time;
use wqed_core::{DriveConfig, EmitterParams, TwoPhotonResponse};

use crate::config::{Command, RawConfig, RunConfig};
use crate::output::Table;
use crate::run::{self, SWEEP_COLUMNS};
use crate::CliError;

pub const DEFAULTS_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
    FigB1,
}

const ALL: [FigureId; 9] = [
    FigureId::Fig2,
    FigureId::Fig3,
    FigureId::Fig4,
    FigureId::Fig5,
    FigureId::Fig6,
    FigureId::Fig7,
    FigureId::Fig8,
    FigureId::Fig9,
    FigureId::FigB1,
];

impl FigureId {
    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
            FigureId::Fig8 => "fig8",
            FigureId::Fig9 => "fig9",
            FigureId::FigB1 => "figB1",
        }
    }

    pub fn names() -> Vec<&'static str> {
        ALL.iter().map(|f| f.name()).collect()
    }

    pub fn parse(s: &str) -> Option<Self> {
        ALL.iter()
            .copied()
            .find(|f| f.name().eq_ignore_ascii_case(s))
    }
}

/// One output file of a figure.
#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub name: String,
    pub kind: PanelKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PanelKind {
    /// An ordinary run given as key=value pairs.
    Run {
        command: Command,
        settings: Vec<(&'static str, String)>,
    },
    /// β′(n) along a combined-illumination chain next to its g²(0).
    EffectiveCoupling { beta: f64, ratio: f64, n_max: usize },
    /// Waveguide spectrum at the chain length maximising |ψ_incoh(ω = 0)|.
    BrightestWaveguide {
        beta: f64,
        n_max: usize,
        omega_max: f64,
    },
    /// Waveguide sweep with the low-OD and large-OD approximations alongside.
    WithApproximations { beta: f64, delta: f64, n_max: usize },
}

fn run(command: Command, settings: &[(&'static str, &str)]) -> PanelKind {
    PanelKind::Run {
        command,
        settings: settings.iter().map(|&(k, v)| (k, v.to_string())).collect(),
    }
}

fn panel(name: impl Into<String>, kind: PanelKind) -> Panel {
    Panel {
        name: name.into(),
        kind,
    }
}

pub fn panels(id: FigureId) -> Vec<Panel> {
    use Command::{Single, Sweep};
    match id {
        FigureId::Fig2 => ["0", "0.75", "1.5"]
            .iter()
            .map(|d| {
                panel(
                    format!("fig2_delta{d}"),
                    run(
                        Single,
                        &[
                            ("geometry", "external"),
                            ("beta", "0.01"),
                            ("delta", d),
                            ("observable", "psi_incoh_spectrum"),
                            ("omega_max", "5"),
                        ],
                    ),
                )
            })
            .collect(),
        FigureId::Fig3 => ["0", "0.5", "1"]
            .iter()
            .map(|d| {
                panel(
                    format!("fig3_delta{d}"),
                    run(
                        Sweep,
                        &[
                            ("geometry", "waveguide"),
                            ("beta", "0.007"),
                            ("delta", d),
                            ("n", "1:400"),
                        ],
                    ),
                )
            })
            .collect(),
        FigureId::Fig4 => [("0.01", "1:500"), ("0.05", "1:100"), ("0.1", "1:50")]
            .iter()
            .map(|(b, n)| {
                panel(
                    format!("fig4_beta{b}"),
                    run(
                        Sweep,
                        &[
                            ("geometry", "waveguide"),
                            ("beta", b),
                            ("n", n),
                            ("observable", "psi_incoh_zero"),
                        ],
                    ),
                )
            })
            .collect(),
        FigureId::Fig5 => vec![panel(
            "fig5",
            run(
                Sweep,
                &[("geometry", "bragg"), ("beta", "0.01"), ("n", "1:50")],
            ),
        )],
        FigureId::Fig6 => {
            let mut v: Vec<Panel> = ["1", "5", "21", "51", "101", "401"]
                .iter()
                .map(|n| {
                    panel(
                        format!("fig6_n{n}"),
                        run(
                            Command::Ensemble,
                            &[
                                ("geometry", "antibragg"),
                                ("beta", "0.01"),
                                ("n", n),
                                ("observable", "psi_incoh_spectrum"),
                                ("omega_max", "5"),
                            ],
                        ),
                    )
                })
                .collect();
            v.push(panel(
                "fig6_waveguide",
                PanelKind::BrightestWaveguide {
                    beta: 0.01,
                    n_max: 300,
                    omega_max: 5.0,
                },
            ));
            v
        }
        FigureId::Fig7 => vec![
            panel(
                "fig7_antibragg",
                run(
                    Sweep,
                    &[
                        ("geometry", "antibragg"),
                        ("beta", "0.01"),
                        ("n", "1:299:2"),
                    ],
                ),
            ),
            panel(
                "fig7_waveguide",
                run(
                    Sweep,
                    &[("geometry", "waveguide"), ("beta", "0.01"), ("n", "1:300")],
                ),
            ),
            panel(
                "fig7_bragg",
                run(
                    Sweep,
                    &[("geometry", "bragg"), ("beta", "0.01"), ("n", "1:300")],
                ),
            ),
        ],
        FigureId::Fig8 => vec![
            panel(
                "fig8_beta0.01_r2",
                PanelKind::EffectiveCoupling {
                    beta: 0.01,
                    ratio: 2.0,
                    n_max: 60,
                },
            ),
            panel(
                "fig8_beta0.01_r10",
                PanelKind::EffectiveCoupling {
                    beta: 0.01,
                    ratio: 10.0,
                    n_max: 20,
                },
            ),
            panel(
                "fig8_beta0.03_r5",
                PanelKind::EffectiveCoupling {
                    beta: 0.03,
                    ratio: 5.0,
                    n_max: 20,
                },
            ),
        ],
        FigureId::Fig9 => vec![
            panel(
                "fig9_waveguide",
                run(
                    Sweep,
                    &[("geometry", "waveguide"), ("beta", "0.01"), ("n", "1:200")],
                ),
            ),
            panel(
                "fig9_beta0.01_r2",
                run(
                    Sweep,
                    &[
                        ("geometry", "combined"),
                        ("beta", "0.01"),
                        ("ratio", "2"),
                        ("n", "1:60"),
                    ],
                ),
            ),
            panel(
                "fig9_beta0.01_r10",
                run(
                    Sweep,
                    &[
                        ("geometry", "combined"),
                        ("beta", "0.01"),
                        ("ratio", "10"),
                        ("n", "1:20"),
                    ],
                ),
            ),
            panel(
                "fig9_beta0.03_r5",
                run(
                    Sweep,
                    &[
                        ("geometry", "combined"),
                        ("beta", "0.03"),
                        ("ratio", "5"),
                        ("n", "1:20"),
                    ],
                ),
            ),
        ],
        FigureId::FigB1 => vec![
            panel(
                "figB1_delta0",
                PanelKind::WithApproximations {
                    beta: 0.01,
                    delta: 0.0,
                    n_max: 300,
                },
            ),
            panel(
                "figB1_delta0.5",
                PanelKind::WithApproximations {
                    beta: 0.01,
                    delta: 0.5,
                    n_max: 300,
                },
            ),
            panel(
                "figB1_delta1",
                PanelKind::WithApproximations {
                    beta: 0.01,
                    delta: 1.0,
                    n_max: 300,
                },
            ),
        ],
    }
}

/// Panel tables, each carrying the figure config so it can be regenerated.
pub fn render(cfg: &RunConfig) -> Result<Vec<(String, Table)>, CliError> {
    let id = cfg.figure.expect("figure id resolved");
    panels(id)
        .into_iter()
        .map(|p| {
            let (mut table, settings) = render_panel(&p.kind, cfg)?;
            table.config = cfg.echo();
            let mut meta = vec![
                ("panel".to_string(), p.name.clone()),
                ("defaults_version".to_string(), DEFAULTS_VERSION.to_string()),
            ];
            meta.extend(settings.into_iter().map(|(k, v)| (format!("panel.{k}"), v)));
            meta.append(&mut table.meta);
            table.meta = meta;
            Ok((p.name, table))
        })
        .collect()
}

fn render_panel(
    kind: &PanelKind,
    fig: &RunConfig,
) -> Result<(Table, Vec<(String, String)>), CliError> {
    let grid = run::grid(fig)?;
    match kind {
        PanelKind::Run { command, settings } => {
            let mut raw = RawConfig::default();
            for (k, v) in settings {
                raw.set_flag(k, Some(v));
            }
            raw.set_flag("grid_width", Some(&fig.grid_width.to_string()));
            raw.set_flag("grid_points", Some(&fig.grid_points.to_string()));
            let cfg = raw.resolve(*command)?;
            let table = match command {
                Command::Sweep => run::sweep(&cfg)?,
                _ => run::evaluate(&cfg)?,
            };
            let echoed = cfg
                .echo()
                .into_iter()
                .filter(|(k, _)| !matches!(*k, "grid_width" | "grid_points" | "format"))
                .map(|(k, v)| (k.to_string(), v))
                .collect();
            Ok((table, echoed))
        }
        PanelKind::EffectiveCoupling { beta, ratio, n_max } => {
            let p = EmitterParams::new(*beta, 0.0)?;
            let ns: Vec<usize> = (1..=*n_max).collect();
            let drive = DriveConfig::combined(Complex64::new(0.01, 0.0), *ratio, 1)?;
            let points = wqed_core::ensemble::g2_zero_sweep(
                &p,
                &drive,
                &ns,
                &grid,
                wqed_core::Exec::default(),
            )?;
            let couplings = effective_couplings(*beta, *ratio, *n_max);
            let mut t = Table::new(vec!["n", "beta_eff", "g2"], Vec::new());
            for (pt, b) in points.iter().zip(&couplings) {
                t.push(vec![pt.n as f64, *b, pt.g2_zero]);
            }
            Ok((
                t,
                settings(&[
                    ("beta", beta.to_string()),
                    ("ratio", ratio.to_string()),
                    ("n", format!("1:{n_max}")),
                ]),
            ))
        }
        PanelKind::BrightestWaveguide {
            beta,
            n_max,
            omega_max,
        } => {
            let p = EmitterParams::new(*beta, 0.0)?;
            let om = Complex64::new(0.01, 0.0);
            let mut best: Option<(f64, usize)> = None;
            for n in 1..=*n_max {
                let r = waveguide_chain(&p, &DriveConfig::waveguide(om, n)?, &grid)?;
                let v = r.psi_incoh_freq(0.0).value.norm();
                if best.is_none_or(|(b, _)| v > b) {
                    best = Some((v, n));
                }
            }
            let n = best.map(|(_, n)| n).unwrap_or(1);
            let r = waveguide_chain(&p, &DriveConfig::waveguide(om, n)?, &grid)?;
            let a = r.first_scattering().value;
            let a2 = (a * a).norm();
            let mut t = Table::new(
                vec![
                    "omega_over_gamma",
                    "re_psi",
                    "im_psi",
                    "abs_psi_over_alpha_sc2",
                ],
                Vec::new(),
            );
            for w in grid.omegas().into_iter().filter(|w| w.abs() <= *omega_max) {
                let psi = r.psi_incoh_freq(w).value;
                t.push(vec![w, psi.re, psi.im, psi.norm() / a2]);
            }
            t.meta("brightest_n", n.to_string());
            Ok((
                t,
                settings(&[
                    ("geometry", "waveguide".into()),
                    ("beta", beta.to_string()),
                    ("n", format!("1:{n_max}")),
                ]),
            ))
        }
        PanelKind::WithApproximations { beta, delta, n_max } => {
            let mut raw = RawConfig::default();
            raw.set_flag("geometry", Some("waveguide"));
            raw.set_flag("beta", Some(&beta.to_string()));
            raw.set_flag("delta", Some(&delta.to_string()));
            raw.set_flag("n", Some(&format!("1:{n_max}")));
            raw.set_flag("grid_width", Some(&fig.grid_width.to_string()));
            raw.set_flag("grid_points", Some(&fig.grid_points.to_string()));
            let cfg = raw.resolve(Command::Sweep)?;
            let base = run::sweep(&cfg)?;
            let p = EmitterParams::new(*beta, *delta)?;
            let om = run::drive_amplitude(&cfg);
            let single_zero = incoherent_time(&p, om, 0.0).value;
            let mut columns = SWEEP_COLUMNS.to_vec();
            columns.extend(["re_psi_low_od", "im_psi_low_od", "g2_large_od"]);
            let mut t = Table::new(columns, Vec::new());
            t.meta = base.meta;
            for row in base.rows {
                let n = row[0] as usize;
                // low optical depth: every emitter adds its own pair amplitude
                let low = single_zero * n as f64;
                let approx = if *delta == 0.0 {
                    approx_g2_zero(&p, n)?
                } else {
                    f64::NAN
                };
                let mut r = row;
                r.extend([low.re, low.im, approx]);
                t.push(r);
            }
            Ok((
                t,
                settings(&[
                    ("geometry", "waveguide".into()),
                    ("beta", beta.to_string()),
                    ("delta", delta.to_string()),
                    ("n", format!("1:{n_max}")),
                ]),
            ))
        }
    }
}

fn settings(pairs: &[(&str, String)]) -> Vec<(String, String)> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}
