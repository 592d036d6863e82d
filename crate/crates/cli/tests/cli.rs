use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn wqed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wqed"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = wqed(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn data_rows(csv: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = csv.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse::<f64>().unwrap()).collect())
        .collect();
    (header, rows)
}

fn meta<'a>(csv: &'a str, key: &str) -> Option<&'a str> {
    csv.lines()
        .find_map(|l| l.strip_prefix(&format!("# {key}=")))
}

#[test]
fn single_emitter_trace_has_a_zero_at_zero_delay() {
    let csv = run_ok(&[
        "single",
        "--beta",
        "0.01",
        "--delta",
        "0",
        "--observable",
        "g2_trace",
    ]);
    let (header, rows) = data_rows(&csv);
    assert_eq!(header, ["tau_gamma", "g2"]);
    let zero = rows.iter().find(|r| r[0] == 0.0).unwrap();
    assert_eq!(zero[1], 0.0);
    assert!(rows.iter().all(|r| r[0].abs() <= 10.0));
}

#[test]
fn sweep_reports_the_library_minimum() {
    let csv = run_ok(&[
        "sweep",
        "--geometry",
        "waveguide",
        "--beta",
        "0.01",
        "--delta",
        "0",
        "--n",
        "1:300",
        "--observable",
        "g2_zero",
    ]);
    let (header, rows) = data_rows(&csv);
    assert_eq!(header[..2], ["n".to_string(), "g2".to_string()]);
    let ns: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    assert_eq!(ns, (1..=300).map(|n| n as f64).collect::<Vec<_>>());
    let best = rows.iter().min_by(|a, b| a[1].total_cmp(&b[1])).unwrap();
    assert_eq!(
        meta(&csv, "antibunching_n").unwrap(),
        (best[0] as usize).to_string()
    );
    assert!(best[1] < 1e-3);
    assert!((140.0..=150.0).contains(&best[0]));
}

#[test]
fn sweep_output_is_sorted_and_unique() {
    let csv = run_ok(&[
        "sweep",
        "--geometry",
        "bragg",
        "--n",
        "5,1,3,1,5",
        "--grid-points",
        "4096",
    ]);
    let ns: Vec<f64> = data_rows(&csv).1.iter().map(|r| r[0]).collect();
    assert_eq!(ns, [1.0, 3.0, 5.0]);
}

#[test]
fn antibragg_spectrum_builds_up_towards_the_plateau() {
    let beta: f64 = 0.01;
    let plateau = 1.0 / (beta * (1.0 - beta));
    let at_zero = |n: &str| {
        let csv = run_ok(&[
            "ensemble",
            "--geometry",
            "antibragg",
            "--beta",
            "0.01",
            "--n",
            n,
            "--observable",
            "psi_incoh_spectrum",
        ]);
        let (header, rows) = data_rows(&csv);
        assert_eq!(header[3], "abs_psi_over_alpha_sc2");
        rows.iter().find(|r| r[0] == 0.0).unwrap()[3]
    };
    let keep = 1.0 - 4.0 * beta * (1.0 - beta);
    let v40 = at_zero("40");
    assert!(
        (v40 / (plateau * (1.0 - keep.powi(40))) - 1.0).abs() < 1e-9,
        "{v40}"
    );
    assert!((at_zero("401") / plateau - 1.0).abs() < 1e-3);
}

#[test]
fn bragg_pair_from_figure_data() {
    let dir = TempDir::new().unwrap();
    run_ok(&["figure", "fig5", "--out", dir.path().to_str().unwrap()]);
    let csv = fs::read_to_string(dir.path().join("fig5.csv")).unwrap();
    let (_, rows) = data_rows(&csv);
    let g2 = rows.iter().find(|r| r[0] == 2.0).unwrap()[1];
    assert!((g2 - 0.25).abs() < 0.02);
    assert_eq!(meta(&csv, "panel"), Some("fig5"));
}

#[test]
fn appendix_figure_dip_near_150() {
    let dir = TempDir::new().unwrap();
    run_ok(&["figure", "figB1", "--out", dir.path().to_str().unwrap()]);
    let csv = fs::read_to_string(dir.path().join("figB1_delta0.csv")).unwrap();
    let n: usize = meta(&csv, "antibunching_n").unwrap().parse().unwrap();
    assert!((145..=155).contains(&n), "{n}");
    let (header, rows) = data_rows(&csv);
    let col = header.iter().position(|h| h == "g2_large_od").unwrap();
    assert!(rows.iter().find(|r| r[0] == 152.0).unwrap()[col] < 1e-3);
}

#[test]
fn combined_figure_matches_a_direct_sweep() {
    let dir = TempDir::new().unwrap();
    run_ok(&["figure", "fig9", "--out", dir.path().to_str().unwrap()]);
    let fig = fs::read_to_string(dir.path().join("fig9_beta0.03_r5.csv")).unwrap();
    let direct = run_ok(&[
        "sweep",
        "--geometry",
        "combined",
        "--beta",
        "0.03",
        "--ratio",
        "5",
        "--n",
        "1:20",
    ]);
    assert_eq!(data_rows(&fig), data_rows(&direct));
    assert_eq!(
        meta(&fig, "antibunching_n"),
        meta(&direct, "antibunching_n")
    );
}

fn assert_round_trip(args: &[&str], name: &str) {
    let dir = TempDir::new().unwrap();
    let first = dir.path().join(name);
    let second = dir.path().join(format!("again_{name}"));
    let mut a: Vec<&str> = args.to_vec();
    a.extend(["--out", first.to_str().unwrap()]);
    run_ok(&a);
    let cmd = args[0];
    run_ok(&[
        cmd,
        "--config",
        first.to_str().unwrap(),
        "--out",
        second.to_str().unwrap(),
    ]);
    assert_eq!(
        fs::read(&first).unwrap(),
        fs::read(&second).unwrap(),
        "{args:?}"
    );
}

#[test]
fn echoed_config_reproduces_output_bytes() {
    assert_round_trip(
        &[
            "single",
            "--beta",
            "0.02",
            "--delta",
            "0.7",
            "--observable",
            "g2_trace",
            "--tau-max",
            "3",
        ],
        "a.csv",
    );
    assert_round_trip(
        &[
            "ensemble",
            "--geometry",
            "combined",
            "--ratio",
            "2",
            "--n",
            "12",
            "--observable",
            "squeezing",
            "--theta",
            "0.3",
        ],
        "b.csv",
    );
    assert_round_trip(
        &[
            "sweep",
            "--geometry",
            "antibragg",
            "--n",
            "1:41:4",
            "--grid-points",
            "4096",
        ],
        "c.csv",
    );
    assert_round_trip(
        &["mc", "--n", "2,4", "--samples", "5000", "--seed", "9"],
        "d.csv",
    );
    assert_round_trip(
        &[
            "ensemble",
            "--geometry",
            "waveguide",
            "--n",
            "30",
            "--observable",
            "psi_incoh_zero",
            "--format",
            "json",
        ],
        "e.json",
    );
}

#[test]
fn figure_panels_regenerate_from_any_panel_file() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    run_ok(&["figure", "fig2", "--out", a.to_str().unwrap()]);
    let one = a.join("fig2_delta0.75.csv");
    run_ok(&[
        "figure",
        "--config",
        one.to_str().unwrap(),
        "--out",
        b.to_str().unwrap(),
    ]);
    for name in ["fig2_delta0.csv", "fig2_delta0.75.csv", "fig2_delta1.5.csv"] {
        assert_eq!(
            fs::read(a.join(name)).unwrap(),
            fs::read(b.join(name)).unwrap()
        );
    }
}

#[test]
fn flags_override_the_config_file() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(
        &cfg,
        "# chain\ngeometry = bragg\nn = 2\nbeta = 0.01\nobservable = g2_zero\n",
    )
    .unwrap();
    let from_file = run_ok(&["ensemble", "--config", cfg.to_str().unwrap()]);
    assert!((data_rows(&from_file).1[0][1] - 0.25).abs() < 0.02);
    let overridden = run_ok(&["ensemble", "--config", cfg.to_str().unwrap(), "--n", "1"]);
    assert_eq!(meta(&overridden, "n"), Some("1"));
    assert!(data_rows(&overridden).1[0][1] < 1e-12);
}

#[test]
fn csv_dialect() {
    let csv = run_ok(&[
        "single",
        "--observable",
        "psi_incoh_spectrum",
        "--omega-max",
        "1",
    ]);
    assert!(!csv.contains('\r'));
    assert!(csv.starts_with("# wqed "));
    assert_eq!(meta(&csv, "flags"), Some("none"));
    let (header, rows) = data_rows(&csv);
    assert_eq!(
        header,
        [
            "omega_over_gamma",
            "re_psi",
            "im_psi",
            "abs_psi_over_alpha_sc2"
        ]
    );
    assert!(rows.iter().all(|r| r.len() == 4));
}

#[test]
fn json_output_parses() {
    let out = run_ok(&["mc", "--n", "3", "--samples", "1000", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["columns"][1], "g2");
    assert_eq!(v["config"]["seed"], "0");
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
}

fn code(args: &[&str]) -> (i32, String) {
    let out = wqed(args);
    (
        out.status.code().unwrap(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn config_errors_exit_with_2() {
    let (c, msg) = code(&["single", "--beta", "abc"]);
    assert_eq!(c, 2);
    assert!(msg.contains("`beta`"), "{msg}");
    assert_eq!(code(&["single", "--beta", "1.5"]).0, 2);
    assert_eq!(code(&["ensemble", "--geometry", "sideways"]).0, 2);
    assert_eq!(code(&["ensemble", "--n", "1:4"]).0, 2);
    assert_eq!(code(&["sweep", "--observable", "g2_trace"]).0, 2);
    assert_eq!(code(&["figure", "fig1"]).0, 2);
    assert_eq!(code(&["nonsense"]).0, 2);

    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "beta=0.01\nmystery=1\n").unwrap();
    let (c, msg) = code(&["single", "--config", cfg.to_str().unwrap()]);
    assert_eq!(c, 2);
    assert!(
        msg.contains("bad.cfg:2") && msg.contains("mystery"),
        "{msg}"
    );
}

#[test]
fn numerical_guards_exit_with_3() {
    let (c, msg) = code(&[
        "ensemble",
        "--geometry",
        "waveguide",
        "--n",
        "100",
        "--delta",
        "1",
        "--grid-width",
        "0.01",
        "--grid-points",
        "1024",
    ]);
    assert_eq!(c, 3);
    assert!(
        msg.contains("frequency grid truncates") && msg.contains("increase the grid width"),
        "{msg}"
    );
}

#[test]
fn output_path_is_not_echoed() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("x.csv");
    run_ok(&["single", "--out", p.to_str().unwrap()]);
    let text = fs::read_to_string(&p).unwrap();
    assert!(!text.contains(Path::new(dir.path()).to_str().unwrap()));
}
