use std::fs;
use std::process::Command;

use serde_json::Value;
use wkb_cli::output::{CompareRow, Report, SpectrumRow};
use wkb_cli::{run, EXIT_CONVERGENCE, EXIT_OK, EXIT_UNBOUND, EXIT_USAGE};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("wkb-spectra").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn spectrum_json(args: &[&str]) -> Report<SpectrumRow> {
    let (code, out, err) = invoke(args);
    assert_eq!(code, EXIT_OK, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn closed_coulomb_rows() {
    let r = spectrum_json(&[
        "spectrum",
        "--potential",
        "coulomb",
        "--params",
        "alpha=1",
        "--l",
        "0",
        "--nr-max",
        "2",
        "--method",
        "closed",
        "--format",
        "json",
    ]);
    let e: Vec<f64> = r.rows.iter().map(|row| row.energy).collect();
    assert_eq!(e, vec![-0.5, -0.125, -1.0 / 18.0]);
    assert_eq!(r.config_echo["potential"], "coulomb");
    assert_eq!(r.provenance.tolerances["root_residual"], 1e-9);
}

#[test]
fn quadrature_coulomb_rows() {
    let r = spectrum_json(&[
        "spectrum",
        "--potential",
        "coulomb",
        "--l",
        "0",
        "--nr-max",
        "2",
        "--method",
        "quadrature",
        "--format",
        "json",
    ]);
    for (row, want) in r.rows.iter().zip([-0.5, -0.125, -1.0 / 18.0]) {
        assert!((row.energy - want).abs() < 1e-8 * want.abs());
        assert!(row.residual.abs() < 1e-9);
        assert_eq!(row.method, "quadrature_2tp");
    }
}

#[test]
fn rows_are_ordered_by_l_then_n_r_then_method() {
    let r = spectrum_json(&[
        "spectrum",
        "--potential",
        "oscillator",
        "--l-max",
        "1",
        "--nr-max",
        "1",
        "--method",
        "oracle,quadrature,closed",
        "--format",
        "json",
    ]);
    let keys: Vec<(u32, u32, &str)> = r.rows.iter().map(|x| (x.l, x.n_r, x.method.as_str())).collect();
    assert_eq!(keys.len(), 12);
    assert_eq!(&keys[..3], &[(0, 0, "closed_form"), (0, 0, "quadrature_2tp"), (0, 0, "oracle")]);
    assert_eq!(keys[11], (1, 1, "oracle"));
    for row in &r.rows {
        let want = 2.0 * row.n_r as f64 + row.l as f64 + 1.5;
        assert!((row.energy - want).abs() < 1e-4, "{row:?}");
    }
}

#[test]
fn multiwell_oscillator_matches_single_interval() {
    let r = spectrum_json(&[
        "spectrum",
        "--potential",
        "oscillator",
        "--nr-max",
        "2",
        "--method",
        "multiwell,quadrature",
        "--format",
        "json",
    ]);
    for pair in r.rows.chunks(2) {
        assert!((pair[0].energy - pair[1].energy).abs() < 1e-8 * pair[0].energy);
    }
}

#[test]
fn multiwell_needs_signed_potential() {
    let (code, _, err) = invoke(&["spectrum", "--potential", "coulomb", "--method", "multiwell"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("multiwell"));
}

#[test]
fn hulthen_out_of_range_is_unbound() {
    let (code, _, err) = invoke(&["spectrum", "--potential", "hulthen", "--params", "v0=1,r0=1", "--nr-max", "5"]);
    assert_eq!(code, EXIT_UNBOUND);
    assert!(err.contains("N=2"), "{err}");
}

#[test]
fn convergence_failure_names_the_operation() {
    let (code, _, err) =
        invoke(&["spectrum", "--potential", "coulomb", "--method", "quadrature", "--tol-root", "1e-20"]);
    assert_eq!(code, EXIT_CONVERGENCE);
    assert!(err.contains("phase_integral"), "{err}");
}

#[test]
fn invalid_inputs_exit_2() {
    for args in [
        &["spectrum", "--potential", "nope"][..],
        &["spectrum", "--potential", "coulomb", "--params", "omega=1"],
        &["spectrum", "--potential", "coulomb", "--params", "alpha=-1"],
        &["spectrum", "--potential", "coulomb", "--params", "alpha"],
        &["spectrum", "--potential", "coulomb", "--tol-quad", "0"],
        &["spectrum", "--potential", "coulomb", "--nr", "3", "--nr-max", "1"],
        &["spectrum", "--potential", "coulomb", "--variant", "morse-with-m"],
        &["spectrum", "--potential", "coulomb", "--hbar", "-1"],
        &["spectrum", "--potential", "tabulated"],
        &["spectrum", "--bogus"],
        &["compare", "--potential", "nope"],
    ] {
        let (code, _, err) = invoke(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}: {err}");
    }
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("spectrum"));
}

#[test]
fn csv_columns_and_precision() {
    let (code, out, _) = invoke(&["spectrum", "--potential", "coulomb", "--nr-max", "1"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n_r,l,method,energy,residual"));
    let row: Vec<&str> = lines.nth(1).unwrap().split(',').collect();
    assert_eq!(row[..3], ["1", "0", "closed_form"]);
    assert_eq!(row[3].parse::<f64>().unwrap(), -0.125);
}

#[test]
fn json_round_trip_is_bit_exact() {
    let (code, out, _) = invoke(&[
        "spectrum",
        "--potential",
        "hulthen",
        "--l-max",
        "1",
        "--nr-max",
        "1",
        "--method",
        "closed,quadrature",
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let r: Report<SpectrumRow> = serde_json::from_str(&out).unwrap();
    let again = serde_json::to_string_pretty(&r).unwrap() + "\n";
    assert_eq!(again, out);
    let units = wkb_core::UnitsContext::NATURAL;
    for row in r.rows.iter().filter(|r| r.method == "closed_form") {
        let want = wkb_core::spectra::hulthen_energy(10.0, 1.0, &units, row.n_r, row.l).unwrap();
        assert_eq!(row.energy.to_bits(), want.to_bits());
    }
}

#[test]
fn config_file_with_command_line_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# sweep\npotential = hulthen\nv0 = 2\nr0 = 3 # long range\nhbar = 1\n").unwrap();
    let path = cfg.to_str().unwrap();
    let from_file = spectrum_json(&["spectrum", "--config", path, "--format", "json"]);
    assert_eq!(from_file.config_echo["params"]["v0"], 2.0);
    let want = wkb_core::spectra::hulthen_energy(2.0, 3.0, &wkb_core::UnitsContext::NATURAL, 0, 0).unwrap();
    assert_eq!(from_file.rows[0].energy, want);
    let overridden = spectrum_json(&["spectrum", "--config", path, "--params", "v0=5", "--format", "json"]);
    assert_eq!(overridden.config_echo["params"]["v0"], 5.0);
    assert_eq!(overridden.config_echo["params"]["r0"], 3.0);
}

#[test]
fn tabulated_potential_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("v.csv");
    let mut text = String::from("r,v\n");
    for i in 1..=4000 {
        let r = i as f64 * 0.0025;
        text.push_str(&format!("{r},{}\n", 0.5 * r * r));
    }
    fs::write(&table, text).unwrap();
    let r = spectrum_json(&[
        "spectrum",
        "--potential",
        "tabulated",
        "--table",
        table.to_str().unwrap(),
        "--method",
        "quadrature",
        "--nr-max",
        "1",
        "--format",
        "json",
    ]);
    assert!((r.rows[0].energy - 1.5).abs() < 1e-3, "{:?}", r.rows);
    assert!((r.rows[1].energy - 3.5).abs() < 1e-3, "{:?}", r.rows);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("levels.csv");
    let (code, out, _) = invoke(&["spectrum", "--potential", "coulomb", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    assert!(fs::read_to_string(&path).unwrap().starts_with("n_r,l,method"));
}

#[test]
fn angular_examples() {
    let (code, out, _) = invoke(&["angular", "--l", "0", "--mz", "0", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"][0]["m"], 0.5);
    assert_eq!(v["rows"][0]["m_squared"], 0.25);

    let (_, out, _) = invoke(&["angular", "--l", "3", "--mz", "2", "--samples", "5", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"][0]["m"], 3.5);
    let integral = v["rows"][0]["polar_integral_numeric"].as_f64().unwrap();
    assert!((integral - 1.5 * std::f64::consts::PI).abs() < 1e-10);
    assert_eq!(v["extra"]["samples"].as_array().unwrap().len(), 5);

    let (code, _, _) = invoke(&["angular", "--l", "1", "--mz", "2"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = invoke(&["angular", "--l", "1", "--mz", "-1"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn wavefunction_csv_and_nodes() {
    let (code, out, _) = invoke(&["wavefunction", "--potential", "coulomb", "--nr", "3", "--l", "1"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("# n_r=3 l=1"));
    assert!(lines[1].contains("method=quadrature_2tp"));
    assert_eq!(lines[3], "r,psi");
    assert_eq!(lines.len() - 4, 4096);

    let (code, out, _) =
        invoke(&["wavefunction", "--potential", "oscillator", "--nr", "2", "--normalize", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["nodes"], 2);

    let (code, _, _) =
        invoke(&["wavefunction", "--potential", "coulomb", "--form", "standing-wave", "--method", "closed"]);
    assert_eq!(code, EXIT_OK);
    let (code, _, _) = invoke(&["wavefunction", "--potential", "oscillator", "--form", "standing-wave"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = invoke(&["wavefunction", "--potential", "hulthen", "--params", "v0=1", "--nr", "3"]);
    assert_eq!(code, EXIT_UNBOUND);
}

#[test]
fn compare_reports() {
    let (code, out, _) =
        invoke(&["compare", "--potential", "coulomb", "--l", "0", "--nr-max", "2", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let r: Report<CompareRow> = serde_json::from_str(&out).unwrap();
    assert_eq!(r.rows.len(), 3);
    assert!(r.rows.iter().all(|row| row.max_abs_delta.unwrap() < 1e-3));

    let (code, out, err) = invoke(&["compare", "--potential", "morse", "--nr-max", "0", "--format", "json"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let r: Report<CompareRow> = serde_json::from_str(&out).unwrap();
    assert!((r.rows[0].delta_alt_closed.unwrap() - 0.414).abs() < 1e-3);
}

#[test]
fn compare_fails_when_nothing_is_available() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("flat.txt");
    fs::write(&table, "0.1 1\n1 1\n2 1\n3 1\n").unwrap();
    let (code, _, err) =
        invoke(&["compare", "--potential", "tabulated", "--table", table.to_str().unwrap(), "--points", "200"]);
    assert_eq!(code, EXIT_CONVERGENCE, "{err}");
}

fn binary(args: &[&str], threads: Option<&str>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wkb-spectra"));
    cmd.args(args).env_remove("WKB_SPECTRA_THREADS");
    if let Some(t) = threads {
        cmd.env("WKB_SPECTRA_THREADS", t);
    }
    let out = cmd.output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn thread_cap_does_not_change_output() {
    let args = ["spectrum", "--potential", "coulomb", "--l-max", "2", "--nr-max", "3", "--method", "quadrature,closed"];
    let (c1, one) = binary(&args, Some("1"));
    let (c2, many) = binary(&args, None);
    assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
    assert_eq!(one, many);
    assert_eq!(binary(&args, Some("zero")).0, EXIT_USAGE);
    assert_eq!(binary(&["spectrum", "--potential", "nope"], None).0, EXIT_USAGE);
}
