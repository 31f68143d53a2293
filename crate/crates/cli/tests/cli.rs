//! End-to-end tests driving the built binary, covering the exit-code
//! contract, table formats, config-file merging, and the CSV round-trip
//! guarantee.

use std::path::PathBuf;
use std::process::{Command, Output};

use pdmwell::{
    eigenfunction_on_grid, find_spectrum, DimensionlessProblem, ShootingConfig,
};

fn pdmwell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdmwell"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

/// Parse a CSV table into (metadata lines, header, numeric-or-text rows).
fn parse_csv(text: &str) -> (Vec<String>, Vec<String>, Vec<Vec<String>>) {
    let mut meta = Vec::new();
    let mut header = Vec::new();
    let mut rows = Vec::new();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("# ") {
            meta.push(rest.to_string());
        } else if header.is_empty() {
            header = line.split(',').map(str::to_string).collect();
        } else {
            rows.push(line.split(',').map(str::to_string).collect());
        }
    }
    (meta, header, rows)
}

fn scratch(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("pdmwell-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn spectrum_csv_matches_reference_value() {
    let out = pdmwell(&[
        "spectrum", "--member", "0,2", "--vcal0", "-50", "--levels", "4", "--method", "shooting",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let (meta, header, rows) = parse_csv(&stdout(&out));
    assert_eq!(header, ["n", "parity", "E_dimensionless", "E_physical", "method", "err"]);
    assert!(meta.iter().any(|m| m == "member = (0,2)"));
    assert_eq!(rows.len(), 4);
    let e0: f64 = rows[0][2].parse().unwrap();
    assert!((e0 - 26.08773401704787).abs() / 26.08773401704787 < 1e-6);
    // natural units leave the physical column empty
    assert!(rows.iter().all(|r| r[3].is_empty()));
    assert_eq!(rows[0][1], "even");
    assert_eq!(rows[1][1], "odd");
}

#[test]
fn spectrum_method_all_is_mutually_consistent() {
    let out = pdmwell(&[
        "spectrum", "--member", "0,0", "--vcal0", "2", "--levels", "3", "--method", "all",
        "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9, "three methods x three levels");
    for n in 0..3 {
        let energies: Vec<f64> = rows
            .iter()
            .filter(|r| r["n"] == n)
            .map(|r| r["E_dimensionless"].as_f64().unwrap())
            .collect();
        assert_eq!(energies.len(), 3);
        // constant-depth shift of the solvable ladder: E_n = (n+1)(n+2) - vcal0
        let expect = ((n + 1) * (n + 2)) as f64 - 2.0;
        for e in &energies {
            assert!(
                (e - expect).abs() <= 1e-4 * expect.abs().max(1.0),
                "method disagreement at level {n}: {energies:?}"
            );
        }
    }
    assert_eq!(v["meta"]["member"], "(0,0)");
    assert_eq!(v["meta"]["vcal0"], 2.0);
}

#[test]
fn spectrum_rejects_zero_levels() {
    let out = pdmwell(&["spectrum", "--member", "0,0", "--levels", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("levels"));
}

#[test]
fn spectrum_rejects_unsupported_member() {
    let out = pdmwell(&["spectrum", "--member", "3,3", "--vcal0", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unsupported"));
}

#[test]
fn bounded_window_reports_partial_spectrum() {
    // only E = 2 and 6 live below 10; asking for 6 levels is a partial result
    let out = pdmwell(&[
        "spectrum", "--member", "0,0", "--vcal0", "0", "--levels", "6", "--e-min", "0", "--e-max",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
    let (meta, _, rows) = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 2, "the two levels inside the window are still emitted");
    assert!(meta.iter().any(|m| m.contains("found 2 of 6")));
}

#[test]
fn wavefunction_level_beyond_window_exits_2() {
    let out = pdmwell(&[
        "wavefunction", "--member", "0,0", "--vcal0", "0", "--level", "5", "--e-min", "0",
        "--e-max", "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("beyond the computed spectrum"));
}

#[test]
fn wavefunction_csv_round_trips_against_library() {
    let path = scratch("roundtrip.csv");
    let out = pdmwell(&[
        "wavefunction", "--member", "0,2", "--vcal0", "-50", "--level", "1", "--x-max", "8",
        "--samples", "321", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let (meta, header, rows) = parse_csv(&text);
    assert_eq!(header, ["x", "z", "psi", "phi", "psi_sq_normalized"]);
    assert_eq!(rows.len(), 321);
    assert!(meta.iter().any(|m| m == "nodes = 1"));

    // recompute through the library with the same configuration
    let prob = DimensionlessProblem::natural(0, 2, -50.0).unwrap();
    let cfg = ShootingConfig::default();
    let pairs = find_spectrum(&prob, 2, &cfg).unwrap();
    let samples = eigenfunction_on_grid(&prob, &pairs[1], &cfg, 8.0, 321).unwrap();

    for (i, row) in rows.iter().enumerate() {
        let cols: Vec<f64> = row.iter().map(|s| s.parse().unwrap()).collect();
        assert!((cols[0] - samples.grid_x[i]).abs() <= 1e-12);
        assert!((cols[1] - samples.grid_z[i]).abs() <= 1e-12);
        assert!((cols[2] - samples.psi[i]).abs() <= 1e-12);
        assert!((cols[3] - samples.phi[i]).abs() <= 1e-12);
        assert!((cols[4] - samples.psi[i] * samples.psi[i]).abs() <= 1e-12);
    }
}

#[test]
fn wavefunction_deep_halfline_ground_state_has_two_density_peaks() {
    let out = pdmwell(&[
        "wavefunction", "--member", "-2,0", "--vcal0", "-32", "--level", "0", "--x-max", "6",
        "--samples", "301",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let (meta, _, rows) = parse_csv(&stdout(&out));
    assert!(meta.iter().any(|m| m == "nodes = 0"));
    assert!(meta.iter().any(|m| m.starts_with("E_dimensionless = 26.7156")));
    let dens: Vec<f64> = rows.iter().map(|r| r[4].parse().unwrap()).collect();
    let peak = dens.iter().cloned().fold(0.0f64, f64::max);
    let peaks = (1..dens.len() - 1)
        .filter(|&i| {
            dens[i] > dens[i - 1] && dens[i] > dens[i + 1] && dens[i] > 0.05 * peak
        })
        .count();
    // repulsive core at the origin: the even-extended density is double-humped
    assert_eq!(peaks, 2, "expected a two-peak density profile");
}

#[test]
fn potential_emits_both_coordinate_profiles() {
    let out = pdmwell(&[
        "potential", "--member", "2,4", "--vcal0", "50", "--x-max", "5", "--samples", "101",
        "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["meta"]["well_shape"], "double");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 101);
    // V(x) -> 0 in the tails; the transformed barrier grows toward the walls
    let first = &rows[0];
    assert!(first["Vcal_x"].as_f64().unwrap().abs() < 1e-2);
    assert!(first["Vcal_z"].as_f64().unwrap() > 1.0);
    assert!(first["V_physical"].is_null(), "natural units leave physical column null");
    let mid = &rows[50];
    assert_eq!(mid["x"].as_f64().unwrap(), 0.0);
    assert_eq!(mid["Vcal_z"].as_f64().unwrap(), 0.5);
}

#[test]
fn physical_columns_populate_under_scale_overrides() {
    let out = pdmwell(&[
        "spectrum", "--member", "0,0", "--vcal0", "0", "--levels", "1", "--method", "analytic",
        "--m0", "2",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let (meta, _, rows) = parse_csv(&stdout(&out));
    assert!(meta.iter().any(|m| m == "units = scaled"));
    // E_physical = E * hbar^2/(2 m0 d^2) = 2 * 0.25
    let e_phys: f64 = rows[0][3].parse().unwrap();
    assert!((e_phys - 0.5).abs() < 1e-14);
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let path = scratch("config.json");
    std::fs::write(
        &path,
        r#"{"member": [0, 0], "vcal0": 0.0, "levels": 2, "method": "analytic"}"#,
    )
    .unwrap();
    let out = pdmwell(&[
        "spectrum", "--config", path.to_str().unwrap(), "--levels", "3",
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let (_, _, rows) = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 3, "flag overrides the config file's levels = 2");
    let energies: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(energies, [2.0, 6.0, 12.0]);
}

#[test]
fn config_file_rejects_unknown_keys() {
    let path = scratch("bad-config.json");
    std::fs::write(&path, r#"{"member": [0, 0], "levls": 2}"#).unwrap();
    let out = pdmwell(&["spectrum", "--config", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("levls"));
}

#[test]
fn verify_passes_on_a_member_subset() {
    let out = pdmwell(&["verify", "--member", "1,1"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("[PASS] regression (1,1)"));
    assert!(text.contains("0 failed"));
}

#[test]
fn verify_fails_under_impossible_tolerance() {
    let out = pdmwell(&["verify", "--member", "1,1", "--tol", "1e-15"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("[FAIL]"));
    assert!(stderr(&out).contains("fixture"));
}

#[test]
fn verify_json_report_is_well_formed() {
    let out = pdmwell(&["verify", "--member", "-2,0", "--json"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["meta"]["all_pass"], true);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2, "two benchmark depths for (-2,0)");
    for row in rows {
        assert_eq!(row["pass"], true);
        assert!(row["max_rel_dev"].as_f64().unwrap() <= row["tol"].as_f64().unwrap());
    }
}
