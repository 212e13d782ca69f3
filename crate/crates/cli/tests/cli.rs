//! End-to-end tests of the `hermann` binary: flags, exit codes, file
//! outputs, config handling.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hermann"))
}

fn fresh_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hermann-cli-{name}"));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(path: &Path) -> serde_json::Value {
    let text = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    serde_json::from_str(&text).expect("valid json")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

#[test]
fn analyze_flagship_point() {
    let dir = fresh_dir("analyze-flagship");
    let out = run(&[
        "analyze", "--entry", "su_pq_so", "--param", "p=2", "--param", "q=1",
        "--w", "pi/8", "--out", dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr_of(&out));

    let report = json(&dir.join("property_report.json"));
    assert_eq!(report["schema"], 1);
    assert_eq!(report["minimal"], true);
    assert_eq!(report["austere_finite"], false);
    assert_eq!(report["austere_pf"], true);
    assert_eq!(report["totally_geodesic"], false);
    assert_eq!(report["tangent_dim"], 3);
    assert_eq!(report["normal_dim"], 1);

    let csv = std::fs::read_to_string(dir.join("finite_spectrum.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("value,mult,root_index,eps_index,eps_angle"));
    assert_eq!(lines.count(), 3);

    let pf = json(&dir.join("pf_spectrum.json"));
    assert_eq!(pf["families"].as_array().unwrap().len(), 3);
}

#[test]
fn analyze_equal_involutions_origin_is_totally_geodesic() {
    let dir = fresh_dir("analyze-equal");
    let out = run(&[
        "analyze", "--entry", "sigma_eq_tau", "--param", "n=3",
        "--w", "0", "--out", dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let report = json(&dir.join("property_report.json"));
    assert_eq!(report["entry"], "su-so-diag");
    assert_eq!(report["totally_geodesic"], true);
    assert_eq!(report["austere_finite"], true);
    assert_eq!(report["austere_pf"], true);
    assert_eq!(report["minimal"], true);
}

#[test]
fn malformed_w_names_the_field_and_exits_two() {
    let out = run(&[
        "analyze", "--entry", "su-pq-so", "--param", "p=2", "--param", "q=1",
        "--w", "banana",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("w:"), "{}", stderr_of(&out));
}

#[test]
fn wrong_dimension_w_exits_two() {
    let out = run(&[
        "analyze", "--entry", "su-pq-so", "--param", "p=3", "--param", "q=2",
        "--w", "pi/8,pi/8,pi/8",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(err.contains("w:") && err.contains("dimension"), "{err}");
}

#[test]
fn unknown_entry_exits_two() {
    let out = run(&["analyze", "--entry", "nonsense", "--w", "pi/8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("entry"), "{}", stderr_of(&out));
}

#[test]
fn verify_clean_entry_exits_zero() {
    let dir = fresh_dir("verify-clean");
    let out = run(&[
        "verify", "--entry", "su-pq-so", "--param", "p=2", "--param", "q=1",
        "--grid", "40", "--out", dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let report = json(&dir.join("theorem_report.json"));
    assert_eq!(report["ok"], true);
    assert_eq!(report["golden_ok"], true);
    assert_eq!(report["checks"].as_array().unwrap().len(), 6);
    assert!(report["points_checked"].as_u64().unwrap() >= 39);
}

#[test]
fn verify_fault_injection_exits_one() {
    let dir = fresh_dir("verify-fault");
    let out = run(&[
        "verify", "--entry", "su-pq-so", "--param", "p=2", "--param", "q=1",
        "--grid", "10", "--inject-fault", "corrupt-multiplicity",
        "--out", dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_of(&out);
    assert!(err.contains("multiplicity"), "{err}");
    let report = json(&dir.join("theorem_report.json"));
    assert_eq!(report["ok"], false);
}

#[test]
fn truncate_converges_and_perp_is_exact() {
    let dir = fresh_dir("truncate");
    let out = run(&[
        "truncate", "--entry", "su-pq-so", "--param", "p=2", "--param", "q=1",
        "--w", "origin", "--N", "25,50,100", "--out", dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let csv = std::fs::read_to_string(dir.join("truncation.csv")).unwrap();
    let mut top_devs: Vec<(String, Vec<f64>)> = Vec::new();
    let mut perp_devs: Vec<f64> = Vec::new();
    for line in csv.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let key = format!("{}-{}", cells[1], cells[2]);
        let dev: f64 = cells[7].parse().unwrap();
        match cells[0] {
            "top" => match top_devs.iter_mut().find(|(k, _)| *k == key) {
                Some((_, v)) => v.push(dev),
                None => top_devs.push((key, vec![dev])),
            },
            "perp" => perp_devs.push(dev),
            other => panic!("unexpected block {other}"),
        }
    }
    // At the origin the short root's plus component is perpendicular and
    // the two half-lattice components give tangent blocks.
    assert_eq!(top_devs.len(), 2);
    assert_eq!(perp_devs.len(), 3);
    for (key, devs) in &top_devs {
        assert_eq!(devs.len(), 3);
        assert!(devs[0] > devs[1] && devs[1] > devs[2], "{key}: {devs:?}");
    }
    for dev in perp_devs {
        assert!(dev < 1e-12, "{dev}");
    }
}

#[test]
fn truncate_rejects_n_zero() {
    let out = run(&[
        "truncate", "--entry", "su-pq-so", "--param", "p=2", "--param", "q=1",
        "--w", "pi/8", "--N", "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("N:"), "{}", stderr_of(&out));
}

#[test]
fn catalog_lists_entries() {
    let out = run(&["catalog"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("su-pq-so") && text.contains("su-so-diag") && text.contains("su-ad-ad"));
}

#[test]
fn catalog_exports_records() {
    let dir = fresh_dir("catalog-export");
    let out = run(&[
        "catalog", "--entry", "su-pq-so", "--param", "p=2", "--param", "q=1",
        "--out", dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let export = json(&dir.join("catalog_su-pq-so.json"));
    assert_eq!(export["schema"], 1);
    let expected = export["expected_roots"].as_array().unwrap();
    assert_eq!(expected.len(), 2);
    let extracted = &export["extracted"];
    assert_eq!(extracted["positive_roots"].as_array().unwrap().len(), 2);
    assert_eq!(extracted["dims"]["dim_m"], 4);
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let dir = fresh_dir("config-file");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg_path = dir.join("run.toml");
    std::fs::write(
        &cfg_path,
        format!(
            "entry = \"su-pq-so\"\nw = \"pi/4\"\nout = \"{}\"\n\n[params]\np = 2\nq = 1\n",
            dir.display()
        ),
    )
    .unwrap();

    // Config alone: w = pi/4.
    let out = run(&["analyze", "--config", cfg_path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let report = json(&dir.join("property_report.json"));
    assert_eq!(report["w_display"][0], "pi/4");

    // Flag overrides the file value.
    let out = run(&["analyze", "--config", cfg_path.to_str().unwrap(), "--w", "pi/8"]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let report = json(&dir.join("property_report.json"));
    assert_eq!(report["w_display"][0], "pi/8");
}

#[test]
fn out_dir_env_var_is_used_when_no_flag() {
    let dir = fresh_dir("env-out");
    let out = bin()
        .args(["analyze", "--entry", "su-pq-so", "--param", "p=2", "--param", "q=1", "--w", "pi/8"])
        .env("HERMANN_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr_of(&out));
    assert!(dir.join("property_report.json").exists());
}

#[test]
fn json_format_switches_the_spectrum_file() {
    let dir = fresh_dir("format-json");
    let out = run(&[
        "analyze", "--entry", "su-pq-so", "--param", "p=2", "--param", "q=1",
        "--w", "pi/8", "--format", "json", "--out", dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    assert!(dir.join("finite_spectrum.json").exists());
    assert!(!dir.join("finite_spectrum.csv").exists());
    let spec = json(&dir.join("finite_spectrum.json"));
    assert_eq!(spec["rows"].as_array().unwrap().len(), 3);
}
