use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperindex")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hyperindex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn records(o: &Output) -> Vec<serde_json::Map<String, serde_json::Value>> {
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("stdout is JSON");
    v.as_array().unwrap().iter().map(|r| r.as_object().unwrap().clone()).collect()
}

#[test]
fn eval_dougall_example_converges() {
    let o = bin(&["eval", "dougall", "--a1", "0.1", "--a2", "0.2i", "--b1", "1.3", "--b2", "1.4-0.2i"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let recs = records(&o);
    assert_eq!(recs.len(), 1);
    let r = &recs[0];
    assert_eq!(r["status"], "converged");
    for key in ["a1_re", "a2_im", "b2_im", "value_re", "value_im", "abs_error"] {
        assert!(r.contains_key(key), "{key}");
    }
    let diff = (r["value_re"].as_f64().unwrap() - r["closed_form_re"].as_f64().unwrap()).abs();
    assert!(diff < 1e-12);
    // the same point given as RE,IM pairs
    let o2 = bin(&["eval", "dougall", "--a1", "0.1,0", "--a2", "0,0.2", "--b1", "1.3", "--b2", "1.4,-0.2"]);
    assert_eq!(o.stdout, o2.stdout);
}

#[test]
fn eval_on_an_empty_grid_emits_nothing() {
    let o = bin(&["eval", "phi", "--x", "linspace(-1,1,0)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(records(&o).is_empty());
    let o = bin(&["eval", "phi", "--x", "linspace(-1,1,0)", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1, "header only");
}

#[test]
fn eval_r_rejects_integer_s_minus_t() {
    let o = bin(&["eval", "r", "--t", "0.1,0", "--s", "1.1,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("s−t ∉ ℤ"), "{}", stderr(&o));
    let o = bin(&["eval", "r", "--t", "0.1,0.3", "--s", "-0.9,0.3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bin(&["eval", "r", "--t", "0.1", "--s", "0.3,0.2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(records(&o).len(), 4);
}

#[test]
fn eval_covers_every_quantity() {
    for (q, extra) in [
        ("phi", vec!["--x", "-1,0.5"]),
        ("psi1", vec!["--x", "0.6"]),
        ("psi2", vec!["--x", "0.6"]),
        ("theta", vec!["--x", "2"]),
        ("delta", vec![]),
        ("xi", vec![]),
        ("r", vec![]),
        ("romanovski", vec!["--alpha", "1.8", "--beta", "0.5", "--k", "1", "--x", "0.3"]),
        ("h2star", vec!["--z", "0,1"]),
        ("dougall", vec![]),
    ] {
        let mut args = vec!["eval", q];
        args.extend(extra);
        let o = bin(&args);
        assert_eq!(o.status.code(), Some(0), "{q}: {}", stderr(&o));
        for r in records(&o) {
            assert!(r["value_re"].is_number() && r["value_im"].is_number(), "{q}");
            assert!(r.contains_key("abs_error") && r.contains_key("status"), "{q}");
            assert!(r.keys().all(|k| k.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')));
        }
    }
}

#[test]
fn numeric_failures_exit_3_with_the_error_name() {
    // κ = Re(a₁+a₂−b₁−b₂) = 3 diverges
    let o = bin(&["eval", "h2star", "--a1", "2", "--a2", "2", "--b1", "0.5", "--b2", "0.5", "--z", "1"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("DivergenceError"), "{}", stderr(&o));
}

#[test]
fn config_errors_exit_2() {
    for args in [
        vec!["eval"],
        vec!["eval", "nothing"],
        vec!["frobnicate"],
        vec!["eval", "phi", "--alpha", "-1"],
        vec!["eval", "phi", "--alpha", "nan"],
        vec!["eval", "romanovski", "--alpha", "0.3"],
        vec!["eval", "delta", "--sigma-re", "0.2"],
        vec!["eval", "h2star", "--z", "2"],
        vec!["verify", "nope"],
        vec!["verify", "gamma", "--seed", "-3"],
        vec!["eval", "phi", "--format", "xml"],
        vec!["eval", "phi", "--nu-max", "1000"],
        vec!["eval", "phi", "--bogus", "1"],
        vec!["eval", "phi", "--config", "/nonexistent/config"],
    ] {
        let o = bin(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}

#[test]
fn table_of_phi_has_one_row_per_grid_point() {
    let o = bin(&["table", "phi", "--sigma-im", "0.4", "--t", "0.1", "--x", "linspace(-5,5,101)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,value_re,value_im");
    assert_eq!(lines.len(), 102);
    assert!(!text.contains('\r') && text.ends_with('\n'));
    // grid order, 17 significant digits
    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first[0], "-5.0000000000000000e0");
    assert_eq!(first[1].trim_start_matches('-').split('e').next().unwrap().replace('.', "").len(), 17);
    let xs: Vec<f64> = lines[1..].iter().map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert!(xs.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn table_of_r_has_eight_value_columns() {
    let o = bin(&["table", "r", "--nu", "linspace(0.1,10,100)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 101);
    let header: Vec<&str> = lines[0].split(',').collect();
    assert_eq!(header.len(), 9);
    assert_eq!(header[0], "nu");
    assert!(lines.iter().all(|l| l.split(',').count() == 9));
}

#[test]
fn table_output_reemits_identically() {
    let first = scratch("phi.csv");
    let second = scratch("phi-again.csv");
    let o = bin(&["table", "theta", "--x", "linspace(-3,3,13)", "--out", first.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let o = bin(&["table", "--input", first.to_str().unwrap(), "--out", second.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());
    let o = bin(&["table", "--input", second.to_str().unwrap()]);
    assert_eq!(o.stdout, std::fs::read(&first).unwrap());
}

#[test]
fn malformed_grids_exit_2() {
    for grid in ["linspace(-5,5", "linspace(0,1,2.5)", "linspace(0,1)", "1,,2", "a,b", "linspace(0,1,1000000000)"] {
        let o = bin(&["table", "phi", "--x", grid]);
        assert_eq!(o.status.code(), Some(2), "{grid}: {}", stderr(&o));
    }
    let o = bin(&["table", "r", "--nu", "linspace(-1,1,3)"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bin(&["table", "r"]);
    assert_eq!(o.status.code(), Some(2), "a ν table needs a ν grid");
    let garbage = scratch("garbage.csv");
    std::fs::write(&garbage, "a,b\n1,2,3\n").unwrap();
    assert_eq!(bin(&["table", "--input", garbage.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn config_files_and_flag_overrides() {
    let kv = scratch("run.cfg");
    std::fs::write(&kv, "# dougall run\ncommand = eval\nquantity = dougall\na1 = 0.1\na2 = 0,0.2\nb1 = 1.3\nb2 = 1.4,-0.2\n").unwrap();
    let from_file = bin(&["--config", kv.to_str().unwrap()]);
    assert_eq!(from_file.status.code(), Some(0), "{}", stderr(&from_file));
    let direct = bin(&["eval", "dougall"]);
    assert_eq!(from_file.stdout, direct.stdout, "the defaults are the dougall example");

    let json = scratch("run.json");
    std::fs::write(&json, r#"{"alpha": 0.3, "beta": 0.7, "sigma_im": 0.4, "t": [0.1, 0], "x": [0.6], "format": "csv"}"#).unwrap();
    let o = bin(&["eval", "phi", "--config", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("alpha,beta,"));
    // flags win over the file
    let o = bin(&["eval", "phi", "--config", json.to_str().unwrap(), "--format", "json", "--alpha", "0.4"]);
    let recs = records(&o);
    assert_eq!(recs[0]["alpha"].as_f64(), Some(0.4));
    assert_eq!(recs[0]["x"].as_f64(), Some(0.6));

    let bad = scratch("bad.cfg");
    std::fs::write(&bad, "alpha = 0.3\nalpha = 0.4\n").unwrap();
    assert_eq!(bin(&["eval", "phi", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn transform_invert_and_plancherel_commands() {
    let o = bin(&["transform", "--function", "hat", "--nu", "0.5,1.5", "--t", "0.1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(records(&o).len(), 2);
    let o = bin(&["invert", "--function", "cubic", "--x", "0,0.3", "--nu-max", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for r in records(&o) {
        assert!(r["abs_error"].as_f64().unwrap() < 1e-2);
    }
    let o = bin(&["plancherel", "--function", "hat", "--with", "hat@1.8", "--nu-max", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = &records(&o)[0];
    assert!(r["abs_error"].as_f64().unwrap() < 1e-4, "{r:?}");
}

#[test]
fn verify_gram_passes() {
    let o = bin(&["verify", "gram"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let recs = records(&o);
    let names: Vec<&str> = recs.iter().map(|r| r["check"].as_str().unwrap()).collect();
    for want in ["delta_determinant", "xi_delta_identity", "delta_hermitian", "phi_gram_inverse"] {
        assert!(names.contains(&want), "{want}");
    }
    let mut sorted = names.clone();
    sorted.sort_unstable();
    assert_eq!(names, sorted, "report is ordered by check name");
    assert!(recs.iter().all(|r| r["status"] == "pass" && r["measured"].as_f64().unwrap() < r["tolerance"].as_f64().unwrap()));
}

#[test]
fn verify_failure_exits_1() {
    // 1e-3 on the hat needs ν_max far beyond 3; the rest of the suite still runs
    let o = bin(&["verify", "roundtrip", "--nu-max", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("roundtrip,hat_reconstruction,fail,"));
}

#[test]
fn verify_roundtrip_at_large_alpha_adds_discrete_checks() {
    let o = bin(&["verify", "roundtrip", "--alpha", "1.8", "--beta", "0.5"]);
    let recs = records(&o);
    let status = |name: &str| recs.iter().find(|r| r["check"] == name).map(|r| r["status"].as_str().unwrap().to_string());
    assert_eq!(status("discrete_projection").as_deref(), Some("pass"));
    assert_eq!(status("discrete_residual").as_deref(), Some("pass"));
    assert_eq!(status("bump_reconstruction").as_deref(), Some("pass"));
    let plain = bin(&["verify", "roundtrip", "--nu-max", "3"]);
    assert!(!stdout(&plain).contains("discrete_"));
}

#[test]
fn verify_all_is_byte_identical_across_runs() {
    let a = bin(&["verify", "all", "--seed", "7"]);
    let b = bin(&["verify", "all", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let recs = records(&a);
    let suites: std::collections::BTreeSet<&str> = recs.iter().map(|r| r["suite"].as_str().unwrap()).collect();
    assert_eq!(suites.len(), 10);
    // The hat reconstruction at ν_max = 40 is the one known failure.
    let failed: Vec<String> = recs
        .iter()
        .filter(|r| r["status"] != "pass")
        .map(|r| format!("{}/{}", r["suite"].as_str().unwrap(), r["check"].as_str().unwrap()))
        .collect();
    assert_eq!(failed, ["roundtrip/hat_reconstruction"]);
    assert_eq!(a.status.code(), Some(1));
    let other_seed = bin(&["verify", "series", "--seed", "8"]);
    let same_seed = bin(&["verify", "series", "--seed", "7"]);
    let in_all: Vec<_> = recs.iter().filter(|r| r["suite"] == "series").cloned().collect();
    assert_eq!(records(&same_seed), in_all, "a suite reports the same alone and within all");
    assert_ne!(records(&other_seed), in_all);
}
