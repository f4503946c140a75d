use swanson_metric::cli::{self, EXIT_CONFIG, EXIT_FAILED, EXIT_INVALID_Z, EXIT_IO, EXIT_OK};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("swanson").chain(args.iter().copied()), &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn csv_rows(text: &str) -> Vec<csv::StringRecord> {
    csv::Reader::from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap())
        .collect()
}

#[test]
fn sweep_marks_the_band_invalid() {
    let r = run(&["sweep"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let rows = csv_rows(&r.stdout);
    assert_eq!(rows.len(), 41);
    for row in &rows {
        let z: f64 = row[0].parse().unwrap();
        let inside = (0.5395..0.8723).contains(&z);
        assert_eq!(&row[2] == "false", inside, "z = {z}");
        if !inside {
            let residual: f64 = row[8].parse().unwrap();
            assert!(residual.abs() < 1e-12);
        }
    }
}

#[test]
fn sweep_hermitian_case_has_no_squeezing() {
    let r = run(&["sweep", "--alpha", "0.3", "--beta", "0.3", "--steps", "5"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    for row in csv_rows(&r.stdout) {
        assert_eq!(&row[2], "true");
        assert_eq!(row[3].parse::<f64>().unwrap(), 0.0);
        assert!(row[10].is_empty() && row[11].is_empty());
    }
}

#[test]
fn sweep_json_parses() {
    let r = run(&["sweep", "--format", "json", "--steps", "3"]);
    assert_eq!(r.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["branch"], "standard");
}

#[test]
fn verify_demo_passes_and_small_basis_fails() {
    let ok = run(&["verify", "--steps", "9", "--dim", "32"]);
    assert_eq!(ok.code, EXIT_OK, "{}", ok.stderr);
    assert!(ok.stderr.contains("0 failed"));

    let bad = run(&["verify", "--dim", "8", "--sector", "4"]);
    assert_eq!(bad.code, EXIT_FAILED);
    assert!(bad.stderr.contains("FAIL"));
}

#[test]
fn verify_inside_the_band_warns() {
    let r = run(&["verify", "--z-min", "0.6", "--z-max", "0.8", "--steps", "3"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stderr.contains("warning"));
    assert_eq!(csv_rows(&r.stdout).len(), 3);
}

#[test]
fn spectrum_in_band_is_rejected() {
    assert_eq!(run(&["spectrum", "--z", "0.7"]).code, EXIT_INVALID_Z);
    assert_eq!(run(&["spectrum", "--z", "1.5"]).code, EXIT_INVALID_Z);
    // mirrored branch moves the band to negative z
    assert_eq!(run(&["spectrum", "--z", "0.7", "--branch", "mirrored"]).code, EXIT_OK);
    let r = run(&["spectrum", "--z", "-0.25", "--sector", "4"]);
    let rows = csv_rows(&r.stdout);
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|row| row[3].parse::<f64>().unwrap() < 1e-8));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("sweep.csv");
    std::fs::write(
        &cfg,
        format!("# short sweep\nsteps = 4\nz-min = -1\nz-max = 0\nout = {}\n", out.display()),
    )
    .unwrap();
    let r = run(&["sweep", "--config", cfg.to_str().unwrap(), "--steps", "6"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv_rows(&text).len(), 6);
    assert!(text.contains("\r\n"));

    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(run(&["sweep", "--config", cfg.to_str().unwrap()]).code, EXIT_CONFIG);
}

#[test]
fn error_exit_codes() {
    assert_eq!(run(&["sweep", "--steps", "0"]).code, EXIT_CONFIG);
    assert_eq!(run(&["sweep", "--omega", "-1"]).code, EXIT_CONFIG);
    assert_eq!(run(&["sweep", "--bogus"]).code, EXIT_CONFIG);
    let r = run(&["sweep", "--out", "/nonexistent-dir/out.csv"]);
    assert_eq!(r.code, EXIT_IO);
    assert!(r.stderr.contains("I/O"));
}

#[test]
fn help_exits_cleanly() {
    let r = run(&["--help"]);
    assert_eq!(r.code, EXIT_OK);
    for cmd in ["sweep", "verify", "spectrum", "special-cases"] {
        assert!(r.stdout.contains(cmd));
    }
}

#[test]
fn special_cases_report() {
    let r = run(&["special-cases", "--dim", "32"]);
    assert_eq!(r.code, EXIT_OK);
    let rows = csv_rows(&r.stdout);
    assert_eq!(rows.len(), 3);
    for row in rows {
        assert!(row[3].parse::<f64>().unwrap() < 1e-9, "{row:?}");
        assert!(row[4].parse::<f64>().unwrap() < 1e-8, "{row:?}");
    }
}
