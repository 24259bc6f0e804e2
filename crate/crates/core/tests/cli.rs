//! Exit-code contract for the `mvlab` binary: 0 = checks pass, 1 = a
//! verified condition fails, 2 = usage/config error, 3 = numerical failure.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mvlab"))
        .args(args)
        .output()
        .expect("binary should spawn");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn gap_distinguishes_contracting_from_borderline() {
    let (code, stdout, _) = run(&["gap", "--dim", "4", "--degree", "2", "--kmax", "16"]);
    assert_eq!(code, 0, "dimension 4 segment contracts");
    assert!(stdout.contains("\"schema\": \"v1\""));
    assert!(stdout.contains("\"contraction\": true"));

    let (code, stdout, _) = run(&["gap", "--dim", "3", "--degree", "2", "--kmax", "16"]);
    assert_eq!(code, 1, "dimension 3 segment sits on the boundary");
    assert!(stdout.contains("\"contraction\": false"));
}

#[test]
fn usage_errors_exit_with_2() {
    let (code, _, stderr) = run(&["gap", "--dim", "not-a-number"]);
    assert_eq!(code, 2);
    assert!(!stderr.is_empty());

    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn config_errors_exit_with_2() {
    // Unknown generator kind.
    let (code, _, stderr) = run(&["gap", "--dim", "4", "--generator", "mystery"]);
    assert_eq!(code, 2, "stderr: {stderr}");

    // Body dimension clashing with --dim.
    let (code, _, stderr) = run(&[
        "iterate",
        "--dim",
        "4",
        "--body",
        r#"{"kind": "ellipsoid", "n": 5, "a": 1.5, "b": 1.0}"#,
    ]);
    assert_eq!(code, 2, "stderr: {stderr}");
}

#[test]
fn degree_out_of_range_is_a_config_error() {
    let (code, _, _) = run(&["gap", "--dim", "4", "--degree", "4"]);
    assert_eq!(code, 2);
}

#[test]
fn multipliers_csv_has_fixed_header() {
    let (code, stdout, _) = run(&[
        "multipliers",
        "--dim",
        "4",
        "--degree",
        "2",
        "--kmax",
        "8",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("k,multiplier,normalized,linearization"));
}

#[test]
fn amplitude_sweep_exit_code_tracks_convergence() {
    let dir = std::env::temp_dir();
    let write_cfg = |name: &str, dim: usize| -> String {
        let path = dir.join(format!("mvlab-cli-{}-{name}.json", std::process::id()));
        let cfg = format!(
            r#"{{"dim": {dim}, "degree": 2, "kmax": 12, "steps": 40, "amplitudes": [0.02, 0.05], "perturb_degree": 2}}"#
        );
        std::fs::write(&path, cfg).expect("config should write");
        path.to_string_lossy().into_owned()
    };

    // Degree-2 perturbations survive the dimension-3 squared iteration:
    // no amplitude converges and the sweep exits 1.
    let stalled = write_cfg("stalled", 3);
    let (code, stdout, _) = run(&["iterate", "--config", &stalled]);
    assert_eq!(code, 1);
    assert!(stdout.contains("\"largest_converging_amplitude\": null"));

    // In dimension 4 the same perturbations decay; the sweep exits 0 and
    // records the largest converging amplitude.
    let decaying = write_cfg("decaying", 4);
    let (code, stdout, _) = run(&["iterate", "--config", &decaying]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"largest_converging_amplitude\": 0.05"));

    let _ = std::fs::remove_file(&stalled);
    let _ = std::fs::remove_file(&decaying);
}
