use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn sdw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdwitness"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn f(v: &Value, key: &str) -> f64 {
    v[key]
        .as_f64()
        .unwrap_or_else(|| panic!("{key} missing in {v}"))
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sdwitness-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn bounds_reports_the_gap() {
    let v = json(&sdw(&[
        "bounds", "--delta", "0.5", "--rs", "1", "--pinc", "0",
    ]));
    assert_eq!(v["schema_version"], 1);
    assert!((f(&v, "w_q") - 0.433_012_7).abs() < 1e-7);
    assert_eq!(f(&v, "w_star"), 0.375);
    assert!((f(&v, "gap") - 0.058_012_7).abs() < 1e-7);
    assert_eq!(v["contextual"], true);
    assert_eq!(v["quantum_branch"], "low");

    let v = json(&sdw(&[
        "bounds", "--delta", "0", "--rs", "1", "--pinc", "0",
    ]));
    assert_eq!((f(&v, "w_q"), f(&v, "w_star")), (0.5, 0.5));

    let v = json(&sdw(&[
        "bounds", "--delta", "0.5", "--rs", "1", "--pinc", "0.8",
    ]));
    assert_eq!(
        (f(&v, "w_q"), f(&v, "w_star"), f(&v, "gap")),
        (0.1, 0.1, 0.0)
    );
    assert_eq!(v["contextual"], false);
    assert_eq!(v["nc_branch"], "high");
}

#[test]
fn out_of_range_is_a_usage_error() {
    assert_eq!(sdw(&["bounds", "--delta", "1.2"]).status.code(), Some(2));
    assert_eq!(
        sdw(&["bounds", "--delta", "0.5", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(sdw(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(sdw(&["--help"]).status.code(), Some(0));
}

#[test]
fn region_csv_contains_helstrom_vertex() {
    let out = sdw(&[
        "region", "--model", "quantum", "--delta", "0.5", "--rs", "1", "--points", "11",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p_inc,p_suc,p_err,branch"));
    assert!(lines.any(|l| l == "0,0.933012702,0.0669872981,low"));
    assert!(text.contains("0.5,0.5,0,low"));
    assert!(text.lines().last().unwrap().ends_with(",mirror_low"));
}

#[test]
fn region_with_zero_overlap_is_the_triangle() {
    let text = stdout(&sdw(&["region", "--delta", "0", "--points", "5"]));
    for line in text.lines().skip(1).filter(|l| !l.contains("mirror")) {
        let cols: Vec<f64> = line
            .split(',')
            .take(3)
            .map(|x| x.parse().unwrap())
            .collect();
        assert_eq!(cols[1], 1.0 - cols[0]);
        assert_eq!(cols[2], 0.0);
    }
}

#[test]
fn region_svg_overlays_all_models() {
    let out = sdw(&[
        "region", "--model", "both", "--delta", "0.5", "--rs", "0.7", "--format", "svg",
    ]);
    let svg = stdout(&out);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<polygon").count(), 3);
    for label in ["quantum δ=0.5", "noncontextual c=0.25", "deterministic"] {
        assert!(svg.contains(label), "{label}");
    }
    // several curves cannot share one CSV
    assert_eq!(
        sdw(&["region", "--model", "both", "--delta", "0.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        sdw(&["region", "--model", "quantum"]).status.code(),
        Some(2)
    );
}

#[test]
fn region_json_lists_points() {
    let v = json(&sdw(&[
        "region",
        "--model",
        "noncontextual",
        "--c",
        "0.25",
        "--points",
        "9",
        "--format",
        "json",
    ]));
    assert_eq!(v["model"], "noncontextual");
    let first = &v["points"][0];
    assert_eq!((f(first, "p_suc"), f(first, "p_err")), (0.875, 0.125));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let out = sdw(&[
        "region",
        "--delta",
        "0.5",
        "--output",
        "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent-dir/x.csv"));
}

#[test]
fn tolerance_csv() {
    // 0.859102545 solves (r/2)·√(0.75·(1 − 0.2/(1 + r/2))) = 0.345 (scipy brentq)
    let out = sdw(&["tolerance", "--deltas", "0.5,0", "--pincs", "0,0.1,0.9"]);
    assert_eq!(
        stdout(&out),
        "delta,p_inc,r_min\n0.5,0,0.866025404\n0.5,0.1,0.859102545\n0.5,0.9,\n0,0,\n0,0.1,\n0,0.9,\n"
    );
    assert_eq!(
        sdw(&["tolerance", "--pincs", "0.2,0.1"]).status.code(),
        Some(2)
    );
}

#[test]
fn tolerance_minimum_lies_below_delta() {
    for d in ["0.3", "0.5"] {
        let text = stdout(&sdw(&["tolerance", "--deltas", d, "--points", "101"]));
        let (p, _) = text
            .lines()
            .skip(1)
            .filter_map(|l| {
                let cols: Vec<&str> = l.split(',').collect();
                Some((cols[1].parse::<f64>().ok()?, cols[2].parse::<f64>().ok()?))
            })
            .fold((f64::NAN, f64::INFINITY), |best, x| {
                if x.1 < best.1 {
                    x
                } else {
                    best
                }
            });
        let d: f64 = d.parse().unwrap();
        assert!(p > 0.0 && p < d, "δ={d}: minimum at {p}");
    }
}

#[test]
fn tolerance_svg_and_json() {
    let svg = stdout(&sdw(&[
        "tolerance",
        "--deltas",
        "0.3,0.5",
        "--points",
        "21",
        "--format",
        "svg",
    ]));
    assert_eq!(svg.matches("<polyline").count(), 2);
    let v = json(&sdw(&[
        "tolerance",
        "--deltas",
        "0",
        "--points",
        "2",
        "--format",
        "json",
    ]));
    assert!(v["rows"][0]["r_min"].is_null());
}

#[test]
fn test_verdicts() {
    let v = json(&sdw(&[
        "test",
        "--psuc",
        "0.9330127",
        "--perr",
        "0.0669873",
        "--pinc",
        "0",
        "--delta-bound",
        "0.5",
    ]));
    assert_eq!(v["contextual"], true);
    let v = json(&sdw(&[
        "test",
        "--psuc",
        "0.5",
        "--perr",
        "0.5",
        "--delta-bound",
        "0.1",
    ]));
    assert_eq!(v["contextual"], false);
    let v = json(&sdw(&[
        "test",
        "--psuc",
        "0.875",
        "--perr",
        "0.125",
        "--pinc",
        "0",
        "--delta-bound",
        "0.5",
    ]));
    assert_eq!(v["contextual"], false);
    assert_eq!(f(&v, "margin"), 0.0);
}

#[test]
fn test_normalization_policy() {
    let args = [
        "test",
        "--psuc",
        "0.9",
        "--perr",
        "0.05",
        "--pinc",
        "0",
        "--delta-bound",
        "0.5",
    ];
    let out = sdw(&args);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--renormalize"));
    let v = json(&sdw(&[&args[..], &["--renormalize"]].concat()));
    assert_eq!(v["renormalized"], true);
    assert!((f(&v, "p_suc") - 0.9 / 0.95).abs() < 1e-9);
    assert_eq!(v["contextual"], true);
}

#[test]
fn verify_small_grid_passes_and_lists_nothing() {
    let v = json(&sdw(&[
        "verify", "--grid", "120", "--deltas", "0.2,1", "--rs", "1", "--pincs", "0,0.5", "--cs",
        "0,1", "--nc-rs", "0.5",
    ]));
    assert_eq!(v["ok"], true);
    assert_eq!(v["quantum"]["points"], 4);
    assert!(f(&v["quantum"], "max_gap") <= 1e-4);
    assert_eq!(
        v["noncontextual"]["discrepancies"]
            .as_array()
            .unwrap()
            .len(),
        0
    );
}

#[test]
fn verify_reports_lp_discrepancies_with_exit_1() {
    let out = sdw(&[
        "verify",
        "--model",
        "noncontextual",
        "--cs",
        "0.25",
        "--nc-rs",
        "1",
        "--nc-pincs",
        "0,0.25",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let d = &v["noncontextual"]["discrepancies"][0];
    assert_eq!(
        (f(d, "delta_or_c"), f(d, "p_inc"), f(d, "oracle")),
        (0.25, 0.25, 0.375)
    );
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("noncontextual: c=0.25 r_s=1 p_inc=0.25"),
        "{err}"
    );
    assert!(v["quantum"].is_null());
}

#[test]
fn config_file_with_flag_override() {
    let path = tmp("bounds.conf");
    std::fs::write(&path, "# point\ndelta = 0.8\nrs = 0.7\npinc=0\n").unwrap();
    let p = path.to_str().unwrap();
    let v = json(&sdw(&["bounds", "--config", p]));
    assert!((f(&v, "w_q") - 0.21).abs() < 1e-9);
    let v = json(&sdw(&["bounds", "--config", p, "--delta", "0.5"]));
    assert_eq!((f(&v, "delta"), f(&v, "r_s")), (0.5, 0.7));

    let list = tmp("tol.conf");
    std::fs::write(&list, "deltas=0.1,0.2\npoints=2\n").unwrap();
    let text = stdout(&sdw(&[
        "tolerance",
        "--config",
        list.to_str().unwrap(),
        "--deltas",
        "0.9",
    ]));
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().skip(1).all(|l| l.starts_with("0.9,")));

    std::fs::write(&path, "bogus=1\n").unwrap();
    assert_eq!(sdw(&["bounds", "--config", p]).status.code(), Some(2));
    assert_eq!(
        sdw(&["bounds", "--config", "/nonexistent/c.conf"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn output_file_matches_stdout() {
    let path = tmp("region.csv");
    let args = ["region", "--delta", "0.3", "--rs", "0.9", "--points", "7"];
    let out = sdw(&[&args[..], &["--output", path.to_str().unwrap()]].concat());
    assert!(out.status.success() && out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), sdw(&args).stdout);
}

#[test]
fn low_branch_bound_form_is_weaker_past_the_threshold() {
    // p_inc = 0.85 > (1 + δ²)/2: the piecewise bound is the trivial (1 − p_inc)/2,
    // the low-branch expression gives 0.375·(1 − 0.85/1.25) = 0.12
    let base = [
        "test",
        "--psuc",
        "0.15",
        "--perr",
        "0",
        "--pinc",
        "0.85",
        "--delta-bound",
        "0.5",
    ];
    let v = json(&sdw(&base));
    assert_eq!(v["w_star_form"], "piecewise");
    assert_eq!(f(&v, "w_star"), 0.075);
    assert!(f(&v, "margin").abs() < 1e-12 && v["contextual"] == false);
    let v = json(&sdw(&[&base[..], &["--w-star-form", "low-branch"]].concat()));
    assert_eq!(v["w_star_form"], "low-branch");
    assert_eq!(f(&v, "w_star"), 0.12);
    assert_eq!(v["contextual"], false);
}
