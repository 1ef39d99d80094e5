// 0.39270 below is a tabulated value that happens to round to π/8.
#![allow(clippy::approx_constant)]

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_whplasmon")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows of a CSV report, split into cells.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

fn near(re: f64, im: f64, want: (f64, f64), tol: f64) -> bool {
    (re - want.0).abs() <= tol && (im - want.1).abs() <= tol
}

#[test]
fn split_table_layout_and_error_columns() {
    let o = run(&["split-table"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("# whplasmon v0.1.0; k=1+0i; varsigma=0.002+0.2i; theta="));
    let r = rows(&text);
    let names: Vec<&str> = r.iter().map(|row| row[0].as_str()).collect();
    assert_eq!(names, ["special-value", "two-scale", "exact"]);
    let two = &r[1];
    let (ek, es) = (num(&two[5]), num(&two[6]));
    assert!((0.015..=0.03).contains(&ek), "{ek}");
    assert!(es < 0.005, "{es}");
    assert!(near(num(&two[3]), num(&two[4]), (0.34793, 0.39902), 5e-5));
    let sp = &r[0];
    assert!(near(num(&sp[1]), num(&sp[2]), (0.017793, 0.079874), 5e-5));
    assert!(near(num(&sp[3]), num(&sp[4]), (0.34657, 0.39270), 5e-5));
    assert_eq!(num(&r[2][5]), 0.0);
}

#[test]
fn split_table_reproduces_printed_values() {
    let r = rows(&stdout(&run(&["split-table"])));
    let want = [
        [(0.017793, 0.079874), (0.34657, 0.39270)],
        [(0.017507, 0.079995), (0.34793, 0.39902)],
        [(0.019864, 0.079563), (0.34813, 0.40071)],
    ];
    let mut off = Vec::new();
    for (row, w) in r.iter().zip(want) {
        for (j, w) in w.iter().enumerate() {
            let (re, im) = (num(&row[1 + 2 * j]), num(&row[2 + 2 * j]));
            if !near(re, im, *w, 5e-5) {
                off.push(format!("{} col {j}: {re:.6}{im:+.6}i", row[0]));
            }
        }
    }
    assert!(off.is_empty(), "{off:?}");
}

#[test]
fn split_table_pure_reactive_sheet() {
    let o = run(&["split-table", "--varsigma", "0.2i"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 3);
    let ex = &r[2];
    assert!(num(&ex[1]).abs() + num(&ex[2]).abs() > 1e-3);
    assert!(ex[1..].iter().all(|c| num(c).is_finite()));
}

#[test]
fn field_sweep_default_grid() {
    let o = run(&["field-sweep"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# whplasmon v0.1.0; k=1+0i; varsigma=0.002+0.2i; theta="));
    assert_eq!(
        lines.next().unwrap(),
        "kx,re_u,im_u,re_udir,im_udir,re_usp,im_usp,re_urad,im_urad,rad_method,err_est"
    );
    let r = rows(&text);
    assert_eq!(r.len(), 300);
    assert!((num(&r[0][0]) - 0.1).abs() < 1e-12 && (num(&r[299][0]) - 30.0).abs() < 1e-9);
    let mut tail = Vec::new();
    for row in &r {
        let v: Vec<f64> = row[..9].iter().map(|c| num(c)).collect();
        let (re, im) = (v[3] + v[5] + v[7], v[4] + v[6] + v[8]);
        let mag = v[1].hypot(v[2]);
        assert!((re - v[1]).hypot(im - v[2]) <= 1e-10 * mag.max(1.0), "kx={}", v[0]);
        assert_eq!(row[9], "branch_cut");
        assert!(num(&row[10]) < 1e-6);
        let (rad, sp) = (v[7].hypot(v[8]), v[5].hypot(v[6]));
        if v[0] >= 3.0 {
            assert!(rad < 0.1 * sp, "kx={}", v[0]);
        }
        if v[0] >= 10.0 {
            tail.push(rad);
        }
    }
    assert!(tail.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn near_edge_sweep_collapses_to_square_root() {
    let o = run(&["field-sweep", "--grid", "1e-4:1e-2:9:log"]);
    assert!(o.status.success());
    let pts: Vec<(f64, f64)> = rows(&stdout(&o))
        .iter()
        .map(|r| (num(&r[0]).ln(), num(&r[1]).hypot(num(&r[2])).ln()))
        .collect();
    let n = pts.len() as f64;
    let (mx, my) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0 / n, a.1 + p.1 / n));
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    assert!((slope - 0.5).abs() < 0.05, "{slope}");
}

#[test]
fn sweep_output_is_deterministic() {
    let args = ["field-sweep", "--grid", "0.5:20:40:lin", "--k", "1+0.05i"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn json_output() {
    let o = run(&["field-sweep", "--grid", "1:2:3:lin", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["whplasmon"], "0.1.0");
    assert_eq!(v["params"]["varsigma"], "0.002+0.2i");
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert_eq!(v["rows"][1]["kx"], 1.5);
    assert_eq!(v["rows"][0]["rad_method"], "branch_cut");
    assert_eq!(v["error"], Value::Null);
}

#[test]
fn oracle_compare_default_passes() {
    let o = run(&["oracle-compare"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().ends_with("k_used=1+0.05i"));
    let r = rows(&text);
    let get = |k: &str| r.iter().find(|row| row[0] == k).unwrap()[1].clone();
    assert!(num(&get("rms_rel")) <= 0.05);
    assert_eq!(get("status"), "pass");
}

#[test]
fn oracle_compare_without_sheet() {
    let o = run(&["oracle-compare", "--varsigma", "0", "--oracle-N", "400"]);
    assert!(o.status.success());
    let r = rows(&stdout(&o));
    assert!(r.iter().any(|row| row[0] == "rms_rel" && num(&row[1]) < 1e-12));
}

#[test]
fn oracle_compare_coarse_grid_fails_with_diagnostic() {
    let o = run(&["oracle-compare", "--oracle-N", "200"]);
    assert_eq!(o.status.code(), Some(1));
    let r = rows(&stdout(&o));
    assert!(r.iter().any(|row| row[0] == "status" && row[1] == "fail"));
    let d = r.iter().find(|row| row[0] == "diagnostic").unwrap().join(",");
    assert!(d.contains("nodes per surface-wave wavelength") && d.contains("not converged"), "{d}");
}

#[test]
fn oracle_sampling_violation_is_an_error() {
    let o = run(&["oracle-compare", "--oracle-N", "100"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sampling"));
}

#[test]
fn invariants_pass_at_defaults() {
    let o = run(&["invariants"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 5);
    assert!(r.iter().all(|row| row[3] == "pass"));
}

#[test]
fn config_file_and_flag_override() {
    let dir = std::env::temp_dir().join(format!("whplasmon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    let out = dir.join("out.csv");
    std::fs::write(&cfg, "# sweep\nk = 1+0.05i\ngrid = 1:3:3:lin\nvarsigma = 0.004+0.3i\n").unwrap();
    let o = run(&[
        "field-sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--varsigma",
        "0.002+0.2i",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# whplasmon v0.1.0; k=1+0.05i; varsigma=0.002+0.2i;"));
    assert_eq!(rows(&text).len(), 3);
    std::fs::write(&cfg, "colour = red\n").unwrap();
    let o = run(&["field-sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_inputs_are_config_errors() {
    for args in [
        ["field-sweep", "--grid", "0:30:10:log"],
        ["field-sweep", "--k", "one"],
        ["field-sweep", "--format", "xml"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}
