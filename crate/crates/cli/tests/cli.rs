use std::f64::consts::PI;
use std::fs;
use std::process::{Command, Output};

fn qp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpendulum"))
        .args(args)
        .output()
        .expect("spawn binary")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn header_value(text: &str, key: &str) -> Option<String> {
    text.lines()
        .filter_map(|l| l.strip_prefix("# "))
        .find_map(|l| l.strip_prefix(&format!("{key} = ")).map(str::to_string))
}

/// Data rows after the comment block and column header.
fn rows(text: &str) -> Vec<Vec<String>> {
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    csv::Reader::from_reader(body.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn spectrum_echoes_q() {
    let o = qp(&["spectrum", "--v0", "10", "--kbar", "0.5", "--nmax", "12"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let q: f64 = header_value(&text, "q").unwrap().parse().unwrap();
    assert_eq!(q, 40.0);
    let rows = rows(&text);
    assert_eq!(rows.len(), 13);
    assert_eq!(rows[0][3], "");
}

#[test]
fn q_needs_kbar() {
    let o = qp(&["evolve", "--q", "40"]);
    assert_eq!(o.status.code(), Some(64));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("kbar required with q"));
}

#[test]
fn usage_errors_name_the_token() {
    let o = qp(&["evolve", "--dt", "fast"]);
    assert_eq!(o.status.code(), Some(64));
    assert!(String::from_utf8(o.stderr).unwrap().contains("'fast'"));
    let o = qp(&["spectrum", "--bogus", "1"]);
    assert_eq!(o.status.code(), Some(64));
    assert!(String::from_utf8(o.stderr).unwrap().contains("--bogus"));
}

#[test]
fn flags_override_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(
        &cfg,
        "# deep lattice\nv0 = 10\nkbar = 0.5\ndt = 0.005\ntmax = 0.05\n",
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();

    let from_file = stdout(&qp(&["evolve", "--config", cfg]));
    assert_eq!(
        header_value(&from_file, "dt")
            .unwrap()
            .parse::<f64>()
            .unwrap(),
        0.005
    );
    assert_eq!(rows(&from_file).len(), 11);

    let o = qp(&["evolve", "--config", cfg, "--dt", "0.001"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(
        header_value(&text, "dt").unwrap().parse::<f64>().unwrap(),
        0.001
    );
    assert_eq!(rows(&text).len(), 51);
}

#[test]
fn unknown_config_key() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    fs::write(&cfg, "v0 = 10\nwobble = 3\n").unwrap();
    let o = qp(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(64));
    assert!(String::from_utf8(o.stderr).unwrap().contains("wobble"));
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = qp(&[
            "spectrum",
            "--q-range",
            "0:5:0.5",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn floats_round_trip() {
    let o = qp(&[
        "timescales",
        "--v0",
        "10",
        "--kbar",
        "0.1",
        "--model",
        "quartic",
        "--nbar",
        "0.1",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let kbar: f64 = header_value(&text, "kbar").unwrap().parse().unwrap();
    assert_eq!(kbar, 0.1);
    let n: f64 = rows(&text)[0][0].parse().unwrap();
    assert_eq!(n, 0.1);
}

#[test]
fn missing_peaks_fail_with_one_line() {
    let o = qp(&["revivals", "--tmax", "0.5", "--threshold", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert_eq!(String::from_utf8(o.stderr).unwrap().lines().count(), 1);
}

#[test]
fn density_file() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("density.csv");
    let o = qp(&[
        "evolve",
        "--tmax",
        "0.01",
        "--density-out",
        d.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let density = fs::read_to_string(&d).unwrap();
    assert!(density.lines().any(|l| l == "t,x,density"));
    assert_eq!(rows(&density).len(), 1024 / 8);
}

#[test]
fn q_range_interlaces() {
    let o = qp(&["spectrum", "--q-range", "0:50:0.5", "--nmax", "10"]);
    assert!(o.status.success());
    let rows = rows(&stdout(&o));
    assert_eq!(rows.len(), 101 * 11);
    for block in rows.chunks(11) {
        let q: f64 = block[0][0].parse().unwrap();
        let a: Vec<f64> = block.iter().map(|r| r[2].parse().unwrap()).collect();
        let b: Vec<f64> = block[1..].iter().map(|r| r[3].parse().unwrap()).collect();
        let slack = |x: f64| 1e-9 * x.abs().max(1.0);
        if q == 0.0 {
            continue;
        }
        for n in 1..=10 {
            let bn = b[n - 1];
            assert!(
                a[n - 1] <= bn + slack(bn) && bn <= a[n] + slack(a[n]),
                "q={q} n={n}"
            );
        }
    }
}

#[test]
fn quartic_revival_time_is_constant() {
    let o = qp(&["timescales", "--model", "quartic", "--nbar", "0:7"]);
    assert!(o.status.success());
    let rows = rows(&stdout(&o));
    assert_eq!(rows.len(), 8);
    for r in &rows {
        assert_eq!(r[1], "quartic");
        let t_rev: f64 = r[3].parse().unwrap();
        assert!((t_rev / (16.0 * PI) - 1.0).abs() < 1e-12);
        assert_eq!(r[4], "inf");
    }
}

#[test]
fn unwritable_path_exits_2() {
    let o = qp(&["spectrum", "--q", "1", "--out", "/nonexistent-dir/out.csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr)
        .unwrap()
        .starts_with("error kind=io"));
}

#[test]
fn help_lists_flags() {
    let o = qp(&["evolve", "--help"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for flag in [
        "--v0",
        "--kbar",
        "--dt",
        "--tmax",
        "--grid-points",
        "--wells",
        "--config",
    ] {
        assert!(text.contains(flag), "{flag}");
    }
}

#[test]
fn revivals_find_the_quartic_revival() {
    let o = qp(&["revivals"]);
    assert!(o.status.success());
    let rows = rows(&stdout(&o));
    let best = rows
        .iter()
        .find(|r| r[2].starts_with("summary-revival"))
        .unwrap();
    let t: f64 = best[0].parse().unwrap();
    assert!((t / (16.0 * PI) - 1.0).abs() < 0.05);
    assert!(best[1].parse::<f64>().unwrap() > 0.9);
}

#[test]
fn project_columns() {
    let o = qp(&["project", "--nmax", "3"]);
    assert!(o.status.success());
    let rows = rows(&stdout(&o));
    assert_eq!(rows.len(), 4);
    for r in &rows {
        let s: Vec<f64> = r[1..].iter().map(|v| v.parse().unwrap()).collect();
        assert!(s.iter().all(|&x| x > 0.9 && x <= 1.0 + 1e-12));
    }
}
