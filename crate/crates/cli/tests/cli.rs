use std::f64::consts::PI;
use std::process::{Command, Output};

fn wavemode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wavemode")).args(args).output().expect("binary runs")
}

fn table(out: &Output) -> (Vec<String>, Vec<Vec<f64>>) {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<f64>], name: &str) -> Vec<f64> {
    let i = header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    rows.iter().map(|r| r[i]).collect()
}

#[test]
fn figure1_columns() {
    let (h, rows) = table(&wavemode(&["figure1"]));
    assert_eq!(h.len(), 11);
    let a = 6.0 * PI;
    for name in &h[1..] {
        let col = column(&h, &rows, name);
        if name.starts_with('f') {
            assert!(col.iter().all(|v| v.abs() <= 1.0));
        } else {
            assert_eq!(col[0], 0.0);
        }
    }
    // Resonant column: t·sin(√μt)/(2√μ).
    let t = column(&h, &rows, "t");
    let u = column(&h, &rows, "u_1");
    for (t, u) in t.iter().zip(&u) {
        assert!((u - t * (a * t).sin() / (2.0 * a)).abs() < 1e-14);
    }
    let bounded = column(&h, &rows, "u_0.8").iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let resonant = u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(resonant > bounded);
}

#[test]
fn figure2_shape_and_low_frequency_limit() {
    let (h, rows) = table(&wavemode(&["figure2"]));
    assert_eq!(h.len(), 16);
    assert!(rows.len() >= 400);
    let omega = column(&h, &rows, "omega");
    assert_eq!(omega[0], 0.1);
    assert!((omega[omega.len() - 1] - 45.0 * PI).abs() < 1e-12);
    let mut last_peak = 0.0;
    for k in 1..=15 {
        let col = column(&h, &rows, &format!("one_plus_c_k{k}"));
        assert!((col[0] - 2.0).abs() <= 0.2, "k={k}: {}", col[0]);
        let peak = col.iter().fold(0.0f64, |m, v| m.max(*v));
        assert!(peak > last_peak);
        last_peak = peak;
    }
}

#[test]
fn figure3_columns() {
    let (h, rows) = table(&wavemode(&["figure3"]));
    let a = 100.0 * PI;
    for r in &rows {
        let (w, u, l2, hm1) = (r[0], r[1], r[2], r[3]);
        assert!((l2 / hm1 - a).abs() < 1e-9 * a);
        if w <= a / 2.0 {
            let ratio = u / hm1;
            assert!((1.0..=2.34).contains(&ratio), "omega={w}: {ratio}");
        }
    }
    let omega = column(&h, &rows, "omega");
    let i = omega.iter().position(|w| *w == a).expect("resonant row present");
    let ratio = rows[i][1] / rows[i][2];
    assert!((ratio - 1.0 / 6f64.sqrt()).abs() < 0.01 / 6f64.sqrt());
}

#[test]
fn figure4_matrix() {
    let out = wavemode(&["figure4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Vec<f64>> = text
        .lines()
        .map(|l| l.split(',').filter_map(|v| v.parse().ok()).collect())
        .collect();
    assert_eq!(lines.len(), 65);
    assert!(text.starts_with("omega,"));
    let freqs = &lines[0];
    let m: Vec<&[f64]> = lines[1..].iter().map(|r| &r[1..]).collect();
    for j in 0..64 {
        assert_eq!(lines[j + 1][0], freqs[j]);
        for (l, v) in m[j].iter().enumerate() {
            assert_eq!(*v, m[l][j]);
            assert!(*v >= 0.0);
        }
    }
    let peak = (0..64).max_by(|a, b| m[*a][*a].total_cmp(&m[*b][*b])).unwrap();
    assert!((freqs[peak] - 200.0).abs() < PI);
}

#[test]
fn fourier_kernel_reports_dominance() {
    let out = wavemode(&["fourier-kernel", "--sqrt-mu", "200", "--J", "64"]);
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    let n: usize = err.split_whitespace().nth(3).unwrap().parse().unwrap();
    assert!(n >= 1, "{err}");
}

#[test]
fn infsup_table_decreases() {
    let (h, rows) = table(&wavemode(&["infsup"]));
    let r = column(&h, &rows, "infsup");
    assert_eq!(r.len(), 50);
    assert!(r.windows(2).all(|w| w[1] < w[0]));
    assert!(r[3..].iter().all(|v| *v < 0.1));
}

#[test]
fn amplification_sweep() {
    let (h, rows) = table(&wavemode(&["amplification", "--sqrt-mu", "10", "--omega-steps", "50"]));
    assert_eq!(rows.len(), 50);
    let c = column(&h, &rows, "c");
    let one = column(&h, &rows, "one_plus_c");
    assert!(c.iter().zip(&one).all(|(c, o)| (o - c - 1.0).abs() < 1e-12));
}

#[test]
fn energy_balance_holds() {
    let out = wavemode(&["energy", "--k", "2"]);
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    let (h, rows) = table(&out);
    let e = column(&h, &rows, "energy");
    let g = column(&h, &rows, "transform_energy");
    let scale = e.iter().fold(0.0f64, |m, v| m.max(*v));
    assert!(e.iter().zip(&g).all(|(a, b)| (a - b).abs() <= 1e-8 * scale));
    assert!(err.contains("max relative residual"));
}

#[test]
fn solve_equations() {
    let (h, rows) = table(&wavemode(&["solve", "--lambda", "4", "--omega", "1"]));
    assert_eq!(column(&h, &rows, "u")[0], 0.0);
    let (h, rows) = table(&wavemode(&["solve", "--equation", "heat", "--lambda", "2", "--omega", "3"]));
    assert_eq!(column(&h, &rows, "u")[0], 0.0);
    let (h, rows) = table(&wavemode(&["solve", "--equation", "schrodinger", "--lambda", "9"]));
    let t = column(&h, &rows, "t");
    let m = column(&h, &rows, "abs_u");
    assert!(t.iter().zip(&m).all(|(t, m)| (t - m).abs() < 1e-6));
}

#[test]
fn output_is_deterministic_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f2.csv");
    let out = wavemode(&["figure2", "--k-max", "4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let a = std::fs::read(&path).unwrap();
    let b = wavemode(&["figure2", "--k-max", "4"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn verify_suites() {
    let out = wavemode(&["verify", "--suite", "heat"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0.16809 / 1.0"), "{text}");
    assert!(!text.contains("[FAIL]"));
    let out = wavemode(&["verify", "--suite", "infsup"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().lines().count() > 50);
}

#[test]
fn exit_codes() {
    assert_eq!(wavemode(&["figure2", "--omega-min", "5", "--omega-max", "1"]).status.code(), Some(2));
    assert_eq!(wavemode(&["figure1", "--grid-n", "4"]).status.code(), Some(2));
    assert_eq!(wavemode(&["figure3", "--sqrt-mu", "-1"]).status.code(), Some(2));
    assert_eq!(wavemode(&["figure4", "--J", "1"]).status.code(), Some(2));
    assert_eq!(wavemode(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(wavemode(&["infsup", "--k-min", "5", "--k-max", "2"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("no/such/dir/out.csv");
    assert_eq!(wavemode(&["infsup", "--out", missing.to_str().unwrap()]).status.code(), Some(3));
}
