use std::f64::consts::PI;
use std::fmt::Write as _;

use clap::ValueEnum;
use rayon::prelude::*;
use wavemode_core::closed_form::{solve_heat, solve_schrodinger, solve_wave_cosine};
use wavemode_core::energy::{transforms, wave_balance_residual};
use wavemode_core::fourier::{diagonal_dominance_audit, FourierBlock};
use wavemode_core::norms::{amplification_constant, amplification_curve, cosine_l2_sq, infsup_ratio, resonant_amplification};
use wavemode_core::{Complex64, ComplexSignal, Forcing, ModeParams};

use crate::csv::{fmt_num, Table};
use crate::{time_grid, CliError, Sweep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Equation {
    Wave,
    Heat,
    Schrodinger,
}

/// Header suffix for a frequency ratio, e.g. `0.95`.
fn label(v: f64) -> String {
    format!("{v}")
}

pub fn figure1(p: &ModeParams, ratios: &[f64], grid_n: Option<usize>) -> Result<String, CliError> {
    if ratios.is_empty() {
        return Err(CliError::Invalid("at least one frequency ratio is required".into()));
    }
    let a = p.omega_res();
    let top = ratios.iter().fold(1.0f64, |m, r| m.max(*r)) * a;
    let grid = time_grid(p.horizon, top, grid_n)?;
    let mut header = vec!["t".to_string()];
    for r in ratios {
        header.push(format!("f_{}", label(*r)));
        header.push(format!("u_{}", label(*r)));
    }
    let columns = ratios
        .par_iter()
        .map(|r| {
            let sol = solve_wave_cosine(p, r * a)?;
            let (u, _) = sol.sample(&grid);
            let f = Forcing::Cosine { omega: r * a }.sample(&grid)?;
            Ok((f, u.into_values()))
        })
        .collect::<wavemode_core::Result<Vec<_>>>()?;
    let mut table = Table::new(header);
    for (i, t) in grid.nodes().into_iter().enumerate() {
        let mut row = vec![t];
        for (f, u) in &columns {
            row.push(f[i]);
            row.push(u[i]);
        }
        table.push(row);
    }
    Ok(table.render())
}

pub fn figure2(k_min: u32, k_max: u32, c: f64, horizon: f64, sweep: &Sweep) -> Result<String, CliError> {
    if k_max < k_min {
        return Err(CliError::Invalid(format!("k-max {k_max} is below k-min {k_min}")));
    }
    let omegas = sweep.omegas(0.1, 1.5 * 2.0 * PI * k_max as f64, 400)?;
    let curves = (k_min..=k_max)
        .into_par_iter()
        .map(|k| {
            let p = ModeParams::from_sqrt_mu(2.0 * PI * k as f64, c, horizon)?;
            amplification_curve(&p, &omegas)
        })
        .collect::<wavemode_core::Result<Vec<_>>>()?;
    let mut header = vec!["omega".to_string()];
    header.extend((k_min..=k_max).map(|k| format!("one_plus_c_k{k}")));
    let mut table = Table::new(header);
    for (i, w) in omegas.iter().enumerate() {
        let mut row = vec![*w];
        row.extend(curves.iter().map(|c| c.values[i]));
        table.push(row);
    }
    Ok(table.render())
}

pub fn figure3(p: &ModeParams, sweep: &Sweep) -> Result<String, CliError> {
    let a = p.omega_res();
    let mut omegas = sweep.omegas(0.1, 3.0 * a, 1000)?;
    // Include the resonant frequency itself when it lies in the sweep.
    if a > omegas[0] && a < omegas[omegas.len() - 1] && !omegas.contains(&a) {
        omegas.push(a);
        omegas.sort_by(f64::total_cmp);
    }
    let rows = omegas
        .par_iter()
        .map(|w| {
            let f_sq = cosine_l2_sq(p.horizon, *w);
            let one_plus_c = 1.0 + amplification_constant(p, *w)?;
            Ok(vec![*w, (one_plus_c * f_sq / p.lambda).sqrt(), f_sq.sqrt(), (f_sq / p.lambda).sqrt()])
        })
        .collect::<wavemode_core::Result<Vec<_>>>()?;
    let mut table = Table::new(["omega", "trial_norm_u", "l2l2_norm_f", "l2hm1_norm_f"]);
    rows.into_iter().for_each(|r| table.push(r));
    Ok(table.render())
}

/// The kernel block as a matrix with frequency headers; `abs` takes `|W|`.
pub fn kernel_matrix(p: &ModeParams, j: usize, abs: bool) -> Result<String, CliError> {
    if j < 2 {
        return Err(CliError::Invalid("J must be at least 2".into()));
    }
    let block = FourierBlock::assemble(p, j)?;
    let mut out = String::from("omega");
    for w in &block.frequencies {
        write!(out, ",{}", fmt_num(*w)).unwrap();
    }
    out.push('\n');
    for (r, w) in block.frequencies.iter().enumerate() {
        out.push_str(&fmt_num(*w));
        for l in 0..j {
            let v = block.matrix[(r, l)];
            write!(out, ",{}", fmt_num(if abs { v.abs() } else { v })).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn dominance_summary(p: &ModeParams, j: usize) -> Result<String, CliError> {
    let block = FourierBlock::assemble(p, j)?;
    let r = diagonal_dominance_audit(&block);
    Ok(format!(
        "J = {j}: {} rows not diagonally dominant, worst ratio {:.6} at row {}, smallest eigenvalue {:.6e}",
        r.violating_rows.len(),
        r.worst_ratio,
        r.worst_row,
        block.min_eigenvalue()
    ))
}

pub fn amplification(p: &ModeParams, sweep: &Sweep) -> Result<String, CliError> {
    let omegas = sweep.omegas(0.1, 3.0 * p.omega_res(), 400)?;
    let curve = amplification_curve(p, &omegas)?;
    let mut table = Table::new(["omega", "c", "one_plus_c"]);
    for (w, v) in omegas.iter().zip(&curve.values) {
        table.push(vec![*w, v - 1.0, *v]);
    }
    Ok(table.render())
}

pub fn infsup(k_min: u32, k_max: u32, c: f64, horizon: f64) -> Result<String, CliError> {
    if k_max < k_min {
        return Err(CliError::Invalid(format!("k-max {k_max} is below k-min {k_min}")));
    }
    let mut table = Table::new(["k", "sqrt_mu", "resonant_c", "infsup"]);
    for k in k_min..=k_max {
        let a = 2.0 * PI * k as f64;
        let p = ModeParams::from_sqrt_mu(a, c, horizon)?;
        table.push(vec![k as f64, a, resonant_amplification(&p), infsup_ratio(&p)]);
    }
    Ok(table.render())
}

/// Energy-balance table and a one-line residual summary.
pub fn energy(p: &ModeParams, omega: f64, grid_n: Option<usize>) -> Result<(String, String), CliError> {
    let grid = time_grid(p.horizon, omega.max(p.omega_res()), grid_n)?;
    let forcing = Forcing::Cosine { omega };
    let (u, du) = solve_wave_cosine(p, omega)?.sample(&grid);
    let pair = transforms(&forcing, p.omega_res(), &grid)?;
    let report = wave_balance_residual(p, &u, &du, &pair)?;
    let f = forcing.sample(&grid)?;
    let c2 = p.c * p.c;
    let mut table = Table::new(["t", "f", "u", "du", "fc", "fs", "energy", "transform_energy"]);
    for (i, t) in grid.nodes().into_iter().enumerate() {
        let (u, du, fc, fs) = (u.values()[i], du.values()[i], pair.fc.values()[i], pair.fs.values()[i]);
        table.push(vec![t, f[i], u, du, fc, fs, p.lambda * u * u + du * du / c2, c2 * (fc * fc + fs * fs)]);
    }
    let summary = format!(
        "energy balance on {} intervals: max relative residual {:.3e}",
        report.intervals, report.max_rel_residual
    );
    Ok((table.render(), summary))
}

pub fn solve(p: &ModeParams, omega: Option<f64>, eq: Equation, grid_n: Option<usize>) -> Result<String, CliError> {
    match eq {
        Equation::Wave => {
            let omega = omega.unwrap_or(p.omega_res());
            let grid = time_grid(p.horizon, omega.max(p.omega_res()), grid_n)?;
            let f = Forcing::Cosine { omega }.sample(&grid)?;
            let (u, du) = solve_wave_cosine(p, omega)?.sample(&grid);
            let mut table = Table::new(["t", "f", "u", "du"]);
            for (i, t) in grid.nodes().into_iter().enumerate() {
                table.push(vec![t, f[i], u.values()[i], du.values()[i]]);
            }
            Ok(table.render())
        }
        Equation::Heat => {
            let omega = omega.unwrap_or(p.omega_res());
            let grid = time_grid(p.horizon, omega, grid_n)?;
            let forcing = Forcing::Cosine { omega };
            let f = forcing.sample(&grid)?;
            let u = solve_heat(p.lambda, &forcing, &grid)?;
            let mut table = Table::new(["t", "f", "u"]);
            for (i, t) in grid.nodes().into_iter().enumerate() {
                table.push(vec![t, f[i], u.values()[i]]);
            }
            Ok(table.render())
        }
        Equation::Schrodinger => {
            let omega = omega.unwrap_or(p.lambda);
            let grid = time_grid(p.horizon, omega.max(p.lambda), grid_n)?;
            let f = ComplexSignal::from_fn(grid, |t| Complex64::new(0.0, omega * t).exp())?;
            let u = solve_schrodinger(p.lambda, &Forcing::ComplexSampled(f.clone()), &grid)?;
            let mut table = Table::new(["t", "re_f", "im_f", "re_u", "im_u", "abs_u"]);
            for (i, t) in grid.nodes().into_iter().enumerate() {
                let (f, u) = (f.values()[i], u.values()[i]);
                table.push(vec![t, f.re, f.im, u.re, u.im, u.norm()]);
            }
            Ok(table.render())
        }
    }
}
