use rayon::prelude::*;

use qpendulum::dynamics::{
    band_populations, grid_eigensolve, model_autocorrelation, propagate, uniform_times,
    AutocorrelationTrace, PropagationConfig,
};
use qpendulum::mathieu::{band_structure, characteristic_values};
use qpendulum::model::{gaussian_wavepacket, LatticeParams, SpatialGrid};
use qpendulum::perturbation::{energy_model, ModelLabel};
use qpendulum::revival::{detect_periodicity, model_timescales, projection_s, RevivalKind};

use crate::config::{RunConfig, Subcommand};
use crate::error::CliResult;
use crate::output::{format_float, write_csv, Cell, Table};

const DENSITY_STRIDE: usize = 8;
const DENSITY_EVERY: usize = 10;

pub fn run(cfg: &RunConfig) -> CliResult<()> {
    let table = match cfg.command {
        Subcommand::Spectrum => spectrum(cfg)?,
        Subcommand::Bands => bands(cfg)?,
        Subcommand::Evolve => evolve(cfg)?,
        Subcommand::Revivals => revivals(cfg)?,
        Subcommand::Project => project(cfg)?,
        Subcommand::Timescales => timescales(cfg)?,
    };
    write_csv(&table, cfg.out.as_deref())
}

/// Resolved configuration echoed at the top of every output file.
pub fn provenance(cfg: &RunConfig) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let mut put = |k: &str, v: String| out.push((k.to_string(), v));
    let f = |x: f64| format_float(x);
    put("command", cfg.command.name().into());
    put("version", env!("CARGO_PKG_VERSION").into());
    if let Some(p) = cfg.params {
        put("v0", f(p.v0()));
        put("kbar", f(p.kbar()));
        put("q", f(p.q()));
        put("omega_h", f(p.omega_h()));
        put("T_cl", f(p.classical_period()));
    } else if let [q] = cfg.q_values[..] {
        put("q", f(q));
    } else {
        let (a, b) = (cfg.q_values[0], cfg.q_values[cfg.q_values.len() - 1]);
        put(
            "q-range",
            format!("{}:{} ({} points)", f(a), f(b), cfg.q_values.len()),
        );
    }
    match cfg.command {
        Subcommand::Spectrum => {
            put("nmax", cfg.n_max.to_string());
            put("tol", f(cfg.tol));
        }
        Subcommand::Bands => {
            put("nmax", cfg.n_max.to_string());
            put("nu-points", cfg.nu_points.to_string());
        }
        Subcommand::Evolve | Subcommand::Revivals => {
            put("grid-points", cfg.grid_points.to_string());
            put("wells", cfg.wells.to_string());
            put("dt", f(cfg.dt));
            put("tmax", f(cfg.t_max));
            put("x0", f(cfg.x0));
            put("p0", f(cfg.p0));
            put("dp", f(cfg.dp));
            put("method", cfg.method.to_string());
            if cfg.command == Subcommand::Revivals {
                put(
                    "model",
                    cfg.model.map_or("quartic", ModelLabel::as_str).into(),
                );
                put("threshold", f(cfg.threshold));
            }
        }
        Subcommand::Project => {
            put("grid-points", cfg.grid_points.to_string());
            put("wells", cfg.wells.to_string());
            put("nmax", cfg.n_max.to_string());
        }
        Subcommand::Timescales => {
            put("model", cfg.model.map_or("all", ModelLabel::as_str).into());
            let n = &cfg.n_bar;
            put(
                "nbar",
                format!("{}:{} ({} points)", f(n[0]), f(n[n.len() - 1]), n.len()),
            );
        }
    }
    out
}

fn spectrum(cfg: &RunConfig) -> CliResult<Table> {
    let spectra = cfg
        .q_values
        .par_iter()
        .map(|&q| characteristic_values(q, cfg.n_max, cfg.tol))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&["q", "n", "a_n", "b_n"], provenance(cfg));
    for s in &spectra {
        for n in 0..=s.n_max() {
            t.push(vec![s.q.into(), n.into(), s.a[n].into(), s.b_n(n).into()]);
        }
    }
    Ok(t)
}

fn bands(cfg: &RunConfig) -> CliResult<Table> {
    let q = cfg.q_values[0];
    let last = (cfg.nu_points - 1) as f64;
    let nu: Vec<f64> = (0..cfg.nu_points).map(|i| i as f64 / last).collect();
    let b = band_structure(q, &nu, cfg.n_max)?;
    let mut t = Table::new(&["nu", "band", "a"], provenance(cfg));
    for (nu, row) in b.nu_grid.iter().zip(&b.energies) {
        for (n, a) in row.iter().enumerate() {
            t.push(vec![(*nu).into(), n.into(), (*a).into()]);
        }
    }
    Ok(t)
}

fn propagation(cfg: &RunConfig) -> PropagationConfig {
    let mut p = PropagationConfig::new(cfg.dt, cfg.t_max);
    p.method = cfg.method;
    p
}

fn packet(
    cfg: &RunConfig,
    params: &LatticeParams,
) -> CliResult<(SpatialGrid, qpendulum::model::WavefunctionField)> {
    let grid = SpatialGrid::new(cfg.grid_points, cfg.wells)?;
    let psi = gaussian_wavepacket(&grid, cfg.x0, cfg.p0, cfg.dp, params.kbar())?;
    Ok((grid, psi))
}

fn trace_rows(trace: &AutocorrelationTrace, t: &mut Table) {
    for (time, a) in trace.times.iter().zip(&trace.values) {
        t.push(vec![
            (*time).into(),
            a.re.into(),
            a.im.into(),
            a.norm_sqr().into(),
        ]);
    }
}

fn evolve(cfg: &RunConfig) -> CliResult<Table> {
    let params = cfg.lattice()?;
    let (_, psi) = packet(cfg, &params)?;
    let mut pc = propagation(cfg);
    if cfg.density_out.is_some() {
        pc.density_stride = Some(DENSITY_STRIDE);
        pc.density_every = DENSITY_EVERY;
    }
    let ev = propagate(&psi, &params, &pc)?;
    if let (Some(path), Some(map)) = (&cfg.density_out, &ev.density) {
        let mut prov = provenance(cfg);
        prov.push(("density-stride".into(), DENSITY_STRIDE.to_string()));
        prov.push(("density-every".into(), DENSITY_EVERY.to_string()));
        let mut d = Table::new(&["t", "x", "density"], prov);
        for (time, x, rho) in map.triples() {
            d.push(vec![time.into(), x.into(), rho.into()]);
        }
        write_csv(&d, Some(path))?;
    }
    let mut t = Table::new(&["t", "re_A", "im_A", "absA2"], provenance(cfg));
    trace_rows(&ev.trace, &mut t);
    Ok(t)
}

/// Peaks of `|A|²`, classified against the revival windows, followed by
/// summary rows `(detected, |A|² or empty, "<scale> predicted=<value>")`.
fn revivals(cfg: &RunConfig) -> CliResult<Table> {
    let params = cfg.lattice()?;
    let (grid, psi) = packet(cfg, &params)?;
    let label = cfg.model.unwrap_or(ModelLabel::Quartic);
    let basis = grid_eigensolve(&params, &grid, grid.n_points() / 4)?;
    let decomposition = basis.decompose(&psi)?;
    let pops = band_populations(&decomposition);
    let n_bar: f64 = pops.iter().enumerate().map(|(n, p)| n as f64 * p).sum();

    let trace = if label == ModelLabel::Numeric {
        propagate(&psi, &params, &propagation(cfg))?.trace
    } else {
        let steps = (cfg.t_max / cfg.dt - 1e-9).ceil() as usize;
        model_autocorrelation(
            &pops,
            &energy_model(&params, label)?,
            &uniform_times(cfg.dt, steps),
        )?
    };
    // Exact energies have no closed-form scales; the octic model stands in.
    let scale_label = if label == ModelLabel::Numeric {
        ModelLabel::Octic
    } else {
        label
    };
    let scales = model_timescales(&energy_model(&params, scale_label)?, n_bar)?;
    let report = detect_periodicity(&trace, cfg.threshold, Some(&scales))?;

    let mut prov = provenance(cfg);
    prov.push(("n_bar".into(), format_float(n_bar)));
    let mut t = Table::new(&["peak_time", "absA2", "classification"], prov);
    for peak in &report.peaks {
        let class = report
            .candidates
            .iter()
            .find(|c| c.peak == *peak)
            .map_or("peak", |c| c.kind.as_str());
        t.push(vec![peak.time.into(), peak.value.into(), class.into()]);
    }
    let predicted =
        |x: Option<f64>| format!("predicted={}", format_float(x.unwrap_or(f64::INFINITY)));
    t.push(vec![
        report.period.into(),
        Cell::Empty,
        format!("summary-classical {}", predicted(scales.t_cl))
            .as_str()
            .into(),
    ]);
    for (kind, want) in [
        (RevivalKind::Revival, scales.t_rev),
        (RevivalKind::SuperRevival, scales.t_spr),
    ] {
        let best = report.best(kind);
        t.push(vec![
            best.map(|c| c.peak.time).into(),
            best.map(|c| c.peak.value).into(),
            format!("summary-{} {}", kind.as_str(), predicted(want))
                .as_str()
                .into(),
        ]);
    }
    Ok(t)
}

fn project(cfg: &RunConfig) -> CliResult<Table> {
    let params = cfg.lattice()?;
    let grid = SpatialGrid::new(cfg.grid_points, cfg.wells)?;
    let states = ((cfg.n_max + 1) * cfg.wells).max(cfg.wells);
    let basis = grid_eigensolve(&params, &grid, states)?;
    let columns = ModelLabel::ANALYTIC
        .par_iter()
        .map(|&label| projection_s(&basis, label, 0..=cfg.n_max))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(
        &["n", "S_harmonic", "S_quartic", "S_sixtic", "S_octic"],
        provenance(cfg),
    );
    for n in 0..=cfg.n_max {
        let mut row = vec![Cell::Int(n)];
        row.extend(columns.iter().map(|c| Cell::Float(c[n].1)));
        t.push(row);
    }
    Ok(t)
}

fn timescales(cfg: &RunConfig) -> CliResult<Table> {
    let params = cfg.lattice()?;
    let labels: Vec<ModelLabel> = match cfg.model {
        Some(l) => vec![l],
        None => ModelLabel::ANALYTIC.to_vec(),
    };
    let models = labels
        .iter()
        .map(|&l| energy_model(&params, l))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = cfg
        .n_bar
        .par_iter()
        .map(|&n| {
            models
                .iter()
                .map(|m| model_timescales(m, n))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(
        &["n_bar", "model", "T_cl", "T_rev", "T_spr"],
        provenance(cfg),
    );
    let inf = |x: Option<f64>| Cell::Float(x.unwrap_or(f64::INFINITY));
    for ts in rows.iter().flatten() {
        t.push(vec![
            ts.n_bar.into(),
            ts.source.as_str().into(),
            inf(ts.t_cl),
            inf(ts.t_rev),
            inf(ts.t_spr),
        ]);
    }
    Ok(t)
}
