//! The six subcommands. Each one writes its data files and a manifest into
//! an output directory and returns the manifest plus a printable table.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use nclab::observables::{
    coupling_asymmetry, ground_mode_ic, xi_dot_closed, OmegaTimeGrid, SectorEnergySeries,
    SeriesSource,
};
use nclab::wigner::{
    energy_level, gaussian_widths, stargen_residual, wigner_eigenfunction, wigner_normalization,
    QuantumNumbers,
};
use nclab::{
    algebra_residual, derived_constants, integrate_numeric_strided, invariant_pair, make_gauge,
    propagate_analytic, PhaseState, Sector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{RunConfig, Settings};
use crate::error::{CliError, Result};
use crate::formats::{self, ResidualRecord};
use crate::manifest::{Check, Run, RunManifest};

/// What a command hands back to the caller.
#[derive(Debug, Clone)]
pub struct Report {
    pub manifest: RunManifest,
    pub manifest_path: PathBuf,
    pub table: String,
}

impl Report {
    /// `Ok` when every recorded check passed.
    pub fn into_result(self) -> Result<Report> {
        if self.manifest.all_pass() {
            Ok(self)
        } else {
            Err(CliError::ChecksFailed(self.manifest.failed()))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Constants,
    Simulate,
    Xi,
    Wigner,
    Figure,
    Sweep,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Constants => "constants",
            Command::Simulate => "simulate",
            Command::Xi => "xi",
            Command::Wigner => "wigner",
            Command::Figure => "figure",
            Command::Sweep => "sweep",
        }
    }
}

pub fn run(cmd: Command, cfg: &RunConfig, out: &Path) -> Result<Report> {
    match cmd {
        Command::Constants => constants(cfg, out),
        Command::Simulate => simulate(cfg, out),
        Command::Xi => xi(cfg, out),
        Command::Wigner => wigner(cfg, out),
        Command::Figure => figure(cfg, out),
        Command::Sweep => sweep(cfg, out),
    }
}

fn finish(run: Run, rows: Vec<(String, f64)>) -> Result<Report> {
    let mut table = formats::table(&rows);
    for c in run.checks() {
        table.push_str(&format!(
            "[{}] {} = {} (tol {})\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            formats::sig6(c.value),
            formats::sig6(c.tolerance)
        ));
    }
    let (manifest, manifest_path) = run.finish()?;
    table.push_str(&format!("manifest: {}\n", manifest_path.display()));
    Ok(Report {
        manifest,
        manifest_path,
        table,
    })
}

fn parse_source(s: &str) -> Result<SeriesSource> {
    SeriesSource::parse(s).ok_or_else(|| CliError::Config(format!("unknown source {s:?}")))
}

pub fn constants(cfg: &RunConfig, out: &Path) -> Result<Report> {
    let s = cfg.settings()?;
    let mut run = Run::new(out, Command::Constants.name(), cfg, &s)?;
    let (p, dc) = (s.params, s.dc);
    let rows: Vec<(String, f64)> = vec![
        ("alpha".into(), dc.alpha),
        ("beta".into(), dc.beta),
        ("gamma".into(), dc.gamma),
        ("Omega".into(), dc.omega_big),
        ("lambda".into(), s.gauge.lambda),
        ("mu".into(), s.gauge.mu),
        ("lambda_mu".into(), dc.product_lm),
        ("gamma_over_Omega".into(), dc.ratio()),
        ("kappa".into(), coupling_asymmetry(&p, &dc)),
        ("theta".into(), p.theta),
        ("eta".into(), p.eta),
    ];
    let mut csv = String::from("name,value\n");
    for (k, v) in &rows {
        csv.push_str(&format!("{k},{}\n", formats::num(*v)));
        run.measure(k, *v);
    }
    run.emit("constants.csv", csv.as_bytes())?;

    run.check(Check::at_most(
        "algebra_residual",
        algebra_residual(&p, &s.gauge),
        1e-12,
    ));
    run.check(Check::at_most(
        "omega_identities",
        dc.identity_residuals(&p).max(),
        1e-12,
    ));
    if let Some(spec) = s.ratio_spec {
        run.check(Check::at_most(
            "ratio_target",
            (dc.ratio() - spec.ratio).abs(),
            1e-12,
        ));
    }
    if p.theta == 0.0 && p.eta == 0.0 {
        run.check(Check::at_most(
            "commutative_limit",
            (dc.omega_big - p.omega).abs() / p.omega,
            1e-15,
        ));
    }
    finish(run, rows)
}

/// Sample times matching [`integrate_numeric_strided`].
fn sample_times(t_end: f64, dt: f64, stride: usize) -> Vec<f64> {
    let n = ((t_end / dt).round() as usize).max(1);
    let h = t_end / n as f64;
    let stride = stride.max(1);
    (0..=n)
        .filter(|&k| k % stride == 0 || k == n)
        .map(|k| k as f64 * h)
        .collect()
}

/// `max |v_k − v_0| / scale`.
fn drift(values: impl Iterator<Item = f64>, scale: f64) -> f64 {
    let mut first = None;
    let mut worst = 0.0f64;
    for v in values {
        let f = *first.get_or_insert(v);
        worst = worst.max((v - f).abs());
    }
    worst / scale
}

/// Drifts of both invariants along `pts`, each relative to the initial `I₁`
/// (both have units of action; `I₂` may vanish).
fn invariant_drifts(pts: &[(f64, PhaseState)], dc: &nclab::DerivedConstants) -> (f64, f64) {
    let scale = pts
        .first()
        .map(|(_, p)| invariant_pair(p, dc).0.abs())
        .filter(|s| *s > 0.0)
        .unwrap_or(1.0);
    (
        drift(pts.iter().map(|(_, p)| invariant_pair(p, dc).0), scale),
        drift(pts.iter().map(|(_, p)| invariant_pair(p, dc).1), scale),
    )
}

pub fn simulate(cfg: &RunConfig, out: &Path) -> Result<Report> {
    let s = cfg.settings()?;
    let dc = s.dc;
    let mut run = Run::new(out, Command::Simulate.name(), cfg, &s)?;
    let ic = match cfg.initial_conditions()? {
        Some(ic) => ic,
        None => ground_mode_ic(&dc, s.params.hbar),
    };
    let t_end = cfg.t_max.unwrap_or(40.0 * PI) / dc.omega_big;
    let dt = cfg.dt.unwrap_or(2.0 * PI / 2000.0) / dc.omega_big;
    let stride = cfg.stride.unwrap_or(1);
    let method = cfg.method.as_deref().unwrap_or("analytic");
    let (want_analytic, want_rk4) = match method {
        "analytic" => (true, false),
        "rk4" => (false, true),
        "both" => (true, true),
        other => return Err(CliError::Config(format!("unknown method {other:?}"))),
    };

    let mut rows = vec![
        ("Omega".to_string(), dc.omega_big),
        ("t_end".to_string(), t_end),
    ];
    let analytic: Option<Vec<(f64, PhaseState)>> = want_analytic.then(|| {
        sample_times(t_end, dt, stride)
            .into_iter()
            .map(|t| (t, propagate_analytic(&ic, &dc, t)))
            .collect()
    });
    if let Some(pts) = &analytic {
        run.emit(
            "trajectory_analytic.csv",
            formats::trajectory_csv(pts, dc.omega_big).as_bytes(),
        )?;
        let (i1, i2) = invariant_drifts(pts, &dc);
        run.measure("analytic_invariant_drift_i1", i1);
        run.measure("analytic_invariant_drift_i2", i2);
        run.check(Check::at_most("analytic_invariants", i1.max(i2), 1e-10));
    }
    if want_rk4 {
        let traj = integrate_numeric_strided(&ic, &dc, t_end, dt, stride)?;
        run.emit(
            "trajectory_rk4.csv",
            formats::numeric_trajectory_csv(&traj).as_bytes(),
        )?;
        let (i1, i2) = invariant_drifts(&traj.points, &dc);
        run.measure("rk4_invariant_drift_i1", i1);
        run.measure("rk4_invariant_drift_i2", i2);
        run.measure("rk4_step", traj.step);
        rows.push(("rk4_steps".into(), (t_end / traj.step).round()));
        if let Some(pts) = &analytic {
            let scale = pts.iter().fold(0.0f64, |m, (_, p)| m.max(p.max_abs()));
            let err = pts
                .iter()
                .zip(&traj.points)
                .fold(0.0f64, |m, ((_, a), (_, b))| m.max(a.max_abs_diff(b)))
                / scale;
            run.measure("rk4_vs_analytic", err);
            rows.push(("rk4_vs_analytic".into(), err));
            run.check(Check::at_most("rk4_vs_analytic", err, 1e-8));
        }
    }
    finish(run, rows)
}

/// Max over the grid of `|κ|·|cos2γt cos2Ωt − (γ/Ω) sin2γt sin2Ωt|`, the gap
/// the sign of `κ` opens between the closed form and the trajectory.
fn predicted_gap(s: &Settings, grid: &OmegaTimeGrid) -> f64 {
    let dc = s.dc;
    let kappa = coupling_asymmetry(&s.params, &dc);
    if kappa >= 0.0 {
        return 0.0;
    }
    grid.iter()
        .map(|wt| {
            let t = wt / dc.omega_big;
            let (s2g, c2g) = (2.0 * dc.gamma * t).sin_cos();
            let (s2o, c2o) = (2.0 * dc.omega_big * t).sin_cos();
            (-kappa * (c2g * c2o - dc.ratio() * s2g * s2o)).abs()
        })
        .fold(0.0, f64::max)
}

/// Compares the trajectory composition with the closed form on `grid`,
/// records the gap, and explains it by the sign of `κ` when it is not zero.
fn trajectory_oracle(run: &mut Run, s: &Settings, grid: &OmegaTimeGrid) -> Result<f64> {
    let closed =
        SectorEnergySeries::generate(SeriesSource::ClosedForm, &s.params, &s.gauge, &s.dc, grid)?;
    let mut gaps = Vec::new();
    for ratio in [s.gauge.ratio(), 0.5, 2.0] {
        let gauge = make_gauge(&s.params, ratio)?;
        let dc = derived_constants(&s.params, &gauge);
        let traj =
            SectorEnergySeries::generate(SeriesSource::Trajectory, &s.params, &gauge, &dc, grid)?;
        gaps.push(traj.max_difference(&closed));
    }
    let gap = gaps[0];
    let spread = gaps.iter().fold(0.0f64, |m, g| m.max((g - gap).abs()));
    let kappa = coupling_asymmetry(&s.params, &s.dc);
    run.measure("kappa", kappa);
    run.measure("trajectory_vs_closed_max_diff", gap);
    run.measure("trajectory_gap_gauge_spread", spread);
    if kappa >= 0.0 {
        run.check(Check::at_most("trajectory_matches_closed_form", gap, 1e-9));
    } else {
        let predicted = predicted_gap(s, grid);
        run.measure("trajectory_gap_predicted", predicted);
        run.check(Check::at_most(
            "trajectory_gap_explained_by_kappa_sign",
            (gap - predicted).abs(),
            1e-9,
        ));
        run.check(Check::at_most("trajectory_gap_gauge_stable", spread, 1e-9));
    }
    Ok(gap)
}

pub fn xi(cfg: &RunConfig, out: &Path) -> Result<Report> {
    let s = cfg.settings()?;
    let mut run = Run::new(out, Command::Xi.name(), cfg, &s)?;
    let grid = OmegaTimeGrid::new(
        0.0,
        cfg.t_max.unwrap_or(40.0),
        cfg.grid_points.unwrap_or(4001),
    );
    let degenerate_ok = s.params.theta * s.params.eta == 0.0;
    let sources: Vec<SeriesSource> = match cfg.source.as_deref().unwrap_or("closed_form") {
        "all" => SeriesSource::ALL
            .into_iter()
            .filter(|&src| src != SeriesSource::DegenerateForm || degenerate_ok)
            .collect(),
        one => vec![parse_source(one)?],
    };
    let mut rows = vec![("gamma_over_Omega".to_string(), s.dc.ratio())];
    for src in sources {
        let series = SectorEnergySeries::generate(src, &s.params, &s.gauge, &s.dc, &grid)?;
        run.emit(
            &format!("xi_{}.csv", src.as_str()),
            formats::series_csv(&series).as_bytes(),
        )?;
        let defect = series.partition_defect();
        run.measure(&format!("partition_defect_{}", src.as_str()), defect);
        run.check(Check::at_most(
            &format!("partition_{}", src.as_str()),
            defect,
            1e-12,
        ));
    }
    let gap = trajectory_oracle(&mut run, &s, &grid)?;
    rows.push(("trajectory_vs_closed".into(), gap));
    finish(run, rows)
}

fn plane_axes(plane: &str) -> Result<(usize, usize)> {
    let axis = |name: &str| match name {
        "q1" => Some(0),
        "q2" => Some(1),
        "p1" => Some(2),
        "p2" => Some(3),
        _ => None,
    };
    let bad = || {
        CliError::Config(format!(
            "plane must name two axes among q1,q2,p1,p2, got {plane:?}"
        ))
    };
    if plane.len() != 4 || !plane.is_ascii() {
        return Err(bad());
    }
    match (axis(&plane[..2]), axis(&plane[2..])) {
        (Some(a), Some(b)) if a != b => Ok((a, b)),
        _ => Err(bad()),
    }
}

pub fn wigner(cfg: &RunConfig, out: &Path) -> Result<Report> {
    let s = cfg.settings()?;
    let (dc, hbar) = (s.dc, s.params.hbar);
    let mut run = Run::new(out, Command::Wigner.name(), cfg, &s)?;
    let qn = QuantumNumbers::new(cfg.n1.unwrap_or(0), cfg.n2.unwrap_or(0));
    let (wq, wp) = gaussian_widths(&dc, hbar);
    let widths = [wq, wq, wp, wp];

    let (a, b) = plane_axes(cfg.plane.as_deref().unwrap_or("q1p2"))?;
    let n = cfg.grid_points.unwrap_or(81).max(2);
    let mut slice = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut z = [0.0; 4];
            z[a] = widths[a] * (-3.0 + 6.0 * i as f64 / (n - 1) as f64);
            z[b] = widths[b] * (-3.0 + 6.0 * j as f64 / (n - 1) as f64);
            let pt = PhaseState::from_array(z);
            slice.push((pt, wigner_eigenfunction(&pt, qn, &dc, hbar)));
        }
    }
    run.emit("wigner_slice.csv", formats::wigner_csv(&slice).as_bytes())?;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.unwrap_or(0));
    let mut records = Vec::new();
    for _ in 0..cfg.residual_points.unwrap_or(20) {
        let pt = PhaseState::from_array(widths.map(|w| rng.gen_range(-2.0..2.0) * w));
        let r = stargen_residual(&pt, qn, &dc, hbar)?;
        records.push(ResidualRecord::new(&pt, qn.n1, qn.n2, &r));
    }
    let mut json = serde_json::to_string_pretty(&records)?;
    json.push('\n');
    run.emit("wigner_residuals.json", json.as_bytes())?;
    let max_rel = records.iter().fold(0.0f64, |m, r| m.max(r.rel));
    run.check(Check::at_most("stargen_residual", max_rel, 1e-6));

    let energy = energy_level(qn, &dc, hbar);
    run.measure("energy", energy);
    let mut rows = vec![
        ("energy".to_string(), energy),
        ("max_residual_rel".to_string(), max_rel),
    ];
    let nodes = cfg
        .quadrature_nodes
        .clone()
        .unwrap_or_else(|| vec![20, 30, 40]);
    let norms: Vec<f64> = nodes
        .iter()
        .map(|&k| wigner_normalization(qn, &dc, hbar, k.max(1)))
        .collect();
    for (k, v) in nodes.iter().zip(&norms) {
        run.measure(&format!("normalization_n{k}"), *v);
        rows.push((format!("normalization_n{k}"), *v));
    }
    if let Some(&last) = norms.last() {
        let spread = norms.iter().fold(0.0f64, |m, v| m.max((v - last).abs()));
        run.measure("normalization", last);
        run.check(Check::at_most("normalization_stable", spread, 1e-6));
    }
    finish(run, rows)
}

/// Supplies the figure default `γ/Ω = 0.002`, single_theta, when the
/// configuration sets no deformation.
pub fn figure_config(cfg: &RunConfig) -> RunConfig {
    let mut c = cfg.clone();
    if !c.has_deformation() {
        c.ratio = Some(0.002);
        c.mode.get_or_insert_with(|| "single_theta".into());
    }
    c
}

pub fn figure(cfg: &RunConfig, out: &Path) -> Result<Report> {
    let cfg = &figure_config(cfg);
    let s = cfg.settings()?;
    let dc = s.dc;
    if dc.gamma == 0.0 {
        return Err(CliError::Config("figures need a nonzero gamma".into()));
    }
    let which = cfg.which.unwrap_or(1);
    let name = match which {
        1 => "figure1",
        2 => "figure2",
        w => return Err(CliError::Config(format!("no figure {w}"))),
    };
    let mut run = Run::new(out, name, cfg, &s)?;
    let r = dc.ratio();
    let beat = OmegaTimeGrid::new(
        0.0,
        cfg.t_max.unwrap_or(PI / r.abs()),
        cfg.grid_points.unwrap_or(200_000),
    );
    let zoom = OmegaTimeGrid::new(0.0, 40.0, 4000);
    let mut rows = vec![("gamma_over_Omega".to_string(), r)];
    run.measure("gamma_over_Omega", r);

    if which == 1 {
        let full = SectorEnergySeries::generate(
            SeriesSource::ClosedForm,
            &s.params,
            &s.gauge,
            &dc,
            &beat,
        )?;
        let near = SectorEnergySeries::generate(
            SeriesSource::ClosedForm,
            &s.params,
            &s.gauge,
            &dc,
            &zoom,
        )?;
        run.emit("figure1.csv", formats::series_csv(&full).as_bytes())?;
        run.emit("figure1_zoom.csv", formats::series_csv(&near).as_bytes())?;
        let max1 = full.xi1.iter().copied().fold(f64::MIN, f64::max);
        let min2 = full.xi2.iter().copied().fold(f64::MAX, f64::min);
        let k1 = coupling_asymmetry(&s.params, &dc).abs();
        let start =
            ((near.xi1[0] - 0.5 * (1.0 + k1)).abs()).max((near.xi2[0] - 0.5 * (1.0 - k1)).abs());
        run.measure("envelope_max_xi1", max1);
        run.measure("envelope_min_xi2", min2);
        run.measure("zoom_start_xi1", near.xi1[0]);
        run.measure("zoom_start_xi2", near.xi2[0]);
        rows.extend([
            ("envelope_max_xi1".to_string(), max1),
            ("envelope_min_xi2".to_string(), min2),
            ("zoom_start_xi1".to_string(), near.xi1[0]),
            ("zoom_start_xi2".to_string(), near.xi2[0]),
        ]);
        run.check(Check::at_most("envelope_max_xi1", (max1 - 1.0).abs(), 1e-3));
        run.check(Check::at_most("envelope_min_xi2", min2.abs(), 1e-3));
        run.check(Check::at_most("zoom_start", start, 1e-6));
        trajectory_oracle(&mut run, &s, &zoom)?;
    } else {
        let unit = s.params.hbar * dc.omega_big * dc.omega_big;
        let series = |grid: &OmegaTimeGrid| -> Result<Vec<(f64, f64)>> {
            grid.iter()
                .map(|wt| {
                    Ok((
                        wt,
                        xi_dot_closed(&dc, &s.params, wt / dc.omega_big, Sector::One)? / unit,
                    ))
                })
                .collect()
        };
        let full = series(&beat)?;
        let near = series(&zoom)?;
        run.emit("figure2.csv", formats::figure2_csv(&full, r).as_bytes())?;
        run.emit(
            "figure2_zoom.csv",
            formats::figure2_csv(&near, r).as_bytes(),
        )?;
        let hi = near.iter().map(|p| p.1).fold(f64::MIN, f64::max);
        let lo = near.iter().map(|p| p.1).fold(f64::MAX, f64::min);
        let amplitude = 0.5 * (hi - lo);
        run.measure("amplitude", amplitude);
        rows.push(("amplitude".to_string(), amplitude));
        run.check(Check::at_most(
            "amplitude_vs_gamma_over_Omega",
            (amplitude - r).abs() / r.abs(),
            1e-3,
        ));
    }
    finish(run, rows)
}

/// `sup |ξ₁^{first order} − ξ₁^{exact}|/ħΩ` on `grid`.
fn first_order_error(s: &Settings, grid: &OmegaTimeGrid) -> Result<f64> {
    let reference = if s.params.theta * s.params.eta == 0.0 {
        SeriesSource::DegenerateForm
    } else {
        SeriesSource::ClosedForm
    };
    let exact = SectorEnergySeries::generate(reference, &s.params, &s.gauge, &s.dc, grid)?;
    let approx =
        SectorEnergySeries::generate(SeriesSource::FirstOrder, &s.params, &s.gauge, &s.dc, grid)?;
    Ok(approx.max_difference(&exact))
}

struct Cell {
    cfg: RunConfig,
    settings: Settings,
    error: f64,
    report: Report,
}

fn sweep_cell(cfg: RunConfig, dir: PathBuf) -> Result<Cell> {
    let settings = cfg.settings()?;
    let mut run = Run::new(&dir, Command::Sweep.name(), &cfg, &settings)?;
    let grid = OmegaTimeGrid::new(
        0.0,
        cfg.t_max.unwrap_or(10.0),
        cfg.grid_points.unwrap_or(10_001),
    );
    let closed = SectorEnergySeries::generate(
        SeriesSource::ClosedForm,
        &settings.params,
        &settings.gauge,
        &settings.dc,
        &grid,
    )?;
    let first = SectorEnergySeries::generate(
        SeriesSource::FirstOrder,
        &settings.params,
        &settings.gauge,
        &settings.dc,
        &grid,
    )?;
    run.emit(
        "xi_closed_form.csv",
        formats::series_csv(&closed).as_bytes(),
    )?;
    run.emit("xi_first_order.csv", formats::series_csv(&first).as_bytes())?;
    let error = first_order_error(&settings, &grid)?;
    run.measure("first_order_error", error);
    run.check(Check::at_most(
        "partition_closed_form",
        closed.partition_defect(),
        1e-12,
    ));
    let report = finish(run, vec![("first_order_error".into(), error)])?;
    Ok(Cell {
        cfg,
        settings,
        error,
        report,
    })
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return f64::NAN;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

pub fn sweep(cfg: &RunConfig, out: &Path) -> Result<Report> {
    if cfg.theta.is_some() || cfg.eta.is_some() {
        return Err(CliError::Config("sweep takes ratios, not theta/eta".into()));
    }
    let ratios = cfg
        .ratios
        .clone()
        .unwrap_or_else(|| vec![0.001, 0.002, 0.004]);
    if ratios.is_empty() {
        return Err(CliError::Config("sweep needs at least one ratio".into()));
    }
    let cells: Vec<Result<Cell>> = std::thread::scope(|scope| {
        let handles: Vec<_> = ratios
            .iter()
            .enumerate()
            .map(|(k, &r)| {
                let mut c = cfg.clone();
                c.ratio = Some(r);
                c.ratios = None;
                let dir = out.join(format!("cell_{k:03}"));
                scope.spawn(move || sweep_cell(c, dir))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep cell panicked"))
            .collect()
    });
    let cells = cells.into_iter().collect::<Result<Vec<_>>>()?;

    let mut index =
        String::from("ratio,theta,eta,gamma,Omega,first_order_error,dir,manifest_sha256\n");
    for (k, c) in cells.iter().enumerate() {
        let bytes = std::fs::read(&c.report.manifest_path)
            .map_err(|e| CliError::io(&c.report.manifest_path, e))?;
        let p = c.settings.params;
        index.push_str(&format!(
            "{},{},{},{},{},{},cell_{k:03},{}\n",
            formats::num(c.cfg.ratio.unwrap_or(0.0)),
            formats::num(p.theta),
            formats::num(p.eta),
            formats::num(c.settings.dc.gamma),
            formats::num(c.settings.dc.omega_big),
            formats::num(c.error),
            crate::manifest::sha256_hex(&bytes)
        ));
    }

    let mut top_cfg = cfg.clone();
    top_cfg.ratios = Some(ratios.clone());
    let mut run = Run::new(out, "sweep_index", &top_cfg, &cells[0].settings)?;
    run.emit("sweep_index.csv", index.as_bytes())?;
    let pairs: Vec<(f64, f64)> = cells
        .iter()
        .map(|c| (c.cfg.ratio.unwrap_or(0.0), c.error))
        .collect();
    let exponent = log_log_slope(&pairs);
    run.measure("first_order_error_exponent", exponent);
    let mut rows = vec![("first_order_error_exponent".to_string(), exponent)];
    for c in &cells {
        for check in &c.report.manifest.checks {
            run.check(Check {
                name: format!(
                    "r={}:{}",
                    formats::num(c.cfg.ratio.unwrap_or(0.0)),
                    check.name
                ),
                ..check.clone()
            });
        }
        rows.push((
            format!(
                "first_order_error[r={}]",
                formats::num(c.cfg.ratio.unwrap_or(0.0))
            ),
            c.error,
        ));
    }
    finish(run, rows)
}
