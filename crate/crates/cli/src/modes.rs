//! Implementations of the individual subcommands.

use rayon::prelude::*;

use dicke_pair::hamiltonian::{A, E, G, S};
use dicke_pair::master::StateVector15;
use dicke_pair::{
    amplitudes_from_ground, coherences_from_ground, dipole_dipole_shift, evolve, fidelity,
    pure_concurrence, steady_concurrence, steady_state_closed_form, steady_state_numeric,
    to_product_basis, wootters_concurrence, x_state_concurrence_mixed, x_state_concurrence_pure,
    DensityMatrix, PairGeometry, SystemParams,
};

use crate::config::Settings;
use crate::output::{Cell, Table};
use crate::CliError;

fn time_grid(settings: &Settings) -> Vec<f64> {
    let n = settings.n_samples;
    (0..n)
        .map(|k| settings.t_max * k as f64 / (n - 1) as f64)
        .collect()
}

/// `geom`: print the collective parameters for a separation and orientation.
pub fn run_geom(geom: PairGeometry) -> Result<(), CliError> {
    let omega12 = dipole_dipole_shift(geom);
    let gamma12 = dicke_pair::collective_decay(geom);
    println!(
        "r12/lambda = {:.6}, theta = {:.6} rad (x = kr12 = {:.6})",
        geom.separation_over_wavelength(),
        geom.theta(),
        geom.kr()
    );
    println!("omega12 = {omega12:.6} gamma");
    println!("gamma12 = {gamma12:.6} gamma");
    println!(
        "note: figure captions quote the doubled value 2*omega12 = {:.6} gamma",
        2.0 * omega12
    );
    Ok(())
}

/// `pure`: dissipation-free time series of concurrences, populations and
/// coherences.
pub fn run_pure(settings: &Settings) -> Result<(), CliError> {
    let mut table = Table::new(vec![
        "t",
        "concurrence",
        "concurrence_x",
        "pop_g",
        "pop_e",
        "pop_s",
        "rho_gs_re",
        "rho_gs_im",
        "rho_es_re",
        "rho_es_im",
        "rho_ge_re",
        "rho_ge_im",
    ]);
    for t in time_grid(settings) {
        let a = amplitudes_from_ground(&settings.params, t);
        let conc = pure_concurrence(&a).map_err(CliError::run)?;
        let cx = x_state_concurrence_pure(&a);
        let (gs, es, ge) = coherences_from_ground(&settings.params, t);
        table.push_row(vec![
            t.into(),
            conc.into(),
            cx.into(),
            a.c_g.norm_sqr().into(),
            a.c_e.norm_sqr().into(),
            a.c_s.norm_sqr().into(),
            gs.re.into(),
            gs.im.into(),
            es.re.into(),
            es.im.into(),
            ge.re.into(),
            ge.im.into(),
        ]);
    }
    table.set_metadata(Some(settings), "pure");
    table.emit(settings.out.as_deref(), settings.format)
}

/// `master`: dissipative time series with the entanglement measures.
pub fn run_master(settings: &Settings) -> Result<(), CliError> {
    let mut table = Table::new(vec![
        "t",
        "rho_ee_re",
        "rho_ee_im",
        "rho_ss_re",
        "rho_ss_im",
        "rho_aa_re",
        "rho_aa_im",
        "rho_ge_re",
        "rho_ge_im",
        "rho_eg_re",
        "rho_eg_im",
        "rho_es_re",
        "rho_es_im",
        "rho_se_re",
        "rho_se_im",
        "rho_gs_re",
        "rho_gs_im",
        "rho_sg_re",
        "rho_sg_im",
        "concurrence_wootters",
        "concurrence_x",
        "fidelity",
        "purity",
    ]);
    let grid = time_grid(settings);
    let traj = evolve(
        &DensityMatrix::ground(),
        &settings.params,
        &grid,
        settings.tol,
    )
    .map_err(CliError::run)?;
    for (rho, &t) in traj.iter().zip(grid.iter()) {
        let s = StateVector15::from_density(rho).map_err(CliError::run)?;
        let cw = wootters_concurrence(&to_product_basis(rho).map_err(CliError::run)?)
            .map_err(CliError::run)?;
        let cx = x_state_concurrence_mixed(rho).map_err(CliError::run)?;
        let fid = fidelity(rho).map_err(CliError::run)?;
        let mut row: Vec<Cell> = Vec::with_capacity(23);
        row.push(t.into());
        for z in s.x.iter() {
            row.push(z.re.into());
            row.push(z.im.into());
        }
        row.push(cw.into());
        row.push(cx.into());
        row.push(fid.into());
        row.push(rho.purity().into());
        table.push_row(row);
    }
    table.set_metadata(Some(settings), "master");
    table.emit(settings.out.as_deref(), settings.format)
}

/// `fidelity`: Bell-state fidelity along the dissipative trajectory.
pub fn run_fidelity(settings: &Settings) -> Result<(), CliError> {
    let mut table = Table::new(vec!["t", "fidelity"]);
    let grid = time_grid(settings);
    let traj = evolve(
        &DensityMatrix::ground(),
        &settings.params,
        &grid,
        settings.tol,
    )
    .map_err(CliError::run)?;
    for (rho, &t) in traj.iter().zip(grid.iter()) {
        let fid = fidelity(rho).map_err(CliError::run)?;
        table.push_row(vec![t.into(), fid.into()]);
    }
    table.set_metadata(Some(settings), "fidelity");
    table.emit(settings.out.as_deref(), settings.format)
}

/// `steady`: closed-form vs directly solved steady state, stationary
/// concurrence and threshold data.
pub fn run_steady(settings: &Settings) -> Result<(), CliError> {
    let closed = steady_state_closed_form(&settings.params);
    let numeric = steady_state_numeric(&settings.params).map_err(CliError::run)?;
    let report = steady_concurrence(&settings.params);
    let numeric_conc = wootters_concurrence(&to_product_basis(&numeric).map_err(CliError::run)?)
        .map_err(CliError::run)?;

    let mut table = Table::new(vec![
        "quantity",
        "closed_re",
        "closed_im",
        "numeric_re",
        "numeric_im",
        "abs_diff",
    ]);
    let components = [
        ("rho_gg", (G, G)),
        ("rho_ee", (E, E)),
        ("rho_ss", (S, S)),
        ("rho_aa", (A, A)),
        ("rho_ge", (G, E)),
        ("rho_eg", (E, G)),
        ("rho_es", (E, S)),
        ("rho_se", (S, E)),
        ("rho_gs", (G, S)),
        ("rho_sg", (S, G)),
    ];
    for (name, (i, j)) in components {
        let c = closed.entry(i, j);
        let n = numeric.entry(i, j);
        table.push_row(vec![
            name.into(),
            c.re.into(),
            c.im.into(),
            n.re.into(),
            n.im.into(),
            (c - n).norm().into(),
        ]);
    }
    let scalar_rows: [(&str, f64, f64); 3] = [
        ("steady_concurrence", report.value, numeric_conc),
        (
            "threshold_margin",
            report.threshold_margin,
            report.threshold_margin,
        ),
        (
            "above_threshold",
            report.above_threshold as u8 as f64,
            report.above_threshold as u8 as f64,
        ),
    ];
    for (name, closed_v, numeric_v) in scalar_rows {
        table.push_row(vec![
            name.into(),
            closed_v.into(),
            0.0.into(),
            numeric_v.into(),
            0.0.into(),
            (closed_v - numeric_v).abs().into(),
        ]);
    }
    table.set_metadata(Some(settings), "steady");
    table.emit(settings.out.as_deref(), settings.format)
}

/// One axis of a sweep: `param=start:stop:points`.
#[derive(Clone, Debug)]
pub struct SweepAxis {
    pub param: SweepParam,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParam {
    Omega0,
    Omega12,
    Gamma12,
}

impl SweepAxis {
    pub fn parse(spec: &str) -> Result<Self, CliError> {
        let (name, range) = spec.split_once('=').ok_or_else(|| {
            CliError::usage(format!(
                "sweep spec {spec:?}: expected param=start:stop:points"
            ))
        })?;
        let param = match name.trim() {
            "omega0" => SweepParam::Omega0,
            "omega12" => SweepParam::Omega12,
            "gamma12" => SweepParam::Gamma12,
            other => {
                return Err(CliError::usage(format!(
                    "sweep spec: unknown parameter {other:?} (omega0, omega12, gamma12)"
                )))
            }
        };
        let parts: Vec<&str> = range.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::usage(format!(
                "sweep spec {spec:?}: expected start:stop:points"
            )));
        }
        let start: f64 = parts[0]
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("sweep spec {spec:?}: bad start")))?;
        let stop: f64 = parts[1]
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("sweep spec {spec:?}: bad stop")))?;
        let points: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("sweep spec {spec:?}: bad point count")))?;
        if points < 1 {
            return Err(CliError::usage("sweep spec: points must be >= 1"));
        }
        Ok(Self {
            param,
            start,
            stop,
            points,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        (0..self.points)
            .map(|k| self.start + (self.stop - self.start) * k as f64 / (self.points - 1) as f64)
            .collect()
    }

    fn apply(&self, base: &SystemParams, value: f64) -> Result<SystemParams, CliError> {
        let (mut o0, mut o12, mut g12) = (base.omega0(), base.omega12(), base.gamma12());
        match self.param {
            SweepParam::Omega0 => o0 = value,
            SweepParam::Omega12 => o12 = value,
            SweepParam::Gamma12 => g12 = value,
        }
        SystemParams::new(o0, o12, g12).map_err(CliError::run)
    }
}

/// `sweep`: stationary concurrence over a one- or two-parameter grid,
/// evaluated in parallel with a deterministic row order.
pub fn run_sweep(settings: &Settings, axes: &[SweepAxis]) -> Result<(), CliError> {
    if axes.is_empty() || axes.len() > 2 {
        return Err(CliError::usage(
            "sweep takes one or two --sweep param=start:stop:points axes",
        ));
    }
    if axes.len() == 2 && axes[0].param == axes[1].param {
        return Err(CliError::usage("sweep axes must name distinct parameters"));
    }

    // cartesian grid, second axis fastest
    let primary = axes[0].values();
    let secondary: Vec<Option<f64>> = match axes.get(1) {
        Some(axis) => axis.values().into_iter().map(Some).collect(),
        None => vec![None],
    };
    let points: Vec<(f64, Option<f64>)> = primary
        .iter()
        .flat_map(|&a| secondary.iter().map(move |&b| (a, b)))
        .collect();

    let rows: Result<Vec<Vec<Cell>>, CliError> = points
        .par_iter()
        .map(|&(a, b)| {
            let mut params = axes[0].apply(&settings.params, a)?;
            if let (Some(axis), Some(vb)) = (axes.get(1), b) {
                params = axis.apply(&params, vb)?;
            }
            let report = steady_concurrence(&params);
            Ok(vec![
                params.omega0().into(),
                params.omega12().into(),
                params.gamma12().into(),
                report.value.into(),
                report.threshold_margin.into(),
                (report.above_threshold as u8 as f64).into(),
            ])
        })
        .collect();

    let mut table = Table::new(vec![
        "omega0",
        "omega12",
        "gamma12",
        "steady_concurrence",
        "threshold_margin",
        "above_threshold",
    ]);
    for row in rows? {
        table.push_row(row);
    }
    table.set_metadata(Some(settings), "sweep");
    table.emit(settings.out.as_deref(), settings.format)
}
