//! Energies at one parameter point, flattened into output records.

use screened_core::oracle::{solve_level, RadialProblem};
use screened_core::potential::RadialGrid;
use screened_core::quadrature::QuadratureSpec;
use screened_core::susy::pair_energy;
use screened_core::variational::{minimize, MinimizeOptions};
use screened_core::{Error, ScreeningParams, Variant};

use crate::config::{MethodChoice, RunConfig, Units};

/// One output row.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub state: String,
    pub l: u32,
    pub lambda: f64,
    pub mu: f64,
    pub method: &'static str,
    pub convention: &'static str,
    pub energy: Option<f64>,
    pub units: &'static str,
    pub v_star: Option<f64>,
    pub residual: Option<f64>,
    pub flag: String,
}

/// Spectroscopic label of the nodeless level at `l`: 1s, 2p, 3d, …
pub fn state_label(l: u32) -> String {
    const LETTERS: &[u8] = b"spdfghiklmnoqrtuv";
    match LETTERS.get(l as usize) {
        Some(&c) => format!("{}{}", l + 1, c as char),
        None => format!("{}[l={l}]", l + 1),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    ClosedForm,
    Variational,
    Oracle,
}

impl Solver {
    pub fn label(self) -> &'static str {
        match self {
            Self::ClosedForm => "closed-form",
            Self::Variational => "variational",
            Self::Oracle => "oracle",
        }
    }

    /// Solvers selected by `choice`. `All` leaves out the oracle for
    /// complex potentials, which it cannot handle.
    pub fn selection(choice: MethodChoice, variant: Variant) -> Vec<Self> {
        match choice {
            MethodChoice::ClosedForm => vec![Self::ClosedForm],
            MethodChoice::Variational => vec![Self::Variational],
            MethodChoice::Oracle => vec![Self::Oracle],
            MethodChoice::All if variant == Variant::Hermitian => {
                vec![Self::ClosedForm, Self::Variational, Self::Oracle]
            }
            MethodChoice::All => vec![Self::ClosedForm, Self::Variational],
        }
    }
}

/// Numerical settings shared by every point of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub quad: QuadratureSpec,
    pub minimize: MinimizeOptions,
    pub grid_points: Option<usize>,
    pub units: Units,
}

impl Settings {
    pub fn from_config(cfg: &RunConfig) -> Self {
        Self {
            quad: cfg.quad,
            minimize: MinimizeOptions::default(),
            grid_points: cfg.grid_points,
            units: cfg.units,
        }
    }
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            quad: QuadratureSpec::default(),
            minimize: MinimizeOptions::default(),
            grid_points: None,
            units: Units::Internal,
        }
    }
}

/// Result of one solver in internal units.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub per_part: f64,
    pub pair_sum: f64,
    pub v_star: Option<f64>,
    pub residual: Option<f64>,
    pub flag: &'static str,
}

pub fn estimate(
    solver: Solver,
    p: &ScreeningParams,
    l: u32,
    settings: &Settings,
) -> Result<Estimate, Error> {
    match solver {
        Solver::ClosedForm => {
            let report = pair_energy(p, l)?;
            Ok(Estimate {
                per_part: report.energy / 2.0,
                pair_sum: report.energy,
                v_star: None,
                residual: report.residual,
                flag: "",
            })
        }
        Solver::Variational => {
            let found = minimize(p, l, &settings.quad, &settings.minimize)?;
            let flag = if found.boundary {
                "boundary"
            } else if !found.stationary {
                "not-stationary"
            } else {
                ""
            };
            Ok(Estimate {
                per_part: found.energy.per_part,
                pair_sum: found.energy.pair_sum,
                v_star: Some(found.energy.v),
                residual: Some(found.derivative.abs()),
                flag,
            })
        }
        Solver::Oracle => {
            let level = solve_level(&oracle_problem(p, l, settings.grid_points)?, 0)?;
            let flag = match level.convergence {
                Some(c) if c > 1e-7 => "grid-unconverged",
                _ => "",
            };
            Ok(Estimate {
                per_part: level.energy,
                pair_sum: 2.0 * level.energy,
                v_star: None,
                residual: Some(level.residual),
                flag,
            })
        }
    }
}

/// Radial problem for one part of a real potential, `Re V / 2`, with the
/// grid sized from the closed-form estimate of the level.
pub fn oracle_problem(
    p: &ScreeningParams,
    l: u32,
    grid_points: Option<usize>,
) -> Result<RadialProblem, Error> {
    if p.variant != Variant::Hermitian {
        return Err(Error::Unsupported("the oracle handles real potentials only"));
    }
    let kappa = match pair_energy(p, l) {
        Ok(r) if r.energy < 0.0 => (-r.energy).sqrt(),
        _ => 0.0,
    };
    let mut grid = RadialProblem::default_grid(l, kappa)?;
    if let Some(n) = grid_points {
        grid = RadialGrid::uniform(grid.r_min(), grid.r_max(), n)?;
    }
    let p = *p;
    Ok(RadialProblem::new(move |r| p.per_part_real(r), l, grid))
}

/// Records for one solver at one point: a per-part and a pair-sum row, or a
/// single row carrying the error.
pub fn records_for(
    solver: Solver,
    p: &ScreeningParams,
    l: u32,
    settings: &Settings,
) -> Vec<Record> {
    let base = Record {
        state: state_label(l),
        l,
        lambda: p.lambda,
        mu: p.mu,
        method: solver.label(),
        convention: "",
        energy: None,
        units: settings.units.as_str(),
        v_star: None,
        residual: None,
        flag: String::new(),
    };
    match estimate(solver, p, l, settings) {
        Ok(e) => estimate_records(base, &e, settings.units),
        Err(err) => vec![Record {
            flag: error_flag(&err),
            ..base
        }],
    }
}

pub fn estimate_records(base: Record, e: &Estimate, units: Units) -> Vec<Record> {
    let f = units.factor();
    [("per-part", e.per_part), ("pair-sum", e.pair_sum)]
        .into_iter()
        .map(|(convention, energy)| Record {
            convention,
            energy: Some(energy * f),
            v_star: e.v_star,
            residual: e.residual,
            flag: e.flag.to_string(),
            ..base.clone()
        })
        .collect()
}

pub fn error_flag(err: &Error) -> String {
    match err {
        Error::NoBoundState { .. } | Error::Unbound { .. } => format!("unbound: {err}"),
        _ => format!("error: {err}"),
    }
}
