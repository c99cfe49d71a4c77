//! The `energy`, `sweep`, `table1` and `verify` commands.

use std::io::Write;

use rayon::prelude::*;
use screened_core::{Convention, ScreeningParams, Variant};

use crate::compute::{
    error_flag, estimate, estimate_records, records_for, state_label, Estimate, Record, Settings,
    Solver,
};
use crate::config::{CommandKind, MethodChoice, RunConfig};
use crate::error::CliError;
use crate::output::write_records;
use crate::reference::{self, LAMBDAS};
use crate::verify::{self, VerifyOptions};

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let result = RunConfig::from_args(args).and_then(|cfg| dispatch(&cfg, out, err));
    match result {
        Ok(()) => 0,
        Err(CliError::Info(text)) => {
            let _ = write!(out, "{text}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "screened-susy: {e}");
            e.exit_code()
        }
    }
}

pub fn dispatch(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cfg.command {
        CommandKind::Energy => cmd_energy(cfg, out, err),
        CommandKind::Sweep => cmd_sweep(cfg, out),
        CommandKind::Table1 => cmd_table1(cfg, out),
        CommandKind::Verify => cmd_verify(cfg, out, err),
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Computation(format!("cannot start worker threads: {e}")))
}

fn params(cfg: &RunConfig, lambda: f64) -> Result<ScreeningParams, CliError> {
    ScreeningParams::new(cfg.q, lambda, cfg.mu_for(lambda), cfg.potential.variant())
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn solvers(cfg: &RunConfig, default: MethodChoice) -> Result<Vec<Solver>, CliError> {
    let choice = cfg.method.unwrap_or(default);
    let variant = cfg.potential.variant();
    if choice == MethodChoice::Oracle && variant != Variant::Hermitian {
        return Err(CliError::Usage(
            "the oracle handles real potentials only; use --potential ecsc, yukawa or coulomb"
                .into(),
        ));
    }
    Ok(Solver::selection(choice, variant))
}

/// Every requested method at a single point. Failures are reported after the
/// successful rows and turn into exit code 2.
pub fn cmd_energy(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let ([lambda], [l]) = (cfg.lambdas.as_slice(), cfg.ls.as_slice()) else {
        return Err(CliError::Usage(
            "energy takes a single lambda and a single l; use sweep for ranges".into(),
        ));
    };
    let p = params(cfg, *lambda)?;
    let settings = Settings::from_config(cfg);
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for solver in solvers(cfg, MethodChoice::All)? {
        let rows = records_for(solver, &p, *l, &settings);
        if rows[0].energy.is_none() {
            failures.push(format!("{}: {}", solver.label(), rows[0].flag));
        } else {
            records.extend(rows);
        }
    }
    write_records(&records, cfg.format, out)?;
    if cfg.method.is_none() && p.variant != Variant::Hermitian {
        writeln!(err, "note: oracle skipped for a complex potential")?;
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Computation(failures.join("; ")))
    }
}

/// Records over `lambdas × ls` in input order, computed in parallel.
pub fn cmd_sweep(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let solvers = solvers(cfg, MethodChoice::ClosedForm)?;
    let settings = Settings::from_config(cfg);
    let points: Vec<(ScreeningParams, u32)> = cfg
        .lambdas
        .iter()
        .map(|&lambda| params(cfg, lambda))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flat_map(|p| cfg.ls.iter().map(move |&l| (p, l)))
        .collect();
    let rows: Vec<Vec<Record>> = pool(cfg.jobs)?.install(|| {
        points
            .par_iter()
            .map(|(p, l)| {
                solvers
                    .iter()
                    .flat_map(|&s| records_for(s, p, *l, &settings))
                    .collect()
            })
            .collect()
    });
    let records: Vec<Record> = rows.into_iter().flatten().collect();
    write_records(&records, cfg.format, out)
}

/// Our three methods and the published values for each state and rate.
pub fn table1_records(cfg: &RunConfig) -> Result<Vec<Record>, CliError> {
    let settings = Settings::from_config(cfg);
    let cells: Vec<(u32, f64)> = (0..4u32)
        .flat_map(|l| LAMBDAS.iter().map(move |&lambda| (l, lambda)))
        .collect();
    let mu = cfg.mu;
    let q = cfg.q;
    let rows: Vec<Vec<Record>> = pool(cfg.jobs)?.install(|| {
        cells
            .par_iter()
            .map(|&(l, lambda)| {
                let p = ScreeningParams::new(q, lambda, mu.unwrap_or(lambda), Variant::Hermitian)
                    .expect("table parameters are valid");
                table1_cell(&p, l, &settings)
            })
            .collect()
    });
    Ok(rows.into_iter().flatten().collect())
}

fn table1_cell(p: &ScreeningParams, l: u32, settings: &Settings) -> Vec<Record> {
    let base = Record {
        state: state_label(l),
        l,
        lambda: p.lambda,
        mu: p.mu,
        method: "",
        convention: "",
        energy: None,
        units: settings.units.as_str(),
        v_star: None,
        residual: None,
        flag: String::new(),
    };
    let mut rows = Vec::new();
    let mut ours: [Option<Estimate>; 3] = [None, None, None];
    for (slot, solver) in [Solver::ClosedForm, Solver::Variational, Solver::Oracle]
        .into_iter()
        .enumerate()
    {
        let base = Record {
            method: solver.label(),
            ..base.clone()
        };
        match estimate(solver, p, l, settings) {
            Ok(e) => {
                rows.extend(estimate_records(base, &e, settings.units));
                ours[slot] = Some(e);
            }
            Err(err) => rows.push(Record {
                flag: error_flag(&err),
                ..base
            }),
        }
    }

    let published = reference::lookup(l, p.lambda);
    let scale = reference::published_scale(l);
    let pick = |e: &Estimate| match scale {
        Convention::PerPart => e.per_part,
        Convention::PairSum => e.pair_sum,
    };
    let columns = [
        ("published-susyqm", published.and_then(|c| c.susyqm), &ours[1]),
        ("published-exact", published.and_then(|c| c.exact), &ours[2]),
    ];
    for (method, value, ours) in columns {
        let flag = match value {
            None => "not-published",
            Some(_) if method == "published-susyqm" && reference::is_anomalous(l, p.lambda) => {
                "ANOMALOUS"
            }
            Some(_) => "",
        };
        rows.push(Record {
            method,
            convention: scale.as_str(),
            energy: value,
            units: "as-published",
            residual: value.zip(ours.as_ref()).map(|(v, e)| (v - pick(e)).abs()),
            flag: flag.into(),
            ..base.clone()
        });
    }
    rows
}

pub fn cmd_table1(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let records = table1_records(cfg)?;
    write_records(&records, cfg.format, out)
}

/// Runs every suite. The report goes to `out`, per-suite timing to `err`.
pub fn cmd_verify(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let opts = VerifyOptions {
        seed: cfg.seed,
        inject_riccati_fault: cfg.inject_riccati_fault,
        jobs: cfg.jobs,
    };
    let mut failed = Vec::new();
    for id in verify::SUITE_IDS {
        let report = verify::run_suite(id, &opts);
        writeln!(
            err,
            "suite {id} {}: {:.2} s (limit {} s)",
            report.name,
            report.elapsed.as_secs_f64(),
            report.limit.as_secs()
        )?;
        write!(out, "{}", report.render())?;
        if !report.passed() {
            failed.push(format!("{} ({})", id, report.name));
        }
    }
    if failed.is_empty() {
        writeln!(out, "all suites passed")?;
        Ok(())
    } else {
        writeln!(out, "failed suites: {}", failed.join(", "))?;
        Err(CliError::VerifyFailed(failed.join(", ")))
    }
}
