//! Command-line options, config files and the resolved run configuration.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use screened_core::quadrature::QuadratureSpec;
use screened_core::Variant;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "screened-susy",
    version,
    about = "Bound-state energies of exponential-cosine screened Coulomb potentials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandKind,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum CommandKind {
    /// Energies at a single parameter point
    Energy,
    /// Energies over a grid of screening rates and angular momenta
    Sweep,
    /// Reference table for the 1s, 2p, 3d and 4f levels
    Table1,
    /// Run the verification suites
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PotentialKind {
    Ecsc,
    Yukawa,
    Coulomb,
    EcscNonpt,
    EcscPt,
}

impl PotentialKind {
    pub fn variant(self) -> Variant {
        match self {
            Self::EcscNonpt => Variant::NonPtNonHermitian,
            Self::EcscPt => Variant::PtNonHermitian,
            _ => Variant::Hermitian,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    ClosedForm,
    Variational,
    Oracle,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    Internal,
    PaperRydberg,
}

impl Units {
    /// Multiplier from internal (`ħ = m = 1`) energies.
    pub fn factor(self) -> f64 {
        match self {
            Self::Internal => 1.0,
            Self::PaperRydberg => 2.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Internal => "internal",
            Self::PaperRydberg => "paper-rydberg",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Potential family
    #[arg(long, global = true, value_enum)]
    pub potential: Option<PotentialKind>,
    /// Screening rate: a value, a comma list, or start:stop:step
    #[arg(long, global = true)]
    pub lambda: Option<String>,
    /// Cosine frequency (defaults to lambda for the ecsc families)
    #[arg(long, global = true)]
    pub mu: Option<f64>,
    /// Coupling strength
    #[arg(long, global = true)]
    pub q: Option<f64>,
    /// Angular momentum: a value, a comma list, or an inclusive range a..b
    #[arg(long, global = true)]
    pub l: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub method: Option<MethodChoice>,
    #[arg(long, global = true, value_enum)]
    pub units: Option<Units>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Flat `key = value` file; command-line flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads for sweeps (0 uses every core)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for the randomized verification draws
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Quadrature tolerance for the variational integrals
    #[arg(long, global = true)]
    pub quad_tol: Option<f64>,
    /// Number of oracle grid points
    #[arg(long, global = true)]
    pub grid_points: Option<usize>,
    #[arg(long, global = true, hide = true)]
    pub inject_riccati_fault: bool,
}

/// Everything a command needs, after defaults and config files are applied.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub potential: PotentialKind,
    pub lambdas: Vec<f64>,
    pub mu: Option<f64>,
    pub q: f64,
    pub ls: Vec<u32>,
    pub method: Option<MethodChoice>,
    pub units: Units,
    pub format: Format,
    pub jobs: usize,
    pub seed: u64,
    pub quad: QuadratureSpec,
    pub grid_points: Option<usize>,
    pub inject_riccati_fault: bool,
}

pub const DEFAULT_SEED: u64 = 20_240_601;

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        Self {
            command,
            potential: PotentialKind::Ecsc,
            lambdas: vec![0.0],
            mu: None,
            q: 2.0,
            ls: vec![0],
            method: None,
            units: Units::Internal,
            format: Format::Table,
            jobs: 0,
            seed: DEFAULT_SEED,
            quad: QuadratureSpec::default(),
            grid_points: None,
            inject_riccati_fault: false,
        }
    }

    /// Parses process arguments (including the program name).
    pub fn from_args<I, T>(args: I) -> Result<Self, CliError>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args).map_err(|err| match err.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                CliError::Info(err.to_string())
            }
            _ => CliError::Usage(err.to_string()),
        })?;
        let file = match &cli.options.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| {
                    CliError::Usage(format!("cannot read config {}: {e}", path.display()))
                })?;
                parse_config_file(&text)?
            }
            None => BTreeMap::new(),
        };
        Self::resolve(cli.command, cli.options, &file)
    }

    fn resolve(
        command: CommandKind,
        flags: Options,
        file: &BTreeMap<String, String>,
    ) -> Result<Self, CliError> {
        let mut cfg = Self::new(command);
        let get = |key: &str| file.get(key).map(String::as_str);

        let potential = match flags.potential {
            Some(p) => Some(p),
            None => get("potential").map(parse_enum::<PotentialKind>).transpose()?,
        };
        if let Some(p) = potential {
            cfg.potential = p;
        }
        let lambda = flags.lambda.as_deref().or(get("lambda"));
        if let Some(text) = lambda {
            cfg.lambdas = parse_lambdas(text)?;
        }
        cfg.mu = match flags.mu {
            Some(mu) => Some(mu),
            None => get("mu").map(|v| parse_number::<f64>("mu", v)).transpose()?,
        };
        if let Some(q) = flags.q {
            cfg.q = q;
        } else if let Some(v) = get("q") {
            cfg.q = parse_number("q", v)?;
        }
        if let Some(text) = flags.l.as_deref().or(get("l")) {
            cfg.ls = parse_ls(text)?;
        }
        cfg.method = match flags.method {
            Some(m) => Some(m),
            None => get("method").map(parse_enum::<MethodChoice>).transpose()?,
        };
        if let Some(u) = flags.units {
            cfg.units = u;
        } else if let Some(v) = get("units") {
            cfg.units = parse_enum(v)?;
        }
        if let Some(f) = flags.format {
            cfg.format = f;
        } else if let Some(v) = get("format") {
            cfg.format = parse_enum(v)?;
        }
        if let Some(j) = flags.jobs {
            cfg.jobs = j;
        } else if let Some(v) = get("jobs") {
            cfg.jobs = parse_number("jobs", v)?;
        }
        if let Some(s) = flags.seed {
            cfg.seed = s;
        } else if let Some(v) = get("seed") {
            cfg.seed = parse_number("seed", v)?;
        }
        let quad_tol = match flags.quad_tol {
            Some(t) => Some(t),
            None => get("quad-tol").map(|v| parse_number::<f64>("quad-tol", v)).transpose()?,
        };
        if let Some(tol) = quad_tol {
            if !(tol > 0.0) {
                return Err(CliError::Usage(format!("quad-tol must be positive, got {tol}")));
            }
            cfg.quad.tol = tol;
        }
        cfg.grid_points = match flags.grid_points {
            Some(n) => Some(n),
            None => get("grid-points").map(|v| parse_number::<usize>("grid-points", v)).transpose()?,
        };
        if let Some(n) = cfg.grid_points {
            if n < 101 || n % 2 == 0 {
                return Err(CliError::Usage(format!(
                    "grid-points must be odd and at least 101, got {n}"
                )));
            }
        }
        cfg.inject_riccati_fault = flags.inject_riccati_fault;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.q > 0.0 && self.q.is_finite()) {
            return Err(CliError::Usage(format!("q must be positive, got {}", self.q)));
        }
        if let Some(mu) = self.mu {
            if !(mu >= 0.0 && mu.is_finite()) {
                return Err(CliError::Usage(format!("mu must be non-negative, got {mu}")));
            }
        }
        match self.potential {
            PotentialKind::Yukawa if self.mu.is_some_and(|mu| mu != 0.0) => Err(CliError::Usage(
                "the yukawa potential has no cosine factor; drop --mu".into(),
            )),
            PotentialKind::Coulomb
                if self.mu.is_some_and(|mu| mu != 0.0) || self.lambdas.iter().any(|&l| l != 0.0) =>
            {
                Err(CliError::Usage(
                    "the coulomb potential takes lambda = mu = 0".into(),
                ))
            }
            _ => Ok(()),
        }
    }

    /// Cosine frequency used at screening rate `lambda`.
    pub fn mu_for(&self, lambda: f64) -> f64 {
        match self.potential {
            PotentialKind::Yukawa | PotentialKind::Coulomb => 0.0,
            _ => self.mu.unwrap_or(lambda),
        }
    }
}

fn parse_enum<T: ValueEnum>(value: &str) -> Result<T, CliError> {
    T::from_str(value, true).map_err(|e| CliError::Usage(format!("invalid value `{value}`: {e}")))
}

fn parse_number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid {key} `{value}`")))
}

/// Flat `key = value` lines; `#` starts a comment. Keys use the long flag
/// names, with `_` and `-` interchangeable.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    const KEYS: [&str; 12] = [
        "potential", "lambda", "mu", "q", "l", "method", "units", "format", "jobs", "seed",
        "quad-tol", "grid-points",
    ];
    let mut map = BTreeMap::new();
    for (number, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("config line {}: expected `key = value`", number + 1))
        })?;
        let key = key.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!(
                "config line {}: unknown key `{key}`",
                number + 1
            )));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

/// Comma list of values and `start:stop:step` ranges (inclusive). An empty
/// string is an empty list.
pub fn parse_lambdas(text: &str) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::new();
    for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let parts: Vec<&str> = token.split(':').collect();
        match parts.as_slice() {
            [v] => out.push(parse_number::<f64>("lambda", v)?),
            [a, b, step] => {
                let (a, b, step): (f64, f64, f64) = (
                    parse_number("lambda", a)?,
                    parse_number("lambda", b)?,
                    parse_number("lambda", step)?,
                );
                if !(step > 0.0) || b < a {
                    return Err(CliError::Usage(format!("invalid lambda range `{token}`")));
                }
                let n = ((b - a) / step + 1e-9).floor() as usize;
                out.extend((0..=n).map(|i| a + step * i as f64));
            }
            _ => return Err(CliError::Usage(format!("invalid lambda `{token}`"))),
        }
    }
    if let Some(bad) = out.iter().find(|v| !(**v >= 0.0 && v.is_finite())) {
        return Err(CliError::Usage(format!("lambda must be non-negative, got {bad}")));
    }
    Ok(out)
}

/// Comma list of values and inclusive `a..b` ranges.
pub fn parse_ls(text: &str) -> Result<Vec<u32>, CliError> {
    let mut out = Vec::new();
    for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match token.split_once("..") {
            Some((a, b)) => {
                let a: u32 = parse_number("l", a)?;
                let b: u32 = parse_number("l", b.trim_start_matches('='))?;
                if b < a {
                    return Err(CliError::Usage(format!("empty l range `{token}`")));
                }
                out.extend(a..=b);
            }
            None => out.push(parse_number("l", token)?),
        }
    }
    Ok(out)
}
