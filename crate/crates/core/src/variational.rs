//! Variational energies over the superpotential-inspired trial family
//!
//! ```text
//! Ψ_v(r) = (1 - e^{-vr})^{l+1} e^{-κr},   κ = g/(l+1) - v/2
//! ```
//!
//! The kinetic term is evaluated as `½∫(Ψ′)²`; the boundary terms of the
//! integration by parts vanish because `Ψ(0) = 0` and `Ψ` decays.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::minimize::bounded_brent;
use crate::potential::{PartPotential, ScreeningParams};
use crate::quadrature::{truncation_radius, QuadratureSpec};
use crate::report::{Convention, EnergyReport, Method};

/// One member of the trial family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialFamily {
    pub l: u32,
    /// Variational scale `v` (the exponent of the `1 - e^{-vr}` factor).
    pub v: f64,
    pub g: f64,
}

/// `Ψ`, `Ψ′` and `Ψ″` at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialValue {
    pub psi: f64,
    pub d1: f64,
    pub d2: f64,
}

impl TrialFamily {
    pub fn new(l: u32, v: f64, g: f64) -> Result<Self> {
        let upper = 2.0 * g / (f64::from(l) + 1.0);
        if !(v > 0.0 && v < upper) {
            return Err(Error::Domain {
                what: "variational scale must satisfy 0 < v < 2g/(l+1)",
                value: v,
            });
        }
        Ok(Self { l, v, g })
    }

    pub fn kappa(&self) -> f64 {
        self.g / (f64::from(self.l) + 1.0) - self.v / 2.0
    }

    /// Closed-form value and derivatives; `r` must be non-negative.
    pub fn eval(&self, r: f64) -> TrialValue {
        let m = self.l as i32 + 1;
        let mf = f64::from(m);
        let decay = (-self.v * r).exp();
        let s = -(-self.v * r).exp_m1();
        let ds = self.v * decay;
        let d2s = -self.v * ds;
        let env = (-self.kappa() * r).exp();
        let kappa = self.kappa();

        let s_m = s.powi(m);
        let s_m1 = s.powi(m - 1);
        let s_m2 = if m >= 2 { s.powi(m - 2) } else { 0.0 };

        let psi = s_m * env;
        let d1 = env * (mf * s_m1 * ds - kappa * s_m);
        let d2 = env
            * (mf * (mf - 1.0) * s_m2 * ds * ds + mf * s_m1 * d2s - 2.0 * kappa * mf * s_m1 * ds
                + kappa * kappa * s_m);
        TrialValue { psi, d1, d2 }
    }
}

/// `Ψ_v(r)` for `r ≥ 0`.
pub fn trial_psi(r: f64, t: &TrialFamily) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::Domain {
            what: "trial function needs r >= 0",
            value: r,
        });
    }
    Ok(t.eval(r).psi)
}

fn radius_for(t: &TrialFamily, quad: &QuadratureSpec) -> f64 {
    quad.r_max.unwrap_or_else(|| truncation_radius(t.kappa(), t.l))
}

/// `∫₀^∞ Ψ_v² dr`.
pub fn norm_integral(t: &TrialFamily, quad: &QuadratureSpec) -> Result<f64> {
    let [n] = quad.integrate(
        radius_for(t, quad),
        |r| [t.eval(r).psi.powi(2)],
        |s| s[0].ln(),
    )?;
    if n > 0.0 {
        Ok(n)
    } else {
        Err(Error::ZeroNorm)
    }
}

/// Kinetic energy `-½∫ΨΨ″ / ∫Ψ²` from the analytic second derivative.
pub fn kinetic_second_derivative_form(t: &TrialFamily, quad: &QuadratureSpec) -> Result<f64> {
    let [n, k] = quad.integrate(
        radius_for(t, quad),
        |r| {
            let tv = t.eval(r);
            [tv.psi * tv.psi, -0.5 * tv.psi * tv.d2]
        },
        |s| s[1] / s[0],
    )?;
    Ok(k / n)
}

/// Kinetic energy `½∫(Ψ′)² / ∫Ψ²`.
pub fn kinetic_first_derivative_form(t: &TrialFamily, quad: &QuadratureSpec) -> Result<f64> {
    let [n, k] = quad.integrate(
        radius_for(t, quad),
        |r| {
            let tv = t.eval(r);
            [tv.psi * tv.psi, 0.5 * tv.d1 * tv.d1]
        },
        |s| s[1] / s[0],
    )?;
    Ok(k / n)
}

/// Expectation values of one trial function against both parts.
fn part_energies(
    t: &TrialFamily,
    parts: &[PartPotential; 2],
    quad: &QuadratureSpec,
) -> Result<[Complex64; 2]> {
    let centrifugal = 0.5 * f64::from(t.l) * (f64::from(t.l) + 1.0);
    let energies = |s: &[f64; 7]| -> [Complex64; 2] {
        let common = s[1] + s[2];
        [
            Complex64::new(common + s[3], s[4]) / s[0],
            Complex64::new(common + s[5], s[6]) / s[0],
        ]
    };
    let sums = quad.integrate(
        radius_for(t, quad),
        |r| {
            let tv = t.eval(r);
            let density = tv.psi * tv.psi;
            let p1 = parts[0].value_at(r) * density;
            let p2 = parts[1].value_at(r) * density;
            [
                density,
                0.5 * tv.d1 * tv.d1,
                centrifugal * density / (r * r),
                p1.re,
                p1.im,
                p2.re,
                p2.im,
            ]
        },
        |s| {
            let [e1, e2] = energies(s);
            (e1 + e2).re
        },
    )?;
    if !(sums[0] > 0.0) {
        return Err(Error::ZeroNorm);
    }
    Ok(energies(&sums))
}

/// `⟨Ψ_v| -½d²/dr² + part(r) + l(l+1)/(2r²) |Ψ_v⟩ / ⟨Ψ_v|Ψ_v⟩` for one part
/// potential. Complex part exponents give complex energies.
pub fn part_energy_functional(
    t: &TrialFamily,
    part: &PartPotential,
    quad: &QuadratureSpec,
) -> Result<Complex64> {
    Ok(part_energies(t, &[*part, *part], quad)?[0])
}

/// Variational energy of both parts at a shared scale `v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairEnergy {
    pub v: f64,
    /// Complex energies of the two parts.
    pub parts: [Complex64; 2],
    /// `Re(E₁ + E₂)`.
    pub pair_sum: f64,
    /// `pair_sum / 2`.
    pub per_part: f64,
}

/// Energy of both conjugate parts for one trial scale.
pub fn total_energy(
    v: f64,
    p: &ScreeningParams,
    l: u32,
    quad: &QuadratureSpec,
) -> Result<PairEnergy> {
    let t = TrialFamily::new(l, v, p.part_strength())?;
    let parts = part_energies(&t, &p.part_potentials(), quad)?;
    let pair_sum = (parts[0] + parts[1]).re;
    Ok(PairEnergy {
        v,
        parts,
        pair_sum,
        per_part: pair_sum / 2.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeOptions {
    /// Lower end of the search interval.
    pub v_lo: f64,
    /// Gap kept below the normalizability limit `2g/(l+1)`.
    pub edge_gap: f64,
    pub xtol: f64,
    pub max_evaluations: usize,
    /// Step of the central difference used for the stationarity check.
    pub fd_step: f64,
    /// `|dE/dv| ≤ stationarity · |E|` counts as stationary.
    pub stationarity: f64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            v_lo: 1e-4,
            edge_gap: 1e-4,
            xtol: 1e-8,
            max_evaluations: 200,
            fd_step: 1e-4,
            stationarity: 1e-5,
        }
    }
}

/// Relative slack within which an edge value counts as the minimum.
const EDGE_SLACK: f64 = 1e-12;

/// Outcome of a variational minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariationalResult {
    pub energy: PairEnergy,
    /// Central-difference `dE/dv` (pair-sum scale) at the minimum.
    pub derivative: f64,
    /// Minimum sits on the edge of the search interval.
    pub boundary: bool,
    pub stationary: bool,
    pub evaluations: usize,
}

impl VariationalResult {
    pub fn report(&self, convention: Convention) -> EnergyReport {
        let energy = match convention {
            Convention::PerPart => self.energy.per_part,
            Convention::PairSum => self.energy.pair_sum,
        };
        EnergyReport {
            energy,
            convention,
            method: Method::Variational,
            v_star: Some(self.energy.v),
            residual: Some(self.derivative.abs()),
            boundary: self.boundary,
        }
    }
}

/// Minimizes the pair-sum energy over the trial scale `v`.
///
/// Both edges of the search interval are evaluated as well. An edge whose
/// energy is within `1e-12·|E|` of the interior minimum replaces it and the
/// result is flagged as a boundary minimum; stationarity is not required of it.
pub fn minimize(
    p: &ScreeningParams,
    l: u32,
    quad: &QuadratureSpec,
    options: &MinimizeOptions,
) -> Result<VariationalResult> {
    let g = p.part_strength();
    let lo = options.v_lo;
    let hi = 2.0 * g / (f64::from(l) + 1.0) - options.edge_gap;
    if !(lo < hi) {
        return Err(Error::Domain {
            what: "empty variational search interval",
            value: hi,
        });
    }
    let energy = |v: f64| total_energy(v, p, l, quad);
    let found = bounded_brent(
        |v| Ok(energy(v)?.pair_sum),
        lo,
        hi,
        options.xtol,
        options.max_evaluations,
    )?;
    let mut evaluations = found.evaluations;
    let mut best = energy(found.x)?;

    // an edge at least as low as the interior minimum wins
    let mut boundary = false;
    for edge in [lo, hi] {
        let near = (found.x - edge).abs() < 100.0 * options.xtol;
        let at_edge = match energy(edge) {
            Ok(e) => e,
            Err(err) if near => return Err(err),
            Err(_) => continue,
        };
        evaluations += 1;
        let lower = at_edge.pair_sum <= best.pair_sum + EDGE_SLACK * best.pair_sum.abs();
        if lower {
            best = at_edge;
        }
        boundary |= near || lower;
    }

    let h = options.fd_step.min(best.v - lo).min(hi - best.v);
    let derivative = if h > 0.0 {
        evaluations += 2;
        (energy(best.v + h)?.pair_sum - energy(best.v - h)?.pair_sum) / (2.0 * h)
    } else {
        let h = options.fd_step;
        evaluations += 2;
        if best.v <= lo {
            (energy(best.v + h)?.pair_sum - best.pair_sum) / h
        } else {
            (best.pair_sum - energy(best.v - h)?.pair_sum) / h
        }
    };
    let stationary = derivative.abs() <= options.stationarity * best.pair_sum.abs();

    Ok(VariationalResult {
        energy: best,
        derivative,
        boundary,
        stationary,
        evaluations,
    })
}
