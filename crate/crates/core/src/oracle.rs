//! Grid-based radial Schrödinger solver used as ground truth.
//!
//! Solves `u″ = 2[V_eff(r) - E] u` on a uniform grid with the Numerov
//! recurrence. Levels are bracketed by counting the nodes of the outward
//! solution over the whole grid (the count equals the number of levels below
//! `E`), then refined on the log-derivative mismatch between the outward and
//! inward solutions at the outermost classical turning point.
//!
//! Only real potentials are handled here.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::potential::RadialGrid;

/// Largest magnitude the recurrence may reach before it is rescaled.
const RESCALE_ABOVE: f64 = 1e100;

type PotentialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A single-channel radial eigenproblem.
#[derive(Clone)]
pub struct RadialProblem {
    potential: PotentialFn,
    /// Angular momentum. Sets the `r^{l+1}` seed and, unless the potential is
    /// already effective, the centrifugal term.
    pub l: u32,
    /// Whether `l(l+1)/(2r²)` is added to the potential.
    pub centrifugal: bool,
    pub grid: RadialGrid,
    /// Initial energy bracket; expanded downwards and clipped at zero as needed.
    pub bracket: (f64, f64),
}

impl fmt::Debug for RadialProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProblem")
            .field("l", &self.l)
            .field("centrifugal", &self.centrifugal)
            .field("grid", &self.grid)
            .field("bracket", &self.bracket)
            .finish_non_exhaustive()
    }
}

impl RadialProblem {
    /// Physical potential `V(r)`; the centrifugal term is added.
    pub fn new(
        potential: impl Fn(f64) -> f64 + Send + Sync + 'static,
        l: u32,
        grid: RadialGrid,
    ) -> Self {
        Self {
            potential: Arc::new(potential),
            l,
            centrifugal: true,
            grid,
            bracket: (-2.0, 0.0),
        }
    }

    /// Potential that already contains its own `~ c/r²` core, such as the
    /// effective and partner potentials of the hierarchy. `l` only fixes the
    /// `r^{l+1}` behaviour at the origin.
    pub fn effective(
        potential: impl Fn(f64) -> f64 + Send + Sync + 'static,
        l: u32,
        grid: RadialGrid,
    ) -> Self {
        Self {
            centrifugal: false,
            ..Self::new(potential, l, grid)
        }
    }

    pub fn with_bracket(mut self, lo: f64, hi: f64) -> Self {
        self.bracket = (lo, hi);
        self
    }

    pub fn with_grid(mut self, grid: RadialGrid) -> Self {
        self.grid = grid;
        self
    }

    /// Default grid for a level with decay rate near `kappa`: uniform from
    /// `1e-5` to `max(60, 30(l+1)/κ)` with at least 40 001 points and a step
    /// of at most 0.01.
    pub fn default_grid(l: u32, kappa: f64) -> Result<RadialGrid> {
        let kappa = if kappa.is_finite() { kappa.max(0.05) } else { 0.05 };
        let r_max = (30.0 * (f64::from(l) + 1.0) / kappa).max(60.0);
        let mut n = ((r_max / 0.01).ceil() as usize + 1).max(40_001);
        if n % 2 == 0 {
            n += 1;
        }
        RadialGrid::uniform(1e-5, r_max, n)
    }

    /// `V_eff(r)` including the centrifugal term when requested.
    pub fn effective_value(&self, r: f64) -> f64 {
        let v = (self.potential)(r);
        if self.centrifugal {
            let l = f64::from(self.l);
            v + 0.5 * l * (l + 1.0) / (r * r)
        } else {
            v
        }
    }

    fn workspace(&self) -> Workspace {
        let r: Vec<f64> = self.grid.points().collect();
        let veff = r.iter().map(|&x| self.effective_value(x)).collect();
        Workspace {
            h: self.grid.step(),
            seed_power: self.l as i32 + 1,
            r,
            veff,
        }
    }
}

/// Potential sampled on the grid; private to one solve.
struct Workspace {
    h: f64,
    seed_power: i32,
    r: Vec<f64>,
    veff: Vec<f64>,
}

/// Node count and matching data of one shooting pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    /// Sign changes of the outward solution over the whole grid.
    pub nodes: usize,
    /// `u′/u` (outward) minus `u′/u` (inward) at the matching point.
    pub mismatch: f64,
    pub match_index: usize,
}

struct Shot {
    sweep: Sweep,
    wavefunction: Option<Vec<f64>>,
}

impl Workspace {
    fn len(&self) -> usize {
        self.r.len()
    }

    fn numerov_weights(&self, energy: f64) -> Vec<f64> {
        let c = self.h * self.h / 12.0;
        self.veff
            .iter()
            .map(|&v| 1.0 - c * 2.0 * (v - energy))
            .collect()
    }

    /// Frobenius series `r^{L+1}(1 + a₁r + a₂r²)` for a potential behaving as
    /// `L(L+1)/(2r²) - Z/r + V₀` near the origin, with `Z` and `V₀` read off
    /// the first two grid points.
    fn seed(&self, i: usize, energy: f64) -> f64 {
        let big_l = f64::from(self.seed_power - 1);
        let core = |j: usize| self.veff[j] - 0.5 * big_l * (big_l + 1.0) / (self.r[j] * self.r[j]);
        let (r0, r1) = (self.r[0], self.r[1]);
        let z = -r0 * core(0);
        let v0 = core(1) + z / r1;
        let a1 = -z / (big_l + 1.0);
        let a2 = (-2.0 * z * a1 + 2.0 * (v0 - energy)) / (2.0 * (2.0 * big_l + 3.0));
        let r = self.r[i];
        r.powi(self.seed_power) * (1.0 + r * (a1 + r * a2))
    }

    fn match_index(&self, energy: f64) -> usize {
        let n = self.len();
        let turning = self.veff.iter().rposition(|&v| v < energy).unwrap_or(n / 2);
        turning.clamp(2, n - 3)
    }

    fn shoot(&self, energy: f64, keep: bool) -> Shot {
        let n = self.len();
        let f = self.numerov_weights(energy);
        let m = self.match_index(energy);

        // outward over the whole grid
        let mut out = if keep { vec![0.0; n] } else { Vec::new() };
        let mut prev = self.seed(0, energy);
        let mut cur = self.seed(1, energy);
        if keep {
            out[0] = prev;
            out[1] = cur;
        }
        let mut nodes = 0;
        let mut around_match = [0.0; 3];
        for i in 1..n - 1 {
            let mut next = ((12.0 - 10.0 * f[i]) * cur - f[i - 1] * prev) / f[i + 1];
            if next.abs() > RESCALE_ABOVE {
                let s = 1.0 / next.abs();
                cur *= s;
                next *= s;
                if keep {
                    out[..=i].iter_mut().for_each(|u| *u *= s);
                }
                around_match.iter_mut().for_each(|u| *u *= s);
            }
            if (next < 0.0 && cur > 0.0) || (next > 0.0 && cur < 0.0) {
                nodes += 1;
            }
            if i + 2 >= m && i <= m {
                around_match[i + 1 - (m - 1)] = next;
            }
            if keep {
                out[i + 1] = next;
            }
            prev = cur;
            cur = next;
        }

        // inward from r_max with a decaying seed
        let kappa = (-2.0 * energy).max(0.0).sqrt();
        let mut inward = if keep { vec![0.0; n] } else { Vec::new() };
        let mut next = (-kappa * self.h).exp();
        let mut cur = 1.0;
        if keep {
            inward[n - 1] = next;
            inward[n - 2] = cur;
        }
        let mut in_around = [0.0; 3];
        for i in (m - 1..n - 1).rev() {
            if i <= m + 1 {
                in_around[i + 1 - m] = cur;
            }
            if i == m - 1 {
                break;
            }
            let mut prev = ((12.0 - 10.0 * f[i]) * cur - f[i + 1] * next) / f[i - 1];
            if prev.abs() > RESCALE_ABOVE {
                let s = 1.0 / prev.abs();
                cur *= s;
                prev *= s;
                if keep {
                    inward[i..].iter_mut().for_each(|u| *u *= s);
                }
                in_around.iter_mut().for_each(|u| *u *= s);
            }
            if keep {
                inward[i - 1] = prev;
            }
            next = cur;
            cur = prev;
        }

        let log_derivative = |u: &[f64; 3]| (u[2] - u[0]) / (2.0 * self.h * u[1]);
        let mismatch = log_derivative(&around_match) - log_derivative(&in_around);

        let wavefunction = keep.then(|| {
            let scale = out[m] / inward[m];
            let mut u: Vec<f64> = out[..m]
                .iter()
                .copied()
                .chain(inward[m..].iter().map(|v| v * scale))
                .collect();
            let peak = u.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            if peak > 0.0 {
                u.iter_mut().for_each(|v| *v /= peak);
            }
            u
        });

        Shot {
            sweep: Sweep {
                nodes,
                mismatch,
                match_index: m,
            },
            wavefunction,
        }
    }

    fn count(&self, energy: f64) -> usize {
        self.shoot(energy, false).sweep.nodes
    }
}

/// One shooting pass at fixed energy.
pub fn numerov_sweep(prob: &RadialProblem, energy: f64) -> Sweep {
    prob.workspace().shoot(energy, false).sweep
}

/// A converged level.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub energy: f64,
    pub l: u32,
    /// Sign changes of the returned eigenfunction.
    pub nodes: usize,
    /// `|mismatch|` at the converged energy.
    pub residual: f64,
    /// `|E(h) - E(2h)|`, when computed.
    pub convergence: Option<f64>,
    /// Eigenfunction on the grid, scaled to unit maximum.
    pub wavefunction: Vec<f64>,
}

/// Count sign changes, ignoring exact zeros.
pub fn sign_changes(u: &[f64]) -> usize {
    let mut last = 0.0f64;
    let mut changes = 0;
    for &v in u {
        if v != 0.0 {
            if last != 0.0 && (v > 0.0) != (last > 0.0) {
                changes += 1;
            }
            last = v;
        }
    }
    changes
}

/// Solver settings that are not part of the problem itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Absolute energy tolerance.
    pub tol: f64,
    /// Re-solve on the grid with doubled step to estimate discretization error.
    pub convergence_check: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            convergence_check: true,
        }
    }
}

/// Level with `n_r` radial nodes.
pub fn solve_level(prob: &RadialProblem, n_r: usize) -> Result<OracleResult> {
    solve_level_with(prob, n_r, &SolveOptions::default())
}

pub fn solve_level_with(
    prob: &RadialProblem,
    n_r: usize,
    options: &SolveOptions,
) -> Result<OracleResult> {
    let ws = prob.workspace();
    let energy = locate(&ws, prob, n_r, options.tol)?;
    let shot = ws.shoot(energy, true);
    let wavefunction = shot.wavefunction.unwrap_or_default();
    let convergence = if options.convergence_check {
        let coarse = prob.clone().with_grid(prob.grid.coarsened()?);
        let e_coarse = locate(&coarse.workspace(), &coarse, n_r, options.tol)?;
        Some((energy - e_coarse).abs())
    } else {
        None
    };
    Ok(OracleResult {
        energy,
        l: prob.l,
        nodes: sign_changes(&wavefunction),
        residual: shot.sweep.mismatch.abs(),
        convergence,
        wavefunction,
    })
}

fn locate(ws: &Workspace, prob: &RadialProblem, n_r: usize, tol: f64) -> Result<f64> {
    let (mut lo, hi0) = prob.bracket;
    let mut hi = hi0.min(0.0);
    let mut expansions = 0;
    while ws.count(lo) > n_r {
        lo = 2.0 * lo - 1.0;
        expansions += 1;
        if expansions > 60 {
            return Err(Error::NotConverged {
                what: "oracle bracket expansion",
                iterations: expansions,
                estimate: lo,
            });
        }
    }
    let mut found = ws.count(hi);
    if found <= n_r && hi < 0.0 {
        hi = 0.0;
        found = ws.count(hi);
    }
    if found <= n_r {
        return Err(Error::Unbound {
            l: prob.l,
            n_r,
            found,
        });
    }

    // node-count bisection down to a narrow bracket
    let coarse_width: f64 = 1e-9;
    let mut iterations = 0;
    while hi - lo > coarse_width.max(tol) {
        let mid = 0.5 * (lo + hi);
        if ws.count(mid) > n_r {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
        if iterations > 200 {
            break;
        }
    }

    // regula falsi (Illinois) on the matching mismatch
    let mismatch = |e: f64| ws.shoot(e, false).sweep.mismatch;
    let (mut f_lo, mut f_hi) = (mismatch(lo), mismatch(hi));
    if f_lo.signum() != f_hi.signum() && f_lo.is_finite() && f_hi.is_finite() {
        let mut side = 0i8;
        for _ in 0..100 {
            let e = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
            if !(e > lo && e < hi) || hi - lo <= tol {
                break;
            }
            let fe = mismatch(e);
            if fe == 0.0 {
                return Ok(e);
            }
            if fe.signum() == f_lo.signum() {
                lo = e;
                f_lo = fe;
                if side == -1 {
                    f_hi /= 2.0;
                }
                side = -1;
            } else {
                hi = e;
                f_hi = fe;
                if side == 1 {
                    f_lo /= 2.0;
                }
                side = 1;
            }
        }
        return Ok(if f_lo.abs() < f_hi.abs() { lo } else { hi });
    }

    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if ws.count(mid) > n_r {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The lowest levels of one channel.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub levels: Vec<OracleResult>,
    pub requested: usize,
}

impl Spectrum {
    pub fn is_complete(&self) -> bool {
        self.levels.len() == self.requested
    }

    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }
}

/// Up to `count` levels with node counts `0, 1, …`; stops at the first
/// unbound level.
pub fn spectrum(prob: &RadialProblem, count: usize) -> Result<Spectrum> {
    let mut levels = Vec::with_capacity(count);
    for n_r in 0..count {
        match solve_level(prob, n_r) {
            Ok(level) => levels.push(level),
            Err(Error::Unbound { .. }) => break,
            Err(err) => return Err(err),
        }
    }
    Ok(Spectrum {
        levels,
        requested: count,
    })
}

/// `⟨u|H|u⟩ / ⟨u|u⟩` with the trapezoid rule and a three-point second
/// derivative. `u` is sampled on the problem grid and should vanish at both
/// ends.
pub fn rayleigh_quotient(u: &[f64], prob: &RadialProblem) -> Result<f64> {
    let n = prob.grid.len();
    if u.len() != n {
        return Err(Error::InvalidGrid(format!(
            "function has {} samples, grid has {n}",
            u.len()
        )));
    }
    let h = prob.grid.step();
    let mut numerator = 0.0;
    for i in 1..n - 1 {
        let r = prob.grid.point(i);
        let laplacian = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
        let hu = -0.5 * laplacian + prob.effective_value(r) * u[i];
        numerator += u[i] * hu;
    }
    let denominator = u[1..n - 1].iter().map(|v| v * v).sum::<f64>()
        + 0.5 * (u[0] * u[0] + u[n - 1] * u[n - 1]);
    if !(denominator > 0.0) {
        return Err(Error::ZeroNorm);
    }
    Ok(numerator / denominator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::ScreeningParams;
    use crate::quadrature::QuadratureSpec;
    use crate::susy::{
        effective_potential, ground_wavefunction, part_ground_energy, partner_potential,
        SuperpotentialSpec,
    };
    use crate::variational::{part_energy_functional, TrialFamily};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn coulomb(l: u32) -> RadialProblem {
        let kappa = 1.0 / (f64::from(l) + 1.0);
        RadialProblem::new(|r| -1.0 / r, l, RadialProblem::default_grid(l, kappa).unwrap())
    }

    fn hulthen(a: f64) -> RadialProblem {
        let grid = RadialProblem::default_grid(0, 0.18).unwrap();
        RadialProblem::new(move |r| -a * (-a * r).exp() / -(-a * r).exp_m1(), 0, grid)
    }

    #[test]
    fn sweep_at_hydrogen_ground_state() {
        let s = numerov_sweep(&coulomb(0), -0.5);
        assert!(s.mismatch.abs() < 1e-6, "{s:?}");
        let off = numerov_sweep(&coulomb(0), -0.4);
        assert!(off.mismatch.abs() > 1e-2, "{off:?}");
    }

    #[test]
    fn sweep_at_hulthen_ground_state() {
        let s = numerov_sweep(&hulthen(0.1), -0.45125);
        assert!(s.mismatch.abs() < 1e-6, "{s:?}");
    }

    #[test]
    fn hydrogen_levels() {
        let s = solve_level(&coulomb(0), 0).unwrap();
        assert_abs_diff_eq!(s.energy, -0.5, epsilon = 1e-7);
        assert_eq!(s.nodes, 0);
        assert!(s.residual <= 1e-8, "{}", s.residual);
        assert!(s.convergence.unwrap() <= 1e-7);
        let p = solve_level(&coulomb(1), 0).unwrap();
        assert_abs_diff_eq!(p.energy, -0.125, epsilon = 1e-7);
    }

    #[test]
    fn hydrogen_s_series() {
        let prob = RadialProblem::new(|r| -1.0 / r, 0, RadialProblem::default_grid(0, 1.0 / 3.0).unwrap());
        let s = spectrum(&prob, 3).unwrap();
        assert!(s.is_complete());
        for (level, exact) in s.levels.iter().zip([-0.5, -0.125, -1.0 / 18.0]) {
            assert_abs_diff_eq!(level.energy, exact, epsilon = 1e-6);
        }
        for (n_r, level) in s.levels.iter().enumerate() {
            assert_eq!(level.nodes, n_r);
        }
    }

    #[test]
    fn hulthen_levels() {
        let s = spectrum(&hulthen(0.1), 2).unwrap();
        assert_abs_diff_eq!(s.levels[0].energy, -0.45125, epsilon = 1e-6);
        assert_abs_diff_eq!(s.levels[1].energy, -0.08, epsilon = 1e-6);
    }

    #[test]
    fn unbound_level_is_reported() {
        // a square well too shallow for a bound state
        let grid = RadialGrid::uniform(1e-5, 60.0, 20_001).unwrap();
        let prob = RadialProblem::new(|r| if r < 1.0 { -0.5 } else { 0.0 }, 0, grid);
        assert!(matches!(solve_level(&prob, 0), Err(Error::Unbound { found: 0, .. })));
        let s = spectrum(&prob, 2).unwrap();
        assert!(s.levels.is_empty());
        assert!(!s.is_complete());
    }

    #[test]
    fn bracket_expands_downwards() {
        let prob = coulomb(0).with_bracket(-0.1, 0.0);
        let s = solve_level(&prob, 0).unwrap();
        assert_abs_diff_eq!(s.energy, -0.5, epsilon = 1e-7);
    }

    #[test]
    fn rayleigh_quotient_of_hydrogen() {
        let grid = RadialGrid::uniform(1e-5, 60.0, 40_001).unwrap();
        let prob = RadialProblem::new(|r| -1.0 / r, 0, grid);
        let u: Vec<f64> = grid.points().map(|r| r * (-r).exp()).collect();
        assert_abs_diff_eq!(rayleigh_quotient(&u, &prob).unwrap(), -0.5, epsilon = 1e-6);
        assert!(rayleigh_quotient(&vec![0.0; grid.len()], &prob).is_err());
        assert!(rayleigh_quotient(&[1.0, 2.0], &prob).is_err());
    }

    #[test]
    fn screened_ground_state_follows_the_small_screening_series() {
        // e^{-x}cos x = 1 - x + x³/3 - x⁴/6 + x⁵/30 - …, averaged over hydrogen 1s
        let lambda = 0.02f64;
        let p = ScreeningParams::hermitian(lambda, lambda).unwrap();
        let grid = RadialProblem::default_grid(0, 1.0).unwrap();
        let s = solve_level(&RadialProblem::new(move |r| p.per_part_real(r), 0, grid), 0).unwrap();
        let series = -0.5 + lambda - lambda.powi(3) + 1.25 * lambda.powi(4) - 0.75 * lambda.powi(5);
        assert_abs_diff_eq!(s.energy, series, epsilon = 1e-9);
        assert_abs_diff_eq!(s.energy, -0.480008, epsilon = 1e-6);
    }

    fn hulthen_effective(a: f64, l: u32) -> (SuperpotentialSpec, Complex64) {
        let s = SuperpotentialSpec::hermitian(a, l, 1.0).unwrap();
        (s, part_ground_energy(&s).unwrap())
    }

    #[test]
    fn hulthen_effective_potential_closed_loop() {
        for a in [0.05, 0.1, 0.2] {
            for l in 0..4u32 {
                let (s, e0) = hulthen_effective(a, l);
                let kappa = (-2.0 * e0.re).sqrt();
                let grid = RadialProblem::default_grid(l, kappa).unwrap();
                let prob = RadialProblem::effective(
                    move |r| effective_potential(r, &s, e0).map_or(f64::NAN, |v| v.re),
                    l,
                    grid,
                );
                let level = solve_level(&prob, 0).unwrap();
                let k = 1.0 / (f64::from(l) + 1.0) - a / 2.0;
                assert_abs_diff_eq!(level.energy, -0.5 * k * k, epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn partner_drops_the_ground_level() {
        let (s, e0) = hulthen_effective(0.1, 0);
        let grid = RadialProblem::default_grid(0, 0.15).unwrap();
        let original = RadialProblem::effective(
            move |r| effective_potential(r, &s, e0).map_or(f64::NAN, |v| v.re),
            0,
            grid,
        );
        let partner = RadialProblem::effective(
            move |r| partner_potential(r, &s, e0).map_or(f64::NAN, |v| v.re),
            1,
            grid,
        );
        let below = spectrum(&original, 3).unwrap().energies();
        let above = spectrum(&partner, 2).unwrap().energies();
        assert_eq!(below.len(), 3);
        assert_eq!(above.len(), 2);
        assert_abs_diff_eq!(above[0], below[1], epsilon = 1e-5);
        assert_abs_diff_eq!(above[1], below[2], epsilon = 1e-5);
    }

    #[test]
    fn rayleigh_quotient_matches_quadrature_for_a_trial_function() {
        let p = ScreeningParams::hermitian(0.02, 0.0).unwrap();
        let part = p.part_potentials()[0];
        let trial = TrialFamily::new(0, 0.5, 1.0).unwrap();
        let grid = RadialGrid::uniform(1e-5, 80.0, 60_001).unwrap();
        let prob = RadialProblem::new(move |r| part.value_at(r).re, 0, grid);
        let u: Vec<f64> = grid.points().map(|r| trial.eval(r).psi).collect();
        let expected = part_energy_functional(&trial, &part, &QuadratureSpec::default()).unwrap();
        assert_abs_diff_eq!(rayleigh_quotient(&u, &prob).unwrap(), expected.re, epsilon = 1e-6);
    }

    #[test]
    fn rayleigh_quotient_of_the_hulthen_ground_state() {
        let (s, e0) = hulthen_effective(0.1, 0);
        let grid = RadialGrid::uniform(1e-5, 60.0, 40_001).unwrap();
        let prob = RadialProblem::effective(
            move |r| effective_potential(r, &s, e0).map_or(f64::NAN, |v| v.re),
            0,
            grid,
        );
        let u: Vec<f64> = grid
            .points()
            .map(|r| ground_wavefunction(r, &s).unwrap().re)
            .collect();
        assert_abs_diff_eq!(rayleigh_quotient(&u, &prob).unwrap(), -0.45125, epsilon = 1e-6);
    }

    #[test]
    fn excited_levels_have_their_node_count() {
        let prob = hulthen(0.05);
        for n_r in 0..4 {
            let level = solve_level(&prob, n_r).unwrap();
            assert_eq!(level.nodes, n_r);
            let n = n_r as f64 + 1.0;
            assert_abs_diff_eq!(level.energy, -0.5 * (1.0 / n - n * 0.05 / 2.0).powi(2), epsilon = 1e-6);
        }
    }

    #[test]
    fn sign_change_counting() {
        assert_eq!(sign_changes(&[0.0, 1.0, 0.0, -1.0, 2.0]), 2);
        assert_eq!(sign_changes(&[]), 0);
    }
}
