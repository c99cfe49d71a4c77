//! Superpotential ansätze of the Hamiltonian hierarchy and the quantities
//! derived from them.
//!
//! Throughout, the Riccati identity is taken in the `-½ d²/dr²` convention:
//!
//! ```text
//! V₋(r) - E₀ = ½ (W² - W′)        V₊(r) - E₀ = ½ (W² + W′)
//! ```
//!
//! The ansatz for hierarchy member `l + 1` is
//!
//! ```text
//! W(r) = -(l+1) c A e^{-Br} / (1 - e^{-Br}) + g/(l+1) - a/2
//! ```
//!
//! with `(A, B, c) = (a, a, 1)` for the hermitian form, `(a, a, i)` for the
//! non-PT form and `(a₀, i a₀, 1)` for the PT form. Every quantity is written
//! in terms of `t(r) = B / (e^{Br} - 1)`, which stays finite as `B → 0` and
//! tends to `1/r` there.

use num_complex::Complex64;

use crate::cmath;
use crate::error::{Error, Result};
use crate::potential::{split_conjugate_parts, ComplexScreening, RadialGrid, ScreeningParams, Variant};
use crate::report::{Convention, EnergyReport, Method};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// One superpotential of the hierarchy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpotentialSpec {
    pub a: ComplexScreening,
    pub l: u32,
    pub g: f64,
    pub variant: Variant,
}

/// What to do when `r` hits a pole of the superpotential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PoleHandling {
    #[default]
    Error,
    Infinite,
}

#[derive(Debug, Clone, Copy)]
struct Shape {
    /// `B`, the rate in `e^{-Br}`.
    rate: Complex64,
    /// `A / B`.
    ratio: Complex64,
    /// `c`, the phase on the decaying term.
    phase: Complex64,
}

impl SuperpotentialSpec {
    pub fn new(a: ComplexScreening, l: u32, g: f64, variant: Variant) -> Result<Self> {
        if !(g > 0.0 && g.is_finite()) {
            return Err(Error::Domain {
                what: "part coupling g must be positive",
                value: g,
            });
        }
        Ok(Self { a, l, g, variant })
    }

    /// Hermitian ansatz with a real screening exponent.
    pub fn hermitian(a: f64, l: u32, g: f64) -> Result<Self> {
        Self::new(ComplexScreening::real(a), l, g, Variant::Hermitian)
    }

    fn order(&self) -> f64 {
        f64::from(self.l) + 1.0
    }

    fn shape(&self) -> Shape {
        let a = self.a.a;
        match self.variant {
            Variant::Hermitian => Shape {
                rate: a,
                ratio: ONE,
                phase: ONE,
            },
            Variant::NonPtNonHermitian => Shape {
                rate: a,
                ratio: ONE,
                phase: I,
            },
            Variant::PtNonHermitian => Shape {
                rate: I * a,
                ratio: -I,
                phase: ONE,
            },
        }
    }

    /// Fails with the bound-state restriction when `Re k ≤ 0`.
    pub fn check_bound(&self) -> Result<Complex64> {
        let k = superpotential_asymptote(self);
        if k.re > 0.0 {
            Ok(k)
        } else {
            Err(Error::NoBoundState {
                l: self.l,
                g: self.g,
                a: self.a.a,
                k,
            })
        }
    }

    /// `t(r) = B/(e^{Br} - 1)`, or `None` at a pole.
    fn decay(&self, r: f64) -> Option<Complex64> {
        let x = self.shape().rate * r;
        if x.norm() >= 1e-3 && x.re <= 1.0 && cmath::expm1(x).norm() < 1e-300 {
            return None;
        }
        let t = cmath::bernoulli_ratio(x) / r;
        t.is_finite().then_some(t)
    }

    fn decay_checked(&self, r: f64, pole: PoleHandling) -> Result<Option<Complex64>> {
        if !(r > 0.0) {
            return match pole {
                PoleHandling::Infinite if r == 0.0 => Ok(None),
                _ => Err(Error::Domain {
                    what: "superpotential needs r > 0",
                    value: r,
                }),
            };
        }
        match (self.decay(r), pole) {
            (Some(t), _) => Ok(Some(t)),
            (None, PoleHandling::Infinite) => Ok(None),
            (None, PoleHandling::Error) => Err(Error::Domain {
                what: "superpotential pole (1 - e^{-ar} = 0)",
                value: r,
            }),
        }
    }

    fn w_and_derivative(&self, t: Complex64) -> (Complex64, Complex64) {
        let Shape { rate, ratio, phase } = self.shape();
        let m = self.order();
        let w = -m * phase * ratio * t + superpotential_asymptote(self);
        let dw = m * phase * ratio * t * (t + rate);
        (w, dw)
    }
}

fn infinite() -> Complex64 {
    Complex64::new(f64::INFINITY, 0.0)
}

/// `W(r)` for the variant of `s`.
pub fn superpotential(r: f64, s: &SuperpotentialSpec, pole: PoleHandling) -> Result<Complex64> {
    Ok(match s.decay_checked(r, pole)? {
        Some(t) => s.w_and_derivative(t).0,
        None => infinite(),
    })
}

/// Analytic `W′(r)`.
pub fn superpotential_derivative(
    r: f64,
    s: &SuperpotentialSpec,
    pole: PoleHandling,
) -> Result<Complex64> {
    Ok(match s.decay_checked(r, pole)? {
        Some(t) => s.w_and_derivative(t).1,
        None => infinite(),
    })
}

/// Constant term `k = g/(l+1) - a/2` of the ansatz.
pub fn superpotential_asymptote(s: &SuperpotentialSpec) -> Complex64 {
    Complex64::new(s.g / s.order(), 0.0) - s.a.a / 2.0
}

/// Ground energy `-k²/2` fixed by requiring the effective potential to vanish
/// at infinity.
pub fn part_ground_energy(s: &SuperpotentialSpec) -> Result<Complex64> {
    let k = s.check_bound()?;
    Ok(-k * k / 2.0)
}

/// Sum of the two parts' ground energies, each at strength `g = q/2`.
///
/// For the hermitian form at `q = 2` this is exactly
/// `-[1/(l+1)² + (λ² - μ²)/4 - λ/(l+1)]`.
pub fn pair_energy(p: &ScreeningParams, l: u32) -> Result<EnergyReport> {
    let (a1, a2) = split_conjugate_parts(p);
    let g = p.part_strength();
    let e1 = part_ground_energy(&SuperpotentialSpec::new(a1, l, g, p.variant)?)?;
    let e2 = part_ground_energy(&SuperpotentialSpec::new(a2, l, g, p.variant)?)?;
    let sum = e1 + e2;
    if p.variant != Variant::PtNonHermitian {
        debug_assert!(sum.im.abs() <= 1e-13 * sum.norm().max(1.0));
    }
    let mut report = EnergyReport::new(sum.re, Convention::PairSum, Method::Asymptote);
    report.residual = Some(sum.im.abs());
    Ok(report)
}

/// Closed-form ECSC energy `-(q/2)[1/(l+1)² + (λ² - μ²)/4 - λ/(l+1)]`.
pub fn closed_form_energy(q: f64, lambda: f64, mu: f64, l: u32) -> f64 {
    let m = f64::from(l) + 1.0;
    -(q / 2.0) * (1.0 / (m * m) + (lambda * lambda - mu * mu) / 4.0 - lambda / m)
}

/// Yukawa limit `-(q/2)[1/(l+1) - λ/2]²`.
pub fn yukawa_energy(q: f64, lambda: f64, l: u32) -> f64 {
    let m = f64::from(l) + 1.0;
    let k = 1.0 / m - lambda / 2.0;
    -(q / 2.0) * k * k
}

/// Effective potential that the ansatz solves exactly, in expanded form.
///
/// For the hermitian form this is the Hulthén-type expression
///
/// ```text
/// -g a e^{-ar}/(1-e^{-ar}) + l(l+1)/2 · a² e^{-2ar}/(1-e^{-ar})² + ½k² + E₀
/// ```
pub fn effective_potential(r: f64, s: &SuperpotentialSpec, e0: Complex64) -> Result<Complex64> {
    let Some(t) = s.decay_checked(r, PoleHandling::Error)? else {
        unreachable!("pole handling is Error");
    };
    let Shape { rate, ratio, phase } = s.shape();
    let m = s.order();
    let k = superpotential_asymptote(s);
    let quadratic = 0.5 * m * (m * phase * phase * ratio * ratio - phase * ratio);
    let linear = m * phase * ratio * (k + rate / 2.0);
    Ok(quadratic * t * t - linear * t + 0.5 * k * k + e0)
}

/// `½(W² - W′) + E₀` with `W′` analytic.
pub fn riccati_potential(r: f64, s: &SuperpotentialSpec, e0: Complex64) -> Result<Complex64> {
    riccati_with_offset(r, s, e0, 0.0)
}

fn riccati_with_offset(
    r: f64,
    s: &SuperpotentialSpec,
    e0: Complex64,
    offset: f64,
) -> Result<Complex64> {
    let Some(t) = s.decay_checked(r, PoleHandling::Error)? else {
        unreachable!("pole handling is Error");
    };
    let (w, dw) = s.w_and_derivative(t);
    let w = w + offset;
    Ok(0.5 * (w * w - dw) + e0)
}

/// Supersymmetric partner `½(W² + W′) + E₀`.
pub fn partner_potential(r: f64, s: &SuperpotentialSpec, e0: Complex64) -> Result<Complex64> {
    let Some(t) = s.decay_checked(r, PoleHandling::Error)? else {
        unreachable!("pole handling is Error");
    };
    let (w, dw) = s.w_and_derivative(t);
    Ok(0.5 * (w * w + dw) + e0)
}

/// Largest gap between the expanded effective potential and the Riccati form
/// built from `W` and its analytic derivative.
pub fn riccati_residual(s: &SuperpotentialSpec, e0: Complex64, grid: &RadialGrid) -> Result<f64> {
    riccati_residual_perturbed(s, e0, grid, 0.0)
}

/// [`riccati_residual`] with a constant `offset` added to `W` on the Riccati
/// side. Used to check that a corrupted superpotential is detected.
pub fn riccati_residual_perturbed(
    s: &SuperpotentialSpec,
    e0: Complex64,
    grid: &RadialGrid,
    offset: f64,
) -> Result<f64> {
    grid.points().try_fold(0.0f64, |worst, r| {
        let gap = (effective_potential(r, s, e0)? - riccati_with_offset(r, s, e0, offset)?).norm();
        Ok(worst.max(gap))
    })
}

/// Unnormalized ground state `exp(-∫W) = (1 - e^{-Br})^{(l+1) c A/B} e^{-kr}`.
pub fn ground_wavefunction(r: f64, s: &SuperpotentialSpec) -> Result<Complex64> {
    let k = s.check_bound()?;
    if r < 0.0 {
        return Err(Error::Domain {
            what: "wavefunction needs r >= 0",
            value: r,
        });
    }
    let Shape { rate, ratio, phase } = s.shape();
    let power = s.order() * phase * ratio;
    let base = -cmath::expm1(-rate * r);
    if base.norm() == 0.0 {
        return if power.re > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::Domain {
                what: "wavefunction singular at the origin",
                value: r,
            })
        };
    }
    Ok((power * base.ln() - k * r).exp())
}

/// Pair energies for `l = 0..=l_max`, stopping at the first unbound member.
#[derive(Debug, Clone, PartialEq)]
pub struct Hierarchy {
    pub levels: Vec<EnergyReport>,
    /// First `l` without a bound state and the restriction it violates.
    pub truncated: Option<(u32, Error)>,
}

pub fn hierarchy_energies(p: &ScreeningParams, l_max: u32) -> Hierarchy {
    let mut levels = Vec::new();
    for l in 0..=l_max {
        match pair_energy(p, l) {
            Ok(report) => levels.push(report),
            Err(err) => {
                return Hierarchy {
                    levels,
                    truncated: Some((l, err)),
                }
            }
        }
    }
    Hierarchy {
        levels,
        truncated: None,
    }
}
