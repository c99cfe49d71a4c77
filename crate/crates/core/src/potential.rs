//! Exponential-cosine screened Coulomb (ECSC) potential and its complexified
//! variants.
//!
//! All three variants share one parameter object. They differ only by the
//! phase in front of the screened term:
//!
//! ```text
//! hermitian             V(r) = -(q/r) e^{-λr}  cos(μr)
//! non-pt-non-hermitian  V(r) = +(iq/r) e^{-λr} cos(μr)
//! pt-non-hermitian      V(r) = -(q/r) e^{-iλr} cos(μr)
//! ```
//!
//! Writing `cos(μr)` as a sum of exponentials splits each potential into two
//! parts of strength `q/2` with complex screening exponents.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermiticity class of the screened potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Hermitian,
    NonPtNonHermitian,
    PtNonHermitian,
}

impl Variant {
    pub const ALL: [Variant; 3] = [
        Variant::Hermitian,
        Variant::NonPtNonHermitian,
        Variant::PtNonHermitian,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Hermitian => "hermitian",
            Variant::NonPtNonHermitian => "non-pt-non-hermitian",
            Variant::PtNonHermitian => "pt-non-hermitian",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| format!("unknown variant `{s}`"))
    }
}

/// Physical parameters of the screened potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScreeningParams {
    pub q: f64,
    pub lambda: f64,
    pub mu: f64,
    pub variant: Variant,
}

impl ScreeningParams {
    pub fn new(q: f64, lambda: f64, mu: f64, variant: Variant) -> Result<Self> {
        if !(q > 0.0 && q.is_finite()) {
            return Err(Error::Domain {
                what: "coupling q must be positive",
                value: q,
            });
        }
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::Domain {
                what: "screening rate lambda must be non-negative",
                value: lambda,
            });
        }
        if !(mu >= 0.0 && mu.is_finite()) {
            return Err(Error::Domain {
                what: "cosine frequency mu must be non-negative",
                value: mu,
            });
        }
        Ok(Self {
            q,
            lambda,
            mu,
            variant,
        })
    }

    /// Hermitian ECSC at the customary coupling `q = 2`.
    pub fn hermitian(lambda: f64, mu: f64) -> Result<Self> {
        Self::new(2.0, lambda, mu, Variant::Hermitian)
    }

    /// Strength carried by each of the two conjugate parts.
    pub fn part_strength(&self) -> f64 {
        self.q / 2.0
    }

    /// Potential value with no domain check. Negative `r` is evaluated by
    /// direct substitution into the closed form.
    pub fn value_at(&self, r: f64) -> Complex64 {
        let Self { q, lambda, mu, .. } = *self;
        let envelope = (mu * r).cos() / r;
        match self.variant {
            Variant::Hermitian => Complex64::new(-q * (-lambda * r).exp() * envelope, 0.0),
            Variant::NonPtNonHermitian => Complex64::new(0.0, q * (-lambda * r).exp() * envelope),
            Variant::PtNonHermitian => {
                -q * Complex64::new(0.0, -lambda * r).exp() * envelope
            }
        }
    }

    /// Real part of one conjugate part's potential, `Re V(r) / 2`. This is the
    /// potential the per-part energies refer to.
    pub fn per_part_real(&self, r: f64) -> f64 {
        self.value_at(r).re / 2.0
    }

    /// The two part potentials whose sum reproduces [`eval_potential`].
    pub fn part_potentials(&self) -> [PartPotential; 2] {
        let (a1, a2) = split_conjugate_parts(self);
        let strength = match self.variant {
            Variant::NonPtNonHermitian => Complex64::new(0.0, self.part_strength()),
            _ => Complex64::new(-self.part_strength(), 0.0),
        };
        [
            PartPotential {
                strength,
                exponent: a1.exponent,
            },
            PartPotential {
                strength,
                exponent: a2.exponent,
            },
        ]
    }
}

/// Screening exponent of one conjugate part.
///
/// `a` is the parameter that enters the superpotential ansatz (α, β for the
/// hermitian and non-PT forms, the real α₀, β₀ for the PT form). `exponent`
/// is the value `s` for which the part potential is proportional to
/// `e^{-s r}/r`. The two coincide except in the PT form, where
/// `exponent = -iα₀` for the first part and `iβ₀` for the second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexScreening {
    pub a: Complex64,
    pub exponent: Complex64,
}

impl ComplexScreening {
    pub fn new(a: Complex64) -> Self {
        Self { a, exponent: a }
    }

    pub fn real(a: f64) -> Self {
        Self::new(Complex64::new(a, 0.0))
    }
}

/// One part of the split potential: `strength * e^{-exponent r} / r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartPotential {
    pub strength: Complex64,
    pub exponent: Complex64,
}

impl PartPotential {
    pub fn value_at(&self, r: f64) -> Complex64 {
        self.strength * (-self.exponent * r).exp() / r
    }
}

/// Uniform discretization of `[r_min, r_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    r_min: f64,
    r_max: f64,
    n: usize,
}

impl RadialGrid {
    pub fn uniform(r_min: f64, r_max: f64, n: usize) -> Result<Self> {
        if !(r_min > 0.0 && r_min < r_max && r_max.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "need 0 < r_min < r_max, got [{r_min}, {r_max}]"
            )));
        }
        if n < 3 {
            return Err(Error::InvalidGrid(format!("need at least 3 points, got {n}")));
        }
        Ok(Self { r_min, r_max, n })
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        (self.r_max - self.r_min) / (self.n - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.r_max
        } else {
            self.r_min + i as f64 * self.step()
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.point(i))
    }

    /// Same interval with the step doubled (`(n-1)/2 + 1` points).
    pub fn coarsened(&self) -> Result<Self> {
        Self::uniform(self.r_min, self.r_max, (self.n - 1) / 2 + 1)
    }
}

/// Evaluates the screened potential at `r > 0`.
pub fn eval_potential(r: f64, p: &ScreeningParams) -> Result<Complex64> {
    if !(r > 0.0) {
        return Err(Error::Domain {
            what: "radius must be positive",
            value: r,
        });
    }
    Ok(p.value_at(r))
}

/// Splits the potential into its two exponential parts.
///
/// For the hermitian and non-PT forms the exponents are `λ - iμ` and
/// `λ + iμ`. For the PT form the ansatz parameters are `α₀ = μ - λ` and
/// `β₀ = λ + μ`, with part exponents `i(λ - μ)` and `i(λ + μ)`.
pub fn split_conjugate_parts(p: &ScreeningParams) -> (ComplexScreening, ComplexScreening) {
    let (lambda, mu) = (p.lambda, p.mu);
    match p.variant {
        Variant::Hermitian | Variant::NonPtNonHermitian => (
            ComplexScreening::new(Complex64::new(lambda, -mu)),
            ComplexScreening::new(Complex64::new(lambda, mu)),
        ),
        Variant::PtNonHermitian => {
            let alpha0 = mu - lambda;
            let beta0 = lambda + mu;
            (
                ComplexScreening {
                    a: Complex64::new(alpha0, 0.0),
                    exponent: Complex64::new(0.0, -alpha0),
                },
                ComplexScreening {
                    a: Complex64::new(beta0, 0.0),
                    exponent: Complex64::new(0.0, beta0),
                },
            )
        }
    }
}

/// `max |V*(r) - V(r)|` over the grid.
pub fn hermiticity_residual(p: &ScreeningParams, grid: &RadialGrid) -> f64 {
    grid.points()
        .map(|r| {
            let v = p.value_at(r);
            (v.conj() - v).norm()
        })
        .fold(0.0, f64::max)
}

/// `max |V*(-r) - V(r)|` over the grid. Reports the PT defect; the odd `1/r`
/// prefactor makes it nonzero in general.
pub fn pt_reflection_residual(p: &ScreeningParams, grid: &RadialGrid) -> f64 {
    grid.points()
        .map(|r| (p.value_at(-r).conj() - p.value_at(r)).norm())
        .fold(0.0, f64::max)
}
