//! Composite Gauss–Legendre quadrature on a truncated half-line.

use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::GaussLegendre;

use crate::error::{Error, Result};

/// Settings for integrating smooth, exponentially decaying integrands over
/// `[0, r_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub points_per_panel: usize,
    /// Width of one panel before any refinement.
    pub panel_width: f64,
    /// Fixed truncation radius. `None` derives it from the decay rate.
    pub r_max: Option<f64>,
    /// Absolute tolerance on the refined estimate.
    pub tol: f64,
    /// How many times the panel count may double before giving up.
    pub max_doublings: u32,
    /// Upper bound on the initial panel count; wider panels are used past it.
    pub max_panels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            points_per_panel: 32,
            panel_width: 1.0,
            r_max: None,
            tol: 1e-10,
            max_doublings: 6,
            max_panels: 4096,
        }
    }
}

/// Smallest radius (at least 60) with `e^{-2κR} R^{2l+2} < 1e-14`.
pub fn truncation_radius(kappa: f64, l: u32) -> f64 {
    let power = 2.0 * f64::from(l) + 2.0;
    let target = 1e-14f64.ln();
    let mut r = 60.0f64;
    for _ in 0..50 {
        if -2.0 * kappa * r + power * r.ln() < target {
            break;
        }
        r = ((power * r.ln() - target) / (2.0 * kappa)).max(r * 1.01);
    }
    r.max(60.0)
}

fn default_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| nodes_and_weights(32))
}

fn nodes_and_weights(n: usize) -> Vec<(f64, f64)> {
    let n = NonZeroUsize::new(n.max(1)).expect("nonzero");
    GaussLegendre::new(n).as_node_weight_pairs().to_vec()
}

/// A composite rule over `[0, r_max]` with a fixed number of equal panels.
fn composite<const K: usize>(
    rule: &[(f64, f64)],
    r_max: f64,
    panels: usize,
    f: &mut impl FnMut(f64) -> [f64; K],
) -> [f64; K] {
    let width = r_max / panels as f64;
    let half = 0.5 * width;
    let mut total = [0.0; K];
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * width;
        let mut panel = [0.0; K];
        for &(x, w) in rule {
            let values = f(mid + half * x);
            for (acc, v) in panel.iter_mut().zip(values) {
                *acc += w * v;
            }
        }
        for (acc, v) in total.iter_mut().zip(panel) {
            *acc += half * v;
        }
    }
    total
}

impl QuadratureSpec {
    /// Integrates the `K` components of `f` over `[0, r_max]`, doubling the
    /// panel count until the scalar `estimate` changes by less than `tol`.
    /// Returns the finest component sums.
    pub fn integrate<const K: usize>(
        &self,
        r_max: f64,
        mut f: impl FnMut(f64) -> [f64; K],
        estimate: impl Fn(&[f64; K]) -> f64,
    ) -> Result<[f64; K]> {
        let owned;
        let rule = if self.points_per_panel == 32 {
            default_rule()
        } else {
            owned = nodes_and_weights(self.points_per_panel);
            &owned
        };
        let mut panels = ((r_max / self.panel_width).ceil() as usize).clamp(1, self.max_panels);
        let mut coarse = composite(rule, r_max, panels, &mut f);
        let mut change = f64::INFINITY;
        for _ in 0..self.max_doublings {
            panels *= 2;
            let fine = composite(rule, r_max, panels, &mut f);
            let (e_coarse, e_fine) = (estimate(&coarse), estimate(&fine));
            change = (e_fine - e_coarse).abs();
            coarse = fine;
            if change <= self.tol {
                return Ok(coarse);
            }
        }
        Err(Error::QuadratureNotConverged {
            estimate: estimate(&coarse),
            change,
        })
    }
}
