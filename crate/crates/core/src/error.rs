use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("domain error: {what} (got {value})")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid radial grid: {0}")]
    InvalidGrid(String),

    /// The superpotential asymptote is not positive, so the ground state
    /// `(1 - e^{-ar})^{l+1} e^{-kr}` is not normalizable.
    #[error(
        "no bound state: restriction Re(g/(l+1) - a/2) > 0 violated for l = {l}, g = {g}, \
         a = {a}: k = {k}"
    )]
    NoBoundState {
        l: u32,
        g: f64,
        a: Complex64,
        k: Complex64,
    },

    #[error("quadrature did not converge: estimate {estimate}, last change {change:e}")]
    QuadratureNotConverged { estimate: f64, change: f64 },

    #[error("{what} did not converge after {iterations} iterations (last estimate {estimate})")]
    NotConverged {
        what: &'static str,
        iterations: usize,
        estimate: f64,
    },

    /// The oracle found fewer bound levels below zero than requested.
    #[error("no bound level with {n_r} radial nodes for l = {l} ({found} levels below zero)")]
    Unbound { l: u32, n_r: usize, found: usize },

    #[error("unsupported: {0}")]
    Unsupported(&'static str),

    #[error("zero-norm trial function")]
    ZeroNorm,
}
