use std::fmt;

/// Which energy scale a value refers to.
///
/// `PerPart` is the energy of one conjugate part (strength `q/2`), `PairSum`
/// the real sum over both parts. For conjugate parts the pair sum is twice the
/// per-part value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    PerPart,
    PairSum,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::PerPart => "per-part",
            Convention::PairSum => "pair-sum",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Asymptote,
    Variational,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Asymptote => "asymptote",
            Method::Variational => "variational",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Method-tagged energy in internal units (`ħ = m = 1`, kinetic term `-½ d²/dr²`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyReport {
    pub energy: f64,
    pub convention: Convention,
    pub method: Method,
    /// Minimizing variational scale, when the value came from a minimization.
    pub v_star: Option<f64>,
    /// Stationarity, Riccati or matching residual, depending on the method.
    pub residual: Option<f64>,
    /// Set when a minimization stopped on the edge of its search interval.
    pub boundary: bool,
}

impl EnergyReport {
    pub fn new(energy: f64, convention: Convention, method: Method) -> Self {
        Self {
            energy,
            convention,
            method,
            v_star: None,
            residual: None,
            boundary: false,
        }
    }

    /// The same result on the other scale (pair sum = 2 × per part).
    pub fn in_convention(&self, convention: Convention) -> Self {
        let energy = match (self.convention, convention) {
            (Convention::PerPart, Convention::PairSum) => 2.0 * self.energy,
            (Convention::PairSum, Convention::PerPart) => self.energy / 2.0,
            _ => self.energy,
        };
        Self {
            energy,
            convention,
            ..*self
        }
    }
}
