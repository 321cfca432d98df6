//! Extremum estimates with certificates and error direction.

use num_complex::Complex64;

/// How a value was obtained; determines how much it can be trusted as an
/// upper or lower bound of the true extremum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Eigenvalue computation; exact to solver tolerance.
    EigenExact,
    /// Grid-plus-refinement sweep over the rotation angle; error below 1e-9.
    ThetaSweep,
    /// Multistart projected gradient on the unit sphere.
    SphereOpt,
    /// Plain random sampling.
    Sampling,
}

impl Method {
    /// Whether values produced this way may be treated as exact in
    /// direction-aware comparisons.
    pub fn is_exact(self) -> bool {
        matches!(self, Method::EigenExact | Method::ThetaSweep)
    }
}

/// A supremum estimate: the value is always attained by the certificate, so
/// it is a certified lower bound of the true supremum.
#[derive(Clone, Debug)]
pub struct SupEstimate {
    pub value: f64,
    /// Unit vector (reduced coordinates) witnessing `value`.
    pub certificate: Option<Vec<Complex64>>,
    pub method: Method,
    /// True when `value` ≤ true sup is certified (always, for attained values).
    pub lower_bound: bool,
    /// Bound on |value − objective(certificate)|.
    pub residual: f64,
}

/// An infimum estimate: the value is attained by the certificate, so it is a
/// certified upper bound of the true infimum.
#[derive(Clone, Debug)]
pub struct InfEstimate {
    pub value: f64,
    pub certificate: Option<Vec<Complex64>>,
    pub method: Method,
    /// True when inf ≤ `value` is certified.
    pub upper_bound: bool,
    pub residual: f64,
}

impl SupEstimate {
    pub fn exact(value: f64, certificate: Option<Vec<Complex64>>, method: Method) -> Self {
        Self { value, certificate, method, lower_bound: true, residual: 1e-12 * (1.0 + value.abs()) }
    }

    /// Rescale by a nonnegative factor (homogeneity dispatch).
    pub fn scaled(mut self, factor: f64) -> Self {
        self.value *= factor;
        self.residual *= factor;
        self
    }
}

impl InfEstimate {
    pub fn exact(value: f64, certificate: Option<Vec<Complex64>>, method: Method) -> Self {
        Self { value, certificate, method, upper_bound: true, residual: 1e-12 * (1.0 + value.abs()) }
    }
}
