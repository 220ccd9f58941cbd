//! Tagged singular values.
//!
//! Meromorphic quantities (`c`, `c*`, `d`, `b` and friends) are evaluated as
//! `Result<Complex64, Singular>`: a pole is reported as a tagged value naming
//! the factor that blew up, never as a silent NaN or infinity.

use num_complex::Complex64;
use std::fmt;

/// Hyperplane families along which `b/(c c)` may be singular.
///
/// `H1` collects poles of `Gamma(lambda_beta + m_{beta/2}/4 + 1/2)`,
/// `H2` those of `Gamma(lambda_beta + rho_tilde_beta)`, and `Hj` the sine
/// poles at `lambda_j = rho_j + k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    H1,
    H2,
    Hj,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::H1 => write!(f, "H1"),
            FamilyKind::H2 => write!(f, "H2"),
            FamilyKind::Hj => write!(f, "Hj"),
        }
    }
}

/// A pole hit during evaluation, tagged with the offending factor.
#[derive(Debug, Clone, PartialEq)]
pub struct Singular {
    /// Hyperplane family, when the pole belongs to one of the classified
    /// families; `None` for generic Gamma poles (e.g. raw `gamma(z)` calls).
    pub family: Option<(FamilyKind, usize, i64)>,
    /// Human-readable description of the factor that is singular.
    pub detail: String,
}

impl Singular {
    pub fn gamma_pole(z: Complex64) -> Self {
        Singular {
            family: None,
            detail: format!("Gamma pole at z = {z}"),
        }
    }

    pub fn hyperplane(kind: FamilyKind, index: usize, k: i64, detail: impl Into<String>) -> Self {
        Singular {
            family: Some((kind, index, k)),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Singular {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Some((kind, idx, k)) => write!(f, "{} (family {kind}[{idx}], k = {k})", self.detail),
            None => write!(f, "{}", self.detail),
        }
    }
}

impl std::error::Error for Singular {}

/// Result of evaluating a meromorphic function at a point.
pub type EvalResult = Result<Complex64, Singular>;
