//! Floating-point validators.

mod dilog;
mod periods;
mod quad;
pub mod roots;

pub use dilog::{bloch_wigner, figure_eight_volume, five_term_residual, li2, lobachevsky};
pub use periods::{
    contractible_cycle, geometric_leading_order, integrate_path, leading_order, period_checks,
    standard_cycles, unit_branchpoint, volume_path, NumericCurve, PathIntegral, PeriodReport,
    Sheet,
};
pub use quad::gauss_kronrod;

use num_complex::Complex64;

/// Environment variable overriding the working precision in decimal digits.
pub const PRECISION_ENV: &str = "KNOTJET_DIGITS";

/// Working precision, target tolerance and evaluation budget.
///
/// Arithmetic is IEEE double, so `digits` is capped at 16.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct NumericConfig {
    pub digits: u32,
    pub tol: f64,
    pub max_evals: usize,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            digits: 16,
            tol: 1e-12,
            max_evals: 4_000_000,
        }
    }
}

impl NumericConfig {
    /// `tol = 10^{4−digits}`.
    pub fn with_digits(digits: u32) -> Result<Self, NumericError> {
        if !(5..=16).contains(&digits) {
            return Err(NumericError::Config(format!(
                "{digits} digits; double precision supports 5..=16"
            )));
        }
        Ok(NumericConfig {
            digits,
            tol: 10f64.powi(4 - digits as i32),
            ..Default::default()
        })
    }

    pub fn from_env() -> Result<Self, NumericError> {
        match std::env::var(PRECISION_ENV) {
            Ok(s) => Self::with_digits(
                s.trim()
                    .parse()
                    .map_err(|_| NumericError::Config(format!("{PRECISION_ENV}={s}")))?,
            ),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn validate(&self) -> Result<(), NumericError> {
        if self.tol < 10f64.powi(4 - self.digits as i32) {
            return Err(NumericError::Config(format!(
                "tolerance {} below 10^(4−{})",
                self.tol, self.digits
            )));
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum NumericError {
    #[error("singular input: {0}")]
    Singular(String),
    #[error("path runs into a branchpoint near u = {at}; refine the waypoints")]
    BranchPoint { at: Complex64 },
    #[error("quadrature budget of {0} evaluations exhausted")]
    Budget(usize),
    #[error("loop is not closed on the curve")]
    NotClosed,
    #[error("no branchpoint on the unit circle")]
    NoBranchpoint,
    #[error("bad numeric configuration: {0}")]
    Config(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_invariant() {
        assert!(NumericConfig::default().validate().is_ok());
        assert!(NumericConfig::with_digits(12).unwrap().validate().is_ok());
        assert!(NumericConfig::with_digits(30).is_err());
        let bad = NumericConfig {
            tol: 1e-15,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
