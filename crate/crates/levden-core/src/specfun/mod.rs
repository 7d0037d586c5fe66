//! Special functions for the grand-canonical thermodynamics: Dirichlet eta,
//! Gamma, and the polylogarithm Li_s(-e^a) evaluated by three independent
//! routes (defining series, Fermi-Dirac quadrature, large-fugacity
//! inversion expansion).

mod eta;
mod gamma;
mod polylog;
mod quad;

pub use eta::{dirichlet_eta, ETA_2};
pub use gamma::{cos_pi, gamma_fn, recip_gamma, sin_pi};
pub use polylog::{polylog_inversion, polylog_series};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecFunError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series did not converge: {0}")]
    Convergence(String),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
}

/// Which evaluation route produced a polylogarithm value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Series,
    Quadrature,
    Inversion,
}

/// A polylogarithm evaluation together with its route and an estimate of
/// the numerical error.
#[derive(Debug, Clone, Copy)]
pub struct PolylogResult {
    pub value: f64,
    pub method: Method,
    pub est_error: f64,
}

/// Li_nu(-e^a) by adaptive quadrature of the Fermi-Dirac integral.
/// Serves as the independent numerical oracle for the other two routes.
/// Absolute accuracy ~1e-12 or better over the working range.
pub fn polylog_quadrature(nu: f64, a: f64) -> Result<PolylogResult, SpecFunError> {
    if !nu.is_finite() || nu <= 0.0 {
        return Err(SpecFunError::Domain(format!(
            "polylog_quadrature requires nu > 0, got {nu}"
        )));
    }
    if !a.is_finite() {
        return Err(SpecFunError::Domain("a must be finite".into()));
    }
    let (value, est_error) = quad::fermi_li_quad(nu, a)?;
    Ok(PolylogResult {
        value,
        method: Method::Quadrature,
        est_error,
    })
}

/// Li_s(-e^a) with the evaluation route picked by regime, for s > -1.
///
/// - closed forms at s = 0 and s = 1;
/// - defining series for a <= -2 (fugacity below e^-2);
/// - terminating inversion expansion for integer s >= 2 with a >= 2;
/// - inversion for non-integer s only once its asymptotic floor is below
///   f64 noise (a >= 35), quadrature otherwise.
///
/// This is the workhorse of the saddle-point solver, where the Jacobian
/// needs orders down to s = nu - 1.
pub fn polylog_auto(s: f64, a: f64) -> Result<f64, SpecFunError> {
    if !a.is_finite() || !s.is_finite() {
        return Err(SpecFunError::Domain(
            "polylog_auto: non-finite input".into(),
        ));
    }
    if s == 0.0 {
        return Ok(-1.0 / (1.0 + (-a).exp()));
    }
    if s == 1.0 {
        return Ok(-(a.max(0.0) + (-a.abs()).exp().ln_1p()));
    }
    if a <= -2.0 {
        return series_sum_checked(s, -a.exp());
    }
    let integer_order = s.fract() == 0.0 && s > 0.0;
    if integer_order && a >= 2.0 {
        return Ok(polylog_inversion(s, a)?.value);
    }
    if !integer_order && a >= 35.0 && s > 0.0 {
        return Ok(polylog_inversion(s, a)?.value);
    }
    Ok(quad::fermi_li_quad(s, a)?.0)
}

fn series_sum_checked(s: f64, x: f64) -> Result<f64, SpecFunError> {
    Ok(polylog::series_sum(s, x)?.0)
}
