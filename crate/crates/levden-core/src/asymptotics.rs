//! Closed-form limits of the many-body level density: leading low-
//! temperature (degenerate) expansion, its square-root entropy, the
//! classical high-temperature power law, the partition-number asymptotic,
//! the finite-particle-number suppression of restricted partitions, and
//! the modified-Gumbel finite-size factor that ties them together.

use std::f64::consts::PI;

use thiserror::Error;

use crate::specfun::{cos_pi, gamma_fn, ETA_2};

#[derive(Debug, Error)]
pub enum AsymptoticsError {
    #[error("domain error: {0}")]
    Domain(String),
}

/// Leading-order chemical potential and inverse temperature of the
/// degenerate gas: mu0 = N^{1/nu}, beta0 = nu sqrt(2 eta(2)/Q) N^{(nu-1)/2nu}.
#[derive(Debug, Clone, Copy)]
pub struct SommerfeldLeading {
    pub mu0: f64,
    pub beta0: f64,
}

/// The finite-size factor F(Q, N) and its logarithm.
#[derive(Debug, Clone, Copy)]
pub struct GumbelFactor {
    pub value: f64,
    pub log_value: f64,
}

/// Leading inversion of the degenerate-gas constraints.
pub fn sommerfeld_leading(
    nu: f64,
    n_particles: f64,
    q: f64,
) -> Result<SommerfeldLeading, AsymptoticsError> {
    if nu.is_nan() || nu <= 0.0 || n_particles.is_nan() || n_particles <= 0.0 {
        return Err(AsymptoticsError::Domain(format!(
            "nu and n_particles must be > 0, got {nu}, {n_particles}"
        )));
    }
    if q.is_nan() || q <= 0.0 {
        return Err(AsymptoticsError::Domain(format!("q must be > 0, got {q}")));
    }
    let mu0 = n_particles.powf(1.0 / nu);
    let beta0 = nu * (2.0 * ETA_2 / q).sqrt() * n_particles.powf((nu - 1.0) / (2.0 * nu));
    Ok(SommerfeldLeading { mu0, beta0 })
}

/// Low-temperature entropy 2 sqrt(pi^2 rho(mu0) Q / 6) with the power-law
/// level density at the Fermi point, rho(mu0) = nu N^{(nu-1)/nu}.
/// Returns 0 at q = 0.
pub fn bethe_entropy(nu: f64, n_particles: f64, q: f64) -> f64 {
    assert!(nu > 0.0 && n_particles > 0.0 && q >= 0.0);
    2.0 * (nu * PI * PI * q / 6.0).sqrt() * n_particles.powf((nu - 1.0) / (2.0 * nu))
}

/// ln of the leading partition-number asymptotic
/// p(n) ~ exp(sqrt(2 pi^2 n / 3)) / (sqrt(48) n).
pub fn hardy_ramanujan(n: u64) -> f64 {
    assert!(n >= 1, "hardy_ramanujan requires n >= 1");
    let nf = n as f64;
    (2.0 * PI * PI * nf / 3.0).sqrt() - (48.0f64.sqrt() * nf).ln()
}

/// Finite-particle-number suppression of restricted partition counts,
/// p_N(n)/p(n) ~ exp(-exp(-g)) with
/// g = sqrt(pi^2/(6n)) N + ln(pi^2/(6n))/2.
pub fn erdos_lehner_ratio(n: u64, max_parts: u64) -> f64 {
    assert!(n >= 1, "erdos_lehner_ratio requires n >= 1");
    let nf = n as f64;
    let x = PI * PI / (6.0 * nf);
    let g = x.sqrt() * max_parts as f64 + 0.5 * x.ln();
    (-(-g).exp()).exp()
}

/// ln of the classical (high-temperature) level density
/// [Gamma(nu+1) E^nu / (nu^nu N^{nu+1})]^N e^{(nu+1) N}, without any
/// fluctuation prefactor.
pub fn maxwell_boltzmann_log_density(nu: f64, n_particles: f64, energy: f64) -> f64 {
    assert!(nu > 0.0 && n_particles > 0.0 && energy > 0.0);
    let ln_gamma = gamma_fn(nu + 1.0).expect("nu + 1 > 0").ln();
    n_particles * (ln_gamma + nu * energy.ln() - nu * nu.ln() - (nu + 1.0) * n_particles.ln())
        + (nu + 1.0) * n_particles
}

/// `maxwell_boltzmann_log_density` with the high-temperature fluctuation
/// prefactor 1/(2 pi E) (determinant E^2 in the (beta, beta mu) variables
/// at nu = 1) folded in.
pub fn maxwell_boltzmann_log_density_prefactored(nu: f64, n_particles: f64, energy: f64) -> f64 {
    maxwell_boltzmann_log_density(nu, n_particles, energy) - (2.0 * PI * energy).ln()
}

/// The modified-Gumbel finite-size factor
///
///   F(Q, N) = exp[ cos(pi nu) Gamma(nu+1) beta0^-nu exp(-beta0 mu0) ] .
///
/// Exactly 1 for half-integer nu (the cosine vanishes identically there).
pub fn finite_size_factor(nu: f64, n_particles: f64, q: f64) -> GumbelFactor {
    assert!(q > 0.0, "finite_size_factor requires q > 0");
    let lead = sommerfeld_leading(nu, n_particles, q).expect("validated above");
    let c = cos_pi(nu);
    let log_value = c
        * gamma_fn(nu + 1.0).expect("nu + 1 > 0")
        * lead.beta0.powf(-nu)
        * (-lead.beta0 * lead.mu0).exp();
    GumbelFactor {
        value: log_value.exp(),
        log_value,
    }
}

/// Second-order degenerate-gas entropy for nu = 1:
/// S = 2 sqrt(2 eta(2) Q) - e^{-t}, t = sqrt(2 eta(2)/Q) N + ln sqrt(2 eta(2)/Q).
pub fn corrected_entropy_nu1(n_particles: f64, q: f64) -> f64 {
    assert!(q > 0.0 && n_particles > 0.0);
    let b0 = (2.0 * ETA_2 / q).sqrt();
    let t = b0 * n_particles + b0.ln();
    2.0 * (2.0 * ETA_2 * q).sqrt() - (-t).exp()
}

/// The exponentially corrected (mu, beta) behind `corrected_entropy_nu1`:
///
///   mu   = mu0   - sqrt(Q / 2 eta(2)) e^{-sqrt(2 eta(2)/Q) N}
///   beta = beta0 - [N + sqrt(Q / 2 eta(2))] / (2Q) e^{-sqrt(2 eta(2)/Q) N}
pub fn corrected_state_nu1(n_particles: f64, q: f64) -> (f64, f64) {
    assert!(q > 0.0 && n_particles > 0.0);
    let b0 = (2.0 * ETA_2 / q).sqrt();
    let damp = (-b0 * n_particles).exp();
    let mu = n_particles - (q / (2.0 * ETA_2)).sqrt() * damp;
    let beta = b0 - (n_particles + (q / (2.0 * ETA_2)).sqrt()) / (2.0 * q) * damp;
    (mu, beta)
}
