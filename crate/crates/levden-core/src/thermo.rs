//! Grand-canonical saddle point for a smooth power-law single-particle
//! spectrum: solves the particle-number and energy constraints for
//! (beta, mu), and evaluates entropy, the saddle Hessian determinant, and
//! the smooth many-body level density.
//!
//! The constraint equations in closed polylogarithm form are
//!
//!   N = -Gamma(nu+1) beta^-nu     Li_nu    (-e^{beta mu})
//!   E = -nu Gamma(nu+1) beta^-(nu+1) Li_{nu+1}(-e^{beta mu})
//!
//! and the entropy at the saddle is S = beta [(1 + 1/nu) E - mu N].

use thiserror::Error;

use crate::specfun::{gamma_fn, polylog_auto, SpecFunError};

const LN_2PI: f64 = 1.837_877_066_409_345_6;

/// Hard ceiling on the inverse temperature before the zero-temperature
/// singular regime is declared.
const BETA_CAP: f64 = 1e6;

#[derive(Debug, Error)]
pub enum ThermoError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("saddle iteration did not converge (best residuals {residual_n:e}, {residual_e:e})")]
    NoConvergence {
        best: Box<SaddleResult>,
        residual_n: f64,
        residual_e: f64,
    },
    #[error("saddle Hessian determinant not positive: {0}")]
    SaddleInvalid(f64),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

/// Power-law gas: single-particle density nu * eps^(nu-1) filled by
/// n_particles particles (real-valued in the smooth theory).
#[derive(Debug, Clone, Copy)]
pub struct GasParameters {
    nu: f64,
    n_particles: f64,
}

impl GasParameters {
    pub fn new(nu: f64, n_particles: f64) -> Result<Self, ThermoError> {
        if !nu.is_finite() || nu <= 0.0 {
            return Err(ThermoError::Domain(format!("nu must be > 0, got {nu}")));
        }
        if !n_particles.is_finite() || n_particles <= 0.0 {
            return Err(ThermoError::Domain(format!(
                "n_particles must be > 0, got {n_particles}"
            )));
        }
        Ok(Self { nu, n_particles })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn n_particles(&self) -> f64 {
        self.n_particles
    }
}

/// Inverse temperature and chemical potential.
#[derive(Debug, Clone, Copy)]
pub struct ThermoState {
    pub beta: f64,
    pub mu: f64,
}

/// Variables in which the density prefactor's Hessian determinant is taken.
///
/// `BetaMu` differentiates the entropy with respect to (beta, mu);
/// `BetaAlpha` uses (beta, alpha = beta mu), the natural conjugates of
/// (E, N), which rescales the determinant by 1/beta^2. The `BetaAlpha`
/// prefactor is the one that reproduces exact state counts (and the
/// classical-limit determinant E^2 at nu = 1); `BetaMu` is kept for
/// comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HessianConvention {
    BetaMu,
    #[default]
    BetaAlpha,
}

/// A converged saddle point.
#[derive(Debug, Clone)]
pub struct SaddleResult {
    pub state: ThermoState,
    /// entropy S at the saddle
    pub entropy: f64,
    /// Hessian determinant in (beta, mu) variables
    pub hessian_det: f64,
    /// ln rho at the saddle with the (beta, alpha) prefactor,
    /// S - ln(2 pi) - ln(D_beta_alpha)/2
    pub log_density: f64,
    pub residual_n: f64,
    pub residual_e: f64,
}

/// Solver knobs. `tol` is the relative residual target per constraint.
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iter: 200,
        }
    }
}

/// Relative residual level at which a saddle still counts as converged.
const ACCEPT_TOL: f64 = 1e-10;

/// N(beta, mu) from the closed polylog form.
pub fn particle_number(params: &GasParameters, state: &ThermoState) -> Result<f64, ThermoError> {
    let g = gamma_fn(params.nu + 1.0)?;
    let li = polylog_auto(params.nu, state.beta * state.mu)?;
    Ok(-g * state.beta.powf(-params.nu) * li)
}

/// E(beta, mu) from the closed polylog form.
pub fn total_energy(params: &GasParameters, state: &ThermoState) -> Result<f64, ThermoError> {
    let g = gamma_fn(params.nu + 1.0)?;
    let li = polylog_auto(params.nu + 1.0, state.beta * state.mu)?;
    Ok(-params.nu * g * state.beta.powf(-params.nu - 1.0) * li)
}

/// (N(beta,mu) - N, E(beta,mu) - E): the two saddle constraints.
pub fn constraint_residuals(
    params: &GasParameters,
    state: &ThermoState,
    energy: f64,
) -> Result<(f64, f64), ThermoError> {
    if state.beta <= 0.0 {
        return Err(ThermoError::Domain(format!(
            "beta must be > 0, got {}",
            state.beta
        )));
    }
    Ok((
        particle_number(params, state)? - params.n_particles,
        total_energy(params, state)? - energy,
    ))
}

/// Grand potential Omega(beta, mu) = -E(beta, mu) / nu.
pub fn grand_potential(params: &GasParameters, state: &ThermoState) -> Result<f64, ThermoError> {
    Ok(-total_energy(params, state)? / params.nu)
}

/// Entropy S = beta [(1 + 1/nu) E - mu N] at fixed external (E, N).
pub fn entropy(params: &GasParameters, state: &ThermoState, energy: f64) -> f64 {
    state.beta * ((1.0 + 1.0 / params.nu) * energy - state.mu * params.n_particles)
}

/// Entropy through the grand potential, S = beta [ -Omega + E - mu N ].
/// Agrees with `entropy` at a converged saddle; used as a consistency
/// check.
pub fn entropy_via_grand_potential(
    params: &GasParameters,
    state: &ThermoState,
    energy: f64,
) -> Result<f64, ThermoError> {
    let omega = grand_potential(params, state)?;
    Ok(state.beta * (-omega + energy - state.mu * params.n_particles))
}

/// Smooth ground-state energy nu N^{(nu+1)/nu} / (nu + 1) of the filled
/// power-law spectrum.
pub fn smooth_ground_state_energy(params: &GasParameters) -> f64 {
    params.nu * params.n_particles.powf((params.nu + 1.0) / params.nu) / (params.nu + 1.0)
}

struct Derivs {
    n_th: f64,
    dn_dbeta: f64,
    dn_dmu: f64,
    de_dbeta: f64,
    de_dmu: f64,
}

/// Closed-form first derivatives of the constraint functions, using
/// d/da Li_s(-e^a) = Li_{s-1}(-e^a).
fn derivs(params: &GasParameters, state: &ThermoState) -> Result<Derivs, ThermoError> {
    let nu = params.nu;
    let g = gamma_fn(nu + 1.0)?;
    let beta = state.beta;
    let mu = state.mu;
    let a = beta * mu;
    let li_m = polylog_auto(nu - 1.0, a)?;
    let li_0 = polylog_auto(nu, a)?;
    let li_p = polylog_auto(nu + 1.0, a)?;
    Ok(Derivs {
        n_th: -g * beta.powf(-nu) * li_0,
        dn_dbeta: g * nu * beta.powf(-nu - 1.0) * li_0 - g * beta.powf(-nu) * mu * li_m,
        dn_dmu: -g * beta.powf(1.0 - nu) * li_m,
        de_dbeta: nu * g * (nu + 1.0) * beta.powf(-nu - 2.0) * li_p
            - nu * g * beta.powf(-nu - 1.0) * mu * li_0,
        de_dmu: -nu * g * beta.powf(-nu) * li_0,
    })
}

/// Hessian determinant of the entropy S(beta, mu) at the given state (not
/// necessarily a saddle), in (beta, mu) variables:
///
///   S_bb = -dE/dbeta + mu dN/dbeta
///   S_bm = -dE/dmu + mu dN/dmu + (N(beta,mu) - N)
///   S_mm = beta dN/dmu
///
/// Errors with `SaddleInvalid` if the determinant is not positive.
pub fn hessian_det(
    params: &GasParameters,
    state: &ThermoState,
    _energy: f64,
) -> Result<f64, ThermoError> {
    let d = hessian_det_signed(params, state)?;
    if !d.is_finite() || d <= 0.0 {
        return Err(ThermoError::SaddleInvalid(d));
    }
    Ok(d)
}

fn hessian_det_signed(params: &GasParameters, state: &ThermoState) -> Result<f64, ThermoError> {
    let dv = derivs(params, state)?;
    let s_bb = -dv.de_dbeta + state.mu * dv.dn_dbeta;
    let s_bm = -dv.de_dmu + state.mu * dv.dn_dmu + (dv.n_th - params.n_particles);
    let s_mm = state.beta * dv.dn_dmu;
    Ok(s_bb * s_mm - s_bm * s_bm)
}

/// Hessian determinant converted to the requested variable convention.
pub fn hessian_det_in(
    params: &GasParameters,
    state: &ThermoState,
    energy: f64,
    convention: HessianConvention,
) -> Result<f64, ThermoError> {
    let d = hessian_det(params, state, energy)?;
    Ok(match convention {
        HessianConvention::BetaMu => d,
        HessianConvention::BetaAlpha => d / (state.beta * state.beta),
    })
}

fn initial_guess(params: &GasParameters, energy: f64, q: f64) -> Result<ThermoState, ThermoError> {
    let nu = params.nu;
    let n = params.n_particles;
    if energy > 10.0 * nu * n {
        // classical regime
        let beta = nu * n / energy;
        let g = gamma_fn(nu + 1.0)?;
        let mu = (beta.powf(nu) * n / g).ln() / beta;
        Ok(ThermoState { beta, mu })
    } else {
        // degenerate regime, leading inversion of the constraints
        let lead = crate::asymptotics::sommerfeld_leading(nu, n, q)
            .map_err(|e| ThermoError::Domain(e.to_string()))?;
        Ok(ThermoState {
            beta: lead.beta0,
            mu: lead.mu0,
        })
    }
}

/// Solve the two constraints for (beta, mu) by damped Newton iteration.
pub fn solve_saddle(params: &GasParameters, energy: f64) -> Result<SaddleResult, ThermoError> {
    solve_saddle_with(params, energy, &SolveOptions::default())
}

/// Like `solve_saddle`, at excitation energy Q above the smooth ground
/// state.
pub fn solve_saddle_excitation(
    params: &GasParameters,
    q: f64,
) -> Result<SaddleResult, ThermoError> {
    solve_saddle(params, smooth_ground_state_energy(params) + q)
}

pub fn solve_saddle_with(
    params: &GasParameters,
    energy: f64,
    opts: &SolveOptions,
) -> Result<SaddleResult, ThermoError> {
    let e0 = smooth_ground_state_energy(params);
    if !energy.is_finite() || energy <= e0 {
        return Err(ThermoError::Domain(format!(
            "energy {energy} must exceed the smooth ground-state energy {e0}"
        )));
    }
    let q = energy - e0;
    let guess = initial_guess(params, energy, q)?;
    if guess.beta > BETA_CAP {
        return Err(ThermoError::Domain(format!(
            "leading-order beta {:.3e} exceeds {BETA_CAP:e}: zero-temperature singular regime",
            guess.beta
        )));
    }

    let first = newton(params, energy, guess, opts);
    let (state, rn, re) = match first {
        Ok(v) => v,
        Err(_) => continuation(params, energy, opts)?,
    };
    let result = assemble(params, &state, energy, rn, re)?;
    let worst = (rn / params.n_particles).abs().max((re / energy).abs());
    if worst <= ACCEPT_TOL {
        Ok(result)
    } else {
        Err(ThermoError::NoConvergence {
            best: Box::new(result),
            residual_n: rn,
            residual_e: re,
        })
    }
}

/// Damped Newton iteration on the scaled residual 2-norm. Returns the
/// converged (state, residuals), or the best iterate as an error payload.
#[allow(clippy::type_complexity)]
fn newton(
    params: &GasParameters,
    energy: f64,
    start: ThermoState,
    opts: &SolveOptions,
) -> Result<(ThermoState, f64, f64), (ThermoState, f64, f64)> {
    let n = params.n_particles;
    let norm = |rn: f64, re: f64| {
        let a = rn / n;
        let b = re / energy;
        (a * a + b * b).sqrt()
    };
    let mut state = start;
    let (mut rn, mut re) = match constraint_residuals(params, &state, energy) {
        Ok(r) => r,
        Err(_) => return Err((state, f64::INFINITY, f64::INFINITY)),
    };
    for _ in 0..opts.max_iter {
        if norm(rn, re) <= opts.tol {
            return Ok((state, rn, re));
        }
        let Ok(dv) = derivs(params, &state) else {
            break;
        };
        let det = dv.dn_dbeta * dv.de_dmu - dv.dn_dmu * dv.de_dbeta;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        // Newton step solving J * delta = -r
        let dbeta = (-rn * dv.de_dmu + re * dv.dn_dmu) / det;
        let dmu = (-re * dv.dn_dbeta + rn * dv.de_dbeta) / det;

        let mut lambda = 1.0f64;
        let mut advanced = false;
        for _ in 0..45 {
            let cand = ThermoState {
                beta: state.beta + lambda * dbeta,
                mu: state.mu + lambda * dmu,
            };
            if cand.beta <= 0.0 || cand.beta > BETA_CAP {
                lambda *= 0.5;
                continue;
            }
            match constraint_residuals(params, &cand, energy) {
                Ok((rn_c, re_c)) if norm(rn_c, re_c) < norm(rn, re) => {
                    state = cand;
                    rn = rn_c;
                    re = re_c;
                    advanced = true;
                    break;
                }
                _ => lambda *= 0.5,
            }
        }
        if !advanced {
            break;
        }
    }
    if norm(rn, re) <= opts.tol {
        Ok((state, rn, re))
    } else {
        Err((state, rn, re))
    }
}

/// Fallback when Newton stalls from the closed-form guess: start deep in
/// the classical regime, where the guess is excellent, and walk the energy
/// down geometrically to the target, reusing each converged state.
#[allow(clippy::type_complexity)]
fn continuation(
    params: &GasParameters,
    energy: f64,
    opts: &SolveOptions,
) -> Result<(ThermoState, f64, f64), ThermoError> {
    let nu = params.nu;
    let n = params.n_particles;
    let e_start = (40.0 * nu * n).max(4.0 * energy);
    let mut state = initial_guess(
        params,
        e_start,
        e_start - smooth_ground_state_energy(params),
    )?;
    let mut e = e_start;
    let mut last = None;
    for _ in 0..400 {
        e = (0.8 * e).max(energy);
        match newton(params, e, state, opts) {
            Ok((s, rn, re)) => {
                state = s;
                last = Some((s, rn, re));
            }
            Err((s, rn, re)) => {
                if e == energy {
                    return Ok((s, rn, re));
                }
                // keep the best iterate as the guess and press on
                state = s;
                last = Some((s, rn, re));
            }
        }
        if e == energy {
            break;
        }
    }
    last.ok_or_else(|| ThermoError::Domain("continuation produced no iterate".into()))
}

fn assemble(
    params: &GasParameters,
    state: &ThermoState,
    energy: f64,
    rn: f64,
    re: f64,
) -> Result<SaddleResult, ThermoError> {
    let s = entropy(params, state, energy);
    let d_bm = hessian_det_signed(params, state)?;
    let d_ba = d_bm / (state.beta * state.beta);
    let log_density = if d_ba > 0.0 {
        s - LN_2PI - 0.5 * d_ba.ln()
    } else {
        f64::NAN
    };
    Ok(SaddleResult {
        state: *state,
        entropy: s,
        hessian_det: d_bm,
        log_density,
        residual_n: rn,
        residual_e: re,
    })
}

/// ln rho_MB(E, N) from the converged saddle:
/// S - ln(2 pi) - ln(D)/2 with D in the chosen variable convention.
pub fn smooth_mb_density(
    params: &GasParameters,
    energy: f64,
    convention: HessianConvention,
) -> Result<f64, ThermoError> {
    let r = solve_saddle(params, energy)?;
    let d = match convention {
        HessianConvention::BetaMu => r.hessian_det,
        HessianConvention::BetaAlpha => r.hessian_det / (r.state.beta * r.state.beta),
    };
    if d <= 0.0 || !d.is_finite() {
        return Err(ThermoError::SaddleInvalid(d));
    }
    Ok(r.entropy - LN_2PI - 0.5 * d.ln())
}

/// `smooth_mb_density` at excitation energy Q above the smooth ground
/// state.
pub fn smooth_mb_density_excitation(
    params: &GasParameters,
    q: f64,
    convention: HessianConvention,
) -> Result<f64, ThermoError> {
    smooth_mb_density(params, smooth_ground_state_energy(params) + q, convention)
}
