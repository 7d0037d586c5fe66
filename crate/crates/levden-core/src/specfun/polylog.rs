//! Polylogarithm Li_s(x) on the real axis: defining series for small |x|,
//! large-fugacity inversion expansion for x = -e^a with a >= 2.

use super::eta::eta_even;
use super::gamma::{cos_pi, recip_gamma};
use super::{Method, PolylogResult, SpecFunError};

/// Absolute truncation target for the series route.
const SERIES_TOL: f64 = 1e-14;

/// Raw defining series sum_{k>=1} x^k / k^s with remainder bounding.
/// Valid for any real s when |x| < 1; for x = -1 it converges when s > 0.
/// Returns (value, remainder bound) or an error if the iteration cap is hit.
pub(crate) fn series_sum(s: f64, x: f64) -> Result<(f64, f64), SpecFunError> {
    if x == 0.0 {
        return Ok((0.0, 0.0));
    }
    const MAX_TERMS: usize = 2_000_000;
    let ax = x.abs();
    let mut xp = 1.0f64;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for k in 1..=MAX_TERMS {
        xp *= x;
        let term = xp * (k as f64).powf(-s);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        // bound on the omitted tail
        let next = ax.powi(k as i32 + 1) * ((k + 1) as f64).powf(-s);
        let bound = if x < 0.0 {
            // alternating: tail bounded by the first omitted term once the
            // term magnitudes decrease (k >= s covers the growth of k^{-s}
            // for negative s)
            if k as f64 >= s.abs() {
                next
            } else {
                f64::INFINITY
            }
        } else {
            next / (1.0 - ax)
        };
        if bound <= SERIES_TOL {
            return Ok((sum, bound));
        }
    }
    Err(SpecFunError::Convergence(format!(
        "series for Li_{s}({x}) did not reach {SERIES_TOL:e} within {MAX_TERMS} terms"
    )))
}

/// Li_nu(x) by direct summation of the defining series.
///
/// Domain: nu > 0 and x in [-1, 0.99]. The negative side extends all the
/// way to -1 (alternating series; at x = -1 exactly, the accelerated
/// alternating sum of the same series is used, i.e. Li_nu(-1) = -eta(nu)).
pub fn polylog_series(nu: f64, x: f64) -> Result<PolylogResult, SpecFunError> {
    if !nu.is_finite() || nu <= 0.0 {
        return Err(SpecFunError::Domain(format!(
            "polylog_series requires nu > 0, got {nu}"
        )));
    }
    if !x.is_finite() || !(-1.0..=0.99).contains(&x) {
        return Err(SpecFunError::Domain(format!(
            "polylog_series requires x in [-1, 0.99], got {x}"
        )));
    }
    if x == -1.0 {
        let v = -super::eta::dirichlet_eta(nu)?;
        return Ok(PolylogResult {
            value: v,
            method: Method::Series,
            est_error: 2e-16 * v.abs().max(1.0),
        });
    }
    let (value, est_error) = series_sum(nu, x)?;
    Ok(PolylogResult {
        value,
        method: Method::Series,
        est_error,
    })
}

/// Inversion (large-fugacity) expansion of Li_nu(-e^a) for a >= 2:
///
///   Li_nu(-z) = -2 sum_n eta(2n) (ln z)^{nu-2n} / Gamma(nu+1-2n)
///               - cos(pi nu) Li_nu(-1/z),  z = e^a.
///
/// For integer nu the sum terminates (1/Gamma vanishes at the poles) and
/// the result is exact; for half-integer nu the reflection term vanishes;
/// otherwise the sum is asymptotic and is truncated at its smallest term,
/// which is reported as `est_error`.
pub fn polylog_inversion(nu: f64, a: f64) -> Result<PolylogResult, SpecFunError> {
    if !nu.is_finite() || nu <= 0.0 {
        return Err(SpecFunError::Domain(format!(
            "polylog_inversion requires nu > 0, got {nu}"
        )));
    }
    if !a.is_finite() || a < 2.0 {
        return Err(SpecFunError::Domain(format!(
            "polylog_inversion requires a >= 2, got {a}"
        )));
    }
    let integer_order = nu.fract() == 0.0;
    // Collect terms first. For integer order the 1/Gamma poles terminate
    // the sum exactly; otherwise it is an asymptotic series and the sum is
    // cut at its globally smallest term.
    let mut terms: Vec<f64> = Vec::new();
    for n in 0..=60u32 {
        let rg = recip_gamma(nu + 1.0 - 2.0 * f64::from(n));
        if rg == 0.0 {
            debug_assert!(integer_order);
            break;
        }
        let term = -2.0 * eta_even(n) * a.powf(nu - 2.0 * f64::from(n)) * rg;
        if !term.is_finite() {
            break;
        }
        terms.push(term);
        if !integer_order && terms.len() >= 3 {
            // far past the smallest term: no point collecting more
            let k = terms.len();
            if terms[k - 1].abs() > 1e3 * terms[k - 2].abs().min(terms[k - 3].abs()) {
                break;
            }
        }
    }
    let (cut, est) = if integer_order {
        (terms.len(), 0.0)
    } else {
        let mut min_ix = 0;
        for (i, t) in terms.iter().enumerate() {
            if t.abs() <= terms[min_ix].abs() {
                min_ix = i;
            }
        }
        let omitted = terms
            .get(min_ix + 1)
            .map_or(terms[min_ix].abs(), |t| t.abs());
        (min_ix + 1, omitted.min(terms[min_ix].abs()))
    };
    let mut sum = 0.0f64;
    for t in &terms[..cut] {
        sum += t;
    }
    let mut value = sum;
    let mut refl_err = 0.0;
    let c = cos_pi(nu);
    if c != 0.0 {
        let refl = series_sum(nu, -(-a).exp())?;
        value -= c * refl.0;
        refl_err = refl.1;
    }
    Ok(PolylogResult {
        value,
        method: Method::Inversion,
        est_error: est.max(refl_err).max(2e-16 * value.abs()),
    })
}
