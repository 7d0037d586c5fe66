//! Adaptive Gauss-Kronrod quadrature and the Fermi-Dirac integral route to
//! the polylogarithm.

use super::gamma::gamma_fn;
use super::SpecFunError;

/// 15-point Kronrod abscissae on [0, 1] side of the symmetric rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

/// Embedded 7-point Gauss weights (odd Kronrod indices).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One Gauss-Kronrod panel: returns (K15 value, |K15 - G7| error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> (f64, f64) {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let mut resk = 0.0;
    let mut resg = 0.0;
    for (i, &x) in XGK.iter().enumerate() {
        let fx = if x == 0.0 {
            f(c)
        } else {
            f(c - h * x) + f(c + h * x)
        };
        resk += WGK[i] * fx;
        if i % 2 == 1 {
            resg += WG[i / 2] * fx;
        }
    }
    (resk * h, ((resk - resg) * h).abs())
}

/// Adaptive bisection to absolute tolerance `tol`. Returns (value, error
/// estimate); errors out if the panel budget is exhausted first.
pub(crate) fn adaptive_gk15<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<(f64, f64), SpecFunError> {
    const MAX_PANELS: usize = 4000;
    let mut stack = vec![(lo, hi, 0u32)];
    let mut total = 0.0;
    let mut comp = 0.0; // Kahan compensation
    let mut err_total = 0.0;
    let mut panels = 0usize;
    let width = hi - lo;
    while let Some((a, b, depth)) = stack.pop() {
        panels += 1;
        if panels > MAX_PANELS {
            return Err(SpecFunError::Quadrature(format!(
                "panel budget exhausted on [{lo}, {hi}]"
            )));
        }
        let (val, err) = gk15(f, a, b);
        let share = tol * ((b - a) / width).max(1e-12);
        if err > share && depth < 60 {
            let m = 0.5 * (a + b);
            stack.push((a, m, depth + 1));
            stack.push((m, b, depth + 1));
        } else {
            let y = val - comp;
            let t = total + y;
            comp = (t - total) - y;
            total = t;
            err_total += err;
        }
    }
    Ok((total, err_total))
}

/// d -> e^d / (1 + e^d)^2, the thermal broadening kernel, evaluated without
/// overflow for any d.
fn fermi_kernel(d: f64) -> f64 {
    let ad = d.abs();
    if ad > 40.0 {
        (-ad).exp()
    } else {
        let e = d.exp();
        e / ((1.0 + e) * (1.0 + e))
    }
}

/// Li_s(-e^a) for s > -1 by quadrature of the occupation-weighted integral
///
///   Li_s(-e^a) = -1/Gamma(s+1) * Int_0^inf t^s e^{t-a}/(e^{t-a}+1)^2 dt .
///
/// The substitution t = u^m (m chosen from s) removes the endpoint
/// singularity, and the range is split at the thermal step t = a.
/// Returns (value, absolute error estimate).
pub(crate) fn fermi_li_quad(s: f64, a: f64) -> Result<(f64, f64), SpecFunError> {
    if s <= -1.0 {
        return Err(SpecFunError::Domain(format!(
            "quadrature route requires order > -1, got {s}"
        )));
    }
    let m = if s >= 1.0 {
        1u32
    } else {
        (2.0 / (s + 1.0)).ceil() as u32
    };
    let mf = f64::from(m);
    // integrand in u after t = u^m
    let g = |u: f64| -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        let t = u.powi(m as i32);
        mf * u.powf(mf * (s + 1.0) - 1.0) * fermi_kernel(t - a)
    };
    let t_end = a.max(0.0) + 60.0 + 5.0 * s.max(1.0);
    let mut cuts_t = vec![0.0];
    if 1.0 < t_end {
        cuts_t.push(1.0);
    }
    if a > 0.0 && a < t_end && (a - 1.0).abs() > 1e-12 {
        cuts_t.push(a);
    }
    cuts_t.push(t_end);
    cuts_t.sort_by(|x, y| x.partial_cmp(y).unwrap());

    let cuts_u: Vec<f64> = cuts_t.iter().map(|t| t.powf(1.0 / mf)).collect();

    // first pass for the magnitude, second pass to tolerance
    let mut rough = 0.0;
    for w in cuts_u.windows(2) {
        rough += gk15(&g, w[0], w[1]).0;
    }
    let tol = (rough.abs() * 5e-15).max(1e-14);

    let mut integral = 0.0;
    let mut err = 0.0;
    for w in cuts_u.windows(2) {
        let (v, e) = adaptive_gk15(&g, w[0], w[1], tol)?;
        integral += v;
        err += e;
    }
    let norm = gamma_fn(s + 1.0)?;
    Ok((-integral / norm, (err + integral.abs() * 1e-15) / norm))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panel_rule_exact_on_cubic() {
        let (v, _) = gk15(&|x: f64| x * x * x + 2.0, 0.0, 2.0);
        assert!((v - 8.0).abs() < 1e-13);
    }

    #[test]
    fn adaptive_handles_known_integral() {
        // Int_0^1 x^{-1/2} dx = 2, integrable endpoint singularity
        let (v, _) = adaptive_gk15(&|x: f64| x.sqrt().recip(), 1e-300, 1.0, 1e-10).unwrap();
        assert!((v - 2.0).abs() < 1e-6, "got {v}");
    }

    #[test]
    fn kernel_stable_far_from_step() {
        assert!(fermi_kernel(800.0) > 0.0 || fermi_kernel(800.0) == 0.0);
        assert!((fermi_kernel(50.0) - (-50.0f64).exp()).abs() < 1e-38);
        assert!((fermi_kernel(0.0) - 0.25).abs() < 1e-16);
    }
}
