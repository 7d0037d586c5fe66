//! Implementations of the subcommands: each one validates its inputs,
//! computes, and returns a table plus a process exit code.

use levden_core::asymptotics::{
    bethe_entropy, corrected_entropy_nu1, erdos_lehner_ratio, finite_size_factor, hardy_ramanujan,
    maxwell_boltzmann_log_density, sommerfeld_leading,
};
use levden_core::partition::{
    exact_mb_density, ground_state_energy, ln_count, unrestricted_partition_counts_upto,
    PartitionTable, SpectrumSpec, Statistics,
};
use levden_core::specfun::{polylog_inversion, polylog_quadrature, polylog_series};
use levden_core::thermo::{
    smooth_ground_state_energy, solve_saddle_with, GasParameters, SaddleResult, SolveOptions,
    ThermoError,
};

use crate::output::{float_cell, Table};
use crate::{ExactArgs, FigureArgs, PartitionsArgs, Prefactor, SaddleArgs, SweepArgs};

pub enum CliError {
    Usage(String),
    Numeric(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Numeric(m) => m.clone(),
            CliError::Io(e) => e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub struct CommandOutput {
    pub table: Table,
    pub exit_code: i32,
}

fn check_sweep(sweep: &SweepArgs) -> Result<(), CliError> {
    if sweep.q_min > sweep.q_max {
        return Err(CliError::Usage(format!(
            "--q-min {} must not exceed --q-max {}",
            sweep.q_min, sweep.q_max
        )));
    }
    if sweep.q_step == 0 {
        return Err(CliError::Usage("--q-step must be at least 1".into()));
    }
    Ok(())
}

fn check_positive(nu: f64) -> Result<(), CliError> {
    if !nu.is_finite() || nu <= 0.0 {
        return Err(CliError::Usage(format!("--nu must be > 0, got {nu}")));
    }
    Ok(())
}

/// ln of the classical closed-form density with the chosen fluctuation
/// prefactor, evaluated at energy ~ Q as in the figure.
fn mb_log_with_prefactor(nu: f64, n: f64, q: f64, prefactor: Prefactor) -> f64 {
    let base = maxwell_boltzmann_log_density(nu, n, q);
    let ln_2pi = (2.0 * std::f64::consts::PI).ln();
    match prefactor {
        Prefactor::None => base,
        Prefactor::Fig1 => base - ln_2pi - q.ln(),
        Prefactor::BetaAlpha => base - ln_2pi - 0.5 * (q * q / nu).ln(),
        Prefactor::BetaMu => base - ln_2pi - 0.5 * (nu * n * n).ln(),
    }
}

fn saddle_log_density(r: &SaddleResult, prefactor: Prefactor) -> f64 {
    let ln_2pi = (2.0 * std::f64::consts::PI).ln();
    let beta2 = r.state.beta * r.state.beta;
    match prefactor {
        Prefactor::None => r.entropy,
        Prefactor::BetaMu => r.entropy - ln_2pi - 0.5 * r.hessian_det.ln(),
        Prefactor::BetaAlpha | Prefactor::Fig1 => {
            r.entropy - ln_2pi - 0.5 * (r.hessian_det / beta2).ln()
        }
    }
}

pub fn run_figure(args: &FigureArgs) -> Result<CommandOutput, CliError> {
    check_positive(args.nu)?;
    check_sweep(&args.sweep)?;
    if args.particles == 0 {
        return Err(CliError::Usage("--particles must be at least 1".into()));
    }
    let n = args.particles as f64;
    let params = GasParameters::new(args.nu, n).map_err(|e| CliError::Usage(e.to_string()))?;
    let opts = SolveOptions {
        tol: args.tol,
        ..SolveOptions::default()
    };
    let exact_applicable = args.nu == 1.0;
    let q_max = args.sweep.q_max as usize;

    // exact counts for the whole sweep in one pass (unit spectrum only)
    let exact_tables = if exact_applicable {
        Some((
            PartitionTable::build(q_max, args.particles),
            unrestricted_partition_counts_upto(q_max),
        ))
    } else {
        None
    };

    let mut table = Table::new(vec![
        "q",
        "exact_count",
        "ln_exact",
        "ln_bethe",
        "ln_mb",
        "ln_saddle",
        "f_exact",
        "f_formula",
        "status",
    ]);
    let mut any_failed = false;
    let e0 = smooth_ground_state_energy(&params);
    let mut q = args.sweep.q_min;
    while q <= args.sweep.q_max {
        if q == 0 {
            // no saddle and no asymptotics at zero excitation
            q += args.sweep.q_step;
            continue;
        }
        let qf = q as f64;
        let (exact_count, ln_exact, f_exact) = match &exact_tables {
            Some((restricted, unrestricted)) => {
                let pn = restricted.count(q as usize, args.particles);
                let p = &unrestricted[q as usize];
                (
                    pn.to_string(),
                    float_cell(ln_count(pn)),
                    float_cell((ln_count(pn) - ln_count(p)).exp()),
                )
            }
            None => (String::new(), String::new(), String::new()),
        };
        let (ln_saddle, status) = match solve_saddle_with(&params, e0 + qf, &opts) {
            Ok(r) => (float_cell(saddle_log_density(&r, args.prefactor)), "ok"),
            Err(ThermoError::NoConvergence { best, .. }) => {
                any_failed = true;
                (
                    float_cell(saddle_log_density(&best, args.prefactor)),
                    "no-converge",
                )
            }
            Err(_) => {
                any_failed = true;
                (String::new(), "no-saddle")
            }
        };
        // the degenerate-limit count asymptotic is a unit-spectrum curve,
        // so it accompanies the exact columns
        let ln_bethe = if exact_applicable {
            float_cell(hardy_ramanujan(q))
        } else {
            String::new()
        };
        table.push_row(vec![
            q.to_string(),
            exact_count,
            ln_exact,
            ln_bethe,
            float_cell(mb_log_with_prefactor(args.nu, n, qf, args.prefactor)),
            ln_saddle,
            f_exact,
            float_cell(finite_size_factor(args.nu, n, qf).value),
            status.to_string(),
        ]);
        q += args.sweep.q_step;
    }
    Ok(CommandOutput {
        table,
        exit_code: if any_failed { 3 } else { 0 },
    })
}

pub fn run_partitions(args: &PartitionsArgs) -> Result<CommandOutput, CliError> {
    check_sweep(&args.sweep)?;
    if args.particles == 0 {
        return Err(CliError::Usage("--particles must be at least 1".into()));
    }
    let n_max = args.sweep.q_max as usize;
    let restricted = PartitionTable::build(n_max, args.particles);
    let unrestricted = unrestricted_partition_counts_upto(n_max);
    let mut table = Table::new(vec![
        "n",
        "restricted",
        "unrestricted",
        "ratio_exact",
        "ratio_formula",
        "ln_asymptotic",
    ]);
    let mut n = args.sweep.q_min;
    while n <= args.sweep.q_max {
        let pn = restricted.count(n as usize, args.particles);
        let p = &unrestricted[n as usize];
        let (ratio_formula, ln_asym) = if n >= 1 {
            (
                float_cell(erdos_lehner_ratio(n, args.particles as u64)),
                float_cell(hardy_ramanujan(n)),
            )
        } else {
            (String::new(), String::new())
        };
        table.push_row(vec![
            n.to_string(),
            pn.to_string(),
            p.to_string(),
            float_cell((ln_count(pn) - ln_count(p)).exp()),
            ratio_formula,
            ln_asym,
        ]);
        n += args.sweep.q_step;
    }
    Ok(CommandOutput {
        table,
        exit_code: 0,
    })
}

/// The spectrum exponent k with nu = 1/k, or a usage error.
fn spectrum_exponent(nu: f64) -> Result<u32, CliError> {
    if nu > 0.0 {
        let k = (1.0 / nu).round();
        if k >= 1.0 && (1.0 / nu - k).abs() < 1e-9 {
            return Ok(k as u32);
        }
    }
    Err(CliError::Usage(format!(
        "exact counting needs an integer spectrum, i.e. --nu equal to 1/k \
         for a positive integer k; got {nu}"
    )))
}

pub fn run_exact(args: &ExactArgs) -> Result<CommandOutput, CliError> {
    let k = spectrum_exponent(args.nu)?;
    if args.particles == 0 {
        return Err(CliError::Usage("--particles must be at least 1".into()));
    }
    let stats = match args.stats.as_str() {
        "fermi" => Statistics::Fermi,
        "bose" => Statistics::Bose,
        other => {
            return Err(CliError::Usage(format!(
                "--stats must be fermi or bose, got {other}"
            )))
        }
    };
    let (q_cell, energy) = match (args.q, args.energy) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "pass either --q (excitation) or --energy (raw), not both".into(),
            ))
        }
        (None, None) => return Err(CliError::Usage("pass --q or --energy".into())),
        (Some(q), None) => {
            // ground state from a minimal spectrum covering the particles
            let probe = SpectrumSpec::power_law(k, args.particles + 1);
            let e0 = ground_state_energy(&probe, args.particles, stats)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            (q.to_string(), e0 + q)
        }
        (None, Some(e)) => (String::new(), e),
    };
    // enough levels that the last one exceeds the queried energy
    let len =
        ((energy as f64).powf(1.0 / f64::from(k)).ceil() as usize + 2).max(args.particles + 1);
    let spec = SpectrumSpec::power_law(k, len);
    let count = exact_mb_density(&spec, args.particles, energy, stats)
        .map_err(|e| CliError::Numeric(e.to_string()))?;
    let mut table = Table::new(vec!["statistics", "q", "energy", "count"]);
    table.push_row(vec![
        args.stats.clone(),
        q_cell,
        energy.to_string(),
        count.to_string(),
    ]);
    Ok(CommandOutput {
        table,
        exit_code: 0,
    })
}

pub fn run_saddle(args: &SaddleArgs) -> Result<CommandOutput, CliError> {
    check_positive(args.nu)?;
    if args.particles.is_nan() || args.particles <= 0.0 {
        return Err(CliError::Usage("--particles must be > 0".into()));
    }
    let params =
        GasParameters::new(args.nu, args.particles).map_err(|e| CliError::Usage(e.to_string()))?;
    let e0 = smooth_ground_state_energy(&params);
    let energy = match (args.energy, args.q) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "pass either --energy or --q, not both".into(),
            ))
        }
        (None, None) => return Err(CliError::Usage("pass --energy or --q".into())),
        (Some(e), None) => e,
        (None, Some(q)) => e0 + q,
    };
    if energy.is_nan() || energy <= e0 {
        return Err(CliError::Usage(format!(
            "energy {energy} must exceed the smooth ground-state energy {e0}"
        )));
    }
    let opts = SolveOptions {
        tol: args.tol,
        ..SolveOptions::default()
    };
    let (r, status, code) = match solve_saddle_with(&params, energy, &opts) {
        Ok(r) => (r, "ok", 0),
        Err(ThermoError::NoConvergence { best, .. }) => (*best, "no-converge", 3),
        Err(e) => return Err(CliError::Numeric(e.to_string())),
    };
    let mut table = Table::new(vec![
        "nu",
        "particles",
        "energy",
        "q",
        "beta",
        "mu",
        "entropy",
        "hessian_det",
        "ln_density",
        "residual_n",
        "residual_e",
        "status",
    ]);
    table.push_row(vec![
        float_cell(args.nu),
        float_cell(args.particles),
        float_cell(energy),
        float_cell(energy - e0),
        float_cell(r.state.beta),
        float_cell(r.state.mu),
        float_cell(r.entropy),
        float_cell(r.hessian_det),
        float_cell(saddle_log_density(&r, args.prefactor)),
        float_cell(r.residual_n),
        float_cell(r.residual_e),
        status.to_string(),
    ]);
    Ok(CommandOutput {
        table,
        exit_code: code,
    })
}

pub fn run_asymptotic(args: &crate::AsymptoticArgs) -> Result<CommandOutput, CliError> {
    check_positive(args.nu)?;
    check_sweep(&args.sweep)?;
    if args.particles.is_nan() || args.particles <= 0.0 {
        return Err(CliError::Usage("--particles must be > 0".into()));
    }
    let n = args.particles;
    let mut table = Table::new(vec![
        "q",
        "mu0",
        "beta0",
        "entropy_leading",
        "entropy_corrected",
        "f_formula",
        "ln_f_formula",
        "ln_count_asymptotic",
    ]);
    let mut q = args.sweep.q_min.max(1);
    while q <= args.sweep.q_max {
        let qf = q as f64;
        let lead =
            sommerfeld_leading(args.nu, n, qf).map_err(|e| CliError::Numeric(e.to_string()))?;
        let f = finite_size_factor(args.nu, n, qf);
        let corrected = if args.nu == 1.0 {
            float_cell(corrected_entropy_nu1(n, qf))
        } else {
            String::new()
        };
        table.push_row(vec![
            q.to_string(),
            float_cell(lead.mu0),
            float_cell(lead.beta0),
            float_cell(bethe_entropy(args.nu, n, qf)),
            corrected,
            float_cell(f.value),
            float_cell(f.log_value),
            float_cell(hardy_ramanujan(q)),
        ]);
        q += args.sweep.q_step;
    }
    Ok(CommandOutput {
        table,
        exit_code: 0,
    })
}

pub fn run_polylog(args: &crate::PolylogArgs) -> Result<CommandOutput, CliError> {
    check_positive(args.nu)?;
    if !args.a.is_finite() {
        return Err(CliError::Usage("--a must be finite".into()));
    }
    let quad = polylog_quadrature(args.nu, args.a).map_err(|e| CliError::Numeric(e.to_string()))?;
    let series = if args.a <= 0.0 {
        Some(polylog_series(args.nu, -args.a.exp()).map_err(|e| CliError::Numeric(e.to_string()))?)
    } else {
        None
    };
    let inversion = if args.a >= 2.0 {
        Some(polylog_inversion(args.nu, args.a).map_err(|e| CliError::Numeric(e.to_string()))?)
    } else {
        None
    };
    let mut table = Table::new(vec![
        "nu",
        "a",
        "series",
        "series_err",
        "quadrature",
        "quadrature_err",
        "inversion",
        "inversion_err",
        "diff_inversion_quadrature",
    ]);
    let (s_val, s_err) = series
        .map(|s| (float_cell(s.value), float_cell(s.est_error)))
        .unwrap_or_default();
    let (i_val, i_err, diff) = inversion
        .map(|i| {
            (
                float_cell(i.value),
                float_cell(i.est_error),
                float_cell((i.value - quad.value).abs()),
            )
        })
        .unwrap_or_default();
    table.push_row(vec![
        float_cell(args.nu),
        float_cell(args.a),
        s_val,
        s_err,
        float_cell(quad.value),
        float_cell(quad.est_error),
        i_val,
        i_err,
        diff,
    ]);
    Ok(CommandOutput {
        table,
        exit_code: 0,
    })
}
