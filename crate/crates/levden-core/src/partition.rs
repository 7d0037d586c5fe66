//! Exact arbitrary-precision counting of many-body configurations of a
//! discrete single-particle spectrum, and of the integer partitions they
//! map to.
//!
//! For an equidistant spectrum (unit-spaced levels starting at zero) the
//! number of N-fermion configurations at excitation energy Q equals the
//! number of partitions of Q into at most N parts; the same count holds
//! for bosons. For levels eps_j = j^k the fermionic count at raw energy E
//! is the number of ways to write E as a sum of N k-th powers of distinct
//! nonnegative integers.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PartitionError {
    #[error("spectrum truncated too early: {0}")]
    Truncation(String),
}

/// Occupation statistics of the counted particles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistics {
    /// occupation numbers restricted to {0, 1}
    Fermi,
    /// unrestricted occupation numbers
    Bose,
}

/// A finite, sorted, nonnegative-integer single-particle spectrum.
#[derive(Debug, Clone)]
pub struct SpectrumSpec {
    levels: Vec<u64>,
}

impl SpectrumSpec {
    /// Build from an explicit level list. Levels must be sorted
    /// non-decreasing.
    pub fn from_levels(levels: Vec<u64>) -> Result<Self, PartitionError> {
        if levels.is_empty() {
            return Err(PartitionError::Truncation("empty spectrum".into()));
        }
        if levels.windows(2).any(|w| w[0] > w[1]) {
            return Err(PartitionError::Truncation(
                "levels must be sorted non-decreasing".into(),
            ));
        }
        Ok(Self { levels })
    }

    /// Unit-spaced spectrum eps_j = j, j = 0..len-1.
    pub fn harmonic(len: usize) -> Self {
        Self {
            levels: (0..len as u64).collect(),
        }
    }

    /// Power-law integer spectrum eps_j = j^exponent, j = 0..len-1.
    pub fn power_law(exponent: u32, len: usize) -> Self {
        Self {
            levels: (0..len as u64).map(|j| j.pow(exponent)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn levels(&self) -> &[u64] {
        &self.levels
    }

    pub fn max_level(&self) -> u64 {
        *self.levels.last().expect("spectrum is never empty")
    }

    /// The count at raw energy E is complete only if every level that could
    /// enter a configuration is present, i.e. the last kept level already
    /// exceeds E.
    fn check_covers(&self, energy: u64) -> Result<(), PartitionError> {
        if self.max_level() <= energy {
            return Err(PartitionError::Truncation(format!(
                "largest level {} must exceed queried energy {energy}",
                self.max_level()
            )));
        }
        Ok(())
    }
}

/// Table of restricted partition counts p_k(m) (partitions of m into at
/// most k parts) for m <= max_n, k <= max_parts. Immutable after
/// construction; safe to share across threads.
#[derive(Debug, Clone)]
pub struct PartitionTable {
    max_n: usize,
    max_parts: usize,
    counts: Vec<Vec<BigUint>>,
}

impl PartitionTable {
    /// Fill the table row by row with p_k(m) = p_{k-1}(m) + p_k(m-k).
    pub fn build(max_n: usize, max_parts: usize) -> Self {
        let mut counts = Vec::with_capacity(max_parts + 1);
        let mut row0 = vec![BigUint::zero(); max_n + 1];
        row0[0] = BigUint::one();
        counts.push(row0);
        for k in 1..=max_parts {
            let mut row = counts[k - 1].clone();
            for m in k..=max_n {
                let add = row[m - k].clone();
                row[m] += add;
            }
            counts.push(row);
        }
        Self {
            max_n,
            max_parts,
            counts,
        }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn max_parts(&self) -> usize {
        self.max_parts
    }

    /// p_parts(n). The restriction is inactive for parts >= n, so lookups
    /// clamp to the stored rows once parts >= n.
    ///
    /// Panics if n > max_n or if the clamped row is not stored.
    pub fn count(&self, n: usize, parts: usize) -> &BigUint {
        assert!(n <= self.max_n, "n={n} exceeds table max_n={}", self.max_n);
        let k = parts.min(n);
        assert!(
            k <= self.max_parts,
            "parts={parts} (clamped {k}) exceeds table max_parts={}",
            self.max_parts
        );
        &self.counts[k][n]
    }
}

/// p_max_parts(n): partitions of n into at most max_parts positive parts.
/// Single query with O(n) memory.
pub fn restricted_partition_count(n: usize, max_parts: usize) -> BigUint {
    let mut row = vec![BigUint::zero(); n + 1];
    row[0] = BigUint::one();
    for k in 1..=max_parts.min(n) {
        for m in k..=n {
            let add = row[m - k].clone();
            row[m] += add;
        }
    }
    row[n].clone()
}

/// p(m) for every m <= n, from the same bounded-parts recurrence run to
/// saturation (k up to n).
pub fn unrestricted_partition_counts_upto(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::zero(); n + 1];
    row[0] = BigUint::one();
    for k in 1..=n {
        for m in k..=n {
            let (lo, hi) = row.split_at_mut(m);
            hi[0] += &lo[m - k];
        }
    }
    row
}

/// p(n), the unrestricted partition number.
pub fn unrestricted_partition_count(n: usize) -> BigUint {
    unrestricted_partition_counts_upto(n)
        .pop()
        .expect("nonempty")
}

/// Natural log of a count, exact to ~1 ulp even when the count far
/// exceeds the f64 range.
pub fn ln_count(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("small count fits f64").ln();
    }
    let shift = bits - 53;
    let top = x >> shift;
    top.to_f64().expect("53-bit mantissa").ln() + shift as f64 * std::f64::consts::LN_2
}

/// p(m) for every m <= n via the pentagonal-number recurrence
///
///   p(m) = sum_{k>=1} (-1)^{k+1} [ p(m - k(3k-1)/2) + p(m - k(3k+1)/2) ] .
///
/// Independent of the dynamic-programming route above; used to cross-check
/// it.
pub fn pentagonal_partition_numbers(n: usize) -> Vec<BigUint> {
    let mut p: Vec<BigUint> = Vec::with_capacity(n + 1);
    p.push(BigUint::one());
    for m in 1..=n {
        let mut pos = BigUint::zero();
        let mut neg = BigUint::zero();
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let odd = k % 2 == 1;
            if odd {
                pos += &p[m - g1];
            } else {
                neg += &p[m - g1];
            }
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                if odd {
                    pos += &p[m - g2];
                } else {
                    neg += &p[m - g2];
                }
            }
            k += 1;
        }
        p.push(pos - neg);
    }
    p
}

/// Number of ways to write n as a sum of exactly `parts` values j^power
/// over distinct nonnegative integers j (j = 0 is an admissible summand,
/// mirroring a zero ground level).
pub fn distinct_power_partition_count(n: usize, parts: usize, power: u32) -> BigUint {
    assert!(power >= 1, "power must be a positive integer");
    // 0/1 selection over j = 0, 1, ... while j^power <= n
    let mut dp = vec![vec![BigUint::zero(); n + 1]; parts + 1];
    dp[0][0] = BigUint::one();
    let mut j = 0u64;
    loop {
        let e = match j.checked_pow(power) {
            Some(e) if (e as usize) <= n => e as usize,
            _ => break,
        };
        for p in (0..parts).rev() {
            for m in 0..=(n - e) {
                if !dp[p][m].is_zero() {
                    let add = dp[p][m].clone();
                    dp[p + 1][m + e] += add;
                }
            }
        }
        j += 1;
    }
    dp[parts][n].clone()
}

/// Ground-state energy: fermions fill the lowest levels one each, bosons
/// pile into the lowest level.
pub fn ground_state_energy(
    spec: &SpectrumSpec,
    n_particles: usize,
    stats: Statistics,
) -> Result<u64, PartitionError> {
    match stats {
        Statistics::Fermi => {
            if n_particles > spec.len() {
                return Err(PartitionError::Truncation(format!(
                    "{n_particles} fermions need {n_particles} levels, spectrum has {}",
                    spec.len()
                )));
            }
            Ok(spec.levels()[..n_particles].iter().sum())
        }
        Statistics::Bose => Ok(spec.levels()[0] * n_particles as u64),
    }
}

/// Exact number of occupation configurations with total energy `energy`
/// and particle number `n_particles`.
pub fn exact_mb_density(
    spec: &SpectrumSpec,
    n_particles: usize,
    energy: u64,
    stats: Statistics,
) -> Result<BigUint, PartitionError> {
    spec.check_covers(energy)?;
    if stats == Statistics::Fermi && n_particles > spec.len() {
        return Err(PartitionError::Truncation(format!(
            "{n_particles} fermions need {n_particles} levels, spectrum has {}",
            spec.len()
        )));
    }
    let e_max = energy as usize;
    let mut dp = vec![vec![BigUint::zero(); e_max + 1]; n_particles + 1];
    dp[0][0] = BigUint::one();
    for &level in spec.levels() {
        if level > energy {
            break;
        }
        let e = level as usize;
        match stats {
            Statistics::Fermi => {
                for p in (0..n_particles).rev() {
                    for m in (0..=e_max.saturating_sub(e)).rev() {
                        if !dp[p][m].is_zero() {
                            let add = dp[p][m].clone();
                            dp[p + 1][m + e] += add;
                        }
                    }
                }
            }
            Statistics::Bose => {
                // ascending sweep lets the same level be occupied repeatedly
                for p in 1..=n_particles {
                    for m in e..=e_max {
                        let (lo, hi) = dp.split_at_mut(p);
                        if !lo[p - 1][m - e].is_zero() {
                            hi[0][m] += &lo[p - 1][m - e];
                        }
                    }
                }
            }
        }
    }
    Ok(dp[n_particles][e_max].clone())
}

/// Configuration count at excitation energy Q above the ground state of
/// the given statistics.
pub fn exact_mb_density_excitation(
    spec: &SpectrumSpec,
    n_particles: usize,
    q: u64,
    stats: Statistics,
) -> Result<BigUint, PartitionError> {
    let e0 = ground_state_energy(spec, n_particles, stats)?;
    exact_mb_density(spec, n_particles, e0 + q, stats)
}
