//! Cross-run aggregation: mean, sample standard deviation, extrema and 95%
//! confidence-interval half-widths via the Student t distribution.
//!
//! Quantiles are obtained by numeric inversion of the regularized incomplete
//! beta CDF, so any degrees-of-freedom value is supported without tables.
//! The numerics run in f64 internally regardless of the scalar type `F`; the
//! guaranteed absolute error of [`t_quantile`] is 1e-4 (it is much better in
//! practice).

use thiserror::Error;

use crate::num::Real;

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("need at least 2 values to summarize, got {0}")]
    TooFewValues(usize),
    #[error("degrees of freedom must be at least 1")]
    ZeroDf,
    #[error("probability must lie strictly between 0 and 1")]
    BadProbability,
}

/// Rollup of one observed quantity across replicated runs.
///
/// `std` uses the r-1 divisor; `ci95` is the half-width
/// `t(0.975, count-1) * std / sqrt(count)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary<F> {
    pub count: usize,
    pub mean: F,
    pub std: F,
    pub min: F,
    pub max: F,
    pub ci95: F,
}

/// Summarize one value per run. Requires at least two runs.
///
/// Values are sorted internally, so the result is invariant under input
/// permutation (bit-for-bit, not just approximately).
pub fn summarize_runs<F: Real>(values: &[F]) -> Result<Summary<F>, StatsError> {
    let r = values.len();
    if r < 2 {
        return Err(StatsError::TooFewValues(r));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("summaries reject NaN inputs"));
    let rf = F::from_usize(r).unwrap();
    let mean = sorted.iter().copied().sum::<F>() / rf;
    let var = sorted.iter().map(|&v| (v - mean) * (v - mean)).sum::<F>()
        / F::from_usize(r - 1).unwrap();
    let std = var.sqrt();
    let t: F = t_quantile(r - 1, F::from_f64(0.975).unwrap()).expect("df >= 1 and 0 < p < 1");
    Ok(Summary {
        count: r,
        mean,
        std,
        min: sorted[0],
        max: sorted[r - 1],
        ci95: t * std / rf.sqrt(),
    })
}

/// `p`-quantile of the Student t distribution with `df` degrees of freedom.
pub fn t_quantile<F: Real>(df: usize, p: F) -> Result<F, StatsError> {
    if df < 1 {
        return Err(StatsError::ZeroDf);
    }
    let p = p.to_f64().filter(|p| *p > 0.0 && *p < 1.0).ok_or(StatsError::BadProbability)?;
    Ok(F::from_f64(t_quantile_f64(df as f64, p)).unwrap())
}

/// CDF of the Student t distribution with `df` degrees of freedom.
pub fn t_cdf<F: Real>(t: F, df: usize) -> Result<F, StatsError> {
    if df < 1 {
        return Err(StatsError::ZeroDf);
    }
    let t = t.to_f64().expect("t value convertible to f64");
    Ok(F::from_f64(t_cdf_f64(t, df as f64)).unwrap())
}

fn t_quantile_f64(df: f64, p: f64) -> f64 {
    if p == 0.5 {
        return 0.0;
    }
    if p < 0.5 {
        return -t_quantile_f64(df, 1.0 - p);
    }
    let mut hi = 1.0;
    while t_cdf_f64(hi, df) < p && hi < 1e300 {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if t_cdf_f64(mid, df) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn t_cdf_f64(t: f64, df: f64) -> f64 {
    let tail = 0.5 * betainc_reg(0.5 * df, 0.5, df / (df + t * t));
    if t >= 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

/// Regularized incomplete beta function I_x(a, b).
fn betainc_reg(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front =
        ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let front = ln_front.exp();
    // The continued fraction converges fast only below this pivot; use the
    // symmetry I_x(a,b) = 1 - I_{1-x}(b,a) on the other side.
    if x < (a + 1.0) / (a + b + 2.0) {
        front * betacf(a, b, x) / a
    } else {
        1.0 - front * betacf(b, a, 1.0 - x) / b
    }
}

/// Continued fraction for the incomplete beta, by the modified Lentz method.
fn betacf(a: f64, b: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-15;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=500 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Natural log of the gamma function, Lanczos approximation (g=7, n=9).
fn ln_gamma(x: f64) -> f64 {
    const COEFFS: [f64; 8] = [
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::f64::consts::PI.ln()
            - (std::f64::consts::PI * x).sin().abs().ln()
            - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = 0.99999999999980993;
    for (i, &c) in COEFFS.iter().enumerate() {
        acc += c / (x + (i + 1) as f64);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}
