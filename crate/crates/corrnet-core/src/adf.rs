//! Augmented Dickey-Fuller unit-root test, constant-only specification.
//!
//! Regression: dx[t] = a + g*x[t-1] + sum_i phi_i*dx[t-i] + e[t]. The test
//! statistic is the t-ratio of g; critical values come from the MacKinnon
//! (2010) response-surface approximation for the constant-only case,
//! evaluated at the regression sample size.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdfResult {
    pub statistic: f64,
    pub lag_order: usize,
    /// rows in the test regression: series length - lag - 1
    pub n_obs: usize,
    pub crit_1pct: f64,
    pub crit_5pct: f64,
    pub crit_10pct: f64,
    /// statistic < crit_5pct: the unit root is rejected
    pub reject_5pct: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdfError {
    /// need at least `required` observations for the chosen lag order
    InsufficientSamples { len: usize, required: usize },
    /// regressors are collinear or the series has no variation
    DegenerateSeries,
}

impl fmt::Display for AdfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdfError::InsufficientSamples { len, required } => {
                write!(f, "series of length {len} too short for ADF, need {required}")
            }
            AdfError::DegenerateSeries => {
                write!(f, "ADF regression is singular (constant or collinear series)")
            }
        }
    }
}

impl core::error::Error for AdfError {}

/// Schwert's rule of thumb: floor(12 * (T/100)^(1/4)).
pub fn schwert_lag(t_len: usize) -> usize {
    libm::floor(12.0 * libm::pow(t_len as f64 / 100.0, 0.25)) as usize
}

// MacKinnon (2010), constant, one variable: crit = b[0] + b[1]/T + b[2]/T^2 + b[3]/T^3
const TAU_C_1PCT: [f64; 4] = [-3.43035, -6.5393, -16.786, -79.433];
const TAU_C_5PCT: [f64; 4] = [-2.86154, -2.8903, -4.234, -40.040];
const TAU_C_10PCT: [f64; 4] = [-2.56677, -1.5384, -2.809, 0.0];

fn response_surface(b: &[f64; 4], n_obs: usize) -> f64 {
    let x = 1.0 / n_obs as f64;
    b[0] + x * (b[1] + x * (b[2] + x * b[3]))
}

/// Runs the test with the given lag order, or Schwert's default when `None`.
pub fn adf_test(series: &[f64], lag_order: Option<usize>) -> Result<AdfResult, AdfError> {
    let lag = lag_order.unwrap_or_else(|| schwert_lag(series.len()));
    let k = lag + 2; // intercept + lagged level + lag difference terms
    // `lag + 10` is the documented minimum; the regression additionally needs
    // spare degrees of freedom for the residual variance.
    let required = (lag + 10).max(2 * k + 1);
    if series.len() < required {
        return Err(AdfError::InsufficientSamples { len: series.len(), required });
    }

    let t_len = series.len();
    let n_obs = t_len - 1 - lag;
    let dx: Vec<f64> = series.windows(2).map(|w| w[1] - w[0]).collect();

    // rows t = lag+1 .. t_len-1 (indices into `series`)
    let mut x = Vec::with_capacity(n_obs * k);
    let mut y = Vec::with_capacity(n_obs);
    for t in (lag + 1)..t_len {
        y.push(dx[t - 1]);
        x.push(1.0);
        x.push(series[t - 1]);
        for i in 1..=lag {
            x.push(dx[t - 1 - i]);
        }
    }

    let fit = ols(&x, &y, n_obs, k).ok_or(AdfError::DegenerateSeries)?;
    let statistic = fit.coef[1] / fit.se[1];
    if !statistic.is_finite() {
        return Err(AdfError::DegenerateSeries);
    }
    let crit_1pct = response_surface(&TAU_C_1PCT, n_obs);
    let crit_5pct = response_surface(&TAU_C_5PCT, n_obs);
    let crit_10pct = response_surface(&TAU_C_10PCT, n_obs);
    Ok(AdfResult {
        statistic,
        lag_order: lag,
        n_obs,
        crit_1pct,
        crit_5pct,
        crit_10pct,
        reject_5pct: statistic < crit_5pct,
    })
}

struct OlsFit {
    coef: Vec<f64>,
    se: Vec<f64>,
}

/// Least squares through column-scaled normal equations; `x` is row-major
/// n*k. Returns None when X'X is singular.
fn ols(x: &[f64], y: &[f64], n: usize, k: usize) -> Option<OlsFit> {
    if n <= k {
        return None;
    }
    let mut xtx = vec![0.0; k * k];
    let mut xty = vec![0.0; k];
    for r in 0..n {
        let row = &x[r * k..(r + 1) * k];
        for i in 0..k {
            xty[i] += row[i] * y[r];
            for j in i..k {
                xtx[i * k + j] += row[i] * row[j];
            }
        }
    }
    for i in 0..k {
        for j in 0..i {
            xtx[i * k + j] = xtx[j * k + i];
        }
    }

    // scale to unit diagonal before inverting; ADF mixes O(1) difference
    // columns with O(sqrt(t)) level columns and this keeps the pivots honest
    let mut scale = vec![0.0; k];
    for i in 0..k {
        let d = xtx[i * k + i];
        if !(d > 0.0) {
            return None;
        }
        scale[i] = libm::sqrt(d);
    }
    let mut a = vec![0.0; k * k];
    for i in 0..k {
        for j in 0..k {
            a[i * k + j] = xtx[i * k + j] / (scale[i] * scale[j]);
        }
    }
    let inv = invert(&mut a, k)?;

    let mut coef = vec![0.0; k];
    for i in 0..k {
        let mut acc = 0.0;
        for j in 0..k {
            acc += inv[i * k + j] * xty[j] / scale[j];
        }
        coef[i] = acc / scale[i];
    }

    let mut rss = 0.0;
    for r in 0..n {
        let row = &x[r * k..(r + 1) * k];
        let fitted: f64 = row.iter().zip(&coef).map(|(a, b)| a * b).sum();
        let resid = y[r] - fitted;
        rss += resid * resid;
    }
    let sigma2 = rss / (n - k) as f64;
    let mut se = vec![0.0; k];
    for i in 0..k {
        let v = sigma2 * inv[i * k + i] / (scale[i] * scale[i]);
        if !(v > 0.0) {
            return None;
        }
        se[i] = libm::sqrt(v);
    }
    Some(OlsFit { coef, se })
}

/// Gauss-Jordan inverse with partial pivoting; consumes `a` (k*k row-major).
fn invert(a: &mut [f64], k: usize) -> Option<Vec<f64>> {
    let mut inv = vec![0.0; k * k];
    for i in 0..k {
        inv[i * k + i] = 1.0;
    }
    for col in 0..k {
        let mut pivot = col;
        for r in (col + 1)..k {
            if libm::fabs(a[r * k + col]) > libm::fabs(a[pivot * k + col]) {
                pivot = r;
            }
        }
        if libm::fabs(a[pivot * k + col]) < 1e-12 {
            return None;
        }
        if pivot != col {
            for j in 0..k {
                a.swap(pivot * k + j, col * k + j);
                inv.swap(pivot * k + j, col * k + j);
            }
        }
        let d = a[col * k + col];
        for j in 0..k {
            a[col * k + j] /= d;
            inv[col * k + j] /= d;
        }
        for r in 0..k {
            if r == col {
                continue;
            }
            let f = a[r * k + col];
            if f == 0.0 {
                continue;
            }
            for j in 0..k {
                a[r * k + j] -= f * a[col * k + j];
                inv[r * k + j] -= f * inv[col * k + j];
            }
        }
    }
    Some(inv)
}
