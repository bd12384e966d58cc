//! Scalar maximization on a closed interval: a dense uniform grid followed
//! by golden-section refinement around the three best grid points.
//!
//! The grid guards against multimodality and kinks (most objectives here are
//! pointwise minima of smooth functions); the refinement recovers the digits
//! the grid spacing cannot resolve.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const CANDIDATES: usize = 3;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Resolution of every grid-plus-refinement search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub grid_points: usize,
    pub refine_iters: usize,
    pub tol: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            grid_points: 4096,
            refine_iters: 64,
            tol: 1e-7,
        }
    }
}

impl OptimizerConfig {
    pub const MIN_GRID_POINTS: usize = 64;

    pub fn validate(&self) -> Result<()> {
        if self.grid_points < Self::MIN_GRID_POINTS {
            return Err(Error::Domain {
                what: "grid_points",
                value: self.grid_points as f64,
            });
        }
        if self.refine_iters == 0 {
            return Err(Error::Domain {
                what: "refine_iters",
                value: 0.0,
            });
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Domain {
                what: "tol",
                value: self.tol,
            });
        }
        Ok(())
    }
}

/// Location and value of an extremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub arg: f64,
    pub val: f64,
}

/// Maximizes `f` over `[lo, hi]`.
pub fn scalar_maximize<F>(f: F, lo: f64, hi: f64, cfg: &OptimizerConfig) -> Result<Extremum>
where
    F: Fn(f64) -> f64 + Sync,
{
    try_maximize(|x| Ok(f(x)), lo, hi, cfg, false)
}

/// Minimizes `f` over `[lo, hi]`.
pub fn scalar_minimize<F>(f: F, lo: f64, hi: f64, cfg: &OptimizerConfig) -> Result<Extremum>
where
    F: Fn(f64) -> f64 + Sync,
{
    try_minimize(|x| Ok(f(x)), lo, hi, cfg, false)
}

pub(crate) fn try_minimize<F>(
    f: F,
    lo: f64,
    hi: f64,
    cfg: &OptimizerConfig,
    parallel: bool,
) -> Result<Extremum>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let m = try_maximize(|x| f(x).map(|v| -v), lo, hi, cfg, parallel)?;
    Ok(Extremum {
        arg: m.arg,
        val: -m.val,
    })
}

/// Fallible-objective maximizer. With `parallel`, grid points are evaluated
/// on the rayon pool; the result does not depend on evaluation order.
pub(crate) fn try_maximize<F>(
    f: F,
    lo: f64,
    hi: f64,
    cfg: &OptimizerConfig,
    parallel: bool,
) -> Result<Extremum>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    cfg.validate()?;
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(Error::Domain {
            what: "interval lower end",
            value: lo,
        });
    }
    let eval = |x: f64| -> Result<f64> {
        let v = f(x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { arg: x })
        }
    };
    if lo == hi {
        return Ok(Extremum {
            arg: lo,
            val: eval(lo)?,
        });
    }

    let n = cfg.grid_points;
    let step = (hi - lo) / (n - 1) as f64;
    let xs: Vec<f64> = (0..n)
        .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
        .collect();
    let ys: Vec<f64> = if parallel {
        xs.par_iter().map(|&x| eval(x)).collect::<Result<_>>()?
    } else {
        xs.iter().map(|&x| eval(x)).collect::<Result<_>>()?
    };

    // Best grid indices, ties broken toward the smaller index.
    let mut order = [usize::MAX; CANDIDATES];
    for i in 0..n {
        let mut j = CANDIDATES;
        while j > 0 && (order[j - 1] == usize::MAX || ys[i] > ys[order[j - 1]]) {
            j -= 1;
        }
        if j < CANDIDATES {
            order.copy_within(j..CANDIDATES - 1, j + 1);
            order[j] = i;
        }
    }

    let mut best = Extremum {
        arg: xs[order[0]],
        val: ys[order[0]],
    };
    for &i in order.iter().filter(|&&i| i != usize::MAX) {
        let a = xs[i.saturating_sub(1)];
        let b = xs[(i + 1).min(n - 1)];
        let cand = golden_section(&eval, a, b, cfg)?;
        if cand.val > best.val {
            best = cand;
        }
    }
    Ok(best)
}

fn golden_section<F>(f: &F, mut a: f64, mut b: f64, cfg: &OptimizerConfig) -> Result<Extremum>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let mut best = if fd > fc {
        Extremum { arg: d, val: fd }
    } else {
        Extremum { arg: c, val: fc }
    };
    for _ in 0..cfg.refine_iters {
        if b - a <= cfg.tol * 1e-3 {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
            if fc > best.val {
                best = Extremum { arg: c, val: fc };
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
            if fd > best.val {
                best = Extremum { arg: d, val: fd };
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::h_raw;
    use approx::assert_abs_diff_eq;

    #[test]
    fn quadratic_peak() {
        let cfg = OptimizerConfig::default();
        let m = scalar_maximize(|x| -(x - 0.3) * (x - 0.3), 0.0, 1.0, &cfg).unwrap();
        assert_abs_diff_eq!(m.arg, 0.3, epsilon = 1e-6);
        assert_abs_diff_eq!(m.val, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn entropy_peak() {
        let cfg = OptimizerConfig::default();
        let m = scalar_maximize(h_raw, 0.0, 1.0, &cfg).unwrap();
        assert_abs_diff_eq!(m.arg, 0.5, epsilon = 1e-6);
        assert_abs_diff_eq!(m.val, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn degenerate_interval() {
        let cfg = OptimizerConfig::default();
        let m = scalar_maximize(|x| x * 2.0, 0.25, 0.25, &cfg).unwrap();
        assert_eq!((m.arg, m.val), (0.25, 0.5));
        assert!(scalar_maximize(|x| x, 1.0, 0.0, &cfg).is_err());
    }

    #[test]
    fn non_finite_values_are_reported() {
        let cfg = OptimizerConfig::default();
        let err = scalar_maximize(|x| 1.0 / x, 0.0, 1.0, &cfg).unwrap_err();
        assert_eq!(err, Error::NonFinite { arg: 0.0 });
    }

    #[test]
    fn kinked_objective() {
        // min of two lines crossing at x = 0.4123
        let cfg = OptimizerConfig::default();
        let f = |x: f64| (2.0 * x).min(0.4123 * 3.0 - x);
        let m = scalar_maximize(f, 0.0, 1.0, &cfg).unwrap();
        assert_abs_diff_eq!(m.arg, 0.4123, epsilon = 1e-7);
        assert_abs_diff_eq!(m.val, 0.8246, epsilon = 1e-7);
    }

    #[test]
    fn minimize_mirrors_maximize() {
        let cfg = OptimizerConfig::default();
        let m = scalar_minimize(|x| (x - 0.7).powi(2) + 1.0, 0.0, 1.0, &cfg).unwrap();
        assert_abs_diff_eq!(m.arg, 0.7, epsilon = 1e-6);
        assert_abs_diff_eq!(m.val, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn config_validation() {
        let mut cfg = OptimizerConfig {
            grid_points: 10,
            ..OptimizerConfig::default()
        };
        assert!(cfg.validate().is_err());
        cfg.grid_points = 64;
        cfg.tol = 0.0;
        assert!(cfg.validate().is_err());
    }
}
