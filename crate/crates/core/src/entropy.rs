//! Binary and Shannon entropy in bits, the inverse of the binary entropy on
//! `[0, 1/2]`, and the binary convolution `p ⋆ q`.
//!
//! All logarithms are base 2.

use crate::error::{Error, Result};

/// Inputs this far outside `[0, 1]` are clamped instead of rejected.
pub const CLAMP_SLACK: f64 = 1e-12;

const H_INV_MAX_ITERS: usize = 200;
const H_INV_TOL: f64 = 1e-12;

/// A probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Prob(f64);

impl Prob {
    pub const ZERO: Prob = Prob(0.0);
    pub const HALF: Prob = Prob(0.5);
    pub const ONE: Prob = Prob(1.0);

    /// Validates `value`, clamping float drift of at most [`CLAMP_SLACK`].
    pub fn new(value: f64) -> Result<Self> {
        checked_unit(value, "probability").map(Prob)
    }

    /// Clamps into `[0, 1]` without validation. NaN maps to zero.
    pub(crate) fn clamped(value: f64) -> Self {
        if value.is_nan() {
            Prob(0.0)
        } else {
            Prob(value.clamp(0.0, 1.0))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `1 - p`.
    pub fn complement(self) -> Prob {
        Prob(1.0 - self.0)
    }
}

impl From<Prob> for f64 {
    fn from(p: Prob) -> f64 {
        p.0
    }
}

pub(crate) fn checked_unit(value: f64, what: &'static str) -> Result<f64> {
    checked_range(value, 0.0, 1.0, what)
}

pub(crate) fn checked_range(value: f64, lo: f64, hi: f64, what: &'static str) -> Result<f64> {
    if !value.is_finite() || value < lo - CLAMP_SLACK || value > hi + CLAMP_SLACK {
        return Err(Error::Domain { what, value });
    }
    Ok(value.clamp(lo, hi))
}

/// A finite probability mass function.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    masses: Vec<f64>,
}

impl Pmf {
    pub fn new(masses: Vec<f64>) -> Result<Self> {
        if masses.is_empty() {
            return Err(Error::InvalidPmf("no masses".into()));
        }
        let mut clean = Vec::with_capacity(masses.len());
        for &m in &masses {
            if !m.is_finite() || m < -CLAMP_SLACK {
                return Err(Error::InvalidPmf(format!(
                    "mass {m} is negative or not finite"
                )));
            }
            clean.push(m.max(0.0));
        }
        let total: f64 = clean.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidPmf(format!("masses sum to {total}")));
        }
        Ok(Pmf { masses: clean })
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }
}

/// `-x log2 x` with `0 log 0 = 0`.
#[inline]
pub(crate) fn neg_x_log2(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Binary entropy of a raw value assumed to lie in `[0, 1]`.
#[inline]
pub(crate) fn h_raw(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    neg_x_log2(p) + neg_x_log2(1.0 - p)
}

/// Binary entropy `h(p) = -p log2 p - (1-p) log2 (1-p)`.
pub fn h(p: Prob) -> f64 {
    h_raw(p.0)
}

/// Entropy of a mass vector that is already known to be normalized.
#[inline]
pub(crate) fn entropy_raw(masses: &[f64]) -> f64 {
    masses.iter().map(|&m| neg_x_log2(m)).sum()
}

/// Shannon entropy of `pmf` in bits.
pub fn entropy(pmf: &Pmf) -> f64 {
    entropy_raw(&pmf.masses)
}

/// `p ⋆ q = p(1-q) + q(1-p)`, the probability that independent Bernoulli
/// variables with parameters `p` and `q` differ.
pub fn star(p: Prob, q: Prob) -> Prob {
    Prob::clamped(star_raw(p.0, q.0))
}

#[inline]
pub(crate) fn star_raw(p: f64, q: f64) -> f64 {
    p * (1.0 - q) + q * (1.0 - p)
}

/// Inverse of the binary entropy restricted to `[0, 1/2]`, by bisection.
pub fn h_inv(x: f64) -> Result<Prob> {
    let x = checked_unit(x, "entropy value")?;
    Ok(Prob(h_inv_raw(x)))
}

pub(crate) fn h_inv_raw(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 0.5;
    }
    let (mut lo, mut hi) = (0.0_f64, 0.5_f64);
    for _ in 0..H_INV_MAX_ITERS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = h_raw(mid);
        if v < x {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi && (h_raw(hi) - x).abs() <= H_INV_TOL {
            break;
        }
    }
    if (h_raw(lo) - x).abs() <= (h_raw(hi) - x).abs() {
        lo
    } else {
        hi
    }
}
