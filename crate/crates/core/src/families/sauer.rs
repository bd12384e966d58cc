//! The soft Sauer–Perles–Shelah bound, its asymptotic corollary, and
//! Hamming balls (the extremal families for both).

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use super::{Family, GroundSet, SubsetsOfSize, MAX_ENUMERATION_N};
use crate::entropy::{checked_range, checked_unit, h_inv_raw, h_raw};
use crate::error::{Error, Result};

/// Ground-set size `n`, forbidden shattered size `d` and multiplicity `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SoftSauerParams {
    pub n: u32,
    pub d: u32,
    pub k: u64,
}

impl SoftSauerParams {
    pub fn new(n: u32, d: u32, k: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGround(0));
        }
        if d == 0 || d > n {
            return Err(Error::Domain {
                what: "d",
                value: d as f64,
            });
        }
        if k == 0 {
            return Err(Error::Domain {
                what: "k",
                value: 0.0,
            });
        }
        Ok(SoftSauerParams { n, d, k })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SoftSauerBound {
    pub t_star: u32,
    pub bound: BigRational,
}

impl SoftSauerBound {
    pub fn approx(&self) -> f64 {
        self.bound.to_f64().unwrap_or(f64::INFINITY)
    }

    /// True iff a family of `size` members respects the bound.
    pub fn admits(&self, size: usize) -> bool {
        BigRational::from_integer(BigInt::from(size)) <= self.bound
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Upper bound on `|F|` for a family whose largest `k`-shattered set has
/// size `d - 1`:
///
/// `Σ_{t=0}^{t*} C(n,t) + C(n,t*) Σ_{t=t*+1}^{n} C(t*,d) / C(t,d)`
///
/// where `t*` is the smallest `t` with `C(n-d, t-d) >= k`, or `n` if none.
/// The head sum includes `t = 0`: starting it at `t = 1` drops the empty
/// set and fails for the power set with `k >= 2`, `d = n`.
pub fn soft_sauer_bound(p: SoftSauerParams) -> SoftSauerBound {
    let SoftSauerParams { n, d, k } = p;
    let k = BigInt::from(k);
    let t_star = (d..=n).find(|&t| binomial(n - d, t - d) >= k).unwrap_or(n);

    let head: BigInt = (0..=t_star).map(|t| binomial(n, t)).sum();
    let c_star = binomial(t_star, d);
    let tail = ((t_star + 1)..=n).fold(BigRational::zero(), |acc, t| {
        acc + BigRational::new(c_star.clone(), binomial(t, d))
    });
    let bound =
        BigRational::from_integer(head) + BigRational::from_integer(binomial(n, t_star)) * tail;
    SoftSauerBound { t_star, bound }
}

/// Guaranteed shattered-set size and multiplicity for a family of size
/// `2^{n(R+ε)}`: a set of `⌈nα⌉` elements that is `⌈2^{nβ}⌉`-shattered with
/// `β = (1-α) h((h⁻¹(R) - α) / (1-α))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShatterGuarantee {
    pub size: u32,
    pub beta: f64,
    pub k: u64,
}

pub fn corollary_shatter_size(rate: f64, alpha: f64, n: u32) -> Result<ShatterGuarantee> {
    let rate = checked_unit(rate, "R")?;
    let floor = h_inv_raw(rate);
    let alpha = checked_range(alpha, 0.0, floor, "alpha")?;
    let beta = if alpha >= floor {
        0.0
    } else {
        (1.0 - alpha) * h_raw((floor - alpha) / (1.0 - alpha))
    };
    let exponent = n as f64 * beta;
    if exponent >= 63.0 {
        return Err(Error::Domain {
            what: "n * beta",
            value: exponent,
        });
    }
    Ok(ShatterGuarantee {
        size: (n as f64 * alpha).ceil() as u32,
        beta,
        k: exponent.exp2().ceil() as u64,
    })
}

/// All subsets of `[n]` with at most `radius` elements.
pub fn hamming_ball(n: u32, radius: u32) -> Result<Family> {
    let ground = GroundSet::new(n)?;
    if n > MAX_ENUMERATION_N {
        return Err(Error::SearchTooLarge(format!(
            "Hamming ball over {n} elements"
        )));
    }
    if radius > n {
        return Err(Error::Domain {
            what: "radius",
            value: radius as f64,
        });
    }
    let members = (0..=radius)
        .flat_map(|t| SubsetsOfSize::new(n, t))
        .collect();
    Family::new(ground, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::binomial_u64;
    use approx::assert_abs_diff_eq;

    fn bound(n: u32, d: u32, k: u64) -> SoftSauerBound {
        soft_sauer_bound(SoftSauerParams::new(n, d, k).unwrap())
    }

    #[test]
    fn small_exact_value() {
        // t* = 2; 1 + 4 + 6 + 6 * (1/3 + 1/6) = 14
        let b = bound(4, 2, 1);
        assert_eq!(b.t_star, 2);
        assert_eq!(b.bound, BigRational::from_integer(BigInt::from(14)));
        assert_eq!(b.approx(), 14.0);
    }

    #[test]
    fn unit_multiplicity_gives_t_star_d() {
        for n in 1..=20 {
            for d in 1..=n {
                assert_eq!(bound(n, d, 1).t_star, d);
            }
        }
    }

    #[test]
    fn full_dimension_is_power_set() {
        for n in 1..=20u32 {
            for k in [1, 2, 7, 1000] {
                let b = bound(n, n, k);
                assert_eq!(b.t_star, n);
                assert_eq!(b.bound, BigRational::from_integer(BigInt::from(1u64 << n)));
            }
        }
    }

    #[test]
    fn unreachable_multiplicity_falls_back_to_n() {
        // C(4, j) never reaches 100
        assert_eq!(bound(6, 2, 100).t_star, 6);
    }

    #[test]
    fn parameter_validation() {
        assert!(SoftSauerParams::new(4, 0, 1).is_err());
        assert!(SoftSauerParams::new(4, 5, 1).is_err());
        assert!(SoftSauerParams::new(4, 2, 0).is_err());
        assert!(SoftSauerParams::new(0, 0, 1).is_err());
    }

    #[test]
    fn big_binomials_match_u64() {
        for n in 0..=60 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), BigInt::from(binomial_u64(n, k)));
            }
        }
    }

    #[test]
    fn corollary_endpoints() {
        let r: f64 = 0.8;
        let g = corollary_shatter_size(r, h_inv_raw(r), 30).unwrap();
        assert_eq!(g.beta, 0.0);
        assert_eq!(g.k, 1);
        let g = corollary_shatter_size(r, 0.0, 30).unwrap();
        assert_eq!(g.size, 0);
        assert_abs_diff_eq!(g.beta, r, epsilon = 1e-12);
        assert_eq!(g.k, (30.0 * g.beta).exp2().ceil() as u64);
        assert!(corollary_shatter_size(r, 0.4, 30).is_err());
    }

    #[test]
    fn corollary_direct_evaluation() {
        let g = corollary_shatter_size(1.0, 0.25, 20).unwrap();
        let beta = 0.75 * h_raw(1.0 / 3.0);
        assert_abs_diff_eq!(g.beta, beta, epsilon = 1e-15);
        assert_eq!(g.size, 5);
        assert_eq!(g.k, (20.0 * beta).exp2().ceil() as u64);
    }

    #[test]
    fn hamming_balls() {
        assert_eq!(hamming_ball(3, 0).unwrap().members(), &[0]);
        assert_eq!(hamming_ball(3, 3).unwrap().len(), 8);
        assert_eq!(hamming_ball(4, 2).unwrap().len(), 11);
        assert!(hamming_ball(3, 4).is_err());
        assert!(hamming_ball(26, 1).is_err());
    }
}
