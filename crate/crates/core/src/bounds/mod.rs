//! Analytic upper bounds on admissible rate pairs of multiset-union-free
//! families and on admissible triplets of multiset-union-free systems.
//!
//! * [`simple_bound`]: `R1 + R2 <= 3/2` from subadditivity.
//! * [`weldon_bound`] and [`weldon_nonsystematic_bound`]: shattered-set
//!   counting arguments.
//! * [`ul_bound`]: the Urbanke–Li min–max bound on the sum rate, reported as
//!   the implied `R2` (sum minus `R1`).
//! * [`r_sigma`]: the sum-rate cap `r0 + r1 + r2 <= R_Σ(r0, r1)` for systems.
//! * [`main_bound`]: the soft-shattering bound built on top of [`r_sigma`].
//!
//! Every min or max is evaluated numerically with [`OptimizerConfig`]
//! resolution. Inner maxima are resolved fully before an outer minimum
//! samples them, so an under-resolved inner search can only make a reported
//! upper bound smaller by at most `cfg.tol`, never by a grid spacing.

mod curve;
mod optimize;

pub use curve::{curve, BoundCurve, CurveRow};
pub use optimize::{scalar_maximize, scalar_minimize, Extremum, OptimizerConfig};

pub(crate) use optimize::{try_maximize, try_minimize};

use serde::{Deserialize, Serialize};

use crate::entropy::{checked_range, checked_unit, entropy_raw, h_inv_raw, h_raw, star_raw};
use crate::error::{Error, Result};

const LOG2_3: f64 = 1.584_962_500_721_156_3;

/// An `(R1, R2)` rate pair in bits per element.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePoint {
    pub r1: f64,
    pub r2: f64,
}

impl RatePoint {
    pub fn new(r1: f64, r2: f64) -> Result<Self> {
        Ok(RatePoint {
            r1: checked_unit(r1, "R1")?,
            r2: checked_unit(r2, "R2")?,
        })
    }
}

/// An `(r0, r1, r2)` system rate triple in bits per element.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateTriple {
    pub r0: f64,
    pub r1: f64,
    pub r2: f64,
}

impl RateTriple {
    pub fn new(r0: f64, r1: f64, r2: f64) -> Result<Self> {
        if !(r0.is_finite() && r0 >= 0.0) {
            return Err(Error::Domain {
                what: "r0",
                value: r0,
            });
        }
        Ok(RateTriple {
            r0,
            r1: checked_unit(r1, "r1")?,
            r2: checked_unit(r2, "r2")?,
        })
    }

    pub fn sum(&self) -> f64 {
        self.r0 + self.r1 + self.r2
    }
}

/// `L(η) = h(η) + 1 - η`, the entropy of `X1 + X2` under the doubly
/// symmetric binary source with crossover `η`.
pub fn l_eta(eta: f64) -> Result<f64> {
    let eta = checked_range(eta, 0.0, 0.5, "eta")?;
    Ok(l_raw(eta))
}

#[inline]
fn l_raw(eta: f64) -> f64 {
    h_raw(eta) + 1.0 - eta
}

/// The conditional sum-entropy cap `J(p, η)`.
///
/// For `η >= p⋆p` it equals `2h(p*) - η` with `p* = (1 - sqrt(1 - 2η))/2`;
/// below that threshold the quadratic correction branch applies. `J` is only
/// defined where the branch-two entropy argument stays in `[0, 1]`, which
/// holds for `η >= 2p²` (in particular for every `η >= p`).
pub fn j_bound(p: f64, eta: f64) -> Result<f64> {
    let p = checked_range(p, 0.0, 0.5, "p")?;
    let eta = checked_range(eta, 0.0, 0.5, "eta")?;
    j_raw(p, eta)
}

pub(crate) fn j_raw(p: f64, eta: f64) -> Result<f64> {
    let s = star_raw(p, p);
    if eta >= s {
        return Ok(j_branch_one(eta));
    }
    // 1 - 2(p⋆p) = (1 - 2p)^2 exactly; use the root directly to keep the
    // ratio stable as p approaches 1/2.
    let root = 1.0 - 2.0 * p;
    let excess = 1.0 - eta - s;
    if root <= 0.0 {
        return Err(Error::Domain {
            what: "eta",
            value: eta,
        });
    }
    let ratio = excess / root;
    let arg = 0.5 * (1.0 - ratio);
    if arg < -1e-12 {
        return Err(Error::Domain {
            what: "eta",
            value: eta,
        });
    }
    Ok(2.0 * h_raw(arg.max(0.0)) - 0.5 * (1.0 - ratio * ratio))
}

#[inline]
fn j_branch_one(eta: f64) -> f64 {
    2.0 * h_raw(opt_crossover(eta)) - eta
}

/// `p*` with `p* ⋆ p* = η`, i.e. `(1 - sqrt(1 - 2η)) / 2`.
#[inline]
pub(crate) fn opt_crossover(eta: f64) -> f64 {
    let radicand = (1.0 - 2.0 * eta).max(0.0);
    0.5 * (1.0 - radicand.sqrt())
}

/// `R_Σ(r0, r1) = max_{h⁻¹(r1) <= η <= 1/2} min{L(η), J(h⁻¹(r1), η) + r0}`.
pub fn r_sigma(r0: f64, r1: f64, cfg: &OptimizerConfig) -> Result<f64> {
    if !(r0.is_finite() && r0 >= 0.0) {
        return Err(Error::Domain {
            what: "r0",
            value: r0,
        });
    }
    let r1 = checked_unit(r1, "r1")?;
    r_sigma_at(r0, h_inv_raw(r1), cfg)
}

/// [`r_sigma`] with the crossover floor `p = h⁻¹(r1)` supplied directly.
pub(crate) fn r_sigma_at(r0: f64, p: f64, cfg: &OptimizerConfig) -> Result<f64> {
    let objective = |eta: f64| -> Result<f64> { Ok(l_raw(eta).min(j_raw(p, eta)? + r0)) };
    Ok(try_maximize(objective, p, 0.5, cfg, false)?.val)
}

/// `R2 <= 3/2 - R1`, floored at 0 and capped at 1.
pub fn simple_bound(r1: f64) -> Result<f64> {
    let r1 = checked_unit(r1, "R1")?;
    Ok((1.5 - r1).clamp(0.0, 1.0))
}

/// Weldon's bound for a systematic first family: `R2 <= (1 - R1) log 3`.
pub fn weldon_bound(r1: f64) -> Result<f64> {
    let r1 = checked_unit(r1, "R1")?;
    Ok(((1.0 - r1) * LOG2_3).clamp(0.0, 1.0))
}

/// Weldon's argument combined with the Sauer–Perles–Shelah lemma:
/// `R2 <= (1 - h⁻¹(R1)) log 3`, clamped to `[0, 1]`.
pub fn weldon_nonsystematic_bound(r1: f64) -> Result<f64> {
    Ok(weldon_nonsystematic_unclamped(r1)?.clamp(0.0, 1.0))
}

pub(crate) fn weldon_nonsystematic_unclamped(r1: f64) -> Result<f64> {
    let r1 = checked_unit(r1, "R1")?;
    Ok((1.0 - h_inv_raw(r1)) * LOG2_3)
}

/// `g*(ρ) = max_β H((1-ρ)(1-β), ρ(1-β) + (1-ρ)β, ρβ)`.
pub fn g_star(rho: f64, cfg: &OptimizerConfig) -> Result<f64> {
    let rho = checked_range(rho, 0.0, 0.5, "rho")?;
    g_star_raw(rho, cfg)
}

fn g_star_raw(rho: f64, cfg: &OptimizerConfig) -> Result<f64> {
    let ternary = |beta: f64| {
        entropy_raw(&[
            (1.0 - rho) * (1.0 - beta),
            rho * (1.0 - beta) + (1.0 - rho) * beta,
            rho * beta,
        ])
    };
    Ok(scalar_maximize(ternary, 0.0, 1.0, cfg)?.val)
}

/// `⟨a⟩ = min(a, 1/2)`, additionally floored at 0 so that it is a valid
/// binary-entropy argument for every `κ` in `[0, 1]`.
#[inline]
fn angle(a: f64) -> f64 {
    a.clamp(0.0, 0.5)
}

/// The Urbanke–Li bound on `R1 + R2` for a given `R1`.
pub fn ul_sum_bound(r1: f64, cfg: &OptimizerConfig) -> Result<f64> {
    let r1 = checked_unit(r1, "R1")?;
    let top = 1.0 - h_inv_raw(r1);
    let inner = |rho: f64| -> Result<f64> {
        let g = g_star_raw(rho, cfg)?;
        let h_rho = h_raw(rho);
        let kappa_term = |kappa: f64| {
            let shifted = angle(rho + kappa);
            h_raw(angle(top - kappa)) - h_rho + g.min(shifted + h_raw(shifted))
        };
        Ok(scalar_maximize(kappa_term, 0.0, 1.0, cfg)?.val)
    };
    Ok(try_minimize(inner, 0.0, 0.5, cfg, true)?.val)
}

/// The `R2` implied by the Urbanke–Li sum bound: `ul_sum_bound(R1) - R1`,
/// clamped to `[0, 1]`.
pub fn ul_bound(r1: f64, cfg: &OptimizerConfig) -> Result<f64> {
    Ok((ul_sum_bound(r1, cfg)? - r1).clamp(0.0, 1.0))
}

/// `Γ(R1, α) = h((h⁻¹(R1) - α) / (1 - α))`.
pub fn gamma(r1: f64, alpha: f64) -> Result<f64> {
    let r1 = checked_unit(r1, "R1")?;
    let floor = h_inv_raw(r1);
    let alpha = checked_range(alpha, 0.0, floor, "alpha")?;
    Ok(h_raw(gamma_crossover(floor, alpha)))
}

#[inline]
fn gamma_crossover(floor: f64, alpha: f64) -> f64 {
    ((floor - alpha) / (1.0 - alpha)).max(0.0)
}

/// The objective of [`main_bound`] at a fixed `α`:
/// `(1 - α)(R_Σ(α/(1-α), Γ) - Γ)`.
pub fn main_bound_at(r1: f64, alpha: f64, cfg: &OptimizerConfig) -> Result<f64> {
    let r1 = checked_unit(r1, "R1")?;
    let floor = h_inv_raw(r1);
    let alpha = checked_range(alpha, 0.0, floor, "alpha")?;
    main_objective(floor, alpha, cfg)
}

fn main_objective(floor: f64, alpha: f64, cfg: &OptimizerConfig) -> Result<f64> {
    // h⁻¹(Γ) is the crossover itself; passing it avoids re-inverting h where
    // the inversion is ill-conditioned (Γ near 1).
    let crossover = gamma_crossover(floor, alpha);
    let gamma = h_raw(crossover);
    let r0 = alpha / (1.0 - alpha);
    Ok((1.0 - alpha) * (r_sigma_at(r0, crossover, cfg)? - gamma))
}

/// The main bound on `R2` given `R1`: the minimum over
/// `0 <= α <= h⁻¹(R1)` of [`main_bound_at`], clamped to `[0, 1]`.
pub fn main_bound(r1: f64, cfg: &OptimizerConfig) -> Result<f64> {
    let r1 = checked_unit(r1, "R1")?;
    let floor = h_inv_raw(r1);
    let best = try_minimize(
        |alpha| main_objective(floor, alpha, cfg),
        0.0,
        floor,
        cfg,
        true,
    )?;
    Ok(best.val.clamp(0.0, 1.0))
}
