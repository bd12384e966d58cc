//! Entropy triplets `(H(X1+X2), H(X1+X2|U), H(X1|U))` for binary `X1`, `X2`
//! that are conditionally independent given a finite auxiliary `U`, and the
//! functions used to bound them.

use serde::{Deserialize, Serialize};

use crate::bounds::opt_crossover;
use crate::entropy::{checked_range, checked_unit, entropy_raw, h_inv_raw, h_raw, star_raw, Pmf};
use crate::error::{Error, Result};
use crate::systems::UnionFreeSystem;

/// `P_U` together with `t_u = P(X1 = 1 | U = u)` and `q_u = P(X2 = 1 | U = u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxBinaryJoint {
    u: Pmf,
    t: Vec<f64>,
    q: Vec<f64>,
}

impl AuxBinaryJoint {
    pub fn new(u: Pmf, t: Vec<f64>, q: Vec<f64>) -> Result<Self> {
        let m = u.masses().len();
        if t.len() != m || q.len() != m {
            return Err(Error::InvalidPmf(format!(
                "support has {m} points but {} / {} conditionals",
                t.len(),
                q.len()
            )));
        }
        let t = t
            .into_iter()
            .map(|x| checked_unit(x, "t_u"))
            .collect::<Result<Vec<_>>>()?;
        let q = q
            .into_iter()
            .map(|x| checked_unit(x, "q_u"))
            .collect::<Result<Vec<_>>>()?;
        Ok(AuxBinaryJoint { u, t, q })
    }

    pub fn u_masses(&self) -> &[f64] {
        self.u.masses()
    }

    pub fn t(&self) -> &[f64] {
        &self.t
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    fn iter(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.u
            .masses()
            .iter()
            .zip(&self.t)
            .zip(&self.q)
            .map(|((&w, &t), &q)| (w, t, q))
    }

    /// `P(X1 + X2 = s)` for `s = 0, 1, 2`.
    pub fn sum_marginal(&self) -> [f64; 3] {
        let mut p = [0.0; 3];
        for (w, t, q) in self.iter() {
            p[0] += w * (1.0 - t) * (1.0 - q);
            p[1] += w * star_raw(t, q);
            p[2] += w * t * q;
        }
        p
    }

    /// `P(X1 = 1)`.
    pub fn x1_marginal(&self) -> f64 {
        self.iter().map(|(w, t, _)| w * t).sum()
    }

    /// `P(X2 = 1)`.
    pub fn x2_marginal(&self) -> f64 {
        self.iter().map(|(w, _, q)| w * q).sum()
    }

    /// `η = P(X1 != X2)`.
    pub fn crossover(&self) -> f64 {
        self.sum_marginal()[1]
    }

    /// `[P(0,0), P(0,1), P(1,0), P(1,1)]` for `(X1, X2)`.
    pub fn pair_marginal(&self) -> [f64; 4] {
        let mut p = [0.0; 4];
        for (w, t, q) in self.iter() {
            p[0] += w * (1.0 - t) * (1.0 - q);
            p[1] += w * (1.0 - t) * q;
            p[2] += w * t * (1.0 - q);
            p[3] += w * t * q;
        }
        p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyTriplet {
    /// `H(X1 + X2)`
    pub hs: f64,
    /// `H(X1 + X2 | U)`
    pub hs_cond: f64,
    /// `H(X1 | U)`
    pub h1_cond: f64,
}

pub fn entropy_triplet(d: &AuxBinaryJoint) -> EntropyTriplet {
    let hs = entropy_raw(&d.sum_marginal());
    let mut hs_cond = 0.0;
    let mut h1_cond = 0.0;
    for (w, t, q) in d.iter() {
        hs_cond += w * entropy_raw(&[(1.0 - t) * (1.0 - q), star_raw(t, q), t * q]);
        h1_cond += w * h_raw(t);
    }
    EntropyTriplet {
        hs,
        hs_cond,
        h1_cond,
    }
}

/// `F(y, z) = h(y) + h(z) - (y⋆z) h(y(1-z) / (y⋆z))`, the conditional
/// entropy of `X1 + X2` when `P(X1 = 0) = y` and `P(X2 = 0) = z`.
pub fn f_sum_entropy(y: f64, z: f64) -> Result<f64> {
    let y = checked_unit(y, "y")?;
    let z = checked_unit(z, "z")?;
    Ok(f_raw(y, z))
}

pub(crate) fn f_raw(y: f64, z: f64) -> f64 {
    let s = star_raw(y, z);
    let mix = if s <= 0.0 {
        0.0
    } else {
        s * h_raw(y * (1.0 - z) / s)
    };
    h_raw(y) + h_raw(z) - mix
}

/// `G(y) = h(sqrt(y) + 1/2) + y` on `[0, 1/4]`.
pub fn g_fn(y: f64) -> Result<f64> {
    let y = checked_range(y, 0.0, 0.25, "y")?;
    Ok(g_raw(y))
}

fn g_raw(y: f64) -> f64 {
    h_raw(y.max(0.0).sqrt() + 0.5) + y
}

/// `Q(y) = h(1/2 - sqrt(y))` on `[0, 1/4]`.
pub fn q_fn(y: f64) -> Result<f64> {
    let y = checked_range(y, 0.0, 0.25, "y")?;
    Ok(h_raw(0.5 - y.sqrt()))
}

/// Doubles the support of `U`: each `u` gets a mirror `-u` of equal weight
/// with `t` and `q` replaced by `1 - t` and `1 - q`. Conditional entropies and
/// `P(X1 != X2)` are unchanged, `H(X1 + X2)` does not decrease, and the
/// resulting `(X1, X2)` is a doubly symmetric binary source.
pub fn symmetrize(d: &AuxBinaryJoint) -> AuxBinaryJoint {
    let half: Vec<f64> = d.u.masses().iter().map(|w| 0.5 * w).collect();
    let masses = half.iter().chain(&half).copied().collect();
    let t =
        d.t.iter()
            .copied()
            .chain(d.t.iter().map(|x| 1.0 - x))
            .collect();
    let q =
        d.q.iter()
            .copied()
            .chain(d.q.iter().map(|x| 1.0 - x))
            .collect();
    AuxBinaryJoint {
        u: Pmf::new(masses).expect("halved masses still sum to one"),
        t,
        q,
    }
}

/// `U ~ Bern(1/2)`, `X1 = U ⊕ Z1`, `X2 = U ⊕ Z2` with `Z1, Z2 ~ Bern(p*)`
/// and `p* = (1 - sqrt(1 - 2η)) / 2`, so that `X1 ⊕ X2 ~ Bern(η)`.
pub fn opt_dist(eta: f64) -> Result<AuxBinaryJoint> {
    let eta = checked_range(eta, 0.0, 0.5, "eta")?;
    let p = opt_crossover(eta);
    AuxBinaryJoint::new(
        Pmf::new(vec![0.5, 0.5])?,
        vec![p, 1.0 - p],
        vec![p, 1.0 - p],
    )
}

/// `λ* = max{μ / max E X², 1}`.
pub fn lambda_star(mu: f64, max_ex2: f64) -> Result<f64> {
    if !(mu.is_finite() && mu >= 0.0) {
        return Err(Error::Domain {
            what: "mu",
            value: mu,
        });
    }
    if !(max_ex2.is_finite() && max_ex2 > 0.0) {
        return Err(Error::Domain {
            what: "max E X^2",
            value: max_ex2,
        });
    }
    Ok((mu / max_ex2).max(1.0))
}

/// Lower bound `((1 + λ)² / λ) μ` on `E(X + Y)²` given `E XY = μ`.
pub fn second_moment_floor(mu: f64, lambda: f64) -> f64 {
    (1.0 + lambda).powi(2) / lambda * mu
}

/// Largest `E X²` for zero-mean `X` on `[-1/2, 1/2]` with
/// `E h(X + 1/2) >= ρ`: `(1/2 - h⁻¹(ρ))²`.
pub fn max_second_moment(rho: f64) -> Result<f64> {
    let rho = checked_unit(rho, "rho")?;
    Ok((0.5 - h_inv_raw(rho)).powi(2))
}

/// Evaluates the conditional sum-entropy cap through the chain
/// `E(a+b)² -> E θ² -> -1/2 + 2 G(E θ²)` with `λ*` taken from the
/// second-moment ceiling. Equals `J(h⁻¹(r1), η)`.
pub fn entropy_bound_j(r1: f64, eta: f64) -> Result<f64> {
    let r1 = checked_unit(r1, "r1")?;
    let eta = checked_range(eta, 0.0, 0.5, "eta")?;
    let p = h_inv_raw(r1);
    if eta < p - 1e-12 {
        return Err(Error::InfeasibleEta { eta, threshold: p });
    }
    // E āb̄ for the centered a = P(X1 = 0 | U), b = P(X2 = 0 | U)
    let mu = 0.25 - 0.5 * eta;
    let ceiling = (0.5 - p).powi(2);
    let lambda = if ceiling <= 0.0 {
        // r1 = 1 forces η = 1/2 and μ = 0; the λ = 1 floor is the only one
        1.0
    } else {
        lambda_star(mu, ceiling)?
    };
    let sum_sq = 1.0 + second_moment_floor(mu, lambda);
    let theta_sq = (0.25 * (sum_sq - 1.0)).clamp(0.0, 0.25);
    Ok(-0.5 + 2.0 * g_raw(theta_sq))
}

/// The empirical auxiliary distribution of a system: `U = (V, Q)` uniform
/// over pair index and coordinate, with `X1`, `X2` the `Q`-th coordinates of
/// uniformly drawn members of the `V`-th pair.
pub fn empirical_joint(u: &UnionFreeSystem) -> Result<AuxBinaryJoint> {
    let n = u.ground().n() as usize;
    let cells = u.m0() * n;
    let mut t = Vec::with_capacity(cells);
    let mut q = Vec::with_capacity(cells);
    for (a, b) in u.pairs() {
        for coord in 0..n {
            let ones = |f: &crate::families::Family| {
                f.members().iter().filter(|&&m| m >> coord & 1 == 1).count() as f64 / f.len() as f64
            };
            t.push(ones(a));
            q.push(ones(b));
        }
    }
    let w = 1.0 / cells as f64;
    let mut masses = vec![w; cells];
    // absorb rounding so the masses sum to one within tolerance
    let drift = 1.0 - masses.iter().sum::<f64>();
    masses[0] += drift;
    AuxBinaryJoint::new(Pmf::new(masses)?, t, q)
}
