//! Seeded randomized and exhaustive checks of the supporting lemmas.
//!
//! Every check draws from its own ChaCha stream derived from the suite seed
//! and the check name, so reports do not depend on execution order.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use num::{BigInt, BigRational, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{j_bound, l_eta, opt_crossover, r_sigma, OptimizerConfig};
use crate::distributions::{
    empirical_joint, entropy_bound_j, entropy_triplet, f_raw, g_fn, opt_dist, q_fn, symmetrize,
    AuxBinaryJoint,
};
use crate::entropy::{entropy_raw, h_inv_raw, h_raw, star_raw, Pmf};
use crate::error::{Error, Result};
use crate::families::{
    exhaustive_pair_search, hamming_ball, is_k_shattered, is_monotone, is_multiset_union_free,
    max_k_shattered, shift_monotonize, soft_sauer_bound, ternary_sum, Family, GroundSet,
    SoftSauerParams,
};
use crate::systems::{
    derive_system, is_valid_system, log3_construction, system_rates, UnionFreeSystem,
};

pub const DEFAULT_SEED: u64 = 20_240_517;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Entropy,
    Families,
    Systems,
    Distributions,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "entropy" => Ok(Suite::Entropy),
            "families" => Ok(Suite::Families),
            "systems" => Ok(Suite::Systems),
            "distributions" => Ok(Suite::Distributions),
            "all" => Ok(Suite::All),
            other => Err(Error::Parse {
                line: 0,
                msg: format!("unknown suite {other:?}"),
            }),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Entropy => "entropy",
            Suite::Families => "families",
            Suite::Systems => "systems",
            Suite::Distributions => "distributions",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

/// Outcome of one check. `max_violation` is the largest amount by which the
/// checked inequality failed (0 when it always held), or the largest
/// absolute error for equalities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub samples: u64,
    pub max_violation: f64,
    pub passed: bool,
}

impl CheckReport {
    fn with_tol(name: &str, samples: u64, max_violation: f64, tol: f64) -> Self {
        CheckReport {
            name: name.to_string(),
            samples,
            max_violation,
            passed: max_violation.is_finite() && max_violation <= tol,
        }
    }

    fn boolean(name: &str, samples: u64, failures: u64) -> Self {
        CheckReport {
            name: name.to_string(),
            samples,
            max_violation: failures as f64,
            passed: failures == 0,
        }
    }

    fn errored(name: &str, err: &Error) -> Self {
        CheckReport {
            name: format!("{name}: {err}"),
            samples: 0,
            max_violation: f64::INFINITY,
            passed: false,
        }
    }
}

type Check = fn(u64) -> CheckReport;

fn checks_for(suite: Suite) -> Vec<Check> {
    let entropy: Vec<Check> = vec![
        |s| h_symmetry(s, 10_000),
        |s| h_inv_roundtrip(s, 10_000),
        |s| grouping_rule(s, 10_000),
        |s| star_algebra(s, 10_000),
        |_| r_sigma_without_common_rate(),
    ];
    let families: Vec<Check> = vec![
        |s| soft_sauer_soundness(s, 10_000),
        |_| hamming_ball_soundness(12),
        |_| hamming_ball_tightness(12),
        |s| shifting_suite(s, 1_000),
        |s| union_free_symmetry(s, 1_000),
    ];
    let systems: Vec<Check> = vec![
        |_| log3_rates(),
        |_| pair_search_ground_truth(3),
        |_| derived_systems_valid(3),
        |_| region_soundness(3),
    ];
    let distributions: Vec<Check> = vec![
        |s| f_concavity(s, 10_000),
        |_| g_shape(1_000),
        |_| q_shape(1_000),
        |_| second_moment_tightness(100),
        |s| second_moment_ceiling(s, 1_000),
        |s| crossover_floor(s, 1_000),
        |s| opt_dist_attains_j(s, 100),
        |s| symmetrize_properties(s, 1_000),
        |_| entropy_chain_matches_j(50),
    ];
    match suite {
        Suite::Entropy => entropy,
        Suite::Families => families,
        Suite::Systems => systems,
        Suite::Distributions => distributions,
        Suite::All => [entropy, families, systems, distributions].concat(),
    }
}

/// Runs every check of `suite`. Order of the reports is fixed.
pub fn run_suite(suite: Suite, seed: u64) -> Vec<CheckReport> {
    checks_for(suite)
        .par_iter()
        .map(|check| check(seed))
        .collect()
}

fn rng_for(seed: u64, name: &str) -> ChaCha8Rng {
    // FNV-1a over the name keeps streams independent across checks
    let salt = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    });
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

fn random_family(rng: &mut impl Rng, n: u32) -> Family {
    let density: f64 = rng.gen();
    let mut members: Vec<u64> = (0..1u64 << n).filter(|_| rng.gen_bool(density)).collect();
    if members.is_empty() {
        members.push(rng.gen_range(0..1u64 << n));
    }
    Family::new(GroundSet::new(n).expect("n >= 1"), members).expect("masks in range")
}

fn random_joint(rng: &mut impl Rng) -> AuxBinaryJoint {
    let m = rng.gen_range(1..=4);
    let raw: Vec<f64> = (0..m).map(|_| rng.gen::<f64>() + 1e-3).collect();
    let total: f64 = raw.iter().sum();
    let mut masses: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let drift = 1.0 - masses.iter().sum::<f64>();
    masses[0] += drift;
    let t: Vec<f64> = (0..m).map(|_| rng.gen()).collect();
    let coupled = rng.gen_bool(0.5);
    let q = t
        .iter()
        .map(|&x| {
            if coupled {
                (x + rng.gen_range(-0.1..0.1)).clamp(0.0, 1.0)
            } else {
                rng.gen()
            }
        })
        .collect();
    AuxBinaryJoint::new(Pmf::new(masses).expect("normalized"), t, q).expect("valid conditionals")
}

pub fn h_symmetry(seed: u64, samples: u64) -> CheckReport {
    let name = "entropy/h_symmetry";
    let mut rng = rng_for(seed, name);
    let worst = (0..samples)
        .map(|_| {
            let p: f64 = rng.gen();
            (h_raw(p) - h_raw(1.0 - p)).abs()
        })
        .fold(0.0, f64::max);
    CheckReport::with_tol(name, samples, worst, 1e-12)
}

pub fn h_inv_roundtrip(seed: u64, samples: u64) -> CheckReport {
    let name = "entropy/h_inv_roundtrip";
    let mut rng = rng_for(seed, name);
    let worst = (0..samples)
        .map(|_| {
            let x: f64 = rng.gen();
            (h_raw(h_inv_raw(x)) - x).abs()
        })
        .fold(0.0, f64::max);
    CheckReport::with_tol(name, samples, worst, 1e-10)
}

pub fn grouping_rule(seed: u64, samples: u64) -> CheckReport {
    let name = "entropy/grouping_rule";
    let mut rng = rng_for(seed, name);
    let worst = (0..samples)
        .map(|_| {
            let (a, b): (f64, f64) = (rng.gen(), rng.gen());
            let p = [a * b, a * (1.0 - b), 1.0 - a];
            (entropy_raw(&p) - (h_raw(a) + a * h_raw(b))).abs()
        })
        .fold(0.0, f64::max);
    CheckReport::with_tol(name, samples, worst, 1e-12)
}

pub fn star_algebra(seed: u64, samples: u64) -> CheckReport {
    let name = "entropy/star_algebra";
    let mut rng = rng_for(seed, name);
    let worst = (0..samples)
        .map(|_| {
            let (p, q, r): (f64, f64, f64) = (rng.gen(), rng.gen(), rng.gen());
            let comm = (star_raw(p, q) - star_raw(q, p)).abs();
            let assoc = (star_raw(star_raw(p, q), r) - star_raw(p, star_raw(q, r))).abs();
            comm.max(assoc)
        })
        .fold(0.0, f64::max);
    CheckReport::with_tol(name, samples, worst, 1e-12)
}

pub fn r_sigma_without_common_rate() -> CheckReport {
    let name = "entropy/r_sigma_zero_r0";
    let cfg = OptimizerConfig::default();
    let points = [0.0, 0.25, 0.5, 0.75, 1.0];
    let mut worst: f64 = 0.0;
    for r1 in points {
        match r_sigma(0.0, r1, &cfg) {
            Ok(v) => worst = worst.max((v - 1.5).abs()),
            Err(e) => return CheckReport::errored(name, &e),
        }
    }
    CheckReport::with_tol(name, points.len() as u64, worst, 1e-5)
}

/// Random families with `n <= 12`: the largest `k`-shattered size `d - 1`
/// never lets `|f|` exceed the soft Sauer bound for `d`, `k ∈ {1, 2, 4}`.
pub fn soft_sauer_soundness(seed: u64, samples: u64) -> CheckReport {
    let name = "families/soft_sauer_soundness";
    let mut rng = rng_for(seed, name);
    let fams: Vec<Family> = (0..samples)
        .map(|_| {
            let n = rng.gen_range(1..=12);
            random_family(&mut rng, n)
        })
        .collect();
    let outcome: Result<u64> = fams
        .par_iter()
        .map(sauer_violations)
        .try_reduce(|| 0, |a, b| Ok(a + b));
    match outcome {
        Ok(bad) => CheckReport::boolean(name, samples, bad),
        Err(e) => CheckReport::errored(name, &e),
    }
}

fn sauer_violations(f: &Family) -> Result<u64> {
    let n = f.ground().n();
    let mut bad = 0;
    for k in [1u64, 2, 4] {
        let Some(found) = max_k_shattered(f, k as usize, n)? else {
            continue;
        };
        let d = found.size + 1;
        if d > n {
            continue;
        }
        if !soft_sauer_bound(SoftSauerParams::new(n, d, k)?).admits(f.len()) {
            bad += 1;
        }
    }
    Ok(bad)
}

pub fn hamming_ball_soundness(max_n: u32) -> CheckReport {
    let name = "families/hamming_ball_soundness";
    let mut samples = 0;
    let mut bad = 0;
    for n in 1..=max_n {
        for radius in 0..=n {
            let ball = match hamming_ball(n, radius) {
                Ok(b) => b,
                Err(e) => return CheckReport::errored(name, &e),
            };
            samples += 1;
            match sauer_violations(&ball) {
                Ok(v) => bad += v,
                Err(e) => return CheckReport::errored(name, &e),
            }
        }
    }
    CheckReport::boolean(name, samples, bad)
}

/// The soft Sauer bound stays within `(1 + n/d)` of the Hamming ball of
/// radius `t*`, the family it is modeled on. Reports the largest ratio
/// minus the allowed factor.
pub fn hamming_ball_tightness(max_n: u32) -> CheckReport {
    let name = "families/hamming_ball_tightness";
    let mut samples = 0;
    let mut worst = f64::NEG_INFINITY;
    for n in 1..=max_n {
        for d in 1..=n {
            for k in [1u64, 2, 4] {
                let params = match SoftSauerParams::new(n, d, k) {
                    Ok(p) => p,
                    Err(e) => return CheckReport::errored(name, &e),
                };
                let b = soft_sauer_bound(params);
                let ball: BigInt = (0..=b.t_star)
                    .map(|t| crate::families::sauer_binomial(n, t))
                    .sum();
                let factor = BigRational::new(BigInt::from(n + d), BigInt::from(d));
                let limit = factor * BigRational::from_integer(ball);
                let gap = ((b.bound - &limit) / &limit)
                    .to_f64()
                    .unwrap_or(f64::INFINITY);
                worst = worst.max(gap);
                samples += 1;
            }
        }
    }
    // gap <= 0 means the bound is inside the allowed factor
    CheckReport::with_tol(name, samples, worst.max(0.0), 0.0)
}

/// Shifting keeps the size, yields a monotone family, and every set the
/// output `k`-shatters was already `k`-shattered by the input.
pub fn shifting_suite(seed: u64, samples: u64) -> CheckReport {
    let name = "families/shifting";
    let mut rng = rng_for(seed, name);
    let fams: Vec<Family> = (0..samples)
        .map(|_| {
            let n = rng.gen_range(1..=8);
            random_family(&mut rng, n)
        })
        .collect();
    let outcome: Result<u64> = fams
        .par_iter()
        .map(|f| {
            let g = shift_monotonize(f)?;
            let mut bad = u64::from(g.len() != f.len()) + u64::from(!is_monotone(&g));
            for s in 0..=f.ground().full_mask() {
                for k in 1..=4 {
                    if is_k_shattered(&g, s, k) && !is_k_shattered(f, s, k) {
                        bad += 1;
                    }
                }
            }
            Ok(bad)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b));
    match outcome {
        Ok(bad) => CheckReport::boolean(name, samples, bad),
        Err(e) => CheckReport::errored(name, &e),
    }
}

pub fn union_free_symmetry(seed: u64, samples: u64) -> CheckReport {
    let name = "families/union_free_symmetry";
    let mut rng = rng_for(seed, name);
    let mut bad = 0;
    for _ in 0..samples {
        let n = rng.gen_range(1..=5);
        let ground = GroundSet::new(n).expect("n >= 1");
        let pick = |rng: &mut ChaCha8Rng| {
            let size = rng.gen_range(1..=4);
            let mut m: Vec<u64> = (0..size).map(|_| rng.gen_range(0..1u64 << n)).collect();
            m.sort_unstable();
            m.dedup();
            Family::new(ground, m).expect("masks in range")
        };
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        let ab = is_multiset_union_free(&a, &b);
        let ba = is_multiset_union_free(&b, &a);
        let brute = brute_union_free(&a, &b);
        if ab != ba || ab != Ok(brute) {
            bad += 1;
        }
    }
    CheckReport::boolean(name, samples, bad)
}

/// Sum vectors as explicit per-coordinate integers.
fn brute_union_free(a: &Family, b: &Family) -> bool {
    let n = a.ground().n();
    let mut seen = HashSet::new();
    for &x in a.members() {
        for &y in b.members() {
            let v: Vec<u64> = (0..n).map(|i| (x >> i & 1) + (y >> i & 1)).collect();
            if !seen.insert(v) {
                return false;
            }
        }
    }
    true
}

pub fn log3_rates() -> CheckReport {
    let name = "systems/log3_rates";
    let mut bad = 0;
    let mut prev = f64::NEG_INFINITY;
    for n in [3, 6, 9, 12] {
        let u = match log3_construction(n) {
            Ok(u) => u,
            Err(e) => return CheckReport::errored(name, &e),
        };
        if is_valid_system(&u) != Ok(true) {
            bad += 1;
        }
        let sum = system_rates(&u).sum();
        if sum <= prev || sum > 3f64.log2() + 1e-12 {
            bad += 1;
        }
        prev = sum;
    }
    CheckReport::boolean(name, 4, bad)
}

fn optimal_pairs(max_n: u32) -> Result<Vec<(Family, Family, bool)>> {
    (1..=max_n)
        .map(|n| {
            let r = exhaustive_pair_search(n, Duration::from_secs(60))?;
            Ok((r.f1, r.f2, r.exact))
        })
        .collect()
}

/// Exact search for `n <= max_n`; the found pair has all `|f1||f2|` sums
/// distinct and product at most `3^n`.
pub fn pair_search_ground_truth(max_n: u32) -> CheckReport {
    let name = "systems/pair_search_ground_truth";
    let pairs = match optimal_pairs(max_n) {
        Ok(p) => p,
        Err(e) => return CheckReport::errored(name, &e),
    };
    let mut bad = 0;
    for (f1, f2, exact) in &pairs {
        let sums: HashSet<(u64, u64)> = f1
            .members()
            .iter()
            .flat_map(|&a| f2.members().iter().map(move |&c| ternary_sum(a, c)))
            .collect();
        let product = f1.len() * f2.len();
        if !exact || sums.len() != product || product as u64 > 3u64.pow(f1.ground().n()) {
            bad += 1;
        }
    }
    CheckReport::boolean(name, pairs.len() as u64, bad)
}

/// Systems derived from each optimal pair, over every proper `S` and `k`
/// that the first family shatters.
fn derived_systems(max_n: u32) -> Result<Vec<UnionFreeSystem>> {
    let mut out = Vec::new();
    for (f1, f2, _) in optimal_pairs(max_n)? {
        let full = f1.ground().full_mask();
        for s in 0..full {
            for k in 1..=f1.len() {
                if !is_k_shattered(&f1, s, k) {
                    break;
                }
                out.push(derive_system(&f1, &f2, s, k)?.system);
            }
        }
        out.push(UnionFreeSystem::new(f1.ground(), vec![(f1, f2)])?);
    }
    Ok(out)
}

pub fn derived_systems_valid(max_n: u32) -> CheckReport {
    let name = "systems/derived_systems_valid";
    match derived_systems(max_n) {
        Ok(systems) => {
            let bad = systems
                .iter()
                .filter(|u| is_valid_system(u) != Ok(true))
                .count();
            CheckReport::boolean(name, systems.len() as u64, bad as u64)
        }
        Err(e) => CheckReport::errored(name, &e),
    }
}

/// Rates of small valid systems against the entropy triplet of their
/// empirical auxiliary distribution.
pub fn region_soundness(max_n: u32) -> CheckReport {
    let name = "systems/region_soundness";
    let systems = match derived_systems(max_n) {
        Ok(s) => s,
        Err(e) => return CheckReport::errored(name, &e),
    };
    let mut worst: f64 = 0.0;
    for u in &systems {
        let joint = match empirical_joint(u) {
            Ok(j) => j,
            Err(e) => return CheckReport::errored(name, &e),
        };
        let e = entropy_triplet(&joint);
        let r = system_rates(u);
        worst = worst
            .max(r.sum() - e.hs)
            .max(r.r1 + r.r2 - e.hs_cond)
            .max(r.r1 - e.h1_cond);
    }
    CheckReport::with_tol(name, systems.len() as u64, worst, 1e-9)
}

/// `F(w p + (1-w) p') >= w F(p) + (1-w) F(p')` on random pairs.
pub fn f_concavity(seed: u64, samples: u64) -> CheckReport {
    let name = "distributions/f_concavity";
    let mut rng = rng_for(seed, name);
    let worst = (0..samples)
        .map(|_| {
            let (y1, z1, y2, z2, w): (f64, f64, f64, f64, f64) =
                (rng.gen(), rng.gen(), rng.gen(), rng.gen(), rng.gen());
            let mid = f_raw(w * y1 + (1.0 - w) * y2, w * z1 + (1.0 - w) * z2);
            let chord = w * f_raw(y1, z1) + (1.0 - w) * f_raw(y2, z2);
            chord - mid
        })
        .fold(0.0, f64::max);
    CheckReport::with_tol(name, samples, worst, 1e-12)
}

/// Largest second difference and largest increase of `f` on a uniform grid
/// of `[0, 1/4]`.
fn concave_decreasing_violation(f: impl Fn(f64) -> Result<f64>, points: u64) -> Result<f64> {
    let step = 0.25 / (points - 1) as f64;
    let vals = (0..points)
        .map(|i| f((i as f64 * step).min(0.25)))
        .collect::<Result<Vec<_>>>()?;
    let convexity = vals
        .windows(3)
        .map(|w| w[0] + w[2] - 2.0 * w[1])
        .fold(0.0, f64::max);
    let rise = vals.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    Ok(convexity.max(rise))
}

pub fn g_shape(points: u64) -> CheckReport {
    let name = "distributions/g_concave_decreasing";
    match concave_decreasing_violation(g_fn, points) {
        Ok(v) => CheckReport::with_tol(name, points, v, 1e-12),
        Err(e) => CheckReport::errored(name, &e),
    }
}

pub fn q_shape(points: u64) -> CheckReport {
    let name = "distributions/q_concave_decreasing";
    match concave_decreasing_violation(q_fn, points) {
        Ok(v) => CheckReport::with_tol(name, points, v, 1e-12),
        Err(e) => CheckReport::errored(name, &e),
    }
}

/// The uniform two-point law on `±(1/2 - h⁻¹(ρ))` has second moment
/// exactly `(1/2 - h⁻¹(ρ))²` and meets the entropy constraint.
pub fn second_moment_tightness(points: u64) -> CheckReport {
    let name = "distributions/second_moment_tightness";
    let mut worst: f64 = 0.0;
    for i in 0..points {
        let rho = i as f64 / (points - 1) as f64;
        let p = h_inv_raw(rho);
        let x = 0.5 - p;
        let ex2 = 0.5 * x * x + 0.5 * (-x) * (-x);
        let ceiling = (0.5 - p).powi(2);
        let eh = 0.5 * h_raw(x + 0.5) + 0.5 * h_raw(-x + 0.5);
        worst = worst.max((ex2 - ceiling).abs()).max(rho - eh - 1e-10);
    }
    CheckReport::with_tol(name, points, worst, 0.0)
}

/// Random zero-mean laws on `[-1/2, 1/2]` (mixtures of zero-mean two-point
/// laws) never exceed the second-moment ceiling for their own `E h(X+1/2)`.
pub fn second_moment_ceiling(seed: u64, samples: u64) -> CheckReport {
    let name = "distributions/second_moment_ceiling";
    let mut rng = rng_for(seed, name);
    let worst = (0..samples)
        .map(|_| {
            let parts = rng.gen_range(1..=4);
            let mut weights: Vec<f64> = (0..parts).map(|_| rng.gen::<f64>() + 1e-3).collect();
            let total: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= total);
            let (mut ex2, mut eh) = (0.0, 0.0);
            for w in weights {
                let a: f64 = rng.gen_range(0.0..=0.5);
                let b: f64 = rng.gen_range(0.0..=0.5);
                // P(a) = b/(a+b), P(-b) = a/(a+b) has mean zero
                let (pa, pb) = if a + b == 0.0 {
                    (1.0, 0.0)
                } else {
                    (b / (a + b), a / (a + b))
                };
                ex2 += w * (pa * a * a + pb * b * b);
                eh += w * (pa * h_raw(0.5 + a) + pb * h_raw(0.5 - b));
            }
            let rho = eh.clamp(0.0, 1.0);
            ex2 - (0.5 - h_inv_raw(rho)).powi(2)
        })
        .fold(0.0, f64::max);
    CheckReport::with_tol(name, samples, worst, 1e-12)
}

/// Symmetrized random joints satisfy the mean constraints; with
/// `r1 = H(X1|U)` the crossover never drops below `h⁻¹(r1)`.
pub fn crossover_floor(seed: u64, samples: u64) -> CheckReport {
    let name = "distributions/crossover_floor";
    let mut rng = rng_for(seed, name);
    let worst = (0..samples)
        .map(|_| {
            let d = symmetrize(&random_joint(&mut rng));
            let r1 = entropy_triplet(&d).h1_cond;
            let means = (d.x1_marginal() - 0.5)
                .abs()
                .max((d.x2_marginal() - 0.5).abs());
            (h_inv_raw(r1) - d.crossover()).max(means - 1e-12)
        })
        .fold(0.0, f64::max);
    CheckReport::with_tol(name, samples, worst, 1e-9)
}

/// For random `r1` and `η >= p⋆p`, `p = h⁻¹(r1)`, the two-stage binary
/// law attains `J(p, η)` and meets `H(X1|U) >= r1`.
pub fn opt_dist_attains_j(seed: u64, samples: u64) -> CheckReport {
    let name = "distributions/opt_dist_attains_j";
    let mut rng = rng_for(seed, name);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let r1: f64 = rng.gen();
        let p = h_inv_raw(r1);
        let floor = star_raw(p, p);
        let eta = floor + (0.5 - floor) * rng.gen::<f64>();
        let outcome = opt_dist(eta).and_then(|d| {
            let e = entropy_triplet(&d);
            let j = j_bound(p, eta)?;
            let hs = l_eta(eta)?;
            let ps = opt_crossover(eta);
            Ok((e.hs_cond - j)
                .abs()
                .max((e.hs - hs).abs())
                .max(r1 - h_raw(ps) - 1e-12))
        });
        match outcome {
            Ok(v) => worst = worst.max(v),
            Err(e) => return CheckReport::errored(name, &e),
        }
    }
    CheckReport::with_tol(name, samples, worst, 1e-9)
}

pub fn symmetrize_properties(seed: u64, samples: u64) -> CheckReport {
    let name = "distributions/symmetrize";
    let mut rng = rng_for(seed, name);
    let worst = (0..samples)
        .map(|_| {
            let d = random_joint(&mut rng);
            let s = symmetrize(&d);
            let (a, b) = (entropy_triplet(&d), entropy_triplet(&s));
            let pm = s.pair_marginal();
            (a.hs_cond - b.hs_cond)
                .abs()
                .max((a.h1_cond - b.h1_cond).abs())
                .max(a.hs - b.hs)
                .max((d.crossover() - s.crossover()).abs())
                .max((s.x1_marginal() - 0.5).abs())
                .max((pm[1] - pm[2]).abs())
        })
        .fold(0.0, f64::max);
    CheckReport::with_tol(name, samples, worst, 1e-12)
}

pub fn entropy_chain_matches_j(steps: u64) -> CheckReport {
    let name = "distributions/entropy_chain";
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    for i in 0..=steps {
        let r1 = i as f64 / steps as f64;
        let p = h_inv_raw(r1);
        for j in 0..=steps {
            let eta = p + (0.5 - p) * j as f64 / steps as f64;
            let gap = entropy_bound_j(r1, eta).and_then(|c| Ok((c - j_bound(p, eta)?).abs()));
            match gap {
                Ok(g) => worst = worst.max(g),
                Err(e) => return CheckReport::errored(name, &e),
            }
            samples += 1;
        }
    }
    CheckReport::with_tol(name, samples, worst, 1e-9)
}
