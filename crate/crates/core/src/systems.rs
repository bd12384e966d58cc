//! Multiset-union-free systems: indexed family pairs whose per-pair sum
//! sets are each collision-free and pairwise disjoint.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{
    format_family, is_k_shattered, is_multiset_union_free, parse_family, ternary_sum, Family,
    GroundSet, SubsetsOfSize,
};

/// Pairs `(F1_i, F2_i)` over a common ground set with `|F1_i| = m1` and
/// `|F2_i| = m2` for every `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionFreeSystem {
    ground: GroundSet,
    pairs: Vec<(Family, Family)>,
    m1: usize,
    m2: usize,
}

impl UnionFreeSystem {
    /// Checks the shape invariants (common ground set, fixed per-side
    /// cardinalities, at least one pair). Union-freeness is checked
    /// separately by [`is_valid_system`].
    pub fn new(ground: GroundSet, pairs: Vec<(Family, Family)>) -> Result<Self> {
        let (m1, m2) = match pairs.first() {
            Some((a, b)) => (a.len(), b.len()),
            None => {
                return Err(Error::InvalidSystem {
                    index: 0,
                    reason: "system has no pairs".into(),
                })
            }
        };
        for (index, (a, b)) in pairs.iter().enumerate() {
            if a.ground() != ground || b.ground() != ground {
                return Err(Error::InvalidSystem {
                    index,
                    reason: format!("ground set differs from n={}", ground.n()),
                });
            }
            if a.len() != m1 || b.len() != m2 {
                return Err(Error::InvalidSystem {
                    index,
                    reason: format!(
                        "cardinalities ({}, {}) differ from ({m1}, {m2})",
                        a.len(),
                        b.len()
                    ),
                });
            }
        }
        Ok(UnionFreeSystem {
            ground,
            pairs,
            m1,
            m2,
        })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn pairs(&self) -> &[(Family, Family)] {
        &self.pairs
    }

    pub fn m0(&self) -> usize {
        self.pairs.len()
    }

    pub fn m1(&self) -> usize {
        self.m1
    }

    pub fn m2(&self) -> usize {
        self.m2
    }

    pub fn to_json(&self) -> String {
        let doc = SystemJson {
            n: self.ground.n(),
            m0: self.m0(),
            m1: self.m1,
            m2: self.m2,
            pairs: self
                .pairs
                .iter()
                .map(|(a, b)| [format_family(a), format_family(b)])
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("system document always serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SystemJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        let ground = GroundSet::new(doc.n)?;
        let pairs = doc
            .pairs
            .iter()
            .map(|[a, b]| Ok((parse_family(a)?, parse_family(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let system = UnionFreeSystem::new(ground, pairs)?;
        if (system.m0(), system.m1, system.m2) != (doc.m0, doc.m1, doc.m2) {
            return Err(Error::Parse {
                line: 0,
                msg: format!(
                    "declared (m0, m1, m2) = ({}, {}, {}) but pairs give ({}, {}, {})",
                    doc.m0,
                    doc.m1,
                    doc.m2,
                    system.m0(),
                    system.m1,
                    system.m2
                ),
            });
        }
        Ok(system)
    }
}

/// On-disk JSON layout: `n`, `m0`, `m1`, `m2`, and `pairs` as two-element
/// arrays of family text blocks.
#[derive(Debug, Serialize, Deserialize)]
struct SystemJson {
    n: u32,
    m0: usize,
    m1: usize,
    m2: usize,
    pairs: Vec<[String; 2]>,
}

/// `(log2 M0, log2 M1, log2 M2) / n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemRates {
    pub r0: f64,
    pub r1: f64,
    pub r2: f64,
}

impl SystemRates {
    pub fn sum(&self) -> f64 {
        self.r0 + self.r1 + self.r2
    }
}

pub fn system_rates(u: &UnionFreeSystem) -> SystemRates {
    let n = u.ground.n() as f64;
    SystemRates {
        r0: (u.m0() as f64).log2() / n,
        r1: (u.m1 as f64).log2() / n,
        r2: (u.m2 as f64).log2() / n,
    }
}

/// True iff every pair is multiset-union-free and the sum sets of distinct
/// pairs are disjoint. Families with repeated members are reported as an
/// error carrying the pair index.
pub fn is_valid_system(u: &UnionFreeSystem) -> Result<bool> {
    let per_pair: Vec<Option<Vec<(u64, u64)>>> = u
        .pairs
        .par_iter()
        .enumerate()
        .map(|(index, (a, b))| {
            let ok = is_multiset_union_free(a, b).map_err(|e| Error::InvalidSystem {
                index,
                reason: e.to_string(),
            })?;
            Ok(ok.then(|| {
                a.members()
                    .iter()
                    .flat_map(|&x| b.members().iter().map(move |&y| ternary_sum(x, y)))
                    .collect()
            }))
        })
        .collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    for sums in per_pair {
        let Some(sums) = sums else {
            return Ok(false);
        };
        for s in sums {
            if !seen.insert(s) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The system indexed by all `(2n/3)`-subsets `F0` of `[n]`, pairing `{F0}`
/// with the power set of `F0`. Its sum rate `(1/n) log C(n, 2n/3) + 2/3`
/// tends to `log 3`.
pub fn log3_construction(n: u32) -> Result<UnionFreeSystem> {
    if n == 0 || !n.is_multiple_of(3) || n > 15 {
        return Err(Error::Domain {
            what: "n (must be a positive multiple of 3, at most 15)",
            value: n as f64,
        });
    }
    let ground = GroundSet::new(n)?;
    let size = 2 * n / 3;
    let pairs = SubsetsOfSize::new(n, size)
        .map(|f0| {
            let mut subsets = Vec::with_capacity(1 << size);
            let mut sub = f0;
            loop {
                subsets.push(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f0;
            }
            Ok((
                Family::new(ground, vec![f0])?,
                Family::new(ground, subsets)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    UnionFreeSystem::new(ground, pairs)
}

/// Result of [`derive_system`].
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedSystem {
    pub system: UnionFreeSystem,
    pub rates: SystemRates,
    /// The selected projections `G ⊆ S` (masks over the original ground
    /// set), ascending.
    pub selected: Vec<u64>,
    /// Common cardinality exponent of the trimmed second-family cells.
    pub k_prime: u32,
}

/// Keeps the bits of `mask` that lie in `keep`, packed to the low end.
fn compress(mask: u64, keep: u64) -> u64 {
    let (mut out, mut pos, mut bits) = (0u64, 0, keep);
    while bits != 0 {
        let low = bits & bits.wrapping_neg();
        if mask & low != 0 {
            out |= 1 << pos;
        }
        pos += 1;
        bits &= bits - 1;
    }
    out
}

/// Builds a system over the complement of `S` from a multiset-union-free
/// pair and a set `S` that `f1` shatters `k` times.
///
/// Both families are partitioned by their projection on `S`. Each
/// first-family cell is trimmed to its `k` smallest members and each
/// nonempty second-family cell to its `2^⌊log2 size⌋` smallest members. The
/// cell size `2^{k'}` holding the most second-family members in total is
/// kept (smallest `k'` on ties), and every kept cell `G` is paired with the
/// first-family cell of `S \ G`. Members are finally projected onto `S̄`.
///
/// The selected count `|G| = 2^{nα'}` satisfies `α' <= α = |S|/n`.
pub fn derive_system(f1: &Family, f2: &Family, s_mask: u64, k: usize) -> Result<DerivedSystem> {
    if !is_multiset_union_free(f1, f2)? {
        return Err(Error::InvalidSystem {
            index: 0,
            reason: "input pair is not multiset-union-free".into(),
        });
    }
    let ground = f1.ground();
    if !ground.contains_mask(s_mask) {
        return Err(Error::MemberOutOfRange {
            member: s_mask,
            n: ground.n(),
        });
    }
    if k == 0 || !is_k_shattered(f1, s_mask, k) {
        return Err(Error::Domain {
            what: "k (S must be k-shattered by the first family)",
            value: k as f64,
        });
    }
    let rest = ground.full_mask() & !s_mask;
    if rest == 0 {
        return Err(Error::EmptySelection(
            "S covers the whole ground set".into(),
        ));
    }
    let sub_ground = GroundSet::new(rest.count_ones())?;

    let cells = |f: &Family| {
        let mut by: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &m in f.members() {
            by.entry(m & s_mask).or_default().push(m);
        }
        by
    };
    // members are sorted, so each cell is sorted and truncation keeps the
    // smallest masks
    let mut cells1 = cells(f1);
    for cell in cells1.values_mut() {
        cell.truncate(k);
    }
    let mut cells2 = cells(f2);
    for cell in cells2.values_mut() {
        cell.truncate(1 << cell.len().ilog2());
    }

    let mut population: BTreeMap<u32, usize> = BTreeMap::new();
    for cell in cells2.values() {
        *population.entry(cell.len().ilog2()).or_insert(0) += cell.len();
    }
    let (&k_prime, _) = population
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .ok_or_else(|| Error::EmptySelection("second family is empty".into()))?;

    let mut selected = Vec::new();
    let mut pairs = Vec::new();
    for (&g, cell2) in &cells2 {
        if cell2.len() != 1 << k_prime {
            continue;
        }
        let complement = s_mask & !g;
        let cell1 = cells1.get(&complement).ok_or_else(|| {
            Error::EmptySelection(format!(
                "no first-family member projects to {complement:#x}"
            ))
        })?;
        let a = Family::new(
            sub_ground,
            cell1.iter().map(|&m| compress(m, rest)).collect(),
        )?;
        let b = Family::new(
            sub_ground,
            cell2.iter().map(|&m| compress(m, rest)).collect(),
        )?;
        selected.push(g);
        pairs.push((a, b));
    }
    if pairs.is_empty() {
        return Err(Error::EmptySelection("no projection class survived".into()));
    }
    let system = UnionFreeSystem::new(sub_ground, pairs)?;
    let rates = system_rates(&system);
    Ok(DerivedSystem {
        system,
        rates,
        selected,
        k_prime,
    })
}
