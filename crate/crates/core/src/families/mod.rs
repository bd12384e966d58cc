//! Families of subsets of `[n]` as sorted vectors of bit masks.
//!
//! Element `i` of the ground set `[n] = {1, ..., n}` is bit `i - 1` of a
//! mask, so a family member is its characteristic vector. The multiset
//! union `A ⊎ C` of two members is the integer vector `a + c`, which is
//! encoded losslessly by the pair `(a | c, a & c)`.

mod sauer;
mod search;
mod shift;
mod text;

pub(crate) use sauer::binomial as sauer_binomial;
pub use sauer::{
    corollary_shatter_size, hamming_ball, soft_sauer_bound, ShatterGuarantee, SoftSauerBound,
    SoftSauerParams,
};
pub use search::{exhaustive_pair_search, PairSearch};
pub use shift::{is_monotone, shift_monotonize};
pub use text::{format_family, parse_family};

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exhaustive shattering searches stop with an error beyond this many
/// candidate sets.
pub const SHATTER_SEARCH_BUDGET: u64 = 1 << 26;

/// Largest ground set for which subset-enumerating searches are allowed.
pub const MAX_ENUMERATION_N: u32 = 25;

/// The ground set `[n]`, `1 <= n <= 64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroundSet(u32);

impl GroundSet {
    pub fn new(n: u32) -> Result<Self> {
        if (1..=64).contains(&n) {
            Ok(GroundSet(n))
        } else {
            Err(Error::InvalidGround(n))
        }
    }

    pub fn n(self) -> u32 {
        self.0
    }

    /// Mask with all `n` elements set.
    pub fn full_mask(self) -> u64 {
        if self.0 == 64 {
            u64::MAX
        } else {
            (1u64 << self.0) - 1
        }
    }

    pub fn contains_mask(self, mask: u64) -> bool {
        mask & !self.full_mask() == 0
    }

    fn check_mask(self, mask: u64) -> Result<()> {
        if self.contains_mask(mask) {
            Ok(())
        } else {
            Err(Error::MemberOutOfRange {
                member: mask,
                n: self.0,
            })
        }
    }
}

/// A multiset of subsets of `[n]`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Family {
    ground: GroundSet,
    members: Vec<u64>,
}

impl Family {
    pub fn new(ground: GroundSet, mut members: Vec<u64>) -> Result<Self> {
        for &m in &members {
            ground.check_mask(m)?;
        }
        members.sort_unstable();
        Ok(Family { ground, members })
    }

    /// Builds a family from 1-based element lists.
    pub fn from_sets(n: u32, sets: &[&[u32]]) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let members = sets
            .iter()
            .map(|set| set_to_mask(ground, set))
            .collect::<Result<Vec<_>>>()?;
        Family::new(ground, members)
    }

    /// All `2^n` subsets of `[n]`.
    pub fn power_set(n: u32) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        if n > MAX_ENUMERATION_N {
            return Err(Error::SearchTooLarge(format!("power set of {n} elements")));
        }
        Ok(Family {
            ground,
            members: (0..1u64 << n).collect(),
        })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn has_duplicates(&self) -> bool {
        self.members.windows(2).any(|w| w[0] == w[1])
    }

    pub(crate) fn ensure_distinct(&self) -> Result<()> {
        match self.members.windows(2).find(|w| w[0] == w[1]) {
            Some(w) => Err(Error::DuplicateMember(w[0])),
            None => Ok(()),
        }
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.members.binary_search(&mask).is_ok()
    }
}

pub(crate) fn set_to_mask(ground: GroundSet, set: &[u32]) -> Result<u64> {
    let mut mask = 0u64;
    for &e in set {
        if e == 0 || e > ground.n() {
            return Err(Error::MemberOutOfRange {
                member: e as u64,
                n: ground.n(),
            });
        }
        mask |= 1u64 << (e - 1);
    }
    Ok(mask)
}

/// 1-based elements of `mask`, ascending.
pub fn mask_elements(mask: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() + 1);
        m &= m - 1;
    }
    out
}

/// The integer vector `a + c` encoded as (positions >= 1, positions == 2).
#[inline]
pub(crate) fn ternary_sum(a: u64, c: u64) -> (u64, u64) {
    (a | c, a & c)
}

/// True iff all `|f1| * |f2|` sums `a + c` are distinct.
pub fn is_multiset_union_free(f1: &Family, f2: &Family) -> Result<bool> {
    if f1.ground != f2.ground {
        return Err(Error::GroundMismatch {
            left: f1.ground.n(),
            right: f2.ground.n(),
        });
    }
    f1.ensure_distinct()?;
    f2.ensure_distinct()?;
    let mut seen = HashSet::with_capacity(f1.len() * f2.len());
    for &a in &f1.members {
        for &c in &f2.members {
            if !seen.insert(ternary_sum(a, c)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The projection multiset `{F ∩ S : F ∈ f}` with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionMultiset {
    pub subset_mask: u64,
    pub counts: BTreeMap<u64, usize>,
}

impl ProjectionMultiset {
    pub fn count(&self, mask: u64) -> usize {
        self.counts.get(&mask).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

pub fn project(f: &Family, s_mask: u64) -> Result<ProjectionMultiset> {
    f.ground.check_mask(s_mask)?;
    let mut counts = BTreeMap::new();
    for &m in &f.members {
        *counts.entry(m & s_mask).or_insert(0) += 1;
    }
    Ok(ProjectionMultiset {
        subset_mask: s_mask,
        counts,
    })
}

/// Ground sets up to this size count projections in a dense table.
const DENSE_COUNT_N: u32 = 16;

/// True iff every subset of `S` appears at least `k` times in the
/// projection of `f` on `S`.
pub fn is_k_shattered(f: &Family, s_mask: u64, k: usize) -> bool {
    let k = k.max(1);
    let size = s_mask.count_ones();
    if size >= 63 || f.len() < k.saturating_mul(1usize << size) {
        return false;
    }
    if f.ground.n() <= DENSE_COUNT_N {
        let mut counts = vec![0usize; 1 << f.ground.n()];
        for &m in &f.members {
            counts[(m & s_mask) as usize] += 1;
        }
        // walk every submask of S
        let mut sub = s_mask;
        loop {
            if counts[sub as usize] < k {
                return false;
            }
            if sub == 0 {
                return true;
            }
            sub = (sub - 1) & s_mask;
        }
    }
    let mut counts = std::collections::HashMap::with_capacity(1 << size);
    for &m in &f.members {
        *counts.entry(m & s_mask).or_insert(0usize) += 1;
    }
    if counts.len() < 1usize << size {
        return false;
    }
    counts.values().all(|&c| c >= k)
}

/// A shattered set together with its cardinality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shattered {
    pub mask: u64,
    pub size: u32,
}

/// Finds a largest `k`-shattered set of size at most `size_cap`.
///
/// Sizes are tried from the largest feasible one downward; within a size the
/// numerically smallest mask wins. Returns `None` when `|f| < k`, i.e. not
/// even the empty set is `k`-shattered.
pub fn max_k_shattered(f: &Family, k: usize, size_cap: u32) -> Result<Option<Shattered>> {
    if size_cap > MAX_ENUMERATION_N {
        return Err(Error::SearchTooLarge(format!(
            "size cap {size_cap} exceeds {MAX_ENUMERATION_N}"
        )));
    }
    let k = k.max(1);
    if f.len() < k {
        return Ok(None);
    }
    let n = f.ground.n();
    // a k-shattered set of size s needs k * 2^s members
    let feasible = (f.len() / k).ilog2();
    let top = size_cap.min(n).min(feasible);
    let mut spent = 0u64;
    for size in (1..=top).rev() {
        let combos = binomial_u64(n, size);
        spent = spent.saturating_add(combos);
        if spent > SHATTER_SEARCH_BUDGET {
            return Err(Error::SearchTooLarge(format!(
                "more than {SHATTER_SEARCH_BUDGET} candidate sets over {n} elements"
            )));
        }
        for mask in SubsetsOfSize::new(n, size) {
            if is_k_shattered(f, mask, k) {
                return Ok(Some(Shattered { mask, size }));
            }
        }
    }
    Ok(Some(Shattered { mask: 0, size: 0 }))
}

/// `C(n, k)` saturating at `u64::MAX`.
pub(crate) fn binomial_u64(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n as u128 - i as u128) / (i as u128 + 1);
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Masks with exactly `size` bits among the low `n`, in increasing order
/// (Gosper's hack).
pub(crate) struct SubsetsOfSize {
    next: Option<u64>,
    limit: u64,
}

impl SubsetsOfSize {
    pub(crate) fn new(n: u32, size: u32) -> Self {
        let next = if size > n {
            None
        } else if size == 0 {
            Some(0)
        } else if size == 64 {
            Some(u64::MAX)
        } else {
            Some((1u64 << size) - 1)
        };
        let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        SubsetsOfSize { next, limit }
    }
}

impl Iterator for SubsetsOfSize {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            match cur.checked_add(c) {
                Some(r) => {
                    let nxt = (((r ^ cur) >> 2) / c) | r;
                    (nxt <= self.limit && nxt > cur).then_some(nxt)
                }
                None => None,
            }
        };
        Some(cur)
    }
}

/// Number of pairs `(F1, F2)` whose projections on `S` are exact complements
/// within `S`, i.e. `(F1 ∩ S) ⊎ (F2 ∩ S) = S`.
pub fn s_complement_pairs(f1: &Family, f2: &Family, s_mask: u64) -> usize {
    let mut by_projection: BTreeMap<u64, usize> = BTreeMap::new();
    for &a in &f1.members {
        *by_projection.entry(a & s_mask).or_insert(0) += 1;
    }
    f2.members
        .iter()
        .map(|&c| by_projection.get(&(s_mask & !c)).copied().unwrap_or(0))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_set_bounds() {
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::new(65).is_err());
        assert_eq!(GroundSet::new(64).unwrap().full_mask(), u64::MAX);
        assert_eq!(GroundSet::new(3).unwrap().full_mask(), 0b111);
    }

    #[test]
    fn family_validation() {
        let g = GroundSet::new(2).unwrap();
        assert!(Family::new(g, vec![0b100]).is_err());
        let f = Family::new(g, vec![3, 0, 1, 1]).unwrap();
        assert_eq!(f.members(), &[0, 1, 1, 3]);
        assert!(f.has_duplicates());
        assert!(Family::from_sets(2, &[&[3]]).is_err());
    }

    #[test]
    fn union_free_examples() {
        // {00, 11} with {00, 01, 10}: six distinct ternary sums, listed by hand
        let f1 = Family::new(GroundSet::new(2).unwrap(), vec![0b00, 0b11]).unwrap();
        let f2 = Family::new(GroundSet::new(2).unwrap(), vec![0b00, 0b01, 0b10]).unwrap();
        assert!(is_multiset_union_free(&f1, &f2).unwrap());
        assert!(is_multiset_union_free(&f2, &f1).unwrap());

        let f = Family::from_sets(1, &[&[], &[1]]).unwrap();
        assert!(!is_multiset_union_free(&f, &f).unwrap());

        let single = Family::from_sets(3, &[&[1, 3]]).unwrap();
        let all = Family::power_set(3).unwrap();
        assert!(is_multiset_union_free(&single, &all).unwrap());
    }

    #[test]
    fn union_free_errors() {
        let a = Family::power_set(2).unwrap();
        let b = Family::power_set(3).unwrap();
        assert_eq!(
            is_multiset_union_free(&a, &b),
            Err(Error::GroundMismatch { left: 2, right: 3 })
        );
        let dup = Family::new(GroundSet::new(2).unwrap(), vec![1, 1]).unwrap();
        assert_eq!(
            is_multiset_union_free(&dup, &a),
            Err(Error::DuplicateMember(1))
        );
    }

    #[test]
    fn projections() {
        let f = Family::power_set(2).unwrap();
        let p = project(&f, 0b01).unwrap();
        assert_eq!(p.counts, BTreeMap::from([(0, 2), (1, 2)]));
        let p = project(&f, 0b11).unwrap();
        assert!(p.counts.values().all(|&c| c == 1));
        assert_eq!(p.total(), 4);
        let p = project(&f, 0).unwrap();
        assert_eq!(p.counts, BTreeMap::from([(0, 4)]));
        assert!(project(&f, 0b100).is_err());
    }

    #[test]
    fn shattering() {
        let f = Family::power_set(2).unwrap();
        assert!(is_k_shattered(&f, 0b11, 1));
        assert!(is_k_shattered(&f, 0b01, 2));
        assert!(!is_k_shattered(&f, 0b11, 2));
        assert!(is_k_shattered(&f, 0, 4));
        assert!(!is_k_shattered(&f, 0, 5));
    }

    #[test]
    fn max_shattered_sets() {
        let f = Family::power_set(3).unwrap();
        assert_eq!(max_k_shattered(&f, 1, 25).unwrap().unwrap().size, 3);
        assert_eq!(
            max_k_shattered(&f, 2, 25).unwrap().unwrap(),
            Shattered {
                mask: 0b011,
                size: 2
            }
        );
        for n in 1..=8 {
            for d in 0..=n {
                let ball = hamming_ball(n, d).unwrap();
                let s = max_k_shattered(&ball, 1, 25).unwrap().unwrap();
                assert_eq!(s.size, d, "n={n} d={d}");
            }
        }
        assert_eq!(max_k_shattered(&f, 9, 25).unwrap(), None);
        assert!(max_k_shattered(&f, 1, 26).is_err());
    }

    #[test]
    fn gosper_enumeration() {
        let all: Vec<u64> = SubsetsOfSize::new(4, 2).collect();
        assert_eq!(all, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(SubsetsOfSize::new(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(SubsetsOfSize::new(3, 3).collect::<Vec<_>>(), vec![0b111]);
        assert_eq!(SubsetsOfSize::new(3, 4).count(), 0);
        assert_eq!(SubsetsOfSize::new(64, 63).count(), 64);
        for n in 1..=10 {
            for k in 0..=n {
                assert_eq!(SubsetsOfSize::new(n, k).count() as u64, binomial_u64(n, k));
            }
        }
    }

    #[test]
    fn complement_pairs() {
        // S = {1}: F1 ∩ S and F2 ∩ S must partition S
        let f1 = Family::power_set(2).unwrap();
        let f2 = Family::from_sets(2, &[&[]]).unwrap();
        assert_eq!(s_complement_pairs(&f1, &f2, 0b01), 2);
        assert_eq!(s_complement_pairs(&f2, &f1, 0b01), 2);
        assert_eq!(s_complement_pairs(&f1, &f1, 0b11), 4);
    }

    #[test]
    fn elements_of_masks() {
        assert_eq!(mask_elements(0b1011), vec![1, 2, 4]);
        assert!(mask_elements(0).is_empty());
    }

    proptest::proptest! {
        #[test]
        fn shattering_agrees_with_projection(
            n in 1u32..=20,
            seed in proptest::collection::vec(proptest::num::u64::ANY, 1..200),
            s in proptest::num::u64::ANY,
            k in 1usize..4,
        ) {
            let full = (1u64 << n) - 1;
            let f = Family::new(GroundSet::new(n).unwrap(), seed.iter().map(|m| m & full).collect()).unwrap();
            let s_mask = s & full & 0x3f;
            let p = project(&f, s_mask).unwrap();
            let expected = (0..=s_mask).filter(|m| m & !s_mask == 0).all(|m| p.count(m) >= k);
            proptest::prop_assert_eq!(is_k_shattered(&f, s_mask, k), expected);
        }
    }
}
