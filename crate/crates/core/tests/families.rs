use std::collections::{BTreeMap, HashSet};

use bacbound_core::families::{
    hamming_ball, is_k_shattered, is_multiset_union_free, s_complement_pairs, soft_sauer_bound,
    Family, GroundSet, SoftSauerParams,
};
use bacbound_core::systems::{derive_system, is_valid_system};
use num::{BigInt, BigRational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x0bac_b0d5;

/// Pascal's triangle, independent of the library's binomials.
fn pascal(n: usize) -> Vec<Vec<u128>> {
    let mut rows = vec![vec![1u128]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![1u128; i + 1];
        for j in 1..i {
            row[j] = prev[j - 1] + prev[j];
        }
        rows.push(row);
    }
    rows
}

fn sums_distinct(f1: &[u64], f2: &[u64], n: u32) -> bool {
    let mut seen = HashSet::new();
    for &a in f1 {
        for &b in f2 {
            let v: Vec<u64> = (0..n).map(|i| (a >> i & 1) + (b >> i & 1)).collect();
            if !seen.insert(v) {
                return false;
            }
        }
    }
    true
}

/// Adds random masks to `f2` in random order while the pair stays
/// multiset-union-free.
fn greedy_partner(rng: &mut ChaCha8Rng, f1: &[u64], n: u32) -> Vec<u64> {
    let mut candidates: Vec<u64> = (0..1u64 << n).collect();
    candidates.shuffle(rng);
    let mut f2: Vec<u64> = Vec::new();
    for c in candidates {
        f2.push(c);
        if !sums_distinct(f1, &f2, n) {
            f2.pop();
        }
    }
    f2.sort_unstable();
    f2
}

#[test]
fn sauer_consistency_up_to_thirty() {
    let c = pascal(30);
    for n in 1..=30u32 {
        for d in 1..=n {
            let b = soft_sauer_bound(SoftSauerParams::new(n, d, 1).unwrap());
            assert_eq!(b.t_star, d);
            let classic: u128 = (0..d as usize).map(|t| c[n as usize][t]).sum();
            let ball: u128 = (0..=d as usize).map(|t| c[n as usize][t]).sum();
            let low = BigRational::from_integer(BigInt::from(classic) - 1);
            let high = BigRational::new(BigInt::from(n + d), BigInt::from(d))
                * BigRational::from_integer(BigInt::from(ball));
            assert!(b.bound >= low, "n={n} d={d}");
            assert!(b.bound <= high, "n={n} d={d}");
        }
    }
}

#[test]
fn hamming_balls_respect_the_bound() {
    for n in 1..=10u32 {
        for r in 0..=n {
            let ball = hamming_ball(n, r).unwrap();
            for k in [1usize, 2, 4] {
                // largest k-shattered size by brute force over all subsets
                let s = (0..1u64 << n)
                    .filter(|&m| is_k_shattered(&ball, m, k))
                    .map(|m| m.count_ones())
                    .max();
                let Some(s) = s else { continue };
                if s == n {
                    continue;
                }
                let b = soft_sauer_bound(SoftSauerParams::new(n, s + 1, k as u64).unwrap());
                assert!(b.admits(ball.len()), "n={n} r={r} k={k}");
            }
        }
    }
}

#[test]
fn weldon_complement_pairs_at_desk_scale() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in 1..=6u32 {
        for _ in 0..40 {
            let size = rng.gen_range(0..=n);
            let mut elems: Vec<u32> = (0..n).collect();
            elems.shuffle(&mut rng);
            let s_mask = elems[..size as usize].iter().fold(0u64, |m, &e| m | 1 << e);
            let rest = ((1u64 << n) - 1) & !s_mask;
            // systematic: exactly one member per projection on S
            let mut f1: Vec<u64> = (0..1u64 << n)
                .filter(|g| g & !s_mask == 0)
                .map(|g| g | (rng.gen::<u64>() & rest))
                .collect();
            f1.sort_unstable();
            let f2 = greedy_partner(&mut rng, &f1, n);
            let ground = GroundSet::new(n).unwrap();
            let (a, b) = (
                Family::new(ground, f1.clone()).unwrap(),
                Family::new(ground, f2.clone()).unwrap(),
            );
            assert!(is_k_shattered(&a, s_mask, 1));
            assert_eq!(is_multiset_union_free(&a, &b), Ok(true));

            let brute = f1
                .iter()
                .flat_map(|&x| f2.iter().map(move |&y| (x, y)))
                .filter(|&(x, y)| x & y & s_mask == 0 && (x | y) & s_mask == s_mask)
                .count();
            assert_eq!(s_complement_pairs(&a, &b, s_mask), brute);
            // each member of f2 has its partner in the systematic f1
            assert!(brute >= f2.len());
            assert!(brute as u64 <= 3u64.pow(n - size));
        }
    }
}

#[test]
fn union_freeness_is_symmetric_and_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for _ in 0..2000 {
        let n = rng.gen_range(1..=5);
        let ground = GroundSet::new(n).unwrap();
        let mut pick = || {
            let mut v: Vec<u64> = (0..rng.gen_range(1..=5))
                .map(|_| rng.gen_range(0..1u64 << n))
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let (x, y) = (pick(), pick());
        let (a, b) = (
            Family::new(ground, x.clone()).unwrap(),
            Family::new(ground, y.clone()).unwrap(),
        );
        let expected = sums_distinct(&x, &y, n);
        assert_eq!(is_multiset_union_free(&a, &b), Ok(expected));
        assert_eq!(is_multiset_union_free(&b, &a), Ok(expected));
    }
}

#[test]
fn derived_systems_keep_their_shape() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut derived = 0;
    for _ in 0..60 {
        let n = rng.gen_range(2..=6u32);
        let ground = GroundSet::new(n).unwrap();
        let mut f1: Vec<u64> = (0..1u64 << n).filter(|_| rng.gen_bool(0.4)).collect();
        if f1.is_empty() {
            f1.push(0);
        }
        let f2 = greedy_partner(&mut rng, &f1, n);
        let (a, b) = (
            Family::new(ground, f1.clone()).unwrap(),
            Family::new(ground, f2.clone()).unwrap(),
        );
        let full = (1u64 << n) - 1;
        for s_mask in 0..full {
            for k in 1..=f1.len() {
                if !is_k_shattered(&a, s_mask, k) {
                    break;
                }
                let d = derive_system(&a, &b, s_mask, k).unwrap();
                derived += 1;
                let u = &d.system;
                assert_eq!(u.ground().n(), n - s_mask.count_ones());
                assert_eq!(is_valid_system(u), Ok(true));
                assert_eq!(u.m1(), k);
                assert_eq!(u.m2(), 1 << d.k_prime);

                let mut cells: BTreeMap<u64, usize> = BTreeMap::new();
                for &m in &f2 {
                    *cells.entry(m & s_mask).or_default() += 1;
                }
                for (g, (p1, p2)) in d.selected.iter().zip(u.pairs()) {
                    assert_eq!(p1.len(), k);
                    assert_eq!(p2.len(), 1 << d.k_prime);
                    assert!(2 * p2.len() >= cells[g]);
                }

                let mut sums = HashSet::new();
                for (p1, p2) in u.pairs() {
                    for &x in p1.members() {
                        for &y in p2.members() {
                            sums.insert((x | y, x & y));
                        }
                    }
                }
                assert_eq!(sums.len(), u.m0() * u.m1() * u.m2());
            }
        }
    }
    assert!(derived > 60);
}
