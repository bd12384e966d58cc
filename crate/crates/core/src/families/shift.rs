//! Down-shifting a family into a monotone (down-closed) one of the same size.

use std::collections::HashSet;

use super::Family;
use crate::error::Result;

/// True iff every subset of every member is a member.
///
/// It suffices to check that removing any single element from a member
/// lands in the family.
pub fn is_monotone(f: &Family) -> bool {
    let set: HashSet<u64> = f.members().iter().copied().collect();
    f.members().iter().all(|&m| {
        let mut bits = m;
        while bits != 0 {
            let low = bits & bits.wrapping_neg();
            if !set.contains(&(m & !low)) {
                return false;
            }
            bits &= bits - 1;
        }
        true
    })
}

/// Repeatedly applies the shift on element `i`: every member containing `i`
/// whose `i`-deleted copy is absent is replaced by that copy. Elements are
/// visited cyclically `1..=n` until a full pass changes nothing.
///
/// The result has the same cardinality as `f`, is monotone, and every set
/// it `k`-shatters is also `k`-shattered by `f`.
pub fn shift_monotonize(f: &Family) -> Result<Family> {
    f.ensure_distinct()?;
    let n = f.ground().n();
    let mut current: HashSet<u64> = f.members().iter().copied().collect();
    loop {
        let mut changed = false;
        for i in 0..n {
            let bit = 1u64 << i;
            let movers: Vec<u64> = current
                .iter()
                .copied()
                .filter(|&g| g & bit != 0 && !current.contains(&(g & !bit)))
                .collect();
            if movers.is_empty() {
                continue;
            }
            changed = true;
            for g in movers {
                current.remove(&g);
                current.insert(g & !bit);
            }
        }
        if !changed {
            break;
        }
    }
    Family::new(f.ground(), current.into_iter().collect())
}
