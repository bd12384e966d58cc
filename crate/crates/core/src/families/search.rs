//! Branch-and-bound search for a multiset-union-free pair maximizing
//! `|F1| * |F2|` on a tiny ground set.
//!
//! `a + c = b + d` iff `c - d = b - a`, so for a fixed first family the
//! admissible second families are exactly the independent sets of the graph
//! joining `c` and `d` whenever `c - d` is a difference of two members of the
//! first family. The search enumerates first families in lexicographic order
//! and solves a maximum independent set for each.
//!
//! Complementing a coordinate in both families preserves union-freeness, so
//! the first family may be assumed to contain the empty set.

use std::time::{Duration, Instant};

use super::{Family, GroundSet};
use crate::error::{Error, Result};

/// Largest ground set the search accepts (one `u64` bit per subset).
pub const MAX_SEARCH_N: u32 = 6;

const CLOCK_STRIDE: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSearch {
    pub f1: Family,
    pub f2: Family,
    pub product: u64,
    /// False when the budget ran out before the search space was exhausted.
    pub exact: bool,
    pub nodes: u64,
}

/// Set of difference vectors `a - b ∈ {-1,0,1}^n`, indexed in base 3.
#[derive(Clone)]
struct DiffSet {
    bits: Vec<u64>,
}

impl DiffSet {
    fn new(n: u32) -> Self {
        let size = 3usize.pow(n);
        DiffSet {
            bits: vec![0; size.div_ceil(64)],
        }
    }

    #[inline]
    fn index(pos: u64, neg: u64) -> usize {
        let (mut idx, mut place, mut bits) = (0usize, 1usize, pos | neg);
        let mut j = 0;
        while bits != 0 {
            if bits & 1 != 0 {
                idx += place * if pos >> j & 1 != 0 { 1 } else { 2 };
            }
            bits >>= 1;
            place *= 3;
            j += 1;
        }
        idx
    }

    #[inline]
    fn insert(&mut self, a: u64, b: u64) {
        let i = Self::index(a & !b, b & !a);
        self.bits[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn contains(&self, a: u64, b: u64) -> bool {
        let i = Self::index(a & !b, b & !a);
        self.bits[i / 64] >> (i % 64) & 1 != 0
    }
}

struct Clock {
    start: Instant,
    budget: Duration,
    ticks: u64,
    expired: bool,
}

impl Clock {
    fn tick(&mut self) -> bool {
        self.ticks += 1;
        if self.ticks.is_multiple_of(CLOCK_STRIDE) && self.start.elapsed() > self.budget {
            self.expired = true;
        }
        self.expired
    }
}

/// Conflict graph adjacency for the second family given the first
/// family's difference set.
fn conflict_graph(vertices: usize, diffs: &DiffSet) -> Vec<u64> {
    let mut adj = vec![0u64; vertices];
    for c in 0..vertices {
        for d in (c + 1)..vertices {
            if diffs.contains(c as u64, d as u64) {
                adj[c] |= 1 << d;
                adj[d] |= 1 << c;
            }
        }
    }
    adj
}

/// Maximum independent set size within `cand`; `None` if the clock expired.
fn max_independent(adj: &[u64], cand: u64, clock: &mut Clock) -> Option<u32> {
    let mut best = 0;
    mis_rec(adj, cand, 0, &mut best, clock);
    (!clock.expired).then_some(best)
}

fn mis_rec(adj: &[u64], mut cand: u64, size: u32, best: &mut u32, clock: &mut Clock) {
    if clock.tick() {
        return;
    }
    // Isolated candidates can always be taken.
    let mut size = size;
    loop {
        let mut took = false;
        let mut scan = cand;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            if adj[v] & cand == 0 {
                cand &= !(1 << v);
                size += 1;
                took = true;
            }
        }
        if !took {
            break;
        }
    }
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + cand.count_ones() <= *best {
        return;
    }
    // Branch on a vertex of maximum degree within the candidates.
    let mut pick = 0usize;
    let mut deg = 0;
    let mut scan = cand;
    while scan != 0 {
        let v = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        let d = (adj[v] & cand).count_ones();
        if d > deg {
            deg = d;
            pick = v;
        }
    }
    let bit = 1u64 << pick;
    mis_rec(adj, cand & !bit & !adj[pick], size + 1, best, clock);
    mis_rec(adj, cand & !bit, size, best, clock);
}

/// Lexicographically smallest independent set of size `alpha`.
fn lexmin_independent(adj: &[u64], all: u64, alpha: u32, clock: &mut Clock) -> Option<Vec<u64>> {
    let mut chosen = Vec::new();
    let mut cand = all;
    while (chosen.len() as u32) < alpha {
        let v = cand.trailing_zeros() as usize;
        let bit = 1u64 << v;
        let rest = cand & !bit & !adj[v];
        let reach = max_independent(adj, rest, clock)?;
        if chosen.len() as u32 + 1 + reach >= alpha {
            chosen.push(v as u64);
            cand = rest;
        } else {
            cand &= !bit;
        }
    }
    Some(chosen)
}

struct Search<'a> {
    vertices: usize,
    all: u64,
    cap: u64,
    clock: &'a mut Clock,
    best_product: u64,
    best_f1: Vec<u64>,
    best_alpha: u32,
    nodes: u64,
}

impl Search<'_> {
    /// Pre-order DFS over first families sorted ascending, which visits them
    /// in lexicographic order. Only strict improvements replace the
    /// incumbent, so ties resolve to the lexicographically smallest pair.
    fn dfs(&mut self, f1: &mut Vec<u64>, diffs: &DiffSet) {
        if self.clock.expired || self.best_product >= self.cap {
            return;
        }
        self.nodes += 1;
        let adj = conflict_graph(self.vertices, diffs);
        let Some(alpha) = max_independent(&adj, self.all, self.clock) else {
            return;
        };
        let size = f1.len() as u64;
        let product = size * alpha as u64;
        if product > self.best_product {
            self.best_product = product;
            self.best_f1 = f1.clone();
            self.best_alpha = alpha;
        }
        let last = *f1.last().expect("first family is never empty") as usize;
        let remaining = (self.vertices - last - 1) as u64;
        // α can only shrink as the first family grows.
        if (size + remaining) * alpha as u64 <= self.best_product {
            return;
        }
        for v in (last + 1)..self.vertices {
            let v = v as u64;
            if (size + (self.vertices as u64 - v)) * alpha as u64 <= self.best_product {
                break;
            }
            let mut next = diffs.clone();
            for &a in f1.iter() {
                next.insert(v, a);
                next.insert(a, v);
            }
            f1.push(v);
            self.dfs(f1, &next);
            f1.pop();
            if self.clock.expired {
                return;
            }
        }
    }
}

/// Maximizes `|F1| * |F2|` over multiset-union-free pairs on `[n]`.
///
/// Among optimal pairs the lexicographically smallest `(F1, F2)` (comparing
/// sorted member lists) is returned. If `budget` runs out, the best pair
/// found so far is returned with `exact = false`.
pub fn exhaustive_pair_search(n: u32, budget: Duration) -> Result<PairSearch> {
    let ground = GroundSet::new(n)?;
    if n > MAX_SEARCH_N {
        return Err(Error::SearchTooLarge(format!(
            "pair search supports n <= {MAX_SEARCH_N}, got {n}"
        )));
    }
    let vertices = 1usize << n;
    let all = if vertices == 64 {
        u64::MAX
    } else {
        (1u64 << vertices) - 1
    };
    let mut clock = Clock {
        start: Instant::now(),
        budget,
        ticks: 0,
        expired: false,
    };
    let mut search = Search {
        vertices,
        all,
        cap: 3u64.pow(n),
        clock: &mut clock,
        // {∅} against every subset is always union-free.
        best_product: vertices as u64,
        best_f1: vec![0],
        best_alpha: vertices as u32,
        nodes: 0,
    };
    let mut f1 = vec![0u64];
    search.dfs(&mut f1, &DiffSet::new(n));
    let (best_f1, best_alpha, product, nodes) = (
        search.best_f1,
        search.best_alpha,
        search.best_product,
        search.nodes,
    );

    // The tie-break pass gets its own clock so a nearly spent budget cannot
    // leave the reported pair unfinished.
    let mut diffs = DiffSet::new(n);
    for &a in &best_f1 {
        for &b in &best_f1 {
            if a != b {
                diffs.insert(a, b);
            }
        }
    }
    let adj = conflict_graph(vertices, &diffs);
    let mut fresh = Clock {
        start: Instant::now(),
        budget: Duration::MAX,
        ticks: 0,
        expired: false,
    };
    let f2 = lexmin_independent(&adj, all, best_alpha, &mut fresh)
        .expect("an unbounded clock never expires");

    Ok(PairSearch {
        f1: Family::new(ground, best_f1)?,
        f2: Family::new(ground, f2)?,
        product,
        exact: !clock.expired,
        nodes,
    })
}
