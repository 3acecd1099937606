//! Brute-force combinatorial oracle: explicit generation and DP counting of
//! unimodal and strongly unimodal sequences (ordinary and odd variants) with
//! weight and rank, plus the two weight-incrementing injections.
//!
//! The counting here deliberately avoids the q-series engine: both sides of a
//! sequence are counted as partitions into (distinct) odd parts bounded by the
//! peak, convolved over the peak value.

use num_bigint::BigInt;
use std::collections::BTreeMap;

/// An explicit unimodal sequence `a_1 <= ... <= a_r <= peak >= b_1 >= ... >= b_s`.
/// The peak position is part of the datum: two sequences with the same entries
/// but different marked peaks are distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnimodalSequence {
    pub left: Vec<u64>,
    pub peak: u64,
    pub right: Vec<u64>,
}

impl UnimodalSequence {
    pub fn weight(&self) -> u64 {
        self.peak + self.left.iter().sum::<u64>() + self.right.iter().sum::<u64>()
    }

    /// Number of parts left of the peak minus number right of the peak.
    pub fn rank(&self) -> i64 {
        self.left.len() as i64 - self.right.len() as i64
    }

    pub fn is_valid(&self, odd: bool, strict: bool) -> bool {
        if self.peak == 0 {
            return false;
        }
        let entries = self.left.iter().chain(Some(&self.peak)).chain(self.right.iter());
        if self.left.iter().chain(self.right.iter()).any(|&x| x == 0) {
            return false;
        }
        if odd && entries.clone().any(|&x| x % 2 == 0) {
            return false;
        }
        let ok_pair = |a: u64, b: u64| if strict { a < b } else { a <= b };
        for w in self.left.windows(2) {
            if !ok_pair(w[0], w[1]) {
                return false;
            }
        }
        if let Some(&last) = self.left.last() {
            if !ok_pair(last, self.peak) {
                return false;
            }
        }
        if let Some(&first) = self.right.first() {
            if !ok_pair(first, self.peak) {
                return false;
            }
        }
        for w in self.right.windows(2) {
            if !ok_pair(w[1], w[0]) {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountKind {
    /// unimodal
    U,
    /// strongly unimodal
    UStar,
    /// odd unimodal
    Ou,
    /// odd strongly unimodal
    OuStar,
}

impl CountKind {
    pub fn odd(self) -> bool {
        matches!(self, CountKind::Ou | CountKind::OuStar)
    }

    pub fn strict(self) -> bool {
        matches!(self, CountKind::UStar | CountKind::OuStar)
    }
}

pub struct CountTable {
    pub kind: CountKind,
    pub max_weight: usize,
    pub counts: Vec<BigInt>,
    pub rank_counts: Option<Vec<BTreeMap<i64, BigInt>>>,
}

/// All weakly increasing lists of parts from `parts` (ascending, `distinct` for
/// strictly increasing) summing to `sum`.
fn side_lists(sum: u64, parts: &[u64], distinct: bool) -> Vec<Vec<u64>> {
    fn rec(sum: u64, parts: &[u64], from: usize, distinct: bool, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if sum == 0 {
            out.push(cur.clone());
            return;
        }
        for i in from..parts.len() {
            let p = parts[i];
            if p > sum {
                break;
            }
            cur.push(p);
            rec(sum - p, parts, if distinct { i + 1 } else { i }, distinct, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(sum, parts, 0, distinct, &mut Vec::new(), &mut out);
    out
}

fn allowed_parts(peak: u64, odd: bool, strict: bool) -> Vec<u64> {
    let cap = if strict { peak.saturating_sub(1) } else { peak };
    let start = 1u64;
    (start..=cap).filter(|p| !odd || p % 2 == 1).collect()
}

/// Complete duplicate-free list of (odd/strongly) unimodal sequences of the
/// given weight. Weight 0 yields the empty list (the peak is nonempty).
pub fn enumerate(weight: u64, odd: bool, strict: bool) -> Vec<UnimodalSequence> {
    let mut out = Vec::new();
    if weight == 0 {
        return out;
    }
    for peak in 1..=weight {
        if odd && peak % 2 == 0 {
            continue;
        }
        let parts = allowed_parts(peak, odd, strict);
        for wl in 0..=(weight - peak) {
            let wr = weight - peak - wl;
            let lefts = side_lists(wl, &parts, strict);
            if lefts.is_empty() {
                continue;
            }
            let rights = side_lists(wr, &parts, strict);
            for l in &lefts {
                for r in &rights {
                    let mut right = r.clone();
                    right.reverse();
                    out.push(UnimodalSequence { left: l.clone(), peak, right });
                }
            }
        }
    }
    out.sort();
    out
}

/// Counts of partitions of each `w <= max_weight` into parts from `parts`,
/// refined by number of parts. `table[w][k]` = number with `k` parts.
fn side_counts(max_weight: usize, parts: &[u64], distinct: bool) -> Vec<Vec<u64>> {
    let mut table = vec![vec![0u64; max_weight + 2]; max_weight + 1];
    table[0][0] = 1;
    for &p in parts {
        let p = p as usize;
        if p > max_weight {
            break;
        }
        if distinct {
            for w in (p..=max_weight).rev() {
                for k in (1..=w).rev() {
                    let add = table[w - p][k - 1];
                    table[w][k] += add;
                }
            }
        } else {
            for w in p..=max_weight {
                for k in 1..=w {
                    let add = table[w - p][k - 1];
                    table[w][k] += add;
                }
            }
        }
    }
    table
}

/// DP count table, optionally refined by rank.
pub fn count_table(kind: CountKind, max_weight: usize, with_ranks: bool) -> CountTable {
    let mut counts = vec![BigInt::from(0); max_weight + 1];
    let mut rank_counts = if with_ranks {
        Some(vec![BTreeMap::new(); max_weight + 1])
    } else {
        None
    };
    for peak in 1..=max_weight as u64 {
        if kind.odd() && peak % 2 == 0 {
            continue;
        }
        let parts = allowed_parts(peak, kind.odd(), kind.strict());
        let budget = max_weight - peak as usize;
        let sides = side_counts(budget, &parts, kind.strict());
        for wl in 0..=budget {
            for wr in 0..=budget - wl {
                let n = peak as usize + wl + wr;
                for (r, &cl) in sides[wl].iter().enumerate() {
                    if cl == 0 {
                        continue;
                    }
                    for (s, &cr) in sides[wr].iter().enumerate() {
                        if cr == 0 {
                            continue;
                        }
                        let prod = BigInt::from(cl) * BigInt::from(cr);
                        counts[n] += &prod;
                        if let Some(rc) = rank_counts.as_mut() {
                            let m = r as i64 - s as i64;
                            *rc[n].entry(m).or_insert_with(|| BigInt::from(0)) += prod;
                        }
                    }
                }
            }
        }
    }
    CountTable { kind, max_weight, counts, rank_counts }
}

/// Prepend a 1 to the left side: odd unimodal, weight n -> weight n+1.
pub fn inject_weak(s: &UnimodalSequence) -> UnimodalSequence {
    let mut left = Vec::with_capacity(s.left.len() + 1);
    left.push(1);
    left.extend_from_slice(&s.left);
    UnimodalSequence { left, peak: s.peak, right: s.right.clone() }
}

/// The weight-incrementing map on odd strongly unimodal sequences of weight >= 3:
/// prepend a 1 when the left side does not start with 1, otherwise drop the
/// leading 1 and raise the peak by 2.
pub fn inject_strict(s: &UnimodalSequence) -> UnimodalSequence {
    debug_assert!(s.weight() >= 3);
    let out = if s.left.first() != Some(&1) {
        let mut left = Vec::with_capacity(s.left.len() + 1);
        left.push(1);
        left.extend_from_slice(&s.left);
        UnimodalSequence { left, peak: s.peak, right: s.right.clone() }
    } else {
        UnimodalSequence { left: s.left[1..].to_vec(), peak: s.peak + 2, right: s.right.clone() }
    };
    assert!(out.is_valid(true, true), "image of inject_strict must be odd strongly unimodal");
    out
}
