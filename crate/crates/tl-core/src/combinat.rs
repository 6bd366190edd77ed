//! Multiindices, walks and the dimension counts built from them.

use crate::error::{Error, Result};
use crate::scalars::{decompose_defect, delta, root_data, QParam};
use std::collections::BTreeMap;
use std::fmt;

/// A valence vector (s_1, …, s_d). Zero entries are dropped; the empty
/// multiindex is stored as `(0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiindex {
    entries: Vec<usize>,
}

impl Multiindex {
    pub fn new(entries: impl IntoIterator<Item = usize>) -> Self {
        let entries: Vec<usize> = entries.into_iter().filter(|&s| s > 0).collect();
        if entries.is_empty() {
            return Multiindex { entries: vec![0] };
        }
        Multiindex { entries }
    }

    pub fn ones(n: usize) -> Self {
        Self::new(std::iter::repeat_n(1, n))
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Node count n_ς.
    pub fn size(&self) -> usize {
        self.entries.iter().sum()
    }

    /// Number of entries d_ς.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    pub fn max_entry(&self) -> usize {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    pub fn is_ones(&self) -> bool {
        self.entries.iter().all(|&s| s == 1)
    }

    pub fn last(&self) -> usize {
        *self.entries.last().unwrap()
    }

    /// (s_1, …, s_j).
    pub fn prefix(&self, j: usize) -> Multiindex {
        Multiindex::new(self.entries[..j.min(self.len())].iter().copied())
    }

    /// (s_{j+1}, …, s_d).
    pub fn suffix(&self, j: usize) -> Multiindex {
        Multiindex::new(self.entries[j.min(self.len())..].iter().copied())
    }

    pub fn without_last(&self) -> Multiindex {
        self.prefix(self.len() - 1)
    }

    pub fn concat(&self, other: &Multiindex) -> Multiindex {
        Multiindex::new(self.entries.iter().chain(other.entries.iter()).copied())
    }

    pub fn reversed(&self) -> Multiindex {
        Multiindex::new(self.entries.iter().rev().copied())
    }

    /// Ordinary node positions of the bin boundaries: 0, s_1, s_1+s_2, …, n.
    pub fn cuts(&self) -> Vec<usize> {
        let mut cuts = vec![0];
        for &s in &self.entries {
            cuts.push(cuts.last().unwrap() + s);
        }
        cuts
    }

    /// Fails with a domain error unless every entry is below p̄(q).
    pub fn check_domain(&self, q: QParam) -> Result<()> {
        let rd = root_data(q);
        if rd.below_bar(self.max_entry()) {
            Ok(())
        } else {
            Err(Error::Domain { valence: self.max_entry(), threshold: rd.pminbar.unwrap() })
        }
    }
}

impl fmt::Display for Multiindex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Heights (r_1, …, r_d) of a walk; r_0 = 0 is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    heights: Vec<usize>,
}

impl Walk {
    pub fn new(heights: Vec<usize>) -> Self {
        Walk { heights }
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    /// r_j with r_0 = 0.
    pub fn height(&self, j: usize) -> usize {
        if j == 0 {
            0
        } else {
            self.heights[j - 1]
        }
    }

    pub fn defect(&self) -> usize {
        *self.heights.last().unwrap_or(&0)
    }

    pub fn is_valid_over(&self, sigma: &Multiindex) -> bool {
        self.heights.len() == sigma.len()
            && (0..sigma.len()).all(|j| two_box_set(self.height(j), sigma.entries()[j]).contains(&self.height(j + 1)))
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.heights.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// {|r−t|, |r−t|+2, …, r+t}.
pub fn two_box_set(r: usize, t: usize) -> Vec<usize> {
    (r.abs_diff(t)..=r + t).step_by(2).collect()
}

/// Every multiindex with n_ς ≤ `max_size` and entries ≤ `max_entry`, by size
/// and then lexicographically.
pub fn compositions(max_size: usize, max_entry: usize) -> Vec<Multiindex> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for e in &layer {
            let total: usize = e.iter().sum();
            for k in 1..=max_entry.min(max_size - total) {
                let mut f = e.clone();
                f.push(k);
                next.push(f);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort_by_key(|e| (e.iter().sum::<usize>(), e.clone()));
    out.into_iter().map(Multiindex::new).collect()
}

/// Smallest element of the defect set, by the left-to-right recursion.
pub fn s_min(sigma: &Multiindex) -> usize {
    let mut smin = sigma.entries()[0];
    let mut smax = smin;
    for &next in &sigma.entries()[1..] {
        smin = if next <= smin {
            smin - next
        } else if next < smax {
            (smin + next) % 2
        } else {
            next - smax
        };
        smax += next;
    }
    smin
}

/// The defect set E_ς = {s_min, s_min + 2, …, n_ς}.
pub fn defect_set(sigma: &Multiindex) -> Vec<usize> {
    (s_min(sigma)..=sigma.size()).step_by(2).collect()
}

/// All walks over ς ending at height s, in lexicographic order.
pub fn walks(sigma: &Multiindex, s: usize) -> Vec<Walk> {
    let entries = sigma.entries();
    let mut remaining = vec![0; entries.len() + 1];
    for j in (0..entries.len()).rev() {
        remaining[j] = remaining[j + 1] + entries[j];
    }
    let mut out = Vec::new();
    let mut heights = Vec::with_capacity(entries.len());
    fn extend(
        entries: &[usize],
        remaining: &[usize],
        s: usize,
        h: usize,
        heights: &mut Vec<usize>,
        out: &mut Vec<Walk>,
    ) {
        let j = heights.len();
        if j == entries.len() {
            if h == s {
                out.push(Walk::new(heights.clone()));
            }
            return;
        }
        for next in two_box_set(h, entries[j]) {
            if next.abs_diff(s) <= remaining[j + 1] {
                heights.push(next);
                extend(entries, remaining, s, next, heights, out);
                heights.pop();
            }
        }
    }
    extend(entries, &remaining, s, 0, &mut heights, &mut out);
    out
}

/// Counts of walks over ς by final height, accumulated bin by bin.
fn height_counts(sigma: &Multiindex) -> BTreeMap<usize, u64> {
    let mut counts = BTreeMap::from([(0usize, 1u64)]);
    for &t in sigma.entries() {
        let mut next = BTreeMap::new();
        for (&r, &c) in &counts {
            for s in two_box_set(r, t) {
                *next.entry(s).or_insert(0) += c;
            }
        }
        counts = next;
    }
    counts
}

/// D_ς^(s) from the recursion over the last entry.
pub fn dim_standard(sigma: &Multiindex, s: usize) -> u64 {
    height_counts(sigma).get(&s).copied().unwrap_or(0)
}

/// D_n^(s) = 2(s+1)/(n+s+2) · binom(n, (n+s)/2) for ς = 1⃗_n.
pub fn dim_standard_closed(n: usize, s: usize) -> u64 {
    if s > n || (n - s) % 2 == 1 {
        return 0;
    }
    let k = (n + s) / 2;
    let mut binom: u128 = 1;
    for i in 0..k.min(n - k) {
        binom = binom * (n - i) as u128 / (i + 1) as u128;
    }
    (binom * 2 * (s as u128 + 1) / (n + s + 2) as u128) as u64
}

/// Catalan number C_n.
pub fn catalan(n: usize) -> u64 {
    dim_standard_closed(2 * n, 0)
}

/// Threshold pair (Δ_{k_s}, Δ_{k_s+1}) for defect s, or `None` when p̄(q) = ∞
/// and no threshold is ever reached.
pub fn thresholds(s: usize, q: QParam) -> Option<(i64, i64)> {
    root_data(q).pminbar?;
    let (k, _) = decompose_defect(s, q);
    Some((delta(k, q).unwrap(), delta(k + 1, q).unwrap()))
}

/// Ḋ_ς^(s) from the recursion over the last entry.
pub fn dim_radical(sigma: &Multiindex, s: usize, q: QParam) -> Result<u64> {
    sigma.check_domain(q)?;
    let Some((low, high)) = thresholds(s, q) else {
        return Ok(0);
    };
    Ok(dim_radical_rec(sigma, s, low, high))
}

fn dim_radical_rec(sigma: &Multiindex, s: usize, low: i64, high: i64) -> u64 {
    if sigma.len() == 1 {
        return 0;
    }
    let head = sigma.without_last();
    let t = sigma.last() as i64;
    let head_set = defect_set(&head);
    let mut total = 0;
    for r in two_box_set(s, t as usize) {
        if !head_set.contains(&r) {
            continue;
        }
        let (ri, si) = (r as i64, s as i64);
        let apex_low = (ri + si - t) / 2;
        let apex_high = (ri + si + t) / 2;
        if high <= apex_high {
            total += dim_standard(&head, r);
        } else if low < apex_low {
            total += dim_radical_rec(&head, r, low, high);
        }
    }
    total
}

/// Ḋ_n^(s) from the single-node recursion.
pub fn dim_radical_ones(n: usize, s: usize, q: QParam) -> u64 {
    let Some(p) = root_data(q).pminbar else {
        return 0;
    };
    fn rec(n: usize, s: i64, p: u64) -> u64 {
        if s < 0 || n <= 1 || s as usize > n {
            return 0;
        }
        let r = (s as u64 + 1) % p;
        if r == 0 {
            0
        } else if r == p - 1 {
            rec(n - 1, s - 1, p) + dim_standard_closed(n - 1, s as usize + 1)
        } else {
            rec(n - 1, s - 1, p) + rec(n - 1, s + 1, p)
        }
    }
    rec(n, s as i64, p as u64)
}

/// Number of walks that, read from the right bin by bin, reach the apex
/// threshold Δ_{k_s+1} on the highest companion walk before the lowest
/// companion walk reaches Δ_{k_s}.
pub fn radical_walk_count(sigma: &Multiindex, s: usize, q: QParam) -> Result<u64> {
    sigma.check_domain(q)?;
    let Some((low, high)) = thresholds(s, q) else {
        return Ok(0);
    };
    let count = walks(sigma, s)
        .iter()
        .filter(|w| {
            for j in (1..sigma.len()).rev() {
                let (hmin, hmax) = apex_pair(sigma, w, j);
                if hmax as i64 >= high {
                    return true;
                }
                if hmin as i64 <= low {
                    return false;
                }
            }
            false
        })
        .count();
    Ok(count as u64)
}

fn apex_pair(sigma: &Multiindex, walk: &Walk, j: usize) -> (usize, usize) {
    let d = sigma.len();
    if j == d {
        let r = walk.defect();
        return (r, r);
    }
    let (r0, r1, t) = (walk.height(j), walk.height(j + 1), sigma.entries()[j]);
    ((r0 + r1 - t) / 2, (r0 + r1 + t) / 2)
}

/// (h_min,j, h_max,j): the lowest and highest apex reachable in bin j+1.
pub fn heights_minmax(sigma: &Multiindex, walk: &Walk, j: usize) -> Result<(usize, usize)> {
    if j > sigma.len() {
        return Err(Error::Index { index: j, max: sigma.len() });
    }
    Ok(apex_pair(sigma, walk, j))
}

/// (μ_j, M_j): the range of heights r_j over walks returning to zero.
pub fn mu_bounds(sigma: &Multiindex, j: usize) -> Result<(usize, usize)> {
    if j == 0 || j > sigma.len() {
        return Err(Error::Index { index: j, max: sigma.len() });
    }
    let (left, right) = (sigma.prefix(j), sigma.suffix(j));
    Ok((s_min(&left).max(s_min(&right)), left.size().min(right.size())))
}

/// μ_j extended by μ_0 = μ_d = 0.
fn mu_or_zero(sigma: &Multiindex, j: usize) -> usize {
    if j == 0 || j == sigma.len() {
        0
    } else {
        mu_bounds(sigma, j).unwrap().0
    }
}

/// max{(μ_j + μ_{j+1} + s_{j+1})/2, s_{j+1}}, the least apex in bin j+1 over
/// walks with defect zero.
pub fn min_apex(sigma: &Multiindex, j: usize) -> usize {
    let t = sigma.entries()[j];
    ((mu_or_zero(sigma, j) + mu_or_zero(sigma, j + 1) + t) / 2).max(t)
}

/// Ordinary heights h_0, …, h_n of the lowest companion walk: each bin first
/// descends as far as allowed, then ascends.
pub fn lowest_walk(sigma: &Multiindex, walk: &Walk) -> Vec<usize> {
    companion(sigma, walk, true)
}

/// Ordinary heights of the highest companion walk: ascend first, then descend.
pub fn highest_walk(sigma: &Multiindex, walk: &Walk) -> Vec<usize> {
    companion(sigma, walk, false)
}

fn companion(sigma: &Multiindex, walk: &Walk, descend_first: bool) -> Vec<usize> {
    let mut h = vec![0];
    for (j, &t) in sigma.entries().iter().enumerate() {
        let (r0, r1) = (walk.height(j), walk.height(j + 1));
        let downs = (r0 + t - r1) / 2;
        let ups = t - downs;
        let mut cur = r0;
        let steps: Vec<bool> = if descend_first {
            std::iter::repeat_n(false, downs).chain(std::iter::repeat_n(true, ups)).collect()
        } else {
            std::iter::repeat_n(true, ups).chain(std::iter::repeat_n(false, downs)).collect()
        };
        for up in steps {
            cur = if up { cur + 1 } else { cur - 1 };
            h.push(cur);
        }
    }
    h
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TailKind {
    Moderate,
    /// The lowest companion walk reaches Δ_{k_s+1}.
    Radical1,
    /// The scan halts at the J-th bin boundary strictly between the thresholds.
    Radical2,
}

impl TailKind {
    pub fn is_radical(&self) -> bool {
        !matches!(self, TailKind::Moderate)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailInfo {
    /// J, with `None` standing for −∞.
    pub j_index: Option<usize>,
    pub kind: TailKind,
    /// (r_J, …, r_d); empty when J = −∞.
    pub tail: Vec<usize>,
    /// First ordinary cut position whose vertex is closed; positions
    /// `first_closed..n` are closed, so `first_closed >= n` closes nothing.
    pub first_closed: usize,
}

/// J-index, tail kind and closure range of a walk.
pub fn tail_info(sigma: &Multiindex, walk: &Walk, q: QParam) -> Result<TailInfo> {
    sigma.check_domain(q)?;
    let n = sigma.size();
    let d = sigma.len();
    let all_closed = TailInfo { j_index: None, kind: TailKind::Moderate, tail: Vec::new(), first_closed: 1 };
    let Some((low, high)) = thresholds(walk.defect(), q) else {
        return Ok(all_closed);
    };
    let j_index = (0..=d).rev().find(|&j| {
        let (hmin, hmax) = apex_pair(sigma, walk, j);
        hmin as i64 <= low || hmax as i64 >= high
    });
    let Some(jj) = j_index else {
        return Ok(all_closed);
    };
    let tail = (jj..=d).map(|j| walk.height(j)).collect();
    if jj == d {
        return Ok(TailInfo { j_index, kind: TailKind::Moderate, tail, first_closed: n });
    }
    let lowest = lowest_walk(sigma, walk);
    let cut = sigma.cuts()[jj];
    let r_j = walk.height(jj) as i64;
    for c in (cut.max(1)..n).rev() {
        let h = lowest[c] as i64;
        let kind = if h == high {
            TailKind::Radical1
        } else if c == cut && low < r_j && r_j < high {
            TailKind::Radical2
        } else if h == low {
            TailKind::Moderate
        } else {
            continue;
        };
        return Ok(TailInfo { j_index, kind, tail, first_closed: c });
    }
    Ok(TailInfo { j_index, kind: TailKind::Moderate, tail, first_closed: cut.max(1) })
}

/// Membership q ∈ Non_ς^(s), where the form on the (ς, s) module is nondegenerate.
pub fn in_non(sigma: &Multiindex, s: usize, q: QParam) -> bool {
    let Some(p) = root_data(q).pminbar else {
        return true;
    };
    let n = sigma.size();
    let (_, r) = decompose_defect(s, q);
    if r == 0 {
        return true;
    }
    let half = (n.saturating_sub(s) / 2) as u64;
    half + r < p as u64
}

/// q ∈ Non_ς: nondegenerate on every sector of E_ς.
pub fn in_non_all(sigma: &Multiindex, q: QParam) -> bool {
    defect_set(sigma).into_iter().all(|s| in_non(sigma, s, q))
}

/// q ∈ Non_n for ς = 1⃗_n: n < p̄(q), or n odd with q = ±i.
pub fn in_non_ones(n: usize, q: QParam) -> bool {
    let rd = root_data(q);
    rd.below_bar(n) || (n % 2 == 1 && rd.pminbar == Some(2))
}

/// q ∈ Tot_ς^(s), where the form on the (ς, s) module vanishes identically.
pub fn in_tot(sigma: &Multiindex, s: usize, q: QParam) -> bool {
    let Some(p) = root_data(q).pminbar else {
        return false;
    };
    if s + 1 >= p as usize {
        return false;
    }
    let ws = walks(sigma, s);
    if ws.is_empty() {
        return false;
    }
    ws.iter().map(|w| (0..sigma.len()).map(|j| apex_pair(sigma, w, j).1).max().unwrap() + 1).min().unwrap()
        >= p as usize
}
