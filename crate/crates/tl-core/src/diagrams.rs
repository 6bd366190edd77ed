//! Ordinary link patterns, link diagrams and tangles.
//!
//! A link diagram with `n` left nodes and `m` right nodes is stored as its
//! pair of halves: the left pattern and the right pattern, each with the same
//! number `s` of defects, where the k-th left defect is joined to the k-th
//! right defect by a crossing link. Nodes are numbered from the top, starting
//! at 0. Composition `a ∘ b` glues the right side of `a` to the left side of
//! `b`.

use crate::combinat::{walks, Multiindex};
use crate::error::{Error, Result};
use crate::scalars::{int_fraction, int_poly_mul, share_denominator, QParam, Scalar, SharedDenominator};
use serde_json::{json, Value};
use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkPattern {
    pairing: Vec<Option<usize>>,
}

impl LinkPattern {
    /// Validates that `pairing` is a planar involution with no defect under an arc.
    pub fn new(pairing: Vec<Option<usize>>) -> Result<Self> {
        let n = pairing.len();
        for (i, &p) in pairing.iter().enumerate() {
            if let Some(j) = p {
                if j >= n || j == i || pairing[j] != Some(i) {
                    return Err(Error::InvalidPattern(format!("node {i} is not paired consistently")));
                }
                let (lo, hi) = (i.min(j), i.max(j));
                for k in lo + 1..hi {
                    match pairing[k] {
                        Some(l) if l > lo && l < hi => {}
                        _ => {
                            return Err(Error::InvalidPattern(format!(
                                "arc {{{lo},{hi}}} is crossed or covers a defect"
                            )))
                        }
                    }
                }
            }
        }
        Ok(LinkPattern { pairing })
    }

    /// Pattern with defects everywhere.
    pub fn defects_only(n: usize) -> Self {
        LinkPattern { pairing: vec![None; n] }
    }

    /// The pattern `2k` nodes wide whose arcs are all nested around the centre.
    pub fn nested(k: usize) -> Self {
        LinkPattern { pairing: (0..2 * k).map(|i| Some(2 * k - 1 - i)).collect() }
    }

    /// Builds a pattern from the heights h_0 = 0, h_1, …, h_n of an ordinary
    /// walk: a down step closes the most recent open up step.
    pub fn from_heights(heights: &[usize]) -> Result<Self> {
        if heights.first() != Some(&0) {
            return Err(Error::InvalidPattern("walk must start at height 0".into()));
        }
        let n = heights.len() - 1;
        let mut pairing = vec![None; n];
        let mut open = Vec::new();
        for i in 0..n {
            if heights[i + 1] == heights[i] + 1 {
                open.push(i);
            } else if heights[i + 1] + 1 == heights[i] {
                let j = open.pop().unwrap();
                pairing[i] = Some(j);
                pairing[j] = Some(i);
            } else {
                return Err(Error::InvalidPattern(format!("step {i} is not ±1")));
            }
        }
        Ok(LinkPattern { pairing })
    }

    /// Heights h_0, …, h_n of the walk encoding this pattern.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0];
        for (i, p) in self.pairing.iter().enumerate() {
            let last = *h.last().unwrap();
            h.push(match p {
                Some(j) if *j < i => last - 1,
                _ => last + 1,
            });
        }
        h
    }

    pub fn n(&self) -> usize {
        self.pairing.len()
    }

    pub fn pairing(&self) -> &[Option<usize>] {
        &self.pairing
    }

    pub fn defect_count(&self) -> usize {
        self.pairing.iter().filter(|p| p.is_none()).count()
    }

    pub fn defect_positions(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.pairing[i].is_none()).collect()
    }

    pub fn partner(&self, i: usize) -> Option<usize> {
        self.pairing[i]
    }

    /// Arcs as (upper, lower) endpoint pairs, sorted by upper endpoint.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n()).filter_map(|i| self.pairing[i].filter(|&j| j > i).map(|j| (i, j))).collect()
    }

    /// Reverses the node order.
    pub fn tilde(&self) -> Self {
        let n = self.n();
        LinkPattern { pairing: self.pairing.iter().rev().map(|p| p.map(|j| n - 1 - j)).collect() }
    }

    /// Juxtaposes `other` below `self`.
    pub fn concat(&self, other: &LinkPattern) -> Self {
        let off = self.n();
        let mut pairing = self.pairing.clone();
        pairing.extend(other.pairing.iter().map(|p| p.map(|j| j + off)));
        LinkPattern { pairing }
    }

    pub fn to_json(&self) -> Value {
        json!({ "n": self.n(), "pairing": self.pairing })
    }
}

impl fmt::Display for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.pairing.iter().enumerate() {
            let c = match p {
                None => '|',
                Some(j) if *j > i => '(',
                _ => ')',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// All (n, s)-link patterns in the lexicographic order of their walks.
pub fn enumerate_patterns(n: usize, s: usize) -> Vec<LinkPattern> {
    walks(&Multiindex::ones(n), s)
        .into_iter()
        .map(|w| {
            let mut h = vec![0];
            h.extend(w.heights().iter().copied().take(n));
            LinkPattern::from_heights(&h).unwrap()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkDiagram {
    left: LinkPattern,
    right: LinkPattern,
}

impl LinkDiagram {
    /// The sandwich diagram joining the defects of `left` to those of `right` in order.
    pub fn new(left: LinkPattern, right: LinkPattern) -> Result<Self> {
        let (a, b) = (left.defect_count(), right.defect_count());
        if a != b {
            return Err(Error::DimensionMismatch { left: a, right: b });
        }
        Ok(LinkDiagram { left, right })
    }

    pub fn identity(n: usize) -> Self {
        LinkDiagram { left: LinkPattern::defects_only(n), right: LinkPattern::defects_only(n) }
    }

    /// U_i on n strands, joining nodes i and i+1 (counted from 1) on both sides.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::Index { index: i, max: n.saturating_sub(1) });
        }
        let half = cup_at(n, i);
        Ok(LinkDiagram { left: half.clone(), right: half })
    }

    /// L_i: n left nodes, n−2 right nodes, with a left link at nodes i, i+1.
    pub fn left_gen(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::Index { index: i, max: n.saturating_sub(1) });
        }
        Ok(LinkDiagram { left: cup_at(n, i), right: LinkPattern::defects_only(n - 2) })
    }

    /// R_j: m−2 left nodes, m right nodes, with a right link at nodes j, j+1.
    pub fn right_gen(m: usize, j: usize) -> Result<Self> {
        Ok(Self::left_gen(m, j)?.dagger())
    }

    pub fn left(&self) -> &LinkPattern {
        &self.left
    }

    pub fn right(&self) -> &LinkPattern {
        &self.right
    }

    pub fn n(&self) -> usize {
        self.left.n()
    }

    pub fn m(&self) -> usize {
        self.right.n()
    }

    /// Number of crossing links.
    pub fn through(&self) -> usize {
        self.left.defect_count()
    }

    /// Reflection swapping left and right.
    pub fn dagger(&self) -> Self {
        LinkDiagram { left: self.right.clone(), right: self.left.clone() }
    }

    /// Reflection reversing the node order on both sides.
    pub fn tilde(&self) -> Self {
        LinkDiagram { left: self.left.tilde(), right: self.right.tilde() }
    }

    pub fn tensor(&self, other: &LinkDiagram) -> Self {
        LinkDiagram { left: self.left.concat(&other.left), right: self.right.concat(&other.right) }
    }

    /// Perfect matching on n + m points: left node i is point i, right node j is point n + j.
    pub fn flat(&self) -> Vec<usize> {
        let n = self.n();
        let mut out = vec![0; n + self.m()];
        for (i, p) in self.left.pairing.iter().enumerate() {
            if let Some(j) = p {
                out[i] = *j;
            }
        }
        for (i, p) in self.right.pairing.iter().enumerate() {
            if let Some(j) = p {
                out[n + i] = n + j;
            }
        }
        for (a, b) in self.left.defect_positions().into_iter().zip(self.right.defect_positions()) {
            out[a] = n + b;
            out[n + b] = a;
        }
        out
    }

    pub fn from_flat(n: usize, m: usize, flat: &[usize]) -> Self {
        let left = (0..n).map(|i| (flat[i] < n).then_some(flat[i])).collect();
        let right = (0..m).map(|j| (flat[n + j] >= n).then(|| flat[n + j] - n)).collect();
        LinkDiagram { left: LinkPattern { pairing: left }, right: LinkPattern { pairing: right } }
    }

    /// The (n+m)-node pattern read around the boundary: left nodes top to
    /// bottom, then right nodes bottom to top.
    pub fn unfold(&self) -> LinkPattern {
        let (n, m) = (self.n(), self.m());
        let pos = |p: usize| if p < n { p } else { n + m - 1 - (p - n) };
        let flat = self.flat();
        let mut pairing = vec![None; n + m];
        for (p, &q) in flat.iter().enumerate() {
            pairing[pos(p)] = Some(pos(q));
        }
        LinkPattern { pairing }
    }

    /// Inverse of `unfold` for a defect-free pattern split after `n` nodes.
    pub fn fold(pattern: &LinkPattern, n: usize) -> Result<Self> {
        let total = pattern.n();
        if pattern.defect_count() > 0 || n > total {
            return Err(Error::InvalidPattern("fold needs a defect-free pattern".into()));
        }
        let m = total - n;
        let point = |b: usize| if b < n { b } else { n + (total - 1 - b) };
        let mut flat = vec![0; total];
        for b in 0..total {
            flat[point(b)] = point(pattern.pairing[b].unwrap());
        }
        Ok(Self::from_flat(n, m, &flat))
    }

    pub fn to_json(&self) -> Value {
        json!({ "left": self.left.to_json(), "right": self.right.to_json() })
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{} {}|", self.left, self.right)
    }
}

fn cup_at(n: usize, i: usize) -> LinkPattern {
    let mut pairing = vec![None; n];
    pairing[i - 1] = Some(i);
    pairing[i] = Some(i - 1);
    LinkPattern { pairing }
}

/// Distinct values in order of first appearance, and each item's index among them.
fn intern<'a>(items: impl Iterator<Item = &'a Scalar>) -> (Vec<usize>, Vec<&'a Scalar>) {
    let mut index: HashMap<&Scalar, usize> = HashMap::new();
    let mut values = Vec::new();
    let ids = items
        .map(|x| {
            *index.entry(x).or_insert_with(|| {
                values.push(x);
                values.len() - 1
            })
        })
        .collect();
    (ids, values)
}

/// Composes two diagrams, returning the result and the number of closed loops.
pub fn compose_diagrams(a: &LinkDiagram, b: &LinkDiagram) -> Result<(LinkDiagram, usize)> {
    if a.m() != b.n() {
        return Err(Error::DimensionMismatch { left: a.m(), right: b.n() });
    }
    let (n, m, k) = (a.n(), a.m(), b.m());
    let (fa, fb) = (a.flat(), b.flat());
    let mut seen = vec![false; m];
    let mut out = vec![0; n + k];
    // Follow a path entering the middle at `mid` from side a; returns the outer endpoint.
    let run = |mut mid: usize, from_a: bool, seen: &mut Vec<bool>| -> usize {
        let mut from_a = from_a;
        loop {
            seen[mid] = true;
            if from_a {
                let next = fb[mid];
                if next >= m {
                    return n + (next - m);
                }
                mid = next;
            } else {
                let next = fa[n + mid];
                if next < n {
                    return next;
                }
                mid = next - n;
            }
            from_a = !from_a;
        }
    };
    for i in 0..n {
        out[i] = if fa[i] < n { fa[i] } else { run(fa[i] - n, true, &mut seen) };
    }
    for l in 0..k {
        out[n + l] = if fb[m + l] >= m { n + (fb[m + l] - m) } else { run(fb[m + l], false, &mut seen) };
    }
    let mut loops = 0;
    for start in 0..m {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut x = start;
        loop {
            seen[x] = true;
            let y = fa[n + x] - n;
            seen[y] = true;
            x = fb[y];
            if x == start {
                break;
            }
        }
    }
    Ok((LinkDiagram::from_flat(n, k, &out), loops))
}

fn power(base: &Scalar, e: usize) -> Scalar {
    let mut out = Scalar::one();
    for _ in 0..e {
        out = &out * base;
    }
    out
}

/// A formal linear combination of (n, m)-link diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tangle {
    n: usize,
    m: usize,
    terms: BTreeMap<LinkDiagram, Scalar>,
}

impl Tangle {
    pub fn zero(n: usize, m: usize) -> Self {
        Tangle { n, m, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagram(LinkDiagram::identity(n))
    }

    pub fn from_diagram(d: LinkDiagram) -> Self {
        Self::from_term(d, Scalar::one())
    }

    pub fn from_term(d: LinkDiagram, c: Scalar) -> Self {
        let mut t = Tangle::zero(d.n(), d.m());
        t.add_term(d, c);
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<LinkDiagram, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, d: &LinkDiagram) -> Scalar {
        self.terms.get(d).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, d: LinkDiagram, c: Scalar) {
        debug_assert_eq!((d.n(), d.m()), (self.n, self.m));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Tangle) -> Tangle {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Tangle) -> Tangle {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Tangle {
        let mut out = Tangle::zero(self.n, self.m);
        for (d, x) in &self.terms {
            out.add_term(d.clone(), x * c);
        }
        out
    }

    pub fn compose(&self, other: &Tangle, q: QParam) -> Result<Tangle> {
        if self.m != other.n {
            return Err(Error::DimensionMismatch { left: self.m, right: other.n });
        }
        let nu = q.fugacity();
        let mut nu_powers: Vec<Scalar> = vec![Scalar::one()];
        for _ in 0..self.m / 2 {
            let next = nu_powers.last().unwrap() * &nu;
            nu_powers.push(next);
        }
        // Coefficients repeat heavily: multiply once per distinct (left, right, loops).
        let (left_ids, left_values) = intern(self.terms.values());
        let (right_ids, right_values) = intern(other.terms.values());
        let mut counts: BTreeMap<LinkDiagram, HashMap<(usize, usize, usize), i64>> = BTreeMap::new();
        for (a, &i) in self.terms.keys().zip(&left_ids) {
            for (b, &j) in other.terms.keys().zip(&right_ids) {
                let (d, loops) = compose_diagrams(a, b)?;
                *counts.entry(d).or_default().entry((i, j, loops)).or_default() += 1;
            }
        }
        let powers: Vec<&Scalar> = nu_powers.iter().collect();
        let shared = (share_denominator(&left_values), share_denominator(&right_values), share_denominator(&powers));
        if let (Some(l), Some(r), Some(v)) = shared {
            if let Some(out) = self.sum_shared(other.m, &counts, [&l, &r, &v]) {
                return Ok(out);
            }
        }
        let mut products: HashMap<(usize, usize, usize), Scalar> = HashMap::new();
        let mut out = Tangle::zero(self.n, other.m);
        for (d, weights) in counts {
            let mut sum = Scalar::zero();
            for ((i, j, loops), count) in weights {
                let product = products
                    .entry((i, j, loops))
                    .or_insert_with(|| left_values[i] * right_values[j] * &nu_powers[loops]);
                sum += Scalar::from_int(count) * &*product;
            }
            out.add_term(d, sum);
        }
        Ok(out)
    }

    /// Composition sums in machine integers over the product of shared
    /// denominators; `None` on overflow.
    fn sum_shared(
        &self,
        m: usize,
        counts: &BTreeMap<LinkDiagram, HashMap<(usize, usize, usize), i64>>,
        [l, r, v]: [&SharedDenominator; 3],
    ) -> Option<Tangle> {
        let den = l.den.mul(&r.den).mul(&v.den);
        let mut products: HashMap<(usize, usize, usize), Vec<i128>> = HashMap::new();
        let mut out = Tangle::zero(self.n, m);
        for (d, weights) in counts {
            let mut acc: Vec<i128> = Vec::new();
            for (&(i, j, loops), &count) in weights {
                let p = match products.entry((i, j, loops)) {
                    Entry::Occupied(e) => e.into_mut(),
                    Entry::Vacant(e) => e.insert(int_poly_mul(&int_poly_mul(&l.nums[i], &r.nums[j])?, &v.nums[loops])?),
                };
                if acc.len() < p.len() {
                    acc.resize(p.len(), 0);
                }
                for (a, c) in acc.iter_mut().zip(p) {
                    *a = a.checked_add(c.checked_mul(count as i128)?)?;
                }
            }
            out.add_term(d.clone(), int_fraction(&acc, &den).ok()?);
        }
        Some(out)
    }

    pub fn tensor(&self, other: &Tangle) -> Tangle {
        let mut out = Tangle::zero(self.n + other.n, self.m + other.m);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.tensor(b), x * y);
            }
        }
        out
    }

    /// 1_before ⊗ self ⊗ 1_after.
    pub fn pad(&self, before: usize, after: usize) -> Tangle {
        Tangle::identity(before).tensor(self).tensor(&Tangle::identity(after))
    }

    pub fn dagger(&self) -> Tangle {
        Tangle { n: self.m, m: self.n, terms: self.terms.iter().map(|(d, c)| (d.dagger(), c.clone())).collect() }
    }

    pub fn tilde(&self) -> Tangle {
        Tangle { n: self.n, m: self.m, terms: self.terms.iter().map(|(d, c)| (d.tilde(), c.clone())).collect() }
    }

    /// Closes the bottom `s` strands of an (r+s, r+s)-tangle to the right.
    pub fn partial_trace(&self, s: usize, q: QParam) -> Result<Tangle> {
        if self.n != self.m || s > self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: self.m });
        }
        let r = self.n - s;
        let cap = LinkDiagram {
            left: LinkPattern::defects_only(r).concat(&LinkPattern::nested(s)),
            right: LinkPattern::defects_only(r),
        };
        Tangle::from_diagram(cap.dagger())
            .compose(&self.tensor(&Tangle::identity(s)), q)?
            .compose(&Tangle::from_diagram(cap), q)
    }

    /// Full closure of a square tangle into a scalar.
    pub fn close(&self, q: QParam) -> Result<Scalar> {
        Ok(self.partial_trace(self.n, q)?.coefficient(&LinkDiagram::identity(0)))
    }

    /// Applies the tangle to a link state; terms joining two defects of the
    /// operand are dropped.
    pub fn act(&self, x: &LinkState, q: QParam) -> Result<LinkState> {
        if self.m != x.n {
            return Err(Error::DimensionMismatch { left: self.m, right: x.n });
        }
        let nu = q.fugacity();
        let mut out = LinkState::zero(self.n);
        for (d, c) in &self.terms {
            for (pattern, y) in &x.terms {
                let s = pattern.defect_count();
                let state = LinkDiagram { left: pattern.clone(), right: LinkPattern::defects_only(s) };
                let (res, loops) = compose_diagrams(d, &state)?;
                if res.through() < s {
                    continue;
                }
                out.add_term(res.left, c * y * power(&nu, loops));
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(d, c)| json!({ "diagram": d.to_json(), "scalar": c.to_json() })).collect())
    }
}

/// A formal linear combination of link patterns on n nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkState {
    n: usize,
    terms: BTreeMap<LinkPattern, Scalar>,
}

impl LinkState {
    pub fn zero(n: usize) -> Self {
        LinkState { n, terms: BTreeMap::new() }
    }

    pub fn from_pattern(p: LinkPattern) -> Self {
        let mut out = LinkState::zero(p.n());
        out.add_term(p, Scalar::one());
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<LinkPattern, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &LinkPattern) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, p: LinkPattern, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(p.clone()).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn add(&self, other: &LinkState) -> LinkState {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> LinkState {
        let mut out = LinkState::zero(self.n);
        for (p, x) in &self.terms {
            out.add_term(p.clone(), x * c);
        }
        out
    }

    pub fn tilde(&self) -> LinkState {
        LinkState { n: self.n, terms: self.terms.iter().map(|(p, c)| (p.tilde(), c.clone())).collect() }
    }
}

/// ⟨α, β⟩ for two patterns: ν per loop, zero unless every defect of one
/// meets a defect of the other.
pub fn pattern_bilinear(a: &LinkPattern, b: &LinkPattern, q: QParam) -> Result<Scalar> {
    let (sa, sb) = (a.defect_count(), b.defect_count());
    if sa != sb {
        if a.n() != b.n() {
            return Err(Error::DimensionMismatch { left: a.n(), right: b.n() });
        }
        return Ok(Scalar::zero());
    }
    let left = LinkDiagram { left: LinkPattern::defects_only(sa), right: a.clone() };
    let right = LinkDiagram { left: b.clone(), right: LinkPattern::defects_only(sb) };
    let (res, loops) = compose_diagrams(&left, &right)?;
    if res.through() < sa {
        return Ok(Scalar::zero());
    }
    Ok(power(&q.fugacity(), loops))
}

/// Bilinear extension of `pattern_bilinear`.
pub fn bilinear(x: &LinkState, y: &LinkState, q: QParam) -> Result<Scalar> {
    let mut total = Scalar::zero();
    for (a, c) in &x.terms {
        for (b, d) in &y.terms {
            let v = pattern_bilinear(a, b, q)?;
            if !v.is_zero() {
                total += c * d * v;
            }
        }
    }
    Ok(total)
}

pub fn sandwich(alpha: &LinkPattern, beta: &LinkPattern) -> Result<LinkDiagram> {
    LinkDiagram::new(alpha.clone(), beta.clone())
}

/// ⎸α β⎸ γ on the defect sector of β, computed by acting with the sandwich
/// diagram. A γ with fewer defects caps crossing links of the sandwich
/// together, which is a turn-back in that sector.
pub fn ridout_action(alpha: &LinkPattern, beta: &LinkPattern, gamma: &LinkPattern, q: QParam) -> Result<LinkState> {
    if gamma.defect_count() != beta.defect_count() {
        if gamma.n() != beta.n() {
            return Err(Error::DimensionMismatch { left: beta.n(), right: gamma.n() });
        }
        return Ok(LinkState::zero(alpha.n()));
    }
    Tangle::from_diagram(sandwich(alpha, beta)?).act(&LinkState::from_pattern(gamma.clone()), q)
}

/// Every (n, m)-link diagram, grouped by increasing crossing-link count.
pub fn all_diagrams(n: usize, m: usize) -> Vec<LinkDiagram> {
    let mut out = Vec::new();
    if (n + m) % 2 == 1 {
        return out;
    }
    for s in (0..=n.min(m)).filter(|s| (n - s).is_multiple_of(2)) {
        let lefts = enumerate_patterns(n, s);
        let rights = enumerate_patterns(m, s);
        for a in &lefts {
            for b in &rights {
                out.push(LinkDiagram { left: a.clone(), right: b.clone() });
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Left(usize),
    Right(usize),
}

/// L_{i_k} ⋯ L_{i_1} 1_s R_{j_1} ⋯ R_{j_l} with increasing indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardWord {
    pub lefts: Vec<usize>,
    pub through: usize,
    pub rights: Vec<usize>,
}

impl StandardWord {
    /// Generators in product order, left to right.
    pub fn word(&self) -> Vec<Generator> {
        let mut out: Vec<Generator> = self.lefts.iter().rev().map(|&i| Generator::Left(i)).collect();
        out.extend(self.rights.iter().map(|&j| Generator::Right(j)));
        out
    }

    /// Multiplies the word out.
    pub fn evaluate(&self, q: QParam) -> Result<Tangle> {
        let mut t = Tangle::identity(self.through);
        for (k, &i) in self.lefts.iter().enumerate() {
            let size = self.through + 2 * (k + 1);
            t = Tangle::from_diagram(LinkDiagram::left_gen(size, i)?).compose(&t, q)?;
        }
        for (k, &j) in self.rights.iter().enumerate() {
            let size = self.through + 2 * (k + 1);
            t = t.compose(&Tangle::from_diagram(LinkDiagram::right_gen(size, j)?), q)?;
        }
        Ok(t)
    }
}

impl fmt::Display for StandardWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in self.lefts.iter().rev() {
            write!(f, "L{i} ")?;
        }
        write!(f, "1[{}]", self.through)?;
        for j in &self.rights {
            write!(f, " R{j}")?;
        }
        Ok(())
    }
}

/// Indices of the links of a pattern in insertion order: the link with the
/// lowest upper endpoint is removed first, since it encloses nothing.
fn insertion_indices(pattern: &LinkPattern) -> Vec<usize> {
    let mut current = pattern.clone();
    let mut removed = Vec::new();
    while let Some(&(a, _)) = current.arcs().last() {
        removed.push(a + 1);
        let pairing: Vec<Option<usize>> = current
            .pairing
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != a && i != a + 1)
            .map(|(_, p)| p.map(|j| if j > a + 1 { j - 2 } else { j }))
            .collect();
        current = LinkPattern { pairing };
    }
    removed.reverse();
    removed
}

pub fn standard_form(d: &LinkDiagram) -> StandardWord {
    StandardWord { lefts: insertion_indices(&d.left), through: d.through(), rights: insertion_indices(&d.right) }
}
