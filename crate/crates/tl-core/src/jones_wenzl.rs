//! Jones–Wenzl projectors and the valenced layer built on them.
//!
//! A valenced link pattern over ς is stored as its walk. Its ordinary
//! picture ("split" form) puts, inside each bin, the links that close earlier
//! arcs above the links that open new ones; a pattern is "special" when no arc
//! has both endpoints in one bin, and special patterns are exactly the split
//! forms. Every non-identity projector term puts a cup inside a bin, so
//! merging after a projector is the same as merging before it.

use crate::combinat::{defect_set, lowest_walk, two_box_set, Multiindex, Walk};
use crate::diagrams::{LinkDiagram, LinkPattern, LinkState, Tangle};
use crate::error::{Error, Result};
use crate::scalars::{qint, root_data, QParam, Scalar};
use once_cell::sync::Lazy;
use serde_json::{json, Value};
use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

static MAX_PROJECTOR_SIZE: AtomicUsize = AtomicUsize::new(8);
static PROJECTORS: Lazy<Mutex<HashMap<(usize, QParam), Arc<Tangle>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Largest projector `jw` will expand.
pub fn max_projector_size() -> usize {
    MAX_PROJECTOR_SIZE.load(Ordering::Relaxed)
}

pub fn set_max_projector_size(limit: usize) {
    MAX_PROJECTOR_SIZE.store(limit, Ordering::Relaxed);
}

/// The Jones–Wenzl projector P_s as an expanded tangle.
pub fn jw(s: usize, q: QParam) -> Result<Arc<Tangle>> {
    let rd = root_data(q);
    if !rd.below_bar(s) {
        return Err(Error::Domain { valence: s, threshold: rd.pminbar.unwrap() });
    }
    let limit = max_projector_size();
    if s > limit {
        return Err(Error::ProjectorTooLarge { size: s, limit });
    }
    if let Some(p) = PROJECTORS.lock().unwrap().get(&(s, q)) {
        return Ok(p.clone());
    }
    let p = if s <= 1 {
        Tangle::identity(s)
    } else {
        let prev = jw(s - 1, q)?.tensor(&Tangle::identity(1));
        let u = Tangle::from_diagram(LinkDiagram::generator(s, s - 1)?);
        let coef = qint(s as i64 - 1, q).checked_div(&qint(s as i64, q))?;
        // P_{s-1}⊗1 kills every term with an arc among its first s-1 points.
        let mut right = Tangle::zero(s, s);
        for (d, c) in u.compose(&prev, q)?.terms() {
            let flat = d.flat();
            if (0..s - 1).all(|i| flat[i] >= s - 1) {
                right.add_term(d.clone(), c.clone());
            }
        }
        let sandwich = prev.compose(&right, q)?;
        prev.add(&sandwich.scale(&coef))
    };
    let p = Arc::new(p);
    PROJECTORS.lock().unwrap().insert((s, q), p.clone());
    Ok(p)
}

/// Closure of P_s into a loop.
pub fn close_loop(s: usize, q: QParam) -> Result<Scalar> {
    jw(s, q)?.close(q)
}

fn check_sigma(sigma: &Multiindex, q: QParam) -> Result<()> {
    sigma.check_domain(q)?;
    let limit = max_projector_size();
    if sigma.max_entry() > limit {
        return Err(Error::ProjectorTooLarge { size: sigma.max_entry(), limit });
    }
    Ok(())
}

/// The ordinary pattern of a valenced pattern.
pub fn split(sigma: &Multiindex, walk: &Walk) -> LinkPattern {
    LinkPattern::from_heights(&lowest_walk(sigma, walk)).unwrap()
}

/// The walk of a special pattern, or `None` if some arc stays inside a bin.
pub fn merge(sigma: &Multiindex, pattern: &LinkPattern) -> Option<Walk> {
    let cuts = sigma.cuts();
    let mut bin = vec![0; pattern.n()];
    for j in 0..sigma.len() {
        for slot in &mut bin[cuts[j]..cuts[j + 1]] {
            *slot = j;
        }
    }
    if pattern.arcs().iter().any(|&(a, b)| bin[a] == bin[b]) {
        return None;
    }
    let h = pattern.heights();
    Some(Walk::new(cuts[1..].iter().map(|&c| h[c]).collect()))
}

/// P_ς = P_{s_1} ⊗ ⋯ ⊗ P_{s_d}.
pub fn composite_projector(sigma: &Multiindex, q: QParam) -> Result<Tangle> {
    check_sigma(sigma, q)?;
    let mut out = Tangle::identity(0);
    for &s in sigma.entries() {
        out = out.tensor(&*jw(s, q)?);
    }
    Ok(out)
}

/// P_ς applied to an ordinary link state, one box at a time.
pub fn apply_projectors(sigma: &Multiindex, x: &LinkState, q: QParam) -> Result<LinkState> {
    check_sigma(sigma, q)?;
    let n = sigma.size();
    let cuts = sigma.cuts();
    let mut out = x.clone();
    for (j, &s) in sigma.entries().iter().enumerate() {
        if s >= 2 {
            out = jw(s, q)?.pad(cuts[j], n - cuts[j + 1]).act(&out, q)?;
        }
    }
    Ok(out)
}

/// A formal linear combination of walks over ς.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValencedLinkState {
    sigma: Multiindex,
    terms: BTreeMap<Walk, Scalar>,
}

impl ValencedLinkState {
    pub fn zero(sigma: Multiindex) -> Self {
        ValencedLinkState { sigma, terms: BTreeMap::new() }
    }

    pub fn from_walk(sigma: Multiindex, walk: Walk) -> Self {
        let mut out = Self::zero(sigma);
        out.add_term(walk, Scalar::one());
        out
    }

    pub fn sigma(&self) -> &Multiindex {
        &self.sigma
    }

    pub fn terms(&self) -> &BTreeMap<Walk, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Walk) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, w: Walk, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &ValencedLinkState) -> ValencedLinkState {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> ValencedLinkState {
        let mut out = Self::zero(self.sigma.clone());
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// Coefficients in the order of `basis`.
    pub fn coordinates(&self, basis: &[Walk]) -> Vec<Scalar> {
        basis.iter().map(|w| self.coefficient(w)).collect()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.terms.iter().map(|(w, c)| json!({ "walk": w.heights(), "scalar": c.to_json() })).collect();
        json!({ "sigma": self.sigma.entries(), "terms": terms })
    }
}

/// I_ς x = P_ς applied to the split form of x.
pub fn embed(x: &ValencedLinkState, q: QParam) -> Result<LinkState> {
    let mut plain = LinkState::zero(x.sigma.size());
    for (w, c) in &x.terms {
        plain.add_term(split(&x.sigma, w), c.clone());
    }
    apply_projectors(&x.sigma, &plain, q)
}

/// P̂_ς y: the special terms of y, merged.
pub fn project_hat(sigma: &Multiindex, y: &LinkState, q: QParam) -> Result<ValencedLinkState> {
    check_sigma(sigma, q)?;
    Ok(merge_state(sigma, y))
}

fn merge_state(sigma: &Multiindex, y: &LinkState) -> ValencedLinkState {
    let mut out = ValencedLinkState::zero(sigma.clone());
    for (p, c) in y.terms() {
        if let Some(w) = merge(sigma, p) {
            out.add_term(w, c.clone());
        }
    }
    out
}

/// ⟨α, β⟩ = ⟨split α, P_ς split β⟩ on basis walks.
pub fn walk_bilinear(sigma: &Multiindex, a: &Walk, b: &Walk, q: QParam) -> Result<Scalar> {
    if a.defect() != b.defect() {
        return Ok(Scalar::zero());
    }
    let right = apply_projectors(sigma, &LinkState::from_pattern(split(sigma, b)), q)?;
    crate::diagrams::bilinear(&LinkState::from_pattern(split(sigma, a)), &right, q)
}

pub fn valenced_bilinear(x: &ValencedLinkState, y: &ValencedLinkState, q: QParam) -> Result<Scalar> {
    let sigma = &x.sigma;
    if y.sigma != *sigma {
        return Err(Error::DimensionMismatch { left: sigma.size(), right: y.sigma.size() });
    }
    check_sigma(sigma, q)?;
    let mut total = Scalar::zero();
    for (a, c) in &x.terms {
        for (b, d) in &y.terms {
            let v = walk_bilinear(sigma, a, b, q)?;
            if !v.is_zero() {
                total += c * d * v;
            }
        }
    }
    Ok(total)
}

/// A formal linear combination of (ς, π)-valenced link diagrams, each stored
/// as a pair of walks with equal defect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValencedTangle {
    left: Multiindex,
    right: Multiindex,
    terms: BTreeMap<(Walk, Walk), Scalar>,
}

impl ValencedTangle {
    pub fn zero(left: Multiindex, right: Multiindex) -> Self {
        ValencedTangle { left, right, terms: BTreeMap::new() }
    }

    pub fn from_diagram(left: Multiindex, right: Multiindex, a: Walk, b: Walk) -> Result<Self> {
        if a.defect() != b.defect() || !a.is_valid_over(&left) || !b.is_valid_over(&right) {
            return Err(Error::InvalidPattern(format!("walks {a} and {b} do not form a diagram")));
        }
        let mut out = Self::zero(left, right);
        out.add_term((a, b), Scalar::one());
        Ok(out)
    }

    /// The unit of TL_ς.
    pub fn identity(sigma: &Multiindex) -> Self {
        let w = Walk::new(sigma.cuts()[1..].to_vec());
        Self::from_diagram(sigma.clone(), sigma.clone(), w.clone(), w).unwrap()
    }

    /// I_ς as a (1⃗_n, ς)-tangle.
    pub fn embedder(sigma: &Multiindex) -> Self {
        let n = sigma.size();
        let ones = Multiindex::ones(n);
        let a = Walk::new(ones.cuts()[1..].to_vec());
        let b = Walk::new(sigma.cuts()[1..].to_vec());
        Self::from_diagram(ones, sigma.clone(), a, b).unwrap()
    }

    /// P̂_ς as a (ς, 1⃗_n)-tangle.
    pub fn projector_hat(sigma: &Multiindex) -> Self {
        Self::embedder(sigma).dagger()
    }

    /// An ordinary tangle read as a (1⃗_n, 1⃗_m)-valenced tangle.
    pub fn from_ordinary(t: &Tangle) -> Self {
        let (left, right) = (Multiindex::ones(t.n()), Multiindex::ones(t.m()));
        let mut out = Self::zero(left.clone(), right.clone());
        for (d, c) in t.terms() {
            let a = merge(&left, d.left()).unwrap();
            let b = merge(&right, d.right()).unwrap();
            out.add_term((a, b), c.clone());
        }
        out
    }

    pub fn left(&self) -> &Multiindex {
        &self.left
    }

    pub fn right(&self) -> &Multiindex {
        &self.right
    }

    pub fn terms(&self) -> &BTreeMap<(Walk, Walk), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, a: &Walk, b: &Walk) -> Scalar {
        self.terms.get(&(a.clone(), b.clone())).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, key: (Walk, Walk), c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &ValencedTangle) -> ValencedTangle {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> ValencedTangle {
        let mut out = Self::zero(self.left.clone(), self.right.clone());
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x * c);
        }
        out
    }

    pub fn dagger(&self) -> ValencedTangle {
        ValencedTangle {
            left: self.right.clone(),
            right: self.left.clone(),
            terms: self.terms.iter().map(|((a, b), c)| ((b.clone(), a.clone()), c.clone())).collect(),
        }
    }

    /// The ordinary picture, with no boxes inserted.
    pub fn split_tangle(&self) -> Tangle {
        let mut out = Tangle::zero(self.left.size(), self.right.size());
        for ((a, b), c) in &self.terms {
            let d = LinkDiagram::new(split(&self.left, a), split(&self.right, b)).unwrap();
            out.add_term(d, c.clone());
        }
        out
    }

    /// I_ς T P̂_π as an ordinary tangle: the split picture with boxes on both sides.
    pub fn to_jones_wenzl(&self, q: QParam) -> Result<Tangle> {
        composite_projector(&self.left, q)?
            .compose(&self.split_tangle(), q)?
            .compose(&composite_projector(&self.right, q)?, q)
    }

    /// Merges both sides of an ordinary (n_ς, n_π)-tangle, dropping terms with
    /// an arc inside a bin.
    pub fn merge_tangle(left: &Multiindex, right: &Multiindex, t: &Tangle) -> ValencedTangle {
        let mut out = Self::zero(left.clone(), right.clone());
        for (d, c) in t.terms() {
            if let (Some(a), Some(b)) = (merge(left, d.left()), merge(right, d.right())) {
                out.add_term((a, b), c.clone());
            }
        }
        out
    }

    /// Valenced concatenation: boxes at the glued nodes, loops to ν, loop
    /// links to zero.
    pub fn compose(&self, other: &ValencedTangle, q: QParam) -> Result<ValencedTangle> {
        if self.right != other.left {
            return Err(Error::DimensionMismatch { left: self.right.size(), right: other.left.size() });
        }
        let mid = composite_projector(&self.right, q)?;
        let x = self.split_tangle().compose(&mid, q)?.compose(&other.split_tangle(), q)?;
        Ok(Self::merge_tangle(&self.left, &other.right, &x))
    }

    pub fn act(&self, x: &ValencedLinkState, q: QParam) -> Result<ValencedLinkState> {
        if self.right != x.sigma {
            return Err(Error::DimensionMismatch { left: self.right.size(), right: x.sigma.size() });
        }
        check_sigma(&self.left, q)?;
        let y = self.split_tangle().act(&embed(x, q)?, q)?;
        Ok(merge_state(&self.left, &y))
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|((a, b), c)| json!({ "left": a.heights(), "right": b.heights(), "scalar": c.to_json() }))
            .collect();
        json!({ "left": self.left.entries(), "right": self.right.entries(), "terms": terms })
    }
}

/// Every (ς, π)-valenced link diagram, grouped by increasing defect.
pub fn valenced_basis(left: &Multiindex, right: &Multiindex) -> Vec<(Walk, Walk)> {
    let mut out = Vec::new();
    let rights = defect_set(right);
    for s in defect_set(left).into_iter().filter(|s| rights.contains(s)) {
        let a = crate::combinat::walks(left, s);
        let b = crate::combinat::walks(right, s);
        for x in &a {
            for y in &b {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    out
}

/// One member of the three-vertex family: bins i and i+1 (from 1) fuse
/// through a box of size t and split again.
pub fn three_vertex(sigma: &Multiindex, i: usize, t: usize, q: QParam) -> Result<ValencedTangle> {
    check_sigma(sigma, q)?;
    let d = sigma.len();
    if i == 0 || i >= d {
        return Err(Error::Index { index: i, max: d.saturating_sub(1) });
    }
    let (a, b) = (sigma.entries()[i - 1], sigma.entries()[i]);
    if !two_box_set(a, b).contains(&t) {
        return Err(Error::InvalidPattern(format!("{t} is not in E({a},{b})")));
    }
    let n = sigma.size();
    let cut = sigma.cuts()[i];
    let k = (a + b - t) / 2;
    let before = sigma.cuts()[i - 1];
    let fuse = LinkDiagram::new(
        LinkPattern::defects_only(cut - k)
            .concat(&LinkPattern::nested(k))
            .concat(&LinkPattern::defects_only(n - cut - k)),
        LinkPattern::defects_only(n - 2 * k),
    )?;
    let fuse = Tangle::from_diagram(fuse);
    let boxed = jw(t, q)?.pad(before, n - 2 * k - before - t);
    let x = fuse.compose(&boxed, q)?.compose(&fuse.dagger(), q)?;
    Ok(ValencedTangle::merge_tangle(sigma, sigma, &x))
}

/// The U-type generator joining bins i and i+1 (from 1) by one link on each side.
pub fn link_generator(sigma: &Multiindex, i: usize) -> Result<ValencedTangle> {
    let d = sigma.len();
    if i == 0 || i >= d {
        return Err(Error::Index { index: i, max: d.saturating_sub(1) });
    }
    let u = Tangle::from_diagram(LinkDiagram::generator(sigma.size(), sigma.cuts()[i])?);
    Ok(ValencedTangle::merge_tangle(sigma, sigma, &u))
}

#[derive(Clone, Debug)]
pub struct Generators {
    pub link_type: Vec<ValencedTangle>,
    /// (i, t, tangle) for each bin pair i and t ∈ E(s_i, s_{i+1}).
    pub three_vertex: Vec<(usize, usize, ValencedTangle)>,
    /// Set when p̄(q) ≤ n_ς, where generation is not guaranteed.
    pub unproven: bool,
}

pub fn generators(sigma: &Multiindex, q: QParam) -> Result<Generators> {
    check_sigma(sigma, q)?;
    let mut link_type = Vec::new();
    let mut family = Vec::new();
    for i in 1..sigma.len() {
        link_type.push(link_generator(sigma, i)?);
        let (a, b) = (sigma.entries()[i - 1], sigma.entries()[i]);
        for t in two_box_set(a, b) {
            if root_data(q).below_bar(t) {
                family.push((i, t, three_vertex(sigma, i, t, q)?));
            }
        }
    }
    Ok(Generators { link_type, three_vertex: family, unproven: !root_data(q).below_bar(sigma.size()) })
}

/// Dimension of the span of all products of `gens` and the unit, by closure.
pub fn generated_dimension(sigma: &Multiindex, gens: &[ValencedTangle], q: QParam) -> Result<usize> {
    let basis = valenced_basis(sigma, sigma);
    let index: HashMap<&(Walk, Walk), usize> = basis.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let to_vec = |t: &ValencedTangle| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); basis.len()];
        for (k, c) in t.terms() {
            v[index[k]] = c.clone();
        }
        v
    };
    let mut span = crate::gram::RowSpace::new(basis.len());
    let mut frontier = vec![ValencedTangle::identity(sigma)];
    span.insert(to_vec(&frontier[0]));
    while let Some(t) = frontier.pop() {
        for g in gens {
            let prod = t.compose(g, q)?;
            if span.insert(to_vec(&prod)) {
                frontier.push(prod);
            }
        }
    }
    Ok(span.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::walks;
    use crate::diagrams::{all_diagrams, enumerate_patterns};
    use crate::gram::theta;

    fn mi(v: &[usize]) -> Multiindex {
        Multiindex::new(v.iter().copied())
    }

    fn q3() -> QParam {
        QParam::root(1, 3).unwrap()
    }

    #[test]
    fn small_projectors() {
        let g = QParam::Generic;
        assert_eq!(*jw(1, g).unwrap(), Tangle::identity(1));
        let p2 = jw(2, g).unwrap();
        let u1 = LinkDiagram::generator(2, 1).unwrap();
        assert_eq!(p2.coefficient(&LinkDiagram::identity(2)), Scalar::one());
        assert_eq!(p2.coefficient(&u1), qint(2, g).inv().unwrap());
        assert_eq!(p2.coefficient(&u1), -(g.fugacity().inv().unwrap()));
        let p3 = jw(3, g).unwrap();
        assert_eq!(p3.len(), 5);
        let c = |i| p3.coefficient(&LinkDiagram::generator(3, i).unwrap());
        let two_thirds = qint(2, g).checked_div(&qint(3, g)).unwrap();
        assert_eq!((c(1), c(2)), (two_thirds.clone(), two_thirds));
        let third = qint(3, g).inv().unwrap();
        let generators = [LinkDiagram::generator(3, 1).unwrap(), LinkDiagram::generator(3, 2).unwrap()];
        for (d, x) in p3.terms() {
            if d.through() == 1 && !generators.contains(d) {
                assert_eq!(*x, third);
            }
        }
    }

    #[test]
    fn projector_properties() {
        let mut cases: Vec<(usize, QParam)> = (2..=6).map(|s| (s, QParam::Generic)).collect();
        for p in 2..=5 {
            for s in 2..p as usize {
                cases.push((s, QParam::root(1, p).unwrap()));
            }
        }
        cases.push((4, QParam::Sign(-1)));
        for (s, q) in cases {
            let p = jw(s, q).unwrap();
            assert_eq!(p.compose(&p, q).unwrap(), *p, "s={s} q={q}");
            for i in 1..s {
                let u = Tangle::from_diagram(LinkDiagram::generator(s, i).unwrap());
                assert!(u.compose(&p, q).unwrap().is_zero());
                assert!(p.compose(&u, q).unwrap().is_zero());
            }
            assert_eq!(p.dagger(), *p);
        }
        assert!(matches!(jw(3, q3()), Err(Error::Domain { .. })));
    }

    #[test]
    fn pruned_recursion_matches_the_full_sandwich() {
        for q in [QParam::Generic, QParam::root(1, 7).unwrap(), QParam::Sign(1)] {
            let mut full = Tangle::identity(1);
            for s in 2..=6 {
                let prev = full.tensor(&Tangle::identity(1));
                let u = Tangle::from_diagram(LinkDiagram::generator(s, s - 1).unwrap());
                let coef = qint(s as i64 - 1, q).checked_div(&qint(s as i64, q)).unwrap();
                let sandwich = prev.compose(&u.compose(&prev, q).unwrap(), q).unwrap();
                full = prev.add(&sandwich.scale(&coef));
                assert_eq!(full, *jw(s, q).unwrap(), "s={s} q={q}");
            }
        }
    }

    #[test]
    fn closed_projector_is_a_signed_quantum_integer() {
        let g = QParam::Generic;
        assert_eq!(close_loop(0, g).unwrap(), Scalar::one());
        assert_eq!(close_loop(1, g).unwrap(), g.fugacity());
        assert_eq!(close_loop(2, g).unwrap(), qint(3, g));
        for s in 0..=5 {
            let sign = if s % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
            assert_eq!(close_loop(s, g).unwrap(), sign * qint(s as i64 + 1, g));
        }
    }

    #[test]
    fn projector_size_limit() {
        assert!(matches!(jw(9, QParam::Generic), Err(Error::ProjectorTooLarge { size: 9, limit: 8 })));
    }

    #[test]
    fn split_and_merge_round_trip() {
        for sigma in [mi(&[1, 2]), mi(&[2, 2]), mi(&[2, 3, 1]), mi(&[3, 3])] {
            for s in defect_set(&sigma) {
                for w in walks(&sigma, s) {
                    let p = split(&sigma, &w);
                    assert_eq!(p.defect_count(), s);
                    assert_eq!(merge(&sigma, &p), Some(w));
                }
            }
            let special = (0..=sigma.size())
                .flat_map(|s| enumerate_patterns(sigma.size(), s))
                .filter(|p| merge(&sigma, p).is_some())
                .count();
            let walks_total: usize = defect_set(&sigma).iter().map(|&s| walks(&sigma, s).len()).sum();
            assert_eq!(special, walks_total);
        }
    }

    #[test]
    fn embed_then_project_is_identity() {
        for q in [QParam::Generic, QParam::Sign(1), q3()] {
            for sigma in [mi(&[2, 2]), mi(&[1, 2]), mi(&[2, 1, 2])] {
                for s in defect_set(&sigma) {
                    for w in walks(&sigma, s) {
                        let x = ValencedLinkState::from_walk(sigma.clone(), w);
                        assert_eq!(project_hat(&sigma, &embed(&x, q).unwrap(), q).unwrap(), x);
                    }
                }
            }
        }
    }

    #[test]
    fn embed_equals_projector_on_split_form() {
        let g = QParam::Generic;
        let sigma = mi(&[2, 1]);
        let pc = composite_projector(&sigma, g).unwrap();
        for s in defect_set(&sigma) {
            for w in walks(&sigma, s) {
                let plain = LinkState::from_pattern(split(&sigma, &w));
                let x = ValencedLinkState::from_walk(sigma.clone(), w);
                assert_eq!(embed(&x, g).unwrap(), pc.act(&plain, g).unwrap());
            }
        }
    }

    #[test]
    fn kernel_of_projection_is_spanned_by_non_special_patterns() {
        let g = QParam::Generic;
        let sigma = mi(&[1, 2]);
        for s in [1, 3] {
            for p in enumerate_patterns(3, s) {
                let image = project_hat(&sigma, &LinkState::from_pattern(p.clone()), g).unwrap();
                match merge(&sigma, &p) {
                    Some(w) => assert_eq!(image, ValencedLinkState::from_walk(sigma.clone(), w)),
                    None => assert!(image.is_zero()),
                }
            }
        }
    }

    #[test]
    fn composite_maps_compose_to_units() {
        let g = QParam::Generic;
        for sigma in [mi(&[1, 2]), mi(&[2, 2]), mi(&[3, 1]), mi(&[2, 1, 2])] {
            let n = sigma.size();
            let emb = ValencedTangle::embedder(&sigma);
            let hat = ValencedTangle::projector_hat(&sigma);
            assert_eq!(hat.compose(&emb, g).unwrap(), ValencedTangle::identity(&sigma));
            let pc = ValencedTangle::from_ordinary(&composite_projector(&sigma, g).unwrap());
            assert_eq!(emb.compose(&hat, g).unwrap(), pc);
            assert_eq!(pc.left(), &Multiindex::ones(n));
        }
    }

    #[test]
    fn valenced_unit_and_grading() {
        let g = QParam::Generic;
        let sigma = mi(&[2, 2]);
        let one = ValencedTangle::identity(&sigma);
        for (a, b) in valenced_basis(&sigma, &sigma) {
            let t = ValencedTangle::from_diagram(sigma.clone(), sigma.clone(), a.clone(), b.clone()).unwrap();
            assert_eq!(one.compose(&t, g).unwrap(), t);
            assert_eq!(t.compose(&one, g).unwrap(), t);
            for s in defect_set(&sigma) {
                for w in walks(&sigma, s) {
                    let x = ValencedLinkState::from_walk(sigma.clone(), w);
                    assert_eq!(one.act(&x, g).unwrap(), x);
                    if a.defect() < s {
                        assert!(t.act(&x, g).unwrap().is_zero());
                    }
                }
            }
        }
    }

    /// Bins (2) and (1,3), glued over the (1,3) side: the identity term of the
    /// size-3 box closes one loop, one single-cup term reproduces the diagram,
    /// every other term has a loop link.
    #[test]
    fn composition_through_a_size_three_box() {
        let g = QParam::Generic;
        let (left, mid) = (mi(&[2]), mi(&[1, 3]));
        let t =
            ValencedTangle::from_diagram(left.clone(), mid.clone(), Walk::new(vec![2]), Walk::new(vec![1, 2])).unwrap();
        let u = ValencedTangle::from_diagram(mid.clone(), mid.clone(), Walk::new(vec![1, 2]), Walk::new(vec![1, 2]))
            .unwrap();
        let expected = -(qint(4, g).checked_div(&qint(3, g)).unwrap());
        assert_eq!(t.compose(&u, g).unwrap(), t.scale(&expected));
    }

    /// Two size-2 boxes expand into 1, two single-cup terms and a double-cup
    /// term; the first closes a loop and the last has a turn-back path.
    #[test]
    fn action_through_two_size_two_boxes() {
        let g = QParam::Generic;
        let (left, right) = (mi(&[2]), mi(&[2, 2]));
        let t = ValencedTangle::from_diagram(left.clone(), right.clone(), Walk::new(vec![2]), Walk::new(vec![2, 2]))
            .unwrap();
        let x = ValencedLinkState::from_walk(right, Walk::new(vec![2, 2]));
        let two = qint(2, g);
        let expected = Scalar::from_int(2).checked_div(&two).unwrap() - two;
        assert_eq!(t.act(&x, g).unwrap(), ValencedLinkState::from_walk(left, Walk::new(vec![2])).scale(&expected));
    }

    #[test]
    fn three_vertex_idempotents_sum_to_one_and_are_orthogonal() {
        let g = QParam::Generic;
        for sigma in [mi(&[1, 2]), mi(&[2, 2]), mi(&[2, 3])] {
            let (a, b) = (sigma.entries()[0], sigma.entries()[1]);
            let mut total = ValencedTangle::zero(sigma.clone(), sigma.clone());
            for t in two_box_set(a, b) {
                let v = three_vertex(&sigma, 1, t, g).unwrap();
                let th = theta(a, b, t, g).unwrap();
                let weight = close_loop(t, g).unwrap().checked_div(&th).unwrap();
                total = total.add(&v.scale(&weight));
                for t2 in two_box_set(a, b) {
                    let w = three_vertex(&sigma, 1, t2, g).unwrap();
                    let prod = v.compose(&w, g).unwrap();
                    if t == t2 {
                        assert_eq!(prod, v.scale(&th.checked_div(&close_loop(t, g).unwrap()).unwrap()));
                    } else {
                        assert!(prod.is_zero());
                    }
                }
            }
            assert_eq!(total, ValencedTangle::identity(&sigma));
        }
    }

    #[test]
    fn generators_span_in_generic_mode() {
        let g = QParam::Generic;
        for sigma in [mi(&[1, 2]), mi(&[2, 2]), mi(&[1, 1, 2])] {
            let dim = valenced_basis(&sigma, &sigma).len();
            let gens = generators(&sigma, g).unwrap();
            assert!(!gens.unproven);
            assert_eq!(generated_dimension(&sigma, &gens.link_type, g).unwrap(), dim, "{sigma}");
            let family: Vec<ValencedTangle> = gens.three_vertex.iter().map(|(_, _, t)| t.clone()).collect();
            assert_eq!(generated_dimension(&sigma, &family, g).unwrap(), dim, "{sigma}");
        }
        let ones = generators(&Multiindex::ones(4), g).unwrap();
        for (i, t) in ones.link_type.iter().enumerate() {
            let u = Tangle::from_diagram(LinkDiagram::generator(4, i + 1).unwrap());
            assert_eq!(*t, ValencedTangle::from_ordinary(&u));
        }
    }

    #[test]
    fn valenced_products_match_jones_wenzl_products() {
        let g = QParam::Generic;
        for sigma in [mi(&[1, 2]), mi(&[2, 2])] {
            let basis = valenced_basis(&sigma, &sigma);
            let tangles: Vec<ValencedTangle> = basis
                .iter()
                .map(|(a, b)| ValencedTangle::from_diagram(sigma.clone(), sigma.clone(), a.clone(), b.clone()).unwrap())
                .collect();
            for x in &tangles {
                for y in &tangles {
                    let lhs = x.compose(y, g).unwrap().to_jones_wenzl(g).unwrap();
                    let rhs = x.to_jones_wenzl(g).unwrap().compose(&y.to_jones_wenzl(g).unwrap(), g).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn valenced_form_is_symmetric_and_invariant() {
        for q in [QParam::Generic, q3()] {
            let sigma = mi(&[2, 1, 2]);
            let basis = valenced_basis(&sigma, &sigma);
            for s in defect_set(&sigma) {
                let ws = walks(&sigma, s);
                for a in &ws {
                    for b in &ws {
                        assert_eq!(walk_bilinear(&sigma, a, b, q).unwrap(), walk_bilinear(&sigma, b, a, q).unwrap());
                    }
                }
                for (ta, tb) in basis.iter().step_by(3) {
                    let t = ValencedTangle::from_diagram(sigma.clone(), sigma.clone(), ta.clone(), tb.clone()).unwrap();
                    for a in &ws {
                        for b in &ws {
                            let x = ValencedLinkState::from_walk(sigma.clone(), a.clone());
                            let y = ValencedLinkState::from_walk(sigma.clone(), b.clone());
                            let lhs = valenced_bilinear(&x, &t.act(&y, q).unwrap(), q).unwrap();
                            let rhs = valenced_bilinear(&t.dagger().act(&x, q).unwrap(), &y, q).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn one_two_pairing() {
        let g = QParam::Generic;
        let sigma = mi(&[1, 2]);
        let w = Walk::new(vec![1, 1]);
        let value = walk_bilinear(&sigma, &w, &w, g).unwrap();
        let expected = -(qint(3, g).checked_div(&qint(2, g)).unwrap());
        assert_eq!(value, expected);
        assert!(walk_bilinear(&sigma, &w, &Walk::new(vec![1, 3]), g).unwrap().is_zero());
    }

    #[test]
    fn dimension_of_valenced_algebra() {
        for sigma in [mi(&[1, 2]), mi(&[2, 2]), mi(&[3, 1, 2])] {
            let total = valenced_basis(&sigma, &sigma).len() as u64;
            let unfolded = crate::combinat::dim_standard(&sigma.concat(&sigma.reversed()), 0);
            assert_eq!(total, unfolded);
        }
        assert_eq!(all_diagrams(3, 3).len(), valenced_basis(&Multiindex::ones(3), &Multiindex::ones(3)).len());
    }
}
