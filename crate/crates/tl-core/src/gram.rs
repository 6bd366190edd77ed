//! Gram matrices of the valenced standard modules and their determinants.
//!
//! Determinant formulas are assembled as [`QFacFrac`] products and evaluated
//! only at the end, so vanishing quantum integers cancel symbolically before
//! the parameter is substituted.

use crate::combinat::{
    dim_standard, dim_standard_closed, lowest_walk, tail_info, two_box_set, walks, Multiindex, TailInfo, Walk,
};
use crate::diagrams::{bilinear, LinkDiagram, LinkPattern, LinkState, Tangle};
use crate::error::{Error, Result};
use crate::jones_wenzl::{apply_projectors, jw, project_hat, split, ValencedLinkState};
use crate::scalars::{qint, QFacFrac, QParam, Scalar};
use serde_json::{json, Value};

// ---------------------------------------------------------------------------
// Exact linear algebra

/// Determinant by elimination over the field: the signed product of pivots.
pub fn determinant(rows: &[Vec<Scalar>]) -> Result<Scalar> {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = Scalar::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(Scalar::zero());
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= &m[k][k];
        let inv = m[k][k].inv()?;
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            if row[k].is_zero() {
                continue;
            }
            let f = &row[k] * &inv;
            for j in k + 1..n {
                if !pivot_row[j].is_zero() {
                    let v = &pivot_row[j] * &f;
                    row[j] -= &v;
                }
            }
            row[k] = Scalar::zero();
        }
    }
    Ok(det)
}

/// Fraction-free (Bareiss) determinant. Much slower than `determinant` over
/// Q(q), where every exact division renormalizes a rational function.
pub fn bareiss_determinant(rows: &[Vec<Scalar>]) -> Result<Scalar> {
    let n = rows.len();
    if n == 0 {
        return Ok(Scalar::one());
    }
    let mut m = rows.to_vec();
    let mut negate = false;
    let mut prev = Scalar::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(Scalar::zero());
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v.checked_div(&prev)?;
            }
            m[i][k] = Scalar::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Reduced row echelon form; returns the pivot columns.
fn row_reduce(m: &mut [Vec<Scalar>]) -> Result<Vec<usize>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][c].inv()?;
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= &v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

pub fn rank(rows: &[Vec<Scalar>]) -> Result<usize> {
    let mut m = rows.to_vec();
    Ok(row_reduce(&mut m)?.len())
}

/// A basis of the right kernel {x : M x = 0}, one vector per free column.
pub fn nullspace(rows: &[Vec<Scalar>], cols: usize) -> Result<Vec<Vec<Scalar>>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(&mut m)?;
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -&m[r][free];
        }
        out.push(v);
    }
    Ok(out)
}

/// An incrementally grown subspace of a fixed ambient dimension.
#[derive(Clone, Debug)]
pub struct RowSpace {
    dim: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl RowSpace {
    pub fn new(dim: usize) -> Self {
        RowSpace { dim, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &(y * &f);
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.dim, "vector length does not match the ambient dimension");
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot is invertible");
        self.rows.push((p, v.iter().map(|x| x * &inv).collect()));
        true
    }
}

// ---------------------------------------------------------------------------
// Theta networks

fn check_theta(r: usize, s: usize, t: usize, q: QParam) -> Result<()> {
    if !two_box_set(r, t).contains(&s) {
        return Err(Error::InvalidPattern(format!("{s} is not in E({r},{t})")));
    }
    let top = r.max(s).max(t);
    if !q.root_data().below_bar(top) {
        return Err(Error::Domain { valence: top, threshold: q.root_data().pminbar.unwrap() });
    }
    Ok(())
}

/// Θ(r, s, t) as a product of quantum factorials; symmetric in its arguments.
pub fn theta_frac(r: usize, s: usize, t: usize) -> QFacFrac {
    let half = (r + s + t) / 2;
    let (a, b, c) = ((r + s - t) / 2, (s + t - r) / 2, (t + r - s) / 2);
    let f = |k: usize| QFacFrac::qfact(k as u64);
    QFacFrac::sign_power(half as i64)
        .mul(&f(half + 1))
        .mul(&f(a))
        .mul(&f(b))
        .mul(&f(c))
        .div(&f(r).mul(&f(s)).mul(&f(t)))
}

pub fn theta(r: usize, s: usize, t: usize, q: QParam) -> Result<Scalar> {
    check_theta(r, s, t, q)?;
    Ok(theta_frac(r, s, t).eval(q)?)
}

/// Θ(r, s, t) by expanding the projectors and closing the network: the
/// r and t cables fuse through a box of size s and split again.
pub fn theta_network(r: usize, s: usize, t: usize, q: QParam) -> Result<Scalar> {
    check_theta(r, s, t, q)?;
    let n = r + t;
    let k = (n - s) / 2;
    let fuse = LinkDiagram::new(
        LinkPattern::defects_only(r - k).concat(&LinkPattern::nested(k)).concat(&LinkPattern::defects_only(t - k)),
        LinkPattern::defects_only(s),
    )?;
    let fuse = Tangle::from_diagram(fuse);
    let outer = jw(r, q)?.tensor(&*jw(t, q)?);
    let x = outer.compose(&fuse, q)?.compose(&*jw(s, q)?, q)?.compose(&fuse.dagger(), q)?;
    x.close(q)
}

/// Θ(r_j, r_{j+1}, s_{j+1}) / ((−1)^{r_{j+1}} [r_{j+1} + 1]).
fn step_frac(from: usize, to: usize, node: usize) -> QFacFrac {
    theta_frac(from, to, node).div(&QFacFrac::sign_power(to as i64).mul(&QFacFrac::qint(to as u64 + 1)))
}

fn walk_frac(sigma: &Multiindex, walk: &Walk) -> QFacFrac {
    let e = sigma.entries();
    (1..sigma.len()).fold(QFacFrac::one(), |acc, j| acc.mul(&step_frac(walk.height(j), walk.height(j + 1), e[j])))
}

// ---------------------------------------------------------------------------
// Gram matrices

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub sigma: Multiindex,
    pub s: usize,
    pub q: QParam,
    pub basis: Vec<Walk>,
    pub entries: Vec<Vec<Scalar>>,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn det(&self) -> Result<Scalar> {
        determinant(&self.entries)
    }

    pub fn rank(&self) -> Result<usize> {
        rank(&self.entries)
    }

    pub fn nullity(&self) -> Result<usize> {
        Ok(self.dim() - self.rank()?)
    }

    pub fn nullspace(&self) -> Result<Vec<ValencedLinkState>> {
        Ok(nullspace(&self.entries, self.dim())?.into_iter().map(|v| self.state(&v)).collect())
    }

    /// The valenced state with coordinates `v` in the walk basis.
    pub fn state(&self, v: &[Scalar]) -> ValencedLinkState {
        let mut out = ValencedLinkState::zero(self.sigma.clone());
        for (w, c) in self.basis.iter().zip(v) {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// True when `x` pairs to zero with every basis state.
    pub fn annihilates(&self, x: &ValencedLinkState) -> bool {
        let v = x.coordinates(&self.basis);
        self.entries.iter().all(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum::<Scalar>().is_zero())
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<Value>> = self.entries.iter().map(|r| r.iter().map(Scalar::to_json).collect()).collect();
        let basis: Vec<&[usize]> = self.basis.iter().map(Walk::heights).collect();
        json!({ "sigma": self.sigma.entries(), "s": self.s, "q": self.q.to_string(), "basis": basis, "entries": rows })
    }
}

fn gram_over(sigma: &Multiindex, s: usize, basis: Vec<Walk>, q: QParam) -> Result<GramMatrix> {
    let plain: Vec<LinkState> = basis.iter().map(|w| LinkState::from_pattern(split(sigma, w))).collect();
    let projected = plain.iter().map(|x| apply_projectors(sigma, x, q)).collect::<Result<Vec<_>>>()?;
    let dim = basis.len();
    let mut entries = vec![vec![Scalar::zero(); dim]; dim];
    for i in 0..dim {
        for j in i..dim {
            let v = bilinear(&plain[i], &projected[j], q)?;
            entries[j][i] = v.clone();
            entries[i][j] = v;
        }
    }
    Ok(GramMatrix { sigma: sigma.clone(), s, q, basis, entries })
}

/// The Gram matrix of the valenced bilinear form on the (ς, s) walk basis.
pub fn gram_matrix(sigma: &Multiindex, s: usize, q: QParam) -> Result<GramMatrix> {
    sigma.check_domain(q)?;
    gram_over(sigma, s, walks(sigma, s), q)
}

/// Extends the last entry of ς by `v` and the defect count by `v`.
fn extend_last(sigma: &Multiindex, v: usize) -> Multiindex {
    let mut e = sigma.entries().to_vec();
    *e.last_mut().unwrap() += v;
    Multiindex::new(e)
}

/// Gram matrix on the patterns obtained by widening the last node of every
/// (ς, s) pattern by `v` and attaching `v` extra defects to it.
pub fn ext_gram_matrix(sigma: &Multiindex, v: usize, s: usize, q: QParam) -> Result<GramMatrix> {
    sigma.check_domain(q)?;
    let wide = extend_last(sigma, v);
    wide.check_domain(q)?;
    let basis = walks(sigma, s)
        .into_iter()
        .map(|w| {
            let mut h = w.heights().to_vec();
            *h.last_mut().unwrap() += v;
            Walk::new(h)
        })
        .collect();
    gram_over(&wide, s + v, basis, q)
}

// ---------------------------------------------------------------------------
// Determinant routes

pub fn det_walkproduct_frac(sigma: &Multiindex, s: usize) -> QFacFrac {
    walks(sigma, s).iter().fold(QFacFrac::one(), |acc, w| acc.mul(&walk_frac(sigma, w)))
}

pub fn gram_det_walkproduct(sigma: &Multiindex, s: usize, q: QParam) -> Result<Scalar> {
    sigma.check_domain(q)?;
    Ok(det_walkproduct_frac(sigma, s).eval(q)?)
}

pub fn det_ridout_frac(n: usize, s: usize) -> QFacFrac {
    if s > n || (n - s) % 2 == 1 {
        return QFacFrac::one();
    }
    (1..=(n - s) / 2).fold(QFacFrac::one(), |acc, j| {
        let base =
            QFacFrac::qint((s + j + 1) as u64).div(&QFacFrac::sign_power(s as i64 + 1).mul(&QFacFrac::qint(j as u64)));
        acc.mul(&base.pow(dim_standard_closed(n, s + 2 * j) as i64))
    })
}

pub fn gram_det_ridout(n: usize, s: usize, q: QParam) -> Result<Scalar> {
    Ok(det_ridout_frac(n, s).eval(q)?)
}

pub fn det_recursive_frac(sigma: &Multiindex, s: usize) -> QFacFrac {
    if sigma.len() <= 1 {
        return QFacFrac::one();
    }
    let head = sigma.without_last();
    let t = sigma.last();
    let mut acc = QFacFrac::one();
    for r in crate::combinat::defect_set(&head) {
        if two_box_set(t, s).contains(&r) {
            let ratio = theta_frac(r, s, t).div(&QFacFrac::sign_power(s as i64).mul(&QFacFrac::qint(s as u64 + 1)));
            acc = acc.mul(&ratio.pow(dim_standard(&head, r) as i64)).mul(&det_recursive_frac(&head, r));
        }
    }
    acc
}

pub fn gram_det_recursive(sigma: &Multiindex, s: usize, q: QParam) -> Result<Scalar> {
    sigma.check_domain(q)?;
    Ok(det_recursive_frac(sigma, s).eval(q)?)
}

pub fn det_ext_frac(sigma: &Multiindex, v: usize, s: usize) -> QFacFrac {
    let t = sigma.last();
    let d = sigma.len();
    let f = |k: usize| QFacFrac::qfact(k as u64);
    walks(sigma, s).iter().fold(det_walkproduct_frac(sigma, s), |acc, w| {
        let r = w.height(d - 1);
        let big = (r + t + s) / 2;
        let small = (t + s - r) / 2;
        let num = f(big + v + 1).mul(&f(small + v)).mul(&f(t)).mul(&f(s + 1));
        let den = f(big + 1).mul(&f(small)).mul(&f(t + v)).mul(&f(s + v + 1));
        acc.mul(&num.div(&den))
    })
}

pub fn gram_det_ext(sigma: &Multiindex, v: usize, s: usize, q: QParam) -> Result<Scalar> {
    sigma.check_domain(q)?;
    extend_last(sigma, v).check_domain(q)?;
    Ok(det_ext_frac(sigma, v, s).eval(q)?)
}

/// det 𝒢_n^(s) for n = n_ς, factored through the bin sizes of ς.
pub fn det_factored_frac(sigma: &Multiindex, s: usize) -> QFacFrac {
    let sizes = sigma.entries();
    let mut choices: Vec<Vec<usize>> = vec![Vec::new()];
    for &size in sizes {
        let options = crate::combinat::defect_set(&Multiindex::ones(size));
        choices = choices
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |&t| {
                    let mut p = prefix.clone();
                    p.push(t);
                    p
                })
            })
            .collect();
    }
    let mut acc = QFacFrac::one();
    for ts in choices {
        let inner = Multiindex::new(ts.iter().copied());
        let d_inner = dim_standard(&inner, s);
        if d_inner == 0 {
            continue;
        }
        let counts: Vec<u64> = sizes.iter().zip(&ts).map(|(&m, &t)| dim_standard_closed(m, t)).collect();
        let all: u64 = counts.iter().product();
        acc = acc.mul(&det_walkproduct_frac(&inner, s).pow(all as i64));
        for (i, (&m, &t)) in sizes.iter().zip(&ts).enumerate() {
            let others: u64 = counts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, c)| c).product();
            acc = acc.mul(&det_ridout_frac(m, t).pow((d_inner * others) as i64));
        }
    }
    acc
}

pub fn gram_det_factored(sigma: &Multiindex, s: usize, q: QParam) -> Result<Scalar> {
    sigma.check_domain(q)?;
    Ok(det_factored_frac(sigma, s).eval(q)?)
}

// ---------------------------------------------------------------------------
// Trivalent link states

/// Inserts the diagram `d` on the strands crossing the gap just above node
/// `ray`. Strands are numbered from the outermost; the left side of `d`
/// faces the nodes above the gap. Returns `None` when two defects are joined.
pub fn insert_on_ray(p: &LinkPattern, ray: usize, d: &LinkDiagram) -> Result<Option<LinkPattern>> {
    let starts: Vec<usize> = (0..ray).filter(|&x| p.partner(x).is_none_or(|y| y >= ray)).collect();
    let h = starts.len();
    if d.n() != h || d.m() != h {
        return Err(Error::DimensionMismatch { left: h, right: d.n() });
    }
    let ends: Vec<Option<usize>> = starts.iter().map(|&x| p.partner(x)).collect();
    let mut pairing = p.pairing().to_vec();
    for &x in starts.iter().chain(ends.iter().flatten()) {
        pairing[x] = None;
    }
    let mut join = |u: Option<usize>, v: Option<usize>| -> bool {
        match (u, v) {
            (Some(x), Some(y)) => {
                pairing[x] = Some(y);
                pairing[y] = Some(x);
                true
            }
            (Some(_), None) | (None, Some(_)) => true,
            (None, None) => false,
        }
    };
    for (i, j) in d.left().arcs() {
        join(Some(starts[i]), Some(starts[j]));
    }
    for (i, j) in d.right().arcs() {
        if !join(ends[i], ends[j]) {
            return Ok(None);
        }
    }
    for (i, j) in d.left().defect_positions().into_iter().zip(d.right().defect_positions()) {
        join(Some(starts[i]), ends[j]);
    }
    LinkPattern::new(pairing).map(Some)
}

/// Applies every term of `t` on the gap above node `ray`.
pub fn insert_tangle(x: &LinkState, ray: usize, t: &Tangle) -> Result<LinkState> {
    let mut out = LinkState::zero(x.n());
    for (p, c) in x.terms() {
        for (d, e) in t.terms() {
            if let Some(r) = insert_on_ray(p, ray, d)? {
                out.add_term(r, c * e);
            }
        }
    }
    Ok(out)
}

/// The part of the size-`h` projector that survives when one strand turns
/// back right after it and a size h−1 projector follows: the identity plus
/// ([a]/[h])·T_a, where T_a caps strands a, a+1 on the near side and cups the
/// two innermost strands on the far side.
pub fn turnback_box(h: usize, q: QParam) -> Result<Tangle> {
    let mut out = Tangle::identity(h);
    if h < 2 {
        return Ok(out);
    }
    let far = LinkPattern::defects_only(h - 2).concat(&LinkPattern::nested(1));
    let denom = qint(h as i64, q);
    for a in 1..h {
        let near = LinkPattern::defects_only(a - 1)
            .concat(&LinkPattern::nested(1))
            .concat(&LinkPattern::defects_only(h - a - 1));
        let c = qint(a as i64, q).checked_div(&denom)?;
        out.add_term(LinkDiagram::new(near, far.clone())?, c);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivalentState {
    pub source: Walk,
    pub tail: TailInfo,
    pub state: ValencedLinkState,
}

impl TrivalentState {
    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.heights(),
            "j_index": self.tail.j_index,
            "radical": self.tail.kind.is_radical(),
            "state": self.state.to_json(),
        })
    }
}

/// The trivalent link state of the (ς, s) pattern with walk `walk`: every gap
/// from the closure point to the right end carries a box, expanded so that
/// only boxes below the threshold appear.
pub fn trivalent(sigma: &Multiindex, walk: &Walk, q: QParam) -> Result<TrivalentState> {
    let tail = tail_info(sigma, walk, q)?;
    let heights = lowest_walk(sigma, walk);
    let n = sigma.size();
    let mut x = LinkState::from_pattern(split(sigma, walk));
    for c in tail.first_closed..n {
        if heights[c + 1] + 1 == heights[c] {
            x = insert_tangle(&x, c, &turnback_box(heights[c], q)?)?;
        }
    }
    let state = project_hat(sigma, &x, q)?;
    Ok(TrivalentState { source: walk.clone(), tail, state })
}

/// The trivalent states of all radical tails: a basis of the radical.
pub fn radical_basis(sigma: &Multiindex, s: usize, q: QParam) -> Result<Vec<TrivalentState>> {
    sigma.check_domain(q)?;
    let mut out = Vec::new();
    for w in walks(sigma, s) {
        let t = trivalent(sigma, &w, q)?;
        if t.tail.kind.is_radical() {
            out.push(t);
        }
    }
    Ok(out)
}

/// Nullity and a kernel basis of the Gram matrix.
pub fn radical_nullspace(sigma: &Multiindex, s: usize, q: QParam) -> Result<(usize, Vec<ValencedLinkState>)> {
    let g = gram_matrix(sigma, s, q)?;
    let basis = g.nullspace()?;
    Ok((basis.len(), basis))
}

/// The summary record printed by the command-line tool.
pub fn gram_report(sigma: &Multiindex, s: usize, q: QParam) -> Result<Value> {
    let g = gram_matrix(sigma, s, q)?;
    let radical: Vec<Value> = radical_basis(sigma, s, q)?.iter().map(|t| t.state.to_json()).collect();
    Ok(json!({
        "sigma": sigma.entries(),
        "s": s,
        "q": q.to_string(),
        "det": g.det()?.to_json(),
        "nullity": g.nullity()?,
        "radical_basis": radical,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{defect_set, dim_radical, in_non, in_tot};
    use crate::jones_wenzl::valenced_bilinear;
    use std::collections::BTreeMap;

    fn mi(e: &[usize]) -> Multiindex {
        Multiindex::new(e.iter().copied())
    }

    fn int(k: i64) -> Scalar {
        Scalar::from_int(k)
    }

    fn sample_qs() -> Vec<QParam> {
        let mut qs = vec![QParam::Generic, QParam::sign(true), QParam::sign(false)];
        for p in 2..=5u32 {
            for a in 1..p {
                if let Ok(q) = QParam::root(a, p) {
                    qs.push(q);
                }
            }
        }
        qs
    }

    /// Multiindices with entries at most `top` and total size at most `size`.
    fn multiindices(size: usize, top: usize) -> Vec<Multiindex> {
        let mut out = Vec::new();
        let mut stack = vec![Vec::<usize>::new()];
        while let Some(e) = stack.pop() {
            let total: usize = e.iter().sum();
            if !e.is_empty() {
                out.push(Multiindex::new(e.clone()));
            }
            for k in 1..=top.min(size - total) {
                let mut f = e.clone();
                f.push(k);
                stack.push(f);
            }
        }
        out
    }

    #[test]
    fn determinants_match_cofactor_expansion() {
        fn cofactor(m: &[Vec<Scalar>]) -> Scalar {
            if m.is_empty() {
                return Scalar::one();
            }
            let mut total = Scalar::zero();
            for (j, x) in m[0].iter().enumerate() {
                let minor: Vec<Vec<Scalar>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = x * &cofactor(&minor);
                total = if j % 2 == 0 { total + term } else { total - term };
            }
            total
        }
        let m: Vec<Vec<Scalar>> = [[0, 2, 1, 3], [1, 0, 4, 1], [2, 5, 0, 0], [1, 1, 1, 0]]
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        assert_eq!(determinant(&m).unwrap(), cofactor(&m));
        assert_eq!(bareiss_determinant(&m).unwrap(), cofactor(&m));
        for (n, s, q) in
            [(5, 1, QParam::Generic), (6, 2, QParam::root(2, 5).unwrap()), (4, 0, QParam::root(1, 3).unwrap())]
        {
            let g = gram_matrix(&Multiindex::ones(n), s, q).unwrap();
            let expected = cofactor(&g.entries);
            assert_eq!(determinant(&g.entries).unwrap(), expected);
            assert_eq!(bareiss_determinant(&g.entries).unwrap(), expected);
        }
        let singular: Vec<Vec<Scalar>> = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(determinant(&singular).unwrap().is_zero());
        assert_eq!(rank(&singular).unwrap(), 1);
        let k = nullspace(&singular, 2).unwrap();
        assert_eq!(k, vec![vec![int(-2), int(1)]]);
    }

    #[test]
    fn row_space_tracks_rank() {
        let mut r = RowSpace::new(3);
        assert!(r.insert(vec![int(1), int(1), int(0)]));
        assert!(r.insert(vec![int(0), int(1), int(1)]));
        assert!(!r.insert(vec![int(1), int(2), int(1)]));
        assert!(r.contains(&[int(2), int(3), int(1)]));
        assert!(r.insert(vec![int(0), int(0), int(5)]));
        assert_eq!(r.rank(), 3);
    }

    #[test]
    fn theta_examples() {
        let g = QParam::Generic;
        assert_eq!(theta(1, 0, 1, g).unwrap(), g.fugacity());
        assert_eq!(theta(0, 0, 0, g).unwrap(), Scalar::one());
        // Θ(r, r+t, t) = (−1)^{r+t}[r+t+1]; the normalized network is 1.
        for r in 0..4 {
            for t in 0..4 {
                let th = theta(r, r + t, t, g).unwrap();
                let sign = if (r + t) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                assert_eq!(th, sign * qint((r + t + 1) as i64, g));
            }
        }
        assert_eq!(theta(1, 2, 1, g).unwrap(), qint(3, g));
    }

    #[test]
    fn theta_closed_form_matches_network() {
        let mut qs = vec![QParam::Generic, QParam::sign(false)];
        qs.push(QParam::root(1, 5).unwrap());
        for q in qs {
            for r in 0..=3 {
                for t in 0..=3 {
                    for s in two_box_set(r, t) {
                        if q.root_data().below_bar(r.max(s).max(t)) {
                            assert_eq!(
                                theta(r, s, t, q).unwrap(),
                                theta_network(r, s, t, q).unwrap(),
                                "{r} {s} {t} {q}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn theta_rejects_bad_input() {
        assert!(theta(1, 3, 1, QParam::Generic).is_err());
        assert!(theta(2, 2, 2, QParam::root(1, 2).unwrap()).is_err());
    }

    #[test]
    fn small_gram_matrices() {
        let g = QParam::Generic;
        let nu = g.fugacity();
        let m = gram_matrix(&Multiindex::ones(2), 0, g).unwrap();
        assert_eq!(m.entries, vec![vec![nu.clone()]]);
        let m = gram_matrix(&Multiindex::ones(3), 1, g).unwrap();
        assert_eq!(m.entries, vec![vec![nu.clone(), int(1)], vec![int(1), nu.clone()]]);
        let m = gram_matrix(&Multiindex::ones(4), 0, g).unwrap();
        let nu2 = &nu * &nu;
        assert_eq!(m.entries, vec![vec![nu2.clone(), nu.clone()], vec![nu.clone(), nu2]]);
        let expected = qint(2, g) * qint(2, g) * qint(3, g);
        assert_eq!(m.det().unwrap(), expected);
        assert_eq!(gram_det_walkproduct(&Multiindex::ones(4), 0, g).unwrap(), expected);
        assert_eq!(gram_det_ridout(4, 0, g).unwrap(), expected);
        assert_eq!(gram_det_ridout(2, 0, g).unwrap(), nu);
        assert_eq!(gram_det_ridout(5, 5, g).unwrap(), Scalar::one());
    }

    #[test]
    fn gram_matrix_is_the_pairwise_form() {
        let g = QParam::Generic;
        let sigma = mi(&[2, 1, 2]);
        let m = gram_matrix(&sigma, 1, g).unwrap();
        for (i, a) in m.basis.iter().enumerate() {
            for (j, b) in m.basis.iter().enumerate() {
                let x = ValencedLinkState::from_walk(sigma.clone(), a.clone());
                let y = ValencedLinkState::from_walk(sigma.clone(), b.clone());
                assert_eq!(m.entries[i][j], valenced_bilinear(&x, &y, g).unwrap());
            }
        }
    }

    #[test]
    fn out_of_range_defects_give_empty_structures() {
        let g = QParam::Generic;
        let m = gram_matrix(&mi(&[2, 1]), 2, g).unwrap();
        assert_eq!(m.dim(), 0);
        assert_eq!(m.det().unwrap(), Scalar::one());
        assert!(radical_basis(&mi(&[2, 1]), 0, g).unwrap().is_empty());
    }

    #[test]
    fn recursion_specializations() {
        let g = QParam::Generic;
        for s in 1..5 {
            let low = mi(&[s - 1, 1]);
            assert_eq!(gram_det_recursive(&low, s, g).unwrap(), Scalar::one());
            let high = mi(&[s + 1, 1]);
            let expected = -(qint(s as i64 + 2, g).checked_div(&qint(s as i64 + 1, g)).unwrap());
            assert_eq!(gram_det_recursive(&high, s, g).unwrap(), expected);
            assert_eq!(gram_matrix(&high, s, g).unwrap().det().unwrap(), expected);
        }
    }

    #[test]
    fn determinant_routes_agree() {
        for q in [QParam::Generic, QParam::sign(false), QParam::root(1, 3).unwrap(), QParam::root(2, 5).unwrap()] {
            for sigma in multiindices(6, 3) {
                if sigma.check_domain(q).is_err() {
                    continue;
                }
                for s in defect_set(&sigma) {
                    let brute = gram_matrix(&sigma, s, q).unwrap().det().unwrap();
                    assert_eq!(gram_det_walkproduct(&sigma, s, q).unwrap(), brute, "{sigma} {s} {q}");
                    assert_eq!(gram_det_recursive(&sigma, s, q).unwrap(), brute, "{sigma} {s} {q}");
                    assert_eq!(gram_det_ext(&sigma, 0, s, q).unwrap(), brute);
                    if sigma.is_ones() {
                        assert_eq!(gram_det_ridout(sigma.size(), s, q).unwrap(), brute);
                    }
                }
            }
        }
    }

    #[test]
    fn extended_gram_determinant() {
        for q in [QParam::Generic, QParam::root(1, 5).unwrap()] {
            for sigma in [mi(&[1, 1]), mi(&[1, 2]), mi(&[2, 1]), mi(&[1, 1, 1]), mi(&[2, 2])] {
                for v in 1..=2 {
                    if extend_last(&sigma, v).check_domain(q).is_err() {
                        continue;
                    }
                    for s in defect_set(&sigma) {
                        let brute = ext_gram_matrix(&sigma, v, s, q).unwrap().det().unwrap();
                        assert_eq!(gram_det_ext(&sigma, v, s, q).unwrap(), brute, "{sigma} v={v} s={s} {q}");
                    }
                }
            }
        }
    }

    #[test]
    fn factored_determinant_matches_the_ordinary_gram() {
        for q in [QParam::Generic, QParam::root(1, 4).unwrap()] {
            for sigma in [mi(&[2, 2]), mi(&[1, 2]), mi(&[3, 1]), mi(&[2, 1, 2]), mi(&[3, 3])] {
                if sigma.check_domain(q).is_err() {
                    continue;
                }
                let n = sigma.size();
                for s in defect_set(&Multiindex::ones(n)) {
                    let brute = gram_matrix(&Multiindex::ones(n), s, q).unwrap().det().unwrap();
                    assert_eq!(gram_det_factored(&sigma, s, q).unwrap(), brute, "{sigma} {s} {q}");
                }
            }
        }
    }

    #[test]
    fn nondegenerate_below_threshold() {
        for q in sample_qs() {
            for n in 1..=6 {
                if q.root_data().below_bar(n) {
                    for s in defect_set(&Multiindex::ones(n)) {
                        assert!(!gram_det_ridout(n, s, q).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn turnback_box_times_smaller_box_is_the_projector() {
        for q in [QParam::Generic, QParam::root(1, 7).unwrap()] {
            for h in 2..=5 {
                let smaller = jw(h - 1, q).unwrap().pad(0, 1);
                let cut = turnback_box(h, q).unwrap().compose(&smaller, q).unwrap();
                assert_eq!(*jw(h, q).unwrap(), cut, "h = {h}");
            }
        }
    }

    /// A partial state on nodes 0..c and h open strand ends, stored as a
    /// perfect matching of c + h points with the open ends innermost first.
    type Partial = Vec<usize>;

    /// Glues the projector terms of `d` onto the open ends of `x`.
    fn glue(x: &Partial, c: usize, d: &LinkDiagram) -> (Partial, usize) {
        let h = x.len() - c;
        let (left, right) = (d.left(), d.right());
        let lp: Vec<usize> = left.defect_positions();
        let rp: Vec<usize> = right.defect_positions();
        // Partner of a box end: Ok(left index) or Err(right index).
        let across = |side_left: bool, i: usize| -> std::result::Result<usize, usize> {
            let (own, other_defects, own_defects) = if side_left { (left, &rp, &lp) } else { (right, &lp, &rp) };
            match own.partner(i) {
                Some(j) if side_left => Ok(j),
                Some(j) => Err(j),
                None => {
                    let k = own_defects.iter().position(|&y| y == i).unwrap();
                    if side_left {
                        Err(other_defects[k])
                    } else {
                        Ok(other_defects[k])
                    }
                }
            }
        };
        let end = |i: usize| c + h - 1 - i;
        let mut out = vec![usize::MAX; c + h];
        let mut seen = vec![false; c + h];
        // Follows x from point p into the box until reaching a node or a new end.
        let follow = |mut p: usize, seen: &mut Vec<bool>| -> usize {
            loop {
                let t = x[p];
                seen[t] = true;
                if t < c {
                    return t;
                }
                match across(true, end(t)) {
                    Err(k) => return end(k),
                    Ok(j) => {
                        p = end(j);
                        seen[p] = true;
                    }
                }
            }
        };
        for v in 0..c {
            if out[v] == usize::MAX {
                let w = follow(v, &mut seen);
                out[v] = w;
                out[w] = v;
            }
        }
        for k in 0..h {
            let here = end(k);
            if out[here] != usize::MAX {
                continue;
            }
            let w = match across(false, k) {
                Err(l) => end(l),
                Ok(i) => {
                    seen[end(i)] = true;
                    follow(end(i), &mut seen)
                }
            };
            out[here] = w;
            out[w] = here;
        }
        let mut loops = 0;
        for p in c..c + h {
            if !seen[p] {
                loops += 1;
                let mut cur = p;
                loop {
                    seen[cur] = true;
                    let t = x[cur];
                    seen[t] = true;
                    let Ok(j) = across(true, end(t)) else { unreachable!() };
                    cur = end(j);
                    if seen[cur] {
                        break;
                    }
                }
            }
        }
        (out, loops)
    }

    /// Closes the walk with honest projector boxes on the listed gaps.
    fn generic_oracle(sigma: &Multiindex, walk: &Walk, gaps: &[usize]) -> ValencedLinkState {
        let g = QParam::Generic;
        let n = sigma.size();
        let heights = lowest_walk(sigma, walk);
        let mut terms: BTreeMap<Partial, Scalar> = BTreeMap::from([(Vec::new(), Scalar::one())]);
        for c in 0..=n {
            if c > 0 && gaps.contains(&c) {
                let boxed = jw(heights[c], g).unwrap();
                let mut next: BTreeMap<Partial, Scalar> = BTreeMap::new();
                for (x, a) in &terms {
                    for (d, b) in boxed.terms() {
                        let (y, loops) = glue(x, c, d);
                        *next.entry(y).or_insert_with(Scalar::zero) += a * b * g.fugacity().pow(loops as i64).unwrap();
                    }
                }
                next.retain(|_, v| !v.is_zero());
                terms = next;
            }
            if c < n && heights[c + 1] > heights[c] {
                terms = terms
                    .into_iter()
                    .map(|(x, a)| {
                        let mut y: Vec<usize> = x.iter().map(|&t| if t >= c { t + 2 } else { t }).collect();
                        y.splice(c..c, [c + 1, c]);
                        (y, a)
                    })
                    .collect();
            }
        }
        let mut out = LinkState::zero(n);
        for (x, a) in terms {
            if (n..x.len()).any(|p| x[p] >= n) {
                continue;
            }
            let pairing = (0..n).map(|v| (x[v] < n).then_some(x[v])).collect();
            out.add_term(LinkPattern::new(pairing).unwrap(), a);
        }
        project_hat(sigma, &out, g).unwrap()
    }

    #[test]
    fn generic_trivalent_states_match_real_boxes() {
        let g = QParam::Generic;
        for sigma in
            [mi(&[1, 1, 1, 1]), mi(&[1, 1, 1, 1, 1, 1]), mi(&[2, 1, 2]), mi(&[1, 2, 2]), mi(&[3, 2]), mi(&[2, 2, 2])]
        {
            for s in defect_set(&sigma) {
                for w in walks(&sigma, s) {
                    let t = trivalent(&sigma, &w, g).unwrap();
                    let every: Vec<usize> = (1..=sigma.size()).collect();
                    assert_eq!(t.state, generic_oracle(&sigma, &w, &sigma.cuts()[1..]), "{sigma} {w:?}");
                    assert_eq!(t.state, generic_oracle(&sigma, &w, &every));
                }
            }
        }
    }

    fn below(a: &Walk, b: &Walk) -> bool {
        a.heights().iter().zip(b.heights()).all(|(x, y)| x <= y)
    }

    #[test]
    fn change_of_basis_is_unitriangular() {
        for q in sample_qs() {
            for sigma in [mi(&[1, 1, 1, 1]), mi(&[1, 1, 1, 1, 1]), mi(&[1, 2, 1]), mi(&[1, 1, 2, 1])] {
                if sigma.check_domain(q).is_err() {
                    continue;
                }
                for s in defect_set(&sigma) {
                    for w in walks(&sigma, s) {
                        let t = trivalent(&sigma, &w, q).unwrap();
                        assert_eq!(t.state.coefficient(&w), Scalar::one());
                        for v in t.state.terms().keys() {
                            assert!(below(v, &w), "{sigma} {w:?} -> {v:?} at {q}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn all_up_walk_is_unchanged() {
        let sigma = Multiindex::ones(4);
        let w = Walk::new(vec![1, 2, 3, 4]);
        for q in sample_qs() {
            let t = trivalent(&sigma, &w, q).unwrap();
            assert_eq!(t.state, ValencedLinkState::from_walk(sigma.clone(), w.clone()));
        }
    }

    #[test]
    fn closed_states_are_orthogonal() {
        for q in sample_qs() {
            for sigma in [mi(&[1, 1, 1, 1]), mi(&[1, 2, 1]), mi(&[2, 2]), mi(&[1, 1, 1, 1, 1])] {
                if sigma.check_domain(q).is_err() {
                    continue;
                }
                for s in defect_set(&sigma) {
                    let states: Vec<TrivalentState> = walks(&sigma, s)
                        .iter()
                        .map(|w| trivalent(&sigma, w, q).unwrap())
                        .filter(|t| t.tail.j_index.is_none())
                        .collect();
                    for a in &states {
                        for b in &states {
                            let v = valenced_bilinear(&a.state, &b.state, q).unwrap();
                            if a.source == b.source {
                                assert_eq!(v, walk_frac(&sigma, &a.source).eval(q).unwrap());
                            } else {
                                assert!(v.is_zero());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn three_site_radical_example() {
        let q = QParam::root(1, 3).unwrap();
        let sigma = Multiindex::ones(3);
        let basis = radical_basis(&sigma, 1, q).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].source, Walk::new(vec![1, 2, 1]));
        let g = gram_matrix(&sigma, 1, q).unwrap();
        assert_eq!(g.entries, vec![vec![int(-1), int(1)], vec![int(1), int(-1)]]);
        let v = basis[0].state.coordinates(&g.basis);
        assert_eq!(v, vec![int(1), int(1)]);
    }

    #[test]
    fn radical_nullspace_examples() {
        let (dim, _) = radical_nullspace(&Multiindex::ones(2), 0, QParam::root(1, 2).unwrap()).unwrap();
        assert_eq!(dim, 1);
        let (dim, _) = radical_nullspace(&Multiindex::ones(4), 0, QParam::Generic).unwrap();
        assert_eq!(dim, 0);
        assert!(radical_basis(&Multiindex::ones(6), 0, QParam::Generic).unwrap().is_empty());
    }

    #[test]
    fn radical_basis_spans_the_gram_kernel() {
        for q in sample_qs() {
            for sigma in multiindices(6, 3) {
                if sigma.check_domain(q).is_err() {
                    continue;
                }
                for s in defect_set(&sigma) {
                    let g = gram_matrix(&sigma, s, q).unwrap();
                    let basis = radical_basis(&sigma, s, q).unwrap();
                    let nullity = g.nullity().unwrap();
                    assert_eq!(basis.len(), nullity, "{sigma} {s} {q}");
                    assert_eq!(dim_radical(&sigma, s, q).unwrap() as usize, nullity);
                    let mut span = RowSpace::new(g.dim());
                    for t in &basis {
                        assert!(g.annihilates(&t.state), "{sigma} {s} {q} {:?}", t.source);
                        assert!(span.insert(t.state.coordinates(&g.basis)));
                    }
                    assert_eq!(nullity == 0, in_non(&sigma, s, q));
                    assert_eq!(nullity == g.dim() && g.dim() > 0, in_tot(&sigma, s, q));
                }
            }
        }
    }

    #[test]
    fn no_radical_when_p_divides_s_plus_one() {
        for p in 2..=5u32 {
            let q = QParam::root(1, p).unwrap();
            for n in 1..=7usize {
                for s in defect_set(&Multiindex::ones(n)) {
                    if (s + 1) % p as usize == 0 {
                        assert!(radical_basis(&Multiindex::ones(n), s, q).unwrap().is_empty());
                    }
                }
            }
        }
    }
}
