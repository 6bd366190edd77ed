//! The valenced Temperley-Lieb algebra through its standard modules.

use crate::combinat::{defect_set, dim_radical, in_non_all, in_tot, walks, Multiindex, Walk};
use crate::diagrams::{LinkDiagram, LinkState, Tangle};
use crate::error::{Error, Result};
use crate::gram::{gram_matrix, nullspace, rank, GramMatrix};
use crate::jones_wenzl::{embed, generators, project_hat, split, valenced_basis, ValencedLinkState, ValencedTangle};
use crate::scalars::{QParam, Scalar};
use serde_json::{json, Value};

pub type Matrix = Vec<Vec<Scalar>>;

fn mat_mul(a: &Matrix, b: &Matrix, inner: usize, cols: usize) -> Matrix {
    a.iter()
        .map(|row| {
            (0..cols).map(|j| (0..inner).filter(|&k| !row[k].is_zero()).map(|k| &row[k] * &b[k][j]).sum()).collect()
        })
        .collect()
}

/// A tangle acting on one defect sector, in the walk bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMatrix {
    pub sector: usize,
    pub rows: Vec<Walk>,
    pub cols: Vec<Walk>,
    pub matrix: Matrix,
}

impl RepMatrix {
    /// Matrix product `self · other`, which represents the composite tangle.
    pub fn mul(&self, other: &RepMatrix) -> Result<RepMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { left: self.cols.len(), right: other.rows.len() });
        }
        Ok(RepMatrix {
            sector: self.sector,
            rows: self.rows.clone(),
            cols: other.cols.clone(),
            matrix: mat_mul(&self.matrix, &other.matrix, self.cols.len(), other.cols.len()),
        })
    }

    pub fn scale(&self, c: &Scalar) -> RepMatrix {
        let matrix = self.matrix.iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
        RepMatrix { matrix, ..self.clone() }
    }
}

/// The matrix of `t` on the defect-`s` sector: column β is t·β.
pub fn rep_matrix(t: &ValencedTangle, s: usize, q: QParam) -> Result<RepMatrix> {
    t.left().check_domain(q)?;
    t.right().check_domain(q)?;
    let rows = walks(t.left(), s);
    let cols = walks(t.right(), s);
    let mut matrix = vec![vec![Scalar::zero(); cols.len()]; rows.len()];
    for (j, b) in cols.iter().enumerate() {
        let y = t.act(&ValencedLinkState::from_walk(t.right().clone(), b.clone()), q)?;
        for (i, x) in y.coordinates(&rows).into_iter().enumerate() {
            matrix[i][j] = x;
        }
    }
    Ok(RepMatrix { sector: s, rows, cols, matrix })
}

/// One row per basis diagram of TL_ς: the concatenated entries of
/// `transform(s, rep(diagram on sector s))` over all sectors.
fn stacked(
    sigma: &Multiindex,
    q: QParam,
    transform: impl Fn(usize, Matrix) -> Result<Matrix>,
) -> Result<Vec<Vec<Scalar>>> {
    sigma.check_domain(q)?;
    let sectors: Vec<(usize, Vec<Walk>, Vec<LinkState>)> = defect_set(sigma)
        .into_iter()
        .map(|s| {
            let ws = walks(sigma, s);
            let embedded = ws
                .iter()
                .map(|w| embed(&ValencedLinkState::from_walk(sigma.clone(), w.clone()), q))
                .collect::<Result<Vec<_>>>()?;
            Ok((s, ws, embedded))
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (a, b) in valenced_basis(sigma, sigma) {
        let d = Tangle::from_diagram(LinkDiagram::new(split(sigma, &a), split(sigma, &b))?);
        let mut row = Vec::new();
        for (s, ws, embedded) in &sectors {
            let mut m = vec![vec![Scalar::zero(); ws.len()]; ws.len()];
            for (j, x) in embedded.iter().enumerate() {
                let y = project_hat(sigma, &d.act(x, q)?, q)?;
                for (i, c) in y.coordinates(ws).into_iter().enumerate() {
                    m[i][j] = c;
                }
            }
            row.extend(transform(*s, m)?.into_iter().flatten());
        }
        out.push(row);
    }
    Ok(out)
}

/// True when the direct sum of the standard modules is a faithful module.
pub fn faithful(sigma: &Multiindex, q: QParam) -> Result<bool> {
    let rows = stacked(sigma, q, |_, m| Ok(m))?;
    Ok(rank(&rows)? == rows.len())
}

/// Dimension of the kernel of the action on the quotients L/rad L, which is
/// the Jacobson radical. T kills L/rad L exactly when G·rep(T) = 0.
pub fn jacobson_dim(sigma: &Multiindex, q: QParam) -> Result<usize> {
    let grams: Vec<GramMatrix> =
        defect_set(sigma).into_iter().map(|s| gram_matrix(sigma, s, q)).collect::<Result<_>>()?;
    let rows = stacked(sigma, q, |s, m| {
        let g = grams.iter().find(|g| g.s == s).unwrap();
        let d = g.dim();
        Ok(mat_mul(&g.entries, &m, d, d))
    })?;
    Ok(rows.len() - rank(&rows)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorReport {
    pub s: usize,
    pub dim: usize,
    pub dim_radical: usize,
    pub dim_quotient: usize,
    pub total: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleReport {
    pub sigma: Multiindex,
    pub q: QParam,
    pub sectors: Vec<SectorReport>,
    pub semisimple: bool,
    pub jacobson_dim: Option<usize>,
}

impl ModuleReport {
    pub fn defects(&self) -> Vec<usize> {
        self.sectors.iter().map(|r| r.s).collect()
    }

    /// Sectors with a nonzero simple quotient.
    pub fn simple_sectors(&self) -> Vec<usize> {
        self.sectors.iter().filter(|r| r.dim_quotient > 0).map(|r| r.s).collect()
    }

    pub fn to_json(&self) -> Value {
        let sectors: Vec<Value> = self
            .sectors
            .iter()
            .map(|r| json!({ "s": r.s, "dim": r.dim, "dim_radical": r.dim_radical, "dim_quotient": r.dim_quotient }))
            .collect();
        json!({
            "sigma": self.sigma.entries(),
            "q": self.q.to_string(),
            "E": self.defects(),
            "E_prime": self.simple_sectors(),
            "sectors": sectors,
            "semisimple": self.semisimple,
            "jacobson_dim": self.jacobson_dim,
        })
    }
}

/// Sector dimensions from the radical-dimension recursion; the Jacobson
/// dimension is computed only when `with_jacobson` is set.
pub fn module_report(sigma: &Multiindex, q: QParam, with_jacobson: bool) -> Result<ModuleReport> {
    sigma.check_domain(q)?;
    let mut sectors = Vec::new();
    for s in defect_set(sigma) {
        let dim = walks(sigma, s).len();
        let rad = dim_radical(sigma, s, q)? as usize;
        sectors.push(SectorReport { s, dim, dim_radical: rad, dim_quotient: dim - rad, total: in_tot(sigma, s, q) });
    }
    let jacobson_dim = if with_jacobson { Some(jacobson_dim(sigma, q)?) } else { None };
    Ok(ModuleReport { sigma: sigma.clone(), q, sectors, semisimple: in_non_all(sigma, q), jacobson_dim })
}

/// (s, dim Q^(s)) for every sector with a nonzero simple quotient.
pub fn simple_modules(sigma: &Multiindex, q: QParam) -> Result<Vec<(usize, usize)>> {
    let report = module_report(sigma, q, false)?;
    Ok(report.sectors.iter().filter(|r| r.dim_quotient > 0).map(|r| (r.s, r.dim_quotient)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemisimpleReport {
    /// Membership of q in the Non set of every sector.
    pub semisimple: bool,
    /// Every Gram matrix is nondegenerate.
    pub gram_nondegenerate: bool,
    /// Σ (dim Q^(s))² equals dim TL_ς.
    pub dimension_count: bool,
    /// The first sector with a nonzero radical, if any.
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub s: usize,
    pub nullity: usize,
    pub total: bool,
}

impl SemisimpleReport {
    pub fn consistent(&self) -> bool {
        self.semisimple == self.gram_nondegenerate && self.semisimple == self.dimension_count
    }

    pub fn to_json(&self) -> Value {
        json!({
            "semisimple": self.semisimple,
            "gram_nondegenerate": self.gram_nondegenerate,
            "dimension_count": self.dimension_count,
            "witness": self.witness.as_ref().map(|w| json!({ "s": w.s, "nullity": w.nullity, "total": w.total })),
        })
    }
}

pub fn semisimple(sigma: &Multiindex, q: QParam) -> Result<SemisimpleReport> {
    sigma.check_domain(q)?;
    let mut witness = None;
    let mut squares = 0;
    for s in defect_set(sigma) {
        let g = gram_matrix(sigma, s, q)?;
        let nullity = g.nullity()?;
        let quotient = g.dim() - nullity;
        squares += quotient * quotient;
        if nullity > 0 && witness.is_none() {
            witness = Some(Witness { s, nullity, total: quotient == 0 });
        }
    }
    Ok(SemisimpleReport {
        semisimple: in_non_all(sigma, q),
        gram_nondegenerate: witness.is_none(),
        dimension_count: squares == valenced_basis(sigma, sigma).len(),
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentReport {
    pub idempotent: bool,
    /// The largest defect count carrying a nonzero coefficient.
    pub top_sector: Option<usize>,
    /// The top-sector coefficients satisfy C = C·G·C.
    pub coefficients_ok: bool,
    /// The top sector is not all radical.
    pub sector_not_radical: bool,
}

impl IdempotentReport {
    pub fn holds(&self) -> bool {
        self.idempotent && self.coefficients_ok && self.sector_not_radical
    }
}

pub fn idempotent_check(e: &ValencedTangle, q: QParam) -> Result<IdempotentReport> {
    let sigma = e.left().clone();
    if *e.right() != sigma {
        return Err(Error::DimensionMismatch { left: sigma.size(), right: e.right().size() });
    }
    let idempotent = e.compose(e, q)? == *e;
    let top = e.terms().keys().map(|(a, _)| a.defect()).max();
    let Some(s) = top else {
        return Ok(IdempotentReport {
            idempotent,
            top_sector: None,
            coefficients_ok: false,
            sector_not_radical: false,
        });
    };
    let g = gram_matrix(&sigma, s, q)?;
    let d = g.dim();
    let c: Matrix = g.basis.iter().map(|a| g.basis.iter().map(|b| e.coefficient(a, b)).collect()).collect();
    let cgc = mat_mul(&mat_mul(&c, &g.entries, d, d), &c, d, d);
    Ok(IdempotentReport {
        idempotent,
        top_sector: Some(s),
        coefficients_ok: cgc == c,
        sector_not_radical: g.nullity()? < d,
    })
}

/// A basis of the maps X from sector `s` to sector `r` with
/// rep_r(T)·X = X·rep_s(T) for every generator T.
pub fn intertwiners(sigma: &Multiindex, s: usize, r: usize, q: QParam) -> Result<Vec<Matrix>> {
    let gens = generators(sigma, q)?;
    let all: Vec<&ValencedTangle> = gens.link_type.iter().chain(gens.three_vertex.iter().map(|(_, _, t)| t)).collect();
    let (ds, dr) = (walks(sigma, s).len(), walks(sigma, r).len());
    let unknowns = dr * ds;
    let var = |i: usize, j: usize| i * ds + j;
    let mut equations: Vec<Vec<Scalar>> = Vec::new();
    for t in all {
        let a = rep_matrix(t, r, q)?.matrix;
        let b = rep_matrix(t, s, q)?.matrix;
        for i in 0..dr {
            for j in 0..ds {
                let mut eq = vec![Scalar::zero(); unknowns];
                for k in 0..dr {
                    eq[var(k, j)] += &a[i][k];
                }
                for k in 0..ds {
                    eq[var(i, k)] -= &b[k][j];
                }
                if eq.iter().any(|x| !x.is_zero()) {
                    equations.push(eq);
                }
            }
        }
    }
    let kernel = nullspace(&equations, unknowns)?;
    Ok(kernel.into_iter().map(|v| v.chunks(ds.max(1)).map(<[Scalar]>::to_vec).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{dim_standard, in_non};
    use crate::diagrams::bilinear;
    use crate::jones_wenzl::walk_bilinear;
    use proptest::prelude::*;

    fn mi(e: &[usize]) -> Multiindex {
        Multiindex::new(e.iter().copied())
    }

    fn identity_matrix(d: usize) -> Matrix {
        (0..d).map(|i| (0..d).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
    }

    fn generator(n: usize, i: usize) -> ValencedTangle {
        ValencedTangle::from_ordinary(&Tangle::from_diagram(LinkDiagram::generator(n, i).unwrap()))
    }

    #[test]
    fn unit_acts_as_identity() {
        let g = QParam::Generic;
        for sigma in [mi(&[1, 2, 1]), mi(&[2, 2])] {
            for s in defect_set(&sigma) {
                let m = rep_matrix(&ValencedTangle::identity(&sigma), s, g).unwrap();
                assert_eq!(m.matrix, identity_matrix(m.rows.len()));
            }
        }
    }

    #[test]
    fn generator_squares_to_fugacity_times_itself() {
        let g = QParam::Generic;
        for i in 1..5 {
            let u = generator(5, i);
            for s in [1, 3] {
                let m = rep_matrix(&u, s, g).unwrap();
                assert_eq!(m.mul(&m).unwrap(), m.scale(&g.fugacity()));
            }
        }
    }

    #[test]
    fn sandwich_columns_follow_the_bilinear_form() {
        let g = QParam::Generic;
        let sigma = mi(&[1, 2, 1]);
        for s in defect_set(&sigma) {
            let ws = walks(&sigma, s);
            for a in &ws {
                for b in &ws {
                    let t = ValencedTangle::from_diagram(sigma.clone(), sigma.clone(), a.clone(), b.clone()).unwrap();
                    let m = rep_matrix(&t, s, g).unwrap();
                    let row = ws.iter().position(|w| w == a).unwrap();
                    for (j, c) in ws.iter().enumerate() {
                        let form = walk_bilinear(&sigma, b, c, g).unwrap();
                        for i in 0..ws.len() {
                            let expected = if i == row { form.clone() } else { Scalar::zero() };
                            assert_eq!(m.matrix[i][j], expected);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn algebra_dimension_is_a_sum_of_squares() {
        for sigma in [mi(&[1, 1, 1, 1]), mi(&[2, 1, 3]), mi(&[3, 3, 2]), mi(&[1, 4, 1, 2])] {
            let squares: u64 = defect_set(&sigma).iter().map(|&s| dim_standard(&sigma, s).pow(2)).sum();
            assert_eq!(valenced_basis(&sigma, &sigma).len() as u64, squares);
            assert_eq!(dim_standard(&sigma.concat(&sigma.reversed()), 0), squares);
        }
    }

    #[test]
    fn faithfulness_examples() {
        assert!(faithful(&mi(&[1, 2, 1]), QParam::Generic).unwrap());
        assert!(!faithful(&Multiindex::ones(4), QParam::root(1, 3).unwrap()).unwrap());
        assert!(faithful(&Multiindex::ones(3), QParam::root(1, 2).unwrap()).unwrap());
    }

    #[test]
    fn semisimplicity_examples() {
        let r = semisimple(&Multiindex::ones(4), QParam::Generic).unwrap();
        assert!(r.semisimple && r.consistent());
        let r = semisimple(&Multiindex::ones(4), QParam::root(1, 3).unwrap()).unwrap();
        assert!(!r.semisimple && r.consistent());
        assert_eq!(r.witness.as_ref().map(|w| w.s), Some(0));
        let r = semisimple(&Multiindex::ones(2), QParam::root(1, 2).unwrap()).unwrap();
        assert!(!r.semisimple && r.consistent());
        assert_eq!(r.witness, Some(Witness { s: 0, nullity: 1, total: true }));
        let r = semisimple(&Multiindex::ones(3), QParam::root(1, 2).unwrap()).unwrap();
        assert!(r.semisimple && r.consistent());
    }

    #[test]
    fn simple_module_examples() {
        let sigma = mi(&[2, 1, 2]);
        let generic = simple_modules(&sigma, QParam::Generic).unwrap();
        let expected: Vec<(usize, usize)> =
            defect_set(&sigma).into_iter().map(|s| (s, dim_standard(&sigma, s) as usize)).collect();
        assert_eq!(generic, expected);
        assert_eq!(simple_modules(&Multiindex::ones(3), QParam::root(1, 3).unwrap()).unwrap(), vec![(1, 1), (3, 1)]);
        assert_eq!(simple_modules(&Multiindex::ones(2), QParam::root(1, 2).unwrap()).unwrap(), vec![(2, 1)]);
    }

    #[test]
    fn jacobson_radical_examples() {
        assert_eq!(jacobson_dim(&Multiindex::ones(4), QParam::Generic).unwrap(), 0);
        let p3 = jacobson_dim(&Multiindex::ones(4), QParam::root(1, 3).unwrap()).unwrap();
        assert!(p3 > 0);
        // The quotient algebra is ⊕ End(Q^(s)), so the kernel has the complementary dimension.
        let report = module_report(&Multiindex::ones(4), QParam::root(1, 3).unwrap(), false).unwrap();
        let squares: usize = report.sectors.iter().map(|r| r.dim_quotient * r.dim_quotient).sum();
        assert_eq!(p3, 14 - squares);
    }

    #[test]
    fn idempotent_examples() {
        let g = QParam::Generic;
        let sigma = mi(&[2, 1]);
        let one = idempotent_check(&ValencedTangle::identity(&sigma), g).unwrap();
        assert!(one.holds());
        assert_eq!(one.top_sector, Some(3));
        let ones = Multiindex::ones(2);
        let cup = Walk::new(vec![1, 0]);
        let e = ValencedTangle::from_diagram(ones.clone(), ones.clone(), cup.clone(), cup)
            .unwrap()
            .scale(&g.fugacity().inv().unwrap());
        let r = idempotent_check(&e, g).unwrap();
        assert!(r.holds());
        assert_eq!(r.top_sector, Some(0));
        let u = generator(3, 1);
        assert!(!idempotent_check(&u, g).unwrap().idempotent);
    }

    #[test]
    fn distinct_sectors_admit_no_intertwiners() {
        let g = QParam::Generic;
        let sigma = Multiindex::ones(4);
        for s in defect_set(&sigma) {
            for r in defect_set(&sigma) {
                let maps = intertwiners(&sigma, s, r, g).unwrap();
                if s == r {
                    assert_eq!(maps.len(), 1);
                } else {
                    assert!(maps.is_empty(), "{s} -> {r}");
                }
            }
        }
    }

    #[test]
    fn semisimplicity_criteria_agree_on_small_inputs() {
        let qs = [QParam::Generic, QParam::sign(false), QParam::root(1, 2).unwrap(), QParam::root(1, 3).unwrap()];
        for q in qs {
            for sigma in [mi(&[1, 1, 1]), mi(&[1, 1, 1, 1]), mi(&[1, 2, 1])] {
                if sigma.check_domain(q).is_err() {
                    continue;
                }
                let r = semisimple(&sigma, q).unwrap();
                assert!(r.consistent());
                assert_eq!(jacobson_dim(&sigma, q).unwrap() == 0, r.semisimple);
                assert_eq!(faithful(&sigma, q).unwrap(), r.semisimple);
                for s in defect_set(&sigma) {
                    assert_eq!(gram_matrix(&sigma, s, q).unwrap().nullity().unwrap() == 0, in_non(&sigma, s, q));
                }
            }
        }
    }

    #[test]
    fn ridout_columns_use_the_ordinary_form() {
        let g = QParam::Generic;
        let sigma = Multiindex::ones(4);
        let ws = walks(&sigma, 0);
        let x = LinkState::from_pattern(split(&sigma, &ws[0]));
        let y = LinkState::from_pattern(split(&sigma, &ws[1]));
        assert_eq!(walk_bilinear(&sigma, &ws[0], &ws[1], g).unwrap(), bilinear(&x, &y, g).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn representation_is_multiplicative(
            shape in prop::sample::select(vec![vec![1, 1, 1, 1], vec![1, 2, 1], vec![2, 2], vec![1, 1, 2]]),
            i in 0usize..64,
            j in 0usize..64,
        ) {
            let g = QParam::Generic;
            let sigma = Multiindex::new(shape);
            let basis = valenced_basis(&sigma, &sigma);
            let (a, b) = &basis[i % basis.len()];
            let (c, d) = &basis[j % basis.len()];
            let t = ValencedTangle::from_diagram(sigma.clone(), sigma.clone(), a.clone(), b.clone()).unwrap();
            let u = ValencedTangle::from_diagram(sigma.clone(), sigma.clone(), c.clone(), d.clone()).unwrap();
            let tu = t.compose(&u, g).unwrap();
            for s in defect_set(&sigma) {
                let left = rep_matrix(&tu, s, g).unwrap();
                let right = rep_matrix(&t, s, g).unwrap().mul(&rep_matrix(&u, s, g).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }
        }
    }
}
