//! Exact scalars for quantum-integer arithmetic.
//!
//! Three coefficient fields are supported, selected by [`QParam`]:
//! rational functions in a formal `q`, the cyclotomic field ℚ(q) for `q` a
//! root of unity, and plain rationals for `q = ±1`.

mod poly;
mod qfacfrac;

pub use poly::Poly;
pub use qfacfrac::QFacFrac;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde_json::{json, Value};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: net exponent {0} of vanishing quantum integers is negative")]
    Pole(i64),
    #[error("threshold index {0} is infinite for a parameter that is not a root of unity")]
    InfiniteThreshold(u64),
    #[error("invalid root of unity e^(iπ·{numerator}/{denominator}): need 0 < numerator < denominator, coprime")]
    InvalidRoot { numerator: u32, denominator: u32 },
}

/// The deformation parameter `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QParam {
    /// A formal transcendental `q`.
    Generic,
    /// `q = exp(iπ·numerator/denominator)` with the fraction in lowest terms and in (0, 1).
    RootOfUnity { numerator: u32, denominator: u32 },
    /// `q = +1` or `q = -1`.
    Sign(i8),
}

impl QParam {
    pub fn root(numerator: u32, denominator: u32) -> Result<QParam, ScalarError> {
        if numerator == 0 || numerator >= denominator || numerator.gcd(&denominator) != 1 {
            return Err(ScalarError::InvalidRoot { numerator, denominator });
        }
        Ok(QParam::RootOfUnity { numerator, denominator })
    }

    pub fn sign(positive: bool) -> QParam {
        QParam::Sign(if positive { 1 } else { -1 })
    }

    /// Multiplicative order of `q` for a root of unity.
    pub fn order(&self) -> Option<u32> {
        match *self {
            QParam::RootOfUnity { numerator, denominator } => {
                Some(if numerator % 2 == 1 { 2 * denominator } else { denominator })
            }
            _ => None,
        }
    }

    pub fn root_data(&self) -> RootData {
        root_data(*self)
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    /// The element `q` itself.
    pub fn q(&self) -> Scalar {
        match *self {
            QParam::Generic => {
                Scalar::Function(RatFunc { num: Poly::monomial(BigRational::one(), 1), den: Poly::one() })
            }
            QParam::RootOfUnity { .. } => {
                let field = cyclo_field(self.order().unwrap());
                CycloElem::reduced(field, Poly::monomial(BigRational::one(), 1))
            }
            QParam::Sign(s) => Scalar::from_int(s as i64),
        }
    }

    /// Loop weight ν = −[2].
    pub fn fugacity(&self) -> Scalar {
        -qint(2, *self)
    }
}

impl fmt::Display for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QParam::Generic => write!(f, "generic"),
            QParam::RootOfUnity { numerator, denominator } => write!(f, "root:{numerator}/{denominator}"),
            QParam::Sign(s) => write!(f, "sign:{}", if *s > 0 { "+1" } else { "-1" }),
        }
    }
}

impl std::str::FromStr for QParam {
    type Err = String;

    /// Parses the forms written by `Display`: `generic`, `root:a/b`, `sign:+1`, `sign:-1`.
    fn from_str(text: &str) -> Result<QParam, String> {
        let text = text.trim();
        if text == "generic" {
            return Ok(QParam::Generic);
        }
        if let Some(sign) = text.strip_prefix("sign:") {
            return match sign {
                "+1" | "1" => Ok(QParam::sign(true)),
                "-1" => Ok(QParam::sign(false)),
                _ => Err(format!("sign must be +1 or -1, got {sign:?}")),
            };
        }
        if let Some(frac) = text.strip_prefix("root:") {
            let (a, b) = frac.split_once('/').ok_or_else(|| format!("expected root:a/b, got {text:?}"))?;
            let a: u32 = a.parse().map_err(|_| format!("bad numerator {a:?}"))?;
            let b: u32 = b.parse().map_err(|_| format!("bad denominator {b:?}"))?;
            return QParam::root(a, b).map_err(|e| e.to_string());
        }
        Err(format!("unknown q {text:?}: expected generic, root:a/b, sign:+1 or sign:-1"))
    }
}

/// Generic, ±1 and every primitive e^(iπa/p) with 2 ≤ p ≤ `max_p`.
pub fn sample_parameters(max_p: u32) -> Vec<QParam> {
    let mut out = vec![QParam::Generic, QParam::sign(true), QParam::sign(false)];
    for p in 2..=max_p {
        out.extend((1..p).filter_map(|a| QParam::root(a, p).ok()));
    }
    out
}

/// `pmin` is the least p with q^(2p) = 1 (∞ as `None`); `pminbar` agrees with it
/// except at q = ±1, where it is ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootData {
    pub pmin: Option<u32>,
    pub pminbar: Option<u32>,
}

impl RootData {
    /// True when `k < pminbar`.
    pub fn below_bar(&self, k: usize) -> bool {
        self.pminbar.is_none_or(|p| k < p as usize)
    }
}

pub fn root_data(q: QParam) -> RootData {
    match q {
        QParam::Generic => RootData { pmin: None, pminbar: None },
        QParam::Sign(_) => RootData { pmin: Some(1), pminbar: None },
        QParam::RootOfUnity { denominator, .. } => RootData { pmin: Some(denominator), pminbar: Some(denominator) },
    }
}

/// Threshold heights −1, p−1, 2p−1, …
pub fn delta(k: u64, q: QParam) -> Result<i64, ScalarError> {
    match root_data(q).pmin {
        None if k == 0 => Ok(-1),
        None => Err(ScalarError::InfiniteThreshold(k)),
        Some(p) => Ok(k as i64 * p as i64 - 1),
    }
}

/// Writes `s = delta(k) + r` with `0 ≤ r < pmin`; for generic `q` this is `(0, s + 1)`.
pub fn decompose_defect(s: usize, q: QParam) -> (u64, u64) {
    match root_data(q).pmin {
        None => (0, s as u64 + 1),
        Some(p) => {
            let (k, r) = (s as u64 + 1).div_rem(&(p as u64));
            (k, r)
        }
    }
}

static QINT_CACHE: Lazy<Mutex<HashMap<(i64, QParam), Scalar>>> = Lazy::new(Default::default);

/// Quantum integer [k] = (q^k − q^−k)/(q − q^−1).
pub fn qint(k: i64, q: QParam) -> Scalar {
    if k < 0 {
        return -qint(-k, q);
    }
    if let Some(v) = QINT_CACHE.lock().unwrap().get(&(k, q)) {
        return v.clone();
    }
    let value = match q {
        _ if k == 0 => Scalar::zero(),
        QParam::Sign(s) => {
            let sign = if s < 0 && k % 2 == 0 { -1 } else { 1 };
            Scalar::from_int(sign * k)
        }
        QParam::Generic => {
            let k = k as usize;
            let mut num = vec![BigRational::zero(); 2 * k - 1];
            for j in 0..k {
                num[2 * j] = BigRational::one();
            }
            RatFunc { num: Poly::from_coeffs(num), den: Poly::monomial(BigRational::one(), k - 1) }.canonical()
        }
        QParam::RootOfUnity { .. } => {
            let m = q.order().unwrap() as i64;
            let mut coeffs = vec![BigRational::zero(); m as usize];
            for j in 0..k {
                let e = (k - 1 - 2 * j).rem_euclid(m) as usize;
                coeffs[e] += BigRational::one();
            }
            CycloElem::reduced(cyclo_field(m as u32), Poly::from_coeffs(coeffs))
        }
    };
    QINT_CACHE.lock().unwrap().insert((k, q), value.clone());
    value
}

/// Quantum factorial [k]! = [1][2]⋯[k].
pub fn qfact(k: usize, q: QParam) -> Scalar {
    (1..=k as i64).fold(Scalar::one(), |acc, j| acc * qint(j, q))
}

/// Quantum integer at −q: [k]_{−q} = (−1)^(k−1)[k]_q.
pub fn qint_neg(k: i64, q: QParam) -> Scalar {
    let v = qint(k, q);
    if k.rem_euclid(2) == 0 {
        -v
    } else {
        v
    }
}

/// A rational function num/den in `q`, in lowest terms with monic denominator.
/// Nonconstant by construction: constants are demoted to [`Scalar::Rational`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    fn from_rational(c: &BigRational) -> RatFunc {
        RatFunc { num: Poly::constant(c.clone()), den: Poly::one() }
    }

    fn canonical(self) -> Scalar {
        let RatFunc { mut num, mut den } = self;
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_constant() {
            let inv = den.constant_term().recip();
            num = num.scale(&inv);
            den = Poly::one();
        } else if !num.is_constant() {
            if den.is_monomial() {
                let k = num.low_zeros().min(den.low_zeros());
                num = num.shift_down(k);
                den = den.shift_down(k);
            } else if let Some(quot) = num.exact_div(&den) {
                num = quot;
                den = Poly::one();
            } else {
                let g = num.gcd(&den);
                if !g.is_constant() {
                    num = num.exact_div(&g).unwrap();
                    den = den.exact_div(&g).unwrap();
                }
            }
            let lead = den.lead().unwrap().recip();
            num = num.scale(&lead);
            den = den.scale(&lead);
        } else {
            let lead = den.lead().unwrap().recip();
            num = num.scale(&lead);
            den = den.scale(&lead);
        }
        if num.is_constant() && den.is_constant() {
            return Scalar::Rational(num.constant_term());
        }
        Scalar::Function(RatFunc { num, den })
    }

    fn add(&self, other: &RatFunc) -> Scalar {
        if self.den == other.den {
            return RatFunc { num: self.num.add(&other.num), den: self.den.clone() }.canonical();
        }
        RatFunc { num: self.num.mul(&other.den).add(&other.num.mul(&self.den)), den: self.den.mul(&other.den) }
            .canonical()
    }

    fn mul(&self, other: &RatFunc) -> Scalar {
        RatFunc { num: self.num.mul(&other.num), den: self.den.mul(&other.den) }.canonical()
    }

    fn inv(&self) -> Scalar {
        RatFunc { num: self.den.clone(), den: self.num.clone() }.canonical()
    }

    fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
}

/// The field ℚ[x]/Φ_m.
#[derive(Debug)]
pub struct CycloField {
    order: u32,
    modulus: Poly,
}

static CYCLO_CACHE: Lazy<Mutex<HashMap<u32, Arc<CycloField>>>> = Lazy::new(Default::default);

/// Φ_m by dividing x^m − 1 by Φ_d for every proper divisor d of m.
pub fn cyclotomic_poly(m: u32) -> Poly {
    let mut coeffs = vec![0i64; m as usize + 1];
    coeffs[0] = -1;
    coeffs[m as usize] = 1;
    let mut p = Poly::from_ints(&coeffs);
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        p = p.exact_div(&cyclotomic_poly(d)).expect("cyclotomic factor divides x^m - 1");
    }
    p
}

fn cyclo_field(order: u32) -> Arc<CycloField> {
    CYCLO_CACHE
        .lock()
        .unwrap()
        .entry(order)
        .or_insert_with(|| Arc::new(CycloField { order, modulus: cyclotomic_poly(order) }))
        .clone()
}

/// An element of ℚ[x]/Φ_m of positive degree; constants are demoted to
/// [`Scalar::Rational`].
#[derive(Clone, Debug)]
pub struct CycloElem {
    field: Arc<CycloField>,
    value: Poly,
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.value == other.value
    }
}

impl Eq for CycloElem {}

impl std::hash::Hash for CycloElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.value.hash(state);
    }
}

impl CycloElem {
    fn reduced(field: Arc<CycloField>, value: Poly) -> Scalar {
        let value = value.div_rem(&field.modulus).1;
        if value.is_constant() {
            return Scalar::Rational(value.constant_term());
        }
        Scalar::Cyclotomic(CycloElem { field, value })
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn residue(&self) -> &Poly {
        &self.value
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Function(RatFunc),
    Cyclotomic(CycloElem),
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Rational(r) if r.is_zero() => Err(ScalarError::DivisionByZero),
            Scalar::Rational(r) => Ok(Scalar::Rational(r.recip())),
            Scalar::Function(f) => Ok(f.inv()),
            Scalar::Cyclotomic(c) => {
                let inv = c.value.inverse_mod(&c.field.modulus).ok_or(ScalarError::DivisionByZero)?;
                Ok(CycloElem::reduced(c.field.clone(), inv))
            }
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Numerical value as (re, im); `None` in the generic field.
    pub fn to_complex(&self, q: QParam) -> Option<(f64, f64)> {
        match (self, q) {
            (Scalar::Rational(r), _) => Some((poly::rational_to_f64(r), 0.0)),
            (Scalar::Cyclotomic(c), QParam::RootOfUnity { numerator, denominator }) => {
                let theta = std::f64::consts::PI * numerator as f64 / denominator as f64;
                Some(c.value.eval_complex(theta.cos(), theta.sin()))
            }
            _ => None,
        }
    }

    /// JSON form: rationals as "a/b", generic values as coefficient lists,
    /// cyclotomic values as residues of degree below φ(m).
    pub fn to_json(&self) -> Value {
        fn terms(p: &Poly) -> Value {
            Value::Array(
                p.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| json!([k, rational_string(c)]))
                    .collect(),
            )
        }
        match self {
            Scalar::Rational(r) => Value::String(rational_string(r)),
            Scalar::Function(f) => json!({"num": terms(&f.num), "den": terms(&f.den)}),
            Scalar::Cyclotomic(c) => json!({
                "order": c.field.order,
                "coeffs": (0..c.field.modulus.degree().unwrap()).map(|k| rational_string(&c.value.coeff(k))).collect::<Vec<_>>(),
            }),
        }
    }
}

pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", rational_string(r)),
            Scalar::Function(r) if r.den.is_constant() => write!(f, "{}", r.num),
            Scalar::Function(r) => write!(f, "({})/({})", r.num, r.den),
            Scalar::Cyclotomic(c) => write!(f, "{} mod Phi_{}", c.value, c.field.order),
        }
    }
}

/// Rational and generic values written over one denominator with
/// machine-integer numerators, for bulk arithmetic without normalization.
#[derive(Clone, Debug)]
pub struct SharedDenominator {
    pub den: Poly,
    pub nums: Vec<Vec<i128>>,
}

/// `None` if a value is cyclotomic or a numerator outgrows `i128`.
pub fn share_denominator(values: &[&Scalar]) -> Option<SharedDenominator> {
    let mut fractions = Vec::with_capacity(values.len());
    for x in values {
        fractions.push(match x {
            Scalar::Rational(c) => (Poly::constant(c.clone()), Poly::one()),
            Scalar::Function(f) => (f.num.clone(), f.den.clone()),
            Scalar::Cyclotomic(_) => return None,
        });
    }
    let mut den = Poly::one();
    for (_, d) in &fractions {
        if den.exact_div(d).is_none() {
            den = den.mul(&d.exact_div(&den.gcd(d)).unwrap());
        }
    }
    let nums: Vec<Poly> = fractions.iter().map(|(n, d)| n.mul(&den.exact_div(d).unwrap())).collect();
    let scale = nums
        .iter()
        .flat_map(|n| n.coeffs())
        .chain(den.coeffs())
        .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scale = BigRational::from_integer(scale);
    let to_ints =
        |p: &Poly| -> Option<Vec<i128>> { p.scale(&scale).coeffs().iter().map(|c| c.to_integer().to_i128()).collect() };
    let nums = nums.iter().map(to_ints).collect::<Option<Vec<_>>>()?;
    Some(SharedDenominator { den: den.scale(&scale), nums })
}

/// Product of integer polynomials, `None` on overflow.
pub fn int_poly_mul(a: &[i128], b: &[i128]) -> Option<Vec<i128>> {
    if a.is_empty() || b.is_empty() {
        return Some(Vec::new());
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].checked_add(x.checked_mul(*y)?)?;
        }
    }
    Some(out)
}

/// The scalar num/den for an integer numerator.
pub fn int_fraction(num: &[i128], den: &Poly) -> Result<Scalar, ScalarError> {
    if den.is_zero() {
        return Err(ScalarError::DivisionByZero);
    }
    let num = Poly::from_coeffs(num.iter().map(|&c| BigRational::from_integer(c.into())).collect());
    Ok(RatFunc { num, den: den.clone() }.canonical())
}

fn add_scalars(a: &Scalar, b: &Scalar) -> Scalar {
    use Scalar::*;
    match (a, b) {
        (Rational(x), Rational(y)) => Rational(x + y),
        (Rational(x), Function(f)) | (Function(f), Rational(x)) => f.add(&RatFunc::from_rational(x)),
        (Function(f), Function(g)) => f.add(g),
        (Rational(x), Cyclotomic(c)) | (Cyclotomic(c), Rational(x)) => {
            CycloElem::reduced(c.field.clone(), c.value.add(&Poly::constant(x.clone())))
        }
        (Cyclotomic(c), Cyclotomic(d)) => {
            assert_eq!(c.field.order, d.field.order, "mixing cyclotomic fields");
            CycloElem::reduced(c.field.clone(), c.value.add(&d.value))
        }
        _ => panic!("mixing scalars from generic and root-of-unity fields"),
    }
}

fn mul_scalars(a: &Scalar, b: &Scalar) -> Scalar {
    use Scalar::*;
    match (a, b) {
        (Rational(x), Rational(y)) => Rational(x * y),
        (Rational(x), _) | (_, Rational(x)) if x.is_zero() => Scalar::zero(),
        (Rational(x), Function(f)) | (Function(f), Rational(x)) => {
            Function(RatFunc { num: f.num.scale(x), den: f.den.clone() })
        }
        (Function(f), Function(g)) => f.mul(g),
        (Rational(x), Cyclotomic(c)) | (Cyclotomic(c), Rational(x)) => {
            Cyclotomic(CycloElem { field: c.field.clone(), value: c.value.scale(x) })
        }
        (Cyclotomic(c), Cyclotomic(d)) => {
            assert_eq!(c.field.order, d.field.order, "mixing cyclotomic fields");
            CycloElem::reduced(c.field.clone(), c.value.mul(&d.value))
        }
        _ => panic!("mixing scalars from generic and root-of-unity fields"),
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Function(f) => Scalar::Function(f.neg()),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(CycloElem { field: c.field.clone(), value: c.value.neg() }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $f:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $f(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $f(&self, &rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $f(&self, rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $f(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_scalars);
forward_binop!(Mul, mul, mul_scalars);
forward_binop!(Sub, sub, |a: &Scalar, b: &Scalar| add_scalars(a, &-b));

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = add_scalars(self, rhs);
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = add_scalars(self, &rhs);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = add_scalars(self, &-rhs);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = mul_scalars(self, rhs);
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Scalar {
        Scalar::Rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}
