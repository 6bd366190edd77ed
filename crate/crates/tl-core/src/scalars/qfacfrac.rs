use super::{qint, root_data, QParam, Scalar, ScalarError};
use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

/// A formal product ±∏[k]^(e_k) of quantum integers.
///
/// Kept symbolic so that factors vanishing at a root of unity can be paired
/// between numerator and denominator before evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QFacFrac {
    negative: bool,
    exponents: BTreeMap<u64, i64>,
}

impl QFacFrac {
    pub fn one() -> Self {
        QFacFrac::default()
    }

    pub fn minus_one() -> Self {
        QFacFrac { negative: true, exponents: BTreeMap::new() }
    }

    /// The quantum integer [k] for k ≥ 1.
    pub fn qint(k: u64) -> Self {
        assert!(k >= 1, "QFacFrac holds only positive quantum integers");
        if k == 1 {
            return QFacFrac::one();
        }
        QFacFrac { negative: false, exponents: BTreeMap::from([(k, 1)]) }
    }

    /// [k]! for k ≥ 0.
    pub fn qfact(k: u64) -> Self {
        QFacFrac { negative: false, exponents: (2..=k).map(|j| (j, 1)).collect() }
    }

    /// (−1)^e.
    pub fn sign_power(e: i64) -> Self {
        QFacFrac { negative: e.rem_euclid(2) == 1, exponents: BTreeMap::new() }
    }

    /// [k] at −q, which is (−1)^(k−1)[k].
    pub fn qint_neg(k: u64) -> Self {
        QFacFrac::qint(k).mul(&QFacFrac::sign_power(k as i64 - 1))
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exponents
    }

    pub fn mul(&self, other: &QFacFrac) -> QFacFrac {
        let mut exponents = self.exponents.clone();
        for (&k, &e) in &other.exponents {
            let slot = exponents.entry(k).or_insert(0);
            *slot += e;
            if *slot == 0 {
                exponents.remove(&k);
            }
        }
        QFacFrac { negative: self.negative ^ other.negative, exponents }
    }

    pub fn inv(&self) -> QFacFrac {
        QFacFrac { negative: self.negative, exponents: self.exponents.iter().map(|(&k, &e)| (k, -e)).collect() }
    }

    pub fn div(&self, other: &QFacFrac) -> QFacFrac {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: i64) -> QFacFrac {
        if e == 0 {
            return QFacFrac::one();
        }
        QFacFrac {
            negative: self.negative && e.rem_euclid(2) == 1,
            exponents: self.exponents.iter().map(|(&k, &x)| (k, x * e)).collect(),
        }
    }

    /// Net exponent of the factors vanishing at `q` (indices divisible by p̄).
    pub fn vanishing_exponent(&self, q: QParam) -> i64 {
        match root_data(q).pminbar {
            Some(p) => self.exponents.iter().filter(|(&k, _)| k % p as u64 == 0).map(|(_, &e)| e).sum(),
            None => 0,
        }
    }

    /// Evaluates at `q`. At a root of unity the vanishing factors [jp] must
    /// balance: a positive surplus gives exactly 0, a deficit is a pole, and a
    /// balanced product is replaced by its limit, in which each [jp] contributes
    /// j·(−1)^(j·p′) relative to the common vanishing factor.
    pub fn eval(&self, q: QParam) -> Result<Scalar, ScalarError> {
        let net = self.vanishing_exponent(q);
        if net > 0 {
            return Ok(Scalar::zero());
        }
        if net < 0 {
            return Err(ScalarError::Pole(net));
        }
        let mut num = Scalar::one();
        let mut den = Scalar::one();
        let mut limit = BigRational::one();
        for (&k, &e) in &self.exponents {
            let factor = match q {
                QParam::RootOfUnity { numerator, denominator } if k % denominator as u64 == 0 => {
                    let j = (k / denominator as u64) as i64;
                    let sign = if (j * numerator as i64) % 2 == 1 { -1 } else { 1 };
                    let base = BigRational::from_integer((sign * j).into());
                    limit *= num_traits::pow::Pow::pow(&base, e as i32);
                    continue;
                }
                _ => qint(k as i64, q),
            };
            let target = if e > 0 { &mut num } else { &mut den };
            for _ in 0..e.unsigned_abs() {
                *target = &*target * &factor;
            }
        }
        let mut value = num.checked_div(&den)? * Scalar::Rational(limit);
        if self.negative {
            value = -value;
        }
        Ok(value)
    }
}

impl fmt::Display for QFacFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.exponents.iter().map(|(k, e)| if *e == 1 { format!("[{k}]") } else { format!("[{k}]^{e}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}
