//! Coefficient fields.
//!
//! Everything above this module is generic over [`Field`].  Two instances
//! exist: [`RatFunc`] (symbolic q, r, deltas) and `BigRational`
//! (all parameters specialized to rationals).

pub mod poly;
pub mod ratfunc;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use poly::MAX_DELTAS;
pub use ratfunc::{binomial, RatFunc};

/// Exact field of coefficients.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn inv(&self) -> Result<Self>;

    fn try_div(&self, o: &Self) -> Result<Self> {
        Ok(self.clone() * &o.inv()?)
    }

    fn from_bigint(n: BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    fn from_ratio(r: &BigRational) -> Self;

    /// Canonical text in the scalar grammar.
    fn to_text(&self) -> String;

    fn parse_text(s: &str) -> Result<Self>;

    /// Exact value at a specialization point.
    fn specialize(&self, p: &SpecializationPoint) -> Result<BigRational>;

    fn mode_name() -> &'static str;
}

impl Field for RatFunc {
    fn inv(&self) -> Result<Self> {
        RatFunc::inv(self)
    }
    fn from_bigint(n: BigInt) -> Self {
        RatFunc::from_bigint(n)
    }
    fn from_ratio(r: &BigRational) -> Self {
        RatFunc::from_ratio(r)
    }
    fn to_text(&self) -> String {
        RatFunc::to_text(self)
    }
    fn parse_text(s: &str) -> Result<Self> {
        RatFunc::parse(s)
    }
    fn specialize(&self, p: &SpecializationPoint) -> Result<BigRational> {
        p.validate()?;
        self.eval(&p.values())
    }
    fn mode_name() -> &'static str {
        "symbolic"
    }
}

impl Field for BigRational {
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn from_bigint(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }
    fn from_ratio(r: &BigRational) -> Self {
        r.clone()
    }
    fn to_text(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
    fn parse_text(s: &str) -> Result<Self> {
        parse_rational(s)
    }
    fn specialize(&self, _p: &SpecializationPoint) -> Result<BigRational> {
        Ok(self.clone())
    }
    fn mode_name() -> &'static str {
        "specialized"
    }
}

/// Parses `p` or `p/q` (optionally signed).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational: {:?}", s));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Bound used by the root-of-unity screen.
pub const ROOT_SCREEN_BOUND: u32 = 64;

/// Rational values for q, rho and the deltas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializationPoint {
    pub q: BigRational,
    pub rho: BigRational,
    pub deltas: Vec<BigRational>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl SpecializationPoint {
    /// q = 5/3, rho = 2, delta_k = 1/k.
    pub fn default_point(n_deltas: usize) -> Self {
        SpecializationPoint {
            q: rat(5, 3),
            rho: rat(2, 1),
            deltas: (1..=n_deltas as i64).map(|k| rat(1, k)).collect(),
        }
    }

    /// Three fixed generic points; the first is the default.
    pub fn standard_points(n_deltas: usize) -> Vec<Self> {
        let second = SpecializationPoint {
            q: rat(7, 2),
            rho: rat(-3, 5),
            deltas: (1..=n_deltas as i64).map(|k| rat(2 * k - 5, k + 3)).collect(),
        };
        let third = SpecializationPoint {
            q: rat(-2, 9),
            rho: rat(11, 3),
            deltas: (1..=n_deltas as i64).map(|k| rat(k * k + 1, 7)).collect(),
        };
        vec![Self::default_point(n_deltas), second, third]
    }

    pub fn validate(&self) -> Result<()> {
        if self.q.is_zero() {
            return Err(Error::Validation("q must be nonzero".into()));
        }
        if self.q.abs().is_one() {
            return Err(Error::Validation("q must not be 1 or -1".into()));
        }
        if self.rho.is_zero() {
            return Err(Error::Validation("rho must be nonzero".into()));
        }
        let mut p = BigRational::one();
        for n in 1..=ROOT_SCREEN_BOUND {
            p *= &self.q;
            if p.is_one() {
                return Err(Error::Validation(format!("q is a root of unity of order {}", n)));
            }
        }
        if self.deltas.len() > MAX_DELTAS {
            return Err(Error::Validation(format!("at most {} deltas are supported", MAX_DELTAS)));
        }
        Ok(())
    }

    /// Values in variable order q, r, d1, d2, ...
    pub fn values(&self) -> Vec<BigRational> {
        let mut v = vec![self.q.clone(), self.rho.clone()];
        v.extend(self.deltas.iter().cloned());
        v
    }

    pub fn describe(&self) -> String {
        let d: Vec<String> = self.deltas.iter().map(|x| x.to_text()).collect();
        format!("q={} rho={} delta=[{}]", self.q.to_text(), self.rho.to_text(), d.join(","))
    }
}

/// The scalars q, q^-1, rho and deltas in a chosen field.
#[derive(Clone, Debug)]
pub struct Params<F> {
    pub q: F,
    pub q_inv: F,
    pub rho: F,
    pub rho_inv: F,
    pub deltas: Vec<F>,
}

impl Params<RatFunc> {
    /// Indeterminate q, r and `n_deltas` indeterminate deltas.
    pub fn symbolic(n_deltas: usize) -> Result<Self> {
        if n_deltas > MAX_DELTAS {
            return Err(Error::Configuration(format!(
                "{} deltas requested, at most {} supported",
                n_deltas, MAX_DELTAS
            )));
        }
        Ok(Params {
            q: RatFunc::var(0),
            q_inv: RatFunc::q_pow(-1),
            rho: RatFunc::var(1),
            rho_inv: RatFunc::var(1).inv()?,
            deltas: (1..=n_deltas).map(|k| RatFunc::var(k + 1)).collect(),
        })
    }
}

impl Params<BigRational> {
    pub fn specialized(p: &SpecializationPoint) -> Result<Self> {
        p.validate()?;
        Ok(Params {
            q: p.q.clone(),
            q_inv: p.q.recip(),
            rho: p.rho.clone(),
            rho_inv: p.rho.recip(),
            deltas: p.deltas.clone(),
        })
    }
}

impl<F: Field> Params<F> {
    pub fn qpow(&self, e: i64) -> F {
        let base = if e >= 0 { &self.q } else { &self.q_inv };
        let mut r = F::one();
        for _ in 0..e.unsigned_abs() {
            r = r * base;
        }
        r
    }

    /// [n]_q as the sum q^{n-1} + q^{n-3} + ... + q^{1-n}.
    pub fn qnum(&self, n: i64) -> Result<F> {
        if n < 1 {
            return Err(Error::Domain(format!("[n]_q needs n >= 1, got {}", n)));
        }
        let mut acc = F::zero();
        for j in 0..n {
            acc = acc + self.qpow(n - 1 - 2 * j);
        }
        Ok(acc)
    }

    /// q - q^-1.
    pub fn qdiff(&self) -> F {
        self.q.clone() - &self.q_inv
    }

    /// delta_k for k >= 1.
    pub fn delta(&self, k: usize) -> Result<F> {
        if k == 0 || k > self.deltas.len() {
            return Err(Error::Configuration(format!(
                "delta_{} requested but only {} deltas configured; need at least {}",
                k,
                self.deltas.len(),
                k
            )));
        }
        Ok(self.deltas[k - 1].clone())
    }
}

/// [n]_q as a symbolic Laurent polynomial.
pub fn qnum(n: i64) -> Result<RatFunc> {
    Params::symbolic(0)?.qnum(n)
}

/// Specializes a symbolic scalar at a point.
pub fn specialize(x: &RatFunc, p: &SpecializationPoint) -> Result<BigRational> {
    x.specialize(p)
}
