//! Rational functions in q, r, d1..d8 with rational coefficients.
//!
//! Stored as a coprime pair of integer polynomials with nonnegative
//! exponents; the denominator's leading coefficient is positive.  That pair
//! is unique, so structural equality is field equality.

use super::poly::{gcd, var_name, Exps, MPoly, NVARS, ZERO_EXPS};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn from_poly(p: MPoly) -> Self {
        RatFunc { num: p, den: MPoly::one() }
    }

    pub fn var(i: usize) -> Self {
        Self::from_poly(MPoly::var(i))
    }

    /// q^e for any integer e.
    pub fn q_pow(e: i64) -> Self {
        let mut x = ZERO_EXPS;
        x[0] = e.unsigned_abs() as u16;
        let m = MPoly::monomial(x, BigInt::one());
        if e >= 0 {
            Self::from_poly(m)
        } else {
            RatFunc { num: MPoly::one(), den: m }
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_poly(MPoly::constant(n))
    }

    pub fn from_ratio(r: &BigRational) -> Self {
        Self::from_parts(MPoly::constant(r.numer().clone()), MPoly::constant(r.denom().clone()))
            .expect("rational has nonzero denominator")
    }

    pub fn from_parts(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: MPoly::one() };
        }
        if den.is_one() {
            return RatFunc { num, den };
        }
        let g = gcd(&num, &den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        if d.lc().is_negative() {
            n = n.neg();
            d = d.neg();
        }
        RatFunc { num: n, den: d }
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Constant value if the function does not depend on any variable.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(BigRational::new(n, d))
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: self.num.add(&o.num), den: MPoly::one() };
        }
        if self.den == o.den {
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            if num.is_zero() {
                return RatFunc { num, den: MPoly::one() };
            }
            return RatFunc { num, den: self.den.mul(&o.den) };
        }
        let da = self.den.div_exact(&g).expect("gcd divides");
        let db = o.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&db).add(&o.num.mul(&da));
        if num.is_zero() {
            return RatFunc { num, den: MPoly::one() };
        }
        let g2 = gcd(&num, &g);
        if g2.is_one() {
            RatFunc { num, den: da.mul(&db).mul(&g) }
        } else {
            let num = num.div_exact(&g2).expect("gcd divides");
            let g = g.div_exact(&g2).expect("gcd divides");
            let mut r = RatFunc { num, den: da.mul(&db).mul(&g) };
            if r.den.lc().is_negative() {
                r.num = r.num.neg();
                r.den = r.den.neg();
            }
            r
        }
    }

    pub fn neg_ref(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RatFunc { num: MPoly::zero(), den: MPoly::one() };
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: self.num.mul(&o.num), den: MPoly::one() };
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let (na, db) = if g1.is_one() {
            (self.num.clone(), o.den.clone())
        } else {
            (self.num.div_exact(&g1).unwrap(), o.den.div_exact(&g1).unwrap())
        };
        let (nb, da) = if g2.is_one() {
            (o.num.clone(), self.den.clone())
        } else {
            (o.num.div_exact(&g2).unwrap(), self.den.div_exact(&g2).unwrap())
        };
        let mut r = RatFunc { num: na.mul(&nb), den: da.mul(&db) };
        if r.den.lc().is_negative() {
            r.num = r.num.neg();
            r.den = r.den.neg();
        }
        r
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = RatFunc { num: self.den.clone(), den: self.num.clone() };
        if r.den.lc().is_negative() {
            r.num = r.num.neg();
            r.den = r.den.neg();
        }
        Ok(r)
    }

    pub fn div_ref(&self, o: &Self) -> Result<Self> {
        Ok(self.mul_ref(&o.inv()?))
    }

    /// Evaluates at values for (q, r, d1, ...); missing deltas count as unused.
    pub fn eval(&self, vals: &[BigRational]) -> Result<BigRational> {
        let mut v = vals.to_vec();
        v.resize(NVARS, BigRational::zero());
        let d = self.den.eval(&v);
        if d.is_zero() {
            return Err(Error::Evaluation { factor: vanishing_factor(&self.den, &v) });
        }
        Ok(self.num.eval(&v) / d)
    }

    /// Image under q -> 1/q.
    pub fn q_invert(&self) -> Self {
        let dn = self.num.degree_in(0) as i64;
        let dd = self.den.degree_in(0) as i64;
        let n = RatFunc::from_poly(self.num.reverse_q()).mul_ref(&RatFunc::q_pow(dd - dn));
        n.mul_ref(&RatFunc::from_poly(self.den.reverse_q()).inv().expect("nonzero"))
    }

    /// Canonical text: `P` or `(P)/(Q)` with Q monic and free of q factors.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let shift = self.den.min_exps()[0] as i32;
        let mut dm = ZERO_EXPS;
        dm[0] = shift as u16;
        let den = self.den.div_monomial(&dm);
        let lc = den.lc().clone();
        let p = render_sum(&self.num, -shift, &lc);
        if den.is_constant() {
            p
        } else {
            format!("({})/({})", p, render_sum(&den, 0, &lc))
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), i: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.i != p.s.len() {
            return Err(Error::Parse(format!("trailing input at byte {} in {:?}", p.i, s)));
        }
        Ok(v)
    }
}

fn vanishing_factor(den: &MPoly, v: &[BigRational]) -> String {
    let m = den.min_exps();
    for i in 0..NVARS {
        if m[i] > 0 && v[i].is_zero() {
            return var_name(i);
        }
    }
    RatFunc::from_poly(den.clone()).to_text()
}

fn render_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn render_sum(p: &MPoly, qshift: i32, scale: &BigInt) -> String {
    let mut out = String::new();
    for (k, (e, c)) in p.terms().iter().enumerate() {
        let c = BigRational::new(c.clone(), scale.clone());
        let neg = c.is_negative();
        let a = c.abs();
        if neg {
            out.push('-');
        } else if k > 0 {
            out.push('+');
        }
        let mut factors: Vec<String> = Vec::new();
        for i in 0..NVARS {
            let x = e[i] as i32 + if i == 0 { qshift } else { 0 };
            if x == 0 {
                continue;
            }
            if x == 1 {
                factors.push(var_name(i));
            } else {
                factors.push(format!("{}^{}", var_name(i), x));
            }
        }
        if factors.is_empty() {
            out.push_str(&render_rational(&a));
        } else {
            if !a.is_one() {
                out.push_str(&render_rational(&a));
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

fn exps_of(i: usize) -> Exps {
    let mut e = ZERO_EXPS;
    e[i] = 1;
    e
}

/// Small recursive-descent parser for + - * / ^ and parentheses.
struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn err<T>(&self, what: &str) -> Result<T> {
        Err(Error::Parse(format!(
            "{} at byte {} in {:?}",
            what,
            self.i,
            String::from_utf8_lossy(self.s)
        )))
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    acc = acc.add_ref(&self.term()?);
                }
                Some(b'-') => {
                    self.i += 1;
                    acc = acc.sub_ref(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    acc = acc.mul_ref(&self.unary()?);
                }
                Some(b'/') => {
                    self.i += 1;
                    let d = self.unary()?;
                    acc = acc.div_ref(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(b'-') => {
                self.i += 1;
                Ok(self.unary()?.neg_ref())
            }
            Some(b'+') => {
                self.i += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            let neg = if self.peek() == Some(b'-') {
                self.i += 1;
                true
            } else {
                false
            };
            let n = self.integer()?;
            let n: u32 = n.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
            let mut r = RatFunc::from_poly(MPoly::one());
            for _ in 0..n {
                r = r.mul_ref(&base);
            }
            return if neg { r.inv() } else { Ok(r) };
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return self.err("expected integer");
        }
        let t = std::str::from_utf8(&self.s[start..self.i]).unwrap();
        Ok(t.parse::<BigInt>().unwrap())
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.i += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(RatFunc::from_bigint(self.integer()?)),
            Some(b'q') => {
                self.i += 1;
                Ok(RatFunc::from_poly(MPoly::monomial(exps_of(0), BigInt::one())))
            }
            Some(b'r') => {
                self.i += 1;
                Ok(RatFunc::var(1))
            }
            Some(b'd') => {
                self.i += 1;
                let k = self.integer()?;
                let k: usize = k.try_into().map_err(|_| Error::Parse("bad delta index".into()))?;
                if k == 0 || k > super::poly::MAX_DELTAS {
                    return self.err("delta index out of range");
                }
                Ok(RatFunc::var(k + 1))
            }
            _ => self.err("unexpected token"),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: MPoly::zero(), den: MPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc { num: MPoly::one(), den: MPoly::one() }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        self.add_ref(&o)
    }
}

impl<'a> Add<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn add(self, o: &'a RatFunc) -> RatFunc {
        self.add_ref(o)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        self.sub_ref(&o)
    }
}

impl<'a> Sub<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &'a RatFunc) -> RatFunc {
        self.sub_ref(o)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        self.mul_ref(&o)
    }
}

impl<'a> Mul<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &'a RatFunc) -> RatFunc {
        self.mul_ref(o)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

/// Integer binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RatFunc {
        RatFunc::parse(s).unwrap()
    }

    #[test]
    fn cancellation() {
        assert_eq!(p("(q^2-1)/(q-1)"), p("q+1"));
        assert_eq!(p("(q-q^-1)*(q+q^-1)"), p("q^2-q^-2"));
        assert!(p("r/r-1").is_zero());
    }

    #[test]
    fn canonical_text_round_trip() {
        for s in ["0", "1", "-3/4", "q^-2+1+q^2", "(d1*r-2*q)/(r^2+q)", "(q^3-q^-1)/(3*r)"] {
            let x = p(s);
            let t = x.to_text();
            assert_eq!(p(&t), x, "{} -> {}", s, t);
            assert_eq!(p(&t).to_text(), t);
        }
        assert_eq!(p("q+q^-1").to_text(), "q+q^-1");
        assert_eq!(p("1/(2*r)").to_text(), "(1/2)/(r)");
    }

    #[test]
    fn q_inversion() {
        assert_eq!(p("q^3+q/r").q_invert(), p("q^-3+q^-1/r"));
    }
}
