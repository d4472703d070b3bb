//! Sparse commutative polynomials with big-integer coefficients.
//!
//! Variables are numbered 0 = q, 1 = r (rho), 2.. = d1, d2, ... Exponents are
//! nonnegative here; negative powers of q are handled one level up by the
//! rational-function type.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Number of variable slots: q, r and up to eight deltas.
pub const NVARS: usize = 10;
pub const MAX_DELTAS: usize = NVARS - 2;

pub type Exps = [u16; NVARS];

pub const ZERO_EXPS: Exps = [0; NVARS];

pub fn var_name(i: usize) -> String {
    match i {
        0 => "q".to_string(),
        1 => "r".to_string(),
        k => format!("d{}", k - 1),
    }
}

fn total(e: &Exps) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

/// Degree-lexicographic order; ties broken by the highest-numbered variable.
pub fn mono_cmp(a: &Exps, b: &Exps) -> Ordering {
    total(a).cmp(&total(b)).then_with(|| {
        for i in (0..NVARS).rev() {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

fn exps_add(a: &Exps, b: &Exps) -> Exps {
    let mut r = *a;
    for i in 0..NVARS {
        r[i] += b[i];
    }
    r
}

fn exps_divides(d: &Exps, a: &Exps) -> bool {
    (0..NVARS).all(|i| d[i] <= a[i])
}

fn exps_sub(a: &Exps, b: &Exps) -> Exps {
    let mut r = *a;
    for i in 0..NVARS {
        r[i] -= b[i];
    }
    r
}

/// Polynomial as a list of terms sorted by decreasing monomial, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MPoly {
    terms: Vec<(Exps, BigInt)>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MPoly { terms: vec![(ZERO_EXPS, c)] }
        }
    }

    pub fn var(i: usize) -> Self {
        let mut e = ZERO_EXPS;
        e[i] = 1;
        MPoly { terms: vec![(e, BigInt::one())] }
    }

    pub fn monomial(e: Exps, c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MPoly { terms: vec![(e, c)] }
        }
    }

    /// Builds from arbitrary terms, combining duplicates.
    pub fn from_terms(mut v: Vec<(Exps, BigInt)>) -> Self {
        v.sort_by(|a, b| mono_cmp(&b.0, &a.0));
        let mut out: Vec<(Exps, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        MPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Exps, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == ZERO_EXPS && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == ZERO_EXPS)
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub fn lm(&self) -> &Exps {
        &self.terms[0].0
    }

    pub fn neg(&self) -> Self {
        MPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    fn merge(&self, other: &Self, sign: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match mono_cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, if sign { -&b[j].1 } else { b[j].1.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if sign { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            out.push((t.0, if sign { -&t.1 } else { t.1.clone() }));
        }
        MPoly { terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut v = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                v.push((exps_add(ea, eb), ca * cb));
            }
        }
        Self::from_terms(v)
    }

    /// Multiplication by a single term keeps the order, so no re-sort is needed.
    pub fn mul_term(&self, e: &Exps, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(x, d)| (exps_add(x, e), d * c)).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.mul_term(&ZERO_EXPS, c)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides every coefficient by `c`, which must divide them exactly.
    pub fn div_int(&self, c: &BigInt) -> Self {
        MPoly { terms: self.terms.iter().map(|(e, d)| (*e, d / c)).collect() }
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Componentwise minimum exponent: the largest monomial dividing every term.
    pub fn min_exps(&self) -> Exps {
        let mut m = match self.terms.first() {
            Some(t) => t.0,
            None => return ZERO_EXPS,
        };
        for (e, _) in &self.terms[1..] {
            for i in 0..NVARS {
                m[i] = m[i].min(e[i]);
            }
        }
        m
    }

    pub fn div_monomial(&self, m: &Exps) -> Self {
        MPoly { terms: self.terms.iter().map(|(e, c)| (exps_sub(e, m), c.clone())).collect() }
    }

    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.iter().map(|t| t.0[v]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| total(&t.0)).max().unwrap_or(0)
    }

    /// Bit mask of the variables that occur.
    pub fn var_mask(&self) -> u32 {
        let mut m = 0u32;
        for (e, _) in &self.terms {
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    m |= 1 << i;
                }
            }
        }
        m
    }

    /// Coefficients with respect to variable `v`, indexed by power.
    pub fn to_univariate(&self, v: usize) -> Vec<MPoly> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Exps, BigInt)>> = vec![Vec::new(); d + 1];
        for (e, c) in &self.terms {
            let mut e2 = *e;
            let p = e2[v] as usize;
            e2[v] = 0;
            buckets[p].push((e2, c.clone()));
        }
        // Removing a variable can reorder monomials, so re-sort each bucket.
        buckets.into_iter().map(MPoly::from_terms).collect()
    }

    pub fn from_univariate(coeffs: &[MPoly], v: usize) -> Self {
        let mut all = Vec::new();
        for (p, c) in coeffs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut e2 = *e;
                e2[v] += p as u16;
                all.push((e2, x.clone()));
            }
        }
        Self::from_terms(all)
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.terms.len() == 1 {
            let (de, dc) = &d.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                if !exps_divides(de, e) {
                    return None;
                }
                let (qq, rr) = c.div_rem(dc);
                if !rr.is_zero() {
                    return None;
                }
                out.push((exps_sub(e, de), qq));
            }
            return Some(MPoly { terms: out });
        }
        for v in 0..NVARS {
            if d.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let (de, dc) = (&d.terms[0].0, &d.terms[0].1);
        let mut r = self.clone();
        let mut quot = Vec::new();
        while !r.is_zero() {
            let (re, rc) = (&r.terms[0].0, &r.terms[0].1);
            if !exps_divides(de, re) {
                return None;
            }
            let (qc, rem) = rc.div_rem(dc);
            if !rem.is_zero() {
                return None;
            }
            let qe = exps_sub(re, de);
            r = r.sub(&d.mul_term(&qe, &qc));
            quot.push((qe, qc));
        }
        Some(MPoly { terms: quot })
    }

    /// Sign-normalized copy: leading coefficient positive.
    pub fn normalize_sign(self) -> Self {
        if !self.is_zero() && self.lc().is_negative() {
            self.neg()
        } else {
            self
        }
    }

    pub fn eval(&self, vals: &[BigRational]) -> BigRational {
        let mut cache: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]; NVARS];
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for i in 0..NVARS {
                let p = e[i] as usize;
                if p == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                while powers.len() <= p {
                    let next = powers.last().unwrap() * &vals[i];
                    powers.push(next);
                }
                t *= &powers[p];
            }
            acc += t;
        }
        acc
    }

    /// Substitutes q -> 1/q, returning the numerator after clearing by q^deg_q.
    pub fn reverse_q(&self) -> MPoly {
        let d = self.degree_in(0);
        MPoly::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = *e;
                    e2[0] = d - e2[0];
                    (e2, c.clone())
                })
                .collect(),
        )
    }
}

/// Greatest common divisor with positive leading coefficient.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.clone().normalize_sign();
    }
    if b.is_zero() {
        return a.clone().normalize_sign();
    }
    let ma = a.min_exps();
    let mb = b.min_exps();
    let mut m = ZERO_EXPS;
    for i in 0..NVARS {
        m[i] = ma[i].min(mb[i]);
    }
    let a1 = a.div_monomial(&ma);
    let b1 = b.div_monomial(&mb);
    let ca = a1.content();
    let cb = b1.content();
    let c = ca.gcd(&cb);
    let a1 = a1.div_int(&ca);
    let b1 = b1.div_int(&cb);
    let g = gcd_primitive(&a1, &b1);
    g.mul_term(&m, &c).normalize_sign()
}

/// GCD of two primitive polynomials with no monomial factor.
fn gcd_primitive(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    if a == b || *a == b.neg() {
        return a.clone().normalize_sign();
    }
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if big.div_exact(small).is_some() {
        return small.clone().normalize_sign();
    }
    let mask_a = a.var_mask();
    let mask_b = b.var_mask();
    if mask_a != mask_b {
        // A variable present in only one argument: the gcd divides each of
        // that argument's coefficients with respect to the variable.
        let only = (mask_a ^ mask_b).trailing_zeros() as usize;
        let (with, without) = if mask_a & (1 << only) != 0 { (a, b) } else { (b, a) };
        let mut coeffs = with.to_univariate(only);
        coeffs.retain(|c| !c.is_zero());
        coeffs.sort_by_key(|c| c.len());
        let mut g = without.clone();
        for c in &coeffs {
            g = gcd(&g, c);
            if g.is_constant() {
                return MPoly::one();
            }
        }
        return g.normalize_sign();
    }
    // Main variable: the shared one of smallest degree.
    let mut best = None;
    for v in 0..NVARS {
        if mask_a & (1 << v) != 0 {
            let d = a.degree_in(v).max(b.degree_in(v));
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((v, d));
            }
        }
    }
    let v = best.unwrap().0;
    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    let (cont_a, pa) = univ_primitive(ua);
    let (cont_b, pb) = univ_primitive(ub);
    let cg = gcd(&cont_a, &cont_b);
    let g = if pa.len() >= pb.len() { prs(pa, pb) } else { prs(pb, pa) };
    let g = MPoly::from_univariate(&g, v);
    let g = g.div_int(&g.content());
    cg.mul(&g).normalize_sign()
}

fn univ_content(u: &[MPoly]) -> MPoly {
    let mut nz: Vec<&MPoly> = u.iter().filter(|c| !c.is_zero()).collect();
    nz.sort_by_key(|c| c.len());
    let mut g = MPoly::zero();
    for c in nz {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn univ_primitive(u: Vec<MPoly>) -> (MPoly, Vec<MPoly>) {
    let c = univ_content(&u);
    if c.is_one() {
        return (c, u);
    }
    let p = u
        .iter()
        .map(|x| x.div_exact(&c).expect("content divides coefficient"))
        .collect();
    (c, p)
}

fn trim(u: &mut Vec<MPoly>) {
    while u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

/// Pseudo-remainder of a by b over the coefficient domain.
fn prem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let db = b.len() - 1;
    let lcb = &b[db];
    let mut r: Vec<MPoly> = a.to_vec();
    trim(&mut r);
    let e = a.len() as i64 - b.len() as i64 + 1;
    let mut steps = 0i64;
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let s = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lcb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + s] = r[i + s].sub(&bc.mul(&lr));
        }
        trim(&mut r);
        steps += 1;
    }
    if steps < e {
        let f = lcb.pow((e - steps) as u32);
        for c in r.iter_mut() {
            *c = c.mul(&f);
        }
    }
    r
}

/// Primitive polynomial remainder sequence; inputs primitive, deg a >= deg b.
fn prs(mut a: Vec<MPoly>, mut b: Vec<MPoly>) -> Vec<MPoly> {
    trim(&mut a);
    trim(&mut b);
    loop {
        if b.is_empty() {
            return a;
        }
        if b.len() == 1 {
            return vec![MPoly::one()];
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if r.len() == 1 {
            return vec![MPoly::one()];
        }
        let (_, r) = univ_primitive(r);
        a = b;
        b = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> MPoly {
        MPoly::var(0)
    }
    fn r() -> MPoly {
        MPoly::var(1)
    }
    fn c(n: i64) -> MPoly {
        MPoly::constant(BigInt::from(n))
    }

    #[test]
    fn gcd_of_products() {
        let f = q().add(&c(1));
        let g = q().mul(&q()).add(&r()).add(&c(3));
        let h = r().sub(&q().mul(&c(2)));
        let a = f.mul(&g).mul(&c(6));
        let b = f.mul(&h).mul(&c(4));
        assert_eq!(gcd(&a, &b), f.mul(&c(2)));
        assert_eq!(gcd(&g, &h), MPoly::one());
    }

    #[test]
    fn gcd_with_monomial_part() {
        let a = q().mul(&q()).mul(&r()).mul(&q().add(&c(1)));
        let b = q().mul(&r()).mul(&r()).mul(&q().sub(&c(1)).mul(&q().add(&c(1))));
        assert_eq!(gcd(&a, &b), q().mul(&r()).mul(&q().add(&c(1))));
    }

    #[test]
    fn exact_division() {
        let a = q().pow(4).sub(&c(1));
        let b = q().sub(&c(1));
        let quo = a.div_exact(&b).unwrap();
        assert_eq!(quo.mul(&b), a);
        assert!(a.div_exact(&q().add(&c(2))).is_none());
    }
}
