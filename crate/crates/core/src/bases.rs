//! The two candidate bases and their counting series.
//!
//! Zig-zag indices live in the two-letter algebra: λ = (λ0, λ1, ..., λr) stands
//! for a^λ0 b^λ1 a^λ2 ...  WG indices are ordered products of W_{-k}, G_{p+1}
//! and W_{l+1} factors with the last block written in descending order.

use crate::error::{Error, Result};
use crate::ncpoly::Word;
use crate::series::ModeLetter;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Shape test: strictly increasing up to some position, weakly decreasing after.
pub fn is_irreducible(lam: &[usize]) -> bool {
    if lam.is_empty() {
        return true;
    }
    if lam[1..].contains(&0) {
        return false;
    }
    let mut i = 0;
    while i + 1 < lam.len() && lam[i] < lam[i + 1] {
        i += 1;
    }
    lam[i..].windows(2).all(|w| w[0] >= w[1])
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZigzagIndex(pub Vec<usize>);

impl ZigzagIndex {
    pub fn unit() -> Self {
        ZigzagIndex(Vec::new())
    }

    pub fn new(lam: Vec<usize>) -> Result<Self> {
        let lam = if lam == [0] { Vec::new() } else { lam };
        if !is_irreducible(&lam) {
            return Err(Error::Validation(format!("{:?} is not an irreducible tuple", lam)));
        }
        Ok(ZigzagIndex(lam))
    }

    pub fn length(&self) -> usize {
        self.0.iter().sum()
    }

    /// a^λ0 b^λ1 a^λ2 ... with a = 0, b = 1.
    pub fn word(&self) -> Word {
        let mut v = Vec::with_capacity(self.length());
        for (i, &e) in self.0.iter().enumerate() {
            v.extend(std::iter::repeat_n((i % 2) as u8, e));
        }
        Word::from_slice(&v)
    }

    pub fn from_word(w: &Word) -> Result<Self> {
        let mut lam = Vec::new();
        let mut cur = 0u8;
        let mut run = 0usize;
        for &l in w.letters() {
            if l > 1 {
                return Err(Error::Validation("zig-zag words use only a and b".into()));
            }
            if l != cur {
                lam.push(run);
                run = 0;
                cur = l;
            }
            run += 1;
        }
        if run > 0 {
            lam.push(run);
        }
        ZigzagIndex::new(lam)
    }
}

impl fmt::Display for ZigzagIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, &e) in self.0.iter().enumerate() {
            let l = if i % 2 == 0 { "a" } else { "b" };
            match e {
                0 => {}
                1 => write!(f, "{}", l)?,
                _ => write!(f, "{}^{}", l, e)?,
            }
        }
        Ok(())
    }
}

/// All irreducible tuples of length n, sorted lexicographically.
pub fn zigzag_enumerate(n: usize) -> Vec<ZigzagIndex> {
    fn grow(rem: usize, rising: bool, cur: &mut Vec<usize>, out: &mut Vec<ZigzagIndex>) {
        if rem == 0 {
            out.push(ZigzagIndex(cur.clone()));
            return;
        }
        let last = *cur.last().unwrap();
        for x in 1..=rem {
            let up = x > last;
            if !rising && up {
                break;
            }
            cur.push(x);
            grow(rem - x, rising && up, cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        return vec![ZigzagIndex::unit()];
    }
    let mut out = Vec::new();
    for l0 in 0..=n {
        grow(n - l0, true, &mut vec![l0], &mut out);
    }
    out.sort();
    out
}

/// Multi-index of an ordered WG monomial; each block holds (index, exponent)
/// pairs with strictly increasing index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WGIndex {
    /// (k, α): W_{-k}^α
    pub wm: Vec<(usize, usize)>,
    /// (p, β): G_{p+1}^β
    pub g: Vec<(usize, usize)>,
    /// (l, γ): W_{l+1}^γ
    pub wp: Vec<(usize, usize)>,
}

impl WGIndex {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn validate(&self) -> Result<()> {
        for blk in [&self.wm, &self.g, &self.wp] {
            if blk.iter().any(|&(_, e)| e == 0) || blk.windows(2).any(|w| w[0].0 >= w[1].0) {
                return Err(Error::Validation(format!("malformed WG index {:?}", self)));
            }
        }
        Ok(())
    }

    pub fn weight(&self) -> usize {
        self.wm.iter().map(|&(k, a)| a * (2 * k + 1)).sum::<usize>()
            + self.g.iter().map(|&(p, b)| b * (2 * p + 2)).sum::<usize>()
            + self.wp.iter().map(|&(l, c)| c * (2 * l + 1)).sum::<usize>()
    }

    /// Largest tower index used by any factor.
    pub fn max_index(&self) -> usize {
        self.factors().iter().map(|(l, _)| l.index()).max().unwrap_or(0)
    }

    /// Factors with exponents in product order; the W_{l+1} block descends.
    pub fn factors(&self) -> Vec<(ModeLetter, usize)> {
        let mut out = Vec::new();
        out.extend(self.wm.iter().map(|&(k, e)| (ModeLetter::Wm(k), e)));
        out.extend(self.g.iter().map(|&(p, e)| (ModeLetter::G(p), e)));
        out.extend(self.wp.iter().rev().map(|&(l, e)| (ModeLetter::Wp(l), e)));
        out
    }

    /// Parses the printed form, e.g. "W0^2W-1", "G1W2W1", "1".
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut idx = WGIndex::unit();
        if s == "1" {
            return Ok(idx);
        }
        let bad = || Error::Parse(format!("bad WG monomial '{}'", s));
        let b = s.as_bytes();
        let mut i = 0;
        let mut seq: Vec<(ModeLetter, usize)> = Vec::new();
        let num = |i: &mut usize| -> Option<usize> {
            let st = *i;
            while *i < b.len() && b[*i].is_ascii_digit() {
                *i += 1;
            }
            s[st..*i].parse().ok()
        };
        while i < b.len() {
            let kind = b[i];
            i += 1;
            let neg = i < b.len() && b[i] == b'-';
            if neg {
                i += 1;
            }
            let n = num(&mut i).ok_or_else(bad)?;
            let letter = match (kind, neg) {
                (b'W', true) => ModeLetter::Wm(n),
                (b'W', false) if n == 0 => ModeLetter::Wm(0),
                (b'W', false) => ModeLetter::Wp(n - 1),
                (b'G', false) if n >= 1 => ModeLetter::G(n - 1),
                _ => return Err(bad()),
            };
            let mut e = 1;
            if i < b.len() && b[i] == b'^' {
                i += 1;
                e = num(&mut i).ok_or_else(bad)?;
            }
            seq.push((letter, e));
        }
        let mut stage = 0;
        for (l, e) in seq {
            let (st, blk, key) = match l {
                ModeLetter::Wm(k) => (0, &mut idx.wm, k),
                ModeLetter::G(p) => (1, &mut idx.g, p),
                ModeLetter::Wp(l) => (2, &mut idx.wp, l),
                ModeLetter::Gt(_) => return Err(bad()),
            };
            if st < stage {
                return Err(bad());
            }
            stage = st;
            blk.push((key, e));
        }
        idx.wp.reverse();
        idx.validate().map_err(|_| bad())?;
        Ok(idx)
    }
}

fn letter_name(l: ModeLetter) -> String {
    match l {
        ModeLetter::Wm(0) => "W0".into(),
        ModeLetter::Wm(k) => format!("W-{}", k),
        ModeLetter::Wp(l) => format!("W{}", l + 1),
        ModeLetter::G(p) => format!("G{}", p + 1),
        ModeLetter::Gt(p) => format!("Gt{}", p + 1),
    }
}

impl fmt::Display for WGIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fs = self.factors();
        if fs.is_empty() {
            return write!(f, "1");
        }
        for (l, e) in fs {
            write!(f, "{}", letter_name(l))?;
            if e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

/// All WG indices of weight exactly w, sorted by the derived order.
pub fn wg_enumerate(w: usize) -> Vec<WGIndex> {
    // candidate factors: (block, index, weight)
    let mut fac = Vec::new();
    for k in 0..=w / 2 {
        if 2 * k < w {
            fac.push((0, k, 2 * k + 1));
        }
    }
    for p in 0..w / 2 {
        fac.push((1, p, 2 * p + 2));
    }
    for l in 0..=w / 2 {
        if 2 * l < w {
            fac.push((2, l, 2 * l + 1));
        }
    }
    fn rec(fac: &[(u8, usize, usize)], i: usize, rem: usize, cur: &mut WGIndex, out: &mut Vec<WGIndex>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        if i == fac.len() {
            return;
        }
        let (blk, key, wt) = fac[i];
        rec(fac, i + 1, rem, cur, out);
        let mut e = 1;
        while e * wt <= rem {
            let b = match blk {
                0 => &mut cur.wm,
                1 => &mut cur.g,
                _ => &mut cur.wp,
            };
            b.push((key, e));
            rec(fac, i + 1, rem - e * wt, cur, out);
            let b = match blk {
                0 => &mut cur.wm,
                1 => &mut cur.g,
                _ => &mut cur.wp,
            };
            b.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    rec(&fac, 0, w, &mut WGIndex::unit(), &mut out);
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GfKind {
    /// prod (1+v^m)/(1-v^m)
    Overpartition,
    /// prod (1-v^2m)^-1 (1-v^(2m-1))^-2
    Verma,
}

impl std::str::FromStr for GfKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "overpartition" => Ok(GfKind::Overpartition),
            "verma" => Ok(GfKind::Verma),
            _ => Err(Error::Usage(format!("unknown generating function '{}'", s))),
        }
    }
}

fn mul_one_plus(c: &mut [BigInt], m: usize) {
    for i in (m..c.len()).rev() {
        let t = c[i - m].clone();
        c[i] += t;
    }
}

fn div_one_minus(c: &mut [BigInt], m: usize) {
    for i in m..c.len() {
        let t = c[i - m].clone();
        c[i] += t;
    }
}

/// Coefficients of v^0..v^n of the chosen product.
pub fn gf_coefficients(kind: GfKind, n: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); n + 1];
    c[0] = BigInt::one();
    for m in 1..=n {
        match kind {
            GfKind::Overpartition => {
                mul_one_plus(&mut c, m);
                div_one_minus(&mut c, m);
            }
            GfKind::Verma => {
                if m % 2 == 0 {
                    div_one_minus(&mut c, m);
                } else {
                    div_one_minus(&mut c, m);
                    div_one_minus(&mut c, m);
                }
            }
        }
    }
    c
}

/// Brute force: partitions of n where each odd part comes in two colours.
pub fn count_two_colour_odd_partitions(n: usize) -> u64 {
    fn go(rem: usize, max: usize, acc: u64, mult: &mut Vec<usize>) -> u64 {
        if rem == 0 {
            // distinct odd parts with multiplicity k split k+1 ways between colours
            return mult
                .iter()
                .enumerate()
                .filter(|(p, &k)| p % 2 == 1 && k > 0)
                .fold(acc, |a, (_, &k)| a * (k as u64 + 1));
        }
        let mut total = 0;
        for p in (1..=max.min(rem)).rev() {
            mult[p] += 1;
            total += go(rem - p, p, acc, mult);
            mult[p] -= 1;
        }
        total
    }
    go(n, n, 1, &mut vec![0; n + 1])
}
