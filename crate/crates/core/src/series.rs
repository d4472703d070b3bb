//! Truncated Laurent series with noncommutative mode coefficients.
//!
//! The expansion variable is x = u^-2 about u = infinity (default) or
//! x = u^2 about u = 0.  A series stores the coefficients it knows exactly:
//! every exponent in `lo..=valid_to`.

use crate::error::{Error, Result};
use crate::ncpoly::{Alphabet, NcPoly, Word};
use crate::scalar::{binomial, Field, Params};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Generator letter of the mode algebra, indexed like the tower (k >= 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModeLetter {
    /// W_{-k}
    Wm(usize),
    /// W_{k+1}
    Wp(usize),
    /// G_{k+1}
    G(usize),
    /// G~_{k+1}
    Gt(usize),
}

impl ModeLetter {
    pub fn name(&self) -> String {
        match *self {
            ModeLetter::Wm(k) => format!("Wm{}", k),
            ModeLetter::Wp(k) => format!("Wp{}", k + 1),
            ModeLetter::G(k) => format!("G{}", k + 1),
            ModeLetter::Gt(k) => format!("Gt{}", k + 1),
        }
    }

    pub fn index(&self) -> usize {
        match *self {
            ModeLetter::Wm(k) | ModeLetter::Wp(k) | ModeLetter::G(k) | ModeLetter::Gt(k) => k,
        }
    }
}

/// Letters Wm0..WmK, Wp1..Wp(K+1), G1..G(K+1), Gt1..Gt(K+1).
#[derive(Clone, Debug)]
pub struct ModeAlphabet {
    kmax: usize,
    alphabet: Arc<Alphabet>,
}

impl ModeAlphabet {
    pub fn new(kmax: usize) -> Result<Self> {
        if kmax > 8 {
            return Err(Error::Configuration(format!("mode alphabet bound {} exceeds 8", kmax)));
        }
        let mut names = Vec::new();
        for f in [ModeLetter::Wm, ModeLetter::Wp, ModeLetter::G, ModeLetter::Gt] {
            for k in 0..=kmax {
                names.push(f(k).name());
            }
        }
        Ok(ModeAlphabet { kmax, alphabet: Alphabet::new(names)? })
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn index(&self, l: ModeLetter) -> Result<u8> {
        let k = l.index();
        if k > self.kmax {
            return Err(Error::Configuration(format!(
                "mode letter {} needs a mode alphabet bound of at least {}, have {}",
                l.name(),
                k,
                self.kmax
            )));
        }
        let block = match l {
            ModeLetter::Wm(_) => 0,
            ModeLetter::Wp(_) => 1,
            ModeLetter::G(_) => 2,
            ModeLetter::Gt(_) => 3,
        };
        Ok((block * (self.kmax + 1) + k) as u8)
    }

    pub fn letter(&self, i: u8) -> ModeLetter {
        let n = self.kmax + 1;
        let (block, k) = (i as usize / n, i as usize % n);
        match block {
            0 => ModeLetter::Wm(k),
            1 => ModeLetter::Wp(k),
            2 => ModeLetter::G(k),
            _ => ModeLetter::Gt(k),
        }
    }

    pub fn poly<F: Field>(&self, l: ModeLetter) -> Result<NcPoly<F>> {
        Ok(NcPoly::letter(&self.alphabet, self.index(l)?))
    }

    pub fn word(&self, ls: &[ModeLetter]) -> Result<Word> {
        let v: Result<Vec<u8>> = ls.iter().map(|&l| self.index(l)).collect();
        Ok(Word::from_slice(&v?))
    }
}

/// Where the generating function is expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionPoint {
    Infinity,
    Zero,
}

/// Argument of the currents: u or u*q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shift {
    None,
    Q,
}

impl Shift {
    fn power(self) -> i64 {
        match self {
            Shift::None => 0,
            Shift::Q => 1,
        }
    }
}

/// Binomial-type coefficient w_m^i of the expansion of U^{-1-i}; zero for m < 0.
pub fn u_power_coeff<F: Field>(p: &Params<F>, i: i64, m: i64) -> F {
    if m < 0 || i < 0 {
        return F::zero();
    }
    let sign = if m % 2 == 0 { F::one() } else { -F::one() };
    let b = F::from_bigint(binomial((m + i) as u64, i as u64));
    let two = p.q.clone() + &p.q_inv;
    let mut pw = F::one();
    for _ in 0..=i {
        pw = pw * &two;
    }
    sign * &b * &pw * &p.qpow(-i - 2 * m - 1)
}

/// Coefficients of U(u * shift)^{-1-i} in x, for exponents up to `n`.
///
/// Computed by inverting the power series of U itself; the closed form of
/// [`u_power_coeff`] is not used here.
pub fn expand_u_power<F: Field>(
    p: &Params<F>,
    i: usize,
    shift: Shift,
    point: ExpansionPoint,
    n: i32,
) -> Result<BTreeMap<i32, F>> {
    // U(u q^s) = x^-1 (A + B x^2)
    let two = p.q.clone() + &p.q_inv;
    let s = shift.power();
    let (a, b) = match point {
        ExpansionPoint::Infinity => (p.qpow(1 + 2 * s), p.qpow(-1 - 2 * s)),
        ExpansionPoint::Zero => (p.qpow(-1 - 2 * s), p.qpow(1 + 2 * s)),
    };
    let a = a.try_div(&two)?;
    let b = b.try_div(&two)?;
    let len = (n.max(0) + 1) as usize;
    let mut base = vec![F::zero(); len];
    base[0] = a;
    if len > 2 {
        base[2] = b;
    }
    let inv = series_inverse(&base)?;
    let mut acc = vec![F::zero(); len];
    acc[0] = F::one();
    for _ in 0..=i {
        acc = series_mul(&acc, &inv, len);
    }
    let mut out = BTreeMap::new();
    for (e, c) in acc.into_iter().enumerate() {
        let exp = e as i32 + 1 + i as i32;
        if exp <= n && !c.is_zero() {
            out.insert(exp, c);
        }
    }
    Ok(out)
}

fn series_mul<F: Field>(a: &[F], b: &[F], len: usize) -> Vec<F> {
    let mut r = vec![F::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                r[i + j] = r[i + j].clone() + &(x.clone() * y);
            }
        }
    }
    r
}

fn series_inverse<F: Field>(a: &[F]) -> Result<Vec<F>> {
    let inv0 = a[0].inv()?;
    let mut r = vec![F::zero(); a.len()];
    r[0] = inv0.clone();
    for n in 1..a.len() {
        let mut s = F::zero();
        for j in 1..=n {
            if !a[j].is_zero() {
                s = s + &(a[j].clone() * &r[n - j]);
            }
        }
        r[n] = -(s * &inv0);
    }
    Ok(r)
}

/// Truncated series sum_e x^e c_e with mode-polynomial coefficients.
#[derive(Clone, Debug)]
pub struct ModeSeries<F: Field> {
    pub point: ExpansionPoint,
    pub shift: Shift,
    /// Lowest exponent that may carry a nonzero coefficient.
    pub lo: i32,
    /// Highest exponent known exactly.
    pub valid_to: i32,
    coeffs: BTreeMap<i32, NcPoly<F>>,
    alphabet: Arc<Alphabet>,
}

impl<F: Field> ModeSeries<F> {
    pub fn coeff(&self, e: i32) -> Result<NcPoly<F>> {
        if e > self.valid_to {
            return Err(Error::Domain(format!(
                "coefficient x^{} requested beyond truncation order {}",
                e, self.valid_to
            )));
        }
        Ok(self.coeffs.get(&e).cloned().unwrap_or_else(|| NcPoly::zero(&self.alphabet)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let lo = self.lo + o.lo;
        let valid_to = (self.valid_to + o.lo).min(o.valid_to + self.lo);
        let mut coeffs: BTreeMap<i32, NcPoly<F>> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &o.coeffs {
                let e = ea + eb;
                if e > valid_to {
                    continue;
                }
                let prod = ca * cb;
                let slot = coeffs.entry(e).or_insert_with(|| NcPoly::zero(&self.alphabet));
                *slot = &*slot + &prod;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        ModeSeries { point: self.point, shift: self.shift, lo, valid_to, coeffs, alphabet: self.alphabet.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &o.coeffs {
            let slot = coeffs.entry(*e).or_insert_with(|| NcPoly::zero(&self.alphabet));
            *slot = &*slot + c;
        }
        let valid_to = self.valid_to.min(o.valid_to);
        coeffs.retain(|e, c| !c.is_zero() && *e <= valid_to);
        ModeSeries {
            point: self.point,
            shift: self.shift,
            lo: self.lo.min(o.lo),
            valid_to,
            coeffs,
            alphabet: self.alphabet.clone(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut r = self.clone();
        for c in r.coeffs.values_mut() {
            *c = c.scale(s);
        }
        r.coeffs.retain(|_, c| !c.is_zero());
        r
    }

    /// Multiplies by the Laurent polynomial sum_e x^e m_e (known exactly).
    pub fn mul_laurent(&self, m: &[(i32, F)]) -> Self {
        let mlo = m.iter().map(|t| t.0).min().unwrap_or(0);
        let valid_to = self.valid_to + mlo;
        let mut coeffs: BTreeMap<i32, NcPoly<F>> = BTreeMap::new();
        for (e, c) in &self.coeffs {
            for (me, mc) in m {
                let t = e + me;
                if t > valid_to {
                    continue;
                }
                let slot = coeffs.entry(t).or_insert_with(|| NcPoly::zero(&self.alphabet));
                slot.add_scaled(c, mc);
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        ModeSeries {
            point: self.point,
            shift: self.shift,
            lo: self.lo + mlo,
            valid_to,
            coeffs,
            alphabet: self.alphabet.clone(),
        }
    }
}

/// The current sum_k letter(k) U(u*shift)^{-k-1}, known to order n.
pub fn current<F: Field>(
    p: &Params<F>,
    modes: &ModeAlphabet,
    family: fn(usize) -> ModeLetter,
    shift: Shift,
    point: ExpansionPoint,
    n: i32,
) -> Result<ModeSeries<F>> {
    let mut coeffs: BTreeMap<i32, NcPoly<F>> = BTreeMap::new();
    let al = modes.alphabet();
    for k in 0..n.max(0) as usize {
        let letter = modes.poly::<F>(family(k))?;
        for (e, c) in expand_u_power(p, k, shift, point, n)? {
            let slot = coeffs.entry(e).or_insert_with(|| NcPoly::zero(al));
            slot.add_scaled(&letter, &c);
        }
    }
    Ok(ModeSeries { point, shift, lo: 1, valid_to: n, coeffs, alphabet: al.clone() })
}

/// The generating function Delta(u) expanded to order n.
pub fn delta_current<F: Field>(
    p: &Params<F>,
    modes: &ModeAlphabet,
    point: ExpansionPoint,
    n: i32,
) -> Result<ModeSeries<F>> {
    if n < 1 {
        return Err(Error::Domain("expansion order must be at least 1".into()));
    }
    if (n - 1) as usize > modes.kmax() {
        return Err(Error::Configuration(format!(
            "expansion to order {} needs a mode alphabet bound of at least {}, have {}",
            n,
            n - 1,
            modes.kmax()
        )));
    }
    let cur = |f: fn(usize) -> ModeLetter, s: Shift| current(p, modes, f, s, point, n);
    let wp_u = cur(ModeLetter::Wm, Shift::None)?;
    let wp_uq = cur(ModeLetter::Wm, Shift::Q)?;
    let wm_u = cur(ModeLetter::Wp, Shift::None)?;
    let wm_uq = cur(ModeLetter::Wp, Shift::Q)?;
    let gp_u = cur(ModeLetter::G, Shift::None)?;
    let gp_uq = cur(ModeLetter::G, Shift::Q)?;
    let gm_u = cur(ModeLetter::Gt, Shift::None)?;
    let gm_uq = cur(ModeLetter::Gt, Shift::Q)?;

    let qd = p.qdiff();
    let q2 = p.qpow(2) + &p.qpow(-2);
    let ww = wp_u.mul(&wp_uq).add(&wm_u.mul(&wm_uq));
    let gg = gp_u.mul(&gm_uq).add(&gm_u.mul(&gp_uq));
    let wmix = wp_u.mul(&wm_uq).add(&wm_u.mul(&wp_uq));
    // u^2 q^2 + u^-2 q^-2 in the expansion variable
    let mult = match point {
        ExpansionPoint::Infinity => vec![(-1, p.qpow(2)), (1, p.qpow(-2))],
        ExpansionPoint::Zero => vec![(1, p.qpow(2)), (-1, p.qpow(-2))],
    };
    let minus_one = -F::one();
    let t1 = ww.scale(&(-(qd.clone() * &q2)));
    let t2 = gg.scale(&(-(qd.clone() * &p.rho_inv)));
    let t3 = wmix.mul_laurent(&mult).scale(&qd);
    let t4 = gp_u.add(&gp_uq).add(&gm_u).add(&gm_uq).scale(&minus_one);
    let total = t1.add(&t2).add(&t3).add(&t4);
    Ok(ModeSeries { point, shift: Shift::None, ..total })
}

/// Delta_{k+1} read off the series, normalized so G_{k+1} has coefficient 1.
///
/// Returns the polynomial and the normalizing scalar that the series
/// carries in front of it.
pub fn delta_mode_oracle_at<F: Field>(
    p: &Params<F>,
    modes: &ModeAlphabet,
    k: usize,
    point: ExpansionPoint,
) -> Result<(NcPoly<F>, F)> {
    let n = k as i32 + 1;
    let s = delta_current(p, modes, point, n)?;
    let c = s.coeff(n)?;
    let lead = c.coeff(&modes.word(&[ModeLetter::G(k)])?);
    if lead.is_zero() {
        return Err(Error::Structural(format!("series coefficient of order {} lacks G{}", n, k + 1)));
    }
    Ok((c.scale(&lead.inv()?), lead))
}

/// Oracle for Delta_{k+1} from the expansion about u = infinity.
pub fn delta_mode_oracle<F: Field>(p: &Params<F>, modes: &ModeAlphabet, k: usize) -> Result<NcPoly<F>> {
    Ok(delta_mode_oracle_at(p, modes, k, ExpansionPoint::Infinity)?.0)
}

/// The involution W_{-k} <-> W_{k+1}, G_{k+1} <-> G~_{k+1}, applied letterwise.
pub fn mode_omega<F: Field>(modes: &ModeAlphabet, p: &NcPoly<F>) -> Result<NcPoly<F>> {
    if p.alphabet() != modes.alphabet() {
        return Err(Error::Usage("mode_omega expects a mode-alphabet polynomial".into()));
    }
    let mut out = NcPoly::zero(modes.alphabet());
    for (w, c) in p.terms() {
        let ls: Vec<ModeLetter> = w
            .letters()
            .iter()
            .map(|&i| match modes.letter(i) {
                ModeLetter::Wm(k) => ModeLetter::Wp(k),
                ModeLetter::Wp(k) => ModeLetter::Wm(k),
                ModeLetter::G(k) => ModeLetter::Gt(k),
                ModeLetter::Gt(k) => ModeLetter::G(k),
            })
            .collect();
        out.add_term(modes.word(&ls)?, c.clone());
    }
    Ok(out)
}

/// Canonical form of the quadratic part modulo the mode commutation relations.
///
/// Uses [W_{-i},W_{-j}] = [W_{i+1},W_{j+1}] = [G_i,G_j] = [G~_i,G~_j] = 0,
/// [W_{-i},W_{j+1}] + [W_{i+1},W_{-j}] = 0 and
/// [G_{i+1},G~_{j+1}] + [G~_{i+1},G_{j+1}] = 0.  Each relation has a
/// distinct leading word whose replacement is already reduced, so one pass
/// gives a canonical representative.  Words of other lengths are untouched.
pub fn mode_relations_normal_form<F: Field>(modes: &ModeAlphabet, p: &NcPoly<F>) -> Result<NcPoly<F>> {
    use ModeLetter::*;
    let mut out = NcPoly::zero(modes.alphabet());
    for (w, c) in p.terms() {
        if w.len() != 2 {
            out.add_term(w.clone(), c.clone());
            continue;
        }
        let (x, y) = (modes.letter(w.letters()[0]), modes.letter(w.letters()[1]));
        let same = std::mem::discriminant(&x) == std::mem::discriminant(&y);
        let pieces: Vec<(Vec<ModeLetter>, F)> = match (x, y) {
            _ if same && x.index() > y.index() => vec![(vec![y, x], F::one())],
            (Wp(j), Wm(i)) if j > i => vec![
                (vec![Wm(i), Wp(j)], F::one()),
                (vec![Wp(i), Wm(j)], F::one()),
                (vec![Wm(j), Wp(i)], -F::one()),
            ],
            (Gt(j), G(i)) if j > i => vec![
                (vec![G(i), Gt(j)], F::one()),
                (vec![Gt(i), G(j)], F::one()),
                (vec![G(j), Gt(i)], -F::one()),
            ],
            _ => vec![(vec![x, y], F::one())],
        };
        for (ls, s) in pieces {
            out.add_term(modes.word(&ls)?, c.clone() * &s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RatFunc;

    #[test]
    fn u_power_matches_closed_form() {
        let p = Params::symbolic(0).unwrap();
        for i in 0..4usize {
            for shift in [Shift::None, Shift::Q] {
                let ser = expand_u_power(&p, i, shift, ExpansionPoint::Infinity, 12).unwrap();
                for m in 0..5i64 {
                    let e = 1 + i as i32 + 2 * m as i32;
                    if e > 12 {
                        continue;
                    }
                    let mut w = u_power_coeff(&p, i as i64, m);
                    if shift == Shift::Q {
                        w = w * &p.qpow(-2 * i as i64 - 4 * m - 2);
                    }
                    assert_eq!(ser.get(&e).cloned().unwrap_or_else(num_traits::Zero::zero), w, "i={} m={}", i, m);
                }
                assert!(ser.keys().all(|e| (e - 1 - i as i32) % 2 == 0));
            }
        }
    }

    #[test]
    fn u_power_examples() {
        let p = Params::symbolic(0).unwrap();
        let r = |s: &str| RatFunc::parse(s).unwrap();
        assert_eq!(u_power_coeff(&p, 0, 0), r("(q+q^-1)*q^-1"));
        assert_eq!(u_power_coeff(&p, 0, 1), r("-(q+q^-1)*q^-3"));
        assert_eq!(u_power_coeff(&p, 1, 0), r("(q+q^-1)^2*q^-2"));
    }

    #[test]
    fn truncation_prefix_property() {
        let p = Params::symbolic(0).unwrap();
        let long = expand_u_power(&p, 1, Shift::Q, ExpansionPoint::Infinity, 9).unwrap();
        let short = expand_u_power(&p, 1, Shift::Q, ExpansionPoint::Infinity, 5).unwrap();
        for (e, c) in &short {
            assert_eq!(long.get(e), Some(c));
        }
    }

    #[test]
    fn insufficient_bound_is_configuration_error() {
        let p = Params::symbolic(0).unwrap();
        let modes = ModeAlphabet::new(1).unwrap();
        assert!(matches!(
            delta_current(&p, &modes, ExpansionPoint::Infinity, 3),
            Err(Error::Configuration(_))
        ));
    }
}
