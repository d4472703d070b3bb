//! Closed-form central elements and the polynomial realization of all
//! generators in terms of a = W0 and b = W1.

use crate::error::{Error, Result};
use crate::ncpoly::{Alphabet, NcPoly};
use crate::scalar::{Field, Params};
use crate::series::{u_power_coeff, ModeAlphabet, ModeLetter};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};

/// Generator families; the index convention is that of [`ModeLetter`].
pub type GenKind = ModeLetter;

/// 1 for even k, 0 for odd k.
pub fn kbar(k: usize) -> usize {
    if k.is_multiple_of(2) {
        1
    } else {
        0
    }
}

/// c_{k+1} = -(q+q^-1)^{k+1} (q^{k+1}+q^{-k-1}) / q^{2k+2}.
pub fn coeff_c<F: Field>(p: &Params<F>, k: usize) -> F {
    let k = k as i64;
    let two = p.q.clone() + &p.q_inv;
    let mut pw = F::one();
    for _ in 0..=k {
        pw = pw * &two;
    }
    -(pw * &(p.qpow(k + 1) + &p.qpow(-k - 1)) * &p.qpow(-2 * k - 2))
}

fn w<F: Field>(p: &Params<F>, i: i64, m: i64) -> F {
    u_power_coeff(p, i, m)
}

/// d_l^{(k)} for 0 <= l <= floor(k/2) - 1.
pub fn coeff_d<F: Field>(p: &Params<F>, l: usize, k: usize) -> Result<F> {
    let hk = k / 2;
    if l + 1 > hk {
        return Err(Error::Domain(format!("d_{}^({}) out of range", l, k)));
    }
    let c = coeff_c(p, k);
    let (l, k_, kb, hk) = (l as i64, k as i64, kbar(k) as i64, hk as i64);
    let v = w(p, 2 * l + 1 - kb, hk - l) * &(F::one() + &p.qpow(-2 * k_ - 2));
    Ok(-v.try_div(&c)?)
}

fn upper(k: usize, sum: i64, parity_shift: i64) -> Result<i64> {
    let num = sum + kbar(k) as i64 - parity_shift;
    if num < 0 || num % 2 != 0 {
        return Err(Error::Domain(format!("index sum {} has the wrong parity for k = {}", sum, k)));
    }
    let top = (k / 2) as i64 - num / 2;
    if top < 0 {
        return Err(Error::Domain(format!("index sum {} too large for k = {}", sum, k)));
    }
    Ok(top)
}

/// e_ij^{(k)}, defined when i + j + kbar is even and small enough.
pub fn coeff_e<F: Field>(p: &Params<F>, i: usize, j: usize, k: usize) -> Result<F> {
    let (i, j) = (i as i64, j as i64);
    let top = upper(k, i + j, 0)?;
    let mut s = F::zero();
    for m in 0..=top {
        s = s + &(w(p, i, top - m) * &w(p, j, m) * &p.qpow(-2 * j - 4 * m - 2));
    }
    Ok(-s.try_div(&coeff_c(p, k))?)
}

/// f_ij^{(k)}, defined when i + j + kbar is odd and small enough.
pub fn coeff_f<F: Field>(p: &Params<F>, i: usize, j: usize, k: usize) -> Result<F> {
    let (i, j) = (i as i64, j as i64);
    let top = upper(k, i + j, 1)?;
    let mut s = F::zero();
    for m in 0..=top {
        let inner = w(p, j, m) + &w(p, j, m - 1);
        s = s + &(w(p, i, top - m) * &inner * &p.qpow(-2 * j - 4 * m));
    }
    s.try_div(&coeff_c(p, k))
}

/// Which of two equivalent orderings to use in the G-part of F_ij.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    /// G_{i+1} G~_{j+1} + G~_{i+1} G_{j+1}: agrees with the series identically.
    Series,
    /// G_{j+1} G~_{i+1} + G~_{j+1} G_{i+1}: equal to the above only modulo
    /// the mode commutation relations.
    Swapped,
}

fn gg_sum<F: Field>(m: &ModeAlphabet, n: usize) -> Result<NcPoly<F>> {
    Ok(&m.poly::<F>(ModeLetter::G(n))? + &m.poly::<F>(ModeLetter::Gt(n))?)
}

fn pair<F: Field>(m: &ModeAlphabet, x: ModeLetter, y: ModeLetter) -> Result<NcPoly<F>> {
    Ok(NcPoly::monomial(m.alphabet(), m.word(&[x, y])?, F::one()))
}

/// (q-q^-1)(W_{-i} W_{j+1} + W_{i+1} W_{-j})
fn ww_comb<F: Field>(p: &Params<F>, m: &ModeAlphabet, i: usize, j: usize) -> Result<NcPoly<F>> {
    use ModeLetter::*;
    let s = &pair::<F>(m, Wm(i), Wp(j))? + &pair::<F>(m, Wp(i), Wm(j))?;
    Ok(s.scale(&p.qdiff()))
}

/// (q-q^-1)((q^2+q^-2)(W_{-i}W_{-j} + W_{i+1}W_{j+1}) + (G G~ + G~ G)/rho)
fn ff_comb<F: Field>(p: &Params<F>, m: &ModeAlphabet, i: usize, j: usize, pairing: Pairing) -> Result<NcPoly<F>> {
    use ModeLetter::*;
    let w = &pair::<F>(m, Wm(i), Wm(j))? + &pair::<F>(m, Wp(i), Wp(j))?;
    let g = match pairing {
        Pairing::Series => &pair::<F>(m, G(i), Gt(j))? + &pair::<F>(m, Gt(i), G(j))?,
        Pairing::Swapped => &pair::<F>(m, G(j), Gt(i))? + &pair::<F>(m, Gt(j), G(i))?,
    };
    let q2 = p.qpow(2) + &p.qpow(-2);
    let s = &w.scale(&q2) + &g.scale(&p.rho_inv);
    Ok(s.scale(&p.qdiff()))
}

/// Closed-form Delta_{k+1} over the mode alphabet.
pub fn delta_abstract<F: Field>(p: &Params<F>, m: &ModeAlphabet, k: usize) -> Result<NcPoly<F>> {
    delta_abstract_with(p, m, k, Pairing::Series)
}

pub fn delta_abstract_with<F: Field>(p: &Params<F>, m: &ModeAlphabet, k: usize, pairing: Pairing) -> Result<NcPoly<F>> {
    if k > m.kmax() {
        return Err(Error::Configuration(format!(
            "Delta_{} needs a mode alphabet bound of at least {}, have {}",
            k + 1,
            k,
            m.kmax()
        )));
    }
    let hk = k / 2;
    let kb = kbar(k);
    let mut out = gg_sum::<F>(m, k)?;
    for l in 0..hk {
        let n = 2 * (l + 1) - kb;
        out.add_scaled(&gg_sum::<F>(m, n - 1)?, &coeff_d(p, l, k)?);
    }
    for l in 0..=hk {
        let s = 2 * l + 1 - kb;
        for i in 0..=s {
            let j = s - i;
            out.add_scaled(&ww_comb(p, m, i, j)?, &coeff_f(p, i, j, k)?);
        }
    }
    if hk + 1 > kb {
        for l in 0..=hk - kb {
            let s = 2 * l + kb;
            for i in 0..=s {
                let j = s - i;
                out.add_scaled(&ff_comb(p, m, i, j, pairing)?, &coeff_e(p, i, j, k)?);
            }
        }
    }
    Ok(out)
}

/// Memoized realization of the generators as polynomials in a, b.
///
/// Deltas are fixed by the parameters; the cache is shared and safe to use
/// from several threads.
pub struct Tower<F: Field> {
    params: Params<F>,
    modes: ModeAlphabet,
    core: Arc<Alphabet>,
    cache: RwLock<HashMap<GenKind, Arc<NcPoly<F>>>>,
    build: Mutex<()>,
}

impl<F: Field> Tower<F> {
    pub fn new(params: Params<F>, kmax: usize) -> Result<Self> {
        let modes = ModeAlphabet::new(kmax)?;
        let core = Alphabet::core();
        let mut map = HashMap::new();
        map.insert(ModeLetter::Wm(0), Arc::new(NcPoly::letter(&core, 0)));
        map.insert(ModeLetter::Wp(0), Arc::new(NcPoly::letter(&core, 1)));
        Ok(Tower { params, modes, core, cache: RwLock::new(map), build: Mutex::new(()) })
    }

    pub fn params(&self) -> &Params<F> {
        &self.params
    }

    pub fn modes(&self) -> &ModeAlphabet {
        &self.modes
    }

    pub fn core(&self) -> &Arc<Alphabet> {
        &self.core
    }

    fn cached(&self, g: GenKind) -> Option<Arc<NcPoly<F>>> {
        self.cache.read().unwrap().get(&g).cloned()
    }

    fn store(&self, g: GenKind, p: NcPoly<F>) -> Arc<NcPoly<F>> {
        let mut w = self.cache.write().unwrap();
        w.entry(g).or_insert_with(|| Arc::new(p)).clone()
    }

    /// Polynomial realization of a generator.
    pub fn gen(&self, g: GenKind) -> Result<Arc<NcPoly<F>>> {
        if let Some(p) = self.cached(g) {
            return Ok(p);
        }
        let k = g.index();
        if k > self.modes.kmax() {
            return Err(Error::Configuration(format!(
                "generator {} is beyond the configured bound {}",
                g.name(),
                self.modes.kmax()
            )));
        }
        let _guard = self.build.lock().unwrap();
        // The levels below are built in order: G_{j+1}, G~_{j+1}, W_{-j-1}, W_{j+2}.
        let top = match g {
            ModeLetter::Wm(k) | ModeLetter::Wp(k) => k.saturating_sub(1),
            ModeLetter::G(k) | ModeLetter::Gt(k) => k,
        };
        for j in 0..=top {
            if self.cached(ModeLetter::G(j)).is_none() {
                self.params.delta(j + 1)?;
                let gj = self.compute_g(j)?;
                let gtj = gj.omega_swap()?;
                self.store(ModeLetter::G(j), gj);
                self.store(ModeLetter::Gt(j), gtj);
            }
            if self.cached(ModeLetter::Wm(j + 1)).is_none() && j < self.modes.kmax() {
                let gj = self.cached(ModeLetter::G(j)).unwrap();
                let a = self.cached(ModeLetter::Wm(0)).unwrap();
                let wp = self.cached(ModeLetter::Wp(j)).unwrap();
                let br = a.q_commutator(&gj, &self.params)?.scale(&self.params.rho_inv);
                let wm = &br + &*wp;
                let wpn = wm.omega_swap()?;
                self.store(ModeLetter::Wm(j + 1), wm);
                self.store(ModeLetter::Wp(j + 1), wpn);
            }
        }
        self.cached(g).ok_or_else(|| Error::Configuration(format!("generator {} unavailable", g.name())))
    }

    /// G_{k+1} = delta_{k+1} + (q+q^-1)/2 [W_{k+1}, W_0] - (Delta_{k+1} - G_{k+1} - G~_{k+1})/2,
    /// the last part realized through lower generators.
    fn compute_g(&self, k: usize) -> Result<NcPoly<F>> {
        let p = &self.params;
        let a = self.cached(ModeLetter::Wm(0)).unwrap();
        let wk = self.cached(ModeLetter::Wp(k)).unwrap();
        let half = F::from_i64(2).inv()?;
        let qq = p.q.clone() + &p.q_inv;
        let delta = delta_abstract(p, &self.modes, k)?;
        let rest = &delta - &gg_sum::<F>(&self.modes, k)?;
        let rest = self.substitute_modes_locked(&rest)?;
        let mut out = NcPoly::scalar(&self.core, p.delta(k + 1)?);
        out.add_scaled(&wk.commutator(&a)?, &(qq * &half));
        out.add_scaled(&rest, &(-half));
        Ok(out)
    }

    fn substitute_modes_locked(&self, p: &NcPoly<F>) -> Result<NcPoly<F>> {
        let mut images = Vec::with_capacity(self.modes.alphabet().len());
        let used: std::collections::BTreeSet<u8> =
            p.terms().flat_map(|(w, _)| w.letters().to_vec()).collect();
        for i in 0..self.modes.alphabet().len() as u8 {
            if used.contains(&i) {
                let l = self.modes.letter(i);
                let img = self
                    .cached(l)
                    .ok_or_else(|| Error::Configuration(format!("generator {} not yet built", l.name())))?;
                images.push((*img).clone());
            } else {
                images.push(NcPoly::zero(&self.core));
            }
        }
        Ok(p.substitute(&self.core, &images))
    }

    /// Replaces every mode letter by its realization.
    pub fn substitute_modes(&self, p: &NcPoly<F>) -> Result<NcPoly<F>> {
        if p.alphabet() != self.modes.alphabet() {
            return Err(Error::Usage("substitute_modes expects a mode-alphabet polynomial".into()));
        }
        for (w, _) in p.terms() {
            for &l in w.letters() {
                self.gen(self.modes.letter(l))?;
            }
        }
        self.substitute_modes_locked(p)
    }

    /// Closed-form Delta_{k+1} over this tower's mode alphabet.
    pub fn delta_abstract(&self, k: usize) -> Result<NcPoly<F>> {
        delta_abstract(&self.params, &self.modes, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RatFunc;

    #[test]
    fn c_examples() {
        let p = Params::symbolic(0).unwrap();
        assert_eq!(coeff_c(&p, 0), RatFunc::parse("-(q+q^-1)^2/q^2").unwrap());
        assert!(coeff_d(&p, 0, 0).is_err());
        assert!(coeff_e(&p, 0, 0, 0).is_err());
        assert!(coeff_f(&p, 0, 0, 0).is_ok());
    }

    #[test]
    fn delta_one() {
        let p = Params::symbolic(0).unwrap();
        let m = ModeAlphabet::new(2).unwrap();
        let d = delta_abstract(&p, &m, 0).unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(d.coeff_of("Wm0Wp1").unwrap(), RatFunc::parse("q^-1-q").unwrap());
        assert_eq!(d.coeff_of("Gt1").unwrap(), RatFunc::parse("1").unwrap());
    }
}
