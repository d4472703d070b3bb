//! Free associative algebra over a named alphabet.

use crate::error::{Error, Result};
use crate::scalar::{Field, Params};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Ordered list of distinct letter names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Usage("alphabet must be nonempty".into()));
        }
        if names.len() > u8::MAX as usize {
            return Err(Error::Usage("alphabet too large".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || names[..i].contains(n) {
                return Err(Error::Usage(format!("bad or duplicate letter name {:?}", n)));
            }
        }
        Ok(Arc::new(Alphabet { names }))
    }

    /// The two-letter alphabet {a, b}; a stands for W0 (A), b for W1 (A*).
    pub fn core() -> Arc<Self> {
        static CORE: OnceLock<Arc<Alphabet>> = OnceLock::new();
        CORE.get_or_init(|| Alphabet::new(["a", "b"]).unwrap()).clone()
    }

    pub fn is_core(&self) -> bool {
        self.names == ["a", "b"]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: u8) -> &str {
        &self.names[i as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    /// Splits a concatenation of letter names, longest match first.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let mut out = Word::empty();
        let mut rest = s;
        while !rest.is_empty() {
            let best = self
                .names
                .iter()
                .enumerate()
                .filter(|(_, n)| rest.starts_with(n.as_str()))
                .max_by_key(|(_, n)| n.len());
            match best {
                Some((i, n)) => {
                    out.0.push(i as u8);
                    rest = &rest[n.len()..];
                }
                None => return Err(Error::Parse(format!("cannot split word {:?}", s))),
            }
        }
        Ok(out)
    }

    pub fn render(&self, w: &Word) -> String {
        w.0.iter().map(|&i| self.name(i)).collect()
    }
}

/// Sequence of letter indices, ordered by length then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub SmallVec<[u8; 16]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_slice(s: &[u8]) -> Self {
        Word(SmallVec::from_slice(s))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }

    pub fn slice(&self, a: usize, b: usize) -> Word {
        Word::from_slice(&self.0[a..b])
    }

    /// First position where `sub` occurs as a factor.
    pub fn find(&self, sub: &Word) -> Option<usize> {
        let (n, m) = (self.len(), sub.len());
        if m > n {
            return None;
        }
        (0..=n - m).find(|&i| self.0[i..i + m] == sub.0[..])
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Finite linear combination of words.
#[derive(Clone, PartialEq, Eq)]
pub struct NcPoly<F> {
    alphabet: Arc<Alphabet>,
    terms: BTreeMap<Word, F>,
}

impl<F: Field> NcPoly<F> {
    pub fn zero(alphabet: &Arc<Alphabet>) -> Self {
        NcPoly { alphabet: alphabet.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(alphabet: &Arc<Alphabet>, c: F) -> Self {
        Self::monomial(alphabet, Word::empty(), c)
    }

    pub fn one(alphabet: &Arc<Alphabet>) -> Self {
        Self::scalar(alphabet, F::one())
    }

    pub fn monomial(alphabet: &Arc<Alphabet>, w: Word, c: F) -> Self {
        let mut p = Self::zero(alphabet);
        p.add_term(w, c);
        p
    }

    pub fn letter(alphabet: &Arc<Alphabet>, i: u8) -> Self {
        Self::monomial(alphabet, Word::from_slice(&[i]), F::one())
    }

    /// Letter by name; panics on unknown names (internal use).
    pub fn named(alphabet: &Arc<Alphabet>, name: &str) -> Self {
        let i = alphabet.index_of(name).unwrap_or_else(|| panic!("no letter {}", name));
        Self::letter(alphabet, i)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn add_term(&mut self, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, F> {
        self.terms
    }

    pub fn from_terms(alphabet: &Arc<Alphabet>, terms: BTreeMap<Word, F>) -> Self {
        let mut p = Self::zero(alphabet);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    pub fn coeff_of(&self, word: &str) -> Result<F> {
        Ok(self.coeff(&self.alphabet.parse_word(word)?))
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&Word::empty())
    }

    /// True when only the empty word occurs.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|w| w.is_empty())
    }

    /// Maximal word length, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|w| w.len())
    }

    /// Order-largest term.
    pub fn leading(&self) -> Option<(&Word, &F)> {
        self.terms.iter().next_back()
    }

    fn check_alphabet(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alphabet, &o.alphabet) || self.alphabet == o.alphabet {
            Ok(())
        } else {
            Err(Error::Usage(format!(
                "alphabet mismatch: {:?} vs {:?}",
                self.alphabet.names, o.alphabet.names
            )))
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_alphabet(o)?;
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn add_scaled(&mut self, o: &Self, s: &F) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), c.clone() * s);
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero(&self.alphabet);
        }
        NcPoly {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.clone() * s)).collect(),
        }
    }

    /// Product with the alphabet check of the public contract.
    pub fn multiply(&self, o: &Self) -> Result<Self> {
        self.check_alphabet(o)?;
        let mut r = Self::zero(&self.alphabet);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                r.add_term(w1.concat(w2), c1.clone() * c2);
            }
        }
        Ok(r)
    }

    /// u * self * v for words u, v with coefficient c.
    pub fn sandwich(&self, u: &Word, v: &Word, c: &F) -> Self {
        let mut r = Self::zero(&self.alphabet);
        for (w, d) in &self.terms {
            r.add_term(u.concat(w).concat(v), d.clone() * c);
        }
        r
    }

    pub fn commutator(&self, o: &Self) -> Result<Self> {
        Ok(&self.multiply(o)? - &o.multiply(self)?)
    }

    /// q p r - q^-1 r p.
    pub fn q_commutator(&self, o: &Self, params: &Params<F>) -> Result<Self> {
        Ok(&self.multiply(o)?.scale(&params.q) - &o.multiply(self)?.scale(&params.q_inv))
    }

    /// Swaps a and b letter by letter.
    pub fn omega_swap(&self) -> Result<Self> {
        if !self.alphabet.is_core() {
            return Err(Error::Usage("omega_swap needs the core alphabet {a, b}".into()));
        }
        let mut r = Self::zero(&self.alphabet);
        for (w, c) in &self.terms {
            let s = Word(w.0.iter().map(|&x| 1 - x).collect());
            r.add_term(s, c.clone());
        }
        Ok(r)
    }

    pub fn graded_component(&self, d: usize) -> Self {
        NcPoly {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().filter(|(w, _)| w.len() == d).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Maps every coefficient through `f`, possibly into another field.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<NcPoly<G>> {
        let mut r = NcPoly::zero(&self.alphabet);
        for (w, c) in &self.terms {
            r.add_term(w.clone(), f(c)?);
        }
        Ok(r)
    }

    /// Algebra homomorphism sending letter i to `images[i]`.
    pub fn substitute(&self, target: &Arc<Alphabet>, images: &[NcPoly<F>]) -> Self {
        let mut out = NcPoly::zero(target);
        for (w, c) in &self.terms {
            let mut acc = NcPoly::scalar(target, c.clone());
            for &l in w.letters() {
                acc = &acc * &images[l as usize];
            }
            for (w2, c2) in acc.terms {
                out.add_term(w2, c2);
            }
        }
        out
    }

    pub fn to_json(&self) -> NcPolyJson {
        NcPolyJson {
            alphabet: self.alphabet.names.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| TermJson { word: self.alphabet.render(w), coeff: c.to_text() })
                .collect(),
        }
    }

    pub fn from_json(j: &NcPolyJson) -> Result<Self> {
        let alphabet = Alphabet::new(j.alphabet.clone())?;
        let alphabet = if alphabet.is_core() { Alphabet::core() } else { alphabet };
        let mut p = Self::zero(&alphabet);
        for t in &j.terms {
            p.add_term(alphabet.parse_word(&t.word)?, F::parse_text(&t.coeff)?);
        }
        Ok(p)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcPolyJson {
    pub alphabet: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl<F: Field> fmt::Display for NcPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(w, c)| {
                if w.is_empty() {
                    format!("({})", c.to_text())
                } else {
                    format!("({})*{}", c.to_text(), self.alphabet.render(w))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<F: Field> fmt::Debug for NcPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> std::ops::Add for &NcPoly<F> {
    type Output = NcPoly<F>;
    fn add(self, o: Self) -> NcPoly<F> {
        self.try_add(o).expect("alphabet mismatch")
    }
}

impl<F: Field> std::ops::Sub for &NcPoly<F> {
    type Output = NcPoly<F>;
    fn sub(self, o: Self) -> NcPoly<F> {
        self.try_add(&-o).expect("alphabet mismatch")
    }
}

impl<F: Field> std::ops::Mul for &NcPoly<F> {
    type Output = NcPoly<F>;
    fn mul(self, o: Self) -> NcPoly<F> {
        self.multiply(o).expect("alphabet mismatch")
    }
}

impl<F: Field> std::ops::Neg for &NcPoly<F> {
    type Output = NcPoly<F>;
    fn neg(self) -> NcPoly<F> {
        NcPoly {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RatFunc;

    type P = NcPoly<RatFunc>;

    fn s(x: &str) -> RatFunc {
        RatFunc::parse(x).unwrap()
    }

    #[test]
    fn products_and_brackets() {
        let al = Alphabet::core();
        let a = P::letter(&al, 0);
        let b = P::letter(&al, 1);
        assert_eq!((&a * &b).coeff_of("ab").unwrap(), s("1"));
        let lhs = &(&a + &b) * &(&a - &b);
        assert_eq!(lhs.len(), 4);
        assert_eq!(lhs.coeff_of("ab").unwrap(), s("-1"));
        assert_eq!(lhs.coeff_of("ba").unwrap(), s("1"));
        assert!(a.commutator(&a).unwrap().is_zero());
        let prm = Params::symbolic(1).unwrap();
        let qa = a.q_commutator(&a, &prm).unwrap();
        assert_eq!(qa.coeff_of("aa").unwrap(), s("q-q^-1"));
        let g = &b.q_commutator(&a, &prm).unwrap() + &P::scalar(&al, s("d1"));
        let gt = a.q_commutator(&b, &prm).unwrap();
        let gt = &gt + &P::scalar(&al, s("d1"));
        assert_eq!(g.omega_swap().unwrap(), gt);
        assert_eq!(g.graded_component(2).len(), 2);
    }

    #[test]
    fn json_round_trip_and_mismatch() {
        let al = Alphabet::core();
        let p = &P::letter(&al, 0) * &P::scalar(&al, s("q/(r+1)"));
        let back = P::from_json_str(&p.to_json_string()).unwrap();
        assert_eq!(back, p);
        let other = Alphabet::new(["x"]).unwrap();
        assert!(p.multiply(&P::letter(&other, 0)).is_err());
        assert!(P::letter(&other, 0).omega_swap().is_err());
    }
}
