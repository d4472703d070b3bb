//! Reference data: the published low generators, the higher generators as
//! coefficient lists, and the first three central elements over the modes.
//!
//! Everything is built over an arbitrary field from [`Params`], so the same
//! tables serve symbolic and specialized runs.

use crate::error::Result;
use crate::ncpoly::{Alphabet, NcPoly, Word};
use crate::scalar::{Field, Params};
use crate::series::{ModeAlphabet, ModeLetter};
use std::sync::Arc;

/// Laurent polynomial in q with integer coefficients: sum of c * q^e.
fn lp<F: Field>(p: &Params<F>, terms: &[(i64, i64)]) -> F {
    terms.iter().fold(F::zero(), |acc, &(e, c)| acc + &(p.qpow(e) * &F::from_i64(c)))
}

fn core_word(s: &str) -> Word {
    Word::from_slice(&s.bytes().map(|c| c - b'a').collect::<Vec<_>>())
}

fn core_poly<F: Field>(terms: &[(F, &str)]) -> NcPoly<F> {
    let core = Alphabet::core();
    let mut out = NcPoly::zero(&core);
    for (c, w) in terms {
        out.add_term(core_word(w), c.clone());
    }
    out
}

struct Q<'a, F: Field> {
    p: &'a Params<F>,
}

impl<'a, F: Field> Q<'a, F> {
    fn n(&self, k: i64) -> F {
        self.p.qnum(k).expect("positive q-number")
    }
    fn e(&self, k: i64) -> F {
        self.p.qpow(k)
    }
    fn m(&self) -> F {
        self.p.qdiff()
    }
    fn ri(&self) -> F {
        self.p.rho_inv.clone()
    }
    fn ri2(&self) -> F {
        self.p.rho_inv.clone() * &self.p.rho_inv
    }
    fn inv(&self, x: F) -> F {
        x.inv().expect("nonzero reference denominator")
    }
}

/// G_1, W_{-1}, G_2 as printed.
pub fn first_generators<F: Field>(p: &Params<F>) -> Result<Vec<(&'static str, NcPoly<F>)>> {
    let h = Q { p };
    let (q, qi, d1, d2) = (h.e(1), h.e(-1), p.delta(1)?, p.delta(2)?);
    let g1 = core_poly(&[(q.clone(), "ba"), (-qi.clone(), "ab"), (d1.clone(), "")]);
    let q22 = h.e(2) + &h.e(-2);
    let wm1 = core_poly(&[
        (q22.clone() * &h.ri(), "aba"),
        (-h.ri(), "aab"),
        (-h.ri(), "baa"),
        (F::one(), "b"),
        (d1.clone() * &h.m() * &h.ri(), "a"),
    ]);
    let pre = h.inv(p.rho.clone() * &q22);
    let a1 = d1.clone() * &h.m() * &h.ri();
    let g2 = core_poly(&[
        (lp(p, &[(-3, 1), (-1, 1)]) * &pre, "aabb"),
        (-lp(p, &[(3, 1), (1, 1)]) * &pre, "bbaa"),
        (lp(p, &[(-3, 1), (3, -1)]) * &pre, "abba"),
        (lp(p, &[(-3, 1), (3, -1)]) * &pre, "baab"),
        (-lp(p, &[(-5, 1), (-3, 1), (-1, 2)]) * &pre, "abab"),
        (lp(p, &[(5, 1), (3, 1), (1, 2)]) * &pre, "baba"),
        (p.rho.clone() * &h.m() * &pre, "aa"),
        (p.rho.clone() * &h.m() * &pre, "bb"),
        (a1.clone() * &q, "ba"),
        (-(a1 * &qi), "ab"),
        (d2 - d1.clone() * &d1 * &h.m() * &pre, ""),
    ]);
    Ok(vec![("G1", g1), ("W-1", wm1), ("G2", g2)])
}

/// One named coefficient of a higher generator: the printed value, the
/// corrected value where the print is wrong, and the words it multiplies.
pub struct RefCoeff<F> {
    pub name: String,
    pub printed: F,
    pub corrected: Option<F>,
    pub words: Vec<&'static str>,
}

impl<F: Field> RefCoeff<F> {
    pub fn value(&self) -> &F {
        self.corrected.as_ref().unwrap_or(&self.printed)
    }
}

fn rc<F>(name: &str, printed: F, corrected: Option<F>, words: &[&'static str]) -> RefCoeff<F> {
    RefCoeff { name: name.to_string(), printed, corrected, words: words.to_vec() }
}

/// W_{-2} as fifteen coefficients.
pub fn wm2_coefficients<F: Field>(p: &Params<F>) -> Result<Vec<RefCoeff<F>>> {
    let h = Q { p };
    let (n2, n3, n4, n8) = (h.n(2), h.n(3), h.n(4), h.n(8));
    let d1 = p.delta(1)?;
    let d2 = p.delta(2)?;
    let r2 = h.ri2();
    let big = n2.clone() * &n3 * &n8 * &h.inv(n4.clone() * &n4) + &F::one();
    let m2 = h.m() * &h.m();
    Ok(vec![
        rc("w1", r2.clone(), None, &["aaabb"]),
        rc("w2", -(n2.clone() * &n8 * &r2 * &h.inv(n4.clone() * &n4)), None, &["aabba"]),
        rc("w3", -(n4.clone() * &r2 * &h.inv(n2.clone())), None, &["baaba", "aabab"]),
        rc("w4", big.clone() * &r2, None, &["ababa"]),
        rc("w5", r2.clone() * &h.inv(n3.clone()), None, &["bbaaa"]),
        rc(
            "w6",
            -(n2.clone() * &n8 * &r2 * &h.inv(n3.clone() * &n4)),
            Some(-(n2.clone() * &n8 * &r2 * &h.inv(n4.clone() * &n4))),
            &["abbaa"],
        ),
        rc(
            "w7",
            n2.clone() * &n2 * &r2 * &h.inv(n3.clone() * &n4),
            Some(n2.clone() * &n2 * &n2 * &r2 * &h.inv(n3.clone() * &n4)),
            &["baaab"],
        ),
        rc("w8", -h.ri(), None, &["abb"]),
        rc("w9", -(h.ri() * &h.inv(n3.clone())), None, &["bba"]),
        rc("w10", -(h.m() * &r2 * &d1), None, &["aab", "baa"]),
        rc(
            "w11",
            big.clone() * &r2 * &h.inv(n3.clone()),
            Some(big * &h.ri() * &h.inv(n3.clone())),
            &["bab"],
        ),
        rc("w12", h.m() * &n4 * &r2 * &h.inv(n2.clone()) * &d1, None, &["aba"]),
        rc("w13", m2.clone() * &n2 * &h.ri() * &h.inv(n4.clone()), None, &["aaa"]),
        rc(
            "w14",
            F::one() - m2 * &n2 * &r2 * &h.inv(n4) * &d1 * &d1 + &(h.m() * &h.ri() * &d2),
            None,
            &["a"],
        ),
        rc("w15", h.m() * &h.ri() * &d1, None, &["b"]),
    ])
}

/// G_3 as thirty-one coefficients.
pub fn g3_coefficients<F: Field>(p: &Params<F>) -> Result<Vec<RefCoeff<F>>> {
    let h = Q { p };
    let (n2, n3, n4, n6, n8) = (h.n(2), h.n(3), h.n(4), h.n(6), h.n(8));
    let (d1, d2, d3) = (p.delta(1)?, p.delta(2)?, p.delta(3)?);
    let r2 = h.ri2();
    let r = h.ri();
    let m = h.m();
    let n22 = n2.clone() * &n2;
    let i46 = h.inv(n4.clone() * &n6);
    let i6 = h.inv(n6.clone());
    let i4 = h.inv(n4.clone());
    let i3 = h.inv(n3.clone());
    let i344 = h.inv(n3.clone() * &n3 * &n4);
    let i346 = h.inv(n3.clone() * &n4 * &n6);
    let l = |t: &[(i64, i64)]| lp(p, t);

    let g5 = -(m.clone() * &n3 * &n3 * &n4 * &r2 * &i6);
    let g19 = -(m.clone() * &m * &n2 * &n3 * &r2 * &i4 * &d1);
    let g27 = m.clone() * &m * &n2 * &r * &i4 * &d1;
    let inner = p.rho.clone() * &d2 - m.clone() * &n2 * &i4 * &d1 * &d1;
    let d1cube = m.clone() * &m * &n22 * &n3 * &i46 * &d1 * &d1 * &d1;
    let g31_rest = d3 + &(d1.clone() * &h.inv(n22.clone())) - m.clone() * &n2 * &n3 * &r * &i6 * &d1 * &d2;

    let v: Vec<(F, Option<F>, &'static str)> = vec![
        (-(h.e(-3) * &n2 * &r2 * &i6), None, "aaabbb"),
        (l(&[(-7, 2), (-3, 2), (-1, 2)]) * &n22 * &n3 * &r2 * &i46, None, "aabbab"),
        (h.e(-1) * &n4 * &l(&[(2, 1), (-2, -1), (0, -1)]) * &r2 * &i6, None, "aabbba"),
        (l(&[(5, 1), (3, 1), (1, -1), (-3, -1), (-5, -1), (-7, -1)]) * &n22 * &r2 * &i46, None, "abbbaa"),
        (g5.clone(), None, "abbaba"),
        (h.e(-1) * &n2 * &n8 * &r2 * &h.inv(n4.clone() * &n4), None, "abbaab"),
        (-(l(&[(-9, 1), (-7, 1), (-5, 2), (-3, 1), (-1, 3)]) * &n22 * &n3 * &r2 * &i46), None, "ababab"),
        (h.e(3) * &n2 * &r2 * &i6, None, "bbbaaa"),
        (-(l(&[(7, 2), (3, 2), (1, 2)]) * &n22 * &n3 * &r2 * &i46), None, "bbaaba"),
        (-(h.e(1) * &n4 * &l(&[(-2, 1), (2, -1), (0, -1)]) * &r2 * &i6), None, "bbaaab"),
        (l(&[(7, 1), (5, 1), (3, 1), (-1, 1), (-3, -1), (-5, -1)]) * &n22 * &r2 * &i46, None, "baaabb"),
        (g5, None, "baabab"),
        (-(h.e(1) * &n2 * &n8 * &r2 * &h.inv(n4.clone() * &n4)), None, "baabba"),
        (l(&[(9, 1), (7, 1), (5, 2), (3, 1), (1, 3)]) * &n22 * &n3 * &r2 * &i46, None, "bababa"),
        (-(h.e(-1) * &l(&[(6, 2), (4, 1), (2, 2), (0, 1), (-2, 4), (-4, 2), (-6, 2)]) * &n2 * &r * &i344), None, "aaab"),
        (h.e(1) * &F::from_i64(2) * &n6 * &r * &i3 * &i4, None, "aaba"),
        (-(h.e(1) * &l(&[(6, 1), (4, 2), (2, 3), (-2, 1), (-4, -1), (-6, -1), (-8, -1)]) * &n22 * &r * &i346), None, "baaa"),
        (h.e(-2) * &m * &n22 * &r2 * &i4 * &d1, None, "aabb"),
        (g19.clone(), None, "abba"),
        (-(h.e(-3) * &m * &(h.e(2) + &n3) * &n2 * &r2 * &i4 * &d1), None, "abab"),
        (h.e(1) * &l(&[(6, 2), (4, 2), (2, 4), (0, 1), (-2, 2), (-4, 1), (-6, 2)]) * &n2 * &r * &i344, None, "bbba"),
        (-(h.e(-1) * &F::from_i64(2) * &n6 * &r * &i3 * &i4), None, "bbab"),
        (-(h.e(-1) * &l(&[(8, 1), (6, 1), (4, 1), (2, -1), (-2, -3), (-4, -2), (-6, -1)]) * &n22 * &r * &i346), None, "abbb"),
        (-(h.e(2) * &m * &n22 * &r2 * &i4 * &d1), None, "bbaa"),
        (g19, None, "baab"),
        (h.e(3) * &m * &(h.e(-2) + &n3) * &n2 * &r2 * &i4 * &d1, None, "baba"),
        (g27.clone(), None, "aa"),
        (g27, None, "bb"),
        (
            -(h.e(-1) * &m * &r2 * &inner) + &(h.e(3) * &l(&[(4, 1), (-8, -1), (-6, -2)]) * &n22 * &i346),
            None,
            "ab",
        ),
        (
            h.e(1) * &m * &r2 * &inner + &(h.e(-3) * &l(&[(8, 1), (-4, -1), (6, 2)]) * &n22 * &i346),
            None,
            "ba",
        ),
        (g31_rest.clone() + &d1cube, Some(g31_rest + &(d1cube * &r2)), ""),
    ];
    Ok(v.into_iter()
        .enumerate()
        .map(|(i, (pr, co, w))| rc(&format!("g{}", i + 1), pr, co, &[w]))
        .collect())
}

/// Sum of coefficient times words, using printed or corrected values.
pub fn assemble<F: Field>(coeffs: &[RefCoeff<F>], corrected: bool) -> NcPoly<F> {
    let mut out = NcPoly::zero(&Alphabet::core());
    for c in coeffs {
        let v = if corrected { c.value() } else { &c.printed };
        for w in &c.words {
            out.add_term(core_word(w), v.clone());
        }
    }
    out
}

/// Sum of the words attached to each coefficient (the unknown's basis vector).
pub fn coefficient_word_sums<F: Field>(coeffs: &[RefCoeff<F>]) -> Vec<NcPoly<F>> {
    coeffs
        .iter()
        .map(|c| core_poly(&c.words.iter().map(|w| (F::one(), *w)).collect::<Vec<_>>()))
        .collect()
}

fn mode_poly<F: Field>(m: &ModeAlphabet, terms: &[(F, &[ModeLetter])]) -> Result<NcPoly<F>> {
    let mut out = NcPoly::zero(m.alphabet());
    for (c, ls) in terms {
        out.add_term(m.word(ls)?, c.clone());
    }
    Ok(out)
}

/// Delta_1, Delta_2, Delta_3 over the modes as printed; needs kmax >= 2.
pub fn printed_deltas<F: Field>(p: &Params<F>, m: &ModeAlphabet) -> Result<Vec<NcPoly<F>>> {
    use ModeLetter::*;
    let h = Q { p };
    let qm = h.m();
    let q22 = h.e(2) + &h.e(-2);
    let one = F::one();
    let w0 = Wm(0);
    let w1 = Wp(0);
    let d1 = mode_poly(
        m,
        &[(one.clone(), &[G(0)]), (one.clone(), &[Gt(0)]), (-qm.clone(), &[w0, w1]), (-qm.clone(), &[w1, w0])],
    )?;
    let s = (h.e(2) - h.e(-2)) * &h.inv(q22.clone());
    let t = qm.clone() * &h.inv(q22.clone());
    let d2 = mode_poly(
        m,
        &[
            (one.clone(), &[G(1)]),
            (one.clone(), &[Gt(1)]),
            (-(s.clone() * &h.e(-1)), &[w0, Wp(1)]),
            (-(s.clone() * &h.e(1)), &[Wp(1), w0]),
            (-(s.clone() * &h.e(-1)), &[w1, Wm(1)]),
            (-(s * &h.e(1)), &[Wm(1), w1]),
            (t.clone() * &q22, &[w0, w0]),
            (t.clone() * &q22, &[w1, w1]),
            (t.clone() * &h.ri(), &[Gt(0), G(0)]),
            (t * &h.ri(), &[G(0), Gt(0)]),
        ],
    )?;
    let u = qm.clone() * &h.inv(q22.clone() - &one);
    let n2sq = h.inv(h.n(2) * &h.n(2));
    let mut d3 = mode_poly(
        m,
        &[
            (one.clone(), &[G(2)]),
            (one.clone(), &[Gt(2)]),
            (-(u.clone() * &h.e(-2)), &[w0, Wp(2)]),
            (-(u.clone() * &h.e(2)), &[Wp(2), w0]),
            (-(u.clone() * &h.e(-2)), &[w1, Wm(2)]),
            (-(u.clone() * &h.e(2)), &[Wm(2), w1]),
            (-u.clone(), &[Wp(1), Wm(1)]),
            (-u.clone(), &[Wm(1), Wp(1)]),
            (u.clone() * &q22, &[w0, Wm(1)]),
            (u.clone() * &q22, &[w1, Wp(1)]),
            (u.clone() * &h.ri(), &[Gt(1), G(0)]),
            (u * &h.ri(), &[G(1), Gt(0)]),
        ],
    )?;
    d3.add_scaled(&d1, &-n2sq);
    Ok(vec![d1, d2, d3])
}

/// Core alphabet handle, for callers building comparisons.
pub fn core() -> Arc<Alphabet> {
    Alphabet::core()
}
