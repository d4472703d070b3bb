//! Rewriting modulo the q-Dolan-Grady ideal.
//!
//! Words are ordered by length, then lexicographically with b > a; this is
//! exactly the [`Word`] order on the core alphabet.  Completion processes
//! overlaps degree by degree up to a bound and is never run past it.

use crate::error::{Error, Result};
use crate::ncpoly::{Alphabet, NcPoly, NcPolyJson, Word};
use crate::scalar::{Field, Params};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

pub const ORDER_NAME: &str = "deglex(b>a)";

/// Nested bracket [X, Y]_s = s XY - s^-1 YX with an explicit scalar s.
fn bracket<F: Field>(x: &NcPoly<F>, y: &NcPoly<F>, s: &F, s_inv: &F) -> NcPoly<F> {
    &(x * y).scale(s) - &(y * x).scale(s_inv)
}

/// rel1 = [a,[a,[a,b]_q]_{q^-1}] - rho [a,b] and rel2 = its a<->b mirror.
pub fn qdg_relations<F: Field>(p: &Params<F>) -> (NcPoly<F>, NcPoly<F>) {
    let al = Alphabet::core();
    let a = NcPoly::letter(&al, 0);
    let b = NcPoly::letter(&al, 1);
    let one = F::one();
    let inner = bracket(&a, &b, &p.q, &p.q_inv);
    let mid = bracket(&a, &inner, &p.q_inv, &p.q);
    let outer = bracket(&a, &mid, &one, &one);
    let rel1 = &outer - &bracket(&a, &b, &one, &one).scale(&p.rho);
    let rel2 = rel1.omega_swap().expect("core alphabet");
    (rel1, rel2)
}

/// lead -> tail, every tail word smaller than lead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule<F: Field> {
    pub lead: Word,
    pub tail: NcPoly<F>,
}

/// Truncated rewriting system for the two-sided ideal.
#[derive(Clone, Debug)]
pub struct RewriteSystem<F: Field> {
    alphabet: Arc<Alphabet>,
    rules: Vec<Rule<F>>,
    bound: usize,
    /// status[d]: all overlaps of degree <= d have been resolved.
    status: Vec<bool>,
    index: HashMap<Word, usize>,
    lead_lengths: Vec<usize>,
}

impl<F: Field> RewriteSystem<F> {
    fn from_rules(alphabet: Arc<Alphabet>, mut rules: Vec<Rule<F>>, bound: usize, status: Vec<bool>) -> Self {
        rules.sort_by(|x, y| x.lead.cmp(&y.lead));
        let mut s = RewriteSystem { alphabet, rules, bound, status, index: HashMap::new(), lead_lengths: Vec::new() };
        s.reindex();
        s
    }

    fn reindex(&mut self) {
        self.index = self.rules.iter().enumerate().map(|(i, r)| (r.lead.clone(), i)).collect();
        let lens: BTreeSet<usize> = self.rules.iter().map(|r| r.lead.len()).collect();
        self.lead_lengths = lens.into_iter().collect();
    }

    pub fn rules(&self) -> &[Rule<F>] {
        &self.rules
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn status(&self) -> &[bool] {
        &self.status
    }

    pub fn is_complete_to(&self, d: usize) -> bool {
        d <= self.bound && self.status.get(d).copied().unwrap_or(false)
    }

    /// Rule whose lead occurs in `w`: (rule index, position).
    fn find_reducer(&self, w: &Word) -> Option<(usize, usize)> {
        let l = w.letters();
        for &len in &self.lead_lengths {
            if len > l.len() {
                break;
            }
            for i in 0..=l.len() - len {
                if let Some(&r) = self.index.get(&Word::from_slice(&l[i..i + len])) {
                    return Some((r, i));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_reducer(w).is_none()
    }

    /// Reduction without the degree-bound check.
    fn reduce(&self, p: &NcPoly<F>) -> NcPoly<F> {
        let mut work: BTreeMap<Word, F> = p.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut out: BTreeMap<Word, F> = BTreeMap::new();
        while let Some((w, c)) = work.pop_last() {
            match self.find_reducer(&w) {
                None => {
                    out.insert(w, c);
                }
                Some((r, i)) => {
                    let rule = &self.rules[r];
                    let l = w.letters();
                    let u = Word::from_slice(&l[..i]);
                    let v = Word::from_slice(&l[i + rule.lead.len()..]);
                    for (tw, tc) in rule.tail.terms() {
                        let nw = u.concat(tw).concat(&v);
                        let add = c.clone() * tc;
                        match work.get_mut(&nw) {
                            Some(e) => {
                                let s = e.clone() + &add;
                                if s.is_zero() {
                                    work.remove(&nw);
                                } else {
                                    *e = s;
                                }
                            }
                            None => {
                                work.insert(nw, add);
                            }
                        }
                    }
                }
            }
        }
        NcPoly::from_terms(&self.alphabet, out)
    }

    /// Unique irreducible representative modulo the ideal.
    pub fn normal_form(&self, p: &NcPoly<F>) -> Result<NcPoly<F>> {
        if p.alphabet() != &self.alphabet {
            return Err(Error::Usage("normal_form expects a core-alphabet polynomial".into()));
        }
        if let Some(d) = p.degree() {
            if !self.is_complete_to(d) {
                return Err(Error::DegreeBound { degree: d, bound: self.bound });
            }
        }
        Ok(self.reduce(p))
    }

    /// Degree-d words avoiding every leading word, in increasing order.
    pub fn normal_words(&self, d: usize) -> Result<Vec<Word>> {
        if !self.is_complete_to(d) {
            return Err(Error::DegreeBound { degree: d, bound: self.bound });
        }
        let n = self.alphabet.len() as u8;
        let mut out = Vec::new();
        let mut cur: Vec<u8> = Vec::with_capacity(d);
        self.extend_words(&mut cur, d, n, &mut out);
        Ok(out)
    }

    fn extend_words(&self, cur: &mut Vec<u8>, d: usize, n: u8, out: &mut Vec<Word>) {
        if cur.len() == d {
            out.push(Word::from_slice(cur));
            return;
        }
        for x in 0..n {
            cur.push(x);
            // Only factors ending at the new letter can be new.
            let ok = self.lead_lengths.iter().all(|&len| {
                len > cur.len() || !self.index.contains_key(&Word::from_slice(&cur[cur.len() - len..]))
            });
            if ok {
                self.extend_words(cur, d, n, out);
            }
            cur.pop();
        }
    }

    pub fn graded_dim(&self, d: usize) -> Result<usize> {
        Ok(self.normal_words(d)?.len())
    }

    pub fn to_json(&self, params_tag: &str) -> RewriteJson {
        RewriteJson {
            order: ORDER_NAME.to_string(),
            bound: self.bound,
            status: self.status.clone(),
            mode: F::mode_name().to_string(),
            params: params_tag.to_string(),
            hash: String::new(),
            rules: self
                .rules
                .iter()
                .map(|r| RuleJson { lead: self.alphabet.render(&r.lead), tail: r.tail.to_json() })
                .collect(),
        }
    }

    pub fn from_json(j: &RewriteJson) -> Result<Self> {
        let al = Alphabet::core();
        let mut rules = Vec::new();
        for r in &j.rules {
            rules.push(Rule { lead: al.parse_word(&r.lead)?, tail: NcPoly::from_json(&r.tail)? });
        }
        Ok(Self::from_rules(al, rules, j.bound, j.status.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleJson {
    pub lead: String,
    pub tail: NcPolyJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteJson {
    pub order: String,
    pub bound: usize,
    pub status: Vec<bool>,
    pub mode: String,
    pub params: String,
    pub hash: String,
    pub rules: Vec<RuleJson>,
}

/// Hash identifying (relations, order, bound) for cache validation.
pub fn content_hash<F: Field>(p: &Params<F>, bound: usize) -> String {
    let (r1, r2) = qdg_relations(p);
    let mut h = Sha256::new();
    h.update(r1.to_json_string().as_bytes());
    h.update(b"|");
    h.update(r2.to_json_string().as_bytes());
    h.update(b"|");
    h.update(ORDER_NAME.as_bytes());
    h.update(b"|");
    h.update(bound.to_string().as_bytes());
    hex::encode(h.finalize())
}

/// Serializes with the content hash filled in.
pub fn save_system<F: Field>(rs: &RewriteSystem<F>, p: &Params<F>) -> String {
    let mut j = rs.to_json(&params_tag(p));
    j.hash = content_hash(p, rs.bound);
    serde_json::to_string(&j).expect("serializable")
}

/// Loads a cached system, rejecting it unless the hash matches `p` and `bound`.
pub fn load_system<F: Field>(text: &str, p: &Params<F>, bound: usize) -> Result<RewriteSystem<F>> {
    let j: RewriteJson = serde_json::from_str(text)?;
    if j.hash != content_hash(p, bound) || j.bound != bound || j.mode != F::mode_name() {
        return Err(Error::Configuration("cached rewrite system does not match the requested relations".into()));
    }
    RewriteSystem::from_json(&j)
}

fn params_tag<F: Field>(p: &Params<F>) -> String {
    format!("q={} r={}", p.q.to_text(), p.rho.to_text())
}

struct Pending<F: Field> {
    rules: BTreeMap<usize, Rule<F>>,
    next_id: usize,
}

/// Overlap of rule i's lead suffix with rule j's lead prefix of length k.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Pair {
    degree: usize,
    i: usize,
    j: usize,
    k: usize,
}

fn overlaps(li: &Word, lj: &Word, i: usize, j: usize) -> Vec<Pair> {
    let (a, b) = (li.letters(), lj.letters());
    let mut v = Vec::new();
    for k in 1..a.len().min(b.len()) {
        if a[a.len() - k..] == b[..k] {
            v.push(Pair { degree: a.len() + b.len() - k, i, j, k });
        }
    }
    v
}

impl<F: Field> Pending<F> {
    fn system(&self, bound: usize) -> RewriteSystem<F> {
        RewriteSystem::from_rules(Alphabet::core(), self.rules.values().cloned().collect(), bound, vec![])
    }
}

/// Degree-truncated overlap completion of the q-Dolan-Grady relations.
pub fn complete<F: Field>(p: &Params<F>, bound: usize) -> Result<RewriteSystem<F>> {
    if bound < 4 {
        return Err(Error::Domain(format!("completion bound must be at least 4, got {}", bound)));
    }
    let (r1, r2) = qdg_relations(p);
    let mut st = Pending { rules: BTreeMap::new(), next_id: 0 };
    let mut pairs: BTreeSet<Pair> = BTreeSet::new();
    let mut inputs: Vec<NcPoly<F>> = vec![r1, r2];
    let mut status = vec![false; bound + 1];

    for d in 0..=bound {
        loop {
            let mut todo: Vec<NcPoly<F>> = Vec::new();
            let (ready, later): (Vec<_>, Vec<_>) = inputs.into_iter().partition(|x| x.degree().unwrap_or(0) <= d);
            inputs = later;
            todo.extend(ready);
            let due: Vec<Pair> = pairs.iter().copied().filter(|x| x.degree <= d).collect();
            for pr in &due {
                pairs.remove(pr);
                let (ri, rj) = match (st.rules.get(&pr.i), st.rules.get(&pr.j)) {
                    (Some(a), Some(b)) => (a, b),
                    _ => continue,
                };
                let li = ri.lead.letters();
                let u = Word::from_slice(&li[..li.len() - pr.k]);
                let v = Word::from_slice(&rj.lead.letters()[pr.k..]);
                let s = &ri.tail.sandwich(&Word::empty(), &v, &F::one()) - &rj.tail.sandwich(&u, &Word::empty(), &F::one());
                todo.push(s);
            }
            if todo.is_empty() {
                break;
            }
            for poly in todo {
                let sys = st.system(bound);
                let r = sys.reduce(&poly);
                let (lead, lc) = match r.leading() {
                    Some((w, c)) => (w.clone(), c.clone()),
                    None => continue,
                };
                let inv = lc.inv()?;
                let mut tail = r.scale(&(-inv));
                tail.add_term(lead.clone(), F::one());
                let id = st.next_id;
                st.next_id += 1;
                // Rules whose lead now reduces are retired and re-fed.
                let dead: Vec<usize> = st.rules.iter().filter(|(_, x)| x.lead.find(&lead).is_some()).map(|(k, _)| *k).collect();
                for k in dead {
                    let old = st.rules.remove(&k).unwrap();
                    let mut back = old.tail.clone();
                    back.add_term(old.lead.clone(), -F::one());
                    inputs.push(back);
                }
                for (&k, other) in &st.rules {
                    for pr in overlaps(&lead, &other.lead, id, k) {
                        if pr.degree <= bound {
                            pairs.insert(pr);
                        }
                    }
                    for pr in overlaps(&other.lead, &lead, k, id) {
                        if pr.degree <= bound {
                            pairs.insert(pr);
                        }
                    }
                }
                for pr in overlaps(&lead, &lead, id, id) {
                    if pr.degree <= bound {
                        pairs.insert(pr);
                    }
                }
                st.rules.insert(id, Rule { lead, tail });
            }
        }
        status[d] = true;
    }
    // Final inter-reduction of tails gives the canonical system.
    let mut rules: Vec<Rule<F>> = st.rules.into_values().collect();
    rules.sort_by(|x, y| x.lead.cmp(&y.lead));
    let base = RewriteSystem::from_rules(Alphabet::core(), rules.clone(), bound, status.clone());
    let reduced: Vec<Rule<F>> = rules
        .into_iter()
        .map(|r| Rule { tail: base.reduce(&r.tail), lead: r.lead })
        .collect();
    Ok(RewriteSystem::from_rules(Alphabet::core(), reduced, bound, status))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RatFunc;
    use num_rational::BigRational;

    #[test]
    fn relation_coefficients() {
        let p = Params::symbolic(0).unwrap();
        let (r1, r2) = qdg_relations(&p);
        let c = |w: &str| r1.coeff_of(w).unwrap();
        assert_eq!(c("baaa"), RatFunc::parse("-1").unwrap());
        assert_eq!(c("aaab"), RatFunc::parse("1").unwrap());
        assert_eq!(c("aaba"), RatFunc::parse("-(q^2+1+q^-2)").unwrap());
        assert_eq!(c("abaa"), RatFunc::parse("q^2+1+q^-2").unwrap());
        assert_eq!(c("ab"), RatFunc::parse("-r").unwrap());
        assert_eq!(c("ba"), RatFunc::parse("r").unwrap());
        assert_eq!(r1.len(), 6);
        assert_eq!(r2.coeff_of("abbb").unwrap(), RatFunc::parse("-1").unwrap());
    }

    #[test]
    fn degree_four_system() {
        let p = Params::symbolic(0).unwrap();
        let rs = complete(&p, 4).unwrap();
        let leads: Vec<String> = rs.rules().iter().map(|r| Alphabet::core().render(&r.lead)).collect();
        assert_eq!(leads, vec!["baaa", "bbba"]);
        let (r1, r2) = qdg_relations(&p);
        assert!(rs.normal_form(&r1).unwrap().is_zero());
        assert!(rs.normal_form(&r2).unwrap().is_zero());
    }

    #[test]
    fn dims_specialized() {
        let pt = crate::scalar::SpecializationPoint::default_point(0);
        let p = Params::<BigRational>::specialized(&pt).unwrap();
        let rs = complete(&p, 8).unwrap();
        let dims: Vec<usize> = (0..=8).map(|d| rs.graded_dim(d).unwrap()).collect();
        assert_eq!(dims, vec![1, 2, 4, 8, 14, 24, 40, 64, 100]);
        assert!(matches!(rs.graded_dim(9), Err(Error::DegreeBound { .. })));
    }
}
