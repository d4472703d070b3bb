//! Change of basis between WG monomials and zig-zag words.
//!
//! Every WG monomial is expanded through the tower, reduced, and written in
//! the zig-zag words by solving one linear system per degree, top degree
//! first.  Nothing assumes that zig-zag words are normal words.

use crate::bases::{wg_enumerate, zigzag_enumerate, WGIndex, ZigzagIndex};
use crate::error::{Error, Result};
use crate::linalg::{bareiss, left_kernel_vector, solve_columns, Matrix};
use crate::ncpoly::{NcPoly, Word};
use crate::rewrite::RewriteSystem;
use crate::scalar::{Field, Params, SpecializationPoint};
use crate::series::ModeLetter;
use crate::tower::Tower;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};

/// Product of tower polynomials in WG order (not reduced).
pub fn wg_expand<F: Field>(idx: &WGIndex, tower: &Tower<F>) -> Result<NcPoly<F>> {
    let mut out = NcPoly::one(tower.core());
    for (l, e) in idx.factors() {
        let g = tower.gen(l)?;
        for _ in 0..e {
            out = out.multiply(&g)?;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpotCheck {
    pub row: String,
    pub col: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub rank: usize,
    pub size: usize,
    pub full_rank: bool,
    /// Determinant evaluated at the default point (or the point in use).
    pub determinant: Option<String>,
    /// Linear dependence among rows: (row name, coefficient).
    pub kernel: Option<Vec<(String, String)>>,
}

#[derive(Clone, Debug)]
pub struct TransitionReport<F: Field> {
    pub max_weight: usize,
    pub rows: Vec<WGIndex>,
    pub cols: Vec<ZigzagIndex>,
    pub matrix: Matrix<F>,
    pub verdict: Option<Verdict>,
    pub spot_checks: Vec<SpotCheck>,
    /// Singular or inconsistent solves, shape mismatches.
    pub structural: Vec<String>,
}

impl<F: Field> TransitionReport<F> {
    pub fn row_index(&self, name: &str) -> Option<usize> {
        let idx = WGIndex::parse(name).ok()?;
        self.rows.iter().position(|r| *r == idx)
    }

    pub fn col_index(&self, word: &Word) -> Option<usize> {
        self.cols.iter().position(|c| c.word() == *word)
    }

    /// Entry by row name and column word written in a/b.
    pub fn entry(&self, row: &str, col: &str) -> Option<&F> {
        let w = Word::from_slice(&col.bytes().map(|c| c - b'a').collect::<Vec<_>>());
        Some(&self.matrix[self.row_index(row)?][self.col_index(&w)?])
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    /// Rows, columns and nonzero entries in scalar text.
    pub fn to_json(&self) -> serde_json::Value {
        let mut entries = Vec::new();
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    entries.push(serde_json::json!({"row": i, "col": j, "value": x.to_text()}));
                }
            }
        }
        serde_json::json!({
            "mode": F::mode_name(),
            "max_weight": self.max_weight,
            "rows": self.rows.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "cols": self.cols.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "entries": entries,
            "verdict": self.verdict,
            "spot_checks": self.spot_checks,
            "structural": self.structural,
        })
    }
}

fn homogeneous_part<F: Field>(p: &NcPoly<F>, d: usize) -> HashMap<Word, F> {
    p.terms().filter(|(w, _)| w.len() == d).map(|(w, c)| (w.clone(), c.clone())).collect()
}

/// Builds the cumulative matrix for weights <= w.  Rank and spot checks are
/// filled in as well.
pub fn transition_matrix<F: Field>(w: usize, rs: &RewriteSystem<F>, tower: &Tower<F>) -> Result<TransitionReport<F>> {
    if !rs.is_complete_to(w) {
        return Err(Error::DegreeBound { degree: w, bound: rs.bound() });
    }
    let rows: Vec<WGIndex> = (0..=w).flat_map(wg_enumerate).collect();
    let cols: Vec<ZigzagIndex> = (0..=w).flat_map(zigzag_enumerate).collect();
    let mut structural = Vec::new();
    if rows.len() != cols.len() {
        structural.push(format!("{} WG monomials against {} zig-zag words", rows.len(), cols.len()));
    }

    // Reduced generators, built once so the parallel phase only reads.
    let letters: BTreeSet<ModeLetter> = rows.iter().flat_map(|r| r.factors()).map(|(l, _)| l).collect();
    let mut reduced = HashMap::new();
    for l in letters {
        let g = tower.gen(l)?;
        reduced.insert(l, rs.normal_form(&g)?);
    }
    let row_nf: Vec<NcPoly<F>> = rows
        .par_iter()
        .map(|idx| {
            let mut out = NcPoly::one(tower.core());
            for (l, e) in idx.factors() {
                for _ in 0..e {
                    out = rs.normal_form(&out.multiply(&reduced[&l])?)?;
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let col_nf: Vec<NcPoly<F>> =
        cols.par_iter().map(|c| rs.normal_form(&NcPoly::monomial(tower.core(), c.word(), F::one()))).collect::<Result<_>>()?;

    let mut matrix = vec![vec![F::zero(); cols.len()]; rows.len()];
    let mut residual = row_nf;
    for d in (0..=w).rev() {
        let zc: Vec<usize> = (0..cols.len()).filter(|&j| cols[j].length() == d).collect();
        let nw = rs.normal_words(d)?;
        if nw.len() != zc.len() {
            structural.push(format!("degree {}: {} normal words against {} zig-zag words", d, nw.len(), zc.len()));
            continue;
        }
        let pos: HashMap<&Word, usize> = nw.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut m = vec![vec![F::zero(); zc.len()]; nw.len()];
        for (k, &j) in zc.iter().enumerate() {
            for (word, c) in homogeneous_part(&col_nf[j], d) {
                m[pos[&word]][k] = c;
            }
        }
        let active: Vec<usize> = (0..rows.len()).filter(|&i| residual[i].terms().any(|(w, _)| w.len() == d)).collect();
        if active.is_empty() {
            continue;
        }
        let rhs: Vec<Vec<F>> = active
            .iter()
            .map(|&i| {
                let mut v = vec![F::zero(); nw.len()];
                for (word, c) in homogeneous_part(&residual[i], d) {
                    v[pos[&word]] = c;
                }
                v
            })
            .collect();
        let Some(sol) = solve_columns(&m, &rhs)? else {
            structural.push(format!("degree {}: zig-zag words are linearly dependent modulo the ideal", d));
            continue;
        };
        for (a, &i) in active.iter().enumerate() {
            for (k, &j) in zc.iter().enumerate() {
                let x = &sol[a][k];
                if !x.is_zero() {
                    matrix[i][j] = x.clone();
                    residual[i].add_scaled(&col_nf[j], &-x.clone());
                }
            }
        }
    }
    for (i, r) in residual.iter().enumerate() {
        if !r.is_zero() && structural.is_empty() {
            structural.push(format!("row {} is not in the span of the zig-zag words", rows[i]));
        }
    }

    let mut report = TransitionReport {
        max_weight: w,
        rows,
        cols,
        matrix,
        verdict: None,
        spot_checks: Vec::new(),
        structural,
    };
    report.spot_checks = spot_checks(&report, tower.params())?;
    if report.is_square() {
        report.verdict = Some(check_invertible(&report, tower.params())?);
    }
    Ok(report)
}

fn weight_blocks<F: Field>(r: &TransitionReport<F>) -> Vec<(Vec<usize>, Vec<usize>)> {
    (0..=r.max_weight)
        .map(|d| {
            let ri = (0..r.rows.len()).filter(|&i| r.rows[i].weight() == d).collect();
            let ci = (0..r.cols.len()).filter(|&j| r.cols[j].length() == d).collect();
            (ri, ci)
        })
        .collect()
}

fn certificate<F: Field>(det: &F, p: &Params<F>) -> String {
    let pt = SpecializationPoint::default_point(p.deltas.len());
    match det.specialize(&pt) {
        Ok(v) => v.to_text(),
        Err(e) => format!("unavailable: {}", e),
    }
}

/// Exact rank.  The matrix is block triangular by weight, so when every
/// diagonal block is nonsingular the determinant is the product of the block
/// determinants; otherwise the whole matrix is eliminated.
pub fn check_invertible<F: Field>(r: &TransitionReport<F>, p: &Params<F>) -> Result<Verdict> {
    let n = r.rows.len();
    let mut det = F::one();
    let mut blocks_ok = r.is_square();
    if blocks_ok {
        for (ri, ci) in weight_blocks(r) {
            if ri.len() != ci.len() {
                blocks_ok = false;
                break;
            }
            let m: Matrix<F> = ri.iter().map(|&i| ci.iter().map(|&j| r.matrix[i][j].clone()).collect()).collect();
            match bareiss(&m)?.1 {
                Some(d) => det = det * &d,
                None => {
                    blocks_ok = false;
                    break;
                }
            }
        }
    }
    if blocks_ok {
        return Ok(Verdict { rank: n, size: n, full_rank: true, determinant: Some(certificate(&det, p)), kernel: None });
    }
    let (rank, det) = bareiss(&r.matrix)?;
    let kernel = if rank < n {
        left_kernel_vector(&r.matrix)?.map(|y| {
            y.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (r.rows[i].to_string(), c.to_text()))
                .collect()
        })
    } else {
        None
    };
    Ok(Verdict {
        rank,
        size: n,
        full_rank: r.is_square() && rank == n,
        determinant: det.map(|d| certificate(&d, p)),
        kernel,
    })
}

/// Reference entries: (row, column word, value).  Rows listed here are
/// complete: any other nonzero entry in them fails the check, except the
/// aaba / bbab cells of W0W-1 / W2W1, which carry no reference value.
pub fn golden_entries<F: Field>(p: &Params<F>) -> Result<Vec<(&'static str, &'static str, F)>> {
    let d1 = p.delta(1)?;
    let q = p.q.clone();
    let qi = p.q_inv.clone();
    let ri = p.rho_inv.clone();
    let a = d1.clone() * &p.qdiff() * &ri;
    let b = p.qnum(4)? * &p.qnum(2)?.inv()? * &ri;
    let m = -ri.clone();
    let q2 = p.qnum(2)?;
    let i3 = p.qnum(3)?.inv()?;
    let i4 = p.qnum(4)?.inv()?;
    Ok(vec![
        ("G1", "", d1.clone()),
        ("G1", "ab", -qi.clone()),
        ("G1", "ba", q.clone()),
        ("W-1", "a", a.clone()),
        ("W-1", "b", F::one()),
        ("W-1", "aab", m.clone()),
        ("W-1", "aba", b.clone()),
        ("W-1", "baa", m.clone()),
        ("W2", "b", a.clone()),
        ("W2", "a", F::one()),
        ("W2", "bba", m.clone()),
        ("W2", "bab", b.clone()),
        ("W2", "abb", m.clone()),
        ("W0G1", "a", d1.clone()),
        ("W0G1", "aab", -qi.clone()),
        ("W0G1", "aba", q.clone()),
        ("G1^2", "", d1.clone() * &d1),
        ("G1^2", "ab", -(qi.clone() * &d1) * &F::from_i64(2)),
        ("G1^2", "ba", q.clone() * &d1 * &F::from_i64(2)),
        ("G1^2", "abab", qi.clone() * &qi),
        ("G1^2", "abba", -F::one()),
        ("G1^2", "baab", -F::one()),
        ("G1^2", "baba", q.clone() * &q),
        ("W0^2G1", "aa", d1.clone()),
        ("W0^2G1", "aaab", -qi.clone()),
        ("W0^2G1", "aaba", q.clone()),
        ("W0G1W1", "ab", d1.clone()),
        ("W0G1W1", "aabb", -qi.clone()),
        ("W0G1W1", "abab", q.clone()),
        ("G1W1^2", "bb", d1.clone()),
        ("G1W1^2", "ab", -(q.clone() * &p.rho) * &i3),
        ("G1W1^2", "ba", q.clone() * &p.rho * &i3),
        ("G1W1^2", "abbb", -(qi.clone() * &qi) * &p.qnum(2)? * &i3),
        ("G1W1^2", "bbba", -q.clone() * &i3),
        ("G1W1^2", "bbab", q.clone()),
        ("W0W-1", "aa", a.clone()),
        ("W0W-1", "ab", p.rho.clone() * &b * &i3),
        ("W0W-1", "ba", i3.clone()),
        ("W0W-1", "aaab", -b.clone() * &i3),
        ("W0W-1", "baaa", -ri.clone() * &i3),
        ("W2W1", "bb", a.clone()),
        ("W2W1", "ba", p.rho.clone() * &b * &i3),
        ("W2W1", "ab", i3.clone()),
        ("W2W1", "bbba", -b.clone() * &i3),
        ("W2W1", "abbb", -ri.clone() * &i3),
        ("W-1W1", "bb", F::one()),
        ("W-1W1", "ab", a.clone()),
        ("W-1W1", "aabb", m.clone()),
        ("W-1W1", "abab", b.clone()),
        ("W-1W1", "baab", m.clone()),
        ("W0W2", "aa", F::one()),
        ("W0W2", "ab", a.clone()),
        ("W0W2", "aabb", m.clone()),
        ("W0W2", "abab", b.clone()),
        ("W0W2", "abba", m.clone()),
        ("G2", "", p.delta(2)? - d1.clone() * &d1 * &p.qdiff() * &q2 * &ri * &i4),
        ("G2", "aa", p.qdiff() * &q2 * &i4),
        ("G2", "bb", p.qdiff() * &q2 * &i4),
        ("G2", "ab", -a.clone() * &qi),
        ("G2", "ba", a.clone() * &q),
        ("G2", "aabb", qi.clone() * &qi * &q2 * &q2 * &ri * &i4),
        ("G2", "bbaa", -(q.clone() * &q) * &q2 * &q2 * &ri * &i4),
        ("G2", "abab", -(p.qpow(-5) + &p.qpow(-3) + &(qi.clone() * &F::from_i64(2))) * &q2 * &ri * &i4),
        ("G2", "baba", (p.qpow(5) + &p.qpow(3) + &(q.clone() * &F::from_i64(2))) * &q2 * &ri * &i4),
        ("G2", "baab", -p.qdiff() * &q2 * &p.qnum(3)? * &ri * &i4),
        ("G2", "abba", -p.qdiff() * &q2 * &p.qnum(3)? * &ri * &i4),
    ])
}

fn spot_checks<F: Field>(r: &TransitionReport<F>, p: &Params<F>) -> Result<Vec<SpotCheck>> {
    let mut out = Vec::new();
    for (row, col, want) in golden_entries(p)? {
        let Some(i) = r.row_index(row) else { continue };
        // every other entry of the row must vanish
        let mut row_ok = true;
        let golden_cols: Vec<&str> =
            golden_entries(p)?.into_iter().filter(|g| g.0 == row).map(|g| g.1).collect();
        for (j, c) in r.cols.iter().enumerate() {
            let name: String = c.word().letters().iter().map(|&l| if l == 0 { 'a' } else { 'b' }).collect();
            let exempt = (row == "W0W-1" && name == "aaba") || (row == "W2W1" && name == "bbab");
            if !exempt && !golden_cols.contains(&name.as_str()) && !r.matrix[i][j].is_zero() {
                row_ok = false;
            }
        }
        let got = r.entry(row, col).cloned().unwrap_or_else(F::zero);
        out.push(SpotCheck {
            row: row.to_string(),
            col: if col.is_empty() { "1".into() } else { col.to_string() },
            expected: want.to_text(),
            actual: got.to_text(),
            pass: got == want && row_ok,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::complete;
    use num_rational::BigRational;

    #[test]
    fn weight_one_is_identity() {
        let pt = SpecializationPoint::default_point(2);
        let p = Params::<BigRational>::specialized(&pt).unwrap();
        let rs = complete(&p, 4).unwrap();
        let t = Tower::new(p, 2).unwrap();
        let r = transition_matrix(1, &rs, &t).unwrap();
        assert_eq!(r.rows.len(), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(r.matrix[i][j], if i == j { BigRational::from_i64(1) } else { BigRational::from_i64(0) });
            }
        }
        assert!(r.verdict.unwrap().full_rank);
    }
}
