mod common;

use common::*;
use num_rational::BigRational;
use num_traits::Zero;
use qonsager::rewrite::complete;
use qonsager::scalar::{Field, Params, RatFunc, SpecializationPoint};
use qonsager::tower::Tower;
use qonsager::transition::{check_invertible, transition_matrix, TransitionReport};

const DET4: &str = "518798828125/9516786152832";
const DET5: &str = "-3490896460789372213184833526611328125/77854214944234160859773606561054649023987712";

fn build<F: Field>(p: Params<F>, w: usize) -> TransitionReport<F> {
    let rs = complete(&p, w.max(4)).unwrap();
    let t = Tower::new(p, 3).unwrap();
    transition_matrix(w, &rs, &t).unwrap()
}

#[test]
fn weight_four_symbolic() {
    let r = build(sym(3), 4);
    assert_eq!((r.rows.len(), r.cols.len()), (29, 29));
    assert!(r.structural.is_empty());
    let v = r.verdict.clone().unwrap();
    assert!(v.full_rank);
    assert_eq!(v.determinant.as_deref(), Some(DET4));
    assert_eq!(r.spot_checks.len(), 66);
    for s in &r.spot_checks {
        assert!(s.pass, "{} / {}: expected {} got {}", s.row, s.col, s.expected, s.actual);
    }
    // the one garbled reference cell
    let x = r.entry("W0W-1", "aaba").unwrap();
    assert_eq!(*x, RatFunc::parse("(q^2-1+q^-2)/(r)").unwrap());
    assert_eq!(*r.entry("W2W1", "bbab").unwrap(), *x);
}

#[test]
fn block_triangular_and_top_block_delta_free() {
    let r = build(sym(3), 4);
    for (i, row) in r.rows.iter().enumerate() {
        for (j, col) in r.cols.iter().enumerate() {
            let x = &r.matrix[i][j];
            if col.length() > row.weight() {
                assert!(x.is_zero());
            }
            if col.length() == row.weight() {
                assert!(!x.to_text().contains('d'), "{} / {}", row, col);
            }
        }
    }
}

#[test]
fn higher_weights_specialized() {
    for (i, (_, p)) in points(4).into_iter().enumerate() {
        for (w, n) in [(5, 53), (6, 93)] {
            let r = build(p.clone(), w);
            assert_eq!(r.rows.len(), n);
            let v = check_invertible(&r, &p).unwrap();
            assert!(v.full_rank && v.rank == n);
            if i == 0 && w == 5 {
                assert_eq!(v.determinant.as_deref(), Some(DET5));
            }
        }
    }
}

#[test]
fn weight_five_symbolic_matches_specialized() {
    let pt = SpecializationPoint::default_point(4);
    let r = build(sym(4), 5);
    let s = build(Params::<BigRational>::specialized(&pt).unwrap(), 5);
    assert_eq!(r.verdict.as_ref().unwrap().determinant.as_deref(), Some(DET5));
    for (a, b) in r.matrix.iter().flatten().zip(s.matrix.iter().flatten()) {
        assert_eq!(a.specialize(&pt).unwrap(), *b);
    }
}

#[test]
fn matrix_json_omits_zeros() {
    let pt = SpecializationPoint::default_point(3);
    let r = build(Params::<BigRational>::specialized(&pt).unwrap(), 3);
    let j = r.to_json();
    let nz = r.matrix.iter().flatten().filter(|x| !x.is_zero()).count();
    assert_eq!(j["entries"].as_array().unwrap().len(), nz);
    assert_eq!(j["rows"].as_array().unwrap().len(), 15);
    assert_eq!(j["cols"][0], "1");
}
