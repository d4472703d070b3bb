mod common;

use common::*;
use num_rational::BigRational;
use qonsager::ncpoly::{Alphabet, NcPoly};
use qonsager::rewrite::{complete, load_system, qdg_relations, save_system};
use qonsager::scalar::{Field, Params, SpecializationPoint};

#[test]
fn completion_to_eight() {
    let p = sym(1);
    let rs = complete(&p, 8).unwrap();
    assert!(rs.is_complete_to(8));
    assert_eq!(rs.rules().len(), 7);
    let dims: Vec<usize> = (0..=8).map(|d| rs.graded_dim(d).unwrap()).collect();
    assert_eq!(dims, [1, 2, 4, 8, 14, 24, 40, 64, 100]);
}

#[test]
fn dims_agree_at_points() {
    for (_, p) in points(1) {
        let rs = complete(&p, 8).unwrap();
        assert_eq!(rs.rules().len(), 7);
        assert_eq!(rs.graded_dim(8).unwrap(), 100);
    }
}

#[test]
fn relations_reduce_to_zero_in_context() {
    let p = sym(1);
    let rs = complete(&p, 8).unwrap();
    let al = Alphabet::core();
    let (r1, r2) = qdg_relations(&p);
    for (u, v) in [("", ""), ("a", "b"), ("ba", ""), ("", "ab"), ("b", "ba")] {
        for r in [&r1, &r2] {
            let x = NcPoly::monomial(&al, al.parse_word(u).unwrap(), Field::from_i64(1));
            let y = NcPoly::monomial(&al, al.parse_word(v).unwrap(), Field::from_i64(1));
            let e = x.multiply(r).unwrap().multiply(&y).unwrap();
            assert!(rs.normal_form(&e).unwrap().is_zero(), "{} r {}", u, v);
        }
    }
}

#[test]
fn cache_round_trip_and_rejection() {
    let pt = SpecializationPoint::default_point(1);
    let p = Params::<BigRational>::specialized(&pt).unwrap();
    let rs = complete(&p, 6).unwrap();
    let text = save_system(&rs, &p);
    let back = load_system(&text, &p, 6).unwrap();
    assert_eq!(back.rules().len(), rs.rules().len());
    assert_eq!(back.graded_dim(6).unwrap(), 40);
    assert!(load_system(&text, &p, 7).is_err());
    let other = SpecializationPoint::standard_points(1)[1].clone();
    let p2 = Params::<BigRational>::specialized(&other).unwrap();
    assert!(load_system(&text, &p2, 6).is_err());
    assert!(load_system::<qonsager::scalar::RatFunc>(&text, &sym(1), 6).is_err());
}

#[test]
fn degree_bound_is_enforced() {
    let p = sym(1);
    let rs = complete(&p, 4).unwrap();
    let al = Alphabet::core();
    let w = NcPoly::monomial(&al, al.parse_word("bbbaa").unwrap(), p.q.clone());
    assert!(matches!(rs.normal_form(&w), Err(qonsager::Error::DegreeBound { .. })));
}
