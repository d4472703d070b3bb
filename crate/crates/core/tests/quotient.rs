mod common;

use common::*;
use num_rational::BigRational;
use qonsager::ncpoly::NcPoly;
use qonsager::rewrite::complete;
use qonsager::scalar::{Field, Params};
use qonsager::series::ModeLetter::*;
use qonsager::tower::Tower;

fn two_delta<F: Field>(t: &Tower<F>, k: usize) -> NcPoly<F> {
    NcPoly::scalar(t.core(), t.params().delta(k + 1).unwrap() * &F::from_i64(2))
}

#[test]
fn first_two_central_elements_are_scalars_identically() {
    let t = Tower::new(sym(3), 2).unwrap();
    for k in 0..=1 {
        let d = t.substitute_modes(&t.delta_abstract(k).unwrap()).unwrap();
        assert_eq!(d, two_delta(&t, k));
    }
}

fn reduces_to_scalar<F: Field>(p: Params<F>, top: usize) {
    let rs = complete(&p, 8).unwrap();
    let t = Tower::new(p, top).unwrap();
    for k in 2..=top {
        let d = t.substitute_modes(&t.delta_abstract(k).unwrap()).unwrap();
        let free = &d - &two_delta(&t, k);
        assert!(!free.is_zero());
        assert!(rs.normal_form(&free).unwrap().is_zero(), "k = {}", k);
    }
}

#[test]
fn higher_central_elements_reduce_symbolic() {
    reduces_to_scalar(sym(5), 3);
}

#[test]
fn higher_central_elements_reduce_at_points() {
    for (_, p) in points(5) {
        reduces_to_scalar::<BigRational>(p, 3);
    }
}

#[test]
fn w_family_commutes_with_generators() {
    let p = sym(5);
    let rs = complete(&p, 8).unwrap();
    let t = Tower::new(p, 3).unwrap();
    let a = t.gen(Wm(0)).unwrap();
    let b = t.gen(Wp(0)).unwrap();
    for k in 1..=3 {
        let x = a.commutator(&t.gen(Wm(k)).unwrap()).unwrap();
        let y = b.commutator(&t.gen(Wp(k)).unwrap()).unwrap();
        assert!(rs.normal_form(&x).unwrap().is_zero(), "[a, W-{}]", k);
        assert!(rs.normal_form(&y).unwrap().is_zero(), "[b, W{}]", k + 1);
        if k >= 2 {
            assert!(!x.is_zero());
        }
    }
}

#[test]
fn bridge_identity() {
    let p = sym(3);
    let rs = complete(&p, 6).unwrap();
    let t = Tower::new(p, 2).unwrap();
    let a = t.gen(Wm(0)).unwrap();
    let b = t.gen(Wp(0)).unwrap();
    let w2 = t.gen(Wp(1)).unwrap();
    let wm1 = t.gen(Wm(1)).unwrap();
    let d = &a.commutator(&w2).unwrap() - &wm1.commutator(&b).unwrap();
    assert!(d.is_zero());
    let d3 = &a.commutator(&t.gen(Wp(2)).unwrap()).unwrap() - &t.gen(Wm(2)).unwrap().commutator(&b).unwrap();
    assert!(!d3.is_zero());
    assert!(rs.normal_form(&d3).unwrap().is_zero());
}
