mod common;

use common::*;
use qonsager::reference::printed_deltas;
use qonsager::series::{delta_mode_oracle, delta_mode_oracle_at, mode_omega, mode_relations_normal_form, ExpansionPoint, ModeAlphabet};
use qonsager::tower::{coeff_c, delta_abstract, delta_abstract_with, Pairing};

#[test]
fn closed_form_matches_series() {
    let p = sym(6);
    let m = ModeAlphabet::new(5).unwrap();
    for k in 0..=4 {
        assert_eq!(delta_abstract(&p, &m, k).unwrap(), delta_mode_oracle(&p, &m, k).unwrap(), "k = {}", k);
    }
}

#[test]
fn closed_form_matches_series_at_points() {
    let m = ModeAlphabet::new(5).unwrap();
    let p = sym(6);
    for (pt, sp) in points(6) {
        for k in 0..=4 {
            let d = delta_abstract(&sp, &m, k).unwrap();
            assert_eq!(d, delta_mode_oracle(&sp, &m, k).unwrap());
            assert_eq!(specialize_poly(&delta_abstract(&p, &m, k).unwrap(), &pt), d);
        }
    }
}

#[test]
fn normalizing_scalar() {
    let p = sym(6);
    let m = ModeAlphabet::new(5).unwrap();
    for k in 0..=4 {
        let (_, lead) = delta_mode_oracle_at(&p, &m, k, ExpansionPoint::Infinity).unwrap();
        assert_eq!(lead, coeff_c(&p, k));
    }
}

#[test]
fn second_expansion_point_modulo_relations() {
    let p = sym(6);
    let m = ModeAlphabet::new(5).unwrap();
    for k in 0..=3 {
        let (z, _) = delta_mode_oracle_at(&p, &m, k, ExpansionPoint::Zero).unwrap();
        let d = &delta_abstract(&p, &m, k).unwrap() - &z;
        assert!(mode_relations_normal_form(&m, &d).unwrap().is_zero(), "k = {}", k);
    }
}

#[test]
fn pairings_differ_only_modulo_relations() {
    let p = sym(6);
    let m = ModeAlphabet::new(5).unwrap();
    for k in 0..=1 {
        assert_eq!(delta_abstract_with(&p, &m, k, Pairing::Swapped).unwrap(), delta_abstract(&p, &m, k).unwrap());
    }
    for k in 2..=4 {
        let d = &delta_abstract_with(&p, &m, k, Pairing::Swapped).unwrap() - &delta_abstract(&p, &m, k).unwrap();
        assert!(!d.is_zero());
        assert!(mode_relations_normal_form(&m, &d).unwrap().is_zero());
    }
}

#[test]
fn low_order_displays() {
    let p = sym(4);
    let m = ModeAlphabet::new(3).unwrap();
    let shown = printed_deltas(&p, &m).unwrap();
    for k in 0..2 {
        assert_eq!(shown[k], delta_abstract(&p, &m, k).unwrap());
    }
    let d = &shown[2] - &delta_abstract(&p, &m, 2).unwrap();
    assert_eq!(d.len(), 8);
    assert!(mode_relations_normal_form(&m, &d).unwrap().is_zero());
}

#[test]
fn omega_fixed_modulo_relations() {
    let p = sym(5);
    let m = ModeAlphabet::new(4).unwrap();
    for k in 0..=3 {
        let d = delta_abstract(&p, &m, k).unwrap();
        let o = mode_omega(&m, &d).unwrap();
        assert!(mode_relations_normal_form(&m, &(&o - &d)).unwrap().is_zero(), "k = {}", k);
    }
}
