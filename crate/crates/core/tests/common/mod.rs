#![allow(dead_code)]

use num_rational::BigRational;
use qonsager::ncpoly::NcPoly;
use qonsager::scalar::{Field, Params, RatFunc, SpecializationPoint};

pub fn sym(n: usize) -> Params<RatFunc> {
    Params::symbolic(n).unwrap()
}

pub fn points(n: usize) -> Vec<(SpecializationPoint, Params<BigRational>)> {
    SpecializationPoint::standard_points(n)
        .into_iter()
        .map(|p| {
            let q = Params::specialized(&p).unwrap();
            (p, q)
        })
        .collect()
}

pub fn specialize_poly(p: &NcPoly<RatFunc>, pt: &SpecializationPoint) -> NcPoly<BigRational> {
    p.map_coeffs(|c| c.specialize(pt)).unwrap()
}
