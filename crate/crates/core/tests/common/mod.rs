#![allow(dead_code)]

use rand::Rng;
use ratdecomp::fields::Field;
use ratdecomp::pencil::{make_reduced, RationalFunctionMV, RationalFunctionUV};
use ratdecomp::polys::{Monomial, MultiPoly, UniPoly};
use ratdecomp::Stream;

/// Coefficients are drawn from `[-COEFF, COEFF]` over the rationals.
pub const COEFF: u64 = 5;

pub fn monomials(n: usize, deg: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for e in 0..=deg {
        for mut rest in monomials(n - 1, deg - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// Random polynomial of total degree exactly `deg` with about half of the
/// monomials present.
pub fn rand_poly<F: Field>(k: &F, n: usize, deg: u32, rng: &mut Stream) -> MultiPoly<F> {
    loop {
        let mut terms: Vec<(Monomial, F::Elem)> = Vec::new();
        for e in monomials(n, deg) {
            if rng.gen_bool(0.5) {
                terms.push((Monomial::new(e), k.random(rng, COEFF)));
            }
        }
        let p = MultiPoly::from_terms(k.clone(), n, terms);
        if p.tdeg() == deg as usize && !p.is_zero() {
            return p;
        }
    }
}

/// Random reduced `h` of degree exactly `deg` depending on every variable.
pub fn rand_h<F: Field>(k: &F, n: usize, deg: u32, rng: &mut Stream) -> RationalFunctionMV<F> {
    loop {
        let num = rand_poly(k, n, deg, rng);
        let dd = rng.gen_range(1..=deg);
        let den = rand_poly(k, n, dd, rng);
        let Ok(h) = make_reduced(num, den) else { continue };
        let used = h.num().mul(h.den()).used_vars().len();
        if h.degree() == deg as usize && used == n {
            return h;
        }
    }
}

/// Random reduced univariate `u` of degree exactly `deg`.
pub fn rand_u<F: Field>(k: &F, deg: usize, rng: &mut Stream) -> RationalFunctionUV<F> {
    loop {
        let num = UniPoly::new(k.clone(), (0..=deg).map(|_| k.random(rng, COEFF)).collect());
        let dd = rng.gen_range(0..=deg);
        let den = UniPoly::new(k.clone(), (0..=dd).map(|_| k.random(rng, COEFF)).collect());
        if den.is_zero() {
            continue;
        }
        let Ok(u) = RationalFunctionUV::new(num, den) else { continue };
        if u.degree() == deg {
            return u;
        }
    }
}

pub fn xy_poly<F: Field>(k: &F, terms: &[(i64, &[u32])]) -> MultiPoly<F> {
    MultiPoly::from_int_terms(k.clone(), 2, terms)
}

/// `X^3 + Y^3 + 1` and `3XY`.
pub fn example_parts<F: Field>(k: &F) -> (MultiPoly<F>, MultiPoly<F>) {
    (xy_poly(k, &[(1, &[3, 0]), (1, &[0, 3]), (1, &[0, 0])]), xy_poly(k, &[(3, &[1, 1])]))
}

/// `(X^3 + Y^3 + 1) / (3XY)`.
pub fn cubic_ratio<F: Field>(k: &F) -> RationalFunctionMV<F> {
    let (h1, h2) = example_parts(k);
    make_reduced(h1, h2).unwrap()
}

/// `((X^3 + Y^3 + 1)^2 + 9X^2Y^2) / (3XY (X^3 + Y^3 + 1))`.
pub fn sextic<F: Field>(k: &F) -> RationalFunctionMV<F> {
    let (h1, h2) = example_parts(k);
    make_reduced(h1.mul(&h1).add(&h2.mul(&h2)), h1.mul(&h2)).unwrap()
}

/// `(T^2 + 1) / T`.
pub fn example_u<F: Field>(k: &F) -> RationalFunctionUV<F> {
    RationalFunctionUV::new(UniPoly::from_i64(k.clone(), &[1, 0, 1]), UniPoly::x(k.clone())).unwrap()
}

pub fn ints<F: Field>(k: &F, v: &[i64]) -> Vec<F::Elem> {
    v.iter().map(|&x| k.from_i64(x)).collect()
}
