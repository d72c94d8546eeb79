//! Univariate factorization over finite fields: squarefree decomposition,
//! distinct-degree factorization and Cantor–Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;

use crate::fields::{Field, FiniteField};
use crate::polys::UniPoly;
use crate::Stream;

/// `g` with `g^p = f` for a polynomial whose exponents are all multiples of p.
fn pth_root_poly<F: FiniteField>(f: &UniPoly<F>) -> UniPoly<F> {
    let k = f.field();
    let p = k.characteristic();
    let p: usize = p.try_into().expect("characteristic fits");
    let v = f.coeffs().iter().step_by(p).map(|c| k.pth_root(c)).collect();
    UniPoly::new(k.clone(), v)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with
/// `f = prod g^m`, the `g` squarefree, monic and pairwise coprime.
pub fn squarefree_decomposition<F: FiniteField>(f: &UniPoly<F>) -> Vec<(UniPoly<F>, usize)> {
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let f = f.monic();
    let d = f.derivative();
    if d.is_zero() {
        let p: usize = f.field().characteristic().try_into().unwrap();
        for (g, m) in squarefree_decomposition(&pth_root_poly(&f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while w.degree() > 0 {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.degree() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if c.degree() > 0 {
        let p: usize = f.field().characteristic().try_into().unwrap();
        for (g, m) in squarefree_decomposition(&pth_root_poly(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial.
pub fn distinct_degree<F: FiniteField>(f: &UniPoly<F>) -> Vec<(UniPoly<F>, usize)> {
    let k = f.field().clone();
    let q = k.order_big();
    let x = UniPoly::x(k.clone());
    let mut out = Vec::new();
    let mut rest = f.monic();
    let mut h = x.rem(&rest);
    let mut d = 0;
    while rest.degree() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&q, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.degree() > 0 {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.degree() > 0 {
        let deg = rest.degree();
        out.push((rest, deg));
    }
    out
}

fn random_poly<F: Field>(k: &F, deg: usize, rng: &mut Stream) -> UniPoly<F> {
    UniPoly::new(k.clone(), (0..deg).map(|_| k.random(rng, 0)).collect())
}

/// Split a product of distinct monic irreducibles of degree `d`.
pub fn equal_degree<F: FiniteField>(f: &UniPoly<F>, d: usize, rng: &mut Stream) -> Vec<UniPoly<F>> {
    let n = f.degree();
    if n <= d {
        return vec![f.monic()];
    }
    let k = f.field().clone();
    let q = k.order_big();
    let two = BigUint::from(2u32);
    loop {
        let a = random_poly(&k, n, rng);
        if a.degree() == 0 {
            continue;
        }
        let b = if &q % &two == BigUint::one() {
            let e = (q.pow(d as u32) - 1u32) / 2u32;
            a.pow_mod(&e, f).sub(&UniPoly::one(k.clone()))
        } else {
            // Characteristic two: absolute trace to F_2.
            let bits = (q.bits() - 1) as usize * d;
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..bits {
                t = t.mul_mod(&t, f);
                acc = acc.add(&t);
            }
            acc
        };
        let g = f.gcd(&b);
        if g.degree() > 0 && g.degree() < n {
            let h = f.div_rem(&g).0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial.
pub fn factor_squarefree<F: FiniteField>(f: &UniPoly<F>, rng: &mut Stream) -> Vec<UniPoly<F>> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f) {
        out.extend(equal_degree(&g, d, rng));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{ExtField, PrimeField};
    use rand::SeedableRng;

    #[test]
    fn t_squared_plus_one_over_f5() {
        let k = PrimeField::new(5).unwrap();
        let mut rng = Stream::seed_from_u64(0);
        let mut fs = factor_squarefree(&UniPoly::from_i64(k, &[1, 0, 1]), &mut rng);
        fs.sort_by_key(|g| g.coeffs()[0]);
        assert_eq!(fs, vec![UniPoly::from_i64(k, &[2, 1]), UniPoly::from_i64(k, &[3, 1])]);
    }

    #[test]
    fn squarefree_with_pth_powers() {
        // (x+1)^5 (x+2)^2 over F_5
        let k = PrimeField::new(5).unwrap();
        let a = UniPoly::from_i64(k, &[1, 1]);
        let b = UniPoly::from_i64(k, &[2, 1]);
        let f = a.pow(5).mul(&b.pow(2));
        let mut sq = squarefree_decomposition(&f);
        sq.sort_by_key(|t| t.1);
        assert_eq!(sq, vec![(b, 2), (a, 5)]);
    }

    #[test]
    fn factors_over_extension_and_char_two() {
        let mut rng = Stream::seed_from_u64(5);
        for (p, e) in [(2u64, 3usize), (3, 2), (7, 2)] {
            let k = ExtField::new(PrimeField::new(p).unwrap(), e).unwrap();
            // T^(q) - T splits into all linear factors.
            let q = (p as usize).pow(e as u32);
            let mut coeffs = vec![k.zero(); q + 1];
            coeffs[1] = k.neg(&k.one());
            coeffs[q] = k.one();
            let f = UniPoly::new(k.clone(), coeffs);
            let fs = factor_squarefree(&f, &mut rng);
            assert_eq!(fs.len(), q);
            assert!(fs.iter().all(|g| g.degree() == 1));
        }
    }
}
