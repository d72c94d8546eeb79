//! Rational functions and their pencils `mu f1 - lambda f2`: anchored
//! members, the genericity condition on the last variable, affine
//! coordinate changes and brute-force
//! spectrum enumeration over small finite fields.

mod ratfun;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

pub use ratfun::{canonical_generator, 
    compose, compose_unreduced, homogenize, make_reduced, RationalFunctionMV, RationalFunctionUV,
};

use crate::factor::{is_absolutely_irreducible, FactorField};
use crate::fields::{Field, FiniteField};
use crate::polys::{linalg, resultant, MultiPoly};
use crate::{Error, Result, Stream};

/// `mu f1 - lambda f2`.
pub fn pencil_member<F: Field>(f: &RationalFunctionMV<F>, mu: &F::Elem, lambda: &F::Elem) -> MultiPoly<F> {
    f.num().scale(mu).sub(&f.den().scale(lambda))
}

/// `f2(a) f1 - f1(a) f2`, the member vanishing at `a`.
pub fn anchored_pencil_member<F: Field>(f: &RationalFunctionMV<F>, a: &[F::Elem]) -> Result<MultiPoly<F>> {
    let f1a = f.num().evaluate(a)?;
    let f2a = f.den().evaluate(a)?;
    let k = f.field();
    if k.is_zero(&f1a) && k.is_zero(&f2a) {
        return Err(Error::BasePointOfPencil);
    }
    Ok(pencil_member(f, &f2a, &f1a))
}

/// Genericity of `f` with `Λ` kept formal: (i) the degree of `f1 + Λ f2` is
/// reached in the last variable; (ii) `f1 + Λ f2` restricted to the last
/// axis has a nonzero discriminant-type resultant.
pub fn check_hypothesis_h<F: Field>(f: &RationalFunctionMV<F>) -> (bool, bool) {
    let n = f.nvars();
    let last = n - 1;
    let d = f.degree();
    let hi = f.num().degree_in(last).max(f.den().degree_in(last)) == d;
    // Restrict to (0, ..., 0, X_n) and embed in K[X_n, Λ].
    let k = f.field().clone();
    let restrict = |p: &MultiPoly<F>| -> MultiPoly<F> {
        let mut r = p.clone();
        for v in 0..last {
            r = r.partial_evaluate(v, &k.zero());
        }
        let mut map = vec![0; n];
        map[last] = 0;
        r.remap_vars(&map, 2)
    };
    let lam = MultiPoly::var(k.clone(), 2, 1);
    let p = restrict(f.num()).add(&restrict(f.den()).mul(&lam));
    let dp = p.derivative(0);
    let hii = p.degree_in(0) > 0 && !dp.is_zero() && !resultant(&p, &dp, 0).is_zero();
    (hi, hii)
}

/// Invertible affine substitution `X -> A X + c`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineChange<F: Field> {
    pub matrix: Vec<Vec<F::Elem>>,
    pub shift: Vec<F::Elem>,
}

impl<F: Field> AffineChange<F> {
    pub fn identity(field: &F, n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        AffineChange { matrix, shift: vec![field.zero(); n] }
    }

    /// `p(A X + c)`.
    pub fn apply_poly(&self, p: &MultiPoly<F>) -> MultiPoly<F> {
        let k = p.field().clone();
        let n = p.nvars();
        let images: Vec<MultiPoly<F>> = (0..n)
            .map(|i| {
                let mut terms = MultiPoly::constant(k.clone(), n, self.shift[i].clone());
                for j in 0..n {
                    terms = terms.add(&MultiPoly::var(k.clone(), n, j).scale(&self.matrix[i][j]));
                }
                terms
            })
            .collect();
        p.compose_all(&images)
    }

    pub fn apply(&self, f: &RationalFunctionMV<F>) -> RationalFunctionMV<F> {
        f.map_polys(|p| self.apply_poly(p)).expect("invertible change keeps the denominator nonzero")
    }

    /// The change undoing this one; `None` if the matrix is singular.
    pub fn inverse(&self, field: &F) -> Option<Self> {
        let n = self.shift.len();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let e: Vec<F::Elem> = (0..n).map(|i| if i == j { field.one() } else { field.zero() }).collect();
            cols.push(linalg::solve(field, &self.matrix, &e)?);
        }
        // A^-1 has the solutions as columns.
        let inv: Vec<Vec<F::Elem>> = (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect();
        let shift = (0..n)
            .map(|i| {
                let s = (0..n).fold(field.zero(), |acc, j| field.add(&acc, &field.mul(&inv[i][j], &self.shift[j])));
                field.neg(&s)
            })
            .collect();
        // Check invertibility: solve may return a solution for singular A
        // only when consistent, so verify A * A^-1 = I.
        for i in 0..n {
            for j in 0..n {
                let s = (0..n).fold(field.zero(), |acc, l| field.add(&acc, &field.mul(&self.matrix[i][l], &inv[l][j])));
                if s != if i == j { field.one() } else { field.zero() } {
                    return None;
                }
            }
        }
        Some(AffineChange { matrix: inv, shift })
    }
}

/// A random invertible affine change applied to `f`, with its inverse.
pub fn random_affine_change<F: Field>(
    f: &RationalFunctionMV<F>,
    rng: &mut Stream,
) -> Result<(RationalFunctionMV<F>, AffineChange<F>, AffineChange<F>)> {
    let k = f.field().clone();
    let n = f.nvars();
    if let Some(q) = k.order() {
        let need = f.degree() + 1;
        if q < BigUint::from(need) {
            return Err(Error::FieldTooSmall { needed: need.to_string(), available: q.to_string() });
        }
    }
    let bound = (4 * f.degree()).max(8) as u64;
    loop {
        let matrix: Vec<Vec<F::Elem>> = (0..n).map(|_| (0..n).map(|_| k.random(rng, bound)).collect()).collect();
        let shift: Vec<F::Elem> = (0..n).map(|_| k.random(rng, bound)).collect();
        let change = AffineChange { matrix, shift };
        if let Some(inv) = change.inverse(&k) {
            return Ok((change.apply(f), change, inv));
        }
    }
}

/// Points of the projective line, each stored as `(mu, lambda)` with
/// `lambda = 1` or as `(1, 0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectivePointSet<F: Field> {
    pub points: Vec<(F::Elem, F::Elem)>,
}

impl<F: Field> ProjectivePointSet<F> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, field: &F, mu: &F::Elem, lambda: &F::Elem) -> bool {
        let p = if field.is_zero(lambda) {
            (field.one(), field.zero())
        } else {
            (field.div(mu, lambda).unwrap(), field.one())
        };
        self.points.contains(&p)
    }

    pub fn format(&self, field: &F) -> Vec<String> {
        self.points
            .iter()
            .map(|(m, l)| format!("({}:{})", field.fmt_elem(m), field.fmt_elem(l)))
            .collect()
    }
}

/// Largest field order accepted by [`spectrum_bruteforce`].
pub const MAX_ENUMERATION: u64 = 1 << 10;

/// Every `(mu:lambda)` over the base field whose pencil member drops
/// degree or is absolutely reducible.
pub fn spectrum_bruteforce<F: FiniteField + FactorField>(
    f: &RationalFunctionMV<F>,
    rng: &mut Stream,
) -> Result<ProjectivePointSet<F>> {
    let k = f.field().clone();
    let q = k.order_big();
    if q > BigUint::from(MAX_ENUMERATION) {
        return Err(Error::FieldTooLargeForEnumeration(q.to_string()));
    }
    let q = q.to_u64().unwrap();
    let d = f.degree();
    let mut candidates = vec![(k.one(), k.zero())];
    for i in 0..q {
        candidates.push((k.element(i).unwrap(), k.one()));
    }
    let mut points = Vec::new();
    for (mu, lambda) in candidates {
        let m = pencil_member(f, &mu, &lambda);
        let bad = m.is_zero() || m.tdeg() < d || !is_absolutely_irreducible(&m, rng)?;
        if bad {
            points.push((mu, lambda));
        }
    }
    Ok(ProjectivePointSet { points })
}
