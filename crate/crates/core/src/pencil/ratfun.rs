//! Reduced multivariate and univariate rational functions.

use std::fmt;

use crate::fields::Field;
use crate::polys::{gcd, MultiPoly, UniPoly};
use crate::{Error, Result};

/// `num / den` with coprime parts and a canonical denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunctionMV<F: Field> {
    num: MultiPoly<F>,
    den: MultiPoly<F>,
}

/// Cancel the gcd and normalize the denominator.
pub fn make_reduced<F: Field>(num: MultiPoly<F>, den: MultiPoly<F>) -> Result<RationalFunctionMV<F>> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if num.is_zero() {
        let one = MultiPoly::one(den.field().clone(), den.nvars());
        return Ok(RationalFunctionMV { num, den: one });
    }
    let g = gcd(&num, &den);
    let (num, den) = if g.is_constant() {
        (num, den)
    } else {
        (num.exact_div(&g)?, den.exact_div(&g)?)
    };
    // Joint normalization: over the rationals both parts become coprime
    // integer polynomials with a positive leading denominator coefficient;
    // over finite fields the denominator becomes monic.
    let k = den.field().clone();
    let c = k.normalizer(den.lead_coeff(), den.terms().iter().chain(num.terms()).map(|t| &t.1));
    Ok(RationalFunctionMV { num: num.scale(&c), den: den.scale(&c) })
}

/// The Möbius-equivalent generator `a / b` where `(a, b)` is the row reduced
/// basis of the span of numerator and denominator, monomials taken in
/// decreasing order.
pub fn canonical_generator<F: Field>(h: &RationalFunctionMV<F>) -> RationalFunctionMV<F> {
    if h.is_constant() {
        return h.clone();
    }
    let k = h.field().clone();
    let mut monos: Vec<_> = h.num.terms().iter().chain(h.den.terms()).map(|t| t.0.clone()).collect();
    monos.sort_unstable_by(|a, b| b.cmp(a));
    monos.dedup();
    let (mut a, mut b) = (h.num.clone(), h.den.clone());
    let lead = |p: &MultiPoly<F>| monos.iter().find(|m| !k.is_zero(&p.coeff(m))).cloned();
    let (la, lb) = (lead(&a), lead(&b));
    if lb > la {
        std::mem::swap(&mut a, &mut b);
    }
    let m1 = lead(&a).expect("nonzero numerator");
    a = a.scale(&k.inv(&a.coeff(&m1)).unwrap());
    b = b.sub(&a.scale(&b.coeff(&m1)));
    let m2 = lead(&b).expect("independent parts");
    b = b.scale(&k.inv(&b.coeff(&m2)).unwrap());
    a = a.sub(&b.scale(&a.coeff(&m2)));
    make_reduced(a, b).expect("independent parts")
}

impl<F: Field> RationalFunctionMV<F> {
    pub fn new(num: MultiPoly<F>, den: MultiPoly<F>) -> Result<Self> {
        make_reduced(num, den)
    }

    pub fn from_poly(p: MultiPoly<F>) -> Self {
        let one = MultiPoly::one(p.field().clone(), p.nvars());
        RationalFunctionMV { num: p, den: one }
    }

    pub fn num(&self) -> &MultiPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly<F> {
        &self.den
    }

    pub fn field(&self) -> &F {
        self.num.field()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num.tdeg().max(self.den.tdeg())
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Value at a point, `None` where the denominator vanishes.
    pub fn evaluate(&self, point: &[F::Elem]) -> Result<Option<F::Elem>> {
        let d = self.den.evaluate(point)?;
        let n = self.num.evaluate(point)?;
        Ok(self.field().div(&n, &d))
    }

    /// Apply the same polynomial map to numerator and denominator.
    pub fn map_polys(&self, f: impl Fn(&MultiPoly<F>) -> MultiPoly<F>) -> Result<Self> {
        make_reduced(f(&self.num), f(&self.den))
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let n = self.num.fmt_with(names);
        if self.den.is_one() {
            return n;
        }
        format!("({})/({})", n, self.den.fmt_with(names))
    }
}

impl<F: Field> fmt::Display for RationalFunctionMV<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&MultiPoly::<F>::default_names(self.nvars())))
    }
}

/// Univariate `num / den`, reduced with a canonical denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunctionUV<F: Field> {
    num: UniPoly<F>,
    den: UniPoly<F>,
}

impl<F: Field> RationalFunctionUV<F> {
    pub fn new(num: UniPoly<F>, den: UniPoly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let k = den.field().clone();
        if num.is_zero() {
            return Ok(RationalFunctionUV { num, den: UniPoly::one(k) });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() > 0 {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        } else {
            (num, den)
        };
        let c = k.normalizer(den.lead(), den.coeffs().iter().chain(num.coeffs()));
        Ok(RationalFunctionUV { num: num.scale(&c), den: den.scale(&c) })
    }

    /// The identity `T`.
    pub fn identity(field: F) -> Self {
        RationalFunctionUV { num: UniPoly::x(field.clone()), den: UniPoly::one(field) }
    }

    pub fn num(&self) -> &UniPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<F> {
        &self.den
    }

    pub fn field(&self) -> &F {
        self.num.field()
    }

    pub fn degree(&self) -> usize {
        self.num.degree().max(self.den.degree())
    }

    pub fn eval(&self, x: &F::Elem) -> Option<F::Elem> {
        self.field().div(&self.num.eval(x), &self.den.eval(x))
    }

    /// `self ∘ other`.
    pub fn compose_uv(&self, other: &Self) -> Self {
        let k = self.degree();
        let (a, b) = (&other.num, &other.den);
        let hom = |p: &UniPoly<F>| {
            let mut acc = UniPoly::zero(self.field().clone());
            for (i, c) in p.coeffs().iter().enumerate() {
                acc = acc.add(&a.pow(i as u32).mul(&b.pow((k - i) as u32)).scale(c));
            }
            acc
        };
        Self::new(hom(&self.num), hom(&self.den)).expect("composition of reduced functions")
    }

    pub fn to_string_var(&self, var: &str) -> String {
        let n = self.num.to_string_var(var);
        if self.den.is_one() {
            return n;
        }
        format!("({})/({})", n, self.den.to_string_var(var))
    }
}

impl<F: Field> fmt::Display for RationalFunctionUV<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("T"))
    }
}

/// `sum c_i p^i q^(k-i)` for `c` the coefficients of a univariate polynomial.
pub fn homogenize<F: Field>(c: &UniPoly<F>, p: &MultiPoly<F>, q: &MultiPoly<F>, k: usize) -> MultiPoly<F> {
    let field = p.field().clone();
    let n = p.nvars();
    let mut ppow = vec![MultiPoly::one(field.clone(), n)];
    let mut qpow = vec![MultiPoly::one(field.clone(), n)];
    for i in 1..=k {
        ppow.push(ppow[i - 1].mul(p));
        qpow.push(qpow[i - 1].mul(q));
    }
    let mut acc = MultiPoly::zero(field, n);
    for (i, x) in c.coeffs().iter().enumerate() {
        if i > k || c.field().is_zero(x) {
            continue;
        }
        acc = acc.add(&ppow[i].mul(&qpow[k - i]).scale(x));
    }
    acc
}

/// `u ∘ h`, reduced.
pub fn compose<F: Field>(u: &RationalFunctionUV<F>, h: &RationalFunctionMV<F>) -> RationalFunctionMV<F> {
    let (num, den) = compose_unreduced(u, h);
    make_reduced(num, den).expect("composition has nonzero denominator")
}

/// Numerator and denominator of `u ∘ h` before cancellation:
/// `u1(h1/h2) h2^deg u` and `u2(h1/h2) h2^deg u`.
pub fn compose_unreduced<F: Field>(u: &RationalFunctionUV<F>, h: &RationalFunctionMV<F>) -> (MultiPoly<F>, MultiPoly<F>) {
    let k = u.degree();
    (homogenize(u.num(), h.num(), h.den(), k), homogenize(u.den(), h.num(), h.den(), k))
}
