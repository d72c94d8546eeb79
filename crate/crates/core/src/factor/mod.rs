//! Polynomial factorization: univariate over finite fields and the
//! rationals, multivariate by Hensel lifting, and absolute factorization
//! over finite fields.

mod absolute;
pub mod finite;
mod hensel;
mod zassenhaus;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::fields::{BigPrimeField, ExtField, Field, FiniteField, PrimeField, Rationals};
use crate::polys::{gcd, MultiPoly, UniPoly};
use crate::{Error, Result, Stream};

pub use absolute::{factor_absolute, frobenius_poly, is_absolutely_irreducible};

/// `unit * prod p^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorList<F: Field, P> {
    pub unit: F::Elem,
    pub factors: Vec<(P, usize)>,
}

pub type MultiFactors<F> = FactorList<F, MultiPoly<F>>;
pub type UniFactors<F> = FactorList<F, UniPoly<F>>;

impl<F: Field> FactorList<F, MultiPoly<F>> {
    /// Multiply everything back together.
    pub fn expand(&self, field: &F, nvars: usize) -> MultiPoly<F> {
        let mut acc = MultiPoly::constant(field.clone(), nvars, self.unit.clone());
        for (p, m) in &self.factors {
            acc = acc.mul(&p.pow(*m as u32));
        }
        acc
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn count(&self) -> usize {
        self.factors.iter().map(|t| t.1).sum()
    }
}

impl<F: Field> FactorList<F, UniPoly<F>> {
    pub fn expand(&self, field: &F) -> UniPoly<F> {
        let mut acc = UniPoly::constant(field.clone(), self.unit.clone());
        for (p, m) in &self.factors {
            acc = acc.mul(&p.pow(*m as u32));
        }
        acc
    }
}

/// Fields over which this module can factor.
pub trait FactorField: Field {
    /// Irreducible factors of a squarefree univariate polynomial of
    /// positive degree, in any normalization.
    fn factor_squarefree_uni(&self, f: &UniPoly<Self>, rng: &mut Stream) -> Vec<UniPoly<Self>>;

    /// Squarefree decomposition of a univariate polynomial.
    fn squarefree_uni(&self, f: &UniPoly<Self>) -> Result<Vec<(UniPoly<Self>, usize)>>;

    /// Evaluation coordinate for the `attempt`-th specialization try.
    fn specialization(&self, rng: &mut Stream, attempt: usize) -> Self::Elem;

    /// Factor a squarefree polynomial over a larger field and descend, used
    /// when the base field has too few good evaluation points.
    fn factor_via_extension(&self, f: &MultiPoly<Self>, rng: &mut Stream) -> Option<Result<Vec<MultiPoly<Self>>>> {
        let _ = (f, rng);
        None
    }

    /// Absolute irreducibility, where this field supports deciding it.
    fn absolute_irreducibility(&self, f: &MultiPoly<Self>, rng: &mut Stream) -> Option<Result<bool>> {
        let _ = (f, rng);
        None
    }
}

fn finite_specialization<F: FiniteField>(k: &F, rng: &mut Stream, attempt: usize) -> F::Elem {
    if attempt == 0 {
        k.zero()
    } else {
        k.random(rng, 0)
    }
}

fn finite_squarefree<F: FiniteField>(f: &UniPoly<F>) -> Vec<(UniPoly<F>, usize)> {
    finite::squarefree_decomposition(f)
}

impl FactorField for Rationals {
    fn factor_squarefree_uni(&self, f: &UniPoly<Self>, rng: &mut Stream) -> Vec<UniPoly<Self>> {
        let z = zassenhaus::clear_denominators(f.coeffs());
        zassenhaus::factor_squarefree_z(&z, rng)
            .into_iter()
            .map(|g| UniPoly::new(Rationals, g.into_iter().map(BigRational::from_integer).collect()))
            .collect()
    }

    fn squarefree_uni(&self, f: &UniPoly<Self>) -> Result<Vec<(UniPoly<Self>, usize)>> {
        Ok(musser(f))
    }

    fn specialization(&self, rng: &mut Stream, attempt: usize) -> BigRational {
        if attempt == 0 {
            return self.zero();
        }
        self.random(rng, 3 + 4 * attempt as u64)
    }
}

impl FactorField for PrimeField {
    fn factor_squarefree_uni(&self, f: &UniPoly<Self>, rng: &mut Stream) -> Vec<UniPoly<Self>> {
        finite::factor_squarefree(f, rng)
    }

    fn squarefree_uni(&self, f: &UniPoly<Self>) -> Result<Vec<(UniPoly<Self>, usize)>> {
        Ok(finite_squarefree(f))
    }

    fn specialization(&self, rng: &mut Stream, attempt: usize) -> u64 {
        finite_specialization(self, rng, attempt)
    }

    fn factor_via_extension(&self, f: &MultiPoly<Self>, rng: &mut Stream) -> Option<Result<Vec<MultiPoly<Self>>>> {
        Some(absolute::factor_by_extension(self, f, rng))
    }

    fn absolute_irreducibility(&self, f: &MultiPoly<Self>, rng: &mut Stream) -> Option<Result<bool>> {
        Some(absolute::is_absolutely_irreducible(f, rng))
    }
}

impl FactorField for BigPrimeField {
    fn factor_squarefree_uni(&self, f: &UniPoly<Self>, rng: &mut Stream) -> Vec<UniPoly<Self>> {
        finite::factor_squarefree(f, rng)
    }

    fn squarefree_uni(&self, f: &UniPoly<Self>) -> Result<Vec<(UniPoly<Self>, usize)>> {
        Ok(finite_squarefree(f))
    }

    fn specialization(&self, rng: &mut Stream, attempt: usize) -> Self::Elem {
        finite_specialization(self, rng, attempt)
    }

    fn factor_via_extension(&self, f: &MultiPoly<Self>, rng: &mut Stream) -> Option<Result<Vec<MultiPoly<Self>>>> {
        Some(absolute::factor_by_extension(self, f, rng))
    }

    fn absolute_irreducibility(&self, f: &MultiPoly<Self>, rng: &mut Stream) -> Option<Result<bool>> {
        Some(absolute::is_absolutely_irreducible(f, rng))
    }
}

impl<B: FiniteField> FactorField for ExtField<B> {
    fn factor_squarefree_uni(&self, f: &UniPoly<Self>, rng: &mut Stream) -> Vec<UniPoly<Self>> {
        finite::factor_squarefree(f, rng)
    }

    fn squarefree_uni(&self, f: &UniPoly<Self>) -> Result<Vec<(UniPoly<Self>, usize)>> {
        Ok(finite_squarefree(f))
    }

    fn specialization(&self, rng: &mut Stream, attempt: usize) -> Self::Elem {
        finite_specialization(self, rng, attempt)
    }
}

/// Squarefree decomposition in characteristic zero (or above the degree).
fn musser<F: Field>(f: &UniPoly<F>) -> Vec<(UniPoly<F>, usize)> {
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while w.degree() > 0 {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.degree() > 0 {
            out.push((z.normalized(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    out
}

fn uni_unit<F: Field>(f: &UniPoly<F>, factors: &[(UniPoly<F>, usize)]) -> F::Elem {
    let k = f.field();
    let mut lead = k.one();
    for (g, m) in factors {
        lead = k.mul(&lead, &k.pow_u64(g.lead(), *m as u64));
    }
    k.div(f.lead(), &lead).expect("nonzero leading coefficient")
}

fn merge_by_multiplicity<P: Clone>(items: Vec<(P, usize)>, mul: impl Fn(&P, &P) -> P) -> Vec<(P, usize)> {
    let mut out: Vec<(P, usize)> = Vec::new();
    for (p, m) in items {
        match out.iter_mut().find(|t| t.1 == m) {
            Some(t) => t.0 = mul(&t.0, &p),
            None => out.push((p, m)),
        }
    }
    out.sort_by_key(|t| t.1);
    out
}

/// Squarefree decomposition of a univariate polynomial: one entry per
/// multiplicity.
pub fn squarefree_part_uni<F: FactorField>(f: &UniPoly<F>) -> Result<UniFactors<F>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let parts: Vec<_> = f.field().squarefree_uni(f)?.into_iter().map(|(g, m)| (g.normalized(), m)).collect();
    let parts = merge_by_multiplicity(parts, |a, b| a.mul(b).normalized());
    Ok(FactorList { unit: uni_unit(f, &parts), factors: parts })
}

/// Squarefree decomposition `f = unit * prod g_m^m` with the `g_m`
/// squarefree, pairwise coprime and normalized. Multivariate input needs
/// the characteristic to exceed each partial degree.
pub fn squarefree_part<F: FactorField>(f: &MultiPoly<F>) -> Result<MultiFactors<F>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_constant() && gcd::squarefree_on_a_line(f) {
        let g = f.normalized();
        let unit = multi_unit(f, std::slice::from_ref(&(g.clone(), 1)));
        return Ok(FactorList { unit, factors: vec![(g, 1)] });
    }
    let parts = squarefree_rec(f)?;
    let parts = merge_by_multiplicity(parts, |a, b| a.mul(b).normalized());
    let unit = multi_unit(f, &parts);
    Ok(FactorList { unit, factors: parts })
}

fn multi_unit<F: Field>(f: &MultiPoly<F>, parts: &[(MultiPoly<F>, usize)]) -> F::Elem {
    let k = f.field();
    let mut lead = k.one();
    for (g, m) in parts {
        lead = k.mul(&lead, &k.pow_u64(g.lead_coeff(), *m as u64));
    }
    k.div(f.lead_coeff(), &lead).expect("nonzero leading coefficient")
}

fn squarefree_rec<F: FactorField>(f: &MultiPoly<F>) -> Result<Vec<(MultiPoly<F>, usize)>> {
    let used = f.used_vars();
    let Some(&v) = used.first() else {
        return Ok(Vec::new());
    };
    let n = f.nvars();
    if used.len() == 1 {
        let u = f.to_uni(v).unwrap();
        let parts = f.field().squarefree_uni(&u)?;
        return Ok(parts.into_iter().map(|(g, m)| (MultiPoly::from_uni(&g, n, v).normalized(), m)).collect());
    }
    if !f.field().char_exceeds(f.degree_in(v)) {
        return Err(Error::CharacteristicTooSmall {
            characteristic: f.field().characteristic().to_string(),
            degree: f.degree_in(v),
        });
    }
    let cont = gcd::content_in(f, v);
    let prim = f.exact_div(&cont)?;
    let mut out = squarefree_rec(&cont)?;
    let mut c = gcd::gcd(&prim, &prim.derivative(v));
    let mut w = prim.exact_div(&c)?;
    let mut i = 1;
    while !w.is_constant() {
        let y = gcd::gcd(&w, &c);
        let z = w.exact_div(&y)?;
        if !z.is_constant() {
            out.push((z.normalized(), i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w)?;
    }
    Ok(out)
}

/// Irreducible factorization of a univariate polynomial over its field.
pub fn factor_univariate<F: FactorField>(f: &UniPoly<F>, rng: &mut Stream) -> Result<UniFactors<F>> {
    let k = f.field().clone();
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Ok(FactorList { unit: f.lead().clone(), factors: Vec::new() });
    }
    let mut factors = Vec::new();
    for (g, m) in k.squarefree_uni(f)? {
        for h in k.factor_squarefree_uni(&g, rng) {
            factors.push((h.normalized(), m));
        }
    }
    sort_uni(&mut factors);
    Ok(FactorList { unit: uni_unit(f, &factors), factors })
}

fn sort_uni<F: Field>(v: &mut [(UniPoly<F>, usize)]) {
    v.sort_by(|a, b| {
        (a.0.degree(), a.1, a.0.to_string()).cmp(&(b.0.degree(), b.1, b.0.to_string()))
    });
}

fn sort_multi<F: Field>(v: &mut [(MultiPoly<F>, usize)]) {
    v.sort_by(|a, b| {
        (a.0.tdeg(), a.1, a.0.to_string()).cmp(&(b.0.tdeg(), b.1, b.0.to_string()))
    });
}

/// Irreducible factorization over the coefficient field.
pub fn factor_multivariate<F: FactorField>(f: &MultiPoly<F>, rng: &mut Stream) -> Result<MultiFactors<F>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(FactorList { unit: f.lead_coeff().clone(), factors: Vec::new() });
    }
    let sq = squarefree_part(f)?;
    let mut factors = Vec::new();
    for (g, m) in &sq.factors {
        for h in factor_squarefree_multi(g, rng)? {
            factors.push((h.normalized(), *m));
        }
    }
    sort_multi(&mut factors);
    let unit = multi_unit(f, &factors);
    Ok(FactorList { unit, factors })
}

/// Irreducible factors of a squarefree polynomial (unnormalized order).
pub(crate) fn factor_squarefree_multi<F: FactorField>(f: &MultiPoly<F>, rng: &mut Stream) -> Result<Vec<MultiPoly<F>>> {
    let used = f.used_vars();
    let n = f.nvars();
    match used.len() {
        0 => Ok(Vec::new()),
        1 => {
            let v = used[0];
            let u = f.to_uni(v).unwrap();
            Ok(f.field()
                .factor_squarefree_uni(&u, rng)
                .into_iter()
                .map(|g| MultiPoly::from_uni(&g, n, v).normalized())
                .collect())
        }
        _ => {
            // Split off variable-disjoint contents first: cheap and keeps
            // the lifting problems small.
            for &v in &used {
                let c = gcd::content_in(f, v);
                if !c.is_constant() {
                    let p = f.exact_div(&c)?;
                    let mut out = factor_squarefree_multi(&c, rng)?;
                    out.extend(factor_squarefree_multi(&p, rng)?);
                    return Ok(out);
                }
            }
            hensel::factor_primitive(f, &used, rng)
        }
    }
}

/// Integer coefficients of a rational polynomial after clearing
/// denominators (content removed, positive leading coefficient).
pub fn integer_coefficients(f: &MultiPoly<Rationals>) -> Vec<BigInt> {
    let g = f.normalized();
    g.terms().iter().map(|t| t.1.numer().clone()).collect()
}
