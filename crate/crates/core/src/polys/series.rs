//! Truncated power series, compositional inversion and Padé approximants.

use super::linalg;
use super::uni::UniPoly;
use crate::fields::Field;
use crate::{Error, Result};

/// Power series modulo `s^precision`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
    precision: usize,
}

impl<F: Field> TruncSeries<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>, precision: usize) -> Self {
        coeffs.truncate(precision);
        coeffs.resize(precision, field.zero());
        TruncSeries { field, coeffs, precision }
    }

    pub fn from_poly(p: &UniPoly<F>, precision: usize) -> Self {
        Self::new(p.field().clone(), p.coeffs().to_vec(), precision)
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn to_poly(&self) -> UniPoly<F> {
        UniPoly::new(self.field.clone(), self.coeffs.clone())
    }

    fn with_precision(&self, precision: usize) -> Self {
        Self::new(self.field.clone(), self.coeffs.clone(), precision)
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.precision.min(o.precision);
        let v = (0..p).map(|i| self.field.add(&self.coeffs[i], &o.coeffs[i])).collect();
        Self::new(self.field.clone(), v, p)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.precision.min(o.precision);
        let v = (0..p).map(|i| self.field.sub(&self.coeffs[i], &o.coeffs[i])).collect();
        Self::new(self.field.clone(), v, p)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = &self.field;
        let p = self.precision.min(o.precision);
        let mut v = vec![f.zero(); p];
        for i in 0..p {
            if f.is_zero(&self.coeffs[i]) {
                continue;
            }
            for j in 0..p - i {
                let t = f.mul(&self.coeffs[i], &o.coeffs[j]);
                v[i + j] = f.add(&v[i + j], &t);
            }
        }
        Self::new(f.clone(), v, p)
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inv(&self) -> Option<Self> {
        let f = &self.field;
        let c0 = f.inv(&self.coeffs[0])?;
        let p = self.precision;
        let mut v: Vec<F::Elem> = Vec::with_capacity(p);
        v.push(c0.clone());
        for k in 1..p {
            let mut acc = f.zero();
            for j in 1..=k {
                let t = f.mul(&self.coeffs[j], &v[k - j]);
                acc = f.add(&acc, &t);
            }
            v.push(f.neg(&f.mul(&acc, &c0)));
        }
        Some(Self::new(f.clone(), v, p))
    }

    /// `p(self)` by Horner's rule.
    pub fn compose_poly(&self, p: &UniPoly<F>) -> Self {
        let f = &self.field;
        let mut acc = Self::new(f.clone(), vec![], self.precision);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            acc.coeffs[0] = f.add(&acc.coeffs[0], c);
        }
        acc
    }

    /// `(num/den)(self)`; `None` when the denominator series is not invertible.
    pub fn compose_rational(&self, num: &UniPoly<F>, den: &UniPoly<F>) -> Option<Self> {
        let n = self.compose_poly(num);
        let d = self.compose_poly(den).inv()?;
        Some(n.mul(&d))
    }
}

/// Series `H(s)` with `H(0) = t0` and `g(H(s)) = g(t0) + s` modulo
/// `s^precision`, by Newton iteration.
pub fn series_compositional_inverse<F: Field>(
    num: &UniPoly<F>,
    den: &UniPoly<F>,
    t0: &F::Elem,
    precision: usize,
) -> Result<TruncSeries<F>> {
    let f = num.field().clone();
    let d0 = den.eval(t0);
    if f.is_zero(&d0) {
        return Err(Error::SingularExpansionPoint);
    }
    // g' = (n'd - nd') / d^2
    let dnum = num.derivative().mul(den).sub(&num.mul(&den.derivative()));
    let dden = den.mul(den);
    let g0 = f.div(&num.eval(t0), &d0).unwrap();
    let gp0 = f.div(&dnum.eval(t0), &dden.eval(t0)).unwrap();
    if f.is_zero(&gp0) {
        return Err(Error::SingularExpansionPoint);
    }
    let precision = precision.max(1);
    let mut h = TruncSeries::new(f.clone(), vec![t0.clone(), f.inv(&gp0).unwrap()], precision.min(2));
    let mut k = h.precision;
    while k < precision {
        k = (2 * k).min(precision);
        h = h.with_precision(k);
        let gh = h.compose_rational(num, den).ok_or(Error::SingularExpansionPoint)?;
        let mut target = vec![g0.clone(), f.one()];
        target.truncate(k);
        let err = gh.sub(&TruncSeries::new(f.clone(), target, k));
        let deriv = h.compose_rational(&dnum, &dden).ok_or(Error::SingularExpansionPoint)?;
        let step = err.mul(&deriv.inv().ok_or(Error::SingularExpansionPoint)?);
        h = h.sub(&step);
    }
    Ok(h.with_precision(precision))
}

/// Padé approximant `p/q` with `deg p <= m`, `deg q <= n` and
/// `p - q*S = 0 mod s^(m+n+1)`. The denominator is normalized so that its
/// constant term (or else its lowest nonzero coefficient) is one.
pub fn pade_approximant<F: Field>(
    series: &TruncSeries<F>,
    m: usize,
    n: usize,
) -> Result<(UniPoly<F>, UniPoly<F>)> {
    let f = series.field().clone();
    if series.precision() < m + n + 1 {
        return Err(Error::InvalidInput("series precision below m + n + 1".into()));
    }
    let s = |i: isize| if i < 0 { f.zero() } else { series.coeff(i as usize) };
    // Unknowns q_0, ..., q_n. The basis vector of the first free column has
    // support in degrees up to that column, so it is a denominator of
    // minimal degree.
    let rows: Vec<Vec<F::Elem>> = (m + 1..=m + n)
        .map(|i| (0..=n).map(|j| s(i as isize - j as isize)).collect())
        .collect();
    let ns = linalg::nullspace(&f, &rows, n + 1);
    let qc = ns.first().ok_or(Error::NoApproximant)?.clone();
    let q = UniPoly::new(f.clone(), qc);
    if q.is_zero() {
        return Err(Error::NoApproximant);
    }
    let qs = series.mul(&TruncSeries::from_poly(&q, series.precision()));
    let p = UniPoly::new(f.clone(), qs.coeffs()[..=m].to_vec());
    let g = p.gcd(&q);
    let (mut p, mut q) = if g.degree() > 0 {
        (p.div_rem(&g).0, q.div_rem(&g).0)
    } else {
        (p, q)
    };
    let low = q.coeffs().iter().find(|c| !f.is_zero(c)).cloned().unwrap();
    let li = f.inv(&low).unwrap();
    p = p.scale(&li);
    q = q.scale(&li);
    // Re-check the congruence after reduction.
    let check = TruncSeries::from_poly(&p, m + n + 1)
        .sub(&series.with_precision(m + n + 1).mul(&TruncSeries::from_poly(&q, m + n + 1)));
    if check.coeffs().iter().any(|c| !f.is_zero(c)) {
        return Err(Error::NoApproximant);
    }
    Ok((p, q))
}
