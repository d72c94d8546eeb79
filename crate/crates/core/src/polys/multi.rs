use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::monomial::{Exps, Monomial};
use super::uni::UniPoly;
use crate::fields::Field;
use crate::{Error, Result};

/// Sparse multivariate polynomial. Terms are kept sorted in descending
/// graded-lex order with no zero coefficients, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<F: Field> {
    field: F,
    nvars: usize,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(field: F, nvars: usize) -> Self {
        MultiPoly { field, nvars, terms: Vec::new() }
    }

    pub fn constant(field: F, nvars: usize, c: F::Elem) -> Self {
        if field.is_zero(&c) {
            return Self::zero(field, nvars);
        }
        MultiPoly { field, nvars, terms: vec![(Monomial::one(nvars), c)] }
    }

    pub fn one(field: F, nvars: usize) -> Self {
        let c = field.one();
        Self::constant(field, nvars, c)
    }

    pub fn from_int(field: F, nvars: usize, c: i64) -> Self {
        let c = field.from_i64(c);
        Self::constant(field, nvars, c)
    }

    /// The variable `X_{i+1}` (zero-based index `i`).
    pub fn var(field: F, nvars: usize, i: usize) -> Self {
        let c = field.one();
        MultiPoly { field, nvars, terms: vec![(Monomial::var(nvars, i, 1), c)] }
    }

    pub fn monomial(field: F, m: Monomial, c: F::Elem) -> Self {
        let nvars = m.nvars();
        if field.is_zero(&c) {
            return Self::zero(field, nvars);
        }
        MultiPoly { field, nvars, terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(field: F, nvars: usize, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let mut map: HashMap<Monomial, F::Elem> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match map.get_mut(&m) {
                Some(acc) => *acc = field.add(acc, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        Self::from_map(field, nvars, map)
    }

    /// Integer coefficients with exponent vectors, a convenience for tests and fixtures.
    pub fn from_int_terms(field: F, nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        let t = terms
            .iter()
            .map(|(c, e)| (Monomial::from_slice(e), field.from_i64(*c)))
            .collect::<Vec<_>>();
        Self::from_terms(field, nvars, t)
    }

    fn from_map(field: F, nvars: usize, map: HashMap<Monomial, F::Elem>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { field, nvars, terms }
    }

    /// Terms already sorted descending, distinct, nonzero.
    pub(crate) fn from_sorted(field: F, nvars: usize, terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        MultiPoly { field, nvars, terms }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.field.is_one(&self.terms[0].1)
    }

    /// The constant term's value when the polynomial is constant.
    pub fn constant_value(&self) -> Option<F::Elem> {
        if self.is_zero() {
            Some(self.field.zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        match self.terms.binary_search_by(|t| m.cmp(&t.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.first().map(|t| t.0.degree() as usize)
    }

    /// Total degree with the zero polynomial mapped to 0.
    pub fn tdeg(&self) -> usize {
        self.total_degree().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> usize {
        self.terms.iter().map(|t| t.0.get(v)).max().unwrap_or(0) as usize
    }

    /// Variables that actually occur.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.terms.iter().any(|t| t.0.get(v) > 0)).collect()
    }

    pub fn lead_monomial(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lead_coeff(&self) -> &F::Elem {
        &self.terms[0].1
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect();
        MultiPoly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.field.clone(), self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), self.field.mul(a, c))).collect();
        MultiPoly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: &F::Elem| if negate { f.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { f.sub(&a[i].1, &b[j].1) } else { f.add(&a[i].1, &b[j].1) };
                    if !f.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        MultiPoly { field: f.clone(), nvars: self.nvars, terms: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f.clone(), self.nvars);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut map: HashMap<Monomial, F::Elem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = f.mul(ca, cb);
                match map.get_mut(&m) {
                    Some(acc) => *acc = f.add(acc, &c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(f.clone(), self.nvars, map)
    }

    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f.clone(), self.nvars);
        }
        let terms = self.terms.iter().map(|(a, x)| (a.mul(m), f.mul(x, c))).collect();
        MultiPoly { field: f.clone(), nvars: self.nvars, terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.field.clone(), self.nvars);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Division with remainder in graded-lex order: `self = q*d + r` where no
    /// term of `r` is divisible by the leading monomial of `d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let f = &self.field;
        let (lm, lc) = (&d.terms[0].0, &d.terms[0].1);
        let lci = f.inv(lc).expect("nonzero lead");
        let mut rem: BTreeMap<Monomial, F::Elem> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        let mut rest = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            match m.div(lm) {
                Some(t) => {
                    let qc = f.mul(&c, &lci);
                    for (dm, dc) in &d.terms[1..] {
                        let mm = t.mul(dm);
                        let v = f.mul(&qc, dc);
                        match rem.get_mut(&mm) {
                            Some(acc) => {
                                *acc = f.sub(acc, &v);
                                if f.is_zero(acc) {
                                    rem.remove(&mm);
                                }
                            }
                            None => {
                                rem.insert(mm, f.neg(&v));
                            }
                        }
                    }
                    quot.push((t, qc));
                }
                None => rest.push((m, c)),
            }
        }
        (
            MultiPoly::from_sorted(f.clone(), self.nvars, quot),
            MultiPoly::from_sorted(f.clone(), self.nvars, rest),
        )
    }

    /// Exact quotient; `NotDivisible` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        // Quick rejections on degrees.
        if d.tdeg() > self.tdeg() || (0..self.nvars).any(|v| d.degree_in(v) > self.degree_in(v)) {
            return Err(Error::NotDivisible);
        }
        let f = &self.field;
        let (lm, lc) = (&d.terms[0].0, &d.terms[0].1);
        let lci = f.inv(lc).expect("nonzero lead");
        let mut rem: BTreeMap<Monomial, F::Elem> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let t = m.div(lm).ok_or(Error::NotDivisible)?;
            let qc = f.mul(&c, &lci);
            for (dm, dc) in &d.terms[1..] {
                let mm = t.mul(dm);
                let v = f.mul(&qc, dc);
                match rem.get_mut(&mm) {
                    Some(acc) => {
                        *acc = f.sub(acc, &v);
                        if f.is_zero(acc) {
                            rem.remove(&mm);
                        }
                    }
                    None => {
                        rem.insert(mm, f.neg(&v));
                    }
                }
            }
            quot.push((t, qc));
        }
        Ok(MultiPoly::from_sorted(f.clone(), self.nvars, quot))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_ok()
    }

    /// Canonical form: monic over finite fields, primitive integer with
    /// positive leading coefficient over the rationals.
    pub fn normalized(&self) -> Self {
        self.normalize_with_unit().1
    }

    /// `(u, g)` with `self = u * g` and `g` canonical.
    pub fn normalize_with_unit(&self) -> (F::Elem, Self) {
        let f = &self.field;
        if self.is_zero() {
            return (f.one(), self.clone());
        }
        let c = f.normalizer(&self.terms[0].1, self.terms.iter().map(|t| &t.1));
        let unit = f.inv(&c).expect("nonzero normalizer");
        (unit, self.scale(&c))
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let li = self.field.inv(&self.terms[0].1).unwrap();
        self.scale(&li)
    }

    /// `Some(c)` with `other = c * self`.
    pub fn proportional(&self, other: &Self) -> Option<F::Elem> {
        if self.is_zero() || other.is_zero() || self.terms.len() != other.terms.len() {
            return None;
        }
        let f = &self.field;
        let c = f.div(&other.terms[0].1, &self.terms[0].1)?;
        for (a, b) in self.terms.iter().zip(&other.terms) {
            if a.0 != b.0 || f.mul(&a.1, &c) != b.1 {
                return None;
            }
        }
        Some(c)
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.nvars {
            return Err(Error::ContextMismatch);
        }
        let f = &self.field;
        // Cache powers per variable.
        let mut powers: Vec<Vec<F::Elem>> = (0..self.nvars)
            .map(|v| {
                let d = self.degree_in(v);
                let mut p = Vec::with_capacity(d + 1);
                p.push(f.one());
                for k in 1..=d {
                    let n = f.mul(&p[k - 1], &point[v]);
                    p.push(n);
                }
                p
            })
            .collect();
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = f.mul(&t, &powers[v][e as usize]);
                }
            }
            acc = f.add(&acc, &t);
        }
        powers.clear();
        Ok(acc)
    }

    /// Substitute `X_v = value`, keeping the variable count.
    pub fn partial_evaluate(&self, v: usize, value: &F::Elem) -> Self {
        let f = &self.field;
        let d = self.degree_in(v);
        let mut pw = vec![f.one()];
        for k in 1..=d {
            let n = f.mul(&pw[k - 1], value);
            pw.push(n);
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let e = m.get(v) as usize;
            (m.with(v, 0), f.mul(c, &pw[e]))
        });
        Self::from_terms(f.clone(), self.nvars, terms.collect::<Vec<_>>())
    }

    /// Substitute `X_v = g`.
    pub fn substitute(&self, v: usize, g: &Self) -> Self {
        let coeffs = self.coeffs_in(v);
        let mut acc = Self::zero(self.field.clone(), self.nvars);
        for c in coeffs.iter().rev() {
            acc = acc.mul(g).add(c);
        }
        acc
    }

    /// Simultaneous substitution `X_i = images[i]`; the result lives in the
    /// images' ring.
    pub fn compose_all(&self, images: &[Self]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let f = &self.field;
        let target = images.first().map(|g| g.nvars).unwrap_or(0);
        let mut cache: Vec<Vec<Self>> = images.iter().map(|g| vec![Self::one(f.clone(), g.nvars), g.clone()]).collect();
        let mut acc = Self::zero(f.clone(), target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(f.clone(), target, c.clone());
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[v].len() <= e as usize {
                    let next = cache[v].last().unwrap().mul(&images[v]);
                    cache[v].push(next);
                }
                t = t.mul(&cache[v][e as usize]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn derivative(&self, v: usize) -> Self {
        let f = &self.field;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.get(v) > 0)
            .map(|(m, c)| {
                let e = m.get(v);
                (m.with(v, e - 1), f.mul(c, &f.from_i64(e as i64)))
            })
            .collect::<Vec<_>>();
        Self::from_terms(f.clone(), self.nvars, terms)
    }

    /// Coefficients with respect to `X_v`: `self = sum_k c_k X_v^k` where the
    /// `c_k` do not involve `X_v`.
    pub fn coeffs_in(&self, v: usize) -> Vec<Self> {
        let d = self.degree_in(v);
        let mut buckets: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.get(v) as usize;
            buckets[e].push((m.with(v, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|b| {
                let mut t = b;
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                MultiPoly::from_sorted(self.field.clone(), self.nvars, t)
            })
            .collect()
    }

    /// Inverse of [`MultiPoly::coeffs_in`].
    pub fn from_coeffs_in(field: F, nvars: usize, v: usize, coeffs: &[Self]) -> Self {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, x) in &c.terms {
                terms.push((m.with(v, m.get(v) + k as u32), x.clone()));
            }
        }
        Self::from_terms(field, nvars, terms)
    }

    /// Leading coefficient with respect to `X_v`.
    pub fn lead_in(&self, v: usize) -> Self {
        self.coeffs_in(v).pop().unwrap_or_else(|| Self::zero(self.field.clone(), self.nvars))
    }

    /// View as a univariate polynomial in `X_v` when no other variable occurs.
    pub fn to_uni(&self, v: usize) -> Option<UniPoly<F>> {
        let f = &self.field;
        let mut coeffs = vec![f.zero(); self.degree_in(v) + 1];
        for (m, c) in &self.terms {
            if m.degree() != m.get(v) {
                return None;
            }
            coeffs[m.get(v) as usize] = c.clone();
        }
        Some(UniPoly::new(f.clone(), coeffs))
    }

    pub fn from_uni(u: &UniPoly<F>, nvars: usize, v: usize) -> Self {
        let f = u.field().clone();
        let terms = u
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(k, c)| (Monomial::var(nvars, v, k as u32), c.clone()))
            .collect::<Vec<_>>();
        Self::from_terms(f, nvars, terms)
    }

    /// Homogeneous component of total degree `k`.
    pub fn homogeneous_part(&self, k: usize) -> Self {
        let terms = self.terms.iter().filter(|t| t.0.degree() as usize == k).cloned().collect();
        MultiPoly::from_sorted(self.field.clone(), self.nvars, terms)
    }

    /// Drop every term whose degree in the variables other than `X_v`
    /// exceeds `k`.
    pub fn truncate_without(&self, v: usize, k: u32) -> Self {
        let terms = self.terms.iter().filter(|t| t.0.degree_without(v) <= k).cloned().collect();
        MultiPoly::from_sorted(self.field.clone(), self.nvars, terms)
    }

    /// Rename variables: variable `i` becomes `map[i]` in a ring with
    /// `nvars` variables.
    pub fn remap_vars(&self, map: &[usize], nvars: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e: Exps = smallvec::smallvec![0; nvars];
                for (i, &x) in m.exps().iter().enumerate() {
                    if x > 0 {
                        e[map[i]] += x;
                    }
                }
                (Monomial::new(e), c.clone())
            })
            .collect::<Vec<_>>();
        Self::from_terms(self.field.clone(), nvars, terms)
    }

    /// Same polynomial in a ring with `nvars >= self.nvars` variables.
    pub fn extend_vars(&self, nvars: usize) -> Self {
        let map: Vec<usize> = (0..self.nvars).collect();
        self.remap_vars(&map, nvars)
    }

    pub fn support(&self) -> Vec<Vec<u32>> {
        self.terms.iter().map(|t| t.0.exps().to_vec()).collect()
    }

    pub fn map_coeffs<G: Field>(&self, g: &G, f: impl Fn(&F::Elem) -> G::Elem) -> MultiPoly<G> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !g.is_zero(c))
            .collect();
        MultiPoly { field: g.clone(), nvars: self.nvars, terms }
    }

    /// Reverse the variable blocks `(X, Y) -> (Y, X)` for a polynomial in
    /// `2n` variables.
    pub fn swap_halves(&self) -> Self {
        let n = self.nvars / 2;
        let map: Vec<usize> = (0..2 * n).map(|i| if i < n { i + n } else { i - n }).collect();
        self.remap_vars(&map, self.nvars)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let f = &self.field;
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
            let compound = f.is_compound(c);
            let mut s = f.fmt_elem(c);
            let neg = !compound && s.starts_with('-');
            if neg {
                s.remove(0);
            }
            if compound {
                s = format!("({s})");
            }
            let mut factors = Vec::new();
            if m.is_one() || s != "1" {
                factors.push(s);
            }
            for (v, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].clone()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("X{i}")).collect()
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(&self.fmt_with(&Self::default_names(self.nvars)))
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<F: Field> std::ops::$tr<&MultiPoly<F>> for &MultiPoly<F> {
            type Output = MultiPoly<F>;
            fn $method(self, rhs: &MultiPoly<F>) -> MultiPoly<F> {
                MultiPoly::$inner(self, rhs)
            }
        }
    };
}

forward_op!(Add, add, add);
forward_op!(Sub, sub, sub);
forward_op!(Mul, mul, mul);
