use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::fields::{Field, FiniteField};

/// Dense univariate polynomial, coefficients stored low to high with no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let c = field.one();
        UniPoly { field, coeffs: vec![c] }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// The polynomial `T`.
    pub fn x(field: F) -> Self {
        Self::monomial(field.clone(), 1, field.one())
    }

    pub fn monomial(field: F, k: usize, c: F::Elem) -> Self {
        let mut v = vec![field.zero(); k + 1];
        v[k] = c;
        Self::new(field, v)
    }

    /// `T - c`.
    pub fn linear(field: F, c: &F::Elem) -> Self {
        let v = vec![field.neg(c), field.one()];
        Self::new(field, v)
    }

    pub fn from_i64(field: F, coeffs: &[i64]) -> Self {
        let v = coeffs.iter().map(|&c| field.from_i64(c)).collect();
        Self::new(field, v)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    /// Degree, with `0` for the zero polynomial (see [`UniPoly::deg`]).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lead(&self) -> &F::Elem {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn lead_or_zero(&self) -> F::Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(f.clone(), v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let v = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        UniPoly { field: self.field.clone(), coeffs: v }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.field.clone());
        }
        let v = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Self::new(self.field.clone(), v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field.clone());
        }
        let f = &self.field;
        let mut v = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = f.mul(a, b);
                v[i + j] = f.add(&v[i + j], &t);
            }
        }
        Self::new(f.clone(), v)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.field.clone());
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Shift by `T^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(self.field.clone(), v)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let f = &self.field;
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(f.clone()), self.clone());
        }
        let dl_inv = f.inv(d.lead()).expect("nonzero lead");
        let dn = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        let mut q = vec![f.zero(); r.len() - dn];
        for i in (0..q.len()).rev() {
            let c = f.mul(&r[i + dn], &dl_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = f.mul(&c, dc);
                r[i + j] = f.sub(&r[i + j], &t);
            }
            q[i] = c;
        }
        r.truncate(dn);
        (Self::new(f.clone(), q), Self::new(f.clone(), r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let li = self.field.inv(self.lead()).expect("nonzero lead");
        self.scale(&li)
    }

    /// Canonical representative (monic over finite fields, primitive
    /// integer with positive leading coefficient over the rationals).
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.field.normalizer(self.lead(), self.coeffs.iter());
        self.scale(&c)
    }

    /// Normalized gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic().normalized()
        }
    }

    /// `(g, s, t)` with `g = s*self + t*other` and `g` monic (zero if both are).
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f.clone()), Self::zero(f.clone()));
        let (mut t0, mut t1) = (Self::zero(f.clone()), Self::one(f.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let li = f.inv(r0.lead()).expect("nonzero lead");
        (r0.scale(&li), s0.scale(&li), t0.scale(&li))
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Self::new(f.clone(), v)
    }

    /// `self(g(T))`.
    pub fn compose(&self, g: &Self) -> Self {
        let f = &self.field;
        let mut acc = Self::zero(f.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(f.clone(), c.clone()));
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        if self.degree() < 1 {
            return true;
        }
        let d = self.derivative();
        !d.is_zero() && self.gcd(&d).degree() == 0
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        self.mul(other).rem(m)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = Self::one(self.field.clone()).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul_mod(&result, m);
            if e.bit(i) {
                result = result.mul_mod(&base, m);
            }
        }
        result
    }

    pub fn map<G: Field>(&self, g: &G, f: impl Fn(&F::Elem) -> G::Elem) -> UniPoly<G> {
        UniPoly::new(g.clone(), self.coeffs.iter().map(f).collect())
    }

    pub fn to_string_var(&self, var: &str) -> String {
        let f = &self.field;
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let mut s = f.fmt_elem(c);
            let neg = s.starts_with('-') && !f.is_compound(c);
            if neg {
                s.remove(0);
            }
            if f.is_compound(c) {
                s = format!("({s})");
            }
            let body = match (i, s.as_str()) {
                (0, _) => s.clone(),
                (1, "1") => var.to_string(),
                (1, _) => format!("{s}*{var}"),
                (_, "1") => format!("{var}^{i}"),
                _ => format!("{s}*{var}^{i}"),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl<F: FiniteField> UniPoly<F> {
    /// Rabin's test: `T^(q^n) = T mod f` and `gcd(T^(q^(n/r)) - T, f) = 1`
    /// for every prime `r | n`.
    pub fn is_irreducible_finite(&self) -> bool {
        let n = self.degree();
        if self.is_zero() || n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic();
        let q = self.field.order_big();
        let x = Self::x(self.field.clone());
        // frob[k] = T^(q^k) mod f for k = 0..=n.
        let mut powers = vec![x.rem(&f)];
        for k in 1..=n {
            let next = powers[k - 1].pow_mod(&q, &f);
            powers.push(next);
        }
        if powers[n] != x.rem(&f) {
            return false;
        }
        for r in prime_divisors(n) {
            let g = powers[n / r].sub(&x).gcd(&f);
            if g.degree() > 0 {
                return false;
            }
        }
        true
    }
}

pub(crate) fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `lcm` helper used for extension degrees.
pub(crate) fn lcm_usize(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        return a.max(b);
    }
    a.lcm(&b)
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("T"))
    }
}
