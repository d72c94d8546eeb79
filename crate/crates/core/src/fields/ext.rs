use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand::Rng;

use super::{Field, FiniteField};
use crate::polys::UniPoly;
use crate::{Error, Result};

/// `B[a] / (m(a))` for a monic irreducible `m` of degree `e` over the finite
/// field `B`. Elements are coordinate vectors of length `e` in the power
/// basis `1, a, ..., a^(e-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtField<B: FiniteField> {
    inner: Arc<ExtInner<B>>,
}

#[derive(Debug, PartialEq)]
struct ExtInner<B: FiniteField> {
    base: B,
    /// Monic modulus, low to high, length `e + 1`.
    modulus: Vec<B::Elem>,
}

impl<B: FiniteField> ExtField<B> {
    /// Extension with an explicit monic modulus (low-to-high coefficients).
    pub fn with_modulus(base: B, modulus: Vec<B::Elem>) -> Result<Self> {
        let m = UniPoly::new(base.clone(), modulus);
        if m.degree() < 1 || !base.is_one(m.lead()) {
            return Err(Error::InvalidInput(
                "extension modulus must be monic of positive degree".into(),
            ));
        }
        if !m.is_irreducible_finite() {
            return Err(Error::ReducibleModulus);
        }
        Ok(Self::from_irreducible(base, m.into_coeffs()))
    }

    /// Degree-`e` extension whose modulus is the first monic irreducible in
    /// lexicographic coefficient order (leading non-fixed coefficient most
    /// significant, each coefficient ordered by the base field enumeration).
    pub fn new(base: B, e: usize) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidInput("extension degree must be positive".into()));
        }
        if e == 1 {
            // a = 0: the trivial extension.
            let modulus = vec![base.zero(), base.one()];
            return Ok(Self::from_irreducible(base, modulus));
        }
        let q = base.order_big().to_u64().unwrap_or(u64::MAX);
        let mut index: u64 = 0;
        loop {
            let mut digits = vec![base.zero(); e + 1];
            digits[e] = base.one();
            let mut k = index;
            for c in digits.iter_mut().take(e) {
                let d = if q == u64::MAX { k } else { k % q };
                *c = base.element(d).expect("digit in range");
                k = if q == u64::MAX { 0 } else { k / q };
            }
            let m = UniPoly::new(base.clone(), digits.clone());
            if m.is_irreducible_finite() {
                return Ok(Self::from_irreducible(base, digits));
            }
            index += 1;
        }
    }

    fn from_irreducible(base: B, modulus: Vec<B::Elem>) -> Self {
        ExtField { inner: Arc::new(ExtInner { base, modulus }) }
    }

    pub fn base(&self) -> &B {
        &self.inner.base
    }

    /// Extension degree over the base field.
    pub fn degree(&self) -> usize {
        self.inner.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[B::Elem] {
        &self.inner.modulus
    }

    /// The class of `a` (the power-basis generator).
    pub fn generator(&self) -> Vec<B::Elem> {
        let e = self.degree();
        let mut v = vec![self.base().zero(); e];
        if e == 1 {
            v[0] = self.base().neg(&self.inner.modulus[0]);
        } else {
            v[1] = self.base().one();
        }
        v
    }

    pub fn embed(&self, x: &B::Elem) -> Vec<B::Elem> {
        let mut v = vec![self.base().zero(); self.degree()];
        v[0] = x.clone();
        v
    }

    /// Coordinates in the power basis `1, a, ..., a^(e-1)`.
    pub fn coords<'a>(&self, y: &'a [B::Elem]) -> &'a [B::Elem] {
        y
    }

    pub fn from_coords(&self, coords: &[B::Elem]) -> Result<Vec<B::Elem>> {
        if coords.len() != self.degree() {
            return Err(Error::ContextMismatch);
        }
        Ok(coords.to_vec())
    }

    /// `Some(x)` when `y` lies in the base field.
    pub fn to_base(&self, y: &[B::Elem]) -> Option<B::Elem> {
        if y[1..].iter().all(|c| self.base().is_zero(c)) {
            Some(y[0].clone())
        } else {
            None
        }
    }

    /// The relative Frobenius `y -> y^|B|`.
    pub fn frobenius(&self, y: &Vec<B::Elem>) -> Vec<B::Elem> {
        self.pow(y, &self.base().order_big())
    }

    fn reduce(&self, mut prod: Vec<B::Elem>) -> Vec<B::Elem> {
        let base = self.base();
        let e = self.degree();
        let m = &self.inner.modulus;
        for i in (e..prod.len()).rev() {
            let c = prod[i].clone();
            if base.is_zero(&c) {
                continue;
            }
            for j in 0..e {
                let t = base.mul(&c, &m[j]);
                prod[i - e + j] = base.sub(&prod[i - e + j], &t);
            }
        }
        prod.truncate(e);
        prod.resize(e, base.zero());
        prod
    }
}

impl<B: FiniteField> Field for ExtField<B> {
    type Elem = Vec<B::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base().zero(); self.degree()]
    }
    fn one(&self) -> Self::Elem {
        self.embed(&self.base().one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.base().is_zero(c))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base().add(x, y)).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base().sub(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base().neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let base = self.base();
        let e = self.degree();
        if e == 1 {
            return vec![base.mul(&a[0], &b[0])];
        }
        let mut prod = vec![base.zero(); 2 * e - 1];
        for (i, x) in a.iter().enumerate() {
            if base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if base.is_zero(y) {
                    continue;
                }
                let t = base.mul(x, y);
                prod[i + j] = base.add(&prod[i + j], &t);
            }
        }
        self.reduce(prod)
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return None;
        }
        let base = self.base().clone();
        let pa = UniPoly::new(base.clone(), a.clone());
        let pm = UniPoly::new(base, self.inner.modulus.clone());
        let (g, s, _) = pa.ext_gcd(&pm);
        debug_assert_eq!(g.degree(), 0);
        let gi = self.base().inv(g.lead())?;
        let s = s.scale(&gi);
        let mut v = s.into_coeffs();
        v.resize(self.degree(), self.base().zero());
        Some(v)
    }
    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        self.embed(&self.base().from_bigint(n))
    }
    fn characteristic(&self) -> BigUint {
        self.base().characteristic()
    }
    fn order(&self) -> Option<BigUint> {
        Some(self.base().order_big().pow(self.degree() as u32))
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> Self::Elem {
        (0..self.degree()).map(|_| self.base().random(rng, bound)).collect()
    }
    fn element(&self, index: u64) -> Option<Self::Elem> {
        let q = self.base().order_big().to_u64()?;
        let mut k = index;
        let mut v = Vec::with_capacity(self.degree());
        for _ in 0..self.degree() {
            v.push(self.base().element(k % q)?);
            k /= q;
        }
        (k == 0).then_some(v)
    }
    fn normalizer<'a, I>(&self, lead: &Self::Elem, _coeffs: I) -> Self::Elem
    where
        I: Iterator<Item = &'a Self::Elem>,
    {
        self.inv(lead).unwrap_or_else(|| self.one())
    }
    fn fmt_elem(&self, a: &Self::Elem) -> String {
        let base = self.base();
        let mut parts = Vec::new();
        for (i, c) in a.iter().enumerate() {
            if base.is_zero(c) {
                continue;
            }
            let cs = base.fmt_elem(c);
            let cs = if base.is_compound(c) { format!("({cs})") } else { cs };
            parts.push(match i {
                0 => cs,
                1 if base.is_one(c) => "a".to_string(),
                1 => format!("{cs}*a"),
                _ if base.is_one(c) => format!("a^{i}"),
                _ => format!("{cs}*a^{i}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
    fn is_compound(&self, a: &Self::Elem) -> bool {
        a.iter().filter(|c| !self.base().is_zero(c)).count() > 1
            || a[1..].iter().any(|c| !self.base().is_zero(c))
    }
    fn describe(&self) -> String {
        format!("{}^{}", self.base().describe(), self.degree())
    }
}

impl<B: FiniteField> FiniteField for ExtField<B> {
    fn prime_degree(&self) -> usize {
        self.degree() * self.base().prime_degree()
    }
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        // a^(q/p) is the inverse of Frobenius on F_q.
        let q = self.order_big();
        let p = self.characteristic();
        if q == p {
            return a.clone();
        }
        self.pow(a, &(q / p))
    }
}

impl<B: FiniteField> ExtField<B> {
    /// `a^(|B|^k)`: the k-th power of the relative Frobenius.
    pub fn frobenius_pow(&self, y: &Vec<B::Elem>, k: usize) -> Vec<B::Elem> {
        let mut r = y.clone();
        for _ in 0..k {
            r = self.frobenius(&r);
        }
        r
    }

    pub fn is_trivial(&self) -> bool {
        self.degree() == 1
    }
}
