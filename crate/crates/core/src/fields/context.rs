use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use super::{BigPrimeField, ExtField, Field, Rationals};
use crate::{Error, Result};

/// Runtime description of a coefficient field.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldContext {
    Rationals,
    Prime(BigPrimeField),
    Extension(ExtField<BigPrimeField>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Value {
    Rat(BigRational),
    Res(BigUint),
    Ext(Vec<BigUint>),
}

/// A field element tagged with its context. All binary operations check that
/// both operands share the same context.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldElement {
    ctx: FieldContext,
    value: Value,
}

impl FieldContext {
    pub fn rationals() -> Self {
        FieldContext::Rationals
    }

    pub fn prime(p: BigUint) -> Result<Self> {
        Ok(FieldContext::Prime(BigPrimeField::new(p)?))
    }

    /// `F_{p^e}` with the default (lexicographically first) modulus.
    pub fn extension(p: BigUint, e: usize) -> Result<Self> {
        let base = BigPrimeField::new(p)?;
        Ok(FieldContext::Extension(ExtField::new(base, e)?))
    }

    /// `F_p[a]/(m)` for an explicit monic modulus given low to high.
    pub fn extension_with_modulus(p: BigUint, modulus: Vec<BigUint>) -> Result<Self> {
        let base = BigPrimeField::new(p)?;
        let m = modulus.iter().map(|c| c % base.p()).collect();
        Ok(FieldContext::Extension(ExtField::with_modulus(base, m)?))
    }

    pub fn characteristic(&self) -> BigUint {
        match self {
            FieldContext::Rationals => BigUint::zero(),
            FieldContext::Prime(f) => f.characteristic(),
            FieldContext::Extension(f) => f.characteristic(),
        }
    }

    pub fn satisfies_char_hypothesis(&self, d: usize) -> bool {
        match self {
            FieldContext::Rationals => true,
            FieldContext::Prime(f) => f.satisfies_char_hypothesis(d),
            FieldContext::Extension(f) => f.satisfies_char_hypothesis(d),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            FieldContext::Rationals => Rationals.describe(),
            FieldContext::Prime(f) => f.describe(),
            FieldContext::Extension(f) => f.describe(),
        }
    }

    fn wrap(&self, value: Value) -> FieldElement {
        FieldElement { ctx: self.clone(), value }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        let v = match self {
            FieldContext::Rationals => Value::Rat(Rationals.from_bigint(n)),
            FieldContext::Prime(f) => Value::Res(f.from_bigint(n)),
            FieldContext::Extension(f) => Value::Ext(f.from_bigint(n)),
        };
        self.wrap(v)
    }

    pub fn rational(&self, num: i64, den: i64) -> Result<FieldElement> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        self.from_int(num).div(&self.from_int(den))
    }

    /// The generator `a` of an extension (power basis element).
    pub fn generator(&self) -> Result<FieldElement> {
        match self {
            FieldContext::Extension(f) => Ok(self.wrap(Value::Ext(f.generator()))),
            _ => Err(Error::ContextMismatch),
        }
    }

    /// Element of `F_{p^e}` from power-basis coordinates.
    pub fn from_coordinates(&self, coords: &[FieldElement]) -> Result<FieldElement> {
        let FieldContext::Extension(f) = self else {
            return Err(Error::ContextMismatch);
        };
        let mut v = Vec::with_capacity(coords.len());
        for c in coords {
            match (&c.ctx, &c.value) {
                (FieldContext::Prime(b), Value::Res(r)) if b == f.base() => v.push(r.clone()),
                _ => return Err(Error::ContextMismatch),
            }
        }
        Ok(self.wrap(Value::Ext(f.from_coords(&v)?)))
    }

    /// Embed an element of `F_p` into this extension.
    pub fn embed(&self, x: &FieldElement) -> Result<FieldElement> {
        match (self, &x.ctx, &x.value) {
            (FieldContext::Extension(f), FieldContext::Prime(b), Value::Res(r)) if b == f.base() => {
                Ok(self.wrap(Value::Ext(f.embed(r))))
            }
            _ if x.ctx == *self => Ok(x.clone()),
            _ => Err(Error::ContextMismatch),
        }
    }

    /// The prime subfield context of an extension.
    pub fn base_prime(&self) -> Option<FieldContext> {
        match self {
            FieldContext::Extension(f) => Some(FieldContext::Prime(f.base().clone())),
            FieldContext::Prime(_) => Some(self.clone()),
            FieldContext::Rationals => None,
        }
    }
}

impl FieldElement {
    pub fn context(&self) -> &FieldContext {
        &self.ctx
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn binop(
        &self,
        other: &FieldElement,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        res: impl Fn(&BigPrimeField, &BigUint, &BigUint) -> BigUint,
        ext: impl Fn(&ExtField<BigPrimeField>, &Vec<BigUint>, &Vec<BigUint>) -> Vec<BigUint>,
    ) -> Result<FieldElement> {
        self.check(other)?;
        let v = match (&self.ctx, &self.value, &other.value) {
            (FieldContext::Rationals, Value::Rat(a), Value::Rat(b)) => Value::Rat(rat(a, b)),
            (FieldContext::Prime(f), Value::Res(a), Value::Res(b)) => Value::Res(res(f, a, b)),
            (FieldContext::Extension(f), Value::Ext(a), Value::Ext(b)) => Value::Ext(ext(f, a, b)),
            _ => return Err(Error::ContextMismatch),
        };
        Ok(self.ctx.wrap(v))
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.binop(other, |a, b| Rationals.add(a, b), |f, a, b| f.add(a, b), |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.binop(other, |a, b| Rationals.sub(a, b), |f, a, b| f.sub(a, b), |f, a, b| f.sub(a, b))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.binop(other, |a, b| Rationals.mul(a, b), |f, a, b| f.mul(a, b), |f, a, b| f.mul(a, b))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        self.mul(&other.inv()?)
    }

    pub fn neg(&self) -> FieldElement {
        let v = match (&self.ctx, &self.value) {
            (FieldContext::Rationals, Value::Rat(a)) => Value::Rat(-a),
            (FieldContext::Prime(f), Value::Res(a)) => Value::Res(f.neg(a)),
            (FieldContext::Extension(f), Value::Ext(a)) => Value::Ext(f.neg(a)),
            _ => unreachable!("value kind matches context"),
        };
        self.ctx.wrap(v)
    }

    pub fn inv(&self) -> Result<FieldElement> {
        let v = match (&self.ctx, &self.value) {
            (FieldContext::Rationals, Value::Rat(a)) => Rationals.inv(a).map(Value::Rat),
            (FieldContext::Prime(f), Value::Res(a)) => f.inv(a).map(Value::Res),
            (FieldContext::Extension(f), Value::Ext(a)) => f.inv(a).map(Value::Ext),
            _ => unreachable!("value kind matches context"),
        };
        v.map(|v| self.ctx.wrap(v)).ok_or(Error::DivisionByZero)
    }

    /// `self^exp`; negative exponents invert first.
    pub fn pow(&self, exp: i64) -> Result<FieldElement> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let e = BigUint::from(exp.unsigned_abs());
        let v = match (&self.ctx, &base.value) {
            (FieldContext::Rationals, Value::Rat(a)) => Value::Rat(Rationals.pow(a, &e)),
            (FieldContext::Prime(f), Value::Res(a)) => Value::Res(f.pow(a, &e)),
            (FieldContext::Extension(f), Value::Ext(a)) => Value::Ext(f.pow(a, &e)),
            _ => unreachable!("value kind matches context"),
        };
        Ok(self.ctx.wrap(v))
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rat(a) => a.is_zero(),
            Value::Res(a) => a.is_zero(),
            Value::Ext(a) => a.iter().all(|c| c.is_zero()),
        }
    }

    /// Power-basis coordinates of an extension element as `F_p` elements.
    pub fn basis_coordinates(&self) -> Result<Vec<FieldElement>> {
        match (&self.ctx, &self.value) {
            (FieldContext::Extension(f), Value::Ext(a)) => {
                let base = FieldContext::Prime(f.base().clone());
                Ok(f.coords(a).iter().map(|c| base.wrap(Value::Res(c.clone()))).collect())
            }
            _ => Err(Error::ContextMismatch),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rat(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<&BigUint> {
        match &self.value {
            Value::Res(a) => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match (&self.ctx, &self.value) {
            (FieldContext::Rationals, Value::Rat(a)) => Rationals.fmt_elem(a),
            (FieldContext::Prime(f), Value::Res(a)) => f.fmt_elem(a),
            (FieldContext::Extension(f), Value::Ext(a)) => f.fmt_elem(a),
            _ => unreachable!("value kind matches context"),
        };
        out.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u32) -> FieldContext {
        FieldContext::prime(BigUint::from(p)).unwrap()
    }

    #[test]
    fn inverse_in_f7() {
        let k = fp(7);
        assert_eq!(k.from_int(2).inv().unwrap(), k.from_int(4));
    }

    #[test]
    fn rational_sum() {
        let q = FieldContext::rationals();
        let a = q.rational(1, 3).unwrap();
        let b = q.rational(1, 6).unwrap();
        assert_eq!(a.add(&b).unwrap(), q.rational(1, 2).unwrap());
    }

    #[test]
    fn generator_to_the_seventh_in_f49() {
        let k = FieldContext::extension(BigUint::from(7u32), 2).unwrap();
        let a = k.generator().unwrap();
        let mut slow = k.one();
        for _ in 0..7 {
            slow = slow.mul(&a).unwrap();
        }
        assert_eq!(a.pow(7).unwrap(), slow);
        assert_eq!(slow, a.neg());
    }

    #[test]
    fn embed_and_coordinates() {
        let base = fp(7);
        let k = FieldContext::extension(BigUint::from(7u32), 2).unwrap();
        let three = k.embed(&base.from_int(3)).unwrap();
        assert_eq!(three.basis_coordinates().unwrap(), vec![base.from_int(3), base.from_int(0)]);
        let y = k.from_int(2).add(&k.from_int(5).mul(&k.generator().unwrap()).unwrap()).unwrap();
        assert_eq!(y.basis_coordinates().unwrap(), vec![base.from_int(2), base.from_int(5)]);
        for x in 0..7 {
            let e = k.embed(&base.from_int(x)).unwrap();
            let c = e.basis_coordinates().unwrap();
            assert_eq!(c[0], base.from_int(x));
            assert!(c[1].is_zero());
        }
        assert_eq!(y.basis_coordinates().map(|_| ()), Ok(()));
        assert!(base.from_int(1).basis_coordinates().is_err());
    }

    #[test]
    fn errors() {
        let q = FieldContext::rationals();
        let k = fp(7);
        assert_eq!(q.one().add(&k.one()), Err(Error::ContextMismatch));
        assert_eq!(k.zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(q.one().div(&q.zero()), Err(Error::DivisionByZero));
        assert!(matches!(FieldContext::prime(BigUint::from(15u32)), Err(Error::NotPrime(_))));
        assert_eq!(
            FieldContext::extension_with_modulus(BigUint::from(5u32), vec![1u32.into(), 0u32.into(), 1u32.into()]),
            Err(Error::ReducibleModulus)
        );
    }

    #[test]
    fn char_hypothesis() {
        assert!(FieldContext::rationals().satisfies_char_hypothesis(100));
        assert!(fp(7).satisfies_char_hypothesis(3));
        assert!(!fp(7).satisfies_char_hypothesis(4));
    }

    fn random_elem(k: &FieldContext, rng: &mut ChaCha8Rng) -> FieldElement {
        match k {
            FieldContext::Rationals => {
                let n = rng.gen_range(-50i64..=50);
                let d = rng.gen_range(1i64..=50);
                k.rational(n, d).unwrap()
            }
            FieldContext::Prime(_) => k.from_int(rng.gen_range(0..1_000_000)),
            FieldContext::Extension(_) => {
                let a = k.generator().unwrap();
                let mut x = k.zero();
                for _ in 0..3 {
                    x = x.mul(&a).unwrap().add(&k.from_int(rng.gen_range(0..100))).unwrap();
                }
                x
            }
        }
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let contexts = [
            FieldContext::rationals(),
            fp(101),
            FieldContext::prime(BigUint::from(10007u32)).unwrap(),
            FieldContext::extension(BigUint::from(7u32), 3).unwrap(),
        ];
        for k in &contexts {
            for _ in 0..2500 {
                let a = random_elem(k, &mut rng);
                let b = random_elem(k, &mut rng);
                let c = random_elem(k, &mut rng);
                let l = a.add(&b).unwrap().add(&c).unwrap();
                let r = a.add(&b.add(&c).unwrap()).unwrap();
                assert_eq!(l, r);
                let l = a.mul(&b.add(&c).unwrap()).unwrap();
                let r = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
                assert_eq!(l, r);
                if !a.is_zero() {
                    assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), k.one());
                }
                for v in [&l, &r] {
                    if let Some(q) = v.as_rational() {
                        assert!(q.numer().gcd(q.denom()).is_one());
                        assert!(q.denom() > &BigInt::zero());
                    }
                }
            }
        }
    }
}
