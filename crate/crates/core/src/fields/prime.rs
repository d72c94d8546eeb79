use std::sync::Arc;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use super::{primality, Field, FiniteField, PrimeFieldLike};
use crate::{Error, Result};

/// `Z/pZ` for a prime `p < 2^63`, residues stored as `u64` in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 {
            return Err(Error::InvalidInput(format!(
                "{p} exceeds the word-size prime field limit, use BigPrimeField"
            )));
        }
        if !primality::is_prime_u64(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn pow_mod(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &a);
            }
            a = self.mul(&a, &a);
            e >>= 1;
        }
        r
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i128) as u64)
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.elem(n)
    }
    fn characteristic(&self) -> BigUint {
        BigUint::from(self.p)
    }
    fn order(&self) -> Option<BigUint> {
        Some(BigUint::from(self.p))
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, _bound: u64) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn element(&self, index: u64) -> Option<u64> {
        (index < self.p).then_some(index)
    }
    fn normalizer<'a, I>(&self, lead: &u64, _coeffs: I) -> u64
    where
        I: Iterator<Item = &'a u64>,
    {
        self.inv(lead).unwrap_or(1)
    }
    fn pow(&self, a: &u64, exp: &BigUint) -> u64 {
        // Fermat: reduce the exponent modulo p - 1 when a != 0.
        if *a == 0 {
            return if exp.is_zero() { 1 } else { 0 };
        }
        let e = (exp % (self.p - 1)).to_u64().unwrap();
        self.pow_mod(*a, e)
    }
    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn describe(&self) -> String {
        format!("fp:{}", self.p)
    }
}

impl FiniteField for PrimeField {
    fn prime_degree(&self) -> usize {
        1
    }
    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }
}

impl PrimeFieldLike for PrimeField {
    fn modulus(&self) -> BigUint {
        BigUint::from(self.p)
    }
    fn to_biguint(&self, a: &u64) -> BigUint {
        BigUint::from(*a)
    }
}

/// `Z/pZ` for an arbitrary-precision prime `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigPrimeField {
    p: Arc<BigUint>,
}

impl BigPrimeField {
    pub fn new(p: BigUint) -> Result<Self> {
        if !primality::is_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(BigPrimeField { p: Arc::new(p) })
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }
}

impl Field for BigPrimeField {
    type Elem = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn one(&self) -> BigUint {
        BigUint::one()
    }
    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let s = a + b;
        if s >= *self.p {
            s - &*self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            a + &*self.p - b
        }
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &*self.p
    }
    fn neg(&self, a: &BigUint) -> BigUint {
        if a.is_zero() {
            BigUint::zero()
        } else {
            &*self.p - a
        }
    }
    fn inv(&self, a: &BigUint) -> Option<BigUint> {
        if a.is_zero() {
            return None;
        }
        let p = BigInt::from((*self.p).clone());
        let e = BigInt::from(a.clone()).extended_gcd(&p);
        Some(e.x.mod_floor(&p).to_biguint().unwrap())
    }
    fn from_bigint(&self, n: &BigInt) -> BigUint {
        n.mod_floor(&BigInt::from((*self.p).clone()))
            .to_biguint()
            .unwrap()
    }
    fn characteristic(&self) -> BigUint {
        (*self.p).clone()
    }
    fn order(&self) -> Option<BigUint> {
        Some((*self.p).clone())
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, _bound: u64) -> BigUint {
        rng.gen_biguint_below(&self.p)
    }
    fn element(&self, index: u64) -> Option<BigUint> {
        let i = BigUint::from(index);
        (i < *self.p).then_some(i)
    }
    fn normalizer<'a, I>(&self, lead: &BigUint, _coeffs: I) -> BigUint
    where
        I: Iterator<Item = &'a BigUint>,
    {
        self.inv(lead).unwrap_or_else(BigUint::one)
    }
    fn pow(&self, a: &BigUint, exp: &BigUint) -> BigUint {
        a.modpow(exp, &self.p)
    }
    fn fmt_elem(&self, a: &BigUint) -> String {
        a.to_string()
    }
    fn describe(&self) -> String {
        format!("fp:{}", self.p)
    }
}

impl FiniteField for BigPrimeField {
    fn prime_degree(&self) -> usize {
        1
    }
    fn pth_root(&self, a: &BigUint) -> BigUint {
        a.clone()
    }
}

impl PrimeFieldLike for BigPrimeField {
    fn modulus(&self) -> BigUint {
        (*self.p).clone()
    }
    fn to_biguint(&self, a: &BigUint) -> BigUint {
        a.clone()
    }
}
