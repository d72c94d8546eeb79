use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::Field;

/// The field of rational numbers. `BigRational` keeps values in lowest terms
/// with a positive denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Rationals {
    /// `n / d`; `d` must be nonzero.
    pub fn rational(&self, n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_zero() || b.is_zero() {
            return BigRational::zero();
        }
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn characteristic(&self) -> BigUint {
        BigUint::zero()
    }
    fn order(&self) -> Option<BigUint> {
        None
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> BigRational {
        let b = bound as i64;
        BigRational::from_integer(BigInt::from(rng.gen_range(-b..=b)))
    }
    fn element(&self, index: u64) -> Option<BigRational> {
        // 0, 1, -1, 2, -2, ...
        let k = index.div_ceil(2) as i64;
        let v = if index % 2 == 1 { k } else { -k };
        Some(BigRational::from_integer(BigInt::from(v)))
    }
    fn normalizer<'a, I>(&self, lead: &BigRational, coeffs: I) -> BigRational
    where
        I: Iterator<Item = &'a BigRational>,
    {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in coeffs {
            if c.is_zero() {
                continue;
            }
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return BigRational::one();
        }
        let mut s = BigRational::new(den_lcm, num_gcd);
        if lead.is_negative() {
            s = -s;
        }
        s
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn describe(&self) -> String {
        "rational".to_string()
    }
}
