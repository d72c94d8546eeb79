//! Exact coefficient fields.
//!
//! Algorithms in this crate are generic over [`Field`]. Three families are
//! provided: the rationals ([`Rationals`]), prime fields ([`PrimeField`] for
//! moduli below 2^63 and [`BigPrimeField`] for arbitrary ones) and extension
//! fields of a finite field ([`ExtField`]). The dynamically tagged
//! [`FieldContext`] / [`FieldElement`] pair is the runtime-checked view used at
//! the boundary of the library.

mod context;
mod ext;
mod prime;
pub mod primality;
mod rational;

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::Rng;

pub use context::{FieldContext, FieldElement};
pub use ext::ExtField;
pub use prime::{BigPrimeField, PrimeField};
pub use rational::Rationals;

pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn characteristic(&self) -> BigUint;
    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<BigUint>;
    /// A random element. Finite fields sample uniformly; infinite fields
    /// sample integers in `[-bound, bound]`.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> Self::Elem;
    /// The `index`-th element in the canonical enumeration order
    /// (0, 1, 2, ... for prime fields, base-p digits for extensions,
    /// 0, 1, -1, 2, -2, ... for the rationals). `None` past the end.
    fn element(&self, index: u64) -> Option<Self::Elem>;
    /// Scalar `c` such that `c * poly` is in canonical form, given the
    /// leading coefficient and all coefficients of a nonzero polynomial.
    /// Finite fields make the leading coefficient one; the rationals make the
    /// coefficients coprime integers with a positive leading one.
    fn normalizer<'a, I>(&self, lead: &Self::Elem, coeffs: I) -> Self::Elem
    where
        I: Iterator<Item = &'a Self::Elem>,
        Self::Elem: 'a;
    fn fmt_elem(&self, a: &Self::Elem) -> String;
    /// Whether printing needs parentheses when used as a coefficient.
    fn is_compound(&self, a: &Self::Elem) -> bool {
        let _ = a;
        false
    }
    /// Short description such as `rational`, `fp:101` or `fp:7^2`.
    fn describe(&self) -> String;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
    fn pow(&self, a: &Self::Elem, exp: &BigUint) -> Self::Elem {
        let mut result = self.one();
        let bits = exp.bits();
        for i in (0..bits).rev() {
            result = self.mul(&result, &result);
            if exp.bit(i) {
                result = self.mul(&result, a);
            }
        }
        result
    }
    fn pow_u64(&self, a: &Self::Elem, exp: u64) -> Self::Elem {
        self.pow(a, &BigUint::from(exp))
    }
    fn is_finite(&self) -> bool {
        self.order().is_some()
    }
    /// Characteristic zero or at least `d(d-1)+1`.
    fn satisfies_char_hypothesis(&self, d: usize) -> bool {
        let ch = self.characteristic();
        if ch.is_zero() {
            return true;
        }
        let d = BigUint::from(d);
        let bound = if d.is_zero() {
            BigUint::one()
        } else {
            &d * (&d - 1u32) + 1u32
        };
        ch >= bound
    }
    /// Characteristic zero or strictly larger than `d`.
    fn char_exceeds(&self, d: usize) -> bool {
        let ch = self.characteristic();
        ch.is_zero() || ch > BigUint::from(d)
    }
}

/// Finite fields: enough structure for Cantor–Zassenhaus and extensions.
pub trait FiniteField: Field {
    /// Degree over the prime subfield.
    fn prime_degree(&self) -> usize;
    /// The unique `b` with `b^p = a`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem;
    fn order_big(&self) -> BigUint {
        self.order().expect("finite field")
    }
}

/// Prime fields: elements are residues that can be read as integers.
pub trait PrimeFieldLike: FiniteField {
    fn modulus(&self) -> BigUint;
    fn to_biguint(&self, a: &Self::Elem) -> BigUint;
}

/// `CharacteristicTooSmall` unless the characteristic is zero or at least
/// `d(d-1)+1`.
pub fn check_hypothesis_c<F: Field>(field: &F, d: usize) -> crate::Result<()> {
    if field.satisfies_char_hypothesis(d) {
        Ok(())
    } else {
        Err(crate::Error::CharacteristicTooSmall {
            characteristic: field.characteristic().to_string(),
            degree: d,
        })
    }
}
