//! Coefficient rings for [`MultiPoly`](crate::poly::MultiPoly).

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::FiniteField;

pub type Rational = BigRational;

/// A commutative ring with identity, given as a context object acting on
/// plain element values.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, when it exists.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn characteristic(&self) -> u64;
    /// Textual form of an element; negative values (where meaningful) are
    /// reported through [`Ring::is_negative`] and rendered by magnitude here.
    fn format_elem(&self, a: &Self::Elem) -> String;

    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl Ring for FiniteField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        FiniteField::add(self, *a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        FiniteField::neg(self, *a)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        FiniteField::mul(self, *a, *b)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        FiniteField::inv(self, *a)
    }
    fn from_int(&self, n: i64) -> u32 {
        FiniteField::from_int(self, n)
    }
    fn characteristic(&self) -> u64 {
        FiniteField::characteristic(self) as u64
    }
    fn format_elem(&self, a: &u32) -> String {
        self.format_element(*a, "a")
    }
    fn pow(&self, a: &u32, e: u64) -> u32 {
        FiniteField::pow(self, *a, e)
    }
}

/// The field of rational numbers.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_int(&self, n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn format_elem(&self, a: &Rational) -> String {
        a.abs().to_string()
    }
    fn is_negative(&self, a: &Rational) -> bool {
        a.is_negative()
    }
}
