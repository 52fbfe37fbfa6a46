//! Coefficient rings and fields.
//!
//! The linear algebra in this crate is generic over the traits here so that
//! the same routines run over `Z/p`, the rationals, and machine or
//! arbitrary-precision integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A commutative ring with unit, as far as the algorithms here need one.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Image of an integer under the unique ring map from `Z`.
    fn from_i64(n: i64) -> Self;
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    /// All elements when the field is finite, in a fixed order starting at 0.
    fn elements() -> Option<Vec<Self>>;

    fn characteristic() -> u64;

    /// Image of an arbitrary-precision integer.
    fn from_integer(n: &BigInt) -> Self;
}

impl Ring for i64 {
    fn from_i64(n: i64) -> Self {
        n
    }
}

impl Ring for i128 {
    fn from_i64(n: i64) -> Self {
        n as i128
    }
}

impl Ring for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl Ring for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn elements() -> Option<Vec<Self>> {
        None
    }

    fn characteristic() -> u64 {
        0
    }

    fn from_integer(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

/// Integers modulo a prime `P`, stored reduced in `0..P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Zp<const P: u64>(u64);

impl<const P: u64> Zp<P> {
    pub fn new(n: i64) -> Self {
        Zp(n.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Representative in `(-P/2, P/2]`.
    pub fn symmetric(self) -> i64 {
        let v = self.0 as i64;
        if v > (P as i64) / 2 {
            v - P as i64
        } else {
            v
        }
    }
}

impl<const P: u64> fmt::Debug for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Zp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Zp((self.0 + o.0) % P)
    }
}

impl<const P: u64> Sub for Zp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Zp((self.0 + P - o.0) % P)
    }
}

impl<const P: u64> Mul for Zp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Zp((self.0 * o.0) % P)
    }
}

impl<const P: u64> Neg for Zp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Zp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Zp<P> {
    fn zero() -> Self {
        Zp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Zp<P> {
    fn one() -> Self {
        Zp(1 % P)
    }
}

impl<const P: u64> Ring for Zp<P> {
    fn from_i64(n: i64) -> Self {
        Zp::new(n)
    }
}

impl<const P: u64> Field for Zp<P> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat
        let mut base = self.0;
        let mut exp = P - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            exp >>= 1;
        }
        Some(Zp(acc))
    }

    fn elements() -> Option<Vec<Self>> {
        Some((0..P).map(Zp).collect())
    }

    fn characteristic() -> u64 {
        P
    }

    fn from_integer(n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(P));
        Zp(r.try_into().expect("residue fits"))
    }
}

/// Integer types usable as a Euclidean domain in Smith normal form.
pub trait EuclideanInt: Ring + Ord + Signed + num_integer::Integer {}

impl<T: Ring + Ord + Signed + num_integer::Integer> EuclideanInt for T {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zp_arithmetic() {
        type F = Zp<7>;
        assert_eq!(F::new(3) * F::new(5), F::new(1));
        assert_eq!(F::new(3).inv(), Some(F::new(5)));
        assert_eq!(-F::new(2), F::new(5));
        assert_eq!(F::new(-1).symmetric(), -1);
        assert_eq!(F::elements().unwrap().len(), 7);
        assert!(F::zero().inv().is_none());
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        fn check<const P: u64>() {
            for x in Zp::<P>::elements().unwrap().into_iter().skip(1) {
                assert_eq!(x * x.inv().unwrap(), Zp::<P>::one());
            }
        }
        check::<2>();
        check::<3>();
        check::<5>();
        check::<13>();
    }
}
