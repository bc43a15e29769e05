//! Exact scalar fields.
//!
//! Everything in this crate is computed over an exact field: arbitrary
//! precision rationals for characteristic-zero statements and small prime
//! fields for the point-count oracle. No floating point appears anywhere.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// An exact commutative field.
///
/// Implemented for [`BigRational`] and for the prime fields [`Fp`].
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Image of an integer under the canonical ring map `Z -> F`.
    fn from_int(n: i64) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }
}

impl Field for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// Builds the rational `num / den`. Panics on `den == 0`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Element of the prime field `Z/PZ`.
///
/// The modulus is a const parameter so that `zero()` and `one()` are
/// available without a runtime context. Primality of `P` is checked by
/// [`Fp::modulus_is_prime`]; callers that build `Fp<P>` from configuration go
/// through [`crate::rep7::count_orbits_mod_p`], which rejects composite moduli.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64> {
    value: u64,
}

impl<const P: u64> Fp<P> {
    pub const MODULUS: u64 = P;

    pub fn new(value: i64) -> Self {
        let m = P as i64;
        Fp {
            value: value.rem_euclid(m) as u64,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus_is_prime() -> bool {
        is_prime(P)
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Reduces a rational modulo `P`; `None` if `P` divides the denominator.
    pub fn from_rational(q: &BigRational) -> Option<Self> {
        let p = BigInt::from(P);
        let den = (q.denom() % &p).to_i64()?;
        if den == 0 {
            return None;
        }
        let num = (q.numer() % &p).to_i64()?;
        Some(Fp::new(num) / Fp::new(den))
    }

    /// A generator of the multiplicative group, by exhaustive search.
    pub fn primitive_root() -> Self {
        (2..P.max(2))
            .map(|g| Fp::new(g as i64))
            .find(|g| {
                let mut x = *g;
                let mut order = 1;
                while x.value != 1 {
                    x *= *g;
                    order += 1;
                }
                order == P - 1
            })
            .unwrap_or_else(Self::one)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, P)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp { value: 0 }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp { value: 1 % P }
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp {
            value: (self.value + rhs.value) % P,
        }
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp {
            value: (self.value + P - rhs.value) % P,
        }
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp {
            value: (self.value * rhs.value) % P,
        }
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp {
            value: (P - self.value) % P,
        }
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    /// Division by zero panics, like integer division.
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero in F_{P}");
        // Fermat: x^(P-2) = x^-1 for prime P.
        self * rhs.pow(P - 2)
    }
}

impl<const P: u64> AddAssign for Fp<P> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u64> SubAssign for Fp<P> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u64> MulAssign for Fp<P> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u64> FromPrimitive for Fp<P> {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Fp::new(n))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Fp { value: n % P })
    }
}

impl<const P: u64> Field for Fp<P> {
    fn from_int(n: i64) -> Self {
        Fp::new(n)
    }
}

/// Renders a rational compactly (`3`, `-1/12`).
pub fn fmt_rat(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Height of a rational: max(|num|, den).
pub fn height(q: &BigRational) -> BigInt {
    let n = q.numer().abs();
    let d = q.denom().clone();
    if n > d {
        n
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inverses_exhaustive<const P: u64>() {
        for v in 1..P {
            let x = Fp::<P>::new(v as i64);
            assert_eq!(x * x.inverse().unwrap(), Fp::one(), "p = {P}, x = {v}");
        }
        assert!(Fp::<P>::zero().inverse().is_none());
    }

    #[test]
    fn fp_inverse_small_primes() {
        inverses_exhaustive::<3>();
        inverses_exhaustive::<5>();
        inverses_exhaustive::<7>();
    }

    #[test]
    fn fp_negative_reduction() {
        assert_eq!(Fp::<7>::new(-2).value(), 5);
        assert_eq!(-Fp::<7>::new(0), Fp::zero());
    }

    #[test]
    fn rational_reduction() {
        assert_eq!(Fp::<5>::from_rational(&rat(1, 2)), Some(Fp::new(3)));
        assert_eq!(Fp::<5>::from_rational(&rat(-3, 4)), Some(Fp::new(3)));
        assert_eq!(Fp::<3>::from_rational(&rat(1, 3)), None);
        assert_eq!(Fp::<3>::from_rational(&rat(1, 6)), None);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(Fp::<3>::primitive_root().value(), 2);
        assert_eq!(Fp::<5>::primitive_root().value(), 2);
        assert_eq!(Fp::<7>::primitive_root().value(), 3);
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn rational_normal_form() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(fmt_rat(&q), "-3/2");
        assert_eq!(fmt_rat(&int(0)), "0");
        assert_eq!(height(&q), BigInt::from(3));
    }
}
