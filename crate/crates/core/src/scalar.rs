use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer usable as exponent, coefficient, and matrix entry.
///
/// Implemented for `i64`, `i128` and `BigInt`. Primitive instantiations are
/// only sound when every intermediate value fits; overflow is trapped in
/// debug builds but not in release builds, so `BigInt` is the default.
pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn of_u64(n: u64) -> Self {
        <Self as FromPrimitive>::from_u64(n).expect("integer out of range for scalar type")
    }

    fn of_i64(n: i64) -> Self {
        <Self as FromPrimitive>::from_i64(n).expect("integer out of range for scalar type")
    }

    /// `self^exp` by repeated squaring.
    fn pow_u32(&self, exp: u32) -> Self {
        num_traits::pow(self.clone(), exp as usize)
    }

    /// Largest `k` with `base^k | self`; `None` for zero.
    fn valuation(&self, base: &Self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut k = 0;
        let mut n = self.abs();
        while n.is_multiple_of(base) {
            n = n / base.clone();
            k += 1;
        }
        Some(k)
    }

    /// If `self = base^k` for some `k ≥ 0`, returns `k`.
    fn log_exact(&self, base: &Self) -> Option<u32> {
        if !self.is_positive() {
            return None;
        }
        let k = self.valuation(base)?;
        if base.pow_u32(k) == *self {
            Some(k)
        } else {
            None
        }
    }

    /// Representative of `self` in `[0, m)`.
    fn rem_floor(&self, m: &Self) -> Self {
        self.mod_floor(m)
    }
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// Trial-division primality test.
pub fn is_prime<T: Scalar>(n: &T) -> bool {
    let two = T::of_u64(2);
    if *n < two {
        return false;
    }
    let mut d = two;
    while d.clone() * d.clone() <= *n {
        if n.is_multiple_of(&d) {
            return false;
        }
        d = d + T::one();
    }
    true
}

/// Prime factorisation by trial division, as ascending `(prime, exponent)`.
pub fn factorize<T: Scalar>(n: &T) -> Vec<(T, u32)> {
    let mut out = Vec::new();
    let mut n = n.abs();
    let mut d = T::of_u64(2);
    while d.clone() * d.clone() <= n {
        if n.is_multiple_of(&d) {
            let mut k = 0;
            while n.is_multiple_of(&d) {
                n = n / d.clone();
                k += 1;
            }
            out.push((d.clone(), k));
        }
        d = d + T::one();
    }
    if n > T::one() {
        out.push((n, 1));
    }
    out
}
