use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::Elem;
use crate::{Error, Result};

/// Coefficient rings for truncated power series: exact rationals, local
/// field elements, and (recursively) truncated series themselves.
pub trait Coeff: Clone + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_i64_like(&self, n: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn try_inv(&self) -> Result<Self>;

    fn mul_i64(&self, n: i64) -> Self {
        self.mul(&self.from_i64_like(n))
    }

    fn div_i64(&self, n: i64) -> Result<Self> {
        Ok(self.mul(&self.from_i64_like(n).try_inv()?))
    }

    fn pow(&self, mut n: u64) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Coeff for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

impl Coeff for Elem {
    fn zero_like(&self) -> Self {
        Elem::zero(self.field())
    }
    fn one_like(&self) -> Self {
        Elem::one(self.field())
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Elem::from_int(self.field(), n)
    }
    fn add(&self, other: &Self) -> Self {
        Elem::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Elem::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Elem::mul(self, other)
    }
    fn neg(&self) -> Self {
        Elem::neg(self)
    }
    fn is_zero(&self) -> bool {
        Elem::is_zero(self)
    }
    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }
    fn mul_i64(&self, n: i64) -> Self {
        self.mul_int(n)
    }
    fn pow(&self, n: u64) -> Self {
        Elem::pow(self, n)
    }
}
