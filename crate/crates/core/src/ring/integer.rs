use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{EuclideanDomain, Ring};

impl Ring for BigInt {
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl EuclideanDomain for BigInt {
    type Size = BigUint;

    fn size(&self) -> BigUint {
        self.magnitude().clone()
    }

    fn div_rem_euclid(&self, rhs: &Self) -> (Self, Self) {
        self.div_rem(rhs)
    }

    fn unit_inverse(&self) -> Option<Self> {
        self.is_unit().then(|| self.clone())
    }

    fn canonical_unit(&self) -> Self {
        if self.sign() == Sign::Minus {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }

    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }

    fn normalized(&self) -> Self {
        self.abs()
    }

    fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            other.is_zero()
        } else {
            other.is_multiple_of(self)
        }
    }
}

impl Ring for num_rational::BigRational {}

impl super::Field for num_rational::BigRational {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}
