//! Scalar traits shared by the exact linear-algebra engine.
//!
//! Everything in [`crate::linalg`] is written against [`EuclideanDomain`], so the
//! same Smith-form code runs over the integers and over univariate polynomials
//! with rational or prime-field coefficients.

mod fp;
mod integer;
mod poly;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use fp::Fp;
pub use poly::Poly;

/// Commutative ring with identity.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// `self -= a * b`. Implementations override this to avoid temporaries.
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.clone() - a.clone() * b.clone();
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
}

/// A field: every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

/// Euclidean domain with a canonical choice of associates
/// (nonnegative integers, monic polynomials).
pub trait EuclideanDomain: Ring {
    type Size: Ord + Clone + Debug;

    /// Euclidean size. Only meaningful for nonzero elements.
    fn size(&self) -> Self::Size;

    /// Division with remainder; the remainder is zero or strictly smaller than `rhs`.
    fn div_rem_euclid(&self, rhs: &Self) -> (Self, Self);

    fn unit_inverse(&self) -> Option<Self>;

    /// The unit `u` such that `u * self` is the canonical associate of `self`.
    fn canonical_unit(&self) -> Self;

    fn is_unit(&self) -> bool {
        self.unit_inverse().is_some()
    }

    fn normalized(&self) -> Self {
        self.canonical_unit().mul_ref(self)
    }

    fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            other.is_zero()
        } else {
            other.div_rem_euclid(self).1.is_zero()
        }
    }
}

/// Canonical greatest common divisor.
pub fn gcd<R: EuclideanDomain>(a: &R, b: &R) -> R {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.div_rem_euclid(&y).1;
        x = y;
        y = r;
    }
    x.normalized()
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g` and `g` canonical.
pub fn ext_gcd<R: EuclideanDomain>(a: &R, b: &R) -> (R, R, R) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (R::one(), R::zero());
    let (mut t0, mut t1) = (R::zero(), R::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem_euclid(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s2 = s0.clone() - q.mul_ref(&s1);
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = t0.clone() - q.mul_ref(&t1);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let u = r0.canonical_unit();
    (u.mul_ref(&r0), u.mul_ref(&s0), u.mul_ref(&t0))
}

/// Least common multiple, canonical.
pub fn lcm<R: EuclideanDomain>(a: &R, b: &R) -> R {
    if a.is_zero() || b.is_zero() {
        return R::zero();
    }
    let g = gcd(a, b);
    a.div_rem_euclid(&g).0.mul_ref(b).normalized()
}
