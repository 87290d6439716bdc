use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Field, Ring};

/// Element of the prime field `F_p` with the modulus carried at runtime.
///
/// `Zero::zero()` and `One::one()` have no modulus to attach to; they produce
/// an unbound constant (`modulus == 0`) that adopts the modulus of the first
/// bound element it meets. Only values built with [`Fp::new`] are bound.
#[derive(Clone, Copy)]
pub struct Fp {
    value: i64,
    modulus: i64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(modulus >= 2, "prime field modulus must be at least 2");
        let m = modulus as i64;
        Fp {
            value: value.rem_euclid(m),
            modulus: m,
        }
    }

    pub fn from_bigint(value: &num_bigint::BigInt, modulus: u64) -> Self {
        let r = value.mod_floor_u64(modulus);
        Fp::new(r as i64, modulus)
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    /// `None` for an unbound constant.
    pub fn modulus(&self) -> Option<u64> {
        (self.modulus != 0).then_some(self.modulus as u64)
    }

    fn join(a: &Fp, b: &Fp) -> i64 {
        match (a.modulus, b.modulus) {
            (0, m) | (m, 0) => m,
            (m, n) => {
                assert_eq!(m, n, "mixing elements of different prime fields");
                m
            }
        }
    }

    fn bound(value: i128, modulus: i64) -> Fp {
        if modulus == 0 {
            Fp {
                value: value as i64,
                modulus: 0,
            }
        } else {
            Fp {
                value: value.rem_euclid(modulus as i128) as i64,
                modulus,
            }
        }
    }

    fn canonical_in(&self, modulus: i64) -> i64 {
        if modulus == 0 {
            self.value
        } else {
            self.value.rem_euclid(modulus)
        }
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, m: u64) -> u64;
}

impl ModFloorU64 for num_bigint::BigInt {
    fn mod_floor_u64(&self, m: u64) -> u64 {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        self.mod_floor(&num_bigint::BigInt::from(m))
            .to_u64()
            .expect("residue fits in u64")
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        let m = Fp::join(self, other);
        self.canonical_in(m) == other.canonical_in(m)
    }
}

impl Eq for Fp {}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{} (mod {})", self.value, self.modulus)
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let m = Fp::join(&self, &rhs);
        Fp::bound(self.value as i128 + rhs.value as i128, m)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let m = Fp::join(&self, &rhs);
        Fp::bound(self.value as i128 - rhs.value as i128, m)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let m = Fp::join(&self, &rhs);
        Fp::bound(self.value as i128 * rhs.value as i128, m)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::bound(-(self.value as i128), self.modulus)
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp {
            value: 0,
            modulus: 0,
        }
    }
    fn is_zero(&self) -> bool {
        self.canonical_in(self.modulus) == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp {
            value: 1,
            modulus: 0,
        }
    }
}

impl Ring for Fp {}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.modulus == 0 {
            return (self.value == 1 || self.value == -1).then_some(*self);
        }
        let (mut r0, mut r1) = (self.modulus, self.value);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        // r0 != 1 only when the modulus is not prime
        (r0 == 1).then(|| Fp::bound(s0 as i128, self.modulus))
    }
}
