use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::ring::Poly;
use crate::IntPoly;

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count() as u64
}

/// `Phi_d`, by dividing `t^d - 1` by `Phi_e` for the proper divisors `e` of `d`.
pub fn cyclotomic(d: u64) -> IntPoly {
    assert!(d >= 1, "cyclotomic order must be positive");
    let mut f: IntPoly = Poly::t_pow_minus_one(d as usize);
    for e in divisors(d) {
        if e < d {
            let (q, r) = f.div_rem_monic(&cyclotomic(e));
            debug_assert!(r.is_zero());
            f = q;
        }
    }
    f
}

/// `prod Phi_d^mult`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CyclotomicProduct {
    pub factors: BTreeMap<u64, u32>,
}

impl CyclotomicProduct {
    pub fn from_divisors(ds: &[u64]) -> Self {
        let mut p = Self::default();
        for &d in ds {
            p.multiply(d, 1);
        }
        p
    }

    pub fn multiply(&mut self, d: u64, mult: u32) {
        if mult > 0 {
            *self.factors.entry(d).or_insert(0) += mult;
        }
    }

    pub fn degree(&self) -> u64 {
        self.factors.iter().map(|(&d, &k)| euler_phi(d) * k as u64).sum()
    }

    pub fn expand(&self) -> IntPoly {
        self.factors.iter().fold(Poly::constant(BigInt::one()), |acc, (&d, &k)| {
            acc * cyclotomic(d).pow(k)
        })
    }
}
