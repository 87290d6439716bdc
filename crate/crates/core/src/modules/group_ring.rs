use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::quotient::{FiniteQuotient, GroupElement};

/// Element of `Z[G]`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<GroupElement, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(g: GroupElement, c: impl Into<BigInt>) -> Self {
        let mut x = Self::zero();
        x.add_term(g, c.into());
        x
    }

    pub fn one(q: &FiniteQuotient) -> Self {
        Self::monomial(q.identity(), 1)
    }

    /// `alpha(t_i)` as a ring element.
    pub fn t(q: &FiniteQuotient, i: usize) -> Self {
        Self::monomial(q.generator(i), 1)
    }

    pub fn t_inv(q: &FiniteQuotient, i: usize) -> Self {
        Self::monomial(q.neg(q.generator(i)), 1)
    }

    /// `t_i - 1`.
    pub fn t_minus_one(q: &FiniteQuotient, i: usize) -> Self {
        Self::t(q, i) - Self::one(q)
    }

    fn add_term(&mut self, g: GroupElement, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(g).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: GroupElement) -> BigInt {
        self.terms.get(&g).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &BigInt)> {
        self.terms.iter()
    }

    pub fn mul(&self, other: &Self, q: &FiniteQuotient) -> Self {
        let mut out = Self::zero();
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                out.add_term(q.add(*g, *h), a * b);
            }
        }
        out
    }

    /// `g * self`.
    pub fn translate(&self, g: GroupElement, q: &FiniteQuotient) -> Self {
        GroupRingElement {
            terms: self.terms.iter().map(|(h, c)| (q.add(*h, g), c.clone())).collect(),
        }
    }

    /// Image under the augmentation `Z[G] -> Z`.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl Add for GroupRingElement {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (g, c) in rhs.terms {
            self.add_term(g, c);
        }
        self
    }
}

impl Neg for GroupRingElement {
    type Output = Self;
    fn neg(self) -> Self {
        GroupRingElement {
            terms: self.terms.into_iter().map(|(g, c)| (g, -c)).collect(),
        }
    }
}

impl Sub for GroupRingElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}
