use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Commutative ring with unit, for generic matrix and polynomial code.
///
/// Zero and one are produced from an existing element because some rings
/// (cyclotomic fields of a given conductor, class functions of a given group)
/// need context to build them.
pub trait CommRing: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn mul_int(&self, c: &BigInt) -> Self;

    fn int_like(&self, c: &BigInt) -> Self {
        self.one_like().mul_int(c)
    }

    fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

/// A commutative ring in which every nonzero element is invertible.
pub trait Field: CommRing {
    fn inv(&self) -> Option<Self>;
}

impl CommRing for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_int(&self, c: &BigInt) -> Self {
        self * c
    }
}

impl CommRing for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_int(&self, c: &BigInt) -> Self {
        self * BigRational::from_integer(c.clone())
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Exact quotient `a / b` when `b` divides `a`.
pub fn exact_div(a: &BigInt, b: &BigInt) -> Option<BigInt> {
    if Zero::is_zero(b) {
        return None;
    }
    let (q, r) = num_integer::Integer::div_rem(a, b);
    if Zero::is_zero(&r) {
        Some(q)
    } else {
        None
    }
}

/// Integer part of a rational that is known to be integral.
pub fn rational_to_int(q: &BigRational) -> Option<BigInt> {
    if q.is_integer() {
        Some(q.to_integer())
    } else {
        None
    }
}

/// `p`-part of a nonzero integer, as a positive integer.
pub fn p_part(n: &BigInt, p: u64) -> BigInt {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut acc = BigInt::one();
    if Zero::is_zero(&n) {
        return BigInt::zero();
    }
    loop {
        let (q, r) = num_integer::Integer::div_rem(&n, &p);
        if !Zero::is_zero(&r) {
            break;
        }
        acc *= &p;
        n = q;
    }
    acc
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    let mut v = 0;
    let mut m = p_part(n, p);
    let p = BigInt::from(p);
    while m > BigInt::one() {
        m /= &p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_parts() {
        assert_eq!(p_part(&BigInt::from(-24), 2), BigInt::from(8));
        assert_eq!(p_part(&BigInt::from(7), 3), BigInt::from(1));
        assert_eq!(valuation(&BigInt::from(729), 3), 6);
    }

    #[test]
    fn pow_by_squaring() {
        assert_eq!(BigInt::from(3).pow_u(5), BigInt::from(243));
        assert_eq!(BigInt::from(3).pow_u(0), BigInt::from(1));
    }
}
