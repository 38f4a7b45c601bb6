//! Arithmetic in the prime field ℤ/pℤ.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("CompositeModulus: {0} is not prime")]
    CompositeModulus(u64),
    #[error("DivisionByZero")]
    DivisionByZero,
}

/// An element of a prime field, always held in canonical form `0 <= value < p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field ℤ_p. Immutable once constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    /// Builds ℤ_p, rejecting composite moduli (and anything that does not fit in 32 bits).
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(FieldError::CompositeModulus(p));
        }
        Ok(FieldSpec { p: p as u32 })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary integer into the field.
    #[inline]
    pub fn element(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u32)
    }

    /// `+1` or `-1` as a field element.
    #[inline]
    pub fn sign(&self, positive: bool) -> FieldElement {
        if positive {
            FieldElement::ONE
        } else {
            FieldElement(self.p - 1)
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a.0 as u64 + b.0 as u64;
        let p = self.p as u64;
        FieldElement(if s >= p { s - p } else { s } as u32)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a.0 == 0 {
            a
        } else {
            FieldElement(self.p - a.0)
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let (mut old_r, mut r) = (a.0 as i64, self.p as i64);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        debug_assert_eq!(old_r, 1);
        Ok(self.element(old_s))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(f(2).characteristic(), 2);
        assert_eq!(f(11).characteristic(), 11);
        assert_eq!(FieldSpec::new(4), Err(FieldError::CompositeModulus(4)));
        assert_eq!(FieldSpec::new(393), Err(FieldError::CompositeModulus(393)));
        assert!(FieldSpec::new(0).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(7919).is_ok());
        assert!(FieldSpec::new(1_000_003).is_ok());
    }

    #[test]
    fn small_examples() {
        let z11 = f(11);
        let z2 = f(2);
        assert_eq!(z11.add(z11.element(5), z11.element(9)), z11.element(3));
        assert_eq!(z2.add(FieldElement::ONE, FieldElement::ONE), FieldElement::ZERO);
        assert_eq!(z11.add(FieldElement::ZERO, z11.element(7)), z11.element(7));
        assert_eq!(z11.inv(z11.element(3)).unwrap(), z11.element(4));
        assert_eq!(z2.inv(FieldElement::ONE).unwrap(), FieldElement::ONE);
        assert_eq!(z11.div(z11.element(7), z11.element(7)).unwrap(), FieldElement::ONE);
        assert_eq!(z11.inv(FieldElement::ZERO), Err(FieldError::DivisionByZero));
        assert_eq!(z11.div(FieldElement::ONE, FieldElement::ZERO), Err(FieldError::DivisionByZero));
        assert_eq!(z11.element(-1), z11.element(10));
        assert_eq!(z11.sign(false), z11.element(10));
    }

    #[test]
    fn large_prime_does_not_overflow() {
        let big = FieldSpec::new(4_294_967_291).unwrap();
        let a = big.element(4_294_967_290);
        assert_eq!(big.mul(a, a), FieldElement::ONE);
        assert_eq!(big.add(a, a), big.element(4_294_967_289));
        assert_eq!(big.inv(a).unwrap(), a);
    }

    #[test]
    fn exhaustive_inverse_small_primes() {
        for p in [2u64, 3, 5, 7, 11, 13, 101] {
            let fs = f(p);
            for v in 1..p as i64 {
                let a = fs.element(v);
                assert_eq!(fs.mul(a, fs.inv(a).unwrap()), FieldElement::ONE, "p={p} a={v}");
            }
        }
    }

    fn arb_field() -> impl Strategy<Value = FieldSpec> {
        prop::sample::select(vec![2u64, 3, 11, 7919]).prop_map(f)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn ring_axioms(fs in arb_field(), a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
            let (a, b, c) = (fs.element(a), fs.element(b), fs.element(c));
            prop_assert_eq!(fs.add(a, b), fs.add(b, a));
            prop_assert_eq!(fs.mul(a, b), fs.mul(b, a));
            prop_assert_eq!(fs.add(fs.add(a, b), c), fs.add(a, fs.add(b, c)));
            prop_assert_eq!(fs.mul(fs.mul(a, b), c), fs.mul(a, fs.mul(b, c)));
            prop_assert_eq!(fs.mul(a, fs.add(b, c)), fs.add(fs.mul(a, b), fs.mul(a, c)));
            prop_assert_eq!(fs.add(fs.neg(a), a), FieldElement::ZERO);
            let p = fs.characteristic();
            for v in [fs.add(a, b), fs.mul(a, b), fs.neg(a), fs.sub(a, b)] {
                prop_assert!(v.value() < p);
            }
            if !a.is_zero() {
                let ia = fs.inv(a).unwrap();
                prop_assert!(ia.value() < p);
                prop_assert_eq!(fs.mul(a, ia), FieldElement::ONE);
                prop_assert_eq!(fs.div(b, a).unwrap(), fs.mul(b, ia));
            }
        }
    }
}
