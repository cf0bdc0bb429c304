//! Validated interval arithmetic with exact rational endpoints, used for
//! sign determination at real embeddings and for the floating canonical
//! embedding.

use num_traits::{One, Signed, Zero};

use crate::poly::Poly;
use crate::rational::{floor_sqrt_rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(r: Rat) -> Self {
        RatInterval {
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign if determined: Some(-1) or Some(1); None if the interval
    /// straddles zero.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, other: &RatInterval) -> RatInterval {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        RatInterval::new(lo, hi)
    }

    pub fn scale(&self, r: &Rat) -> RatInterval {
        if r.is_negative() {
            RatInterval::new(&self.hi * r, &self.lo * r)
        } else {
            RatInterval::new(&self.lo * r, &self.hi * r)
        }
    }

    pub fn add_scalar(&self, r: &Rat) -> RatInterval {
        RatInterval::new(&self.lo + r, &self.hi + r)
    }

    /// Outer enclosure of the square root (requires lo >= 0). `precision`
    /// is the dyadic denominator exponent of the enclosure endpoints.
    pub fn sqrt_outer(&self, precision: u32) -> RatInterval {
        assert!(
            !self.lo.is_negative(),
            "sqrt of an interval reaching below zero"
        );
        RatInterval::new(
            sqrt_below(&self.lo, precision),
            sqrt_above(&self.hi, precision),
        )
    }
}

/// Rational lower bound on sqrt(r) within 2^-precision.
pub fn sqrt_below(r: &Rat, precision: u32) -> Rat {
    debug_assert!(!r.is_negative());
    let scale = Rat::from_integer(num_bigint::BigInt::one() << (2 * precision));
    let k = floor_sqrt_rat(&(r * &scale));
    Rat::new(k, num_bigint::BigInt::one() << precision)
}

/// Rational upper bound on sqrt(r) within 2^-precision.
pub fn sqrt_above(r: &Rat, precision: u32) -> Rat {
    debug_assert!(!r.is_negative());
    let scale = Rat::from_integer(num_bigint::BigInt::one() << (2 * precision));
    let k = floor_sqrt_rat(&(r * &scale)) + 1;
    let cand = Rat::new(k, num_bigint::BigInt::one() << precision);
    debug_assert!(&cand * &cand >= *r);
    cand
}

/// Horner evaluation of p over an interval enclosure of the variable.
pub fn eval_poly_interval(p: &Poly, x: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::point(Rat::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add_scalar(c);
    }
    acc
}
