//! Exact scalars: arbitrary-precision rationals and small helpers on them.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The exact scalar type used throughout the crate. Always stored reduced
/// with a positive denominator (guaranteed by `num_rational`).
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Parses "p/q" or "p" into an exact rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let num: BigInt = p.trim().parse().ok()?;
            let den: BigInt = q.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(Rat::new(num, den))
        }
        None => {
            let num: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(num))
        }
    }
}

/// Serializes a rational as "p" or "p/q" (lossless, re-parseable).
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest integer, ties toward even-independent half-up on the absolute
/// value (any fixed tie rule works for size reduction).
pub fn round_rat(r: &Rat) -> BigInt {
    r.round().to_integer()
}

pub fn floor_rat(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Out of f64 range: saturate with the right sign.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Floor of sqrt(r) for r >= 0, as an exact integer.
pub fn floor_sqrt_rat(r: &Rat) -> BigInt {
    assert!(!r.is_negative(), "floor_sqrt_rat of negative rational");
    // floor(sqrt(n/d)) = floor(sqrt(floor_div(n*d, d^2) ...)): use
    // isqrt(n*d)/d adjusted by exact checks.
    let nd = r.numer() * r.denom();
    let mut k = nd.sqrt() / r.denom();
    // Fix up: want largest k with k^2 <= r, i.e. k^2 * den <= num.
    while (&k + 1u32) * (&k + 1u32) * r.denom() <= r.numer().clone() {
        k += 1u32;
    }
    while &k * &k * r.denom() > r.numer().clone() {
        k -= 1u32;
    }
    k
}

/// Largest integer k with k <= c + sqrt(q), for q >= 0.
/// The predicate "k <= c + sqrt(q)" is decided exactly:
/// k - c <= 0, or (k - c)^2 <= q.
pub fn floor_plus_sqrt(c: &Rat, q: &Rat) -> BigInt {
    debug_assert!(!q.is_negative());
    let le = |k: &BigInt| -> bool {
        let t = Rat::from_integer(k.clone()) - c;
        !t.is_positive() || &t * &t <= *q
    };
    // Initial guess from floating point, then exact adjustment.
    let guess = (rat_to_f64(c) + rat_to_f64(q).max(0.0).sqrt()).floor();
    let mut k = if guess.is_finite() {
        BigInt::from(guess as i64)
    } else {
        floor_rat(c) + floor_sqrt_rat(q)
    };
    while le(&(&k + 1u32)) {
        k += 1u32;
    }
    while !le(&k) {
        k -= 1u32;
    }
    k
}

/// Smallest integer k with k >= c - sqrt(q), for q >= 0.
pub fn ceil_minus_sqrt(c: &Rat, q: &Rat) -> BigInt {
    -floor_plus_sqrt(&-c.clone(), q)
}

/// Lcm of the denominators of a sequence of rationals (at least 1).
pub fn denominator_lcm<'a>(it: impl Iterator<Item = &'a Rat>) -> BigInt {
    let mut l = BigInt::one();
    for r in it {
        l = num_integer::lcm(l, r.denom().clone());
    }
    l
}

/// Gcd of a sequence of integers; 0 for an empty/zero sequence.
pub fn content<'a>(it: impl Iterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for x in it {
        g = num_integer::gcd(g, x.clone());
        if g.is_one() {
            break;
        }
    }
    g
}

/// Exact k-th root of a non-negative rational, if it is rational.
pub fn rat_nth_root(r: &Rat, k: u32) -> Option<Rat> {
    assert!(k >= 1);
    if r.is_negative() {
        return None;
    }
    let rn = r.numer().nth_root(k);
    let rd = r.denom().nth_root(k);
    if &rn.pow(k) == r.numer() && &rd.pow(k) == r.denom() {
        Some(Rat::new(rn, rd))
    } else {
        None
    }
}

/// Writes r^(1/k) as base^(1/index) with the smallest possible index
/// (index = 1 means the root is rational). Uses trial-division
/// factorization, adequate for determinant-sized inputs.
pub fn simplify_root(r: &Rat, k: u32) -> (Rat, u32) {
    assert!(r.is_positive());
    if let Some(root) = rat_nth_root(r, k) {
        return (root, 1);
    }
    let mut exps: Vec<(BigInt, i64)> = Vec::new();
    let mut collect = |n: &BigInt, sign: i64| -> bool {
        let mut n = n.abs();
        let mut p = BigInt::from(2u32);
        while &p * &p <= n {
            while (&n % &p).is_zero() {
                n /= &p;
                if let Some(e) = exps.iter_mut().find(|(q, _)| q == &p) {
                    e.1 += sign;
                } else {
                    exps.push((p.clone(), sign));
                }
            }
            p += 1u32;
            if p.bits() > 22 {
                return false; // give up on pretty factorizations
            }
        }
        if !n.is_one() {
            if let Some(e) = exps.iter_mut().find(|(q, _)| q == &n) {
                e.1 += sign;
            } else {
                exps.push((n, sign));
            }
        }
        true
    };
    if !collect(r.numer(), 1) || !collect(r.denom(), -1) {
        return (r.clone(), k);
    }
    let mut g = i64::from(k);
    for (_, e) in &exps {
        g = num_integer::gcd(g, e.abs());
    }
    let g = g.max(1);
    let mut base = Rat::one();
    for (p, e) in &exps {
        let reduced = (e / g) as i32;
        base *= Rat::from_integer(p.clone()).pow(reduced);
    }
    (base, k / g as u32)
}

/// Sign of g evaluated at the sign structure: -1, 0, +1.
pub fn sign_of(r: &Rat) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-7/2", "0", "282475249"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
        assert_eq!(parse_rat("4/6").map(|r| fmt_rat(&r)).unwrap(), "2/3");
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("x").is_none());
    }

    #[test]
    fn floor_sqrt_exact() {
        assert_eq!(floor_sqrt_rat(&rat_int(16)), big(4));
        assert_eq!(floor_sqrt_rat(&rat_int(15)), big(3));
        assert_eq!(floor_sqrt_rat(&rat(1, 2)), big(0));
        assert_eq!(floor_sqrt_rat(&rat(9, 4)), big(1));
    }

    #[test]
    fn sqrt_interval_bounds() {
        // floor(1 + sqrt(2)) = 2, ceil(1 - sqrt(2)) = 0
        assert_eq!(floor_plus_sqrt(&rat_int(1), &rat_int(2)), big(2));
        assert_eq!(ceil_minus_sqrt(&rat_int(1), &rat_int(2)), big(0));
        // Exact boundary: floor(0 + sqrt(4)) = 2
        assert_eq!(floor_plus_sqrt(&rat_int(0), &rat_int(4)), big(2));
        assert_eq!(ceil_minus_sqrt(&rat_int(0), &rat_int(4)), big(-2));
    }

    #[test]
    fn nth_roots() {
        assert_eq!(rat_nth_root(&rat_int(16), 4), Some(rat_int(2)));
        assert_eq!(rat_nth_root(&rat_int(16), 8), None);
        assert_eq!(rat_nth_root(&rat(16, 81), 4), Some(rat(2, 3)));
        // 16^(1/8) = 2^(1/2)
        assert_eq!(simplify_root(&rat_int(16), 8), (rat_int(2), 2));
        assert_eq!(simplify_root(&rat_int(16), 4), (rat_int(2), 1));
    }
}
