//! Dense univariate polynomials over Q, Sturm sequences, cyclotomic
//! polynomials, and mod-p arithmetic for the irreducibility screen.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{denominator_lcm, sign_of, Rat};

/// Coefficients in ascending degree order; no trailing zeros; the zero
/// polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    c: Vec<Rat>,
}

impl Poly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { c: vec![Rat::one()] }
    }

    pub fn x() -> Self {
        Poly {
            c: vec![Rat::zero(), Rat::one()],
        }
    }

    pub fn constant(r: Rat) -> Self {
        Poly::new(vec![r])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&x| Rat::from_integer(x.into())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.c.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn leading(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.c.len().max(other.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.c.len().max(other.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.c.iter().map(|x| -x.clone()).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rat::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    pub fn scale(&self, r: &Rat) -> Poly {
        Poly::new(self.c.iter().map(|x| x * r).collect())
    }

    /// Euclidean division: self = q * div + r with deg r < deg div.
    pub fn divmod(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        let lead = div.leading();
        let mut rem = self.c.clone();
        if rem.len() <= dd {
            return (Poly::zero(), Poly::new(rem));
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let f = &rem[i] / &lead;
            if f.is_zero() {
                continue;
            }
            quot[i - dd] = f.clone();
            for (j, b) in div.c.iter().enumerate() {
                let t = &f * b;
                rem[i - dd + j] -= t;
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, div: &Poly) -> Poly {
        self.divmod(div).1
    }

    /// Exact divisibility test with quotient.
    pub fn divide_exact(&self, div: &Poly) -> Option<Poly> {
        let (q, r) = self.divmod(div);
        r.is_zero().then_some(q)
    }

    pub fn derivative(&self) -> Poly {
        if self.c.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.c[1..]
                .iter()
                .enumerate()
                .map(|(i, x)| x * Rat::from_integer((i as i64 + 1).into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Monic gcd over Q.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading();
        a.scale(&(Rat::one() / lead))
    }

    pub fn make_monic(&self) -> Poly {
        assert!(!self.is_zero());
        self.scale(&(Rat::one() / self.leading()))
    }

    /// Clears denominators and content: primitive integer coefficients with
    /// positive leading coefficient.
    pub fn primitive_int(&self) -> Vec<BigInt> {
        assert!(!self.is_zero());
        let d = denominator_lcm(self.c.iter());
        let mut ints: Vec<BigInt> = self.c.iter().map(|r| r.numer() * (&d / r.denom())).collect();
        let g = crate::rational::content(ints.iter());
        if !g.is_one() && !g.is_zero() {
            for x in &mut ints {
                *x /= &g;
            }
        }
        if ints.last().unwrap().is_negative() {
            for x in &mut ints {
                *x = -std::mem::take(x);
            }
        }
        ints
    }

    pub fn from_int(c: &[BigInt]) -> Poly {
        Poly::new(c.iter().map(|x| Rat::from_integer(x.clone())).collect())
    }
}

/// Sturm chain of f: f, f', then negated remainders. Each entry is
/// rescaled by a positive rational to primitive integer coefficients,
/// which preserves sign variations and keeps coefficient growth tame.
pub fn sturm_chain(f: &Poly) -> Vec<Poly> {
    let normalize = |p: Poly| -> Poly {
        if p.is_zero() {
            return p;
        }
        let sign = if p.leading().is_negative() {
            -Rat::one()
        } else {
            Rat::one()
        };
        let prim = Poly::from_int(&p.primitive_int());
        // primitive_int forces a positive leading coefficient; restore it.
        if sign.is_one() {
            prim
        } else {
            prim.neg()
        }
    };
    let mut chain = vec![normalize(f.clone()), normalize(f.derivative())];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let r = chain[n - 2].rem(&chain[n - 1]).neg();
        if r.is_zero() {
            return chain;
        }
        chain.push(normalize(r));
    }
}

fn sign_variations(chain: &[Poly], x: &Rat) -> usize {
    let mut vars = 0;
    let mut prev = 0i32;
    for p in chain {
        let s = sign_of(&p.eval(x));
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            vars += 1;
        }
        prev = s;
    }
    vars
}

/// Number of distinct real roots of squarefree f in the interval (a, b].
pub fn sturm_count(chain: &[Poly], a: &Rat, b: &Rat) -> usize {
    sign_variations(chain, a) - sign_variations(chain, b)
}

/// Cauchy bound: all real roots of f lie in (-B, B).
pub fn root_bound(f: &Poly) -> Rat {
    let lead = f.leading();
    let mut m = Rat::zero();
    for c in &f.coeffs()[..f.coeffs().len() - 1] {
        let a = (c / &lead).abs();
        if a > m {
            m = a;
        }
    }
    m + Rat::one()
}

/// Count of distinct real roots of a squarefree polynomial.
pub fn real_root_count(f: &Poly) -> usize {
    let chain = sturm_chain(f);
    let b = root_bound(f);
    sturm_count(&chain, &-b.clone(), &b)
}

/// Isolates all real roots of squarefree f into disjoint open intervals
/// (lo, hi) with f(lo), f(hi) != 0, sorted ascending.
pub fn isolate_real_roots(f: &Poly) -> Vec<(Rat, Rat)> {
    let chain = sturm_chain(f);
    let b = root_bound(f);
    let mut stack = vec![(-b.clone(), b.clone())];
    let mut out = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        let count = sturm_count(&chain, &lo, &hi);
        if count == 0 {
            continue;
        }
        if count == 1 && !f.eval(&lo).is_zero() && !f.eval(&hi).is_zero() {
            out.push((lo, hi));
            continue;
        }
        let mut mid = (&lo + &hi) / Rat::from_integer(2.into());
        // A rational root can land exactly on the midpoint; nudge.
        while f.eval(&mid).is_zero() {
            mid = (&lo + &mid) / Rat::from_integer(2.into());
        }
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// One bisection step on an isolating interval of f. Keeps the root inside
/// and both endpoint values nonzero; halves the width (or better).
pub fn refine_interval(f: &Poly, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let two = Rat::from_integer(2.into());
    let mid = (lo + hi) / &two;
    let fm = f.eval(&mid);
    if fm.is_zero() {
        // Exact hit: re-center a quarter-width window around the root.
        let w = (hi - lo) / Rat::from_integer(4.into());
        return (&mid - &w, &mid + &w);
    }
    let fl = f.eval(lo);
    if sign_of(&fl) * sign_of(&fm) < 0 {
        (lo.clone(), mid)
    } else {
        (mid, hi.clone())
    }
}

/// The n-th cyclotomic polynomial, by exact division of x^n - 1 by the
/// cyclotomic polynomials of the proper divisors of n.
pub fn cyclotomic(n: u64) -> Poly {
    assert!(n >= 1);
    let mut xn1 = vec![Rat::zero(); n as usize + 1];
    xn1[0] = -Rat::one();
    xn1[n as usize] = Rat::one();
    let mut f = Poly::new(xn1);
    for d in 1..n {
        if n % d == 0 {
            f = f
                .divide_exact(&cyclotomic(d))
                .expect("cyclotomic division is exact");
        }
    }
    f
}

/// Euler's totient.
pub fn euler_phi(m: u64) -> u64 {
    assert!(m >= 1);
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x] for the irreducibility screen.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyZp {
    pub c: Vec<u64>,
    pub p: u64,
}

impl PolyZp {
    pub fn new(mut c: Vec<u64>, p: u64) -> Self {
        for x in &mut c {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyZp { c, p }
    }

    pub fn from_int(f: &[BigInt], p: u64) -> Self {
        let pm = BigInt::from(p);
        PolyZp::new(
            f.iter()
                .map(|x| {
                    let mut r = x % &pm;
                    if r.is_negative() {
                        r += &pm;
                    }
                    u64::try_from(r).expect("reduced residue fits in u64")
                })
                .collect(),
            p,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn mul(&self, other: &PolyZp) -> PolyZp {
        if self.is_zero() || other.is_zero() {
            return PolyZp::new(Vec::new(), self.p);
        }
        let mut c = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in other.c.iter().enumerate() {
                c[i + j] = (c[i + j] + self.mulmod(a, b)) % self.p;
            }
        }
        PolyZp::new(c, self.p)
    }

    pub fn rem(&self, div: &PolyZp) -> PolyZp {
        let dd = div.degree().expect("division by zero polynomial");
        let lead_inv = mod_inverse(div.c[dd], self.p);
        let mut rem = self.c.clone();
        while rem.len() > dd {
            let i = rem.len() - 1;
            let f = self.mulmod(rem[i], lead_inv);
            if f != 0 {
                for (j, &b) in div.c.iter().enumerate() {
                    let idx = i - dd + j;
                    let t = self.mulmod(f, b);
                    rem[idx] = (rem[idx] + self.p - t) % self.p;
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        PolyZp::new(rem, self.p)
    }

    pub fn gcd(&self, other: &PolyZp) -> PolyZp {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// x^(p^e) mod self, by iterated Frobenius.
    pub fn frobenius_power(&self, e: u32) -> PolyZp {
        let mut h = PolyZp::new(vec![0, 1], self.p); // x
        for _ in 0..e {
            h = h.powmod(self.p, self);
        }
        h
    }

    pub fn powmod(&self, mut e: u64, modulus: &PolyZp) -> PolyZp {
        let mut base = self.rem(modulus);
        let mut acc = PolyZp::new(vec![1], self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: p prime.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = ((result as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        e >>= 1;
    }
    result
}

/// Rabin's deterministic irreducibility test for f mod p (f squarefree
/// mod p, p prime, p not dividing the leading coefficient).
pub fn is_irreducible_mod_p(f: &PolyZp) -> bool {
    let Some(d) = f.degree() else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x = PolyZp::new(vec![0, 1], f.p);
    // x^(p^d) == x mod f
    let frob_d = f.frobenius_power(d as u32);
    let diff = sub_zp(&frob_d, &x);
    if !diff.is_zero() {
        return false;
    }
    // gcd(x^(p^(d/q)) - x, f) == const for every prime q | d
    let mut dd = d;
    let mut qs = Vec::new();
    let mut q = 2;
    while q * q <= dd {
        if dd % q == 0 {
            qs.push(q);
            while dd % q == 0 {
                dd /= q;
            }
        }
        q += 1;
    }
    if dd > 1 {
        qs.push(dd);
    }
    for q in qs {
        let frob = f.frobenius_power((d / q) as u32);
        let diff = sub_zp(&frob, &x);
        let g = f.gcd(&diff);
        if g.degree().map_or(false, |dg| dg >= 1) {
            return false;
        }
    }
    true
}

fn sub_zp(a: &PolyZp, b: &PolyZp) -> PolyZp {
    let p = a.p;
    let n = a.c.len().max(b.c.len());
    PolyZp::new(
        (0..n)
            .map(|i| {
                let x = a.c.get(i).copied().unwrap_or(0);
                let y = b.c.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
        p,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn divmod_round_trip() {
        let f = Poly::from_i64(&[1, -2, 0, 1, 3]);
        let g = Poly::from_i64(&[2, 1, 1]);
        let (q, r) = f.divmod(&g);
        assert_eq!(q.mul(&g).add(&r), f);
        assert!(r.degree().unwrap_or(0) < g.degree().unwrap());
    }

    #[test]
    fn gcd_of_multiples() {
        let g = Poly::from_i64(&[1, 1]); // x + 1
        let a = g.mul(&Poly::from_i64(&[3, 0, 1]));
        let b = g.mul(&Poly::from_i64(&[-1, 2]));
        assert_eq!(a.gcd(&b), g.make_monic());
    }

    #[test]
    fn sturm_counts_roots() {
        // (x^2 - 3): two real roots
        assert_eq!(real_root_count(&Poly::from_i64(&[-3, 0, 1])), 2);
        // x^2 + 1: none
        assert_eq!(real_root_count(&Poly::from_i64(&[1, 0, 1])), 0);
        // x^3 - x^2 - 2x + 1: three (totally real cubic)
        assert_eq!(real_root_count(&Poly::from_i64(&[1, -2, -1, 1])), 3);
        // x^4 + 1: none
        assert_eq!(real_root_count(&Poly::from_i64(&[1, 0, 0, 0, 1])), 0);
    }

    #[test]
    fn isolation_separates_and_brackets() {
        let f = Poly::from_i64(&[1, -2, -1, 1]);
        let roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 3);
        for (lo, hi) in &roots {
            assert!(lo < hi);
            assert!(sign_of(&f.eval(lo)) * sign_of(&f.eval(hi)) < 0);
        }
        // Roots are 2cos(5pi/7), 2cos(3pi/7), 2cos(pi/7).
        let approx = [-1.2469796, 0.4450419, 1.8019377];
        for ((lo, hi), a) in roots.iter().zip(approx) {
            let (mut lo, mut hi) = (lo.clone(), hi.clone());
            for _ in 0..30 {
                (lo, hi) = refine_interval(&f, &lo, &hi);
            }
            let mid = crate::rational::rat_to_f64(&((lo + hi) / rat_int(2)));
            assert!((mid - a).abs() < 1e-3, "{mid} vs {a}");
        }
    }

    #[test]
    fn refine_handles_exact_rational_root() {
        let f = Poly::from_i64(&[-1, 1]); // x - 1, root at the midpoint of (0, 2)
        let (lo, hi) = refine_interval(&f, &rat_int(0), &rat_int(2));
        assert!(lo < rat_int(1) && rat_int(1) < hi);
        assert!(!f.eval(&lo).is_zero() && !f.eval(&hi).is_zero());
        assert_eq!(&hi - &lo, rat_int(1));
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), Poly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), Poly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(4), Poly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(7), Poly::from_i64(&[1, 1, 1, 1, 1, 1, 1]));
        // Phi_14(x) = x^6 - x^5 + x^4 - x^3 + x^2 - x + 1
        assert_eq!(cyclotomic(14), Poly::from_i64(&[1, -1, 1, -1, 1, -1, 1]));
    }

    #[test]
    fn totient_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(6), 2);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(10), 4);
        assert_eq!(euler_phi(14), 6);
        assert_eq!(euler_phi(60), 16);
    }

    #[test]
    fn mod_p_irreducibility() {
        // x^2 - 3 mod 5: 3 is a non-residue, irreducible.
        let f = PolyZp::from_int(&[(-3).into(), 0.into(), 1.into()], 5);
        assert!(is_irreducible_mod_p(&f));
        // x^2 - 1 mod 5 factors.
        let g = PolyZp::from_int(&[(-1).into(), 0.into(), 1.into()], 5);
        assert!(!is_irreducible_mod_p(&g));
        // x^3 + x^2 + 1 irreducible mod 2 (no roots, degree 3).
        let h = PolyZp::from_int(&[1.into(), 0.into(), 1.into(), 1.into()], 2);
        assert!(is_irreducible_mod_p(&h));
        // x^4 + 1 reducible mod every prime.
        for p in [3u64, 5, 7, 11, 13] {
            let k = PolyZp::from_int(&[1.into(), 0.into(), 0.into(), 0.into(), 1.into()], p);
            assert!(!is_irreducible_mod_p(&k), "x^4+1 mod {p}");
        }
    }
}
