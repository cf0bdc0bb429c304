//! Arithmetic in a totally real number field K = Q[x]/(f), with exact
//! trace and norm, exact sign determination at every real embedding, and
//! the real subfields of cyclotomic fields.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{eval_poly_interval, RatInterval};
use crate::matrix::RatMatrix;
use crate::poly::{
    cyclotomic, is_irreducible_mod_p, isolate_real_roots, real_root_count, refine_interval, Poly,
    PolyZp,
};
use crate::rational::{rat_to_f64, Rat};

pub use crate::poly::euler_phi;

/// An element of K, as rational coordinates in the power basis of the
/// defining root. Always has exactly `degree` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElem {
    coeffs: Vec<Rat>,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }
}

/// A totally real number field with a fixed integral basis and isolated,
/// refinable real-root intervals (ascending order fixes the embeddings).
#[derive(Debug)]
pub struct NumberField {
    min_poly: Poly,
    degree: usize,
    /// Rows are the integral basis elements in power-basis coordinates.
    integral_basis: RatMatrix,
    /// theta^(degree+i) reduced mod f, for i = 0..degree-2.
    power_reductions: Vec<Vec<Rat>>,
    /// Isolating intervals for the roots of f, ascending; refined on demand.
    roots: Mutex<Vec<(Rat, Rat)>>,
}

impl NumberField {
    /// Builds K = Q[x]/(f) for a monic polynomial with all roots real,
    /// verifying: squarefreeness, total realness (Sturm count = degree),
    /// irreducibility (rational-root screen, three-prime modular screen,
    /// and a deterministic real-root subset reconstruction fallback), and
    /// multiplicative closure of the integral basis.
    pub fn from_poly(coeffs: Vec<Rat>, integral_basis: Option<Vec<Vec<Rat>>>) -> Result<Self> {
        let f = Poly::new(coeffs);
        let degree = match f.degree() {
            None | Some(0) => {
                return Err(Error::BadMinimalPolynomial(
                    "degree must be at least 1".into(),
                ))
            }
            Some(d) => d,
        };
        if !f.is_monic() {
            return Err(Error::BadMinimalPolynomial("polynomial must be monic".into()));
        }
        let deriv_gcd = f.gcd(&f.derivative());
        if deriv_gcd.degree() != Some(0) {
            return Err(Error::BadMinimalPolynomial(
                "polynomial must be squarefree".into(),
            ));
        }
        if real_root_count(&f) != degree {
            return Err(Error::NotTotallyReal);
        }
        if !is_irreducible_over_q(&f)? {
            return Err(Error::ReduciblePolynomial);
        }
        let root_intervals = isolate_real_roots(&f);
        debug_assert_eq!(root_intervals.len(), degree);

        let power_reductions = compute_power_reductions(&f, degree);

        let basis_mat = match integral_basis {
            None => RatMatrix::identity(degree),
            Some(rows) => {
                if rows.len() != degree || rows.iter().any(|r| r.len() != degree) {
                    return Err(Error::IntegralBasisNotClosed);
                }
                RatMatrix::from_rows(rows)
            }
        };

        let field = NumberField {
            min_poly: f,
            degree,
            integral_basis: basis_mat,
            power_reductions,
            roots: Mutex::new(root_intervals),
        };
        field.verify_integral_basis()?;
        Ok(field)
    }

    /// K = Q(zeta_m + zeta_m^{-1}), the maximal real subfield of the m-th
    /// cyclotomic field, of degree phi(m)/2 (degree-1 inputs yield Q).
    ///
    /// Cyclotomic polynomials of index >= 3 are palindromic, so
    /// Phi_m(z) / z^(phi(m)/2) rewrites as a monic polynomial in z + 1/z
    /// via the recurrence p_{k+1} = x p_k - p_{k-1} for z^k + z^-k.
    pub fn real_cyclotomic(m: u64) -> Result<Self> {
        assert!(m >= 3, "index must be at least 3");
        let phi = cyclotomic(m);
        let d = phi.degree().unwrap();
        debug_assert_eq!(d % 2, 0);
        let half = d / 2;
        let mut p_prev = Poly::constant(Rat::from_integer(2.into())); // z^0 + z^0
        let mut p_cur = Poly::x();
        let mut q = Poly::constant(phi.coeff(half));
        for k in 1..=half {
            q = q.add(&p_cur.scale(&phi.coeff(half + k)));
            if k < half {
                let next = Poly::x().mul(&p_cur).sub(&p_prev);
                p_prev = p_cur;
                p_cur = next;
            }
        }
        NumberField::from_poly(q.coeffs().to_vec(), None)
    }

    /// The rational field Q, represented with minimal polynomial x.
    pub fn rationals() -> Self {
        NumberField::from_poly(vec![Rat::zero(), Rat::one()], None).expect("Q is a valid field")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn min_poly(&self) -> &Poly {
        &self.min_poly
    }

    pub fn same_field(&self, other: &NumberField) -> bool {
        self.min_poly == other.min_poly && self.integral_basis == other.integral_basis
    }

    pub fn integral_basis(&self) -> Vec<FieldElem> {
        (0..self.degree)
            .map(|i| FieldElem {
                coeffs: self.integral_basis.row(i).to_vec(),
            })
            .collect()
    }

    // -- element construction ------------------------------------------------

    /// Element from power-basis coordinates; shorter vectors are padded.
    pub fn elem(&self, mut coeffs: Vec<Rat>) -> Result<FieldElem> {
        if coeffs.len() > self.degree {
            // Reduce a longer polynomial mod f.
            let p = Poly::new(coeffs);
            let r = p.rem(&self.min_poly);
            let mut c = r.coeffs().to_vec();
            c.resize(self.degree, Rat::zero());
            return Ok(FieldElem { coeffs: c });
        }
        coeffs.resize(self.degree, Rat::zero());
        Ok(FieldElem { coeffs })
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            coeffs: vec![Rat::zero(); self.degree],
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_rational(Rat::one())
    }

    pub fn from_rational(&self, r: Rat) -> FieldElem {
        let mut coeffs = vec![Rat::zero(); self.degree];
        coeffs[0] = r;
        FieldElem { coeffs }
    }

    /// The defining root theta (zero in a degree-1 field, where theta is
    /// the rational root itself).
    pub fn gen(&self) -> FieldElem {
        if self.degree == 1 {
            return self.from_rational(-self.min_poly.coeff(0));
        }
        let mut coeffs = vec![Rat::zero(); self.degree];
        coeffs[1] = Rat::one();
        FieldElem { coeffs }
    }

    // -- ring operations -----------------------------------------------------

    pub fn add(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self, x: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: x.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn mul(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let n = self.degree;
        let mut prod = vec![Rat::zero(); 2 * n - 1];
        for (i, a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        // Fold coefficients of theta^n .. theta^(2n-2) through the
        // precomputed reductions.
        let mut coeffs: Vec<Rat> = prod[..n].to_vec();
        for (i, c) in prod[n..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, r) in self.power_reductions[i].iter().enumerate() {
                coeffs[k] += c * r;
            }
        }
        FieldElem { coeffs }
    }

    pub fn scale(&self, x: &FieldElem, r: &Rat) -> FieldElem {
        FieldElem {
            coeffs: x.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// (x, f) in Q[t]; f irreducible ensures gcd 1 for x != 0.
    pub fn inv(&self, x: &FieldElem) -> Result<FieldElem> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, u) = ext_gcd_bezout(&x.poly(), &self.min_poly);
        debug_assert_eq!(g.degree(), Some(0));
        let scale = Rat::one() / g.coeff(0);
        self.elem(u.scale(&scale).coeffs().to_vec())
    }

    pub fn div(&self, x: &FieldElem, y: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &FieldElem, e: u64) -> FieldElem {
        let mut acc = self.one();
        let mut base = x.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    // -- trace, norm, signs --------------------------------------------------

    /// Matrix of multiplication by x on the power basis (row k is the
    /// coordinate vector of x * theta^k).
    pub fn mult_matrix(&self, x: &FieldElem) -> RatMatrix {
        let mut rows = Vec::with_capacity(self.degree);
        let mut cur = x.clone();
        rows.push(cur.coeffs.clone());
        for _ in 1..self.degree {
            cur = self.mul(&cur, &self.gen_power_elem());
            rows.push(cur.coeffs.clone());
        }
        RatMatrix::from_rows(rows)
    }

    fn gen_power_elem(&self) -> FieldElem {
        if self.degree == 1 {
            // theta is rational; multiplication by it is scaling.
            return self.gen();
        }
        let mut coeffs = vec![Rat::zero(); self.degree];
        coeffs[1] = Rat::one();
        FieldElem { coeffs }
    }

    /// Exact absolute trace, from the multiplication matrix.
    pub fn trace_q(&self, x: &FieldElem) -> Rat {
        let m = self.mult_matrix(x);
        let mut t = Rat::zero();
        for i in 0..self.degree {
            t += m[(i, i)].clone();
        }
        t
    }

    /// Exact absolute norm, from the multiplication matrix.
    pub fn norm_q(&self, x: &FieldElem) -> Rat {
        self.mult_matrix(x)
            .det_exact()
            .expect("multiplication matrix is square")
    }

    /// Exact signs of x at every real embedding, in ascending root order.
    pub fn signs_at_embeddings(&self, x: &FieldElem) -> Result<Vec<i32>> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let p = x.poly();
        (0..self.degree)
            .map(|i| {
                loop {
                    let iv = self.root_interval(i);
                    let enc = eval_poly_interval(&p, &RatInterval::new(iv.0, iv.1));
                    if let Some(s) = enc.sign() {
                        return Ok(s);
                    }
                    self.refine_root(i);
                }
            })
            .collect()
    }

    pub fn is_totally_positive(&self, x: &FieldElem) -> Result<bool> {
        Ok(self.signs_at_embeddings(x)?.iter().all(|&s| s > 0))
    }

    /// Validated enclosures of x at every embedding, each of width
    /// < 2^-precision_bits, in the fixed ascending root order.
    pub fn embed_real(&self, x: &FieldElem, precision_bits: u32) -> Vec<RatInterval> {
        let p = x.poly();
        let target = Rat::new(BigInt::one(), BigInt::one() << precision_bits);
        (0..self.degree)
            .map(|i| loop {
                let iv = self.root_interval(i);
                let enc = eval_poly_interval(&p, &RatInterval::new(iv.0, iv.1));
                if enc.width() < target {
                    return enc;
                }
                self.refine_root(i);
            })
            .collect()
    }

    /// f64 approximations of the embeddings (convenience over embed_real).
    pub fn embed_f64(&self, x: &FieldElem, precision_bits: u32) -> Vec<f64> {
        self.embed_real(x, precision_bits)
            .into_iter()
            .map(|iv| rat_to_f64(&iv.mid()))
            .collect()
    }

    fn root_interval(&self, i: usize) -> (Rat, Rat) {
        let roots = self.roots.lock().unwrap();
        roots[i].clone()
    }

    fn refine_root(&self, i: usize) {
        let mut roots = self.roots.lock().unwrap();
        let (lo, hi) = roots[i].clone();
        roots[i] = refine_interval(&self.min_poly, &lo, &hi);
    }

    // -- integral basis ------------------------------------------------------

    /// Coordinates of x over the integral basis (rational in general;
    /// integral exactly when x lies in the order spanned by the basis).
    pub fn integral_coords(&self, x: &FieldElem) -> Vec<Rat> {
        self.integral_basis
            .solve_left(&x.coeffs)
            .expect("integral basis is invertible")
    }

    fn verify_integral_basis(&self) -> Result<()> {
        if self.integral_basis.rank_over_q() != self.degree {
            return Err(Error::IntegralBasisNotClosed);
        }
        let basis = self.integral_basis();
        // 1 must lie in the Z-span.
        let one_coords = self.integral_coords(&self.one());
        if !one_coords.iter().all(|c| c.denom().is_one()) {
            return Err(Error::IntegralBasisNotClosed);
        }
        for (i, wi) in basis.iter().enumerate() {
            for wj in &basis[i..] {
                let prod = self.mul(wi, wj);
                let coords = self.integral_coords(&prod);
                if !coords.iter().all(|c| c.denom().is_one()) {
                    return Err(Error::IntegralBasisNotClosed);
                }
            }
        }
        Ok(())
    }
}

fn compute_power_reductions(f: &Poly, degree: usize) -> Vec<Vec<Rat>> {
    // theta^degree = -(c_0 + c_1 theta + ... + c_{n-1} theta^{n-1})
    let mut reductions: Vec<Vec<Rat>> = Vec::with_capacity(degree.max(1) - 1);
    let mut cur: Vec<Rat> = (0..degree).map(|i| -f.coeff(i)).collect();
    if degree >= 1 {
        reductions.push(cur.clone());
    }
    for _ in 1..degree.saturating_sub(1) {
        // Multiply by theta: shift, then fold the overflow coefficient.
        let overflow = cur[degree - 1].clone();
        let mut next = vec![Rat::zero(); degree];
        for k in 1..degree {
            next[k] = cur[k - 1].clone();
        }
        if !overflow.is_zero() {
            for (k, r) in reductions[0].iter().enumerate() {
                next[k] += &overflow * r;
            }
        }
        reductions.push(next.clone());
        cur = next;
    }
    reductions
}

/// Extended gcd over Q[t]: returns (g, u) with u*a + v*f = g (v discarded).
fn ext_gcd_bezout(a: &Poly, f: &Poly) -> (Poly, Poly) {
    let mut r0 = a.clone();
    let mut r1 = f.clone();
    let mut u0 = Poly::one();
    let mut u1 = Poly::zero();
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1);
        let u = u0.sub(&q.mul(&u1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u;
    }
    (r0, u0)
}

/// Irreducibility over Q: rational-root screen, three-prime modular screen
/// (Rabin's test), then a deterministic fallback that attempts to
/// reconstruct an integer factor from every subset of the (all-real,
/// isolated) roots. Valid only for totally real squarefree input, which is
/// checked before this runs.
fn is_irreducible_over_q(f: &Poly) -> Result<bool> {
    let degree = f.degree().unwrap();
    if degree == 1 {
        return Ok(true);
    }
    // Normalize to a monic integer polynomial: g(y) = c^d f(y/c) has the
    // same factorization shape, roots scaled by c.
    let g = monic_integer_normalization(f);
    let gi = g.primitive_int();

    // Rational roots of a monic integer polynomial are integer divisors of
    // the constant term.
    if gi[0].is_zero() {
        return Ok(false); // y divides
    }
    if has_integer_root(&gi) {
        return Ok(false);
    }

    // Modular screen: any prime with f squarefree and irreducible mod p
    // certifies irreducibility over Q.
    let mut tested = 0;
    let mut p = 2u64;
    while tested < 3 {
        let fp = PolyZp::from_int(&gi, p);
        let lead_ok = fp.degree() == Some(degree);
        if lead_ok {
            let deriv: Vec<BigInt> = (1..gi.len())
                .map(|i| &gi[i] * BigInt::from(i as u64))
                .collect();
            let dp = PolyZp::from_int(&deriv, p);
            let squarefree = fp.gcd(&dp).degree() == Some(0);
            if squarefree {
                if is_irreducible_mod_p(&fp) {
                    return Ok(true);
                }
                tested += 1;
            }
        }
        p = next_prime(p);
    }

    if degree > 20 {
        return Err(Error::BadMinimalPolynomial(
            "cannot certify irreducibility beyond degree 20".into(),
        ));
    }
    Ok(!has_real_subset_factor(&g))
}

fn monic_integer_normalization(f: &Poly) -> Poly {
    let d = f.degree().unwrap();
    let den = crate::rational::denominator_lcm(f.coeffs().iter());
    if den.is_one() {
        return f.clone();
    }
    let c = Rat::from_integer(den);
    // g(y) = c^d f(y/c): coefficient of y^i is f_i * c^(d-i).
    Poly::new(
        (0..=d)
            .map(|i| f.coeff(i) * c.clone().pow((d - i) as i32))
            .collect(),
    )
}

fn has_integer_root(gi: &[BigInt]) -> bool {
    let c0 = &gi[0];
    let mut divisors = Vec::new();
    let mut k = BigInt::one();
    while &k * &k <= c0.abs() {
        if (c0 % &k).is_zero() {
            divisors.push(k.clone());
            divisors.push(c0.abs() / &k);
        }
        k += 1u32;
        if k.bits() > 21 {
            // Constant term too large to enumerate divisors; the modular
            // screen and the subset fallback still decide correctly.
            break;
        }
    }
    let eval = |x: &BigInt| -> BigInt {
        let mut acc = BigInt::zero();
        for c in gi.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    for d in divisors {
        if eval(&d).is_zero() || eval(&-d.clone()).is_zero() {
            return true;
        }
    }
    false
}

fn next_prime(p: u64) -> u64 {
    let mut q = p + 1;
    loop {
        if (2..).take_while(|d| d * d <= q).all(|d| q % d != 0) {
            return q;
        }
        q += 1;
    }
}

/// Deterministic factor search for a monic integer polynomial whose roots
/// are all real: expands every proper root subset with interval
/// coefficients, refining until each coefficient pins at most one integer,
/// then verifies candidate factors by exact division.
fn has_real_subset_factor(g: &Poly) -> bool {
    let d = g.degree().unwrap();
    let mut intervals: Vec<(Rat, Rat)> = isolate_real_roots(g);
    debug_assert_eq!(intervals.len(), d);
    let half = Rat::new(BigInt::one(), BigInt::from(2));

    for mask in 1u32..(1 << d) - 1 {
        let size = mask.count_ones() as usize;
        if size > d / 2 {
            continue; // the cofactor subset covers it
        }
        loop {
            // Expand prod (x - rho_s) over the chosen subset.
            let mut coeffs = vec![RatInterval::point(Rat::one())];
            for (i, iv) in intervals.iter().enumerate() {
                if mask & (1 << i) == 0 {
                    continue;
                }
                let root = RatInterval::new(iv.0.clone(), iv.1.clone());
                let mut next = vec![RatInterval::point(Rat::zero()); coeffs.len() + 1];
                for (k, c) in coeffs.iter().enumerate() {
                    next[k + 1] = next[k + 1].add(c);
                    next[k] = next[k].add(&c.mul(&root).neg());
                }
                coeffs = next;
            }
            let too_wide = coeffs.iter().any(|c| c.width() >= half);
            if too_wide {
                for (i, iv) in intervals.iter_mut().enumerate() {
                    if mask & (1 << i) != 0 {
                        *iv = refine_interval(g, &iv.0, &iv.1);
                    }
                }
                continue;
            }
            // Each coefficient interval pins at most one integer.
            let mut candidate = Vec::with_capacity(coeffs.len());
            let mut valid = true;
            for c in &coeffs {
                let k = c.hi.floor().to_integer();
                if Rat::from_integer(k.clone()) < c.lo {
                    valid = false;
                    break;
                }
                candidate.push(Rat::from_integer(k));
            }
            if valid {
                let cand = Poly::new(candidate);
                if cand.degree() == Some(size) && g.divide_exact(&cand).is_some() {
                    return true;
                }
            }
            break;
        }
    }
    false
}
