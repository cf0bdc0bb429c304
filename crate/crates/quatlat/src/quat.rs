//! Exact arithmetic in a quaternion algebra A = (a,b / K): multiplication,
//! conjugation, reduced trace and norm, total definiteness, and the twisted
//! trace form b_alpha.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::numfield::{FieldElem, NumberField};
use crate::rational::Rat;

/// A = K + Ki + Kj + Kij with i^2 = a, j^2 = b, ij = -ji.
#[derive(Debug)]
pub struct QuatAlgebra {
    field: Arc<NumberField>,
    a: FieldElem,
    b: FieldElem,
}

/// x = x0 + x1 i + x2 j + x3 ij, coordinates in the parent's field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuatElem {
    pub c: [FieldElem; 4],
}

impl QuatAlgebra {
    pub fn new(field: Arc<NumberField>, a: FieldElem, b: FieldElem) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroAlgebraConstant);
        }
        Ok(QuatAlgebra { field, a, b })
    }

    /// As `new`, additionally requiring total definiteness.
    pub fn new_totally_definite(
        field: Arc<NumberField>,
        a: FieldElem,
        b: FieldElem,
    ) -> Result<Self> {
        let alg = QuatAlgebra::new(field, a, b)?;
        if !alg.is_totally_definite()? {
            return Err(Error::NotTotallyDefinite);
        }
        Ok(alg)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn a(&self) -> &FieldElem {
        &self.a
    }

    pub fn b(&self) -> &FieldElem {
        &self.b
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// Dimension of A as a Q-vector space.
    pub fn global_dim(&self) -> usize {
        4 * self.field.degree()
    }

    pub fn same_algebra(&self, other: &QuatAlgebra) -> bool {
        self.field.same_field(&other.field) && self.a == other.a && self.b == other.b
    }

    /// True iff every real embedding of both a and b is negative (the base
    /// field is totally real by construction).
    pub fn is_totally_definite(&self) -> Result<bool> {
        let sa = self.field.signs_at_embeddings(&self.a)?;
        let sb = self.field.signs_at_embeddings(&self.b)?;
        Ok(sa.iter().all(|&s| s < 0) && sb.iter().all(|&s| s < 0))
    }

    // -- element construction ------------------------------------------------

    pub fn elem(&self, c0: FieldElem, c1: FieldElem, c2: FieldElem, c3: FieldElem) -> QuatElem {
        QuatElem {
            c: [c0, c1, c2, c3],
        }
    }

    pub fn zero(&self) -> QuatElem {
        let z = self.field.zero();
        self.elem(z.clone(), z.clone(), z.clone(), z)
    }

    pub fn one(&self) -> QuatElem {
        let z = self.field.zero();
        self.elem(self.field.one(), z.clone(), z.clone(), z)
    }

    pub fn gen_i(&self) -> QuatElem {
        let z = self.field.zero();
        self.elem(z.clone(), self.field.one(), z.clone(), z)
    }

    pub fn gen_j(&self) -> QuatElem {
        let z = self.field.zero();
        self.elem(z.clone(), z.clone(), self.field.one(), z)
    }

    pub fn gen_ij(&self) -> QuatElem {
        let z = self.field.zero();
        self.elem(z.clone(), z.clone(), z, self.field.one())
    }

    /// Embeds a field scalar as lambda * 1.
    pub fn from_scalar(&self, lambda: FieldElem) -> QuatElem {
        let z = self.field.zero();
        self.elem(lambda, z.clone(), z.clone(), z)
    }

    // -- ring operations -----------------------------------------------------

    pub fn add(&self, x: &QuatElem, y: &QuatElem) -> QuatElem {
        QuatElem {
            c: std::array::from_fn(|q| self.field.add(&x.c[q], &y.c[q])),
        }
    }

    pub fn sub(&self, x: &QuatElem, y: &QuatElem) -> QuatElem {
        QuatElem {
            c: std::array::from_fn(|q| self.field.sub(&x.c[q], &y.c[q])),
        }
    }

    pub fn neg(&self, x: &QuatElem) -> QuatElem {
        QuatElem {
            c: std::array::from_fn(|q| self.field.neg(&x.c[q])),
        }
    }

    /// The unique bilinear product extending i^2 = a, j^2 = b, ij = -ji.
    pub fn mul(&self, x: &QuatElem, y: &QuatElem) -> QuatElem {
        let k = &*self.field;
        let (a, b) = (&self.a, &self.b);
        let ab = k.mul(a, b);
        let p = |i: usize, j: usize| k.mul(&x.c[i], &y.c[j]);

        // 1:  x0y0 + a x1y1 + b x2y2 - ab x3y3
        let mut z0 = p(0, 0);
        z0 = k.add(&z0, &k.mul(a, &p(1, 1)));
        z0 = k.add(&z0, &k.mul(b, &p(2, 2)));
        z0 = k.sub(&z0, &k.mul(&ab, &p(3, 3)));
        // i:  x0y1 + x1y0 - b x2y3 + b x3y2
        let mut z1 = k.add(&p(0, 1), &p(1, 0));
        z1 = k.sub(&z1, &k.mul(b, &p(2, 3)));
        z1 = k.add(&z1, &k.mul(b, &p(3, 2)));
        // j:  x0y2 + x2y0 + a x1y3 - a x3y1
        let mut z2 = k.add(&p(0, 2), &p(2, 0));
        z2 = k.add(&z2, &k.mul(a, &p(1, 3)));
        z2 = k.sub(&z2, &k.mul(a, &p(3, 1)));
        // ij: x0y3 + x3y0 + x1y2 - x2y1
        let mut z3 = k.add(&p(0, 3), &p(3, 0));
        z3 = k.add(&z3, &p(1, 2));
        z3 = k.sub(&z3, &p(2, 1));

        self.elem(z0, z1, z2, z3)
    }

    /// Scalar multiplication by a field element (central, so one-sided).
    pub fn scale(&self, lambda: &FieldElem, x: &QuatElem) -> QuatElem {
        QuatElem {
            c: std::array::from_fn(|q| self.field.mul(lambda, &x.c[q])),
        }
    }

    pub fn scale_rat(&self, r: &Rat, x: &QuatElem) -> QuatElem {
        QuatElem {
            c: std::array::from_fn(|q| self.field.scale(&x.c[q], r)),
        }
    }

    /// Canonical involution: negates the i, j, ij coordinates.
    pub fn conj(&self, x: &QuatElem) -> QuatElem {
        self.elem(
            x.c[0].clone(),
            self.field.neg(&x.c[1]),
            self.field.neg(&x.c[2]),
            self.field.neg(&x.c[3]),
        )
    }

    /// Reduced trace x + conj(x) = 2 x0.
    pub fn reduced_trace(&self, x: &QuatElem) -> FieldElem {
        self.field.add(&x.c[0], &x.c[0])
    }

    /// Reduced norm x conj(x) = x0^2 - a x1^2 - b x2^2 + ab x3^2.
    pub fn reduced_norm(&self, x: &QuatElem) -> FieldElem {
        let k = &*self.field;
        let sq = |q: usize| k.mul(&x.c[q], &x.c[q]);
        let mut n = sq(0);
        n = k.sub(&n, &k.mul(&self.a, &sq(1)));
        n = k.sub(&n, &k.mul(&self.b, &sq(2)));
        let ab = k.mul(&self.a, &self.b);
        n = k.add(&n, &k.mul(&ab, &sq(3)));
        debug_assert_eq!(
            self.mul(x, &self.conj(x)).c[0],
            n,
            "closed-form reduced norm disagrees with x * conj(x)"
        );
        n
    }

    pub fn inv(&self, x: &QuatElem) -> Result<QuatElem> {
        let n = self.reduced_norm(x);
        if n.is_zero() {
            return Err(Error::NotInvertible);
        }
        let n_inv = self.field.inv(&n)?;
        Ok(self.scale(&n_inv, &self.conj(x)))
    }

    pub fn pow(&self, x: &QuatElem, e: u64) -> QuatElem {
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

    // -- the trace form ------------------------------------------------------

    /// The K-valued scalar part of x * conj(y):
    /// x0y0 - a x1y1 - b x2y2 + ab x3y3.
    fn hermitian_scalar(&self, x: &QuatElem, y: &QuatElem) -> FieldElem {
        let k = &*self.field;
        let p = |q: usize| k.mul(&x.c[q], &y.c[q]);
        let mut s = p(0);
        s = k.sub(&s, &k.mul(&self.a, &p(1)));
        s = k.sub(&s, &k.mul(&self.b, &p(2)));
        let ab = k.mul(&self.a, &self.b);
        k.add(&s, &k.mul(&ab, &p(3)))
    }

    /// b_alpha(x, y) = Tr_{K/Q}(tr_{A/K}(alpha x conj(y))), entirely in
    /// exact rational arithmetic. Errors unless alpha is totally positive
    /// and the algebra is totally definite (the form is not positive
    /// definite otherwise).
    pub fn trace_form(&self, alpha: &FieldElem, x: &QuatElem, y: &QuatElem) -> Result<Rat> {
        if !self.field.is_totally_positive(alpha)? {
            return Err(Error::NotTotallyPositive);
        }
        if !self.is_totally_definite()? {
            return Err(Error::NotTotallyDefinite);
        }
        Ok(self.trace_form_unchecked(alpha, x, y))
    }

    /// `trace_form` with the positivity preconditions assumed; used by the
    /// lattice layer which validates them once per lattice.
    pub fn trace_form_unchecked(&self, alpha: &FieldElem, x: &QuatElem, y: &QuatElem) -> Rat {
        let k = &*self.field;
        let s = self.hermitian_scalar(x, y);
        let twice = k.add(&s, &s);
        k.trace_q(&k.mul(alpha, &twice))
    }

    // -- global coordinates --------------------------------------------------
    //
    // The fixed Q-basis of A is { w_k e_q : q in 0..4, k in 0..n } with
    // w_k the integral basis of K and e_q in {1, i, j, ij}; the coordinate
    // of w_k e_q sits at index q*n + k.

    pub fn elem_to_coords(&self, x: &QuatElem) -> Vec<Rat> {
        let n = self.field.degree();
        let mut out = Vec::with_capacity(4 * n);
        for q in 0..4 {
            out.extend(self.field.integral_coords(&x.c[q]));
        }
        out
    }

    pub fn coords_to_elem(&self, v: &[Rat]) -> QuatElem {
        let n = self.field.degree();
        assert_eq!(v.len(), 4 * n);
        let basis = self.field.integral_basis();
        let comp = |q: usize| {
            let mut acc = self.field.zero();
            for k in 0..n {
                let t = self.field.scale(&basis[k], &v[q * n + k]);
                acc = self.field.add(&acc, &t);
            }
            acc
        };
        self.elem(comp(0), comp(1), comp(2), comp(3))
    }

    /// Matrix of left multiplication x -> g * x on global coordinates
    /// (row r is the coordinate vector of g * basis_r).
    pub fn left_mult_matrix(&self, g: &QuatElem) -> RatMatrix {
        self.mult_matrix_impl(g, true)
    }

    /// Matrix of right multiplication x -> x * g on global coordinates.
    pub fn right_mult_matrix(&self, g: &QuatElem) -> RatMatrix {
        self.mult_matrix_impl(g, false)
    }

    fn mult_matrix_impl(&self, g: &QuatElem, left: bool) -> RatMatrix {
        let dim = self.global_dim();
        let n = self.field.degree();
        let basis = self.field.integral_basis();
        let mut rows = Vec::with_capacity(dim);
        for q in 0..4 {
            for k in 0..n {
                let mut e = self.zero();
                e.c[q] = basis[k].clone();
                let prod = if left { self.mul(g, &e) } else { self.mul(&e, g) };
                rows.push(self.elem_to_coords(&prod));
            }
        }
        RatMatrix::from_rows(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn rationals() -> Arc<NumberField> {
        Arc::new(NumberField::rationals())
    }

    /// (-1,-1 / Q), the Hamilton quaternions over Q.
    fn hamilton_q() -> QuatAlgebra {
        let k = rationals();
        let a = k.from_rational(rat_int(-1));
        let b = k.from_rational(rat_int(-1));
        QuatAlgebra::new_totally_definite(k, a, b).unwrap()
    }

    /// (-1,-3 / Q).
    fn b2_algebra() -> QuatAlgebra {
        let k = rationals();
        let a = k.from_rational(rat_int(-1));
        let b = k.from_rational(rat_int(-3));
        QuatAlgebra::new_totally_definite(k, a, b).unwrap()
    }

    /// (-7,-1 / Q(zeta14 + zeta14^-1)).
    fn zeta14_algebra() -> QuatAlgebra {
        let k = Arc::new(NumberField::real_cyclotomic(14).unwrap());
        let a = k.from_rational(rat_int(-7));
        let b = k.from_rational(rat_int(-1));
        QuatAlgebra::new_totally_definite(k, a, b).unwrap()
    }

    #[test]
    fn defining_relations() {
        let alg = hamilton_q();
        let (i, j, ij) = (alg.gen_i(), alg.gen_j(), alg.gen_ij());
        assert_eq!(alg.mul(&i, &j), ij);
        assert_eq!(alg.mul(&j, &i), alg.neg(&ij));
        let minus_one = alg.neg(&alg.one());
        assert_eq!(alg.mul(&i, &i), minus_one);
        assert_eq!(alg.mul(&j, &j), minus_one);
        assert_eq!(alg.mul(&ij, &ij), minus_one);
        // x * 1 = x
        let x = alg.add(&i, &alg.scale_rat(&rat(2, 3), &ij));
        assert_eq!(alg.mul(&x, &alg.one()), x);
    }

    #[test]
    fn half_one_plus_j_squares() {
        // In (-1,-3/Q): ((1+j)/2)^2 = -1/2 + (1/2) j.
        let alg = b2_algebra();
        let h = alg.scale_rat(&rat(1, 2), &alg.add(&alg.one(), &alg.gen_j()));
        let sq = alg.mul(&h, &h);
        let expected = alg.add(
            &alg.scale_rat(&rat(-1, 2), &alg.one()),
            &alg.scale_rat(&rat(1, 2), &alg.gen_j()),
        );
        assert_eq!(sq, expected);
    }

    #[test]
    fn conjugation() {
        let alg = hamilton_q();
        assert_eq!(alg.conj(&alg.one()), alg.one());
        let x = alg.add(&alg.gen_i(), &alg.gen_j());
        assert_eq!(alg.conj(&x), alg.neg(&x));
        assert_eq!(alg.conj(&alg.conj(&x)), x);
        // Anti-automorphism: conj(xy) = conj(y) conj(x).
        let y = alg.add(&alg.one(), &alg.gen_ij());
        assert_eq!(
            alg.conj(&alg.mul(&x, &y)),
            alg.mul(&alg.conj(&y), &alg.conj(&x))
        );
    }

    #[test]
    fn reduced_trace_and_norm() {
        let alg = hamilton_q();
        let one = alg.one();
        assert_eq!(alg.reduced_norm(&one), alg.field().one());
        assert_eq!(
            alg.reduced_trace(&one),
            alg.field().from_rational(rat_int(2))
        );
        // Hurwitz unit: nrd((1+i+j+ij)/2) = 1.
        let h = alg.scale_rat(
            &rat(1, 2),
            &alg.add(
                &alg.add(&one, &alg.gen_i()),
                &alg.add(&alg.gen_j(), &alg.gen_ij()),
            ),
        );
        assert_eq!(alg.reduced_norm(&h), alg.field().one());
    }

    #[test]
    fn zeta14_unit_has_norm_one() {
        // y = (theta^2 - theta - 1)/2 + (beta/14) i, beta = theta^2 - 3 theta - 3.
        let alg = zeta14_algebra();
        let k = alg.field().clone();
        let y0 = k
            .elem(vec![rat(-1, 2), rat(-1, 2), rat(1, 2)])
            .unwrap();
        let y1 = k
            .elem(vec![rat(-3, 14), rat(-3, 14), rat(1, 14)])
            .unwrap();
        let y = alg.elem(y0, y1, k.zero(), k.zero());
        assert_eq!(alg.reduced_norm(&y), k.one());
    }

    #[test]
    fn norm_is_multiplicative() {
        let alg = zeta14_algebra();
        let k = alg.field().clone();
        let x = alg.elem(
            k.elem(vec![rat_int(1), rat_int(-1), rat_int(0)]).unwrap(),
            k.elem(vec![rat(1, 2), rat_int(0), rat_int(1)]).unwrap(),
            k.one(),
            k.zero(),
        );
        let y = alg.elem(
            k.zero(),
            k.elem(vec![rat_int(2), rat_int(1), rat_int(0)]).unwrap(),
            k.elem(vec![rat(-1, 3), rat_int(0), rat_int(0)]).unwrap(),
            k.one(),
        );
        let lhs = alg.reduced_norm(&alg.mul(&x, &y));
        let rhs = k.mul(&alg.reduced_norm(&x), &alg.reduced_norm(&y));
        assert_eq!(lhs, rhs);
        // Associativity on the same operands.
        let z = alg.add(&x, &alg.one());
        assert_eq!(
            alg.mul(&alg.mul(&x, &y), &z),
            alg.mul(&x, &alg.mul(&y, &z))
        );
    }

    #[test]
    fn inverse() {
        let alg = hamilton_q();
        let x = alg.add(&alg.one(), &alg.gen_i());
        let xi = alg.inv(&x).unwrap();
        assert_eq!(alg.mul(&x, &xi), alg.one());
        assert!(matches!(alg.inv(&alg.zero()), Err(Error::NotInvertible)));
    }

    #[test]
    fn total_definiteness() {
        assert!(hamilton_q().is_totally_definite().unwrap());
        // (1,-1/Q) is not totally definite.
        let k = rationals();
        let alg = QuatAlgebra::new(
            k.clone(),
            k.from_rational(rat_int(1)),
            k.from_rational(rat_int(-1)),
        )
        .unwrap();
        assert!(!alg.is_totally_definite().unwrap());
        assert!(matches!(
            QuatAlgebra::new_totally_definite(
                k.clone(),
                k.from_rational(rat_int(1)),
                k.from_rational(rat_int(-1))
            ),
            Err(Error::NotTotallyDefinite)
        ));
        // Zero constants are rejected outright.
        assert!(matches!(
            QuatAlgebra::new(k.clone(), k.zero(), k.one()),
            Err(Error::ZeroAlgebraConstant)
        ));
    }

    #[test]
    fn dihedral_recipe_algebras_are_totally_definite() {
        // (-1, t^2 - 4 / K) with t = zeta_2m + zeta_2m^-1: t^2 - 4 < 0 at
        // every embedding since |t| < 2.
        for two_m in [4u64, 6, 8, 10, 12, 14, 18] {
            let k = Arc::new(NumberField::real_cyclotomic(two_m).unwrap());
            let t = k.gen();
            let b = k.sub(&k.mul(&t, &t), &k.from_rational(rat_int(4)));
            let a = k.from_rational(rat_int(-1));
            let alg = QuatAlgebra::new(k, a, b).unwrap();
            assert!(alg.is_totally_definite().unwrap(), "2m = {two_m}");
        }
    }

    #[test]
    fn trace_form_values() {
        let alg = hamilton_q();
        let one_k = alg.field().one();
        // b_alpha(1,1) = 2 n alpha with n = 1.
        for alpha in [rat_int(1), rat(1, 2), rat_int(3)] {
            let a = alg.field().from_rational(alpha.clone());
            let v = alg.trace_form(&a, &alg.one(), &alg.one()).unwrap();
            assert_eq!(v, rat_int(2) * alpha);
        }
        // b_1(i, j) = 0.
        assert_eq!(
            alg.trace_form(&one_k, &alg.gen_i(), &alg.gen_j()).unwrap(),
            rat_int(0)
        );
        // Degree n: b_alpha(1,1) = 2 n alpha over the cubic field.
        let alg14 = zeta14_algebra();
        let a = alg14.field().from_rational(rat_int(1));
        assert_eq!(
            alg14.trace_form(&a, &alg14.one(), &alg14.one()).unwrap(),
            rat_int(6)
        );
        // alpha must be totally positive.
        let bad = alg.field().from_rational(rat_int(-1));
        assert!(matches!(
            alg.trace_form(&bad, &alg.one(), &alg.one()),
            Err(Error::NotTotallyPositive)
        ));
    }

    #[test]
    fn trace_form_adjunction_and_positivity() {
        let alg = zeta14_algebra();
        let k = alg.field().clone();
        let alpha = k.elem(vec![rat_int(2), rat_int(0), rat_int(0)]).unwrap();
        let lam = alg.elem(
            k.elem(vec![rat_int(1), rat_int(1), rat_int(0)]).unwrap(),
            k.one(),
            k.zero(),
            k.elem(vec![rat(1, 2), rat_int(0), rat_int(0)]).unwrap(),
        );
        let x = alg.add(&alg.gen_i(), &alg.scale_rat(&rat(3, 2), &alg.one()));
        let y = alg.sub(&alg.gen_j(), &alg.gen_ij());
        // b(lambda x, y) = b(x, conj(lambda) y)
        let lhs = alg
            .trace_form(&alpha, &alg.mul(&lam, &x), &y)
            .unwrap();
        let rhs = alg
            .trace_form(&alpha, &x, &alg.mul(&alg.conj(&lam), &y))
            .unwrap();
        assert_eq!(lhs, rhs);
        // Positivity on a few nonzero vectors.
        for v in [&x, &y, &lam] {
            assert!(alg.trace_form(&alpha, v, v).unwrap() > rat_int(0));
        }
    }

    #[test]
    fn global_coordinates_round_trip() {
        let alg = zeta14_algebra();
        let k = alg.field().clone();
        let x = alg.elem(
            k.elem(vec![rat(1, 2), rat_int(3), rat_int(0)]).unwrap(),
            k.zero(),
            k.elem(vec![rat_int(0), rat(-2, 7), rat_int(1)]).unwrap(),
            k.one(),
        );
        let coords = alg.elem_to_coords(&x);
        assert_eq!(coords.len(), 12);
        assert_eq!(alg.coords_to_elem(&coords), x);
    }

    #[test]
    fn mult_matrices_act_correctly() {
        let alg = hamilton_q();
        let g = alg.add(&alg.one(), &alg.gen_i());
        let x = alg.add(&alg.gen_j(), &alg.scale_rat(&rat(5, 3), &alg.gen_ij()));
        let lm = alg.left_mult_matrix(&g);
        let rm = alg.right_mult_matrix(&g);
        let xc = RatMatrix::from_rows(vec![alg.elem_to_coords(&x)]);
        assert_eq!(
            xc.mul(&lm).row(0).to_vec(),
            alg.elem_to_coords(&alg.mul(&g, &x))
        );
        assert_eq!(
            xc.mul(&rm).row(0).to_vec(),
            alg.elem_to_coords(&alg.mul(&x, &g))
        );
    }
}
