//! LLL reduction operating directly on an exact rational Gram matrix.
//!
//! No basis vectors and no floating point: the Gram-Schmidt data is the
//! LDL^T decomposition of the Gram matrix, maintained incrementally through
//! size reductions and swaps. The unimodular transform `u` satisfies
//! `reduced = u * gram * u^T` exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::rational::{rat, round_rat, Rat};

#[derive(Debug, Clone)]
pub struct LllReduced {
    pub gram: RatMatrix,
    pub transform: IntMatrix,
}

/// Exact LDL^T of a symmetric matrix. Returns (mu, d) with
/// `mu[i][j]` for j < i the unit-lower-triangular factor and `d` the
/// diagonal. Fails unless all pivots are positive (positive definiteness,
/// equivalently all leading principal minors > 0).
pub fn ldl(gram: &RatMatrix) -> Result<(Vec<Vec<Rat>>, Vec<Rat>)> {
    if gram.rows() != gram.cols() {
        return Err(Error::NonSquareMatrix {
            rows: gram.rows(),
            cols: gram.cols(),
        });
    }
    if !gram.is_symmetric() {
        return Err(Error::NotPositiveDefinite);
    }
    let n = gram.rows();
    let mut mu = vec![vec![Rat::zero(); n]; n];
    let mut d = vec![Rat::zero(); n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = gram[(i, j)].clone();
            for k in 0..j {
                s -= &mu[i][k] * &mu[j][k] * &d[k];
            }
            if j < i {
                if d[j].is_zero() {
                    return Err(Error::NotPositiveDefinite);
                }
                mu[i][j] = s / &d[j];
            } else {
                if !s.is_positive() {
                    return Err(Error::NotPositiveDefinite);
                }
                d[i] = s;
            }
        }
    }
    Ok((mu, d))
}

/// Apply `row k -= q * row j` to the symmetric gram and the transform.
fn gram_row_op(gram: &mut RatMatrix, u: &mut IntMatrix, k: usize, j: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let n = gram.rows();
    let qr = Rat::from_integer(q.clone());
    // b_k := b_k - q b_j, so G[k][t] -= q G[j][t], then G[t][k] -= q G[t][j].
    for t in 0..n {
        let s = &qr * &gram[(j, t)];
        gram[(k, t)] -= s;
    }
    for t in 0..n {
        let s = &qr * &gram[(t, j)];
        gram[(t, k)] -= s;
    }
    u.row_sub_mul(k, j, q);
}

fn gram_swap(gram: &mut RatMatrix, u: &mut IntMatrix, k: usize) {
    let n = gram.rows();
    for t in 0..n {
        let a = gram[(k - 1, t)].clone();
        gram[(k - 1, t)] = gram[(k, t)].clone();
        gram[(k, t)] = a;
    }
    for t in 0..n {
        let a = gram[(t, k - 1)].clone();
        gram[(t, k - 1)] = gram[(t, k)].clone();
        gram[(t, k)] = a;
    }
    u.swap_rows(k - 1, k);
}

/// LLL-reduces a positive definite rational Gram matrix with parameter
/// `delta` (1/4 < delta < 1; 99/100 is the crate default).
pub fn lll_reduce(gram: &RatMatrix, delta: &Rat) -> Result<LllReduced> {
    let quarter = rat(1, 4);
    if *delta <= quarter || *delta >= Rat::one() {
        return Err(Error::BadDelta);
    }
    let n = gram.rows();
    let (mut mu, mut d) = ldl(gram)?;
    let mut g = gram.clone();
    let mut u = IntMatrix::identity(n);
    if n == 1 {
        return Ok(LllReduced { gram: g, transform: u });
    }

    let mut k = 1;
    while k < n {
        // Size-reduce row k against k-1 .. 0.
        for j in (0..k).rev() {
            let q = round_rat(&mu[k][j]);
            if q.is_zero() {
                continue;
            }
            gram_row_op(&mut g, &mut u, k, j, &q);
            let qr = Rat::from_integer(q);
            for t in 0..j {
                let s = &qr * &mu[j][t];
                mu[k][t] -= s;
            }
            mu[k][j] -= qr;
        }
        // Lovasz condition between k-1 and k.
        let lhs = d[k].clone();
        let rhs = (delta - &mu[k][k - 1] * &mu[k][k - 1]) * &d[k - 1];
        if lhs >= rhs {
            k += 1;
            continue;
        }
        // Swap rows k-1 and k, updating the GSO data in place.
        gram_swap(&mut g, &mut u, k);
        let mu_prev = mu[k][k - 1].clone();
        let b_new = &d[k] + &mu_prev * &mu_prev * &d[k - 1];
        let mu_new = &mu_prev * &d[k - 1] / &b_new;
        d[k] = &d[k - 1] * &d[k] / &b_new;
        d[k - 1] = b_new;
        for t in 0..k - 1 {
            let a = mu[k - 1][t].clone();
            mu[k - 1][t] = mu[k][t].clone();
            mu[k][t] = a;
        }
        mu[k][k - 1] = mu_new.clone();
        for i in (k + 1)..n {
            let t = mu[i][k].clone();
            let a = &mu[i][k - 1] - &mu_prev * &t;
            mu[i][k - 1] = &t + &mu_new * &a;
            mu[i][k] = a;
        }
        k = k.max(2) - 1;
    }
    Ok(LllReduced { gram: g, transform: u })
}

pub fn default_delta() -> Rat {
    rat(99, 100)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn gram_of_rows(rows: &[&[i64]]) -> RatMatrix {
        let b = IntMatrix::from_i64_rows(rows).to_rational();
        b.mul(&b.transpose())
    }

    #[test]
    fn identity_already_reduced() {
        let g = RatMatrix::identity(4);
        let r = lll_reduce(&g, &default_delta()).unwrap();
        assert_eq!(r.gram, g);
        assert_eq!(r.transform, IntMatrix::identity(4));
    }

    #[test]
    fn skew_basis_reduces_to_unit_square() {
        // Basis {(1,0),(1000,1)}: the shortest basis of this lattice is
        // {(1,0),(0,1)} (brute force over small combinations), so the
        // reduced gram has first diagonal entry 1 and determinant 1.
        let g = gram_of_rows(&[&[1, 0], &[1000, 1]]);
        let r = lll_reduce(&g, &default_delta()).unwrap();
        assert_eq!(r.gram[(0, 0)], rat_int(1));
        assert_eq!(r.gram[(1, 1)], rat_int(1));
        assert_eq!(r.gram[(0, 1)], rat_int(0));
        assert_eq!(r.gram.det_exact().unwrap(), g.det_exact().unwrap());
    }

    #[test]
    fn congruence_holds_exactly() {
        let g = gram_of_rows(&[&[3, 1, 0], &[7, 2, 1], &[-4, 5, 9]]);
        let r = lll_reduce(&g, &default_delta()).unwrap();
        let ur = r.transform.to_rational();
        assert_eq!(ur.mul(&g).mul(&ur.transpose()), r.gram);
        let det_u = r.transform.det_bareiss();
        assert!(det_u == BigInt::one() || det_u == -BigInt::one());
    }

    #[test]
    fn rejects_non_positive_definite() {
        let mut g = RatMatrix::identity(2);
        g[(1, 1)] = rat_int(-1);
        assert!(matches!(
            lll_reduce(&g, &default_delta()),
            Err(Error::NotPositiveDefinite)
        ));
        let g = gram_of_rows(&[&[1, 0], &[1, 0]]); // singular
        assert!(matches!(
            lll_reduce(&g, &default_delta()),
            Err(Error::NotPositiveDefinite)
        ));
    }

    #[test]
    fn rejects_bad_delta() {
        let g = RatMatrix::identity(2);
        assert!(matches!(lll_reduce(&g, &rat(1, 4)), Err(Error::BadDelta)));
        assert!(matches!(lll_reduce(&g, &rat_int(1)), Err(Error::BadDelta)));
    }
}
