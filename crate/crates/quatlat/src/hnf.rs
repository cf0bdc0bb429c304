//! Row Hermite Normal Form over Z, integer kernels, and the canonical
//! representation of rational Z-modules by an integerized HNF basis plus a
//! global denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{IntMatrix, RatMatrix};
use crate::rational::{content, Rat};

/// Result of a row-HNF computation: `u * input = h`, `u` unimodular, `h` in
/// row echelon with positive pivots and entries above each pivot reduced
/// into `[0, pivot)`. Zero rows of `h` sit at the bottom.
#[derive(Debug, Clone)]
pub struct HnfResult {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
}

/// Row Hermite Normal Form with unimodular transformation record.
pub fn hnf(m: &IntMatrix) -> HnfResult {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivot_row = 0;

    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        // Clear column `col` below pivot_row by repeated smallest-entry
        // reduction (Euclid on rows).
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..rows {
                if !h[(i, col)].is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) if h[(i, col)].magnitude() < h[(b, col)].magnitude() => Some(i),
                        keep => keep,
                    };
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(pivot_row, b);
            u.swap_rows(pivot_row, b);
            let mut done = true;
            let p = h[(pivot_row, col)].clone();
            for i in (pivot_row + 1)..rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = h[(i, col)].div_floor(&p);
                h.row_sub_mul(i, pivot_row, &q);
                u.row_sub_mul(i, pivot_row, &q);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        // Reduce entries above the pivot into [0, pivot).
        let p = h[(pivot_row, col)].clone();
        for i in 0..pivot_row {
            let q = h[(i, col)].div_floor(&p);
            h.row_sub_mul(i, pivot_row, &q);
            u.row_sub_mul(i, pivot_row, &q);
        }
        pivot_row += 1;
    }

    HnfResult {
        h,
        u,
        rank: pivot_row,
    }
}

/// The nonzero rows of the HNF: a canonical basis of the row span.
pub fn row_span_hnf(m: &IntMatrix) -> IntMatrix {
    let r = hnf(m);
    assert!(r.rank > 0, "row span of the zero module");
    IntMatrix::from_rows((0..r.rank).map(|i| r.h.row(i).to_vec()).collect())
}

/// Basis of the left integer kernel { t : t * m = 0 }, or None if trivial.
pub fn int_kernel(m: &IntMatrix) -> Option<IntMatrix> {
    let r = hnf(m);
    if r.rank == m.rows() {
        return None;
    }
    Some(IntMatrix::from_rows(
        (r.rank..m.rows()).map(|i| r.u.row(i).to_vec()).collect(),
    ))
}

/// Basis of { t in Z^rows : t * v is integral }, for a rational matrix v.
/// This is a full-rank sublattice of Z^rows.
pub fn integral_preimage(v: &RatMatrix) -> IntMatrix {
    let (n, q) = v.integerize();
    if q.is_one() {
        return IntMatrix::identity(v.rows());
    }
    // t * n = 0 mod q  <=>  (t | s) * [n ; q*I] = 0 over Z.
    let rows = n.rows() + n.cols();
    let mut stacked = IntMatrix::zero(rows, n.cols());
    for i in 0..n.rows() {
        for j in 0..n.cols() {
            stacked[(i, j)] = n[(i, j)].clone();
        }
    }
    for j in 0..n.cols() {
        stacked[(n.rows() + j, j)] = q.clone();
    }
    let kern = int_kernel(&stacked).expect("preimage lattice always contains q*Z^rows");
    let proj = IntMatrix::from_rows(
        (0..kern.rows())
            .map(|i| kern.row(i)[..n.rows()].to_vec())
            .collect(),
    );
    let span = row_span_hnf(&proj);
    assert_eq!(span.rows(), n.rows(), "preimage lattice must be full rank");
    span
}

/// Canonical representation of a full-rank rational Z-module in Q^n:
/// the module is `rowspan(basis) / den`, with `basis` square in HNF and
/// gcd(content(basis), den) = 1. Equal modules have equal representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLatticeBasis {
    basis: IntMatrix,
    den: BigInt,
}

impl IntLatticeBasis {
    /// Builds the canonical form from rational row generators. Returns the
    /// achieved rank alongside; callers enforce their own rank demands.
    pub fn from_rational_rows(rows: &RatMatrix) -> (usize, Option<IntLatticeBasis>) {
        let (m, den) = rows.integerize();
        let r = hnf(&m);
        if r.rank < rows.cols() {
            return (r.rank, None);
        }
        let basis = IntMatrix::from_rows((0..r.rank).map(|i| r.h.row(i).to_vec()).collect());
        let mut g = content(basis.entries());
        g = g.gcd(&den);
        let (basis, den) = if g.is_one() || g.is_zero() {
            (basis, den)
        } else {
            let reduced = IntMatrix::new(
                basis.rows(),
                basis.cols(),
                basis.entries().map(|x| x / &g).collect(),
            );
            (reduced, &den / &g)
        };
        (
            rows.cols(),
            Some(IntLatticeBasis { basis, den }),
        )
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    /// The i-th basis vector as a rational row.
    pub fn basis_row(&self, i: usize) -> Vec<Rat> {
        self.basis
            .row(i)
            .iter()
            .map(|x| Rat::new(x.clone(), self.den.clone()))
            .collect()
    }

    /// Coordinates of `v` over this basis if `v` lies in the module.
    /// The basis is upper echelon, so forward substitution over columns.
    pub fn coordinates_of(&self, v: &[Rat]) -> Option<Vec<BigInt>> {
        let n = self.dim();
        assert_eq!(v.len(), n);
        // Solve c * basis = v * den over Z.
        let mut target: Vec<Rat> = v
            .iter()
            .map(|x| x * Rat::from_integer(self.den.clone()))
            .collect();
        let mut coords = vec![BigInt::zero(); n];
        for i in 0..n {
            // Pivot column of row i is the first nonzero entry.
            let pcol = (0..n).find(|&j| !self.basis[(i, j)].is_zero())?;
            let num = target[pcol].clone();
            if !num.denom().is_one() {
                return None;
            }
            let (q, r) = num.numer().div_rem(&self.basis[(i, pcol)]);
            if !r.is_zero() {
                return None;
            }
            for j in pcol..n {
                let t = Rat::from_integer(&q * &self.basis[(i, j)]);
                target[j] -= t;
            }
            coords[i] = q;
        }
        if target.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coordinates_of(v).is_some()
    }

    /// Module containment: every basis vector of `other` lies in `self`.
    pub fn contains_module(&self, other: &IntLatticeBasis) -> bool {
        (0..other.dim()).all(|i| self.contains(&other.basis_row(i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{big, rat, rat_int};

    fn hnf_of(rows: &[&[i64]]) -> IntMatrix {
        row_span_hnf(&IntMatrix::from_i64_rows(rows))
    }

    #[test]
    fn hnf_identity_fixed() {
        let id = IntMatrix::identity(4);
        assert_eq!(row_span_hnf(&id), id);
    }

    #[test]
    fn hnf_hand_reduced_example() {
        // {(2,0),(1,1)}: subtract to (1,1),(0,2) with the entry above the
        // pivot 2 already in [0,2). Hand column reduction gives the same.
        assert_eq!(hnf_of(&[&[2, 0], &[1, 1]]), hnf_of(&[&[1, 1], &[0, 2]]));
        let h = hnf_of(&[&[2, 0], &[1, 1]]);
        assert_eq!(h.row(0), &[big(1), big(1)]);
        assert_eq!(h.row(1), &[big(0), big(2)]);
    }

    #[test]
    fn hnf_drops_redundant_generator() {
        let r = hnf(&IntMatrix::from_i64_rows(&[&[1, 0], &[0, 1], &[1, 1]]));
        assert_eq!(r.rank, 2);
        assert_eq!(r.h.row(0), &[big(1), big(0)]);
        assert_eq!(r.h.row(1), &[big(0), big(1)]);
        assert_eq!(r.h.row(2), &[big(0), big(0)]);
    }

    #[test]
    fn hnf_transform_is_unimodular() {
        let m = IntMatrix::from_i64_rows(&[&[4, 7, -2], &[0, 3, 9], &[5, 5, 5]]);
        let r = hnf(&m);
        assert_eq!(r.u.mul(&m), r.h);
        let det = r.u.det_bareiss();
        assert!(det == big(1) || det == big(-1));
    }

    #[test]
    fn hnf_idempotent() {
        let m = IntMatrix::from_i64_rows(&[&[6, 4, 1], &[2, 8, -3], &[10, 0, 7], &[2, 2, 2]]);
        let once = row_span_hnf(&m);
        let twice = row_span_hnf(&once);
        assert_eq!(once, twice);
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let m = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4], &[0, 1]]);
        let k = int_kernel(&m).unwrap();
        assert_eq!(k.rows(), 1);
        for i in 0..k.rows() {
            let prod = IntMatrix::from_rows(vec![k.row(i).to_vec()]).mul(&m);
            assert!(prod.entries().all(|x| x.is_zero()));
        }
        assert!(int_kernel(&IntMatrix::identity(3)).is_none());
    }

    #[test]
    fn integral_preimage_halves() {
        // v = I/2: preimage of Z^2 is 2Z^2.
        let v = RatMatrix::from_rows(vec![
            vec![rat(1, 2), rat_int(0)],
            vec![rat_int(0), rat(1, 2)],
        ]);
        let p = integral_preimage(&v);
        assert_eq!(p.row(0), &[big(2), big(0)]);
        assert_eq!(p.row(1), &[big(0), big(2)]);
    }

    #[test]
    fn lattice_basis_canonical_and_coords() {
        let rows = RatMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 2)],
            vec![rat_int(0), rat_int(1)],
        ]);
        let (rank, basis) = IntLatticeBasis::from_rational_rows(&rows);
        assert_eq!(rank, 2);
        let basis = basis.unwrap();
        assert_eq!(basis.den(), &big(2));
        assert!(basis.contains(&[rat(1, 2), rat(3, 2)]));
        assert!(!basis.contains(&[rat(1, 4), rat_int(0)]));
        let c = basis.coordinates_of(&[rat(1, 2), rat(3, 2)]).unwrap();
        // Reconstruct
        let mut acc = vec![rat_int(0), rat_int(0)];
        for (i, ci) in c.iter().enumerate() {
            for (j, v) in basis.basis_row(i).iter().enumerate() {
                acc[j] += Rat::from_integer(ci.clone()) * v;
            }
        }
        assert_eq!(acc, vec![rat(1, 2), rat(3, 2)]);
    }
}
