//! Dense exact matrices over Q and Z, with fraction-free determinants and
//! exact rank.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{denominator_lcm, Rat};

/// Row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        assert_eq!(data.len(), rows * cols);
        RatMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        assert!(r > 0);
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c));
        RatMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|r| r.denom().is_one())
    }

    /// Clears denominators: returns (N, d) with self = N / d, d > 0 minimal.
    pub fn integerize(&self) -> (IntMatrix, BigInt) {
        let d = denominator_lcm(self.data.iter());
        let data = self
            .data
            .iter()
            .map(|r| r.numer() * (&d / r.denom()))
            .collect();
        (
            IntMatrix {
                rows: self.rows,
                cols: self.cols,
                data,
            },
            d,
        )
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det_exact(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::NonSquareMatrix {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let (m, d) = self.integerize();
        let det_int = m.det_bareiss();
        let scale = Rat::from_integer(d).pow(self.rows as i32);
        Ok(Rat::from_integer(det_int) / scale)
    }

    /// Exact rank over Q by Gaussian elimination with exact pivoting.
    pub fn rank_over_q(&self) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let at = |m: &[Rat], i: usize, j: usize| m[i * cols + j].clone();
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..rows).find(|&i| !at(&m, i, col).is_zero()) else {
                continue;
            };
            for j in 0..cols {
                m.swap(rank * cols + j, piv * cols + j);
            }
            let p = at(&m, rank, col);
            for i in (rank + 1)..rows {
                let f = at(&m, i, col) / &p;
                if f.is_zero() {
                    continue;
                }
                for j in col..cols {
                    let t = &f * &m[rank * cols + j];
                    m[i * cols + j] -= t;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Solves x * self = rhs for a row vector x (self square, invertible).
    pub fn solve_left(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(rhs.len(), self.cols);
        // Solve self^T y = rhs^T by Gaussian elimination.
        let n = self.rows;
        let mut aug: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rat> = (0..n).map(|j| self[(j, i)].clone()).collect();
                row.push(rhs[i].clone());
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&i| !aug[i][col].is_zero())?;
            aug.swap(col, piv);
            let p = aug[col][col].clone();
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = &aug[i][col] / &p;
                if f.is_zero() {
                    continue;
                }
                for j in col..=n {
                    let t = &f * &aug[col][j];
                    aug[i][j] -= t;
                }
            }
        }
        Some(
            (0..n)
                .map(|i| {
                    let p = aug[i][i].clone();
                    &aug[i][n] / p
                })
                .collect(),
        )
    }

    pub fn map_scalar(&self, f: impl Fn(&Rat) -> Rat) -> RatMatrix {
        RatMatrix::new(self.rows, self.cols, self.data.iter().map(f).collect())
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert!(rows > 0 && cols > 0);
        assert_eq!(data.len(), rows * cols);
        IntMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        assert!(r > 0);
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c));
        IntMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &BigInt> {
        self.data.iter()
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::new(
            self.rows,
            self.cols,
            self.data
                .iter()
                .map(|x| Rat::from_integer(x.clone()))
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// row a -= q * row b
    pub fn row_sub_mul(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = q * &self.data[b * self.cols + j];
            self.data[a * self.cols + j] -= t;
        }
    }

    pub fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[a * self.cols + j]);
            self.data[a * self.cols + j] = v;
        }
    }

    /// Determinant by Bareiss fraction-free elimination. All intermediate
    /// divisions are exact, so no rationals appear.
    pub fn det_bareiss(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = ((k + 1)..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// det via cofactor expansion; independent cross-check oracle for small n.
pub fn det_cofactor(m: &RatMatrix) -> Rat {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    if n == 1 {
        return m[(0, 0)].clone();
    }
    let mut acc = Rat::zero();
    for j in 0..n {
        if m[(0, j)].is_zero() {
            continue;
        }
        let minor_rows: Vec<Vec<Rat>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| m[(i, c)].clone())
                    .collect()
            })
            .collect();
        let minor = RatMatrix::from_rows(minor_rows);
        let term = &m[(0, j)] * det_cofactor(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn det_identity() {
        for n in 1..=5 {
            assert_eq!(
                RatMatrix::identity(n).det_exact().unwrap(),
                rat_int(1),
                "identity {n}x{n}"
            );
        }
    }

    #[test]
    fn det_matches_cofactor_small() {
        let m = RatMatrix::from_rows(vec![
            vec![rat(1, 2), rat_int(3), rat_int(-1)],
            vec![rat_int(0), rat(2, 3), rat_int(4)],
            vec![rat_int(5), rat_int(-2), rat(7, 5)],
        ]);
        assert_eq!(m.det_exact().unwrap(), det_cofactor(&m));
    }

    #[test]
    fn det_rejects_non_square() {
        let m = RatMatrix::zero(2, 3);
        assert!(matches!(
            m.det_exact(),
            Err(Error::NonSquareMatrix { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn det_with_zero_pivot() {
        let m = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det_bareiss(), BigInt::from(-1));
        let m = IntMatrix::from_i64_rows(&[&[0, 0], &[0, 1]]);
        assert_eq!(m.det_bareiss(), BigInt::zero());
    }

    #[test]
    fn rank_cases() {
        assert_eq!(RatMatrix::zero(3, 3).rank_over_q(), 0);
        let prop = RatMatrix::from_rows(vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ]);
        assert_eq!(prop.rank_over_q(), 1);
        assert_eq!(RatMatrix::identity(4).rank_over_q(), 4);
    }

    #[test]
    fn solve_left_inverts() {
        let m = RatMatrix::from_rows(vec![
            vec![rat_int(2), rat_int(1)],
            vec![rat_int(1), rat_int(1)],
        ]);
        // x * m = (1, 0)  =>  x = first row of m^{-1}
        let x = m.solve_left(&[rat_int(1), rat_int(0)]).unwrap();
        assert_eq!(x, vec![rat_int(1), rat_int(-1)]);
    }
}
