//! Dense exact linear algebra over Q(zeta_12).
//!
//! Everything here is plain Gaussian elimination with the first-nonzero
//! pivot rule, so results are deterministic. Matrices in this engine are
//! tiny (at most 20 x 20), so no fraction-free tricks are needed.

use crate::scalar::CycloScalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CycloScalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![CycloScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = CycloScalar::one();
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vec<CycloScalar>]) -> Matrix {
        let mut m = Matrix::zero(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                *m.at_mut(i, j) = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &CycloScalar {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut CycloScalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<CycloScalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[CycloScalar]) -> Vec<CycloScalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                row.iter()
                    .zip(v)
                    .fold(CycloScalar::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zero(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *m.at_mut(r, c) = self.at(r, c).clone();
            }
            for c in 0..other.cols {
                *m.at_mut(r, self.cols + c) = other.at(r, c).clone();
            }
        }
        m
    }

    /// Reduced row echelon form; returns (rref, pivot column per pivot row).
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    let a = m.at(row, c).clone();
                    let b = m.at(p, c).clone();
                    *m.at_mut(row, c) = b;
                    *m.at_mut(p, c) = a;
                }
            }
            let inv = m.at(row, col).inv().expect("pivot is nonzero");
            for c in 0..m.cols {
                *m.at_mut(row, c) = m.at(row, c) * &inv;
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let f = m.at(r, col).clone();
                    for c in 0..m.cols {
                        let v = m.at(r, c) - &(&f * m.at(row, c));
                        *m.at_mut(r, c) = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column, deterministic.
    pub fn kernel_basis(&self) -> Vec<Vec<CycloScalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![CycloScalar::zero(); self.cols];
            v[free] = CycloScalar::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -r.at(prow, free);
            }
            basis.push(v);
        }
        basis
    }

    /// One exact solution of `self * x = rhs`, if any.
    pub fn solve(&self, rhs: &[CycloScalar]) -> Option<Vec<CycloScalar>> {
        assert_eq!(rhs.len(), self.rows);
        let b = Matrix::from_columns(self.rows, &[rhs.to_vec()]);
        let (r, pivots) = self.hstack(&b).rref();
        // Inconsistent iff a pivot lands in the appended column.
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![CycloScalar::zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = r.at(prow, self.cols).clone();
        }
        Some(x)
    }

    /// Exact determinant of a square matrix.
    pub fn det(&self) -> CycloScalar {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = CycloScalar::one();
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                return CycloScalar::zero();
            };
            if p != col {
                for c in 0..m.cols {
                    let a = m.at(col, c).clone();
                    let b = m.at(p, c).clone();
                    *m.at_mut(col, c) = b;
                    *m.at_mut(p, c) = a;
                }
                det = -&det;
            }
            det = &det * m.at(col, col);
            let inv = m.at(col, col).inv().expect("pivot is nonzero");
            for r in col + 1..m.rows {
                if !m.at(r, col).is_zero() {
                    let f = m.at(r, col) * &inv;
                    for c in col..m.cols {
                        let v = m.at(r, c) - &(&f * m.at(col, c));
                        *m.at_mut(r, c) = v;
                    }
                }
            }
        }
        det
    }
}

/// Precomputed elimination data for solving `A x = b` against many right
/// hand sides: one rref of [A | I] up front, one matrix-vector product per
/// solve afterwards.
#[derive(Clone, Debug)]
pub struct Solver {
    cols: usize,
    rank: usize,
    pivots: Vec<usize>,
    /// rref of A (left block) and the row transform T with T A = rref(A).
    reduced: Matrix,
    transform: Matrix,
}

impl Solver {
    pub fn new(a: &Matrix) -> Solver {
        let m = a.rows();
        let n = a.cols();
        let (full, pivots) = a.hstack(&Matrix::identity(m)).rref();
        let a_pivots: Vec<usize> = pivots.iter().cloned().filter(|c| *c < n).collect();
        let rank = a_pivots.len();
        let mut reduced = Matrix::zero(m, n);
        let mut transform = Matrix::zero(m, m);
        for r in 0..m {
            for c in 0..n {
                *reduced.at_mut(r, c) = full.at(r, c).clone();
            }
            for c in 0..m {
                *transform.at_mut(r, c) = full.at(r, n + c).clone();
            }
        }
        Solver {
            cols: n,
            rank,
            pivots: a_pivots,
            reduced,
            transform,
        }
    }

    /// One exact solution of `A x = b`, if any.
    pub fn solve(&self, b: &[CycloScalar]) -> Option<Vec<CycloScalar>> {
        let y = self.transform.mul_vec(b);
        // Rows past the rank have zero left block; they must annihilate b.
        if y[self.rank..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut x = vec![CycloScalar::zero(); self.cols];
        for (row, &col) in self.pivots.iter().enumerate() {
            x[col] = y[row].clone();
        }
        Some(x)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn reduced(&self) -> &Matrix {
        &self.reduced
    }
}

/// Incremental echelon span with deterministic pivots; used to pick
/// cohomology representatives and to test membership in a growing span.
#[derive(Clone, Debug, Default)]
pub struct SpanReducer {
    // rows in echelon form: (pivot index, normalized vector)
    rows: Vec<(usize, Vec<CycloScalar>)>,
}

impl SpanReducer {
    pub fn new() -> SpanReducer {
        SpanReducer::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the span; the remainder is zero iff v lies in it.
    pub fn reduce(&self, v: &[CycloScalar]) -> Vec<CycloScalar> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (x, r) in v.iter_mut().zip(row.iter()) {
                    *x = &*x - &(&f * r);
                }
            }
        }
        v
    }

    /// Insert `v` if independent; returns the normalized remainder if so.
    pub fn insert(&mut self, v: &[CycloScalar]) -> Option<Vec<CycloScalar>> {
        let red = self.reduce(v);
        let pivot = red.iter().position(|x| !x.is_zero())?;
        let inv = red[pivot].inv().expect("pivot is nonzero");
        let normalized: Vec<CycloScalar> = red.iter().map(|x| x * &inv).collect();
        // Back-substitute to keep earlier rows reduced against the new one.
        for (_, row) in self.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let f = row[pivot].clone();
                for (x, n) in row.iter_mut().zip(normalized.iter()) {
                    *x = &*x - &(&f * n);
                }
            }
        }
        self.rows.push((pivot, normalized.clone()));
        self.rows.sort_by_key(|(p, _)| *p);
        Some(normalized)
    }

    pub fn contains(&self, v: &[CycloScalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, CycloScalar};

    fn s(n: i64) -> CycloScalar {
        CycloScalar::from_int(n)
    }

    #[test]
    fn rref_rank_kernel() {
        // [[1,2,3],[2,4,6],[1,1,1]] has rank 2 and kernel dim 1.
        let m = Matrix::from_columns(
            3,
            &[
                vec![s(1), s(2), s(1)],
                vec![s(2), s(4), s(1)],
                vec![s(3), s(6), s(1)],
            ],
        );
        assert_eq!(m.rank(), 2);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        let img = m.mul_vec(&ker[0]);
        assert!(img.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_and_det() {
        let m = Matrix::from_columns(
            2,
            &[
                vec![CycloScalar::i(), s(0)],
                vec![s(1), CycloScalar::from_rational(rat(1, 2))],
            ],
        );
        let d = m.det();
        assert_eq!(d, CycloScalar::i().scale(&rat(1, 2)));
        let x = m.solve(&[s(3), s(1)]).unwrap();
        let back = m.mul_vec(&x);
        assert_eq!(back, vec![s(3), s(1)]);
        // Inconsistent system.
        let sing = Matrix::from_columns(2, &[vec![s(1), s(2)], vec![s(2), s(4)]]);
        assert!(sing.solve(&[s(0), s(1)]).is_none());
    }

    #[test]
    fn span_reducer_membership() {
        let mut sp = SpanReducer::new();
        assert!(sp.insert(&[s(1), s(2), s(0)]).is_some());
        assert!(sp.insert(&[s(0), s(1), s(1)]).is_some());
        assert!(sp.insert(&[s(1), s(3), s(1)]).is_none());
        assert!(sp.contains(&[s(2), s(5), s(1)]));
        assert!(!sp.contains(&[s(0), s(0), s(1)]));
        assert_eq!(sp.rank(), 2);
    }
}
