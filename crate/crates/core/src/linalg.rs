//! Exact dense linear algebra over the rationals.
//!
//! Everything here is Gauss–Jordan elimination on [`Scalar`] entries. The
//! reduced row echelon form is unique, so kernels and particular solutions
//! read off from it are canonical and reproducible regardless of pivot order.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{check_len, Error, Result};
use crate::scalar::{format_scalar, height, Scalar, Vector};

/// Below this many entries elimination stays on one thread.
const PARALLEL_THRESHOLD: usize = 1 << 14;

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

/// Result of [`RationalMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RationalMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        check_len(rows * cols, data.len())?;
        Ok(RationalMatrix { rows, cols, data })
    }

    /// Builds a matrix from its rows; `cols` fixes the width when there are no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vector>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            check_len(cols, r.len())?;
            data.extend(r);
        }
        Ok(RationalMatrix { rows: n, cols, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            check_len(rows, col.len())?;
            for (r, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m[(r, c)] = x.clone();
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        let mut out = vec![Scalar::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = &self.data[r * self.cols + c];
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn try_mul_vec(&self, v: &[Scalar]) -> Result<Vector> {
        check_len(self.cols, v.len())?;
        Ok(self.mul_vec(v))
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        check_len(self.cols, other.rows)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(RationalMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(RationalMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &Scalar) -> RationalMatrix {
        RationalMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| c * x).collect() }
    }

    /// `[A, B] = AB - BA`
    pub fn commutator(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    fn same_shape(&self, other: &RationalMatrix) -> Result<()> {
        check_len(self.rows, other.rows)?;
        check_len(self.cols, other.cols)
    }

    fn to_rows(&self) -> Vec<Vector> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(|r| r.to_vec()).collect()
    }

    /// Reduced row echelon form, rank, and pivot columns.
    pub fn rref(&self) -> Rref {
        let mut rows = self.to_rows();
        let pivots = gauss_jordan(&mut rows, self.cols);
        let rank = pivots.len();
        let matrix = RationalMatrix::from_rows(self.cols, rows).expect("row widths preserved");
        Rref { matrix, rank, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the null space, one vector per free column, in column order.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let Rref { matrix, pivots, .. } = self.rref();
        kernel_from_rref(&matrix, &pivots, self.cols)
    }

    /// A particular solution of `A x = b` (free variables set to zero), or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vector>> {
        check_len(self.rows, b.len())?;
        let mut rows: Vec<Vector> = self
            .to_rows()
            .into_iter()
            .zip(b)
            .map(|(mut r, x)| {
                r.push(x.clone());
                r
            })
            .collect();
        let pivots = gauss_jordan(&mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = rows[r][self.cols].clone();
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<RationalMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vector> = self
            .to_rows()
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
                r
            })
            .collect();
        let pivots = gauss_jordan(&mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let data = rows.into_iter().flat_map(|r| r.into_iter().skip(n)).collect();
        Some(RationalMatrix { rows: n, cols: n, data })
    }
}

pub(crate) fn kernel_from_rref(rref: &RationalMatrix, pivots: &[usize], cols: usize) -> Vec<Vector> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Scalar::zero(); cols];
            v[free] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                let a = &rref[(r, free)];
                if !a.is_zero() {
                    v[p] = -a;
                }
            }
            v
        })
        .collect()
}

/// In-place Gauss–Jordan elimination over the first `cols` columns; returns pivots.
fn gauss_jordan(rows: &mut [Vector], cols: usize) -> Vec<usize> {
    let nrows = rows.len();
    let parallel = nrows * cols >= PARALLEL_THRESHOLD;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(best) = (r..nrows).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| (height(&rows[i][c]), i)) else {
            continue;
        };
        rows.swap(r, best);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().expect("pivot row exists");
        let pivot_row: &Vector = pivot_row;
        let eliminate = |row: &mut Vector| {
            let factor = row[c].clone();
            if factor.is_zero() {
                return;
            }
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        };
        if parallel {
            head.par_iter_mut().for_each(eliminate);
            tail.par_iter_mut().for_each(eliminate);
        } else {
            head.iter_mut().for_each(eliminate);
            tail.iter_mut().for_each(eliminate);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Outcome of adding one equation to an [`IncrementalSystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    /// The equation added a new pivot.
    Independent,
    /// The equation is implied by the earlier ones.
    Redundant,
    /// The equation contradicts the earlier ones.
    Inconsistent,
}

/// A linear system `A x = b` built one equation at a time, so that the first
/// equation that makes the system inconsistent can be identified.
#[derive(Debug, Clone)]
pub struct IncrementalSystem {
    unknowns: usize,
    // Each stored row has a leading 1 at its pivot and zeros at earlier pivots.
    rows: Vec<(usize, Vector, Scalar)>,
    inconsistent: bool,
}

impl IncrementalSystem {
    pub fn new(unknowns: usize) -> Self {
        IncrementalSystem { unknowns, rows: Vec::new(), inconsistent: false }
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn push(&mut self, coeffs: &[Scalar], rhs: &Scalar) -> Result<RowStatus> {
        check_len(self.unknowns, coeffs.len())?;
        if coeffs.iter().all(Zero::is_zero) {
            return Ok(self.record_zero_row(rhs));
        }
        let mut row = coeffs.to_vec();
        let mut b = rhs.clone();
        for (p, stored, sb) in &self.rows {
            let factor = row[*p].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, s) in row.iter_mut().zip(stored) {
                if !s.is_zero() {
                    *x -= &factor * s;
                }
            }
            b -= &factor * sb;
        }
        match row.iter().position(|x| !x.is_zero()) {
            None => Ok(self.record_zero_row(&b)),
            Some(p) => {
                let inv = row[p].recip();
                for x in row.iter_mut() {
                    if !x.is_zero() {
                        *x *= &inv;
                    }
                }
                b *= &inv;
                self.rows.push((p, row, b));
                Ok(RowStatus::Independent)
            }
        }
    }

    fn record_zero_row(&mut self, rhs: &Scalar) -> RowStatus {
        if rhs.is_zero() {
            RowStatus::Redundant
        } else {
            self.inconsistent = true;
            RowStatus::Inconsistent
        }
    }

    /// The particular solution with every free unknown set to zero; this is
    /// the solution read off from the reduced row echelon form.
    pub fn solution(&self) -> Option<Vector> {
        if self.inconsistent {
            return None;
        }
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.rows[i].0);
        let mut x = vec![Scalar::zero(); self.unknowns];
        // Back substitution from the rightmost pivot.
        for &i in order.iter().rev() {
            let (p, row, b) = &self.rows[i];
            let mut v = b.clone();
            for (c, a) in row.iter().enumerate().skip(p + 1) {
                if !a.is_zero() && !x[c].is_zero() {
                    v -= a * &x[c];
                }
            }
            x[*p] = v;
        }
        Some(x)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_scalar).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl From<RationalMatrix> for Vec<Vector> {
    fn from(m: RationalMatrix) -> Self {
        m.to_rows()
    }
}

/// Rejects a non-square matrix of the wrong size.
pub(crate) fn check_square(m: &RationalMatrix, n: usize) -> Result<()> {
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: if m.rows() != n { m.rows() } else { m.cols() } });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        RationalMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn rref_examples() {
        let id = RationalMatrix::identity(3).rref();
        assert_eq!((id.rank, id.pivots.clone()), (3, vec![0, 1, 2]));
        assert_eq!(RationalMatrix::zeros(2, 4).rref().rank, 0);
        let r = m(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!((r.rank, r.pivots), (1, vec![0]));
        assert_eq!(r.matrix, m(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        assert!(RationalMatrix::identity(3).kernel_basis().is_empty());
        assert_eq!(RationalMatrix::zeros(2, 3).kernel_basis().len(), 3);
        let k = m(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![int(4), int(-1), int(7)];
        assert_eq!(RationalMatrix::identity(3).solve(&b).unwrap(), Some(b));
        let x = m(&[&[1, 1]]).solve(&[int(2)]).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], int(2));
        assert_eq!(m(&[&[1], &[1]]).solve(&[int(0), int(1)]).unwrap(), None);
        assert!(m(&[&[1], &[1]]).solve(&[int(0)]).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RationalMatrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn incremental_matches_batch_solution() {
        let a = m(&[&[1, 2, 0, 1], &[0, 0, 1, 1], &[1, 2, 1, 2]]);
        let b = [int(3), int(1), int(4)];
        let mut sys = IncrementalSystem::new(4);
        for (r, rhs) in b.iter().enumerate() {
            sys.push(a.row(r), rhs).unwrap();
        }
        assert_eq!(sys.rank(), 2);
        assert_eq!(sys.solution(), a.solve(&b).unwrap());
        assert_eq!(sys.push(a.row(0), &int(0)).unwrap(), RowStatus::Inconsistent);
        assert_eq!(sys.solution(), None);
    }
}
