use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{ExactScalar, Ring};
use crate::error::{Error, Result};

/// Dense row-major matrix over a [`Ring`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Matrices over ℚ(i).
pub type ExactMatrix = Mat<ExactScalar>;

impl<T: Ring> Mat<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows}×{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Mat::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn zip(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, T::plus)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, T::minus)
    }

    pub fn neg(&self) -> Self {
        self.map(T::negated)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.times(c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out: Mat<T> = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].plus(&a.times(b));
                }
            }
        }
        out
    }

    /// `[self, other] = self·other − other·self`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Mat::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc.plus(self.get(i, i)))
    }
}

impl ExactMatrix {
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| ExactScalar::from_int(v)).collect())
                .collect(),
        )
        .expect("rectangular integer literal")
    }

    /// The matrix unit with a one in position (i, j).
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Mat::zeros(rows, cols);
        m.set(i, j, ExactScalar::one());
        m
    }

    pub fn diagonal(entries: &[ExactScalar]) -> Self {
        let n = entries.len();
        Mat::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                ExactScalar::zero()
            }
        })
    }

    pub fn column(entries: Vec<ExactScalar>) -> Self {
        let n = entries.len();
        Mat {
            rows: n,
            cols: 1,
            data: entries,
        }
    }

    /// Exact rank via fraction-free elimination over the Gaussian integers.
    pub fn rank(&self) -> usize {
        bareiss_rank(self)
    }

    /// Reduced row echelon form and the list of pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Basis of the right nullspace as plain vectors.
    pub fn nullspace_vectors(&self) -> Vec<Vec<ExactScalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![ExactScalar::zero(); self.cols];
                v[f] = ExactScalar::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    /// Basis of the right nullspace as column matrices.
    pub fn nullspace(&self) -> Vec<ExactMatrix> {
        self.nullspace_vectors().into_iter().map(ExactMatrix::column).collect()
    }

    pub fn det(&self) -> Result<ExactScalar> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = ExactScalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(ExactScalar::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv()?;
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<ExactMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = Mat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                ExactScalar::one()
            } else {
                ExactScalar::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(Mat::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// Flattened row-major entries.
    pub fn to_vec(&self) -> Vec<ExactScalar> {
        self.data.clone()
    }

    /// Lift into the jet ring with zero derivative.
    pub fn lift<R: Ring>(&self) -> Mat<R> {
        self.map(R::constant)
    }
}

/// Rank of `m` (free function form).
pub fn matrix_rank(m: &ExactMatrix) -> usize {
    m.rank()
}

/// Nullspace basis of `m` (free function form).
pub fn nullspace(m: &ExactMatrix) -> Vec<ExactMatrix> {
    m.nullspace()
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussInt {
                re: &self.re * &o.re,
                im: BigInt::zero(),
            };
        }
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    /// Division known to be exact.
    fn div_exact(&self, d: &GaussInt) -> GaussInt {
        if d.im.is_zero() {
            return GaussInt {
                re: &self.re / &d.re,
                im: &self.im / &d.re,
            };
        }
        let norm = &d.re * &d.re + &d.im * &d.im;
        let num = self.mul(&GaussInt {
            re: d.re.clone(),
            im: -d.im.clone(),
        });
        GaussInt {
            re: num.re / &norm,
            im: num.im / &norm,
        }
    }
}

fn bareiss_rank(m: &ExactMatrix) -> usize {
    let rows = m.rows;
    let cols = m.cols;
    let ints: Option<Vec<Vec<i128>>> = (0..rows)
        .map(|i| m.row(i).iter().map(|x| x.to_i64().map(i128::from)).collect())
        .collect();
    if let Some(r) = ints.and_then(|a| bareiss_rank_i128(a, cols)) {
        return r;
    }
    // Clear denominators row by row; row scaling does not change the rank.
    let mut a: Vec<Vec<GaussInt>> = (0..rows)
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()));
            let lr = BigRational::from_integer(l);
            row.iter()
                .map(|x| {
                    let s = x.scale_rational(&lr);
                    GaussInt {
                        re: s.re().to_integer(),
                        im: s.im().to_integer(),
                    }
                })
                .collect()
        })
        .collect();
    if let Some(small) = to_small(&a) {
        if let Some(r) = bareiss_rank_i128(small, cols) {
            return r;
        }
    }
    let mut prev = GaussInt {
        re: BigInt::one(),
        im: BigInt::zero(),
    };
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pv = &pivot_row[c];
        let same_scale = *pv == prev;
        for row in tail.iter_mut() {
            let f = row[c].clone();
            if f.is_zero() {
                if !same_scale {
                    for x in row[c + 1..].iter_mut().filter(|x| !x.is_zero()) {
                        *x = pv.mul(x).div_exact(&prev);
                    }
                }
                continue;
            }
            for j in c + 1..cols {
                let (x, y) = (&row[j], &pivot_row[j]);
                if x.is_zero() && y.is_zero() {
                    continue;
                }
                let t = pv.mul(x).sub(&f.mul(y));
                row[j] = t.div_exact(&prev);
            }
            row[c] = GaussInt {
                re: BigInt::zero(),
                im: BigInt::zero(),
            };
        }
        prev = pv.clone();
        r += 1;
    }
    r
}

fn to_small(a: &[Vec<GaussInt>]) -> Option<Vec<Vec<i128>>> {
    use num_traits::ToPrimitive;
    a.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    if x.im.is_zero() {
                        x.re.to_i64().map(i128::from)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect()
}

/// Bareiss elimination in machine integers; `None` on overflow.
fn bareiss_rank_i128(mut a: Vec<Vec<i128>>, cols: usize) -> Option<usize> {
    let rows = a.len();
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pv = pivot_row[c];
        for row in tail.iter_mut() {
            let f = row[c];
            for j in c + 1..cols {
                let (x, y) = (row[j], pivot_row[j]);
                if x == 0 && (y == 0 || f == 0) {
                    continue;
                }
                let t = pv.checked_mul(x)?.checked_sub(f.checked_mul(y)?)?;
                row[j] = t / prev;
            }
            row[c] = 0;
        }
        prev = pv;
        r += 1;
    }
    Some(r)
}

impl<T: fmt::Display> fmt::Display for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> ExactScalar {
        t.parse().unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(ExactMatrix::identity(5).rank(), 5);
        let m = Mat::from_rows(vec![vec![s("1"), s("i")], vec![s("i"), s("-1")]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert!(ExactMatrix::identity(4).nullspace().is_empty());
        assert_eq!(ExactMatrix::zeros(3, 3).nullspace().len(), 3);
        let basis = ExactMatrix::from_ints(&[&[1, 1]]).nullspace();
        assert_eq!(basis, vec![ExactMatrix::column(vec![s("-1"), s("1")])]);
    }

    #[test]
    fn inverse_and_det() {
        let m = ExactMatrix::from_ints(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.det().unwrap(), s("1"));
        assert_eq!(m.mul(&m.inverse().unwrap()), ExactMatrix::identity(2));
        let sing = ExactMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(sing.inverse(), Err(Error::Singular));
    }

    #[test]
    fn bareiss_agrees_with_rref_on_fractions() {
        let m = Mat::from_rows(vec![
            vec![s("1/2"), s("1/3"), s("1/4+i")],
            vec![s("1"), s("2/3"), s("1/2+2*i")],
            vec![s("0"), s("1/7"), s("3")],
        ])
        .unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rref().1.len(), 2);
    }
}
