use super::{ExactMatrix, ExactScalar, Mat};
use crate::error::{Error, Result};

/// A linear subspace of ℚ(i)^N with a fixed ordered basis and a fast
/// coordinate map (a left inverse supported on `dim` pivot positions).
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<ExactScalar>>,
    pivots: Vec<usize>,
    left_inverse: ExactMatrix,
}

impl Subspace {
    /// The basis must be linearly independent.
    pub fn new(ambient: usize, basis: Vec<Vec<ExactScalar>>) -> Result<Self> {
        if basis.iter().any(|v| v.len() != ambient) {
            return Err(Error::Dimension("basis vector of the wrong length".into()));
        }
        let d = basis.len();
        if d == 0 {
            return Ok(Subspace {
                ambient,
                basis,
                pivots: Vec::new(),
                left_inverse: ExactMatrix::zeros(0, 0),
            });
        }
        // Rows of `rows` are basis vectors; its pivot columns are coordinates
        // on which the basis is independent.
        let rows = Mat::from_rows(basis.clone())?;
        let (_, pivots) = rows.rref();
        if pivots.len() != d {
            return Err(Error::Dimension("basis is linearly dependent".into()));
        }
        let square = Mat::from_fn(d, d, |i, j| basis[j][pivots[i]].clone());
        let left_inverse = square.inverse()?;
        Ok(Subspace {
            ambient,
            basis,
            pivots,
            left_inverse,
        })
    }

    /// A subspace spanned by arbitrary (possibly dependent) vectors; the
    /// stored basis is the reduced echelon basis of the span.
    pub fn span(ambient: usize, vectors: &[Vec<ExactScalar>]) -> Result<Self> {
        Subspace::new(ambient, echelon_basis(ambient, vectors)?)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<ExactScalar>] {
        &self.basis
    }

    /// Coordinates of `v` assuming `v` lies in the subspace.
    pub fn coords_unchecked(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        let d = self.dim();
        let support: Vec<(usize, &ExactScalar)> = (0..d)
            .map(|j| (j, &v[self.pivots[j]]))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        (0..d)
            .map(|i| {
                support.iter().fold(ExactScalar::zero(), |acc, &(j, x)| {
                    let a = self.left_inverse.get(i, j);
                    if a.is_zero() {
                        acc
                    } else {
                        &acc + &(a * x)
                    }
                })
            })
            .collect()
    }

    pub fn combine(&self, coords: &[ExactScalar]) -> Vec<ExactScalar> {
        let mut out = vec![ExactScalar::zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *o = &*o + &(c * x);
                }
            }
        }
        out
    }

    /// Coordinates of `v`, or `None` when `v` is not in the subspace.
    pub fn coords(&self, v: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
        let c = self.coords_unchecked(v);
        (self.combine(&c) == v).then_some(c)
    }

    pub fn contains(&self, v: &[ExactScalar]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn same_span(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }
}

/// Reduced echelon basis of the span of `vectors` (canonical for the span).
pub fn echelon_basis(ambient: usize, vectors: &[Vec<ExactScalar>]) -> Result<Vec<Vec<ExactScalar>>> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let m = Mat::from_rows(vectors.to_vec())?;
    if m.cols() != ambient {
        return Err(Error::Dimension("vector of the wrong length".into()));
    }
    let (r, pivots) = m.rref();
    Ok((0..pivots.len()).map(|i| r.row(i).to_vec()).collect())
}

/// Dimension of the span of `vectors`.
pub fn span_dim(vectors: &[Vec<ExactScalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Mat::from_rows(vectors.to_vec()).map_or(0, |m| m.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<ExactScalar> {
        xs.iter().map(|&x| ExactScalar::from_int(x)).collect()
    }

    #[test]
    fn coordinates_round_trip() {
        let sub = Subspace::new(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let w = v(&[2, 5, 3]);
        assert_eq!(sub.coords(&w), Some(v(&[2, 3])));
        assert!(!sub.contains(&v(&[1, 0, 0])));
    }

    #[test]
    fn dependent_basis_rejected() {
        assert!(Subspace::new(2, vec![v(&[1, 2]), v(&[2, 4])]).is_err());
        assert_eq!(Subspace::span(2, &[v(&[1, 2]), v(&[2, 4])]).unwrap().dim(), 1);
    }
}
