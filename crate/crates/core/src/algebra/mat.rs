use std::fmt;

use smallvec::SmallVec;

use super::field::{Fe, Field};
use crate::error::{Error, Result};

/// Square matrix over `F_{q^2}`, row-major.
///
/// Entries are plain field indices; every arithmetic method takes the ambient
/// [`Field`] explicitly.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    dim: usize,
    entries: SmallVec<[Fe; 36]>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.dim {
            if r > 0 {
                f.write_str("; ")?;
            }
            for c in 0..self.dim {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        f.write_str("]")
    }
}

impl Mat {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrices have positive dimension");
        Mat {
            dim,
            entries: SmallVec::from_elem(Fe::ZERO, dim * dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    /// The matrix with ones on the skew-diagonal and zeros elsewhere.
    pub fn skew_identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, dim - 1 - i, Fe::ONE);
        }
        m
    }

    pub fn from_entries(dim: usize, entries: &[Fe]) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(Mat {
            dim,
            entries: SmallVec::from_slice(entries),
        })
    }

    pub fn from_rows(rows: &[&[Fe]]) -> Result<Self> {
        let dim = rows.len();
        let flat: Vec<Fe> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: flat.len(),
            });
        }
        Self::from_entries(dim, &flat)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Fe] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.entries[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.entries[r * self.dim + c] = v;
    }

    /// Copies `block` into this matrix with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for r in 0..block.dim {
            for c in 0..block.dim {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    /// The `size x size` block with top-left corner at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, size: usize) -> Mat {
        let mut out = Mat::zeros(size);
        for r in 0..size {
            for c in 0..size {
                out.set(r, c, self.get(r0 + r, c0 + c));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|r| {
            (0..self.dim).all(|c| self.get(r, c) == if r == c { Fe::ONE } else { Fe::ZERO })
        })
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        (0..self.dim).all(|r| {
            self.get(r, r) == Fe::ONE && (r + 1..self.dim).all(|c| self.get(r, c).is_zero())
        })
    }

    pub fn is_strictly_lower(&self) -> bool {
        (0..self.dim).all(|r| (r..self.dim).all(|c| self.get(r, c).is_zero()))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_skew_symmetric(&self, f: &Field) -> bool {
        self.transpose() == self.neg(f)
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Reflection in the skew-diagonal: entry `(a, b)` of the result is entry
    /// `(n-1-b, n-1-a)` of `self`.
    pub fn flip_transpose(&self) -> Mat {
        let n = self.dim;
        let mut out = Mat::zeros(n);
        for a in 0..n {
            for b in 0..n {
                out.set(a, b, self.get(n - 1 - b, n - 1 - a));
            }
        }
        out
    }

    /// Entrywise Frobenius conjugation.
    pub fn conj(&self, f: &Field) -> Mat {
        self.map(|x| f.conj(x))
    }

    pub fn neg(&self, f: &Field) -> Mat {
        self.map(|x| f.neg(x))
    }

    pub fn scale(&self, s: Fe, f: &Field) -> Mat {
        self.map(|x| f.mul(s, x))
    }

    fn map(&self, g: impl Fn(Fe) -> Fe) -> Mat {
        Mat {
            dim: self.dim,
            entries: self.entries.iter().map(|&x| g(x)).collect(),
        }
    }

    pub fn add(&self, rhs: &Mat, f: &Field) -> Mat {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in add");
        Mat {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Mat, f: &Field) -> Mat {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sub");
        Mat {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Mat, f: &Field) -> Mat {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in mul");
        let n = self.dim;
        let mut out = Mat::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.entries[i * n + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.entries[l * n + j];
                    if !b.is_zero() {
                        let cell = &mut out.entries[i * n + j];
                        *cell = f.add(*cell, f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// Inverse by Gauss-Jordan elimination, with a substitution fast path for
    /// lower unitriangular input.
    pub fn inverse(&self, f: &Field) -> Result<Mat> {
        if self.is_lower_unitriangular() {
            return Ok(self.inverse_unitriangular(f));
        }
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::Singular)?;
            if pivot != col {
                for c in 0..n {
                    a.entries.swap(pivot * n + c, col * n + c);
                    inv.entries.swap(pivot * n + c, col * n + c);
                }
            }
            let scale = f.inv(a.get(col, col)).expect("pivot is nonzero");
            for c in 0..n {
                a.set(col, c, f.mul(scale, a.get(col, c)));
                inv.set(col, c, f.mul(scale, inv.get(col, c)));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = f.sub(a.get(r, c), f.mul(factor, a.get(col, c)));
                    a.set(r, c, v);
                    let w = f.sub(inv.get(r, c), f.mul(factor, inv.get(col, c)));
                    inv.set(r, c, w);
                }
            }
        }
        Ok(inv)
    }

    /// Forward substitution; only meaningful for lower unitriangular `self`.
    pub fn inverse_unitriangular(&self, f: &Field) -> Mat {
        debug_assert!(self.is_lower_unitriangular());
        let n = self.dim;
        let mut inv = Mat::identity(n);
        for c in 0..n {
            for r in c + 1..n {
                // inv[r][c] = -sum_{l=c}^{r-1} a[r][l] inv[l][c]
                let mut acc = Fe::ZERO;
                for l in c..r {
                    let a = self.get(r, l);
                    if !a.is_zero() {
                        acc = f.add(acc, f.mul(a, inv.get(l, c)));
                    }
                }
                inv.set(r, c, f.neg(acc));
            }
        }
        inv
    }

    /// `conj(v)^T w` as a matrix: entry `(a, b)` is `conj(v[a]) * w[b]`.
    pub fn conj_outer(v: &[Fe], w: &[Fe], f: &Field) -> Mat {
        assert_eq!(v.len(), w.len());
        let n = v.len();
        let mut out = Mat::zeros(n);
        for a in 0..n {
            let ca = f.conj(v[a]);
            for b in 0..n {
                out.set(a, b, f.mul(ca, w[b]));
            }
        }
        out
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Fe], f: &Field) -> Vec<Fe> {
        assert_eq!(self.dim, v.len());
        (0..self.dim)
            .map(|r| {
                (0..self.dim).fold(Fe::ZERO, |acc, c| f.add(acc, f.mul(self.get(r, c), v[c])))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_mat(dim: usize, f: &Field, rng: &mut ChaCha8Rng) -> Mat {
        let e: Vec<Fe> = (0..dim * dim)
            .map(|_| Fe(rng.random_range(0..f.size()) as u16))
            .collect();
        Mat::from_entries(dim, &e).unwrap()
    }

    #[test]
    fn flip_transpose_two_by_two() {
        let f = Field::new(5, 1).unwrap();
        let (a, b, c, d) = (Fe(3), Fe(7), Fe(11), Fe(19));
        let m = Mat::from_rows(&[&[a, b], &[c, d]]).unwrap();
        let expect = Mat::from_rows(&[&[d, b], &[c, a]]).unwrap();
        assert_eq!(m.flip_transpose(), expect);
        for n in 1..6 {
            let q = Mat::skew_identity(n);
            assert_eq!(q.flip_transpose(), q);
            assert!(q.mul(&q, &f).is_identity());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = Field::new(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut inverted = 0;
        for _ in 0..200 {
            let m = random_mat(3, &f, &mut rng);
            if let Ok(inv) = m.inverse(&f) {
                assert!(m.mul(&inv, &f).is_identity());
                inverted += 1;
            }
        }
        assert!(inverted > 150);
        assert!(matches!(Mat::zeros(2).inverse(&f), Err(Error::Singular)));
    }

    #[test]
    fn unitriangular_inverse_stays_unitriangular() {
        let f = Field::new(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let mut m = Mat::identity(5);
            for r in 0..5 {
                for c in 0..r {
                    m.set(r, c, Fe(rng.random_range(0..25)));
                }
            }
            let inv = m.inverse(&f).unwrap();
            assert!(inv.is_lower_unitriangular());
            assert!(m.mul(&inv, &f).is_identity());
            assert!(inv.mul(&m, &f).is_identity());
        }
    }

    #[test]
    fn from_rows_rejects_ragged_input() {
        assert!(Mat::from_rows(&[&[Fe(1), Fe(2)], &[Fe(0)]]).is_err());
        assert!(Mat::from_entries(2, &[Fe(1)]).is_err());
    }
}
