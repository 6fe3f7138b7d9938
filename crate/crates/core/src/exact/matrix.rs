use core::fmt;
use core::ops::{Index, IndexMut};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{AlgebraError, Poly, Rational, Var};

/// A dense matrix of polynomials, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: alloc::vec![Poly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Poly::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(AlgebraError::Dimension {
                lhs: (r, c),
                rhs: (1, bad.len()),
            });
        }
        Ok(PolyMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer matrix literal, handy for fixed representations.
    pub fn from_ints<const C: usize>(rows: &[[i64; C]]) -> Self {
        PolyMatrix::from_fn(rows.len(), C, |i, j| Poly::int(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.entries.iter().filter(|p| !p.is_zero()).count()
    }

    /// Total number of polynomial terms over all entries.
    pub fn term_count(&self) -> usize {
        self.entries.iter().map(Poly::num_terms).sum()
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<((usize, usize), &Poly)> {
        self.entries
            .iter()
            .position(|p| !p.is_zero())
            .map(|k| ((k / self.cols, k % self.cols), &self.entries[k]))
    }

    fn check_same_shape(&self, other: &PolyMatrix) -> Result<(), AlgebraError> {
        if self.shape() != other.shape() {
            return Err(AlgebraError::Dimension {
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &PolyMatrix, f: impl Fn(&Poly, &Poly) -> Poly) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map(
        &self,
        f: impl Fn(&Poly) -> Result<Poly, AlgebraError>,
    ) -> Result<PolyMatrix, AlgebraError> {
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        self.map(|p| p.scale(c))
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map(|p| -p)
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Matrix product; zero entries are skipped, so sparse operands are cheap.
    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Dimension {
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        let mut out = PolyMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product with row-major blocks: block `(i, j)` of `A ⊗ B` is
    /// `A[i, j] · B`.
    pub fn kron(&self, other: &PolyMatrix) -> PolyMatrix {
        let (p, q) = other.shape();
        PolyMatrix::from_fn(self.rows * p, self.cols * q, |r, c| {
            let a = &self[(r / p, c / q)];
            if a.is_zero() {
                Poly::zero()
            } else {
                a * &other[(r % p, c % q)]
            }
        })
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.rows != self.cols || other.shape() != self.shape() {
            return Err(AlgebraError::Dimension {
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Entry-wise exact evaluation.
    pub fn eval(&self, point: &BTreeMap<Var, Rational>) -> Result<PolyMatrix, AlgebraError> {
        self.try_map(|p| Ok(Poly::constant(p.eval(point)?)))
    }

    /// Entry-wise substitution.
    pub fn substitute(
        &self,
        image: impl Fn(Var) -> Option<Poly>,
    ) -> Result<PolyMatrix, AlgebraError> {
        self.try_map(|p| p.substitute(&image))
    }

    /// Determinant by cofactor expansion; intended for small matrices.
    pub fn determinant(&self) -> Result<Poly, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::Dimension {
                lhs: self.shape(),
                rhs: (self.cols, self.rows),
            });
        }
        Ok(det_rec(self, &(0..self.cols).collect::<Vec<_>>(), 0))
    }
}

fn det_rec(m: &PolyMatrix, cols: &[usize], row: usize) -> Poly {
    if cols.is_empty() {
        return Poly::one();
    }
    let mut acc = Poly::zero();
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[(row, c)];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = entry * &det_rec(m, &rest, row + 1);
        if k % 2 == 0 {
            acc += &minor;
        } else {
            acc -= &minor;
        }
    }
    acc
}

impl Index<(usize, usize)> for PolyMatrix {
    type Output = Poly;
    fn index(&self, (i, j): (usize, usize)) -> &Poly {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Poly {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            f.write_str("  ")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            f.write_str("\n")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Symbol;

    #[test]
    fn kron_of_identities() {
        let i3 = PolyMatrix::identity(3);
        assert_eq!(i3.kron(&i3), PolyMatrix::identity(9));
    }

    #[test]
    fn self_commutator_vanishes() {
        let a = PolyMatrix::from_fn(3, 3, |i, j| {
            Poly::var(Symbol::X).pow((i + j) as u32) + Poly::int((i * 3 + j) as i64)
        });
        assert!(a.commutator(&a).unwrap().is_zero());
    }

    #[test]
    fn group_element_kron_entry() {
        let x = Poly::var(Symbol::X);
        let y = Poly::var(Symbol::Y);
        let z = Poly::var(Symbol::Z);
        let m = PolyMatrix::from_rows(alloc::vec![
            alloc::vec![x.clone(), Poly::zero(), y.clone()],
            alloc::vec![Poly::zero(), x.clone(), z],
            alloc::vec![Poly::zero(), Poly::zero(), Poly::one()],
        ])
        .unwrap();
        let mm = m.kron(&m);
        // entry (1,3) in 1-based indexing
        assert_eq!(mm[(0, 2)], &x * &y);
    }

    #[test]
    fn dimension_errors() {
        let a = PolyMatrix::zeros(2, 3);
        let b = PolyMatrix::zeros(2, 3);
        assert!(matches!(a.mul(&b), Err(AlgebraError::Dimension { .. })));
        assert!(a.commutator(&b).is_err());
        assert!(a.add(&PolyMatrix::zeros(3, 2)).is_err());
        assert!(
            PolyMatrix::from_rows(alloc::vec![alloc::vec![Poly::one()], alloc::vec![]]).is_err()
        );
    }

    #[test]
    fn determinant_of_triangular() {
        let m = PolyMatrix::from_ints(&[[2, 5, 1], [0, 3, 7], [0, 0, -1]]);
        assert_eq!(m.determinant().unwrap(), Poly::int(-6));
    }
}
