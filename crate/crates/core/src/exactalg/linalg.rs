use std::fmt;
use std::ops::{Index, IndexMut};

use super::field::Field;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Identity of size `n` whose entries live in the context of `unit`.
    pub fn identity_like(n: usize, unit: &F) -> Self {
        let (zero, one) = (unit.zero_like(), unit.one_like());
        Self::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
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

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<G: Field>(&self, f: impl FnMut(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let zero = self.data[0].zero_like();
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = zero.clone();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let b = &rhs[(k, j)];
                if b.is_zero() {
                    continue;
                }
                acc = acc + a.clone() * b.clone();
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch("matrix-vector".into()));
        }
        Ok((0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect())
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch("matrix difference".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    /// `self - λ·I`.
    pub fn sub_scalar(&self, lambda: &F) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            out[(i, i)] = out[(i, i)].clone() - lambda.clone();
        }
        out
    }

    /// Fraction-free (Bareiss) row echelon form. Returns the echelon matrix
    /// and the pivot columns.
    fn bareiss_echelon(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        if a.data.is_empty() {
            return (a, pivots);
        }
        let mut prev = a.data[0].one_like();
        let mut r = 0;
        for col in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let prev_inv = prev.inverse().expect("Bareiss pivot is nonzero");
            let piv = a[(r, col)].clone();
            for i in r + 1..a.rows {
                let lead = a[(i, col)].clone();
                for j in col + 1..a.cols {
                    let v = (piv.clone() * a[(i, j)].clone() - lead.clone() * a[(r, j)].clone())
                        * prev_inv.clone();
                    a[(i, j)] = v;
                }
                a[(i, col)] = piv.zero_like();
            }
            prev = piv;
            pivots.push(col);
            r += 1;
        }
        (a, pivots)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let (mut a, pivots) = self.bareiss_echelon();
        for (r, &col) in pivots.iter().enumerate().rev() {
            let inv = a[(r, col)].inverse().expect("pivot is nonzero");
            for j in col..a.cols {
                a[(r, j)] = a[(r, j)].clone() * inv.clone();
            }
            for i in 0..r {
                let f = a[(i, col)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..a.cols {
                    let v = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                    a[(i, j)] = v;
                }
            }
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.bareiss_echelon().1.len()
    }

    /// Right kernel `{v : M v = 0}` in canonical (reduced) form.
    pub fn kernel(&self) -> Subspace<F> {
        assert!(!self.data.is_empty(), "kernel of an empty matrix");
        let (r, pivots) = self.rref();
        let zero = self.data[0].zero_like();
        let one = self.data[0].one_like();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![zero.clone(); self.cols];
            v[free] = one.clone();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(row, free)].clone();
            }
            basis.push(v);
        }
        Subspace::spanned_by(self.cols, basis)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    let mut acc = a[0].zero_like();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x.clone() * y.clone();
        }
    }
    acc
}

/// Linear subspace of `F^n`, stored as the rows of its reduced row echelon
/// basis. Two subspaces are equal iff their bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
}

impl<F: Field> Subspace<F> {
    /// Span of arbitrary vectors of length `ambient`.
    pub fn spanned_by(ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        if vectors.is_empty() {
            return Subspace {
                ambient,
                basis: vec![],
            };
        }
        let m = Matrix::from_rows(vectors).expect("vectors share a length");
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: vec![],
        }
    }

    pub fn full_like(ambient: usize, unit: &F) -> Self {
        let id = Matrix::identity_like(ambient, unit);
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| id.row(i).to_vec()).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn contains_vector(&self, v: &[F]) -> bool {
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).expect("same ambient").rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains_vector(v))
    }

    /// Linear forms vanishing on the subspace, as row vectors.
    fn annihilator(&self) -> Vec<Vec<F>> {
        if self.basis.is_empty() {
            return vec![];
        }
        let m = Matrix::from_rows(self.basis.clone()).expect("basis is rectangular");
        m.kernel().basis
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "intersecting subspaces of F^{} and F^{}",
                self.ambient, other.ambient
            )));
        }
        if self.dim() == self.ambient {
            return Ok(other.clone());
        }
        if other.dim() == other.ambient {
            return Ok(self.clone());
        }
        if self.basis.is_empty() || other.basis.is_empty() {
            return Ok(Self::zero(self.ambient));
        }
        let mut eqs = self.annihilator();
        eqs.extend(other.annihilator());
        Ok(Matrix::from_rows(eqs).expect("same ambient").kernel())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::exactalg::{CycNum, Rational};
    use num_bigint::BigInt;

    fn q(k: i64) -> Rational {
        Rational::from_integer(BigInt::from(k))
    }

    fn qmat(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        for n in 1..5 {
            let m = qmat(&vec![&vec![0i64; n][..]; n]);
            assert_eq!(m.kernel().dim(), n);
        }
    }

    #[test]
    fn rank_nullity() {
        let m = qmat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        for v in k.basis() {
            assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == q(0)));
        }
    }

    #[test]
    fn two_planes_in_three_space_meet_in_a_line() {
        // x = 0 and y = z
        let h1 = qmat(&[&[1, 0, 0]]).kernel();
        let h2 = qmat(&[&[0, 1, -1]]).kernel();
        let l = h1.intersect(&h2).unwrap();
        assert_eq!(l.dim(), 1);
        assert_eq!(l.basis()[0], vec![q(0), q(1), q(1)]);
    }

    #[test]
    fn intersection_with_full_space_and_itself() {
        let s = qmat(&[&[1, 1, 0]]).kernel();
        let full = Subspace::full_like(3, &q(1));
        assert_eq!(s.intersect(&full).unwrap(), s);
        assert_eq!(full.intersect(&s).unwrap(), s);
        assert_eq!(s.intersect(&s).unwrap(), s);
        assert!(s.is_subspace_of(&full));
    }

    #[test]
    fn intersection_dimension_mismatch() {
        let a = Subspace::<Rational>::zero(2);
        let b = Subspace::<Rational>::zero(3);
        assert!(a.intersect(&b).is_err());
    }

    #[test]
    fn cyclotomic_kernel() {
        // [[1, z3], [z3^2, 1]] has rank 1 since z3 * z3^2 = 1.
        let m = Matrix::from_rows(vec![
            vec![CycNum::one_in(3), CycNum::root_of_unity(3, 1)],
            vec![CycNum::root_of_unity(3, 2), CycNum::one_in(3)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        assert!(m.mul_vec(&k.basis()[0]).unwrap().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn canonical_basis_is_independent_of_spanning_set() {
        let a = Subspace::spanned_by(3, vec![vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]]);
        let b = Subspace::spanned_by(
            3,
            vec![vec![q(1), q(2), q(1)], vec![q(1), q(0), q(-1)], vec![q(2), q(2), q(0)]],
        );
        assert_eq!(a, b);
    }
}
