use super::matrix::Matrix;
use super::scalar::{FieldSpec, Scalar};
use super::vector;
use std::fmt;

/// A subspace of `K^ambient`, kept as the rows of its reduced row echelon
/// basis so that equal subspaces compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Self {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Self::span(field, ambient, (0..ambient).map(|i| vector::unit(field, ambient, i)))
    }

    /// Span of the given vectors. Panics if a vector has the wrong length.
    pub fn span<I>(field: FieldSpec, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut s = Self::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    /// Adds `v` to the spanning set, keeping the basis reduced.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length differs from ambient dimension");
        let mut r = self.reduce(&v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        r = vector::scale(&r, &inv);
        for row in self.rows.iter_mut() {
            let f = row[p].clone();
            if !f.is_zero() {
                vector::axpy(row, &-f, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// The reduced basis.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = r[p].clone();
            if !f.is_zero() {
                vector::axpy(&mut r, &-f, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vector::is_zero(&self.reduce(v))
    }

    /// Coordinates of `v` in the reduced basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Inverse of [`Subspace::coords`].
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vector::zero(self.field, self.ambient);
        for (c, row) in coords.iter().zip(&self.rows) {
            vector::axpy(&mut out, c, row);
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.field, self.ambient);
        }
        // x = Σ a_i u_i = Σ b_j v_j  <=>  [U | -V] (a, b) = 0
        let mut cols: Vec<Vec<Scalar>> = self.rows.clone();
        cols.extend(other.rows.iter().map(|v| vector::neg(v)));
        let m = Matrix::from_columns(self.field, self.ambient, &cols).expect("consistent shapes");
        let kernel = m.kernel_basis().expect("uniform field");
        let k = self.dim();
        Subspace::span(
            self.field,
            self.ambient,
            kernel.into_iter().map(|z| {
                let mut x = vector::zero(self.field, self.ambient);
                for (a, u) in z[..k].iter().zip(&self.rows) {
                    vector::axpy(&mut x, a, u);
                }
                x
            }),
        )
    }

    /// Image under a linear map with `ambient` columns.
    pub fn image(&self, m: &Matrix) -> Subspace {
        Subspace::span(self.field, m.rows(), self.rows.iter().map(|r| m.apply(r)))
    }

    /// Standard basis indices not used as pivots; their unit vectors span a
    /// complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.pivots.contains(i)).collect()
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(|r| vector::display(r)).collect();
        write!(f, "span{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| FieldSpec::Rationals.int(x)).collect()
    }

    #[test]
    fn span_is_canonical() {
        let q = FieldSpec::Rationals;
        let a = Subspace::span(q, 3, [v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(q, 3, [v(&[1, 2, 1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&v(&[2, 3, 1])));
        assert!(!a.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn intersection_and_sum() {
        let q = FieldSpec::Rationals;
        let a = Subspace::span(q, 3, [v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(q, 3, [v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersection(&b), Subspace::span(q, 3, [v(&[0, 1, 0])]));
        assert_eq!(a.sum(&b), Subspace::full(q, 3));
    }

    #[test]
    fn coords_round_trip() {
        let q = FieldSpec::Rationals;
        let a = Subspace::span(q, 3, [v(&[2, 4, 0]), v(&[0, 3, 3])]);
        let x = v(&[1, 5, 3]);
        let c = a.coords(&x).unwrap();
        assert_eq!(a.combine(&c), x);
        assert_eq!(a.complement_indices(), vec![2]);
    }
}
