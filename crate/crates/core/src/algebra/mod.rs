//! Finite-dimensional unital associative algebras given by structure
//! constants.
//!
//! Elements are coordinate vectors in the algebra's basis. The structure
//! constants are kept sparse: for each basis pair only the nonzero
//! coordinates of the product are stored, which is what makes crossed
//! products of a few dozen dimensions cheap to multiply.

mod forms;
mod radical;

pub use forms::{
    frobenius_form, frobenius_form_seeded, gram_matrix, is_nondegenerate, is_symmetric_form,
    symmetric_form, symmetric_form_seeded, FormSearch, SearchMethod, SYMBOLIC_MAX_DIM,
};
pub use radical::{is_semisimple, jacobson_radical};

use crate::error::{Error, Result};
use crate::linalg::{vector, FieldSpec, Matrix, Scalar, Subspace};
use crate::report::Report;
use std::fmt;

type Sparse = Vec<(usize, Scalar)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    field: FieldSpec,
    names: Vec<String>,
    /// `products[i * dim + j]` holds the nonzero coordinates of `b_i b_j`.
    products: Vec<Sparse>,
    unit: Vec<Scalar>,
}

fn sparsify(v: &[Scalar]) -> Sparse {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k, x.clone()))
        .collect()
}

impl Algebra {
    /// Builds an algebra from dense structure constants: `table[i][j]` is the
    /// coordinate vector of `b_i b_j`. Only shapes and fields are checked
    /// here; [`validate_algebra`] checks the axioms.
    pub fn new(
        field: FieldSpec,
        names: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<Self> {
        let n = names.len();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::Malformed(format!("structure table is not {n}x{n}")));
        }
        if unit.len() != n {
            return Err(Error::Malformed(format!("unit has {} coordinates, expected {n}", unit.len())));
        }
        let all = table.iter().flatten().flatten().chain(unit.iter());
        if let Some(s) = all.clone().find(|s| s.field() != field) {
            return Err(Error::Malformed(format!(
                "structure constant in {} for an algebra over {field}",
                s.field()
            )));
        }
        let mut products = Vec::with_capacity(n * n);
        for row in &table {
            for v in row {
                if v.len() != n {
                    return Err(Error::Malformed(format!(
                        "product with {} coordinates, expected {n}",
                        v.len()
                    )));
                }
                products.push(sparsify(v));
            }
        }
        Ok(Self {
            field,
            names,
            products,
            unit,
        })
    }

    /// Builds an algebra from a product rule on basis indices.
    pub fn from_fn<F>(field: FieldSpec, names: Vec<String>, unit: Vec<Scalar>, rule: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> Vec<Scalar>,
    {
        let n = names.len();
        let table = (0..n).map(|i| (0..n).map(|j| rule(i, j)).collect()).collect();
        Self::new(field, names, table, unit)
    }

    /// The one-dimensional algebra `K`.
    pub fn scalars(field: FieldSpec) -> Self {
        Self::from_fn(field, vec!["1".into()], vec![field.one()], |_, _| vec![field.one()])
            .expect("well-formed")
    }

    /// The zero algebra (dimension 0, where `1 = 0`).
    pub fn zero(field: FieldSpec) -> Self {
        Self::from_fn(field, Vec::new(), Vec::new(), |_, _| Vec::new()).expect("well-formed")
    }

    /// `K^k` with orthogonal idempotent basis `e1..ek`.
    pub fn diagonal(field: FieldSpec, k: usize) -> Self {
        let names = (1..=k).map(|i| format!("e{i}")).collect();
        Self::from_fn(field, names, vec![field.one(); k], |i, j| {
            if i == j {
                vector::unit(field, k, i)
            } else {
                vector::zero(field, k)
            }
        })
        .expect("well-formed")
    }

    /// Full matrix algebra `M_n(K)` on matrix units `E_ij` in row-major order.
    pub fn matrix_algebra(field: FieldSpec, n: usize) -> Self {
        let d = n * n;
        let names = (0..d).map(|k| format!("E{}{}", k / n + 1, k % n + 1)).collect();
        let unit = (0..d)
            .map(|k| if k / n == k % n { field.one() } else { field.zero() })
            .collect();
        Self::from_fn(field, names, unit, |a, b| {
            let (i, j, k, l) = (a / n, a % n, b / n, b % n);
            if j == k {
                vector::unit(field, d, i * n + l)
            } else {
                vector::zero(field, d)
            }
        })
        .expect("well-formed")
    }

    /// Upper triangular 2x2 matrices on the basis `E11, E12, E22`.
    pub fn upper_triangular(field: FieldSpec) -> Self {
        // (row, col) of each basis element
        let units = [(0, 0), (0, 1), (1, 1)];
        let names = vec!["E11".into(), "E12".into(), "E22".into()];
        let unit = vec![field.one(), field.zero(), field.one()];
        Self::from_fn(field, names, unit, |a, b| {
            let (i, j) = units[a];
            let (k, l) = units[b];
            if j == k {
                let pos = units.iter().position(|&u| u == (i, l)).expect("closed");
                vector::unit(field, 3, pos)
            } else {
                vector::zero(field, 3)
            }
        })
        .expect("well-formed")
    }

    /// `K[x]/(x^2)` on the basis `1, x`.
    pub fn dual_numbers(field: FieldSpec) -> Self {
        Self::from_fn(
            field,
            vec!["1".into(), "x".into()],
            vector::unit(field, 2, 0),
            |i, j| {
                if i + j < 2 {
                    vector::unit(field, 2, i + j)
                } else {
                    vector::zero(field, 2)
                }
            },
        )
        .expect("well-formed")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vector::zero(self.field, self.dim())
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        vector::unit(self.field, self.dim(), i)
    }

    /// Coordinates of `b_i b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        for (k, c) in &self.products[i * self.dim() + j] {
            out[*k] = c.clone();
        }
        out
    }

    pub(crate) fn basis_product_sparse(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim() + j]
    }

    /// Product of two coordinate vectors. Panics on length mismatch; use
    /// [`Element`] for checked arithmetic.
    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        assert!(a.len() == n && b.len() == n, "coordinate vector of the wrong length");
        let mut out = self.zero_vector();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let products = &self.products[i * n + j];
                if products.is_empty() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in products {
                    out[*k] += &(&xy * c);
                }
            }
        }
        out
    }

    pub fn power(&self, a: &[Scalar], k: u64) -> Vec<Scalar> {
        let mut acc = self.unit.clone();
        let mut base = a.to_vec();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Matrix of `y -> x y`.
    pub fn left_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| self.mul(x, &self.basis_vector(j)))
            .collect();
        Matrix::from_columns(self.field, self.dim(), &cols).expect("square")
    }

    /// Matrix of `y -> y x`.
    pub fn right_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| self.mul(&self.basis_vector(j), x))
            .collect();
        Matrix::from_columns(self.field, self.dim(), &cols).expect("square")
    }

    pub fn commutes_with_all(&self, x: &[Scalar]) -> bool {
        (0..self.dim()).all(|i| {
            let b = self.basis_vector(i);
            self.mul(x, &b) == self.mul(&b, x)
        })
    }

    pub fn is_idempotent(&self, x: &[Scalar]) -> bool {
        self.mul(x, x) == x
    }

    pub fn is_central_idempotent(&self, x: &[Scalar]) -> bool {
        self.is_idempotent(x) && self.commutes_with_all(x)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.products[i * n + j] == self.products[j * n + i]))
    }

    /// `x^(dim+1) = 0`.
    pub fn is_nilpotent(&self, x: &[Scalar]) -> bool {
        vector::is_zero(&self.power(x, self.dim() as u64 + 1))
    }

    /// The ideal `R e` for a central idempotent `e`, as the column space of
    /// right multiplication by `e`.
    pub fn ideal_of_idempotent(&self, e: &[Scalar]) -> Subspace {
        Subspace::span(
            self.field,
            self.dim(),
            (0..self.dim()).map(|i| self.mul(&self.basis_vector(i), e)),
        )
    }

    /// Smallest two-sided ideal containing the given vectors.
    pub fn ideal_generated(&self, gens: &[Vec<Scalar>]) -> Subspace {
        let n = self.dim();
        let mut s = Subspace::span(self.field, n, gens.iter().cloned());
        loop {
            let mut grown = s.clone();
            for v in s.basis() {
                for i in 0..n {
                    let b = self.basis_vector(i);
                    grown.insert(self.mul(&b, v));
                    grown.insert(self.mul(v, &b));
                }
            }
            if grown.dim() == s.dim() {
                return s;
            }
            s = grown;
        }
    }

    /// `Ok(())` when the span is a two-sided ideal, otherwise a witness
    /// product that escapes it.
    pub fn check_ideal(&self, span: &Subspace) -> std::result::Result<(), String> {
        for v in span.basis() {
            for i in 0..self.dim() {
                let b = self.basis_vector(i);
                let left = self.mul(&b, v);
                if !span.contains(&left) {
                    return Err(format!("{} * {} = {}", self.names[i], vector::display(v), vector::display(&left)));
                }
                let right = self.mul(v, &b);
                if !span.contains(&right) {
                    return Err(format!("{} * {} = {}", vector::display(v), self.names[i], vector::display(&right)));
                }
            }
        }
        Ok(())
    }

    /// Inverse of `w` inside the corner `R e`, where `e` is a central
    /// idempotent and `w` is meant to lie in `R e`.
    pub fn corner_inverse(&self, w: &[Scalar], e: &[Scalar]) -> Option<Vec<Scalar>> {
        if self.mul(w, e) != w {
            return None;
        }
        let corner = self.ideal_of_idempotent(e);
        // w * (Σ c_k v_k) = e
        let cols: Vec<Vec<Scalar>> = corner.basis().iter().map(|v| self.mul(w, v)).collect();
        let m = Matrix::from_columns(self.field, self.dim(), &cols).ok()?;
        let c = m.solve(e).ok()??;
        let x = corner.combine(&c);
        (self.mul(&x, w) == e).then_some(x)
    }

    /// Structure of an ideal `R e` (or any subalgebra with its own unit) on a
    /// chosen basis. `unit` is the subalgebra's identity in ambient
    /// coordinates.
    pub fn subalgebra(&self, basis: &[Vec<Scalar>], names: Vec<String>, unit: &[Scalar]) -> Result<Algebra> {
        let span = Subspace::span(self.field, self.dim(), basis.iter().cloned());
        if span.dim() != basis.len() {
            return Err(Error::Malformed("subalgebra basis is linearly dependent".into()));
        }
        let m = Matrix::from_columns(self.field, self.dim(), basis)?;
        let coords = |v: &[Scalar]| -> Result<Vec<Scalar>> {
            m.solve(v)?
                .ok_or_else(|| Error::Malformed(format!("{} leaves the subalgebra", vector::display(v))))
        };
        let unit_coords = coords(unit)?;
        let k = basis.len();
        let mut table = vec![vec![Vec::new(); k]; k];
        for i in 0..k {
            for j in 0..k {
                table[i][j] = coords(&self.mul(&basis[i], &basis[j]))?;
            }
        }
        Algebra::new(self.field, names, table, unit_coords)
    }

    /// Names for vectors of an embedded basis: reuse the ambient name when the
    /// vector is a basis vector, otherwise `prefix{i}`.
    /// The identity of the subalgebra spanned by `basis`, if it has one, found by solving
    /// `u t = t u = t` for every basis element `t`.
    pub fn unit_of_span(&self, basis: &[Vec<Scalar>]) -> Result<Option<Vec<Scalar>>> {
        let f = self.field;
        let m = self.dim();
        let d = basis.len();
        if d == 0 {
            return Ok(Some(vector::zero(f, m)));
        }
        // unknowns c_k with u = Σ c_k b_k
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for t in basis {
            let left: Vec<Vec<Scalar>> = basis.iter().map(|b| self.mul(b, t)).collect();
            let right: Vec<Vec<Scalar>> = basis.iter().map(|b| self.mul(t, b)).collect();
            for cols in [left, right] {
                for coord in 0..m {
                    rows.push(cols.iter().map(|c| c[coord].clone()).collect::<Vec<_>>());
                    rhs.push(t[coord].clone());
                }
            }
        }
        let system = Matrix::from_rows(f, d, &rows)?;
        let Some(c) = system.solve(&rhs)? else {
            return Ok(None);
        };
        let mut u = vector::zero(f, m);
        for (ck, b) in c.iter().zip(basis) {
            vector::axpy(&mut u, ck, b);
        }
        Ok(Some(u))
    }

    pub fn embedded_names(&self, basis: &[Vec<Scalar>], prefix: &str) -> Vec<String> {
        basis
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let nz: Vec<usize> = (0..v.len()).filter(|&k| !v[k].is_zero()).collect();
                if nz.len() == 1 && v[nz[0]].is_one() {
                    self.names[nz[0]].clone()
                } else {
                    format!("{prefix}{i}")
                }
            })
            .collect()
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element<'_>> {
        Element::new(self, coords)
    }

    pub fn display(&self, v: &[Scalar]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    self.names[i].clone()
                } else {
                    format!("{c}*{}", self.names[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "algebra over {} of dimension {}", self.field, self.dim())
    }
}

/// An element tied to its parent algebra, for checked arithmetic.
#[derive(Debug, Clone)]
pub struct Element<'a> {
    algebra: &'a Algebra,
    coords: Vec<Scalar>,
}

impl<'a> Element<'a> {
    pub fn new(algebra: &'a Algebra, coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for an algebra of dimension {}",
                coords.len(),
                algebra.dim()
            )));
        }
        if coords.iter().any(|c| c.field() != algebra.field()) {
            return Err(Error::FieldMismatch("element coordinate from another field".into()));
        }
        Ok(Self { algebra, coords })
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn mul(&self, other: &Element<'a>) -> Result<Element<'a>> {
        if !std::ptr::eq(self.algebra, other.algebra) {
            return Err(Error::ParentMismatch);
        }
        Ok(Element {
            algebra: self.algebra,
            coords: self.algebra.mul(&self.coords, &other.coords),
        })
    }

    pub fn add(&self, other: &Element<'a>) -> Result<Element<'a>> {
        if !std::ptr::eq(self.algebra, other.algebra) {
            return Err(Error::ParentMismatch);
        }
        Ok(Element {
            algebra: self.algebra,
            coords: vector::add(&self.coords, &other.coords),
        })
    }
}

impl PartialEq for Element<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.algebra, other.algebra) && self.coords == other.coords
    }
}

impl fmt::Display for Element<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.algebra.display(&self.coords))
    }
}

/// Checks associativity on every basis triple and that the unit is a
/// two-sided identity.
pub fn validate_algebra(a: &Algebra) -> Report {
    const MAX_WITNESSES: usize = 8;
    let mut report = Report::new("algebra");
    let n = a.dim();
    report.check("associativity");
    let mut failures = 0;
    'outer: for i in 0..n {
        for j in 0..n {
            let ij = a.basis_product(i, j);
            for k in 0..n {
                let bk = a.basis_vector(k);
                let left = a.mul(&ij, &bk);
                let right = a.mul(&a.basis_vector(i), &a.basis_product(j, k));
                if left != right {
                    report.fail(
                        "associativity",
                        format!(
                            "({} {}) {} = {} but {} ({} {}) = {}",
                            a.names[i],
                            a.names[j],
                            a.names[k],
                            a.display(&left),
                            a.names[i],
                            a.names[j],
                            a.names[k],
                            a.display(&right)
                        ),
                    );
                    failures += 1;
                    if failures >= MAX_WITNESSES {
                        break 'outer;
                    }
                }
            }
        }
    }
    report.check("unit");
    for i in 0..n {
        let b = a.basis_vector(i);
        if a.mul(a.unit(), &b) != b || a.mul(&b, a.unit()) != b {
            report.fail("unit", format!("1 does not fix {}", a.names[i]));
            break;
        }
    }
    report
}

/// Basis of the center `{z : z b = b z for every basis element b}`.
pub fn center(a: &Algebra) -> Subspace {
    let n = a.dim();
    let f = a.field();
    // row (i, k): Σ_j z_j (c_{ji}^k - c_{ij}^k) = 0
    let mut constraints = Subspace::zero(f, n);
    for i in 0..n {
        let mut rows = vec![vector::zero(f, n); n];
        for j in 0..n {
            for (k, c) in a.basis_product_sparse(j, i) {
                rows[*k][j] += c;
            }
            for (k, c) in a.basis_product_sparse(i, j) {
                rows[*k][j] -= c;
            }
        }
        for r in rows {
            if !vector::is_zero(&r) {
                constraints.insert(r);
            }
        }
        if constraints.dim() == n {
            break;
        }
    }
    let m = Matrix::from_rows(f, n, constraints.basis()).expect("shape");
    Subspace::span(f, n, m.kernel_basis().expect("uniform field"))
}

/// A quotient algebra together with the maps relating it to its parent.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: Algebra,
    /// `dim(A/I) x dim(A)` matrix of the projection.
    pub projection: Matrix,
    /// `dim(A) x dim(A/I)` matrix sending quotient basis vectors to their
    /// chosen representatives (the non-pivot standard basis vectors).
    pub lift: Matrix,
    pub ideal: Subspace,
}

impl Quotient {
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.projection.apply(v)
    }
}

/// `A / I`, with the complement spanned by the basis vectors that are not
/// pivot columns of the ideal's reduced basis.
pub fn quotient(a: &Algebra, ideal: &Subspace) -> Result<Quotient> {
    if ideal.ambient() != a.dim() {
        return Err(Error::DimensionMismatch("ideal lives in another space".into()));
    }
    a.check_ideal(ideal).map_err(Error::NotAnIdeal)?;
    let f = a.field();
    let keep = ideal.complement_indices();
    let q = keep.len();
    let project = |v: &[Scalar]| -> Vec<Scalar> {
        let r = ideal.reduce(v);
        keep.iter().map(|&k| r[k].clone()).collect()
    };
    let proj_cols: Vec<Vec<Scalar>> = (0..a.dim()).map(|i| project(&a.basis_vector(i))).collect();
    let projection = Matrix::from_columns(f, q, &proj_cols)?;
    let lift_cols: Vec<Vec<Scalar>> = keep.iter().map(|&k| a.basis_vector(k)).collect();
    let lift = Matrix::from_columns(f, a.dim(), &lift_cols)?;
    let names = keep.iter().map(|&k| a.names[k].clone()).collect();
    let algebra = Algebra::from_fn(f, names, project(a.unit()), |i, j| {
        project(&a.basis_product(keep[i], keep[j]))
    })?;
    Ok(Quotient {
        algebra,
        projection,
        lift,
        ideal: ideal.clone(),
    })
}

/// `A ⊕ B` with block-diagonal structure constants and unit `(1_A, 1_B)`.
pub fn direct_sum(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", a.field(), b.field())));
    }
    let f = a.field();
    let (na, nb) = (a.dim(), b.dim());
    let mut names: Vec<String> = a.names.iter().map(|s| format!("{s}_a")).collect();
    names.extend(b.names.iter().map(|s| format!("{s}_b")));
    if na == 0 {
        names = b.names.clone();
    } else if nb == 0 {
        names = a.names.clone();
    }
    let mut unit = a.unit.clone();
    unit.extend(b.unit.iter().cloned());
    Algebra::from_fn(f, names, unit, |i, j| {
        let mut out = vector::zero(f, na + nb);
        if i < na && j < na {
            out[..na].clone_from_slice(&a.basis_product(i, j));
        } else if i >= na && j >= na {
            out[na..].clone_from_slice(&b.basis_product(i - na, j - na));
        }
        out
    })
}

/// The group algebra `K[G]` of a finite group.
pub fn group_algebra(field: FieldSpec, g: &crate::group::GroupModel) -> Result<Algebra> {
    let f = g
        .finite()
        .ok_or_else(|| Error::UnsupportedGroup("group algebra of an infinite group".into()))?;
    let n = f.order();
    Algebra::from_fn(
        field,
        f.labels().to_vec(),
        vector::unit(field, n, f.identity()),
        |i, j| vector::unit(field, n, f.op(i, j)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn multiply_examples() {
        let r = Algebra::diagonal(q(), 2);
        let x = vec![q().int(3), q().int(-2)];
        assert_eq!(r.mul(r.unit(), &x), x);
        assert!(vector::is_zero(&r.mul(&r.basis_vector(0), &r.basis_vector(1))));
        let d = Algebra::dual_numbers(q());
        assert!(vector::is_zero(&d.mul(&d.basis_vector(1), &d.basis_vector(1))));
    }

    #[test]
    fn element_parent_mismatch() {
        let a = Algebra::scalars(q());
        let b = Algebra::scalars(q());
        let x = a.element(vec![q().one()]).unwrap();
        let y = b.element(vec![q().one()]).unwrap();
        assert_eq!(x.mul(&y), Err(Error::ParentMismatch));
        assert!(x.mul(&x).is_ok());
    }

    #[test]
    fn constructors_are_valid() {
        for a in [
            Algebra::matrix_algebra(q(), 2),
            Algebra::upper_triangular(q()),
            Algebra::dual_numbers(q()),
            Algebra::scalars(q()),
            Algebra::diagonal(q(), 3),
            Algebra::zero(q()),
        ] {
            assert!(validate_algebra(&a).is_ok(), "{}", validate_algebra(&a));
        }
    }

    #[test]
    fn perturbed_table_is_invalid() {
        let m = Algebra::matrix_algebra(q(), 2);
        let mut table: Vec<Vec<Vec<Scalar>>> = (0..4)
            .map(|i| (0..4).map(|j| m.basis_product(i, j)).collect())
            .collect();
        table[0][1][0] = q().one(); // E11 E12 = E11 + E12
        let bad = Algebra::new(q(), m.names().to_vec(), table, m.unit().to_vec()).unwrap();
        let r = validate_algebra(&bad);
        assert!(r.has_violation("associativity"));
    }

    #[test]
    fn center_examples() {
        assert_eq!(center(&Algebra::matrix_algebra(q(), 2)).dim(), 1);
        assert_eq!(center(&Algebra::diagonal(q(), 3)).dim(), 3);
        assert_eq!(center(&Algebra::upper_triangular(q())).dim(), 1);
        assert_eq!(center(&Algebra::dual_numbers(q())).dim(), 2);
    }

    #[test]
    fn quotient_examples() {
        let d = Algebra::dual_numbers(q());
        let x = Subspace::span(q(), 2, [d.basis_vector(1)]);
        let k = quotient(&d, &x).unwrap();
        assert_eq!(k.algebra.dim(), 1);
        assert!(validate_algebra(&k.algebra).is_ok());

        let m = Algebra::matrix_algebra(q(), 2);
        let same = quotient(&m, &Subspace::zero(q(), 4)).unwrap();
        assert_eq!(same.algebra, m);

        let ut = Algebra::upper_triangular(q());
        let rad = Subspace::span(q(), 3, [ut.basis_vector(1)]);
        let ss = quotient(&ut, &rad).unwrap();
        assert_eq!(ss.algebra.dim(), 2);
        assert!(ss.algebra.is_commutative());
        assert_eq!(center(&ss.algebra).dim(), 2);

        // E11 spans no ideal: E12 E11... rather E11 E12 = E12 escapes
        let not_ideal = Subspace::span(q(), 3, [ut.basis_vector(0)]);
        assert!(matches!(quotient(&ut, &not_ideal), Err(Error::NotAnIdeal(_))));
    }

    #[test]
    fn direct_sum_examples() {
        let r = direct_sum(&Algebra::scalars(q()), &Algebra::scalars(q())).unwrap();
        assert_eq!(r.dim(), 2);
        assert!(validate_algebra(&r).is_ok());
        let d = Algebra::dual_numbers(q());
        assert_eq!(direct_sum(&d, &Algebra::zero(q())).unwrap(), d);
        let three = direct_sum(&r, &Algebra::scalars(q())).unwrap();
        assert_eq!(center(&three).dim(), 3);
        assert!(direct_sum(&d, &Algebra::scalars(FieldSpec::Prime(3))).is_err());
    }

    #[test]
    fn corner_inverse_in_ideal() {
        let r = Algebra::diagonal(q(), 2);
        let e2 = r.basis_vector(1);
        let w = vec![q().zero(), q().int(4)];
        let inv = r.corner_inverse(&w, &e2).unwrap();
        assert_eq!(inv, vec![q().zero(), q().parse("1/4").unwrap()]);
        assert!(r.corner_inverse(&vec![q().zero(), q().zero()], &e2).is_none());
    }

    #[test]
    fn group_algebra_is_valid() {
        let g = crate::group::GroupModel::symmetric(3).unwrap();
        let a = group_algebra(q(), &g).unwrap();
        assert_eq!(a.dim(), 6);
        assert!(validate_algebra(&a).is_ok());
        assert_eq!(center(&a).dim(), 3);
    }
}
