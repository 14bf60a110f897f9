//! Search for nondegenerate (and symmetric nondegenerate) linear forms.
//!
//! A form `λ` is nondegenerate when its Gram matrix `G_ij = λ(b_i b_j)` is
//! nonsingular. Writing `λ = Σ t_s p_s` over a basis `p_s` of the admissible
//! forms, `det G` is a polynomial of total degree at most `n` in the `t_s`.
//! Small algebras get that polynomial expanded exactly; larger ones are
//! probed at points, first on a fixed grid and then at seeded random points.

use super::Algebra;
use crate::linalg::{vector, FieldSpec, Matrix, Scalar};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

/// Largest dimension whose Gram determinant is expanded symbolically.
pub const SYMBOLIC_MAX_DIM: usize = 6;
const GRID_BUDGET: usize = 64;
const RANDOM_SAMPLES: usize = 12;
const RANDOM_RANGE: i64 = 1000;
const DEFAULT_SEED: u64 = 0x5eed_f0f0;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SearchMethod {
    /// No admissible form other than zero, or the zero algebra.
    Trivial,
    /// The regular trace form `x -> tr(L_x)`, rescaled.
    TraceCandidate,
    /// A symmetric algebra has `Z(A) ≅ (A/[A, A])*`; unequal dimensions
    /// rule out every symmetric form.
    Cocenter { center: usize, cocenter: usize },
    /// Exact expansion of the Gram determinant, then a grid point where it
    /// does not vanish.
    Symbolic { points_tried: usize },
    /// Deterministic grid evaluation without expansion.
    Grid { points_tried: usize },
    /// Seeded random evaluation. When no form was found, a nonzero
    /// determinant polynomial would have been missed with probability at
    /// most `failure_bound`.
    Random {
        samples: usize,
        seed: u64,
        #[serde(serialize_with = "display_scalar")]
        failure_bound: Scalar,
    },
}

fn display_scalar<S: serde::Serializer>(s: &Scalar, ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_str(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormSearch {
    #[serde(serialize_with = "display_form")]
    pub form: Option<Vec<Scalar>>,
    pub method: SearchMethod,
    /// True when a "none" answer is a proof rather than an exhausted search.
    pub decided: bool,
}

fn display_form<S: serde::Serializer>(f: &Option<Vec<Scalar>>, ser: S) -> Result<S::Ok, S::Error> {
    match f {
        Some(v) => ser.collect_str(&vector::display(v)),
        None => ser.serialize_none(),
    }
}

impl FormSearch {
    pub fn found(&self) -> bool {
        self.form.is_some()
    }
}

pub fn gram_matrix(a: &Algebra, form: &[Scalar]) -> Matrix {
    let f = a.field();
    let n = a.dim();
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut s = f.zero();
            for (k, c) in a.basis_product_sparse(i, j) {
                if !form[*k].is_zero() {
                    s += &(c * &form[*k]);
                }
            }
            data.push(s);
        }
    }
    Matrix::new(f, n, n, data).expect("square")
}

pub fn is_nondegenerate(a: &Algebra, form: &[Scalar]) -> bool {
    !gram_matrix(a, form).det().expect("square").is_zero()
}

/// `λ(b_i b_j) = λ(b_j b_i)` for all basis pairs.
pub fn is_symmetric_form(a: &Algebra, form: &[Scalar]) -> bool {
    let g = gram_matrix(a, form);
    g == g.transpose()
}

/// A form with nonsingular Gram matrix, if one exists.
pub fn frobenius_form(a: &Algebra) -> FormSearch {
    frobenius_form_seeded(a, DEFAULT_SEED)
}

pub fn frobenius_form_seeded(a: &Algebra, seed: u64) -> FormSearch {
    let params = (0..a.dim()).map(|i| a.basis_vector(i)).collect();
    search(a, params, seed)
}

/// A nondegenerate form vanishing on all commutators, if one exists.
pub fn symmetric_form(a: &Algebra) -> FormSearch {
    symmetric_form_seeded(a, DEFAULT_SEED)
}

pub fn symmetric_form_seeded(a: &Algebra, seed: u64) -> FormSearch {
    let n = a.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = vector::sub(&a.basis_product(i, j), &a.basis_product(j, i));
            if !vector::is_zero(&c) {
                rows.push(c);
            }
        }
    }
    let params = if rows.is_empty() {
        (0..n).map(|i| a.basis_vector(i)).collect()
    } else {
        Matrix::from_rows(a.field(), n, &rows)
            .and_then(|m| m.kernel_basis())
            .expect("uniform field")
    };
    let center = super::center(a).dim();
    if center != params.len() {
        return FormSearch {
            form: None,
            method: SearchMethod::Cocenter {
                center,
                cocenter: params.len(),
            },
            decided: true,
        };
    }
    search(a, params, seed)
}

fn combine(f: FieldSpec, n: usize, params: &[Vec<Scalar>], t: &[Scalar]) -> Vec<Scalar> {
    let mut out = vector::zero(f, n);
    for (c, p) in t.iter().zip(params) {
        if !c.is_zero() {
            vector::axpy(&mut out, c, p);
        }
    }
    out
}

fn trace_candidate(a: &Algebra) -> Option<Vec<Scalar>> {
    let f = a.field();
    let n = a.dim();
    let tau: Vec<Scalar> = (0..n)
        .map(|k| {
            let mut t = f.zero();
            for i in 0..n {
                for (m, c) in a.basis_product_sparse(k, i) {
                    if *m == i {
                        t += c;
                    }
                }
            }
            t
        })
        .collect();
    let lead = tau.iter().find(|x| !x.is_zero())?.inv()?;
    Some(vector::scale(&tau, &lead))
}

fn search(a: &Algebra, params: Vec<Vec<Scalar>>, seed: u64) -> FormSearch {
    let f = a.field();
    let n = a.dim();
    if n == 0 {
        return FormSearch {
            form: Some(Vec::new()),
            method: SearchMethod::Trivial,
            decided: true,
        };
    }
    if params.is_empty() {
        return FormSearch {
            form: None,
            method: SearchMethod::Trivial,
            decided: true,
        };
    }
    // the regular trace form is symmetric, so it is admissible for both searches
    if let Some(tau) = trace_candidate(a) {
        if is_nondegenerate(a, &tau) {
            return FormSearch {
                form: Some(tau),
                method: SearchMethod::TraceCandidate,
                decided: true,
            };
        }
    }
    let m = params.len();
    // coefficient of t_s in G_ij
    let coef: Vec<Vec<Scalar>> = (0..n * n)
        .map(|ij| {
            let (i, j) = (ij / n, ij % n);
            let prod = a.basis_product(i, j);
            params.iter().map(|p| vector::dot(p, &prod)).collect()
        })
        .collect();

    // grid values 0..=n, or the whole field when it is smaller
    let p = f.characteristic();
    let side = if p != 0 && p <= n as u64 { p as usize } else { n + 1 };
    let exhaustive_field = p != 0 && p <= n as u64;

    if n <= SYMBOLIC_MAX_DIM {
        let det = symbolic_det(f, n, m, &coef);
        if det.is_zero() {
            return FormSearch {
                form: None,
                method: SearchMethod::Symbolic { points_tried: 0 },
                decided: true,
            };
        }
        // a nonzero polynomial of degree <= n in each variable cannot vanish
        // on a grid with n+1 values per coordinate
        let mut tried = 0;
        for point in GridPoints::new(m, side) {
            tried += 1;
            let t: Vec<Scalar> = point.iter().map(|&x| f.int(x as i64)).collect();
            if !det.eval(&t).is_zero() {
                return FormSearch {
                    form: Some(combine(f, n, &params, &t)),
                    method: SearchMethod::Symbolic { points_tried: tried },
                    decided: true,
                };
            }
        }
        // only reachable when the grid is all of GF(p)^m
        debug_assert!(exhaustive_field);
        return FormSearch {
            form: None,
            method: SearchMethod::Symbolic { points_tried: tried },
            decided: true,
        };
    }

    let eval = |t: &[Scalar]| -> bool {
        let mut data = Vec::with_capacity(n * n);
        for c in &coef {
            data.push(vector::dot(c, t));
        }
        !Matrix::new(f, n, n, data).expect("square").det().expect("square").is_zero()
    };
    let mut tried = 0;
    for point in GridPoints::new(m, side).take(GRID_BUDGET) {
        tried += 1;
        let t: Vec<Scalar> = point.iter().map(|&x| f.int(x as i64)).collect();
        if eval(&t) {
            return FormSearch {
                form: Some(combine(f, n, &params, &t)),
                method: SearchMethod::Grid { points_tried: tried },
                decided: true,
            };
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let range = match p {
        0 => RANDOM_RANGE,
        p => p.min(i64::MAX as u64) as i64,
    };
    for k in 1..=RANDOM_SAMPLES {
        let t: Vec<Scalar> = (0..m)
            .map(|_| match p {
                0 => f.int(rng.random_range(1..=range)),
                _ => f.int(rng.random_range(0..range)),
            })
            .collect();
        if eval(&t) {
            return FormSearch {
                form: Some(combine(f, n, &params, &t)),
                method: SearchMethod::Random {
                    samples: k,
                    seed,
                    failure_bound: bound(n, range, 0),
                },
                decided: true,
            };
        }
    }
    FormSearch {
        form: None,
        method: SearchMethod::Random {
            samples: RANDOM_SAMPLES,
            seed,
            failure_bound: bound(n, range, RANDOM_SAMPLES),
        },
        decided: false,
    }
}

/// `min(1, n / range)^samples` as an exact rational.
fn bound(n: usize, range: i64, samples: usize) -> Scalar {
    let q = FieldSpec::Rationals;
    if n as i64 >= range {
        return q.one();
    }
    q.ratio(&BigInt::from(n), &BigInt::from(range))
        .expect("nonzero range")
        .pow(samples as u64)
}

/// Points of `{0..side}^m` in lexicographic order, last coordinate fastest.
struct GridPoints {
    current: Option<Vec<usize>>,
    side: usize,
}

impl GridPoints {
    fn new(m: usize, side: usize) -> Self {
        Self {
            current: (side > 0).then(|| vec![0; m]),
            side,
        }
    }
}

impl Iterator for GridPoints {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < self.side {
                self.current = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    }
}

/// Sparse multivariate polynomial keyed by exponent vectors.
#[derive(Debug, Clone)]
struct Poly {
    field: FieldSpec,
    terms: BTreeMap<Vec<u8>, Scalar>,
}

impl Poly {
    fn zero(field: FieldSpec) -> Self {
        Self {
            field,
            terms: BTreeMap::new(),
        }
    }

    fn constant(field: FieldSpec, m: usize, c: Scalar) -> Self {
        let mut p = Self::zero(field);
        if !c.is_zero() {
            p.terms.insert(vec![0; m], c);
        }
        p
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `self += sign * lin * other`, where `lin` is `Σ lin_s t_s`.
    fn add_linear_times(&mut self, lin: &[Scalar], other: &Poly, negate: bool) {
        for (s, c) in lin.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = if negate { -c } else { c.clone() };
            for (exp, d) in &other.terms {
                let mut e = exp.clone();
                e[s] += 1;
                let term = &c * d;
                match self.terms.get_mut(&e) {
                    Some(v) => {
                        *v += &term;
                        if v.is_zero() {
                            self.terms.remove(&e);
                        }
                    }
                    None => {
                        self.terms.insert(e, term);
                    }
                }
            }
        }
    }

    fn eval(&self, t: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (exp, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in t.iter().zip(exp) {
                if e > 0 {
                    term = &term * &x.pow(e as u64);
                }
            }
            acc += &term;
        }
        acc
    }
}

/// Determinant of the matrix of linear forms `coef[i*n+j]` by Laplace
/// expansion over column subsets.
fn symbolic_det(f: FieldSpec, n: usize, m: usize, coef: &[Vec<Scalar>]) -> Poly {
    let mut table: Vec<Poly> = vec![Poly::zero(f); 1 << n];
    table[0] = Poly::constant(f, m, f.one());
    for mask in 1usize..(1 << n) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = Poly::zero(f);
        for c in 0..n {
            if mask & (1 << c) == 0 {
                continue;
            }
            let rest = mask & !(1 << c);
            if table[rest].is_zero() {
                continue;
            }
            let above = (mask >> (c + 1)).count_ones();
            acc.add_linear_times(&coef[row * n + c], &table[rest], above % 2 == 1);
        }
        table[mask] = acc;
    }
    table.pop().expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::direct_sum;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn symbolic_det_matches_numeric() {
        // G = [[t0, t1], [t1, 0]] has det -t1^2
        let f = q();
        let coef = vec![
            vec![f.one(), f.zero()],
            vec![f.zero(), f.one()],
            vec![f.zero(), f.one()],
            vec![f.zero(), f.zero()],
        ];
        let det = symbolic_det(f, 2, 2, &coef);
        assert_eq!(det.terms.len(), 1);
        assert_eq!(det.eval(&[f.int(5), f.int(3)]), f.int(-9));
    }

    #[test]
    fn dual_numbers_coefficient_of_x() {
        let d = Algebra::dual_numbers(q());
        let s = frobenius_form(&d);
        assert_eq!(s.form, Some(vec![q().zero(), q().one()]));
        assert!(matches!(s.method, SearchMethod::Symbolic { .. }));
        let sym = symmetric_form(&d);
        assert_eq!(sym.form, s.form);
    }

    #[test]
    fn upper_triangular_has_none() {
        let ut = Algebra::upper_triangular(q());
        for s in [frobenius_form(&ut), symmetric_form(&ut)] {
            assert_eq!(s.form, None);
            assert!(s.decided);
        }
    }

    #[test]
    fn matrix_algebra_trace_form() {
        let m = Algebra::matrix_algebra(q(), 2);
        let trace = vec![q().one(), q().zero(), q().zero(), q().one()];
        let s = frobenius_form(&m);
        assert_eq!(s.form, Some(trace.clone()));
        assert_eq!(s.method, SearchMethod::TraceCandidate);
        let sym = symmetric_form(&m);
        assert_eq!(sym.form, Some(trace.clone()));
        assert!(is_symmetric_form(&m, &trace));
    }

    #[test]
    fn larger_algebra_uses_numeric_search() {
        // M2 ⊕ dual numbers ⊕ Q, dimension 7
        let a = direct_sum(
            &direct_sum(&Algebra::matrix_algebra(q(), 2), &Algebra::dual_numbers(q())).unwrap(),
            &Algebra::scalars(q()),
        )
        .unwrap();
        let s = frobenius_form(&a);
        let form = s.form.clone().expect("frobenius");
        assert!(is_nondegenerate(&a, &form));
        assert!(matches!(s.method, SearchMethod::Grid { .. } | SearchMethod::Random { .. }));
        let sym = symmetric_form(&a);
        assert!(is_symmetric_form(&a, sym.form.as_ref().unwrap()));
    }

    #[test]
    fn cocenter_rules_out_symmetric_forms() {
        // C2 on the dual numbers by x -> -x: center 1, cocenter 2
        let cp = crate::crossed::build_crossed(&crate::fixtures::dual_sign_c2()).unwrap();
        let s = symmetric_form(cp.algebra());
        assert_eq!(s.form, None);
        assert!(s.decided);
        assert_eq!(s.method, SearchMethod::Cocenter { center: 1, cocenter: 2 });
        assert!(frobenius_form(cp.algebra()).found());
    }

    #[test]
    fn small_prime_exhausts_field() {
        let f2 = FieldSpec::prime(2).unwrap();
        let d = Algebra::dual_numbers(f2);
        let s = frobenius_form(&d);
        assert!(is_nondegenerate(&d, s.form.as_ref().unwrap()));
        // Q ⊕ Q ⊕ Q over GF(2): every form (a,b,c) is nondegenerate iff abc != 0
        let three = direct_sum(&Algebra::diagonal(f2, 2), &Algebra::scalars(f2)).unwrap();
        assert!(frobenius_form(&three).found());
    }
}
