use super::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{vector, Matrix, Subspace};

/// The Jacobson radical.
///
/// Over ℚ, and over GF(p) with p > dim, this is the kernel of the trace form
/// `(x, y) -> tr(L_{xy})`. In that window a vector orthogonal to everything
/// has `tr(L_x^k) = 0` for all `k <= dim`, which forces `L_x` nilpotent.
///
/// For p <= dim the trace form is refined by generalized traces
/// `g_i(x) = tr(L~_x^(p^i)) / p^i mod p`, with `L~` the integer lift of the
/// regular representation: `I_i = {x in I_(i-1) : g_i(xy) = 0 for all y}`
/// and the radical is `I_l` for `p^l <= dim < p^(l+1)` (Cohen, Ivanyos and
/// Wales). Each `g_i` is linear on `I_(i-1)`.
pub fn jacobson_radical(a: &Algebra) -> Result<Subspace> {
    let p = a.field().characteristic();
    if p == 0 || p as usize > a.dim() {
        return trace_form_radical(a);
    }
    generalized_trace_radical(a, p)
}

pub fn is_semisimple(a: &Algebra) -> Result<bool> {
    Ok(jacobson_radical(a)?.is_zero())
}

fn trace_form_radical(a: &Algebra) -> Result<Subspace> {
    let f = a.field();
    let n = a.dim();
    // t_k = tr(L_{b_k}) = Σ_i c_{ki}^i
    let traces: Vec<_> = (0..n)
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
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut s = f.zero();
            for (k, c) in a.basis_product_sparse(i, j) {
                if !traces[*k].is_zero() {
                    s += &(c * &traces[*k]);
                }
            }
            data.push(s);
        }
    }
    let gram = Matrix::new(f, n, n, data)?;
    Ok(Subspace::span(f, n, gram.kernel_basis()?))
}

fn generalized_trace_radical(a: &Algebra, p: u64) -> Result<Subspace> {
    let f = a.field();
    let n = a.dim();
    let mut ideal = Subspace::full(f, n);
    let mut pi = 1u64;
    while pi <= n as u64 && !ideal.is_zero() {
        let modulus = pi as u128 * p as u128;
        // g_i on the current basis, then g_i(a_k b_j) through coordinates
        let g: Vec<_> = ideal
            .basis()
            .iter()
            .map(|x| Ok(f.int(lifted_trace_power(&a.left_matrix(x), pi, modulus, pi)? as i64)))
            .collect::<Result<_>>()?;
        let m = ideal.dim();
        let mut rows = Vec::with_capacity(n);
        for j in 0..n {
            let b = a.basis_vector(j);
            let row = ideal
                .basis()
                .iter()
                .map(|x| {
                    let c = ideal.coords(&a.mul(x, &b)).expect("ideal is closed under right products");
                    vector::dot(&c, &g)
                })
                .collect();
            rows.push(row);
        }
        let system = Matrix::from_rows(f, m, &rows)?;
        let kernel = system.kernel_basis()?;
        ideal = Subspace::span(f, n, kernel.iter().map(|c| ideal.combine(c)));
        pi = pi.saturating_mul(p);
    }
    Ok(ideal)
}

/// `tr(M~^e) / divisor mod p`, computed modulo `p * divisor`.
fn lifted_trace_power(m: &Matrix, e: u64, modulus: u128, divisor: u64) -> Result<u64> {
    let n = m.rows();
    let lift: Vec<u128> = m
        .row_vectors()
        .iter()
        .flatten()
        .map(|x| match x {
            crate::linalg::Scalar::Residue { value, .. } => *value as u128,
            crate::linalg::Scalar::Rational(_) => unreachable!("lifts are only taken in characteristic p"),
        })
        .collect();
    let mul = |x: &[u128], y: &[u128]| -> Vec<u128> {
        let mut out = vec![0u128; n * n];
        for i in 0..n {
            for k in 0..n {
                let xik = x[i * n + k];
                if xik == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = (out[i * n + j] + xik * y[k * n + j]) % modulus;
                }
            }
        }
        out
    };
    let mut acc: Vec<u128> = (0..n * n).map(|k| u128::from(k % (n + 1) == 0)).collect();
    let mut base = lift;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    let trace = (0..n).map(|i| acc[i * n + i]).sum::<u128>() % modulus;
    if trace % divisor as u128 != 0 {
        return Err(Error::Malformed(format!(
            "generalized trace {trace} not divisible by {divisor}; the lift left the ideal"
        )));
    }
    Ok((trace / divisor as u128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_sum, group_algebra, quotient};
    use crate::group::GroupModel;
    use crate::linalg::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn radical_examples() {
        assert!(jacobson_radical(&Algebra::matrix_algebra(q(), 2)).unwrap().is_zero());
        let ut = Algebra::upper_triangular(q());
        assert_eq!(
            jacobson_radical(&ut).unwrap(),
            Subspace::span(q(), 3, [ut.basis_vector(1)])
        );
        let d = Algebra::dual_numbers(q());
        assert_eq!(
            jacobson_radical(&d).unwrap(),
            Subspace::span(q(), 2, [d.basis_vector(1)])
        );
    }

    #[test]
    fn semisimple_examples() {
        assert!(is_semisimple(&Algebra::matrix_algebra(q(), 2)).unwrap());
        assert!(!is_semisimple(&Algebra::dual_numbers(q())).unwrap());
        let qq = direct_sum(&Algebra::scalars(q()), &Algebra::scalars(q())).unwrap();
        assert!(is_semisimple(&qq).unwrap());
        assert!(is_semisimple(&Algebra::zero(q())).unwrap());
    }

    #[test]
    fn quotient_by_radical_is_semisimple() {
        let ut = Algebra::upper_triangular(q());
        let rad = jacobson_radical(&ut).unwrap();
        let top = quotient(&ut, &rad).unwrap();
        assert!(is_semisimple(&top.algebra).unwrap());
    }

    #[test]
    fn small_characteristic() {
        let f2 = FieldSpec::prime(2).unwrap();
        let c2 = GroupModel::cyclic(2).unwrap();
        let kg = group_algebra(f2, &c2).unwrap();
        let rad = jacobson_radical(&kg).unwrap();
        assert_eq!(rad.dim(), 1);
        // spanned by e + g
        assert_eq!(rad, Subspace::span(f2, 2, [vec![f2.one(), f2.one()]]));

        // F_3[S_3] has two one-dimensional simples, F_2[S_3] = F_2 x M_2(F_2) x (dim 1 radical)
        let s3 = GroupModel::symmetric(3).unwrap();
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(jacobson_radical(&group_algebra(f3, &s3).unwrap()).unwrap().dim(), 4);
        assert_eq!(jacobson_radical(&group_algebra(f2, &s3).unwrap()).unwrap().dim(), 1);
        assert!(is_semisimple(&Algebra::matrix_algebra(f2, 2)).unwrap());
        assert!(is_semisimple(&Algebra::matrix_algebra(f3, 3)).unwrap());
        assert_eq!(jacobson_radical(&Algebra::upper_triangular(f2)).unwrap().dim(), 1);

        // p > dim uses the trace form
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(is_semisimple(&Algebra::matrix_algebra(f5, 2)).unwrap());
        assert_eq!(jacobson_radical(&Algebra::upper_triangular(f5)).unwrap().dim(), 1);
    }

    /// Independent oracle for commutative algebras: `x -> x^p` is linear and
    /// the radical is the kernel of its `k`-th iterate once `p^k >= dim`.
    fn frobenius_radical(a: &Algebra, p: u64) -> Result<Subspace> {
        let f: FieldSpec = a.field();
        let n = a.dim();
        let cols: Vec<_> = (0..n).map(|i| a.power(&a.basis_vector(i), p)).collect();
        let frob = Matrix::from_columns(f, n, &cols)?;
        // frob^k with p^k >= n
        let mut iterate = frob.clone();
        let mut reach = p as usize;
        while reach < n {
            iterate = frob.mul(&iterate)?;
            reach = reach.saturating_mul(p as usize);
        }
        let kernel = iterate.kernel_basis()?;
        debug_assert!(kernel.iter().all(|v| a.is_nilpotent(v)));
        Ok(Subspace::span(f, n, kernel.into_iter().filter(|v| !vector::is_zero(v))))
    }

    #[test]
    fn agrees_with_frobenius_kernel_on_commutative_algebras() {
        for p in [2u64, 3] {
            let f = FieldSpec::prime(p).unwrap();
            for n in [2usize, 3, 4, 6] {
                let c = GroupModel::cyclic(n).unwrap();
                let kg = group_algebra(f, &c).unwrap();
                assert_eq!(jacobson_radical(&kg).unwrap(), frobenius_radical(&kg, p).unwrap(), "C{n} over GF({p})");
            }
        }
    }

    #[test]
    fn frobenius_kernel_reaches_deep_nilpotents() {
        // K[x]/(x^4) over GF(2): radical is span{x, x^2, x^3}
        let f2 = FieldSpec::prime(2).unwrap();
        let names = (0..4).map(|i| format!("x{i}")).collect();
        let a = Algebra::from_fn(f2, names, vector::unit(f2, 4, 0), |i, j| {
            if i + j < 4 {
                vector::unit(f2, 4, i + j)
            } else {
                vector::zero(f2, 4)
            }
        })
        .unwrap();
        assert_eq!(jacobson_radical(&a).unwrap().dim(), 3);
    }
}
