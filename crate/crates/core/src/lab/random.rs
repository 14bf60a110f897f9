//! Random twisted partial actions, built as restrictions of random global
//! actions so that every axiom holds by construction.
//!
//! The global algebra is a product of blocks `B^{G/H}`: for each summand a
//! subgroup `H`, a block type `B` and one copy of `B` per left coset. `G`
//! permutes the copies and, through a character `χ: G -> {±1}`, applies an
//! involution of `B`. Cyclic groups may carry the carry-over 2-cocycle
//! `u_{a,b} = c^{[a+b >= n]}` for an invariant central unit `c`.

use crate::action::{restrict_global, GlobalAction, TwistedPartialAction};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupModel};
use crate::linalg::{vector, FieldSpec, Matrix, Scalar};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Largest global algebra the generator builds.
const MAX_GLOBAL_DIM: usize = 24;

/// Size limits for random instances: `dim R <= max_dim`,
/// `|G| <= max_order`; `twist` allows cocycles on cyclic groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_dim: usize,
    pub max_order: usize,
    pub twist: bool,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            max_dim: 6,
            max_order: 8,
            twist: true,
        }
    }
}

impl Bounds {
    pub fn validate(&self) -> Result<()> {
        if self.max_dim == 0 || self.max_order == 0 {
            return Err(Error::Malformed("bounds must be positive".into()));
        }
        Ok(())
    }

    /// The componentwise minimum with a suite's own cap.
    pub fn capped(&self, max_dim: usize, max_order: usize) -> Bounds {
        Bounds {
            max_dim: self.max_dim.min(max_dim),
            max_order: self.max_order.min(max_order),
            twist: self.twist,
        }
    }
}

/// A generated instance with the global action it came from.
#[derive(Debug, Clone)]
pub struct Sample {
    pub seed: u64,
    pub global: GlobalAction,
    /// Units of the individual block copies, as central idempotents of the
    /// global algebra.
    pub copy_units: Vec<Vec<Scalar>>,
    pub idempotent: Vec<Scalar>,
    pub action: TwistedPartialAction,
    pub embedding: Matrix,
    pub description: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Block {
    Field,
    Dual,
    Upper,
    Full,
}

impl Block {
    fn name(self) -> &'static str {
        match self {
            Block::Field => "K",
            Block::Dual => "K[x]/x^2",
            Block::Upper => "UT2",
            Block::Full => "M2",
        }
    }

    fn algebra(self, f: FieldSpec) -> Algebra {
        match self {
            Block::Field => Algebra::scalars(f),
            Block::Dual => Algebra::dual_numbers(f),
            Block::Upper => Algebra::upper_triangular(f),
            Block::Full => Algebra::matrix_algebra(f, 2),
        }
    }

    /// An involutive automorphism: `x -> -x`, or conjugation by
    /// `diag(1, -1)`.
    fn involution(self, f: FieldSpec) -> Matrix {
        let signs: Vec<i64> = match self {
            Block::Field => vec![1],
            Block::Dual => vec![1, -1],
            Block::Upper => vec![1, -1, 1],
            Block::Full => vec![1, -1, -1, 1],
        };
        let mut m = Matrix::zeros(f, signs.len(), signs.len());
        for (i, s) in signs.into_iter().enumerate() {
            m.set(i, i, f.int(s));
        }
        m
    }
}

fn group_pool(max_order: usize) -> Vec<(String, GroupModel)> {
    let c = |n| GroupModel::cyclic(n).expect("positive order");
    let mut pool: Vec<(String, GroupModel)> = (1..=8).map(|n| (format!("C{n}"), c(n))).collect();
    let prod = |a: &GroupModel, b: &GroupModel| GroupModel::direct_product(a, b).expect("finite factors");
    let v4 = prod(&c(2), &c(2));
    pool.push(("C2xC2".into(), v4.clone()));
    pool.push(("S3".into(), GroupModel::symmetric(3).expect("S3")));
    pool.push(("C2xC4".into(), prod(&c(2), &c(4))));
    pool.push(("C2xC2xC2".into(), prod(&v4, &c(2))));
    pool.retain(|(_, g)| g.order().expect("finite") <= max_order);
    pool
}

/// All homomorphisms `G -> {±1}`, as sign vectors over the element indices.
pub(crate) fn sign_characters(g: &GroupModel) -> Vec<Vec<bool>> {
    let fg = g.finite().expect("finite group");
    let n = fg.order();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let neg = |i: usize| mask >> i & 1 == 1;
        if neg(fg.identity()) {
            continue;
        }
        let hom = (0..n).all(|a| (0..n).all(|b| neg(fg.op(a, b)) == (neg(a) ^ neg(b))));
        if hom {
            out.push((0..n).map(neg).collect());
        }
    }
    out
}

fn left_cosets(g: &GroupModel, h: &[usize]) -> Vec<Vec<usize>> {
    let fg = g.finite().expect("finite group");
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..fg.order() {
        if cosets.iter().any(|c| c.contains(&x)) {
            continue;
        }
        let mut c: Vec<usize> = h.iter().map(|&y| fg.op(x, y)).collect();
        c.sort_unstable();
        cosets.push(c);
    }
    cosets
}

struct Summand {
    block: Block,
    cosets: Vec<Vec<usize>>,
    chi: Vec<bool>,
    offset: usize,
}

/// A random instance for `seed`; the same seed, bounds and field always give
/// the same instance.
pub fn random_sample(seed: u64, bounds: &Bounds, field: FieldSpec) -> Result<Sample> {
    bounds.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = group_pool(bounds.max_order);
    let (gname, group) = pool[rng.random_range(0..pool.len())].clone();
    let fg = group.finite().expect("finite group").clone();
    let order = fg.order();
    let subgroups = fg.subgroups();
    let characters = sign_characters(&group);

    let summand_count = rng.random_range(1..=3usize);
    let mut summands: Vec<Summand> = Vec::new();
    let mut total = 0;
    for _ in 0..summand_count {
        let mut h = subgroups[rng.random_range(0..subgroups.len())].clone();
        let mut block = match rng.random_range(0..10) {
            0..=3 => Block::Field,
            4..=5 => Block::Dual,
            6..=7 => Block::Upper,
            _ => Block::Full,
        };
        if bounds.max_dim < block.algebra(field).dim() {
            block = Block::Field;
        }
        let mut cosets = left_cosets(&group, &h);
        if total + cosets.len() * block.algebra(field).dim() > MAX_GLOBAL_DIM {
            h = (0..order).collect();
            cosets = left_cosets(&group, &h);
        }
        let dim = cosets.len() * block.algebra(field).dim();
        if total + dim > MAX_GLOBAL_DIM {
            break;
        }
        let chi = if block != Block::Field && rng.random_bool(0.5) {
            characters[rng.random_range(0..characters.len())].clone()
        } else {
            vec![false; order]
        };
        summands.push(Summand {
            block,
            cosets,
            chi,
            offset: total,
        });
        total += dim;
    }

    // the global algebra: one block copy per (summand, coset)
    let mut copies: Vec<(usize, usize, usize)> = Vec::new(); // (summand, coset, offset)
    for (si, s) in summands.iter().enumerate() {
        let d = s.block.algebra(field).dim();
        for ci in 0..s.cosets.len() {
            copies.push((si, ci, s.offset + ci * d));
        }
    }
    let blocks: Vec<Algebra> = summands.iter().map(|s| s.block.algebra(field)).collect();
    let mut names = Vec::with_capacity(total);
    let mut unit = Vec::with_capacity(total);
    for (k, &(si, _, _)) in copies.iter().enumerate() {
        names.extend(blocks[si].names().iter().map(|x| format!("{x}_{k}")));
        unit.extend(blocks[si].unit().iter().cloned());
    }
    let owner: Vec<(usize, usize)> = copies
        .iter()
        .flat_map(|&(si, _, off)| (0..blocks[si].dim()).map(move |j| (off, j)))
        .collect();
    let block_of: Vec<usize> = copies
        .iter()
        .flat_map(|&(si, _, _)| std::iter::repeat_n(si, blocks[si].dim()))
        .collect();
    let t = Algebra::from_fn(field, names, unit, |i, j| {
        let mut out = vector::zero(field, total);
        let ((oi, li), (oj, lj)) = (owner[i], owner[j]);
        if oi == oj {
            for (k, x) in blocks[block_of[i]].basis_product(li, lj).into_iter().enumerate() {
                out[oi + k] = x;
            }
        }
        out
    })?;
    let copy_units: Vec<Vec<Scalar>> = copies
        .iter()
        .map(|&(si, _, off)| {
            let mut u = vector::zero(field, total);
            for (k, x) in blocks[si].unit().iter().enumerate() {
                u[off + k] = x.clone();
            }
            u
        })
        .collect();

    let maps: Vec<Matrix> = (0..order)
        .map(|x| {
            let mut m = Matrix::zeros(field, total, total);
            for s in &summands {
                let d = s.block.algebra(field).dim();
                let local = if s.chi[x] {
                    s.block.involution(field)
                } else {
                    Matrix::identity(field, d)
                };
                for (ci, c) in s.cosets.iter().enumerate() {
                    let moved = fg.op(x, c[0]);
                    let cj = s.cosets.iter().position(|c2| c2.contains(&moved)).expect("cosets partition G");
                    for r in 0..d {
                        for col in 0..d {
                            m.set(s.offset + cj * d + r, s.offset + ci * d + col, local.get(r, col).clone());
                        }
                    }
                }
            }
            m
        })
        .collect();

    let mut twist = BTreeMap::new();
    let cyclic = gname.starts_with('C') && !gname.contains('x') && order >= 2;
    let twisted = bounds.twist && cyclic && rng.random_bool(1.0 / 3.0);
    if twisted {
        let mut c = vector::zero(field, total);
        for si in 0..summands.len() {
            let lambda = loop {
                let v = match field {
                    FieldSpec::Rationals => rng.random_range(-3i64..=3),
                    FieldSpec::Prime(p) => rng.random_range(1..p) as i64,
                };
                if v != 0 {
                    break field.int(v);
                }
            };
            for &(sj, _, off) in copies.iter().filter(|c| c.0 == si) {
                for (j, x) in blocks[sj].unit().iter().enumerate() {
                    c[off + j] = x.clone() * lambda.clone();
                }
            }
        }
        for a in 0..order {
            for b in 0..order {
                if a + b >= order {
                    twist.insert((GroupElement::Index(a), GroupElement::Index(b)), c.clone());
                }
            }
        }
    }
    let global = GlobalAction::finite(t, group.clone(), maps, twist)?;

    // R: a random nonempty set of copies within the dimension bound
    let mut order_of_copies: Vec<usize> = (0..copies.len()).collect();
    order_of_copies.shuffle(&mut rng);
    let mut chosen = Vec::new();
    let mut dim_r = 0;
    for &k in &order_of_copies {
        let d = blocks[copies[k].0].dim();
        if dim_r + d <= bounds.max_dim && (chosen.is_empty() || rng.random_bool(0.5)) {
            chosen.push(k);
            dim_r += d;
        }
    }
    chosen.sort_unstable();
    let mut e = vector::zero(field, total);
    for &k in &chosen {
        e = vector::add(&e, &copy_units[k]);
    }
    let res = restrict_global(&global, &e)?;
    let description = format!(
        "{gname} over {field} on {}; R = copies {:?}{}",
        summands
            .iter()
            .map(|s| format!(
                "{}^{}{}",
                s.block.name(),
                s.cosets.len(),
                if s.chi.iter().any(|&x| x) { " (signed)" } else { "" }
            ))
            .collect::<Vec<_>>()
            .join(" x "),
        chosen,
        if twisted { ", twisted" } else { "" }
    );
    Ok(Sample {
        seed,
        global,
        copy_units,
        idempotent: e,
        action: res.action,
        embedding: res.embedding,
        description,
    })
}

pub fn random_action(seed: u64, bounds: &Bounds, field: FieldSpec) -> Result<TwistedPartialAction> {
    Ok(random_sample(seed, bounds, field)?.action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{validate_action, validate_global};

    #[test]
    fn samples_are_valid_and_reproducible() {
        let b = Bounds::default();
        for seed in 0..60 {
            let s = random_sample(seed, &b, FieldSpec::Rationals).unwrap();
            assert!(validate_global(&s.global).is_ok(), "seed {seed}: {}", validate_global(&s.global));
            let r = validate_action(&s.action);
            assert!(r.is_ok(), "seed {seed} ({}): {r}", s.description);
            assert!(s.action.dim() <= b.max_dim && s.action.dim() > 0);
            let again = random_action(seed, &b, FieldSpec::Rationals).unwrap();
            assert_eq!(again, s.action);
        }
    }

    #[test]
    fn small_bounds_respected() {
        let b = Bounds {
            max_dim: 2,
            max_order: 2,
            twist: true,
        };
        for seed in 0..40 {
            let a = random_action(seed, &b, FieldSpec::Prime(3)).unwrap();
            assert!(a.dim() <= 2);
            assert!(a.group().order().unwrap() <= 2);
            assert!(validate_action(&a).is_ok());
        }
    }

    #[test]
    fn characters_of_small_groups() {
        assert_eq!(sign_characters(&GroupModel::cyclic(3).unwrap()).len(), 1);
        assert_eq!(sign_characters(&GroupModel::cyclic(4).unwrap()).len(), 2);
        assert_eq!(sign_characters(&GroupModel::symmetric(3).unwrap()).len(), 2);
    }
}
