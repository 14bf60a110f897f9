#![allow(dead_code)]

use pcross_core::lab::{random_sample, Bounds, Sample};
use pcross_core::linalg::FieldSpec;
use proptest::prelude::*;

pub fn bounds(max_dim: usize, max_order: usize, twist: bool) -> Bounds {
    Bounds {
        max_dim,
        max_order,
        twist,
    }
}

pub fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        3 => Just(FieldSpec::Rationals),
        1 => Just(FieldSpec::Prime(3)),
        1 => Just(FieldSpec::Prime(5)),
    ]
}

/// A random restriction of a random global action.
pub fn sample(b: Bounds) -> impl Strategy<Value = Sample> {
    (any::<u64>(), field()).prop_map(move |(seed, f)| random_sample(seed, &b, f).expect("sample"))
}

pub fn rational_sample(b: Bounds) -> impl Strategy<Value = Sample> {
    any::<u64>().prop_map(move |seed| random_sample(seed, &b, FieldSpec::Rationals).expect("sample"))
}
