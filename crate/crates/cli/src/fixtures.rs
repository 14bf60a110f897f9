use crate::Outcome;
use pcross_core::action::{restrict_global, TwistedPartialAction};
use pcross_core::fixtures as fx;
use pcross_core::instance::{action_file, algebra_file, global_file, triangular_file, InstanceFile};
use pcross_core::triangular::extend_with_character;
use pcross_core::{Algebra, Error, FieldSpec, GroupElement, GroupModel, Result};
use std::path::Path;

pub const NAMES: &[&str] = &[
    "z-pair",
    "z-point",
    "shift-window",
    "dual-numbers",
    "upper-triangular",
    "m2",
    "c3-restriction",
    "triangular-qqq",
    "gf2-c2",
];

pub fn file(name: &str) -> Option<InstanceFile> {
    let q = FieldSpec::Rationals;
    let d = |s: &str| Some(s.to_string());
    Some(match name {
        "z-pair" => action_file(&fx::z_pair(), d("Z on Q e1 + Q e2 with alpha_1(e1) = e2")),
        "z-point" => action_file(&fx::z_point(), d("Z on Q with only D_0 nonzero")),
        "shift-window" => {
            // the truncated shift is not an automorphism, so only the
            // restriction is shipped
            let (b, e0) = fx::shift_window();
            let r = restrict_global(&b, &e0).expect("central idempotent");
            action_file(&r.action, d("the shift window on Q^5 restricted to e_0"))
        }
        "dual-numbers" => action_file(&fx::dual_sign_c2(), d("C2 on the dual numbers by x -> -x")),
        "upper-triangular" => algebra_file(&Algebra::upper_triangular(q), d("upper triangular 2x2 matrices")),
        "m2" => algebra_file(&Algebra::matrix_algebra(q, 2), d("2x2 matrices")),
        "c3-restriction" => global_file(
            &fx::c3_shift(),
            Some(&[q.one(), q.one(), q.zero()]),
            d("C3 permuting Q^3, restricted to e1 + e2"),
        ),
        "triangular-qqq" => {
            let a = TwistedPartialAction::trivial(Algebra::scalars(q), GroupModel::cyclic(2).expect("order 2"))
                .expect("trivial action");
            let sign = |g: &GroupElement| if *g == GroupElement::Index(0) { q.one() } else { q.int(-1) };
            let (l, ext) = extend_with_character(&a, sign).expect("untwisted");
            triangular_file(&l, Some(&ext), d("C2 on (Q, Q, Q), trivial on the corners, -1 on N"))
        }
        "gf2-c2" => action_file(&fx::gf2_trivial_c2(), d("C2 acting trivially on GF(2)")),
        _ => return None,
    })
}

fn unknown(name: &str) -> Error {
    Error::Hypothesis(format!("unknown fixture '{name}' (available: {})", NAMES.join(", ")))
}

pub fn command(name: Option<&str>, list: bool, dir: Option<&Path>) -> Result<Outcome> {
    if list {
        for n in NAMES {
            println!("{n}");
        }
        return Ok(Outcome::Success);
    }
    if let Some(dir) = dir {
        std::fs::create_dir_all(dir).map_err(|e| Error::Malformed(format!("{}: {e}", dir.display())))?;
        let names: Vec<&str> = match name {
            Some(n) => vec![n],
            None => NAMES.to_vec(),
        };
        for n in names {
            let f = file(n).ok_or_else(|| unknown(n))?;
            let path = dir.join(format!("{n}.toml"));
            std::fs::write(&path, f.to_toml()).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
            println!("{}", path.display());
        }
        return Ok(Outcome::Success);
    }
    let n = name.ok_or_else(|| Error::Hypothesis("give a fixture name, --list or --dir".into()))?;
    print!("{}", file(n).ok_or_else(|| unknown(n))?.to_toml());
    Ok(Outcome::Success)
}
