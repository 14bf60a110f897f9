//! The TOML instance format: an algebra, optionally a group with a partial
//! or global action, optionally a triangular `(R, N, S)` triple.
//!
//! Scalars are strings `"p/q"` (or bare integers); matrices are lists of
//! rows; group elements are referred to by label (integers for `Z`).

use crate::action::{restrict_global, GlobalAction, GlobalMaps, Piece, TwistedPartialAction};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupModel, FiniteGroup};
use crate::linalg::{FieldSpec, Matrix, Scalar};
use crate::triangular::{assemble_triangular, Bimodule, TriangularAlgebra};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::Path;

pub const FORMAT_VERSION: u32 = 1;

/// A scalar literal: a string `"p/q"` or a bare TOML integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Lit {
    Int(i64),
    Text(String),
}

impl Lit {
    fn parse(&self, f: FieldSpec, at: &str) -> Result<Scalar> {
        match self {
            Lit::Int(n) => Ok(f.int(*n)),
            Lit::Text(t) => f.parse(t).map_err(|e| Error::Parse(format!("{at}: {e}"))),
        }
    }
}

impl From<&Scalar> for Lit {
    fn from(s: &Scalar) -> Self {
        Lit::Text(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub version: u32,
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangular: Option<TriangularBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub global: Option<GlobalBlock>,
}

/// Structure constants as a list of nonzero basis products.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraBlock {
    pub names: Vec<String>,
    pub unit: Vec<Lit>,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub value: Vec<Lit>,
}

/// `kind` is `"cyclic"` (with `order`), `"symmetric"` (with `degree`),
/// `"table"` (with `labels`, `identity`, `table` of labels) or `"Z"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupBlock {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionBlock {
    pub support: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unbounded: bool,
    pub pieces: Vec<PieceEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub twists: Vec<TwistEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceEntry {
    pub g: String,
    pub idempotent: Vec<Lit>,
    pub alpha: Vec<Vec<Lit>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistEntry {
    pub g: String,
    pub h: String,
    pub value: Vec<Lit>,
}

/// A global action: `maps` for finite groups, `forward`/`backward` for `Z`.
/// With `restrict`, the partial action is the restriction to that central
/// idempotent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalBlock {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<MapEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forward: Option<Vec<Vec<Lit>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backward: Option<Vec<Vec<Lit>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub twists: Vec<TwistEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restrict: Option<Vec<Lit>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEntry {
    pub g: String,
    pub matrix: Vec<Vec<Lit>>,
}

/// `(R, N, S)` with `N` given by one matrix per basis element of `R`
/// (`n -> r n`) and of `S` (`n -> n s`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularBlock {
    pub left: AlgebraBlock,
    pub right: AlgebraBlock,
    pub module: ModuleBlock,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleBlock {
    pub names: Vec<String>,
    pub left: Vec<Vec<Vec<Lit>>>,
    pub right: Vec<Vec<Vec<Lit>>>,
}

/// A parsed instance. `algebra` is the algebra the action lives on: the
/// assembled `L` for triangular instances, `R` for restricted globals.
#[derive(Debug, Clone)]
pub struct Instance {
    pub field: FieldSpec,
    pub description: Option<String>,
    pub algebra: Algebra,
    pub triangular: Option<TriangularAlgebra>,
    pub group: Option<GroupModel>,
    pub action: Option<TwistedPartialAction>,
    pub global: Option<GlobalAction>,
    /// For `global.restrict`: the inclusion of `R` into the global algebra.
    pub embedding: Option<Matrix>,
}

#[derive(Debug, Clone)]
pub struct Loaded {
    pub instance: Instance,
    /// Unknown fields that were skipped (lenient mode only).
    pub warnings: Vec<String>,
}

pub fn parse_field(text: &str) -> Result<FieldSpec> {
    let t = text.trim();
    if t == "Q" || t.eq_ignore_ascii_case("rationals") {
        return Ok(FieldSpec::Rationals);
    }
    let inner = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("field: expected \"Q\" or \"GF(p)\", found \"{t}\"")))?;
    let p = inner
        .trim()
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("field: bad modulus in \"{t}\"")))?;
    FieldSpec::prime(p).map_err(|e| Error::Parse(format!("field: {e}")))
}

/// Reads TOML text. Unknown fields are errors when `strict`, warnings
/// otherwise.
pub fn parse_instance(text: &str, strict: bool) -> Result<Loaded> {
    if text.trim().is_empty() {
        return Err(Error::Parse("empty instance file".into()));
    }
    let mut unknown = Vec::new();
    let de = toml::Deserializer::parse(text).map_err(|e| Error::Parse(e.to_string()))?;
    let file: InstanceFile = serde_ignored::deserialize(de, |path| unknown.push(path.to_string()))
        .map_err(|e| Error::Parse(e.to_string()))?;
    if strict && !unknown.is_empty() {
        return Err(Error::Parse(format!("unknown field(s): {}", unknown.join(", "))));
    }
    let warnings = unknown.into_iter().map(|p| format!("ignored unknown field {p}")).collect();
    Ok(Loaded {
        instance: build(&file)?,
        warnings,
    })
}

pub fn load_instance(path: &Path, strict: bool) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_instance(&text, strict).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn vector_of(f: FieldSpec, lits: &[Lit], n: usize, at: &str) -> Result<Vec<Scalar>> {
    if lits.len() != n {
        return Err(Error::Parse(format!("{at}: expected {n} coordinates, found {}", lits.len())));
    }
    lits.iter().enumerate().map(|(i, l)| l.parse(f, &format!("{at}[{i}]"))).collect()
}

fn matrix_of(f: FieldSpec, rows: &[Vec<Lit>], n: usize, at: &str) -> Result<Matrix> {
    if rows.len() != n {
        return Err(Error::Parse(format!("{at}: expected {n} rows, found {}", rows.len())));
    }
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| vector_of(f, r, n, &format!("{at}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(f, n, &rows)
}

fn algebra_of(f: FieldSpec, b: &AlgebraBlock, at: &str) -> Result<Algebra> {
    let n = b.names.len();
    let index: BTreeMap<&str, usize> = b.names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    if index.len() != n {
        return Err(Error::Parse(format!("{at}.names: duplicate basis name")));
    }
    let mut table = vec![vec![vec![f.zero(); n]; n]; n];
    for (k, p) in b.products.iter().enumerate() {
        let here = format!("{at}.products[{k}]");
        let find = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::Parse(format!("{here}: unknown basis element '{name}'")))
        };
        let (i, j) = (find(&p.left)?, find(&p.right)?);
        table[i][j] = vector_of(f, &p.value, n, &format!("{here}.value"))?;
    }
    let unit = vector_of(f, &b.unit, n, &format!("{at}.unit"))?;
    Algebra::new(f, b.names.clone(), table, unit).map_err(|e| Error::Parse(format!("{at}: {e}")))
}

fn group_of(b: &GroupBlock) -> Result<GroupModel> {
    let need = |x: Option<usize>, what: &str| x.ok_or_else(|| Error::Parse(format!("group.{what}: missing")));
    match b.kind.as_str() {
        "cyclic" => GroupModel::cyclic(need(b.order, "order")?),
        "symmetric" => GroupModel::symmetric(need(b.degree, "degree")?),
        "Z" => Ok(GroupModel::Integers),
        "table" => {
            let labels = b.labels.clone().ok_or_else(|| Error::Parse("group.labels: missing".into()))?;
            let pos = |l: &str, at: &str| {
                labels
                    .iter()
                    .position(|x| x == l)
                    .ok_or_else(|| Error::Parse(format!("{at}: unknown label '{l}'")))
            };
            let rows = b.table.as_ref().ok_or_else(|| Error::Parse("group.table: missing".into()))?;
            let table = rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    r.iter()
                        .enumerate()
                        .map(|(j, l)| pos(l, &format!("group.table[{i}][{j}]")))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let identity = pos(
                b.identity.as_deref().ok_or_else(|| Error::Parse("group.identity: missing".into()))?,
                "group.identity",
            )?;
            Ok(GroupModel::Finite(FiniteGroup::from_table(table, identity, labels)?))
        }
        other => Err(Error::Parse(format!(
            "group.kind: unknown kind '{other}' (expected cyclic, symmetric, table or Z)"
        ))),
    }
}

fn twists_of(
    f: FieldSpec,
    g: &GroupModel,
    n: usize,
    entries: &[TwistEntry],
    at: &str,
) -> Result<BTreeMap<(GroupElement, GroupElement), Vec<Scalar>>> {
    entries
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let here = format!("{at}[{k}]");
            let x = g.parse_element(&t.g).map_err(|e| Error::Parse(format!("{here}.g: {e}")))?;
            let y = g.parse_element(&t.h).map_err(|e| Error::Parse(format!("{here}.h: {e}")))?;
            Ok(((x, y), vector_of(f, &t.value, n, &format!("{here}.value"))?))
        })
        .collect()
}

fn build(file: &InstanceFile) -> Result<Instance> {
    if file.version != FORMAT_VERSION {
        return Err(Error::Parse(format!(
            "version: unsupported format version {} (expected {FORMAT_VERSION})",
            file.version
        )));
    }
    let f = parse_field(&file.field)?;
    let (mut algebra, triangular) = match (&file.algebra, &file.triangular) {
        (Some(a), None) => (algebra_of(f, a, "algebra")?, None),
        (None, Some(t)) => {
            let r = algebra_of(f, &t.left, "triangular.left")?;
            let s = algebra_of(f, &t.right, "triangular.right")?;
            let m = t.module.names.len();
            let mats = |list: &[Vec<Vec<Lit>>], at: &str| {
                list.iter()
                    .enumerate()
                    .map(|(i, x)| matrix_of(f, x, m, &format!("{at}[{i}]")))
                    .collect::<Result<Vec<_>>>()
            };
            let left = mats(&t.module.left, "triangular.module.left")?;
            let right = mats(&t.module.right, "triangular.module.right")?;
            let bimodule = Bimodule::new(r, s, t.module.names.clone(), left, right)?;
            let l = assemble_triangular(bimodule)?;
            (l.algebra().clone(), Some(l))
        }
        (Some(_), Some(_)) => {
            return Err(Error::Parse("give either [algebra] or [triangular], not both".into()));
        }
        (None, None) => return Err(Error::Parse("missing [algebra] block".into())),
    };
    let n = algebra.dim();
    let group = file.group.as_ref().map(group_of).transpose()?;
    if (file.action.is_some() || file.global.is_some()) && group.is_none() {
        return Err(Error::Parse("an action needs a [group] block".into()));
    }
    if file.action.is_some() && file.global.is_some() {
        return Err(Error::Parse("give either [action] or [global], not both".into()));
    }
    let mut action = None;
    if let (Some(b), Some(g)) = (&file.action, &group) {
        let mut pieces = BTreeMap::new();
        for (k, p) in b.pieces.iter().enumerate() {
            let at = format!("action.pieces[{k}]");
            let x = g.parse_element(&p.g).map_err(|e| Error::Parse(format!("{at}.g: {e}")))?;
            let piece = Piece {
                idempotent: vector_of(f, &p.idempotent, n, &format!("{at}.idempotent"))?,
                alpha: matrix_of(f, &p.alpha, n, &format!("{at}.alpha"))?,
            };
            if pieces.insert(x, piece).is_some() {
                return Err(Error::Parse(format!("{at}.g: duplicate piece for '{}'", p.g)));
            }
        }
        let listed = b
            .support
            .iter()
            .map(|s| g.parse_element(s).map_err(|e| Error::Parse(format!("action.support: {e}"))))
            .collect::<Result<std::collections::BTreeSet<_>>>()?;
        let given: std::collections::BTreeSet<_> = pieces.keys().cloned().collect();
        if listed != given {
            return Err(Error::Parse("action.support: does not match the listed pieces".into()));
        }
        let twist = twists_of(f, g, n, &b.twists, "action.twists")?;
        let mut a = TwistedPartialAction::new(algebra.clone(), g.clone(), pieces, twist)?;
        if b.unbounded {
            a = a.mark_unbounded();
        }
        action = Some(a);
    }
    let mut global = None;
    let mut embedding = None;
    if let (Some(b), Some(g)) = (&file.global, &group) {
        let twist = twists_of(f, g, n, &b.twists, "global.twists")?;
        let ga = match g {
            GroupModel::Integers => {
                let fw = b.forward.as_ref().ok_or_else(|| Error::Parse("global.forward: missing".into()))?;
                let bw = b.backward.as_ref().ok_or_else(|| Error::Parse("global.backward: missing".into()))?;
                if !twist.is_empty() {
                    return Err(Error::Parse("global.twists: not supported for Z".into()));
                }
                GlobalAction::integers(
                    algebra.clone(),
                    matrix_of(f, fw, n, "global.forward")?,
                    matrix_of(f, bw, n, "global.backward")?,
                )?
            }
            _ => {
                let elements = g.elements().expect("finite");
                let mut maps = BTreeMap::new();
                for (k, m) in b.maps.iter().enumerate() {
                    let at = format!("global.maps[{k}]");
                    let x = g.parse_element(&m.g).map_err(|e| Error::Parse(format!("{at}.g: {e}")))?;
                    maps.insert(x, matrix_of(f, &m.matrix, n, &format!("{at}.matrix"))?);
                }
                let ordered = elements
                    .iter()
                    .map(|x| {
                        maps.remove(x)
                            .ok_or_else(|| Error::Parse(format!("global.maps: no map for '{}'", g.label(x))))
                    })
                    .collect::<Result<Vec<_>>>()?;
                GlobalAction::finite(algebra.clone(), g.clone(), ordered, twist)?
            }
        };
        if let Some(e) = &b.restrict {
            let e = vector_of(f, e, n, "global.restrict")?;
            let res = restrict_global(&ga, &e)?;
            algebra = res.action.algebra().clone();
            action = Some(res.action);
            embedding = Some(res.embedding);
        }
        global = Some(ga);
    }
    Ok(Instance {
        field: f,
        description: file.description.clone(),
        algebra,
        triangular,
        group,
        action,
        global,
        embedding,
    })
}

fn lits(v: &[Scalar]) -> Vec<Lit> {
    v.iter().map(Lit::from).collect()
}

fn matrix_lits(m: &Matrix) -> Vec<Vec<Lit>> {
    m.row_vectors().iter().map(|r| lits(r)).collect()
}

pub fn algebra_block(a: &Algebra) -> AlgebraBlock {
    let n = a.dim();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = a.basis_product(i, j);
            if v.iter().any(|x| !x.is_zero()) {
                products.push(ProductEntry {
                    left: a.names()[i].clone(),
                    right: a.names()[j].clone(),
                    value: lits(&v),
                });
            }
        }
    }
    AlgebraBlock {
        names: a.names().to_vec(),
        unit: lits(a.unit()),
        products,
    }
}

pub fn group_block(g: &GroupModel) -> GroupBlock {
    match g {
        GroupModel::Integers => GroupBlock {
            kind: "Z".into(),
            order: None,
            degree: None,
            labels: None,
            identity: None,
            table: None,
        },
        GroupModel::Finite(fg) => {
            let labels = fg.labels().to_vec();
            GroupBlock {
                kind: "table".into(),
                order: None,
                degree: None,
                identity: Some(labels[fg.identity()].clone()),
                table: Some(
                    fg.table()
                        .iter()
                        .map(|r| r.iter().map(|&k| labels[k].clone()).collect())
                        .collect(),
                ),
                labels: Some(labels),
            }
        }
    }
}

/// An algebra-only file.
pub fn algebra_file(a: &Algebra, description: Option<String>) -> InstanceFile {
    InstanceFile {
        version: FORMAT_VERSION,
        field: a.field().to_string(),
        description,
        algebra: Some(algebra_block(a)),
        triangular: None,
        group: None,
        action: None,
        global: None,
    }
}

/// A file holding a partial action with its algebra and group.
pub fn action_file(a: &TwistedPartialAction, description: Option<String>) -> InstanceFile {
    let g = a.group();
    let pieces = a
        .pieces()
        .iter()
        .map(|(x, p)| PieceEntry {
            g: g.label(x),
            idempotent: lits(&p.idempotent),
            alpha: matrix_lits(&p.alpha),
        })
        .collect();
    let twists = a
        .explicit_twists()
        .iter()
        .map(|((x, y), w)| TwistEntry {
            g: g.label(x),
            h: g.label(y),
            value: lits(w),
        })
        .collect();
    InstanceFile {
        group: Some(group_block(g)),
        action: Some(ActionBlock {
            support: a.support().iter().map(|x| g.label(x)).collect(),
            unbounded: a.is_unbounded(),
            pieces,
            twists,
        }),
        ..algebra_file(a.algebra(), description)
    }
}

/// A file holding a global action (finite group or `Z`).
pub fn global_file(b: &GlobalAction, restrict: Option<&[Scalar]>, description: Option<String>) -> InstanceFile {
    let g = b.group();
    let (maps, forward, backward) = match b.maps() {
        GlobalMaps::Table(t) => (
            t.iter()
                .map(|(x, m)| MapEntry {
                    g: g.label(x),
                    matrix: matrix_lits(m),
                })
                .collect(),
            None,
            None,
        ),
        GlobalMaps::Generator { forward, backward } => (Vec::new(), Some(matrix_lits(forward)), Some(matrix_lits(backward))),
    };
    let twists = b
        .explicit_twists()
        .iter()
        .map(|((x, y), w)| TwistEntry {
            g: g.label(x),
            h: g.label(y),
            value: lits(w),
        })
        .collect();
    InstanceFile {
        group: Some(group_block(g)),
        global: Some(GlobalBlock {
            maps,
            forward,
            backward,
            twists,
            restrict: restrict.map(lits),
        }),
        ..algebra_file(b.algebra(), description)
    }
}

/// A triangular `(R, N, S)` file, with a partial action on the assembled
/// algebra when given.
pub fn triangular_file(l: &TriangularAlgebra, action: Option<&TwistedPartialAction>, description: Option<String>) -> InstanceFile {
    let b = l.bimodule();
    let triangular = TriangularBlock {
        left: algebra_block(l.left_algebra()),
        right: algebra_block(l.right_algebra()),
        module: ModuleBlock {
            names: b.names().to_vec(),
            left: b.left_basis_matrices().iter().map(matrix_lits).collect(),
            right: b.right_basis_matrices().iter().map(matrix_lits).collect(),
        },
    };
    let base = match action {
        Some(a) => action_file(a, description),
        None => algebra_file(l.algebra(), description),
    };
    InstanceFile {
        algebra: None,
        triangular: Some(triangular),
        ..base
    }
}

impl InstanceFile {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("instance files serialize")
    }

    /// SHA-256 of the canonical TOML text.
    pub fn fingerprint(&self) -> String {
        hex::encode(Sha256::digest(self.to_toml().as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::fixtures::{z_pair, z_point};
    use crate::action::validate_action;

    #[test]
    fn action_round_trip() {
        for a in [z_pair(), z_point()] {
            let file = action_file(&a, Some("fixture".into()));
            let text = file.to_toml();
            let back = parse_instance(&text, true).unwrap();
            assert!(back.warnings.is_empty());
            assert_eq!(back.instance.action.as_ref(), Some(&a));
            assert_eq!(action_file(back.instance.action.as_ref().unwrap(), Some("fixture".into())).to_toml(), text);
        }
    }

    #[test]
    fn strict_and_lenient() {
        let mut text = action_file(&z_pair(), None).to_toml();
        text = text.replacen("version = 1", "version = 1\ncolour = \"blue\"", 1);
        let err = parse_instance(&text, true).unwrap_err();
        assert!(matches!(&err, Error::Parse(m) if m.contains("colour")), "{err}");
        let ok = parse_instance(&text, false).unwrap();
        assert_eq!(ok.warnings, vec!["ignored unknown field colour".to_string()]);
    }

    #[test]
    fn parse_errors_carry_context() {
        assert!(matches!(parse_instance("", true), Err(Error::Parse(_))));
        let text = action_file(&z_pair(), None).to_toml().replacen("\"1\"", "\"1/0\"", 1);
        let err = parse_instance(&text, true).unwrap_err().to_string();
        assert!(err.contains("algebra.unit[0]") || err.contains("products"), "{err}");
        let bad = "version = 1\nfield = \"GF(4)\"\n[algebra]\nnames = []\nunit = []\n";
        assert!(parse_instance(bad, true).unwrap_err().to_string().contains("field"));
    }

    #[test]
    fn global_with_restriction() {
        let text = r#"
version = 1
field = "Q"
[algebra]
names = ["a", "b"]
unit = [1, 1]
products = [
  { left = "a", right = "a", value = [1, 0] },
  { left = "b", right = "b", value = [0, 1] },
]
[group]
kind = "cyclic"
order = 2
[global]
maps = [
  { g = "e", matrix = [[1, 0], [0, 1]] },
  { g = "g", matrix = [[0, 1], [1, 0]] },
]
restrict = [1, 0]
"#;
        let loaded = parse_instance(text, true).unwrap();
        let a = loaded.instance.action.unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.support().len(), 1);
        assert!(validate_action(&a).is_ok());
        assert!(loaded.instance.embedding.is_some());
    }

    #[test]
    fn fingerprints_are_stable() {
        let a = action_file(&z_pair(), None);
        assert_eq!(a.fingerprint(), a.clone().fingerprint());
        assert_ne!(a.fingerprint(), action_file(&z_point(), None).fingerprint());
    }

    #[test]
    fn triangular_round_trip() {
        let (l, a) = crate::triangular::extend_diagonal(&crate::fixtures::c3_restriction()).unwrap();
        let text = triangular_file(&l, Some(&a), None).to_toml();
        let back = parse_instance(&text, true).unwrap().instance;
        assert_eq!(back.triangular.as_ref().map(|t| t.algebra()), Some(l.algebra()));
        assert_eq!(back.action.as_ref(), Some(&a));
    }
}
