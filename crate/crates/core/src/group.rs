//! Group models: finite groups given by a multiplication table, and the
//! infinite cyclic group `Z` handled symbolically.

use crate::error::{Error, Result};
use crate::report::Report;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeSet;
use std::fmt;

/// An element of a [`GroupModel`]: a table index for finite groups, an
/// integer for `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Index(usize),
    Integer(BigInt),
}

impl GroupElement {
    pub fn int(n: i64) -> Self {
        GroupElement::Integer(BigInt::from(n))
    }

    pub fn index(&self) -> Option<usize> {
        match self {
            GroupElement::Index(i) => Some(*i),
            GroupElement::Integer(_) => None,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Index(i) => write!(f, "#{i}"),
            GroupElement::Integer(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    labels: Vec<String>,
    inverses: Vec<Option<usize>>,
}

impl FiniteGroup {
    /// Wraps a table after shape checks only; call [`validate_group`] for the
    /// group axioms.
    pub fn from_table(table: Vec<Vec<usize>>, identity: usize, labels: Vec<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Malformed("empty group table".into()));
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(Error::Malformed("group table is not square".into()));
        }
        if let Some(x) = table.iter().flatten().find(|&&x| x >= n) {
            return Err(Error::Malformed(format!("table entry {x} out of range")));
        }
        if identity >= n {
            return Err(Error::Malformed(format!("identity index {identity} out of range")));
        }
        if labels.len() != n {
            return Err(Error::Malformed(format!("{} labels for {n} elements", labels.len())));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(Error::Malformed("duplicate element labels".into()));
        }
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity))
            .collect();
        Ok(Self {
            table,
            identity,
            labels,
            inverses,
        })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Two-sided inverse. Panics if the table has none; validate first.
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a].unwrap_or_else(|| panic!("element {a} has no inverse in the table"))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// All subgroups, each as a sorted index list, found by closing known
    /// subgroups under one more generator until nothing new appears.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier = vec![vec![self.identity]];
        found.insert(vec![self.identity]);
        while let Some(h) = frontier.pop() {
            for g in 0..self.order() {
                if h.contains(&g) {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let k = self.closure(&gens);
                if found.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        let mut all: Vec<Vec<usize>> = found.into_iter().collect();
        all.sort_by_key(|h| (h.len(), h.clone()));
        all
    }

    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::new();
        set.insert(self.identity);
        let mut queue: Vec<usize> = vec![self.identity];
        while let Some(x) = queue.pop() {
            for &g in gens {
                for y in [self.op(x, g), self.op(g, x)] {
                    if set.insert(y) {
                        queue.push(y);
                    }
                }
            }
        }
        set.into_iter().collect()
    }
}

/// A group the engine can act with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupModel {
    Finite(FiniteGroup),
    /// The infinite cyclic group under addition.
    Integers,
}

impl GroupModel {
    /// Cyclic group of order `n`; element `i` is `g^i`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed("cyclic group of order 0".into()));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let labels = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            })
            .collect();
        Ok(GroupModel::Finite(FiniteGroup::from_table(table, 0, labels)?))
    }

    /// Symmetric group on `n <= 4` points, elements in lexicographic order of
    /// their one-line notation, labelled in cycle notation.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 4 {
            return Err(Error::UnsupportedGroup(format!("symmetric group on {n} points")));
        }
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
        // (a*b)(x) = a(b(x))
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&(0..n).map(|x| a[b[x]]).collect()))
                    .collect()
            })
            .collect();
        let labels = perms.iter().map(|p| cycle_label(p)).collect();
        Ok(GroupModel::Finite(FiniteGroup::from_table(table, 0, labels)?))
    }

    pub fn direct_product(a: &GroupModel, b: &GroupModel) -> Result<Self> {
        let (GroupModel::Finite(a), GroupModel::Finite(b)) = (a, b) else {
            return Err(Error::UnsupportedGroup("direct products of finite groups only".into()));
        };
        let (na, nb) = (a.order(), b.order());
        let table = (0..na * nb)
            .map(|x| {
                (0..na * nb)
                    .map(|y| a.op(x / nb, y / nb) * nb + b.op(x % nb, y % nb))
                    .collect()
            })
            .collect();
        let labels = (0..na * nb)
            .map(|x| format!("({},{})", a.labels[x / nb], b.labels[x % nb]))
            .collect();
        Ok(GroupModel::Finite(FiniteGroup::from_table(
            table,
            a.identity * nb + b.identity,
            labels,
        )?))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, GroupModel::Finite(_))
    }

    pub fn finite(&self) -> Option<&FiniteGroup> {
        match self {
            GroupModel::Finite(f) => Some(f),
            GroupModel::Integers => None,
        }
    }

    pub fn order(&self) -> Option<usize> {
        self.finite().map(FiniteGroup::order)
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupModel::Finite(f) => GroupElement::Index(f.identity),
            GroupModel::Integers => GroupElement::Integer(BigInt::zero()),
        }
    }

    /// All elements in canonical order; `None` for `Z`.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        self.finite()
            .map(|f| (0..f.order()).map(GroupElement::Index).collect())
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        match (self, g) {
            (GroupModel::Finite(f), GroupElement::Index(i)) => *i < f.order(),
            (GroupModel::Integers, GroupElement::Integer(_)) => true,
            _ => false,
        }
    }

    /// Group product. Panics on elements of another model.
    pub fn op(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (self, a, b) {
            (GroupModel::Finite(f), GroupElement::Index(x), GroupElement::Index(y)) => {
                GroupElement::Index(f.op(*x, *y))
            }
            (GroupModel::Integers, GroupElement::Integer(x), GroupElement::Integer(y)) => {
                GroupElement::Integer(x + y)
            }
            _ => panic!("group element of the wrong kind"),
        }
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        match (self, a) {
            (GroupModel::Finite(f), GroupElement::Index(x)) => GroupElement::Index(f.inv(*x)),
            (GroupModel::Integers, GroupElement::Integer(x)) => GroupElement::Integer(-x),
            _ => panic!("group element of the wrong kind"),
        }
    }

    pub fn label(&self, g: &GroupElement) -> String {
        match (self, g) {
            (GroupModel::Finite(f), GroupElement::Index(i)) => f.labels[*i].clone(),
            (_, other) => other.to_string(),
        }
    }

    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        match self {
            GroupModel::Finite(f) => f
                .labels
                .iter()
                .position(|l| l == text.trim())
                .map(GroupElement::Index)
                .ok_or_else(|| Error::Parse(format!("unknown group element '{text}'"))),
            GroupModel::Integers => text
                .trim()
                .parse::<BigInt>()
                .map(GroupElement::Integer)
                .map_err(|_| Error::Parse(format!("'{text}' is not an integer"))),
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for x in 0..n {
            if !prefix.contains(&x) {
                prefix.push(x);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

fn cycle_label(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut s = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut c = vec![start + 1];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            c.push(x + 1);
            x = p[x];
        }
        let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
        s.push_str(&format!("({})", parts.join(" ")));
    }
    if s.is_empty() {
        "e".into()
    } else {
        s
    }
}

/// Checks the group axioms: Latin square, identity, inverses, and
/// associativity over every triple.
pub fn validate_group(g: &GroupModel) -> Report {
    let mut report = Report::new("group");
    let GroupModel::Finite(f) = g else {
        report.check("integers");
        return report;
    };
    let n = f.order();
    let label = |i: usize| f.labels[i].clone();
    'latin: for a in 0..n {
        let mut row = vec![false; n];
        let mut col = vec![false; n];
        for b in 0..n {
            let (r, c) = (f.table[a][b], f.table[b][a]);
            if row[r] || col[c] {
                report.fail(
                    "latin-square",
                    format!("row or column of '{}' repeats an entry", label(a)),
                );
                break 'latin;
            }
            row[r] = true;
            col[c] = true;
        }
    }
    report.check("latin-square");
    let e = f.identity;
    for a in 0..n {
        if f.table[e][a] != a || f.table[a][e] != a {
            report.fail("identity", format!("{} * {} != {}", label(e), label(a), label(a)));
            break;
        }
    }
    report.check("identity");
    if let Some(a) = (0..n).find(|&a| f.inverses[a].is_none()) {
        report.fail("inverses", format!("'{}' has no two-sided inverse", label(a)));
    }
    report.check("inverses");
    'assoc: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if f.table[f.table[a][b]][c] != f.table[a][f.table[b][c]] {
                    report.fail(
                        "associativity",
                        format!("({}, {}, {})", label(a), label(b), label(c)),
                    );
                    break 'assoc;
                }
            }
        }
    }
    report.check("associativity");
    report
}

/// The subgroup generated by `gens`, as a sorted element list.
pub fn subgroup_closure(g: &GroupModel, gens: &[GroupElement]) -> Result<Vec<GroupElement>> {
    let GroupModel::Finite(f) = g else {
        return Err(Error::UnsupportedGroup(
            "subgroups of Z are handled symbolically as dZ".into(),
        ));
    };
    let idx: Vec<usize> = gens
        .iter()
        .map(|x| match x {
            GroupElement::Index(i) if *i < f.order() => Ok(*i),
            other => Err(Error::Malformed(format!("{other} is not an element of the group"))),
        })
        .collect::<Result<_>>()?;
    Ok(f.closure(&idx).into_iter().map(GroupElement::Index).collect())
}

/// Whether a finite element list is closed under products and inverses.
pub fn is_subgroup(g: &GroupModel, h: &[GroupElement]) -> bool {
    if !h.contains(&g.identity()) || h.iter().any(|x| !g.contains(x)) {
        return false;
    }
    h.iter().all(|a| h.contains(&g.inv(a)) && h.iter().all(|b| h.contains(&g.op(a, b))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(v: &[usize]) -> Vec<GroupElement> {
        v.iter().map(|&i| GroupElement::Index(i)).collect()
    }

    #[test]
    fn cyclic_tables() {
        let c1 = GroupModel::cyclic(1).unwrap();
        assert_eq!(c1.order(), Some(1));
        let c2 = GroupModel::cyclic(2).unwrap();
        assert_eq!(c2.finite().unwrap().table(), &[vec![0, 1], vec![1, 0]]);
        let c3 = GroupModel::cyclic(3).unwrap();
        assert_eq!(
            c3.finite().unwrap().table(),
            &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]
        );
        assert!(GroupModel::cyclic(0).is_err());
    }

    #[test]
    fn constructors_validate() {
        let groups = [
            GroupModel::cyclic(4).unwrap(),
            GroupModel::symmetric(3).unwrap(),
            GroupModel::symmetric(4).unwrap(),
            GroupModel::direct_product(
                &GroupModel::cyclic(2).unwrap(),
                &GroupModel::cyclic(2).unwrap(),
            )
            .unwrap(),
            GroupModel::Integers,
        ];
        for g in &groups {
            assert!(validate_group(g).is_ok(), "{:?}", validate_group(g));
        }
        assert_eq!(groups[2].order(), Some(24));
    }

    #[test]
    fn swapped_entry_breaks_associativity() {
        let GroupModel::Finite(c4) = GroupModel::cyclic(4).unwrap() else { unreachable!() };
        let mut t = c4.table().to_vec();
        // swap g*g and g*g^2 so each row stays a permutation
        t[1].swap(1, 2);
        let g = GroupModel::Finite(FiniteGroup::from_table(t, 0, c4.labels().to_vec()).unwrap());
        let r = validate_group(&g);
        assert!(!r.is_ok());
        assert!(r.has_violation("associativity"));
        let w = &r.violations.iter().find(|v| v.rule == "associativity").unwrap().witness;
        assert_eq!(w.matches(',').count(), 2, "witness is a triple: {w}");
    }

    #[test]
    fn closure_examples() {
        let c6 = GroupModel::cyclic(6).unwrap();
        assert_eq!(subgroup_closure(&c6, &idx(&[2])).unwrap(), idx(&[0, 2, 4]));
        assert_eq!(subgroup_closure(&c6, &[]).unwrap(), idx(&[0]));
        let c2 = GroupModel::cyclic(2).unwrap();
        assert_eq!(subgroup_closure(&c2, &idx(&[1])).unwrap(), idx(&[0, 1]));
        assert!(subgroup_closure(&GroupModel::Integers, &[]).is_err());
    }

    #[test]
    fn subgroup_lists() {
        let s3 = GroupModel::symmetric(3).unwrap();
        // trivial, three of order 2, A3, S3
        assert_eq!(s3.finite().unwrap().subgroups().len(), 6);
        let v4 = GroupModel::direct_product(
            &GroupModel::cyclic(2).unwrap(),
            &GroupModel::cyclic(2).unwrap(),
        )
        .unwrap();
        assert_eq!(v4.finite().unwrap().subgroups().len(), 5);
    }

    #[test]
    fn integer_group_ops() {
        let z = GroupModel::Integers;
        let a = GroupElement::int(3);
        assert_eq!(z.op(&a, &z.inv(&a)), z.identity());
        assert_eq!(z.parse_element("-7").unwrap(), GroupElement::int(-7));
    }
}
