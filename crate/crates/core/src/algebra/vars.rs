//! Variable tables: ordered sets of holomorphic variables, their conjugates,
//! and real variables.
//!
//! Conjugate variables are independent symbols; the table records the pairing
//! used by the conjugation involution. The canonical variable order (the order
//! of `names`) fixes monomial keys and therefore all term orderings.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a variable inside its `VarTable`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VarId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    /// Holomorphic variable, paired with `conj`.
    Holo { conj: VarId },
    /// Conjugate of a holomorphic variable.
    Anti { conj: VarId },
    /// Real variable, fixed by conjugation.
    Real,
}

#[derive(Debug)]
pub struct VarTable {
    names: Vec<String>,
    kinds: Vec<VarKind>,
    holo: Vec<VarId>,
    anti: Vec<VarId>,
    real: Vec<VarId>,
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.kinds == other.kinds
    }
}
impl Eq for VarTable {}

impl VarTable {
    /// Build a table from holomorphic names (conjugates are generated by
    /// inserting a combining macron after the first character) plus real names.
    pub fn new(holo_names: &[&str], real_names: &[&str]) -> Arc<Self> {
        let mut names = Vec::new();
        let mut kinds = Vec::new();
        let mut holo = Vec::new();
        let mut anti = Vec::new();
        let mut real = Vec::new();
        let n = holo_names.len();
        for (i, h) in holo_names.iter().enumerate() {
            names.push((*h).to_string());
            kinds.push(VarKind::Holo {
                conj: VarId(n + i),
            });
            holo.push(VarId(i));
        }
        for (i, h) in holo_names.iter().enumerate() {
            names.push(conj_name(h));
            kinds.push(VarKind::Anti { conj: VarId(i) });
            anti.push(VarId(n + i));
        }
        for (i, r) in real_names.iter().enumerate() {
            names.push((*r).to_string());
            kinds.push(VarKind::Real);
            real.push(VarId(2 * n + i));
        }
        {
            let mut sorted = names.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), names.len(), "variable names must be unique");
        }
        Arc::new(VarTable {
            names,
            kinds,
            holo,
            anti,
            real,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.names[v.0]
    }

    pub fn kind(&self, v: VarId) -> VarKind {
        self.kinds[v.0]
    }

    pub fn holo_vars(&self) -> &[VarId] {
        &self.holo
    }

    pub fn anti_vars(&self) -> &[VarId] {
        &self.anti
    }

    pub fn real_vars(&self) -> &[VarId] {
        &self.real
    }

    pub fn var(&self, name: &str) -> Result<VarId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(VarId)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// The conjugation image of `v`: swaps holomorphic and anti variables,
    /// fixes real ones.
    pub fn conj_var(&self, v: VarId) -> VarId {
        match self.kinds[v.0] {
            VarKind::Holo { conj } | VarKind::Anti { conj } => conj,
            VarKind::Real => v,
        }
    }

    pub fn is_holo(&self, v: VarId) -> bool {
        matches!(self.kinds[v.0], VarKind::Holo { .. })
    }

    pub fn is_anti(&self, v: VarId) -> bool {
        matches!(self.kinds[v.0], VarKind::Anti { .. })
    }

    pub fn is_real(&self, v: VarId) -> bool {
        matches!(self.kinds[v.0], VarKind::Real)
    }

    pub fn iter(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.names.len()).map(VarId)
    }

    pub fn holo_names(&self) -> Vec<String> {
        self.holo.iter().map(|v| self.name(*v).to_string()).collect()
    }

    pub fn anti_names(&self) -> Vec<String> {
        self.anti.iter().map(|v| self.name(*v).to_string()).collect()
    }

    pub fn real_names(&self) -> Vec<String> {
        self.real.iter().map(|v| self.name(*v).to_string()).collect()
    }
}

impl fmt::Display for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}

/// `z` -> `z̄`, `z1` -> `z̄1`: combining macron after the first character.
pub fn conj_name(name: &str) -> String {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) => {
            let mut s = String::new();
            s.push(c);
            s.push('\u{0304}');
            s.extend(chars);
            s
        }
        None => String::new(),
    }
}

/// Same pointer or structurally equal tables.
pub fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_and_names() {
        let t = VarTable::new(&["z", "ζ", "η", "w"], &["u"]);
        assert_eq!(t.len(), 9);
        let z = t.var("z").unwrap();
        let zb = t.var("z̄").unwrap();
        assert_eq!(t.conj_var(z), zb);
        assert_eq!(t.conj_var(zb), z);
        let u = t.var("u").unwrap();
        assert_eq!(t.conj_var(u), u);
        assert!(t.var("q").is_err());
    }

    #[test]
    fn conj_name_placement() {
        assert_eq!(conj_name("z1"), "z\u{0304}1");
        assert_eq!(conj_name("ζ"), "ζ\u{0304}");
    }
}
