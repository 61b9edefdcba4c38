use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::Vertex;

/// Names for the vertices of a constructed graph (`"b"`, `"x_3"`, …).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RoleMap(BTreeMap<String, Vertex>);

impl RoleMap {
    pub fn new() -> Self {
        RoleMap::default()
    }

    /// Panics on a repeated name; builders allocate names from fixed schemes.
    pub fn insert(&mut self, name: impl Into<String>, v: Vertex) {
        let name = name.into();
        let prev = self.0.insert(name.clone(), v);
        assert!(prev.is_none(), "role `{name}` assigned twice");
    }

    pub fn get(&self, name: &str) -> Option<Vertex> {
        self.0.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Vertex)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }

    /// Whether the names map one-to-one onto `0..n`.
    pub fn is_bijection_onto(&self, n: usize) -> bool {
        let mut hit = vec![false; n];
        for &v in self.0.values() {
            if v >= n || std::mem::replace(&mut hit[v], true) {
                return false;
            }
        }
        self.0.len() == n
    }

    /// Name of `v`, by reverse lookup.
    pub fn name_of(&self, v: Vertex) -> Option<&str> {
        self.0.iter().find(|(_, &w)| w == v).map(|(k, _)| k.as_str())
    }
}
