//! JSON document describing a poset, optional integer functions on it and
//! optional targets.
//!
//! ```json
//! {
//!   "elements": [{"id": 0, "label": "top"}, {"id": 1}],
//!   "covers": [[1, 0]],
//!   "functions": {"h": {"0": 1, "1": 0}},
//!   "targets": [{"edge": [1, 0], "count": 1}, {"node": 1}]
//! }
//! ```
//!
//! Ids must be exactly `0..n` in any order. Unknown fields are rejected.

use std::collections::BTreeMap;

use euler_scan::{ElementId, Poset, PosetFunction, TargetPosition, TargetSet};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDocument {
    pub elements: Vec<ElementEntry>,
    #[serde(default)]
    pub covers: Vec<[ElementId; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functions: BTreeMap<String, BTreeMap<ElementId, i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub targets: Vec<TargetEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementEntry {
    pub id: ElementId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TargetEntry {
    Node(NodeTarget),
    Edge(EdgeTarget),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeTarget {
    pub node: ElementId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeTarget {
    pub edge: [ElementId; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
}

/// A validated document.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub poset: Poset,
    pub functions: BTreeMap<String, PosetFunction>,
    pub targets: TargetSet,
}

impl Loaded {
    pub fn function(&self, name: &str) -> Result<&PosetFunction, CliError> {
        self.functions
            .get(name)
            .ok_or_else(|| CliError::UnknownFunction(name.to_string()))
    }
}

impl PosetDocument {
    pub fn parse(text: &str) -> Result<PosetDocument, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("documents always serialize");
        out.push('\n');
        out
    }

    pub fn load(&self) -> Result<Loaded, CliError> {
        let n = self.elements.len();
        let mut labels = vec![None; n];
        let mut seen = vec![false; n];
        for e in &self.elements {
            if e.id >= n {
                return Err(CliError::Invalid(format!(
                    "element id {} is not in 0..{n}",
                    e.id
                )));
            }
            if std::mem::replace(&mut seen[e.id], true) {
                return Err(CliError::Invalid(format!("duplicate element id {}", e.id)));
            }
            labels[e.id] = e.label.clone();
        }

        let poset =
            Poset::from_covers(n, self.covers.iter().map(|&[a, b]| (a, b)))?.with_labels(labels)?;

        let mut functions = BTreeMap::new();
        for (name, values) in &self.functions {
            if let Some(&bad) = values.keys().find(|&&id| id >= n) {
                return Err(CliError::Invalid(format!(
                    "function {name:?} refers to unknown element {bad}"
                )));
            }
            if values.len() != n {
                let missing = (0..n).find(|id| !values.contains_key(id)).unwrap_or(0);
                return Err(CliError::Invalid(format!(
                    "function {name:?} has no value for element {missing}"
                )));
            }
            let h = PosetFunction::new(&poset, values.values().copied().collect())?;
            functions.insert(name.clone(), h);
        }

        let mut positions = Vec::new();
        for t in &self.targets {
            match t {
                TargetEntry::Node(NodeTarget { node }) => {
                    positions.push(TargetPosition::Node(*node))
                }
                TargetEntry::Edge(EdgeTarget {
                    edge: [a, b],
                    count,
                }) => {
                    for _ in 0..count.unwrap_or(1) {
                        positions.push(TargetPosition::Edge(*a, *b));
                    }
                }
            }
        }
        let targets = TargetSet::new(positions);
        targets.validate(&poset)?;

        Ok(Loaded {
            poset,
            functions,
            targets,
        })
    }

    /// Canonical document for `poset`: elements by id, covers sorted, edge
    /// targets grouped with counts.
    pub fn from_parts(
        poset: &Poset,
        functions: &BTreeMap<String, PosetFunction>,
        targets: &TargetSet,
    ) -> PosetDocument {
        let elements = poset
            .elements()
            .map(|id| ElementEntry {
                id,
                label: poset.label(id).map(str::to_string),
            })
            .collect();
        let covers = poset.covers().iter().map(|&(a, b)| [a, b]).collect();
        let functions = functions
            .iter()
            .map(|(name, h)| {
                (
                    name.clone(),
                    h.values().iter().copied().enumerate().collect(),
                )
            })
            .collect();

        let mut grouped: BTreeMap<TargetPosition, usize> = BTreeMap::new();
        for &t in targets.positions() {
            *grouped.entry(t).or_default() += 1;
        }
        let mut entries = Vec::new();
        for (t, count) in grouped {
            match t {
                TargetPosition::Node(node) => {
                    entries.extend((0..count).map(|_| TargetEntry::Node(NodeTarget { node })))
                }
                TargetPosition::Edge(a, b) => entries.push(TargetEntry::Edge(EdgeTarget {
                    edge: [a, b],
                    count: (count > 1).then_some(count),
                })),
            }
        }

        PosetDocument {
            elements,
            covers,
            functions,
            targets: entries,
        }
    }
}
