//! Decision hierarchy and the fuzzy comparison matrices attached to its
//! internal nodes.
//!
//! A judgment `(row, col, value)` is a fuzzy estimate of `w_row / w_col`.
//! Judgments are stored exactly in the orientation they were given; nothing
//! is mirrored into reciprocal form.

use std::collections::{HashMap, HashSet};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fuzzy::Tfn;

pub use crate::case_study::paper_study;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HierarchyError {
    #[error("duplicate node id {0:?}")]
    DuplicateId(String),
    #[error("matrix under {parent:?} must compare at least 2 items, got {count}")]
    TooFewItems { parent: String, count: usize },
    #[error("matrix under {parent:?} lists item {item:?} more than once")]
    DuplicateItem { parent: String, item: String },
    #[error("judgment ({row}, {col}) under {parent:?} references {missing:?}, which is not a sibling under {parent:?}")]
    DanglingJudgment {
        parent: String,
        row: String,
        col: String,
        missing: String,
    },
    #[error("judgment ({row}, {row}) under {parent:?} compares an item with itself")]
    SelfComparison { parent: String, row: String },
    #[error("pair ({a}, {b}) under {parent:?} is judged more than once")]
    DuplicatePair {
        parent: String,
        a: String,
        b: String,
    },
    #[error("judgments under {parent:?} do not connect all items; unreachable from {first:?}: {}", unreachable.join(", "))]
    Disconnected {
        parent: String,
        first: String,
        unreachable: Vec<String>,
    },
    #[error("internal node {0:?} has several children but no comparison matrix")]
    MissingMatrix(String),
    #[error("matrix attached to {0:?}, which is not an internal node of the hierarchy")]
    OrphanMatrix(String),
    #[error("matrix under {parent:?} does not cover exactly its children: expected [{}], got [{}]", expected.join(", "), got.join(", "))]
    ItemMismatch {
        parent: String,
        expected: Vec<String>,
        got: Vec<String>,
    },
}

/// A node of the decision tree. Leaves have no children.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub id: String,
    pub label: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Node>,
}

impl Node {
    pub fn leaf(id: impl Into<String>, label: impl Into<String>) -> Self {
        Node {
            id: id.into(),
            label: label.into(),
            children: Vec::new(),
        }
    }

    pub fn branch(id: impl Into<String>, label: impl Into<String>, children: Vec<Node>) -> Self {
        Node {
            id: id.into(),
            label: label.into(),
            children,
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Pre-order traversal.
    pub fn walk(&self) -> Vec<&Node> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.walk());
        }
        out
    }

    pub fn leaves(&self) -> Vec<&Node> {
        self.walk().into_iter().filter(|n| n.is_leaf()).collect()
    }

    pub fn find(&self, id: &str) -> Option<&Node> {
        self.walk().into_iter().find(|n| n.id == id)
    }
}

/// One fuzzy judgment of `w_row / w_col`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonJudgment {
    pub row: String,
    pub col: String,
    pub value: Tfn,
}

impl ComparisonJudgment {
    pub fn new(row: impl Into<String>, col: impl Into<String>, value: Tfn) -> Self {
        ComparisonJudgment {
            row: row.into(),
            col: col.into(),
            value,
        }
    }
}

/// A judgment resolved to item positions within its matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexedJudgment {
    pub row: usize,
    pub col: usize,
    pub value: Tfn,
}

/// Fuzzy pairwise judgments over the ordered children of one node.
///
/// Only constructible through [`ComparisonMatrix::new`], which checks that
/// there are at least two items, every judgment references listed items,
/// no unordered pair is judged twice, and the judgment graph is connected.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonMatrix {
    parent: String,
    items: Vec<String>,
    judgments: Vec<ComparisonJudgment>,
    #[serde(skip)]
    indexed: Vec<IndexedJudgment>,
}

impl ComparisonMatrix {
    pub fn new(
        parent: impl Into<String>,
        items: Vec<String>,
        judgments: Vec<ComparisonJudgment>,
    ) -> Result<Self, HierarchyError> {
        let parent = parent.into();
        if items.len() < 2 {
            return Err(HierarchyError::TooFewItems {
                parent,
                count: items.len(),
            });
        }
        let mut index = HashMap::with_capacity(items.len());
        for (i, it) in items.iter().enumerate() {
            if index.insert(it.as_str(), i).is_some() {
                return Err(HierarchyError::DuplicateItem {
                    parent,
                    item: it.clone(),
                });
            }
        }

        let mut seen = HashSet::new();
        let mut indexed = Vec::with_capacity(judgments.len());
        for j in &judgments {
            let lookup = |id: &str| {
                index
                    .get(id)
                    .copied()
                    .ok_or_else(|| HierarchyError::DanglingJudgment {
                        parent: parent.clone(),
                        row: j.row.clone(),
                        col: j.col.clone(),
                        missing: id.to_string(),
                    })
            };
            let r = lookup(&j.row)?;
            let c = lookup(&j.col)?;
            if r == c {
                return Err(HierarchyError::SelfComparison {
                    parent,
                    row: j.row.clone(),
                });
            }
            if !seen.insert((r.min(c), r.max(c))) {
                return Err(HierarchyError::DuplicatePair {
                    parent,
                    a: j.row.clone(),
                    b: j.col.clone(),
                });
            }
            indexed.push(IndexedJudgment {
                row: r,
                col: c,
                value: j.value,
            });
        }

        // connectivity by union-find over judged pairs
        let mut root: Vec<usize> = (0..items.len()).collect();
        fn find(root: &mut [usize], mut x: usize) -> usize {
            while root[x] != x {
                root[x] = root[root[x]];
                x = root[x];
            }
            x
        }
        for j in &indexed {
            let (a, b) = (find(&mut root, j.row), find(&mut root, j.col));
            root[a] = b;
        }
        let anchor = find(&mut root, 0);
        let unreachable: Vec<String> = (0..items.len())
            .filter(|&i| find(&mut root, i) != anchor)
            .map(|i| items[i].clone())
            .collect();
        if !unreachable.is_empty() {
            return Err(HierarchyError::Disconnected {
                parent,
                first: items[0].clone(),
                unreachable,
            });
        }

        Ok(ComparisonMatrix {
            parent,
            items,
            judgments,
            indexed,
        })
    }

    pub fn parent(&self) -> &str {
        &self.parent
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn judgments(&self) -> &[ComparisonJudgment] {
        &self.judgments
    }

    pub fn indexed_judgments(&self) -> &[IndexedJudgment] {
        &self.indexed
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.items.iter().position(|i| i == id)
    }

    /// The same judgments over items reordered by `order` (a permutation of
    /// the current positions): item `k` of the result is `items[order[k]]`.
    pub fn reordered(&self, order: &[usize]) -> Result<Self, HierarchyError> {
        let items = order.iter().map(|&i| self.items[i].clone()).collect();
        ComparisonMatrix::new(self.parent.clone(), items, self.judgments.clone())
    }
}

/// A validated decision tree with one comparison matrix per internal node
/// that has two or more children.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hierarchy {
    root: Node,
    matrices: IndexMap<String, ComparisonMatrix>,
}

impl Hierarchy {
    pub fn new(
        root: Node,
        matrices: IndexMap<String, ComparisonMatrix>,
    ) -> Result<Self, HierarchyError> {
        check(&root, &matrices)?;
        Ok(Hierarchy { root, matrices })
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn matrices(&self) -> &IndexMap<String, ComparisonMatrix> {
        &self.matrices
    }

    pub fn matrix(&self, parent: &str) -> Option<&ComparisonMatrix> {
        self.matrices.get(parent)
    }

    pub fn leaves(&self) -> Vec<&Node> {
        self.root.leaves()
    }

    /// Internal nodes in pre-order.
    pub fn internal_nodes(&self) -> Vec<&Node> {
        self.root
            .walk()
            .into_iter()
            .filter(|n| !n.is_leaf())
            .collect()
    }

    /// Parent id of every non-root node.
    pub fn parents(&self) -> HashMap<&str, &str> {
        let mut out = HashMap::new();
        for n in self.root.walk() {
            for c in &n.children {
                out.insert(c.id.as_str(), n.id.as_str());
            }
        }
        out
    }

    pub fn into_parts(self) -> (Node, IndexMap<String, ComparisonMatrix>) {
        (self.root, self.matrices)
    }
}

/// Re-checks every structural invariant. Idempotent.
pub fn validate(h: Hierarchy) -> Result<Hierarchy, HierarchyError> {
    check(&h.root, &h.matrices)?;
    for m in h.matrices.values() {
        ComparisonMatrix::new(m.parent.clone(), m.items.clone(), m.judgments.clone())?;
    }
    Ok(h)
}

fn check(root: &Node, matrices: &IndexMap<String, ComparisonMatrix>) -> Result<(), HierarchyError> {
    let nodes = root.walk();
    let mut ids = HashSet::new();
    for n in &nodes {
        if !ids.insert(n.id.as_str()) {
            return Err(HierarchyError::DuplicateId(n.id.clone()));
        }
    }
    for (key, m) in matrices {
        let node = nodes
            .iter()
            .find(|n| n.id == *key && !n.is_leaf())
            .ok_or_else(|| HierarchyError::OrphanMatrix(key.clone()))?;
        if m.parent != *key {
            return Err(HierarchyError::OrphanMatrix(m.parent.clone()));
        }
        let expected: Vec<String> = node.children.iter().map(|c| c.id.clone()).collect();
        let exp_set: HashSet<&String> = expected.iter().collect();
        let got_set: HashSet<&String> = m.items.iter().collect();
        if exp_set != got_set {
            return Err(HierarchyError::ItemMismatch {
                parent: key.clone(),
                expected,
                got: m.items.clone(),
            });
        }
    }
    for n in nodes {
        if n.children.len() >= 2 && !matrices.contains_key(&n.id) {
            return Err(HierarchyError::MissingMatrix(n.id.clone()));
        }
    }
    Ok(())
}
