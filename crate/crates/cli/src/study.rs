//! Study documents: a hierarchy plus the fuzzy judgments of each block.
//!
//! ```json
//! {
//!   "name": "example",
//!   "hierarchy": {"id": "G", "label": "Goal", "children": [
//!     {"id": "A", "label": "Option A"}, {"id": "B", "label": "Option B"}]},
//!   "matrices": {"G": [{"row": "B", "col": "A", "judgment": {"term": "high"}}]}
//! }
//! ```
//!
//! A judgment is either `[l, m, u]` or `{"term": ...}` resolved against
//! `scale` (default: the five-term scale from very low to very high).

use std::fs;
use std::path::Path;

use fahp_core::fuzzy::{FuzzyError, ScaleEntry};
use fahp_core::hierarchy::HierarchyError;
use fahp_core::{
    ComparisonJudgment, ComparisonMatrix, Hierarchy, LinguisticScale, Node, SolverConfig, Tfn,
};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, JudgmentError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyDocument {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<IndexMap<String, [f64; 3]>>,
    pub hierarchy: Node,
    pub matrices: IndexMap<String, Vec<JudgmentEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JudgmentEntry {
    pub row: String,
    pub col: String,
    pub judgment: JudgmentValue,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JudgmentValue {
    Triple([f64; 3]),
    Term(TermRef),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRef {
    pub term: String,
}

/// A parsed and validated study.
#[derive(Debug, Clone, PartialEq)]
pub struct Study {
    pub name: String,
    pub hierarchy: Hierarchy,
    pub config: SolverConfig,
}

impl StudyDocument {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| CliError::Json {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Document with every judgment written as an explicit triple.
    pub fn from_hierarchy(name: &str, hierarchy: &Hierarchy) -> Self {
        let matrices = hierarchy
            .matrices()
            .iter()
            .map(|(parent, m)| {
                let entries = m
                    .judgments()
                    .iter()
                    .map(|j| JudgmentEntry {
                        row: j.row.clone(),
                        col: j.col.clone(),
                        judgment: JudgmentValue::Triple([
                            j.value.lower(),
                            j.value.mode(),
                            j.value.upper(),
                        ]),
                    })
                    .collect();
                (parent.clone(), entries)
            })
            .collect();
        StudyDocument {
            name: name.to_string(),
            scale: None,
            hierarchy: hierarchy.root().clone(),
            matrices,
            solver: None,
        }
    }

    pub fn into_study(self) -> Result<Study, CliError> {
        let scale = match &self.scale {
            None => LinguisticScale::standard(),
            Some(terms) => {
                let mut entries = Vec::with_capacity(terms.len());
                for (term, &[l, m, u]) in terms {
                    let value = Tfn::new(l, m, u).map_err(CliError::Scale)?;
                    entries.push(ScaleEntry {
                        term: term.clone(),
                        value,
                    });
                }
                LinguisticScale::new(entries).map_err(CliError::Scale)?
            }
        };
        let config = self.solver.unwrap_or_default();
        config.validate().map_err(|source| CliError::Solver {
            parent: "<config>".into(),
            source,
        })?;

        let mut matrices = IndexMap::new();
        for (parent, entries) in &self.matrices {
            let node = self
                .hierarchy
                .find(parent)
                .filter(|n| !n.is_leaf())
                .ok_or_else(|| HierarchyError::OrphanMatrix(parent.clone()))?;
            let items = node.children.iter().map(|c| c.id.clone()).collect();
            let mut judgments = Vec::with_capacity(entries.len());
            for (i, e) in entries.iter().enumerate() {
                let value = resolve(&e.judgment, &scale).map_err(|source| {
                    CliError::Judgment(Box::new(JudgmentError {
                        parent: parent.clone(),
                        index: i + 1,
                        row: e.row.clone(),
                        col: e.col.clone(),
                        source,
                    }))
                })?;
                judgments.push(ComparisonJudgment::new(e.row.clone(), e.col.clone(), value));
            }
            matrices.insert(
                parent.clone(),
                ComparisonMatrix::new(parent.clone(), items, judgments)?,
            );
        }
        let hierarchy = Hierarchy::new(self.hierarchy, matrices)?;
        Ok(Study {
            name: self.name,
            hierarchy,
            config,
        })
    }
}

fn resolve(value: &JudgmentValue, scale: &LinguisticScale) -> Result<Tfn, FuzzyError> {
    match value {
        JudgmentValue::Triple([l, m, u]) => Tfn::new(*l, *m, *u),
        JudgmentValue::Term(t) => scale.lookup(&t.term),
    }
}

pub fn load_study(path: &Path) -> Result<Study, CliError> {
    StudyDocument::load(path)?.into_study()
}
