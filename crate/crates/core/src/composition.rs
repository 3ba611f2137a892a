//! Global weights over the leaves of a two-level hierarchy, and ranking.
//!
//! A leaf's global weight is its category weight times its local weight,
//! with no renormalization. [`normalize`] is a separate, optional step.

use std::cmp::Ordering;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hierarchy::Hierarchy;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CompositionError {
    #[error("leaf {leaf:?} belongs to category {category:?}, which has no category weight")]
    MissingCategory { leaf: String, category: String },
    #[error("no local weights for the children of {0:?}")]
    MissingBlock(String),
    #[error("weight for {id:?} must be positive and finite, got {value}")]
    NonPositive { id: String, value: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingRow {
    pub leaf: String,
    pub category: String,
    pub category_weight: f64,
    pub local_weight: f64,
    pub global_weight: f64,
    pub rank: usize,
}

/// Rows sorted by rank (descending global weight).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalRanking {
    pub rows: Vec<RankingRow>,
}

impl GlobalRanking {
    pub fn row(&self, leaf: &str) -> Option<&RankingRow> {
        self.rows.iter().find(|r| r.leaf == leaf)
    }

    /// Leaf ids from rank 1 downwards.
    pub fn order(&self) -> Vec<&str> {
        self.rows.iter().map(|r| r.leaf.as_str()).collect()
    }

    pub fn total(&self) -> f64 {
        self.rows.iter().map(|r| r.global_weight).sum()
    }
}

fn check_positive(id: &str, value: f64) -> Result<(), CompositionError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(CompositionError::NonPositive {
            id: id.to_string(),
            value,
        })
    }
}

/// `local_weights` maps each category to its leaves' local weights.
pub fn compose_global(
    category_weights: &IndexMap<String, f64>,
    local_weights: &IndexMap<String, IndexMap<String, f64>>,
) -> Result<GlobalRanking, CompositionError> {
    let mut rows = Vec::new();
    for (category, leaves) in local_weights {
        for (leaf, &local) in leaves {
            let &cw = category_weights.get(category).ok_or_else(|| {
                CompositionError::MissingCategory {
                    leaf: leaf.clone(),
                    category: category.clone(),
                }
            })?;
            check_positive(category, cw)?;
            check_positive(leaf, local)?;
            rows.push(RankingRow {
                leaf: leaf.clone(),
                category: category.clone(),
                category_weight: cw,
                local_weight: local,
                global_weight: cw * local,
                rank: 0,
            });
        }
    }
    rows.sort_by(|a, b| by_weight_then_id((&a.leaf, a.global_weight), (&b.leaf, b.global_weight)));
    for (i, r) in rows.iter_mut().enumerate() {
        r.rank = i + 1;
    }
    Ok(GlobalRanking { rows })
}

/// Composes local weights (parent → child → weight) down a validated
/// hierarchy. Each leaf's category weight is the global weight of its
/// parent; children of single-child nodes get local weight 1.
pub fn compose_hierarchy(
    hierarchy: &Hierarchy,
    local: &IndexMap<String, IndexMap<String, f64>>,
) -> Result<GlobalRanking, CompositionError> {
    let mut global: IndexMap<String, f64> = IndexMap::new();
    let mut by_parent: IndexMap<String, IndexMap<String, f64>> = IndexMap::new();
    global.insert(hierarchy.root().id.clone(), 1.0);
    for node in hierarchy.root().walk() {
        if node.is_leaf() {
            continue;
        }
        let parent_weight = global[&node.id];
        let block = if node.children.len() == 1 {
            IndexMap::from([(node.children[0].id.clone(), 1.0)])
        } else {
            local
                .get(&node.id)
                .cloned()
                .ok_or_else(|| CompositionError::MissingBlock(node.id.clone()))?
        };
        for child in &node.children {
            let w = *block
                .get(&child.id)
                .ok_or_else(|| CompositionError::MissingBlock(node.id.clone()))?;
            check_positive(&child.id, w)?;
            global.insert(child.id.clone(), parent_weight * w);
            if child.is_leaf() {
                by_parent
                    .entry(node.id.clone())
                    .or_default()
                    .insert(child.id.clone(), w);
            }
        }
    }
    let categories = by_parent.keys().map(|k| (k.clone(), global[k])).collect();
    compose_global(&categories, &by_parent)
}

fn by_weight_then_id(a: (&String, f64), b: (&String, f64)) -> Ordering {
    b.1.partial_cmp(&a.1)
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.0.cmp(b.0))
}

/// Rank 1 for the largest weight; ties go to the lexicographically smaller id.
pub fn rank(weights: &IndexMap<String, f64>) -> IndexMap<String, usize> {
    let mut ids: Vec<(&String, f64)> = weights.iter().map(|(k, v)| (k, *v)).collect();
    ids.sort_by(|a, b| by_weight_then_id(*a, *b));
    let ranks: IndexMap<&String, usize> = ids
        .iter()
        .enumerate()
        .map(|(i, (k, _))| (*k, i + 1))
        .collect();
    weights.keys().map(|k| (k.clone(), ranks[k])).collect()
}

/// Divides every weight by the total.
pub fn normalize(
    weights: &IndexMap<String, f64>,
) -> Result<IndexMap<String, f64>, CompositionError> {
    for (k, &v) in weights {
        check_positive(k, v)?;
    }
    let total: f64 = weights.values().sum();
    Ok(weights
        .iter()
        .map(|(k, v)| (k.clone(), v / total))
        .collect())
}
