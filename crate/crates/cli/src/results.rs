use std::time::{SystemTime, UNIX_EPOCH};

use fahp_core::solver::solve_many;
use fahp_core::{compose_hierarchy, Execution, RankingRow, SolverConfig};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::study::Study;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl ToolInfo {
    pub fn current() -> Self {
        ToolInfo {
            name: "fahp".into(),
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockResult {
    pub parent: String,
    pub weights: IndexMap<String, f64>,
    pub lambda: f64,
    pub consistent: bool,
    pub clamped: bool,
    pub non_unique: bool,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultsDocument {
    pub tool: ToolInfo,
    pub study: String,
    /// Seconds since the Unix epoch; absent when suppressed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
    pub config: SolverConfig,
    pub blocks: Vec<BlockResult>,
    pub ranking: Vec<RankingRow>,
}

impl ResultsDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("results serialize");
        s.push('\n');
        s
    }

    pub fn stamp_now(&mut self) {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        self.generated_at = Some(secs);
    }
}

/// Solves every block (concurrently when enabled) and composes the global
/// ranking. Blocks are reported in hierarchy pre-order.
pub fn solve_study(study: &Study, exec: Execution) -> Result<ResultsDocument, CliError> {
    let h = &study.hierarchy;
    let matrices: Vec<_> = h
        .internal_nodes()
        .into_iter()
        .filter_map(|n| h.matrix(&n.id).cloned())
        .collect();
    let solved = solve_many(&matrices, &study.config, exec);

    let mut blocks = Vec::with_capacity(matrices.len());
    let mut local = IndexMap::new();
    for (m, r) in matrices.iter().zip(solved) {
        let r = r.map_err(|source| CliError::Solver {
            parent: m.parent().to_string(),
            source,
        })?;
        local.insert(m.parent().to_string(), r.weights.clone());
        blocks.push(BlockResult {
            parent: m.parent().to_string(),
            weights: r.weights,
            lambda: r.lambda,
            consistent: r.consistent,
            clamped: r.clamped,
            non_unique: r.non_unique,
            iterations: r.iterations,
        });
    }
    let ranking = compose_hierarchy(h, &local).map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(ResultsDocument {
        tool: ToolInfo::current(),
        study: study.name.clone(),
        generated_at: None,
        config: study.config,
        blocks,
        ranking: ranking.rows,
    })
}
