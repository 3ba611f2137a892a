use std::fs;
use std::path::Path;

use fahp_core::case_study::{
    self, paper_study, reported_weights, REPORTED_GLOBAL, REPORTED_LAMBDA, ROOT_ID,
};
use fahp_core::solver::{lattice_round, oracle_solve_with, solve_many, OracleConfig};
use fahp_core::{
    compose_global, compose_hierarchy, lambda_at, rank, solve_fpp, Execution, SolverConfig,
};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::results::{solve_study, ResultsDocument, ToolInfo};
use crate::study::{load_study, Study};
use crate::table::{delta, num, Align, Table};

/// Largest λ and weight gap accepted between the solver and the oracle.
pub const ORACLE_TOL: f64 = 0.03;
/// Tolerance of the published-product composition check.
pub const COMPOSITION_TOL: f64 = 5e-6;
/// Differences up to this size are rounding of the printed values.
pub const PRINT_TOL: f64 = 5e-6;

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

pub struct SolveArgs<'a> {
    pub study: &'a Path,
    pub out: Option<&'a Path>,
    pub tol: Option<f64>,
    pub timestamp: bool,
}

pub fn cmd_solve(args: &SolveArgs) -> Result<(ResultsDocument, String), CliError> {
    let mut study = load_study(args.study)?;
    if let Some(tol) = args.tol {
        study.config.bisection_tol = tol;
        study.config.validate().map_err(|source| CliError::Solver {
            parent: "<config>".into(),
            source,
        })?;
    }
    let mut doc = solve_study(&study, Execution::default())?;
    if args.timestamp {
        doc.stamp_now();
    }
    if let Some(out) = args.out {
        write_file(out, &doc.to_json())?;
    }
    let report = solve_report(&study, &doc);
    Ok((doc, report))
}

/// Per-block tables (challenge, code, weight, rank, λ) and the global ranking.
pub fn solve_report(study: &Study, doc: &ResultsDocument) -> String {
    let root = study.hierarchy.root();
    let label = |id: &str| root.find(id).map(|n| n.label.clone()).unwrap_or_default();
    let mut out = format!("Study: {}\n", doc.study);
    for b in &doc.blocks {
        let status = match (b.consistent, b.clamped) {
            (_, true) => "consistent, lambda at cap",
            (true, false) => "consistent",
            (false, _) => "inconsistent",
        };
        out.push_str(&format!(
            "\nBlock {}: {} ({status})\n",
            b.parent,
            label(&b.parent)
        ));
        let ranks = rank(&b.weights);
        let mut t = Table::new(&[
            ("challenge", Align::Left),
            ("code", Align::Left),
            ("weight", Align::Right),
            ("rank", Align::Right),
            ("λ", Align::Right),
        ]);
        for (i, (id, w)) in b.weights.iter().enumerate() {
            let lam = if i == 0 { num(b.lambda) } else { String::new() };
            t.row(vec![
                label(id),
                id.clone(),
                num(*w),
                ranks[id].to_string(),
                lam,
            ]);
        }
        out.push_str(&t.render());
    }
    out.push_str("\nGlobal ranking\n");
    let mut t = Table::new(&[
        ("challenge", Align::Left),
        ("code", Align::Left),
        ("category", Align::Left),
        ("category weight", Align::Right),
        ("local weight", Align::Right),
        ("global weight", Align::Right),
        ("rank", Align::Right),
    ]);
    for r in &doc.ranking {
        t.row(vec![
            label(&r.leaf),
            r.leaf.clone(),
            r.category.clone(),
            num(r.category_weight),
            num(r.local_weight),
            num(r.global_weight),
            r.rank.to_string(),
        ]);
    }
    out.push_str(&t.render());
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueRow {
    pub block: String,
    pub id: String,
    pub published: f64,
    pub computed: f64,
    pub delta: f64,
}

impl ValueRow {
    fn new(block: &str, id: &str, published: f64, computed: f64) -> Self {
        ValueRow {
            block: block.to_string(),
            id: id.to_string(),
            published,
            computed,
            delta: computed - published,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaRow {
    pub block: String,
    pub published: f64,
    pub computed: f64,
    pub delta: f64,
    pub sign_agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalRow {
    pub leaf: String,
    pub published: f64,
    pub computed: f64,
    pub delta: f64,
    pub published_rank: usize,
    pub computed_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproduceReport {
    pub tool: ToolInfo,
    pub config: SolverConfig,
    /// Σw of each solved block.
    pub block_sums: IndexMap<String, f64>,
    pub weights: Vec<ValueRow>,
    pub lambdas: Vec<LambdaRow>,
    /// Published block weights recomposed, against the published globals.
    pub composition: Vec<GlobalRow>,
    pub composition_holds: bool,
    /// The solver's own global ranking against the published one.
    pub solver_ranking: Vec<GlobalRow>,
}

pub fn reproduce_paper() -> Result<ReproduceReport, CliError> {
    let h = paper_study();
    let cfg = SolverConfig::default();
    let matrices: Vec<_> = h.matrices().values().cloned().collect();
    let solved = solve_many(&matrices, &cfg, Execution::default());
    let published = reported_weights();
    let published_lambda: IndexMap<&str, f64> = REPORTED_LAMBDA.iter().copied().collect();

    let mut block_sums = IndexMap::new();
    let mut weights = Vec::new();
    let mut lambdas = Vec::new();
    let mut local = IndexMap::new();
    for (m, r) in matrices.iter().zip(solved) {
        let parent = m.parent();
        let r = r.map_err(|e| CliError::Internal(format!("block {parent:?}: {e}")))?;
        block_sums.insert(parent.to_string(), r.weights.values().sum());
        for (id, &w) in &r.weights {
            weights.push(ValueRow::new(parent, id, published[parent][id], w));
        }
        let pl = published_lambda[parent];
        lambdas.push(LambdaRow {
            block: parent.to_string(),
            published: pl,
            computed: r.lambda,
            delta: r.lambda - pl,
            sign_agrees: (pl >= 0.0) == (r.lambda >= 0.0),
        });
        local.insert(parent.to_string(), r.weights);
    }

    let mut blocks = published.clone();
    let categories = blocks
        .shift_remove(ROOT_ID)
        .ok_or_else(|| CliError::Internal("published root block missing".into()))?;
    let recomposed =
        compose_global(&categories, &blocks).map_err(|e| CliError::Internal(e.to_string()))?;
    let ours = compose_hierarchy(&h, &local).map_err(|e| CliError::Internal(e.to_string()))?;

    let mut composition = Vec::new();
    let mut solver_ranking = Vec::new();
    let mut holds = true;
    for &(leaf, pw, pr) in REPORTED_GLOBAL.iter() {
        let rc = recomposed
            .row(leaf)
            .ok_or_else(|| CliError::Internal(format!("leaf {leaf} missing from recomposition")))?;
        holds &= (rc.global_weight - pw).abs() <= COMPOSITION_TOL && rc.rank == pr;
        composition.push(GlobalRow {
            leaf: leaf.to_string(),
            published: pw,
            computed: rc.global_weight,
            delta: rc.global_weight - pw,
            published_rank: pr,
            computed_rank: rc.rank,
        });
        let oc = ours.row(leaf).ok_or_else(|| {
            CliError::Internal(format!("leaf {leaf} missing from solver ranking"))
        })?;
        solver_ranking.push(GlobalRow {
            leaf: leaf.to_string(),
            published: pw,
            computed: oc.global_weight,
            delta: oc.global_weight - pw,
            published_rank: pr,
            computed_rank: oc.rank,
        });
    }
    composition.sort_by_key(|r| r.published_rank);
    solver_ranking.sort_by_key(|r| r.published_rank);

    Ok(ReproduceReport {
        tool: ToolInfo::current(),
        config: cfg,
        block_sums,
        weights,
        lambdas,
        composition,
        composition_holds: holds,
        solver_ranking,
    })
}

fn flag(d: f64) -> String {
    if d.abs() > PRINT_TOL {
        "deviates".into()
    } else {
        String::new()
    }
}

pub fn reproduce_text(r: &ReproduceReport) -> String {
    let label = |id: &str| {
        case_study::root_node()
            .find(id)
            .map(|n| n.label.clone())
            .unwrap_or_default()
    };
    let mut out = String::from("Block weights: published vs solved from the published matrices\n");
    let mut t = Table::new(&[
        ("block", Align::Left),
        ("challenge", Align::Left),
        ("code", Align::Left),
        ("published", Align::Right),
        ("computed", Align::Right),
        ("delta", Align::Right),
        ("", Align::Left),
    ]);
    for w in &r.weights {
        t.row(vec![
            w.block.clone(),
            label(&w.id),
            w.id.clone(),
            num(w.published),
            num(w.computed),
            delta(w.delta),
            flag(w.delta),
        ]);
    }
    out.push_str(&t.render());
    for (b, s) in &r.block_sums {
        out.push_str(&format!("sum of weights in {b}: {s:.12}\n"));
    }

    out.push_str("\nBlock lambda\n");
    let mut t = Table::new(&[
        ("block", Align::Left),
        ("published", Align::Right),
        ("computed", Align::Right),
        ("delta", Align::Right),
        ("sign", Align::Left),
        ("", Align::Left),
    ]);
    for l in &r.lambdas {
        let sign = if l.sign_agrees { "agrees" } else { "differs" };
        t.row(vec![
            l.block.clone(),
            num(l.published),
            num(l.computed),
            delta(l.delta),
            sign.into(),
            flag(l.delta),
        ]);
    }
    out.push_str(&t.render());

    let global_table = |rows: &[crate::commands::GlobalRow], title: &str| {
        let mut s = format!("\n{title}\n");
        let mut t = Table::new(&[
            ("challenge", Align::Left),
            ("code", Align::Left),
            ("published", Align::Right),
            ("computed", Align::Right),
            ("delta", Align::Right),
            ("published rank", Align::Right),
            ("computed rank", Align::Right),
        ]);
        for g in rows {
            t.row(vec![
                label(&g.leaf),
                g.leaf.clone(),
                num(g.published),
                num(g.computed),
                delta(g.delta),
                g.published_rank.to_string(),
                g.computed_rank.to_string(),
            ]);
        }
        s.push_str(&t.render());
        s
    };
    out.push_str(&global_table(
        &r.composition,
        "Global weights recomposed from the published block weights",
    ));
    out.push_str(&format!(
        "composition identity within {COMPOSITION_TOL:e}: {}\n",
        if r.composition_holds {
            "holds"
        } else {
            "FAILS"
        }
    ));
    out.push_str(&global_table(
        &r.solver_ranking,
        "Global weights composed from the solved block weights",
    ));
    out
}

pub fn cmd_reproduce(out: Option<&Path>) -> Result<(ReproduceReport, String), CliError> {
    let report = reproduce_paper()?;
    if let Some(path) = out {
        let mut json =
            serde_json::to_string_pretty(&report).map_err(|e| CliError::Internal(e.to_string()))?;
        json.push('\n');
        write_file(path, &json)?;
    }
    let text = reproduce_text(&report);
    Ok((report, text))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub block: String,
    pub items: usize,
    pub step: f64,
    pub lambda_solver: f64,
    pub lambda_oracle: f64,
    /// How far below the solver the oracle may land: the larger of
    /// [`ORACLE_TOL`] and the λ lost by rounding the solver's weights onto
    /// the lattice.
    pub allowed_below: f64,
    pub max_weight_delta: f64,
    pub within: bool,
}

pub fn oracle_rows(study: &Study, step: Option<f64>) -> Result<Vec<OracleRow>, CliError> {
    let max = fahp_core::solver::oracle::MAX_ITEMS;
    for (parent, m) in study.hierarchy.matrices() {
        if m.len() > max {
            return Err(CliError::Usage(format!(
                "block {parent:?} has {} items; the oracle handles at most {max}",
                m.len()
            )));
        }
    }
    let mut rows = Vec::new();
    for (parent, m) in study.hierarchy.matrices() {
        let step = step.unwrap_or(if m.len() >= 4 { 0.01 } else { 0.005 });
        let solver_err = |source| CliError::Solver {
            parent: parent.clone(),
            source,
        };
        let s = solve_fpp(m, &study.config).map_err(solver_err)?;
        let o = oracle_solve_with(m, &OracleConfig::new(step)).map_err(solver_err)?;
        let ws = s.weight_vec();
        let snapped = lattice_round(&ws, step).map_err(solver_err)?;
        let gap = s.lambda - lambda_at(m, &snapped).map_err(solver_err)?;
        let allowed_below = ORACLE_TOL.max(gap);
        let dw = ws
            .iter()
            .zip(o.weight_vec())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let dl = o.lambda - s.lambda;
        let within = dl <= ORACLE_TOL && -dl <= allowed_below + 1e-12 && dw <= ORACLE_TOL;
        rows.push(OracleRow {
            block: parent.clone(),
            items: m.len(),
            step,
            lambda_solver: s.lambda,
            lambda_oracle: o.lambda,
            allowed_below,
            max_weight_delta: dw,
            within,
        });
    }
    Ok(rows)
}

pub fn oracle_text(rows: &[OracleRow]) -> String {
    let mut t = Table::new(&[
        ("block", Align::Left),
        ("n", Align::Right),
        ("step", Align::Right),
        ("λ solver", Align::Right),
        ("λ oracle", Align::Right),
        ("delta", Align::Right),
        ("allowed", Align::Right),
        ("max |Δw|", Align::Right),
        ("status", Align::Left),
    ]);
    for r in rows {
        t.row(vec![
            r.block.clone(),
            r.items.to_string(),
            format!("{}", r.step),
            num(r.lambda_solver),
            num(r.lambda_oracle),
            delta(r.lambda_oracle - r.lambda_solver),
            format!("-{}/+{}", num(r.allowed_below), num(ORACLE_TOL)),
            num(r.max_weight_delta),
            if r.within { "ok" } else { "BREACH" }.into(),
        ]);
    }
    t.render()
}

pub fn cmd_oracle(study: &Path, step: Option<f64>) -> Result<(Vec<OracleRow>, String), CliError> {
    let study = load_study(study)?;
    let rows = oracle_rows(&study, step)?;
    let text = oracle_text(&rows);
    Ok((rows, text))
}
