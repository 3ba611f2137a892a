//! CSV input for the survey commands.
//!
//! Ratings files have the header `item,expert,rating` and one row per
//! rating on the 0..=4 scale. Response files start with a row of item ids
//! followed by one numeric row per respondent.

use std::collections::HashMap;
use std::path::Path;

use fahp_core::survey::{cronbach_alpha, run_delphi, DelphiOutcome, DelphiRatings, ItemResponses};
use indexmap::IndexMap;

use crate::error::CliError;
use crate::table::{num, Align, Table};

const RATINGS_HEADER: [&str; 3] = ["item", "expert", "rating"];

fn reader(path: &Path) -> Result<csv::Reader<std::fs::File>, CliError> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_path(path)
        .map_err(|e| csv_error(path, 0, e))
}

fn csv_error(path: &Path, row: u64, e: csv::Error) -> CliError {
    match e.kind() {
        csv::ErrorKind::Io(_) => CliError::Read {
            path: path.to_path_buf(),
            source: std::io::Error::other(e.to_string()),
        },
        _ => CliError::Csv {
            path: path.to_path_buf(),
            row: e.position().map_or(row, |p| p.line()),
            message: e.to_string(),
        },
    }
}

fn bad_row(path: &Path, row: u64, message: impl Into<String>) -> CliError {
    CliError::Csv {
        path: path.to_path_buf(),
        row,
        message: message.into(),
    }
}

pub fn read_ratings(path: &Path) -> Result<DelphiRatings, CliError> {
    let mut rdr = reader(path)?;
    let mut items: IndexMap<String, HashMap<String, u8>> = IndexMap::new();
    let mut experts: IndexMap<String, ()> = IndexMap::new();
    let mut saw_header = false;
    for (i, rec) in rdr.records().enumerate() {
        let row = i as u64 + 1;
        let rec = rec.map_err(|e| csv_error(path, row, e))?;
        if !saw_header {
            if rec.iter().ne(RATINGS_HEADER) {
                return Err(bad_row(
                    path,
                    row,
                    "header must be exactly item,expert,rating",
                ));
            }
            saw_header = true;
            continue;
        }
        if rec.len() != 3 {
            return Err(bad_row(
                path,
                row,
                format!("expected 3 fields, got {}", rec.len()),
            ));
        }
        let (item, expert, rating) = (rec[0].trim(), rec[1].trim(), rec[2].trim());
        if item.is_empty() || expert.is_empty() {
            return Err(bad_row(path, row, "item and expert must be non-empty"));
        }
        let value: u8 = rating.parse().ok().filter(|v| *v <= 4).ok_or_else(|| {
            bad_row(
                path,
                row,
                format!("rating {rating:?} is not an integer in 0..=4"),
            )
        })?;
        experts.insert(expert.to_string(), ());
        let slot = items.entry(item.to_string()).or_default();
        if slot.insert(expert.to_string(), value).is_some() {
            return Err(bad_row(
                path,
                row,
                format!("expert {expert:?} rates item {item:?} twice"),
            ));
        }
    }
    if !saw_header {
        return Err(bad_row(path, 1, "file is empty"));
    }
    let expert_ids: Vec<String> = experts.into_keys().collect();
    let mut ratings = Vec::with_capacity(items.len());
    for (item, by_expert) in &items {
        let mut row = Vec::with_capacity(expert_ids.len());
        for e in &expert_ids {
            match by_expert.get(e) {
                Some(&v) => row.push(v),
                None => {
                    return Err(CliError::Usage(format!(
                        "{}: expert {e:?} has no rating for item {item:?}",
                        path.display()
                    )))
                }
            }
        }
        ratings.push(row);
    }
    Ok(DelphiRatings::new(
        items.into_keys().collect(),
        expert_ids,
        ratings,
    )?)
}

pub fn read_responses(path: &Path) -> Result<ItemResponses, CliError> {
    let mut rdr = reader(path)?;
    let mut items: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i as u64 + 1;
        let rec = rec.map_err(|e| csv_error(path, row, e))?;
        match &items {
            None => items = Some(rec.iter().map(|s| s.trim().to_string()).collect()),
            Some(ids) => {
                if rec.len() != ids.len() {
                    return Err(bad_row(
                        path,
                        row,
                        format!("expected {} values, got {}", ids.len(), rec.len()),
                    ));
                }
                let mut values = Vec::with_capacity(ids.len());
                for (col, cell) in rec.iter().enumerate() {
                    let v: f64 = cell.trim().parse().map_err(|_| {
                        bad_row(
                            path,
                            row,
                            format!(
                                "column {} ({:?}): {cell:?} is not a number",
                                col + 1,
                                ids[col]
                            ),
                        )
                    })?;
                    values.push(v);
                }
                rows.push(values);
            }
        }
    }
    let items = items.ok_or_else(|| bad_row(path, 1, "file is empty"))?;
    Ok(ItemResponses::new(items, rows)?)
}

pub fn cmd_delphi(
    paths: &[&Path],
    threshold: f64,
    rounds: Option<usize>,
) -> Result<(DelphiOutcome, String), CliError> {
    let k = rounds.unwrap_or(paths.len());
    if k == 0 || k > paths.len() {
        return Err(CliError::Usage(format!(
            "{k} rounds requested but {} ratings file(s) given",
            paths.len()
        )));
    }
    let data = paths[..k]
        .iter()
        .map(|p| read_ratings(p))
        .collect::<Result<Vec<_>, _>>()?;
    let outcome = run_delphi(&data, threshold)?;
    let text = delphi_text(&data, &outcome, threshold);
    Ok((outcome, text))
}

fn delphi_text(data: &[DelphiRatings], outcome: &DelphiOutcome, threshold: f64) -> String {
    let mut out = String::new();
    for (i, (round, r)) in outcome.rounds.iter().zip(data).enumerate() {
        out.push_str(&format!(
            "Round {}: {} items, {} experts, threshold {threshold}\n",
            i + 1,
            r.items().len(),
            r.experts().len()
        ));
        let mut t = Table::new(&[
            ("item", Align::Left),
            ("consensus", Align::Right),
            ("status", Align::Left),
        ]);
        for (item, c) in &round.consensus {
            let status = if round.accepted.contains(item) {
                "accepted"
            } else {
                "deferred"
            };
            t.row(vec![item.clone(), num(*c), status.into()]);
        }
        out.push_str(&t.render());
        out.push_str(&format!(
            "accepted {}, deferred {}\n\n",
            round.accepted.len(),
            round.deferred.len()
        ));
    }
    out.push_str(&format!(
        "Accepted ({}): {}\n",
        outcome.accepted.len(),
        outcome.accepted.join(", ")
    ));
    out.push_str(&format!(
        "Dropped ({}): {}\n",
        outcome.dropped.len(),
        outcome.dropped.join(", ")
    ));
    out
}

pub fn cmd_alpha(path: &Path) -> Result<(f64, String), CliError> {
    let x = read_responses(path)?;
    let alpha = cronbach_alpha(&x)?;
    let text = format!(
        "Cronbach's alpha: {}\nitems (k): {}\nrespondents (N): {}\n",
        num(alpha),
        x.items().len(),
        x.respondents()
    );
    Ok((alpha, text))
}
