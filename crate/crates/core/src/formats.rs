//! On-disk interchange formats.
//!
//! - image manifest CSV: `id,image_path,mask_path[,group]`
//! - scores: JSON Lines, one object per image
//! - population CSV: any table with `id` and `group` columns
//! - pair manifest CSV: `pair_id,id_top,id_bottom`
//! - outcomes CSV: `pair_id,winner_id`
//! - ratings CSV: `id,group,rating,matches`
//! - predictions CSV: `id,predicted,actual`

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::audit::ScoreRecord;
use crate::disagg::PredictionRecord;
use crate::elo::{EloState, OutcomeRecord, Pair, PairManifest};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("line {line}: invalid score record: {source}")]
    Json {
        line: usize,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Invalid(String),
}

/// One row of the image manifest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestRow {
    pub id: String,
    pub image_path: PathBuf,
    pub mask_path: PathBuf,
    pub group: Option<String>,
}

/// Parse `id,image_path,mask_path[,group]`; the header is required and ids
/// must be unique.
pub fn read_manifest(path: &Path) -> Result<Vec<ManifestRow>, FormatError> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let cols: Vec<&str> = headers.iter().collect();
    let expected = ["id", "image_path", "mask_path"];
    if cols.len() < 3 || cols[..3] != expected {
        return Err(FormatError::Invalid(format!(
            "manifest header must start with id,image_path,mask_path (got {})",
            cols.join(",")
        )));
    }
    let has_group = cols.len() >= 4 && cols[3] == "group";
    let mut rows = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let id = record
            .get(0)
            .ok_or_else(|| FormatError::Invalid(format!("row {}: missing id", i + 2)))?
            .to_string();
        if !seen.insert(id.clone()) {
            return Err(FormatError::Invalid(format!("duplicate manifest id: {id}")));
        }
        rows.push(ManifestRow {
            id,
            image_path: PathBuf::from(record.get(1).unwrap_or_default()),
            mask_path: PathBuf::from(record.get(2).unwrap_or_default()),
            group: if has_group {
                record
                    .get(3)
                    .filter(|g| !g.is_empty())
                    .map(str::to_string)
            } else {
                None
            },
        });
    }
    Ok(rows)
}

/// Serialize score records as JSON Lines in input order.
pub fn scores_to_jsonl(records: &[ScoreRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("score record serializes"));
        out.push('\n');
    }
    out
}

pub fn write_scores(path: &Path, records: &[ScoreRecord]) -> Result<(), FormatError> {
    fs::write(path, scores_to_jsonl(records))?;
    Ok(())
}

pub fn read_scores(path: &Path) -> Result<Vec<ScoreRecord>, FormatError> {
    let body = fs::read_to_string(path)?;
    parse_scores(&body)
}

pub fn parse_scores(body: &str) -> Result<Vec<ScoreRecord>, FormatError> {
    let mut records = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, line) in body.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: ScoreRecord =
            serde_json::from_str(line).map_err(|source| FormatError::Json {
                line: i + 1,
                source,
            })?;
        if !seen.insert(record.id.clone()) {
            return Err(FormatError::Invalid(format!(
                "duplicate score id: {}",
                record.id
            )));
        }
        records.push(record);
    }
    Ok(records)
}

/// Read (id, group) rows from any CSV carrying `id` and `group` columns.
pub fn read_population(path: &Path) -> Result<Vec<(String, String)>, FormatError> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let id_col = headers
        .iter()
        .position(|h| h == "id")
        .ok_or_else(|| FormatError::Invalid("population csv needs an id column".into()))?;
    let group_col = headers
        .iter()
        .position(|h| h == "group")
        .ok_or_else(|| FormatError::Invalid("population csv needs a group column".into()))?;
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let id = record.get(id_col).unwrap_or_default().to_string();
        let group = record.get(group_col).unwrap_or_default().to_string();
        if id.is_empty() || group.is_empty() {
            return Err(FormatError::Invalid(
                "population rows need non-empty id and group".into(),
            ));
        }
        rows.push((id, group));
    }
    Ok(rows)
}

pub fn write_pair_manifest(path: &Path, manifest: &PairManifest) -> Result<(), FormatError> {
    let mut out = String::from("pair_id,id_top,id_bottom\n");
    for p in &manifest.pairs {
        out.push_str(&format!("{},{},{}\n", p.pair_id, p.top, p.bottom));
    }
    fs::write(path, out)?;
    Ok(())
}

/// Read a pair manifest back. Sampling metadata is not part of the CSV
/// schema, so `seed` and `per_combo` are zero on the parsed value.
pub fn read_pair_manifest(path: &Path) -> Result<PairManifest, FormatError> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let cols: Vec<&str> = headers.iter().collect();
    if cols != ["pair_id", "id_top", "id_bottom"] {
        return Err(FormatError::Invalid(format!(
            "pair manifest header must be pair_id,id_top,id_bottom (got {})",
            cols.join(",")
        )));
    }
    let mut pairs = Vec::new();
    for record in reader.records() {
        let record = record?;
        let pair_id: u64 = record
            .get(0)
            .unwrap_or_default()
            .parse()
            .map_err(|_| FormatError::Invalid(format!("bad pair_id: {record:?}")))?;
        let top = record.get(1).unwrap_or_default().to_string();
        let bottom = record.get(2).unwrap_or_default().to_string();
        if top.is_empty() || bottom.is_empty() || top == bottom {
            return Err(FormatError::Invalid(format!(
                "pair {pair_id} must name two distinct ids"
            )));
        }
        pairs.push(Pair { pair_id, top, bottom });
    }
    Ok(PairManifest {
        pairs,
        seed: 0,
        per_combo: 0,
    })
}

pub fn write_outcomes(path: &Path, outcomes: &[OutcomeRecord]) -> Result<(), FormatError> {
    let mut out = String::from("pair_id,winner_id\n");
    for o in outcomes {
        out.push_str(&format!("{},{}\n", o.pair_id, o.winner));
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn read_outcomes(path: &Path) -> Result<Vec<OutcomeRecord>, FormatError> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let cols: Vec<&str> = headers.iter().collect();
    if cols != ["pair_id", "winner_id"] {
        return Err(FormatError::Invalid(format!(
            "outcomes header must be pair_id,winner_id (got {})",
            cols.join(",")
        )));
    }
    let mut outcomes = Vec::new();
    for record in reader.records() {
        let record = record?;
        let pair_id: u64 = record
            .get(0)
            .unwrap_or_default()
            .parse()
            .map_err(|_| FormatError::Invalid(format!("bad pair_id: {record:?}")))?;
        outcomes.push(OutcomeRecord {
            pair_id,
            winner: record.get(1).unwrap_or_default().to_string(),
        });
    }
    Ok(outcomes)
}

/// Write `id,group,rating,matches` sorted by id. Ids without a group label
/// get an empty group field.
pub fn write_ratings(
    path: &Path,
    state: &EloState,
    groups: &BTreeMap<String, String>,
) -> Result<(), FormatError> {
    let mut out = String::from("id,group,rating,matches\n");
    for (id, rating) in &state.ratings {
        let group = groups.get(id).map(String::as_str).unwrap_or("");
        let matches = state.match_count.get(id).copied().unwrap_or(0);
        out.push_str(&format!("{id},{group},{rating:.4},{matches}\n"));
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn read_predictions(path: &Path) -> Result<Vec<PredictionRecord>, FormatError> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let cols: Vec<&str> = headers.iter().collect();
    if cols != ["id", "predicted", "actual"] {
        return Err(FormatError::Invalid(format!(
            "predictions header must be id,predicted,actual (got {})",
            cols.join(",")
        )));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        rows.push(PredictionRecord {
            id: record.get(0).unwrap_or_default().to_string(),
            predicted: record.get(1).unwrap_or_default().to_string(),
            actual: record.get(2).unwrap_or_default().to_string(),
        });
    }
    Ok(rows)
}

/// Column-oriented read for the stats subcommand: group label -> values.
pub fn read_grouped_values(
    path: &Path,
    value_column: &str,
    group_column: &str,
) -> Result<BTreeMap<String, Vec<f64>>, FormatError> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let value_col = headers
        .iter()
        .position(|h| h == value_column)
        .ok_or_else(|| FormatError::Invalid(format!("no column named {value_column}")))?;
    let group_col = headers
        .iter()
        .position(|h| h == group_column)
        .ok_or_else(|| FormatError::Invalid(format!("no column named {group_column}")))?;
    let mut out: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let raw = record.get(value_col).unwrap_or_default();
        let value: f64 = raw.parse().map_err(|_| {
            FormatError::Invalid(format!("row {}: {raw:?} is not a number", i + 2))
        })?;
        let group = record.get(group_col).unwrap_or_default().to_string();
        out.entry(group).or_default().push(value);
    }
    Ok(out)
}
