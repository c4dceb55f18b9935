//! Disaggregated accuracy: binary prediction accuracy broken down by skin
//! tone, skin hue, and their intersection, with optional positive/negative
//! class splits.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::audit::{categorize, CategoryThresholds, Hue, ScoreRecord, Tone, ToneHueCategory};

#[derive(Debug, Error, PartialEq)]
pub enum DisaggError {
    #[error("predictions reference {} ids with no score (first: {})", ids.len(), ids[0])]
    MissingScore { ids: Vec<String> },
    #[error("no records to disaggregate")]
    EmptyInput,
}

/// One model prediction against ground truth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub id: String,
    pub predicted: String,
    pub actual: String,
}

/// A prediction joined with its skin color quadrant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JoinedRecord {
    pub id: String,
    pub predicted: String,
    pub actual: String,
    pub category: ToneHueCategory,
}

impl JoinedRecord {
    pub fn correct(&self) -> bool {
        self.predicted == self.actual
    }
}

/// Inner join of predictions with scores by id; every prediction must have
/// a score.
pub fn join_scores(
    predictions: &[PredictionRecord],
    scores: &[ScoreRecord],
    t: &CategoryThresholds,
) -> Result<Vec<JoinedRecord>, DisaggError> {
    let by_id: BTreeMap<&str, &ScoreRecord> =
        scores.iter().map(|s| (s.id.as_str(), s)).collect();
    let mut missing: Vec<String> = predictions
        .iter()
        .filter(|p| !by_id.contains_key(p.id.as_str()))
        .map(|p| p.id.clone())
        .collect();
    if !missing.is_empty() {
        missing.sort();
        missing.dedup();
        return Err(DisaggError::MissingScore { ids: missing });
    }
    Ok(predictions
        .iter()
        .map(|p| JoinedRecord {
            id: p.id.clone(),
            predicted: p.predicted.clone(),
            actual: p.actual.clone(),
            category: categorize(&by_id[p.id.as_str()].score, t),
        })
        .collect())
}

/// Correct/total of one cell; accuracy in percent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub correct: u64,
    pub total: u64,
}

impl Cell {
    pub fn accuracy(&self) -> f64 {
        100.0 * self.correct as f64 / self.total as f64
    }
}

/// Accuracy cells over one record set. Cells with no samples are absent
/// rather than reported as 0%.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracyBreakdown {
    pub overall: Cell,
    pub by_tone: BTreeMap<String, Cell>,
    pub by_hue: BTreeMap<String, Cell>,
    pub by_intersection: BTreeMap<String, Cell>,
}

fn breakdown(records: &[&JoinedRecord]) -> AccuracyBreakdown {
    let mut overall = Cell { correct: 0, total: 0 };
    let mut by_tone: BTreeMap<String, Cell> = BTreeMap::new();
    let mut by_hue: BTreeMap<String, Cell> = BTreeMap::new();
    let mut by_intersection: BTreeMap<String, Cell> = BTreeMap::new();
    for r in records {
        let hit = u64::from(r.correct());
        let tone = match r.category.tone {
            Tone::Light => "light",
            Tone::Dark => "dark",
        };
        let hue = match r.category.hue {
            Hue::Red => "red",
            Hue::Yellow => "yellow",
        };
        overall.total += 1;
        overall.correct += hit;
        for (map, key) in [
            (&mut by_tone, tone.to_string()),
            (&mut by_hue, hue.to_string()),
            (&mut by_intersection, r.category.label().to_string()),
        ] {
            let cell = map.entry(key).or_insert(Cell { correct: 0, total: 0 });
            cell.total += 1;
            cell.correct += hit;
        }
    }
    AccuracyBreakdown {
        overall,
        by_tone,
        by_hue,
        by_intersection,
    }
}

/// Full disaggregation result: an overall breakdown, plus positive and
/// negative class breakdowns when a split label is given.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisaggTable {
    pub all: AccuracyBreakdown,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub split_label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub positive: Option<AccuracyBreakdown>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub negative: Option<AccuracyBreakdown>,
}

/// Accuracy per tone, hue, and intersection cell. With `class_split`,
/// records whose true label equals the split label form the positive side.
pub fn disaggregate(
    joined: &[JoinedRecord],
    class_split: Option<&str>,
) -> Result<DisaggTable, DisaggError> {
    if joined.is_empty() {
        return Err(DisaggError::EmptyInput);
    }
    let everything: Vec<&JoinedRecord> = joined.iter().collect();
    let all = breakdown(&everything);
    let (split_label, positive, negative) = match class_split {
        None => (None, None, None),
        Some(label) => {
            let (pos, neg): (Vec<&JoinedRecord>, Vec<&JoinedRecord>) =
                joined.iter().partition(|r| r.actual == label);
            (
                Some(label.to_string()),
                (!pos.is_empty()).then(|| breakdown(&pos)),
                (!neg.is_empty()).then(|| breakdown(&neg)),
            )
        }
    };
    Ok(DisaggTable {
        all,
        split_label,
        positive,
        negative,
    })
}
