//! Dataset-level bias reports: quadrant cross-tabulations and score
//! histograms over a batch of per-image scores.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extract::SkinColorScore;
use crate::hist::{histogram, Histogram};

#[derive(Debug, Error, PartialEq)]
pub enum AuditError {
    #[error("no records to aggregate")]
    EmptyInput,
}

/// Category boundaries; a score is Light when L* is strictly over
/// `tone` and Yellow when h* is strictly over `hue`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CategoryThresholds {
    pub tone: f64,
    pub hue: f64,
}

impl Default for CategoryThresholds {
    fn default() -> Self {
        Self { tone: 60.0, hue: 55.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tone {
    Light,
    Dark,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hue {
    Red,
    Yellow,
}

/// One of the four tone x hue quadrants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ToneHueCategory {
    pub tone: Tone,
    pub hue: Hue,
}

impl ToneHueCategory {
    pub fn label(&self) -> &'static str {
        match (self.tone, self.hue) {
            (Tone::Light, Hue::Red) => "light_red",
            (Tone::Light, Hue::Yellow) => "light_yellow",
            (Tone::Dark, Hue::Red) => "dark_red",
            (Tone::Dark, Hue::Yellow) => "dark_yellow",
        }
    }
}

/// A scored image plus optional group label for per-group breakdowns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRecord {
    pub id: String,
    #[serde(flatten)]
    pub score: SkinColorScore,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub group: Option<String>,
}

/// Quadrant assignment from raw score values. Boundaries fall to Dark and
/// Red (strict "over"); an undefined hue counts as Red.
pub fn categorize_values(
    l_star: f64,
    hue_deg: Option<f64>,
    t: &CategoryThresholds,
) -> ToneHueCategory {
    ToneHueCategory {
        tone: if l_star > t.tone { Tone::Light } else { Tone::Dark },
        hue: match hue_deg {
            Some(h) if h > t.hue => Hue::Yellow,
            _ => Hue::Red,
        },
    }
}

pub fn categorize(score: &SkinColorScore, t: &CategoryThresholds) -> ToneHueCategory {
    categorize_values(score.l_star, score.hue_deg, t)
}

/// Counts and percentages over the 2x2 quadrants with marginals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossTab {
    pub total: u64,
    pub light_red: u64,
    pub light_yellow: u64,
    pub dark_red: u64,
    pub dark_yellow: u64,
}

impl CrossTab {
    pub fn count(&self, cat: ToneHueCategory) -> u64 {
        match (cat.tone, cat.hue) {
            (Tone::Light, Hue::Red) => self.light_red,
            (Tone::Light, Hue::Yellow) => self.light_yellow,
            (Tone::Dark, Hue::Red) => self.dark_red,
            (Tone::Dark, Hue::Yellow) => self.dark_yellow,
        }
    }

    pub fn percent(&self, cat: ToneHueCategory) -> f64 {
        100.0 * self.count(cat) as f64 / self.total as f64
    }

    pub fn tone_total(&self, tone: Tone) -> u64 {
        match tone {
            Tone::Light => self.light_red + self.light_yellow,
            Tone::Dark => self.dark_red + self.dark_yellow,
        }
    }

    pub fn hue_total(&self, hue: Hue) -> u64 {
        match hue {
            Hue::Red => self.light_red + self.dark_red,
            Hue::Yellow => self.light_yellow + self.dark_yellow,
        }
    }

    pub fn tone_percent(&self, tone: Tone) -> f64 {
        100.0 * self.tone_total(tone) as f64 / self.total as f64
    }

    pub fn hue_percent(&self, hue: Hue) -> f64 {
        100.0 * self.hue_total(hue) as f64 / self.total as f64
    }
}

/// Count each record's quadrant.
pub fn cross_tabulate(
    records: &[ScoreRecord],
    t: &CategoryThresholds,
) -> Result<CrossTab, AuditError> {
    if records.is_empty() {
        return Err(AuditError::EmptyInput);
    }
    let mut tab = CrossTab {
        total: records.len() as u64,
        light_red: 0,
        light_yellow: 0,
        dark_red: 0,
        dark_yellow: 0,
    };
    for r in records {
        match categorize(&r.score, t) {
            ToneHueCategory { tone: Tone::Light, hue: Hue::Red } => tab.light_red += 1,
            ToneHueCategory { tone: Tone::Light, hue: Hue::Yellow } => tab.light_yellow += 1,
            ToneHueCategory { tone: Tone::Dark, hue: Hue::Red } => tab.dark_red += 1,
            ToneHueCategory { tone: Tone::Dark, hue: Hue::Yellow } => tab.dark_yellow += 1,
        }
    }
    Ok(tab)
}

/// One cross-tab per group label; records without a label are skipped.
pub fn group_cross_tabs(
    records: &[ScoreRecord],
    t: &CategoryThresholds,
) -> BTreeMap<String, CrossTab> {
    let mut by_group: BTreeMap<String, Vec<ScoreRecord>> = BTreeMap::new();
    for r in records {
        if let Some(group) = &r.group {
            by_group.entry(group.clone()).or_default().push(r.clone());
        }
    }
    by_group
        .into_iter()
        .map(|(g, rs)| {
            let tab = cross_tabulate(&rs, t).expect("group bucket is non-empty");
            (g, tab)
        })
        .collect()
}

/// Score dimension to histogram or plot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScoreField {
    LStar,
    HueDeg,
    ItaDeg,
}

impl ScoreField {
    pub const ALL: [ScoreField; 3] = [ScoreField::LStar, ScoreField::HueDeg, ScoreField::ItaDeg];

    pub fn name(&self) -> &'static str {
        match self {
            ScoreField::LStar => "l_star",
            ScoreField::HueDeg => "hue_deg",
            ScoreField::ItaDeg => "ita_deg",
        }
    }

    pub fn of(&self, score: &SkinColorScore) -> Option<f64> {
        match self {
            ScoreField::LStar => Some(score.l_star),
            ScoreField::HueDeg => score.hue_deg,
            ScoreField::ItaDeg => score.ita_deg,
        }
    }
}

/// Equal-width histogram of one score field over a record batch. Records
/// where the field is undefined are skipped.
pub fn histogram_report(
    records: &[ScoreRecord],
    field: ScoreField,
    bins: usize,
) -> Result<Histogram, AuditError> {
    let values: Vec<f64> = records.iter().filter_map(|r| field.of(&r.score)).collect();
    if values.is_empty() {
        return Err(AuditError::EmptyInput);
    }
    Ok(histogram(&values, bins))
}

#[cfg(test)]
pub(crate) fn record_from_values(id: &str, l_star: f64, hue_deg: f64) -> ScoreRecord {
    record_with_group(id, l_star, hue_deg, None)
}

#[cfg(test)]
pub(crate) fn record_with_group(
    id: &str,
    l_star: f64,
    hue_deg: f64,
    group: Option<&str>,
) -> ScoreRecord {
    use crate::extract::ClusterSummary;
    let cluster = ClusterSummary {
        pixel_count: 1,
        mode_l: l_star,
        mode_h: Some(hue_deg),
        mode_b: 15.0,
        centroid: crate::color::CieLab::new(l_star, 10.0, 15.0),
        kept: true,
    };
    ScoreRecord {
        id: id.to_string(),
        score: SkinColorScore {
            l_star,
            hue_deg: Some(hue_deg),
            ita_deg: Some(30.0),
            skin_pixel_count: 1,
            clusters: vec![cluster],
        },
        group: group.map(str::to_string),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn categorize_examples() {
        let t = CategoryThresholds::default();
        let cat = categorize_values(70.0, Some(40.0), &t);
        assert_eq!((cat.tone, cat.hue), (Tone::Light, Hue::Red));
        // Exact threshold values fall to Dark / Red.
        let cat = categorize_values(60.0, Some(55.0), &t);
        assert_eq!((cat.tone, cat.hue), (Tone::Dark, Hue::Red));
        let cat = categorize_values(50.0, Some(70.0), &t);
        assert_eq!((cat.tone, cat.hue), (Tone::Dark, Hue::Yellow));
        // Achromatic scores land on the red side.
        let cat = categorize_values(80.0, None, &t);
        assert_eq!((cat.tone, cat.hue), (Tone::Light, Hue::Red));
    }

    #[test]
    fn quadrant_fixture_splits_evenly() {
        let t = CategoryThresholds::default();
        let records = vec![
            record_from_values("lr", 75.0, 40.0),
            record_from_values("ly", 75.0, 60.0),
            record_from_values("dr", 45.0, 40.0),
            record_from_values("dy", 45.0, 60.0),
        ];
        let tab = cross_tabulate(&records, &t).unwrap();
        assert_eq!(tab.total, 4);
        for cat in [
            ToneHueCategory { tone: Tone::Light, hue: Hue::Red },
            ToneHueCategory { tone: Tone::Light, hue: Hue::Yellow },
            ToneHueCategory { tone: Tone::Dark, hue: Hue::Red },
            ToneHueCategory { tone: Tone::Dark, hue: Hue::Yellow },
        ] {
            assert_eq!(tab.count(cat), 1);
            assert!((tab.percent(cat) - 25.0).abs() < 1e-9);
        }
        assert!((tab.tone_percent(Tone::Light) - 50.0).abs() < 1e-9);
        assert!((tab.hue_percent(Hue::Red) - 50.0).abs() < 1e-9);
    }

    #[test]
    fn skewed_fixture_counts_directly() {
        let t = CategoryThresholds::default();
        let mut records = vec![
            record_from_values("a", 75.0, 40.0),
            record_from_values("b", 70.0, 30.0),
            record_from_values("c", 65.0, 50.0),
        ];
        records.push(record_from_values("d", 45.0, 60.0));
        let tab = cross_tabulate(&records, &t).unwrap();
        assert!((tab.percent(ToneHueCategory { tone: Tone::Light, hue: Hue::Red }) - 75.0).abs() < 1e-9);
        assert_eq!(tab.light_yellow, 0);
        assert_eq!(tab.dark_red, 0);
        assert!((tab.percent(ToneHueCategory { tone: Tone::Dark, hue: Hue::Yellow }) - 25.0).abs() < 1e-9);
        let pct_sum = tab.percent(ToneHueCategory { tone: Tone::Light, hue: Hue::Red })
            + tab.percent(ToneHueCategory { tone: Tone::Light, hue: Hue::Yellow })
            + tab.percent(ToneHueCategory { tone: Tone::Dark, hue: Hue::Red })
            + tab.percent(ToneHueCategory { tone: Tone::Dark, hue: Hue::Yellow });
        assert!((pct_sum - 100.0).abs() < 1e-9);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert_eq!(
            cross_tabulate(&[], &CategoryThresholds::default()).unwrap_err(),
            AuditError::EmptyInput
        );
    }

    #[test]
    fn raising_tone_threshold_never_adds_light() {
        let records: Vec<ScoreRecord> = (0..60)
            .map(|i| record_from_values(&format!("r{i}"), f64::from(i) * 1.7, 40.0))
            .collect();
        let mut prev = u64::MAX;
        for step in 0..25 {
            let t = CategoryThresholds { tone: f64::from(step) * 4.0, hue: 55.0 };
            let light = cross_tabulate(&records, &t).unwrap().tone_total(Tone::Light);
            assert!(light <= prev);
            prev = light;
        }
    }

    #[test]
    fn relabeling_ids_leaves_crosstab_unchanged() {
        let t = CategoryThresholds::default();
        let records = vec![
            record_from_values("a", 75.0, 40.0),
            record_from_values("b", 45.0, 60.0),
        ];
        let renamed: Vec<ScoreRecord> = records
            .iter()
            .map(|r| ScoreRecord {
                id: format!("zz_{}", r.id),
                ..r.clone()
            })
            .collect();
        assert_eq!(
            cross_tabulate(&records, &t).unwrap(),
            cross_tabulate(&renamed, &t).unwrap()
        );
    }

    #[test]
    fn group_breakdown_sums_to_global() {
        let t = CategoryThresholds::default();
        let records = vec![
            record_with_group("a", 75.0, 40.0, Some("x")),
            record_with_group("b", 45.0, 60.0, Some("x")),
            record_with_group("c", 70.0, 70.0, Some("y")),
            record_with_group("d", 30.0, 20.0, Some("y")),
            record_with_group("e", 66.0, 55.5, Some("y")),
        ];
        let global = cross_tabulate(&records, &t).unwrap();
        let groups = group_cross_tabs(&records, &t);
        let sum = |f: fn(&CrossTab) -> u64| groups.values().map(f).sum::<u64>();
        assert_eq!(sum(|g| g.light_red), global.light_red);
        assert_eq!(sum(|g| g.light_yellow), global.light_yellow);
        assert_eq!(sum(|g| g.dark_red), global.dark_red);
        assert_eq!(sum(|g| g.dark_yellow), global.dark_yellow);
        assert_eq!(sum(|g| g.total), global.total);
    }

    #[test]
    fn histogram_report_evenly_spaced() {
        let records: Vec<ScoreRecord> = (0..20)
            .map(|i| record_from_values(&format!("r{i}"), f64::from(i), 40.0))
            .collect();
        let h = histogram_report(&records, ScoreField::LStar, 20).unwrap();
        assert!(h.counts.iter().all(|&c| c == 1));
        assert_eq!(h.total(), 20);
    }

    #[test]
    fn histogram_report_identical_values() {
        let records: Vec<ScoreRecord> = (0..5)
            .map(|i| record_from_values(&format!("r{i}"), 61.5, 40.0))
            .collect();
        let h = histogram_report(&records, ScoreField::LStar, 20).unwrap();
        assert_eq!(h.counts[0], 5);
        assert_eq!(h.counts.iter().filter(|&&c| c > 0).count(), 1);
    }

    #[test]
    fn histogram_report_gaussian_mode_near_mean() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let mean = 62.0;
        let records: Vec<ScoreRecord> = (0..4000)
            .map(|i| {
                // Box-Muller normal draw, sigma = 5.
                let u1: f64 = rng.random::<f64>().max(1e-12);
                let u2: f64 = rng.random();
                let z = (-2.0 * u1.ln()).sqrt()
                    * (2.0 * std::f64::consts::PI * u2).cos();
                record_from_values(&format!("r{i}"), mean + 5.0 * z, 40.0)
            })
            .collect();
        let h = histogram_report(&records, ScoreField::LStar, 20).unwrap();
        let mode_bin = (0..20).max_by_key(|&i| h.counts[i]).unwrap();
        let center = h.bin_center(mode_bin);
        assert!(
            (center - mean).abs() <= h.bin_width(),
            "mode center {center} vs mean {mean}"
        );
    }
}
