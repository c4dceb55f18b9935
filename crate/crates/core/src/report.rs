//! Audit report assembly and file emission (versioned JSON, CSV table,
//! SVG charts). Output is byte-deterministic for a fixed input batch.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::audit::{
    cross_tabulate, group_cross_tabs, histogram_report, AuditError, CategoryThresholds, CrossTab,
    Hue, ScoreField, ScoreRecord, Tone, ToneHueCategory,
};
use crate::hist::Histogram;
use crate::svg;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("failed to write report file: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Audit(#[from] AuditError),
}

/// JSON-facing cross-tab with counts, percentages, and marginals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossTabReport {
    pub total: u64,
    pub counts: BTreeMap<String, u64>,
    pub percent: BTreeMap<String, f64>,
    pub tone_percent: BTreeMap<String, f64>,
    pub hue_percent: BTreeMap<String, f64>,
}

impl CrossTabReport {
    pub fn from_crosstab(tab: &CrossTab) -> Self {
        let mut counts = BTreeMap::new();
        let mut percent = BTreeMap::new();
        for tone in [Tone::Light, Tone::Dark] {
            for hue in [Hue::Red, Hue::Yellow] {
                let cat = ToneHueCategory { tone, hue };
                counts.insert(cat.label().to_string(), tab.count(cat));
                percent.insert(cat.label().to_string(), tab.percent(cat));
            }
        }
        let tone_percent = [
            ("light".to_string(), tab.tone_percent(Tone::Light)),
            ("dark".to_string(), tab.tone_percent(Tone::Dark)),
        ]
        .into();
        let hue_percent = [
            ("red".to_string(), tab.hue_percent(Hue::Red)),
            ("yellow".to_string(), tab.hue_percent(Hue::Yellow)),
        ]
        .into();
        Self {
            total: tab.total,
            counts,
            percent,
            tone_percent,
            hue_percent,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramSection {
    pub field: ScoreField,
    pub bins: usize,
    pub histogram: Histogram,
}

/// The full audit bundle backing `report.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub schema_version: u32,
    pub thresholds: CategoryThresholds,
    pub total: u64,
    pub crosstab: CrossTabReport,
    pub histograms: Vec<HistogramSection>,
    /// Per-group cross-tabs, present when records carry group labels.
    pub groups: BTreeMap<String, CrossTabReport>,
}

/// Cross-tabulate and histogram a record batch. Fields whose values are
/// all undefined are skipped rather than failing the report.
pub fn build_report(
    records: &[ScoreRecord],
    thresholds: &CategoryThresholds,
    bins: usize,
    fields: &[ScoreField],
) -> Result<AuditReport, AuditError> {
    let tab = cross_tabulate(records, thresholds)?;
    let mut histograms = Vec::new();
    for &field in fields {
        match histogram_report(records, field, bins) {
            Ok(histogram) => histograms.push(HistogramSection {
                field,
                bins,
                histogram,
            }),
            Err(AuditError::EmptyInput) => {}
        }
    }
    let groups = group_cross_tabs(records, thresholds)
        .iter()
        .map(|(g, t)| (g.clone(), CrossTabReport::from_crosstab(t)))
        .collect();
    Ok(AuditReport {
        schema_version: SCHEMA_VERSION,
        thresholds: *thresholds,
        total: tab.total,
        crosstab: CrossTabReport::from_crosstab(&tab),
        histograms,
        groups,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Svg,
}

impl ReportFormat {
    pub const ALL: [ReportFormat; 3] = [ReportFormat::Json, ReportFormat::Csv, ReportFormat::Svg];
}

/// Fixed-width text rendering of the percentage table, rows by hue and
/// columns by tone.
pub fn render_text_table(tab: &CrossTab) -> String {
    let lr = ToneHueCategory { tone: Tone::Light, hue: Hue::Red };
    let ly = ToneHueCategory { tone: Tone::Light, hue: Hue::Yellow };
    let dr = ToneHueCategory { tone: Tone::Dark, hue: Hue::Red };
    let dy = ToneHueCategory { tone: Tone::Dark, hue: Hue::Yellow };
    let mut out = String::new();
    out.push_str(&format!("{:<8}{:>8}{:>8}{:>8}\n", "", "light", "dark", "total"));
    out.push_str(&format!(
        "{:<8}{:>8.2}{:>8.2}{:>8.2}\n",
        "red",
        tab.percent(lr),
        tab.percent(dr),
        tab.hue_percent(Hue::Red)
    ));
    out.push_str(&format!(
        "{:<8}{:>8.2}{:>8.2}{:>8.2}\n",
        "yellow",
        tab.percent(ly),
        tab.percent(dy),
        tab.hue_percent(Hue::Yellow)
    ));
    out.push_str(&format!(
        "{:<8}{:>8.2}{:>8.2}{:>8.2}\n",
        "total",
        tab.tone_percent(Tone::Light),
        tab.tone_percent(Tone::Dark),
        100.0
    ));
    out
}

fn crosstab_csv(tab: &CrossTabReport) -> String {
    let mut out = String::from("hue,light,dark,total\n");
    out.push_str(&format!(
        "red,{:.2},{:.2},{:.2}\n",
        tab.percent["light_red"], tab.percent["dark_red"], tab.hue_percent["red"]
    ));
    out.push_str(&format!(
        "yellow,{:.2},{:.2},{:.2}\n",
        tab.percent["light_yellow"], tab.percent["dark_yellow"], tab.hue_percent["yellow"]
    ));
    out.push_str(&format!(
        "total,{:.2},{:.2},100.00\n",
        tab.tone_percent["light"], tab.tone_percent["dark"]
    ));
    out
}

/// Write the requested formats into `dir` and return the created paths.
///
/// Files: `report.json`, `crosstab.csv`, `scatter.svg` and one
/// `hist_<field>.svg` per histogram section. The scatter is L* against h*
/// with both threshold lines; records are plotted in id order.
pub fn emit_report(
    dir: &Path,
    report: &AuditReport,
    records: &[ScoreRecord],
    formats: &[ReportFormat],
) -> Result<Vec<PathBuf>, ReportError> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for format in formats {
        match format {
            ReportFormat::Json => {
                let path = dir.join("report.json");
                let mut body = serde_json::to_string_pretty(report)
                    .expect("report serialization is infallible");
                body.push('\n');
                fs::write(&path, body)?;
                written.push(path);
            }
            ReportFormat::Csv => {
                let path = dir.join("crosstab.csv");
                fs::write(&path, crosstab_csv(&report.crosstab))?;
                written.push(path);
            }
            ReportFormat::Svg => {
                let mut ordered: Vec<&ScoreRecord> = records.iter().collect();
                ordered.sort_by(|a, b| a.id.cmp(&b.id));
                let points: Vec<(f64, f64)> = ordered
                    .iter()
                    .filter_map(|r| r.score.hue_deg.map(|h| (r.score.l_star, h)))
                    .collect();
                let path = dir.join("scatter.svg");
                fs::write(
                    &path,
                    svg::scatter_chart(
                        "skin color distribution",
                        "L*",
                        "h*",
                        &points,
                        report.thresholds.tone,
                        report.thresholds.hue,
                    ),
                )?;
                written.push(path);
                for section in &report.histograms {
                    let path = dir.join(format!("hist_{}.svg", section.field.name()));
                    fs::write(
                        &path,
                        svg::histogram_chart(
                            section.field.name(),
                            section.field.name(),
                            &section.histogram,
                        ),
                    )?;
                    written.push(path);
                }
            }
        }
    }
    Ok(written)
}
