use std::fs;

use huetone::audit::CategoryThresholds;
use huetone::disagg::{disaggregate, join_scores, AccuracyBreakdown, DisaggTable};
use huetone::formats::{read_predictions, read_scores};

use crate::{CliError, DisaggArgs};

const CELL_COLUMNS: [&str; 9] = [
    "overall",
    "light",
    "dark",
    "red",
    "yellow",
    "light_red",
    "light_yellow",
    "dark_red",
    "dark_yellow",
];

fn cell_value(breakdown: &AccuracyBreakdown, column: &str) -> Option<f64> {
    match column {
        "overall" => Some(breakdown.overall.accuracy()),
        "light" | "dark" => breakdown.by_tone.get(column).map(|c| c.accuracy()),
        "red" | "yellow" => breakdown.by_hue.get(column).map(|c| c.accuracy()),
        _ => breakdown.by_intersection.get(column).map(|c| c.accuracy()),
    }
}

fn segment_rows(table: &DisaggTable) -> Vec<(&'static str, &AccuracyBreakdown)> {
    let mut rows = vec![("all", &table.all)];
    if let Some(pos) = &table.positive {
        rows.push(("positive", pos));
    }
    if let Some(neg) = &table.negative {
        rows.push(("negative", neg));
    }
    rows
}

fn to_csv(table: &DisaggTable) -> String {
    let mut out = format!("segment,{}\n", CELL_COLUMNS.join(","));
    for (name, breakdown) in segment_rows(table) {
        let cells: Vec<String> = CELL_COLUMNS
            .iter()
            .map(|col| {
                cell_value(breakdown, col)
                    .map(|v| format!("{v:.2}"))
                    .unwrap_or_default()
            })
            .collect();
        out.push_str(&format!("{name},{}\n", cells.join(",")));
    }
    out
}

fn to_text(table: &DisaggTable) -> String {
    let mut out = format!("{:<10}", "segment");
    for col in CELL_COLUMNS {
        out.push_str(&format!("{col:>14}"));
    }
    out.push('\n');
    for (name, breakdown) in segment_rows(table) {
        out.push_str(&format!("{name:<10}"));
        for col in CELL_COLUMNS {
            match cell_value(breakdown, col) {
                Some(v) => out.push_str(&format!("{v:>14.2}")),
                None => out.push_str(&format!("{:>14}", "-")),
            }
        }
        out.push('\n');
    }
    out
}

pub fn run(args: &DisaggArgs) -> Result<(), CliError> {
    let predictions = read_predictions(&args.predictions)
        .map_err(|e| CliError::usage(format!("{}: {e}", args.predictions.display())))?;
    let scores = read_scores(&args.scores)
        .map_err(|e| CliError::usage(format!("{}: {e}", args.scores.display())))?;
    let thresholds = CategoryThresholds {
        tone: args.tone_threshold,
        hue: args.hue_threshold,
    };
    let joined = join_scores(&predictions, &scores, &thresholds)
        .map_err(|e| CliError::usage(e.to_string()))?;
    let table = disaggregate(&joined, args.split.as_deref())
        .map_err(|e| CliError::usage(e.to_string()))?;

    fs::create_dir_all(&args.out_dir)
        .map_err(|e| CliError::data(format!("{}: {e}", args.out_dir.display())))?;
    let json_path = args.out_dir.join("disagg.json");
    let mut body = serde_json::to_string_pretty(&table).expect("table serializes");
    body.push('\n');
    fs::write(&json_path, body)
        .map_err(|e| CliError::data(format!("{}: {e}", json_path.display())))?;
    let csv_path = args.out_dir.join("disagg.csv");
    fs::write(&csv_path, to_csv(&table))
        .map_err(|e| CliError::data(format!("{}: {e}", csv_path.display())))?;

    print!("{}", to_text(&table));
    eprintln!("wrote {} and {}", json_path.display(), csv_path.display());
    Ok(())
}
