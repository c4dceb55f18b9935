use huetone::audit::{cross_tabulate, CategoryThresholds, ScoreField};
use huetone::formats::read_scores;
use huetone::report::{build_report, emit_report, render_text_table, ReportFormat};

use crate::{AuditArgs, CliError};

pub fn run(args: &AuditArgs) -> Result<(), CliError> {
    let records = read_scores(&args.scores)
        .map_err(|e| CliError::usage(format!("{}: {e}", args.scores.display())))?;
    if args.bins == 0 {
        return Err(CliError::usage("--bins must be at least 1"));
    }
    let thresholds = CategoryThresholds {
        tone: args.tone_threshold,
        hue: args.hue_threshold,
    };
    let report = build_report(&records, &thresholds, args.bins, &ScoreField::ALL)
        .map_err(|e| CliError::usage(e.to_string()))?;
    let written = emit_report(&args.out_dir, &report, &records, &ReportFormat::ALL)
        .map_err(|e| CliError::data(e.to_string()))?;

    let tab = cross_tabulate(&records, &thresholds).expect("non-empty records");
    print!("{}", render_text_table(&tab));
    eprintln!(
        "wrote {} report files to {}",
        written.len(),
        args.out_dir.display()
    );
    Ok(())
}
