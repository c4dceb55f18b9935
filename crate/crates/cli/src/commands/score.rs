use huetone::audit::ScoreRecord;
use huetone::extract::{score_image, ExtractionConfig};
use huetone::formats::{read_manifest, write_scores, ManifestRow};
use huetone::imgio::{load_image, load_mask};
use serde_json::json;

use crate::{CliError, ScoreArgs};

fn score_row(row: &ManifestRow, cfg: &ExtractionConfig) -> Result<ScoreRecord, String> {
    let image = load_image(&row.image_path)
        .map_err(|e| format!("{}: {e}", row.image_path.display()))?;
    let mask =
        load_mask(&row.mask_path).map_err(|e| format!("{}: {e}", row.mask_path.display()))?;
    let score = score_image(&image, &mask, cfg).map_err(|e| e.to_string())?;
    Ok(ScoreRecord {
        id: row.id.clone(),
        score,
        group: row.group.clone(),
    })
}

pub fn run(args: &ScoreArgs) -> Result<(), CliError> {
    let rows = read_manifest(&args.manifest)
        .map_err(|e| CliError::usage(format!("{}: {e}", args.manifest.display())))?;
    let cfg = ExtractionConfig {
        k: args.k,
        keep_top: args.keep_top,
        seed: args.seed,
        max_iters: args.max_iters,
    };
    cfg.validate().map_err(|e| CliError::usage(e.to_string()))?;

    // Images are scored in parallel but buffered and written in manifest
    // order, so the output bytes do not depend on the worker count.
    let results: Vec<Result<ScoreRecord, (String, String)>> = {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs)
            .build()
            .map_err(|e| CliError::usage(format!("cannot build worker pool: {e}")))?;
        pool.install(|| {
            rows.par_iter()
                .map(|row| score_row(row, &cfg).map_err(|msg| (row.id.clone(), msg)))
                .collect()
        })
    };

    let mut scored = Vec::new();
    let mut failures = Vec::new();
    for result in results {
        match result {
            Ok(record) => scored.push(record),
            Err((id, message)) => {
                if args.strict {
                    return Err(CliError::data(format!("{id}: {message}")));
                }
                failures.push((id, message));
            }
        }
    }

    write_scores(&args.out, &scored)
        .map_err(|e| CliError::data(format!("{}: {e}", args.out.display())))?;
    if !failures.is_empty() {
        let errors_path = args.errors.clone().unwrap_or_else(|| {
            let mut p = args.out.clone();
            p.set_extension("errors.jsonl");
            p
        });
        let mut body = String::new();
        for (id, message) in &failures {
            body.push_str(&json!({"id": id, "error": message}).to_string());
            body.push('\n');
        }
        std::fs::write(&errors_path, body)
            .map_err(|e| CliError::data(format!("{}: {e}", errors_path.display())))?;
        eprintln!(
            "scored {} of {} images; {} failures in {}",
            scored.len(),
            rows.len(),
            failures.len(),
            errors_path.display()
        );
    } else {
        eprintln!("scored {} images", scored.len());
    }
    Ok(())
}
