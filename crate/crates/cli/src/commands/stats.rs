use std::collections::BTreeMap;

use huetone::formats::read_grouped_values;
use huetone::stats::pairwise_group_tests;

use crate::{CliError, StatsArgs};

pub fn run(args: &StatsArgs) -> Result<(), CliError> {
    let grouped = read_grouped_values(&args.input, &args.value, &args.group)
        .map_err(|e| CliError::usage(format!("{}: {e}", args.input.display())))?;
    let (testable, skipped): (BTreeMap<String, Vec<f64>>, BTreeMap<String, Vec<f64>>) =
        grouped.into_iter().partition(|(_, v)| v.len() >= 2);
    for group in skipped.keys() {
        eprintln!("skipping group {group:?}: fewer than 2 values");
    }
    let tests = pairwise_group_tests(&testable).map_err(|e| CliError::usage(e.to_string()))?;

    println!(
        "{:<14}{:<14}{:>10}{:>10}{:>12}{:>12}",
        "group_a", "group_b", "t", "df", "p", "p_adj"
    );
    for t in &tests.tests {
        println!(
            "{:<14}{:<14}{:>10.4}{:>10.2}{:>12.4e}{:>12.4e}",
            t.group_a, t.group_b, t.test.t, t.test.df, t.test.p, t.p_adjusted
        );
    }

    if let Some(out) = &args.out {
        let mut body = serde_json::to_string_pretty(&tests).expect("tests serialize");
        body.push('\n');
        std::fs::write(out, body)
            .map_err(|e| CliError::data(format!("{}: {e}", out.display())))?;
        eprintln!("wrote {}", out.display());
    }
    Ok(())
}
