use std::collections::BTreeMap;

use huetone::elo::decider::{make_decider, run_decider, DECIDER_NAMES};
use huetone::elo::{generate_pairs, group_preference, run_tournament, EloConfig, GroupPairing};
use huetone::formats::{
    read_outcomes, read_pair_manifest, read_population, read_scores, write_outcomes,
    write_pair_manifest, write_ratings,
};
use huetone::stats::pairwise_group_tests;

use crate::{CliError, DecideStubArgs, PairgenArgs, RateArgs};

pub fn pairgen(args: &PairgenArgs) -> Result<(), CliError> {
    let population = read_population(&args.population)
        .map_err(|e| CliError::usage(format!("{}: {e}", args.population.display())))?;
    let pairing = if args.same_group {
        GroupPairing::IncludeSameGroup
    } else {
        GroupPairing::CrossOnly
    };
    let manifest = generate_pairs(&population, args.per_combo, args.seed, pairing)
        .map_err(|e| CliError::usage(e.to_string()))?;
    write_pair_manifest(&args.out, &manifest)
        .map_err(|e| CliError::data(format!("{}: {e}", args.out.display())))?;
    eprintln!("wrote {} pairs to {}", manifest.pairs.len(), args.out.display());
    Ok(())
}

pub fn decide_stub(args: &DecideStubArgs) -> Result<(), CliError> {
    let manifest = read_pair_manifest(&args.manifest)
        .map_err(|e| CliError::usage(format!("{}: {e}", args.manifest.display())))?;
    let mut lightness = BTreeMap::new();
    if let Some(path) = &args.scores {
        let records =
            read_scores(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        for r in records {
            lightness.insert(r.id, r.score.l_star);
        }
    }
    let mut decider = make_decider(&args.decider, args.seed, &lightness).ok_or_else(|| {
        CliError::usage(format!(
            "unknown decider {:?}; available: {}",
            args.decider,
            DECIDER_NAMES.join(", ")
        ))
    })?;
    if args.decider == "prefers-lighter" && args.scores.is_none() {
        return Err(CliError::usage(
            "decider prefers-lighter requires --scores",
        ));
    }
    let outcomes = run_decider(decider.as_mut(), &manifest)
        .map_err(|e| CliError::usage(e.to_string()))?;
    write_outcomes(&args.out, &outcomes)
        .map_err(|e| CliError::data(format!("{}: {e}", args.out.display())))?;
    eprintln!("decided {} pairs with {}", outcomes.len(), decider.name());
    Ok(())
}

pub fn rate(args: &RateArgs) -> Result<(), CliError> {
    let population = read_population(&args.population)
        .map_err(|e| CliError::usage(format!("{}: {e}", args.population.display())))?;
    let manifest = read_pair_manifest(&args.manifest)
        .map_err(|e| CliError::usage(format!("{}: {e}", args.manifest.display())))?;
    let outcomes = read_outcomes(&args.outcomes)
        .map_err(|e| CliError::usage(format!("{}: {e}", args.outcomes.display())))?;
    let cfg = EloConfig {
        m: args.m,
        k: args.k,
        init: args.init,
    };
    let ids = population.iter().map(|(id, _)| id.clone());
    let state = run_tournament(ids, &manifest, &outcomes, &cfg)
        .map_err(|e| CliError::usage(e.to_string()))?;
    let groups: BTreeMap<String, String> = population.into_iter().collect();
    write_ratings(&args.out, &state, &groups)
        .map_err(|e| CliError::data(format!("{}: {e}", args.out.display())))?;

    let preference = group_preference(&state, &groups, &cfg)
        .map_err(|e| CliError::usage(e.to_string()))?;
    println!("group mean ratings:");
    for (group, mean) in &preference.mean_rating {
        println!(
            "  {group}: {mean:.2} (n={})",
            preference.member_count[group]
        );
    }
    if !preference.pairs.is_empty() {
        println!("pairwise preference:");
        for pair in &preference.pairs {
            println!(
                "  {} over {}: {:.2}%",
                pair.group_a, pair.group_b, pair.preference_pct
            );
        }
    }

    // Significance tests need at least two ratings per group.
    let mut ratings_by_group: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for (id, rating) in &state.ratings {
        ratings_by_group
            .entry(groups[id].clone())
            .or_default()
            .push(*rating);
    }
    let testable: BTreeMap<String, Vec<f64>> = ratings_by_group
        .into_iter()
        .filter(|(_, v)| v.len() >= 2)
        .collect();
    if testable.len() >= 2 {
        let tests = pairwise_group_tests(&testable)
            .map_err(|e| CliError::usage(e.to_string()))?;
        println!(
            "welch tests (bonferroni over {} pairs):",
            tests.tests.len()
        );
        for t in &tests.tests {
            println!(
                "  {} vs {}: t={:.4} df={:.2} p={:.4e} p_adj={:.4e}",
                t.group_a, t.group_b, t.test.t, t.test.df, t.test.p, t.p_adjusted
            );
        }
    } else {
        println!("welch tests skipped: need at least two groups with two members each");
    }
    Ok(())
}
