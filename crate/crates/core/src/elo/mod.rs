//! Elo-rating audit of pairwise selection algorithms.
//!
//! A balanced pair manifest is generated over intersectional groups, an
//! external decider (or a built-in stub, see [`decider`]) picks a winner for
//! every pair, and replaying the outcomes yields a rating per individual.
//! Group mean ratings convert to preference percentages through the Elo
//! expected-score curve.

pub mod decider;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EloError {
    #[error("group {group} needs at least 2 members for same-group pairs")]
    InsufficientGroupSize { group: String },
    #[error("duplicate id in population: {0}")]
    DuplicateId(String),
    #[error("id {0} does not belong to the registered population")]
    UnknownId(String),
    #[error("id {0} has no group label")]
    UnknownGroup(String),
    #[error("outcomes do not match the pair manifest: {0}")]
    OutcomeMismatch(String),
}

/// Rating-update constants. Defaults follow chess practice: a difference of
/// `m` points means 10x the odds of being chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EloConfig {
    /// Sigmoid temperature.
    pub m: f64,
    /// Update gain per game.
    pub k: f64,
    /// Initial rating for every player.
    pub init: f64,
}

impl Default for EloConfig {
    fn default() -> Self {
        Self {
            m: 400.0,
            k: 16.0,
            init: 1400.0,
        }
    }
}

/// Probability that the first player is chosen: 1 / (1 + 10^((r2 - r1)/m)).
pub fn expected_score(r_first: f64, r_second: f64, m: f64) -> f64 {
    assert!(m > 0.0, "temperature must be positive");
    1.0 / (1.0 + 10f64.powf((r_second - r_first) / m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameOutcome {
    FirstWins,
    SecondWins,
}

/// One zero-sum rating update; the pair's rating total is conserved.
pub fn update(
    r_first: f64,
    r_second: f64,
    outcome: GameOutcome,
    cfg: &EloConfig,
) -> (f64, f64) {
    let p_first = expected_score(r_first, r_second, cfg.m);
    let s_first = match outcome {
        GameOutcome::FirstWins => 1.0,
        GameOutcome::SecondWins => 0.0,
    };
    let delta = cfg.k * (s_first - p_first);
    (r_first + delta, r_second - delta)
}

/// One composed comparison: which image sits on top is randomized at
/// generation time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pair {
    pub pair_id: u64,
    pub top: String,
    pub bottom: String,
}

/// Ordered pair list plus the sampling metadata that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairManifest {
    pub pairs: Vec<Pair>,
    pub seed: u64,
    pub per_combo: usize,
}

/// The winner of one pair, aligned to the manifest by `pair_id`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeRecord {
    pub pair_id: u64,
    pub winner: String,
}

/// Whether balanced sampling covers same-group combinations or only
/// cross-group ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GroupPairing {
    /// Only pairs whose members come from two different groups.
    #[default]
    CrossOnly,
    /// Same-group combinations are sampled as well.
    IncludeSameGroup,
}

/// Sample `per_combo` pairs for every unordered group combination.
///
/// Members are drawn uniformly with replacement across the tournament;
/// self-pairs are never emitted and duplicate pairs are allowed (logged).
/// Deterministic for a fixed seed.
pub fn generate_pairs(
    population: &[(String, String)],
    per_combo: usize,
    seed: u64,
    pairing: GroupPairing,
) -> Result<PairManifest, EloError> {
    let mut groups: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for (id, group) in population {
        if !seen.insert(id.as_str()) {
            return Err(EloError::DuplicateId(id.clone()));
        }
        groups.entry(group.as_str()).or_default().push(id.as_str());
    }
    for members in groups.values_mut() {
        members.sort_unstable();
    }

    let names: Vec<&str> = groups.keys().copied().collect();
    let mut combos: Vec<(&str, &str)> = Vec::new();
    for i in 0..names.len() {
        let start = match pairing {
            GroupPairing::IncludeSameGroup => i,
            GroupPairing::CrossOnly => i + 1,
        };
        for j in start..names.len() {
            if i == j && groups[names[i]].len() < 2 {
                return Err(EloError::InsufficientGroupSize {
                    group: names[i].to_string(),
                });
            }
            combos.push((names[i], names[j]));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(combos.len() * per_combo);
    let mut unordered_seen: HashSet<(String, String)> = HashSet::new();
    let mut duplicates = 0usize;
    for (ga, gb) in combos {
        let a_members = &groups[ga];
        let b_members = &groups[gb];
        for _ in 0..per_combo {
            let (first, second) = loop {
                let a = a_members[rng.random_range(0..a_members.len())];
                let b = b_members[rng.random_range(0..b_members.len())];
                if a != b {
                    break (a, b);
                }
            };
            let (top, bottom) = if rng.random::<bool>() {
                (first, second)
            } else {
                (second, first)
            };
            let key = if top < bottom {
                (top.to_string(), bottom.to_string())
            } else {
                (bottom.to_string(), top.to_string())
            };
            if !unordered_seen.insert(key) {
                duplicates += 1;
            }
            pairs.push(Pair {
                pair_id: pairs.len() as u64,
                top: top.to_string(),
                bottom: bottom.to_string(),
            });
        }
    }
    if duplicates > 0 {
        log::warn!("pair manifest repeats {duplicates} unordered pairs");
    }
    Ok(PairManifest {
        pairs,
        seed,
        per_combo,
    })
}

/// Ratings and match counts for a registered population.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EloState {
    pub ratings: BTreeMap<String, f64>,
    pub match_count: BTreeMap<String, u64>,
}

impl EloState {
    /// Every id starts at `init` with zero matches.
    pub fn new(ids: impl IntoIterator<Item = String>, cfg: &EloConfig) -> Self {
        let ratings: BTreeMap<String, f64> = ids.into_iter().map(|id| (id, cfg.init)).collect();
        let match_count = ratings.keys().map(|id| (id.clone(), 0)).collect();
        Self {
            ratings,
            match_count,
        }
    }

    pub fn rating(&self, id: &str) -> Option<f64> {
        self.ratings.get(id).copied()
    }

    pub fn total_rating(&self) -> f64 {
        self.ratings.values().sum()
    }
}

/// Replay outcomes against a manifest in manifest order, starting every
/// registered id at `cfg.init`. Unplayed ids keep the initial rating.
pub fn run_tournament(
    population_ids: impl IntoIterator<Item = String>,
    manifest: &PairManifest,
    outcomes: &[OutcomeRecord],
    cfg: &EloConfig,
) -> Result<EloState, EloError> {
    let mut state = EloState::new(population_ids, cfg);
    if outcomes.len() != manifest.pairs.len() {
        return Err(EloError::OutcomeMismatch(format!(
            "{} pairs but {} outcomes",
            manifest.pairs.len(),
            outcomes.len()
        )));
    }
    for (pair, outcome) in manifest.pairs.iter().zip(outcomes) {
        if pair.pair_id != outcome.pair_id {
            return Err(EloError::OutcomeMismatch(format!(
                "outcome for pair {} where pair {} was expected",
                outcome.pair_id, pair.pair_id
            )));
        }
        let winner_is_top = if outcome.winner == pair.top {
            true
        } else if outcome.winner == pair.bottom {
            false
        } else {
            return Err(EloError::OutcomeMismatch(format!(
                "winner {} is not a member of pair {}",
                outcome.winner, pair.pair_id
            )));
        };
        let r_top = *state
            .ratings
            .get(&pair.top)
            .ok_or_else(|| EloError::UnknownId(pair.top.clone()))?;
        let r_bottom = *state
            .ratings
            .get(&pair.bottom)
            .ok_or_else(|| EloError::UnknownId(pair.bottom.clone()))?;
        let outcome = if winner_is_top {
            GameOutcome::FirstWins
        } else {
            GameOutcome::SecondWins
        };
        let (new_top, new_bottom) = update(r_top, r_bottom, outcome, cfg);
        state.ratings.insert(pair.top.clone(), new_top);
        state.ratings.insert(pair.bottom.clone(), new_bottom);
        *state.match_count.get_mut(&pair.top).unwrap() += 1;
        *state.match_count.get_mut(&pair.bottom).unwrap() += 1;
    }
    Ok(state)
}

/// Preference of `group_a` over `group_b`, from group mean ratings through
/// the expected-score curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreferencePair {
    pub group_a: String,
    pub group_b: String,
    /// Percent chance a member at `group_a`'s mean beats one at
    /// `group_b`'s mean.
    pub preference_pct: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupPreference {
    pub mean_rating: BTreeMap<String, f64>,
    pub member_count: BTreeMap<String, usize>,
    pub pairs: Vec<PreferencePair>,
}

/// Per-group mean ratings and pairwise preference percentages.
pub fn group_preference(
    state: &EloState,
    groups: &BTreeMap<String, String>,
    cfg: &EloConfig,
) -> Result<GroupPreference, EloError> {
    let mut sums: BTreeMap<String, (f64, usize)> = BTreeMap::new();
    for (id, rating) in &state.ratings {
        let group = groups
            .get(id)
            .ok_or_else(|| EloError::UnknownGroup(id.clone()))?;
        let entry = sums.entry(group.clone()).or_insert((0.0, 0));
        entry.0 += rating;
        entry.1 += 1;
    }
    let mean_rating: BTreeMap<String, f64> = sums
        .iter()
        .map(|(g, (sum, n))| (g.clone(), sum / *n as f64))
        .collect();
    let member_count: BTreeMap<String, usize> =
        sums.iter().map(|(g, (_, n))| (g.clone(), *n)).collect();

    let names: Vec<&String> = mean_rating.keys().collect();
    let mut pairs = Vec::new();
    for i in 0..names.len() {
        for j in (i + 1)..names.len() {
            pairs.push(PreferencePair {
                group_a: names[i].clone(),
                group_b: names[j].clone(),
                preference_pct: expected_score(
                    mean_rating[names[i]],
                    mean_rating[names[j]],
                    cfg.m,
                ) * 100.0,
            });
        }
    }
    Ok(GroupPreference {
        mean_rating,
        member_count,
        pairs,
    })
}
