//! Built-in stub deciders.
//!
//! The audited selection algorithm is external to this crate: the harness
//! writes a pair manifest, any system decides the pairs, and the outcomes
//! file comes back. Each stub stands in for such a system behind the common
//! [`Decider`] trait and is selected by name at runtime, which also gives
//! tests a bias-free and a deliberately biased endpoint to exercise.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{OutcomeRecord, PairManifest};

#[derive(Debug, Error, PartialEq)]
pub enum DeciderError {
    #[error("no skin color score for id {0}")]
    MissingScore(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairChoice {
    Top,
    Bottom,
}

/// A pairwise selection algorithm under audit.
pub trait Decider {
    fn name(&self) -> &'static str;
    fn decide(&mut self, top_id: &str, bottom_id: &str) -> Result<PairChoice, DeciderError>;
}

/// Unbiased coin-flip decider.
pub struct RandomDecider {
    rng: ChaCha8Rng,
}

impl RandomDecider {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Decider for RandomDecider {
    fn name(&self) -> &'static str {
        "random"
    }

    fn decide(&mut self, _top_id: &str, _bottom_id: &str) -> Result<PairChoice, DeciderError> {
        Ok(if self.rng.random::<bool>() {
            PairChoice::Top
        } else {
            PairChoice::Bottom
        })
    }
}

/// Deliberately biased decider: always picks the face with the higher
/// L* score. Exact ties go to the top position.
pub struct PrefersLighter {
    lightness: BTreeMap<String, f64>,
}

impl PrefersLighter {
    pub fn new(lightness: BTreeMap<String, f64>) -> Self {
        Self { lightness }
    }

    fn lightness_of(&self, id: &str) -> Result<f64, DeciderError> {
        self.lightness
            .get(id)
            .copied()
            .ok_or_else(|| DeciderError::MissingScore(id.to_string()))
    }
}

impl Decider for PrefersLighter {
    fn name(&self) -> &'static str {
        "prefers-lighter"
    }

    fn decide(&mut self, top_id: &str, bottom_id: &str) -> Result<PairChoice, DeciderError> {
        let top = self.lightness_of(top_id)?;
        let bottom = self.lightness_of(bottom_id)?;
        Ok(if bottom > top {
            PairChoice::Bottom
        } else {
            PairChoice::Top
        })
    }
}

pub const DECIDER_NAMES: &[&str] = &["random", "prefers-lighter"];

/// Instantiate a registered decider by name. `lightness` maps each id to
/// its L* score; only score-driven deciders read it.
pub fn make_decider(
    name: &str,
    seed: u64,
    lightness: &BTreeMap<String, f64>,
) -> Option<Box<dyn Decider>> {
    match name {
        "random" => Some(Box::new(RandomDecider::new(seed))),
        "prefers-lighter" => Some(Box::new(PrefersLighter::new(lightness.clone()))),
        _ => None,
    }
}

/// Decide every pair in manifest order.
pub fn run_decider(
    decider: &mut dyn Decider,
    manifest: &PairManifest,
) -> Result<Vec<OutcomeRecord>, DeciderError> {
    manifest
        .pairs
        .iter()
        .map(|pair| {
            let choice = decider.decide(&pair.top, &pair.bottom)?;
            Ok(OutcomeRecord {
                pair_id: pair.pair_id,
                winner: match choice {
                    PairChoice::Top => pair.top.clone(),
                    PairChoice::Bottom => pair.bottom.clone(),
                },
            })
        })
        .collect()
}
