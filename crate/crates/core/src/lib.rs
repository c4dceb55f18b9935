//! Multidimensional skin color measurement and fairness auditing.
//!
//! Apparent skin color in an image is scored along two axes rather than
//! one: perceptual lightness L* (skin tone, light to dark) and the CIELAB
//! hue angle h* (skin hue, red to yellow), with the individual typology
//! angle carried alongside for compatibility with tone-only scales. On top
//! of the per-image scores, the crate implements the audit workflows that
//! consume them:
//!
//! - [`color`]: sRGB / XYZ / CIELAB conversions, hue angle, ITA.
//! - [`extract`]: mask-driven pixel extraction, Lab-space clustering, and
//!   histogram-mode aggregation into one score per image.
//! - [`audit`] / [`report`]: quadrant cross-tabs, histograms, and
//!   JSON/CSV/SVG report emission over scored datasets.
//! - [`elo`]: balanced pair manifests, Elo rating replay, and group
//!   preference summaries for auditing pairwise selection algorithms.
//! - [`stats`]: Welch t-tests with Bonferroni correction.
//! - [`disagg`]: accuracy disaggregated by tone, hue, and intersections.
//! - [`formats`] / [`imgio`]: the CSV/JSONL schemas and PNG handling used
//!   by the CLI.

pub mod audit;
pub mod color;
pub mod disagg;
pub mod elo;
pub mod extract;
pub mod formats;
pub mod hist;
pub mod imgio;
pub mod report;
pub mod stats;
pub mod svg;

pub use audit::{categorize, CategoryThresholds, CrossTab, ScoreRecord, ToneHueCategory};
pub use color::{fitzpatrick_band, hue_angle, ita, lab_to_srgb, srgb_to_lab, CieLab, Srgb8};
pub use extract::{score_image, ExtractionConfig, Raster, SkinColorScore, SkinMask};
