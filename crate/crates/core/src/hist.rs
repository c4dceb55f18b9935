//! Equal-width histograms over a data-driven [min, max] range, with the
//! Sturges bin-count rule and mode estimation used by the scoring pipeline.

use serde::{Deserialize, Serialize};

/// Sturges bin count: ceil(log2(n)) + 1.
pub fn sturges_bins(n: usize) -> usize {
    assert!(n >= 1, "sturges_bins requires n >= 1");
    let ceil_log2 = if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    };
    ceil_log2 + 1
}

/// An equal-width histogram. Values equal to `max` land in the last bin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub min: f64,
    pub max: f64,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn bin_width(&self) -> f64 {
        (self.max - self.min) / self.counts.len() as f64
    }

    pub fn bin_center(&self, index: usize) -> f64 {
        self.min + self.bin_width() * (index as f64 + 0.5)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Bin `values` into `bins` equal-width bins over their own [min, max].
///
/// Panics on empty input or zero bins; callers validate first.
pub fn histogram(values: &[f64], bins: usize) -> Histogram {
    assert!(!values.is_empty(), "histogram requires at least one value");
    assert!(bins >= 1, "histogram requires at least one bin");
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut counts = vec![0u64; bins];
    if min == max {
        counts[0] = values.len() as u64;
        return Histogram { min, max, counts };
    }
    let width = (max - min) / bins as f64;
    for &v in values {
        let idx = (((v - min) / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    Histogram { min, max, counts }
}

/// Center of the most populated bin; ties break toward the lowest bin.
/// A single distinct value is returned unchanged.
pub fn histogram_mode(values: &[f64], bins: usize) -> f64 {
    let h = histogram(values, bins);
    if h.min == h.max {
        return h.min;
    }
    let mut best = 0;
    for (i, &c) in h.counts.iter().enumerate() {
        if c > h.counts[best] {
            best = i;
        }
    }
    h.bin_center(best)
}
