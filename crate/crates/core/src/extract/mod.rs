//! Per-image skin color scoring.
//!
//! Given an image and a skin mask, every skin pixel is converted to CIELAB,
//! pixels are clustered in Lab space, each cluster is summarized by the
//! histogram mode of its per-pixel measurements, and the lightest clusters
//! are averaged (weighted by pixel count) into one [`SkinColorScore`].
//! Dropping the darkest clusters keeps shadows and facial hair from
//! contaminating the score.

pub mod kmeans;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::color::{self, CieLab, HueAngle, Srgb8};
use crate::hist::{histogram_mode, sturges_bins};

#[derive(Debug, Error, PartialEq)]
pub enum ExtractError {
    #[error("image is {image_w}x{image_h} but mask is {mask_w}x{mask_h}")]
    DimensionMismatch {
        image_w: u32,
        image_h: u32,
        mask_w: u32,
        mask_h: u32,
    },
    #[error("mask selects zero skin pixels")]
    EmptyMask,
    #[error("raster must contain at least one pixel")]
    EmptyRaster,
    #[error("{width}x{height} raster does not match buffer of {len} entries")]
    BufferMismatch { width: u32, height: u32, len: usize },
    #[error("invalid extraction config: {0}")]
    InvalidConfig(String),
}

/// An 8-bit sRGB image held as a flat row-major pixel buffer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    width: u32,
    height: u32,
    pixels: Vec<Srgb8>,
}

impl Raster {
    pub fn new(width: u32, height: u32, pixels: Vec<Srgb8>) -> Result<Self, ExtractError> {
        if width == 0 || height == 0 {
            return Err(ExtractError::EmptyRaster);
        }
        if pixels.len() != (width as usize) * (height as usize) {
            return Err(ExtractError::BufferMismatch {
                width,
                height,
                len: pixels.len(),
            });
        }
        Ok(Self { width, height, pixels })
    }

    pub fn uniform(width: u32, height: u32, color: Srgb8) -> Result<Self, ExtractError> {
        let n = (width as usize) * (height as usize);
        Self::new(width, height, vec![color; n])
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[Srgb8] {
        &self.pixels
    }

    pub fn pixel(&self, x: u32, y: u32) -> Srgb8 {
        self.pixels[(y as usize) * (self.width as usize) + (x as usize)]
    }
}

/// Per-pixel skin / not-skin flags paired with an image of equal size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkinMask {
    width: u32,
    height: u32,
    data: Vec<bool>,
}

impl SkinMask {
    pub fn new(width: u32, height: u32, data: Vec<bool>) -> Result<Self, ExtractError> {
        if data.len() != (width as usize) * (height as usize) {
            return Err(ExtractError::BufferMismatch {
                width,
                height,
                len: data.len(),
            });
        }
        Ok(Self { width, height, data })
    }

    /// Mask selecting every pixel.
    pub fn full(width: u32, height: u32) -> Self {
        Self {
            width,
            height,
            data: vec![true; (width as usize) * (height as usize)],
        }
    }

    pub fn from_fn(width: u32, height: u32, f: impl Fn(u32, u32) -> bool) -> Self {
        let mut data = Vec::with_capacity((width as usize) * (height as usize));
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self { width, height, data }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn is_skin(&self, x: u32, y: u32) -> bool {
        self.data[(y as usize) * (self.width as usize) + (x as usize)]
    }

    pub fn skin_pixel_count(&self) -> usize {
        self.data.iter().filter(|&&v| v).count()
    }
}

/// One skin pixel: its Lab value and hue angle (undefined for achromatic
/// pixels).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PixelSample {
    pub lab: CieLab,
    pub hue: Option<HueAngle>,
}

/// Point measurements for every skin pixel of one image.
#[derive(Debug, Clone, PartialEq)]
pub struct PixelSampleSet {
    pub samples: Vec<PixelSample>,
}

/// Histogram-mode summary of one pixel cluster.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterSummary {
    pub pixel_count: u64,
    /// Histogram mode of the cluster's L* values.
    pub mode_l: f64,
    /// Histogram mode of the cluster's defined hue angles; `None` when the
    /// cluster has no chromatic pixels.
    pub mode_h: Option<f64>,
    /// Histogram mode of the cluster's b* values (carried for the ITA).
    pub mode_b: f64,
    pub centroid: CieLab,
    /// Whether the cluster survived the keep-lightest rule.
    pub kept: bool,
}

/// The per-image aggregate skin color score.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkinColorScore {
    pub l_star: f64,
    /// `None` only when every kept cluster is achromatic.
    pub hue_deg: Option<f64>,
    /// `None` only at the degenerate point L* = 50, b* = 0.
    pub ita_deg: Option<f64>,
    pub skin_pixel_count: u64,
    pub clusters: Vec<ClusterSummary>,
}

/// Knobs for the extraction pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionConfig {
    /// Cluster count.
    pub k: usize,
    /// Clusters kept, by highest mode L*.
    pub keep_top: usize,
    /// Seed for the deterministic clustering PRNG.
    pub seed: u64,
    /// Lloyd iteration cap.
    pub max_iters: usize,
}

impl Default for ExtractionConfig {
    fn default() -> Self {
        Self {
            k: 5,
            keep_top: 3,
            seed: 0,
            max_iters: 100,
        }
    }
}

impl ExtractionConfig {
    pub fn validate(&self) -> Result<(), ExtractError> {
        if self.k == 0 {
            return Err(ExtractError::InvalidConfig("k must be >= 1".into()));
        }
        if self.keep_top == 0 || self.keep_top > self.k {
            return Err(ExtractError::InvalidConfig(format!(
                "keep_top must be in 1..={}, got {}",
                self.k, self.keep_top
            )));
        }
        if self.max_iters == 0 {
            return Err(ExtractError::InvalidConfig("max_iters must be >= 1".into()));
        }
        Ok(())
    }
}

/// Convert every mask-selected pixel to a Lab / hue point measurement.
pub fn extract_skin_pixels(
    image: &Raster,
    mask: &SkinMask,
) -> Result<PixelSampleSet, ExtractError> {
    if image.width != mask.width || image.height != mask.height {
        return Err(ExtractError::DimensionMismatch {
            image_w: image.width,
            image_h: image.height,
            mask_w: mask.width,
            mask_h: mask.height,
        });
    }
    let mut samples = Vec::with_capacity(mask.skin_pixel_count());
    for y in 0..image.height {
        for x in 0..image.width {
            if mask.is_skin(x, y) {
                let lab = color::srgb_to_lab(image.pixel(x, y));
                samples.push(PixelSample {
                    lab,
                    hue: color::hue_angle(lab).ok(),
                });
            }
        }
    }
    if samples.is_empty() {
        return Err(ExtractError::EmptyMask);
    }
    Ok(PixelSampleSet { samples })
}

/// Partition samples into at most `cfg.k` clusters of pixel indices.
/// Deterministic for a fixed seed and independent of sample order.
pub fn cluster_pixels(samples: &PixelSampleSet, cfg: &ExtractionConfig) -> Vec<Vec<usize>> {
    assert!(!samples.samples.is_empty(), "cluster_pixels requires samples");
    let points: Vec<[f64; 3]> = samples
        .samples
        .iter()
        .map(|s| [s.lab.l, s.lab.a, s.lab.b])
        .collect();
    kmeans::cluster(&points, cfg.k, cfg.seed, cfg.max_iters)
}

/// Keep the `keep_top` clusters with the highest mode L* and average their
/// modes weighted by pixel count. Dropped clusters stay in the output with
/// `kept = false`.
pub fn aggregate_score(clusters: Vec<ClusterSummary>, cfg: &ExtractionConfig) -> SkinColorScore {
    assert!(!clusters.is_empty(), "aggregate_score requires clusters");
    let mut clusters = clusters;
    clusters.sort_by(|a, b| {
        b.mode_l
            .total_cmp(&a.mode_l)
            .then(b.pixel_count.cmp(&a.pixel_count))
            .then(a.centroid.l.total_cmp(&b.centroid.l))
            .then(a.centroid.a.total_cmp(&b.centroid.a))
            .then(a.centroid.b.total_cmp(&b.centroid.b))
    });
    let keep = cfg.keep_top.min(clusters.len());
    for (i, c) in clusters.iter_mut().enumerate() {
        c.kept = i < keep;
    }

    let kept = &clusters[..keep];
    let total: u64 = kept.iter().map(|c| c.pixel_count).sum();
    let l_star = kept
        .iter()
        .map(|c| c.mode_l * c.pixel_count as f64)
        .sum::<f64>()
        / total as f64;
    let mode_b = kept
        .iter()
        .map(|c| c.mode_b * c.pixel_count as f64)
        .sum::<f64>()
        / total as f64;

    let chromatic_weight: u64 = kept
        .iter()
        .filter(|c| c.mode_h.is_some())
        .map(|c| c.pixel_count)
        .sum();
    let hue_deg = if chromatic_weight == 0 {
        None
    } else {
        Some(
            kept.iter()
                .filter_map(|c| c.mode_h.map(|h| h * c.pixel_count as f64))
                .sum::<f64>()
                / chromatic_weight as f64,
        )
    };

    let ita_deg = color::ita(CieLab::new(l_star, 0.0, mode_b))
        .ok()
        .map(|i| i.degrees);

    let skin_pixel_count: u64 = clusters.iter().map(|c| c.pixel_count).sum();
    SkinColorScore {
        l_star,
        hue_deg,
        ita_deg,
        skin_pixel_count,
        clusters,
    }
}

/// Cluster a sample set and aggregate it into a score.
pub fn score_samples(
    samples: &PixelSampleSet,
    cfg: &ExtractionConfig,
) -> Result<SkinColorScore, ExtractError> {
    cfg.validate()?;
    if samples.samples.is_empty() {
        return Err(ExtractError::EmptyMask);
    }
    let partitions = cluster_pixels(samples, cfg);
    let summaries = partitions
        .iter()
        .map(|members| summarize_cluster(samples, members))
        .collect();
    Ok(aggregate_score(summaries, cfg))
}

fn summarize_cluster(samples: &PixelSampleSet, members: &[usize]) -> ClusterSummary {
    // Accumulate in value order so the summary is bit-identical under any
    // permutation of the input pixels, not just equal up to rounding.
    let mut pixels: Vec<&PixelSample> = members.iter().map(|&i| &samples.samples[i]).collect();
    pixels.sort_by(|a, b| {
        a.lab
            .l
            .total_cmp(&b.lab.l)
            .then(a.lab.a.total_cmp(&b.lab.a))
            .then(a.lab.b.total_cmp(&b.lab.b))
    });
    let ls: Vec<f64> = pixels.iter().map(|s| s.lab.l).collect();
    let bs: Vec<f64> = pixels.iter().map(|s| s.lab.b).collect();
    let hues: Vec<f64> = pixels
        .iter()
        .filter_map(|s| s.hue.map(|h| h.degrees))
        .collect();
    let n = members.len();
    let mut centroid = CieLab::new(0.0, 0.0, 0.0);
    for s in &pixels {
        centroid.l += s.lab.l;
        centroid.a += s.lab.a;
        centroid.b += s.lab.b;
    }
    centroid.l /= n as f64;
    centroid.a /= n as f64;
    centroid.b /= n as f64;

    ClusterSummary {
        pixel_count: n as u64,
        mode_l: histogram_mode(&ls, sturges_bins(n)),
        mode_h: if hues.is_empty() {
            None
        } else {
            Some(histogram_mode(&hues, sturges_bins(hues.len())))
        },
        mode_b: histogram_mode(&bs, sturges_bins(n)),
        centroid,
        kept: false,
    }
}

/// The full pipeline: extract, cluster, summarize, aggregate.
pub fn score_image(
    image: &Raster,
    mask: &SkinMask,
    cfg: &ExtractionConfig,
) -> Result<SkinColorScore, ExtractError> {
    let samples = extract_skin_pixels(image, mask)?;
    score_samples(&samples, cfg)
}

/// Root-mean-square contrast: population standard deviation of per-pixel
/// L*/100 over the whole image.
pub fn rms_contrast(image: &Raster) -> f64 {
    contrast_of(image.pixels.iter().copied())
}

/// RMS contrast restricted to mask-selected pixels.
pub fn rms_contrast_masked(image: &Raster, mask: &SkinMask) -> Result<f64, ExtractError> {
    if image.width != mask.width || image.height != mask.height {
        return Err(ExtractError::DimensionMismatch {
            image_w: image.width,
            image_h: image.height,
            mask_w: mask.width,
            mask_h: mask.height,
        });
    }
    if mask.skin_pixel_count() == 0 {
        return Err(ExtractError::EmptyMask);
    }
    Ok(contrast_of(
        image
            .pixels
            .iter()
            .zip(&mask.data)
            .filter_map(|(p, &m)| m.then_some(*p)),
    ))
}

fn contrast_of(pixels: impl Iterator<Item = Srgb8>) -> f64 {
    let values: Vec<f64> = pixels.map(|p| color::srgb_to_lab(p).l / 100.0).collect();
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    var.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::lab_to_srgb;

    fn uniform_fixture(lab: CieLab, w: u32, h: u32) -> Raster {
        Raster::uniform(w, h, lab_to_srgb(lab).unwrap()).unwrap()
    }

    #[test]
    fn extract_counts_mask_cardinality() {
        let img = uniform_fixture(CieLab::new(65.0, 15.0, 20.0), 10, 10);
        let set = extract_skin_pixels(&img, &SkinMask::full(10, 10)).unwrap();
        assert_eq!(set.samples.len(), 100);
    }

    #[test]
    fn empty_mask_is_an_error() {
        let img = uniform_fixture(CieLab::new(65.0, 15.0, 20.0), 4, 4);
        let mask = SkinMask::new(4, 4, vec![false; 16]).unwrap();
        assert_eq!(
            extract_skin_pixels(&img, &mask).unwrap_err(),
            ExtractError::EmptyMask
        );
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let img = uniform_fixture(CieLab::new(65.0, 15.0, 20.0), 4, 4);
        let mask = SkinMask::full(5, 4);
        assert!(matches!(
            extract_skin_pixels(&img, &mask).unwrap_err(),
            ExtractError::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn uniform_image_samples_survive_quantization() {
        let target = CieLab::new(65.0, 15.0, 20.0);
        let img = uniform_fixture(target, 6, 6);
        let set = extract_skin_pixels(&img, &SkinMask::full(6, 6)).unwrap();
        for s in &set.samples {
            assert!((s.lab.l - target.l).abs() < 0.5);
            assert!((s.lab.a - target.a).abs() < 0.5);
            assert!((s.lab.b - target.b).abs() < 0.5);
        }
    }

    fn summary(mode_l: f64, count: u64) -> ClusterSummary {
        ClusterSummary {
            pixel_count: count,
            mode_l,
            mode_h: Some(40.0),
            mode_b: 20.0,
            centroid: CieLab::new(mode_l, 10.0, 20.0),
            kept: false,
        }
    }

    #[test]
    fn aggregate_keeps_top_three_equal_weights() {
        let clusters = vec![
            summary(70.0, 100),
            summary(65.0, 100),
            summary(60.0, 100),
            summary(30.0, 50),
            summary(20.0, 50),
        ];
        let score = aggregate_score(clusters, &ExtractionConfig::default());
        assert!((score.l_star - 65.0).abs() < 1e-12);
        assert_eq!(score.skin_pixel_count, 400);
        assert_eq!(score.clusters.iter().filter(|c| c.kept).count(), 3);
        assert!(score.clusters.iter().take(3).all(|c| c.kept));
    }

    #[test]
    fn aggregate_weights_by_pixel_count() {
        let clusters = vec![summary(70.0, 300), summary(65.0, 100), summary(60.0, 100)];
        let score = aggregate_score(clusters, &ExtractionConfig::default());
        assert!((score.l_star - 67.0).abs() < 1e-12);
    }

    #[test]
    fn aggregate_single_cluster_is_identity() {
        let score = aggregate_score(vec![summary(55.5, 42)], &ExtractionConfig::default());
        assert!((score.l_star - 55.5).abs() < 1e-12);
        assert_eq!(score.hue_deg, Some(40.0));
        assert_eq!(score.skin_pixel_count, 42);
    }

    #[test]
    fn kept_weights_normalize_and_bound_the_score() {
        let mut clusters = vec![
            summary(72.0, 37),
            summary(64.0, 211),
            summary(58.5, 90),
            summary(22.0, 60),
        ];
        for (i, c) in clusters.iter_mut().enumerate() {
            c.mode_h = Some(38.0 + 4.5 * i as f64);
        }
        let score = aggregate_score(clusters, &ExtractionConfig::default());
        let kept: Vec<_> = score.clusters.iter().filter(|c| c.kept).collect();
        let total: u64 = kept.iter().map(|c| c.pixel_count).sum();
        let weight_sum: f64 = kept
            .iter()
            .map(|c| c.pixel_count as f64 / total as f64)
            .sum();
        assert!((weight_sum - 1.0).abs() < 1e-12);
        let lo = kept.iter().map(|c| c.mode_l).fold(f64::INFINITY, f64::min);
        let hi = kept.iter().map(|c| c.mode_l).fold(f64::NEG_INFINITY, f64::max);
        assert!(score.l_star >= lo && score.l_star <= hi);
        let hues: Vec<f64> = kept.iter().filter_map(|c| c.mode_h).collect();
        let hue = score.hue_deg.unwrap();
        let h_lo = hues.iter().copied().fold(f64::INFINITY, f64::min);
        let h_hi = hues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        assert!(hue >= h_lo && hue <= h_hi);
    }

    #[test]
    fn score_image_uniform_recovers_color() {
        let img = uniform_fixture(CieLab::new(65.0, 15.0, 20.0), 8, 8);
        let score = score_image(&img, &SkinMask::full(8, 8), &ExtractionConfig::default()).unwrap();
        assert!((score.l_star - 65.0).abs() < 0.5, "l = {}", score.l_star);
        // The score must equal the point measurement of the quantized pixel
        // exactly; against the nominal color, 8-bit quantization can move
        // the hue by up to about a degree at this chroma.
        let pixel = crate::color::srgb_to_lab(img.pixel(0, 0));
        let pixel_hue = crate::color::hue_angle(pixel).unwrap().degrees;
        let hue = score.hue_deg.unwrap();
        assert!((hue - pixel_hue).abs() < 1e-9, "hue = {hue} vs pixel {pixel_hue}");
        // atan2(20, 15) = 53.130102 degrees.
        assert!((hue - 53.130102354156).abs() < 1.0, "hue = {hue}");
        assert_eq!(score.clusters.len(), 1);
    }

    #[test]
    fn score_image_is_deterministic() {
        let img = uniform_fixture(CieLab::new(55.0, 18.0, 14.0), 9, 9);
        let mask = SkinMask::from_fn(9, 9, |x, y| (x + y) % 3 != 0);
        let cfg = ExtractionConfig { seed: 123, ..Default::default() };
        let a = score_image(&img, &mask, &cfg).unwrap();
        let b = score_image(&img, &mask, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sample_order_does_not_change_the_score() {
        let lit = lab_to_srgb(CieLab::new(70.0, 14.0, 19.0)).unwrap();
        let shadow = lab_to_srgb(CieLab::new(20.0, 6.0, 8.0)).unwrap();
        let mut pixels = vec![lit; 60];
        pixels.extend(vec![shadow; 40]);
        let img = Raster::new(10, 10, pixels).unwrap();
        let samples = extract_skin_pixels(&img, &SkinMask::full(10, 10)).unwrap();
        let mut reversed = samples.clone();
        reversed.samples.reverse();
        let cfg = ExtractionConfig { k: 3, keep_top: 2, ..Default::default() };
        let a = score_samples(&samples, &cfg).unwrap();
        let b = score_samples(&reversed, &cfg).unwrap();
        assert_eq!(a.l_star, b.l_star);
        assert_eq!(a.hue_deg, b.hue_deg);
        assert_eq!(a.clusters, b.clusters);
    }

    #[test]
    fn sub_mask_of_uniform_image_scores_identically() {
        let img = uniform_fixture(CieLab::new(62.0, 12.0, 17.0), 12, 12);
        let cfg = ExtractionConfig::default();
        let full = score_image(&img, &SkinMask::full(12, 12), &cfg).unwrap();
        let sub = SkinMask::from_fn(12, 12, |x, y| x < 6 && y >= 3);
        let partial = score_image(&img, &sub, &cfg).unwrap();
        assert!((full.l_star - partial.l_star).abs() < 1e-9);
        assert_eq!(full.hue_deg.is_some(), partial.hue_deg.is_some());
        assert!((full.hue_deg.unwrap() - partial.hue_deg.unwrap()).abs() < 1e-9);
    }

    #[test]
    fn invalid_config_is_rejected() {
        let img = uniform_fixture(CieLab::new(65.0, 15.0, 20.0), 4, 4);
        let cfg = ExtractionConfig { k: 2, keep_top: 3, ..Default::default() };
        assert!(matches!(
            score_image(&img, &SkinMask::full(4, 4), &cfg).unwrap_err(),
            ExtractError::InvalidConfig(_)
        ));
    }

    proptest::proptest! {
        // Clustering must be a function of the sample multiset, not its
        // order: feed the same pixels in a permuted order and demand the
        // identical aggregate.
        #[test]
        fn shuffled_samples_score_identically(
            labs in proptest::collection::vec((0.0..100.0f64, -40.0..40.0f64, -40.0..40.0f64), 1..40),
            rotation in 0usize..40,
        ) {
            let samples = PixelSampleSet {
                samples: labs
                    .iter()
                    .map(|&(l, a, b)| {
                        let lab = CieLab::new(l, a, b);
                        PixelSample { lab, hue: crate::color::hue_angle(lab).ok() }
                    })
                    .collect(),
            };
            let mut rotated = samples.clone();
            rotated.samples.rotate_left(rotation % labs.len());
            let cfg = ExtractionConfig { k: 3, keep_top: 2, ..Default::default() };
            let x = score_samples(&samples, &cfg).unwrap();
            let y = score_samples(&rotated, &cfg).unwrap();
            proptest::prop_assert_eq!(x.l_star, y.l_star);
            proptest::prop_assert_eq!(x.hue_deg, y.hue_deg);
            proptest::prop_assert_eq!(x.ita_deg, y.ita_deg);
            proptest::prop_assert_eq!(&x.clusters, &y.clusters);
        }
    }

    #[test]
    fn rms_contrast_examples() {
        let uniform = uniform_fixture(CieLab::new(60.0, 10.0, 10.0), 4, 4);
        assert!(rms_contrast(&uniform).abs() < 1e-12);

        let mut pixels = vec![Srgb8::new(0, 0, 0); 8];
        pixels.extend(vec![Srgb8::new(255, 255, 255); 8]);
        let bw = Raster::new(4, 4, pixels).unwrap();
        assert!((rms_contrast(&bw) - 0.5).abs() < 1e-6);

        let g25 = lab_to_srgb(CieLab::new(25.0, 0.0, 0.0)).unwrap();
        let g75 = lab_to_srgb(CieLab::new(75.0, 0.0, 0.0)).unwrap();
        let mut pixels = vec![g25; 8];
        pixels.extend(vec![g75; 8]);
        let two_tone = Raster::new(4, 4, pixels).unwrap();
        assert!((rms_contrast(&two_tone) - 0.25).abs() < 5e-3);
    }

    #[test]
    fn masked_contrast_ignores_unmasked_pixels() {
        let g40 = lab_to_srgb(CieLab::new(40.0, 0.0, 0.0)).unwrap();
        let mut pixels = vec![Srgb8::new(255, 255, 255); 8];
        pixels.extend(vec![g40; 8]);
        let img = Raster::new(4, 4, pixels).unwrap();
        let bottom_half = SkinMask::from_fn(4, 4, |_, y| y >= 2);
        let c = rms_contrast_masked(&img, &bottom_half).unwrap();
        assert!(c.abs() < 1e-12, "contrast = {c}");
    }
}
