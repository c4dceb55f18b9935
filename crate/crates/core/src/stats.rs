//! Welch's two-sample t-test and Bonferroni correction for group
//! comparisons, backed by a continued-fraction regularized incomplete beta.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("need at least {required} samples per group, got {got}")]
    InsufficientSample { required: usize, got: usize },
    #[error("p-value {0} outside [0, 1]")]
    InvalidP(f64),
}

/// Result of one Welch two-sample test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TTestResult {
    pub t: f64,
    /// Welch-Satterthwaite degrees of freedom.
    pub df: f64,
    /// Two-sided p-value.
    pub p: f64,
    pub mean_a: f64,
    pub mean_b: f64,
    pub n_a: usize,
    pub n_b: usize,
}

const BETA_TOL: f64 = 1e-12;
const BETA_MAX_ITERS: usize = 300;

// Lanczos approximation, g = 7, 9 terms.
#[allow(clippy::excessive_precision)] // published coefficient values
fn ln_gamma(x: f64) -> f64 {
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // Reflection for the left half-plane.
        let pi = std::f64::consts::PI;
        return pi.ln() - (pi * x).sin().ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = COEF[0];
    for (i, c) in COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

// Continued fraction for the incomplete beta (Lentz's method).
fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=BETA_MAX_ITERS {
        let m = m as f64;
        let m2 = 2.0 * m;

        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;

        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < BETA_TOL {
            break;
        }
    }
    h
}

/// Regularized incomplete beta function I_x(a, b).
pub fn reg_inc_beta(a: f64, b: f64, x: f64) -> f64 {
    assert!(a > 0.0 && b > 0.0, "shape parameters must be positive");
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front =
        ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(a, b, x) / a
    } else {
        1.0 - front * beta_cf(b, a, 1.0 - x) / b
    }
}

/// CDF of Student's t-distribution with `df` degrees of freedom.
pub fn student_t_cdf(x: f64, df: f64) -> f64 {
    assert!(df > 0.0, "degrees of freedom must be positive");
    if x == 0.0 {
        return 0.5;
    }
    let tail = reg_inc_beta(df / 2.0, 0.5, df / (df + x * x)) / 2.0;
    if x > 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

/// Two-sided p-value for a t statistic.
pub fn student_t_two_sided_p(t: f64, df: f64) -> f64 {
    if t.is_infinite() {
        return 0.0;
    }
    reg_inc_beta(df / 2.0, 0.5, df / (df + t * t))
}

fn mean_and_var(sample: &[f64]) -> (f64, f64) {
    let n = sample.len() as f64;
    let mean = sample.iter().sum::<f64>() / n;
    let var = sample.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

/// Welch's unequal-variance two-sample t-test, two-sided.
///
/// Two constant samples with equal means are reported as t = 0, p = 1
/// rather than NaN.
pub fn welch_t_test(a: &[f64], b: &[f64]) -> Result<TTestResult, StatsError> {
    for sample in [a, b] {
        if sample.len() < 2 {
            return Err(StatsError::InsufficientSample {
                required: 2,
                got: sample.len(),
            });
        }
    }
    let (n_a, n_b) = (a.len(), b.len());
    let (mean_a, var_a) = mean_and_var(a);
    let (mean_b, var_b) = mean_and_var(b);
    let sa = var_a / n_a as f64;
    let sb = var_b / n_b as f64;
    let se2 = sa + sb;

    let (t, df, p) = if se2 == 0.0 {
        let df = (n_a + n_b - 2) as f64;
        if mean_a == mean_b {
            (0.0, df, 1.0)
        } else {
            (f64::INFINITY.copysign(mean_a - mean_b), df, 0.0)
        }
    } else {
        let t = (mean_a - mean_b) / se2.sqrt();
        let df = se2 * se2
            / (sa * sa / (n_a as f64 - 1.0) + sb * sb / (n_b as f64 - 1.0));
        (t, df, student_t_two_sided_p(t, df))
    };

    Ok(TTestResult {
        t,
        df,
        p,
        mean_a,
        mean_b,
        n_a,
        n_b,
    })
}

/// Bonferroni adjustment: multiply each p-value by the family size, clip
/// at 1. Order is preserved.
pub fn bonferroni(p_values: &[f64]) -> Result<Vec<f64>, StatsError> {
    for &p in p_values {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(StatsError::InvalidP(p));
        }
    }
    let m = p_values.len() as f64;
    Ok(p_values.iter().map(|&p| (m * p).min(1.0)).collect())
}

/// One Welch test per unordered group pair, Bonferroni-adjusted over the
/// number of pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupPairTest {
    pub group_a: String,
    pub group_b: String,
    pub test: TTestResult,
    pub p_adjusted: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseTests {
    pub groups: Vec<String>,
    pub tests: Vec<GroupPairTest>,
}

impl PairwiseTests {
    /// Look up the test for a pair in either order.
    pub fn get(&self, a: &str, b: &str) -> Option<&GroupPairTest> {
        self.tests.iter().find(|t| {
            (t.group_a == a && t.group_b == b) || (t.group_a == b && t.group_b == a)
        })
    }
}

pub fn pairwise_group_tests(
    values: &BTreeMap<String, Vec<f64>>,
) -> Result<PairwiseTests, StatsError> {
    if values.len() < 2 {
        return Err(StatsError::InsufficientSample {
            required: 2,
            got: values.len(),
        });
    }
    let groups: Vec<String> = values.keys().cloned().collect();
    let mut tests = Vec::new();
    for i in 0..groups.len() {
        for j in (i + 1)..groups.len() {
            let test = welch_t_test(&values[&groups[i]], &values[&groups[j]])?;
            tests.push(GroupPairTest {
                group_a: groups[i].clone(),
                group_b: groups[j].clone(),
                test,
                p_adjusted: 0.0,
            });
        }
    }
    let raw: Vec<f64> = tests.iter().map(|t| t.test.p).collect();
    let adjusted = bonferroni(&raw)?;
    for (t, p) in tests.iter_mut().zip(adjusted) {
        t.p_adjusted = p;
    }
    Ok(PairwiseTests { groups, tests })
}
