//! One-tailed Wilcoxon signed-rank test, summary statistics and the bundled
//! news-engagement dataset.

use std::path::Path;

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PairedSample {
    pub pairs: Vec<(f64, f64)>,
    pub labels: Option<Vec<String>>,
}

impl PairedSample {
    pub fn new(pairs: Vec<(f64, f64)>) -> Self {
        PairedSample { pairs, labels: None }
    }

    pub fn from_columns(x: &[f64], y: &[f64]) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::input(format!(
                "paired columns differ in length ({} vs {})",
                x.len(),
                y.len()
            )));
        }
        Ok(Self::new(x.iter().copied().zip(y.iter().copied()).collect()))
    }
}

/// Direction of the one-sided alternative hypothesis on `x - y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Alternative {
    /// `x` tends to be smaller than `y`.
    XLess,
    /// `x` tends to be larger than `y`.
    XGreater,
}

impl std::str::FromStr for Alternative {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x_less" | "less" => Ok(Alternative::XLess),
            "x_greater" | "greater" => Ok(Alternative::XGreater),
            other => Err(Error::input(format!("unknown alternative `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WilcoxonMethod {
    Exact,
    NormalApproximation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonOptions {
    /// Largest effective sample size handled by exact enumeration.
    pub exact_max_n: usize,
    pub continuity_correction: bool,
}

impl Default for WilcoxonOptions {
    fn default() -> Self {
        WilcoxonOptions {
            exact_max_n: 25,
            continuity_correction: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonResult {
    /// `W+`: sum of the ranks of positive differences `x - y`.
    pub statistic: f64,
    pub p_one_tailed: f64,
    /// Pairs left after dropping zero differences.
    pub n_effective: usize,
    pub method: WilcoxonMethod,
    /// Standardized statistic, for the normal approximation.
    pub z: Option<f64>,
    pub continuity_correction: bool,
}

/// Average ranks (1-based) of `values`, ties sharing their mean rank.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

fn standard_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

/// Exact null distribution of `2 W+` for the given ranks: entry `s` counts
/// the sign assignments whose doubled positive-rank sum equals `s`.
fn doubled_rank_sum_counts(ranks: &[f64]) -> Vec<f64> {
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let total: usize = doubled.iter().sum();
    let mut counts = vec![0.0f64; total + 1];
    counts[0] = 1.0;
    let mut reach = 0;
    for &r in &doubled {
        for s in (0..=reach).rev() {
            if counts[s] != 0.0 {
                counts[s + r] += counts[s];
            }
        }
        reach += r;
    }
    counts
}

pub fn wilcoxon_one_tailed(sample: &PairedSample, alternative: Alternative) -> Result<WilcoxonResult> {
    wilcoxon_with_options(sample, alternative, &WilcoxonOptions::default())
}

/// Wilcoxon signed-rank test on `d = x - y`, zero differences dropped.
pub fn wilcoxon_with_options(
    sample: &PairedSample,
    alternative: Alternative,
    options: &WilcoxonOptions,
) -> Result<WilcoxonResult> {
    if sample.pairs.is_empty() {
        return Err(Error::input("paired sample is empty"));
    }
    if sample.pairs.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::input("paired sample contains non-finite values"));
    }
    let diffs: Vec<f64> = sample
        .pairs
        .iter()
        .map(|(x, y)| x - y)
        .filter(|&d| d != 0.0)
        .collect();
    if diffs.is_empty() {
        return Err(Error::DegenerateSample);
    }
    let n = diffs.len();
    let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let ranks = average_ranks(&abs);
    let w_plus: f64 = diffs
        .iter()
        .zip(&ranks)
        .filter(|(d, _)| **d > 0.0)
        .map(|(_, r)| r)
        .sum();

    if n <= options.exact_max_n {
        let counts = doubled_rank_sum_counts(&ranks);
        let observed = (2.0 * w_plus).round() as usize;
        let tail: f64 = match alternative {
            Alternative::XLess => counts[..=observed].iter().sum(),
            Alternative::XGreater => counts[observed..].iter().sum(),
        };
        let p = tail / 2f64.powi(n as i32);
        return Ok(WilcoxonResult {
            statistic: w_plus,
            p_one_tailed: p.min(1.0),
            n_effective: n,
            method: WilcoxonMethod::Exact,
            z: None,
            continuity_correction: false,
        });
    }

    let nf = n as f64;
    let mean = nf * (nf + 1.0) / 4.0;
    let tie_term: f64 = {
        let mut sorted = abs.clone();
        sorted.sort_by(f64::total_cmp);
        sorted
            .chunk_by(|a, b| a == b)
            .map(|g| {
                let t = g.len() as f64;
                t * t * t - t
            })
            .sum()
    };
    let variance = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - tie_term / 48.0;
    let mut shift = w_plus - mean;
    if options.continuity_correction {
        // Move toward the mean by half a unit.
        shift -= 0.5 * shift.signum();
    }
    let z = shift / variance.sqrt();
    let p = match alternative {
        Alternative::XLess => standard_normal_cdf(z),
        Alternative::XGreater => standard_normal_cdf(-z),
    };
    Ok(WilcoxonResult {
        statistic: w_plus,
        p_one_tailed: p.clamp(f64::MIN_POSITIVE, 1.0),
        n_effective: n,
        method: WilcoxonMethod::NormalApproximation,
        z: Some(z),
        continuity_correction: options.continuity_correction,
    })
}

/// Paired comparison of a strategy (`x`) against a baseline (`y`).
pub fn compare_strategies(sample: &PairedSample, alternative: Alternative) -> Result<WilcoxonResult> {
    wilcoxon_one_tailed(sample, alternative)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    pub median: f64,
}

pub fn summarize(values: &[f64]) -> Result<Summary> {
    if values.is_empty() {
        return Err(Error::input("cannot summarize an empty sequence"));
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    let median = if sorted.len() % 2 == 0 {
        0.5 * (sorted[mid - 1] + sorted[mid])
    } else {
        sorted[mid]
    };
    Ok(Summary { mean, median })
}

/// Engagement counts for one news item and its fact-check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngagementRecord {
    pub news_id: u32,
    #[serde(rename = "true")]
    pub true_engagement: u64,
    #[serde(rename = "false")]
    pub false_engagement: u64,
}

const BUNDLED_ENGAGEMENT: &str = include_str!("../../../data/engagement.csv");

pub fn parse_engagement_csv<R: std::io::Read>(reader: R) -> Result<Vec<EngagementRecord>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let records: Vec<EngagementRecord> = rdr.deserialize().collect::<std::result::Result<_, _>>()?;
    let mut ids: Vec<u32> = records.iter().map(|r| r.news_id).collect();
    ids.sort_unstable();
    if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::input(format!("duplicate news_id {}", w[0])));
    }
    Ok(records)
}

pub fn load_engagement_csv(path: impl AsRef<Path>) -> Result<Vec<EngagementRecord>> {
    parse_engagement_csv(std::fs::File::open(path)?)
}

/// The 134 true/false engagement pairs shipped in `data/engagement.csv`.
pub fn bundled_engagement() -> Vec<EngagementRecord> {
    parse_engagement_csv(BUNDLED_ENGAGEMENT.as_bytes()).expect("bundled engagement data is valid")
}

/// Pairs with `x` = true-news engagement and `y` = false-news engagement.
pub fn engagement_sample(records: &[EngagementRecord]) -> PairedSample {
    PairedSample {
        pairs: records
            .iter()
            .map(|r| (r.true_engagement as f64, r.false_engagement as f64))
            .collect(),
        labels: Some(records.iter().map(|r| r.news_id.to_string()).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn average_ranks_with_ties() {
        assert_eq!(average_ranks(&[3.0, 1.0, 3.0, 2.0]), vec![3.5, 1.0, 3.5, 2.0]);
    }

    #[test]
    fn five_positive_pairs_exact() {
        let sample = PairedSample::new((1..=5).map(|i| (i as f64 + 1.0, 0.5)).collect());
        let r = wilcoxon_one_tailed(&sample, Alternative::XGreater).unwrap();
        assert_eq!(r.method, WilcoxonMethod::Exact);
        assert_eq!(r.p_one_tailed, 1.0 / 32.0);
        assert_eq!(r.statistic, 15.0);
        let r = wilcoxon_one_tailed(&sample, Alternative::XLess).unwrap();
        assert_eq!(r.p_one_tailed, 1.0);
    }

    #[test]
    fn identical_pairs_are_degenerate() {
        let sample = PairedSample::new(vec![(1.0, 1.0); 6]);
        assert!(matches!(
            wilcoxon_one_tailed(&sample, Alternative::XLess),
            Err(Error::DegenerateSample)
        ));
    }

    #[test]
    fn zero_differences_are_dropped() {
        let sample = PairedSample::new(vec![(1.0, 1.0), (3.0, 1.0), (2.0, 0.0), (5.0, 5.0)]);
        let r = wilcoxon_one_tailed(&sample, Alternative::XGreater).unwrap();
        assert_eq!(r.n_effective, 2);
        // tied ranks 1.5 each; both positive -> 1 of 4 sign patterns
        assert_eq!(r.p_one_tailed, 0.25);
    }

    #[test]
    fn normal_path_for_large_samples() {
        let sample = PairedSample::new((0..40).map(|i| (i as f64 + 1.0, 0.0)).collect());
        let r = wilcoxon_one_tailed(&sample, Alternative::XGreater).unwrap();
        assert_eq!(r.method, WilcoxonMethod::NormalApproximation);
        assert!(r.p_one_tailed < 1e-7);
        let corrected = wilcoxon_with_options(
            &sample,
            Alternative::XGreater,
            &WilcoxonOptions { continuity_correction: true, ..Default::default() },
        )
        .unwrap();
        assert!(corrected.p_one_tailed > r.p_one_tailed);
    }

    #[test]
    fn summaries() {
        let s = summarize(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!((s.mean, s.median), (2.5, 2.5));
        assert_eq!(summarize(&[5.0, 1.0, 3.0]).unwrap().median, 3.0);
        assert!(summarize(&[]).is_err());
    }

    #[test]
    fn bundled_data_shape() {
        let records = bundled_engagement();
        assert_eq!(records.len(), 134);
        assert_eq!(records[2].false_engagement, 20_083_196);
        let t: Vec<f64> = records.iter().map(|r| r.true_engagement as f64).collect();
        let s = summarize(&t).unwrap();
        assert_eq!(s.median, 1587.5);
        assert_abs_diff_eq!(s.mean, 2729.0, epsilon = 1.0);
    }

    #[test]
    fn duplicate_news_ids_rejected() {
        let text = "news_id,true,false\n1,2,3\n1,4,5\n";
        assert!(parse_engagement_csv(text.as_bytes()).is_err());
    }
}
