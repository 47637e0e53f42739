//! Ground-truth table synthesis.
//!
//! Base charts take multi-series random data; histogram and box-plot
//! tables are statistics computed from arrays drawn out of a pool of
//! twenty-one named probability distributions. Every operation is a pure
//! function of (config, seed).

pub mod vocab;

use crate::render::ChartType;
use crate::table::numfmt::canonical;
use crate::table::DataTable;
use rand::seq::index::sample as index_sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{self as sd, ContinuousCDF, DiscreteCDF};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

fn invalid(msg: impl Into<String>) -> SynthError {
    SynthError::InvalidParams(msg.into())
}

/// One of the twenty-one named distributions with its parameters.
///
/// Heavy-tailed kinds (Cauchy, Pareto, Student-t) are truncated at their
/// 0.1% / 99.9% quantiles so rendered axes stay legible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "kebab-case")]
pub enum DistributionKind {
    Uniform { lo: f64, hi: f64 },
    Normal { mean: f64, std: f64 },
    Lognormal { mu: f64, sigma: f64 },
    Exponential { rate: f64 },
    Gamma { shape: f64, rate: f64 },
    Beta { alpha: f64, beta: f64 },
    ChiSquare { freedom: f64 },
    StudentT { freedom: f64 },
    Laplace { location: f64, scale: f64 },
    CauchyTruncated { location: f64, scale: f64 },
    ParetoTruncated { scale: f64, shape: f64 },
    Weibull { shape: f64, scale: f64 },
    Triangular { lo: f64, mode: f64, hi: f64 },
    Logistic { location: f64, scale: f64 },
    Rayleigh { sigma: f64 },
    Poisson { lambda: f64 },
    Binomial { n: u64, p: f64 },
    Geometric { p: f64 },
    NegativeBinomial { r: f64, p: f64 },
    DiscreteUniform { lo: i64, hi: i64 },
    BimodalNormal { mean1: f64, std1: f64, mean2: f64, std2: f64, weight: f64 },
}

/// A distribution plus how many samples to draw from it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionSpec {
    #[serde(flatten)]
    pub kind: DistributionKind,
    pub n_samples: usize,
}

impl DistributionSpec {
    pub fn new(kind: DistributionKind, n_samples: usize) -> Self {
        DistributionSpec { kind, n_samples }
    }

    pub fn validate(&self) -> Result<(), SynthError> {
        if self.n_samples == 0 {
            return Err(invalid("n_samples must be positive"));
        }
        self.kind.validate()
    }
}

impl DistributionKind {
    pub fn validate(&self) -> Result<(), SynthError> {
        use DistributionKind::*;
        let pos = |v: f64, name: &str| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(invalid(format!("{name} must be positive and finite")))
            }
        };
        let prob = |v: f64, name: &str| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(invalid(format!("{name} must lie in [0, 1]")))
            }
        };
        match self {
            Uniform { lo, hi } => {
                if lo < hi && lo.is_finite() && hi.is_finite() {
                    Ok(())
                } else {
                    Err(invalid("uniform requires lo < hi"))
                }
            }
            Normal { std, .. } => pos(*std, "std"),
            Lognormal { sigma, .. } => pos(*sigma, "sigma"),
            Exponential { rate } => pos(*rate, "rate"),
            Gamma { shape, rate } => pos(*shape, "shape").and(pos(*rate, "rate")),
            Beta { alpha, beta } => pos(*alpha, "alpha").and(pos(*beta, "beta")),
            ChiSquare { freedom } | StudentT { freedom } => pos(*freedom, "freedom"),
            Laplace { scale, .. } | CauchyTruncated { scale, .. } => pos(*scale, "scale"),
            ParetoTruncated { scale, shape } => pos(*scale, "scale").and(pos(*shape, "shape")),
            Weibull { shape, scale } => pos(*shape, "shape").and(pos(*scale, "scale")),
            Triangular { lo, mode, hi } => {
                if lo < hi && (lo..=hi).contains(&mode) {
                    Ok(())
                } else {
                    Err(invalid("triangular requires lo <= mode <= hi and lo < hi"))
                }
            }
            Logistic { scale, .. } => pos(*scale, "scale"),
            Rayleigh { sigma } => pos(*sigma, "sigma"),
            Poisson { lambda } => pos(*lambda, "lambda"),
            Binomial { n, p } => {
                if *n == 0 {
                    return Err(invalid("binomial requires n >= 1"));
                }
                prob(*p, "p")
            }
            Geometric { p } => {
                if *p > 0.0 {
                    prob(*p, "p")
                } else {
                    Err(invalid("geometric requires p in (0, 1]"))
                }
            }
            NegativeBinomial { r, p } => {
                pos(*r, "r")?;
                if *p > 0.0 {
                    prob(*p, "p")
                } else {
                    Err(invalid("negative-binomial requires p in (0, 1]"))
                }
            }
            DiscreteUniform { lo, hi } => {
                if lo <= hi {
                    Ok(())
                } else {
                    Err(invalid("discrete-uniform requires lo <= hi"))
                }
            }
            BimodalNormal { std1, std2, weight, .. } => {
                pos(*std1, "std1").and(pos(*std2, "std2")).and(prob(*weight, "weight"))
            }
        }
    }

    /// Draws one value by inverse-transform sampling; `u` lies in [0, 1).
    fn draw(&self, u: f64, rng: &mut ChaCha8Rng) -> f64 {
        use DistributionKind::*;
        // keep quantiles finite at the extremes
        let u_open = u.clamp(1e-9, 1.0 - 1e-9);
        // truncation window for heavy tails
        let u_trunc = 0.001 + u * 0.998;
        match self {
            Uniform { lo, hi } => sd::Uniform::new(*lo, *hi).unwrap().inverse_cdf(u_open),
            Normal { mean, std } => sd::Normal::new(*mean, *std).unwrap().inverse_cdf(u_open),
            Lognormal { mu, sigma } => {
                sd::LogNormal::new(*mu, *sigma).unwrap().inverse_cdf(u_open)
            }
            Exponential { rate } => sd::Exp::new(*rate).unwrap().inverse_cdf(u_open),
            Gamma { shape, rate } => sd::Gamma::new(*shape, *rate).unwrap().inverse_cdf(u_open),
            Beta { alpha, beta } => sd::Beta::new(*alpha, *beta).unwrap().inverse_cdf(u_open),
            ChiSquare { freedom } => sd::ChiSquared::new(*freedom).unwrap().inverse_cdf(u_open),
            StudentT { freedom } => {
                sd::StudentsT::new(0.0, 1.0, *freedom).unwrap().inverse_cdf(u_trunc)
            }
            Laplace { location, scale } => {
                sd::Laplace::new(*location, *scale).unwrap().inverse_cdf(u_open)
            }
            CauchyTruncated { location, scale } => {
                sd::Cauchy::new(*location, *scale).unwrap().inverse_cdf(u_trunc)
            }
            ParetoTruncated { scale, shape } => {
                sd::Pareto::new(*scale, *shape).unwrap().inverse_cdf(u_trunc)
            }
            Weibull { shape, scale } => {
                sd::Weibull::new(*shape, *scale).unwrap().inverse_cdf(u_open)
            }
            Triangular { lo, mode, hi } => {
                sd::Triangular::new(*lo, *hi, *mode).unwrap().inverse_cdf(u_open)
            }
            Logistic { location, scale } => location + scale * (u_open / (1.0 - u_open)).ln(),
            Rayleigh { sigma } => sigma * (-2.0 * (1.0 - u_open).ln()).sqrt(),
            Poisson { lambda } => sd::Poisson::new(*lambda).unwrap().inverse_cdf(u_open) as f64,
            Binomial { n, p } => sd::Binomial::new(*p, *n).unwrap().inverse_cdf(u_open) as f64,
            Geometric { p } => sd::Geometric::new(*p).unwrap().inverse_cdf(u_open) as f64,
            NegativeBinomial { r, p } => {
                sd::NegativeBinomial::new(*r, *p).unwrap().inverse_cdf(u_open) as f64
            }
            DiscreteUniform { lo, hi } => {
                sd::DiscreteUniform::new(*lo, *hi).unwrap().inverse_cdf(u_open) as f64
            }
            BimodalNormal { mean1, std1, mean2, std2, weight } => {
                let (m, s) =
                    if rng.gen::<f64>() < *weight { (*mean1, *std1) } else { (*mean2, *std2) };
                sd::Normal::new(m, s).unwrap().inverse_cdf(u_open)
            }
        }
    }
}

/// Draws exactly `spec.n_samples` finite values, reproducible per seed.
pub fn sample_distribution(spec: &DistributionSpec, seed: u64) -> Result<Vec<f64>, SynthError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_with_rng(&spec.kind, spec.n_samples, &mut rng))
}

fn sample_with_rng(kind: &DistributionKind, n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n)
        .map(|_| {
            let u = rng.gen::<f64>();
            let v = kind.draw(u, rng);
            debug_assert!(v.is_finite());
            v
        })
        .collect()
}

/// Declarative synthesis configuration for one chart family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub seed: u64,
    pub chart_family: ChartType,
    #[serde(default = "default_rows")]
    pub rows: (usize, usize),
    #[serde(default = "default_cols")]
    pub cols: (usize, usize),
    #[serde(default = "default_value_range")]
    pub value_range: (f64, f64),
    /// Theme name from the bundled vocabulary; seeded pick when absent.
    #[serde(default)]
    pub label_vocabulary: Option<String>,
}

fn default_rows() -> (usize, usize) {
    (3, 8)
}

fn default_cols() -> (usize, usize) {
    (1, 4)
}

fn default_value_range() -> (f64, f64) {
    (1.0, 100.0)
}

impl SynthConfig {
    pub fn new(chart_family: ChartType, seed: u64) -> Self {
        SynthConfig {
            seed,
            chart_family,
            rows: default_rows(),
            cols: default_cols(),
            value_range: default_value_range(),
            label_vocabulary: None,
        }
    }
}

/// Synthesizes a table for a base chart family (everything except
/// histogram and box plots, which have their own generators).
///
/// Structural guarantees: pie tables get a single strictly positive
/// column; bubble tables get exactly three numeric columns (x, y, size)
/// with positive sizes; radar tables get 3 to 12 axes.
pub fn synth_series_table(config: &SynthConfig, seed: u64) -> DataTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let theme = config
        .label_vocabulary
        .as_deref()
        .and_then(vocab::by_name)
        .unwrap_or_else(|| vocab::pick(&mut rng));

    let family = config.chart_family;
    let (lo_r, hi_r) = config.rows;
    let rows = match family {
        ChartType::Radar => rng.gen_range(3..=12.min(theme.categories.len())),
        ChartType::Pie => rng.gen_range(lo_r.clamp(3, 8)..=hi_r.clamp(3, 8)),
        _ => rng.gen_range(lo_r.max(2)..=hi_r.max(2)).min(theme.categories.len()),
    };
    let cols = match family {
        ChartType::Pie => 1,
        ChartType::Bubble => 3,
        ChartType::Radar => rng.gen_range(1..=3),
        _ => rng.gen_range(config.cols.0.max(1)..=config.cols.1.max(1)),
    };

    let continuous_x = matches!(family, ChartType::Line | ChartType::Area);
    let (x_label, row_labels) = if continuous_x {
        let start = rng.gen_range(1985..=2015i64);
        ("Year".to_string(), (0..rows).map(|i| (start + i as i64).to_string()).collect())
    } else {
        let picks = index_sample(&mut rng, theme.categories.len(), rows);
        (
            theme.x_label.to_string(),
            picks.iter().map(|i| theme.categories[i].to_string()).collect::<Vec<_>>(),
        )
    };

    let quantity = theme.quantities[rng.gen_range(0..theme.quantities.len())].to_string();
    let col_labels: Vec<String> = match family {
        ChartType::Pie => vec![quantity.clone()],
        ChartType::Bubble => {
            let picks = index_sample(&mut rng, theme.quantities.len(), 2);
            vec![
                theme.quantities[picks.index(0)].to_string(),
                theme.quantities[picks.index(1)].to_string(),
                "Size".to_string(),
            ]
        }
        _ => {
            let picks = index_sample(&mut rng, theme.legends.len(), cols);
            picks.iter().map(|i| theme.legends[i].to_string()).collect()
        }
    };

    let (lo, hi) = ordered_range(config.value_range);
    // positive-only families keep values off zero
    let lo = match family {
        ChartType::Pie | ChartType::Radar | ChartType::Bubble => lo.max(1.0),
        _ => lo,
    };
    let hi = hi.max(lo + 1.0);

    let values: Vec<Vec<f64>> = if continuous_x {
        // per-series random walk so lines look like trends
        let mut columns: Vec<Vec<f64>> = Vec::with_capacity(cols);
        for _ in 0..cols {
            let mut v = rng.gen_range(lo..hi);
            let step = (hi - lo) / 8.0;
            let mut series = Vec::with_capacity(rows);
            for _ in 0..rows {
                series.push(v);
                v = (v + rng.gen_range(-step..step)).clamp(lo, hi);
            }
            columns.push(series);
        }
        (0..rows).map(|r| (0..cols).map(|c| canonical(columns[c][r])).collect()).collect()
    } else {
        (0..rows)
            .map(|_| (0..cols).map(|_| canonical(rng.gen_range(lo..hi))).collect())
            .collect()
    };

    let values = match family {
        ChartType::Pie | ChartType::Bubble | ChartType::Radar => positive_guard(values, family),
        _ => values,
    };

    let title = vocab::title(theme, &quantity, &mut rng);
    DataTable::from_numbers(title, x_label, quantity, row_labels, col_labels, values)
        .expect("synthesized tables satisfy the invariants")
}

/// Bumps any value that rounded to zero back onto the positive grid
/// (pie and radar values, bubble sizes must stay > 0).
fn positive_guard(mut values: Vec<Vec<f64>>, family: ChartType) -> Vec<Vec<f64>> {
    for row in &mut values {
        for (c, v) in row.iter_mut().enumerate() {
            let must_be_positive = family != ChartType::Bubble || c == 2;
            if must_be_positive && *v <= 0.0 {
                *v = 1.0;
            }
        }
    }
    values
}

fn ordered_range((a, b): (f64, f64)) -> (f64, f64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Bins samples from `spec` into `n_bins` equal-width intervals spanning
/// the observed range. Rows are "[lo, hi)" intervals (the final bin is
/// closed); the single column holds frequencies that always sum to
/// `n_samples`. A zero data range degenerates to one bin `[v, v]`.
pub fn synth_histogram_table(
    spec: &DistributionSpec,
    n_bins: usize,
    seed: u64,
) -> Result<DataTable, SynthError> {
    if n_bins < 2 {
        return Err(invalid("n_bins must be at least 2"));
    }
    let samples = sample_distribution(spec, seed)?;
    let lo = samples.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    let (labels, counts) = if lo == hi {
        let label = format!("[{v}, {v}]", v = crate::table::numfmt::format_number(lo));
        (vec![label], vec![samples.len() as f64])
    } else {
        let width = (hi - lo) / n_bins as f64;
        let mut counts = vec![0u64; n_bins];
        for &x in &samples {
            let idx = (((x - lo) / width) as usize).min(n_bins - 1);
            counts[idx] += 1;
        }
        let labels = bin_labels(lo, width, n_bins)?;
        (labels, counts.into_iter().map(|c| c as f64).collect())
    };

    let cells = counts.into_iter().map(|c| vec![c]).collect();
    DataTable::from_numbers(
        "Distribution of Samples",
        "Range",
        "Frequency",
        labels,
        vec!["Frequency".to_string()],
        cells,
    )
    .map_err(|e| invalid(format!("histogram table: {e}")))
}

/// Interval labels with just enough decimals to stay distinct.
fn bin_labels(lo: f64, width: f64, n_bins: usize) -> Result<Vec<String>, SynthError> {
    use crate::table::numfmt::format_with;
    for decimals in [2usize, 4, 6, 8, 10] {
        let labels: Vec<String> = (0..n_bins)
            .map(|i| {
                let a = format_with(lo + i as f64 * width, decimals);
                let b = format_with(lo + (i + 1) as f64 * width, decimals);
                let close = if i + 1 == n_bins { ']' } else { ')' };
                format!("[{a}, {b}{close}")
            })
            .collect();
        let mut dedup = labels.clone();
        dedup.sort_unstable();
        dedup.dedup();
        if dedup.len() == labels.len() {
            return Ok(labels);
        }
    }
    Err(invalid("bin width too small to label distinctly"))
}

/// Box-plot statistics for `n_groups` independent draws of `spec`.
///
/// Quantiles use linear interpolation between order statistics (the
/// common "type 7" rule). Whiskers sit at the most extreme observations
/// within 1.5 IQR of the box, then widen to contain the box itself so
/// min-whisker <= Q1 <= median <= Q3 <= max-whisker always holds.
pub fn synth_boxplot_table(
    spec: &DistributionSpec,
    n_groups: usize,
    seed: u64,
) -> Result<DataTable, SynthError> {
    if n_groups == 0 {
        return Err(invalid("n_groups must be at least 1"));
    }
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let theme = vocab::pick(&mut rng);
    let picks =
        index_sample(&mut rng, theme.categories.len(), n_groups.min(theme.categories.len()));
    let mut row_labels: Vec<String> =
        picks.iter().map(|i| theme.categories[i].to_string()).collect();
    // more groups than themed names: number the overflow
    for i in row_labels.len()..n_groups {
        row_labels.push(format!("Group {}", i + 1));
    }

    let mut cells = Vec::with_capacity(n_groups);
    for _ in 0..n_groups {
        let samples = sample_with_rng(&spec.kind, spec.n_samples, &mut rng);
        let s = five_number_summary(&samples);
        cells.push(vec![
            canonical(s.min_whisker),
            canonical(s.q1),
            canonical(s.median),
            canonical(s.q3),
            canonical(s.max_whisker),
        ]);
    }

    let quantity = theme.quantities[rng.gen_range(0..theme.quantities.len())].to_string();
    let title = vocab::title(theme, &quantity, &mut rng);
    DataTable::from_numbers(
        title,
        theme.x_label,
        quantity,
        row_labels,
        ["Min", "Q1", "Median", "Q3", "Max"].iter().map(|s| s.to_string()).collect(),
        cells,
    )
    .map_err(|e| invalid(format!("box table: {e}")))
}

/// Five box-plot statistics of one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxSummary {
    pub min_whisker: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max_whisker: f64,
}

pub fn five_number_summary(samples: &[f64]) -> BoxSummary {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let q1 = quantile_type7(&sorted, 0.25);
    let median = quantile_type7(&sorted, 0.5);
    let q3 = quantile_type7(&sorted, 0.75);
    let iqr = q3 - q1;
    let lo_fence = q1 - 1.5 * iqr;
    let hi_fence = q3 + 1.5 * iqr;
    let min_whisker =
        sorted.iter().cloned().find(|v| *v >= lo_fence).unwrap_or(sorted[0]).min(q1);
    let max_whisker = sorted
        .iter()
        .rev()
        .cloned()
        .find(|v| *v <= hi_fence)
        .unwrap_or(sorted[sorted.len() - 1])
        .max(q3);
    BoxSummary { min_whisker, q1, median, q3, max_whisker }
}

/// Quantile by linear interpolation between order statistics ("type 7").
pub fn quantile_type7(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n - 1) as f64 * p;
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    if lo + 1 >= n {
        sorted[n - 1]
    } else {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_uniform_support() {
        let spec = DistributionSpec::new(DistributionKind::DiscreteUniform { lo: 1, hi: 6 }, 1000);
        let samples = sample_distribution(&spec, 7).unwrap();
        assert_eq!(samples.len(), 1000);
        assert!(samples.iter().all(|v| (1.0..=6.0).contains(v) && v.fract() == 0.0));
    }

    #[test]
    fn normal_sample_mean_near_zero() {
        let spec = DistributionSpec::new(DistributionKind::Normal { mean: 0.0, std: 1.0 }, 10_000);
        let samples = sample_distribution(&spec, 42).unwrap();
        let mean = samples.iter().sum::<f64>() / samples.len() as f64;
        assert!(mean.abs() < 0.05, "sample mean {mean} drifted");
    }

    #[test]
    fn zero_samples_is_invalid() {
        let spec = DistributionSpec::new(DistributionKind::Normal { mean: 0.0, std: 1.0 }, 0);
        assert!(sample_distribution(&spec, 1).is_err());
    }

    #[test]
    fn bad_params_are_invalid() {
        for kind in [
            DistributionKind::Normal { mean: 0.0, std: -1.0 },
            DistributionKind::Beta { alpha: 0.0, beta: 2.0 },
            DistributionKind::Uniform { lo: 3.0, hi: 3.0 },
            DistributionKind::Triangular { lo: 0.0, mode: 5.0, hi: 1.0 },
            DistributionKind::Geometric { p: 0.0 },
        ] {
            assert!(DistributionSpec::new(kind, 10).validate().is_err());
        }
    }

    #[test]
    fn all_kinds_sample_finite() {
        use DistributionKind::*;
        let kinds = vec![
            Uniform { lo: -2.0, hi: 9.0 },
            Normal { mean: 5.0, std: 2.0 },
            Lognormal { mu: 0.0, sigma: 0.5 },
            Exponential { rate: 0.7 },
            Gamma { shape: 2.0, rate: 1.5 },
            Beta { alpha: 2.0, beta: 3.0 },
            ChiSquare { freedom: 4.0 },
            StudentT { freedom: 2.0 },
            Laplace { location: 1.0, scale: 2.0 },
            CauchyTruncated { location: 0.0, scale: 1.0 },
            ParetoTruncated { scale: 1.0, shape: 1.2 },
            Weibull { shape: 1.5, scale: 3.0 },
            Triangular { lo: 0.0, mode: 2.0, hi: 10.0 },
            Logistic { location: 0.0, scale: 1.0 },
            Rayleigh { sigma: 2.0 },
            Poisson { lambda: 4.0 },
            Binomial { n: 20, p: 0.3 },
            Geometric { p: 0.25 },
            NegativeBinomial { r: 3.0, p: 0.4 },
            DiscreteUniform { lo: -3, hi: 12 },
            BimodalNormal { mean1: -2.0, std1: 0.5, mean2: 3.0, std2: 1.0, weight: 0.4 },
        ];
        assert_eq!(kinds.len(), 21);
        for kind in kinds {
            let spec = DistributionSpec::new(kind.clone(), 200);
            let samples = sample_distribution(&spec, 11).unwrap();
            assert!(samples.iter().all(|v| v.is_finite()), "non-finite from {kind:?}");
            // reproducible per seed
            assert_eq!(samples, sample_distribution(&spec, 11).unwrap());
        }
    }

    #[test]
    fn pie_tables_are_single_positive_column() {
        for seed in 0..20 {
            let config = SynthConfig::new(ChartType::Pie, seed);
            let t = synth_series_table(&config, seed);
            assert_eq!(t.cols(), 1);
            assert!(t.column_numbers(0).unwrap().iter().all(|v| *v > 0.0));
        }
    }

    #[test]
    fn bubble_tables_have_three_columns_with_positive_size() {
        for seed in 0..20 {
            let config = SynthConfig::new(ChartType::Bubble, seed);
            let t = synth_series_table(&config, seed);
            assert_eq!(t.cols(), 3);
            assert!(t.column_numbers(2).unwrap().iter().all(|v| *v > 0.0));
        }
    }

    #[test]
    fn radar_axis_count_in_range() {
        for seed in 0..20 {
            let config = SynthConfig::new(ChartType::Radar, seed);
            let t = synth_series_table(&config, seed);
            assert!((3..=12).contains(&t.rows()));
        }
    }

    #[test]
    fn same_seed_same_table() {
        let config = SynthConfig::new(ChartType::Bar, 99);
        assert_eq!(synth_series_table(&config, 5), synth_series_table(&config, 5));
    }

    #[test]
    fn histogram_counts_sum_to_n_samples() {
        let spec = DistributionSpec::new(DistributionKind::Normal { mean: 0.0, std: 2.0 }, 1000);
        let t = synth_histogram_table(&spec, 8, 3).unwrap();
        let total: f64 = t.column_numbers(0).unwrap().iter().sum();
        assert_eq!(total, 1000.0);
    }

    #[test]
    fn degenerate_histogram_is_single_bin() {
        let spec = DistributionSpec::new(DistributionKind::DiscreteUniform { lo: 4, hi: 4 }, 50);
        let t = synth_histogram_table(&spec, 5, 1).unwrap();
        assert_eq!(t.rows(), 1);
        assert_eq!(t.row_labels()[0], "[4, 4]");
        assert_eq!(t.cell(0, 0).as_number(), Some(50.0));
    }

    #[test]
    fn histogram_uniform_bins_are_balanced() {
        let spec =
            DistributionSpec::new(DistributionKind::Uniform { lo: 0.0, hi: 10.0 }, 100_000);
        let t = synth_histogram_table(&spec, 10, 17).unwrap();
        for v in t.column_numbers(0).unwrap() {
            assert!((v - 10_000.0).abs() <= 500.0, "bin count {v} outside 5%");
        }
    }

    #[test]
    fn quantiles_match_declared_rule() {
        let sorted: Vec<f64> = (1..=100).map(|v| v as f64).collect();
        assert_eq!(quantile_type7(&sorted, 0.25), 25.75);
        assert_eq!(quantile_type7(&sorted, 0.5), 50.5);
        assert_eq!(quantile_type7(&sorted, 0.75), 75.25);
    }

    #[test]
    fn constant_samples_collapse_box() {
        let s = five_number_summary(&[7.0; 40]);
        assert_eq!(
            (s.min_whisker, s.q1, s.median, s.q3, s.max_whisker),
            (7.0, 7.0, 7.0, 7.0, 7.0)
        );
    }

    #[test]
    fn box_statistics_are_ordered_across_specs() {
        use DistributionKind::*;
        let kinds = [
            Normal { mean: 10.0, std: 3.0 },
            Exponential { rate: 0.2 },
            CauchyTruncated { location: 0.0, scale: 2.0 },
            DiscreteUniform { lo: 0, hi: 3 },
        ];
        let mut checked = 0;
        for (i, kind) in kinds.iter().enumerate() {
            for seed in 0..125 {
                let spec = DistributionSpec::new(kind.clone(), 60);
                let t = synth_boxplot_table(&spec, 2, seed * 4 + i as u64).unwrap();
                for r in 0..t.rows() {
                    let v = t.row_numbers(r).unwrap();
                    assert!(
                        v[0] <= v[1] && v[1] <= v[2] && v[2] <= v[3] && v[3] <= v[4],
                        "unordered box row {v:?} from {kind:?} seed {seed}"
                    );
                    checked += 1;
                }
            }
        }
        assert!(checked >= 500);
    }
}
