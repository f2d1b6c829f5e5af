//! Validation statistics: cluster-occupancy chi-squared ensembles with a
//! Gaussian summary, the two center-separation figures of merit, and the
//! Bayesian cumulative log-odds slope.
//!
//! The chi-squared protocol repeatedly draws a fixed number of events from a
//! test pool, sends them into the trained clusters, and compares the
//! occupancy against the bona fide training counts with a two-sample
//! contingency statistic. Over many trials the statistic is Gaussian; its
//! center moves up as the pool's photon indistinguishability rises, which is
//! the validation signal.

use std::collections::HashSet;
use std::io::Write;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cluster::ClusterModel;
use crate::error::Error;
use crate::pattern::binomial;
use crate::prob::DistributionTable;
use crate::sampler::EventSet;
use crate::seed::{seeded_rng, subseed_indexed};
use crate::Result;

/// FWHM of a Gaussian per unit standard deviation, `2 sqrt(2 ln 2)`.
pub fn fwhm_per_sigma() -> f64 {
    (8.0 * 2.0_f64.ln()).sqrt()
}

/// Expected-count rule for the chi-squared statistic over a k x 2
/// cluster-occupancy table.
///
/// `UniformReference` expects each sampler's events to spread evenly over
/// the clusters, `E_ij = N_j / k`; the statistic then measures how
/// concentrated each column's occupancy is, which is the signal that tracks
/// photon indistinguishability. `Standard` is the textbook two-sample
/// homogeneity form, `E_ij = N_i N_j / N_total`, zero exactly when the two
/// columns are proportional. `VerbatimEq6` is the `N_i N_j / k` form some of
/// the literature prints; its expected counts do not sum to the observed
/// total, and it is kept for comparison only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Chi2Formula {
    UniformReference,
    Standard,
    VerbatimEq6,
}

impl Chi2Formula {
    pub fn name(&self) -> &'static str {
        match self {
            Chi2Formula::UniformReference => "uniform-reference",
            Chi2Formula::Standard => "standard",
            Chi2Formula::VerbatimEq6 => "verbatim-eq6",
        }
    }
}

/// Chi-squared statistic over a k x 2 count table under the chosen
/// expected-count rule. For the two contingency forms, rows whose total is
/// zero contribute nothing; under the uniform reference every cluster has a
/// positive expected count and all k rows contribute.
pub fn chi2_statistic(counts: &[[u64; 2]], formula: Chi2Formula) -> Result<f64> {
    let k = counts.len();
    if k < 2 {
        return Err(Error::TooFewClusters { k });
    }
    let col: [u64; 2] = counts.iter().fold([0, 0], |acc, row| {
        [acc[0] + row[0], acc[1] + row[1]]
    });
    for (j, &c) in col.iter().enumerate() {
        if c == 0 {
            return Err(Error::ZeroColumnSum { column: j });
        }
    }
    let mut chi2 = 0.0;
    match formula {
        Chi2Formula::UniformReference => {
            for row in counts {
                for j in 0..2 {
                    let expected = col[j] as f64 / k as f64;
                    let diff = row[j] as f64 - expected;
                    chi2 += diff * diff / expected;
                }
            }
        }
        Chi2Formula::Standard | Chi2Formula::VerbatimEq6 => {
            let denom = match formula {
                Chi2Formula::Standard => (col[0] + col[1]) as f64,
                _ => k as f64,
            };
            for row in counts {
                let row_sum = row[0] + row[1];
                if row_sum == 0 {
                    continue;
                }
                for j in 0..2 {
                    let expected = row_sum as f64 * col[j] as f64 / denom;
                    let diff = row[j] as f64 - expected;
                    chi2 += diff * diff / expected;
                }
            }
        }
    }
    Ok(chi2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitMethod {
    Moments,
    HistogramLsq,
}

impl FitMethod {
    pub fn name(&self) -> &'static str {
        match self {
            FitMethod::Moments => "moments",
            FitMethod::HistogramLsq => "histogram-lsq",
        }
    }
}

/// Gaussian center and full width at half maximum of a value ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianSummary {
    pub center: f64,
    pub fwhm: f64,
    pub method: FitMethod,
}

/// Fit a Gaussian summary to an ensemble of values.
///
/// The default moments method is binning-free: center = sample mean,
/// FWHM = `2 sqrt(2 ln 2)` times the sample standard deviation. The
/// histogram method least-squares fits a parabola to the log of a 64-bin
/// histogram (count-weighted) and serves as a cross-check.
pub fn gaussian_fit(values: &[f64], method: FitMethod) -> Result<GaussianSummary> {
    if values.len() < 2 {
        return Err(Error::TooFewValues {
            needed: 2,
            got: values.len(),
        });
    }
    match method {
        FitMethod::Moments => {
            let n = values.len() as f64;
            let mean = values.iter().sum::<f64>() / n;
            let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
            Ok(GaussianSummary {
                center: mean,
                fwhm: fwhm_per_sigma() * var.sqrt(),
                method,
            })
        }
        FitMethod::HistogramLsq => histogram_fit(values),
    }
}

// Log-parabola fit: for bins with positive counts, ln(count) is quadratic in
// the bin center when the ensemble is Gaussian; weighting by count keeps the
// noisy tail bins from dominating.
fn histogram_fit(values: &[f64]) -> Result<GaussianSummary> {
    const BINS: usize = 64;
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max == min {
        return Ok(GaussianSummary {
            center: min,
            fwhm: 0.0,
            method: FitMethod::HistogramLsq,
        });
    }
    let width = (max - min) / BINS as f64;
    let mut counts = [0u64; BINS];
    for &v in values {
        let bin = (((v - min) / width) as usize).min(BINS - 1);
        counts[bin] += 1;
    }
    // weighted normal equations for y = a + b x + c x^2
    let mut s = [0.0f64; 5]; // sum of w x^p, p = 0..4
    let mut t = [0.0f64; 3]; // sum of w y x^p, p = 0..2
    for (bin, &count) in counts.iter().enumerate() {
        if count == 0 {
            continue;
        }
        let x = min + (bin as f64 + 0.5) * width;
        let y = (count as f64).ln();
        let w = count as f64;
        let mut xp = 1.0;
        for p in 0..5 {
            s[p] += w * xp;
            if p < 3 {
                t[p] += w * y * xp;
            }
            xp *= x;
        }
    }
    let det3 = |m: [[f64; 3]; 3]| -> f64 {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let a = [[s[0], s[1], s[2]], [s[1], s[2], s[3]], [s[2], s[3], s[4]]];
    let d = det3(a);
    if d.abs() < 1e-12 {
        return Err(Error::DegenerateEnsemble(
            "histogram fit: singular normal equations".into(),
        ));
    }
    let col = |idx: usize| {
        let mut mat = a;
        for row in 0..3 {
            mat[row][idx] = t[row];
        }
        det3(mat) / d
    };
    let b = col(1);
    let c = col(2);
    if c >= 0.0 {
        return Err(Error::DegenerateEnsemble(
            "histogram fit: log-histogram is not concave".into(),
        ));
    }
    let sigma2 = -1.0 / (2.0 * c);
    Ok(GaussianSummary {
        center: -b / (2.0 * c),
        fwhm: fwhm_per_sigma() * sigma2.sqrt(),
        method: FitMethod::HistogramLsq,
    })
}

/// Repeated chi-squared test values for one (model, pool) pairing.
#[derive(Debug, Clone)]
pub struct Chi2Ensemble {
    values: Vec<f64>,
    events_per_trial: usize,
    x_ind: Option<f64>,
    formula: Chi2Formula,
    gaussian: Option<GaussianSummary>,
}

impl Chi2Ensemble {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn trials(&self) -> usize {
        self.values.len()
    }

    pub fn events_per_trial(&self) -> usize {
        self.events_per_trial
    }

    /// Indistinguishability of the pool's law, when the law has one.
    pub fn x_ind(&self) -> Option<f64> {
        self.x_ind
    }

    pub fn formula(&self) -> Chi2Formula {
        self.formula
    }

    /// Moments fit of the ensemble; absent when fewer than two trials ran.
    pub fn gaussian(&self) -> Option<&GaussianSummary> {
        self.gaussian.as_ref()
    }

    /// Standard error of the fitted center, `sigma / sqrt(trials)`.
    pub fn center_stderr(&self) -> Option<f64> {
        let g = self.gaussian.as_ref()?;
        Some(g.fwhm / fwhm_per_sigma() / (self.trials() as f64).sqrt())
    }

    /// CSV with header `trial_index,chi2`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "trial_index,chi2")?;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(w, "{i},{v}")?;
        }
        Ok(())
    }
}

/// Run the chi-squared protocol: per trial, draw `events_per_trial` events
/// from the pool without replacement (independent draws across trials, each
/// trial sub-seeded from `seed`), send them into the clusters, and test the
/// occupancy against the model's bona fide member counts.
pub fn chi2_trials(
    model: &ClusterModel,
    pool: &EventSet,
    events_per_trial: usize,
    trials: usize,
    seed: u64,
    formula: Chi2Formula,
) -> Result<Chi2Ensemble> {
    if pool.len() < events_per_trial {
        return Err(Error::PoolTooSmall {
            pool: pool.len(),
            needed: events_per_trial,
        });
    }
    if model.m() != pool.m() {
        return Err(Error::LengthMismatch {
            left: model.m(),
            right: pool.m(),
        });
    }
    let k = model.k();

    // cluster of every distinct pattern in the pool, resolved once
    let space = binomial(pool.m(), pool.n()) as usize;
    let mut cluster_of_rank: Vec<i32> = vec![-1; space];
    let assignment: Vec<u32> = pool
        .events()
        .iter()
        .map(|event| {
            let rank = event.rank();
            if cluster_of_rank[rank] < 0 {
                cluster_of_rank[rank] = model.assign(event) as i32;
            }
            cluster_of_rank[rank] as u32
        })
        .collect();

    let bona_fide: Vec<u64> = model.member_counts().iter().map(|&c| c as u64).collect();
    let mut values = Vec::with_capacity(trials);
    let mut table = vec![[0u64; 2]; k];
    for trial in 0..trials {
        let mut rng = seeded_rng(subseed_indexed(seed, "trial", trial as u64));
        for (row, &bf) in table.iter_mut().zip(&bona_fide) {
            *row = [bf, 0];
        }
        for idx in sample_without_replacement(pool.len(), events_per_trial, &mut rng) {
            table[assignment[idx] as usize][1] += 1;
        }
        values.push(chi2_statistic(&table, formula)?);
    }

    let gaussian = if values.len() >= 2 {
        Some(gaussian_fit(&values, FitMethod::Moments)?)
    } else {
        None
    };
    Ok(Chi2Ensemble {
        values,
        events_per_trial,
        x_ind: pool.law().x_ind(),
        formula,
        gaussian,
    })
}

// Floyd's algorithm: k distinct indices from 0..len, uniform over subsets.
fn sample_without_replacement(len: usize, k: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut chosen = HashSet::with_capacity(k);
    let mut out = Vec::with_capacity(k);
    for j in len - k..len {
        let t = rng.random_range(0..=j);
        if chosen.insert(t) {
            out.push(t);
        } else {
            chosen.insert(j);
            out.push(j);
        }
    }
    out
}

/// Fraction of the full center span left above the threshold center:
/// `(c1 - c_thr) / (c1 - c0)`.
pub fn center_span_ratio(c0: f64, c_thr: f64, c1: f64) -> Result<f64> {
    if c1 == c0 {
        return Err(Error::DegenerateEnsemble(
            "center span is zero (c1 = c0)".into(),
        ));
    }
    Ok((c1 - c_thr) / (c1 - c0))
}

/// Threshold-to-top center gap measured in threshold FWHM units:
/// `(c1 - c_thr) / fwhm_thr`.
pub fn center_fwhm_ratio(c_thr: f64, c1: f64, fwhm_thr: f64) -> Result<f64> {
    if fwhm_thr <= 0.0 {
        return Err(Error::DegenerateEnsemble(format!(
            "threshold FWHM must be positive, got {fwhm_thr}"
        )));
    }
    Ok((c1 - c_thr) / fwhm_thr)
}

/// Cumulative Bayesian log-odds of a quantum origin over a collision-free
/// uniform reference, per event.
#[derive(Debug, Clone)]
pub struct BayesianTrace {
    cumulative_lnx: Vec<f64>,
    slope: f64,
    skipped: usize,
}

impl BayesianTrace {
    pub fn cumulative_lnx(&self) -> &[f64] {
        &self.cumulative_lnx
    }

    pub fn n_events(&self) -> usize {
        self.cumulative_lnx.len()
    }

    /// Least-squares slope of the cumulative log-odds against event index.
    pub fn slope(&self) -> f64 {
        self.slope
    }

    /// Events skipped because the reference table assigns them zero
    /// probability; a nonzero count signals a law mismatch.
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    /// CSV with header `event_index,cumulative_lnx`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "event_index,cumulative_lnx")?;
        for (i, v) in self.cumulative_lnx.iter().enumerate() {
            writeln!(w, "{i},{v}")?;
        }
        Ok(())
    }
}

/// Accumulate the log-odds of `events` under `ideal_table` against the
/// collision-free uniform. Each event contributes
/// `ln(prob * C(m, n))`, where `prob` is the event's conditioned table
/// probability — the unconditioned probability divided by the table's
/// collision-free mass. Zero-probability events are skipped and counted.
pub fn bayesian_lnx(events: &EventSet, ideal_table: &DistributionTable) -> Result<BayesianTrace> {
    if ideal_table.m() != events.m() || ideal_table.n() != events.n() {
        return Err(Error::TableMismatch {
            m1: ideal_table.m(),
            n1: ideal_table.n(),
            m2: events.m(),
            n2: events.n(),
        });
    }
    let ln_binom = (binomial(events.m(), events.n()) as f64).ln();
    let mut cumulative_lnx = Vec::with_capacity(events.len());
    let mut acc = 0.0;
    let mut skipped = 0usize;
    for event in events.events() {
        let p = ideal_table.prob_of(event);
        if p > 0.0 {
            acc += p.ln() + ln_binom;
        } else {
            skipped += 1;
        }
        cumulative_lnx.push(acc);
    }
    let slope = ols_slope(&cumulative_lnx);
    Ok(BayesianTrace {
        cumulative_lnx,
        slope,
        skipped,
    })
}

// least-squares slope of y against x = 1..=N
fn ols_slope(y: &[f64]) -> f64 {
    let n = y.len();
    if n < 2 {
        return 0.0;
    }
    let nf = n as f64;
    let x_mean = (nf + 1.0) / 2.0;
    let y_mean = y.iter().sum::<f64>() / nf;
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, &yi) in y.iter().enumerate() {
        let dx = (i + 1) as f64 - x_mean;
        num += dx * (yi - y_mean);
        den += dx * dx;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::kmeans_fit;
    use crate::linalg::haar_random_unitary;
    use crate::pattern::OutputPattern;
    use crate::prob::{build_distribution, Law};
    use crate::sampler::sample_exact;
    use rand::Rng;
    use rand_distr::Normal;

    #[test]
    fn chi2_identical_columns_is_zero() {
        let table = vec![[7u64, 7], [3, 3], [10, 10]];
        let v = chi2_statistic(&table, Chi2Formula::Standard).unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn chi2_hand_computed_diagonal() {
        // all four expected counts are 5, each cell contributes 25/5
        let table = vec![[10u64, 0], [0, 10]];
        let v = chi2_statistic(&table, Chi2Formula::Standard).unwrap();
        assert!((v - 20.0).abs() < 1e-12);
    }

    #[test]
    fn chi2_verbatim_normalization_differs() {
        let table = vec![[10u64, 0], [0, 10]];
        let v = chi2_statistic(&table, Chi2Formula::VerbatimEq6).unwrap();
        assert!((v - 164.0).abs() < 1e-12);
    }

    #[test]
    fn chi2_row_permutation_invariant() {
        let table = vec![[5u64, 9], [2, 2], [11, 4], [0, 3]];
        let permuted = vec![[11u64, 4], [0, 3], [5, 9], [2, 2]];
        let a = chi2_statistic(&table, Chi2Formula::Standard).unwrap();
        let b = chi2_statistic(&permuted, Chi2Formula::Standard).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn chi2_rejects_bad_tables() {
        assert!(matches!(
            chi2_statistic(&[[1u64, 1]], Chi2Formula::Standard),
            Err(Error::TooFewClusters { .. })
        ));
        assert!(matches!(
            chi2_statistic(&[[1u64, 0], [2, 0]], Chi2Formula::Standard),
            Err(Error::ZeroColumnSum { column: 1 })
        ));
    }

    #[test]
    fn moments_fit_degenerate_and_symmetric_cases() {
        let g = gaussian_fit(&[3.5, 3.5, 3.5], FitMethod::Moments).unwrap();
        assert_eq!(g.center, 3.5);
        assert_eq!(g.fwhm, 0.0);
        let g = gaussian_fit(&[4.0, 6.0], FitMethod::Moments).unwrap();
        assert!((g.center - 5.0).abs() < 1e-12);
        assert!(gaussian_fit(&[1.0], FitMethod::Moments).is_err());
    }

    #[test]
    fn moments_fit_recovers_normal_parameters() {
        let normal = Normal::new(5.0, 1.0).unwrap();
        let mut rng = crate::seed::seeded_rng(8);
        let values: Vec<f64> = (0..100_000).map(|_| rng.sample(normal)).collect();
        let g = gaussian_fit(&values, FitMethod::Moments).unwrap();
        assert!((g.center - 5.0).abs() < 0.02);
        assert!((g.fwhm - fwhm_per_sigma()).abs() < 0.02);
    }

    #[test]
    fn histogram_fit_cross_checks_moments() {
        let normal = Normal::new(-2.0, 0.5).unwrap();
        let mut rng = crate::seed::seeded_rng(9);
        let values: Vec<f64> = (0..100_000).map(|_| rng.sample(normal)).collect();
        let g = gaussian_fit(&values, FitMethod::HistogramLsq).unwrap();
        assert!((g.center + 2.0).abs() < 0.05, "center {}", g.center);
        assert!((g.fwhm - 0.5 * fwhm_per_sigma()).abs() < 0.1, "fwhm {}", g.fwhm);
    }

    #[test]
    fn ratio_values_and_degeneracies() {
        assert!((center_span_ratio(0.0, 0.5, 1.0).unwrap() - 0.5).abs() < 1e-12);
        assert!((center_span_ratio(3.0, 3.0, 4.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(center_span_ratio(2.0, 2.0, 2.0).is_err());
        assert!((center_fwhm_ratio(1.0, 2.0, 1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(center_fwhm_ratio(1.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn ratios_are_scale_covariant() {
        let values: Vec<f64> = (0..200).map(|i| (i % 17) as f64 + 0.3).collect();
        let scaled: Vec<f64> = values.iter().map(|v| v * 7.5).collect();
        let a = gaussian_fit(&values, FitMethod::Moments).unwrap();
        let b = gaussian_fit(&scaled, FitMethod::Moments).unwrap();
        let r1a = center_span_ratio(0.0, a.center * 0.4, a.center).unwrap();
        let r1b = center_span_ratio(0.0, b.center * 0.4, b.center).unwrap();
        assert!((r1a - r1b).abs() < 1e-12);
        let r2a = center_fwhm_ratio(a.center * 0.4, a.center, a.fwhm).unwrap();
        let r2b = center_fwhm_ratio(b.center * 0.4, b.center, b.fwhm).unwrap();
        assert!((r2a - r2b).abs() < 1e-9);
    }

    #[test]
    fn full_pool_replay_gives_zero_chi2() {
        let u = haar_random_unitary(12, 4).unwrap();
        let input = OutputPattern::first_modes(3, 12).unwrap();
        let table = build_distribution(&u, &input, Law::Ideal).unwrap();
        let events = sample_exact(&table, 400, 11).unwrap();
        let model = kmeans_fit(&events, 25, 2).unwrap();
        let ens = chi2_trials(&model, &events, 400, 1, 5, Chi2Formula::Standard).unwrap();
        assert_eq!(ens.trials(), 1);
        assert!(ens.values()[0].abs() < 1e-12);
        assert!(ens.gaussian().is_none());
    }

    #[test]
    fn trials_are_reproducible_and_seed_sensitive() {
        let u = haar_random_unitary(12, 4).unwrap();
        let input = OutputPattern::first_modes(3, 12).unwrap();
        let table = build_distribution(&u, &input, Law::Ideal).unwrap();
        let events = sample_exact(&table, 500, 11).unwrap();
        let model = kmeans_fit(&events, 20, 2).unwrap();
        let pool = sample_exact(&table, 5_000, 77).unwrap();
        let a = chi2_trials(&model, &pool, 300, 50, 5, Chi2Formula::Standard).unwrap();
        let b = chi2_trials(&model, &pool, 300, 50, 5, Chi2Formula::Standard).unwrap();
        let c = chi2_trials(&model, &pool, 300, 50, 6, Chi2Formula::Standard).unwrap();
        assert_eq!(a.values(), b.values());
        assert_ne!(a.values(), c.values());
        assert!(a.gaussian().is_some());
    }

    #[test]
    fn pool_too_small_rejected() {
        let u = haar_random_unitary(10, 4).unwrap();
        let input = OutputPattern::first_modes(3, 10).unwrap();
        let table = build_distribution(&u, &input, Law::Uniform).unwrap();
        let events = sample_exact(&table, 100, 11).unwrap();
        let model = kmeans_fit(&events, 10, 2).unwrap();
        assert!(matches!(
            chi2_trials(&model, &events, 200, 5, 1, Chi2Formula::Standard),
            Err(Error::PoolTooSmall { .. })
        ));
    }

    #[test]
    fn without_replacement_draws_are_distinct() {
        let mut rng = crate::seed::seeded_rng(4);
        for _ in 0..50 {
            let picks = sample_without_replacement(100, 37, &mut rng);
            let distinct: HashSet<_> = picks.iter().collect();
            assert_eq!(distinct.len(), 37);
            assert!(picks.iter().all(|&i| i < 100));
        }
    }

    #[test]
    fn slope_equals_mean_for_constant_stream() {
        // degenerate i.i.d. stream: every event identical, slope = summand
        let u = haar_random_unitary(8, 6).unwrap();
        let input = OutputPattern::first_modes(2, 8).unwrap();
        let table = build_distribution(&u, &input, Law::Ideal).unwrap();
        let best = table.patterns()[table.argmax()].clone();
        let mut events = sample_exact(&table, 2_000, 1).unwrap();
        events.replace_events_for_test(vec![best.clone(); 2_000]);
        let trace = bayesian_lnx(&events, &table).unwrap();
        let summand = table.prob_of(&best).ln() + (binomial(8, 2) as f64).ln();
        assert!((trace.slope() - summand).abs() < 1e-9);
        assert_eq!(trace.n_events(), 2_000);
        assert_eq!(trace.skipped(), 0);
    }

    #[test]
    fn slope_signs_separate_uniform_from_ideal() {
        let u = haar_random_unitary(16, 3).unwrap();
        let input = OutputPattern::first_modes(4, 16).unwrap();
        let ideal = build_distribution(&u, &input, Law::Ideal).unwrap();
        let uniform = build_distribution(&u, &input, Law::Uniform).unwrap();

        // expectations straight off the enumerated tables
        let ln_binom = (binomial(16, 4) as f64).ln();
        let expect = |weights: &[f64]| -> f64 {
            weights
                .iter()
                .zip(ideal.probs())
                .filter(|(_, &p)| p > 0.0)
                .map(|(&w, &p)| w * (p.ln() + ln_binom))
                .sum()
        };
        let uniform_expectation = expect(uniform.probs());
        let ideal_expectation = expect(ideal.probs());
        assert!(uniform_expectation < 0.0);
        assert!(ideal_expectation > 0.0);

        let uniform_events = sample_exact(&uniform, 20_000, 3).unwrap();
        let trace = bayesian_lnx(&uniform_events, &ideal).unwrap();
        assert!(trace.slope() < 0.0);
        assert!((trace.slope() - uniform_expectation).abs() < 0.15);

        let ideal_events = sample_exact(&ideal, 20_000, 4).unwrap();
        let trace = bayesian_lnx(&ideal_events, &ideal).unwrap();
        assert!(trace.slope() > 0.0);
        assert!((trace.slope() - ideal_expectation).abs() < 0.15);
    }
}
