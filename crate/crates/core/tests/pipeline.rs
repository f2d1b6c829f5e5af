//! Cross-module statistical checks at reduced scale; the full protocol runs
//! in the CLI crate's acceptance suite.

use bosonfide::cluster::kmeans_fit;
use bosonfide::linalg::haar_random_unitary;
use bosonfide::pattern::OutputPattern;
use bosonfide::prob::{build_distribution, DistributionTable, Law};
use bosonfide::sampler::{sample_exact, sample_mcmc, McmcConfig};
use bosonfide::seed::{subseed, subseed_indexed};
use bosonfide::validate::{bayesian_lnx, chi2_trials, Chi2Formula};

fn ideal_table(m: usize, n: usize, seed: u64) -> DistributionTable {
    let u = haar_random_unitary(m, seed).unwrap();
    let input = OutputPattern::first_modes(n, m).unwrap();
    build_distribution(&u, &input, Law::Ideal).unwrap()
}

#[test]
fn mcmc_converges_to_the_exact_table() {
    let table = ideal_table(16, 4, 5);
    let config = McmcConfig::new(11);
    let short = sample_mcmc(&table, 10_000, config).unwrap();
    let long = sample_mcmc(&table, 40_000, config).unwrap();
    let tvd_short = short.empirical_tvd(&table).unwrap();
    let tvd_long = long.empirical_tvd(&table).unwrap();
    assert!(tvd_short < 0.25, "short-chain tvd {tvd_short}");
    assert!(
        tvd_long < tvd_short,
        "tvd should fall with chain length: {tvd_short} -> {tvd_long}"
    );
    // exact sampling of the same size sets the statistical floor
    let exact = sample_exact(&table, 40_000, 13).unwrap();
    let tvd_exact = exact.empirical_tvd(&table).unwrap();
    assert!(tvd_long < 2.0 * tvd_exact, "{tvd_long} vs floor {tvd_exact}");
}

#[test]
fn chi2_centers_order_with_indistinguishability() {
    // reduced-scale version of the validation protocol
    let master = 42u64;
    let m = 16;
    let n = 4;
    let u = haar_random_unitary(m, subseed(master, "matrix")).unwrap();
    let input = OutputPattern::first_modes(n, m).unwrap();
    let bona_fide_table = build_distribution(&u, &input, Law::Ideal).unwrap();
    let bona_fide = sample_exact(&bona_fide_table, 500, subseed(master, "bona-fide")).unwrap();
    let model = kmeans_fit(&bona_fide, 60, subseed(master, "clustering")).unwrap();

    let mut centers = Vec::new();
    let mut stderrs = Vec::new();
    for (i, &x_ind) in [0.0f64, 0.947, 1.0].iter().enumerate() {
        let table = build_distribution(&u, &input, Law::Partial { x_ind }).unwrap();
        let pool = sample_exact(&table, 20_000, subseed_indexed(master, "pool", i as u64)).unwrap();
        let ensemble = chi2_trials(
            &model,
            &pool,
            500,
            400,
            subseed_indexed(master, "trials", i as u64),
            Chi2Formula::Standard,
        )
        .unwrap();
        let gaussian = ensemble.gaussian().unwrap();
        centers.push(gaussian.center);
        stderrs.push(ensemble.center_stderr().unwrap());
    }
    let gap_low = centers[1] - centers[0];
    let gap_high = centers[2] - centers[1];
    let sep_low = 3.0 * (stderrs[0].powi(2) + stderrs[1].powi(2)).sqrt();
    let sep_high = 3.0 * (stderrs[1].powi(2) + stderrs[2].powi(2)).sqrt();
    assert!(
        gap_low > sep_low,
        "center(0.947) - center(0) = {gap_low} vs 3-sigma {sep_low}"
    );
    assert!(
        gap_high > sep_high,
        "center(1) - center(0.947) = {gap_high} vs 3-sigma {sep_high}"
    );
}

#[test]
fn bayesian_slope_rises_with_indistinguishability() {
    let m = 16;
    let n = 4;
    let u = haar_random_unitary(m, 7).unwrap();
    let input = OutputPattern::first_modes(n, m).unwrap();
    let ideal = build_distribution(&u, &input, Law::Ideal).unwrap();
    let mut prev = f64::NEG_INFINITY;
    for (i, &x_ind) in [0.0f64, 0.5, 0.947, 1.0].iter().enumerate() {
        let pool_table = build_distribution(&u, &input, Law::Partial { x_ind }).unwrap();
        let pool = sample_exact(&pool_table, 30_000, 100 + i as u64).unwrap();
        let trace = bayesian_lnx(&pool, &ideal).unwrap();
        assert!(
            trace.slope() > prev,
            "slope must rise with x_ind, got {} after {prev}",
            trace.slope()
        );
        prev = trace.slope();
    }
    assert!(prev > 0.0, "slope at x = 1 must be positive, got {prev}");
}
