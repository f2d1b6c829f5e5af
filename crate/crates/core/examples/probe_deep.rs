//! Scratch probe: full-pipeline validation of candidate master seeds with
//! MCMC pools and real trials.

use bosonfide::cluster::kmeans_fit;
use bosonfide::linalg::haar_random_unitary;
use bosonfide::pattern::OutputPattern;
use bosonfide::prob::{build_distribution, Law};
use bosonfide::sampler::{sample_exact, sample_mcmc, McmcConfig};
use bosonfide::seed::{subseed, subseed_indexed};
use bosonfide::validate::{bayesian_lnx, chi2_trials, Chi2Formula};

fn main() {
    let m = 16;
    let n = 4;
    let bf_events = 1000;
    let per_trial = 1000;
    let trials = 1000;
    let pool_size = 100_000;
    let grid = [0.0, 0.2, 0.4, 0.6, 0.8, 0.947, 1.0];
    let input = OutputPattern::first_modes(n, m).unwrap();

    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().unwrap())
        .collect();

    for &master in &args {
        println!("=== master {master}");
        let u = haar_random_unitary(m, subseed(master, "matrix")).unwrap();

        let pools: Vec<_> = grid
            .iter()
            .enumerate()
            .map(|(i, &x_ind)| {
                let table = build_distribution(&u, &input, Law::Partial { x_ind }).unwrap();
                let config = McmcConfig {
                    burn_in: 1000,
                    thinning: 100,
                    seed: subseed_indexed(master, "mcmc", i as u64),
                };
                sample_mcmc(&table, pool_size, config).unwrap()
            })
            .collect();

        let run = |law: Law, k: usize| -> (Vec<f64>, Vec<f64>, Vec<f64>) {
            let bt = build_distribution(&u, &input, law).unwrap();
            let bf = sample_exact(&bt, bf_events, subseed(master, "bona-fide")).unwrap();
            let model = kmeans_fit(&bf, k, subseed(master, "clustering")).unwrap();
            let mut centers = Vec::new();
            let mut fwhms = Vec::new();
            let mut stderrs = Vec::new();
            for (i, pool) in pools.iter().enumerate() {
                let ens = chi2_trials(
                    &model,
                    pool,
                    per_trial,
                    trials,
                    subseed_indexed(master, "trials", i as u64),
                    Chi2Formula::UniformReference,
                )
                .unwrap();
                let g = ens.gaussian().unwrap();
                centers.push(g.center);
                fwhms.push(g.fwhm);
                stderrs.push(ens.center_stderr().unwrap());
            }
            (centers, fwhms, stderrs)
        };

        // criterion 8
        let (c, _f, se) = run(Law::Ideal, 100);
        let strict = c.windows(2).all(|w| w[0] < w[1]);
        let per_unit: Vec<f64> = c
            .windows(2)
            .zip(grid.windows(2))
            .map(|(cc, xx)| (cc[1] - cc[0]) / (xx[1] - xx[0]))
            .collect();
        let top_gap =
            per_unit[5] >= per_unit[..5].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        println!("  crit8: strict={strict} top_gap={top_gap} centers={c:.1?} stderr={:.2?}", se);

        // criterion 9
        let mut rs = Vec::new();
        for n_cutoff in [4usize, 3, 2] {
            let (c, f, _) = run(Law::Approx { x_ind: 1.0, n_cutoff }, 100);
            let r1 = (c[6] - c[5]) / (c[6] - c[0]);
            let r2 = (c[6] - c[5]) / f[5];
            println!("  cutoff {n_cutoff}: r1={r1:.4} r2={r2:.4} c0={:.1} c947={:.1} c1={:.1}", c[0], c[5], c[6]);
            rs.push((r1, r2));
        }
        let c9 = rs[0].0 > rs[1].0
            && rs[1].0 > rs[2].0
            && rs[0].1 > rs[1].1
            && rs[1].1 > rs[2].1
            && (rs[0].0 - rs[1].0) < (rs[1].0 - rs[2].0);
        println!("  crit9 = {c9}");

        // criterion 10
        let mut ks = Vec::new();
        for k in [30usize, 100, 150] {
            let (c, f, _) = run(Law::Ideal, k);
            let r1 = (c[6] - c[5]) / (c[6] - c[0]);
            let r2 = (c[6] - c[5]) / f[5];
            println!("  k {k}: r1={r1:.4} r2={r2:.4}");
            ks.push((r1, r2));
        }
        let c10 = ks[0].0 < ks[1].0
            && ks[0].1 < ks[1].1
            && (ks[2].0 - ks[1].0).abs() / ks[1].0 < 0.2
            && (ks[2].1 - ks[1].1).abs() / ks[1].1 < 0.2;
        println!("  crit10 = {c10}");

        // criterion 11: bayesian slopes over the grid
        let ideal = build_distribution(&u, &input, Law::Ideal).unwrap();
        let slopes: Vec<f64> = pools
            .iter()
            .map(|p| bayesian_lnx(p, &ideal).unwrap().slope())
            .collect();
        let increasing = slopes.windows(2).all(|w| w[0] < w[1]);
        let per_unit_s: Vec<f64> = slopes
            .windows(2)
            .zip(grid.windows(2))
            .map(|(ss, xx)| (ss[1] - ss[0]) / (xx[1] - xx[0]))
            .collect();
        let steepest = per_unit_s[5]
            >= per_unit_s[..5].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        println!(
            "  crit11: increasing={increasing} positive_at_1={} steepest_top={steepest} slopes={slopes:.4?}",
            slopes[6] > 0.0
        );

        // criterion 5: mcmc tvd
        let ideal_pool = &pools[6];
        let tvd = ideal_pool.empirical_tvd(&ideal).unwrap();
        println!("  crit5: tvd at 1e5 mcmc events = {tvd:.4} (< 0.05?)");
    }
}
