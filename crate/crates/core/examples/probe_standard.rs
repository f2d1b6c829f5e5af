//! Scratch probe: trial-based centers under the standard two-sample formula —
//! cutoff bona fide r-metrics and k-sweep behavior.

use bosonfide::cluster::kmeans_fit;
use bosonfide::linalg::haar_random_unitary;
use bosonfide::pattern::OutputPattern;
use bosonfide::prob::{build_distribution, Law};
use bosonfide::sampler::sample_exact;
use bosonfide::seed::{subseed, subseed_indexed};
use bosonfide::validate::{chi2_trials, Chi2Formula};

fn main() {
    let m = 16;
    let n = 4;
    let bf_events = 1000;
    let per_trial = 1000;
    let trials = 500;
    let pool_size = 30_000;
    let grid = [0.0, 0.2, 0.4, 0.6, 0.8, 0.947, 1.0];
    let input = OutputPattern::first_modes(n, m).unwrap();

    for master in [42u64, 7, 123] {
        println!("=== master {master}");
        let u = haar_random_unitary(m, subseed(master, "matrix")).unwrap();
        let pools: Vec<_> = grid
            .iter()
            .enumerate()
            .map(|(i, &x_ind)| {
                let table = build_distribution(&u, &input, Law::Partial { x_ind }).unwrap();
                sample_exact(&table, pool_size, subseed_indexed(master, "pool", i as u64)).unwrap()
            })
            .collect();

        let run = |law: Law, k: usize| -> (Vec<f64>, Vec<f64>) {
            let bt = build_distribution(&u, &input, law).unwrap();
            let bf = sample_exact(&bt, bf_events, subseed(master, "bona-fide")).unwrap();
            let model = kmeans_fit(&bf, k, subseed(master, "clustering")).unwrap();
            let mut centers = Vec::new();
            let mut fwhms = Vec::new();
            for (i, pool) in pools.iter().enumerate() {
                let ens = chi2_trials(
                    &model,
                    pool,
                    per_trial,
                    trials,
                    subseed_indexed(master, "trials", i as u64),
                    Chi2Formula::Standard,
                )
                .unwrap();
                let g = ens.gaussian().unwrap();
                centers.push(g.center);
                fwhms.push(g.fwhm);
            }
            (centers, fwhms)
        };

        for n_cutoff in [4usize, 3, 2] {
            let (c, f) = run(Law::Approx { x_ind: 1.0, n_cutoff }, 100);
            let r1 = (c[6] - c[5]) / (c[6] - c[0]);
            let r2 = (c[6] - c[5]) / f[5];
            let strict_dec = c.windows(2).all(|w| w[0] > w[1]);
            println!(
                "cutoff {n_cutoff}: r1={r1:>8.4} r2={r2:>8.4} |r2|={:>7.4} strictly_dec={strict_dec} centers={c:.1?}",
                r2.abs()
            );
        }
        for k in [30usize, 100, 150] {
            let (c, f) = run(Law::Ideal, k);
            let r1 = (c[6] - c[5]) / (c[6] - c[0]);
            let r2 = ((c[6] - c[5]) / f[5]).abs();
            println!("k {k:>3}: r1={r1:>8.4} |r2|={r2:>7.4} centers={c:.1?}");
        }
    }
}
