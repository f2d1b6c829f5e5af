//! Scratch probe: center-vs-x curves for different bona fide laws and
//! chi-squared formulas.

use bosonfide::cluster::kmeans_fit;
use bosonfide::linalg::haar_random_unitary;
use bosonfide::pattern::OutputPattern;
use bosonfide::prob::{build_distribution, Law};
use bosonfide::sampler::sample_exact;
use bosonfide::seed::{subseed, subseed_indexed};
use bosonfide::validate::{center_fwhm_ratio, center_span_ratio, chi2_trials, Chi2Formula};

fn main() {
    let master = 42u64;
    let m = 16;
    let n = 4;
    let k = 100;
    let bf_events = 1000;
    let per_trial = 1000;
    let trials = 600;
    let pool_size = 30_000;

    let u = haar_random_unitary(m, subseed(master, "matrix")).unwrap();
    let input = OutputPattern::first_modes(n, m).unwrap();
    let grid = [0.0, 0.2, 0.4, 0.6, 0.8, 0.947, 1.0];

    let bona_fide_laws = [
        ("ideal", Law::Ideal),
        ("uniform", Law::Uniform),
        ("fd", Law::FullyDistinguishable),
        ("approx(1,4)", Law::Approx { x_ind: 1.0, n_cutoff: 4 }),
        ("approx(1,3)", Law::Approx { x_ind: 1.0, n_cutoff: 3 }),
        ("approx(1,2)", Law::Approx { x_ind: 1.0, n_cutoff: 2 }),
    ];

    let pools: Vec<_> = grid
        .iter()
        .enumerate()
        .map(|(i, &x_ind)| {
            let table = build_distribution(&u, &input, Law::Partial { x_ind }).unwrap();
            sample_exact(&table, pool_size, subseed_indexed(master, "pool", i as u64)).unwrap()
        })
        .collect();

    for formula in [Chi2Formula::UniformReference] {
        println!("=== formula {:?}", formula);
        for (name, law) in bona_fide_laws {
            let bf_table = build_distribution(&u, &input, law).unwrap();
            let bf = sample_exact(&bf_table, bf_events, subseed(master, "bona-fide")).unwrap();
            let model = kmeans_fit(&bf, k, subseed(master, "clustering")).unwrap();
            let mut centers = Vec::new();
            let mut fwhms = Vec::new();
            print!("{name:>12}: ");
            for (i, pool) in pools.iter().enumerate() {
                let ens = chi2_trials(
                    &model,
                    pool,
                    per_trial,
                    trials,
                    subseed_indexed(master, "trials", i as u64),
                    formula,
                )
                .unwrap();
                let g = ens.gaussian().unwrap();
                centers.push(g.center);
                fwhms.push(g.fwhm);
                print!("{:>8.1}", g.center);
            }
            // grid indices: 0 -> x=0, 5 -> x=0.947, 6 -> x=1
            let r1 = center_span_ratio(centers[0], centers[5], centers[6]);
            let r2 = center_fwhm_ratio(centers[5], centers[6], fwhms[5]);
            println!("   r1={:?} r2={:?}", r1.ok(), r2.ok());
        }
    }

    // mini k-sweep with ideal bona fide
    println!("=== k sweep (ideal bona fide, uniform-reference)");
    let bf_table = build_distribution(&u, &input, Law::Ideal).unwrap();
    let bf = sample_exact(&bf_table, bf_events, subseed(master, "bona-fide")).unwrap();
    for k in [30usize, 50, 100, 120, 150] {
        let model = kmeans_fit(&bf, k, subseed(master, "clustering")).unwrap();
        let mut centers = Vec::new();
        let mut fwhms = Vec::new();
        for (i, pool) in [&pools[0], &pools[5], &pools[6]].iter().enumerate() {
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
        }
        let r1 = center_span_ratio(centers[0], centers[1], centers[2]).unwrap();
        let r2 = center_fwhm_ratio(centers[1], centers[2], fwhms[1]).unwrap();
        println!("k={k:>4}: c0={:>8.1} c947={:>8.1} c1={:>8.1} r1={r1:.5} r2={r2:.5}", centers[0], centers[1], centers[2]);
    }
}
