//! Scratch probe: noise-free cluster-occupancy functionals per x_ind.

use bosonfide::cluster::kmeans_fit;
use bosonfide::linalg::haar_random_unitary;
use bosonfide::pattern::OutputPattern;
use bosonfide::prob::{build_distribution, Law};
use bosonfide::sampler::sample_exact;
use bosonfide::seed::{subseed, subseed_indexed};

fn main() {
    let m = 16;
    let n = 4;
    let k = 100;
    let grid = [0.0, 0.2, 0.4, 0.6, 0.8, 0.947, 1.0];

    for master in [42u64, 7, 123] {
        println!("=== master seed {master}");
        let u = haar_random_unitary(m, subseed(master, "matrix")).unwrap();
        let input = OutputPattern::first_modes(n, m).unwrap();
        let bf_table = build_distribution(&u, &input, Law::Ideal).unwrap();
        let bf = sample_exact(&bf_table, 1000, subseed(master, "bona-fide")).unwrap();
        let model = kmeans_fit(&bf, k, subseed(master, "clustering")).unwrap();

        // exact cluster mass of every law
        let cluster_of: Vec<usize> = bf_table
            .patterns()
            .iter()
            .map(|p| model.assign(p))
            .collect();
        let occupancy = |probs: &[f64]| -> Vec<f64> {
            let mut q = vec![0.0; k];
            for (&c, &p) in cluster_of.iter().zip(probs) {
                q[c] += p;
            }
            q
        };
        let p_ideal = occupancy(bf_table.probs());
        let p_bf_emp: Vec<f64> = model
            .member_counts()
            .iter()
            .map(|&c| c as f64 / 1000.0)
            .collect();

        println!("  x      conc        hom_emp     hom_exact   pattern_conc");
        for &x_ind in &grid {
            let t = build_distribution(&u, &input, Law::Partial { x_ind }).unwrap();
            let q = occupancy(t.probs());
            // concentration of cluster occupancy against flat
            let conc: f64 = q.iter().map(|&qi| (qi - 1.0 / k as f64).powi(2)).sum::<f64>()
                * k as f64
                * 1000.0;
            // two-sample signal against the empirical bona fide occupancy
            let hom_emp: f64 = q
                .iter()
                .zip(&p_bf_emp)
                .filter(|(&qi, &pi)| qi + pi > 0.0)
                .map(|(&qi, &pi)| (qi - pi).powi(2) / (qi + pi))
                .sum::<f64>()
                * 2.0
                * 1000.0;
            // same against the exact ideal occupancy
            let hom_exact: f64 = q
                .iter()
                .zip(&p_ideal)
                .filter(|(&qi, &pi)| qi + pi > 0.0)
                .map(|(&qi, &pi)| (qi - pi).powi(2) / (qi + pi))
                .sum::<f64>()
                * 2.0
                * 1000.0;
            // pattern-level concentration (sum of squared probabilities)
            let pattern_conc: f64 =
                t.probs().iter().map(|&p| p * p).sum::<f64>() * t.len() as f64;
            println!(
                "  {x_ind:<5} {conc:>10.2} {hom_emp:>11.2} {hom_exact:>11.2} {pattern_conc:>12.4}"
            );
        }
        let _ = subseed_indexed(master, "unused", 0);
    }
}
