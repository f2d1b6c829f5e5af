//! Structure of the output distribution: sorted cumulative probabilities,
//! mean distance from the dominant pattern, distance shells, and total
//! variation distance between laws.
//!
//! Collision-free patterns sit on a hypercube: the squared Euclidean
//! distance between two patterns counts the modes occupied in exactly one of
//! them, so distances from the dominant pattern take only the values
//! `sqrt(2 l)` with `l = 0..=n` photons displaced. Shell membership is
//! therefore decided on the exact integer `2 l` rather than on floats.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::pattern::{binomial, OutputPattern};
use crate::prob::DistributionTable;
use crate::Result;

/// Tolerance on squared distances when classifying shells; the squared
/// distance of 0/1 vectors is an exact even integer, so this only absorbs
/// the caller's threshold arithmetic.
pub const SHELL_TOL: f64 = 1e-9;

/// A table viewed through the permutation that sorts probabilities in
/// descending order; ties keep lexicographic pattern order.
#[derive(Debug, Clone)]
pub struct SortedDistribution<'a> {
    order: Vec<usize>,
    base: &'a DistributionTable,
}

impl<'a> SortedDistribution<'a> {
    pub fn new(base: &'a DistributionTable) -> Self {
        let mut order: Vec<usize> = (0..base.len()).collect();
        // stable sort on descending probability preserves lexicographic
        // order among ties because patterns are enumerated lexicographically
        order.sort_by(|&a, &b| {
            base.probs()[b]
                .partial_cmp(&base.probs()[a])
                .expect("probabilities are finite")
        });
        Self { order, base }
    }

    pub fn base(&self) -> &DistributionTable {
        self.base
    }

    /// Pattern indices in descending-probability order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// The dominant pattern (highest probability, lexicographic least among
    /// ties).
    pub fn top_pattern(&self) -> &OutputPattern {
        &self.base.patterns()[self.order[0]]
    }

    /// Prefix sums of the sorted probabilities; the last entry is 1 up to
    /// rounding.
    pub fn cumulative_probability(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.order
            .iter()
            .map(|&i| {
                acc += self.base.probs()[i];
                acc
            })
            .collect()
    }

    /// Probability-weighted mean distance from the dominant pattern over the
    /// top `N` outputs, for every `N` up to the full space.
    pub fn mean_l2_curve(&self) -> Vec<f64> {
        let top = self.top_pattern().clone();
        let mut weighted = 0.0;
        let mut mass = 0.0;
        self.order
            .iter()
            .map(|&i| {
                let p = self.base.probs()[i];
                weighted += self.base.patterns()[i].l2_to(&top) * p;
                mass += p;
                if mass > 0.0 {
                    weighted / mass
                } else {
                    0.0
                }
            })
            .collect()
    }
}

/// Which side of the distance threshold a shell query keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShellComparator {
    AtMost,
    AtLeast,
}

/// Aggregate probability content of a distance shell around the dominant
/// pattern.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ShellReport {
    /// Number of patterns in the shell.
    pub count: usize,
    /// Summed conditioned probability of the shell.
    pub total_prob: f64,
    /// `total_prob / count`.
    pub mean_prob: f64,
    /// `count / C(m, n)`.
    pub fraction_of_space: f64,
}

/// Probability mass of the patterns whose distance from the dominant pattern
/// is at most / at least `threshold`.
pub fn shell_probability(
    table: &DistributionTable,
    comparator: ShellComparator,
    threshold: f64,
) -> Result<ShellReport> {
    let top = table.patterns()[table.argmax()].clone();
    let threshold_sq = threshold * threshold;
    let mut count = 0usize;
    let mut total_prob = 0.0;
    for (pattern, &p) in table.patterns().iter().zip(table.probs()) {
        let d_sq = pattern.symmetric_difference(&top) as f64;
        let keep = match comparator {
            ShellComparator::AtMost => d_sq <= threshold_sq + SHELL_TOL,
            ShellComparator::AtLeast => d_sq >= threshold_sq - SHELL_TOL,
        };
        if keep {
            count += 1;
            total_prob += p;
        }
    }
    if count == 0 {
        return Err(Error::EmptyShell);
    }
    Ok(ShellReport {
        count,
        total_prob,
        mean_prob: total_prob / count as f64,
        fraction_of_space: count as f64 / table.len() as f64,
    })
}

/// Per-shell pattern count and probability mass, indexed by the number of
/// displaced photons `l = 0..=n`. Counts depend only on the geometry:
/// shell `l` holds C(n, l) * C(m - n, l) patterns.
pub fn l2_shell_histogram(table: &DistributionTable) -> Vec<(usize, f64)> {
    let top = table.patterns()[table.argmax()].clone();
    let n = table.n();
    let mut shells = vec![(0usize, 0.0f64); n + 1];
    for (pattern, &p) in table.patterns().iter().zip(table.probs()) {
        let l = pattern.symmetric_difference(&top) / 2;
        shells[l].0 += 1;
        shells[l].1 += p;
    }
    shells
}

/// Total variation distance between two conditioned tables over the same
/// collision-free space.
pub fn total_variation_distance(p: &DistributionTable, q: &DistributionTable) -> Result<f64> {
    if p.m() != q.m() || p.n() != q.n() {
        return Err(Error::TableMismatch {
            m1: p.m(),
            n1: p.n(),
            m2: q.m(),
            n2: q.n(),
        });
    }
    Ok(p.probs()
        .iter()
        .zip(q.probs())
        .map(|(a, b)| (a - b).abs())
        .sum::<f64>()
        / 2.0)
}

/// Write an `index,value` CSV for a curve.
pub fn write_curve_csv<W: Write>(mut w: W, values: &[f64]) -> Result<()> {
    writeln!(w, "index,value")?;
    for (i, v) in values.iter().enumerate() {
        writeln!(w, "{i},{v}")?;
    }
    Ok(())
}

/// Expected shell count around any pattern: choose `l` of its `n` modes to
/// vacate and `l` of the remaining `m - n` modes to occupy.
pub fn shell_count(m: usize, n: usize, l: usize) -> u64 {
    binomial(n, l) * binomial(m - n, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::haar_random_unitary;
    use crate::prob::{build_distribution, Law};

    fn table(m: usize, n: usize, law: Law, seed: u64) -> DistributionTable {
        let u = haar_random_unitary(m, seed).unwrap();
        let input = OutputPattern::first_modes(n, m).unwrap();
        build_distribution(&u, &input, law).unwrap()
    }

    #[test]
    fn uniform_cumulative_is_linear() {
        let t = table(16, 4, Law::Uniform, 1);
        let sorted = SortedDistribution::new(&t);
        let cum = sorted.cumulative_probability();
        for (i, &c) in cum.iter().enumerate() {
            assert!((c - (i + 1) as f64 / 1820.0).abs() < 1e-9);
        }
        assert!((cum.last().unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn cumulative_always_reaches_one() {
        for law in [Law::Ideal, Law::Partial { x_ind: 0.5 }] {
            let t = table(10, 3, law, 5);
            let cum = SortedDistribution::new(&t).cumulative_probability();
            assert!(cum.windows(2).all(|w| w[0] <= w[1] + 1e-15));
            assert!((cum.last().unwrap() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn mean_distance_starts_at_zero_and_stays_in_range() {
        let t = table(12, 4, Law::Ideal, 7);
        let sorted = SortedDistribution::new(&t);
        let curve = sorted.mean_l2_curve();
        assert_eq!(curve[0], 0.0);
        let max = (2.0 * 4.0_f64).sqrt();
        assert!(curve.iter().all(|&v| (0.0..=max + 1e-12).contains(&v)));
        // full-prefix value is the table-wide weighted mean distance
        let top = sorted.top_pattern().clone();
        let full: f64 = t
            .patterns()
            .iter()
            .zip(t.probs())
            .map(|(pat, &p)| pat.l2_to(&top) * p)
            .sum();
        assert!((curve.last().unwrap() - full).abs() < 1e-9);
    }

    #[test]
    fn inner_shell_geometry_at_paper_scale() {
        let t = table(16, 4, Law::Ideal, 42);
        let report = shell_probability(&t, ShellComparator::AtMost, 2.0_f64.sqrt()).unwrap();
        assert_eq!(report.count, 49); // the pattern itself plus n(m - n) moves
        assert!((report.fraction_of_space - 49.0 / 1820.0).abs() < 1e-12);
    }

    #[test]
    fn shells_partition_the_space() {
        let t = table(16, 4, Law::Partial { x_ind: 0.8 }, 3);
        let shells = l2_shell_histogram(&t);
        assert_eq!(shells.len(), 5);
        assert_eq!(shells[0].0, 1);
        assert_eq!(shells[1].0, 48);
        let total: usize = shells.iter().map(|(c, _)| c).sum();
        assert_eq!(total, 1820);
        for (l, &(count, _)) in shells.iter().enumerate() {
            assert_eq!(count as u64, shell_count(16, 4, l), "shell {l}");
        }
        let mass: f64 = shells.iter().map(|(_, p)| p).sum();
        assert!((mass - 1.0).abs() < 1e-9);
    }

    #[test]
    fn empty_shell_is_an_error() {
        let t = table(8, 3, Law::Ideal, 2);
        // nothing sits beyond sqrt(2n)
        assert!(matches!(
            shell_probability(&t, ShellComparator::AtLeast, 10.0),
            Err(Error::EmptyShell)
        ));
    }

    #[test]
    fn tvd_basics() {
        let a = table(10, 3, Law::Ideal, 9);
        let b = table(10, 3, Law::FullyDistinguishable, 9);
        assert!(total_variation_distance(&a, &a).unwrap() < 1e-15);
        let d = total_variation_distance(&a, &b).unwrap();
        assert!(d > 0.0 && d <= 1.0);
        let e = total_variation_distance(&b, &a).unwrap();
        assert!((d - e).abs() < 1e-15);
    }

    #[test]
    fn tvd_rejects_mismatched_spaces() {
        let a = table(10, 3, Law::Uniform, 1);
        let b = table(10, 4, Law::Uniform, 1);
        assert!(matches!(
            total_variation_distance(&a, &b),
            Err(Error::TableMismatch { .. })
        ));
    }
}
