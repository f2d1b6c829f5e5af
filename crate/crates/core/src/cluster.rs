//! K-means++ clusters over collision-free events.
//!
//! Events embed as 0/1 occupation vectors in R^m; centroids live in the
//! continuous space (the mean coordinates of their members). Seeding follows
//! k-means++: the first centroid is a uniformly drawn event, each further
//! centroid is drawn with probability proportional to the squared distance
//! to the nearest centroid already placed. Duplicate events keep their
//! multiplicity in both the seeding weights and the centroid means.

use std::collections::HashSet;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::pattern::OutputPattern;
use crate::sampler::EventSet;
use crate::seed::seeded_rng;
use crate::Result;

/// Default Lloyd iteration cap.
pub const DEFAULT_MAX_ITER: usize = 300;

/// Default convergence tolerance on the largest centroid shift.
pub const DEFAULT_TOL: f64 = 1e-6;

/// Euclidean distance between two coordinate vectors of equal length.
pub fn l2_distance(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(squared_distance(p, q).sqrt())
}

#[inline]
fn squared_distance(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .map(|(a, b)| {
            let d = a - b;
            d * d
        })
        .sum()
}

/// Index of the nearest centroid; ties resolve to the lowest index.
fn nearest(centroids: &[Vec<f64>], point: &[f64]) -> (usize, f64) {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, c) in centroids.iter().enumerate() {
        let d = squared_distance(c, point);
        if d < best_d {
            best_d = d;
            best = i;
        }
    }
    (best, best_d)
}

/// Fitted cluster model: centroids plus the bona fide occupancy statistics
/// gathered from the training events.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClusterModel {
    k: usize,
    m: usize,
    centroids: Vec<Vec<f64>>,
    member_counts: Vec<usize>,
    radii: Vec<f64>,
    seed: u64,
    iterations_used: usize,
}

impl ClusterModel {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn centroids(&self) -> &[Vec<f64>] {
        &self.centroids
    }

    /// Training events per cluster — the bona fide column of the
    /// chi-squared contingency table.
    pub fn member_counts(&self) -> &[usize] {
        &self.member_counts
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn iterations_used(&self) -> usize {
        self.iterations_used
    }

    /// Cluster of an event; total over all collision-free patterns and
    /// deterministic (ties go to the lowest cluster index).
    pub fn assign(&self, event: &OutputPattern) -> usize {
        self.assign_point(&event.occupation())
    }

    /// Cluster of a raw coordinate vector.
    pub fn assign_point(&self, point: &[f64]) -> usize {
        nearest(&self.centroids, point).0
    }

    /// Member counts sorted ascending and accumulated — the cluster-size
    /// profile curve. Non-decreasing, ends at the training-set size.
    pub fn cumulative_member_counts(&self) -> Vec<usize> {
        let mut sorted = self.member_counts.clone();
        sorted.sort_unstable();
        let mut acc = 0;
        sorted
            .iter()
            .map(|&c| {
                acc += c;
                acc
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializing finite floats cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn embed(events: &EventSet) -> Vec<Vec<f64>> {
    events.events().iter().map(|e| e.occupation()).collect()
}

fn check_distinct(events: &EventSet, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::TooFewDistinctEvents {
            distinct: 0,
            k,
            needed: 1,
        });
    }
    let distinct: HashSet<&OutputPattern> = events.events().iter().collect();
    if distinct.len() < k {
        return Err(Error::TooFewDistinctEvents {
            distinct: distinct.len(),
            k,
            needed: k,
        });
    }
    Ok(())
}

/// K-means++ seeding: returns `k` initial centroids drawn from the events.
pub fn kmeanspp_init(events: &EventSet, k: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    check_distinct(events, k)?;
    let points = embed(events);
    let mut rng = seeded_rng(seed);
    let mut centroids: Vec<Vec<f64>> = Vec::with_capacity(k);
    centroids.push(points[rng.random_range(0..points.len())].clone());
    let mut weights: Vec<f64> = vec![0.0; points.len()];
    while centroids.len() < k {
        for (w, p) in weights.iter_mut().zip(&points) {
            *w = nearest(&centroids, p).1;
        }
        // already-chosen events carry zero weight, so draws stay distinct
        let dist = WeightedIndex::new(&weights)
            .map_err(|e| Error::DegenerateEnsemble(format!("k-means++ weights: {e}")))?;
        centroids.push(points[dist.sample(&mut rng)].clone());
    }
    Ok(centroids)
}

/// Lloyd iterations from a k-means++ seeding, with the default cap and
/// tolerance.
pub fn kmeans_fit(events: &EventSet, k: usize, seed: u64) -> Result<ClusterModel> {
    kmeans_fit_with(events, k, seed, DEFAULT_MAX_ITER, DEFAULT_TOL)
}

/// Lloyd iterations: assign every event to its nearest centroid, recompute
/// centroids as member means, stop when the largest centroid shift drops
/// below `tol` or after `max_iter` passes. A cluster that loses all members
/// is re-seeded at the event farthest from its nearest centroid.
pub fn kmeans_fit_with(
    events: &EventSet,
    k: usize,
    seed: u64,
    max_iter: usize,
    tol: f64,
) -> Result<ClusterModel> {
    let mut centroids = kmeanspp_init(events, k, seed)?;
    let points = embed(events);
    let m = events.m();
    let mut assignments = vec![0usize; points.len()];
    let mut iterations_used = 0;
    let mut prev_wcss = f64::INFINITY;
    let mut prev_reseeded = false;

    for _ in 0..max_iter {
        iterations_used += 1;

        let mut wcss = 0.0;
        for (slot, p) in assignments.iter_mut().zip(&points) {
            let (idx, d) = nearest(&centroids, p);
            *slot = idx;
            wcss += d;
        }
        // Lloyd never increases the objective between plain iterations;
        // a re-seed intentionally breaks monotonicity once.
        if !prev_reseeded {
            assert!(
                wcss <= prev_wcss + 1e-9,
                "within-cluster sum of squares rose from {prev_wcss} to {wcss}"
            );
        }
        prev_wcss = wcss;

        let mut sums = vec![vec![0.0; m]; k];
        let mut counts = vec![0usize; k];
        for (&cluster, p) in assignments.iter().zip(&points) {
            counts[cluster] += 1;
            for (s, v) in sums[cluster].iter_mut().zip(p) {
                *s += v;
            }
        }

        let mut reseeded = false;
        let mut reseed_used: HashSet<usize> = HashSet::new();
        let mut shift: f64 = 0.0;
        for cluster in 0..k {
            if counts[cluster] == 0 {
                // farthest event from its current nearest centroid
                let far = points
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !reseed_used.contains(i))
                    .max_by(|(_, a), (_, b)| {
                        let da = nearest(&centroids, a).1;
                        let db = nearest(&centroids, b).1;
                        da.partial_cmp(&db).expect("distances are finite")
                    })
                    .map(|(i, _)| i)
                    .expect("training set is nonempty");
                reseed_used.insert(far);
                centroids[cluster] = points[far].clone();
                reseeded = true;
                continue;
            }
            let mut moved = 0.0;
            for (j, s) in sums[cluster].iter().enumerate() {
                let new = s / counts[cluster] as f64;
                let d = new - centroids[cluster][j];
                moved += d * d;
                centroids[cluster][j] = new;
            }
            shift = shift.max(moved.sqrt());
        }
        prev_reseeded = reseeded;
        if !reseeded && shift < tol {
            break;
        }
    }

    // final statistics against the frozen centroids, so that `assign`
    // replays the training membership exactly
    let mut member_counts = vec![0usize; k];
    let mut radii = vec![0.0f64; k];
    for p in &points {
        let (idx, d) = nearest(&centroids, p);
        member_counts[idx] += 1;
        radii[idx] = radii[idx].max(d.sqrt());
    }

    Ok(ClusterModel {
        k,
        m,
        centroids,
        member_counts,
        radii,
        seed,
        iterations_used,
    })
}
