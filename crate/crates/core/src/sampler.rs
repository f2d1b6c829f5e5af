//! Event generation from a distribution table.
//!
//! Two samplers cover the desk-scale regime where the exact table fits in
//! memory: independent inverse-CDF draws (the oracle) and a Metropolis chain
//! whose proposal swaps one photon between an occupied and an unoccupied
//! mode. The swap proposal is symmetric — both directions have the same
//! n(m-n) move count — so plain Metropolis acceptance min(1, p'/p) leaves the
//! table distribution stationary.

use std::io::Write;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::pattern::OutputPattern;
use crate::prob::{DistributionTable, Law};
use crate::seed::{seeded_rng, subseed_indexed};
use crate::Result;

/// Steps discarded before the first kept MCMC state.
pub const DEFAULT_BURN_IN: usize = 1000;

/// Chain steps between kept MCMC states.
pub const DEFAULT_THINNING: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleMethod {
    Exact,
    Mcmc,
}

impl SampleMethod {
    pub fn name(&self) -> &'static str {
        match self {
            SampleMethod::Exact => "exact",
            SampleMethod::Mcmc => "mcmc",
        }
    }
}

/// Metropolis chain parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McmcConfig {
    pub burn_in: usize,
    pub thinning: usize,
    pub seed: u64,
}

impl McmcConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            burn_in: DEFAULT_BURN_IN,
            thinning: DEFAULT_THINNING,
            seed,
        }
    }

    /// Sub-seeded copy for the `index`-th of several independent chains.
    pub fn for_chain(&self, index: u64) -> Self {
        Self {
            seed: subseed_indexed(self.seed, "chain", index),
            ..*self
        }
    }
}

/// A batch of sampled events plus full provenance.
#[derive(Debug, Clone)]
pub struct EventSet {
    m: usize,
    n: usize,
    events: Vec<OutputPattern>,
    law: Law,
    method: SampleMethod,
    seed: u64,
    mcmc: Option<(usize, usize)>, // (burn_in, thinning) when method is Mcmc
}

impl EventSet {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> &[OutputPattern] {
        &self.events
    }

    pub fn law(&self) -> Law {
        self.law
    }

    pub fn method(&self) -> SampleMethod {
        self.method
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Provenance label, e.g. `partial x=0.947 (mcmc, seed 7)`.
    pub fn label(&self) -> String {
        format!(
            "{} ({}, seed {})",
            self.law.label(),
            self.method.name(),
            self.seed
        )
    }

    /// Per-pattern occupancy counts aligned with `table.patterns()`.
    pub fn occupancy_counts(&self, table: &DistributionTable) -> Result<Vec<u64>> {
        if table.m() != self.m || table.n() != self.n {
            return Err(Error::TableMismatch {
                m1: table.m(),
                n1: table.n(),
                m2: self.m,
                n2: self.n,
            });
        }
        let mut counts = vec![0u64; table.len()];
        for event in &self.events {
            counts[event.rank()] += 1;
        }
        Ok(counts)
    }

    /// Total variation distance between the empirical frequencies and the
    /// table probabilities.
    pub fn empirical_tvd(&self, table: &DistributionTable) -> Result<f64> {
        let counts = self.occupancy_counts(table)?;
        let total = self.events.len() as f64;
        Ok(counts
            .iter()
            .zip(table.probs())
            .map(|(&c, &p)| (c as f64 / total - p).abs())
            .sum::<f64>()
            / 2.0)
    }

    #[cfg(test)]
    pub(crate) fn replace_events_for_test(&mut self, events: Vec<OutputPattern>) {
        self.events = events;
    }

    /// CSV with header `event_index,pattern`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "event_index,pattern")?;
        for (i, event) in self.events.iter().enumerate() {
            writeln!(w, "{i},{event}")?;
        }
        Ok(())
    }

    pub fn sidecar(&self) -> EventSidecar {
        EventSidecar {
            m: self.m,
            n: self.n,
            law: self.law.name().into(),
            x_ind: self.law.x_ind(),
            n_cutoff: self.law.n_cutoff(),
            method: self.method.name().into(),
            seed: self.seed,
            burn_in: self.mcmc.map(|(b, _)| b),
            thinning: self.mcmc.map(|(_, t)| t),
            events: self.events.len(),
        }
    }
}

/// JSON sidecar for a serialized event set.
#[derive(Debug, Serialize, Deserialize)]
pub struct EventSidecar {
    pub m: usize,
    pub n: usize,
    pub law: String,
    pub x_ind: Option<f64>,
    pub n_cutoff: Option<usize>,
    pub method: String,
    pub seed: u64,
    pub burn_in: Option<usize>,
    pub thinning: Option<usize>,
    pub events: usize,
}

/// Independent draws by inverse CDF over the lexicographic pattern order.
pub fn sample_exact(table: &DistributionTable, count: usize, seed: u64) -> Result<EventSet> {
    if table.is_empty() {
        return Err(Error::EmptyTable);
    }
    let mut cdf = Vec::with_capacity(table.len());
    let mut acc = 0.0;
    for &p in table.probs() {
        acc += p;
        cdf.push(acc);
    }
    let mut rng = seeded_rng(seed);
    let mut events = Vec::with_capacity(count);
    for _ in 0..count {
        let r: f64 = rng.random();
        let idx = cdf.partition_point(|&c| c <= r).min(table.len() - 1);
        events.push(table.patterns()[idx].clone());
    }
    Ok(EventSet {
        m: table.m(),
        n: table.n(),
        events,
        law: table.law(),
        method: SampleMethod::Exact,
        seed,
        mcmc: None,
    })
}

/// Metropolis chain over collision-free patterns. After `burn_in` steps the
/// state reached at every `thinning`-th step is recorded until `count`
/// events are kept.
pub fn sample_mcmc(table: &DistributionTable, count: usize, config: McmcConfig) -> Result<EventSet> {
    if table.is_empty() {
        return Err(Error::EmptyTable);
    }
    if config.thinning == 0 {
        return Err(Error::Parse("thinning must be >= 1".into()));
    }
    let m = table.m();
    let n = table.n();
    let mut rng = seeded_rng(config.seed);

    // start from a uniformly random collision-free pattern; a zero-probability
    // start would trap the chain, so restart those from the table's argmax
    let mut modes: Vec<usize> = {
        let mut all: Vec<usize> = (0..m).collect();
        for i in 0..n {
            let j = rng.random_range(i..m);
            all.swap(i, j);
        }
        let mut chosen: Vec<usize> = all[..n].to_vec();
        chosen.sort_unstable();
        chosen
    };
    let mut current = OutputPattern::new(modes.clone(), m)?;
    let mut prob = table.prob_of(&current);
    if prob <= 0.0 {
        current = table.patterns()[table.argmax()].clone();
        modes = current.modes().to_vec();
        prob = table.prob_of(&current);
    }

    let mut occupied = vec![false; m];
    for &mode in &modes {
        occupied[mode] = true;
    }

    let mut events = Vec::with_capacity(count);
    let total_steps = config.burn_in + config.thinning * count;
    for step in 1..=total_steps {
        // swap one photon: occupied mode out, unoccupied mode in
        let out_pos = rng.random_range(0..n);
        let into_nth = rng.random_range(0..m - n);
        let mut seen = 0;
        let mut into_mode = 0;
        for (mode, &occ) in occupied.iter().enumerate() {
            if !occ {
                if seen == into_nth {
                    into_mode = mode;
                    break;
                }
                seen += 1;
            }
        }
        let out_mode = modes[out_pos];
        let mut proposal = modes.clone();
        proposal.remove(out_pos);
        let insert_at = proposal.partition_point(|&v| v < into_mode);
        proposal.insert(insert_at, into_mode);
        let candidate = OutputPattern::new(proposal, m)?;
        let cand_prob = table.prob_of(&candidate);
        let accept = cand_prob > 0.0 && (cand_prob >= prob || rng.random::<f64>() < cand_prob / prob);
        if accept {
            occupied[out_mode] = false;
            occupied[into_mode] = true;
            modes = candidate.modes().to_vec();
            current = candidate;
            prob = cand_prob;
        }
        if step > config.burn_in && (step - config.burn_in) % config.thinning == 0 {
            events.push(current.clone());
            if events.len() == count {
                break;
            }
        }
    }

    Ok(EventSet {
        m,
        n,
        events,
        law: table.law(),
        method: SampleMethod::Mcmc,
        seed: config.seed,
        mcmc: Some((config.burn_in, config.thinning)),
    })
}
