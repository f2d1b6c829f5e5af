//! Subcommand implementations.

pub mod analysis;
pub mod bayes;
pub mod figure1;
pub mod sweeps;

use std::path::Path;

use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::report::Report;
use bosonfide::cluster::{kmeans_fit, ClusterModel};
use bosonfide::linalg::{haar_random_unitary, UnitaryMatrix};
use bosonfide::pattern::OutputPattern;
use bosonfide::prob::{build_distribution, DistributionTable, Law};
use bosonfide::sampler::{sample_exact, sample_mcmc, EventSet, SampleMethod};
use bosonfide::validate::Chi2Ensemble;
use bosonfide::{Error, Result};

/// Shared per-run state: resolved config, interferometer, input state.
pub struct Workbench {
    pub config: ExperimentConfig,
    pub unitary: UnitaryMatrix,
    pub input: OutputPattern,
}

impl Workbench {
    /// Build from the config, generating the interferometer from the matrix
    /// sub-seed or loading it from a previously written matrix file.
    pub fn new(config: ExperimentConfig, matrix_file: Option<&Path>) -> Result<Self> {
        config.validate()?;
        let unitary = match matrix_file {
            Some(path) => {
                let u = UnitaryMatrix::from_json(&std::fs::read_to_string(path)?)?;
                if u.dim() != config.m {
                    return Err(Error::Parse(format!(
                        "matrix file is {}x{0}, config expects m = {}",
                        u.dim(),
                        config.m
                    )));
                }
                u
            }
            None => haar_random_unitary(config.m, config.seed_matrix())?,
        };
        let input = config.input()?;
        Ok(Self {
            config,
            unitary,
            input,
        })
    }

    pub fn table(&self, law: Law) -> Result<DistributionTable> {
        build_distribution(&self.unitary, &self.input, law)
    }

    /// Training events drawn from the bona fide law and the fitted clusters.
    pub fn bona_fide_model(&self, law: Law) -> Result<(EventSet, ClusterModel)> {
        let table = self.table(law)?;
        let events = sample_exact(
            &table,
            self.config.bona_fide_events,
            self.config.seed_bona_fide(),
        )?;
        let model = kmeans_fit(&events, self.config.k, self.config.seed_clustering())?;
        Ok((events, model))
    }

    /// MCMC event pool of a test law, sub-seeded by grid position.
    pub fn mcmc_pool(&self, law: Law, grid_index: usize) -> Result<EventSet> {
        let table = self.table(law)?;
        sample_mcmc(
            &table,
            self.config.pool_size,
            self.config.mcmc_config(grid_index),
        )
    }
}

/// Per-grid-point summary row shared by the center-curve commands.
#[derive(Debug, Clone, Serialize)]
pub struct CenterEntry {
    pub x_ind: f64,
    pub center: Option<f64>,
    pub fwhm: Option<f64>,
    pub center_stderr: Option<f64>,
    pub trials: usize,
}

impl CenterEntry {
    pub fn from_ensemble(x_ind: f64, ensemble: &Chi2Ensemble) -> Self {
        Self {
            x_ind,
            center: ensemble.gaussian().map(|g| g.center),
            fwhm: ensemble.gaussian().map(|g| g.fwhm),
            center_stderr: ensemble.center_stderr(),
            trials: ensemble.trials(),
        }
    }
}

/// `matrix`: write the Haar interferometer and print its unitarity residual.
pub fn cmd_matrix(config: ExperimentConfig, out: &Path) -> Result<()> {
    let bench = Workbench::new(config, None)?;
    let mut report = Report::create(out, "matrix")?;
    report.write_string("matrix.json", &bench.unitary.to_json())?;
    let residual = bench.unitary.unitarity_residual();
    println!("matrix: m = {}, unitarity residual = {residual:.3e}", bench.config.m);
    let summary = serde_json::json!({ "m": bench.config.m, "unitarity_residual": residual });
    report.finish(&bench.config, summary)
}

/// `table`: enumerate the collision-free distribution of one law.
pub fn cmd_table(config: ExperimentConfig, law: Law, out: &Path) -> Result<()> {
    let bench = Workbench::new(config, None)?;
    let table = bench.table(law)?;
    let mut report = Report::create(out, "table")?;
    report.write_with("table.csv", |w| table.write_csv(w))?;
    report.write_json("table.json", &table.sidecar(Some(bench.config.seed)))?;
    println!(
        "table: {} patterns under {}, cfs_mass = {:.6}, clamped = {}",
        table.len(),
        law.label(),
        table.cfs_mass(),
        table.clamped()
    );
    let summary = serde_json::json!({
        "law": law.label(),
        "patterns": table.len(),
        "cfs_mass": table.cfs_mass(),
        "clamped": table.clamped(),
    });
    report.finish(&bench.config, summary)
}

/// `sample`: draw events from one law with the exact or MCMC sampler.
pub fn cmd_sample(
    config: ExperimentConfig,
    law: Law,
    count: usize,
    method: SampleMethod,
    out: &Path,
) -> Result<()> {
    let bench = Workbench::new(config, None)?;
    let table = bench.table(law)?;
    let events = match method {
        SampleMethod::Exact => sample_exact(&table, count, bench.config.seed_exact_sample())?,
        SampleMethod::Mcmc => sample_mcmc(&table, count, bench.config.mcmc_config(0))?,
    };
    let mut report = Report::create(out, "sample")?;
    report.write_with("events.csv", |w| events.write_csv(w))?;
    report.write_json("events.json", &events.sidecar())?;
    let tvd = events.empirical_tvd(&table)?;
    println!(
        "sample: {} events from {}, empirical TVD to table = {tvd:.4}",
        events.len(),
        events.label()
    );
    let summary = serde_json::json!({
        "law": law.label(),
        "method": method.name(),
        "events": events.len(),
        "empirical_tvd": tvd,
    });
    report.finish(&bench.config, summary)
}

/// `clusters`: fit the bona fide cluster model and write it out.
pub fn cmd_clusters(config: ExperimentConfig, out: &Path) -> Result<()> {
    let bench = Workbench::new(config, None)?;
    let law = bench.config.bona_fide;
    let (events, model) = bench.bona_fide_model(law)?;
    let mut report = Report::create(out, "clusters")?;
    report.write_string("clusters.json", &model.to_json())?;
    report.write_with("cumulative_member_counts.csv", |w| {
        let counts: Vec<f64> = model
            .cumulative_member_counts()
            .iter()
            .map(|&c| c as f64)
            .collect();
        bosonfide::analysis::write_curve_csv(w, &counts)
    })?;
    println!(
        "clusters: k = {} fitted on {} events from {} in {} iterations",
        model.k(),
        events.len(),
        law.label(),
        model.iterations_used()
    );
    let summary = serde_json::json!({
        "bona_fide": law.label(),
        "k": model.k(),
        "iterations_used": model.iterations_used(),
        "training_events": events.len(),
    });
    report.finish(&bench.config, summary)
}
