//! Parameter sweeps: cluster count (k) and bona fide sampler choice.
//!
//! Both figures of merit compare the chi-squared Gaussian centers at the
//! indistinguishability triple {0, 0.947, 1}: the span ratio
//! `r1 = (c1 - c947)/(c1 - c0)` and the resolution ratio
//! `r2 = (c1 - c947)/fwhm947`.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::commands::{CenterEntry, Workbench};
use crate::config::ExperimentConfig;
use crate::report::{x_tag, Report};
use bosonfide::cluster::kmeans_fit;
use bosonfide::prob::Law;
use bosonfide::sampler::EventSet;
use bosonfide::validate::{center_fwhm_ratio, center_span_ratio, chi2_trials, Chi2Ensemble};
use bosonfide::{Error, Result};

/// The triple of grid values the ratios are computed from.
pub const RATIO_TRIPLE: [f64; 3] = [0.0, 0.947, 1.0];

#[derive(Debug, Clone, Serialize)]
struct RatioRow {
    label: String,
    r1: Option<f64>,
    r2: Option<f64>,
    degenerate: Option<String>,
    centers: Vec<CenterEntry>,
}

fn ratios_from(entries: &[CenterEntry]) -> (Option<f64>, Option<f64>, Option<String>) {
    let find = |x: f64| {
        entries
            .iter()
            .find(|e| (e.x_ind - x).abs() < 1e-9)
            .and_then(|e| e.center.map(|c| (c, e.fwhm.unwrap_or(0.0))))
    };
    let (Some((c0, _)), Some((c947, f947)), Some((c1, _))) =
        (find(0.0), find(0.947), find(1.0))
    else {
        return (
            None,
            None,
            Some("grid does not carry the {0, 0.947, 1} triple".into()),
        );
    };
    match (
        center_span_ratio(c0, c947, c1),
        center_fwhm_ratio(c947, c1, f947),
    ) {
        (Ok(r1), Ok(r2)) => (Some(r1), Some(r2), None),
        (r1, r2) => {
            let why = r1.err().or(r2.err()).map(|e| e.to_string());
            (None, None, why)
        }
    }
}

fn run_pools(
    bench: &Workbench,
    grid: &[f64],
) -> Result<Vec<EventSet>> {
    grid.iter()
        .enumerate()
        .map(|(i, &x_ind)| bench.mcmc_pool(Law::Partial { x_ind }, i))
        .collect()
}

fn ensembles_for_model(
    bench: &Workbench,
    model: &bosonfide::cluster::ClusterModel,
    pools: &[EventSet],
) -> Result<Vec<Chi2Ensemble>> {
    let config = &bench.config;
    pools
        .iter()
        .enumerate()
        .map(|(i, pool)| {
            chi2_trials(
                model,
                pool,
                config.events_per_trial,
                config.trials,
                config.seed_trials(i),
                config.chi2_formula,
            )
        })
        .collect()
}

/// `ksweep`: refit the clusters at each k over the ratio triple.
pub fn cmd_ksweep(config: ExperimentConfig, k_list: &[usize], out: &Path) -> Result<()> {
    if k_list.is_empty() {
        return Err(Error::Parse("k list is empty".into()));
    }
    let bench = Workbench::new(config, None)?;
    let config = &bench.config;
    let bona_fide_table = bench.table(config.bona_fide)?;
    let events = bosonfide::sampler::sample_exact(
        &bona_fide_table,
        config.bona_fide_events,
        config.seed_bona_fide(),
    )?;
    let pools = run_pools(&bench, &RATIO_TRIPLE)?;
    let mut report = Report::create(out, "ksweep")?;

    let mut rows = Vec::new();
    for &k in k_list {
        let row = match kmeans_fit(&events, k, config.seed_clustering()) {
            Ok(model) => {
                let ensembles = ensembles_for_model(&bench, &model, &pools)?;
                let entries: Vec<CenterEntry> = RATIO_TRIPLE
                    .iter()
                    .zip(&ensembles)
                    .map(|(&x, e)| CenterEntry::from_ensemble(x, e))
                    .collect();
                report.write_with(&format!("cumulative_member_counts_k{k}.csv"), |w| {
                    let counts: Vec<f64> = model
                        .cumulative_member_counts()
                        .iter()
                        .map(|&c| c as f64)
                        .collect();
                    bosonfide::analysis::write_curve_csv(w, &counts)
                })?;
                let (r1, r2, degenerate) = ratios_from(&entries);
                RatioRow {
                    label: format!("k={k}"),
                    r1,
                    r2,
                    degenerate,
                    centers: entries,
                }
            }
            Err(err @ Error::TooFewDistinctEvents { .. }) => return Err(err),
            Err(err) => RatioRow {
                label: format!("k={k}"),
                r1: None,
                r2: None,
                degenerate: Some(err.to_string()),
                centers: Vec::new(),
            },
        };
        println!(
            "ksweep {}: r1 = {}, r2 = {}{}",
            row.label,
            row.r1.map_or("n/a".into(), |r| format!("{r:.5}")),
            row.r2.map_or("n/a".into(), |r| format!("{r:.5}")),
            row.degenerate
                .as_deref()
                .map_or(String::new(), |d| format!(" (degenerate: {d})"))
        );
        rows.push(row);
    }

    report.write_with("ksweep.csv", |w| {
        writeln!(w, "k,r1,r2")?;
        for (row, &k) in rows.iter().zip(k_list) {
            writeln!(
                w,
                "{k},{},{}",
                row.r1.map_or(String::new(), |r| r.to_string()),
                row.r2.map_or(String::new(), |r| r.to_string())
            )?;
        }
        Ok(())
    })?;
    let summary = serde_json::json!({
        "bona_fide": config.bona_fide.label(),
        "chi2_formula": config.chi2_formula.name(),
        "rows": rows,
    });
    report.write_json("summary.json", &summary)?;
    report.finish(config, summary)
}

/// `bonafide-sweep`: refit the clusters per bona fide law (truncated laws at
/// the listed cutoffs, plus the uniform and fully distinguishable
/// references) over the full test grid.
pub fn cmd_bonafide_sweep(
    config: ExperimentConfig,
    cutoffs: &[usize],
    out: &Path,
) -> Result<()> {
    let bench = Workbench::new(config, None)?;
    let config = &bench.config;
    let mut laws: Vec<Law> = cutoffs
        .iter()
        .map(|&n_cutoff| Law::Approx {
            x_ind: 1.0,
            n_cutoff,
        })
        .collect();
    laws.push(Law::Uniform);
    laws.push(Law::FullyDistinguishable);

    let pools = run_pools(&bench, &config.test_grid)?;
    let mut report = Report::create(out, "bonafide-sweep")?;

    let mut rows = Vec::new();
    for law in laws {
        let (_, model) = bench.bona_fide_model(law)?;
        let ensembles = ensembles_for_model(&bench, &model, &pools)?;
        let entries: Vec<CenterEntry> = config
            .test_grid
            .iter()
            .zip(&ensembles)
            .map(|(&x, e)| CenterEntry::from_ensemble(x, e))
            .collect();
        let tag = law.name().to_string()
            + &law
                .n_cutoff()
                .map_or(String::new(), |c| format!("_cutoff{c}"));
        report.write_with(&format!("centers_{tag}.csv"), |w| {
            writeln!(w, "x_ind,center,fwhm")?;
            for e in &entries {
                writeln!(
                    w,
                    "{},{},{}",
                    e.x_ind,
                    e.center.map_or(String::new(), |c| c.to_string()),
                    e.fwhm.map_or(String::new(), |f| f.to_string())
                )?;
            }
            Ok(())
        })?;
        let (r1, r2, degenerate) = ratios_from(&entries);
        println!(
            "bonafide-sweep {}: r1 = {}, r2 = {}",
            law.label(),
            r1.map_or("n/a".into(), |r| format!("{r:.5}")),
            r2.map_or("n/a".into(), |r| format!("{r:.5}"))
        );
        rows.push(RatioRow {
            label: law.label(),
            r1,
            r2,
            degenerate,
            centers: entries,
        });
    }

    report.write_with("bonafide.csv", |w| {
        writeln!(w, "bona_fide,r1,r2")?;
        for row in &rows {
            writeln!(
                w,
                "{},{},{}",
                row.label,
                row.r1.map_or(String::new(), |r| r.to_string()),
                row.r2.map_or(String::new(), |r| r.to_string())
            )?;
        }
        Ok(())
    })?;
    let summary = serde_json::json!({
        "chi2_formula": config.chi2_formula.name(),
        "rows": rows,
    });
    report.write_json("summary.json", &summary)?;
    report.finish(config, summary)?;
    let _ = x_tag(0.0);
    Ok(())
}
