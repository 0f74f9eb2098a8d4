//! Optimizer runs described by a flat key-value document.
//!
//! The `optimize` subcommand folds its flags into an [`OptimizeDoc`] and
//! every search starts from the document form, so a run stored as JSON
//! replays byte-identically through [`run_document`]. Parsing is strict:
//! an unknown key is an error, not a silent default, because a stale
//! stored spec should fail loudly when replayed.

use anyhow::{bail, Context, Result};
use levy_core::optimizer::objectives::{DoubleWell, QuadraticBowl, Rastrigin};
use levy_core::{optimize, LevyIndex, Objective, RunConfig, RunResult, StepPolicy};
use serde::Deserialize;

use crate::args::{ObjectiveArg, OptimizeArgs, PolicyArg};
use crate::format::{csv_table, fmt_f64};

/// One optimizer run, spelled as a flat JSON object.
///
/// Keys and defaults match the `optimize` subcommand's flags one for one;
/// `seed` is the only required key. `maximize` is document-only: it flips
/// the search to the negated objective and reports true values.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizeDoc {
    #[serde(default = "defaults::objective")]
    pub objective: ObjectiveArg,
    #[serde(default)]
    pub dim: Option<usize>,
    #[serde(default = "defaults::policy")]
    pub policy: PolicyArg,
    #[serde(default = "defaults::beta")]
    pub beta: f64,
    #[serde(default = "defaults::one")]
    pub lmax: f64,
    #[serde(default = "defaults::one")]
    pub sigma: f64,
    #[serde(default = "defaults::walkers")]
    pub walkers: usize,
    #[serde(default = "defaults::iterations")]
    pub iterations: usize,
    #[serde(default = "defaults::escape_distance")]
    pub escape_distance: f64,
    #[serde(default = "defaults::one")]
    pub well_halfwidth: f64,
    #[serde(default = "defaults::one")]
    pub depth: f64,
    #[serde(default)]
    pub maximize: bool,
    pub seed: u64,
}

mod defaults {
    use crate::args::{ObjectiveArg, PolicyArg};

    pub fn objective() -> ObjectiveArg {
        ObjectiveArg::Rastrigin
    }
    pub fn policy() -> PolicyArg {
        PolicyArg::Levy
    }
    pub fn beta() -> f64 {
        1.5
    }
    pub fn one() -> f64 {
        1.0
    }
    pub fn walkers() -> usize {
        20
    }
    pub fn iterations() -> usize {
        1000
    }
    pub fn escape_distance() -> f64 {
        2.5
    }
}

/// Everything a finished document run reports.
pub struct DocumentRun {
    pub objective: &'static str,
    pub dimension: usize,
    pub policy: &'static str,
    pub result: RunResult,
    /// Iteration log as `iteration,best_value,best_x_0,...`.
    pub csv_log: String,
}

impl OptimizeDoc {
    /// The flag surface folded into document form.
    pub fn from_flags(args: &OptimizeArgs) -> Self {
        Self {
            objective: args.objective,
            dim: args.dim,
            policy: args.policy,
            beta: args.beta,
            lmax: args.lmax,
            sigma: args.sigma,
            walkers: args.walkers,
            iterations: args.iterations,
            escape_distance: args.escape_distance,
            well_halfwidth: args.well_halfwidth,
            depth: args.depth,
            maximize: false,
            seed: args.seed,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("parsing the run document")
    }

    fn objective(&self) -> Result<(Box<dyn Objective>, &'static str)> {
        Ok(match self.objective {
            ObjectiveArg::Bowl => {
                let dim = self.dim.unwrap_or(2);
                if dim == 0 {
                    bail!("dim must be at least 1");
                }
                (Box::new(QuadraticBowl::new(dim)), "bowl")
            }
            ObjectiveArg::Rastrigin => {
                let dim = self.dim.unwrap_or(2);
                if dim == 0 {
                    bail!("dim must be at least 1");
                }
                (Box::new(Rastrigin::new(dim)), "rastrigin")
            }
            ObjectiveArg::DoubleWell => {
                if self.dim.is_some_and(|d| d != 1) {
                    bail!("the double-well objective is one-dimensional; drop dim or pass 1");
                }
                let well = DoubleWell::new(self.escape_distance, self.well_halfwidth, self.depth)
                    .map_err(|e| anyhow::anyhow!("invalid double-well geometry: {e}"))?;
                (Box::new(well), "double-well")
            }
        })
    }

    fn policy(&self) -> Result<StepPolicy> {
        Ok(match self.policy {
            PolicyArg::Levy => StepPolicy::levy(
                LevyIndex::new(self.beta).map_err(|e| anyhow::anyhow!("invalid beta: {e}"))?,
            ),
            PolicyArg::Uniform => StepPolicy::uniform(self.lmax)
                .map_err(|e| anyhow::anyhow!("invalid lmax: {e}"))?,
            PolicyArg::Gaussian => StepPolicy::gaussian(self.sigma)
                .map_err(|e| anyhow::anyhow!("invalid sigma: {e}"))?,
        })
    }

    /// Executes the documented run.
    pub fn run(&self) -> Result<DocumentRun> {
        let (objective, objective_name) = self.objective()?;
        let policy = self.policy()?;
        let config = RunConfig {
            maximize: self.maximize,
            ..RunConfig::new(self.walkers, self.iterations, self.seed)
        };
        let result = optimize(&*objective, policy, config)
            .map_err(|e| anyhow::anyhow!("running the search: {e}"))?;
        let csv_log = csv_log(&result, objective.dimension());
        Ok(DocumentRun {
            objective: objective_name,
            dimension: objective.dimension(),
            policy: policy.name(),
            result,
            csv_log,
        })
    }
}

/// Parses a JSON run document, executes it, and returns the outcome with
/// the iteration log already rendered as CSV.
pub fn run_document(json: &str) -> Result<DocumentRun> {
    OptimizeDoc::from_json(json)?.run()
}

/// Iteration log as CSV: `iteration,best_value,best_x_0,...`.
pub fn csv_log(result: &RunResult, dimension: usize) -> String {
    let mut header = String::from("iteration,best_value");
    for d in 0..dimension {
        header.push_str(&format!(",best_x_{d}"));
    }
    csv_table(
        &header,
        result.log.iter().map(|row| {
            let mut line = format!("{},{}", row.iteration, fmt_f64(row.best_value));
            for &c in &row.best_position {
                line.push(',');
                line.push_str(&fmt_f64(c));
            }
            line
        }),
    )
}

#[cfg(test)]
mod tests {
    use clap::Parser;

    use super::*;
    use crate::args::{Cli, Command};

    fn flags_doc(flags: &[&str]) -> OptimizeDoc {
        let mut argv = vec!["levy", "optimize"];
        argv.extend_from_slice(flags);
        match Cli::parse_from(argv).command {
            Command::Optimize(args) => OptimizeDoc::from_flags(&args),
            _ => unreachable!(),
        }
    }

    #[test]
    fn document_defaults_match_the_flag_defaults() {
        let doc = OptimizeDoc::from_json(r#"{"seed": 7}"#).unwrap();
        assert_eq!(doc, flags_doc(&["--seed", "7"]));
    }

    #[test]
    fn document_rejects_unknown_and_missing_keys() {
        assert!(OptimizeDoc::from_json(r#"{"seed": 1, "walker": 5}"#).is_err());
        assert!(OptimizeDoc::from_json(r#"{"walkers": 5}"#).is_err());
        assert!(OptimizeDoc::from_json("[]").is_err());
    }

    #[test]
    fn document_run_matches_the_flag_run() {
        let json = r#"{
            "objective": "bowl",
            "dim": 3,
            "policy": "gaussian",
            "sigma": 0.5,
            "walkers": 6,
            "iterations": 30,
            "seed": 9
        }"#;
        let from_doc = run_document(json).unwrap();
        let from_flags = flags_doc(&[
            "--objective",
            "bowl",
            "--dim",
            "3",
            "--policy",
            "gaussian",
            "--sigma",
            "0.5",
            "--walkers",
            "6",
            "--iterations",
            "30",
            "--seed",
            "9",
        ])
        .run()
        .unwrap();
        assert_eq!(from_doc.csv_log, from_flags.csv_log);
        assert_eq!(from_doc.result.best_value, from_flags.result.best_value);
        assert_eq!(from_doc.policy, "gaussian");
        assert_eq!(from_doc.dimension, 3);
    }

    #[test]
    fn document_maximize_runs_uphill() {
        let json = r#"{"objective": "bowl", "maximize": true,
                       "policy": "gaussian", "sigma": 0.3,
                       "walkers": 4, "iterations": 25, "seed": 3}"#;
        let run = run_document(json).unwrap();
        for w in run.result.log.windows(2) {
            assert!(w[1].best_value >= w[0].best_value);
        }
        assert!(run.result.best_value > 0.0);
    }

    #[test]
    fn document_validation_reaches_the_library_guards() {
        assert!(run_document(r#"{"seed": 1, "policy": "uniform", "lmax": 0}"#).is_err());
        assert!(run_document(r#"{"seed": 1, "beta": -2}"#).is_err());
        assert!(run_document(r#"{"seed": 1, "dim": 0}"#).is_err());
        assert!(run_document(r#"{"seed": 1, "objective": "double-well", "dim": 2}"#).is_err());
    }
}
