//! Command-line front end.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use super::config::{load_config, ConfigDoc, GameKind, Overrides, ScenarioConfig};
use super::output::{emit_csv, format_float};
use super::presets::{preset_doc, IDS};
use super::runner::{evaluate_point, run_scenario, Columns};
use super::validate::{run_checks, ValidateOptions};
use crate::error::{Error, Result};
use crate::riskdom::{group_epsilon_thresholds, hp_vs_lp, pair_thresholds, ThresholdReport};
use crate::tdgame::{optimal_group_payoff, GroupStrategy, PairStrategy};

#[derive(Debug, Parser)]
#[command(name = "tdcommit", version, about = "Prior commitments in technology-adoption games")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the analytic risk-dominance thresholds at one parameter point
    Analyze {
        #[command(flatten)]
        point: PointArgs,
        /// Emit a single JSON object instead of text
        #[arg(long)]
        json: bool,
    },
    /// Stationary strategy frequencies and welfare at one parameter point
    Stationary {
        #[command(flatten)]
        point: PointArgs,
        /// Also report welfare of the no-commitment population {HN, LN}
        #[arg(long)]
        baseline: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run a figure preset and write <out>/<id>.csv
    Fig {
        #[arg(value_parser = PossibleValuesParser::new(IDS))]
        id: String,
        #[arg(long, default_value = "results")]
        out: PathBuf,
        /// Worker threads (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run a scenario from a JSON config and write <out>/<scenario_id>.csv
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "results")]
        out: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run the oracle and property checks
    Validate {
        /// Fewer random points and Monte Carlo runs
        #[arg(long)]
        quick: bool,
        /// Seed for the random parameter points and Monte Carlo runs
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GameArg {
    Pair,
    Group,
}

/// One parameter point; unset values take the defaults of a custom scenario.
#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long, value_enum, default_value_t = GameArg::Pair)]
    pub game: GameArg,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Cost of arranging a commitment
    #[arg(long)]
    pub eps: Option<f64>,
    /// Compensation paid by a dishonouring acceptor
    #[arg(long)]
    pub delta: Option<f64>,
    /// Selection intensity
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub pop_size: Option<usize>,
    #[arg(long)]
    pub group_size: Option<usize>,
    /// Demand for the high technology in a group
    #[arg(long)]
    pub mu: Option<usize>,
    /// Transfer to an acceptor of an HP deal
    #[arg(long)]
    pub theta1: Option<f64>,
    /// Transfer to the proposer of an LP deal
    #[arg(long)]
    pub theta2: Option<f64>,
    /// Derive transfers from eps (the default when no theta is given)
    #[arg(long)]
    pub fair: bool,
    #[arg(long)]
    pub cost_high: Option<f64>,
    #[arg(long)]
    pub cost_low: Option<f64>,
    #[arg(long)]
    pub benefit_high: Option<f64>,
    #[arg(long)]
    pub benefit_low: Option<f64>,
}

impl PointArgs {
    fn scenario(&self, baseline: bool) -> Result<ScenarioConfig> {
        let fair = self.fair || (self.theta1.is_none() && self.theta2.is_none());
        let doc = ConfigDoc {
            scenario_id: Some("custom".into()),
            game: Some(match self.game {
                GameArg::Pair => GameKind::Pairwise,
                GameArg::Group => GameKind::Group,
            }),
            params: Some(Overrides {
                cost_high: self.cost_high,
                cost_low: self.cost_low,
                benefit_high: self.benefit_high,
                benefit_low: self.benefit_low,
                alpha: self.alpha,
                eps: self.eps,
                delta: self.delta,
                theta1: self.theta1,
                theta2: self.theta2,
                beta: self.beta,
                pop_size: self.pop_size,
                group_size: self.group_size,
                mu: self.mu,
                strategies: None,
            }),
            fair: Some(fair),
            baseline: Some(baseline),
            axes: None,
            panels: None,
        };
        ScenarioConfig::from_doc(&doc).map_err(|e| match e {
            Error::Config { path, message } => {
                let flag = path.strip_prefix("params.").unwrap_or(&path).replace('_', "-");
                Error::invalid(format!("--{flag}: {}", message.replace(" (set fair: false)", "")))
            }
            other => other,
        })
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match jobs {
        None => f(),
        Some(0) => Err(Error::invalid("--jobs must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::invalid(format!("cannot start {n} workers: {e}")))?
            .install(f),
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Analyze { point, json } => analyze(&point.scenario(false)?, json),
        Command::Stationary { point, baseline, json } => stationary(&point.scenario(baseline)?, json),
        Command::Fig { id, out, jobs } => {
            let doc = preset_doc(&id).ok_or_else(|| Error::invalid(format!("unknown figure {id}")))?;
            sweep(&ScenarioConfig::from_doc(&doc)?, &out, jobs)
        }
        Command::Sweep { config, out, jobs } => sweep(&load_config(&config)?, &out, jobs),
        Command::Validate { quick, seed, jobs } => {
            let outcomes = with_jobs(jobs, || Ok(run_checks(ValidateOptions { quick, seed })))?;
            for c in &outcomes {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            let failed: Vec<&str> = outcomes.iter().filter(|c| !c.passed).map(|c| c.name).collect();
            if failed.is_empty() {
                Ok(0)
            } else {
                eprintln!("failed checks: {}", failed.join(", "));
                Ok(1)
            }
        }
    }
}

fn sweep(config: &ScenarioConfig, out: &Path, jobs: Option<usize>) -> Result<i32> {
    let rows = with_jobs(jobs, || run_scenario(config))?;
    std::fs::create_dir_all(out).map_err(|source| Error::Io {
        path: out.to_path_buf(),
        source,
    })?;
    let path = out.join(format!("{}.csv", config.scenario_id));
    emit_csv(&Columns::for_config(config), &rows, &path)?;
    println!("wrote {} rows to {}", rows.len(), path.display());
    Ok(0)
}

fn bounds_line(r: &ThresholdReport) -> String {
    r.epsilon_bounds
        .iter()
        .map(|b| format!("{} {}", b.opponent, format_float(b.epsilon_upper)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn analyze(config: &ScenarioConfig, as_json: bool) -> Result<i32> {
    let p = &config.params;
    let market = p.market()?;
    match config.game {
        GameKind::Pairwise => {
            let terms = p.terms();
            let t = pair_thresholds(&market, &terms);
            let verdict = hp_vs_lp(&terms, &market);
            if as_json {
                let mut v = serde_json::to_value(&t).expect("serialisable report");
                v["game"] = json!("pairwise");
                v["hp_vs_lp"] = json!(verdict);
                println!("{v}");
                return Ok(0);
            }
            let g = market.payoffs();
            println!(
                "pairwise game: a = {}, b = {}, c = {}, d = {}",
                format_float(g.both_high),
                format_float(g.high_alone),
                format_float(g.low_alone),
                format_float(g.both_low)
            );
            for r in [&t.hp, &t.lp] {
                println!(
                    "{} risk-dominates every non-proposer when eps < {} (binding: {})",
                    r.proposer,
                    format_float(r.epsilon_upper),
                    r.binding_opponent
                );
                println!("  eps bounds: {}", bounds_line(r));
            }
            println!(
                "transfer conditions: theta1 < {}, theta2 > {}, delta > {}",
                format_float(t.hp.theta1_upper.unwrap_or(f64::NAN)),
                format_float(t.hp.theta2_lower.unwrap_or(f64::NAN)),
                format_float(t.hp.delta_lower.unwrap_or(f64::NAN))
            );
            if let (Some(e), Some(a)) = (t.fair_epsilon_upper, t.hp.alpha_upper) {
                println!("fair agreements: eps < {}, alpha < {}", format_float(e), format_float(a));
            }
            println!("HP vs LP: {verdict:?}");
        }
        GameKind::Group => {
            let group = p.group()?;
            let r = group_epsilon_thresholds(&group)?;
            if as_json {
                let mut v = serde_json::to_value(&r).expect("serialisable report");
                v["game"] = json!("group");
                println!("{v}");
                return Ok(0);
            }
            println!(
                "N-player game: N = {}, mu = {}, A = {}",
                group.group_size,
                group.demand_high,
                format_float(optimal_group_payoff(&group))
            );
            println!(
                "HP risk-dominates every non-proposer when eps < {} (binding: {})",
                format_float(r.epsilon_upper),
                r.binding_opponent
            );
            println!("  eps bounds: {}", bounds_line(&r));
        }
    }
    Ok(0)
}

fn stationary(config: &ScenarioConfig, as_json: bool) -> Result<i32> {
    let row = evaluate_point(config, &config.params)?;
    let labels: Vec<&str> = match config.game {
        GameKind::Pairwise => PairStrategy::ALL.iter().map(|s| s.label()).collect(),
        GameKind::Group => GroupStrategy::ALL.iter().map(|s| s.label()).collect(),
    };
    if as_json {
        let freqs: serde_json::Map<String, serde_json::Value> = labels
            .iter()
            .zip(&row.frequencies)
            .map(|(l, f)| (l.to_string(), json!(f)))
            .collect();
        let mut v = json!({
            "frequencies": freqs,
            "freq_commit": row.freq_commit,
            "welfare_commit": row.welfare_commit,
        });
        if let Some(w) = row.welfare_baseline {
            v["welfare_baseline"] = json!(w);
        }
        println!("{v}");
        return Ok(0);
    }
    for (l, f) in labels.iter().zip(&row.frequencies) {
        println!("{l:<3} {}", format_float(*f));
    }
    println!("HP+LP {}", format_float(row.freq_commit));
    println!("welfare {}", format_float(row.welfare_commit));
    if let Some(w) = row.welfare_baseline {
        println!("welfare without commitment {}", format_float(w));
    }
    Ok(0)
}
