//! Evaluates every grid point of a scenario and lays results out as rows.

use rayon::prelude::*;

use super::config::{GameKind, PointParams, ScenarioConfig};
use crate::dynamics::{analyze, EvolutionSetup, GroupGame, MatrixGame};
use crate::error::Result;
use crate::riskdom::{alpha_threshold, group_epsilon_thresholds, pair_thresholds};
use crate::tdgame::{GroupStrategy, PairStrategy};

const PAIR_PARAMS: [&str; 11] = [
    "alpha", "benefit_high", "benefit_low", "beta", "cost_high", "cost_low", "delta", "eps",
    "pop_size", "theta1", "theta2",
];
const GROUP_PARAMS: [&str; 10] = [
    "alpha", "benefit_high", "benefit_low", "beta", "cost_high", "cost_low", "eps", "group_size",
    "mu", "pop_size",
];
const PAIR_BOUNDS: [&str; 3] = ["alpha_bound", "eps_bound_HP", "eps_bound_LP"];
const GROUP_BOUNDS: [&str; 4] = ["eps_bound_HC", "eps_bound_LC", "eps_bound_HN", "eps_bound_LN"];

/// One evaluated grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub scenario_id: String,
    /// Parameter values in column order.
    pub params: Vec<f64>,
    /// `+`-joined strategy set, when the scenario restricts strategies.
    pub strategies: Option<String>,
    /// Stationary frequency per strategy in enum order; strategies outside
    /// the population get 0.
    pub frequencies: Vec<f64>,
    /// HP + LP.
    pub freq_commit: f64,
    pub welfare_commit: f64,
    pub welfare_baseline: Option<f64>,
    /// Analytic bounds in column order; `None` where not defined.
    pub thresholds: Vec<Option<f64>>,
}

/// Column layout shared by every row of a scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Columns {
    pub game: GameKind,
    pub strategies: bool,
    pub baseline: bool,
}

impl Columns {
    pub fn for_config(config: &ScenarioConfig) -> Self {
        Columns {
            game: config.game,
            strategies: config.uses_subsets(),
            baseline: config.baseline,
        }
    }

    fn strategy_labels(&self) -> Vec<&'static str> {
        match self.game {
            GameKind::Pairwise => PairStrategy::ALL.iter().map(|s| s.label()).collect(),
            GameKind::Group => GroupStrategy::ALL.iter().map(|s| s.label()).collect(),
        }
    }

    pub fn header(&self) -> Vec<String> {
        let (params, bounds): (&[&str], &[&str]) = match self.game {
            GameKind::Pairwise => (&PAIR_PARAMS, &PAIR_BOUNDS),
            GameKind::Group => (&GROUP_PARAMS, &GROUP_BOUNDS),
        };
        let mut h = vec!["scenario_id".to_string()];
        h.extend(params.iter().map(|s| s.to_string()));
        if self.strategies {
            h.push("strategies".into());
        }
        h.extend(self.strategy_labels().iter().map(|s| format!("freq_{s}")));
        h.push("freq_commit".into());
        h.push("welfare_commit".into());
        if self.baseline {
            h.push("welfare_baseline".into());
        }
        h.extend(bounds.iter().map(|s| s.to_string()));
        h
    }
}

fn pair_strategies(p: &PointParams) -> Vec<PairStrategy> {
    match &p.strategies {
        Some(list) => list.iter().map(|s| s.parse().expect("validated label")).collect(),
        None => PairStrategy::ALL.to_vec(),
    }
}

fn group_strategies(p: &PointParams) -> Vec<GroupStrategy> {
    match &p.strategies {
        Some(list) => list.iter().map(|s| s.parse().expect("validated label")).collect(),
        None => GroupStrategy::ALL.to_vec(),
    }
}

fn scatter<S: PartialEq + Copy>(all: &[S], used: &[S], freqs: &[f64]) -> Vec<f64> {
    all.iter()
        .map(|s| used.iter().position(|u| u == s).map_or(0.0, |k| freqs[k]))
        .collect()
}

/// Evaluates a single point of `config`.
pub fn evaluate_point(config: &ScenarioConfig, p: &PointParams) -> Result<ResultRow> {
    let columns = Columns::for_config(config);
    let market = p.market()?;
    let terms = p.terms();
    terms.validate()?;

    let (params, frequencies, welfare_commit, welfare_baseline, thresholds) = match config.game {
        GameKind::Pairwise => {
            let used = pair_strategies(p);
            let setup = EvolutionSetup::new(p.pop_size, p.beta, MatrixGame::pairwise(&market, &terms, &used))?;
            let res = analyze(&setup)?;
            let baseline = if config.baseline {
                Some(analyze(&EvolutionSetup::new(p.pop_size, p.beta, MatrixGame::baseline(&market))?)?.welfare)
            } else {
                None
            };
            let (t1, t2) = terms.thetas(&market);
            let params = vec![
                p.alpha, p.benefit_high, p.benefit_low, p.beta, p.cost_high, p.cost_low, p.delta, p.eps,
                p.pop_size as f64, t1, t2,
            ];
            let report = pair_thresholds(&market, &terms);
            let alpha_bound = terms.is_fair().then(|| alpha_threshold(&market, p.eps, p.delta));
            let bounds = vec![alpha_bound, Some(report.hp.epsilon_upper), Some(report.lp.epsilon_upper)];
            (params, scatter(&PairStrategy::ALL, &used, &res.frequencies), res.welfare, baseline, bounds)
        }
        GameKind::Group => {
            let group = p.group()?;
            let used = group_strategies(p);
            let setup = EvolutionSetup::new(p.pop_size, p.beta, GroupGame::commitment(&group, &terms, &used)?)?;
            let res = analyze(&setup)?;
            let baseline = if config.baseline {
                Some(analyze(&EvolutionSetup::new(p.pop_size, p.beta, GroupGame::baseline(&group)?)?)?.welfare)
            } else {
                None
            };
            let params = vec![
                p.alpha, p.benefit_high, p.benefit_low, p.beta, p.cost_high, p.cost_low, p.eps,
                p.group_size as f64, p.mu as f64, p.pop_size as f64,
            ];
            let report = group_epsilon_thresholds(&group)?;
            let bounds = GROUP_BOUNDS
                .iter()
                .map(|c| report.bound_against(&c["eps_bound_".len()..]))
                .collect();
            (params, scatter(&GroupStrategy::ALL, &used, &res.frequencies), res.welfare, baseline, bounds)
        }
    };
    let freq_commit = frequencies[0] + frequencies[1];
    Ok(ResultRow {
        scenario_id: config.scenario_id.clone(),
        params,
        strategies: columns.strategies.then(|| match &p.strategies {
            Some(list) => list.join("+"),
            None => columns.strategy_labels().join("+"),
        }),
        frequencies,
        freq_commit,
        welfare_commit,
        welfare_baseline,
        thresholds,
    })
}

/// Evaluates all grid points on the current rayon pool; rows come back in
/// grid order whatever the thread count.
pub fn run_scenario(config: &ScenarioConfig) -> Result<Vec<ResultRow>> {
    config
        .points()
        .par_iter()
        .map(|p| evaluate_point(config, p))
        .collect()
}
