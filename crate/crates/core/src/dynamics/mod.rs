//! Finite-population imitation dynamics in the limit of rare mutations.
//!
//! A population of `Z` individuals learns by pairwise comparison (Fermi
//! rule). With rare mutations at most two strategies coexist, so the long-run
//! behaviour is a Markov chain over monomorphic states whose transitions are
//! single-mutant fixation probabilities.

mod chain;
mod fixation;
mod oracle;
mod payoffs;

pub use chain::{
    analyze, expected_welfare, stationary_distribution, transition_matrix, StationaryResult,
    TransitionMatrix,
};
pub use fixation::{fixation_log_ratio, fixation_probability, imitation_probability, step_probabilities};
pub use oracle::{absorbing_chain_fixation, monte_carlo_fixation, MonteCarloEstimate};
pub use payoffs::{group_expected_payoffs, pair_average_payoffs};

use crate::error::{Error, Result};
use crate::tdgame::{
    base_payoff, group_payoff, pair_payoff, role_payoff, Action, CommitmentTerms, GroupParams,
    GroupStrategy, MarketParams, PairStrategy,
};

/// Payoff evaluator for a population holding at most two strategies.
pub trait PopulationGame: Sync {
    fn strategy_count(&self) -> usize;

    /// `(Pi_i(x), Pi_j(x))` when `x` of `pop_size` individuals use `i` and the
    /// rest use `j`.
    fn average_payoffs(&self, pop_size: usize, i: usize, j: usize, x: usize) -> Result<(f64, f64)>;

    /// Payoff of every member of a population playing only `s`.
    fn monomorphic_payoff(&self, s: usize) -> f64;

    /// Smallest population the game can be played in.
    fn min_pop_size(&self) -> usize {
        2
    }
}

/// Population size, selection intensity and game.
#[derive(Debug, Clone)]
pub struct EvolutionSetup<G> {
    pub pop_size: usize,
    /// beta: 0 is neutral drift.
    pub selection: f64,
    pub game: G,
}

impl<G: PopulationGame> EvolutionSetup<G> {
    pub fn new(pop_size: usize, selection: f64, game: G) -> Result<Self> {
        if pop_size < 2 {
            return Err(Error::invalid(format!("population size {pop_size} < 2")));
        }
        if !(selection >= 0.0 && selection.is_finite()) {
            return Err(Error::invalid(format!(
                "selection intensity {selection} must be finite and >= 0"
            )));
        }
        if game.strategy_count() < 2 {
            return Err(Error::invalid("need at least two strategies"));
        }
        if game.min_pop_size() > pop_size {
            return Err(Error::invalid(format!(
                "population size {pop_size} smaller than group size {}",
                game.min_pop_size()
            )));
        }
        Ok(EvolutionSetup {
            pop_size,
            selection,
            game,
        })
    }

    pub fn strategy_count(&self) -> usize {
        self.game.strategy_count()
    }
}

/// Two-player game given by a square payoff matrix (`payoffs[i][j]` is what
/// `i` earns against `j`).
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixGame {
    payoffs: Vec<Vec<f64>>,
}

impl MatrixGame {
    pub fn new(payoffs: Vec<Vec<f64>>) -> Result<Self> {
        let q = payoffs.len();
        if payoffs.iter().any(|row| row.len() != q) {
            return Err(Error::invalid("payoff matrix must be square"));
        }
        Ok(MatrixGame { payoffs })
    }

    /// Commitment game restricted to `strategies`, in the given order.
    pub fn pairwise(market: &MarketParams, terms: &CommitmentTerms, strategies: &[PairStrategy]) -> Self {
        let payoffs = strategies
            .iter()
            .map(|&f| strategies.iter().map(|&o| pair_payoff(market, terms, f, o)).collect())
            .collect();
        MatrixGame { payoffs }
    }

    /// H versus L without commitments: strategies `[HN, LN]`.
    pub fn baseline(market: &MarketParams) -> Self {
        let acts = [Action::High, Action::Low];
        let payoffs = acts
            .iter()
            .map(|&own| acts.iter().map(|&other| base_payoff(market, own, other)).collect())
            .collect();
        MatrixGame { payoffs }
    }

    pub fn payoff(&self, i: usize, j: usize) -> f64 {
        self.payoffs[i][j]
    }
}

impl PopulationGame for MatrixGame {
    fn strategy_count(&self) -> usize {
        self.payoffs.len()
    }

    fn average_payoffs(&self, pop_size: usize, i: usize, j: usize, x: usize) -> Result<(f64, f64)> {
        pair_average_payoffs(|a, b| self.payoffs[a][b], pop_size, i, j, x)
    }

    fn monomorphic_payoff(&self, s: usize) -> f64 {
        self.payoffs[s][s]
    }
}

/// `N`-player game with group payoffs tabulated per strategy pair and composition.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupGame {
    group_size: usize,
    strategy_count: usize,
    /// `table[(i * q + j) * N + (c - 1)]`: payoff of an `i` player in a group
    /// with `c` `i` players and `N - c` `j` players.
    table: Vec<f64>,
}

impl GroupGame {
    /// Builds from `payoff(i, j, c)` for `c` in `1..=N`.
    pub fn from_fn(
        group_size: usize,
        strategy_count: usize,
        payoff: impl Fn(usize, usize, usize) -> Result<f64>,
    ) -> Result<Self> {
        if group_size < 2 {
            return Err(Error::invalid(format!("group size {group_size} < 2")));
        }
        let mut table = Vec::with_capacity(strategy_count * strategy_count * group_size);
        for i in 0..strategy_count {
            for j in 0..strategy_count {
                for c in 1..=group_size {
                    table.push(payoff(i, j, c)?);
                }
            }
        }
        Ok(GroupGame {
            group_size,
            strategy_count,
            table,
        })
    }

    pub fn commitment(group: &GroupParams, terms: &CommitmentTerms, strategies: &[GroupStrategy]) -> Result<Self> {
        group.validate()?;
        GroupGame::from_fn(group.group_size, strategies.len(), |i, j, c| {
            group_payoff(group, terms, strategies[i], strategies[j], c)
        })
    }

    /// H versus L adopters without commitments: strategies `[HN, LN]`.
    pub fn baseline(group: &GroupParams) -> Result<Self> {
        group.validate()?;
        let n = group.group_size;
        let acts = [Action::High, Action::Low];
        GroupGame::from_fn(n, 2, |i, j, c| {
            let h = match (acts[i], acts[j]) {
                (Action::High, Action::High) | (Action::Low, Action::Low) => {
                    if acts[i] == Action::High { n } else { 0 }
                }
                (Action::High, Action::Low) => c,
                (Action::Low, Action::High) => n - c,
            };
            role_payoff(group, acts[i], h)
        })
    }

    pub fn group_size(&self) -> usize {
        self.group_size
    }

    /// Payoff of an `i` player in a group with `focal_count` `i` players, rest `j`.
    pub fn payoff(&self, i: usize, j: usize, focal_count: usize) -> f64 {
        let q = self.strategy_count;
        self.table[(i * q + j) * self.group_size + focal_count - 1]
    }
}

impl PopulationGame for GroupGame {
    fn strategy_count(&self) -> usize {
        self.strategy_count
    }

    fn average_payoffs(&self, pop_size: usize, i: usize, j: usize, x: usize) -> Result<(f64, f64)> {
        let n = self.group_size;
        group_expected_payoffs(
            pop_size,
            n,
            x,
            |c| self.payoff(i, j, c),
            // a j player with k i co-players sits in a group of N - k j players
            |k| self.payoff(j, i, n - k),
        )
    }

    fn monomorphic_payoff(&self, s: usize) -> f64 {
        self.payoff(s, s, self.group_size)
    }

    fn min_pop_size(&self) -> usize {
        self.group_size
    }
}
