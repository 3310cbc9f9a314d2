//! Technology-adoption coordination games, with and without prior commitments.
//!
//! Two firms (or a group of `N`) each invest in a high-benefit (H) or
//! low-benefit (L) technology. Choosing the same technology triggers market
//! competition that scales the benefit by `alpha`. Commitment strategies can
//! pay an arrangement cost to fix a coordinated action profile beforehand.

mod group;
mod pairwise;

pub use group::{
    benefit_fraction, group_payoff, optimal_group_payoff, role_payoff, GroupParams, GroupStrategy,
};
pub use pairwise::{pair_payoff, PairStrategy};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Technology a player ends up adopting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Action {
    High,
    Low,
}

impl Action {
    pub fn opposite(self) -> Action {
        match self {
            Action::High => Action::Low,
            Action::Low => Action::High,
        }
    }
}

/// Costs and benefits of the two technologies plus the competition level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarketParams {
    pub cost_high: f64,
    pub cost_low: f64,
    pub benefit_high: f64,
    pub benefit_low: f64,
    /// Fraction of the benefit kept when competitors pick the same technology.
    pub alpha: f64,
}

/// The four entries of the two-player game without commitments, for the row player.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoordinationPayoffs {
    /// Both adopt H (`alpha * b_H - c_H`).
    pub both_high: f64,
    /// Row adopts H, co-player adopts L (`b_H - c_H`).
    pub high_alone: f64,
    /// Row adopts L, co-player adopts H (`b_L - c_L`).
    pub low_alone: f64,
    /// Both adopt L (`alpha * b_L - c_L`).
    pub both_low: f64,
}

impl CoordinationPayoffs {
    /// Larger of the two miscoordination payoffs.
    pub fn best_clash(&self) -> f64 {
        self.both_high.max(self.both_low)
    }
}

impl MarketParams {
    pub fn new(
        cost_high: f64,
        cost_low: f64,
        benefit_high: f64,
        benefit_low: f64,
        alpha: f64,
    ) -> Result<Self> {
        let market = MarketParams {
            cost_high,
            cost_low,
            benefit_high,
            benefit_low,
            alpha,
        };
        market.validate()?;
        Ok(market)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.cost_high,
            self.cost_low,
            self.benefit_high,
            self.benefit_low,
            self.alpha,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("market parameters must be finite"));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::invalid(format!("alpha {} not in (0,1)", self.alpha)));
        }
        if self.cost_high < 0.0 || self.cost_low < 0.0 || self.benefit_high < 0.0 || self.benefit_low < 0.0 {
            return Err(Error::invalid("costs and benefits must be non-negative"));
        }
        if self.benefit_low > self.benefit_high {
            return Err(Error::invalid(format!(
                "benefit_low {} exceeds benefit_high {}",
                self.benefit_low, self.benefit_high
            )));
        }
        if self.net_low() >= self.net_high() {
            return Err(Error::invalid(format!(
                "net benefit of L ({}) must be below net benefit of H ({})",
                self.net_low(),
                self.net_high()
            )));
        }
        Ok(())
    }

    /// `b = b_H - c_H`.
    pub fn net_high(&self) -> f64 {
        self.benefit_high - self.cost_high
    }

    /// `c = b_L - c_L`.
    pub fn net_low(&self) -> f64 {
        self.benefit_low - self.cost_low
    }

    pub fn payoffs(&self) -> CoordinationPayoffs {
        CoordinationPayoffs {
            both_high: self.alpha * self.benefit_high - self.cost_high,
            high_alone: self.net_high(),
            low_alone: self.net_low(),
            both_low: self.alpha * self.benefit_low - self.cost_low,
        }
    }
}

/// Row-player payoff of the game without commitments.
pub fn base_payoff(market: &MarketParams, own: Action, other: Action) -> f64 {
    let p = market.payoffs();
    match (own, other) {
        (Action::High, Action::High) => p.both_high,
        (Action::High, Action::Low) => p.high_alone,
        (Action::Low, Action::High) => p.low_alone,
        (Action::Low, Action::Low) => p.both_low,
    }
}

/// Post-game transfers of an honoured deal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Transfers {
    /// Both parties end with `(b + c - eps) / 2`. Kept symbolic so that the
    /// equal-split identities hold bit for bit.
    Fair,
    /// `to_acceptor` is paid by HP to an honouring acceptor (theta_1);
    /// `to_proposer` is paid to LP by an honouring acceptor (theta_2).
    Fixed { to_acceptor: f64, to_proposer: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CommitmentTerms {
    /// epsilon: paid by the proposer when a deal is struck.
    pub arrange_cost: f64,
    /// delta: paid by an acceptor who dishonours the deal.
    pub dishonour_comp: f64,
    pub transfers: Transfers,
}

impl CommitmentTerms {
    pub fn fair(arrange_cost: f64, dishonour_comp: f64) -> Self {
        CommitmentTerms {
            arrange_cost,
            dishonour_comp,
            transfers: Transfers::Fair,
        }
    }

    pub fn fixed(arrange_cost: f64, dishonour_comp: f64, theta1: f64, theta2: f64) -> Self {
        CommitmentTerms {
            arrange_cost,
            dishonour_comp,
            transfers: Transfers::Fixed {
                to_acceptor: theta1,
                to_proposer: theta2,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.arrange_cost >= 0.0 && self.arrange_cost.is_finite()) {
            return Err(Error::invalid(format!(
                "arrange cost {} must be finite and >= 0",
                self.arrange_cost
            )));
        }
        if !(self.dishonour_comp >= 0.0 && self.dishonour_comp.is_finite()) {
            return Err(Error::invalid(format!(
                "dishonour compensation {} must be finite and >= 0",
                self.dishonour_comp
            )));
        }
        if let Transfers::Fixed {
            to_acceptor,
            to_proposer,
        } = self.transfers
        {
            if !to_acceptor.is_finite() || !to_proposer.is_finite() {
                return Err(Error::invalid("transfer terms must be finite"));
            }
        }
        Ok(())
    }

    /// `(theta_1, theta_2)` resolved against a market.
    pub fn thetas(&self, market: &MarketParams) -> (f64, f64) {
        match self.transfers {
            Transfers::Fair => fair_transfers(market, self.arrange_cost),
            Transfers::Fixed {
                to_acceptor,
                to_proposer,
            } => (to_acceptor, to_proposer),
        }
    }

    /// `lambda = theta_1 + theta_2`.
    pub fn transfer_sum(&self, market: &MarketParams) -> f64 {
        match self.transfers {
            Transfers::Fair => market.net_high() - market.net_low(),
            Transfers::Fixed { .. } => {
                let (t1, t2) = self.thetas(market);
                t1 + t2
            }
        }
    }

    pub fn is_fair(&self) -> bool {
        matches!(self.transfers, Transfers::Fair)
    }
}

/// Transfers `(theta_1, theta_2)` under which proposer and acceptor of an
/// honoured deal earn the same net payoff.
pub fn fair_transfers(market: &MarketParams, arrange_cost: f64) -> (f64, f64) {
    let surplus = market.net_high() - market.net_low();
    ((surplus - arrange_cost) / 2.0, (surplus + arrange_cost) / 2.0)
}
