use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Action, CommitmentTerms, MarketParams, Transfers};
use crate::error::Error;

/// The eight strategies of the two-player game with commitments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairStrategy {
    /// Proposes, intends H.
    HP,
    /// Proposes, intends L.
    LP,
    /// Refuses deals, plays H.
    HN,
    /// Refuses deals, plays L.
    LN,
    /// Accepts and honours, plays H absent a deal.
    HC,
    /// Accepts and honours, plays L absent a deal.
    LC,
    /// Accepts, then plays the opposite of the agreed action; intends H.
    HF,
    /// Accepts, then plays the opposite of the agreed action; intends L.
    LF,
}

impl PairStrategy {
    pub const ALL: [PairStrategy; 8] = [
        PairStrategy::HP,
        PairStrategy::LP,
        PairStrategy::HN,
        PairStrategy::LN,
        PairStrategy::HC,
        PairStrategy::LC,
        PairStrategy::HF,
        PairStrategy::LF,
    ];

    /// Population without any commitment machinery.
    pub const BASELINE: [PairStrategy; 2] = [PairStrategy::HN, PairStrategy::LN];

    pub fn label(self) -> &'static str {
        match self {
            PairStrategy::HP => "HP",
            PairStrategy::LP => "LP",
            PairStrategy::HN => "HN",
            PairStrategy::LN => "LN",
            PairStrategy::HC => "HC",
            PairStrategy::LC => "LC",
            PairStrategy::HF => "HF",
            PairStrategy::LF => "LF",
        }
    }

    pub fn intended(self) -> Action {
        match self {
            PairStrategy::HP
            | PairStrategy::HN
            | PairStrategy::HC
            | PairStrategy::HF => Action::High,
            _ => Action::Low,
        }
    }

    pub fn is_proposer(self) -> bool {
        matches!(self, PairStrategy::HP | PairStrategy::LP)
    }

    /// Accepts a deal proposed by someone else (honestly or not).
    pub fn is_acceptor(self) -> bool {
        !matches!(self, PairStrategy::HN | PairStrategy::LN)
    }

    pub fn is_faker(self) -> bool {
        matches!(self, PairStrategy::HF | PairStrategy::LF)
    }
}

impl fmt::Display for PairStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for PairStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PairStrategy::ALL
            .into_iter()
            .find(|p| p.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid(format!("unknown pairwise strategy `{s}`")))
    }
}

/// Payoffs of an honoured deal, indexed by who proposed.
struct DealPayoffs {
    hp_meets_lp: f64,
    lp_meets_hp: f64,
    hp_with_acceptor: f64,
    acceptor_with_hp: f64,
    lp_with_acceptor: f64,
    acceptor_with_lp: f64,
}

impl DealPayoffs {
    fn new(market: &MarketParams, terms: &CommitmentTerms) -> Self {
        let b = market.net_high();
        let c = market.net_low();
        let eps = terms.arrange_cost;
        match terms.transfers {
            Transfers::Fair => {
                let even = (b + c - eps) / 2.0;
                DealPayoffs {
                    hp_meets_lp: even,
                    lp_meets_hp: even,
                    hp_with_acceptor: even,
                    acceptor_with_hp: even,
                    lp_with_acceptor: even,
                    acceptor_with_lp: even,
                }
            }
            Transfers::Fixed {
                to_acceptor,
                to_proposer,
            } => {
                let lambda = to_acceptor + to_proposer;
                DealPayoffs {
                    hp_meets_lp: (2.0 * b - eps - lambda) / 2.0,
                    lp_meets_hp: (2.0 * c - eps + lambda) / 2.0,
                    hp_with_acceptor: b - eps - to_acceptor,
                    acceptor_with_hp: c + to_acceptor,
                    lp_with_acceptor: c - eps + to_proposer,
                    acceptor_with_lp: b - to_proposer,
                }
            }
        }
    }
}

/// Average payoff of `focal` against `other` in the two-player game with commitments.
///
/// Two proposers split the arrangement cost (each proposes half the time).
/// The cost is only charged when the co-player accepts; fakers pay the
/// dishonour compensation to the proposer they cheat.
pub fn pair_payoff(
    market: &MarketParams,
    terms: &CommitmentTerms,
    focal: PairStrategy,
    other: PairStrategy,
) -> f64 {
    use PairStrategy::*;

    let p = market.payoffs();
    let (a, b, c, d) = (p.both_high, p.high_alone, p.low_alone, p.both_low);
    let eps = terms.arrange_cost;
    let delta = terms.dishonour_comp;
    let deal = DealPayoffs::new(market, terms);
    let even = (b + c - eps) / 2.0;

    match (focal, other) {
        (HP, HP) | (LP, LP) => even,
        (HP, LP) => deal.hp_meets_lp,
        (LP, HP) => deal.lp_meets_hp,
        (HP | LP, HN) => a,
        (HP | LP, LN) => b,
        (HP, HC | LC) => deal.hp_with_acceptor,
        (LP, HC | LC) => deal.lp_with_acceptor,
        (HP, HF | LF) => a - eps + delta,
        (LP, HF | LF) => d - eps + delta,

        (HC | LC, HP) => deal.acceptor_with_hp,
        (HC | LC, LP) => deal.acceptor_with_lp,
        (HF | LF, HP) => a - delta,
        (HF | LF, LP) => d - delta,

        // No deal is ever proposed: both play their intended technology.
        (HN | LN, HP | LP) => base_vs_refused(&p, focal.intended()),
        (_, _) => {
            let own = focal.intended();
            let theirs = other.intended();
            match (own, theirs) {
                (Action::High, Action::High) => a,
                (Action::High, Action::Low) => b,
                (Action::Low, Action::High) => c,
                (Action::Low, Action::Low) => d,
            }
        }
    }
}

// A proposer facing a refusal falls back to H.
fn base_vs_refused(p: &super::CoordinationPayoffs, own: Action) -> f64 {
    match own {
        Action::High => p.both_high,
        Action::Low => p.low_alone,
    }
}
