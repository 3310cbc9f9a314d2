//! Risk-dominance conditions under which commitment proposers are viable.
//!
//! Strategy `i` risk-dominates `j` when, summed over all group compositions,
//! `i` players facing `j` earn at least what `j` players facing `i` earn. For
//! large populations this decides which single-mutant invasion is likelier,
//! at any selection intensity.

use serde::Serialize;

use crate::error::Result;
use crate::tdgame::{
    group_payoff, optimal_group_payoff, pair_payoff, role_payoff, Action, CommitmentTerms,
    GroupParams, GroupStrategy, MarketParams, PairStrategy,
};

/// Outcome of comparing `i` against `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// `i` risk-dominates `j` strictly.
    Dominant,
    Tie,
    /// `j` risk-dominates `i` strictly.
    Dominated,
}

impl Verdict {
    /// Non-strict dominance of `i`.
    pub fn holds(self) -> bool {
        !matches!(self, Verdict::Dominated)
    }
}

/// Relative slack under which the two payoff sums count as equal.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Compares `sum(Pi_ij(k), k = 1..=N)` with `sum(Pi_ji(k), k = 0..N)`.
///
/// `focal[k - 1]` is an `i` player's payoff in a group with `k` `i` players;
/// `other[k]` is a `j` player's payoff in a group with `k` `i` players.
pub fn risk_dominance_check(focal: &[f64], other: &[f64]) -> Verdict {
    let lhs: f64 = focal.iter().sum();
    let rhs: f64 = other.iter().sum();
    let scale = 1f64.max(lhs.abs()).max(rhs.abs());
    if (lhs - rhs).abs() <= TIE_TOLERANCE * scale {
        Verdict::Tie
    } else if lhs > rhs {
        Verdict::Dominant
    } else {
        Verdict::Dominated
    }
}

/// Risk dominance of `i` over `j` in the two-player game.
pub fn pair_risk_dominance(
    market: &MarketParams,
    terms: &CommitmentTerms,
    i: PairStrategy,
    j: PairStrategy,
) -> Verdict {
    let pay = |a, b| pair_payoff(market, terms, a, b);
    risk_dominance_check(&[pay(i, j), pay(i, i)], &[pay(j, j), pay(j, i)])
}

/// Risk dominance of `i` over `j` in the `N`-player game.
pub fn group_risk_dominance(
    group: &GroupParams,
    terms: &CommitmentTerms,
    i: GroupStrategy,
    j: GroupStrategy,
) -> Result<Verdict> {
    let n = group.group_size;
    let focal = (1..=n)
        .map(|k| group_payoff(group, terms, i, j, k))
        .collect::<Result<Vec<_>>>()?;
    let other = (0..n)
        .map(|k| group_payoff(group, terms, j, i, n - k))
        .collect::<Result<Vec<_>>>()?;
    Ok(risk_dominance_check(&focal, &other))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OpponentBound {
    pub opponent: String,
    pub epsilon_upper: f64,
}

/// Viability bounds of one commitment proposer against every non-proposer.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub proposer: String,
    pub epsilon_bounds: Vec<OpponentBound>,
    /// Minimum over `epsilon_bounds`.
    pub epsilon_upper: f64,
    pub binding_opponent: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta1_upper: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta2_lower: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_lower: Option<f64>,
    /// Largest viable alpha; may exceed 1 (no constraint on `(0,1)`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_upper: Option<f64>,
}

impl ThresholdReport {
    fn from_bounds(proposer: &str, bounds: Vec<(String, f64)>) -> Self {
        let (binding, min) = bounds
            .iter()
            .fold((String::new(), f64::INFINITY), |(name, best), (o, b)| {
                if *b < best {
                    (o.clone(), *b)
                } else {
                    (name, best)
                }
            });
        ThresholdReport {
            proposer: proposer.to_string(),
            epsilon_bounds: bounds
                .into_iter()
                .map(|(opponent, epsilon_upper)| OpponentBound {
                    opponent,
                    epsilon_upper,
                })
                .collect(),
            epsilon_upper: min,
            binding_opponent: binding,
            theta1_upper: None,
            theta2_lower: None,
            delta_lower: None,
            alpha_upper: None,
        }
    }

    pub fn bound_against(&self, opponent: &str) -> Option<f64> {
        self.epsilon_bounds
            .iter()
            .find(|b| b.opponent == opponent)
            .map(|b| b.epsilon_upper)
    }
}

/// Pairwise viability conditions for both proposers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairThresholds {
    pub hp: ThresholdReport,
    pub lp: ThresholdReport,
    /// Reduced epsilon bound `b + c - 2 max(a, d)`; only set for fair agreements.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fair_epsilon_upper: Option<f64>,
}

/// Epsilon bounds for HP and LP against HN, LN, HC, LC, HF and LF, plus the
/// implied transfer, compensation and (fair case) alpha bounds.
pub fn pair_thresholds(market: &MarketParams, terms: &CommitmentTerms) -> PairThresholds {
    let p = market.payoffs();
    let (a, b, c, d) = (p.both_high, p.high_alone, p.low_alone, p.both_low);
    let (t1, t2) = terms.thetas(market);
    let eps = terms.arrange_cost;
    let delta = terms.dishonour_comp;
    let clash = p.best_clash();

    let labels = ["HN", "LN", "HC", "LC", "HF", "LF"];
    let common = [
        b + c - 2.0 * a,
        3.0 * b - c - 2.0 * d,
        (b + c - 2.0 * a + 4.0 * delta) / 3.0,
        (b + c - 2.0 * d + 4.0 * delta) / 3.0,
    ];
    // Fair transfers move with epsilon; solving for it collapses the
    // transfer-dependent bounds onto b + c - 2a and b + c - 2d.
    let (hp_hc, hp_lc, lp_hc, lp_lc) = if terms.is_fair() {
        let (ha, hd) = (b + c - 2.0 * a, b + c - 2.0 * d);
        (ha, hd, ha, hd)
    } else {
        (
            (3.0 * b - c - 2.0 * a - 4.0 * t1) / 3.0,
            (3.0 * b - c - 2.0 * d - 4.0 * t1) / 3.0,
            (3.0 * c - b - 2.0 * a + 4.0 * t2) / 3.0,
            (3.0 * c - b - 2.0 * d + 4.0 * t2) / 3.0,
        )
    };
    let hp_vals = [common[0], common[1], hp_hc, hp_lc, common[2], common[3]];
    let lp_vals = [common[0], common[1], lp_hc, lp_lc, common[2], common[3]];
    let named = |vals: [f64; 6]| -> Vec<(String, f64)> {
        labels.iter().map(|l| l.to_string()).zip(vals).collect()
    };

    let theta1_upper = (3.0 * b - c - 3.0 * eps - 2.0 * clash) / 4.0;
    let theta2_lower = (b - 3.0 * c + 3.0 * eps + 2.0 * clash) / 4.0;
    let delta_lower = (3.0 * eps - b - c + 2.0 * clash) / 4.0;
    let alpha_upper = terms
        .is_fair()
        .then(|| alpha_threshold(market, eps, delta));

    let finish = |mut r: ThresholdReport| {
        r.theta1_upper = Some(theta1_upper);
        r.theta2_lower = Some(theta2_lower);
        r.delta_lower = Some(delta_lower);
        r.alpha_upper = alpha_upper;
        r
    };
    PairThresholds {
        hp: finish(ThresholdReport::from_bounds("HP", named(hp_vals))),
        lp: finish(ThresholdReport::from_bounds("LP", named(lp_vals))),
        fair_epsilon_upper: terms.is_fair().then_some(b + c - 2.0 * clash),
    }
}

/// Largest alpha at which fair-agreement proposers are risk-dominant over
/// every non-proposer, given the investment costs/benefits, epsilon and delta.
/// `market.alpha` is ignored.
pub fn alpha_threshold(market: &MarketParams, arrange_cost: f64, dishonour_comp: f64) -> f64 {
    let worst = arrange_cost.max(3.0 * arrange_cost - 4.0 * dishonour_comp);
    let via_high = (market.cost_high + market.benefit_low - market.cost_low - worst) / (2.0 * market.benefit_high);
    let via_low = (market.cost_low + market.benefit_high - market.cost_high - worst) / (2.0 * market.benefit_low);
    0.5 + via_high.min(via_low)
}

/// `1 + 1/2 + ... + 1/n`.
pub fn harmonic(n: usize) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum()
}

/// Epsilon bounds for HP (equivalently LP under fair agreements) against HC,
/// LC, HN and LN in the `N`-player game.
pub fn group_epsilon_thresholds(group: &GroupParams) -> Result<ThresholdReport> {
    group.validate()?;
    let n = group.group_size;
    let nf = n as f64;
    let opt = optimal_group_payoff(group);
    let h_n = harmonic(n);
    let all_high = role_payoff(group, Action::High, n)?;
    let all_low = role_payoff(group, Action::Low, 0)?;
    let high_sum = (1..n)
        .map(|k| role_payoff(group, Action::High, k))
        .sum::<Result<f64>>()?;
    let low_sum = (0..n)
        .map(|k| role_payoff(group, Action::Low, k))
        .sum::<Result<f64>>()?;
    let bounds = vec![
        ("HC".to_string(), (opt - all_high) / h_n),
        ("LC".to_string(), (opt - all_low) / h_n),
        ("HN".to_string(), nf * (opt - all_high)),
        ("LN".to_string(), nf * (opt + high_sum - low_sum)),
    ];
    Ok(ThresholdReport::from_bounds("HP", bounds))
}

/// Which proposer risk-dominates the other: `Dominant` means HP.
pub fn hp_vs_lp(terms: &CommitmentTerms, market: &MarketParams) -> Verdict {
    if terms.is_fair() {
        return Verdict::Tie;
    }
    let lambda = terms.transfer_sum(market);
    let surplus = market.net_high() - market.net_low();
    if lambda < surplus {
        Verdict::Dominant
    } else if lambda > surplus {
        Verdict::Dominated
    } else {
        Verdict::Tie
    }
}
