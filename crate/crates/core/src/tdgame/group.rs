use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Action, CommitmentTerms, MarketParams};
use crate::error::{Error, Result};

/// Parameters of the `N`-player game.
///
/// `market.alpha` is used directly as the competition intensity for both
/// technologies. The two-player game is recovered with `N = 2`, `mu = 1` and
/// this alpha set to twice the pairwise one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupParams {
    pub market: MarketParams,
    pub group_size: usize,
    /// Largest number of H adopters that avoids competition on H.
    pub demand_high: usize,
}

impl GroupParams {
    pub fn new(market: MarketParams, group_size: usize, demand_high: usize) -> Result<Self> {
        let g = GroupParams {
            market,
            group_size,
            demand_high,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        self.market.validate()?;
        if self.group_size < 2 {
            return Err(Error::invalid(format!(
                "group size {} must be at least 2",
                self.group_size
            )));
        }
        if self.demand_high < 1 || self.demand_high > self.group_size {
            return Err(Error::invalid(format!(
                "demand mu = {} not in 1..={}",
                self.demand_high, self.group_size
            )));
        }
        Ok(())
    }
}

/// Strategies of the `N`-player game (fakers are not part of it).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupStrategy {
    HP,
    LP,
    HN,
    LN,
    HC,
    LC,
}

impl GroupStrategy {
    pub const ALL: [GroupStrategy; 6] = [
        GroupStrategy::HP,
        GroupStrategy::LP,
        GroupStrategy::HN,
        GroupStrategy::LN,
        GroupStrategy::HC,
        GroupStrategy::LC,
    ];

    pub const BASELINE: [GroupStrategy; 2] = [GroupStrategy::HN, GroupStrategy::LN];

    pub fn label(self) -> &'static str {
        match self {
            GroupStrategy::HP => "HP",
            GroupStrategy::LP => "LP",
            GroupStrategy::HN => "HN",
            GroupStrategy::LN => "LN",
            GroupStrategy::HC => "HC",
            GroupStrategy::LC => "LC",
        }
    }

    pub fn intended(self) -> Action {
        match self {
            GroupStrategy::HP | GroupStrategy::HN | GroupStrategy::HC => Action::High,
            _ => Action::Low,
        }
    }

    pub fn is_proposer(self) -> bool {
        matches!(self, GroupStrategy::HP | GroupStrategy::LP)
    }

    pub fn is_refuser(self) -> bool {
        matches!(self, GroupStrategy::HN | GroupStrategy::LN)
    }
}

impl fmt::Display for GroupStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for GroupStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupStrategy::ALL
            .into_iter()
            .find(|g| g.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid(format!("unknown group strategy `{s}`")))
    }
}

fn check_count(group: &GroupParams, role: Action, h_count: usize) -> Result<()> {
    let n = group.group_size;
    let ok = match role {
        Action::High => (1..=n).contains(&h_count),
        Action::Low => h_count < n,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "{role:?} adopter with {h_count} H adopters in a group of {n}"
        )))
    }
}

/// Fraction of its benefit an adopter keeps when `h_count` group members adopt H.
pub fn benefit_fraction(group: &GroupParams, role: Action, h_count: usize) -> Result<f64> {
    check_count(group, role, h_count)?;
    let n = group.group_size as f64;
    let mu = group.demand_high;
    let alpha = group.market.alpha;
    Ok(match role {
        Action::High if h_count <= mu => 1.0,
        Action::High => alpha * mu as f64 / h_count as f64,
        Action::Low if h_count >= mu => 1.0,
        Action::Low => alpha * (n - mu as f64) / (n - h_count as f64),
    })
}

/// Payoff of an H or L adopter in a group with `h_count` H adopters.
pub fn role_payoff(group: &GroupParams, role: Action, h_count: usize) -> Result<f64> {
    let f = benefit_fraction(group, role, h_count)?;
    let m = &group.market;
    Ok(match role {
        Action::High => f * m.benefit_high - m.cost_high,
        Action::Low => f * m.benefit_low - m.cost_low,
    })
}

/// Per-member payoff when exactly `mu` members adopt H.
pub fn optimal_group_payoff(group: &GroupParams) -> f64 {
    let n = group.group_size as f64;
    let mu = group.demand_high as f64;
    (mu * group.market.net_high() + (n - mu) * group.market.net_low()) / n
}

/// Payoff of a `focal` player in a group of `focal_count` players using `focal`
/// (itself included) and `N - focal_count` players using `other`.
///
/// When a proposer is present and nobody refuses, the group plays the optimal
/// arrangement: everybody nets `A` and the proposers split the arrangement
/// cost. Otherwise no cost is charged, proposers fall back to H if someone
/// refused, and payoffs are evaluated at the realised number of H adopters.
pub fn group_payoff(
    group: &GroupParams,
    terms: &CommitmentTerms,
    focal: GroupStrategy,
    other: GroupStrategy,
    focal_count: usize,
) -> Result<f64> {
    let n = group.group_size;
    if focal_count < 1 || focal_count > n {
        return Err(Error::invalid(format!(
            "focal count {focal_count} not in 1..={n}"
        )));
    }
    let rest = n - focal_count;
    let count = |pred: fn(GroupStrategy) -> bool| {
        let mut c = 0;
        if pred(focal) {
            c += focal_count;
        }
        if pred(other) {
            c += rest;
        }
        c
    };
    let proposers = count(GroupStrategy::is_proposer);
    let refusers = count(GroupStrategy::is_refuser);

    if proposers > 0 && refusers == 0 {
        let share = if focal.is_proposer() {
            terms.arrange_cost / proposers as f64
        } else {
            0.0
        };
        return Ok(optimal_group_payoff(group) - share);
    }

    let realised = |s: GroupStrategy| {
        if proposers > 0 && s.is_proposer() {
            Action::High
        } else {
            s.intended()
        }
    };
    let mut h_count = 0;
    if realised(focal) == Action::High {
        h_count += focal_count;
    }
    if realised(other) == Action::High {
        h_count += rest;
    }
    role_payoff(group, realised(focal), h_count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use GroupStrategy::*;

    fn fig9(mu: usize) -> GroupParams {
        GroupParams::new(MarketParams::new(1.0, 1.0, 6.0, 2.0, 0.5).unwrap(), 5, mu).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn fractions() {
        let g = fig9(2);
        for k in 1..=2 {
            assert_eq!(benefit_fraction(&g, Action::High, k).unwrap(), 1.0);
        }
        assert!(close(benefit_fraction(&g, Action::High, 5).unwrap(), 0.2));
        assert!(close(benefit_fraction(&g, Action::Low, 0).unwrap(), 0.3));
        assert!(benefit_fraction(&g, Action::High, 0).is_err());
        assert!(benefit_fraction(&g, Action::Low, 5).is_err());
    }

    #[test]
    fn role_payoffs() {
        let g = fig9(2);
        assert!(close(role_payoff(&g, Action::High, 5).unwrap(), 0.2));
        assert!(close(role_payoff(&g, Action::Low, 0).unwrap(), -0.4));
        assert!(close(role_payoff(&g, Action::High, 2).unwrap(), 5.0));
    }

    #[test]
    fn optimum() {
        assert!(close(optimal_group_payoff(&fig9(2)), 2.6));
        assert!(close(optimal_group_payoff(&fig9(5)), 5.0));
        let pair = GroupParams::new(MarketParams::new(1.0, 1.0, 6.0, 2.0, 0.5).unwrap(), 2, 1).unwrap();
        assert!(close(optimal_group_payoff(&pair), 3.0));
    }

    #[test]
    fn table_rows() {
        let g = fig9(2);
        let t = CommitmentTerms::fair(0.1, 6.0);
        for k in 1..=5 {
            assert!(close(group_payoff(&g, &t, HP, LP, k).unwrap(), 2.58));
            assert!(close(group_payoff(&g, &t, HP, HP, k).unwrap(), 2.58));
        }
        assert!(close(group_payoff(&g, &t, HP, HC, 2).unwrap(), 2.55));
        for k in 1..=5 {
            assert!(close(group_payoff(&g, &t, HP, HC, k).unwrap(), 2.6 - 0.1 / k as f64));
        }
        for k in 1..5 {
            assert!(close(group_payoff(&g, &t, HN, HP, k).unwrap(), 0.2));
            assert!(close(group_payoff(&g, &t, HP, HN, k).unwrap(), 0.2));
            assert!(close(
                group_payoff(&g, &t, HP, LN, k).unwrap(),
                role_payoff(&g, Action::High, k).unwrap()
            ));
            // acceptors facing proposers receive A
            assert!(close(group_payoff(&g, &t, HC, HP, k).unwrap(), 2.6));
            assert!(close(group_payoff(&g, &t, LC, LP, k).unwrap(), 2.6));
            // L refusers facing proposers: proposers fall back to H
            assert!(close(
                group_payoff(&g, &t, LN, LP, k).unwrap(),
                role_payoff(&g, Action::Low, 5 - k).unwrap()
            ));
        }
        // monomorphic groups
        assert!(close(group_payoff(&g, &t, HC, HP, 5).unwrap(), 0.2));
        assert!(close(group_payoff(&g, &t, LN, LN, 5).unwrap(), -0.4));
        assert!(close(group_payoff(&g, &t, LC, HN, 5).unwrap(), -0.4));
        assert!(close(group_payoff(&g, &t, HN, LN, 5).unwrap(), 0.2));
        assert!(group_payoff(&g, &t, HP, HC, 0).is_err());
        assert!(group_payoff(&g, &t, HP, HC, 6).is_err());
    }

    #[test]
    fn recovers_pairwise_game() {
        for alpha in [0.05, 0.2, 0.3, 0.45] {
            let pair = MarketParams::new(1.0, 1.0, 6.0, 2.0, alpha).unwrap();
            let scaled = MarketParams { alpha: 2.0 * alpha, ..pair };
            let g = GroupParams::new(scaled, 2, 1).unwrap();
            let p = pair.payoffs();
            assert!(close(role_payoff(&g, Action::High, 2).unwrap(), p.both_high));
            assert!(close(role_payoff(&g, Action::High, 1).unwrap(), p.high_alone));
            assert!(close(role_payoff(&g, Action::Low, 1).unwrap(), p.low_alone));
            assert!(close(role_payoff(&g, Action::Low, 0).unwrap(), p.both_low));
        }
    }

    #[test]
    fn fractions_monotone_and_bounded() {
        for mu in 1..=6 {
            let g = GroupParams::new(MarketParams::new(1.0, 1.0, 6.0, 2.0, 0.37).unwrap(), 6, mu).unwrap();
            let mut prev = f64::INFINITY;
            for h in 1..=6 {
                let f = benefit_fraction(&g, Action::High, h).unwrap();
                assert!(f > 0.0 && f <= 1.0 && f <= prev);
                prev = f;
            }
            let mut prev = 0.0;
            for h in 0..6 {
                let f = benefit_fraction(&g, Action::Low, h).unwrap();
                assert!(f <= 1.0 && f >= prev);
                // with mu = N an L adopter shares an empty market
                assert!(if mu < 6 { f > 0.0 } else { f == 0.0 });
                prev = f;
            }
        }
    }

    #[test]
    fn total_payoff_peaks_at_demand() {
        for alpha in [0.1, 0.5, 0.9] {
            for n in 2..=8 {
                for mu in 1..=n {
                    let g = GroupParams::new(MarketParams::new(1.0, 1.0, 6.0, 2.0, alpha).unwrap(), n, mu).unwrap();
                    let total = |h: usize| {
                        let hs = if h > 0 { h as f64 * role_payoff(&g, Action::High, h).unwrap() } else { 0.0 };
                        let ls = if h < n { (n - h) as f64 * role_payoff(&g, Action::Low, h).unwrap() } else { 0.0 };
                        hs + ls
                    };
                    let best = (0..=n).map(total).fold(f64::NEG_INFINITY, f64::max);
                    assert!(close(best, total(mu)), "n={n} mu={mu} alpha={alpha}");
                    assert!(close(total(mu) / n as f64, optimal_group_payoff(&g)));
                }
            }
        }
    }

    #[test]
    fn all_proposer_groups_do_not_depend_on_count() {
        let g = fig9(3);
        let t = CommitmentTerms::fair(0.7, 1.0);
        let a = optimal_group_payoff(&g) - 0.7 / 5.0;
        for (i, j) in [(HP, LP), (LP, HP), (HP, HP), (LP, LP)] {
            for k in 1..=5 {
                assert!(close(group_payoff(&g, &t, i, j, k).unwrap(), a));
            }
        }
    }
}
