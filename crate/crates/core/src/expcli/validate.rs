//! Self-checks behind the `validate` subcommand.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{
    absorbing_chain_fixation, analyze, fixation_probability, monte_carlo_fixation, EvolutionSetup,
    GroupGame, MatrixGame,
};
use crate::error::Result;
use crate::riskdom::{group_epsilon_thresholds, group_risk_dominance, pair_risk_dominance, pair_thresholds, Verdict};
use crate::tdgame::{CommitmentTerms, GroupParams, GroupStrategy, MarketParams, PairStrategy};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidateOptions {
    pub quick: bool,
    pub seed: u64,
}

/// Runs every check; never stops at the first failure.
pub fn run_checks(opts: ValidateOptions) -> Vec<CheckOutcome> {
    let checks: [(&'static str, fn(ValidateOptions) -> Result<(bool, String)>); 5] = [
        ("neutral_drift", neutral_drift),
        ("closed_form_fixation", closed_form),
        ("brute_force_oracle", brute_force),
        ("monte_carlo_agreement", monte_carlo),
        ("risk_dominance_signs", risk_signs),
    ];
    checks
        .iter()
        .map(|(name, check)| {
            let (passed, detail) = check(opts).unwrap_or_else(|e| (false, format!("error: {e}")));
            CheckOutcome { name, passed, detail }
        })
        .collect()
}

fn fig1_market(alpha: f64) -> MarketParams {
    MarketParams::new(1.0, 1.0, 6.0, 2.0, alpha).expect("valid market")
}

fn neutral_drift(_: ValidateOptions) -> Result<(bool, String)> {
    let market = fig1_market(0.3);
    let terms = CommitmentTerms::fair(0.1, 6.0);
    let group = GroupParams::new(market, 5, 2)?;
    let mut worst_rho: f64 = 0.0;
    let mut worst_pi: f64 = 0.0;
    for z in [10usize, 100] {
        let pair = EvolutionSetup::new(z, 0.0, MatrixGame::pairwise(&market, &terms, &PairStrategy::ALL))?;
        let grp = EvolutionSetup::new(z, 0.0, GroupGame::commitment(&group, &terms, &GroupStrategy::ALL)?)?;
        for q in [8usize, 6] {
            let (rho, res) = if q == 8 {
                (fixation_probability(&pair, 0, 1)?, analyze(&pair)?)
            } else {
                (fixation_probability(&grp, 0, 1)?, analyze(&grp)?)
            };
            worst_rho = worst_rho.max((rho - 1.0 / z as f64).abs());
            for f in res.frequencies {
                worst_pi = worst_pi.max((f - 1.0 / q as f64).abs());
            }
        }
    }
    Ok((
        worst_rho <= 1e-12 && worst_pi <= 1e-10,
        format!("max |rho - 1/Z| = {worst_rho:.2e}, max |pi - 1/q| = {worst_pi:.2e}"),
    ))
}

fn closed_form(_: ValidateOptions) -> Result<(bool, String)> {
    let z = 10;
    let mut worst: f64 = 0.0;
    for bd in [0.01, 0.1, 1.0] {
        let gap = 1.0;
        let game = MatrixGame::new(vec![vec![gap, gap], vec![0.0, 0.0]])?;
        let rho = fixation_probability(&EvolutionSetup::new(z, bd, game)?, 0, 1)?;
        let want = (1.0 - (-bd * gap).exp()) / (1.0 - (-(z as f64) * bd * gap).exp());
        worst = worst.max((rho - want).abs());
    }
    Ok((worst <= 1e-10, format!("max deviation {worst:.2e}")))
}

struct RandomPoint {
    market: MarketParams,
    terms: CommitmentTerms,
    beta: f64,
}

fn random_points(seed: u64, count: usize) -> Vec<RandomPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let market = fig1_market(rng.gen_range(0.05..0.95));
            let eps = rng.gen_range(0.0..2.0);
            let delta = rng.gen_range(0.0..6.0);
            let terms = if rng.gen_bool(0.5) {
                CommitmentTerms::fair(eps, delta)
            } else {
                CommitmentTerms::fixed(eps, delta, rng.gen_range(0.0..4.0), rng.gen_range(0.0..4.0))
            };
            RandomPoint {
                market,
                terms,
                beta: rng.gen_range(0.05..0.5),
            }
        })
        .collect()
}

fn brute_force(opts: ValidateOptions) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for p in random_points(opts.seed, if opts.quick { 2 } else { 5 }) {
        let setup = EvolutionSetup::new(8, p.beta, MatrixGame::pairwise(&p.market, &p.terms, &PairStrategy::ALL))?;
        for m in 0..8 {
            for r in 0..8 {
                if m != r {
                    let d = absorbing_chain_fixation(&setup, m, r)? - fixation_probability(&setup, m, r)?;
                    worst = worst.max(d.abs());
                }
            }
        }
    }
    Ok((worst <= 1e-12, format!("max |formula - linear solve| = {worst:.2e}")))
}

fn monte_carlo(opts: ValidateOptions) -> Result<(bool, String)> {
    let runs = if opts.quick { 20_000 } else { 100_000 };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    let mut worst: f64 = 0.0;
    for (k, p) in random_points(opts.seed, if opts.quick { 2 } else { 5 }).into_iter().enumerate() {
        let setup = EvolutionSetup::new(8, p.beta, MatrixGame::pairwise(&p.market, &p.terms, &PairStrategy::ALL))?;
        let m = rng.gen_range(0..8);
        let r = (m + rng.gen_range(1..8)) % 8;
        let exact = fixation_probability(&setup, m, r)?;
        let est = monte_carlo_fixation(&setup, m, r, runs, opts.seed.wrapping_add(k as u64))?;
        worst = worst.max((est.probability - exact).abs() / est.std_error.max(f64::MIN_POSITIVE));
    }
    Ok((worst <= 3.0, format!("max deviation {worst:.2} standard errors over {runs} runs each")))
}

fn risk_signs(_: ValidateOptions) -> Result<(bool, String)> {
    let mut disagreements = Vec::new();
    let eps_grid: Vec<f64> = (0..=700).map(|k| k as f64 * 0.1 + 0.05).collect();

    let group = GroupParams::new(fig1_market(0.5), 5, 2)?;
    let report = group_epsilon_thresholds(&group)?;
    for bound in &report.epsilon_bounds {
        let opp: GroupStrategy = bound.opponent.parse()?;
        for &eps in eps_grid.iter().filter(|e| (*e - bound.epsilon_upper).abs() >= 0.1) {
            let v = group_risk_dominance(&group, &CommitmentTerms::fair(eps, 6.0), GroupStrategy::HP, opp)?;
            if (v == Verdict::Dominant) != (eps < bound.epsilon_upper) {
                disagreements.push(format!("group HP vs {opp} at eps={eps}"));
            }
        }
    }
    for alpha in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let market = fig1_market(alpha);
        for &eps in eps_grid.iter().take(80) {
            let terms = CommitmentTerms::fair(eps, 6.0);
            let pt = pair_thresholds(&market, &terms);
            for (proposer, rep) in [(PairStrategy::HP, &pt.hp), (PairStrategy::LP, &pt.lp)] {
                for bound in &rep.epsilon_bounds {
                    if (eps - bound.epsilon_upper).abs() < 0.1 {
                        continue;
                    }
                    let opp: PairStrategy = bound.opponent.parse()?;
                    let v = pair_risk_dominance(&market, &terms, proposer, opp);
                    if (v == Verdict::Dominant) != (eps < bound.epsilon_upper) {
                        disagreements.push(format!("pair {proposer} vs {opp} at alpha={alpha} eps={eps}"));
                    }
                }
            }
        }
    }
    let detail = if disagreements.is_empty() {
        "analytic bounds agree with payoff sums".to_string()
    } else {
        format!("{} disagreements, first: {}", disagreements.len(), disagreements[0])
    };
    Ok((disagreements.is_empty(), detail))
}
