//! Independent checks on the fixation formula: a direct linear solve of the
//! absorbing birth-death chain and a seeded Monte Carlo simulation of it.
//! Desk scale only; nothing on the production path calls these.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{step_probabilities, EvolutionSetup, PopulationGame};
use crate::error::{Error, Result};

const BATCH: u64 = 4096;

/// Absorption probability at `Z` starting from one mutant, from the full
/// `(Z+1)`-state linear system.
pub fn absorbing_chain_fixation<G: PopulationGame>(
    setup: &EvolutionSetup<G>,
    mutant: usize,
    resident: usize,
) -> Result<f64> {
    let z = setup.pop_size;
    let mut a = DMatrix::<f64>::zeros(z + 1, z + 1);
    let mut rhs = DVector::<f64>::zeros(z + 1);
    a[(0, 0)] = 1.0;
    a[(z, z)] = 1.0;
    rhs[z] = 1.0;
    for x in 1..z {
        let (up, down) = step_probabilities(setup, mutant, resident, x)?;
        // phi_x = down phi_{x-1} + up phi_{x+1} + (1 - up - down) phi_x
        a[(x, x - 1)] = -down;
        a[(x, x)] = up + down;
        a[(x, x + 1)] = -up;
    }
    let phi = a
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::DegenerateChain("absorbing chain system is singular".into()))?;
    Ok(phi[1])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub probability: f64,
    pub std_error: f64,
    pub runs: u64,
}

impl MonteCarloEstimate {
    /// Whether `value` lies within `k` standard errors of the estimate.
    pub fn agrees_with(&self, value: f64, k: f64) -> bool {
        (self.probability - value).abs() <= k * self.std_error
    }
}

/// Fraction of `runs` simulations, each started from a single mutant, that end
/// with the mutant fixed. Steps include the chance of nothing happening.
///
/// Runs are split into fixed-size batches, each with its own ChaCha stream, so
/// the result depends only on `seed` and not on the thread count.
pub fn monte_carlo_fixation<G: PopulationGame>(
    setup: &EvolutionSetup<G>,
    mutant: usize,
    resident: usize,
    runs: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if runs == 0 {
        return Err(Error::invalid("monte carlo needs at least one run"));
    }
    let z = setup.pop_size;
    let mut steps = Vec::with_capacity(z);
    steps.push((0.0, 0.0));
    for x in 1..z {
        steps.push(step_probabilities(setup, mutant, resident, x)?);
    }
    let batches = runs.div_ceil(BATCH);
    let fixed: u64 = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let count = BATCH.min(runs - b * BATCH);
            let mut hits = 0u64;
            for _ in 0..count {
                let mut x = 1usize;
                while x > 0 && x < z {
                    let (up, down) = steps[x];
                    let u: f64 = rng.gen();
                    if u < up {
                        x += 1;
                    } else if u < up + down {
                        x -= 1;
                    }
                }
                if x == z {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let n = runs as f64;
    let p = fixed as f64 / n;
    Ok(MonteCarloEstimate {
        probability: p,
        std_error: (p * (1.0 - p) / n).sqrt(),
        runs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{fixation_probability, MatrixGame};

    fn td_game() -> MatrixGame {
        MatrixGame::new(vec![vec![2.0, 5.0], vec![1.0, 0.0]]).unwrap()
    }

    #[test]
    fn brute_force_matches_formula() {
        for z in 2..=8 {
            for beta in [0.0, 0.05, 0.5, 3.0] {
                let s = EvolutionSetup::new(z, beta, td_game()).unwrap();
                for (m, r) in [(0, 1), (1, 0)] {
                    let direct = absorbing_chain_fixation(&s, m, r).unwrap();
                    let formula = fixation_probability(&s, m, r).unwrap();
                    assert!((direct - formula).abs() < 1e-12, "z={z} beta={beta}");
                }
            }
        }
    }

    #[test]
    fn neutral_monte_carlo() {
        let s = EvolutionSetup::new(10, 0.0, td_game()).unwrap();
        let est = monte_carlo_fixation(&s, 0, 1, 100_000, 7).unwrap();
        assert!(est.agrees_with(0.1, 3.0), "{est:?}");
    }

    #[test]
    fn monte_carlo_is_deterministic_per_seed() {
        let s = EvolutionSetup::new(8, 0.3, td_game()).unwrap();
        let a = monte_carlo_fixation(&s, 0, 1, 10_000, 42).unwrap();
        let b = monte_carlo_fixation(&s, 0, 1, 10_000, 42).unwrap();
        assert_eq!(a, b);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let c = pool.install(|| monte_carlo_fixation(&s, 0, 1, 10_000, 42).unwrap());
        assert_eq!(a, c);
        assert!(monte_carlo_fixation(&s, 0, 1, 0, 42).is_err());
    }
}
