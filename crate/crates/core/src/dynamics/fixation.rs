use super::{EvolutionSetup, PopulationGame};
use crate::error::Result;

/// Probability that an individual with fitness `f_a` imitates one with fitness `f_b`.
pub fn imitation_probability(selection: f64, f_a: f64, f_b: f64) -> f64 {
    let z = selection * (f_b - f_a);
    if z.is_nan() {
        // 0 * inf: neutral
        return 0.5;
    }
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Probabilities `(T+, T-)` that the number of `mutant` players goes up or
/// down by one from `x`.
pub fn step_probabilities<G: PopulationGame>(
    setup: &EvolutionSetup<G>,
    mutant: usize,
    resident: usize,
    x: usize,
) -> Result<(f64, f64)> {
    let z = setup.pop_size as f64;
    let (pi_m, pi_r) = setup.game.average_payoffs(setup.pop_size, mutant, resident, x)?;
    let xf = x as f64;
    let mixing = (z - xf) / z * xf / z;
    Ok((
        mixing * imitation_probability(setup.selection, pi_r, pi_m),
        mixing * imitation_probability(setup.selection, pi_m, pi_r),
    ))
}

/// Probability that a single `mutant` takes over a population of `resident`s.
///
/// Uses `T-(x)/T+(x) = exp(-beta (Pi_m(x) - Pi_r(x)))` and sums the products of
/// ratios in log space with a max shift.
pub fn fixation_probability<G: PopulationGame>(
    setup: &EvolutionSetup<G>,
    mutant: usize,
    resident: usize,
) -> Result<f64> {
    let z = setup.pop_size;
    let beta = setup.selection;
    let mut log_terms = Vec::with_capacity(z);
    log_terms.push(0.0f64);
    let mut cum = 0.0f64;
    for x in 1..z {
        let (pi_m, pi_r) = setup.game.average_payoffs(z, mutant, resident, x)?;
        let gap = pi_r - pi_m;
        // beta = 0 must stay exactly neutral even against infinite payoffs
        if beta != 0.0 {
            cum += beta * gap;
        }
        log_terms.push(cum);
    }
    let max = log_terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let scaled: f64 = log_terms.iter().map(|t| (t - max).exp()).sum();
    let rho = (-max).exp() / scaled;
    Ok(rho.clamp(0.0, 1.0))
}

/// `ln(rho(i in j) / rho(j in i))`, which reduces to
/// `beta * sum_{x=1}^{Z-1} (Pi_i(x) - Pi_j(x))` with `x` counting `i` players.
/// Positive when `i` invades `j` more easily than the reverse.
pub fn fixation_log_ratio<G: PopulationGame>(setup: &EvolutionSetup<G>, i: usize, j: usize) -> Result<f64> {
    let mut total = 0.0;
    for x in 1..setup.pop_size {
        let (pi_i, pi_j) = setup.game.average_payoffs(setup.pop_size, i, j, x)?;
        total += pi_i - pi_j;
    }
    Ok(setup.selection * total)
}
