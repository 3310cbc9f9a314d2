use super::{fixation_probability, EvolutionSetup, PopulationGame};
use crate::error::{Error, Result};

/// Row-stochastic transition matrix between monomorphic states.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    size: usize,
    entries: Vec<f64>,
}

impl TransitionMatrix {
    /// Wraps a row-major square matrix after checking it is row stochastic.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 || rows.iter().any(|r| r.len() != size) {
            return Err(Error::invalid("transition matrix must be square and non-empty"));
        }
        for (s, row) in rows.iter().enumerate() {
            if row.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
                return Err(Error::invalid(format!("row {s} has entries outside [0,1]")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > 1e-12 {
                return Err(Error::invalid(format!("row {s} sums to {sum}")));
            }
        }
        Ok(TransitionMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, from: usize, to: usize) -> f64 {
        self.entries[from * self.size + to]
    }

    pub fn row(&self, from: usize) -> &[f64] {
        &self.entries[from * self.size..(from + 1) * self.size]
    }
}

/// `P(s -> t) = rho(mutant t in resident s) / (q - 1)`; diagonal completes each row.
pub fn transition_matrix<G: PopulationGame>(setup: &EvolutionSetup<G>) -> Result<TransitionMatrix> {
    let q = setup.strategy_count();
    let norm = (q - 1) as f64;
    let mut entries = vec![0.0; q * q];
    for from in 0..q {
        let mut off = 0.0;
        for to in 0..q {
            if to == from {
                continue;
            }
            let p = fixation_probability(setup, to, from)? / norm;
            entries[from * q + to] = p;
            off += p;
        }
        entries[from * q + from] = 1.0 - off;
    }
    Ok(TransitionMatrix { size: q, entries })
}

/// Unique probability vector `pi` with `pi M = pi`.
///
/// Direct solve by Grassmann-Taksar-Heyman state reduction: Gaussian
/// elimination on the balance equations written without subtractions, so
/// the result keeps relative accuracy even when exit probabilities span many
/// orders of magnitude.
pub fn stationary_distribution(m: &TransitionMatrix) -> Result<Vec<f64>> {
    let q = m.size();
    let mut a: Vec<Vec<f64>> = (0..q).map(|s| m.row(s).to_vec()).collect();

    for k in (1..q).rev() {
        let exit: f64 = a[k][..k].iter().sum();
        if !(exit > 0.0) || !exit.is_finite() {
            return Err(Error::DegenerateChain(format!(
                "state {k} cannot reach the states before it; chain is reducible"
            )));
        }
        for i in 0..k {
            a[i][k] /= exit;
        }
        for i in 0..k {
            let via = a[i][k];
            if via == 0.0 {
                continue;
            }
            for j in 0..k {
                if i != j {
                    a[i][j] += via * a[k][j];
                }
            }
        }
    }

    let mut pi = vec![0.0; q];
    pi[0] = 1.0;
    for k in 1..q {
        pi[k] = (0..k).map(|i| pi[i] * a[i][k]).sum();
    }
    let total: f64 = pi.iter().sum();
    if !(total.is_finite() && total > 0.0) {
        return Err(Error::DegenerateChain("stationary vector does not normalise".into()));
    }
    pi.iter_mut().for_each(|p| *p /= total);

    let residual = (0..q)
        .map(|t| ((0..q).map(|s| pi[s] * m.get(s, t)).sum::<f64>() - pi[t]).abs())
        .fold(0.0, f64::max);
    if residual > 1e-10 {
        return Err(Error::DegenerateChain(format!(
            "stationary residual {residual:e} exceeds 1e-10"
        )));
    }
    Ok(pi)
}

/// Stationary-frequency-weighted payoff of monomorphic populations.
pub fn expected_welfare(frequencies: &[f64], monomorphic: &[f64]) -> Result<f64> {
    if frequencies.len() != monomorphic.len() {
        return Err(Error::invalid(format!(
            "{} frequencies for {} payoffs",
            frequencies.len(),
            monomorphic.len()
        )));
    }
    Ok(frequencies.iter().zip(monomorphic).map(|(f, p)| f * p).sum())
}

#[derive(Debug, Clone, PartialEq)]
pub struct StationaryResult {
    pub frequencies: Vec<f64>,
    pub welfare: f64,
}

/// Transition matrix, stationary distribution and welfare in one go.
pub fn analyze<G: PopulationGame>(setup: &EvolutionSetup<G>) -> Result<StationaryResult> {
    let m = transition_matrix(setup)?;
    let frequencies = stationary_distribution(&m)?;
    let monomorphic: Vec<f64> = (0..setup.strategy_count())
        .map(|s| setup.game.monomorphic_payoff(s))
        .collect();
    let welfare = expected_welfare(&frequencies, &monomorphic)?;
    Ok(StationaryResult {
        frequencies,
        welfare,
    })
}
