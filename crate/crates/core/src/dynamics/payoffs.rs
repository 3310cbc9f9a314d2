use crate::error::{Error, Result};

/// Binomial coefficient as a float; zero for impossible arguments.
pub(crate) fn binomial(n: i64, k: i64) -> f64 {
    if n < 0 || k < 0 || k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for step in 0..k {
        acc = acc * (n - step) as f64 / (step + 1) as f64;
    }
    acc
}

/// Average payoffs from pairwise encounters when `x` of `pop_size` individuals
/// use strategy `i` and the rest use `j`.
///
/// `payoff(a, b)` is the payoff of an `a`-strategist against a `b`-strategist.
/// The first component is only meaningful for `x >= 1` and the second for
/// `x <= pop_size - 1`.
pub fn pair_average_payoffs(
    payoff: impl Fn(usize, usize) -> f64,
    pop_size: usize,
    i: usize,
    j: usize,
    x: usize,
) -> Result<(f64, f64)> {
    if pop_size < 2 {
        return Err(Error::invalid(format!("population size {pop_size} < 2")));
    }
    if x > pop_size {
        return Err(Error::invalid(format!("count {x} exceeds population {pop_size}")));
    }
    let z = pop_size as f64;
    let xf = x as f64;
    let pi_i = if x >= 1 {
        ((xf - 1.0) * payoff(i, i) + (z - xf) * payoff(i, j)) / (z - 1.0)
    } else {
        f64::NAN
    };
    let pi_j = if x < pop_size {
        (xf * payoff(j, i) + (z - xf - 1.0) * payoff(j, j)) / (z - 1.0)
    } else {
        f64::NAN
    };
    Ok((pi_i, pi_j))
}

/// Expected payoffs in `N`-player groups drawn without replacement from a
/// population of `x` `i`-strategists and `pop_size - x` `j`-strategists.
///
/// `pay_i(c)` is an `i`-player's payoff in a group with `c` `i`-players
/// (itself included, `1..=N`); `pay_j(k)` is a `j`-player's payoff in a group
/// with `k` `i`-players (`0..N`). Undefined sides are returned as NaN.
pub fn group_expected_payoffs(
    pop_size: usize,
    group_size: usize,
    x: usize,
    pay_i: impl Fn(usize) -> f64,
    pay_j: impl Fn(usize) -> f64,
) -> Result<(f64, f64)> {
    if group_size < 2 {
        return Err(Error::invalid(format!("group size {group_size} < 2")));
    }
    if group_size > pop_size {
        return Err(Error::invalid(format!(
            "group size {group_size} exceeds population {pop_size}"
        )));
    }
    if x > pop_size {
        return Err(Error::invalid(format!("count {x} exceeds population {pop_size}")));
    }
    let z = pop_size as i64;
    let n = group_size as i64;
    let xi = x as i64;
    let total = binomial(z - 1, n - 1);

    let pi_i = if x >= 1 {
        (0..n)
            .map(|k| {
                let w = binomial(xi - 1, k) * binomial(z - xi, n - 1 - k);
                if w == 0.0 {
                    0.0
                } else {
                    w / total * pay_i(k as usize + 1)
                }
            })
            .sum()
    } else {
        f64::NAN
    };
    let pi_j = if x < pop_size {
        (0..n)
            .map(|k| {
                let w = binomial(xi, k) * binomial(z - 1 - xi, n - 1 - k);
                if w == 0.0 {
                    0.0
                } else {
                    w / total * pay_j(k as usize)
                }
            })
            .sum()
    } else {
        f64::NAN
    };
    Ok((pi_i, pi_j))
}
