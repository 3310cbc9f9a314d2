//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tdcommit::dynamics::{
    absorbing_chain_fixation, analyze, fixation_log_ratio, fixation_probability, monte_carlo_fixation,
    EvolutionSetup, GroupGame, MatrixGame,
};
use tdcommit::expcli::{parse_config, run_scenario, ResultRow};
use tdcommit::riskdom::{alpha_threshold, group_epsilon_thresholds, group_risk_dominance, hp_vs_lp, Verdict};
use tdcommit::tdgame::{pair_payoff, CommitmentTerms, GroupParams, GroupStrategy, MarketParams, PairStrategy};

/// Writes straight to stderr so the line survives libtest's output capture.
fn report(criterion: &str, passed: bool, detail: &str) {
    let line = format!("\n{} {criterion}: {detail}\n", if passed { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn conclude(criterion: &str, failures: Vec<String>, started: Instant, budget: Duration, summary: String) {
    let elapsed = started.elapsed();
    let mut failures = failures;
    if elapsed > budget {
        failures.push(format!("runtime {elapsed:.2?} exceeds {budget:?}"));
    }
    let passed = failures.is_empty();
    let detail = if passed {
        format!("{summary} ({elapsed:.2?})")
    } else {
        format!("{} ({elapsed:.2?})", failures.join("; "))
    };
    report(criterion, passed, &detail);
    assert!(passed, "{criterion}: {detail}");
}

fn fig1_market(alpha: f64) -> MarketParams {
    MarketParams::new(1.0, 1.0, 6.0, 2.0, alpha).unwrap()
}

#[test]
fn neutral_drift_exactness() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut worst_rho: f64 = 0.0;
    let mut worst_pi: f64 = 0.0;
    let market = fig1_market(0.3);
    let terms = CommitmentTerms::fair(0.1, 6.0);
    let group = GroupParams::new(market, 5, 2).unwrap();
    for z in [10usize, 100] {
        let pair = EvolutionSetup::new(z, 0.0, MatrixGame::pairwise(&market, &terms, &PairStrategy::ALL)).unwrap();
        let grp = EvolutionSetup::new(z, 0.0, GroupGame::commitment(&group, &terms, &GroupStrategy::ALL).unwrap()).unwrap();
        let mut rhos = Vec::new();
        for m in 0..8 {
            for r in 0..8 {
                if m != r {
                    rhos.push(fixation_probability(&pair, m, r).unwrap());
                }
            }
        }
        for m in 0..6 {
            for r in 0..6 {
                if m != r {
                    rhos.push(fixation_probability(&grp, m, r).unwrap());
                }
            }
        }
        for rho in rhos {
            worst_rho = worst_rho.max((rho - 1.0 / z as f64).abs());
        }
        for (q, res) in [(8.0, analyze(&pair).unwrap()), (6.0, analyze(&grp).unwrap())] {
            for f in res.frequencies {
                worst_pi = worst_pi.max((f - 1.0 / q).abs());
            }
        }
    }
    if worst_rho > 1e-12 {
        failures.push(format!("max |rho - 1/Z| = {worst_rho:e}"));
    }
    if worst_pi > 1e-10 {
        failures.push(format!("max |pi - 1/q| = {worst_pi:e}"));
    }
    conclude(
        "neutral-drift exactness",
        failures,
        started,
        Duration::from_secs(1),
        format!("max |rho - 1/Z| = {worst_rho:.1e}, max |pi - 1/q| = {worst_pi:.1e}"),
    );
}

#[test]
fn closed_form_fixation() {
    let started = Instant::now();
    let z = 10usize;
    let mut worst: f64 = 0.0;
    for bd in [0.01, 0.1, 1.0] {
        for gap in [0.5, 2.0] {
            let beta = bd / gap;
            let game = MatrixGame::new(vec![vec![gap, gap], vec![0.0, 0.0]]).unwrap();
            let rho = fixation_probability(&EvolutionSetup::new(z, beta, game).unwrap(), 0, 1).unwrap();
            let want = (1.0 - f64::exp(-bd)) / (1.0 - f64::exp(-(z as f64) * bd));
            worst = worst.max((rho - want).abs());
        }
    }
    let failures = if worst <= 1e-10 { vec![] } else { vec![format!("max deviation {worst:e}")] };
    conclude(
        "closed-form fixation",
        failures,
        started,
        Duration::from_secs(1),
        format!("max deviation {worst:.1e}"),
    );
}

#[test]
fn brute_force_oracle() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst_solve: f64 = 0.0;
    let mut worst_se: f64 = 0.0;
    for point in 0..5 {
        let market = fig1_market(rng.gen_range(0.05..0.95));
        let terms = CommitmentTerms::fixed(
            rng.gen_range(0.0..2.0),
            rng.gen_range(0.0..6.0),
            rng.gen_range(0.0..4.0),
            rng.gen_range(0.0..4.0),
        );
        let beta = rng.gen_range(0.05..0.5);
        let setup = EvolutionSetup::new(8, beta, MatrixGame::pairwise(&market, &terms, &PairStrategy::ALL)).unwrap();
        for m in 0..8 {
            for r in 0..8 {
                if m != r {
                    let d = absorbing_chain_fixation(&setup, m, r).unwrap() - fixation_probability(&setup, m, r).unwrap();
                    worst_solve = worst_solve.max(d.abs());
                }
            }
        }
        let m = rng.gen_range(0..8);
        let r = (m + rng.gen_range(1..8)) % 8;
        let exact = fixation_probability(&setup, m, r).unwrap();
        let est = monte_carlo_fixation(&setup, m, r, 100_000, 7 + point).unwrap();
        worst_se = worst_se.max((est.probability - exact).abs() / est.std_error);
    }
    let mut failures = Vec::new();
    if worst_solve > 1e-12 {
        failures.push(format!("formula vs linear solve {worst_solve:e}"));
    }
    if worst_se > 3.0 {
        failures.push(format!("Monte Carlo off by {worst_se:.2} standard errors"));
    }
    conclude(
        "brute-force oracle",
        failures,
        started,
        Duration::from_secs(30),
        format!("max |formula - solve| = {worst_solve:.1e}, max MC deviation {worst_se:.2} SE"),
    );
}

/// Linear interpolation of the first crossing of `level` by `ys` over `xs`.
fn crossing(xs: &[f64], ys: &[f64], level: f64) -> Option<f64> {
    (1..xs.len()).find_map(|k| {
        let (a, b) = (ys[k - 1] - level, ys[k] - level);
        (a.signum() != b.signum()).then(|| xs[k - 1] + a / (a - b) * (xs[k] - xs[k - 1]))
    })
}

#[test]
fn pairwise_alpha_thresholds() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    let market = fig1_market(0.5);
    for (eps, want) in [(0.1, 0.658_333_333_333_333_4), (1.0, 0.583_333_333_333_333_4), (2.0, 0.5)] {
        let got = alpha_threshold(&market, eps, 6.0);
        if (got - want).abs() > 1e-9 {
            failures.push(format!("alpha bound at eps={eps}: {got}"));
        }
    }
    let doc = r#"{"scenario_id": "fig1", "panels": [{"eps": 0.1, "beta": 0.1}, {"eps": 1, "beta": 0.1}, {"eps": 2, "beta": 0.1}]}"#;
    let rows = run_scenario(&parse_config(doc, "fig1").unwrap()).unwrap();
    for (panel, eps) in [0.1, 1.0, 2.0].into_iter().enumerate() {
        let chunk: &[ResultRow] = &rows[panel * 19..(panel + 1) * 19];
        let xs: Vec<f64> = chunk.iter().map(|r| r.params[0]).collect();
        let ys: Vec<f64> = chunk.iter().map(|r| r.freq_commit).collect();
        let bound = alpha_threshold(&market, eps, 6.0);
        match crossing(&xs, &ys, 0.5) {
            Some(x) if (x - bound).abs() <= 0.05 => summary.push(format!("eps={eps}: crossing {x:.3} vs {bound:.3}")),
            Some(x) => failures.push(format!("eps={eps}: crossing {x:.3} vs bound {bound:.3}")),
            None => failures.push(format!("eps={eps}: HP+LP never crosses 0.5")),
        }
    }
    conclude(
        "pairwise alpha-thresholds",
        failures,
        started,
        Duration::from_secs(120),
        summary.join(", "),
    );
}

#[test]
fn n_player_epsilon_thresholds() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let group = GroupParams::new(fig1_market(0.5), 5, 2).unwrap();
    let report = group_epsilon_thresholds(&group).unwrap();
    let h5 = 1.0 + 0.5 + 1.0 / 3.0 + 0.25 + 0.2;
    let expected = [
        ("HC", 2.4 / h5, 1.0511),
        ("LC", 3.0 / h5, 1.3139),
        ("HN", 12.0, 12.0),
        ("LN", 58.75, 58.75),
    ];
    for (opp, exact, quoted) in expected {
        let got = report.bound_against(opp).unwrap();
        if (got - exact).abs() > 1e-3 || (got - quoted).abs() > 1e-3 {
            failures.push(format!("HP vs {opp}: bound {got}"));
        }
    }
    let mut checked = 0;
    for (opp, _, _) in expected {
        let bound = report.bound_against(opp).unwrap();
        let opp: GroupStrategy = opp.parse().unwrap();
        for k in 0..=1600 {
            let eps = k as f64 * 0.05;
            if (eps - bound).abs() < 0.1 {
                continue;
            }
            let v = group_risk_dominance(&group, &CommitmentTerms::fair(eps, 6.0), GroupStrategy::HP, opp).unwrap();
            checked += 1;
            if (v == Verdict::Dominant) != (eps < bound) {
                failures.push(format!("sign disagrees for HP vs {opp} at eps={eps}"));
                break;
            }
        }
    }
    conclude(
        "N-player epsilon-thresholds",
        failures,
        started,
        Duration::from_secs(60),
        format!(
            "bounds {:.4}, {:.4}, {:.4}, {:.4}; {checked} signs agree outside the band",
            report.epsilon_bounds[0].epsilon_upper,
            report.epsilon_bounds[1].epsilon_upper,
            report.epsilon_bounds[2].epsilon_upper,
            report.epsilon_bounds[3].epsilon_upper
        ),
    );
}

/// Finite populations: the fixation-ratio sign at Z = 100 crosses close to
/// each analytic bound, and approaches the LN bound as Z grows.
#[test]
fn finite_population_crossings() {
    let group = GroupParams::new(fig1_market(0.5), 5, 2).unwrap();
    let report = group_epsilon_thresholds(&group).unwrap();
    let crossing_at = |opp: GroupStrategy, z: usize| {
        let ratio = |eps: f64| {
            let game = GroupGame::commitment(&group, &CommitmentTerms::fair(eps, 6.0), &[GroupStrategy::HP, opp]).unwrap();
            fixation_log_ratio(&EvolutionSetup::new(z, 0.1, game).unwrap(), 0, 1).unwrap()
        };
        let (mut lo, mut hi) = (0.0, 100.0);
        for _ in 0..50 {
            let mid = 0.5 * (lo + hi);
            if ratio(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    for opp in [GroupStrategy::HC, GroupStrategy::LC, GroupStrategy::HN] {
        let bound = report.bound_against(opp.label()).unwrap();
        let x = crossing_at(opp, 100);
        assert!((x - bound).abs() < 0.1, "HP vs {opp}: {x} vs {bound}");
    }
    let gaps: Vec<f64> = [100, 400, 1600]
        .iter()
        .map(|&z| crossing_at(GroupStrategy::LN, z) - 58.75)
        .collect();
    assert!(gaps[0] > 2.0 && gaps[0] < 2.5, "{gaps:?}");
    assert!(gaps[1] < gaps[0] / 3.0 && gaps[2] < gaps[1] / 3.0 && gaps[2] > 0.0, "{gaps:?}");
}

#[test]
fn welfare_improvement() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let pair = parse_config(r#"{"baseline": true, "params": {"alpha": 0.3, "eps": 0.1, "beta": 0.1}}"#, "pair").unwrap();
    let row = &run_scenario(&pair).unwrap()[0];
    let base = row.welfare_baseline.unwrap();
    if row.welfare_commit <= base {
        failures.push(format!("pairwise: {} <= {}", row.welfare_commit, base));
    }
    let fig7 = parse_config(r#"{"scenario_id": "fig7"}"#, "fig7").unwrap();
    let mut compared = 0;
    for r in run_scenario(&fig7).unwrap() {
        let (eps, mu) = (r.params[6], r.params[8]);
        if eps == 0.1 && mu < 5.0 {
            compared += 1;
            if r.welfare_commit < r.welfare_baseline.unwrap() {
                failures.push(format!("fig7 b_H={} beta={} mu={mu}: commitment lowers welfare", r.params[1], r.params[3]));
            }
        }
    }
    conclude(
        "welfare improvement",
        failures,
        started,
        Duration::from_secs(120),
        format!("pairwise {:.4} > {:.4}; {compared} N-player points with mu < 5 improve", row.welfare_commit, base),
    );
}

#[test]
fn intermediate_mu_peak() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let cfg = parse_config(r#"{"scenario_id": "fig6", "panels": [{"benefit_high": 6}]}"#, "fig6").unwrap();
    let rows = run_scenario(&cfg).unwrap();
    let at = |mu: f64, eps: f64| {
        rows.iter()
            .find(|r| r.params[8] == mu && (r.params[6] - eps).abs() < 1e-12)
            .map(|r| r.freq_commit)
            .unwrap()
    };
    let eps_values: Vec<f64> = rows
        .iter()
        .filter(|r| r.params[8] == 2.0 && r.params[6] <= 1.0 + 1e-12)
        .map(|r| r.params[6])
        .collect();
    for &eps in &eps_values {
        let (two, five) = (at(2.0, eps), at(5.0, eps));
        if two <= five {
            failures.push(format!("eps={eps}: mu=2 gives {two:.4}, mu=5 gives {five:.4}"));
        }
    }
    conclude(
        "intermediate-mu peak",
        failures,
        started,
        Duration::from_secs(60),
        format!("mu=2 beats mu=5 at all {} eps values <= 1", eps_values.len()),
    );
}

#[test]
fn fair_agreement_identity() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100 {
        let c_h: f64 = rng.gen_range(0.0..3.0);
        let c_l: f64 = rng.gen_range(0.0..3.0);
        let b_l: f64 = rng.gen_range(0.0..5.0);
        // net benefit of H strictly above that of L
        let b_h = (b_l + c_h - c_l + rng.gen_range(0.1..5.0)).max(b_l);
        let Ok(market) = MarketParams::new(c_h, c_l, b_h, b_l, rng.gen_range(0.01..0.99)) else {
            failures.push("draw produced an invalid market".into());
            continue;
        };
        let terms = CommitmentTerms::fair(rng.gen_range(0.0..4.0), rng.gen_range(0.0..8.0));
        let ab = pair_payoff(&market, &terms, PairStrategy::HP, PairStrategy::HC);
        let ba = pair_payoff(&market, &terms, PairStrategy::HC, PairStrategy::HP);
        if ab != ba {
            failures.push(format!("HP/HC payoffs differ: {ab} vs {ba}"));
        }
        if hp_vs_lp(&terms, &market) != Verdict::Tie {
            failures.push("hp_vs_lp is not a tie".into());
        }
    }
    conclude(
        "fair-agreement identity",
        failures,
        started,
        Duration::from_secs(10),
        "100 draws exact".into(),
    );
}

#[test]
fn determinism() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let bin = env!("CARGO_BIN_EXE_tdcommit");
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (k, jobs) in [None, Some("1"), Some("4")].iter().enumerate() {
        let out = dir.path().join(format!("run{k}"));
        let mut cmd = Command::new(bin);
        cmd.args(["fig", "fig1", "--out"]).arg(&out);
        if let Some(j) = jobs {
            cmd.args(["--jobs", j]);
        }
        let status = cmd.output().unwrap().status;
        if !status.success() {
            failures.push(format!("run {k} exited with {status}"));
            continue;
        }
        outputs.push(std::fs::read(out.join("fig1.csv")).unwrap());
    }
    if outputs.windows(2).any(|w| w[0] != w[1]) {
        failures.push("CSV bytes differ between runs".into());
    }
    conclude(
        "determinism",
        failures,
        started,
        Duration::from_secs(60),
        format!("{} identical fig1 CSVs ({} bytes)", outputs.len(), outputs.first().map_or(0, Vec::len)),
    );
}
