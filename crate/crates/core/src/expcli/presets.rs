//! Figure presets, written in the same JSON format a user config uses.

use super::config::ConfigDoc;

pub const IDS: [&str; 10] = [
    "fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10",
];

const FIG1: &str = r#"{
    "game": "pairwise", "fair": true,
    "params": {"cost_high": 1, "cost_low": 1, "benefit_high": 6, "benefit_low": 2, "delta": 6, "pop_size": 100},
    "axes": [{"name": "alpha", "min": 0.05, "max": 0.95, "steps": 19}],
    "panels": [
        {"eps": 0.1, "beta": 0.01}, {"eps": 0.1, "beta": 0.1}, {"eps": 0.1, "beta": 1},
        {"eps": 1, "beta": 0.01}, {"eps": 1, "beta": 0.1}, {"eps": 1, "beta": 1},
        {"eps": 2, "beta": 0.01}, {"eps": 2, "beta": 0.1}, {"eps": 2, "beta": 1}
    ]
}"#;

const FIG2: &str = r#"{
    "game": "pairwise", "fair": true,
    "params": {"cost_high": 1, "cost_low": 1, "benefit_high": 6, "benefit_low": 2, "pop_size": 100},
    "axes": [{"name": "eps", "min": 0, "max": 8, "steps": 41},
             {"name": "delta", "min": 0, "max": 8, "steps": 41}],
    "panels": [
        {"beta": 0.01, "alpha": 0.1}, {"beta": 0.01, "alpha": 0.3}, {"beta": 0.01, "alpha": 0.5},
        {"beta": 0.1, "alpha": 0.1}, {"beta": 0.1, "alpha": 0.3}, {"beta": 0.1, "alpha": 0.5},
        {"beta": 1, "alpha": 0.1}, {"beta": 1, "alpha": 0.3}, {"beta": 1, "alpha": 0.5}
    ]
}"#;

const FIG3: &str = r#"{
    "game": "pairwise", "fair": true, "baseline": true,
    "params": {"cost_high": 1, "cost_low": 1, "benefit_low": 2, "delta": 6, "pop_size": 100},
    "axes": [{"name": "alpha", "min": 0.05, "max": 0.95, "steps": 19}],
    "panels": [
        {"benefit_high": 6, "beta": 0.01, "eps": 0.1}, {"benefit_high": 6, "beta": 0.01, "eps": 1}, {"benefit_high": 6, "beta": 0.01, "eps": 2},
        {"benefit_high": 6, "beta": 0.1, "eps": 0.1}, {"benefit_high": 6, "beta": 0.1, "eps": 1}, {"benefit_high": 6, "beta": 0.1, "eps": 2},
        {"benefit_high": 6, "beta": 1, "eps": 0.1}, {"benefit_high": 6, "beta": 1, "eps": 1}, {"benefit_high": 6, "beta": 1, "eps": 2},
        {"benefit_high": 3, "beta": 0.01, "eps": 0.1}, {"benefit_high": 3, "beta": 0.01, "eps": 1}, {"benefit_high": 3, "beta": 0.01, "eps": 2},
        {"benefit_high": 3, "beta": 0.1, "eps": 0.1}, {"benefit_high": 3, "beta": 0.1, "eps": 1}, {"benefit_high": 3, "beta": 0.1, "eps": 2},
        {"benefit_high": 3, "beta": 1, "eps": 0.1}, {"benefit_high": 3, "beta": 1, "eps": 1}, {"benefit_high": 3, "beta": 1, "eps": 2}
    ]
}"#;

const FIG4: &str = r#"{
    "game": "group",
    "params": {"cost_high": 1, "cost_low": 1, "benefit_low": 2, "group_size": 5, "beta": 0.1, "alpha": 0.5, "pop_size": 100},
    "axes": [{"name": "eps", "min": 0, "max": 4, "steps": 41}],
    "panels": [
        {"benefit_high": 6, "mu": 1}, {"benefit_high": 6, "mu": 2}, {"benefit_high": 6, "mu": 5},
        {"benefit_high": 3, "mu": 1}, {"benefit_high": 3, "mu": 2}, {"benefit_high": 3, "mu": 5}
    ]
}"#;

const FIG5: &str = r#"{
    "game": "group",
    "params": {"cost_high": 1, "cost_low": 1, "benefit_low": 2, "group_size": 5, "mu": 2, "beta": 0.1, "pop_size": 100},
    "axes": [{"name": "alpha", "min": 0.05, "max": 0.95, "steps": 19}],
    "panels": [
        {"benefit_high": 6, "eps": 0.1}, {"benefit_high": 6, "eps": 1}, {"benefit_high": 6, "eps": 2},
        {"benefit_high": 3, "eps": 0.1}, {"benefit_high": 3, "eps": 1}, {"benefit_high": 3, "eps": 2}
    ]
}"#;

const FIG6: &str = r#"{
    "game": "group",
    "params": {"cost_high": 1, "cost_low": 1, "benefit_low": 2, "group_size": 5, "beta": 0.1, "alpha": 0.5, "pop_size": 100},
    "axes": [{"name": "mu", "values": [1, 2, 3, 4, 5]},
             {"name": "eps", "min": 0, "max": 4, "steps": 41}],
    "panels": [{"benefit_high": 6}, {"benefit_high": 3}]
}"#;

const FIG7: &str = r#"{
    "game": "group", "baseline": true,
    "params": {"cost_high": 1, "cost_low": 1, "benefit_low": 2, "group_size": 5, "alpha": 0.5, "pop_size": 100},
    "axes": [{"name": "mu", "values": [1, 2, 3, 4, 5]}],
    "panels": [
        {"benefit_high": 6, "beta": 0.01, "eps": 0.1}, {"benefit_high": 6, "beta": 0.01, "eps": 1}, {"benefit_high": 6, "beta": 0.01, "eps": 2},
        {"benefit_high": 6, "beta": 0.1, "eps": 0.1}, {"benefit_high": 6, "beta": 0.1, "eps": 1}, {"benefit_high": 6, "beta": 0.1, "eps": 2},
        {"benefit_high": 6, "beta": 1, "eps": 0.1}, {"benefit_high": 6, "beta": 1, "eps": 1}, {"benefit_high": 6, "beta": 1, "eps": 2},
        {"benefit_high": 3, "beta": 0.01, "eps": 0.1}, {"benefit_high": 3, "beta": 0.01, "eps": 1}, {"benefit_high": 3, "beta": 0.01, "eps": 2},
        {"benefit_high": 3, "beta": 0.1, "eps": 0.1}, {"benefit_high": 3, "beta": 0.1, "eps": 1}, {"benefit_high": 3, "beta": 0.1, "eps": 2},
        {"benefit_high": 3, "beta": 1, "eps": 0.1}, {"benefit_high": 3, "beta": 1, "eps": 1}, {"benefit_high": 3, "beta": 1, "eps": 2}
    ]
}"#;

const FIG8: &str = r#"{
    "game": "pairwise", "fair": false,
    "params": {"cost_high": 1, "cost_low": 1, "benefit_high": 6, "benefit_low": 2, "delta": 4, "eps": 1, "pop_size": 100},
    "axes": [{"name": "theta1", "min": 0, "max": 4, "steps": 41},
             {"name": "theta2", "min": 0, "max": 4, "steps": 41}],
    "panels": [
        {"alpha": 0.1, "beta": 0.01}, {"alpha": 0.3, "beta": 0.01}, {"alpha": 0.7, "beta": 0.01},
        {"alpha": 0.1, "beta": 0.1}, {"alpha": 0.3, "beta": 0.1}, {"alpha": 0.7, "beta": 0.1},
        {"alpha": 0.1, "beta": 1}, {"alpha": 0.3, "beta": 1}, {"alpha": 0.7, "beta": 1}
    ]
}"#;

const FIG9: &str = r#"{
    "game": "group",
    "params": {"cost_high": 1, "cost_low": 1, "benefit_high": 6, "benefit_low": 2, "group_size": 5, "mu": 2, "alpha": 0.5, "beta": 0.1, "pop_size": 100},
    "axes": [{"name": "eps", "min": 0, "max": 80, "steps": 1601}],
    "panels": [
        {"strategies": ["HP", "HC"]}, {"strategies": ["HP", "LC"]},
        {"strategies": ["HP", "HN"]}, {"strategies": ["HP", "LN"]}
    ]
}"#;

const FIG10: &str = r#"{
    "game": "group",
    "params": {"cost_high": 1, "cost_low": 1, "benefit_high": 6, "benefit_low": 2, "group_size": 5, "mu": 2, "pop_size": 100},
    "axes": [{"name": "alpha", "min": 0.05, "max": 0.95, "steps": 19}],
    "panels": [
        {"eps": 0.1, "beta": 0.01}, {"eps": 0.1, "beta": 0.1}, {"eps": 0.1, "beta": 1},
        {"eps": 1, "beta": 0.01}, {"eps": 1, "beta": 0.1}, {"eps": 1, "beta": 1},
        {"eps": 2, "beta": 0.01}, {"eps": 2, "beta": 0.1}, {"eps": 2, "beta": 1}
    ]
}"#;

/// Raw preset document for a figure id.
pub fn preset_doc(id: &str) -> Option<ConfigDoc> {
    let text = match id {
        "fig1" => FIG1,
        "fig2" => FIG2,
        "fig3" => FIG3,
        "fig4" => FIG4,
        "fig5" => FIG5,
        "fig6" => FIG6,
        "fig7" => FIG7,
        "fig8" => FIG8,
        "fig9" => FIG9,
        "fig10" => FIG10,
        _ => return None,
    };
    let mut doc: ConfigDoc = serde_json::from_str(text).expect("preset documents are well formed");
    doc.scenario_id = Some(id.to_string());
    Some(doc)
}
