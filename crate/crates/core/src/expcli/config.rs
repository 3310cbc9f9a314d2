//! Scenario documents: JSON parsing, preset merging and validation.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::presets;
use crate::error::{Error, Result};
use crate::tdgame::{CommitmentTerms, GroupParams, GroupStrategy, MarketParams, PairStrategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GameKind {
    #[serde(alias = "pair")]
    Pairwise,
    Group,
}

/// Parameter values set by a document, a preset or a panel. Unset fields
/// fall through to the layer below.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost_high: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost_low: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub benefit_high: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub benefit_low: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pop_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<usize>,
    /// Restricts the population to these strategy labels.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategies: Option<Vec<String>>,
}

macro_rules! each_override {
    ($m:ident) => {
        $m!(cost_high, cost_low, benefit_high, benefit_low, alpha, eps, delta, theta1, theta2, beta, pop_size, group_size, mu, strategies)
    };
}

impl Overrides {
    /// Values set in `top` win over those in `self`.
    pub fn layered(&self, top: &Overrides) -> Overrides {
        let mut out = self.clone();
        macro_rules! take {
            ($($f:ident),*) => { $( if top.$f.is_some() { out.$f = top.$f.clone(); } )* };
        }
        each_override!(take);
        out
    }

    /// Names of the fields that are set.
    pub fn keys(&self) -> Vec<&'static str> {
        let mut keys = Vec::new();
        macro_rules! collect {
            ($($f:ident),*) => { $( if self.$f.is_some() { keys.push(stringify!($f)); } )* };
        }
        each_override!(collect);
        keys
    }

    fn clear(&mut self, key: &str) {
        macro_rules! wipe {
            ($($f:ident),*) => { match key { $( stringify!($f) => self.$f = None, )* _ => {} } };
        }
        each_override!(wipe);
    }

    fn apply(&self, p: &mut PointParams) {
        macro_rules! put {
            ($($f:ident),*) => { $( if let Some(v) = &self.$f { p.$f = v.clone().into(); } )* };
        }
        put!(cost_high, cost_low, benefit_high, benefit_low, alpha, eps, delta, beta, pop_size, group_size, mu);
        if self.theta1.is_some() {
            p.theta1 = self.theta1;
        }
        if self.theta2.is_some() {
            p.theta2 = self.theta2;
        }
        if self.strategies.is_some() {
            p.strategies = self.strategies.clone();
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisName {
    Alpha,
    Eps,
    Delta,
    Mu,
    Theta1,
    Theta2,
    Beta,
}

impl AxisName {
    pub fn as_str(self) -> &'static str {
        match self {
            AxisName::Alpha => "alpha",
            AxisName::Eps => "eps",
            AxisName::Delta => "delta",
            AxisName::Mu => "mu",
            AxisName::Theta1 => "theta1",
            AxisName::Theta2 => "theta2",
            AxisName::Beta => "beta",
        }
    }
}

/// A swept axis: either `min`, `max`, `steps` or an explicit `values` list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisDoc {
    pub name: AxisName,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
}

impl AxisDoc {
    pub fn range(name: AxisName, min: f64, max: f64, steps: usize) -> Self {
        AxisDoc {
            name,
            min: Some(min),
            max: Some(max),
            steps: Some(steps),
            values: None,
        }
    }

    pub fn list(name: AxisName, values: Vec<f64>) -> Self {
        AxisDoc {
            name,
            min: None,
            max: None,
            steps: None,
            values: Some(values),
        }
    }

    fn resolve(&self, path: &str) -> Result<Axis> {
        let values = match (&self.values, self.min, self.max, self.steps) {
            (Some(v), None, None, None) => {
                if v.is_empty() {
                    return Err(Error::config(format!("{path}.values"), "expected a non-empty list"));
                }
                v.clone()
            }
            (None, Some(min), Some(max), Some(steps)) => {
                if steps == 0 {
                    return Err(Error::config(format!("{path}.steps"), "steps must be >= 1"));
                }
                if !(min.is_finite() && max.is_finite()) || min > max {
                    return Err(Error::config(path, format!("need finite min <= max, got {min}..{max}")));
                }
                if steps == 1 {
                    vec![min]
                } else {
                    (0..steps)
                        .map(|k| min + (max - min) * k as f64 / (steps - 1) as f64)
                        .collect()
                }
            }
            _ => {
                return Err(Error::config(
                    path,
                    "axis needs either `values` or all of `min`, `max`, `steps`",
                ))
            }
        };
        if self.name == AxisName::Mu && values.iter().any(|v| v.fract() != 0.0 || *v < 1.0) {
            return Err(Error::config(path, "mu values must be positive integers"));
        }
        Ok(Axis {
            name: self.name,
            values,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: AxisName,
    pub values: Vec<f64>,
}

/// Raw scenario document as written in a config file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario_id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub game: Option<GameKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<Overrides>,
    /// Derive transfers from epsilon (fair agreements).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fair: Option<bool>,
    /// Also evaluate the no-commitment population {HN, LN}.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axes: Option<Vec<AxisDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub panels: Option<Vec<Overrides>>,
}

/// Every parameter of one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointParams {
    pub cost_high: f64,
    pub cost_low: f64,
    pub benefit_high: f64,
    pub benefit_low: f64,
    pub alpha: f64,
    pub eps: f64,
    pub delta: f64,
    /// `None` under fair agreements.
    pub theta1: Option<f64>,
    pub theta2: Option<f64>,
    pub beta: f64,
    pub pop_size: usize,
    pub group_size: usize,
    pub mu: usize,
    pub strategies: Option<Vec<String>>,
}

impl Default for PointParams {
    fn default() -> Self {
        PointParams {
            cost_high: 1.0,
            cost_low: 1.0,
            benefit_high: 6.0,
            benefit_low: 2.0,
            alpha: 0.3,
            eps: 0.1,
            delta: 6.0,
            theta1: None,
            theta2: None,
            beta: 0.1,
            pop_size: 100,
            group_size: 5,
            mu: 2,
            strategies: None,
        }
    }
}

impl PointParams {
    fn set_axis(&mut self, name: AxisName, v: f64) {
        match name {
            AxisName::Alpha => self.alpha = v,
            AxisName::Eps => self.eps = v,
            AxisName::Delta => self.delta = v,
            AxisName::Mu => self.mu = v as usize,
            AxisName::Theta1 => self.theta1 = Some(v),
            AxisName::Theta2 => self.theta2 = Some(v),
            AxisName::Beta => self.beta = v,
        }
    }

    pub fn market(&self) -> Result<MarketParams> {
        MarketParams::new(self.cost_high, self.cost_low, self.benefit_high, self.benefit_low, self.alpha)
    }

    pub fn terms(&self) -> CommitmentTerms {
        match (self.theta1, self.theta2) {
            (Some(t1), Some(t2)) => CommitmentTerms::fixed(self.eps, self.delta, t1, t2),
            _ => CommitmentTerms::fair(self.eps, self.delta),
        }
    }

    pub fn group(&self) -> Result<GroupParams> {
        GroupParams::new(self.market()?, self.group_size, self.mu)
    }

    /// First violated constraint as `(key, message)`.
    fn check(&self, game: GameKind, fair: bool) -> std::result::Result<(), (&'static str, String)> {
        let finite_nonneg = [
            ("cost_high", self.cost_high),
            ("cost_low", self.cost_low),
            ("benefit_high", self.benefit_high),
            ("benefit_low", self.benefit_low),
            ("eps", self.eps),
            ("delta", self.delta),
            ("beta", self.beta),
        ];
        for (key, v) in finite_nonneg {
            if !(v.is_finite() && v >= 0.0) {
                return Err((key, format!("{key} must be finite and >= 0, got {v}")));
            }
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(("alpha", format!("alpha ∉ (0,1), got {}", self.alpha)));
        }
        if self.benefit_low > self.benefit_high {
            return Err(("benefit_low", "benefit_low must not exceed benefit_high".into()));
        }
        if self.benefit_low - self.cost_low >= self.benefit_high - self.cost_high {
            return Err(("benefit_high", "H must have the larger net benefit".into()));
        }
        if self.pop_size < 2 {
            return Err(("pop_size", format!("pop_size must be >= 2, got {}", self.pop_size)));
        }
        match game {
            GameKind::Pairwise => {
                if !fair {
                    for (key, t) in [("theta1", self.theta1), ("theta2", self.theta2)] {
                        match t {
                            None => return Err((key, format!("{key} is required when fair is false"))),
                            Some(v) if !v.is_finite() => return Err((key, format!("{key} must be finite"))),
                            _ => {}
                        }
                    }
                }
            }
            GameKind::Group => {
                if self.group_size < 2 || self.group_size > self.pop_size {
                    return Err((
                        "group_size",
                        format!("group_size must be in 2..=pop_size, got {}", self.group_size),
                    ));
                }
                if self.mu < 1 || self.mu > self.group_size {
                    return Err(("mu", format!("mu must be in 1..=group_size, got {}", self.mu)));
                }
            }
        }
        if let Some(list) = &self.strategies {
            if list.len() < 2 {
                return Err(("strategies", "need at least two strategies".into()));
            }
            for (k, label) in list.iter().enumerate() {
                let known = match game {
                    GameKind::Pairwise => label.parse::<PairStrategy>().is_ok(),
                    GameKind::Group => label.parse::<GroupStrategy>().is_ok(),
                };
                if !known {
                    return Err(("strategies", format!("unknown strategy `{label}`")));
                }
                if list[..k].contains(label) {
                    return Err(("strategies", format!("duplicate strategy `{label}`")));
                }
            }
        }
        Ok(())
    }
}

/// A validated scenario: base parameters, optional panels and up to two axes.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario_id: String,
    pub game: GameKind,
    pub fair: bool,
    pub baseline: bool,
    pub params: PointParams,
    pub axes: Vec<Axis>,
    /// Each panel overrides `params`; no panels means one implicit panel.
    pub panels: Vec<Overrides>,
}

impl ScenarioConfig {
    /// Resolves a document against its preset (if `scenario_id` names one)
    /// or the defaults, then validates every grid point.
    pub fn from_doc(doc: &ConfigDoc) -> Result<Self> {
        let id = doc.scenario_id.clone().unwrap_or_else(|| "custom".to_string());
        let base = match presets::preset_doc(&id) {
            Some(p) => p,
            None if id == "custom" => ConfigDoc::default(),
            None => {
                return Err(Error::config(
                    "scenario_id",
                    format!("unknown scenario `{id}`; expected one of {} or custom", presets::IDS.join(", ")),
                ))
            }
        };

        let game = doc.game.or(base.game).unwrap_or(GameKind::Pairwise);
        let fair = doc.fair.or(base.fair).unwrap_or(true);
        let baseline = doc.baseline.or(base.baseline).unwrap_or(false);
        let axis_docs = doc.axes.clone().or(base.axes.clone()).unwrap_or_default();
        let panels = doc.panels.clone().or(base.panels.clone()).unwrap_or_default();
        let user_params = doc.params.clone().unwrap_or_default();
        let mut merged = base.params.clone().unwrap_or_default().layered(&user_params);

        if axis_docs.len() > 2 {
            return Err(Error::config("axes", format!("at most 2 axes, got {}", axis_docs.len())));
        }
        let mut axes = Vec::with_capacity(axis_docs.len());
        for (k, a) in axis_docs.iter().enumerate() {
            let path = format!("axes[{k}]");
            let axis = a.resolve(&path)?;
            let name = axis.name.as_str();
            if axes.iter().any(|b: &Axis| b.name == axis.name) {
                return Err(Error::config(path, format!("`{name}` is swept twice")));
            }
            if user_params.keys().contains(&name) {
                return Err(Error::config(format!("params.{name}"), format!("`{name}` is also swept by {path}")));
            }
            for (i, p) in panels.iter().enumerate() {
                if p.keys().contains(&name) {
                    return Err(Error::config(format!("panels[{i}].{name}"), format!("`{name}` is also swept by {path}")));
                }
            }
            if axis.name == AxisName::Mu && game != GameKind::Group {
                return Err(Error::config(path, "mu can only be swept in group games"));
            }
            if matches!(axis.name, AxisName::Theta1 | AxisName::Theta2) && fair {
                return Err(Error::config(path, "transfers cannot be swept under fair agreements (set fair: false)"));
            }
            merged.clear(name);
            axes.push(axis);
        }
        if fair {
            let layers = std::iter::once(("params".to_string(), &user_params))
                .chain(panels.iter().enumerate().map(|(i, p)| (format!("panels[{i}]"), p)));
            for (path, layer) in layers {
                for key in ["theta1", "theta2"] {
                    if layer.keys().contains(&key) {
                        return Err(Error::config(
                            format!("{path}.{key}"),
                            "transfers are derived from eps under fair agreements (set fair: false)",
                        ));
                    }
                }
            }
        }

        let mut params = PointParams::default();
        merged.apply(&mut params);
        let config = ScenarioConfig {
            scenario_id: id,
            game,
            fair,
            baseline,
            params,
            axes,
            panels,
        };
        config.validate_points()?;
        Ok(config)
    }

    fn validate_points(&self) -> Result<()> {
        let panel_count = self.panels.len().max(1);
        for panel in 0..panel_count {
            let mut idx = vec![0usize; self.axes.len()];
            loop {
                let p = self.point(panel, &idx);
                if let Err((key, message)) = p.check(self.game, self.fair) {
                    let path = if let Some(k) = self.axes.iter().position(|a| a.name.as_str() == key) {
                        format!("axes[{k}]")
                    } else if self.panels.get(panel).is_some_and(|o| o.keys().contains(&key)) {
                        format!("panels[{panel}].{key}")
                    } else {
                        format!("params.{key}")
                    };
                    return Err(Error::config(path, message));
                }
                if !advance(&mut idx, &self.axes) {
                    break;
                }
            }
        }
        Ok(())
    }

    fn point(&self, panel: usize, idx: &[usize]) -> PointParams {
        let mut p = self.params.clone();
        if let Some(o) = self.panels.get(panel) {
            o.apply(&mut p);
        }
        for (axis, &i) in self.axes.iter().zip(idx) {
            p.set_axis(axis.name, axis.values[i]);
        }
        p
    }

    /// All grid points: panels outermost, then the first axis, then the second.
    pub fn points(&self) -> Vec<PointParams> {
        let mut out = Vec::new();
        for panel in 0..self.panels.len().max(1) {
            let mut idx = vec![0usize; self.axes.len()];
            loop {
                out.push(self.point(panel, &idx));
                if !advance(&mut idx, &self.axes) {
                    break;
                }
            }
        }
        out
    }

    /// Whether any point restricts the strategy set.
    pub fn uses_subsets(&self) -> bool {
        self.params.strategies.is_some() || self.panels.iter().any(|p| p.strategies.is_some())
    }
}

/// Odometer step over the axis grid, last axis fastest.
fn advance(idx: &mut [usize], axes: &[Axis]) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < axes[k].values.len() {
            return true;
        }
        idx[k] = 0;
    }
    false
}

/// Parses a JSON scenario document; `source` names it in error messages.
pub fn parse_config(text: &str, source: &str) -> Result<ScenarioConfig> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: ConfigDoc = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { source.to_string() } else { format!("{source}:{path}") };
        Error::config(path, e.into_inner().to_string())
    })?;
    ScenarioConfig::from_doc(&doc)
}

pub fn load_config(path: &Path) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text, &path.display().to_string())
}
