use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::features::{FeatureCodec, Features, CODEC_VERSION};
use super::RlError;
use crate::gridworld::{PrimitiveAction, WorldState};
use crate::names::normalize;

pub const QTABLE_FORMAT: &str = "accbt-qtable";
pub const QTABLE_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hyperparameters {
    pub alpha: f64,
    pub gamma: f64,
    pub epsilon_start: f64,
    pub epsilon_end: f64,
    /// Share of the step budget over which epsilon decays.
    pub epsilon_decay_fraction: f64,
    pub episode_step_limit: u32,
}

impl Default for Hyperparameters {
    fn default() -> Self {
        Hyperparameters {
            alpha: 0.1,
            gamma: 0.99,
            epsilon_start: 1.0,
            epsilon_end: 0.05,
            epsilon_decay_fraction: 0.5,
            episode_step_limit: 500,
        }
    }
}

impl Hyperparameters {
    pub fn validate(&self) -> Result<(), RlError> {
        let ok = self.alpha > 0.0
            && self.alpha <= 1.0
            && self.gamma > 0.0
            && self.gamma < 1.0
            && (0.0..=1.0).contains(&self.epsilon_start)
            && (0.0..=1.0).contains(&self.epsilon_end)
            && self.epsilon_decay_fraction > 0.0
            && self.episode_step_limit >= 1;
        if ok {
            Ok(())
        } else {
            Err(RlError::InvalidHyperparameters(format!("{self:?}")))
        }
    }

    /// Exploration rate after `done` of `total` steps.
    pub fn epsilon(&self, done: u64, total: u64) -> f64 {
        let horizon = (total as f64 * self.epsilon_decay_fraction).max(1.0);
        let frac = (done as f64 / horizon).min(1.0);
        self.epsilon_start + (self.epsilon_end - self.epsilon_start) * frac
    }
}

/// Tabular action values for one learned action. Missing entries read as 0.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    action_id: String,
    codec: FeatureCodec,
    hyper: Hyperparameters,
    values: HashMap<Features, Vec<f64>>,
    visits: HashMap<Features, Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    features: [i8; 8],
    q: Vec<f64>,
    visits: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct QTableFile {
    format: String,
    version: u32,
    action_id: String,
    codec: FeatureCodec,
    codec_version: u32,
    actions: Vec<PrimitiveAction>,
    hyperparameters: Hyperparameters,
    entries: Vec<Entry>,
}

impl QTable {
    pub fn new(action_id: &str, codec: FeatureCodec, hyper: Hyperparameters) -> Self {
        QTable { action_id: action_id.to_string(), codec, hyper, values: HashMap::new(), visits: HashMap::new() }
    }

    pub fn action_id(&self) -> &str {
        &self.action_id
    }

    pub fn codec(&self) -> FeatureCodec {
        self.codec
    }

    pub fn hyperparameters(&self) -> &Hyperparameters {
        &self.hyper
    }

    pub fn actions(&self) -> &'static [PrimitiveAction] {
        self.codec.actions()
    }

    /// Number of feature tuples with stored values.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn q(&self, s: &Features, a: usize) -> f64 {
        self.values.get(s).map_or(0.0, |v| v[a])
    }

    pub fn row(&self, s: &Features) -> Vec<f64> {
        self.values.get(s).cloned().unwrap_or_else(|| vec![0.0; self.actions().len()])
    }

    pub fn visits(&self, s: &Features, a: usize) -> u32 {
        self.visits.get(s).map_or(0, |v| v[a])
    }

    pub fn set(&mut self, s: Features, a: usize, value: f64) {
        let n = self.actions().len();
        self.values.entry(s).or_insert_with(|| vec![0.0; n])[a] = value;
        self.visits.entry(s).or_insert_with(|| vec![0; n]);
    }

    pub fn max_q(&self, s: &Features) -> f64 {
        self.values.get(s).map_or(0.0, |v| v.iter().copied().fold(f64::NEG_INFINITY, f64::max))
    }

    /// Index of the first maximal action at `s`.
    pub fn greedy(&self, s: &Features) -> usize {
        self.values.get(s).map_or(0, |v| first_max(v))
    }

    /// One-step Q-learning update.
    pub fn q_update(&mut self, s: Features, a: usize, reward: f64, next: Features, terminal: bool) {
        let bootstrap = if terminal { 0.0 } else { self.hyper.gamma * self.max_q(&next) };
        let n = self.actions().len();
        let row = self.values.entry(s).or_insert_with(|| vec![0.0; n]);
        row[a] += self.hyper.alpha * (reward + bootstrap - row[a]);
        let count = &mut self.visits.entry(s).or_insert_with(|| vec![0; n])[a];
        *count = count.saturating_add(1);
    }

    /// Serializes with entries sorted by features, so equal tables give equal bytes.
    pub fn to_json(&self) -> String {
        let mut keys: Vec<&Features> = self.values.keys().collect();
        keys.sort();
        let n = self.actions().len();
        let entries = keys
            .into_iter()
            .map(|k| Entry {
                features: k.0,
                q: self.values[k].clone(),
                visits: self.visits.get(k).cloned().unwrap_or_else(|| vec![0; n]),
            })
            .collect();
        let file = QTableFile {
            format: QTABLE_FORMAT.to_string(),
            version: QTABLE_VERSION,
            action_id: self.action_id.clone(),
            codec: self.codec,
            codec_version: CODEC_VERSION,
            actions: self.actions().to_vec(),
            hyperparameters: self.hyper,
            entries,
        };
        serde_json::to_string_pretty(&file).expect("q-table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, RlError> {
        let file: QTableFile = serde_json::from_str(text).map_err(|e| RlError::Format(e.to_string()))?;
        if file.format != QTABLE_FORMAT || file.version != QTABLE_VERSION {
            return Err(RlError::Incompatible(format!("unsupported q-table format {} v{}", file.format, file.version)));
        }
        if file.codec_version != CODEC_VERSION {
            return Err(RlError::Incompatible(format!(
                "q-table codec version {} but this build uses {}",
                file.codec_version, CODEC_VERSION
            )));
        }
        if FeatureCodec::for_action(&file.action_id) != Some(file.codec) {
            return Err(RlError::Incompatible(format!(
                "codec {:?} does not belong to `{}`",
                file.codec, file.action_id
            )));
        }
        if file.actions != file.codec.actions() {
            return Err(RlError::Incompatible("action list differs from the codec's".into()));
        }
        let n = file.actions.len();
        let mut table = QTable::new(&file.action_id, file.codec, file.hyperparameters);
        for e in file.entries {
            if e.q.len() != n || e.visits.len() != n || e.q.iter().any(|v| !v.is_finite()) {
                return Err(RlError::Format(format!("bad entry for {:?}", e.features)));
            }
            table.values.insert(Features(e.features), e.q);
            table.visits.insert(Features(e.features), e.visits);
        }
        Ok(table)
    }

    pub fn matches_action(&self, action: &str) -> bool {
        normalize(&self.action_id) == normalize(action)
    }
}

fn first_max(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate() {
        if x > v[best] {
            best = i;
        }
    }
    best
}

/// Deterministic argmax controller extracted from a [`QTable`].
#[derive(Debug, Clone, PartialEq)]
pub struct GreedyPolicy {
    action_id: String,
    codec: FeatureCodec,
    best: HashMap<Features, usize>,
}

pub fn extract_policy(q: &QTable) -> GreedyPolicy {
    let best = q.values.iter().map(|(k, v)| (*k, first_max(v))).collect();
    GreedyPolicy { action_id: q.action_id.clone(), codec: q.codec, best }
}

impl GreedyPolicy {
    pub fn action_id(&self) -> &str {
        &self.action_id
    }

    pub fn choose(&self, f: &Features) -> PrimitiveAction {
        self.codec.actions()[self.best.get(f).copied().unwrap_or(0)]
    }

    pub fn act(&self, s: &WorldState) -> PrimitiveAction {
        self.choose(&self.codec.encode(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> QTable {
        QTable::new("Chase cow", FeatureCodec::ChaseCow, Hyperparameters::default())
    }

    const S: Features = Features([1, 0, 0, 0, 0, 0, 0, 0]);
    const T: Features = Features([2, 0, 0, 0, 0, 0, 0, 0]);

    #[test]
    fn step_update_from_zero() {
        let mut q = table();
        q.q_update(S, 0, -0.1, T, false);
        assert!((q.q(&S, 0) + 0.01).abs() < 1e-12);
        assert_eq!(q.visits(&S, 0), 1);
    }

    #[test]
    fn terminal_update_ignores_next() {
        let mut q = table();
        q.set(T, 2, 50.0);
        q.q_update(S, 1, 1000.0, T, true);
        assert!((q.q(&S, 1) - 100.0).abs() < 1e-12);
    }

    #[test]
    fn fixed_point_is_stable() {
        let mut q = table();
        q.set(S, 0, 5.0);
        q.set(S, 1, 5.0 * 0.99);
        q.q_update(S, 1, 0.0, S, false);
        assert!((q.q(&S, 1) - 4.95).abs() < 1e-12);
    }

    #[test]
    fn empty_table_picks_first_action() {
        let p = extract_policy(&table());
        assert_eq!(p.choose(&S), PrimitiveAction::MoveN);
    }

    #[test]
    fn strict_max_is_chosen() {
        let mut q = table();
        q.set(S, 2, 0.5);
        assert_eq!(extract_policy(&q).choose(&S), PrimitiveAction::MoveE);
        q.set(S, 3, 0.5);
        assert_eq!(extract_policy(&q).choose(&S), PrimitiveAction::MoveE);
    }

    #[test]
    fn json_round_trip_is_byte_stable() {
        let mut q = table();
        q.q_update(T, 1, 3.0, S, false);
        q.q_update(S, 0, -0.1, T, false);
        let text = q.to_json();
        let back = QTable::from_json(&text).unwrap();
        assert_eq!(back, q);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn codec_version_mismatch_is_incompatible() {
        let text = table().to_json().replace("\"codec_version\": 1", "\"codec_version\": 99");
        assert!(matches!(QTable::from_json(&text), Err(RlError::Incompatible(_))));
    }

    #[test]
    fn epsilon_schedule() {
        let h = Hyperparameters::default();
        assert_eq!(h.epsilon(0, 100), 1.0);
        assert!((h.epsilon(25, 100) - 0.525).abs() < 1e-12);
        assert!((h.epsilon(50, 100) - 0.05).abs() < 1e-12);
        assert!((h.epsilon(99, 100) - 0.05).abs() < 1e-12);
    }
}
