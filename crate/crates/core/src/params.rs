//! Run parameters and the flat `key = value` parameter file format.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clock::{ClockMode, DEFAULT_UNITS_PER_SECOND};
use crate::construct::{ConstructParams, DeterministicPick, HeuristicVariant};

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("unknown parameter `{0}`")]
    UnknownKey(String),
    #[error("invalid value `{value}` for `{key}`")]
    BadValue { key: String, value: String },
    #[error("{0}")]
    Invalid(String),
}

pub(crate) mod secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let secs = f64::deserialize(d)?;
        Duration::try_from_secs_f64(secs).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CmsaParams {
    /// Constructions per iteration.
    pub n_a: usize,
    /// Largest age a component may reach before it leaves the subproblem.
    pub age_max: u32,
    /// Total budget.
    #[serde(with = "secs")]
    pub t_max: Duration,
    /// Solver budget per iteration.
    #[serde(with = "secs")]
    pub t_limit: Duration,
    pub d_rate: f64,
    pub candidate_list_size: usize,
    pub variant: HeuristicVariant,
    pub seed: u64,
    pub deterministic_pick: DeterministicPick,
    pub clock: ClockMode,
}

impl CmsaParams {
    /// Defaults with `t_limit = t_max / 10`.
    pub fn new(variant: HeuristicVariant, t_max: Duration, seed: u64) -> Self {
        Self {
            n_a: 5,
            age_max: 3,
            t_max,
            t_limit: t_max / 10,
            d_rate: 0.8,
            candidate_list_size: 10,
            variant,
            seed,
            deterministic_pick: DeterministicPick::Max,
            clock: ClockMode::default(),
        }
    }

    pub fn construct_params(&self) -> ConstructParams {
        ConstructParams {
            d_rate: self.d_rate,
            candidate_list_size: self.candidate_list_size,
            deterministic_pick: self.deterministic_pick,
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if self.n_a < 1 {
            return Err(ParamError::Invalid("n_a must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.d_rate) {
            return Err(ParamError::Invalid(format!("d_rate {} outside [0, 1]", self.d_rate)));
        }
        if self.candidate_list_size < 1 {
            return Err(ParamError::Invalid("candidate_list_size must be at least 1".into()));
        }
        if self.t_limit > self.t_max {
            return Err(ParamError::Invalid(format!(
                "t_limit {}s exceeds t_max {}s",
                self.t_limit.as_secs_f64(),
                self.t_max.as_secs_f64()
            )));
        }
        if let ClockMode::Work { units_per_second } = self.clock {
            if !(units_per_second.is_finite() && units_per_second > 0.0) {
                return Err(ParamError::Invalid("work clock rate must be positive".into()));
            }
        }
        Ok(())
    }

    /// Builds parameters from key-value pairs, starting from
    /// [`CmsaParams::new`] defaults. `t_limit` defaults to `t_max / 10` when
    /// only `t_max` is given.
    ///
    /// Keys: `n_a`, `age_max`, `t_max`, `t_limit` (seconds), `d_rate`,
    /// `candidate_list_size` (alias `k`), `variant`, `seed`,
    /// `deterministic_pick`, `clock` (`work` or `wall`), `work_rate`.
    pub fn from_pairs(pairs: &BTreeMap<String, String>) -> Result<Self, ParamError> {
        fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ParamError> {
            value.parse().map_err(|_| ParamError::BadValue { key: key.into(), value: value.into() })
        }
        fn seconds(key: &str, value: &str) -> Result<Duration, ParamError> {
            let s: f64 = parse(key, value)?;
            Duration::try_from_secs_f64(s).map_err(|_| ParamError::BadValue { key: key.into(), value: value.into() })
        }

        let mut p = Self::new(HeuristicVariant::Original, Duration::from_secs(10), 0);
        let mut t_limit = None;
        let mut clock_kind = "work".to_string();
        let mut rate = DEFAULT_UNITS_PER_SECOND;
        for (key, value) in pairs {
            let value = value.as_str();
            match key.as_str() {
                "n_a" => p.n_a = parse(key, value)?,
                "age_max" => p.age_max = parse(key, value)?,
                "t_max" => p.t_max = seconds(key, value)?,
                "t_limit" => t_limit = Some(seconds(key, value)?),
                "d_rate" => p.d_rate = parse(key, value)?,
                "candidate_list_size" | "k" => p.candidate_list_size = parse(key, value)?,
                "variant" => p.variant = parse(key, value)?,
                "seed" => p.seed = parse(key, value)?,
                "deterministic_pick" => p.deterministic_pick = parse(key, value)?,
                "clock" => match value {
                    "work" | "wall" => clock_kind = value.to_string(),
                    _ => return Err(ParamError::BadValue { key: key.clone(), value: value.into() }),
                },
                "work_rate" => rate = parse(key, value)?,
                other => return Err(ParamError::UnknownKey(other.to_string())),
            }
        }
        p.t_limit = t_limit.unwrap_or(p.t_max / 10);
        p.clock = if clock_kind == "wall" { ClockMode::Wall } else { ClockMode::Work { units_per_second: rate } };
        p.validate()?;
        Ok(p)
    }
}

/// Parses `key = value` lines. Blank lines and `#` comments are skipped;
/// later keys override earlier ones.
pub fn parse_param_file(text: &str) -> Result<BTreeMap<String, String>, ParamError> {
    let mut out = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(ParamError::Syntax { line: idx + 1 })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(ParamError::Syntax { line: idx + 1 });
        }
        out.insert(key.to_string(), value.to_string());
    }
    Ok(out)
}
