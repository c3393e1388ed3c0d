//! Time budgets.
//!
//! A run measures its budget either against the wall clock or against a
//! deterministic work counter. Under [`ClockMode::Work`] every elementary
//! step (a construction step, a search node) charges work units, and
//! elapsed time is `units / units_per_second`, so a run with fixed inputs is
//! bit-reproducible regardless of machine load.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

/// Default work rate. Roughly one second of single-core wall time on the
/// development machine for the solver's typical mix of work.
pub const DEFAULT_UNITS_PER_SECOND: f64 = 2.0e8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClockMode {
    Wall,
    Work { units_per_second: f64 },
}

impl Default for ClockMode {
    fn default() -> Self {
        Self::Work { units_per_second: DEFAULT_UNITS_PER_SECOND }
    }
}

#[derive(Debug, Clone)]
pub struct Stopwatch {
    mode: ClockMode,
    started: Instant,
    work: u64,
}

impl Stopwatch {
    pub fn start(mode: ClockMode) -> Self {
        Self { mode, started: Instant::now(), work: 0 }
    }

    pub fn mode(&self) -> ClockMode {
        self.mode
    }

    pub fn is_wall(&self) -> bool {
        matches!(self.mode, ClockMode::Wall)
    }

    /// Records `units` of work. No effect on elapsed time under the wall clock.
    #[inline]
    pub fn charge(&mut self, units: u64) {
        self.work = self.work.saturating_add(units);
    }

    pub fn work(&self) -> u64 {
        self.work
    }

    pub fn elapsed(&self) -> Duration {
        match self.mode {
            ClockMode::Wall => self.started.elapsed(),
            ClockMode::Work { units_per_second } => Duration::from_secs_f64(self.work as f64 / units_per_second),
        }
    }
}
