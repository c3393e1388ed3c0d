use serde::{Deserialize, Serialize};

use crate::graph::VertexId;

/// Age of each solution component (vertex). `-1` marks a vertex outside the
/// current subproblem; members carry an age in `0..=age_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgeTable {
    ages: Vec<i32>,
}

impl AgeTable {
    pub const ABSENT: i32 = -1;

    /// Every vertex outside the subproblem.
    pub fn new(n_vertices: usize) -> Self {
        Self { ages: vec![Self::ABSENT; n_vertices] }
    }

    pub fn from_ages(ages: Vec<i32>) -> Self {
        Self { ages }
    }

    pub fn len(&self) -> usize {
        self.ages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ages.is_empty()
    }

    pub fn get(&self, v: VertexId) -> i32 {
        self.ages[v]
    }

    pub fn set(&mut self, v: VertexId, age: i32) {
        self.ages[v] = age;
    }

    pub fn in_subproblem(&self, v: VertexId) -> bool {
        self.ages[v] >= 0
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.ages
    }

    /// Vertices with a non-negative age, ascending.
    pub fn subproblem_vertices(&self) -> Vec<VertexId> {
        (0..self.ages.len()).filter(|&v| self.ages[v] >= 0).collect()
    }

    /// True when every age is `-1` or lies in `0..=age_max`.
    pub fn is_valid(&self, age_max: u32) -> bool {
        self.ages.iter().all(|&a| a == Self::ABSENT || (0..=age_max as i64).contains(&(a as i64)))
    }
}
