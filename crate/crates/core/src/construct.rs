//! Probabilistic greedy constructions for the Construct phase.
//!
//! Three rules are available:
//!
//! * [`HeuristicVariant::Original`]: walk vertices in increasing degree order;
//!   with probability `d_rate` take the first still-feasible vertex, otherwise
//!   pick uniformly among the first `candidate_list_size` feasible ones.
//! * [`HeuristicVariant::V1Weighted`]: weight each feasible vertex by
//!   `1 / (2 + age) + 1 / (1 + degree)`, normalise over the feasible set, and
//!   either take the best-weighted vertex (probability `d_rate`) or spin a
//!   roulette wheel over the normalised weights.
//! * [`HeuristicVariant::V2Entropy`]: as V1, but the distribution is first
//!   flattened by adding its Shannon entropy to every entry.
//!
//! Every construction runs until the feasible set is empty, so the result is
//! always a maximal independent set.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ages::AgeTable;
use crate::clock::{ClockMode, Stopwatch};
use crate::graph::{degree_order, Graph, Solution, VertexId};
use crate::rng::{random_index, uniform, Rng};

#[derive(Debug, Error, PartialEq)]
pub enum ConstructError {
    #[error("age {0} is below -1")]
    AgeOutOfDomain(i32),
    #[error("feasible set is empty")]
    EmptyFeasibleSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HeuristicVariant {
    #[serde(rename = "original")]
    Original,
    #[serde(rename = "v1")]
    V1Weighted,
    #[serde(rename = "v2")]
    V2Entropy,
}

impl HeuristicVariant {
    pub const ALL: [HeuristicVariant; 3] = [Self::Original, Self::V1Weighted, Self::V2Entropy];

    pub fn name(self) -> &'static str {
        match self {
            Self::Original => "original",
            Self::V1Weighted => "v1",
            Self::V2Entropy => "v2",
        }
    }
}

impl fmt::Display for HeuristicVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HeuristicVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "original" => Ok(Self::Original),
            "v1" | "v1_weighted" => Ok(Self::V1Weighted),
            "v2" | "v2_entropy" => Ok(Self::V2Entropy),
            other => Err(format!("unknown variant `{other}` (expected original, v1 or v2)")),
        }
    }
}

/// Which extreme of the selection distribution the deterministic branch of
/// the weighted rules takes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeterministicPick {
    #[default]
    Max,
    Min,
}

impl FromStr for DeterministicPick {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "max" => Ok(Self::Max),
            "min" => Ok(Self::Min),
            other => Err(format!("unknown deterministic pick `{other}` (expected max or min)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstructParams {
    /// Probability of the deterministic branch at each step.
    pub d_rate: f64,
    /// Candidate list length for the original rule.
    pub candidate_list_size: usize,
    pub deterministic_pick: DeterministicPick,
}

impl Default for ConstructParams {
    fn default() -> Self {
        Self { d_rate: 0.8, candidate_list_size: 10, deterministic_pick: DeterministicPick::Max }
    }
}

/// Composite weight `1 / (2 + age) + 1 / (1 + degree)`.
///
/// `age = -1` (vertex outside the subproblem) is valid and yields the largest
/// age term, `1`.
pub fn weight(age: i32, degree: usize) -> Result<f64, ConstructError> {
    if age < AgeTable::ABSENT {
        return Err(ConstructError::AgeOutOfDomain(age));
    }
    Ok(1.0 / (2.0 + f64::from(age)) + 1.0 / (1.0 + degree as f64))
}

/// A discrete distribution over candidate vertices, in ascending id order.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    entries: Vec<(VertexId, f64)>,
}

impl ProbVector {
    /// Normalises non-negative weights into a distribution.
    pub fn from_weights(weights: Vec<(VertexId, f64)>) -> Result<Self, ConstructError> {
        if weights.is_empty() {
            return Err(ConstructError::EmptyFeasibleSet);
        }
        let total: f64 = weights.iter().map(|&(_, w)| w).sum();
        let entries = weights.into_iter().map(|(v, w)| (v, w / total)).collect();
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[(VertexId, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().map(|&(_, p)| p).sum()
    }

    pub fn max_probability(&self) -> f64 {
        self.entries.iter().map(|&(_, p)| p).fold(0.0, f64::max)
    }

    /// Entry with the largest (or smallest) probability; ties go to the
    /// lowest vertex id.
    pub fn extreme(&self, pick: DeterministicPick) -> VertexId {
        let mut best = self.entries[0];
        for &(v, p) in &self.entries[1..] {
            let better = match pick {
                DeterministicPick::Max => p > best.1,
                DeterministicPick::Min => p < best.1,
            };
            if better || (p == best.1 && v < best.0) {
                best = (v, p);
            }
        }
        best.0
    }
}

/// Tracks the partial solution and the set of vertices that can still be
/// added to it during one weighted construction.
#[derive(Debug, Clone)]
pub struct ConstructionState<'a> {
    graph: &'a Graph,
    ages: &'a AgeTable,
    feasible: Vec<VertexId>,
    blocked: Vec<bool>,
    chosen: Vec<VertexId>,
}

impl<'a> ConstructionState<'a> {
    pub fn new(graph: &'a Graph, ages: &'a AgeTable) -> Self {
        debug_assert_eq!(graph.n_vertices(), ages.len());
        Self {
            graph,
            ages,
            feasible: graph.vertices().collect(),
            blocked: vec![false; graph.n_vertices()],
            chosen: Vec::new(),
        }
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn ages(&self) -> &'a AgeTable {
        self.ages
    }

    /// Vertices neither chosen nor adjacent to a chosen vertex, ascending.
    pub fn feasible_set(&self) -> &[VertexId] {
        &self.feasible
    }

    pub fn is_complete(&self) -> bool {
        self.feasible.is_empty()
    }

    pub fn chosen(&self) -> &[VertexId] {
        &self.chosen
    }

    /// Adds `v` to the partial solution and drops it and its neighbours from
    /// the feasible set. Returns the number of work units spent.
    ///
    /// Panics if `v` is not currently feasible.
    pub fn select(&mut self, v: VertexId) -> u64 {
        assert!(!self.blocked[v], "vertex {v} is not feasible");
        self.chosen.push(v);
        self.blocked[v] = true;
        for &u in self.graph.neighbors(v) {
            self.blocked[u] = true;
        }
        let before = self.feasible.len();
        let blocked = &self.blocked;
        self.feasible.retain(|&u| !blocked[u]);
        (before + self.graph.degree(v)) as u64
    }

    pub fn into_solution(self) -> Solution {
        Solution::new(self.chosen)
    }
}

/// Normalised composite weights over the current feasible set.
pub fn selection_probs_v1(state: &ConstructionState<'_>) -> Result<ProbVector, ConstructError> {
    let weights = state
        .feasible_set()
        .iter()
        .map(|&v| weight(state.ages().get(v), state.graph().degree(v)).map(|w| (v, w)))
        .collect::<Result<Vec<_>, _>>()?;
    ProbVector::from_weights(weights)
}

/// Shannon entropy in nats; zero-probability entries contribute nothing.
pub fn entropy(p: &ProbVector) -> f64 {
    -p.entries.iter().filter(|&&(_, q)| q > 0.0).map(|&(_, q)| q * q.ln()).sum::<f64>()
}

/// Adds the entropy `H` to every entry and renormalises by `1 + len * H`.
pub fn entropy_adjust(p: &ProbVector) -> ProbVector {
    let h = entropy(p);
    let denom: f64 = p.entries.iter().map(|&(_, q)| q + h).sum();
    ProbVector { entries: p.entries.iter().map(|&(v, q)| (v, (q + h) / denom)).collect() }
}

/// Samples one entry proportionally to its probability with a single uniform
/// draw. The last positive entry absorbs any rounding residue.
pub fn roulette_select(p: &ProbVector, rng: &mut Rng) -> VertexId {
    let u = uniform(rng) * p.total();
    let mut cumulative = 0.0;
    let mut last_positive = p.entries[0].0;
    for &(v, q) in &p.entries {
        if q <= 0.0 {
            continue;
        }
        cumulative += q;
        last_positive = v;
        if u < cumulative {
            return v;
        }
    }
    last_positive
}

// Work units for one ordered-set operation and for setting up a construction.
const TREE_OP: u64 = 12;
const CONSTRUCTION_OVERHEAD: u64 = 50;

/// Per-graph data shared by all constructions on that graph.
#[derive(Debug, Clone)]
pub struct Constructor<'a> {
    graph: &'a Graph,
    order: Vec<VertexId>,
    position_of: Vec<usize>,
}

impl<'a> Constructor<'a> {
    pub fn new(graph: &'a Graph) -> Self {
        let order = degree_order(graph);
        let mut position_of = vec![0; graph.n_vertices()];
        for (pos, &v) in order.iter().enumerate() {
            position_of[v] = pos;
        }
        Self { graph, order, position_of }
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn construct(
        &self,
        variant: HeuristicVariant,
        ages: &AgeTable,
        params: &ConstructParams,
        rng: &mut Rng,
        clock: &mut Stopwatch,
    ) -> Solution {
        match variant {
            HeuristicVariant::Original => self.original(params, rng, clock),
            _ => self.weighted(variant, ages, params, rng, clock),
        }
    }

    pub fn original(&self, params: &ConstructParams, rng: &mut Rng, clock: &mut Stopwatch) -> Solution {
        let g = self.graph;
        let mut positions: BTreeSet<usize> = (0..self.order.len()).collect();
        let mut chosen = Vec::new();
        clock.charge(CONSTRUCTION_OVERHEAD + TREE_OP * g.n_vertices() as u64);
        while let Some(&first) = positions.first() {
            let dec = uniform(rng);
            let position = if dec <= params.d_rate {
                first
            } else {
                let max = params.candidate_list_size.max(1).min(positions.len());
                let pos = random_index(max, uniform(rng));
                *positions.iter().nth(pos).expect("pos < positions.len()")
            };
            let v = self.order[position];
            chosen.push(v);
            positions.remove(&position);
            for &u in g.neighbors(v) {
                positions.remove(&self.position_of[u]);
            }
            clock.charge(TREE_OP * (1 + g.degree(v) as u64) + (position - first) as u64);
        }
        Solution::new(chosen)
    }

    /// V1 or V2 rule. Panics when called with [`HeuristicVariant::Original`].
    pub fn weighted(
        &self,
        variant: HeuristicVariant,
        ages: &AgeTable,
        params: &ConstructParams,
        rng: &mut Rng,
        clock: &mut Stopwatch,
    ) -> Solution {
        assert!(variant != HeuristicVariant::Original, "weighted construction needs v1 or v2");
        let g = self.graph;
        // weights only depend on static degree and the ages, so compute once
        let weights: Vec<f64> =
            g.vertices().map(|v| weight(ages.get(v), g.degree(v)).expect("age table holds ages >= -1")).collect();
        let mut state = ConstructionState::new(g, ages);
        clock.charge(CONSTRUCTION_OVERHEAD + 2 * g.n_vertices() as u64);
        let per_candidate = if variant == HeuristicVariant::V2Entropy { 2 } else { 1 };
        while !state.is_complete() {
            let raw = state.feasible_set().iter().map(|&v| (v, weights[v])).collect();
            let mut probs = ProbVector::from_weights(raw).expect("feasible set is non-empty");
            if variant == HeuristicVariant::V2Entropy {
                probs = entropy_adjust(&probs);
            }
            let r = uniform(rng);
            let v = if r <= params.d_rate {
                probs.extreme(params.deterministic_pick)
            } else {
                roulette_select(&probs, rng)
            };
            clock.charge(per_candidate * state.feasible_set().len() as u64);
            clock.charge(state.select(v));
        }
        state.into_solution()
    }
}

fn scratch_clock() -> Stopwatch {
    Stopwatch::start(ClockMode::default())
}

/// One construction with the original degree-order rule.
pub fn construct_original(g: &Graph, params: &ConstructParams, rng: &mut Rng) -> Solution {
    Constructor::new(g).original(params, rng, &mut scratch_clock())
}

/// One construction with the V1 or V2 weighted rule.
pub fn construct_weighted(
    g: &Graph,
    ages: &AgeTable,
    params: &ConstructParams,
    rng: &mut Rng,
    variant: HeuristicVariant,
) -> Solution {
    Constructor::new(g).weighted(variant, ages, params, rng, &mut scratch_clock())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{path3, triangle};
    use crate::graph::{check_solution, gen_erdos_renyi};
    use crate::rng::seeded;
    use proptest::prelude::*;

    fn pv(entries: &[(VertexId, f64)]) -> ProbVector {
        ProbVector { entries: entries.to_vec() }
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(0, 0).unwrap(), 1.5);
        assert_eq!(weight(-1, 3).unwrap(), 1.25);
        assert!((weight(5, 9).unwrap() - 0.242_857_142_857_142_85).abs() < 1e-15);
        assert_eq!(weight(-2, 0), Err(ConstructError::AgeOutOfDomain(-2)));
    }

    #[test]
    fn weight_is_strictly_decreasing() {
        for age in -1..20 {
            for deg in 0..20 {
                let w = weight(age, deg).unwrap();
                assert!(w.is_finite() && w > 0.0);
                assert!(weight(age + 1, deg).unwrap() < w);
                assert!(weight(age, deg + 1).unwrap() < w);
            }
        }
    }

    #[test]
    fn v1_probability_examples() {
        // two isolated vertices with equal ages
        let g = Graph::empty(2);
        let ages = AgeTable::from_ages(vec![3, 3]);
        let p = selection_probs_v1(&ConstructionState::new(&g, &ages)).unwrap();
        assert_eq!(p.entries(), &[(0, 0.5), (1, 0.5)]);

        // (age 0, deg 0) and (age -1, deg 3)
        let g = Graph::from_edges(5, [(1, 2), (1, 3), (1, 4)]).unwrap();
        let ages = AgeTable::from_ages(vec![0, -1, 0, 0, 0]);
        let mut state = ConstructionState::new(&g, &ages);
        state.feasible.retain(|&v| v < 2);
        let p = selection_probs_v1(&state).unwrap();
        assert!((p.entries()[0].1 - 0.545_454_545_454_545_4).abs() < 1e-12);
        assert!((p.entries()[1].1 - 0.454_545_454_545_454_5).abs() < 1e-12);

        let g = Graph::empty(1);
        let ages = AgeTable::new(1);
        let p = selection_probs_v1(&ConstructionState::new(&g, &ages)).unwrap();
        assert_eq!(p.entries(), &[(0, 1.0)]);
    }

    #[test]
    fn empty_feasible_set_is_an_error() {
        let g = Graph::empty(1);
        let ages = AgeTable::new(1);
        let mut state = ConstructionState::new(&g, &ages);
        state.select(0);
        assert_eq!(selection_probs_v1(&state), Err(ConstructError::EmptyFeasibleSet));
    }

    #[test]
    fn entropy_adjust_examples() {
        let uniform4 = pv(&[(0, 0.25), (1, 0.25), (2, 0.25), (3, 0.25)]);
        assert!((entropy(&uniform4) - 4f64.ln()).abs() < 1e-12);
        for &(_, q) in entropy_adjust(&uniform4).entries() {
            assert!((q - 0.25).abs() < 1e-12);
        }

        let single = pv(&[(7, 1.0)]);
        assert_eq!(entropy(&single), 0.0);
        assert_eq!(entropy_adjust(&single).entries(), &[(7, 1.0)]);

        let skewed = pv(&[(0, 0.8), (1, 0.2)]);
        assert!((entropy(&skewed) - 0.500_402_423_538_187_9).abs() < 1e-12);
        let adj = entropy_adjust(&skewed);
        assert!((adj.entries()[0].1 - 0.649_939_660_751_205_8).abs() < 1e-12);
        assert!((adj.entries()[1].1 - 0.350_060_339_248_794_15).abs() < 1e-12);
    }

    #[test]
    fn zero_probability_entries_do_not_poison_entropy() {
        let p = pv(&[(0, 0.0), (1, 1.0)]);
        assert_eq!(entropy(&p), 0.0);
        assert_eq!(entropy_adjust(&p).entries(), &[(0, 0.0), (1, 1.0)]);
    }

    #[test]
    fn roulette_examples() {
        let mut rng = seeded(1);
        assert_eq!(roulette_select(&pv(&[(4, 1.0)]), &mut rng), 4);
        for _ in 0..1000 {
            assert_eq!(roulette_select(&pv(&[(0, 0.0), (1, 1.0)]), &mut rng), 1);
            assert_eq!(roulette_select(&pv(&[(0, 1.0), (1, 0.0)]), &mut rng), 0);
        }
    }

    #[test]
    fn roulette_frequencies_within_three_sigma() {
        let p = pv(&[(0, 0.3), (1, 0.7)]);
        let mut rng = seeded(2024);
        let draws = 100_000;
        let hits = (0..draws).filter(|_| roulette_select(&p, &mut rng) == 0).count() as f64;
        let sigma = (draws as f64 * 0.3 * 0.7).sqrt();
        assert!((hits - 0.3 * draws as f64).abs() <= 3.0 * sigma, "hits = {hits}");
    }

    #[test]
    fn roulette_consumes_one_draw() {
        let p = pv(&[(0, 0.2), (1, 0.3), (2, 0.5)]);
        let mut a = seeded(9);
        let mut b = seeded(9);
        roulette_select(&p, &mut a);
        uniform(&mut b);
        assert_eq!(uniform(&mut a).to_bits(), uniform(&mut b).to_bits());
    }

    #[test]
    fn original_examples() {
        let params = ConstructParams { d_rate: 1.0, ..Default::default() };
        let s = construct_original(&path3(), &params, &mut seeded(0));
        assert_eq!(s.vertices(), &[0, 2]);
        for seed in 0..20 {
            let p = ConstructParams { d_rate: 0.3, candidate_list_size: 3, ..Default::default() };
            assert_eq!(construct_original(&triangle(), &p, &mut seeded(seed)).score(), 1);
        }
        assert_eq!(construct_original(&Graph::empty(5), &params, &mut seeded(0)).score(), 5);
    }

    #[test]
    fn weighted_examples() {
        let params = ConstructParams { d_rate: 1.0, ..Default::default() };
        let g = Graph::empty(3);
        let s = construct_weighted(&g, &AgeTable::new(3), &params, &mut seeded(0), HeuristicVariant::V1Weighted);
        assert_eq!(s.vertices(), &[0, 1, 2]);

        let star = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let ages = AgeTable::from_ages(vec![1; 5]);
        let s = construct_weighted(&star, &ages, &params, &mut seeded(0), HeuristicVariant::V1Weighted);
        assert_eq!(s.vertices(), &[1, 2, 3, 4]);

        // a (age 0) outweighs b (age 10): a is picked first
        let g = Graph::empty(2);
        let ages = AgeTable::from_ages(vec![10, 0]);
        let state = ConstructionState::new(&g, &ages);
        let p = selection_probs_v1(&state).unwrap();
        assert_eq!(p.extreme(DeterministicPick::Max), 1);
        assert_eq!(p.extreme(DeterministicPick::Min), 0);
    }

    #[test]
    fn min_pick_prefers_low_weight() {
        let params = ConstructParams { d_rate: 1.0, deterministic_pick: DeterministicPick::Min, ..Default::default() };
        let star = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let ages = AgeTable::from_ages(vec![1; 5]);
        let s = construct_weighted(&star, &ages, &params, &mut seeded(0), HeuristicVariant::V1Weighted);
        assert_eq!(s.vertices(), &[0]);
    }

    #[test]
    fn variant_names_round_trip() {
        for v in HeuristicVariant::ALL {
            assert_eq!(v.name().parse::<HeuristicVariant>().unwrap(), v);
            assert_eq!(serde_json::to_string(&v).unwrap(), format!("\"{}\"", v.name()));
        }
        assert!("v3".parse::<HeuristicVariant>().is_err());
    }

    fn random_ages(n: usize, seed: u64) -> AgeTable {
        let mut rng = seeded(seed);
        AgeTable::from_ages((0..n).map(|_| random_index(6, uniform(&mut rng)) as i32 - 1).collect())
    }

    proptest! {
        #[test]
        fn constructions_are_maximal_independent_sets(
            n in 1usize..60, p in 0.0f64..0.6, seed: u64, d_rate in 0.0f64..=1.0, k in 1usize..12, v in 0usize..3,
        ) {
            let g = if n >= 2 { gen_erdos_renyi(n, p, seed).unwrap() } else { Graph::empty(n) };
            let ages = random_ages(n, seed ^ 1);
            let params = ConstructParams { d_rate, candidate_list_size: k, ..Default::default() };
            let variant = HeuristicVariant::ALL[v];
            let s = Constructor::new(&g).construct(variant, &ages, &params, &mut seeded(seed), &mut scratch_clock());
            let check = check_solution(&g, &s).unwrap();
            prop_assert!(check.feasible && check.maximal);
        }

        #[test]
        fn probability_vectors_are_distributions(n in 2usize..50, seed: u64) {
            let g = gen_erdos_renyi(n, 0.2, seed).unwrap();
            let ages = random_ages(n, seed);
            let state = ConstructionState::new(&g, &ages);
            let p = selection_probs_v1(&state).unwrap();
            prop_assert!((p.total() - 1.0).abs() < 1e-9);
            let q = entropy_adjust(&p);
            prop_assert!((q.total() - 1.0).abs() < 1e-9);
            prop_assert!(q.entries().iter().all(|&(_, x)| x >= 0.0));
            let h = entropy(&p);
            prop_assert!(h > 0.0);
            prop_assert!(q.max_probability() <= p.max_probability() + 1e-15);
        }

        #[test]
        fn argmax_is_scale_invariant(weights in prop::collection::vec(0.01f64..10.0, 1..30), scale in 0.01f64..100.0) {
            let a = ProbVector::from_weights(weights.iter().copied().enumerate().collect()).unwrap();
            let b = ProbVector::from_weights(weights.iter().map(|w| w * scale).enumerate().collect()).unwrap();
            prop_assert_eq!(a.extreme(DeterministicPick::Max), b.extreme(DeterministicPick::Max));
        }

        #[test]
        fn fully_deterministic_weighted_is_reproducible(n in 2usize..40, seed: u64, s1: u64, s2: u64) {
            let g = gen_erdos_renyi(n, 0.15, seed).unwrap();
            let ages = random_ages(n, seed);
            let params = ConstructParams { d_rate: 1.0, ..Default::default() };
            let a = construct_weighted(&g, &ages, &params, &mut seeded(s1), HeuristicVariant::V2Entropy);
            let b = construct_weighted(&g, &ages, &params, &mut seeded(s2), HeuristicVariant::V2Entropy);
            prop_assert_eq!(a, b);
        }

        #[test]
        fn steps_never_pick_adjacent_vertices(n in 2usize..40, seed: u64) {
            let g = gen_erdos_renyi(n, 0.2, seed).unwrap();
            let ages = random_ages(n, seed);
            let mut rng = seeded(seed);
            let mut state = ConstructionState::new(&g, &ages);
            while !state.is_complete() {
                let p = selection_probs_v1(&state).unwrap();
                let v = roulette_select(&p, &mut rng);
                for &c in state.chosen() {
                    prop_assert!(!g.has_edge(c, v));
                }
                state.select(v);
            }
        }
    }
}
