//! Seeded random-graph families: Erdős–Rényi, Barabási–Albert, Watts–Strogatz.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError, VertexId};
use crate::rng::{random_index, seeded, uniform};

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameters(msg.into())
}

fn check_prob(p: f64) -> Result<(), GraphError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(invalid(format!("probability {p} outside [0, 1]")))
    }
}

fn check_n(n: usize) -> Result<(), GraphError> {
    if n >= 2 {
        Ok(())
    } else {
        Err(invalid(format!("n = {n}, need at least 2 vertices")))
    }
}

/// G(n, p): every pair `u < v` is drawn independently, in lexicographic order.
pub fn gen_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    check_n(n)?;
    check_prob(p)?;
    let mut rng = seeded(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if uniform(&mut rng) < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Preferential attachment from `m` isolated seed vertices. Each new vertex
/// links to `m` distinct earlier vertices drawn with probability proportional
/// to `degree + 1`, giving exactly `m * (n - m)` edges.
pub fn gen_barabasi_albert(n: usize, m: usize, seed: u64) -> Result<Graph, GraphError> {
    check_n(n)?;
    if m < 1 || m >= n {
        return Err(invalid(format!("attachment count m = {m} must satisfy 1 <= m < n = {n}")));
    }
    let mut rng = seeded(seed);
    // One entry per vertex plus one per edge endpoint: sampling uniformly
    // from this pool is sampling proportional to degree + 1.
    let mut pool: Vec<VertexId> = (0..m).collect();
    let mut edges = Vec::with_capacity(m * (n - m));
    let mut targets = Vec::with_capacity(m);
    for v in m..n {
        targets.clear();
        while targets.len() < m {
            let t = pool[random_index(pool.len(), uniform(&mut rng))];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, v));
            pool.push(t);
            pool.push(v);
        }
        pool.push(v);
    }
    Graph::from_edges(n, edges)
}

/// Ring lattice with `k / 2` neighbours per side, then each lattice edge
/// `(v, v + j)` is rewired with probability `p` to `(v, w)` for a uniform `w`
/// that is neither `v` nor already adjacent. Edges whose source is already
/// saturated stay in place, so the edge count is always `n * k / 2`.
pub fn gen_watts_strogatz(n: usize, k: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    check_n(n)?;
    check_prob(p)?;
    if !k.is_multiple_of(2) || k < 2 {
        return Err(invalid(format!("ring degree k = {k} must be even and at least 2")));
    }
    if k >= n {
        return Err(invalid(format!("ring degree k = {k} must be below n = {n}")));
    }
    let mut rng = seeded(seed);
    let mut adj: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); n];
    for v in 0..n {
        for j in 1..=k / 2 {
            let u = (v + j) % n;
            adj[v].insert(u);
            adj[u].insert(v);
        }
    }
    for j in 1..=k / 2 {
        for v in 0..n {
            let u = (v + j) % n;
            if uniform(&mut rng) >= p {
                continue;
            }
            if !adj[v].contains(&u) || adj[v].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = random_index(n, uniform(&mut rng));
                if w != v && !adj[v].contains(&w) {
                    break w;
                }
            };
            adj[v].remove(&u);
            adj[u].remove(&v);
            adj[v].insert(w);
            adj[w].insert(v);
        }
    }
    let edges = adj.iter().enumerate().flat_map(|(v, ns)| ns.range(v + 1..).map(move |&u| (v, u)));
    Graph::from_edges(n, edges)
}

/// A fully specified random instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GraphFamilySpec {
    ErdosRenyi { n: usize, p: f64, seed: u64 },
    BarabasiAlbert { n: usize, m: usize, seed: u64 },
    WattsStrogatz { n: usize, k: usize, p: f64, seed: u64 },
}

impl GraphFamilySpec {
    pub fn generate(&self) -> Result<Graph, GraphError> {
        match *self {
            Self::ErdosRenyi { n, p, seed } => gen_erdos_renyi(n, p, seed),
            Self::BarabasiAlbert { n, m, seed } => gen_barabasi_albert(n, m, seed),
            Self::WattsStrogatz { n, k, p, seed } => gen_watts_strogatz(n, k, p, seed),
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            Self::ErdosRenyi { n, .. } | Self::BarabasiAlbert { n, .. } | Self::WattsStrogatz { n, .. } => n,
        }
    }

    pub fn seed(&self) -> u64 {
        match *self {
            Self::ErdosRenyi { seed, .. } | Self::BarabasiAlbert { seed, .. } | Self::WattsStrogatz { seed, .. } => {
                seed
            }
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            Self::ErdosRenyi { .. } => "erdos_renyi",
            Self::BarabasiAlbert { .. } => "barabasi_albert",
            Self::WattsStrogatz { .. } => "watts_strogatz",
        }
    }

    /// Validates parameters without generating.
    pub fn validate(&self) -> Result<(), GraphError> {
        match *self {
            Self::ErdosRenyi { n, p, .. } => check_n(n).and(check_prob(p)),
            Self::BarabasiAlbert { n, m, .. } => {
                check_n(n)?;
                if m < 1 || m >= n {
                    return Err(invalid(format!("attachment count m = {m} must satisfy 1 <= m < n = {n}")));
                }
                Ok(())
            }
            Self::WattsStrogatz { n, k, p, .. } => {
                check_n(n)?;
                check_prob(p)?;
                if k % 2 != 0 || k < 2 || k >= n {
                    return Err(invalid(format!("ring degree k = {k} must be even with 2 <= k < n = {n}")));
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::check_solution;
    use proptest::prelude::*;

    #[test]
    fn er_extremes() {
        assert_eq!(gen_erdos_renyi(10, 0.0, 1).unwrap().n_edges(), 0);
        assert_eq!(gen_erdos_renyi(10, 1.0, 1).unwrap().n_edges(), 45);
    }

    #[test]
    fn er_edge_count_within_three_sigma() {
        let pairs = 1000.0 * 999.0 / 2.0;
        let mean = pairs * 0.05;
        let sigma = (pairs * 0.05 * 0.95f64).sqrt();
        let m = gen_erdos_renyi(1000, 0.05, 42).unwrap().n_edges() as f64;
        assert!((m - mean).abs() <= 3.0 * sigma, "{m} vs {mean} ± {}", 3.0 * sigma);
    }

    #[test]
    fn er_rejects_bad_args() {
        assert!(gen_erdos_renyi(1, 0.5, 0).is_err());
        assert!(gen_erdos_renyi(5, 1.5, 0).is_err());
        assert!(gen_erdos_renyi(5, -0.1, 0).is_err());
    }

    #[test]
    fn ba_small_tree() {
        let g = gen_barabasi_albert(5, 1, 3).unwrap();
        assert_eq!(g.n_edges(), 4);
        // connected: a spanning tree on 5 vertices has no isolated vertex
        // and 4 edges; verify by BFS
        let mut seen = [false; 5];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn ba_edge_count() {
        assert_eq!(gen_barabasi_albert(100, 2, 9).unwrap().n_edges(), 196);
        assert!(gen_barabasi_albert(5, 0, 1).is_err());
        assert!(gen_barabasi_albert(5, 5, 1).is_err());
    }

    #[test]
    fn ba_heavy_tail() {
        for seed in 0..10 {
            let g = gen_barabasi_albert(2000, 5, seed).unwrap();
            let mut d = g.degrees();
            d.sort_unstable();
            let median = d[d.len() / 2];
            let max = *d.last().unwrap();
            assert!(max >= 3 * median, "seed {seed}: max {max}, median {median}");
        }
    }

    #[test]
    fn ws_lattices() {
        let cycle = gen_watts_strogatz(10, 2, 0.0, 1).unwrap();
        assert_eq!(cycle.n_edges(), 10);
        assert!(cycle.degrees().iter().all(|&d| d == 2));
        let lattice = gen_watts_strogatz(20, 4, 0.0, 1).unwrap();
        assert_eq!(lattice.n_edges(), 40);
        assert!(lattice.degrees().iter().all(|&d| d == 4));
        assert_eq!(gen_watts_strogatz(2000, 10, 0.1, 5).unwrap().n_edges(), 10000);
    }

    #[test]
    fn ws_rejects_bad_args() {
        assert!(gen_watts_strogatz(10, 3, 0.1, 1).is_err());
        assert!(gen_watts_strogatz(10, 10, 0.1, 1).is_err());
        assert!(gen_watts_strogatz(10, 0, 0.1, 1).is_err());
        assert!(gen_watts_strogatz(10, 4, 1.1, 1).is_err());
    }

    #[test]
    fn ws_dense_rewiring_keeps_count() {
        // k = n - 2 leaves almost no valid targets
        for seed in 0..20 {
            let g = gen_watts_strogatz(8, 6, 1.0, seed).unwrap();
            assert_eq!(g.n_edges(), 24);
        }
    }

    #[test]
    fn spec_serde_shape() {
        let spec = GraphFamilySpec::WattsStrogatz { n: 20, k: 4, p: 0.1, seed: 3 };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"family":"watts_strogatz","n":20,"k":4,"p":0.1,"seed":3}"#);
        assert_eq!(serde_json::from_str::<GraphFamilySpec>(&json).unwrap(), spec);
    }

    fn family_strategy() -> impl Strategy<Value = GraphFamilySpec> {
        prop_oneof![
            (2usize..80, 0.0f64..=1.0, any::<u64>()).prop_map(|(n, p, seed)| GraphFamilySpec::ErdosRenyi {
                n,
                p,
                seed
            }),
            (2usize..80, any::<u64>())
                .prop_flat_map(|(n, seed)| (1..n).prop_map(move |m| GraphFamilySpec::BarabasiAlbert { n, m, seed })),
            (3usize..80, 0.0f64..=1.0, any::<u64>()).prop_flat_map(|(n, p, seed)| (1..=(n - 1) / 2)
                .prop_map(move |h| GraphFamilySpec::WattsStrogatz { n, k: 2 * h, p, seed })),
        ]
    }

    proptest! {
        #[test]
        fn generators_are_pure_and_meet_counts(spec in family_strategy()) {
            let a = spec.generate().unwrap();
            let b = spec.generate().unwrap();
            prop_assert_eq!(&a, &b);
            let expected = match spec {
                GraphFamilySpec::BarabasiAlbert { n, m, .. } => Some(m * (n - m)),
                GraphFamilySpec::WattsStrogatz { n, k, .. } => Some(n * k / 2),
                GraphFamilySpec::ErdosRenyi { .. } => None,
            };
            if let Some(m) = expected {
                prop_assert_eq!(a.n_edges(), m);
            }
            let degs = a.degrees();
            prop_assert_eq!(degs.iter().sum::<usize>(), 2 * a.n_edges());
            for &(u, v) in a.edges() {
                prop_assert!(u < v && a.has_edge(v, u));
            }
            // the empty set is always feasible
            prop_assert!(check_solution(&a, &crate::graph::Solution::empty()).unwrap().feasible);
        }

        #[test]
        fn degree_order_is_sorted_permutation(spec in family_strategy()) {
            let g = spec.generate().unwrap();
            let order = crate::graph::degree_order(&g);
            let mut sorted = order.clone();
            sorted.sort_unstable();
            prop_assert_eq!(sorted, (0..g.n_vertices()).collect::<Vec<_>>());
            prop_assert!(order.windows(2).all(|w| g.degree(w[0]) <= g.degree(w[1])));
        }
    }
}
