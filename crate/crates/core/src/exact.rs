//! Exact solution of the reduced subproblem.
//!
//! The subproblem is the MIS model `max Σ x_v` s.t. `x_u + x_v <= 1` on every
//! induced edge, `x ∈ {0, 1}`. [`BranchAndBound`] solves it by depth-first
//! search: branch on a maximum-degree free vertex (exclude, then include),
//! prune with a greedy clique cover, and fold in the degree-0/degree-1
//! reductions, which never lose optimality. The search starts from a greedy
//! incumbent and is interruptible, so it is an anytime method.

use std::fmt::Write as _;
use std::time::Duration;

use crate::ages::AgeTable;
use crate::clock::{ClockMode, Stopwatch};
use crate::graph::{Graph, Solution, VertexId};

/// Nodes between wall-clock reads.
pub const TIME_CHECK_INTERVAL: u64 = 1024;

/// Induced subgraph on the vertices currently in the subproblem.
#[derive(Debug, Clone)]
pub struct Subproblem<'a> {
    parent: &'a Graph,
    vertices: Vec<VertexId>,
    induced_edges: Vec<(VertexId, VertexId)>,
}

impl<'a> Subproblem<'a> {
    /// `vertices` are parent ids; duplicates are dropped.
    pub fn new(parent: &'a Graph, mut vertices: Vec<VertexId>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        let mut member = vec![false; parent.n_vertices()];
        for &v in &vertices {
            member[v] = true;
        }
        let induced_edges = vertices
            .iter()
            .flat_map(|&u| {
                let member = &member;
                parent.neighbors(u).iter().filter(move |&&v| v > u && member[v]).map(move |&v| (u, v))
            })
            .collect();
        Self { parent, vertices, induced_edges }
    }

    pub fn parent(&self) -> &'a Graph {
        self.parent
    }

    /// Member vertices (parent ids), ascending.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn induced_edges(&self) -> &[(VertexId, VertexId)] {
        &self.induced_edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Local adjacency over indices into [`Self::vertices`].
    fn local_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(u, v) in &self.induced_edges {
            let a = self.local_index(u).expect("edge endpoint is a member");
            let b = self.local_index(v).expect("edge endpoint is a member");
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    fn local_index(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// The ILP model in CPLEX LP text format, variables named `x<parent id>`.
    pub fn to_lp(&self) -> String {
        let mut out = String::from("\\ maximum independent set subproblem\nMaximize\n obj:");
        if self.vertices.is_empty() {
            out.push_str(" 0");
        }
        for (i, v) in self.vertices.iter().enumerate() {
            let sep = if i == 0 { " " } else { " + " };
            write!(out, "{sep}x{v}").unwrap();
        }
        out.push_str("\nSubject To\n");
        for (i, (u, v)) in self.induced_edges.iter().enumerate() {
            writeln!(out, " e{i}: x{u} + x{v} <= 1").unwrap();
        }
        out.push_str("Binaries\n");
        for v in &self.vertices {
            writeln!(out, " x{v}").unwrap();
        }
        out.push_str("End\n");
        out
    }
}

/// Subproblem over every vertex with a non-negative age.
pub fn build_subproblem<'a>(g: &'a Graph, ages: &AgeTable) -> Subproblem<'a> {
    Subproblem::new(g, ages.subproblem_vertices())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    /// Independent set in parent ids, a subset of the subproblem's vertices.
    pub solution: Solution,
    pub proven_optimal: bool,
    pub elapsed: Duration,
    pub nodes_explored: u64,
}

/// Decision state of one subproblem vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assign {
    Free,
    Included,
    Excluded,
}

/// Included count plus the size of a greedy clique cover of the free
/// vertices. Free vertices adjacent to an included one can no longer be
/// chosen and are left out of the cover.
///
/// `assignment` is aligned with [`Subproblem::vertices`].
pub fn upper_bound(sp: &Subproblem<'_>, assignment: &[Assign]) -> usize {
    assert_eq!(assignment.len(), sp.len());
    let adj = sp.local_adjacency();
    let included = assignment.iter().filter(|&&a| a == Assign::Included).count();
    let open: Vec<bool> = (0..sp.len())
        .map(|v| assignment[v] == Assign::Free && adj[v].iter().all(|&u| assignment[u] != Assign::Included))
        .collect();
    let mut cover = CliqueCover::new(sp.len());
    included + cover.count(&adj, (0..sp.len()).filter(|&v| open[v]), |v| open[v]).0
}

/// Greedy sequential clique cover with reusable scratch buffers.
#[derive(Debug)]
struct CliqueCover {
    clique_of: Vec<usize>,
    sizes: Vec<usize>,
    hits: Vec<usize>,
    touched: Vec<usize>,
}

impl CliqueCover {
    const NONE: usize = usize::MAX;

    fn new(n: usize) -> Self {
        Self { clique_of: vec![Self::NONE; n], sizes: Vec::new(), hits: Vec::new(), touched: Vec::new() }
    }

    /// Assigns each vertex to the first existing clique it is fully adjacent
    /// to, or opens a new one. Returns (clique count, adjacency entries read).
    fn count<I, F>(&mut self, adj: &[Vec<usize>], order: I, is_open: F) -> (usize, u64)
    where
        I: Iterator<Item = usize> + Clone,
        F: Fn(usize) -> bool,
    {
        self.sizes.clear();
        self.hits.clear();
        let mut scanned = 0u64;
        for v in order.clone() {
            self.touched.clear();
            for &u in &adj[v] {
                scanned += 1;
                let c = self.clique_of[u];
                if c != Self::NONE && is_open(u) {
                    if self.hits[c] == 0 {
                        self.touched.push(c);
                    }
                    self.hits[c] += 1;
                }
            }
            let mut target = Self::NONE;
            for &c in &self.touched {
                if target == Self::NONE && self.hits[c] == self.sizes[c] {
                    target = c;
                }
                self.hits[c] = 0;
            }
            if target == Self::NONE {
                target = self.sizes.len();
                self.sizes.push(0);
                self.hits.push(0);
            }
            self.sizes[target] += 1;
            self.clique_of[v] = target;
        }
        for v in order {
            self.clique_of[v] = Self::NONE;
        }
        (self.sizes.len(), scanned)
    }
}

/// A backend for the Solve phase: best independent set found within the
/// limit, flagged optimal only when the search was exhausted.
pub trait SubproblemSolver {
    fn solve(&self, sp: &Subproblem<'_>, time_limit: Duration, clock: &mut Stopwatch) -> ExactResult;
}

/// Built-in depth-first branch-and-bound.
#[derive(Debug, Clone, Copy, Default)]
pub struct BranchAndBound;

impl SubproblemSolver for BranchAndBound {
    fn solve(&self, sp: &Subproblem<'_>, time_limit: Duration, clock: &mut Stopwatch) -> ExactResult {
        let started = clock.elapsed();
        let deadline = started + time_limit;
        let mut search = Search::new(sp, clock, deadline);
        search.seed_incumbent();
        search.branch();
        let proven_optimal = !search.timed_out;
        let nodes_explored = search.nodes;
        let best = search.best.clone();
        let solution = Solution::new(best.into_iter().map(|i| sp.vertices[i]));
        ExactResult { solution, proven_optimal, elapsed: clock.elapsed() - started, nodes_explored }
    }
}

/// Solves against the wall clock.
pub fn solve_exact(sp: &Subproblem<'_>, time_limit: Duration) -> ExactResult {
    solve_exact_with(sp, time_limit, &mut Stopwatch::start(ClockMode::Wall))
}

/// Solves against a caller-supplied clock.
pub fn solve_exact_with(sp: &Subproblem<'_>, time_limit: Duration, clock: &mut Stopwatch) -> ExactResult {
    BranchAndBound.solve(sp, time_limit, clock)
}

struct Search<'c> {
    adj: Vec<Vec<usize>>,
    alive: Vec<bool>,
    degree: Vec<usize>,
    alive_count: usize,
    alive_edges: usize,
    trail: Vec<usize>,
    included: Vec<usize>,
    best: Vec<usize>,
    queue: Vec<usize>,
    cover: CliqueCover,
    clock: &'c mut Stopwatch,
    deadline: Duration,
    nodes: u64,
    timed_out: bool,
}

impl<'c> Search<'c> {
    fn new(sp: &Subproblem<'_>, clock: &'c mut Stopwatch, deadline: Duration) -> Self {
        let adj = sp.local_adjacency();
        let degree: Vec<usize> = adj.iter().map(Vec::len).collect();
        let n = adj.len();
        clock.charge((n + 2 * sp.induced_edges.len()) as u64);
        Self {
            alive_edges: sp.induced_edges.len(),
            alive: vec![true; n],
            alive_count: n,
            degree,
            adj,
            trail: Vec::with_capacity(n),
            included: Vec::new(),
            best: Vec::new(),
            queue: Vec::new(),
            cover: CliqueCover::new(n),
            clock,
            deadline,
            nodes: 0,
            timed_out: false,
        }
    }

    /// Greedy by minimum residual degree.
    fn seed_incumbent(&mut self) {
        let n = self.adj.len();
        let mut alive = vec![true; n];
        let mut degree = self.degree.clone();
        let mut chosen = Vec::new();
        let mut work = 0u64;
        // bucket queue keyed by current degree, lazily invalidated
        let max_deg = degree.iter().copied().max().unwrap_or(0);
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_deg + 1];
        for v in (0..n).rev() {
            buckets[degree[v]].push(v);
        }
        let mut d = 0;
        while d <= max_deg {
            let Some(v) = buckets[d].pop() else {
                d += 1;
                continue;
            };
            if !alive[v] || degree[v] != d {
                continue;
            }
            chosen.push(v);
            alive[v] = false;
            for &u in &self.adj[v] {
                if !alive[u] {
                    continue;
                }
                alive[u] = false;
                for &w in &self.adj[u] {
                    work += 1;
                    if alive[w] {
                        degree[w] -= 1;
                        buckets[degree[w]].push(w);
                        d = d.min(degree[w]);
                    }
                }
            }
        }
        self.clock.charge(work + n as u64);
        self.best = chosen;
    }

    fn remove(&mut self, v: usize) {
        debug_assert!(self.alive[v]);
        self.alive[v] = false;
        self.alive_count -= 1;
        self.alive_edges -= self.degree[v];
        for &u in &self.adj[v] {
            if self.alive[u] {
                self.degree[u] -= 1;
                if self.degree[u] <= 1 {
                    self.queue.push(u);
                }
            }
        }
        self.trail.push(v);
        self.clock.charge(self.adj[v].len() as u64 + 1);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail above mark");
            for &u in &self.adj[v] {
                if self.alive[u] {
                    self.degree[u] += 1;
                }
            }
            self.alive[v] = true;
            self.alive_count += 1;
            self.alive_edges += self.degree[v];
        }
    }

    fn include(&mut self, v: usize) {
        self.included.push(v);
        self.remove(v);
        for i in 0..self.adj[v].len() {
            let u = self.adj[v][i];
            if self.alive[u] {
                self.remove(u);
            }
        }
    }

    /// Applies degree-0 and degree-1 inclusions until none remain.
    fn reduce(&mut self) {
        while let Some(v) = self.queue.pop() {
            if !self.alive[v] {
                continue;
            }
            match self.degree[v] {
                0 | 1 => self.include(v),
                _ => {}
            }
        }
    }

    fn out_of_time(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        if !self.clock.is_wall() || self.nodes.is_multiple_of(TIME_CHECK_INTERVAL) {
            self.timed_out = self.clock.elapsed() >= self.deadline;
        }
        self.timed_out
    }

    fn branch(&mut self) {
        self.nodes += 1;
        if self.out_of_time() {
            return;
        }
        let mark = self.trail.len();
        let included_mark = self.included.len();

        self.queue.clear();
        self.queue.extend((0..self.adj.len()).filter(|&v| self.alive[v] && self.degree[v] <= 1));
        self.clock.charge(self.adj.len() as u64);
        self.reduce();

        if self.alive_count == 0 {
            if self.included.len() > self.best.len() {
                self.best = self.included.clone();
            }
        } else if self.bound() > self.best.len() {
            let v = (0..self.adj.len())
                .filter(|&v| self.alive[v])
                .max_by_key(|&v| (self.degree[v], std::cmp::Reverse(v)))
                .expect("alive vertex exists");

            let before = self.trail.len();
            self.remove(v);
            self.branch();
            self.undo_to(before);

            if !self.timed_out {
                let before_inc = self.included.len();
                self.include(v);
                self.branch();
                self.undo_to(before);
                self.included.truncate(before_inc);
            }
        }

        self.undo_to(mark);
        self.included.truncate(included_mark);
    }

    fn bound(&mut self) -> usize {
        let alive = &self.alive;
        let order = (0..self.adj.len()).filter(|&v| alive[v]);
        let (cliques, scanned) = self.cover.count(&self.adj, order, |v| alive[v]);
        self.clock.charge(scanned + self.adj.len() as u64);
        self.included.len() + cliques
    }
}
