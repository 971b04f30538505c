//! Simple graphs and dual unit gain graphs.
//!
//! Gains are stored once per undirected edge in the orientation `u < v`; the
//! reverse orientation reads the conjugate, which is the inverse of a unit.

use std::collections::VecDeque;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{Dual, DualScalar, Element, Quaternion, Ring};

/// Default componentwise tolerance for balance decisions.
pub const BALANCE_TOL: f64 = 1e-9;

/// A simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Canonical `(u, v)` with `u < v`, sorted.
    edges: Vec<(usize, usize)>,
    /// Sorted neighbor lists.
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Edges may be given in either orientation; they are canonicalized.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut canon = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for vertex in [a, b] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge { u: w[0].0, v: w[0].1 });
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &canon {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        Ok(Graph { n, edges: canon, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::new(n, &edges).expect("path edges are simple")
    }

    /// Cycle `0 − 1 − … − (n−1) − 0`; requires `n ≥ 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::BadParameter(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((0, n - 1));
        Graph::new(n, &edges)
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).expect("complete graph edges are simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && a < self.n && b < self.n && self.edge_index(a, b).is_some()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Maximum degree `Δ` (0 for the empty graph).
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.adj.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut comp = vec![root];
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by `s`, relabelled so `s[k]` becomes `k`.
    pub fn induced(&self, s: &[usize]) -> Result<Graph> {
        let mut pos = vec![usize::MAX; self.n];
        for (k, &v) in s.iter().enumerate() {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            pos[v] = k;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]))
            .collect();
        Graph::new(s.len(), &edges)
    }
}

/// A graph with a unit dual gain on every edge.
#[derive(Debug, Clone, PartialEq)]
pub struct GainGraph<T> {
    graph: Graph,
    /// Gain of the canonical orientation of `graph.edges()[k]`.
    gains: Vec<Dual<T>>,
}

/// Outcome of the potential-function search.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialCertificate<T> {
    pub balanced: bool,
    /// `θ` with `φ(e_ij) = θ(v_i)⁻¹ θ(v_j)`; one root fixed to 1 per component.
    pub theta: Option<Vec<Dual<T>>>,
    /// Closed walk (first vertex repeated at the end) whose gain is not 1.
    pub witness_cycle: Option<Vec<usize>>,
    /// Largest componentwise mismatch seen on a non-tree edge.
    pub max_mismatch: f64,
}

impl<T: Element> GainGraph<T> {
    /// `gains[k]` belongs to the canonical orientation of `graph.edges()[k]`.
    pub fn build(graph: Graph, gains: Vec<Dual<T>>, tol: f64) -> Result<Self> {
        if gains.len() != graph.m() {
            return Err(Error::ShapeMismatch(format!(
                "{} gains for {} edges",
                gains.len(),
                graph.m()
            )));
        }
        for (&(u, v), g) in graph.edges().iter().zip(&gains) {
            if !g.is_unit(tol) {
                return Err(Error::NotUnitGain { u, v });
            }
        }
        Ok(GainGraph { graph, gains })
    }

    /// Builds from oriented triples `(u, v, φ(e_uv))` in any orientation.
    pub fn from_edges(n: usize, edges: &[(usize, usize, Dual<T>)], tol: f64) -> Result<Self> {
        let pairs: Vec<_> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        let graph = Graph::new(n, &pairs)?;
        let mut gains = vec![Dual::one(); graph.m()];
        for &(u, v, g) in edges {
            let k = graph.edge_index(u, v).expect("edge was just inserted");
            if !g.is_unit(tol) {
                return Err(Error::NotUnitGain { u, v });
            }
            gains[k] = if u < v { g } else { g.conj() };
        }
        Ok(GainGraph { graph, gains })
    }

    /// `(G, 1)`.
    pub fn unit(graph: Graph) -> Self {
        let gains = vec![Dual::one(); graph.m()];
        GainGraph { graph, gains }
    }

    /// `(G, g)` with the same gain on every canonical orientation.
    pub fn constant(graph: Graph, g: Dual<T>, tol: f64) -> Result<Self> {
        let gains = vec![g; graph.m()];
        Self::build(graph, gains, tol)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn gains(&self) -> &[Dual<T>] {
        &self.gains
    }

    /// `φ(e_ij)`, or `None` when `i, j` are not adjacent.
    pub fn gain(&self, i: usize, j: usize) -> Option<Dual<T>> {
        if i >= self.n() || j >= self.n() {
            return None;
        }
        let g = self.gains[self.graph.edge_index(i, j)?];
        Some(if i < j { g } else { g.conj() })
    }

    /// Ordered product of the oriented gains along `walk`.
    pub fn gain_of_walk(&self, walk: &[usize]) -> Result<Dual<T>> {
        let mut acc = Dual::one();
        for w in walk.windows(2) {
            acc = acc * self.gain(w[0], w[1]).ok_or(Error::NotAWalk(w[0], w[1]))?;
        }
        Ok(acc)
    }

    /// `φ^ζ(e_ij) = ζ(v_i)⁻¹ φ(e_ij) ζ(v_j)`.
    pub fn switch(&self, zeta: &[Dual<T>], tol: f64) -> Result<Self> {
        if zeta.len() != self.n() {
            return Err(Error::ShapeMismatch(format!(
                "{} switching values for {} vertices",
                zeta.len(),
                self.n()
            )));
        }
        if zeta.iter().any(|z| !z.is_unit(tol)) {
            return Err(Error::NotUnit);
        }
        let gains = self
            .graph
            .edges()
            .iter()
            .zip(&self.gains)
            .map(|(&(u, v), &g)| zeta[u].conj() * g * zeta[v])
            .collect();
        Ok(GainGraph {
            graph: self.graph.clone(),
            gains,
        })
    }

    /// `−Φ`.
    pub fn negate(&self) -> Self {
        GainGraph {
            graph: self.graph.clone(),
            gains: self.gains.iter().map(|&g| -g).collect(),
        }
    }

    /// BFS potential per component; the first non-tree edge violating
    /// `φ(e_ij) = θ(v_i)⁻¹ θ(v_j)` yields its fundamental cycle as witness.
    pub fn balance_certificate(&self, tol: f64) -> PotentialCertificate<T> {
        let n = self.n();
        let mut theta: Vec<Option<Dual<T>>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        for root in 0..n {
            if theta[root].is_some() {
                continue;
            }
            theta[root] = Some(Dual::one());
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                let tv = theta[v].expect("visited");
                for &w in self.graph.neighbors(v) {
                    if theta[w].is_none() {
                        theta[w] = Some(tv * self.gain(v, w).expect("adjacent"));
                        parent[w] = v;
                        depth[w] = depth[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        let theta: Vec<Dual<T>> = theta.into_iter().map(|t| t.expect("all visited")).collect();

        let mut max_mismatch: f64 = 0.0;
        let mut witness = None;
        for (&(u, v), &g) in self.graph.edges().iter().zip(&self.gains) {
            if parent[v] == u || parent[u] == v {
                continue;
            }
            let mismatch = g.max_abs_diff(theta[u].conj() * theta[v]);
            max_mismatch = max_mismatch.max(mismatch);
            if mismatch > tol && witness.is_none() {
                witness = Some(fundamental_cycle(&parent, &depth, u, v));
            }
        }
        let balanced = witness.is_none();
        PotentialCertificate {
            balanced,
            theta: balanced.then_some(theta),
            witness_cycle: witness,
            max_mismatch,
        }
    }

    pub fn is_balanced(&self, tol: f64) -> bool {
        self.balance_certificate(tol).balanced
    }

    /// `−Φ` is balanced.
    pub fn is_antibalanced(&self, tol: f64) -> bool {
        self.negate().is_balanced(tol)
    }

    /// `Φ[S]`, relabelled so `s[k]` becomes vertex `k`.
    pub fn induced_subgraph(&self, s: &[usize]) -> Result<Self> {
        let graph = self.graph.induced(s)?;
        let gains = graph
            .edges()
            .iter()
            .map(|&(a, b)| self.gain(s[a], s[b]).expect("induced edge exists"))
            .collect();
        Ok(GainGraph { graph, gains })
    }

    /// Largest componentwise gain difference against a graph on the same edges.
    pub fn max_gain_diff(&self, other: &Self) -> Option<f64> {
        (self.graph == other.graph).then(|| {
            self.gains
                .iter()
                .zip(&other.gains)
                .fold(0.0, |m, (&a, &b)| f64::max(m, a.max_abs_diff(b)))
        })
    }
}

/// Tree path `u → lca → v`, closed by the edge `v → u`.
fn fundamental_cycle(parent: &[usize], depth: &[usize], u: usize, v: usize) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left.push(u);
    left
}

/// A gain graph whose ring is only known at runtime.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyGainGraph {
    Real(GainGraph<f64>),
    Complex(GainGraph<Complex64>),
    Quaternion(GainGraph<Quaternion>),
}

/// Runs `$body` with `$g` bound to the typed gain graph.
#[macro_export]
macro_rules! with_gain_graph {
    ($any:expr, |$g:ident| $body:expr) => {
        match $any {
            $crate::graph::AnyGainGraph::Real($g) => $body,
            $crate::graph::AnyGainGraph::Complex($g) => $body,
            $crate::graph::AnyGainGraph::Quaternion($g) => $body,
        }
    };
}

impl AnyGainGraph {
    pub fn ring(&self) -> Ring {
        match self {
            AnyGainGraph::Real(_) => Ring::Real,
            AnyGainGraph::Complex(_) => Ring::Complex,
            AnyGainGraph::Quaternion(_) => Ring::Quaternion,
        }
    }

    pub fn graph(&self) -> &Graph {
        with_gain_graph!(self, |g| g.graph())
    }

    pub fn n(&self) -> usize {
        self.graph().n()
    }

    /// Gains of the canonical orientations, ring-tagged.
    pub fn tagged_gains(&self) -> Vec<DualScalar> {
        with_gain_graph!(self, |g| g.gains().iter().map(|&x| DualScalar::from(x)).collect())
    }

    /// Builds from ring-tagged gains, all of which must carry `ring`.
    pub fn from_tagged(ring: Ring, graph: Graph, gains: &[DualScalar], tol: f64) -> Result<Self> {
        fn typed<T: Element>(graph: Graph, gains: &[DualScalar], tol: f64) -> Result<GainGraph<T>> {
            let g = gains
                .iter()
                .map(|s| {
                    T::unwrap(s).ok_or(Error::RingMismatch {
                        left: T::RING,
                        right: s.ring(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            GainGraph::build(graph, g, tol)
        }
        Ok(match ring {
            Ring::Real => AnyGainGraph::Real(typed(graph, gains, tol)?),
            Ring::Complex => AnyGainGraph::Complex(typed(graph, gains, tol)?),
            Ring::Quaternion => AnyGainGraph::Quaternion(typed(graph, gains, tol)?),
        })
    }

    pub fn gain_of_walk(&self, walk: &[usize]) -> Result<DualScalar> {
        with_gain_graph!(self, |g| g.gain_of_walk(walk).map(DualScalar::from))
    }

    pub fn negate(&self) -> Self {
        match self {
            AnyGainGraph::Real(g) => AnyGainGraph::Real(g.negate()),
            AnyGainGraph::Complex(g) => AnyGainGraph::Complex(g.negate()),
            AnyGainGraph::Quaternion(g) => AnyGainGraph::Quaternion(g.negate()),
        }
    }

    pub fn induced_subgraph(&self, s: &[usize]) -> Result<Self> {
        Ok(match self {
            AnyGainGraph::Real(g) => AnyGainGraph::Real(g.induced_subgraph(s)?),
            AnyGainGraph::Complex(g) => AnyGainGraph::Complex(g.induced_subgraph(s)?),
            AnyGainGraph::Quaternion(g) => AnyGainGraph::Quaternion(g.induced_subgraph(s)?),
        })
    }
}

impl<T: Element> From<GainGraph<T>> for AnyGainGraph {
    fn from(g: GainGraph<T>) -> Self {
        // Route through the tagged form; the ring is fixed by `T`.
        let tagged: Vec<DualScalar> = g.gains().iter().map(|&x| DualScalar::from(x)).collect();
        AnyGainGraph::from_tagged(T::RING, g.graph().clone(), &tagged, f64::INFINITY).expect("gains already validated")
    }
}
