//! Gain-graph files and graph generators.
//!
//! Files are JSON documents:
//!
//! ```json
//! {"format": "dualgain-graph", "version": 1, "ring": "complex", "n": 2,
//!  "edges": [{"u": 0, "v": 1, "gain_std": [0.0, 1.0], "gain_dual": [0.5, 0.0]}]}
//! ```
//!
//! Each edge carries the gain of the orientation `u → v` as flat base-ring
//! components (1, 2 or 4 reals). Numbers are written in shortest round-trip
//! form, so parsing a serialized graph reproduces it bit for bit.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AnyGainGraph, GainGraph, Graph};
use crate::scalar::{Dual, DualScalar, Element, Quaternion, Ring};

pub const FORMAT_NAME: &str = "dualgain-graph";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub u: usize,
    pub v: usize,
    pub gain_std: Vec<f64>,
    pub gain_dual: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GainGraphFile {
    pub format: String,
    pub version: u32,
    pub ring: String,
    pub n: usize,
    pub edges: Vec<EdgeRecord>,
}

impl GainGraphFile {
    pub fn from_graph(g: &AnyGainGraph) -> Self {
        let edges = g
            .graph()
            .edges()
            .iter()
            .zip(g.tagged_gains())
            .map(|(&(u, v), gain)| EdgeRecord {
                u,
                v,
                gain_std: gain.std_components(),
                gain_dual: gain.dual_components(),
            })
            .collect();
        GainGraphFile {
            format: FORMAT_NAME.to_string(),
            version: FORMAT_VERSION,
            ring: g.ring().to_string(),
            n: g.n(),
            edges,
        }
    }

    /// Validates the header, edge shapes and unit gains.
    pub fn into_graph(self, tol: f64) -> Result<AnyGainGraph> {
        let doc_error = |msg: String| Error::Syntax { line: 0, msg };
        if self.format != FORMAT_NAME {
            return Err(doc_error(format!("unknown format `{}`", self.format)));
        }
        if self.version != FORMAT_VERSION {
            return Err(doc_error(format!("unsupported version {}", self.version)));
        }
        let ring: Ring = self.ring.parse()?;
        let mut pairs = Vec::with_capacity(self.edges.len());
        let mut gains = Vec::with_capacity(self.edges.len());
        for (k, e) in self.edges.iter().enumerate() {
            let gain = DualScalar::from_components(ring, &e.gain_std, &e.gain_dual).ok_or_else(|| {
                doc_error(format!(
                    "edge {k}: a {ring} gain needs {} components per part",
                    ring.dim()
                ))
            })?;
            pairs.push((e.u, e.v));
            gains.push((e.u, e.v, gain));
        }
        let graph = Graph::new(self.n, &pairs)?;
        let mut ordered = vec![None; graph.m()];
        for (u, v, gain) in gains {
            if !gain.is_unit(tol) {
                return Err(Error::NotUnitGain { u, v });
            }
            let k = graph.edge_index(u, v).expect("edge present");
            ordered[k] = Some(if u < v { gain } else { gain.conj() });
        }
        let ordered: Vec<DualScalar> = ordered.into_iter().map(|g| g.expect("one gain per edge")).collect();
        AnyGainGraph::from_tagged(ring, graph, &ordered, tol)
    }
}

/// Parses a graph document; JSON errors report their line.
pub fn parse(text: &str, tol: f64) -> Result<AnyGainGraph> {
    let file: GainGraphFile = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        msg: e.to_string(),
    })?;
    file.into_graph(tol)
}

pub fn serialize(g: &AnyGainGraph) -> String {
    let mut s = serde_json::to_string_pretty(&GainGraphFile::from_graph(g)).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Named graph families.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `P_n` with unit gains.
    Path { n: usize },
    /// `C_n` whose walk `0 → 1 → … → n−1 → 0` has gain `gain`.
    Cycle { n: usize, gain: DualScalar },
    /// `K_n` with unit gains.
    Complete { n: usize, ring: Ring },
    /// `G(n, p)` with random unit gains.
    Random { n: usize, p: f64, seed: u64, ring: Ring },
}

pub fn generate(family: &Family, tol: f64) -> Result<AnyGainGraph> {
    match family {
        Family::Path { n } => Ok(GainGraph::<f64>::unit(Graph::path(*n)).into()),
        Family::Complete { n, ring } => Ok(match ring {
            Ring::Real => GainGraph::<f64>::unit(Graph::complete(*n)).into(),
            Ring::Complex => GainGraph::<Complex64>::unit(Graph::complete(*n)).into(),
            Ring::Quaternion => GainGraph::<Quaternion>::unit(Graph::complete(*n)).into(),
        }),
        Family::Cycle { n, gain } => {
            let graph = Graph::cycle(*n)?;
            if !gain.is_unit(tol) {
                return Err(Error::NotUnit);
            }
            let ring = gain.ring();
            let mut one = vec![0.0; ring.dim()];
            one[0] = 1.0;
            let zero = vec![0.0; ring.dim()];
            let unit = DualScalar::from_components(ring, &one, &zero).expect("dimension matches ring");
            let mut gains = vec![unit; graph.m()];
            let closing = graph.edge_index(0, *n - 1).expect("cycle closes");
            gains[closing] = gain.conj();
            AnyGainGraph::from_tagged(ring, graph, &gains, tol)
        }
        Family::Random { n, p, seed, ring } => {
            if !(0.0..=1.0).contains(p) {
                return Err(Error::BadParameter(format!("edge probability {p} outside [0, 1]")));
            }
            let mut rng = rng_from_seed(*seed);
            Ok(match ring {
                Ring::Real => random_gain_graph::<f64, _>(&mut rng, *n, *p).into(),
                Ring::Complex => random_gain_graph::<Complex64, _>(&mut rng, *n, *p).into(),
                Ring::Quaternion => random_gain_graph::<Quaternion, _>(&mut rng, *n, *p).into(),
            })
        }
    }
}

/// Erdős–Rényi `G(n, p)` with independent random unit gains.
pub fn random_gain_graph<T: Element, R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> GainGraph<T> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    with_random_gains(rng, Graph::new(n, &edges).expect("simple by construction"))
}

/// Random spanning tree plus each remaining pair with probability `p`.
pub fn random_connected_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for k in 1..n {
        let parent = order[rng.random_range(0..k)];
        edges.push((parent.min(order[k]), parent.max(order[k])));
    }
    let tree = edges.clone();
    for u in 0..n {
        for v in (u + 1)..n {
            if !tree.contains(&(u, v)) && rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("simple by construction")
}

pub fn with_random_gains<T: Element, R: Rng + ?Sized>(rng: &mut R, graph: Graph) -> GainGraph<T> {
    let gains = (0..graph.m()).map(|_| T::random_unit(rng)).collect();
    GainGraph::build(graph, gains, f64::INFINITY).expect("gain count matches")
}

/// Gains `θ(u)⁻¹ θ(v)` from a random potential, hence balanced.
pub fn with_random_potential<T: Element, R: Rng + ?Sized>(rng: &mut R, graph: Graph) -> GainGraph<T> {
    let theta = random_switching::<T, R>(rng, graph.n());
    let gains = graph.edges().iter().map(|&(u, v)| theta[u].conj() * theta[v]).collect();
    GainGraph::build(graph, gains, f64::INFINITY).expect("gain count matches")
}

/// One random unit per vertex.
pub fn random_switching<T: Element, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Dual<T>> {
    (0..n).map(|_| T::random_unit(rng)).collect()
}

/// Nonempty random vertex subset, sorted.
pub fn random_subset<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    loop {
        let s: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}

/// Serialized form of any typed gain graph.
pub fn serialize_typed<T: Element>(g: &GainGraph<T>) -> String {
    serialize(&g.clone().into())
}

/// Ring-tagged graph as a typed graph, if the ring matches.
pub fn typed<T: Element>(g: &AnyGainGraph) -> Option<GainGraph<T>> {
    let tagged = g.tagged_gains();
    let gains = tagged.iter().map(T::unwrap).collect::<Option<Vec<_>>>()?;
    GainGraph::build(g.graph().clone(), gains, f64::INFINITY).ok()
}
