//! Randomized property suites over seeded instances.
//!
//! Trial `t` draws from stream `t` of a ChaCha8 generator keyed by the seed,
//! so every trial can be replayed in isolation. Rings rotate real, complex,
//! quaternion by trial index.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::char_poly::{coefficients, coefficients_from_eigenvalues, eigenvalue_product, mdet_via_subgraphs};
use crate::error::{Error, Result};
use crate::graph::{GainGraph, Graph, BALANCE_TOL};
use crate::io::{
    random_connected_graph, random_subset, random_switching, rng_from_seed, serialize_typed, with_random_gains,
    with_random_potential,
};
use crate::linalg::{moore_determinant, EigenOptions};
use crate::scalar::{Dual, Element, Quaternion, Ring};
use crate::spectra::{
    adjacency_matrix, check_interlacing, cycle_spectrum_closed_form, fmt_dual, path_spectrum_closed_form,
    radius_report, spectrum, MatrixKind, INTERLACING_TOL,
};
use crate::transcendental::dq_to_dc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Interlacing,
    SwitchingInvariance,
    RadiusBounds,
    MdetProduct,
    Coefficient,
    Dq2dc,
    ClosedForms,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Interlacing,
        Suite::SwitchingInvariance,
        Suite::RadiusBounds,
        Suite::MdetProduct,
        Suite::Coefficient,
        Suite::Dq2dc,
        Suite::ClosedForms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Interlacing => "interlacing",
            Suite::SwitchingInvariance => "switching-invariance",
            Suite::RadiusBounds => "radius-bounds",
            Suite::MdetProduct => "mdet-product",
            Suite::Coefficient => "coefficient",
            Suite::Dq2dc => "dq2dc",
            Suite::ClosedForms => "closed-forms",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::BadParameter(format!("unknown check suite `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: usize,
    pub detail: String,
    /// Serialized graph for replay, when the trial involves one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub first_counterexample: Option<Counterexample>,
}

/// Outcome of one trial: `Ok(None)` passes, `Ok(Some(_))` is a violation.
type Trial = Result<Option<Counterexample>>;

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = rng_from_seed(seed);
    rng.set_stream(trial as u64);
    rng
}

pub fn trial_ring(trial: usize) -> Ring {
    [Ring::Real, Ring::Complex, Ring::Quaternion][trial % 3]
}

pub fn run_suite(suite: Suite, trials: usize, seed: u64) -> Result<SuiteReport> {
    let mut passed = 0;
    let mut failed = 0;
    let mut first = None;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let ring = trial_ring(t);
        let outcome = match suite {
            Suite::Dq2dc => dq2dc_trial(&mut rng, t),
            _ => match ring {
                Ring::Real => graph_trial::<f64>(suite, &mut rng, t),
                Ring::Complex => graph_trial::<Complex64>(suite, &mut rng, t),
                Ring::Quaternion => graph_trial::<Quaternion>(suite, &mut rng, t),
            },
        }?;
        match outcome {
            None => passed += 1,
            Some(cx) => {
                failed += 1;
                first.get_or_insert(cx);
            }
        }
    }
    Ok(SuiteReport {
        suite,
        seed,
        trials,
        passed,
        failed,
        first_counterexample: first,
    })
}

fn graph_trial<T: Element>(suite: Suite, rng: &mut ChaCha8Rng, t: usize) -> Trial {
    match suite {
        Suite::Interlacing => interlacing_trial::<T>(rng, t),
        Suite::SwitchingInvariance => switching_trial::<T>(rng, t),
        Suite::RadiusBounds => radius_trial::<T>(rng, t),
        Suite::MdetProduct => mdet_trial::<T>(rng, t),
        Suite::Coefficient => coefficient_trial::<T>(rng, t),
        Suite::ClosedForms => closed_form_trial::<T>(rng, t),
        Suite::Dq2dc => unreachable!("handled without a graph"),
    }
}

fn violation<T: Element>(t: usize, g: &GainGraph<T>, detail: String) -> Trial {
    Ok(Some(Counterexample {
        trial: t,
        detail,
        graph: Some(serialize_typed(g)),
    }))
}

fn random_graph<T: Element>(rng: &mut ChaCha8Rng, max_n: usize) -> GainGraph<T> {
    let n = rng.random_range(1..=max_n);
    let p = rng.random_range(0.2..0.9);
    let graph = if rng.random_bool(0.5) {
        random_connected_graph(rng, n, p)
    } else {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, &edges).expect("simple by construction")
    };
    if rng.random_bool(0.25) {
        with_random_potential(rng, graph)
    } else {
        with_random_gains(rng, graph)
    }
}

fn interlacing_trial<T: Element>(rng: &mut ChaCha8Rng, t: usize) -> Trial {
    let g = random_graph::<T>(rng, 8);
    let s = random_subset(rng, g.n());
    let r = check_interlacing(&g, &s, INTERLACING_TOL, &EigenOptions::default())?;
    if r.holds {
        return Ok(None);
    }
    let (which, chain) = if !r.adjacency.holds {
        ("adjacency", &r.adjacency)
    } else {
        ("laplacian", &r.laplacian)
    };
    violation(
        t,
        &g,
        format!(
            "{which} chain fails for S = {:?}: {}",
            r.subset,
            chain.first_violation().unwrap_or_default()
        ),
    )
}

fn switching_trial<T: Element>(rng: &mut ChaCha8Rng, t: usize) -> Trial {
    let g = random_graph::<T>(rng, 9);
    let zeta = random_switching::<T, _>(rng, g.n());
    let s = g.switch(&zeta, 1e-9)?;
    let opts = EigenOptions::default();
    for kind in [MatrixKind::Adjacency, MatrixKind::Laplacian] {
        let (ds, dd) = spectrum(&g, kind, &opts)?
            .max_diffs(&spectrum(&s, kind, &opts)?)
            .expect("same order");
        if ds > 1e-9 || dd > 1e-9 {
            return violation(
                t,
                &g,
                format!("{kind} spectrum moved by ({ds:e}, {dd:e}) under switching"),
            );
        }
    }
    if g.is_balanced(BALANCE_TOL) != s.is_balanced(BALANCE_TOL) {
        return violation(t, &g, "balance changed under switching".into());
    }
    Ok(None)
}

/// Regular graph with gains from a random potential (optionally negated).
fn equality_instance<T: Element>(rng: &mut ChaCha8Rng, negate: bool) -> GainGraph<T> {
    let n = rng.random_range(3..=8);
    let graph = if rng.random_bool(0.5) {
        Graph::cycle(n).expect("n ≥ 3")
    } else {
        Graph::complete(n)
    };
    let g = with_random_potential(rng, graph);
    if negate {
        g.negate()
    } else {
        g
    }
}

fn radius_trial<T: Element>(rng: &mut ChaCha8Rng, t: usize) -> Trial {
    let opts = EigenOptions::default();
    let (g, expect_eq) = match t % 4 {
        1 => (equality_instance::<T>(rng, false), Some(MatrixKind::Adjacency)),
        3 => (equality_instance::<T>(rng, true), Some(MatrixKind::Laplacian)),
        _ => (random_graph::<T>(rng, 9), None),
    };
    for kind in [MatrixKind::Adjacency, MatrixKind::Laplacian] {
        let r = radius_report(&g, kind, &opts)?;
        if !r.bound_holds {
            return violation(
                t,
                &g,
                format!(
                    "{kind}: rho_gain = {} + {}eps, rho_graph = {}, bound = {}",
                    r.rho_gain.std, r.rho_gain.dual, r.rho_graph, r.delta_bound
                ),
            );
        }
        if !r.consistent {
            return violation(t, &g, format!("{kind}: equality {} disagrees with balance", r.equality));
        }
        if expect_eq == Some(kind) && !(r.equality && (r.rho_graph - r.delta_bound).abs() <= 1e-8) {
            return violation(t, &g, format!("{kind}: constructed equality case not flagged"));
        }
    }
    Ok(None)
}

fn mdet_trial<T: Element>(rng: &mut ChaCha8Rng, t: usize) -> Trial {
    let g = random_graph::<T>(rng, 6);
    let a = adjacency_matrix(&g);
    let m = moore_determinant(&a, 1e-12)?.real_part();
    let s = mdet_via_subgraphs(&g)?;
    let p = eigenvalue_product(&spectrum(&g, MatrixKind::Adjacency, &EigenOptions::default())?.values);
    for (name, x, y) in [
        ("Mdet vs subgraphs", m, s),
        ("Mdet vs product", m, p),
        ("subgraphs vs product", s, p),
    ] {
        let (ds, dd) = x.part_diffs(y);
        if ds > 1e-8 || dd > 1e-8 {
            return violation(t, &g, format!("{name}: {} vs {}", fmt_dual(x), fmt_dual(y)));
        }
    }
    Ok(None)
}

fn coefficient_trial<T: Element>(rng: &mut ChaCha8Rng, t: usize) -> Trial {
    let g = random_graph::<T>(rng, 7);
    let cs = coefficients(&g)?;
    let ev = coefficients_from_eigenvalues(&spectrum(&g, MatrixKind::Adjacency, &EigenOptions::default())?.values);
    for (i, (a, b)) in cs.iter().zip(&ev).enumerate() {
        let (ds, dd) = a.part_diffs(*b);
        if ds > 1e-8 || dd > 1e-8 {
            return violation(
                t,
                &g,
                format!("c_{} = {} but (-1)^i e_i = {}", i + 1, fmt_dual(*a), fmt_dual(*b)),
            );
        }
    }
    Ok(None)
}

fn closed_form_trial<T: Element>(rng: &mut ChaCha8Rng, t: usize) -> Trial {
    let opts = EigenOptions::default();
    let n = rng.random_range(3..=12);
    let tol = 1e-9;
    let tol_q = if T::RING == Ring::Quaternion { 1e-8 } else { tol };
    let cycle: GainGraph<T> = with_random_gains(rng, Graph::cycle(n)?);
    let mut walk: Vec<usize> = (0..n).collect();
    walk.push(0);
    let q = cycle.gain_of_walk(&walk)?;
    let path: GainGraph<T> = with_random_gains(rng, Graph::path(n));
    for kind in [MatrixKind::Adjacency, MatrixKind::Laplacian] {
        let closed = cycle_spectrum_closed_form(n, q, kind, 1e-9)?;
        let (ds, dd) = closed.max_diffs(&spectrum(&cycle, kind, &opts)?).expect("same order");
        if ds > tol_q || dd > tol_q {
            return violation(t, &cycle, format!("cycle {kind} closed form off by ({ds:e}, {dd:e})"));
        }
        let closed = path_spectrum_closed_form(n, kind)?;
        let (ds, dd) = closed.max_diffs(&spectrum(&path, kind, &opts)?).expect("same order");
        if ds > tol || dd > tol {
            return violation(t, &path, format!("path {kind} closed form off by ({ds:e}, {dd:e})"));
        }
    }
    Ok(None)
}

/// Random dual quaternion; every fifth trial hits one of the degenerate
/// shapes (real standard part, complex form, standard vector along −i).
pub fn random_dual_quaternion<R: Rng + ?Sized>(rng: &mut R, t: usize) -> Dual<Quaternion> {
    let mut g = || -> f64 { rng.sample(StandardNormal) };
    let mut q = Dual::new(Quaternion::new(g(), g(), g(), g()), Quaternion::new(g(), g(), g(), g()));
    match t % 10 {
        0 => {
            q.std = Quaternion::from_real(q.std.w);
        }
        2 => {
            q.std.y = 0.0;
            q.std.z = 0.0;
            q.dual.y = 0.0;
            q.dual.z = 0.0;
        }
        4 => {
            q.std = Quaternion::new(q.std.w, -q.std.x.abs(), 0.0, 0.0);
        }
        6 => {
            q.std = Quaternion::from_real(q.std.w);
            q.dual = Quaternion::from_real(q.dual.w);
        }
        8 => {
            q = Quaternion::random_unit(rng);
        }
        _ => {}
    }
    q
}

/// Violations of the `dq_to_dc` contract, as a message.
pub fn dq2dc_violation(q: Dual<Quaternion>, tol: f64) -> Option<String> {
    let (a, u) = dq_to_dc(q, 1e-12);
    if !u.is_unit(tol) {
        return Some(format!("u = {} is not unit", crate::scalar::DualScalar::from(u)));
    }
    let back = u.conj() * q * u;
    let aq = Dual::new(Quaternion::from_complex(a.std), Quaternion::from_complex(a.dual));
    let err = back.max_abs_diff(aq);
    if err > tol {
        return Some(format!("|a - u*qu| = {err:e}"));
    }
    if a.real_part().max_abs_diff(q.real_part()) > tol {
        return Some("real part not preserved".into());
    }
    let im_q = Dual::new(
        q.std - Quaternion::from_real(q.std.w),
        q.dual - Quaternion::from_real(q.dual.w),
    )
    .magnitude();
    let im_a = Dual::new(Complex64::new(0.0, a.std.im), Complex64::new(0.0, a.dual.im)).magnitude();
    if im_q.max_abs_diff(im_a) > tol {
        return Some(format!("|Im| changed: {} vs {}", fmt_dual(im_q), fmt_dual(im_a)));
    }
    None
}

fn dq2dc_trial(rng: &mut ChaCha8Rng, t: usize) -> Trial {
    let q = random_dual_quaternion(rng, t);
    Ok(dq2dc_violation(q, 1e-12).map(|detail| Counterexample {
        trial: t,
        detail: format!("q = {}: {detail}", crate::scalar::DualScalar::from(q)),
        graph: None,
    }))
}
