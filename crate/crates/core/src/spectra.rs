//! Adjacency and Laplacian spectra of dual unit gain graphs.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GainGraph, Graph, BALANCE_TOL};
use crate::linalg::{hermitian_eigendecomposition, DualMatrix, EigenOptions, EigenPair};
use crate::scalar::{Dual, DualNumber, DualScalar, Element};
use crate::transcendental::{dq_to_dc, dual_cos, unit_to_angle, DualAngle};

/// Slack for `a ≥ b` in interlacing chains.
pub const INTERLACING_TOL: f64 = 1e-9;
/// Slack for the radius inequalities.
pub const RADIUS_BOUND_TOL: f64 = 1e-10;
/// Tolerance for declaring a radius equality.
pub const RADIUS_EQUALITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    Adjacency,
    Laplacian,
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixKind::Adjacency => "adjacency",
            MatrixKind::Laplacian => "laplacian",
        })
    }
}

impl FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adjacency" => Ok(MatrixKind::Adjacency),
            "laplacian" => Ok(MatrixKind::Laplacian),
            other => Err(Error::BadParameter(format!("unknown matrix kind `{other}`"))),
        }
    }
}

/// One eigenvector entry as flat base-ring components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorEntry {
    pub std: Vec<f64>,
    pub dual: Vec<f64>,
}

/// Eigenvalues sorted descending under the dual-number order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub kind: MatrixKind,
    pub values: Vec<DualNumber>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vectors: Option<Vec<Vec<VectorEntry>>>,
}

impl Spectrum {
    pub fn from_values(kind: MatrixKind, mut values: Vec<DualNumber>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum {
            kind,
            values,
            vectors: None,
        }
    }

    /// Largest `(std, dual)` deviation from another spectrum of equal length.
    pub fn max_diffs(&self, other: &Spectrum) -> Option<(f64, f64)> {
        (self.values.len() == other.values.len()).then(|| {
            self.values
                .iter()
                .zip(&other.values)
                .fold((0.0, 0.0), |(s, d), (a, b)| {
                    let (ps, pd) = a.part_diffs(*b);
                    (f64::max(s, ps), f64::max(d, pd))
                })
        })
    }
}

/// `a_ij = φ(e_ij)` on edges, 0 elsewhere.
pub fn adjacency_matrix<T: Element>(g: &GainGraph<T>) -> DualMatrix<T> {
    let n = g.n();
    let mut a = DualMatrix::zeros(n, n);
    for (&(u, v), &gain) in g.graph().edges().iter().zip(g.gains()) {
        a.set(u, v, gain);
        a.set(v, u, gain.conj());
    }
    a
}

/// `L(Φ) = D(Φ) − A(Φ)`.
pub fn laplacian_matrix<T: Element>(g: &GainGraph<T>) -> DualMatrix<T> {
    let mut l = adjacency_matrix(g).neg();
    for v in 0..g.n() {
        l.set(v, v, Dual::from_std(T::from_real(g.graph().degree(v) as f64)));
    }
    l
}

pub fn gain_matrix<T: Element>(g: &GainGraph<T>, kind: MatrixKind) -> DualMatrix<T> {
    match kind {
        MatrixKind::Adjacency => adjacency_matrix(g),
        MatrixKind::Laplacian => laplacian_matrix(g),
    }
}

/// 0/1 adjacency matrix `A(G)`.
pub fn underlying_adjacency(graph: &Graph) -> DualMatrix<f64> {
    adjacency_matrix(&GainGraph::<f64>::unit(graph.clone()))
}

/// Signless Laplacian `Q(G) = D(G) + A(G)`.
pub fn signless_laplacian(graph: &Graph) -> DualMatrix<f64> {
    laplacian_matrix(&GainGraph::<f64>::unit(graph.clone()).negate())
}

pub fn eigenpairs<T: Element>(g: &GainGraph<T>, kind: MatrixKind, opts: &EigenOptions) -> Result<Vec<EigenPair<T>>> {
    hermitian_eigendecomposition(&gain_matrix(g, kind), opts)
}

pub fn spectrum<T: Element>(g: &GainGraph<T>, kind: MatrixKind, opts: &EigenOptions) -> Result<Spectrum> {
    let values = eigenpairs(g, kind, opts)?.into_iter().map(|p| p.value).collect();
    Ok(Spectrum {
        kind,
        values,
        vectors: None,
    })
}

pub fn spectrum_with_vectors<T: Element>(g: &GainGraph<T>, kind: MatrixKind, opts: &EigenOptions) -> Result<Spectrum> {
    let pairs = eigenpairs(g, kind, opts)?;
    let vectors = pairs
        .iter()
        .map(|p| {
            p.vector
                .entries
                .iter()
                .map(|e| VectorEntry {
                    std: e.std.components(),
                    dual: e.dual.components(),
                })
                .collect()
        })
        .collect();
    Ok(Spectrum {
        kind,
        values: pairs.into_iter().map(|p| p.value).collect(),
        vectors: Some(vectors),
    })
}

/// Closed-form spectra of the path `P_n`; gains are irrelevant since paths
/// are balanced.
pub fn path_spectrum_closed_form(n: usize, kind: MatrixKind) -> Result<Spectrum> {
    if n == 0 {
        return Err(Error::BadParameter("path needs at least one vertex".into()));
    }
    let nf = n as f64;
    let values = match kind {
        MatrixKind::Adjacency => (1..=n)
            .map(|j| Dual::new(2.0 * (PI * j as f64 / (nf + 1.0)).cos(), 0.0))
            .collect(),
        MatrixKind::Laplacian => (0..n)
            .map(|j| Dual::new(2.0 - 2.0 * (PI * j as f64 / nf).cos(), 0.0))
            .collect(),
    };
    Ok(Spectrum::from_values(kind, values))
}

/// Dual angle of a unit cycle gain; quaternion gains are first reduced to a
/// similar dual complex number.
pub fn cycle_angle<T: Element>(q: Dual<T>, tol: f64) -> Result<DualAngle> {
    let complex = match T::wrap(q) {
        DualScalar::Real(d) => Dual::new(Complex64::new(d.std, 0.0), Complex64::new(d.dual, 0.0)),
        DualScalar::Complex(d) => d,
        DualScalar::Quaternion(d) => {
            if !d.is_unit(tol) {
                return Err(Error::NotUnit);
            }
            dq_to_dc(d, tol).0
        }
    };
    unit_to_angle(complex, tol)
}

/// `2cos((θ + 2πj)/n)` for the adjacency matrix and `2 − 2cos((θ + 2πj)/n)`
/// for the Laplacian, `j = 0..n`, where `q` is the gain of the cycle walk.
pub fn cycle_spectrum_closed_form<T: Element>(n: usize, q: Dual<T>, kind: MatrixKind, tol: f64) -> Result<Spectrum> {
    if n < 3 {
        return Err(Error::BadParameter(format!(
            "a cycle needs at least 3 vertices, got {n}"
        )));
    }
    let theta = cycle_angle(q, tol)?;
    let nf = n as f64;
    let values = (0..n)
        .map(|j| {
            let t = DualAngle {
                std: (theta.std + 2.0 * PI * j as f64) / nf,
                dual: theta.dual / nf,
            };
            let a = dual_cos(t).scale(2.0);
            match kind {
                MatrixKind::Adjacency => a,
                MatrixKind::Laplacian => Dual::new(2.0, 0.0) - a,
            }
        })
        .collect();
    Ok(Spectrum::from_values(kind, values))
}

/// `max |λ_i|` under the dual-number order.
pub fn spectral_radius(values: &[DualNumber]) -> Result<DualNumber> {
    values
        .iter()
        .map(|v| v.magnitude())
        .reduce(DualNumber::max_of)
        .ok_or(Error::EmptySpectrum)
}

/// Spectral radius of a real symmetric matrix (0 for the empty matrix).
pub fn real_spectral_radius(m: &DualMatrix<f64>) -> Result<f64> {
    let (vals, _) = f64::hermitian_eigh(&m.std_part(), m.rows())?;
    Ok(vals.iter().fold(0.0, |r, v| r.max(v.abs())))
}

/// Verdict on one chain `λ_i ≥ μ_i ≥ λ_{n−k+i}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub lambda: Vec<DualNumber>,
    pub mu: Vec<DualNumber>,
    /// `λ_i ≥ μ_i`.
    pub upper: Vec<bool>,
    /// `μ_i ≥ λ_{n−k+i}`.
    pub lower: Vec<bool>,
    pub holds: bool,
}

impl ChainReport {
    pub fn new(lambda: Vec<DualNumber>, mu: Vec<DualNumber>, tol: f64) -> Self {
        let (n, k) = (lambda.len(), mu.len());
        let upper: Vec<bool> = (0..k).map(|i| lambda[i].ge_tol(&mu[i], tol)).collect();
        let lower: Vec<bool> = (0..k).map(|i| mu[i].ge_tol(&lambda[n - k + i], tol)).collect();
        let holds = upper.iter().chain(&lower).all(|&b| b);
        ChainReport {
            lambda,
            mu,
            upper,
            lower,
            holds,
        }
    }

    /// Human-readable description of the first failing inequality.
    pub fn first_violation(&self) -> Option<String> {
        let (n, k) = (self.lambda.len(), self.mu.len());
        for i in 0..k {
            if !self.upper[i] {
                return Some(format!(
                    "lambda_{} = {} < mu_{} = {}",
                    i + 1,
                    fmt_dual(self.lambda[i]),
                    i + 1,
                    fmt_dual(self.mu[i])
                ));
            }
            if !self.lower[i] {
                return Some(format!(
                    "mu_{} = {} < lambda_{} = {}",
                    i + 1,
                    fmt_dual(self.mu[i]),
                    n - k + i + 1,
                    fmt_dual(self.lambda[n - k + i])
                ));
            }
        }
        None
    }
}

pub(crate) fn fmt_dual(d: DualNumber) -> String {
    format!("{} {:+}eps", d.std + 0.0, d.dual + 0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterlacingReport {
    pub subset: Vec<usize>,
    /// `A(Φ)` against `A(Φ[S])`.
    pub adjacency: ChainReport,
    /// `L(Φ)` against `L(Φ[S])`, as stated for the Laplacian.
    pub laplacian: ChainReport,
    /// `L(Φ)` against its principal submatrix `L(Φ)[S, S]`; diagnostic only.
    pub laplacian_principal: ChainReport,
    /// Both stated chains hold.
    pub holds: bool,
}

/// Checks both interlacing chains for the induced subgraph on `s`.
pub fn check_interlacing<T: Element>(
    g: &GainGraph<T>,
    s: &[usize],
    tol: f64,
    opts: &EigenOptions,
) -> Result<InterlacingReport> {
    let mut subset = s.to_vec();
    subset.sort_unstable();
    subset.dedup();
    if subset.is_empty() {
        return Err(Error::BadParameter("interlacing needs a nonempty vertex subset".into()));
    }
    let sub = g.induced_subgraph(&subset)?;
    let adjacency = ChainReport::new(
        spectrum(g, MatrixKind::Adjacency, opts)?.values,
        spectrum(&sub, MatrixKind::Adjacency, opts)?.values,
        tol,
    );
    let lambda_l = spectrum(g, MatrixKind::Laplacian, opts)?.values;
    let laplacian = ChainReport::new(
        lambda_l.clone(),
        spectrum(&sub, MatrixKind::Laplacian, opts)?.values,
        tol,
    );
    let principal = laplacian_matrix(g).principal_submatrix(&subset);
    let mu_p = hermitian_eigendecomposition(&principal, opts)?
        .into_iter()
        .map(|p| p.value)
        .collect();
    let laplacian_principal = ChainReport::new(lambda_l, mu_p, tol);
    let holds = adjacency.holds && laplacian.holds;
    Ok(InterlacingReport {
        subset,
        adjacency,
        laplacian,
        laplacian_principal,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusReport {
    pub kind: MatrixKind,
    /// `ρ_A(G)` or `ρ_Q(G)`.
    pub rho_graph: f64,
    /// `ρ_A(Φ)` or `ρ_L(Φ)`.
    pub rho_gain: DualNumber,
    /// `Δ` or `2Δ`.
    pub delta_bound: f64,
    /// `St(ρ_gain) ≤ ρ_graph ≤ delta_bound`.
    pub bound_holds: bool,
    /// `ρ_gain = ρ_graph` with vanishing dual part.
    pub equality: bool,
    pub connected: bool,
    pub balanced: bool,
    pub antibalanced: bool,
    /// Equality as predicted from balance; only defined for connected graphs.
    pub predicted_equality: Option<bool>,
    /// The computed equalities agree with the balance predictions.
    pub consistent: bool,
}

fn equals_radius(x: DualNumber, rho: f64) -> bool {
    (x.std - rho).abs() <= RADIUS_EQUALITY_TOL && x.dual.abs() <= RADIUS_EQUALITY_TOL
}

/// Spectral radius of `Φ` against its underlying-graph bound.
pub fn radius_report<T: Element>(g: &GainGraph<T>, kind: MatrixKind, opts: &EigenOptions) -> Result<RadiusReport> {
    let spec = spectrum(g, kind, opts)?;
    let rho_gain = spectral_radius(&spec.values)?;
    let graph = g.graph();
    let delta = graph.max_degree() as f64;
    let (rho_graph, delta_bound) = match kind {
        MatrixKind::Adjacency => (real_spectral_radius(&underlying_adjacency(graph))?, delta),
        MatrixKind::Laplacian => (real_spectral_radius(&signless_laplacian(graph))?, 2.0 * delta),
    };
    let bound_holds = rho_gain.std <= rho_graph + RADIUS_BOUND_TOL && rho_graph <= delta_bound + RADIUS_BOUND_TOL;
    let equality = equals_radius(rho_gain, rho_graph);
    let connected = graph.is_connected();
    let balanced = g.is_balanced(BALANCE_TOL);
    let antibalanced = g.is_antibalanced(BALANCE_TOL);

    let (predicted_equality, consistent) = if !connected {
        (None, true)
    } else {
        match kind {
            MatrixKind::Adjacency => {
                let top = equals_radius(spec.values[0], rho_graph);
                let bottom = equals_radius(-spec.values[spec.values.len() - 1], rho_graph);
                let predicted = balanced || antibalanced;
                (
                    Some(predicted),
                    top == balanced && bottom == antibalanced && equality == predicted,
                )
            }
            MatrixKind::Laplacian => (Some(antibalanced), equality == antibalanced),
        }
    };
    Ok(RadiusReport {
        kind,
        rho_graph,
        rho_gain,
        delta_bound,
        bound_holds,
        equality,
        connected,
        balanced,
        antibalanced,
        predicted_equality,
        consistent,
    })
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    use super::*;
    use crate::scalar::Quaternion;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &[DualNumber], b: &[DualNumber], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.max_abs_diff(*y) <= tol)
    }

    fn dn(s: f64, d: f64) -> DualNumber {
        Dual::new(s, d)
    }

    fn phi(g02: Complex64, g12_dual: f64) -> GainGraph<Complex64> {
        GainGraph::from_edges(
            3,
            &[
                (0, 1, Dual::new(c(1.0, 0.0), c(0.0, -1.0))),
                (0, 2, Dual::from_std(g02)),
                (1, 2, Dual::new(c(0.0, -1.0), c(g12_dual, 0.0))),
            ],
            1e-12,
        )
        .unwrap()
    }

    fn opts() -> EigenOptions {
        EigenOptions::default()
    }

    #[test]
    fn matrices() {
        let c3 = GainGraph::<f64>::unit(Graph::cycle(3).unwrap());
        let l = laplacian_matrix(&c3);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 2.0 } else { -1.0 };
                assert_eq!(l.get(i, j), dn(want, 0.0));
            }
        }
        assert_eq!(
            adjacency_matrix(&GainGraph::<f64>::unit(Graph::empty(3))),
            DualMatrix::zeros(3, 3)
        );
        let q = signless_laplacian(&Graph::path(3));
        assert_eq!(q.get(0, 1), dn(1.0, 0.0));
        assert_eq!(q.get(1, 1), dn(2.0, 0.0));
    }

    #[test]
    fn example_spectra() {
        let s1 = spectrum(&phi(c(0.0, -1.0), 1.0), MatrixKind::Adjacency, &opts()).unwrap();
        assert!(close(&s1.values, &[dn(2.0, 0.0), dn(-1.0, 0.0), dn(-1.0, 0.0)], 1e-12));
        let l1 = spectrum(&phi(c(0.0, -1.0), 1.0), MatrixKind::Laplacian, &opts()).unwrap();
        assert!(close(&l1.values, &[dn(3.0, 0.0), dn(3.0, 0.0), dn(0.0, 0.0)], 1e-12));
        let g02 = c(FRAC_1_SQRT_2, -FRAC_1_SQRT_2);
        let s3 = spectrum(&phi(g02, 2.0), MatrixKind::Adjacency, &opts()).unwrap();
        let want = [dn(1.9319, 0.1725), dn(-0.5176, -0.6440), dn(-1.4142, 0.4714)];
        assert!(close(&s3.values, &want, 5e-4));
    }

    #[test]
    fn cycle_closed_forms() {
        let s = cycle_spectrum_closed_form(3, Dual::<f64>::one(), MatrixKind::Adjacency, 1e-12).unwrap();
        assert!(close(&s.values, &[dn(2.0, 0.0), dn(-1.0, 0.0), dn(-1.0, 0.0)], 1e-15));
        let g = phi(c(FRAC_1_SQRT_2, -FRAC_1_SQRT_2), 2.0);
        let q = g.gain_of_walk(&[0, 1, 2, 0]).unwrap();
        let closed = cycle_spectrum_closed_form(3, q, MatrixKind::Adjacency, 1e-12).unwrap();
        let direct = spectrum(&g, MatrixKind::Adjacency, &opts()).unwrap();
        assert!(close(&closed.values, &direct.values, 1e-12));
        let lap = cycle_spectrum_closed_form(3, q, MatrixKind::Laplacian, 1e-12).unwrap();
        let mut shifted: Vec<_> = closed.values.iter().map(|v| dn(2.0, 0.0) - *v).collect();
        shifted.reverse();
        assert!(close(&lap.values, &shifted, 1e-15));
        let quat = Dual::new(Quaternion::new(0.0, 0.6, 0.8, 0.0), Quaternion::new(0.0, 0.0, 0.0, 0.3));
        assert!(cycle_spectrum_closed_form(4, quat, MatrixKind::Adjacency, 1e-12).is_ok());
        assert!(cycle_spectrum_closed_form(2, quat, MatrixKind::Adjacency, 1e-12).is_err());
    }

    #[test]
    fn path_closed_forms() {
        let p3 = path_spectrum_closed_form(3, MatrixKind::Adjacency).unwrap();
        assert!(close(
            &p3.values,
            &[dn(SQRT_2, 0.0), dn(0.0, 0.0), dn(-SQRT_2, 0.0)],
            1e-15
        ));
        let p2 = path_spectrum_closed_form(2, MatrixKind::Laplacian).unwrap();
        assert!(close(&p2.values, &[dn(2.0, 0.0), dn(0.0, 0.0)], 1e-15));
    }

    #[test]
    fn radii() {
        let s1 = spectrum(&phi(c(0.0, -1.0), 1.0), MatrixKind::Adjacency, &opts()).unwrap();
        assert!(spectral_radius(&s1.values).unwrap().max_abs_diff(dn(2.0, 0.0)) < 1e-12);
        let s3 = spectrum(
            &phi(c(FRAC_1_SQRT_2, -FRAC_1_SQRT_2), 2.0),
            MatrixKind::Adjacency,
            &opts(),
        )
        .unwrap();
        let r = spectral_radius(&s3.values).unwrap();
        assert!(r.max_abs_diff(s3.values[0]) < 1e-15);
        assert_eq!(spectral_radius(&[]), Err(Error::EmptySpectrum));
    }

    #[test]
    fn radius_reports() {
        let r2 = radius_report(
            &phi(c(FRAC_1_SQRT_2, -FRAC_1_SQRT_2), 1.0),
            MatrixKind::Adjacency,
            &opts(),
        )
        .unwrap();
        assert!(r2.bound_holds && !r2.equality && r2.consistent);
        assert!((r2.rho_gain.std - 1.9319).abs() < 5e-5 && (r2.rho_graph - 2.0).abs() < 1e-12);
        let r1 = radius_report(&phi(c(0.0, -1.0), 1.0), MatrixKind::Adjacency, &opts()).unwrap();
        assert!(r1.equality && r1.balanced && r1.consistent);
        let c4 = GainGraph::<f64>::unit(Graph::cycle(4).unwrap()).negate();
        let rl = radius_report(&c4, MatrixKind::Laplacian, &opts()).unwrap();
        assert!(rl.equality && rl.consistent && (rl.rho_graph - 4.0).abs() < 1e-12 && rl.delta_bound == 4.0);
    }

    #[test]
    fn interlacing_examples() {
        let p1 = phi(c(0.0, -1.0), 1.0);
        let r = check_interlacing(&p1, &[0, 1], INTERLACING_TOL, &opts()).unwrap();
        assert!(r.adjacency.holds);
        assert!(close(&r.adjacency.mu, &[dn(1.0, 0.0), dn(-1.0, 0.0)], 1e-12));
        let all = check_interlacing(&p1, &[0, 1, 2], INTERLACING_TOL, &opts()).unwrap();
        assert!(all.holds && all.laplacian_principal.holds);
        assert!(check_interlacing(&p1, &[], INTERLACING_TOL, &opts()).is_err());
    }

    #[test]
    fn laplacian_chain_fails_on_star_leaves() {
        // L(K_{1,3}) has spectrum {4, 1, 1, 0}; the three leaves induce an
        // edgeless graph with L = 0, so μ_1 = 0 < λ_2 = 1.
        let star = GainGraph::<f64>::unit(Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap());
        let r = check_interlacing(&star, &[1, 2, 3], INTERLACING_TOL, &opts()).unwrap();
        assert!(r.adjacency.holds);
        assert!(!r.laplacian.holds);
        assert!(r.laplacian_principal.holds);
        assert!(r.laplacian.first_violation().unwrap().starts_with("mu_1"));
    }
}
