//! Eigensolver, gain-graph and spectral invariants on seeded random inputs.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use dualgain::char_poly::{
    coefficients, coefficients_from_eigenvalues, eigenvalue_product, enumerate_cycles, mdet_via_subgraphs,
    real_gain_of_cycle,
};
use dualgain::graph::{GainGraph, Graph, BALANCE_TOL};
use dualgain::io::{random_connected_graph, random_switching, rng_from_seed, with_random_gains, with_random_potential};
use dualgain::linalg::{hermitian_eigendecomposition, moore_determinant, DualMatrix, DualVector, EigenOptions};
use dualgain::spectra::{adjacency_matrix, eigenpairs, spectral_radius, spectrum, MatrixKind};
use dualgain::{Dual, DualNumber, Element, Quaternion};

fn opts() -> EigenOptions {
    EigenOptions::default()
}

fn random_part<T: Element>(r: &mut ChaCha8Rng) -> T {
    let c: Vec<f64> = (0..T::DIM).map(|_| r.random_range(-1.0..1.0)).collect();
    T::from_components(&c).expect("DIM components")
}

fn random_entry<T: Element>(r: &mut ChaCha8Rng) -> Dual<T> {
    Dual::new(random_part(r), random_part(r))
}

/// Random Hermitian dual matrix; every third draw repeats a standard
/// eigenvalue by adding a unit-gain complete-graph block.
fn random_hermitian<T: Element>(r: &mut ChaCha8Rng, n: usize) -> DualMatrix<T> {
    let mut a = DualMatrix::zeros(n, n);
    for i in 0..n {
        a.set(
            i,
            i,
            Dual::new(
                T::from_real(r.random_range(-1.0..1.0)),
                T::from_real(r.random_range(-1.0..1.0)),
            ),
        );
        for j in (i + 1)..n {
            let x = random_entry::<T>(r);
            a.set(i, j, x);
            a.set(j, i, x.conj());
        }
    }
    if r.random_range(0..3) == 0 {
        let g = GainGraph::<T>::unit(Graph::complete(n));
        return adjacency_matrix(&g);
    }
    a
}

fn random_graph<T: Element>(r: &mut ChaCha8Rng, max_n: usize) -> GainGraph<T> {
    let n = r.random_range(1..=max_n);
    let p = r.random_range(0.2..0.9);
    let graph = random_connected_graph(r, n, p);
    if r.random_bool(0.3) {
        with_random_potential(r, graph)
    } else {
        with_random_gains(r, graph)
    }
}

fn eigen_checks<T: Element>(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng_from_seed(seed);
    let n = r.random_range(1..=12);
    let a = random_hermitian::<T>(&mut r, n);
    let pairs = hermitian_eigendecomposition(&a, &opts()).unwrap();
    prop_assert_eq!(pairs.len(), n);
    for w in pairs.windows(2) {
        prop_assert!(w[0].value >= w[1].value);
    }
    for p in &pairs {
        let (s, d) = p.residual(&a).unwrap();
        prop_assert!(s <= 1e-9 && d <= 1e-8, "residual ({s:e}, {d:e})");
    }
    for (i, x) in pairs.iter().enumerate() {
        for (j, y) in pairs.iter().enumerate() {
            let g = x.vector.inner(&y.vector).std;
            let want = if i == j { T::one() } else { T::zero() };
            prop_assert!((g - want).max_abs_component() <= 1e-9);
        }
    }
    Ok(())
}

/// `P x` is an eigenvector of `P A P⁻¹` for the same dual eigenvalue.
fn similarity_transport<T: Element>(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng_from_seed(seed);
    let n = r.random_range(1..=8);
    let a = random_hermitian::<T>(&mut r, n);
    let p = DualMatrix::identity(n)
        .add(&DualMatrix::from_fn(n, n, |_, _| random_entry::<T>(&mut r)).scale(0.2))
        .unwrap();
    let b = p.matmul(&a).unwrap().matmul(&p.inverse().unwrap()).unwrap();
    for pair in hermitian_eigendecomposition(&a, &opts()).unwrap() {
        let px = p.mul_vec(&pair.vector).unwrap();
        let res = b.mul_vec(&px).unwrap().sub(&px.scale_dual(pair.value));
        let (s, d) = res.part_max();
        prop_assert!(s <= 1e-8 && d <= 1e-8, "residual ({s:e}, {d:e})");
    }
    Ok(())
}

fn rayleigh<T: Element>(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng_from_seed(seed);
    let g = random_graph::<T>(&mut r, 9);
    for pair in eigenpairs(&g, MatrixKind::Adjacency, &opts()).unwrap() {
        let x = &pair.vector.entries;
        let mut sum: DualNumber = Dual::new(0.0, 0.0);
        for &(i, j) in g.graph().edges() {
            let phi = g.gain(i, j).unwrap();
            sum += (x[i].conj() * phi * x[j]).real_part().scale(2.0);
        }
        prop_assert!(sum.max_abs_diff(pair.value) <= 1e-9);
    }
    Ok(())
}

fn switching<T: Element>(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng_from_seed(seed);
    let g = random_graph::<T>(&mut r, 9);
    let zeta = random_switching::<T, _>(&mut r, g.n());
    let s = g.switch(&zeta, 1e-9).unwrap();
    for kind in [MatrixKind::Adjacency, MatrixKind::Laplacian] {
        let (ds, dd) = spectrum(&g, kind, &opts())
            .unwrap()
            .max_diffs(&spectrum(&s, kind, &opts()).unwrap())
            .unwrap();
        prop_assert!(ds <= 1e-9 && dd <= 1e-9);
    }
    prop_assert_eq!(g.is_balanced(BALANCE_TOL), s.is_balanced(BALANCE_TOL));
    Ok(())
}

fn balance_laws<T: Element>(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng_from_seed(seed);
    let g = random_graph::<T>(&mut r, 10);
    let cert = g.balance_certificate(BALANCE_TOL);
    if let Some(theta) = &cert.theta {
        for (&(u, v), &phi) in g.graph().edges().iter().zip(g.gains()) {
            prop_assert!(phi.max_abs_diff(theta[u].inverse().unwrap() * theta[v]) <= BALANCE_TOL);
        }
    }
    if let Some(w) = &cert.witness_cycle {
        prop_assert!(!cert.balanced);
        prop_assert_eq!(w.first(), w.last());
        prop_assert!(g.gain_of_walk(w).unwrap().max_abs_diff(Dual::one()) > BALANCE_TOL);
    }
    prop_assert_eq!(g.is_antibalanced(BALANCE_TOL), g.negate().is_balanced(BALANCE_TOL));

    let walk = |r: &mut ChaCha8Rng, start: usize, len: usize| {
        let mut w = vec![start];
        for _ in 0..len {
            let nb = g.graph().neighbors(*w.last().unwrap());
            if nb.is_empty() {
                break;
            }
            w.push(nb[r.random_range(0..nb.len())]);
        }
        w
    };
    let start = r.random_range(0..g.n());
    let w1 = walk(&mut r, start, 4);
    let w2 = walk(&mut r, *w1.last().unwrap(), 4);
    let joined: Vec<usize> = w1.iter().chain(&w2[1..]).copied().collect();
    let lhs = g.gain_of_walk(&joined).unwrap();
    let rhs = g.gain_of_walk(&w1).unwrap() * g.gain_of_walk(&w2).unwrap();
    prop_assert!(lhs.max_abs_diff(rhs) <= 1e-12);
    Ok(())
}

fn balanced_spectra<T: Element>(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng_from_seed(seed);
    let n = r.random_range(1..=10);
    let p = r.random_range(0.2..0.9);
    let graph = random_connected_graph(&mut r, n, p);
    let g: GainGraph<T> = with_random_potential(&mut r, graph.clone());
    let plain = GainGraph::<f64>::unit(graph);
    for kind in [MatrixKind::Adjacency, MatrixKind::Laplacian] {
        let s = spectrum(&g, kind, &opts()).unwrap();
        let (ds, dd) = s.max_diffs(&spectrum(&plain, kind, &opts()).unwrap()).unwrap();
        prop_assert!(ds <= 1e-9 && dd <= 1e-9);
        prop_assert!(s.values.iter().all(|v| v.dual.abs() <= 1e-9));
    }
    let lap = spectrum(&g, MatrixKind::Laplacian, &opts()).unwrap().values;
    let zeros = lap.iter().filter(|v| v.std.abs() <= 1e-9).count();
    prop_assert_eq!(zeros, 1);
    prop_assert!(lap.iter().all(|v| v.std >= -1e-10));
    Ok(())
}

fn radius_and_negation<T: Element>(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng_from_seed(seed);
    let g = random_graph::<T>(&mut r, 10);
    let a = spectrum(&g, MatrixKind::Adjacency, &opts()).unwrap().values;
    let plain = spectrum(
        &GainGraph::<f64>::unit(g.graph().clone()),
        MatrixKind::Adjacency,
        &opts(),
    )
    .unwrap();
    let rho_g = spectral_radius(&plain.values).unwrap().std;
    let rho = spectral_radius(&a).unwrap();
    prop_assert!(rho.std <= rho_g + 1e-12);
    if !g.is_balanced(BALANCE_TOL) && !g.is_antibalanced(BALANCE_TOL) && g.graph().is_connected() {
        prop_assert!(rho.std < rho_g - 1e-10);
    }
    let neg = spectrum(&g.negate(), MatrixKind::Adjacency, &opts()).unwrap().values;
    for (x, y) in neg.iter().zip(a.iter().rev()) {
        prop_assert!(x.max_abs_diff(-*y) <= 1e-9);
    }
    prop_assert!(spectrum(&g, MatrixKind::Laplacian, &opts())
        .unwrap()
        .values
        .iter()
        .all(|v| v.std >= -1e-10));
    Ok(())
}

fn char_poly_consistency<T: Element>(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng_from_seed(seed);
    let n = r.random_range(1..=6);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if r.random_bool(0.6) {
                edges.push((u, v));
            }
        }
    }
    let g: GainGraph<T> = with_random_gains(&mut r, Graph::new(n, &edges).unwrap());
    let values = spectrum(&g, MatrixKind::Adjacency, &opts()).unwrap().values;
    for (a, b) in coefficients(&g)
        .unwrap()
        .iter()
        .zip(coefficients_from_eigenvalues(&values))
    {
        prop_assert!(a.max_abs_diff(b) <= 1e-8);
    }
    let m = moore_determinant(&adjacency_matrix(&g), 1e-12).unwrap().real_part();
    let s = mdet_via_subgraphs(&g).unwrap();
    let p = eigenvalue_product(&values);
    prop_assert!(m.max_abs_diff(s) <= 1e-8 && m.max_abs_diff(p) <= 1e-8 && s.max_abs_diff(p) <= 1e-8);

    for cycle in enumerate_cycles(g.graph()).unwrap() {
        let base = real_gain_of_cycle(&g, &cycle).unwrap().value;
        let k = r.random_range(0..cycle.len());
        let mut turned: Vec<usize> = cycle[k..].iter().chain(&cycle[..k]).copied().collect();
        if r.random_bool(0.5) {
            turned.reverse();
        }
        prop_assert!(real_gain_of_cycle(&g, &turned).unwrap().value.max_abs_diff(base) <= 1e-14);
    }
    Ok(())
}

fn mdet_matches_product<T: Element>(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng_from_seed(seed);
    let n = r.random_range(1..=6);
    let a = random_hermitian::<T>(&mut r, n);
    let m = moore_determinant(&a, 1e-12).unwrap();
    let values: Vec<DualNumber> = hermitian_eigendecomposition(&a, &opts())
        .unwrap()
        .into_iter()
        .map(|p| p.value)
        .collect();
    let p = eigenvalue_product(&values);
    prop_assert!(m.max_abs_diff(Dual::from_dual_number(p)) <= 1e-8);
    Ok(())
}

macro_rules! per_ring {
    ($name:ident, $check:ident) => {
        mod $name {
            use super::*;
            proptest! {
                #![proptest_config(ProptestConfig::with_cases(48))]
                #[test]
                fn real(seed in any::<u64>()) { $check::<f64>(seed)?; }
                #[test]
                fn complex(seed in any::<u64>()) { $check::<Complex64>(seed)?; }
                #[test]
                fn quaternion(seed in any::<u64>()) { $check::<Quaternion>(seed)?; }
            }
        }
    };
}

per_ring!(eigenpairs_are_orthonormal_with_small_residuals, eigen_checks);
per_ring!(similarity_transports_eigenpairs, similarity_transport);
per_ring!(rayleigh_identity_over_edges, rayleigh);
per_ring!(switching_preserves_spectra_and_balance, switching);
per_ring!(potential_witness_and_walk_laws, balance_laws);
per_ring!(balanced_graphs_share_the_plain_spectrum, balanced_spectra);
per_ring!(radius_bound_and_negation, radius_and_negation);
per_ring!(coefficients_determinants_and_cycle_gains, char_poly_consistency);
per_ring!(moore_determinant_is_eigenvalue_product, mdet_matches_product);

#[test]
fn empty_vector_norm_is_zero() {
    let v: DualVector<Complex64> = DualVector::new(Vec::new());
    assert_eq!(v.norm(1e-12), Dual::new(0.0, 0.0));
}
