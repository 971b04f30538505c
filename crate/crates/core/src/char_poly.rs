//! Characteristic-polynomial coefficients from basic subgraphs.
//!
//! A basic subgraph is a vertex-disjoint union of single edges and cycles.
//! Each contributes `(−1)^{p(B)} 2^{c(B)} R(B)` to the coefficient of its
//! order, where `R(B)` multiplies the real parts of its cycle gains.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GainGraph, Graph};
use crate::scalar::{Dual, DualNumber, Element};

/// Largest vertex count accepted by the subgraph enumerations.
pub const SUBGRAPH_CAP: usize = 12;

/// An elementary graph: a single edge or a cycle on at least 3 vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Component {
    Edge(usize, usize),
    /// Vertex sequence starting at its minimal vertex; closing edge implied.
    Cycle(Vec<usize>),
}

impl Component {
    pub fn vertices(&self) -> Vec<usize> {
        match self {
            Component::Edge(u, v) => vec![*u, *v],
            Component::Cycle(c) => c.clone(),
        }
    }

    fn mask(&self) -> u32 {
        self.vertices().iter().fold(0, |m, &v| m | (1 << v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicSubgraph {
    pub components: Vec<Component>,
}

impl BasicSubgraph {
    /// `p(B)`.
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// `c(B)`.
    pub fn cycle_count(&self) -> usize {
        self.components
            .iter()
            .filter(|c| matches!(c, Component::Cycle(_)))
            .count()
    }

    /// Number of covered vertices.
    pub fn order(&self) -> usize {
        self.components.iter().map(|c| c.vertices().len()).sum()
    }

    /// Covered vertices, sorted.
    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.components.iter().flat_map(Component::vertices).collect();
        v.sort_unstable();
        v
    }
}

/// `R(C) = Re(φ(C))` for one cycle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleRealGain {
    pub cycle: Vec<usize>,
    pub value: DualNumber,
}

fn check_cap(n: usize) -> Result<()> {
    if n > SUBGRAPH_CAP {
        return Err(Error::SizeCapExceeded { n, cap: SUBGRAPH_CAP });
    }
    Ok(())
}

/// Every cycle of `g` once: rooted at its minimal vertex, with the second
/// vertex smaller than the last.
pub fn enumerate_cycles(g: &Graph) -> Result<Vec<Vec<usize>>> {
    check_cap(g.n())?;
    let mut out = Vec::new();
    for root in 0..g.n() {
        let mut path = vec![root];
        let mut on_path = vec![false; g.n()];
        on_path[root] = true;
        extend_cycles(g, root, &mut path, &mut on_path, &mut out);
    }
    Ok(out)
}

fn extend_cycles(g: &Graph, root: usize, path: &mut Vec<usize>, on_path: &mut [bool], out: &mut Vec<Vec<usize>>) {
    let last = *path.last().expect("path starts at root");
    for &w in g.neighbors(last) {
        if w == root && path.len() >= 3 && path[1] < last {
            out.push(path.clone());
        }
        if w > root && !on_path[w] {
            on_path[w] = true;
            path.push(w);
            extend_cycles(g, root, path, on_path, out);
            path.pop();
            on_path[w] = false;
        }
    }
}

/// `R(C)`; `cycle` may be given open or closed (first vertex repeated).
pub fn real_gain_of_cycle<T: Element>(g: &GainGraph<T>, cycle: &[usize]) -> Result<CycleRealGain> {
    let open = match cycle {
        [first, .., last] if first == last => &cycle[..cycle.len() - 1],
        _ => cycle,
    };
    if open.len() < 3 {
        return Err(Error::NotACycle(format!("{open:?} has fewer than 3 vertices")));
    }
    let mut seen = open.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != open.len() {
        return Err(Error::NotACycle(format!("{open:?} repeats a vertex")));
    }
    let mut walk = open.to_vec();
    walk.push(open[0]);
    let gain = g.gain_of_walk(&walk).map_err(|e| match e {
        Error::NotAWalk(a, b) => Error::NotACycle(format!("{a} and {b} are not adjacent")),
        other => other,
    })?;
    Ok(CycleRealGain {
        cycle: open.to_vec(),
        value: gain.real_part(),
    })
}

/// Elementary graphs grouped by their minimal vertex.
fn elementary_by_min(g: &Graph) -> Result<Vec<Vec<Component>>> {
    let mut by_min = vec![Vec::new(); g.n()];
    for &(u, v) in g.edges() {
        by_min[u].push(Component::Edge(u, v));
    }
    for c in enumerate_cycles(g)? {
        by_min[c[0]].push(Component::Cycle(c));
    }
    Ok(by_min)
}

/// All basic subgraphs, in a fixed order: vertices are decided in increasing
/// order, each either left uncovered or covered by a component it leads.
fn all_basic_subgraphs(g: &Graph) -> Result<Vec<BasicSubgraph>> {
    let by_min = elementary_by_min(g)?;
    let masks: Vec<Vec<u32>> = by_min
        .iter()
        .map(|cs| cs.iter().map(Component::mask).collect())
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    walk_basic(&by_min, &masks, 0, 0, &mut chosen, &mut out);
    Ok(out)
}

fn walk_basic(
    by_min: &[Vec<Component>],
    masks: &[Vec<u32>],
    v: usize,
    used: u32,
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<BasicSubgraph>,
) {
    if v == by_min.len() {
        out.push(BasicSubgraph {
            components: chosen.iter().map(|&(a, b)| by_min[a][b].clone()).collect(),
        });
        return;
    }
    walk_basic(by_min, masks, v + 1, used, chosen, out);
    if used & (1 << v) != 0 {
        return;
    }
    for (k, &m) in masks[v].iter().enumerate() {
        if used & m == 0 {
            chosen.push((v, k));
            walk_basic(by_min, masks, v + 1, used | m, chosen, out);
            chosen.pop();
        }
    }
}

/// Basic subgraphs of `g` covering exactly `i` vertices.
pub fn enumerate_basic_subgraphs(g: &Graph, i: usize) -> Result<Vec<BasicSubgraph>> {
    Ok(all_basic_subgraphs(g)?.into_iter().filter(|b| b.order() == i).collect())
}

/// `2^{c(B)} R(B)`.
fn weighted_real_gain<T: Element>(g: &GainGraph<T>, b: &BasicSubgraph) -> Result<DualNumber> {
    let mut acc = Dual::new(1.0, 0.0);
    for comp in &b.components {
        if let Component::Cycle(c) = comp {
            acc = acc * real_gain_of_cycle(g, c)?.value.scale(2.0);
        }
    }
    Ok(acc)
}

fn sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `c_1..c_n` with `c_i = Σ_{B ∈ 𝓑_i} (−1)^{p(B)} 2^{c(B)} R(B)`.
pub fn coefficients<T: Element>(g: &GainGraph<T>) -> Result<Vec<DualNumber>> {
    let n = g.n();
    let mut c = vec![Dual::new(0.0, 0.0); n + 1];
    for b in all_basic_subgraphs(g.graph())? {
        let order = b.order();
        if order == 0 {
            continue;
        }
        c[order] += weighted_real_gain(g, &b)?.scale(sign(b.component_count()));
    }
    Ok(c.split_off(1))
}

/// `Σ_{B ∈ 𝓑_n} (−1)^{n+p(B)} 2^{c(B)} R(B)`.
pub fn mdet_via_subgraphs<T: Element>(g: &GainGraph<T>) -> Result<DualNumber> {
    let n = g.n();
    let mut total = Dual::new(0.0, 0.0);
    for b in enumerate_basic_subgraphs(g.graph(), n)? {
        total += weighted_real_gain(g, &b)?.scale(sign(n + b.component_count()));
    }
    Ok(total)
}

/// `e_0..e_n` of dual numbers.
pub fn elementary_symmetric(values: &[DualNumber]) -> Vec<DualNumber> {
    let mut e = vec![Dual::new(0.0, 0.0); values.len() + 1];
    e[0] = Dual::new(1.0, 0.0);
    for (k, &x) in values.iter().enumerate() {
        for j in (1..=k + 1).rev() {
            e[j] = e[j] + e[j - 1] * x;
        }
    }
    e
}

/// `c_i = (−1)^i e_i(λ)` for `i = 1..n`.
pub fn coefficients_from_eigenvalues(values: &[DualNumber]) -> Vec<DualNumber> {
    elementary_symmetric(values)
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(i, e)| e.scale(sign(i)))
        .collect()
}

/// `Π λ_i`.
pub fn eigenvalue_product(values: &[DualNumber]) -> DualNumber {
    values.iter().fold(Dual::new(1.0, 0.0), |acc, &x| acc * x)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    use num_complex::Complex64;

    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
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

    #[test]
    fn cycles_of_small_graphs() {
        assert_eq!(
            enumerate_cycles(&Graph::cycle(3).unwrap()).unwrap(),
            vec![vec![0, 1, 2]]
        );
        assert_eq!(enumerate_cycles(&Graph::complete(4)).unwrap().len(), 7);
        assert_eq!(enumerate_cycles(&Graph::complete(5)).unwrap().len(), 37);
        assert!(enumerate_cycles(&Graph::path(5)).unwrap().is_empty());
        assert!(enumerate_cycles(&Graph::empty(13)).is_err());
    }

    #[test]
    fn real_gains() {
        let r1 = real_gain_of_cycle(&phi(c(0.0, -1.0), 1.0), &[0, 1, 2]).unwrap();
        assert!(r1.value.max_abs_diff(Dual::new(1.0, 0.0)) < 1e-15);
        let p3 = phi(c(FRAC_1_SQRT_2, -FRAC_1_SQRT_2), 2.0);
        let walk = p3.gain_of_walk(&[0, 1, 2, 0]).unwrap();
        assert!(
            walk.max_abs_diff(Dual::new(
                Complex64::from_polar(1.0, -FRAC_PI_4),
                c(FRAC_1_SQRT_2, FRAC_1_SQRT_2)
            )) < 1e-15
        );
        let r3 = real_gain_of_cycle(&p3, &[0, 1, 2, 0]).unwrap();
        assert!(r3.value.max_abs_diff(Dual::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2)) < 1e-15);
        for rotated in [[1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0]] {
            let r = real_gain_of_cycle(&p3, &rotated).unwrap();
            assert!(r.value.max_abs_diff(r3.value) < 1e-15);
        }
        let path = GainGraph::<f64>::unit(Graph::path(3));
        assert!(matches!(
            real_gain_of_cycle(&path, &[0, 1, 2]),
            Err(Error::NotACycle(_))
        ));
        assert!(matches!(real_gain_of_cycle(&p3, &[0, 1]), Err(Error::NotACycle(_))));
    }

    #[test]
    fn basic_subgraphs_of_triangle() {
        let g = Graph::cycle(3).unwrap();
        let two = enumerate_basic_subgraphs(&g, 2).unwrap();
        assert_eq!(two.len(), 3);
        assert!(two.iter().all(|b| b.component_count() == 1 && b.cycle_count() == 0));
        assert!(enumerate_basic_subgraphs(&g, 1).unwrap().is_empty());
        let three = enumerate_basic_subgraphs(&g, 3).unwrap();
        assert_eq!(
            three,
            vec![BasicSubgraph {
                components: vec![Component::Cycle(vec![0, 1, 2])]
            }]
        );
    }

    #[test]
    fn coefficients_of_phi1() {
        let p1 = phi(c(0.0, -1.0), 1.0);
        let cs = coefficients(&p1).unwrap();
        let want = coefficients_from_eigenvalues(&[Dual::new(2.0, 0.0), Dual::new(-1.0, 0.0), Dual::new(-1.0, 0.0)]);
        assert_eq!(
            want,
            vec![Dual::new(0.0, 0.0), Dual::new(-3.0, 0.0), Dual::new(-2.0, 0.0)]
        );
        for (a, b) in cs.iter().zip(&want) {
            assert!(a.max_abs_diff(*b) < 1e-15);
        }
        assert!(mdet_via_subgraphs(&p1).unwrap().max_abs_diff(Dual::new(2.0, 0.0)) < 1e-15);
    }

    #[test]
    fn forest_coefficients_count_matchings() {
        // P_4 has 3 one-edge matchings and 1 two-edge matching.
        let g = GainGraph::<f64>::unit(Graph::path(4));
        let cs = coefficients(&g).unwrap();
        assert_eq!(
            cs,
            vec![
                Dual::new(0.0, 0.0),
                Dual::new(-3.0, 0.0),
                Dual::new(0.0, 0.0),
                Dual::new(1.0, 0.0)
            ]
        );
    }

    #[test]
    fn spanning_sums() {
        let q = Dual::new(c(0.0, 1.0), c(0.5, 0.0));
        let edge = GainGraph::from_edges(2, &[(0, 1, q)], 1e-12).unwrap();
        assert_eq!(mdet_via_subgraphs(&edge).unwrap(), Dual::new(-1.0, 0.0));
        let star = GainGraph::<f64>::unit(Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap());
        assert_eq!(mdet_via_subgraphs(&star).unwrap(), Dual::new(0.0, 0.0));
    }
}
