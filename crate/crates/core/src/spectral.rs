//! Spectral quantities of a single square matrix.
//!
//! The graph `G(A)` of a matrix has an edge `i → j` of weight `A_ij` for
//! every finite entry. The spectral radius `ρ(A)` is the maximum mean weight
//! of a cycle of `G(A)`, the critical graph is the union of the cycles that
//! attain it, and the ultimate rank is the sum over the critical graph's
//! strongly connected components of their cyclicities.

use std::fmt;

use num_integer::Integer;

use crate::error::Result;
use crate::graph::{self, Edge};
use crate::int::Int;
use crate::tropical::{Rational, TropicalMatrix, TropicalValue};

/// `G(A)`: one edge per finite entry, vertices are `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixGraph {
    pub vertex_count: usize,
    pub edges: Vec<Edge>,
}

impl MatrixGraph {
    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.iter().any(|(u, v, _)| *u == from && *v == to)
    }
}

pub fn graph_of(m: &TropicalMatrix) -> Result<MatrixGraph> {
    let d = m.dim()?;
    let mut edges = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if let TropicalValue::Finite(w) = m.get(i, j) {
                edges.push((i, j, w.clone()));
            }
        }
    }
    Ok(MatrixGraph {
        vertex_count: d,
        edges,
    })
}

/// `ρ(M)`, or `-∞` when `G(M)` has no cycle.
pub fn spectral_radius(m: &TropicalMatrix) -> Result<Rational> {
    let g = graph_of(m)?;
    Ok(graph::max_cycle_mean(g.vertex_count, &g.edges).unwrap_or(Rational::Bottom))
}

/// A strongly connected component of the critical graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalComponent {
    pub vertices: Vec<usize>,
    /// Greatest common divisor of the lengths of the component's cycles.
    pub cyclicity: usize,
}

/// `G_c(M)` together with its components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalGraph {
    pub radius: Rational,
    /// Restricted to the critical edges; `vertex_count` is still `d`.
    pub graph: MatrixGraph,
    pub components: Vec<CriticalComponent>,
}

impl CriticalGraph {
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.components.iter().flat_map(|c| c.vertices.clone()).collect();
        vs.sort_unstable();
        vs
    }

    /// The lcm of the component cyclicities (`1` for an empty graph).
    pub fn cyclicity(&self) -> usize {
        self.components.iter().fold(1, |acc, c| acc.lcm(&c.cyclicity))
    }

    pub fn ultimate_rank(&self) -> usize {
        self.components.iter().map(|c| c.cyclicity).sum()
    }
}

/// Vertices are printed 1-based, matching the usual matrix index convention.
impl fmt::Display for CriticalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rho {}", self.radius)?;
        for (u, v, w) in &self.graph.edges {
            writeln!(f, "edge {} {} {}", u + 1, v + 1, w)?;
        }
        for (k, c) in self.components.iter().enumerate() {
            let vs: Vec<String> = c.vertices.iter().map(|v| (v + 1).to_string()).collect();
            writeln!(f, "scc {}: {{{}}} cyclicity {}", k + 1, vs.join(","), c.cyclicity)?;
        }
        Ok(())
    }
}

/// The critical graph of `M` (empty when `ρ(M) = -∞`).
///
/// With `ρ = p/q`, every weight is rescaled to `q·w − p`, which makes the
/// maximum cycle weight exactly zero. Longest-path potentials from a virtual
/// source then exist, and an edge lies on a zero-weight cycle iff it is tight
/// for the potentials and both its ends are in one component of the tight
/// subgraph.
pub fn critical_graph(m: &TropicalMatrix) -> Result<CriticalGraph> {
    let g = graph_of(m)?;
    let n = g.vertex_count;
    let radius = graph::max_cycle_mean(n, &g.edges).unwrap_or(Rational::Bottom);
    let (Some(p), Some(q)) = (radius.numer(), radius.denom()) else {
        return Ok(CriticalGraph {
            radius,
            graph: MatrixGraph {
                vertex_count: n,
                edges: Vec::new(),
            },
            components: Vec::new(),
        });
    };

    let scaled: Vec<Edge> = g
        .edges
        .iter()
        .map(|(u, v, w)| (*u, *v, &(w * &q) - &p))
        .collect();

    let mut potential = vec![Int::ZERO; n];
    loop {
        let mut changed = false;
        for (u, v, w) in &scaled {
            let cand = &potential[*u] + w;
            if cand > potential[*v] {
                potential[*v] = cand;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let tight: Vec<usize> = scaled
        .iter()
        .enumerate()
        .filter(|(_, (u, v, w))| &potential[*u] + w == potential[*v])
        .map(|(i, _)| i)
        .collect();
    let tight_edges: Vec<Edge> = tight.iter().map(|&i| scaled[i].clone()).collect();
    let comps = graph::strongly_connected_components(n, &tight_edges);
    let comp_of = graph::component_index(n, &comps);

    let critical: Vec<Edge> = tight
        .iter()
        .map(|&i| &g.edges[i])
        .filter(|(u, v, _)| comp_of[*u] == comp_of[*v])
        .cloned()
        .collect();

    let components = comps
        .into_iter()
        .filter_map(|vertices| {
            let inner: Vec<(usize, usize)> = critical
                .iter()
                .filter(|(u, v, _)| comp_of[*u] == comp_of[vertices[0]] && comp_of[*v] == comp_of[*u])
                .map(|(u, v, _)| (*u, *v))
                .collect();
            if inner.is_empty() {
                return None;
            }
            let cyclicity = component_cyclicity(n, &vertices, &inner);
            Some(CriticalComponent {
                vertices,
                cyclicity,
            })
        })
        .collect();

    Ok(CriticalGraph {
        radius,
        graph: MatrixGraph {
            vertex_count: n,
            edges: critical,
        },
        components,
    })
}

/// The gcd of cycle lengths of a strongly connected graph equals the gcd of
/// `depth(u) + 1 − depth(v)` over its edges, for any BFS depth labelling.
fn component_cyclicity(n: usize, vertices: &[usize], edges: &[(usize, usize)]) -> usize {
    let mut depth: Vec<Option<i64>> = vec![None; n];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
    }
    depth[vertices[0]] = Some(0);
    let mut queue = std::collections::VecDeque::from([vertices[0]]);
    while let Some(u) = queue.pop_front() {
        let du = depth[u].expect("queued vertices have a depth");
        for &v in &adj[u] {
            if depth[v].is_none() {
                depth[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    edges.iter().fold(0usize, |g, &(u, v)| {
        let (du, dv) = (depth[u].unwrap(), depth[v].unwrap());
        g.gcd(&((du + 1 - dv).unsigned_abs() as usize))
    })
}

/// `urk(M)`: the sum of the cyclicities of the critical components; `0`
/// exactly when `M` is nilpotent.
pub fn ultimate_rank(m: &TropicalMatrix) -> Result<usize> {
    Ok(critical_graph(m)?.ultimate_rank())
}
