//! Weighted digraph helpers shared by the spectral and closure code.

use std::cmp::Ordering;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::int::Int;
use crate::tropical::Rational;

/// A weighted edge `(from, to, weight)`.
pub type Edge = (usize, usize, Int);

/// Strongly connected components, each sorted, listed in order of their
/// smallest vertex.
pub fn strongly_connected_components(n: usize, edges: &[Edge]) -> Vec<Vec<usize>> {
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, edges.len());
    for _ in 0..n {
        g.add_node(());
    }
    for (u, v, _) in edges {
        g.add_edge(NodeIndex::new(*u), NodeIndex::new(*v), ());
    }
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(NodeIndex::index).collect();
            c.sort_unstable();
            c
        })
        .collect();
    comps.sort_unstable_by_key(|c| c[0]);
    comps
}

/// Maps each vertex to the index of its component.
pub fn component_index(n: usize, comps: &[Vec<usize>]) -> Vec<usize> {
    let mut idx = vec![usize::MAX; n];
    for (c, comp) in comps.iter().enumerate() {
        for &v in comp {
            idx[v] = c;
        }
    }
    idx
}

/// An exact cycle mean `num / len` with `len > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Mean {
    num: Int,
    len: i64,
}

impl Mean {
    fn cmp(&self, other: &Mean) -> Ordering {
        self.num.mul_i64(other.len).cmp(&other.num.mul_i64(self.len))
    }
}

/// Maximum mean weight over all cycles, or `None` for an acyclic graph.
///
/// Karp's characterization is applied to every strongly connected component
/// separately, so walks never leave a component and vertices unreachable from
/// the chosen source cannot poison the minimum.
pub fn max_cycle_mean(n: usize, edges: &[Edge]) -> Option<Rational> {
    let comps = strongly_connected_components(n, edges);
    let comp_of = component_index(n, &comps);
    let mut local = vec![0usize; n];
    for comp in &comps {
        for (i, &v) in comp.iter().enumerate() {
            local[v] = i;
        }
    }
    let mut per_comp: Vec<Vec<Edge>> = vec![Vec::new(); comps.len()];
    for (u, v, w) in edges {
        if comp_of[*u] == comp_of[*v] {
            per_comp[comp_of[*u]].push((local[*u], local[*v], w.clone()));
        }
    }
    let mut best: Option<Mean> = None;
    for (comp, comp_edges) in comps.iter().zip(&per_comp) {
        if comp_edges.is_empty() {
            continue;
        }
        let m = karp_strongly_connected(comp.len(), comp_edges);
        if best.as_ref().is_none_or(|b| m.cmp(b) == Ordering::Greater) {
            best = Some(m);
        }
    }
    best.map(|m| Rational::new(&m.num, &Int::from(m.len)))
}

/// Minimum mean weight over all cycles, or `None` for an acyclic graph.
pub fn min_cycle_mean(n: usize, edges: &[Edge]) -> Option<Rational> {
    let negated: Vec<Edge> = edges.iter().map(|(u, v, w)| (*u, *v, -w)).collect();
    max_cycle_mean(n, &negated).map(|r| match r {
        Rational::Finite(q) => Rational::Finite(-q),
        Rational::Bottom => Rational::Bottom,
    })
}

/// One step of the walk recurrence `next[v] = max_u (cur[u] + w(u, v))`.
fn relax(cur: &[Option<Int>], edges: &[Edge], next: &mut [Option<Int>]) {
    next.iter_mut().for_each(|x| *x = None);
    for (u, v, w) in edges {
        if let Some(du) = &cur[*u] {
            let cand = du + w;
            match &next[*v] {
                Some(dv) if *dv >= cand => {}
                _ => next[*v] = Some(cand),
            }
        }
    }
}

/// Karp on a strongly connected graph with at least one edge, using two
/// passes so that only O(n) walk weights are held at a time.
fn karp_strongly_connected(n: usize, edges: &[Edge]) -> Mean {
    let start = || {
        let mut d = vec![None; n];
        d[0] = Some(Int::ZERO);
        d
    };

    let mut cur = start();
    let mut next = vec![None; n];
    for _ in 0..n {
        relax(&cur, edges, &mut next);
        std::mem::swap(&mut cur, &mut next);
    }
    let last = cur;

    // For each v, min over k of (D_n(v) - D_k(v)) / (n - k).
    let mut worst: Vec<Option<Mean>> = vec![None; n];
    let mut cur = start();
    for k in 0..n {
        for v in 0..n {
            if let (Some(dn), Some(dk)) = (&last[v], &cur[v]) {
                let cand = Mean {
                    num: dn - dk,
                    len: (n - k) as i64,
                };
                if worst[v].as_ref().is_none_or(|w| cand.cmp(w) == Ordering::Less) {
                    worst[v] = Some(cand);
                }
            }
        }
        relax(&cur, edges, &mut next);
        std::mem::swap(&mut cur, &mut next);
    }

    worst
        .into_iter()
        .flatten()
        .max_by(|a, b| a.cmp(b))
        .expect("a strongly connected graph with an edge has walks of every length")
}
