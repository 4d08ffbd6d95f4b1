mod common;

use std::collections::BTreeSet;

use maxplus::oracle::brute_rho;
use maxplus::spectral::{critical_graph, graph_of, spectral_radius, ultimate_rank};
use maxplus::{Int, Rational, TropicalMatrix, TropicalValue};
use num_integer::Integer;
use rand::Rng;

/// Every elementary cycle as a vertex list starting at its smallest vertex.
fn elementary_cycles(m: &TropicalMatrix, allowed: &dyn Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    fn go(
        m: &TropicalMatrix,
        allowed: &dyn Fn(usize, usize) -> bool,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let start = path[0];
        let at = *path.last().unwrap();
        for next in start..m.rows() {
            if m.get(at, next).is_bottom() || !allowed(at, next) {
                continue;
            }
            if next == start {
                out.push(path.clone());
            } else if !path.contains(&next) {
                path.push(next);
                go(m, allowed, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..m.rows() {
        go(m, allowed, &mut vec![s], &mut out);
    }
    out
}

fn cycle_mean(m: &TropicalMatrix, c: &[usize]) -> Rational {
    let mut total = Int::ZERO;
    for i in 0..c.len() {
        total = &total + m.get(c[i], c[(i + 1) % c.len()]).as_finite().unwrap();
    }
    Rational::new(&total, &Int::from(c.len()))
}

fn cycle_edges(c: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..c.len()).map(move |i| (c[i], c[(i + 1) % c.len()]))
}

#[test]
fn radius_matches_cycle_enumeration() {
    let mut rng = common::rng(11);
    for _ in 0..1000 {
        let d = rng.gen_range(1..=4);
        let m = common::matrix(&mut rng, d, -2, 2, 0.35);
        assert_eq!(spectral_radius(&m).unwrap(), brute_rho(&m).unwrap(), "{m:?}");
    }
}

#[test]
fn critical_graph_is_union_of_optimal_cycles() {
    let mut rng = common::rng(12);
    for _ in 0..1000 {
        let d = rng.gen_range(1..=4);
        let m = common::matrix(&mut rng, d, -2, 2, 0.35);
        let cg = critical_graph(&m).unwrap();
        let rho = brute_rho(&m).unwrap();
        assert_eq!(cg.radius, rho);
        let optimal: Vec<Vec<usize>> = elementary_cycles(&m, &|_, _| true)
            .into_iter()
            .filter(|c| cycle_mean(&m, c) == rho)
            .collect();
        let expected: BTreeSet<(usize, usize)> = optimal.iter().flat_map(|c| cycle_edges(c)).collect();
        let found: BTreeSet<(usize, usize)> = cg.graph.edges.iter().map(|(u, v, _)| (*u, *v)).collect();
        assert_eq!(found, expected, "{m:?}");

        let mut urk = 0;
        for comp in &cg.components {
            let inside = |u: usize, v: usize| {
                comp.vertices.contains(&u) && comp.vertices.contains(&v) && expected.contains(&(u, v))
            };
            let g = elementary_cycles(&m, &inside).iter().fold(0usize, |g, c| g.gcd(&c.len()));
            assert_eq!(comp.cyclicity, g, "{m:?}");
            urk += g;
        }
        assert_eq!(ultimate_rank(&m).unwrap(), urk);
    }
}

#[test]
fn offsets_shift_radius_and_keep_rank() {
    let mut rng = common::rng(13);
    for _ in 0..500 {
        let d = rng.gen_range(1..=4);
        let m = common::matrix(&mut rng, d, -3, 3, 0.3);
        let k = Int::from(rng.gen_range(-5..=5));
        let shifted = m.offset(&k);
        assert_eq!(spectral_radius(&shifted).unwrap(), spectral_radius(&m).unwrap().offset(&k));
        assert_eq!(ultimate_rank(&shifted).unwrap(), ultimate_rank(&m).unwrap());
        assert_eq!(critical_graph(&shifted).unwrap().components, critical_graph(&m).unwrap().components);
    }
}

#[test]
fn documented_examples() {
    let id = TropicalMatrix::identity(2);
    let g = graph_of(&id).unwrap();
    assert_eq!(g.edges, vec![(0, 0, Int::ZERO), (1, 1, Int::ZERO)]);
    let nil = TropicalMatrix::from_options(&[&[None, Some(0)], &[None, None]]).unwrap();
    assert_eq!(spectral_radius(&nil).unwrap(), Rational::Bottom);
    assert_eq!(ultimate_rank(&nil).unwrap(), 0);
    assert!(graph_of(&TropicalMatrix::filled(2, 2, TropicalValue::Bottom)).unwrap().edges.is_empty());
    let swap = TropicalMatrix::from_options(&[&[None, Some(0)], &[Some(0), None]]).unwrap();
    let cg = critical_graph(&swap).unwrap();
    assert_eq!(cg.components.len(), 1);
    assert_eq!(cg.components[0].cyclicity, 2);
    assert_eq!(ultimate_rank(&TropicalMatrix::from_ints(&[&[0, 0], &[0, 0]]).unwrap()).unwrap(), 1);
    assert_eq!(ultimate_rank(&TropicalMatrix::identity(5)).unwrap(), 5);
    assert!(spectral_radius(&TropicalMatrix::filled(2, 3, TropicalValue::ONE)).is_err());
}
