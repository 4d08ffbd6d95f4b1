#![allow(dead_code)]

use maxplus::constructions::Nfa;
use maxplus::{MatrixFamily, MaxPlusAutomaton, TropicalMatrix, TropicalValue};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in `lo..=hi`, each replaced by `-inf` with probability `bottom`.
pub fn matrix(rng: &mut impl Rng, d: usize, lo: i64, hi: i64, bottom: f64) -> TropicalMatrix {
    let entries = (0..d * d)
        .map(|_| {
            if rng.gen_bool(bottom) {
                TropicalValue::Bottom
            } else {
                TropicalValue::finite(rng.gen_range(lo..=hi))
            }
        })
        .collect();
    TropicalMatrix::new(d, d, entries).unwrap()
}

pub fn zero_minus_one(rng: &mut impl Rng, d: usize) -> TropicalMatrix {
    matrix(rng, d, -1, 0, 0.0)
}

pub fn finite_family(rng: &mut impl Rng, max_d: usize, max_gens: usize, b: i64) -> MatrixFamily {
    let d = rng.gen_range(1..=max_d);
    let n = rng.gen_range(1..=max_gens);
    MatrixFamily::new((0..n).map(|_| matrix(rng, d, -b, b, 0.0)).collect()).unwrap()
}

pub fn family(rng: &mut impl Rng, max_d: usize, max_gens: usize, b: i64, bottom: f64) -> MatrixFamily {
    let d = rng.gen_range(1..=max_d);
    let n = rng.gen_range(1..=max_gens);
    MatrixFamily::new((0..n).map(|_| matrix(rng, d, -b, b, bottom)).collect()).unwrap()
}

/// A random automaton over `{a, b}` with at least one initial and one final state.
pub fn automaton(rng: &mut impl Rng, max_d: usize, lo: i64, hi: i64) -> MaxPlusAutomaton {
    let d = rng.gen_range(1..=max_d);
    let mu = (0..2).map(|_| matrix(rng, d, lo, hi, 0.4)).collect();
    let mut initial: Vec<bool> = (0..d).map(|_| rng.gen_bool(0.5)).collect();
    let mut accepting: Vec<bool> = (0..d).map(|_| rng.gen_bool(0.5)).collect();
    initial[rng.gen_range(0..d)] = true;
    accepting[rng.gen_range(0..d)] = true;
    MaxPlusAutomaton::new(vec!["a".into(), "b".into()], mu, initial, accepting).unwrap()
}

pub fn word(rng: &mut impl Rng, alphabet: &[String], min: usize, max: usize) -> maxplus::Word {
    let len = rng.gen_range(min..=max);
    maxplus::Word((0..len).map(|_| alphabet.choose(rng).unwrap().clone()).collect())
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0..1usize << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

fn all_transitions(n: usize) -> Vec<(usize, String, usize)> {
    let mut t = Vec::new();
    for p in 0..n {
        for s in ["a", "b"] {
            for q in 0..n {
                t.push((p, s.to_string(), q));
            }
        }
    }
    t
}

/// Every NFA over `{a, b}` with exactly `n` states.
pub fn all_nfas(n: usize) -> Vec<Nfa> {
    let transitions = all_transitions(n);
    let mut out = Vec::new();
    for mask in 0..1u64 << transitions.len() {
        let chosen: Vec<_> = transitions
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, t)| t.clone())
            .collect();
        for initial in subsets(n) {
            for accepting in subsets(n) {
                out.push(Nfa {
                    states: n,
                    alphabet: vec!["a".into(), "b".into()],
                    transitions: chosen.clone(),
                    initial: initial.clone(),
                    accepting,
                });
            }
        }
    }
    out
}

/// A random NFA over `{a, b}` with `n` states.
pub fn random_nfa(rng: &mut impl Rng, n: usize, density: f64) -> Nfa {
    let transitions = all_transitions(n).into_iter().filter(|_| rng.gen_bool(density)).collect();
    let pick = |rng: &mut ChaCha8Rng| (0..n).filter(|_| rng.gen_bool(0.5)).collect::<Vec<_>>();
    let mut r = ChaCha8Rng::seed_from_u64(rng.gen());
    Nfa {
        states: n,
        alphabet: vec!["a".into(), "b".into()],
        transitions,
        initial: pick(&mut r),
        accepting: pick(&mut r),
    }
}
