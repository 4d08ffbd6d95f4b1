//! Brute-force reference implementations.
//!
//! Everything here is deliberately naive: products are recomputed from
//! scratch, nothing is deduplicated or pruned. These functions exist to
//! cross-check the production algorithms and are only practical on tiny
//! inputs.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::automata::{MaxPlusAutomaton, Word};
use crate::constructions::Nfa;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::jsr::MatrixFamily;
use crate::spectral;
use crate::tropical::{Rational, TropicalMatrix, TropicalValue};

/// Largest dimension accepted by [`brute_rho`].
pub const MAX_BRUTE_DIM: usize = 8;
/// Default cap on the number of products or words enumerated.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Maximum mean over all elementary cycles of the matrix graph.
pub fn brute_rho(m: &TropicalMatrix) -> Result<Rational> {
    let d = m.dim()?;
    if d > MAX_BRUTE_DIM {
        return Err(Error::BudgetExceeded {
            what: "elementary cycle enumeration",
            limit: MAX_BRUTE_DIM,
        });
    }
    let mut best = Rational::Bottom;
    // Cycles are enumerated from their smallest vertex.
    for start in 0..d {
        let mut on_path = vec![false; d];
        cycles_from(m, start, start, Int::ZERO, 0, &mut on_path, &mut best);
    }
    Ok(best)
}

fn cycles_from(
    m: &TropicalMatrix,
    start: usize,
    at: usize,
    weight: Int,
    len: usize,
    on_path: &mut [bool],
    best: &mut Rational,
) {
    on_path[at] = true;
    for next in start..m.rows() {
        let TropicalValue::Finite(w) = m.get(at, next) else {
            continue;
        };
        let total = &weight + w;
        if next == start {
            let mean = Rational::new(&total, &Int::from(len + 1));
            if mean > *best {
                *best = mean;
            }
        } else if !on_path[next] {
            cycles_from(m, start, next, total, len + 1, on_path, best);
        }
    }
    on_path[at] = false;
}

/// Naive `Π_i M_i` as a triple loop.
fn naive_product(family: &MatrixFamily, word: &[usize]) -> TropicalMatrix {
    let d = family.dim();
    let mut acc = TropicalMatrix::identity(d);
    for &g in word {
        let m = &family.generators()[g];
        let mut next = TropicalMatrix::filled(d, d, TropicalValue::Bottom);
        for i in 0..d {
            for j in 0..d {
                let mut best = TropicalValue::Bottom;
                for k in 0..d {
                    let v = acc.get(i, k).otimes(m.get(k, j));
                    if v > best {
                        best = v;
                    }
                }
                next.set(i, j, best);
            }
        }
        acc = next;
    }
    acc
}

/// Calls `f` on every word of length `len` over `k` letters, in
/// lexicographic order.
fn for_each_word(k: usize, len: usize, mut f: impl FnMut(&[usize])) {
    let mut w = vec![0usize; len];
    loop {
        f(&w);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            w[i] += 1;
            if w[i] < k {
                break;
            }
            w[i] = 0;
        }
    }
}

fn check_budget(k: usize, max_len: usize, budget: usize, what: &'static str) -> Result<()> {
    let mut total: usize = 0;
    let mut level: usize = 1;
    for _ in 0..max_len {
        level = level.saturating_mul(k);
        total = total.saturating_add(level);
    }
    if total > budget {
        Err(Error::BudgetExceeded { what, limit: budget })
    } else {
        Ok(())
    }
}

/// The two length-`ℓ` minima over all products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthMinima {
    /// `min ‖P‖_∞ / ℓ`.
    pub norm: Rational,
    /// `min ρ(P) / ℓ`.
    pub rho: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedJsr {
    /// Minimum of every entry of `per_length`.
    pub upper: Rational,
    /// Index `ℓ - 1` holds the minima over products of length `ℓ`.
    pub per_length: Vec<LengthMinima>,
}

/// Both truncated characterizations of the joint spectral radius, from every
/// product of length at most `max_len`.
pub fn brute_jsr_trunc(family: &MatrixFamily, max_len: usize) -> Result<TruncatedJsr> {
    brute_jsr_trunc_budgeted(family, max_len, DEFAULT_BUDGET)
}

pub fn brute_jsr_trunc_budgeted(family: &MatrixFamily, max_len: usize, budget: usize) -> Result<TruncatedJsr> {
    check_budget(family.len(), max_len, budget, "product enumeration")?;
    let mut per_length = Vec::with_capacity(max_len);
    for len in 1..=max_len {
        let mut norm: Option<Rational> = None;
        let mut rho: Option<Rational> = None;
        let mut failure = None;
        for_each_word(family.len(), len, |w| {
            let p = naive_product(family, w);
            let n = Rational::per_length(&p.norm_inf(), len);
            if norm.as_ref().is_none_or(|b| n < *b) {
                norm = Some(n);
            }
            match brute_rho(&p) {
                Ok(r) => {
                    let r = r.div_len(len);
                    if rho.as_ref().is_none_or(|b| r < *b) {
                        rho = Some(r);
                    }
                }
                Err(e) => failure = Some(e),
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        per_length.push(LengthMinima {
            norm: norm.expect("nonempty family"),
            rho: rho.expect("nonempty family"),
        });
    }
    let upper = per_length
        .iter()
        .flat_map(|m| [m.norm.clone(), m.rho.clone()])
        .min()
        .ok_or(Error::EmptyWord)?;
    Ok(TruncatedJsr { upper, per_length })
}

/// `I · μ(w) · F` with the product recomputed naively.
fn naive_value(a: &MaxPlusAutomaton, word: &[usize]) -> TropicalValue {
    let family = MatrixFamily::new(a.gamma()).expect("automaton matrices share a dimension");
    let p = naive_product(&family, word);
    let mut best = TropicalValue::Bottom;
    for i in (0..a.dim()).filter(|&i| a.initial()[i]) {
        for j in (0..a.dim()).filter(|&j| a.accepting()[j]) {
            if *p.get(i, j) > best {
                best = p.get(i, j).clone();
            }
        }
    }
    best
}

/// The least value over nonempty words of length at most `max_len`; ties go
/// to the shorter word, then to the lexicographically smaller one.
pub fn brute_min_word(a: &MaxPlusAutomaton, max_len: usize) -> Result<(Word, TropicalValue)> {
    check_budget(a.alphabet().len(), max_len, DEFAULT_BUDGET, "word enumeration")?;
    let mut best: Option<(Vec<usize>, TropicalValue)> = None;
    for len in 1..=max_len {
        for_each_word(a.alphabet().len(), len, |w| {
            let v = naive_value(a, w);
            if best.as_ref().is_none_or(|(_, b)| v < *b) {
                best = Some((w.to_vec(), v));
            }
        });
    }
    let (w, v) = best.ok_or(Error::EmptyWord)?;
    Ok((a.word_of(&w), v))
}

/// The value of every nonempty word of length at most `max_len`.
pub fn brute_values(a: &MaxPlusAutomaton, max_len: usize) -> Result<Vec<(Vec<usize>, TropicalValue)>> {
    check_budget(a.alphabet().len(), max_len, DEFAULT_BUDGET, "word enumeration")?;
    let mut out = Vec::new();
    for len in 1..=max_len {
        for_each_word(a.alphabet().len(), len, |w| out.push((w.to_vec(), naive_value(a, w))));
    }
    Ok(out)
}

/// The least ultimate rank over all products of length at most `max_len`.
pub fn brute_urk_set(family: &MatrixFamily, max_len: usize) -> Result<usize> {
    check_budget(family.len(), max_len, DEFAULT_BUDGET, "product enumeration")?;
    let mut best = usize::MAX;
    let mut failure = None;
    for len in 1..=max_len {
        for_each_word(family.len(), len, |w| match spectral::ultimate_rank(&naive_product(family, w)) {
            Ok(r) => best = best.min(r),
            Err(e) => failure = Some(e),
        });
    }
    match failure {
        Some(e) => Err(e),
        None => Ok(best),
    }
}

/// Every product of length at most `max_len`, shifted so that its `(1,1)`
/// entry is zero. Finite-entry families only.
pub fn brute_closure(family: &MatrixFamily, max_len: usize) -> Result<HashSet<TropicalMatrix>> {
    if !family.has_finite_entries() {
        return Err(Error::RequiresFiniteEntries("brute closure"));
    }
    check_budget(family.len(), max_len, DEFAULT_BUDGET, "product enumeration")?;
    let mut out = HashSet::new();
    for len in 1..=max_len {
        for_each_word(family.len(), len, |w| {
            let p = naive_product(family, w);
            let corner = p.get(0, 0).as_finite().cloned().expect("finite entries");
            out.insert(p.offset(&-&corner));
        });
    }
    Ok(out)
}

/// A shortest nonempty word rejected by the NFA, found by exploring the
/// subset construction breadth first; `None` when every nonempty word is
/// accepted.
pub fn nfa_shortest_rejected(nfa: &Nfa) -> Result<Option<Vec<String>>> {
    nfa.validate()?;
    let step = |set: &BTreeSet<usize>, letter: &str| -> BTreeSet<usize> {
        nfa.transitions
            .iter()
            .filter(|(p, s, _)| set.contains(p) && s == letter)
            .map(|(_, _, q)| *q)
            .collect()
    };
    let start: BTreeSet<usize> = nfa.initial.iter().copied().collect();
    let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
    let mut queue: VecDeque<(BTreeSet<usize>, Vec<String>)> = VecDeque::new();
    for letter in &nfa.alphabet {
        let next = step(&start, letter);
        if seen.insert(next.clone()) {
            queue.push_back((next, vec![letter.clone()]));
        }
    }
    while let Some((set, word)) = queue.pop_front() {
        if !set.iter().any(|q| nfa.accepting.contains(q)) {
            return Ok(Some(word));
        }
        for letter in &nfa.alphabet {
            let next = step(&set, letter);
            if seen.insert(next.clone()) {
                let mut w = word.clone();
                w.push(letter.clone());
                queue.push_back((next, w));
            }
        }
    }
    Ok(None)
}

/// Whether the NFA accepts every nonempty word.
pub fn nfa_is_universal(nfa: &Nfa) -> Result<bool> {
    Ok(nfa_shortest_rejected(nfa)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::tests::figure_one;

    const B: Option<i64> = None;

    fn figure_one_pair() -> MatrixFamily {
        MatrixFamily::new(figure_one().gamma()).unwrap()
    }

    #[test]
    fn rho_examples() {
        assert_eq!(brute_rho(&TropicalMatrix::identity(3)).unwrap(), Rational::zero());
        assert_eq!(brute_rho(figure_one().mu("a").unwrap()).unwrap(), Rational::from(1));
        let nil = TropicalMatrix::from_options(&[&[B, Some(3)], &[B, B]]).unwrap();
        assert_eq!(brute_rho(&nil).unwrap(), Rational::Bottom);
        let two = TropicalMatrix::from_ints(&[&[-5, 3], &[0, -5]]).unwrap();
        assert_eq!(brute_rho(&two).unwrap(), Rational::ratio(3, 2));
        assert!(brute_rho(&TropicalMatrix::identity(9)).is_err());
    }

    #[test]
    fn truncated_jsr_of_figure_one() {
        let t = brute_jsr_trunc(&figure_one_pair(), 4).unwrap();
        let norms: Vec<Rational> = t.per_length.iter().map(|m| m.norm.clone()).collect();
        assert_eq!(
            norms,
            vec![Rational::from(1), Rational::ratio(1, 2), Rational::ratio(2, 3), Rational::ratio(1, 2)]
        );
        assert_eq!(t.upper, Rational::ratio(1, 2));
    }

    #[test]
    fn truncated_jsr_of_singletons() {
        let m = TropicalMatrix::from_ints(&[&[2, -3], &[5, -1]]).unwrap();
        let rho = brute_rho(&m).unwrap();
        let t = brute_jsr_trunc(&MatrixFamily::new(vec![m]).unwrap(), 5).unwrap();
        assert!(t.per_length.iter().all(|l| l.rho == rho));
    }

    #[test]
    fn min_words() {
        let (w, v) = brute_min_word(&figure_one(), 3).unwrap();
        assert_eq!(w.to_string(), "a");
        assert_eq!(v, TropicalValue::finite(1));
    }

    #[test]
    fn urk_sets() {
        let id = MatrixFamily::new(vec![TropicalMatrix::identity(2)]).unwrap();
        assert_eq!(brute_urk_set(&id, 3).unwrap(), 2);
    }

    #[test]
    fn universality() {
        let all = Nfa {
            states: 1,
            alphabet: vec!["a".into(), "b".into()],
            transitions: vec![(0, "a".into(), 0), (0, "b".into(), 0)],
            initial: vec![0],
            accepting: vec![0],
        };
        assert!(nfa_is_universal(&all).unwrap());
        let even = Nfa {
            states: 2,
            transitions: vec![
                (0, "a".into(), 1),
                (0, "b".into(), 1),
                (1, "a".into(), 0),
                (1, "b".into(), 0),
            ],
            accepting: vec![0],
            ..all.clone()
        };
        assert_eq!(nfa_shortest_rejected(&even).unwrap(), Some(vec!["a".to_string()]));
    }
}
