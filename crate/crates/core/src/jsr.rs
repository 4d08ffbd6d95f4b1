//! Joint spectral radius and ultimate rank of finitely generated semigroups.
//!
//! For a family `Γ`, `ρ(Γ) = inf_ℓ min { ‖M_1⋯M_ℓ‖_∞ / ℓ }`, which also equals
//! `inf_ℓ min { ρ(M_1⋯M_ℓ) / ℓ }`, and `urk(Γ) = min { urk(M) : M ∈ ⟨Γ⟩ }`.
//! Both are uncomputable in general. When every entry is finite they can be
//! computed exactly: subtracting the `(1,1)` entry from any product leaves
//! all entries in `[-4b, 4b]`, where `b` bounds the generators' entries, so
//! the semigroup is finite up to scalar offsets. Row vectors reached from `0`
//! stay within `[-2b, 2b]` after the same normalization. Otherwise this module only
//! offers bounded searches: upper bounds and certificates of negativity.

use indexmap::map::Entry;
use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::graph;
use crate::int::Int;
use crate::spectral;
use crate::tropical::{Rational, TropicalMatrix, TropicalValue};

/// Default cap on closure sizes and per-length product sets.
pub const DEFAULT_MAX_ELEMENTS: usize = 1_000_000;
/// Default product length for bounded searches.
pub const DEFAULT_MAX_LEN: usize = 12;

/// A nonempty set of square matrices of equal dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFamily {
    dim: usize,
    generators: Vec<TropicalMatrix>,
    finite_entries: bool,
}

impl MatrixFamily {
    pub fn new(generators: Vec<TropicalMatrix>) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptyFamily)?;
        let dim = first.dim()?;
        for g in &generators {
            let d = g.dim()?;
            if d != dim {
                return Err(Error::FamilyDimension { expected: dim, found: d });
            }
        }
        let finite_entries = generators.iter().all(TropicalMatrix::is_finite);
        Ok(MatrixFamily {
            dim,
            generators,
            finite_entries,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[TropicalMatrix] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// True when no generator has a `-∞` entry.
    pub fn has_finite_entries(&self) -> bool {
        self.finite_entries
    }

    /// `b`: the largest absolute value of a finite entry.
    pub fn entry_bound(&self) -> Option<Int> {
        self.generators.iter().filter_map(TropicalMatrix::max_abs_entry).max()
    }

    /// `k ⊙ Γ`.
    pub fn offset(&self, k: &Int) -> MatrixFamily {
        MatrixFamily {
            dim: self.dim,
            generators: self.generators.iter().map(|g| g.offset(k)).collect(),
            finite_entries: self.finite_entries,
        }
    }

    pub fn map(&self, f: impl Fn(&TropicalMatrix) -> Result<TropicalMatrix>) -> Result<MatrixFamily> {
        MatrixFamily::new(self.generators.iter().map(f).collect::<Result<_>>()?)
    }

    /// The product of the generators named by `word`, left to right.
    pub fn product(&self, word: &[usize]) -> Result<TropicalMatrix> {
        let (&first, rest) = word.split_first().ok_or(Error::EmptyWord)?;
        let mut acc = self.generators[first].clone();
        for &i in rest {
            acc = acc.tmul(&self.generators[i])?;
        }
        Ok(acc)
    }
}

/// Splits `M` into `(c, N)` with `M = c ⊙ N` and the anchor entry of `N` equal
/// to zero. The anchor is the first finite entry in row-major order, which is
/// `(1,1)` for finite matrices; two matrices differing by a scalar offset share
/// their support and therefore their anchor. An all `-∞` matrix is its own
/// normal form with offset `0`.
pub fn normalize(m: &TropicalMatrix) -> (Int, TropicalMatrix) {
    match m.entries().iter().find_map(TropicalValue::as_finite) {
        Some(anchor) => {
            let anchor = anchor.clone();
            (anchor.clone(), m.offset(&-&anchor))
        }
        None => (Int::ZERO, m.clone()),
    }
}

/// The semigroup up to scalar offsets, each element with a shortest word
/// (over generator indices) producing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedSemigroup {
    pub elements: Vec<TropicalMatrix>,
    pub witnesses: Vec<Vec<usize>>,
}

impl NormalizedSemigroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Breadth-first closure of `{normalize(M) : M ∈ ⟨Γ⟩}` under right
/// multiplication by generators.
///
/// Always finite for finite-entry families. With `-∞` entries the closure may
/// be infinite; exceeding `max_elements` is then reported together with the
/// elements found so far.
pub fn normalized_closure(family: &MatrixFamily, max_elements: usize) -> Result<NormalizedSemigroup> {
    let mut seen: IndexMap<TropicalMatrix, Vec<usize>> = IndexMap::new();
    for (i, g) in family.generators.iter().enumerate() {
        seen.entry(normalize(g).1).or_insert_with(|| vec![i]);
    }
    let mut next = 0;
    while next < seen.len() {
        let (elem, word) = seen.get_index(next).map(|(m, w)| (m.clone(), w.clone())).unwrap();
        next += 1;
        for (i, g) in family.generators.iter().enumerate() {
            let (_, n) = normalize(&elem.tmul(g)?);
            if let Entry::Vacant(v) = seen.entry(n) {
                let mut w = word.clone();
                w.push(i);
                v.insert(w);
            }
        }
        if seen.len() > max_elements {
            return Err(Error::ClosureBudget {
                limit: max_elements,
                partial: seen.into_keys().collect(),
            });
        }
    }
    let (elements, witnesses) = seen.into_iter().unzip();
    Ok(NormalizedSemigroup { elements, witnesses })
}

/// The projective orbit of the zero row vector.
///
/// States are orbit vectors shifted so that their first coordinate is zero.
/// An edge `(s, g, t, c)` means `states[s] · Γ_g = c ⊙ states[t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureGraph {
    pub states: Vec<Vec<Int>>,
    pub start: usize,
    pub edges: Vec<(usize, usize, usize, Int)>,
}

impl ClosureGraph {
    /// Explores the orbit; only defined for finite-entry families.
    pub fn build(family: &MatrixFamily, max_states: usize) -> Result<ClosureGraph> {
        if !family.finite_entries {
            return Err(Error::RequiresFiniteEntries("exact JSR"));
        }
        let d = family.dim;
        let mut index: IndexMap<Vec<Int>, ()> = IndexMap::new();
        index.insert(vec![Int::ZERO; d], ());
        let mut edges = Vec::new();
        let mut next = 0;
        while next < index.len() {
            let state: Vec<TropicalValue> = index
                .get_index(next)
                .unwrap()
                .0
                .iter()
                .map(|x| TropicalValue::Finite(x.clone()))
                .collect();
            for (g, m) in family.generators.iter().enumerate() {
                let image: Vec<Int> = m
                    .left_apply(&state)
                    .into_iter()
                    .map(|v| match v {
                        TropicalValue::Finite(x) => x,
                        TropicalValue::Bottom => unreachable!("finite entries give finite images"),
                    })
                    .collect();
                let shift = image[0].clone();
                let normalized: Vec<Int> = image.iter().map(|x| x - &shift).collect();
                let (target, _) = index.insert_full(normalized, ());
                edges.push((next, g, target, shift));
            }
            next += 1;
            if index.len() > max_states {
                return Err(Error::BudgetExceeded {
                    what: "closure graph",
                    limit: max_states,
                });
            }
        }
        Ok(ClosureGraph {
            states: index.into_keys().collect(),
            start: 0,
            edges,
        })
    }

    /// Minimum mean offset over the cycles of the orbit graph.
    pub fn min_cycle_mean(&self) -> Rational {
        let edges: Vec<graph::Edge> = self.edges.iter().map(|(s, _, t, c)| (*s, *t, c.clone())).collect();
        graph::min_cycle_mean(self.states.len(), &edges)
            .expect("every orbit state has an outgoing edge, so the graph has a cycle")
    }
}

/// Exact `ρ(Γ)` for finite-entry families.
///
/// Along any periodic product the zero vector's projective orbit eventually
/// cycles, and each turn around the cycle adds the spectral radius of the
/// cycle's product to every coordinate. Conversely every cycle of the orbit
/// graph is such a product, so `ρ(Γ)` is the minimum cycle mean of the graph.
pub fn jsr_exact_finite(family: &MatrixFamily) -> Result<Rational> {
    jsr_exact_finite_budgeted(family, DEFAULT_MAX_ELEMENTS)
}

pub fn jsr_exact_finite_budgeted(family: &MatrixFamily, max_states: usize) -> Result<Rational> {
    Ok(ClosureGraph::build(family, max_states)?.min_cycle_mean())
}

/// `k = max entry` and `(-k) ⊙ Γ`, whose entries are all nonpositive;
/// `ρ(Γ) = ρ((-k) ⊙ Γ) + k`.
pub fn jsr_offset_reduce(family: &MatrixFamily) -> Result<(Int, MatrixFamily)> {
    let k = family
        .generators
        .iter()
        .map(TropicalMatrix::norm_inf)
        .max()
        .and_then(|v| v.as_finite().cloned())
        .ok_or(Error::AllBottom)?;
    Ok((k.clone(), family.offset(&-&k)))
}

/// One product class found by [`for_each_product`]: the actual product is
/// `offset ⊙ normalized`.
struct ProductClass<'a> {
    len: usize,
    normalized: &'a TropicalMatrix,
    offset: &'a Int,
    word: &'a [usize],
}

/// Enumerates products by length, one representative per projective class.
/// Among products of equal length that differ by a scalar, only the smallest
/// can improve any of the bounds computed here, since norm, spectral radius
/// and ultimate rank are all monotone under offsets (or invariant).
fn for_each_product(
    family: &MatrixFamily,
    max_len: usize,
    max_elements: usize,
    mut visit: impl FnMut(ProductClass<'_>) -> bool,
) -> Result<()> {
    let mut level: IndexMap<TropicalMatrix, (Int, Vec<usize>)> = IndexMap::new();
    for (i, g) in family.generators.iter().enumerate() {
        let (c, n) = normalize(g);
        insert_min(&mut level, n, c, vec![i]);
    }
    for len in 1..=max_len {
        for (n, (c, w)) in &level {
            let keep_going = visit(ProductClass {
                len,
                normalized: n,
                offset: c,
                word: w,
            });
            if !keep_going {
                return Ok(());
            }
        }
        if len == max_len {
            break;
        }
        let mut next: IndexMap<TropicalMatrix, (Int, Vec<usize>)> = IndexMap::new();
        for (n, (c, w)) in &level {
            for (i, g) in family.generators.iter().enumerate() {
                let (c2, n2) = normalize(&n.tmul(g)?);
                let mut w2 = w.clone();
                w2.push(i);
                insert_min(&mut next, n2, c + &c2, w2);
            }
            if next.len() > max_elements {
                return Err(Error::BudgetExceeded {
                    what: "product enumeration",
                    limit: max_elements,
                });
            }
        }
        level = next;
    }
    Ok(())
}

fn insert_min(
    map: &mut IndexMap<TropicalMatrix, (Int, Vec<usize>)>,
    key: TropicalMatrix,
    offset: Int,
    word: Vec<usize>,
) {
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert((offset, word));
        }
        Entry::Occupied(mut o) => {
            if offset < o.get().0 {
                o.insert((offset, word));
            }
        }
    }
}

fn spectral_radius_of(class: &ProductClass<'_>) -> Result<Rational> {
    Ok(spectral::spectral_radius(class.normalized)?.offset(class.offset))
}

/// `min { min(‖P‖_∞, ρ(P)) / |P| : |P| ≤ max_len }`, an upper bound on `ρ(Γ)`
/// that is nonincreasing in `max_len` and converges to it.
pub fn jsr_upper_bound(family: &MatrixFamily, max_len: usize) -> Result<Rational> {
    jsr_upper_bound_budgeted(family, max_len, DEFAULT_MAX_ELEMENTS)
}

pub fn jsr_upper_bound_budgeted(family: &MatrixFamily, max_len: usize, max_elements: usize) -> Result<Rational> {
    let mut best: Option<Rational> = None;
    let mut failure = None;
    for_each_product(family, max_len, max_elements, |class| {
        let norm = Rational::per_length(&class.normalized.norm_inf().offset(class.offset), class.len);
        let rho = match spectral_radius_of(&class) {
            Ok(r) => r.div_len(class.len),
            Err(e) => {
                failure = Some(e);
                return false;
            }
        };
        let cand = norm.min(rho);
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
        !best.as_ref().is_some_and(Rational::is_bottom)
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(best.expect("families are nonempty and max_len >= 1"))
}

/// A product witnessing `ρ(Γ) < 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeCertificate {
    /// Generator indices, left to right.
    pub word: Vec<usize>,
    /// `ρ(product) / |word|`, negative or `-∞`.
    pub value: Rational,
}

/// Searches products of length at most `max_len` for one with negative
/// spectral radius, which certifies `ρ(Γ) < 0`. Shorter products are tried
/// first. `None` is not evidence of anything: whether `ρ(Γ) ≥ 0` is
/// undecidable in general.
pub fn certify_jsr_negative(family: &MatrixFamily, max_len: usize) -> Result<Option<NegativeCertificate>> {
    certify_jsr_negative_budgeted(family, max_len, DEFAULT_MAX_ELEMENTS)
}

pub fn certify_jsr_negative_budgeted(
    family: &MatrixFamily,
    max_len: usize,
    max_elements: usize,
) -> Result<Option<NegativeCertificate>> {
    let mut found = None;
    let mut failure = None;
    for_each_product(family, max_len, max_elements, |class| match spectral_radius_of(&class) {
        Ok(rho) if rho.is_negative() => {
            found = Some(NegativeCertificate {
                word: class.word.to_vec(),
                value: rho.div_len(class.len),
            });
            false
        }
        Ok(_) => true,
        Err(e) => {
            failure = Some(e);
            false
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// Exact `urk(Γ)` for finite-entry families: the least ultimate rank over the
/// normalized semigroup, valid because the ultimate rank ignores offsets.
pub fn urk_exact_finite(family: &MatrixFamily) -> Result<usize> {
    urk_exact_finite_budgeted(family, DEFAULT_MAX_ELEMENTS)
}

pub fn urk_exact_finite_budgeted(family: &MatrixFamily, max_elements: usize) -> Result<usize> {
    if !family.finite_entries {
        return Err(Error::RequiresFiniteEntries("exact ultimate rank"));
    }
    let closure = normalized_closure(family, max_elements)?;
    let mut best = usize::MAX;
    for m in &closure.elements {
        best = best.min(spectral::ultimate_rank(m)?);
        if best <= 1 {
            // A finite-entry matrix always has a nonempty critical graph.
            break;
        }
    }
    Ok(best)
}

/// The least ultimate rank over products of length at most `max_len`; an upper
/// bound on `urk(Γ)` for arbitrary families.
pub fn urk_upper_bound(family: &MatrixFamily, max_len: usize) -> Result<usize> {
    let mut best = usize::MAX;
    let mut failure = None;
    for_each_product(family, max_len, DEFAULT_MAX_ELEMENTS, |class| {
        match spectral::ultimate_rank(class.normalized) {
            Ok(r) => best = best.min(r),
            Err(e) => failure = Some(e),
        }
        failure.is_none() && best > 0
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(best),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const B: Option<i64> = None;

    fn fam(ms: &[&[&[i64]]]) -> MatrixFamily {
        MatrixFamily::new(ms.iter().map(|m| TropicalMatrix::from_ints(m).unwrap()).collect()).unwrap()
    }

    fn figure_one_pair() -> MatrixFamily {
        MatrixFamily::new(vec![
            TropicalMatrix::from_options(&[&[Some(1), B], &[B, Some(0)]]).unwrap(),
            TropicalMatrix::from_options(&[&[Some(0), B], &[B, Some(1)]]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn family_validation() {
        assert!(matches!(MatrixFamily::new(vec![]), Err(Error::EmptyFamily)));
        let bad = MatrixFamily::new(vec![TropicalMatrix::identity(1), TropicalMatrix::identity(2)]);
        assert!(matches!(bad, Err(Error::FamilyDimension { .. })));
        let f = fam(&[&[&[3, -1], &[2, 3]]]);
        assert!(f.has_finite_entries());
        assert_eq!(f.entry_bound(), Some(Int::from(3)));
        assert!(!figure_one_pair().has_finite_entries());
    }

    #[test]
    fn closures_of_trivial_families() {
        let id = MatrixFamily::new(vec![TropicalMatrix::identity(2)]).unwrap();
        let c = normalized_closure(&id, 10).unwrap();
        assert_eq!(c.elements, vec![TropicalMatrix::identity(2)]);
        assert_eq!(c.witnesses, vec![vec![0]]);

        let zero = fam(&[&[&[0, 0], &[0, 0]]]);
        assert_eq!(normalized_closure(&zero, 10).unwrap().len(), 1);
    }

    #[test]
    fn closure_respects_the_projective_bound() {
        let f = fam(&[&[&[0, -1], &[-1, 0]], &[&[-1, 0], &[0, -1]]]);
        let c = normalized_closure(&f, 1000).unwrap();
        assert!(c.len() <= 125);
        for (m, w) in c.elements.iter().zip(&c.witnesses) {
            assert_eq!(normalize(&f.product(w).unwrap()).1, *m);
            assert_eq!(*m.get(0, 0), TropicalValue::ONE);
        }
    }

    #[test]
    fn closure_budget_is_reported() {
        // Powers of [[1, 0], [-inf, 0]] are pairwise projectively distinct.
        let f = MatrixFamily::new(vec![TropicalMatrix::from_options(&[&[Some(1), Some(0)], &[B, Some(0)]]).unwrap()]).unwrap();
        match normalized_closure(&f, 5) {
            Err(Error::ClosureBudget { limit: 5, partial }) => assert!(partial.len() > 5),
            other => panic!("expected a budget error, got {other:?}"),
        }
    }

    #[test]
    fn exact_jsr_examples() {
        let id = MatrixFamily::new(vec![TropicalMatrix::identity(2)]);
        // identity(2) has -inf entries; the exact path is gated on finiteness.
        assert!(matches!(
            jsr_exact_finite(&id.unwrap()),
            Err(Error::RequiresFiniteEntries(_))
        ));
        assert_eq!(jsr_exact_finite(&fam(&[&[&[0, 0], &[0, 0]]])).unwrap(), Rational::from(0));
        assert_eq!(jsr_exact_finite(&fam(&[&[&[1, 1], &[1, 1]]])).unwrap(), Rational::from(1));
        // Each generator alone has a weight-0 loop; alternating them does better.
        let f = fam(&[&[&[0, -1], &[-1, -1]], &[&[-1, -1], &[-1, 0]]]);
        assert_eq!(jsr_exact_finite(&f).unwrap(), Rational::ratio(-1, 2));
        let exact = jsr_exact_finite(&f).unwrap();
        assert!(exact <= jsr_upper_bound(&f, 8).unwrap());
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(jsr_upper_bound(&figure_one_pair(), 2).unwrap(), Rational::ratio(1, 2));
        let m = TropicalMatrix::from_ints(&[&[2, -3], &[5, -1]]).unwrap();
        let single = MatrixFamily::new(vec![m.clone()]).unwrap();
        assert_eq!(jsr_upper_bound(&single, 1).unwrap(), spectral::spectral_radius(&m).unwrap());
        let nil = MatrixFamily::new(vec![
            TropicalMatrix::from_options(&[&[B, Some(0)], &[B, B]]).unwrap(),
            TropicalMatrix::from_options(&[&[Some(0), Some(0)], &[B, B]]).unwrap(),
        ])
        .unwrap();
        assert_eq!(jsr_upper_bound(&nil, 3).unwrap(), Rational::Bottom);
    }

    #[test]
    fn certificates() {
        let neg = MatrixFamily::new(vec![TropicalMatrix::identity(2).offset(&Int::from(-1))]).unwrap();
        assert_eq!(
            certify_jsr_negative(&neg, 3).unwrap(),
            Some(NegativeCertificate {
                word: vec![0],
                value: Rational::from(-1)
            })
        );
        let id = MatrixFamily::new(vec![TropicalMatrix::identity(2)]).unwrap();
        assert_eq!(certify_jsr_negative(&id, 6).unwrap(), None);
    }

    #[test]
    fn offset_reduction() {
        let id = MatrixFamily::new(vec![TropicalMatrix::identity(2)]).unwrap();
        assert_eq!(jsr_offset_reduce(&id).unwrap(), (Int::ZERO, id.clone()));
        let (k, reduced) = jsr_offset_reduce(&fam(&[&[&[3, 1], &[2, 3]]])).unwrap();
        assert_eq!(k, Int::from(3));
        assert_eq!(reduced, fam(&[&[&[0, -2], &[-1, 0]]]));
        let empty = MatrixFamily::new(vec![TropicalMatrix::filled(2, 2, TropicalValue::Bottom)]).unwrap();
        assert!(matches!(jsr_offset_reduce(&empty), Err(Error::AllBottom)));
    }

    #[test]
    fn exact_urk_examples() {
        assert_eq!(urk_exact_finite(&fam(&[&[&[0, 0], &[0, 0]]])).unwrap(), 1);
        assert_eq!(urk_exact_finite(&fam(&[&[&[0, -5], &[-5, 0]]])).unwrap(), 2);
        assert_eq!(urk_exact_finite(&fam(&[&[&[0, -5], &[-5, 0]], &[&[0, -5], &[-5, -1]]])).unwrap(), 1);
        let id = MatrixFamily::new(vec![TropicalMatrix::identity(2)]).unwrap();
        assert!(matches!(urk_exact_finite(&id), Err(Error::RequiresFiniteEntries(_))));
        assert_eq!(urk_upper_bound(&id, 4).unwrap(), 2);
    }

    fn arb_finite_family() -> impl Strategy<Value = MatrixFamily> {
        (1usize..=3, 1usize..=2, 1i64..=2).prop_flat_map(|(d, n, b)| {
            proptest::collection::vec(proptest::collection::vec(-b..=b, d * d), n).prop_map(move |gs| {
                MatrixFamily::new(
                    gs.into_iter()
                        .map(|e| TropicalMatrix::new(d, d, e.into_iter().map(TropicalValue::finite).collect()).unwrap())
                        .collect(),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn upper_bound_is_monotone(f in arb_finite_family(), l in 1usize..6) {
            prop_assert!(jsr_upper_bound(&f, l + 1).unwrap() <= jsr_upper_bound(&f, l).unwrap());
        }

        #[test]
        fn exact_is_below_bounds(f in arb_finite_family()) {
            let exact = jsr_exact_finite(&f).unwrap();
            prop_assert!(exact <= jsr_upper_bound(&f, 6).unwrap());
        }

        #[test]
        fn singleton_is_spectral_radius(f in arb_finite_family()) {
            let m = f.generators()[0].clone();
            let single = MatrixFamily::new(vec![m.clone()]).unwrap();
            prop_assert_eq!(jsr_exact_finite(&single).unwrap(), spectral::spectral_radius(&m).unwrap());
        }

        #[test]
        fn offset_equivariance(f in arb_finite_family(), k in -5i64..=5) {
            let k = Int::from(k);
            let g = f.offset(&k);
            prop_assert_eq!(jsr_exact_finite(&g).unwrap(), jsr_exact_finite(&f).unwrap().offset(&k));
            prop_assert_eq!(urk_exact_finite(&g).unwrap(), urk_exact_finite(&f).unwrap());
            let (top, reduced) = jsr_offset_reduce(&g).unwrap();
            prop_assert_eq!(jsr_exact_finite(&reduced).unwrap().offset(&top), jsr_exact_finite(&g).unwrap());
        }

        #[test]
        fn closure_size_bound(f in arb_finite_family()) {
            let b = f.entry_bound().unwrap().to_i64().unwrap() as u32;
            let d = f.dim() as u32;
            let bound = (4 * b as u64 + 1).pow(d * d - 1);
            prop_assert!(normalized_closure(&f, 1_000_000).unwrap().len() as u64 <= bound);
        }
    }
}
