//! Max-plus automata in linear presentation `(I, μ, F)`.
//!
//! The value of a nonempty word `w = w_1 … w_n` is `I μ(w_1) ⋯ μ(w_n) F`, the
//! best weight of an accepting run. Initial and final vectors only carry `0`
//! or `-∞`, so they are stored as flags.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::tropical::{TropicalMatrix, TropicalValue};

/// A finite sequence of alphabet symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<String>);

impl Word {
    pub fn from_symbols<S: AsRef<str>>(symbols: &[S]) -> Word {
        Word(symbols.iter().map(|s| s.as_ref().to_string()).collect())
    }

    /// Reads a word over `alphabet`. Symbols may be separated by whitespace or
    /// written together; unseparated runs are split by longest match.
    pub fn parse(text: &str, alphabet: &[String]) -> Result<Word> {
        let mut out = Vec::new();
        for token in text.split(|c: char| c.is_whitespace() || c == ',') {
            let mut rest = token;
            while !rest.is_empty() {
                let sym = alphabet
                    .iter()
                    .filter(|s| rest.starts_with(s.as_str()))
                    .max_by_key(|s| s.len())
                    .ok_or_else(|| Error::UnknownSymbol(rest.to_string()))?;
                out.push(sym.clone());
                rest = &rest[sym.len()..];
            }
        }
        Ok(Word(out))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn repeat(&self, k: usize) -> Word {
        Word((0..k).flat_map(|_| self.0.iter().cloned()).collect())
    }
}

/// Single-character symbols are written together (`aab`), longer ones are
/// separated by spaces (`c1p a c2p`).
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|s| s.chars().count() == 1) {
            f.write_str(&self.0.concat())
        } else {
            f.write_str(&self.0.join(" "))
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MaxPlusAutomaton {
    alphabet: Vec<String>,
    mu: Vec<TropicalMatrix>,
    initial: Vec<bool>,
    accepting: Vec<bool>,
    /// Finite entries of each `μ(a)`, for sparse propagation.
    transitions: Vec<Vec<(usize, usize, Int)>>,
}

impl fmt::Debug for MaxPlusAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MaxPlusAutomaton")
            .field("alphabet", &self.alphabet)
            .field("dim", &self.dim())
            .field("initial", &self.initial)
            .field("accepting", &self.accepting)
            .finish_non_exhaustive()
    }
}

impl MaxPlusAutomaton {
    pub fn new(
        alphabet: Vec<String>,
        mu: Vec<TropicalMatrix>,
        initial: Vec<bool>,
        accepting: Vec<bool>,
    ) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::InvalidAutomaton("empty alphabet".into()));
        }
        if alphabet.len() != mu.len() {
            return Err(Error::InvalidAutomaton(format!(
                "{} symbols but {} matrices",
                alphabet.len(),
                mu.len()
            )));
        }
        let distinct: BTreeSet<&String> = alphabet.iter().collect();
        if distinct.len() != alphabet.len() {
            return Err(Error::InvalidAutomaton("repeated symbol in alphabet".into()));
        }
        if let Some(s) = alphabet.iter().find(|s| s.is_empty() || s.contains(char::is_whitespace)) {
            return Err(Error::InvalidAutomaton(format!("bad symbol {s:?}")));
        }
        let d = initial.len();
        if d == 0 || accepting.len() != d {
            return Err(Error::InvalidAutomaton(format!(
                "initial has {} entries, final has {}",
                d,
                accepting.len()
            )));
        }
        for (sym, m) in alphabet.iter().zip(&mu) {
            if m.rows() != d || m.cols() != d {
                return Err(Error::InvalidAutomaton(format!(
                    "matrix for {sym:?} is {}x{}, expected {d}x{d}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let transitions = mu
            .iter()
            .map(|m| {
                let mut t = Vec::new();
                for i in 0..d {
                    for j in 0..d {
                        if let TropicalValue::Finite(w) = m.get(i, j) {
                            t.push((i, j, w.clone()));
                        }
                    }
                }
                t
            })
            .collect();
        Ok(MaxPlusAutomaton {
            alphabet,
            mu,
            initial,
            accepting,
            transitions,
        })
    }

    /// Builds an automaton from `0`/`-∞` vectors; any other entry is an error.
    pub fn from_vectors(
        alphabet: Vec<String>,
        mu: Vec<TropicalMatrix>,
        initial: &[TropicalValue],
        accepting: &[TropicalValue],
    ) -> Result<Self> {
        let flags = |v: &[TropicalValue], what: &str| -> Result<Vec<bool>> {
            v.iter()
                .map(|x| match x {
                    TropicalValue::Bottom => Ok(false),
                    x if *x == TropicalValue::ONE => Ok(true),
                    other => Err(Error::InvalidAutomaton(format!(
                        "{what} vector entries must be 0 or -inf, got {other}"
                    ))),
                })
                .collect()
        };
        Self::new(alphabet, mu, flags(initial, "initial")?, flags(accepting, "final")?)
    }

    /// The automaton whose states are all initial and final, so that each word
    /// is valued by `‖μ(w)‖_∞`.
    pub fn from_family(alphabet: Vec<String>, generators: Vec<TropicalMatrix>) -> Result<Self> {
        let d = generators.first().map_or(0, TropicalMatrix::rows);
        Self::new(alphabet, generators, vec![true; d], vec![true; d])
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.initial.len()
    }

    pub fn initial(&self) -> &[bool] {
        &self.initial
    }

    pub fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    pub fn initial_vector(&self) -> Vec<TropicalValue> {
        flags_to_vector(&self.initial)
    }

    pub fn final_vector(&self) -> Vec<TropicalValue> {
        flags_to_vector(&self.accepting)
    }

    pub fn symbol_index(&self, symbol: &str) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|s| s == symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    /// `μ(a)` for a single symbol.
    pub fn mu(&self, symbol: &str) -> Result<&TropicalMatrix> {
        Ok(&self.mu[self.symbol_index(symbol)?])
    }

    pub fn mu_at(&self, letter: usize) -> &TropicalMatrix {
        &self.mu[letter]
    }

    /// `Γ_A`: the letter matrices in alphabet order.
    pub fn gamma(&self) -> Vec<TropicalMatrix> {
        self.mu.clone()
    }

    pub fn is_all_initial_final(&self) -> bool {
        self.initial.iter().chain(&self.accepting).all(|&b| b)
    }

    /// All finite transition weights.
    pub fn weights(&self) -> BTreeSet<Int> {
        self.transitions
            .iter()
            .flatten()
            .map(|(_, _, w)| w.clone())
            .collect()
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.iter().map(Vec::len).sum()
    }

    /// Letter indices of a nonempty word.
    pub fn letters(&self, word: &Word) -> Result<Vec<usize>> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        word.0.iter().map(|s| self.symbol_index(s)).collect()
    }

    pub fn word_of(&self, letters: &[usize]) -> Word {
        Word(letters.iter().map(|&l| self.alphabet[l].clone()).collect())
    }

    /// `μ(w_1) ⋯ μ(w_n)`.
    pub fn mu_of_word(&self, word: &Word) -> Result<TropicalMatrix> {
        let letters = self.letters(word)?;
        let mut acc = self.mu[letters[0]].clone();
        for &l in &letters[1..] {
            acc = acc.tmul(&self.mu[l])?;
        }
        Ok(acc)
    }

    /// `I μ(w) F`, by propagating the initial row vector letter by letter.
    pub fn evaluate(&self, word: &Word) -> Result<TropicalValue> {
        let letters = self.letters(word)?;
        Ok(self.evaluate_letters(&letters))
    }

    /// Like [`evaluate`](Self::evaluate) on letter indices. Panics on an
    /// out-of-range letter; an empty slice yields `I·F`.
    pub fn evaluate_letters(&self, letters: &[usize]) -> TropicalValue {
        let mut cur = self.initial_vector();
        let mut next = Vec::with_capacity(cur.len());
        for &l in letters {
            self.step(&cur, l, &mut next);
            std::mem::swap(&mut cur, &mut next);
        }
        self.output(&cur)
    }

    /// `next = cur · μ(letter)`.
    pub fn step(&self, cur: &[TropicalValue], letter: usize, next: &mut Vec<TropicalValue>) {
        next.clear();
        next.resize(self.dim(), TropicalValue::Bottom);
        for (i, j, w) in &self.transitions[letter] {
            if let TropicalValue::Finite(x) = &cur[*i] {
                let cand = x + w;
                match &next[*j] {
                    TropicalValue::Finite(y) if *y >= cand => {}
                    _ => next[*j] = TropicalValue::Finite(cand),
                }
            }
        }
    }

    /// `v · F`: the best value among accepting states.
    pub fn output(&self, v: &[TropicalValue]) -> TropicalValue {
        v.iter()
            .zip(&self.accepting)
            .filter(|(_, &acc)| acc)
            .map(|(x, _)| x)
            .max()
            .cloned()
            .unwrap_or(TropicalValue::Bottom)
    }

    /// Calls `visit(letters, value)` on every nonempty word of length at most
    /// `max_len`, in lexicographic (depth-first) order. Shares prefix work, so
    /// the cost is one sparse vector step per word.
    pub fn visit_words(&self, max_len: usize, mut visit: impl FnMut(&[usize], &TropicalValue)) {
        let mut buffers = vec![Vec::new(); max_len + 1];
        buffers[0] = self.initial_vector();
        let mut prefix = Vec::with_capacity(max_len);
        self.visit_rec(&mut buffers, &mut prefix, max_len, &mut visit);
    }

    fn visit_rec(
        &self,
        buffers: &mut [Vec<TropicalValue>],
        prefix: &mut Vec<usize>,
        max_len: usize,
        visit: &mut impl FnMut(&[usize], &TropicalValue),
    ) {
        let depth = prefix.len();
        if depth == max_len {
            return;
        }
        for letter in 0..self.alphabet.len() {
            let (head, tail) = buffers.split_at_mut(depth + 1);
            self.step(&head[depth], letter, &mut tail[0]);
            prefix.push(letter);
            let value = self.output(&tail[0]);
            visit(prefix, &value);
            self.visit_rec(buffers, prefix, max_len, visit);
            prefix.pop();
        }
    }

    /// The shortest, then lexicographically least, word of length at most
    /// `max_len` with a negative value. `-∞` counts as negative only when
    /// `bottom_negative` is set.
    ///
    /// This is a semi-decision procedure: `None` says nothing about longer words.
    pub fn find_negative_word(&self, max_len: usize, bottom_negative: bool) -> Option<(Word, TropicalValue)> {
        let is_witness = |v: &TropicalValue| match v {
            TropicalValue::Bottom => bottom_negative,
            TropicalValue::Finite(x) => x.is_negative(),
        };
        let mut best: Option<(Vec<usize>, TropicalValue)> = None;
        let mut buffers = vec![Vec::new(); max_len + 1];
        buffers[0] = self.initial_vector();
        let mut prefix = Vec::new();
        self.negative_rec(&mut buffers, &mut prefix, max_len, &is_witness, &mut best);
        best.map(|(letters, v)| (self.word_of(&letters), v))
    }

    fn negative_rec(
        &self,
        buffers: &mut [Vec<TropicalValue>],
        prefix: &mut Vec<usize>,
        max_len: usize,
        is_witness: &impl Fn(&TropicalValue) -> bool,
        best: &mut Option<(Vec<usize>, TropicalValue)>,
    ) {
        let depth = prefix.len();
        let limit = best.as_ref().map_or(max_len, |(w, _)| w.len() - 1);
        if depth >= limit {
            return;
        }
        for letter in 0..self.alphabet.len() {
            let (head, tail) = buffers.split_at_mut(depth + 1);
            self.step(&head[depth], letter, &mut tail[0]);
            prefix.push(letter);
            let value = self.output(&tail[0]);
            if is_witness(&value) {
                // Depth-first order visits same-length words lexicographically,
                // so the first witness of a given length is the one we want.
                if best.as_ref().is_none_or(|(w, _)| prefix.len() < w.len()) {
                    *best = Some((prefix.clone(), value));
                }
                prefix.pop();
                continue;
            }
            // Once the run vector is all -inf every extension is -inf too.
            if tail[0].iter().any(TropicalValue::is_finite) {
                self.negative_rec(buffers, prefix, max_len, is_witness, best);
            }
            prefix.pop();
        }
    }

    /// The shortest, then lexicographically least, word `w` with
    /// `|w| ≤ max_len` and `f_self(w) > f_other(w)`.
    pub fn compare_bounded(
        &self,
        other: &MaxPlusAutomaton,
        max_len: usize,
    ) -> Result<Option<(Word, TropicalValue, TropicalValue)>> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(self.alphabet.clone(), other.alphabet.clone()));
        }
        let mut found: Option<(Vec<usize>, TropicalValue, TropicalValue)> = None;
        // Iterative deepening keeps the shortest-first guarantee simple.
        for len in 1..=max_len {
            let mut bufs_a = vec![Vec::new(); len + 1];
            let mut bufs_b = vec![Vec::new(); len + 1];
            bufs_a[0] = self.initial_vector();
            bufs_b[0] = other.initial_vector();
            let mut prefix = Vec::new();
            self.compare_rec(other, &mut bufs_a, &mut bufs_b, &mut prefix, len, &mut found);
            if found.is_some() {
                break;
            }
        }
        Ok(found.map(|(l, a, b)| (self.word_of(&l), a, b)))
    }

    fn compare_rec(
        &self,
        other: &MaxPlusAutomaton,
        bufs_a: &mut [Vec<TropicalValue>],
        bufs_b: &mut [Vec<TropicalValue>],
        prefix: &mut Vec<usize>,
        len: usize,
        found: &mut Option<(Vec<usize>, TropicalValue, TropicalValue)>,
    ) {
        let depth = prefix.len();
        for letter in 0..self.alphabet.len() {
            if found.is_some() {
                return;
            }
            let (ha, ta) = bufs_a.split_at_mut(depth + 1);
            let (hb, tb) = bufs_b.split_at_mut(depth + 1);
            self.step(&ha[depth], letter, &mut ta[0]);
            other.step(&hb[depth], letter, &mut tb[0]);
            // Nothing can beat -inf on the left.
            if ta[0].iter().all(TropicalValue::is_bottom) {
                continue;
            }
            prefix.push(letter);
            if depth + 1 == len {
                let (va, vb) = (self.output(&ta[0]), other.output(&tb[0]));
                if va > vb {
                    *found = Some((prefix.clone(), va, vb));
                }
            } else {
                self.compare_rec(other, bufs_a, bufs_b, prefix, len, found);
            }
            prefix.pop();
        }
    }
}

fn flags_to_vector(flags: &[bool]) -> Vec<TropicalValue> {
    flags
        .iter()
        .map(|&b| if b { TropicalValue::ONE } else { TropicalValue::Bottom })
        .collect()
}

/// Incremental construction of an automaton from named transitions.
///
/// Parallel transitions with the same letter and endpoints collapse to the
/// heavier one, which leaves the computed function unchanged.
#[derive(Debug, Clone)]
pub struct AutomatonBuilder {
    alphabet: Vec<String>,
    initial: Vec<bool>,
    accepting: Vec<bool>,
    edges: Vec<(usize, usize, usize, Int)>,
}

impl AutomatonBuilder {
    pub fn new<S: AsRef<str>>(alphabet: &[S]) -> Self {
        AutomatonBuilder {
            alphabet: alphabet.iter().map(|s| s.as_ref().to_string()).collect(),
            initial: Vec::new(),
            accepting: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn add_state(&mut self, initial: bool, accepting: bool) -> usize {
        self.initial.push(initial);
        self.accepting.push(accepting);
        self.initial.len() - 1
    }

    pub fn state_count(&self) -> usize {
        self.initial.len()
    }

    pub fn letter(&self, symbol: &str) -> usize {
        self.alphabet
            .iter()
            .position(|s| s == symbol)
            .unwrap_or_else(|| panic!("symbol {symbol:?} not in builder alphabet"))
    }

    pub fn add(&mut self, from: usize, symbol: &str, to: usize, weight: impl Into<Int>) -> &mut Self {
        let letter = self.letter(symbol);
        self.edges.push((from, letter, to, weight.into()));
        self
    }

    /// Adds the same transition for several symbols.
    pub fn add_all(&mut self, from: usize, symbols: &[&str], to: usize, weight: impl Into<Int>) -> &mut Self {
        let w = weight.into();
        for s in symbols {
            self.add(from, s, to, w.clone());
        }
        self
    }

    pub fn build(self) -> Result<MaxPlusAutomaton> {
        let d = self.initial.len();
        if d == 0 {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        let mut mu = vec![TropicalMatrix::filled(d, d, TropicalValue::Bottom); self.alphabet.len()];
        for (from, letter, to, w) in self.edges {
            let w = TropicalValue::Finite(w);
            if *mu[letter].get(from, to) < w {
                mu[letter].set(from, to, w);
            }
        }
        MaxPlusAutomaton::new(self.alphabet, mu, self.initial, self.accepting)
    }
}
