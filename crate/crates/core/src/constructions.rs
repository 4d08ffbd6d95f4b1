//! Constructions relating automata, matrix families and their invariants.

use serde::{Deserialize, Serialize};

use crate::automata::{AutomatonBuilder, MaxPlusAutomaton};
use crate::error::{Error, Result};
use crate::jsr::MatrixFamily;
use crate::tropical::{TropicalMatrix, TropicalValue};

/// The separator letter used by [`nfa_to_gamma`].
pub const STAR: &str = "*";

/// Adds a separator letter and one state `q` so that every state is initial
/// and final while `(⋆w)^k⋆` is still valued `k·f(w)`.
///
/// On `star` there are weight-0 transitions from every final state to every
/// initial state and to `q`, from `q` to itself and from `q` to every initial
/// state. Original letters never touch `q`.
pub fn star_extend(a: &MaxPlusAutomaton, star: &str) -> Result<MaxPlusAutomaton> {
    if a.alphabet().iter().any(|s| s == star) {
        return Err(Error::SymbolCollision(star.to_string()));
    }
    let d = a.dim();
    let q = d;
    let extend = |m: &TropicalMatrix| {
        let mut out = TropicalMatrix::filled(d + 1, d + 1, TropicalValue::Bottom);
        for i in 0..d {
            for j in 0..d {
                out.set(i, j, m.get(i, j).clone());
            }
        }
        out
    };
    let mut mu: Vec<TropicalMatrix> = a.gamma().iter().map(extend).collect();
    let mut s = TropicalMatrix::filled(d + 1, d + 1, TropicalValue::Bottom);
    for f in (0..d).filter(|&f| a.accepting()[f]) {
        for i in (0..d).filter(|&i| a.initial()[i]) {
            s.set(f, i, TropicalValue::ONE);
        }
        s.set(f, q, TropicalValue::ONE);
    }
    s.set(q, q, TropicalValue::ONE);
    for i in (0..d).filter(|&i| a.initial()[i]) {
        s.set(q, i, TropicalValue::ONE);
    }
    mu.push(s);
    let mut alphabet = a.alphabet().to_vec();
    alphabet.push(star.to_string());
    MaxPlusAutomaton::new(alphabet, mu, vec![true; d + 1], vec![true; d + 1])
}

/// `diag(M, M, [0])`: two copies of `M` next to a weight-0 loop.
pub fn hat(m: &TropicalMatrix) -> Result<TropicalMatrix> {
    let d = m.dim()?;
    let mut out = TropicalMatrix::filled(2 * d + 1, 2 * d + 1, TropicalValue::Bottom);
    for i in 0..d {
        for j in 0..d {
            out.set(i, j, m.get(i, j).clone());
            out.set(d + i, d + j, m.get(i, j).clone());
        }
    }
    out.set(2 * d, 2 * d, TropicalValue::ONE);
    Ok(out)
}

/// `[[M, -1], [-1, 0]]` for a matrix with entries in `{0, -1}`.
pub fn tilde(m: &TropicalMatrix) -> Result<TropicalMatrix> {
    let d = m.dim()?;
    let minus_one = TropicalValue::finite(-1);
    if let Some(bad) = m
        .entries()
        .iter()
        .find(|v| **v != TropicalValue::ONE && **v != minus_one)
    {
        return Err(Error::EntryNotZeroOrMinusOne(bad.to_string()));
    }
    Ok(bordered(m, d))
}

/// `[[M, -1], [-1, 0]]` for any square `M`. Products of `tilde` matrices are
/// of this form with entries down to `-2`, which `tilde` itself rejects.
pub fn bordered_by_minus_one(m: &TropicalMatrix) -> Result<TropicalMatrix> {
    Ok(bordered(m, m.dim()?))
}

fn bordered(m: &TropicalMatrix, d: usize) -> TropicalMatrix {
    let minus_one = TropicalValue::finite(-1);
    let mut out = TropicalMatrix::filled(d + 1, d + 1, minus_one);
    for i in 0..d {
        for j in 0..d {
            out.set(i, j, m.get(i, j).clone());
        }
    }
    out.set(d, d, TropicalValue::ONE);
    out
}

pub fn hat_family(f: &MatrixFamily) -> Result<MatrixFamily> {
    f.map(hat)
}

pub fn tilde_family(f: &MatrixFamily) -> Result<MatrixFamily> {
    f.map(tilde)
}

fn default_alphabet() -> Vec<String> {
    vec!["a".into(), "b".into()]
}

/// A nondeterministic finite automaton over a two-letter alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nfa {
    pub states: usize,
    #[serde(default = "default_alphabet")]
    pub alphabet: Vec<String>,
    pub transitions: Vec<(usize, String, usize)>,
    pub initial: Vec<usize>,
    #[serde(rename = "final")]
    pub accepting: Vec<usize>,
}

impl Nfa {
    pub fn validate(&self) -> Result<()> {
        if self.alphabet.len() != 2 || self.alphabet[0] == self.alphabet[1] {
            return Err(Error::NfaAlphabet(self.alphabet.len()));
        }
        if self.states == 0 {
            return Err(Error::InvalidNfa("no states".into()));
        }
        let in_range = |q: usize, what: &str| {
            if q < self.states {
                Ok(())
            } else {
                Err(Error::InvalidNfa(format!("{what} state {q} out of range")))
            }
        };
        for (p, s, q) in &self.transitions {
            in_range(*p, "transition")?;
            in_range(*q, "transition")?;
            if !self.alphabet.contains(s) {
                return Err(Error::UnknownSymbol(s.clone()));
            }
        }
        for &q in &self.initial {
            in_range(q, "initial")?;
        }
        for &q in &self.accepting {
            in_range(q, "final")?;
        }
        Ok(())
    }

    /// The NFA with every transition weighted 0: words are valued 0 when
    /// accepted and `-∞` otherwise.
    pub fn to_automaton(&self) -> Result<MaxPlusAutomaton> {
        self.validate()?;
        let mut b = AutomatonBuilder::new(&self.alphabet);
        for q in 0..self.states {
            b.add_state(self.initial.contains(&q), self.accepting.contains(&q));
        }
        for (p, s, q) in &self.transitions {
            b.add(*p, s, *q, 0);
        }
        b.build()
    }
}

/// The letter matrices of the star-extended weight-0 automaton of `nfa`, in
/// the order `a, b, ⋆`.
///
/// `ρ = 0` when the NFA accepts every nonempty word and `ρ = -∞` otherwise.
/// With `replace_bottom_by_minus_one`, `-∞` entries become `-1`: the family
/// then has finite entries and `ρ < 0` exactly when some word is rejected.
pub fn nfa_to_gamma(nfa: &Nfa, replace_bottom_by_minus_one: bool) -> Result<MatrixFamily> {
    let a = star_extend(&nfa.to_automaton()?, STAR)?;
    let gamma = a.gamma();
    let gamma = if replace_bottom_by_minus_one {
        gamma
            .iter()
            .map(|m| {
                m.map(|v| match v {
                    TropicalValue::Bottom => TropicalValue::finite(-1),
                    v => v.clone(),
                })
            })
            .collect()
    } else {
        gamma
    };
    MatrixFamily::new(gamma)
}
