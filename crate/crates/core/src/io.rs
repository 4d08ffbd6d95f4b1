//! JSON file formats.
//!
//! - matrix: a list of rows, each entry an integer or `"-inf"`; the plain
//!   text format of [`TropicalMatrix`] is accepted as well;
//! - family: `{"dim": d, "generators": [matrix, ...]}`;
//! - automaton: `{"alphabet": [..], "dim": d, "mu": {symbol: matrix},
//!   "initial": vector, "final": vector}` with `0`/`"-inf"` vectors;
//! - NFA: see [`Nfa`];
//! - two-counter machine: see [`TwoCounterMachine`].

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::automata::MaxPlusAutomaton;
use crate::constructions::Nfa;
use crate::counter::TwoCounterMachine;
use crate::error::{Error, Result};
use crate::jsr::MatrixFamily;
use crate::tropical::{TropicalMatrix, TropicalValue};

/// Reads a matrix in either the JSON or the text format.
pub fn parse_matrix(text: &str) -> Result<TropicalMatrix> {
    if text.trim_start().starts_with('[') {
        Ok(serde_json::from_str(text)?)
    } else {
        text.parse()
    }
}

pub fn matrix_to_json(m: &TropicalMatrix) -> String {
    serde_json::to_string(m).expect("matrices always serialize")
}

#[derive(Serialize, Deserialize)]
struct FamilyFile {
    dim: usize,
    generators: Vec<TropicalMatrix>,
}

pub fn parse_family(text: &str) -> Result<MatrixFamily> {
    let file: FamilyFile = serde_json::from_str(text)?;
    let family = MatrixFamily::new(file.generators)?;
    if family.dim() != file.dim {
        return Err(Error::FamilyDimension {
            expected: file.dim,
            found: family.dim(),
        });
    }
    Ok(family)
}

pub fn family_to_json(f: &MatrixFamily) -> String {
    serde_json::to_string_pretty(&FamilyFile {
        dim: f.dim(),
        generators: f.generators().to_vec(),
    })
    .expect("families always serialize")
}

#[derive(Serialize, Deserialize)]
struct AutomatonFile {
    alphabet: Vec<String>,
    dim: usize,
    mu: IndexMap<String, TropicalMatrix>,
    initial: Vec<TropicalValue>,
    #[serde(rename = "final")]
    accepting: Vec<TropicalValue>,
}

pub fn parse_automaton(text: &str) -> Result<MaxPlusAutomaton> {
    let mut file: AutomatonFile = serde_json::from_str(text)?;
    if file.mu.len() != file.alphabet.len() {
        return Err(Error::InvalidAutomaton(format!(
            "{} symbols but {} matrices",
            file.alphabet.len(),
            file.mu.len()
        )));
    }
    let mu = file
        .alphabet
        .iter()
        .map(|s| file.mu.shift_remove(s).ok_or_else(|| Error::UnknownSymbol(s.clone())))
        .collect::<Result<Vec<_>>>()?;
    if file.initial.len() != file.dim {
        return Err(Error::InvalidAutomaton(format!(
            "dim is {} but the initial vector has {} entries",
            file.dim,
            file.initial.len()
        )));
    }
    MaxPlusAutomaton::from_vectors(file.alphabet, mu, &file.initial, &file.accepting)
}

pub fn automaton_to_json(a: &MaxPlusAutomaton) -> String {
    let file = AutomatonFile {
        alphabet: a.alphabet().to_vec(),
        dim: a.dim(),
        mu: a.alphabet().iter().cloned().zip(a.gamma()).collect(),
        initial: a.initial_vector(),
        accepting: a.final_vector(),
    };
    serde_json::to_string_pretty(&file).expect("automata always serialize")
}

pub fn parse_nfa(text: &str) -> Result<Nfa> {
    let nfa: Nfa = serde_json::from_str(text)?;
    nfa.validate()?;
    Ok(nfa)
}

pub fn nfa_to_json(n: &Nfa) -> String {
    serde_json::to_string_pretty(n).expect("NFAs always serialize")
}

pub fn parse_machine(text: &str) -> Result<TwoCounterMachine> {
    let m: TwoCounterMachine = serde_json::from_str(text)?;
    m.check()?;
    Ok(m)
}

pub fn machine_to_json(m: &TwoCounterMachine) -> String {
    serde_json::to_string_pretty(m).expect("machines always serialize")
}
