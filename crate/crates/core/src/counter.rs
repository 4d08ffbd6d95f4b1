//! Deterministic two-counter machines, their execution words, and the
//! compilation of a machine into a checker automaton whose value is `-1`
//! exactly on the encoding of the machine's halting run.
//!
//! A run from `(n₀, m₀)` taking actions `t₁ … t_k` through counter values
//! `(nᵢ, mᵢ)` is written `a^{n₀} b^{m₀} t₁ a^{n₁} b^{m₁} t₂ … t_k` over the
//! letters `a, b, c1p, c2p, c1m, c2m`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automata::{AutomatonBuilder, MaxPlusAutomaton, Word};
use crate::constructions::{hat_family, star_extend, STAR};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::jsr::MatrixFamily;

/// The checker alphabet, in generator order.
pub const CHECKER_ALPHABET: [&str; 6] = ["a", "b", "c1p", "c2p", "c1m", "c2m"];
const ACTIONS: [&str; 4] = ["c1p", "c2p", "c1m", "c2m"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Action {
    #[serde(rename = "c1p")]
    Inc1,
    #[serde(rename = "c2p")]
    Inc2,
    #[serde(rename = "c1m")]
    Dec1,
    #[serde(rename = "c2m")]
    Dec2,
}

impl Action {
    pub fn symbol(self) -> &'static str {
        match self {
            Action::Inc1 => "c1p",
            Action::Inc2 => "c2p",
            Action::Dec1 => "c1m",
            Action::Dec2 => "c2m",
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A machine given by named states and four transition tables.
///
/// `(p, q)` in `t1_plus` increments counter 1 and moves from `p` to `q`.
/// `(p, q, r)` in `t1_minus` moves to `q` if counter 1 is zero, and otherwise
/// decrements it and moves to `r`. The `2` tables act on counter 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCounterMachine {
    pub states: Vec<String>,
    #[serde(default)]
    pub t1_plus: Vec<(String, String)>,
    #[serde(default)]
    pub t2_plus: Vec<(String, String)>,
    #[serde(default)]
    pub t1_minus: Vec<(String, String, String)>,
    #[serde(default)]
    pub t2_minus: Vec<(String, String, String)>,
    pub init: String,
    pub halt: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    UnknownState(String),
    DuplicateState(String),
    NoStates,
    Nondeterministic { state: String, transitions: usize },
    HaltHasTransition(String),
    SharedTransition { state: String, tables: &'static str },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownState(s) => write!(f, "unknown state {s:?}"),
            Violation::DuplicateState(s) => write!(f, "state {s:?} is listed twice"),
            Violation::NoStates => f.write_str("no states"),
            Violation::Nondeterministic { state, transitions } => {
                write!(f, "state {state:?} has {transitions} outgoing transitions")
            }
            Violation::HaltHasTransition(s) => write!(f, "halting state {s:?} has an outgoing transition"),
            Violation::SharedTransition { state, tables } => {
                write!(f, "state {state:?} has the same transition in {tables}")
            }
        }
    }
}

/// The transition leaving a state, with successors as state indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Move {
    Inc { counter: usize, next: usize },
    Dec { counter: usize, zero: usize, nonzero: usize },
}

impl TwoCounterMachine {
    /// Every violated invariant; empty when the machine is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.states.is_empty() {
            out.push(Violation::NoStates);
        }
        let mut seen = BTreeSet::new();
        for s in &self.states {
            if !seen.insert(s) {
                out.push(Violation::DuplicateState(s.clone()));
            }
        }
        let mut unknown = BTreeSet::new();
        let mut check = |s: &String| {
            if !seen.contains(s) {
                unknown.insert(s.clone());
            }
        };
        check(&self.init);
        check(&self.halt);
        for (p, q) in self.t1_plus.iter().chain(&self.t2_plus) {
            check(p);
            check(q);
        }
        for (p, q, r) in self.t1_minus.iter().chain(&self.t2_minus) {
            check(p);
            check(q);
            check(r);
        }
        out.extend(unknown.into_iter().map(Violation::UnknownState));

        let mut outgoing: BTreeMap<&String, usize> = BTreeMap::new();
        let sources = self
            .t1_plus
            .iter()
            .chain(&self.t2_plus)
            .map(|(p, _)| p)
            .chain(self.t1_minus.iter().chain(&self.t2_minus).map(|(p, _, _)| p));
        for p in sources {
            *outgoing.entry(p).or_default() += 1;
        }
        for s in &self.states {
            let n = outgoing.get(s).copied().unwrap_or(0);
            if n > 1 {
                out.push(Violation::Nondeterministic {
                    state: s.clone(),
                    transitions: n,
                });
            }
        }
        if outgoing.contains_key(&self.halt) {
            out.push(Violation::HaltHasTransition(self.halt.clone()));
        }
        for t in &self.t1_plus {
            if self.t2_plus.contains(t) {
                out.push(Violation::SharedTransition {
                    state: t.0.clone(),
                    tables: "t1_plus and t2_plus",
                });
            }
        }
        for t in &self.t1_minus {
            if self.t2_minus.contains(t) {
                out.push(Violation::SharedTransition {
                    state: t.0.clone(),
                    tables: "t1_minus and t2_minus",
                });
            }
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidMachine(v))
        }
    }

    fn index(&self, name: &str) -> usize {
        self.states.iter().position(|s| s == name).expect("validated machine")
    }

    fn moves(&self) -> Vec<Option<Move>> {
        let mut m = vec![None; self.states.len()];
        for (counter, table) in [(0, &self.t1_plus), (1, &self.t2_plus)] {
            for (p, q) in table {
                m[self.index(p)] = Some(Move::Inc {
                    counter,
                    next: self.index(q),
                });
            }
        }
        for (counter, table) in [(0, &self.t1_minus), (1, &self.t2_minus)] {
            for (p, q, r) in table {
                m[self.index(p)] = Some(Move::Dec {
                    counter,
                    zero: self.index(q),
                    nonzero: self.index(r),
                });
            }
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Configuration {
    pub state: String,
    pub c1: u64,
    pub c2: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub action: Action,
    pub config: Configuration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExecutionTrace {
    pub start: Configuration,
    pub steps: Vec<TraceStep>,
}

impl ExecutionTrace {
    pub fn last(&self) -> &Configuration {
        self.steps.last().map_or(&self.start, |s| &s.config)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum RunOutcome {
    Halted { trace: ExecutionTrace },
    OutOfBudget { trace: ExecutionTrace },
    Stuck { config: Configuration },
}

/// Runs the machine from `(n1, n2)` for at most `max_steps` transitions.
pub fn run(machine: &TwoCounterMachine, n1: u64, n2: u64, max_steps: usize) -> Result<RunOutcome> {
    machine.check()?;
    let moves = machine.moves();
    let halt = machine.index(&machine.halt);
    let mut state = machine.index(&machine.init);
    let mut counters = [n1, n2];
    let config = |state: usize, c: [u64; 2]| Configuration {
        state: machine.states[state].clone(),
        c1: c[0],
        c2: c[1],
    };
    let mut trace = ExecutionTrace {
        start: config(state, counters),
        steps: Vec::new(),
    };
    loop {
        if state == halt {
            return Ok(RunOutcome::Halted { trace });
        }
        if trace.steps.len() >= max_steps {
            return Ok(RunOutcome::OutOfBudget { trace });
        }
        let action = match moves[state] {
            None => return Ok(RunOutcome::Stuck {
                config: config(state, counters),
            }),
            Some(Move::Inc { counter, next }) => {
                counters[counter] += 1;
                state = next;
                [Action::Inc1, Action::Inc2][counter]
            }
            Some(Move::Dec { counter, zero, nonzero }) => {
                if counters[counter] == 0 {
                    state = zero;
                } else {
                    counters[counter] -= 1;
                    state = nonzero;
                }
                [Action::Dec1, Action::Dec2][counter]
            }
        };
        trace.steps.push(TraceStep {
            action,
            config: config(state, counters),
        });
    }
}

/// The execution word of a nonempty trace. Counter values after the last
/// action are not written.
pub fn encode_trace_word(trace: &ExecutionTrace) -> Result<Word> {
    if trace.steps.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let mut w = Vec::new();
    let block = |w: &mut Vec<String>, c: &Configuration| {
        w.extend(std::iter::repeat_n("a".to_string(), c.c1 as usize));
        w.extend(std::iter::repeat_n("b".to_string(), c.c2 as usize));
    };
    block(&mut w, &trace.start);
    let last = trace.steps.len() - 1;
    for (i, step) in trace.steps.iter().enumerate() {
        w.push(step.action.symbol().to_string());
        if i < last {
            block(&mut w, &step.config);
        }
    }
    Ok(Word(w))
}

/// Compiles `machine` and `n` into an automaton over [`CHECKER_ALPHABET`]
/// whose value is `-1` on the word of the halting run from `(n, 0)` and at
/// least `0` on every other nonempty word.
///
/// The automaton is a union of checkers sharing an initial state `P` and a
/// final state `Q`, both looping on every letter. Each checker values a word
/// `0` or more when it finds a defect, and `-1` or `-∞` otherwise:
/// - shape: the word is in `a*(Ω a* b*)* Ω`, with `Ω` the action letters;
/// - states: the actions follow the machine from its initial state to its
///   halting state, with zero tests read off the preceding block;
/// - counters: each block between two actions agrees with the action on both
///   counters;
/// - initialization: the first block is `a^n`.
///
/// All weights lie in `{-n-1, -2, -1, 0, 1, n-1}`.
pub fn build_checker(machine: &TwoCounterMachine, n: u64) -> Result<MaxPlusAutomaton> {
    machine.check()?;
    let n = Int::from(n);
    let mut b = AutomatonBuilder::new(&CHECKER_ALPHABET);
    let p = b.add_state(true, false);
    let q = b.add_state(false, true);
    b.add_all(p, &CHECKER_ALPHABET, p, 0);
    b.add_all(q, &CHECKER_ALPHABET, q, 0);

    shape_checker(&mut b, p, q);
    state_checker(&mut b, machine, q);
    counter_checker(&mut b, p, q, ["a", "b"], ["c1p", "c1m"], ["c2p", "c2m"]);
    counter_checker(&mut b, p, q, ["b", "a"], ["c2p", "c2m"], ["c1p", "c1m"]);

    // First block a^m: max(m - n - 1, n - m - 1) = |m - n| - 1.
    let up = b.add_state(true, false);
    b.add(up, "a", up, 1);
    b.add_all(up, &ACTIONS, q, -&n - Int::from(1));
    let down = b.add_state(true, false);
    b.add(down, "a", down, -1);
    b.add_all(down, &ACTIONS, q, &n - &Int::from(1));

    b.build()
}

/// Value `0` on words outside `a*(Ω a* b*)* Ω`: a `b` before the first
/// action, a factor `ba`, or a last letter other than an action.
fn shape_checker(b: &mut AutomatonBuilder, p: usize, q: usize) {
    let head = b.add_state(true, false);
    b.add(head, "a", head, 0);
    b.add(head, "b", q, 0);
    let end = b.add_state(false, true);
    b.add_all(p, &["a", "b"], end, 0);
    let after_b = b.add_state(false, false);
    b.add(p, "b", after_b, 0);
    b.add(after_b, "a", q, 0);
}

/// Follows the machine deterministically; any missing transition falls into
/// `q`. Every state is final except the halting state.
fn state_checker(b: &mut AutomatonBuilder, machine: &TwoCounterMachine, q: usize) {
    let moves = machine.moves();
    let halt = machine.index(&machine.halt);
    let init = machine.index(&machine.init);
    let base: Vec<usize> = (0..machine.states.len())
        .map(|i| b.add_state(i == init, i != halt))
        .collect();
    for (i, mv) in moves.iter().enumerate() {
        let s = base[i];
        let mut handled: Vec<&str> = Vec::new();
        match *mv {
            None => {
                b.add_all(s, &["a", "b"], s, 0);
                handled.extend(["a", "b"]);
            }
            Some(Move::Inc { counter, next }) => {
                b.add_all(s, &["a", "b"], s, 0);
                let letter = ["c1p", "c2p"][counter];
                b.add(s, letter, base[next], 0);
                handled.extend(["a", "b", letter]);
            }
            Some(Move::Dec { counter, zero, nonzero }) => {
                // Counter 1 lives in the a-block, counter 2 in the b-block.
                let (mine, other) = [("a", "b"), ("b", "a")][counter];
                let letter = ["c1m", "c2m"][counter];
                let seen = b.add_state(false, true);
                b.add(s, other, s, 0);
                b.add(s, mine, seen, 0);
                b.add(s, letter, base[zero], 0);
                b.add_all(seen, &["a", "b"], seen, 0);
                b.add(seen, letter, base[nonzero], 0);
                for l in ACTIONS.iter().filter(|&&l| l != letter) {
                    b.add(seen, l, q, 0);
                }
                handled.extend(["a", "b", letter]);
            }
        }
        for l in CHECKER_ALPHABET.iter().filter(|l| !handled.contains(l)) {
            b.add(s, l, q, 0);
        }
    }
}

/// Checks one counter across every action followed by another action. The
/// counter is read from `unit` blocks; `others` are skipped with weight 0.
/// `inc`/`dec` are the actions on this counter, `keep` those on the other.
///
/// For a block of `k` units, an action, and a block of `k'` units, the
/// value is `|k' - (k + 1)| - 1` after an increment, `|k' - k| - 1` after an
/// action on the other counter, `|k' - (k - 1)| - 1` after a decrement with
/// `k > 0` and `k' - 1` after a decrement with `k = 0`.
fn counter_checker(
    b: &mut AutomatonBuilder,
    p: usize,
    q: usize,
    [unit, other]: [&str; 2],
    [inc, dec]: [&str; 2],
    keep: [&str; 2],
) {
    // After the action: `minus` counts -k', `plus` counts +k'.
    let minus = b.add_state(false, false);
    b.add(minus, unit, minus, -1);
    b.add(minus, other, minus, 0);
    let plus = b.add_state(false, false);
    b.add(plus, unit, plus, 1);
    b.add(plus, other, plus, 0);
    for s in [minus, plus] {
        b.add_all(s, &ACTIONS, q, 0);
    }

    // Increment and unchanged: max(k - k', k' - k - 2) and max(k - k' - 1, k' - k - 1).
    let count_up = b.add_state(true, false);
    b.add(count_up, unit, count_up, 1);
    b.add(count_up, other, count_up, 0);
    b.add(count_up, inc, minus, 0);
    b.add_all(count_up, &keep, minus, -1);
    let count_down = b.add_state(true, false);
    b.add(count_down, unit, count_down, -1);
    b.add(count_down, other, count_down, 0);
    b.add(count_down, inc, plus, -2);
    b.add_all(count_down, &keep, plus, -1);

    // Decrement of an empty counter: k' - 1.
    let empty = b.add_state(true, false);
    b.add(empty, other, empty, 0);
    b.add(empty, dec, plus, -1);

    // Decrement of a positive counter: max(k - k' - 2, k' - k).
    let entry = b.add_state(true, false);
    b.add(entry, other, entry, 0);
    let dec_up = b.add_state(false, false);
    b.add(entry, unit, dec_up, 1);
    b.add(dec_up, unit, dec_up, 1);
    b.add(dec_up, other, dec_up, 0);
    b.add(dec_up, dec, minus, -2);
    let dec_down = b.add_state(false, false);
    b.add(entry, unit, dec_down, -1);
    b.add(dec_down, unit, dec_down, -1);
    b.add(dec_down, other, dec_down, 0);
    b.add(dec_down, dec, plus, 0);

    for s in [count_up, count_down, empty, entry] {
        b.add_all(p, &ACTIONS, s, 0);
    }
}

/// The family of the star-extended checker (seven generators, the separator
/// last) and its image under `hat`.
pub fn reduction_pipeline(machine: &TwoCounterMachine, n: u64) -> Result<(MatrixFamily, MatrixFamily)> {
    let checker = star_extend(&build_checker(machine, n)?, STAR)?;
    let gamma = MatrixFamily::new(checker.gamma())?;
    let hatted = hat_family(&gamma)?;
    Ok((gamma, hatted))
}

/// Small machines used throughout the test suites.
pub mod fixtures {
    use super::TwoCounterMachine;

    fn names(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    fn pair(p: &str, q: &str) -> (String, String) {
        (p.into(), q.into())
    }

    fn triple(p: &str, q: &str, r: &str) -> (String, String, String) {
        (p.into(), q.into(), r.into())
    }

    fn empty(states: &[&str], init: &str, halt: &str) -> TwoCounterMachine {
        TwoCounterMachine {
            states: names(states),
            t1_plus: vec![],
            t2_plus: vec![],
            t1_minus: vec![],
            t2_minus: vec![],
            init: init.into(),
            halt: halt.into(),
        }
    }

    /// Increments counter 1, then counter 2, then halts.
    pub fn inc_inc() -> TwoCounterMachine {
        TwoCounterMachine {
            t1_plus: vec![pair("q0", "q1")],
            t2_plus: vec![pair("q1", "qh")],
            ..empty(&["q0", "q1", "qh"], "q0", "qh")
        }
    }

    /// Empties counter 1, then halts.
    pub fn drain() -> TwoCounterMachine {
        TwoCounterMachine {
            t1_minus: vec![triple("q0", "qh", "q0")],
            ..empty(&["q0", "qh"], "q0", "qh")
        }
    }

    /// Moves counter 1 into counter 2, then empties counter 2 and halts.
    pub fn transfer() -> TwoCounterMachine {
        TwoCounterMachine {
            t1_minus: vec![triple("q0", "q2", "q1")],
            t2_plus: vec![pair("q1", "q0")],
            t2_minus: vec![triple("q2", "qh", "q2")],
            ..empty(&["q0", "q1", "q2", "qh"], "q0", "qh")
        }
    }

    /// Increments counter 1 forever.
    pub fn forever() -> TwoCounterMachine {
        TwoCounterMachine {
            t1_plus: vec![pair("q0", "q0")],
            ..empty(&["q0", "qh"], "q0", "qh")
        }
    }
}
