use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use maxplus::constructions::{self, STAR};
use maxplus::counter::{self, RunOutcome};
use maxplus::spectral::{critical_graph, spectral_radius, ultimate_rank};
use maxplus::{io, jsr, oracle};
use maxplus::{MatrixFamily, MaxPlusAutomaton, TropicalMatrix, TropicalValue, Word};

#[derive(Parser)]
#[command(name = "maxplus", version, about = "Max-plus matrices, automata and semigroups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cap on the number of matrices or states any enumeration may hold.
    #[arg(long, global = true, default_value_t = jsr::DEFAULT_MAX_ELEMENTS)]
    max_elements: usize,
    /// Cap on search lengths; also the default length when none is given.
    #[arg(long, global = true, default_value_t = jsr::DEFAULT_MAX_LEN)]
    max_len: usize,
    /// Cap on machine steps and brute-force work.
    #[arg(long, global = true, default_value_t = oracle::DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Value of a word.
    Eval {
        #[arg(short = 'a', long = "automaton")]
        automaton: PathBuf,
        #[arg(short = 'w', long)]
        word: String,
    },
    /// Spectral radius of a matrix.
    Rho { matrix: PathBuf },
    /// Critical graph of a matrix, with 1-based vertices.
    CriticalGraph { matrix: PathBuf },
    /// Ultimate rank of a matrix, or of a family with --exact or --bound.
    Urk {
        #[arg(long, conflicts_with = "bound")]
        exact: bool,
        #[arg(long, value_name = "L")]
        bound: Option<usize>,
        file: PathBuf,
    },
    /// Joint spectral radius of a family.
    Jsr {
        #[arg(long, group = "mode")]
        exact: bool,
        #[arg(long, value_name = "L", group = "mode")]
        bound: Option<usize>,
        #[arg(long, value_name = "L", group = "mode")]
        certify_negative: Option<usize>,
        family: PathBuf,
    },
    /// The normalized semigroup of a finite-entry family.
    Closure {
        family: PathBuf,
        #[arg(long)]
        max: Option<usize>,
    },
    #[command(subcommand)]
    Construct(Construct),
    /// Two-counter machines.
    #[command(subcommand)]
    Cm(Cm),
    /// Shortest word on which the first automaton exceeds the second.
    Compare {
        #[arg(short = 'a')]
        first: PathBuf,
        #[arg(short = 'b')]
        second: PathBuf,
        #[arg(short = 'L')]
        len: Option<usize>,
    },
    /// Shortest word with a negative value.
    FindNegative {
        #[arg(short = 'a', long = "automaton")]
        automaton: PathBuf,
        #[arg(short = 'L')]
        len: Option<usize>,
        /// Count -inf as negative.
        #[arg(long)]
        bottom_negative: bool,
    },
    #[command(subcommand, hide = true)]
    Oracle(OracleCmd),
}

#[derive(Subcommand)]
enum Construct {
    /// Adds a separator letter that resets to the initial states.
    Star {
        #[arg(short = 'a', long = "automaton")]
        automaton: PathBuf,
        #[arg(long, default_value = STAR)]
        symbol: String,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Borders a matrix, or every generator of a family, with -inf and a 0 corner.
    Hat {
        input: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Borders a {0,-1} matrix or family with -1 and a 0 corner.
    Tilde {
        input: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// The three-matrix family of an NFA over a two-letter alphabet.
    NfaGamma {
        nfa: PathBuf,
        /// Replace -inf entries by -1.
        #[arg(long)]
        minus_one: bool,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Cm {
    /// Runs a machine from (n1, n2).
    Run {
        machine: PathBuf,
        #[arg(long, default_value_t = 0)]
        n1: u64,
        #[arg(long, default_value_t = 0)]
        n2: u64,
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// The word of the halting run from (n1, 0).
    Encode {
        machine: PathBuf,
        #[arg(long)]
        n1: u64,
    },
    /// The checker automaton for input n.
    Compile {
        machine: PathBuf,
        #[arg(long)]
        n: u64,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// The seven-matrix family of the checker; --hat-out also writes its hat.
    Pipeline {
        machine: PathBuf,
        #[arg(long)]
        n: u64,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
        #[arg(long)]
        hat_out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    Rho { matrix: PathBuf },
    JsrTrunc {
        family: PathBuf,
        #[arg(short = 'L')]
        len: Option<usize>,
    },
    MinWord {
        #[arg(short = 'a', long = "automaton")]
        automaton: PathBuf,
        #[arg(short = 'L')]
        len: Option<usize>,
    },
    Universal { nfa: PathBuf },
    /// Compares production code with the oracles on seeded random inputs.
    Selfcheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

enum Output {
    Text(String),
    Both { text: String, value: Value },
    Nothing,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.global, &cli.command) {
        Ok(out) => {
            match (out, cli.global.format) {
                (Output::Text(t), _) => print!("{t}"),
                (Output::Both { text, .. }, Format::Text) => print!("{text}"),
                (Output::Both { value, .. }, Format::Structured) => {
                    println!("{}", serde_json::to_string_pretty(&value).expect("json values serialize"))
                }
                (Output::Nothing, _) => {}
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let reason = format!("{e:#}").replace('\n', " ");
            eprintln!("error: {reason}");
            ExitCode::from(1)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn matrix(path: &Path) -> Result<TropicalMatrix> {
    Ok(io::parse_matrix(&read(path)?)?)
}

fn family(path: &Path) -> Result<MatrixFamily> {
    Ok(io::parse_family(&read(path)?)?)
}

fn automaton(path: &Path) -> Result<MaxPlusAutomaton> {
    Ok(io::parse_automaton(&read(path)?)?)
}

fn length(g: &Global, requested: Option<usize>) -> Result<usize> {
    let l = requested.unwrap_or(g.max_len);
    if l > g.max_len {
        bail!("search length {l} exceeds --max-len {}", g.max_len);
    }
    if l == 0 {
        bail!("search length must be positive");
    }
    Ok(l)
}

fn emit(json: String, out: &Option<PathBuf>) -> Result<Output> {
    match out {
        Some(path) => {
            fs::write(path, json + "\n").with_context(|| format!("cannot write {}", path.display()))?;
            Ok(Output::Nothing)
        }
        None => Ok(Output::Text(json + "\n")),
    }
}

fn value(text: impl ToString) -> Output {
    let text = text.to_string();
    Output::Both {
        value: json!(text),
        text: text + "\n",
    }
}

fn one_based(word: &[usize]) -> Vec<usize> {
    word.iter().map(|i| i + 1).collect()
}

fn dispatch(g: &Global, command: &Command) -> Result<Output> {
    match command {
        Command::Eval { automaton: path, word } => {
            let a = automaton(path)?;
            let w = Word::parse(word, a.alphabet())?;
            Ok(value(a.evaluate(&w)?))
        }
        Command::Rho { matrix: path } => Ok(value(spectral_radius(&matrix(path)?)?)),
        Command::CriticalGraph { matrix: path } => {
            let cg = critical_graph(&matrix(path)?)?;
            let edges: Vec<Value> = cg
                .graph
                .edges
                .iter()
                .map(|(u, v, w)| json!([u + 1, v + 1, w.to_string()]))
                .collect();
            let sccs: Vec<Value> = cg
                .components
                .iter()
                .map(|c| json!({"vertices": one_based(&c.vertices), "cyclicity": c.cyclicity}))
                .collect();
            Ok(Output::Both {
                text: cg.to_string(),
                value: json!({"rho": cg.radius, "edges": edges, "sccs": sccs}),
            })
        }
        Command::Urk { exact, bound, file } => {
            let urk = if *exact {
                jsr::urk_exact_finite_budgeted(&family(file)?, g.max_elements)?
            } else if let Some(l) = bound {
                jsr::urk_upper_bound(&family(file)?, length(g, Some(*l))?)?
            } else {
                ultimate_rank(&matrix(file)?)?
            };
            Ok(value(urk))
        }
        Command::Jsr {
            exact,
            bound,
            certify_negative,
            family: path,
        } => {
            let f = family(path)?;
            if *exact {
                Ok(value(jsr::jsr_exact_finite_budgeted(&f, g.max_elements)?))
            } else if let Some(l) = bound {
                Ok(value(jsr::jsr_upper_bound_budgeted(&f, length(g, Some(*l))?, g.max_elements)?))
            } else if let Some(l) = certify_negative {
                let cert = jsr::certify_jsr_negative_budgeted(&f, length(g, Some(*l))?, g.max_elements)?;
                Ok(match cert {
                    Some(c) => {
                        let word: Vec<String> = one_based(&c.word).iter().map(ToString::to_string).collect();
                        Output::Both {
                            text: format!("negative {} word {}\n", c.value, word.join(" ")),
                            value: json!({"certified": true, "value": c.value, "word": one_based(&c.word)}),
                        }
                    }
                    None => Output::Both {
                        text: "none\n".into(),
                        value: json!({"certified": false}),
                    },
                })
            } else {
                bail!("choose one of --exact, --bound L, --certify-negative L")
            }
        }
        Command::Closure { family: path, max } => {
            let f = family(path)?;
            let c = jsr::normalized_closure(&f, max.unwrap_or(g.max_elements))?;
            let mut text = format!("size {}\n", c.len());
            let mut items = Vec::new();
            for (m, w) in c.elements.iter().zip(&c.witnesses) {
                let word: Vec<String> = one_based(w).iter().map(ToString::to_string).collect();
                text.push_str(&format!("word {}\n{m}\n", word.join(" ")));
                items.push(json!({"word": one_based(w), "matrix": m}));
            }
            Ok(Output::Both {
                text,
                value: json!({"size": c.len(), "elements": items}),
            })
        }
        Command::Construct(c) => construct(c),
        Command::Cm(c) => cm(g, c),
        Command::Compare { first, second, len } => {
            let (a, b) = (automaton(first)?, automaton(second)?);
            Ok(match a.compare_bounded(&b, length(g, *len)?)? {
                Some((w, x, y)) => Output::Both {
                    text: format!("{w}: {x} > {y}\n"),
                    value: json!({"found": true, "word": w.0, "first": x, "second": y}),
                },
                None => Output::Both {
                    text: "none\n".into(),
                    value: json!({"found": false}),
                },
            })
        }
        Command::FindNegative {
            automaton: path,
            len,
            bottom_negative,
        } => {
            let a = automaton(path)?;
            Ok(match a.find_negative_word(length(g, *len)?, *bottom_negative) {
                Some((w, v)) => Output::Both {
                    text: format!("{w}: {v}\n"),
                    value: json!({"found": true, "word": w.0, "value": v}),
                },
                None => Output::Both {
                    text: "none\n".into(),
                    value: json!({"found": false}),
                },
            })
        }
        Command::Oracle(o) => oracle_cmd(g, o),
    }
}

fn construct(c: &Construct) -> Result<Output> {
    match c {
        Construct::Star { automaton: path, symbol, out } => {
            let a = constructions::star_extend(&automaton(path)?, symbol)?;
            emit(io::automaton_to_json(&a), out)
        }
        Construct::Hat { input, out } => lift(input, out, constructions::hat),
        Construct::Tilde { input, out } => lift(input, out, constructions::tilde),
        Construct::NfaGamma { nfa, minus_one, out } => {
            let nfa = io::parse_nfa(&read(nfa)?)?;
            emit(io::family_to_json(&constructions::nfa_to_gamma(&nfa, *minus_one)?), out)
        }
    }
}

fn lift(input: &Path, out: &Option<PathBuf>, f: fn(&TropicalMatrix) -> maxplus::Result<TropicalMatrix>) -> Result<Output> {
    let text = read(input)?;
    if text.trim_start().starts_with('{') {
        let family = io::parse_family(&text)?.map(f)?;
        emit(io::family_to_json(&family), out)
    } else {
        emit(io::matrix_to_json(&f(&io::parse_matrix(&text)?)?), out)
    }
}

fn cm(g: &Global, c: &Cm) -> Result<Output> {
    match c {
        Cm::Run {
            machine,
            n1,
            n2,
            max_steps,
        } => {
            let m = io::parse_machine(&read(machine)?)?;
            let outcome = counter::run(&m, *n1, *n2, max_steps.unwrap_or(g.budget))?;
            let mut text = String::new();
            let trace = match &outcome {
                RunOutcome::Halted { trace } | RunOutcome::OutOfBudget { trace } => Some(trace),
                RunOutcome::Stuck { .. } => None,
            };
            if let Some(t) = trace {
                text.push_str(&format!("{} {} {}\n", t.start.state, t.start.c1, t.start.c2));
                for s in &t.steps {
                    text.push_str(&format!("{} -> {} {} {}\n", s.action, s.config.state, s.config.c1, s.config.c2));
                }
            }
            text.push_str(match &outcome {
                RunOutcome::Halted { .. } => "halted\n",
                RunOutcome::OutOfBudget { .. } => "out of budget\n",
                RunOutcome::Stuck { .. } => "stuck\n",
            });
            if let RunOutcome::Stuck { config } = &outcome {
                text = format!("{} {} {}\n{text}", config.state, config.c1, config.c2);
            }
            Ok(Output::Both {
                text,
                value: serde_json::to_value(&outcome)?,
            })
        }
        Cm::Encode { machine, n1 } => {
            let m = io::parse_machine(&read(machine)?)?;
            match counter::run(&m, *n1, 0, g.budget)? {
                RunOutcome::Halted { trace } => {
                    let w = counter::encode_trace_word(&trace)?;
                    Ok(Output::Both {
                        text: format!("{}\n", w.0.join(" ")),
                        value: json!(w.0),
                    })
                }
                RunOutcome::OutOfBudget { .. } => bail!("machine did not halt within {} steps", g.budget),
                RunOutcome::Stuck { config } => bail!("machine is stuck in state {}", config.state),
            }
        }
        Cm::Compile { machine, n, out } => {
            let m = io::parse_machine(&read(machine)?)?;
            emit(io::automaton_to_json(&counter::build_checker(&m, *n)?), out)
        }
        Cm::Pipeline {
            machine,
            n,
            out,
            hat_out,
        } => {
            let m = io::parse_machine(&read(machine)?)?;
            let (gamma, hatted) = counter::reduction_pipeline(&m, *n)?;
            if let Some(path) = hat_out {
                emit(io::family_to_json(&hatted), &Some(path.clone()))?;
            }
            emit(io::family_to_json(&gamma), out)
        }
    }
}

fn oracle_cmd(g: &Global, o: &OracleCmd) -> Result<Output> {
    match o {
        OracleCmd::Rho { matrix: path } => Ok(value(oracle::brute_rho(&matrix(path)?)?)),
        OracleCmd::JsrTrunc { family: path, len } => {
            let t = oracle::brute_jsr_trunc_budgeted(&family(path)?, length(g, *len)?, g.budget)?;
            let mut text = format!("upper {}\n", t.upper);
            let mut rows = Vec::new();
            for (i, m) in t.per_length.iter().enumerate() {
                text.push_str(&format!("length {} norm {} rho {}\n", i + 1, m.norm, m.rho));
                rows.push(json!({"length": i + 1, "norm": m.norm, "rho": m.rho}));
            }
            Ok(Output::Both {
                text,
                value: json!({"upper": t.upper, "per_length": rows}),
            })
        }
        OracleCmd::MinWord { automaton: path, len } => {
            let (w, v) = oracle::brute_min_word(&automaton(path)?, length(g, *len)?)?;
            Ok(Output::Both {
                text: format!("{w}: {v}\n"),
                value: json!({"word": w.0, "value": v}),
            })
        }
        OracleCmd::Universal { nfa } => {
            let nfa = io::parse_nfa(&read(nfa)?)?;
            Ok(match oracle::nfa_shortest_rejected(&nfa)? {
                None => Output::Both {
                    text: "universal\n".into(),
                    value: json!({"universal": true}),
                },
                Some(w) => Output::Both {
                    text: format!("rejects {}\n", w.join(" ")),
                    value: json!({"universal": false, "rejected": w}),
                },
            })
        }
        OracleCmd::Selfcheck { seed, samples } => selfcheck(*seed, *samples),
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, d: usize, bottom: f64) -> TropicalMatrix {
    let entries = (0..d * d)
        .map(|_| {
            if rng.gen_bool(bottom) {
                TropicalValue::Bottom
            } else {
                TropicalValue::finite(rng.gen_range(-3..=3))
            }
        })
        .collect();
    TropicalMatrix::new(d, d, entries).expect("square by construction")
}

fn selfcheck(seed: u64, samples: usize) -> Result<Output> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..samples {
        let d = rng.gen_range(1..=4);
        let m = random_matrix(&mut rng, d, 0.3);
        if spectral_radius(&m)? != oracle::brute_rho(&m)? {
            failures.push(format!("rho sample {i}: {}", io::matrix_to_json(&m)));
        }
        let d = rng.gen_range(1..=3);
        let gens = (0..rng.gen_range(1..=2)).map(|_| random_matrix(&mut rng, d, 0.2)).collect();
        let f = MatrixFamily::new(gens)?;
        if jsr::jsr_upper_bound(&f, 4)? != oracle::brute_jsr_trunc(&f, 4)?.upper {
            failures.push(format!("jsr sample {i}: {}", io::family_to_json(&f).replace('\n', "")));
        }
    }
    if !failures.is_empty() {
        bail!("{} mismatches: {}", failures.len(), failures.join("; "));
    }
    Ok(Output::Both {
        text: format!("ok {samples} samples seed {seed}\n"),
        value: json!({"ok": true, "samples": samples, "seed": seed}),
    })
}
