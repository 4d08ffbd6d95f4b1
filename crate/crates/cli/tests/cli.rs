use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use maxplus::constructions::Nfa;
use maxplus::counter::fixtures;
use maxplus::{io, MaxPlusAutomaton, TropicalMatrix, TropicalValue};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn maxplus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxplus")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = maxplus(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
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
    TropicalMatrix::new(d, d, entries).unwrap()
}

fn random_automaton(rng: &mut ChaCha8Rng) -> MaxPlusAutomaton {
    let d = rng.gen_range(1..=3);
    let mu = (0..2).map(|_| random_matrix(rng, d, 0.4)).collect();
    let mut initial: Vec<bool> = (0..d).map(|_| rng.gen_bool(0.5)).collect();
    initial[0] = true;
    let accepting = (0..d).map(|_| rng.gen_bool(0.7)).collect();
    MaxPlusAutomaton::new(vec!["a".into(), "b".into()], mu, initial, accepting).unwrap()
}

#[test]
fn radius_of_a_text_matrix() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "mu_a.txt", "1 -i\n-i 0\n");
    assert_eq!(stdout(&["rho", s(&m)]), "1\n");
    assert_eq!(stdout(&["urk", s(&m)]), "1\n");
    let cg = stdout(&["critical-graph", s(&m)]);
    assert!(cg.contains("scc 1: {1} cyclicity 1"), "{cg}");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", r#"{"dim": 2, "generators": [[[0, "-inf"], [0, 0]]]}"#);
    let out = maxplus(&["jsr", "--exact", s(&f)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("exact JSR requires finite entries"), "{err}");

    assert_eq!(maxplus(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(maxplus(&["rho"]).status.code(), Some(2));
    assert_eq!(maxplus(&["rho", "/nonexistent/m.txt"]).status.code(), Some(1));
    assert_eq!(maxplus(&["--max-len", "3", "jsr", "--bound", "4", s(&f)]).status.code(), Some(1));
}

#[test]
fn compiled_checker_values_the_encoded_run_at_minus_one() {
    let dir = TempDir::new().unwrap();
    for (name, machine) in [("inc", fixtures::inc_inc()), ("drain", fixtures::drain()), ("transfer", fixtures::transfer())] {
        let m = write(&dir, &format!("{name}.json"), &io::machine_to_json(&machine));
        for n in 0..3 {
            let a = dir.path().join(format!("{name}{n}.json"));
            stdout(&["cm", "compile", s(&m), "--n", &n.to_string(), "-o", s(&a)]);
            let word = stdout(&["cm", "encode", s(&m), "--n1", &n.to_string()]);
            assert_eq!(stdout(&["eval", "-a", s(&a), "-w", word.trim()]), "-1\n");
        }
    }
}

#[test]
fn machine_runs() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "forever.json", &io::machine_to_json(&fixtures::forever()));
    let text = stdout(&["cm", "run", s(&m), "--max-steps", "5"]);
    assert!(text.ends_with("out of budget\n"), "{text}");
    let out = maxplus(&["cm", "encode", s(&m), "--n1", "0", "--budget", "50"]);
    assert_eq!(out.status.code(), Some(1));

    let m = write(&dir, "inc.json", &io::machine_to_json(&fixtures::inc_inc()));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["--format", "structured", "cm", "run", s(&m)])).unwrap();
    assert_eq!(json["outcome"], "halted");
}

#[test]
fn pipeline_family_is_certified_negative() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "inc.json", &io::machine_to_json(&fixtures::inc_inc()));
    let g = dir.path().join("g.json");
    let h = dir.path().join("h.json");
    stdout(&["cm", "pipeline", s(&m), "--n", "0", "-o", s(&g), "--hat-out", s(&h)]);
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["--format", "structured", "jsr", "--certify-negative", "5", s(&g)])).unwrap();
    assert_eq!(json["certified"], true);
    assert!(json["value"].as_str().unwrap().starts_with('-'));
    let hat = io::parse_family(&std::fs::read_to_string(&h).unwrap()).unwrap();
    assert_eq!(hat.len(), 7);
}

#[test]
fn emitted_files_are_accepted_downstream() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let dir = TempDir::new().unwrap();
    for i in 0..25 {
        let d = rng.gen_range(1..=3);
        let m = random_matrix(&mut rng, d, 0.3);
        let mf = write(&dir, &format!("m{i}.json"), &io::matrix_to_json(&m));
        let hat = dir.path().join(format!("hat{i}.json"));
        stdout(&["construct", "hat", s(&mf), "-o", s(&hat)]);
        let hm = io::parse_matrix(&std::fs::read_to_string(&hat).unwrap()).unwrap();
        assert_eq!(hm, maxplus::constructions::hat(&m).unwrap());
        stdout(&["rho", s(&hat)]);

        let a = random_automaton(&mut rng);
        let af = write(&dir, &format!("a{i}.json"), &io::automaton_to_json(&a));
        let star = dir.path().join(format!("star{i}.json"));
        stdout(&["construct", "star", "-a", s(&af), "-o", s(&star)]);
        let e = io::parse_automaton(&std::fs::read_to_string(&star).unwrap()).unwrap();
        assert_eq!(e.dim(), a.dim() + 1);
        let v = a.evaluate(&maxplus::Word::from_symbols(&["a", "b"])).unwrap();
        let v2 = v.pow(2).to_string();
        assert_eq!(stdout(&["eval", "-a", s(&star), "-w", "*ab*ab*"]).trim(), v2);
        stdout(&["find-negative", "-a", s(&star), "-L", "4"]);
        stdout(&["compare", "-a", s(&af), "-b", s(&af), "-L", "3"]);

        let nfa = Nfa {
            states: 2,
            alphabet: vec!["a".into(), "b".into()],
            transitions: (0..4)
                .map(|_| (rng.gen_range(0..2), ["a", "b"][rng.gen_range(0..2)].to_string(), rng.gen_range(0..2)))
                .collect(),
            initial: vec![0],
            accepting: vec![rng.gen_range(0..2)],
        };
        let nf = write(&dir, &format!("n{i}.json"), &io::nfa_to_json(&nfa));
        let fam = dir.path().join(format!("fam{i}.json"));
        stdout(&["construct", "nfa-gamma", s(&nf), "--minus-one", "-o", s(&fam)]);
        let rho = stdout(&["jsr", "--exact", s(&fam)]);
        let universal = stdout(&["oracle", "universal", s(&nf)]) == "universal\n";
        assert_eq!(rho == "0\n", universal, "{rho}");
        stdout(&["closure", s(&fam)]);
        stdout(&["urk", "--exact", s(&fam)]);
        let tilde = dir.path().join(format!("tilde{i}.json"));
        stdout(&["construct", "tilde", s(&fam), "-o", s(&tilde)]);
        stdout(&["urk", "--bound", "3", s(&tilde)]);
    }
}

#[test]
fn structured_output_is_one_document_and_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", r#"{"dim": 2, "generators": [[[0, -1], [-1, 0]], [[-1, 0], [0, -1]]]}"#);
    let first = stdout(&["--format", "structured", "closure", s(&f)]);
    let json: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(json["size"].as_u64().unwrap() as usize, json["elements"].as_array().unwrap().len());
    assert_eq!(stdout(&["--format", "structured", "closure", s(&f)]), first);
    assert_eq!(stdout(&["oracle", "selfcheck", "--seed", "5", "--samples", "50"]), "ok 50 samples seed 5\n");
}
