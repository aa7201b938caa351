use std::process::{Command, Output};

fn replicap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_replicap")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(line: &'a str, key: &str) -> &'a str {
    let start = line.find(&format!("{key}=")).unwrap_or_else(|| panic!("{key} missing in {line}")) + key.len() + 1;
    line[start..].split(' ').next().unwrap()
}

#[test]
fn table1_passes() {
    let o = replicap(&["table1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.ends_with("\tPASS")).count(), 21);
    assert!(!text.contains("FAIL"));
}

#[test]
fn enumerate_matches_first_reference_row() {
    let o = replicap(&["enumerate", "--rule", "rt", "--seed", "01", "--k", "2", "--max-len", "14"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let counts: Vec<&str> = text.lines().skip(1).map(|l| l.split('\t').nth(1).unwrap()).collect();
    assert_eq!(counts, ["1", "1", "3", "10", "37", "145", "584"]);
}

#[test]
fn enumerate_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = replicap(&[
        "enumerate", "--system", "variant:rt; k=2; seed=01", "--max-len", "8", "--witnesses", "--traces", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let profile = std::fs::read_to_string(out.join("profile.tsv")).unwrap();
    assert_eq!(profile, "n\tcount\n2\t1\n4\t1\n6\t3\n8\t10\n");
    let witnesses = std::fs::read_to_string(out.join("witnesses.txt")).unwrap();
    let traces = std::fs::read_to_string(out.join("traces.txt")).unwrap();
    assert_eq!(witnesses.lines().count(), 15);
    assert_eq!(traces.lines().count(), 15);
}

#[test]
fn exit_codes() {
    let o = replicap(&["enumerate", "--rule", "rt", "--seed", "01", "--k", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = replicap(&["enumerate", "--rule", "rt", "--seed", "0", "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = replicap(&["enumerate", "--rule", "rt", "--seed", "012", "--k", "1", "--max-states", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("n\tcount\n3\t1\n"));
    let o = replicap(&["enumerate", "--rule", "spiral", "--seed", "01", "--k", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn capacity_records() {
    let o = replicap(&["capacity", "--rule", "end", "--seed", "TCATGC", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let line = text.lines().find(|l| l.contains("kind=exact")).unwrap();
    assert_eq!(field(line, "value"), "2.000000");

    let text = stdout(&replicap(&["capacity", "--rule", "tan", "--seed", "0011", "--k", "2"]));
    let line = text.lines().find(|l| l.contains("kind=zero-exact")).unwrap();
    assert_eq!(field(line, "witness"), "bins=3");

    let text = stdout(&replicap(&["capacity", "--rule", "gap", "--seed", "0101", "--k", "2", "--kprime", "2"]));
    let line = text.lines().find(|l| l.contains("provenance=gap-zero-iff-periodic")).unwrap();
    assert_eq!(field(line, "kind"), "zero-exact");
    assert_eq!(field(line, "value"), "0.000000");
}

#[test]
fn automaton_records() {
    let o = replicap(&["automaton", "--delta", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let first = text.lines().next().unwrap().to_string();
    assert!(first.starts_with("// "));
    assert_eq!(field(&first, "vertices"), "3");
    assert_eq!(field(&first, "lambda"), "2.324718");
    assert!(text.contains("digraph G {"));

    let first = stdout(&replicap(&["automaton", "--delta", "2"])).lines().next().unwrap().to_string();
    assert_eq!(field(&first, "lambda"), "2.000000");

    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let o = replicap(&["automaton", "--sigma", "2", "--d", "2", "--allowed", "0", "--out", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let record = stdout(&o);
    assert!(field(record.trim(), "lambda").parse::<f64>().unwrap() < 2.0);
    assert!(field(record.trim(), "removed").parse::<usize>().unwrap() >= 1);
    assert!(std::fs::read_to_string(dot).unwrap().starts_with("digraph"));

    let o = replicap(&["automaton", "--sigma", "2", "--d", "2", "--allowed", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn membership_answers() {
    let o = replicap(&["membership", "--rule", "rt", "--seed", "01", "--k", "2", "--target", "0110", "--traces"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "target=0110 member=true trace=rt(0,2)");
    let o = replicap(&["membership", "--rule", "rt", "--seed", "01", "--k", "2", "--target", "0011"]);
    assert_eq!(stdout(&o).trim(), "target=0011 member=false");
    let o = replicap(&[
        "membership", "--rule", "rt", "--seed", "012", "--k", "1", "--target", "012210012", "--max-states", "5",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn construct_prints_trace() {
    let o = replicap(&["construct", "--procedure", "rt-push", "--seed", "0112", "--k", "2", "--symbol", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let output = text.lines().find_map(|l| l.strip_prefix("output=")).unwrap();
    assert!(output.ends_with('0'));
    assert!(text.lines().any(|l| l.starts_with("trace=rt(")));

    let o = replicap(&["construct", "--procedure", "tandem-compact", "--seed", "0", "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = replicap(&["construct", "--list"]);
    assert_eq!(stdout(&o).lines().count(), 7);
}

#[test]
fn config_file_roundtrip_and_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    let text = "command = \"enumerate\"\nrule = \"rt\"\nseed = \"01\"\nk = 2\nmax-len = 8\n";
    std::fs::write(&path, text).unwrap();
    let p = path.to_str().unwrap();

    let o = replicap(&["config", "--config", p]);
    assert_eq!(stdout(&o), text);
    let o = replicap(&["config", "--config", p, "--k", "3"]);
    assert!(stdout(&o).contains("k = 3\n"));

    let o = replicap(&["run", "--config", p]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n\tcount\n2\t1\n4\t1\n6\t3\n8\t10\n");
    let o = replicap(&["enumerate", "--config", p, "--max-len", "6"]);
    assert_eq!(stdout(&o), "n\tcount\n2\t1\n4\t1\n6\t3\n");

    std::fs::write(&path, "rule = \"rt\"\nflavour = 1\n").unwrap();
    assert_eq!(replicap(&["enumerate", "--config", p]).status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    let args = ["capacity", "--rule", "rt", "--seed", "0110", "--k", "2", "--block-power", "4"];
    assert_eq!(stdout(&replicap(&args)), stdout(&replicap(&args)));
}
