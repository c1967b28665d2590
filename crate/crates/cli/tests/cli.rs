use std::io::Write;
use std::process::{Command, Output, Stdio};

fn gmu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gmu"))
        .args(args)
        .output()
        .expect("gmu runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn word_bounds_of_alternating_word() {
    let o = gmu(&["word", "bounds", "periodic:01", "--max-len", "4", "--window", "40"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "00\n11\n");
}

#[test]
fn prime_and_not_prime() {
    let o = gmu(&["graph", "prime", "--word", "101"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "prime\n");

    let o = gmu(&["graph", "prime", "--word", "0101"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "not prime: module -1 3\n");
}

#[test]
fn pattern_predicate_matches_search() {
    for w in ["0110", "11011", "011", "0000000"] {
        let a = gmu(&["graph", "prime", "--word", w]).status.code();
        let b = gmu(&["graph", "prime", "--pattern", "--word", w]).status.code();
        assert_eq!(a, b, "{w}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(gmu(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(gmu(&["word", "factors", "01x", "2"]).status.code(), Some(2));
    assert_eq!(gmu(&["graph", "prime"]).status.code(), Some(2));
    let o = gmu(&["age", "transfer", "periodic:01", "--word", "00"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("|w| > l(mu) + 7"));
}

#[test]
fn budget_errors_exit_three() {
    let o = gmu(&["graph", "modules", "family:half_graph:12", "--budget", "20"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn family_shorthand_matches_gen() {
    let a = gmu(&["family", "thin_spider", "3"]);
    let b = gmu(&["family", "gen", "thin_spider", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(
        stdout(&a),
        "n 6\nlabels 0 1 2 3 4 5\ne 0 3\ne 1 4\ne 2 5\ne 3 4\ne 3 5\ne 4 5\n"
    );
}

#[test]
fn json_documents_keep_field_order() {
    let o = gmu(&["--json", "graph", "build", "--word", "01"]);
    assert_eq!(
        stdout(&o),
        "{\"order\":3,\"labels\":[-1,0,1],\"edges\":[[0,1]]}\n"
    );
}

#[test]
fn graph_text_from_stdin_round_trips() {
    let text = stdout(&gmu(&["graph", "build", "--word", "0110"]));
    let mut child = Command::new(env!("CARGO_BIN_EXE_gmu"))
        .args(["graph", "complement", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let comp = child.wait_with_output().unwrap();
    assert_eq!(comp.status.code(), Some(0));
    // G_w complemented is G of the complemented word.
    assert_eq!(stdout(&comp), stdout(&gmu(&["graph", "build", "--word", "1001"])));
}

#[test]
fn realizer_commands() {
    let o = gmu(&["realizer", "build", "--word", "0110"]);
    assert_eq!(stdout(&o), "L: -1 1 0 3 2\nM: 1 2 0 -1 3\n");
    for verb in ["verify", "perm", "intervals"] {
        assert_eq!(gmu(&["realizer", verb, "--word", "0110"]).status.code(), Some(0), "{verb}");
    }
    assert_eq!(stdout(&gmu(&["realizer", "perm", "--word", "0110"])), "2 5 3 1 4\n");
    let c5 = gmu(&["realizer", "comparability", "family:star_subdivision:3"]);
    assert_eq!(c5.status.code(), Some(0));
}

#[test]
fn realizer_file_is_checked() {
    let dir = std::env::temp_dir().join(format!("gmu-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.txt");
    std::fs::write(&path, "L: -1 0 1 2 3\nM: -1 0 1 2 3\n").unwrap();
    let o = gmu(&["realizer", "verify", "--word", "0110", "--realizer", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "invalid\n");
}

#[test]
fn module_classification_lines() {
    let o = gmu(&["graph", "modules", "--classify", "--word", "10010"]);
    assert_eq!(stdout(&o), "pair_i0_in 10^{n-3}10 -1 4\n");
}

#[test]
fn age_bounds_of_path_age() {
    let o = gmu(&["age", "bounds", "periodic:1", "--max-order", "4", "--window", "30"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "3 0-1 0-2 1-2\n4 0-3 1-3 2-3\n4 0-2 0-3 1-2 1-3\ncomplete_up_to 4\n"
    );
}

#[test]
fn age_contains_reports_window() {
    let yes = gmu(&["age", "contains", "periodic:1", "word:1111", "--window", "20"]);
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).starts_with("yes "));
    let no = gmu(&["age", "contains", "periodic:1", "word:0000", "--window", "20"]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(stdout(&no), "no_within_window 20\n");
}

#[test]
fn verify_suite_runs() {
    let o = gmu(&["verify", "modules", "--max-len", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("suite modules\n"));
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 4);
}

#[test]
fn threads_flag_does_not_change_output() {
    let a = gmu(&["--threads", "1", "age", "members", "fibonacci", "--max-order", "4"]);
    let b = gmu(&["--threads", "4", "age", "members", "fibonacci", "--max-order", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn word_utilities() {
    assert_eq!(stdout(&gmu(&["word", "runs", "0011100"])), "zeros 2 ones 3 l 3\n");
    assert_eq!(stdout(&gmu(&["word", "complement", "0010"])), "1101\n");
    assert_eq!(stdout(&gmu(&["word", "period", "010010"])), "3\n");
    assert_eq!(stdout(&gmu(&["word", "factors", "01101", "2"])), "01\n10\n11\n");
    assert_eq!(stdout(&gmu(&["word", "inexhaustible", "periodic:01", "--max-len", "3"])), "holds\n");
    let o = gmu(&["word", "inexhaustible", "finite:0111", "--max-len", "1"]);
    assert_eq!(o.status.code(), Some(1));
}
