use std::process::Command;

use eqschub_cli::{run, Outcome};

fn eqschub(args: &[&str]) -> Outcome {
    run(std::iter::once("eqschub").chain(args.iter().copied()))
}

fn stdout_of(args: &[&str]) -> String {
    let out = eqschub(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

#[test]
fn lr_example() {
    assert_eq!(
        stdout_of(&["lr", "--n", "2", "--k", "1", "--a", "1", "--b", "1"]),
        "{\"coeffs\":{\"1\":\"t2 - t1\"},\"positive\":true}\n"
    );
}

#[test]
fn lr_pieri() {
    let out = stdout_of(&["lr", "--n", "4", "--k", "2", "--a", "1", "--b", "1"]);
    assert_eq!(out, "{\"coeffs\":{\"1\":\"t3 - t2\",\"1,1\":\"1\",\"2\":\"1\"},\"positive\":true}\n");
}

#[test]
fn integrate_example() {
    assert_eq!(stdout_of(&["integrate", "--n", "4", "--k", "2", "--class", "s1^4"]), "2\n");
    assert_eq!(
        stdout_of(&["--json", "integrate", "--n", "4", "--k", "2", "--class", "s[1]^4"]),
        "{\"value\":\"2\"}\n"
    );
    assert_eq!(stdout_of(&["integrate", "--n", "4", "--k", "1", "--class", "zeta^3"]), "1\n");
    assert_eq!(stdout_of(&["integrate", "--n", "4", "--k", "1", "--class", "zeta^2"]), "0\n");
}

#[test]
fn schur_examples() {
    assert_eq!(stdout_of(&["schur", "--shape", "0", "--k", "3"]), "1\n");
    assert_eq!(stdout_of(&["schur", "--shape", "1", "--k", "1"]), "-u1 + x1\n");
    assert_eq!(stdout_of(&["schur", "--shape", "1", "--k", "2", "--ordinary"]), "x2 + x1\n");
    assert_eq!(
        stdout_of(&["schur", "--shape", "1", "--k", "1", "--n", "2", "--restrict-to", "1"]),
        "t2 - t1\n"
    );
}

#[test]
fn class_output() {
    assert_eq!(
        stdout_of(&["class", "--n", "2", "--k", "1", "--shape", "1"]),
        "{1}: t2 - t1\n{2}: 0\n"
    );
    assert_eq!(
        stdout_of(&["--json", "class", "--n", "2", "--k", "1", "--shape", "1"]),
        "{\"n\":2,\"k\":1,\"restrictions\":{\"{1}\":\"t2 - t1\",\"{2}\":\"0\"}}\n"
    );
    assert_eq!(
        stdout_of(&["class", "--n", "2", "--k", "1", "--shape", "0", "--opposite"]),
        "{1}: 0\n{2}: -t2 + t1\n"
    );
    assert_eq!(
        stdout_of(&["class", "--n", "2", "--k", "1", "--class", "s1 - s1"]),
        "{1}: 0\n{2}: 0\n"
    );
    assert_eq!(
        stdout_of(&["mult", "--n", "2", "--k", "1", "--a", "1", "--b", "1"]),
        "{1}: t2^2 - 2*t1*t2 + t1^2\n{2}: 0\n"
    );
}

#[test]
fn gkm_commands() {
    assert_eq!(stdout_of(&["gkm-check", "--n", "4", "--k", "2", "--class", "s1*s21 + t3*s2"]), "ok\n");
    assert_eq!(
        stdout_of(&["--json", "gkm-graph", "--n", "2", "--k", "1"]),
        "{\"n\":2,\"k\":1,\"vertices\":[\"{1}\",\"{2}\"],\"edges\":[[\"{1}\",\"{2}\",\"t2 - t1\"]]}\n"
    );
    let text = stdout_of(&["gkm-graph", "--n", "4", "--k", "2"]);
    assert!(text.starts_with("Gr(2, 4): 6 vertices, 12 edges\n"));
}

#[test]
fn gkm_violation_exits_2() {
    let out = eqschub(&["gkm-check", "--n", "2", "--k", "1", "--class", "ind[1]"]);
    assert_eq!(out.code, 2, "{}", out.stderr);
    assert_eq!(out.stdout, "violation {1} -- {2} (t2 - t1): remainder 1\n");
    let out = eqschub(&["gkm-check", "--n", "2", "--k", "1", "--class", "(t2 - t1)*ind[1]"]);
    assert_eq!(out.code, 0);
}

#[test]
fn kl_and_verify() {
    assert_eq!(stdout_of(&["kl-verify", "--n", "4", "--k", "2"]), "PASS 6 partitions on Gr(2, 4)\n");
    let out = stdout_of(&["--json", "kl-verify", "--n", "5", "--k", "2", "--shape", "2,1"]);
    assert_eq!(out, "{\"checked\":1,\"k\":2,\"mismatches\":[],\"n\":5,\"passed\":true}\n");
    let out = stdout_of(&["verify", "--suite", "duality"]);
    assert!(out.lines().all(|l| l.starts_with("PASS duality")), "{out}");
}

#[test]
fn errors_and_usage() {
    let out = eqschub(&["class", "--n", "4", "--k", "2", "--shape", "3"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.starts_with("error:"));
    let out = eqschub(&["class", "--n", "4", "--k", "0", "--shape", "0"]);
    assert_eq!(out.code, 1);
    let out = eqschub(&["frobnicate"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("Usage"), "{}", out.stderr);
    let out = eqschub(&["lr", "--n", "4"]);
    assert_eq!(out.code, 1);
    let out = eqschub(&["verify", "--suite", "nope"]);
    assert_eq!(out.code, 1);
    let out = eqschub(&["integrate", "--n", "4", "--k", "2", "--class", "s1^"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.is_empty());
    let out = eqschub(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("gkm-check"));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("eqschub-cli-test-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = eqschub(&["--json", "--out", p, "class", "--n", "2", "--k", "1", "--shape", "1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(written.starts_with("{\"n\":2"));
}

fn binary(threads: &str, args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_eqschub"))
        .args(args)
        .env("EQSCHUB_THREADS", threads)
        .output()
        .unwrap()
}

#[test]
fn json_is_identical_across_thread_counts() {
    let commands: [&[&str]; 3] = [
        &["--json", "verify", "--suite", "positivity"],
        &["--json", "class", "--n", "6", "--k", "3", "--class", "s21*s1^2"],
        &["lr", "--n", "5", "--k", "2", "--a", "2,1", "--b", "2,1"],
    ];
    for args in commands {
        let one = binary("1", args);
        let many = binary("8", args);
        assert!(one.status.success(), "{}", String::from_utf8_lossy(&one.stderr));
        assert_eq!(one.stdout, many.stdout, "{args:?}");
    }
    let bad = binary("zero", &["schur", "--shape", "0", "--k", "1"]);
    assert_eq!(bad.status.code(), Some(1));
}
