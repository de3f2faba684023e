use std::process::{Command, Output};

fn k0forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k0forge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const HALF: [&str; 7] = ["run", "--k", "1/2", "--supernatural", "2^inf*3^inf", "--stages", "3"];

#[test]
fn run_prints_json() {
    let o = k0forge(&HALF);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("{\n  \"params\""));
    assert!(text.contains("\"n_prev\": \"105850802\""));
    assert!(text.contains("\"fractions\": [\n      \"1\",\n      \"2/3\",\n      \"7/12\""));
}

#[test]
fn run_is_deterministic() {
    let mut args = HALF.to_vec();
    args.extend(["--policy", "random:11"]);
    let a = k0forge(&args);
    let b = k0forge(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, k0forge(&HALF).stdout);
}

#[test]
fn run_table_and_out_file() {
    let path = std::env::temp_dir().join(format!("k0forge-cli-{}.txt", std::process::id()));
    let mut args = HALF.to_vec();
    let p = path.to_str().unwrap();
    args.extend(["--format", "table", "--out", p]);
    let o = k0forge(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.contains("witness       (1/2, 2)"));
    assert!(text.contains("cone_fraction 7/12"));
}

#[test]
fn check_class_prints_verdict_and_certificate() {
    let o = k0forge(&["check-class", "--q", "2", "--m", "1", "--h", "1", "--factors", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "NotPositive [euler-obstruction] 0 < 1 < 2");
    let o = k0forge(&["check-class", "--q", "102", "--m", "69", "--h", "4", "--factors", "102"]);
    assert_eq!(stdout(&o).trim(), "Positive [stable-range] 132 >= 102");
}

#[test]
fn witness_command() {
    let o = k0forge(&["witness", "--k", "2/3", "--supernatural", "2^inf*3^inf"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(2/3, 2)");
}

#[test]
fn invalid_inputs_exit_with_two() {
    let cases: [&[&str]; 6] = [
        &["run", "--k", "1/2", "--supernatural", "3^inf", "--stages", "2"],
        &["run", "--k", "3/2", "--supernatural", "2^inf", "--stages", "2"],
        &["run", "--k", "1/2", "--supernatural", "2^inf", "--stages", "2", "--policy", "greedy"],
        &["witness", "--k", "1/2", "--supernatural", "4^inf"],
        &["check-class", "--q", "2", "--m", "1", "--h", "1", "--factors", "3"],
        &["run", "--k", "1/2"],
    ];
    for args in cases {
        let o = k0forge(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}
