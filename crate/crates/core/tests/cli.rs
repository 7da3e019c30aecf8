use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bethe-spectra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn charpoly_of_k3() {
    let o = bin(&["charpoly", "--degrees", "1,3"]);
    assert!(o.status.success());
    assert!(
        stdout(&o).contains("expanded: λ^3 - 3λ - 2"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn charpoly_json_shape() {
    let o = bin(&["charpoly", "--degrees", "1,2,1", "--output", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["tool"], "bethe-spectra");
    assert_eq!(v["seed"], 0);
    assert_eq!(
        v["result"]["expanded"]["coeffs"],
        serde_json::json!(["-1", "0", "1"])
    );
    assert_eq!(v["result"]["factored"]["divisor"], "lambda+2");
    assert_eq!(
        v["result"]["factored"]["degrees"],
        serde_json::json!([1, 2, 1])
    );
}

#[test]
fn invalid_degrees_name_the_invariant() {
    let o = bin(&["charpoly", "--degrees", "2,3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("d_1 must equal 1"));
    let o = bin(&["lambda-min", "--degrees", "1,1,3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("d_2 must be at least 2"));
}

#[test]
fn lambda_min_examples() {
    for (d, approx, mult) in [
        ("1,3,4", "-1.732050807569", "3"),
        ("1,2,5", "-1.618033988750", "4"),
        ("1,2", "-1.000000000000", "1"),
    ] {
        let o = bin(&["lambda-min", "--degrees", d]);
        assert!(o.status.success());
        let out = stdout(&o);
        assert!(
            out.contains(&format!("lambda_min: {approx}\n")),
            "{d}: {out}"
        );
        assert!(
            out.contains(&format!("multiplicity: {mult}\n")),
            "{d}: {out}"
        );
    }
}

#[test]
fn family_tables() {
    for (prefix, range, approx, mults) in [
        (
            "1,3",
            "2..6",
            "-1.73205080757",
            vec!["1", "2", "3", "4", "5"],
        ),
        (
            "1,2",
            "2..6",
            "-1.61803398875",
            vec!["1", "2", "3", "4", "5"],
        ),
        ("1,4,3", "2..4", "", vec!["1", "2", "3"]),
    ] {
        let o = bin(&["family", "--prefix", prefix, "--dk", range]);
        assert!(o.status.success(), "{}", stderr(&o));
        let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
        let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
        assert_eq!(rows.len(), mults.len());
        for (row, m) in rows.iter().zip(&mults) {
            assert_eq!(&row[3], *m);
            assert_eq!(&row[1], &rows[0][1]);
            if !approx.is_empty() {
                assert!(row[1].starts_with(approx), "{prefix}: {}", &row[1]);
            }
        }
    }
}

#[test]
fn family_rejects_bad_ranges() {
    let o = bin(&["family", "--prefix", "1,3", "--dk", "1..4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bin(&["family", "--prefix", "1,3", "--dk", "2..65"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_default_run_passes_and_is_reproducible() {
    let a = bin(&["verify", "--output", "json"]);
    assert!(a.status.success(), "{}", stdout(&a));
    let b = bin(&["verify", "--output", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["trials"], 200);
    assert!(v["result"]["failure"].is_null());
}

#[test]
fn verify_reports_a_corrupted_exponent() {
    let o = bin(&["verify", "--trials", "10", "--corrupt-sigma"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL in factorization"), "{out}");
    assert!(
        out.contains("reproducer: bethe-spectra charpoly --degrees "),
        "{out}"
    );
}

#[test]
fn verify_with_zero_trials_warns() {
    let o = bin(&["verify", "--trials", "0"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn verify_reads_an_edge_list() {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("bethe_1_3_2.txt");
    // B(1,3,2): root 0 with children 1, 2; each child has two leaves
    std::fs::write(&path, "# B(1,3,2)\n0 1\n0 2\n1 3\n1 4\n2 5\n2 6\n").unwrap();
    let o = bin(&["verify", "--graph", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("bethe tree:"), "{out}");
    assert!(out.contains("factorization  pass"), "{out}");

    let bad = dir.join("self_loop.txt");
    std::fs::write(&bad, "0 0\n").unwrap();
    assert_eq!(
        bin(&["verify", "--graph", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn corona_check_outputs() {
    let o = bin(&["corona-check", "--n", "3", "--q", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.matches("lambda_min = ").count(), 3, "{out}");
    assert!(out.contains("verdict: L(B(1,3,3)) ~ K_3 ⊗ K_2"), "{out}");

    let o = bin(&["corona-check", "--n", "1", "--q", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("undefined"));
}

#[test]
fn same_arguments_give_identical_bytes() {
    for args in [
        &["charpoly", "--degrees", "1,3,2,4", "--output", "json"][..],
        &["family", "--prefix", "1,3,2", "--dk", "2..5"],
        &["corona-check", "--n", "2", "--q", "4", "--output", "csv"],
        &["verify", "--trials", "20", "--seed", "99"],
    ] {
        assert_eq!(bin(args).stdout, bin(args).stdout, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bin(&["charpoly"]).status.code(), Some(2));
    assert_eq!(bin(&["nonsense"]).status.code(), Some(2));
    assert!(bin(&["--help"]).status.success());
}
