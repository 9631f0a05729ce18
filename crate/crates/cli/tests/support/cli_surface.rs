use std::io::Write;
use std::process::{Command, Stdio};

fn run(args: &[&str], stdin: &str) -> (i32, serde_json::Value, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nilext"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(serde_json::Value::Null);
    (out.status.code().unwrap(), v, String::from_utf8_lossy(&out.stderr).into_owned())
}

fn tmp_file(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("nilext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn catalog_pipes_into_cohomology() {
    let (code, file, _) = run(&["catalog", "m0:4"], "");
    assert_eq!(code, 0);
    assert_eq!(file["dim"], 5);
    let (code, rep, err) = run(&["cohomology", "--degree", "2"], &file.to_string());
    assert_eq!(code, 0);
    // brute-force value, including the class of e1^e5
    assert_eq!(rep["results"]["dim"], 3);
    assert!(err.contains("dim H^2 = 3"));
    assert_eq!(rep["provenance"]["field"], "real");
}

#[test]
fn jacobi_violation_lists_triple() {
    let body = r#"{"format_version":1,"dim":4,"basis":["e1","e2","e3","e4"],
        "brackets":[{"i":1,"j":2,"terms":[{"k":3,"coeff":"1"}]},
                    {"i":1,"j":3,"terms":[{"k":4,"coeff":"1"}]},
                    {"i":2,"j":3,"terms":[{"k":3,"coeff":"1"}]}]}"#;
    let p = tmp_file("bad.json", body);
    let (code, rep, _) = run(&["check", p.to_str().unwrap()], "");
    assert_eq!(code, 1);
    assert_eq!(rep["error"]["kind"], "jacobi");
    assert_eq!(rep["error"]["details"]["violations"][0], serde_json::json!([1, 2, 3]));
}

#[test]
fn malformed_file_reports_position() {
    let p = tmp_file("broken.json", "{\n  \"format_version\": 1,\n  \"dim\": 2,,\n}");
    let (code, rep, _) = run(&["lcs", p.to_str().unwrap()], "");
    assert_eq!(code, 1);
    assert_eq!(rep["error"]["kind"], "malformed-file");
    assert_eq!(rep["error"]["details"]["line"], 3);
    let p = tmp_file("badcoeff.json", r#"{"format_version":1,"dim":2,"basis":["x","y"],"brackets":[{"i":1,"j":2,"terms":[{"k":1,"coeff":"x"}]}]}"#);
    let (code, rep, _) = run(&["lcs", p.to_str().unwrap()], "");
    assert_eq!(code, 1);
    assert_eq!(rep["error"]["details"]["path"], "brackets[0].terms[0].coeff");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["no-such-verb"], "").0, 2);
    assert_eq!(run(&["cohomology", "h3"], "").0, 2);
    assert_eq!(run(&["quadric-type"], "").0, 2);
}

#[test]
fn domain_errors_exit_one() {
    let (code, rep, _) = run(&["extend", "m0:3", "--cocycle", "e2^e4"], "");
    assert_eq!(code, 1);
    assert_eq!(rep["error"]["kind"], "domain");
    let (code, _, _) = run(&["catalog", "nope:3"], "");
    assert_eq!(code, 1);
    let (code, _, _) = run(&["orbit-label", "--model", "m25", "--point", "0,0,0"], "");
    assert_eq!(code, 1);
}

#[test]
fn quadric_and_labels() {
    let (_, rep, _) = run(&["quadric-type", "--t", "1/8"], "");
    assert_eq!(rep["results"]["type"], "parabolic-cylinder");
    let (_, rep, _) = run(&["orbit-label", "--model", "m25", "--point", "1,2,5"], "");
    assert_eq!(rep["results"]["label"], "line(t=2)");
    assert_eq!(rep["results"]["representative"], serde_json::json!(["1", "2", "0"]));
    let (_, r, _) = run(&["orbit-label", "--model", "l23", "--point", "-1,0,1"], "");
    let (_, c, _) = run(&["orbit-label", "--model", "l23", "--point", "-1,0,1", "--field", "complex"], "");
    assert_eq!(r["results"]["label"], "outside");
    assert_eq!(c["results"]["label"], "open");
    let (_, rep, _) = run(&["orbit-label", "--model", "ltilde24", "--point", "-3/2,0,1,1"], "");
    assert_eq!(rep["results"]["t"], "-3/2");
}

#[test]
fn extension_report_pipes_back() {
    let (code, rep, _) = run(&["extend", "h3", "--cocycle", "e1^e3"], "");
    assert_eq!(code, 0);
    assert_eq!(rep["results"]["nil_index"], 3);
    assert_eq!(rep["results"]["theorem_check"]["consistent"], true);
    let (code, lcs, _) = run(&["lcs"], &rep.to_string());
    assert_eq!(code, 0);
    assert_eq!(lcs["results"]["dims"], serde_json::json!([4, 2, 1, 0]));
}

#[test]
fn isomorphic_and_classify() {
    let (_, rep, _) = run(&["isomorphic", "g7:t=1", "g7:t=3"], "");
    assert_eq!(rep["results"]["outcome"], "no");
    let (_, rep, _) = run(&["isomorphic", "m0:4", "m0:4"], "");
    assert_eq!(rep["results"]["outcome"], "yes");
    let (_, rep, _) = run(&["classify-filiform", "--max-dim", "6"], "");
    assert_eq!(rep["results"]["canonical_counts"]["6"], 2);
    let (code, _, _) = run(&["classify", "--max-dim", "5"], "");
    assert_eq!(code, 1);
}

#[test]
fn jobs_flag_does_not_change_reports() {
    let a = run(&["classify", "--max-dim", "4", "--jobs", "1"], "").1;
    let b = run(&["classify", "--max-dim", "4", "--jobs", "3"], "").1;
    assert_eq!(a, b);
    assert_eq!(a["results"]["canonical_counts"]["4"], 3);
}

#[test]
fn rigidity_and_orbit_equiv() {
    let (_, rep, _) = run(&["rigidity", "h3", "--class", "e1^e3"], "");
    assert_eq!(rep["results"]["outcome"], "open-orbit-certified");
    let (_, rep, _) = run(&["orbit-equiv", "h3", "--span1", "e1^e3", "--span2", "e2^e3"], "");
    assert_eq!(rep["results"]["result"]["outcome"], "yes");
    let (_, rep, _) = run(&["orbit-equiv", "m2_5", "--span1", "e2^e3", "--span2", "e1^e6 + e3^e4"], "");
    assert_eq!(rep["results"]["result"]["outcome"], "no");
}
