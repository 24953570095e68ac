//! Byte-exact transcripts for the bundled example scripts.

use std::process::Command;

fn run_script(name: &str) -> (String, String, i32) {
    let script = format!("{}/../../examples/{name}", env!("CARGO_MANIFEST_DIR"));
    let out = Command::new(env!("CARGO_BIN_EXE_s3l"))
        .arg(&script)
        .output()
        .expect("failed to run s3l");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn case_study_stdout_is_frozen() {
    let (stdout, stderr, code) = run_script("case_study.s3l");
    assert_eq!(code, 0, "stderr: {stderr}");
    assert_eq!(stdout, include_str!("golden/case_study.stdout"));
}

#[test]
fn case_study_stderr_is_frozen() {
    let (_, stderr, _) = run_script("case_study.s3l");
    assert_eq!(stderr, include_str!("golden/case_study.stderr"));
}

#[test]
fn myclass_transcript_is_frozen() {
    let (stdout, stderr, code) = run_script("myclass.s3l");
    assert_eq!(code, 0, "stderr: {stderr}");
    assert_eq!(stdout, include_str!("golden/myclass.stdout"));
    assert_eq!(stdout, "[1] \"myclass\"\n");
}

#[test]
fn summary_table_is_frozen() {
    let (stdout, stderr, code) = run_script("summary_iris.s3l");
    assert_eq!(code, 0, "stderr: {stderr}");
    assert_eq!(stdout, include_str!("golden/summary_iris.stdout"));
}

#[test]
fn summary_table_structural_values() {
    // The table's values, independent of alignment.
    let (stdout, _, _) = run_script("summary_iris.s3l");
    for needle in [
        "Min.   :4.300",
        "1st Qu.:5.100",
        "Median :5.800",
        "Mean   :5.843",
        "3rd Qu.:6.400",
        "Max.   :7.900",
        "setosa    :50",
        "versicolor:50",
        "virginica :50",
    ] {
        assert!(stdout.contains(needle), "missing {needle:?} in:\n{stdout}");
    }
}
