use std::process::Command;

fn kenum(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kenum"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn nekrasov_order_two() {
    let (code, out) = kenum(&["nekrasov-check", "--order", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["records"][0]["verdict"], true);
}

#[test]
fn rmatrix_yang_baxter() {
    let (code, out) = kenum(&["rmatrix", "--check", "yb"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"block_ordering\""));
}

#[test]
fn unknown_command_is_invalid() {
    assert_eq!(kenum(&["frobnicate"]).0, 2);
}

#[test]
fn bound_exceeded_has_its_own_code() {
    assert_eq!(kenum(&["star-extract", "--order", "9"]).0, 3);
    assert_eq!(kenum(&["identities", "qbinomial", "--order", "40"]).0, 3);
}

#[test]
fn module_error_code() {
    // constant term 2 has no plethystic logarithm
    assert_eq!(kenum(&["pleth", "--expr", "2 + z", "--log"]).0, 4);
}

#[test]
fn json_is_byte_identical_and_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    let (c1, a) = kenum(&["macmahon", "--cutoff", "4", "--spec", "generic", "--emit-json", p]);
    let (c2, b) = kenum(&["macmahon", "--cutoff", "4", "--spec", "generic"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), a);
}

#[test]
fn golden_suite_passes_and_detects_corruption() {
    let suite = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/golden");
    assert_eq!(kenum(&["golden", "--suite", suite]).0, 0);
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(suite).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
    }
    std::fs::write(dir.path().join("macmahon_cutoff6.txt"), "1 + q\n").unwrap();
    assert_eq!(kenum(&["golden", "--suite", dir.path().to_str().unwrap()]).0, 5);
    std::fs::remove_file(dir.path().join("spinor.txt")).unwrap();
    std::fs::write(dir.path().join("macmahon_cutoff6.txt"), "").unwrap();
    assert_eq!(kenum(&["golden", "--suite", dir.path().to_str().unwrap()]).0, 5);
}

#[test]
fn io_error_code() {
    assert_eq!(kenum(&["rmatrix", "--emit-json", "/nonexistent/dir/x.json"]).0, 6);
}
