//! Black-box checks of the command-line interface: output shape,
//! determinism, and exit codes.

use std::io::Write;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pathalg"))
}

fn write_tmp(dir: &std::path::Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    let mut f = std::fs::File::create(&p).unwrap();
    f.write_all(text.as_bytes()).unwrap();
    p
}

struct Fixture {
    dir: std::path::PathBuf,
}

impl Fixture {
    fn new(tag: &str) -> Fixture {
        let dir = std::env::temp_dir().join(format!("pathalg-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Fixture { dir }
    }
}

impl Drop for Fixture {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.dir);
    }
}

#[test]
fn quiver_info_and_determinism() {
    let fx = Fixture::new("info");
    let a2 = write_tmp(
        &fx.dir,
        "a2.json",
        r#"{"vertices":["v1","v2"],"arrows":[{"name":"a","src":"v1","dst":"v2"}]}"#,
    );
    let out1 = bin().args(["quiver", "info"]).arg(&a2).output().unwrap();
    assert!(out1.status.success());
    let text = String::from_utf8(out1.stdout.clone()).unwrap();
    assert!(text.contains(r#""sinks":["v2"]"#));
    assert!(text.contains(r#""N_E":[[0],[1]]"#));
    let out2 = bin().args(["quiver", "info"]).arg(&a2).output().unwrap();
    assert_eq!(out1.stdout, out2.stdout);
}

#[test]
fn ktheory_loop_units() {
    let fx = Fixture::new("kth");
    let l1 = write_tmp(
        &fx.dir,
        "l1.json",
        r#"{"vertices":["v1"],"arrows":[{"name":"e","src":"v1","dst":"v1"}]}"#,
    );
    let out = bin()
        .args(["ktheory"])
        .arg(&l1)
        .args(["--field", "fp:5", "--degree", "1", "--target", "leavitt"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains(r#""invariant_factors":["4"]"#));
    assert!(text.contains(r#""free_rank":1"#));
}

#[test]
fn torsion_from_sigma() {
    let fx = Fixture::new("tor");
    let r2 = write_tmp(
        &fx.dir,
        "r2.json",
        r#"{"vertices":["v1"],"arrows":[{"name":"x","src":"v1","dst":"v1"},{"name":"y","src":"v1","dst":"v1"}]}"#,
    );
    let sigma = write_tmp(
        &fx.dir,
        "sigma.json",
        r#"{"row_types":["v1"],"col_types":["v1"],"entries":[[{"terms":[{"path":{"base":"v1"},"coeff":"1"},{"path":{"base":"v1","arrows":["x"]},"coeff":"-1"},{"path":{"base":"v1","arrows":["y"]},"coeff":"-1"}]}]]}"#,
    );
    let out = bin().args(["torsion", "from-sigma"]).arg(&r2).arg(&sigma).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains(r#""length":1"#));
    assert!(text.contains(r#""blanchfield":true"#));
}

#[test]
fn exit_codes() {
    let fx = Fixture::new("exit");
    let l1 = write_tmp(
        &fx.dir,
        "l1.json",
        r#"{"vertices":["v1"],"arrows":[{"name":"e","src":"v1","dst":"v1"}]}"#,
    );
    // unsupported degree
    let out = bin()
        .args(["ktheory"])
        .arg(&l1)
        .args(["--degree", "2", "--target", "leavitt"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    // missing file
    let out = bin().args(["quiver", "info", "does-not-exist.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    // malformed json
    let broken = write_tmp(&fx.dir, "broken.json", "{not json");
    let out = bin().args(["quiver", "info"]).arg(&broken).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn text_format_renders_leaves() {
    let fx = Fixture::new("text");
    let l1 = write_tmp(
        &fx.dir,
        "l1.json",
        r#"{"vertices":["v1"],"arrows":[{"name":"e","src":"v1","dst":"v1"}]}"#,
    );
    let out = bin()
        .args(["quiver", "info"])
        .arg(&l1)
        .args(["--format", "text"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("acyclic = false"));
    assert!(text.contains("arrows[0].name = \"e\""));
}
