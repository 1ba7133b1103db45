use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

const G1: &str = "group\nn 2\nm 2\nA1: 1 1 / 0 1\nA2: 1 0 / 0 1\n";
const TWIST: &str = "type I\nphi x1 -> x1 x2\nphi x2 -> x2\nQ: 1 0 / 0 1\nP: 0 0 / 0 0\n";

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn fabf(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_fabf")).args(args).output().expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap_or(-1),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p: PathBuf = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn normalize_and_arithmetic() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g1.grp", G1);
    let r = fabf(&["normalize", "-g", &g, "t[1,0] x1"]);
    assert_eq!((r.stdout.as_str(), r.code), ("x1 t[1,1]\n", 0));
    assert_eq!(fabf(&["pow", "0", "-g", &g, "x1 t[1,0]"]).stdout, "t[0,0]\n");
    assert_eq!(fabf(&["pow", "-1", "-g", &g, "x1 t[1,0]"]).stdout, "x1^-1 t[-1,1]\n");
    assert_eq!(fabf(&["mul", "-g", &g, "x1", "t[1,0]"]).stdout, "x1 t[1,0]\n");
    assert_eq!(fabf(&["inv", "-g", &g, "x1 t[1,0]"]).stdout, "x1^-1 t[-1,1]\n");
    let iter = fabf(&["eval", "-g", &g, "y1 y2 y1", "x1 t[1,0]", "x2"]);
    let block = fabf(&["eval", "-g", &g, "y1 y2 y1", "x1 t[1,0]", "x2", "--method", "block"]);
    assert_eq!(iter.code, 0, "{}", iter.stderr);
    assert_eq!(iter.stdout, block.stdout);
}

#[test]
fn input_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.grp", "group\nn 2\nm 2\nA1: 2 0 / 0 1\nA2: 1 0 / 0 1\n");
    let r = fabf(&["normalize", "-g", &bad, "x1"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("A1 not unimodular (det 2)"), "{}", r.stderr);
    let g = write(dir.path(), "g1.grp", G1);
    assert_eq!(fabf(&["normalize", "-g", &g, "x7"]).code, 3);
    assert_eq!(fabf(&["no-such-verb"]).code, 3);
    assert_eq!(fabf(&["--help"]).code, 0);
}

#[test]
fn homomorphism_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g1.grp", G1);
    let h = write(dir.path(), "twist.hom", TWIST);
    assert_eq!(fabf(&["hom-check", "-g", &g, "-h", &h]).stdout, "VALID\n");
    let mc = fabf(&["morphism-class", "-g", &g, "-h", &h]);
    assert_eq!(mc.stdout, "mono=yes epi=yes auto=yes\n");
    let applied = fabf(&["hom-apply", "-g", &g, "-h", &h, "x1 t[1,0]"]);
    assert_eq!(applied.stdout, "x1 x2 t[1,0]\n");
    let squared = fabf(&["hom-power", "2", "-g", &g, "-h", &h]);
    assert!(squared.stdout.contains("phi x1 -> x1 x2^2"), "{}", squared.stdout);
    let bad = write(dir.path(), "swap.hom", "type I\nphi x1 -> x2\nphi x2 -> x1\nQ: 1 0 / 0 1\nP: 0 0 / 0 0\n");
    let r = fabf(&["hom-check", "-g", &g, "-h", &bad]);
    assert_eq!((r.stdout.as_str(), r.code), ("INVALID\n", 1));
}

#[test]
fn classify_reports_the_failing_relator() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g1.grp", G1);
    let a = write(dir.path(), "a.asg", "t1 -> x1\nt2 -> x2\nx1 -> x1\nx2 -> x2\n");
    let r = fabf(&["hom-classify", "-g", &g, "-a", &a]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.starts_with("NOT-HOM relator="), "{}", r.stdout);
    let ok = write(dir.path(), "id.asg", "t1 -> t[1,0]\nt2 -> t[0,1]\nx1 -> x1\nx2 -> x2\n");
    let r = fabf(&["hom-classify", "-g", &g, "-a", &ok]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("type I\n"));
}

#[test]
fn brinkmann_and_period() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g1.grp", G1);
    let h = write(dir.path(), "twist.hom", TWIST);
    let r = fabf(&["brinkmann", "-g", &g, "-h", &h, "x1", "x1 x2^3"]);
    assert_eq!((r.stdout.as_str(), r.code), ("YES k=3 period=0\n", 0));
    let r = fabf(&["brinkmann", "-g", &g, "-h", &h, "x1", "x2"]);
    assert_eq!((r.stdout.as_str(), r.code), ("NO abelian-empty\n", 1));
    let r = fabf(&["--json", "brinkmann", "-g", &g, "-h", &h, "x1", "x1 x2^3"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["result"], "yes");
    assert_eq!(v["k"], 3);
    let p = fabf(&["period", "-g", &g, "-h", &h, "x2 t[0,1]"]);
    assert_eq!(p.stdout, "PERIOD 1\n");
}

#[test]
fn orbit_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let rot = write(dir.path(), "rot.mat", "0 1 / -1 0\n");
    let r = fabf(&["orbit", &rot, "1 0", "0 -1"]);
    assert_eq!((r.stdout.as_str(), r.code), ("AP k0=3 p=4\n", 0));
    let r = fabf(&["orbit", &rot, "1 0", "1 1"]);
    assert_eq!((r.stdout.as_str(), r.code), ("EMPTY\n", 1));
    let one = write(dir.path(), "one.mat", "1\n");
    assert_eq!(fabf(&["affine-orbit", &one, "1", "0", "5"]).stdout, "AP k0=5 p=0\n");
    let g = write(dir.path(), "g1.grp", G1);
    assert_eq!(fabf(&["fixed-space", &g]).stdout, "rank 1\n1 0\n");
}

#[test]
fn action_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let sign = write(dir.path(), "sign.grp", "group\nn 2\nm 1\nA1: -1\nA2: 1\n");
    let triv = write(dir.path(), "triv.grp", "group\nn 2\nm 1\nA1: 1\nA2: 1\n");
    let img = fabf(&["action-image", &sign]);
    assert!(img.stdout.starts_with("order 2\n"), "{}", img.stdout);
    let ker = fabf(&["action-kernel", &sign]);
    assert_eq!(ker.code, 0);
    assert!(ker.stdout.lines().filter(|l| !l.is_empty()).count() >= 3, "{}", ker.stdout);
    let r = fabf(&["ip-finite", &sign, &triv]);
    assert_eq!((r.stdout.as_str(), r.code), ("NO invariant=image-order\n", 1));
    let r = fabf(&["ip-finite", &sign, &sign]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("YES\n"));
    let g = write(dir.path(), "g1.grp", G1);
    let r = fabf(&["action-image", &g, "--cap", "50"]);
    assert_eq!(r.code, 2);
}
