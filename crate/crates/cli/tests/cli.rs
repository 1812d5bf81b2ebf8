use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const P3: &str = "p vcn 3 2\ne 1 2\ne 2 3\nr 1 1\nr 2 1\nr 3 1\n";
const K3: &str = "p vcn 3 3\ne 1 2\ne 1 3\ne 2 3\nr 1 2\nr 2 2\nr 3 2\n";

fn veccon(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_veccon"))
        .args(args)
        .current_dir(dir)
        .env_remove("VECCON_BRUTE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn solve_path_of_three() {
    let dir = TempDir::new().unwrap();
    put(&dir, "p3.vcn", P3);
    for algo in [
        "auto",
        "exact",
        "block",
        "lowreq",
        "greedy",
        "brute",
        "brute-hitting",
    ] {
        let out = veccon(&["solve", "p3.vcn", "--algo", algo], dir.path());
        assert_eq!(out.status.code(), Some(0), "{algo}");
        assert!(
            stdout(&out).contains("c size 1\ns 1\n"),
            "{algo}: {}",
            stdout(&out)
        );
    }
}

#[test]
fn solve_zero_demand() {
    let dir = TempDir::new().unwrap();
    put(&dir, "zero.vcn", "p vcn 4 3\ne 1 2\ne 2 3\ne 3 4\n");
    let out = veccon(&["solve", "zero.vcn"], dir.path());
    assert!(stdout(&out).contains("size 0"));
}

#[test]
fn certify_lists_a_fan_per_outside_vertex() {
    let dir = TempDir::new().unwrap();
    put(&dir, "k3.vcn", K3);
    let out = veccon(&["solve", "k3.vcn", "--certify"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("c fan ")).count(), 1);
    assert!(text.contains("c fan 3 3-1 3-2"), "{text}");
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    put(&dir, "p3.vcn", P3);
    put(&dir, "k3.vcn", K3);
    put(&dir, "b.sol", "s 1\nv 2\n");
    put(&dir, "a.sol", "s 1\nv 1\n");
    put(&dir, "empty.sol", "s 0\n");
    put(&dir, "zero.vcn", "p vcn 3 3\ne 1 2\ne 1 3\ne 2 3\n");
    put(&dir, "oob.sol", "s 1\nv 9\n");

    assert_eq!(
        veccon(&["verify", "p3.vcn", "b.sol"], dir.path())
            .status
            .code(),
        Some(0)
    );
    let out = veccon(&["verify", "k3.vcn", "a.sol"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(
        text.contains("vertex 2") || text.contains("vertex 3"),
        "{text}"
    );
    assert!(text.contains("separator"));
    assert_eq!(
        veccon(&["verify", "zero.vcn", "empty.sol"], dir.path())
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        veccon(&["verify", "p3.vcn", "oob.sol"], dir.path())
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn parse_errors_report_position() {
    let dir = TempDir::new().unwrap();
    put(&dir, "bad.vcn", "p vcn 3 2\ne 1 2\ne 2 x\n");
    let out = veccon(&["solve", "bad.vcn"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3, column 5"));
}

#[test]
fn dispatch_errors_name_the_precondition() {
    let dir = TempDir::new().unwrap();
    put(&dir, "p3r3.vcn", "p vcn 3 2\ne 1 2\ne 2 3\nr 1 3\n");
    let out = veccon(&["solve", "p3r3.vcn", "--algo", "lowreq"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("requirement 3 > 2"));

    put(
        &dir,
        "diamond.vcn",
        "p vcn 4 5\ne 1 2\ne 1 3\ne 2 3\ne 2 4\ne 3 4\nr 1 2\n",
    );
    let out = veccon(&["solve", "diamond.vcn", "--algo", "block"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn gadget_round_trip() {
    let dir = TempDir::new().unwrap();
    let gen = veccon(
        &["gen", "cubic", "--name", "k4", "--r-max", "0"],
        dir.path(),
    );
    fs::write(dir.path().join("k4.vcn"), gen.stdout).unwrap();

    let out = veccon(&["reduce", "k4.vcn", "-o", "gk4"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let inst = fs::read_to_string(dir.path().join("gk4.vcn")).unwrap();
    assert!(inst.contains("p vcn 34 60"));

    let out = veccon(&["solve", "gk4.vcn", "--algo", "brute-hitting"], dir.path());
    assert!(stdout(&out).contains("c size 9"));
    fs::write(dir.path().join("gk4.sol"), &out.stdout).unwrap();
    assert_eq!(
        veccon(&["verify", "gk4.vcn", "gk4.sol"], dir.path())
            .status
            .code(),
        Some(0)
    );

    let out = veccon(&["extract-cover", "gk4.map", "gk4.sol"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("s 3\n"));

    let out = veccon(
        &["reduce", "k4.vcn", "--bipartite", "1", "-o", "bk4"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("214 vertices"));
}

#[test]
fn hypergraph_output() {
    let dir = TempDir::new().unwrap();
    put(&dir, "p3.vcn", P3);
    let out = veccon(&["hypergraph", "p3.vcn", "--minimal"], dir.path());
    assert_eq!(stdout(&out), "c minimal family\np hyp 3 1\nh 1 2 3\n");
}

#[test]
fn dot_for_path() {
    let dir = TempDir::new().unwrap();
    put(&dir, "p3.vcn", P3);
    put(&dir, "b.sol", "s 1\nv 2\n");
    let text = stdout(&veccon(
        &["dot", "p3.vcn", "--solution", "b.sol"],
        dir.path(),
    ));
    assert_eq!(text.matches("label=").count(), 3);
    assert_eq!(text.matches(" -- ").count(), 2);
    assert_eq!(text.matches("r=1").count(), 3);
    assert_eq!(text.matches("fillcolor").count(), 1);
}

#[test]
fn gen_is_reproducible() {
    let dir = TempDir::new().unwrap();
    for kind in ["block", "cactus", "random"] {
        let args = ["gen", kind, "--n", "14", "--seed", "7", "--free", "0.2"];
        let a = veccon(&args, dir.path());
        let b = veccon(&args, dir.path());
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{kind}");
        assert!(stdout(&a).contains("c prng chacha8 seed 7"));
    }
    let bad = veccon(&["gen", "random", "--p", "1.5"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn bench_writes_one_row_per_instance_and_algorithm() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("corpus");
    fs::create_dir(&corpus).unwrap();
    for seed in 0..4 {
        let out = veccon(
            &["gen", "cactus", "--n", "10", "--seed", &seed.to_string()],
            dir.path(),
        );
        fs::write(corpus.join(format!("c{seed}.vcn")), out.stdout).unwrap();
    }
    let out = veccon(
        &[
            "bench",
            "corpus",
            "--algos",
            "auto,greedy",
            "--threads",
            "3",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("instance,n,m,r_max,algo,size,optimal,wall_ms")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 8);
    for row in &rows {
        assert_eq!(row.len(), 8);
        if row[4] == "auto:block" {
            assert_eq!(row[6], "true");
        }
    }
}
