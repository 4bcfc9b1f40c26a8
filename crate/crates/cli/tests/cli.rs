use std::path::Path;
use std::process::{Command, Output};

use partcert_core::decomposition::{validate, TreeDecomposition};
use partcert_core::graph::are_isomorphic;
use partcert_core::io::read_graph_file;
use partcert_core::verify::VerificationReport;
use partcert_core::Graph;

fn partcert(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_partcert"))
        .args(args)
        .current_dir(dir)
        .env_remove("PARTCERT_CONFIG")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn construct_writes_graph_decomposition_and_log() {
    let dir = tempfile::tempdir().unwrap();
    let out = partcert(dir.path(), &["construct", "chordal", "-k", "2", "-r", "1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("n=6 m=9"));

    let g = read_graph_file(&dir.path().join("chordal-k2-r1.g6")).unwrap();
    assert!(are_isomorphic(&g, &Graph::prism(), 12).unwrap());
    let text =
        std::fs::read_to_string(dir.path().join("chordal-k2-r1.decomposition.json")).unwrap();
    let t = TreeDecomposition::from_json(&text).unwrap();
    validate(&g, &t).unwrap();
    assert!(t.width() <= 5);
    let log: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("chordal-k2-r1.attachments.json")).unwrap(),
    )
    .unwrap();
    assert!(log.as_array().is_some_and(|a| !a.is_empty()));
}

#[test]
fn output_formats_describe_the_same_graph() {
    let dir = tempfile::tempdir().unwrap();
    let mut graphs = Vec::new();
    for format in ["g6", "dot", "json"] {
        let name = format!("p-{format}");
        let out = partcert(
            dir.path(),
            &[
                "construct",
                "perfect",
                "-k",
                "2",
                "--format",
                format,
                "--name",
                &name,
            ],
        );
        assert_eq!(code(&out), 0);
        graphs.push(read_graph_file(&dir.path().join(format!("{name}.{format}"))).unwrap());
    }
    assert_eq!(graphs[0].n(), 10);
    assert!(graphs.windows(2).all(|w| w[0].edges() == w[1].edges()));
    // graph6 has no room for labels; the other two keep them
    assert_eq!(graphs[1].labels(), graphs[2].labels());
    assert!(graphs[2].labels().is_some());
}

#[test]
fn oversized_construction_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let out = partcert(dir.path(), &["construct", "chordal", "-k", "3", "-r", "1"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("6434700"), "{err}");
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_none());
}

#[test]
fn verify_certifies_family_members() {
    let dir = tempfile::tempdir().unwrap();
    let out = partcert(
        dir.path(),
        &[
            "verify",
            "perfect-lemma",
            "--family",
            "perfect",
            "-k",
            "2",
            "-r",
            "1",
            "--workers",
            "2",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = std::fs::read_to_string(dir.path().join("perfect-k2-r1.report.json")).unwrap();
    let report = VerificationReport::from_json(&text).unwrap();
    assert!(report.is_certified());
    assert_eq!(report.graph.n, 10);
    assert_eq!(
        std::fs::read_to_string(dir.path().join("perfect-k2-r1.failures.ndjson")).unwrap(),
        ""
    );
}

#[test]
fn verify_reports_star_failure() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("star.g6"), "Cs\n").unwrap();
    let out = partcert(
        dir.path(),
        &[
            "verify",
            "chordal-lemma",
            "--graph",
            "star.g6",
            "-k",
            "2",
            "--failures",
            "f.ndjson",
            "--report",
            "r.json",
        ],
    );
    assert_eq!(code(&out), 1);
    let lines = std::fs::read_to_string(dir.path().join("f.ndjson")).unwrap();
    assert!(lines.lines().count() >= 1);
    for line in lines.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["rgs"].is_array());
    }
    let report =
        VerificationReport::from_json(&std::fs::read_to_string(dir.path().join("r.json")).unwrap())
            .unwrap();
    assert_eq!(report.failure_count as usize, lines.lines().count());
}

#[test]
fn config_caps_apply_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("star.g6"), "Cs\n").unwrap();
    std::fs::write(
        dir.path().join("tight.toml"),
        "workers = 2\n[limits]\nenumeration = 3\n",
    )
    .unwrap();
    let args = ["verify", "chordal-lemma", "--graph", "star.g6", "-k", "2"];
    let out = partcert(
        dir.path(),
        &[&["--config", "tight.toml"], &args[..]].concat(),
    );
    assert_eq!(code(&out), 2);

    let env = Command::new(env!("CARGO_BIN_EXE_partcert"))
        .args(args)
        .current_dir(dir.path())
        .env("PARTCERT_CONFIG", "tight.toml")
        .output()
        .unwrap();
    assert_eq!(code(&env), 2);

    std::fs::write(dir.path().join("out.toml"), "output_dir = \"results\"\n").unwrap();
    let out = partcert(dir.path(), &[&["--config", "out.toml"], &args[..]].concat());
    assert_eq!(code(&out), 1);
    assert!(dir.path().join("results/star.report.json").exists());
}

#[test]
fn check_reports_verdicts_and_certificates() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("c5.g6"),
        partcert_core::io::to_graph6(&Graph::cycle(5)),
    )
    .unwrap();
    let out = partcert(dir.path(), &["check", "c5.g6", "chordal"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("cycle"));
    let out = partcert(dir.path(), &["check", "c5.g6", "perfect"]);
    assert_eq!(code(&out), 1);

    assert_eq!(
        code(&partcert(
            dir.path(),
            &["construct", "chordal", "-k", "2", "--name", "pr"]
        )),
        0
    );
    let out = partcert(
        dir.path(),
        &[
            "check",
            "pr.g6",
            "treewidth-cert",
            "--decomp",
            "pr.decomposition.json",
        ],
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("width 5"));
    // a decomposition of the prism does not cover C7
    std::fs::write(
        dir.path().join("c7.g6"),
        partcert_core::io::to_graph6(&Graph::cycle(7)),
    )
    .unwrap();
    let out = partcert(
        dir.path(),
        &[
            "check",
            "c7.g6",
            "treewidth-cert",
            "--decomp",
            "pr.decomposition.json",
        ],
    );
    assert_eq!(code(&out), 1);
}

#[test]
fn bad_input_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&partcert(dir.path(), &["frobnicate"])), 3);
    assert_eq!(
        code(&partcert(dir.path(), &["check", "missing.g6", "chordal"])),
        3
    );
    std::fs::write(dir.path().join("bad.g6"), "??not graph6\n").unwrap();
    assert_eq!(
        code(&partcert(dir.path(), &["check", "bad.g6", "chordal"])),
        3
    );
    assert_eq!(
        code(&partcert(dir.path(), &["construct", "general", "-k", "2"])),
        3
    );
    assert_eq!(code(&partcert(dir.path(), &["--help"])), 0);
}
