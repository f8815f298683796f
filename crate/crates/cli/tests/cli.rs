//! End-to-end CLI behavior: exit codes, artifact reproducibility, and
//! the file-format round trips between subcommands.

use clumsy_cli::{run, EXIT_BOUNDS_ONLY, EXIT_ERROR, EXIT_OK};
use std::path::Path;

fn run_cli(args: &[&str]) -> i32 {
    let mut argv = vec!["clumsy"];
    argv.extend_from_slice(args);
    run(argv)
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn solve_hypercube_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("result.json");
    let code = run_cli(&[
        "solve",
        "--quantity",
        "cl",
        "--family",
        "hypercube",
        "--n",
        "3",
        "--pattern",
        "subcube",
        "--d",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let artifact: serde_json::Value = serde_json::from_str(&read(&out)).unwrap();
    assert_eq!(artifact["result"]["value"], 2);
    assert_eq!(artifact["result"]["status"], "optimal");
    assert_eq!(artifact["config"]["deterministic"], true);
    assert!(artifact["inputs"]["host"].as_str().unwrap().len() == 64);
    assert!(artifact.get("version").is_some());
}

#[test]
fn bounds_only_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("result.json");
    let code = run_cli(&[
        "solve",
        "--quantity",
        "cl",
        "--family",
        "hypercube",
        "--n",
        "4",
        "--pattern",
        "subcube",
        "--d",
        "2",
        "--budget-nodes",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_BOUNDS_ONLY);
    let artifact: serde_json::Value = serde_json::from_str(&read(&out)).unwrap();
    assert_eq!(artifact["result"]["status"], "bounds_only");
}

#[test]
fn deterministic_artifacts_are_byte_identical_outside_timing() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let code = run_cli(&[
            "solve",
            "--quantity",
            "pp",
            "--family",
            "complete",
            "--n",
            "6",
            "--pattern",
            "complete",
            "--m",
            "3",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK);
    }
    let strip = |text: &str| {
        let mut v: serde_json::Value = serde_json::from_str(text).unwrap();
        v.as_object_mut().unwrap().remove("timing");
        v["result"].as_object_mut().unwrap().remove("millis");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(strip(&read(&a)), strip(&read(&b)));
}

#[test]
fn gen_copies_solve_pipeline_via_files() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("k5.txt");
    let pattern = dir.path().join("k3.txt");
    let copies = dir.path().join("copies.txt");
    let result = dir.path().join("result.json");

    assert_eq!(
        run_cli(&["gen", "--family", "complete", "--n", "5", "--out", graph.to_str().unwrap()]),
        EXIT_OK
    );
    assert_eq!(
        run_cli(&["gen", "--family", "complete", "--n", "3", "--out", pattern.to_str().unwrap()]),
        EXIT_OK
    );
    assert!(read(&graph).starts_with("p edge 5 10"));

    assert_eq!(
        run_cli(&[
            "copies",
            "--graph",
            graph.to_str().unwrap(),
            "--pattern-file",
            pattern.to_str().unwrap(),
            "--out",
            copies.to_str().unwrap(),
        ]),
        EXIT_OK
    );
    assert!(read(&copies).starts_with("t copies 10 host-edges 10 pattern-edges 3"));

    assert_eq!(
        run_cli(&[
            "solve",
            "--quantity",
            "ex",
            "--graph",
            graph.to_str().unwrap(),
            "--pattern-file",
            pattern.to_str().unwrap(),
            "--copies",
            copies.to_str().unwrap(),
            "--out",
            result.to_str().unwrap(),
        ]),
        EXIT_OK
    );
    let artifact: serde_json::Value = serde_json::from_str(&read(&result)).unwrap();
    // ex(K_5, K_3) is the bipartite Turán count.
    assert_eq!(artifact["result"]["value"], 6);
}

#[test]
fn construct_verify_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("turan");
    let artifact = dir.path().join("construct.json");
    assert_eq!(
        run_cli(&[
            "construct",
            "--out-prefix",
            prefix.to_str().unwrap(),
            "--out",
            artifact.to_str().unwrap(),
            "turan",
            "--n",
            "6",
            "--m",
            "3",
        ]),
        EXIT_OK
    );
    let packing = dir.path().join("turan.packing.txt");
    assert!(packing.exists());
    let cert: serde_json::Value =
        serde_json::from_str(&read(&dir.path().join("turan.certificate.json"))).unwrap();
    assert_eq!(cert["kind"], "maximal");

    // The emitted packing verifies as maximal.
    let verify_out = dir.path().join("verify.json");
    let code = run_cli(&[
        "verify",
        "--family",
        "complete",
        "--n",
        "6",
        "--pattern",
        "complete",
        "--m",
        "3",
        "--packing",
        packing.to_str().unwrap(),
        "--out",
        verify_out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&read(&verify_out)).unwrap();
    assert_eq!(v["maximal"]["kind"], "maximal");

    // A non-maximal packing exits nonzero and names an addable copy.
    let partial = dir.path().join("partial.txt");
    std::fs::write(&partial, "m 0\n").unwrap();
    let code = run_cli(&[
        "verify",
        "--family",
        "complete",
        "--n",
        "6",
        "--pattern",
        "complete",
        "--m",
        "3",
        "--packing",
        partial.to_str().unwrap(),
        "--out",
        verify_out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_ERROR);
    let v: serde_json::Value = serde_json::from_str(&read(&verify_out)).unwrap();
    assert_eq!(v["maximal"]["kind"], "not_maximal");
}

#[test]
fn report_on_hypercube_instance() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let code = run_cli(&[
        "report",
        "--family",
        "hypercube",
        "--n",
        "3",
        "--pattern",
        "subcube",
        "--d",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&read(&out)).unwrap();
    let r = &v["report"];
    assert_eq!(r["ex_value"], 9);
    assert_eq!(r["eq1_lower"], 1);
    assert_eq!(r["cl"], 2);
    assert_eq!(r["cov"], 2);
    assert_eq!(r["counting_lower"], "3/4");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run_cli(&["solve", "--quantity", "cl"]), EXIT_ERROR);
    assert_eq!(run_cli(&["gen", "--family", "nosuch", "--n", "3"]), EXIT_ERROR);
    assert_eq!(
        run_cli(&["gen", "--family", "hypercube", "--n", "14"]),
        EXIT_ERROR
    );
}

#[test]
fn grid_construct_emits_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("pattern.svg");
    let artifact = dir.path().join("grid.json");
    let code = run_cli(&[
        "construct",
        "--out",
        artifact.to_str().unwrap(),
        "grid",
        "--k",
        "4",
        "--n",
        "10",
        "--block",
        "2",
        "--emit-svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(read(&svg).starts_with("<svg"));
    let v: serde_json::Value = serde_json::from_str(&read(&artifact)).unwrap();
    assert_eq!(v["report"]["certificate"]["kind"], "maximal");
    // Boundary vertices of odd degree rule out a perfect 4-cycle
    // packing of the section.
    assert_eq!(v["divisibility"]["divisible"], false);
    assert_eq!(v["divisibility"]["gcd_g"], 1);
}
