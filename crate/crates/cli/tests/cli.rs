use std::io::Write;
use std::process::{Command, Output, Stdio};

use branchlink::Int;
use branchlink_cli::report::{BpReport, SpliceReport};
use branchlink_cli::AnalysisReport;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_branchlink"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn analyze_text_report() {
    let o = run(&["analyze", "8,12,26,53"], None);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    for line in ["detA = -13/441", "detS = 117", "class: QHS", "point Q0: count 4, type 1/3(1, 1)", "point Q12: count 2, type 1/7(1, 3)"] {
        assert!(text.contains(line), "missing {line:?} in\n{text}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["analyze", "70,105,215,1511"], None)), 0);
    for bad in ["1,2", "8,x", "8,12,26,52", ""] {
        assert_eq!(code(&run(&["analyze", bad], None)), 2, "input {bad:?}");
    }
    assert_eq!(code(&run(&["bp", "1", "3", "5"], None)), 2);
    assert_eq!(code(&run(&["splice", "70,105,225,1579"], None)), 2);
    assert_eq!(code(&run(&["random", "--g", "1"], None)), 2);
    let o = run(&["analyze"], Some("8,12,26,53\nnot,numbers\n# comment\n\n70,105,215,1511\n"));
    assert_eq!(code(&o), 2);
    assert_eq!(stdout(&o).matches("generators:").count(), 2);
}

#[test]
fn json_round_trip() {
    for input in ["8,12,26,53", "70,105,215,1511", "24,36,75,311", "6,15,31"] {
        let first = run(&["analyze", "--json", "--minimize", input], None);
        assert_eq!(code(&first), 0, "{input}");
        let line = stdout(&first);
        assert_eq!(line.lines().count(), 1);
        let report: AnalysisReport = serde_json::from_str(line.trim()).unwrap();
        assert_eq!(serde_json::to_string(&report).unwrap(), line.trim());
        let second = run(&["analyze", "--json", "--minimize", line.trim()], None);
        assert_eq!(code(&second), 0);
        let again: AnalysisReport = serde_json::from_str(stdout(&second).trim()).unwrap();
        assert_eq!(again, report, "{input}");
    }
}

#[test]
fn text_and_json_agree() {
    for input in ["8,12,26,53", "70,105,215,1511", "70,105,225,1579"] {
        let report: AnalysisReport =
            serde_json::from_str(stdout(&run(&["analyze", "--json", input], None)).trim()).unwrap();
        let text = stdout(&run(&["analyze", input], None));
        assert!(text.contains(&format!("detA = {}\n", report.det_a)));
        assert!(text.contains(&format!("detS = {}\n", report.det_s)));
        assert!(text.contains(&format!("class: {}\n", report.link.class)));
        assert!(text.contains(&format!("N: {}\n", report.qresolution.multiplicities.join(", "))));
        for c in &report.qresolution.census {
            let line = format!("point {}: count {}, type 1/{}(1, {})", c.point_kind, c.count, c.d, c.q);
            assert!(text.contains(&line), "{line}");
        }
        for v in &report.graph.vertices {
            let line = format!("v{} {} [{}, {}] mult {}", v.id, v.label, v.genus, v.selfint, v.multiplicity.as_ref().unwrap());
            assert!(text.contains(&line), "{line}");
        }
        if let Some(s) = &report.splice {
            for eq in &s.text {
                assert!(text.contains(eq.as_str()), "{eq}");
            }
        }
    }
}

#[test]
fn random_is_deterministic() {
    let a = stdout(&run(&["random", "--g", "4", "--count", "25", "--seed", "7"], None));
    let b = stdout(&run(&["random", "--g", "4", "--count", "25", "--seed", "7"], None));
    let c = stdout(&run(&["random", "--g", "4", "--count", "25", "--seed", "8"], None));
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert_eq!(a.lines().count(), 25);
    assert!(a.lines().all(|l| l.split(',').count() == 5));
}

#[test]
fn random_batch_analyzes_cleanly() {
    for g in ["2", "3", "4"] {
        let lists = stdout(&run(&["random", "--g", g, "--max-n", "4", "--count", "30", "--seed", "3"], None));
        let o = run(&["analyze", "--json"], Some(&lists));
        assert_eq!(code(&o), 0, "g = {g}: {}", String::from_utf8_lossy(&o.stderr));
        let out = stdout(&o);
        assert_eq!(out.lines().count(), 30);
        for (line, input) in out.lines().zip(lists.lines()) {
            let r: AnalysisReport = serde_json::from_str(line).unwrap();
            assert_eq!(r.generators.join(","), input);
            let order: Int = r.h1.torsion.iter().map(|t| t.parse::<Int>().unwrap()).product();
            assert_eq!(order.to_string(), r.det_s);
        }
    }
}

#[test]
fn brieskorn_pham() {
    let r: BpReport = serde_json::from_str(stdout(&run(&["bp", "2", "3", "5", "--json"], None)).trim()).unwrap();
    assert_eq!((r.class.as_str(), r.genus.as_str(), r.determinant.as_str()), ("ZHS", "0", "1"));
    let r: BpReport = serde_json::from_str(stdout(&run(&["bp", "6", "10", "15", "--json"], None)).trim()).unwrap();
    assert_eq!((r.class.as_str(), r.genus.as_str()), ("NotQHS", "11"));
    let r: BpReport = serde_json::from_str(stdout(&run(&["bp", "2", "2", "2", "--json"], None)).trim()).unwrap();
    assert_eq!((r.class.as_str(), r.determinant.as_str()), ("QHS", "2"));
    assert!(stdout(&run(&["bp", "2", "3", "7"], None)).starts_with("Brieskorn-Pham (2, 3, 7): ZHS"));
}

#[test]
fn splice_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("splice.dot");
    let o = run(&["splice", "--json", "--dot", dot.to_str().unwrap(), "70,105,215,1511"], None);
    assert_eq!(code(&o), 0);
    let r: SpliceReport = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(r.text, ["z0^3 + z1^2 + z2^7 = 0", "z2^7 + z3^5 + z0^20*z1 = 0"]);
    assert_eq!(r.nodes.len(), 2);
    assert_eq!(r.leaves.len(), 4);
    assert_eq!(r.edge_determinants.len(), 1);
    assert!(r.semigroup.iter().all(|s| !s.alpha.is_empty()));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph") && text.trim_end().ends_with('}'));
    let plain = stdout(&run(&["splice", "70,105,215,1511"], None));
    assert!(plain.contains("z2^7 + z3^5 + z0^20*z1 = 0"));
}

#[test]
fn graph_and_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let full = stdout(&run(&["graph", "8,12,26,53"], None));
    let small = stdout(&run(&["graph", "--minimize", "8,12,26,53"], None));
    let vertices = |s: &str| s.lines().filter(|l| l.contains("[label=\"[")).count();
    assert_eq!(vertices(&full), 13);
    assert_eq!(vertices(&small), 12);

    let path = dir.path().join("batch.dot");
    let o = run(&["analyze", "--dot", path.to_str().unwrap()], Some("8,12,26,53\n70,105,215,1511\n"));
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.matches("graph plumbing {").count(), 2);
    // A second run truncates instead of appending.
    run(&["analyze", "--dot", path.to_str().unwrap(), "8,12,26,53"], None);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), full);
}
