use std::path::Path;
use std::process::{Command, Output};

fn heron(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heron")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn triangle_examples() {
    let o = heron(&["triangles", "--max-edge", "30"]);
    assert!(o.status.success());
    let recs = lines(&o);
    let t = recs.iter().find(|r| r["edges"] == serde_json::json!([30, 29, 5])).expect("(5,29,30) present");
    assert_eq!(t["area"], 72);
    assert_eq!(t["schema"], 1);
    assert_eq!(t["kind"], "triangle");

    let o = heron(&["triangles", "--max-edge", "2"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());

    let o = heron(&["triangles", "--max-edge", "6", "--class", "pythagorean"]);
    let recs = lines(&o);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["edges"], serde_json::json!([5, 4, 3]));
}

#[test]
fn tetra_examples() {
    let o = heron(&["tetra", "--class", "right-angled-face", "--max-edge", "1105", "--recheck"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let recs = lines(&o);
    assert_eq!(recs.len(), 5);
    assert!(recs.iter().all(|r| r["legs"].is_object()));

    let o = heron(&["tetra", "--class", "generic", "--max-edge", "120"]);
    let recs = lines(&o);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["display_edges"], serde_json::json!([117, 84, 80, 51, 53, 52]));
    assert_eq!(recs[0]["volume"], 18144);

    // non-primitive output adds the multiples
    let o = heron(&["tetra", "--class", "generic", "--max-edge", "240", "--primitive-only", "false"]);
    let recs = lines(&o);
    assert!(recs.iter().any(|r| r["display_edges"] == serde_json::json!([234, 168, 160, 102, 106, 104])));
    let o = heron(&["tetra", "--class", "right-angled-face", "--max-edge", "1400", "--primitive-only", "false"]);
    assert!(lines(&o).iter().any(|r| r["display_edges"][0] == 1394));
}

#[test]
fn output_is_independent_of_job_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for jobs in ["1", "3"] {
        let out = dir.path().join(format!("jobs{jobs}.jsonl"));
        let o = heron(&["tetra", "--class", "generic", "--max-edge", "400", "--jobs", jobs, "--out", path_str(&out)]);
        assert!(o.status.success(), "{}", stderr(&o));
        outputs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(String::from_utf8(outputs[0].clone()).unwrap().lines().count(), 6);
}

#[test]
fn resumed_search_matches_uninterrupted_run() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.jsonl");
    let o = heron(&["tetra", "--class", "generic", "--max-edge", "500", "--out", path_str(&full)]);
    assert!(o.status.success());

    let cp = dir.path().join("search.ckpt");
    let resumed = dir.path().join("resumed.jsonl");
    let args = |extra: &[&str]| {
        let mut a = vec!["tetra", "--class", "generic", "--max-edge", "500", "--jobs", "2", "--checkpoint", path_str(&cp), "--out", path_str(&resumed)];
        a.extend_from_slice(extra);
        heron(&a)
    };
    // stop partway, twice, then finish
    for _ in 0..2 {
        let o = args(&["--max-shards", "60"]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stderr(&o).contains("stopped after 60"));
        assert!(!resumed.exists());
    }
    let saved: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cp).unwrap()).unwrap();
    assert_eq!(saved["completed"].as_object().unwrap().len(), 120);
    let o = args(&[]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(std::fs::read(&full).unwrap(), std::fs::read(&resumed).unwrap());

    // a checkpoint for a different search is refused
    let o = heron(&["tetra", "--class", "generic", "--max-edge", "400", "--checkpoint", path_str(&cp)]);
    assert_eq!(o.status.code(), Some(2));

    // an edited checkpoint is refused
    let text = std::fs::read_to_string(&cp).unwrap().replacen("[51,52,84,53,117,80]", "[51,52,84,53,117,81]", 1);
    std::fs::write(&cp, text).unwrap();
    let o = args(&[]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("digest"));
}

#[test]
fn killed_search_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.jsonl");
    assert!(heron(&["tetra", "--class", "generic", "--max-edge", "700", "--out", path_str(&full)]).status.success());

    let cp = dir.path().join("search.ckpt");
    let out = dir.path().join("resumed.jsonl");
    let args = ["tetra", "--class", "generic", "--max-edge", "700", "--checkpoint", path_str(&cp), "--out", path_str(&out)];
    let mut child = Command::new(env!("CARGO_BIN_EXE_heron")).args(args).spawn().unwrap();
    let start = std::time::Instant::now();
    while !cp.exists() && start.elapsed() < std::time::Duration::from_secs(60) {
        std::thread::sleep(std::time::Duration::from_millis(5));
    }
    let _ = child.kill();
    let _ = child.wait();
    // whatever the kill left behind must be a loadable checkpoint
    assert!(heron(&args).status.success());
    assert_eq!(std::fs::read(&full).unwrap(), std::fs::read(&out).unwrap());
}

#[test]
fn recheck_finds_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("t.jsonl");
    assert!(heron(&["tetra", "--class", "semi-regular", "--max-edge", "1000", "--out", path_str(&f)]).status.success());
    let o = heron(&["recheck", path_str(&f)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("2 records rechecked, 0 discrepancies"));

    let text = std::fs::read_to_string(&f).unwrap().replacen("\"volume\":", "\"volume\":1", 1);
    std::fs::write(&f, text).unwrap();
    let o = heron(&["recheck", path_str(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 1") && stderr(&o).contains("volume"));
}

#[test]
fn embed_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let tri = dir.path().join("tri.jsonl");
    assert!(heron(&["triangles", "--max-edge", "30", "--out", path_str(&tri)]).status.success());
    let gen = dir.path().join("gen.jsonl");
    assert!(heron(&["tetra", "--class", "generic", "--max-edge", "120", "--out", path_str(&gen)]).status.success());

    for (input, dim) in [(&tri, 2), (&gen, 3)] {
        let emb = dir.path().join("emb.jsonl");
        let o = heron(&["embed", path_str(input), "--out", path_str(&emb), "--recheck"]);
        assert!(o.status.success(), "{}", stderr(&o));
        let recs: Vec<serde_json::Value> =
            std::fs::read_to_string(&emb).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert!(!recs.is_empty());
        for r in &recs {
            assert_eq!(r["kind"], "embedding");
            assert_eq!(r["verified"], true);
            assert!(r["coordinates"].as_array().unwrap().iter().all(|p| p.as_array().unwrap().len() == dim));
        }
        if dim == 2 {
            assert!(recs.iter().any(|r| r["key"] == "triangle:30,29,5"));
        }
        assert!(heron(&["recheck", path_str(&emb)]).status.success());
    }
}

#[test]
fn malformed_input_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.jsonl");
    let good = stdout(&heron(&["triangles", "--max-edge", "5"]));
    std::fs::write(&f, format!("{good}\n{{\"schema\":1,\"kind\":\"triangle\"\n")).unwrap();
    let o = heron(&["embed", path_str(&f)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    std::fs::write(&f, "{\"schema\":1,\"kind\":\"triangle\",\"key\":\"x\",\"edges\":[1,1,1],\"provenance\":{\"command\":\"x\",\"version\":\"0\"}}\n").unwrap();
    let o = heron(&["embed", path_str(&f)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 1"));
}

#[test]
fn verify_commands() {
    let o = heron(&["verify", "claim", "--preset", "vol7-mod7"]);
    assert!(o.status.success());
    let r = &lines(&o)[0];
    assert_eq!(r["kind"], "verdict");
    assert_eq!(r["report"]["verified"], true);

    let o = heron(&["verify", "assertion", "--p", "5"]);
    assert!(o.status.success());
    assert_eq!(lines(&o)[0]["report"]["holds"], true);

    let o = heron(&["verify", "claim", "--modulus", "5", "--divisor", "5", "--kind", "triangle"]);
    assert_eq!(o.status.code(), Some(1));
    let r = &lines(&o)[0];
    assert_eq!(r["kind"], "witness");
    assert!(r["report"]["witness"].is_object());

    let o = heron(&["verify", "dim4"]);
    assert!(o.status.success());
    let o = heron(&["verify", "scaling", "--t", "2"]);
    assert!(o.status.success());

    // verdicts re-run on recheck
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("v.jsonl");
    assert!(heron(&["verify", "--out", path_str(&f), "claim", "--preset", "area-mod3"]).status.success());
    assert!(heron(&["recheck", path_str(&f)]).status.success());
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(heron(&["tetra", "--class", "nonsense", "--max-edge", "10"]).status.code(), Some(2));
    assert_eq!(heron(&["tetra", "--class", "generic"]).status.code(), Some(2));
    assert_eq!(heron(&["tetra", "--class", "generic", "--max-edge", "0"]).status.code(), Some(2));
    assert_eq!(heron(&["tetra", "--class", "semi-regular", "--max-edge", "10", "--checkpoint", "x"]).status.code(), Some(2));
    assert_eq!(heron(&["verify", "claim", "--preset", "vol2-mod4096"]).status.code(), Some(2));
    assert_eq!(heron(&["verify", "assertion", "--p", "17"]).status.code(), Some(2));
    assert_eq!(heron(&["verify", "assertion", "--p", "9"]).status.code(), Some(2));
    assert_eq!(heron(&["verify", "claim", "--preset", "no-such-claim"]).status.code(), Some(2));
    // I/O errors
    assert_eq!(heron(&["embed", "/nonexistent/input.jsonl"]).status.code(), Some(3));
    assert_eq!(heron(&["triangles", "--max-edge", "10", "--out", "/nonexistent/dir/out.jsonl"]).status.code(), Some(3));
    // help is not an error
    assert_eq!(heron(&["--help"]).status.code(), Some(0));
}

#[test]
fn reproduce_reports() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("a3.csv");
    let o = heron(&["reproduce", "--table", "a3", "--max-edge", "500", "--csv", path_str(&csv)]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("8 golden rows in range, 8 found"));
    assert!(stdout(&o).ends_with("result: match\n"));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 9);
    assert!(text.lines().next().unwrap().starts_with("table,golden_row,edges,status"));

    // a bound that cuts a row in half of the table is still exact
    let o = heron(&["reproduce", "--table", "a2", "--max-edge", "1000"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("2 golden rows in range, 2 found"));
}
