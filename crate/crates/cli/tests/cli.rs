//! End-to-end tests of the binary: exit codes, output files, and the
//! golden corpus under `tests/golden/`.
//!
//! Run with `UPDATE_GOLDENS=1` to regenerate the golden files from the
//! library's canonical emitters.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use coalgraph_core::constructions::{cofree_graph, colored_graph, ColorSet, Coloring};
use coalgraph_core::covariety::Pattern;
use coalgraph_core::finset::{FinFunction, FinSet};
use coalgraph_core::format::{emit_graph, emit_hom, emit_pattern, parse_graph};
use coalgraph_core::functor::{FElem, FunctorExpr, DEFAULT_MAX_ENUM};
use coalgraph_core::graph::{enumerate_homs, FGraph, GraphHom};
use coalgraph_core::samples;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coalgraph"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn hypergraph_sample() -> FGraph {
    FGraph::new(
        FunctorExpr::Pow,
        FinSet::new(["a", "b", "c"]),
        FinSet::new(["h1", "h2"]),
        [
            (
                "h1".to_string(),
                FElem::set_of([FElem::atom("a"), FElem::atom("b"), FElem::atom("c")]),
            ),
            ("h2".to_string(), FElem::set_of([])),
        ]
        .into(),
    )
    .unwrap()
}

fn multiset_sample() -> FGraph {
    FGraph::new(
        FunctorExpr::Id,
        FinSet::new(["x", "y"]),
        FinSet::new(["m1", "m2", "m3"]),
        [
            ("m1".to_string(), FElem::atom("x")),
            ("m2".to_string(), FElem::atom("x")),
            ("m3".to_string(), FElem::atom("y")),
        ]
        .into(),
    )
    .unwrap()
}

fn hybrid_sample() -> FGraph {
    // One directed and one undirected edge on the same two vertices.
    FGraph::new(
        FunctorExpr::sum(FunctorExpr::directed(), FunctorExpr::P12),
        FinSet::new(["a", "b"]),
        FinSet::new(["d", "u"]),
        [
            (
                "d".to_string(),
                FElem::inl(FElem::pair(FElem::atom("a"), FElem::atom("b"))),
            ),
            (
                "u".to_string(),
                FElem::inr(FElem::set_of([FElem::atom("a"), FElem::atom("b")])),
            ),
        ]
        .into(),
    )
    .unwrap()
}

fn colored_k2_sample() -> FGraph {
    let k2 = samples::k2();
    let x = ColorSet::new(FinSet::new(["r", "g"]), FinSet::new(["1", "2"]));
    let coloring = Coloring::new(
        k2.clone(),
        FinFunction::from_pairs(k2.vertices().clone(), x.vcolors.clone(), [("v", "r"), ("w", "g")])
            .unwrap(),
        FinFunction::from_pairs(k2.edges().clone(), x.ecolors.clone(), [("e", "1")]).unwrap(),
    )
    .unwrap();
    colored_graph(&coloring).unwrap()
}

fn swap_hom() -> GraphHom {
    let k2 = samples::k2();
    let swap = FinFunction::from_pairs(
        k2.vertices().clone(),
        k2.vertices().clone(),
        [("v", "w"), ("w", "v")],
    )
    .unwrap();
    GraphHom::new(k2.clone(), k2.clone(), swap, FinFunction::identity(k2.edges())).unwrap()
}

fn collapse_hom() -> GraphHom {
    enumerate_homs(&samples::k2(), &samples::loop1(), DEFAULT_MAX_ENUM)
        .unwrap()
        .remove(0)
}

fn loops_directed_pattern() -> Pattern {
    Pattern::new(
        FunctorExpr::directed(),
        ColorSet::new(FinSet::new(["a", "b"]), FinSet::new(["*"])),
        FinSet::new(["a", "b"]),
        FinSet::new(["(*,(a,a))", "(*,(b,b))"]),
        DEFAULT_MAX_ENUM,
    )
    .unwrap()
}

/// The twenty golden files, in canonical form.
pub fn golden_contents() -> Vec<(&'static str, String)> {
    let x_rg12 = ColorSet::new(FinSet::new(["r", "g"]), FinSet::new(["1", "2"]));
    let (cofree_p12, _) = cofree_graph(&FunctorExpr::P12, &x_rg12, DEFAULT_MAX_ENUM).unwrap();
    vec![
        ("empty.graph", emit_graph(&FGraph::empty(FunctorExpr::P12))),
        ("vertex.graph", emit_graph(&samples::single_vertex())),
        ("k2.graph", emit_graph(&samples::k2())),
        ("loop.graph", emit_graph(&samples::loop1())),
        ("double-loop.graph", emit_graph(&samples::double_loop())),
        ("path3.graph", emit_graph(&samples::path3())),
        ("triangle.graph", emit_graph(&samples::triangle())),
        ("arrow.graph", emit_graph(&samples::arrow())),
        ("directed-loop.graph", emit_graph(&samples::directed_loop())),
        ("two-cycle.graph", emit_graph(&samples::two_cycle())),
        ("hypergraph.graph", emit_graph(&hypergraph_sample())),
        ("multiset.graph", emit_graph(&multiset_sample())),
        ("hybrid.graph", emit_graph(&hybrid_sample())),
        ("colored-k2.graph", emit_graph(&colored_k2_sample())),
        ("cofree-p12.graph", emit_graph(&cofree_p12)),
        (
            "k2-id.hom",
            emit_hom(&GraphHom::identity(&samples::k2()), "k2.graph", "k2.graph"),
        ),
        ("k2-swap.hom", emit_hom(&swap_hom(), "k2.graph", "k2.graph")),
        ("k2-collapse.hom", emit_hom(&collapse_hom(), "k2.graph", "loop.graph")),
        (
            "full-p12-1x1.pattern",
            emit_pattern(
                &Pattern::full(FunctorExpr::P12, ColorSet::terminal(), DEFAULT_MAX_ENUM).unwrap(),
            ),
        ),
        ("loops-directed.pattern", emit_pattern(&loops_directed_pattern())),
    ]
}

#[test]
fn golden_files_are_canonical() {
    let dir = golden_dir();
    let contents = golden_contents();
    assert_eq!(contents.len(), 20);
    if std::env::var_os("UPDATE_GOLDENS").is_some() {
        fs::create_dir_all(&dir).unwrap();
        for (name, text) in &contents {
            fs::write(dir.join(name), text).unwrap();
        }
    }
    for (name, text) in &contents {
        let on_disk = fs::read_to_string(dir.join(name))
            .unwrap_or_else(|_| panic!("golden file {name} missing; run with UPDATE_GOLDENS=1"));
        assert_eq!(&on_disk, text, "golden file {name} is out of date");
    }
}

#[test]
fn validate_reports_ok_and_failures() {
    let dir = golden_dir();
    let out = run_in(&dir, &["validate", "k2.graph"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out).trim(), "ok");

    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.graph");
    fs::write(&bad, r#"{"edges":{"e":{"set":["v","z"]}},"functor":"P12","vertices":["v"]}"#)
        .unwrap();
    let out = run_in(tmp.path(), &["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let junk = tmp.path().join("junk.graph");
    fs::write(&junk, "not json").unwrap();
    let out = run_in(tmp.path(), &["validate", junk.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    let out = run_in(tmp.path(), &["validate", "no-such-file.graph"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_arguments_exit_with_parse_code() {
    let out = bin().arg("no-such-subcommand").output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = bin().arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn guard_exit_code_and_env_override() {
    let dir = golden_dir();
    let out = run_in(&dir, &["hom-enum", "triangle.graph", "triangle.graph", "--max-enum", "10"]);
    assert_eq!(out.status.code(), Some(2));

    let out = bin()
        .current_dir(&dir)
        .env("COALGRAPH_MAX_ENUM", "10")
        .args(["hom-enum", "triangle.graph", "triangle.graph"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // The explicit flag wins over the environment.
    let out = bin()
        .current_dir(&dir)
        .env("COALGRAPH_MAX_ENUM", "10")
        .args(["hom-enum", "triangle.graph", "triangle.graph", "--max-enum", "4096"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn hom_subcommands_work_on_goldens() {
    let dir = golden_dir();
    for hom in ["k2-id.hom", "k2-swap.hom", "k2-collapse.hom"] {
        let out = run_in(&dir, &["hom-check", hom]);
        assert_eq!(out.status.code(), Some(0), "{hom}");
    }

    let out = run_in(&dir, &["hom-enum", "k2.graph", "k2.graph"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("\"count\": 2"));

    let out = run_in(&dir, &["iso-check", "k2.graph", "k2.graph"]);
    assert_eq!(stdout_of(&out).trim(), "true");
    let out = run_in(&dir, &["iso-check", "k2.graph", "loop.graph"]);
    assert_eq!(stdout_of(&out).trim(), "false");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn factorize_writes_a_checkable_triple() {
    let dir = golden_dir();
    let tmp = tempfile::tempdir().unwrap();
    let prefix = tmp.path().join("collapse");
    let out = run_in(
        &dir,
        &["factorize", "k2-collapse.hom", "--out-prefix", prefix.to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    for suffix in ["image.graph", "epi.hom", "mono.hom"] {
        let path = tmp.path().join(format!("collapse.{suffix}"));
        assert!(path.exists(), "missing {suffix}");
    }
    let out = run_in(tmp.path(), &["hom-check", "collapse.epi.hom"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run_in(tmp.path(), &["hom-check", "collapse.mono.hom"]);
    assert_eq!(out.status.code(), Some(0));
    // The image of the collapse is the loop graph.
    let image = parse_graph(&fs::read_to_string(tmp.path().join("collapse.image.graph")).unwrap())
        .unwrap();
    assert_eq!(image.vertices().len(), 1);
    assert_eq!(image.edges().len(), 1);
}

#[test]
fn constructions_write_valid_documents() {
    let dir = golden_dir();
    let tmp = tempfile::tempdir().unwrap();

    let product = tmp.path().join("p.graph");
    let out = run_in(
        &dir,
        &["product", "k2.graph", "k2.graph", "-o", product.to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("4 vertices, 2 edges"));
    let p = parse_graph(&fs::read_to_string(&product).unwrap()).unwrap();
    assert_eq!(p.edges().len(), 2);

    let sum = tmp.path().join("s.graph");
    let proj = tmp.path().join("inj_a.hom");
    let out = run_in(
        &dir,
        &[
            "coproduct",
            "k2.graph",
            "loop.graph",
            "-o",
            sum.to_str().unwrap(),
            "--inj-a",
            proj.to_str().unwrap(),
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("3 vertices, 2 edges"));
    let out = run_in(tmp.path(), &["hom-check", "inj_a.hom"]);
    assert_eq!(out.status.code(), Some(0));

    let eq = tmp.path().join("eq.graph");
    let out = run_in(
        &dir,
        &["equalizer", "k2-id.hom", "k2-swap.hom", "-o", eq.to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("0 vertices, 0 edges"));

    let out = run_in(&dir, &["equalizer", "k2-id.hom", "k2-collapse.hom", "-o", eq.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "non-parallel homs are a validation failure");
}

#[test]
fn coloring_subcommands() {
    let dir = golden_dir();
    let tmp = tempfile::tempdir().unwrap();

    let lifted = tmp.path().join("lifted.hom");
    let cofree = tmp.path().join("cofree.graph");
    let out = run_in(
        &dir,
        &[
            "lift",
            "k2.graph",
            "--vcol",
            "v=r,w=g",
            "--ecol",
            "e=1",
            "--vcolors",
            "r,g",
            "--ecolors",
            "1,2",
            "-o",
            lifted.to_str().unwrap(),
            "--cofree-out",
            cofree.to_str().unwrap(),
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run_in(tmp.path(), &["hom-check", "lifted.hom"]);
    assert_eq!(out.status.code(), Some(0));

    let colored = tmp.path().join("colored.graph");
    let out = run_in(
        &dir,
        &[
            "color",
            "k2.graph",
            "--vcol",
            "v=r,w=g",
            "--ecol",
            "e=1",
            "--vcolors",
            "r,g",
            "--ecolors",
            "1,2",
            "-o",
            colored.to_str().unwrap(),
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&colored).unwrap();
    let expected = fs::read_to_string(dir.join("colored-k2.graph")).unwrap();
    assert_eq!(text, expected);

    let out = run_in(tmp.path(), &["export-dot", "colored.graph"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("label=\"v:r\""));
}

#[test]
fn pattern_subcommands() {
    let dir = golden_dir();
    let out = run_in(&dir, &["satisfies", "k2.graph", "full-p12-1x1.pattern"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out).trim(), "true");

    let out = run_in(&dir, &["satisfies", "arrow.graph", "loops-directed.pattern"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out).trim(), "false");

    let out = run_in(&dir, &["satisfies", "directed-loop.graph", "loops-directed.pattern"]);
    assert_eq!(stdout_of(&out).trim(), "true");

    // A pattern against the wrong functor is a validation failure.
    let out = run_in(&dir, &["satisfies", "k2.graph", "loops-directed.pattern"]);
    assert_eq!(out.status.code(), Some(1));

    let tmp = tempfile::tempdir().unwrap();
    let pat = tmp.path().join("least.pattern");
    let out = run_in(
        &dir,
        &[
            "pattern-of",
            "loop.graph",
            "--vcolors",
            "*",
            "--ecolors",
            "*",
            "-o",
            pat.to_str().unwrap(),
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let out = run_in(tmp.path(), &["satisfies", dir.join("loop.graph").to_str().unwrap(), "least.pattern"]);
    assert_eq!(stdout_of(&out).trim(), "true");

    let out = run_in(&dir, &["cogenerate", "full-p12-1x1.pattern"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("\"functor\": \"P12\""));

    let out = run_in(&dir, &["cogenerate", "k2.graph", "--vkeep", "v", "--ekeep", "e"]);
    assert_eq!(out.status.code(), Some(0));
    let sub = parse_graph(&stdout_of(&out)).unwrap();
    assert_eq!(sub.vertices().len(), 1);
    assert!(sub.edges().is_empty());
}

#[test]
fn class_subcommands() {
    let dir = golden_dir();
    let out = run_in(&dir, &["subgraphs", "k2.graph"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("\"count\": 5"));

    let out = run_in(&dir, &["closure", "loop.graph", "--ops", "shs", "--max-summands", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let listing: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    // One pass over {loop}: sums give the loop and its double, images
    // add the two loops on one vertex, subgraphs spread that out to
    // seven classes.
    assert_eq!(listing["count"], serde_json::json!(7));

    let out = run_in(&dir, &["closure", "loop.graph", "--ops", "bogus"]);
    assert_eq!(out.status.code(), Some(3));

    // A single operator works on its own.
    let out = run_in(&dir, &["closure", "k2.graph", "--ops", "sub"]);
    assert_eq!(out.status.code(), Some(0));
    let listing: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    // Up to isomorphism: empty, one vertex, two vertices, K2 itself.
    assert_eq!(listing["count"], serde_json::json!(4));

    // Class members must live over one functor.
    let out = run_in(&dir, &["closure", "k2.graph", "arrow.graph", "--ops", "shs"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run_in(
        &dir,
        &[
            "birkhoff",
            "-k",
            "vertex.graph",
            "-u",
            "empty.graph",
            "-u",
            "vertex.graph",
            "-u",
            "loop.graph",
            "--vcolors",
            "*",
            "--ecolors",
            "*",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["verdict"], serde_json::json!("pass"));
    assert_eq!(report["closure"].as_array().unwrap().len(), 2);
}

#[test]
fn dot_subcommand_shapes_and_refusals() {
    let dir = golden_dir();
    let out = run_in(&dir, &["export-dot", "arrow.graph"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).starts_with("digraph"));

    let out = run_in(&dir, &["export-dot", "k2.graph"]);
    assert!(stdout_of(&out).contains("\"v\" -- \"w\";"));

    let out = run_in(&dir, &["export-dot", "hypergraph.graph"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run_in(&dir, &["cochain", "--functor", "P12", "--vcolors", "r,g", "--ecolors", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("X2: 2 vertices, 6 edges"));
    assert!(text.contains("stabilized: true"));
}
