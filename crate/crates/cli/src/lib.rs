//! The `coalgraph` command-line tool.
//!
//! Every subcommand delegates to the core library and maps its errors
//! onto fixed exit codes: 0 success, 1 validation or semantic failure,
//! 2 enumeration guard exceeded, 3 parse or input error.

mod args;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde_json::{json, Value};

use coalgraph_core::constructions::{
    cofree_cochain, cofree_graph, colored_graph, coproduct_graphs, equalizer_graphs,
    lift_coloring, product_graphs, ColorSet, Coloring,
};
use coalgraph_core::covariety::{
    birkhoff_check, closure_images, closure_subgraphs, closure_sums, cogenerated_by_pattern,
    pattern_of_class, satisfies, BirkhoffVerdict, GraphClass,
};
use coalgraph_core::dot::export_dot;
use coalgraph_core::error::Error as CoreError;
use coalgraph_core::finset::{FinFunction, FinSet};
use coalgraph_core::format::{
    emit_graph, emit_hom, emit_pattern, functor_from_str, graph_to_value, parse_graph,
    parse_hom_document, parse_pattern, pattern_to_value, realize_hom, render,
};
use coalgraph_core::functor::DEFAULT_MAX_ENUM;
use coalgraph_core::graph::{
    enumerate_homs, enumerate_subgraphs, image_factorization, is_isomorphic,
    largest_subcoalgebra, FGraph, GraphHom, SubgraphSpec,
};

pub use args::{Cli, Command};

/// Exit code for validation and semantic failures.
pub const EXIT_VALIDATION: i32 = 1;
/// Exit code when an enumeration guard is exceeded.
pub const EXIT_GUARD: i32 = 2;
/// Exit code for parse and input errors.
pub const EXIT_PARSE: i32 = 3;

struct Failure {
    code: i32,
    message: String,
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::SizeGuardExceeded(_) => EXIT_GUARD,
            CoreError::Parse(_) => EXIT_PARSE,
            _ => EXIT_VALIDATION,
        };
        Failure { code, message: e.to_string() }
    }
}

type Exec<T> = Result<T, Failure>;

fn read_file(path: &Path) -> Exec<String> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn write_file(path: &Path, contents: &str) -> Exec<()> {
    fs::write(path, contents).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn read_graph(path: &Path) -> Exec<FGraph> {
    Ok(parse_graph(&read_file(path)?)?)
}

fn emit_or_print(output: Option<&Path>, text: &str) -> Exec<()> {
    match output {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Splits a comma-separated atom list; the empty string is the empty set.
fn parse_atoms(text: &str) -> FinSet {
    if text.is_empty() {
        FinSet::empty()
    } else {
        FinSet::new(text.split(','))
    }
}

/// Parses `a=x,b=y` into a table.
fn parse_table(text: &str) -> Exec<BTreeMap<String, String>> {
    let mut table = BTreeMap::new();
    if text.is_empty() {
        return Ok(table);
    }
    for entry in text.split(',') {
        match entry.split_once('=') {
            Some((k, v)) if !k.is_empty() => {
                table.insert(k.to_string(), v.to_string());
            }
            _ => {
                return Err(Failure {
                    code: EXIT_PARSE,
                    message: format!("malformed mapping entry {entry:?}, expected atom=color"),
                })
            }
        }
    }
    Ok(table)
}

fn coloring_from_flags(
    graph: &FGraph,
    vcol: &str,
    ecol: &str,
    vcolors: &str,
    ecolors: &str,
) -> Exec<Coloring> {
    let x = ColorSet::new(parse_atoms(vcolors), parse_atoms(ecolors));
    let vcol = FinFunction::new(graph.vertices().clone(), x.vcolors.clone(), parse_table(vcol)?)?;
    let ecol = FinFunction::new(graph.edges().clone(), x.ecolors.clone(), parse_table(ecol)?)?;
    Ok(Coloring::new(graph.clone(), vcol, ecol)?)
}

/// Loads a homomorphism document and the graphs it references
/// (relative paths resolve against the document's directory).
fn read_hom(path: &Path) -> Exec<GraphHom> {
    let doc = parse_hom_document(&read_file(path)?)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let src = read_graph(&base.join(&doc.src))?;
    let dst = read_graph(&base.join(&doc.dst))?;
    Ok(realize_hom(&doc, src, dst)?)
}

/// File reference for an emitted hom document: absolute, so the
/// document stays loadable no matter where it is written.
fn reference(path: &Path) -> String {
    fs::canonicalize(path)
        .unwrap_or_else(|_| path.to_path_buf())
        .display()
        .to_string()
}

fn hom_value(h: &GraphHom) -> Value {
    json!({
        "emap": h.emap().table(),
        "vmap": h.vmap().table(),
    })
}

fn class_from_files(paths: &[PathBuf]) -> Exec<GraphClass> {
    let mut graphs = Vec::new();
    for p in paths {
        graphs.push(read_graph(p)?);
    }
    let functor = graphs[0].functor().clone();
    Ok(GraphClass::new(functor, graphs)?)
}

enum ClosureOp {
    Sub,
    Hom,
    Sum,
}

/// Parses the closure operator list. Operators are written in
/// composition order (rightmost applies first); the returned vector is
/// in application order.
fn parse_ops(text: &str) -> Exec<Vec<ClosureOp>> {
    let spelled = if text == "shs" { "sub,hom,sum" } else { text };
    let mut ops = Vec::new();
    for name in spelled.split(',') {
        ops.push(match name {
            "sub" => ClosureOp::Sub,
            "hom" => ClosureOp::Hom,
            "sum" => ClosureOp::Sum,
            other => {
                return Err(Failure {
                    code: EXIT_PARSE,
                    message: format!(
                        "unknown closure operator {other:?}, expected sub, hom or sum"
                    ),
                })
            }
        });
    }
    ops.reverse();
    Ok(ops)
}

fn resolve_max_enum(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var("COALGRAPH_MAX_ENUM").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(DEFAULT_MAX_ENUM)
}

/// Runs the CLI on the given argument list and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let max_enum = resolve_max_enum(cli.max_enum);
    match dispatch(cli.command, max_enum) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, max_enum: usize) -> Exec<()> {
    match command {
        Command::Validate { graph } => {
            read_graph(&graph)?;
            println!("ok");
            Ok(())
        }
        Command::HomCheck { hom } => {
            read_hom(&hom)?;
            println!("ok");
            Ok(())
        }
        Command::HomEnum { a, b, output } => {
            let homs = enumerate_homs(&read_graph(&a)?, &read_graph(&b)?, max_enum)?;
            let listing = json!({
                "count": homs.len(),
                "homs": homs.iter().map(hom_value).collect::<Vec<_>>(),
            });
            emit_or_print(output.as_deref(), &render(&listing))
        }
        Command::IsoCheck { a, b } => {
            println!("{}", is_isomorphic(&read_graph(&a)?, &read_graph(&b)?));
            Ok(())
        }
        Command::Factorize { hom, out_prefix } => {
            let doc = parse_hom_document(&read_file(&hom)?)?;
            let h = read_hom(&hom)?;
            let (image, epi, mono) = image_factorization(&h)?;
            let prefix = out_prefix.display();
            let image_path = PathBuf::from(format!("{prefix}.image.graph"));
            let epi_path = PathBuf::from(format!("{prefix}.epi.hom"));
            let mono_path = PathBuf::from(format!("{prefix}.mono.hom"));
            write_file(&image_path, &emit_graph(&image))?;
            let base = hom.parent().unwrap_or(Path::new("."));
            let src_ref = reference(&base.join(&doc.src));
            let dst_ref = reference(&base.join(&doc.dst));
            let image_ref = reference(&image_path);
            write_file(&epi_path, &emit_hom(&epi, &src_ref, &image_ref))?;
            write_file(&mono_path, &emit_hom(&mono, &image_ref, &dst_ref))?;
            println!(
                "image: {} vertices, {} edges",
                image.vertices().len(),
                image.edges().len()
            );
            Ok(())
        }
        Command::Subgraphs { graph, output } => {
            let g = read_graph(&graph)?;
            let subs = enumerate_subgraphs(&g, max_enum)?;
            let listing = json!({
                "count": subs.len(),
                "subgraphs": subs
                    .iter()
                    .map(|s| json!({
                        "edges": s.edges().iter().collect::<Vec<_>>(),
                        "vertices": s.vertices().iter().collect::<Vec<_>>(),
                    }))
                    .collect::<Vec<_>>(),
            });
            emit_or_print(output.as_deref(), &render(&listing))
        }
        Command::Cogenerate { input, vkeep, ekeep, output } => {
            let is_pattern = input.extension().is_some_and(|x| x == "pattern");
            let sub = if is_pattern {
                let p = parse_pattern(&read_file(&input)?, max_enum)?;
                cogenerated_by_pattern(&p, max_enum)?
            } else {
                let g = read_graph(&input)?;
                let spec = SubgraphSpec::new(
                    parse_atoms(vkeep.as_deref().unwrap_or("")),
                    parse_atoms(ekeep.as_deref().unwrap_or("")),
                );
                largest_subcoalgebra(&g, &spec)?
            };
            emit_or_print(output.as_deref(), &emit_graph(&sub))
        }
        Command::Product { a, b, output, proj_a, proj_b } => {
            let ga = read_graph(&a)?;
            let gb = read_graph(&b)?;
            let (p, pa, pb) = product_graphs(&ga, &gb, max_enum)?;
            write_file(&output, &emit_graph(&p))?;
            let out_ref = reference(&output);
            if let Some(path) = proj_a {
                write_file(&path, &emit_hom(&pa, &out_ref, &reference(&a)))?;
            }
            if let Some(path) = proj_b {
                write_file(&path, &emit_hom(&pb, &out_ref, &reference(&b)))?;
            }
            println!("{} vertices, {} edges", p.vertices().len(), p.edges().len());
            Ok(())
        }
        Command::Coproduct { a, b, output, inj_a, inj_b } => {
            let ga = read_graph(&a)?;
            let gb = read_graph(&b)?;
            let (s, ia, ib) = coproduct_graphs(&ga, &gb)?;
            write_file(&output, &emit_graph(&s))?;
            let out_ref = reference(&output);
            if let Some(path) = inj_a {
                write_file(&path, &emit_hom(&ia, &reference(&a), &out_ref))?;
            }
            if let Some(path) = inj_b {
                write_file(&path, &emit_hom(&ib, &reference(&b), &out_ref))?;
            }
            println!("{} vertices, {} edges", s.vertices().len(), s.edges().len());
            Ok(())
        }
        Command::Equalizer { h1, h2, output, inclusion } => {
            let hom1 = read_hom(&h1)?;
            let hom2 = read_hom(&h2)?;
            let (eq, incl) = equalizer_graphs(&hom1, &hom2)?;
            write_file(&output, &emit_graph(&eq))?;
            if let Some(path) = inclusion {
                let doc1 = parse_hom_document(&read_file(&h1)?)?;
                let base = h1.parent().unwrap_or(Path::new("."));
                let src_ref = reference(&base.join(&doc1.src));
                write_file(&path, &emit_hom(&incl, &reference(&output), &src_ref))?;
            }
            println!("{} vertices, {} edges", eq.vertices().len(), eq.edges().len());
            Ok(())
        }
        Command::Cofree { functor, vcolors, ecolors, output } => {
            let f = functor_from_str(&functor)?;
            let x = ColorSet::new(parse_atoms(&vcolors), parse_atoms(&ecolors));
            let (cofree, _) = cofree_graph(&f, &x, max_enum)?;
            emit_or_print(output.as_deref(), &emit_graph(&cofree))?;
            if output.is_some() {
                println!(
                    "{} vertices, {} edges",
                    cofree.vertices().len(),
                    cofree.edges().len()
                );
            }
            Ok(())
        }
        Command::Cochain { functor, vcolors, ecolors } => {
            let f = functor_from_str(&functor)?;
            let x = ColorSet::new(parse_atoms(&vcolors), parse_atoms(&ecolors));
            let chain = cofree_cochain(&f, &x, max_enum)?;
            for (i, pair) in chain.carriers.iter().enumerate() {
                println!("X{i}: {} vertices, {} edges", pair.first.len(), pair.second.len());
            }
            println!("stabilized: {}", chain.stabilized);
            Ok(())
        }
        Command::Lift { graph, vcol, ecol, vcolors, ecolors, output, cofree_out } => {
            let g = read_graph(&graph)?;
            let coloring = coloring_from_flags(&g, &vcol, &ecol, &vcolors, &ecolors)?;
            let (cofree, _) = cofree_graph(g.functor(), &coloring.color_set(), max_enum)?;
            let lifted = lift_coloring(&coloring, &cofree, max_enum)?;
            write_file(&cofree_out, &emit_graph(&cofree))?;
            write_file(
                &output,
                &emit_hom(&lifted, &reference(&graph), &reference(&cofree_out)),
            )?;
            println!("ok");
            Ok(())
        }
        Command::Color { graph, vcol, ecol, vcolors, ecolors, output } => {
            let g = read_graph(&graph)?;
            let coloring = coloring_from_flags(&g, &vcol, &ecol, &vcolors, &ecolors)?;
            let colored = colored_graph(&coloring)?;
            emit_or_print(output.as_deref(), &emit_graph(&colored))
        }
        Command::Satisfies { graph, pattern } => {
            let g = read_graph(&graph)?;
            let p = parse_pattern(&read_file(&pattern)?, max_enum)?;
            println!("{}", satisfies(&g, &p, max_enum)?);
            Ok(())
        }
        Command::PatternOf { graphs, vcolors, ecolors, output } => {
            let class = class_from_files(&graphs)?;
            let x = ColorSet::new(parse_atoms(&vcolors), parse_atoms(&ecolors));
            let p = pattern_of_class(&class, &x, max_enum)?;
            emit_or_print(output.as_deref(), &emit_pattern(&p))
        }
        Command::Closure { graphs, ops, max_summands, output } => {
            let mut class = class_from_files(&graphs)?;
            for op in parse_ops(&ops)? {
                class = match op {
                    ClosureOp::Sub => closure_subgraphs(&class, max_enum)?,
                    ClosureOp::Hom => closure_images(&class, max_enum)?,
                    ClosureOp::Sum => closure_sums(&class, max_summands)?,
                };
            }
            let listing = json!({
                "count": class.len(),
                "members": class.members().iter().map(graph_to_value).collect::<Vec<_>>(),
            });
            emit_or_print(output.as_deref(), &render(&listing))
        }
        Command::Birkhoff { class, universe, vcolors, ecolors, max_summands, output } => {
            let k = class_from_files(&class)?;
            let mut named_universe: Vec<(String, FGraph)> = Vec::new();
            for path in &universe {
                named_universe.push((path.display().to_string(), read_graph(path)?));
            }
            let u = GraphClass::new(
                k.functor().clone(),
                named_universe.iter().map(|(_, g)| g.clone()),
            )?;
            let x = ColorSet::new(parse_atoms(&vcolors), parse_atoms(&ecolors));
            let report = birkhoff_check(&k, &u, &x, max_summands, max_enum)?;
            let names = |members: &[FGraph]| -> Vec<String> {
                members
                    .iter()
                    .map(|g| {
                        named_universe
                            .iter()
                            .find(|(_, ug)| is_isomorphic(ug, g))
                            .map(|(name, _)| name.clone())
                            .unwrap_or_else(|| "<outside universe>".to_string())
                    })
                    .collect()
            };
            let verdict = match report.verdict {
                BirkhoffVerdict::Pass => "pass",
                BirkhoffVerdict::InconclusiveAtBounds => "inconclusive-at-bounds",
                BirkhoffVerdict::SoundnessViolation => "soundness-violation",
            };
            let value = json!({
                "closure": names(report.closure.members()),
                "extra": names(&report.extra),
                "missing": names(&report.missing),
                "pattern": pattern_to_value(&report.pattern),
                "rounds": report.rounds,
                "satisfying": names(report.satisfying.members()),
                "single_pass": names(report.single_pass.members()),
                "verdict": verdict,
            });
            emit_or_print(output.as_deref(), &render(&value))
        }
        Command::ExportDot { graph, output } => {
            let text = export_dot(&read_graph(&graph)?)?;
            emit_or_print(output.as_deref(), &text)
        }
    }
}
