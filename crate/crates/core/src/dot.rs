//! DOT export for drawable edge functors.
//!
//! Supported shapes: `P12` (undirected), `Prod(Id,Id)` (directed), and
//! the colored wrappers of either as produced by
//! [`crate::constructions::colored_graph`]. Colors become label
//! attributes. Everything else is refused: a hypergraph has no
//! faithful DOT rendering.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::functor::{FElem, FunctorExpr};
use crate::graph::FGraph;

enum DotShape {
    Undirected,
    Directed,
    ColoredUndirected,
    ColoredDirected,
}

fn classify(f: &FunctorExpr) -> Result<DotShape> {
    if *f == FunctorExpr::P12 {
        return Ok(DotShape::Undirected);
    }
    if *f == FunctorExpr::directed() {
        return Ok(DotShape::Directed);
    }
    // Colored wrapper: Prod(Const(X_E), Comp(inner, Prod(Const(X_V), Id))).
    if let FunctorExpr::Prod(l, r) = f {
        if let (FunctorExpr::Const(_), FunctorExpr::Comp(inner, relabel)) = (l.as_ref(), r.as_ref())
        {
            let relabel_ok = matches!(
                relabel.as_ref(),
                FunctorExpr::Prod(c, i) if matches!(c.as_ref(), FunctorExpr::Const(_)) && **i == FunctorExpr::Id
            );
            if relabel_ok {
                if **inner == FunctorExpr::P12 {
                    return Ok(DotShape::ColoredUndirected);
                }
                if **inner == FunctorExpr::directed() {
                    return Ok(DotShape::ColoredDirected);
                }
            }
        }
    }
    Err(Error::UnsupportedFunctorForDot(f.to_string()))
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn bad_structure(e: &FElem) -> Error {
    Error::UnsupportedFunctorForDot(format!("structure {e} has no drawable shape"))
}

fn plain_atom(e: &FElem) -> Result<&str> {
    match e {
        FElem::Atom(a) => Ok(a),
        _ => Err(bad_structure(e)),
    }
}

/// A labelled vertex `(color, vertex)` from a colored structure value.
fn colored_atom(e: &FElem) -> Result<(&str, &str)> {
    match e {
        FElem::Pair(c, v) => match (c.as_ref(), v.as_ref()) {
            (FElem::ConstVal(color), FElem::Atom(atom)) => Ok((color, atom)),
            _ => Err(bad_structure(e)),
        },
        _ => Err(bad_structure(e)),
    }
}

fn undirected_endpoints(e: &FElem, colored: bool) -> Result<Vec<(&str, Option<&str>)>> {
    match e {
        FElem::SetOf(vs) if (1..=2).contains(&vs.len()) => vs
            .iter()
            .map(|m| {
                if colored {
                    colored_atom(m).map(|(c, v)| (v, Some(c)))
                } else {
                    plain_atom(m).map(|v| (v, None))
                }
            })
            .collect(),
        _ => Err(bad_structure(e)),
    }
}

/// Renders a graph as DOT text. Undirected functors emit `--` edges
/// with singleton supports drawn as self-loops; directed ones emit
/// `->`. For colored graphs the edge color is the edge label and each
/// vertex is labelled `atom:color`.
pub fn export_dot(g: &FGraph) -> Result<String> {
    let shape = classify(g.functor())?;
    let (keyword, connector, colored) = match shape {
        DotShape::Undirected => ("graph", "--", false),
        DotShape::Directed => ("digraph", "->", false),
        DotShape::ColoredUndirected => ("graph", "--", true),
        DotShape::ColoredDirected => ("digraph", "->", true),
    };

    // (left endpoint, right endpoint, edge label)
    let mut lines: Vec<(String, String, Option<String>)> = Vec::new();
    let mut vertex_labels: BTreeMap<String, String> = BTreeMap::new();
    for e in g.edges().iter() {
        let s = g.structure_of(e);
        let (payload, label) = if colored {
            match s {
                FElem::Pair(c, rest) => match c.as_ref() {
                    FElem::ConstVal(color) => (rest.as_ref(), Some(color.clone())),
                    _ => return Err(bad_structure(s)),
                },
                _ => return Err(bad_structure(s)),
            }
        } else {
            (s, None)
        };
        let (from, to) = match (&shape, payload) {
            (DotShape::Directed | DotShape::ColoredDirected, FElem::Pair(a, b)) => {
                let (from, to) = if colored {
                    let (ca, va) = colored_atom(a)?;
                    let (cb, vb) = colored_atom(b)?;
                    vertex_labels.insert(va.to_string(), ca.to_string());
                    vertex_labels.insert(vb.to_string(), cb.to_string());
                    (va.to_string(), vb.to_string())
                } else {
                    (plain_atom(a)?.to_string(), plain_atom(b)?.to_string())
                };
                (from, to)
            }
            (DotShape::Undirected | DotShape::ColoredUndirected, _) => {
                let endpoints = undirected_endpoints(payload, colored)?;
                for (v, c) in &endpoints {
                    if let Some(c) = c {
                        vertex_labels.insert(v.to_string(), c.to_string());
                    }
                }
                let from = endpoints[0].0.to_string();
                let to = endpoints.last().unwrap().0.to_string();
                (from, to)
            }
            _ => return Err(bad_structure(s)),
        };
        lines.push((from, to, label));
    }

    let mut out = String::new();
    writeln!(out, "{keyword} g {{").unwrap();
    for v in g.vertices().iter() {
        match vertex_labels.get(v) {
            Some(color) => {
                writeln!(out, "  {} [label={}];", quote(v), quote(&format!("{v}:{color}"))).unwrap()
            }
            None => writeln!(out, "  {};", quote(v)).unwrap(),
        }
    }
    for (from, to, label) in lines {
        match label {
            Some(l) => writeln!(
                out,
                "  {} {connector} {} [label={}];",
                quote(&from),
                quote(&to),
                quote(&l)
            )
            .unwrap(),
            None => writeln!(out, "  {} {connector} {};", quote(&from), quote(&to)).unwrap(),
        }
    }
    writeln!(out, "}}").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{colored_graph, ColorSet, Coloring};
    use crate::finset::{FinFunction, FinSet};
    use crate::samples;

    // A minimal checker for the DOT subset the exporter emits:
    //   dot   := ("graph"|"digraph") id '{' stmt* '}'
    //   stmt  := id (connector id)? attrs? ';'
    //   attrs := '[' id '=' id ']'
    mod dot_checker {
        #[derive(Debug, PartialEq)]
        pub enum Token {
            Id(String),
            Sym(String),
        }

        pub fn tokenize(text: &str) -> Result<Vec<Token>, String> {
            let mut out = Vec::new();
            let mut chars = text.chars().peekable();
            while let Some(&c) = chars.peek() {
                match c {
                    ' ' | '\t' | '\n' | '\r' => {
                        chars.next();
                    }
                    '{' | '}' | '[' | ']' | ';' | '=' => {
                        chars.next();
                        out.push(Token::Sym(c.to_string()));
                    }
                    '-' => {
                        chars.next();
                        match chars.next() {
                            Some(n @ ('-' | '>')) => out.push(Token::Sym(format!("-{n}"))),
                            other => return Err(format!("bad edge operator: -{other:?}")),
                        }
                    }
                    '"' => {
                        chars.next();
                        let mut s = String::new();
                        loop {
                            match chars.next() {
                                Some('"') => break,
                                Some('\\') => match chars.next() {
                                    Some(e) => s.push(e),
                                    None => return Err("unterminated escape".into()),
                                },
                                Some(c) => s.push(c),
                                None => return Err("unterminated string".into()),
                            }
                        }
                        out.push(Token::Id(s));
                    }
                    c if c.is_alphanumeric() || c == '_' => {
                        let mut s = String::new();
                        while let Some(&c) = chars.peek() {
                            if c.is_alphanumeric() || c == '_' {
                                s.push(c);
                                chars.next();
                            } else {
                                break;
                            }
                        }
                        out.push(Token::Id(s));
                    }
                    other => return Err(format!("unexpected character {other:?}")),
                }
            }
            Ok(out)
        }

        pub fn check(text: &str) -> Result<(), String> {
            let tokens = tokenize(text)?;
            let mut i = 0usize;
            let id = |t: &Token| matches!(t, Token::Id(_));
            let sym = |t: &Token, s: &str| matches!(t, Token::Sym(x) if x == s);

            let connector = match tokens.first() {
                Some(Token::Id(k)) if k == "graph" => "--",
                Some(Token::Id(k)) if k == "digraph" => "->",
                other => return Err(format!("expected graph keyword, got {other:?}")),
            };
            i += 1;
            if tokens.get(i).map(id) == Some(true) {
                i += 1;
            }
            if !tokens.get(i).map(|t| sym(t, "{")).unwrap_or(false) {
                return Err("expected '{'".into());
            }
            i += 1;
            loop {
                if tokens.get(i).map(|t| sym(t, "}")).unwrap_or(false) {
                    i += 1;
                    break;
                }
                if !tokens.get(i).map(id).unwrap_or(false) {
                    return Err(format!("expected identifier at token {i}"));
                }
                i += 1;
                if tokens.get(i).map(|t| sym(t, connector)).unwrap_or(false) {
                    i += 1;
                    if !tokens.get(i).map(id).unwrap_or(false) {
                        return Err("expected identifier after edge operator".into());
                    }
                    i += 1;
                }
                if tokens.get(i).map(|t| sym(t, "[")).unwrap_or(false) {
                    i += 1;
                    if !(tokens.get(i).map(id).unwrap_or(false)
                        && tokens.get(i + 1).map(|t| sym(t, "=")).unwrap_or(false)
                        && tokens.get(i + 2).map(id).unwrap_or(false)
                        && tokens.get(i + 3).map(|t| sym(t, "]")).unwrap_or(false))
                    {
                        return Err("malformed attribute list".into());
                    }
                    i += 4;
                }
                if !tokens.get(i).map(|t| sym(t, ";")).unwrap_or(false) {
                    return Err("expected ';'".into());
                }
                i += 1;
            }
            if i != tokens.len() {
                return Err("trailing tokens after '}'".into());
            }
            Ok(())
        }
    }

    #[test]
    fn k2_renders_as_an_undirected_edge() {
        let text = export_dot(&samples::k2()).unwrap();
        assert!(text.starts_with("graph"));
        assert!(text.contains("\"v\" -- \"w\";"));
        dot_checker::check(&text).unwrap();
    }

    #[test]
    fn loop_renders_as_a_self_loop() {
        let text = export_dot(&samples::loop1()).unwrap();
        assert!(text.contains("\"u\" -- \"u\";"));
        dot_checker::check(&text).unwrap();
    }

    #[test]
    fn arrow_renders_as_a_digraph() {
        let text = export_dot(&samples::arrow()).unwrap();
        assert!(text.starts_with("digraph"));
        assert!(text.contains("\"a\" -> \"b\";"));
        dot_checker::check(&text).unwrap();
    }

    #[test]
    fn hypergraphs_are_refused() {
        let g = FGraph::new(
            FunctorExpr::Pow,
            FinSet::new(["a", "b"]),
            FinSet::new(["h"]),
            [("h".to_string(), FElem::set_of([FElem::atom("a"), FElem::atom("b")]))].into(),
        )
        .unwrap();
        assert!(matches!(export_dot(&g), Err(Error::UnsupportedFunctorForDot(_))));
    }

    #[test]
    fn colored_graph_exports_labels() {
        let k2 = samples::k2();
        let x = ColorSet::new(FinSet::new(["r", "g"]), FinSet::new(["1", "2"]));
        let coloring = Coloring::new(
            k2.clone(),
            FinFunction::from_pairs(k2.vertices().clone(), x.vcolors.clone(), [("v", "r"), ("w", "g")]).unwrap(),
            FinFunction::from_pairs(k2.edges().clone(), x.ecolors.clone(), [("e", "1")]).unwrap(),
        )
        .unwrap();
        let colored = colored_graph(&coloring).unwrap();
        let text = export_dot(&colored).unwrap();
        assert!(text.contains("label=\"v:r\""));
        assert!(text.contains("label=\"1\""));
        dot_checker::check(&text).unwrap();
    }

    #[test]
    fn isolated_vertices_are_listed() {
        let text = export_dot(&samples::single_vertex()).unwrap();
        assert!(text.contains("\"v\";"));
        dot_checker::check(&text).unwrap();
    }
}
