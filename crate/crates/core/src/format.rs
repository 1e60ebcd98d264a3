//! Text formats for graphs, homomorphisms and patterns.
//!
//! Everything is restricted JSON with a canonical emitter, so
//! `parse(emit(x))` is the identity and `emit(parse(t))` is
//! byte-identical for canonical input `t`.
//!
//! Functor expressions: `"Id" | "P12" | "Pow" | {"const":[atoms]} |
//! {"prod":[F,F]} | {"sum":[F,F]} | {"comp":[F,F]}`.
//!
//! Structure elements: a bare string is an atom, `{"pair":[e,e]}`,
//! `{"inl":e}`, `{"inr":e}`, `{"set":[e,...]}`, `{"c":atom}` a
//! constant, and the bare string `"unit"` is the reserved unit token.
//!
//! A graph document is `{"edges":{..},"functor":..,"vertices":[..]}`;
//! a homomorphism document carries `src`/`dst` file references plus
//! the two map tables; a pattern document carries the functor, the
//! color pair and the kept carrier atoms.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::constructions::ColorSet;
use crate::covariety::Pattern;
use crate::error::{Error, Result};
use crate::finset::{FinFunction, FinSet};
use crate::functor::{FElem, FunctorExpr};
use crate::graph::{FGraph, GraphHom};

fn parse_err(path: &str, message: impl AsRef<str>) -> Error {
    Error::Parse(format!("{path}: {}", message.as_ref()))
}

pub fn functor_to_value(f: &FunctorExpr) -> Value {
    match f {
        FunctorExpr::Id => json!("Id"),
        FunctorExpr::P12 => json!("P12"),
        FunctorExpr::Pow => json!("Pow"),
        FunctorExpr::Const(c) => json!({ "const": c.iter().collect::<Vec<_>>() }),
        FunctorExpr::Prod(l, r) => json!({ "prod": [functor_to_value(l), functor_to_value(r)] }),
        FunctorExpr::Sum(l, r) => json!({ "sum": [functor_to_value(l), functor_to_value(r)] }),
        FunctorExpr::Comp(o, i) => json!({ "comp": [functor_to_value(o), functor_to_value(i)] }),
    }
}

pub fn functor_from_value(v: &Value, path: &str) -> Result<FunctorExpr> {
    match v {
        Value::String(s) => match s.as_str() {
            "Id" => Ok(FunctorExpr::Id),
            "P12" => Ok(FunctorExpr::P12),
            "Pow" => Ok(FunctorExpr::Pow),
            other => Err(parse_err(path, format!("unknown functor tag {other:?}"))),
        },
        Value::Object(map) => {
            if map.len() != 1 {
                return Err(parse_err(path, "functor object must have exactly one key"));
            }
            let (key, inner) = map.iter().next().unwrap();
            match key.as_str() {
                "const" => {
                    let atoms = string_array(inner, &format!("{path}.const"))?;
                    Ok(FunctorExpr::Const(FinSet::new(atoms)))
                }
                "prod" | "sum" | "comp" => {
                    let items = inner.as_array().ok_or_else(|| {
                        parse_err(&format!("{path}.{key}"), "expected a two-element array")
                    })?;
                    if items.len() != 2 {
                        return Err(parse_err(
                            &format!("{path}.{key}"),
                            "expected a two-element array",
                        ));
                    }
                    let l = functor_from_value(&items[0], &format!("{path}.{key}[0]"))?;
                    let r = functor_from_value(&items[1], &format!("{path}.{key}[1]"))?;
                    Ok(match key.as_str() {
                        "prod" => FunctorExpr::prod(l, r),
                        "sum" => FunctorExpr::sum(l, r),
                        _ => FunctorExpr::comp(l, r),
                    })
                }
                other => Err(parse_err(path, format!("unknown functor tag {other:?}"))),
            }
        }
        _ => Err(parse_err(path, "expected a functor name or a tagged object")),
    }
}

/// Parses a functor expression from a command-line argument: bare
/// names like `P12` work without JSON quoting.
pub fn functor_from_str(text: &str) -> Result<FunctorExpr> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') || trimmed.starts_with('"') {
        let value: Value =
            serde_json::from_str(trimmed).map_err(|e| parse_err("functor", e.to_string()))?;
        functor_from_value(&value, "functor")
    } else {
        functor_from_value(&Value::String(trimmed.to_string()), "functor")
    }
}

pub fn felem_to_value(e: &FElem) -> Value {
    match e {
        FElem::Atom(a) => json!(a),
        FElem::Pair(l, r) => json!({ "pair": [felem_to_value(l), felem_to_value(r)] }),
        FElem::Inl(v) => json!({ "inl": felem_to_value(v) }),
        FElem::Inr(v) => json!({ "inr": felem_to_value(v) }),
        FElem::SetOf(vs) => json!({ "set": vs.iter().map(felem_to_value).collect::<Vec<_>>() }),
        FElem::ConstVal(c) => json!({ "c": c }),
        FElem::Unit => json!("unit"),
    }
}

pub fn felem_from_value(v: &Value, path: &str) -> Result<FElem> {
    match v {
        Value::String(s) => {
            if s == "unit" {
                Ok(FElem::Unit)
            } else {
                Ok(FElem::atom(s.clone()))
            }
        }
        Value::Object(map) => {
            if map.len() != 1 {
                return Err(parse_err(path, "element object must have exactly one key"));
            }
            let (key, inner) = map.iter().next().unwrap();
            let sub = format!("{path}.{key}");
            match key.as_str() {
                "pair" => {
                    let items = inner
                        .as_array()
                        .filter(|a| a.len() == 2)
                        .ok_or_else(|| parse_err(&sub, "expected a two-element array"))?;
                    Ok(FElem::pair(
                        felem_from_value(&items[0], &format!("{sub}[0]"))?,
                        felem_from_value(&items[1], &format!("{sub}[1]"))?,
                    ))
                }
                "inl" => Ok(FElem::inl(felem_from_value(inner, &sub)?)),
                "inr" => Ok(FElem::inr(felem_from_value(inner, &sub)?)),
                "set" => {
                    let items = inner
                        .as_array()
                        .ok_or_else(|| parse_err(&sub, "expected an array"))?;
                    let members: Result<Vec<FElem>> = items
                        .iter()
                        .enumerate()
                        .map(|(i, m)| felem_from_value(m, &format!("{sub}[{i}]")))
                        .collect();
                    Ok(FElem::set_of(members?))
                }
                "c" => match inner {
                    Value::String(c) => Ok(FElem::const_val(c.clone())),
                    _ => Err(parse_err(&sub, "expected an atom string")),
                },
                other => Err(parse_err(path, format!("unknown element tag {other:?}"))),
            }
        }
        _ => Err(parse_err(path, "expected an atom string or a tagged object")),
    }
}

fn string_array(v: &Value, path: &str) -> Result<Vec<String>> {
    let items = v.as_array().ok_or_else(|| parse_err(path, "expected an array"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.as_str()
                .map(str::to_string)
                .ok_or_else(|| parse_err(&format!("{path}[{i}]"), "expected a string"))
        })
        .collect()
}

fn string_map(v: &Value, path: &str) -> Result<BTreeMap<String, String>> {
    let map = v.as_object().ok_or_else(|| parse_err(path, "expected an object"))?;
    map.iter()
        .map(|(k, val)| {
            val.as_str()
                .map(|s| (k.clone(), s.to_string()))
                .ok_or_else(|| parse_err(&format!("{path}.{k}"), "expected a string"))
        })
        .collect()
}

fn top_object<'v>(value: &'v Value, keys: &[&str]) -> Result<&'v Map<String, Value>> {
    let map = value
        .as_object()
        .ok_or_else(|| parse_err("document", "expected a JSON object"))?;
    for key in keys {
        if !map.contains_key(*key) {
            return Err(parse_err("document", format!("missing field {key:?}")));
        }
    }
    for key in map.keys() {
        if !keys.contains(&key.as_str()) {
            return Err(parse_err("document", format!("unknown field {key:?}")));
        }
    }
    Ok(map)
}

/// Canonical rendering: pretty-printed JSON with sorted keys and a
/// trailing newline.
pub fn render(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON rendering cannot fail");
    text.push('\n');
    text
}

/// The document value of a graph.
pub fn graph_to_value(g: &FGraph) -> Value {
    let edges: Map<String, Value> = g
        .edges()
        .iter()
        .map(|e| (e.to_string(), felem_to_value(g.structure_of(e))))
        .collect();
    json!({
        "edges": edges,
        "functor": functor_to_value(g.functor()),
        "vertices": g.vertices().iter().collect::<Vec<_>>(),
    })
}

/// Serializes a graph canonically.
pub fn emit_graph(g: &FGraph) -> String {
    render(&graph_to_value(g))
}

/// Parses and validates a graph document.
pub fn parse_graph(text: &str) -> Result<FGraph> {
    let value: Value = serde_json::from_str(text).map_err(|e| parse_err("document", e.to_string()))?;
    let map = top_object(&value, &["edges", "functor", "vertices"])?;
    let functor = functor_from_value(&map["functor"], "functor")?;
    let vertices = FinSet::new(string_array(&map["vertices"], "vertices")?);
    let edge_obj = map["edges"]
        .as_object()
        .ok_or_else(|| parse_err("edges", "expected an object"))?;
    let mut structure = BTreeMap::new();
    for (e, sv) in edge_obj {
        structure.insert(e.clone(), felem_from_value(sv, &format!("edges.{e}"))?);
    }
    let edges = FinSet::new(edge_obj.keys().cloned());
    FGraph::new(functor, vertices, edges, structure)
}

/// A homomorphism document: map tables plus file references for the
/// source and target graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomDocument {
    pub src: String,
    pub dst: String,
    pub vmap: BTreeMap<String, String>,
    pub emap: BTreeMap<String, String>,
}

pub fn hom_document_to_value(doc: &HomDocument) -> Value {
    json!({
        "dst": doc.dst,
        "emap": doc.emap,
        "src": doc.src,
        "vmap": doc.vmap,
    })
}

pub fn emit_hom_document(doc: &HomDocument) -> String {
    render(&hom_document_to_value(doc))
}

/// Serializes a validated homomorphism with the given file references.
pub fn emit_hom(h: &GraphHom, src: &str, dst: &str) -> String {
    emit_hom_document(&HomDocument {
        src: src.to_string(),
        dst: dst.to_string(),
        vmap: h.vmap().table().clone(),
        emap: h.emap().table().clone(),
    })
}

pub fn parse_hom_document(text: &str) -> Result<HomDocument> {
    let value: Value = serde_json::from_str(text).map_err(|e| parse_err("document", e.to_string()))?;
    let map = top_object(&value, &["dst", "emap", "src", "vmap"])?;
    Ok(HomDocument {
        src: map["src"]
            .as_str()
            .ok_or_else(|| parse_err("src", "expected a file path string"))?
            .to_string(),
        dst: map["dst"]
            .as_str()
            .ok_or_else(|| parse_err("dst", "expected a file path string"))?
            .to_string(),
        vmap: string_map(&map["vmap"], "vmap")?,
        emap: string_map(&map["emap"], "emap")?,
    })
}

/// Builds and validates the homomorphism a document describes, given
/// the already-loaded source and target graphs.
pub fn realize_hom(doc: &HomDocument, src: FGraph, dst: FGraph) -> Result<GraphHom> {
    let vmap = FinFunction::new(src.vertices().clone(), dst.vertices().clone(), doc.vmap.clone())?;
    let emap = FinFunction::new(src.edges().clone(), dst.edges().clone(), doc.emap.clone())?;
    GraphHom::new(src, dst, vmap, emap)
}

/// The document value of a pattern.
pub fn pattern_to_value(p: &Pattern) -> Value {
    json!({
        "colorset": {
            "ecolors": p.colorset().ecolors.iter().collect::<Vec<_>>(),
            "vcolors": p.colorset().vcolors.iter().collect::<Vec<_>>(),
        },
        "ekeep": p.pedges().iter().collect::<Vec<_>>(),
        "functor": functor_to_value(p.functor()),
        "vkeep": p.pvertices().iter().collect::<Vec<_>>(),
    })
}

/// Serializes a pattern canonically.
pub fn emit_pattern(p: &Pattern) -> String {
    render(&pattern_to_value(p))
}

/// Parses and validates a pattern document; `max_enum` bounds the
/// cofree enumeration needed to check the kept edges.
pub fn parse_pattern(text: &str, max_enum: usize) -> Result<Pattern> {
    let value: Value = serde_json::from_str(text).map_err(|e| parse_err("document", e.to_string()))?;
    let map = top_object(&value, &["colorset", "ekeep", "functor", "vkeep"])?;
    let functor = functor_from_value(&map["functor"], "functor")?;
    let cs = map["colorset"]
        .as_object()
        .ok_or_else(|| parse_err("colorset", "expected an object"))?;
    for key in cs.keys() {
        if key != "ecolors" && key != "vcolors" {
            return Err(parse_err("colorset", format!("unknown field {key:?}")));
        }
    }
    let vcolors = FinSet::new(string_array(
        cs.get("vcolors").ok_or_else(|| parse_err("colorset", "missing field \"vcolors\""))?,
        "colorset.vcolors",
    )?);
    let ecolors = FinSet::new(string_array(
        cs.get("ecolors").ok_or_else(|| parse_err("colorset", "missing field \"ecolors\""))?,
        "colorset.ecolors",
    )?);
    let vkeep = FinSet::new(string_array(&map["vkeep"], "vkeep")?);
    let ekeep = FinSet::new(string_array(&map["ekeep"], "ekeep")?);
    Pattern::new(functor, ColorSet::new(vcolors, ecolors), vkeep, ekeep, max_enum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::DEFAULT_MAX_ENUM;
    use crate::graph::validate_hom;
    use crate::samples;

    #[test]
    fn graph_round_trip_is_byte_identical() {
        for g in samples::p12_corpus().into_iter().chain(samples::directed_corpus()) {
            let text = emit_graph(&g);
            let parsed = parse_graph(&text).unwrap();
            assert_eq!(parsed, g);
            assert_eq!(emit_graph(&parsed), text);
        }
    }

    #[test]
    fn k2_document_shape() {
        let text = emit_graph(&samples::k2());
        let parsed = parse_graph(&text).unwrap();
        assert_eq!(parsed.vertices().len(), 2);
        assert_eq!(parsed.edges().len(), 1);
    }

    #[test]
    fn unknown_functor_tag_is_a_parse_error() {
        let text = r#"{"edges":{},"functor":"Wat","vertices":[]}"#;
        assert!(matches!(parse_graph(text), Err(Error::Parse(_))));
    }

    #[test]
    fn ill_typed_structure_is_a_validation_error() {
        let text = r#"{"edges":{"e":{"set":["v","z"]}},"functor":"P12","vertices":["v","w"]}"#;
        assert!(matches!(parse_graph(text), Err(Error::Validation(_))));
    }

    #[test]
    fn functor_expressions_round_trip() {
        let functors = [
            FunctorExpr::Id,
            FunctorExpr::P12,
            FunctorExpr::Pow,
            FunctorExpr::Const(FinSet::new(["a", "b"])),
            FunctorExpr::sum(FunctorExpr::directed(), FunctorExpr::P12),
            FunctorExpr::comp(FunctorExpr::P12, FunctorExpr::prod(FunctorExpr::Const(FinSet::new(["r"])), FunctorExpr::Id)),
        ];
        for f in functors {
            let v = functor_to_value(&f);
            assert_eq!(functor_from_value(&v, "functor").unwrap(), f);
        }
        assert_eq!(functor_from_str("P12").unwrap(), FunctorExpr::P12);
        assert_eq!(
            functor_from_str(r#"{"prod":["Id","Id"]}"#).unwrap(),
            FunctorExpr::directed()
        );
    }

    #[test]
    fn hom_document_round_trip() {
        let k2 = samples::k2();
        let h = GraphHom::identity(&k2);
        let text = emit_hom(&h, "k2.graph", "k2.graph");
        let doc = parse_hom_document(&text).unwrap();
        assert_eq!(emit_hom_document(&doc), text);
        let realized = realize_hom(&doc, k2.clone(), k2).unwrap();
        assert!(validate_hom(&realized).is_empty());
    }

    #[test]
    fn pattern_round_trip() {
        let x = ColorSet::new(FinSet::new(["r", "g"]), FinSet::new(["1", "2"]));
        let p = Pattern::full(FunctorExpr::P12, x, DEFAULT_MAX_ENUM).unwrap();
        let text = emit_pattern(&p);
        let parsed = parse_pattern(&text, DEFAULT_MAX_ENUM).unwrap();
        assert_eq!(parsed, p);
        assert_eq!(emit_pattern(&parsed), text);
    }

    #[test]
    fn pattern_with_bogus_edges_is_rejected() {
        let text = r#"{"colorset":{"ecolors":["1"],"vcolors":["r"]},"ekeep":["(1,{zzz})"],"functor":"P12","vkeep":["r"]}"#;
        assert!(matches!(parse_pattern(text, DEFAULT_MAX_ENUM), Err(Error::Validation(_))));
    }

    #[test]
    fn unit_token_parses_but_never_validates() {
        let e = felem_from_value(&serde_json::json!("unit"), "x").unwrap();
        assert_eq!(e, FElem::Unit);
        let text = r#"{"edges":{"e":"unit"},"functor":"Id","vertices":["v"]}"#;
        assert!(matches!(parse_graph(text), Err(Error::Validation(_))));
    }
}
