//! Small ready-made graphs used in tests, benchmarks and the docs.
//!
//! The undirected graphs live over [`FunctorExpr::P12`], the directed
//! ones over `Prod(Id, Id)`.

use std::collections::BTreeMap;

use crate::finset::FinSet;
use crate::functor::{apply_obj, FElem, FunctorExpr};
use crate::graph::{is_isomorphic, FGraph};

fn graph(functor: FunctorExpr, vertices: &[&str], edges: &[(&str, FElem)]) -> FGraph {
    let structure: BTreeMap<String, FElem> =
        edges.iter().map(|(e, s)| (e.to_string(), s.clone())).collect();
    FGraph::new(
        functor,
        FinSet::new(vertices.iter().copied()),
        FinSet::new(edges.iter().map(|(e, _)| *e)),
        structure,
    )
    .expect("sample graph must validate")
}

fn undirected(atoms: &[&str]) -> FElem {
    FElem::set_of(atoms.iter().map(|a| FElem::atom(*a)))
}

fn arrow_elem(from: &str, to: &str) -> FElem {
    FElem::pair(FElem::atom(from), FElem::atom(to))
}

/// One undirected edge: `V = {v,w}`, `g(e) = {v,w}`.
pub fn k2() -> FGraph {
    graph(FunctorExpr::P12, &["v", "w"], &[("e", undirected(&["v", "w"]))])
}

/// A single loop: `V = {u}`, `g(l) = {u}`.
pub fn loop1() -> FGraph {
    graph(FunctorExpr::P12, &["u"], &[("l", undirected(&["u"]))])
}

/// One vertex, no edges.
pub fn single_vertex() -> FGraph {
    graph(FunctorExpr::P12, &["v"], &[])
}

/// Two loops on the same vertex.
pub fn double_loop() -> FGraph {
    graph(
        FunctorExpr::P12,
        &["u"],
        &[("l1", undirected(&["u"])), ("l2", undirected(&["u"]))],
    )
}

/// A loop at `a` plus an edge `{a,b}`.
pub fn loop_and_edge() -> FGraph {
    graph(
        FunctorExpr::P12,
        &["a", "b"],
        &[("l", undirected(&["a"])), ("e", undirected(&["a", "b"]))],
    )
}

/// The path `a - b - c`.
pub fn path3() -> FGraph {
    graph(
        FunctorExpr::P12,
        &["a", "b", "c"],
        &[("e1", undirected(&["a", "b"])), ("e2", undirected(&["b", "c"]))],
    )
}

/// The triangle on three vertices.
pub fn triangle() -> FGraph {
    graph(
        FunctorExpr::P12,
        &["a", "b", "c"],
        &[
            ("e1", undirected(&["a", "b"])),
            ("e2", undirected(&["b", "c"])),
            ("e3", undirected(&["a", "c"])),
        ],
    )
}

/// One directed edge `a -> b`.
pub fn arrow() -> FGraph {
    graph(FunctorExpr::directed(), &["a", "b"], &[("e", arrow_elem("a", "b"))])
}

/// A directed loop.
pub fn directed_loop() -> FGraph {
    graph(FunctorExpr::directed(), &["u"], &[("l", arrow_elem("u", "u"))])
}

/// The two-cycle `a -> b -> a`.
pub fn two_cycle() -> FGraph {
    graph(
        FunctorExpr::directed(),
        &["a", "b"],
        &[("e1", arrow_elem("a", "b")), ("e2", arrow_elem("b", "a"))],
    )
}

/// The directed path `a -> b -> c`.
pub fn directed_path3() -> FGraph {
    graph(
        FunctorExpr::directed(),
        &["a", "b", "c"],
        &[("e1", arrow_elem("a", "b")), ("e2", arrow_elem("b", "c"))],
    )
}

/// The directed three-cycle.
pub fn directed_triangle() -> FGraph {
    graph(
        FunctorExpr::directed(),
        &["a", "b", "c"],
        &[
            ("e1", arrow_elem("a", "b")),
            ("e2", arrow_elem("b", "c")),
            ("e3", arrow_elem("c", "a")),
        ],
    )
}

/// Five undirected graphs with at most three vertices and edges.
pub fn p12_corpus() -> Vec<FGraph> {
    vec![k2(), loop1(), single_vertex(), path3(), triangle()]
}

/// Five directed graphs with at most three vertices and edges.
pub fn directed_corpus() -> Vec<FGraph> {
    vec![arrow(), directed_loop(), two_cycle(), directed_path3(), directed_triangle()]
}

/// Every graph over `functor` with at most `max_vertices` and
/// `max_edges`, up to isomorphism, on canonical carriers `v0,v1,...` /
/// `e0,e1,...`.
pub fn universe(
    functor: &FunctorExpr,
    max_vertices: usize,
    max_edges: usize,
    max_enum: usize,
) -> crate::error::Result<Vec<FGraph>> {
    let mut out: Vec<FGraph> = Vec::new();
    for nv in 0..=max_vertices {
        let vertices: FinSet = (0..nv).map(|i| format!("v{i}")).collect();
        let elems = apply_obj(functor, &vertices, max_enum)?;
        for ne in 0..=max_edges {
            if ne > 0 && elems.is_empty() {
                continue;
            }
            let edges: FinSet = (0..ne).map(|i| format!("e{i}")).collect();
            // Odometer over structure assignments.
            let mut idx = vec![0usize; ne];
            loop {
                let structure: BTreeMap<String, FElem> = edges
                    .iter()
                    .enumerate()
                    .map(|(i, e)| (e.to_string(), elems[idx[i]].clone()))
                    .collect();
                let g = FGraph::new(functor.clone(), vertices.clone(), edges.clone(), structure)?;
                if !out.iter().any(|h| is_isomorphic(h, &g)) {
                    out.push(g);
                }
                let mut pos = ne;
                let mut done = false;
                loop {
                    if pos == 0 {
                        done = true;
                        break;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < elems.len() {
                        break;
                    }
                    idx[pos] = 0;
                }
                if done {
                    break;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_graph;

    #[test]
    fn all_samples_validate() {
        for g in p12_corpus().into_iter().chain(directed_corpus()) {
            assert!(validate_graph(&g).is_empty());
        }
        assert!(validate_graph(&double_loop()).is_empty());
        assert!(validate_graph(&loop_and_edge()).is_empty());
    }

    #[test]
    fn small_p12_universe_has_eleven_members() {
        // By hand: empty; one vertex with 0..2 loops (3); two vertices
        // bare (1); one edge as loop-plus-isolated or K2 (2); two edges
        // as double-loop-plus-isolated, two separate loops, loop plus
        // edge, or a doubled K2 edge (4).
        let u = universe(&FunctorExpr::P12, 2, 2, 4096).unwrap();
        assert_eq!(u.len(), 11);
        for g in &u {
            assert!(validate_graph(g).is_empty());
        }
    }
}
