//! Limits, colimits and the cofree adjunction.
//!
//! Colimits of graphs are computed carrier-wise in `Set`. Products
//! need more care: the product carrier pairs every vertex combination,
//! but a product edge is an edge pair *together with* a structure
//! element of `F` over the product vertices that projects back onto
//! both factors, i.e. the pullback of `F(projections)` against the
//! paired structure maps. The cofree graph over a color pair has
//! carrier `(X_V, X_E x F(X_V))` with the structure map projecting out
//! the `F` component; its colorings correspond exactly to graph
//! homomorphisms into it, which is the adjunction this module makes
//! executable.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::finset::{self, pair_atom, FinFunction, FinSet, SetPair};
use crate::functor::{apply_mor, apply_obj, map_base_atoms, FElem, FunctorExpr};
use crate::graph::{inclusion_hom, largest_subcoalgebra, FGraph, GraphHom, SubgraphSpec};

/// A pair of color sets: vertex colors and edge colors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorSet {
    pub vcolors: FinSet,
    pub ecolors: FinSet,
}

impl ColorSet {
    pub fn new(vcolors: FinSet, ecolors: FinSet) -> Self {
        ColorSet { vcolors, ecolors }
    }

    /// The color pair `(1,1)`; its cofree graph is the terminal graph.
    pub fn terminal() -> Self {
        ColorSet::new(FinSet::terminal(), FinSet::terminal())
    }
}

/// A coloring of a graph: plain set maps from the carriers into a
/// color pair. No compatibility with the structure map is required.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coloring {
    graph: FGraph,
    vcol: FinFunction,
    ecol: FinFunction,
}

impl Coloring {
    pub fn new(graph: FGraph, vcol: FinFunction, ecol: FinFunction) -> Result<Self> {
        if vcol.dom() != graph.vertices() {
            return Err(Error::DomainMismatch(format!(
                "vertex coloring domain {} does not match the vertices {}",
                vcol.dom(),
                graph.vertices()
            )));
        }
        if ecol.dom() != graph.edges() {
            return Err(Error::DomainMismatch(format!(
                "edge coloring domain {} does not match the edges {}",
                ecol.dom(),
                graph.edges()
            )));
        }
        Ok(Coloring { graph, vcol, ecol })
    }

    pub fn graph(&self) -> &FGraph {
        &self.graph
    }

    pub fn vcol(&self) -> &FinFunction {
        &self.vcol
    }

    pub fn ecol(&self) -> &FinFunction {
        &self.ecol
    }

    pub fn color_set(&self) -> ColorSet {
        ColorSet::new(self.vcol.cod().clone(), self.ecol.cod().clone())
    }
}

/// Coproduct of two graphs with its injection homomorphisms. Carriers
/// are tagged disjoint unions; injected edges keep their structure up
/// to vertex retagging.
pub fn coproduct_graphs(a: &FGraph, b: &FGraph) -> Result<(FGraph, GraphHom, GraphHom)> {
    if a.functor() != b.functor() {
        return Err(Error::FunctorMismatch(format!(
            "coproduct of a {} graph and a {} graph",
            a.functor(),
            b.functor()
        )));
    }
    let (vertices, iva, ivb) = finset::coproduct(a.vertices(), b.vertices());
    let (edges, iea, ieb) = finset::coproduct(a.edges(), b.edges());
    let mut structure = BTreeMap::new();
    for e in a.edges().iter() {
        structure.insert(
            iea.apply(e).to_string(),
            apply_mor(a.functor(), &iva, a.structure_of(e))?,
        );
    }
    for e in b.edges().iter() {
        structure.insert(
            ieb.apply(e).to_string(),
            apply_mor(b.functor(), &ivb, b.structure_of(e))?,
        );
    }
    let sum = FGraph::new(a.functor().clone(), vertices, edges, structure)?;
    let inj_a = GraphHom::new(a.clone(), sum.clone(), iva, iea)?;
    let inj_b = GraphHom::new(b.clone(), sum.clone(), ivb, ieb)?;
    Ok((sum, inj_a, inj_b))
}

/// Product of two graphs with its projection homomorphisms.
///
/// Vertices are the cartesian product. An edge is a pair of factor
/// edges plus one structure element `s` of `F` over the product
/// vertices whose projections recover both factor structures; `s`
/// itself is the structure value. Edge atoms are `((ea,eb)#k)` with
/// `k` the canonical index of `s` among the admissible elements for
/// that edge pair.
pub fn product_graphs(
    a: &FGraph,
    b: &FGraph,
    max_enum: usize,
) -> Result<(FGraph, GraphHom, GraphHom)> {
    if a.functor() != b.functor() {
        return Err(Error::FunctorMismatch(format!(
            "product of a {} graph and a {} graph",
            a.functor(),
            b.functor()
        )));
    }
    let functor = a.functor().clone();
    let (vertices, pa, pb) = finset::product(a.vertices(), b.vertices());
    let candidates = apply_obj(&functor, &vertices, max_enum)?;
    // Projections of every candidate, computed once.
    let projected: Vec<(FElem, FElem)> = candidates
        .iter()
        .map(|s| Ok((apply_mor(&functor, &pa, s)?, apply_mor(&functor, &pb, s)?)))
        .collect::<Result<_>>()?;

    let mut edges = Vec::new();
    let mut structure = BTreeMap::new();
    let mut to_a = Vec::new();
    let mut to_b = Vec::new();
    for ea in a.edges().iter() {
        for eb in b.edges().iter() {
            let mut k = 0usize;
            for (s, (sa, sb)) in candidates.iter().zip(&projected) {
                if sa == a.structure_of(ea) && sb == b.structure_of(eb) {
                    let atom = format!("(({ea},{eb})#{k})");
                    structure.insert(atom.clone(), s.clone());
                    to_a.push((atom.clone(), ea.to_string()));
                    to_b.push((atom.clone(), eb.to_string()));
                    edges.push(atom);
                    k += 1;
                }
            }
        }
    }
    let edges = FinSet::new(edges);
    let product = FGraph::new(functor, vertices, edges.clone(), structure)?;
    let proj_a = GraphHom::new(
        product.clone(),
        a.clone(),
        pa,
        FinFunction::from_pairs(edges.clone(), a.edges().clone(), to_a)?,
    )?;
    let proj_b = GraphHom::new(
        product.clone(),
        b.clone(),
        pb,
        FinFunction::from_pairs(edges, b.edges().clone(), to_b)?,
    )?;
    Ok((product, proj_a, proj_b))
}

/// Equalizer of two parallel homomorphisms: the subgraph of their
/// common source cogenerated from the carrier-wise equalizers in
/// `Set`, with its inclusion.
pub fn equalizer_graphs(h1: &GraphHom, h2: &GraphHom) -> Result<(FGraph, GraphHom)> {
    if h1.src() != h2.src() || h1.dst() != h2.dst() {
        return Err(Error::NotParallel(
            "equalizer needs two homomorphisms with the same source and target".into(),
        ));
    }
    let (ev, _) = finset::equalizer(h1.vmap(), h2.vmap())?;
    let (ee, _) = finset::equalizer(h1.emap(), h2.emap())?;
    let sub = largest_subcoalgebra(h1.src(), &SubgraphSpec::new(ev, ee))?;
    let incl = inclusion_hom(&sub, h1.src())?;
    Ok((sub, incl))
}

fn cofree_edge_atom(color: &str, elem: &FElem) -> String {
    pair_atom(color, &elem.encode())
}

/// The cofree graph over a color pair, together with its counit
/// coloring (identity on vertex colors, edge-color projection on
/// edges).
///
/// Vertices are `X_V`; edges are all pairs `(c, s)` of an edge color
/// and an element of `F(X_V)`, with structure map `(c,s) -> s`.
pub fn cofree_graph(
    functor: &FunctorExpr,
    colors: &ColorSet,
    max_enum: usize,
) -> Result<(FGraph, Coloring)> {
    let elems = apply_obj(functor, &colors.vcolors, max_enum)?;
    let mut edges = Vec::new();
    let mut structure = BTreeMap::new();
    let mut ecol_pairs = Vec::new();
    for c in colors.ecolors.iter() {
        for s in &elems {
            let atom = cofree_edge_atom(c, s);
            structure.insert(atom.clone(), s.clone());
            ecol_pairs.push((atom.clone(), c.to_string()));
            edges.push(atom);
        }
    }
    let edges = FinSet::new(edges);
    let graph = FGraph::new(functor.clone(), colors.vcolors.clone(), edges.clone(), structure)?;
    let counit = Coloring::new(
        graph.clone(),
        FinFunction::identity(&colors.vcolors),
        FinFunction::from_pairs(edges, colors.ecolors.clone(), ecol_pairs)?,
    )?;
    Ok((graph, counit))
}

/// The first four carriers of the cofree construction's cochain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    /// Carriers of steps 0 through 3.
    pub carriers: Vec<SetPair>,
    /// Whether steps 2 and 3 are componentwise bijective, i.e. the
    /// chain has stabilized.
    pub stabilized: bool,
}

/// Runs the cochain underlying the cofree construction for four steps:
/// starting from `(1,1)`, each step pairs the colors with the functor
/// applied to the previous vertex carrier. Stabilization after step 2
/// is what makes the closed-form cofree graph correct.
pub fn cofree_cochain(
    functor: &FunctorExpr,
    colors: &ColorSet,
    max_enum: usize,
) -> Result<Cochain> {
    let mut carriers = vec![SetPair::new(FinSet::terminal(), FinSet::terminal())];
    for step in 1..=3 {
        let prev_vertices = &carriers[step - 1].first;
        let elems = apply_obj(functor, prev_vertices, max_enum)?;
        let mut edge_atoms = Vec::new();
        for c in colors.ecolors.iter() {
            for s in &elems {
                edge_atoms.push(cofree_edge_atom(c, s));
            }
        }
        carriers.push(SetPair::new(colors.vcolors.clone(), FinSet::new(edge_atoms)));
    }
    let stabilized = carriers[2].first.len() == carriers[3].first.len()
        && carriers[2].second.len() == carriers[3].second.len();
    Ok(Cochain { carriers, stabilized })
}

/// The unique homomorphism into the cofree graph induced by a
/// coloring: vertices map by their color, an edge `e` maps to the
/// cofree edge `(ecol(e), F(vcol)(g(e)))`.
pub fn lift_coloring(coloring: &Coloring, cofree: &FGraph, max_enum: usize) -> Result<GraphHom> {
    let functor = coloring.graph().functor();
    let colors = coloring.color_set();
    let (expected, _) = cofree_graph(functor, &colors, max_enum)?;
    if expected != *cofree {
        return Err(Error::ColorSetMismatch(format!(
            "target is not the cofree graph of {} over ({}, {})",
            functor, colors.vcolors, colors.ecolors
        )));
    }
    let g = coloring.graph();
    let mut emap_pairs = Vec::new();
    for e in g.edges().iter() {
        let image = apply_mor(functor, coloring.vcol(), g.structure_of(e))?;
        emap_pairs.push((e.to_string(), cofree_edge_atom(coloring.ecol().apply(e), &image)));
    }
    GraphHom::new(
        g.clone(),
        cofree.clone(),
        coloring.vcol().clone(),
        FinFunction::from_pairs(g.edges().clone(), cofree.edges().clone(), emap_pairs)?,
    )
}

/// Restriction of a homomorphism into a cofree graph back to a
/// coloring: compose the counit with the underlying carrier maps.
/// Inverse to [`lift_coloring`] in both directions.
pub fn restrict_coloring(h: &GraphHom, counit: &Coloring) -> Result<Coloring> {
    if h.dst() != counit.graph() {
        return Err(Error::ColorSetMismatch(
            "homomorphism does not target the counit's cofree graph".into(),
        ));
    }
    Coloring::new(
        h.src().clone(),
        counit.vcol().compose(h.vmap())?,
        counit.ecol().compose(h.emap())?,
    )
}

/// The functor of graphs colored over `colors`, with edge structure
/// `X_E x F(X_V x V)`.
pub fn colored_functor(functor: &FunctorExpr, colors: &ColorSet) -> FunctorExpr {
    FunctorExpr::prod(
        FunctorExpr::Const(colors.ecolors.clone()),
        FunctorExpr::comp(
            functor.clone(),
            FunctorExpr::prod(FunctorExpr::Const(colors.vcolors.clone()), FunctorExpr::Id),
        ),
    )
}

/// Bakes a coloring into the graph itself: same carriers, structure
/// `e -> (ecol(e), g(e) with every vertex v replaced by (vcol(v), v))`,
/// over the composite functor from [`colored_functor`].
pub fn colored_graph(coloring: &Coloring) -> Result<FGraph> {
    let g = coloring.graph();
    let colors = coloring.color_set();
    let functor = colored_functor(g.functor(), &colors);
    let mut structure = BTreeMap::new();
    for e in g.edges().iter() {
        let relabeled = map_base_atoms(g.functor(), g.structure_of(e), &|v| {
            Ok(FElem::pair(
                FElem::const_val(coloring.vcol().apply(v)),
                FElem::atom(v),
            ))
        })?;
        structure.insert(
            e.to_string(),
            FElem::pair(FElem::const_val(coloring.ecol().apply(e)), relabeled),
        );
    }
    FGraph::new(functor, g.vertices().clone(), g.edges().clone(), structure)
}
