//! F-graphs and their homomorphisms.
//!
//! An [`FGraph`] is a triple `(V, E, g)` with structure map
//! `g : E -> F(V)`; equivalently a coalgebra for the extension of `F`
//! to pairs of sets, `(V,E) -> (1, F V)`. Because the vertex component
//! of that extension is trivial, a carrier sub-pair `(V',E')` is a
//! subcoalgebra exactly when every kept edge's support lies in `V'`;
//! cogeneration is therefore a single filter pass, no fixpoint needed.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::finset::{enumerate_functions, FinFunction, FinSet};
use crate::functor::{apply_mor, elem_check, support, FElem, FunctorExpr};

/// A finite graph with edge structure in `F(V)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FGraph {
    functor: FunctorExpr,
    vertices: FinSet,
    edges: FinSet,
    structure: BTreeMap<String, FElem>,
}

impl FGraph {
    /// Builds a graph and checks its invariants; the error lists every
    /// violation found.
    pub fn new(
        functor: FunctorExpr,
        vertices: FinSet,
        edges: FinSet,
        structure: BTreeMap<String, FElem>,
    ) -> Result<Self> {
        let g = FGraph::new_unchecked(functor, vertices, edges, structure);
        let violations = validate_graph(&g);
        if violations.is_empty() {
            Ok(g)
        } else {
            Err(Error::Validation(violations.join("; ")))
        }
    }

    /// Builds a graph without checking; pair with [`validate_graph`].
    pub fn new_unchecked(
        functor: FunctorExpr,
        vertices: FinSet,
        edges: FinSet,
        structure: BTreeMap<String, FElem>,
    ) -> Self {
        FGraph { functor, vertices, edges, structure }
    }

    /// The graph with no vertices and no edges.
    pub fn empty(functor: FunctorExpr) -> Self {
        FGraph::new_unchecked(functor, FinSet::empty(), FinSet::empty(), BTreeMap::new())
    }

    pub fn functor(&self) -> &FunctorExpr {
        &self.functor
    }

    pub fn vertices(&self) -> &FinSet {
        &self.vertices
    }

    pub fn edges(&self) -> &FinSet {
        &self.edges
    }

    pub fn structure(&self) -> &BTreeMap<String, FElem> {
        &self.structure
    }

    /// Structure value of an edge; panics on unknown edges, which the
    /// totality invariant rules out for validated graphs.
    pub fn structure_of(&self, edge: &str) -> &FElem {
        self.structure
            .get(edge)
            .unwrap_or_else(|| panic!("edge {edge:?} has no structure entry"))
    }
}

/// Checks every graph invariant and reports the offending edges.
pub fn validate_graph(g: &FGraph) -> Vec<String> {
    let mut violations = Vec::new();
    for e in g.edges.iter() {
        match g.structure.get(e) {
            None => violations.push(format!("edge {e}: no structure value")),
            Some(s) => {
                if !elem_check(&g.functor, &g.vertices, s) {
                    violations.push(format!(
                        "edge {e}: structure {s} is not an element of F{}",
                        g.vertices
                    ));
                }
            }
        }
    }
    for e in g.structure.keys() {
        if !g.edges.contains(e) {
            violations.push(format!("structure mentions unknown edge {e}"));
        }
    }
    violations
}

/// A homomorphism: a vertex map and an edge map making the structure
/// square commute edgewise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphHom {
    src: FGraph,
    dst: FGraph,
    vmap: FinFunction,
    emap: FinFunction,
}

impl GraphHom {
    pub fn new(src: FGraph, dst: FGraph, vmap: FinFunction, emap: FinFunction) -> Result<Self> {
        let h = GraphHom::new_unchecked(src, dst, vmap, emap);
        let violations = validate_hom(&h);
        if violations.is_empty() {
            Ok(h)
        } else {
            Err(Error::Validation(violations.join("; ")))
        }
    }

    pub fn new_unchecked(src: FGraph, dst: FGraph, vmap: FinFunction, emap: FinFunction) -> Self {
        GraphHom { src, dst, vmap, emap }
    }

    pub fn identity(g: &FGraph) -> Self {
        GraphHom {
            src: g.clone(),
            dst: g.clone(),
            vmap: FinFunction::identity(&g.vertices),
            emap: FinFunction::identity(&g.edges),
        }
    }

    pub fn src(&self) -> &FGraph {
        &self.src
    }

    pub fn dst(&self) -> &FGraph {
        &self.dst
    }

    pub fn vmap(&self) -> &FinFunction {
        &self.vmap
    }

    pub fn emap(&self) -> &FinFunction {
        &self.emap
    }

    /// Composition `self . inner` (apply `inner` first).
    pub fn compose(&self, inner: &GraphHom) -> Result<GraphHom> {
        if inner.dst != self.src {
            return Err(Error::DomainMismatch(
                "cannot compose: inner target differs from outer source".into(),
            ));
        }
        GraphHom::new(
            inner.src.clone(),
            self.dst.clone(),
            self.vmap.compose(&inner.vmap)?,
            self.emap.compose(&inner.emap)?,
        )
    }

    /// The inverse homomorphism of a bijective one. For coalgebras the
    /// inverse maps automatically satisfy the square, but it is
    /// re-validated here rather than assumed.
    pub fn inverse(&self) -> Result<GraphHom> {
        let vmap = self.vmap.inverse().ok_or_else(|| {
            Error::Validation("vertex map is not bijective".into())
        })?;
        let emap = self.emap.inverse().ok_or_else(|| {
            Error::Validation("edge map is not bijective".into())
        })?;
        GraphHom::new(self.dst.clone(), self.src.clone(), vmap, emap)
    }
}

/// Checks the homomorphism invariants; empty iff the square commutes
/// on every edge and the maps line up with the carriers.
pub fn validate_hom(h: &GraphHom) -> Vec<String> {
    let mut violations = Vec::new();
    if h.src.functor() != h.dst.functor() {
        violations.push("source and target graphs have different functors".into());
        return violations;
    }
    if h.vmap.dom() != h.src.vertices() || h.vmap.cod() != h.dst.vertices() {
        violations.push("vertex map does not match the graph carriers".into());
    }
    if h.emap.dom() != h.src.edges() || h.emap.cod() != h.dst.edges() {
        violations.push("edge map does not match the graph carriers".into());
    }
    if !violations.is_empty() {
        return violations;
    }
    for e in h.src.edges().iter() {
        let expected = match apply_mor(h.src.functor(), &h.vmap, h.src.structure_of(e)) {
            Ok(v) => v,
            Err(err) => {
                violations.push(format!("edge {e}: {err}"));
                continue;
            }
        };
        let got = h.dst.structure_of(h.emap.apply(e));
        if *got != expected {
            violations.push(format!(
                "edge {e}: square fails, expected {expected} but target edge carries {got}"
            ));
        }
    }
    violations
}

fn sat_pow(base: u128, exp: usize) -> u128 {
    let mut out: u128 = 1;
    for _ in 0..exp {
        out = out.saturating_mul(base);
    }
    out
}

/// Size of the raw `(vertex map, edge map)` search space between two
/// graphs.
pub fn hom_search_space(a: &FGraph, b: &FGraph) -> u128 {
    sat_pow(b.vertices.len() as u128, a.vertices.len())
        .saturating_mul(sat_pow(b.edges.len() as u128, a.edges.len()))
}

/// Enumerates every homomorphism `a -> b` in canonical order
/// (lexicographic on the vertex table, then the edge table).
///
/// The search explores vertex maps and, per vertex map, only the edge
/// images compatible with the square, so it agrees with the plain
/// filter over all map pairs while doing far less work.
pub fn enumerate_homs(a: &FGraph, b: &FGraph, max_enum: usize) -> Result<Vec<GraphHom>> {
    if a.functor != b.functor {
        return Err(Error::FunctorMismatch(format!(
            "cannot search homomorphisms between {} and {} graphs",
            a.functor, b.functor
        )));
    }
    let space = hom_search_space(a, b);
    if space > max_enum as u128 {
        return Err(Error::SizeGuardExceeded(format!(
            "homomorphism search space has {space} map pairs, budget is {max_enum}"
        )));
    }

    // Index target edges by structure value.
    let mut by_structure: BTreeMap<&FElem, Vec<&str>> = BTreeMap::new();
    for e in b.edges.iter() {
        by_structure.entry(b.structure_of(e)).or_default().push(e);
    }

    let src_edges: Vec<&str> = a.edges.iter().collect();
    let mut out = Vec::new();
    'vmaps: for vmap in enumerate_functions(&a.vertices, &b.vertices) {
        let mut candidates: Vec<&Vec<&str>> = Vec::with_capacity(src_edges.len());
        for e in &src_edges {
            let image = apply_mor(&a.functor, &vmap, a.structure_of(e))?;
            match by_structure.get(&image) {
                Some(targets) => candidates.push(targets),
                None => continue 'vmaps,
            }
        }
        // Odometer over candidate target edges, lexicographic.
        let mut idx = vec![0usize; src_edges.len()];
        loop {
            let pairs: Vec<(String, String)> = src_edges
                .iter()
                .enumerate()
                .map(|(pos, e)| (e.to_string(), candidates[pos][idx[pos]].to_string()))
                .collect();
            let emap = FinFunction::from_pairs(a.edges.clone(), b.edges.clone(), pairs)?;
            out.push(GraphHom::new_unchecked(a.clone(), b.clone(), vmap.clone(), emap));
            let mut pos = src_edges.len();
            loop {
                if pos == 0 {
                    continue 'vmaps;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < candidates[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
    Ok(out)
}

/// True iff both component maps are bijections. On a valid
/// homomorphism this characterizes the isomorphisms.
pub fn is_isomorphism(h: &GraphHom) -> bool {
    h.vmap.is_bijective() && h.emap.is_bijective()
}

/// Epi-regular mono factorization of a homomorphism through its image.
///
/// The image graph lives on the image carriers of the component maps
/// and inherits its structure from the target; returns
/// `(image, epi, mono)` with `mono . epi = h`.
pub fn image_factorization(h: &GraphHom) -> Result<(FGraph, GraphHom, GraphHom)> {
    let iv = h.vmap.image();
    let ie = h.emap.image();
    let structure: BTreeMap<String, FElem> = ie
        .iter()
        .map(|e| (e.to_string(), h.dst.structure_of(e).clone()))
        .collect();
    let image = FGraph::new(h.src.functor.clone(), iv.clone(), ie.clone(), structure)?;
    let epi = GraphHom::new(
        h.src.clone(),
        image.clone(),
        h.vmap.corestrict(&iv)?,
        h.emap.corestrict(&ie)?,
    )?;
    let mono = GraphHom::new(
        image.clone(),
        h.dst.clone(),
        FinFunction::inclusion(&iv, h.dst.vertices())?,
        FinFunction::inclusion(&ie, h.dst.edges())?,
    )?;
    Ok((image, epi, mono))
}

/// A carrier sub-pair from which a subcoalgebra is cogenerated.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubgraphSpec {
    pub vkeep: FinSet,
    pub ekeep: FinSet,
}

impl SubgraphSpec {
    pub fn new(vkeep: FinSet, ekeep: FinSet) -> Self {
        SubgraphSpec { vkeep, ekeep }
    }

    /// The full spec of a graph.
    pub fn full(g: &FGraph) -> Self {
        SubgraphSpec::new(g.vertices().clone(), g.edges().clone())
    }
}

/// The largest subcoalgebra of `g` contained in `spec`: keep the
/// vertices, and keep exactly the edges whose support stays inside.
pub fn largest_subcoalgebra(g: &FGraph, spec: &SubgraphSpec) -> Result<FGraph> {
    if !spec.vkeep.is_subset_of(&g.vertices) {
        return Err(Error::SpecOutOfRange(format!(
            "vertices {} are not all in {}",
            spec.vkeep, g.vertices
        )));
    }
    if !spec.ekeep.is_subset_of(&g.edges) {
        return Err(Error::SpecOutOfRange(format!(
            "edges {} are not all in {}",
            spec.ekeep, g.edges
        )));
    }
    let mut edges = Vec::new();
    let mut structure = BTreeMap::new();
    for e in spec.ekeep.iter() {
        let s = g.structure_of(e);
        if support(&g.functor, s)?.is_subset_of(&spec.vkeep) {
            edges.push(e.to_string());
            structure.insert(e.to_string(), s.clone());
        }
    }
    FGraph::new(g.functor.clone(), spec.vkeep.clone(), FinSet::new(edges), structure)
}

/// The inclusion homomorphism of a subcoalgebra into its ambient graph.
pub fn inclusion_hom(sub: &FGraph, ambient: &FGraph) -> Result<GraphHom> {
    GraphHom::new(
        sub.clone(),
        ambient.clone(),
        FinFunction::inclusion(sub.vertices(), ambient.vertices())?,
        FinFunction::inclusion(sub.edges(), ambient.edges())?,
    )
}

/// Enumerates all subcoalgebras of `g` in canonical order.
pub fn enumerate_subgraphs(g: &FGraph, max_enum: usize) -> Result<Vec<FGraph>> {
    let bits = g.vertices.len() + g.edges.len();
    let space = sat_pow(2, bits);
    if space > max_enum as u128 {
        return Err(Error::SizeGuardExceeded(format!(
            "subgraph search space has {space} carrier pairs, budget is {max_enum}"
        )));
    }
    let vertex_atoms: Vec<&str> = g.vertices.iter().collect();
    let mut out = Vec::new();
    for vmask in 0u64..(1u64 << vertex_atoms.len()) {
        let vkeep: FinSet = vertex_atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| vmask & (1 << i) != 0)
            .map(|(_, a)| *a)
            .collect();
        let admissible: Vec<&str> = g
            .edges
            .iter()
            .filter(|e| {
                support(&g.functor, g.structure_of(e))
                    .map(|s| s.is_subset_of(&vkeep))
                    .unwrap_or(false)
            })
            .collect();
        for emask in 0u64..(1u64 << admissible.len()) {
            let ekeep: FinSet = admissible
                .iter()
                .enumerate()
                .filter(|(i, _)| emask & (1 << i) != 0)
                .map(|(_, a)| *a)
                .collect();
            let structure = ekeep
                .iter()
                .map(|e| (e.to_string(), g.structure_of(e).clone()))
                .collect();
            out.push(FGraph::new_unchecked(g.functor.clone(), vkeep.clone(), ekeep, structure));
        }
    }
    out.sort();
    Ok(out)
}

/// Brute-force isomorphism test for desk-scale graphs.
///
/// Tries every vertex bijection; for each one an edge bijection exists
/// iff the multisets of mapped structures agree, so no edge search is
/// needed.
pub fn is_isomorphic(a: &FGraph, b: &FGraph) -> bool {
    if a.functor != b.functor
        || a.vertices.len() != b.vertices.len()
        || a.edges.len() != b.edges.len()
    {
        return false;
    }
    // Cheap invariant prefilter: sorted support sizes must agree.
    let support_sizes = |g: &FGraph| -> Option<Vec<usize>> {
        let mut sizes = Vec::with_capacity(g.edges.len());
        for e in g.edges.iter() {
            sizes.push(support(&g.functor, g.structure_of(e)).ok()?.len());
        }
        sizes.sort();
        Some(sizes)
    };
    if support_sizes(a) != support_sizes(b) {
        return false;
    }

    let mut b_structs: Vec<FElem> = b.edges.iter().map(|e| b.structure_of(e).clone()).collect();
    b_structs.sort();
    let a_atoms: Vec<&str> = a.vertices.iter().collect();
    let b_atoms: Vec<&str> = b.vertices.iter().collect();

    let mut perm: Vec<usize> = (0..b_atoms.len()).collect();
    permute(&mut perm, 0, &mut |p| {
        let pairs: Vec<(String, String)> = a_atoms
            .iter()
            .zip(p)
            .map(|(x, i)| (x.to_string(), b_atoms[*i].to_string()))
            .collect();
        let vmap = FinFunction::from_pairs(a.vertices.clone(), b.vertices.clone(), pairs).unwrap();
        let mut mapped: Vec<FElem> = Vec::with_capacity(a.edges.len());
        for e in a.edges.iter() {
            match apply_mor(&a.functor, &vmap, a.structure_of(e)) {
                Ok(s) => mapped.push(s),
                Err(_) => return false,
            }
        }
        mapped.sort();
        mapped == b_structs
    })
}

fn permute(items: &mut Vec<usize>, k: usize, found: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == items.len() {
        return found(items);
    }
    for i in k..items.len() {
        items.swap(k, i);
        if permute(items, k + 1, found) {
            items.swap(k, i);
            return true;
        }
        items.swap(k, i);
    }
    false
}
