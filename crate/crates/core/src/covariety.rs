//! Patterns (coequations), their satisfaction, and covariety closures.
//!
//! A pattern is a carrier sub-pair of a cofree graph. A graph
//! satisfies it when the lifted image of *every* coloring lands inside
//! the subgraph the pattern cogenerates. Classes of graphs closed
//! under subgraphs, homomorphic images and coproducts are exactly the
//! pattern-definable ones; [`birkhoff_check`] makes that equivalence
//! testable on an explicit finite universe.

use std::collections::BTreeMap;

use crate::constructions::{cofree_graph, ColorSet};
use crate::error::{Error, Result};
use crate::finset::{enumerate_functions, pair_atom, FinFunction, FinSet};
use crate::functor::{apply_mor, FElem, FunctorExpr};
use crate::graph::{
    enumerate_subgraphs, is_isomorphic, largest_subcoalgebra, FGraph, SubgraphSpec,
};

/// A coequation: a sub-pair of the carrier of the cofree graph over
/// `colorset`. Pattern edges are cofree edge atoms `(c,s)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    functor: FunctorExpr,
    colorset: ColorSet,
    pvertices: FinSet,
    pedges: FinSet,
}

impl Pattern {
    /// Builds a pattern, checking that the chosen vertices are colors
    /// and the chosen edges are actual cofree edge atoms.
    pub fn new(
        functor: FunctorExpr,
        colorset: ColorSet,
        pvertices: FinSet,
        pedges: FinSet,
        max_enum: usize,
    ) -> Result<Self> {
        if !pvertices.is_subset_of(&colorset.vcolors) {
            return Err(Error::Validation(format!(
                "pattern vertices {pvertices} are not all colors in {}",
                colorset.vcolors
            )));
        }
        let (cofree, _) = cofree_graph(&functor, &colorset, max_enum)?;
        if !pedges.is_subset_of(cofree.edges()) {
            return Err(Error::Validation(format!(
                "pattern edges {pedges} are not all cofree edge atoms"
            )));
        }
        Ok(Pattern { functor, colorset, pvertices, pedges })
    }

    /// The full pattern (the entire cofree carrier); every graph
    /// satisfies it.
    pub fn full(functor: FunctorExpr, colorset: ColorSet, max_enum: usize) -> Result<Self> {
        let (cofree, _) = cofree_graph(&functor, &colorset, max_enum)?;
        Ok(Pattern {
            functor,
            pvertices: colorset.vcolors.clone(),
            pedges: cofree.edges().clone(),
            colorset,
        })
    }

    pub fn functor(&self) -> &FunctorExpr {
        &self.functor
    }

    pub fn colorset(&self) -> &ColorSet {
        &self.colorset
    }

    pub fn pvertices(&self) -> &FinSet {
        &self.pvertices
    }

    pub fn pedges(&self) -> &FinSet {
        &self.pedges
    }

    /// Componentwise containment of pattern carriers.
    pub fn is_subpattern_of(&self, other: &Pattern) -> bool {
        self.functor == other.functor
            && self.colorset == other.colorset
            && self.pvertices.is_subset_of(&other.pvertices)
            && self.pedges.is_subset_of(&other.pedges)
    }
}

type ClassKey = (usize, usize, Vec<usize>);

/// Cheap isomorphism invariant: carrier sizes plus the sorted support
/// sizes of the edges. Only members sharing it need the full check.
fn class_key(g: &FGraph) -> ClassKey {
    let mut sizes: Vec<usize> = g
        .edges()
        .iter()
        .map(|e| {
            crate::functor::support(g.functor(), g.structure_of(e))
                .map(|s| s.len())
                .unwrap_or(usize::MAX)
        })
        .collect();
    sizes.sort();
    (g.vertices().len(), g.edges().len(), sizes)
}

/// A class of graphs over one functor, kept duplicate-free up to
/// isomorphism.
#[derive(Debug, Clone)]
pub struct GraphClass {
    functor: FunctorExpr,
    members: Vec<FGraph>,
    buckets: BTreeMap<ClassKey, Vec<usize>>,
}

impl GraphClass {
    pub fn empty(functor: FunctorExpr) -> Self {
        GraphClass { functor, members: Vec::new(), buckets: BTreeMap::new() }
    }

    /// Builds a class, dropping isomorphic duplicates.
    pub fn new<I: IntoIterator<Item = FGraph>>(functor: FunctorExpr, members: I) -> Result<Self> {
        let mut class = GraphClass::empty(functor);
        for g in members {
            class.insert(g)?;
        }
        Ok(class)
    }

    /// Inserts unless an isomorphic member is already present; returns
    /// whether the class grew.
    pub fn insert(&mut self, g: FGraph) -> Result<bool> {
        if *g.functor() != self.functor {
            return Err(Error::FunctorMismatch(format!(
                "class over {} cannot hold a {} graph",
                self.functor,
                g.functor()
            )));
        }
        let key = class_key(&g);
        let bucket = self.buckets.entry(key).or_default();
        if bucket.iter().any(|i| is_isomorphic(&self.members[*i], &g)) {
            return Ok(false);
        }
        bucket.push(self.members.len());
        self.members.push(g);
        Ok(true)
    }

    pub fn functor(&self) -> &FunctorExpr {
        &self.functor
    }

    pub fn members(&self) -> &[FGraph] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_isomorphic(&self, g: &FGraph) -> bool {
        self.buckets
            .get(&class_key(g))
            .map(|bucket| bucket.iter().any(|i| is_isomorphic(&self.members[*i], g)))
            .unwrap_or(false)
    }
}

/// The subgraph of the cofree graph cogenerated by a pattern: the
/// largest subcoalgebra inside the pattern's carrier pair.
pub fn cogenerated_by_pattern(p: &Pattern, max_enum: usize) -> Result<FGraph> {
    let (cofree, _) = cofree_graph(&p.functor, &p.colorset, max_enum)?;
    largest_subcoalgebra(&cofree, &SubgraphSpec::new(p.pvertices.clone(), p.pedges.clone()))
}

/// `|X_V|^|V| * |X_E|^|E|`, the number of colorings of `g`.
fn coloring_space(g: &FGraph, x: &ColorSet) -> u128 {
    let mut space: u128 = 1;
    for _ in 0..g.vertices().len() {
        space = space.saturating_mul(x.vcolors.len() as u128);
    }
    for _ in 0..g.edges().len() {
        space = space.saturating_mul(x.ecolors.len() as u128);
    }
    space
}

/// Does the pattern hold in `g`? True iff for every coloring the
/// lifted image stays inside the cogenerated subgraph.
pub fn satisfies(g: &FGraph, p: &Pattern, max_enum: usize) -> Result<bool> {
    if g.functor() != &p.functor {
        return Err(Error::FunctorMismatch(format!(
            "graph over {} tested against a pattern over {}",
            g.functor(),
            p.functor
        )));
    }
    let space = coloring_space(g, &p.colorset);
    if space > max_enum as u128 {
        return Err(Error::SizeGuardExceeded(format!(
            "coloring space has {space} colorings, budget is {max_enum}"
        )));
    }
    let cog = cogenerated_by_pattern(p, max_enum)?;
    let edges: Vec<&str> = g.edges().iter().collect();
    for vcol in enumerate_functions(g.vertices(), &p.colorset.vcolors) {
        if !vcol.image().is_subset_of(cog.vertices()) {
            return Ok(false);
        }
        // The F-image of each edge depends on the vertex coloring only.
        let mut encoded = Vec::with_capacity(edges.len());
        for e in &edges {
            encoded.push(apply_mor(g.functor(), &vcol, g.structure_of(e))?.encode());
        }
        for ecol in enumerate_functions(g.edges(), &p.colorset.ecolors) {
            for (e, enc) in edges.iter().zip(&encoded) {
                let atom = pair_atom(ecol.apply(e), enc);
                if !cog.edges().contains(&atom) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Closure under subcoalgebras.
pub fn closure_subgraphs(k: &GraphClass, max_enum: usize) -> Result<GraphClass> {
    let mut out = GraphClass::empty(k.functor.clone());
    for g in &k.members {
        for sub in enumerate_subgraphs(g, max_enum)? {
            out.insert(sub)?;
        }
    }
    Ok(out)
}

/// Set partitions of `n` elements as block indices in first-occurrence
/// order (restricted growth strings).
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; n];
    fn rec(i: usize, max_block: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == current.len() {
            out.push(current.clone());
            return;
        }
        for b in 0..=max_block + 1 {
            current[i] = b;
            rec(i + 1, max_block.max(b), current, out);
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    current[0] = 0;
    rec(1, 0, &mut current, &mut out);
    out
}

fn bell(n: usize) -> u128 {
    // Bell triangle.
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for v in &row {
            let last = *next.last().unwrap();
            next.push(last.saturating_add(*v));
        }
        row = next;
    }
    row[0]
}

/// Quotient map of a finite set by a partition; blocks are labelled by
/// their least atom.
fn quotient_map(set: &FinSet, partition: &[usize]) -> FinFunction {
    let atoms: Vec<&str> = set.iter().collect();
    let mut label: BTreeMap<usize, &str> = BTreeMap::new();
    for (i, block) in partition.iter().enumerate() {
        label.entry(*block).or_insert(atoms[i]);
    }
    let cod: FinSet = label.values().copied().collect();
    FinFunction::from_pairs(
        set.clone(),
        cod,
        atoms.iter().zip(partition).map(|(a, b)| (a.to_string(), label[b].to_string())),
    )
    .expect("quotient map is total by construction")
}

/// Closure under homomorphic images.
///
/// Every homomorphic image is isomorphic to a quotient by a pair of
/// partitions of the carriers, so the quotients are enumerated
/// directly: a partition pair yields a graph exactly when the mapped
/// structure is constant on every edge block.
pub fn closure_images(k: &GraphClass, max_enum: usize) -> Result<GraphClass> {
    let mut out = GraphClass::empty(k.functor.clone());
    for g in &k.members {
        let space = bell(g.vertices().len()).saturating_mul(bell(g.edges().len()));
        if space > max_enum as u128 {
            return Err(Error::SizeGuardExceeded(format!(
                "quotient space has {space} partition pairs, budget is {max_enum}"
            )));
        }
        let edge_atoms: Vec<&str> = g.edges().iter().collect();
        let eparts = set_partitions(edge_atoms.len());
        for vpart in set_partitions(g.vertices().len()) {
            let qv = quotient_map(g.vertices(), &vpart);
            let mapped: Vec<FElem> = edge_atoms
                .iter()
                .map(|e| apply_mor(&k.functor, &qv, g.structure_of(e)))
                .collect::<Result<_>>()?;
            'eparts: for epart in &eparts {
                let qe = quotient_map(g.edges(), epart);
                let mut structure: BTreeMap<String, FElem> = BTreeMap::new();
                for (e, s) in edge_atoms.iter().zip(&mapped) {
                    match structure.get(qe.apply(e)) {
                        None => {
                            structure.insert(qe.apply(e).to_string(), s.clone());
                        }
                        // Identified edges must carry the same image.
                        Some(existing) if existing != s => continue 'eparts,
                        Some(_) => {}
                    }
                }
                let quotient = FGraph::new(
                    k.functor.clone(),
                    qv.cod().clone(),
                    qe.cod().clone(),
                    structure,
                )?;
                out.insert(quotient)?;
            }
        }
    }
    Ok(out)
}

/// Closure under coproducts of up to `max_summands` members, folded
/// from binary coproducts. Summands may repeat; the empty coproduct is
/// not included.
pub fn closure_sums(k: &GraphClass, max_summands: usize) -> Result<GraphClass> {
    let mut out = GraphClass::empty(k.functor.clone());
    // Multisets as non-decreasing index sequences.
    let mut stack: Vec<(Vec<usize>, Option<FGraph>)> = vec![(Vec::new(), None)];
    while let Some((indices, sum)) = stack.pop() {
        if let Some(g) = &sum {
            out.insert(g.clone())?;
        }
        if indices.len() >= max_summands {
            continue;
        }
        let start = indices.last().copied().unwrap_or(0);
        for i in start..k.members.len() {
            let next_sum = match &sum {
                None => k.members[i].clone(),
                Some(g) => crate::constructions::coproduct_graphs(g, &k.members[i])?.0,
            };
            let mut next_indices = indices.clone();
            next_indices.push(i);
            stack.push((next_indices, Some(next_sum)));
        }
    }
    Ok(out)
}

/// The least pattern over `x` satisfied by every member of `k`: the
/// union of all lifted-coloring images. A pattern holds in all of `k`
/// exactly when it contains this one.
pub fn pattern_of_class(k: &GraphClass, x: &ColorSet, max_enum: usize) -> Result<Pattern> {
    let mut pvertices = FinSet::empty();
    let mut pedge_atoms: Vec<String> = Vec::new();
    for g in &k.members {
        let space = coloring_space(g, x);
        if space > max_enum as u128 {
            return Err(Error::SizeGuardExceeded(format!(
                "coloring space has {space} colorings, budget is {max_enum}"
            )));
        }
        let edges: Vec<&str> = g.edges().iter().collect();
        for vcol in enumerate_functions(g.vertices(), &x.vcolors) {
            pvertices = pvertices.union(&vcol.image());
            let mut encoded = Vec::with_capacity(edges.len());
            for e in &edges {
                encoded.push(apply_mor(&k.functor, &vcol, g.structure_of(e))?.encode());
            }
            for ecol in enumerate_functions(g.edges(), &x.ecolors) {
                for (e, enc) in edges.iter().zip(&encoded) {
                    pedge_atoms.push(pair_atom(ecol.apply(e), enc));
                }
            }
        }
    }
    Pattern::new(
        k.functor.clone(),
        x.clone(),
        pvertices,
        FinSet::new(pedge_atoms),
        max_enum,
    )
}

/// Filters an explicit finite universe by pattern satisfaction.
pub fn graphs_of_pattern(
    p: &Pattern,
    universe: &GraphClass,
    max_enum: usize,
) -> Result<GraphClass> {
    let mut out = GraphClass::empty(universe.functor.clone());
    for g in &universe.members {
        if satisfies(g, p, max_enum)? {
            out.insert(g.clone())?;
        }
    }
    Ok(out)
}

/// Outcome of a [`birkhoff_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BirkhoffVerdict {
    /// The closure and the pattern-definable class agree on the
    /// universe.
    Pass,
    /// Some pattern-satisfying graphs were not reached; at finite
    /// bounds this is not a refutation, since the underlying theorem
    /// quantifies over coproducts of arbitrary size.
    InconclusiveAtBounds,
    /// The closure escaped the pattern-definable class. This cannot
    /// happen for a correct implementation.
    SoundnessViolation,
}

/// Both sides of the covariety theorem computed on a finite universe.
#[derive(Debug, Clone)]
pub struct BirkhoffReport {
    /// One pass of subgraphs after images after sums, intersected with
    /// the universe.
    pub single_pass: GraphClass,
    /// The class actually compared: the closure iterated to a fixpoint
    /// (sums bounded per round, intermediates capped at the universe's
    /// carrier sizes), intersected with the universe.
    pub closure: GraphClass,
    /// Rounds until the fixpoint stabilized.
    pub rounds: usize,
    /// The least pattern satisfied by the generating class.
    pub pattern: Pattern,
    /// Universe members satisfying that pattern.
    pub satisfying: GraphClass,
    /// Satisfying members the closure did not reach.
    pub missing: Vec<FGraph>,
    /// Closure members that do not satisfy the pattern.
    pub extra: Vec<FGraph>,
    pub verdict: BirkhoffVerdict,
}

fn intersect_universe(class: &GraphClass, universe: &GraphClass) -> Result<GraphClass> {
    GraphClass::new(
        universe.functor.clone(),
        universe
            .members
            .iter()
            .filter(|u| class.contains_isomorphic(u))
            .cloned(),
    )
}

fn one_closure_round(
    class: &GraphClass,
    max_summands: usize,
    max_enum: usize,
) -> Result<GraphClass> {
    let sums = closure_sums(class, max_summands)?;
    let images = closure_images(&sums, max_enum)?;
    closure_subgraphs(&images, max_enum)
}

/// Runs the covariety check: compares the closure of `k` under
/// subgraphs, homomorphic images and coproducts against the universe
/// members satisfying `k`'s least pattern over `x`.
///
/// The closure iterates rounds of sums (at most `max_summands` per
/// coproduct), images and subgraphs until no new universe-sized member
/// appears; larger coproducts are reached by folding across rounds.
/// The single-pass class is reported alongside for reference.
pub fn birkhoff_check(
    k: &GraphClass,
    universe: &GraphClass,
    x: &ColorSet,
    max_summands: usize,
    max_enum: usize,
) -> Result<BirkhoffReport> {
    if k.functor != universe.functor {
        return Err(Error::FunctorMismatch(format!(
            "class over {} checked against a universe over {}",
            k.functor, universe.functor
        )));
    }
    let single_pass =
        intersect_universe(&one_closure_round(k, max_summands, max_enum)?, universe)?;

    let cap_v = universe.members.iter().map(|g| g.vertices().len()).max().unwrap_or(0);
    let cap_e = universe.members.iter().map(|g| g.edges().len()).max().unwrap_or(0);
    let mut current = GraphClass::new(k.functor.clone(), k.members.iter().cloned())?;
    let mut rounds = 0usize;
    loop {
        rounds += 1;
        let round = one_closure_round(&current, max_summands, max_enum)?;
        let mut next = GraphClass::new(k.functor.clone(), k.members.iter().cloned())?;
        for g in round.members {
            if g.vertices().len() <= cap_v && g.edges().len() <= cap_e {
                next.insert(g)?;
            }
        }
        if next.len() == current.len() {
            current = next;
            break;
        }
        current = next;
    }
    let closure = intersect_universe(&current, universe)?;

    let pattern = pattern_of_class(k, x, max_enum)?;
    let satisfying = graphs_of_pattern(&pattern, universe, max_enum)?;

    let missing: Vec<FGraph> = satisfying
        .members
        .iter()
        .filter(|g| !closure.contains_isomorphic(g))
        .cloned()
        .collect();
    let extra: Vec<FGraph> = closure
        .members
        .iter()
        .filter(|g| !satisfying.contains_isomorphic(g))
        .cloned()
        .collect();
    let verdict = if !extra.is_empty() {
        BirkhoffVerdict::SoundnessViolation
    } else if missing.is_empty() {
        BirkhoffVerdict::Pass
    } else {
        BirkhoffVerdict::InconclusiveAtBounds
    };
    Ok(BirkhoffReport {
        single_pass,
        closure,
        rounds,
        pattern,
        satisfying,
        missing,
        extra,
        verdict,
    })
}
