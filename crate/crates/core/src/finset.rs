//! Finite sets, finite functions, and the basic (co)limit builders in
//! `Set` that everything else is assembled from.
//!
//! Atoms are opaque strings. Composite atoms use fixed encodings so
//! that every construction downstream is deterministic and
//! serializable: products write `(x,y)`, coproducts tag with `0:x` /
//! `1:y`. Sets keep their atoms sorted.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// The atom of the canonical one-element set.
pub const TERMINAL_ATOM: &str = "*";

/// A finite set of opaque string atoms, kept sorted and duplicate-free.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinSet {
    elements: Vec<String>,
}

impl FinSet {
    /// Builds a set from any iterator of atoms; duplicates collapse and
    /// the result is sorted.
    pub fn new<I, S>(atoms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut elements: Vec<String> = atoms.into_iter().map(Into::into).collect();
        elements.sort();
        elements.dedup();
        FinSet { elements }
    }

    pub fn empty() -> Self {
        FinSet::default()
    }

    /// The terminal object `1`, fixed as the one-element set `{*}`.
    pub fn terminal() -> Self {
        FinSet::new([TERMINAL_ATOM])
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, atom: &str) -> bool {
        self.elements.binary_search_by(|e| e.as_str().cmp(atom)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.elements.iter().map(String::as_str)
    }

    pub fn is_subset_of(&self, other: &FinSet) -> bool {
        self.iter().all(|a| other.contains(a))
    }

    /// Set union, used by support harvesting and pattern building.
    pub fn union(&self, other: &FinSet) -> FinSet {
        FinSet::new(self.iter().chain(other.iter()))
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.elements.join(","))
    }
}

impl<S: Into<String>> FromIterator<S> for FinSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        FinSet::new(iter)
    }
}

/// Encoding of a product atom.
pub fn pair_atom(x: &str, y: &str) -> String {
    format!("({x},{y})")
}

/// Encoding of a left coproduct atom.
pub fn inl_atom(x: &str) -> String {
    format!("0:{x}")
}

/// Encoding of a right coproduct atom.
pub fn inr_atom(y: &str) -> String {
    format!("1:{y}")
}

/// A total function between finite sets, stored as an explicit table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinFunction {
    dom: FinSet,
    cod: FinSet,
    table: BTreeMap<String, String>,
}

impl FinFunction {
    /// Builds a function and checks totality and codomain membership.
    pub fn new(dom: FinSet, cod: FinSet, table: BTreeMap<String, String>) -> Result<Self> {
        for a in dom.iter() {
            match table.get(a) {
                None => {
                    return Err(Error::Validation(format!(
                        "function table is not total: no value for {a:?}"
                    )))
                }
                Some(b) if !cod.contains(b) => {
                    return Err(Error::Validation(format!(
                        "function value {b:?} for {a:?} is not in the codomain"
                    )))
                }
                _ => {}
            }
        }
        for a in table.keys() {
            if !dom.contains(a) {
                return Err(Error::Validation(format!(
                    "function table mentions {a:?} outside the domain"
                )));
            }
        }
        Ok(FinFunction { dom, cod, table })
    }

    /// Builds a function from (atom, atom) pairs.
    pub fn from_pairs<I, S, T>(dom: FinSet, cod: FinSet, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, T)>,
        S: Into<String>,
        T: Into<String>,
    {
        let table = pairs.into_iter().map(|(a, b)| (a.into(), b.into())).collect();
        FinFunction::new(dom, cod, table)
    }

    pub fn identity(s: &FinSet) -> Self {
        let table = s.iter().map(|a| (a.to_string(), a.to_string())).collect();
        FinFunction { dom: s.clone(), cod: s.clone(), table }
    }

    /// The constant function onto a single codomain atom.
    pub fn constant(dom: &FinSet, cod: &FinSet, value: &str) -> Result<Self> {
        if !cod.contains(value) {
            return Err(Error::Validation(format!(
                "constant value {value:?} is not in the codomain"
            )));
        }
        let table = dom.iter().map(|a| (a.to_string(), value.to_string())).collect();
        Ok(FinFunction { dom: dom.clone(), cod: cod.clone(), table })
    }

    /// The unique map `! : dom -> 1`.
    pub fn bang(dom: &FinSet) -> Self {
        let table = dom
            .iter()
            .map(|a| (a.to_string(), TERMINAL_ATOM.to_string()))
            .collect();
        FinFunction { dom: dom.clone(), cod: FinSet::terminal(), table }
    }

    /// Inclusion of a subset into a superset.
    pub fn inclusion(sub: &FinSet, sup: &FinSet) -> Result<Self> {
        if !sub.is_subset_of(sup) {
            return Err(Error::DomainMismatch(format!(
                "{sub} is not a subset of {sup}"
            )));
        }
        let table = sub.iter().map(|a| (a.to_string(), a.to_string())).collect();
        Ok(FinFunction { dom: sub.clone(), cod: sup.clone(), table })
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &BTreeMap<String, String> {
        &self.table
    }

    /// Looks up the value of a domain atom.
    pub fn get(&self, atom: &str) -> Option<&str> {
        self.table.get(atom).map(String::as_str)
    }

    /// Applies the function; panics if `atom` is outside the domain,
    /// which can only happen on misuse since tables are total.
    pub fn apply(&self, atom: &str) -> &str {
        self.get(atom)
            .unwrap_or_else(|| panic!("atom {atom:?} outside function domain"))
    }

    /// Composition `self . inner` (apply `inner` first).
    pub fn compose(&self, inner: &FinFunction) -> Result<FinFunction> {
        if inner.cod != self.dom {
            return Err(Error::DomainMismatch(format!(
                "cannot compose: inner codomain {} differs from outer domain {}",
                inner.cod, self.dom
            )));
        }
        let table = inner
            .dom
            .iter()
            .map(|a| (a.to_string(), self.apply(inner.apply(a)).to_string()))
            .collect();
        Ok(FinFunction { dom: inner.dom.clone(), cod: self.cod.clone(), table })
    }

    pub fn is_injective(&self) -> bool {
        let values: FinSet = self.table.values().cloned().collect();
        values.len() == self.dom.len()
    }

    pub fn is_surjective(&self) -> bool {
        let values: FinSet = self.table.values().cloned().collect();
        values.len() == self.cod.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// The image as a subset of the codomain.
    pub fn image(&self) -> FinSet {
        self.table.values().cloned().collect()
    }

    /// Inverse function, if bijective.
    pub fn inverse(&self) -> Option<FinFunction> {
        if !self.is_bijective() {
            return None;
        }
        let table = self.table.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        Some(FinFunction { dom: self.cod.clone(), cod: self.dom.clone(), table })
    }

    /// Same table, smaller codomain. Fails if a value escapes `cod`.
    pub fn corestrict(&self, cod: &FinSet) -> Result<FinFunction> {
        FinFunction::new(self.dom.clone(), cod.clone(), self.table.clone())
    }
}

/// An object of `Set x Set`: a carrier pair such as (vertices, edges).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPair {
    pub first: FinSet,
    pub second: FinSet,
}

impl SetPair {
    pub fn new(first: FinSet, second: FinSet) -> Self {
        SetPair { first, second }
    }
}

/// Enumerates every total function `dom -> cod`, lexicographically by
/// value table over the sorted domain. Used by the homomorphism search
/// and the coloring loops.
pub fn enumerate_functions(dom: &FinSet, cod: &FinSet) -> Vec<FinFunction> {
    let dom_atoms: Vec<&str> = dom.iter().collect();
    let cod_atoms: Vec<&str> = cod.iter().collect();
    if dom_atoms.is_empty() {
        let empty = FinFunction { dom: dom.clone(), cod: cod.clone(), table: BTreeMap::new() };
        return vec![empty];
    }
    if cod_atoms.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; dom_atoms.len()];
    loop {
        let table: BTreeMap<String, String> = dom_atoms
            .iter()
            .zip(&idx)
            .map(|(a, i)| (a.to_string(), cod_atoms[*i].to_string()))
            .collect();
        out.push(FinFunction { dom: dom.clone(), cod: cod.clone(), table });
        let mut pos = dom_atoms.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < cod_atoms.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Cartesian product with both projections. Atoms are `(x,y)`.
pub fn product(a: &FinSet, b: &FinSet) -> (FinSet, FinFunction, FinFunction) {
    let mut elements = Vec::with_capacity(a.len() * b.len());
    let mut to_a = BTreeMap::new();
    let mut to_b = BTreeMap::new();
    for x in a.iter() {
        for y in b.iter() {
            let atom = pair_atom(x, y);
            to_a.insert(atom.clone(), x.to_string());
            to_b.insert(atom.clone(), y.to_string());
            elements.push(atom);
        }
    }
    let set = FinSet::new(elements);
    let pa = FinFunction { dom: set.clone(), cod: a.clone(), table: to_a };
    let pb = FinFunction { dom: set.clone(), cod: b.clone(), table: to_b };
    (set, pa, pb)
}

/// Disjoint union with both injections. Atoms are `0:x` and `1:y`.
pub fn coproduct(a: &FinSet, b: &FinSet) -> (FinSet, FinFunction, FinFunction) {
    let left: Vec<(String, String)> = a.iter().map(|x| (x.to_string(), inl_atom(x))).collect();
    let right: Vec<(String, String)> = b.iter().map(|y| (y.to_string(), inr_atom(y))).collect();
    let set = FinSet::new(left.iter().map(|(_, t)| t.clone()).chain(right.iter().map(|(_, t)| t.clone())));
    let ia = FinFunction {
        dom: a.clone(),
        cod: set.clone(),
        table: left.into_iter().collect(),
    };
    let ib = FinFunction {
        dom: b.clone(),
        cod: set.clone(),
        table: right.into_iter().collect(),
    };
    (set, ia, ib)
}

/// Equalizer `{x in dom | f(x) = g(x)}` with its inclusion.
pub fn equalizer(f: &FinFunction, g: &FinFunction) -> Result<(FinSet, FinFunction)> {
    if f.dom != g.dom {
        return Err(Error::DomainMismatch(format!(
            "equalizer needs a common domain, got {} and {}",
            f.dom, g.dom
        )));
    }
    if f.cod != g.cod {
        return Err(Error::CodomainMismatch(format!(
            "equalizer needs a common codomain, got {} and {}",
            f.cod, g.cod
        )));
    }
    let set: FinSet = f.dom.iter().filter(|x| f.apply(x) == g.apply(x)).collect();
    let incl = FinFunction::inclusion(&set, &f.dom)?;
    Ok((set, incl))
}

/// Pullback of a cospan `f : A -> C <- B : g`.
///
/// Returns `{(x,y) | f(x) = g(y)}` together with the legs into `f.dom`
/// and `g.dom` (in that order).
pub fn pullback(f: &FinFunction, g: &FinFunction) -> Result<(FinSet, FinFunction, FinFunction)> {
    if f.cod != g.cod {
        return Err(Error::CodomainMismatch(format!(
            "pullback needs a common codomain, got {} and {}",
            f.cod, g.cod
        )));
    }
    let mut elements = Vec::new();
    let mut to_f = BTreeMap::new();
    let mut to_g = BTreeMap::new();
    for x in f.dom.iter() {
        for y in g.dom.iter() {
            if f.apply(x) == g.apply(y) {
                let atom = pair_atom(x, y);
                to_f.insert(atom.clone(), x.to_string());
                to_g.insert(atom.clone(), y.to_string());
                elements.push(atom);
            }
        }
    }
    let set = FinSet::new(elements);
    let leg_f = FinFunction { dom: set.clone(), cod: f.dom.clone(), table: to_f };
    let leg_g = FinFunction { dom: set.clone(), cod: g.dom.clone(), table: to_g };
    Ok((set, leg_f, leg_g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(atoms: &[&str]) -> FinSet {
        FinSet::new(atoms.iter().copied())
    }

    #[test]
    fn singleton_product() {
        let (p, pa, pb) = product(&set(&["a"]), &set(&["b"]));
        assert_eq!(p, set(&["(a,b)"]));
        assert_eq!(pa.apply("(a,b)"), "a");
        assert_eq!(pb.apply("(a,b)"), "b");
    }

    #[test]
    fn empty_factor_forces_empty_product() {
        let (p, _, _) = product(&FinSet::empty(), &set(&["x", "y"]));
        assert!(p.is_empty());
    }

    #[test]
    fn square_product() {
        let vw = set(&["v", "w"]);
        let (p, _, _) = product(&vw, &vw);
        assert_eq!(p, set(&["(v,v)", "(v,w)", "(w,v)", "(w,w)"]));
    }

    #[test]
    fn coproduct_tags_both_sides() {
        let (c, ia, ib) = coproduct(&set(&["a"]), &set(&["a"]));
        assert_eq!(c, set(&["0:a", "1:a"]));
        assert_eq!(ia.apply("a"), "0:a");
        assert_eq!(ib.apply("a"), "1:a");

        let (c, _, _) = coproduct(&FinSet::empty(), &FinSet::empty());
        assert!(c.is_empty());

        let (c, _, _) = coproduct(&set(&["v", "w"]), &set(&["u"]));
        assert_eq!(c, set(&["0:v", "0:w", "1:u"]));
    }

    #[test]
    fn equalizer_of_equal_maps_is_whole_domain() {
        let ab = set(&["a", "b"]);
        let id = FinFunction::identity(&ab);
        let (e, incl) = equalizer(&id, &id).unwrap();
        assert_eq!(e, ab);
        assert_eq!(incl.dom(), &ab);
    }

    #[test]
    fn equalizer_pointwise() {
        let ab = set(&["a", "b"]);
        let id = FinFunction::identity(&ab);
        let const_a = FinFunction::constant(&ab, &ab, "a").unwrap();
        let (e, _) = equalizer(&id, &const_a).unwrap();
        assert_eq!(e, set(&["a"]));
    }

    // Oracle for the three-point equalizer example: a plain pointwise scan.
    #[test]
    fn equalizer_three_points() {
        let abc = set(&["a", "b", "c"]);
        let bits = set(&["0", "1"]);
        let f = FinFunction::from_pairs(abc.clone(), bits.clone(), [("a", "0"), ("b", "0"), ("c", "1")]).unwrap();
        let g = FinFunction::from_pairs(abc.clone(), bits.clone(), [("a", "0"), ("b", "1"), ("c", "1")]).unwrap();

        let expected: FinSet = abc.iter().filter(|x| f.apply(x) == g.apply(x)).collect();
        assert_eq!(expected, set(&["a", "c"]));

        let (e, _) = equalizer(&f, &g).unwrap();
        assert_eq!(e, expected);
    }

    #[test]
    fn equalizer_domain_mismatch() {
        let f = FinFunction::identity(&set(&["a"]));
        let g = FinFunction::identity(&set(&["b"]));
        assert!(matches!(equalizer(&f, &g), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn pullback_of_identities() {
        let a = set(&["a"]);
        let id = FinFunction::identity(&a);
        let (p, _, _) = pullback(&id, &id).unwrap();
        assert_eq!(p, set(&["(a,a)"]));
    }

    #[test]
    fn pullback_all_pairs_agree() {
        let zero = set(&["0"]);
        let f = FinFunction::constant(&set(&["x"]), &zero, "0").unwrap();
        let g = FinFunction::constant(&set(&["y", "z"]), &zero, "0").unwrap();
        let (p, _, _) = pullback(&f, &g).unwrap();
        assert_eq!(p, set(&["(x,y)", "(x,z)"]));
    }

    // Oracle: filter the full product by f(x) = g(y).
    #[test]
    fn pullback_filters_full_product() {
        let bits = set(&["0", "1"]);
        let f = FinFunction::from_pairs(set(&["x", "y"]), bits.clone(), [("x", "0"), ("y", "1")]).unwrap();
        let g = FinFunction::from_pairs(set(&["p", "q"]), bits.clone(), [("p", "1"), ("q", "1")]).unwrap();

        let mut expected = Vec::new();
        for x in f.dom().iter() {
            for y in g.dom().iter() {
                if f.apply(x) == g.apply(y) {
                    expected.push(pair_atom(x, y));
                }
            }
        }
        assert_eq!(FinSet::new(expected.clone()), set(&["(y,p)", "(y,q)"]));

        let (p, leg_f, leg_g) = pullback(&f, &g).unwrap();
        assert_eq!(p, FinSet::new(expected));
        // Legs commute with the cospan on every pullback element.
        for atom in p.iter() {
            assert_eq!(f.apply(leg_f.apply(atom)), g.apply(leg_g.apply(atom)));
        }
    }

    #[test]
    fn pullback_codomain_mismatch() {
        let f = FinFunction::identity(&set(&["a"]));
        let g = FinFunction::identity(&set(&["b"]));
        assert!(matches!(pullback(&f, &g), Err(Error::CodomainMismatch(_))));
    }

    #[test]
    fn bang_and_terminal() {
        let v = set(&["a", "b"]);
        let bang = FinFunction::bang(&v);
        assert_eq!(bang.cod(), &FinSet::terminal());
        assert!(v.iter().all(|a| bang.apply(a) == TERMINAL_ATOM));
    }

    #[test]
    fn inverse_of_bijection() {
        let ab = set(&["a", "b"]);
        let swap = FinFunction::from_pairs(ab.clone(), ab.clone(), [("a", "b"), ("b", "a")]).unwrap();
        let inv = swap.inverse().unwrap();
        assert_eq!(inv.compose(&swap).unwrap(), FinFunction::identity(&ab));

        let collapse = FinFunction::constant(&ab, &ab, "a").unwrap();
        assert!(collapse.inverse().is_none());
    }
}
