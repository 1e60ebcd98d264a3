//! The type-functor expression language.
//!
//! A [`FunctorExpr`] denotes a covariant endofunctor on finite sets,
//! built from the identity, constants, binary products and sums, the
//! singleton-or-pair functor [`FunctorExpr::P12`], the finite powerset
//! [`FunctorExpr::Pow`], and composition. The choice of expression
//! fixes the edge structure of a graph: `Id` gives multisets, `P12`
//! undirected edges, `Prod(Id,Id)` directed edges, `Pow` hyperedges,
//! sums give hybrid graphs and `Prod(Const,Comp(..))` colored ones.
//!
//! An [`FElem`] is a structured value representing one element of
//! `F(V)`. Its shape follows the functor expression: `Id` positions
//! hold atoms, products hold pairs, sums hold tagged values, `P12` and
//! `Pow` hold canonical sorted sets. Under a composition `Comp(F,G)`
//! the base positions of `F` hold whole `G`-elements.
//!
//! Enumeration (`apply_obj`) is guarded: the caller passes a maximum
//! element budget and the powerset's exponential blowup is refused
//! beyond it. Note that the unrestricted powerset is exactly the
//! functor whose coalgebra theory is badly behaved in the infinite
//! setting, so a finite budget is not just a convenience here.

use std::fmt;

use crate::error::{Error, Result};
use crate::finset::{FinFunction, FinSet};

/// Default enumeration budget shared by the library and the CLI.
pub const DEFAULT_MAX_ENUM: usize = 4096;

/// Syntax tree for a covariant endofunctor on finite sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FunctorExpr {
    /// `V -> V`; structure values are single atoms.
    Id,
    /// `V -> C` for a fixed finite set `C`.
    Const(FinSet),
    /// `V -> L(V) x R(V)`.
    Prod(Box<FunctorExpr>, Box<FunctorExpr>),
    /// `V -> L(V) + R(V)`, tagged disjoint union.
    Sum(Box<FunctorExpr>, Box<FunctorExpr>),
    /// `V -> ` singleton and two-element subsets of `V`.
    P12,
    /// Finite powerset.
    Pow,
    /// `Comp(F,G): V -> F(G(V))`.
    Comp(Box<FunctorExpr>, Box<FunctorExpr>),
}

impl FunctorExpr {
    pub fn prod(l: FunctorExpr, r: FunctorExpr) -> Self {
        FunctorExpr::Prod(Box::new(l), Box::new(r))
    }

    pub fn sum(l: FunctorExpr, r: FunctorExpr) -> Self {
        FunctorExpr::Sum(Box::new(l), Box::new(r))
    }

    pub fn comp(outer: FunctorExpr, inner: FunctorExpr) -> Self {
        FunctorExpr::Comp(Box::new(outer), Box::new(inner))
    }

    /// The directed-graph functor `V -> V x V`.
    pub fn directed() -> Self {
        FunctorExpr::prod(FunctorExpr::Id, FunctorExpr::Id)
    }

    /// Number of elements of `F(V)` for `|V| = n`, saturating.
    fn count(&self, n: u128) -> u128 {
        match self {
            FunctorExpr::Id => n,
            FunctorExpr::Const(c) => c.len() as u128,
            FunctorExpr::Prod(l, r) => l.count(n).saturating_mul(r.count(n)),
            FunctorExpr::Sum(l, r) => l.count(n).saturating_add(r.count(n)),
            FunctorExpr::P12 => n.saturating_add(n.saturating_mul(n.saturating_sub(1)) / 2),
            FunctorExpr::Pow => {
                if n >= 127 {
                    u128::MAX
                } else {
                    1u128 << n
                }
            }
            FunctorExpr::Comp(outer, inner) => outer.count(inner.count(n)),
        }
    }
}

impl fmt::Display for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorExpr::Id => write!(f, "Id"),
            FunctorExpr::Const(c) => write!(f, "Const{c}"),
            FunctorExpr::Prod(l, r) => write!(f, "Prod({l},{r})"),
            FunctorExpr::Sum(l, r) => write!(f, "Sum({l},{r})"),
            FunctorExpr::P12 => write!(f, "P12"),
            FunctorExpr::Pow => write!(f, "Pow"),
            FunctorExpr::Comp(o, i) => write!(f, "Comp({o},{i})"),
        }
    }
}

/// A structured element of `F(V)`.
///
/// The derived ordering is the canonical one used everywhere: atoms by
/// string order, sets by their sorted member sequence. `apply_obj`
/// enumerates in exactly this order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FElem {
    Atom(String),
    Pair(Box<FElem>, Box<FElem>),
    Inl(Box<FElem>),
    Inr(Box<FElem>),
    /// Sorted and duplicate-free; build through [`FElem::set_of`].
    SetOf(Vec<FElem>),
    ConstVal(String),
    /// Reserved wire-format token. No functor in the grammar has unit
    /// elements, so a structure map using it never validates.
    Unit,
}

impl FElem {
    pub fn atom(a: impl Into<String>) -> Self {
        FElem::Atom(a.into())
    }

    pub fn pair(l: FElem, r: FElem) -> Self {
        FElem::Pair(Box::new(l), Box::new(r))
    }

    pub fn inl(v: FElem) -> Self {
        FElem::Inl(Box::new(v))
    }

    pub fn inr(v: FElem) -> Self {
        FElem::Inr(Box::new(v))
    }

    pub fn const_val(c: impl Into<String>) -> Self {
        FElem::ConstVal(c.into())
    }

    /// Builds a set value in canonical form: sorted, duplicates dropped.
    pub fn set_of<I: IntoIterator<Item = FElem>>(members: I) -> Self {
        let mut vs: Vec<FElem> = members.into_iter().collect();
        vs.sort();
        vs.dedup();
        FElem::SetOf(vs)
    }

    /// Canonical text encoding, also used to name composite atoms such
    /// as cofree edges: `(x,y)` for pairs, `0:`/`1:` tags for sums,
    /// `{a,b}` for sets.
    pub fn encode(&self) -> String {
        match self {
            FElem::Atom(a) => a.clone(),
            FElem::Pair(l, r) => format!("({},{})", l.encode(), r.encode()),
            FElem::Inl(v) => format!("0:{}", v.encode()),
            FElem::Inr(v) => format!("1:{}", v.encode()),
            FElem::SetOf(vs) => {
                let inner: Vec<String> = vs.iter().map(FElem::encode).collect();
                format!("{{{}}}", inner.join(","))
            }
            FElem::ConstVal(c) => c.clone(),
            FElem::Unit => "unit".to_string(),
        }
    }
}

impl fmt::Display for FElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode())
    }
}

/// Base positions of a functor expression: either raw atoms of a
/// vertex set, or (under composition) elements of an inner functor.
enum Base<'a> {
    Atoms(&'a FinSet),
    Inner(&'a FunctorExpr, &'a Base<'a>),
}

impl Base<'_> {
    fn check(&self, s: &FElem) -> bool {
        match self {
            Base::Atoms(v) => matches!(s, FElem::Atom(a) if v.contains(a)),
            Base::Inner(g, base) => check_elem(g, base, s),
        }
    }
}

fn check_elem(f: &FunctorExpr, base: &Base<'_>, s: &FElem) -> bool {
    match (f, s) {
        (FunctorExpr::Id, _) => base.check(s),
        (FunctorExpr::Const(c), FElem::ConstVal(a)) => c.contains(a),
        (FunctorExpr::Prod(l, r), FElem::Pair(sl, sr)) => {
            check_elem(l, base, sl) && check_elem(r, base, sr)
        }
        (FunctorExpr::Sum(l, _), FElem::Inl(v)) => check_elem(l, base, v),
        (FunctorExpr::Sum(_, r), FElem::Inr(v)) => check_elem(r, base, v),
        (FunctorExpr::P12, FElem::SetOf(vs)) => {
            (1..=2).contains(&vs.len()) && strictly_sorted(vs) && vs.iter().all(|m| base.check(m))
        }
        (FunctorExpr::Pow, FElem::SetOf(vs)) => {
            strictly_sorted(vs) && vs.iter().all(|m| base.check(m))
        }
        (FunctorExpr::Comp(outer, inner), _) => {
            check_elem(outer, &Base::Inner(inner, base), s)
        }
        _ => false,
    }
}

fn strictly_sorted(vs: &[FElem]) -> bool {
    vs.windows(2).all(|w| w[0] < w[1])
}

/// Structural membership test: is `s` an element of `F(v)`?
pub fn elem_check(f: &FunctorExpr, v: &FinSet, s: &FElem) -> bool {
    check_elem(f, &Base::Atoms(v), s)
}

fn enumerate(f: &FunctorExpr, base: &[FElem]) -> Vec<FElem> {
    match f {
        FunctorExpr::Id => base.to_vec(),
        FunctorExpr::Const(c) => c.iter().map(FElem::const_val).collect(),
        FunctorExpr::Prod(l, r) => {
            let ls = enumerate(l, base);
            let rs = enumerate(r, base);
            let mut out = Vec::with_capacity(ls.len() * rs.len());
            for a in &ls {
                for b in &rs {
                    out.push(FElem::pair(a.clone(), b.clone()));
                }
            }
            out
        }
        FunctorExpr::Sum(l, r) => {
            let mut out: Vec<FElem> = enumerate(l, base).into_iter().map(FElem::inl).collect();
            out.extend(enumerate(r, base).into_iter().map(FElem::inr));
            out
        }
        FunctorExpr::P12 => {
            let mut out = Vec::new();
            for (i, a) in base.iter().enumerate() {
                out.push(FElem::set_of([a.clone()]));
                for b in &base[i + 1..] {
                    out.push(FElem::set_of([a.clone(), b.clone()]));
                }
            }
            out.sort();
            out
        }
        FunctorExpr::Pow => {
            let mut out = Vec::with_capacity(1 << base.len());
            for mask in 0u64..(1u64 << base.len()) {
                let members = base
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, m)| m.clone());
                out.push(FElem::set_of(members));
            }
            out.sort();
            out
        }
        FunctorExpr::Comp(outer, inner) => {
            let inner_elems = enumerate(inner, base);
            enumerate(outer, &inner_elems)
        }
    }
}

/// Number of elements of `F(v)` without enumerating them.
pub fn count_obj(f: &FunctorExpr, v: &FinSet) -> u128 {
    f.count(v.len() as u128)
}

/// Enumerates all elements of `F(v)` in canonical order.
///
/// Fails with [`Error::SizeGuardExceeded`] when the element count (of
/// the result or of any intermediate base under composition) exceeds
/// `max_enum`.
pub fn apply_obj(f: &FunctorExpr, v: &FinSet, max_enum: usize) -> Result<Vec<FElem>> {
    guard_counts(f, v.len() as u128, max_enum)?;
    Ok(enumerate(f, &v.iter().map(FElem::atom).collect::<Vec<_>>()))
}

fn guard_counts(f: &FunctorExpr, n: u128, max_enum: usize) -> Result<()> {
    let total = f.count(n);
    if total > max_enum as u128 {
        return Err(Error::SizeGuardExceeded(format!(
            "F(V) has {total} elements, budget is {max_enum}"
        )));
    }
    // Intermediate bases of compositions count against the budget too.
    match f {
        FunctorExpr::Prod(l, r) | FunctorExpr::Sum(l, r) => {
            guard_counts(l, n, max_enum)?;
            guard_counts(r, n, max_enum)
        }
        FunctorExpr::Comp(outer, inner) => {
            guard_counts(inner, n, max_enum)?;
            guard_counts(outer, inner.count(n), max_enum)
        }
        _ => Ok(()),
    }
}

/// Maps every base-position leaf of `s` through `leaf`, keeping the
/// functor shape and re-canonicalizing sets on the way out.
///
/// Under `Comp(F,G)` the base positions of `F` hold `G`-elements, so
/// the traversal descends into `G` before `leaf` is applied; the leaf
/// function always receives true base elements.
fn map_elem(
    f: &FunctorExpr,
    s: &FElem,
    leaf: &dyn Fn(&FElem) -> Result<FElem>,
) -> Result<FElem> {
    match (f, s) {
        (FunctorExpr::Id, _) => leaf(s),
        (FunctorExpr::Const(_), FElem::ConstVal(_)) => Ok(s.clone()),
        (FunctorExpr::Prod(l, r), FElem::Pair(sl, sr)) => {
            Ok(FElem::pair(map_elem(l, sl, leaf)?, map_elem(r, sr, leaf)?))
        }
        (FunctorExpr::Sum(l, _), FElem::Inl(v)) => Ok(FElem::inl(map_elem(l, v, leaf)?)),
        (FunctorExpr::Sum(_, r), FElem::Inr(v)) => Ok(FElem::inr(map_elem(r, v, leaf)?)),
        (FunctorExpr::P12 | FunctorExpr::Pow, FElem::SetOf(vs)) => {
            let mapped: Result<Vec<FElem>> = vs.iter().map(leaf).collect();
            Ok(FElem::set_of(mapped?))
        }
        (FunctorExpr::Comp(outer, inner), _) => {
            map_elem(outer, s, &|m: &FElem| map_elem(inner, m, leaf))
        }
        _ => Err(Error::IllTypedElement(format!(
            "element {s} does not match functor {f}"
        ))),
    }
}

/// The morphism action `F(m)` applied to one element.
///
/// Set values are re-canonicalized, so a two-element `P12` edge
/// collapses to a singleton under a non-injective map; that is the
/// set-image semantics of `P12` as a sub-functor of the powerset.
pub fn apply_mor(f: &FunctorExpr, m: &FinFunction, s: &FElem) -> Result<FElem> {
    if !elem_check(f, m.dom(), s) {
        return Err(Error::IllTypedElement(format!(
            "element {s} is not in F{} for F = {f}",
            m.dom()
        )));
    }
    map_elem(f, s, &|l: &FElem| match l {
        FElem::Atom(a) => Ok(FElem::atom(m.apply(a))),
        _ => Err(Error::IllTypedElement(format!("expected an atom, got {l}"))),
    })
}

/// Replaces every base atom `v` of `s` by `leaf(v)`; used by the
/// colored-graph construction to relabel vertices in place.
pub fn map_base_atoms(
    f: &FunctorExpr,
    s: &FElem,
    leaf: &dyn Fn(&str) -> Result<FElem>,
) -> Result<FElem> {
    map_elem(f, s, &|l: &FElem| match l {
        FElem::Atom(a) => leaf(a),
        _ => Err(Error::IllTypedElement(format!("expected an atom, got {l}"))),
    })
}

/// The set of base atoms occurring in `s`: the least `V'` with
/// `s` in `F(V')`. Constants contribute nothing; under composition the
/// supports of the inner elements are unioned.
pub fn support(f: &FunctorExpr, s: &FElem) -> Result<FinSet> {
    let mut atoms = Vec::new();
    collect_support(f, &[], s, &mut atoms)?;
    Ok(FinSet::new(atoms))
}

fn collect_support(
    f: &FunctorExpr,
    inner_stack: &[&FunctorExpr],
    s: &FElem,
    out: &mut Vec<String>,
) -> Result<()> {
    match (f, s) {
        (FunctorExpr::Id, _) => collect_base_support(inner_stack, s, out),
        (FunctorExpr::Const(_), FElem::ConstVal(_)) | (_, FElem::Unit) => Ok(()),
        (FunctorExpr::Prod(l, r), FElem::Pair(sl, sr)) => {
            collect_support(l, inner_stack, sl, out)?;
            collect_support(r, inner_stack, sr, out)
        }
        (FunctorExpr::Sum(l, _), FElem::Inl(v)) => collect_support(l, inner_stack, v, out),
        (FunctorExpr::Sum(_, r), FElem::Inr(v)) => collect_support(r, inner_stack, v, out),
        (FunctorExpr::P12 | FunctorExpr::Pow, FElem::SetOf(vs)) => {
            for m in vs {
                collect_base_support(inner_stack, m, out)?;
            }
            Ok(())
        }
        (FunctorExpr::Comp(outer, inner), _) => {
            let mut stack: Vec<&FunctorExpr> = Vec::with_capacity(inner_stack.len() + 1);
            stack.push(inner);
            stack.extend_from_slice(inner_stack);
            collect_support(outer, &stack, s, out)
        }
        _ => Err(Error::IllTypedElement(format!(
            "element {s} does not match functor {f}"
        ))),
    }
}

fn collect_base_support(
    inner_stack: &[&FunctorExpr],
    s: &FElem,
    out: &mut Vec<String>,
) -> Result<()> {
    match inner_stack.split_first() {
        None => match s {
            FElem::Atom(a) => {
                out.push(a.clone());
                Ok(())
            }
            _ => Err(Error::IllTypedElement(format!("expected an atom, got {s}"))),
        },
        Some((g, rest)) => collect_support(g, rest, s, out),
    }
}
