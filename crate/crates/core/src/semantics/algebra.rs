//! The extension a world gives to an intension, computed by relational
//! algebra over the concept's normal form: selection on the world's
//! relations for atoms, join for conjunction, complement for negation and
//! projection for the existential quantifier.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::eval::apply_function;
use super::{product, Ranges, SemanticsError, World};
use crate::concepts::{nabs_value, FormulaConcept, Intension, NFormula, NTerm};
use crate::kernel::{display_tuple, Element, SortId};
use crate::sorting::PredicateKind;
use crate::workspace::Workspace;

type Rows = BTreeSet<Vec<Element>>;

/// A relation with named (sorted) columns.
#[derive(Clone, Debug)]
struct Relation {
    cols: Vec<u32>,
    rows: Rows,
}

struct Ctx<'a> {
    ws: &'a Workspace,
    world: &'a World,
    ranges: &'a Ranges,
    sorts: &'a [SortId],
}

impl Ctx<'_> {
    fn range(&self, v: u32) -> Result<&[Element], SemanticsError> {
        self.ranges.get(&self.sorts[v as usize])
    }

    fn full(&self, cols: &[u32]) -> Result<Rows, SemanticsError> {
        let domains = cols.iter().map(|c| self.range(*c)).collect::<Result<Vec<_>, _>>()?;
        Ok(product(&domains).into_iter().collect())
    }

    fn term(&self, t: &NTerm, env: &BTreeMap<u32, Element>) -> Result<Element, SemanticsError> {
        match t {
            NTerm::Var(i) => Ok(env[i].clone()),
            NTerm::Value(e) => Ok(e.clone()),
            NTerm::App(f, args) => {
                let values = args.iter().map(|a| self.term(a, env)).collect::<Result<Vec<_>, _>>()?;
                apply_function(self.ws, self.world, f, &values)
            }
            NTerm::Abs(abs) => nabs_value(abs, env, self.sorts, self.ws)
                .map(Element::concept)
                .ok_or_else(|| SemanticsError::UnboundVariable(alloc::format!("x{}", abs.beta[0] + 1))),
        }
    }

    fn atom(&self, p: &str, args: &[NTerm]) -> Result<Relation, SemanticsError> {
        let mut cols: Vec<u32> = Vec::new();
        for a in args {
            cols.extend(a.free_vars());
        }
        cols.sort_unstable();
        cols.dedup();
        let decl = self
            .ws
            .signature()
            .predicate(p)
            .ok_or_else(|| SemanticsError::UnknownPredicate(p.into()))?;
        let simple = args.iter().all(|a| matches!(a, NTerm::Var(_) | NTerm::Value(_)));
        let mut rows = Rows::new();
        match &decl.kind {
            PredicateKind::Concept(c) if simple => {
                let ranges = cols.iter().map(|c| self.range(*c)).collect::<Result<Vec<_>, _>>()?;
                'tuples: for t in self.world.relation(c) {
                    if t.len() != args.len() {
                        continue;
                    }
                    let mut env: BTreeMap<u32, &Element> = BTreeMap::new();
                    for (a, e) in args.iter().zip(t) {
                        match a {
                            NTerm::Value(v) if v != e => continue 'tuples,
                            NTerm::Var(i) => {
                                if env.get(i).is_some_and(|prev| *prev != e) {
                                    continue 'tuples;
                                }
                                env.insert(*i, e);
                            }
                            _ => {}
                        }
                    }
                    let row: Vec<Element> = cols.iter().map(|c| env[c].clone()).collect();
                    if row.iter().zip(&ranges).all(|(e, r)| r.contains(e)) {
                        rows.insert(row);
                    }
                }
            }
            _ => {
                for row in self.full(&cols)? {
                    let env: BTreeMap<u32, Element> = cols.iter().copied().zip(row.iter().cloned()).collect();
                    let values = args.iter().map(|a| self.term(a, &env)).collect::<Result<Vec<_>, _>>()?;
                    let holds = match &decl.kind {
                        PredicateKind::Concept(c) => self.world.holds(c, &values),
                        PredicateKind::Builtin(b) => {
                            b.holds(&values).ok_or_else(|| SemanticsError::EvaluationFailure {
                                symbol: p.into(),
                                args: display_tuple(&values),
                            })?
                        }
                    };
                    if holds {
                        rows.insert(row);
                    }
                }
            }
        }
        Ok(Relation { cols, rows })
    }

    fn formula(&self, f: &NFormula) -> Result<Relation, SemanticsError> {
        match f {
            NFormula::Atom(p, args) => self.atom(p, args),
            NFormula::Not(g) => {
                let r = self.formula(g)?;
                let rows = self.full(&r.cols)?.difference(&r.rows).cloned().collect();
                Ok(Relation { cols: r.cols, rows })
            }
            NFormula::And(a, b) => Ok(join(&self.formula(a)?, &self.formula(b)?)),
            NFormula::Exists(v, g) => {
                let r = self.formula(g)?;
                match r.cols.iter().position(|c| c == v) {
                    Some(k) => {
                        let mut cols = r.cols.clone();
                        cols.remove(k);
                        let rows = r
                            .rows
                            .into_iter()
                            .map(|mut row| {
                                row.remove(k);
                                row
                            })
                            .collect();
                        Ok(Relation { cols, rows })
                    }
                    None if self.range(*v)?.is_empty() => Ok(Relation {
                        cols: r.cols,
                        rows: Rows::new(),
                    }),
                    None => Ok(r),
                }
            }
        }
    }
}

fn join(a: &Relation, b: &Relation) -> Relation {
    let mut cols = a.cols.clone();
    cols.extend(b.cols.iter().filter(|c| !a.cols.contains(c)));
    cols.sort_unstable();
    let pos = |rel: &Relation, c: u32| rel.cols.iter().position(|x| *x == c);
    let shared: Vec<(usize, usize)> = a
        .cols
        .iter()
        .enumerate()
        .filter_map(|(i, c)| pos(b, *c).map(|j| (i, j)))
        .collect();
    let mut rows = Rows::new();
    for ra in &a.rows {
        for rb in &b.rows {
            if shared.iter().any(|(i, j)| ra[*i] != rb[*j]) {
                continue;
            }
            rows.insert(
                cols.iter()
                    .map(|c| match pos(a, *c) {
                        Some(i) => ra[i].clone(),
                        None => rb[pos(b, *c).expect("column of b")].clone(),
                    })
                    .collect(),
            );
        }
    }
    Relation { cols, rows }
}

fn formula_extension(
    ws: &Workspace,
    world: &World,
    ranges: &Ranges,
    fc: &FormulaConcept,
) -> Result<Rows, SemanticsError> {
    let ctx = Ctx {
        ws,
        world,
        ranges,
        sorts: &fc.sorts,
    };
    let r = ctx.formula(&fc.body)?;
    // Free variables are 0..arity; all of them are columns of the result.
    let order: Vec<usize> = (0..fc.arity as u32)
        .map(|i| r.cols.iter().position(|c| *c == i).expect("free variable column"))
        .collect();
    Ok(r.rows
        .into_iter()
        .map(|row| order.iter().map(|&k| row[k].clone()).collect())
        .collect())
}

/// `h(c)` extended to every intension: the world's relation for
/// predicate-concepts, selection for subconcepts, relational algebra for
/// composed formulas and set union for `union`. A proposition's extension
/// is `{()}` when true and empty when false.
pub fn extension(ws: &Workspace, world: &World, c: &Intension) -> Result<Rows, SemanticsError> {
    let ranges = Ranges::new(ws);
    extension_in(ws, world, &ranges, c)
}

fn extension_in(ws: &Workspace, world: &World, ranges: &Ranges, c: &Intension) -> Result<Rows, SemanticsError> {
    match c {
        Intension::Truth => Ok([Vec::new()].into_iter().collect()),
        Intension::Predicate(p) => Ok(world.relation(&p.id).clone()),
        Intension::Subconcept(s) => Ok(world
            .relation(&s.root.id)
            .iter()
            .filter(|t| t.iter().zip(&s.bound).all(|(e, b)| b.as_ref().is_none_or(|b| b == e)))
            .map(|t| {
                t.iter()
                    .zip(&s.bound)
                    .filter(|(_, b)| b.is_none())
                    .map(|(e, _)| e.clone())
                    .collect()
            })
            .collect()),
        Intension::Formula(fc) => formula_extension(ws, world, ranges, fc),
        Intension::Union(u) => {
            let mut out = Rows::new();
            for p in u.parts() {
                out.extend(extension_in(ws, world, ranges, p)?);
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concepts::union_concept;
    use crate::kernel::ExtentMember;
    use crate::semantics::{enumerate_worlds, DEFAULT_WORLD_CAP};
    use crate::syntax::{Formula, Term, Variable};
    use alloc::vec;

    fn s(n: &str) -> SortId {
        SortId::new(n)
    }

    #[test]
    fn union_of_subconcepts() {
        let mut ws = Workspace::new();
        ws.declare_sort("thing").unwrap();
        ws.declare_extent(&s("thing"), ["a", "b"].map(ExtentMember::parse)).unwrap();
        ws.declare_concept("rel", vec![s("thing"), s("thing")], Some("p")).unwrap();
        ws.finalize().unwrap();
        let x = Term::var("x", "thing");
        let pa = ws.interpret(&Formula::atom("p", vec![Term::constant("a"), x.clone()]));
        let pb = ws.interpret(&Formula::atom("p", vec![Term::constant("b"), x]));
        let u = union_concept([pa.clone(), pb.clone()]).unwrap();
        let worlds: Vec<World> = enumerate_worlds(&ws, DEFAULT_WORLD_CAP).unwrap().collect();
        assert_eq!(worlds.len(), 16);
        for w in &worlds {
            // Brute force: second components of h(rel) with first a or b.
            let expected: Rows = w
                .relation(&s("rel"))
                .iter()
                .filter(|t| t[0] == Element::from("a") || t[0] == Element::from("b"))
                .map(|t| vec![t[1].clone()])
                .collect();
            assert_eq!(extension(&ws, w, &u).unwrap(), expected);
            let mut parts = extension(&ws, w, &pa).unwrap();
            parts.extend(extension(&ws, w, &pb).unwrap());
            assert_eq!(parts, expected);
        }
    }

    #[test]
    fn composed_formula() {
        let mut ws = Workspace::new();
        ws.declare_sort("thing").unwrap();
        ws.declare_extent(&s("thing"), ["a", "b"].map(ExtentMember::parse)).unwrap();
        ws.declare_concept("p-concept", vec![s("thing")], Some("p")).unwrap();
        ws.declare_concept("q-concept", vec![s("thing")], Some("q")).unwrap();
        ws.finalize().unwrap();
        let x = Variable::new("x", "thing");
        let phi = Formula::and(
            Formula::atom("p", vec![Term::Var(x.clone())]),
            Formula::not(Formula::atom("q", vec![Term::Var(x.clone())])),
        );
        let c = ws.interpret(&phi);
        for w in enumerate_worlds(&ws, DEFAULT_WORLD_CAP).unwrap() {
            let expected: Rows = w
                .relation(&s("p-concept"))
                .difference(w.relation(&s("q-concept")))
                .cloned()
                .collect();
            assert_eq!(extension(&ws, &w, &c).unwrap(), expected);
        }
    }
}
