use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt::Write as _;

use super::{product, Ranges, SemanticsError};
use crate::kernel::{display_tuple, Element, SortId};
use crate::sorting::PredicateKind;
use crate::workspace::Workspace;

/// Refuse to enumerate more candidate worlds than this by default.
pub const DEFAULT_WORLD_CAP: u128 = 1 << 20;

/// An extensionalization function: a relation for every predicate-concept
/// and a graph for every function without a built-in evaluator. Concepts it
/// does not mention have empty extensions; propositions get their truth
/// value through the relations, with `h(Truth) = t` fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct World {
    pub id: usize,
    relations: BTreeMap<SortId, BTreeSet<Vec<Element>>>,
    functions: BTreeMap<Arc<str>, BTreeMap<Vec<Element>, Element>>,
}

static EMPTY: BTreeSet<Vec<Element>> = BTreeSet::new();

impl World {
    pub fn new(id: usize) -> Self {
        World {
            id,
            ..World::default()
        }
    }

    pub fn relation(&self, concept: &SortId) -> &BTreeSet<Vec<Element>> {
        self.relations.get(concept).unwrap_or(&EMPTY)
    }

    pub fn holds(&self, concept: &SortId, tuple: &[Element]) -> bool {
        self.relations.get(concept).is_some_and(|r| r.contains(tuple))
    }

    pub fn set_relation(&mut self, concept: SortId, tuples: impl IntoIterator<Item = Vec<Element>>) {
        self.relations.insert(concept, tuples.into_iter().collect());
    }

    pub fn set_function(&mut self, function: &str, graph: impl IntoIterator<Item = (Vec<Element>, Element)>) {
        self.functions.insert(Arc::from(function), graph.into_iter().collect());
    }

    pub fn function_value(&self, function: &str, args: &[Element]) -> Option<&Element> {
        self.functions.get(function)?.get(args)
    }

    pub fn relations(&self) -> impl Iterator<Item = (&SortId, &BTreeSet<Vec<Element>>)> {
        self.relations.iter()
    }

    /// `WORLD <id>` followed by one line per predicate-concept and per
    /// world-dependent function, in declaration order.
    pub fn render(&self, ws: &Workspace) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "WORLD {}", self.id);
        for decl in ws.signature().predicates() {
            let PredicateKind::Concept(c) = &decl.kind else { continue };
            let _ = write!(out, "{c} = {{");
            for (i, t) in self.relation(c).iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&display_tuple(t));
            }
            out.push_str("}\n");
        }
        for decl in ws.signature().functions() {
            if decl.evaluator.is_some() {
                continue;
            }
            let _ = write!(out, "{} = {{", decl.name);
            if let Some(graph) = self.functions.get(&decl.name) {
                for (i, (args, v)) in graph.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    let _ = write!(out, "{} -> {v}", display_tuple(args));
                }
            }
            out.push_str("}\n");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WorldViolation {
    #[error("tuple {tuple} of `{concept}` lies outside its attribute sorts")]
    UnsortedTuple { concept: SortId, tuple: String },
    #[error("`{sub}` ⊑ `{sup}` but `{member}` is only in the extent of `{sub}`")]
    IsaInclusion { sub: SortId, sup: SortId, member: String },
    #[error("`{function}` has no value at {args}")]
    PartialFunction { function: String, args: String },
    #[error("`{function}` maps {args} to `{value}` outside its return sort")]
    FunctionRange { function: String, args: String, value: String },
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

fn extent_in(ws: &Workspace, world: &World, s: &SortId) -> Option<BTreeSet<Element>> {
    if ws.is_world_dependent(s) {
        return Some(world.relation(s).iter().map(|t| t[0].clone()).collect());
    }
    ws.kernel().static_extent(s).ok().map(|v| v.into_iter().collect())
}

fn isa_violation(ws: &Workspace, world: &World, pairs: &[(SortId, SortId)]) -> Option<WorldViolation> {
    for (sub, sup) in pairs {
        let (Some(a), Some(b)) = (extent_in(ws, world, sub), extent_in(ws, world, sup)) else {
            continue;
        };
        if let Some(e) = a.iter().find(|e| !b.contains(e)) {
            return Some(WorldViolation::IsaInclusion {
                sub: sub.clone(),
                sup: sup.clone(),
                member: e.lexeme(),
            });
        }
    }
    None
}

fn world_isa_pairs(ws: &Workspace) -> Vec<(SortId, SortId)> {
    ws.isa_pairs()
        .into_iter()
        .filter(|(a, b)| ws.is_world_dependent(a) || ws.is_world_dependent(b))
        .collect()
}

/// Checks the sorted constraint on every relation, IS-A inclusion, and that
/// every world-dependent function is total into its return sort.
pub fn validate_world(ws: &Workspace, world: &World) -> Result<(), WorldViolation> {
    let kernel = ws.kernel();
    for (concept, tuples) in world.relations() {
        let Some(c) = kernel.concept(concept) else { continue };
        for t in tuples {
            let sorted = t.len() == c.arity()
                && t.iter().zip(&c.attribute_sorts).all(|(e, s)| {
                    if s.is_nested_sentence() {
                        matches!(e, Element::Concept(_))
                    } else {
                        kernel.is_subsort(&kernel.dynamic_sort(e), s).unwrap_or(false)
                    }
                });
            if !sorted {
                return Err(WorldViolation::UnsortedTuple {
                    concept: concept.clone(),
                    tuple: display_tuple(t),
                });
            }
        }
    }
    if let Some(v) = isa_violation(ws, world, &world_isa_pairs(ws)) {
        return Err(v);
    }
    let ranges = Ranges::new(ws);
    for decl in ws.signature().functions() {
        if decl.evaluator.is_some() {
            continue;
        }
        let domains: Vec<&[Element]> = decl.args.iter().map(|s| ranges.get(s)).collect::<Result<_, _>>()?;
        for args in product(&domains) {
            let Some(v) = world.function_value(&decl.name, &args) else {
                return Err(WorldViolation::PartialFunction {
                    function: String::from(&*decl.name),
                    args: display_tuple(&args),
                });
            };
            if !kernel.is_subsort(&kernel.dynamic_sort(v), &decl.ret).unwrap_or(false) {
                return Err(WorldViolation::FunctionRange {
                    function: String::from(&*decl.name),
                    args: display_tuple(&args),
                    value: v.lexeme(),
                });
            }
        }
    }
    Ok(())
}

enum Slot {
    /// A subset of the candidate tuples, one bit each.
    Relation { concept: SortId, tuples: Vec<Vec<Element>> },
    /// One value from `values` for every argument tuple.
    Function {
        name: Arc<str>,
        args: Vec<Vec<Element>>,
        values: Vec<Element>,
    },
}

impl Slot {
    fn radix(&self) -> Option<u128> {
        match self {
            Slot::Relation { tuples, .. } => 1u128.checked_shl(u32::try_from(tuples.len()).ok()?),
            Slot::Function { args, values, .. } => {
                (values.len() as u128).checked_pow(u32::try_from(args.len()).ok()?)
            }
        }
    }
}

/// The lazily generated sequence of worlds of a workspace.
pub struct Enumeration<'a> {
    ws: &'a Workspace,
    slots: Vec<Slot>,
    radices: Vec<u128>,
    total: u128,
    next: u128,
    next_id: usize,
    isa: Vec<(SortId, SortId)>,
}

impl Enumeration<'_> {
    /// Number of candidate worlds before the IS-A filter.
    pub fn candidates(&self) -> u128 {
        self.total
    }

    fn build(&self, mut code: u128) -> World {
        let mut world = World::new(0);
        for (slot, radix) in self.slots.iter().zip(&self.radices).rev() {
            let digit = code % radix;
            code /= radix;
            match slot {
                Slot::Relation { concept, tuples } => {
                    let chosen = tuples
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| digit >> i & 1 == 1)
                        .map(|(_, t)| t.clone());
                    world.set_relation(concept.clone(), chosen);
                }
                Slot::Function { name, args, values } => {
                    let mut d = digit;
                    let n = values.len() as u128;
                    let mut graph = BTreeMap::new();
                    for a in args.iter().rev() {
                        graph.insert(a.clone(), values[(d % n) as usize].clone());
                        d /= n;
                    }
                    world.functions.insert(name.clone(), graph);
                }
            }
        }
        world
    }
}

impl Iterator for Enumeration<'_> {
    type Item = World;

    fn next(&mut self) -> Option<World> {
        while self.next < self.total {
            let mut world = self.build(self.next);
            self.next += 1;
            if isa_violation(self.ws, &world, &self.isa).is_none() {
                world.id = self.next_id;
                self.next_id += 1;
                return Some(world);
            }
        }
        None
    }
}

/// Every world over the workspace's finite extents, filtered by IS-A
/// inclusion and numbered from 0. Concepts vary in registration order, the
/// first one slowest; built-in predicates and functions are fixed.
pub fn enumerate_worlds(ws: &Workspace, cap: u128) -> Result<Enumeration<'_>, SemanticsError> {
    let ranges = Ranges::new(ws);
    let mut slots = Vec::new();
    for decl in ws.signature().predicates() {
        let PredicateKind::Concept(c) = &decl.kind else { continue };
        let mut domains = Vec::new();
        let mut nested = false;
        for s in &decl.sorts {
            if s.is_nested_sentence() {
                nested = true;
                break;
            }
            domains.push(ranges.get(s)?);
        }
        let tuples = if nested { Vec::new() } else { product(&domains) };
        slots.push(Slot::Relation {
            concept: c.clone(),
            tuples,
        });
    }
    for decl in ws.signature().functions() {
        if decl.evaluator.is_some() {
            continue;
        }
        let domains: Vec<&[Element]> = decl.args.iter().map(|s| ranges.get(s)).collect::<Result<_, _>>()?;
        slots.push(Slot::Function {
            name: decl.name.clone(),
            args: product(&domains),
            values: ranges.get(&decl.ret)?.to_vec(),
        });
    }
    let mut radices = Vec::with_capacity(slots.len());
    let mut total: u128 = 1;
    for slot in &slots {
        let r = slot.radix();
        let next = r.and_then(|r| total.checked_mul(r));
        match next {
            Some(t) if t <= cap => {
                radices.push(r.unwrap_or(1));
                total = t;
            }
            _ => {
                return Err(SemanticsError::ExplosionGuard {
                    candidates: next.unwrap_or(u128::MAX),
                    cap,
                })
            }
        }
    }
    Ok(Enumeration {
        ws,
        slots,
        radices,
        total,
        next: 0,
        next_id: 0,
        isa: world_isa_pairs(ws),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::ExtentMember;
    use alloc::vec;

    fn s(n: &str) -> SortId {
        SortId::new(n)
    }

    fn unary(members: &[&str]) -> Workspace {
        let mut ws = Workspace::new();
        ws.declare_sort("thing").unwrap();
        ws.declare_extent(&s("thing"), members.iter().map(|m| ExtentMember::parse(m))).unwrap();
        ws.declare_concept("p-concept", vec![s("thing")], Some("p")).unwrap();
        ws
    }

    #[test]
    fn singleton_powerset() {
        let mut ws = unary(&["a"]);
        ws.finalize().unwrap();
        let worlds: Vec<World> = enumerate_worlds(&ws, DEFAULT_WORLD_CAP).unwrap().collect();
        assert_eq!(worlds.len(), 2);
        assert!(worlds[0].relation(&s("p-concept")).is_empty());
        assert_eq!(worlds[1].relation(&s("p-concept")).len(), 1);
        assert_eq!(worlds[1].id, 1);
    }

    #[test]
    fn subsort_forces_membership() {
        let mut ws = unary(&["a", "b"]);
        ws.declare_sort("special").unwrap();
        ws.declare_extent(&s("special"), [ExtentMember::parse("a")]).unwrap();
        ws.declare_isa(&s("special"), &s("p-concept")).unwrap();
        ws.declare_isa(&s("special"), &s("thing")).unwrap();
        ws.finalize().unwrap();
        let enumeration = enumerate_worlds(&ws, DEFAULT_WORLD_CAP).unwrap();
        assert_eq!(enumeration.candidates(), 4);
        let worlds: Vec<World> = enumeration.collect();
        // Brute force over the powerset of {a, b}, keeping sets with a.
        let a = Element::from("a");
        let expected: Vec<bool> = [vec![], vec![a.clone()], vec![Element::from("b")], vec![a.clone(), Element::from("b")]]
            .iter()
            .map(|set| set.contains(&a))
            .collect();
        assert_eq!(worlds.len(), expected.iter().filter(|k| **k).count());
        for w in &worlds {
            assert!(w.holds(&s("p-concept"), std::slice::from_ref(&a)));
            validate_world(&ws, w).unwrap();
        }
    }

    #[test]
    fn infinite_extent_and_cap() {
        let mut ws = Workspace::new();
        ws.declare_sort("reals").unwrap();
        ws.declare_concept("measure", vec![s("reals")], Some("m")).unwrap();
        ws.finalize().unwrap();
        assert!(matches!(
            enumerate_worlds(&ws, DEFAULT_WORLD_CAP),
            Err(SemanticsError::InfiniteExtent(_))
        ));
        let mut ws = unary(&["a", "b", "c", "d", "e"]);
        ws.finalize().unwrap();
        assert!(matches!(enumerate_worlds(&ws, 16), Err(SemanticsError::ExplosionGuard { candidates: 32, cap: 16 })));
    }

    #[test]
    fn function_graphs_are_total() {
        let mut ws = unary(&["a", "b"]);
        ws.declare_function("f", vec![s("thing")], s("thing"), None).unwrap();
        ws.finalize().unwrap();
        let worlds: Vec<World> = enumerate_worlds(&ws, DEFAULT_WORLD_CAP).unwrap().collect();
        assert_eq!(worlds.len(), 4 * 4);
        for w in &worlds {
            validate_world(&ws, w).unwrap();
        }
        let mut broken = worlds[0].clone();
        broken.set_function("f", [(vec![Element::from("a")], Element::from("a"))]);
        assert!(matches!(validate_world(&ws, &broken), Err(WorldViolation::PartialFunction { .. })));
        let mut unsorted = worlds[0].clone();
        unsorted.set_relation(s("p-concept"), [vec![Element::from("3")]]);
        assert!(matches!(validate_world(&ws, &unsorted), Err(WorldViolation::UnsortedTuple { .. })));
    }

    #[test]
    fn certificate_rendering() {
        let mut ws = unary(&["a", "b"]);
        ws.finalize().unwrap();
        let w = enumerate_worlds(&ws, DEFAULT_WORLD_CAP).unwrap().last().unwrap();
        assert_eq!(w.render(&ws), "WORLD 3\np-concept = {(a), (b)}\n");
    }
}
