use std::collections::BTreeSet;

use proptest::prelude::*;

use ifol_core::concepts::union_concept;
use ifol_core::kernel::ExtentMember;
use ifol_core::semantics::{
    bealer_montague_check, enumerate_worlds, extension, montague_intension, validate_world, KripkeModel, World,
    DEFAULT_WORLD_CAP,
};
use ifol_core::{Assignment, Element, Formula, SortId, Term, Variable, Workspace};

fn s(n: &str) -> SortId {
    SortId::new(n)
}

#[derive(Clone, Debug)]
struct Shape {
    extents: Vec<usize>,
    concepts: Vec<Vec<usize>>,
    function: Option<(usize, usize)>,
}

fn shape() -> impl Strategy<Value = Shape> {
    (1usize..=3)
        .prop_flat_map(|n| {
            let sort = 0..n;
            (
                proptest::collection::vec(1usize..=2, n),
                proptest::collection::vec(proptest::collection::vec(sort.clone(), 1..=2), 1..=2),
                proptest::option::of((sort.clone(), sort)),
            )
        })
        .prop_map(|(extents, concepts, function)| Shape {
            extents,
            concepts,
            function,
        })
}

fn build(shape: &Shape) -> Workspace {
    let mut ws = Workspace::new();
    for (i, size) in shape.extents.iter().enumerate() {
        let name = format!("s{i}");
        ws.declare_sort(&name).unwrap();
        let members: Vec<String> = (0..*size).map(|j| format!("e{i}{j}")).collect();
        ws.declare_extent(&s(&name), members.iter().map(|m| ExtentMember::parse(m))).unwrap();
    }
    for (k, sorts) in shape.concepts.iter().enumerate() {
        let sorts = sorts.iter().map(|i| s(&format!("s{i}"))).collect();
        ws.declare_concept(&format!("c{k}"), sorts, Some(&format!("p{k}"))).unwrap();
    }
    if let Some((a, r)) = shape.function {
        ws.declare_function("f", vec![s(&format!("s{a}"))], s(&format!("s{r}")), None).unwrap();
    }
    ws.finalize().unwrap();
    ws
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_is_the_full_sorted_space(shape in shape()) {
        let ws = build(&shape);
        let worlds: Vec<World> = enumerate_worlds(&ws, DEFAULT_WORLD_CAP).unwrap().collect();
        // Every subset of each concept's product space, times every total
        // function graph.
        let mut expected: u64 = 1;
        for sorts in &shape.concepts {
            let cells: u32 = sorts.iter().map(|i| shape.extents[*i] as u32).product();
            expected *= 1 << cells;
        }
        if let Some((a, r)) = shape.function {
            expected *= (shape.extents[r] as u64).pow(shape.extents[a] as u32);
        }
        prop_assert_eq!(worlds.len() as u64, expected);
        let mut seen = BTreeSet::new();
        for (i, w) in worlds.iter().enumerate() {
            prop_assert_eq!(w.id, i);
            prop_assert!(validate_world(&ws, w).is_ok());
            let mut anonymous = w.clone();
            anonymous.id = 0;
            let key = format!("{anonymous:?}");
            prop_assert!(seen.insert(key));
        }
    }

    #[test]
    fn successors_are_the_accessible_assignments(size in 1usize..=3) {
        let shape = Shape { extents: vec![size, 2], concepts: vec![vec![0]], function: None };
        let ws = build(&shape);
        let worlds: Vec<World> = enumerate_worlds(&ws, DEFAULT_WORLD_CAP).unwrap().collect();
        let m = KripkeModel::new(&ws, &worlds);
        let x = Variable::new("x", "s0");
        let y = Variable::new("y", "s1");
        let g: Assignment = [(x.clone(), Element::from("e00")), (y.clone(), Element::from("e11"))].into_iter().collect();
        let succ = m.successors(&x, &g).unwrap();
        prop_assert_eq!(succ.len(), size);
        for h in &succ {
            prop_assert!(m.accessible(&x, &g, h));
            prop_assert_eq!(h.get(&y), g.get(&y));
        }
        let h = g.with(&y, Element::from("e10"));
        prop_assert!(!m.accessible(&x, &g, &h));
        prop_assert!(m.accessible(&y, &g, &h));
    }
}

fn pair_workspace() -> Workspace {
    let mut ws = Workspace::new();
    ws.declare_sort("thing").unwrap();
    ws.declare_extent(&s("thing"), ["a", "b"].map(ExtentMember::parse)).unwrap();
    ws.declare_concept("rel", vec![s("thing"), s("thing")], Some("r")).unwrap();
    ws.declare_concept("mark", vec![s("thing")], Some("m")).unwrap();
    ws.finalize().unwrap();
    ws
}

#[test]
fn union_of_bound_subconcepts_is_the_union_of_rows() {
    let ws = pair_workspace();
    let x = Variable::new("x", "thing");
    let ra = ws.interpret(&Formula::atom("r", vec![Term::constant("a"), Term::Var(x.clone())]));
    let rb = ws.interpret(&Formula::atom("r", vec![Term::constant("b"), Term::Var(x.clone())]));
    let u = union_concept([ra, rb]).unwrap();
    for w in enumerate_worlds(&ws, DEFAULT_WORLD_CAP).unwrap() {
        let mut expected = BTreeSet::new();
        for t in w.relation(&s("rel")) {
            expected.insert(vec![t[1].clone()]);
        }
        assert_eq!(extension(&ws, &w, &u).unwrap(), expected, "world {}", w.id);
    }
}

#[test]
fn conjunction_extension_is_the_intersection() {
    let ws = pair_workspace();
    let x = Variable::new("x", "thing");
    let phi = Formula::and(
        Formula::atom("r", vec![Term::Var(x.clone()), Term::Var(x.clone())]),
        Formula::atom("m", vec![Term::Var(x.clone())]),
    );
    let worlds: Vec<World> = enumerate_worlds(&ws, DEFAULT_WORLD_CAP).unwrap().collect();
    assert_eq!(worlds.len(), 64);
    let intension = montague_intension(&ws, &worlds, &phi).unwrap();
    let concept = ws.interpret(&phi);
    for (w, rows) in worlds.iter().zip(&intension) {
        let expected: BTreeSet<Vec<Element>> = ["a", "b"]
            .iter()
            .map(|e| Element::from(*e))
            .filter(|e| w.holds(&s("rel"), &[e.clone(), e.clone()]) && w.holds(&s("mark"), std::slice::from_ref(e)))
            .map(|e| vec![e])
            .collect();
        assert_eq!(*rows, expected);
        assert_eq!(extension(&ws, w, &concept).unwrap(), expected);
    }
    assert!(bealer_montague_check(&ws, &worlds, &phi).unwrap().is_none());
}
