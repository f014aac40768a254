use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use ifol_core::concepts::{canonical_subconcept, subconcept_tree};
use ifol_core::kernel::ExtentMember;
use ifol_core::{Element, Formula, Intension, SortId, Term, Variable, Workspace};

fn relation(extents: &[usize]) -> Workspace {
    let mut ws = Workspace::new();
    let mut sorts = Vec::new();
    for (i, size) in extents.iter().enumerate() {
        let name = format!("s{i}");
        ws.declare_sort(&name).unwrap();
        let members: Vec<String> = (0..*size).map(|j| format!("v{i}{j}")).collect();
        ws.declare_extent(&SortId::new(&name), members.iter().map(|m| ExtentMember::parse(m))).unwrap();
        sorts.push(SortId::new(&name));
    }
    ws.declare_concept("rel", sorts, Some("r")).unwrap();
    ws.finalize().unwrap();
    ws
}

/// Every partial assignment leaving some attribute free, the empty one
/// included, as (position, value) maps.
fn partials(extents: &[usize]) -> Vec<BTreeMap<usize, Element>> {
    let mut out = vec![BTreeMap::new()];
    for (i, size) in extents.iter().enumerate() {
        let mut next = Vec::new();
        for p in &out {
            next.push(p.clone());
            for j in 0..*size {
                let mut q = p.clone();
                q.insert(i, Element::from(format!("v{i}{j}").as_str()));
                next.push(q);
            }
        }
        out = next;
    }
    out.retain(|p| p.len() < extents.len());
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tree_holds_each_partial_assignment(extents in proptest::collection::vec(1usize..=3, 1..=3)) {
        let ws = relation(&extents);
        let tree = subconcept_tree(&ws, "r").unwrap();
        let expected = partials(&extents);
        let product_plus: usize = extents.iter().map(|e| e + 1).product();
        let full: usize = extents.iter().product();
        prop_assert_eq!(expected.len(), product_plus - full);
        prop_assert_eq!(tree.distinct().len(), expected.len());

        let names: BTreeSet<String> = tree.walk().iter().map(|(_, c)| c.name()).collect();
        prop_assert_eq!(names.len(), expected.len());
        // Unfolded, a node fixing b attributes is reached along b! paths.
        let unfolded: usize = expected.iter().map(|p| (1..=p.len()).product::<usize>()).sum();
        prop_assert_eq!(tree.len(), unfolded);
        let root = ws.interpret(&Formula::atom(
            "r",
            (0..extents.len()).map(|i| Term::Var(Variable::new(&format!("x{i}"), format!("s{i}").as_str()))).collect(),
        ));
        for p in expected.iter().filter(|p| !p.is_empty()) {
            let c = canonical_subconcept(&ws, "r", p).unwrap();
            prop_assert!(names.contains(&c.name()));
            // Every subconcept refines the predicate-concept.
            let Intension::Predicate(root_concept) = &root else { panic!("root is {root}") };
            prop_assert_eq!(&c.root, root_concept);
            let mut coarser = p.clone();
            coarser.pop_first();
            if !coarser.is_empty() {
                prop_assert!(c.refines(&canonical_subconcept(&ws, "r", &coarser).unwrap()));
            }
        }
        // Leaves are exactly the unary subconcepts.
        fn leaves(t: &ifol_core::concepts::ConceptTree, out: &mut Vec<usize>) {
            if t.children.is_empty() {
                out.push(t.concept.arity());
            }
            t.children.iter().for_each(|c| leaves(c, out));
        }
        let mut arities = Vec::new();
        leaves(&tree, &mut arities);
        prop_assert!(arities.iter().all(|a| *a == 1));
    }
}

#[test]
fn binding_order_does_not_matter() {
    let ws = relation(&[2, 2, 2]);
    let a = Element::from("v00");
    let c = Element::from("v21");
    let first: BTreeMap<usize, Element> = [(0, a.clone()), (2, c.clone())].into_iter().collect();
    let second: BTreeMap<usize, Element> = [(2, c), (0, a)].into_iter().collect();
    assert_eq!(
        canonical_subconcept(&ws, "r", &first).unwrap(),
        canonical_subconcept(&ws, "r", &second).unwrap()
    );
    let y = Variable::new("y", "s1");
    let atom = Formula::atom("r", vec![Term::constant("v00"), Term::Var(y.clone()), Term::constant("v21")]);
    let once = ws.interpret(&atom);
    assert_eq!(once, ws.interpret(&atom));
    assert_eq!(once.name(), "rel v00 v21");
}
