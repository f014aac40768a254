use ifol_core::syntax::{ground_instance, instantiate, mk_abstracted};
use ifol_core::{Assignment, Element, Formula, Term, Variable};

fn formulas(atoms: &[Formula], vars: &[Variable], depth: usize) -> Vec<Formula> {
    let mut levels = vec![atoms.to_vec()];
    for d in 1..=depth {
        let below: Vec<Formula> = levels.iter().flatten().cloned().collect();
        let mut next = Vec::new();
        for f in &levels[d - 1] {
            next.push(Formula::not(f.clone()));
            for v in vars {
                next.push(Formula::exists(v.clone(), f.clone()));
            }
        }
        for a in &below {
            for b in &below {
                if a.depth() == d - 1 || b.depth() == d - 1 {
                    next.push(Formula::and(a.clone(), b.clone()));
                }
            }
        }
        levels.push(next);
    }
    levels.into_iter().flatten().collect()
}

#[test]
fn substitute_then_ground_is_ground_of_updated_assignment() {
    let x = Variable::new("x", "thing");
    let y = Variable::new("y", "thing");
    let atoms = [
        Formula::atom("p", vec![Term::Var(x.clone())]),
        Formula::atom("q", vec![Term::Var(x.clone()), Term::Var(y.clone())]),
    ];
    let vars = [x.clone(), y.clone()];
    let domain = ["a", "b"];
    let mut gs = Vec::new();
    for gx in domain {
        for gy in domain {
            gs.push(Assignment::from_iter([(x.clone(), Element::from(gx)), (y.clone(), Element::from(gy))]));
        }
    }
    let all = formulas(&atoms, &vars, 3);
    assert_eq!(all.len(), 33672);
    let mut checked = 0;
    for phi in &all {
        for v in &vars {
            for c in domain {
                let substituted = phi.substitute(v, &Term::constant(c)).unwrap();
                for g in &gs {
                    let mut h = g.clone();
                    h.set(v.clone(), Element::from(c));
                    let left = ground_instance(&substituted, g).unwrap();
                    let right = ground_instance(phi, &h).unwrap();
                    assert_eq!(left, right, "{phi} with {}={c}", v.name);
                    assert!(left.is_sentence());
                    checked += 1;
                }
            }
        }
    }
    assert_eq!(checked, 33672 * 2 * 2 * 4);
}

#[test]
fn partial_instantiation_leaves_the_rest_free() {
    let x = Variable::new("x", "thing");
    let y = Variable::new("y", "thing");
    let phi = Formula::and(
        Formula::atom("q", vec![Term::Var(x.clone()), Term::Var(y.clone())]),
        Formula::exists(y.clone(), Formula::atom("p", vec![Term::Var(y.clone())])),
    );
    let g = Assignment::from_iter([(x.clone(), Element::from("a"))]);
    let partial = instantiate(&phi, &g).unwrap();
    assert_eq!(partial.free_vars(), vec![y.clone()]);
    assert!(ground_instance(&phi, &g).is_err());
    let full = Assignment::from_iter([(x, Element::from("a")), (y.clone(), Element::from("b"))]);
    assert_eq!(ground_instance(&partial, &full).unwrap(), ground_instance(&phi, &full).unwrap());
}

#[test]
fn abstraction_round_trip() {
    let x = Variable::new("x", "thing");
    let y = Variable::new("y", "thing");
    let z = Variable::new("z", "thing");
    let body = Formula::and(
        Formula::atom("q", vec![Term::Var(x.clone()), Term::Var(y.clone())]),
        Formula::atom("p", vec![Term::Var(z.clone())]),
    );
    for (alpha, beta) in [
        (vec![x.clone()], vec![y.clone(), z.clone()]),
        (vec![z.clone(), x.clone()], vec![y.clone()]),
        (vec![x.clone(), y.clone(), z.clone()], vec![]),
        (vec![], vec![x.clone(), y.clone(), z.clone()]),
    ] {
        let abs = mk_abstracted(body.clone(), alpha.clone(), beta.clone()).unwrap();
        assert_eq!((abs.body(), abs.alpha(), abs.beta()), (&body, &alpha[..], &beta[..]));
        let atom = Formula::atom("about", vec![Term::Abs(Box::new(abs))]);
        assert_eq!(atom.free_vars(), beta);
    }
    assert!(mk_abstracted(body.clone(), vec![x.clone()], vec![y.clone()]).is_err());
    assert!(mk_abstracted(body, vec![x.clone(), y.clone(), z], vec![x]).is_err());
}
