use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use super::{algebra::extension, assignments, KripkeModel, Ranges, SemanticsError, Tarski, World};
use crate::kernel::{display_tuple, Element};
use crate::syntax::{write_name, Assignment, Formula};
use crate::workspace::Workspace;

/// Whether every axiom holds in `world` under every many-sorted assignment
/// to its free variables.
pub fn is_model(model: &KripkeModel<'_>, world: &World, gamma: &[Formula]) -> Result<bool, SemanticsError> {
    let ranges = Ranges::new(model.workspace());
    for axiom in gamma {
        for g in assignments(&ranges, &axiom.free_vars())? {
            if !model.satisfies(world, &g, axiom)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The first assignment, in enumeration order, under which `phi` fails.
pub fn counterexample_in(
    model: &KripkeModel<'_>,
    world: &World,
    phi: &Formula,
) -> Result<Option<Assignment>, SemanticsError> {
    let ranges = Ranges::new(model.workspace());
    for g in assignments(&ranges, &phi.free_vars())? {
        if !model.satisfies(world, &g, phi)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub world: World,
    pub assignment: Assignment,
}

impl Countermodel {
    /// The world's extensions followed by `ASSIGN x=<lexeme>` lines.
    pub fn render(&self, ws: &Workspace) -> String {
        let mut out = self.world.render(ws);
        for (v, e) in self.assignment.iter() {
            out.push_str("ASSIGN ");
            let _ = write_name(&mut out, &v.name);
            let _ = writeln!(out, "={e}");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// Number of worlds that are models of Γ.
    pub models: usize,
    pub countermodel: Option<Countermodel>,
}

/// Γ ⊨ φ: φ holds at every generalized world whose world is a model of Γ.
/// Open axioms are read universally closed.
pub fn consequence(model: &KripkeModel<'_>, gamma: &[Formula], phi: &Formula) -> Result<Verdict, SemanticsError> {
    let mut models = 0;
    let mut countermodel = None;
    for w in model.worlds() {
        if !is_model(model, w, gamma)? {
            continue;
        }
        models += 1;
        if countermodel.is_none() {
            if let Some(g) = counterexample_in(model, w, phi)? {
                countermodel = Some(Countermodel {
                    world: w.clone(),
                    assignment: g,
                });
            }
        }
    }
    Ok(Verdict {
        holds: countermodel.is_none(),
        models,
        countermodel,
    })
}

/// `I_n(φ)(w)`: the tuples of values of φ's free variables, in order of
/// first appearance, that make φ true in `w`, for every world.
pub fn montague_intension(
    ws: &Workspace,
    worlds: &[World],
    phi: &Formula,
) -> Result<Vec<BTreeSet<Vec<Element>>>, SemanticsError> {
    let tarski = Tarski::new(ws);
    let free = phi.free_vars();
    let gs = assignments(&Ranges::new(ws), &free)?;
    worlds
        .iter()
        .map(|w| {
            let mut out = BTreeSet::new();
            for g in &gs {
                if tarski.eval(w, g, phi)? {
                    out.insert(free.iter().map(|v| g.get(v).expect("assigned").clone()).collect());
                }
            }
            Ok(out)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub world: usize,
    pub extension: BTreeSet<Vec<Element>>,
    pub intension: BTreeSet<Vec<Element>>,
}

impl Mismatch {
    pub fn render(&self) -> String {
        let show = |set: &BTreeSet<Vec<Element>>| {
            let items: Vec<String> = set.iter().map(|t| display_tuple(t)).collect();
            alloc::format!("{{{}}}", items.join(", "))
        };
        alloc::format!(
            "WORLD {}: h(I(phi)) = {} but I_n(phi) = {}",
            self.world,
            show(&self.extension),
            show(&self.intension)
        )
    }
}

/// Checks `h(I(φ)) = I_n(φ)(w)` in every world, returning the first
/// world where they differ.
pub fn bealer_montague_check(ws: &Workspace, worlds: &[World], phi: &Formula) -> Result<Option<Mismatch>, SemanticsError> {
    let concept = ws.interpret(phi);
    let montague = montague_intension(ws, worlds, phi)?;
    for (w, right) in worlds.iter().zip(montague) {
        let left = extension(ws, w, &concept)?;
        if left != right {
            return Ok(Some(Mismatch {
                world: w.id,
                extension: left,
                intension: right,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{ExtentMember, SortId};
    use crate::semantics::{enumerate_worlds, DEFAULT_WORLD_CAP};
    use crate::syntax::{Term, Variable};
    use alloc::vec;

    fn s(n: &str) -> SortId {
        SortId::new(n)
    }

    fn cats() -> Workspace {
        let mut ws = Workspace::new();
        ws.declare_sort("cat").unwrap();
        ws.declare_extent(&s("cat"), [ExtentMember::parse("tom")]).unwrap();
        ws.declare_concept("purrer", vec![s("cat")], Some("purrs")).unwrap();
        ws.finalize().unwrap();
        ws
    }

    #[test]
    fn purring() {
        let ws = cats();
        let worlds: Vec<World> = enumerate_worlds(&ws, DEFAULT_WORLD_CAP).unwrap().collect();
        let m = KripkeModel::new(&ws, &worlds);
        let x = Variable::new("x", "cat");
        let gamma = [Formula::exists(x.clone(), Formula::atom("purrs", vec![Term::Var(x.clone())]))];
        let v = consequence(&m, &gamma, &Formula::atom("purrs", vec![Term::constant("tom")])).unwrap();
        assert!(v.holds);
        assert_eq!(v.models, 1);
        assert_eq!(v.countermodel, None);

        let v = consequence(&m, &[], &Formula::atom("purrs", vec![Term::constant("tom")])).unwrap();
        assert!(!v.holds);
        let cm = v.countermodel.unwrap();
        assert_eq!(cm.render(&ws), "WORLD 0\npurrer = {}\n");
        assert!(consequence(&m, &[], &Formula::top()).unwrap().holds);
    }

    #[test]
    fn open_axioms_are_closed() {
        let ws = cats();
        let worlds: Vec<World> = enumerate_worlds(&ws, DEFAULT_WORLD_CAP).unwrap().collect();
        let m = KripkeModel::new(&ws, &worlds);
        let x = Variable::new("x", "cat");
        let open = Formula::atom("purrs", vec![Term::Var(x.clone())]);
        let v = consequence(&m, std::slice::from_ref(&open), &Formula::atom("purrs", vec![Term::constant("tom")])).unwrap();
        assert!(v.holds);
        let v = consequence(&m, &[], &open).unwrap();
        let cm = v.countermodel.unwrap();
        assert_eq!(cm.render(&ws), "WORLD 0\npurrer = {}\nASSIGN x=tom\n");
    }

    #[test]
    fn bealer_montague_on_atoms() {
        let ws = cats();
        let worlds: Vec<World> = enumerate_worlds(&ws, DEFAULT_WORLD_CAP).unwrap().collect();
        let x = Variable::new("x", "cat");
        for phi in [
            Formula::top(),
            Formula::atom("purrs", vec![Term::Var(x.clone())]),
            Formula::not(Formula::exists(x.clone(), Formula::atom("purrs", vec![Term::Var(x.clone())]))),
        ] {
            assert_eq!(bealer_montague_check(&ws, &worlds, &phi).unwrap(), None, "{phi}");
        }
        let montague = montague_intension(&ws, &worlds, &Formula::top()).unwrap();
        assert!(montague.iter().all(|m| m.len() == 1));
    }
}
