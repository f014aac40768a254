use alloc::vec::Vec;

use super::eval::{atom_holds, eval_term};
use super::{Ranges, SemanticsError, World};
use crate::syntax::{Assignment, Formula, Variable};
use crate::workspace::Workspace;

/// A Kripke model over explicit worlds. Generalized worlds are pairs of a
/// world and a many-sorted assignment; `◇_x` moves along `R_x`, which
/// relates assignments agreeing everywhere except at `x`.
pub struct KripkeModel<'a> {
    ws: &'a Workspace,
    worlds: &'a [World],
    ranges: Ranges,
}

impl<'a> KripkeModel<'a> {
    pub fn new(ws: &'a Workspace, worlds: &'a [World]) -> Self {
        KripkeModel {
            ws,
            worlds,
            ranges: Ranges::new(ws),
        }
    }

    pub fn worlds(&self) -> &'a [World] {
        self.worlds
    }

    pub fn workspace(&self) -> &'a Workspace {
        self.ws
    }

    /// `(g1, g2) ∈ R_x`.
    pub fn accessible(&self, x: &Variable, g1: &Assignment, g2: &Assignment) -> bool {
        g1.agrees_off(g2, x)
    }

    /// The `R_x`-successors of `g`: `g` updated at `x` with every value of
    /// `x`'s sort.
    pub fn successors(&self, x: &Variable, g: &Assignment) -> Result<Vec<Assignment>, SemanticsError> {
        Ok(self.ranges.get(&x.sort)?.iter().map(|u| g.with(x, u.clone())).collect())
    }

    pub fn satisfies(&self, world: &World, g: &Assignment, phi: &Formula) -> Result<bool, SemanticsError> {
        self.sat(world, &mut g.clone(), phi)
    }

    /// `g` is moved along `R_x` in place and restored on the way out.
    fn sat(&self, world: &World, g: &mut Assignment, phi: &Formula) -> Result<bool, SemanticsError> {
        match phi {
            Formula::Atom(p, args) => {
                let values = args
                    .iter()
                    .map(|a| eval_term(self.ws, world, a, g))
                    .collect::<Result<Vec<_>, _>>()?;
                atom_holds(self.ws, world, p, &values)
            }
            Formula::Not(f) => Ok(!self.sat(world, g, f)?),
            Formula::And(a, b) => Ok(self.sat(world, g, a)? && self.sat(world, g, b)?),
            Formula::Exists(x, f) => {
                let saved = g.remove(x);
                let mut found = Ok(false);
                for u in self.ranges.get(&x.sort)? {
                    g.set(x.clone(), u.clone());
                    match self.sat(world, g, f) {
                        Ok(false) => {}
                        other => {
                            found = other;
                            break;
                        }
                    }
                }
                match saved {
                    Some(e) => g.set(x.clone(), e),
                    None => {
                        g.remove(x);
                    }
                }
                found
            }
        }
    }

    /// A many-sorted `g'` with `(g, g') ∈ R_x` satisfying `phi`, if any.
    pub fn witness(
        &self,
        world: &World,
        g: &Assignment,
        x: &Variable,
        phi: &Formula,
    ) -> Result<Option<Assignment>, SemanticsError> {
        for h in self.successors(x, g)? {
            if self.satisfies(world, &h, phi)? {
                return Ok(Some(h));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{Element, ExtentMember, SortId};
    use crate::semantics::{enumerate_worlds, DEFAULT_WORLD_CAP};
    use crate::syntax::Term;
    use alloc::vec;

    fn s(n: &str) -> SortId {
        SortId::new(n)
    }

    fn pets() -> Workspace {
        let mut ws = Workspace::new();
        for n in ["cat", "dog", "animal"] {
            ws.declare_sort(n).unwrap();
        }
        ws.declare_isa(&s("cat"), &s("animal")).unwrap();
        ws.declare_isa(&s("dog"), &s("animal")).unwrap();
        ws.declare_extent(&s("cat"), [ExtentMember::parse("tom")]).unwrap();
        ws.declare_extent(&s("dog"), [ExtentMember::parse("rex")]).unwrap();
        ws.declare_concept("purrer", vec![s("animal")], Some("purrs")).unwrap();
        ws.finalize().unwrap();
        ws
    }

    #[test]
    fn sorted_witnesses() {
        let ws = pets();
        let x = Variable::new("x", "cat");
        let phi = Formula::exists(x.clone(), Formula::atom("purrs", vec![Term::Var(x.clone())]));
        let mut only_dog = World::new(0);
        only_dog.set_relation(s("purrer"), [vec![Element::from("rex")]]);
        let mut only_cat = World::new(1);
        only_cat.set_relation(s("purrer"), [vec![Element::from("tom")]]);
        let worlds = [only_dog, only_cat];
        let m = KripkeModel::new(&ws, &worlds);
        let g = Assignment::new();
        assert!(!m.satisfies(&worlds[0], &g, &phi).unwrap());
        assert!(m.satisfies(&worlds[1], &g, &phi).unwrap());
        let body = Formula::atom("purrs", vec![Term::Var(x.clone())]);
        let w = m.witness(&worlds[1], &g, &x, &body).unwrap().unwrap();
        assert_eq!(w.get(&x), Some(&Element::from("tom")));
        assert_eq!(ws.kernel().dynamic_sort(w.get(&x).unwrap()), s("cat"));
    }

    #[test]
    fn accessibility_is_an_equivalence() {
        let ws = pets();
        let worlds: Vec<World> = enumerate_worlds(&ws, DEFAULT_WORLD_CAP).unwrap().collect();
        let m = KripkeModel::new(&ws, &worlds);
        let x = Variable::new("x", "animal");
        let y = Variable::new("y", "animal");
        let all = crate::semantics::assignments(&Ranges::new(&ws), &[x.clone(), y.clone()]).unwrap();
        for a in &all {
            assert!(m.accessible(&x, a, a));
            for b in &all {
                assert_eq!(m.accessible(&x, a, b), m.accessible(&x, b, a));
                for c in &all {
                    if m.accessible(&x, a, b) && m.accessible(&x, b, c) {
                        assert!(m.accessible(&x, a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn top_everywhere() {
        let ws = pets();
        let worlds: Vec<World> = enumerate_worlds(&ws, DEFAULT_WORLD_CAP).unwrap().collect();
        assert_eq!(worlds.len(), 4);
        let m = KripkeModel::new(&ws, &worlds);
        for w in &worlds {
            assert!(m.satisfies(w, &Assignment::new(), &Formula::top()).unwrap());
        }
    }
}
