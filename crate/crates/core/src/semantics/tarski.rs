use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Ranges, SemanticsError, World};
use crate::builtins::BuiltinPredicate;
use crate::concepts::interpret_with;
use crate::kernel::{display_tuple, Element, SortId};
use crate::sorting::PredicateKind;
use crate::syntax::{ground_instance, Assignment, Formula, Term};
use crate::workspace::Workspace;

/// The inductive Tarski truth definition on ground formulas: `φ/g` is
/// built first, and `∃x ψ` holds when some `ψ[x/c]` does for a constant `c`
/// naming a value of `x`'s sort. It shares no code with
/// [`KripkeModel`](super::KripkeModel) beyond the world data.
pub struct Tarski<'a> {
    ws: &'a Workspace,
    ranges: Ranges,
    names: BTreeMap<SortId, Vec<Term>>,
}

impl<'a> Tarski<'a> {
    pub fn new(ws: &'a Workspace) -> Self {
        let ranges = Ranges::new(ws);
        let names = ws
            .kernel()
            .lattice()
            .nodes()
            .filter_map(|s| {
                let values = ranges.get(s).ok()?;
                let terms = values.iter().map(Term::from_element).collect::<Result<Vec<_>, _>>().ok()?;
                Some((s.clone(), terms))
            })
            .collect();
        Tarski { ws, ranges, names }
    }

    /// Whether `I_T*(φ/g) = t` in `world`.
    pub fn eval(&self, world: &World, g: &Assignment, phi: &Formula) -> Result<bool, SemanticsError> {
        let ground = ground_instance(phi, g)?;
        self.eval_ground(world, &ground)
    }

    /// Truth of a formula already ground by `φ/g`.
    pub fn eval_ground(&self, world: &World, ground: &Formula) -> Result<bool, SemanticsError> {
        self.truth(world, ground)
    }

    fn truth(&self, world: &World, phi: &Formula) -> Result<bool, SemanticsError> {
        match phi {
            Formula::Atom(p, args) => {
                let mut values = Vec::with_capacity(args.len());
                for a in args {
                    values.push(self.value(world, a)?);
                }
                let decl = self
                    .ws
                    .signature()
                    .predicate(p)
                    .ok_or_else(|| SemanticsError::UnknownPredicate(String::from(&**p)))?;
                match &decl.kind {
                    PredicateKind::Concept(c) => Ok(world.relation(c).contains(&values)),
                    PredicateKind::Builtin(BuiltinPredicate::True) => Ok(true),
                    PredicateKind::Builtin(b) => b.holds(&values).ok_or_else(|| SemanticsError::EvaluationFailure {
                        symbol: String::from(&**p),
                        args: display_tuple(&values),
                    }),
                }
            }
            Formula::Not(f) => self.truth(world, f).map(|b| !b),
            Formula::And(a, b) => {
                if !self.truth(world, a)? {
                    return Ok(false);
                }
                self.truth(world, b)
            }
            Formula::Exists(x, f) => {
                let names = match self.names.get(&x.sort) {
                    Some(n) => n,
                    None => {
                        // Surfaces the range or naming error.
                        for u in self.ranges.get(&x.sort)? {
                            Term::from_element(u)?;
                        }
                        return Ok(false);
                    }
                };
                for c in names {
                    let instance = f.substitute(x, c)?;
                    if self.truth(world, &instance)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    /// Value of a ground term.
    fn value(&self, world: &World, t: &Term) -> Result<Element, SemanticsError> {
        match t {
            Term::Const(c) => Ok(Element::from(&**c)),
            Term::Var(v) => Err(SemanticsError::UnboundVariable(String::from(&*v.name))),
            Term::App(f, args) => {
                let mut values = Vec::with_capacity(args.len());
                for a in args {
                    values.push(self.value(world, a)?);
                }
                let decl = self
                    .ws
                    .signature()
                    .function(f)
                    .ok_or_else(|| SemanticsError::UnknownFunction(String::from(&**f)))?;
                let result = match decl.evaluator {
                    Some(e) => e.apply(&values),
                    None => world.function_value(f, &values).cloned(),
                };
                result.ok_or_else(|| SemanticsError::FunctionUndefinedAt {
                    function: String::from(&**f),
                    args: display_tuple(&values),
                })
            }
            Term::Abs(abs) => {
                if let Some(v) = abs.beta().first() {
                    return Err(SemanticsError::UnboundVariable(String::from(&*v.name)));
                }
                Ok(Element::concept(interpret_with(abs.body(), abs.alpha(), self.ws)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{ExtentMember, SortId};
    use alloc::vec;

    #[test]
    fn negated_atom() {
        let mut ws = Workspace::new();
        ws.declare_sort("thing").unwrap();
        ws.declare_extent(&SortId::new("thing"), [ExtentMember::parse("a")]).unwrap();
        ws.declare_concept("p-concept", vec![SortId::new("thing")], Some("p")).unwrap();
        ws.finalize().unwrap();
        let mut w = World::new(0);
        w.set_relation(SortId::new("p-concept"), [vec![Element::from("a")]]);
        let t = Tarski::new(&ws);
        let phi = Formula::not(Formula::atom("p", vec![Term::constant("a")]));
        assert!(!t.eval(&w, &Assignment::new(), &phi).unwrap());
        assert!(t.eval(&w, &Assignment::new(), &Formula::top()).unwrap());
        let x = crate::syntax::Variable::new("x", "thing");
        let open = Formula::atom("p", vec![Term::Var(x.clone())]);
        assert!(matches!(
            t.eval(&w, &Assignment::new(), &open),
            Err(SemanticsError::Syntax(_))
        ));
        let g: Assignment = [(x, Element::from("a"))].into_iter().collect();
        assert!(t.eval(&w, &g, &open).unwrap());
    }
}
