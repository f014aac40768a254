use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::{assignments, Ranges, SemanticsError, World};
use crate::concepts::abstraction_value;
use crate::kernel::{display_tuple, Element, SortId};
use crate::sorting::{static_sort, PredicateKind};
use crate::syntax::{Assignment, Formula, Term, Variable};
use crate::workspace::Workspace;

/// `g*(t)`: the value of a term in a world.
pub fn eval_term(ws: &Workspace, world: &World, t: &Term, g: &Assignment) -> Result<Element, SemanticsError> {
    match t {
        Term::Var(v) => g
            .get(v)
            .cloned()
            .ok_or_else(|| SemanticsError::UnboundVariable(String::from(&*v.name))),
        Term::Const(c) => Ok(Element::from(&**c)),
        Term::App(f, args) => {
            let values = args
                .iter()
                .map(|a| eval_term(ws, world, a, g))
                .collect::<Result<Vec<_>, _>>()?;
            apply_function(ws, world, f, &values)
        }
        Term::Abs(abs) => Ok(Element::concept(abstraction_value(abs, g, ws)?)),
    }
}

pub(crate) fn apply_function(ws: &Workspace, world: &World, f: &str, args: &[Element]) -> Result<Element, SemanticsError> {
    let decl = ws
        .signature()
        .function(f)
        .ok_or_else(|| SemanticsError::UnknownFunction(f.into()))?;
    match decl.evaluator {
        Some(e) => e.apply(args).ok_or_else(|| SemanticsError::EvaluationFailure {
            symbol: f.into(),
            args: display_tuple(args),
        }),
        None => world
            .function_value(f, args)
            .cloned()
            .ok_or_else(|| SemanticsError::FunctionUndefinedAt {
                function: f.into(),
                args: display_tuple(args),
            }),
    }
}

/// Whether `p` holds of `args`: the decidable evaluator for built-ins, the
/// world's extension of the predicate-concept otherwise.
pub fn atom_holds(ws: &Workspace, world: &World, p: &str, args: &[Element]) -> Result<bool, SemanticsError> {
    let decl = ws
        .signature()
        .predicate(p)
        .ok_or_else(|| SemanticsError::UnknownPredicate(p.into()))?;
    match &decl.kind {
        PredicateKind::Builtin(b) => b.holds(args).ok_or_else(|| SemanticsError::EvaluationFailure {
            symbol: p.into(),
            args: display_tuple(args),
        }),
        PredicateKind::Concept(c) => Ok(world.holds(c, args)),
    }
}

/// The generalized Tarski value of an atom under a partial assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomValue {
    /// The atom is ground once `g` is applied and its hidden variables are
    /// united away.
    Truth(bool),
    /// Tuples of values of the remaining free variables `vars`.
    Relation {
        vars: Vec<Variable>,
        tuples: BTreeSet<Vec<Element>>,
    },
}

fn plain_vars(t: &Term, out: &mut Vec<Variable>) {
    match t {
        Term::Var(v) => {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        Term::App(_, args) => args.iter().for_each(|a| plain_vars(a, out)),
        Term::Const(_) | Term::Abs(_) => {}
    }
}

/// The atom's value with `g` applied. Free variables left unassigned that
/// occur only among abstraction terms' visible variables are hidden: the
/// result is the union, over all their many-sorted values, of the relation
/// over the other unassigned variables.
pub fn eval_atom(ws: &Workspace, world: &World, atom: &Formula, g: &Assignment) -> Result<AtomValue, SemanticsError> {
    let Formula::Atom(p, args) = atom else {
        return Err(SemanticsError::UnknownPredicate(alloc::format!("{atom}")));
    };
    let ranges = Ranges::new(ws);
    let mut plain = Vec::new();
    for a in args {
        plain_vars(a, &mut plain);
    }
    let free: Vec<Variable> = atom.free_vars().into_iter().filter(|v| !g.contains(v)).collect();
    let ybar: Vec<Variable> = free.iter().filter(|v| plain.contains(v)).cloned().collect();
    let hidden: Vec<Variable> = free.iter().filter(|v| !plain.contains(v)).cloned().collect();
    for v in &hidden {
        if let Err(SemanticsError::InfiniteExtent(s)) = ranges.get(&v.sort) {
            return Err(SemanticsError::InfiniteHiddenDomain(s));
        }
    }
    let hidden_values = assignments(&ranges, &hidden)?;
    let visible_values = assignments(&ranges, &ybar)?;
    let mut tuples = BTreeSet::new();
    for h in &hidden_values {
        for y in &visible_values {
            let mut full = g.clone();
            for (v, e) in h.iter().chain(y.iter()) {
                full.set(v.clone(), e.clone());
            }
            let values = args
                .iter()
                .map(|a| eval_term(ws, world, a, &full))
                .collect::<Result<Vec<_>, _>>()?;
            if atom_holds(ws, world, p, &values)? {
                tuples.insert(ybar.iter().map(|v| y.get(v).expect("assigned").clone()).collect::<Vec<_>>());
            }
        }
    }
    if ybar.is_empty() {
        return Ok(AtomValue::Truth(!tuples.is_empty()));
    }
    Ok(AtomValue::Relation { vars: ybar, tuples })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoundnessViolation {
    pub value: Element,
    pub dynamic: SortId,
    pub static_sort: SortId,
}

/// Evaluates `t` and checks that the value's dynamic sort lies below the
/// term's static sort. An abstraction term must denote a concept of arity
/// `|alpha|`.
pub fn dynamic_soundness(
    ws: &Workspace,
    world: &World,
    t: &Term,
    g: &Assignment,
) -> Result<Result<Element, SoundnessViolation>, SemanticsError> {
    let value = eval_term(ws, world, t, g)?;
    let expected = static_sort(ws, t).map_err(|e| SemanticsError::EvaluationFailure {
        symbol: alloc::format!("{t}"),
        args: alloc::format!("{e}"),
    })?;
    let dynamic = ws.kernel().dynamic_sort(&value);
    let ok = match (t, &value) {
        (Term::Abs(abs), Element::Concept(c)) => c.arity() == abs.alpha().len(),
        (Term::Abs(_), _) => false,
        _ => ws.kernel().is_subsort(&dynamic, &expected).unwrap_or(false),
    };
    Ok(if ok {
        Ok(value)
    } else {
        Err(SoundnessViolation {
            value,
            dynamic,
            static_sort: expected,
        })
    })
}
