//! Static sorts of terms and well-sortedness of formulas.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::builtins::{BuiltinFunction, BuiltinPredicate};
use crate::kernel::{Element, SortId};
use crate::syntax::{Formula, Term, Variable, TOP_PREDICATE};
use crate::workspace::Workspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PredicateKind {
    /// Interpreted through the world's extension of this concept.
    Concept(SortId),
    Builtin(BuiltinPredicate),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateDecl {
    pub name: Arc<str>,
    pub sorts: Vec<SortId>,
    pub kind: PredicateKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionDecl {
    pub name: Arc<str>,
    pub args: Vec<SortId>,
    pub ret: SortId,
    /// Computed functions are fixed in every world; the rest get a graph
    /// per world.
    pub evaluator: Option<BuiltinFunction>,
}

/// Predicate and function symbols with their sorts. Constants are not
/// listed: their static sort is the dynamic sort of the element they name.
#[derive(Clone, Debug)]
pub struct Signature {
    predicates: BTreeMap<Arc<str>, PredicateDecl>,
    predicate_order: Vec<Arc<str>>,
    functions: BTreeMap<Arc<str>, FunctionDecl>,
    function_order: Vec<Arc<str>>,
}

impl Default for Signature {
    fn default() -> Self {
        Self::new()
    }
}

impl Signature {
    pub fn new() -> Self {
        let mut sig = Signature {
            predicates: BTreeMap::new(),
            predicate_order: Vec::new(),
            functions: BTreeMap::new(),
            function_order: Vec::new(),
        };
        sig.insert_predicate(PredicateDecl {
            name: Arc::from(TOP_PREDICATE),
            sorts: Vec::new(),
            kind: PredicateKind::Builtin(BuiltinPredicate::True),
        });
        sig
    }

    pub fn has_symbol(&self, name: &str) -> bool {
        self.predicates.contains_key(name) || self.functions.contains_key(name)
    }

    pub(crate) fn insert_predicate(&mut self, decl: PredicateDecl) {
        self.predicate_order.push(decl.name.clone());
        self.predicates.insert(decl.name.clone(), decl);
    }

    pub(crate) fn insert_function(&mut self, decl: FunctionDecl) {
        self.function_order.push(decl.name.clone());
        self.functions.insert(decl.name.clone(), decl);
    }

    pub(crate) fn predicate_mut(&mut self, name: &str) -> Option<&mut PredicateDecl> {
        self.predicates.get_mut(name)
    }

    pub fn predicate(&self, name: &str) -> Option<&PredicateDecl> {
        self.predicates.get(name)
    }

    pub fn function(&self, name: &str) -> Option<&FunctionDecl> {
        self.functions.get(name)
    }

    /// Predicates in declaration order, `true` first.
    pub fn predicates(&self) -> impl Iterator<Item = &PredicateDecl> {
        self.predicate_order.iter().map(|n| &self.predicates[n])
    }

    pub fn functions(&self) -> impl Iterator<Item = &FunctionDecl> {
        self.function_order.iter().map(|n| &self.functions[n])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SortError {
    #[error("arg{position}: found {found} required {required}")]
    Mismatch { position: usize, found: SortId, required: SortId },
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("unknown sort `{0}`")]
    UnknownSort(SortId),
    #[error("`{symbol}` takes {expected} arguments, got {found}")]
    ArityMismatch { symbol: String, expected: usize, found: usize },
    #[error("variable `{0}` cannot have sort `nested sentence`")]
    NestedSentenceVariable(String),
    #[error("formula has no free variables")]
    ClosedFormula,
}

impl SortError {
    /// `SORT-ERR <id> ...`, one line.
    pub fn render(&self, formula_id: &str) -> String {
        format!("SORT-ERR {formula_id} {self}")
    }
}

fn subsort(ws: &Workspace, a: &SortId, b: &SortId) -> bool {
    ws.kernel().is_subsort(a, b).unwrap_or(false)
}

/// Ϝ of a constant: the dynamic sort of the element it names.
pub fn constant_sort(ws: &Workspace, c: &str) -> Result<SortId, SortError> {
    match Element::from(c) {
        Element::Particular(_) => ws
            .kernel()
            .particular_sort(c)
            .cloned()
            .ok_or_else(|| SortError::UnknownConstant(c.into())),
        e => Ok(ws.kernel().dynamic_sort(&e)),
    }
}

/// Ϝ(t).
pub fn static_sort(ws: &Workspace, t: &Term) -> Result<SortId, SortError> {
    match t {
        Term::Var(v) => Ok(v.sort.clone()),
        Term::Const(c) => constant_sort(ws, c),
        Term::App(f, _) => ws
            .signature()
            .function(f)
            .map(|d| d.ret.clone())
            .ok_or_else(|| SortError::UnknownFunction(String::from(&**f))),
        Term::Abs(_) => Ok(SortId::nested_sentence()),
    }
}

/// Ϝ(x1) × ... × Ϝ(xk) over the free variables of `phi`.
pub fn virtual_predicate_sort(phi: &Formula) -> Result<Vec<SortId>, SortError> {
    let free = phi.free_vars();
    if free.is_empty() {
        return Err(SortError::ClosedFormula);
    }
    Ok(free.into_iter().map(|v| v.sort).collect())
}

fn check_variable(ws: &Workspace, v: &Variable, errors: &mut Vec<SortError>) {
    if v.sort.is_nested_sentence() {
        errors.push(SortError::NestedSentenceVariable(String::from(&*v.name)));
    } else if !ws.kernel().is_declared(&v.sort) {
        errors.push(SortError::UnknownSort(v.sort.clone()));
    }
}

fn term_into(ws: &Workspace, t: &Term, required: &SortId, position: usize, errors: &mut Vec<SortError>) {
    if let Term::Abs(abs) = t {
        for v in abs.alpha().iter().chain(abs.beta()) {
            check_variable(ws, v, errors);
        }
        formula_into(ws, abs.body(), errors);
        if !required.is_nested_sentence() {
            errors.push(SortError::Mismatch {
                position,
                found: SortId::nested_sentence(),
                required: required.clone(),
            });
        }
        return;
    }
    match t {
        Term::Var(v) => check_variable(ws, v, errors),
        Term::App(f, args) => match ws.signature().function(f) {
            None => {
                errors.push(SortError::UnknownFunction(String::from(&**f)));
                return;
            }
            Some(decl) if decl.args.len() != args.len() => {
                errors.push(SortError::ArityMismatch {
                    symbol: String::from(&**f),
                    expected: decl.args.len(),
                    found: args.len(),
                });
                return;
            }
            Some(decl) => {
                for (i, (a, s)) in args.iter().zip(&decl.args).enumerate() {
                    term_into(ws, a, s, i + 1, errors);
                }
            }
        },
        _ => {}
    }
    let found = match static_sort(ws, t) {
        Ok(s) => s,
        Err(e) => {
            errors.push(e);
            return;
        }
    };
    if !ws.kernel().is_declared(&found) || !ws.kernel().is_declared(required) && !required.is_nested_sentence() {
        return;
    }
    if required.is_nested_sentence() || !subsort(ws, &found, required) {
        errors.push(SortError::Mismatch {
            position,
            found,
            required: required.clone(),
        });
    }
}

/// Whether `t` belongs to T_expected under the subsort rule.
pub fn check_term(ws: &Workspace, t: &Term, expected: &SortId) -> Result<(), Vec<SortError>> {
    let mut errors = Vec::new();
    term_into(ws, t, expected, 1, &mut errors);
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

fn formula_into(ws: &Workspace, phi: &Formula, errors: &mut Vec<SortError>) {
    match phi {
        Formula::Atom(p, args) => match ws.signature().predicate(p) {
            None => errors.push(SortError::UnknownPredicate(String::from(&**p))),
            Some(decl) if decl.sorts.len() != args.len() => errors.push(SortError::ArityMismatch {
                symbol: String::from(&**p),
                expected: decl.sorts.len(),
                found: args.len(),
            }),
            Some(decl) => {
                for (i, (a, s)) in args.iter().zip(&decl.sorts).enumerate() {
                    term_into(ws, a, s, i + 1, errors);
                }
            }
        },
        Formula::Not(g) => formula_into(ws, g, errors),
        Formula::And(a, b) => {
            formula_into(ws, a, errors);
            formula_into(ws, b, errors);
        }
        Formula::Exists(v, g) => {
            check_variable(ws, v, errors);
            formula_into(ws, g, errors);
        }
    }
}

/// Checks every atom argument against the predicate's sorts, collecting
/// all errors.
pub fn check_formula(ws: &Workspace, phi: &Formula) -> Result<(), Vec<SortError>> {
    let mut errors = Vec::new();
    formula_into(ws, phi, &mut errors);
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::boxed::Box;
    use alloc::vec;
    use crate::kernel::ExtentMember;
    use crate::syntax::mk_abstracted;

    fn s(n: &str) -> SortId {
        SortId::new(n)
    }

    fn arithmetic() -> Workspace {
        let mut ws = Workspace::new();
        for n in ["integers", "rationals"] {
            ws.declare_sort(n).unwrap();
        }
        ws.declare_isa(&s("integers"), &s("rationals")).unwrap();
        ws.declare_function("div", vec![s("rationals"), s("rationals")], s("rationals"), Some(BuiltinFunction::Div))
            .unwrap();
        ws.declare_concept("integer property", vec![s("integers")], Some("p")).unwrap();
        ws.finalize().unwrap();
        ws
    }

    fn div22() -> Term {
        Term::app("div", vec![Term::constant("2"), Term::constant("2")])
    }

    #[test]
    fn div_example() {
        let ws = arithmetic();
        assert_eq!(static_sort(&ws, &Term::constant("2")), Ok(s("integers")));
        assert_eq!(static_sort(&ws, &Term::constant("0.5")), Ok(s("rationals")));
        assert_eq!(static_sort(&ws, &div22()), Ok(s("rationals")));
        assert_eq!(check_term(&ws, &div22(), &s("rationals")), Ok(()));
        // ℚ is not below ℤ in the declared lattice.
        assert_eq!(
            check_term(&ws, &div22(), &s("integers")),
            Err(vec![SortError::Mismatch {
                position: 1,
                found: s("rationals"),
                required: s("integers")
            }])
        );
        let errs = check_formula(&ws, &Formula::atom("p", vec![div22()])).unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].render("q1"), "SORT-ERR q1 arg1: found rationals required integers");
    }

    #[test]
    fn errors_accumulate() {
        let ws = arithmetic();
        let phi = Formula::and(
            Formula::atom("p", vec![Term::constant("0.5")]),
            Formula::and(
                Formula::atom("q", vec![]),
                Formula::atom("p", vec![Term::app("div", vec![Term::constant("tom"), Term::constant("1")])]),
            ),
        );
        let errs = check_formula(&ws, &phi).unwrap_err();
        assert_eq!(errs.len(), 4, "{errs:?}");
        assert!(errs.contains(&SortError::UnknownPredicate("q".into())));
        assert!(errs.contains(&SortError::UnknownConstant("tom".into())));
    }

    #[test]
    fn nested_sentence_positions() {
        let mut ws = Workspace::new();
        ws.declare_sort("person").unwrap();
        ws.declare_sort("verb form").unwrap();
        ws.declare_concept(
            "to know",
            vec![s("verb form"), s("person"), SortId::nested_sentence()],
            Some("knows"),
        )
        .unwrap();
        ws.declare_concept("hero", vec![s("person")], Some("hero")).unwrap();
        ws.declare_particular("Zoran Majkic", &s("person")).unwrap();
        ws.finalize().unwrap();
        let x = Variable::new("x", "person");
        let inner = mk_abstracted(Formula::atom("hero", vec![Term::Var(x.clone())]), vec![x.clone()], vec![]).unwrap();
        let ok = Formula::atom(
            "knows",
            vec![Term::constant("present"), Term::constant("Zoran Majkic"), Term::Abs(Box::new(inner.clone()))],
        );
        assert_eq!(check_formula(&ws, &ok), Ok(()));
        let wrong = Formula::atom(
            "knows",
            vec![Term::constant("present"), Term::Abs(Box::new(inner)), Term::constant("Zoran Majkic")],
        );
        let errs = check_formula(&ws, &wrong).unwrap_err();
        assert_eq!(
            errs,
            vec![
                SortError::Mismatch {
                    position: 2,
                    found: SortId::nested_sentence(),
                    required: s("person")
                },
                SortError::Mismatch {
                    position: 3,
                    found: s("person"),
                    required: SortId::nested_sentence()
                },
            ]
        );
        assert_eq!(check_formula(&ws, &Formula::top()), Ok(()));
    }

    #[test]
    fn virtual_sorts() {
        let x = Variable::new("x", "integers");
        let y = Variable::new("y", "rationals");
        let p = Formula::atom("p", vec![Term::Var(x.clone()), Term::Var(y.clone())]);
        assert_eq!(virtual_predicate_sort(&p), Ok(vec![s("integers"), s("rationals")]));
        let q = Formula::exists(y, p.clone());
        assert_eq!(virtual_predicate_sort(&q), Ok(vec![s("integers")]));
        assert_eq!(virtual_predicate_sort(&Formula::top()), Err(SortError::ClosedFormula));
    }

    #[test]
    fn subsort_weakening() {
        let mut ws = Workspace::new();
        for n in ["cat", "animal", "thing"] {
            ws.declare_sort(n).unwrap();
        }
        ws.declare_isa(&s("cat"), &s("animal")).unwrap();
        ws.declare_isa(&s("animal"), &s("thing")).unwrap();
        ws.declare_extent(&s("cat"), [ExtentMember::parse("tom")]).unwrap();
        ws.finalize().unwrap();
        let terms = [Term::var("x", "cat"), Term::constant("tom"), Term::var("y", "animal")];
        let sorts = ["cat", "animal", "thing", "everything"];
        for t in &terms {
            for (i, a) in sorts.iter().enumerate() {
                if check_term(&ws, t, &s(a)).is_ok() {
                    for b in &sorts[i..] {
                        assert!(check_term(&ws, t, &s(b)).is_ok(), "{t} {a} {b}");
                    }
                }
            }
        }
        assert!(check_term(&ws, &Term::var("y", "animal"), &s("cat")).is_err());
    }
}
