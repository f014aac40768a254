//! Sorted IFOL terms and formulas.
//!
//! Only `¬`, `∧` and `∃` are primitive; the other connectives are built from
//! them by the constructors at the bottom of [`Formula`].

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use crate::kernel::{Element, SortId};

/// Name of the reserved 0-ary predicate denoting ⊤.
pub const TOP_PREDICATE: &str = "true";

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    pub name: Arc<str>,
    pub sort: SortId,
}

impl Variable {
    pub fn new(name: &str, sort: impl Into<SortId>) -> Self {
        Variable {
            name: Arc::from(name),
            sort: sort.into(),
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_name(f, &self.name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Variable),
    /// A constant written with the lexeme of the element it denotes.
    Const(Arc<str>),
    App(Arc<str>, Vec<Term>),
    Abs(Box<Abstraction>),
}

/// `⋖body⋗_α^β`. Build with [`mk_abstracted`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Abstraction {
    body: Formula,
    alpha: Vec<Variable>,
    beta: Vec<Variable>,
}

impl Abstraction {
    pub fn body(&self) -> &Formula {
        &self.body
    }

    /// Hidden variables, in order of first appearance in the body.
    pub fn alpha(&self) -> &[Variable] {
        &self.alpha
    }

    /// Visible variables, in order of first appearance in the body.
    pub fn beta(&self) -> &[Variable] {
        &self.beta
    }

    pub fn into_parts(self) -> (Formula, Vec<Variable>, Vec<Variable>) {
        (self.body, self.alpha, self.beta)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Arc<str>, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Exists(Variable, Box<Formula>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxError {
    #[error("substituting for `{var}` would capture `{captured}`")]
    VariableCapture { var: String, captured: String },
    #[error("variable `{0}` has no value")]
    UnboundVariable(String),
    #[error("`{0}` is listed in both alpha and beta")]
    AlphaBetaOverlap(String),
    #[error("`{0}` is listed twice")]
    RepeatedVariable(String),
    #[error("free variable `{0}` is in neither alpha nor beta")]
    UncoveredFreeVariable(String),
    #[error("`{0}` is listed in alpha or beta but is not free in the body")]
    NotFreeInBody(String),
    #[error("an open formula cannot be abstracted with empty alpha and beta")]
    EmptyAlphaWithFreeVars,
    #[error("`{0}` has no constant naming it")]
    Unnameable(String),
}

impl Term {
    pub fn var(name: &str, sort: &str) -> Self {
        Term::Var(Variable::new(name, sort))
    }

    pub fn constant(lexeme: &str) -> Self {
        Term::Const(Arc::from(lexeme))
    }

    pub fn app(f: &str, args: Vec<Term>) -> Self {
        Term::App(Arc::from(f), args)
    }

    /// The constant denoting `e`, if `e` is nameable.
    pub fn from_element(e: &Element) -> Result<Self, SyntaxError> {
        if e.is_nameable() {
            Ok(Term::Const(Arc::from(e.lexeme().as_str())))
        } else {
            Err(SyntaxError::Unnameable(e.lexeme()))
        }
    }

    fn collect_free(&self, bound: &mut Vec<Variable>, out: &mut Vec<Variable>) {
        match self {
            Term::Var(v) => {
                if !bound.contains(v) && !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Const(_) => {}
            Term::App(_, args) => {
                for a in args {
                    a.collect_free(bound, out);
                }
            }
            Term::Abs(abs) => {
                for v in &abs.beta {
                    if !bound.contains(v) && !out.contains(v) {
                        out.push(v.clone());
                    }
                }
            }
        }
    }

    pub fn free_vars(&self) -> Vec<Variable> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn is_ground(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Replaces free variables by terms, refusing to capture.
    pub fn substitute_all(&self, map: &BTreeMap<Variable, Term>) -> Result<Term, SyntaxError> {
        Ok(match self {
            Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Const(_) => self.clone(),
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter()
                    .map(|a| a.substitute_all(map))
                    .collect::<Result<_, _>>()?,
            ),
            Term::Abs(abs) => {
                let relevant: BTreeMap<Variable, Term> = map
                    .iter()
                    .filter(|(v, _)| abs.beta.contains(v))
                    .map(|(v, t)| (v.clone(), t.clone()))
                    .collect();
                if relevant.is_empty() {
                    return Ok(self.clone());
                }
                for (v, t) in &relevant {
                    for w in t.free_vars() {
                        if abs.alpha.contains(&w) {
                            return Err(SyntaxError::VariableCapture {
                                var: String::from(&*v.name),
                                captured: String::from(&*w.name),
                            });
                        }
                    }
                }
                let body = abs.body.substitute_all(&relevant)?;
                let mut beta: Vec<Variable> = abs
                    .beta
                    .iter()
                    .filter(|v| !relevant.contains_key(v))
                    .cloned()
                    .collect();
                for t in relevant.values() {
                    for w in t.free_vars() {
                        if !beta.contains(&w) {
                            beta.push(w);
                        }
                    }
                }
                Term::Abs(Box::new(mk_abstracted(body, abs.alpha.clone(), beta)?))
            }
        })
    }
}

impl Formula {
    pub fn atom(p: &str, args: Vec<Term>) -> Self {
        Formula::Atom(Arc::from(p), args)
    }

    /// ⊤.
    pub fn top() -> Self {
        Formula::Atom(Arc::from(TOP_PREDICATE), Vec::new())
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Atom(p, args) if &**p == TOP_PREDICATE && args.is_empty())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn exists(v: Variable, f: Formula) -> Self {
        Formula::Exists(v, Box::new(f))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::not(Formula::and(Formula::not(a), Formula::not(b)))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::not(Formula::and(a, Formula::not(b)))
    }

    pub fn forall(v: Variable, f: Formula) -> Self {
        Formula::not(Formula::exists(v, Formula::not(f)))
    }

    /// Connective depth: atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(..) => 0,
            Formula::Not(f) | Formula::Exists(_, f) => 1 + f.depth(),
            Formula::And(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    fn collect_free(&self, bound: &mut Vec<Variable>, out: &mut Vec<Variable>) {
        match self {
            Formula::Atom(_, args) => {
                for a in args {
                    a.collect_free(bound, out);
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Free variables in order of first appearance. An abstraction term
    /// contributes only its beta variables.
    pub fn free_vars(&self) -> Vec<Variable> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// `φ[x/t]`, capture-avoiding.
    pub fn substitute(&self, x: &Variable, t: &Term) -> Result<Formula, SyntaxError> {
        let mut map = BTreeMap::new();
        map.insert(x.clone(), t.clone());
        self.substitute_all(&map)
    }

    /// Simultaneous capture-avoiding replacement of free variables.
    pub fn substitute_all(&self, map: &BTreeMap<Variable, Term>) -> Result<Formula, SyntaxError> {
        Ok(match self {
            Formula::Atom(p, args) => Formula::Atom(
                p.clone(),
                args.iter()
                    .map(|a| a.substitute_all(map))
                    .collect::<Result<_, _>>()?,
            ),
            Formula::Not(f) => Formula::not(f.substitute_all(map)?),
            Formula::And(a, b) => Formula::and(a.substitute_all(map)?, b.substitute_all(map)?),
            Formula::Exists(v, f) => {
                let mut inner = None;
                let map = if map.contains_key(v) {
                    let m: BTreeMap<Variable, Term> = map
                        .iter()
                        .filter(|(x, _)| *x != v)
                        .map(|(x, t)| (x.clone(), t.clone()))
                        .collect();
                    &*inner.insert(m)
                } else {
                    map
                };
                if map.is_empty() {
                    return Ok(self.clone());
                }
                // Capture only matters for variables actually free below.
                let mut free = None;
                for (x, t) in map {
                    if t.free_vars().contains(v) && free.get_or_insert_with(|| f.free_vars()).contains(x) {
                        return Err(SyntaxError::VariableCapture {
                            var: String::from(&*x.name),
                            captured: String::from(&*v.name),
                        });
                    }
                }
                Formula::exists(v.clone(), f.substitute_all(map)?)
            }
        })
    }

    /// Variables bound by a quantifier anywhere in the formula, abstraction
    /// bodies included.
    pub fn bound_vars(&self) -> BTreeSet<Variable> {
        fn term(t: &Term, out: &mut BTreeSet<Variable>) {
            match t {
                Term::App(_, args) => args.iter().for_each(|a| term(a, out)),
                Term::Abs(abs) => {
                    out.extend(abs.alpha.iter().cloned());
                    formula(&abs.body, out);
                }
                _ => {}
            }
        }
        fn formula(f: &Formula, out: &mut BTreeSet<Variable>) {
            match f {
                Formula::Atom(_, args) => args.iter().for_each(|a| term(a, out)),
                Formula::Not(g) => formula(g, out),
                Formula::And(a, b) => {
                    formula(a, out);
                    formula(b, out);
                }
                Formula::Exists(v, g) => {
                    out.insert(v.clone());
                    formula(g, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        formula(self, &mut out);
        out
    }
}

/// Builds `⋖body⋗_α^β`, keeping alpha and beta in the order given.
pub fn mk_abstracted(
    body: Formula,
    alpha: Vec<Variable>,
    beta: Vec<Variable>,
) -> Result<Abstraction, SyntaxError> {
    if let Some(v) = alpha.iter().find(|v| beta.contains(v)) {
        return Err(SyntaxError::AlphaBetaOverlap(String::from(&*v.name)));
    }
    let free = body.free_vars();
    if alpha.is_empty() && beta.is_empty() && !free.is_empty() {
        return Err(SyntaxError::EmptyAlphaWithFreeVars);
    }
    if let Some(v) = alpha.iter().chain(&beta).find(|v| !free.contains(v)) {
        return Err(SyntaxError::NotFreeInBody(String::from(&*v.name)));
    }
    if let Some(v) = free.iter().find(|v| !alpha.contains(v) && !beta.contains(v)) {
        return Err(SyntaxError::UncoveredFreeVariable(String::from(&*v.name)));
    }
    for list in [&alpha, &beta] {
        if let Some((_, v)) = list.iter().enumerate().find(|(i, v)| list[..*i].contains(v)) {
            return Err(SyntaxError::RepeatedVariable(String::from(&*v.name)));
        }
    }
    Ok(Abstraction { body, alpha, beta })
}

/// A many-sorted assignment: values for finitely many variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment(BTreeMap<Variable, Element>);

impl Assignment {
    pub fn new() -> Self {
        Assignment(BTreeMap::new())
    }

    pub fn get(&self, v: &Variable) -> Option<&Element> {
        self.0.get(v)
    }

    pub fn set(&mut self, v: Variable, e: Element) {
        self.0.insert(v, e);
    }

    pub fn with(&self, v: &Variable, e: Element) -> Self {
        let mut g = self.clone();
        g.set(v.clone(), e);
        g
    }

    pub fn remove(&mut self, v: &Variable) -> Option<Element> {
        self.0.remove(v)
    }

    pub fn contains(&self, v: &Variable) -> bool {
        self.0.contains_key(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Variable, &Element)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The restriction of `self` to `vars`.
    pub fn restrict(&self, vars: &[Variable]) -> Self {
        Assignment(
            self.0
                .iter()
                .filter(|(v, _)| vars.contains(v))
                .map(|(v, e)| (v.clone(), e.clone()))
                .collect(),
        )
    }

    /// Whether `self` and `other` agree on every variable except `x`.
    pub fn agrees_off(&self, other: &Self, x: &Variable) -> bool {
        let keys: BTreeSet<&Variable> = self.0.keys().chain(other.0.keys()).collect();
        keys.into_iter()
            .filter(|v| *v != x)
            .all(|v| self.0.get(v) == other.0.get(v))
    }
}

impl FromIterator<(Variable, Element)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Variable, Element)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

/// `φ/g`: every free variable replaced by the constant naming its value.
pub fn ground_instance(phi: &Formula, g: &Assignment) -> Result<Formula, SyntaxError> {
    let mut map = BTreeMap::new();
    for v in phi.free_vars() {
        let e = g
            .get(&v)
            .ok_or_else(|| SyntaxError::UnboundVariable(String::from(&*v.name)))?;
        map.insert(v, Term::from_element(e)?);
    }
    phi.substitute_all(&map)
}

/// `φ` with the free variables that `g` assigns replaced by constants; the
/// others stay free.
pub fn instantiate(phi: &Formula, g: &Assignment) -> Result<Formula, SyntaxError> {
    let mut map = BTreeMap::new();
    for v in phi.free_vars() {
        if let Some(e) = g.get(&v) {
            map.insert(v, Term::from_element(e)?);
        }
    }
    phi.substitute_all(&map)
}

/// Binders renamed so no quantifier rebinds a variable bound above it or
/// free in the whole formula. Fresh names get a `_<n>` suffix.
pub fn rename_shadowed(phi: &Formula) -> Formula {
    fn go(
        f: &Formula,
        in_scope: &mut Vec<Arc<str>>,
        taken: &mut BTreeSet<Arc<str>>,
        renames: &mut Vec<(Variable, Variable)>,
    ) -> Formula {
        match f {
            Formula::Atom(p, args) => Formula::Atom(
                p.clone(),
                args.iter().map(|a| term(a, in_scope, taken, renames)).collect(),
            ),
            Formula::Not(g) => Formula::not(go(g, in_scope, taken, renames)),
            Formula::And(a, b) => {
                let a = go(a, in_scope, taken, renames);
                let b = go(b, in_scope, taken, renames);
                Formula::and(a, b)
            }
            Formula::Exists(v, g) => {
                let fresh = if in_scope.contains(&v.name) {
                    let mut n = 1usize;
                    loop {
                        let mut candidate = String::from(&*v.name);
                        let _ = write!(candidate, "_{n}");
                        let candidate: Arc<str> = Arc::from(candidate.as_str());
                        if !taken.contains(&candidate) {
                            break candidate;
                        }
                        n += 1;
                    }
                } else {
                    v.name.clone()
                };
                taken.insert(fresh.clone());
                let new_var = Variable {
                    name: fresh.clone(),
                    sort: v.sort.clone(),
                };
                in_scope.push(fresh);
                renames.push((v.clone(), new_var.clone()));
                let body = go(g, in_scope, taken, renames);
                renames.pop();
                in_scope.pop();
                Formula::exists(new_var, body)
            }
        }
    }
    fn lookup(v: &Variable, renames: &[(Variable, Variable)]) -> Variable {
        renames
            .iter()
            .rev()
            .find(|(old, _)| old == v)
            .map(|(_, new)| new.clone())
            .unwrap_or_else(|| v.clone())
    }
    fn term(
        t: &Term,
        in_scope: &mut Vec<Arc<str>>,
        taken: &mut BTreeSet<Arc<str>>,
        renames: &mut Vec<(Variable, Variable)>,
    ) -> Term {
        match t {
            Term::Var(v) => Term::Var(lookup(v, renames)),
            Term::Const(_) => t.clone(),
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter().map(|a| term(a, in_scope, taken, renames)).collect(),
            ),
            Term::Abs(abs) => {
                // Hidden variables are in scope inside the body.
                let pushed = abs.alpha.len();
                for a in &abs.alpha {
                    in_scope.push(a.name.clone());
                }
                let body = go(&abs.body, in_scope, taken, renames);
                for _ in 0..pushed {
                    in_scope.pop();
                }
                let beta = abs.beta.iter().map(|v| lookup(v, renames)).collect();
                let alpha = abs.alpha.clone();
                Term::Abs(Box::new(
                    mk_abstracted(body, alpha, beta).expect("renaming preserves the abstraction invariants"),
                ))
            }
        }
    }
    let mut taken: BTreeSet<Arc<str>> = BTreeSet::new();
    let mut collect = |v: &Variable| {
        taken.insert(v.name.clone());
    };
    for v in phi.free_vars() {
        collect(&v);
    }
    for v in phi.bound_vars() {
        collect(&v);
    }
    let mut in_scope: Vec<Arc<str>> = phi.free_vars().into_iter().map(|v| v.name).collect();
    go(phi, &mut in_scope, &mut taken, &mut Vec::new())
}

fn is_plain_name(s: &str) -> bool {
    let mut chars = s.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    if first.is_ascii_digit() || first == '-' || first == '"' {
        return false;
    }
    if matches!(s, "exists" | "forall") {
        return false;
    }
    s.chars().all(is_name_char)
}

/// Characters allowed in an unquoted name.
pub fn is_name_char(c: char) -> bool {
    !c.is_whitespace() && !"()[]{},:.~&|<>=#;\"!⋖⋗".contains(c)
}

/// Writes a name, quoting it when it is not a plain identifier.
pub fn write_name(f: &mut impl fmt::Write, s: &str) -> fmt::Result {
    if is_plain_name(s) {
        f.write_str(s)
    } else {
        f.write_char('"')?;
        for c in s.chars() {
            if c == '"' || c == '\\' {
                f.write_char('\\')?;
            }
            f.write_char(c)?;
        }
        f.write_char('"')
    }
}

fn write_lexeme(f: &mut impl fmt::Write, s: &str) -> fmt::Result {
    if s.parse::<crate::number::Number>().is_ok() {
        f.write_str(s)
    } else {
        write_name(f, s)
    }
}

fn write_var_list(f: &mut fmt::Formatter<'_>, vars: &[Variable]) -> fmt::Result {
    for (i, v) in vars.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Const(c) => write_lexeme(f, c),
            Term::App(g, args) => {
                write_name(f, g)?;
                f.write_char('(')?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_char(')')
            }
            Term::Abs(abs) => write!(f, "{abs}"),
        }
    }
}

impl fmt::Display for Abstraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<< {} >>", self.body)?;
        if !self.alpha.is_empty() {
            f.write_str("|alpha: ")?;
            write_var_list(f, &self.alpha)?;
        }
        if !self.beta.is_empty() {
            if !self.alpha.is_empty() {
                f.write_char(' ')?;
            }
            f.write_str("|beta: ")?;
            write_var_list(f, &self.beta)?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(p, args) => {
                write_name(f, p)?;
                if args.is_empty() {
                    return Ok(());
                }
                f.write_char('(')?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_char(')')
            }
            Formula::Not(g) => write!(f, "~{g}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Exists(v, g) => {
                write!(f, "(exists {v}:")?;
                write_name(f, v.sort.as_str())?;
                write!(f, " . {g})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn x() -> Variable {
        Variable::new("x", "d")
    }
    fn y() -> Variable {
        Variable::new("y", "d")
    }
    fn p(args: Vec<Term>) -> Formula {
        Formula::atom("p", args)
    }

    #[test]
    fn free_vars_examples() {
        let pxy = p(vec![Term::Var(x()), Term::Var(y())]);
        assert_eq!(pxy.free_vars(), vec![x(), y()]);
        assert_eq!(Formula::exists(x(), pxy).free_vars(), vec![y()]);
    }

    fn sphere_body() -> Formula {
        let r = |n: &str| Term::var(n, "reals");
        let sq = |t: Term| Term::app("square", vec![t]);
        let sub = |a: Term, b: Term| Term::app("sub", vec![a, b]);
        let add = |a: Term, b: Term| Term::app("add", vec![a, b]);
        let lhs = add(
            add(sq(sub(r("x"), r("x0"))), sq(sub(r("y"), r("y0")))),
            sq(sub(r("z"), r("z0"))),
        );
        Formula::atom("leq", vec![lhs, sq(r("v"))])
    }

    fn rv(names: &[&str]) -> Vec<Variable> {
        names.iter().map(|n| Variable::new(n, "reals")).collect()
    }

    fn knows_formula() -> Formula {
        let sphere = mk_abstracted(sphere_body(), rv(&["x", "y", "z"]), rv(&["x0", "y0", "z0", "v"])).unwrap();
        let x4 = Variable::new("x4", "person");
        let told = Formula::atom(
            "told",
            vec![Term::constant("past"), Term::Var(x4.clone()), Term::Abs(Box::new(sphere))],
        );
        let mut beta = vec![x4];
        beta.extend(rv(&["x0", "y0", "z0", "v"]));
        let outer = mk_abstracted(told, vec![], beta).unwrap();
        Formula::atom(
            "knows",
            vec![
                Term::constant("present"),
                Term::var("x2", "person"),
                Term::Abs(Box::new(outer)),
            ],
        )
    }

    #[test]
    fn nested_abstraction_free_vars() {
        let names: Vec<String> = knows_formula()
            .free_vars()
            .iter()
            .map(|v| v.name.to_string())
            .collect();
        assert_eq!(names, ["x2", "x4", "x0", "y0", "z0", "v"]);
    }

    #[test]
    fn substitution_examples() {
        let c = Term::constant("c");
        let px = p(vec![Term::Var(x())]);
        assert_eq!(px.substitute(&x(), &c).unwrap(), p(vec![c.clone()]));

        let phi = Formula::and(px.clone(), Formula::exists(x(), Formula::atom("q", vec![Term::Var(x())])));
        let expected = Formula::and(p(vec![c.clone()]), Formula::exists(x(), Formula::atom("q", vec![Term::Var(x())])));
        assert_eq!(phi.substitute(&x(), &c).unwrap(), expected);

        let psi = Formula::exists(y(), p(vec![Term::Var(x()), Term::Var(y())]));
        let fy = Term::app("f", vec![Term::Var(y())]);
        assert!(matches!(psi.substitute(&x(), &fy), Err(SyntaxError::VariableCapture { .. })));
    }

    #[test]
    fn substitution_updates_beta() {
        let abs = mk_abstracted(p(vec![Term::Var(x()), Term::Var(y())]), vec![x()], vec![y()]).unwrap();
        let phi = Formula::atom("q", vec![Term::Abs(Box::new(abs))]);
        let z = Variable::new("z", "d");
        let out = phi.substitute(&y(), &Term::Var(z.clone())).unwrap();
        assert_eq!(out.free_vars(), vec![z]);
        // The hidden variable cannot be captured.
        assert!(matches!(
            phi.substitute(&y(), &Term::Var(x())),
            Err(SyntaxError::VariableCapture { .. })
        ));
        // Substituting for a hidden variable changes nothing.
        assert_eq!(phi.substitute(&x(), &Term::constant("c")).unwrap(), phi);
    }

    #[test]
    fn abstraction_examples() {
        let a = mk_abstracted(sphere_body(), rv(&["x", "y", "z"]), rv(&["x0", "y0", "z0", "v"])).unwrap();
        assert_eq!(a.alpha(), rv(&["x", "y", "z"]).as_slice());
        assert_eq!(a.beta(), rv(&["x0", "y0", "z0", "v"]).as_slice());
        let (body, alpha, beta) = a.clone().into_parts();
        assert_eq!(mk_abstracted(body, alpha, beta).unwrap(), a);

        let closed = p(vec![Term::constant("c")]);
        let t = mk_abstracted(closed.clone(), vec![], vec![]).unwrap();
        assert!(Term::Abs(Box::new(t)).is_ground());

        let pxy = p(vec![Term::Var(x()), Term::Var(y())]);
        assert_eq!(
            mk_abstracted(pxy.clone(), vec![x()], vec![x()]),
            Err(SyntaxError::AlphaBetaOverlap("x".into()))
        );
        assert_eq!(
            mk_abstracted(pxy.clone(), vec![x()], vec![]),
            Err(SyntaxError::UncoveredFreeVariable("y".into()))
        );
        assert_eq!(
            mk_abstracted(pxy, vec![], vec![]),
            Err(SyntaxError::EmptyAlphaWithFreeVars)
        );
    }

    #[test]
    fn grounding_examples() {
        let px = p(vec![Term::Var(x())]);
        let g: Assignment = [(x(), Element::particular("tom"))].into_iter().collect();
        assert_eq!(ground_instance(&px, &g).unwrap(), p(vec![Term::constant("tom")]));
        assert_eq!(
            ground_instance(&px, &Assignment::new()),
            Err(SyntaxError::UnboundVariable("x".into()))
        );

        let body = sphere_body();
        let g: Assignment = rv(&["x0", "y0", "z0", "v"])
            .into_iter()
            .zip(["0.0", "0.0", "0.0", "2.0"])
            .map(|(v, n)| (v, Element::from(n)))
            .collect();
        assert_eq!(ground_instance(&body, &g), Err(SyntaxError::UnboundVariable("x".into())));
        let ground = instantiate(&body, &g).unwrap();
        assert_eq!(
            ground.to_string(),
            "leq(add(add(square(sub(x, 0)), square(sub(y, 0))), square(sub(z, 0))), square(2))"
        );
        assert_eq!(ground.free_vars(), rv(&["x", "y", "z"]));
    }

    #[test]
    fn ground_nested_abstraction() {
        let phi = knows_formula();
        let mut g = Assignment::new();
        g.set(Variable::new("x2", "person"), Element::particular("Zoran Majkic"));
        g.set(Variable::new("x4", "person"), Element::particular("Alberto Rossi"));
        for (v, n) in rv(&["x0", "y0", "z0", "v"]).into_iter().zip(["0", "0", "0", "2"]) {
            g.set(v, Element::from(n));
        }
        let ground = ground_instance(&phi, &g).unwrap();
        assert!(ground.is_sentence());
        assert!(ground.to_string().starts_with("knows(present, \"Zoran Majkic\", << told(past, \"Alberto Rossi\", << leq("));
    }

    #[test]
    fn renaming_removes_shadowing() {
        let inner = Formula::exists(x(), p(vec![Term::Var(x())]));
        let phi = Formula::exists(x(), Formula::and(p(vec![Term::Var(x())]), inner));
        let renamed = rename_shadowed(&phi);
        assert_eq!(renamed.to_string(), "(exists x:d . (p(x) & (exists x_1:d . p(x_1))))");
        let free = Formula::and(p(vec![Term::Var(x())]), Formula::exists(x(), p(vec![Term::Var(x())])));
        assert_eq!(rename_shadowed(&free).to_string(), "(p(x) & (exists x_1:d . p(x_1)))");
    }

    #[test]
    fn sugar() {
        let a = p(vec![Term::constant("a")]);
        let b = p(vec![Term::constant("b")]);
        assert_eq!(Formula::or(a.clone(), b.clone()).to_string(), "~(~p(a) & ~p(b))");
        assert_eq!(Formula::implies(a.clone(), b).to_string(), "~(p(a) & ~p(b))");
        assert_eq!(Formula::forall(x(), a).to_string(), "~(exists x:d . ~p(a))");
    }
}
