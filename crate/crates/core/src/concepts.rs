//! The intensional side: the interpretation `I` of formulas into the PRP
//! domain, predicate-concepts and their canonical subconcepts, and the
//! derived `union` concept.
//!
//! `I` is a pure function of a formula's normal form. The normal form folds
//! closed built-in arithmetic, replaces closed abstraction terms by the
//! concepts they denote and numbers variables by first appearance, so two
//! formulas that differ only in variable names or in such redexes denote the
//! same concept.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use crate::builtins::BuiltinFunction;
use crate::kernel::{Concept, Element, KernelError, SortId, TOP};
use crate::syntax::{write_name, Abstraction, Assignment, Formula, SyntaxError, Term, Variable};
use crate::workspace::Workspace;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConceptError {
    #[error("phrase `{0}` is already a concept")]
    DuplicatePhrase(SortId),
    #[error("predicate `{0}` already has a concept")]
    DuplicatePredicate(String),
    #[error("`{0}` is not a registered predicate")]
    UnregisteredPredicate(String),
    #[error("predicate `{predicate}` has arity {expected}, got {found}")]
    ArityMismatch { predicate: String, expected: usize, found: usize },
    #[error("assigning every variable yields a proposition, not a subconcept")]
    FullAssignment,
    #[error("a canonical subconcept needs at least one assigned variable")]
    EmptyAssignment,
    #[error("`{value}` is not a valid element of `{sort}`")]
    SortViolation { value: String, sort: SortId },
    #[error("sort `{0}` has no finite extent to enumerate")]
    InfiniteSortExtent(SortId),
    #[error("union of no concepts")]
    EmptyParts,
    #[error("union of concepts of different arities")]
    MixedArity,
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

/// Bijection between predicate symbols and their predicate-concepts.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    by_predicate: BTreeMap<Arc<str>, SortId>,
    by_concept: BTreeMap<SortId, Arc<str>>,
}

impl Registry {
    pub fn register(&mut self, predicate: &str, concept: &SortId) -> Result<(), ConceptError> {
        if self.by_predicate.contains_key(predicate) {
            return Err(ConceptError::DuplicatePredicate(predicate.into()));
        }
        if self.by_concept.contains_key(concept) {
            return Err(ConceptError::DuplicatePhrase(concept.clone()));
        }
        let p: Arc<str> = Arc::from(predicate);
        self.by_predicate.insert(p.clone(), concept.clone());
        self.by_concept.insert(concept.clone(), p);
        Ok(())
    }

    pub fn concept_of(&self, predicate: &str) -> Option<&SortId> {
        self.by_predicate.get(predicate)
    }

    pub fn predicate_of(&self, concept: &SortId) -> Option<&str> {
        self.by_concept.get(concept).map(|p| &**p)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &SortId)> {
        self.by_predicate.iter().map(|(p, c)| (&**p, c))
    }
}

/// Normal-form term. Variables are numbered by first appearance, free
/// variables first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NTerm {
    Var(u32),
    Value(Element),
    App(Arc<str>, Vec<NTerm>),
    Abs(Box<NAbs>),
}

/// Normal form of an abstraction term with visible variables left.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NAbs {
    pub body: NFormula,
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NFormula {
    Atom(Arc<str>, Vec<NTerm>),
    Not(Box<NFormula>),
    And(Box<NFormula>, Box<NFormula>),
    Exists(u32, Box<NFormula>),
}

/// A concept denoted by a composed formula.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormulaConcept {
    pub body: NFormula,
    /// Sort of every variable index, free and bound.
    pub sorts: Vec<SortId>,
    pub arity: usize,
}

/// A predicate-concept with some attributes fixed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subconcept {
    pub root: Concept,
    pub bound: Vec<Option<Element>>,
}

impl Subconcept {
    pub fn arity(&self) -> usize {
        self.bound.iter().filter(|b| b.is_none()).count()
    }

    /// Phrase followed by the bound values in attribute order.
    pub fn name(&self) -> String {
        let mut out = String::from(self.root.id.as_str());
        for e in self.bound.iter().flatten() {
            out.push(' ');
            out.push_str(&e.to_string());
        }
        out
    }

    pub fn attribute_sorts(&self) -> Vec<SortId> {
        self.root
            .attribute_sorts
            .iter()
            .zip(&self.bound)
            .filter(|(_, b)| b.is_none())
            .map(|(s, _)| s.clone())
            .collect()
    }

    /// Whether every binding of `other` is also a binding of `self`.
    pub fn refines(&self, other: &Subconcept) -> bool {
        self.root.id == other.root.id
            && self.bound.len() == other.bound.len()
            && self
                .bound
                .iter()
                .zip(&other.bound)
                .all(|(a, b)| b.is_none() || a == b)
    }

    /// The atom this subconcept corresponds to, with `vars[i]` at the i-th
    /// unbound position.
    pub fn to_atom(&self, predicate: &str, vars: &[Variable]) -> Result<Formula, SyntaxError> {
        let mut free = vars.iter();
        let mut args = Vec::with_capacity(self.bound.len());
        for b in &self.bound {
            args.push(match b {
                Some(e) => Term::from_element(e)?,
                None => Term::Var(
                    free.next()
                        .ok_or_else(|| SyntaxError::UnboundVariable(String::from("?")))?
                        .clone(),
                ),
            });
        }
        Ok(Formula::Atom(Arc::from(predicate), args))
    }
}

/// Derived `union` concept: its extension in every world is the union of
/// its parts' extensions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnionConcept {
    parts: Vec<Intension>,
    arity: usize,
}

impl UnionConcept {
    pub fn parts(&self) -> &[Intension] {
        &self.parts
    }
}

/// An intensional entity of the PRP domain: a proposition (arity 0) or a
/// k-ary concept.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Intension {
    /// `I(⊤)`.
    Truth,
    Predicate(Concept),
    Subconcept(Subconcept),
    Formula(FormulaConcept),
    Union(UnionConcept),
}

impl Intension {
    pub fn arity(&self) -> usize {
        match self {
            Intension::Truth => 0,
            Intension::Predicate(c) => c.arity(),
            Intension::Subconcept(s) => s.arity(),
            Intension::Formula(f) => f.arity,
            Intension::Union(u) => u.arity,
        }
    }

    pub fn is_proposition(&self) -> bool {
        self.arity() == 0
    }

    pub fn name(&self) -> String {
        match self {
            Intension::Truth => String::from("Truth"),
            Intension::Predicate(c) => String::from(c.id.as_str()),
            Intension::Subconcept(s) => s.name(),
            Intension::Formula(f) => {
                let mut out = String::from("⋖");
                let _ = write!(out, "{}", NfDisplay { f: &f.body, sorts: &f.sorts });
                out.push('⋗');
                out
            }
            Intension::Union(u) => {
                let mut out = String::from("union{");
                for (i, p) in u.parts.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(&p.name());
                }
                out.push('}');
                out
            }
        }
    }

    /// Attribute sorts, where the intension has a concept syntax form.
    pub fn attribute_sorts(&self) -> Vec<SortId> {
        match self {
            Intension::Truth => Vec::new(),
            Intension::Predicate(c) => c.attribute_sorts.clone(),
            Intension::Subconcept(s) => s.attribute_sorts(),
            Intension::Formula(f) => f.sorts[..f.arity].to_vec(),
            Intension::Union(u) => u.parts[0].attribute_sorts(),
        }
    }

    /// δ for intensional elements: propositions are truth values, a unary
    /// predicate-concept has the sort of its attribute, a relational one is
    /// its own sort and a subconcept inherits its root's sort.
    pub fn dynamic_sort(&self) -> SortId {
        if self.is_proposition() {
            return SortId::truth_values();
        }
        match self {
            Intension::Predicate(c) if c.arity() == 1 => c.attribute_sorts[0].clone(),
            Intension::Predicate(c) => c.id.clone(),
            Intension::Subconcept(s) if s.root.arity() >= 2 => s.root.id.clone(),
            _ => SortId::new(TOP),
        }
    }
}

impl fmt::Display for Intension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())?;
        let sorts = self.attribute_sorts();
        if !sorts.is_empty() {
            f.write_char(':')?;
            for (i, s) in sorts.iter().enumerate() {
                if i > 0 {
                    f.write_char(',')?;
                }
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}

struct NfDisplay<'a> {
    f: &'a NFormula,
    sorts: &'a [SortId],
}

fn write_nterm(out: &mut fmt::Formatter<'_>, t: &NTerm, sorts: &[SortId]) -> fmt::Result {
    match t {
        NTerm::Var(i) => write!(out, "x{}", i + 1),
        NTerm::Value(Element::Particular(p)) => write_name(out, p),
        NTerm::Value(e) => write!(out, "{e}"),
        NTerm::App(g, args) => {
            write_name(out, g)?;
            out.write_char('(')?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.write_str(", ")?;
                }
                write_nterm(out, a, sorts)?;
            }
            out.write_char(')')
        }
        NTerm::Abs(abs) => {
            write!(out, "⋖{}⋗", NfDisplay { f: &abs.body, sorts })?;
            let list = |out: &mut fmt::Formatter<'_>, vs: &[u32]| -> fmt::Result {
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        out.write_char(',')?;
                    }
                    write!(out, "x{}", v + 1)?;
                }
                Ok(())
            };
            out.write_str("_{")?;
            list(out, &abs.alpha)?;
            out.write_str("}^{")?;
            list(out, &abs.beta)?;
            out.write_char('}')
        }
    }
}

impl fmt::Display for NfDisplay<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.f {
            NFormula::Atom(p, args) => {
                write_name(out, p)?;
                if args.is_empty() {
                    return Ok(());
                }
                out.write_char('(')?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.write_str(", ")?;
                    }
                    write_nterm(out, a, self.sorts)?;
                }
                out.write_char(')')
            }
            NFormula::Not(g) => write!(out, "¬{}", NfDisplay { f: g, sorts: self.sorts }),
            NFormula::And(a, b) => write!(
                out,
                "({} ∧ {})",
                NfDisplay { f: a, sorts: self.sorts },
                NfDisplay { f: b, sorts: self.sorts }
            ),
            NFormula::Exists(v, g) => {
                write!(out, "∃x{}:", v + 1)?;
                if let Some(s) = self.sorts.get(*v as usize) {
                    write_name(out, s.as_str())?;
                }
                write!(out, " {}", NfDisplay { f: g, sorts: self.sorts })
            }
        }
    }
}

impl NTerm {
    fn collect_vars(&self, out: &mut Vec<u32>) {
        match self {
            NTerm::Var(i) => {
                if !out.contains(i) {
                    out.push(*i);
                }
            }
            NTerm::Value(_) => {}
            NTerm::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            NTerm::Abs(abs) => {
                for b in &abs.beta {
                    if !out.contains(b) {
                        out.push(*b);
                    }
                }
            }
        }
    }

    /// Free variable indices in order of first appearance.
    pub fn free_vars(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }
}

impl NFormula {
    fn collect_free(&self, bound: &mut Vec<u32>, out: &mut Vec<u32>) {
        match self {
            NFormula::Atom(_, args) => {
                for a in args {
                    for v in a.free_vars() {
                        if !bound.contains(&v) && !out.contains(&v) {
                            out.push(v);
                        }
                    }
                }
            }
            NFormula::Not(g) => g.collect_free(bound, out),
            NFormula::And(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            NFormula::Exists(v, g) => {
                bound.push(*v);
                g.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Free variable indices in order of first appearance.
    pub fn free_vars(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    /// Replaces free occurrences of variables by values.
    pub fn bind(&self, values: &BTreeMap<u32, Element>) -> NFormula {
        match self {
            NFormula::Atom(p, args) => NFormula::Atom(p.clone(), args.iter().map(|a| a.bind(values)).collect()),
            NFormula::Not(g) => NFormula::Not(Box::new(g.bind(values))),
            NFormula::And(a, b) => NFormula::And(Box::new(a.bind(values)), Box::new(b.bind(values))),
            NFormula::Exists(v, g) => {
                let mut inner = values.clone();
                inner.remove(v);
                NFormula::Exists(*v, Box::new(g.bind(&inner)))
            }
        }
    }
}

impl NTerm {
    pub fn bind(&self, values: &BTreeMap<u32, Element>) -> NTerm {
        match self {
            NTerm::Var(i) => values.get(i).cloned().map(NTerm::Value).unwrap_or_else(|| self.clone()),
            NTerm::Value(_) => self.clone(),
            NTerm::App(f, args) => NTerm::App(f.clone(), args.iter().map(|a| a.bind(values)).collect()),
            NTerm::Abs(abs) => {
                let inner: BTreeMap<u32, Element> = values
                    .iter()
                    .filter(|(k, _)| abs.beta.contains(k))
                    .map(|(k, v)| (*k, v.clone()))
                    .collect();
                if inner.is_empty() {
                    return self.clone();
                }
                NTerm::Abs(Box::new(NAbs {
                    body: abs.body.bind(&inner),
                    alpha: abs.alpha.clone(),
                    beta: abs.beta.iter().filter(|b| !inner.contains_key(b)).copied().collect(),
                }))
            }
        }
    }
}

/// Raw normal form: syntax converted with unique indices, before folding
/// and renumbering.
struct Lowering {
    sorts: BTreeMap<u32, SortId>,
    next: u32,
}

impl Lowering {
    fn fresh(&mut self, sort: &SortId) -> u32 {
        let i = self.next;
        self.next += 1;
        self.sorts.insert(i, sort.clone());
        i
    }

    fn formula(&mut self, f: &Formula, scope: &mut Vec<(Variable, u32)>) -> NFormula {
        match f {
            Formula::Atom(p, args) => NFormula::Atom(p.clone(), args.iter().map(|a| self.term(a, scope)).collect()),
            Formula::Not(g) => NFormula::Not(Box::new(self.formula(g, scope))),
            Formula::And(a, b) => {
                let a = self.formula(a, scope);
                let b = self.formula(b, scope);
                NFormula::And(Box::new(a), Box::new(b))
            }
            Formula::Exists(v, g) => {
                let i = self.fresh(&v.sort);
                scope.push((v.clone(), i));
                let body = self.formula(g, scope);
                scope.pop();
                NFormula::Exists(i, Box::new(body))
            }
        }
    }

    fn lookup(&mut self, v: &Variable, scope: &mut Vec<(Variable, u32)>) -> u32 {
        if let Some((_, i)) = scope.iter().rev().find(|(w, _)| w == v) {
            return *i;
        }
        // Only reachable for free variables missing from the initial scope.
        let i = self.fresh(&v.sort);
        scope.insert(0, (v.clone(), i));
        i
    }

    fn term(&mut self, t: &Term, scope: &mut Vec<(Variable, u32)>) -> NTerm {
        match t {
            Term::Var(v) => NTerm::Var(self.lookup(v, scope)),
            Term::Const(c) => NTerm::Value(Element::from(&**c)),
            Term::App(f, args) => NTerm::App(f.clone(), args.iter().map(|a| self.term(a, scope)).collect()),
            Term::Abs(abs) => {
                let beta: Vec<u32> = abs.beta().iter().map(|v| self.lookup(v, scope)).collect();
                let depth = scope.len();
                let alpha: Vec<u32> = abs
                    .alpha()
                    .iter()
                    .map(|v| {
                        let i = self.fresh(&v.sort);
                        scope.push((v.clone(), i));
                        i
                    })
                    .collect();
                let body = self.formula(abs.body(), scope);
                scope.truncate(depth);
                NTerm::Abs(Box::new(NAbs { body, alpha, beta }))
            }
        }
    }
}

/// Lowers a formula whose free variables are `free` (in that order).
fn lower(f: &Formula, free: &[Variable]) -> (NFormula, Vec<u32>, BTreeMap<u32, SortId>) {
    let mut l = Lowering {
        sorts: BTreeMap::new(),
        next: 0,
    };
    let mut scope: Vec<(Variable, u32)> = Vec::new();
    let mut free_idx = Vec::new();
    for v in free {
        let i = l.fresh(&v.sort);
        scope.push((v.clone(), i));
        free_idx.push(i);
    }
    let nf = l.formula(f, &mut scope);
    (nf, free_idx, l.sorts)
}

/// Constant folding for built-in arithmetic plus the identities `t - 0` and
/// `t + 0`, and replacement of closed abstraction terms by their values.
fn fold_term(t: NTerm, ws: &Workspace, sorts: &BTreeMap<u32, SortId>) -> NTerm {
    match t {
        NTerm::App(f, args) => {
            let args: Vec<NTerm> = args.into_iter().map(|a| fold_term(a, ws, sorts)).collect();
            let evaluator = ws.signature().function(&f).and_then(|d| d.evaluator);
            if let Some(e) = evaluator {
                if args.iter().all(|a| matches!(a, NTerm::Value(_))) {
                    let values: Vec<Element> = args
                        .iter()
                        .map(|a| match a {
                            NTerm::Value(v) => v.clone(),
                            _ => unreachable!(),
                        })
                        .collect();
                    if let Some(v) = e.apply(&values) {
                        return NTerm::Value(v);
                    }
                }
                let zero = |a: &NTerm| matches!(a, NTerm::Value(Element::Number(n)) if n.is_zero());
                match e {
                    BuiltinFunction::Sub | BuiltinFunction::Add if zero(&args[1]) => {
                        return args.into_iter().next().expect("binary");
                    }
                    BuiltinFunction::Add if zero(&args[0]) => {
                        return args.into_iter().nth(1).expect("binary");
                    }
                    _ => {}
                }
            }
            NTerm::App(f, args)
        }
        NTerm::Abs(abs) => {
            let body = fold_formula(abs.body, ws, sorts);
            if abs.beta.is_empty() {
                let free: Vec<(u32, SortId)> = abs.alpha.iter().map(|i| (*i, sorts[i].clone())).collect();
                NTerm::Value(Element::concept(classify(body, &free, sorts, ws)))
            } else {
                NTerm::Abs(Box::new(NAbs {
                    body,
                    alpha: abs.alpha,
                    beta: abs.beta,
                }))
            }
        }
        other => other,
    }
}

fn fold_formula(f: NFormula, ws: &Workspace, sorts: &BTreeMap<u32, SortId>) -> NFormula {
    match f {
        NFormula::Atom(p, args) => NFormula::Atom(p, args.into_iter().map(|a| fold_term(a, ws, sorts)).collect()),
        NFormula::Not(g) => NFormula::Not(Box::new(fold_formula(*g, ws, sorts))),
        NFormula::And(a, b) => NFormula::And(
            Box::new(fold_formula(*a, ws, sorts)),
            Box::new(fold_formula(*b, ws, sorts)),
        ),
        NFormula::Exists(v, g) => NFormula::Exists(v, Box::new(fold_formula(*g, ws, sorts))),
    }
}

struct Renumber<'a> {
    map: BTreeMap<u32, u32>,
    sorts_in: &'a BTreeMap<u32, SortId>,
    sorts_out: Vec<SortId>,
}

impl Renumber<'_> {
    fn assign(&mut self, old: u32) -> u32 {
        let new = self.sorts_out.len() as u32;
        self.map.insert(old, new);
        self.sorts_out.push(self.sorts_in[&old].clone());
        new
    }

    fn formula(&mut self, f: &NFormula) -> NFormula {
        match f {
            NFormula::Atom(p, args) => NFormula::Atom(p.clone(), args.iter().map(|a| self.term(a)).collect()),
            NFormula::Not(g) => NFormula::Not(Box::new(self.formula(g))),
            NFormula::And(a, b) => {
                let a = self.formula(a);
                let b = self.formula(b);
                NFormula::And(Box::new(a), Box::new(b))
            }
            NFormula::Exists(v, g) => {
                let saved = self.map.get(v).copied();
                let new = self.assign(*v);
                let body = self.formula(g);
                match saved {
                    Some(s) => self.map.insert(*v, s),
                    None => self.map.remove(v),
                };
                NFormula::Exists(new, Box::new(body))
            }
        }
    }

    fn term(&mut self, t: &NTerm) -> NTerm {
        match t {
            NTerm::Var(i) => NTerm::Var(self.map[i]),
            NTerm::Value(_) => t.clone(),
            NTerm::App(f, args) => NTerm::App(f.clone(), args.iter().map(|a| self.term(a)).collect()),
            NTerm::Abs(abs) => {
                let beta = abs.beta.iter().map(|b| self.map[b]).collect();
                let alpha = abs.alpha.iter().map(|a| self.assign(*a)).collect();
                let body = self.formula(&abs.body);
                NTerm::Abs(Box::new(NAbs { body, alpha, beta }))
            }
        }
    }
}

/// Builds the intension of a folded normal form whose free variables are
/// `free`, in the given order.
fn classify(nf: NFormula, free: &[(u32, SortId)], sorts: &BTreeMap<u32, SortId>, ws: &Workspace) -> Intension {
    let mut all_sorts = sorts.clone();
    for (i, s) in free {
        all_sorts.insert(*i, s.clone());
    }
    let mut r = Renumber {
        map: BTreeMap::new(),
        sorts_in: &all_sorts,
        sorts_out: Vec::new(),
    };
    for (i, _) in free {
        r.assign(*i);
    }
    let body = r.formula(&nf);
    let arity = free.len();
    let sorts = r.sorts_out;

    if let NFormula::Atom(p, args) = &body {
        if args.is_empty() && &**p == crate::syntax::TOP_PREDICATE {
            return Intension::Truth;
        }
        if let Some(id) = ws.registry().concept_of(p) {
            let concept = ws.kernel().concept(id).expect("registered concepts are declared").clone();
            if let Some(bound) = atom_binding(args, &concept, &sorts, arity) {
                if bound.iter().all(Option::is_none) {
                    return Intension::Predicate(concept);
                }
                return Intension::Subconcept(Subconcept { root: concept, bound });
            }
        }
    }
    Intension::Formula(FormulaConcept { body, sorts, arity })
}

/// For `p(t1..tk)` whose arguments are values and distinct free variables of
/// exactly the attribute sorts, the bound value at each position.
fn atom_binding(args: &[NTerm], concept: &Concept, sorts: &[SortId], arity: usize) -> Option<Vec<Option<Element>>> {
    if args.len() != concept.arity() {
        return None;
    }
    let mut seen = Vec::new();
    let mut bound = Vec::with_capacity(args.len());
    for (a, s) in args.iter().zip(&concept.attribute_sorts) {
        match a {
            NTerm::Var(i) if (*i as usize) < arity && !seen.contains(i) && sorts[*i as usize] == *s => {
                seen.push(*i);
                bound.push(None);
            }
            NTerm::Value(e) => bound.push(Some(e.clone())),
            _ => return None,
        }
    }
    (seen.len() == arity).then_some(bound)
}

/// `I(φ)` with the free-variable tuple taken in order of first appearance.
pub fn interpret(phi: &Formula, ws: &Workspace) -> Intension {
    let free = phi.free_vars();
    interpret_with(phi, &free, ws)
}

/// `I(φ)` where the concept's attribute tuple is `free`, which must list
/// every free variable of `phi`.
pub fn interpret_with(phi: &Formula, free: &[Variable], ws: &Workspace) -> Intension {
    let (nf, free_idx, sorts) = lower(phi, free);
    let nf = fold_formula(nf, ws, &sorts);
    let free: Vec<(u32, SortId)> = free_idx.iter().map(|i| (*i, sorts[i].clone())).collect();
    classify(nf, &free, &sorts, ws)
}

/// `g*` on an abstraction term: `I(body)` when beta is empty, `I(body/g)`
/// otherwise. The result has arity `|alpha|`.
pub fn abstraction_value(abs: &Abstraction, g: &Assignment, ws: &Workspace) -> Result<Intension, ConceptError> {
    if abs.beta().is_empty() {
        return Ok(interpret_with(abs.body(), abs.alpha(), ws));
    }
    let mut map = BTreeMap::new();
    for v in abs.beta() {
        let e = g
            .get(v)
            .ok_or_else(|| SyntaxError::UnboundVariable(String::from(&*v.name)))?;
        map.insert(v.clone(), Term::from_element(e)?);
    }
    let body = abs.body().substitute_all(&map)?;
    Ok(interpret_with(&body, abs.alpha(), ws))
}

/// Value of a normal-form abstraction once its visible variables are bound.
pub fn nabs_value(
    abs: &NAbs,
    env: &BTreeMap<u32, Element>,
    sorts: &[SortId],
    ws: &Workspace,
) -> Option<Intension> {
    let mut values = BTreeMap::new();
    for b in &abs.beta {
        values.insert(*b, env.get(b)?.clone());
    }
    let body = abs.body.bind(&values);
    let sort_map: BTreeMap<u32, SortId> = sorts.iter().enumerate().map(|(i, s)| (i as u32, s.clone())).collect();
    let body = fold_formula(body, ws, &sort_map);
    let free: Vec<(u32, SortId)> = abs.alpha.iter().map(|i| (*i, sort_map[i].clone())).collect();
    Some(classify(body, &free, &sort_map, ws))
}

/// The concept named by the predicate's phrase followed by the assigned
/// values in attribute order.
pub fn canonical_subconcept(
    ws: &Workspace,
    predicate: &str,
    partial: &BTreeMap<usize, Element>,
) -> Result<Subconcept, ConceptError> {
    let root = predicate_concept(ws, predicate)?;
    if partial.is_empty() {
        return Err(ConceptError::EmptyAssignment);
    }
    if let Some(&i) = partial.keys().find(|&&i| i >= root.arity()) {
        return Err(ConceptError::ArityMismatch {
            predicate: predicate.into(),
            expected: root.arity(),
            found: i + 1,
        });
    }
    if partial.len() == root.arity() {
        return Err(ConceptError::FullAssignment);
    }
    for (&i, e) in partial {
        let sort = &root.attribute_sorts[i];
        let ok = !sort.is_nested_sentence()
            && ws.kernel().is_subsort(&ws.kernel().dynamic_sort(e), sort).unwrap_or(false);
        if !ok {
            return Err(ConceptError::SortViolation {
                value: e.to_string(),
                sort: sort.clone(),
            });
        }
    }
    let bound = (0..root.arity()).map(|i| partial.get(&i).cloned()).collect();
    Ok(Subconcept { root, bound })
}

fn predicate_concept(ws: &Workspace, predicate: &str) -> Result<Concept, ConceptError> {
    let id = ws
        .registry()
        .concept_of(predicate)
        .ok_or_else(|| ConceptError::UnregisteredPredicate(predicate.into()))?;
    Ok(ws.kernel().concept(id).expect("registered concepts are declared").clone())
}

/// A node of a predicate-concept's subconcept tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConceptTree {
    pub concept: Intension,
    pub children: Vec<ConceptTree>,
}

impl ConceptTree {
    pub fn len(&self) -> usize {
        1 + self.children.iter().map(ConceptTree::len).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Each subconcept in the tree once, in depth-first order of first
    /// appearance.
    pub fn distinct(&self) -> Vec<&Intension> {
        let mut seen = BTreeSet::new();
        self.walk()
            .into_iter()
            .map(|(_, c)| c)
            .filter(|c| seen.insert(*c))
            .collect()
    }

    /// Nodes in depth-first order with their depth.
    pub fn walk(&self) -> Vec<(usize, &Intension)> {
        fn go<'a>(t: &'a ConceptTree, depth: usize, out: &mut Vec<(usize, &'a Intension)>) {
            out.push((depth, &t.concept));
            for c in &t.children {
                go(c, depth + 1, out);
            }
        }
        let mut out = Vec::new();
        go(self, 0, &mut out);
        out
    }

    /// One node per line, two spaces of indent per level, `name:s1,...,sk`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (depth, c) in self.walk() {
            for _ in 0..depth {
                out.push_str("  ");
            }
            let _ = writeln!(out, "{c}");
        }
        out
    }
}

/// The subconcepts of a predicate-concept obtained by fixing attributes one
/// at a time, down to the unary ones. A node's children fix any one of its
/// free attributes, so a subconcept with several fixed attributes appears
/// once under each of its parents.
pub fn subconcept_tree(ws: &Workspace, predicate: &str) -> Result<ConceptTree, ConceptError> {
    let root = predicate_concept(ws, predicate)?;
    let mut extents = Vec::with_capacity(root.arity());
    for s in &root.attribute_sorts {
        if s.is_nested_sentence() {
            extents.push(Vec::new());
            continue;
        }
        match ws.kernel().valid_elements(s) {
            Ok(v) => extents.push(v),
            Err(KernelError::InfiniteExtent(s)) => return Err(ConceptError::InfiniteSortExtent(s)),
            Err(e) => return Err(e.into()),
        }
    }
    fn grow(root: &Concept, bound: Vec<Option<Element>>, extents: &[Vec<Element>]) -> ConceptTree {
        let free = bound.iter().filter(|b| b.is_none()).count();
        let concept = if free == root.arity() {
            Intension::Predicate(root.clone())
        } else {
            Intension::Subconcept(Subconcept {
                root: root.clone(),
                bound: bound.clone(),
            })
        };
        let mut children = Vec::new();
        if free >= 2 {
            for j in 0..root.arity() {
                if bound[j].is_some() {
                    continue;
                }
                for e in &extents[j] {
                    let mut next = bound.clone();
                    next[j] = Some(e.clone());
                    children.push(grow(root, next, extents));
                }
            }
        }
        ConceptTree { concept, children }
    }
    Ok(grow(&root, vec![None; root.arity()], &extents))
}

/// The derived `union` of intensions of one arity.
pub fn union_concept(parts: impl IntoIterator<Item = Intension>) -> Result<Intension, ConceptError> {
    let set: BTreeSet<Intension> = parts.into_iter().collect();
    let arity = set.iter().next().ok_or(ConceptError::EmptyParts)?.arity();
    if set.iter().any(|p| p.arity() != arity) {
        return Err(ConceptError::MixedArity);
    }
    Ok(Intension::Union(UnionConcept {
        parts: set.into_iter().collect(),
        arity,
    }))
}

/// `‖u‖` for a relational concept used as a sort: the names of its
/// relational subconcepts together with `phrase v` for every unary leaf
/// subconcept `phrase:s` and every `v` in `‖s‖`.
pub fn derived_sort_extent(ws: &Workspace, u: &SortId) -> Result<BTreeSet<String>, ConceptError> {
    let kernel = ws.kernel();
    let concept = kernel
        .concept(u)
        .ok_or_else(|| KernelError::UnknownSort(u.clone()))?;
    if concept.arity() < 2 {
        return Err(KernelError::NotARelationalConcept(u.clone()).into());
    }
    let mut out = BTreeSet::new();
    let lattice = kernel.lattice();
    for sub in lattice.subsorts_of(u)? {
        if sub == *u || sub.is_reserved() {
            continue;
        }
        let Some(c) = kernel.concept(&sub) else { continue };
        if c.arity() >= 2 {
            out.insert(String::from(sub.as_str()));
            continue;
        }
        let is_leaf = lattice
            .subsorts_of(&sub)?
            .iter()
            .all(|s| *s == sub || s.is_reserved());
        if !is_leaf {
            continue;
        }
        for v in kernel.static_extent(&c.attribute_sorts[0])? {
            out.insert(alloc::format!("{} {}", sub, v));
        }
    }
    Ok(out)
}
