//! The loaded unit: kernel, signature and predicate-concept registry.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::builtins::{BuiltinFunction, BuiltinPredicate};
use crate::concepts::{self, ConceptError, Intension, Registry};
use crate::kernel::{Concept, Element, ExtentMember, Kernel, KernelError, SortId};
use crate::sorting::{self, FunctionDecl, PredicateDecl, PredicateKind, Signature, SortError};
use crate::syntax::{Formula, SyntaxError, Term, Variable};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WorkspaceError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Concept(#[from] ConceptError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("symbol `{0}` is already declared")]
    DuplicateSymbol(String),
    #[error("variable `{0}` is already declared")]
    DuplicateVariable(String),
    #[error("evaluator `{evaluator}` takes {expected} arguments, `{symbol}` declares {found}")]
    EvaluatorArity {
        symbol: String,
        evaluator: String,
        expected: usize,
        found: usize,
    },
    #[error("`{sub}` ⊑ `{sup}` but `{member}` is in the extent of `{sub}` only")]
    IsaExtentViolation { sub: SortId, sup: SortId, member: String },
    #[error("{}", .0.iter().map(|e| alloc::format!("{e}")).collect::<Vec<_>>().join("; "))]
    Sort(Vec<SortError>),
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    kernel: Kernel,
    signature: Signature,
    registry: Registry,
    vars: BTreeMap<Arc<str>, SortId>,
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    /// A basic unary sort `name:name`.
    pub fn declare_sort(&mut self, name: &str) -> Result<Concept, WorkspaceError> {
        Ok(self.kernel.declare_basic_sort(name)?)
    }

    /// A concept `phrase:s1,...,sk`, optionally in bijection with a predicate
    /// symbol.
    pub fn declare_concept(
        &mut self,
        phrase: &str,
        sorts: Vec<SortId>,
        predicate: Option<&str>,
    ) -> Result<Concept, WorkspaceError> {
        if let Some(p) = predicate {
            if self.signature.has_symbol(p) {
                return Err(WorkspaceError::DuplicateSymbol(p.into()));
            }
        }
        let concept = self.kernel.declare_sort(phrase, sorts.len(), sorts.clone())?;
        if let Some(p) = predicate {
            self.registry.register(p, &concept.id)?;
            self.signature.insert_predicate(PredicateDecl {
                name: Arc::from(p),
                sorts,
                kind: PredicateKind::Concept(concept.id.clone()),
            });
        }
        Ok(concept)
    }

    pub fn declare_isa(&mut self, sub: &SortId, sup: &SortId) -> Result<(), WorkspaceError> {
        Ok(self.kernel.declare_isa(sub, sup)?)
    }

    pub fn declare_particular(&mut self, lexeme: &str, sort: &SortId) -> Result<(), WorkspaceError> {
        Ok(self.kernel.declare_particular(lexeme, sort)?)
    }

    pub fn declare_extent(
        &mut self,
        sort: &SortId,
        members: impl IntoIterator<Item = ExtentMember>,
    ) -> Result<(), WorkspaceError> {
        Ok(self.kernel.declare_extent(sort, members)?)
    }

    fn check_sorts_declared(&self, sorts: &[SortId]) -> Result<(), WorkspaceError> {
        for s in sorts {
            if !s.is_nested_sentence() && !self.kernel.is_declared(s) {
                return Err(KernelError::UnknownSort(s.clone()).into());
            }
        }
        Ok(())
    }

    pub fn declare_function(
        &mut self,
        name: &str,
        args: Vec<SortId>,
        ret: SortId,
        evaluator: Option<BuiltinFunction>,
    ) -> Result<(), WorkspaceError> {
        if self.signature.has_symbol(name) {
            return Err(WorkspaceError::DuplicateSymbol(name.into()));
        }
        self.check_sorts_declared(&args)?;
        self.check_sorts_declared(core::slice::from_ref(&ret))?;
        if let Some(e) = evaluator {
            if e.arity() != args.len() {
                return Err(WorkspaceError::EvaluatorArity {
                    symbol: name.into(),
                    evaluator: e.name().into(),
                    expected: e.arity(),
                    found: args.len(),
                });
            }
        }
        self.signature.insert_function(FunctionDecl {
            name: Arc::from(name),
            args,
            ret,
            evaluator,
        });
        Ok(())
    }

    pub fn declare_builtin_predicate(
        &mut self,
        name: &str,
        sorts: Vec<SortId>,
        evaluator: BuiltinPredicate,
    ) -> Result<(), WorkspaceError> {
        if self.signature.has_symbol(name) {
            return Err(WorkspaceError::DuplicateSymbol(name.into()));
        }
        self.check_sorts_declared(&sorts)?;
        if evaluator.arity() != sorts.len() {
            return Err(WorkspaceError::EvaluatorArity {
                symbol: name.into(),
                evaluator: evaluator.name().into(),
                expected: evaluator.arity(),
                found: sorts.len(),
            });
        }
        self.signature.insert_predicate(PredicateDecl {
            name: Arc::from(name),
            sorts,
            kind: PredicateKind::Builtin(evaluator),
        });
        Ok(())
    }

    /// A global variable declaration `var x : s`.
    pub fn declare_var(&mut self, name: &str, sort: &SortId) -> Result<Variable, WorkspaceError> {
        if self.vars.contains_key(name) {
            return Err(WorkspaceError::DuplicateVariable(name.into()));
        }
        self.check_sorts_declared(core::slice::from_ref(sort))?;
        if sort.is_nested_sentence() {
            return Err(SortError::NestedSentenceVariable(name.into()).into_workspace());
        }
        self.vars.insert(Arc::from(name), sort.clone());
        Ok(Variable::new(name, sort.clone()))
    }

    pub fn var(&self, name: &str) -> Option<Variable> {
        self.vars.get(name).map(|s| Variable::new(name, s.clone()))
    }

    pub fn vars(&self) -> impl Iterator<Item = Variable> + '_ {
        self.vars.iter().map(|(n, s)| Variable::new(n, s.clone()))
    }

    /// Appends an attribute to a predicate-concept and its predicate. Its
    /// canonical subconcepts see the new attribute; other concepts do not.
    pub fn add_attribute_sort(&mut self, predicate: &str, sort: &SortId) -> Result<(), WorkspaceError> {
        let id = self
            .registry
            .concept_of(predicate)
            .cloned()
            .ok_or_else(|| ConceptError::UnregisteredPredicate(predicate.into()))?;
        if *sort == SortId::bottom() {
            return Err(KernelError::EmptySetAttribute(id).into());
        }
        self.check_sorts_declared(core::slice::from_ref(sort))?;
        let mut concept = self.kernel.concept(&id).expect("registered").clone();
        concept.attribute_sorts.push(sort.clone());
        self.kernel.replace_concept(concept);
        if let Some(decl) = self.signature.predicate_mut(predicate) {
            decl.sorts.push(sort.clone());
        }
        Ok(())
    }

    /// Resolves the kernel and checks that unary sorts with fixed extents
    /// respect IS-A inclusion.
    pub fn finalize(&mut self) -> Result<(), Vec<WorkspaceError>> {
        self.kernel
            .finalize()
            .map_err(|errs| errs.into_iter().map(WorkspaceError::from).collect::<Vec<_>>())?;
        let mut errors = Vec::new();
        for (sub, sup) in self.isa_pairs() {
            if self.is_world_dependent(&sub) || self.is_world_dependent(&sup) {
                continue;
            }
            let (Ok(a), Ok(b)) = (self.kernel.static_extent(&sub), self.kernel.static_extent(&sup)) else {
                continue;
            };
            if let Some(e) = a.iter().find(|e| !b.contains(e)) {
                errors.push(WorkspaceError::IsaExtentViolation {
                    sub: sub.clone(),
                    sup: sup.clone(),
                    member: e.lexeme(),
                });
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }

    /// Strict pairs `sub ⊑ sup` between declared unary sorts, excluding the
    /// lattice bounds.
    pub fn isa_pairs(&self) -> Vec<(SortId, SortId)> {
        let lattice = self.kernel.lattice();
        let unary: Vec<&SortId> = lattice
            .nodes()
            .filter(|s| {
                *s != &SortId::top()
                    && *s != &SortId::bottom()
                    && self.kernel.concept(s).map(|c| c.arity() == 1).unwrap_or(false)
            })
            .collect();
        let mut out = Vec::new();
        for a in &unary {
            for b in &unary {
                if a != b && lattice.is_subsort(a, b).unwrap_or(false) {
                    out.push(((*a).clone(), (*b).clone()));
                }
            }
        }
        out
    }

    /// A unary predicate-concept, whose extent is given by each world.
    pub fn is_world_dependent(&self, s: &SortId) -> bool {
        self.registry.predicate_of(s).is_some() && self.kernel.concept(s).map(|c| c.arity() == 1).unwrap_or(false)
    }

    pub fn check_formula(&self, phi: &Formula) -> Result<(), Vec<SortError>> {
        sorting::check_formula(self, phi)
    }

    /// φ[x/t], refusing terms whose static sort is not below Ϝ(x).
    pub fn substitute(&self, phi: &Formula, x: &Variable, t: &Term) -> Result<Formula, WorkspaceError> {
        sorting::check_term(self, t, &x.sort).map_err(WorkspaceError::Sort)?;
        Ok(phi.substitute(x, t)?)
    }

    pub fn interpret(&self, phi: &Formula) -> Intension {
        concepts::interpret(phi, self)
    }

    pub fn canonical_subconcept(
        &self,
        predicate: &str,
        partial: &BTreeMap<usize, Element>,
    ) -> Result<concepts::Subconcept, ConceptError> {
        concepts::canonical_subconcept(self, predicate, partial)
    }
}

impl SortError {
    fn into_workspace(self) -> WorkspaceError {
        WorkspaceError::Sort(alloc::vec![self])
    }
}
