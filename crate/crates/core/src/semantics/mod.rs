//! Possible worlds and the extensional semantics: term evaluation, Kripke
//! satisfaction, an independent Tarski evaluator, the algebraic extension of
//! concepts, Montague intensions and logical consequence.

mod algebra;
mod consequence;
mod eval;
mod kripke;
mod tarski;
mod world;

pub use algebra::extension;
pub use consequence::{
    bealer_montague_check, consequence, counterexample_in, is_model, montague_intension, Countermodel,
    Mismatch, Verdict,
};
pub use eval::{atom_holds, dynamic_soundness, eval_atom, eval_term, AtomValue, SoundnessViolation};
pub use kripke::KripkeModel;
pub use tarski::Tarski;
pub use world::{enumerate_worlds, validate_world, Enumeration, World, WorldViolation, DEFAULT_WORLD_CAP};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::concepts::ConceptError;
use crate::kernel::{Element, KernelError, SortId};
use crate::syntax::{Assignment, SyntaxError, Variable};
use crate::workspace::Workspace;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("sort `{0}` has an infinite extent; declare a finite extent")]
    InfiniteExtent(SortId),
    #[error("hidden variables range over `{0}`, which has no finite extent")]
    InfiniteHiddenDomain(SortId),
    #[error("{candidates} candidate worlds exceed the cap of {cap}")]
    ExplosionGuard { candidates: u128, cap: u128 },
    #[error("variable `{0}` is unassigned")]
    UnboundVariable(String),
    #[error("`{function}` is undefined at {args}")]
    FunctionUndefinedAt { function: String, args: String },
    #[error("`{symbol}` cannot be evaluated at {args}")]
    EvaluationFailure { symbol: String, args: String },
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error(transparent)]
    Concept(#[from] ConceptError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

fn range_error(e: KernelError) -> SemanticsError {
    match e {
        KernelError::InfiniteExtent(s) => SemanticsError::InfiniteExtent(s),
        other => SemanticsError::Kernel(other),
    }
}

/// D_s for every declared sort, computed once per workspace.
#[derive(Clone, Debug)]
pub struct Ranges {
    map: BTreeMap<SortId, Result<Vec<Element>, SemanticsError>>,
}

impl Ranges {
    pub fn new(ws: &Workspace) -> Self {
        let map = ws
            .kernel()
            .lattice()
            .nodes()
            .map(|s| (s.clone(), ws.kernel().valid_elements(s).map_err(range_error)))
            .collect();
        Ranges { map }
    }

    pub fn get(&self, s: &SortId) -> Result<&[Element], SemanticsError> {
        match self.map.get(s) {
            Some(Ok(v)) => Ok(v),
            Some(Err(e)) => Err(e.clone()),
            None if s.is_nested_sentence() => Err(KernelError::NestedSentenceSortHasNoElements.into()),
            None => Err(KernelError::UnknownSort(s.clone()).into()),
        }
    }
}

/// Every many-sorted assignment to `vars`, in lexicographic order of values.
pub fn assignments(ranges: &Ranges, vars: &[Variable]) -> Result<Vec<Assignment>, SemanticsError> {
    let domains: Vec<&[Element]> = vars.iter().map(|v| ranges.get(&v.sort)).collect::<Result<_, _>>()?;
    Ok(product(&domains)
        .into_iter()
        .map(|values| vars.iter().cloned().zip(values).collect())
        .collect())
}

/// Cartesian product of the domains, first domain varying slowest.
pub fn product(domains: &[&[Element]]) -> Vec<Vec<Element>> {
    let mut out = Vec::new();
    if domains.iter().any(|d| d.is_empty()) {
        return out;
    }
    let mut idx = alloc::vec![0usize; domains.len()];
    loop {
        out.push(idx.iter().zip(domains).map(|(&i, d)| d[i].clone()).collect());
        let mut k = domains.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < domains[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}
