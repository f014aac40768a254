//! A many-sorted intensional first-order logic over finite PRP domains.
//!
//! Formulas are interpreted twice: intensionally, by [`concepts::interpret`],
//! into concepts of the PRP domain, and extensionally in each possible world
//! (an extensionalization of those concepts). [`semantics`] evaluates them in
//! enumerated worlds under Kripke and Tarski semantics and decides logical
//! consequence.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod builtins;
pub mod concepts;
pub mod kernel;
pub mod number;
pub mod semantics;
pub mod sorting;
pub mod syntax;
pub mod workspace;

pub use concepts::Intension;
pub use kernel::{Element, SortId};
pub use number::Number;
pub use syntax::{Assignment, Formula, Term, Variable};
pub use workspace::Workspace;
