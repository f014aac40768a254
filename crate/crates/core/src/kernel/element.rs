use alloc::string::{String, ToString};
use alloc::sync::Arc;
use core::fmt;

use crate::concepts::Intension;
use crate::number::Number;

/// A member of the PRP domain.
///
/// Truth values, numbers and named particulars live in the particulars layer;
/// `Concept` holds an intensional entity whose layer is its arity (0 for
/// propositions).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Truth(bool),
    Number(Number),
    Particular(Arc<str>),
    Concept(Arc<Intension>),
}

/// Which disjoint part of the domain an element inhabits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Layer {
    Particulars,
    /// `Relations(0)` holds propositions, `Relations(k)` k-ary concepts.
    Relations(usize),
}

impl Element {
    pub fn particular(lexeme: &str) -> Self {
        Element::Particular(Arc::from(lexeme))
    }

    pub fn number(n: Number) -> Self {
        Element::Number(n)
    }

    pub fn concept(intension: Intension) -> Self {
        Element::Concept(Arc::new(intension))
    }

    pub fn layer(&self) -> Layer {
        match self {
            Element::Truth(_) | Element::Number(_) | Element::Particular(_) => Layer::Particulars,
            Element::Concept(c) => Layer::Relations(c.arity()),
        }
    }

    pub fn as_number(&self) -> Option<&Number> {
        match self {
            Element::Number(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_intension(&self) -> Option<&Intension> {
        match self {
            Element::Concept(c) => Some(c),
            _ => None,
        }
    }

    /// The text a constant denoting this element is written with. Concepts
    /// have no constant; their rendered name is returned instead.
    pub fn lexeme(&self) -> String {
        self.to_string()
    }

    /// Whether a constant symbol can denote this element.
    pub fn is_nameable(&self) -> bool {
        !matches!(self, Element::Concept(_))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Truth(false) => f.write_str("f"),
            Element::Truth(true) => f.write_str("t"),
            Element::Number(n) => write!(f, "{n}"),
            Element::Particular(p) => f.write_str(p),
            Element::Concept(c) => write!(f, "{}", c.name()),
        }
    }
}

impl From<Number> for Element {
    fn from(n: Number) -> Self {
        Element::Number(n)
    }
}

impl From<&str> for Element {
    fn from(lexeme: &str) -> Self {
        match lexeme {
            "t" => Element::Truth(true),
            "f" => Element::Truth(false),
            _ => match lexeme.parse::<Number>() {
                Ok(n) => Element::Number(n),
                Err(_) => Element::Particular(Arc::from(lexeme)),
            },
        }
    }
}

/// Text shown for an element inside rendered tuples.
pub fn display_tuple(tuple: &[Element]) -> String {
    let mut out = String::from("(");
    for (i, e) in tuple.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&e.to_string());
    }
    out.push(')');
    out
}
