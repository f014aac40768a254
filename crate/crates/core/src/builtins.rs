//! Decidable evaluators for computed functions and predicates.

use crate::kernel::Element;
use crate::number::Number;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BuiltinFunction {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Square,
}

impl BuiltinFunction {
    pub const ALL: [BuiltinFunction; 6] = [
        BuiltinFunction::Add,
        BuiltinFunction::Sub,
        BuiltinFunction::Mul,
        BuiltinFunction::Div,
        BuiltinFunction::Neg,
        BuiltinFunction::Square,
    ];

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            BuiltinFunction::Add => "add",
            BuiltinFunction::Sub => "sub",
            BuiltinFunction::Mul => "mul",
            BuiltinFunction::Div => "div",
            BuiltinFunction::Neg => "neg",
            BuiltinFunction::Square => "square",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            BuiltinFunction::Neg | BuiltinFunction::Square => 1,
            _ => 2,
        }
    }

    /// `None` on a non-numeric argument, division by zero or overflow.
    pub fn apply(self, args: &[Element]) -> Option<Element> {
        if args.len() != self.arity() {
            return None;
        }
        let a = args[0].as_number()?;
        let b = args.get(1).map(|e| e.as_number()).unwrap_or(Some(a))?;
        let n: Number = match self {
            BuiltinFunction::Add => a.checked_add(b)?,
            BuiltinFunction::Sub => a.checked_sub(b)?,
            BuiltinFunction::Mul => a.checked_mul(b)?,
            BuiltinFunction::Div => a.checked_div(b)?,
            BuiltinFunction::Neg => a.checked_neg()?,
            BuiltinFunction::Square => a.checked_mul(a)?,
        };
        Some(Element::Number(n))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BuiltinPredicate {
    /// The 0-ary tautology ⊤.
    True,
    Leq,
    Lt,
    Geq,
    Gt,
    Eq,
}

impl BuiltinPredicate {
    pub const ALL: [BuiltinPredicate; 6] = [
        BuiltinPredicate::True,
        BuiltinPredicate::Leq,
        BuiltinPredicate::Lt,
        BuiltinPredicate::Geq,
        BuiltinPredicate::Gt,
        BuiltinPredicate::Eq,
    ];

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            BuiltinPredicate::True => "true",
            BuiltinPredicate::Leq => "leq",
            BuiltinPredicate::Lt => "lt",
            BuiltinPredicate::Geq => "geq",
            BuiltinPredicate::Gt => "gt",
            BuiltinPredicate::Eq => "eq",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            BuiltinPredicate::True => 0,
            _ => 2,
        }
    }

    /// `None` when an order comparison gets a non-numeric argument.
    pub fn holds(self, args: &[Element]) -> Option<bool> {
        if args.len() != self.arity() {
            return None;
        }
        if self == BuiltinPredicate::True {
            return Some(true);
        }
        if self == BuiltinPredicate::Eq {
            return Some(args[0] == args[1]);
        }
        let a = args[0].as_number()?;
        let b = args[1].as_number()?;
        Some(match self {
            BuiltinPredicate::Leq => a <= b,
            BuiltinPredicate::Lt => a < b,
            BuiltinPredicate::Geq => a >= b,
            BuiltinPredicate::Gt => a > b,
            BuiltinPredicate::True | BuiltinPredicate::Eq => unreachable!(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> Element {
        Element::from(s)
    }

    #[test]
    fn arithmetic() {
        assert_eq!(BuiltinFunction::Div.apply(&[n("2"), n("2")]), Some(n("1")));
        assert_eq!(BuiltinFunction::Div.apply(&[n("2"), n("0")]), None);
        assert_eq!(BuiltinFunction::Square.apply(&[n("-2")]), Some(n("4")));
        assert_eq!(BuiltinFunction::Sub.apply(&[n("0.5"), n("1")]), Some(n("-0.5")));
        assert_eq!(BuiltinFunction::Add.apply(&[n("tom"), n("1")]), None);
    }

    #[test]
    fn comparisons() {
        // 1² + 1² + 1² ≤ 2²
        assert_eq!(BuiltinPredicate::Leq.holds(&[n("3"), n("4")]), Some(true));
        assert_eq!(BuiltinPredicate::Lt.holds(&[n("4"), n("4")]), Some(false));
        assert_eq!(BuiltinPredicate::Eq.holds(&[n("tom"), n("tom")]), Some(true));
        assert_eq!(BuiltinPredicate::Leq.holds(&[n("tom"), n("1")]), None);
        assert_eq!(BuiltinPredicate::True.holds(&[]), Some(true));
    }
}
