//! The PRP domain: sort names, concepts, the IS-A lattice and the finite set
//! of declared domain elements with their dynamic sorts.

mod element;
mod lattice;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

pub use element::{display_tuple, Element, Layer};
pub use lattice::SortLattice;

use crate::number::Number;

pub const TOP: &str = "everything";
pub const BOTTOM: &str = "empty set";
pub const TRUTH_VALUES: &str = "truth values";
pub const NESTED_SENTENCE: &str = "nested sentence";
pub const VERB_FORM: &str = "verb form";

/// Forms every `verb form` sort starts with.
pub const DEFAULT_VERB_FORMS: [&str; 4] = ["past", "present", "future", "gerund"];

/// A sort name. Sorts and concepts share one namespace.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SortId(Arc<str>);

impl SortId {
    pub fn new(name: &str) -> Self {
        SortId(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn top() -> Self {
        SortId::new(TOP)
    }

    pub fn bottom() -> Self {
        SortId::new(BOTTOM)
    }

    pub fn truth_values() -> Self {
        SortId::new(TRUTH_VALUES)
    }

    pub fn nested_sentence() -> Self {
        SortId::new(NESTED_SENTENCE)
    }

    pub fn is_nested_sentence(&self) -> bool {
        &*self.0 == NESTED_SENTENCE
    }

    pub fn is_reserved(&self) -> bool {
        matches!(&*self.0, TOP | BOTTOM | TRUTH_VALUES | NESTED_SENTENCE)
    }
}

impl fmt::Display for SortId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for SortId {
    fn from(s: &str) -> Self {
        SortId::new(s)
    }
}

/// A named concept `phrase:s1,...,sk`. The name doubles as a sort.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Concept {
    pub id: SortId,
    pub attribute_sorts: Vec<SortId>,
}

impl Concept {
    pub fn arity(&self) -> usize {
        self.attribute_sorts.len()
    }

    /// Index k of the layer D_k the concept inhabits.
    pub fn layer(&self) -> usize {
        self.arity()
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.id)?;
        for (i, s) in self.attribute_sorts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Built-in numeric sorts, recognised by name when declared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum NumericSort {
    Naturals,
    Integers,
    Rationals,
    Reals,
}

impl NumericSort {
    pub const TOWER: [NumericSort; 4] = [
        NumericSort::Naturals,
        NumericSort::Integers,
        NumericSort::Rationals,
        NumericSort::Reals,
    ];

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "naturals" => Some(NumericSort::Naturals),
            "integers" => Some(NumericSort::Integers),
            "rationals" => Some(NumericSort::Rationals),
            "reals" => Some(NumericSort::Reals),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NumericSort::Naturals => "naturals",
            NumericSort::Integers => "integers",
            NumericSort::Rationals => "rationals",
            NumericSort::Reals => "reals",
        }
    }

    pub fn accepts(self, n: &Number) -> bool {
        match self {
            NumericSort::Naturals => n.is_natural(),
            NumericSort::Integers => n.is_integer(),
            NumericSort::Rationals | NumericSort::Reals => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("duplicate name `{0}`")]
    DuplicateName(SortId),
    #[error("unknown sort `{0}`")]
    UnknownSort(SortId),
    #[error("unknown attribute sort `{0}`")]
    UnknownAttributeSort(SortId),
    #[error("`empty set` cannot be an attribute sort of `{0}`")]
    EmptySetAttribute(SortId),
    #[error("concept `{0}` declared with arity 0; arity 0 is reserved for propositions")]
    ZeroArityNonProposition(SortId),
    #[error("concept `{name}` declares arity {arity} but lists {given} attribute sorts")]
    AttributeCountMismatch { name: SortId, arity: usize, given: usize },
    #[error("adding `{sub}` ⊑ `{sup}` would create a cycle")]
    CycleDetected { sub: SortId, sup: SortId },
    #[error("sort `nested sentence` has no domain elements")]
    NestedSentenceSortHasNoElements,
    #[error("sort `{0}` has an infinite extent; declare a finite extent to enumerate it")]
    InfiniteExtent(SortId),
    #[error("particular `{0}` declared twice")]
    DuplicateParticular(String),
    #[error("`{0}` cannot name a particular")]
    InvalidLexeme(String),
    #[error("particular `{lexeme}` appears in extents of {sorts:?} with no least sort; declare its sort")]
    AmbiguousDynamicSort { lexeme: String, sorts: Vec<SortId> },
    #[error("extent of `{sort}` lists `{member}` whose sort `{found}` is not a subsort")]
    ExtentMemberOutsideSort { sort: SortId, member: String, found: SortId },
    #[error("`{0}` is not a relational concept")]
    NotARelationalConcept(SortId),
}

/// A member listed in an `extent` declaration.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExtentMember {
    Lexeme(Arc<str>),
    Number(Number),
}

impl ExtentMember {
    pub fn parse(text: &str) -> Self {
        match text.parse::<Number>() {
            Ok(n) => ExtentMember::Number(n),
            Err(_) => ExtentMember::Lexeme(Arc::from(text)),
        }
    }

    fn element(&self) -> Element {
        match self {
            ExtentMember::Lexeme(l) => Element::Particular(l.clone()),
            ExtentMember::Number(n) => Element::Number(*n),
        }
    }
}

/// Sorts, concepts, the IS-A lattice and the declared domain elements.
///
/// Declarations may arrive in any order; [`Kernel::finalize`] resolves the
/// dynamic sorts of particulars introduced only through extents and checks
/// the extents against the lattice.
#[derive(Clone, Debug)]
pub struct Kernel {
    lattice: SortLattice,
    concepts: BTreeMap<SortId, Concept>,
    concept_order: Vec<SortId>,
    numeric: BTreeMap<SortId, NumericSort>,
    declared_particulars: BTreeMap<Arc<str>, SortId>,
    extent_decls: BTreeMap<SortId, BTreeSet<ExtentMember>>,
    // Resolved by `finalize`.
    particulars: BTreeMap<Arc<str>, SortId>,
    extents: BTreeMap<SortId, BTreeSet<Element>>,
    universe: Vec<Element>,
}

impl Default for Kernel {
    fn default() -> Self {
        Self::new()
    }
}

impl Kernel {
    pub fn new() -> Self {
        let mut kernel = Kernel {
            lattice: SortLattice::new(),
            concepts: BTreeMap::new(),
            concept_order: Vec::new(),
            numeric: BTreeMap::new(),
            declared_particulars: BTreeMap::new(),
            extent_decls: BTreeMap::new(),
            particulars: BTreeMap::new(),
            extents: BTreeMap::new(),
            universe: Vec::new(),
        };
        for name in [TOP, BOTTOM, TRUTH_VALUES] {
            let id = SortId::new(name);
            kernel.concepts.insert(
                id.clone(),
                Concept {
                    id: id.clone(),
                    attribute_sorts: alloc::vec![id.clone()],
                },
            );
            kernel.concept_order.push(id);
        }
        kernel.rebuild_universe();
        kernel
    }

    pub fn lattice(&self) -> &SortLattice {
        &self.lattice
    }

    pub fn is_declared(&self, s: &SortId) -> bool {
        self.lattice.contains(s)
    }

    /// Registers `name:attribute_sorts` in layer D_arity. An attribute sort may
    /// name the concept itself, as in `reals:reals`.
    pub fn declare_sort(
        &mut self,
        name: &str,
        arity: usize,
        attribute_sorts: Vec<SortId>,
    ) -> Result<Concept, KernelError> {
        let id = SortId::new(name);
        if self.lattice.contains(&id) {
            return Err(KernelError::DuplicateName(id));
        }
        if arity == 0 {
            return Err(KernelError::ZeroArityNonProposition(id));
        }
        if attribute_sorts.len() != arity {
            return Err(KernelError::AttributeCountMismatch {
                name: id,
                arity,
                given: attribute_sorts.len(),
            });
        }
        for s in &attribute_sorts {
            if *s == SortId::bottom() {
                return Err(KernelError::EmptySetAttribute(id));
            }
            if *s != id && !s.is_nested_sentence() && !self.lattice.contains(s) {
                return Err(KernelError::UnknownAttributeSort(s.clone()));
            }
        }
        self.lattice.add_node(id.clone())?;
        if let Some(kind) = NumericSort::from_name(name) {
            if attribute_sorts == [id.clone()] {
                self.numeric.insert(id.clone(), kind);
            }
        }
        if name == VERB_FORM {
            let defaults = self.extent_decls.entry(id.clone()).or_default();
            for form in DEFAULT_VERB_FORMS {
                defaults.insert(ExtentMember::Lexeme(Arc::from(form)));
            }
        }
        let concept = Concept {
            id: id.clone(),
            attribute_sorts,
        };
        self.concepts.insert(id.clone(), concept.clone());
        self.concept_order.push(id);
        Ok(concept)
    }

    /// Shorthand for a basic unary sort `name:name`.
    pub fn declare_basic_sort(&mut self, name: &str) -> Result<Concept, KernelError> {
        self.declare_sort(name, 1, alloc::vec![SortId::new(name)])
    }

    pub fn declare_isa(&mut self, sub: &SortId, sup: &SortId) -> Result<(), KernelError> {
        self.lattice.add_edge(sub, sup)
    }

    pub fn is_subsort(&self, sub: &SortId, sup: &SortId) -> Result<bool, KernelError> {
        self.lattice.is_subsort(sub, sup)
    }

    pub fn concept(&self, id: &SortId) -> Option<&Concept> {
        self.concepts.get(id)
    }

    pub(crate) fn replace_concept(&mut self, concept: Concept) {
        self.concepts.insert(concept.id.clone(), concept);
    }

    /// Declared concepts in declaration order, reserved ones first.
    pub fn concepts(&self) -> impl Iterator<Item = &Concept> {
        self.concept_order.iter().map(|id| &self.concepts[id])
    }

    pub fn numeric_sort(&self, s: &SortId) -> Option<NumericSort> {
        self.numeric.get(s).copied()
    }

    /// Declares a particular and its dynamic sort.
    pub fn declare_particular(&mut self, lexeme: &str, sort: &SortId) -> Result<(), KernelError> {
        check_lexeme(lexeme)?;
        if !self.lattice.contains(sort) {
            return Err(KernelError::UnknownSort(sort.clone()));
        }
        if sort.is_nested_sentence() || *sort == SortId::bottom() {
            return Err(KernelError::InvalidLexeme(lexeme.into()));
        }
        if self.declared_particulars.contains_key(lexeme) {
            return Err(KernelError::DuplicateParticular(lexeme.into()));
        }
        self.declared_particulars.insert(Arc::from(lexeme), sort.clone());
        Ok(())
    }

    /// Adds members to the declared (finite) extent of `sort`.
    pub fn declare_extent(
        &mut self,
        sort: &SortId,
        members: impl IntoIterator<Item = ExtentMember>,
    ) -> Result<(), KernelError> {
        if !self.lattice.contains(sort) {
            return Err(KernelError::UnknownSort(sort.clone()));
        }
        if sort.is_nested_sentence() {
            return Err(KernelError::NestedSentenceSortHasNoElements);
        }
        let members: Vec<ExtentMember> = members.into_iter().collect();
        for m in &members {
            if let ExtentMember::Lexeme(l) = m {
                check_lexeme(l)?;
            }
        }
        self.extent_decls.entry(sort.clone()).or_default().extend(members);
        Ok(())
    }

    pub fn has_declared_extent(&self, s: &SortId) -> bool {
        self.extent_decls.contains_key(s)
    }

    /// Explicitly declared particulars with their sorts.
    pub fn declared_particulars(&self) -> impl Iterator<Item = (&str, &SortId)> {
        self.declared_particulars.iter().map(|(k, v)| (&**k, v))
    }

    /// Raw extent declarations, for rendering a workspace back to text.
    pub fn extent_declarations(&self) -> impl Iterator<Item = (&SortId, &BTreeSet<ExtentMember>)> {
        self.extent_decls.iter()
    }

    /// Resolves dynamic sorts of particulars that appear only in extents and
    /// validates every extent against the lattice.
    pub fn finalize(&mut self) -> Result<(), Vec<KernelError>> {
        let mut errors = Vec::new();
        let mut particulars = self.declared_particulars.clone();
        let mut listed: BTreeMap<Arc<str>, Vec<SortId>> = BTreeMap::new();
        for (sort, members) in &self.extent_decls {
            for m in members {
                if let ExtentMember::Lexeme(l) = m {
                    listed.entry(l.clone()).or_default().push(sort.clone());
                }
            }
        }
        let mut ambiguous = BTreeSet::new();
        for (lexeme, sorts) in listed {
            if particulars.contains_key(&lexeme) {
                continue;
            }
            match self.lattice.least(&sorts) {
                Some(s) => {
                    particulars.insert(lexeme, s);
                }
                None => {
                    ambiguous.insert(Element::Particular(lexeme.clone()));
                    errors.push(KernelError::AmbiguousDynamicSort {
                        lexeme: String::from(&*lexeme),
                        sorts,
                    });
                }
            }
        }
        self.particulars = particulars;

        let mut extents = BTreeMap::new();
        for (sort, members) in &self.extent_decls {
            let set: BTreeSet<Element> = members.iter().map(ExtentMember::element).collect();
            for e in set.iter().filter(|e| !ambiguous.contains(*e)) {
                let found = self.dynamic_sort(e);
                if !self.lattice.is_subsort(&found, sort).unwrap_or(false) {
                    errors.push(KernelError::ExtentMemberOutsideSort {
                        sort: sort.clone(),
                        member: e.lexeme(),
                        found,
                    });
                }
            }
            extents.insert(sort.clone(), set);
        }
        self.extents = extents;
        self.rebuild_universe();
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }

    fn rebuild_universe(&mut self) {
        let mut all: BTreeSet<Element> = BTreeSet::new();
        all.insert(Element::Truth(false));
        all.insert(Element::Truth(true));
        for lexeme in self.particulars.keys() {
            all.insert(Element::Particular(lexeme.clone()));
        }
        for members in self.extents.values() {
            all.extend(members.iter().cloned());
        }
        self.universe = all.into_iter().collect();
    }

    /// Every declared domain element: the finite part of D the engine ranges over.
    pub fn universe(&self) -> &[Element] {
        &self.universe
    }

    /// The resolved dynamic sort of a particular, if it is declared.
    pub fn particular_sort(&self, lexeme: &str) -> Option<&SortId> {
        self.particulars.get(lexeme)
    }

    /// The least declared numeric sort containing `n`.
    pub fn number_sort(&self, n: &Number) -> SortId {
        NumericSort::TOWER
            .iter()
            .find(|k| k.accepts(n) && self.lattice.contains(&SortId::new(k.name())))
            .map(|k| SortId::new(k.name()))
            .unwrap_or_else(SortId::top)
    }

    /// δ(u): the unique dynamic sort of a domain element.
    pub fn dynamic_sort(&self, e: &Element) -> SortId {
        match e {
            Element::Truth(_) => SortId::truth_values(),
            Element::Number(n) => self.number_sort(n),
            Element::Particular(l) => self.particulars.get(l).cloned().unwrap_or_else(SortId::top),
            Element::Concept(c) => c.dynamic_sort(),
        }
    }

    /// D_s = { u | δ(u) ⊑ s } over the declared elements.
    pub fn valid_elements(&self, s: &SortId) -> Result<Vec<Element>, KernelError> {
        if s.is_nested_sentence() {
            return Err(KernelError::NestedSentenceSortHasNoElements);
        }
        if !self.lattice.contains(s) {
            return Err(KernelError::UnknownSort(s.clone()));
        }
        if self.numeric.contains_key(s) && !self.extents.contains_key(s) {
            return Err(KernelError::InfiniteExtent(s.clone()));
        }
        Ok(self
            .universe
            .iter()
            .filter(|e| self.lattice.is_subsort(&self.dynamic_sort(e), s).unwrap_or(false))
            .cloned()
            .collect())
    }

    /// ‖s‖ for sorts whose extent does not vary between worlds: the declared
    /// extent, `{f, t}` for truth values, and D_s otherwise.
    pub fn static_extent(&self, s: &SortId) -> Result<Vec<Element>, KernelError> {
        if let Some(set) = self.extents.get(s) {
            return Ok(set.iter().cloned().collect());
        }
        if *s == SortId::truth_values() {
            return Ok(alloc::vec![Element::Truth(false), Element::Truth(true)]);
        }
        self.valid_elements(s)
    }

    /// Whether D_s is finite, i.e. `valid_elements` succeeds.
    pub fn is_finite(&self, s: &SortId) -> bool {
        !s.is_nested_sentence() && !(self.numeric.contains_key(s) && !self.extents.contains_key(s))
    }
}

fn check_lexeme(lexeme: &str) -> Result<(), KernelError> {
    if lexeme.is_empty() || lexeme == "t" || lexeme == "f" || lexeme.parse::<Number>().is_ok() {
        return Err(KernelError::InvalidLexeme(lexeme.into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn s(name: &str) -> SortId {
        SortId::new(name)
    }

    #[test]
    fn declare_sort_examples() {
        let mut k = Kernel::new();
        k.declare_basic_sort("kind of animals").unwrap();
        k.declare_basic_sort("hairness").unwrap();
        let animal = k
            .declare_sort("animal", 2, vec![s("kind of animals"), s("hairness")])
            .unwrap();
        assert_eq!(animal.layer(), 2);
        assert_eq!(animal.to_string(), "animal:kind of animals,hairness");

        assert_eq!(
            k.declare_sort("everything", 1, vec![s("everything")]),
            Err(KernelError::DuplicateName(s("everything")))
        );
        let reals = k.declare_sort("reals", 1, vec![s("reals")]).unwrap();
        assert_eq!(reals.arity(), 1);
        assert_eq!(k.numeric_sort(&s("reals")), Some(NumericSort::Reals));

        assert!(matches!(
            k.declare_sort("p", 0, vec![]),
            Err(KernelError::ZeroArityNonProposition(_))
        ));
        assert!(matches!(
            k.declare_sort("q", 1, vec![s("unknown")]),
            Err(KernelError::UnknownAttributeSort(_))
        ));
        assert!(matches!(
            k.declare_sort("r", 1, vec![s(BOTTOM)]),
            Err(KernelError::EmptySetAttribute(_))
        ));
        assert!(matches!(
            k.declare_sort("r", 2, vec![s("reals")]),
            Err(KernelError::AttributeCountMismatch { .. })
        ));
        k.declare_sort("told", 2, vec![s("hairness"), s(NESTED_SENTENCE)]).unwrap();
    }

    #[test]
    fn isa_examples() {
        let mut k = Kernel::new();
        for n in ["cat", "animal", "dog", "naturals", "integers", "rationals", "reals"] {
            k.declare_basic_sort(n).unwrap();
        }
        k.declare_isa(&s("cat"), &s("animal")).unwrap();
        k.declare_isa(&s("integers"), &s("rationals")).unwrap();
        assert!(matches!(
            k.declare_isa(&s("animal"), &s("cat")),
            Err(KernelError::CycleDetected { .. })
        ));
        assert!(matches!(
            k.declare_isa(&s("cow"), &s("cat")),
            Err(KernelError::UnknownSort(_))
        ));
        k.declare_isa(&s("naturals"), &s("integers")).unwrap();
        k.declare_isa(&s("rationals"), &s("reals")).unwrap();
        assert!(k.is_subsort(&s("cat"), &s("cat")).unwrap());
        assert!(k.is_subsort(&s("integers"), &s("reals")).unwrap());
        assert!(!k.is_subsort(&s("cat"), &s("dog")).unwrap());
    }

    fn toy() -> Kernel {
        let mut k = Kernel::new();
        for n in ["animal", "cat", "dog"] {
            k.declare_basic_sort(n).unwrap();
        }
        k.declare_isa(&s("cat"), &s("animal")).unwrap();
        k.declare_isa(&s("dog"), &s("animal")).unwrap();
        k.declare_particular("tom", &s("cat")).unwrap();
        k.declare_extent(&s("dog"), [ExtentMember::parse("rex")]).unwrap();
        k.finalize().unwrap();
        k
    }

    #[test]
    fn valid_elements_examples() {
        let k = toy();
        let animals = k.valid_elements(&s("animal")).unwrap();
        assert_eq!(animals, vec![Element::particular("rex"), Element::particular("tom")]);
        assert!(k.valid_elements(&s(BOTTOM)).unwrap().is_empty());
        assert_eq!(
            k.valid_elements(&s(NESTED_SENTENCE)),
            Err(KernelError::NestedSentenceSortHasNoElements)
        );
        assert!(matches!(k.valid_elements(&s("cow")), Err(KernelError::UnknownSort(_))));
        assert_eq!(k.dynamic_sort(&Element::particular("rex")), s("dog"));
        // Everything is every declared element, truth values included.
        assert_eq!(k.valid_elements(&s(TOP)).unwrap().len(), 4);
    }

    #[test]
    fn rationals_world() {
        let mut k = Kernel::new();
        k.declare_basic_sort("integers").unwrap();
        k.declare_basic_sort("rationals").unwrap();
        k.declare_isa(&s("integers"), &s("rationals")).unwrap();
        let members = ["-1", "0", "1", "0.5", "2"].map(ExtentMember::parse);
        k.declare_extent(&s("rationals"), members).unwrap();
        k.finalize().unwrap();
        let q = k.valid_elements(&s("rationals")).unwrap();
        assert_eq!(q.len(), 5);
        for e in &q {
            let n = e.as_number().unwrap();
            let expected = if n.is_integer() { "integers" } else { "rationals" };
            assert_eq!(k.dynamic_sort(e), s(expected));
        }
        // The integers have no finite extent of their own.
        assert_eq!(
            k.valid_elements(&s("integers")),
            Err(KernelError::InfiniteExtent(s("integers")))
        );
    }

    #[test]
    fn extent_resolution() {
        let mut k = Kernel::new();
        for n in ["a", "b", "c"] {
            k.declare_basic_sort(n).unwrap();
        }
        k.declare_isa(&s("a"), &s("c")).unwrap();
        k.declare_extent(&s("a"), [ExtentMember::parse("x")]).unwrap();
        k.declare_extent(&s("c"), [ExtentMember::parse("x")]).unwrap();
        k.declare_extent(&s("b"), [ExtentMember::parse("y")]).unwrap();
        k.declare_extent(&s("c"), [ExtentMember::parse("y")]).unwrap();
        let errors = k.finalize().unwrap_err();
        // x resolves to `a`; y is listed under incomparable `b` and `c`.
        assert_eq!(errors.len(), 1);
        assert!(matches!(&errors[0], KernelError::AmbiguousDynamicSort { lexeme, .. } if lexeme == "y"));
        assert_eq!(k.particular_sort("x"), Some(&s("a")));

        let mut k = Kernel::new();
        k.declare_basic_sort("pets").unwrap();
        k.declare_basic_sort("cat").unwrap();
        k.declare_particular("tom", &s("cat")).unwrap();
        k.declare_extent(&s("pets"), [ExtentMember::parse("tom")]).unwrap();
        let errors = k.finalize().unwrap_err();
        assert!(matches!(&errors[0], KernelError::ExtentMemberOutsideSort { .. }));
    }

    #[test]
    fn verb_forms_and_reserved_lexemes() {
        let mut k = Kernel::new();
        k.declare_basic_sort(VERB_FORM).unwrap();
        k.declare_extent(&s(VERB_FORM), [ExtentMember::parse("perfect")]).unwrap();
        k.finalize().unwrap();
        assert_eq!(k.valid_elements(&s(VERB_FORM)).unwrap().len(), 5);
        assert!(matches!(
            k.declare_particular("t", &s(VERB_FORM)),
            Err(KernelError::InvalidLexeme(_))
        ));
        assert!(matches!(
            k.declare_particular("2", &s(VERB_FORM)),
            Err(KernelError::InvalidLexeme(_))
        ));
    }
}
