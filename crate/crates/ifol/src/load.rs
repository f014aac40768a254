//! Workspace files: one declaration per line, `#` comments.
//!
//! ```text
//! sort <name> [isa <name>]
//! concept <phrase> arity <k> sorts <s1> ... <sk> [predicate <p>]
//! isa <sub> <super>
//! particular <lexeme> : <sort>
//! extent <sort> = { <lexeme>, <n> .. <m>, ... }
//! var <x> : <sort>
//! function <f>/<k> : <s1> x ... x <sk> -> <s> [= add|sub|mul|div|neg|square]
//! builtin predicate <p>/<k> : <s1> x ... x <sk> = true|leq|lt|geq|gt|eq
//! attribute <p> <sort>
//! axiom <formula>
//! query check | consequence <f> | eval <f> [with x=<lexeme>, ...]
//!     | intension <f> | concepts <p> | bealer-montague <f> | term <t>
//! ```
//!
//! Names containing spaces or punctuation are written in double quotes;
//! sort and concept phrases may also be written as several bare words.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use ifol_core::builtins::{BuiltinFunction, BuiltinPredicate};
use ifol_core::kernel::{ExtentMember, KernelError, NESTED_SENTENCE};
use ifol_core::workspace::WorkspaceError;
use ifol_core::{Element, Formula, Number, SortId, Term, Variable, Workspace};

use crate::parse::{self, lex, Cursor, ParseError, Spanned, Tok};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Check,
    Consequence(Formula),
    Eval { formula: Formula, assignment: Vec<(Variable, Element)> },
    Intension(Formula),
    Concepts(String),
    BealerMontague(Formula),
    Term(Term),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located<T> {
    pub line: usize,
    pub item: T,
}

/// A loaded and validated workspace file.
#[derive(Clone, Debug)]
pub struct Document {
    pub workspace: Workspace,
    pub axioms: Vec<Located<Formula>>,
    pub queries: Vec<Located<Query>>,
}

impl Document {
    pub fn gamma(&self) -> Vec<Formula> {
        self.axioms.iter().map(|a| a.item.clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{}", render_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),
}

impl LoadError {
    pub fn diagnostics(&self) -> &[Diagnostic] {
        match self {
            LoadError::Invalid(d) => d,
            LoadError::Io { .. } => &[],
        }
    }
}

fn render_diagnostics(ds: &[Diagnostic]) -> String {
    ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\n")
}

impl From<ParseError> for Diagnostic {
    fn from(e: ParseError) -> Self {
        Diagnostic {
            line: e.line,
            message: format!("column {}: expected {}", e.col, e.expected),
        }
    }
}

pub fn load_file(path: &Path) -> Result<Document, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_str(&text)
}

/// The tokens of a formula or term, parsed once the signature is known.
#[derive(Clone, Debug)]
struct Pending {
    toks: Vec<Spanned>,
    end_col: usize,
}

#[derive(Clone, Debug)]
enum QueryDecl {
    Check,
    Consequence(Pending),
    Eval(Pending),
    Intension(Pending),
    Concepts(String),
    BealerMontague(Pending),
    Term(Pending),
}

#[derive(Clone, Debug)]
enum Decl {
    Sort { name: String, isa: Option<String> },
    Concept { phrase: String, sorts: Vec<String>, predicate: Option<String> },
    Isa(String, String),
    Particular(String, String),
    Extent(String, Vec<ExtentMember>),
    Var(String, String),
    Function { name: String, args: Vec<String>, ret: String, evaluator: Option<BuiltinFunction> },
    Predicate { name: String, sorts: Vec<String>, evaluator: BuiltinPredicate },
    Attribute(String, String),
    Axiom(Pending),
    Query(QueryDecl),
}

/// Words up to (not including) one of `stops`, joined by single spaces, or
/// one quoted name.
fn phrase(cur: &mut Cursor<'_>, stops: &[&str], what: &str) -> Result<String, ParseError> {
    if let Some(Tok::Name { text, quoted: true }) = cur.peek() {
        cur.bump();
        return Ok(text.clone());
    }
    let mut words = Vec::new();
    while let Some(Tok::Name { text, quoted: false }) = cur.peek() {
        if stops.contains(&text.as_str()) {
            break;
        }
        words.push(text.clone());
        cur.bump();
    }
    if words.is_empty() {
        return Err(cur.error(what));
    }
    Ok(words.join(" "))
}

/// `f/k`, written as one token.
fn symbol_with_arity(cur: &mut Cursor<'_>) -> Result<(String, usize), ParseError> {
    let (line, col) = (cur.line(), cur.col());
    let line_err = |expected: &str| ParseError {
        line,
        col,
        expected: expected.into(),
    };
    let text = cur.name("`<symbol>/<arity>`")?;
    let (name, k) = text
        .rsplit_once('/')
        .and_then(|(n, k)| Some((n.to_string(), k.parse::<usize>().ok()?)))
        .filter(|(n, _)| !n.is_empty())
        .ok_or_else(|| line_err("`<symbol>/<arity>`"))?;
    Ok((name, k))
}

/// `s1 x ... x sk`; empty when `stop` comes first.
fn sort_product(cur: &mut Cursor<'_>, stop: &Tok) -> Result<Vec<String>, ParseError> {
    let mut sorts = Vec::new();
    if cur.peek() == Some(stop) {
        return Ok(sorts);
    }
    loop {
        sorts.push(cur.name("a sort")?);
        if !cur.eat_keyword("x") {
            return Ok(sorts);
        }
    }
}

fn extent_members(cur: &mut Cursor<'_>) -> Result<Vec<ExtentMember>, ParseError> {
    cur.expect(&Tok::LBrace)?;
    let mut out = Vec::new();
    if cur.eat(&Tok::RBrace) {
        return Ok(out);
    }
    loop {
        let col = cur.col();
        let is_number = matches!(cur.peek(), Some(Tok::Number(_)));
        let lexeme = cur.lexeme("an extent member")?;
        if is_number && cur.eat(&Tok::DotDot) {
            let hi_col = cur.col();
            let hi = cur.number("an integer")?;
            let line = cur.line();
            let bound = |s: &str, col: usize| {
                s.parse::<i64>().map_err(|_| ParseError {
                    line,
                    col,
                    expected: "an integer range bound".into(),
                })
            };
            let (lo, hi) = (bound(&lexeme, col)?, bound(&hi, hi_col)?);
            out.extend((lo..=hi).map(|n| ExtentMember::Number(Number::from_integer(n.into()))));
        } else if is_number {
            out.push(ExtentMember::parse(&lexeme));
        } else {
            out.push(ExtentMember::Lexeme(lexeme.as_str().into()));
        }
        if cur.eat(&Tok::RBrace) {
            return Ok(out);
        }
        cur.expect(&Tok::Comma)?;
    }
}

fn rest(cur: &mut Cursor<'_>, end_col: usize) -> Pending {
    Pending {
        toks: cur.take_rest().to_vec(),
        end_col,
    }
}

fn parse_decl(toks: &[Spanned], line: usize, end_col: usize) -> Result<Decl, ParseError> {
    let mut cur = Cursor::new(toks, line, end_col);
    let head = cur.name("a declaration keyword")?;
    let decl = match head.as_str() {
        "sort" => {
            let name = phrase(&mut cur, &["isa"], "a sort name")?;
            let isa = if cur.eat_keyword("isa") {
                Some(phrase(&mut cur, &[], "a sort name")?)
            } else {
                None
            };
            Decl::Sort { name, isa }
        }
        "concept" => {
            let phrase = phrase(&mut cur, &["arity"], "a concept phrase")?;
            cur.expect_keyword("arity")?;
            let col = cur.col();
            let k: usize = cur.number("an arity")?.parse().map_err(|_| ParseError {
                line,
                col,
                expected: "a natural number".into(),
            })?;
            let mut sorts = Vec::new();
            if k > 0 {
                cur.expect_keyword("sorts")?;
                for _ in 0..k {
                    sorts.push(cur.name("an attribute sort")?);
                }
            }
            let predicate = if cur.eat_keyword("predicate") {
                Some(cur.name("a predicate symbol")?)
            } else {
                None
            };
            Decl::Concept {
                phrase,
                sorts,
                predicate,
            }
        }
        "isa" => {
            let sub = cur.name("a sort")?;
            let sup = cur.name("a sort")?;
            Decl::Isa(sub, sup)
        }
        "particular" => {
            let lexeme = cur.lexeme("a lexeme")?;
            cur.expect(&Tok::Colon)?;
            let sort = phrase(&mut cur, &[], "a sort")?;
            Decl::Particular(lexeme, sort)
        }
        "extent" => {
            let sort = cur.name("a sort")?;
            cur.expect(&Tok::Equals)?;
            Decl::Extent(sort, extent_members(&mut cur)?)
        }
        "var" => {
            let name = cur.name("a variable")?;
            cur.expect(&Tok::Colon)?;
            let sort = phrase(&mut cur, &[], "a sort")?;
            Decl::Var(name, sort)
        }
        "function" => {
            let (name, k) = symbol_with_arity(&mut cur)?;
            cur.expect(&Tok::Colon)?;
            let col = cur.col();
            let args = sort_product(&mut cur, &Tok::Arrow)?;
            if args.len() != k {
                return Err(ParseError {
                    line,
                    col,
                    expected: format!("{k} argument sorts"),
                });
            }
            cur.expect(&Tok::Arrow)?;
            let ret = cur.name("a result sort")?;
            let evaluator = if cur.eat(&Tok::Equals) {
                let col = cur.col();
                let e = cur.name("an evaluator")?;
                Some(BuiltinFunction::from_name(&e).ok_or(ParseError {
                    line,
                    col,
                    expected: "one of add, sub, mul, div, neg, square".into(),
                })?)
            } else {
                None
            };
            Decl::Function {
                name,
                args,
                ret,
                evaluator,
            }
        }
        "builtin" => {
            cur.expect_keyword("predicate")?;
            let (name, k) = symbol_with_arity(&mut cur)?;
            cur.expect(&Tok::Colon)?;
            let col = cur.col();
            let sorts = sort_product(&mut cur, &Tok::Equals)?;
            if sorts.len() != k {
                return Err(ParseError {
                    line,
                    col,
                    expected: format!("{k} argument sorts"),
                });
            }
            cur.expect(&Tok::Equals)?;
            let col = cur.col();
            let e = cur.name("an evaluator")?;
            let evaluator = BuiltinPredicate::from_name(&e).ok_or(ParseError {
                line,
                col,
                expected: "one of true, leq, lt, geq, gt, eq".into(),
            })?;
            Decl::Predicate { name, sorts, evaluator }
        }
        "attribute" => {
            let p = cur.name("a predicate symbol")?;
            let sort = phrase(&mut cur, &[], "a sort")?;
            Decl::Attribute(p, sort)
        }
        "axiom" => {
            if cur.at_end() {
                return Err(cur.error("a formula"));
            }
            Decl::Axiom(rest(&mut cur, end_col))
        }
        "query" => {
            let kind = cur.name("a query kind")?;
            let needs_body = |cur: &Cursor<'_>| {
                if cur.at_end() {
                    Err(cur.error("a formula"))
                } else {
                    Ok(())
                }
            };
            let q = match kind.as_str() {
                "check" => QueryDecl::Check,
                "consequence" => {
                    needs_body(&cur)?;
                    QueryDecl::Consequence(rest(&mut cur, end_col))
                }
                "eval" => {
                    needs_body(&cur)?;
                    QueryDecl::Eval(rest(&mut cur, end_col))
                }
                "intension" => {
                    needs_body(&cur)?;
                    QueryDecl::Intension(rest(&mut cur, end_col))
                }
                "bealer-montague" => {
                    needs_body(&cur)?;
                    QueryDecl::BealerMontague(rest(&mut cur, end_col))
                }
                "term" => {
                    needs_body(&cur)?;
                    QueryDecl::Term(rest(&mut cur, end_col))
                }
                "concepts" => QueryDecl::Concepts(cur.name("a predicate symbol")?),
                _ => {
                    return Err(ParseError {
                        line,
                        col: toks[1].col,
                        expected: "one of check, consequence, eval, intension, concepts, bealer-montague, term"
                            .into(),
                    })
                }
            };
            Decl::Query(q)
        }
        _ => {
            return Err(ParseError {
                line,
                col: toks[0].col,
                expected: "one of sort, concept, isa, particular, extent, var, function, builtin, attribute, axiom, query"
                    .into(),
            })
        }
    };
    cur.finish()?;
    Ok(decl)
}

fn sort_id(name: &str) -> SortId {
    SortId::new(name)
}

struct Builder {
    ws: Workspace,
    diags: Vec<Diagnostic>,
}

impl Builder {
    fn report(&mut self, line: usize, e: impl fmt::Display) {
        self.diags.push(Diagnostic {
            line,
            message: e.to_string(),
        });
    }

    fn declared(&self, s: &str) -> bool {
        s == NESTED_SENTENCE || self.ws.kernel().is_declared(&sort_id(s))
    }
}

/// Loads workspace text. Independent declarations may come in any order:
/// sorts and concepts are registered by name, then IS-A edges, then the
/// remaining declarations. Any error rejects the whole file.
pub fn load_str(text: &str) -> Result<Document, LoadError> {
    let mut decls = Vec::new();
    let mut diags = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = match lex(raw, line, 0) {
            Ok(t) => t,
            Err(e) => {
                diags.push(e.into());
                continue;
            }
        };
        if toks.is_empty() {
            continue;
        }
        match parse_decl(&toks, line, raw.chars().count() + 1) {
            Ok(d) => decls.push((line, d)),
            Err(e) => diags.push(e.into()),
        }
    }
    if !diags.is_empty() {
        return Err(LoadError::Invalid(diags));
    }

    let mut b = Builder {
        ws: Workspace::new(),
        diags: Vec::new(),
    };

    // Sorts and concepts, by name; concepts wait for their attribute sorts.
    let mut names: BTreeSet<&str> = BTreeSet::new();
    let mut sorts: Vec<(&str, usize)> = Vec::new();
    let mut concepts: Vec<(&str, usize, &Vec<String>, Option<&str>)> = Vec::new();
    for (line, d) in &decls {
        match d {
            Decl::Sort { name, .. } => sorts.push((name, *line)),
            Decl::Concept {
                phrase,
                sorts: attrs,
                predicate,
            } => concepts.push((phrase, *line, attrs, predicate.as_deref())),
            _ => continue,
        }
    }
    sorts.sort();
    concepts.sort_by(|a, b| a.0.cmp(b.0).then(a.1.cmp(&b.1)));
    for (name, line) in sorts {
        if !names.insert(name) || b.ws.kernel().is_declared(&sort_id(name)) {
            b.report(line, KernelError::DuplicateName(sort_id(name)));
            continue;
        }
        if let Err(e) = b.ws.declare_sort(name) {
            b.report(line, e);
        }
    }
    let mut pending = concepts;
    loop {
        let mut waiting = Vec::new();
        let before = pending.len();
        for c in pending {
            let (phrase, line, attrs, predicate) = c;
            let ready = attrs.iter().all(|s| s == phrase || b.declared(s));
            if !ready {
                waiting.push(c);
                continue;
            }
            if b.ws.kernel().is_declared(&sort_id(phrase)) {
                b.report(line, KernelError::DuplicateName(sort_id(phrase)));
                continue;
            }
            let attrs = attrs.iter().map(|s| sort_id(s)).collect();
            if let Err(e) = b.ws.declare_concept(phrase, attrs, predicate) {
                b.report(line, e);
            }
        }
        if waiting.is_empty() || waiting.len() == before {
            for (phrase, line, attrs, _) in waiting {
                let missing = attrs
                    .iter()
                    .find(|s| *s != phrase && !b.declared(s))
                    .expect("a concept waits only on undeclared sorts");
                b.report(line, KernelError::UnknownAttributeSort(sort_id(missing)));
            }
            break;
        }
        pending = waiting;
    }

    // IS-A edges.
    for (line, d) in &decls {
        let (sub, sup) = match d {
            Decl::Sort { name, isa: Some(sup) } => (name, sup),
            Decl::Isa(sub, sup) => (sub, sup),
            _ => continue,
        };
        if let Err(e) = b.ws.declare_isa(&sort_id(sub), &sort_id(sup)) {
            b.report(*line, e);
        }
    }

    // Everything that only needs sorts.
    for (line, d) in &decls {
        let r: Result<(), WorkspaceError> = match d {
            Decl::Particular(l, s) => b.ws.declare_particular(l, &sort_id(s)),
            Decl::Extent(s, members) => b.ws.declare_extent(&sort_id(s), members.iter().cloned()),
            Decl::Attribute(p, s) => b.ws.add_attribute_sort(p, &sort_id(s)),
            Decl::Var(x, s) => b.ws.declare_var(x, &sort_id(s)).map(|_| ()),
            _ => continue,
        };
        if let Err(e) = r {
            b.report(*line, e);
        }
    }
    let mut symbols: Vec<(&str, usize, &Decl)> = decls
        .iter()
        .filter_map(|(line, d)| match d {
            Decl::Function { name, .. } | Decl::Predicate { name, .. } => Some((name.as_str(), *line, d)),
            _ => None,
        })
        .collect();
    symbols.sort_by(|a, b| a.0.cmp(b.0).then(a.1.cmp(&b.1)));
    for (_, line, d) in symbols {
        let r = match d {
            Decl::Function {
                name,
                args,
                ret,
                evaluator,
            } => b.ws.declare_function(
                name,
                args.iter().map(|s| sort_id(s)).collect(),
                sort_id(ret),
                *evaluator,
            ),
            Decl::Predicate { name, sorts, evaluator } => {
                b.ws
                    .declare_builtin_predicate(name, sorts.iter().map(|s| sort_id(s)).collect(), *evaluator)
            }
            _ => unreachable!(),
        };
        if let Err(e) = r {
            b.report(line, e);
        }
    }
    if !b.diags.is_empty() {
        b.diags.sort_by_key(|d| d.line);
        return Err(LoadError::Invalid(b.diags));
    }
    if let Err(errs) = b.ws.finalize() {
        // Resolution errors concern the file as a whole; attach them to the
        // last extent or particular declaration that could have caused them.
        let line = decls
            .iter()
            .rev()
            .find(|(_, d)| matches!(d, Decl::Extent(..) | Decl::Particular(..) | Decl::Isa(..) | Decl::Sort { isa: Some(_), .. }))
            .map(|(l, _)| *l)
            .unwrap_or(0);
        for e in errs {
            b.report(line, e);
        }
        return Err(LoadError::Invalid(b.diags));
    }

    // Formulas, now that every symbol and variable is known.
    let mut axioms = Vec::new();
    let mut queries = Vec::new();
    for (line, d) in &decls {
        let line = *line;
        match d {
            Decl::Axiom(p) => {
                if let Some(f) = b.formula(line, p) {
                    axioms.push(Located { line, item: f });
                }
            }
            Decl::Query(q) => {
                if let Some(item) = b.query(line, q) {
                    queries.push(Located { line, item });
                }
            }
            _ => {}
        }
    }
    if !b.diags.is_empty() {
        return Err(LoadError::Invalid(b.diags));
    }
    Ok(Document {
        workspace: b.ws,
        axioms,
        queries,
    })
}

impl Builder {
    fn sort_check(&mut self, line: usize, f: &Formula) -> bool {
        match self.ws.check_formula(f) {
            Ok(()) => true,
            Err(errs) => {
                for e in errs {
                    self.report(line, e.render(&format!("L{line}")));
                }
                false
            }
        }
    }

    fn formula(&mut self, line: usize, p: &Pending) -> Option<Formula> {
        let mut cur = Cursor::new(&p.toks, line, p.end_col);
        let parsed = parse::formula(&self.ws, &mut cur).and_then(|f| cur.finish().map(|_| f));
        match parsed {
            Ok(f) => self.sort_check(line, &f).then_some(f),
            Err(e) => {
                self.diags.push(e.into());
                None
            }
        }
    }

    fn query(&mut self, line: usize, q: &QueryDecl) -> Option<Query> {
        Some(match q {
            QueryDecl::Check => Query::Check,
            QueryDecl::Consequence(p) => Query::Consequence(self.formula(line, p)?),
            QueryDecl::Intension(p) => Query::Intension(self.formula(line, p)?),
            QueryDecl::BealerMontague(p) => Query::BealerMontague(self.formula(line, p)?),
            QueryDecl::Concepts(p) => {
                if self.ws.registry().concept_of(p).is_none() {
                    self.report(line, format!("`{p}` is not a registered predicate"));
                    return None;
                }
                Query::Concepts(p.clone())
            }
            QueryDecl::Term(p) => {
                let mut cur = Cursor::new(&p.toks, line, p.end_col);
                let parsed = parse::term(&self.ws, &mut cur).and_then(|t| cur.finish().map(|_| t));
                let t = match parsed {
                    Ok(t) => t,
                    Err(e) => {
                        self.diags.push(e.into());
                        return None;
                    }
                };
                if let Err(e) = ifol_core::sorting::static_sort(&self.ws, &t) {
                    self.report(line, e.render(&format!("L{line}")));
                    return None;
                }
                Query::Term(t)
            }
            QueryDecl::Eval(p) => {
                let mut cur = Cursor::new(&p.toks, line, p.end_col);
                let parsed = parse::formula(&self.ws, &mut cur).and_then(|f| {
                    let mut pairs = Vec::new();
                    if cur.eat_keyword("with") {
                        loop {
                            let col = cur.col();
                            let x = cur.name("a variable")?;
                            cur.expect(&Tok::Equals)?;
                            let v = cur.lexeme("a lexeme")?;
                            pairs.push((x, v, col));
                            if !cur.eat(&Tok::Comma) {
                                break;
                            }
                        }
                    }
                    cur.finish()?;
                    Ok((f, pairs))
                });
                let (formula, pairs) = match parsed {
                    Ok(x) => x,
                    Err(e) => {
                        self.diags.push(e.into());
                        return None;
                    }
                };
                if !self.sort_check(line, &formula) {
                    return None;
                }
                let free = formula.free_vars();
                let mut assignment = Vec::new();
                for (x, v, col) in pairs {
                    let Some(var) = free.iter().find(|f| *f.name == *x) else {
                        self.report(line, format!("column {col}: `{x}` is not a free variable of the formula"));
                        return None;
                    };
                    let e = Element::from(v.as_str());
                    let ok = e.is_nameable()
                        && self
                            .ws
                            .kernel()
                            .is_subsort(&self.ws.kernel().dynamic_sort(&e), &var.sort)
                            .unwrap_or(false);
                    if !ok {
                        self.report(line, format!("column {col}: `{v}` is not an element of sort `{}`", var.sort));
                        return None;
                    }
                    assignment.push((var.clone(), e));
                }
                Query::Eval { formula, assignment }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiword_phrases_and_ranges() {
        let doc = load_str(
            "sort kind of animals\n\
             extent \"kind of animals\" = { dog, cat }\n\
             sort reals\n\
             extent reals = { -1 .. 1, 1/2 }\n",
        )
        .unwrap();
        let k = doc.workspace.kernel();
        assert!(k.is_declared(&SortId::new("kind of animals")));
        assert_eq!(k.static_extent(&SortId::new("reals")).unwrap().len(), 4);
    }

    #[test]
    fn concept_waits_for_its_sorts() {
        let doc = load_str("concept owner arity 2 sorts person pet predicate owns\nsort pet\nsort person\n").unwrap();
        assert!(doc.workspace.registry().concept_of("owns").is_some());
    }

    #[test]
    fn unknown_attribute_sort() {
        let e = load_str("concept owner arity 1 sorts person predicate owns\n").unwrap_err();
        assert_eq!(e.diagnostics()[0].line, 1);
    }

    #[test]
    fn parse_errors_name_line_and_column() {
        let e = load_str("sort a\nextent a = { x y }\n").unwrap_err();
        let d = &e.diagnostics()[0];
        assert_eq!(d.line, 2);
        assert!(d.message.starts_with("column 16:"), "{}", d.message);
    }
}
