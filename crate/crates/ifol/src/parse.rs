//! Lexer and parsers for workspace lines, formulas and terms.

use std::fmt;
use std::sync::Arc;

use ifol_core::syntax::{mk_abstracted, rename_shadowed, TOP_PREDICATE};
use ifol_core::{Formula, SortId, Term, Variable, Workspace};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: expected {expected}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Name { text: String, quoted: bool },
    Number(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Dot,
    DotDot,
    Tilde,
    Amp,
    Pipe,
    Arrow,
    Equals,
    Open,
    Close,
    Alpha,
    Beta,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Name { text, .. } => return write!(f, "`{text}`"),
            Tok::Number(n) => return write!(f, "`{n}`"),
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Colon => ":",
            Tok::Dot => ".",
            Tok::DotDot => "..",
            Tok::Tilde => "~",
            Tok::Amp => "&",
            Tok::Pipe => "|",
            Tok::Arrow => "->",
            Tok::Equals => "=",
            Tok::Open => "<<",
            Tok::Close => ">>",
            Tok::Alpha => "|alpha:",
            Tok::Beta => "|beta:",
        };
        write!(f, "`{s}`")
    }
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub tok: Tok,
    /// 1-based column, in characters.
    pub col: usize,
}

fn is_name_char(c: char) -> bool {
    ifol_core::syntax::is_name_char(c)
}

/// Splits `text` into tokens. `offset` is the column (0-based) at which
/// `text` starts in its line.
pub fn lex(text: &str, line: usize, offset: usize) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |i: usize, expected: &str| ParseError {
        line,
        col: offset + i + 1,
        expected: expected.into(),
    };
    let rest_starts = |i: usize, s: &str| chars[i..].iter().copied().take(s.chars().count()).eq(s.chars());
    while i < chars.len() {
        let c = chars[i];
        let col = offset + i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        let simple = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            ':' => Some(Tok::Colon),
            '~' | '¬' => Some(Tok::Tilde),
            '&' | '∧' => Some(Tok::Amp),
            '=' => Some(Tok::Equals),
            '⋖' => Some(Tok::Open),
            '⋗' => Some(Tok::Close),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Spanned { tok, col });
            i += 1;
            continue;
        }
        if c == '.' {
            if rest_starts(i, "..") {
                out.push(Spanned { tok: Tok::DotDot, col });
                i += 2;
            } else {
                out.push(Spanned { tok: Tok::Dot, col });
                i += 1;
            }
            continue;
        }
        if rest_starts(i, "<<") {
            out.push(Spanned { tok: Tok::Open, col });
            i += 2;
            continue;
        }
        if rest_starts(i, ">>") {
            out.push(Spanned { tok: Tok::Close, col });
            i += 2;
            continue;
        }
        if rest_starts(i, "->") {
            out.push(Spanned { tok: Tok::Arrow, col });
            i += 2;
            continue;
        }
        if c == '|' {
            if rest_starts(i, "|alpha:") {
                out.push(Spanned { tok: Tok::Alpha, col });
                i += 7;
            } else if rest_starts(i, "|beta:") {
                out.push(Spanned { tok: Tok::Beta, col });
                i += 6;
            } else {
                out.push(Spanned { tok: Tok::Pipe, col });
                i += 1;
            }
            continue;
        }
        if c == '"' {
            let mut text = String::new();
            let mut j = i + 1;
            loop {
                match chars.get(j) {
                    None => return Err(err(i, "closing `\"`")),
                    Some('"') => break,
                    Some('\\') => match chars.get(j + 1) {
                        Some(&e) => {
                            text.push(e);
                            j += 2;
                        }
                        None => return Err(err(j, "escaped character")),
                    },
                    Some(&ch) => {
                        text.push(ch);
                        j += 1;
                    }
                }
            }
            out.push(Spanned {
                tok: Tok::Name { text, quoted: true },
                col,
            });
            i = j + 1;
            continue;
        }
        let starts_number = c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()));
        if starts_number {
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if matches!(chars.get(j), Some('.' | '/')) && chars.get(j + 1).is_some_and(|d| d.is_ascii_digit()) {
                j += 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
            }
            if chars.get(j).is_some_and(|&d| is_name_char(d) && d != '-') {
                return Err(err(i, "a number (quote names that start with a digit)"));
            }
            out.push(Spanned {
                tok: Tok::Number(chars[i..j].iter().collect()),
                col,
            });
            i = j;
            continue;
        }
        if is_name_char(c) {
            let mut j = i;
            while j < chars.len() && is_name_char(chars[j]) && !rest_starts(j, "->") {
                j += 1;
            }
            out.push(Spanned {
                tok: Tok::Name {
                    text: chars[i..j].iter().collect(),
                    quoted: false,
                },
                col,
            });
            i = j;
            continue;
        }
        return Err(err(i, "a token"));
    }
    Ok(out)
}

/// A cursor over the tokens of one line.
pub struct Cursor<'a> {
    toks: &'a [Spanned],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Spanned], line: usize, end_col: usize) -> Self {
        Cursor {
            toks,
            pos: 0,
            line,
            end_col,
        }
    }

    pub fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&'a Tok> {
        self.toks.get(self.pos + k).map(|s| &s.tok)
    }

    pub fn line(&self) -> usize {
        self.line
    }

    pub fn col(&self) -> usize {
        self.toks.get(self.pos).map(|s| s.col).unwrap_or(self.end_col)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn error(&self, expected: impl Into<String>) -> ParseError {
        let mut expected = expected.into();
        match self.peek() {
            Some(t) => expected.push_str(&format!(", found {t}")),
            None => expected.push_str(", found end of line"),
        }
        ParseError {
            line: self.line,
            col: self.col(),
            expected,
        }
    }

    pub fn bump(&mut self) -> Option<&'a Tok> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("{tok}")))
        }
    }

    /// An unquoted keyword.
    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        match self.peek() {
            Some(Tok::Name { text, quoted: false }) if text == kw => {
                self.pos += 1;
                true
            }
            _ => false,
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            Err(self.error(format!("`{kw}`")))
        }
    }

    pub fn name(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Name { text, .. }) => {
                self.pos += 1;
                Ok(text.clone())
            }
            _ => Err(self.error(what)),
        }
    }

    /// A name or a numeric literal, as written.
    pub fn lexeme(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Name { text, .. }) | Some(Tok::Number(text)) => {
                self.pos += 1;
                Ok(text.clone())
            }
            _ => Err(self.error(what)),
        }
    }

    pub fn number(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Number(n)) => {
                self.pos += 1;
                Ok(n.clone())
            }
            _ => Err(self.error(what)),
        }
    }

    /// The remaining tokens; the cursor moves to the end.
    pub fn take_rest(&mut self) -> &'a [Spanned] {
        let rest = &self.toks[self.pos.min(self.toks.len())..];
        self.pos = self.toks.len();
        rest
    }

    pub fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("end of line"))
        }
    }
}

/// Formula and term parser. Bare names resolve to the innermost quantified
/// variable, then to a global `var`, and otherwise denote constants.
pub struct FormulaParser<'w, 'c, 't> {
    ws: &'w Workspace,
    cur: &'c mut Cursor<'t>,
    scope: Vec<Variable>,
}

impl<'w, 'c, 't> FormulaParser<'w, 'c, 't> {
    pub fn new(ws: &'w Workspace, cur: &'c mut Cursor<'t>) -> Self {
        FormulaParser {
            ws,
            cur,
            scope: Vec::new(),
        }
    }

    fn resolve(&self, name: &str) -> Option<Variable> {
        self.scope
            .iter()
            .rev()
            .find(|v| &*v.name == name)
            .cloned()
            .or_else(|| self.ws.var(name))
    }

    pub fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.cur.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conjunction()?;
        while self.cur.eat(&Tok::Pipe) {
            let g = self.conjunction()?;
            f = Formula::or(f, g);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.cur.eat(&Tok::Amp) {
            let g = self.unary()?;
            f = Formula::and(f, g);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.cur.eat(&Tok::Tilde) {
            return Ok(Formula::not(self.unary()?));
        }
        for (kw, universal) in [("exists", false), ("forall", true)] {
            if self.cur.eat_keyword(kw) {
                return self.quantifier(universal);
            }
        }
        if self.cur.eat(&Tok::LParen) {
            let f = self.formula()?;
            self.cur.expect(&Tok::RParen)?;
            return Ok(f);
        }
        self.atom()
    }

    fn binder(&mut self) -> Result<Variable, ParseError> {
        let col = self.cur.col();
        let name = self.cur.name("a variable")?;
        if self.cur.eat(&Tok::Colon) {
            let sort = self.cur.name("a sort")?;
            return Ok(Variable::new(&name, SortId::new(&sort)));
        }
        self.ws.var(&name).ok_or(ParseError {
            line: self.cur.line,
            col,
            expected: format!("`{name}:<sort>` or a declared variable"),
        })
    }

    fn quantifier(&mut self, universal: bool) -> Result<Formula, ParseError> {
        let mut vars = vec![self.binder()?];
        while self.cur.eat(&Tok::Comma) {
            vars.push(self.binder()?);
        }
        self.cur.expect(&Tok::Dot)?;
        let depth = self.scope.len();
        self.scope.extend(vars.iter().cloned());
        let body = self.formula();
        self.scope.truncate(depth);
        let mut f = body?;
        for v in vars.into_iter().rev() {
            f = if universal {
                Formula::forall(v, f)
            } else {
                Formula::exists(v, f)
            };
        }
        Ok(f)
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let p = self.cur.name("a formula")?;
        if p == TOP_PREDICATE && self.cur.peek() != Some(&Tok::LParen) {
            return Ok(Formula::top());
        }
        let args = if self.cur.peek() == Some(&Tok::LParen) {
            self.args()?
        } else {
            Vec::new()
        };
        Ok(Formula::atom(&p, args))
    }

    fn args(&mut self) -> Result<Vec<Term>, ParseError> {
        self.cur.expect(&Tok::LParen)?;
        let mut args = Vec::new();
        if self.cur.eat(&Tok::RParen) {
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            if self.cur.eat(&Tok::RParen) {
                return Ok(args);
            }
            self.cur.expect(&Tok::Comma)?;
        }
    }

    pub fn term(&mut self) -> Result<Term, ParseError> {
        match self.cur.peek() {
            Some(Tok::Open) => self.abstraction(),
            Some(Tok::Number(n)) => {
                let n = n.clone();
                self.cur.bump();
                Ok(Term::Const(Arc::from(n.as_str())))
            }
            Some(Tok::Name { text, .. }) => {
                let name = text.clone();
                self.cur.bump();
                if self.cur.peek() == Some(&Tok::LParen) {
                    let args = self.args()?;
                    return Ok(Term::app(&name, args));
                }
                Ok(match self.resolve(&name) {
                    Some(v) => Term::Var(v),
                    None => Term::constant(&name),
                })
            }
            _ => Err(self.cur.error("a term")),
        }
    }

    fn abstraction(&mut self) -> Result<Term, ParseError> {
        let col = self.cur.col();
        self.cur.expect(&Tok::Open)?;
        let body = self.formula()?;
        self.cur.expect(&Tok::Close)?;
        let free = body.free_vars();
        let mut alpha = Vec::new();
        let mut beta = Vec::new();
        if self.cur.eat(&Tok::Alpha) {
            self.var_list(&free, &mut alpha, &beta)?;
        }
        if self.cur.eat(&Tok::Beta) {
            self.var_list(&free, &mut beta, &alpha)?;
        }
        let abs = mk_abstracted(body, alpha, beta).map_err(|e| ParseError {
            line: self.cur.line,
            col,
            expected: format!("a well-formed abstraction ({e})"),
        })?;
        Ok(Term::Abs(Box::new(abs)))
    }

    /// Variables after `|alpha:` or `|beta:`. A comma continues the list only
    /// when it is followed by a free variable of the body not listed yet, so
    /// an abstraction can sit inside an argument list.
    fn var_list(&mut self, free: &[Variable], out: &mut Vec<Variable>, other: &[Variable]) -> Result<(), ParseError> {
        let pick = |name: &str, out: &[Variable]| {
            free.iter()
                .find(|v| &*v.name == name && !out.contains(v) && !other.contains(v))
                .cloned()
        };
        let col = self.cur.col();
        let name = self.cur.name("a variable of the abstraction body")?;
        match pick(&name, out) {
            Some(v) => out.push(v),
            None => {
                return Err(ParseError {
                    line: self.cur.line,
                    col,
                    expected: format!("a free variable of the abstraction body, found `{name}`"),
                })
            }
        }
        while self.cur.peek() == Some(&Tok::Comma) {
            let Some(Tok::Name { text, .. }) = self.cur.peek_at(1) else {
                break;
            };
            let Some(v) = pick(text, out) else {
                break;
            };
            self.cur.bump();
            self.cur.bump();
            out.push(v);
        }
        Ok(())
    }
}

/// Parses a whole formula, renaming shadowed bound variables apart.
pub fn formula(ws: &Workspace, cur: &mut Cursor<'_>) -> Result<Formula, ParseError> {
    let f = FormulaParser::new(ws, cur).formula()?;
    Ok(rename_shadowed(&f))
}

pub fn term(ws: &Workspace, cur: &mut Cursor<'_>) -> Result<Term, ParseError> {
    FormulaParser::new(ws, cur).term()
}

/// Parses formula text on its own, for tests and tools.
pub fn parse_formula(ws: &Workspace, text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text, 1, 0)?;
    let mut cur = Cursor::new(&toks, 1, text.chars().count() + 1);
    let f = formula(ws, &mut cur)?;
    cur.finish()?;
    Ok(f)
}

pub fn parse_term(ws: &Workspace, text: &str) -> Result<Term, ParseError> {
    let toks = lex(text, 1, 0)?;
    let mut cur = Cursor::new(&toks, 1, text.chars().count() + 1);
    let t = term(ws, &mut cur)?;
    cur.finish()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ifol_core::kernel::ExtentMember;

    fn ws() -> Workspace {
        let mut ws = Workspace::new();
        ws.declare_sort("thing").unwrap();
        ws.declare_extent(&SortId::new("thing"), ["a", "b"].map(ExtentMember::parse))
            .unwrap();
        ws.declare_concept("p-concept", vec![SortId::new("thing")], Some("p"))
            .unwrap();
        ws.declare_var("x", &SortId::new("thing")).unwrap();
        ws.declare_var("y", &SortId::new("thing")).unwrap();
        ws.finalize().unwrap();
        ws
    }

    #[test]
    fn lexes_numbers_names_and_ranges() {
        let toks: Vec<Tok> = lex("f(-2..2, 1/2, 0.5) -> \"a b\" EN-problem", 1, 0)
            .unwrap()
            .into_iter()
            .map(|s| s.tok)
            .collect();
        let name = |t: &str, quoted| Tok::Name {
            text: t.into(),
            quoted,
        };
        assert_eq!(
            toks,
            vec![
                name("f", false),
                Tok::LParen,
                Tok::Number("-2".into()),
                Tok::DotDot,
                Tok::Number("2".into()),
                Tok::Comma,
                Tok::Number("1/2".into()),
                Tok::Comma,
                Tok::Number("0.5".into()),
                Tok::RParen,
                Tok::Arrow,
                name("a b", true),
                name("EN-problem", false),
            ]
        );
    }

    #[test]
    fn precedence() {
        let ws = ws();
        let f = parse_formula(&ws, "~p(x) & p(y) | p(a) -> p(b)").unwrap();
        let px = |t: &str| parse_formula(&ws, &format!("p({t})")).unwrap();
        let expected = Formula::implies(
            Formula::or(Formula::and(Formula::not(px("x")), px("y")), px("a")),
            px("b"),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn variables_and_constants() {
        let ws = ws();
        let f = parse_formula(&ws, "exists z:thing . p(z) & p(x) & p(a)").unwrap();
        let Formula::Exists(z, body) = &f else {
            panic!("{f}")
        };
        assert_eq!(&*z.name, "z");
        assert_eq!(body.free_vars().len(), 2);
        assert_eq!(f.free_vars(), vec![Variable::new("x", "thing")]);
    }

    #[test]
    fn abstraction_lists_stop_at_argument_commas() {
        let ws = ws();
        let f = parse_formula(&ws, "q(<< p(x) & p(y) >>|alpha: x, y)").unwrap();
        let Formula::Atom(_, args) = &f else { panic!() };
        assert_eq!(args.len(), 1);
        let f = parse_formula(&ws, "q(<< p(x) >>|alpha: x, y)").unwrap();
        let Formula::Atom(_, args) = &f else { panic!() };
        assert_eq!(args.len(), 2);
        assert!(parse_formula(&ws, "q(<< p(x) >>|alpha: y)").is_err());
    }

    #[test]
    fn display_round_trip() {
        let ws = ws();
        for text in [
            "exists x:thing . p(x)",
            "~(p(a) & forall y . p(y))",
            "q(<< p(x) & exists y:thing . p(y) >>|beta: x, b)",
            "q(⋖p(x) & p(y)⋗|alpha: x |beta: y)",
            "true & ~true",
        ] {
            let f = parse_formula(&ws, text).unwrap();
            let again = parse_formula(&ws, &f.to_string()).unwrap();
            assert_eq!(f, again, "{text} => {f}");
        }
    }

    #[test]
    fn errors_have_columns() {
        let ws = ws();
        let e = parse_formula(&ws, "p(x) & ").unwrap_err();
        assert_eq!((e.line, e.col), (1, 8));
        let e = parse_formula(&ws, "exists z . p(z)").unwrap_err();
        assert_eq!(e.col, 8);
    }
}
