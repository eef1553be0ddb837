//! Presentation files and element expressions.
//!
//! ```text
//! # associativity
//! generator m 2
//! relation m(m(1,2),3) - m(1,m(2,3))
//! ordering PathPerm
//! ```

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use opgb_core::symmetrize::{canonicalize_polynomial, GeneratorAction};
use opgb_core::{Coeff, OperadError, OperadPolynomial, OrderingSpec, Signature, Tree};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

pub type ParseResult<T> = std::result::Result<T, ParseError>;

/// A parsed presentation file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationFile {
    pub signature: Signature,
    pub actions: GeneratorAction,
    pub relations: Vec<OperadPolynomial>,
    pub ordering: Option<OrderingSpec>,
}

impl PresentationFile {
    pub fn order(&self) -> OrderingSpec {
        self.ordering.unwrap_or_default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(BigInt),
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> ParseResult<Vec<Token>> {
    let mut out = Vec::new();
    for (l, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, column) = (l + 1, i + 1);
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n = BigInt::from_str(&digits).expect("ascii digits");
                out.push(Token { tok: Tok::Int(n), line, column });
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                out.push(Token { tok: Tok::Name(name), line, column });
            } else if "()+-*/,=".contains(c) {
                out.push(Token { tok: Tok::Sym(c), line, column });
                i += 1;
            } else {
                return Err(ParseError {
                    line,
                    column,
                    message: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    let (line, column) = out.last().map_or((1, 1), |t| (t.line, t.column + 1));
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

const KEYWORDS: [&str; 4] = ["generator", "action", "relation", "ordering"];

/// What to do with a generator name that is not declared.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Names {
    Declared,
    /// Declare it with the arity of its first use.
    Infer,
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    sig: &'a mut Signature,
    names: Names,
}

impl<'a> Parser<'a> {
    fn new(text: &str, sig: &'a mut Signature, names: Names) -> ParseResult<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            sig,
            names,
        })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(t: &Token, message: impl Into<String>) -> ParseError {
        ParseError {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        Self::error_at(self.peek(), message)
    }

    fn describe(tok: &Tok) -> String {
        match tok {
            Tok::Name(n) => format!("`{n}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".to_string(),
        }
    }

    fn expect_sym(&mut self, c: char) -> ParseResult<()> {
        if self.peek().tok == Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, found {}", Self::describe(&self.peek().tok))))
        }
    }

    fn name(&mut self) -> ParseResult<(String, Token)> {
        let t = self.next();
        match &t.tok {
            Tok::Name(n) => Ok((n.clone(), t)),
            other => Err(Self::error_at(&t, format!("expected a name, found {}", Self::describe(other)))),
        }
    }

    fn int(&mut self) -> ParseResult<(BigInt, Token)> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => Ok((n.clone(), t)),
            other => Err(Self::error_at(&t, format!("expected a number, found {}", Self::describe(other)))),
        }
    }

    fn small_int(&mut self) -> ParseResult<(usize, Token)> {
        let (n, t) = self.int()?;
        let v = usize::try_from(&n).map_err(|_| Self::error_at(&t, format!("number {n} is too large")))?;
        Ok((v, t))
    }

    /// `INT ["/" INT]`
    fn rational(&mut self) -> ParseResult<Coeff> {
        let (n, _) = self.int()?;
        if self.peek().tok == Tok::Sym('/') {
            self.next();
            let (d, t) = self.int()?;
            if d.is_zero() {
                return Err(Self::error_at(&t, "zero denominator"));
            }
            Ok(Coeff::new(n, d))
        } else {
            Ok(Coeff::from_integer(n))
        }
    }

    fn tree(&mut self) -> ParseResult<Tree> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => {
                let l = u32::try_from(n)
                    .ok()
                    .filter(|&l| l > 0)
                    .ok_or_else(|| Self::error_at(&t, format!("leaf label must be a positive integer, found {n}")))?;
                Ok(Tree::Leaf(l))
            }
            Tok::Name(name) => {
                self.expect_sym('(')?;
                let mut children = vec![self.tree()?];
                while self.peek().tok == Tok::Sym(',') {
                    self.next();
                    children.push(self.tree()?);
                }
                self.expect_sym(')')?;
                let gen = self.generator(name, children.len(), &t)?;
                Ok(Tree::Vertex { gen, children })
            }
            other => Err(Self::error_at(&t, format!("expected a tree, found {}", Self::describe(other)))),
        }
    }

    fn generator(&mut self, name: &str, arity: usize, at: &Token) -> ParseResult<u32> {
        let g = match self.sig.lookup(name) {
            Some(g) => g.clone(),
            None if self.names == Names::Infer && !KEYWORDS.contains(&name) => self
                .sig
                .declare(name, arity)
                .map_err(|e| Self::error_at(at, e.to_string()))?
                .clone(),
            None => return Err(Self::error_at(at, format!("undeclared generator `{name}`"))),
        };
        if g.arity != arity {
            let e = OperadError::ArityMismatch {
                name: name.to_string(),
                expected: g.arity,
                found: arity,
            };
            return Err(Self::error_at(at, e.to_string()));
        }
        Ok(g.ordinal)
    }

    /// `[sign] term (("+" | "-") term)*`, where `term := [RATIONAL "*"] item`.
    fn lincomb<T>(&mut self, mut item: impl FnMut(&mut Self) -> ParseResult<T>) -> ParseResult<Vec<(T, Coeff)>> {
        let mut out = Vec::new();
        let mut sign = Coeff::one();
        if self.peek().tok == Tok::Sym('-') {
            self.next();
            sign = -sign;
        } else if self.peek().tok == Tok::Sym('+') {
            self.next();
        }
        loop {
            let coefficient = if matches!(self.peek().tok, Tok::Int(_))
                && matches!(self.peek_at(1), Tok::Sym('*') | Tok::Sym('/'))
            {
                let c = self.rational()?;
                self.expect_sym('*')?;
                c
            } else {
                Coeff::one()
            };
            out.push((item(self)?, sign * coefficient));
            sign = match self.peek().tok {
                Tok::Sym('+') => Coeff::one(),
                Tok::Sym('-') => -Coeff::one(),
                _ => break,
            };
            self.next();
        }
        Ok(out)
    }

    fn element_terms(&mut self) -> ParseResult<(Vec<(Tree, Coeff)>, Token)> {
        let start = self.peek().clone();
        if start.tok == Tok::Int(BigInt::zero()) && !matches!(self.peek_at(1), Tok::Sym('*') | Tok::Sym('/')) {
            self.next();
            return Ok((Vec::new(), start));
        }
        let terms = self.lincomb(|p| {
            let at = p.peek().clone();
            let t = p.tree()?;
            t.check_labels().map_err(|e| Self::error_at(&at, e.to_string()))?;
            Ok(t)
        })?;
        Ok((terms, start))
    }
}

fn build(
    terms: Vec<(Tree, Coeff)>,
    actions: &GeneratorAction,
    sig: &Signature,
    order: OrderingSpec,
) -> Result<OperadPolynomial, OperadError> {
    if terms.iter().all(|(t, _)| t.is_shuffle_monomial().unwrap_or(false)) {
        OperadPolynomial::from_terms(terms, order)
    } else {
        canonicalize_polynomial(&terms, actions, sig, order)
    }
}

/// Parses a presentation file. Relations are kept as written, apart from
/// rewriting non-canonical trees through the declared actions; no orbit
/// closure is applied here.
pub fn parse_presentation(text: &str) -> ParseResult<PresentationFile> {
    let mut signature = Signature::new();
    let mut actions = GeneratorAction::new();
    let mut raw_relations: Vec<(Vec<(Tree, Coeff)>, Token)> = Vec::new();
    let mut ordering = None;
    let mut p = Parser::new(text, &mut signature, Names::Declared)?;
    loop {
        let t = p.next();
        match &t.tok {
            Tok::End => break,
            Tok::Name(k) if k == "generator" => {
                let (name, at) = p.name()?;
                if KEYWORDS.contains(&name.as_str()) {
                    return Err(Parser::error_at(&at, format!("`{name}` is a keyword")));
                }
                let (arity, _) = p.small_int()?;
                p.sig.declare(&name, arity).map_err(|e| Parser::error_at(&at, e.to_string()))?;
            }
            Tok::Name(k) if k == "action" => {
                let (name, at) = p.name()?;
                let gen = p
                    .sig
                    .lookup(&name)
                    .ok_or_else(|| Parser::error_at(&at, format!("undeclared generator `{name}`")))?
                    .clone();
                let (s, s_at) = p.name()?;
                let index = match s.strip_prefix('s') {
                    Some("") => p.small_int()?.0,
                    Some(digits) => digits
                        .parse()
                        .map_err(|_| Parser::error_at(&s_at, format!("expected `s<i>`, found `{s}`")))?,
                    None => return Err(Parser::error_at(&s_at, format!("expected `s<i>`, found `{s}`"))),
                };
                p.expect_sym('=')?;
                let expansion = p.lincomb(|p| {
                    let (h, h_at) = p.name()?;
                    p.sig
                        .lookup(&h)
                        .map(|g| g.ordinal)
                        .ok_or_else(|| Parser::error_at(&h_at, format!("undeclared generator `{h}`")))
                })?;
                actions
                    .set(p.sig, gen.ordinal, index, expansion.into_iter().map(|(h, c)| (c, h)).collect())
                    .map_err(|e| Parser::error_at(&at, e.to_string()))?;
            }
            Tok::Name(k) if k == "relation" => {
                raw_relations.push(p.element_terms()?);
            }
            Tok::Name(k) if k == "ordering" => {
                let (name, at) = p.name()?;
                ordering = Some(name.parse().map_err(|e: opgb_core::orderings::UnknownOrdering| {
                    Parser::error_at(&at, e.to_string())
                })?);
            }
            other => {
                return Err(Parser::error_at(
                    &t,
                    format!(
                        "expected `generator`, `action`, `relation` or `ordering`, found {}",
                        Parser::describe(other)
                    ),
                ))
            }
        }
    }
    actions.check_involutions(&signature).map_err(|e| ParseError {
        line: 1,
        column: 1,
        message: e.to_string(),
    })?;
    let order = ordering.unwrap_or_default();
    let mut relations = Vec::with_capacity(raw_relations.len());
    for (terms, at) in raw_relations {
        let r = build(terms, &actions, &signature, order).map_err(|e| Parser::error_at(&at, e.to_string()))?;
        if r.is_zero() {
            return Err(Parser::error_at(&at, "relation is zero"));
        }
        relations.push(r);
    }
    Ok(PresentationFile {
        signature,
        actions,
        relations,
        ordering,
    })
}

/// Parses one element over the generators of `file`.
pub fn parse_element(text: &str, file: &PresentationFile, order: OrderingSpec) -> ParseResult<OperadPolynomial> {
    let mut sig = file.signature.clone();
    let mut p = Parser::new(text, &mut sig, Names::Declared)?;
    let (terms, at) = p.element_terms()?;
    if p.peek().tok != Tok::End {
        return Err(p.error(format!("unexpected {}", Parser::describe(&p.peek().tok))));
    }
    build(terms, &file.actions, &file.signature, order).map_err(|e| Parser::error_at(&at, e.to_string()))
}

/// Parses a single tree monomial. Undeclared generators are added to `sig`
/// with the arity of their first use.
pub fn parse_monomial(text: &str, sig: &mut Signature) -> ParseResult<Tree> {
    let mut p = Parser::new(text, sig, Names::Infer)?;
    let at = p.peek().clone();
    let t = p.tree()?;
    if p.peek().tok != Tok::End {
        return Err(p.error(format!("unexpected {}", Parser::describe(&p.peek().tok))));
    }
    t.check_labels().map_err(|e| Parser::error_at(&at, e.to_string()))?;
    if !t.is_shuffle_monomial().unwrap_or(false) {
        return Err(Parser::error_at(&at, OperadError::NotCanonical.to_string()));
    }
    Ok(t)
}
