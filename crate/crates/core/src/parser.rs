//! Text formats.
//!
//! Polynomials:
//!
//! ```text
//! input  := '0' | expr
//! expr   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := 'X' digits | '1' | '(' expr ')'
//! ```
//!
//! Whitespace (including newlines) is insignificant and `*` is mandatory,
//! so `X1X2` is rejected. Dense vectors are `anf:` or `tt:` followed either
//! by `2^n` binary digits (leftmost is index 0) or by `hex:n=<n>:<digits>`.
//! Corpus files put `#key=value` header lines (`indexing`, `n`) before a
//! single expression.

use std::fmt;

use thiserror::Error;

use crate::dense::{DenseForm, Role};
use crate::expr::{write_monomial, FactoredExpr};
use crate::poly::{Monomial, SparsePoly, DENSE_MAX_VARS, MAX_VARS};

/// How `X<k>` maps to a variable position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Indexing {
    ZeroBased,
    #[default]
    OneBased,
}

impl Indexing {
    /// The number written after `X` for `pos`.
    pub fn display_index(self, pos: u32) -> u32 {
        match self {
            Indexing::ZeroBased => pos,
            Indexing::OneBased => pos + 1,
        }
    }
}

/// Byte offsets into the parsed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }

    fn at(pos: usize) -> Self {
        SourceSpan::new(pos, pos)
    }

    fn shifted(self, by: usize) -> Self {
        SourceSpan::new(self.start + by, self.end + by)
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    /// Two factors or terms with no operator between them.
    MissingOperator,
    UnclosedParen,
    /// `X0` under one-based indexing.
    ZeroIndex,
    IndexTooLarge,
    /// `0` used inside a larger expression.
    MisplacedZero,
    MissingRole,
    BadLength(usize),
    BadHeader(String),
    TooManyVars(u64),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::MissingOperator => f.write_str("expected '+' or '*' between factors"),
            ParseErrorKind::UnclosedParen => f.write_str("unclosed '('"),
            ParseErrorKind::ZeroIndex => f.write_str("X0 is not a variable under one-based indexing"),
            ParseErrorKind::IndexTooLarge => {
                write!(f, "variable index beyond the {MAX_VARS}-variable limit")
            }
            ParseErrorKind::MisplacedZero => f.write_str("'0' is only allowed as the whole expression"),
            ParseErrorKind::MissingRole => f.write_str("dense input needs an 'anf:' or 'tt:' prefix"),
            ParseErrorKind::BadLength(len) => {
                write!(f, "{len} bits is not a power of two")
            }
            ParseErrorKind::BadHeader(h) => write!(f, "bad header line: {h}"),
            ParseErrorKind::TooManyVars(n) => {
                write!(f, "{n} variables exceeds the dense limit of {DENSE_MAX_VARS}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at {span}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
}

impl ParseError {
    fn new(kind: ParseErrorKind, span: SourceSpan) -> Self {
        ParseError { kind, span }
    }
}

type PResult<T> = Result<T, ParseError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Var(u32),
    One,
    Zero,
    Plus,
    Star,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    indexing: Indexing,
}

impl<'a> Lexer<'a> {
    fn next(&mut self) -> PResult<Option<(Tok, SourceSpan)>> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&b) = bytes.get(start) else {
            return Ok(None);
        };
        let single = |tok| Ok(Some((tok, SourceSpan::new(start, start + 1))));
        match b {
            b'+' => {
                self.pos += 1;
                single(Tok::Plus)
            }
            b'*' => {
                self.pos += 1;
                single(Tok::Star)
            }
            b'(' => {
                self.pos += 1;
                single(Tok::LParen)
            }
            b')' => {
                self.pos += 1;
                single(Tok::RParen)
            }
            b'X' => {
                let digits_start = start + 1;
                let mut end = digits_start;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                self.pos = end;
                let span = SourceSpan::new(start, end);
                if end == digits_start {
                    return Err(match bytes.get(end) {
                        Some(_) => ParseError::new(
                            ParseErrorKind::UnexpectedChar(self.char_at(end)),
                            SourceSpan::new(end, end + 1),
                        ),
                        None => ParseError::new(ParseErrorKind::UnexpectedEnd, SourceSpan::at(end)),
                    });
                }
                let index: u64 = self.src[digits_start..end]
                    .parse()
                    .map_err(|_| ParseError::new(ParseErrorKind::IndexTooLarge, span))?;
                let pos = match self.indexing {
                    Indexing::ZeroBased => index,
                    Indexing::OneBased if index == 0 => {
                        return Err(ParseError::new(ParseErrorKind::ZeroIndex, span))
                    }
                    Indexing::OneBased => index - 1,
                };
                if pos >= u64::from(MAX_VARS) {
                    return Err(ParseError::new(ParseErrorKind::IndexTooLarge, span));
                }
                Ok(Some((Tok::Var(pos as u32), span)))
            }
            b'0' | b'1' => {
                self.pos += 1;
                if bytes.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    return Err(ParseError::new(
                        ParseErrorKind::UnexpectedChar(self.char_at(self.pos)),
                        SourceSpan::new(self.pos, self.pos + 1),
                    ));
                }
                single(if b == b'1' { Tok::One } else { Tok::Zero })
            }
            _ => {
                let c = self.char_at(start);
                Err(ParseError::new(
                    ParseErrorKind::UnexpectedChar(c),
                    SourceSpan::new(start, start + c.len_utf8()),
                ))
            }
        }
    }

    fn char_at(&self, pos: usize) -> char {
        self.src[pos..].chars().next().unwrap_or('\u{fffd}')
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<Option<(Tok, SourceSpan)>>,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> PResult<Option<(Tok, SourceSpan)>> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lexer.next()?);
        }
        Ok(self.peeked.unwrap())
    }

    fn bump(&mut self) -> PResult<Option<(Tok, SourceSpan)>> {
        let t = self.peek()?;
        self.peeked = None;
        Ok(t)
    }

    fn input(&mut self) -> PResult<FactoredExpr> {
        if let Some((Tok::Zero, _)) = self.peek()? {
            self.bump()?;
            return match self.bump()? {
                None => Ok(FactoredExpr::zero()),
                Some((_, span)) => Err(ParseError::new(ParseErrorKind::MisplacedZero, span)),
            };
        }
        let e = self.expr()?;
        match self.bump()? {
            None => Ok(e),
            Some((Tok::RParen, span)) => Err(ParseError::new(ParseErrorKind::UnexpectedChar(')'), span)),
            Some((_, span)) => Err(ParseError::new(ParseErrorKind::MissingOperator, span)),
        }
    }

    fn expr(&mut self) -> PResult<FactoredExpr> {
        let mut terms = vec![self.term()?];
        while let Some((Tok::Plus, _)) = self.peek()? {
            self.bump()?;
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            FactoredExpr::Sum(terms)
        })
    }

    fn term(&mut self) -> PResult<FactoredExpr> {
        let mut factors = vec![self.factor()?];
        while let Some((Tok::Star, _)) = self.peek()? {
            self.bump()?;
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            FactoredExpr::Product(factors)
        })
    }

    fn factor(&mut self) -> PResult<FactoredExpr> {
        match self.bump()? {
            Some((Tok::Var(p), _)) => Ok(FactoredExpr::var(p)),
            Some((Tok::One, _)) => Ok(FactoredExpr::One),
            Some((Tok::LParen, open)) => {
                let inner = self.expr()?;
                match self.bump()? {
                    Some((Tok::RParen, _)) => Ok(inner),
                    Some((_, span)) => Err(ParseError::new(ParseErrorKind::MissingOperator, span)),
                    None => Err(ParseError::new(ParseErrorKind::UnclosedParen, open)),
                }
            }
            Some((Tok::Zero, span)) => Err(ParseError::new(ParseErrorKind::MisplacedZero, span)),
            Some((Tok::Plus, span)) => Err(ParseError::new(ParseErrorKind::UnexpectedChar('+'), span)),
            Some((Tok::Star, span)) => Err(ParseError::new(ParseErrorKind::UnexpectedChar('*'), span)),
            Some((Tok::RParen, span)) => Err(ParseError::new(ParseErrorKind::UnexpectedChar(')'), span)),
            None => Err(ParseError::new(
                ParseErrorKind::UnexpectedEnd,
                SourceSpan::at(self.lexer.src.len()),
            )),
        }
    }
}

/// Parses a polynomial expression, keeping its factorization.
pub fn parse_poly(text: &str, indexing: Indexing) -> Result<FactoredExpr, ParseError> {
    let mut parser = Parser {
        lexer: Lexer {
            src: text,
            pos: 0,
            indexing,
        },
        peeked: None,
    };
    parser.input()
}

/// Parses `anf:...` or `tt:...` into a dense vector.
pub fn parse_dense(text: &str) -> Result<DenseForm, ParseError> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    let (role, rest) = if let Some(r) = body.strip_prefix("anf:") {
        (Role::Anf, r)
    } else if let Some(r) = body.strip_prefix("tt:") {
        (Role::TruthTable, r)
    } else {
        return Err(ParseError::new(ParseErrorKind::MissingRole, SourceSpan::new(lead, lead)));
    };
    let offset = lead + (body.len() - rest.len());
    let result = match rest.strip_prefix("hex:") {
        Some(hex) => parse_hex_payload(role, hex).map_err(|e| ParseError {
            span: e.span.shifted(4),
            ..e
        }),
        None => parse_bin_payload(role, rest),
    };
    result.map_err(|e| ParseError {
        span: e.span.shifted(offset),
        ..e
    })
}

fn check_dense_n(n: u64, span: SourceSpan) -> PResult<u32> {
    if n > u64::from(DENSE_MAX_VARS) {
        return Err(ParseError::new(ParseErrorKind::TooManyVars(n), span));
    }
    Ok(n as u32)
}

fn parse_bin_payload(role: Role, bits: &str) -> PResult<DenseForm> {
    if let Some((i, c)) = bits.char_indices().find(|(_, c)| *c != '0' && *c != '1') {
        return Err(ParseError::new(
            ParseErrorKind::UnexpectedChar(c),
            SourceSpan::new(i, i + c.len_utf8()),
        ));
    }
    let len = bits.len();
    let whole = SourceSpan::new(0, len);
    if !len.is_power_of_two() {
        return Err(ParseError::new(ParseErrorKind::BadLength(len), whole));
    }
    let n = check_dense_n(u64::from(len.trailing_zeros()), whole)?;
    let mut d = DenseForm::zeros(n, role).expect("n checked against the dense limit");
    for (k, c) in bits.bytes().enumerate() {
        if c == b'1' {
            d.set(k, true);
        }
    }
    Ok(d)
}

fn parse_hex_payload(role: Role, payload: &str) -> PResult<DenseForm> {
    let Some(after_n) = payload.strip_prefix("n=") else {
        return Err(ParseError::new(
            ParseErrorKind::BadHeader("hex form needs n=<count>".into()),
            SourceSpan::at(0),
        ));
    };
    let Some(colon) = after_n.find(':') else {
        return Err(ParseError::new(ParseErrorKind::UnexpectedEnd, SourceSpan::at(payload.len())));
    };
    let n_span = SourceSpan::new(2, 2 + colon);
    let n: u64 = after_n[..colon].parse().map_err(|_| {
        ParseError::new(
            ParseErrorKind::BadHeader(format!("bad variable count {:?}", &after_n[..colon])),
            n_span,
        )
    })?;
    let n = check_dense_n(n, n_span)?;
    let digits = &after_n[colon + 1..];
    let base = 2 + colon + 1;
    let len = 1usize << n;
    let want = len.div_ceil(4);
    if digits.len() != want {
        return Err(ParseError::new(
            ParseErrorKind::BadLength(digits.len() * 4),
            SourceSpan::new(base, base + digits.len()),
        ));
    }
    let mut d = DenseForm::zeros(n, role).expect("n checked against the dense limit");
    for (i, c) in digits.char_indices() {
        let span = SourceSpan::new(base + i, base + i + c.len_utf8());
        let v = c
            .to_digit(16)
            .ok_or_else(|| ParseError::new(ParseErrorKind::UnexpectedChar(c), span))?;
        for b in 0..4 {
            if v >> (3 - b) & 1 == 1 {
                let k = 4 * i + b;
                if k >= len {
                    // padding past 2^n must stay clear
                    return Err(ParseError::new(ParseErrorKind::UnexpectedChar(c), span));
                }
                d.set(k, true);
            }
        }
    }
    Ok(d)
}

/// A corpus file: header metadata plus one expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub indexing: Indexing,
    /// Declared variable count, if any.
    pub nvars: Option<u32>,
    pub expr: FactoredExpr,
}

impl Corpus {
    /// Declared count, else the smallest count that fits the expression.
    pub fn nvars(&self) -> u32 {
        self.nvars.unwrap_or_else(|| self.expr.min_vars())
    }
}

/// Parses a corpus file. `default_indexing` applies when no header sets it.
pub fn parse_corpus(text: &str, default_indexing: Indexing) -> Result<Corpus, ParseError> {
    let mut indexing = default_indexing;
    let mut nvars = None;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            offset += line.len();
            continue;
        }
        let Some(header) = trimmed.strip_prefix('#') else {
            break;
        };
        let span = SourceSpan::new(offset, offset + line.trim_end().len());
        if let Some((key, value)) = header.split_once('=') {
            match (key.trim(), value.trim()) {
                ("indexing", "0") => indexing = Indexing::ZeroBased,
                ("indexing", "1") => indexing = Indexing::OneBased,
                ("n", v) => match v.parse::<u32>() {
                    Ok(n) if n <= MAX_VARS => nvars = Some(n),
                    _ => return Err(ParseError::new(ParseErrorKind::BadHeader(trimmed.into()), span)),
                },
                _ => return Err(ParseError::new(ParseErrorKind::BadHeader(trimmed.into()), span)),
            }
        }
        offset += line.len();
    }
    let expr = parse_poly(&text[offset..], indexing).map_err(|e| ParseError {
        span: e.span.shifted(offset),
        ..e
    })?;
    if let Some(n) = nvars {
        if expr.min_vars() > n {
            return Err(ParseError::new(
                ParseErrorKind::BadHeader(format!(
                    "n={n} but the expression uses {} variables",
                    expr.min_vars()
                )),
                SourceSpan::new(offset, text.len()),
            ));
        }
    }
    Ok(Corpus {
        indexing,
        nvars,
        expr,
    })
}

/// Canonical text of a polynomial: ascending monomials joined by ` + `,
/// `0` for the zero polynomial.
pub fn serialize_poly(p: &SparsePoly, indexing: Indexing) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, m) in p.monomials().iter().enumerate() {
        if k > 0 {
            out.push_str(" + ");
        }
        write_monomial(&mut out, *m, indexing);
    }
    out
}

/// `anf:0101`-style text.
pub fn serialize_dense(d: &DenseForm) -> String {
    format!("{}:{}", d.role().prefix(), d.to_bitstring())
}

/// `anf:hex:n=<n>:<digits>`, first digit covering indices 0..4 (MSB first).
pub fn serialize_dense_hex(d: &DenseForm) -> String {
    let len = d.len();
    let digits: String = (0..len.div_ceil(4))
        .map(|i| {
            let v = (0..4).fold(0u32, |acc, b| {
                let k = 4 * i + b;
                acc << 1 | u32::from(k < len && d.get(k))
            });
            char::from_digit(v, 16).unwrap()
        })
        .collect();
    format!("{}:hex:n={}:{digits}", d.role().prefix(), d.n())
}

/// Anything with a canonical text form.
pub trait Canonical {
    fn canonical(&self, indexing: Indexing) -> String;
}

impl Canonical for SparsePoly {
    fn canonical(&self, indexing: Indexing) -> String {
        serialize_poly(self, indexing)
    }
}

impl Canonical for DenseForm {
    fn canonical(&self, _: Indexing) -> String {
        serialize_dense(self)
    }
}

impl Canonical for FactoredExpr {
    fn canonical(&self, indexing: Indexing) -> String {
        self.to_text(indexing)
    }
}

impl Canonical for Monomial {
    fn canonical(&self, indexing: Indexing) -> String {
        let mut s = String::new();
        write_monomial(&mut s, *self, indexing);
        s
    }
}
