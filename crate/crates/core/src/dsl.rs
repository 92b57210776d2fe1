//! The `.strip` text format and the canonical JSON export.
//!
//! ```text
//! strip A
//!   top (-2,2)
//!   bottom (-2,2)
//! glue A.top[0] ~ A.bottom[0] +
//! ```
//!
//! Grammar:
//!
//! ```text
//! document   := (strip_decl | glue_decl)*
//! strip_decl := "strip" IDENT side_decl*
//! side_decl  := ("top" | "bottom") interval+
//! interval   := "(" rational "," rational ")"
//! glue_decl  := "glue" ref "~" ref sign
//! ref        := IDENT "." ("top" | "bottom") "[" nat "]"
//! sign       := "+" | "-" | "\u{2212}"
//! rational   := ["+" | "-"] nat ["/" nat]
//! ```
//!
//! Line breaks are not significant; `#` starts a comment that runs to the end
//! of the line. In a glue declaration the left reference is the source of the
//! gluing map and the right reference its target.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Number, Value};

use crate::model::{
    validate_surface, Diagnostics, Gluing, GluingSign, Interval, IntervalRef, ModelStrip, Side, StripId,
    StrippedSurface,
};
use crate::rational::{Rational, RationalParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParseErrorCode {
    Syntax,
    UnknownRef,
    DuplicateId,
    BadRational,
}

impl ParseErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ParseErrorCode::Syntax => "SYNTAX",
            ParseErrorCode::UnknownRef => "UNKNOWN_REF",
            ParseErrorCode::DuplicateId => "DUPLICATE_ID",
            ParseErrorCode::BadRational => "BAD_RATIONAL",
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            ParseErrorCode::Syntax => "syntax error",
            ParseErrorCode::UnknownRef => "unknown reference",
            ParseErrorCode::DuplicateId => "duplicate strip id",
            ParseErrorCode::BadRational => "bad rational",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub code: ParseErrorCode,
    pub message: String,
}

impl ParseError {
    fn new(span: SourceSpan, code: ParseErrorCode, detail: impl fmt::Display) -> Self {
        ParseError { span, code, message: format!("{}: {detail}", code.prefix()) }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "code": self.code.as_str(),
            "message": self.message,
            "line": self.span.line,
            "column": self.span.column,
            "length": self.span.length,
        })
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} {}", self.span, self.code.as_str(), self.message)
    }
}

/// Why a document did not yield a valid surface.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LoadError {
    #[error("{}", display_all(.0))]
    Parse(Vec<ParseError>),
    #[error("{0}")]
    Invalid(Diagnostics),
}

fn display_all(errors: &[ParseError]) -> String {
    errors.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("\n")
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Nat(String),
    Decimal(String),
    LParen,
    RParen,
    Comma,
    Dot,
    LBracket,
    RBracket,
    Tilde,
    Slash,
    Plus,
    Minus,
    Stray(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) | Tok::Nat(w) | Tok::Decimal(w) => write!(f, "`{w}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Stray(c) => write!(f, "`{c}`"),
        }
    }
}

fn lex(text: &str) -> Vec<(Tok, SourceSpan)> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let start = i;
            let tok = if c == '#' {
                break;
            } else if c.is_whitespace() {
                i += 1;
                continue;
            } else if c.is_ascii_alphabetic() || c == '_' {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                Tok::Word(chars[start..i].iter().collect())
            } else if c.is_ascii_digit() {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    Tok::Decimal(chars[start..i].iter().collect())
                } else {
                    Tok::Nat(chars[start..i].iter().collect())
                }
            } else {
                i += 1;
                match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    '.' => Tok::Dot,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '~' => Tok::Tilde,
                    '/' => Tok::Slash,
                    '+' => Tok::Plus,
                    '-' | '\u{2212}' => Tok::Minus,
                    other => Tok::Stray(other),
                }
            };
            out.push((tok, SourceSpan { line: li + 1, column: start + 1, length: i - start }));
        }
    }
    out
}

struct RefAt {
    reference: IntervalRef,
    span: SourceSpan,
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    end: SourceSpan,
    errors: Vec<ParseError>,
    declared: std::collections::BTreeSet<String>,
}

type Step<T> = std::result::Result<T, ()>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn span(&self) -> SourceSpan {
        self.toks.get(self.pos).map(|(_, s)| *s).unwrap_or(self.end)
    }

    fn at_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Tok::Word(x)) if x == w)
    }

    fn fail<T>(&mut self, code: ParseErrorCode, span: SourceSpan, detail: impl fmt::Display) -> Step<T> {
        self.errors.push(ParseError::new(span, code, detail));
        Err(())
    }

    fn unexpected<T>(&mut self, wanted: &str) -> Step<T> {
        let span = self.span();
        let found = match self.peek() {
            Some(t) => t.to_string(),
            None => "end of input".to_string(),
        };
        self.fail(ParseErrorCode::Syntax, span, format!("expected {wanted}, found {found}"))
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Step<SourceSpan> {
        if self.peek() == Some(&tok) {
            let s = self.span();
            self.pos += 1;
            Ok(s)
        } else {
            self.unexpected(wanted)
        }
    }

    fn ident(&mut self) -> Step<(String, SourceSpan)> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                let out = (w.clone(), self.span());
                self.pos += 1;
                Ok(out)
            }
            _ => self.unexpected("an identifier"),
        }
    }

    fn nat(&mut self) -> Step<(String, SourceSpan)> {
        match self.peek() {
            Some(Tok::Nat(n)) => {
                let out = (n.clone(), self.span());
                self.pos += 1;
                Ok(out)
            }
            _ => self.unexpected("a natural number"),
        }
    }

    /// Skips to the next top-level keyword.
    fn recover(&mut self) {
        while let Some(t) = self.peek() {
            if matches!(t, Tok::Word(w) if w == "strip" || w == "glue") {
                break;
            }
            self.pos += 1;
        }
    }

    fn rational(&mut self) -> Step<Rational> {
        let start = self.span();
        let mut text = String::new();
        match self.peek() {
            Some(Tok::Minus) => {
                text.push('-');
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        match self.peek().cloned() {
            Some(Tok::Decimal(d)) => {
                let span = self.span();
                self.pos += 1;
                return self.fail(ParseErrorCode::BadRational, span, format!("`{d}`: {}", RationalParseError::Decimal));
            }
            Some(Tok::Nat(n)) => {
                text.push_str(&n);
                self.pos += 1;
            }
            _ => return self.unexpected("a rational number"),
        }
        if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Nat(d)) => {
                    text.push('/');
                    text.push_str(&d);
                    self.pos += 1;
                }
                Some(Tok::Decimal(d)) => {
                    let span = self.span();
                    self.pos += 1;
                    return self.fail(ParseErrorCode::BadRational, span, format!("`{d}`: {}", RationalParseError::Decimal));
                }
                _ => return self.unexpected("a denominator"),
            }
        }
        let prev = self.toks[self.pos - 1].1;
        let span = SourceSpan {
            line: start.line,
            column: start.column,
            length: if prev.line == start.line { prev.column + prev.length - start.column } else { start.length },
        };
        match text.parse::<Rational>() {
            Ok(r) => Ok(r),
            Err(e) => self.fail(ParseErrorCode::BadRational, span, format!("`{text}`: {e}")),
        }
    }

    fn interval(&mut self) -> Step<Interval> {
        self.expect(Tok::LParen, "`(`")?;
        let a = self.rational()?;
        self.expect(Tok::Comma, "`,`")?;
        let b = self.rational()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(Interval { a, b })
    }

    fn side_keyword(&mut self) -> Step<Side> {
        let side = if self.at_word("top") {
            Side::Plus
        } else if self.at_word("bottom") {
            Side::Minus
        } else {
            return self.unexpected("`top` or `bottom`");
        };
        self.pos += 1;
        Ok(side)
    }

    fn strip_decl(&mut self) -> Step<ModelStrip> {
        self.pos += 1; // `strip`
        let (name, span) = self.ident()?;
        if !self.declared.insert(name.clone()) {
            self.errors.push(ParseError::new(span, ParseErrorCode::DuplicateId, format!("`{name}` is declared twice")));
        }
        let mut strip = ModelStrip::new(name);
        while self.at_word("top") || self.at_word("bottom") {
            let side = self.side_keyword()?;
            if self.peek() != Some(&Tok::LParen) {
                return self.unexpected("an interval");
            }
            while self.peek() == Some(&Tok::LParen) {
                let iv = self.interval()?;
                strip.side_mut(side).push(iv);
            }
        }
        Ok(strip)
    }

    fn reference(&mut self) -> Step<RefAt> {
        let (strip, start) = self.ident()?;
        self.expect(Tok::Dot, "`.`")?;
        let side = self.side_keyword()?;
        self.expect(Tok::LBracket, "`[`")?;
        let (index, index_span) = self.nat()?;
        let end = self.expect(Tok::RBracket, "`]`")?;
        let index = match index.parse::<usize>() {
            Ok(i) => i,
            Err(_) => return self.fail(ParseErrorCode::Syntax, index_span, format!("index `{index}` is too large")),
        };
        let length = if end.line == start.line { end.column + 1 - start.column } else { start.length };
        Ok(RefAt {
            reference: IntervalRef { strip: StripId(strip), side, index },
            span: SourceSpan { line: start.line, column: start.column, length },
        })
    }

    fn glue_decl(&mut self) -> Step<(RefAt, RefAt, GluingSign)> {
        self.pos += 1; // `glue`
        let src = self.reference()?;
        self.expect(Tok::Tilde, "`~`")?;
        let dst = self.reference()?;
        let sign = match self.peek() {
            Some(Tok::Plus) => GluingSign::Preserving,
            Some(Tok::Minus) => GluingSign::Reversing,
            _ => return self.unexpected("`+` or `-`"),
        };
        self.pos += 1;
        Ok((src, dst, sign))
    }
}

/// Parses a document without running surface validation. Reference
/// resolution and duplicate-id checks are still performed.
pub fn parse_unvalidated(text: &str) -> Result<StrippedSurface, Vec<ParseError>> {
    let toks = lex(text);
    let end = toks
        .last()
        .map(|(_, s)| SourceSpan { line: s.line, column: s.column + s.length, length: 0 })
        .unwrap_or(SourceSpan { line: 1, column: 1, length: 0 });
    let mut p = Parser { toks, pos: 0, end, errors: Vec::new(), declared: Default::default() };
    let mut surface = StrippedSurface::new();
    let mut glues = Vec::new();

    while let Some(tok) = p.peek().cloned() {
        match tok {
            Tok::Word(w) if w == "strip" => match p.strip_decl() {
                Ok(strip) => {
                    // a duplicate has already been reported; the first declaration wins
                    surface.add_strip(strip);
                }
                Err(()) => p.recover(),
            },
            Tok::Word(w) if w == "glue" => match p.glue_decl() {
                Ok(g) => glues.push(g),
                Err(()) => p.recover(),
            },
            _ => {
                let _ = p.unexpected::<()>("`strip` or `glue`");
                p.pos += 1;
                p.recover();
            }
        }
    }

    for (src, dst, sign) in glues {
        let mut ok = true;
        for r in [&src, &dst] {
            let detail = match surface.strip(&r.reference.strip) {
                None => Some(format!("no strip named `{}`", r.reference.strip)),
                Some(s) if r.reference.index >= s.side(r.reference.side).len() => {
                    Some(format!("`{}` has no interval {}", r.reference.strip, r.reference))
                }
                Some(_) => None,
            };
            if let Some(detail) = detail {
                p.errors.push(ParseError::new(r.span, ParseErrorCode::UnknownRef, detail));
                ok = false;
            }
        }
        if ok {
            surface.gluings.push(Gluing::new(src.reference, dst.reference, sign));
        }
    }

    if !p.errors.is_empty() {
        p.errors.sort_by_key(|e| (e.span.line, e.span.column));
        return Err(p.errors);
    }
    surface.canonicalize();
    surface.assign_default_provenance();
    Ok(surface)
}

/// Parses and validates a document.
pub fn parse_surface(text: &str) -> Result<StrippedSurface, LoadError> {
    let surface = parse_unvalidated(text).map_err(LoadError::Parse)?;
    let diag = validate_surface(&surface);
    if diag.ok() {
        Ok(surface)
    } else {
        Err(LoadError::Invalid(diag))
    }
}

/// Canonical text: strips by id, each listing `top` then `bottom`, followed
/// by gluings ordered by source reference.
pub fn serialize_surface(surface: &StrippedSurface) -> String {
    let mut out = String::new();
    for strip in surface.strips.values() {
        out.push_str("strip ");
        out.push_str(strip.id.as_str());
        out.push('\n');
        for side in [Side::Plus, Side::Minus] {
            let list = strip.side(side);
            if list.is_empty() {
                continue;
            }
            out.push_str("  ");
            out.push_str(side.keyword());
            for iv in list {
                out.push(' ');
                out.push_str(&iv.to_string());
            }
            out.push('\n');
        }
    }
    let mut gluings: Vec<&Gluing> = surface.gluings.iter().collect();
    gluings.sort_by(|x, y| (&x.src, &x.dst).cmp(&(&y.src, &y.dst)));
    for g in gluings {
        out.push_str(&format!("glue {} ~ {} {}\n", g.src, g.dst, g.sign));
    }
    out
}

pub fn rational_json(r: &Rational) -> Value {
    let num = |n: &num_bigint::BigInt| -> Value {
        n.to_string().parse::<Number>().map(Value::Number).unwrap_or_else(|_| Value::String(n.to_string()))
    };
    json!({ "num": num(r.numer()), "den": num(r.denom()) })
}

fn interval_json(iv: &Interval) -> Value {
    json!({ "a": rational_json(&iv.a), "b": rational_json(&iv.b) })
}

/// JSON form of a surface with keys `strips`, `gluings`, `provenance`.
pub fn surface_json(surface: &StrippedSurface) -> Value {
    let strips: Vec<Value> = surface
        .strips
        .values()
        .map(|s| {
            json!({
                "id": s.id,
                "bottom": s.bottom.iter().map(interval_json).collect::<Vec<_>>(),
                "top": s.top.iter().map(interval_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut gluings: Vec<&Gluing> = surface.gluings.iter().collect();
    gluings.sort_by(|x, y| (&x.src, &x.dst).cmp(&(&y.src, &y.dst)));
    let gluings: Vec<Value> =
        gluings.iter().map(|g| json!({ "src": g.src, "dst": g.dst, "sign": g.sign })).collect();
    let provenance: BTreeMap<String, Value> = surface
        .interval_refs()
        .into_iter()
        .map(|r| (r.to_string(), Value::String(surface.leaf_id_of(&r).0)))
        .collect();
    json!({
        "strips": strips,
        "gluings": gluings,
        "provenance": Value::Object(provenance.into_iter().collect::<Map<_, _>>()),
    })
}

pub fn emit_json(surface: &StrippedSurface) -> String {
    let mut s = serde_json::to_string_pretty(&surface_json(surface)).expect("json values always serialize");
    s.push('\n');
    s
}
