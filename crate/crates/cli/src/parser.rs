//! Line-oriented map file parser.
//!
//! ```text
//! # comment
//! vars X1 X2
//! params a c
//! bind a=3/2 c=-1
//! F1 = X1 + a*(X2 + X1^3)^2
//! F2 = X2
//!    + c*X1^3 / a
//! ```
//!
//! Lines that are not `vars`, `params`, `bind` or `F<k> =` continue the
//! previous component. `^` binds tighter than unary minus, so `-X^2` is
//! `-(X^2)`. Multiplication is explicit except that a literal may be
//! directly followed by a symbol (`3X1` is `3*X1`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use polyinv::Rational;
use thiserror::Error;

use crate::document::{Expr, MapDocument};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    UnexpectedToken { expected: &'static str, found: String },
    #[error("exponent must be a non-negative integer literal")]
    BadExponent,
    #[error("variable in denominator")]
    VariableInDenominator,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("`{0}` must come before any component")]
    MisplacedHeader(&'static str),
    #[error("`vars` declared twice")]
    RepeatedVars,
    #[error("missing `vars` line")]
    MissingVars,
    #[error("expected component F{expected}, found F{found}")]
    ComponentOrder { expected: usize, found: usize },
    #[error("expected {expected} components, found {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error("continuation line outside a component")]
    StrayContinuation,
    #[error("malformed binding `{0}`, expected name=rational")]
    BadBinding(String),
    #[error("binding for undeclared parameter `{0}`")]
    UnknownParameter(String),
    #[error("empty expression")]
    EmptyExpression,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.kind)
    }
}

const KEYWORDS: [&str; 3] = ["vars", "params", "bind"];

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !KEYWORDS.contains(&name)
}

/// Parses `-3`, `3/4`, `-0.25`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, text.strip_prefix('+').unwrap_or(text)),
    };
    let value = if let Some((num, den)) = body.split_once('/') {
        let num: BigInt = parse_digits(num)?;
        let den: BigInt = parse_digits(den)?;
        if den.is_zero() {
            return None;
        }
        Rational::new(num, den)
    } else {
        decimal(body)?
    };
    Some(if sign < 0 { -value } else { value })
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn decimal(s: &str) -> Option<Rational> {
    match s.split_once('.') {
        None => parse_digits(s).map(Rational::from_integer),
        Some((int, frac)) => {
            let int = if int.is_empty() {
                BigInt::zero()
            } else {
                parse_digits(int)?
            };
            let frac_digits = parse_digits(frac)?;
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            Some(Rational::new(int * &scale + frac_digits, scale))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational, String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(_, s) => format!("number `{s}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of expression".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
    /// No whitespace between this token and the previous one on the same line.
    glued: bool,
}

fn tokenize(text: &str, line: usize, first_column: usize, out: &mut Vec<Token>) -> Result<(), ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut glued = false;
    while i < chars.len() {
        let c = chars[i];
        let column = first_column + i;
        if c.is_whitespace() {
            glued = false;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) {
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let value = decimal(&s).ok_or(ParseError {
                line,
                column,
                kind: ParseErrorKind::UnexpectedToken {
                    expected: "a number",
                    found: format!("`{s}`"),
                },
            })?;
            Tok::Num(value, s)
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(ParseError {
                        line,
                        column,
                        kind: ParseErrorKind::UnexpectedChar(other),
                    })
                }
            }
        };
        out.push(Token {
            tok,
            line,
            column,
            glued,
        });
        glued = true;
    }
    Ok(())
}

struct ExprParser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a HashMap<String, usize>,
    params: &'a HashMap<String, usize>,
    end: (usize, usize),
}

impl ExprParser<'_> {
    fn peek(&self) -> &Tok {
        self.tokens.get(self.pos).map_or(&Tok::End, |t| &t.tok)
    }

    fn location(&self) -> (usize, usize) {
        self.tokens.get(self.pos).map_or(self.end, |t| (t.line, t.column))
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        let (line, column) = self.location();
        ParseError { line, column, kind }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        self.error(ParseErrorKind::UnexpectedToken {
            expected,
            found: self.peek().describe(),
        })
    }

    fn parse(mut self) -> Result<Expr, ParseError> {
        if self.tokens.is_empty() {
            return Err(self.error(ParseErrorKind::EmptyExpression));
        }
        let e = self.expr()?;
        if *self.peek() != Tok::End {
            return Err(self.unexpected("an operator"));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.pos += 1;
                    let at = self.location();
                    let rhs = self.unary()?;
                    if rhs.contains_var() {
                        return Err(ParseError {
                            line: at.0,
                            column: at.1,
                            kind: ParseErrorKind::VariableInDenominator,
                        });
                    }
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if let Expr::Num(_) = base {
            let glued_symbol = self
                .tokens
                .get(self.pos)
                .is_some_and(|t| t.glued && matches!(t.tok, Tok::Ident(_)));
            if glued_symbol {
                let rhs = self.power()?;
                return Ok(Expr::Mul(Box::new(base), Box::new(rhs)));
            }
        }
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.pos += 1;
        let exponent = match self.peek() {
            Tok::Num(_, text) if text.bytes().all(|b| b.is_ascii_digit()) => text.parse::<u32>().ok(),
            _ => None,
        };
        let Some(e) = exponent else {
            return Err(self.error(ParseErrorKind::BadExponent));
        };
        self.pos += 1;
        if *self.peek() == Tok::Caret {
            return Err(self.unexpected("an operator other than `^`"));
        }
        Ok(Expr::Pow(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(v, _) => {
                self.pos += 1;
                Ok(Expr::Num(v))
            }
            Tok::Ident(name) => {
                let e = if let Some(&i) = self.vars.get(&name) {
                    Expr::Var(i)
                } else if let Some(&i) = self.params.get(&name) {
                    Expr::Param(i)
                } else {
                    return Err(self.error(ParseErrorKind::UnknownSymbol(name)));
                };
                self.pos += 1;
                Ok(e)
            }
            Tok::LParen => {
                self.pos += 1;
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.unexpected("a number, symbol or `(`")),
        }
    }
}

struct Component {
    index: usize,
    tokens: Vec<Token>,
    end: (usize, usize),
}

/// Splits `F<k> = rest` into `k` and the column where `rest` starts.
fn component_header(line: &str) -> Option<(usize, usize)> {
    let (lhs, _) = line.split_once('=')?;
    let name = lhs.trim();
    let digits = name.strip_prefix('F')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let k = digits.parse().ok()?;
    Some((k, lhs.len() + 1))
}

fn keyword<'a>(line: &'a str, word: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(word)?;
    (rest.is_empty() || rest.starts_with(char::is_whitespace)).then_some(rest)
}

fn declare_names(
    rest: &str,
    line_no: usize,
    offset: usize,
    seen: &mut HashMap<String, usize>,
    out: &mut Vec<String>,
    shared: &HashMap<String, usize>,
) -> Result<(), ParseError> {
    let mut column = offset;
    for piece in rest.split(char::is_whitespace) {
        if !piece.is_empty() {
            let err = |kind| ParseError {
                line: line_no,
                column,
                kind,
            };
            if !is_valid_name(piece) {
                return Err(err(ParseErrorKind::InvalidName(piece.into())));
            }
            if seen.contains_key(piece) || shared.contains_key(piece) {
                return Err(err(ParseErrorKind::DuplicateName(piece.into())));
            }
            seen.insert(piece.to_string(), out.len());
            out.push(piece.to_string());
        }
        column += piece.chars().count() + 1;
    }
    Ok(())
}

pub fn parse_map(source: &str) -> Result<MapDocument, ParseError> {
    let mut variables = Vec::new();
    let mut parameters = Vec::new();
    let mut var_index = HashMap::new();
    let mut param_index = HashMap::new();
    let mut bindings = BTreeMap::new();
    let mut have_vars = false;
    let mut components: Vec<Component> = Vec::new();
    let mut last_line = (1, 1);

    for (n, raw) in source.lines().enumerate() {
        let line_no = n + 1;
        let text = raw.split('#').next().unwrap_or("");
        let indent = text.len() - text.trim_start().len();
        let body = text.trim();
        if body.is_empty() {
            continue;
        }
        let col0 = indent + 1;
        last_line = (line_no, text.trim_end().chars().count() + 1);
        let at = |column, kind| ParseError {
            line: line_no,
            column,
            kind,
        };

        if let Some(rest) = keyword(body, "vars") {
            if have_vars {
                return Err(at(col0, ParseErrorKind::RepeatedVars));
            }
            if !components.is_empty() {
                return Err(at(col0, ParseErrorKind::MisplacedHeader("vars")));
            }
            have_vars = true;
            declare_names(rest, line_no, col0 + 4, &mut var_index, &mut variables, &param_index)?;
        } else if let Some(rest) = keyword(body, "params") {
            if !components.is_empty() {
                return Err(at(col0, ParseErrorKind::MisplacedHeader("params")));
            }
            declare_names(rest, line_no, col0 + 6, &mut param_index, &mut parameters, &var_index)?;
        } else if let Some(rest) = keyword(body, "bind") {
            if !components.is_empty() {
                return Err(at(col0, ParseErrorKind::MisplacedHeader("bind")));
            }
            let mut column = col0 + 4;
            for piece in rest.split(char::is_whitespace) {
                if !piece.is_empty() {
                    let (name, value) = piece
                        .split_once('=')
                        .and_then(|(k, v)| Some((k, parse_rational(v)?)))
                        .ok_or_else(|| at(column, ParseErrorKind::BadBinding(piece.into())))?;
                    if !param_index.contains_key(name) {
                        return Err(at(column, ParseErrorKind::UnknownParameter(name.into())));
                    }
                    bindings.insert(name.to_string(), value);
                }
                column += piece.chars().count() + 1;
            }
        } else if let Some((k, rest_offset)) = component_header(body) {
            if !have_vars {
                return Err(at(col0, ParseErrorKind::MissingVars));
            }
            let expected = components.len() + 1;
            if k != expected {
                return Err(at(col0, ParseErrorKind::ComponentOrder { expected, found: k }));
            }
            let mut tokens = Vec::new();
            tokenize(&body[rest_offset..], line_no, col0 + rest_offset, &mut tokens)?;
            components.push(Component {
                index: k,
                tokens,
                end: last_line,
            });
        } else {
            let Some(current) = components.last_mut() else {
                return Err(at(col0, ParseErrorKind::StrayContinuation));
            };
            let first = current.tokens.len();
            tokenize(body, line_no, col0, &mut current.tokens)?;
            if let Some(t) = current.tokens.get_mut(first) {
                t.glued = false;
            }
            current.end = last_line;
        }
    }

    if !have_vars {
        return Err(ParseError {
            line: last_line.0,
            column: 1,
            kind: ParseErrorKind::MissingVars,
        });
    }
    if components.len() != variables.len() {
        return Err(ParseError {
            line: last_line.0,
            column: last_line.1,
            kind: ParseErrorKind::ComponentCount {
                expected: variables.len(),
                found: components.len(),
            },
        });
    }
    let exprs = components
        .into_iter()
        .map(|c| {
            debug_assert!(c.index >= 1);
            ExprParser {
                tokens: c.tokens,
                pos: 0,
                vars: &var_index,
                params: &param_index,
                end: c.end,
            }
            .parse()
        })
        .collect::<Result<Vec<_>, _>>()?;

    Ok(MapDocument {
        variables,
        parameters,
        bindings,
        components: exprs,
    })
}
