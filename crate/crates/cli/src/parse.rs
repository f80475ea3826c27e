//! Reader for `.sys` system files.
//!
//! ```text
//! # comment
//! dx/dt = x^2 + y
//! dy/dt = -3*x^3 + x*y
//! ```
//!
//! or a canonical cubic form with its parameters:
//!
//! ```text
//! form cubic-nf7
//! p1 = 1
//! p2 = 0.5
//! p3 = -1
//! alpha = 1
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, One, Zero};
use thiserror::Error;
use whvf::algebra::{BivariatePoly, Rational};
use whvf::catalog::{CubicForm, FamilyTag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A parsed input file.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSource {
    pub dx_expr: String,
    pub dy_expr: String,
    pub p: BivariatePoly,
    pub q: BivariatePoly,
    /// Set when the file names a canonical form instead of a field.
    pub canonical: Option<FamilyTag>,
    pub origin: Origin,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Origin {
    pub file: Option<String>,
    /// Line of the first statement.
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(Rational),
    Var(char),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Num(r) => write!(f, "number {r}"),
            Token::Var(c) => write!(f, "variable {c}"),
            Token::Plus => f.write_str("'+'"),
            Token::Minus => f.write_str("'-'"),
            Token::Star => f.write_str("'*'"),
            Token::Caret => f.write_str("'^'"),
            Token::LParen => f.write_str("'('"),
            Token::RParen => f.write_str("')'"),
        }
    }
}

fn digits_to_int(s: &str) -> BigInt {
    s.parse().expect("ascii digits")
}

/// Tokens with their 1-based columns.
fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<(Token, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let err = |i: usize, message: String| ParseError { line, column: col0 + i, message };
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        match c {
            ' ' | '\t' | '\r' => i += 1,
            '+' => push(&mut out, Token::Plus, col, &mut i),
            '-' => push(&mut out, Token::Minus, col, &mut i),
            '*' => push(&mut out, Token::Star, col, &mut i),
            '^' => push(&mut out, Token::Caret, col, &mut i),
            '(' => push(&mut out, Token::LParen, col, &mut i),
            ')' => push(&mut out, Token::RParen, col, &mut i),
            '0'..='9' | '.' => {
                let start = i;
                let take = |i: &mut usize| {
                    let s = *i;
                    while *i < chars.len() && chars[*i].is_ascii_digit() {
                        *i += 1;
                    }
                    chars[s..*i].iter().collect::<String>()
                };
                let whole = take(&mut i);
                let mut value = if whole.is_empty() { BigInt::zero() } else { digits_to_int(&whole) };
                let mut denom = BigInt::one();
                if i < chars.len() && chars[i] == '.' {
                    i += 1;
                    let frac = take(&mut i);
                    if whole.is_empty() && frac.is_empty() {
                        return Err(err(start, "expected digits around '.'".into()));
                    }
                    for d in frac.chars() {
                        value = value * 10 + d.to_digit(10).unwrap();
                        denom *= 10;
                    }
                }
                if i < chars.len() && chars[i] == '/' {
                    if denom != BigInt::one() {
                        return Err(err(i, "a rational literal needs an integer numerator".into()));
                    }
                    i += 1;
                    let d = take(&mut i);
                    if d.is_empty() {
                        return Err(err(i, "expected an integer denominator after '/'".into()));
                    }
                    denom = digits_to_int(&d);
                    if denom.is_zero() {
                        return Err(err(start, "zero denominator".into()));
                    }
                }
                if i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                    return Err(err(i, format!("unexpected '{}' after a number; '*' is required between factors", chars[i])));
                }
                out.push((Token::Num(Rational::new(value, denom)), col));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                match name.as_str() {
                    "x" => out.push((Token::Var('x'), col)),
                    "y" => out.push((Token::Var('y'), col)),
                    _ => return Err(err(start, format!("unknown name '{name}', expected x or y"))),
                }
            }
            '/' => return Err(err(i, "division is only allowed inside a rational literal such as 3/4".into())),
            other => return Err(err(i, format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

fn push(out: &mut Vec<(Token, usize)>, t: Token, col: usize, i: &mut usize) {
    out.push((t, col));
    *i += 1;
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    line: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.0)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |t| t.1)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.column(), message: message.into() }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(format!("unexpected {t}, expected {expected}")),
            None => self.error(format!("unexpected end of expression, expected {expected}")),
        }
    }

    fn expr(&mut self) -> Result<BivariatePoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BivariatePoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Token::Num(_) | Token::Var(_) | Token::LParen) => {
                    return Err(self.unexpected("an operator ('*' is required between factors)"))
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<BivariatePoly, ParseError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BivariatePoly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let column = self.column();
        let parenthesized = self.peek() == Some(&Token::LParen);
        if parenthesized {
            self.pos += 1;
        }
        let exponent = match self.peek().cloned() {
            Some(Token::Num(r)) => r,
            _ => return Err(self.unexpected("a nonnegative integer exponent")),
        };
        self.pos += 1;
        if parenthesized {
            if self.peek() != Some(&Token::RParen) {
                return Err(self.unexpected("')'"));
            }
            self.pos += 1;
        }
        let k: Option<u32> = exponent.is_integer().then(|| exponent.to_integer().try_into().ok()).flatten();
        match k {
            Some(k) => Ok(base.pow(k)),
            None => Err(ParseError {
                line: self.line,
                column,
                message: format!("exponent {exponent} is not a nonnegative integer"),
            }),
        }
    }

    fn atom(&mut self) -> Result<BivariatePoly, ParseError> {
        match self.peek().cloned() {
            Some(Token::Num(r)) => {
                self.pos += 1;
                Ok(BivariatePoly::constant(r))
            }
            Some(Token::Var('x')) => {
                self.pos += 1;
                Ok(BivariatePoly::x())
            }
            Some(Token::Var(_)) => {
                self.pos += 1;
                Ok(BivariatePoly::y())
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(self.unexpected("')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, x, y or '('")),
        }
    }
}

/// Parses one polynomial expression; `col0` is the column of its first character.
pub fn parse_expr(text: &str, line: usize, col0: usize) -> Result<BivariatePoly, ParseError> {
    let tokens = lex(text, line, col0)?;
    let end_column = col0 + text.chars().count();
    let mut parser = Parser { tokens, pos: 0, line, end_column };
    let poly = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(parser.unexpected("an operator or end of line"));
    }
    Ok(poly)
}

pub fn parse_system(src: &str) -> Result<SystemSource, ParseError> {
    let mut dx: Option<(String, BivariatePoly, usize)> = None;
    let mut dy: Option<(String, BivariatePoly, usize)> = None;
    let mut form: Option<(CubicForm, usize)> = None;
    let mut params: BTreeMap<String, Rational> = BTreeMap::new();
    let mut first_line = 0;
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let text = raw.split('#').next().unwrap_or("");
        if text.trim().is_empty() {
            continue;
        }
        if first_line == 0 {
            first_line = line;
        }
        let indent = text.len() - text.trim_start().len();
        let body = text.trim();
        let at = |col: usize, message: String| ParseError { line, column: col, message };
        if let Some(rest) = body.strip_prefix("form") {
            if rest.starts_with(char::is_whitespace) {
                let id = rest.trim();
                let parsed = id.parse::<CubicForm>().map_err(|_| {
                    at(indent + 1 + (body.len() - rest.trim_start().len()), format!("unknown canonical form '{id}', expected cubic-nf1 .. cubic-nf8"))
                })?;
                if form.is_some() {
                    return Err(at(indent + 1, "second 'form' statement".into()));
                }
                form = Some((parsed, line));
                continue;
            }
        }
        let Some(eq) = body.find('=') else {
            return Err(at(indent + 1, "expected 'dx/dt = EXPR', 'dy/dt = EXPR', 'form ID' or 'NAME = VALUE'".into()));
        };
        let lhs = body[..eq].trim();
        let rhs = &body[eq + 1..];
        let rhs_col = indent + eq + 2 + (rhs.len() - rhs.trim_start().len());
        let rhs = rhs.trim();
        if rhs.is_empty() {
            return Err(at(indent + eq + 2, "expected an expression after '='".into()));
        }
        let compact: String = lhs.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "dx/dt" | "dy/dt" => {
                let poly = parse_expr(rhs, line, rhs_col)?;
                let slot = if compact == "dx/dt" { &mut dx } else { &mut dy };
                if slot.is_some() {
                    return Err(at(indent + 1, format!("{compact} given twice")));
                }
                *slot = Some((rhs.to_string(), poly, line));
            }
            name if !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') => {
                let value = parse_expr(rhs, line, rhs_col)?;
                if !value.is_constant() && !value.is_zero() {
                    return Err(at(rhs_col, format!("parameter {name} must be a number")));
                }
                if params.insert(name.to_string(), value.coeff(0, 0)).is_some() {
                    return Err(at(indent + 1, format!("parameter {name} given twice")));
                }
            }
            _ => return Err(at(indent + 1, format!("unexpected left-hand side '{lhs}'"))),
        }
    }
    let origin = Origin { file: None, line: first_line };
    match (form, dx, dy) {
        (Some((form, line)), None, None) => {
            let tag = FamilyTag::canonical(form, params);
            let (p, q) = tag
                .reconstruct()
                .map_err(|e| ParseError { line, column: 1, message: e.to_string() })?;
            Ok(SystemSource { dx_expr: p.to_string(), dy_expr: q.to_string(), p, q, canonical: Some(tag), origin })
        }
        (Some((_, line)), _, _) => Err(ParseError {
            line,
            column: 1,
            message: "a canonical form cannot be combined with dx/dt or dy/dt".into(),
        }),
        (None, Some((dx_expr, p, _)), Some((dy_expr, q, _))) => {
            if let Some(name) = params.keys().next() {
                return Err(ParseError { line: first_line, column: 1, message: format!("parameter {name} needs a 'form' statement") });
            }
            Ok(SystemSource { dx_expr, dy_expr, p, q, canonical: None, origin })
        }
        (None, dx, _) => {
            let missing = if dx.is_none() { "dx/dt" } else { "dy/dt" };
            let line = src.lines().count().max(1);
            Err(ParseError { line, column: 1, message: format!("missing '{missing} = EXPR'") })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use whvf::algebra::{int, rat};

    fn x() -> BivariatePoly {
        BivariatePoly::x()
    }
    fn y() -> BivariatePoly {
        BivariatePoly::y()
    }

    #[test]
    fn linear_center() {
        let s = parse_system("dx/dt = y\ndy/dt = -1*x").unwrap();
        assert_eq!(s.p, y());
        assert_eq!(s.q, -x());
        assert!(s.canonical.is_none());
    }

    #[test]
    fn nilpotent_family_shape() {
        let s = parse_system("dx/dt = x^2 + y\ndy/dt = x^3 + x*y").unwrap();
        assert_eq!(s.p, &x().pow(2) + &y());
        assert_eq!(s.q, &x().pow(3) + &(&x() * &y()));
    }

    #[test]
    fn literals_are_exact() {
        let p = parse_expr("0.25*x - 3/4*y + 1.5", 1, 1).unwrap();
        assert_eq!(p.coeff(1, 0), rat(1, 4));
        assert_eq!(p.coeff(0, 1), rat(-3, 4));
        assert_eq!(p.coeff(0, 0), rat(3, 2));
        assert_eq!(parse_expr("-(x + y)^2", 1, 1).unwrap(), -(&(&x() + &y()).pow(2)));
        assert_eq!(parse_expr("-x^2", 1, 1).unwrap().coeff(2, 0), int(-1));
        assert_eq!(parse_expr("x^(3)", 1, 1).unwrap(), x().pow(3));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_system("dx/dt = x^(1/2)\ndy/dt = y").unwrap_err();
        assert_eq!((e.line, e.column), (1, 11));
        assert!(e.message.contains("not a nonnegative integer"), "{e}");
        let e = parse_system("dx/dt = y\ndy/dt = 2x").unwrap_err();
        assert_eq!((e.line, e.column), (2, 10));
        let e = parse_system("dx/dt = y\ndy/dt = x +").unwrap_err();
        assert!(e.message.contains("end of expression"), "{e}");
        let e = parse_system("dx/dt = y\ndy/dt = sin(x)").unwrap_err();
        assert!(e.message.contains("unknown name 'sin'"));
        assert!(parse_system("dx/dt = y").unwrap_err().message.contains("dy/dt"));
        assert!(parse_system("dx/dt = y / 2\ndy/dt = x").is_err());
        assert!(parse_system("dx/dt = 1/0\ndy/dt = x").is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let s = parse_system("# a center\n\n  dx/dt = y   # P\ndy/dt = -x\n").unwrap();
        assert_eq!(s.origin.line, 3);
        assert_eq!(s.q, -x());
    }

    #[test]
    fn canonical_form() {
        let s = parse_system("form cubic-nf7\np1 = 1\np2 = 0\np3 = -1\nalpha = 1\n").unwrap();
        let tag = s.canonical.unwrap();
        assert_eq!(tag.get("p3"), int(-1));
        assert_eq!(s.p.degree(), Some(3));
        let e = parse_system("form cubic-nf6\np1 = 1\np2 = 0\np3 = -1\nalpha = 1\nmu = 1/3\n").unwrap_err();
        assert!(e.message.contains("mu != 1/3"), "{e}");
        assert!(parse_system("form cubic-nf9\n").is_err());
    }

    #[test]
    fn printing_round_trips() {
        for src in ["3/2*x^2*y - y + 7", "-x^5 + 1/3*x^2*y", "0"] {
            let p = parse_expr(src, 1, 1).unwrap();
            assert_eq!(parse_expr(&p.to_string(), 1, 1).unwrap(), p);
        }
    }
}
