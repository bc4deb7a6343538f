//! Polynomial expression parser.
//!
//! Grammar: integer literals, variables from a declared set, binary `+ - *`,
//! unary `-`, `^` with a non-negative integer literal exponent, parentheses.
//! Juxtaposition is not multiplication. `#` starts a comment to end of line.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::{IntPoly, Var, VarSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    UnknownVariable(String),
    NegativeExponent,
    ExponentTooLarge,
    Empty,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character '{c}'"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected {t}"),
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable '{v}'"),
            ParseErrorKind::NegativeExponent => f.write_str("negative exponent"),
            ParseErrorKind::ExponentTooLarge => f.write_str("exponent too large"),
            ParseErrorKind::Empty => f.write_str("empty expression"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        let bump = |line: &mut usize, col: &mut usize, c: char| {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        if c == '#' {
            while let Some(&d) = chars.peek() {
                if d == '\n' {
                    break;
                }
                chars.next();
                bump(&mut line, &mut col, d);
            }
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            bump(&mut line, &mut col, c);
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
                bump(&mut line, &mut col, d);
            }
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                chars.next();
                bump(&mut line, &mut col, d);
            }
            Tok::Ident(s)
        } else {
            chars.next();
            bump(&mut line, &mut col, c);
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => return Err(ParseError { line: l0, col: c0, kind: ParseErrorKind::UnexpectedChar(c) }),
            }
        };
        out.push(Lexed { tok, line: l0, col: c0 });
    }
    out.push(Lexed { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
    vars: VarSet,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError { line: t.line, col: t.col, kind }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Tok::End => self.err(ParseErrorKind::UnexpectedEnd),
            t => self.err(ParseErrorKind::UnexpectedToken(t.describe())),
        }
    }

    fn expr(&mut self) -> Result<IntPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<IntPoly, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<IntPoly, ParseError> {
        if *self.peek() == Tok::Minus {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<IntPoly, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek().clone() {
            Tok::Int(n) => {
                let e: u32 = n.try_into().map_err(|_| self.err(ParseErrorKind::ExponentTooLarge))?;
                self.pos += 1;
                Ok(base.pow(e))
            }
            Tok::Minus => Err(self.err(ParseErrorKind::NegativeExponent)),
            _ => Err(self.unexpected()),
        }
    }

    fn atom(&mut self) -> Result<IntPoly, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(IntPoly::constant(n))
            }
            Tok::Ident(name) => {
                let v = Var::from_name(&name)
                    .filter(|v| self.vars.contains(*v))
                    .ok_or_else(|| self.err(ParseErrorKind::UnknownVariable(name.clone())))?;
                self.pos += 1;
                Ok(IntPoly::var(v))
            }
            Tok::LParen => {
                self.pos += 1;
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parse `text` as a polynomial in the variables of `vars`. The result's
/// variable set is `vars`.
pub fn parse_poly_expr(text: &str, vars: VarSet) -> Result<IntPoly, ParseError> {
    let toks = lex(text)?;
    if toks.len() == 1 {
        return Err(ParseError { line: toks[0].line, col: toks[0].col, kind: ParseErrorKind::Empty });
    }
    let mut p = Parser { toks, pos: 0, vars };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected());
    }
    Ok(e.with_vars(vars))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var::{L, M};

    fn ml() -> VarSet {
        VarSet::of(&[M, L])
    }

    #[test]
    fn parses_census_polynomials() {
        let a = parse_poly_expr("M^4 + L*(-M^8 + M^6 + 2*M^4 + M^2 - 1) + L^2*M^4", ml()).unwrap();
        assert_eq!(a.len(), 7);
        assert_eq!(a.degree(M), 8);
        assert_eq!(a.degree(L), 2);
        let one = parse_poly_expr("1", ml()).unwrap();
        assert!(one.is_one());
        let m017 = "-M^5 + L^2*(M - M^2 + 2*M^4 + 2*M^5 - M^6) + L^4*(1 - 2*M - 2*M^2 + M^4 - M^5) + L^6*M";
        let p = parse_poly_expr(m017, ml()).unwrap();
        assert_eq!(p.degree(L), 6);
        assert_eq!(p.len(), 12);
    }

    #[test]
    fn reports_positions() {
        let e = parse_poly_expr("M +\n  2*Q", ml()).unwrap_err();
        assert_eq!((e.line, e.col), (2, 5));
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("Q".into()));
        let e = parse_poly_expr("M^-2", ml()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NegativeExponent);
        let e = parse_poly_expr("2 M", ml()).unwrap_err();
        assert_eq!((e.line, e.col), (1, 3));
        let e = parse_poly_expr("(M + 1", ml()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);
        let e = parse_poly_expr("# only a comment\n", ml()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Empty);
        assert!(parse_poly_expr("M $ 2", ml()).is_err());
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let p = parse_poly_expr("-M^2", ml()).unwrap();
        assert_eq!(p, -IntPoly::var(M).pow(2));
        let q = parse_poly_expr("2 - -M", ml()).unwrap();
        assert_eq!(q, &IntPoly::from_i64(2) + &IntPoly::var(M));
    }
}
