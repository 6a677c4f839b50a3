//! The polynomial literal grammar: integer literals, variable tokens
//! `T1..Ts` or `tau`, operators `+ - * ^`, parentheses; whitespace is
//! insignificant. Shared by the group-file parser and certificate records.

use super::{Char, Coefficient, MultiPoly, UniPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize), // zero-based variable index; tau parses as variable 0 in a 1-variable ring
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("polynomial syntax error at byte {pos}: {msg}")]
pub struct PolyParseError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, PolyParseError> {
    Err(PolyParseError { pos, msg: msg.into() })
}

fn lex(input: &str, num_vars: usize, tau_ok: bool) -> Result<Vec<(usize, Tok)>, PolyParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = input[start..i].parse().unwrap();
                toks.push((start, Tok::Int(v)));
            }
            'T' => {
                let start = i;
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return err(start, "expected variable index after 'T'");
                }
                let idx: usize = input[ds..i].parse().map_err(|_| PolyParseError {
                    pos: start,
                    msg: "bad variable index".into(),
                })?;
                if idx == 0 || idx > num_vars {
                    return err(start, format!("variable T{idx} out of range (1..={num_vars})"));
                }
                toks.push((start, Tok::Var(idx - 1)));
            }
            't' if input[i..].starts_with("tau") => {
                if !tau_ok && num_vars != 1 {
                    return err(i, "'tau' is only valid in a one-variable ring");
                }
                toks.push((i, Tok::Var(0)));
                i += 3;
            }
            _ => return err(i, format!("unexpected character {c:?}")),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    num_vars: usize,
    ch: Char,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<MultiPoly, PolyParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = acc.add(&rhs).expect("same ring");
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = acc.sub(&rhs).expect("same ring");
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := ('-')* factor ('*'? factor)*  -- explicit '*' required between factors
    fn term(&mut self) -> Result<MultiPoly, PolyParseError> {
        let mut neg = false;
        while matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            neg = !neg;
        }
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            let rhs = self.factor()?;
            acc = acc.mul(&rhs).expect("same ring");
        }
        if neg {
            acc = acc.neg();
        }
        Ok(acc)
    }

    // factor := atom ('^' int)?
    fn factor(&mut self) -> Result<MultiPoly, PolyParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let at = self.at();
            match self.bump() {
                Some(Tok::Int(e)) => {
                    let e: u32 = e.to_string().parse().map_err(|_| PolyParseError {
                        pos: at,
                        msg: "exponent too large".into(),
                    })?;
                    Ok(base.pow(e))
                }
                _ => err(at, "expected integer exponent after '^'"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyParseError> {
        let at = self.at();
        match self.bump() {
            Some(Tok::Int(v)) => Ok(MultiPoly::constant_big(self.num_vars, self.ch, v)),
            Some(Tok::Var(i)) => Ok(MultiPoly::variable(self.num_vars, self.ch, i)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => err(at, "unbalanced parenthesis"),
                }
            }
            _ => err(at, "expected integer, variable, or '('"),
        }
    }
}

/// Parse a polynomial literal into the ring with `num_vars` variables of the
/// given characteristic. `tau` is accepted as the variable of one-variable
/// rings.
pub fn parse_multipoly(input: &str, num_vars: usize, ch: Char) -> Result<MultiPoly, PolyParseError> {
    let toks = lex(input, num_vars, num_vars == 1)?;
    if toks.is_empty() {
        return err(0, "empty polynomial");
    }
    let mut p = Parser { toks: &toks, pos: 0, num_vars, ch, end: input.len() };
    let poly = p.expr()?;
    if p.pos != toks.len() {
        return err(p.at(), "trailing input");
    }
    Ok(poly)
}

/// Parse a univariate polynomial in `tau` (or `T1`).
pub fn parse_unipoly(input: &str, ch: Char) -> Result<UniPoly, PolyParseError> {
    let m = parse_multipoly(input, 1, ch)?;
    Ok(m.substitute_powers(&[1]).expect("arity 1"))
}

fn format_coeff_signed(c: &Coefficient, lead: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match c {
        Coefficient::Int(v) => {
            if lead {
                if v.is_negative() {
                    write!(f, "-")?;
                }
            } else if v.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}", v.abs())
        }
        Coefficient::Res { value, .. } => {
            if !lead {
                write!(f, " + ")?;
            }
            write!(f, "{value}")
        }
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    c: &Coefficient,
    vars: &[(usize, u32)],
    lead: bool,
    var_name: &dyn Fn(usize) -> String,
) -> fmt::Result {
    let is_unit = match c {
        Coefficient::Int(v) => v.abs().is_one(),
        Coefficient::Res { value, .. } => *value == 1,
    };
    if vars.is_empty() || !is_unit {
        format_coeff_signed(c, lead, f)?;
        if !vars.is_empty() {
            write!(f, "*")?;
        }
    } else {
        // unit coefficient: sign only
        match c {
            Coefficient::Int(v) if v.is_negative() => {
                if lead {
                    write!(f, "-")?;
                } else {
                    write!(f, " - ")?;
                }
            }
            _ => {
                if !lead {
                    write!(f, " + ")?;
                }
            }
        }
    }
    for (k, (i, e)) in vars.iter().enumerate() {
        if k > 0 {
            write!(f, "*")?;
        }
        write!(f, "{}", var_name(*i))?;
        if *e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Canonical rendering: terms in descending graded-lex order, `T1..Ts`
/// variable names (or `tau` for one variable rings).
pub(super) fn format_multipoly(p: &MultiPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let name = |i: usize| format!("T{}", i + 1);
    let terms: Vec<_> = p.terms().collect();
    for (k, (m, c)) in terms.iter().rev().enumerate() {
        let vars: Vec<(usize, u32)> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
            .collect();
        write_term(f, c, &vars, k == 0, &name)?;
    }
    Ok(())
}

pub(super) fn format_unipoly(p: &UniPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let name = |_: usize| "tau".to_string();
    let mut lead = true;
    for i in (0..=p.degree()).rev() {
        let c = p.coeff(i);
        if c.is_zero() {
            continue;
        }
        let vars: Vec<(usize, u32)> = if i > 0 { vec![(0, i as u32)] } else { vec![] };
        write_term(f, &c, &vars, lead, &name)?;
        lead = false;
    }
    Ok(())
}
