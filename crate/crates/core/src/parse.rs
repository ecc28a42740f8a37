//! Inline polynomial syntax used on the command line.
//!
//! Grammar (whitespace and `*` between factors are optional):
//!
//! ```text
//! poly   := sign? term (sign term)*
//! term   := factor+
//! factor := number | var ('^' integer)?
//! ```
//!
//! A map is written `(P, Q)` in the variables `u`, `v` (aliases `u1`, `u2`);
//! a curve is written `X, Y` or `(X, Y)` in the variable `t`.

use crate::error::{Error, Result};
use crate::poly::{PolySpec, Term};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Var(usize),
    Caret,
    Star,
    Plus,
    Minus,
}

fn lex(src: &str, vars: &[&[&str]]) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let ch = chars[k];
        match ch {
            ' ' | '\t' | '\n' => k += 1,
            '^' => {
                out.push(Token::Caret);
                k += 1;
            }
            '*' => {
                out.push(Token::Star);
                k += 1;
            }
            '+' => {
                out.push(Token::Plus);
                k += 1;
            }
            '-' | '\u{2212}' => {
                out.push(Token::Minus);
                k += 1;
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = k;
                while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                    k += 1;
                }
                if k < chars.len() && (chars[k] == 'e' || chars[k] == 'E') {
                    let save = k;
                    k += 1;
                    if k < chars.len() && (chars[k] == '+' || chars[k] == '-') {
                        k += 1;
                    }
                    if k < chars.len() && chars[k].is_ascii_digit() {
                        while k < chars.len() && chars[k].is_ascii_digit() {
                            k += 1;
                        }
                    } else {
                        k = save;
                    }
                }
                let text: String = chars[start..k].iter().collect();
                let value = text.parse::<f64>().map_err(|_| Error::Parse(format!("bad number '{text}'")))?;
                out.push(Token::Num(value));
            }
            c if c.is_ascii_alphabetic() => {
                // Longest variable name matching at this position.
                let rest: String = chars[k..].iter().collect();
                let mut best: Option<(usize, usize)> = None;
                for (slot, names) in vars.iter().enumerate() {
                    for name in names.iter() {
                        if rest.starts_with(name) && best.is_none_or(|(len, _)| name.len() > len) {
                            best = Some((name.len(), slot));
                        }
                    }
                }
                match best {
                    Some((len, slot)) => {
                        out.push(Token::Var(slot));
                        k += len;
                    }
                    None => {
                        return Err(Error::Parse(format!("unknown variable at '{rest}'")));
                    }
                }
            }
            other => return Err(Error::Parse(format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

fn parse_tokens(tokens: &[Token], nvars: usize) -> Result<PolySpec> {
    let mut terms = Vec::new();
    let mut pos = 0;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    while pos < tokens.len() {
        let mut sign = 1.0;
        let mut saw_sign = false;
        while let Some(tok @ (Token::Plus | Token::Minus)) = tokens.get(pos) {
            if *tok == Token::Minus {
                sign = -sign;
            }
            saw_sign = true;
            pos += 1;
        }
        if !saw_sign && !terms.is_empty() {
            return Err(Error::Parse("expected '+' or '-' between terms".into()));
        }
        let mut coeff = sign;
        let mut exps = vec![0u32; nvars];
        let mut factors = 0;
        loop {
            match tokens.get(pos) {
                Some(Token::Num(x)) => {
                    coeff *= x;
                    pos += 1;
                }
                Some(Token::Var(slot)) => {
                    pos += 1;
                    let mut power = 1u32;
                    if tokens.get(pos) == Some(&Token::Caret) {
                        pos += 1;
                        match tokens.get(pos) {
                            Some(Token::Num(p)) if p.fract() == 0.0 && *p >= 0.0 => {
                                power = *p as u32;
                                pos += 1;
                            }
                            _ => return Err(Error::Parse("exponent must be a non-negative integer".into())),
                        }
                    }
                    exps[*slot] += power;
                }
                Some(Token::Star) if factors > 0 => {
                    pos += 1;
                    continue;
                }
                _ => break,
            }
            factors += 1;
        }
        if factors == 0 {
            return Err(Error::Parse("expected a number or variable".into()));
        }
        terms.push(Term { c: coeff, e: exps });
    }
    PolySpec::new(nvars as u8, terms)
}

const MAP_VARS: [&[&str]; 2] = [&["u1", "u"], &["u2", "v"]];
const CURVE_VARS: [&[&str]; 1] = [&["t"]];

/// Parses a bivariate polynomial in `u`, `v`.
pub fn parse_poly2(src: &str) -> Result<PolySpec> {
    parse_tokens(&lex(src, &MAP_VARS)?, 2)
}

/// Parses a univariate polynomial in `t`.
pub fn parse_poly1(src: &str) -> Result<PolySpec> {
    parse_tokens(&lex(src, &CURVE_VARS)?, 1)
}

fn split_pair(src: &str) -> Result<(&str, &str)> {
    let s = src.trim();
    let s = match (s.strip_prefix('('), s.ends_with(')')) {
        (Some(inner), true) => &inner[..inner.len() - 1],
        (None, false) => s,
        _ => return Err(Error::Parse(format!("unbalanced parentheses in '{src}'"))),
    };
    let mut parts = s.split(',');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) => Ok((a, b)),
        _ => Err(Error::Parse(format!("expected two components in '{src}'"))),
    }
}

/// Parses `(P, Q)` into the two component polynomials of a plane map.
pub fn parse_map(src: &str) -> Result<[PolySpec; 2]> {
    let (a, b) = split_pair(src)?;
    Ok([parse_poly2(a)?, parse_poly2(b)?])
}

/// Parses `X, Y` (optionally parenthesized) into a plane curve in `t`.
pub fn parse_curve(src: &str) -> Result<[PolySpec; 2]> {
    let (a, b) = split_pair(src)?;
    Ok([parse_poly1(a)?, parse_poly1(b)?])
}

/// Parses a comma-separated list of reals.
pub fn parse_reals(src: &str) -> Result<Vec<f64>> {
    src.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<f64>().map_err(|_| Error::Parse(format!("bad number '{s}'")))
        })
        .collect()
}
