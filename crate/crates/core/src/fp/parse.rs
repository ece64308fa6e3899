//! Parser for finitely presented groups in the angle-bracket syntax:
//! `G = < a, b | a^3, b^2, (a*b)^2 >`, or a bare comma-separated relator
//! list with the generators inferred. Words support `*` concatenation,
//! `^` integer powers (negative allowed), `[x, y]` commutators, and
//! relations `w = 1` or `w1 = w2`.

use std::fmt;

use super::FpError;

/// A finitely presented group: generator names and relators as freely
/// reduced column words (letter `2g` is generator g, `2g+1` its inverse).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<u32>>,
}

pub(super) fn invert_word(w: &[u32]) -> Vec<u32> {
    w.iter().rev().map(|&l| l ^ 1).collect()
}

pub(super) fn free_reduce(w: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&(l ^ 1)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

struct Tokenizer<'a> {
    text: &'a [u8],
    pos: usize,
    /// byte offset where the most recent token began, for diagnostics
    last_start: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
    End,
}

impl<'a> Tokenizer<'a> {
    fn new(text: &'a str) -> Self {
        Tokenizer {
            text: text.as_bytes(),
            pos: 0,
            last_start: 0,
        }
    }

    fn line_col(&self, at: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &b in &self.text[..at.min(self.text.len())] {
            if b == b'\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error(&self, at: usize, msg: impl Into<String>) -> FpError {
        let (line, col) = self.line_col(at);
        FpError::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> (usize, Tok) {
        let save = self.pos;
        let t = self.next();
        let at = self.last_start;
        self.pos = save;
        (at, t)
    }

    fn next(&mut self) -> Tok {
        self.skip_ws();
        self.last_start = self.pos;
        if self.pos >= self.text.len() {
            return Tok::End;
        }
        let b = self.text[self.pos];
        if b.is_ascii_alphabetic() || b == b'_' {
            let start = self.pos;
            while self.pos < self.text.len()
                && (self.text[self.pos].is_ascii_alphanumeric() || self.text[self.pos] == b'_')
            {
                self.pos += 1;
            }
            return Tok::Ident(String::from_utf8_lossy(&self.text[start..self.pos]).into_owned());
        }
        if b.is_ascii_digit() || (b == b'-' && self.pos + 1 < self.text.len() && self.text[self.pos + 1].is_ascii_digit()) {
            let start = self.pos;
            if b == b'-' {
                self.pos += 1;
            }
            while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let s = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
            return Tok::Int(s.parse().unwrap());
        }
        self.pos += 1;
        Tok::Sym(b as char)
    }
}

struct Parser<'a> {
    tz: Tokenizer<'a>,
    gens: Vec<String>,
    /// when false, unknown identifiers become fresh generators
    fixed_gens: bool,
}

impl<'a> Parser<'a> {
    fn gen_index(&mut self, name: &str, at: usize) -> Result<u32, FpError> {
        if let Some(i) = self.gens.iter().position(|g| g == name) {
            return Ok(i as u32);
        }
        if self.fixed_gens {
            return Err(self.tz.error(at, format!("unknown generator `{name}`")));
        }
        self.gens.push(name.to_string());
        Ok(self.gens.len() as u32 - 1)
    }

    /// atom := ident | '1' | '(' word ')' | '[' word ',' word ']'
    fn parse_atom(&mut self) -> Result<Vec<u32>, FpError> {
        let (at, tok) = self.tz.peek();
        match tok {
            Tok::Ident(name) => {
                self.tz.next();
                let g = self.gen_index(&name, at)?;
                Ok(vec![2 * g])
            }
            Tok::Int(1) => {
                self.tz.next();
                Ok(Vec::new())
            }
            Tok::Sym('(') => {
                self.tz.next();
                let w = self.parse_word()?;
                let (at2, close) = self.tz.peek();
                if close != Tok::Sym(')') {
                    return Err(self.tz.error(at2, "expected `)`"));
                }
                self.tz.next();
                Ok(w)
            }
            Tok::Sym('[') => {
                self.tz.next();
                let x = self.parse_word()?;
                let (at2, comma) = self.tz.peek();
                if comma != Tok::Sym(',') {
                    return Err(self.tz.error(at2, "expected `,` in commutator"));
                }
                self.tz.next();
                let y = self.parse_word()?;
                let (at3, close) = self.tz.peek();
                if close != Tok::Sym(']') {
                    return Err(self.tz.error(at3, "expected `]`"));
                }
                self.tz.next();
                // [x, y] = x^-1 y^-1 x y
                let mut w = invert_word(&x);
                w.extend(invert_word(&y));
                w.extend(&x);
                w.extend(&y);
                Ok(w)
            }
            other => Err(self.tz.error(at, format!("expected a word, found {other:?}"))),
        }
    }

    /// factor := atom ('^' int)?
    fn parse_factor(&mut self) -> Result<Vec<u32>, FpError> {
        let base = self.parse_atom()?;
        let (_, tok) = self.tz.peek();
        if tok == Tok::Sym('^') {
            self.tz.next();
            let (at2, e) = self.tz.peek();
            let Tok::Int(k) = e else {
                return Err(self.tz.error(at2, "expected an integer exponent"));
            };
            self.tz.next();
            let unit = if k >= 0 { base } else { invert_word(&base) };
            let mut w = Vec::with_capacity(unit.len() * k.unsigned_abs() as usize);
            for _ in 0..k.unsigned_abs() {
                w.extend(&unit);
            }
            return Ok(w);
        }
        Ok(base)
    }

    /// word := factor ('*' factor)*
    fn parse_word(&mut self) -> Result<Vec<u32>, FpError> {
        let mut w = self.parse_factor()?;
        loop {
            let (_, tok) = self.tz.peek();
            if tok == Tok::Sym('*') {
                self.tz.next();
                w.extend(self.parse_factor()?);
            } else {
                return Ok(w);
            }
        }
    }

    /// relation := word ('=' word)?
    fn parse_relation(&mut self) -> Result<Vec<u32>, FpError> {
        let lhs = self.parse_word()?;
        let (_, tok) = self.tz.peek();
        if tok == Tok::Sym('=') {
            self.tz.next();
            let rhs = self.parse_word()?;
            let mut w = lhs;
            w.extend(invert_word(&rhs));
            Ok(free_reduce(&w))
        } else {
            Ok(free_reduce(&lhs))
        }
    }
}

/// Parses either the full `Name = < gens | relators >` form (the name
/// and the brackets may be omitted one at a time) or a bare relator
/// list with inferred generators.
pub fn parse_presentation(text: &str) -> Result<FpPresentation, FpError> {
    let mut parser = Parser {
        tz: Tokenizer::new(text),
        gens: Vec::new(),
        fixed_gens: false,
    };
    // optional leading `Name =`
    {
        let save = parser.tz.pos;
        let first = parser.tz.next();
        let second = parser.tz.next();
        if !(matches!(first, Tok::Ident(_)) && second == Tok::Sym('=')) {
            parser.tz.pos = save;
        }
    }
    let (_, opening) = parser.tz.peek();
    let bracketed = opening == Tok::Sym('<');
    if bracketed {
        parser.tz.next();
        // generator list up to `|`
        loop {
            let (at, tok) = parser.tz.peek();
            match tok {
                Tok::Ident(name) => {
                    parser.tz.next();
                    if parser.gens.iter().any(|g| *g == name) {
                        return Err(parser.tz.error(at, format!("duplicate generator `{name}`")));
                    }
                    parser.gens.push(name);
                }
                other => return Err(parser.tz.error(at, format!("expected a generator name, found {other:?}"))),
            }
            let (at, tok) = parser.tz.peek();
            match tok {
                Tok::Sym(',') => {
                    parser.tz.next();
                }
                Tok::Sym('|') => {
                    parser.tz.next();
                    break;
                }
                other => {
                    return Err(parser.tz.error(at, format!("expected `,` or `|`, found {other:?}")))
                }
            }
        }
        parser.fixed_gens = true;
    }

    let mut relators = Vec::new();
    loop {
        let rel = parser.parse_relation()?;
        if !rel.is_empty() {
            relators.push(rel);
        }
        let (at, tok) = parser.tz.peek();
        match tok {
            Tok::Sym(',') => {
                parser.tz.next();
            }
            Tok::Sym('>') if bracketed => {
                parser.tz.next();
                break;
            }
            Tok::End => {
                if bracketed {
                    return Err(parser.tz.error(at, "expected `>` to close the presentation"));
                }
                break;
            }
            other => return Err(parser.tz.error(at, format!("expected `,`, found {other:?}"))),
        }
    }
    let (at, tok) = parser.tz.peek();
    if tok != Tok::End {
        return Err(parser.tz.error(at, format!("trailing input: {tok:?}")));
    }
    Ok(FpPresentation {
        generators: parser.gens,
        relators,
    })
}

impl FpPresentation {
    /// Parses a comma-separated list of generator names into subgroup
    /// generator words (single letters).
    pub fn subgroup_words(&self, names: &str) -> Result<Vec<Vec<u32>>, FpError> {
        names
            .split(',')
            .map(|n| n.trim())
            .filter(|n| !n.is_empty())
            .map(|n| {
                self.generators
                    .iter()
                    .position(|g| g == n)
                    .map(|i| vec![2 * i as u32])
                    .ok_or_else(|| FpError::Parse {
                        line: 0,
                        col: 0,
                        msg: format!("unknown subgroup generator `{n}`"),
                    })
            })
            .collect()
    }

    pub fn word_to_string(&self, w: &[u32]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter()
            .map(|&l| {
                let name = &self.generators[(l / 2) as usize];
                if l % 2 == 0 {
                    name.clone()
                } else {
                    format!("{name}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for FpPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_to_string(r)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}
