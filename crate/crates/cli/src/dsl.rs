//! The session DSL: a stanza-based text format declaring matrices,
//! presentations, morphisms and Hopf-Galois systems, plus a printer
//! whose output re-parses to structurally equal objects.
//!
//! Grammar (whitespace-insensitive, `#` starts a line comment):
//!
//! ```text
//! file    := stanza*
//! stanza  := '[' kind '.' name ']' entry*
//! entry   := key '=' value | gen '->' tensor
//! tensor  := tterm (('+'|'-') tterm)*        # '@' binds tighter than '+'
//! tterm   := factors ('@' factors)*
//! factors := ['-'] factor ('*' factor)*      # factor := scalar | generator
//! scalar  := int | int '/' int | 'xi' ['^' int] | '(' scalarexpr ')'
//! matrix rows: '[' scalar (',' scalar)* ']' repeated, one group per row
//! ```
//!
//! Stanza kinds: `config` (session-wide settings), `matrix`,
//! `presentation` (`generators`, repeated `relation`), `morphism`
//! (`domain`, `codomain`, optional `anti`, then `gen -> tensor` images;
//! codomain `k` is the ground field), and `system` (either `family =`
//! one of the built-in families with its parameters, or the explicit
//! part names `a b z t comul_a counit_a comul_b counit_b alpha beta
//! gamma delta s`).

use hgw_core::catalog::{build_bef_system, build_hef_system, build_hmn_system, FieldMatrix};
use hgw_core::findim::{build_smn_system, ASTMatrix};
use hgw_core::hg::{Bialgebra, BicomoduleAlgebra, HopfGaloisSystem};
use hgw_core::ncalg::{
    same_presentation, AlgMorphism, Alphabet, NcPoly, Presentation, PresRef, TensorElem, Word,
};
use hgw_core::scalar::{root_of_unity, Scalar};
use std::fmt::Write as _;
use std::sync::Arc;

#[derive(Debug, Clone, thiserror::Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    fn at(pos: Pos, msg: impl Into<String>) -> Self {
        ParseError {
            line: pos.line,
            col: pos.col,
            msg: msg.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Dot,
    Eq,
    Arrow,
    Plus,
    Minus,
    Star,
    Slash,
    At,
    Caret,
    Comma,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{}`", s),
            Tok::Int(n) => format!("`{}`", n),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::At => "`@`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Comma => "`,`".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: Pos,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1usize;
    let mut col = 1usize;
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        if c.is_ascii_digit() {
            let mut n: i64 = 0;
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                bump(&mut chars);
                n = n
                    .checked_mul(10)
                    .and_then(|n| n.checked_add((d as u8 - b'0') as i64))
                    .ok_or_else(|| ParseError::at(pos, "integer literal overflows i64"))?;
            }
            out.push(Token {
                tok: Tok::Int(n),
                pos,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                s.push(bump(&mut chars));
            }
            out.push(Token {
                tok: Tok::Ident(s),
                pos,
            });
            continue;
        }
        bump(&mut chars);
        let tok = match c {
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '.' => Tok::Dot,
            '=' => Tok::Eq,
            '+' => Tok::Plus,
            '-' => {
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    Tok::Arrow
                } else {
                    Tok::Minus
                }
            }
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '@' => Tok::At,
            '^' => Tok::Caret,
            ',' => Tok::Comma,
            other => {
                return Err(ParseError::at(
                    pos,
                    format!("unexpected character `{}`", other),
                ))
            }
        };
        out.push(Token { tok, pos });
    }
    Ok(out)
}

/// A parsed session: configuration plus all declared objects, in
/// declaration order.
#[derive(Debug, Clone, Default)]
pub struct Session {
    pub name: String,
    pub cyclotomic_order: Option<u32>,
    pub degree_cap: Option<usize>,
    pub alpha_cap: Option<usize>,
    pub capacity_monomials: Option<usize>,
    pub matrices: Vec<(String, FieldMatrix)>,
    pub presentations: Vec<(String, PresRef)>,
    pub morphisms: Vec<(String, AlgMorphism)>,
    pub systems: Vec<(String, SessionSystem)>,
}

impl Session {
    pub fn empty() -> Self {
        Session {
            name: "session".into(),
            ..Default::default()
        }
    }

    pub fn matrix(&self, name: &str) -> Option<&FieldMatrix> {
        self.matrices.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn presentation(&self, name: &str) -> Option<&PresRef> {
        self.presentations
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
    }

    pub fn morphism(&self, name: &str) -> Option<&AlgMorphism> {
        self.morphisms
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
    }

    pub fn system(&self, name: &str) -> Option<&SessionSystem> {
        self.systems.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }
}

/// A system declared in a session: the built quadruple plus the
/// declaration it came from (kept so printing reproduces the source).
#[derive(Debug, Clone)]
pub struct SessionSystem {
    pub decl: SystemDecl,
    pub system: HopfGaloisSystem,
    pub assumptions: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub enum SystemDecl {
    Family {
        family: String,
        params: Vec<(String, ParamValue)>,
    },
    Explicit(Vec<(String, String)>),
}

#[derive(Debug, Clone)]
pub enum ParamValue {
    Int(i64),
    IntList(Vec<i64>),
    Matrix(FieldMatrix),
}

#[derive(Debug, Clone)]
struct RawEntry {
    key: String,
    key_pos: Pos,
    arrow: bool,
    value: Vec<Token>,
}

#[derive(Debug, Clone)]
struct RawStanza {
    kind: String,
    name: String,
    pos: Pos,
    entries: Vec<RawEntry>,
}

fn split_stanzas(toks: &[Token]) -> Result<Vec<RawStanza>, ParseError> {
    let mut stanzas: Vec<RawStanza> = Vec::new();
    let mut i = 0;
    let starts_stanza = |toks: &[Token], i: usize| {
        matches!(toks.get(i).map(|t| &t.tok), Some(Tok::LBracket))
            && matches!(toks.get(i + 1).map(|t| &t.tok), Some(Tok::Ident(_)))
            && matches!(toks.get(i + 2).map(|t| &t.tok), Some(Tok::Dot))
    };
    while i < toks.len() {
        if !starts_stanza(toks, i) {
            return Err(ParseError::at(
                toks[i].pos,
                format!(
                    "expected a stanza header `[kind.name]`, found {}",
                    toks[i].tok.describe()
                ),
            ));
        }
        let pos = toks[i].pos;
        let kind = match &toks[i + 1].tok {
            Tok::Ident(s) => s.clone(),
            _ => unreachable!(),
        };
        let name = match toks.get(i + 3).map(|t| &t.tok) {
            Some(Tok::Ident(s)) => s.clone(),
            _ => {
                return Err(ParseError::at(
                    toks.get(i + 3).map(|t| t.pos).unwrap_or(pos),
                    "expected a stanza name after `.`",
                ))
            }
        };
        match toks.get(i + 4).map(|t| &t.tok) {
            Some(Tok::RBracket) => {}
            _ => {
                return Err(ParseError::at(
                    toks.get(i + 4).map(|t| t.pos).unwrap_or(pos),
                    "expected `]` closing the stanza header",
                ))
            }
        }
        i += 5;
        let mut entries = Vec::new();
        while i < toks.len() && !starts_stanza(toks, i) {
            let key_pos = toks[i].pos;
            let key = match &toks[i].tok {
                Tok::Ident(s) => s.clone(),
                other => {
                    return Err(ParseError::at(
                        key_pos,
                        format!("expected an entry key, found {}", other.describe()),
                    ))
                }
            };
            let arrow = match toks.get(i + 1).map(|t| &t.tok) {
                Some(Tok::Eq) => false,
                Some(Tok::Arrow) => true,
                other => {
                    return Err(ParseError::at(
                        toks.get(i + 1).map(|t| t.pos).unwrap_or(key_pos),
                        format!(
                            "expected `=` or `->` after `{}`, found {}",
                            key,
                            other.map(|t| t.describe()).unwrap_or("end of file".into())
                        ),
                    ))
                }
            };
            i += 2;
            let start = i;
            // a value runs until the next `key =`/`key ->` pair or stanza
            while i < toks.len() && !starts_stanza(toks, i) {
                if matches!(toks[i].tok, Tok::Ident(_))
                    && matches!(
                        toks.get(i + 1).map(|t| &t.tok),
                        Some(Tok::Eq) | Some(Tok::Arrow)
                    )
                {
                    break;
                }
                i += 1;
            }
            entries.push(RawEntry {
                key,
                key_pos,
                arrow,
                value: toks[start..i].to_vec(),
            });
        }
        stanzas.push(RawStanza {
            kind,
            name,
            pos,
            entries,
        });
    }
    Ok(stanzas)
}

/// Cursor over one entry's value tokens.
struct Value<'a> {
    toks: &'a [Token],
    i: usize,
    end: Pos,
    order: Option<u32>,
}

impl<'a> Value<'a> {
    fn new(e: &'a RawEntry, order: Option<u32>) -> Self {
        let end = e.value.last().map(|t| t.pos).unwrap_or(e.key_pos);
        Value {
            toks: &e.value,
            i: 0,
            end,
            order,
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.i).map(|t| t.pos).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.i).map(|t| &t.tok);
        self.i += 1;
        t
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::at(self.pos(), msg)
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.err(format!("expected {}, found {}", expected, t.describe())),
            None => self.err(format!("expected {}, found end of value", expected)),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.i += 1;
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn done(&self) -> Result<(), ParseError> {
        if self.i < self.toks.len() {
            Err(self.unexpected("end of value"))
        } else {
            Ok(())
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.i += 1;
            true
        } else {
            false
        };
        match self.next() {
            Some(Tok::Int(n)) => Ok(if neg { -n } else { *n }),
            _ => {
                self.i -= 1;
                Err(self.unexpected("an integer"))
            }
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s.clone()),
            _ => {
                self.i -= 1;
                Err(self.unexpected("an identifier"))
            }
        }
    }

    fn ident_list(&mut self) -> Result<Vec<String>, ParseError> {
        let mut out = vec![self.ident()?];
        while self.peek() == Some(&Tok::Comma) {
            self.i += 1;
            out.push(self.ident()?);
        }
        Ok(out)
    }

    fn int_list(&mut self) -> Result<Vec<i64>, ParseError> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut out = Vec::new();
        if self.peek() != Some(&Tok::RBracket) {
            out.push(self.int()?);
            while self.peek() == Some(&Tok::Comma) {
                self.i += 1;
                out.push(self.int()?);
            }
        }
        self.expect(Tok::RBracket, "`]` or `,`")?;
        Ok(out)
    }

    /// `xi` powers need a cyclotomic order from the session config.
    fn xi_power(&mut self) -> Result<Scalar, ParseError> {
        let pos = self.pos();
        let order = self.order.ok_or_else(|| {
            ParseError::at(
                pos,
                "`xi` needs a cyclotomic order: set `cyclotomic_order` in a \
                 [config] stanza or pass --cyclotomic-order",
            )
        })?;
        self.i += 1; // the `xi` ident
        let e = if self.peek() == Some(&Tok::Caret) {
            self.i += 1;
            self.int()?
        } else {
            1
        };
        Ok(root_of_unity(order, e))
    }

    fn scalar_atom(&mut self) -> Result<Scalar, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.i += 1;
                if self.peek() == Some(&Tok::Slash) {
                    self.i += 1;
                    let d = self.int()?;
                    if d == 0 {
                        return Err(self.err("zero denominator"));
                    }
                    Ok(Scalar::rational(n, d))
                } else {
                    Ok(Scalar::int(n))
                }
            }
            Some(Tok::Ident(s)) if s == "xi" => self.xi_power(),
            Some(Tok::LParen) => {
                self.i += 1;
                let s = self.scalar_expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(s)
            }
            _ => Err(self.unexpected("a scalar")),
        }
    }

    fn scalar_product(&mut self) -> Result<Scalar, ParseError> {
        let mut s = self.scalar_atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.i += 1;
            let pos = self.pos();
            s = s
                .try_mul(&self.scalar_atom()?)
                .map_err(|e| ParseError::at(pos, e.to_string()))?;
        }
        Ok(s)
    }

    fn scalar_expr(&mut self) -> Result<Scalar, ParseError> {
        let mut sign_minus = if self.peek() == Some(&Tok::Minus) {
            self.i += 1;
            true
        } else {
            false
        };
        let mut acc = Scalar::zero();
        loop {
            let pos = self.pos();
            let term = self.scalar_product()?;
            let term = if sign_minus { term.neg() } else { term };
            acc = acc
                .try_add(&term)
                .map_err(|e| ParseError::at(pos, e.to_string()))?;
            match self.peek() {
                Some(Tok::Plus) => {
                    self.i += 1;
                    sign_minus = false;
                }
                Some(Tok::Minus) => {
                    self.i += 1;
                    sign_minus = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn matrix_rows(&mut self) -> Result<Vec<Vec<Scalar>>, ParseError> {
        let mut rows = Vec::new();
        let start = self.pos();
        while self.peek() == Some(&Tok::LBracket) {
            self.i += 1;
            let mut row = Vec::new();
            if self.peek() != Some(&Tok::RBracket) {
                row.push(self.scalar_expr()?);
                while self.peek() == Some(&Tok::Comma) {
                    self.i += 1;
                    row.push(self.scalar_expr()?);
                }
            }
            self.expect(Tok::RBracket, "`]` or `,`")?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(self.unexpected("a bracketed matrix row"));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(ParseError::at(start, "matrix rows have unequal lengths"));
        }
        Ok(rows)
    }

    /// One `*`-chain of generators and scalars against an alphabet.
    fn word_term(&mut self, alphabet: &Alphabet) -> Result<(Word, Scalar), ParseError> {
        let mut coeff = Scalar::one();
        if self.peek() == Some(&Tok::Minus) {
            self.i += 1;
            coeff = coeff.neg();
        }
        let mut letters = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Ident(s)) if s != "xi" => {
                    let pos = self.pos();
                    let g = alphabet.index_of(s).ok_or_else(|| {
                        ParseError::at(pos, format!("unknown generator `{}`", s))
                    })?;
                    letters.push(g);
                    self.i += 1;
                }
                _ => {
                    let pos = self.pos();
                    let s = self.scalar_atom()?;
                    coeff = coeff
                        .try_mul(&s)
                        .map_err(|e| ParseError::at(pos, e.to_string()))?;
                }
            }
            if self.peek() == Some(&Tok::Star) {
                self.i += 1;
            } else {
                return Ok((Word::from_letters(letters), coeff));
            }
        }
    }

    fn poly(&mut self, alphabet: &Alphabet) -> Result<NcPoly, ParseError> {
        let mut acc = NcPoly::zero();
        loop {
            let (w, c) = self.word_term(alphabet)?;
            acc.add_term(w, c);
            match self.peek() {
                Some(Tok::Plus) => self.i += 1,
                Some(Tok::Minus) => {} // consumed as the next term's sign
                _ => return Ok(acc),
            }
        }
    }

    /// A tensor over the given factors. `@` binds tighter than `+`,
    /// so `x @ 1 + y @ z` is the sum of two simple tensors.
    fn tensor(&mut self, factors: &[PresRef]) -> Result<TensorElem, ParseError> {
        let mut acc = TensorElem::zero(factors.to_vec());
        loop {
            let term_pos = self.pos();
            let mut words = Vec::new();
            let (w, mut coeff) = self.word_term(&factors[0].alphabet)?;
            words.push(w);
            while self.peek() == Some(&Tok::At) {
                self.i += 1;
                if words.len() == factors.len() {
                    return Err(self.err(format!(
                        "too many tensor factors: the codomain has {}",
                        factors.len()
                    )));
                }
                let (w, c) = self.word_term(&factors[words.len()].alphabet)?;
                words.push(w);
                coeff = coeff
                    .try_mul(&c)
                    .map_err(|e| ParseError::at(term_pos, e.to_string()))?;
            }
            if words.len() != factors.len() {
                // a bare scalar stands for that multiple of 1 (x) ... (x) 1
                if words.len() == 1 && words[0].is_empty() {
                    words = vec![Word::empty(); factors.len()];
                } else {
                    return Err(ParseError::at(
                        term_pos,
                        format!(
                            "tensor term has {} factors but the codomain has {}",
                            words.len(),
                            factors.len()
                        ),
                    ));
                }
            }
            acc.add_term(words, coeff);
            match self.peek() {
                Some(Tok::Plus) => self.i += 1,
                Some(Tok::Minus) => {}
                _ => return Ok(acc),
            }
        }
    }
}

/// Parses a standalone matrix literal, e.g. `[1, 0][0, 1]`.
pub fn parse_matrix(text: &str, order: Option<u32>) -> Result<FieldMatrix, ParseError> {
    let toks = lex(text)?;
    let end = toks.last().map(|t| t.pos).unwrap_or(Pos { line: 1, col: 1 });
    let mut v = Value {
        toks: &toks,
        i: 0,
        end,
        order,
    };
    let rows = v.matrix_rows()?;
    v.done()?;
    Ok(FieldMatrix::from_rows(rows))
}

/// Parses a session file; every error carries its line and column.
pub fn parse_session(text: &str) -> Result<Session, ParseError> {
    let toks = lex(text)?;
    let stanzas = split_stanzas(&toks)?;
    let mut session = Session::empty();

    for s in &stanzas {
        match s.kind.as_str() {
            "config" | "matrix" | "presentation" | "morphism" | "system" => {}
            other => {
                return Err(ParseError::at(
                    s.pos,
                    format!(
                        "unknown stanza kind `{}` (expected config, matrix, \
                         presentation, morphism or system)",
                        other
                    ),
                ))
            }
        }
    }

    // config first so scalar literals know the field
    for s in stanzas.iter().filter(|s| s.kind == "config") {
        session.name = s.name.clone();
        for e in &s.entries {
            let mut v = Value::new(e, session.cyclotomic_order);
            let n = v.int()?;
            v.done()?;
            let positive = |n: i64| -> Result<usize, ParseError> {
                if n < 1 {
                    Err(ParseError::at(
                        e.key_pos,
                        format!("{} must be positive", e.key),
                    ))
                } else {
                    Ok(n as usize)
                }
            };
            match e.key.as_str() {
                "cyclotomic_order" => session.cyclotomic_order = Some(positive(n)? as u32),
                "degree_cap" => session.degree_cap = Some(positive(n)?),
                "alpha_cap" => session.alpha_cap = Some(positive(n)?),
                "capacity_monomials" => session.capacity_monomials = Some(positive(n)?),
                other => {
                    return Err(ParseError::at(
                        e.key_pos,
                        format!("unknown config key `{}`", other),
                    ))
                }
            }
        }
    }
    let order = session.cyclotomic_order;

    for s in stanzas.iter().filter(|s| s.kind == "matrix") {
        if session.matrix(&s.name).is_some() {
            return Err(ParseError::at(s.pos, format!("duplicate matrix `{}`", s.name)));
        }
        let mut rows = None;
        for e in &s.entries {
            match e.key.as_str() {
                "rows" => {
                    let mut v = Value::new(e, order);
                    rows = Some(v.matrix_rows()?);
                    v.done()?;
                }
                other => {
                    return Err(ParseError::at(
                        e.key_pos,
                        format!("unknown matrix key `{}`", other),
                    ))
                }
            }
        }
        let rows =
            rows.ok_or_else(|| ParseError::at(s.pos, "matrix stanza needs a `rows` entry"))?;
        session
            .matrices
            .push((s.name.clone(), FieldMatrix::from_rows(rows)));
    }

    for s in stanzas.iter().filter(|s| s.kind == "presentation") {
        if session.presentation(&s.name).is_some() {
            return Err(ParseError::at(
                s.pos,
                format!("duplicate presentation `{}`", s.name),
            ));
        }
        let mut generators: Option<(Vec<String>, Pos)> = None;
        let mut relations: Vec<(&RawEntry, usize)> = Vec::new();
        for e in &s.entries {
            match e.key.as_str() {
                "generators" => {
                    let mut v = Value::new(e, order);
                    generators = Some((v.ident_list()?, e.key_pos));
                    v.done()?;
                }
                "relation" => relations.push((e, 0)),
                other => {
                    return Err(ParseError::at(
                        e.key_pos,
                        format!("unknown presentation key `{}`", other),
                    ))
                }
            }
        }
        let (gens, gpos) = generators.ok_or_else(|| {
            ParseError::at(s.pos, "presentation stanza needs a `generators` entry")
        })?;
        if gens.iter().any(|g| g == "xi") {
            return Err(ParseError::at(gpos, "`xi` is reserved for roots of unity"));
        }
        let alphabet = Alphabet::from_names(gens);
        let mut rels = Vec::new();
        for (e, _) in relations {
            let mut v = Value::new(e, order);
            let p = v.poly(&alphabet)?;
            v.done()?;
            if p.is_zero() {
                return Err(ParseError::at(e.key_pos, "relation is identically zero"));
            }
            rels.push(p);
        }
        session.presentations.push((
            s.name.clone(),
            Arc::new(Presentation::new(s.name.clone(), alphabet, rels)),
        ));
    }

    for s in stanzas.iter().filter(|s| s.kind == "morphism") {
        if session.morphism(&s.name).is_some() {
            return Err(ParseError::at(s.pos, format!("duplicate morphism `{}`", s.name)));
        }
        let mut domain: Option<PresRef> = None;
        let mut codomain: Option<Vec<PresRef>> = None;
        let mut anti = false;
        // resolve the signature entries before the image entries
        for e in s.entries.iter().filter(|e| !e.arrow) {
            let mut v = Value::new(e, order);
            match e.key.as_str() {
                "domain" => {
                    let name = v.ident()?;
                    v.done()?;
                    domain = Some(lookup_pres(&session, &name, e.key_pos)?);
                }
                "codomain" => {
                    let mut factors = vec![lookup_pres(&session, &v.ident()?, e.key_pos)?];
                    while v.peek() == Some(&Tok::At) {
                        v.i += 1;
                        factors.push(lookup_pres(&session, &v.ident()?, e.key_pos)?);
                    }
                    v.done()?;
                    codomain = Some(factors);
                }
                "anti" => {
                    let b = v.ident()?;
                    v.done()?;
                    anti = match b.as_str() {
                        "true" => true,
                        "false" => false,
                        _ => {
                            return Err(ParseError::at(
                                e.key_pos,
                                "`anti` must be `true` or `false`",
                            ))
                        }
                    };
                }
                other => {
                    return Err(ParseError::at(
                        e.key_pos,
                        format!("unknown morphism key `{}`", other),
                    ))
                }
            }
        }
        let domain = domain
            .ok_or_else(|| ParseError::at(s.pos, "morphism stanza needs a `domain` entry"))?;
        let codomain = codomain
            .ok_or_else(|| ParseError::at(s.pos, "morphism stanza needs a `codomain` entry"))?;
        let mut images: Vec<Option<TensorElem>> = vec![None; domain.alphabet.len()];
        for e in s.entries.iter().filter(|e| e.arrow) {
            let g = domain.alphabet.index_of(&e.key).ok_or_else(|| {
                ParseError::at(
                    e.key_pos,
                    format!("`{}` is not a generator of `{}`", e.key, domain.name),
                )
            })?;
            if images[g as usize].is_some() {
                return Err(ParseError::at(
                    e.key_pos,
                    format!("duplicate image for generator `{}`", e.key),
                ));
            }
            let mut v = Value::new(e, order);
            let t = v.tensor(&codomain)?;
            v.done()?;
            images[g as usize] = Some(t);
        }
        session.morphisms.push((
            s.name.clone(),
            AlgMorphism::new_partial(s.name.clone(), domain, codomain, images, anti),
        ));
    }

    for s in stanzas.iter().filter(|s| s.kind == "system") {
        if session.system(&s.name).is_some() {
            return Err(ParseError::at(s.pos, format!("duplicate system `{}`", s.name)));
        }
        let sys = if s.entries.iter().any(|e| e.key == "family") {
            build_family_system(&session, s, order)?
        } else {
            build_explicit_system(&session, s)?
        };
        session.systems.push((s.name.clone(), sys));
    }

    Ok(session)
}

fn lookup_pres(session: &Session, name: &str, pos: Pos) -> Result<PresRef, ParseError> {
    if name == "k" {
        return Ok(Presentation::unit());
    }
    session
        .presentation(name)
        .cloned()
        .ok_or_else(|| ParseError::at(pos, format!("unknown presentation `{}`", name)))
}

fn build_family_system(
    session: &Session,
    s: &RawStanza,
    order: Option<u32>,
) -> Result<SessionSystem, ParseError> {
    let mut family = String::new();
    let mut params: Vec<(String, ParamValue)> = Vec::new();
    for e in &s.entries {
        let mut v = Value::new(e, order);
        match e.key.as_str() {
            "family" => {
                family = v.ident()?;
                v.done()?;
            }
            "m" | "n" | "alpha_cap" => {
                let n = v.int()?;
                v.done()?;
                params.push((e.key.clone(), ParamValue::Int(n)));
            }
            "p" | "q" => {
                let l = v.int_list()?;
                v.done()?;
                params.push((e.key.clone(), ParamValue::IntList(l)));
            }
            "e" | "f" => {
                // either an inline matrix or the name of a matrix stanza
                let mat = if v.peek() == Some(&Tok::LBracket) {
                    let rows = v.matrix_rows()?;
                    v.done()?;
                    FieldMatrix::from_rows(rows)
                } else {
                    let name = v.ident()?;
                    v.done()?;
                    session
                        .matrix(&name)
                        .cloned()
                        .ok_or_else(|| {
                            ParseError::at(e.key_pos, format!("unknown matrix `{}`", name))
                        })?
                };
                params.push((e.key.clone(), ParamValue::Matrix(mat)));
            }
            other => {
                return Err(ParseError::at(
                    e.key_pos,
                    format!("unknown system key `{}`", other),
                ))
            }
        }
    }
    let int_param = |key: &str| -> Option<i64> {
        params.iter().find_map(|(k, p)| match p {
            ParamValue::Int(n) if k == key => Some(*n),
            _ => None,
        })
    };
    let list_param = |key: &str| -> Option<&Vec<i64>> {
        params.iter().find_map(|(k, p)| match p {
            ParamValue::IntList(l) if k == key => Some(l),
            _ => None,
        })
    };
    let matrix_param = |key: &str| -> Result<&FieldMatrix, ParseError> {
        params
            .iter()
            .find_map(|(k, p)| match p {
                ParamValue::Matrix(m) if k == key => Some(m),
                _ => None,
            })
            .ok_or_else(|| {
                ParseError::at(s.pos, format!("family `{}` needs `{}`", family, key))
            })
    };
    let require_int = |key: &str| -> Result<usize, ParseError> {
        let n = int_param(key)
            .ok_or_else(|| ParseError::at(s.pos, format!("family `{}` needs `{}`", family, key)))?;
        if n < 1 {
            return Err(ParseError::at(s.pos, format!("`{}` must be positive", key)));
        }
        Ok(n as usize)
    };

    let fail = |msg: String| ParseError::at(s.pos, msg);
    let (system, assumptions, notes) = match family.as_str() {
        "bef" => {
            let c = build_bef_system(matrix_param("e")?, matrix_param("f")?).map_err(fail)?;
            (c.system, c.assumptions, c.notes)
        }
        "hef" => {
            let c = build_hef_system(matrix_param("e")?, matrix_param("f")?).map_err(fail)?;
            (c.system, c.assumptions, c.notes)
        }
        "hmn" => {
            let m = require_int("m")?;
            let n = require_int("n")?;
            let cap = int_param("alpha_cap")
                .map(|n| n as usize)
                .or(session.alpha_cap)
                .unwrap_or(3);
            let c = build_hmn_system(m, n, cap).map_err(fail)?;
            (c.system, c.assumptions, c.notes)
        }
        "prop24" => {
            let m = require_int("m")?;
            let n = require_int("n")?;
            let expect = n * (n - 1) / 2;
            let ast = |l: &Vec<i64>| -> Result<ASTMatrix, ParseError> {
                if l.len() != expect {
                    return Err(ParseError::at(
                        s.pos,
                        format!(
                            "`p`/`q` needs the {} strict upper-triangle entries of an \
                             {2}x{2} exponent matrix, got {}",
                            expect,
                            l.len(),
                            n
                        ),
                    ));
                }
                Ok(ASTMatrix::from_upper_triangle(m as u32, n, l))
            };
            let p = ast(list_param("p")
                .ok_or_else(|| ParseError::at(s.pos, "family `prop24` needs `p`"))?)?;
            let q = match list_param("q") {
                Some(l) => ast(l)?,
                None => p.clone(),
            };
            (build_smn_system(&q, &p), Vec::new(), Vec::new())
        }
        "hopf" => (crate::commands::hopf_demo_system(), Vec::new(), Vec::new()),
        other => {
            return Err(ParseError::at(
                s.pos,
                format!(
                    "unknown system family `{}` (expected bef, hef, hmn, prop24 or hopf)",
                    other
                ),
            ))
        }
    };
    Ok(SessionSystem {
        decl: SystemDecl::Family { family, params },
        system,
        assumptions,
        notes,
    })
}

const SYSTEM_PARTS: &[&str] = &[
    "a", "b", "z", "t", "comul_a", "counit_a", "comul_b", "counit_b", "alpha", "beta", "gamma",
    "delta", "s",
];

fn build_explicit_system(session: &Session, s: &RawStanza) -> Result<SessionSystem, ParseError> {
    let mut parts: Vec<(String, String)> = Vec::new();
    for e in &s.entries {
        if !SYSTEM_PARTS.contains(&e.key.as_str()) {
            return Err(ParseError::at(
                e.key_pos,
                format!("unknown system key `{}`", e.key),
            ));
        }
        let mut v = Value::new(e, None);
        let name = v.ident()?;
        v.done()?;
        parts.push((e.key.clone(), name));
    }
    let find = |key: &str| -> Result<&str, ParseError> {
        parts
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, n)| n.as_str())
            .ok_or_else(|| ParseError::at(s.pos, format!("system stanza needs `{}`", key)))
    };
    let pres = |key: &str| -> Result<PresRef, ParseError> {
        lookup_pres(session, find(key)?, s.pos)
    };
    let mor = |key: &str| -> Result<AlgMorphism, ParseError> {
        let name = find(key)?;
        session
            .morphism(name)
            .cloned()
            .ok_or_else(|| ParseError::at(s.pos, format!("unknown morphism `{}`", name)))
    };

    let a_pres = pres("a")?;
    let b_pres = pres("b")?;
    let z_pres = pres("z")?;
    let t_pres = pres("t")?;

    // replicate the constructor preconditions as located diagnostics
    let check = |cond: bool, what: &str| -> Result<(), ParseError> {
        if cond {
            Ok(())
        } else {
            Err(ParseError::at(s.pos, format!("type mismatch: {}", what)))
        }
    };
    let expect_map = |m: &AlgMorphism,
                      dom: &PresRef,
                      cod: &[&PresRef],
                      anti: bool,
                      what: &str|
     -> Result<(), ParseError> {
        check(same_presentation(&m.domain, dom), &format!("{} domain", what))?;
        check(m.codomain.len() == cod.len(), &format!("{} arity", what))?;
        for (f, g) in m.codomain.iter().zip(cod) {
            check(same_presentation(f, g), &format!("{} codomain", what))?;
        }
        check(m.anti == anti, &format!("{} anti flag", what))
    };

    let unit = Presentation::unit();
    let comul_a = mor("comul_a")?;
    let counit_a = mor("counit_a")?;
    let comul_b = mor("comul_b")?;
    let counit_b = mor("counit_b")?;
    let alpha = mor("alpha")?;
    let beta = mor("beta")?;
    let gamma = mor("gamma")?;
    let delta = mor("delta")?;
    let smap = mor("s")?;
    expect_map(&comul_a, &a_pres, &[&a_pres, &a_pres], false, "comul_a")?;
    expect_map(&counit_a, &a_pres, &[&unit], false, "counit_a")?;
    expect_map(&comul_b, &b_pres, &[&b_pres, &b_pres], false, "comul_b")?;
    expect_map(&counit_b, &b_pres, &[&unit], false, "counit_b")?;
    expect_map(&alpha, &z_pres, &[&a_pres, &z_pres], false, "alpha")?;
    expect_map(&beta, &z_pres, &[&z_pres, &b_pres], false, "beta")?;
    expect_map(&gamma, &a_pres, &[&z_pres, &t_pres], false, "gamma")?;
    expect_map(&delta, &b_pres, &[&t_pres, &z_pres], false, "delta")?;
    expect_map(&smap, &t_pres, &[&z_pres], true, "s")?;

    let system = HopfGaloisSystem::new(
        s.name.clone(),
        Bialgebra::new(a_pres.clone(), comul_a, counit_a),
        Bialgebra::new(b_pres.clone(), comul_b, counit_b),
        BicomoduleAlgebra::new(z_pres, alpha, beta),
        t_pres,
        gamma,
        delta,
        smap,
    );
    Ok(SessionSystem {
        decl: SystemDecl::Explicit(parts),
        system,
        assumptions: Vec::new(),
        notes: Vec::new(),
    })
}

fn show_matrix(m: &FieldMatrix) -> String {
    let rows = m.to_rows();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
        let _ = write!(out, "[{}]", cells.join(", "));
    }
    out
}

fn factor_name(session: &Session, p: &PresRef) -> String {
    if p.is_unit() {
        return "k".into();
    }
    for (name, q) in &session.presentations {
        if Arc::ptr_eq(p, q) {
            return name.clone();
        }
    }
    p.name.clone()
}

/// Prints a session in the DSL; re-parsing the output reproduces
/// structurally equal objects.
pub fn print_session(session: &Session) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "[config.{}]", session.name);
    if let Some(m) = session.cyclotomic_order {
        let _ = writeln!(out, "cyclotomic_order = {}", m);
    }
    if let Some(d) = session.degree_cap {
        let _ = writeln!(out, "degree_cap = {}", d);
    }
    if let Some(a) = session.alpha_cap {
        let _ = writeln!(out, "alpha_cap = {}", a);
    }
    if let Some(c) = session.capacity_monomials {
        let _ = writeln!(out, "capacity_monomials = {}", c);
    }
    for (name, m) in &session.matrices {
        let _ = writeln!(out, "\n[matrix.{}]\nrows = {}", name, show_matrix(m));
    }
    for (name, p) in &session.presentations {
        let _ = writeln!(out, "\n[presentation.{}]", name);
        let _ = writeln!(out, "generators = {}", p.alphabet.names().join(", "));
        for r in &p.relations {
            let _ = writeln!(out, "relation = {}", r.display_with(&p.alphabet));
        }
    }
    for (name, m) in &session.morphisms {
        let _ = writeln!(out, "\n[morphism.{}]", name);
        let _ = writeln!(out, "domain = {}", factor_name(session, &m.domain));
        let cod: Vec<String> = m
            .codomain
            .iter()
            .map(|f| factor_name(session, f))
            .collect();
        let _ = writeln!(out, "codomain = {}", cod.join(" @ "));
        if m.anti {
            let _ = writeln!(out, "anti = true");
        }
        for (g, img) in m.images() {
            if let Some(t) = img {
                let _ = writeln!(out, "{} -> {}", m.domain.alphabet.name(g), t);
            }
        }
    }
    for (name, sys) in &session.systems {
        let _ = writeln!(out, "\n[system.{}]", name);
        match &sys.decl {
            SystemDecl::Family { family, params } => {
                let _ = writeln!(out, "family = {}", family);
                for (key, p) in params {
                    match p {
                        ParamValue::Int(n) => {
                            let _ = writeln!(out, "{} = {}", key, n);
                        }
                        ParamValue::IntList(l) => {
                            let cells: Vec<String> = l.iter().map(|n| n.to_string()).collect();
                            let _ = writeln!(out, "{} = [{}]", key, cells.join(", "));
                        }
                        ParamValue::Matrix(m) => {
                            let _ = writeln!(out, "{} = {}", key, show_matrix(m));
                        }
                    }
                }
            }
            SystemDecl::Explicit(parts) => {
                for (key, value) in parts {
                    let _ = writeln!(out, "{} = {}", key, value);
                }
            }
        }
    }
    out
}
