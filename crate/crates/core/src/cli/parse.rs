//! Recursive-descent parsers for the textual syntax.

use std::fmt;

use crate::endspace::LimitOrdinal;
use crate::homology::FinitePresentation;
use crate::ordinal::Ordinal;
use crate::surface::{Genus, Mark, MarkedEnds, SurfaceDescriptor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub expected: Vec<String>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.offset, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn error(&self, offset: usize, expected: &[&str], message: impl Into<String>) -> ParseError {
        ParseError {
            offset: offset.min(self.src.len()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            message: message.into(),
        }
    }

    fn unexpected(&mut self, expected: &[&str]) -> ParseError {
        self.skip_ws();
        let found = match self.rest().chars().next() {
            Some(c) => format!("unexpected `{c}`"),
            None => "unexpected end of input".to_string(),
        };
        self.error(self.pos, expected, found)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let tok = format!("`{c}`");
            Err(self.unexpected(&[&tok]))
        }
    }

    fn word(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((start, &self.src[start..start + len]))
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        let save = self.pos;
        match self.word() {
            Some((_, w)) if w == kw => Ok(()),
            _ => {
                self.pos = save;
                let tok = format!("`{kw}`");
                Err(self.unexpected(&[&tok]))
            }
        }
    }

    fn nat(&mut self) -> PResult<u64> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.unexpected(&["natural number"]));
        }
        self.pos += len;
        self.src[start..start + len]
            .parse()
            .map_err(|_| self.error(start, &[], "number does not fit in 64 bits"))
    }

    fn integer(&mut self) -> PResult<i64> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let neg = self.eat('-');
        let n = self.nat()?;
        let v = i64::try_from(n).map_err(|_| self.error(start, &[], "integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn end(&mut self) -> PResult<()> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.unexpected(&["end of input"]))
        }
    }

    // ordinal := term ('+' term)*
    fn ordinal(&mut self) -> PResult<Ordinal> {
        let mut acc = self.term()?;
        while self.eat('+') {
            let t = self.term()?;
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    // term := 'w' ('^' ('(' ordinal ')' | atom))? ('*' nat)? | nat
    fn term(&mut self) -> PResult<Ordinal> {
        match self.peek() {
            Some('w') => {
                self.pos += 1;
                let exponent = if self.eat('^') {
                    if self.eat('(') {
                        let e = self.ordinal()?;
                        self.expect(')')?;
                        e
                    } else {
                        self.atom()?
                    }
                } else {
                    Ordinal::one()
                };
                let n = if self.eat('*') { self.nat()? } else { 1 };
                Ok(Ordinal::omega_pow_mul(exponent, n))
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            _ => Err(self.unexpected(&["`w`", "natural number"])),
        }
    }

    // atom := 'w' | nat
    fn atom(&mut self) -> PResult<Ordinal> {
        match self.peek() {
            Some('w') => {
                self.pos += 1;
                Ok(Ordinal::omega())
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            _ => Err(self.unexpected(&["`(`", "`w`", "natural number"])),
        }
    }

    fn mark_name(&mut self) -> PResult<Mark> {
        let save = self.pos;
        match self.word() {
            Some((_, "p" | "planar")) => Ok(Mark::Planar),
            Some((_, "np" | "nonplanar")) => Ok(Mark::Nonplanar),
            _ => {
                self.pos = save;
                Err(self.unexpected(&["`p`", "`np`"]))
            }
        }
    }

    fn suffix_mark(&mut self) -> PResult<Option<Mark>> {
        if self.eat('!') {
            Ok(Some(self.mark_name()?))
        } else {
            Ok(None)
        }
    }

    fn point_mark(&mut self) -> PResult<Option<Mark>> {
        if self.eat(';') {
            Ok(Some(self.mark_name()?))
        } else {
            Ok(None)
        }
    }

    fn ends(&mut self) -> PResult<MarkedEnds> {
        const EXPECTED: &[&str] = &["`empty`", "`pt`", "`cantor`", "`I`", "`U`", "`seq1pc`", "`lim1pc`"];
        let save = self.pos;
        let Some((start, word)) = self.word() else {
            return Err(self.unexpected(EXPECTED));
        };
        let planar = |m: Option<Mark>| m.unwrap_or(Mark::Planar);
        match word {
            "empty" => Ok(MarkedEnds::Empty),
            "pt" => Ok(MarkedEnds::Pt(planar(self.suffix_mark()?))),
            "cantor" => Ok(MarkedEnds::Cantor(planar(self.suffix_mark()?))),
            "I" => {
                self.expect('(')?;
                let b = self.ordinal()?;
                self.expect(')')?;
                Ok(MarkedEnds::Interval(b, planar(self.suffix_mark()?)))
            }
            "U" => {
                self.expect('(')?;
                let mut children = vec![self.ends()?];
                while self.eat(',') {
                    children.push(self.ends()?);
                }
                self.expect(')')?;
                Ok(MarkedEnds::Union(children))
            }
            "seq1pc" => {
                self.expect('(')?;
                self.skip_ws();
                let child_at = self.pos;
                let child = self.ends()?;
                if child.unmarked().is_empty() {
                    return Err(self.error(child_at, &[], "one-point compactification of an empty space"));
                }
                let point = self.point_mark()?;
                self.expect(')')?;
                let point = point.unwrap_or_else(|| MarkedEnds::forced_point_mark(&child));
                Ok(MarkedEnds::Seq {
                    child: Box::new(child),
                    point,
                })
            }
            "lim1pc" => {
                self.expect('(')?;
                self.skip_ws();
                let ord_at = self.pos;
                let l = self.ordinal()?;
                let limit = LimitOrdinal::new(l.clone()).map_err(|_| {
                    self.error(ord_at, &["limit ordinal"], format!("{l} is not a limit ordinal"))
                })?;
                let point = self.point_mark()?;
                self.expect(')')?;
                let body = planar(self.suffix_mark()?);
                Ok(MarkedEnds::Lim {
                    limit,
                    body,
                    point: point.unwrap_or(body),
                })
            }
            _ => {
                self.pos = save;
                Err(self.error(start, EXPECTED, format!("unknown constructor `{word}`")))
            }
        }
    }

    fn field(&mut self, name: &str) -> PResult<()> {
        self.keyword(name)?;
        self.expect('=')
    }

    fn surface(&mut self) -> PResult<SurfaceDescriptor> {
        self.keyword("surface")?;
        self.expect('(')?;
        self.field("genus")?;
        let genus = if self.peek() == Some('i') {
            self.keyword("inf")?;
            Genus::Infinite
        } else {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => Genus::Finite(self.nat()?),
                _ => return Err(self.unexpected(&["`inf`", "natural number"])),
            }
        };
        self.expect(',')?;
        self.field("boundary")?;
        let boundary = self.nat()?;
        self.expect(',')?;
        self.field("ends")?;
        let ends = self.ends()?;
        self.expect(')')?;
        Ok(SurfaceDescriptor::new(genus, boundary, ends))
    }

    // presentation := 'gens' '=' nat (';' 'rel' '=' int*)*
    fn presentation(&mut self) -> PResult<FinitePresentation> {
        self.field("gens")?;
        let gens_at = self.pos;
        let generators = self.nat()? as usize;
        let mut relators = Vec::new();
        while self.eat(';') {
            self.field("rel")?;
            let mut word = Vec::new();
            while matches!(self.peek(), Some(c) if c == '-' || c.is_ascii_digit()) {
                let at = self.pos;
                let x = self.integer()?;
                let x = i32::try_from(x)
                    .ok()
                    .filter(|&x| x != 0 && x.unsigned_abs() as usize <= generators)
                    .ok_or_else(|| {
                        self.error(at, &[], format!("generator {x} out of range 1..={generators}"))
                    })?;
                word.push(x);
            }
            relators.push(word);
        }
        FinitePresentation::new(generators, relators)
            .map_err(|e| self.error(gens_at, &[], e.to_string()))
    }
}

fn whole<'a, T>(text: &'a str, f: impl FnOnce(&mut Parser<'a>) -> PResult<T>) -> PResult<T> {
    let mut p = Parser::new(text);
    let v = f(&mut p)?;
    p.end()?;
    Ok(v)
}

pub fn parse_ordinal(text: &str) -> Result<Ordinal, ParseError> {
    whole(text, Parser::ordinal)
}

/// Unmarked leaves are planar. An omitted compactification-point mark is
/// nonplanar exactly when the compactified material contains nonplanar ends.
pub fn parse_endspace(text: &str) -> Result<MarkedEnds, ParseError> {
    whole(text, Parser::ends)
}

pub fn parse_surface(text: &str) -> Result<SurfaceDescriptor, ParseError> {
    whole(text, Parser::surface)
}

pub fn parse_presentation(text: &str) -> Result<FinitePresentation, ParseError> {
    whole(text, Parser::presentation)
}
