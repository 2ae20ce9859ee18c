use std::collections::HashMap;

use super::{ErrorCategory, Graph, ParseError, Term, Triple};
use crate::model::{parse_integer, Datatype, Iri, Literal, RDF};

const MAX_DEPTH: usize = 256;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    IriRef(String),
    PName { prefix: String, local: String, colon: usize },
    Blank(String),
    Str(String),
    Int(i64),
    Word(String),
    At(String),
    Punct(u8),
    Caret2,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    start: usize,
    end: usize,
}

struct Lexer<'a> {
    src: &'a [u8],
    text: &'a str,
    limit: usize,
    pos: usize,
}

fn is_escapable(b: u8) -> bool {
    b"_~.-!$&'()*+,;=/?#@%".contains(&b)
}

impl<'a> Lexer<'a> {
    fn new(src: &'a [u8]) -> Self {
        let limit = match std::str::from_utf8(src) {
            Ok(_) => src.len(),
            Err(e) => e.valid_up_to(),
        };
        let text = std::str::from_utf8(&src[..limit]).expect("prefix is valid UTF-8");
        Lexer { src, text, limit, pos: 0 }
    }

    fn err(&self, offset: usize, category: ErrorCategory, message: impl Into<String>) -> ParseError {
        ParseError::at(self.src, offset, category, message)
    }

    /// Byte at `at`, or `None` at end of input. Reading past the valid UTF-8
    /// prefix is an error located at the first invalid byte.
    fn byte_at(&self, at: usize) -> Result<Option<u8>, ParseError> {
        if at < self.limit {
            Ok(Some(self.src[at]))
        } else if self.limit < self.src.len() {
            Err(self.err(self.limit, ErrorCategory::Lexical, "invalid UTF-8"))
        } else {
            Ok(None)
        }
    }

    fn peek_byte(&self) -> Result<Option<u8>, ParseError> {
        self.byte_at(self.pos)
    }

    fn char_at(&self, at: usize) -> char {
        self.text[at..].chars().next().expect("position is on a char boundary")
    }

    fn skip_trivia(&mut self) -> Result<(), ParseError> {
        loop {
            match self.peek_byte()? {
                Some(b' ' | b'\t' | b'\r' | b'\n') => self.pos += 1,
                Some(b'#') => loop {
                    match self.peek_byte()? {
                        None => break,
                        Some(b'\n') => break,
                        Some(b) => self.pos += utf8_len(b),
                    }
                },
                _ => return Ok(()),
            }
        }
    }

    fn next_token(&mut self) -> Result<Token, ParseError> {
        self.skip_trivia()?;
        let start = self.pos;
        let Some(b) = self.peek_byte()? else {
            return Ok(Token { tok: Tok::Eof, start, end: start });
        };
        let tok = match b {
            b'<' => self.iri_ref()?,
            b'"' | b'\'' => self.string(b)?,
            b'.' | b';' | b',' | b'[' | b']' | b'(' | b')' => {
                self.pos += 1;
                Tok::Punct(b)
            }
            b'^' => {
                if self.byte_at(self.pos + 1)? != Some(b'^') {
                    return Err(self.err(self.pos + 1, ErrorCategory::Lexical, "expected '^^'"));
                }
                self.pos += 2;
                Tok::Caret2
            }
            b'@' => {
                self.pos += 1;
                let s = self.pos;
                while matches!(self.peek_byte()?, Some(c) if c.is_ascii_alphabetic() || c == b'-') {
                    self.pos += 1;
                }
                Tok::At(self.text[s..self.pos].to_owned())
            }
            b'_' if self.byte_at(self.pos + 1)? == Some(b':') => {
                self.pos += 2;
                let s = self.pos;
                let label = self.name_chars()?;
                if label.is_empty() || label.contains(':') {
                    return Err(self.err(self.pos.max(s), ErrorCategory::Lexical, "malformed blank node label"));
                }
                Tok::Blank(label)
            }
            b'+' | b'-' | b'0'..=b'9' => self.integer()?,
            _ if is_name_start(b) || (b >= 0x80 && !self.char_at(self.pos).is_whitespace()) => self.word()?,
            _ => {
                return Err(self.err(
                    self.pos,
                    ErrorCategory::Lexical,
                    format!("unexpected character {:?}", self.char_at(self.pos)),
                ))
            }
        };
        Ok(Token { tok, start, end: self.pos })
    }

    fn iri_ref(&mut self) -> Result<Tok, ParseError> {
        self.pos += 1;
        let mut out = String::new();
        loop {
            let Some(b) = self.peek_byte()? else {
                return Err(self.err(self.pos, ErrorCategory::Lexical, "unterminated IRI"));
            };
            match b {
                b'>' => {
                    self.pos += 1;
                    return Ok(Tok::IriRef(out));
                }
                b'\\' => {
                    let c = self.uchar()?;
                    out.push(c);
                }
                b'<' | b'"' | b'{' | b'}' | b'|' | b'^' | b'`' | 0..=0x20 => {
                    return Err(self.err(self.pos, ErrorCategory::Lexical, "character not allowed in IRI"));
                }
                _ => {
                    let c = self.char_at(self.pos);
                    if c.is_whitespace() {
                        return Err(self.err(self.pos, ErrorCategory::Lexical, "character not allowed in IRI"));
                    }
                    out.push(c);
                    self.pos += c.len_utf8();
                }
            }
        }
    }

    /// `\uXXXX` or `\UXXXXXXXX` starting at the backslash.
    fn uchar(&mut self) -> Result<char, ParseError> {
        let width = match self.byte_at(self.pos + 1)? {
            Some(b'u') => 4,
            Some(b'U') => 8,
            _ => return Err(self.err(self.pos + 1, ErrorCategory::Lexical, "invalid escape")),
        };
        let digits_start = self.pos + 2;
        let mut value: u32 = 0;
        for i in 0..width {
            match self.byte_at(digits_start + i)? {
                Some(h) if h.is_ascii_hexdigit() => value = value * 16 + (h as char).to_digit(16).unwrap(),
                _ => return Err(self.err(digits_start + i, ErrorCategory::Lexical, "invalid hex digit in escape")),
            }
        }
        self.pos = digits_start + width;
        char::from_u32(value)
            .ok_or_else(|| self.err(self.pos, ErrorCategory::Lexical, "escape is not a Unicode scalar value"))
    }

    fn string(&mut self, quote: u8) -> Result<Tok, ParseError> {
        if self.byte_at(self.pos + 1)? == Some(quote) && self.byte_at(self.pos + 2)? == Some(quote) {
            return Err(self.err(self.pos + 2, ErrorCategory::Lexical, "long strings are not supported"));
        }
        self.pos += 1;
        let mut out = String::new();
        loop {
            let Some(b) = self.peek_byte()? else {
                return Err(self.err(self.pos, ErrorCategory::Lexical, "unterminated string"));
            };
            match b {
                b'\n' | b'\r' => {
                    return Err(self.err(self.pos, ErrorCategory::Lexical, "unterminated string"));
                }
                b'\\' => {
                    let simple = match self.byte_at(self.pos + 1)? {
                        Some(b't') => Some('\t'),
                        Some(b'b') => Some('\u{8}'),
                        Some(b'n') => Some('\n'),
                        Some(b'r') => Some('\r'),
                        Some(b'f') => Some('\u{c}'),
                        Some(b'"') => Some('"'),
                        Some(b'\'') => Some('\''),
                        Some(b'\\') => Some('\\'),
                        _ => None,
                    };
                    match simple {
                        Some(c) => {
                            out.push(c);
                            self.pos += 2;
                        }
                        None => out.push(self.uchar()?),
                    }
                }
                _ if b == quote => {
                    self.pos += 1;
                    return Ok(Tok::Str(out));
                }
                _ => {
                    let c = self.char_at(self.pos);
                    out.push(c);
                    self.pos += c.len_utf8();
                }
            }
        }
    }

    fn integer(&mut self) -> Result<Tok, ParseError> {
        let start = self.pos;
        if matches!(self.peek_byte()?, Some(b'+' | b'-')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while matches!(self.peek_byte()?, Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.err(self.pos, ErrorCategory::Lexical, "expected digits"));
        }
        if self.peek_byte()? == Some(b'.') && matches!(self.byte_at(self.pos + 1)?, Some(b'0'..=b'9')) {
            self.pos += 1;
            while matches!(self.peek_byte()?, Some(b'0'..=b'9')) {
                self.pos += 1;
            }
            return Err(self.err(self.pos, ErrorCategory::Lexical, "decimal literals are not supported"));
        }
        if matches!(self.peek_byte()?, Some(b'e' | b'E')) {
            return Err(self.err(self.pos, ErrorCategory::Lexical, "double literals are not supported"));
        }
        parse_integer(&self.text[start..self.pos])
            .map(Tok::Int)
            .ok_or_else(|| self.err(self.pos, ErrorCategory::Lexical, "integer out of range"))
    }

    fn is_name_byte(&self, at: usize) -> Result<bool, ParseError> {
        Ok(match self.byte_at(at)? {
            None => false,
            Some(b) if b < 0x80 => b.is_ascii_alphanumeric() || b"_-:%\\.".contains(&b),
            Some(_) => !self.char_at(at).is_whitespace(),
        })
    }

    /// Scans a run of name characters, decoding `\` escapes. A trailing `.`
    /// is left for the statement terminator.
    fn name_chars(&mut self) -> Result<String, ParseError> {
        let mut out = String::new();
        loop {
            if !self.is_name_byte(self.pos)? {
                return Ok(out);
            }
            let b = self.src[self.pos];
            match b {
                b'.' => {
                    let mut j = self.pos;
                    while self.byte_at(j)? == Some(b'.') {
                        j += 1;
                    }
                    if !self.is_name_byte(j)? {
                        return Ok(out);
                    }
                    out.push_str(&self.text[self.pos..j]);
                    self.pos = j;
                }
                b'\\' => match self.byte_at(self.pos + 1)? {
                    Some(e) if is_escapable(e) => {
                        out.push(e as char);
                        self.pos += 2;
                    }
                    _ => return Err(self.err(self.pos + 1, ErrorCategory::Lexical, "invalid local name escape")),
                },
                b'%' => {
                    for i in 1..=2 {
                        if !matches!(self.byte_at(self.pos + i)?, Some(h) if h.is_ascii_hexdigit()) {
                            return Err(self.err(self.pos + i, ErrorCategory::Lexical, "'%' must be followed by two hex digits"));
                        }
                    }
                    out.push_str(&self.text[self.pos..self.pos + 3]);
                    self.pos += 3;
                }
                _ => {
                    let c = self.char_at(self.pos);
                    out.push(c);
                    self.pos += c.len_utf8();
                }
            }
        }
    }

    fn word(&mut self) -> Result<Tok, ParseError> {
        let start = self.pos;
        // The prefix part may not contain escapes, so find the colon on raw bytes first.
        let mut colon = None;
        let mut j = self.pos;
        while j < self.limit {
            let b = self.src[j];
            if b == b':' {
                colon = Some(j);
                break;
            }
            if !(b.is_ascii_alphanumeric() || b == b'_' || b == b'-' || b == b'.' || b >= 0x80) {
                break;
            }
            if b >= 0x80 && self.char_at(j).is_whitespace() {
                break;
            }
            j += if b >= 0x80 { self.char_at(j).len_utf8() } else { 1 };
        }
        match colon {
            Some(c) => {
                let prefix = self.text[start..c].to_owned();
                if prefix.starts_with('.') || prefix.ends_with('.') {
                    return Err(self.err(c, ErrorCategory::Lexical, "malformed prefix"));
                }
                self.pos = c + 1;
                let local = self.name_chars()?;
                if local.starts_with('.') {
                    return Err(self.err(self.pos, ErrorCategory::Lexical, "local name may not start with '.'"));
                }
                Ok(Tok::PName { prefix, local, colon: c })
            }
            None => {
                let w = self.name_chars()?;
                if w.contains(':') {
                    // An escape hid the colon from the raw scan.
                    return Err(self.err(self.pos, ErrorCategory::Lexical, "escapes are not allowed in prefixes"));
                }
                Ok(Tok::Word(w))
            }
        }
    }
}

fn is_name_start(b: u8) -> bool {
    b.is_ascii_alphabetic() || b == b'_' || b == b':'
}

fn utf8_len(b: u8) -> usize {
    match b {
        0xF0..=0xFF => 4,
        0xE0..=0xEF => 3,
        0xC0..=0xDF => 2,
        _ => 1,
    }
}

fn has_scheme(iri: &str) -> bool {
    let mut chars = iri.char_indices();
    match chars.next() {
        Some((_, c)) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    for (_, c) in chars {
        if c == ':' {
            return true;
        }
        if !(c.is_ascii_alphanumeric() || c == '+' || c == '-' || c == '.') {
            return false;
        }
    }
    false
}

pub(super) struct Parser<'a> {
    lex: Lexer<'a>,
    peeked: Option<Token>,
    prefixes: HashMap<String, String>,
    prefix_order: Vec<(String, String)>,
    base: Option<String>,
    blanks: HashMap<String, String>,
    next_blank: usize,
    triples: Vec<Triple>,
    depth: usize,
}

impl<'a> Parser<'a> {
    pub(super) fn new(src: &'a [u8]) -> Self {
        Parser {
            lex: Lexer::new(src),
            peeked: None,
            prefixes: HashMap::new(),
            prefix_order: Vec::new(),
            base: None,
            blanks: HashMap::new(),
            next_blank: 0,
            triples: Vec::new(),
            depth: 0,
        }
    }

    fn err(&self, offset: usize, category: ErrorCategory, message: impl Into<String>) -> ParseError {
        self.lex.err(offset, category, message)
    }

    fn peek(&mut self) -> Result<&Token, ParseError> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lex.next_token()?);
        }
        Ok(self.peeked.as_ref().unwrap())
    }

    fn bump(&mut self) -> Result<Token, ParseError> {
        self.peek()?;
        Ok(self.peeked.take().unwrap())
    }

    fn peek_punct(&mut self, p: u8) -> Result<bool, ParseError> {
        Ok(self.peek()?.tok == Tok::Punct(p))
    }

    fn unexpected(&self, t: &Token, expected: &str) -> ParseError {
        let found = match &t.tok {
            Tok::Eof => "end of input".to_owned(),
            Tok::Punct(p) => format!("'{}'", *p as char),
            Tok::Caret2 => "'^^'".to_owned(),
            Tok::Word(w) => format!("'{w}'"),
            Tok::At(w) => format!("'@{w}'"),
            Tok::IriRef(_) | Tok::PName { .. } => "IRI".to_owned(),
            Tok::Blank(_) => "blank node".to_owned(),
            Tok::Str(_) => "string".to_owned(),
            Tok::Int(_) => "integer".to_owned(),
        };
        // A bare word may be a prefixed name whose colon was lost, so point past it.
        let at = if matches!(t.tok, Tok::Word(_)) { t.end } else { t.start };
        self.err(at, ErrorCategory::Syntactic, format!("expected {expected}, found {found}"))
    }

    fn expect_punct(&mut self, p: u8) -> Result<(), ParseError> {
        let t = self.bump()?;
        if t.tok == Tok::Punct(p) {
            Ok(())
        } else {
            Err(self.unexpected(&t, &format!("'{}'", p as char)))
        }
    }

    fn fresh_blank(&mut self) -> Term {
        let label = format!("b{}", self.next_blank);
        self.next_blank += 1;
        Term::Blank(label)
    }

    fn named_blank(&mut self, label: String) -> Term {
        if let Some(l) = self.blanks.get(&label) {
            return Term::Blank(l.clone());
        }
        let Term::Blank(fresh) = self.fresh_blank() else { unreachable!() };
        self.blanks.insert(label, fresh.clone());
        Term::Blank(fresh)
    }

    fn resolve_ref(&self, iri: String, end: usize) -> Result<Iri, ParseError> {
        let full = if has_scheme(&iri) {
            iri
        } else {
            match &self.base {
                Some(b) => format!("{b}{iri}"),
                None => return Err(self.err(end, ErrorCategory::Syntactic, "relative IRI without @base")),
            }
        };
        Iri::new(&full).map_err(|e| self.err(end, ErrorCategory::Lexical, e.to_string()))
    }

    fn resolve_pname(&self, prefix: &str, local: &str, colon: usize, end: usize) -> Result<Iri, ParseError> {
        let ns = self
            .prefixes
            .get(prefix)
            .ok_or_else(|| self.err(colon, ErrorCategory::Syntactic, format!("undefined prefix '{prefix}:'")))?;
        Iri::new(format!("{ns}{local}")).map_err(|e| self.err(end, ErrorCategory::Lexical, e.to_string()))
    }

    /// Resolves the token as an IRI if it is one.
    fn token_iri(&self, t: &Token) -> Result<Option<Iri>, ParseError> {
        match &t.tok {
            Tok::IriRef(s) => self.resolve_ref(s.clone(), t.end).map(Some),
            Tok::PName { prefix, local, colon } => self.resolve_pname(prefix, local, *colon, t.end).map(Some),
            _ => Ok(None),
        }
    }

    pub(super) fn parse(mut self) -> Result<Graph, ParseError> {
        loop {
            let t = self.peek()?.clone();
            match &t.tok {
                Tok::Eof => break,
                Tok::At(d) => {
                    self.bump()?;
                    match d.as_str() {
                        "prefix" => self.prefix_directive()?,
                        "base" => self.base_directive()?,
                        _ => return Err(self.err(t.end, ErrorCategory::Syntactic, format!("unknown directive '@{d}'"))),
                    }
                }
                _ => self.triples_statement()?,
            }
        }
        Ok(Graph { triples: self.triples, prefixes: self.prefix_order, base: self.base })
    }

    fn prefix_directive(&mut self) -> Result<(), ParseError> {
        let t = self.bump()?;
        let prefix = match t.tok {
            Tok::PName { prefix, local, .. } if local.is_empty() => prefix,
            _ => return Err(self.unexpected(&t, "prefix name ending in ':'")),
        };
        let t = self.bump()?;
        let Tok::IriRef(ns) = t.tok.clone() else {
            return Err(self.unexpected(&t, "<IRI>"));
        };
        let ns = self.resolve_ref(ns, t.end)?;
        self.prefixes.insert(prefix.clone(), ns.as_str().to_owned());
        self.prefix_order.retain(|(p, _)| *p != prefix);
        self.prefix_order.push((prefix, ns.as_str().to_owned()));
        self.expect_punct(b'.')
    }

    fn base_directive(&mut self) -> Result<(), ParseError> {
        let t = self.bump()?;
        let Tok::IriRef(b) = t.tok.clone() else {
            return Err(self.unexpected(&t, "<IRI>"));
        };
        let b = self.resolve_ref(b, t.end)?;
        self.base = Some(b.as_str().to_owned());
        self.expect_punct(b'.')
    }

    fn enter(&mut self, at: usize) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err(at, ErrorCategory::Syntactic, "nesting too deep"));
        }
        Ok(())
    }

    fn triples_statement(&mut self) -> Result<(), ParseError> {
        let t = self.peek()?.clone();
        match t.tok {
            Tok::Punct(b'[') => {
                let subject = self.blank_property_list()?;
                if !self.peek_punct(b'.')? {
                    self.predicate_object_list(&subject)?;
                }
            }
            Tok::Punct(b'(') => {
                let subject = self.collection()?;
                self.predicate_object_list(&subject)?;
            }
            _ => {
                let t = self.bump()?;
                let subject = if let Some(iri) = self.token_iri(&t)? {
                    Term::Iri(iri)
                } else if let Tok::Blank(label) = t.tok {
                    self.named_blank(label)
                } else {
                    return Err(self.unexpected(&t, "subject"));
                };
                self.predicate_object_list(&subject)?;
            }
        }
        self.expect_punct(b'.')
    }

    fn predicate_object_list(&mut self, subject: &Term) -> Result<(), ParseError> {
        loop {
            let t = self.bump()?;
            let predicate = match &t.tok {
                Tok::Word(w) if w == "a" => Iri::vocab(RDF, "type"),
                _ => match self.token_iri(&t)? {
                    Some(iri) => iri,
                    None if matches!(t.tok, Tok::Word(_)) => {
                        return Err(self.err(t.end, ErrorCategory::Syntactic, "bare name is not an IRI (missing prefix?)"))
                    }
                    None => return Err(self.unexpected(&t, "predicate")),
                },
            };
            self.object_list(subject, &predicate)?;
            if !self.peek_punct(b';')? {
                return Ok(());
            }
            while self.peek_punct(b';')? {
                self.bump()?;
            }
            if matches!(self.peek()?.tok, Tok::Punct(b'.') | Tok::Punct(b']')) {
                return Ok(());
            }
        }
    }

    fn object_list(&mut self, subject: &Term, predicate: &Iri) -> Result<(), ParseError> {
        loop {
            let object = self.object()?;
            self.triples.push(Triple { subject: subject.clone(), predicate: predicate.clone(), object });
            if !self.peek_punct(b',')? {
                return Ok(());
            }
            self.bump()?;
        }
    }

    fn object(&mut self) -> Result<Term, ParseError> {
        let t = self.peek()?.clone();
        match &t.tok {
            Tok::Punct(b'[') => return self.blank_property_list(),
            Tok::Punct(b'(') => return self.collection(),
            _ => {}
        }
        let t = self.bump()?;
        if let Some(iri) = self.token_iri(&t)? {
            return Ok(Term::Iri(iri));
        }
        match t.tok {
            Tok::Blank(label) => Ok(self.named_blank(label)),
            Tok::Int(i) => Ok(Term::Literal(Literal::Integer(i))),
            Tok::Word(w) if w == "true" => Ok(Term::Literal(Literal::Boolean(true))),
            Tok::Word(w) if w == "false" => Ok(Term::Literal(Literal::Boolean(false))),
            Tok::Word(_) => Err(self.err(t.end, ErrorCategory::Syntactic, "bare name is not an IRI (missing prefix?)")),
            Tok::Str(s) => self.literal_tail(s),
            _ => Err(self.unexpected(&t, "object")),
        }
    }

    fn literal_tail(&mut self, lexical: String) -> Result<Term, ParseError> {
        match self.peek()?.tok.clone() {
            Tok::Caret2 => {
                self.bump()?;
                let t = self.bump()?;
                let Some(dt_iri) = self.token_iri(&t)? else {
                    return Err(self.unexpected(&t, "datatype IRI"));
                };
                let dt = Datatype::from_xsd(dt_iri.as_str()).ok_or_else(|| {
                    self.err(t.end, ErrorCategory::Vocabulary, format!("unsupported datatype {dt_iri:?}"))
                })?;
                Literal::new(&lexical, dt)
                    .map(Term::Literal)
                    .map_err(|e| self.err(t.end, ErrorCategory::Lexical, e.to_string()))
            }
            Tok::At(_) => {
                let t = self.bump()?;
                Err(self.err(t.end, ErrorCategory::Syntactic, "language tags are not supported"))
            }
            _ => Ok(Term::Literal(Literal::String(lexical))),
        }
    }

    fn blank_property_list(&mut self) -> Result<Term, ParseError> {
        let open = self.bump()?;
        self.enter(open.start)?;
        let node = self.fresh_blank();
        if self.peek_punct(b']')? {
            self.bump()?;
        } else {
            self.predicate_object_list(&node)?;
            self.expect_punct(b']')?;
        }
        self.depth -= 1;
        Ok(node)
    }

    fn collection(&mut self) -> Result<Term, ParseError> {
        let open = self.bump()?;
        self.enter(open.start)?;
        let mut items = Vec::new();
        while !self.peek_punct(b')')? {
            if self.peek()?.tok == Tok::Eof {
                let t = self.peek()?.clone();
                return Err(self.unexpected(&t, "')'"));
            }
            items.push(self.object()?);
        }
        self.bump()?;
        self.depth -= 1;
        let nil = Term::Iri(Iri::vocab(RDF, "nil"));
        if items.is_empty() {
            return Ok(nil);
        }
        let nodes: Vec<Term> = items.iter().map(|_| self.fresh_blank()).collect();
        for (i, item) in items.into_iter().enumerate() {
            let rest = nodes.get(i + 1).cloned().unwrap_or_else(|| nil.clone());
            self.triples.push(Triple {
                subject: nodes[i].clone(),
                predicate: Iri::vocab(RDF, "first"),
                object: item,
            });
            self.triples.push(Triple { subject: nodes[i].clone(), predicate: Iri::vocab(RDF, "rest"), object: rest });
        }
        Ok(nodes[0].clone())
    }
}

