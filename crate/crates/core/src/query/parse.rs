use super::QueryError;
use crate::model::{parse_integer, ClassExpression, CompareOp, Iri, Literal};

pub(super) const KEYWORDS: [&str; 7] = ["and", "or", "not", "some", "value", "true", "false"];

/// Characters that end a bare name.
pub(super) fn is_delimiter(c: char) -> bool {
    c.is_whitespace() || "()=!<>\"".contains(c)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Name(String),
    FullIri(String),
    Int(i64),
    Str(String),
    Keyword(&'static str),
    Cmp(CompareOp),
    Open,
    Close,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    /// 1-based character column.
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, QueryError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |i: usize, message: &str| QueryError::Parse { column: i + 1, message: message.to_owned() };
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '(' => {
                i += 1;
                Tok::Open
            }
            ')' => {
                i += 1;
                Tok::Close
            }
            '=' => {
                i += 1;
                Tok::Cmp(CompareOp::Eq)
            }
            '!' => {
                if chars.get(i + 1) != Some(&'=') {
                    return Err(err(i, "expected '!='"));
                }
                i += 2;
                Tok::Cmp(CompareOp::Ne)
            }
            '>' | '<' => {
                // `<` opens a full IRI when a `>` closes it before any whitespace
                // and the content looks absolute.
                if c == '<' {
                    let end = chars[i + 1..].iter().position(|&d| d == '>' || d.is_whitespace());
                    if let Some(n) = end {
                        let body: String = chars[i + 1..i + 1 + n].iter().collect();
                        if chars[i + 1 + n] == '>' && body.contains(':') {
                            i += n + 2;
                            out.push(Token { tok: Tok::FullIri(body), column });
                            continue;
                        }
                    }
                }
                let eq = chars.get(i + 1) == Some(&'=');
                i += if eq { 2 } else { 1 };
                Tok::Cmp(match (c, eq) {
                    ('<', false) => CompareOp::Lt,
                    ('<', true) => CompareOp::Le,
                    ('>', false) => CompareOp::Gt,
                    _ => CompareOp::Ge,
                })
            }
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err(err(i, "unterminated string")),
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some('\\') => {
                            match chars.get(i + 1) {
                                Some('"') => s.push('"'),
                                Some('\\') => s.push('\\'),
                                Some('n') => s.push('\n'),
                                Some('t') => s.push('\t'),
                                _ => return Err(err(i + 1, "invalid escape in string")),
                            }
                            i += 2;
                        }
                        Some(&d) => {
                            s.push(d);
                            i += 1;
                        }
                    }
                }
                Tok::Str(s)
            }
            _ => {
                let start = i;
                while i < chars.len() && !is_delimiter(chars[i]) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if let Some(k) = KEYWORDS.iter().find(|k| **k == word) {
                    Tok::Keyword(k)
                } else if let Some(n) = parse_integer(&word) {
                    Tok::Int(n)
                } else if word.bytes().all(|b| b == b'+' || b == b'-' || b.is_ascii_digit()) && word.bytes().any(|b| b.is_ascii_digit()) {
                    return Err(err(start, "integer out of range"));
                } else {
                    Tok::Name(word)
                }
            }
        };
        out.push(Token { tok, column });
    }
    out.push(Token { tok: Tok::End, column: chars.len() + 1 });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Name(n) => format!("name '{n}'"),
        Tok::FullIri(i) => format!("<{i}>"),
        Tok::Int(i) => format!("integer {i}"),
        Tok::Str(_) => "string".to_owned(),
        Tok::Keyword(k) => format!("'{k}'"),
        Tok::Cmp(op) => format!("'{op}'"),
        Tok::Open => "'('".to_owned(),
        Tok::Close => "')'".to_owned(),
        Tok::End => "end of query".to_owned(),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, QueryError> {
        let t = &self.toks[self.pos];
        Err(QueryError::Parse { column: t.column, message: format!("expected {expected}, found {}", describe(&t.tok)) })
    }

    fn or(&mut self) -> Result<ClassExpression, QueryError> {
        let mut parts = vec![self.and()?];
        while *self.peek() == Tok::Keyword("or") {
            self.bump();
            parts.push(self.and()?);
        }
        Ok(ClassExpression::or(parts))
    }

    fn and(&mut self) -> Result<ClassExpression, QueryError> {
        let mut parts = vec![self.unary()?];
        while *self.peek() == Tok::Keyword("and") {
            self.bump();
            parts.push(self.unary()?);
        }
        Ok(ClassExpression::and(parts))
    }

    fn unary(&mut self) -> Result<ClassExpression, QueryError> {
        if *self.peek() == Tok::Keyword("not") {
            self.bump();
            return Ok(ClassExpression::not(self.unary()?));
        }
        self.primary()
    }

    fn name(&mut self) -> Option<Iri> {
        let iri = match self.peek() {
            Tok::Name(n) => Iri::new(format!("{}{n}", crate::model::PMOMH)).ok()?,
            Tok::FullIri(i) => Iri::new(i).ok()?,
            _ => return None,
        };
        self.bump();
        Some(iri)
    }

    fn primary(&mut self) -> Result<ClassExpression, QueryError> {
        if *self.peek() == Tok::Open {
            self.bump();
            let e = self.or()?;
            if *self.peek() != Tok::Close {
                return self.fail("')'");
            }
            self.bump();
            return Ok(e);
        }
        let Some(name) = self.name() else {
            return self.fail("a class name, restriction, 'not' or '('");
        };
        match self.peek().clone() {
            Tok::Keyword("some") => {
                self.bump();
                let filler = self.primary()?;
                Ok(ClassExpression::some(name, filler))
            }
            Tok::Keyword("value") => {
                self.bump();
                if let Some(individual) = self.name() {
                    return Ok(ClassExpression::ValueObj { property: name, individual });
                }
                let literal = self.literal("an individual name or literal")?;
                Ok(ClassExpression::ValueData { property: name, literal })
            }
            Tok::Cmp(op) => {
                self.bump();
                let literal = self.literal("a literal")?;
                Ok(ClassExpression::DataCompare { property: name, op, literal })
            }
            _ => Ok(ClassExpression::Named(name)),
        }
    }

    fn literal(&mut self, expected: &str) -> Result<Literal, QueryError> {
        let lit = match self.peek() {
            Tok::Int(i) => Literal::Integer(*i),
            Tok::Keyword("true") => Literal::Boolean(true),
            Tok::Keyword("false") => Literal::Boolean(false),
            Tok::Str(s) => Literal::String(s.clone()),
            _ => return self.fail(expected),
        };
        self.bump();
        Ok(lit)
    }
}

/// Parses a query expression. Names resolve against the corpus namespace;
/// `<iri>` gives a full IRI. Whether names exist is checked at evaluation.
pub fn parse_query(text: &str) -> Result<ClassExpression, QueryError> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0 };
    let e = p.or()?;
    if *p.peek() != Tok::End {
        return p.fail("'and', 'or' or end of query");
    }
    Ok(e)
}
