//! The small text language for groups, actions and module matrices.
//!
//! ```text
//! perm: (0 1)(2 3), (0 2)
//! fp: <a, b | a^2, b^3, (a*b)^2>
//! corpus: Q8
//! ```

use std::fmt;

use nabt::{FpGroup, Letter, Perm, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: expected {}, found {}",
            self.line, self.column, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
pub enum GroupSpec {
    Perm { degree: usize, generators: Vec<Perm> },
    Fp(FpGroup),
    Corpus(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ActionSpec {
    Conjugation,
    Trivial,
    /// `automorphisms[k][j]`: image of target generator `j` under actor
    /// generator `k`.
    Explicit(Vec<Vec<Perm>>),
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
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

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn error(&mut self, expected: impl Into<String>) -> ParseError {
        self.skip_ws();
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
        let found = match self.rest().chars().next() {
            Some(c) => format!("{c:?}"),
            None => "end of input".into(),
        };
        ParseError {
            line,
            column,
            expected: expected.into(),
            found,
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("{c:?}")))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    fn ident(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_alphabetic() || c == '_' => {}
            _ => return Err(self.error("a name")),
        }
        let end = chars
            .find(|&(_, c)| !(c.is_alphanumeric() || c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        self.pos += end;
        Ok(&rest[..end])
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        let sign = usize::from(rest.starts_with('-') || rest.starts_with('+'));
        let digits = rest[sign..].chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("an integer"));
        }
        let text = &rest[..sign + digits];
        let value = text.parse::<i64>().map_err(|_| self.error("an integer that fits in 64 bits"))?;
        self.pos += sign + digits;
        Ok(value)
    }

    fn point(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        if !self.rest().starts_with(|c: char| c.is_ascii_digit()) {
            return Err(self.error("a point (non-negative integer)"));
        }
        Ok(self.int()? as usize)
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, ParseError> {
    let mut c = Cursor::new(text);
    let kind = c.ident().map_err(|mut e| {
        e.expected = "one of `perm:`, `fp:`, `corpus:`".into();
        e
    })?;
    let kind_start = c.pos - kind.len();
    c.expect(':')?;
    let spec = match kind {
        "perm" => {
            let generators = perm_list(&mut c)?;
            let degree = generators.iter().map(Perm::degree).max().unwrap_or(1);
            GroupSpec::Perm {
                degree,
                generators: generators.iter().map(|p| pad(p, degree)).collect(),
            }
        }
        "fp" => GroupSpec::Fp(presentation(&mut c)?),
        "corpus" => GroupSpec::Corpus(corpus_name(&mut c)?),
        _ => {
            c.pos = kind_start;
            return Err(c.error("one of `perm:`, `fp:`, `corpus:`"));
        }
    };
    c.finish()?;
    Ok(spec)
}

fn corpus_name(c: &mut Cursor) -> Result<String, ParseError> {
    c.skip_ws();
    let rest = c.rest();
    let len = rest
        .find(|ch: char| !(ch.is_alphanumeric() || ch == '_'))
        .unwrap_or(rest.len());
    if len == 0 {
        return Err(c.error("a corpus group name such as Q8 or C2xC4"));
    }
    c.pos += len;
    Ok(rest[..len].to_string())
}

/// `p₁, p₂, …` where each `pᵢ` is a product of cycles or `()`.
fn perm_list(c: &mut Cursor) -> Result<Vec<Perm>, ParseError> {
    let mut out = vec![perm(c)?];
    while c.eat(',') {
        out.push(perm(c)?);
    }
    Ok(out)
}

fn perm(c: &mut Cursor) -> Result<Perm, ParseError> {
    if c.peek() != Some('(') {
        return Err(c.error("a permutation in cycle notation"));
    }
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    while c.peek() == Some('(') {
        let start = c.pos;
        c.expect('(')?;
        let mut cycle = Vec::new();
        while c.peek() != Some(')') {
            let at = c.pos;
            let p = c.point()?;
            if !seen.insert(p) {
                c.pos = at;
                return Err(c.error(format!("a point other than {p}, which already appears")));
            }
            cycle.push(p);
            c.eat(',');
        }
        c.expect(')')?;
        if cycle.is_empty() && !cycles.is_empty() {
            c.pos = start;
            return Err(c.error("a non-empty cycle"));
        }
        cycles.push(cycle);
    }
    let degree = seen.last().map_or(1, |&m| m + 1);
    cycles.retain(|cy| !cy.is_empty());
    Perm::from_cycles(degree, &cycles).map_err(|e| c.error(e.to_string()))
}

/// The same permutation on `degree ≥ p.degree()` points.
pub fn pad(p: &Perm, degree: usize) -> Perm {
    let mut images = p.images().to_vec();
    images.extend(p.degree() as u32..degree as u32);
    Perm::from_images(images).expect("padding keeps a bijection")
}

fn presentation(c: &mut Cursor) -> Result<FpGroup, ParseError> {
    c.expect('<')?;
    let mut names: Vec<String> = Vec::new();
    loop {
        let at = c.pos;
        let name = c.ident()?.to_string();
        if names.contains(&name) {
            c.pos = at;
            return Err(c.error(format!("a generator name other than {name:?}, which is repeated")));
        }
        names.push(name);
        if !c.eat(',') {
            break;
        }
    }
    let mut relators = Vec::new();
    if c.eat('|') && c.peek() != Some('>') {
        loop {
            relators.push(relation(c, &names)?);
            if !c.eat(',') {
                break;
            }
        }
    }
    c.expect('>')?;
    FpGroup::new(names, relators).map_err(|e| c.error(e.to_string()))
}

/// `w` or `u = v` (read as `u v⁻¹`).
fn relation(c: &mut Cursor, names: &[String]) -> Result<Word, ParseError> {
    let lhs = word(c, names)?;
    if c.eat('=') {
        let rhs = word(c, names)?;
        return Ok(lhs.mul(&rhs.inverse()));
    }
    Ok(lhs)
}

fn word(c: &mut Cursor, names: &[String]) -> Result<Word, ParseError> {
    let mut w = factor(c, names)?;
    while c.eat('*') {
        w = w.mul(&factor(c, names)?);
    }
    Ok(w)
}

fn factor(c: &mut Cursor, names: &[String]) -> Result<Word, ParseError> {
    let base = match c.peek() {
        Some('(') => {
            c.expect('(')?;
            let w = word(c, names)?;
            c.expect(')')?;
            w
        }
        Some('[') => {
            c.expect('[')?;
            let a = word(c, names)?;
            c.expect(',')?;
            let b = word(c, names)?;
            c.expect(']')?;
            // [a, b] = a b a⁻¹ b⁻¹
            a.mul(&b).mul(&a.inverse()).mul(&b.inverse())
        }
        Some('1') => {
            c.pos += 1;
            Word::empty()
        }
        _ => {
            let at = c.pos;
            let name = c.ident().map_err(|mut e| {
                e.expected = "a generator, `(`, `[` or `1`".into();
                e
            })?;
            match names.iter().position(|n| n == name) {
                Some(g) => Word::from_letters(vec![Letter { generator: g, exponent: 1 }]),
                None => {
                    c.pos = at;
                    return Err(c.error(format!("one of the generators {}", names.join(", "))));
                }
            }
        }
    };
    if c.eat('^') {
        let k = c.int()?;
        return Ok(base.pow(k));
    }
    Ok(base)
}

pub fn parse_action_spec(text: &str) -> Result<ActionSpec, ParseError> {
    let mut c = Cursor::new(text);
    let at = {
        c.skip_ws();
        c.pos
    };
    let spec = match c.ident()? {
        "conjugation" => ActionSpec::Conjugation,
        "trivial" => ActionSpec::Trivial,
        "explicit" => {
            c.expect(':')?;
            let mut autos = vec![perm_list(&mut c)?];
            while c.eat(';') {
                autos.push(perm_list(&mut c)?);
            }
            ActionSpec::Explicit(autos)
        }
        _ => {
            c.pos = at;
            return Err(c.error("`conjugation`, `trivial` or `explicit: …`"));
        }
    };
    c.finish()?;
    Ok(spec)
}

/// Integer matrices, one per group generator, separated by `|`; rows are
/// separated by `;`, entries by spaces or commas. `-1` is the 1×1 matrix.
pub fn parse_matrices(text: &str) -> Result<Vec<Vec<Vec<i64>>>, ParseError> {
    let mut c = Cursor::new(text);
    let mut out = Vec::new();
    loop {
        let start = c.pos;
        let mut rows = vec![Vec::new()];
        loop {
            match c.peek() {
                Some(';') => {
                    c.pos += 1;
                    rows.push(Vec::new());
                }
                Some(',') => c.pos += 1,
                Some('|') | None => break,
                Some(_) => rows.last_mut().unwrap().push(c.int()?),
            }
        }
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            c.pos = start;
            return Err(c.error(format!(
                "a square matrix ({n} rows, but row {} has {} entries)",
                bad + 1,
                rows[bad].len()
            )));
        }
        out.push(rows);
        if !c.eat('|') {
            break;
        }
    }
    c.finish()?;
    Ok(out)
}
