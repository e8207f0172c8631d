//! Text format for presentations, ideals and modules.
//!
//! ```text
//! algebra A2 over GF(101)
//! vertices: 1 2
//! arrows:
//!   a: 1 -> 2
//! relations:
//! ideal I = (a)
//! module S = simple:1
//! ```
//!
//! Words are read in composition order: in `b*a` the arrow `a` acts first.

use std::fmt::Write as _;

use crate::algebra::{AlgebraError, Arrow, Presentation, Quiver, Relation, Term};
use crate::linalg::{Field, Mat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct DslError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenSpec {
    Arrow(usize),
    Vertex(usize),
    Element(Relation),
    RadPower(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    Simple(usize),
    Proj(usize),
    IdealAsModule(String),
    QuotientAsModule(String),
    /// Per-vertex dimensions and one matrix per arrow (target × source).
    Explicit { dims: Vec<usize>, matrices: Vec<Mat> },
}

#[derive(Clone, Debug)]
pub struct SourceFile {
    pub presentation: Presentation,
    pub ideals: Vec<(String, Vec<GenSpec>)>,
    pub modules: Vec<(String, ModuleSpec)>,
}

impl PartialEq for SourceFile {
    fn eq(&self, other: &Self) -> bool {
        self.presentation == other.presentation
            && self.ideals == other.ideals
            && self.modules == other.modules
    }
}

impl SourceFile {
    pub fn ideal(&self, name: &str) -> Option<&[GenSpec]> {
        self.ideals
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g.as_slice())
    }

    pub fn module(&self, name: &str) -> Option<&ModuleSpec> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(u64),
    Sym(&'static str),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 15] = [
    "->", ":", "*", "+", "-", "^", "(", ")", ",", "=", "{", "}", "[", "]", ";",
];

fn lex_line(text: &str, line: usize, out: &mut Vec<Token>) -> Result<(), DslError> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse::<u64>().map_err(|_| DslError {
                line,
                col,
                msg: format!("number `{s}` is too large"),
            })?;
            out.push(Token {
                tok: Tok::Num(n),
                line,
                col,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line,
                col,
            });
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        let sym = if c == '−' || c == '–' {
            Some("-")
        } else if c == '→' {
            Some("->")
        } else if c == '·' || c == '∗' {
            Some("*")
        } else {
            SYMBOLS.iter().copied().find(|s| rest.starts_with(s))
        };
        match sym {
            Some(s) => {
                let width = if c.is_ascii() { s.len() } else { 1 };
                out.push(Token {
                    tok: Tok::Sym(s),
                    line,
                    col,
                });
                i += width;
            }
            None => {
                return Err(DslError {
                    line,
                    col,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(())
}

/// Splits the text into logical lines; a line continues while brackets
/// are open, and each continuation inserts a `;`.
fn logical_lines(text: &str) -> Result<Vec<Vec<Token>>, DslError> {
    let mut out = Vec::new();
    let mut cur: Vec<Token> = Vec::new();
    let mut depth: i64 = 0;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let before = cur.len();
        lex_line(raw, line, &mut cur)?;
        if depth > 0 && cur.len() > before {
            cur.insert(
                before,
                Token {
                    tok: Tok::Sym(";"),
                    line,
                    col: 1,
                },
            );
        }
        for t in &cur[before..] {
            match t.tok {
                Tok::Sym("(") | Tok::Sym("[") | Tok::Sym("{") => depth += 1,
                Tok::Sym(")") | Tok::Sym("]") | Tok::Sym("}") => depth -= 1,
                _ => {}
            }
        }
        if depth < 0 {
            let t = cur.last().unwrap();
            return Err(DslError {
                line: t.line,
                col: t.col,
                msg: "unbalanced closing bracket".into(),
            });
        }
        if depth == 0 && !cur.is_empty() {
            out.push(std::mem::take(&mut cur));
        }
    }
    if let Some(t) = cur.first() {
        return Err(DslError {
            line: t.line,
            col: t.col,
            msg: "unclosed bracket".into(),
        });
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    eol: (usize, usize),
}

impl<'a> Cursor<'a> {
    fn new(toks: &'a [Token]) -> Self {
        let eol = toks.last().map_or((0, 0), |t| (t.line, t.col + 1));
        Cursor { toks, pos: 0, eol }
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&'a Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.eol, |t| (t.line, t.col))
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, DslError> {
        let (line, col) = self.here();
        Err(DslError {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn bump(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn eat(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(x)) if *x == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), DslError> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    fn keyword(&mut self, k: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(x)) if x == k) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, DslError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(s.clone())
            }
            _ => self.err("expected a name"),
        }
    }

    /// A vertex id: a name or a number.
    fn id(&mut self) -> Result<String, DslError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(s.clone())
            }
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(n.to_string())
            }
            _ => self.err("expected a vertex id"),
        }
    }

    fn number(&mut self) -> Result<u64, DslError> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(*n)
            }
            _ => self.err("expected a number"),
        }
    }

    fn end(&self) -> Result<(), DslError> {
        if self.done() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }
}

#[derive(PartialEq)]
enum Section {
    None,
    Vertices,
    Arrows,
    Relations,
}

struct Parser {
    name: Option<String>,
    field: Option<Field>,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<(Relation, (usize, usize))>,
    ideals: Vec<(String, Vec<GenSpec>)>,
    modules: Vec<(String, ModuleSpec)>,
}

impl Parser {
    fn field(&self, c: &Cursor) -> Result<Field, DslError> {
        self.field
            .map_or_else(|| c.err("missing `algebra <name> over GF(<p>)` header"), Ok)
    }

    fn vertex(&self, c: &mut Cursor) -> Result<usize, DslError> {
        let at = c.pos;
        let id = c.id()?;
        self.vertices.iter().position(|v| *v == id).map_or_else(
            || {
                c.pos = at;
                c.err(format!("unknown vertex `{id}`"))
            },
            Ok,
        )
    }

    fn arrow(&self, c: &mut Cursor) -> Result<usize, DslError> {
        let at = c.pos;
        let id = c.ident()?;
        self.arrows.iter().position(|a| a.name == id).map_or_else(
            || {
                c.pos = at;
                c.err(format!("unknown arrow `{id}`"))
            },
            Ok,
        )
    }

    /// `[coeff*]word` terms joined by `+`/`-`; stops at `,` `)` or end.
    fn linear_combination(&self, c: &mut Cursor) -> Result<Relation, DslError> {
        let f = self.field(c)?;
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let mut sign_neg = false;
            if c.eat("-") {
                sign_neg = true;
            } else if !c.eat("+") && !first {
                break;
            }
            first = false;
            let mut coeff = 1u32;
            if let Some(Tok::Num(n)) = c.peek() {
                coeff = (*n % f.p() as u64) as u32;
                c.bump();
                if !c.eat("*") {
                    return c.err("expected `*` after coefficient");
                }
            }
            let mut word = Vec::new();
            loop {
                let a = self.arrow(c)?;
                let mut k = 1;
                if c.eat("^") {
                    k = c.number()? as usize;
                    if k == 0 {
                        return c.err("exponent must be positive");
                    }
                }
                word.extend(std::iter::repeat_n(a, k));
                if !c.eat("*") {
                    break;
                }
            }
            if sign_neg {
                coeff = f.neg(coeff);
            }
            terms.push(Term { coeff, word });
            match c.peek() {
                Some(Tok::Sym("+")) | Some(Tok::Sym("-")) => {}
                _ => break,
            }
        }
        Ok(Relation { terms })
    }

    fn check_word(&self, r: &Relation, at: (usize, usize)) -> Result<(), DslError> {
        let q = Quiver {
            vertices: self.vertices.clone(),
            arrows: self.arrows.clone(),
        };
        for t in &r.terms {
            if q.word_endpoints(&t.word).is_none() {
                return Err(DslError {
                    line: at.0,
                    col: at.1,
                    msg: format!("noncomposable word `{}`", q.word_name(&t.word)),
                });
            }
        }
        Ok(())
    }

    fn header(&mut self, c: &mut Cursor) -> Result<(), DslError> {
        let name = c.id()?;
        if !c.keyword("over") {
            return c.err("expected `over`");
        }
        if !c.keyword("GF") {
            return c.err("expected `GF`");
        }
        c.expect("(")?;
        let at = c.pos;
        let p = c.number()?;
        if p > u32::MAX as u64 || !crate::linalg::is_prime(p as u32) || p >= 1 << 31 {
            c.pos = at;
            return c.err(format!("{p} is not a supported prime"));
        }
        c.expect(")")?;
        c.end()?;
        self.name = Some(name);
        self.field = Some(Field::new(p as u32));
        Ok(())
    }

    fn arrow_decl(&mut self, c: &mut Cursor) -> Result<(), DslError> {
        let at = c.pos;
        let name = c.ident()?;
        if self.arrows.iter().any(|a| a.name == name) || self.vertices.contains(&name) {
            c.pos = at;
            return c.err(format!("duplicate name `{name}`"));
        }
        c.expect(":")?;
        let source = self.vertex(c)?;
        c.expect("->")?;
        let target = self.vertex(c)?;
        c.end()?;
        self.arrows.push(Arrow {
            name,
            source,
            target,
        });
        Ok(())
    }

    fn relations_line(&mut self, c: &mut Cursor) -> Result<(), DslError> {
        loop {
            let at = c.here();
            let r = self.linear_combination(c)?;
            self.check_word(&r, at)?;
            self.relations.push((r, at));
            if !c.eat(",") {
                break;
            }
        }
        c.end()
    }

    fn ideal_decl(&mut self, c: &mut Cursor) -> Result<(), DslError> {
        let name = c.ident()?;
        c.expect("=")?;
        c.expect("(")?;
        let mut gens = Vec::new();
        if !c.eat(")") {
            loop {
                let at = c.here();
                let is_vertex = matches!(c.peek(), Some(Tok::Ident(x)) if x == "e")
                    && c.peek_at(1) == Some(&Tok::Sym(":"));
                let is_rad = matches!(c.peek(), Some(Tok::Ident(x)) if x == "rad")
                    && !self.arrows.iter().any(|a| a.name == "rad");
                let g = if is_vertex {
                    c.bump();
                    c.bump();
                    GenSpec::Vertex(self.vertex(c)?)
                } else if is_rad {
                    c.bump();
                    c.expect("^")?;
                    GenSpec::RadPower(c.number()? as usize)
                } else {
                    let r = self.linear_combination(c)?;
                    self.check_word(&r, at)?;
                    match r.terms.as_slice() {
                        [t] if t.coeff == 1 && t.word.len() == 1 => GenSpec::Arrow(t.word[0]),
                        _ => GenSpec::Element(r),
                    }
                };
                gens.push(g);
                if c.eat(")") {
                    break;
                }
                c.expect(",")?;
            }
        }
        c.end()?;
        self.ideals.push((name, gens));
        Ok(())
    }

    fn matrix(&self, c: &mut Cursor, rows: usize, cols: usize) -> Result<Mat, DslError> {
        let f = self.field(c)?;
        let at = c.pos;
        c.expect("[")?;
        let mut data: Vec<Vec<u32>> = Vec::new();
        while c.eat(";") {}
        if !c.eat("]") {
            loop {
                while c.eat(";") {}
                c.expect("[")?;
                let mut row = Vec::new();
                if !c.eat("]") {
                    loop {
                        let neg = c.eat("-");
                        let n = c.number()? % f.p() as u64;
                        let v = n as u32;
                        row.push(if neg { f.neg(v) } else { v });
                        if c.eat("]") {
                            break;
                        }
                        c.expect(",")?;
                    }
                }
                data.push(row);
                while c.eat(";") {}
                if c.eat("]") {
                    break;
                }
                c.expect(",")?;
            }
        }
        let ok = if rows == 0 || cols == 0 {
            data.iter().all(|r| r.is_empty()) && (data.len() == rows || data.is_empty())
        } else {
            data.len() == rows && data.iter().all(|r| r.len() == cols)
        };
        if !ok {
            c.pos = at;
            return c.err(format!("expected a {rows}x{cols} matrix"));
        }
        Ok(if rows == 0 || cols == 0 {
            Mat::zeros(rows, cols)
        } else {
            Mat::from_rows(&data, cols)
        })
    }

    fn module_decl(&mut self, c: &mut Cursor) -> Result<(), DslError> {
        let name = c.ident()?;
        c.expect("=")?;
        let kind_at = c.pos;
        let kind = c.ident()?;
        let spec = match kind.as_str() {
            "simple" | "proj" => {
                c.expect(":")?;
                let v = self.vertex(c)?;
                if kind == "simple" {
                    ModuleSpec::Simple(v)
                } else {
                    ModuleSpec::Proj(v)
                }
            }
            "ideal_as_module" | "quotient_as_module" => {
                c.expect(":")?;
                let at = c.pos;
                let i = c.ident()?;
                if !self.ideals.iter().any(|(n, _)| *n == i) {
                    c.pos = at;
                    return c.err(format!("unknown ideal `{i}`"));
                }
                if kind == "ideal_as_module" {
                    ModuleSpec::IdealAsModule(i)
                } else {
                    ModuleSpec::QuotientAsModule(i)
                }
            }
            "explicit" => self.explicit(c)?,
            _ => {
                c.pos = kind_at;
                return c.err(format!("unknown module kind `{kind}`"));
            }
        };
        c.end()?;
        self.modules.push((name, spec));
        Ok(())
    }

    fn explicit(&self, c: &mut Cursor) -> Result<ModuleSpec, DslError> {
        c.expect("{")?;
        let mut dims = vec![0usize; self.vertices.len()];
        let mut pending: Vec<(usize, usize)> = Vec::new();
        loop {
            while c.eat(";") {}
            if c.eat("}") {
                break;
            }
            if c.keyword("dim") {
                let v = self.vertex(c)?;
                c.expect("=")?;
                dims[v] = c.number()? as usize;
            } else {
                let at = c.pos;
                let a = self.arrow(c)?;
                c.expect("=")?;
                pending.push((a, at));
                // Matrices are parsed once every dimension is known.
                let mut depth = 0;
                loop {
                    match c.bump().map(|t| &t.tok) {
                        Some(Tok::Sym("[")) => depth += 1,
                        Some(Tok::Sym("]")) => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        Some(_) => {}
                        None => return c.err("unterminated matrix"),
                    }
                }
            }
        }
        let end = c.pos;
        let mut matrices: Vec<Option<Mat>> = vec![None; self.arrows.len()];
        for (a, at) in pending {
            c.pos = at + 2;
            let arrow = &self.arrows[a];
            let m = self.matrix(c, dims[arrow.target], dims[arrow.source])?;
            matrices[a] = Some(m);
        }
        c.pos = end;
        let matrices = matrices
            .into_iter()
            .zip(&self.arrows)
            .map(|(m, a)| m.unwrap_or_else(|| Mat::zeros(dims[a.target], dims[a.source])))
            .collect();
        Ok(ModuleSpec::Explicit { dims, matrices })
    }

    fn line(&mut self, toks: &[Token], section: &mut Section) -> Result<(), DslError> {
        let mut c = Cursor::new(toks);
        let starts = |k: &str| matches!(c.peek(), Some(Tok::Ident(x)) if x == k);
        let then_colon = c.peek_at(1) == Some(&Tok::Sym(":"));
        let is_decl = matches!(c.peek_at(1), Some(Tok::Ident(_)))
            && c.peek_at(2) == Some(&Tok::Sym("="));
        if starts("algebra") && !then_colon {
            c.bump();
            *section = Section::None;
            return self.header(&mut c);
        }
        self.field(&c)?;
        if starts("vertices") && then_colon {
            c.pos = 2;
            *section = Section::Vertices;
        } else if starts("arrows") && then_colon {
            c.pos = 2;
            *section = Section::Arrows;
        } else if starts("relations") && then_colon {
            c.pos = 2;
            *section = Section::Relations;
        } else if starts("ideal") && is_decl {
            c.bump();
            *section = Section::None;
            return self.ideal_decl(&mut c);
        } else if starts("module") && is_decl {
            c.bump();
            *section = Section::None;
            return self.module_decl(&mut c);
        }
        if c.done() {
            return Ok(());
        }
        match section {
            Section::Vertices => {
                while !c.done() {
                    let at = c.pos;
                    let v = c.id()?;
                    if self.vertices.contains(&v) {
                        c.pos = at;
                        return c.err(format!("duplicate vertex `{v}`"));
                    }
                    self.vertices.push(v);
                    c.eat(",");
                }
                Ok(())
            }
            Section::Arrows => {
                // Several declarations may share a line, separated by `,`.
                let parts: Vec<&[Token]> = toks[c.pos..]
                    .split(|t| t.tok == Tok::Sym(","))
                    .collect();
                for p in parts {
                    let mut sub = Cursor::new(p);
                    if p.is_empty() {
                        continue;
                    }
                    self.arrow_decl(&mut sub)?;
                }
                Ok(())
            }
            Section::Relations => self.relations_line(&mut c),
            Section::None => c.err("expected a section header or declaration"),
        }
    }
}

/// Parses a source file and checks every relation.
pub fn parse_source(text: &str) -> Result<SourceFile, DslError> {
    let mut p = Parser {
        name: None,
        field: None,
        vertices: Vec::new(),
        arrows: Vec::new(),
        relations: Vec::new(),
        ideals: Vec::new(),
        modules: Vec::new(),
    };
    let mut section = Section::None;
    for toks in logical_lines(text)? {
        p.line(&toks, &mut section)?;
    }
    let Some(field) = p.field else {
        return Err(DslError {
            line: 1,
            col: 1,
            msg: "missing `algebra <name> over GF(<p>)` header".into(),
        });
    };
    let spans: Vec<(usize, usize)> = p.relations.iter().map(|r| r.1).collect();
    let pres = Presentation {
        name: p.name.unwrap(),
        field,
        quiver: Quiver {
            vertices: p.vertices,
            arrows: p.arrows,
        },
        relations: p.relations.into_iter().map(|r| r.0).collect(),
    }
    .validated()
    .map_err(|e| {
        let (line, col) = match &e {
            AlgebraError::NonHomogeneousRelation { relation }
            | AlgebraError::NotAdmissible { relation }
            | AlgebraError::NoncomposableWord { relation, .. }
            | AlgebraError::NonParallelRelation { relation } => spans[*relation],
            _ => (1, 1),
        };
        DslError {
            line,
            col,
            msg: e.to_string(),
        }
    })?;
    Ok(SourceFile {
        presentation: pres,
        ideals: p.ideals,
        modules: p.modules,
    })
}

/// Parses only the presentation.
pub fn parse_presentation(text: &str) -> Result<Presentation, DslError> {
    parse_source(text).map(|s| s.presentation)
}

/// Parses a module spec such as `simple:1` or `ideal_as_module:I` against
/// an already parsed file.
pub fn parse_module_spec(src: &SourceFile, spec: &str) -> Result<ModuleSpec, DslError> {
    if let Some(m) = src.module(spec) {
        return Ok(m.clone());
    }
    let mut text = print_source(&SourceFile {
        presentation: src.presentation.clone(),
        ideals: src.ideals.clone(),
        modules: Vec::new(),
    });
    let _ = writeln!(text, "module __arg = {spec}");
    let line = text.lines().count();
    let parsed = parse_source(&text).map_err(|e| DslError {
        line: if e.line == line { 1 } else { e.line },
        col: if e.line == line { e.col.saturating_sub(15) } else { e.col },
        msg: e.msg,
    })?;
    Ok(parsed.modules.last().unwrap().1.clone())
}

/// Parses an ideal given inline as `(gen, ...)` or by name.
pub fn parse_ideal_spec(src: &SourceFile, spec: &str) -> Result<Vec<GenSpec>, DslError> {
    if let Some(g) = src.ideal(spec) {
        return Ok(g.to_vec());
    }
    let mut text = print_source(&SourceFile {
        presentation: src.presentation.clone(),
        ideals: Vec::new(),
        modules: Vec::new(),
    });
    let body = if spec.trim_start().starts_with('(') {
        spec.to_string()
    } else {
        format!("({spec})")
    };
    let _ = writeln!(text, "ideal __arg = {body}");
    let parsed = parse_source(&text)?;
    Ok(parsed.ideals.last().unwrap().1.clone())
}

fn print_relation(r: &Relation, q: &Quiver, f: Field) -> String {
    r.display(q, f)
}

/// Canonical text form; `parse_source(print_source(s)) == s`.
pub fn print_source(s: &SourceFile) -> String {
    let p = &s.presentation;
    let q = &p.quiver;
    let f = p.field;
    let mut out = String::new();
    let _ = writeln!(out, "algebra {} over GF({})", p.name, f.p());
    let _ = writeln!(out, "vertices: {}", q.vertices.join(" "));
    let _ = writeln!(out, "arrows:");
    for a in &q.arrows {
        let _ = writeln!(
            out,
            "  {}: {} -> {}",
            a.name, q.vertices[a.source], q.vertices[a.target]
        );
    }
    let _ = writeln!(out, "relations:");
    for r in &p.relations {
        let _ = writeln!(out, "  {}", print_relation(r, q, f));
    }
    for (name, gens) in &s.ideals {
        let parts: Vec<String> = gens
            .iter()
            .map(|g| match g {
                GenSpec::Arrow(k) => q.arrows[*k].name.clone(),
                GenSpec::Vertex(v) => format!("e:{}", q.vertices[*v]),
                GenSpec::Element(r) => print_relation(r, q, f),
                GenSpec::RadPower(k) => format!("rad^{k}"),
            })
            .collect();
        let _ = writeln!(out, "ideal {name} = ({})", parts.join(", "));
    }
    for (name, m) in &s.modules {
        let body = match m {
            ModuleSpec::Simple(v) => format!("simple:{}", q.vertices[*v]),
            ModuleSpec::Proj(v) => format!("proj:{}", q.vertices[*v]),
            ModuleSpec::IdealAsModule(i) => format!("ideal_as_module:{i}"),
            ModuleSpec::QuotientAsModule(i) => format!("quotient_as_module:{i}"),
            ModuleSpec::Explicit { dims, matrices } => {
                let mut parts: Vec<String> = dims
                    .iter()
                    .enumerate()
                    .map(|(v, d)| format!("dim {} = {d}", q.vertices[v]))
                    .collect();
                for (a, m) in q.arrows.iter().zip(matrices) {
                    let rows: Vec<String> = (0..m.rows())
                        .map(|r| {
                            let xs: Vec<String> =
                                m.row(r).iter().map(|x| x.to_string()).collect();
                            format!("[{}]", xs.join(","))
                        })
                        .collect();
                    parts.push(format!("{} = [{}]", a.name, rows.join(",")));
                }
                format!("explicit {{ {} }}", parts.join("; "))
            }
        };
        let _ = writeln!(out, "module {name} = {body}");
    }
    out
}

/// Transliterates Greek letters in a name (`α1` → `alpha1`).
pub fn transliterate(name: &str) -> String {
    const TABLE: [(char, &str); 24] = [
        ('α', "alpha"),
        ('β', "beta"),
        ('γ', "gamma"),
        ('δ', "delta"),
        ('ε', "epsilon"),
        ('ζ', "zeta"),
        ('η', "eta"),
        ('θ', "theta"),
        ('ι', "iota"),
        ('κ', "kappa"),
        ('λ', "lambda"),
        ('μ', "mu"),
        ('ν', "nu"),
        ('ξ', "xi"),
        ('ο', "omicron"),
        ('π', "pi"),
        ('ρ', "rho"),
        ('σ', "sigma"),
        ('τ', "tau"),
        ('υ', "upsilon"),
        ('φ', "phi"),
        ('χ', "chi"),
        ('ψ', "psi"),
        ('ω', "omega"),
    ];
    name.chars()
        .map(|c| {
            TABLE
                .iter()
                .find(|(g, _)| *g == c)
                .map_or_else(|| c.to_string(), |(_, s)| s.to_string())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = "algebra A2 over GF(101)\nvertices: 1 2\narrows:\n  a: 1 -> 2\nrelations:\n";

    #[test]
    fn a2_has_no_relations() {
        let p = parse_presentation(A2).unwrap();
        assert_eq!(p.quiver.vertices.len(), 2);
        assert_eq!(p.quiver.arrows.len(), 1);
        assert!(p.relations.is_empty());
    }

    #[test]
    fn noncomposable_word_is_located() {
        let text = "algebra B over GF(7)\nvertices: 1 2\narrows:\n  b: 1 -> 2\nrelations:\n  b*b\n";
        let e = parse_presentation(text).unwrap_err();
        assert_eq!((e.line, e.col), (6, 3));
        assert!(e.msg.contains("noncomposable"), "{}", e.msg);
    }

    #[test]
    fn unknown_vertex_is_located() {
        let text = "algebra B over GF(7)\nvertices: 1 2\narrows:\n  b: 1 -> 3\n";
        let e = parse_presentation(text).unwrap_err();
        assert_eq!((e.line, e.col), (4, 11));
    }

    #[test]
    fn nonhomogeneous_relation_is_rejected() {
        let text = "algebra B over GF(7)\nvertices: 1\narrows:\n  x: 1 -> 1\nrelations:\n  x^3 - x^2\n";
        let e = parse_presentation(text).unwrap_err();
        assert_eq!(e.line, 6);
        assert!(e.msg.contains("different lengths"));
    }

    #[test]
    fn powers_signs_and_unicode() {
        let text = "algebra B over GF(7)\nvertices: 1 2\narrows:\n  α: 1 -> 1\n  β: 1 -> 2\nrelations:\n  α^3\n  β*α − 3*β*α\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.relations[0].terms[0].word, vec![0, 0, 0]);
        // β*α − 3*β*α merges to −2·βα, stored monic.
        assert_eq!(p.relations[1].terms.len(), 1);
        assert_eq!(p.relations[1].terms[0].coeff, 1);
    }

    #[test]
    fn ideals_and_modules_round_trip() {
        let text = format!(
            "{A2}ideal I = (a, e:2)\nideal R = (rad^2)\nmodule S = simple:1\nmodule Q = quotient_as_module:I\nmodule M = explicit {{\n  dim 1 = 1; dim 2 = 1\n  a = [[1]]\n}}\n"
        );
        let s = parse_source(&text).unwrap();
        assert_eq!(s.ideal("I").unwrap(), &[GenSpec::Arrow(0), GenSpec::Vertex(1)]);
        assert_eq!(s.ideal("R").unwrap(), &[GenSpec::RadPower(2)]);
        match s.module("M").unwrap() {
            ModuleSpec::Explicit { dims, matrices } => {
                assert_eq!(dims, &vec![1, 1]);
                assert_eq!(matrices[0].get(0, 0), 1);
            }
            other => panic!("{other:?}"),
        }
        let again = parse_source(&print_source(&s)).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn inline_specs() {
        let s = parse_source(A2).unwrap();
        assert_eq!(parse_module_spec(&s, "simple:2").unwrap(), ModuleSpec::Simple(1));
        assert_eq!(parse_ideal_spec(&s, "a").unwrap(), vec![GenSpec::Arrow(0)]);
        assert!(parse_module_spec(&s, "simple:9").is_err());
    }

    #[test]
    fn transliteration() {
        assert_eq!(transliterate("γ1"), "gamma1");
        assert_eq!(transliterate("μ2ρ"), "mu2rho");
    }
}
