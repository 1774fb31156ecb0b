//! The `.bp` blueprint language.
//!
//! ```text
//! blueprint flute {
//!   base_genus 0;
//!   state r { chi 0; on 0 -> c; on 2 -> r; }
//!   state c { chi 0; on 0 -> c; }
//!   start r;
//! }
//! ```

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blueprint::{BlueprintError, EndAutomaton};
use crate::cantor_basis::Digit;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SemanticKind {
    NonOrientable { state: String },
    UndeclaredState { state: String },
    DuplicateState { state: String },
    DuplicateTransition { state: String, digit: u8 },
    Invalid { message: String },
}

impl fmt::Display for SemanticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemanticKind::NonOrientable { state } => {
                write!(f, "state {state:?} has chi 1; non-orientable blocks are not supported")
            }
            SemanticKind::UndeclaredState { state } => write!(f, "state {state:?} is not declared"),
            SemanticKind::DuplicateState { state } => write!(f, "state {state:?} is declared twice"),
            SemanticKind::DuplicateTransition { state, digit } => {
                write!(f, "state {state:?} has two transitions on {digit}")
            }
            SemanticKind::Invalid { message } => write!(f, "{message}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum DslError {
    #[error("{line}:{column}: expected {expected}, found {found}")]
    Parse { line: usize, column: usize, expected: String, found: String },
    #[error("{line}:{column}: {kind}")]
    Semantic { line: usize, column: usize, kind: SemanticKind },
}

impl DslError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            DslError::Parse { line, column, .. } | DslError::Semantic { line, column, .. } => (*line, *column),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateDecl {
    pub name: String,
    pub chi: u8,
    pub on0: Option<String>,
    pub on2: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlueprintDoc {
    pub name: String,
    pub base_genus: u32,
    pub states: Vec<StateDecl>,
    pub start: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(String),
    Sym(char),
    Arrow,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s:?}"),
            Tok::Nat(s) => write!(f, "number {s}"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::Arrow => write!(f, "'->'"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, DslError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - s;
            out.push(Spanned { tok: Tok::Ident(chars[s..i].iter().collect()), line: l0, column: c0 });
            continue;
        }
        if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - s;
            out.push(Spanned { tok: Tok::Nat(chars[s..i].iter().collect()), line: l0, column: c0 });
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'>') {
            i += 2;
            col += 2;
            out.push(Spanned { tok: Tok::Arrow, line: l0, column: c0 });
            continue;
        }
        if matches!(c, '{' | '}' | ';') {
            i += 1;
            col += 1;
            out.push(Spanned { tok: Tok::Sym(c), line: l0, column: c0 });
            continue;
        }
        return Err(DslError::Parse {
            line: l0,
            column: c0,
            expected: "a token".into(),
            found: format!("{c:?}"),
        });
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    fn fail<T>(&self, expected: &str) -> Result<T, DslError> {
        let t = self.peek();
        Err(DslError::Parse { line: t.line, column: t.column, expected: expected.into(), found: t.tok.to_string() })
    }

    fn bump(&mut self) -> &Spanned {
        let i = self.pos.min(self.toks.len() - 1);
        self.pos += 1;
        &self.toks[i]
    }

    fn keyword(&mut self, kw: &str) -> Result<(), DslError> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => self.fail(&format!("'{kw}'")),
        }
    }

    fn sym(&mut self, c: char) -> Result<(), DslError> {
        if self.peek().tok == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.fail(&format!("'{c}'"))
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize), DslError> {
        let t = self.peek();
        if let Tok::Ident(s) = &t.tok {
            let r = (s.clone(), t.line, t.column);
            self.bump();
            Ok(r)
        } else {
            self.fail("an identifier")
        }
    }

    fn nat(&mut self, expected: &str) -> Result<(String, usize, usize), DslError> {
        let t = self.peek();
        if let Tok::Nat(s) = &t.tok {
            let r = (s.clone(), t.line, t.column);
            self.bump();
            Ok(r)
        } else {
            self.fail(expected)
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }
}

fn semantic(line: usize, column: usize, kind: SemanticKind) -> DslError {
    DslError::Semantic { line, column, kind }
}

/// Parses and checks a blueprint document.
pub fn parse(text: &str) -> Result<BlueprintDoc, DslError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    p.keyword("blueprint")?;
    let (name, _, _) = p.ident()?;
    p.sym('{')?;
    p.keyword("base_genus")?;
    let (g, gl, gc) = p.nat("a natural number")?;
    let base_genus: u32 = g.parse().map_err(|_| DslError::Parse {
        line: gl,
        column: gc,
        expected: "a natural number below 2^32".into(),
        found: g.clone(),
    })?;
    p.sym(';')?;
    let mut states: Vec<StateDecl> = Vec::new();
    let mut refs: Vec<(String, usize, usize)> = Vec::new();
    loop {
        if !p.is_keyword("state") {
            if states.is_empty() {
                return p.fail("'state'");
            }
            break;
        }
        p.bump();
        let (sname, sl, sc) = p.ident()?;
        if states.iter().any(|s| s.name == sname) {
            return Err(semantic(sl, sc, SemanticKind::DuplicateState { state: sname }));
        }
        p.sym('{')?;
        p.keyword("chi")?;
        let (chi, cl, cc) = p.nat("chi value 0 or 2")?;
        let chi = match chi.as_str() {
            "0" => 0,
            "2" => 2,
            "1" => return Err(semantic(cl, cc, SemanticKind::NonOrientable { state: sname })),
            other => {
                return Err(DslError::Parse { line: cl, column: cc, expected: "chi value 0 or 2".into(), found: other.into() })
            }
        };
        p.sym(';')?;
        let mut decl = StateDecl { name: sname, chi, on0: None, on2: None };
        let mut any = false;
        while p.is_keyword("on") {
            p.bump();
            let (d, dl, dc) = p.nat("digit 0 or 2")?;
            let digit = match d.as_str() {
                "0" => Digit::Zero,
                "2" => Digit::Two,
                other => {
                    return Err(DslError::Parse { line: dl, column: dc, expected: "digit 0 or 2".into(), found: other.into() })
                }
            };
            if p.peek().tok != Tok::Arrow {
                return p.fail("'->'");
            }
            p.bump();
            let (target, tl, tc) = p.ident()?;
            p.sym(';')?;
            let slot = match digit {
                Digit::Zero => &mut decl.on0,
                Digit::Two => &mut decl.on2,
            };
            if slot.is_some() {
                return Err(semantic(
                    dl,
                    dc,
                    SemanticKind::DuplicateTransition { state: decl.name.clone(), digit: digit.value() },
                ));
            }
            *slot = Some(target.clone());
            refs.push((target, tl, tc));
            any = true;
        }
        if !any {
            return p.fail("'on'");
        }
        p.sym('}')?;
        states.push(decl);
    }
    p.keyword("start")?;
    let (start, stl, stc) = p.ident()?;
    p.sym(';')?;
    p.sym('}')?;
    if p.peek().tok != Tok::Eof {
        return p.fail("end of input");
    }
    refs.push((start.clone(), stl, stc));
    for (r, l, c) in refs {
        if !states.iter().any(|s| s.name == r) {
            return Err(semantic(l, c, SemanticKind::UndeclaredState { state: r }));
        }
    }
    Ok(BlueprintDoc { name, base_genus, states, start })
}

/// Parses raw bytes, reporting invalid UTF-8 at its position.
pub fn parse_bytes(bytes: &[u8]) -> Result<BlueprintDoc, DslError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse(text),
        Err(e) => {
            let good = std::str::from_utf8(&bytes[..e.valid_up_to()]).expect("valid prefix");
            let line = good.matches('\n').count() + 1;
            let column = good.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            Err(DslError::Parse { line, column, expected: "UTF-8 text".into(), found: "an invalid byte".into() })
        }
    }
}

/// Canonical text form.
pub fn print(doc: &BlueprintDoc) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "blueprint {} {{", doc.name);
    let _ = writeln!(out, "  base_genus {};", doc.base_genus);
    for s in &doc.states {
        let _ = writeln!(out, "  state {} {{", s.name);
        let _ = writeln!(out, "    chi {};", s.chi);
        if let Some(t) = &s.on0 {
            let _ = writeln!(out, "    on 0 -> {t};");
        }
        if let Some(t) = &s.on2 {
            let _ = writeln!(out, "    on 2 -> {t};");
        }
        out.push_str("  }\n");
    }
    let _ = writeln!(out, "  start {};", doc.start);
    out.push_str("}\n");
    out
}

impl BlueprintDoc {
    pub fn to_automaton(&self) -> Result<EndAutomaton, BlueprintError> {
        let idx = |n: &str| {
            self.states
                .iter()
                .position(|s| s.name == n)
                .ok_or_else(|| BlueprintError::UnknownState(n.to_string()))
        };
        let mut trans = Vec::with_capacity(self.states.len());
        for s in &self.states {
            let t0 = s.on0.as_deref().map(idx).transpose()?;
            let t2 = s.on2.as_deref().map(idx).transpose()?;
            trans.push([t0, t2]);
        }
        EndAutomaton::new(
            self.states.iter().map(|s| s.name.clone()).collect(),
            idx(&self.start)?,
            trans,
            self.states.iter().map(|s| s.chi).collect(),
            self.base_genus,
        )
    }

    pub fn from_automaton(name: &str, a: &EndAutomaton) -> BlueprintDoc {
        let states = (0..a.len())
            .map(|s| {
                let t = a.transitions(s);
                StateDecl {
                    name: a.name(s).to_string(),
                    chi: a.chi(s),
                    on0: t[0].map(|x| a.name(x).to_string()),
                    on2: t[1].map(|x| a.name(x).to_string()),
                }
            })
            .collect();
        BlueprintDoc { name: name.to_string(), base_genus: a.base_genus(), states, start: a.name(a.start()).to_string() }
    }
}

/// Parses a document and builds its automaton.
pub fn load(text: &str) -> Result<(BlueprintDoc, EndAutomaton), DslError> {
    let doc = parse(text)?;
    let a = doc.to_automaton().map_err(|e| {
        semantic(1, 1, SemanticKind::Invalid { message: e.to_string() })
    })?;
    Ok((doc, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blueprint::examples;

    const CANTOR: &str = "blueprint cantor {\n  base_genus 0;\n  state s {\n    chi 0;\n    on 0 -> s;\n    on 2 -> s;\n  }\n  start s;\n}\n";

    #[test]
    fn cantor_round_trip() {
        let d = parse(CANTOR).unwrap();
        assert_eq!(print(&d), CANTOR);
        assert_eq!(d.to_automaton().unwrap(), examples::cantor());
    }

    #[test]
    fn compact_layout_and_comments() {
        let src = "// flute\nblueprint f{base_genus 0; state r{chi 0; on 2 -> r; on 0 -> c;} state c{chi 0;on 0->c;} start r;}";
        let d = parse(src).unwrap();
        assert_eq!(d.to_automaton().unwrap(), examples::flute());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("blueprint x {\n  base_genus 0;\n  state s { chi 1; on 0 -> s; }\n  start s;\n}").unwrap_err();
        assert_eq!(e, semantic(3, 17, SemanticKind::NonOrientable { state: "s".into() }));
        let e = parse("blueprint x { base_genus 0; state s { chi 0; on 0 -> t; } start s; }").unwrap_err();
        assert!(matches!(e, DslError::Semantic { kind: SemanticKind::UndeclaredState { .. }, column: 54, .. }));
        let e = parse("blueprint x { base_genus 0; state s { chi 3; on 0 -> s; } start s; }").unwrap_err();
        assert!(matches!(e, DslError::Parse { column: 43, .. }));
        let e = parse("blueprint").unwrap_err();
        assert!(matches!(e, DslError::Parse { line: 1, column: 10, .. }));
        let e = parse_bytes(b"blue\xffprint").unwrap_err();
        assert_eq!(e.position(), (1, 5));
    }
}
