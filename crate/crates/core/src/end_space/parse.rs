use crate::error::{Error, Result};

use super::expr::{validate, validate_expr, EndSpaceExpr, Genus, Mark, SurfaceSpec};

/// Maximum nesting of `omega(...)` accepted by the parser.
pub const MAX_OMEGA_NESTING: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Nat(u64),
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            chars.next();
            column += 1;
        } else if c.is_ascii_alphabetic() {
            let mut w = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_alphanumeric() && d != '_' {
                    break;
                }
                w.push(d);
                chars.next();
                column += 1;
            }
            out.push(Token { tok: Tok::Word(w), line: l, column: col });
        } else if c.is_ascii_digit() {
            let mut w = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                w.push(d);
                chars.next();
                column += 1;
            }
            let n = w.parse().map_err(|_| Error::Syntax { line: l, column: col, message: "number too large".into() })?;
            out.push(Token { tok: Tok::Nat(n), line: l, column: col });
        } else if "=;+()*".contains(c) {
            chars.next();
            column += 1;
            out.push(Token { tok: Tok::Sym(c), line: l, column: col });
        } else {
            return Err(Error::Syntax { line: l, column: col, message: format!("unexpected character `{c}`") });
        }
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    nesting: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let t = self.peek();
        Err(Error::Syntax { line: t.line, column: t.column, message: message.into() })
    }

    fn describe(&self) -> String {
        match &self.peek().tok {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Nat(n) => format!("`{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".into(),
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.peek().tok == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected `{c}`, found {}", self.describe()))
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<()> {
        if self.peek().tok == Tok::Word(w.into()) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected `{w}`, found {}", self.describe()))
        }
    }

    fn star(&mut self) -> Mark {
        if self.peek().tok == Tok::Sym('*') {
            self.bump();
            Mark::Nonplanar
        } else {
            Mark::Planar
        }
    }

    fn surface(&mut self) -> Result<SurfaceSpec> {
        self.expect_word("genus")?;
        self.expect_sym('=')?;
        let genus = match self.peek().tok.clone() {
            Tok::Word(w) if w == "inf" => {
                self.bump();
                Genus::Infinite
            }
            Tok::Nat(n) => {
                self.bump();
                Genus::Finite(n)
            }
            _ => return self.error(format!("expected `inf` or a natural number, found {}", self.describe())),
        };
        self.expect_sym(';')?;
        self.expect_word("ends")?;
        self.expect_sym('=')?;
        let ends = self.expr()?;
        self.finish()?;
        Ok(SurfaceSpec { genus, ends })
    }

    fn finish(&self) -> Result<()> {
        if self.peek().tok != Tok::End {
            return self.error(format!("unexpected {} after expression", self.describe()));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<EndSpaceExpr> {
        let mut parts = vec![self.term()?];
        while self.peek().tok == Tok::Sym('+') {
            self.bump();
            parts.push(self.term()?);
        }
        Ok(EndSpaceExpr::sum(parts))
    }

    fn term(&mut self) -> Result<EndSpaceExpr> {
        match self.peek().tok.clone() {
            Tok::Word(w) if w == "pt" => {
                self.bump();
                Ok(EndSpaceExpr::Pt(self.star()))
            }
            Tok::Word(w) if w == "cantor" => {
                self.bump();
                Ok(EndSpaceExpr::Cantor(self.star()))
            }
            Tok::Word(w) if w == "omega" => {
                self.bump();
                self.nesting += 1;
                if self.nesting > MAX_OMEGA_NESTING {
                    return Err(Error::Resource(format!("omega nesting exceeds {MAX_OMEGA_NESTING}")));
                }
                self.expect_sym('(')?;
                let child = self.expr()?;
                self.expect_sym(')')?;
                self.nesting -= 1;
                Ok(EndSpaceExpr::omega(child, self.star()))
            }
            _ => self.error(format!("expected `pt`, `omega` or `cantor`, found {}", self.describe())),
        }
    }
}

fn parser(text: &str) -> Result<Parser> {
    Ok(Parser { toks: lex(text)?, pos: 0, nesting: 0 })
}

fn violations_to_error(v: Vec<super::expr::Violation>) -> Result<()> {
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Validity(v.iter().map(ToString::to_string).collect()))
    }
}

/// Parses `genus = G; ends = EXPR` and validates the result.
pub fn parse_surface(text: &str) -> Result<SurfaceSpec> {
    let spec = parser(text)?.surface()?;
    violations_to_error(validate(&spec))?;
    Ok(spec)
}

/// Parses a bare end-space expression and checks its structural invariants.
pub fn parse_expr(text: &str) -> Result<EndSpaceExpr> {
    let mut p = parser(text)?;
    let e = p.expr()?;
    p.finish()?;
    violations_to_error(validate_expr(&e))?;
    Ok(e)
}

/// Parses either a full surface or a bare expression; for the latter the
/// genus is infinite exactly when some end is nonplanar.
pub fn parse_surface_or_expr(text: &str) -> Result<SurfaceSpec> {
    if text.trim_start().starts_with("genus") {
        return parse_surface(text);
    }
    let ends = parse_expr(text)?;
    let genus = if ends.has_mark(Mark::Nonplanar) { Genus::Infinite } else { Genus::Finite(0) };
    let spec = SurfaceSpec { genus, ends };
    violations_to_error(validate(&spec))?;
    Ok(spec)
}
