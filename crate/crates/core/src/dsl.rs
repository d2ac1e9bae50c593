//! Text format for quivers with relations.
//!
//! ```text
//! quiver {
//!   vertices: 1, 2, 3;
//!   arrows:
//!     alpha: 1 -> 2;
//!     beta: 2 -> 3;
//!   relations:
//!     beta.alpha;        // rightmost arrow is applied first
//! }
//! ```
//!
//! Relation terms are `(rational "*")? path`, joined with `+` or `-`; the
//! first term may carry a leading `-`.

use std::fmt::Write as _;

use num_traits::{One, Signed};

use crate::quiver::{Arrow, Path, Quiver, QuiverError, Relation};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    // the cause is part of the message, so it is not also exposed as a source
    #[error("{line}:{col}: {error}")]
    Invalid {
        line: usize,
        col: usize,
        error: QuiverError,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Colon,
    Semi,
    Comma,
    Arrow,
    LBrace,
    RBrace,
    Plus,
    Minus,
    Star,
    Dot,
    Slash,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<Spanned>, DslError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
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
        let tok = match c {
            '/' => {
                bump(&mut chars);
                if chars.peek() == Some(&'/') {
                    while chars.peek().is_some_and(|&c| c != '\n') {
                        bump(&mut chars);
                    }
                    continue;
                }
                Tok::Slash
            }
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    Tok::Arrow
                } else {
                    Tok::Minus
                }
            }
            ':' | ';' | ',' | '{' | '}' | '+' | '*' | '.' => {
                bump(&mut chars);
                match c {
                    ':' => Tok::Colon,
                    ';' => Tok::Semi,
                    ',' => Tok::Comma,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '+' => Tok::Plus,
                    '*' => Tok::Star,
                    _ => Tok::Dot,
                }
            }
            c if is_word_char(c) => {
                let mut w = String::new();
                while chars.peek().is_some_and(|&c| is_word_char(c)) {
                    w.push(bump(&mut chars));
                }
                Tok::Word(w)
            }
            other => {
                return Err(DslError::Syntax {
                    line: l0,
                    col: c0,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push(Spanned {
            tok,
            line: l0,
            col: c0,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, DslError> {
        let (line, col) = self.here();
        Err(DslError::Syntax {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, want: Tok) -> Result<(), DslError> {
        if *self.peek() == want {
            self.next();
            Ok(())
        } else {
            self.syntax(format!(
                "expected {}, found {}",
                want.describe(),
                self.peek().describe()
            ))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), DslError> {
        match self.peek() {
            Tok::Word(w) if w == kw => {
                self.next();
                Ok(())
            }
            other => self.syntax(format!("expected `{kw}`, found {}", other.describe())),
        }
    }

    fn ident(&mut self) -> Result<String, DslError> {
        match self.peek().clone() {
            Tok::Word(w) => {
                self.next();
                Ok(w)
            }
            other => self.syntax(format!("expected identifier, found {}", other.describe())),
        }
    }

    fn invalid<T>(&self, at: (usize, usize), error: QuiverError) -> Result<T, DslError> {
        Err(DslError::Invalid {
            line: at.0,
            col: at.1,
            error,
        })
    }

    fn is_arrow_decl(&self) -> bool {
        matches!(self.peek(), Tok::Word(_))
            && (matches!(self.peek_at(1), Tok::Colon) && matches!(self.peek_at(3), Tok::Arrow)
                || matches!(self.peek_at(1), Tok::Star))
    }

    fn rational(&mut self) -> Result<Scalar, DslError> {
        let at = self.here();
        let num = self.ident()?;
        let text = if *self.peek() == Tok::Slash {
            self.next();
            let den = self.ident()?;
            format!("{num}/{den}")
        } else {
            num
        };
        scalar::parse_scalar(&text).map_err(|e| DslError::Syntax {
            line: at.0,
            col: at.1,
            msg: e.to_string(),
        })
    }

    fn path(&mut self) -> Result<Path, DslError> {
        let mut names = vec![self.ident()?];
        while *self.peek() == Tok::Dot {
            self.next();
            names.push(self.ident()?);
        }
        Ok(Path::Arrows(names))
    }

    fn term(&mut self, sign: Scalar) -> Result<(Scalar, Path), DslError> {
        let starts_with_rational = matches!(self.peek(), Tok::Word(w) if w.bytes().all(|b| b.is_ascii_digit()))
            && matches!(self.peek_at(1), Tok::Star | Tok::Slash);
        let coeff = if starts_with_rational {
            let k = self.rational()?;
            self.expect(Tok::Star)?;
            k
        } else {
            Scalar::one()
        };
        Ok((sign * coeff, self.path()?))
    }

    fn relation(&mut self) -> Result<Relation, DslError> {
        let first_sign = if *self.peek() == Tok::Minus {
            self.next();
            -Scalar::one()
        } else {
            Scalar::one()
        };
        let mut terms = vec![self.term(first_sign)?];
        loop {
            let sign = match self.peek() {
                Tok::Plus => Scalar::one(),
                Tok::Minus => -Scalar::one(),
                _ => break,
            };
            self.next();
            terms.push(self.term(sign)?);
        }
        Ok(Relation { terms })
    }

    fn file(&mut self) -> Result<Quiver, DslError> {
        self.keyword("quiver")?;
        self.expect(Tok::LBrace)?;

        self.keyword("vertices")?;
        self.expect(Tok::Colon)?;
        let mut vertices: Vec<String> = Vec::new();
        loop {
            let at = self.here();
            let v = self.ident()?;
            if vertices.contains(&v) {
                return self.invalid(at, QuiverError::DuplicateVertex(v));
            }
            vertices.push(v);
            if *self.peek() == Tok::Comma {
                self.next();
            } else {
                break;
            }
        }
        self.expect(Tok::Semi)?;

        self.keyword("arrows")?;
        self.expect(Tok::Colon)?;
        let mut arrows: Vec<Arrow> = Vec::new();
        while self.is_arrow_decl() {
            let at = self.here();
            let name = self.ident()?;
            if *self.peek() == Tok::Star {
                return self.invalid(at, QuiverError::ReservedName(format!("{name}*")));
            }
            if arrows.iter().any(|a| a.name == name) {
                return self.invalid(at, QuiverError::DuplicateArrow(name));
            }
            self.expect(Tok::Colon)?;
            let mut ends = [String::new(), String::new()];
            for (k, slot) in ends.iter_mut().enumerate() {
                if k == 1 {
                    self.expect(Tok::Arrow)?;
                }
                let vat = self.here();
                let v = self.ident()?;
                if !vertices.contains(&v) {
                    return self.invalid(
                        vat,
                        QuiverError::UnknownVertex {
                            arrow: name,
                            vertex: v,
                        },
                    );
                }
                *slot = v;
            }
            self.expect(Tok::Semi)?;
            let [source, target] = ends;
            arrows.push(Arrow {
                name,
                source,
                target,
            });
        }

        let mut relations = Vec::new();
        let mut positions = Vec::new();
        if matches!(self.peek(), Tok::Word(w) if w == "relations") {
            self.next();
            self.expect(Tok::Colon)?;
            while *self.peek() != Tok::RBrace && *self.peek() != Tok::Eof {
                positions.push(self.here());
                relations.push(self.relation()?);
                self.expect(Tok::Semi)?;
            }
        }
        self.expect(Tok::RBrace)?;
        if *self.peek() != Tok::Eof {
            return self.syntax(format!("trailing input: {}", self.peek().describe()));
        }

        let bare = Quiver::new(vertices, arrows, Vec::new()).map_err(|e| DslError::Invalid {
            line: 1,
            col: 1,
            error: e,
        })?;
        for (index, r) in relations.iter().enumerate() {
            bare.check_relation(index, r)
                .or_else(|e| self.invalid(positions[index], e))?;
        }
        Ok(bare
            .with_relations(relations)
            .expect("relations already checked"))
    }
}

/// Parses quiver DSL text. Lists keep source order.
pub fn parse_quiver(text: &str) -> Result<Quiver, DslError> {
    let toks = lex(text)?;
    Parser { toks, pos: 0 }.file()
}

/// Canonical text form; `parse_quiver(&print_quiver(q)) == q`.
pub fn print_quiver(q: &Quiver) -> String {
    let mut s = String::from("quiver {\n");
    let _ = writeln!(s, "  vertices: {};", q.vertices().join(", "));
    s.push_str("  arrows:\n");
    for a in q.arrows() {
        let _ = writeln!(s, "    {}: {} -> {};", a.name, a.source, a.target);
    }
    if !q.relations().is_empty() {
        s.push_str("  relations:\n");
        for r in q.relations() {
            let _ = writeln!(s, "    {};", relation_text(r));
        }
    }
    s.push_str("}\n");
    s
}

pub fn relation_text(r: &Relation) -> String {
    let mut s = String::new();
    for (i, (k, p)) in r.terms.iter().enumerate() {
        let neg = k.is_negative();
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        let abs = k.abs();
        if !abs.is_one() {
            let _ = write!(s, "{}*", scalar::to_display_string(&abs));
        }
        s.push_str(&p.arrow_names().join("."));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_ARROWS: &str =
        "quiver {\n  vertices: 1, 2, 3;\n  arrows:\n    alpha: 1 -> 2;\n    beta: 3 -> 2;\n}\n";

    #[test]
    fn parses_example_two_two() {
        let q = parse_quiver(TWO_ARROWS).unwrap();
        assert_eq!(q.vertices().len(), 3);
        assert_eq!(q.arrows().len(), 2);
        assert!(q.relations().is_empty());
        assert_eq!(print_quiver(&q), TWO_ARROWS);
    }

    #[test]
    fn single_vertex() {
        let q = parse_quiver("quiver { vertices: v; arrows: }").unwrap();
        assert_eq!(q.vertices(), ["v"]);
    }

    #[test]
    fn unknown_vertex_reports_position() {
        let err =
            parse_quiver("quiver {\n vertices: 1, 2, 3;\n arrows: a: 1 -> 4;\n}").unwrap_err();
        match err {
            DslError::Invalid { line, col, error } => {
                assert_eq!((line, col), (3, 18));
                assert!(error.to_string().contains("unknown vertex"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let err = parse_quiver("quiver {\n  vertices 1;\n}").unwrap_err();
        assert!(
            matches!(
                err,
                DslError::Syntax {
                    line: 2,
                    col: 12,
                    ..
                }
            ),
            "{err:?}"
        );
        assert!(parse_quiver("quiver { vertices: 1; arrows: } extra").is_err());
        assert!(parse_quiver("quiver { vertices: 1 $ ; arrows: }").is_err());
    }

    #[test]
    fn starred_and_duplicate_names_rejected() {
        let err = parse_quiver("quiver { vertices: 1, 2; arrows: a*: 1 -> 2; }").unwrap_err();
        assert!(matches!(
            err,
            DslError::Invalid {
                error: QuiverError::ReservedName(_),
                ..
            }
        ));
        let err =
            parse_quiver("quiver { vertices: 1, 2; arrows: a: 1 -> 2; a: 2 -> 1; }").unwrap_err();
        assert!(matches!(
            err,
            DslError::Invalid {
                error: QuiverError::DuplicateArrow(_),
                ..
            }
        ));
        let err = parse_quiver("quiver { vertices: 1, 1; arrows: }").unwrap_err();
        assert!(matches!(
            err,
            DslError::Invalid {
                error: QuiverError::DuplicateVertex(_),
                ..
            }
        ));
    }

    #[test]
    fn relations_with_coefficients() {
        let text =
            "quiver { vertices: 1, 2, 3, 4; arrows: a: 1 -> 2; b: 2 -> 4; c: 1 -> 3; d: 3 -> 4;\n\
                    relations: b.a - 3/2*d.c; -2*d.c + b.a; }";
        let q = parse_quiver(text).unwrap();
        assert_eq!(q.relations().len(), 2);
        assert_eq!(relation_text(&q.relations()[0]), "b.a - 3/2*d.c");
        assert_eq!(relation_text(&q.relations()[1]), "-2*d.c + b.a");
        assert_eq!(parse_quiver(&print_quiver(&q)).unwrap(), q);
    }

    #[test]
    fn relation_invariants_enforced_at_parse() {
        let base =
            "quiver { vertices: 1, 2, 3; arrows: a: 1 -> 2; b: 2 -> 3; c: 1 -> 3; relations: ";
        for (rel, want) in [
            ("b.a - c;", "length"),
            ("c;", "length"),
            ("a.b;", "not a path"),
            ("b.a + b.a;", "twice"),
            ("0*b.a;", "zero"),
            ("x.a;", "unknown arrow"),
        ] {
            let err = parse_quiver(&format!("{base}{rel} }}")).unwrap_err();
            assert!(err.to_string().contains(want), "{rel}: {err}");
        }
    }

    #[test]
    fn comments_are_skipped() {
        let q = parse_quiver("// header\nquiver { // x\n vertices: 1; // y\n arrows: }\n// tail")
            .unwrap();
        assert_eq!(q.vertices().len(), 1);
    }
}
