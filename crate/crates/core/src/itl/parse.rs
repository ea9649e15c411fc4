//! Recursive-descent parser for the formula syntax.
//!
//! Precedence from tightest: `!` and modal prefixes, postfix `*`, `;`, `&`, `|`.
//! Binary operators associate to the right.

use super::Formula;
use crate::interval::HsModality;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Modal(HsModality),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if c == '<' {
            let start = i;
            let close = chars[i..]
                .iter()
                .position(|&d| d == '>')
                .ok_or_else(|| Error::Parse { pos: start, msg: "unterminated modality".into() })?;
            let name: String = chars[i + 1..i + close].iter().collect();
            let m = name
                .parse::<HsModality>()
                .map_err(|_| Error::Parse { pos: start, msg: format!("unknown modality <{name}>") })?;
            out.push((Tok::Modal(m), start));
            i += close + 1;
        } else if "!&|;*(),".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character {c:?}") });
        }
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn error(&self, msg: String) -> Error {
        let found = match self.peek() {
            Tok::End => "end of input".to_string(),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Modal(m) => format!("<{m}>"),
            Tok::Sym(c) => format!("`{c}`"),
        };
        Error::Parse { pos: self.pos(), msg: format!("{msg}, found {found}") }
    }

    fn binary(&mut self, op: char, next: fn(&mut Self) -> Result<Formula>, build: fn(Formula, Formula) -> Formula) -> Result<Formula> {
        let lhs = next(self)?;
        if *self.peek() == Tok::Sym(op) {
            self.bump();
            let rhs = self.binary(op, next, build)?;
            return Ok(build(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        self.binary('|', Self::and, Formula::or)
    }

    fn and(&mut self) -> Result<Formula> {
        self.binary('&', Self::chop, Formula::and)
    }

    fn chop(&mut self) -> Result<Formula> {
        self.binary(';', Self::postfix, Formula::chop)
    }

    fn postfix(&mut self) -> Result<Formula> {
        let mut f = self.prefix()?;
        while *self.peek() == Tok::Sym('*') {
            self.bump();
            f = Formula::star(f);
        }
        Ok(f)
    }

    fn prefix(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Sym('!') => {
                self.bump();
                Ok(Formula::not(self.prefix()?))
            }
            Tok::Modal(m) => {
                self.bump();
                Ok(Formula::hs(m, self.prefix()?))
            }
            _ => self.primary(),
        }
    }

    fn args(&mut self, n: usize) -> Result<Vec<Formula>> {
        self.expect('(')?;
        let mut out = vec![self.or()?];
        while out.len() < n {
            self.expect(',')?;
            out.push(self.or()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Sym('(') => {
                self.bump();
                let f = self.or()?;
                self.expect(')')?;
                Ok(f)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(match name.as_str() {
                    "top" => Formula::Top,
                    "bot" => Formula::Bot,
                    "point" => Formula::Unit,
                    "omega" => Formula::omega(self.args(1)?.remove(0)),
                    "vd" | "vt" => {
                        let mut a = self.args(2)?;
                        let (g, f) = (a.pop().unwrap(), a.pop().unwrap());
                        if name == "vd" {
                            Formula::VenD(Box::new(f), Box::new(g))
                        } else {
                            Formula::VenT(Box::new(f), Box::new(g))
                        }
                    }
                    _ => Formula::Atom(name),
                })
            }
            _ => Err(self.error("expected a formula".into())),
        }
    }
}

/// Parses a formula; errors carry the character position.
pub fn parse_formula(src: &str) -> Result<Formula> {
    let mut lx = Lexer { toks: lex(src)?, at: 0 };
    let f = lx.or()?;
    if *lx.peek() != Tok::End {
        return Err(lx.error("trailing input".into()));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::itl::Formula::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn precedence() {
        assert_eq!(p("a | b & c"), Formula::or(Formula::atom("a"), Formula::and(Formula::atom("b"), Formula::atom("c"))));
        assert_eq!(p("a & b ; c"), Formula::and(Formula::atom("a"), Formula::chop(Formula::atom("b"), Formula::atom("c"))));
        assert_eq!(p("a ; b*"), Formula::chop(Formula::atom("a"), Formula::star(Formula::atom("b"))));
        assert_eq!(p("!a*"), Formula::star(Formula::not(Formula::atom("a"))));
        assert_eq!(p("<B> a ; b"), Formula::chop(Formula::hs(HsModality::B, Formula::atom("a")), Formula::atom("b")));
    }

    #[test]
    fn keywords_and_calls() {
        assert_eq!(p("point"), Unit);
        assert_eq!(p("(top | bot)"), Formula::or(Top, Bot));
        assert_eq!(p("<Ac>omega(a)"), Formula::hs(HsModality::AConverse, Formula::omega(Formula::atom("a"))));
        assert_eq!(p("vd(a, b)"), VenD(Box::new(Formula::atom("a")), Box::new(Formula::atom("b"))));
    }

    #[test]
    fn display_reparses() {
        for s in ["a ; !b* | <Ec>c & point", "vt(a;b, omega(top))", "((a))***"] {
            let f = p(s);
            assert_eq!(p(&f.to_string()), f, "{s}");
        }
    }

    #[test]
    fn errors_report_positions() {
        let pos = |s: &str| match parse_formula(s) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("{other:?}"),
        };
        assert_eq!(pos("a ; "), 4);
        assert_eq!(pos("a $ b"), 2);
        assert_eq!(pos("(a ; b"), 6);
        assert_eq!(pos("<X> a"), 0);
        assert_eq!(pos("a b"), 2);
    }
}
