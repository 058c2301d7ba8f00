use super::Ltl;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Next,
    Until,
    Eventually,
    Always,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '!' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '-' => {
                if chars.get(i + 1).map(|x| x.1) == Some('>') {
                    i += 1;
                    Tok::Implies
                } else {
                    return Err(Error::Syntax { pos, msg: "expected '->'".into() });
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().map(|x| x.1).collect();
                i = j - 1;
                match word.as_str() {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "X" => Tok::Next,
                    "F" => Tok::Eventually,
                    "G" => Tok::Always,
                    "U" => Tok::Until,
                    _ => Tok::Ident(word),
                }
            }
            other => return Err(Error::Syntax { pos, msg: format!("unknown operator {other:?}") }),
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        let msg = if self.at >= self.toks.len() { format!("{msg} at end of input") } else { msg.to_string() };
        Err(Error::Syntax { pos: self.pos(), msg })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn implies(&mut self) -> Result<Ltl> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implies()?;
            return Ok(Ltl::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Ltl> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            lhs = Ltl::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Ltl> {
        let mut lhs = self.until()?;
        while self.eat(&Tok::And) {
            lhs = Ltl::and(lhs, self.until()?);
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<Ltl> {
        let lhs = self.unary()?;
        if self.eat(&Tok::Until) {
            let rhs = self.until()?;
            return Ok(Ltl::until(lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ltl> {
        let Some(t) = self.peek().cloned() else {
            return self.err("expected formula");
        };
        self.at += 1;
        Ok(match t {
            Tok::Not => Ltl::not(self.unary()?),
            Tok::Next => Ltl::next(self.unary()?),
            Tok::Eventually => Ltl::eventually(self.unary()?),
            Tok::Always => Ltl::always(self.unary()?),
            Tok::True => Ltl::True,
            Tok::False => Ltl::False,
            Tok::Ident(p) => Ltl::Atom(p),
            Tok::LParen => {
                let f = self.implies()?;
                if !self.eat(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                f
            }
            _ => {
                self.at -= 1;
                return self.err("expected formula");
            }
        })
    }
}

pub fn parse_formula(text: &str) -> Result<Ltl> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let f = p.implies()?;
    if p.at != p.toks.len() {
        return p.err("unexpected token");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Ltl {
        Ltl::atom(s)
    }

    #[test]
    fn basic_productions() {
        assert_eq!(parse_formula("p U q").unwrap(), Ltl::until(a("p"), a("q")));
        assert_eq!(
            parse_formula("G (load1 -> X (!load1 U exit1))").unwrap(),
            Ltl::always(Ltl::implies(a("load1"), Ltl::next(Ltl::until(Ltl::not(a("load1")), a("exit1")))))
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_formula("a | b & c -> d").unwrap(), Ltl::implies(Ltl::or(a("a"), Ltl::and(a("b"), a("c"))), a("d")));
        assert_eq!(parse_formula("!a U b & c").unwrap(), Ltl::and(Ltl::until(Ltl::not(a("a")), a("b")), a("c")));
        assert_eq!(parse_formula("a U b U c").unwrap(), Ltl::until(a("a"), Ltl::until(a("b"), a("c"))));
        assert_eq!(parse_formula("Xp").unwrap(), a("Xp"));
        assert_eq!(parse_formula("X p").unwrap(), Ltl::next(a("p")));
    }

    #[test]
    fn errors() {
        match parse_formula("p U") {
            Err(Error::Syntax { pos, msg }) => {
                assert_eq!(pos, 3);
                assert!(msg.contains("end of input"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_formula("p # q"), Err(Error::Syntax { pos: 2, .. })));
        assert!(parse_formula("(p").is_err());
        assert!(parse_formula("p q").is_err());
        assert!(parse_formula("").is_err());
    }
}
