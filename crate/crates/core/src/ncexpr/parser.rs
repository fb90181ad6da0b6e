//! Recursive-descent parser.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | atom
//! atom   := number | number 'i' | 'i' | 'x' digits
//!         | 'inv' '(' expr ')' | 'exp' '(' expr ')'
//!         | '(' expr ')' | '[' row (',' row)* ']'
//! row    := '[' expr (',' expr)* ']'
//! ```
//!
//! `a - b` becomes `Sum(a, Neg(b))`; chains of `+`/`-` and of `*` are
//! flattened into one n-ary node.

use num_complex::Complex64;

use super::ast::{NcExpr, Node};
use crate::error::{NcError, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Imag(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

fn syntax(pos: Pos, message: impl Into<String>) -> NcError {
    NcError::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let ch = chars[i];
        let pos = Pos { line, column: col };
        if ch == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if ch.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        let tok = match ch {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            c if c.is_ascii_digit() || c == '.' => {
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                // exponent only when followed by a digit, optionally signed
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        i = j;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let lexeme: String = chars[start..i].iter().collect();
                let value: f64 = lexeme
                    .parse()
                    .map_err(|_| syntax(pos, format!("malformed number `{lexeme}`")))?;
                let imag = i < chars.len()
                    && chars[i] == 'i'
                    && !chars.get(i + 1).is_some_and(|c| c.is_alphanumeric());
                if imag {
                    i += 1;
                }
                col += i - start;
                out.push((if imag { Tok::Imag(value) } else { Tok::Num(value) }, pos));
                continue;
            }
            c if c.is_alphabetic() => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                col += i - start;
                out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
                continue;
            }
            other => return Err(syntax(pos, format!("unexpected character `{other}`"))),
        };
        out.push((tok, pos));
        i += 1;
        col += 1;
    }
    out.push((Tok::End, Pos { line, column: col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected {what}, found {}", describe(self.peek()))))
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    terms.push(Node::neg(self.term()?));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Node::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Node> {
        let mut factors = vec![self.unary()?];
        while *self.peek() == Tok::Star {
            self.bump();
            factors.push(self.unary()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Node::Prod(factors)
        })
    }

    fn unary(&mut self) -> Result<Node> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Node::neg(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Node> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(v) => Ok(Node::Const(Complex64::new(v, 0.0))),
            Tok::Imag(v) => Ok(Node::Const(Complex64::new(0.0, v))),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::LBracket => self.matrix(),
            Tok::Ident(name) => self.ident(&name, pos),
            other => Err(syntax(pos, format!("expected an operand, found {}", describe(&other)))),
        }
    }

    fn ident(&mut self, name: &str, pos: Pos) -> Result<Node> {
        match name {
            "i" => Ok(Node::Const(Complex64::new(0.0, 1.0))),
            "inv" | "exp" => {
                self.expect(Tok::LParen, &format!("`(` after `{name}`"))?;
                let arg = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(if name == "inv" { Node::inv(arg) } else { Node::exp(arg) })
            }
            _ => {
                let index = name
                    .strip_prefix('x')
                    .filter(|s| !s.is_empty() && s.chars().all(|c| c.is_ascii_digit()))
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| syntax(pos, format!("unknown identifier `{name}`")))?;
                Ok(Node::Var(index))
            }
        }
    }

    fn matrix(&mut self) -> Result<Node> {
        let mut rows = Vec::new();
        loop {
            self.expect(Tok::LBracket, "`[` starting a matrix row")?;
            let mut row = vec![self.expr()?];
            while *self.peek() == Tok::Comma {
                self.bump();
                row.push(self.expr()?);
            }
            self.expect(Tok::RBracket, "`]` closing a matrix row")?;
            rows.push(row);
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        self.expect(Tok::RBracket, "`]` closing the matrix")?;
        Ok(Node::Mat(rows))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(v) => format!("number `{v}`"),
        Tok::Imag(v) => format!("number `{v}i`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::LBracket => "`[`".into(),
        Tok::RBracket => "`]`".into(),
        Tok::Comma => "`,`".into(),
        Tok::End => "end of input".into(),
    }
}

pub(crate) fn parse_node(text: &str) -> Result<Node> {
    if text.trim().is_empty() {
        return Err(syntax(Pos { line: 1, column: 1 }, "empty expression"));
    }
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let node = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.pos(), format!("unexpected {}", describe(p.peek()))));
    }
    Ok(node)
}

pub fn parse(text: &str, d: usize) -> Result<NcExpr> {
    NcExpr::new(parse_node(text)?, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Node {
        Node::Const(Complex64::new(re, im))
    }

    #[test]
    fn sum_of_constant_and_product() {
        let e = parse("1 + x1*x2", 2).unwrap();
        assert_eq!(
            *e.root(),
            Node::Sum(vec![c(1.0, 0.0), Node::Prod(vec![Node::Var(1), Node::Var(2)])])
        );
    }

    #[test]
    fn inverse_of_difference() {
        let e = parse("inv(1 - x1*x2)", 2).unwrap();
        assert_eq!(
            *e.root(),
            Node::inv(Node::Sum(vec![
                c(1.0, 0.0),
                Node::neg(Node::Prod(vec![Node::Var(1), Node::Var(2)]))
            ]))
        );
    }

    #[test]
    fn matricial_literal() {
        let e = parse("[[x1, 1],[0, x2]]", 2).unwrap();
        assert_eq!(
            *e.root(),
            Node::Mat(vec![vec![Node::Var(1), c(1.0, 0.0)], vec![c(0.0, 0.0), Node::Var(2)]])
        );
    }

    #[test]
    fn complex_literals() {
        assert_eq!(*parse("3.5i", 1).unwrap().root(), c(0.0, 3.5));
        assert_eq!(
            *parse("1+2i", 1).unwrap().root(),
            Node::Sum(vec![c(1.0, 0.0), c(0.0, 2.0)])
        );
        assert_eq!(*parse("i", 1).unwrap().root(), c(0.0, 1.0));
        assert_eq!(*parse("2.5e-3", 1).unwrap().root(), c(2.5e-3, 0.0));
    }

    #[test]
    fn unary_minus_binds_tighter_than_product() {
        let e = parse("-x1*x2", 2).unwrap();
        assert_eq!(
            *e.root(),
            Node::Prod(vec![Node::neg(Node::Var(1)), Node::Var(2)])
        );
    }

    #[test]
    fn products_are_not_reordered() {
        let e = parse("x2*x1*x2", 2).unwrap();
        assert_eq!(
            *e.root(),
            Node::Prod(vec![Node::Var(2), Node::Var(1), Node::Var(2)])
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse("1 +\n  x1 * )", 1) {
            Err(NcError::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 8)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("x1^2", 1), Err(NcError::Syntax { column: 3, .. })));
        assert!(matches!(parse("", 1), Err(NcError::Syntax { .. })));
        assert!(matches!(parse("inv x1", 1), Err(NcError::Syntax { .. })));
        assert!(matches!(parse("foo(x1)", 1), Err(NcError::Syntax { .. })));
    }

    #[test]
    fn variable_out_of_range() {
        assert_eq!(
            parse("x1 + x3", 2),
            Err(NcError::VarOutOfRange { index: 3, d: 2 })
        );
        assert!(matches!(parse("x0", 2), Err(NcError::VarOutOfRange { index: 0, .. })));
    }

    #[test]
    fn ragged_grid_parses_but_is_kept_ragged() {
        let e = parse("[[x1, 1],[x1]]", 1).unwrap();
        match e.root() {
            Node::Mat(g) => assert_eq!((g[0].len(), g[1].len()), (2, 1)),
            other => panic!("{other:?}"),
        }
    }
}
