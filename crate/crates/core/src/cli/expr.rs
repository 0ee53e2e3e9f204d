//! Parser for the textual algebra language.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ['^' ['-'] int]
//! atom   := int | 'z' | qp[j] | qpbar[j] | a[i,alpha] | abar[alpha,i] | '(' expr ')'
//! ```
//!
//! Division and negative powers are only defined on pure weight coefficients.
//! Everything the element printers emit is accepted, so printed output reparses.

use crate::error::{Error, Result};
use crate::qfield::{FieldCtx, PCoeff};
use crate::zmodes::{AlgElement, Chirality};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Ident(String),
    LBrack,
    RBrack,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(v) => format!("`{v}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::LBrack => "`[`".into(),
        Tok::RBrack => "`]`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::End => "end of input".into(),
    }
}

fn err(at: Pos, msg: impl Into<String>) -> Error {
    Error::Parse { line: at.line, col: at.col, msg: msg.into() }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let at = Pos { line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let v = s.parse::<u64>().map_err(|_| err(at, format!("integer `{s}` is too large")))?;
            Tok::Int(v)
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '[' => Tok::LBrack,
                ']' => Tok::RBrack,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                _ => return Err(err(at, format!("unexpected character `{c}`"))),
            }
        };
        col += i - start;
        out.push((tok, at));
    }
    out.push((Tok::End, Pos { line, col }));
    Ok(out)
}

#[derive(Clone, Debug)]
enum Node {
    Int(u64),
    Z,
    /// `qp[j]` (left) or `qpbar[j]` (right).
    Weight { right: bool, j: usize },
    /// Zero mode with dynamical index `dyn_idx` and quantum-group index `qg`.
    Mode { right: bool, dyn_idx: usize, qg: usize },
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>, Pos),
    Pow(Box<Node>, i64, Pos),
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let (t, at) = self.bump();
        if t == want {
            Ok(())
        } else {
            Err(err(at, format!("expected {}, found {}", describe(&want), describe(&t))))
        }
    }

    fn index(&mut self) -> Result<usize> {
        let (t, at) = self.bump();
        match t {
            Tok::Int(v) if v >= 1 && v as usize <= self.n => Ok(v as usize),
            Tok::Int(v) => Err(err(at, format!("index {v} out of range 1..={}", self.n))),
            other => Err(err(at, format!("expected an index, found {}", describe(&other)))),
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut acc = if *self.peek() == Tok::Minus {
            self.bump();
            Node::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Node::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = Node::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = Node::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    let at = self.bump().1;
                    acc = Node::Div(Box::new(acc), Box::new(self.factor()?), at);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let at = self.bump().1;
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let (t, tat) = self.bump();
        let Tok::Int(e) = t else {
            return Err(err(tat, format!("expected an exponent, found {}", describe(&t))));
        };
        let e = i64::try_from(e).map_err(|_| err(tat, "exponent too large"))?;
        Ok(Node::Pow(Box::new(base), if neg { -e } else { e }, at))
    }

    fn atom(&mut self) -> Result<Node> {
        let (t, at) = self.bump();
        match t {
            Tok::Int(v) => Ok(Node::Int(v)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "z" => Ok(Node::Z),
                "qp" | "qpbar" => {
                    self.expect(Tok::LBrack)?;
                    let j = self.index()?;
                    self.expect(Tok::RBrack)?;
                    Ok(Node::Weight { right: name == "qpbar", j })
                }
                "a" | "abar" => {
                    self.expect(Tok::LBrack)?;
                    let first = self.index()?;
                    self.expect(Tok::Comma)?;
                    let second = self.index()?;
                    self.expect(Tok::RBrack)?;
                    // a[i,alpha] but abar[alpha,i]
                    let right = name == "abar";
                    let (dyn_idx, qg) = if right { (second, first) } else { (first, second) };
                    Ok(Node::Mode { right, dyn_idx, qg })
                }
                _ => Err(err(at, format!("unknown symbol `{name}`"))),
            },
            other => Err(err(at, format!("expected an operand, found {}", describe(&other)))),
        }
    }
}

/// Which sectors a tree mentions, as (left, right).
fn sectors(node: &Node) -> (bool, bool) {
    match node {
        Node::Int(_) | Node::Z => (false, false),
        Node::Weight { right, .. } | Node::Mode { right, .. } => (!right, *right),
        Node::Neg(a) | Node::Pow(a, _, _) => sectors(a),
        Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b, _) => {
            let (l1, r1) = sectors(a);
            let (l2, r2) = sectors(b);
            (l1 || l2, r1 || r2)
        }
    }
}

/// The coefficient of a word-free element, or `None` if a zero mode survives.
fn pure_coeff(e: &AlgElement, nvars: usize) -> Option<PCoeff> {
    match e.terms().len() {
        0 => Some(PCoeff::zero(e.ctx(), nvars)),
        1 => e.terms().get(&Vec::new()).cloned(),
        _ => None,
    }
}

struct Lower {
    ctx: &'static FieldCtx,
    chir: Chirality,
    n: usize,
}

impl Lower {
    fn nvars(&self) -> usize {
        self.n - 1
    }

    fn inverse(&self, e: &AlgElement, at: Pos) -> Result<PCoeff> {
        let f = pure_coeff(e, self.nvars())
            .ok_or_else(|| err(at, "only weight coefficients can be inverted"))?;
        PCoeff::one(self.ctx, self.nvars()).div(&f).ok_or_else(|| err(at, "division by zero"))
    }

    fn eval(&self, node: &Node) -> Result<AlgElement> {
        let (ctx, chir) = (self.ctx, self.chir);
        Ok(match node {
            Node::Int(v) => {
                let v = i64::try_from(*v).map_err(|_| Error::Domain(format!("integer {v} too large")))?;
                AlgElement::scalar(ctx, chir, ctx.int(v))
            }
            Node::Z => AlgElement::scalar(ctx, chir, ctx.z_pow(1)),
            Node::Weight { j, .. } => AlgElement::from_coeff(PCoeff::qp(ctx, self.n, *j), chir),
            Node::Mode { dyn_idx, qg, .. } => AlgElement::gen(ctx, chir, *dyn_idx, *qg),
            Node::Neg(a) => self.eval(a)?.neg(),
            Node::Add(a, b) => self.eval(a)?.add(&self.eval(b)?)?,
            Node::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?)?,
            Node::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?)?,
            Node::Div(a, b, at) => {
                let inv = self.inverse(&self.eval(b)?, *at)?;
                self.eval(a)?.mul_coeff_right(&inv)
            }
            Node::Pow(a, e, at) => {
                let base = self.eval(a)?;
                let k = u32::try_from(e.unsigned_abs()).map_err(|_| err(*at, "exponent too large"))?;
                if *e >= 0 {
                    base.pow(k)?
                } else {
                    AlgElement::from_coeff(self.inverse(&base, *at)?.pow(k), chir)
                }
            }
        })
    }
}

/// Parses an element; the sector follows from the symbols used (left if none).
pub fn parse_expr(ctx: &'static FieldCtx, text: &str) -> Result<AlgElement> {
    parse_expr_in(ctx, text, Chirality::Left)
}

/// As [`parse_expr`], with `default` used for inputs naming no sector-specific symbol.
pub fn parse_expr_in(ctx: &'static FieldCtx, text: &str, default: Chirality) -> Result<AlgElement> {
    let n = ctx.n() as usize;
    let mut p = Parser { toks: tokenize(text)?, at: 0, n };
    let tree = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(err(p.pos(), format!("unexpected {}", describe(p.peek()))));
    }
    let chir = match sectors(&tree) {
        (true, true) => return Err(Error::ChiralityMix),
        (true, false) => Chirality::Left,
        (false, true) => Chirality::Right,
        (false, false) => default,
    };
    Lower { ctx, chir, n }.eval(&tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmodes::Gen;

    fn ctx() -> &'static FieldCtx {
        FieldCtx::get(2, 4)
    }

    #[test]
    fn two_letter_words() {
        let e = parse_expr(ctx(), "a[1,2]*a[1,1]").unwrap();
        assert_eq!(e.len(), 1);
        let w = e.terms().keys().next().unwrap();
        assert_eq!(w, &vec![Gen::new(1, 2), Gen::new(1, 1)]);
        // equal upper index: lower indices must not decrease
        assert!(!e.is_normal());
        let nf = e.normal_form();
        assert_eq!(nf.len(), 1);
        let (w, c) = nf.terms().iter().next().unwrap();
        assert_eq!(w, &vec![Gen::new(1, 1), Gen::new(1, 2)]);
        assert!(c.as_constant().is_some());
        let e = parse_expr(ctx(), "a[1,1]*a[1,2]").unwrap();
        assert!(e.is_normal());
        assert_eq!(e.normal_form(), e);
    }

    #[test]
    fn syntax_error_points_at_offender() {
        match parse_expr(ctx(), "a[1,1]*a[1,2] - ?") {
            Err(Error::Parse { line: 1, col: 17, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_expr(ctx(), "a[1,1]\n  * a[3,1]") {
            Err(Error::Parse { line: 2, col: 7, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_expr(ctx(), "a[1,1] a[1,2]"), Err(Error::Parse { col: 8, .. })));
        assert!(matches!(parse_expr(ctx(), ""), Err(Error::Parse { col: 1, .. })));
    }

    #[test]
    fn sectors_do_not_mix() {
        assert!(matches!(parse_expr(ctx(), "a[1,1]*abar[1,1]"), Err(Error::ChiralityMix)));
        assert!(matches!(parse_expr(ctx(), "qpbar[1]*a[1,1]"), Err(Error::ChiralityMix)));
        let e = parse_expr(ctx(), "abar[1,2]*qpbar[1]").unwrap();
        assert_eq!(e.chirality(), Chirality::Right);
        // abar[alpha,i] carries dynamical index i
        assert_eq!(e.terms().keys().next().unwrap(), &vec![Gen::new(2, 1)]);
    }

    #[test]
    fn coefficient_arithmetic() {
        let c = ctx();
        let e = parse_expr(c, "qp[1]^-2 * qp[1]^2 - 1").unwrap();
        assert!(e.is_zero());
        let e = parse_expr(c, "(1/2*z^3 - z) * 2").unwrap();
        let want = &c.z_pow(3) - &(&c.z_pow(1) * &c.int(2));
        assert_eq!(e, AlgElement::scalar(c, Chirality::Left, want));
        assert!(matches!(parse_expr(c, "1/a[1,1]"), Err(Error::Parse { col: 2, .. })));
        assert!(matches!(parse_expr(c, "1/(qp[1]-qp[1])"), Err(Error::Parse { .. })));
    }

    #[test]
    fn printed_elements_reparse() {
        let c = FieldCtx::get(3, 4);
        for text in [
            "qp[1]*a[1,2] - a[2,1]*a[1,1]",
            "a[2,1]*a[1,2]",
            "a[3,2]*a[1,1]*a[2,3]/(qp[1]*qp[2] - 1)",
            "abar[1,2]*abar[2,1]*qpbar[3]^2 + 3",
        ] {
            let e = parse_expr(c, text).unwrap();
            for e in [e.clone(), e.normal_form()] {
                let back = parse_expr_in(c, &e.to_string(), e.chirality()).unwrap();
                assert_eq!(back, e, "{text} printed as {e}");
            }
        }
    }
}
