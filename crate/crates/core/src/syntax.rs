//! Text syntax for field elements, forms, involution expressions and
//! preorderings. Every `Display` impl in the crate prints something this
//! parser reads back.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{BaseField, FieldElem};
use crate::involution::InvExpr;
use crate::qform::QForm;
use crate::wittring::Preordering;

/// Any top-level expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Form(QForm),
    Inv(InvExpr),
    Preord(Preordering),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    base: BaseField,
}

type Node = Expr;

const HEADS: &[&str] = &[
    "diag", "pf", "perp", "tens", "nx", "pow", "scale", "id", "u", "qo", "qs", "qpo", "qop", "ad", "preord",
];

impl<'a> Parser<'a> {
    fn new(base: BaseField, s: &'a str) -> Parser<'a> {
        Parser { src: s.as_bytes(), pos: 0, base }
    }

    fn err<T>(&self, at: usize, expected: &[&str]) -> Result<T> {
        Err(Error::Parse { offset: at, expected: expected.iter().map(|s| s.to_string()).collect() })
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            let s = (c as char).to_string();
            self.err(self.pos, &[s.as_str()])
        }
    }

    fn end(&mut self) -> Result<()> {
        if self.peek().is_none() {
            Ok(())
        } else {
            self.err(self.pos, &["end of input"])
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Some(s.parse().expect("digits"))
    }

    fn natural(&mut self) -> Result<usize> {
        let at = {
            self.ws();
            self.pos
        };
        match self.digits() {
            Some(n) => n.try_into().or_else(|_| self.err(at, &["natural number"])),
            None => self.err(at, &["natural number"]),
        }
    }

    /// term := digits ['s'] ['/' digits] | 's' ['/' digits]
    fn term(&mut self) -> Result<(BigRational, bool)> {
        let at = {
            self.ws();
            self.pos
        };
        let coeff = self.digits();
        let has_s = self.peek() == Some(b's');
        if has_s {
            if self.base.is_rational() {
                return self.err(self.pos, &["digit", "/", ",", ")"]);
            }
            self.pos += 1;
        }
        if coeff.is_none() && !has_s {
            return self.err(at, &["number", "s"]);
        }
        let mut value = BigRational::from_integer(coeff.unwrap_or_else(|| BigInt::from(1)));
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let dat = self.pos;
            let d = match self.digits() {
                Some(d) => d,
                None => return self.err(dat, &["denominator"]),
            };
            if d.is_zero() {
                return self.err(dat, &["nonzero denominator"]);
            }
            value /= BigRational::from_integer(d);
        }
        Ok((value, has_s))
    }

    /// elem := ['-'|'+'] term (('+'|'-') term)*
    fn elem(&mut self) -> Result<FieldElem> {
        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        let mut sign = 1i32;
        match self.peek() {
            Some(b'-') => {
                sign = -1;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let (v, s) = self.term()?;
            let v = if sign < 0 { -v } else { v };
            if s {
                b += v;
            } else {
                a += v;
            }
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(FieldElem::new(self.base, a, b))
    }

    fn elems(&mut self) -> Result<Vec<FieldElem>> {
        self.expect(b'(')?;
        let mut out = Vec::new();
        if self.peek() == Some(b')') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.elem()?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b')') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return self.err(self.pos, &[",", ")"]),
            }
        }
    }

    fn ident(&mut self) -> Result<(usize, String)> {
        self.ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii").to_string();
        if HEADS.contains(&s.as_str()) {
            Ok((start, s))
        } else {
            self.pos = start;
            self.err(start, HEADS)
        }
    }

    fn form(&mut self) -> Result<QForm> {
        self.ws();
        let at = self.pos;
        match self.node()? {
            Node::Form(f) => Ok(f),
            _ => self.err(at, &["quadratic form"]),
        }
    }

    fn quat(&mut self, kind: &str) -> Result<InvExpr> {
        self.expect(b'(')?;
        let a = self.elem()?;
        self.expect(b',')?;
        let b = self.elem()?;
        self.expect(b')')?;
        Ok(match kind {
            "qo" => InvExpr::QuatOO(a, b),
            "qs" => InvExpr::QuatSS(a, b),
            "qpo" => InvExpr::QuatPO(a, b),
            _ => InvExpr::QuatOP(a, b),
        })
    }

    fn node(&mut self) -> Result<Node> {
        let (at, head) = self.ident()?;
        let lift = |e: Result<QForm>| e.map(Node::Form);
        match head.as_str() {
            "diag" => {
                let es = self.elems()?;
                lift(QForm::new(self.base, es))
            }
            "pf" => {
                let es = self.elems()?;
                lift(QForm::pfister(self.base, &es))
            }
            "perp" => {
                self.expect(b'(')?;
                let f = self.form()?;
                self.expect(b',')?;
                let g = self.form()?;
                self.expect(b')')?;
                lift(f.perp(&g))
            }
            "scale" => {
                self.expect(b'(')?;
                let a = self.elem()?;
                self.expect(b',')?;
                let f = self.form()?;
                self.expect(b')')?;
                lift(f.scale(&a))
            }
            "tens" => {
                self.expect(b'(')?;
                self.ws();
                let lat = self.pos;
                let l = self.node()?;
                self.expect(b',')?;
                self.ws();
                let rat = self.pos;
                let r = self.node()?;
                self.expect(b')')?;
                match (l, r) {
                    (Node::Form(f), Node::Form(g)) => lift(f.tensor(&g)),
                    (Node::Inv(x), Node::Inv(y)) => InvExpr::tensor(x, y).map(Node::Inv),
                    (Node::Form(_), _) => self.err(rat, &["quadratic form"]),
                    (Node::Inv(_), _) => self.err(rat, &["involution expression"]),
                    (Node::Preord(_), _) => self.err(lat, &["quadratic form", "involution expression"]),
                }
            }
            "nx" => {
                self.expect(b'(')?;
                let m = self.natural()?;
                self.expect(b',')?;
                self.ws();
                let eat = self.pos;
                let e = self.node()?;
                self.expect(b')')?;
                match e {
                    Node::Form(f) => lift(f.multiple(m)),
                    Node::Inv(x) => InvExpr::multiple(m, x).map(Node::Inv),
                    Node::Preord(_) => self.err(eat, &["quadratic form", "involution expression"]),
                }
            }
            "pow" => {
                self.expect(b'(')?;
                self.ws();
                let eat = self.pos;
                let e = self.node()?;
                self.expect(b',')?;
                let m = self.natural()?;
                self.expect(b')')?;
                match e {
                    Node::Form(f) => lift(f.power(m)),
                    Node::Inv(x) => InvExpr::power(x, m).map(Node::Inv),
                    Node::Preord(_) => self.err(eat, &["quadratic form", "involution expression"]),
                }
            }
            "id" => Ok(Node::Inv(InvExpr::Id(self.base))),
            "u" => {
                self.expect(b'(')?;
                let c = self.elem()?;
                self.expect(b')')?;
                InvExpr::unit(c).map(Node::Inv)
            }
            "qo" | "qs" | "qpo" | "qop" => {
                let e = self.quat(&head)?;
                e.check()?;
                Ok(Node::Inv(e))
            }
            "ad" => {
                self.expect(b'(')?;
                let f = self.form()?;
                self.expect(b')')?;
                InvExpr::ad(f).map(Node::Inv)
            }
            "preord" => {
                let gens = self.elems()?;
                Preordering::new(self.base, gens).map(Node::Preord)
            }
            _ => self.err(at, HEADS),
        }
    }
}

pub fn parse_elem(base: BaseField, s: &str) -> Result<FieldElem> {
    let mut p = Parser::new(base, s);
    let e = p.elem()?;
    p.end()?;
    Ok(e)
}

pub fn parse_expr(base: BaseField, s: &str) -> Result<Expr> {
    let mut p = Parser::new(base, s);
    let n = p.node()?;
    p.end()?;
    Ok(n)
}

pub fn parse_form(base: BaseField, s: &str) -> Result<QForm> {
    match parse_expr(base, s)? {
        Expr::Form(f) => Ok(f),
        _ => Err(Error::Parse { offset: 0, expected: vec!["quadratic form".into()] }),
    }
}

pub fn parse_inv(base: BaseField, s: &str) -> Result<InvExpr> {
    match parse_expr(base, s)? {
        Expr::Inv(e) => Ok(e),
        _ => Err(Error::Parse { offset: 0, expected: vec!["involution expression".into()] }),
    }
}

pub fn parse_preordering(base: BaseField, s: &str) -> Result<Preordering> {
    match parse_expr(base, s)? {
        Expr::Preord(t) => Ok(t),
        _ => Err(Error::Parse { offset: 0, expected: vec!["preord(...)".into()] }),
    }
}

/// `Q` or `Q(sqrt d)`, whitespace-insensitive.
pub fn parse_base_field(s: &str) -> Result<BaseField> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "Q" {
        return Ok(BaseField::Rationals);
    }
    let bad = || Error::Parse { offset: 0, expected: vec!["Q".into(), "Q(sqrt d)".into()] };
    let inner = t.strip_prefix("Q(sqrt").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let d: i64 = inner.parse().map_err(|_| bad())?;
    BaseField::quadratic(d)
}

/// Comma-separated generators as accepted by `--preord`.
pub fn parse_generators(base: BaseField, s: &str) -> Result<Vec<FieldElem>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut p = Parser::new(base, s);
    let mut out = vec![p.elem()?];
    while p.peek() == Some(b',') {
        p.pos += 1;
        out.push(p.elem()?);
    }
    p.end()?;
    Ok(out)
}
