//! Expressions over an algebra and its calculus.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' ['-'] int)?
//! atom   := rational | 'x' | 'y' | 'dx' | 'dy' | '(' expr ')'
//! ```
//!
//! Negative exponents are accepted on a bare `x` over the Laurent base only.
//! A product of one-forms is their wedge, so the printed forms
//! `dx*(a) + dy*(b)` and `dx*dy*(c)` read back as the same values.

use std::fmt;
use std::sync::OnceLock;

use oresmooth::{Algebra, BaseKind, Calculus, OneForm, OreElement, Scalar, TwoForm};

use crate::error::CliError;

/// An algebra plus its calculus, built on first use since non-admissible
/// algebras still support plain arithmetic.
pub struct Context {
    algebra: Algebra,
    calculus: OnceLock<Result<Calculus, oresmooth::Error>>,
}

impl Context {
    pub fn new(algebra: Algebra) -> Self {
        Context {
            algebra,
            calculus: OnceLock::new(),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn calculus(&self) -> Result<&Calculus, CliError> {
        self.calculus
            .get_or_init(|| Calculus::new(&self.algebra))
            .as_ref()
            .map_err(|e| CliError::Math(e.clone()))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub enum Value {
    Elem(OreElement),
    Form1(OneForm),
    Form2(TwoForm),
}

impl Value {
    pub fn degree(&self) -> u8 {
        match self {
            Value::Elem(_) => 0,
            Value::Form1(_) => 1,
            Value::Form2(_) => 2,
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Value::Elem(e) => e.is_zero(),
            Value::Form1(w) => w.is_zero(),
            Value::Form2(w) => w.is_zero(),
        }
    }

    fn zero_like(ctx: &Context, degree: u8) -> Result<Value, CliError> {
        let alg = ctx.algebra();
        Ok(match degree {
            0 => Value::Elem(alg.zero()),
            1 => Value::Form1(OneForm::zero(alg)),
            _ => Value::Form2(TwoForm {
                coeff: alg.zero(),
                volume: ctx.calculus()?.volume(),
            }),
        })
    }

    fn add(ctx: &Context, a: Value, b: Value) -> Result<Value, CliError> {
        // A literal 0 adapts to the degree of the other summand.
        let (a, b) = match (a.degree(), b.degree()) {
            (da, db) if da == db => (a, b),
            (0, db) if a.is_zero() => (Value::zero_like(ctx, db)?, b),
            (da, 0) if b.is_zero() => (a, Value::zero_like(ctx, da)?),
            (da, db) => {
                return Err(CliError::Usage(format!(
                    "cannot add a {da}-form and a {db}-form"
                )))
            }
        };
        Ok(match (a, b) {
            (Value::Elem(a), Value::Elem(b)) => Value::Elem(a.try_add(&b)?),
            (Value::Form1(a), Value::Form1(b)) => Value::Form1(a.try_add(&b)?),
            (Value::Form2(a), Value::Form2(b)) => Value::Form2(a.try_add(&b)?),
            _ => unreachable!(),
        })
    }

    fn neg(self) -> Value {
        let m = -Scalar::one();
        match self {
            Value::Elem(e) => Value::Elem(e.scalar_mul(&m)),
            Value::Form1(w) => Value::Form1(w.scalar_mul(&m)),
            Value::Form2(w) => Value::Form2(TwoForm {
                coeff: w.coeff.scalar_mul(&m),
                volume: w.volume,
            }),
        }
    }

    fn mul(ctx: &Context, a: Value, b: Value) -> Result<Value, CliError> {
        Ok(match (a, b) {
            (Value::Elem(a), Value::Elem(b)) => Value::Elem(a.try_mul(&b)?),
            (Value::Elem(a), Value::Form1(w)) => {
                Value::Form1(ctx.calculus()?.left_mul_oneform(&a, &w)?)
            }
            (Value::Elem(a), Value::Form2(w)) => {
                Value::Form2(ctx.calculus()?.left_mul_twoform(&a, &w)?)
            }
            (Value::Form1(w), Value::Elem(a)) => Value::Form1(w.right_mul(&a)?),
            (Value::Form2(w), Value::Elem(a)) => Value::Form2(w.right_mul(&a)?),
            (Value::Form1(u), Value::Form1(v)) => Value::Form2(ctx.calculus()?.wedge(&u, &v)?),
            (a, b) => {
                return Err(CliError::Usage(format!(
                    "a product of a {}-form and a {}-form has degree above 2",
                    a.degree(),
                    b.degree()
                )))
            }
        })
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Elem(e) => e.fmt(f),
            Value::Form1(w) => w.fmt(f),
            Value::Form2(w) => w.fmt(f),
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(String),
    X,
    Y,
    Dx,
    Dy,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::X => f.write_str("`x`"),
            Tok::Y => f.write_str("`y`"),
            Tok::Dx => f.write_str("`dx`"),
            Tok::Dy => f.write_str("`dy`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, CliError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            col += i - start;
            out.push((Tok::Int(digits), pos));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            let tok = match word.as_str() {
                "x" => Tok::X,
                "y" => Tok::Y,
                "dx" => Tok::Dx,
                "dy" => Tok::Dy,
                _ => {
                    return Err(CliError::Parse {
                        line: pos.line,
                        col: pos.col,
                        msg: format!("unknown symbol `{word}`"),
                    })
                }
            };
            out.push((tok, pos));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(CliError::Parse {
                    line,
                    col,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        };
        out.push((tok, pos));
        i += 1;
        col += 1;
    }
    out.push((Tok::End, Pos { line, col }));
    Ok(out)
}

struct Parser<'a> {
    ctx: &'a Context,
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl<'a> Parser<'a> {
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

    fn error_at(&self, pos: Pos, msg: impl Into<String>) -> CliError {
        CliError::Parse {
            line: pos.line,
            col: pos.col,
            msg: msg.into(),
        }
    }

    fn unexpected(&self, wanted: &str) -> CliError {
        self.error_at(self.pos(), format!("expected {wanted}, found {}", self.peek()))
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<(), CliError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    /// Attaches the position of `pos` to algebra errors raised while
    /// evaluating the construct starting there.
    fn at<T>(&self, pos: Pos, r: Result<T, CliError>) -> Result<T, CliError> {
        r.map_err(|e| match e {
            CliError::Parse { .. } => e,
            other => self.error_at(pos, other.to_string()),
        })
    }

    fn expr(&mut self) -> Result<Value, CliError> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            let pos = self.pos();
            let sub = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
            let mut rhs = self.term()?;
            if sub {
                rhs = rhs.neg();
            }
            acc = self.at(pos, Value::add(self.ctx, acc, rhs))?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value, CliError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            let pos = self.pos();
            self.bump();
            let rhs = self.factor()?;
            acc = self.at(pos, Value::mul(self.ctx, acc, rhs))?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value, CliError> {
        let start = self.pos();
        let bare_x = *self.peek() == Tok::X;
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let caret = self.pos();
        self.bump();
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let exp_pos = self.pos();
        let Tok::Int(n) = self.bump() else {
            return Err(self.error_at(exp_pos, "expected an integer exponent"));
        };
        let n: u32 = n
            .parse()
            .map_err(|_| self.error_at(exp_pos, "exponent is too large"))?;
        let Value::Elem(e) = base else {
            return Err(self.error_at(caret, "only algebra elements can be raised to a power"));
        };
        if negative {
            if !bare_x {
                return Err(self.error_at(caret, "negative exponents apply to `x` only"));
            }
            if self.ctx.algebra().base_kind() != BaseKind::Laurent {
                return Err(self.error_at(
                    caret,
                    "negative powers of x need the Laurent base (--base laurent)",
                ));
            }
            let m = self.ctx.algebra().monomial(Scalar::one(), -(n as i64), 0);
            return self.at(start, m.map(Value::Elem).map_err(CliError::from));
        }
        Ok(Value::Elem(e.pow(n)))
    }

    fn atom(&mut self) -> Result<Value, CliError> {
        let alg = self.ctx.algebra();
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                let mut c: Scalar = n.parse()?;
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let den_pos = self.pos();
                    let Tok::Int(d) = self.bump() else {
                        return Err(self.error_at(den_pos, "expected a denominator"));
                    };
                    let d: Scalar = d.parse()?;
                    c = c
                        .checked_div(&d)
                        .map_err(|_| self.error_at(den_pos, "zero denominator"))?;
                }
                Ok(Value::Elem(alg.constant(c)))
            }
            Tok::X => Ok(Value::Elem(alg.x())),
            Tok::Y => Ok(Value::Elem(alg.y())),
            Tok::Dx => Ok(Value::Form1(OneForm::dx(alg))),
            Tok::Dy => Ok(Value::Form1(OneForm::dy(alg))),
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(v)
            }
            other => Err(self.error_at(
                pos,
                format!("expected a number, x, y, dx, dy or `(`, found {other}"),
            )),
        }
    }
}

/// Parses and evaluates `src` in `ctx`.
pub fn parse_value(ctx: &Context, src: &str) -> Result<Value, CliError> {
    let mut p = Parser {
        ctx,
        toks: lex(src)?,
        at: 0,
    };
    if *p.peek() == Tok::End {
        return Err(p.error_at(p.pos(), "empty expression"));
    }
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(v)
}

/// Parses an algebra element; forms are rejected.
pub fn parse_element(ctx: &Context, src: &str) -> Result<OreElement, CliError> {
    match parse_value(ctx, src)? {
        Value::Elem(e) => Ok(e),
        other => Err(CliError::Usage(format!(
            "expected an algebra element, got the {}-form {other}",
            other.degree()
        ))),
    }
}

/// Parses a one-form; a literal `0` is accepted as the zero form.
pub fn parse_one_form(ctx: &Context, src: &str) -> Result<OneForm, CliError> {
    match parse_value(ctx, src)? {
        Value::Form1(w) => Ok(w),
        Value::Elem(e) if e.is_zero() => Ok(OneForm::zero(ctx.algebra())),
        other => Err(CliError::Usage(format!(
            "expected a one-form such as dx*(a) + dy*(b), got {other}"
        ))),
    }
}
