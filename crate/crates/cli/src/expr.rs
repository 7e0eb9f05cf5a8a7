//! Arithmetic expressions over bound hypercomplex numbers.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := "-" unary | power
//! power   := primary ("^" unary)?
//! primary := number | name | name "(" expr ("," expr)* ")" | "(" expr ")"
//! ```

use std::collections::HashMap;

use ncomplex::functions;
use ncomplex::NComplex;

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(f64),
    Name(String),
    Op(char),
}

fn tokenize(src: &str) -> CliResult<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && matches!(chars[i], 'e' | 'E') {
                let mut j = i + 1;
                if j < chars.len() && matches!(chars[j], '+' | '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let v = text.parse().map_err(|_| CliError::usage(format!("bad number `{text}`")))?;
            out.push(Token::Num(v));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Name(chars[start..i].iter().collect()));
        } else if "+-*/^(),".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(CliError::usage(format!("unexpected character `{c}` in expression")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(String),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> CliResult<()> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(CliError::usage(format!("expected `{op}` in expression")))
        }
    }

    fn expr(&mut self) -> CliResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Token::Op(c @ ('+' | '-'))) => *c,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> CliResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Token::Op(c @ ('*' | '/'))) => *c,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> CliResult<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.primary()?;
        if self.eat('^') {
            return Ok(Expr::Bin('^', Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> CliResult<Expr> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(v)) => {
                self.pos += 1;
                Ok(Expr::Num(v))
            }
            Some(Token::Name(name)) => {
                self.pos += 1;
                if !self.eat('(') {
                    return Ok(Expr::Var(name));
                }
                let mut args = vec![self.expr()?];
                while self.eat(',') {
                    args.push(self.expr()?);
                }
                self.expect(')')?;
                Ok(Expr::Call(name, args))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Token::Op(c)) => Err(CliError::usage(format!("unexpected `{c}` in expression"))),
            None => Err(CliError::usage("expression ends too early")),
        }
    }
}

pub fn parse(src: &str) -> CliResult<Expr> {
    let mut p = Parser { tokens: tokenize(src)?, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(CliError::usage("trailing input after expression"));
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Val {
    Scalar(f64),
    Number(NComplex),
}

fn lift(a: Val, b: Val) -> CliResult<(NComplex, NComplex)> {
    Ok(match (a, b) {
        (Val::Number(x), Val::Number(y)) => (x, y),
        (Val::Number(x), Val::Scalar(s)) => {
            let y = NComplex::scalar(x.algebra(), s);
            (x, y)
        }
        (Val::Scalar(s), Val::Number(y)) => (NComplex::scalar(y.algebra(), s), y),
        (Val::Scalar(_), Val::Scalar(_)) => unreachable!("scalar pairs are handled directly"),
    })
}

fn scalar_fn(name: &str, x: f64) -> CliResult<f64> {
    let domain = |what: &str| CliError::failure(format!("domain error: {what} of scalar {x}"));
    Ok(match name {
        "exp" => x.exp(),
        "log" if x > 0.0 => x.ln(),
        "log" => return Err(domain("log")),
        "sin" => x.sin(),
        "cos" => x.cos(),
        "sinh" => x.sinh(),
        "cosh" => x.cosh(),
        "inv" if x != 0.0 => 1.0 / x,
        "inv" => return Err(domain("inverse")),
        _ => unreachable!("checked by caller"),
    })
}

fn power(base: Val, exponent: Val) -> CliResult<Val> {
    let m = match exponent {
        Val::Scalar(m) => m,
        Val::Number(_) => return Err(CliError::usage("exponent must be a real scalar")),
    };
    match base {
        Val::Scalar(b) => Ok(Val::Scalar(b.powf(m))),
        Val::Number(u) if m.fract() == 0.0 && m.abs() <= i32::MAX as f64 => Ok(Val::Number(functions::pow_int(&u, m as i64)?)),
        Val::Number(u) => Ok(Val::Number(functions::pow_real(&u, m)?)),
    }
}

pub fn eval(e: &Expr, env: &HashMap<String, NComplex>) -> CliResult<Val> {
    match e {
        Expr::Num(v) => Ok(Val::Scalar(*v)),
        Expr::Var(name) => env
            .get(name)
            .cloned()
            .map(Val::Number)
            .ok_or_else(|| CliError::usage(format!("unbound name `{name}`"))),
        Expr::Neg(a) => Ok(match eval(a, env)? {
            Val::Scalar(s) => Val::Scalar(-s),
            Val::Number(u) => Val::Number(u.neg()),
        }),
        Expr::Bin(op, a, b) => {
            let (a, b) = (eval(a, env)?, eval(b, env)?);
            if *op == '^' {
                return power(a, b);
            }
            if let (Val::Scalar(x), Val::Scalar(y)) = (&a, &b) {
                return Ok(Val::Scalar(match op {
                    '+' => x + y,
                    '-' => x - y,
                    '*' => x * y,
                    _ if *y == 0.0 => return Err(CliError::failure("division by zero")),
                    _ => x / y,
                }));
            }
            let (x, y) = lift(a, b)?;
            Ok(Val::Number(match op {
                '+' => x.add(&y)?,
                '-' => x.sub(&y)?,
                '*' => x.mul(&y)?,
                _ => x.divide(&y)?,
            }))
        }
        Expr::Call(name, args) => {
            let vals = args.iter().map(|a| eval(a, env)).collect::<CliResult<Vec<_>>>()?;
            let unary = ["exp", "log", "sin", "cos", "sinh", "cosh", "inv"];
            if name == "pow" {
                let [b, m]: [Val; 2] = vals.try_into().map_err(|_| CliError::usage("pow takes two arguments"))?;
                return power(b, m);
            }
            if !unary.contains(&name.as_str()) {
                return Err(CliError::usage(format!("unknown function `{name}`")));
            }
            let [v]: [Val; 1] = vals.try_into().map_err(|_| CliError::usage(format!("{name} takes one argument")))?;
            let u = match v {
                Val::Scalar(x) => return Ok(Val::Scalar(scalar_fn(name, x)?)),
                Val::Number(u) => u,
            };
            Ok(Val::Number(match name.as_str() {
                "exp" => functions::exp(&u)?,
                "log" => functions::log(&u)?,
                "sin" => functions::sin(&u)?,
                "cos" => functions::cos(&u)?,
                "sinh" => functions::sinh(&u)?,
                "cosh" => functions::cosh(&u)?,
                _ => u.inverse()?,
            }))
        }
    }
}

/// Parses and evaluates; a scalar result takes the algebra of the bindings.
pub fn evaluate(src: &str, env: &HashMap<String, NComplex>) -> CliResult<NComplex> {
    let e = parse(src)?;
    match eval(&e, env)? {
        Val::Number(u) => Ok(u),
        Val::Scalar(s) => {
            let alg = env
                .values()
                .next()
                .map(NComplex::algebra)
                .ok_or_else(|| CliError::usage("bind at least one number to fix the algebra"))?;
            Ok(NComplex::scalar(alg, s))
        }
    }
}
