//! Propositional formulas, their evaluation, and bounded validity checking.
//!
//! Surface syntax: variables `[a-z][a-zA-Z0-9_]*`, constants `bot` and
//! `top`, and the operators `!`, `&`, `|`, `->` in decreasing precedence.
//! `&` and `|` associate to the left, `->` to the right.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use super::HeytingAlgebra;
use crate::error::{Error, Result};
use crate::lattice::Elem;

pub const DEFAULT_VAR_BUDGET: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(String),
    Bottom,
    Top,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Self {
        Formula::Var(name.to_string())
    }

    pub fn and(self, rhs: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: Formula) -> Self {
        Formula::Implies(Box::new(self), Box::new(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    /// Free variables in sorted order.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::Bottom | Formula::Top => {}
            Formula::Not(f) => f.collect_vars(out),
            Formula::And(f, g) | Formula::Or(f, g) | Formula::Implies(f, g) => {
                f.collect_vars(out);
                g.collect_vars(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(_) => 4,
            _ => 5,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, child: &Formula, parens: bool| {
            if parens {
                write!(f, "({child})")
            } else {
                write!(f, "{child}")
            }
        };
        let prec = self.precedence();
        match self {
            Formula::Var(v) => write!(f, "{v}"),
            Formula::Bottom => write!(f, "bot"),
            Formula::Top => write!(f, "top"),
            Formula::Not(g) => {
                write!(f, "!")?;
                wrap(f, g, g.precedence() < prec)
            }
            Formula::And(l, r) | Formula::Or(l, r) => {
                let op = if matches!(self, Formula::And(..)) { "&" } else { "|" };
                wrap(f, l, l.precedence() < prec)?;
                write!(f, " {op} ")?;
                wrap(f, r, r.precedence() <= prec)
            }
            Formula::Implies(l, r) => {
                wrap(f, l, l.precedence() <= prec)?;
                write!(f, " -> ")?;
                wrap(f, r, r.precedence() < prec)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Not,
    And,
    Or,
    Arrow,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(at, c)) = chars.peek() {
        let token = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '!' => Token::Not,
            '&' => Token::And,
            '|' => Token::Or,
            '(' => Token::Open,
            ')' => Token::Close,
            '-' => {
                chars.next();
                if chars.peek().map(|&(_, c)| c) != Some('>') {
                    return Err(parse_error(at, "expected `->`"));
                }
                Token::Arrow
            }
            'a'..='z' => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((at, Token::Ident(name)));
                continue;
            }
            other => return Err(parse_error(at, &format!("unexpected character `{other}`"))),
        };
        chars.next();
        out.push((at, token));
    }
    Ok(out)
}

fn parse_error(offset: usize, message: &str) -> Error {
    Error::Parse {
        offset,
        message: message.to_string(),
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.eat(&Token::Arrow) {
            Ok(lhs.implies(self.implication()?))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Token::Or) {
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&Token::And) {
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        let at = self.offset();
        match self.tokens.get(self.pos).map(|(_, t)| t.clone()) {
            Some(Token::Not) => {
                self.pos += 1;
                Ok(self.unary()?.not())
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.implication()?;
                if !self.eat(&Token::Close) {
                    return Err(parse_error(self.offset(), "expected `)`"));
                }
                Ok(inner)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(match name.as_str() {
                    "bot" => Formula::Bottom,
                    "top" => Formula::Top,
                    _ => Formula::Var(name),
                })
            }
            Some(_) => Err(parse_error(at, "expected a variable, constant, `!` or `(`")),
            None => Err(parse_error(at, "unexpected end of formula")),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        end: text.len(),
    };
    let f = p.implication()?;
    if p.pos != p.tokens.len() {
        return Err(parse_error(p.offset(), "trailing input"));
    }
    Ok(f)
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_formula(s)
    }
}

/// Assignment of lattice elements to variable names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuation(pub BTreeMap<String, Elem>);

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: &str, e: Elem) -> Self {
        self.0.insert(var.to_string(), e);
        self
    }

    pub fn get(&self, var: &str) -> Option<Elem> {
        self.0.get(var).copied()
    }

    /// `v(p)=X1, v(q)=X2` using the algebra's labels.
    pub fn describe(&self, h: &HeytingAlgebra) -> String {
        self.0
            .iter()
            .map(|(k, &e)| format!("v({k})={}", h.label(e)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

pub fn eval_formula(h: &HeytingAlgebra, f: &Formula, v: &Valuation) -> Result<Elem> {
    Ok(match f {
        Formula::Var(name) => v
            .get(name)
            .ok_or_else(|| Error::UnassignedVariable(name.clone()))?,
        Formula::Bottom => h.bottom(),
        Formula::Top => h.top(),
        Formula::And(a, b) => h.meet(eval_formula(h, a, v)?, eval_formula(h, b, v)?),
        Formula::Or(a, b) => h.join(eval_formula(h, a, v)?, eval_formula(h, b, v)?),
        Formula::Implies(a, b) => h.implies(eval_formula(h, a, v)?, eval_formula(h, b, v)?),
        Formula::Not(a) => h.implies(eval_formula(h, a, v)?, h.bottom()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validity {
    pub valid: bool,
    /// First valuation, in odometer order over sorted variables, that does
    /// not reach ⊤.
    pub counter: Option<Valuation>,
    pub valuations_checked: usize,
}

/// Checks `f` under every valuation of its variables.
pub fn is_valid(h: &HeytingAlgebra, f: &Formula, var_budget: usize) -> Result<Validity> {
    let vars: Vec<String> = f.variables().into_iter().collect();
    if vars.len() > var_budget {
        return Err(Error::VarBudgetExceeded {
            vars: vars.len(),
            budget: var_budget,
        });
    }
    let n = h.len();
    let mut digits = vec![0usize; vars.len()];
    let mut checked = 0;
    loop {
        let v = Valuation(vars.iter().cloned().zip(digits.iter().map(|&d| Elem(d))).collect());
        checked += 1;
        if eval_formula(h, f, &v)? != h.top() {
            return Ok(Validity {
                valid: false,
                counter: Some(v),
                valuations_checked: checked,
            });
        }
        // Last variable varies fastest.
        let Some(k) = (0..digits.len()).rev().find(|&k| digits[k] + 1 < n) else {
            break;
        };
        digits[k] += 1;
        digits[k + 1..].iter_mut().for_each(|d| *d = 0);
    }
    Ok(Validity {
        valid: true,
        counter: None,
        valuations_checked: checked,
    })
}
