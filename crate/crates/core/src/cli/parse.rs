//! Expressions over a field: integers, variables, `+ - * / ^` and
//! parentheses. Division is evaluated in the field of fractions and the
//! result reduced once at the end.

use num_bigint::BigInt;

use crate::fields::Field;
use crate::pencil::{make_reduced, RationalFunctionMV};
use crate::polys::MultiPoly;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            let s: String = chars[i..j].iter().map(|t| t.1).collect();
            out.push((pos, Tok::Int(s.parse().unwrap())));
            i = j;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '_') {
                j += 1;
            }
            out.push((pos, Tok::Ident(chars[i..j].iter().map(|t| t.1).collect())));
            i = j;
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Op(c)));
            i += 1;
        } else {
            return Err(err(pos, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

/// A fraction kept unreduced while parsing.
#[derive(Clone)]
struct Frac<F: Field> {
    num: MultiPoly<F>,
    den: MultiPoly<F>,
}

impl<F: Field> Frac<F> {
    fn poly(p: MultiPoly<F>) -> Self {
        let one = MultiPoly::one(p.field().clone(), p.nvars());
        Frac { num: p, den: one }
    }

    fn tidy(num: MultiPoly<F>, den: MultiPoly<F>) -> Self {
        match den.constant_value() {
            Some(c) => {
                let inv = num.field().inv(&c).expect("nonzero denominator");
                Frac::poly(num.scale(&inv))
            }
            None => Frac { num, den },
        }
    }

    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Frac::tidy(self.num.add(&o.num), self.den.clone());
        }
        Frac::tidy(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    fn neg(&self) -> Self {
        Frac { num: self.num.neg(), den: self.den.clone() }
    }

    fn mul(&self, o: &Self) -> Self {
        Frac::tidy(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    fn div(&self, o: &Self) -> Result<Self> {
        if o.num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Frac::tidy(self.num.mul(&o.den), self.den.mul(&o.num)))
    }
}

struct Parser<'a, F: Field> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    vars: &'a [String],
    k: &'a F,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|t| t.0).unwrap_or(self.end)
    }

    fn is_op(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Op(c))
    }

    fn expr(&mut self) -> Result<Frac<F>> {
        let mut acc = self.term()?;
        while self.is_op('+') || self.is_op('-') {
            let minus = self.is_op('-');
            self.i += 1;
            let t = self.term()?;
            acc = acc.add(&if minus { t.neg() } else { t });
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Frac<F>> {
        let mut acc = self.unary()?;
        while self.is_op('*') || self.is_op('/') {
            let div = self.is_op('/');
            self.i += 1;
            let t = self.unary()?;
            acc = if div { acc.div(&t)? } else { acc.mul(&t) };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Frac<F>> {
        if self.is_op('-') {
            self.i += 1;
            return Ok(self.unary()?.neg());
        }
        if self.is_op('+') {
            self.i += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Frac<F>> {
        let base = self.atom()?;
        if !self.is_op('^') {
            return Ok(base);
        }
        self.i += 1;
        let pos = self.pos();
        let e = match self.peek() {
            Some(Tok::Int(e)) => u32::try_from(e.clone()).map_err(|_| err(pos, "exponent too large"))?,
            _ => return Err(err(pos, "expected a nonnegative integer exponent")),
        };
        self.i += 1;
        Ok(Frac { num: base.num.pow(e), den: base.den.pow(e) })
    }

    fn atom(&mut self) -> Result<Frac<F>> {
        let pos = self.pos();
        let n = self.vars.len();
        let tok = self.peek().cloned();
        let out = match tok {
            Some(Tok::Int(v)) => Frac::poly(MultiPoly::constant(self.k.clone(), n, self.k.from_bigint(&v))),
            Some(Tok::Ident(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Frac::poly(MultiPoly::var(self.k.clone(), n, i)),
                None => return Err(err(pos, format!("unknown variable '{name}'"))),
            },
            Some(Tok::Op('(')) => {
                self.i += 1;
                let inner = self.expr()?;
                if !self.is_op(')') {
                    return Err(err(self.pos(), "expected ')'"));
                }
                inner
            }
            Some(Tok::Op(c)) => return Err(err(pos, format!("unexpected '{c}'"))),
            None => return Err(err(pos, "unexpected end of input")),
        };
        self.i += 1;
        if matches!(self.peek(), Some(Tok::Int(_) | Tok::Ident(_) | Tok::Op('('))) {
            return Err(err(self.pos(), "expected an operator (implicit multiplication is not allowed)"));
        }
        Ok(out)
    }
}

/// Parse and reduce a rational function in the given variables.
pub fn parse_rational_function<F: Field>(text: &str, vars: &[String], k: &F) -> Result<RationalFunctionMV<F>> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(err(0, "empty expression"));
    }
    let mut p = Parser { toks, i: 0, end: text.len(), vars, k };
    let v = p.expr()?;
    if p.i < p.toks.len() {
        return Err(err(p.pos(), "unexpected trailing input"));
    }
    make_reduced(v.num, v.den)
}

/// Variables of the inputs: `X1..Xn` (or `x1..xn`) by index when every
/// name has that shape, otherwise the distinct names in sorted order.
pub fn detect_vars(texts: &[&str]) -> Result<Vec<String>> {
    let mut names: Vec<String> = Vec::new();
    for t in texts {
        for (_, tok) in tokenize(t)? {
            if let Tok::Ident(s) = tok {
                if !names.contains(&s) {
                    names.push(s);
                }
            }
        }
    }
    let indexed = |s: &str| -> Option<(char, usize)> {
        let mut cs = s.chars();
        let c = cs.next()?;
        let rest: String = cs.collect();
        if (c == 'X' || c == 'x') && !rest.is_empty() && rest.chars().all(|d| d.is_ascii_digit()) {
            rest.parse().ok().filter(|&i| i >= 1).map(|i| (c, i))
        } else {
            None
        }
    };
    let parsed: Vec<Option<(char, usize)>> = names.iter().map(|s| indexed(s)).collect();
    if !names.is_empty() && parsed.iter().all(|p| p.is_some()) {
        let letter = parsed[0].unwrap().0;
        if parsed.iter().all(|p| p.unwrap().0 == letter) {
            let top = parsed.iter().map(|p| p.unwrap().1).max().unwrap();
            return Ok((1..=top).map(|i| format!("{letter}{i}")).collect());
        }
    }
    names.sort();
    Ok(names)
}
