//! Polynomials in matrix entries, written like `g[1,1]^2*gc[1,2] - 3/2*g[2,2]`.
//!
//! Grammar:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power ('*' power)*
//! power  := atom ['^' digits]
//! atom   := digits ['/' digits] | entry | '(' expr ')'
//! entry  := ('g' | 'gc') '[' index ',' index ']'
//! index  := ['-'] digits
//! ```
//!
//! `gc` is the complex conjugate entry and exists only for U. Negative
//! indices are allowed only for Sp; zero is never an index.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::HaarError;
use crate::group::Group;
use crate::integrator::MomentSpec;

/// Largest number of terms an expansion may produce.
pub const MAX_TERMS: usize = 100_000;
/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 64;

/// A product of entries `g[i,j]` and conjugate entries `gc[i,j]`, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    plain: Vec<(i64, i64)>,
    conj: Vec<(i64, i64)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn entry(i: i64, j: i64) -> Self {
        Monomial {
            plain: vec![(i, j)],
            conj: Vec::new(),
        }
    }

    pub fn conj_entry(i: i64, j: i64) -> Self {
        Monomial {
            plain: Vec::new(),
            conj: vec![(i, j)],
        }
    }

    pub fn plain(&self) -> &[(i64, i64)] {
        &self.plain
    }

    pub fn conj(&self) -> &[(i64, i64)] {
        &self.conj
    }

    pub fn degree(&self) -> usize {
        self.plain.len() + self.conj.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut plain = [self.plain.as_slice(), other.plain.as_slice()].concat();
        let mut conj = [self.conj.as_slice(), other.conj.as_slice()].concat();
        plain.sort_unstable();
        conj.sort_unstable();
        Monomial { plain, conj }
    }

    pub fn to_spec(&self, group: Group) -> Result<MomentSpec, HaarError> {
        let (i, j): (Vec<i64>, Vec<i64>) = self.plain.iter().copied().unzip();
        match group {
            Group::Unitary => {
                let (ib, jb): (Vec<i64>, Vec<i64>) = self.conj.iter().copied().unzip();
                MomentSpec::unitary(i, j, ib, jb)
            }
            _ if !self.conj.is_empty() => Err(HaarError::InvalidSpec(
                "conjugate entries are only defined for U".into(),
            )),
            _ => MomentSpec::real(group, i, j),
        }
    }

    fn render(&self) -> String {
        let mut factors = Vec::new();
        for (name, list) in [("g", &self.plain), ("gc", &self.conj)] {
            let mut k = 0;
            while k < list.len() {
                let mut e = 1;
                while k + e < list.len() && list[k + e] == list[k] {
                    e += 1;
                }
                let (a, b) = list[k];
                factors.push(if e == 1 {
                    format!("{name}[{a},{b}]")
                } else {
                    format!("{name}[{a},{b}]^{e}")
                });
                k += e;
            }
        }
        factors.join("*")
    }
}

/// A polynomial with rational coefficients in matrix entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Polynomial::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        let e = self.terms.entry(m).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, HaarError> {
        if self.len().saturating_mul(other.len()) > MAX_TERMS * 16 {
            return Err(too_many());
        }
        let mut out = Polynomial::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        if out.len() > MAX_TERMS {
            return Err(too_many());
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial, HaarError> {
        let mut out = Polynomial::constant(BigRational::one());
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Canonical text form, parsed back by [`parse_expression`].
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let a = c.abs();
            let body = m.render();
            if body.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&body);
            } else {
                out.push_str(&format!("{a}*{body}"));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn too_many() -> HaarError {
    HaarError::Budget(format!("expansion exceeds {MAX_TERMS} terms"))
}

/// Parses and expands an expression, checking indices against `group`.
pub fn parse_expression(text: &str, group: Group) -> Result<Polynomial, HaarError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        group,
    };
    p.skip_ws();
    if p.pos == p.chars.len() {
        return Err(p.error("empty expression"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(&format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(out)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    group: Group,
}

impl Parser {
    fn error(&self, msg: &str) -> HaarError {
        HaarError::Parse {
            pos: self.pos + 1,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), HaarError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Polynomial, HaarError> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.neg());
            } else {
                break;
            }
            if acc.len() > MAX_TERMS {
                return Err(too_many());
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, HaarError> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = acc.mul(&self.power()?)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial, HaarError> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let at = self.pos;
            let e = self.digits()?;
            let e = u32::try_from(&e).ok().filter(|&e| e <= MAX_EXPONENT).ok_or_else(|| HaarError::Parse {
                pos: at + 1,
                msg: format!("exponent exceeds {MAX_EXPONENT}"),
            })?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, HaarError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let den = if self.eat('/') {
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.digits()?;
                    if d.is_zero() {
                        return Err(HaarError::Parse {
                            pos: at + 1,
                            msg: "division by zero".into(),
                        });
                    }
                    d
                } else {
                    BigInt::one()
                };
                Ok(Polynomial::constant(BigRational::new(num, den)))
            }
            Some('g') => self.entry(),
            Some(c) => Err(self.error(&format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn entry(&mut self) -> Result<Polynomial, HaarError> {
        let start = self.pos;
        self.pos += 1;
        let conj = self.chars.get(self.pos) == Some(&'c');
        if conj {
            self.pos += 1;
        }
        if conj && self.group != Group::Unitary {
            return Err(HaarError::Parse {
                pos: start + 1,
                msg: "conjugate entries are only defined for U".into(),
            });
        }
        self.expect('[')?;
        let i = self.index()?;
        self.expect(',')?;
        let j = self.index()?;
        self.expect(']')?;
        let m = if conj {
            Monomial::conj_entry(i, j)
        } else {
            Monomial::entry(i, j)
        };
        Ok(Polynomial::term(m, BigRational::one()))
    }

    fn index(&mut self) -> Result<i64, HaarError> {
        self.skip_ws();
        let at = self.pos;
        let negative = self.eat('-');
        self.skip_ws();
        let v = self.digits()?;
        let v = i64::try_from(&v).map_err(|_| HaarError::Parse {
            pos: at + 1,
            msg: "index too large".into(),
        })?;
        let v = if negative { -v } else { v };
        let bad = |msg: &str| HaarError::Parse {
            pos: at + 1,
            msg: msg.into(),
        };
        if v == 0 {
            return Err(bad("index 0 is not allowed"));
        }
        if v < 0 && self.group != Group::Symplectic {
            return Err(bad("negative indices are only defined for Sp"));
        }
        Ok(v)
    }

    fn digits(&mut self) -> Result<BigInt, HaarError> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn expands_and_renders() {
        let p = parse_expression("(g[1,1] + g[2,2])^2", Group::Orthogonal).unwrap();
        assert_eq!(p.render(), "g[1,1]^2 + 2*g[1,1]*g[2,2] + g[2,2]^2");
        let p = parse_expression("3/2 * g[1,2]*gc[1,2] - 1", Group::Unitary).unwrap();
        assert_eq!(p.render(), "-1 + 3/2*g[1,2]*gc[1,2]");
        assert!(parse_expression("g[1,1] - g[1,1]", Group::Unitary).unwrap().is_zero());
    }

    #[test]
    fn round_trip() {
        let p = parse_expression("-g[1,-1]*g[-1,1] + 2/3", Group::Symplectic).unwrap();
        assert_eq!(parse_expression(&p.render(), Group::Symplectic).unwrap(), p);
        let terms: Vec<_> = p.terms().map(|(_, c)| c.clone()).collect();
        assert_eq!(terms, vec![q(2, 3), q(-1, 1)]);
    }

    #[test]
    fn errors_carry_positions() {
        let pos = |text: &str, g| match parse_expression(text, g) {
            Err(HaarError::Parse { pos, .. }) => pos,
            other => panic!("{other:?}"),
        };
        assert_eq!(pos("g[1,0]", Group::Unitary), 5);
        assert_eq!(pos("g[1,-2]", Group::Orthogonal), 5);
        assert_eq!(pos("gc[1,1]", Group::Orthogonal), 1);
        assert_eq!(pos("g[1,1] +", Group::Unitary), 9);
        assert_eq!(pos("g[1,1])", Group::Unitary), 7);
        assert_eq!(pos("g[1,1)", Group::Unitary), 6);
        assert_eq!(pos("", Group::Unitary), 1);
    }

    #[test]
    fn to_spec_splits_lists() {
        let p = parse_expression("g[1,2]*g[3,4]*gc[1,2]*gc[3,4]", Group::Unitary).unwrap();
        let (m, _) = p.terms().next().unwrap();
        let s = m.to_spec(Group::Unitary).unwrap();
        assert_eq!(s.i(), &[1, 3]);
        assert_eq!(s.j_bar(), &[2, 4]);
    }
}
