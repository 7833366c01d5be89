//! Dense univariate polynomials in the dimension symbol `d` with integer
//! coefficients.
//!
//! Coefficients are stored in ascending order of degree with no trailing
//! zeros, so the zero polynomial is the empty vector. The gcd is the
//! primitive-remainder-sequence variant of Euclid's algorithm; all degrees
//! we meet are small (at most a few dozen), so nothing cleverer is needed.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::from_coeffs(vec![c.into()])
    }

    /// The monomial `d`.
    pub fn var() -> Self {
        Poly::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    /// `d + shift`.
    pub fn linear(shift: impl Into<BigInt>) -> Self {
        Poly::from_coeffs(vec![shift.into(), BigInt::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Gcd of the coefficients, always nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Divides every coefficient by `c`; `c` must divide all of them.
    pub fn div_exact_scalar(&self, c: &BigInt) -> Poly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    debug_assert!((x % c).is_zero());
                    x / c
                })
                .collect(),
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        self.div_exact_scalar(&c)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    /// Composition `p(a*d + b)` for integer `a`, `b`.
    pub fn substitute_affine(&self, a: i64, b: i64) -> Poly {
        let inner = Poly::from_i64s(&[b, a]);
        let mut out = Poly::zero();
        for c in self.coeffs.iter().rev() {
            out = &(&out * &inner) + &Poly::constant(c.clone());
        }
        out
    }

    /// Pseudo-remainder of `self` by `divisor` (nonzero): the remainder of
    /// `lc(divisor)^k * self` on division by `divisor`.
    fn pseudo_rem(&self, divisor: &Poly) -> Poly {
        let dd = divisor.degree().expect("pseudo-division by zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let lr = r.leading().unwrap().clone();
            let shift = rd - dd;
            let mut coeffs: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lc).collect();
            for (k, c) in divisor.coeffs.iter().enumerate() {
                coeffs[k + shift] -= c * &lr;
            }
            r = Poly::from_coeffs(coeffs);
        }
        r
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    /// `gcd(0, 0)` is zero.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// Exact quotient `self / divisor` over the integers. Panics if the
    /// division leaves a remainder or a non-integral coefficient.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let dd = divisor.degree().expect("division by zero polynomial");
        let Some(sd) = self.degree() else {
            return Poly::zero();
        };
        assert!(sd >= dd, "inexact polynomial division");
        let lc = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = &rem[k + dd];
            let (q, r) = top.div_rem(lc);
            assert!(r.is_zero(), "inexact polynomial division");
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= c * &q;
            }
            quot[k] = q;
        }
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        Poly::from_coeffs(quot)
    }

    /// Splits off linear factors `a*d + b` with `1 <= a <= 4`, `|b| <= 64`.
    /// Every denominator produced by the Weingarten formulas is a product
    /// of such factors. Returns the factors (with repetition, `(a, b)` with
    /// `gcd(a, b) = 1`) and the cofactor that remains.
    pub fn small_linear_factors(&self) -> (Vec<(i64, i64)>, Poly) {
        let mut found = Vec::new();
        let mut rest = self.clone();
        if rest.is_zero() {
            return (found, rest);
        }
        'outer: while !rest.is_constant() {
            for a in 1..=4i64 {
                for m in 0..=64i64 {
                    let signs: &[i64] = if m == 0 { &[0] } else { &[m, -m] };
                    for &b in signs {
                        if b.gcd(&a) != 1 {
                            continue;
                        }
                        if rest.vanishes_at_ratio(-b, a) {
                            found.push((a, b));
                            rest = rest.div_exact(&Poly::from_i64s(&[b, a]));
                            continue 'outer;
                        }
                    }
                }
            }
            break;
        }
        (found, rest)
    }

    /// Whether `p(num/den) == 0`, evaluated as `den^deg * p(num/den)` in integers.
    fn vanishes_at_ratio(&self, num: i64, den: i64) -> bool {
        if self.is_zero() {
            return true;
        }
        let num = BigInt::from(num);
        let den = BigInt::from(den);
        // Horner on sum_k c_k num^k den^(deg-k)
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * &num + c * &den_pow;
            den_pow *= &den;
        }
        acc.is_zero()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", render_ascending(self))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_ascending(self))
    }
}

/// Ascending-power rendering with explicit signs, e.g. `-2 + 3d - d^2`.
pub fn render_ascending(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let body = match k {
            0 => mag.to_string(),
            _ => {
                let var = if k == 1 { "d".to_string() } else { format!("d^{k}") };
                if mag.is_one() {
                    var
                } else {
                    format!("{mag}{var}")
                }
            }
        };
        out.push_str(&body);
    }
    out
}
