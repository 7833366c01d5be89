use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{render_ascending, Poly};

/// A rational function of the dimension symbol `d`, kept in lowest terms.
///
/// Canonical form: numerator and denominator share no polynomial factor and
/// no common integer content, and the denominator has a positive leading
/// coefficient. Zero is `0/1`. With that normalization structural equality
/// coincides with equality of functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let mut c = num.content().gcd(&den.content());
        if den.leading().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_exact_scalar(&c);
            den = den.div_exact_scalar(&c);
        }
        RationalFunction { num, den }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction::new(p, Poly::one())
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        RationalFunction::from_poly(Poly::constant(c))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        RationalFunction::new(Poly::constant(q.numer().clone()), Poly::constant(q.denom().clone()))
    }

    /// The symbol `d` itself.
    pub fn var() -> Self {
        RationalFunction::from_poly(Poly::var())
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The value as an exact rational when the function is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        self.is_constant()
            .then(|| BigRational::new(self.num.coeff(0), self.den.coeff(0)))
    }

    /// Evaluates at `d = x`; `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let den = self.den.eval(x);
        if den.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / den)
    }

    pub fn eval_int(&self, x: i64) -> Option<BigRational> {
        self.eval(&BigRational::from_integer(BigInt::from(x)))
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero rational function");
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        RationalFunction::new(self.num.scale(q.numer()), self.den.scale(q.denom()))
    }

    /// `f(a*d + b)`.
    pub fn substitute_affine(&self, a: i64, b: i64) -> Self {
        RationalFunction::new(self.num.substitute_affine(a, b), self.den.substitute_affine(a, b))
    }

    /// Human-readable form: ascending powers in the numerator, the
    /// denominator factored into linear factors when it splits, expanded
    /// otherwise. Examples: `1/d`, `3/(d(d + 2))`, `(1 + d)/(d(d - 1)(d + 2))`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let num = render_ascending(&self.num);
        let num_terms = self.num.coeffs().iter().filter(|c| !c.is_zero()).count();
        if self.den.is_one_poly() {
            return num;
        }
        let (den, atomic) = render_denominator(&self.den);
        let num = if num_terms > 1 { format!("({num})") } else { num };
        if atomic {
            format!("{num}/{den}")
        } else {
            format!("{num}/({den})")
        }
    }
}

trait PolyExt {
    fn is_one_poly(&self) -> bool;
}

impl PolyExt for Poly {
    fn is_one_poly(&self) -> bool {
        self.is_constant() && self.coeff(0).is_one()
    }
}

fn render_factor(a: i64, b: i64) -> String {
    let lead = if a == 1 { "d".to_string() } else { format!("{a}d") };
    match b.cmp(&0) {
        std::cmp::Ordering::Equal => lead,
        std::cmp::Ordering::Greater => format!("({lead} + {b})"),
        std::cmp::Ordering::Less => format!("({lead} - {})", -b),
    }
}

/// Returns the rendered denominator and whether it reads as a single atom
/// (so it needs no parentheses after `/`).
fn render_denominator(den: &Poly) -> (String, bool) {
    let (mut factors, rest) = den.small_linear_factors();
    if !rest.is_constant() {
        return (render_ascending(den), false);
    }
    factors.sort_by_key(|&(a, b)| (b != 0, a, b));
    let c = rest.coeff(0);
    let mut out = String::new();
    let mut tokens = 0;
    if !c.is_one() {
        out.push_str(&c.to_string());
        tokens += 1;
    }
    let mut i = 0;
    while i < factors.len() {
        let f = factors[i];
        let mut k = 1;
        while i + k < factors.len() && factors[i + k] == f {
            k += 1;
        }
        let token = render_factor(f.0, f.1);
        // a bare `2d` is itself a product
        tokens += if f.0 != 1 && f.1 == 0 { 2 } else { 1 };
        out.push_str(&token);
        if k > 1 {
            out.push_str(&format!("^{k}"));
        }
        i += k;
    }
    (out, tokens == 1)
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let left = rhs.den.div_exact(&g);
        let right = self.den.div_exact(&g);
        let num = &(&self.num * &left) + &(&rhs.num * &right);
        RationalFunction::new(num, &self.den * &left)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.recip()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = RationalFunction>>(iter: I) -> Self {
        iter.fold(RationalFunction::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self.render())
    }
}

/// Integer-valued helper: `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `(2k-1)!! = 1*3*...*(2k-1)`, with `(-1)!! = 1`.
pub fn double_factorial_odd(m: u64) -> BigInt {
    // m is the odd argument; even or zero arguments are handled by callers
    let mut acc = BigInt::one();
    let mut k = m;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}
