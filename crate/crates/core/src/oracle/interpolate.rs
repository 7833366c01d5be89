use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{Matrix, Poly, RationalFunction};

/// The rational function `p/q` with `deg p <= num_deg`, `deg q <= den_deg`
/// through every point, or `None` when no such function fits.
///
/// Solves `p(x) - y q(x) = 0` for the coefficients and takes one nullspace
/// vector; any nonzero solution reduces to the same function once there
/// are more than `num_deg + den_deg + 1` points.
pub fn interpolate_rational(
    points: &[(BigRational, BigRational)],
    num_deg: usize,
    den_deg: usize,
) -> Option<RationalFunction> {
    let unknowns = num_deg + den_deg + 2;
    let system = Matrix::from_fn(points.len(), unknowns, |r, c| {
        let (x, y) = &points[r];
        if c <= num_deg {
            pow(x, c)
        } else {
            -(y * pow(x, c - num_deg - 1))
        }
    });
    let (reduced, pivots) = system.rref();
    let free = (0..unknowns).find(|c| !pivots.contains(c))?;
    let mut v = vec![BigRational::zero(); unknowns];
    v[free] = BigRational::one();
    for (row, &p) in pivots.iter().enumerate() {
        v[p] = -reduced[(row, free)].clone();
    }
    let scale = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| (c * &scale).to_integer()).collect();
    let num = Poly::from_coeffs(ints[..=num_deg].to_vec());
    let den = Poly::from_coeffs(ints[num_deg + 1..].to_vec());
    if den.is_zero() {
        return None;
    }
    let f = RationalFunction::new(num, den);
    points.iter().all(|(x, y)| f.eval(x).as_ref() == Some(y)).then_some(f)
}

fn pow(x: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_a_known_function() {
        let f = RationalFunction::new(Poly::from_i64s(&[1, 1]), Poly::from_i64s(&[0, -2, 1, 1]));
        let pts: Vec<_> = (3..12)
            .map(|d| {
                let x = BigRational::from_integer(d.into());
                let y = f.eval(&x).unwrap();
                (x, y)
            })
            .collect();
        assert_eq!(interpolate_rational(&pts, 2, 4), Some(f));
    }

    #[test]
    fn rejects_functions_outside_the_degree_bounds() {
        let pts: Vec<_> = (1..8)
            .map(|d: i64| (BigRational::from_integer(d.into()), BigRational::from_integer((d * d * d).into())))
            .collect();
        assert_eq!(interpolate_rational(&pts, 2, 1), None);
    }
}
