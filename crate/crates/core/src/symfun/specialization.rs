use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::algebra::{Poly, RationalFunction};
use crate::combinatorics::Partition;
use crate::dim::Dim;

use super::character::hook_product;

/// `J_λ^{(α)}(1^m) = Π_{(i,j) ∈ λ} (m + α(j-1) - (i-1))`, as a polynomial in
/// `m` (or its value when `m` is fixed).
pub fn principal_specialization(lambda: &Partition, alpha: &BigRational, m: Dim) -> RationalFunction {
    assert!(alpha.is_positive(), "Jack parameter must be positive");
    let p = alpha.numer();
    let q = alpha.denom();
    // each factor is (q m + p j - q i) / q with 0-based cells
    let mut num = Poly::one();
    for (i, j) in lambda.cells() {
        let shift = p * BigInt::from(j) - q * BigInt::from(i);
        let factor = match m {
            Dim::Symbolic => Poly::from_coeffs(vec![shift, q.clone()]),
            Dim::Fixed(v) => Poly::constant(q * BigInt::from(v) + shift),
        };
        num = &num * &factor;
    }
    let den = Poly::constant(q.pow(lambda.weight() as u32));
    RationalFunction::new(num, den)
}

/// `s_λ(1^d)`, the dimension of the `GL_d` irreducible of highest weight `λ`.
pub fn schur_at_one(lambda: &Partition, d: Dim) -> RationalFunction {
    let one = BigRational::from_integer(1.into());
    principal_specialization(lambda, &one, d).scale(&BigRational::new(1.into(), hook_product(lambda)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::partitions_of;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_i64s(n), Poly::from_i64s(d))
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn specializations() {
        for a in [q(1, 1), q(2, 1), q(1, 2)] {
            assert_eq!(principal_specialization(&p(&[1]), &a, Dim::Symbolic), RationalFunction::var());
        }
        assert_eq!(principal_specialization(&p(&[2]), &q(2, 1), Dim::Symbolic), rf(&[0, 2, 1], &[1]));
        assert_eq!(principal_specialization(&p(&[1, 1]), &q(2, 1), Dim::Symbolic), rf(&[0, -1, 1], &[1]));
        // α = 1/2 on (2): d (d + 1/2)
        assert_eq!(principal_specialization(&p(&[2]), &q(1, 2), Dim::Symbolic), rf(&[0, 1, 2], &[2]));
        assert_eq!(
            principal_specialization(&p(&[2, 1]), &q(2, 1), Dim::Fixed(3)),
            RationalFunction::from_int(3 * 5 * 2)
        );
    }

    #[test]
    fn schur_values() {
        assert_eq!(schur_at_one(&p(&[1]), Dim::Symbolic), RationalFunction::var());
        assert_eq!(schur_at_one(&p(&[2]), Dim::Symbolic), rf(&[0, 1, 1], &[2]));
        assert_eq!(schur_at_one(&p(&[1, 1]), Dim::Symbolic), rf(&[0, -1, 1], &[2]));
        assert_eq!(schur_at_one(&p(&[2, 1]), Dim::Fixed(2)), RationalFunction::from_int(2));
        assert!(schur_at_one(&p(&[1, 1, 1]), Dim::Fixed(2)).is_zero());
    }

    #[test]
    fn alpha_one_is_hook_times_schur() {
        for n in 1..=6 {
            for l in partitions_of(n, None) {
                let lhs = principal_specialization(&l, &q(1, 1), Dim::Symbolic);
                let rhs = schur_at_one(&l, Dim::Symbolic).scale(&BigRational::from_integer(hook_product(&l)));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
