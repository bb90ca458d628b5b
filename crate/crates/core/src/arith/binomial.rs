//! Mahler binomials `binom(lambda, alpha) = prod_i binom(lambda_i, alpha_i)`.

use num_bigint::BigInt;
use num_traits::One;

use super::padic::PadicNumber;
use super::rational::factorial;

/// Falling-factorial binomial for an integer top argument (negative allowed).
pub fn binomial_int(lambda: &BigInt, k: u32) -> BigInt {
    let mut num = BigInt::one();
    for j in 0..k {
        num *= lambda - BigInt::from(j);
    }
    num / factorial(k as u64)
}

pub fn mahler_binomial_int(lambda: &[BigInt], alpha: &[u32]) -> BigInt {
    assert_eq!(lambda.len(), alpha.len(), "rank mismatch");
    lambda
        .iter()
        .zip(alpha)
        .map(|(l, &a)| binomial_int(l, a))
        .product()
}

/// Precision-tracked Mahler binomial for p-adic arguments.
pub fn mahler_binomial(lambda: &[PadicNumber], alpha: &[u32]) -> PadicNumber {
    assert_eq!(lambda.len(), alpha.len(), "rank mismatch");
    assert!(!lambda.is_empty(), "rank zero");
    let p = lambda[0].prime();
    let prec = lambda.iter().map(|l| l.absolute_precision()).min().unwrap_or(0);
    let mut acc = PadicNumber::one(p, prec.max(1));
    for (l, &a) in lambda.iter().zip(alpha) {
        let mut falling = PadicNumber::one(p, l.absolute_precision().max(1));
        for j in 0..a {
            let shifted = l - &PadicNumber::from_int(j as i64, p, l.absolute_precision());
            falling = &falling * &shifted;
        }
        acc = &acc * &falling.div_int(&factorial(a as u64));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn small_values() {
        assert_eq!(binomial_int(&b(3), 2), b(3));
        assert_eq!(binomial_int(&b(17), 0), b(1));
        assert_eq!(binomial_int(&b(2), 5), b(0));
    }

    #[test]
    fn minus_one_alternates() {
        // Oracle: (-1)(-2)...(-k)/k! written out as a product of rationals.
        for k in 0..=6u32 {
            let mut prod = num_rational::BigRational::one();
            for j in 0..k {
                prod *= num_rational::BigRational::new(b(-1 - j as i64), b(j as i64 + 1));
            }
            assert_eq!(num_rational::BigRational::from_integer(binomial_int(&b(-1), k)), prod);
            assert_eq!(binomial_int(&b(-1), k), if k % 2 == 0 { b(1) } else { b(-1) });
        }
    }

    #[test]
    fn padic_matches_integer() {
        let lam: Vec<_> = [7i64, -3].iter().map(|&x| PadicNumber::from_int(x, 5, 8)).collect();
        let got = mahler_binomial(&lam, &[3, 2]);
        let exact = mahler_binomial_int(&[b(7), b(-3)], &[3, 2]);
        assert!(got.eq_at_precision(&PadicNumber::from_bigint(&exact, 5, 8)));
        // dividing by 5! costs one digit
        let l = [PadicNumber::from_int(11, 5, 8)];
        assert_eq!(mahler_binomial(&l, &[5]).absolute_precision(), 7);
    }

    proptest! {
        #[test]
        fn pascal(l0 in -40i64..40, l1 in -40i64..40, a0 in 0u32..6, a1 in 1u32..6) {
            let lam = [b(l0), b(l1)];
            let bumped = [b(l0), b(l1 + 1)];
            prop_assert_eq!(
                mahler_binomial_int(&bumped, &[a0, a1]),
                mahler_binomial_int(&lam, &[a0, a1]) + mahler_binomial_int(&lam, &[a0, a1 - 1])
            );
        }
    }
}
