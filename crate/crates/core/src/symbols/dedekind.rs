use num_rational::Ratio;
use num_traits::Zero;

use crate::scalar::ExactInt;

fn lit<T: ExactInt>(x: i64) -> T {
    T::from_i64(x).expect("small literal")
}

/// Dedekind sum `s(h, k)` for `k >= 1`, via the reciprocity law
/// `s(h,k) + s(k,h) = -1/4 + (h^2 + k^2 + 1) / (12hk)` and Euclidean descent.
pub fn dedekind_sum<T: ExactInt>(h: &T, k: &T) -> Ratio<T> {
    assert!(k.is_positive(), "dedekind_sum needs k >= 1");
    // s(gh, gk) = s(h, k)
    let g = h.gcd(k);
    let mut k = k.clone() / g.clone();
    let mut h = (h.clone() / g).mod_floor(&k);
    let mut acc = Ratio::<T>::zero();
    let mut positive = true;
    let quarter = Ratio::new(T::one(), lit(4));
    while !h.is_zero() && !k.is_one() {
        let term = Ratio::new(h.clone() * h.clone() + k.clone() * k.clone() + T::one(), lit::<T>(12) * h.clone() * k.clone())
            - quarter.clone();
        if positive {
            acc = acc + term;
        } else {
            acc = acc - term;
        }
        positive = !positive;
        let next = k.mod_floor(&h);
        k = h;
        h = next;
    }
    acc
}

/// `((x))`: `x - floor(x) - 1/2` off the integers, `0` on them.
fn sawtooth<T: ExactInt>(x: &Ratio<T>) -> Ratio<T> {
    if x.is_integer() {
        Ratio::zero()
    } else {
        x.clone() - x.floor() - Ratio::new(T::one(), lit(2))
    }
}

/// Dedekind sum straight from its definition, `O(k)` terms.
pub fn dedekind_sum_naive<T: ExactInt>(h: &T, k: &T) -> Ratio<T> {
    assert!(k.is_positive(), "dedekind_sum needs k >= 1");
    let mut acc = Ratio::<T>::zero();
    let mut i = T::one();
    while &i < k {
        let a = sawtooth(&Ratio::new(i.clone(), k.clone()));
        let b = sawtooth(&Ratio::new(h.clone() * i.clone(), k.clone()));
        acc = acc + a * b;
        i = i + T::one();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    #[test]
    fn examples() {
        assert_eq!(dedekind_sum(&1i64, &1), r(0, 1));
        assert_eq!(dedekind_sum(&1i64, &3), r(1, 18));
        assert_eq!(dedekind_sum_naive(&1i64, &3), r(1, 18));
        assert_eq!(dedekind_sum(&0i64, &7), r(0, 1));
        // s(1,k) = (k-1)(k-2)/(12k)
        for k in 1..40i64 {
            assert_eq!(dedekind_sum(&1, &k), r((k - 1) * (k - 2), 12 * k));
        }
    }

    #[test]
    fn negative_and_reduced_arguments() {
        for k in 1..30i64 {
            for h in -40..40i64 {
                let s = dedekind_sum(&h, &k);
                assert_eq!(s, dedekind_sum(&(h + 5 * k), &k));
                assert_eq!(dedekind_sum(&-h, &k), -s.clone());
                assert_eq!(s, dedekind_sum_naive(&h, &k), "s({h},{k})");
            }
        }
    }

    proptest! {
        #[test]
        fn reciprocity(h in 1i64..2000, k in 1i64..2000) {
            prop_assume!(h.gcd(&k) == 1);
            let lhs = dedekind_sum(&h, &k) + dedekind_sum(&k, &h);
            let rhs = r(-1, 4) + (r(h, k) + r(k, h) + r(1, h * k)) / 12;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn fast_matches_naive(h in -500i64..500, k in 1i64..300) {
            prop_assert_eq!(dedekind_sum(&h, &k), dedekind_sum_naive(&h, &k));
        }

        #[test]
        fn bigint_matches_i64(h in -10_000i64..10_000, k in 1i64..10_000) {
            let s = dedekind_sum(&h, &k);
            let big = dedekind_sum(&BigInt::from(h), &BigInt::from(k));
            prop_assert_eq!(big, Ratio::new(BigInt::from(*s.numer()), BigInt::from(*s.denom())));
        }
    }
}
