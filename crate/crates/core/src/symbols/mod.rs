//! Dedekind symbol `Phi` and Rademacher symbol `Psi` on `SL(2, Z)`.
//!
//! Three independent routes are provided:
//! * the Dedekind-sum closed form ([`phi`], [`psi`]),
//! * the letter count of the L/R necklace ([`psi_from_word`]),
//! * a floating-point evaluation of the transformation law of `log Delta`
//!   ([`phi_numeric_oracle`]).

mod dedekind;
mod delta;

pub use dedekind::{dedekind_sum, dedekind_sum_naive};
pub use delta::{delta_q, log_delta, nome_modulus, terms_for_accuracy, truncation_bound};

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::enumeration::ClassRecord;
use crate::error::{Error, Result};
use crate::scalar::{sgn, ExactInt, Real};
use crate::sl2::{LRNecklace, Letter, Mat2};

/// Symbols of one class, computed along two exact routes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolRecord {
    pub phi: i64,
    pub psi: i64,
    pub psi_word: i64,
}

/// `Phi = b/d` if `c = 0`, else `(a + d)/c - 12 sgn(c) s(d, |c|)`.
pub fn phi<T: ExactInt>(m: &Mat2<T>) -> Result<T> {
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    let value: Ratio<T> = if c.is_zero() {
        Ratio::new(b.clone(), d.clone())
    } else {
        let twelve = T::from_i64(12).expect("literal");
        let s = dedekind_sum(d, &c.abs()) * twelve;
        let first = Ratio::new(a.clone() + d.clone(), c.clone());
        if c.is_positive() {
            first - s
        } else {
            first + s
        }
    };
    if !value.is_integer() {
        return Err(Error::NonIntegerPhi(format!("{m} -> {value}")));
    }
    Ok(value.to_integer())
}

/// `Psi = Phi - 3 sgn(c (a + d))`.
pub fn psi<T: ExactInt>(m: &Mat2<T>) -> Result<T> {
    let p = phi(m)?;
    let s = sgn(&(m.c().clone() * m.trace()));
    Ok(p - T::from_i32(3 * s).expect("literal"))
}

/// `#R - #L` of the necklace.
pub fn psi_from_word(n: &LRNecklace) -> i64 {
    n.word().count(Letter::R) as i64 - n.word().count(Letter::L) as i64
}

pub fn symbol_record(r: &ClassRecord) -> Result<SymbolRecord> {
    let small = |x: num_bigint::BigInt| {
        x.to_i64().ok_or_else(|| Error::InvalidParams(format!("symbol {x} exceeds i64")))
    };
    Ok(SymbolRecord {
        phi: small(phi(&r.rep)?)?,
        psi: small(psi(&r.rep)?)?,
        psi_word: psi_from_word(&r.necklace),
    })
}

/// Largest residual accepted when rounding the oracle's value to an integer.
pub const ORACLE_RESIDUAL: f64 = 0.1;

/// `Phi` from its defining relation
/// `log Delta(gz) - log Delta(z) = 6 log(-(cz+d)^2) [c != 0] + 2 pi i Phi`,
/// with the holomorphic `log Delta` and the principal branch
/// `-pi <= Im log < pi` for the correction term.
///
/// Fails with `InsufficientTerms` when `n_terms` does not reach `1e-6`
/// accuracy at `min(Im z, Im gz)`.
pub fn phi_numeric_oracle<T: ExactInt, F: Real>(m: &Mat2<T>, z: Complex<F>, n_terms: usize) -> Result<i64> {
    let g = m.to_real::<F>();
    if !(z.im > F::zero()) {
        return Err(Error::DomainError(format!("z = {} + {}i", z.re, z.im)));
    }
    let j = g.cocycle(z);
    let gz = g.act(z);
    let im_min = z.im.min(gz.im);
    let bound = delta::truncation_bound(im_min, n_terms);
    if !(bound < F::lit(1e-6)) {
        return Err(Error::InsufficientTerms {
            n_terms,
            im: im_min.to_f64().unwrap_or(f64::NAN),
            bound: bound.to_f64().unwrap_or(f64::INFINITY),
        });
    }
    let mut diff = log_delta(gz, n_terms)? - log_delta(z, n_terms)?;
    if !m.c().is_zero() {
        diff = diff - principal_log(-(j * j)) * F::lit(6.0);
    }
    let value = diff / (Complex::i() * F::TAU());
    let rounded = value.re.round();
    let residual = (value.re - rounded).abs().max(value.im.abs());
    let residual = residual.to_f64().unwrap_or(f64::INFINITY);
    if !(residual < ORACLE_RESIDUAL) {
        return Err(Error::BranchResidualTooLarge {
            value: value.re.to_f64().unwrap_or(f64::NAN),
            residual,
        });
    }
    Ok(rounded.to_i64().expect("finite"))
}

/// Logarithm with `-pi <= Im < pi`.
fn principal_log<F: Real>(w: Complex<F>) -> Complex<F> {
    let l = w.ln();
    if l.im >= F::PI() {
        Complex::new(l.re, l.im - F::TAU())
    } else {
        l
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::word_to_matrix;
    use num_bigint::BigInt;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2<i64> {
        Mat2::from_i64(a, b, c, d).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&m(1, 1, 0, 1)).unwrap(), 1);
        assert_eq!(phi(&m(2, 1, 1, 1)).unwrap(), 3);
        assert_eq!(phi(&m(3, 2, 1, 1)).unwrap(), 4);
        assert_eq!(phi(&m(-1, -1, 0, -1)).unwrap(), 1);
        assert_eq!(phi(&Mat2::<i64>::identity()).unwrap(), 0);
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&m(2, 1, 1, 1)).unwrap(), 0);
        assert_eq!(psi(&m(3, 2, 1, 1)).unwrap(), 1);
        assert_eq!(psi(&m(1, 1, 0, 1)).unwrap(), 1);
        // a + d = 0 gives sgn 0
        let s = Mat2::<i64>::gen_s();
        assert_eq!(psi(&s).unwrap(), phi(&s).unwrap());
    }

    #[test]
    fn word_examples() {
        let n = |s: &str| s.parse::<LRNecklace>().unwrap();
        assert_eq!(psi_from_word(&n("LR")), 0);
        assert_eq!(psi_from_word(&n("LRR")), 1);
        assert_eq!(psi_from_word(&n("LLR")), -1);
        for s in ["LRR", "LLR", "LLRLR"] {
            let w = n(s);
            assert_eq!(psi(&word_to_matrix::<BigInt>(w.word())).unwrap(), BigInt::from(psi_from_word(&w)));
        }
    }

    #[test]
    fn oracle_examples() {
        let z = Complex::new(0.0, 1.0);
        assert_eq!(phi_numeric_oracle(&m(1, 1, 0, 1), z, 50).unwrap(), 1);
        assert_eq!(phi_numeric_oracle(&m(2, 1, 1, 1), Complex::new(0.0, 2.0), 50).unwrap(), 3);
        // negative c and negative trace go through the same branch rules
        for g in [m(2, 1, 1, 1), m(3, 2, 1, 1), m(1, -1, -1, 2), m(-2, -1, -1, -1), Mat2::gen_s()] {
            let zz = Complex::new(0.1, 2.0);
            assert_eq!(phi_numeric_oracle(&g, zz, 200).unwrap(), phi(&g).unwrap(), "{g}");
        }
    }

    #[test]
    fn oracle_rejects_short_products() {
        let g = m(5, 2, 2, 1);
        let err = phi_numeric_oracle(&g, Complex::new(0.1, 2.0), 3).unwrap_err();
        assert!(matches!(err, Error::InsufficientTerms { .. }));
    }

    #[test]
    fn branch_convention() {
        let l = principal_log(Complex::new(-1.0f64, 0.0));
        assert!((l.im + std::f64::consts::PI).abs() < 1e-15);
    }
}
