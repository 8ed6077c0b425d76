//! The cubic-factor decomposition of `x^p + (1-x)^p - 1` over the rationals.

use thiserror::Error;

use crate::arith::is_prime;
use crate::poly::{vars, MultiPoly};
use crate::ring::{Rationals, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FermatError {
    #[error("{0} is not a prime greater than 3")]
    BadPrime(u64),
}

#[derive(Clone, Debug)]
pub struct FermatDecomposition {
    pub p: u64,
    /// Exponent of `x^2 - x + 1`.
    pub b: u32,
    pub quotient: MultiPoly<Rationals>,
    pub remainder: MultiPoly<Rationals>,
}

impl FermatDecomposition {
    pub fn expected_degree(&self) -> i64 {
        self.p as i64 - 3 - 2 * self.b as i64
    }
}

/// Divides `x^p + (1-x)^p - 1` by `x (x-1) (x^2-x+1)^b`.
pub fn fermat_decomposition(p: u64) -> Result<FermatDecomposition, FermatError> {
    if p <= 3 || !is_prime(p) {
        return Err(FermatError::BadPrime(p));
    }
    let q = Rationals;
    let v = vars(&["x"]);
    let x = MultiPoly::var(&q, &v, 0);
    let one = MultiPoly::one(&q, &v);
    let p32 = p as u32;
    let f = x.pow(p32).add(&one.sub(&x).pow(p32)).sub(&one);
    let b = if p % 3 == 2 { 1 } else { 2 };
    let cubic = x.mul(&x).sub(&x).add(&one);
    let divisor = x.mul(&x.sub(&one)).mul(&cubic.pow(b));
    let (quotient, remainder) = f.div_rem(&divisor);
    debug_assert!(q.is_one(&divisor.leading_coeff()));
    Ok(FermatDecomposition {
        p,
        b,
        quotient,
        remainder,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let d5 = fermat_decomposition(5).unwrap();
        assert_eq!((d5.b, d5.quotient.to_string()), (1, "5".to_string()));
        assert!(d5.remainder.is_zero());
        let d7 = fermat_decomposition(7).unwrap();
        assert_eq!((d7.b, d7.quotient.to_string()), (2, "7".to_string()));
        let d11 = fermat_decomposition(11).unwrap();
        assert_eq!(d11.quotient.total_degree(), Some(6));
        assert_eq!(
            fermat_decomposition(3).unwrap_err(),
            FermatError::BadPrime(3)
        );
        assert!(fermat_decomposition(9).is_err());
    }
}
