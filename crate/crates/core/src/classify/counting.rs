//! Closed-form counts on chains: Catalan and Fuss–Catalan numbers and the
//! proportion of chain transfer systems that are LSP.

use num::bigint::BigUint;
use num::rational::BigRational;
use num::{BigInt, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for t in 0..k {
        // exact at every step: acc holds C(n, t)
        acc = acc * BigUint::from(n - t) / BigUint::from(t + 1);
    }
    acc
}

/// `Cat(n) = C(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n, n) / BigUint::from(n + 1)
}

/// `A_m(3,1) = C(3m + 1, m) / (3m + 1)`.
pub fn fuss_catalan_a(m: u64) -> BigUint {
    binomial(3 * m + 1, m) / BigUint::from(3 * m + 1)
}

/// Number of LSP transfer systems on the chain of length `n`:
/// `Cat(n) + Cat(n - 1)`.
pub fn lsp_count_chain(n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::OutOfRange("chain length must be at least 1".into()));
    }
    Ok(catalan(n) + catalan(n - 1))
}

/// `lsp_count_chain(n) / Cat(n + 1)` as an exact fraction.
pub fn lsp_proportion_chain(n: u64) -> Result<BigRational> {
    let count = lsp_count_chain(n)?;
    let total = catalan(n + 1);
    let p = BigRational::new(BigInt::from(count), BigInt::from(total));
    debug_assert_eq!(p, lsp_proportion_closed_form(n)?);
    Ok(p)
}

/// `(5n^2 + 9n - 2) / (16n^2 - 4)`.
pub fn lsp_proportion_closed_form(n: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::OutOfRange("chain length must be at least 1".into()));
    }
    let n = BigInt::from(n);
    let num = BigInt::from(5) * &n * &n + BigInt::from(9) * &n - BigInt::from(2);
    let den = BigInt::from(16) * &n * &n - BigInt::from(4);
    Ok(BigRational::new(num, den))
}

/// Decimal rendering with `places` digits, rounding halves away from zero.
pub fn round_half_up(x: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10).pow(places);
    let scaled = x.abs() * BigRational::from_integer(scale.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let rounded = (scaled + half).floor().to_integer();
    let int_part = &rounded / &scale;
    let frac_part = &rounded % &scale;
    let sign = if x.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if places == 0 {
        format!("{}{}", sign, int_part)
    } else {
        format!(
            "{}{}.{:0width$}",
            sign,
            int_part,
            frac_part,
            width = places as usize
        )
    }
}

/// Lossy conversion for reporting.
pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
