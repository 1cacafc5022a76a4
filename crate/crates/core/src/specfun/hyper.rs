use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Terminating Gauss hypergeometric series `₂F₁(-n, b; c; z)` in floating point.
///
/// Fails with [`Error::Pole`] when `(c)_k` vanishes for some `k <= n`.
pub fn hyp2f1_terminating(n: usize, b: f64, c: f64, z: f64) -> Result<f64> {
    check_poles(n, |j| c + j as f64 == 0.0)?;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        let kf = k as f64;
        term *= (kf - n as f64) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
    }
    Ok(sum)
}

/// Exact rational evaluation of `₂F₁(-n, b; c; z)`.
pub fn hyp2f1_terminating_exact(n: usize, b: &BigRational, c: &BigRational, z: &BigRational) -> Result<BigRational> {
    check_poles(n, |j| (c + BigRational::from_integer(BigInt::from(j))).is_zero())?;
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 0..n {
        let kq = BigRational::from_integer(BigInt::from(k));
        let top = (&kq - BigRational::from_integer(BigInt::from(n))) * (b + &kq);
        let bottom = (c + &kq) * (&kq + BigRational::one());
        term = term * top / bottom * z;
        sum += &term;
    }
    Ok(sum)
}

fn check_poles(n: usize, vanishes: impl Fn(usize) -> bool) -> Result<()> {
    // (c)_k for k <= n involves c + j with j < n
    match (0..n).find(|&j| vanishes(j)) {
        Some(j) => Err(Error::Pole { index: j + 1 }),
        None => Ok(()),
    }
}
