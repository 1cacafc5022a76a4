use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Normal-ordered expansion of the Weyl-ordered power `:N^k:_W`:
/// `Σ_l coeff(l) · a†^{k−l} a^{k−l}` with `coeff(l) = l!/2^l · C(k,l)²`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderingCoeffs {
    k: usize,
    coeffs: Vec<BigRational>,
}

impl OrderingCoeffs {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coeff(&self, l: usize) -> &BigRational {
        &self.coeffs[l]
    }

    /// `(l, coeff(l))` for `l = 0..=k`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().enumerate()
    }

    /// Diagonal element `<N| :N^k:_W |N>` using `a†^j a^j |N> = N!/(N−j)! |N>`.
    pub fn number_diagonal(&self, n: u64) -> BigRational {
        self.terms()
            .map(|(l, c)| c * BigRational::from_integer(falling_factorial(n, (self.k - l) as u64).into()))
            .fold(BigRational::zero(), |acc, t| acc + t)
    }
}

pub fn weyl_to_normal(k: usize) -> OrderingCoeffs {
    let mut coeffs = Vec::with_capacity(k + 1);
    let mut l_fact = BigUint::one();
    for l in 0..=k {
        if l > 0 {
            l_fact *= l as u64;
        }
        let c = binomial(k as u64, l as u64);
        let num = BigInt::from(l_fact.clone() * &c * &c);
        let den = BigInt::from(BigUint::one() << l);
        coeffs.push(BigRational::new(num, den));
    }
    OrderingCoeffs { k, coeffs }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `N!/(N−j)!`, zero when `j > N`.
pub fn falling_factorial(n: u64, j: u64) -> BigUint {
    if j > n {
        return BigUint::zero();
    }
    (0..j).fold(BigUint::one(), |acc, i| acc * (n - i))
}

pub fn falling_factorial_f64(n: u64, j: u64) -> f64 {
    if j > n {
        return 0.0;
    }
    (0..j).fold(1.0, |acc, i| acc * (n - i) as f64)
}

/// `<N|(a† + a)^k|N>`: zero for odd `k`, otherwise
/// `C(k, k/2) · <N| :N^{k/2}:_W |N>`.
pub fn diag_power_expectation(k: usize, n: u64) -> BigRational {
    if k % 2 == 1 {
        return BigRational::zero();
    }
    let half = k / 2;
    let central = BigRational::from_integer(binomial(k as u64, half as u64).into());
    central * weyl_to_normal(half).number_diagonal(n)
}

pub fn diag_power_expectation_f64(k: usize, n: u64) -> f64 {
    diag_power_expectation(k, n).to_f64().unwrap_or(f64::NAN)
}
