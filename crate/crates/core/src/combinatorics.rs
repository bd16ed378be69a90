//! F-factorials, falling factorials and F-nomial coefficients of a sequence,
//! plus the closed forms for counting partitions of a finite set into blocks
//! of one fixed size.
//!
//! Everything is exact: integer results are `BigInt`, ratios are reduced
//! `BigRational`.  For `F = natural` the F-nomials are binomial coefficients,
//! for `F = gauss:q` the Gaussian q-binomials, for `F = fibonacci` the
//! Fibonomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::sequence::FSequence;

/// `n_F! = F_n F_{n-1} ... F_1`, with the empty product `0_F! = 1`.
/// The root value `F_0` is never a factor.
pub fn f_factorial(f: &FSequence, n: u64) -> Result<BigInt> {
    let mut acc = BigInt::one();
    for i in 1..=n {
        acc *= f.term(i)?;
    }
    Ok(acc)
}

/// Falling F-factorial `n_F^(k) = F_n F_{n-1} ... F_{n-k+1}` (`k` factors,
/// empty product for `k = 0`).  `k > n` is a domain error, not zero.
pub fn f_falling(f: &FSequence, n: u64, k: u64) -> Result<BigInt> {
    if k > n {
        return Err(Error::FallingRange { n, k });
    }
    let mut acc = BigInt::one();
    for i in (n - k + 1)..=n {
        acc *= f.term(i)?;
    }
    Ok(acc)
}

/// F-nomial coefficient `(n over k)_F = n_F! / (k_F! (n-k)_F!)`, computed as
/// the reduced ratio `n_F^(n-k) / (n-k)_F!`.  Integral for many sequences
/// but not all; callers that need integrality check the denominator.
pub fn fnomial(f: &FSequence, n: u64, k: u64) -> Result<BigRational> {
    if k > n {
        return Err(Error::FallingRange { n, k });
    }
    let num = f_falling(f, n, n - k)?;
    let den = f_factorial(f, n - k)?;
    Ok(BigRational::new(num, den))
}

/// Ordinary factorial `n!`.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Rising factorial `(a+1)(a+2)...(a+count)`.
fn rising_from(a: u64, count: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 1..=count {
        acc *= BigInt::from(a + i);
    }
    acc
}

/// Number of partitions of an `eta`-element set into exactly `kappa` blocks,
/// every block of size `lambda`: `eta! / (kappa! * (lambda!)^kappa)` when
/// `eta = kappa * lambda`, and 0 otherwise.
pub fn equal_block_count(eta: u64, kappa: u64, lambda: u64) -> BigInt {
    if u128::from(kappa) * u128::from(lambda) != u128::from(eta) {
        return BigInt::zero();
    }
    let denom = factorial(kappa) * factorial(lambda).pow(u32::try_from(kappa).expect("kappa fits u32"));
    factorial(eta) / denom
}

/// One step of the recurrence that grows an equal-block partition count by a
/// whole block: returns
/// `(eta+1)(eta+2)...(eta+lambda) / (lambda! (kappa+1)) * equal_block_count(eta, kappa, lambda)`,
/// which equals `equal_block_count(eta+lambda, kappa+1, lambda)`.  Off the
/// diagonal `eta != kappa*lambda` the count factor is 0, so the step is too.
pub fn equal_block_recurrence_step(eta: u64, kappa: u64, lambda: u64) -> BigInt {
    let base = equal_block_count(eta, kappa, lambda);
    if base.is_zero() {
        return BigInt::zero();
    }
    let num = rising_from(eta, lambda) * base;
    let den = factorial(lambda) * BigInt::from(kappa + 1);
    let (q, r) = num_integer::Integer::div_rem(&num, &den);
    debug_assert!(r.is_zero(), "recurrence step is an exact integer on the diagonal");
    q
}

/// Growth factor `phi_lambda(kappa) = (kappa*lambda)_(lambda) / (lambda! * kappa)`
/// as a reduced rational, where the numerator is the ordinary falling
/// factorial of `kappa*lambda` with `lambda` factors.
///
/// Both arguments must be at least 1.
pub fn phi_lambda(lambda: u64, kappa: u64) -> BigRational {
    assert!(lambda >= 1 && kappa >= 1, "phi_lambda needs lambda, kappa >= 1");
    let top = kappa * lambda;
    let mut num = BigInt::one();
    for i in (top - lambda + 1)..=top {
        num *= BigInt::from(i);
    }
    let den = factorial(lambda) * BigInt::from(kappa);
    BigRational::new(num, den)
}

/// `phi_lambda(1) * phi_lambda(2) * ... * phi_lambda(kappa)`, the product
/// form of the equal-block partition count.  The empty product (`kappa = 0`)
/// is 1.  Every factor is integral; a non-integral factor would mean the
/// arithmetic itself is broken and is reported as an internal inconsistency.
pub fn phi_lambda_factorial(lambda: u64, kappa: u64) -> Result<BigInt> {
    assert!(lambda >= 1, "phi_lambda_factorial needs lambda >= 1");
    let mut acc = BigInt::one();
    for k in 1..=kappa {
        let step = phi_lambda(lambda, k);
        if !step.is_integer() {
            return Err(Error::InternalInconsistency(format!(
                "phi_{lambda}({k}) = {step} is not an integer"
            )));
        }
        acc *= step.to_integer();
    }
    Ok(acc)
}

/// True when a reduced rational is a (nonnegative or negative) integer.
pub fn is_integral(x: &BigRational) -> bool {
    x.denom().is_one()
}

/// Renders a reduced rational as `p` or `p/q`.
pub fn rational_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Positive gcd of two positive integers.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::gcd(a, b).abs()
}
