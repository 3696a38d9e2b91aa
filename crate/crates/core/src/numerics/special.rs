use crate::{Error, Result};

/// Standard normal cumulative distribution function.
///
/// Evaluated as `erfc(-z / sqrt 2) / 2` with the fdlibm-derived `erfc` from
/// `libm`, whose documented error is below 1 ulp. Going through `erfc`
/// rather than `1 + erf` keeps full relative accuracy in the lower tail.
pub fn normal_cdf(z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::domain("z", "normal_cdf requires a finite argument"));
    }
    Ok(0.5 * libm::erfc(-z * core::f64::consts::FRAC_1_SQRT_2))
}

/// `B_{2k} / (2k)` for k = 1..=6.
const ASYMPTOTIC: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
];

/// Digamma function `ψ(x) = Γ'(x) / Γ(x)` for `x > 0`.
///
/// Shifts the argument above 6 with `ψ(x) = ψ(x + 1) - 1/x`, then sums the
/// asymptotic series through `x^-12`; the first omitted term is below 1e-12.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("x", "digamma is defined here for finite x > 0"));
    }
    let mut x = x;
    let mut shift = 0.0;
    while x < 6.0 {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // Horner in 1/x^2, highest order first.
    let mut series = 0.0;
    for c in ASYMPTOTIC.iter().rev() {
        series = series * inv2 + c;
    }
    series *= inv2;
    Ok(shift + libm::log(x) - 0.5 / x - series)
}
