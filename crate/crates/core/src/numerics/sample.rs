use super::RngStream;
use crate::{Error, Result};

/// Natural log of a Gamma(shape, 1) variate.
///
/// Marsaglia-Tsang squeeze/rejection for `shape >= 1`; for `shape < 1` the
/// boost `G(a) = G(a + 1) * U^(1/a)` applied in log space, so shapes down to
/// 1e-9 and below do not underflow before normalization.
fn ln_gamma_variate(shape: f64, rng: &mut RngStream) -> f64 {
    if shape < 1.0 {
        let boosted = ln_gamma_variate(shape + 1.0, rng);
        return boosted + libm::log(rng.uniform_open()) / shape;
    }
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / libm::sqrt(9.0 * d);
    loop {
        let x = rng.standard_normal();
        let t = 1.0 + c * x;
        if t <= 0.0 {
            continue;
        }
        let v = t * t * t;
        let u = rng.uniform_open();
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 || libm::log(u) < 0.5 * x2 + d * (1.0 - v + libm::log(v)) {
            return libm::log(d) + libm::log(v);
        }
    }
}

/// Gamma(shape, 1) variate.
pub fn sample_gamma(shape: f64, rng: &mut RngStream) -> Result<f64> {
    if !(shape > 0.0) || !shape.is_finite() {
        return Err(Error::domain("shape", "gamma shape must be finite and > 0"));
    }
    Ok(libm::exp(ln_gamma_variate(shape, rng)))
}

/// Draw from a 4-component Dirichlet distribution.
///
/// Independent Gamma(m_j, 1) variates normalized by their sum. The
/// normalization runs in log space; a component can only come out as exactly
/// zero when its share is below the smallest positive `f64`.
pub fn sample_dirichlet(m: &[f64; 4], rng: &mut RngStream) -> Result<[f64; 4]> {
    if m.iter().any(|&a| !(a > 0.0) || !a.is_finite()) {
        return Err(Error::domain("m", "Dirichlet parameters must be finite and > 0"));
    }
    let mut logs = [0.0; 4];
    for (l, &a) in logs.iter_mut().zip(m) {
        *l = ln_gamma_variate(a, rng);
    }
    let max = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut out = [0.0; 4];
    let mut total = 0.0;
    for (o, l) in out.iter_mut().zip(&logs) {
        *o = libm::exp(l - max);
        total += *o;
    }
    for o in out.iter_mut() {
        *o /= total;
    }
    Ok(out)
}

const INVERSION_CHUNK: u64 = 1000;

/// Binomial(n, p) variate.
///
/// Counts Bernoulli trials for `n <= 64` (the simulation grid tops out at
/// 50); larger `n` is split into chunks of at most 1000 trials sampled by
/// CDF inversion with `p` folded to at most 1/2, which keeps `(1 - p)^chunk`
/// above the subnormal range.
pub fn sample_binomial(p: f64, n: u64, rng: &mut RngStream) -> Result<u64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain("p", "binomial probability must lie in [0, 1]"));
    }
    if n < 1 {
        return Err(Error::domain("n", "binomial trial count must be >= 1"));
    }
    if p == 0.0 {
        return Ok(0);
    }
    if p == 1.0 {
        return Ok(n);
    }
    if n <= 64 {
        return Ok((0..n).filter(|_| rng.uniform() < p).count() as u64);
    }
    let (q, flipped) = if p > 0.5 { (1.0 - p, true) } else { (p, false) };
    let mut successes = 0;
    let mut remaining = n;
    while remaining > 0 {
        let chunk = remaining.min(INVERSION_CHUNK);
        successes += invert_binomial(q, chunk, rng);
        remaining -= chunk;
    }
    Ok(if flipped { n - successes } else { successes })
}

fn invert_binomial(p: f64, n: u64, rng: &mut RngStream) -> u64 {
    let odds = p / (1.0 - p);
    let mut mass = libm::pow(1.0 - p, n as f64);
    let mut u = rng.uniform();
    let mut x = 0;
    while u >= mass && x < n {
        u -= mass;
        x += 1;
        mass *= odds * (n - x + 1) as f64 / x as f64;
    }
    x
}

/// Index drawn from a categorical distribution.
pub fn sample_categorical(probs: &[f64], rng: &mut RngStream) -> Result<usize> {
    if probs.is_empty() {
        return Err(Error::domain("probs", "categorical distribution needs at least one entry"));
    }
    if probs.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
        return Err(Error::domain("probs", "probabilities must be finite and nonnegative"));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::domain("probs", "probabilities must sum to 1 within 1e-9"));
    }
    let u = rng.uniform() * total;
    let mut cumulative = 0.0;
    let mut last_positive = 0;
    for (j, &p) in probs.iter().enumerate() {
        if p > 0.0 {
            last_positive = j;
            cumulative += p;
            if u < cumulative {
                return Ok(j);
            }
        }
    }
    Ok(last_positive)
}
