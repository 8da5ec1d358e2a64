//! Special functions and moment primitives: log-gamma and Beta, sphere
//! areas, half-line moments `I_alpha(a)`, radial Beta moments, exact sphere
//! monomial moments, and the adaptive quadrature every closed form is
//! checked against.
//!
//! All Gamma/Beta evaluation goes through `ln_gamma`; exponent ranges up to
//! `n ~ 200` make the direct Gamma overflow long before the quantities of
//! interest do.

mod halfline;
mod quad;

pub use halfline::{
    c_q, half_line_moment_quadrature, half_line_moment_recursion,
    half_line_moment_recursion_check, half_line_moment_series, half_line_moment_zero_offset,
    HalfLineMoment, MomentMethod,
};
pub use quad::{quad_1d, quad_2d_half_lines, Domain, QuadResult, QuadratureSpec, Transform};

use crate::error::Error;
use crate::Result;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the Gamma function, Lanczos approximation (g = 7, n = 9).
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection through Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return PI.ln() - (PI * x).sin().abs().ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// `ln B(p, q)` for positive arguments.
pub fn ln_beta(p: f64, q: f64) -> Result<f64> {
    if !(p > 0.0) || !(q > 0.0) {
        return Err(Error::Domain(format!(
            "beta needs positive arguments, got ({p}, {q})"
        )));
    }
    Ok(ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q))
}

/// Beta function `B(p, q) = Gamma(p) Gamma(q) / Gamma(p + q)`, evaluated in
/// log space.
pub fn beta(p: f64, q: f64) -> Result<f64> {
    Ok(ln_beta(p, q)?.exp())
}

/// `ln |S^{m-1}|` for the unit sphere in `R^m`.
pub fn ln_sphere_area(m: usize) -> Result<f64> {
    if m < 1 {
        return Err(Error::Domain(format!("sphere_area needs m >= 1, got {m}")));
    }
    let mf = m as f64;
    Ok(std::f64::consts::LN_2 + 0.5 * mf * PI.ln() - ln_gamma(0.5 * mf))
}

/// `|S^{m-1}| = 2 pi^{m/2} / Gamma(m/2)`, the `(m-1)`-measure of the unit
/// sphere in `R^m`.
pub fn sphere_area(m: usize) -> Result<f64> {
    Ok(ln_sphere_area(m)?.exp())
}

/// `ln` of the radial Beta moment
/// `int_0^inf r^s (A + r^2)^{-p} dr = A^{(s+1)/2 - p} B((s+1)/2, p - (s+1)/2) / 2`.
pub fn ln_radial_beta_moment(s: f64, p: f64, a_scale: f64) -> Result<f64> {
    if !(s > -1.0) {
        return Err(Error::Domain(format!(
            "radial moment needs s > -1, got {s}"
        )));
    }
    let first = 0.5 * (s + 1.0);
    let second = p - first;
    if !(second > 0.0) {
        return Err(Error::Domain(format!(
            "radial moment diverges: p - (s+1)/2 = {second} must be positive"
        )));
    }
    if !(a_scale > 0.0) {
        return Err(Error::Domain(format!(
            "radial moment needs A > 0, got {a_scale}"
        )));
    }
    Ok((first - p) * a_scale.ln() + ln_beta(first, second)? - std::f64::consts::LN_2)
}

/// Radial Beta moment in plain value form; see [`ln_radial_beta_moment`].
pub fn radial_beta_moment(s: f64, p: f64, a_scale: f64) -> Result<f64> {
    Ok(ln_radial_beta_moment(s, p, a_scale)?.exp())
}

/// Exact moment of a monomial over the unit sphere `S^{m-1}` in `R^m`:
/// zero when any exponent is odd, otherwise
/// `2 prod_i Gamma((e_i + 1)/2) / Gamma((m + sum e_i)/2)`.
///
/// Missing trailing exponents count as zero; for radius `r` scale the result
/// by `r^{m - 1 + sum e_i}`.
pub fn monomial_sphere_moment(m: usize, exponents: &[u32]) -> Result<f64> {
    if m < 2 {
        return Err(Error::Domain(format!(
            "sphere moments need m >= 2, got {m}"
        )));
    }
    if exponents.len() > m {
        return Err(Error::Domain(format!(
            "{} exponents given for {m} coordinates",
            exponents.len()
        )));
    }
    if exponents.iter().any(|e| e % 2 == 1) {
        return Ok(0.0);
    }
    let total: u32 = exponents.iter().sum();
    let mut ln = std::f64::consts::LN_2 - ln_gamma(0.5 * (m as f64 + f64::from(total)));
    for &e in exponents {
        ln += ln_gamma(0.5 * (f64::from(e) + 1.0));
    }
    // coordinates beyond the listed exponents contribute Gamma(1/2) each
    ln += (m - exponents.len()) as f64 * ln_gamma(0.5);
    Ok(ln.exp())
}

/// Moment of `prod_i |x_i|^{p_i}` over the unit sphere for real `p_i > -1`.
/// Same Gamma product as the monomial case; used for the `L^p` norms of the
/// derivative kernels where `p` is fractional.
pub(crate) fn sphere_abs_moment(m: usize, powers: &[f64]) -> Result<f64> {
    if m < 2 {
        return Err(Error::Domain(format!(
            "sphere moments need m >= 2, got {m}"
        )));
    }
    if powers.len() > m {
        return Err(Error::Domain("more powers than coordinates".into()));
    }
    let mut total = 0.0;
    let mut ln = std::f64::consts::LN_2;
    for &p in powers {
        if !(p > -1.0) {
            return Err(Error::Domain(format!("|x|^p moment needs p > -1, got {p}")));
        }
        total += p;
        ln += ln_gamma(0.5 * (p + 1.0));
    }
    ln += (m - powers.len()) as f64 * ln_gamma(0.5);
    ln -= ln_gamma(0.5 * (m as f64 + total));
    Ok(ln.exp())
}
