//! Half-line moments `I_alpha(a) = int_a^inf (1 + r^2)^{-alpha} dr` by three
//! independent routes: a geometric series, a backward moment recursion, and
//! adaptive quadrature of the defining integral.
//!
//! The series and the recursion both factor out `(1 + a^2)^{-alpha}`, so the
//! log of the moment stays finite far past the point where the plain value
//! underflows (large `alpha * ln(1 + a^2)`). Ratios of moments should be
//! taken through [`HalfLineMoment::ln_value`].

use super::quad::{quad_1d, Domain, QuadResult, QuadratureSpec};
use crate::error::Error;
use crate::Result;

/// Which route produced a moment value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum MomentMethod {
    Series,
    Recursion,
    Quadrature,
}

/// One evaluated half-line moment.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct HalfLineMoment {
    pub alpha: f64,
    pub a: f64,
    pub ln_value: f64,
    pub method: MomentMethod,
}

impl HalfLineMoment {
    /// The moment itself. May underflow to zero for extreme parameters even
    /// though `ln_value` stays finite.
    pub fn value(&self) -> f64 {
        self.ln_value.exp()
    }
}

fn check_args(alpha: f64, a: f64) -> Result<()> {
    if !(alpha > 0.5) {
        return Err(Error::Domain(format!(
            "half-line moment needs alpha > 1/2, got {alpha}"
        )));
    }
    if !(a > 0.0) {
        return Err(Error::Domain(format!(
            "half-line moment needs a > 0, got {a}"
        )));
    }
    Ok(())
}

/// Series route:
/// `I_alpha(a) = a * sum_k (2a+2k-1)^{-1} prod_{i<k} (2a+2i)/(2a+2i-1) * (1+a^2)^{-(alpha+k)}`.
///
/// The common factor `(1+a^2)^{-alpha}` is pulled out so the partial sums
/// stay O(1); terms are added until one falls below `1e-16` of the running
/// sum. Convergence is geometric with ratio `(1+a^2)^{-1}`, which is the
/// reason for the `a <= 0.05` cutoff: below it the caller must integrate.
pub fn half_line_moment_series(alpha: f64, a: f64) -> Result<HalfLineMoment> {
    check_args(alpha, a)?;
    if a <= 0.05 {
        return Err(Error::SlowConvergence { alpha, a });
    }
    let w = 1.0 / (1.0 + a * a);
    let mut product = 1.0_f64; // prod_{i<k} (2a+2i)/(2a+2i-1)
    let mut weight = 1.0_f64; // w^k
    let mut sum = 0.0_f64;
    let mut k = 0u64;
    loop {
        let denom = 2.0 * alpha + 2.0 * k as f64 - 1.0;
        let term = product * weight / denom;
        sum += term;
        if term < 1e-16 * sum {
            break;
        }
        product *= (2.0 * alpha + 2.0 * k as f64) / denom;
        weight *= w;
        k += 1;
        if k > 5_000_000 {
            return Err(Error::SlowConvergence { alpha, a });
        }
    }
    let ln_value = a.ln() + sum.ln() - alpha * (a * a).ln_1p();
    Ok(HalfLineMoment {
        alpha,
        a,
        ln_value,
        method: MomentMethod::Series,
    })
}

/// Backward-recursion route.
///
/// With `G_k = I_{alpha+k}(a) (1+a^2)^{alpha+k}`, the integration-by-parts
/// relation becomes the contraction
/// `G_k = (2b / ((2b-1)(1+a^2))) G_{k+1} + a/(2b-1)` at `b = alpha + k`,
/// so starting from `G_K = 0` at a depth where `(1+a^2)^{-K}` is below
/// roundoff and iterating down reproduces the moment to full precision.
pub fn half_line_moment_recursion(alpha: f64, a: f64) -> Result<HalfLineMoment> {
    check_args(alpha, a)?;
    let ln1p = (a * a).ln_1p();
    let depth_f = 18.0 * std::f64::consts::LN_10 / ln1p;
    if !depth_f.is_finite() || depth_f > 5.0e6 {
        return Err(Error::SlowConvergence { alpha, a });
    }
    let depth = depth_f.ceil() as u64 + 8;
    let w = 1.0 / (1.0 + a * a);
    let mut g = 0.0_f64;
    for k in (0..depth).rev() {
        let b2 = 2.0 * (alpha + k as f64);
        g = b2 / (b2 - 1.0) * w * g + a / (b2 - 1.0);
    }
    Ok(HalfLineMoment {
        alpha,
        a,
        ln_value: g.ln() - alpha * ln1p,
        method: MomentMethod::Recursion,
    })
}

/// Quadrature route: adaptive integration of the defining integral with the
/// tail mapped rationally onto `[0, 1)`.
pub fn half_line_moment_quadrature(alpha: f64, a: f64) -> Result<HalfLineMoment> {
    check_args(alpha, a)?;
    let q = quad_with_spec(alpha, a, &QuadratureSpec::default())?.require_converged()?;
    if !(q > 0.0) {
        return Err(Error::Domain(format!(
            "quadrature of the half-line moment underflowed at alpha {alpha}, a {a}"
        )));
    }
    Ok(HalfLineMoment {
        alpha,
        a,
        ln_value: q.ln(),
        method: MomentMethod::Quadrature,
    })
}

fn quad_with_spec(alpha: f64, a: f64, spec: &QuadratureSpec) -> Result<QuadResult> {
    quad_1d(
        |r| (-alpha * (r * r).ln_1p()).exp(),
        Domain::HalfLine { from: a },
        spec,
    )
}

/// Residual of the integration-by-parts relation
/// `I_alpha = (2 alpha / (2 alpha - 1)) I_{alpha+1} + a (1+a^2)^{-alpha} / (2 alpha - 1)`,
/// with both moments evaluated by quadrature. The contract is
/// `residual <= 1e-11 * I_alpha(a)`.
pub fn half_line_moment_recursion_check(alpha: f64, a: f64) -> Result<f64> {
    check_args(alpha, a)?;
    let i_alpha = half_line_moment_quadrature(alpha, a)?.value();
    let i_next = half_line_moment_quadrature(alpha + 1.0, a)?.value();
    let boundary = a * (-alpha * (a * a).ln_1p()).exp() / (2.0 * alpha - 1.0);
    Ok((i_alpha - 2.0 * alpha / (2.0 * alpha - 1.0) * i_next - boundary).abs())
}

/// Moment at zero offset, `I_alpha(0) = B(1/2, alpha - 1/2) / 2`, used when
/// the boundary mean curvature degenerates to zero.
pub fn half_line_moment_zero_offset(alpha: f64) -> Result<HalfLineMoment> {
    if !(alpha > 0.5) {
        return Err(Error::Domain(format!(
            "half-line moment needs alpha > 1/2, got {alpha}"
        )));
    }
    let ln_value = super::ln_beta(0.5, alpha - 0.5)? - std::f64::consts::LN_2;
    Ok(HalfLineMoment {
        alpha,
        a: 0.0,
        ln_value,
        method: MomentMethod::Recursion,
    })
}

/// `c_q = I_{(n-5-2q)/2}(-T_c)`, the half-line moment carrying the
/// `t`-integral of the reduced energy. Integrability needs
/// `n - 5 - 2q > 1`; the route is the series for `-T_c > 0.05` and
/// quadrature otherwise.
pub fn c_q(n: i64, t_c: f64, q: u32) -> Result<HalfLineMoment> {
    if !(t_c < 0.0) {
        return Err(Error::Domain(format!("c_q needs T_c < 0, got {t_c}")));
    }
    let exponent = n - 5 - 2 * i64::from(q);
    if exponent <= 1 {
        return Err(Error::DivergentMoment { n, q, exponent });
    }
    let alpha = exponent as f64 / 2.0;
    let a = -t_c;
    if a > 0.05 {
        half_line_moment_series(alpha, a)
    } else {
        half_line_moment_quadrature(alpha, a)
    }
}
