//! The warped-product non-uniqueness comparison.
//!
//! On the product of a manifold with boundary (scaled by `k`) and a closed
//! factor, the metric invariants are `h_g = k^{-1/2} h_{g1}` and
//! `R_g = k^{-1} R_{g1} + R_{g2}`. The constant solution has energy
//!
//! ```text
//! I[1] = (2/n)(k^{-1} R_{g1} + R_{g2}) k^{n1/2} V1 V2
//!        + 2 k^{-1/2} h_{g1} k^{(n1-1)/2} Vhat1 V2,
//! ```
//!
//! growing like `k^{n1/2}`, while the bubble energy
//! `S_c(k) = (2/n) R_g int W^{2n/(n-2)} + 2 h_g int_bdy W^{2(n-1)/(n-2)}`
//! tends to the finite limit `S_c(inf) = R_{g2} (n(n-1)/R_{g2})^{n/2} omega_n / n`
//! (with `omega_n = |S^n|`). The first `k` at which `I[1]` clears
//! `S_c(k) + 1` quantifies "k sufficiently large" in the distinctness
//! argument.

use crate::error::Error;
use crate::specfun::{
    self, half_line_moment_quadrature, half_line_moment_series, half_line_moment_zero_offset,
    quad_1d, quad_2d_half_lines, Domain, QuadratureSpec,
};
use crate::Result;
use serde::Serialize;

/// Geometric data of the warped product.
#[derive(Debug, Clone, Serialize)]
pub struct WarpedProductSpec {
    pub n1: usize,
    pub n2: usize,
    pub r_g1: f64,
    pub h_g1: f64,
    pub r_g2: f64,
    pub v1: f64,
    pub vhat1: f64,
    pub v2: f64,
}

impl WarpedProductSpec {
    pub fn new(
        n1: usize,
        n2: usize,
        r_g1: f64,
        h_g1: f64,
        r_g2: f64,
        v1: f64,
        vhat1: f64,
        v2: f64,
    ) -> Result<Self> {
        if n1 < 3 || n2 < 2 {
            return Err(Error::Domain(format!(
                "warped product needs n1 >= 3 and n2 >= 2, got ({n1}, {n2})"
            )));
        }
        for (name, v) in [
            ("R_g1", r_g1),
            ("h_g1", h_g1),
            ("R_g2", r_g2),
            ("V1", v1),
            ("Vhat1", vhat1),
            ("V2", v2),
        ] {
            if !(v > 0.0) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Self {
            n1,
            n2,
            r_g1,
            h_g1,
            r_g2,
            v1,
            vhat1,
            v2,
        })
    }

    /// Reference data used throughout the §2-style checks:
    /// `n1 = 3, n2 = 2, R_g1 = 6, h_g1 = 2, R_g2 = 2`, unit volumes.
    pub fn reference() -> Self {
        Self::new(3, 2, 6.0, 2.0, 2.0, 1.0, 1.0, 1.0).expect("reference data valid")
    }

    pub fn n(&self) -> usize {
        self.n1 + self.n2
    }
}

/// Scalar curvature, boundary mean curvature, and `T_c = -h_g/2` of the
/// product at warping constant `k`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WarpedInvariants {
    pub r_g: f64,
    pub h_g: f64,
    pub t_c: f64,
}

pub fn warped_invariants(spec: &WarpedProductSpec, k: f64) -> Result<WarpedInvariants> {
    if !(k > 0.0) {
        return Err(Error::Domain(format!("warping constant must be positive, got {k}")));
    }
    let h_g = spec.h_g1 / k.sqrt();
    Ok(WarpedInvariants {
        r_g: spec.r_g1 / k + spec.r_g2,
        h_g,
        t_c: -h_g / 2.0,
    })
}

/// Energy of the constant solution `u = 1`.
pub fn energy_of_one(spec: &WarpedProductSpec, k: f64) -> Result<f64> {
    if !(k > 0.0) {
        return Err(Error::Domain(format!("warping constant must be positive, got {k}")));
    }
    let n = spec.n() as f64;
    let n1 = spec.n1 as f64;
    let bulk = 2.0 / n * (spec.r_g1 / k + spec.r_g2) * k.powf(n1 / 2.0) * spec.v1 * spec.v2;
    let boundary =
        2.0 / k.sqrt() * spec.h_g1 * k.powf((n1 - 1.0) / 2.0) * spec.vhat1 * spec.v2;
    Ok(bulk + boundary)
}

fn ln_half_line_moment(alpha: f64, a: f64) -> Result<f64> {
    if a == 0.0 {
        Ok(half_line_moment_zero_offset(alpha)?.ln_value)
    } else if a > 0.05 {
        Ok(half_line_moment_series(alpha, a)?.ln_value)
    } else {
        Ok(half_line_moment_quadrature(alpha, a)?.ln_value)
    }
}

/// Total energy of the standard bubble with data `(R_g, h_g)`, closed form.
///
/// Centering the bubble reduces the interior term to
/// `2^{n-1} |S^{n-2}| B((n-1)/2, (n+1)/2) I_{(n+1)/2}(-T_c)` and the
/// boundary term to a single radial Beta moment at offset `T_c = -h_g/2`.
pub fn bubble_total_energy(r_g: f64, h_g: f64, n: usize) -> Result<f64> {
    if n < 5 {
        return Err(Error::Domain(format!("bubble energy needs n >= 5, got {n}")));
    }
    if !(r_g > 0.0) || h_g < 0.0 {
        return Err(Error::Domain(format!(
            "bubble energy needs R_g > 0 and h_g >= 0, got ({r_g}, {h_g})"
        )));
    }
    let nf = n as f64;
    let t_c = -h_g / 2.0;
    let a = -t_c;

    // interior: (2/n) R_g (n(n-1)/R_g)^{n/2} 2^{n-1} |S^{n-2}|
    //           B((n-1)/2, (n+1)/2) I_{(n+1)/2}(a)
    let ln_interior = (2.0 / nf * r_g).ln()
        + nf / 2.0 * (nf * (nf - 1.0) / r_g).ln()
        + (nf - 1.0) * std::f64::consts::LN_2
        + specfun::ln_sphere_area(n - 1)?
        + specfun::ln_beta((nf - 1.0) / 2.0, (nf + 1.0) / 2.0)?
        + ln_half_line_moment((nf + 1.0) / 2.0, a)?;

    // boundary: 2 h_g (n(n-1)/R_g)^{(n-1)/2} 2^{n-2} |S^{n-2}|
    //           (1+T_c^2)^{-(n-1)/2} B((n-1)/2, (n-1)/2)
    let boundary = if h_g == 0.0 {
        0.0
    } else {
        ((2.0 * h_g).ln()
            + (nf - 1.0) / 2.0 * (nf * (nf - 1.0) / r_g).ln()
            + (nf - 2.0) * std::f64::consts::LN_2
            + specfun::ln_sphere_area(n - 1)?
            - (nf - 1.0) / 2.0 * (1.0 + t_c * t_c).ln()
            + specfun::ln_beta((nf - 1.0) / 2.0, (nf - 1.0) / 2.0)?)
        .exp()
    };
    Ok(ln_interior.exp() + boundary)
}

/// The same energy by direct quadrature of the two integrals.
pub fn bubble_total_energy_quadrature(r_g: f64, h_g: f64, n: usize) -> Result<f64> {
    if n < 5 {
        return Err(Error::Domain(format!("bubble energy needs n >= 5, got {n}")));
    }
    let nf = n as f64;
    let t_c = -h_g / 2.0;
    let a = -t_c;
    let s_area = specfun::sphere_area(n - 1)?;
    let scale_pow = (nf * (nf - 1.0) / r_g).powf(nf / 2.0);

    let inner = QuadratureSpec::default().with_rel_tol(1e-10);
    let outer = QuadratureSpec::default().with_rel_tol(1e-9);
    // int_{R^n_+} (2/(1+|x - T_c e_n|^2))^n dx, recentered to t >= -T_c
    let interior_int = quad_2d_half_lines(
        |t: f64, r: f64| {
            ((nf - 2.0) * r.ln() - nf * (1.0 + t * t + r * r).ln() + nf * std::f64::consts::LN_2)
                .exp()
        },
        a,
        0.0,
        &outer,
        &inner,
    )?
    .require_converged()?
        * s_area;
    let interior = 2.0 / nf * r_g * scale_pow * interior_int;

    let boundary = if h_g == 0.0 {
        0.0
    } else {
        let scale_pow_bdy = (nf * (nf - 1.0) / r_g).powf((nf - 1.0) / 2.0);
        let boundary_int = quad_1d(
            |r: f64| {
                ((nf - 2.0) * r.ln() - (nf - 1.0) * (1.0 + t_c * t_c + r * r).ln()
                    + (nf - 1.0) * std::f64::consts::LN_2)
                    .exp()
            },
            Domain::HalfLine { from: 0.0 },
            &inner,
        )?
        .require_converged()?
            * s_area;
        2.0 * h_g * scale_pow_bdy * boundary_int
    };
    Ok(interior + boundary)
}

/// `S_c(k)`: bubble energy at the `k`-dependent invariants.
pub fn sc_of_k(spec: &WarpedProductSpec, k: f64) -> Result<f64> {
    let inv = warped_invariants(spec, k)?;
    bubble_total_energy(inv.r_g, inv.h_g, spec.n())
}

/// The `k -> infinity` limit `S_c(inf) = R_{g2} (n(n-1)/R_{g2})^{n/2} omega_n / n`,
/// with `omega_n = |S^n|` the full sphere measure.
pub fn sc_infinity(r_g2: f64, n: usize) -> Result<f64> {
    if n < 5 {
        return Err(Error::Domain(format!("S_c(inf) needs n >= 5, got {n}")));
    }
    let nf = n as f64;
    let omega_n = specfun::sphere_area(n + 1)?;
    Ok(r_g2 * (nf * (nf - 1.0) / r_g2).powf(nf / 2.0) * omega_n / nf)
}

/// Quadrature check of the half-space volume identity
/// `int_{R^n_+} (2/(1+|x|^2))^n dx = omega_n / 2` together with the
/// falsification against the wrong convention `omega_n = |S^{n-1}|`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StereographicCheck {
    pub quadrature: f64,
    pub rel_err: f64,
    /// relative gap when omega_n is (wrongly) taken to be |S^{n-1}|
    pub rel_err_wrong_convention: f64,
}

pub fn stereographic_volume_check(n: usize) -> Result<StereographicCheck> {
    if !(4..=10).contains(&n) {
        return Err(Error::Domain(format!(
            "volume check is quadrature-feasible for 4 <= n <= 10, got {n}"
        )));
    }
    let nf = n as f64;
    // radial reduction over the full space, halved
    let radial = quad_1d(
        |r: f64| ((nf - 1.0) * r.ln() - nf * (1.0 + r * r).ln() + nf * std::f64::consts::LN_2).exp(),
        Domain::HalfLine { from: 0.0 },
        &QuadratureSpec::default().with_rel_tol(1e-11),
    )?
    .require_converged()?;
    let quadrature = 0.5 * specfun::sphere_area(n)? * radial;
    let omega_n_half = 0.5 * specfun::sphere_area(n + 1)?;
    let wrong_half = 0.5 * specfun::sphere_area(n)?;
    Ok(StereographicCheck {
        quadrature,
        rel_err: (quadrature - omega_n_half).abs() / omega_n_half,
        rel_err_wrong_convention: (quadrature - wrong_half).abs() / wrong_half,
    })
}

/// Threshold search result.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdReport {
    pub spec: WarpedProductSpec,
    pub threshold_k: f64,
    pub i1_at_threshold: f64,
    pub sck_at_threshold: f64,
    pub sc_infinity: f64,
    /// `I[1] - S_c(k)` at the threshold; exceeds 1 by construction
    pub margin: f64,
    /// whether `I[1] > S_c(inf) + 1` also holds there
    pub clears_limit: bool,
}

/// Smallest `k` (geometric grid of ratio 1.1 on `[1, 1e12]`, refined by
/// bisection to 1e-3 relative) with `I[1](k) > S_c(k) + 1`.
pub fn threshold_k(spec: &WarpedProductSpec) -> Result<ThresholdReport> {
    let exceeds = |k: f64| -> Result<bool> {
        Ok(energy_of_one(spec, k)? > sc_of_k(spec, k)? + 1.0)
    };
    let mut k_prev = 1.0f64;
    let mut k = 1.0f64;
    let mut found = false;
    while k <= 1.0e12 {
        if exceeds(k)? {
            found = true;
            break;
        }
        k_prev = k;
        k *= 1.1;
    }
    if !found {
        return Err(Error::SearchExhausted { limit: 1.0e12 });
    }
    let (mut lo, mut hi) = (k_prev, k);
    while (hi - lo) / lo > 1e-3 {
        let mid = 0.5 * (lo + hi);
        if exceeds(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let threshold = hi;
    let i1 = energy_of_one(spec, threshold)?;
    let sck = sc_of_k(spec, threshold)?;
    let sc_inf = sc_infinity(spec.r_g2, spec.n())?;
    Ok(ThresholdReport {
        spec: spec.clone(),
        threshold_k: threshold,
        i1_at_threshold: i1,
        sck_at_threshold: sck,
        sc_infinity: sc_inf,
        margin: i1 - sck,
        clears_limit: i1 > sc_inf + 1.0,
    })
}
