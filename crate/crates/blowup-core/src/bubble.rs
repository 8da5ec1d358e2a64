//! The standard bubble family on the upper half-space and its derivative
//! kernels.
//!
//! With `D(x) = eps^2 + (x_n - T_c eps)^2 + |x' - xi|^2` the bubble is
//! `u(x) = (eps / D)^{(n-2)/2}`; it solves
//! `-Delta u = n(n-2) u^{(n+2)/(n-2)}` in the interior with the boundary
//! condition `du/dx_n = (n-2) T_c u^{n/(n-2)}` at `x_n = 0`, and the
//! conformal metric it generates is Einstein.
//!
//! All residual checks are evaluated in a scaled form: the common factor
//! `eps^{n-2} D^{-...}` is divided out symbolically so that what remains is
//! the genuine floating-point cancellation the identity asserts, without
//! ever forming numbers of size 10^{+-300} at `n = 62`.

use crate::error::Error;
use crate::specfun::{
    self, quad_1d, quad_2d_half_lines, sphere_abs_moment, Domain, QuadratureSpec,
};
use crate::Result;

/// Parameters `(n, T_c, xi, eps)` of one bubble.
#[derive(Debug, Clone)]
pub struct BubbleParams {
    pub n: usize,
    pub t_c: f64,
    pub xi: Vec<f64>,
    pub eps: f64,
}

impl BubbleParams {
    pub fn new(n: usize, t_c: f64, xi: Vec<f64>, eps: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("bubble needs n >= 3, got {n}")));
        }
        if !(t_c < 0.0) {
            return Err(Error::Domain(format!("bubble needs T_c < 0, got {t_c}")));
        }
        if !(eps > 0.0) {
            return Err(Error::Domain(format!("bubble needs eps > 0, got {eps}")));
        }
        if xi.len() != n - 1 {
            return Err(Error::Config(format!(
                "xi has dimension {}, expected {}",
                xi.len(),
                n - 1
            )));
        }
        Ok(Self { n, t_c, xi, eps })
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::Config(format!(
                "point has dimension {}, expected {}",
                x.len(),
                self.n
            )));
        }
        Ok(())
    }

    /// `D(x) = eps^2 + (x_n - T_c eps)^2 + |x' - xi|^2`.
    pub fn denom(&self, x: &[f64]) -> f64 {
        let mut d = self.eps * self.eps;
        let xn = x[self.n - 1] - self.t_c * self.eps;
        d += xn * xn;
        for (xi_a, xa) in self.xi.iter().zip(x) {
            d += (xa - xi_a) * (xa - xi_a);
        }
        d
    }

    /// Gradient of `D`: `2(x' - xi, x_n - T_c eps)`.
    fn grad_denom(&self, x: &[f64]) -> Vec<f64> {
        let mut g: Vec<f64> = self
            .xi
            .iter()
            .zip(x)
            .map(|(xi_a, xa)| 2.0 * (xa - xi_a))
            .collect();
        g.push(2.0 * (x[self.n - 1] - self.t_c * self.eps));
        g
    }

    /// `ln(eps / D)`; the bubble is `exp((n-2)/2 * ln_ratio)`.
    pub fn ln_ratio(&self, x: &[f64]) -> f64 {
        self.eps.ln() - self.denom(x).ln()
    }
}

/// `u(x)`, evaluated through the exponential of `(n-2)/2 ln(eps/D)` so the
/// value underflows gracefully instead of losing its exponent at large `n`.
pub fn eval_bubble(p: &BubbleParams, x: &[f64]) -> Result<f64> {
    p.check_point(x)?;
    if x[p.n - 1] < 0.0 {
        return Err(Error::Domain("point below the boundary".into()));
    }
    Ok(((p.n as f64 - 2.0) / 2.0 * p.ln_ratio(x)).exp())
}

/// Analytic gradient `grad u = -((n-2)/2) u grad(D) / D`.
pub fn bubble_gradient(p: &BubbleParams, x: &[f64]) -> Result<Vec<f64>> {
    let u = eval_bubble(p, x)?;
    let d = p.denom(x);
    let factor = -(p.n as f64 - 2.0) / 2.0 * u / d;
    Ok(p.grad_denom(x).into_iter().map(|g| factor * g).collect())
}

/// Relative interior residual
/// `(-Delta u - n(n-2) u^{(n+2)/(n-2)}) / (n(n-2) u^{(n+2)/(n-2)})`,
/// computed from the scaled Hessian so the only arithmetic left is the
/// cancellation the equation asserts.
pub fn interior_residual(p: &BubbleParams, x: &[f64]) -> Result<f64> {
    p.check_point(x)?;
    if !(x[p.n - 1] > 0.0) {
        return Err(Error::Domain("interior residual needs x_n > 0".into()));
    }
    let nf = p.n as f64;
    let m = (nf - 2.0) / 2.0;
    let d = p.denom(x);
    let grad: Vec<f64> = p.grad_denom(x);
    let grad_sq: f64 = grad.iter().map(|g| g * g).sum();
    // -Delta u / (eps^m D^{-m-2}) = 2 m n D - m (m+1) |grad D|^2
    let neg_lap_scaled = 2.0 * m * nf * d - m * (m + 1.0) * grad_sq;
    let rhs_scaled = nf * (nf - 2.0) * p.eps * p.eps;
    Ok((neg_lap_scaled - rhs_scaled) / rhs_scaled)
}

/// Relative boundary residual of `du/dx_n = (n-2) T_c u^{n/(n-2)}` at
/// `(x', 0)`. The two sides travel different code paths (gradient formula
/// versus an independent exponential of `ln(eps/D)`).
pub fn boundary_residual(p: &BubbleParams, x_prime: &[f64]) -> Result<f64> {
    if x_prime.len() != p.n - 1 {
        return Err(Error::Config(format!(
            "boundary point has dimension {}, expected {}",
            x_prime.len(),
            p.n - 1
        )));
    }
    let mut x = x_prime.to_vec();
    x.push(0.0);
    let grad = bubble_gradient(p, &x)?;
    let lhs = grad[p.n - 1];
    let nf = p.n as f64;
    let rhs = (nf - 2.0) * p.t_c * (nf / 2.0 * p.ln_ratio(&x)).exp();
    if rhs == 0.0 {
        return Err(Error::Domain("bubble underflowed at this point".into()));
    }
    Ok(lhs / rhs - 1.0)
}

/// Einstein-identity residual: the scaled `LHS - RHS` matrix of
/// `du du - c_n Hess(u^2) = (1/n)(|grad u|^2 - c_n Delta(u^2)) I` (common
/// factor `eps^{n-2} D^{-n-2}` divided out) and the largest entry relative
/// to the `|grad u|^2` scale.
pub struct EinsteinResidual {
    pub matrix: Vec<f64>,
    pub max_rel: f64,
}

pub fn einstein_residual(p: &BubbleParams, x: &[f64]) -> Result<EinsteinResidual> {
    p.check_point(x)?;
    if !(x[p.n - 1] > 0.0) {
        return Err(Error::Domain("Einstein residual needs x_n > 0".into()));
    }
    let n = p.n;
    let nf = n as f64;
    let m = (nf - 2.0) / 2.0;
    let c_n = (nf - 2.0) / (4.0 * (nf - 1.0));
    let d = p.denom(x);
    let grad = p.grad_denom(x);
    let grad_sq: f64 = grad.iter().map(|g| g * g).sum();

    // scaled by eps^{2m} D^{-2m-2}:
    //   du_a du_b        -> m^2 dD_a dD_b
    //   Hess_ab(u^2)     -> 2m(2m+1) dD_a dD_b - 4 m D delta_ab
    let diag = (m * m * grad_sq
        - c_n * (2.0 * m * (2.0 * m + 1.0) * grad_sq - 4.0 * m * nf * d))
        / nf;
    let mut matrix = vec![0.0f64; n * n];
    let mut max_abs = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let lhs = m * m * grad[a] * grad[b]
                - c_n * (2.0 * m * (2.0 * m + 1.0) * grad[a] * grad[b]
                    - if a == b { 4.0 * m * d } else { 0.0 });
            let r = lhs - if a == b { diag } else { 0.0 };
            matrix[a * n + b] = r;
            max_abs = max_abs.max(r.abs());
        }
    }
    let scale = m * m * grad_sq;
    Ok(EinsteinResidual {
        matrix,
        max_rel: max_abs / scale,
    })
}

/// Which kernel family to evaluate: the interior pairing kernels
/// `u_{(xi,eps,a)}` or the boundary ones `u-hat`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelVariant {
    Interior,
    BoundaryHat,
}

/// Derivative kernel at `x`; `a` is the 1-based direction, `a = n` being
/// the dilation kernel with numerator `(1+T_c^2) eps^2 - x_n^2 - |x'-xi|^2`.
pub fn eval_kernel(p: &BubbleParams, a: usize, variant: KernelVariant, x: &[f64]) -> Result<f64> {
    p.check_point(x)?;
    if a == 0 || a > p.n {
        return Err(Error::Config(format!(
            "kernel index {a} outside 1..={}",
            p.n
        )));
    }
    let nf = p.n as f64;
    let d = p.denom(x);
    let power = match variant {
        KernelVariant::Interior => (nf + 2.0) / 2.0,
        KernelVariant::BoundaryHat => nf / 2.0,
    };
    let numerator = if a < p.n {
        2.0 * p.eps * (x[a - 1] - p.xi[a - 1])
    } else {
        let xn = x[p.n - 1];
        let tang: f64 = p
            .xi
            .iter()
            .zip(x)
            .map(|(xi_a, xa)| (xa - xi_a) * (xa - xi_a))
            .sum();
        (1.0 + p.t_c * p.t_c) * p.eps * p.eps - xn * xn - tang
    };
    Ok((power * p.ln_ratio(x)).exp() * numerator / d)
}

/// Norms of one kernel: `L^{2n/(n+2)}` of `u_{(xi,eps,a)}` over the
/// half-space and `L^{2(n-1)/n}` of the boundary kernel over the boundary.
#[derive(Debug, Clone)]
pub struct KernelNorms {
    pub interior: f64,
    pub boundary: f64,
}

/// Spread report over several `(xi, eps)` pairs.
#[derive(Debug, Clone)]
pub struct KernelNormReport {
    pub norms: Vec<KernelNorms>,
    pub interior_spread: f64,
    pub boundary_spread: f64,
}

fn kernel_norms(p: &BubbleParams, a: usize) -> Result<KernelNorms> {
    let n = p.n;
    let nf = n as f64;
    let eps = p.eps;
    let t_c = p.t_c;
    let p_int = 2.0 * nf / (nf + 2.0);
    let q_bdy = 2.0 * (nf - 1.0) / nf;
    let inner = QuadratureSpec::default().with_rel_tol(1e-9);
    let outer = QuadratureSpec::default().with_rel_tol(1e-8);

    // The xi-translation is removed exactly by centering the radial
    // coordinates, so what these integrals actually probe is eps-invariance.
    let interior_p = if a < n {
        let ang = sphere_abs_moment(n - 1, &[p_int])?;
        let integral = quad_2d_half_lines(
            |t: f64, r: f64| {
                let d = eps * eps + (t - t_c * eps) * (t - t_c * eps) + r * r;
                let ln_profile =
                    (nf + 2.0) / 2.0 * (eps.ln() - d.ln()) + (2.0 * eps).ln() - d.ln();
                ((nf - 2.0 + p_int) * r.ln() + p_int * ln_profile).exp()
            },
            0.0,
            0.0,
            &outer,
            &inner,
        )?
        .require_converged()?;
        ang * integral
    } else {
        let ang = specfun::sphere_area(n - 1)?;
        let integral = quad_2d_half_lines(
            |t: f64, r: f64| {
                let d = eps * eps + (t - t_c * eps) * (t - t_c * eps) + r * r;
                let num = (1.0 + t_c * t_c) * eps * eps - t * t - r * r;
                let ln_profile = (nf + 2.0) / 2.0 * (eps.ln() - d.ln())
                    + num.abs().max(1e-300).ln()
                    - d.ln();
                ((nf - 2.0) * r.ln() + p_int * ln_profile).exp()
            },
            0.0,
            0.0,
            &outer,
            &inner,
        )?
        .require_converged()?;
        ang * integral
    };

    let boundary_q = if a < n {
        let ang = sphere_abs_moment(n - 1, &[q_bdy])?;
        let integral = quad_1d(
            |r: f64| {
                let d0 = (1.0 + t_c * t_c) * eps * eps + r * r;
                let ln_profile = nf / 2.0 * (eps.ln() - d0.ln()) + (2.0 * eps).ln() - d0.ln();
                ((nf - 2.0 + q_bdy) * r.ln() + q_bdy * ln_profile).exp()
            },
            Domain::HalfLine { from: 0.0 },
            &inner,
        )?
        .require_converged()?;
        ang * integral
    } else {
        let ang = specfun::sphere_area(n - 1)?;
        let integral = quad_1d(
            |r: f64| {
                let d0 = (1.0 + t_c * t_c) * eps * eps + r * r;
                let num = (1.0 + t_c * t_c) * eps * eps - r * r;
                let ln_profile =
                    nf / 2.0 * (eps.ln() - d0.ln()) + num.abs().max(1e-300).ln() - d0.ln();
                ((nf - 2.0) * r.ln() + q_bdy * ln_profile).exp()
            },
            Domain::HalfLine { from: 0.0 },
            &inner,
        )?
        .require_converged()?;
        ang * integral
    };

    Ok(KernelNorms {
        interior: interior_p.powf(1.0 / p_int),
        boundary: boundary_q.powf(1.0 / q_bdy),
    })
}

/// Evaluate the two kernel norms at several `(xi, eps)` pairs and report
/// the maximal relative spread of each; the claim under test is that both
/// are constant in `xi` and `eps`.
pub fn kernel_norm_constancy(
    n: usize,
    t_c: f64,
    a: usize,
    pairs: &[(Vec<f64>, f64)],
) -> Result<KernelNormReport> {
    if pairs.len() < 2 {
        return Err(Error::Config("need at least two (xi, eps) pairs".into()));
    }
    let mut norms = Vec::with_capacity(pairs.len());
    for (xi, eps) in pairs {
        let p = BubbleParams::new(n, t_c, xi.clone(), *eps)?;
        norms.push(kernel_norms(&p, a)?);
    }
    let spread = |vals: Vec<f64>| {
        let max = vals.iter().cloned().fold(f64::MIN, f64::max);
        let min = vals.iter().cloned().fold(f64::MAX, f64::min);
        (max - min) / min
    };
    let interior_spread = spread(norms.iter().map(|n| n.interior).collect());
    let boundary_spread = spread(norms.iter().map(|n| n.boundary).collect());
    Ok(KernelNormReport {
        norms,
        interior_spread,
        boundary_spread,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_core::{RngCore, SeedableRng};

    fn unif(rng: &mut rand_chacha::ChaCha8Rng) -> f64 {
        (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn random_interior_point(
        p: &BubbleParams,
        rng: &mut rand_chacha::ChaCha8Rng,
        span: f64,
    ) -> Vec<f64> {
        let mut x: Vec<f64> = p
            .xi
            .iter()
            .map(|xi| xi + (2.0 * unif(rng) - 1.0) * span * p.eps)
            .collect();
        x.push(unif(rng).max(1e-3) * span * p.eps);
        x
    }

    #[test]
    fn spot_value_at_origin() {
        // n = 4, T_c = -1, xi = 0, eps = 1: D(0) = 1 + 1 = 2, u = 1/2
        let p = BubbleParams::new(4, -1.0, vec![0.0; 3], 1.0).unwrap();
        let u = eval_bubble(&p, &[0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((u - 0.5).abs() < 1e-15);
    }

    #[test]
    fn eps_scaling_law() {
        // u_{(0,eps)}(eps x) = eps^{-(n-2)/2} u_{(0,1)}(x)
        let n = 7;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(50);
        let unit = BubbleParams::new(n, -0.7, vec![0.0; n - 1], 1.0).unwrap();
        for &eps in &[0.3, 2.5] {
            let scaled = BubbleParams::new(n, -0.7, vec![0.0; n - 1], eps).unwrap();
            for _ in 0..20 {
                let x = random_interior_point(&unit, &mut rng, 3.0);
                let xs: Vec<f64> = x.iter().map(|v| v * eps).collect();
                let lhs = eval_bubble(&scaled, &xs).unwrap();
                let rhs = eps.powf(-(n as f64 - 2.0) / 2.0) * eval_bubble(&unit, &x).unwrap();
                assert!((lhs - rhs).abs() <= 1e-13 * rhs);
            }
        }
    }

    #[test]
    fn decay_beyond_the_peak() {
        let p = BubbleParams::new(5, -1.0, vec![0.0; 4], 1.0).unwrap();
        let mut prev = f64::INFINITY;
        for k in 1..=10 {
            let r = k as f64;
            let u = eval_bubble(&p, &[r, 0.0, 0.0, 0.0, 0.5]).unwrap();
            assert!(u < prev);
            prev = u;
        }
    }

    #[test]
    fn radial_symmetry_in_tangential_slots() {
        let p = BubbleParams::new(6, -0.4, vec![0.0; 5], 0.8).unwrap();
        let a = eval_bubble(&p, &[0.3, 0.4, 0.0, 0.0, 0.0, 0.2]).unwrap();
        let b = eval_bubble(&p, &[0.0, 0.0, 0.5, 0.0, 0.0, 0.2]).unwrap();
        assert!((a - b).abs() <= 1e-15 * a);
    }

    #[test]
    fn interior_residual_tiny_across_dimensions() {
        for &n in &[5usize, 13, 62] {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(600 + n as u64);
            let xi: Vec<f64> = (0..n - 1).map(|_| 2.0 * unif(&mut rng) - 1.0).collect();
            let p = BubbleParams::new(n, -1.3, xi, 0.9).unwrap();
            for _ in 0..100 {
                let x = random_interior_point(&p, &mut rng, 10.0);
                let res = interior_residual(&p, &x).unwrap();
                assert!(res.abs() <= 1e-9, "n = {n}: residual {res:.3e}");
            }
        }
    }

    #[test]
    fn residual_is_translation_invariant() {
        let n = 9;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        let p0 = BubbleParams::new(n, -0.5, vec![0.0; n - 1], 1.1).unwrap();
        let shift: Vec<f64> = (0..n - 1).map(|_| 2.0 * unif(&mut rng) - 1.0).collect();
        let p1 = BubbleParams::new(n, -0.5, shift.clone(), 1.1).unwrap();
        for _ in 0..20 {
            let x = random_interior_point(&p0, &mut rng, 5.0);
            let mut moved = x.clone();
            for (v, s) in moved.iter_mut().zip(&shift) {
                *v += s;
            }
            let r0 = interior_residual(&p0, &x).unwrap();
            let r1 = interior_residual(&p1, &moved).unwrap();
            assert!((r0 - r1).abs() <= 1e-12);
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let n = 8;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(62);
        let p = BubbleParams::new(n, -0.8, vec![0.1; n - 1], 0.7).unwrap();
        for _ in 0..20 {
            let x = random_interior_point(&p, &mut rng, 4.0);
            let grad = bubble_gradient(&p, &x).unwrap();
            let peak_dist = p.denom(&x).sqrt();
            let h = 1e-5 * p.eps.max(peak_dist);
            for c in 0..n {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[c] += h;
                xm[c] -= h;
                if xm[n - 1] < 0.0 {
                    continue;
                }
                let fd =
                    (eval_bubble(&p, &xp).unwrap() - eval_bubble(&p, &xm).unwrap()) / (2.0 * h);
                let scale = grad[c].abs().max(1e-12);
                assert!((grad[c] - fd).abs() <= 1e-6 * scale, "{} vs {}", grad[c], fd);
            }
        }
    }

    #[test]
    fn boundary_residual_tiny() {
        for &n in &[5usize, 13, 62] {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(700 + n as u64);
            let p = BubbleParams::new(n, -2.0, vec![0.0; n - 1], 1.2).unwrap();
            // exactly at the peak column
            let res_peak = boundary_residual(&p, &vec![0.0; n - 1]).unwrap();
            assert!(res_peak.abs() <= 1e-12);
            for _ in 0..100 {
                let xp: Vec<f64> = (0..n - 1)
                    .map(|_| (2.0 * unif(&mut rng) - 1.0) * 5.0)
                    .collect();
                let res = boundary_residual(&p, &xp).unwrap();
                assert!(res.abs() <= 1e-10, "n = {n}: {res:.3e}");
            }
            // sign: du/dx_n < 0 at the peak column since T_c < 0
            let grad = bubble_gradient(&p, &{
                let mut x = vec![0.0; n];
                x[n - 1] = 0.0;
                x
            })
            .unwrap();
            assert!(grad[n - 1] < 0.0);
        }
    }

    #[test]
    fn einstein_residual_tiny_and_structured() {
        for &n in &[5usize, 13] {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(800 + n as u64);
            let p = BubbleParams::new(n, -0.9, vec![0.0; n - 1], 1.0).unwrap();
            for _ in 0..100 {
                let x = random_interior_point(&p, &mut rng, 8.0);
                let res = einstein_residual(&p, &x).unwrap();
                assert!(res.max_rel <= 1e-10, "n = {n}: {:.3e}", res.max_rel);
            }
            // on the normal axis the off-diagonal entries vanish by symmetry
            let mut axis = vec![0.0; n];
            axis[n - 1] = 0.7;
            let res = einstein_residual(&p, &axis).unwrap();
            for a in 0..n {
                for b in 0..n {
                    if a != b {
                        assert_eq!(res.matrix[a * n + b], 0.0);
                    }
                }
            }
        }
        // n = 62 through the same scaled path
        let p = BubbleParams::new(62, -1.0, vec![0.0; 61], 1.0).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(999);
        for _ in 0..20 {
            let x = random_interior_point(&p, &mut rng, 6.0);
            assert!(einstein_residual(&p, &x).unwrap().max_rel <= 1e-10);
        }
    }

    #[test]
    fn kernel_zero_sets() {
        let n = 6;
        let p = BubbleParams::new(n, -0.5, vec![0.0; n - 1], 1.0).unwrap();
        // tangential kernel vanishes on its own column
        let mut x = vec![0.0; n];
        x[n - 1] = 0.4;
        assert_eq!(eval_kernel(&p, 1, KernelVariant::Interior, &x).unwrap(), 0.0);
        // dilation kernel vanishes on the sphere |x|^2 = 1 + T_c^2
        let radius = 1.25f64.sqrt();
        let mut on_sphere = vec![0.0; n];
        on_sphere[0] = radius * 0.6;
        on_sphere[n - 1] = radius * 0.8;
        let v = eval_kernel(&p, n, KernelVariant::Interior, &on_sphere).unwrap();
        assert!(v.abs() < 1e-14);
        // and is positive inside, negative outside
        let mut inside = vec![0.0; n];
        inside[n - 1] = 0.3;
        assert!(eval_kernel(&p, n, KernelVariant::Interior, &inside).unwrap() > 0.0);
        let mut outside = vec![0.0; n];
        outside[n - 1] = 3.0;
        assert!(eval_kernel(&p, n, KernelVariant::Interior, &outside).unwrap() < 0.0);
    }

    #[test]
    fn tangential_kernel_is_proportional_to_xi_derivative() {
        // u_{(xi,eps,i)} = (2 eps / (n-2)) u^{4/(n-2)} d_{xi_i} u
        let n = 7;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        let p = BubbleParams::new(n, -1.1, vec![0.2; n - 1], 0.9).unwrap();
        let h = 1e-6;
        for _ in 0..20 {
            let x = random_interior_point(&p, &mut rng, 4.0);
            for i in 1..n {
                let kernel = eval_kernel(&p, i, KernelVariant::Interior, &x).unwrap();
                let mut xi_p = p.xi.clone();
                let mut xi_m = p.xi.clone();
                xi_p[i - 1] += h;
                xi_m[i - 1] -= h;
                let pp = BubbleParams::new(n, p.t_c, xi_p, p.eps).unwrap();
                let pm = BubbleParams::new(n, p.t_c, xi_m, p.eps).unwrap();
                let d_xi =
                    (eval_bubble(&pp, &x).unwrap() - eval_bubble(&pm, &x).unwrap()) / (2.0 * h);
                let u = eval_bubble(&p, &x).unwrap();
                let predicted =
                    2.0 * p.eps / (n as f64 - 2.0) * u.powf(4.0 / (n as f64 - 2.0)) * d_xi;
                let scale = kernel.abs().max(1e-12);
                assert!(
                    (kernel - predicted).abs() <= 1e-6 * scale,
                    "{kernel} vs {predicted}"
                );
            }
        }
    }

    #[test]
    fn dilation_kernel_is_proportional_to_eps_derivative() {
        // u_{(xi,eps,n)} = -(2 eps / (n-2)) u^{4/(n-2)} d_eps u
        let n = 6;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(78);
        let p = BubbleParams::new(n, -0.6, vec![0.0; n - 1], 1.3).unwrap();
        let h = 1e-6;
        for _ in 0..20 {
            let x = random_interior_point(&p, &mut rng, 4.0);
            let kernel = eval_kernel(&p, n, KernelVariant::Interior, &x).unwrap();
            let pp = BubbleParams::new(n, p.t_c, p.xi.clone(), p.eps + h).unwrap();
            let pm = BubbleParams::new(n, p.t_c, p.xi.clone(), p.eps - h).unwrap();
            let d_eps =
                (eval_bubble(&pp, &x).unwrap() - eval_bubble(&pm, &x).unwrap()) / (2.0 * h);
            let u = eval_bubble(&p, &x).unwrap();
            let predicted =
                -2.0 * p.eps / (n as f64 - 2.0) * u.powf(4.0 / (n as f64 - 2.0)) * d_eps;
            let scale = kernel.abs().max(1e-12);
            assert!((kernel - predicted).abs() <= 1e-5 * scale);
        }
    }

    #[test]
    fn hat_kernel_relates_to_interior_kernel() {
        // u-hat = (D/eps) u_kernel pointwise
        let n = 5;
        let p = BubbleParams::new(n, -1.0, vec![0.0; n - 1], 0.8).unwrap();
        let x = [0.3, -0.2, 0.1, 0.4, 0.6];
        let int = eval_kernel(&p, 2, KernelVariant::Interior, &x).unwrap();
        let hat = eval_kernel(&p, 2, KernelVariant::BoundaryHat, &x).unwrap();
        let d = p.denom(&x);
        assert!((hat - int * d / p.eps).abs() <= 1e-13 * hat.abs());
    }

    #[test]
    fn kernel_norms_constant_in_xi_and_eps() {
        let n = 13;
        let pairs = vec![
            (vec![0.0; n - 1], 1.0),
            (vec![0.5; n - 1], 0.5),
            (vec![-1.0; n - 1], 2.0),
        ];
        for a in [1usize, n] {
            let rep = kernel_norm_constancy(n, -1.0, a, &pairs).unwrap();
            assert!(
                rep.interior_spread <= 1e-6,
                "a = {a}: interior spread {:.3e}",
                rep.interior_spread
            );
            assert!(
                rep.boundary_spread <= 1e-6,
                "a = {a}: boundary spread {:.3e}",
                rep.boundary_spread
            );
        }
    }
}
