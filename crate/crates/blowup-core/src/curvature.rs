//! Algebraic Weyl-type tensors and the trace-free metric perturbations
//! built from them.
//!
//! A [`WeylLike`] is a rank-4 form on `R^m` (the boundary of the half-space
//! `R^{m+1}_+`) with the symmetries of a Weyl curvature tensor - pair
//! antisymmetry, pair interchange, first Bianchi - and every contraction
//! zero. Storage is dense on a leading coordinate block and zero outside,
//! which keeps the `m = 61` case cheap: a valid block tensor zero-extends to
//! a valid tensor in any larger dimension.
//!
//! From a tensor `W` and a polynomial weight `f` the module builds the
//! quadratic boundary field `H_ij(x) = W_ikjl x^k x^l` (normal components
//! zero), the weighted field `f(|x'|^2) H`, the compactly supported
//! perturbation `h` equal to `mu lambda^{2d} f(lambda^{-2}|x'|^2) H(x)` on
//! the ball of radius `rho`, and the glued field with one rescaled copy
//! planted at each center `(1/N, 0, ..., 0)`.

use crate::error::Error;
use crate::reduction::ReductionPolynomial;
use crate::Result;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

/// Rank-4 form with Weyl symmetries, stored densely on a leading
/// `block`-dimensional coordinate block of `R^m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeylLike {
    m: usize,
    block: usize,
    /// row-major `[i][j][k][l]` over the block
    components: Vec<f64>,
}

fn uniform_pm1(rng: &mut rand_chacha::ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
}

impl WeylLike {
    /// Wrap raw components without checking the algebraic identities; pair
    /// with [`weyl_invariant_check`] when the provenance is untrusted.
    pub fn from_components_unchecked(m: usize, block: usize, components: Vec<f64>) -> Result<Self> {
        if block < 4 {
            return Err(Error::DegenerateDimension { m: block });
        }
        if block > m {
            return Err(Error::Config(format!(
                "block {block} exceeds ambient dimension {m}"
            )));
        }
        if components.len() != block * block * block * block {
            return Err(Error::Config(format!(
                "expected {} components for block {block}, got {}",
                block * block * block * block,
                components.len()
            )));
        }
        Ok(Self {
            m,
            block,
            components,
        })
    }

    /// Deterministic random tensor, dense in all `m` dimensions.
    pub fn random(m: usize, seed: u64) -> Result<Self> {
        Self::random_block(m, m, seed)
    }

    /// Deterministic random tensor supported on the leading `block`
    /// coordinates of `R^m`.
    ///
    /// Construction: draw a raw rank-4 array, symmetrize onto the Riemann
    /// symmetries, remove the totally antisymmetric part (first Bianchi),
    /// then subtract the Kulkarni-Nomizu contributions of the Ricci part so
    /// every trace vanishes.
    pub fn random_block(m: usize, block: usize, seed: u64) -> Result<Self> {
        if m < 4 || block < 4 {
            return Err(Error::DegenerateDimension { m: m.min(block) });
        }
        if block > m {
            return Err(Error::Config(format!(
                "block {block} exceeds ambient dimension {m}"
            )));
        }
        let b = block;
        for attempt in 0..16u64 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
            let raw: Vec<f64> = (0..b * b * b * b).map(|_| uniform_pm1(&mut rng)).collect();
            let at = |i: usize, j: usize, k: usize, l: usize| raw[((i * b + j) * b + k) * b + l];

            // Riemann symmetries: antisymmetrize both pairs, symmetrize the
            // pair interchange.
            let mut r = vec![0.0f64; b * b * b * b];
            for i in 0..b {
                for j in 0..b {
                    for k in 0..b {
                        for l in 0..b {
                            r[((i * b + j) * b + k) * b + l] = (at(i, j, k, l) - at(j, i, k, l)
                                - at(i, j, l, k)
                                + at(j, i, l, k)
                                + at(k, l, i, j)
                                - at(l, k, i, j)
                                - at(k, l, j, i)
                                + at(l, k, j, i))
                                / 8.0;
                        }
                    }
                }
            }

            // First Bianchi: the cyclic sum of a pair-symmetric tensor is its
            // totally antisymmetric part; removing it lands in the kernel.
            let rr = r.clone();
            let rat = |i: usize, j: usize, k: usize, l: usize| rr[((i * b + j) * b + k) * b + l];
            for i in 0..b {
                for j in 0..b {
                    for k in 0..b {
                        for l in 0..b {
                            let cyc = (rat(i, j, k, l) + rat(i, k, l, j) + rat(i, l, j, k)) / 3.0;
                            r[((i * b + j) * b + k) * b + l] -= cyc;
                        }
                    }
                }
            }

            // Trace removal in the block dimension: W = R - E (*) g / (b-2)
            //   - scal g (*) g / (2b(b-1)), with (*) the Kulkarni-Nomizu
            // product and E the traceless Ricci part.
            let rat2 = |r: &[f64], i: usize, j: usize, k: usize, l: usize| {
                r[((i * b + j) * b + k) * b + l]
            };
            let mut ric = vec![0.0f64; b * b];
            for j in 0..b {
                for l in 0..b {
                    ric[j * b + l] = (0..b).map(|i| rat2(&r, i, j, i, l)).sum();
                }
            }
            let scal: f64 = (0..b).map(|j| ric[j * b + j]).sum();
            let mut e = ric.clone();
            for j in 0..b {
                e[j * b + j] -= scal / b as f64;
            }
            let delta = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
            let kn = |a: &dyn Fn(usize, usize) -> f64,
                      i: usize,
                      j: usize,
                      k: usize,
                      l: usize| {
                a(i, k) * delta(j, l) + a(j, l) * delta(i, k)
                    - a(i, l) * delta(j, k)
                    - a(j, k) * delta(i, l)
            };
            let e_fn = |i: usize, j: usize| e[i * b + j];
            let coef_e = 1.0 / (b as f64 - 2.0);
            let coef_s = scal / (2.0 * b as f64 * (b as f64 - 1.0));
            for i in 0..b {
                for j in 0..b {
                    for k in 0..b {
                        for l in 0..b {
                            r[((i * b + j) * b + k) * b + l] -= coef_e * kn(&e_fn, i, j, k, l)
                                + coef_s * kn(&delta, i, j, k, l);
                        }
                    }
                }
            }

            // normalize the largest component to unit size
            let max = r.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
            if max > 1e-8 {
                let inv = 1.0 / max;
                for v in &mut r {
                    *v *= inv;
                }
                let w = Self {
                    m,
                    block,
                    components: r,
                };
                if nondegeneracy_scalar(&w) > 1e-6 {
                    return Ok(w);
                }
            }
        }
        Err(Error::Config(format!(
            "failed to draw a nondegenerate Weyl tensor at m {m}, block {block}, seed {seed}"
        )))
    }

    /// Zero tensor in `R^m`; degenerate on purpose. Stored densely up to
    /// `m = 8`, on a 4-block beyond that.
    pub fn zero(m: usize) -> Result<Self> {
        if m < 4 {
            return Err(Error::DegenerateDimension { m });
        }
        let block = m.min(8).max(4).min(m);
        Ok(Self {
            m,
            block,
            components: vec![0.0; block * block * block * block],
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn block(&self) -> usize {
        self.block
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    /// Component `W_{ijkl}`; zero whenever an index leaves the block.
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let b = self.block;
        if i < b && j < b && k < b && l < b {
            self.components[((i * b + j) * b + k) * b + l]
        } else {
            0.0
        }
    }

    /// Same tensor scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            m: self.m,
            block: self.block,
            components: self.components.iter().map(|c| c * factor).collect(),
        }
    }

    /// JSON form: dimension, block, and the flattened block components in
    /// row-major `[i][j][k][l]` order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("WeylLike serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            m: usize,
            block: usize,
            components: Vec<f64>,
        }
        let raw: Raw = serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("WeylLike JSON: {e}")))?;
        Self::from_components_unchecked(raw.m, raw.block, raw.components)
    }
}

/// Violations of the defining identities, all in absolute terms.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WeylCheckReport {
    /// worst violation among pair antisymmetries, pair interchange, and the
    /// first Bianchi identity
    pub max_symmetry_violation: f64,
    /// worst contraction `sum_i W_{ijil}`
    pub max_trace: f64,
    /// `sum (W_{ikjl} + W_{iljk})^2`
    pub nondegeneracy_scalar: f64,
}

/// Evaluate all invariants of a candidate tensor.
pub fn weyl_invariant_check(w: &WeylLike) -> WeylCheckReport {
    let b = w.block();
    let mut sym = 0.0f64;
    for i in 0..b {
        for j in 0..b {
            for k in 0..b {
                for l in 0..b {
                    let v = w.get(i, j, k, l);
                    sym = sym.max((v + w.get(j, i, k, l)).abs());
                    sym = sym.max((v + w.get(i, j, l, k)).abs());
                    sym = sym.max((v - w.get(k, l, i, j)).abs());
                    sym = sym
                        .max((v + w.get(i, k, l, j) + w.get(i, l, j, k)).abs());
                }
            }
        }
    }
    let mut trace = 0.0f64;
    for j in 0..b {
        for l in 0..b {
            let t: f64 = (0..b).map(|i| w.get(i, j, i, l)).sum();
            trace = trace.max(t.abs());
        }
    }
    WeylCheckReport {
        max_symmetry_violation: sym,
        max_trace: trace,
        nondegeneracy_scalar: nondegeneracy_scalar(w),
    }
}

/// `sum_{ijkl} (W_{ikjl} + W_{iljk})^2`, the scalar every energy formula is
/// proportional to.
pub fn nondegeneracy_scalar(w: &WeylLike) -> f64 {
    let b = w.block();
    let mut acc = 0.0;
    for i in 0..b {
        for j in 0..b {
            for k in 0..b {
                for l in 0..b {
                    let v = w.get(i, k, j, l) + w.get(i, l, j, k);
                    acc += v * v;
                }
            }
        }
    }
    acc
}

/// Gram-type contraction
/// `T_pq = sum_{ikl} (W_{ipkl} + W_{ilkp})(W_{iqkl} + W_{ilkq})`,
/// returned as a dense row-major `m x m` matrix (zero off the block).
pub fn t_contraction(w: &WeylLike) -> Vec<f64> {
    let (m, b) = (w.m(), w.block());
    let mut t = vec![0.0f64; m * m];
    for p in 0..b {
        for q in 0..b {
            let mut acc = 0.0;
            for i in 0..b {
                for k in 0..b {
                    for l in 0..b {
                        acc += (w.get(i, p, k, l) + w.get(i, l, k, p))
                            * (w.get(i, q, k, l) + w.get(i, l, k, q));
                    }
                }
            }
            t[p * m + q] = acc;
        }
    }
    t
}

fn check_point_dim(x: &[f64], m: usize) -> Result<()> {
    if x.len() != m + 1 {
        return Err(Error::Config(format!(
            "point has dimension {}, expected {} (boundary dim {m} plus normal)",
            x.len(),
            m + 1
        )));
    }
    Ok(())
}

/// Quadratic boundary field `H_ij(x) = W_ikjl x^k x^l` with `H_na = 0`,
/// returned as a row-major `(m+1) x (m+1)` symmetric matrix. Depends only
/// on the tangential part `x'`.
pub fn h_field(x: &[f64], w: &WeylLike) -> Result<Vec<f64>> {
    let m = w.m();
    check_point_dim(x, m)?;
    let n = m + 1;
    let b = w.block();
    let mut h = vec![0.0f64; n * n];
    for i in 0..b {
        for j in i..b {
            let mut acc = 0.0;
            for k in 0..b {
                for l in 0..b {
                    acc += w.get(i, k, j, l) * x[k] * x[l];
                }
            }
            h[i * n + j] = acc;
            h[j * n + i] = acc;
        }
    }
    h
        .iter()
        .all(|v| v.is_finite())
        .then_some(h)
        .ok_or_else(|| Error::Domain("non-finite field value".into()))
}

fn degree_bound_check(f: &ReductionPolynomial, n_dim: usize) -> Result<()> {
    // 0 <= d < (n - 6) / 4 keeps the perturbation admissible
    if (4 * f.degree()) as i64 >= n_dim as i64 - 6 {
        return Err(Error::Config(format!(
            "polynomial degree {} violates d < (n-6)/4 at n = {n_dim}",
            f.degree()
        )));
    }
    Ok(())
}

/// Weighted field `f(|x'|^2) H(x)`.
pub fn hbar_field(x: &[f64], w: &WeylLike, f: &ReductionPolynomial) -> Result<Vec<f64>> {
    let m = w.m();
    check_point_dim(x, m)?;
    degree_bound_check(f, m + 1)?;
    let r2: f64 = x[..m].iter().map(|v| v * v).sum();
    let weight = f.eval(r2);
    let mut h = h_field(x, w)?;
    for v in &mut h {
        *v *= weight;
    }
    Ok(h)
}

/// Perturbation data: tensor, weight polynomial, and the three scales.
#[derive(Debug, Clone)]
pub struct PerturbationSpec {
    pub w: WeylLike,
    pub f: ReductionPolynomial,
    pub mu: f64,
    pub lambda: f64,
    pub rho: f64,
}

impl PerturbationSpec {
    pub fn new(w: WeylLike, f: ReductionPolynomial, mu: f64, lambda: f64, rho: f64) -> Result<Self> {
        if !(mu > 0.0 && mu <= 1.0) {
            return Err(Error::Config(format!("need 0 < mu <= 1, got {mu}")));
        }
        if !(lambda > 0.0 && lambda <= rho && rho <= 1.0) {
            return Err(Error::Config(format!(
                "need 0 < lambda <= rho <= 1, got lambda {lambda}, rho {rho}"
            )));
        }
        degree_bound_check(&f, w.m() + 1)?;
        Ok(Self { w, f, mu, lambda, rho })
    }
}

// Quintic smoothstep: 0 -> 1 on [0, 1] with zero first and second
// derivatives at both ends.
fn smoothstep2(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)
    }
}

/// C^2 cutoff: 1 for `t <= 1`, 0 for `t >= 2`, monotone in between.
pub fn cutoff_chi(t: f64) -> f64 {
    1.0 - smoothstep2(t - 1.0)
}

/// The compactly supported perturbation:
/// `mu lambda^{2d} f(lambda^{-2} |x'|^2) H(x)` for `|x| <= rho`, zero for
/// `|x| >= 1`. On the annulus `rho <= |x| <= min(2 rho, 1)` the same
/// formula is multiplied by a C^2 radial bump falling from 1 to 0, which
/// preserves symmetry, trace-freeness, and the `O(mu (lambda+|x|)^{2d+2})`
/// bound.
pub fn perturbation_h(x: &[f64], spec: &PerturbationSpec) -> Result<Vec<f64>> {
    let m = spec.w.m();
    check_point_dim(x, m)?;
    let n = m + 1;
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm >= 1.0 {
        return Ok(vec![0.0; n * n]);
    }
    let outer = (2.0 * spec.rho).min(1.0);
    let bump = if norm <= spec.rho {
        1.0
    } else if norm >= outer {
        return Ok(vec![0.0; n * n]);
    } else {
        cutoff_chi(1.0 + (norm - spec.rho) / (outer - spec.rho))
    };
    let d = spec.f.degree() as i32;
    let r2: f64 = x[..m].iter().map(|v| v * v).sum();
    let weight =
        spec.mu * spec.lambda.powi(2 * d) * spec.f.eval(r2 / (spec.lambda * spec.lambda)) * bump;
    let mut h = h_field(x, &spec.w)?;
    for v in &mut h {
        *v *= weight;
    }
    Ok(h)
}

/// Exact disjointness facts about the glued supports, by integer
/// arithmetic on centers `1/N` and radii.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SupportDisjointness {
    /// plateau balls of radius `1/(4N^2)`, where each term equals its
    /// closed formula, never meet
    pub core_disjoint: bool,
    /// full supports of radius `1/(2N^2)`: consecutive pairs overlap in a
    /// sliver of width `1/(2 N^2 (N+1)^2)`
    pub support_disjoint: bool,
    pub first_support_overlap: Option<(u64, u64)>,
}

/// Check disjointness of the glued supports for `N in [n0, n_max]`.
///
/// For centers `1/N, 1/M` and radii `r_N = 1/(c N^2)` the balls are
/// disjoint iff `c N M (M - N) >= M^2 + N^2` (exact integers). Distances
/// grow and radii shrink with `M - N`, so `M <= N + 4` covers all pairs.
pub fn support_disjointness(n0: u64, n_max: u64) -> Result<SupportDisjointness> {
    if n0 < 2 {
        return Err(Error::Config(format!("glued field needs N0 >= 2, got {n0}")));
    }
    let disjoint = |c: i128, n: i128, m: i128| c * n * m * (m - n) >= m * m + n * n;
    let mut core = true;
    let mut support = true;
    let mut first = None;
    for n in n0..=n_max {
        for m in (n + 1)..=(n + 4).min(n_max) {
            if !disjoint(4, n as i128, m as i128) {
                core = false;
            }
            if !disjoint(2, n as i128, m as i128) {
                support = false;
                if first.is_none() {
                    first = Some((n, m));
                }
            }
        }
    }
    Ok(SupportDisjointness {
        core_disjoint: core,
        support_disjoint: support,
        first_support_overlap: first,
    })
}

/// Glued perturbation:
/// `h(x) = sum_{N >= N0} chi(4 N^2 |x - x_N|) 2^{-N} f(2^N |x' - x_N|^2) H(x - x_N)`
/// with centers `x_N = (1/N, 0, ..., 0)` on the boundary.
///
/// At any point at most two consecutive terms can be nonzero (their
/// supports share a thin sliver); the evaluation sums every term whose
/// support contains `x`.
pub fn glued_field(x: &[f64], w: &WeylLike, f: &ReductionPolynomial, n0: u64) -> Result<Vec<f64>> {
    let m = w.m();
    check_point_dim(x, m)?;
    degree_bound_check(f, m + 1)?;
    if n0 < 2 {
        return Err(Error::Config(format!("glued field needs N0 >= 2, got {n0}")));
    }
    let n_dim = m + 1;
    let mut out = vec![0.0f64; n_dim * n_dim];
    if x[0] <= 0.0 {
        return Ok(out);
    }
    // support of term N forces |N - 1/x_1| < ~0.6
    let center_guess = (1.0 / x[0]).round();
    if !center_guess.is_finite() || center_guess > 1.0e18 {
        return Ok(out);
    }
    let lo = (center_guess as i64 - 2).max(n0 as i64) as u64;
    let hi = center_guess as u64 + 2;
    let mut shifted = x.to_vec();
    for big_n in lo..=hi.max(lo) {
        if big_n > 1_060 {
            // 2^{-N} is below the smallest positive double; term vanishes
            break;
        }
        let center = 1.0 / big_n as f64;
        shifted.copy_from_slice(x);
        shifted[0] -= center;
        let dist = shifted.iter().map(|v| v * v).sum::<f64>().sqrt();
        let chi = cutoff_chi(4.0 * (big_n * big_n) as f64 * dist);
        if chi == 0.0 {
            continue;
        }
        let two_pow = 2.0f64.powi(-(big_n as i32));
        let r2: f64 = shifted[..m].iter().map(|v| v * v).sum();
        let weight = chi * two_pow * f.eval(r2 / two_pow);
        if !weight.is_finite() {
            return Err(Error::Domain(format!(
                "glued term N = {big_n} overflowed; weight polynomial too steep"
            )));
        }
        let h = h_field(&shifted, w)?;
        for (o, v) in out.iter_mut().zip(h) {
            *o += weight * v;
        }
    }
    Ok(out)
}

/// Smallness quantities of one perturbation at dimension `n`:
/// the scale parameter `mu^{-2} lambda^{n-10} rho^{2-n}` (log form survives
/// any magnitude) and sampled sup norms of `h` and its first two
/// derivatives, plus the measured constant in
/// `|h(x)| <= C mu (lambda + |x|)^{2d+2}`.
#[derive(Debug, Clone, Serialize)]
pub struct SmallnessReport {
    pub ln_smallness: f64,
    pub smallness: f64,
    pub sup_h: f64,
    pub sup_dh: f64,
    pub sup_d2h: f64,
    pub bound_constant: f64,
}

fn frobenius(mat: &[f64]) -> f64 {
    mat.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// `ln(mu^{-2} lambda^{n-10} rho^{2-n})`, pure log arithmetic with no
/// constraint checks. The plain value may overflow; the log never does.
pub fn smallness_parameter(mu: f64, lambda: f64, rho: f64, n: usize) -> f64 {
    -2.0 * mu.ln() + (n as f64 - 10.0) * lambda.ln() + (2.0 - n as f64) * rho.ln()
}

/// Sample-based smallness report; requires the degree-one weight the
/// parameter `n - 10 = n - 4d - 6` presumes.
pub fn smallness_report(spec: &PerturbationSpec, n: usize) -> Result<SmallnessReport> {
    if spec.f.degree() != 1 {
        return Err(Error::Config(format!(
            "smallness exponent n-10 presumes d = 1, got degree {}",
            spec.f.degree()
        )));
    }
    let ln_smallness = smallness_parameter(spec.mu, spec.lambda, spec.rho, n);

    let dim = spec.w.m() + 1;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5EED_CA11);
    let outer = (2.0 * spec.rho).min(1.0);
    let mut sup_h = 0.0f64;
    let mut sup_dh = 0.0f64;
    let mut sup_d2h = 0.0f64;
    let mut bound_c = 0.0f64;
    let eval = |x: &[f64]| perturbation_h(x, spec);
    for _ in 0..120 {
        let mut x: Vec<f64> = (0..dim).map(|_| uniform_pm1(&mut rng)).collect();
        x[dim - 1] = x[dim - 1].abs();
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let radius = uniform_pm1(&mut rng).abs().powf(1.0 / dim as f64) * outer;
        for v in &mut x {
            *v *= radius / norm.max(1e-12);
        }
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let h0 = eval(&x)?;
        let nh = frobenius(&h0);
        sup_h = sup_h.max(nh);
        let denom = spec.mu * (spec.lambda + r).powi(2 * spec.f.degree() as i32 + 2);
        bound_c = bound_c.max(nh / denom);

        let step = 1e-5 * (spec.lambda + r);
        for c in 0..dim {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[c] += step;
            xm[c] -= step;
            if xm[dim - 1] < 0.0 {
                xm[dim - 1] = 0.0;
            }
            let hp = eval(&xp)?;
            let hm = eval(&xm)?;
            let d1: Vec<f64> = hp
                .iter()
                .zip(&hm)
                .map(|(a, b)| (a - b) / (2.0 * step))
                .collect();
            sup_dh = sup_dh.max(frobenius(&d1));
            let d2: Vec<f64> = hp
                .iter()
                .zip(&hm)
                .zip(&h0)
                .map(|((a, b), c0)| (a + b - 2.0 * c0) / (step * step))
                .collect();
            sup_d2h = sup_d2h.max(frobenius(&d2));
        }
    }
    Ok(SmallnessReport {
        ln_smallness,
        smallness: ln_smallness.exp(),
        sup_h,
        sup_dh,
        sup_d2h,
        bound_constant: bound_c,
    })
}
