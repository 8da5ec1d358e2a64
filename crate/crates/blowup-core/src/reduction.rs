//! Reduction polynomials and dimension certificates.
//!
//! The reduced energy at centered translation parameter is a negative
//! multiple of `I(eps^2)`, and its Hessian brings in `J(eps^2)`:
//!
//! ```text
//! I(s) = sum_{q<=2d} c_q alpha_q s^{q+2} prod_{j<=q} (n-1+2j)/(n-5-2j)
//! J(s) = sum_{q<=2d-1} c_q beta_q s^{q+2} prod_{j<=q} (n+3+2j)/(n-5-2j)
//! ```
//!
//! with `alpha_q` the coefficients of `(n+1) f^2 + 4 s f f' + 2 s^2 f'^2`
//! and `beta_q` those of `2 f f' + s f'^2`. For `f(s) = a_0 - s` the
//! stationarity `I'(1) = 0` pins `a_0` as the larger root of a quadratic
//! `p_n`; the construction succeeds when `I(1) > 0`, `I''(1) < 0` and
//! `J(1) < 0`, which holds for every `n >= 62`. The sufficient conditions
//! reduce to integer sign facts (`q(n) > 0`, `P(n) > 0`, and a third
//! inequality), all evaluated here in exact arithmetic.

use crate::error::Error;
use crate::specfun;
use crate::Result;
use num_rational::Ratio;
use serde::Serialize;
use std::ops::RangeInclusive;

/// Polynomial `f(s) = sum_i a_i s^i` entering the perturbation weight.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionPolynomial {
    coeffs: Vec<f64>,
}

impl ReductionPolynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * s + c)
    }

    pub fn eval_deriv(&self, s: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (i, &c)| acc * s + i as f64 * c)
    }

    /// Coefficients of `f'`.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::constant(0.0);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| i as f64 * c)
                .collect(),
        )
    }
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_scaled(acc: &mut Vec<f64>, p: &[f64], scale: f64, shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0.0);
    }
    for (i, &c) in p.iter().enumerate() {
        acc[i + shift] += scale * c;
    }
}

/// Coefficients `alpha_q` of `(n+1) f(s)^2 + 4 s f f' + 2 s^2 f'^2`.
pub fn alpha_coeffs(f: &ReductionPolynomial, n: i64) -> Vec<f64> {
    let fp = f.derivative();
    let f2 = poly_mul(f.coeffs(), f.coeffs());
    let ffp = poly_mul(f.coeffs(), fp.coeffs());
    let fp2 = poly_mul(fp.coeffs(), fp.coeffs());
    let mut out = vec![0.0; 2 * f.degree() + 1];
    poly_add_scaled(&mut out, &f2, (n + 1) as f64, 0);
    poly_add_scaled(&mut out, &ffp, 4.0, 1);
    poly_add_scaled(&mut out, &fp2, 2.0, 2);
    out.truncate(2 * f.degree() + 1);
    out
}

/// Coefficients `beta_q` of `2 f f' + s f'^2`; empty for constant `f`.
pub fn beta_coeffs(f: &ReductionPolynomial) -> Vec<f64> {
    if f.degree() == 0 {
        return Vec::new();
    }
    let fp = f.derivative();
    let ffp = poly_mul(f.coeffs(), fp.coeffs());
    let fp2 = poly_mul(fp.coeffs(), fp.coeffs());
    let mut out = vec![0.0; 2 * f.degree()];
    poly_add_scaled(&mut out, &ffp, 2.0, 0);
    poly_add_scaled(&mut out, &fp2, 1.0, 1);
    out.truncate(2 * f.degree());
    out
}

/// Coefficients of `f'(s)^2`; empty for constant `f`.
pub fn fprime_sq_coeffs(f: &ReductionPolynomial) -> Vec<f64> {
    if f.degree() == 0 {
        return Vec::new();
    }
    let fp = f.derivative();
    poly_mul(fp.coeffs(), fp.coeffs())
}

/// `ln c_q` for `q = 0..=max_q` at this `(n, T_c)`.
fn ln_c_values(n: i64, t_c: f64, max_q: u32) -> Result<Vec<f64>> {
    (0..=max_q)
        .map(|q| Ok(specfun::c_q(n, t_c, q)?.ln_value))
        .collect()
}

/// `prod_{j=0}^{q} (n - 1 + 2j) / (n - 5 - 2j)`.
fn i_product(n: i64, q: usize) -> f64 {
    (0..=q).fold(1.0, |acc, j| {
        acc * (n - 1 + 2 * j as i64) as f64 / (n - 5 - 2 * j as i64) as f64
    })
}

/// `prod_{j=0}^{q} (n + 3 + 2j) / (n - 5 - 2j)`.
fn j_product(n: i64, q: usize) -> f64 {
    (0..=q).fold(1.0, |acc, j| {
        acc * (n + 3 + 2 * j as i64) as f64 / (n - 5 - 2 * j as i64) as f64
    })
}

fn check_f_admissible(f: &ReductionPolynomial, n: i64) -> Result<()> {
    let max_exponent = n - 5 - 2 * (2 * f.degree() as i64);
    if max_exponent <= 1 {
        return Err(Error::DivergentMoment {
            n,
            q: 2 * f.degree() as u32,
            exponent: max_exponent,
        });
    }
    Ok(())
}

/// `I(s)` together with `I'(s)` and `I''(s)`, differentiating the
/// `s^{q+2}` monomials term by term.
pub fn i_of_s(s: f64, n: i64, t_c: f64, f: &ReductionPolynomial) -> Result<(f64, f64, f64)> {
    check_f_admissible(f, n)?;
    let alphas = alpha_coeffs(f, n);
    let ln_c = ln_c_values(n, t_c, alphas.len() as u32 - 1)?;
    let mut value = 0.0;
    let mut d1 = 0.0;
    let mut d2 = 0.0;
    for (q, &alpha) in alphas.iter().enumerate() {
        let k = ln_c[q].exp() * alpha * i_product(n, q);
        let e = q as f64 + 2.0;
        let sq = s.powi(q as i32);
        value += k * sq * s * s;
        d1 += k * e * sq * s;
        d2 += k * e * (e - 1.0) * sq;
    }
    Ok((value, d1, d2))
}

/// `J(s)`; identically zero for constant `f`.
pub fn j_of_s(s: f64, n: i64, t_c: f64, f: &ReductionPolynomial) -> Result<f64> {
    check_f_admissible(f, n)?;
    let betas = beta_coeffs(f);
    if betas.is_empty() {
        return Ok(0.0);
    }
    let ln_c = ln_c_values(n, t_c, betas.len() as u32 - 1)?;
    let mut value = 0.0;
    for (q, &beta) in betas.iter().enumerate() {
        value += ln_c[q].exp() * beta * j_product(n, q) * s.powi(q as i32 + 2);
    }
    Ok(value)
}

/// Radicand `9 - 8 (n+7)(n-7) / ((n+3)(n-9)) * c_0 c_2 / c_1^2`. Its sign
/// decides whether the quadratic `p_n` has real roots.
pub fn radicand(n: i64, t_c: f64) -> Result<f64> {
    if n <= 9 {
        return Err(Error::Domain(format!("radicand needs n > 9, got {n}")));
    }
    let ln_c = ln_c_values(n, t_c, 2)?;
    let ratio = (ln_c[0] + ln_c[2] - 2.0 * ln_c[1]).exp();
    let factor = ((n + 7) * (n - 7)) as f64 / ((n + 3) * (n - 9)) as f64;
    Ok(9.0 - 8.0 * factor * ratio)
}

/// The larger real root of `p_n`, or `None` when the radicand is negative
/// (the degree-one construction is unavailable at this `(n, T_c)`).
pub fn a0_star(n: i64, t_c: f64) -> Result<Option<f64>> {
    let rad = radicand(n, t_c)?;
    if rad < 0.0 {
        return Ok(None);
    }
    let ln_c = ln_c_values(n, t_c, 1)?;
    let c1_over_c0 = (ln_c[1] - ln_c[0]).exp();
    Ok(Some(
        (n + 3) as f64 / (2.0 * (n - 7) as f64) * c1_over_c0 * (3.0 + rad.sqrt()),
    ))
}

/// Discriminant of `p_n`,
/// `d(p_n) = ((n+3)/(n-7))^2 [9 c_1^2 - 8 (n+7)(n-7)/((n+3)(n-9)) c_0 c_2]`,
/// assembled as `((n+3)/(n-7))^2 c_1^2 * radicand` so the sign survives even
/// when `c_1^2` underflows.
pub fn discriminant(n: i64, t_c: f64) -> Result<f64> {
    let rad = radicand(n, t_c)?;
    let ln_c1 = ln_c_values(n, t_c, 1)?[1];
    let scale = ((n + 3) as f64 / (n - 7) as f64).powi(2) * (2.0 * ln_c1).exp();
    Ok(scale * rad)
}

/// `q(n) = 9(n+3)(n-9)(n-10) - 8(n-8)^2(n+7)` in exact integer arithmetic.
pub fn q_poly(n: i64) -> i128 {
    let n = n as i128;
    9 * (n + 3) * (n - 9) * (n - 10) - 8 * (n - 8) * (n - 8) * (n + 7)
}

/// Expanded form `n^3 - 72 n^2 + 681 n - 1154`; equals [`q_poly`] identically.
pub fn q_poly_expanded(n: i64) -> i128 {
    let n = n as i128;
    n * n * n - 72 * n * n + 681 * n - 1154
}

/// `q'(n) = 3 n^2 - 144 n + 681`.
pub fn q_poly_prime(n: i64) -> i128 {
    let n = n as i128;
    3 * n * n - 144 * n + 681
}

/// Exact rational coefficient `alpha = (9 - 36/65^2)/8 = 37989/33800`.
pub fn p_cal_alpha() -> Ratio<i128> {
    Ratio::new(37_989, 33_800)
}

/// `P(n) = alpha (n+3)(n-9)(n-10) - (n+7)(n-8)^2` as an exact rational.
pub fn p_cal(n: i64) -> Ratio<i128> {
    let n = n as i128;
    p_cal_alpha() * Ratio::from_integer((n + 3) * (n - 9) * (n - 10))
        - Ratio::from_integer((n + 7) * (n - 8) * (n - 8))
}

/// `P'(n)`, exact; from `P(n) = (a-1) n^3 + (9-16a) n^2 + (33a+48) n + 270a - 448`.
pub fn p_cal_prime(n: i64) -> Ratio<i128> {
    let n = n as i128;
    let a = p_cal_alpha();
    Ratio::from_integer(3) * (a - Ratio::from_integer(1)) * Ratio::from_integer(n * n)
        + Ratio::from_integer(2)
            * (Ratio::from_integer(9) - Ratio::from_integer(16) * a)
            * Ratio::from_integer(n)
        + Ratio::from_integer(33) * a
        + Ratio::from_integer(48)
}

/// `P''(n) = 6 (alpha - 1) n + 18 - 32 alpha`, exact.
pub fn p_cal_second(n: i64) -> Ratio<i128> {
    let a = p_cal_alpha();
    Ratio::from_integer(6) * (a - Ratio::from_integer(1)) * Ratio::from_integer(n as i128)
        + Ratio::from_integer(18)
        - Ratio::from_integer(32) * a
}

/// Third certificate inequality, `9(n+3)(n-10)(n-9) > 4(n+7)(n-8)^2`,
/// exactly. This is the sufficient condition for `I(1) > 0`.
pub fn i1_bound_holds(n: i64) -> bool {
    let n = n as i128;
    9 * (n + 3) * (n - 10) * (n - 9) > 4 * (n + 7) * (n - 8) * (n - 8)
}

/// T_c-independent bound certificate: all three exact inequalities at once.
pub fn bound_certificate(n: i64) -> CertificateFlags {
    let q_pos = q_poly(n) > 0;
    let p_pos = p_cal(n) > Ratio::from_integer(0);
    let i1_bound = i1_bound_holds(n);
    CertificateFlags {
        q_pos,
        p_pos,
        i1_bound,
        certified: q_pos && p_pos && i1_bound,
    }
}

/// `f(s) = a_0 - s` with `a_0` chosen so `I'(1) = 0`.
pub fn construct_f(n: i64, t_c: f64) -> Result<ReductionPolynomial> {
    match a0_star(n, t_c)? {
        Some(a0) => Ok(ReductionPolynomial::new(vec![a0, -1.0])),
        None => Err(Error::NoRealRoot { n, t_c }),
    }
}

/// Closed display for `I''(1)` in terms of `a_0`:
/// `(2(n+1)(n-1)/(n-5)) (c_0 a_0^2 - 6(n+3)/(n-7) c_1 a_0 + 6(n+3)(n+7)/((n-7)(n-9)) c_2)`.
/// Cross-check route against the term-by-term derivative in [`i_of_s`].
pub fn i_second_closed(n: i64, t_c: f64, a0: f64) -> Result<f64> {
    let ln_c = ln_c_values(n, t_c, 2)?;
    let (c0, c1, c2) = (ln_c[0].exp(), ln_c[1].exp(), ln_c[2].exp());
    let nf = n as f64;
    Ok(2.0 * (nf + 1.0) * (nf - 1.0) / (nf - 5.0)
        * (c0 * a0 * a0 - 6.0 * (nf + 3.0) / (nf - 7.0) * c1 * a0
            + 6.0 * (nf + 3.0) * (nf + 7.0) / ((nf - 7.0) * (nf - 9.0)) * c2))
}

/// Direct-check verdicts for one `(n, T_c)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VerdictFlags {
    pub a0_real: bool,
    pub i1_pos: bool,
    pub iprime1_zero: bool,
    pub ipp1_neg: bool,
    pub j1_neg: bool,
}

impl VerdictFlags {
    pub fn all(&self) -> bool {
        self.a0_real && self.i1_pos && self.iprime1_zero && self.ipp1_neg && self.j1_neg
    }
}

/// Exact bound-certificate verdicts for one `n`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CertificateFlags {
    pub q_pos: bool,
    pub p_pos: bool,
    pub i1_bound: bool,
    pub certified: bool,
}

/// One row of the dimension scan.
#[derive(Debug, Clone, Serialize)]
pub struct DimensionRow {
    pub n: i64,
    pub t_c: f64,
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub a0: Option<f64>,
    pub disc: f64,
    pub i1: f64,
    pub iprime1: f64,
    pub ipp1: f64,
    pub j1: f64,
    pub verdicts: VerdictFlags,
    pub certificate: CertificateFlags,
}

/// Direct numerical check at one `(n, T_c)`: build `f`, evaluate `I`, `J`.
/// Relative tie policy: `|I'(1)| <= 1e-10 I(1)` counts as a zero of `I'`.
pub fn dimension_row(n: i64, t_c: f64) -> Result<DimensionRow> {
    let ln_c = ln_c_values(n, t_c, 2)?;
    let (c0, c1, c2) = (ln_c[0].exp(), ln_c[1].exp(), ln_c[2].exp());
    let disc = discriminant(n, t_c)?;
    let a0 = a0_star(n, t_c)?;
    let certificate = bound_certificate(n);

    let (i1, iprime1, ipp1, j1, verdicts) = match a0 {
        Some(a0v) => {
            let f = ReductionPolynomial::new(vec![a0v, -1.0]);
            let (i1, d1, d2) = i_of_s(1.0, n, t_c, &f)?;
            let j1 = j_of_s(1.0, n, t_c, &f)?;
            let verdicts = VerdictFlags {
                a0_real: true,
                i1_pos: i1 > 0.0,
                iprime1_zero: d1.abs() <= 1e-10 * i1.abs(),
                ipp1_neg: d2 < 0.0,
                j1_neg: j1 < 0.0,
            };
            (i1, d1, d2, j1, verdicts)
        }
        None => (
            f64::NAN,
            f64::NAN,
            f64::NAN,
            f64::NAN,
            VerdictFlags {
                a0_real: false,
                i1_pos: false,
                iprime1_zero: false,
                ipp1_neg: false,
                j1_neg: false,
            },
        ),
    };

    Ok(DimensionRow {
        n,
        t_c,
        c0,
        c1,
        c2,
        a0,
        disc,
        i1,
        iprime1,
        ipp1,
        j1,
        verdicts,
        certificate,
    })
}

/// Scan outcome: all rows sorted by `(n, T_c)` plus the least `n` whose
/// exact bound certificate holds.
#[derive(Debug, Clone, Serialize)]
pub struct ScanResult {
    pub rows: Vec<DimensionRow>,
    pub minimal_certified_n: Option<i64>,
}

/// Scan `n_range x tc_list`. The range must stay inside `[25, 500]`, the
/// domain on which the moment-ratio bounds are proved.
pub fn certificate_scan(n_range: RangeInclusive<i64>, tc_list: &[f64]) -> Result<ScanResult> {
    let (lo, hi) = (*n_range.start(), *n_range.end());
    if lo < 25 || hi > 500 || lo > hi {
        return Err(Error::Config(format!(
            "scan range must lie within [25, 500], got {lo}..={hi}"
        )));
    }
    if tc_list.is_empty() {
        return Err(Error::Config("scan needs at least one T_c".into()));
    }
    for &t_c in tc_list {
        if !(t_c < 0.0) {
            return Err(Error::Config(format!(
                "T_c values must be negative, got {t_c}"
            )));
        }
    }
    let mut tcs = tc_list.to_vec();
    tcs.sort_by(|a, b| a.total_cmp(b));
    tcs.dedup();

    let mut rows = Vec::with_capacity(((hi - lo + 1) as usize) * tcs.len());
    let mut minimal_certified_n = None;
    for n in lo..=hi {
        if bound_certificate(n).certified && minimal_certified_n.is_none() {
            minimal_certified_n = Some(n);
        }
        for &t_c in &tcs {
            rows.push(dimension_row(n, t_c)?);
        }
    }
    Ok(ScanResult {
        rows,
        minimal_certified_n,
    })
}
