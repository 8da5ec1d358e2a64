//! Machine-readable report rendering.
//!
//! CSV layouts are frozen: the header lines below are the contract, floats
//! are printed with 17 significant digits (`{:.16e}`), line endings are LF,
//! booleans are `true`/`false`, absent optionals are empty fields. JSON
//! mirrors the same field names through serde. Identical inputs render
//! byte-identical reports.

use crate::energy::{EnergyProfile, HessianReport, MomentComparison};
use crate::nonuniq::ThresholdReport;
use crate::reduction::{DimensionRow, ScanResult};
use crate::specfun::{HalfLineMoment, MomentMethod};
use serde::Serialize;

/// 17-significant-digit float field.
fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f).unwrap_or_default()
}

/// `scan` rows:
/// `n,t_c,c0,c1,c2,a0,disc,i1,iprime1,ipp1,j1,a0_real,i1_pos,iprime1_zero,ipp1_neg,j1_neg,q_pos,p_pos,i1_bound,certified`
pub fn dimension_rows_csv(rows: &[DimensionRow]) -> String {
    let mut out = String::from(
        "n,t_c,c0,c1,c2,a0,disc,i1,iprime1,ipp1,j1,a0_real,i1_pos,iprime1_zero,ipp1_neg,j1_neg,q_pos,p_pos,i1_bound,certified\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.n,
            fmt_f(r.t_c),
            fmt_f(r.c0),
            fmt_f(r.c1),
            fmt_f(r.c2),
            fmt_opt(r.a0),
            fmt_f(r.disc),
            fmt_f(r.i1),
            fmt_f(r.iprime1),
            fmt_f(r.ipp1),
            fmt_f(r.j1),
            r.verdicts.a0_real,
            r.verdicts.i1_pos,
            r.verdicts.iprime1_zero,
            r.verdicts.ipp1_neg,
            r.verdicts.j1_neg,
            r.certificate.q_pos,
            r.certificate.p_pos,
            r.certificate.i1_bound,
            r.certificate.certified,
        ));
    }
    out
}

fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

pub fn scan_json(scan: &ScanResult) -> String {
    to_json_pretty(scan)
}

/// `energy-profile` rows: `eps,f_closed,f_quadrature,rel_diff`.
pub fn energy_profile_csv(profile: &EnergyProfile) -> String {
    let mut out = String::from("eps,f_closed,f_quadrature,rel_diff\n");
    for s in &profile.samples {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f(s.eps),
            fmt_f(s.f_closed),
            fmt_f(s.f_quadrature),
            fmt_f(s.rel_diff),
        ));
    }
    out
}

pub fn energy_profile_json(profile: &EnergyProfile) -> String {
    to_json_pretty(profile)
}

/// `hessian` scalars and eigenvalue as a single CSV row:
/// `eps,term_a_scalar,term_b_scalar,term_c_scalar,jint_closed,jint_quadrature,fint_closed,fint_quadrature,min_eigenvalue`
/// (the matrix itself is carried by the JSON form).
pub fn hessian_csv(rep: &HessianReport) -> String {
    let mut out = String::from(
        "eps,term_a_scalar,term_b_scalar,term_c_scalar,jint_closed,jint_quadrature,fint_closed,fint_quadrature,min_eigenvalue\n",
    );
    out.push_str(&format!(
        "{},{},{},{},{},{},{},{},{}\n",
        fmt_f(rep.eps),
        fmt_f(rep.term_a_scalar),
        fmt_f(rep.term_b_scalar),
        fmt_f(rep.term_c_scalar),
        fmt_f(rep.jint_closed),
        fmt_f(rep.jint_quadrature),
        fmt_f(rep.fint_closed),
        fmt_f(rep.fint_quadrature),
        fmt_f(rep.min_eigenvalue),
    ));
    out
}

pub fn hessian_json(rep: &HessianReport) -> String {
    to_json_pretty(rep)
}

/// One verified moment identity for the `moments` command.
#[derive(Debug, Clone, Serialize)]
pub struct MomentRow {
    pub identity: char,
    pub m: usize,
    pub r: f64,
    pub p: i64,
    pub q: i64,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
}

impl MomentRow {
    pub fn new(identity: char, m: usize, r: f64, p: i64, q: i64, cmp: MomentComparison) -> Self {
        Self {
            identity,
            m,
            r,
            p,
            q,
            lhs: cmp.lhs,
            rhs: cmp.rhs,
            rel_err: cmp.rel_err,
        }
    }
}

/// `moments` rows: `identity,m,r,p,q,lhs,rhs,rel_err` (`p = q = -1` for the
/// full-sphere identity).
pub fn moment_rows_csv(rows: &[MomentRow]) -> String {
    let mut out = String::from("identity,m,r,p,q,lhs,rhs,rel_err\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.identity,
            r.m,
            fmt_f(r.r),
            r.p,
            r.q,
            fmt_f(r.lhs),
            fmt_f(r.rhs),
            fmt_f(r.rel_err),
        ));
    }
    out
}

pub fn moment_rows_json(rows: &[MomentRow]) -> String {
    to_json_pretty(&rows)
}

/// One half-line moment `c_q` with its cross-route agreement.
#[derive(Debug, Clone, Serialize)]
pub struct CqRow {
    pub n: i64,
    pub t_c: f64,
    pub q: u32,
    pub alpha: f64,
    pub a: f64,
    pub ln_value: f64,
    pub value: f64,
    pub method: MomentMethod,
    /// relative gap to the backward-recursion route
    pub recursion_rel: f64,
    /// relative gap to the quadrature route (NaN when the value is too
    /// small for the integrand to be representable)
    pub quadrature_rel: f64,
}

impl CqRow {
    pub fn new(n: i64, t_c: f64, q: u32, moment: &HalfLineMoment, recursion_rel: f64, quadrature_rel: f64) -> Self {
        Self {
            n,
            t_c,
            q,
            alpha: moment.alpha,
            a: moment.a,
            ln_value: moment.ln_value,
            value: moment.value(),
            method: moment.method,
            recursion_rel,
            quadrature_rel,
        }
    }
}

/// `cq` rows: `n,t_c,q,alpha,a,ln_value,value,method,recursion_rel,quadrature_rel`.
pub fn cq_rows_csv(rows: &[CqRow]) -> String {
    let mut out = String::from("n,t_c,q,alpha,a,ln_value,value,method,recursion_rel,quadrature_rel\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{:?},{},{}\n",
            r.n,
            fmt_f(r.t_c),
            r.q,
            fmt_f(r.alpha),
            fmt_f(r.a),
            fmt_f(r.ln_value),
            fmt_f(r.value),
            r.method,
            fmt_f(r.recursion_rel),
            fmt_f(r.quadrature_rel),
        ));
    }
    out
}

pub fn cq_rows_json(rows: &[CqRow]) -> String {
    to_json_pretty(&rows)
}

/// Residual maxima of one bubble-identity run.
#[derive(Debug, Clone, Serialize)]
pub struct BubbleCheckRow {
    pub n: usize,
    pub t_c: f64,
    pub eps: f64,
    pub seed: u64,
    pub points: usize,
    pub max_interior: f64,
    pub max_boundary: f64,
    pub max_einstein: f64,
}

/// `bubble-check` rows: `n,t_c,eps,seed,points,max_interior,max_boundary,max_einstein`.
pub fn bubble_rows_csv(rows: &[BubbleCheckRow]) -> String {
    let mut out = String::from("n,t_c,eps,seed,points,max_interior,max_boundary,max_einstein\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.n,
            fmt_f(r.t_c),
            fmt_f(r.eps),
            r.seed,
            r.points,
            fmt_f(r.max_interior),
            fmt_f(r.max_boundary),
            fmt_f(r.max_einstein),
        ));
    }
    out
}

pub fn bubble_rows_json(rows: &[BubbleCheckRow]) -> String {
    to_json_pretty(&rows)
}

/// Threshold report as JSON:
/// `{spec, threshold_k, i1_at_threshold, sck_at_threshold, sc_infinity, margin, clears_limit}`.
pub fn threshold_json(rep: &ThresholdReport) -> String {
    to_json_pretty(rep)
}

/// CSV single-row form of the threshold report:
/// `n1,n2,r_g1,h_g1,r_g2,v1,vhat1,v2,threshold_k,i1_at_threshold,sck_at_threshold,sc_infinity,margin,clears_limit`.
pub fn threshold_csv(rep: &ThresholdReport) -> String {
    let mut out = String::from(
        "n1,n2,r_g1,h_g1,r_g2,v1,vhat1,v2,threshold_k,i1_at_threshold,sck_at_threshold,sc_infinity,margin,clears_limit\n",
    );
    out.push_str(&format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        rep.spec.n1,
        rep.spec.n2,
        fmt_f(rep.spec.r_g1),
        fmt_f(rep.spec.h_g1),
        fmt_f(rep.spec.r_g2),
        fmt_f(rep.spec.v1),
        fmt_f(rep.spec.vhat1),
        fmt_f(rep.spec.v2),
        fmt_f(rep.threshold_k),
        fmt_f(rep.i1_at_threshold),
        fmt_f(rep.sck_at_threshold),
        fmt_f(rep.sc_infinity),
        fmt_f(rep.margin),
        rep.clears_limit,
    ));
    out
}
