//! Small multivariate polynomials over exponent vectors, enough to expand
//! the sphere-moment integrands into monomials and integrate them exactly.
//! Dimensions stay at or below 8 and degrees below 16, so a BTreeMap keyed
//! by the exponent vector is plenty (and keeps iteration deterministic).

use crate::specfun::monomial_sphere_moment;
use crate::Result;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct MultiPoly {
    m: usize,
    terms: BTreeMap<Vec<u8>, f64>,
}

impl MultiPoly {
    pub fn zero(m: usize) -> Self {
        Self {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(m: usize, c: f64) -> Self {
        let mut p = Self::zero(m);
        if c != 0.0 {
            p.terms.insert(vec![0; m], c);
        }
        p
    }

    /// The coordinate monomial `x_i`.
    pub fn var(m: usize, i: usize) -> Self {
        assert!(i < m);
        let mut e = vec![0u8; m];
        e[i] = 1;
        let mut p = Self::zero(m);
        p.terms.insert(e, 1.0);
        p
    }

    pub fn add_term(&mut self, exps: Vec<u8>, coeff: f64) {
        if coeff == 0.0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0.0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (e, &c) in &other.terms {
            self.add_term(e.clone(), c);
        }
    }

    pub fn scale(&mut self, factor: f64) {
        if factor == 0.0 {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= factor;
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m);
        let mut out = Self::zero(self.m);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let exps: Vec<u8> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    /// Multiply by the monomial `x_p x_q` (exponent shift).
    pub fn mul_xy(&self, p: usize, q: usize) -> Self {
        let mut out = Self::zero(self.m);
        for (e, &c) in &self.terms {
            let mut exps = e.clone();
            exps[p] += 1;
            exps[q] += 1;
            out.terms.insert(exps, c);
        }
        out
    }

    /// `|x|^2 = sum_i x_i^2`.
    pub fn radius_sq(m: usize) -> Self {
        let mut p = Self::zero(m);
        for i in 0..m {
            let mut e = vec![0u8; m];
            e[i] = 2;
            p.terms.insert(e, 1.0);
        }
        p
    }

    /// `sum_j a_j (|x|^2)^j` for univariate coefficients `a`.
    pub fn univariate_in_radius_sq(coeffs: &[f64], m: usize) -> Self {
        let r2 = Self::radius_sq(m);
        let mut power = Self::constant(m, 1.0);
        let mut out = Self::zero(m);
        for (j, &a) in coeffs.iter().enumerate() {
            if j > 0 {
                power = power.mul(&r2);
            }
            let mut t = power.clone();
            t.scale(a);
            out.add_assign(&t);
        }
        out
    }

    /// Exact integral over the sphere of radius `r` in `R^m`: each monomial
    /// contributes its unit-sphere moment scaled by `r^{m-1+deg}`.
    pub fn sphere_integral(&self, r: f64) -> Result<f64> {
        let mut acc = 0.0;
        for (e, &c) in &self.terms {
            let exps: Vec<u32> = e.iter().map(|&v| u32::from(v)).collect();
            let moment = monomial_sphere_moment(self.m, &exps)?;
            if moment == 0.0 {
                continue;
            }
            let deg: u32 = exps.iter().sum();
            acc += c * moment * r.powi(self.m as i32 - 1 + deg as i32);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::sphere_area;
    use std::f64::consts::PI;

    #[test]
    fn arithmetic_and_integration() {
        // (x0 + x1)^2 over S^1: int (x^2 + 2xy + y^2) = 2 * pi/ ... = |S^1| = 2 pi
        let m = 2;
        let mut s = MultiPoly::var(m, 0);
        s.add_assign(&MultiPoly::var(m, 1));
        let sq = s.mul(&s);
        let integral = sq.sphere_integral(1.0).unwrap();
        assert!((integral - 2.0 * PI).abs() < 1e-13);
        // radius scaling: degree-2 integrand over S^1_r scales as r^{1+2}
        let at_2 = sq.sphere_integral(2.0).unwrap();
        assert!((at_2 - 8.0 * 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn radius_sq_restricts_to_constant_on_sphere() {
        let m = 4;
        let r2 = MultiPoly::radius_sq(m);
        let area = sphere_area(m).unwrap();
        // int_{S^3_r} |x|^2 = r^2 * r^{m-1} * |S^3|
        let v = r2.sphere_integral(1.5).unwrap();
        assert!((v - 1.5f64.powi(5) * area).abs() < 1e-12 * v);
    }

    #[test]
    fn univariate_composition() {
        // f(s) = 2 - s at s = |x|^2, evaluated via integration against 1
        let m = 3;
        let f = MultiPoly::univariate_in_radius_sq(&[2.0, -1.0], m);
        let area = sphere_area(m).unwrap();
        let v = f.sphere_integral(2.0).unwrap();
        // on the sphere of radius 2, f = 2 - 4 = -2
        assert!((v - (-2.0) * 2.0f64.powi(2) * area).abs() < 1e-12 * v.abs());
    }
}
