//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside a function's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The half-line moment series contracts too slowly; the caller must
    /// fall back to quadrature.
    #[error("series converges too slowly at a = {a} (alpha = {alpha}); fall back to quadrature")]
    SlowConvergence { alpha: f64, a: f64 },

    /// A half-line moment with a non-integrable tail was requested.
    #[error("divergent moment: n - 5 - 2q = {exponent} must exceed 1 (n = {n}, q = {q})")]
    DivergentMoment { n: i64, q: u32, exponent: i64 },

    /// Algebraic Weyl tensors vanish identically below dimension four.
    #[error("degenerate dimension m = {m}: the algebraic Weyl space is trivial for m < 4")]
    DegenerateDimension { m: usize },

    /// Invalid configuration (degree bounds, ranges, parse failures).
    #[error("config error: {0}")]
    Config(String),

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not converge: best value {value:.6e}, error estimate {error_estimate:.6e}")]
    QuadratureNotConverged { value: f64, error_estimate: f64 },

    /// The integrand produced NaN or an infinity inside the domain.
    #[error("integrand returned a non-finite value at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    /// The quadratic `p_n` has no real root at this `(n, T_c)`; the
    /// degree-one construction is unavailable through this route.
    #[error("no real root: negative radicand at n = {n}, T_c = {t_c}")]
    NoRealRoot { n: i64, t_c: f64 },

    /// A bounded search ran out of range without meeting its predicate.
    #[error("search exhausted: no solution found below {limit:.3e}")]
    SearchExhausted { limit: f64 },
}
