//! Hyperbolic Dehn-filling constants. The geometry itself (systole, cusp
//! shape) is an input; this module only evaluates the closed-form bounds.
//!
//! This is the one floating-point module. The constants are decimal
//! literals, so results are good to about `1e-9` relative error in `f64`.

use crate::error::{domain, Error, Result};
use crate::num::Real;

/// Normalized length above which the core-geodesic bound applies.
pub const LENGTH_THRESHOLD: f64 = 10.69;
/// Cap on the short-geodesic constant `c`.
pub const C_CAP: f64 = 0.0735;
/// Systole factor in `c`.
pub const SYSTOLE_FACTOR: f64 = 0.5052;
/// Offset in `2π / (L̂² - 28.78)`.
pub const LENGTH_OFFSET: f64 = 28.78;

fn lit<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("finite literal")
}

/// `|q| / 5`, a lower bound on the normalized length of `p/q` when the
/// `1/0` filling is not hyperbolic.
pub fn normalized_length_lower<F: Real>(q: i64) -> F {
    lit::<F>(q.unsigned_abs() as f64) / lit(5.0)
}

/// Upper bound `2π / (L̂² - 28.78)` on the core geodesic length, valid for
/// `L̂ >= 10.69`.
pub fn core_geodesic_bound<F: Real>(lhat: F) -> Result<F> {
    if lhat.is_nan() || lhat < lit(LENGTH_THRESHOLD) {
        return Err(Error::OutOfRegime(format!(
            "normalized length {lhat} is below {LENGTH_THRESHOLD}"
        )));
    }
    Ok(lit::<F>(2.0) * F::PI() / (lhat * lhat - lit(LENGTH_OFFSET)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FillingConstants<F> {
    /// Length below which the core curve is the only geodesic.
    pub c: F,
    /// Normalized length that guarantees the core-curve bound `c`.
    pub d: F,
}

/// `c = min(0.0735, 0.5052·sys)` and `D = max(10.69, √(2π/c + 28.78))`.
pub fn filling_constants<F: Real>(sys: F) -> Result<FillingConstants<F>> {
    if !sys.is_finite() || sys <= F::zero() {
        return Err(domain(format!("systole {sys} must be positive and finite")));
    }
    let c = lit::<F>(C_CAP).min(lit::<F>(SYSTOLE_FACTOR) * sys);
    let d =
        lit::<F>(LENGTH_THRESHOLD).max((lit::<F>(2.0) * F::PI() / c + lit(LENGTH_OFFSET)).sqrt());
    Ok(FillingConstants { c, d })
}

/// `5D`: denominators with `|q|` above this are in the rigid regime.
pub fn safe_q_threshold<F: Real>(sys: F) -> Result<F> {
    Ok(lit::<F>(5.0) * filling_constants(sys)?.d)
}
