use crate::error::{domain, Error, Result};
use crate::math;

/// Number of equally spaced points in the global scan of [`maximize_scalar`].
pub const SCAN_POINTS: usize = 41;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub argmax: f64,
    pub value: f64,
}

/// Global maximum of `f` on `[a, b]`.
///
/// A scan over [`SCAN_POINTS`] equally spaced points (endpoints included)
/// picks the best cell, then golden-section search refines inside the two
/// neighbouring cells until the bracket is narrower than `tol`. The result is
/// never worse than the best scan point, so a monotone `f` returns the
/// endpoint exactly. A refined point within `2 tol` of an endpoint is replaced
/// by the endpoint when their values agree to rounding, so a maximum on a
/// flat boundary is reported on the boundary.
pub fn maximize_scalar<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<Maximum> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(domain!("maximization needs finite a < b, got [{a}, {b}]"));
    }
    if !(tol > 0.0) {
        return Err(domain!("tolerance must be positive, got {tol}"));
    }

    let last = SCAN_POINTS - 1;
    let grid = |i: usize| {
        if i == last {
            b
        } else {
            a + (b - a) * i as f64 / last as f64
        }
    };
    let mut eval = |x: f64| -> Result<f64> {
        let y = f(x);
        // -inf is a legitimate "impossible" value; NaN and +inf are not
        if y.is_nan() || y == f64::INFINITY {
            return Err(Error::NonFinite { node: x });
        }
        Ok(y)
    };

    let mut best = Maximum { argmax: a, value: f64::NEG_INFINITY };
    let mut best_i = 0;
    for i in 0..SCAN_POINTS {
        let x = grid(i);
        let y = eval(x)?;
        if y > best.value {
            best = Maximum { argmax: x, value: y };
            best_i = i;
        }
    }
    if best.value == f64::NEG_INFINITY {
        return Err(Error::DegenerateCurve);
    }

    let mut lo = grid(best_i.saturating_sub(1));
    let mut hi = grid((best_i + 1).min(last));
    let inv_phi = (math::sqrt(5.0) - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = eval(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = eval(x2)?;
        }
    }
    let (x, y) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    if y > best.value {
        best = Maximum { argmax: x.clamp(a, b), value: y };
    }
    for end in [a, b] {
        if best.argmax != end && (best.argmax - end).abs() <= 2.0 * tol {
            let y_end = eval(end)?;
            if y_end >= best.value - 1e-12 * best.value.abs().max(1.0) {
                best = Maximum { argmax: end, value: y_end };
            }
        }
    }
    Ok(best)
}
