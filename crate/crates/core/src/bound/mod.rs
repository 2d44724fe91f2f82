//! Lower-bound expressions, asymptotic constants, ring families and gadget ratios.

mod asymptotic;
mod expr;
mod ratio;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

pub use asymptotic::{
    girth_limit, kahale_schulman, ring_family, ring_family_with_cap, ring_graph, upper_bound_fd, upper_bound_fd_with_cap,
    AsymptoticError, FamilyRow, FamilySeries, Radical, UpperBound, DEFAULT_DIRECT_CAP,
    DEFAULT_FD_CAP,
};
pub use expr::{
    compare, p_bound, per_vertex_root, q_bound, BoundError, BoundExpr, P_FAMILY, Q_FAMILY,
};
pub use ratio::{
    diamond_gadgets, min_ratio_check, min_ratio_check_separated, pendant_diamond_gadgets,
    set_partitions, star_split_check, two_bundle_gadgets, Gadget, RatioError, RatioReport,
    RatioRow, StarSplitReport, StarSplitRow, STAR_SPLIT_EXPECTED,
};

/// A float together with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Approx {
    pub value: f64,
    pub err: f64,
}

impl Approx {
    /// `exp(ln)` where `ln` is known to within `ln_err`.
    pub fn from_ln(ln: f64, ln_err: f64) -> Self {
        let value = ln.exp();
        let err = value * (ln_err.exp_m1() + 4.0 * f64::EPSILON);
        Approx { value, err }
    }

    /// Whether the true value is certainly within `tol` of `target`.
    pub fn within(&self, target: f64, tol: f64) -> bool {
        (self.value - target).abs() + self.err < tol
    }
}

/// Natural log of a positive big integer and an absolute error bound, from its
/// top 64 bits.
pub(crate) fn ln_biguint(x: &BigUint) -> (f64, f64) {
    assert!(!x.is_zero(), "log of zero");
    let bits = x.bits();
    let (top, shift) = if bits <= 64 {
        (x.to_u64().expect("fits"), 0u64)
    } else {
        let shift = bits - 64;
        ((x >> shift).to_u64().expect("fits"), shift)
    };
    let head = (top as f64).ln();
    let tail = shift as f64 * std::f64::consts::LN_2;
    let ln = head + tail;
    // truncated low bits, the u64 -> f64 rounding and three rounded float ops
    let err = 2f64.powi(-52) + (head.abs() + tail.abs() + ln.abs()) * f64::EPSILON;
    (ln, err)
}
