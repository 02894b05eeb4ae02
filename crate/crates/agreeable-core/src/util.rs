//! Small numeric helpers shared by the solvers.

/// ln ln m, clamped below at 1.
///
/// The iterated logarithm only exceeds 1 from m = 16 on; clamping keeps the
/// deviation thresholds and covering parameters positive and well defined for
/// every m >= 2.
pub(crate) fn clamped_ln_ln(m: u32) -> f64 {
    debug_assert!(m >= 1);
    (m as f64).ln().ln().max(1.0)
}

/// Binomial coefficient C(n, k) with overflow saturation.
///
/// Returns `u128::MAX` when the exact value does not fit, which is treated as
/// "larger than any configured cap" by the callers.
pub(crate) fn binomial_saturating(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        match acc.checked_mul((n - i) as u128) {
            Some(v) => acc = v / (i as u128 + 1),
            None => return u128::MAX,
        }
    }
    acc
}
