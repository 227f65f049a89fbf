//! Rotation of the under-pressure set over the non-accepted active arms.
//!
//! The pressure set is a sliding window over `Y` read cyclically: each step
//! drops the oldest element and appends the next arm of `Y`, so after `|Y|`
//! steps every arm has entered and left the window exactly once.

use crate::error::{Error, Result};

/// One rotation step.
///
/// `rr_t` is the 1-based iteration counter; the appended arm is
/// `y[(rr_t - 1) mod |Y|]`. An empty pressure set only advances the counter.
pub fn round_robin_step(pressure: &mut Vec<usize>, y: &[usize], rr_t: &mut usize) -> Result<()> {
    if !pressure.is_empty() {
        if y.is_empty() {
            return Err(Error::InvalidPolicy(
                "cannot rotate a pressure set over an empty Y".into(),
            ));
        }
        pressure.remove(0);
        pressure.push(y[(*rr_t + y.len() - 1) % y.len()]);
    }
    *rr_t += 1;
    Ok(())
}

/// Initial window `(y_1, ..., y_s)` and counter `s + 1`.
pub fn round_robin_init(y: &[usize], size: usize) -> (Vec<usize>, usize) {
    let s = size.min(y.len());
    (y[..s].to_vec(), s + 1)
}
