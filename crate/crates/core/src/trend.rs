//! Prefix-scale boundedness of per-layer sequences.
//!
//! A finite prefix cannot prove that an infinite sequence is bounded. The rule
//! used throughout the crate is: a sequence is *bounded at scale* when its
//! running maximum is already reached within the first half of the exactly
//! known values, so the second half of the explored prefix produced nothing
//! new. Values known only as lower bounds (truncated components, say) may
//! refute boundedness but never establish it.

/// Applies the bounded-at-scale rule.
pub fn bounded_at_scale(exact: &[u64], lower_bounds: &[u64]) -> bool {
    if exact.is_empty() {
        return lower_bounds.iter().all(|&x| x == 0);
    }
    let half = exact.len().div_ceil(2);
    let plateau = exact[..half].iter().copied().max().unwrap_or(0);
    exact.iter().chain(lower_bounds).all(|&x| x <= plateau)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_and_eventually_constant_sequences_are_bounded() {
        assert!(bounded_at_scale(&[0; 10], &[]));
        assert!(bounded_at_scale(&[0, 1, 1, 1, 1, 1], &[]));
        assert!(bounded_at_scale(&[2; 40], &[1]));
    }

    #[test]
    fn growing_sequences_are_not() {
        let linear: Vec<u64> = (0..13).collect();
        assert!(!bounded_at_scale(&linear, &[]));
        assert!(!bounded_at_scale(&[1, 1, 1, 1, 1, 2], &[]));
        assert!(!bounded_at_scale(&[1, 1], &[5]));
    }

    #[test]
    fn lower_bounds_alone_never_certify() {
        assert!(!bounded_at_scale(&[], &[4, 2, 1]));
        assert!(bounded_at_scale(&[], &[]));
    }
}
