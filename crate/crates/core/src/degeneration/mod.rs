//! Dimension data from the degeneration to a chain of elliptic curves.
//!
//! Everything here is a bound: the node conditions are necessary for an
//! endomorphism of the limit push forward to smooth, not sufficient, so the
//! space of smoothable endomorphisms is only ever bounded above.

pub mod endo;
pub mod linalg;

use crate::error::{Error, Result};
use crate::splitting::SplittingType;

pub use endo::{
    check_model, diag_map_rank, node_compatibility, nullity, order_preserving_both,
    order_preserving_space, verify_models, ConstraintSystem, DiagReport, EndoModel, EndoSolution,
    ModelCheck, Node, SpecialCase,
};

/// Splitting type of `f_* L` for a degree `d` line bundle on an elliptic
/// curve with a degree `k` map to the line. Writing `d = a + nk` with
/// `0 <= a < k`: `(n-2, (n-1)^(k-2), n)` when `L = f^* O(n)`, otherwise
/// `((n-1)^(k-a), n^a)`.
pub fn elliptic_pushforward(k: i64, d: i64, pullback: bool) -> Result<SplittingType> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("cover degree must be >= 2, got {k}")));
    }
    let n = d.div_euclid(k);
    let a = d.rem_euclid(k);
    let parts = if pullback {
        if a != 0 {
            return Err(Error::NotPullbackDegree { k, d });
        }
        let mut parts = vec![n - 2];
        parts.extend(std::iter::repeat_n(n - 1, (k - 2) as usize));
        parts.push(n);
        parts
    } else {
        let mut parts = vec![n - 1; (k - a) as usize];
        parts.extend(std::iter::repeat_n(n, a as usize));
        parts
    };
    SplittingType::new(parts)
}

/// Sum of the per-component bounds along the chain minus the `k` node
/// conditions at each of the `g - 1` nodes: `k(k+1)/2 + eps_1` at each end,
/// `k + eps_i` in the middle.
pub fn chain_bound_long_form(g: usize, k: i64, eps: &[u8]) -> Result<i64> {
    check_chain(g, eps)?;
    let e = |i: usize| i64::from(eps[i - 1]);
    if g == 1 {
        // A single component has no nodes.
        return Ok(k * k + e(1));
    }
    let ends = 2 * (k * (k + 1) / 2) + e(1) + e(g);
    let middle: i64 = (2..g).map(|i| k + e(i)).sum();
    Ok(ends + middle - k * (g as i64 - 1))
}

/// `k^2 + delta`, where `delta` counts the special components.
pub fn chain_bound(g: usize, k: i64, eps: &[u8]) -> Result<i64> {
    let long = chain_bound_long_form(g, k, eps)?;
    let delta: i64 = eps.iter().map(|&x| i64::from(x)).sum();
    debug_assert_eq!(long, k * k + delta);
    Ok(k * k + delta)
}

fn check_chain(g: usize, eps: &[u8]) -> Result<()> {
    if g == 0 {
        return Err(Error::InvalidArgument("chain needs g >= 1 components".into()));
    }
    if eps.len() != g {
        return Err(Error::InvalidArgument(format!(
            "expected {g} component flags, got {}",
            eps.len()
        )));
    }
    if eps.iter().any(|&x| x > 1) {
        return Err(Error::InvalidArgument("component flags must be 0 or 1".into()));
    }
    Ok(())
}
