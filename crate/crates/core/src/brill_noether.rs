//! Brill-Noether numerology for a general k-gonal curve.
//!
//! Line bundles of degree `d` on a genus `g` curve with a degree `k` map to
//! the line push forward to rank `k` bundles of degree
//! `d' = d - g + 1 - k`. The locus `W^r_d` is the union of the closed
//! splitting loci of the "balanced plus balanced" types `w_{r,l}`, and each
//! closed locus has dimension `g - u(w_{r,l})` when that is non-negative.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::splitting::{balanced, SplittingType, TypeEnumerator};

/// Ambient parameters: genus, degree of the cover, degree of line bundles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BnContext {
    pub g: i64,
    pub k: i64,
    pub d: i64,
}

impl BnContext {
    pub fn new(g: i64, k: i64, d: i64) -> Result<Self> {
        if g < 0 {
            return Err(Error::InvalidArgument(format!("genus must be >= 0, got {g}")));
        }
        if k < 2 {
            return Err(Error::InvalidArgument(format!("cover degree must be >= 2, got {k}")));
        }
        Ok(BnContext { g, k, d })
    }

    /// Degree of the push forward of a degree `d` line bundle.
    pub fn pushforward_degree(&self) -> i64 {
        self.d - self.g + 1 - self.k
    }

    pub fn rank(&self) -> usize {
        self.k as usize
    }

    /// The generic splitting type, maximum of the stratification.
    pub fn balanced(&self) -> SplittingType {
        balanced(self.rank(), self.pushforward_degree()).expect("k >= 2")
    }

    /// `d - g`: for `r` at most this, every line bundle has `r + 1` sections.
    pub fn excess(&self) -> i64 {
        self.d - self.g
    }

    /// Admissible range of `l` for `w_{r,l}`: `max(0, r + 2 - k) ..= r`.
    pub fn ell_range(&self, r: i64) -> (i64, i64) {
        ((r + 2 - self.k).max(0), r)
    }

    /// Whether `w_{r,l}` is maximal: `l = 0` or `l <= g - d + 2r + 1 - k`.
    pub fn is_maximal_ell(&self, r: i64, ell: i64) -> bool {
        ell == 0 || ell <= self.g - self.d + 2 * r + 1 - self.k
    }
}

/// Classical Brill-Noether number `g - (r+1)(g - d + r)`.
pub fn rho(g: i64, r: i64, d: i64) -> i64 {
    g - (r + 1) * (g - d + r)
}

/// Gonality-constrained bound: the maximum over `l in 0..=r'` of
/// `rho(g, r - l, d) - l k` with `r' = min(r, g - d + r - 1)`.
/// Returns `g` when `r <= d - g`.
pub fn rho_k(ctx: &BnContext, r: i64) -> i64 {
    if r <= ctx.excess() {
        return ctx.g;
    }
    let top = r.min(ctx.g - ctx.d + r - 1);
    (0..=top)
        .map(|ell| rho(ctx.g, r - ell, ctx.d) - ell * ctx.k)
        .max()
        .expect("r > d - g makes the range non-empty")
}

fn check_stratum(ctx: &BnContext, r: i64, ell: i64) -> Result<()> {
    if r <= ctx.excess() {
        return Err(Error::WholePicard {
            r,
            excess: ctx.excess(),
        });
    }
    let (lo, hi) = ctx.ell_range(r);
    if ell < lo || ell > hi {
        return Err(Error::NoSuchStratum { ell, lo, hi });
    }
    Ok(())
}

/// `w_{r,l} = B(k - r - 1 + l, d' - l) + B(r + 1 - l, l)`.
pub fn w_rl(ctx: &BnContext, r: i64, ell: i64) -> Result<SplittingType> {
    check_stratum(ctx, r, ell)?;
    let negative = balanced((ctx.k - r - 1 + ell) as usize, ctx.pushforward_degree() - ell)?;
    let nonnegative = balanced((r + 1 - ell) as usize, ell)?;
    Ok(negative.direct_sum(&nonnegative))
}

/// Closed form `l k - (r + 1 - l)(d - g - r + l)` for `u(w_{r,l})`.
pub fn u_wrl_closed_form(ctx: &BnContext, r: i64, ell: i64) -> Result<i64> {
    check_stratum(ctx, r, ell)?;
    Ok(ell * ctx.k - (r + 1 - ell) * (ctx.d - ctx.g - r + ell))
}

/// One balanced-plus-balanced stratum of `W^r_d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumReport {
    #[serde(rename = "type")]
    pub stratum: SplittingType,
    /// `None` for the whole-Picard sentinel.
    pub ell: Option<i64>,
    pub u: u64,
    /// `g - u`, or `None` when the locus is empty (`u > g`).
    pub dim: Option<i64>,
    pub maximal: bool,
}

impl StratumReport {
    pub fn is_empty(&self) -> bool {
        self.dim.is_none()
    }
}

/// Decomposition of `W^r_d` into closed splitting loci.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WrdDecomposition {
    pub g: i64,
    pub k: i64,
    pub d: i64,
    pub r: i64,
    /// `r <= d - g`: the locus is all of `Pic^d`, reported as one stratum.
    pub whole_picard: bool,
    pub strata: Vec<StratumReport>,
}

impl WrdDecomposition {
    /// Strata that are actual components (maximal types).
    pub fn components(&self) -> impl Iterator<Item = &StratumReport> {
        self.strata.iter().filter(|s| s.maximal)
    }

    /// Largest dimension among non-empty components.
    pub fn max_dimension(&self) -> Option<i64> {
        self.components().filter_map(|s| s.dim).max()
    }
}

fn dimension(g: i64, u: u64) -> Option<i64> {
    (u as i128 <= g as i128).then(|| g - u as i64)
}

/// Every balanced-plus-balanced type `w_{r,l}` for `l` in the admissible
/// range, sorted by `l`, with the maximality flag and dimension.
pub fn wrd_decomposition(ctx: &BnContext, r: i64) -> Result<WrdDecomposition> {
    if r < 0 {
        return Err(Error::InvalidArgument(format!("r must be >= 0, got {r}")));
    }
    let mut out = WrdDecomposition {
        g: ctx.g,
        k: ctx.k,
        d: ctx.d,
        r,
        whole_picard: false,
        strata: Vec::new(),
    };
    if r <= ctx.excess() {
        out.whole_picard = true;
        out.strata.push(StratumReport {
            stratum: ctx.balanced(),
            ell: None,
            u: 0,
            dim: Some(ctx.g),
            maximal: true,
        });
        return Ok(out);
    }
    let (lo, hi) = ctx.ell_range(r);
    for ell in lo..=hi {
        let stratum = w_rl(ctx, r, ell)?;
        let u = stratum.u();
        out.strata.push(StratumReport {
            dim: dimension(ctx.g, u),
            maximal: ctx.is_maximal_ell(r, ell),
            ell: Some(ell),
            u,
            stratum,
        });
    }
    Ok(out)
}

/// Default search window for [`maximal_strata_bruteforce`]: large enough to
/// contain every maximal type (parts lie in `[degree - r, r]`).
pub fn default_window(rank: usize, degree: i64, r: i64) -> i64 {
    degree.abs() + rank as i64 + r.max(0) + 2
}

/// Independent oracle: enumerates every type of the given rank and degree
/// with parts in `[-window, window]` and `h^0 >= r + 1`, and returns the
/// dominance-maximal ones in lexicographic order.
pub fn maximal_strata_bruteforce(
    rank: usize,
    degree: i64,
    r: i64,
    window: i64,
    exec: Execution,
) -> Result<Vec<SplittingType>> {
    let needed = (r + 1).max(0) as u64;
    let mut candidates: Vec<(i128, SplittingType)> =
        TypeEnumerator::new(rank, degree, -window, window)
            .collect(exec)?
            .into_iter()
            .filter(|e| e.h0_twist(0) >= needed)
            .map(|e| (prefix_mass(&e), e))
            .collect();
    // A strictly dominating type has strictly larger total prefix mass, so
    // scanning by decreasing mass sees every maximum before what it dominates.
    candidates.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    let mut maxima: Vec<SplittingType> = Vec::new();
    for (_, e) in candidates {
        if !maxima.iter().any(|m| e.leq_unchecked(m)) {
            maxima.push(e);
        }
    }
    maxima.sort();
    Ok(maxima)
}

fn prefix_mass(e: &SplittingType) -> i128 {
    let mut running = 0i128;
    let mut total = 0i128;
    for &p in e.parts() {
        running += p as i128;
        total += running;
    }
    total
}
