//! Splitting types of vector bundles on the projective line.
//!
//! A bundle `O(e_1) + ... + O(e_k)` is recorded by its multiset of degrees,
//! stored ascending. Everything here is closed-form integer arithmetic on
//! that tuple: dominance order, balanced types, twisted section counts and
//! their second differences, the expected codimension `u`, relative duality.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;

/// Canonical (ascending) splitting type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct SplittingType(Vec<i64>);

impl SplittingType {
    /// Sorts `parts` into canonical form.
    pub fn new(mut parts: Vec<i64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyType);
        }
        parts.sort_unstable();
        Ok(SplittingType(parts))
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn min_part(&self) -> i64 {
        self.0[0]
    }

    pub fn max_part(&self) -> i64 {
        self.0[self.0.len() - 1]
    }

    /// Expected codimension: the sum over pairs `i < j` of `max(0, e_j - e_i - 1)`.
    pub fn u(&self) -> u64 {
        let mut total: u64 = 0;
        for (i, &lo) in self.0.iter().enumerate() {
            for &hi in &self.0[i + 1..] {
                let gap = hi as i128 - lo as i128 - 1;
                if gap > 0 {
                    total += gap as u64;
                }
            }
        }
        total
    }

    /// `h^0` of the twist `O(e)(m)`.
    pub fn h0_twist(&self, m: i64) -> u64 {
        self.0
            .iter()
            .map(|&e| (e as i128 + m as i128 + 1).max(0) as u64)
            .sum()
    }

    /// `h^0(End O(e))`; always equals `u + rank^2`.
    pub fn h0_end(&self) -> u64 {
        let mut total: u64 = 0;
        for &a in &self.0 {
            for &b in &self.0 {
                total += (a as i128 - b as i128 + 1).max(0) as u64;
            }
        }
        total
    }

    /// Dominance order: every prefix sum of `self` is at most that of `other`.
    pub fn dominance_leq(&self, other: &SplittingType) -> Result<bool> {
        self.check_same_universe(other)?;
        Ok(self.leq_unchecked(other))
    }

    pub(crate) fn leq_unchecked(&self, other: &SplittingType) -> bool {
        let (mut lhs, mut rhs) = (0i128, 0i128);
        for (a, b) in self.0.iter().zip(&other.0) {
            lhs += *a as i128;
            rhs += *b as i128;
            if lhs > rhs {
                return false;
            }
        }
        true
    }

    fn check_same_universe(&self, other: &SplittingType) -> Result<()> {
        if self.rank() != other.rank() || self.degree() != other.degree() {
            return Err(Error::IncomparableUniverses(
                self.rank(),
                self.degree(),
                other.rank(),
                other.degree(),
            ));
        }
        Ok(())
    }

    /// Relative-duality partner: parts `-e_i - 2`, re-sorted.
    pub fn serre_dual(&self) -> SplittingType {
        let mut parts: Vec<i64> = self.0.iter().rev().map(|&e| -e - 2).collect();
        parts.sort_unstable();
        SplittingType(parts)
    }

    pub fn is_balanced(&self) -> bool {
        self.max_part() - self.min_part() <= 1
    }

    /// Tabulates `h0_twist` over the support window
    /// `-(max part) - 2 ..= -(min part)`.
    pub fn hilbert_profile(&self) -> HilbertProfile {
        let base = -self.max_part() - 2;
        let top = -self.min_part();
        let values = (base..=top).map(|m| self.h0_twist(m)).collect();
        HilbertProfile {
            base_twist: base,
            values,
        }
    }

    /// Concatenation of two types, canonicalized.
    pub fn direct_sum(&self, other: &SplittingType) -> SplittingType {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        parts.sort_unstable();
        SplittingType(parts)
    }
}

impl TryFrom<Vec<i64>> for SplittingType {
    type Error = Error;

    fn try_from(parts: Vec<i64>) -> Result<Self> {
        SplittingType::new(parts)
    }
}

impl From<SplittingType> for Vec<i64> {
    fn from(t: SplittingType) -> Self {
        t.0
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for SplittingType {
    type Err = Error;

    /// Accepts `(-2,-1,0)`, `[-2, -1, 0]` or `-2,-1,0`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        let parts = inner
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<i64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad splitting-type part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        SplittingType::new(parts)
    }
}

/// Convenience wrapper around [`SplittingType::new`].
pub fn make_type(parts: &[i64]) -> Result<SplittingType> {
    SplittingType::new(parts.to_vec())
}

/// The balanced type `B(rank, degree)`: all parts within one of each other.
pub fn balanced(rank: usize, degree: i64) -> Result<SplittingType> {
    if rank == 0 {
        return Err(Error::EmptyType);
    }
    let k = rank as i64;
    let q = degree.div_euclid(k);
    let extra = degree.rem_euclid(k) as usize;
    let mut parts = vec![q; rank - extra];
    parts.extend(std::iter::repeat_n(q + 1, extra));
    Ok(SplittingType(parts))
}

/// Values `h(m) = h^0(O(e)(m))` for `m = base_twist, base_twist + 1, ...`.
///
/// The profile is read as vanishing for every twist below `base_twist`;
/// the last tabulated slope must already equal the rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertProfile {
    pub base_twist: i64,
    pub values: Vec<u64>,
}

impl HilbertProfile {
    pub fn top_twist(&self) -> i64 {
        self.base_twist + self.values.len() as i64 - 1
    }

    /// Value at any twist, extending by zero below the window and linearly
    /// with the final slope above it.
    pub fn value_at(&self, m: i64) -> i64 {
        if m < self.base_twist || self.values.is_empty() {
            return 0;
        }
        let top = self.top_twist();
        if m <= top {
            return self.values[(m - self.base_twist) as usize] as i64;
        }
        let n = self.values.len();
        let last = self.values[n - 1] as i64;
        let slope = if n >= 2 {
            last - self.values[n - 2] as i64
        } else {
            last
        };
        last + slope * (m - top)
    }

    /// Second difference `h(m) - 2h(m-1) + h(m-2)`.
    pub fn second_difference(&self, m: i64) -> i64 {
        self.value_at(m) - 2 * self.value_at(m - 1) + self.value_at(m - 2)
    }
}

/// Recovers a splitting type from its twisted section counts: the
/// multiplicity of `O(-j)` is the second difference of the profile at `j`.
pub fn type_from_hilbert(profile: &HilbertProfile, rank: usize) -> Result<SplittingType> {
    if rank == 0 {
        return Err(Error::EmptyType);
    }
    if profile.values.is_empty() {
        return Err(Error::NotHilbertFunction("empty profile".into()));
    }
    let mut parts = Vec::with_capacity(rank);
    for m in profile.base_twist..=profile.top_twist() {
        let mult = profile.second_difference(m);
        if mult < 0 {
            return Err(Error::NotHilbertFunction(format!(
                "negative second difference {mult} at twist {m}"
            )));
        }
        if parts.len() + mult as usize > rank {
            return Err(Error::NotHilbertFunction(format!(
                "more than {rank} summands"
            )));
        }
        parts.extend(std::iter::repeat_n(-m, mult as usize));
    }
    if parts.len() != rank {
        return Err(Error::NotHilbertFunction(format!(
            "second differences sum to {} rather than rank {rank}",
            parts.len()
        )));
    }
    SplittingType::new(parts)
}

/// Exhaustive enumeration of canonical types of a fixed rank and degree
/// whose parts lie in `lo..=hi`, optionally cut at `u <= max_u`.
#[derive(Debug, Clone)]
pub struct TypeEnumerator {
    pub rank: usize,
    pub degree: i64,
    pub lo: i64,
    pub hi: i64,
    pub max_u: Option<u64>,
    pub cap: Option<usize>,
}

impl TypeEnumerator {
    pub fn new(rank: usize, degree: i64, lo: i64, hi: i64) -> Self {
        TypeEnumerator {
            rank,
            degree,
            lo,
            hi,
            max_u: None,
            cap: None,
        }
    }

    pub fn max_u(mut self, bound: u64) -> Self {
        self.max_u = Some(bound);
        self
    }

    pub fn cap(mut self, cap: usize) -> Self {
        self.cap = Some(cap);
        self
    }

    /// All matching types in lexicographic order. Work is split by the
    /// value of the smallest part.
    pub fn collect(&self, exec: Execution) -> Result<Vec<SplittingType>> {
        if self.rank == 0 {
            return Err(Error::EmptyType);
        }
        if self.lo > self.hi {
            return Ok(Vec::new());
        }
        let firsts: Vec<i64> = (self.lo..=self.hi).collect();
        let branches = exec.map(&firsts, |&first| {
            let mut out = Vec::new();
            let mut parts = Vec::with_capacity(self.rank);
            let ok = self.descend(first, &mut parts, 0, 0, &mut out);
            (ok, out)
        });
        let mut all = Vec::new();
        for (ok, out) in branches {
            if !ok {
                return Err(Error::PosetTooLarge(self.cap.unwrap_or(usize::MAX)));
            }
            all.extend(out);
            if let Some(cap) = self.cap {
                if all.len() > cap {
                    return Err(Error::PosetTooLarge(cap));
                }
            }
        }
        Ok(all)
    }

    /// Places `x` as the next part and recurses; returns false when the cap
    /// was exceeded.
    fn descend(
        &self,
        x: i64,
        parts: &mut Vec<i64>,
        sum: i128,
        u: u64,
        out: &mut Vec<SplittingType>,
    ) -> bool {
        let remaining = (self.rank - parts.len()) as i128;
        let xi = x as i128;
        // x and every later part are >= x and <= hi.
        if sum + xi * remaining > self.degree as i128 {
            return true;
        }
        if sum + xi + (remaining - 1) * (self.hi as i128) < self.degree as i128 {
            return true;
        }
        let added: u64 = parts
            .iter()
            .map(|&e| (xi - e as i128 - 1).max(0) as u64)
            .sum();
        let u = u + added;
        if self.max_u.is_some_and(|bound| u > bound) {
            return true;
        }
        parts.push(x);
        let sum = sum + xi;
        let mut ok = true;
        if remaining == 1 {
            if sum == self.degree as i128 {
                out.push(SplittingType(parts.clone()));
                if self.cap.is_some_and(|cap| out.len() > cap) {
                    ok = false;
                }
            }
        } else {
            for next in x..=self.hi {
                if !self.descend(next, parts, sum, u, out) {
                    ok = false;
                    break;
                }
                // Smallest admissible remaining sum already overshoots.
                if sum + next as i128 * (remaining - 1) > self.degree as i128 {
                    break;
                }
            }
        }
        parts.pop();
        ok
    }
}
