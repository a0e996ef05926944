//! Truncated power series in the theta class, and the class coefficients
//! `a_e` of closed splitting loci that are computable in closed form.
//!
//! On `Pic^d` of a genus `g` curve, the classes of closed splitting loci of
//! the expected codimension are `a_e * theta^u(e)` with `a_e` rational and
//! independent of `g`. Away from the support of `R^1`, the push forwards of
//! the twisted Poincare bundle have total Chern class `exp(-theta)`, and for
//! a type `O(-n) + B(k-1, |e| + n)` the coefficient is the `theta^u` term of
//! `c(V)^2 / c(W)` with `c(V) = c(W) = exp(theta)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::splitting::{balanced, SplittingType};

/// Polynomial in theta with exact rational coefficients, modulo
/// `theta^(trunc + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaPoly {
    coeffs: Vec<BigRational>,
}

impl ThetaPoly {
    /// Coefficients `c_0, c_1, ...`; anything past `trunc` is dropped.
    pub fn new(mut coeffs: Vec<BigRational>, trunc: usize) -> Self {
        coeffs.resize(trunc + 1, BigRational::zero());
        ThetaPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64], trunc: usize) -> Self {
        ThetaPoly::new(
            coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
            trunc,
        )
    }

    pub fn one(trunc: usize) -> Self {
        ThetaPoly::from_integers(&[1], trunc)
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `theta^i` (zero beyond the truncation).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Truncated product, at the smaller of the two truncation orders.
    pub fn mul(&self, other: &ThetaPoly) -> ThetaPoly {
        let n = self.trunc().min(other.trunc());
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        ThetaPoly { coeffs: out }
    }

    /// Truncated quotient `q` with `self = q * divisor` modulo `theta^(n+1)`.
    pub fn div(&self, divisor: &ThetaPoly) -> Result<ThetaPoly> {
        let lead = &divisor.coeffs[0];
        if lead.is_zero() {
            return Err(Error::NonUnitDivisor);
        }
        let n = self.trunc().min(divisor.trunc());
        let mut q: Vec<BigRational> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = self.coeffs[i].clone();
            for j in 1..=i {
                acc -= &divisor.coeffs[j] * &q[i - j];
            }
            q.push(acc / lead);
        }
        Ok(ThetaPoly { coeffs: q })
    }
}

/// `sum_{i <= trunc} (sign * theta)^i / i!`.
pub fn exp_series(sign: i64, trunc: usize) -> Result<ThetaPoly> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidArgument(format!("sign must be +1 or -1, got {sign}")));
    }
    let mut coeffs = Vec::with_capacity(trunc + 1);
    let mut term = BigRational::one();
    for i in 0..=trunc {
        if i > 0 {
            term = term * BigRational::from_integer(sign.into())
                / BigRational::from_integer(BigInt::from(i));
        }
        coeffs.push(term.clone());
    }
    Ok(ThetaPoly { coeffs })
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Class `a * theta^u` of a closed splitting locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassResult {
    pub stratum: SplittingType,
    pub a: BigRational,
    pub u: u64,
    /// `a * g!` when `u = g`: the number of points in the locus.
    pub point_count: Option<BigInt>,
}

impl ClassResult {
    fn new(stratum: SplittingType, a: BigRational, u: u64, g: u64) -> Result<Self> {
        let point_count = if u == g { Some(point_count(&a, u, g)?) } else { None };
        Ok(ClassResult {
            stratum,
            a,
            u,
            point_count,
        })
    }

    /// Renders as `p/q · θ^u`.
    pub fn render(&self) -> String {
        format!("{} · θ^{}", render_rational(&self.a), self.u)
    }

    pub fn to_json(&self) -> ClassJson {
        ClassJson {
            schema: crate::SCHEMA.to_string(),
            stratum: self.stratum.clone(),
            a: [json_integer(self.a.numer()), json_integer(self.a.denom())],
            u: self.u,
            points: self.point_count.as_ref().map(json_integer),
        }
    }
}

pub fn render_rational(a: &BigRational) -> String {
    format!("{}/{}", a.numer(), a.denom())
}

/// JSON shape `{"a": [p, q], "u": ..., "points": ...}`. Integers that do
/// not fit in 64 bits are written as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub schema: String,
    #[serde(rename = "type")]
    pub stratum: SplittingType,
    pub a: [serde_json::Value; 2],
    pub u: u64,
    pub points: Option<serde_json::Value>,
}

fn json_integer(n: &BigInt) -> serde_json::Value {
    match i64::try_from(n) {
        Ok(v) => v.into(),
        Err(_) => n.to_string().into(),
    }
}

/// Splits `O(-n) + B(k-1, total + n)` off `e` if it has that shape.
fn extreme_summand_n(e: &SplittingType) -> Option<i64> {
    if e.rank() < 2 {
        return None;
    }
    let n = -e.min_part();
    let rest = balanced(e.rank() - 1, e.degree() + n).ok()?;
    (rest.parts() == &e.parts()[1..] && -n < rest.min_part()).then_some(n)
}

pub fn is_extreme_summand(e: &SplittingType) -> bool {
    extreme_summand_n(e).is_some()
}

/// The `theta^u` coefficient of `exp(theta)^2 / exp(theta)`, computed
/// through the series engine.
pub fn extreme_summand_coefficient(u: u64) -> Result<BigRational> {
    let trunc = u as usize;
    let chern = exp_series(1, trunc)?;
    Ok(chern.mul(&chern).div(&chern)?.coeff(trunc))
}

/// Class of the closed locus of `O(-n) + B(k-1, total + n)`.
///
/// The coefficient does not depend on `g`; `g` only decides whether a point
/// count is reported (when `u = g`).
pub fn extreme_summand_class(k: usize, total_degree: i64, n: i64, g: u64) -> Result<ClassResult> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("rank must be >= 2, got {k}")));
    }
    let rest = balanced(k - 1, total_degree + n)?;
    if -n >= rest.min_part() {
        return Err(Error::NotExtremeSummand(format!(
            "-{n} is not strictly below {rest}"
        )));
    }
    let stratum = rest.direct_sum(&SplittingType::new(vec![-n])?);
    let u = stratum.u();
    let a = extreme_summand_coefficient(u)?;
    ClassResult::new(stratum, a, u, g)
}

/// Class of `e` by transfer through relative duality: `L -> K - L`
/// preserves theta and exchanges `e` with its dual, so the coefficients
/// agree. Uses whichever of `e`, `dual(e)` has extreme-summand shape,
/// preferring the dual.
pub fn dual_class(e: &SplittingType, g: u64) -> Result<ClassResult> {
    let dual = e.serre_dual();
    let source = if let Some(n) = extreme_summand_n(&dual) {
        Some((dual.degree(), n))
    } else {
        extreme_summand_n(e).map(|n| (e.degree(), n))
    };
    let Some((total, n)) = source else {
        return Err(Error::NotComputable(format!(
            "neither {e} nor its dual {dual} is an extreme-summand type"
        )));
    };
    let transferred = extreme_summand_class(e.rank(), total, n, g)?;
    ClassResult::new(e.clone(), transferred.a, transferred.u, g)
}

/// `a * g!` for a zero-dimensional class `a * theta^g`.
pub fn point_count(a: &BigRational, u: u64, g: u64) -> Result<BigInt> {
    if u != g {
        return Err(Error::NotZeroDimensional { u, g });
    }
    let scaled = a * BigRational::from_integer(factorial(g));
    if !scaled.is_integer() || scaled.is_negative() {
        return Err(Error::InconsistentClass(render_rational(&scaled)));
    }
    Ok(scaled.to_integer())
}

/// Coefficient of the closed locus of `(-3,-1,1)` on a genus 5 trigonal
/// curve, taken from the universal formula for that shape (not derived here).
pub fn stored_class_m3_m1_1() -> ClassResult {
    let stratum = SplittingType::new(vec![-3, -1, 1]).expect("non-empty");
    let a = BigRational::new(1.into(), 60.into());
    ClassResult {
        point_count: point_count(&a, 5, 5).ok(),
        stratum,
        a,
        u: 5,
    }
}

/// True iff the coefficients sum to `target` exactly.
pub fn classes_sum_to(parts: &[BigRational], target: &BigRational) -> bool {
    parts.iter().fold(BigRational::zero(), |acc, p| acc + p) == *target
}

/// Genus 5 trigonal check: the two components of `W^1_4` have classes
/// summing to `theta^4 / 12`.
pub fn kkl_check(g: u64) -> Result<bool> {
    if g != 5 {
        return Err(Error::InvalidArgument(format!(
            "the W^1_4 class fixture is for genus 5, got {g}"
        )));
    }
    let first = extreme_summand_class(3, -3, 3, g)?;
    let second = dual_class(&SplittingType::new(vec![-2, -2, 1])?, g)?;
    let target = BigRational::new(1.into(), 12.into());
    Ok(first.u == 4 && second.u == 4 && classes_sum_to(&[first.a, second.a], &target))
}
