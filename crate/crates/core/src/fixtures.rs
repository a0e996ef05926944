//! Worked examples with published values, runnable as a self-check.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::brill_noether::{maximal_strata_bruteforce, u_wrl_closed_form, w_rl, wrd_decomposition, BnContext};
use crate::degeneration::{
    diag_map_rank, elliptic_pushforward, nullity, order_preserving_both, order_preserving_space,
    EndoModel, Node, SpecialCase,
};
use crate::error::Result;
use crate::exec::Execution;
use crate::poset::{build_poset, expected_dimension};
use crate::splitting::{balanced, make_type, SplittingType};
use crate::theta::{
    dual_class, exp_series, extreme_summand_class, kkl_check, point_count, stored_class_m3_m1_1,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type Check = fn() -> Result<bool>;

fn t(parts: &[i64]) -> SplittingType {
    make_type(parts).expect("fixture types are non-empty")
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn genus5() -> BnContext {
    BnContext::new(5, 3, 4).expect("valid")
}

fn genus6() -> BnContext {
    BnContext::new(6, 3, 4).expect("valid")
}

/// Rank 5, degree -4 (d - g = 0).
fn pentagonal() -> BnContext {
    BnContext::new(10, 5, 10).expect("valid")
}

const FIXTURES: &[(&str, Check)] = &[
    ("make_type canonicalizes (1,-3,-1)", || Ok(t(&[1, -3, -1]).parts() == [-3, -1, 1])),
    ("u(-4,0,0) = 6", || Ok(t(&[-4, 0, 0]).u() == 6)),
    ("u(-3,-2,1) = 5", || Ok(t(&[-3, -2, 1]).u() == 5)),
    ("u(-4,0,0,0,0) = 12", || Ok(t(&[-4, 0, 0, 0, 0]).u() == 12)),
    ("(-3,-1,1) <= (-2,-2,1)", || t(&[-3, -1, 1]).dominance_leq(&t(&[-2, -2, 1]))),
    ("(-2,-2,1) and (-3,0,0) incomparable", || {
        let (a, b) = (t(&[-2, -2, 1]), t(&[-3, 0, 0]));
        Ok(!a.dominance_leq(&b)? && !b.dominance_leq(&a)?)
    }),
    ("balanced(3,-3) = (-1,-1,-1)", || Ok(balanced(3, -3)? == t(&[-1, -1, -1]))),
    ("h0((-3,0,0)(1)) = 4", || Ok(t(&[-3, 0, 0]).h0_twist(1) == 4)),
    ("dual(-2,-2,1) = (-3,0,0)", || Ok(t(&[-2, -2, 1]).serre_dual() == t(&[-3, 0, 0]))),
    ("w_{1,0}, w_{1,1} for g=6, k=3, d=4", || {
        let c = genus6();
        Ok(w_rl(&c, 1, 0)? == t(&[-4, 0, 0]) && w_rl(&c, 1, 1)? == t(&[-3, -2, 1]))
    }),
    ("w_{3,l} table for rank 5, degree -4", || {
        let c = pentagonal();
        let expected = [
            t(&[-4, 0, 0, 0, 0]),
            t(&[-3, -2, 0, 0, 1]),
            t(&[-2, -2, -2, 1, 1]),
            t(&[-2, -2, -2, -1, 3]),
        ];
        for (ell, e) in expected.iter().enumerate() {
            if &w_rl(&c, 3, ell as i64)? != e {
                return Ok(false);
            }
        }
        Ok(true)
    }),
    ("closed-form u for g=6, k=3, d=4, r=1", || {
        let c = genus6();
        Ok(u_wrl_closed_form(&c, 1, 0)? == 6 && u_wrl_closed_form(&c, 1, 1)? == 5)
    }),
    ("closed-form u row (12, 11, 12, 15)", || {
        let c = pentagonal();
        let us = (0..4).map(|l| u_wrl_closed_form(&c, 3, l)).collect::<Result<Vec<_>>>()?;
        Ok(us == [12, 11, 12, 15])
    }),
    ("first three of the w_{3,l} are maximal", || {
        let got = maximal_strata_bruteforce(5, -4, 3, 8, Execution::Parallel)?;
        let c = pentagonal();
        let expected = (0..3).map(|l| w_rl(&c, 3, l)).collect::<Result<Vec<_>>>()?;
        let flags: Vec<bool> = wrd_decomposition(&c, 3)?.strata.iter().map(|s| s.maximal).collect();
        let below = w_rl(&c, 3, 3)?.dominance_leq(&w_rl(&c, 3, 2)?)?;
        Ok(got == expected && flags == [true, true, true, false] && below)
    }),
    ("W^1_4 on genus 5 trigonal: two curves", || {
        let dec = wrd_decomposition(&genus5(), 1)?;
        let got: Vec<_> = dec.strata.iter().map(|s| (s.stratum.clone(), s.dim)).collect();
        Ok(got == [(t(&[-3, 0, 0]), Some(1)), (t(&[-2, -2, 1]), Some(1))])
    }),
    ("W^1_4 on genus 6 trigonal: dims 0 and 1", || {
        let dec = wrd_decomposition(&genus6(), 1)?;
        let got: Vec<_> = dec.strata.iter().map(|s| (s.stratum.clone(), s.dim)).collect();
        Ok(got == [(t(&[-4, 0, 0]), Some(0)), (t(&[-3, -2, 1]), Some(1))])
    }),
    ("W^0_4 on genus 5 trigonal is (-2,-1,0)", || {
        let dec = wrd_decomposition(&genus5(), 0)?;
        Ok(dec.strata.len() == 1 && dec.strata[0].stratum == t(&[-2, -1, 0]) && dec.strata[0].dim == Some(4))
    }),
    ("genus 5 trigonal poset: 5 nodes, 5 covers", || {
        let p = build_poset(&genus5())?;
        let dims: Vec<Option<i64>> = p.nodes.iter().rev().map(|n| n.dim).collect();
        Ok(p.len() == 5
            && p.covers.len() == 5
            && dims == [Some(5), Some(4), Some(1), Some(1), Some(0)])
    }),
    ("down-set of (-2,-2,1)", || {
        let p = build_poset(&genus5())?;
        Ok(p.downset(&t(&[-2, -2, 1]))? == [t(&[-3, -1, 1]), t(&[-2, -2, 1])])
    }),
    ("(-3,-1,1) is zero-dimensional", || {
        Ok(expected_dimension(&genus5(), &t(&[-3, -1, 1]))? == Some(0))
    }),
    ("DOT export has 5 nodes and 5 edges", || {
        let dot = build_poset(&genus5())?.to_dot();
        Ok(dot.matches("[label=").count() == 5 && dot.matches(" -> ").count() == 5)
    }),
    ("class of (-2,-1,0) is theta", || {
        let c = extreme_summand_class(3, -3, 2, 5)?;
        Ok(c.a == ratio(1, 1) && c.u == 1)
    }),
    ("class of (-3,0,0) is theta^4/24", || {
        let c = extreme_summand_class(3, -3, 3, 5)?;
        Ok(c.a == ratio(1, 24) && c.u == 4)
    }),
    ("class of (-2,-2,1) is theta^4/24", || {
        let c = dual_class(&t(&[-2, -2, 1]), 5)?;
        Ok(c.a == ratio(1, 24) && c.u == 4)
    }),
    ("[W^1_4] = theta^4/12", || kkl_check(5)),
    ("theta^5/60 is two points", || {
        let stored = stored_class_m3_m1_1();
        Ok(point_count(&stored.a, 5, 5)? == BigInt::from(2) && stored.point_count == Some(BigInt::from(2)))
    }),
    ("exp(theta)^2 / exp(theta) = exp(theta)", || {
        let e = exp_series(1, 12)?;
        Ok(e.mul(&e).div(&e)? == e)
    }),
    ("f_* O_X = (-2,-1,0) for k = 3", || Ok(elliptic_pushforward(3, 0, true)? == t(&[-2, -1, 0]))),
    ("k=3: dim W_p = 6, dim W_p ∩ W_q = 3", || {
        let m = EndoModel::generic(3, 1)?;
        Ok(nullity(&order_preserving_space(&m, Node::P)) == 6
            && nullity(&order_preserving_both(&m)) == 3)
    }),
    ("k=3, L = O(2p+2q): dim W_p ∩ W_q = 4", || {
        let m = EndoModel::new(3, 1, SpecialCase::AtPq { n: 2, m: 2 })?;
        Ok(nullity(&order_preserving_both(&m)) == 4)
    }),
    ("k=3: diagonal map surjective, kernel on one entry", || {
        let generic = diag_map_rank(&EndoModel::generic(3, 1)?);
        let special = diag_map_rank(&EndoModel::new(3, 1, SpecialCase::AtPq { n: 2, m: 2 })?);
        Ok(generic.rank == 3
            && generic.kernel_dim == 0
            && special.rank == 3
            && special.kernel_dim == 1
            && special.max_kernel_support == 1)
    }),
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(name, _)| *name).collect()
}

/// Runs every fixture; an error counts as a failure.
pub fn run_fixtures() -> Vec<FixtureOutcome> {
    FIXTURES
        .iter()
        .map(|(name, check)| {
            let (passed, detail) = match check() {
                Ok(true) => (true, String::new()),
                Ok(false) => (false, "value mismatch".to_string()),
                Err(e) => (false, e.to_string()),
            };
            FixtureOutcome {
                name: name.to_string(),
                passed,
                detail,
            }
        })
        .collect()
}
