//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use splitloci::brill_noether::{default_window, maximal_strata_bruteforce, u_wrl_closed_form};
use splitloci::degeneration::endo::{check_model, EndoModel, SpecialCase};
use splitloci::degeneration::chain_bound_long_form;
use splitloci::poset::build_poset;
use splitloci::splitting::type_from_hilbert;
use splitloci::theta::{
    dual_class, exp_series, extreme_summand_class, extreme_summand_coefficient, kkl_check, point_count,
};
use splitloci::{rho_k, w_rl, wrd_decomposition, BnContext, Execution, SplittingType};

const SEED: u64 = 0x5eed_2024;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn t(parts: &[i64]) -> SplittingType {
    SplittingType::new(parts.to_vec()).unwrap()
}

// Reference implementations, written directly from the definitions.

fn ref_u(parts: &[i64]) -> i64 {
    let mut total = 0;
    for i in 0..parts.len() {
        for j in 0..parts.len() {
            total += (parts[j] - parts[i] - 1).max(0);
        }
    }
    total
}

fn ref_h0_end(parts: &[i64]) -> i64 {
    let mut total = 0;
    for &a in parts {
        for &b in parts {
            total += (b - a + 1).max(0);
        }
    }
    total
}

fn ref_balanced(rank: i64, degree: i64) -> Vec<i64> {
    let mut parts: Vec<i64> = (0..rank).map(|i| (degree + i).div_euclid(rank)).collect();
    parts.sort();
    parts
}

fn ref_leq(a: &[i64], b: &[i64]) -> bool {
    let (mut sa, mut sb) = (0, 0);
    for (x, y) in a.iter().zip(b) {
        sa += x;
        sb += y;
        if sa > sb {
            return false;
        }
    }
    true
}

fn ref_w(k: i64, dprime: i64, r: i64, ell: i64) -> Vec<i64> {
    let mut parts = ref_balanced(k - r - 1 + ell, dprime - ell);
    parts.extend(ref_balanced(r + 1 - ell, ell));
    parts.sort();
    parts
}

fn random_type(rng: &mut ChaCha8Rng, rank: usize, span: i64) -> Vec<i64> {
    let mut parts: Vec<i64> = (0..rank).map(|_| rng.random_range(-span..=span)).collect();
    parts.sort();
    parts
}

fn c1_genus_five() -> Outcome {
    let p = build_poset(&BnContext::new(5, 3, 4).unwrap()).map_err(|e| e.to_string())?;
    let expected_nodes = [
        (t(&[-1, -1, -1]), 5),
        (t(&[-2, -1, 0]), 4),
        (t(&[-3, 0, 0]), 1),
        (t(&[-2, -2, 1]), 1),
        (t(&[-3, -1, 1]), 0),
    ];
    ensure(p.len() == 5, || format!("{} nodes", p.len()))?;
    for (e, dim) in &expected_nodes {
        let i = p.index_of(e).ok_or_else(|| format!("missing {e}"))?;
        ensure(p.nodes[i].dim == Some(*dim), || format!("dim of {e} is {:?}", p.nodes[i].dim))?;
    }
    let edge = |a: &[i64], b: &[i64]| (p.index_of(&t(a)).unwrap(), p.index_of(&t(b)).unwrap());
    let expected: BTreeSet<(usize, usize)> = [
        edge(&[-3, -1, 1], &[-3, 0, 0]),
        edge(&[-3, -1, 1], &[-2, -2, 1]),
        edge(&[-3, 0, 0], &[-2, -1, 0]),
        edge(&[-2, -2, 1], &[-2, -1, 0]),
        edge(&[-2, -1, 0], &[-1, -1, -1]),
    ]
    .into_iter()
    .collect();
    let got: BTreeSet<(usize, usize)> = p.covers.iter().copied().collect();
    ensure(got == expected, || format!("covers {got:?}"))?;
    Ok("5 nodes, 5 covers, dims (5,4,1,1,0)".into())
}

fn c2_u_values() -> Outcome {
    ensure(t(&[-4, 0, 0]).u() == 6 && t(&[-3, -2, 1]).u() == 5, || "u(-4,0,0) or u(-3,-2,1)".into())?;
    let ctx = BnContext::new(10, 5, 10).unwrap();
    let us: Vec<u64> = (0..=3).map(|l| w_rl(&ctx, 3, l).unwrap().u()).collect();
    ensure(us == [12, 11, 12, 15], || format!("u(w_3,l) = {us:?}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = 0;
    while checked < 10_000 {
        let g = rng.random_range(0..=40i64);
        let k = rng.random_range(2..=8i64);
        let r = rng.random_range(0..=6i64);
        let d = rng.random_range(g + r - 30..g + r);
        let lo = (r + 2 - k).max(0);
        let ell = rng.random_range(lo..=r);
        let ctx = BnContext::new(g, k, d).unwrap();
        let closed = u_wrl_closed_form(&ctx, r, ell).map_err(|e| e.to_string())?;
        let direct = ref_u(&ref_w(k, ctx.pushforward_degree(), r, ell));
        let engine = w_rl(&ctx, r, ell).map_err(|e| e.to_string())?;
        ensure(closed == direct && engine.parts() == ref_w(k, ctx.pushforward_degree(), r, ell), || {
            format!("g={g} k={k} d={d} r={r} l={ell}: closed {closed}, direct {direct}")
        })?;
        checked += 1;
    }
    Ok(format!("fixtures ok, closed form = direct u on {checked} tuples"))
}

fn c3_maximality() -> Outcome {
    let ctx = BnContext::new(10, 5, 10).unwrap();
    let table = maximal_strata_bruteforce(5, -4, 3, default_window(5, -4, 3), Execution::Parallel)
        .map_err(|e| e.to_string())?;
    let w: Vec<SplittingType> = (0..=3).map(|l| w_rl(&ctx, 3, l).unwrap()).collect();
    let mut first_three = w[..3].to_vec();
    first_three.sort();
    ensure(table == first_three, || format!("table maxima {table:?}"))?;
    ensure(w[3].dominance_leq(&w[2]).unwrap() && w[3] != w[2], || "w_3,3 not below w_3,2".into())?;

    let mut cases = 0;
    for k in 2..=6i64 {
        for dprime in -8..=8i64 {
            for r in 0..=5i64 {
                let predicted: BTreeSet<Vec<i64>> = if r < dprime + k {
                    [ref_balanced(k, dprime)].into_iter().collect()
                } else {
                    let bound = 2 * r + 2 - 2 * k - dprime;
                    ((r + 2 - k).max(0)..=r)
                        .filter(|&l| l == 0 || l <= bound)
                        .map(|l| ref_w(k, dprime, r, l))
                        .collect()
                };
                let window = default_window(k as usize, dprime, r);
                let found: BTreeSet<Vec<i64>> =
                    maximal_strata_bruteforce(k as usize, dprime, r, window, Execution::Parallel)
                        .map_err(|e| e.to_string())?
                        .into_iter()
                        .map(|e| e.parts().to_vec())
                        .collect();
                ensure(found == predicted, || {
                    format!("k={k} d'={dprime} r={r}: brute force {found:?}, predicted {predicted:?}")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("table row ok, {cases} (k, d', r) cases agree"))
}

fn c4_rho_k() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut checked = 0;
    let mut empty = 0;
    while checked < 10_000 {
        let g = rng.random_range(0..=40i64);
        let k = rng.random_range(2..=8i64);
        let r = rng.random_range(0..=8i64);
        let d = rng.random_range(g + r - 12..g + r);
        let ctx = BnContext::new(g, k, d).unwrap();
        let dec = wrd_decomposition(&ctx, r).map_err(|e| e.to_string())?;
        let value = rho_k(&ctx, r);
        match dec.max_dimension() {
            Some(m) => ensure(m == value, || format!("g={g} k={k} d={d} r={r}: rho_k {value}, max dim {m}"))?,
            None => {
                empty += 1;
                ensure(value < 0, || format!("g={g} k={k} d={d} r={r}: empty but rho_k {value}"))?
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} tuples ({empty} with W^r_d empty and rho_k < 0)"))
}

fn c5_classes() -> Outcome {
    let q = |p: i64, d: i64| BigRational::new(p.into(), d.into());
    let a = extreme_summand_class(3, -3, 2, 5).map_err(|e| e.to_string())?;
    ensure(a.stratum == t(&[-2, -1, 0]) && a.a == q(1, 1) && a.u == 1, || format!("(-2,-1,0): {}", a.render()))?;
    let b = extreme_summand_class(3, -3, 3, 5).map_err(|e| e.to_string())?;
    ensure(b.stratum == t(&[-3, 0, 0]) && b.a == q(1, 24) && b.u == 4, || format!("(-3,0,0): {}", b.render()))?;
    let c = dual_class(&t(&[-2, -2, 1]), 5).map_err(|e| e.to_string())?;
    ensure(c.a == q(1, 24) && c.u == 4, || format!("(-2,-2,1): {}", c.render()))?;
    ensure(kkl_check(5).map_err(|e| e.to_string())?, || "1/24 + 1/24 != 1/12".into())?;
    let pts = point_count(&q(1, 60), 5, 5).map_err(|e| e.to_string())?;
    ensure(pts == BigInt::from(2), || format!("point count {pts}"))?;
    Ok("θ, θ^4/24, dual θ^4/24, θ^4/12, 2 points".into())
}

fn c6_series_identity() -> Outcome {
    let mut factorial = BigInt::one();
    for u in 0..=30u64 {
        if u > 0 {
            factorial *= BigInt::from(u);
        }
        let expected = BigRational::new(BigInt::one(), factorial.clone());
        let trunc = 30;
        let e = exp_series(1, trunc).map_err(|e| e.to_string())?;
        let series = e.mul(&e).div(&e).map_err(|e| e.to_string())?.coeff(u as usize);
        ensure(series == expected, || format!("u={u}: series gives {series}"))?;
        let engine = extreme_summand_coefficient(u).map_err(|e| e.to_string())?;
        ensure(engine == expected, || format!("u={u}: coefficient {engine}"))?;
    }
    Ok("0 <= u <= 30".into())
}

fn c7_g_independence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut shapes = 0;
    let mut attempts = 0;
    while shapes < 100 {
        attempts += 1;
        ensure(attempts < 100_000, || "could not sample shapes".into())?;
        let k = rng.random_range(2..=8usize);
        let total = rng.random_range(-20..=4i64);
        let n = rng.random_range(-4..=20i64);
        let g = rng.random_range(0..=30u64);
        let Ok(a) = extreme_summand_class(k, total, n, g) else { continue };
        let b = extreme_summand_class(k, total, n, g + 5).map_err(|e| e.to_string())?;
        ensure(a.a == b.a && a.u == b.u, || format!("k={k} total={total} n={n}: {} vs {}", a.a, b.a))?;
        shapes += 1;
    }
    Ok(format!("{shapes} shapes"))
}

fn c8_endomorphisms() -> Outcome {
    let mut models = 0;
    for k in 2..=8usize {
        let configs = EndoModel::all_configurations(k);
        let a_values: BTreeSet<usize> = configs.iter().map(|m| m.a()).collect();
        ensure(a_values == (0..k).collect(), || format!("k={k}: a values {a_values:?}"))?;
        for m in configs {
            let c = check_model(&m);
            let half = k * (k + 1) / 2;
            let (wq, both) = match m.case() {
                SpecialCase::Generic => (half, k),
                SpecialCase::AtQ { .. } => (half + 1, k + 1),
                SpecialCase::AtPq { .. } => (half, k + 1),
            };
            ensure(
                c.dim_wp == half
                    && c.dim_wq == wq
                    && c.dim_both == both
                    && c.diag.rank == k
                    && c.diag.max_kernel_support <= 1,
                || format!("k={k} a={} {}: {c:?}", m.a(), m.case()),
            )?;
            models += 1;
        }
    }
    Ok(format!("{models} configurations, 2 <= k <= 8"))
}

fn c9_chain_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let mut checked = 0;
    for g in 1..=50usize {
        for k in 2..=10i64 {
            for _ in 0..1_000 {
                let eps: Vec<u8> = (0..g).map(|_| rng.random_range(0..=1u8)).collect();
                let delta: i64 = eps.iter().map(|&x| x as i64).sum();
                let long = chain_bound_long_form(g, k, &eps).map_err(|e| e.to_string())?;
                ensure(long == k * k + delta, || format!("g={g} k={k} eps={eps:?}: {long}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (g, k, eps) instances"))
}

fn c10_properties() -> Outcome {
    const N: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    for _ in 0..N {
        let rank = rng.random_range(1..=7usize);
        let parts = random_type(&mut rng, rank, 12);
        let e = t(&parts);
        let back = type_from_hilbert(&e.hilbert_profile(), rank).map_err(|err| err.to_string())?;
        ensure(back == e, || format!("hilbert roundtrip {e} -> {back}"))?;
        ensure(e.u() as i64 == ref_u(&parts), || format!("u({e})"))?;
        ensure(e.h0_end() as i64 == ref_h0_end(&parts), || format!("h0_end({e})"))?;
        ensure(e.h0_end() as i64 - (rank * rank) as i64 == e.u() as i64, || format!("h0_end - k^2 != u for {e}"))?;
        let dual = e.serre_dual();
        ensure(dual.serre_dual() == e && dual.u() == e.u(), || format!("serre dual of {e}"))?;
    }
    let mut transitive = 0;
    for _ in 0..N {
        let rank = rng.random_range(1..=5usize);
        let degree = rng.random_range(-6..=6i64);
        let mut triple = Vec::new();
        for _ in 0..3 {
            let mut p = random_type(&mut rng, rank - 1, 3);
            p.push(degree - p.iter().sum::<i64>());
            p.sort();
            triple.push(p);
        }
        let [a, b, c] = [&triple[0], &triple[1], &triple[2]].map(|p| t(p));
        let leq = |x: &SplittingType, y: &SplittingType| x.dominance_leq(y).unwrap();
        ensure(leq(&a, &b) == ref_leq(a.parts(), b.parts()), || format!("{a} <= {b}"))?;
        ensure(leq(&a, &a), || format!("reflexivity at {a}"))?;
        ensure(!(leq(&a, &b) && leq(&b, &a)) || a == b, || format!("antisymmetry {a} {b}"))?;
        if leq(&a, &b) && leq(&b, &c) {
            transitive += 1;
            ensure(leq(&a, &c), || format!("transitivity {a} {b} {c}"))?;
        }
        let (da, db) = (a.serre_dual(), b.serre_dual());
        ensure(leq(&a, &b) == leq(&da, &db), || format!("dual does not preserve {a} <= {b}"))?;
        if leq(&a, &b) && a != b && leq(&db, &da) {
            return Err(format!("dual reverses {a} < {b}"));
        }
    }
    // Duality fixes the balanced maximum, so it cannot reverse the order.
    let (lo, hi) = (t(&[-3, -1, 1]), t(&[-3, 0, 0]));
    ensure(
        lo.dominance_leq(&hi).unwrap() && !hi.serre_dual().dominance_leq(&lo.serre_dual()).unwrap(),
        || "reversal counterexample".into(),
    )?;
    Ok(format!(
        "{N} instances per suite ({transitive} transitive chains); duality preserves dominance, reversal refuted by {lo} < {hi}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("genus-5 trigonal poset", c1_genus_five),
        ("u values and closed form", c2_u_values),
        ("maximality oracle", c3_maximality),
        ("rho_k consistency", c4_rho_k),
        ("class fixtures", c5_classes),
        ("series identity 1/u!", c6_series_identity),
        ("g-independence of classes", c7_g_independence),
        ("endomorphism dimensions", c8_endomorphisms),
        ("chain bound", c9_chain_bound),
        ("property suites", c10_properties),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
