//! `splitloci` command-line front end.
//!
//! Exit codes: 0 on success, 1 on a domain error (or a failed check), 2 on a
//! usage error.

mod table;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use splitloci::brill_noether::{default_window, maximal_strata_bruteforce, rho, rho_k, wrd_decomposition};
use splitloci::degeneration::{verify_models, ModelCheck};
use splitloci::fixtures::run_fixtures;
use splitloci::poset::{build_poset_with, PosetOptions, DEFAULT_NODE_CAP};
use splitloci::theta::{dual_class, extreme_summand_class, ClassResult};
use splitloci::{BnContext, Execution, SplittingType, SCHEMA};

use table::Table;

const LIMIT: i64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "splitloci", version, about = "Splitting loci of k-gonal curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every splitting type of Pic^d with u <= g.
    StrataEnumerate(PosetArgs),
    /// Stratification poset with covering relations.
    StrataPoset(PosetArgs),
    /// Decompose W^r_d into closed splitting loci.
    BnWrd(WrdArgs),
    /// Gonality-constrained Brill-Noether number.
    BnRhok(RhokArgs),
    /// Class coefficient of an extreme-summand locus.
    Classes(ClassArgs),
    /// Order-preserving endomorphism dimension table.
    DegenVerify(DegenArgs),
    /// Degeneration checks.
    Degen {
        #[command(subcommand)]
        action: DegenAction,
    },
    /// Run every worked example and report PASS/FAIL.
    Fixtures(OutputArgs),
}

#[derive(Debug, Subcommand)]
enum DegenAction {
    /// Same as `degen-verify`.
    Verify(DegenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CurveArgs {
    #[arg(long, value_parser = clap::value_parser!(i64).range(0..=LIMIT))]
    g: i64,
    #[arg(long, value_parser = clap::value_parser!(i64).range(2..=LIMIT))]
    k: i64,
    #[arg(long, allow_hyphen_values = true, value_parser = clap::value_parser!(i64).range(-LIMIT..=LIMIT))]
    d: i64,
}

#[derive(Debug, Args)]
struct PosetArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Also include types with g < u <= g + EXTRA.
    #[arg(long, default_value_t = 0, value_name = "EXTRA")]
    include_empty: u64,
    #[arg(long, env = "SPLITLOCI_NODE_CAP", default_value_t = DEFAULT_NODE_CAP)]
    node_cap: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct WrdArgs {
    #[command(flatten)]
    curve: CurveArgs,
    #[arg(long, value_parser = clap::value_parser!(i64).range(0..=LIMIT))]
    r: i64,
    /// Cross-check maximality against exhaustive enumeration.
    #[arg(long)]
    verify: bool,
    /// Half-width of the enumeration window for --verify.
    #[arg(long, requires = "verify")]
    window: Option<i64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct RhokArgs {
    #[command(flatten)]
    curve: CurveArgs,
    #[arg(long, value_parser = clap::value_parser!(i64).range(0..=LIMIT))]
    r: i64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ClassArgs {
    #[arg(long, required_unless_present = "dual_of", value_parser = clap::value_parser!(i64).range(2..=LIMIT))]
    k: Option<i64>,
    /// Total degree of the splitting type.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "dual_of", value_parser = clap::value_parser!(i64).range(-LIMIT..=LIMIT))]
    degree: Option<i64>,
    /// Degree of the extreme summand is -N.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "dual_of", value_parser = clap::value_parser!(i64).range(-LIMIT..=LIMIT))]
    n: Option<i64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(0..=LIMIT as u64))]
    g: u64,
    /// Transfer the class through duality instead, e.g. "(-2,-2,1)".
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["k", "degree", "n"])]
    dual_of: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct DegenArgs {
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(2..=12))]
    kmax: u64,
    #[command(flatten)]
    output: OutputArgs,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<splitloci::Error> for Failure {
    fn from(e: splitloci::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

/// What a command produced, and whether its checks all passed.
struct Emitted {
    text: String,
    ok: bool,
}

impl Emitted {
    fn ok(text: String) -> Self {
        Emitted { text, ok: true }
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run(args: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return code;
        }
    };
    let (result, out_path) = match &cli.command {
        Command::StrataEnumerate(a) => (strata_enumerate(a), a.output.out.clone()),
        Command::StrataPoset(a) => (strata_poset(a), a.output.out.clone()),
        Command::BnWrd(a) => (bn_wrd(a), a.output.out.clone()),
        Command::BnRhok(a) => (bn_rhok(a), a.output.out.clone()),
        Command::Classes(a) => (classes(a), a.output.out.clone()),
        Command::DegenVerify(a) | Command::Degen { action: DegenAction::Verify(a) } => {
            (degen_verify(a), a.output.out.clone())
        }
        Command::Fixtures(a) => (fixtures(a), a.out.clone()),
    };
    match result {
        Ok(emitted) => {
            if let Some(path) = out_path {
                if let Err(e) = fs::write(&path, &emitted.text) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    return 1;
                }
            } else {
                let _ = write!(stdout, "{}", emitted.text);
            }
            if emitted.ok {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}

fn reject_format(format: Format, allowed: &[Format]) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "--format {} is not supported by this command",
            format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
        )))
    }
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn context(c: &CurveArgs) -> Result<BnContext, Failure> {
    Ok(BnContext::new(c.g, c.k, c.d)?)
}

fn dim_cell(dim: Option<i64>) -> String {
    dim.map_or_else(|| "empty".to_string(), |d| d.to_string())
}

fn poset_options(a: &PosetArgs) -> PosetOptions {
    PosetOptions {
        include_empty: a.include_empty,
        node_cap: a.node_cap,
        exec: Execution::Parallel,
    }
}

fn strata_enumerate(a: &PosetArgs) -> Result<Emitted, Failure> {
    reject_format(a.output.format, &[Format::Table, Format::Json])?;
    let ctx = context(&a.curve)?;
    let p = build_poset_with(&ctx, &poset_options(a))?;
    if a.output.format == Format::Json {
        return Ok(Emitted::ok(to_json(&json!({
            "schema": SCHEMA,
            "g": ctx.g, "k": ctx.k, "d": ctx.d,
            "nodes": p.nodes,
        }))));
    }
    let mut t = Table::new(&["type", "u", "dim"]);
    for n in &p.nodes {
        t.row(vec![n.stratum.to_string(), n.u.to_string(), dim_cell(n.dim)]);
    }
    Ok(Emitted::ok(t.render()))
}

fn strata_poset(a: &PosetArgs) -> Result<Emitted, Failure> {
    let ctx = context(&a.curve)?;
    let p = build_poset_with(&ctx, &poset_options(a))?;
    let text = match a.output.format {
        Format::Dot => p.to_dot(),
        Format::Json => to_json(&p.to_json()),
        Format::Table => {
            let mut t = Table::new(&["node", "type", "u", "dim", "covered by"]);
            for (i, n) in p.nodes.iter().enumerate() {
                let ups: Vec<String> = p
                    .covers
                    .iter()
                    .filter(|(lo, _)| *lo == i)
                    .map(|(_, hi)| hi.to_string())
                    .collect();
                t.row(vec![
                    i.to_string(),
                    n.stratum.to_string(),
                    n.u.to_string(),
                    dim_cell(n.dim),
                    ups.join(","),
                ]);
            }
            t.render()
        }
    };
    Ok(Emitted::ok(text))
}

fn bn_wrd(a: &WrdArgs) -> Result<Emitted, Failure> {
    reject_format(a.output.format, &[Format::Table, Format::Json])?;
    let ctx = context(&a.curve)?;
    let dec = wrd_decomposition(&ctx, a.r)?;
    let oracle = if a.verify {
        let window = a
            .window
            .unwrap_or_else(|| default_window(ctx.rank(), ctx.pushforward_degree(), a.r));
        let found = maximal_strata_bruteforce(
            ctx.rank(),
            ctx.pushforward_degree(),
            a.r,
            window,
            Execution::Parallel,
        )?;
        let mut predicted: Vec<SplittingType> =
            dec.components().map(|s| s.stratum.clone()).collect();
        predicted.sort();
        Some((window, found == predicted, found))
    } else {
        None
    };
    let ok = oracle.as_ref().is_none_or(|(_, agree, _)| *agree);
    if a.output.format == Format::Json {
        let mut v = json!({
            "schema": SCHEMA,
            "g": dec.g, "k": dec.k, "d": dec.d, "r": dec.r,
            "whole_picard": dec.whole_picard,
            "strata": dec.strata,
        });
        if let Some((window, agree, found)) = &oracle {
            v["bruteforce"] = json!({ "window": window, "agrees": agree, "maximal": found });
        }
        return Ok(Emitted { text: to_json(&v), ok });
    }
    let mut t = Table::new(&["ell", "type", "u", "dim", "maximal"]);
    for s in &dec.strata {
        t.row(vec![
            s.ell.map_or_else(|| "-".to_string(), |l| l.to_string()),
            s.stratum.to_string(),
            s.u.to_string(),
            dim_cell(s.dim),
            if s.maximal { "yes" } else { "no" }.to_string(),
        ]);
    }
    let mut text = String::new();
    if dec.whole_picard {
        text.push_str(&format!("W^{}_{} is all of Pic^{}\n", a.r, ctx.d, ctx.d));
    }
    text.push_str(&t.render());
    if let Some((window, agree, _)) = &oracle {
        text.push_str(&format!(
            "brute force (window {window}): {}\n",
            if *agree { "PASS" } else { "FAIL" }
        ));
    }
    Ok(Emitted { text, ok })
}

fn bn_rhok(a: &RhokArgs) -> Result<Emitted, Failure> {
    reject_format(a.output.format, &[Format::Table, Format::Json])?;
    let ctx = context(&a.curve)?;
    let value = rho_k(&ctx, a.r);
    let classical = rho(ctx.g, a.r, ctx.d);
    if a.output.format == Format::Json {
        return Ok(Emitted::ok(to_json(&json!({
            "schema": SCHEMA,
            "g": ctx.g, "k": ctx.k, "d": ctx.d, "r": a.r,
            "rho": classical,
            "rho_k": value,
        }))));
    }
    Ok(Emitted::ok(format!(
        "rho(g={}, r={}, d={}) = {classical}\nrho_k(g={}, k={}, r={}, d={}) = {value}\n",
        ctx.g, a.r, ctx.d, ctx.g, ctx.k, a.r, ctx.d
    )))
}

fn classes(a: &ClassArgs) -> Result<Emitted, Failure> {
    reject_format(a.output.format, &[Format::Table, Format::Json])?;
    let result: ClassResult = match &a.dual_of {
        Some(text) => {
            let e: SplittingType = text
                .parse()
                .map_err(|e: splitloci::Error| Failure::Usage(e.to_string()))?;
            dual_class(&e, a.g)?
        }
        None => {
            let (k, degree, n) = (
                a.k.expect("required by clap"),
                a.degree.expect("required by clap"),
                a.n.expect("required by clap"),
            );
            extreme_summand_class(k as usize, degree, n, a.g)?
        }
    };
    if a.output.format == Format::Json {
        return Ok(Emitted::ok(to_json(&result.to_json())));
    }
    let mut text = format!("[{}] = {}\n", result.stratum, result.render());
    match &result.point_count {
        Some(p) => text.push_str(&format!("points (u = g = {}): {p}\n", a.g)),
        None => text.push_str(&format!("points: n/a (u = {}, g = {})\n", result.u, a.g)),
    }
    Ok(Emitted::ok(text))
}

fn degen_verify(a: &DegenArgs) -> Result<Emitted, Failure> {
    reject_format(a.output.format, &[Format::Table, Format::Json])?;
    let rows: Vec<ModelCheck> = verify_models(a.kmax as usize, Execution::Parallel);
    let ok = rows.iter().all(|r| r.pass);
    if a.output.format == Format::Json {
        return Ok(Emitted {
            text: to_json(&json!({ "schema": SCHEMA, "kmax": a.kmax, "rows": rows, "pass": ok })),
            ok,
        });
    }
    let mut t = Table::new(&["k", "a", "case", "dim Wp", "dim Wq", "dim Wp∩Wq", "diag rank", "ker supp", "result"]);
    for r in &rows {
        t.row(vec![
            r.k.to_string(),
            r.a.to_string(),
            r.case.clone(),
            format!("{}/{}", r.dim_wp, r.expected_wp),
            format!("{}/{}", r.dim_wq, r.expected_wq),
            format!("{}/{}", r.dim_both, r.expected_both),
            r.diag.rank.to_string(),
            r.diag.max_kernel_support.to_string(),
            if r.pass { "PASS" } else { "FAIL" }.to_string(),
        ]);
    }
    let mut text = t.render();
    let passed = rows.iter().filter(|r| r.pass).count();
    text.push_str(&format!("{passed}/{} configurations pass\n", rows.len()));
    Ok(Emitted { text, ok })
}

fn fixtures(a: &OutputArgs) -> Result<Emitted, Failure> {
    reject_format(a.format, &[Format::Table, Format::Json])?;
    let outcomes = run_fixtures();
    let ok = outcomes.iter().all(|o| o.passed);
    if a.format == Format::Json {
        return Ok(Emitted {
            text: to_json(&json!({ "schema": SCHEMA, "fixtures": outcomes, "pass": ok })),
            ok,
        });
    }
    let mut text = String::new();
    for o in &outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        if o.detail.is_empty() {
            text.push_str(&format!("{status}  {}\n", o.name));
        } else {
            text.push_str(&format!("{status}  {} ({})\n", o.name, o.detail));
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    text.push_str(&format!("{passed}/{} fixtures pass\n", outcomes.len()));
    Ok(Emitted { text, ok })
}
