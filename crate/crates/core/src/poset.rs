//! The stratification of `Pic^d` by splitting type.
//!
//! Nodes are the types of rank `k` and degree `d'` whose splitting locus is
//! non-empty on a general cover, i.e. `u <= g`. Edges are covering relations
//! of dominance order restricted to those nodes. The down-set of a node
//! indexes the strata making up its closed locus; when every stratum has the
//! expected dimension the closed locus is the closure of the open one
//! (each component has "at least the expected dimension").

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::brill_noether::BnContext;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::splitting::{SplittingType, TypeEnumerator};

pub const DEFAULT_NODE_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PosetOptions {
    /// Extends the node universe to `u <= g + include_empty`.
    pub include_empty: u64,
    pub node_cap: usize,
    pub exec: Execution,
}

impl Default for PosetOptions {
    fn default() -> Self {
        PosetOptions {
            include_empty: 0,
            node_cap: DEFAULT_NODE_CAP,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetNode {
    #[serde(rename = "type")]
    pub stratum: SplittingType,
    pub u: u64,
    pub dim: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratPoset {
    pub ctx: BnContext,
    /// Lexicographic on parts.
    pub nodes: Vec<PosetNode>,
    /// `(lower, upper)` index pairs, sorted.
    pub covers: Vec<(usize, usize)>,
    index: BTreeMap<SplittingType, usize>,
}

/// Upper bound on `max part - min part` for a type with `u <= bound`:
/// a single gap of `bound + 2` already forces `u > bound`.
pub fn span_bound(max_u: u64) -> i64 {
    max_u as i64 + 1
}

/// Every type of rank `k`, degree `d'` with `u <= max_u`, lexicographic.
pub fn enumerate_strata(
    rank: usize,
    degree: i64,
    max_u: u64,
    slack: i64,
    node_cap: usize,
    exec: Execution,
) -> Result<Vec<SplittingType>> {
    let k = rank as i64;
    let span = span_bound(max_u) + slack;
    // min part <= floor(d'/k) and max part <= min part + span.
    let lo = (degree - (k - 1) * span).div_euclid(k) - slack;
    let hi = degree.div_euclid(k) + span + 1;
    TypeEnumerator::new(rank, degree, lo, hi)
        .max_u(max_u)
        .cap(node_cap)
        .collect(exec)
}

pub fn build_poset(ctx: &BnContext) -> Result<StratPoset> {
    build_poset_with(ctx, &PosetOptions::default())
}

pub fn build_poset_with(ctx: &BnContext, opts: &PosetOptions) -> Result<StratPoset> {
    let max_u = ctx.g as u64 + opts.include_empty;
    let types = enumerate_strata(
        ctx.rank(),
        ctx.pushforward_degree(),
        max_u,
        0,
        opts.node_cap,
        opts.exec,
    )?;
    let nodes: Vec<PosetNode> = types
        .into_iter()
        .map(|stratum| {
            let u = stratum.u();
            PosetNode {
                dim: dimension(ctx.g, u),
                u,
                stratum,
            }
        })
        .collect();
    let covers = compute_covers(&nodes, opts.exec);
    let index = nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (n.stratum.clone(), i))
        .collect();
    Ok(StratPoset {
        ctx: *ctx,
        nodes,
        covers,
        index,
    })
}

fn dimension(g: i64, u: u64) -> Option<i64> {
    (u as i128 <= g as i128).then(|| g - u as i64)
}

/// Filters the full strict order down to its covering pairs.
fn compute_covers(nodes: &[PosetNode], exec: Execution) -> Vec<(usize, usize)> {
    let per_upper = exec.map_range(nodes.len(), |j| {
        let upper = &nodes[j].stratum;
        let below: Vec<usize> = (0..nodes.len())
            .filter(|&i| i != j && nodes[i].stratum.leq_unchecked(upper))
            .collect();
        below
            .iter()
            .copied()
            .filter(|&i| {
                !below
                    .iter()
                    .any(|&m| m != i && nodes[i].stratum.leq_unchecked(&nodes[m].stratum))
            })
            .map(|i| (i, j))
            .collect::<Vec<_>>()
    });
    let mut covers: Vec<(usize, usize)> = per_upper.into_iter().flatten().collect();
    covers.sort_unstable();
    covers
}

impl StratPoset {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, e: &SplittingType) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &SplittingType) -> bool {
        self.index.contains_key(e)
    }

    pub fn types(&self) -> impl Iterator<Item = &SplittingType> {
        self.nodes.iter().map(|n| &n.stratum)
    }

    /// The unique maximum (the balanced type).
    pub fn maximum(&self) -> Option<&SplittingType> {
        self.types().find(|e| e.is_balanced())
    }

    /// Every node `<= e`, including `e`, lexicographic.
    pub fn downset(&self, e: &SplittingType) -> Result<Vec<SplittingType>> {
        if !self.contains(e) {
            return Err(Error::NotANode(e.to_string()));
        }
        Ok(self
            .types()
            .filter(|n| n.leq_unchecked(e))
            .cloned()
            .collect())
    }

    /// Graphviz rendering; byte-identical for identical posets.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "digraph strata_g{}_k{}_d{} {{",
            self.ctx.g, self.ctx.k, self.ctx.d
        );
        out.push_str("  rankdir=BT;\n");
        out.push_str("  node [shape=box];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{} u={}\"];", n.stratum, n.u);
        }
        for (lo, hi) in &self.covers {
            let _ = writeln!(out, "  n{lo} -> n{hi};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            schema: crate::SCHEMA.to_string(),
            g: self.ctx.g,
            k: self.ctx.k,
            d: self.ctx.d,
            nodes: self.nodes.clone(),
            covers: self.covers.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

/// Free-function form of [`StratPoset::to_dot`].
pub fn export_dot(p: &StratPoset) -> String {
    p.to_dot()
}

pub fn downset(p: &StratPoset, e: &SplittingType) -> Result<Vec<SplittingType>> {
    p.downset(e)
}

/// `g - u(e)` if the stratum is non-empty, `None` if `u(e) > g`.
pub fn expected_dimension(ctx: &BnContext, e: &SplittingType) -> Result<Option<i64>> {
    if e.rank() != ctx.rank() || e.degree() != ctx.pushforward_degree() {
        return Err(Error::UniverseMismatch {
            found: e.to_string(),
            rank: ctx.rank(),
            degree: ctx.pushforward_degree(),
        });
    }
    Ok(dimension(ctx.g, e.u()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub schema: String,
    pub g: i64,
    pub k: i64,
    pub d: i64,
    pub nodes: Vec<PosetNode>,
    pub covers: Vec<[usize; 2]>,
}
