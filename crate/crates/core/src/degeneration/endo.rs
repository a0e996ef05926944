//! Matrix model for endomorphisms of `E = O^(k-a) + O(1)^a` on a component
//! of the elliptic chain, in a basis adapted to two totally ramified points.
//!
//! Rows and columns `0..a` belong to the `O(1)` summands and `a..k` to the
//! trivial ones. An endomorphism is block upper triangular: scalars on the
//! two diagonal blocks, linear forms `alpha s + beta t` in the upper-right
//! block (two unknowns per entry), and a lower-left block that is zero. The
//! lower-left entries are kept as unknowns pinned by structural rows, so the
//! unknown count is `k^2 + a(k-a)`.
//!
//! Order preservation at `p` makes the matrix lower triangular and kills the
//! `alpha`s; at `q` it makes it upper triangular and kills the `beta`s, with
//! one exempted entry when `L` is supported on `p` and `q`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::linalg::RationalMatrix;
use crate::error::{Error, Result};
use crate::exec::Execution;

/// One of the two totally ramified points on the component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Node {
    P,
    Q,
}

/// Which vanishing pattern the sections of `L` force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpecialCase {
    /// `L` is not of the form `O(np + mq)`.
    Generic,
    /// `L = O(mq)` with `m = k + a`: the `beta` at `(0, k-1)` is exempt at `q`.
    AtQ { m: i64 },
    /// `L = O(np + mq)` with `n >= m > 0`, `n < k`: the scalar at `(n, n-1)`
    /// is exempt at `q` and the one at `(n-1, n)` must vanish there.
    AtPq { n: i64, m: i64 },
}

impl SpecialCase {
    pub fn is_special(self) -> bool {
        self != SpecialCase::Generic
    }
}

fn coefficient(c: i64) -> String {
    if c == 1 {
        String::new()
    } else {
        c.to_string()
    }
}

impl fmt::Display for SpecialCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecialCase::Generic => f.write_str("generic"),
            SpecialCase::AtQ { m } => write!(f, "O({}q)", coefficient(*m)),
            SpecialCase::AtPq { n, m } => write!(f, "O({}p+{}q)", coefficient(*n), coefficient(*m)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VarKind {
    Scalar,
    /// Coefficient of `s` (vanishes to order `k` at `q`).
    Alpha,
    /// Coefficient of `t` (vanishes to order `k` at `p`).
    Beta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Variable {
    pub row: usize,
    pub col: usize,
    pub kind: VarKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoModel {
    k: usize,
    a: usize,
    case: SpecialCase,
    vars: Vec<Variable>,
}

impl EndoModel {
    pub fn new(k: usize, a: usize, case: SpecialCase) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidModel("rank must be positive".into()));
        }
        if a >= k {
            return Err(Error::InvalidModel(format!("need 0 <= a < k, got a = {a}, k = {k}")));
        }
        let (ki, ai) = (k as i64, a as i64);
        match case {
            SpecialCase::Generic => {}
            SpecialCase::AtQ { m } => {
                if a == 0 || m != ki + ai {
                    return Err(Error::InvalidModel(format!(
                        "O({m}q) needs a >= 1 and m = k + a = {}",
                        ki + ai
                    )));
                }
            }
            SpecialCase::AtPq { n, m } => {
                if !(m > 0 && n >= m && n < ki && n + m == ki + ai) {
                    return Err(Error::InvalidModel(format!(
                        "O({n}p+{m}q) needs n >= m > 0, n < k, n + m = k + a"
                    )));
                }
            }
        }
        let mut vars = Vec::with_capacity(k * k + a * (k - a));
        for row in 0..k {
            for col in 0..k {
                if row < a && col >= a {
                    vars.push(Variable { row, col, kind: VarKind::Alpha });
                    vars.push(Variable { row, col, kind: VarKind::Beta });
                } else {
                    vars.push(Variable { row, col, kind: VarKind::Scalar });
                }
            }
        }
        Ok(EndoModel { k, a, case, vars })
    }

    pub fn generic(k: usize, a: usize) -> Result<Self> {
        EndoModel::new(k, a, SpecialCase::Generic)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn case(&self) -> SpecialCase {
        self.case
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, row: usize, col: usize, kind: VarKind) -> Option<usize> {
        self.vars
            .iter()
            .position(|v| v.row == row && v.col == col && v.kind == kind)
    }

    fn scalar(&self, row: usize, col: usize) -> usize {
        self.var_index(row, col, VarKind::Scalar)
            .expect("scalar entry outside the linear-form block")
    }

    fn is_structural_zero(&self, row: usize, col: usize) -> bool {
        row >= self.a && col < self.a
    }

    /// Every valid configuration of rank `k`: all `a`, generic and special.
    pub fn all_configurations(k: usize) -> Vec<EndoModel> {
        let mut out = Vec::new();
        for a in 0..k {
            out.push(EndoModel::generic(k, a).expect("valid"));
            if a >= 1 {
                let m = (k + a) as i64;
                out.push(EndoModel::new(k, a, SpecialCase::AtQ { m }).expect("valid"));
            }
            let total = (k + a) as i64;
            for n in (a as i64 + 1)..(k as i64) {
                let m = total - n;
                if m > 0 && n >= m {
                    out.push(EndoModel::new(k, a, SpecialCase::AtPq { n, m }).expect("valid"));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConstraintTag {
    /// `Hom(O(1), O) = 0`.
    StructuralZero,
    OrderPreserving(Node),
    DiagonalVanishing,
}

/// Sparse rational linear functional on the model's unknowns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<(usize, BigRational)>,
    pub tag: ConstraintTag,
}

impl Constraint {
    fn pin(var: usize, tag: ConstraintTag) -> Self {
        Constraint {
            coeffs: vec![(var, BigRational::one())],
            tag,
        }
    }

    pub fn evaluate(&self, values: &[BigRational]) -> BigRational {
        self.coeffs
            .iter()
            .fold(BigRational::zero(), |acc, (i, c)| acc + c * &values[*i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub num_vars: usize,
    pub rows: Vec<Constraint>,
}

impl ConstraintSystem {
    pub fn empty(num_vars: usize) -> Self {
        ConstraintSystem {
            num_vars,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Constraint) {
        self.rows.push(c);
    }

    /// Both sets of conditions at once.
    pub fn stack(&self, other: &ConstraintSystem) -> ConstraintSystem {
        assert_eq!(self.num_vars, other.num_vars, "systems over different unknowns");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        ConstraintSystem {
            num_vars: self.num_vars,
            rows,
        }
    }

    pub fn to_matrix(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.rows.len(), self.num_vars);
        for (r, c) in self.rows.iter().enumerate() {
            for (i, v) in &c.coeffs {
                m.set(r, *i, v.clone());
            }
        }
        m
    }

    pub fn nullity(&self) -> usize {
        self.to_matrix().nullity()
    }

    pub fn solution_basis(&self) -> Vec<Vec<BigRational>> {
        self.to_matrix().nullspace()
    }

    pub fn is_satisfied_by(&self, values: &[BigRational]) -> bool {
        self.rows.iter().all(|c| c.evaluate(values).is_zero())
    }
}

pub fn nullity(cs: &ConstraintSystem) -> usize {
    cs.nullity()
}

fn structural_rows(m: &EndoModel, cs: &mut ConstraintSystem) {
    for (i, v) in m.vars.iter().enumerate() {
        if m.is_structural_zero(v.row, v.col) {
            cs.push(Constraint::pin(i, ConstraintTag::StructuralZero));
        }
    }
}

/// The ambient space `H^0(End E)`: only the structural zeros.
pub fn endomorphism_space(m: &EndoModel) -> ConstraintSystem {
    let mut cs = ConstraintSystem::empty(m.num_vars());
    structural_rows(m, &mut cs);
    cs
}

/// Conditions for being order preserving at `at`, plus the structural zeros.
pub fn order_preserving_space(m: &EndoModel, at: Node) -> ConstraintSystem {
    let mut cs = endomorphism_space(m);
    let tag = ConstraintTag::OrderPreserving(at);
    for (i, v) in m.vars.iter().enumerate() {
        if m.is_structural_zero(v.row, v.col) {
            continue;
        }
        let vanishes = match (at, v.kind) {
            (Node::P, VarKind::Alpha) => true,
            (Node::P, VarKind::Beta) => false,
            (Node::P, VarKind::Scalar) => v.row < v.col,
            (Node::Q, VarKind::Alpha) => false,
            (Node::Q, VarKind::Beta) => {
                !matches!(m.case, SpecialCase::AtQ { .. } if v.row == 0 && v.col == m.k - 1)
            }
            (Node::Q, VarKind::Scalar) => match m.case {
                SpecialCase::AtPq { n, .. } => {
                    let n = n as usize;
                    let exempt = v.row == n && v.col == n - 1;
                    let extra = v.row == n - 1 && v.col == n;
                    (v.row > v.col && !exempt) || extra
                }
                _ => v.row > v.col,
            },
        };
        if vanishes {
            cs.push(Constraint::pin(i, tag));
        }
    }
    cs
}

/// Conditions at both points: the space `W_p ∩ W_q`.
pub fn order_preserving_both(m: &EndoModel) -> ConstraintSystem {
    order_preserving_space(m, Node::P).stack(&order_preserving_space(m, Node::Q))
}

/// Rank of the diagonal map on `W_p ∩ W_q`, with data on its kernel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagReport {
    pub solution_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    /// Most non-zero matrix entries in any kernel basis vector.
    pub max_kernel_support: usize,
}

pub fn diag_map_rank(m: &EndoModel) -> DiagReport {
    let both = order_preserving_both(m);
    let basis = both.solution_basis();
    let diag_vars: Vec<usize> = (0..m.k).map(|j| m.scalar(j, j)).collect();
    let image = RationalMatrix::from_rows(
        basis.len(),
        diag_vars
            .iter()
            .map(|&j| basis.iter().map(|v| v[j].clone()).collect())
            .collect(),
    );
    let rank = image.rank();

    let mut kernel_system = both.clone();
    for &j in &diag_vars {
        kernel_system.push(Constraint::pin(j, ConstraintTag::DiagonalVanishing));
    }
    let kernel = kernel_system.solution_basis();
    let max_kernel_support = kernel
        .iter()
        .map(|v| entry_support(m, v))
        .max()
        .unwrap_or(0);
    DiagReport {
        solution_dim: basis.len(),
        rank,
        kernel_dim: kernel.len(),
        max_kernel_support,
    }
}

/// Number of matrix entries (not unknowns) that are non-zero.
fn entry_support(m: &EndoModel, values: &[BigRational]) -> usize {
    let mut seen: Vec<(usize, usize)> = m
        .vars
        .iter()
        .zip(values)
        .filter(|(_, x)| !x.is_zero())
        .map(|(v, _)| (v.row, v.col))
        .collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// A concrete endomorphism in the model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoSolution {
    pub model: EndoModel,
    pub values: Vec<BigRational>,
}

impl EndoSolution {
    pub fn new(model: EndoModel, values: Vec<BigRational>) -> Result<Self> {
        if values.len() != model.num_vars() {
            return Err(Error::InvalidModel(format!(
                "expected {} values, got {}",
                model.num_vars(),
                values.len()
            )));
        }
        Ok(EndoSolution { model, values })
    }

    /// Diagonal matrix with the given entries.
    pub fn from_diagonal(model: EndoModel, diag: &[BigRational]) -> Result<Self> {
        if diag.len() != model.k {
            return Err(Error::InvalidModel(format!(
                "expected {} diagonal entries, got {}",
                model.k,
                diag.len()
            )));
        }
        let mut values = vec![BigRational::zero(); model.num_vars()];
        for (j, d) in diag.iter().enumerate() {
            values[model.scalar(j, j)] = d.clone();
        }
        Ok(EndoSolution { model, values })
    }

    pub fn identity(model: EndoModel) -> Self {
        let diag = vec![BigRational::one(); model.k];
        EndoSolution::from_diagonal(model, &diag).expect("length matches")
    }

    /// `d^(j)`: the diagonal entries in the adapted basis.
    pub fn diagonal(&self) -> Vec<BigRational> {
        (0..self.model.k)
            .map(|j| self.values[self.model.scalar(j, j)].clone())
            .collect()
    }

    pub fn is_order_preserving(&self, at: Node) -> bool {
        order_preserving_space(&self.model, at).is_satisfied_by(&self.values)
    }
}

/// Agreement of the two endomorphisms meeting at a node, each written in
/// the basis adapted to that node: `d^(0)` matches and `d^(j)` on the left
/// matches `d^(k-j)` on the right for `j = 1..k-1`.
pub fn node_compatibility(left: &EndoSolution, right: &EndoSolution, k: usize) -> Result<bool> {
    if left.model.k != k || right.model.k != k {
        return Err(Error::CompatibilityUndefined(format!(
            "ranks {} and {} do not match k = {k}",
            left.model.k, right.model.k
        )));
    }
    for (side, s) in [("left", left), ("right", right)] {
        if !s.is_order_preserving(Node::P) {
            return Err(Error::CompatibilityUndefined(format!(
                "{side} endomorphism is not order preserving at the node"
            )));
        }
    }
    let (l, r) = (left.diagonal(), right.diagonal());
    Ok(l[0] == r[0] && (1..k).all(|j| l[j] == r[k - j]))
}

/// One line of the order-preserving dimension table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelCheck {
    pub k: usize,
    pub a: usize,
    pub case: String,
    pub dim_ambient: usize,
    pub dim_wp: usize,
    pub dim_wq: usize,
    pub dim_both: usize,
    pub diag: DiagReport,
    pub expected_wp: usize,
    pub expected_wq: usize,
    pub expected_both: usize,
    pub pass: bool,
}

/// Computes every dimension for one model and compares with
/// `dim W_p = k(k+1)/2`, `dim W_q = k(k+1)/2 (+1 for O(mq))`,
/// `dim W_p ∩ W_q = k (+1 when special)`, diagonal map of rank `k`, kernel
/// vectors supported on at most one entry.
pub fn check_model(m: &EndoModel) -> ModelCheck {
    let k = m.k;
    let tri = k * (k + 1) / 2;
    let expected_wq = tri + usize::from(matches!(m.case, SpecialCase::AtQ { .. }));
    let expected_both = k + usize::from(m.case.is_special());
    let dim_ambient = endomorphism_space(m).nullity();
    let dim_wp = order_preserving_space(m, Node::P).nullity();
    let dim_wq = order_preserving_space(m, Node::Q).nullity();
    let dim_both = order_preserving_both(m).nullity();
    let diag = diag_map_rank(m);
    let pass = dim_ambient == k * k
        && dim_wp == tri
        && dim_wq == expected_wq
        && dim_both == expected_both
        && diag.rank == k
        && diag.max_kernel_support <= 1;
    ModelCheck {
        k,
        a: m.a,
        case: m.case.to_string(),
        dim_ambient,
        dim_wp,
        dim_wq,
        dim_both,
        diag,
        expected_wp: tri,
        expected_wq,
        expected_both,
        pass,
    }
}

/// [`check_model`] over every configuration with `2 <= k <= kmax`.
pub fn verify_models(kmax: usize, exec: Execution) -> Vec<ModelCheck> {
    let models: Vec<EndoModel> = (2..=kmax).flat_map(EndoModel::all_configurations).collect();
    exec.map(&models, check_model)
}
