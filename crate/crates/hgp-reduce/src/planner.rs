//! Choosing which color groups get X- or Z-combination.
//!
//! Selecting groups is a maximum-weight bipartite matching between the row
//! vertices `X_i`, the column vertices `Z_j`, and the groups `Γ_{i,j}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coloring::ProductColoring;
use crate::gf2::BitMatrix;
use crate::hgp::{CssCode, QubitCoord};
use crate::reducer::ReductionPlan;
use crate::{ClassicalCode, Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CombinationSchedule {
    /// Groups `(i, j)` whose qubits are removed by combining X-checks.
    pub x_groups: Vec<(usize, usize)>,
    /// Groups whose qubits are removed by combining Z-checks.
    pub z_groups: Vec<(usize, usize)>,
}

impl CombinationSchedule {
    pub fn new(mut x_groups: Vec<(usize, usize)>, mut z_groups: Vec<(usize, usize)>) -> Self {
        x_groups.sort_unstable();
        z_groups.sort_unstable();
        CombinationSchedule { x_groups, z_groups }
    }

    /// At most one X-group per row, one Z-group per column, never both on a group.
    pub fn check_feasible(&self, pc: &ProductColoring) -> Result<()> {
        let mut rows = vec![false; pc.chi1];
        let mut cols = vec![false; pc.chi2];
        for &(i, j) in self.x_groups.iter().chain(&self.z_groups) {
            if i >= pc.chi1 || j >= pc.chi2 {
                return Err(Error::Infeasible(format!("group ({i},{j}) out of range")));
            }
        }
        for &(i, j) in &self.x_groups {
            if std::mem::replace(&mut rows[i], true) {
                return Err(Error::Infeasible(format!("two X-groups in row {i}")));
            }
            if self.z_groups.contains(&(i, j)) {
                return Err(Error::Infeasible(format!("group ({i},{j}) used twice")));
            }
        }
        for &(_, j) in &self.z_groups {
            if std::mem::replace(&mut cols[j], true) {
                return Err(Error::Infeasible(format!("two Z-groups in column {j}")));
            }
        }
        Ok(())
    }

    pub fn removed_count(&self, pc: &ProductColoring) -> usize {
        self.x_groups
            .iter()
            .chain(&self.z_groups)
            .map(|&(i, j)| pc.size(i, j))
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LeftVertex {
    X(usize),
    Z(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingEdge {
    pub left: LeftVertex,
    pub group: (usize, usize),
    pub weight: usize,
}

/// Weighted bipartite graph between `X_1..X_χ1, Z_1..Z_χ2` and the groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingGraph {
    pub chi1: usize,
    pub chi2: usize,
    /// Sorted by group, X before Z.
    pub edges: Vec<MatchingEdge>,
}

impl MatchingGraph {
    pub fn left_count(&self) -> usize {
        self.chi1 + self.chi2
    }

    pub fn right_count(&self) -> usize {
        self.chi1 * self.chi2
    }

    fn left_index(&self, v: LeftVertex) -> usize {
        match v {
            LeftVertex::X(i) => i,
            LeftVertex::Z(j) => self.chi1 + j,
        }
    }
}

pub fn build_matching_graph(pc: &ProductColoring) -> MatchingGraph {
    let mut edges = Vec::new();
    for i in 0..pc.chi1 {
        for j in 0..pc.chi2 {
            let weight = pc.size(i, j);
            if weight > 0 {
                edges.push(MatchingEdge {
                    left: LeftVertex::X(i),
                    group: (i, j),
                    weight,
                });
                edges.push(MatchingEdge {
                    left: LeftVertex::Z(j),
                    group: (i, j),
                    weight,
                });
            }
        }
    }
    MatchingGraph {
        chi1: pc.chi1,
        chi2: pc.chi2,
        edges,
    }
}

/// Maximum-weight matching; returns indices into `g.edges`.
pub fn max_weight_matching(g: &MatchingGraph) -> Vec<usize> {
    let edges: Vec<(usize, usize, i64)> = g
        .edges
        .iter()
        .map(|e| {
            (
                g.left_index(e.left),
                e.group.0 * g.chi2 + e.group.1,
                e.weight as i64,
            )
        })
        .collect();
    lex_max_matching(g.left_count(), g.right_count(), &edges)
}

/// Hungarian algorithm on a square cost matrix; returns `assign[row] = col`.
fn hungarian_min(cost: &[Vec<i64>]) -> Vec<usize> {
    let n = cost.len();
    let inf = i64::MAX / 4;
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assign = vec![0; n];
    for j in 1..=n {
        if p[j] > 0 {
            assign[p[j] - 1] = j - 1;
        }
    }
    assign
}

/// Total weight of a maximum matching restricted to `allowed` edges.
fn max_matching_weight(
    n_left: usize,
    n_right: usize,
    edges: &[(usize, usize, i64)],
    allowed: &[bool],
) -> i64 {
    let n = n_left.max(n_right);
    if n == 0 {
        return 0;
    }
    let mut w = vec![vec![0i64; n]; n];
    for (e, &(l, r, x)) in edges.iter().enumerate() {
        if allowed[e] && x > w[l][r] {
            w[l][r] = x;
        }
    }
    let top = w.iter().flatten().copied().max().unwrap_or(0);
    let cost: Vec<Vec<i64>> = w
        .iter()
        .map(|row| row.iter().map(|&x| top - x).collect())
        .collect();
    let assign = hungarian_min(&cost);
    assign.iter().enumerate().map(|(l, &r)| w[l][r]).sum()
}

/// Maximum-weight matching; among optimal matchings the one whose chosen edge
/// indices come first lexicographically. Edge weights must be positive.
pub(crate) fn lex_max_matching(
    n_left: usize,
    n_right: usize,
    edges: &[(usize, usize, i64)],
) -> Vec<usize> {
    let mut allowed = vec![true; edges.len()];
    let best = max_matching_weight(n_left, n_right, edges, &allowed);
    let mut chosen = Vec::new();
    let mut forced = 0i64;
    for e in 0..edges.len() {
        if !allowed[e] {
            continue;
        }
        let (l, r, w) = edges[e];
        let mut trial = allowed.clone();
        for (f, &(l2, r2, _)) in edges.iter().enumerate() {
            if l2 == l || r2 == r {
                trial[f] = false;
            }
        }
        if forced + w + max_matching_weight(n_left, n_right, edges, &trial) == best {
            forced += w;
            chosen.push(e);
            allowed = trial;
        } else {
            allowed[e] = false;
        }
    }
    chosen
}

/// Optimal schedule from a maximum-weight matching.
pub fn choose_schedule(pc: &ProductColoring) -> CombinationSchedule {
    let g = build_matching_graph(pc);
    let mut x = Vec::new();
    let mut z = Vec::new();
    for e in max_weight_matching(&g) {
        let edge = g.edges[e];
        match edge.left {
            LeftVertex::X(_) => x.push(edge.group),
            LeftVertex::Z(_) => z.push(edge.group),
        }
    }
    CombinationSchedule::new(x, z)
}

/// Schedule that keeps the diagonal mirror a ZX-duality: X on `Γ_{i,j}` exactly
/// when Z on `Γ_{j,i}`, diagonal groups untouched.
///
/// Choosing X on `Γ_{i,j}` uses row `i` for X and, through the mirror, column
/// `i` for Z, so both constraints collapse onto one vertex per index. The
/// matching pairs index vertices with upper-triangular groups.
pub fn fold_symmetric_schedule(pc: &ProductColoring) -> Result<CombinationSchedule> {
    if !pc.is_symmetric() {
        return Err(Error::InvalidInput(
            "fold-symmetric schedule needs identical colorings on both axes".into(),
        ));
    }
    let chi = pc.chi1;
    let mut groups = Vec::new();
    let mut edges = Vec::new();
    for i in 0..chi {
        for j in i + 1..chi {
            let w = pc.size(i, j) + pc.size(j, i);
            if w == 0 {
                continue;
            }
            let r = groups.len();
            groups.push((i, j));
            edges.push((i, r, w as i64));
            edges.push((j, r, w as i64));
        }
    }
    let mut x = Vec::new();
    let mut z = Vec::new();
    for e in lex_max_matching(chi, groups.len(), &edges) {
        let (l, r, _) = edges[e];
        let (i, j) = groups[r];
        let (a, b) = if l == i { (i, j) } else { (j, i) };
        x.push((a, b));
        z.push((b, a));
    }
    Ok(CombinationSchedule::new(x, z))
}

/// Permutation given as an image list: `p[x]` is the image of `x`.
pub type Permutation = Vec<usize>;

fn check_permutation(p: &Permutation, n: usize, what: &str) -> Result<()> {
    let mut seen = vec![false; n];
    if p.len() != n {
        return Err(Error::InvalidInput(format!("{what} has length {} not {n}", p.len())));
    }
    for &x in p {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return Err(Error::InvalidInput(format!("{what} is not a permutation")));
        }
    }
    Ok(())
}

/// Matrix with a one at `(p[x], x)`.
pub fn permutation_matrix(p: &Permutation) -> BitMatrix {
    let mut m = BitMatrix::zeros(p.len(), p.len());
    for (x, &y) in p.iter().enumerate() {
        m.set(y, x, true);
    }
    m
}

/// Checks `τ·H = H·σ`, i.e. `(c, b)` is an edge iff `(τ c, σ b)` is.
pub fn is_tanner_automorphism(c: &ClassicalCode, sigma: &Permutation, tau: &Permutation) -> bool {
    if check_permutation(sigma, c.n(), "sigma").is_err()
        || check_permutation(tau, c.m(), "tau").is_err()
    {
        return false;
    }
    (0..c.m()).all(|r| (0..c.n()).all(|b| c.h.get(r, b) == c.h.get(tau[r], sigma[b])))
}

/// Induced permutations on the reduced code, when they exist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceWitness {
    pub sigma_reduced: Permutation,
    pub tx_reduced: Permutation,
    pub tz_reduced: Permutation,
}

/// Whether the product automorphism `(σ1, τ1) × (σ2, τ2)` descends to the
/// reduced code through permutations.
pub fn verify_equivariance(
    code: &CssCode,
    plan: &ReductionPlan,
    c1: &ClassicalCode,
    c2: &ClassicalCode,
    perms: [&Permutation; 4],
) -> Result<bool> {
    Ok(equivariance_witness(code, plan, c1, c2, perms)?.is_some())
}

pub fn equivariance_witness(
    code: &CssCode,
    plan: &ReductionPlan,
    c1: &ClassicalCode,
    c2: &ClassicalCode,
    [sigma1, tau1, sigma2, tau2]: [&Permutation; 4],
) -> Result<Option<EquivarianceWitness>> {
    if !is_tanner_automorphism(c1, sigma1, tau1) || !is_tanner_automorphism(c2, sigma2, tau2) {
        return Err(Error::InvalidInput(
            "permutations are not Tanner-graph automorphisms".into(),
        ));
    }
    let l = &code.layout;
    if !l.is_full() {
        return Err(Error::InvalidInput("expects an unreduced product".into()));
    }
    let sigma: Permutation = (0..l.n())
        .map(|q| {
            l.original_index(match l.coord(q) {
                QubitCoord::Bit { row, col } => QubitCoord::Bit {
                    row: sigma1[row],
                    col: sigma2[col],
                },
                QubitCoord::Check { row, col } => QubitCoord::Check {
                    row: tau1[row],
                    col: tau2[col],
                },
            })
        })
        .collect();
    let tx: Permutation = (0..code.hx.rows())
        .map(|r| {
            let (a, j) = l.x_check_coord(r);
            l.x_check_index(tau1[a], sigma2[j])
        })
        .collect();
    let tz: Permutation = (0..code.hz.rows())
        .map(|r| {
            let (i, b) = l.z_check_coord(r);
            l.z_check_index(sigma1[i], tau2[b])
        })
        .collect();

    let sig_m = permutation_matrix(&sigma);
    let tx_m = permutation_matrix(&tx);
    let tz_m = permutation_matrix(&tz);
    if tx_m.matmul(&code.hx)? != code.hx.matmul(&sig_m)?
        || tz_m.matmul(&code.hz)? != code.hz.matmul(&sig_m)?
    {
        return Err(Error::Invariant("product automorphism fails on the code".into()));
    }

    let pos: BTreeMap<usize, usize> = plan.kept.iter().enumerate().map(|(t, &q)| (q, t)).collect();
    let mut sigma_reduced = Vec::with_capacity(plan.kept.len());
    for &q in &plan.kept {
        match pos.get(&sigma[q]) {
            Some(&t) => sigma_reduced.push(t),
            None => return Ok(None),
        }
    }
    let Some(tx_reduced) = induced_row_permutation(&plan.wx, &tx) else {
        return Ok(None);
    };
    let Some(tz_reduced) = induced_row_permutation(&plan.wz, &tz) else {
        return Ok(None);
    };

    let st = permutation_matrix(&sigma_reduced);
    let ok = plan.v.matmul(&st)? == sig_m.matmul(&plan.v)?
        && permutation_matrix(&tx_reduced).matmul(&plan.wx)? == plan.wx.matmul(&tx_m)?
        && permutation_matrix(&tz_reduced).matmul(&plan.wz)? == plan.wz.matmul(&tz_m)?;
    Ok(ok.then_some(EquivarianceWitness {
        sigma_reduced,
        tx_reduced,
        tz_reduced,
    }))
}

/// `t̃` with `T̃·W = W·T`: row `r` must map to the row whose support is `τ(S_r)`.
fn induced_row_permutation(w: &BitMatrix, tau: &Permutation) -> Option<Permutation> {
    let supports = w.supports();
    let index: BTreeMap<&Vec<usize>, usize> =
        supports.iter().enumerate().map(|(r, s)| (s, r)).collect();
    let mut out = Vec::with_capacity(supports.len());
    for s in &supports {
        let mut image: Vec<usize> = s.iter().map(|&c| tau[c]).collect();
        image.sort_unstable();
        out.push(*index.get(&image)?);
    }
    Some(out)
}
