//! Stabilizer combination and qubit removal: `H̃_X = W_X·H_X·V`, `H̃_Z = W_Z·H_Z·V`.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::coloring::ProductColoring;
use crate::gf2::BitMatrix;
use crate::hgp::{count_two_qubit_gates, CssCode, QubitLayout};
use crate::planner::CombinationSchedule;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pauli {
    X,
    Z,
}

/// The checks of one type acting on a removed qubit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Star {
    /// Position of the removed qubit in the input code.
    pub qubit: usize,
    pub kind: Pauli,
    /// Ascending check indices.
    pub checks: Vec<usize>,
}

/// Where a reduced check comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowOrigin {
    /// An input check passed through unchanged.
    Pass(usize),
    /// Sum of checks `pos` and `pos + 1` of a star.
    Combined { star: usize, pos: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionPlan {
    pub schedule: CombinationSchedule,
    pub stars: Vec<Star>,
    pub wx: BitMatrix,
    pub wz: BitMatrix,
    pub v: BitMatrix,
    /// Removed positions, ascending.
    pub removed: Vec<usize>,
    /// Kept positions, ascending; column `t` of `v` is the unit vector on `kept[t]`.
    pub kept: Vec<usize>,
    pub x_rows: Vec<RowOrigin>,
    pub z_rows: Vec<RowOrigin>,
}

/// `(Δ−1)×Δ` matrix with rows `e_t + e_{t+1}`.
pub fn local_repetition_transform(delta: usize) -> Result<BitMatrix> {
    if delta == 0 {
        return Err(Error::Invariant("star without checks".into()));
    }
    let mut w = BitMatrix::zeros(delta - 1, delta);
    for t in 0..delta - 1 {
        w.set(t, t, true);
        w.set(t, t + 1, true);
    }
    Ok(w)
}

fn assemble(
    m: usize,
    stars: &[Star],
    kind: Pauli,
) -> Result<(BitMatrix, Vec<RowOrigin>)> {
    let mut owner = vec![usize::MAX; m];
    for (s, star) in stars.iter().enumerate().filter(|(_, s)| s.kind == kind) {
        if star.checks.is_empty() {
            return Err(Error::Invariant(format!(
                "qubit {} has no {kind:?}-checks",
                star.qubit
            )));
        }
        for &c in &star.checks {
            if owner[c] != usize::MAX {
                return Err(Error::Infeasible(format!(
                    "{kind:?}-check {c} belongs to two combined stars"
                )));
            }
            owner[c] = s;
        }
    }
    let mut rows = Vec::new();
    let mut origins = Vec::new();
    for c in 0..m {
        if owner[c] == usize::MAX {
            rows.push(vec![c]);
            origins.push(RowOrigin::Pass(c));
            continue;
        }
        let star = &stars[owner[c]];
        if star.checks[0] != c {
            continue;
        }
        let local = local_repetition_transform(star.checks.len())?;
        for pos in 0..local.rows() {
            rows.push(local.row_ones(pos).iter().map(|&t| star.checks[t]).collect());
            origins.push(RowOrigin::Combined {
                star: owner[c],
                pos,
            });
        }
    }
    Ok((BitMatrix::from_supports(rows.len(), m, &rows)?, origins))
}

impl ReductionPlan {
    /// Plan removing the given qubits by combining the checks of the stated type.
    pub fn from_stars(
        code: &CssCode,
        schedule: CombinationSchedule,
        removals: &[(usize, Pauli)],
    ) -> Result<Self> {
        let n = code.n();
        let xt = code.hx.transpose();
        let zt = code.hz.transpose();
        let mut is_removed = vec![false; n];
        let mut stars = Vec::with_capacity(removals.len());
        for &(q, kind) in removals {
            if q >= n || std::mem::replace(&mut is_removed[q], true) {
                return Err(Error::Infeasible(format!("qubit {q} removed twice or out of range")));
            }
            let checks = match kind {
                Pauli::X => xt.row_ones(q),
                Pauli::Z => zt.row_ones(q),
            };
            stars.push(Star {
                qubit: q,
                kind,
                checks,
            });
        }
        let (wx, x_rows) = assemble(code.hx.rows(), &stars, Pauli::X)?;
        let (wz, z_rows) = assemble(code.hz.rows(), &stars, Pauli::Z)?;
        let kept: Vec<usize> = (0..n).filter(|&q| !is_removed[q]).collect();
        let removed: Vec<usize> = (0..n).filter(|&q| is_removed[q]).collect();
        let mut v = BitMatrix::zeros(n, kept.len());
        for (t, &q) in kept.iter().enumerate() {
            v.set(q, t, true);
        }
        let plan = ReductionPlan {
            schedule,
            stars,
            wx,
            wz,
            v,
            removed,
            kept,
            x_rows,
            z_rows,
        };
        plan.check_removed_support(code)?;
        Ok(plan)
    }

    /// Every removed qubit must be untouched by all combined X-rows or all combined Z-rows.
    fn check_removed_support(&self, code: &CssCode) -> Result<()> {
        let cx = self.wx.matmul(&code.hx)?.transpose();
        let cz = self.wz.matmul(&code.hz)?.transpose();
        for &q in &self.removed {
            if cx.row_weight(q) > 0 && cz.row_weight(q) > 0 {
                return Err(Error::Invariant(format!(
                    "removed qubit {q} still carries X and Z support"
                )));
            }
        }
        Ok(())
    }

    pub fn identity(code: &CssCode) -> Result<Self> {
        ReductionPlan::from_stars(code, CombinationSchedule::default(), &[])
    }

    pub fn origin(&self, kind: Pauli, row: usize) -> RowOrigin {
        match kind {
            Pauli::X => self.x_rows[row],
            Pauli::Z => self.z_rows[row],
        }
    }

    /// Input checks summed into reduced check `row`.
    pub fn row_checks(&self, kind: Pauli, row: usize) -> Vec<usize> {
        match self.origin(kind, row) {
            RowOrigin::Pass(c) => vec![c],
            RowOrigin::Combined { star, pos } => {
                let s = &self.stars[star];
                vec![s.checks[pos], s.checks[pos + 1]]
            }
        }
    }

    /// Hex SHA-256 of the transform matrices and kept list.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for (tag, m) in [("wx", &self.wx), ("wz", &self.wz)] {
            h.update(format!("{tag} {} {}\n", m.rows(), m.cols()));
            for s in m.supports() {
                h.update(format!("{s:?}\n"));
            }
        }
        h.update(format!("kept {:?}\n", self.kept));
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Plan for a feasible schedule on an unreduced product.
pub fn build_reduction(
    code: &CssCode,
    pc: &ProductColoring,
    schedule: &CombinationSchedule,
) -> Result<ReductionPlan> {
    schedule.check_feasible(pc)?;
    let mut removals = Vec::new();
    for (groups, kind) in [(&schedule.x_groups, Pauli::X), (&schedule.z_groups, Pauli::Z)] {
        for &(i, j) in groups {
            for &q in pc.group(i, j) {
                let pos = code.layout.position(q).ok_or_else(|| {
                    Error::Infeasible(format!("group qubit {q} not present in the code"))
                })?;
                removals.push((pos, kind));
            }
        }
    }
    ReductionPlan::from_stars(code, schedule.clone(), &removals)
}

pub fn apply_reduction(code: &CssCode, plan: &ReductionPlan) -> Result<CssCode> {
    if plan.v.rows() != code.n()
        || plan.wx.cols() != code.hx.rows()
        || plan.wz.cols() != code.hz.rows()
    {
        return Err(Error::Shape("plan was built for a different code".into()));
    }
    let hx = plan.wx.matmul(&code.hx)?.col_select(&plan.kept);
    let hz = plan.wz.matmul(&code.hz)?.col_select(&plan.kept);
    let layout = QubitLayout {
        kept: plan.kept.iter().map(|&p| code.layout.kept[p]).collect(),
        ..code.layout.clone()
    };
    let mut out = CssCode::new(format!("{}/reduced", code.name), hx, hz, layout)?;
    out.logical_x = code.logical_x.as_ref().map(|g| g.col_select(&plan.kept));
    out.logical_z = code.logical_z.as_ref().map(|g| g.col_select(&plan.kept));
    out.d_x = code.d_x;
    out.d_z = code.d_z;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightReport {
    pub w_q: usize,
    pub w_c: usize,
    pub w_q_reduced: usize,
    pub w_c_reduced: usize,
    pub n2q: usize,
    pub n2q_reduced: usize,
}

/// Degree maxima and gate counts; fails if `w̃_q > 2w_q` or `w̃_c > 2(w_c − 1)`.
pub fn weight_report(before: &CssCode, after: &CssCode) -> Result<WeightReport> {
    let (w_q, w_c) = before.degrees();
    let (w_q_reduced, w_c_reduced) = after.degrees();
    if w_q_reduced > 2 * w_q || w_c_reduced > 2 * w_c.saturating_sub(1) {
        return Err(Error::Invariant(format!(
            "weights ({w_q},{w_c}) → ({w_q_reduced},{w_c_reduced}) exceed the doubling bound"
        )));
    }
    Ok(WeightReport {
        w_q,
        w_c,
        w_q_reduced,
        w_c_reduced,
        n2q: count_two_qubit_gates(before),
        n2q_reduced: count_two_qubit_gates(after),
    })
}

/// Gate savings `Δ(4−Δ)(2v−1)²` of fully reducing the product of a cycle code
/// on a `Δ`-regular bipartite graph with `v` vertices per side.
pub fn cycle_savings_formula(v: i64, delta: i64) -> i64 {
    delta * (4 - delta) * (2 * v - 1) * (2 * v - 1)
}
