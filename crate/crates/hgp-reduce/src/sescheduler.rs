//! CNOT orderings for single-ancilla syndrome extraction and the hook errors
//! they produce.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::gf2::{BitMatrix, BitVec, Echelon};
use crate::hgp::{CssCode, QubitCoord};
use crate::reducer::{Pauli, ReductionPlan, RowOrigin};
use crate::{Error, Result};

/// One round is a set of `(check, qubit)` couplings.
pub type Round = Vec<(usize, usize)>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnotSchedule {
    pub x_rounds: Vec<Round>,
    pub z_rounds: Vec<Round>,
}

impl CnotSchedule {
    pub fn rounds(&self, kind: Pauli) -> &[Round] {
        match kind {
            Pauli::X => &self.x_rounds,
            Pauli::Z => &self.z_rounds,
        }
    }

    /// No check or qubit twice in a round; couplings cover the check matrix exactly.
    pub fn validate(&self, code: &CssCode) -> Result<()> {
        for kind in [Pauli::X, Pauli::Z] {
            let h = check_matrix(code, kind);
            let mut seen = BitMatrix::zeros(h.rows(), h.cols());
            for (t, round) in self.rounds(kind).iter().enumerate() {
                let mut checks = vec![false; h.rows()];
                let mut qubits = vec![false; h.cols()];
                for &(c, q) in round {
                    if c >= h.rows() || q >= h.cols() || !h.get(c, q) {
                        return Err(Error::Invariant(format!(
                            "{kind:?} round {t}: ({c},{q}) is not an edge"
                        )));
                    }
                    if std::mem::replace(&mut checks[c], true)
                        || std::mem::replace(&mut qubits[q], true)
                        || seen.get(c, q)
                    {
                        return Err(Error::Invariant(format!(
                            "{kind:?} round {t}: ({c},{q}) collides"
                        )));
                    }
                    seen.set(c, q, true);
                }
            }
            if seen != *h {
                return Err(Error::Invariant(format!("{kind:?} rounds miss some edges")));
            }
        }
        Ok(())
    }

    /// Qubits of `check` in coupling order.
    pub fn check_order(&self, kind: Pauli, check: usize) -> Vec<usize> {
        self.rounds(kind)
            .iter()
            .flat_map(|r| r.iter().filter(|e| e.0 == check).map(|e| e.1))
            .collect()
    }

    /// All per-check coupling orders.
    pub fn check_orders(&self, kind: Pauli, checks: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); checks];
        for round in self.rounds(kind) {
            for &(c, q) in round {
                out[c].push(q);
            }
        }
        out
    }
}

fn check_matrix(code: &CssCode, kind: Pauli) -> &BitMatrix {
    match kind {
        Pauli::X => &code.hx,
        Pauli::Z => &code.hz,
    }
}

/// Proper edge coloring of a bipartite graph with exactly `Δ` colors.
///
/// Edges are inserted in the given order; a conflict is resolved by swapping
/// the two colors along the alternating path from the qubit end.
pub fn bipartite_edge_coloring(
    n_checks: usize,
    n_qubits: usize,
    edges: &[(usize, usize)],
) -> Vec<usize> {
    let mut deg_c = vec![0usize; n_checks];
    let mut deg_q = vec![0usize; n_qubits];
    for &(c, q) in edges {
        deg_c[c] += 1;
        deg_q[q] += 1;
    }
    let delta = deg_c.iter().chain(&deg_q).copied().max().unwrap_or(0);
    const NONE: usize = usize::MAX;
    // at_c[c][k]: qubit joined to check c by color k
    let mut at_c = vec![vec![NONE; delta]; n_checks];
    let mut at_q = vec![vec![NONE; delta]; n_qubits];
    for &(c, q) in edges {
        let a = (0..delta).find(|&k| at_c[c][k] == NONE).expect("degree bound");
        if at_q[q][a] != NONE {
            let b = (0..delta).find(|&k| at_q[q][k] == NONE).expect("degree bound");
            // path q -a- c1 -b- q1 -a- ... never reaches c, which misses a
            let mut path = Vec::new();
            let mut on_qubit = true;
            let mut node = q;
            let mut color = a;
            loop {
                let next = if on_qubit { at_q[node][color] } else { at_c[node][color] };
                if next == NONE {
                    break;
                }
                path.push(if on_qubit { (next, node) } else { (node, next) });
                node = next;
                on_qubit = !on_qubit;
                color = if color == a { b } else { a };
            }
            let mut color = a;
            for &(pc, pq) in &path {
                at_c[pc][color] = NONE;
                at_q[pq][color] = NONE;
                color = if color == a { b } else { a };
            }
            let mut color = b;
            for &(pc, pq) in &path {
                at_c[pc][color] = pq;
                at_q[pq][color] = pc;
                color = if color == a { b } else { a };
            }
        }
        at_c[c][a] = q;
        at_q[q][a] = c;
    }
    let mut color_of: HashMap<(usize, usize), usize> = HashMap::new();
    for (c, row) in at_c.iter().enumerate() {
        for (k, &q) in row.iter().enumerate() {
            if q != NONE {
                color_of.insert((c, q), k);
            }
        }
    }
    edges.iter().map(|e| color_of[e]).collect()
}

fn rounds_from_coloring(edges: &[(usize, usize)], colors: &[usize], order: &[usize]) -> Vec<Round> {
    let k = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut rounds = vec![Vec::new(); k];
    for (e, &c) in edges.iter().zip(colors) {
        rounds[order[c]].push(*e);
    }
    for r in &mut rounds {
        r.sort_unstable();
    }
    rounds
}

fn edges_of(h: &BitMatrix) -> Vec<(usize, usize)> {
    (0..h.rows())
        .flat_map(|c| h.row_ones(c).into_iter().map(move |q| (c, q)))
        .collect()
}

fn random_rounds(h: &BitMatrix, rng: &mut ChaCha8Rng) -> Vec<Round> {
    let mut edges = edges_of(h);
    edges.shuffle(rng);
    let colors = bipartite_edge_coloring(h.rows(), h.cols(), &edges);
    let k = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut order: Vec<usize> = (0..k).collect();
    order.shuffle(rng);
    rounds_from_coloring(&edges, &colors, &order)
}

/// Random valid schedule: edges colored in a seeded random order, rounds in a
/// seeded random sequence.
pub fn random_schedule(code: &CssCode, seed: u64) -> CnotSchedule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x_rounds = random_rounds(&code.hx, &mut rng);
    let z_rounds = random_rounds(&code.hz, &mut rng);
    CnotSchedule { x_rounds, z_rounds }
}

/// Grid line a bit-type qubit is confined to: its column for X, its row for Z.
fn line_of(coord: QubitCoord, kind: Pauli) -> Option<usize> {
    match (coord, kind) {
        (QubitCoord::Bit { col, .. }, Pauli::X) => Some(col),
        (QubitCoord::Bit { row, .. }, Pauli::Z) => Some(row),
        (QubitCoord::Check { .. }, _) => None,
    }
}

/// Line of the bit-type support of an unreduced check.
fn check_line(code: &CssCode, kind: Pauli, check: usize) -> usize {
    match kind {
        Pauli::X => code.layout.x_check_coord(check).1,
        Pauli::Z => code.layout.z_check_coord(check).0,
    }
}

/// Phase of every coupling: 0 for the first line (and uncombined checks), 1
/// for check-type qubits, 2 for the second line.
pub fn split_phases(reduced: &CssCode, plan: &ReductionPlan, kind: Pauli) -> Result<Vec<Vec<(usize, u8)>>> {
    let h = check_matrix(reduced, kind);
    let origins = match kind {
        Pauli::X => &plan.x_rows,
        Pauli::Z => &plan.z_rows,
    };
    if origins.len() != h.rows() {
        return Err(Error::Shape("plan does not describe this code".into()));
    }
    let mut out = Vec::with_capacity(h.rows());
    for (r, origin) in origins.iter().enumerate() {
        let support = h.row_ones(r);
        let RowOrigin::Combined { .. } = origin else {
            out.push(support.into_iter().map(|q| (q, 0)).collect());
            continue;
        };
        let checks = plan.row_checks(kind, r);
        let first = check_line(reduced, kind, checks[0]);
        let second = check_line(reduced, kind, checks[1]);
        let mut row = Vec::with_capacity(support.len());
        for q in support {
            let phase = match line_of(reduced.layout.coord(q), kind) {
                None => 1,
                Some(l) if l == first => 0,
                Some(l) if l == second => 2,
                Some(l) => {
                    return Err(Error::Invariant(format!(
                        "combined {kind:?}-check {r} touches a third line {l}"
                    )))
                }
            };
            row.push((q, phase));
        }
        let n0 = row.iter().filter(|e| e.1 == 0).count();
        let n2 = row.iter().filter(|e| e.1 == 2).count();
        if n0 == 0 || n2 == 0 {
            return Err(Error::Invariant(format!(
                "combined {kind:?}-check {r} spans fewer than two lines"
            )));
        }
        out.push(row);
    }
    Ok(out)
}

fn split_rounds(reduced: &CssCode, plan: &ReductionPlan, kind: Pauli) -> Result<Vec<Round>> {
    let h = check_matrix(reduced, kind);
    let phases = split_phases(reduced, plan, kind)?;
    let mut rounds = Vec::new();
    for phase in 0..3u8 {
        let edges: Vec<(usize, usize)> = phases
            .iter()
            .enumerate()
            .flat_map(|(c, row)| row.iter().filter(|e| e.1 == phase).map(move |e| (c, e.0)))
            .collect();
        let colors = bipartite_edge_coloring(h.rows(), h.cols(), &edges);
        let k = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
        let order: Vec<usize> = (0..k).collect();
        rounds.extend(rounds_from_coloring(&edges, &colors, &order));
    }
    Ok(rounds)
}

/// X-checks couple the first bit-type column, then check-type qubits, then the
/// second column.
pub fn split_x_schedule(reduced: &CssCode, plan: &ReductionPlan) -> Result<Vec<Round>> {
    split_rounds(reduced, plan, Pauli::X)
}

/// Z-checks couple the first bit-type row, then check-type qubits, then the second row.
pub fn split_z_schedule(reduced: &CssCode, plan: &ReductionPlan) -> Result<Vec<Round>> {
    split_rounds(reduced, plan, Pauli::Z)
}

pub fn split_schedule(reduced: &CssCode, plan: &ReductionPlan) -> Result<CnotSchedule> {
    Ok(CnotSchedule {
        x_rounds: split_x_schedule(reduced, plan)?,
        z_rounds: split_z_schedule(reduced, plan)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HookFault {
    pub kind: Pauli,
    pub check: usize,
    /// Number of couplings completed before the ancilla fault.
    pub cut: usize,
    /// Data support after the cut.
    pub residual: Vec<usize>,
    /// Stabilizer-equivalent support after weight reduction.
    pub reduced: Vec<usize>,
    /// Bit-type columns (X) or rows (Z) touched by `reduced`.
    pub lines: usize,
}

fn count_lines(code: &CssCode, v: &BitVec, kind: Pauli) -> usize {
    let mut lines: Vec<usize> = v
        .iter_ones()
        .filter_map(|q| line_of(code.layout.coord(q), kind))
        .collect();
    lines.sort_unstable();
    lines.dedup();
    lines.len()
}

const LOCAL_SEARCH_GENERATORS: usize = 12;

/// Lowers the weight of `v` by adding same-type stabilizers, never increasing
/// its bit-type line count.
pub fn reduce_residual(code: &CssCode, kind: Pauli, v: &BitVec, own_check: Option<usize>) -> BitVec {
    let h = check_matrix(code, kind);
    let better = |cand: &BitVec, cur: &BitVec| {
        cand.weight() < cur.weight() && count_lines(code, cand, kind) <= count_lines(code, cur, kind)
    };
    let mut cur = v.clone();
    if let Some(c) = own_check {
        let alt = cur.xor(&h.row(c));
        if better(&alt, &cur) {
            cur = alt;
        }
    }
    let rows = h.row_vecs();
    loop {
        let step = rows.iter().map(|r| cur.xor(r)).find(|cand| better(cand, &cur));
        match step {
            Some(c) => cur = c,
            None => break,
        }
    }
    let overlapping: Vec<&BitVec> = rows
        .iter()
        .filter(|r| r.xor(&cur).weight() < r.weight() + cur.weight())
        .take(LOCAL_SEARCH_GENERATORS)
        .collect();
    let mut best = cur.clone();
    for mask in 1u32..(1u32 << overlapping.len()) {
        let mut cand = cur.clone();
        for (i, r) in overlapping.iter().enumerate() {
            if mask >> i & 1 == 1 {
                cand.xor_assign(r);
            }
        }
        if better(&cand, &best) {
            best = cand;
        }
    }
    best
}

/// Residual data error of every ancilla fault position on every check.
pub fn enumerate_hooks(code: &CssCode, schedule: &CnotSchedule, kind: Pauli) -> Vec<HookFault> {
    let h = check_matrix(code, kind);
    let n = code.n();
    let orders = schedule.check_orders(kind, h.rows());
    let mut out = Vec::new();
    for (c, order) in orders.iter().enumerate() {
        for cut in 0..=order.len() {
            let residual: Vec<usize> = order[cut..].to_vec();
            let v = BitVec::from_indices(n, &residual);
            let red = reduce_residual(code, kind, &v, Some(c));
            out.push(HookFault {
                kind,
                check: c,
                cut,
                residual,
                reduced: red.ones(),
                lines: count_lines(code, &red, kind),
            });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProbeResult {
    /// No combination of at most `cap` faults is a nontrivial logical.
    NoViolation { cap: usize, faults: usize },
    /// Fault labels (hooks first, then single data errors) and the logical they form.
    Counterexample { faults: Vec<usize>, support: Vec<usize> },
}

/// Searches for at most `cap ≤ 3` faults, each a reduced hook or a single-qubit
/// data error, combining to a logical of type `kind`.
pub fn effective_distance_probe(
    code: &CssCode,
    schedule: &CnotSchedule,
    kind: Pauli,
    cap: usize,
) -> Result<ProbeResult> {
    if cap > 3 {
        return Err(Error::Budget(format!("probe supports cap ≤ 3, got {cap}")));
    }
    let n = code.n();
    let (checks, stabs) = match kind {
        Pauli::X => (&code.hz, &code.hx),
        Pauli::Z => (&code.hx, &code.hz),
    };
    let mut faults: Vec<BitVec> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for hf in enumerate_hooks(code, schedule, kind) {
        if hf.reduced.len() > 1 && seen.insert(hf.reduced.clone()) {
            faults.push(BitVec::from_indices(n, &hf.reduced));
        }
    }
    faults.extend((0..n).map(|q| BitVec::from_indices(n, &[q])));
    let total = faults.len();
    if cap == 0 {
        return Ok(ProbeResult::NoViolation { cap, faults: total });
    }
    let echelon = Echelon::new(stabs);
    let syndromes: Vec<BitVec> = faults.iter().map(|f| checks.mul_vec(f)).collect::<Result<_>>()?;
    let logical = |ids: &[usize]| -> Option<ProbeResult> {
        let mut v = BitVec::zeros(n);
        for &i in ids {
            v.xor_assign(&faults[i]);
        }
        (!v.is_zero() && !echelon.contains(&v)).then(|| ProbeResult::Counterexample {
            faults: ids.to_vec(),
            support: v.ones(),
        })
    };
    for i in 0..total {
        if syndromes[i].is_zero() {
            if let Some(r) = logical(&[i]) {
                return Ok(r);
            }
        }
    }
    if cap == 1 {
        return Ok(ProbeResult::NoViolation { cap, faults: total });
    }
    let mut by_syndrome: HashMap<&[u64], Vec<usize>> = HashMap::new();
    for (i, s) in syndromes.iter().enumerate() {
        by_syndrome.entry(s.words()).or_default().push(i);
    }
    for i in 0..total {
        for &j in &by_syndrome[syndromes[i].words()] {
            if j > i {
                if let Some(r) = logical(&[i, j]) {
                    return Ok(r);
                }
            }
        }
    }
    if cap == 2 {
        return Ok(ProbeResult::NoViolation { cap, faults: total });
    }
    for i in 0..total {
        for j in i + 1..total {
            let s = syndromes[i].xor(&syndromes[j]);
            let Some(list) = by_syndrome.get(s.words()) else {
                continue;
            };
            for &l in list {
                if l > j {
                    if let Some(r) = logical(&[i, j, l]) {
                        return Ok(r);
                    }
                }
            }
        }
    }
    Ok(ProbeResult::NoViolation { cap, faults: total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::coloring::{color_code, product_coloring};
    use crate::hgp::prepare_hgp;
    use crate::planner::choose_schedule;
    use crate::reducer::{apply_reduction, build_reduction};

    fn reduced_k33() -> (CssCode, ReductionPlan) {
        let c = catalog::k33_code();
        let code = prepare_hgp(&c, &c).unwrap();
        let col = color_code(&c, 0);
        let pc = product_coloring(&col, &col, &code).unwrap();
        let plan = build_reduction(&code, &pc, &choose_schedule(&pc)).unwrap();
        (apply_reduction(&code, &plan).unwrap(), plan)
    }

    #[test]
    fn edge_coloring_uses_max_degree_colors() {
        let h = catalog::heawood_code().h;
        let edges = edges_of(&h);
        let colors = bipartite_edge_coloring(h.rows(), h.cols(), &edges);
        assert_eq!(colors.iter().max(), Some(&2));
        let mut used = std::collections::HashSet::new();
        for (&(c, q), &k) in edges.iter().zip(&colors) {
            assert!(used.insert((0, c, k)) && used.insert((1, q, k)));
        }
    }

    #[test]
    fn random_schedule_is_valid_and_seeded() {
        let c = catalog::heawood_code();
        let code = prepare_hgp(&c, &c).unwrap();
        let s = random_schedule(&code, 7);
        s.validate(&code).unwrap();
        assert!(s.x_rounds.len() <= 9);
        assert_eq!(s, random_schedule(&code, 7));
        assert_ne!(s, random_schedule(&code, 8));
    }

    #[test]
    fn star_check_gets_one_round_per_coupling() {
        let code = prepare_hgp(&catalog::repetition(3), &catalog::repetition(3)).unwrap();
        let s = random_schedule(&code, 1);
        for c in 0..code.hx.rows() {
            assert_eq!(s.check_order(Pauli::X, c).len(), code.hx.row_weight(c));
        }
    }

    #[test]
    fn split_partition_and_balance() {
        let (red, plan) = reduced_k33();
        let s = split_schedule(&red, &plan).unwrap();
        s.validate(&red).unwrap();
        for kind in [Pauli::X, Pauli::Z] {
            let phases = split_phases(&red, &plan, kind).unwrap();
            let mut combined = 0;
            for row in &phases {
                let n0 = row.iter().filter(|e| e.1 == 0).count();
                let n2 = row.iter().filter(|e| e.1 == 2).count();
                if n2 > 0 {
                    combined += 1;
                    assert_eq!(n0, n2);
                }
            }
            assert!(combined > 0);
        }
    }

    #[test]
    fn hooks_at_the_ends() {
        let (red, plan) = reduced_k33();
        let s = split_schedule(&red, &plan).unwrap();
        let hooks = enumerate_hooks(&red, &s, Pauli::X);
        for h in &hooks {
            let w = red.hx.row_weight(h.check);
            if h.cut == 0 || h.cut == w {
                assert!(h.reduced.is_empty());
            }
        }
        assert!(hooks.iter().all(|h| h.lines <= 1));
    }

    #[test]
    fn weight_four_midpoint_hook() {
        let code = prepare_hgp(&catalog::repetition(3), &catalog::repetition(3)).unwrap();
        let s = random_schedule(&code, 3);
        let hooks = enumerate_hooks(&code, &s, Pauli::X);
        let c = (0..code.hx.rows()).find(|&c| code.hx.row_weight(c) == 4).unwrap();
        let mid = hooks.iter().find(|h| h.check == c && h.cut == 2).unwrap();
        assert_eq!(mid.residual.len(), 2);
    }

    #[test]
    fn probe_trivial_cap() {
        let (red, plan) = reduced_k33();
        let s = split_schedule(&red, &plan).unwrap();
        assert!(matches!(
            effective_distance_probe(&red, &s, Pauli::X, 0).unwrap(),
            ProbeResult::NoViolation { cap: 0, .. }
        ));
    }
}
