//! Independent checks of the properties a reduction must preserve.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gf2::{BitMatrix, BitVec, Echelon};
use crate::hgp::{sector_weights, CssCode, QubitCoord};
use crate::planner::Permutation;
use crate::reducer::Pauli;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CssReport {
    pub pass: bool,
    /// `(x_row, z_row)` pairs with odd overlap.
    pub violations: Vec<(usize, usize)>,
}

pub fn verify_css(code: &CssCode) -> CssReport {
    let mut violations = Vec::new();
    for r in 0..code.hx.rows() {
        let x = code.hx.row(r);
        for s in 0..code.hz.rows() {
            if x.dot(&code.hz.row(s)) {
                violations.push((r, s));
            }
        }
    }
    CssReport {
        pass: violations.is_empty(),
        violations,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KReport {
    pub k_before: usize,
    pub k_after: usize,
    /// Reduced checks are linearly independent on both sides.
    pub full_rank_after: bool,
    pub pass: bool,
}

pub fn verify_k(before: &CssCode, after: &CssCode) -> KReport {
    let k_before = before.k();
    let k_after = after.k();
    KReport {
        k_before,
        k_after,
        full_rank_after: after.hx.is_full_row_rank() && after.hz.is_full_row_rank(),
        pass: k_before == k_after,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalBasisReport {
    pub k: usize,
    /// Every X (Z) logical row lies in `ker hz` (`ker hx`).
    pub in_kernel: bool,
    /// No logical row lies in the same-type stabilizer row space.
    pub outside_rowspace: bool,
    /// `L_X · L_Zᵀ = I_k`.
    pub pairing_identity: bool,
    pub pass: bool,
}

pub fn verify_logical_basis(code: &CssCode) -> Result<LogicalBasisReport> {
    let (Some(lx), Some(lz)) = (&code.logical_x, &code.logical_z) else {
        return Err(Error::InvalidInput(format!("{} carries no logical basis", code.name)));
    };
    if lx.cols() != code.n() || lz.cols() != code.n() {
        return Err(Error::Shape("logical basis does not match the qubit count".into()));
    }
    let k = code.k();
    let in_kernel = code.hz.matmul(&lx.transpose())?.is_zero()
        && code.hx.matmul(&lz.transpose())?.is_zero();
    let ex = Echelon::new(&code.hx);
    let ez = Echelon::new(&code.hz);
    let outside_rowspace = lx.row_vecs().iter().all(|r| !ex.contains(r))
        && lz.row_vecs().iter().all(|r| !ez.contains(r));
    let pairing_identity =
        lx.rows() == k && lz.rows() == k && lx.matmul(&lz.transpose())? == BitMatrix::identity(k);
    Ok(LogicalBasisReport {
        k,
        in_kernel,
        outside_rowspace,
        pairing_identity,
        pass: in_kernel && outside_rowspace && pairing_identity,
    })
}

/// Reduced rows restricted to bit-type qubits lie in the unreduced row space
/// restricted the same way.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentReport {
    pub x_pass: bool,
    pub z_pass: bool,
}

pub fn verify_rowspace_containment(before: &CssCode, after: &CssCode) -> Result<ContainmentReport> {
    let lb = &before.layout;
    let la = &after.layout;
    if (lb.n1, lb.n2, lb.m1, lb.m2) != (la.n1, la.n2, la.m1, la.m2) {
        return Err(Error::Shape("codes come from different products".into()));
    }
    let block = lb.bit_block();
    let restrict = |code: &CssCode, h: &BitMatrix| -> BitMatrix {
        let mut out = BitMatrix::zeros(h.rows(), block);
        for r in 0..h.rows() {
            for q in h.row_ones(r) {
                let orig = code.layout.kept[q];
                if orig < block {
                    out.set(r, orig, true);
                }
            }
        }
        out
    };
    let contained = |hb: &BitMatrix, ha: &BitMatrix| {
        let e = Echelon::new(&restrict(before, hb));
        let a = restrict(after, ha);
        a.row_vecs().iter().all(|r| e.contains(r))
    };
    Ok(ContainmentReport {
        x_pass: contained(&before.hx, &after.hx),
        z_pass: contained(&before.hz, &after.hz),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DistanceStatus {
    /// A logical of the upper-bound weight exists and none is lighter.
    Confirmed(usize),
    /// No logical up to the searched weight; the upper bound is larger.
    NoLogicalBelow { searched: usize, upper: usize },
    /// A logical lighter than the claimed distance.
    Counterexample(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub side: Pauli,
    pub d_claim: usize,
    pub requested_cap: usize,
    /// Largest weight actually searched.
    pub searched: usize,
    /// The size guard lowered the cap.
    pub partial: bool,
    /// Lightest canonical logical row.
    pub upper: usize,
    pub status: DistanceStatus,
}

impl DistanceReport {
    /// The claim stands: no lighter logical, and confirmed when the search was complete.
    pub fn pass(&self) -> bool {
        match self.status {
            DistanceStatus::Confirmed(d) => d == self.d_claim,
            DistanceStatus::NoLogicalBelow { .. } => self.upper >= self.d_claim,
            DistanceStatus::Counterexample(_) => false,
        }
    }
}

/// Largest search weight allowed for `n` qubits.
pub fn cap_limit(n: usize) -> usize {
    match n {
        0..=120 => 5,
        121..=700 => 3,
        _ => 2,
    }
}

/// Exhaustive search for a lightest vector in `ker checks ∖ rowspace stabs`
/// of weight at most `cap`.
pub fn lightest_logical(checks: &BitMatrix, stabs: &BitMatrix, cap: usize) -> Option<BitVec> {
    let n = checks.cols();
    let cols: Vec<BitVec> = checks.transpose().row_vecs();
    let mut by_syndrome: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
    for (q, c) in cols.iter().enumerate() {
        by_syndrome.entry(c.words().to_vec()).or_default().push(q);
    }
    let echelon = Echelon::new(stabs);
    let zero = BitVec::zeros(checks.rows());
    for w in 1..=cap.min(n) {
        let found = if w == 1 {
            finish(&[], &zero, &by_syndrome, &echelon, n)
        } else {
            (0..n).into_par_iter().find_map_first(|first| {
                let mut prefix = vec![first];
                extend(&mut prefix, cols[first].clone(), w - 1, &cols, &by_syndrome, &echelon, n)
            })
        };
        if found.is_some() {
            return found;
        }
    }
    None
}

fn extend(
    prefix: &mut Vec<usize>,
    syndrome: BitVec,
    len: usize,
    cols: &[BitVec],
    by_syndrome: &HashMap<Vec<u64>, Vec<usize>>,
    echelon: &Echelon,
    n: usize,
) -> Option<BitVec> {
    if prefix.len() == len {
        return finish(prefix, &syndrome, by_syndrome, echelon, n);
    }
    let start = prefix.last().map_or(0, |&l| l + 1);
    for q in start..n {
        prefix.push(q);
        let found = extend(prefix, syndrome.xor(&cols[q]), len, cols, by_syndrome, echelon, n);
        prefix.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

fn finish(
    prefix: &[usize],
    syndrome: &BitVec,
    by_syndrome: &HashMap<Vec<u64>, Vec<usize>>,
    echelon: &Echelon,
    n: usize,
) -> Option<BitVec> {
    let after = prefix.last().map_or(0, |&l| l + 1);
    for &q in by_syndrome.get(syndrome.words())? {
        if q < after {
            continue;
        }
        let mut ones = prefix.to_vec();
        ones.push(q);
        let v = BitVec::from_indices(n, &ones);
        if !echelon.contains(&v) {
            return Some(v);
        }
    }
    None
}

/// Distance check of one side. X logicals live in `ker hz ∖ rowspace hx`.
///
/// The cap is clamped to [`cap_limit`]; a clamped run is reported as partial.
pub fn certify_distance(code: &CssCode, side: Pauli, d_claim: usize, cap: usize) -> Result<DistanceReport> {
    let (checks, stabs, logicals) = match side {
        Pauli::X => (&code.hz, &code.hx, &code.logical_x),
        Pauli::Z => (&code.hx, &code.hz, &code.logical_z),
    };
    let logicals = logicals
        .as_ref()
        .ok_or_else(|| Error::InvalidInput(format!("{} carries no logical basis", code.name)))?;
    let upper = logicals
        .row_weights()
        .into_iter()
        .min()
        .ok_or_else(|| Error::Undefined("code has k = 0".into()))?;
    let searched = cap.min(cap_limit(code.n()));
    let status = match lightest_logical(checks, stabs, searched) {
        Some(v) if v.weight() < d_claim => DistanceStatus::Counterexample(v.ones()),
        Some(v) => DistanceStatus::Confirmed(v.weight()),
        None if searched + 1 >= upper => DistanceStatus::Confirmed(upper),
        None => DistanceStatus::NoLogicalBelow { searched, upper },
    };
    Ok(DistanceReport {
        side,
        d_claim,
        requested_cap: cap,
        searched,
        partial: searched < cap,
        upper,
        status,
    })
}

/// Transposition of the qubit grid, `(r, c) ↦ (c, r)` in both sectors, on the
/// qubits present in `code`.
pub fn diagonal_mirror(code: &CssCode) -> Result<Permutation> {
    let l = &code.layout;
    if l.n1 != l.n2 || l.m1 != l.m2 {
        return Err(Error::InvalidInput("the grid is not square".into()));
    }
    (0..code.n())
        .map(|q| {
            let image = match l.coord(q) {
                QubitCoord::Bit { row, col } => QubitCoord::Bit { row: col, col: row },
                QubitCoord::Check { row, col } => QubitCoord::Check { row: col, col: row },
            };
            l.position_of(image).ok_or_else(|| {
                Error::Invariant(format!("mirror image of qubit {q} was removed"))
            })
        })
        .collect()
}

/// True iff the X-check supports, mapped through `mirror`, are exactly the Z-check supports.
pub fn verify_zx_fold(code: &CssCode, mirror: &Permutation) -> bool {
    if mirror.len() != code.n() || mirror.iter().any(|&p| p >= code.n()) {
        return false;
    }
    let mapped: BTreeSet<Vec<usize>> = code
        .hx
        .supports()
        .into_iter()
        .map(|s| {
            let mut t: Vec<usize> = s.iter().map(|&q| mirror[q]).collect();
            t.sort_unstable();
            t
        })
        .collect();
    let z: BTreeSet<Vec<usize>> = code.hz.supports().into_iter().collect();
    mapped.len() == code.hx.rows() && mapped == z
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorBoundReport {
    pub side: Pauli,
    pub bound: usize,
    pub samples: usize,
    /// Smallest bit-type column (X) or row (Z) count seen.
    pub min_lines: usize,
    /// Smallest weight seen.
    pub min_weight: usize,
    pub pass: bool,
}

/// Each logical row and `deformations` random stabilizer-deformed copies must
/// touch at least `bound` bit-type columns (X) or rows (Z).
pub fn verify_sector_bounds(
    code: &CssCode,
    side: Pauli,
    logical_rows: &BitMatrix,
    bound: usize,
    deformations: usize,
    seed: u64,
) -> Result<SectorBoundReport> {
    let stabs = match side {
        Pauli::X => &code.hx,
        Pauli::Z => &code.hz,
    };
    if logical_rows.cols() != code.n() {
        return Err(Error::Shape("logical rows do not match the qubit count".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_lines = usize::MAX;
    let mut min_weight = usize::MAX;
    let mut samples = 0;
    for r in 0..logical_rows.rows() {
        let base = logical_rows.row(r);
        for t in 0..=deformations {
            let mut v = base.clone();
            if t > 0 {
                for s in 0..stabs.rows() {
                    if rng.gen::<bool>() {
                        v.xor_assign(&stabs.row(s));
                    }
                }
            }
            let sw = sector_weights(code, &v)?;
            let lines = match side {
                Pauli::X => sw.bit_cols,
                Pauli::Z => sw.bit_rows,
            };
            min_lines = min_lines.min(lines);
            min_weight = min_weight.min(v.weight());
            samples += 1;
        }
    }
    Ok(SectorBoundReport {
        side,
        bound,
        samples,
        min_lines,
        min_weight,
        pass: samples == 0 || min_lines >= bound,
    })
}

/// Everything checkable on a `(before, after)` pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub css_before: CssReport,
    pub css_after: CssReport,
    pub k: KReport,
    pub logical_basis: LogicalBasisReport,
    pub containment: ContainmentReport,
    pub sector_x: Option<SectorBoundReport>,
    pub sector_z: Option<SectorBoundReport>,
    pub distance_x: Option<DistanceReport>,
    pub distance_z: Option<DistanceReport>,
    pub pass: bool,
}

pub fn verify_all(before: &CssCode, after: &CssCode, seed: u64) -> Result<VerificationReport> {
    let css_before = verify_css(before);
    let css_after = verify_css(after);
    let k = verify_k(before, after);
    let logical_basis = verify_logical_basis(after)?;
    let containment = verify_rowspace_containment(before, after)?;
    let mut sector_x = None;
    let mut sector_z = None;
    let mut distance_x = None;
    let mut distance_z = None;
    if let (Some(dx), Some(lx)) = (after.d_x, &after.logical_x) {
        let d = dx.value();
        sector_x = Some(verify_sector_bounds(after, Pauli::X, lx, d, 200, seed)?);
        distance_x = Some(certify_distance(after, Pauli::X, d, d.saturating_sub(1))?);
    }
    if let (Some(dz), Some(lz)) = (after.d_z, &after.logical_z) {
        let d = dz.value();
        sector_z = Some(verify_sector_bounds(after, Pauli::Z, lz, d, 200, seed ^ 1)?);
        distance_z = Some(certify_distance(after, Pauli::Z, d, d.saturating_sub(1))?);
    }
    let pass = css_before.pass
        && css_after.pass
        && k.pass
        && logical_basis.pass
        && containment.x_pass
        && containment.z_pass
        && sector_x.as_ref().map_or(true, |r| r.pass)
        && sector_z.as_ref().map_or(true, |r| r.pass)
        && distance_x.as_ref().map_or(true, |r| r.pass())
        && distance_z.as_ref().map_or(true, |r| r.pass());
    Ok(VerificationReport {
        css_before,
        css_after,
        k,
        logical_basis,
        containment,
        sector_x,
        sector_z,
        distance_x,
        distance_z,
        pass,
    })
}
