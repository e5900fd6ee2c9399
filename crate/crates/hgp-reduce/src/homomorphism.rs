//! Augmented and punctured input codes and the chain maps between the
//! modified product and the original.
//!
//! A map runs from the modified code `Q'` (source) to the original `Q`
//! (target), acting on column vectors:
//!
//! ```text
//! S'_X --Hx'ᵀ--> Q' --Hz'--> S'_Z
//!  |γx           |γq          |γz
//! S_X  --Hxᵀ---> Q  --Hz---> S_Z
//! ```
//!
//! with `γq·Hx'ᵀ = Hxᵀ·γx` and `γz·Hz' = Hz·γq`. Only the second input code is
//! modified.

use serde::{Deserialize, Serialize};

use crate::codes::{canonical_generator, ClassicalCode};
use crate::coloring::{check_adjacency_graph, CheckColoring};
use crate::gf2::{BitMatrix, Echelon};
use crate::hgp::{CssCode, QubitCoord};
use crate::{Error, Result};

/// Adds `new_checks` to `c`. Rows must be supported on informational bits.
pub fn augment(c: &ClassicalCode, new_checks: &BitMatrix) -> Result<ClassicalCode> {
    if new_checks.cols() != c.n() {
        return Err(Error::Shape(format!(
            "new checks have {} columns, code has {}",
            new_checks.cols(),
            c.n()
        )));
    }
    if new_checks.rows() == 0 {
        return Ok(c.clone());
    }
    let g = canonical_generator(c)?;
    for r in 0..new_checks.rows() {
        if let Some(b) = new_checks.row_ones(r).into_iter().find(|b| !g.info_bits.contains(b)) {
            return Err(Error::InvalidInput(format!(
                "new check {r} touches non-informational bit {b}"
            )));
        }
    }
    Ok(ClassicalCode::new(
        format!("{}+aug", c.name),
        c.h.vstack(new_checks)?,
    ))
}

/// Deletes informational bits of `c`.
pub fn puncture(c: &ClassicalCode, bits: &[usize]) -> Result<ClassicalCode> {
    if bits.is_empty() {
        return Ok(c.clone());
    }
    let g = canonical_generator(c)?;
    if let Some(b) = bits.iter().find(|b| !g.info_bits.contains(b)) {
        return Err(Error::InvalidInput(format!("bit {b} is not informational")));
    }
    let keep: Vec<usize> = (0..c.n()).filter(|b| !bits.contains(b)).collect();
    Ok(ClassicalCode::new(
        format!("{}-punc", c.name),
        c.h.col_select(&keep),
    ))
}

/// Coloring of the original checks taken from a coloring of the augmented code.
pub fn restrict_coloring(aug: &CheckColoring, m: usize) -> CheckColoring {
    CheckColoring {
        color_of: aug.color_of[..m].to_vec(),
        num_colors: aug.num_colors,
    }
}

/// The augmented check-adjacency graph, restricted to the original checks,
/// equals the original graph.
pub fn augmentation_keeps_adjacency(c: &ClassicalCode, aug: &ClassicalCode) -> bool {
    let m = c.m();
    let mut restricted: Vec<(usize, usize)> = check_adjacency_graph(aug)
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| a < m && b < m)
        .collect();
    restricted.sort_unstable();
    let mut orig = check_adjacency_graph(c).edges().to_vec();
    orig.sort_unstable();
    restricted == orig
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainMap {
    /// `|S_X| × |S'_X|`.
    pub gamma_x: BitMatrix,
    /// `|Q| × |Q'|`.
    pub gamma_q: BitMatrix,
    /// `|S_Z| × |S'_Z|`.
    pub gamma_z: BitMatrix,
    pub source: CssCode,
    pub target: CssCode,
}

/// `(γq·Hx'ᵀ + Hxᵀ·γx, γz·Hz' + Hz·γq)`; both vanish for a chain map.
pub fn square_defects(map: &ChainMap) -> Result<(BitMatrix, BitMatrix)> {
    let (s, t) = (&map.source, &map.target);
    let a = map
        .gamma_q
        .matmul(&s.hx.transpose())?
        .add(&t.hx.transpose().matmul(&map.gamma_x)?)?;
    let b = map.gamma_z.matmul(&s.hz)?.add(&t.hz.matmul(&map.gamma_q)?)?;
    Ok((a, b))
}

pub fn verify_chain_map(map: &ChainMap) -> bool {
    matches!(square_defects(map), Ok((a, b)) if a.is_zero() && b.is_zero())
}

/// Qubit map sending each source qubit to the target qubit at the translated coordinate.
fn coordinate_map(
    source: &CssCode,
    target: &CssCode,
    translate: impl Fn(QubitCoord) -> Option<QubitCoord>,
) -> BitMatrix {
    let tl = &target.layout;
    let mut g = BitMatrix::zeros(target.n(), source.n());
    for q in 0..source.n() {
        let Some(coord) = translate(source.layout.coord(q)) else {
            continue;
        };
        let in_grid = match coord {
            QubitCoord::Bit { row, col } => row < tl.n1 && col < tl.n2,
            QubitCoord::Check { row, col } => row < tl.m1 && col < tl.m2,
        };
        if let Some(p) = in_grid.then(|| tl.position_of(coord)).flatten() {
            g.set(p, q, true);
        }
    }
    g
}

/// Completes `γq` to a chain map by solving both squares for `γx` and `γz`.
pub fn solve_chain_map(source: &CssCode, target: &CssCode, gamma_q: BitMatrix) -> Result<ChainMap> {
    if gamma_q.shape() != (target.n(), source.n()) {
        return Err(Error::Shape("qubit map has the wrong shape".into()));
    }
    // column s of γx: coefficients of γq·(row s of Hx') over the rows of Hx
    let ex = Echelon::new(&target.hx);
    let mut gamma_x = BitMatrix::zeros(target.hx.rows(), source.hx.rows());
    for s in 0..source.hx.rows() {
        let image = gamma_q.mul_vec(&source.hx.row(s))?;
        let coeffs = ex.solve(&image).ok_or_else(|| {
            Error::Invariant(format!("image of X-check {s} is not a sum of target X-checks"))
        })?;
        for r in coeffs.iter_ones() {
            gamma_x.set(r, s, true);
        }
    }
    // row t of γz: coefficients of (row t of Hz)·γq over the rows of Hz'
    let ez = Echelon::new(&source.hz);
    let mut gamma_z = BitMatrix::zeros(target.hz.rows(), source.hz.rows());
    for t in 0..target.hz.rows() {
        let pulled = gamma_q.vec_mul(&target.hz.row(t))?;
        let coeffs = ez.solve(&pulled).ok_or_else(|| {
            Error::Invariant(format!("pullback of Z-check {t} is not a sum of source Z-checks"))
        })?;
        for r in coeffs.iter_ones() {
            gamma_z.set(t, r, true);
        }
    }
    let map = ChainMap {
        gamma_x,
        gamma_q,
        gamma_z,
        source: source.clone(),
        target: target.clone(),
    };
    if !verify_chain_map(&map) {
        return Err(Error::Invariant("solved maps do not commute".into()));
    }
    Ok(map)
}

/// Map from the product with an augmented second code onto the original
/// product; qubits on the new checks are dropped. Works on reduced codes built
/// with the same schedule.
pub fn build_aug_chain_map(original: &CssCode, augmented: &CssCode) -> Result<ChainMap> {
    let (lo, la) = (&original.layout, &augmented.layout);
    if (lo.n1, lo.n2, lo.m1) != (la.n1, la.n2, la.m1) || la.m2 < lo.m2 {
        return Err(Error::Shape("codes are not an augmentation pair".into()));
    }
    let gamma_q = coordinate_map(augmented, original, Some);
    solve_chain_map(augmented, original, gamma_q)
}

/// Map from the product with punctured second code into the original product.
/// `bits` are the deleted columns of the original second code.
pub fn build_punc_chain_map(original: &CssCode, punctured: &CssCode, bits: &[usize]) -> Result<ChainMap> {
    let (lo, lp) = (&original.layout, &punctured.layout);
    if (lo.n1, lo.m1, lo.m2) != (lp.n1, lp.m1, lp.m2) || lp.n2 + bits.len() != lo.n2 {
        return Err(Error::Shape("codes are not a puncturing pair".into()));
    }
    let cols: Vec<usize> = (0..lo.n2).filter(|j| !bits.contains(j)).collect();
    let gamma_q = coordinate_map(punctured, original, |c| match c {
        QubitCoord::Bit { row, col } => Some(QubitCoord::Bit { row, col: cols[col] }),
        other => Some(other),
    });
    solve_chain_map(punctured, original, gamma_q)
}

/// `V' = Γᵀ·V·Γ̃` for the selections `V`, `V'` and the unreduced and reduced
/// qubit maps `Γ`, `Γ̃`.
pub fn selection_relation_holds(
    v: &BitMatrix,
    v_mod: &BitMatrix,
    gamma: &BitMatrix,
    gamma_reduced: &BitMatrix,
) -> Result<bool> {
    let rhs = gamma.transpose().matmul(v)?.matmul(gamma_reduced)?;
    Ok(rhs == *v_mod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::hgp::prepare_hgp;

    #[test]
    fn augmentation_fuses_two_logicals() {
        let (_, b) = catalog::tripled_pair();
        let g = canonical_generator(&b).unwrap();
        let new = BitMatrix::from_supports(1, b.n(), &[g.info_bits[..2].to_vec()]).unwrap();
        let aug = augment(&b, &new).unwrap();
        assert_eq!((b.k(), aug.k()), (3, 2));
        assert!(aug.is_full_rank());
        assert!(augmentation_keeps_adjacency(&b, &aug));
    }

    #[test]
    fn augmentation_outside_information_set_rejected() {
        let b = catalog::repetition(3);
        let g = canonical_generator(&b).unwrap();
        let bad = (0..3).find(|x| !g.info_bits.contains(x)).unwrap();
        let row = BitMatrix::from_supports(1, 3, &[vec![bad]]).unwrap();
        assert!(matches!(augment(&b, &row), Err(Error::InvalidInput(_))));
        assert_eq!(augment(&b, &BitMatrix::zeros(0, 3)).unwrap(), b);
    }

    #[test]
    fn puncturing_keeps_rank() {
        let (_, b) = catalog::tripled_pair();
        let g = canonical_generator(&b).unwrap();
        let p = puncture(&b, &g.info_bits[..1]).unwrap();
        assert_eq!(p.n(), b.n() - 1);
        assert_eq!(p.rank(), b.rank());
        assert_eq!(p.k(), b.k() - 1);
        let non_info = (0..b.n()).find(|x| !g.info_bits.contains(x)).unwrap();
        assert!(puncture(&b, &[non_info]).is_err());
        assert_eq!(puncture(&b, &[]).unwrap(), b);
    }

    #[test]
    fn identity_map_on_same_code() {
        let c = catalog::repetition(3);
        let code = prepare_hgp(&c, &c).unwrap();
        let map = build_aug_chain_map(&code, &code).unwrap();
        assert_eq!(map.gamma_x, BitMatrix::identity(code.hx.rows()));
        assert_eq!(map.gamma_q, BitMatrix::identity(code.n()));
        assert_eq!(map.gamma_z, BitMatrix::identity(code.hz.rows()));
    }

    #[test]
    fn perturbed_map_fails() {
        let c = catalog::repetition(3);
        let code = prepare_hgp(&c, &c).unwrap();
        let mut map = build_aug_chain_map(&code, &code).unwrap();
        assert!(verify_chain_map(&map));
        map.gamma_q.flip(0, 1);
        assert!(!verify_chain_map(&map));
    }

    #[test]
    fn unreduced_puncture_maps_are_inclusions() {
        let (a, b) = catalog::small_pair();
        let g = canonical_generator(&b).unwrap();
        let bits = vec![g.info_bits[0]];
        let p = puncture(&b, &bits).unwrap();
        let q = crate::hgp::build_hgp(&a, &b).unwrap();
        let qp = crate::hgp::build_hgp(&a, &p).unwrap();
        let map = build_punc_chain_map(&q, &qp, &bits).unwrap();
        assert!(map.gamma_q.col_weights().iter().all(|&w| w == 1));
        assert_eq!(map.gamma_z, BitMatrix::identity(q.hz.rows()));
        assert!(map.gamma_x.col_weights().iter().all(|&w| w == 1));
    }
}
