//! Hypergraph products with 2D qubit layout and canonical logical bases.
//!
//! For inputs `H1` (m1×n1) and `H2` (m2×n2):
//!
//! ```text
//! HX = ( H1 ⊗ I_n2 | I_m1 ⊗ H2ᵀ )     X-check (a, j) is row a·n2 + j
//! HZ = ( I_n1 ⊗ H2 | H1ᵀ ⊗ I_m2 )     Z-check (i, b) is row i·m2 + b
//! ```
//!
//! Bit-type qubit `(i, j)` sits at `i·n2 + j` and check-type qubit `(a, b)` at
//! `n1·n2 + a·m2 + b`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::codes::{canonical_generator, min_distance, ClassicalCode, Distance};
use crate::gf2::{BitMatrix, BitVec};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QubitCoord {
    /// Bit-type qubit on grid row `row ∈ B1`, column `col ∈ B2`.
    Bit { row: usize, col: usize },
    /// Check-type qubit on grid row `row ∈ C1`, column `col ∈ C2`.
    Check { row: usize, col: usize },
}

impl QubitCoord {
    pub fn is_bit_type(self) -> bool {
        matches!(self, QubitCoord::Bit { .. })
    }

    pub fn row(self) -> usize {
        match self {
            QubitCoord::Bit { row, .. } | QubitCoord::Check { row, .. } => row,
        }
    }

    pub fn col(self) -> usize {
        match self {
            QubitCoord::Bit { col, .. } | QubitCoord::Check { col, .. } => col,
        }
    }
}

/// Grid metadata of an HGP code, possibly after some qubits were removed.
///
/// `kept[q]` is the index that qubit `q` had in the unreduced product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitLayout {
    pub n1: usize,
    pub n2: usize,
    pub m1: usize,
    pub m2: usize,
    pub kept: Vec<usize>,
}

impl QubitLayout {
    pub fn full(n1: usize, n2: usize, m1: usize, m2: usize) -> Self {
        QubitLayout {
            n1,
            n2,
            m1,
            m2,
            kept: (0..n1 * n2 + m1 * m2).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.kept.len()
    }

    pub fn original_n(&self) -> usize {
        self.n1 * self.n2 + self.m1 * self.m2
    }

    pub fn bit_block(&self) -> usize {
        self.n1 * self.n2
    }

    pub fn is_full(&self) -> bool {
        self.kept.len() == self.original_n()
    }

    pub fn original_coord(&self, original: usize) -> QubitCoord {
        let nb = self.bit_block();
        if original < nb {
            QubitCoord::Bit {
                row: original / self.n2,
                col: original % self.n2,
            }
        } else {
            let r = original - nb;
            QubitCoord::Check {
                row: r / self.m2,
                col: r % self.m2,
            }
        }
    }

    pub fn coord(&self, q: usize) -> QubitCoord {
        self.original_coord(self.kept[q])
    }

    pub fn original_index(&self, coord: QubitCoord) -> usize {
        match coord {
            QubitCoord::Bit { row, col } => row * self.n2 + col,
            QubitCoord::Check { row, col } => self.bit_block() + row * self.m2 + col,
        }
    }

    /// Current index of an original qubit, if it was kept.
    pub fn position(&self, original: usize) -> Option<usize> {
        self.kept.binary_search(&original).ok()
    }

    pub fn position_of(&self, coord: QubitCoord) -> Option<usize> {
        self.position(self.original_index(coord))
    }

    /// `(a, j)` of original X-check row `r`.
    pub fn x_check_coord(&self, r: usize) -> (usize, usize) {
        (r / self.n2, r % self.n2)
    }

    /// `(i, b)` of original Z-check row `r`.
    pub fn z_check_coord(&self, r: usize) -> (usize, usize) {
        (r / self.m2, r % self.m2)
    }

    pub fn x_check_index(&self, a: usize, j: usize) -> usize {
        a * self.n2 + j
    }

    pub fn z_check_index(&self, i: usize, b: usize) -> usize {
        i * self.m2 + b
    }
}

/// CSS code with HGP layout metadata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CssCode {
    pub name: String,
    pub hx: BitMatrix,
    pub hz: BitMatrix,
    pub layout: QubitLayout,
    pub logical_x: Option<BitMatrix>,
    pub logical_z: Option<BitMatrix>,
    pub d_x: Option<Distance>,
    pub d_z: Option<Distance>,
}

impl CssCode {
    /// Checks shapes and `hx·hzᵀ = 0`.
    pub fn new(
        name: impl Into<String>,
        hx: BitMatrix,
        hz: BitMatrix,
        layout: QubitLayout,
    ) -> Result<Self> {
        let n = layout.n();
        if hx.cols() != n || hz.cols() != n {
            return Err(Error::Shape(format!(
                "checks on {}/{} qubits, layout has {n}",
                hx.cols(),
                hz.cols()
            )));
        }
        if !hx.matmul(&hz.transpose())?.is_zero() {
            return Err(Error::Invariant("hx·hzᵀ ≠ 0".into()));
        }
        Ok(CssCode {
            name: name.into(),
            hx,
            hz,
            layout,
            logical_x: None,
            logical_z: None,
            d_x: None,
            d_z: None,
        })
    }

    pub fn n(&self) -> usize {
        self.layout.n()
    }

    pub fn k(&self) -> usize {
        self.n() - self.hx.rank() - self.hz.rank()
    }

    /// `(w_q, w_c)`: largest number of X- or Z-checks on a qubit, largest check weight.
    pub fn degrees(&self) -> (usize, usize) {
        let wq = self
            .hx
            .col_weights()
            .into_iter()
            .chain(self.hz.col_weights())
            .max()
            .unwrap_or(0);
        let wc = self
            .hx
            .row_weights()
            .into_iter()
            .chain(self.hz.row_weights())
            .max()
            .unwrap_or(0);
        (wq, wc)
    }
}

pub fn build_hgp(c1: &ClassicalCode, c2: &ClassicalCode) -> Result<CssCode> {
    let (h1, h2) = (&c1.h, &c2.h);
    let (m1, n1, m2, n2) = (h1.rows(), h1.cols(), h2.rows(), h2.cols());
    let hx = h1
        .kron(&BitMatrix::identity(n2))
        .hstack(&BitMatrix::identity(m1).kron(&h2.transpose()))?;
    let hz = BitMatrix::identity(n1)
        .kron(h2)
        .hstack(&h1.transpose().kron(&BitMatrix::identity(m2)))?;
    CssCode::new(
        format!("hgp({}, {})", c1.name, c2.name),
        hx,
        hz,
        QubitLayout::full(n1, n2, m1, m2),
    )
}

/// `k1·k2 + k1ᵀ·k2ᵀ`.
pub fn hgp_k(c1: &ClassicalCode, c2: &ClassicalCode) -> usize {
    c1.k() * c2.k() + c1.k_transpose() * c2.k_transpose()
}

/// `(d_X, d_Z)` with `d_Z = min(d1, d2ᵀ)` and `d_X = min(d1ᵀ, d2)`; a transpose
/// code with no codewords drops out.
pub fn hgp_distances(c1: &ClassicalCode, c2: &ClassicalCode) -> Result<(Distance, Distance)> {
    let dist = |c: &ClassicalCode| -> Result<Option<Distance>> {
        if c.k() == 0 {
            Ok(None)
        } else {
            min_distance(c, None).map(Some)
        }
    };
    let d1 = dist(c1)?;
    let d2 = dist(c2)?;
    let d1t = dist(&c1.transpose())?;
    let d2t = dist(&c2.transpose())?;
    let pick = |a: Option<Distance>, b: Option<Distance>| -> Result<Distance> {
        match (a, b) {
            (Some(a), Some(b)) => Ok(a.min(b)),
            (Some(x), None) | (None, Some(x)) => Ok(x),
            (None, None) => Err(Error::Undefined("product code has k = 0".into())),
        }
    };
    Ok((pick(d1t, d2)?, pick(d1, d2t)?))
}

/// Canonical bit-type logical bases `(E1 ⊗ G2 | 0)` and `(G1 ⊗ E2 | 0)`.
///
/// Logical `(r1, r2)` is row `r1·k2 + r2`; `r1` runs over the informational bits
/// of the first code and `r2` over those of the second.
pub fn canonical_logicals(
    code: &CssCode,
    c1: &ClassicalCode,
    c2: &ClassicalCode,
) -> Result<(BitMatrix, BitMatrix)> {
    for c in [c1, c2] {
        if !c.is_full_rank() {
            return Err(Error::NotFullRank(c.name.clone()));
        }
    }
    let l = &code.layout;
    if (l.n1, l.n2, l.m1, l.m2) != (c1.n(), c2.n(), c1.m(), c2.m()) {
        return Err(Error::Shape("code layout does not match the inputs".into()));
    }
    let g1 = canonical_generator(c1)?;
    let g2 = canonical_generator(c2)?;
    let (k1, k2) = (g1.info_bits.len(), g2.info_bits.len());
    let n = l.original_n();
    let mut gx = BitMatrix::zeros(k1 * k2, n);
    let mut gz = BitMatrix::zeros(k1 * k2, n);
    for r1 in 0..k1 {
        for r2 in 0..k2 {
            let row = r1 * k2 + r2;
            for j in g2.matrix.row_ones(r2) {
                gx.set(row, g1.info_bits[r1] * l.n2 + j, true);
            }
            for i in g1.matrix.row_ones(r1) {
                gz.set(row, i * l.n2 + g2.info_bits[r2], true);
            }
        }
    }
    let cols: Vec<usize> = l.kept.clone();
    Ok((gx.col_select(&cols), gz.col_select(&cols)))
}

/// Builds the product and attaches canonical logicals and distances.
pub fn prepare_hgp(c1: &ClassicalCode, c2: &ClassicalCode) -> Result<CssCode> {
    let mut code = build_hgp(c1, c2)?;
    let (gx, gz) = canonical_logicals(&code, c1, c2)?;
    code.logical_x = Some(gx);
    code.logical_z = Some(gz);
    let (dx, dz) = hgp_distances(c1, c2)?;
    code.d_x = Some(dx);
    code.d_z = Some(dz);
    Ok(code)
}

pub fn count_two_qubit_gates(code: &CssCode) -> usize {
    code.hx.nnz() + code.hz.nnz()
}

/// Distinct grid lines touched by a Pauli support, split by sector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorWeights {
    pub bit_rows: usize,
    pub bit_cols: usize,
    pub check_rows: usize,
    pub check_cols: usize,
}

pub fn sector_weights(code: &CssCode, support: &BitVec) -> Result<SectorWeights> {
    if support.len() != code.n() {
        return Err(Error::Shape(format!(
            "support of length {} on {} qubits",
            support.len(),
            code.n()
        )));
    }
    let mut sets: [BTreeSet<usize>; 4] = Default::default();
    for q in support.iter_ones() {
        match code.layout.coord(q) {
            QubitCoord::Bit { row, col } => {
                sets[0].insert(row);
                sets[1].insert(col);
            }
            QubitCoord::Check { row, col } => {
                sets[2].insert(row);
                sets[3].insert(col);
            }
        }
    }
    Ok(SectorWeights {
        bit_rows: sets[0].len(),
        bit_cols: sets[1].len(),
        check_rows: sets[2].len(),
        check_cols: sets[3].len(),
    })
}
