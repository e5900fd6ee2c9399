//! Classical linear codes and the input-code generators.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::gf2::{BitMatrix, BitVec, Echelon};
use crate::{Error, Result};

/// Largest dimension for which distances are found by full message enumeration.
pub const ENUMERATION_MAX_K: usize = 24;

const LDPC_RETRIES: usize = 100_000;

/// A binary linear code given by its parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalCode {
    pub name: String,
    pub h: BitMatrix,
}

impl ClassicalCode {
    pub fn new(name: impl Into<String>, h: BitMatrix) -> Self {
        ClassicalCode {
            name: name.into(),
            h,
        }
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    pub fn m(&self) -> usize {
        self.h.rows()
    }

    pub fn rank(&self) -> usize {
        self.h.rank()
    }

    pub fn k(&self) -> usize {
        self.n() - self.rank()
    }

    /// Dimension of the transpose code, `m - rank(h)`.
    pub fn k_transpose(&self) -> usize {
        self.m() - self.rank()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.m()
    }

    pub fn transpose(&self) -> ClassicalCode {
        ClassicalCode::new(format!("{}^T", self.name), self.h.transpose())
    }

    pub fn tanner_graph(&self) -> TannerGraph {
        let check_nbrs = self.h.supports();
        let mut bit_nbrs = vec![Vec::new(); self.n()];
        for (c, s) in check_nbrs.iter().enumerate() {
            for &b in s {
                bit_nbrs[b].push(c);
            }
        }
        TannerGraph {
            n: self.n(),
            m: self.m(),
            check_nbrs,
            bit_nbrs,
        }
    }
}

/// Bipartite bit/check incidence structure of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TannerGraph {
    pub n: usize,
    pub m: usize,
    pub check_nbrs: Vec<Vec<usize>>,
    pub bit_nbrs: Vec<Vec<usize>>,
}

impl TannerGraph {
    pub fn has_edge(&self, check: usize, bit: usize) -> bool {
        self.check_nbrs[check].binary_search(&bit).is_ok()
    }
}

/// Minimum distance, either exact or a lower bound from a capped search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Distance {
    Exact(usize),
    AtLeast(usize),
}

impl Distance {
    pub fn value(self) -> usize {
        match self {
            Distance::Exact(d) | Distance::AtLeast(d) => d,
        }
    }

    pub fn exact(self) -> Option<usize> {
        match self {
            Distance::Exact(d) => Some(d),
            Distance::AtLeast(_) => None,
        }
    }

    pub fn min(self, other: Distance) -> Distance {
        let (a, b) = (self.value(), other.value());
        match (self, other) {
            (Distance::Exact(_), Distance::Exact(_)) => Distance::Exact(a.min(b)),
            (Distance::Exact(_), Distance::AtLeast(_)) if a <= b => self,
            (Distance::AtLeast(_), Distance::Exact(_)) if b <= a => other,
            _ => Distance::AtLeast(a.min(b)),
        }
    }
}

/// Generator matrix in canonical form with its informational bits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    /// k×n; row `r` is the codeword with a single one on `info_bits[r]` among the informational bits.
    pub matrix: BitMatrix,
    /// Informational positions, ascending.
    pub info_bits: Vec<usize>,
    /// Informational bits first, then the remaining positions; `matrix` restricted
    /// to this column order reads `(I_k | A^T)`.
    pub permutation: Vec<usize>,
}

/// Canonical generator using the leftmost information set.
pub fn canonical_generator(c: &ClassicalCode) -> Result<Generator> {
    let n = c.n();
    let reversed: Vec<usize> = (0..n).rev().collect();
    let e = Echelon::new(&c.h.col_select(&reversed));
    let pivots: Vec<usize> = e.pivots().iter().map(|&p| n - 1 - p).collect();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let info_bits: Vec<usize> = (0..n).filter(|&b| !is_pivot[b]).collect();
    if info_bits.is_empty() {
        return Err(Error::Undefined(format!("code {} has k = 0", c.name)));
    }
    let reduced = e.reduced();
    let mut g = BitMatrix::zeros(info_bits.len(), n);
    for (r, &f) in info_bits.iter().enumerate() {
        g.set(r, f, true);
        for (i, &p) in pivots.iter().enumerate() {
            if reduced.get(i, n - 1 - f) {
                g.set(r, p, true);
            }
        }
    }
    let permutation = info_bits
        .iter()
        .copied()
        .chain(pivots.iter().copied().collect::<BTreeSet<_>>())
        .collect();
    Ok(Generator {
        matrix: g,
        info_bits,
        permutation,
    })
}

/// Minimum distance. Exact by enumeration for `k ≤ 24`; otherwise a search over
/// supports of weight up to `weight_cap`.
pub fn min_distance(c: &ClassicalCode, weight_cap: Option<usize>) -> Result<Distance> {
    let k = c.k();
    if k == 0 {
        return Err(Error::Undefined(format!(
            "distance of {} undefined for k = 0",
            c.name
        )));
    }
    if k <= ENUMERATION_MAX_K {
        let g = canonical_generator(c)?;
        return Ok(Distance::Exact(enumerate_min_weight(&g.matrix)));
    }
    let cap = weight_cap.ok_or_else(|| {
        Error::Budget(format!("k = {k} needs an explicit weight cap"))
    })?;
    Ok(match low_weight_kernel_vector(&c.h, cap) {
        Some(v) => Distance::Exact(v.weight()),
        None => Distance::AtLeast(cap + 1),
    })
}

/// Smallest nonzero weight in the row space of `g`, by Gray-code walk.
pub fn enumerate_min_weight(g: &BitMatrix) -> usize {
    let k = g.rows();
    assert!(k <= ENUMERATION_MAX_K, "enumeration over 2^{k} messages");
    let rows = g.row_vecs();
    let mut word = BitVec::zeros(g.cols());
    let mut best = usize::MAX;
    for i in 1u64..(1u64 << k) {
        word.xor_assign(&rows[i.trailing_zeros() as usize]);
        let w = word.weight();
        if w > 0 && w < best {
            best = w;
        }
    }
    best
}

/// Lowest-weight nonzero `x` with `h·xᵀ = 0` and `|x| ≤ cap`, if any.
///
/// Supports are enumerated in colex order by weight; the final position is
/// looked up from the partial syndrome instead of being scanned.
pub fn low_weight_kernel_vector(h: &BitMatrix, cap: usize) -> Option<BitVec> {
    let n = h.cols();
    let cols: Vec<BitVec> = h.transpose().row_vecs();
    let mut by_syndrome: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
    for (j, col) in cols.iter().enumerate() {
        by_syndrome.entry(col.words().to_vec()).or_default().push(j);
    }
    for w in 1..=cap.min(n) {
        if w == 1 {
            if let Some(j) = cols.iter().position(|c| c.is_zero()) {
                return Some(BitVec::from_indices(n, &[j]));
            }
            continue;
        }
        let mut prefix: Vec<usize> = (0..w - 1).collect();
        loop {
            let mut s = BitVec::zeros(h.rows());
            for &j in &prefix {
                s.xor_assign(&cols[j]);
            }
            let last = *prefix.last().unwrap();
            if let Some(cands) = by_syndrome.get(s.words()) {
                if let Some(&j) = cands.iter().find(|&&j| j > last) {
                    let mut support = prefix.clone();
                    support.push(j);
                    return Some(BitVec::from_indices(n, &support));
                }
            }
            if !next_combination(&mut prefix, n) {
                break;
            }
        }
    }
    None
}

/// Advances `comb` (strictly increasing, values < n) to the next combination in
/// lexicographic order. Returns false when exhausted.
pub(crate) fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// (max column weight, max row weight) of the parity-check matrix.
pub fn check_degrees(c: &ClassicalCode) -> (usize, usize) {
    (
        c.h.col_weights().into_iter().max().unwrap_or(0),
        c.h.row_weights().into_iter().max().unwrap_or(0),
    )
}

/// `(d_v, d_c)`-regular code from the bipartite configuration model.
///
/// Stub pairings containing a repeated bit/check pair are discarded and the
/// whole pairing is redrawn.
pub fn random_ldpc(n: usize, d_v: usize, d_c: usize, seed: u64) -> Result<ClassicalCode> {
    if d_v == 0 || d_c == 0 || (n * d_v) % d_c != 0 {
        return Err(Error::InvalidInput(format!(
            "d_v·n = {} not divisible by d_c = {d_c}",
            n * d_v
        )));
    }
    let m = n * d_v / d_c;
    if d_v > m || d_c > n {
        return Err(Error::InvalidInput(format!(
            "no simple ({d_v},{d_c}) graph on {n} bits"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bit_stubs: Vec<usize> = (0..n).flat_map(|b| std::iter::repeat(b).take(d_v)).collect();
    let mut check_stubs: Vec<usize> =
        (0..m).flat_map(|c| std::iter::repeat(c).take(d_c)).collect();
    for _ in 0..LDPC_RETRIES {
        check_stubs.shuffle(&mut rng);
        let mut h = BitMatrix::zeros(m, n);
        let mut simple = true;
        for (&b, &c) in bit_stubs.iter().zip(&check_stubs) {
            if h.get(c, b) {
                simple = false;
                break;
            }
            h.set(c, b, true);
        }
        if simple {
            return Ok(ClassicalCode::new(
                format!("random({n},{d_v},{d_c};seed={seed})"),
                h,
            ));
        }
    }
    Err(Error::InvalidInput(format!(
        "no simple pairing found in {LDPC_RETRIES} draws"
    )))
}

/// Type-I quasi-cyclic lift. `exponents` maps each nonzero proto cell to the
/// power of the ℓ×ℓ shift whose row `t` has its one in column `(t + power) mod ℓ`.
pub fn qc_lift(
    proto: &BitMatrix,
    exponents: &BTreeMap<(usize, usize), usize>,
    lift: usize,
) -> Result<ClassicalCode> {
    if lift == 0 {
        return Err(Error::InvalidInput("lift size must be positive".into()));
    }
    for (&(r, c), &p) in exponents {
        if r >= proto.rows() || c >= proto.cols() || !proto.get(r, c) {
            return Err(Error::InvalidInput(format!(
                "exponent given on zero cell ({r},{c})"
            )));
        }
        if p >= lift {
            return Err(Error::InvalidInput(format!(
                "power {p} at ({r},{c}) not below lift {lift}"
            )));
        }
    }
    let mut h = BitMatrix::zeros(proto.rows() * lift, proto.cols() * lift);
    for r in 0..proto.rows() {
        for c in proto.row_ones(r) {
            let p = *exponents.get(&(r, c)).ok_or_else(|| {
                Error::InvalidInput(format!("missing exponent for cell ({r},{c})"))
            })?;
            for t in 0..lift {
                h.set(r * lift + t, c * lift + (t + p) % lift, true);
            }
        }
    }
    Ok(ClassicalCode::new(format!("qc(lift={lift})"), h))
}

/// Exponent map from a dense table; `None` marks a zero cell.
pub fn exponent_table(rows: &[Vec<Option<usize>>]) -> (BitMatrix, BTreeMap<(usize, usize), usize>) {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut proto = BitMatrix::zeros(rows.len(), cols);
    let mut exps = BTreeMap::new();
    for (r, row) in rows.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            if let Some(p) = cell {
                proto.set(r, c, true);
                exps.insert((r, c), *p);
            }
        }
    }
    (proto, exps)
}

/// Undirected simple graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("loop at {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidInput(format!("repeated edge ({u},{v})")));
            }
        }
        Ok(SimpleGraph { n, edges })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Side assignment if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let adj = self.adjacency();
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &v in &adj[u] {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    /// Length of the shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let adj = self.adjacency();
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Graph given in LCF notation: a Hamiltonian cycle plus chords `i → i + shifts[i mod len]`.
    pub fn from_lcf(n: usize, shifts: &[i64]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for i in 0..n {
            set.insert((i.min((i + 1) % n), i.max((i + 1) % n)));
        }
        for i in 0..n {
            let s = shifts[i % shifts.len()];
            let j = (i as i64 + s).rem_euclid(n as i64) as usize;
            set.insert((i.min(j), i.max(j)));
        }
        let mut edges: Vec<(usize, usize)> = set.into_iter().collect();
        edges.sort_unstable();
        SimpleGraph::new(n, edges)
    }

    /// K_{a,b}; left vertex `u` and right vertex `a + w` are joined by edge `u·b + w`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a)
            .flat_map(|u| (0..b).map(move |w| (u, a + w)))
            .collect();
        SimpleGraph { n: a + b, edges }
    }

    pub fn cycle(n: usize) -> Self {
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph { n, edges }
    }

    /// The (3,6)-cage on 14 vertices.
    pub fn heawood() -> Self {
        SimpleGraph::from_lcf(14, &[5, -5]).expect("valid LCF")
    }

    /// The (3,8)-cage on 30 vertices.
    pub fn tutte_coxeter() -> Self {
        SimpleGraph::from_lcf(30, &[-13, -9, 7, -7, 9, 13]).expect("valid LCF")
    }
}

/// Cycle code: one bit per edge, one check per vertex, with one vertex dropped
/// (the last one by default) so the checks are independent.
pub fn cycle_code(g: &SimpleGraph, drop_vertex: Option<usize>) -> Result<ClassicalCode> {
    if g.num_vertices() == 0 {
        return Err(Error::InvalidInput("empty graph".into()));
    }
    if !g.is_connected() {
        return Err(Error::InvalidInput("cycle code needs a connected graph".into()));
    }
    let drop = drop_vertex.unwrap_or(g.num_vertices() - 1);
    if drop >= g.num_vertices() {
        return Err(Error::InvalidInput(format!("vertex {drop} out of range")));
    }
    let kept: Vec<usize> = (0..g.num_vertices()).filter(|&v| v != drop).collect();
    let mut row_of = vec![usize::MAX; g.num_vertices()];
    for (r, &v) in kept.iter().enumerate() {
        row_of[v] = r;
    }
    let mut h = BitMatrix::zeros(kept.len(), g.edges().len());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        for x in [u, v] {
            if x != drop {
                h.set(row_of[x], e, true);
            }
        }
    }
    Ok(ClassicalCode::new("cycle", h))
}

/// Bipartite double cover: vertex `u` splits into `u` and `u + |V|`.
pub fn bipartite_double_cover(g: &SimpleGraph) -> SimpleGraph {
    let n = g.num_vertices();
    let edges = g
        .edges()
        .iter()
        .flat_map(|&(u, v)| [(u, v + n), (u + n, v)])
        .collect();
    SimpleGraph { n: 2 * n, edges }
}
