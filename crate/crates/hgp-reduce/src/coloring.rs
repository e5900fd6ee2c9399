//! Check colorings of classical codes and the product coloring of check-type qubits.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::codes::{ClassicalCode, SimpleGraph};
use crate::hgp::{CssCode, QubitCoord};
use crate::{Error, Result};

/// Graph on checks with an edge whenever two checks share a bit.
pub fn check_adjacency_graph(c: &ClassicalCode) -> SimpleGraph {
    let tanner = c.tanner_graph();
    let mut edges = std::collections::BTreeSet::new();
    for checks in &tanner.bit_nbrs {
        for (x, &a) in checks.iter().enumerate() {
            for &b in &checks[x + 1..] {
                edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    SimpleGraph::new(c.m(), edges.into_iter().collect()).expect("simple by construction")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckColoring {
    pub color_of: Vec<usize>,
    pub num_colors: usize,
}

impl CheckColoring {
    pub fn new(color_of: Vec<usize>) -> Self {
        let num_colors = color_of.iter().map(|&c| c + 1).max().unwrap_or(0);
        CheckColoring {
            color_of,
            num_colors,
        }
    }

    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut g = vec![Vec::new(); self.num_colors];
        for (check, &color) in self.color_of.iter().enumerate() {
            g[color].push(check);
        }
        g
    }

    /// Same-colored checks must have disjoint supports.
    pub fn validate(&self, c: &ClassicalCode) -> Result<()> {
        if self.color_of.len() != c.m() {
            return Err(Error::Coloring(format!(
                "{} colors for {} checks",
                self.color_of.len(),
                c.m()
            )));
        }
        for (a, b) in check_adjacency_graph(c).edges() {
            if self.color_of[*a] == self.color_of[*b] {
                return Err(Error::Coloring(format!(
                    "checks {a} and {b} share a bit and color {}",
                    self.color_of[*a]
                )));
            }
        }
        Ok(())
    }

    pub fn validate_graph(&self, g: &SimpleGraph) -> bool {
        self.color_of.len() == g.num_vertices()
            && g.edges()
                .iter()
                .all(|&(a, b)| self.color_of[a] != self.color_of[b])
    }
}

/// Largest-first extraction of maximal independent sets. Degree ties go to the
/// lower index for seed 0, otherwise to a seeded shuffle.
pub fn independent_set_coloring(g: &SimpleGraph, order_seed: u64) -> CheckColoring {
    let n = g.num_vertices();
    let adj = g.adjacency();
    let deg = g.degrees();
    let mut tiebreak: Vec<usize> = (0..n).collect();
    if order_seed != 0 {
        tiebreak.shuffle(&mut ChaCha8Rng::seed_from_u64(order_seed));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), tiebreak[v]));
    let mut color = vec![usize::MAX; n];
    let mut next = 0;
    while color.iter().any(|&c| c == usize::MAX) {
        for &v in &order {
            if color[v] == usize::MAX && adj[v].iter().all(|&u| color[u] != next) {
                color[v] = next;
            }
        }
        next += 1;
    }
    CheckColoring::new(color)
}

/// Saturation-degree greedy coloring; exact on bipartite graphs.
pub fn dsatur_coloring(g: &SimpleGraph) -> CheckColoring {
    let n = g.num_vertices();
    let adj = g.adjacency();
    let deg = g.degrees();
    let mut color = vec![usize::MAX; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| {
                let sat = seen[v].iter().filter(|&&s| s).count();
                (sat, deg[v], std::cmp::Reverse(v))
            })
            .unwrap();
        let c = (0..).find(|&c| seen[v].get(c) != Some(&true)).unwrap();
        color[v] = c;
        for &u in &adj[v] {
            if seen[u].len() <= c {
                seen[u].resize(c + 1, false);
            }
            seen[u][c] = true;
        }
    }
    CheckColoring::new(color)
}

/// Greedy check coloring: the independent-set extraction, replaced by a
/// saturation-degree coloring when that uses strictly fewer colors.
pub fn greedy_color(g: &SimpleGraph, order_seed: u64) -> CheckColoring {
    let is = independent_set_coloring(g, order_seed);
    let ds = dsatur_coloring(g);
    if ds.num_colors < is.num_colors {
        ds
    } else {
        is
    }
}

pub fn color_code(c: &ClassicalCode, order_seed: u64) -> CheckColoring {
    greedy_color(&check_adjacency_graph(c), order_seed)
}

/// Partition of check-type qubits into groups `Γ_{i,j}` by the colors of their
/// two check coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductColoring {
    pub chi1: usize,
    pub chi2: usize,
    pub color1: Vec<usize>,
    pub color2: Vec<usize>,
    /// `groups[i * chi2 + j]` lists original qubit indices in `Γ_{i,j}`, ascending.
    pub groups: Vec<Vec<usize>>,
}

impl ProductColoring {
    pub fn group(&self, i: usize, j: usize) -> &[usize] {
        &self.groups[i * self.chi2 + j]
    }

    pub fn size(&self, i: usize, j: usize) -> usize {
        self.group(i, j).len()
    }

    pub fn sizes(&self) -> Vec<Vec<usize>> {
        (0..self.chi1)
            .map(|i| (0..self.chi2).map(|j| self.size(i, j)).collect())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.chi1 == self.chi2 && self.color1 == self.color2
    }
}

/// Builds `Γ_{i,j}` for an unreduced product and checks that no two qubits of a
/// group share an X-check or a Z-check.
pub fn product_coloring(
    col1: &CheckColoring,
    col2: &CheckColoring,
    code: &CssCode,
) -> Result<ProductColoring> {
    let l = &code.layout;
    if col1.color_of.len() != l.m1 || col2.color_of.len() != l.m2 {
        return Err(Error::Coloring("coloring sizes do not match the layout".into()));
    }
    let (chi1, chi2) = (col1.num_colors, col2.num_colors);
    let mut groups = vec![Vec::new(); chi1 * chi2];
    for a in 0..l.m1 {
        for b in 0..l.m2 {
            let q = l.original_index(QubitCoord::Check { row: a, col: b });
            groups[col1.color_of[a] * chi2 + col2.color_of[b]].push(q);
        }
    }
    let xt = code.hx.transpose();
    let zt = code.hz.transpose();
    let mut owner_x = vec![usize::MAX; code.hx.rows()];
    let mut owner_z = vec![usize::MAX; code.hz.rows()];
    for (g, members) in groups.iter().enumerate() {
        for &q in members {
            let pos = l
                .position(q)
                .ok_or_else(|| Error::Coloring(format!("qubit {q} missing from the code")))?;
            for (checks, owner) in [(&xt, &mut owner_x), (&zt, &mut owner_z)] {
                for c in checks.row_ones(pos) {
                    if owner[c] == g {
                        return Err(Error::Coloring(format!(
                            "group {g} has two qubits on check {c}"
                        )));
                    }
                    owner[c] = g;
                }
            }
        }
    }
    Ok(ProductColoring {
        chi1,
        chi2,
        color1: col1.color_of.clone(),
        color2: col2.color_of.clone(),
        groups,
    })
}

/// Each proto check's `lift` copies inherit its color; validated on the lifted code.
pub fn lifted_coloring(
    proto: &CheckColoring,
    lift: usize,
    lifted: &ClassicalCode,
) -> Result<CheckColoring> {
    let color_of = proto
        .color_of
        .iter()
        .flat_map(|&c| std::iter::repeat(c).take(lift))
        .collect();
    let out = CheckColoring {
        color_of,
        num_colors: proto.num_colors,
    };
    out.validate(lifted)?;
    Ok(out)
}
