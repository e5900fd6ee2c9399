//! alist reader and writer. Columns are bits, rows are checks, indices 1-based,
//! short lists padded with zeros.

use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use hgp_reduce::BitMatrix;

fn join(xs: impl IntoIterator<Item = usize>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn write_alist(h: &BitMatrix) -> String {
    let (m, n) = h.shape();
    let rows = h.supports();
    let cols = h.transpose().supports();
    let max_col = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    writeln!(out, "{n} {m}").unwrap();
    writeln!(out, "{max_col} {max_row}").unwrap();
    writeln!(out, "{}", join(cols.iter().map(Vec::len))).unwrap();
    writeln!(out, "{}", join(rows.iter().map(Vec::len))).unwrap();
    for (lists, width) in [(&cols, max_col), (&rows, max_row)] {
        for l in lists {
            let padded = l.iter().map(|&x| x + 1).chain(std::iter::repeat(0)).take(width);
            writeln!(out, "{}", join(padded)).unwrap();
        }
    }
    out
}

pub fn read_alist(text: &str) -> Result<BitMatrix> {
    let mut lines = text.lines();
    let mut numbers = |what: &str| -> Result<Vec<usize>> {
        let line = lines.next().with_context(|| format!("missing {what}"))?;
        line.split_whitespace()
            .map(|t| t.parse::<usize>().with_context(|| format!("bad number {t:?} in {what}")))
            .collect()
    };
    let dims = numbers("dimensions")?;
    let [n, m] = dims[..] else {
        bail!("first line must hold two numbers");
    };
    let maxes = numbers("maximum weights")?;
    if maxes.len() != 2 {
        bail!("second line must hold two numbers");
    }
    let col_w = numbers("column weights")?;
    let row_w = numbers("row weights")?;
    if col_w.len() != n || row_w.len() != m {
        bail!("weight lists do not match {n} columns and {m} rows");
    }
    let mut h = BitMatrix::zeros(m, n);
    for c in 0..n {
        let list: Vec<usize> = numbers("column list")?.into_iter().filter(|&x| x != 0).collect();
        if list.len() != col_w[c] {
            bail!("column {c} lists {} rows, weight says {}", list.len(), col_w[c]);
        }
        for r in list {
            if r > m {
                bail!("row index {r} out of range in column {c}");
            }
            h.set(r - 1, c, true);
        }
    }
    let mut check = BitMatrix::zeros(m, n);
    for r in 0..m {
        let list: Vec<usize> = numbers("row list")?.into_iter().filter(|&x| x != 0).collect();
        if list.len() != row_w[r] {
            bail!("row {r} lists {} columns, weight says {}", list.len(), row_w[r]);
        }
        for c in list {
            if c > n {
                bail!("column index {c} out of range in row {r}");
            }
            check.set(r, c - 1, true);
        }
    }
    if check != h {
        bail!("row and column lists disagree");
    }
    Ok(h)
}
