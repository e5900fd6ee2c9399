//! Code bundles: one directory holding alist matrices, `manifest.json` and,
//! once planned, `plan.json`.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use hgp_reduce::coloring::{product_coloring, CheckColoring, ProductColoring};
use hgp_reduce::hgp::prepare_hgp;
use hgp_reduce::planner::CombinationSchedule;
use hgp_reduce::reducer::{build_reduction, ReductionPlan};
use hgp_reduce::{BitMatrix, ClassicalCode, CssCode, Distance, QubitLayout};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::alist::{read_alist, write_alist};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: Option<u64>,
    pub generator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringRecord {
    pub color1: Vec<usize>,
    pub color2: Vec<usize>,
    pub chi1: usize,
    pub chi2: usize,
}

impl ColoringRecord {
    pub fn new(c1: &CheckColoring, c2: &CheckColoring) -> Self {
        ColoringRecord {
            color1: c1.color_of.clone(),
            color2: c2.color_of.clone(),
            chi1: c1.num_colors,
            chi2: c2.num_colors,
        }
    }

    pub fn colorings(&self) -> (CheckColoring, CheckColoring) {
        (
            CheckColoring {
                color_of: self.color1.clone(),
                num_colors: self.chi1,
            },
            CheckColoring {
                color_of: self.color2.clone(),
                num_colors: self.chi2,
            },
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub d_x: Option<Distance>,
    pub d_z: Option<Distance>,
    pub layout: QubitLayout,
    pub coloring: Option<ColoringRecord>,
    pub schedule: Option<CombinationSchedule>,
    pub plan_hash: Option<String>,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanFile {
    pub schedule: CombinationSchedule,
    pub removed: usize,
    pub fold_symmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalManifest {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub d: Option<Distance>,
    pub provenance: Provenance,
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_matrix(path: &Path, h: &BitMatrix) -> Result<()> {
    fs::write(path, write_alist(h)).with_context(|| format!("writing {}", path.display()))
}

pub fn read_matrix(path: &Path) -> Result<BitMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_alist(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Hex SHA-256 of both check matrices.
pub fn code_hash(code: &CssCode) -> String {
    let mut h = Sha256::new();
    for (tag, m) in [("hx", &code.hx), ("hz", &code.hz)] {
        h.update(format!("{tag} {} {}\n", m.rows(), m.cols()));
        for s in m.supports() {
            h.update(format!("{s:?}\n"));
        }
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub struct Bundle {
    pub manifest: Manifest,
    pub code: CssCode,
    pub h1: ClassicalCode,
    pub h2: ClassicalCode,
}

impl Bundle {
    pub fn new(code: CssCode, h1: ClassicalCode, h2: ClassicalCode, provenance: Provenance) -> Self {
        let manifest = Manifest {
            name: code.name.clone(),
            n: code.n(),
            k: code.k(),
            d_x: code.d_x,
            d_z: code.d_z,
            layout: code.layout.clone(),
            coloring: None,
            schedule: None,
            plan_hash: None,
            provenance,
        };
        Bundle {
            manifest,
            code,
            h1,
            h2,
        }
    }

    pub fn save(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        write_matrix(&dir.join("hx.alist"), &self.code.hx)?;
        write_matrix(&dir.join("hz.alist"), &self.code.hz)?;
        if let Some(l) = &self.code.logical_x {
            write_matrix(&dir.join("logical_x.alist"), l)?;
        }
        if let Some(l) = &self.code.logical_z {
            write_matrix(&dir.join("logical_z.alist"), l)?;
        }
        write_matrix(&dir.join("h1.alist"), &self.h1.h)?;
        write_matrix(&dir.join("h2.alist"), &self.h2.h)?;
        write_json(&dir.join("manifest.json"), &self.manifest)
    }

    pub fn load(dir: &Path) -> Result<Self> {
        let manifest: Manifest = read_json(&dir.join("manifest.json"))?;
        let hx = read_matrix(&dir.join("hx.alist"))?;
        let hz = read_matrix(&dir.join("hz.alist"))?;
        let optional = |name: &str| -> Result<Option<BitMatrix>> {
            let p = dir.join(name);
            if p.exists() {
                read_matrix(&p).map(Some)
            } else {
                Ok(None)
            }
        };
        let mut code = CssCode::new(manifest.name.clone(), hx, hz, manifest.layout.clone())?;
        code.logical_x = optional("logical_x.alist")?;
        code.logical_z = optional("logical_z.alist")?;
        code.d_x = manifest.d_x;
        code.d_z = manifest.d_z;
        if code.n() != manifest.n {
            bail!("manifest says n = {}, matrices have {}", manifest.n, code.n());
        }
        let h1 = ClassicalCode::new("h1", read_matrix(&dir.join("h1.alist"))?);
        let h2 = ClassicalCode::new("h2", read_matrix(&dir.join("h2.alist"))?);
        Ok(Bundle {
            manifest,
            code,
            h1,
            h2,
        })
    }

    /// The unreduced product of the two input codes.
    pub fn product(&self) -> Result<CssCode> {
        let mut p = prepare_hgp(&self.h1, &self.h2)?;
        p.name = format!("hgp({})", self.manifest.name);
        Ok(p)
    }

    pub fn product_coloring(&self, product: &CssCode) -> Result<ProductColoring> {
        let rec = self
            .manifest
            .coloring
            .as_ref()
            .context("bundle has no coloring; run `color` first")?;
        let (c1, c2) = rec.colorings();
        Ok(product_coloring(&c1, &c2, product)?)
    }

    /// Rebuilds the plan that produced this bundle from its schedule and
    /// checks it reproduces the stored matrices.
    pub fn reduction_plan(&self) -> Result<(CssCode, ReductionPlan)> {
        let product = self.product()?;
        let schedule = self
            .manifest
            .schedule
            .clone()
            .context("bundle has no schedule")?;
        let pc = self.product_coloring(&product)?;
        let plan = build_reduction(&product, &pc, &schedule)?;
        let red = hgp_reduce::reducer::apply_reduction(&product, &plan)?;
        if red.hx != self.code.hx || red.hz != self.code.hz {
            bail!("stored matrices do not match the recorded schedule");
        }
        Ok((product, plan))
    }
}
