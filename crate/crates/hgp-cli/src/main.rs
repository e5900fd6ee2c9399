//! `hgpr`: build, reduce, verify, schedule and simulate hypergraph-product codes.
//!
//! Exit status: 0 on success, 2 on invalid input, 3 when a verification fails
//! (reports are still written).

mod alist;
mod bundle;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hgp_reduce::codes::{canonical_generator, cycle_code, min_distance, random_ldpc};
use hgp_reduce::coloring::{color_code, product_coloring};
use hgp_reduce::hgp::prepare_hgp;
use hgp_reduce::homomorphism::{
    augment, build_aug_chain_map, build_punc_chain_map, puncture, restrict_coloring, ChainMap,
};
use hgp_reduce::memsim::{run_memory, NoiseModel};
use hgp_reduce::planner::{choose_schedule, fold_symmetric_schedule};
use hgp_reduce::reducer::{apply_reduction, build_reduction, weight_report, Pauli, ReductionPlan};
use hgp_reduce::sescheduler::{
    effective_distance_probe, enumerate_hooks, random_schedule, split_schedule, CnotSchedule,
    ProbeResult,
};
use hgp_reduce::verifier::verify_all;
use hgp_reduce::{catalog, BitMatrix, ClassicalCode, CssCode, SimpleGraph};
use serde::{Deserialize, Serialize};

use crate::bundle::{
    code_hash, read_json, read_matrix, write_json, write_matrix, Bundle, ClassicalManifest,
    ColoringRecord, PlanFile, Provenance,
};

#[derive(Parser)]
#[command(name = "hgpr", version, about = "Hypergraph-product codes with check-type qubit reduction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a classical parity-check matrix and its manifest.
    GenClassical(GenClassical),
    /// Product of two classical codes.
    BuildHgp {
        #[arg(long)]
        h1: PathBuf,
        #[arg(long)]
        h2: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Color the checks of both input codes.
    Color {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Choose a combination schedule.
    Plan {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        fold_symmetric: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a plan and write the reduced bundle.
    Reduce {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        plan: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check every preserved property of a reduction.
    Verify {
        #[arg(long)]
        before: PathBuf,
        #[arg(long)]
        after: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// CNOT schedule for syndrome extraction.
    Schedule {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, conflicts_with = "random")]
        split: bool,
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hook errors of a schedule.
    Hooks {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        schedule: PathBuf,
        /// Also search for up to this many faults forming a logical.
        #[arg(long, default_value_t = 0)]
        probe: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chain maps for an augmented or punctured second input code.
    Chainmap(ChainmapArgs),
    /// Phenomenological memory experiment.
    Simulate {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
        #[arg(long, default_value_t = 10000)]
        shots: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Syndrome rounds; defaults to d + 1.
        #[arg(long)]
        rounds: Option<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Export a bundle's check matrices.
    Export {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, value_enum)]
        format: ExportFormat,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct GenClassical {
    #[command(subcommand)]
    family: Family,
}

#[derive(Subcommand)]
enum Family {
    /// Random biregular code from the configuration model.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        dv: usize,
        #[arg(long, default_value_t = 4)]
        dc: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Quasi-cyclic preset (qc20, qc24, qc28).
    Qc {
        #[arg(long)]
        preset: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Cycle code of a named graph (k33, heawood, tutte-coxeter).
    Cycle {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct ChainmapArgs {
    #[arg(value_enum)]
    kind: ChainKind,
    #[arg(long)]
    code: PathBuf,
    /// Positions among the informational bits of the second code: the support
    /// of the new check, or the bits to delete.
    #[arg(long, value_delimiter = ',', required = true)]
    bits: Vec<usize>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChainKind {
    Augment,
    Puncture,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Alist,
    Json,
}

/// Invalid input or a failed verification, with its exit status.
#[derive(Debug)]
struct Failure {
    status: u8,
    message: String,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

fn verification_failed(message: impl Into<String>) -> anyhow::Error {
    Failure {
        status: 3,
        message: message.into(),
    }
    .into()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let status = e.downcast_ref::<Failure>().map_or(2, |f| f.status);
            ExitCode::from(status)
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::GenClassical(g) => gen_classical(g.family),
        Command::BuildHgp { h1, h2, out, name } => build_hgp(&h1, &h2, &out, name),
        Command::Color { code, seed } => color(&code, seed),
        Command::Plan {
            code,
            fold_symmetric,
            out,
        } => plan(&code, fold_symmetric, out),
        Command::Reduce { code, plan, out } => reduce(&code, plan, &out),
        Command::Verify {
            before,
            after,
            out,
            seed,
        } => verify(&before, &after, out, seed),
        Command::Schedule {
            code,
            split,
            random,
            seed,
            out,
        } => schedule(&code, split, random, seed, out),
        Command::Hooks {
            code,
            schedule,
            probe,
            out,
        } => hooks(&code, &schedule, probe, out),
        Command::Chainmap(args) => chainmap(args),
        Command::Simulate {
            code,
            p,
            shots,
            seed,
            rounds,
            csv,
            summary,
        } => simulate(&code, &p, shots, seed, rounds, csv, summary),
        Command::Export { code, format, out } => export(&code, format, &out),
    }
}

fn emit_json<T: Serialize>(out: Option<&Path>, value: &T) -> Result<()> {
    match out {
        Some(p) => write_json(p, value),
        None => {
            println!("{}", serde_json::to_string_pretty(value)?);
            Ok(())
        }
    }
}

fn gen_classical(family: Family) -> Result<()> {
    let (code, out, provenance) = match family {
        Family::Random {
            n,
            dv,
            dc,
            seed,
            out,
        } => (
            random_ldpc(n, dv, dc, seed)?,
            out,
            Provenance {
                seed: Some(seed),
                generator: format!("random ({dv},{dc})"),
            },
        ),
        Family::Qc { preset, out } => {
            let code = catalog::qc_code(&preset)
                .with_context(|| format!("unknown preset {preset:?}"))?;
            (
                code,
                out,
                Provenance {
                    seed: None,
                    generator: format!("qc {preset}"),
                },
            )
        }
        Family::Cycle { graph, out } => {
            let g = match graph.as_str() {
                "k33" => SimpleGraph::complete_bipartite(3, 3),
                "heawood" => SimpleGraph::heawood(),
                "tutte-coxeter" => SimpleGraph::tutte_coxeter(),
                other => bail!("unknown graph {other:?}"),
            };
            let mut code = cycle_code(&g, None)?;
            code.name = graph.clone();
            (
                code,
                out,
                Provenance {
                    seed: None,
                    generator: format!("cycle {graph}"),
                },
            )
        }
    };
    fs::create_dir_all(&out)?;
    write_matrix(&out.join("h.alist"), &code.h)?;
    let d = if code.k() > 0 {
        min_distance(&code, Some(4)).ok()
    } else {
        None
    };
    let manifest = ClassicalManifest {
        name: code.name.clone(),
        n: code.n(),
        m: code.m(),
        k: code.k(),
        d,
        provenance,
    };
    write_json(&out.join("manifest.json"), &manifest)?;
    println!(
        "{}: [{}, {}, {}]",
        code.name,
        code.n(),
        code.k(),
        d.map_or("?".to_string(), |d| d.value().to_string())
    );
    Ok(())
}

fn load_classical(path: &Path, fallback: &str) -> Result<ClassicalCode> {
    let h = read_matrix(path)?;
    let name = path
        .parent()
        .and_then(|d| read_json::<ClassicalManifest>(&d.join("manifest.json")).ok())
        .map_or_else(|| fallback.to_string(), |m| m.name);
    Ok(ClassicalCode::new(name, h))
}

fn build_hgp(h1: &Path, h2: &Path, out: &Path, name: Option<String>) -> Result<()> {
    let c1 = load_classical(h1, "h1")?;
    let c2 = load_classical(h2, "h2")?;
    let mut code = prepare_hgp(&c1, &c2)?;
    if let Some(n) = name {
        code.name = n;
    }
    let b = Bundle::new(
        code,
        c1,
        c2,
        Provenance {
            seed: None,
            generator: "build-hgp".into(),
        },
    );
    b.save(out)?;
    println!("{}: [[{}, {}]]", b.manifest.name, b.manifest.n, b.manifest.k);
    Ok(())
}

fn color(dir: &Path, seed: u64) -> Result<()> {
    let mut b = Bundle::load(dir)?;
    let c1 = color_code(&b.h1, seed);
    let c2 = color_code(&b.h2, seed);
    c1.validate(&b.h1)?;
    c2.validate(&b.h2)?;
    b.manifest.coloring = Some(ColoringRecord::new(&c1, &c2));
    b.manifest.provenance.seed = Some(seed);
    b.save(dir)?;
    println!("colors: {} × {}", c1.num_colors, c2.num_colors);
    Ok(())
}

fn plan(dir: &Path, fold: bool, out: Option<PathBuf>) -> Result<()> {
    let mut b = Bundle::load(dir)?;
    if !b.code.layout.is_full() {
        bail!("plan expects an unreduced bundle");
    }
    if b.manifest.coloring.is_none() {
        let c1 = color_code(&b.h1, 0);
        let c2 = color_code(&b.h2, 0);
        b.manifest.coloring = Some(ColoringRecord::new(&c1, &c2));
    }
    let product = b.product()?;
    let pc = b.product_coloring(&product)?;
    let schedule = if fold {
        fold_symmetric_schedule(&pc)?
    } else {
        choose_schedule(&pc)
    };
    let removed = schedule.removed_count(&pc);
    let file = PlanFile {
        schedule: schedule.clone(),
        removed,
        fold_symmetric: fold,
    };
    b.manifest.schedule = Some(schedule);
    b.save(dir)?;
    write_json(&out.unwrap_or_else(|| dir.join("plan.json")), &file)?;
    println!("removes {removed}");
    Ok(())
}

fn reduce(dir: &Path, plan_path: Option<PathBuf>, out: &Path) -> Result<()> {
    let b = Bundle::load(dir)?;
    if !b.code.layout.is_full() {
        bail!("reduce expects an unreduced bundle");
    }
    let file: PlanFile = read_json(&plan_path.unwrap_or_else(|| dir.join("plan.json")))?;
    let product = b.product()?;
    let pc = b.product_coloring(&product)?;
    let plan = build_reduction(&product, &pc, &file.schedule)?;
    let mut red = apply_reduction(&product, &plan)?;
    red.name = format!("{}-reduced", b.manifest.name);
    let report = weight_report(&product, &red)?;
    let mut rb = Bundle::new(red, b.h1.clone(), b.h2.clone(), b.manifest.provenance.clone());
    rb.manifest.coloring = b.manifest.coloring.clone();
    rb.manifest.schedule = Some(file.schedule.clone());
    rb.manifest.plan_hash = Some(plan.digest());
    rb.save(out)?;
    write_json(&out.join("plan.json"), &file)?;
    write_json(&out.join("weight_report.json"), &report)?;
    let red = &rb.code;
    let d = red.d_x.zip(red.d_z).map(|(x, z)| x.value().min(z.value()));
    let upper = [&red.logical_x, &red.logical_z]
        .into_iter()
        .flatten()
        .filter_map(|l| l.row_weights().into_iter().min())
        .min();
    let tag = match (d, upper) {
        (Some(d), Some(u)) if d == u => "certified-upper",
        _ => "carried",
    };
    println!(
        "{} → {} qubits, {} logicals, d={} ({tag})",
        product.n(),
        red.n(),
        red.k(),
        d.map_or("?".into(), |d| d.to_string())
    );
    Ok(())
}

fn verify(before: &Path, after: &Path, out: Option<PathBuf>, seed: u64) -> Result<()> {
    let b = Bundle::load(before)?;
    let a = Bundle::load(after)?;
    let report = verify_all(&b.code, &a.code, seed)?;
    emit_json(out.as_deref(), &report)?;
    if !report.pass {
        return Err(verification_failed("verification failed"));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct ScheduleFile {
    code_hash: String,
    kind: String,
    seed: Option<u64>,
    x_rounds: Vec<Vec<(usize, usize)>>,
    z_rounds: Vec<Vec<(usize, usize)>>,
}

fn plan_of(b: &Bundle) -> Result<ReductionPlan> {
    if b.code.layout.is_full() {
        Ok(ReductionPlan::identity(&b.code)?)
    } else {
        Ok(b.reduction_plan()?.1)
    }
}

fn schedule(dir: &Path, split: bool, random: bool, seed: u64, out: Option<PathBuf>) -> Result<()> {
    if split == random {
        bail!("choose exactly one of --split and --random");
    }
    let b = Bundle::load(dir)?;
    let s = if split {
        split_schedule(&b.code, &plan_of(&b)?)?
    } else {
        random_schedule(&b.code, seed)
    };
    s.validate(&b.code)?;
    let file = ScheduleFile {
        code_hash: code_hash(&b.code),
        kind: if split { "split".into() } else { "random".into() },
        seed: random.then_some(seed),
        x_rounds: s.x_rounds,
        z_rounds: s.z_rounds,
    };
    emit_json(out.as_deref(), &file)
}

#[derive(Serialize)]
struct HookReport {
    code_hash: String,
    schedule: String,
    x_hooks: usize,
    z_hooks: usize,
    x_max_lines: usize,
    z_max_lines: usize,
    multi_line: Vec<hgp_reduce::sescheduler::HookFault>,
    probe_x: Option<ProbeResult>,
    probe_z: Option<ProbeResult>,
}

fn hooks(dir: &Path, schedule_path: &Path, probe: usize, out: Option<PathBuf>) -> Result<()> {
    let b = Bundle::load(dir)?;
    let file: ScheduleFile = read_json(schedule_path)?;
    let hash = code_hash(&b.code);
    if file.code_hash != hash {
        bail!("schedule was made for a different code");
    }
    let s = CnotSchedule {
        x_rounds: file.x_rounds,
        z_rounds: file.z_rounds,
    };
    s.validate(&b.code)?;
    let hx = enumerate_hooks(&b.code, &s, Pauli::X);
    let hz = enumerate_hooks(&b.code, &s, Pauli::Z);
    let max = |h: &[hgp_reduce::sescheduler::HookFault]| h.iter().map(|f| f.lines).max().unwrap_or(0);
    let (probe_x, probe_z) = if probe > 0 {
        (
            Some(effective_distance_probe(&b.code, &s, Pauli::X, probe)?),
            Some(effective_distance_probe(&b.code, &s, Pauli::Z, probe)?),
        )
    } else {
        (None, None)
    };
    let report = HookReport {
        code_hash: hash,
        schedule: file.kind,
        x_hooks: hx.len(),
        z_hooks: hz.len(),
        x_max_lines: max(&hx),
        z_max_lines: max(&hz),
        multi_line: hx.iter().chain(&hz).filter(|f| f.lines > 1).cloned().collect(),
        probe_x,
        probe_z,
    };
    emit_json(out.as_deref(), &report)
}

#[derive(Serialize)]
struct ChainReport {
    kind: String,
    bits: Vec<usize>,
    k_original: usize,
    k_modified: usize,
    unreduced_commutes: bool,
    reduced_commutes: bool,
    selection_relation: Option<bool>,
}

fn save_map(dir: &Path, prefix: &str, map: &ChainMap) -> Result<()> {
    for (name, m) in [("gamma_x", &map.gamma_x), ("gamma_q", &map.gamma_q), ("gamma_z", &map.gamma_z)] {
        write_matrix(&dir.join(format!("{prefix}{name}.alist")), m)?;
    }
    Ok(())
}

fn chainmap(args: ChainmapArgs) -> Result<()> {
    let b = Bundle::load(&args.code)?;
    let (c1, c2) = (&b.h1, &b.h2);
    let q = prepare_hgp(c1, c2)?;
    let col1 = color_code(c1, 0);
    let g2 = canonical_generator(c2)?;
    let bits: Vec<usize> = args
        .bits
        .iter()
        .map(|&r| {
            g2.info_bits
                .get(r)
                .copied()
                .with_context(|| format!("the second code has only {} informational bits", g2.info_bits.len()))
        })
        .collect::<Result<_>>()?;
    let (modified, col2, col2_mod) = match args.kind {
        ChainKind::Augment => {
            let row = BitMatrix::from_supports(1, c2.n(), &[bits.clone()])?;
            let aug = augment(c2, &row)?;
            let col_aug = color_code(&aug, 0);
            (aug, restrict_coloring(&col_aug, c2.m()), col_aug)
        }
        ChainKind::Puncture => {
            let col = color_code(c2, 0);
            (puncture(c2, &bits)?, col.clone(), col)
        }
    };
    let qm = prepare_hgp(c1, &modified)?;
    let pc = product_coloring(&col1, &col2, &q)?;
    let pcm = product_coloring(&col1, &col2_mod, &qm)?;
    let schedule = match args.kind {
        ChainKind::Augment => choose_schedule(&pcm),
        ChainKind::Puncture => choose_schedule(&pc),
    };
    let plan = build_reduction(&q, &pc, &schedule)?;
    let plan_m = build_reduction(&qm, &pcm, &schedule)?;
    let rq = apply_reduction(&q, &plan)?;
    let rqm = apply_reduction(&qm, &plan_m)?;
    let (map, map_r) = match args.kind {
        ChainKind::Augment => (build_aug_chain_map(&q, &qm), build_aug_chain_map(&rq, &rqm)),
        ChainKind::Puncture => (
            build_punc_chain_map(&q, &qm, &bits),
            build_punc_chain_map(&rq, &rqm, &bits),
        ),
    };
    fs::create_dir_all(&args.out)?;
    let unreduced_commutes = map.as_ref().map_or(false, hgp_reduce::homomorphism::verify_chain_map);
    let reduced_commutes = map_r.as_ref().map_or(false, hgp_reduce::homomorphism::verify_chain_map);
    let selection_relation = match (&args.kind, &map, &map_r) {
        (ChainKind::Puncture, Ok(m), Ok(mr)) => Some(
            hgp_reduce::homomorphism::selection_relation_holds(&plan.v, &plan_m.v, &m.gamma_q, &mr.gamma_q)?,
        ),
        _ => None,
    };
    if let Ok(m) = &map {
        save_map(&args.out, "", m)?;
    }
    if let Ok(m) = &map_r {
        save_map(&args.out, "reduced_", m)?;
    }
    let report = ChainReport {
        kind: match args.kind {
            ChainKind::Augment => "augment".into(),
            ChainKind::Puncture => "puncture".into(),
        },
        bits,
        k_original: rq.k(),
        k_modified: rqm.k(),
        unreduced_commutes,
        reduced_commutes,
        selection_relation,
    };
    write_json(&args.out.join("manifest.json"), &report)?;
    println!(
        "{} logicals → {}; squares commute: {} / {}",
        report.k_original, report.k_modified, unreduced_commutes, reduced_commutes
    );
    if !(unreduced_commutes && reduced_commutes && selection_relation.unwrap_or(true)) {
        return Err(verification_failed("chain map verification failed"));
    }
    Ok(())
}

#[derive(Serialize)]
struct SimRow {
    p: f64,
    shots: usize,
    failures: usize,
    bler: f64,
    ci_low: f64,
    ci_high: f64,
}

#[derive(Serialize)]
struct SimSummary {
    code: String,
    code_hash: String,
    rounds: usize,
    seed: u64,
    schedule: String,
    results: Vec<SimRow>,
}

fn simulate(
    dir: &Path,
    ps: &[f64],
    shots: usize,
    seed: u64,
    rounds: Option<usize>,
    csv: Option<PathBuf>,
    summary: Option<PathBuf>,
) -> Result<()> {
    let b = Bundle::load(dir)?;
    let d = b.code.d_x.zip(b.code.d_z).map(|(x, z)| x.value().min(z.value()));
    let rounds = match (rounds, d) {
        (Some(r), _) => r,
        (None, Some(d)) => d + 1,
        (None, None) => bail!("distance unknown; pass --rounds"),
    };
    let mut rows = Vec::new();
    let mut text = String::from("p,shots,failures,bler,ci_low,ci_high,code,schedule\n");
    for &p in ps {
        let noise = NoiseModel::new(p, p, rounds)?;
        let r = run_memory(&b.code, &noise, shots, seed)?;
        text.push_str(&format!(
            "{p},{},{},{},{},{},{},phenomenological\n",
            r.shots, r.failures, r.bler, r.ci_low, r.ci_high, b.manifest.name
        ));
        rows.push(SimRow {
            p,
            shots: r.shots,
            failures: r.failures,
            bler: r.bler,
            ci_low: r.ci_low,
            ci_high: r.ci_high,
        });
    }
    match csv {
        Some(path) => fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    if let Some(path) = summary {
        write_json(
            &path,
            &SimSummary {
                code: b.manifest.name.clone(),
                code_hash: code_hash(&b.code),
                rounds,
                seed,
                schedule: "phenomenological".into(),
                results: rows,
            },
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonExport<'a> {
    name: &'a str,
    code_hash: String,
    n: usize,
    k: usize,
    hx: &'a BitMatrix,
    hz: &'a BitMatrix,
    logical_x: Option<&'a BitMatrix>,
    logical_z: Option<&'a BitMatrix>,
}

fn export(dir: &Path, format: ExportFormat, out: &Path) -> Result<()> {
    let b = Bundle::load(dir)?;
    let code: &CssCode = &b.code;
    match format {
        ExportFormat::Alist => {
            fs::create_dir_all(out)?;
            write_matrix(&out.join("hx.alist"), &code.hx)?;
            write_matrix(&out.join("hz.alist"), &code.hz)?;
        }
        ExportFormat::Json => write_json(
            out,
            &JsonExport {
                name: &b.manifest.name,
                code_hash: code_hash(code),
                n: code.n(),
                k: code.k(),
                hx: &code.hx,
                hz: &code.hz,
                logical_x: code.logical_x.as_ref(),
                logical_z: code.logical_z.as_ref(),
            },
        )?,
    }
    Ok(())
}
