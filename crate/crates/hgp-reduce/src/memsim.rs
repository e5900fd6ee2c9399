//! Phenomenological Z-memory: noisy syndrome rounds, a spacetime decoding
//! graph and a normalized min-sum decoder.
//!
//! Variables are data flips `(q, t)` at index `t·n + q` for `t < rounds`,
//! followed by measurement flips `(c, t)` at `rounds·n + t·m + c` for
//! `t < rounds − 1`. The last round is read out noiselessly. Detector `(c, t)`
//! at index `t·m + c` compares rounds `t − 1` and `t`.

use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gf2::{BitMatrix, BitVec};
use crate::hgp::CssCode;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel<F> {
    pub p_data: F,
    pub p_meas: F,
    pub rounds: usize,
}

impl<F: Float> NoiseModel<F> {
    pub fn new(p_data: F, p_meas: F, rounds: usize) -> Result<Self> {
        let half = F::from(0.5).unwrap();
        for p in [p_data, p_meas] {
            if !(p >= F::zero() && p <= half) {
                return Err(Error::InvalidInput("probabilities must lie in [0, 0.5]".into()));
            }
        }
        if rounds == 0 {
            return Err(Error::InvalidInput("at least one round".into()));
        }
        Ok(NoiseModel {
            p_data,
            p_meas,
            rounds,
        })
    }

    /// Data and measurement flips at rate `p` over `d + 1` rounds.
    pub fn uniform(p: F, d: usize) -> Result<Self> {
        Self::new(p, p, d + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecodingGraph<F> {
    /// Detectors × variables.
    pub h: BitMatrix,
    /// Logical flips caused by each variable.
    pub logical: BitMatrix,
    pub priors: Vec<F>,
    pub n: usize,
    pub m: usize,
    pub rounds: usize,
    check_nbrs: Vec<Vec<usize>>,
}

impl<F> DecodingGraph<F> {
    pub fn num_vars(&self) -> usize {
        self.h.cols()
    }

    pub fn num_data_vars(&self) -> usize {
        self.n * self.rounds
    }
}

pub fn build_decoding_graph<F: Float>(code: &CssCode, noise: &NoiseModel<F>) -> Result<DecodingGraph<F>> {
    let lz = code
        .logical_z
        .as_ref()
        .ok_or_else(|| Error::InvalidInput(format!("{} carries no logical basis", code.name)))?;
    let (n, m, rounds) = (code.n(), code.hz.rows(), noise.rounds);
    let vars = n * rounds + m * (rounds - 1);
    let mut h = BitMatrix::zeros(m * rounds, vars);
    for t in 0..rounds {
        for c in 0..m {
            for q in code.hz.row_ones(c) {
                h.set(t * m + c, t * n + q, true);
            }
        }
    }
    for t in 0..rounds - 1 {
        for c in 0..m {
            let v = rounds * n + t * m + c;
            h.set(t * m + c, v, true);
            h.set((t + 1) * m + c, v, true);
        }
    }
    let mut logical = BitMatrix::zeros(lz.rows(), vars);
    for r in 0..lz.rows() {
        for q in lz.row_ones(r) {
            for t in 0..rounds {
                logical.set(r, t * n + q, true);
            }
        }
    }
    let degrees = h.col_weights();
    let mean = |range: std::ops::Range<usize>, len: usize| -> F {
        if len == 0 {
            return F::one();
        }
        let s: usize = degrees[range].iter().sum();
        F::from(s).unwrap() / F::from(len).unwrap()
    };
    let mean_data = mean(0..n * rounds, n * rounds);
    let mean_meas = mean(n * rounds..vars, vars - n * rounds);
    let lo = F::from(1e-9).unwrap();
    let hi = F::from(0.49).unwrap();
    let priors = (0..vars)
        .map(|v| {
            let (p, mean) = if v < n * rounds {
                (noise.p_data, mean_data)
            } else {
                (noise.p_meas, mean_meas)
            };
            (p * F::from(degrees[v]).unwrap() / mean).max(lo).min(hi)
        })
        .collect();
    let check_nbrs = (0..h.rows()).map(|c| h.row_ones(c)).collect();
    Ok(DecodingGraph {
        h,
        logical,
        priors,
        n,
        m,
        rounds,
        check_nbrs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub error: BitVec,
    pub detectors: BitVec,
    pub flips: BitVec,
}

/// One shot: independent flips per variable, detectors and true logical flips.
pub fn sample<F: Float, R: Rng>(graph: &DecodingGraph<F>, noise: &NoiseModel<F>, rng: &mut R) -> Result<Sample> {
    let pd = noise.p_data.to_f64().unwrap_or(0.0);
    let pm = noise.p_meas.to_f64().unwrap_or(0.0);
    let data = graph.num_data_vars();
    let mut error = BitVec::zeros(graph.num_vars());
    for v in 0..graph.num_vars() {
        let p = if v < data { pd } else { pm };
        if p > 0.0 && rng.gen::<f64>() < p {
            error.set(v, true);
        }
    }
    let detectors = graph.h.mul_vec(&error)?;
    let flips = graph.logical.mul_vec(&error)?;
    Ok(Sample {
        error,
        detectors,
        flips,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpOutput {
    pub correction: BitVec,
    pub converged: bool,
    pub iterations: usize,
}

/// Normalized min-sum with checks updated serially. `converged` implies
/// `H·correction = syndrome`.
pub fn bp_decode<F: Float>(
    graph: &DecodingGraph<F>,
    syndrome: &BitVec,
    max_iters: usize,
    normalization: F,
) -> BpOutput {
    let vars = graph.num_vars();
    let mut post: Vec<F> = graph
        .priors
        .iter()
        .map(|&p| ((F::one() - p) / p).ln())
        .collect();
    let mut msgs: Vec<Vec<F>> = graph.check_nbrs.iter().map(|nb| vec![F::zero(); nb.len()]).collect();
    let mut correction = BitVec::zeros(vars);
    if syndrome.is_zero() {
        return BpOutput {
            correction,
            converged: true,
            iterations: 0,
        };
    }
    let mut incoming: Vec<F> = Vec::new();
    for iter in 1..=max_iters {
        for (c, nbrs) in graph.check_nbrs.iter().enumerate() {
            incoming.clear();
            let mut negative = syndrome.get(c);
            let (mut min1, mut min2, mut arg) = (F::infinity(), F::infinity(), usize::MAX);
            for (e, &v) in nbrs.iter().enumerate() {
                let q = post[v] - msgs[c][e];
                incoming.push(q);
                if q < F::zero() {
                    negative = !negative;
                }
                let a = q.abs();
                if a < min1 {
                    min2 = min1;
                    min1 = a;
                    arg = e;
                } else if a < min2 {
                    min2 = a;
                }
            }
            for (e, &v) in nbrs.iter().enumerate() {
                let q = incoming[e];
                let mag = if e == arg { min2 } else { min1 };
                let flip = negative ^ (q < F::zero());
                let r = normalization * if flip { -mag } else { mag };
                msgs[c][e] = r;
                post[v] = q + r;
            }
        }
        for v in 0..vars {
            correction.set(v, post[v] < F::zero());
        }
        if graph.h.mul_vec(&correction).map_or(false, |s| s == *syndrome) {
            return BpOutput {
                correction,
                converged: true,
                iterations: iter,
            };
        }
    }
    BpOutput {
        correction,
        converged: false,
        iterations: max_iters,
    }
}

pub const NORMALIZATION: f64 = 0.8;
pub const MAX_ITERS: usize = 60;

/// True when the decoder failed on this shot.
pub fn is_failure<F: Float>(graph: &DecodingGraph<F>, shot: &Sample, out: &BpOutput) -> bool {
    if !out.converged {
        return true;
    }
    let residual = shot.error.xor(&out.correction);
    graph.logical.mul_vec(&residual).map_or(true, |f| !f.is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialResult<F> {
    pub shots: usize,
    pub failures: usize,
    pub bler: F,
    pub ci_low: F,
    pub ci_high: F,
}

/// Wilson score interval at 95%.
pub fn wilson_interval<F: Float>(failures: usize, shots: usize) -> (F, F) {
    if shots == 0 {
        return (F::zero(), F::one());
    }
    let z = F::from(1.959963984540054).unwrap();
    let n = F::from(shots).unwrap();
    let p = F::from(failures).unwrap() / n;
    let two = F::from(2.0).unwrap();
    let four = F::from(4.0).unwrap();
    let denom = F::one() + z * z / n;
    let center = (p + z * z / (two * n)) / denom;
    let half = z * (p * (F::one() - p) / n + z * z / (four * n * n)).sqrt() / denom;
    let lo = if failures == 0 { F::zero() } else { (center - half).max(F::zero()) };
    let hi = if failures == shots { F::one() } else { (center + half).min(F::one()) };
    (lo, hi)
}

const CHUNK: usize = 256;

/// Monte Carlo over `shots`; chunk `i` draws from stream `i` of the seeded
/// generator, so the result does not depend on the thread count.
pub fn run_memory<F>(code: &CssCode, noise: &NoiseModel<F>, shots: usize, seed: u64) -> Result<TrialResult<F>>
where
    F: Float + Send + Sync,
{
    let graph = build_decoding_graph(code, noise)?;
    let norm = F::from(NORMALIZATION).unwrap();
    let chunks = shots.div_ceil(CHUNK);
    let failures = (0..chunks)
        .into_par_iter()
        .map(|i| -> Result<usize> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let count = CHUNK.min(shots - i * CHUNK);
            let mut fails = 0;
            for _ in 0..count {
                let shot = sample(&graph, noise, &mut rng)?;
                let out = bp_decode(&graph, &shot.detectors, MAX_ITERS, norm);
                fails += is_failure(&graph, &shot, &out) as usize;
            }
            Ok(fails)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let (ci_low, ci_high) = wilson_interval(failures, shots);
    let bler = if shots == 0 {
        F::zero()
    } else {
        F::from(failures).unwrap() / F::from(shots).unwrap()
    };
    Ok(TrialResult {
        shots,
        failures,
        bler,
        ci_low,
        ci_high,
    })
}
