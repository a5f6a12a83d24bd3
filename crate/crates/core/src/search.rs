//! Exchange search over `D(b, v, k)` for primals with a small weighted sum
//! of A-criteria.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::criteria::{a_criteria, intrablock};
use crate::design::{AugmentationSpec, BlockDesign};
use crate::error::{Error, Result};

const START_ATTEMPTS: usize = 1000;
const IMPROVEMENT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    /// Weights on `(A_cc, A_tt(s), A_ct)`.
    pub weights: [f64; 3],
    pub s: AugmentationSpec,
    pub restarts: usize,
    pub max_passes: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            weights: [1.0, 1.0, 1.0],
            s: AugmentationSpec::Common(1),
            restarts: 20,
            max_passes: 100,
            seed: 0,
        }
    }
}

impl SearchConfig {
    fn validate(&self) -> Result<()> {
        if self.weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidParameters(
                "weights must be finite and nonnegative".into(),
            ));
        }
        if self.weights.iter().all(|&w| w == 0.0) {
            return Err(Error::InvalidParameters(
                "at least one weight must be positive".into(),
            ));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidParameters(
                "restarts must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Restart {
    pub seed: u64,
    /// Objective after the start and after every accepted move.
    pub trace: Vec<f64>,
    pub passes: usize,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub design: BlockDesign,
    pub objective: f64,
    /// Index into `restarts` of the run that produced `design`.
    pub best_restart: usize,
    pub restarts: Vec<Restart>,
}

pub fn objective(d: &BlockDesign, cfg: &SearchConfig) -> Result<f64> {
    let ib = intrablock::<f64>(d)?;
    let a = a_criteria(&ib, d, &cfg.s)?;
    let [wc, wt, wx] = cfg.weights;
    Ok(wc * a.cc + wt * a.tt + wx * a.ct)
}

/// Uniform k-multiset over `1..=v` via stars and bars.
fn random_block(rng: &mut ChaCha8Rng, v: usize, k: usize) -> Vec<usize> {
    let mut bars = sample(rng, v + k - 1, k).into_vec();
    bars.sort_unstable();
    bars.iter()
        .enumerate()
        .map(|(pos, &x)| x - pos + 1)
        .collect()
}

fn random_connected(rng: &mut ChaCha8Rng, b: usize, v: usize, k: usize) -> Result<BlockDesign> {
    for _ in 0..START_ATTEMPTS {
        let blocks = (0..b).map(|_| random_block(rng, v, k)).collect();
        let d = BlockDesign::from_blocks(v, blocks)?;
        if d.is_connected() {
            return Ok(d);
        }
    }
    Err(Error::NoConnectedStart(START_ATTEMPTS))
}

/// First-improvement exchange search. Each move replaces one treatment
/// occurrence in one block by another treatment; moves that disconnect the
/// design are skipped and only strict decreases are accepted. A restart ends
/// after a pass without improvement or after `max_passes` passes. Restart
/// `r` is seeded with `seed + r`; the best objective wins, earliest restart
/// on ties.
pub fn exchange_search(b: usize, v: usize, k: usize, cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    if b < 2 || v < 2 || k < 2 || b * k <= v {
        return Err(Error::InvalidParameters(format!(
            "need b, v, k >= 2 and bk > v, got ({b}, {v}, {k})"
        )));
    }
    cfg.s.validate(b)?;
    let mut best: Option<(BlockDesign, f64, usize)> = None;
    let mut restarts = Vec::with_capacity(cfg.restarts);
    for r in 0..cfg.restarts {
        let seed = cfg.seed.wrapping_add(r as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (design, value, run) = descend(random_connected(&mut rng, b, v, k)?, cfg, seed)?;
        if best.as_ref().is_none_or(|(_, bv, _)| value < *bv) {
            best = Some((design, value, r));
        }
        restarts.push(run);
    }
    let (design, objective, best_restart) = best.expect("restarts >= 1");
    Ok(SearchOutcome {
        design,
        objective,
        best_restart,
        restarts,
    })
}

fn descend(
    start: BlockDesign,
    cfg: &SearchConfig,
    seed: u64,
) -> Result<(BlockDesign, f64, Restart)> {
    let (b, v) = (start.b(), start.v());
    let mut blocks = start.blocks().to_vec();
    let mut current = start;
    let mut value = objective(&current, cfg)?;
    let mut trace = vec![value];
    let mut passes = 0;
    while passes < cfg.max_passes {
        passes += 1;
        let mut improved = false;
        for j in 0..b {
            for pos in 0..blocks[j].len() {
                let old = blocks[j][pos];
                // equal labels in one block give identical moves
                if pos > 0 && blocks[j][pos - 1] == old {
                    continue;
                }
                for t in (1..=v).filter(|&t| t != old) {
                    let mut trial = blocks.clone();
                    trial[j][pos] = t;
                    let cand = BlockDesign::from_blocks(v, trial)?;
                    if !cand.is_connected() {
                        continue;
                    }
                    let cv = objective(&cand, cfg)?;
                    if cv < value - IMPROVEMENT_TOL {
                        value = cv;
                        trace.push(cv);
                        blocks = cand.blocks().to_vec();
                        current = cand;
                        improved = true;
                        break;
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }
    Ok((
        current,
        value,
        Restart {
            seed,
            trace,
            passes,
        },
    ))
}
