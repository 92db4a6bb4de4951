//! Expands a [`SweepConfig`] into records.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{ModelSpec, SweepConfig};
use crate::evaluate::{evaluate_proposition, evaluate_theorem, EvalSettings, HypothesisCache, PairContext};
use crate::record::{BoundRecord, TheoremTag};
use crate::{HarnessError, Result};

const MODEL_THEOREMS: [TheoremTag; 5] = [
    TheoremTag::Eq8,
    TheoremTag::Eq9,
    TheoremTag::Eq10,
    TheoremTag::Eq11,
    TheoremTag::Eq111,
];

const PROPOSITIONS: [TheoremTag; 3] = [TheoremTag::Prop41, TheoremTag::Prop32, TheoremTag::Prop33];

/// `(a, b)` pairs for one model: grid pairs inside the domain plus seeded random pairs.
pub fn model_pairs(spec: &ModelSpec, index: usize, cfg: &SweepConfig) -> Vec<(f64, f64)> {
    let [lo, hi] = spec.domain();
    let mut pairs: Vec<(f64, f64)> = cfg
        .a_grid
        .iter()
        .flat_map(|&a| cfg.b_grid.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| a < b && lo <= a && b <= hi)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(index as u64));
    for _ in 0..cfg.random_pairs {
        let x: f64 = rng.gen_range(lo..hi);
        let y: f64 = rng.gen_range(lo..hi);
        if x != y {
            pairs.push((x.min(y), x.max(y)));
        }
    }
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
    pairs.dedup();
    pairs
}

/// `(a, b)` pairs for the propositions: grid pairs with `0 < a < b <= 1`.
pub fn proposition_pairs(cfg: &SweepConfig) -> Vec<(f64, f64)> {
    let mut pairs: Vec<(f64, f64)> = cfg
        .a_grid
        .iter()
        .flat_map(|&a| cfg.b_grid.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| 0.0 < a && a < b && b <= 1.0)
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
    pairs.dedup();
    pairs
}

fn pair_records(
    model: &hadamard_core::Model64,
    a: f64,
    b: f64,
    cfg: &SweepConfig,
    settings: &EvalSettings,
) -> Vec<BoundRecord> {
    let ctx = PairContext::compute(model, a, b, settings);
    let mut cache = HypothesisCache::new();
    let mut out = Vec::new();
    for tag in MODEL_THEOREMS.into_iter().filter(|t| cfg.theorem_enabled(*t)) {
        let mut eval = |s: Option<f64>, q: Option<f64>| {
            out.push(evaluate_theorem(tag, model, a, b, s, q, &ctx, &mut cache, settings));
        };
        match tag {
            TheoremTag::Eq8 => eval(None, None),
            TheoremTag::Eq9 => cfg.q_grid.iter().filter(|&&q| q > 1.0).for_each(|&q| eval(None, Some(q))),
            TheoremTag::Eq10 => cfg.s_grid.iter().for_each(|&s| eval(Some(s), None)),
            TheoremTag::Eq11 | TheoremTag::Eq111 => {
                let strict = tag == TheoremTag::Eq11;
                for &s in &cfg.s_grid {
                    for &q in cfg.q_grid.iter().filter(|&&q| q > 1.0 || !strict) {
                        eval(Some(s), Some(q));
                    }
                }
            }
            _ => unreachable!("propositions are expanded separately"),
        }
    }
    out
}

/// Runs every configured evaluation and returns records in canonical order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<BoundRecord>> {
    cfg.validate()?;
    let settings = EvalSettings {
        tolerances: cfg.tolerances,
        grid_points: cfg.grid_points,
    };
    let models = cfg
        .models
        .iter()
        .enumerate()
        .map(|(i, spec)| {
            spec.build()
                .map_err(|e| HarnessError::config(format!("models[{i}]"), e.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut jobs: Vec<(usize, f64, f64)> = Vec::new();
    for (i, spec) in cfg.models.iter().enumerate() {
        jobs.extend(model_pairs(spec, i, cfg).into_iter().map(|(a, b)| (i, a, b)));
    }
    let mut records: Vec<BoundRecord> = jobs
        .par_iter()
        .flat_map_iter(|&(i, a, b)| pair_records(&models[i], a, b, cfg, &settings))
        .collect();

    if cfg.propositions {
        let mut prop_jobs = Vec::new();
        for &s in cfg.s_grid.iter().filter(|&&s| s < 1.0) {
            for (a, b) in proposition_pairs(cfg) {
                for tag in PROPOSITIONS.into_iter().filter(|t| cfg.theorem_enabled(*t)) {
                    match tag {
                        TheoremTag::Prop41 => prop_jobs.push((tag, a, b, s, None)),
                        _ => {
                            let strict = tag == TheoremTag::Prop32;
                            for &q in cfg.q_grid.iter().filter(|&&q| q > 1.0 || !strict) {
                                prop_jobs.push((tag, a, b, s, Some(q)));
                            }
                        }
                    }
                }
            }
        }
        records.par_extend(
            prop_jobs
                .par_iter()
                .map(|&(tag, a, b, s, q)| evaluate_proposition(tag, a, b, s, q, &settings)),
        );
    }
    records.sort_by(BoundRecord::sort_key_cmp);
    Ok(records)
}
