//! Search for the parameters where a bound is closest to equality.
//!
//! The objective is `ratio = lhs / rhs` over points whose hypotheses hold. A coarse
//! grid seeds a compass search that halves its step on every failed sweep.

use serde::{Deserialize, Serialize};

use crate::config::ModelSpec;
use crate::evaluate::{evaluate_proposition, evaluate_theorem, EvalSettings, HypothesisCache, PairContext};
use crate::record::{BoundRecord, TheoremTag, Verdict};
use crate::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamBox {
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub s: [f64; 2],
    pub q: [f64; 2],
}

impl ParamBox {
    fn bounds(&self) -> [[f64; 2]; 4] {
        [self.a, self.b, self.s, self.q]
    }

    fn validate(&self) -> Result<()> {
        for (name, [lo, hi]) in ["a", "b", "s", "q"].into_iter().zip(self.bounds()) {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(HarnessError::config(format!("box.{name}"), "need finite lo <= hi"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchPoint {
    pub a: f64,
    pub b: f64,
    pub s: Option<f64>,
    pub q: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightnessResult {
    pub theorem: TheoremTag,
    pub argmax: SearchPoint,
    pub max_ratio: f64,
    pub record: BoundRecord,
    pub evaluations: usize,
    pub feasible_evaluations: usize,
    /// Some feasible point had `lhs > rhs`.
    pub violation_found: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchSettings {
    /// Points per active dimension in the seeding grid.
    pub coarse_points: usize,
    pub max_iterations: usize,
    /// Stop once every step is below this fraction of its box width.
    pub min_step: f64,
}

impl Default for SearchSettings {
    fn default() -> Self {
        Self {
            coarse_points: 5,
            max_iterations: 200,
            min_step: 1e-6,
        }
    }
}

fn uses_s(tag: TheoremTag) -> bool {
    !matches!(tag, TheoremTag::Eq8 | TheoremTag::Eq9)
}

fn uses_q(tag: TheoremTag) -> bool {
    !matches!(tag, TheoremTag::Eq8 | TheoremTag::Eq10 | TheoremTag::Prop41)
}

struct Objective<'a> {
    tag: TheoremTag,
    model: Option<hadamard_core::Model64>,
    settings: &'a EvalSettings,
    evaluations: usize,
    feasible: usize,
    violation: bool,
}

impl Objective<'_> {
    fn point(&self, x: [f64; 4]) -> SearchPoint {
        SearchPoint {
            a: x[0],
            b: x[1],
            s: uses_s(self.tag).then_some(x[2]),
            q: uses_q(self.tag).then_some(x[3]),
        }
    }

    /// Ratio at a feasible point, `None` otherwise.
    fn eval(&mut self, x: [f64; 4]) -> Option<(f64, BoundRecord)> {
        let p = self.point(x);
        if !(p.a < p.b) {
            return None;
        }
        self.evaluations += 1;
        let rec = match &self.model {
            Some(m) => {
                let ctx = PairContext::compute(m, p.a, p.b, self.settings);
                let mut cache = HypothesisCache::new();
                evaluate_theorem(self.tag, m, p.a, p.b, p.s, p.q, &ctx, &mut cache, self.settings)
            }
            None => evaluate_proposition(self.tag, p.a, p.b, x[2], p.q, self.settings),
        };
        match rec.verdict {
            Verdict::Pass | Verdict::Violation => {
                self.feasible += 1;
                self.violation |= rec.verdict == Verdict::Violation;
                Some((rec.ratio?, rec))
            }
            _ => None,
        }
    }
}

fn lerp([lo, hi]: [f64; 2], i: usize, n: usize) -> f64 {
    if n <= 1 || lo == hi {
        0.5 * (lo + hi)
    } else {
        lo + (hi - lo) * i as f64 / (n - 1) as f64
    }
}

/// Maximizes `lhs / rhs` of `tag` over `bx`, restricted to points satisfying the hypotheses.
///
/// `model` is required for `eq8`..`eq111`; the propositions use the power model
/// with exponent `s` and ignore it.
pub fn optimize_tightness(
    tag: TheoremTag,
    model: Option<&ModelSpec>,
    bx: &ParamBox,
    settings: &EvalSettings,
    search: &SearchSettings,
) -> Result<TightnessResult> {
    bx.validate()?;
    let model = if tag.is_proposition() {
        None
    } else {
        let spec = model.ok_or_else(|| HarnessError::config("model", format!("{tag} needs a model")))?;
        Some(spec.build()?)
    };
    let mut obj = Objective {
        tag,
        model,
        settings,
        evaluations: 0,
        feasible: 0,
        violation: false,
    };
    let bounds = bx.bounds();
    let active = [true, true, uses_s(tag), uses_q(tag)];
    let counts: Vec<usize> = active
        .iter()
        .zip(bounds)
        .map(|(&on, [lo, hi])| if on && lo < hi { search.coarse_points.max(2) } else { 1 })
        .collect();

    let mut best: Option<([f64; 4], f64, BoundRecord)> = None;
    let consider = |x: [f64; 4], obj: &mut Objective, best: &mut Option<([f64; 4], f64, BoundRecord)>| {
        if let Some((r, rec)) = obj.eval(x) {
            if best.as_ref().is_none_or(|b| r > b.1) {
                *best = Some((x, r, rec));
                return true;
            }
        }
        false
    };
    for i in 0..counts[0] {
        for j in 0..counts[1] {
            for k in 0..counts[2] {
                for l in 0..counts[3] {
                    let x = [
                        lerp(bounds[0], i, counts[0]),
                        lerp(bounds[1], j, counts[1]),
                        lerp(bounds[2], k, counts[2]),
                        lerp(bounds[3], l, counts[3]),
                    ];
                    consider(x, &mut obj, &mut best);
                }
            }
        }
    }
    if best.is_none() {
        return Err(HarnessError::EmptyFeasibleSet(tag));
    }

    let width: Vec<f64> = bounds.iter().map(|[lo, hi]| hi - lo).collect();
    let mut step: Vec<f64> = width.iter().map(|w| 0.25 * w).collect();
    for _ in 0..search.max_iterations {
        let centre = best.as_ref().expect("seeded").0;
        let mut improved = false;
        for d in (0..4).filter(|&d| active[d] && width[d] > 0.0) {
            for sign in [1.0, -1.0] {
                let mut x = centre;
                x[d] = (x[d] + sign * step[d]).clamp(bounds[d][0], bounds[d][1]);
                if x[d] != centre[d] && consider(x, &mut obj, &mut best) {
                    improved = true;
                    break;
                }
            }
            if improved {
                break;
            }
        }
        if !improved {
            step.iter_mut().for_each(|s| *s *= 0.5);
            if (0..4).all(|d| width[d] == 0.0 || step[d] < search.min_step * width[d]) {
                break;
            }
        }
    }

    let (x, max_ratio, record) = best.expect("seeded");
    Ok(TightnessResult {
        theorem: tag,
        argmax: obj.point(x),
        max_ratio,
        record,
        evaluations: obj.evaluations,
        feasible_evaluations: obj.feasible,
        violation_found: obj.violation,
    })
}
