//! Adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! The integrator keeps a max-heap of subintervals keyed by their local error
//! estimate `|K15 - G7|` and bisects the worst one until the summed estimate
//! drops below `max(abs_tol, rel_tol * |I|)`. No extrapolation is attempted, so
//! integrands with interior kinks must be split by the caller at the kink.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::model::FunctionModel;
use crate::{Real, Result};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("subdivision limit {subdivisions} reached; best estimate {best} with error {error_estimate}")]
    MaxSubdivisionsExceeded {
        best: f64,
        error_estimate: f64,
        subdivisions: usize,
    },
    #[error("integrand is not finite at x = {x}")]
    NonFiniteSample { x: f64 },
    #[error("invalid integration interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("tolerance must be positive")]
    InvalidTolerance,
}

/// Outcome of a successful integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub error_estimate: T,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 1_000_000,
        }
    }
}

impl QuadConfig {
    /// Absolute tolerance only.
    pub fn absolute(tol: f64) -> Self {
        Self {
            abs_tol: tol,
            rel_tol: 0.0,
            ..Self::default()
        }
    }

    /// Relative tolerance with a tiny absolute floor.
    pub fn relative(tol: f64) -> Self {
        Self {
            abs_tol: 1e-300,
            rel_tol: tol,
            ..Self::default()
        }
    }
}

// Kronrod 15-point abscissae (positive half, descending) and weights;
// the Gauss 7-point rule uses the odd-indexed nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Segment<T> {
    lo: T,
    hi: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: Real> Eq for Segment<T> {}
impl<T: Real> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Segment<T> {
    // ties broken on position so the heap order is fully deterministic
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.lo.partial_cmp(&self.lo).unwrap_or(Ordering::Equal))
    }
}

fn kronrod<T: Real, F: FnMut(T) -> T>(
    g: &mut F,
    lo: T,
    hi: T,
) -> std::result::Result<Segment<T>, QuadError> {
    let center = T::half() * (lo + hi);
    let half = T::half() * (hi - lo);
    let mut sample = |x: T| -> std::result::Result<T, QuadError> {
        let v = g(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(QuadError::NonFiniteSample { x: x.as_f64() })
        }
    };

    let fc = sample(center)?;
    let mut kron = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for (j, (&node, &wk)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * T::lit(node);
        let pair = sample(center - dx)? + sample(center + dx)?;
        kron = kron + pair * T::lit(wk);
        if j % 2 == 1 {
            gauss = gauss + pair * T::lit(WG[j / 2]);
        }
    }
    let value = kron * half;
    let error = ((kron - gauss) * half).abs();
    Ok(Segment {
        lo,
        hi,
        value,
        error,
    })
}

/// Integrates `g` over `[lo, hi]` with absolute tolerance `tol`.
pub fn integrate<T: Real, F: FnMut(T) -> T>(
    g: F,
    lo: T,
    hi: T,
    tol: f64,
) -> std::result::Result<QuadResult<T>, QuadError> {
    integrate_with(g, lo, hi, &QuadConfig::absolute(tol))
}

/// Integrates `g` over `[lo, hi]` under the given configuration.
pub fn integrate_with<T: Real, F: FnMut(T) -> T>(
    mut g: F,
    lo: T,
    hi: T,
    cfg: &QuadConfig,
) -> std::result::Result<QuadResult<T>, QuadError> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(QuadError::InvalidInterval {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        });
    }
    if !(cfg.abs_tol > 0.0 || cfg.rel_tol > 0.0) || cfg.abs_tol < 0.0 || cfg.rel_tol < 0.0 {
        return Err(QuadError::InvalidTolerance);
    }
    let abs_tol = T::lit(cfg.abs_tol);
    let rel_tol = T::lit(cfg.rel_tol);
    // relative floor tied to machine precision; below it bisection only adds rounding noise
    let noise = T::epsilon() * T::lit(50.0);

    let first = kronrod(&mut g, lo, hi)?;
    let mut total = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut subdivisions = 0usize;

    loop {
        let target = abs_tol.max(rel_tol * total.abs());
        if error <= target || error <= noise * total.abs() {
            break;
        }
        if subdivisions >= cfg.max_subdivisions {
            return Err(QuadError::MaxSubdivisionsExceeded {
                best: total.as_f64(),
                error_estimate: error.as_f64(),
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap never empties");
        let mid = T::half() * (worst.lo + worst.hi);
        if !(mid > worst.lo && mid < worst.hi) {
            // interval can no longer be split in this precision
            return Err(QuadError::MaxSubdivisionsExceeded {
                best: total.as_f64(),
                error_estimate: error.as_f64(),
                subdivisions,
            });
        }
        let left = kronrod(&mut g, worst.lo, mid)?;
        let right = kronrod(&mut g, mid, worst.hi)?;
        total = total - worst.value + left.value + right.value;
        error = error - worst.error + left.error + right.error;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;

        // resum periodically so the running totals do not drift
        if subdivisions % 64 == 0 {
            total = heap.iter().fold(T::zero(), |acc, s| acc + s.value);
            error = heap.iter().fold(T::zero(), |acc, s| acc + s.error);
        }
    }

    let value = heap.iter().fold(T::zero(), |acc, s| acc + s.value);
    let error_estimate = heap.iter().fold(T::zero(), |acc, s| acc + s.error);
    Ok(QuadResult {
        value,
        error_estimate,
        subdivisions,
    })
}

/// `∫_0^1 |1 - 2t| w(t) dt`, split at the kink `t = 1/2`.
pub fn integrate_kinked<T: Real, F: FnMut(T) -> T>(
    mut w: F,
    cfg: &QuadConfig,
) -> std::result::Result<QuadResult<T>, QuadError> {
    let h = T::half();
    let left = integrate_with(|t: T| (T::one() - T::two() * t) * w(t), T::zero(), h, cfg)?;
    let right = integrate_with(|t: T| (T::two() * t - T::one()) * w(t), h, T::one(), cfg)?;
    Ok(QuadResult {
        value: left.value + right.value,
        error_estimate: left.error_estimate + right.error_estimate,
        subdivisions: left.subdivisions + right.subdivisions,
    })
}

/// Mean value `1/(b-a) ∫_a^b f(x) dx` of a model over `[a, b]`.
pub fn mean_integral<T: Real>(m: &FunctionModel<T>, a: T, b: T, tol: f64) -> Result<T> {
    m.check_subinterval(a, b)?;
    let r = integrate_with(
        |x| m.value(x).unwrap_or_else(|_| T::nan()),
        a,
        b,
        &QuadConfig {
            abs_tol: tol * 1e-3,
            rel_tol: tol,
            ..QuadConfig::default()
        },
    )?;
    Ok(r.value / (b - a))
}
