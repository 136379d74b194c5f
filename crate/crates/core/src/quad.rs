//! Quadrature engines.
//!
//! * [`integrate`]: globally adaptive bisection with the 15-point Gauss rule
//!   nested in the 31-point Kronrod extension. The error of a panel is the raw
//!   difference of the two rules.
//! * [`integrate_de`]: tanh-sinh (double exponential) with level doubling, for
//!   integrands with algebraic or logarithmic endpoint singularities. Nodes are
//!   generated as offsets from the nearer endpoint, so a singularity placed at
//!   an endpoint equal to `0.0` is resolved to full relative precision.
//! * [`integrate_halfline`]: `[0, inf)` split at 1, both halves by tanh-sinh.
//!
//! Placing singularities on panel edges is the caller's job.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quadrature {
    pub value: Real,
    pub err_estimate: Real,
    pub evaluations: usize,
}

impl Quadrature {
    /// Sum of two quadratures over adjacent pieces.
    pub fn combine(self, other: Quadrature) -> Quadrature {
        Quadrature {
            value: self.value + other.value,
            err_estimate: self.err_estimate + other.err_estimate,
            evaluations: self.evaluations + other.evaluations,
        }
    }
}

pub const DEFAULT_TOL: Real = 1e-11;
pub const MAX_DEPTH: u32 = 60;
pub const MAX_EVALUATIONS: usize = 10_000_000;
const DE_MAX_LEVEL: u32 = 16;
const DE_T_MAX: Real = 6.5;

// Gauss-Kronrod 15/31 abscissae and weights (QUADPACK qk31).
#[allow(clippy::excessive_precision)]
const XGK: [Real; 16] = [
    0.998_002_298_693_397_060_285_172_840_152_271,
    0.987_992_518_020_485_428_489_565_718_586_613,
    0.967_739_075_679_139_134_257_347_978_784_337,
    0.937_273_392_400_705_904_307_758_947_710_209,
    0.897_264_532_344_081_900_882_509_656_454_496,
    0.848_206_583_410_427_216_200_648_320_774_217,
    0.790_418_501_442_465_932_967_649_294_817_947,
    0.724_417_731_360_170_047_416_186_054_613_938,
    0.650_996_741_297_416_970_533_735_895_313_275,
    0.570_972_172_608_538_847_537_226_737_253_911,
    0.485_081_863_640_239_680_693_655_740_232_351,
    0.394_151_347_077_563_369_897_207_370_981_045,
    0.299_180_007_153_168_812_166_780_024_266_389,
    0.201_194_093_997_434_522_300_628_303_394_596,
    0.101_142_066_918_717_499_027_074_231_447_392,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [Real; 8] = [
    0.030_753_241_996_117_268_354_628_393_577_204,
    0.070_366_047_488_108_124_709_267_416_450_667,
    0.107_159_220_467_171_935_011_869_546_685_869,
    0.139_570_677_926_154_314_447_804_794_511_028,
    0.166_269_205_816_993_933_553_200_860_481_209,
    0.186_161_000_015_562_211_026_800_561_866_423,
    0.198_431_485_327_111_576_456_118_326_443_839,
    0.202_578_241_925_561_272_880_620_199_967_519,
];
#[allow(clippy::excessive_precision)]
const WGK: [Real; 16] = [
    0.005_377_479_872_923_348_987_792_051_430_128,
    0.015_007_947_329_316_122_538_374_763_075_807,
    0.025_460_847_326_715_320_186_874_001_019_653,
    0.035_346_360_791_375_846_222_037_948_478_360,
    0.044_589_751_324_764_876_608_227_299_373_280,
    0.053_481_524_690_928_087_265_343_147_239_430,
    0.062_009_567_800_670_640_285_139_230_960_803,
    0.069_854_121_318_728_258_709_520_077_099_147,
    0.076_849_680_757_720_378_894_432_777_482_659,
    0.083_080_502_823_133_021_038_289_247_286_104,
    0.088_564_443_056_211_770_647_275_443_693_774,
    0.093_126_598_170_825_321_225_486_872_747_346,
    0.096_642_726_983_623_678_505_179_907_627_589,
    0.099_173_598_721_791_959_332_393_173_484_603,
    0.100_769_845_523_875_595_044_946_662_617_570,
    0.101_330_007_014_791_549_017_374_792_767_493,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: Real,
    b: Real,
    value: Real,
    err: Real,
    abs: Real,
    depth: u32,
    seq: u64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    // Largest error first; ties go to the older panel.
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err).then(other.seq.cmp(&self.seq))
    }
}

fn non_finite(x: Real) -> Error {
    Error::Domain(format!("integrand is not finite at x = {x}"))
}

fn gk31<F: Fn(Real) -> Real>(f: &F, a: Real, b: Real) -> Result<(Real, Real, Real)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    if !fc.is_finite() {
        return Err(non_finite(center));
    }
    let mut kronrod = WGK[15] * fc;
    let mut gauss = WG[7] * fc;
    let mut abs = WGK[15] * fc.abs();
    for j in 0..15 {
        let dx = half * XGK[j];
        let (x1, x2) = (center - dx, center + dx);
        let (f1, f2) = (f(x1), f(x2));
        if !f1.is_finite() {
            return Err(non_finite(x1));
        }
        if !f2.is_finite() {
            return Err(non_finite(x2));
        }
        kronrod += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).abs();
    Ok((value, err, abs * half.abs()))
}

/// Adaptive Gauss–Kronrod (15/31) quadrature of `f` over `[a, b]`.
///
/// Succeeds once the summed panel error is at most `tol`, or has reached the
/// rounding floor of the integrand's magnitude. Reversed limits negate the
/// result.
pub fn integrate<F: Fn(Real) -> Real>(f: F, a: Real, b: Real, tol: Real) -> Result<Quadrature> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("integration limits must be finite: [{a}, {b}]")));
    }
    if a == b {
        return Ok(Quadrature { value: 0.0, err_estimate: 0.0, evaluations: 0 });
    }
    if a > b {
        return integrate(f, b, a, tol).map(|q| Quadrature { value: -q.value, ..q });
    }
    let tol = tol.max(0.0);
    let (value, err, abs) = gk31(&f, a, b)?;
    let mut evaluations = 31;
    let mut seq = 0u64;
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, err, abs, depth: 0, seq });
    let (mut total_err, mut total_abs) = (err, abs);
    loop {
        let done = |e: Real, s: Real| e <= tol || e <= 64.0 * Real::EPSILON * s;
        if done(total_err, total_abs) {
            total_err = heap.iter().map(|p| p.err).sum();
            total_abs = heap.iter().map(|p| p.abs).sum();
        }
        if done(total_err, total_abs) {
            let mut panels = heap.into_vec();
            panels.sort_by(|p, q| p.a.total_cmp(&q.a));
            let value = panels.iter().map(|p| p.value).sum();
            return Ok(Quadrature { value, err_estimate: total_err, evaluations });
        }
        let worst = *heap.peek().expect("heap is never empty");
        if worst.depth >= MAX_DEPTH || evaluations >= MAX_EVALUATIONS {
            let value = heap.iter().map(|p| p.value).sum();
            return Err(Error::NonConvergence {
                partial: Quadrature { value, err_estimate: total_err, evaluations },
            });
        }
        heap.pop();
        total_err -= worst.err;
        total_abs -= worst.abs;
        let mid = 0.5 * (worst.a + worst.b);
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (value, err, abs) = gk31(&f, lo, hi)?;
            total_err += err;
            total_abs += abs;
            seq += 1;
            heap.push(Panel { a: lo, b: hi, value, err, abs, depth: worst.depth + 1, seq });
        }
        evaluations += 62;
    }
}

/// Tanh-sinh quadrature of `f` over `[a, b]` with level doubling until two
/// consecutive levels differ by less than `tol`.
///
/// Nodes that round onto an endpoint contribute nothing.
pub fn integrate_de<F: Fn(Real) -> Real>(f: F, a: Real, b: Real, tol: Real) -> Result<Quadrature> {
    let (lo, hi) = (a.min(b), a.max(b));
    integrate_de_ends(|x, _, _| if x <= lo || x >= hi { 0.0 } else { f(x) }, a, b, tol)
}

/// Like [`integrate_de`], but `f(x, x - a, b - x)` also receives both endpoint
/// distances computed without cancellation.
pub fn integrate_de_ends<F: Fn(Real, Real, Real) -> Real>(f: F, a: Real, b: Real, tol: Real) -> Result<Quadrature> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("integration limits must be finite: [{a}, {b}]")));
    }
    if a == b {
        return Ok(Quadrature { value: 0.0, err_estimate: 0.0, evaluations: 0 });
    }
    if a > b {
        return de_core(&|x, da, db| f(x, db, da), b, a, tol).map(|q| Quadrature { value: -q.value, ..q });
    }
    de_core(&f, a, b, tol)
}

fn de_core(f: &dyn Fn(Real, Real, Real) -> Real, a: Real, b: Real, tol: Real) -> Result<Quadrature> {
    let width = b - a;
    let half = 0.5 * width;
    let evaluations = std::cell::Cell::new(0usize);
    let node = |t: Real| -> Result<Real> {
        let u = 0.5 * crate::consts::PI * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        let dist = width * e / (1.0 + e);
        let (x, da, db) = if t < 0.0 {
            (a + dist, dist, width - dist)
        } else if t > 0.0 {
            (b - dist, width - dist, dist)
        } else {
            (a + half, half, half)
        };
        if dist == 0.0 {
            return Ok(0.0);
        }
        let w = half * 0.5 * crate::consts::PI * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if w == 0.0 {
            return Ok(0.0);
        }
        let fx = f(x, da, db);
        evaluations.set(evaluations.get() + 1);
        if !fx.is_finite() {
            return Err(non_finite(x));
        }
        Ok(w * fx)
    };

    let n0 = DE_T_MAX.floor() as i64;
    let mut sum = node(0.0)?;
    for k in 1..=n0 {
        let t = k as Real;
        sum += node(-t)? + node(t)?;
    }
    let mut h = 1.0;
    let mut estimate = sum * h;
    let mut err = Real::INFINITY;
    for level in 1..=DE_MAX_LEVEL {
        h *= 0.5;
        let kmax = (DE_T_MAX / h).floor() as i64;
        let mut fresh = 0.0;
        let mut k = 1;
        while k <= kmax {
            let t = k as Real * h;
            fresh += node(-t)? + node(t)?;
            k += 2;
        }
        sum += fresh;
        let next = sum * h;
        err = (next - estimate).abs();
        estimate = next;
        if level >= 3 && (err <= tol || err <= 8.0 * Real::EPSILON * estimate.abs()) {
            return Ok(Quadrature { value: estimate, err_estimate: err, evaluations: evaluations.get() });
        }
        if evaluations.get() >= MAX_EVALUATIONS {
            break;
        }
    }
    Err(Error::NonConvergence {
        partial: Quadrature { value: estimate, err_estimate: err, evaluations: evaluations.get() },
    })
}

/// `int_0^inf f(t) dt` for integrands decaying at least exponentially.
///
/// `[0, 1]` goes to [`integrate_de`] directly; `[1, inf)` through
/// `t = 1 + s/(1-s)`, again by tanh-sinh on `s` in `[0, 1]`.
pub fn integrate_halfline<F: Fn(Real) -> Real>(f: F, tol: Real) -> Result<Quadrature> {
    let head = integrate_de(&f, 0.0, 1.0, 0.5 * tol)?;
    let tail = integrate_de(
        |s| {
            let c = 1.0 - s;
            let t = 1.0 + s / c;
            let v = f(t);
            if v == 0.0 {
                0.0
            } else {
                v / (c * c)
            }
        },
        0.0,
        1.0,
        0.5 * tol,
    )?;
    Ok(head.combine(tail))
}

/// `int_{a}^{inf} f(t) dt` by adaptive Gauss–Kronrod on `t = a + s/(1-s)`.
///
/// The Kronrod nodes never touch `s = 1`, so the integrand only has to decay.
pub fn integrate_to_infinity<F: Fn(Real) -> Real>(f: F, a: Real, tol: Real) -> Result<Quadrature> {
    integrate(
        |s| {
            let c = 1.0 - s;
            let v = f(a + s / c);
            if v == 0.0 {
                0.0
            } else {
                v / (c * c)
            }
        },
        0.0,
        1.0,
        tol,
    )
}

/// Sum of quadratures over consecutive breakpoints.
pub fn integrate_pieces<F: Fn(Real) -> Real>(f: F, breaks: &[Real], tol: Real) -> Result<Quadrature> {
    let n = breaks.len().saturating_sub(1).max(1) as Real;
    let mut acc = Quadrature { value: 0.0, err_estimate: 0.0, evaluations: 0 };
    for w in breaks.windows(2) {
        acc = acc.combine(integrate(&f, w[0], w[1], tol / n)?);
    }
    Ok(acc)
}
