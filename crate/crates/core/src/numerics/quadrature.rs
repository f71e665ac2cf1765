//! Globally adaptive Gauss-Kronrod quadrature on `[0, inf)`.
//!
//! The upper limit is found from a caller-supplied bound on the tail integral,
//! and the finite interval is pre-split into panels no wider than a width hint
//! so that integrands oscillating like `sin(2 omega R)` are resolved from the
//! first pass. Refinement then bisects the panel with the largest error
//! estimate until the global tolerance is met.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::NumericsError;

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_958_109_831,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];

// Gauss weights for the odd-indexed Kronrod nodes.
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

const MAX_TAIL_DOUBLINGS: usize = 200;
const MAX_INITIAL_PANELS: usize = 10_000_000;

/// Tolerances and panel controls for [`integrate_semi_infinite`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Upper bound on the width of the initial panels.
    pub panel_width_hint: f64,
    /// The upper limit is pushed out until the tail bound drops below this.
    pub tail_cutoff_epsilon: f64,
    /// Bisections allowed beyond the initial panel split.
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            panel_width_hint: f64::INFINITY,
            tail_cutoff_epsilon: 1e-12,
            max_subdivisions: 20_000,
        }
    }
}

impl QuadratureSpec {
    pub fn new(
        rel_tol: f64,
        abs_tol: f64,
        panel_width_hint: f64,
        tail_cutoff_epsilon: f64,
    ) -> Result<Self, NumericsError> {
        let spec = Self {
            rel_tol,
            abs_tol,
            panel_width_hint,
            tail_cutoff_epsilon,
            ..Self::default()
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_panel_width(mut self, width: f64) -> Self {
        self.panel_width_hint = width;
        self
    }

    pub fn validate(&self) -> Result<(), NumericsError> {
        let positive = |v: f64| v > 0.0;
        if !(positive(self.rel_tol)
            && positive(self.abs_tol)
            && positive(self.panel_width_hint)
            && positive(self.tail_cutoff_epsilon))
        {
            return Err(NumericsError::InvalidSpec(
                "tolerances and panel width must be positive".into(),
            ));
        }
        if self.rel_tol < 100.0 * f64::EPSILON {
            return Err(NumericsError::InvalidSpec(format!(
                "rel_tol {} is below 100 machine epsilon",
                self.rel_tol
            )));
        }
        Ok(())
    }
}

/// Result of a quadrature call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Quadrature error estimate plus the tail bound.
    pub error_estimate: f64,
    /// Upper limit actually used.
    pub upper_limit: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
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
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// One 21-point Gauss-Kronrod panel. Returns `(value, error, at_roundoff_floor)`.
fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, bool) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();

    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    let at_floor = err <= floor || !value.is_finite();
    (value, err.max(floor), at_floor)
}

/// Adaptive integral of `f` over `[a, b]`, initially split into panels of at
/// most `spec.panel_width_hint`.
pub fn integrate_interval<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Integral, NumericsError> {
    spec.validate()?;
    if !(b > a) {
        return Ok(Integral {
            value: 0.0,
            error_estimate: 0.0,
            upper_limit: b,
            evaluations: 0,
        });
    }
    let width = b - a;
    let n_panels = if spec.panel_width_hint.is_finite() {
        (width / spec.panel_width_hint).ceil().max(1.0)
    } else {
        1.0
    };
    if n_panels > MAX_INITIAL_PANELS as f64 {
        return Err(NumericsError::InvalidSpec(format!(
            "{n_panels} initial panels requested over [{a}, {b}]"
        )));
    }
    let n_panels = n_panels as usize;

    let mut heap = BinaryHeap::with_capacity(n_panels + 64);
    let mut settled: Vec<Panel> = Vec::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    let mut evaluations = 0;

    for i in 0..n_panels {
        let pa = a + width * (i as f64) / (n_panels as f64);
        let pb = if i + 1 == n_panels {
            b
        } else {
            a + width * ((i + 1) as f64) / (n_panels as f64)
        };
        let (value, error, at_floor) = gauss_kronrod(&f, pa, pb);
        evaluations += 21;
        total += value;
        total_err += error;
        let panel = Panel {
            a: pa,
            b: pb,
            value,
            error,
        };
        if at_floor {
            settled.push(panel);
        } else {
            heap.push(panel);
        }
    }

    let mut subdivisions = 0;
    loop {
        let tol = spec.abs_tol.max(spec.rel_tol * total.abs());
        if total_err <= tol || heap.is_empty() {
            break;
        }
        if subdivisions >= spec.max_subdivisions {
            return Err(NumericsError::NonConvergence {
                best_estimate: total,
                error_estimate: total_err,
            });
        }
        let worst = heap.pop().expect("heap checked non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            settled.push(worst);
            continue;
        }
        subdivisions += 1;
        total -= worst.value;
        total_err -= worst.error;
        for (pa, pb) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error, at_floor) = gauss_kronrod(&f, pa, pb);
            evaluations += 21;
            total += value;
            total_err += error;
            let panel = Panel {
                a: pa,
                b: pb,
                value,
                error,
            };
            if at_floor {
                settled.push(panel);
            } else {
                heap.push(panel);
            }
        }
    }

    // Re-sum in a fixed order so the result does not depend on refinement history.
    settled.extend(heap.into_vec());
    settled.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value: f64 = settled.iter().map(|p| p.value).sum();
    let error: f64 = settled.iter().map(|p| p.error).sum();
    if !value.is_finite() {
        return Err(NumericsError::NonConvergence {
            best_estimate: value,
            error_estimate: f64::INFINITY,
        });
    }
    Ok(Integral {
        value,
        error_estimate: error,
        upper_limit: b,
        evaluations,
    })
}

/// Integral of `f` over `[0, inf)`.
///
/// `tail_bound(w)` must bound `|int_w^inf f|` from above (returning `inf`
/// where no bound is available). The upper limit starts at `scale` and is
/// doubled until the tail bound is below `spec.tail_cutoff_epsilon`.
pub fn integrate_semi_infinite<F, B>(
    f: F,
    tail_bound: B,
    scale: f64,
    spec: &QuadratureSpec,
) -> Result<Integral, NumericsError>
where
    F: Fn(f64) -> f64,
    B: Fn(f64) -> f64,
{
    spec.validate()?;
    let mut upper = if scale > 0.0 && scale.is_finite() {
        scale
    } else {
        1.0
    };
    let mut tail = tail_bound(upper);
    let mut doublings = 0;
    while !(tail <= spec.tail_cutoff_epsilon) {
        doublings += 1;
        if doublings > MAX_TAIL_DOUBLINGS {
            return Err(NumericsError::TailNotBounded { last_limit: upper });
        }
        upper *= 2.0;
        tail = tail_bound(upper);
    }
    let mut integral = integrate_interval(f, 0.0, upper, spec)?;
    integral.error_estimate += tail;
    Ok(integral)
}
