//! Adaptive Gauss–Kronrod quadrature for complex integrands of a real variable,
//! and Gauss–Legendre rules for fixed panels.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{eps64, r, to64, zero, Real};

/// Numerical controls for adaptive contour quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    /// Maximum number of subintervals held by the adaptive scheme.
    pub max_intervals: usize,
}

impl<T: Real> Default for QuadratureConfig<T> {
    fn default() -> Self {
        Self {
            rel_tol: r(1e-10),
            abs_tol: r(1e-14),
            max_intervals: 4000,
        }
    }
}

impl<T: Real> QuadratureConfig<T> {
    pub fn with_rel_tol(rel_tol: T) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Integral<T> {
    pub value: Complex<T>,
    pub error: T,
    pub evaluations: usize,
}

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
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

#[derive(Clone, Copy, Debug)]
enum Seg<T> {
    Finite(T, T),
    /// Sub-range [t0, t1] ⊂ [0, 1) of the map x = b + s·t/(1−t).
    Tail { b: T, s: T, t0: T, t1: T },
    /// Sub-range [u0, u1] ⊂ [0, 1] of x = a + len·u² (len may be negative).
    Sqrt { a: T, len: T, u0: T, u1: T },
}

struct Piece<T> {
    seg: Seg<T>,
    value: Complex<T>,
    error: f64,
    resabs: f64,
}

struct Queued<T>(Piece<T>);

impl<T> PartialEq for Queued<T> {
    fn eq(&self, o: &Self) -> bool {
        self.0.error == o.0.error
    }
}
impl<T> Eq for Queued<T> {}
impl<T> PartialOrd for Queued<T> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl<T> Ord for Queued<T> {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.error.total_cmp(&o.0.error)
    }
}

fn kronrod<T: Real, F: FnMut(T) -> Complex<T>>(f: &mut F, a: T, b: T) -> (Complex<T>, f64, f64) {
    let half = (b - a) * r(0.5);
    let mid = (a + b) * r(0.5);
    let fc = f(mid);
    let mut k = fc * r::<T>(WGK[10]);
    let mut g = zero::<T>();
    let mut fv = [zero::<T>(); 21];
    fv[10] = fc;
    for j in 0..10 {
        let dx = half * r(XGK[j]);
        let f1 = f(mid - dx);
        let f2 = f(mid + dx);
        fv[j] = f1;
        fv[20 - j] = f2;
        k = k + (f1 + f2) * r::<T>(WGK[j]);
        if j % 2 == 1 {
            g = g + (f1 + f2) * r::<T>(WG[j / 2]);
        }
    }
    let kmean = k * r::<T>(0.5);
    let mut resasc = WGK[10] * to64((fc - kmean).norm());
    let mut resabs = WGK[10] * to64(fc.norm());
    for j in 0..10 {
        resabs += WGK[j] * (to64(fv[j].norm()) + to64(fv[20 - j].norm()));
        resasc += WGK[j] * (to64((fv[j] - kmean).norm()) + to64((fv[20 - j] - kmean).norm()));
    }
    let h = to64(half).abs();
    let value = k * half;
    resabs *= h;
    resasc *= h;
    let mut err = to64((k - g).norm()) * h;
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let round = 50.0 * eps64::<T>() * resabs;
    if resabs > f64::MIN_POSITIVE / (50.0 * eps64::<T>()) {
        err = err.max(round);
    }
    (value, err, resabs)
}

fn eval_seg<T: Real, F: FnMut(T) -> Complex<T>>(f: &mut F, seg: Seg<T>) -> Piece<T> {
    let (value, error, resabs) = match seg {
        Seg::Finite(a, b) => kronrod(f, a, b),
        Seg::Tail { b, s, t0, t1 } => {
            let mut g = |t: T| {
                let om = T::one() - t;
                let x = b + s * t / om;
                if om <= T::zero() || !x.is_finite() {
                    return zero();
                }
                f(x) * (s / (om * om))
            };
            kronrod(&mut g, t0, t1)
        }
        Seg::Sqrt { a, len, u0, u1 } => {
            let mut g = |u: T| f(a + len * u * u) * (len * u * r(2.0));
            let (v, e, ra) = kronrod(&mut g, u0, u1);
            if len < T::zero() {
                (-v, e, ra)
            } else {
                (v, e, ra)
            }
        }
    };
    Piece {
        seg,
        value,
        error,
        resabs,
    }
}

fn bisect<T: Real>(seg: Seg<T>) -> (Seg<T>, Seg<T>) {
    let h = r::<T>(0.5);
    match seg {
        Seg::Finite(a, b) => {
            let m = (a + b) * h;
            (Seg::Finite(a, m), Seg::Finite(m, b))
        }
        Seg::Tail { b, s, t0, t1 } => {
            let m = (t0 + t1) * h;
            (Seg::Tail { b, s, t0, t1: m }, Seg::Tail { b, s, t0: m, t1 })
        }
        Seg::Sqrt { a, len, u0, u1 } => {
            let m = (u0 + u1) * h;
            (Seg::Sqrt { a, len, u0, u1: m }, Seg::Sqrt { a, len, u0: m, u1 })
        }
    }
}

fn adapt<T: Real, F: FnMut(T) -> Complex<T>>(
    mut f: F,
    segs: Vec<Seg<T>>,
    cfg: &QuadratureConfig<T>,
) -> Result<Integral<T>> {
    let mut heap = BinaryHeap::new();
    let mut total = zero::<T>();
    let mut err = 0.0;
    let mut evals = 0;
    for s in segs {
        let p = eval_seg(&mut f, s);
        evals += 21;
        total = total + p.value;
        err += p.error;
        heap.push(Queued(p));
    }
    let rel = to64(cfg.rel_tol);
    let abs = to64(cfg.abs_tol);
    loop {
        if !err.is_finite() || !total.re.is_finite() || !total.im.is_finite() {
            return Err(Error::NonConvergence {
                estimate: f64::NAN,
                tolerance: abs,
                intervals: heap.len(),
            });
        }
        let tol = abs.max(rel * to64(total.norm()));
        if err <= tol {
            break;
        }
        if heap.len() >= cfg.max_intervals {
            // Accept when the remaining error is at roundoff level.
            let resabs: f64 = heap.iter().map(|q| q.0.resabs).sum();
            if err <= 1e3 * eps64::<T>() * resabs {
                break;
            }
            return Err(Error::NonConvergence {
                estimate: err,
                tolerance: tol,
                intervals: heap.len(),
            });
        }
        let worst = heap.pop().unwrap().0;
        let (s1, s2) = bisect(worst.seg);
        let p1 = eval_seg(&mut f, s1);
        let p2 = eval_seg(&mut f, s2);
        evals += 42;
        total = total - worst.value + p1.value + p2.value;
        err += p1.error + p2.error - worst.error;
        heap.push(Queued(p1));
        heap.push(Queued(p2));
    }
    // Re-sum to shed accumulated cancellation from incremental updates.
    let mut value = zero::<T>();
    let mut error = 0.0;
    for q in heap.iter() {
        value = value + q.0.value;
        error += q.0.error;
    }
    Ok(Integral {
        value,
        error: r(error),
        evaluations: evals,
    })
}

/// Segments between breakpoints; an end that is a listed singular point gets the
/// substitution x = end ± len·u², which removes inverse-square-root singularities.
fn segments<T: Real>(breaks: &[T], singular: &[T]) -> Vec<Seg<T>> {
    let is_sing = |x: T| singular.iter().any(|s| *s == x);
    let mut out = Vec::new();
    for w in breaks.windows(2).filter(|w| w[1] > w[0]) {
        let (a, b) = (w[0], w[1]);
        let (u0, u1) = (T::zero(), T::one());
        match (is_sing(a), is_sing(b)) {
            (false, false) => out.push(Seg::Finite(a, b)),
            (true, false) => out.push(Seg::Sqrt { a, len: b - a, u0, u1 }),
            (false, true) => out.push(Seg::Sqrt { a: b, len: a - b, u0, u1 }),
            (true, true) => {
                let m = (a + b) * r(0.5);
                out.push(Seg::Sqrt { a, len: m - a, u0, u1 });
                out.push(Seg::Sqrt { a: b, len: m - b, u0, u1 });
            }
        }
    }
    out
}

/// Integrates `f` over `[breaks[0], breaks[last]]`, refining globally across the
/// breakpoints. Breakpoints must be sorted ascending.
pub fn integrate<T: Real, F: FnMut(T) -> Complex<T>>(
    f: F,
    breaks: &[T],
    cfg: &QuadratureConfig<T>,
) -> Result<Integral<T>> {
    integrate_general(f, breaks, &[], None, cfg)
}

/// Integrates `f` over `[breaks[0], ∞)`; the last breakpoint starts the mapped tail
/// `x = b + s·t/(1−t)` with `s = max(b, tail_scale)`.
pub fn integrate_to_infinity<T: Real, F: FnMut(T) -> Complex<T>>(
    f: F,
    breaks: &[T],
    tail_scale: T,
    cfg: &QuadratureConfig<T>,
) -> Result<Integral<T>> {
    integrate_general(f, breaks, &[], Some(tail_scale), cfg)
}

/// General driver. `singular` lists breakpoints that may carry inverse
/// square-root singularities; `tail` appends a mapped half-line after the last
/// breakpoint, with that length scale.
pub fn integrate_general<T: Real, F: FnMut(T) -> Complex<T>>(
    f: F,
    breaks: &[T],
    singular: &[T],
    tail: Option<T>,
    cfg: &QuadratureConfig<T>,
) -> Result<Integral<T>> {
    if breaks.is_empty() || (tail.is_none() && breaks.len() < 2) {
        return Err(Error::InvalidParameter("too few breakpoints".into()));
    }
    let mut segs = segments(breaks, singular);
    if let Some(scale) = tail {
        let b = *breaks.last().unwrap();
        let s = b.abs().max(scale);
        segs.push(Seg::Tail { b, s, t0: T::zero(), t1: r(0.5) });
        segs.push(Seg::Tail { b, s, t0: r(0.5), t1: T::one() });
    }
    adapt(f, segs, cfg)
}

/// Sorts, deduplicates and clips breakpoints to `[lo, hi]`, always keeping both ends.
pub(crate) fn clean_breaks<T: Real>(mut pts: Vec<T>, lo: T, hi: T) -> Vec<T> {
    pts.retain(|x| x.is_finite() && *x > lo && *x < hi);
    pts.push(lo);
    pts.push(hi);
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let scale = hi.abs().max(lo.abs()).max(T::one());
    let tiny = scale * r(1e-12);
    pts.dedup_by(|a, b| (*a - *b).abs() <= tiny);
    pts
}

/// Gauss–Legendre nodes and weights on [−1, 1], computed by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * z * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p1 = z;
                p0 = 1.0;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0, z);
        for j in 2..=n {
            let p2 = ((2 * j - 1) as f64 * z * p1 - (j - 1) as f64 * p0) / j as f64;
            p0 = p1;
            p1 = p2;
        }
        if n > 1 {
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    if n == 1 {
        x[0] = 0.0;
        w[0] = 2.0;
    }
    (x, w)
}
