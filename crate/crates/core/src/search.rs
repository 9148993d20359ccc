//! Bounded scalar minimization: a uniform scan to pick the basin, then
//! golden-section refinement inside the bracketing cells.

/// `(√5 - 1) / 2`
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
}

/// Golden-section search for a minimum of `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `x_tol`. The returned point is the
/// best one evaluated, endpoints included.
pub fn golden_section<F>(f: &F, lo: f64, hi: f64, x_tol: f64) -> Minimum
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut best = better(Minimum { x: a, value: f(a) }, Minimum { x: b, value: f(b) });

    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // ~200 iterations shrink any bracket below f64 resolution
    for _ in 0..200 {
        if b - a <= x_tol {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    best = better(best, Minimum { x: x1, value: f1 });
    better(best, Minimum { x: x2, value: f2 })
}

/// Minimizes `f` over `[lo, hi]`: evaluates `scan_points` uniformly spaced
/// points (endpoints included), then refines with golden-section search on
/// the two cells around the best sample.
///
/// Ties go to the smaller abscissa.
pub fn scan_then_golden<F>(f: F, lo: f64, hi: f64, scan_points: usize, x_tol: f64) -> Minimum
where
    F: Fn(f64) -> f64,
{
    assert!(scan_points >= 2 && lo < hi);
    let step = (hi - lo) / (scan_points - 1) as f64;
    let at = |i: usize| {
        if i + 1 == scan_points {
            hi
        } else {
            lo + step * i as f64
        }
    };
    let mut best_i = 0;
    let mut best = Minimum {
        x: lo,
        value: f(lo),
    };
    for i in 1..scan_points {
        let x = at(i);
        let value = f(x);
        if value < best.value {
            best = Minimum { x, value };
            best_i = i;
        }
    }
    let left = at(best_i.saturating_sub(1));
    let right = at((best_i + 1).min(scan_points - 1));
    let refined = golden_section(&f, left, right, x_tol);
    better(best, refined)
}

/// Lower value wins; equal values prefer the smaller `x`.
fn better(a: Minimum, b: Minimum) -> Minimum {
    if b.value < a.value || (b.value == a.value && b.x < a.x) {
        b
    } else {
        a
    }
}
