//! Scalar maximization helpers used as independent cross-checks for the
//! closed-form optimizers.

/// Golden-section search for the maximum of `f` on `[a, b]`.
///
/// Returns `(x_max, f_max)`. Assumes `f` is unimodal on the bracket; callers
/// that cannot guarantee unimodality should bracket with
/// [`scan_then_golden_max`] first.
pub fn golden_section_max(
    f: &impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    tol: f64,
    max_iters: usize,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;

    if b <= a {
        return (a, f(a));
    }
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);

    for _ in 0..max_iters {
        if (b - a).abs() <= tol {
            break;
        }
        if f1 > f2 {
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

    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Coarse scan followed by golden-section polish around the best cell.
///
/// Robust to mild multimodality: the scan locates the global cell, the
/// golden-section pass resolves it to `tol`.
pub fn scan_then_golden_max(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    scan_points: usize,
    tol: f64,
) -> (f64, f64) {
    assert!(scan_points >= 2);
    if b <= a {
        return (a, f(a));
    }
    let step = (b - a) / (scan_points - 1) as f64;
    let mut best_i = 0;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..scan_points {
        let x = a + step * i as f64;
        let v = f(x);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let lo = a + step * best_i.saturating_sub(1) as f64;
    let hi = (a + step * (best_i + 1) as f64).min(b);
    golden_section_max(f, lo, hi, tol, 400)
}
