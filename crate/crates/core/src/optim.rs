//! Search primitives: periodic grid-plus-golden maximization on a line and
//! nested golden-section minimization of convex functions of one complex
//! variable.

use crate::complexmat::C64;

const INV_PHI: f64 = 0.618_033_988_749_894_9;
const MAX_GOLDEN_STEPS: usize = 200;

/// Parameters of a grid-then-refine maximization over a period.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaxSearch {
    /// Uniform grid points per period.
    pub grid: usize,
    /// How many of the best local grid maxima get refined.
    pub refine_top: usize,
    /// Final golden-section interval width.
    pub tol: f64,
}

impl Default for MaxSearch {
    fn default() -> Self {
        Self {
            grid: 1024,
            refine_top: 3,
            tol: 1e-12,
        }
    }
}

impl MaxSearch {
    pub fn with_grid(grid: usize) -> Self {
        Self {
            grid,
            ..Self::default()
        }
    }

    pub(crate) fn step(&self, period: f64) -> f64 {
        period / self.grid as f64
    }

    pub(crate) fn nodes(&self, period: f64) -> impl Iterator<Item = f64> {
        let h = self.step(period);
        (0..self.grid).map(move |k| k as f64 * h)
    }
}

/// Outcome of [`refine_periodic_max`].
#[derive(Clone, Copy, Debug)]
pub(crate) struct PeriodicMax {
    pub value: f64,
    /// In `[0, period)`.
    pub arg: f64,
    /// Largest value seen on the grid itself.
    pub grid_max: f64,
}

/// Maximizes a `period`-periodic `f` given its values on the uniform grid
/// of `cfg.grid` nodes starting at 0. The best `cfg.refine_top` local grid
/// maxima are refined by golden section on the two adjacent cells.
pub(crate) fn refine_periodic_max(
    grid_values: &[f64],
    period: f64,
    cfg: &MaxSearch,
    mut f: impl FnMut(f64) -> f64,
) -> PeriodicMax {
    let m = grid_values.len();
    assert!(m >= 1 && m == cfg.grid, "grid values must match the search grid");
    let h = period / m as f64;

    let mut peaks: Vec<usize> = (0..m)
        .filter(|&k| {
            let prev = grid_values[(k + m - 1) % m];
            let next = grid_values[(k + 1) % m];
            grid_values[k] >= prev && grid_values[k] >= next
        })
        .collect();
    peaks.sort_by(|&i, &j| grid_values[j].total_cmp(&grid_values[i]).then(i.cmp(&j)));
    peaks.truncate(cfg.refine_top.max(1));

    let (mut arg, mut value) = (0.0, grid_values[0]);
    for (k, &v) in grid_values.iter().enumerate() {
        if v > value {
            value = v;
            arg = k as f64 * h;
        }
    }
    let grid_max = value;

    for &k in &peaks {
        let centre = k as f64 * h;
        let (x, fx) = golden_max(&mut f, centre - h, centre + h, cfg.tol);
        if fx > value {
            value = fx;
            arg = x.rem_euclid(period);
        }
    }
    PeriodicMax { value, arg, grid_max }
}

/// Golden-section search for a maximum of `f` on `[a, b]`; returns the best
/// interior point evaluated.
pub(crate) fn golden_max(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (x, v) = golden_min(&mut |t| -f(t), a, b, tol);
    (x, -v)
}

/// Golden-section search for a minimum of `f` on `[a, b]`; returns the best
/// interior point evaluated. Exact for unimodal (e.g. convex) `f`.
pub(crate) fn golden_min(f: &mut impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let (mut best_x, mut best_f) = if fc <= fd { (c, fc) } else { (d, fd) };
    let mut steps = 0;
    while b - a > tol && steps < MAX_GOLDEN_STEPS {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            if fc < best_f {
                best_x = c;
                best_f = fc;
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            if fd < best_f {
                best_x = d;
                best_f = fd;
            }
        }
        steps += 1;
    }
    (best_x, best_f)
}

/// Minimizes a convex `f: ℂ → ℝ` over the square of half-width `radius`
/// around `centre` by nested golden section (outer on the real part, inner
/// on the imaginary part). Partial minimization of a convex function is
/// convex, so both levels are unimodal. Returns the best point evaluated,
/// including `centre` itself.
pub(crate) fn minimize_convex_2d(mut f: impl FnMut(C64) -> f64, centre: C64, radius: f64, rel_tol: f64) -> (C64, f64) {
    let mut best = (centre, f(centre));
    if !(radius > 0.0) || !radius.is_finite() {
        return best;
    }
    let tol = (rel_tol * radius).max(f64::EPSILON * (centre.norm() + radius));
    let mut best_inner = best;
    let mut outer = |x: f64| {
        let mut inner = |y: f64| f(C64::new(x, y));
        let (y, v) = golden_min(&mut inner, centre.im - radius, centre.im + radius, tol);
        if v < best_inner.1 {
            best_inner = (C64::new(x, y), v);
        }
        v
    };
    golden_min(&mut outer, centre.re - radius, centre.re + radius, tol);
    if best_inner.1 < best.1 {
        best = best_inner;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn golden_finds_parabola_vertex() {
        let (x, v) = golden_min(&mut |t| (t - 0.3).powi(2) + 1.0, -2.0, 5.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-6);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn periodic_max_of_shifted_cosine() {
        let cfg = MaxSearch::with_grid(64);
        let f = |t: f64| (2.0 * (t - 1.234)).cos();
        let values: Vec<f64> = cfg.nodes(PI).map(f).collect();
        let r = refine_periodic_max(&values, PI, &cfg, f);
        assert!((r.value - 1.0).abs() < 1e-15);
        assert!((r.arg - 1.234).abs() < 1e-6);
        assert!(r.grid_max <= r.value);
    }

    #[test]
    fn periodic_max_wraps_around_zero() {
        let cfg = MaxSearch::with_grid(32);
        let f = |t: f64| -((t - 0.01).sin()).abs();
        let values: Vec<f64> = cfg.nodes(PI).map(f).collect();
        let r = refine_periodic_max(&values, PI, &cfg, f);
        assert!(r.value > -1e-10);
        assert!(r.arg < 0.02 || r.arg > PI - 0.02);
    }

    #[test]
    fn refine_keeps_the_global_peak_among_several() {
        let cfg = MaxSearch::with_grid(128);
        let f = |t: f64| (6.0 * t).sin() + 0.01 * t;
        let values: Vec<f64> = cfg.nodes(PI).map(f).collect();
        let r = refine_periodic_max(&values, PI, &cfg, f);
        // maxima of sin(6t) at t = π/12 + kπ/3; the drift favours the last one
        let expected = PI / 12.0 + 2.0 * PI / 3.0;
        assert!((r.arg - expected).abs() < 1e-3, "{}", r.arg);
    }

    #[test]
    fn nonsmooth_two_point_distance() {
        // max(|λ−(1+i)|, |λ+1+i|) is minimized on the whole bisector segment;
        // the value there is √2 at λ = 0
        let p = C64::new(1.0, 1.0);
        let q = C64::new(-1.0, -1.0);
        let (_, v) = minimize_convex_2d(|l| (l - p).norm().max((l - q).norm()), C64::new(0.7, -0.2), 3.0, 1e-12);
        assert!((v - 2f64.sqrt()).abs() < 1e-9, "{v}");
    }

    #[test]
    fn sum_of_distances_on_a_segment() {
        let (z, v) = minimize_convex_2d(|l| (l - 1.0).norm() + l.norm(), C64::new(0.5, 0.0), 1.0, 1e-12);
        assert!((v - 1.0).abs() < 1e-11);
        assert!(z.im.abs() < 1e-6 && z.re > -1e-6 && z.re < 1.0 + 1e-6);
    }
}
