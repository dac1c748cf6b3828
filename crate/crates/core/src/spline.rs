//! Closed-curve resampling via a periodic cubic spline.
//!
//! The spline interpolates the input vertices with chordal knots, carries an
//! accurate per-segment arc length (Gauss-Legendre), and can be resampled at
//! uniform arc-length positions by Newton inversion of the cumulative length.

use num_complex::Complex64;

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; the rule
// is symmetric).
const GL16_X: [f64; 8] = [
    0.0950125098376374,
    0.2816035507792589,
    0.4580167776572274,
    0.6178762444026438,
    0.755404408355003,
    0.8656312023878318,
    0.9445750230732326,
    0.9894009349916499,
];
const GL16_W: [f64; 8] = [
    0.1894506104550685,
    0.1826034150449236,
    0.1691565193950025,
    0.1495959888165767,
    0.1246289712555339,
    0.0951585116824928,
    0.0622535239386479,
    0.0271524594117541,
];

/// Periodic cubic spline through closed-loop vertices.
pub struct PeriodicSpline {
    points: Vec<Complex64>,
    knots: Vec<f64>,      // len n+1, knots[0] = 0, knots[n] = total chord
    second: Vec<Complex64>, // spline second derivatives at the vertices
    cum_arc: Vec<f64>,    // len n+1, cumulative arc length at the knots
}

impl PeriodicSpline {
    /// Build the spline. `points` are the loop vertices in order, with no
    /// repeated closing vertex.
    pub fn new(points: &[Complex64]) -> Self {
        let n = points.len();
        assert!(n >= 3, "need at least 3 vertices for a closed spline");
        let mut knots = Vec::with_capacity(n + 1);
        knots.push(0.0);
        for i in 0..n {
            let d = (points[(i + 1) % n] - points[i]).norm();
            knots.push(knots[i] + d);
        }
        let second = solve_periodic_second_derivatives(points, &knots);
        let mut spline = PeriodicSpline {
            points: points.to_vec(),
            knots,
            second,
            cum_arc: Vec::new(),
        };
        let n_seg = n;
        let mut cum = Vec::with_capacity(n_seg + 1);
        cum.push(0.0);
        for i in 0..n_seg {
            let len = spline.arc_on_segment(i, spline.knots[i], spline.knots[i + 1]);
            cum.push(cum[i] + len);
        }
        spline.cum_arc = cum;
        spline
    }

    pub fn total_length(&self) -> f64 {
        *self.cum_arc.last().unwrap()
    }

    fn segment_of(&self, t: f64) -> usize {
        let n = self.points.len();
        match self.knots.binary_search_by(|k| k.partial_cmp(&t).unwrap()) {
            Ok(i) => i.min(n - 1),
            Err(i) => (i - 1).min(n - 1),
        }
    }

    /// Spline value at parameter t in [0, total chord].
    pub fn value(&self, t: f64) -> Complex64 {
        let i = self.segment_of(t);
        let n = self.points.len();
        let (t0, t1) = (self.knots[i], self.knots[i + 1]);
        let h = t1 - t0;
        let a = (t1 - t) / h;
        let b = (t - t0) / h;
        let p0 = self.points[i];
        let p1 = self.points[(i + 1) % n];
        let m0 = self.second[i];
        let m1 = self.second[(i + 1) % n];
        a * p0
            + b * p1
            + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * (h * h) / 6.0
    }

    /// Spline derivative dP/dt at parameter t.
    pub fn derivative(&self, t: f64) -> Complex64 {
        let i = self.segment_of(t);
        let n = self.points.len();
        let (t0, t1) = (self.knots[i], self.knots[i + 1]);
        let h = t1 - t0;
        let a = (t1 - t) / h;
        let b = (t - t0) / h;
        let p0 = self.points[i];
        let p1 = self.points[(i + 1) % n];
        let m0 = self.second[i];
        let m1 = self.second[(i + 1) % n];
        (p1 - p0) / h + ((3.0 * b * b - 1.0) * m1 - (3.0 * a * a - 1.0) * m0) * h / 6.0
    }

    /// Arc length of |dP/dt| between t_a and t_b inside segment i.
    fn arc_on_segment(&self, _i: usize, t_a: f64, t_b: f64) -> f64 {
        let mid = 0.5 * (t_a + t_b);
        let half = 0.5 * (t_b - t_a);
        let mut sum = 0.0;
        for q in 0..8 {
            let x = half * GL16_X[q];
            sum += GL16_W[q]
                * (self.derivative(mid + x).norm() + self.derivative(mid - x).norm());
        }
        sum * half
    }

    /// Parameter t such that the arc length from 0 equals s (0 <= s <= total).
    pub fn param_at_arc(&self, s: f64) -> f64 {
        let n = self.points.len();
        let total = self.total_length();
        let s = s.clamp(0.0, total);
        let i = match self
            .cum_arc
            .binary_search_by(|c| c.partial_cmp(&s).unwrap())
        {
            Ok(k) => k.min(n - 1),
            Err(k) => (k - 1).min(n - 1),
        };
        let (t0, t1) = (self.knots[i], self.knots[i + 1]);
        let seg_len = self.cum_arc[i + 1] - self.cum_arc[i];
        let target = s - self.cum_arc[i];
        if seg_len <= f64::EPSILON {
            return t0;
        }
        // Newton on F(t) = arc(t0, t) - target, with bisection safeguards.
        let mut lo = t0;
        let mut hi = t1;
        let mut t = t0 + (t1 - t0) * (target / seg_len);
        for _ in 0..60 {
            let f = self.arc_on_segment(i, t0, t) - target;
            if f > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let df = self.derivative(t).norm();
            let mut next = if df > 0.0 { t - f / df } else { 0.5 * (lo + hi) };
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - t).abs() <= 1e-14 * (1.0 + t.abs()) {
                t = next;
                break;
            }
            t = next;
        }
        t
    }
}

/// Solve the cyclic tridiagonal system for periodic-spline second
/// derivatives (Sherman-Morrison on the two corner entries).
fn solve_periodic_second_derivatives(points: &[Complex64], knots: &[f64]) -> Vec<Complex64> {
    let n = points.len();
    let h = |i: usize| knots[i + 1] - knots[i];
    // Row i couples M_{i-1}, M_i, M_{i+1} (indices mod n).
    let mut sub = vec![0.0; n]; // coefficient of M_{i-1}
    let mut diag = vec![0.0; n];
    let mut sup = vec![0.0; n]; // coefficient of M_{i+1}
    let mut rhs = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        let hp = h((i + n - 1) % n);
        let hi = h(i);
        sub[i] = hp;
        diag[i] = 2.0 * (hp + hi);
        sup[i] = hi;
        let prev = points[(i + n - 1) % n];
        let next = points[(i + 1) % n];
        rhs[i] = 6.0 * ((next - points[i]) / hi - (points[i] - prev) / hp);
    }

    // Sherman-Morrison: A = T + u v^T with u = (gamma, 0, .., alpha)^T etc.
    let alpha = sub[0]; // corner (0, n-1)
    let beta = sup[n - 1]; // corner (n-1, 0)
    let gamma = -diag[0];
    let mut d = diag.clone();
    d[0] -= gamma;
    d[n - 1] -= alpha * beta / gamma;

    let solve_tri = |d: &[f64], rhs: &[Complex64]| -> Vec<Complex64> {
        let mut c = vec![0.0; n];
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        let mut dd = vec![0.0; n];
        dd[0] = d[0];
        c[0] = sup[0] / dd[0];
        x[0] = rhs[0] / dd[0];
        for i in 1..n {
            dd[i] = d[i] - sub[i] * c[i - 1];
            if i < n - 1 {
                c[i] = sup[i] / dd[i];
            }
            x[i] = (rhs[i] - sub[i] * x[i - 1]) / dd[i];
        }
        for i in (0..n - 1).rev() {
            let xi = x[i] - c[i] * x[i + 1];
            x[i] = xi;
        }
        x
    };

    let y = solve_tri(&d, &rhs);
    let mut u = vec![Complex64::new(0.0, 0.0); n];
    u[0] = Complex64::new(gamma, 0.0);
    u[n - 1] = Complex64::new(beta, 0.0);
    let q = solve_tri(&d, &u);
    // v^T = (1, 0, .., alpha/gamma)
    let vy = y[0] + y[n - 1] * (alpha / gamma);
    let vq = q[0] + q[n - 1] * (alpha / gamma);
    let factor = vy / (1.0 + vq);
    (0..n).map(|i| y[i] - factor * q[i]).collect()
}

/// Resample a closed loop at `count` positions uniform in arc length.
///
/// Returns the samples and the total arc length of the interpolating spline.
pub fn resample_closed(points: &[Complex64], count: usize) -> (Vec<Complex64>, f64) {
    let spline = PeriodicSpline::new(points);
    let total = spline.total_length();
    let samples = (0..count)
        .map(|k| spline.value(spline.param_at_arc(total * k as f64 / count as f64)))
        .collect();
    (samples, total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    fn circle_points(n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / n as f64))
            .collect()
    }

    #[test]
    fn circle_length_is_accurate() {
        let (_, len) = resample_closed(&circle_points(1024), 1024);
        assert!((len - TAU).abs() < 1e-6, "len = {len}");
    }

    #[test]
    fn resampled_circle_stays_on_circle() {
        let (samples, _) = resample_closed(&circle_points(256), 512);
        for z in &samples {
            assert!((z.norm() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn uniform_arc_positions_on_circle_are_uniform_angles() {
        let (samples, _) = resample_closed(&circle_points(512), 512);
        // Angle increments should all equal 2 pi / n.
        let mut prev = samples[0].arg();
        for z in samples.iter().skip(1) {
            let mut d = z.arg() - prev;
            if d < 0.0 {
                d += TAU;
            }
            assert!((d - TAU / 512.0).abs() < 1e-8);
            prev = z.arg();
        }
    }

    #[test]
    fn ellipse_length_matches_dense_polygon() {
        let n = 1024;
        let pts: Vec<Complex64> = (0..n)
            .map(|k| {
                let t = TAU * k as f64 / n as f64;
                Complex64::new(2.0 * t.cos(), t.sin())
            })
            .collect();
        let (_, len) = resample_closed(&pts, 1024);
        // Dense-polygon oracle for the ellipse perimeter.
        let dense = 1 << 21;
        let mut oracle = 0.0;
        let mut prev = Complex64::new(2.0, 0.0);
        for k in 1..=dense {
            let t = TAU * k as f64 / dense as f64;
            let p = Complex64::new(2.0 * t.cos(), t.sin());
            oracle += (p - prev).norm();
            prev = p;
        }
        assert!((len - oracle).abs() < 1e-5, "len {len} vs oracle {oracle}");
    }

    #[test]
    fn newton_inversion_reaches_half_length() {
        let spline = PeriodicSpline::new(&circle_points(256));
        let t = spline.param_at_arc(spline.total_length() / 2.0);
        let z = spline.value(t);
        assert!((z - Complex64::new(-1.0, 0.0)).norm() < 1e-8);
        let _ = PI;
    }
}
