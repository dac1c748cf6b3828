//! Smooth Jordan curves from boundary samples.
//!
//! A [`JordanCurve`] is stored as samples uniform in arc length (obtained by
//! periodic-spline resampling of the input polygon) together with a spectral
//! tangent. All geometric constants consumed by the distortion bounds are
//! computed here: the tangent Holder constant C_gamma, the chord-arc
//! constant B, the enclosed area and the length.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::spectral::Spectrum;
use crate::spline;

/// Pair-sweep budget for the supremum estimators.
const MAX_PAIRS: usize = 4_000_000;
/// Tolerated tangent drift between two resolutions before the Holder
/// estimate is declared unstable.
const TANGENT_STABILITY_TOL: f64 = 1e-3;

/// Closed curve with arc-length parameterization, counterclockwise
/// orientation and spectral tangent data.
#[derive(Debug, Clone)]
pub struct JordanCurve {
    samples: Vec<Complex64>,
    tangents: Vec<Complex64>,
    spectrum: Spectrum,
    tangent_spectrum: Spectrum,
    length: f64,
    area: f64,
    holder_exponent: f64,
}

/// Construction knobs; the defaults fit every built-in fixture.
#[derive(Debug, Clone, Copy)]
pub struct CurveOptions {
    /// Number of arc-length samples kept (power of two).
    pub resample: usize,
    /// Require the origin to lie strictly inside the curve.
    pub require_origin_inside: bool,
}

impl Default for CurveOptions {
    fn default() -> Self {
        CurveOptions {
            resample: 4096,
            require_origin_inside: true,
        }
    }
}

/// Geometric constants of a curve.
#[derive(Debug, Clone, Serialize)]
pub struct CurveGeometryReport {
    pub c_gamma: f64,
    pub chord_arc_b: f64,
    pub area: f64,
    pub length: f64,
}

/// Result of sweeping the kernel inequality |K(s,t)| <= C d^(1+mu) over a
/// pair grid.
#[derive(Debug, Clone, Serialize)]
pub struct KernelBoundCheck {
    pub max_violation: f64,
    pub holds: bool,
    pub pairs_checked: usize,
}

/// Build a curve with default options. Points are planar positions encoded
/// as complex numbers.
pub fn build_curve(points: &[Complex64], holder_exponent: f64) -> Result<JordanCurve> {
    JordanCurve::build_with(points, holder_exponent, CurveOptions::default())
}

impl JordanCurve {
    pub fn build_with(
        points: &[Complex64],
        holder_exponent: f64,
        opts: CurveOptions,
    ) -> Result<JordanCurve> {
        if !(holder_exponent > 0.0 && holder_exponent <= 1.0) {
            return Err(Error::ParamOutOfRange {
                name: "holder_exponent",
                value: holder_exponent,
                range: "(0, 1]",
            });
        }
        assert!(
            opts.resample.is_power_of_two() && opts.resample >= 64,
            "resample count must be a power of two >= 64"
        );

        let pts = dedup_points(points);
        if pts.len() < 16 {
            return Err(Error::TooFewSamples {
                min: 16,
                got: pts.len(),
            });
        }

        // Counterclockwise normalization before any oriented quantity.
        let mut pts = pts;
        if shoelace_area(&pts) < 0.0 {
            pts.reverse();
        }

        check_simple(&pts)?;

        let (samples, length) = spline::resample_closed(&pts, opts.resample);

        if opts.require_origin_inside {
            let w = winding_number(&samples, Complex64::new(0.0, 0.0));
            if w != 1 {
                return Err(Error::OriginOutside { winding: w });
            }
        }

        let n = samples.len();
        let spectrum = Spectrum::from_samples(&samples, n / 2 - 1);
        // d/ds = (2 pi / l) d/dphi on the arc-length grid.
        let tangent_spectrum = {
            let mut d = spectrum.derivative();
            d = scale_spectrum(&d, TAU / length);
            d
        };
        let tangents = tangent_spectrum.synthesize(n);

        // Green's theorem with the spectral tangent; the trapezoid rule is
        // spectrally accurate on the periodic integrand.
        let h = length / n as f64;
        let area = 0.5
            * h
            * samples
                .iter()
                .zip(tangents.iter())
                .map(|(z, t)| z.re * t.im - z.im * t.re)
                .sum::<f64>();

        Ok(JordanCurve {
            samples,
            tangents,
            spectrum,
            tangent_spectrum,
            length,
            area,
            holder_exponent,
        })
    }

    /// Unit circle sampled at n arc-length positions.
    pub fn circle(n: usize) -> JordanCurve {
        let pts: Vec<Complex64> = (0..n.max(64))
            .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / n.max(64) as f64))
            .collect();
        JordanCurve::build_with(
            &pts,
            1.0,
            CurveOptions {
                resample: n,
                ..CurveOptions::default()
            },
        )
        .expect("circle construction cannot fail")
    }

    /// Axis-aligned ellipse (a cos t, b sin t).
    pub fn ellipse(a: f64, b: f64, n: usize) -> Result<JordanCurve> {
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::ParamOutOfRange {
                name: "ellipse semiaxis",
                value: a.min(b),
                range: "(0, inf)",
            });
        }
        let dense = (2 * n).max(2048);
        let pts: Vec<Complex64> = (0..dense)
            .map(|k| {
                let t = TAU * k as f64 / dense as f64;
                Complex64::new(a * t.cos(), b * t.sin())
            })
            .collect();
        JordanCurve::build_with(
            &pts,
            1.0,
            CurveOptions {
                resample: n,
                ..CurveOptions::default()
            },
        )
    }

    pub fn n_samples(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn tangents(&self) -> &[Complex64] {
        &self.tangents
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn holder_exponent(&self) -> f64 {
        self.holder_exponent
    }

    pub fn enclosed_area(&self) -> f64 {
        self.area
    }

    /// Arc position of sample i.
    pub fn arc_position(&self, i: usize) -> f64 {
        self.length * (i % self.samples.len()) as f64 / self.samples.len() as f64
    }

    /// Curve point at arbitrary arc position (trigonometric interpolation).
    pub fn point_at(&self, s: f64) -> Complex64 {
        self.spectrum.eval_at(TAU * s / self.length)
    }

    /// Unit tangent dg/ds at arbitrary arc position.
    pub fn tangent_at(&self, s: f64) -> Complex64 {
        self.tangent_spectrum.eval_at(TAU * s / self.length)
    }

    /// Distance along the curve between arc positions s and t:
    /// min(|s - t|, l - |s - t|) after reducing both arguments mod l.
    pub fn arc_distance(&self, s: f64, t: f64) -> f64 {
        let l = self.length;
        let d = (s.rem_euclid(l) - t.rem_euclid(l)).abs();
        d.min(l - d)
    }

    /// Geometric kernel Re[conj(g(t) - g(s)) i g'(s)] at arbitrary arc
    /// positions.
    pub fn curvature_kernel(&self, s: f64, t: f64) -> f64 {
        let gs = self.point_at(s);
        let gt = self.point_at(t);
        let tp = self.tangent_at(s);
        ((gt - gs).conj() * Complex64::new(0.0, 1.0) * tp).re
    }

    /// Same kernel on the sample grid (no interpolation).
    pub fn curvature_kernel_grid(&self, i: usize, j: usize) -> f64 {
        let n = self.samples.len();
        let gs = self.samples[i % n];
        let gt = self.samples[j % n];
        let tp = self.tangents[i % n];
        ((gt - gs).conj() * Complex64::new(0.0, 1.0) * tp).re
    }

    fn grid_spacing(&self) -> f64 {
        self.length / self.samples.len() as f64
    }

    fn pair_stride(&self) -> usize {
        let n = self.samples.len();
        let mut stride = 1;
        while (n / stride) * (n / stride) > MAX_PAIRS {
            stride *= 2;
        }
        stride
    }

    /// Holder constant of the tangent:
    /// C_gamma = sup |g'(s) - g'(t)| / |s - t|^mu / (1 + mu),
    /// with the pair separation kept at or above two sample spacings so the
    /// quotient is not dominated by differentiation noise.
    pub fn holder_constant(&self) -> Result<f64> {
        self.tangent_stability_check()?;
        let n = self.samples.len();
        let mu = self.holder_exponent;
        let h = self.grid_spacing();
        let min_sep = 2.0 * h;
        let stride = self.pair_stride();

        let mut best = f64::MIN;
        let mut best_pair = (0.0, 0.0);
        let mut i = 0;
        while i < n {
            let si = self.arc_position(i);
            let ti = self.tangents[i];
            let mut j = i + stride;
            while j < n {
                let x = (j - i) as f64 * h;
                if x >= min_sep {
                    let q = (self.tangents[j] - ti).norm() / x.powf(mu);
                    if q > best {
                        best = q;
                        best_pair = (si, self.arc_position(j));
                    }
                }
                j += stride;
            }
            i += stride;
        }

        // Local refinement at continuous arc positions around the best pair,
        // never letting the separation drop below min_sep.
        let quotient = |s: f64, t: f64| -> f64 {
            let x = (s - t).abs();
            if x < min_sep {
                return f64::MIN;
            }
            (self.tangent_at(s) - self.tangent_at(t)).norm() / x.powf(mu)
        };
        let refined = refine_pair(quotient, best_pair, stride as f64 * h, best);

        Ok(refined / (1.0 + mu))
    }

    /// Chord-arc constant B = sup d_gamma(z1, z2) / |z1 - z2|.
    pub fn chord_arc_constant(&self) -> f64 {
        let n = self.samples.len();
        let h = self.grid_spacing();
        let stride = self.pair_stride();

        let mut best = f64::MIN;
        let mut best_pair = (0.0, 0.0);
        let mut i = 0;
        while i < n {
            let zi = self.samples[i];
            let si = self.arc_position(i);
            let mut j = i + stride;
            while j < n {
                let darc = self.arc_distance(si, self.arc_position(j));
                let chord = (self.samples[j] - zi).norm();
                if chord > 0.0 {
                    let q = darc / chord;
                    if q > best {
                        best = q;
                        best_pair = (si, self.arc_position(j));
                    }
                }
                j += stride;
            }
            i += stride;
        }

        let ratio = |s: f64, t: f64| -> f64 {
            if (s - t).abs() < 0.25 * h {
                return f64::MIN;
            }
            let chord = (self.point_at(s) - self.point_at(t)).norm();
            if chord <= 0.0 {
                return f64::MIN;
            }
            self.arc_distance(s, t) / chord
        };
        refine_pair(ratio, best_pair, stride as f64 * h, best)
    }

    /// Sweep |K(s,t)| <= C_gamma d_gamma^(1+mu) over a grid_points x
    /// grid_points pair grid.
    pub fn kernel_bound_check(&self, grid_points: usize) -> Result<KernelBoundCheck> {
        let c_gamma = self.holder_constant()?;
        let n = self.samples.len();
        let stride = (n / grid_points).max(1);
        let mu = self.holder_exponent;
        let mut max_violation = f64::MIN;
        let mut pairs = 0usize;
        let mut i = 0;
        while i < n {
            let si = self.arc_position(i);
            let mut j = 0;
            while j < n {
                if i != j {
                    let d = self.arc_distance(si, self.arc_position(j));
                    let v = self.curvature_kernel_grid(i, j).abs() - c_gamma * d.powf(1.0 + mu);
                    if v > max_violation {
                        max_violation = v;
                    }
                    pairs += 1;
                }
                j += stride;
            }
            i += stride;
        }
        Ok(KernelBoundCheck {
            max_violation,
            holds: max_violation <= 1e-12 * (1.0 + self.length),
            pairs_checked: pairs,
        })
    }

    pub fn geometry_report(&self) -> Result<CurveGeometryReport> {
        Ok(CurveGeometryReport {
            c_gamma: self.holder_constant()?,
            chord_arc_b: self.chord_arc_constant(),
            area: self.area,
            length: self.length,
        })
    }

    /// Nearest arc position on the sampled curve along with the distance
    /// from `p` to the curve (segment-projected).
    pub fn nearest_arc_position(&self, p: Complex64) -> (f64, f64) {
        let n = self.samples.len();
        let mut best_i = 0;
        let mut best_d2 = f64::MAX;
        for (i, z) in self.samples.iter().enumerate() {
            let d2 = (p - z).norm_sqr();
            if d2 < best_d2 {
                best_d2 = d2;
                best_i = i;
            }
        }
        let h = self.grid_spacing();
        let mut best = (self.arc_position(best_i), best_d2.sqrt());
        for off in [n - 1, 0] {
            let a_idx = (best_i + off) % n;
            let b_idx = (a_idx + 1) % n;
            let a = self.samples[a_idx];
            let b = self.samples[b_idx];
            let ab = b - a;
            let denom = ab.norm_sqr();
            if denom == 0.0 {
                continue;
            }
            let u = (((p - a).conj() * ab).re / denom).clamp(0.0, 1.0);
            let proj = a + u * ab;
            let dist = (p - proj).norm();
            if dist < best.1 {
                best = ((self.arc_position(a_idx) + u * h).rem_euclid(self.length), dist);
            }
        }
        best
    }

    /// Tangents recomputed at half resolution must agree with the stored
    /// ones; otherwise the curve is too rough for the sampled estimators.
    fn tangent_stability_check(&self) -> Result<()> {
        let n = self.samples.len();
        let half: Vec<Complex64> = self.samples.iter().step_by(2).cloned().collect();
        let spectrum = Spectrum::from_samples(&half, half.len() / 2 - 1);
        let tangents_half = scale_spectrum(&spectrum.derivative(), TAU / self.length)
            .synthesize(half.len());
        let mut dev: f64 = 0.0;
        for (k, th) in tangents_half.iter().enumerate().take(n / 2) {
            dev = dev.max((th - self.tangents[2 * k]).norm());
        }
        if dev > TANGENT_STABILITY_TOL {
            Err(Error::NumericallyUnstable { deviation: dev })
        } else {
            Ok(())
        }
    }
}

fn scale_spectrum(sp: &Spectrum, factor: f64) -> Spectrum {
    let m = sp.max_mode();
    let coeffs = (0..=2 * m)
        .map(|k| sp.coeff(k as i64 - m as i64) * factor)
        .collect();
    Spectrum::from_coeffs(coeffs, m)
}

/// Shrinking local grid search around a starting pair; returns the best
/// value seen (at least `start_value`).
fn refine_pair<F: Fn(f64, f64) -> f64>(
    f: F,
    start: (f64, f64),
    initial_span: f64,
    start_value: f64,
) -> f64 {
    let mut center = start;
    let mut best = start_value;
    let mut span = initial_span;
    for _ in 0..4 {
        let mut improved = center;
        for a in -2..=2 {
            for b in -2..=2 {
                let s = center.0 + a as f64 * span / 2.0;
                let t = center.1 + b as f64 * span / 2.0;
                let v = f(s, t);
                if v > best {
                    best = v;
                    improved = (s, t);
                }
            }
        }
        center = improved;
        span /= 2.0;
    }
    best
}

fn dedup_points(points: &[Complex64]) -> Vec<Complex64> {
    let scale = points
        .iter()
        .map(|p| p.norm())
        .fold(0.0f64, f64::max)
        .max(1.0);
    let eps = 1e-13 * scale;
    let mut out: Vec<Complex64> = Vec::with_capacity(points.len());
    for &p in points {
        if out.last().is_none_or(|&q| (p - q).norm() > eps) {
            out.push(p);
        }
    }
    while out.len() > 1 && (out[0] - *out.last().unwrap()).norm() <= eps {
        out.pop();
    }
    out
}

fn shoelace_area(points: &[Complex64]) -> f64 {
    let n = points.len();
    0.5 * (0..n)
        .map(|i| {
            let a = points[i];
            let b = points[(i + 1) % n];
            a.re * b.im - b.re * a.im
        })
        .sum::<f64>()
}

/// Winding number of the closed polygon around `origin`.
pub fn winding_number(points: &[Complex64], origin: Complex64) -> i32 {
    let n = points.len();
    let mut total = 0.0;
    for i in 0..n {
        let a = points[i] - origin;
        let b = points[(i + 1) % n] - origin;
        total += (b / a).arg();
    }
    (total / TAU).round() as i32
}

/// Reject polygons with properly intersecting non-adjacent segments. Large
/// inputs are decimated; the test is at sample resolution by construction.
fn check_simple(points: &[Complex64]) -> Result<()> {
    let stride = (points.len() / 4096).max(1);
    let pts: Vec<Complex64> = points.iter().step_by(stride).cloned().collect();
    let n = pts.len();
    for i in 0..n {
        let a1 = pts[i];
        let a2 = pts[(i + 1) % n];
        for j in i + 2..n {
            // Skip the closing segment's adjacency with segment 0.
            if i == 0 && j == n - 1 {
                continue;
            }
            let b1 = pts[j];
            let b2 = pts[(j + 1) % n];
            if segments_intersect(a1, a2, b1, b2) {
                return Err(Error::SelfIntersection {
                    i: i * stride,
                    j: j * stride,
                });
            }
        }
    }
    Ok(())
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

fn segments_intersect(p1: Complex64, p2: Complex64, q1: Complex64, q2: Complex64) -> bool {
    let d1 = cross(q1, q2, p1);
    let d2 = cross(q1, q2, p2);
    let d3 = cross(p1, p2, q1);
    let d4 = cross(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn circle_points(n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / n as f64))
            .collect()
    }

    fn ellipse_points(a: f64, b: f64, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|k| {
                let t = TAU * k as f64 / n as f64;
                Complex64::new(a * t.cos(), b * t.sin())
            })
            .collect()
    }

    #[test]
    fn circle_length_and_area() {
        let c = build_curve(&circle_points(1024), 1.0).unwrap();
        assert!((c.length() - TAU).abs() < 1e-6, "length {}", c.length());
        assert!((c.enclosed_area() - PI).abs() < 1e-6, "area {}", c.enclosed_area());
    }

    #[test]
    fn ellipse_area_matches_dense_shoelace() {
        let c = build_curve(&ellipse_points(2.0, 1.0, 1024), 1.0).unwrap();
        // Shoelace oracle on a dense polygon.
        let oracle = shoelace_area(&ellipse_points(2.0, 1.0, 1 << 20));
        assert!((c.enclosed_area() - oracle).abs() < 1e-4);
        assert!((c.enclosed_area() - 2.0 * PI).abs() < 1e-4);
    }

    #[test]
    fn figure_eight_is_rejected() {
        let pts: Vec<Complex64> = (0..128)
            .map(|k| {
                let t = TAU * k as f64 / 128.0;
                Complex64::new(t.cos(), 0.5 * (2.0 * t).sin())
            })
            .collect();
        match build_curve(&pts, 1.0) {
            Err(Error::SelfIntersection { .. }) => {}
            other => panic!("expected SelfIntersection, got {other:?}"),
        }
    }

    #[test]
    fn too_few_and_shifted_curves_fail() {
        let pts = circle_points(8);
        assert!(matches!(
            build_curve(&pts, 1.0),
            Err(Error::TooFewSamples { .. })
        ));
        let shifted: Vec<Complex64> = circle_points(128)
            .into_iter()
            .map(|p| p + Complex64::new(5.0, 0.0))
            .collect();
        assert!(matches!(
            build_curve(&shifted, 1.0),
            Err(Error::OriginOutside { .. })
        ));
    }

    #[test]
    fn clockwise_input_is_normalized_to_ccw() {
        let mut pts = circle_points(256);
        pts.reverse();
        let c = build_curve(&pts, 1.0).unwrap();
        assert!(c.enclosed_area() > 0.0);
    }

    #[test]
    fn arc_distance_basics() {
        let c = JordanCurve::circle(1024);
        // Accuracy is limited by the spline length, not by arithmetic.
        assert!((c.arc_distance(0.0, PI) - PI).abs() < 1e-6);
        assert!((c.arc_distance(0.0, 3.0 * PI / 2.0) - PI / 2.0).abs() < 1e-6);
        assert_eq!(c.arc_distance(1.0, 1.0), 0.0);
        // Symmetry and the l/2 cap on a sampled pair sweep.
        for i in 0..64 {
            let (s, t) = (c.arc_position(i * 16), c.arc_position(i * 7 + 3));
            assert_eq!(c.arc_distance(s, t), c.arc_distance(t, s));
            assert!(c.arc_distance(s, t) <= c.length() / 2.0 + 1e-12);
        }
    }

    #[test]
    fn circle_kernel_closed_form() {
        let c = JordanCurve::circle(1024);
        let pairs: [(f64, f64); 4] = [(0.0, 1.0), (0.5, 2.5), (3.0, 0.25), (1.0, 1.0)];
        for &(s, t) in &pairs {
            let expect = 1.0 - (s - t).cos();
            assert!(
                (c.curvature_kernel(s, t) - expect).abs() < 1e-8,
                "kernel({s},{t})"
            );
        }
        // Grid variant agrees with the interpolated one.
        let n = c.n_samples();
        for &(i, j) in &[(0usize, 37usize), (100, 900), (5, 5)] {
            let (si, sj) = (c.arc_position(i), c.arc_position(j));
            assert!((c.curvature_kernel_grid(i, j) - c.curvature_kernel(si, sj)).abs() < 1e-8);
        }
        assert!(n >= 1024);
    }

    #[test]
    fn circle_holder_constant_is_half() {
        let c = JordanCurve::circle(1024);
        let cg = c.holder_constant().unwrap();
        assert!((cg - 0.5).abs() < 1e-3, "C_gamma = {cg}");
        let c2 = JordanCurve::circle(2048);
        let cg2 = c2.holder_constant().unwrap();
        assert!((cg - cg2).abs() / cg < 1e-3);
    }

    #[test]
    fn ellipse_holder_constant_stable_across_resolutions() {
        let a = build_curve(&ellipse_points(2.0, 1.0, 2048), 1.0).unwrap();
        let b = JordanCurve::build_with(
            &ellipse_points(2.0, 1.0, 4096),
            1.0,
            CurveOptions {
                resample: 2048,
                ..CurveOptions::default()
            },
        )
        .unwrap();
        let ca = a.holder_constant().unwrap();
        let cb = b.holder_constant().unwrap();
        assert!((ca - cb).abs() / ca < 1e-3, "{ca} vs {cb}");
    }

    #[test]
    fn circle_chord_arc_is_half_pi() {
        let c = JordanCurve::circle(1024);
        let b = c.chord_arc_constant();
        assert!((b - PI / 2.0).abs() < 1e-3, "B = {b}");
        assert!(b >= 1.0);
    }

    #[test]
    fn ellipse_chord_arc_stable() {
        let a = build_curve(&ellipse_points(2.0, 1.0, 1024), 1.0).unwrap();
        let b = build_curve(&ellipse_points(2.0, 1.0, 2048), 1.0).unwrap();
        let (ba, bb) = (a.chord_arc_constant(), b.chord_arc_constant());
        assert!((ba - bb).abs() / ba < 1e-3, "{ba} vs {bb}");
        assert!(ba >= 1.0);
    }

    #[test]
    fn kernel_bound_holds_on_circle_and_ellipse() {
        let c = JordanCurve::circle(2048);
        let check = c.kernel_bound_check(512).unwrap();
        assert!(check.holds, "violation {}", check.max_violation);

        let e = build_curve(&ellipse_points(2.0, 1.0, 2048), 1.0).unwrap();
        let check = e.kernel_bound_check(512).unwrap();
        assert!(check.holds, "violation {}", check.max_violation);
    }

    #[test]
    fn isoperimetric_inequality() {
        for curve in [
            JordanCurve::circle(1024),
            build_curve(&ellipse_points(2.0, 1.0, 1024), 1.0).unwrap(),
        ] {
            assert!(curve.enclosed_area() <= curve.length().powi(2) / (4.0 * PI) + 1e-9);
        }
    }

    #[test]
    fn constants_invariant_under_rotation() {
        let rot = Complex64::from_polar(1.0, 0.7);
        let pts: Vec<Complex64> = ellipse_points(2.0, 1.0, 1024);
        let rotated: Vec<Complex64> = pts.iter().map(|p| p * rot).collect();
        let a = build_curve(&pts, 1.0).unwrap();
        let b = build_curve(&rotated, 1.0).unwrap();
        assert!((a.length() - b.length()).abs() / a.length() < 1e-6);
        assert!((a.enclosed_area() - b.enclosed_area()).abs() / a.enclosed_area() < 1e-6);
        let (ca, cb) = (a.holder_constant().unwrap(), b.holder_constant().unwrap());
        assert!((ca - cb).abs() / ca < 1e-6, "{ca} vs {cb}");
        let (ba, bb) = (a.chord_arc_constant(), b.chord_arc_constant());
        assert!((ba - bb).abs() / ba < 1e-6, "{ba} vs {bb}");
    }

    #[test]
    fn nearest_arc_position_projects_onto_curve() {
        let c = JordanCurve::circle(1024);
        // Points close to the curve (the validated regime) project to an
        // accurate arc position.
        let (s, d) = c.nearest_arc_position(Complex64::from_polar(1.001, 1.0));
        assert!((d - 0.001).abs() < 1e-5);
        assert!((s - 1.0).abs() < 1e-4);
        let (s, d) = c.nearest_arc_position(Complex64::from_polar(1.0, 2.5));
        assert!(d < 1e-5);
        assert!((s - 2.5).abs() < 1e-4);
    }

    #[test]
    fn reparameterization_is_unit_speed() {
        // Uniform arc-length samples make the spectral tangent a unit
        // vector; its deviation measures the resampling quality.
        for curve in [
            JordanCurve::circle(1024),
            build_curve(&ellipse_points(2.0, 1.0, 2048), 1.0).unwrap(),
        ] {
            let worst = curve
                .tangents()
                .iter()
                .map(|t| (t.norm() - 1.0).abs())
                .fold(0.0f64, f64::max);
            assert!(worst < 1e-5, "speed deviation {worst}");
        }
    }

    #[test]
    fn doubling_resolution_leaves_holder_constant_stable() {
        let c1 = JordanCurve::circle(1024);
        let c2 = JordanCurve::circle(2048);
        let (a, b) = (c1.holder_constant().unwrap(), c2.holder_constant().unwrap());
        assert!((a - b).abs() / a < 1e-3);
    }
}
