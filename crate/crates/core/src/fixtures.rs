//! Built-in boundary maps with known closed forms.
//!
//! Besides the affine stretch and simple circle warps used throughout the
//! test suite, two classical counter-examples are provided:
//!
//! * example 1: the circle warp e^{i theta(phi)} with
//!   theta(phi) = phi (1 + b sin(log|phi| - pi/4)) / (1 + b sin(log pi - pi/4)),
//!   0 < b < sqrt(2)/2. The extension stays quasiconformal with distortion
//!   approaching 1 as b -> 0, yet theta'(0) does not exist: the difference
//!   quotient oscillates forever along h -> 0.
//! * example 2: the harmonic polynomial w = 3z - 3 - z^2 + conj(z), a
//!   univalent harmonic map onto a convex region whose boundary stretch
//!   degenerates at z = 1 (|w_z| = |w_zbar| = 1 there), so it is not
//!   quasiconformal for any K.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

use crate::boundary::{build_boundary_map, BoundaryMap};
use crate::curve::{CurveOptions, JordanCurve};
use crate::error::{Error, Result};
use crate::extension::{extend, GridSpec, HarmonicMap};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A curve, a validated boundary map onto it, and the harmonic extension.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub curve: JordanCurve,
    pub boundary: BoundaryMap,
    pub harmonic: HarmonicMap,
}

/// Parameters of the oscillatory circle warp (example 1).
#[derive(Debug, Clone, Copy)]
pub struct Example1Params {
    pub b: f64,
    pub n_samples: usize,
}

/// One row of the distortion trend table.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TrendPoint {
    pub b: f64,
    pub sup_k: f64,
}

/// One difference quotient sample at phi = 0.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct QuotientSample {
    pub h: f64,
    pub quotient: f64,
}

/// Identity boundary map on the unit circle.
pub fn identity(n: usize) -> Fixture {
    rotation(n, 0.0)
}

/// Rotation f(z) = e^{i beta} z on the unit circle.
pub fn rotation(n: usize, beta: f64) -> Fixture {
    let curve = JordanCurve::circle(n.max(1024));
    let rot = Complex64::from_polar(1.0, beta);
    let values: Vec<Complex64> = (0..n)
        .map(|j| rot * (I * (TAU * j as f64 / n as f64)).exp())
        .collect();
    let boundary = build_boundary_map(&values, &curve).expect("rotation is a valid map");
    let harmonic = extend(&boundary);
    Fixture {
        curve,
        boundary,
        harmonic,
    }
}

/// Affine stretch w = z + k conj(z): boundary e^{i phi} + k e^{-i phi} on
/// the ellipse with semiaxes 1 + k, 1 - k. Its distortion is exactly
/// (1 + k) / (1 - k) at every point.
pub fn affine_stretch(k: f64, n: usize) -> Result<Fixture> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::ParamOutOfRange {
            name: "k",
            value: k,
            range: "[0, 1)",
        });
    }
    let curve = JordanCurve::ellipse(1.0 + k, 1.0 - k, n.max(1024))?;
    let values: Vec<Complex64> = (0..n)
        .map(|j| {
            let p = TAU * j as f64 / n as f64;
            (I * p).exp() + k * (-I * p).exp()
        })
        .collect();
    let boundary = build_boundary_map(&values, &curve)?;
    let harmonic = extend(&boundary);
    Ok(Fixture {
        curve,
        boundary,
        harmonic,
    })
}

/// Normalized non-trivial circle warp f = e^{i(phi + a sin 3phi)}.
///
/// The warp fixes the three anchor angles 0, 2pi/3, 4pi/3, so the map stays
/// normalized; it is a homeomorphism for |a| < 1/3.
pub fn warped_circle(a: f64, n: usize) -> Result<Fixture> {
    if a.abs() >= 1.0 / 3.0 {
        return Err(Error::ParamOutOfRange {
            name: "a",
            value: a,
            range: "(-1/3, 1/3)",
        });
    }
    let curve = JordanCurve::circle(n.max(1024));
    let values: Vec<Complex64> = (0..n)
        .map(|j| {
            let p = TAU * j as f64 / n as f64;
            (I * (p + a * (3.0 * p).sin())).exp()
        })
        .collect();
    let boundary = build_boundary_map(&values, &curve)?;
    let harmonic = extend(&boundary);
    Ok(Fixture {
        curve,
        boundary,
        harmonic,
    })
}

/// theta(phi) of example 1 on [-pi, pi] (any phi is reduced first);
/// theta(0) = 0 by continuity.
pub fn example1_theta(b: f64, phi: f64) -> f64 {
    let mut p = phi;
    if !(-PI..=PI).contains(&p) {
        p = phi.rem_euclid(TAU);
        if p > PI {
            p -= TAU;
        }
    }
    if p == 0.0 {
        return 0.0;
    }
    let denom = 1.0 + b * (PI.ln() - PI / 4.0).sin();
    p * (1.0 + b * (p.abs().ln() - PI / 4.0).sin()) / denom
}

fn check_example1_b(b: f64) -> Result<()> {
    if !(b > 0.0 && b < std::f64::consts::SQRT_2 / 2.0) {
        return Err(Error::ParamOutOfRange {
            name: "b",
            value: b,
            range: "(0, sqrt(2)/2)",
        });
    }
    Ok(())
}

/// Boundary samples of example 1 on the unit circle.
pub fn example1_boundary(params: Example1Params) -> Result<Fixture> {
    check_example1_b(params.b)?;
    let n = params.n_samples;
    let curve = JordanCurve::circle(n.max(1024));
    let values: Vec<Complex64> = (0..n)
        .map(|j| (I * example1_theta(params.b, TAU * j as f64 / n as f64)).exp())
        .collect();
    let boundary = build_boundary_map(&values, &curve)?;
    let harmonic = extend(&boundary);
    Ok(Fixture {
        curve,
        boundary,
        harmonic,
    })
}

/// Measured interior distortion supremum per b, on a fixed grid.
pub fn example1_k_trend(
    bs: &[f64],
    n_samples: usize,
    grid: &GridSpec,
) -> Result<Vec<TrendPoint>> {
    // One circle serves every b.
    let curve = JordanCurve::circle(n_samples.max(1024));
    bs.iter()
        .map(|&b| {
            check_example1_b(b)?;
            let values: Vec<Complex64> = (0..n_samples)
                .map(|j| (I * example1_theta(b, TAU * j as f64 / n_samples as f64)).exp())
                .collect();
            let boundary = build_boundary_map(&values, &curve)?;
            let sup = extend(&boundary).grid_sup_k(grid)?;
            Ok(TrendPoint { b, sup_k: sup.sup_k })
        })
        .collect()
}

/// Difference quotients |theta(h) - theta(0)| / h at h = 2^-j, j = 4..=40.
///
/// The quotient equals (1 + b sin(log h - pi/4)) / (1 + b sin(log pi - pi/4))
/// and oscillates along the dyadic sequence without converging, which is the
/// evidence that theta'(0) does not exist.
pub fn example1_nondiff_evidence(b: f64) -> Result<Vec<QuotientSample>> {
    check_example1_b(b)?;
    Ok((4..=40)
        .map(|j| {
            let h = 2f64.powi(-j);
            QuotientSample {
                h,
                quotient: (example1_theta(b, h) - example1_theta(b, 0.0)).abs() / h,
            }
        })
        .collect())
}

/// Spread (max - min) of the difference-quotient sequence.
pub fn example1_oscillation_amplitude(b: f64) -> Result<f64> {
    let ev = example1_nondiff_evidence(b)?;
    let max = ev.iter().map(|q| q.quotient).fold(f64::MIN, f64::max);
    let min = ev.iter().map(|q| q.quotient).fold(f64::MAX, f64::min);
    Ok(max - min)
}

/// The degenerate harmonic polynomial w = 3z - 3 - z^2 + conj(z) together
/// with its image curve, traced from the polynomial's own boundary values.
///
/// The image boundary passes through the origin (w(1) = 0), so the
/// origin-interior requirement is waived for this curve. Its arc-length
/// tangent is Holder-1/3 at that point, which fixes the exponent below.
pub fn example2_map(n: usize) -> (HarmonicMap, JordanCurve) {
    let harmonic = HarmonicMap::from_parts(
        vec![
            Complex64::new(-3.0, 0.0),
            Complex64::new(3.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ],
        vec![Complex64::new(1.0, 0.0)],
    );
    let dense = 2 * n.max(1024);
    let pts: Vec<Complex64> = (0..dense)
        .map(|k| {
            let t = TAU * k as f64 / dense as f64;
            example2_trace(t)
        })
        .collect();
    let curve = JordanCurve::build_with(
        &pts,
        1.0 / 3.0,
        CurveOptions {
            resample: n.max(1024),
            require_origin_inside: false,
        },
    )
    .expect("the polynomial trace is a simple curve");
    (harmonic, curve)
}

/// Boundary value w(e^{it}) = (4cos t - cos 2t - 3) + i(2 sin t - sin 2t).
pub fn example2_trace(t: f64) -> Complex64 {
    Complex64::new(
        4.0 * t.cos() - (2.0 * t).cos() - 3.0,
        2.0 * t.sin() - (2.0 * t).sin(),
    )
}

/// Full example-2 fixture with a validated boundary map.
pub fn example2_fixture(n: usize) -> Fixture {
    let (harmonic, curve) = example2_map(n);
    let values: Vec<Complex64> = (0..n)
        .map(|j| example2_trace(TAU * j as f64 / n as f64))
        .collect();
    let boundary =
        build_boundary_map(&values, &curve).expect("polynomial trace lies on its own curve");
    Fixture {
        curve,
        boundary,
        harmonic,
    }
}
