//! Explicit distortion bounds and their verification against measured data.
//!
//! Four bound families are computed here:
//!
//! * the sharp quasiconformality constant from the three boundary norms,
//!   K = sqrt(||f'||^2 + ||H(f')||^2 - l(f)^2) / l(f), together with the
//!   auxiliary quantities S and mu_2 it factors through;
//! * the boundary Holder pair (alpha, L_gamma(K)) for normalized maps onto
//!   a B-chord-arc curve of area |Omega|:
//!   alpha = 1 / (K (1+2B)^2), L_gamma(K) = 4 (1+2B) 2^alpha
//!   sqrt(K |Omega| / (pi log 2));
//! * the explicit interior Lipschitz constant L (reported in log10 because
//!   it overflows doubles for moderate K);
//! * the radial Jacobian bound
//!   limsup_{r->1} J_w(r e^{i phi}) <= C_gamma |f'(phi)|
//!   int d_gamma(f(e^{i(phi+x)}), f(e^{i phi}))^{1+mu} / x^2 dx.
//!
//! Each family comes with a measuring harness (seeded pair sweeps or radial
//! probes) so the inequalities can be checked, not just printed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::{LN_2, PI, TAU};

use crate::boundary::{check_normalized, BoundaryDerivatives, BoundaryMap};
use crate::curve::JordanCurve;
use crate::error::{Error, Result};
use crate::extension::{GridSupremum, HarmonicMap};

/// Multiplicative slack on bound-versus-measured comparisons; every measured
/// quantity carries grid-resolution error.
pub const BOUND_SLACK: f64 = 1e-3;

/// Radii used to probe the radial limsup of the Jacobian.
pub const JACOBIAN_PROBE_RADII: [f64; 3] = [1.0 - 4e-3, 1.0 - 2e-3, 1.0 - 1e-3];

/// The distortion constant from boundary norms and its factor quantities.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DistortionBound {
    /// S = (||f'||^2 + ||H(f')||^2) / (2 l(f)^2), always >= 1.
    pub s: f64,
    /// Larger root of the dilatation quadratic; reported, never used as a
    /// bound (it exceeds 1). None when S = 1 (the root escapes to infinity).
    pub mu1: Option<f64>,
    /// Smaller root: the certified bound on the boundary dilatation.
    pub mu2: f64,
    /// k = (K - 1) / (K + 1).
    pub small_k: f64,
    /// K = sqrt(||f'||^2 + ||H(f')||^2 - l(f)^2) / l(f) = sqrt(2S - 1).
    pub kk: f64,
}

/// Full distortion report: bound versus measured grid supremum.
#[derive(Debug, Clone, Serialize)]
pub struct QcReport {
    pub s: f64,
    pub mu1: Option<f64>,
    pub mu2: f64,
    pub small_k: f64,
    pub kk_bound: f64,
    pub measured_sup_k: f64,
    pub argmax: [f64; 2],
    pub excluded_points: usize,
    pub bound_holds: bool,
    pub sup_f_prime: f64,
    pub sup_hilbert: f64,
    pub l_f: f64,
    pub tail_fraction: f64,
}

/// Explicit interior Lipschitz constant, in linear and log10 form.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LipschitzBound {
    /// The constant itself; +inf when it overflows f64.
    pub value: f64,
    pub log10: f64,
}

/// One phi-slice of the Jacobian bound check.
#[derive(Debug, Clone, Serialize)]
pub struct JacobianCheck {
    pub phi: f64,
    pub rhs: f64,
    pub measured: f64,
    /// J_w at the three probe radii (innermost first); `measured` is the
    /// outermost value.
    pub measured_at_radii: [f64; 3],
    pub holds: bool,
}

/// Seeded pair sweep of the interior Lipschitz inequality.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct InteriorCheck {
    pub max_ratio: f64,
    pub pairs: usize,
    pub holds: bool,
}

/// Seeded pair sweep of the boundary Holder inequality.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HolderCheck {
    pub max_defect: f64,
    pub pairs: usize,
    pub holds: bool,
}

/// Distortion constant from the three boundary norms.
///
/// Fails with `DegenerateLowerBound` when l(f) is below `tolerance`: the
/// norms then certify nothing and the extension is not quasiconformal at
/// this resolution.
pub fn kk_bound(d: &BoundaryDerivatives, tolerance: f64) -> Result<DistortionBound> {
    if d.l_f <= tolerance {
        return Err(Error::DegenerateLowerBound {
            l_f: d.l_f,
            tolerance,
        });
    }
    let num = d.sup_f_prime.powi(2) + d.sup_hilbert.powi(2);
    let s = num / (2.0 * d.l_f.powi(2));
    let kk = (num - d.l_f.powi(2)).sqrt() / d.l_f;
    let root = (2.0 * s - 1.0).sqrt();
    let mu2 = (s - 1.0) / (s + root);
    let mu1 = if s > 1.0 + 1e-12 {
        Some((s + root) / (s - 1.0))
    } else {
        None
    };
    debug_assert!((kk - root).abs() <= 1e-10 * kk.max(1.0));
    debug_assert!(((1.0 + mu2) / (1.0 - mu2) - kk).abs() <= 1e-10 * kk.max(1.0));
    Ok(DistortionBound {
        s,
        mu1,
        mu2,
        small_k: (kk - 1.0) / (kk + 1.0),
        kk,
    })
}

/// Assemble the distortion report: bound from norms versus measured grid
/// supremum of the pointwise distortion.
pub fn qc_report(
    d: &BoundaryDerivatives,
    sup: &GridSupremum,
    tolerance: f64,
) -> Result<QcReport> {
    let bound = kk_bound(d, tolerance)?;
    Ok(QcReport {
        s: bound.s,
        mu1: bound.mu1,
        mu2: bound.mu2,
        small_k: bound.small_k,
        kk_bound: bound.kk,
        measured_sup_k: sup.sup_k,
        argmax: [sup.argmax.re, sup.argmax.im],
        excluded_points: sup.excluded,
        bound_holds: sup.sup_k <= bound.kk * (1.0 + BOUND_SLACK),
        sup_f_prime: d.sup_f_prime,
        sup_hilbert: d.sup_hilbert,
        l_f: d.l_f,
        tail_fraction: d.tail_fraction,
    })
}

/// Boundary Holder data for a normalized K-q.c. map onto a B-chord-arc
/// curve enclosing `area`: exponent alpha = 1/(K (1+2B)^2) and constant
/// L_gamma(K) = 4 (1+2B) 2^alpha sqrt(K area / (pi log 2)).
pub fn holder_bound(k: f64, b: f64, area: f64) -> (f64, f64) {
    let alpha = 1.0 / (k * (1.0 + 2.0 * b).powi(2));
    let holder_c =
        4.0 * (1.0 + 2.0 * b) * 2f64.powf(alpha) * (k * area / (PI * LN_2)).sqrt();
    (alpha, holder_c)
}

/// Explicit interior Lipschitz constant
///
/// L = 4 pi ((pi/2) (K^3/(1+K^2)) C_gamma (2-alpha)/(mu alpha))^((2-alpha)/(mu alpha))
///     * (4 B (1+2B) sqrt(K area / (pi log 2)))^(2/alpha),
///
/// with alpha = 1/(K (1+2B)^2). Evaluated in log space; the linear value is
/// +inf whenever it exceeds f64 range.
pub fn lipschitz_bound(
    k: f64,
    b: f64,
    c_gamma: f64,
    mu: f64,
    area: f64,
) -> Result<LipschitzBound> {
    if !(mu > 0.0 && mu <= 1.0) {
        return Err(Error::ParamOutOfRange {
            name: "mu",
            value: mu,
            range: "(0, 1]",
        });
    }
    for (name, v) in [("k", k), ("b", b), ("c_gamma", c_gamma), ("area", area)] {
        if v <= 0.0 {
            return Err(Error::ParamOutOfRange {
                name,
                value: v,
                range: "(0, inf)",
            });
        }
    }
    let alpha = 1.0 / (k * (1.0 + 2.0 * b).powi(2));
    let exponent = (2.0 - alpha) / (mu * alpha);
    let inner = (PI / 2.0) * (k.powi(3) / (1.0 + k * k)) * c_gamma * exponent;
    let base = 4.0 * b * (1.0 + 2.0 * b) * (k * area / (PI * LN_2)).sqrt();
    let log10 =
        (4.0 * PI).log10() + exponent * inner.log10() + (2.0 / alpha) * base.log10();
    let value = if log10 < 308.0 {
        4.0 * PI * inner.powf(exponent) * base.powf(2.0 / alpha)
    } else {
        f64::INFINITY
    };
    Ok(LipschitzBound { value, log10 })
}

/// Jacobian bound at one boundary angle (snapped to the sample grid):
/// quadrature right-hand side versus near-boundary measurement.
pub fn jacobian_bound(
    curve: &JordanCurve,
    map: &BoundaryMap,
    phi: f64,
) -> Result<JacobianCheck> {
    let derivs = crate::boundary::norms(map)?;
    let c_gamma = curve.holder_constant()?;
    let hmap = crate::extension::extend(map);
    jacobian_bound_at(curve, map, &hmap, &derivs, c_gamma, phi)
}

/// Jacobian bound sweep over many angles with shared precomputation.
pub fn jacobian_bound_sweep(
    curve: &JordanCurve,
    map: &BoundaryMap,
    hmap: &HarmonicMap,
    derivs: &BoundaryDerivatives,
    phis: &[f64],
) -> Result<Vec<JacobianCheck>> {
    let c_gamma = curve.holder_constant()?;
    phis.iter()
        .map(|&phi| jacobian_bound_at(curve, map, hmap, derivs, c_gamma, phi))
        .collect()
}

fn jacobian_bound_at(
    curve: &JordanCurve,
    map: &BoundaryMap,
    hmap: &HarmonicMap,
    derivs: &BoundaryDerivatives,
    c_gamma: f64,
    phi: f64,
) -> Result<JacobianCheck> {
    let n = map.n_samples();
    let h = TAU / n as f64;
    let j = (phi / h).round().rem_euclid(n as f64) as usize % n;
    let phi_j = j as f64 * h;
    let l = curve.length();
    let mu = curve.holder_exponent();

    let s0 = map.arc_position_at(j as f64, l);
    // d_gamma as a function of the angular offset x, via periodic linear
    // interpolation of the unwrapped arc positions.
    let d_gamma = |x: f64| -> f64 {
        let ds = (map.arc_position_at(j as f64 + x / h, l) - s0).abs() % l;
        ds.min(l - ds)
    };
    let integrand = |x: f64| d_gamma(x).powf(1.0 + mu) / (x * x);

    // Cells aligned to the sample grid. The two cells adjacent to x = 0 are
    // integrated in closed form: there d_gamma = slope |x| exactly, so
    // int (slope x)^(1+mu) / x^2 dx = slope^(1+mu) h^mu / mu.
    let slope_plus = (map.arc_position_at(j as f64 + 1.0, l) - s0).abs() / h;
    let slope_minus = (s0 - map.arc_position_at(j as f64 - 1.0, l)).abs() / h;
    let mut integral =
        (slope_plus.powf(1.0 + mu) + slope_minus.powf(1.0 + mu)) * h.powf(mu) / mu;

    let mut worst_residual: f64 = 0.0;
    let cell_tol = 1e-10;
    for k in 1..n / 2 {
        for side in [-1.0, 1.0] {
            let a = side * k as f64 * h;
            let b = side * (k as f64 + 1.0) * h;
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let (v, residual) = adaptive_cell(&integrand, lo, hi, cell_tol, 12);
            integral += v;
            worst_residual = worst_residual.max(residual);
        }
    }
    if worst_residual > 1e-6 {
        return Err(Error::QuadratureNonconvergent {
            residual: worst_residual,
        });
    }

    let rhs = c_gamma * derivs.f_prime[j].norm() * integral;

    let mut measured_at_radii = [0.0; 3];
    for (idx, &r) in JACOBIAN_PROBE_RADII.iter().enumerate() {
        let z = Complex64::from_polar(r, phi_j);
        measured_at_radii[idx] = match hmap.wirtinger(z) {
            Ok(d) => d.jacobian,
            Err(Error::DegenerateDerivative { .. }) => 0.0,
            Err(e) => return Err(e),
        };
    }
    let measured = measured_at_radii[2];
    Ok(JacobianCheck {
        phi: phi_j,
        rhs,
        measured,
        measured_at_radii,
        holds: measured <= rhs * (1.0 + 1e-2),
    })
}

/// Gauss 4/8 pair on one cell; bisect where they disagree.
fn adaptive_cell<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: usize,
) -> (f64, f64) {
    let coarse = gauss4(f, a, b);
    let fine = gauss8(f, a, b);
    let err = (fine - coarse).abs();
    if err <= tol || depth == 0 {
        (fine, if err <= tol { 0.0 } else { err })
    } else {
        let m = 0.5 * (a + b);
        let (v1, r1) = adaptive_cell(f, a, m, tol / 2.0, depth - 1);
        let (v2, r2) = adaptive_cell(f, m, b, tol / 2.0, depth - 1);
        (v1 + v2, r1.max(r2))
    }
}

fn gauss4<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    const X: [f64; 2] = [0.3399810435848563, 0.8611363115940526];
    const W: [f64; 2] = [0.6521451548625461, 0.3478548451374538];
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    for q in 0..2 {
        sum += W[q] * (f(mid + half * X[q]) + f(mid - half * X[q]));
    }
    sum * half
}

fn gauss8<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    const X: [f64; 4] = [
        0.1834346424956498,
        0.525532409916329,
        0.7966664774136267,
        0.9602898564975363,
    ];
    const W: [f64; 4] = [
        0.362683783378362,
        0.3137066458778873,
        0.2223810344533745,
        0.1012285362903763,
    ];
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    for q in 0..4 {
        sum += W[q] * (f(mid + half * X[q]) + f(mid - half * X[q]));
    }
    sum * half
}

/// Seeded sweep of |w(z1) - w(z2)| / |z1 - z2| over random interior pairs;
/// the inequality demands max <= K L (with slack 1e-6).
pub fn interior_lipschitz_check(
    hmap: &HarmonicMap,
    k: f64,
    l_const: f64,
    pairs: usize,
    seed: u64,
    r_max: f64,
) -> InteriorCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_ratio: f64 = 0.0;
    let mut used = 0usize;
    while used < pairs {
        let z1 = sample_disk(&mut rng, r_max);
        let z2 = sample_disk(&mut rng, r_max);
        let dist = (z1 - z2).norm();
        if dist < 1e-9 {
            continue;
        }
        let w1 = hmap.evaluate(z1).expect("inside the disk");
        let w2 = hmap.evaluate(z2).expect("inside the disk");
        max_ratio = max_ratio.max((w1 - w2).norm() / dist);
        used += 1;
    }
    InteriorCheck {
        max_ratio,
        pairs: used,
        holds: max_ratio <= k * l_const * (1.0 + 1e-6),
    }
}

fn sample_disk(rng: &mut ChaCha8Rng, r_max: f64) -> Complex64 {
    let r = r_max * rng.gen::<f64>().sqrt();
    let theta = TAU * rng.gen::<f64>();
    Complex64::from_polar(r, theta)
}

/// Worst defect |f(z1) - f(z2)| - C |z1 - z2|^alpha over seeded boundary
/// pairs (grid points, so sample values are used exactly).
pub fn holder_defect(map: &BoundaryMap, alpha: f64, holder_c: f64, pairs: usize, seed: u64) -> HolderCheck {
    let n = map.n_samples();
    let values = map.values();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_defect = f64::MIN;
    let mut used = 0usize;
    while used < pairs {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let zi = Complex64::from_polar(1.0, TAU * i as f64 / n as f64);
        let zj = Complex64::from_polar(1.0, TAU * j as f64 / n as f64);
        let defect = (values[i] - values[j]).norm() - holder_c * (zi - zj).norm().powf(alpha);
        max_defect = max_defect.max(defect);
        used += 1;
    }
    HolderCheck {
        max_defect,
        pairs: used,
        holds: max_defect <= 0.0,
    }
}

/// Gated version of [`holder_defect`]: the inequality only applies to
/// normalized maps, so non-normalized input is refused.
pub fn holder_check(
    map: &BoundaryMap,
    curve: &JordanCurve,
    alpha: f64,
    holder_c: f64,
    pairs: usize,
    seed: u64,
) -> Result<HolderCheck> {
    let (ok, spec) = check_normalized(map, curve);
    if !ok {
        return Err(Error::NotNormalized {
            arcs: spec.arc_lengths,
            length: curve.length(),
        });
    }
    Ok(holder_defect(map, alpha, holder_c, pairs, seed))
}

/// Everything the bounds pipeline produces for one boundary map.
#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub k_used: f64,
    pub chord_arc_b: f64,
    pub c_gamma: f64,
    pub holder_exponent: f64,
    pub area: f64,
    pub alpha: f64,
    pub holder_c: f64,
    pub lipschitz_l: Option<f64>,
    pub lipschitz_l_log10: f64,
    /// K L: the constant of the interior Lipschitz inequality, with
    /// L = measured sup |f'|.
    pub interior_lipschitz: f64,
    pub normalized: bool,
    pub holder_check: Option<HolderCheck>,
    pub interior_check: InteriorCheck,
    pub jacobian_checks: Vec<JacobianCheck>,
}

/// Compose the full bounds report. `k_used` is the distortion constant the
/// bounds are instantiated with; `n_phis` Jacobian slices are spread
/// uniformly over the circle.
#[allow(clippy::too_many_arguments)]
pub fn bounds_report(
    curve: &JordanCurve,
    map: &BoundaryMap,
    hmap: &HarmonicMap,
    derivs: &BoundaryDerivatives,
    k_used: f64,
    n_phis: usize,
    pairs: usize,
    seed: u64,
    r_max: f64,
) -> Result<BoundsReport> {
    let b = curve.chord_arc_constant();
    let c_gamma = curve.holder_constant()?;
    let area = curve.enclosed_area();
    let (alpha, holder_c) = holder_bound(k_used, b, area);
    let lips = lipschitz_bound(k_used, b, c_gamma, curve.holder_exponent(), area)?;
    let (normalized, _) = check_normalized(map, curve);
    let holder = if normalized {
        Some(holder_defect(map, alpha, holder_c, pairs, seed))
    } else {
        None
    };
    let interior = interior_lipschitz_check(
        hmap,
        k_used,
        derivs.sup_f_prime,
        pairs,
        seed.wrapping_add(1),
        r_max,
    );
    let phis: Vec<f64> = (0..n_phis).map(|i| TAU * i as f64 / n_phis as f64).collect();
    let jacobian_checks = jacobian_bound_sweep(curve, map, hmap, derivs, &phis)?;
    Ok(BoundsReport {
        k_used,
        chord_arc_b: b,
        c_gamma,
        holder_exponent: curve.holder_exponent(),
        area,
        alpha,
        holder_c,
        lipschitz_l: if lips.value.is_finite() {
            Some(lips.value)
        } else {
            None
        },
        lipschitz_l_log10: lips.log10,
        interior_lipschitz: k_used * derivs.sup_f_prime,
        normalized,
        holder_check: holder,
        interior_check: interior,
        jacobian_checks,
    })
}
