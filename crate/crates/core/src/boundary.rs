//! Boundary correspondence analysis.
//!
//! A [`BoundaryMap`] holds uniform samples of a sense-preserving
//! homeomorphism f of the unit circle onto a Jordan curve, validated against
//! the curve (on-curve, monotone, winding +1) together with its Fourier
//! coefficients and the arc position of every sample on the target curve.
//!
//! From it we compute the spectral derivative f', the Hilbert transform
//! H(f') by two independent routes (conjugate-function multiplier and
//! principal-value quadrature on a half-offset grid), the boundary Wirtinger
//! moduli |w_z|, |w_zbar|, and the three norms that control the distortion
//! of the harmonic extension: ||f'||_inf, ||H(f')||_inf and
//! l(f) = ess inf (|w_z| - |w_zbar|).

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::curve::JordanCurve;
use crate::error::{Error, Result};
use crate::spectral::Spectrum;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Fraction of spectral energy allowed above half the retained bandwidth
/// before derivative-based quantities are refused.
pub const SPECTRAL_TAIL_LIMIT: f64 = 1e-6;

/// Validated boundary homeomorphism samples.
#[derive(Debug, Clone)]
pub struct BoundaryMap {
    values: Vec<Complex64>,
    spectrum: Spectrum,
    /// Arc position of each sample on the curve, unwrapped so the sequence
    /// increases by the curve length over one revolution.
    arc_positions: Vec<f64>,
}

/// Derivative-level data and the three boundary norms.
#[derive(Debug, Clone)]
pub struct BoundaryDerivatives {
    pub f_prime: Vec<Complex64>,
    pub hilbert_f_prime: Vec<Complex64>,
    /// max_j |f'(phi_j)|
    pub sup_f_prime: f64,
    /// max_j |H(f')(phi_j)|
    pub sup_hilbert: f64,
    /// min_j (|w_z| - |w_zbar|)(phi_j), clamped below at zero
    pub l_f: f64,
    /// |w_z| per sample (boundary limit)
    pub wz_mod: Vec<f64>,
    /// |w_zbar| per sample (boundary limit)
    pub wzbar_mod: Vec<f64>,
    /// Spectral tail diagnostic of the underlying map
    pub tail_fraction: f64,
}

/// The three anchor images and the arc lengths they cut on the curve.
#[derive(Debug, Clone)]
pub struct NormalizationSpec {
    pub anchors: [Complex64; 3],
    pub arc_lengths: [f64; 3],
}

/// Which route computes the Hilbert transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HilbertMethod {
    /// Conjugate-function multiplier -i sgn(n) on Fourier coefficients.
    Spectral,
    /// Principal-value quadrature of the singular integral on a half-offset
    /// grid (the nodes straddle the singularity symmetrically).
    PrincipalValue,
}

impl BoundaryMap {
    pub fn n_samples(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn arc_positions(&self) -> &[f64] {
        &self.arc_positions
    }

    /// Arc position at a fractional grid index (periodic linear
    /// interpolation of the unwrapped positions).
    pub fn arc_position_at(&self, grid_pos: f64, curve_length: f64) -> f64 {
        let n = self.values.len();
        let x = grid_pos.rem_euclid(n as f64);
        let i = (x.floor() as usize) % n;
        let frac = x - x.floor();
        let a = self.arc_positions[i];
        let b = if i + 1 < n {
            self.arc_positions[i + 1]
        } else {
            self.arc_positions[0] + curve_length
        };
        let turns = ((grid_pos - x) / n as f64).round();
        a + frac * (b - a) + curve_length * turns
    }
}

/// Validate boundary samples against a curve.
///
/// Requirements: N >= 64 and a power of two; every value within tolerance of
/// the curve; winding number +1 around the curve; arc positions monotone.
pub fn build_boundary_map(values: &[Complex64], curve: &JordanCurve) -> Result<BoundaryMap> {
    build_boundary_map_with_modes(values, curve, values.len() / 2 - 1)
}

/// Same as [`build_boundary_map`] with an explicit Fourier mode cap
/// (max_mode < N/2).
pub fn build_boundary_map_with_modes(
    values: &[Complex64],
    curve: &JordanCurve,
    max_mode: usize,
) -> Result<BoundaryMap> {
    let n = values.len();
    if max_mode == 0 || max_mode >= n / 2 {
        return Err(Error::ParamOutOfRange {
            name: "fourier_modes",
            value: max_mode as f64,
            range: "1 .. n_samples/2",
        });
    }
    if n < 64 || !n.is_power_of_two() {
        return Err(Error::ParamOutOfRange {
            name: "n_samples",
            value: n as f64,
            range: "power of two >= 64",
        });
    }

    let scale = curve
        .samples()
        .iter()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max)
        .max(1.0);
    let tolerance = 1e-4 * scale;

    let l = curve.length();
    let mut raw_positions = Vec::with_capacity(n);
    for (index, &v) in values.iter().enumerate() {
        let (s, distance) = curve.nearest_arc_position(v);
        if distance > tolerance {
            return Err(Error::NotOnCurve {
                index,
                distance,
                tolerance,
            });
        }
        raw_positions.push(s);
    }

    // Winding first: a globally reversed traversal is a winding error, not a
    // local monotonicity defect.
    let mut diffs = Vec::with_capacity(n);
    for i in 0..n {
        let a = raw_positions[i];
        let b = raw_positions[(i + 1) % n];
        let mut d = (b - a).rem_euclid(l);
        if d > l / 2.0 {
            d -= l;
        }
        diffs.push(d);
    }
    let total: f64 = diffs.iter().sum();
    let winding = (total / l).round() as i32;
    if winding != 1 {
        return Err(Error::WrongWinding { winding });
    }
    for (i, &d) in diffs.iter().enumerate() {
        if d < -1e-9 * l {
            return Err(Error::NotMonotone { index: i });
        }
    }

    let mut arc_positions = Vec::with_capacity(n);
    let mut acc = raw_positions[0];
    arc_positions.push(acc);
    for &d in diffs.iter().take(n - 1) {
        acc += d;
        arc_positions.push(acc);
    }

    let spectrum = Spectrum::from_samples(values, max_mode);
    Ok(BoundaryMap {
        values: values.to_vec(),
        spectrum,
        arc_positions,
    })
}

/// Spectral derivative f'(phi_j) = d/dphi f(e^{i phi}) on the sample grid.
///
/// Refuses undersampled input: if modes above half the bandwidth carry more
/// than [`SPECTRAL_TAIL_LIMIT`] of the energy the derivative is meaningless.
pub fn derivative(map: &BoundaryMap) -> Result<Vec<Complex64>> {
    map.spectrum.require_resolved(SPECTRAL_TAIL_LIMIT)?;
    Ok(map.spectrum.derivative().synthesize(map.n_samples()))
}

/// Hilbert transform of derivative samples by the chosen route.
///
/// Both routes act on the trigonometric interpolant of the input samples.
/// The spectral route applies the conjugate-function multiplier -i sgn(n);
/// the principal-value route discretizes
///   H(f')(phi) = -(1/pi) int_0^pi [f'(phi+t) - f'(phi-t)] / (2 tan(t/2)) dt
/// with midpoint nodes t_j = (j + 1/2) h, which never meet the singularity.
pub fn hilbert_transform(f_prime: &[Complex64], method: HilbertMethod) -> Vec<Complex64> {
    let n = f_prime.len();
    let spectrum = Spectrum::from_samples(f_prime, n / 2 - 1);
    match method {
        HilbertMethod::Spectral => spectrum.hilbert().synthesize(n),
        HilbertMethod::PrincipalValue => {
            let h = TAU / n as f64;
            // f' on the half-offset grid phi_k + h/2.
            let half = spectrum.synthesize_shifted(n, h / 2.0);
            let inv_tan: Vec<f64> = (0..n / 2)
                .map(|j| {
                    let t = (j as f64 + 0.5) * h;
                    1.0 / (2.0 * (t / 2.0).tan())
                })
                .collect();
            (0..n)
                .map(|i| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (j, &w) in inv_tan.iter().enumerate() {
                        let fwd = half[(i + j) % n];
                        let bwd = half[(i + n - 1 - j) % n];
                        acc += (fwd - bwd) * w;
                    }
                    -acc * h / std::f64::consts::PI
                })
                .collect()
        }
    }
}

/// Sup-norm discrepancy between the two Hilbert routes; errors out above
/// 1e-4, which on resolved input only a defect can produce.
pub fn hilbert_methods_check(f_prime: &[Complex64]) -> Result<f64> {
    let a = hilbert_transform(f_prime, HilbertMethod::Spectral);
    let b = hilbert_transform(f_prime, HilbertMethod::PrincipalValue);
    let sup_diff = a
        .iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    if sup_diff > 1e-4 {
        Err(Error::MethodMismatch { sup_diff })
    } else {
        Ok(sup_diff)
    }
}

/// Boundary Wirtinger moduli from the radial/angular derivative pair at
/// r = 1: with w_phi = f' and r w_r = H(f'),
///   |w_z|    = |H(f') - i f'| / 2,
///   |w_zbar| = |H(f') + i f'| / 2.
pub fn boundary_wirtinger(f_prime: Complex64, hilbert: Complex64) -> (f64, f64) {
    let wz = 0.5 * (hilbert - I * f_prime).norm();
    let wzbar = 0.5 * (hilbert + I * f_prime).norm();
    (wz, wzbar)
}

/// Compute f', H(f') and the three boundary norms on the sample grid. Grid
/// extrema stand in for the essential sup and inf.
pub fn norms(map: &BoundaryMap) -> Result<BoundaryDerivatives> {
    map.spectrum.require_resolved(SPECTRAL_TAIL_LIMIT)?;
    let n = map.n_samples();
    let deriv_spectrum = map.spectrum.derivative();
    let f_prime = deriv_spectrum.synthesize(n);
    let hilbert_f_prime = deriv_spectrum.hilbert().synthesize(n);

    let mut sup_f_prime: f64 = 0.0;
    let mut sup_hilbert: f64 = 0.0;
    let mut min_stretch = f64::MAX;
    let mut wz_mod = Vec::with_capacity(n);
    let mut wzbar_mod = Vec::with_capacity(n);
    for j in 0..n {
        sup_f_prime = sup_f_prime.max(f_prime[j].norm());
        sup_hilbert = sup_hilbert.max(hilbert_f_prime[j].norm());
        let (wz, wzbar) = boundary_wirtinger(f_prime[j], hilbert_f_prime[j]);
        min_stretch = min_stretch.min(wz - wzbar);
        wz_mod.push(wz);
        wzbar_mod.push(wzbar);
    }

    Ok(BoundaryDerivatives {
        f_prime,
        hilbert_f_prime,
        sup_f_prime,
        sup_hilbert,
        l_f: min_stretch.max(0.0),
        wz_mod,
        wzbar_mod,
        tail_fraction: map.spectrum.tail_energy_fraction(),
    })
}

/// Check the three-point normalization: the images of 1, e^{2 pi i/3},
/// e^{-2 pi i/3} must cut the curve into arcs of equal length (relative
/// tolerance 1e-3).
pub fn check_normalized(map: &BoundaryMap, curve: &JordanCurve) -> (bool, NormalizationSpec) {
    let l = curve.length();
    let anchors = [
        map.spectrum.eval_at(0.0),
        map.spectrum.eval_at(TAU / 3.0),
        map.spectrum.eval_at(2.0 * TAU / 3.0),
    ];
    let pos: Vec<f64> = anchors
        .iter()
        .map(|&a| curve.nearest_arc_position(a).0)
        .collect();
    let arc = |from: f64, to: f64| (to - from).rem_euclid(l);
    let arc_lengths = [
        arc(pos[0], pos[1]),
        arc(pos[1], pos[2]),
        arc(pos[2], pos[0]),
    ];
    let is_normalized = arc_lengths
        .iter()
        .all(|&a| (a - l / 3.0).abs() <= 1e-3 * (l / 3.0));
    (
        is_normalized,
        NormalizationSpec {
            anchors,
            arc_lengths,
        },
    )
}
