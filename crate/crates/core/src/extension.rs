//! Harmonic extension of boundary data into the unit disk.
//!
//! The Poisson extension of a boundary function with coefficients c_n is
//! w(z) = g(z) + conj(h(z)) with g(z) = sum_{n>=0} c_n z^n and
//! h(z) = sum_{n>=1} conj(c_{-n}) z^n, because P[e^{i n phi}] = r^|n| e^{i n phi}.
//! A [`HarmonicMap`] stores the two coefficient ladders; evaluation and the
//! Wirtinger derivatives are Horner sums, so they are exact for band-limited
//! boundary data.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::boundary::BoundaryMap;
use crate::error::{Error, Result};

/// Poisson kernel P(r, x) = (1 - r^2) / (2 pi (1 - 2 r cos x + r^2)).
pub fn poisson_kernel(r: f64, x: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::RadiusOutOfRange { r });
    }
    Ok((1.0 - r * r) / (2.0 * PI * (1.0 - 2.0 * r * x.cos() + r * r)))
}

/// Coefficients of the analytic and co-analytic parts of w = g + conj(h).
#[derive(Debug, Clone)]
pub struct HarmonicMap {
    /// g coefficients for powers z^0 .. z^M.
    g: Vec<Complex64>,
    /// h coefficients for powers z^1 .. z^M.
    h: Vec<Complex64>,
}

/// Wirtinger data of w at one interior point.
#[derive(Debug, Clone, Copy)]
pub struct PointDerivatives {
    pub z: Complex64,
    pub wz: Complex64,
    pub wzbar: Complex64,
    /// J_w = |w_z|^2 - |w_zbar|^2
    pub jacobian: f64,
    /// Second dilatation h'(z) / g'(z)
    pub mu: Complex64,
    /// Pointwise distortion (1 + |mu|) / (1 - |mu|); +inf when |mu| >= 1
    pub k_point: f64,
}

/// Interior evaluation grid: `radii` circles up to `r_max`, `angles` points
/// on each.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GridSpec {
    pub radii: usize,
    pub angles: usize,
    pub r_max: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            radii: 64,
            angles: 512,
            r_max: 0.999,
        }
    }
}

impl GridSpec {
    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        let radii = self.radii;
        let angles = self.angles;
        let r_max = self.r_max;
        (0..radii).flat_map(move |i| {
            let r = r_max * (i + 1) as f64 / radii as f64;
            (0..angles).map(move |j| {
                Complex64::from_polar(r, 2.0 * PI * j as f64 / angles as f64)
            })
        })
    }
}

/// Supremum of the pointwise distortion over a grid.
#[derive(Debug, Clone, Copy)]
pub struct GridSupremum {
    pub sup_k: f64,
    pub argmax: Complex64,
    /// Grid points skipped because g' vanished there.
    pub excluded: usize,
}

/// Split boundary Fourier coefficients into the analytic/co-analytic
/// ladders of the Poisson extension.
pub fn extend(map: &BoundaryMap) -> HarmonicMap {
    let sp = map.spectrum();
    let m = sp.max_mode() as i64;
    let g: Vec<Complex64> = (0..=m).map(|n| sp.coeff(n)).collect();
    let h: Vec<Complex64> = (1..=m).map(|n| sp.coeff(-n).conj()).collect();
    HarmonicMap {
        g: trim_trailing(g),
        h: trim_trailing(h),
    }
}

/// Drop trailing coefficients that cannot affect double-precision results.
fn trim_trailing(mut v: Vec<Complex64>) -> Vec<Complex64> {
    let max = v.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let cut = 1e-15 * max;
    while v.len() > 1 && v.last().is_some_and(|c| c.norm() <= cut) {
        v.pop();
    }
    v
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Horner evaluation of the derivative of sum_k coeffs[k] z^{k + shift}.
fn horner_derivative(coeffs: &[Complex64], z: Complex64, shift: i32) -> Complex64 {
    let start = if shift == 0 { 1 } else { 0 };
    let mut acc = Complex64::new(0.0, 0.0);
    for k in (start..coeffs.len()).rev() {
        acc = acc * z + coeffs[k] * (k as i32 + shift) as f64;
    }
    acc
}

impl HarmonicMap {
    pub fn from_parts(g: Vec<Complex64>, h: Vec<Complex64>) -> HarmonicMap {
        HarmonicMap { g, h }
    }

    /// Analytic part coefficients (powers z^0 ..).
    pub fn g_coeffs(&self) -> &[Complex64] {
        &self.g
    }

    /// Co-analytic part coefficients (powers z^1 ..).
    pub fn h_coeffs(&self) -> &[Complex64] {
        &self.h
    }

    /// w(0), the mean of the boundary data.
    pub fn center_value(&self) -> Complex64 {
        self.g[0]
    }

    /// w(z) = g(z) + conj(h(z)) for |z| <= 1.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() > 1.0 + 1e-12 {
            return Err(Error::OutsideDisk { z });
        }
        let g = horner(&self.g, z);
        let h = z * horner(&self.h, z);
        Ok(g + h.conj())
    }

    /// Wirtinger derivatives and pointwise distortion at an interior point.
    pub fn wirtinger(&self, z: Complex64) -> Result<PointDerivatives> {
        if z.norm() > 1.0 + 1e-12 {
            return Err(Error::OutsideDisk { z });
        }
        let gp = horner_derivative(&self.g, z, 0);
        // h coefficients start at power 1: h'(z) = sum (k+1) h_k z^k.
        let hp = horner_derivative(&self.h, z, 1);
        if gp.norm() < 1e-14 {
            return Err(Error::DegenerateDerivative { z });
        }
        let wz = gp;
        let wzbar = hp.conj();
        let jacobian = wz.norm_sqr() - wzbar.norm_sqr();
        let mu = hp / gp;
        let m = mu.norm();
        let k_point = if m < 1.0 {
            (1.0 + m) / (1.0 - m)
        } else {
            f64::INFINITY
        };
        Ok(PointDerivatives {
            z,
            wz,
            wzbar,
            jacobian,
            mu,
            k_point,
        })
    }

    /// Maximum pointwise distortion over a grid, with its location. Points
    /// where g' vanishes are excluded and counted.
    pub fn grid_sup_k(&self, grid: &GridSpec) -> Result<GridSupremum> {
        let mut sup_k = f64::MIN;
        let mut argmax = Complex64::new(0.0, 0.0);
        let mut excluded = 0usize;
        for z in grid.points() {
            match self.wirtinger(z) {
                Ok(d) => {
                    if d.k_point > sup_k {
                        sup_k = d.k_point;
                        argmax = z;
                    }
                }
                Err(Error::DegenerateDerivative { .. }) => excluded += 1,
                Err(e) => return Err(e),
            }
        }
        if sup_k == f64::MIN {
            return Err(Error::DegenerateDerivative {
                z: Complex64::new(0.0, 0.0),
            });
        }
        Ok(GridSupremum {
            sup_k,
            argmax,
            excluded,
        })
    }
}

/// The three quasiconformality inequalities at one point, as predicates in
/// the candidate constant K:
///
/// (a) operator-norm form:  |w_z| + |w_zbar| <= K (|w_z| - |w_zbar|);
/// (b) polar-energy form:   |w_r|^2 + r^-2 |w_phi|^2 <= (K + 1/K) J_w,
///     reconstructed from the Wirtinger pair (the left side equals
///     2(|w_z|^2 + |w_zbar|^2) for every phase);
/// (c) angular form:        r^-2 (1 + 1/K^2) |w_phi|^2 <= (K + 1/K) J_w.
///
/// (a) and (b) are equivalent; (a) implies (c).
pub fn qc_forms_check(d: &PointDerivatives, k: f64) -> Result<(bool, bool, bool)> {
    if d.jacobian <= 0.0 {
        return Err(Error::NonpositiveJacobian {
            z: d.z,
            jacobian: d.jacobian,
        });
    }
    let slack = |lhs: f64, rhs: f64| lhs <= rhs + 1e-10 * rhs.abs().max(lhs.abs()).max(1.0);
    let a_mod = d.wz.norm();
    let b_mod = d.wzbar.norm();
    let form_a = slack(a_mod + b_mod, k * (a_mod - b_mod).abs());

    let energy = 2.0 * (d.wz.norm_sqr() + d.wzbar.norm_sqr());
    let form_b = slack(energy, (k + 1.0 / k) * d.jacobian);

    // |w_phi / r| = |e^{i phi} w_z - e^{-i phi} w_zbar| at the point itself;
    // the phase factor defaults to 1 at the origin.
    let phase = if d.z.norm() > 0.0 {
        d.z / d.z.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let w_phi_over_r = (phase * d.wz - phase.conj() * d.wzbar).norm();
    let form_c = slack(
        (1.0 + 1.0 / (k * k)) * w_phi_over_r * w_phi_over_r,
        (k + 1.0 / k) * d.jacobian,
    );

    Ok((form_a, form_b, form_c))
}
