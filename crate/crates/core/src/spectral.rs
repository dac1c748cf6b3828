//! Trigonometric spectra of periodic complex samples.
//!
//! A [`Spectrum`] holds two-sided Fourier coefficients c_n, |n| <= M, of a
//! function sampled on the uniform grid phi_j = 2 pi j / N. All synthesis,
//! differentiation and conjugation happens here so the rest of the crate can
//! work with coefficient arrays without touching FFT plumbing.

use num_complex::Complex64;
use rustfft::{num_complex::Complex, FftPlanner};

use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn fft_in_place(buf: &mut [Complex64], inverse: bool) {
    let mut planner = FftPlanner::<f64>::new();
    let fft = if inverse {
        planner.plan_fft_inverse(buf.len())
    } else {
        planner.plan_fft_forward(buf.len())
    };
    // rustfft's Complex is num_complex::Complex, so the cast is a no-op.
    let slice: &mut [Complex<f64>] = buf;
    fft.process(slice);
}

/// Two-sided Fourier coefficients of a periodic function.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// coeffs[m] is the coefficient of e^{i n phi} with n = m - max_mode.
    coeffs: Vec<Complex64>,
    max_mode: usize,
}

impl Spectrum {
    /// Analyze uniform samples f(phi_j), phi_j = 2 pi j / N, keeping modes
    /// |n| <= max_mode. Requires max_mode < N/2 so no bin is aliased.
    pub fn from_samples(samples: &[Complex64], max_mode: usize) -> Self {
        let n = samples.len();
        assert!(n >= 2, "need at least two samples");
        assert!(
            max_mode < n / 2,
            "max_mode {} must be below N/2 = {}",
            max_mode,
            n / 2
        );
        let mut buf = samples.to_vec();
        fft_in_place(&mut buf, false);
        let scale = 1.0 / n as f64;
        let coeffs = (0..=2 * max_mode)
            .map(|m| {
                let mode = m as i64 - max_mode as i64;
                buf[mode.rem_euclid(n as i64) as usize] * scale
            })
            .collect();
        Spectrum { coeffs, max_mode }
    }

    pub fn from_coeffs(coeffs: Vec<Complex64>, max_mode: usize) -> Self {
        assert_eq!(coeffs.len(), 2 * max_mode + 1);
        Spectrum { coeffs, max_mode }
    }

    pub fn max_mode(&self) -> usize {
        self.max_mode
    }

    pub fn coeff(&self, mode: i64) -> Complex64 {
        if mode.unsigned_abs() as usize > self.max_mode {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(mode + self.max_mode as i64) as usize]
        }
    }

    /// Mean value, i.e. the coefficient of the constant mode.
    pub fn mean(&self) -> Complex64 {
        self.coeff(0)
    }

    /// Resynthesize on a uniform grid of n_out points (n_out > 2 max_mode).
    pub fn synthesize(&self, n_out: usize) -> Vec<Complex64> {
        self.synthesize_shifted(n_out, 0.0)
    }

    /// Resynthesize on the grid phi_j = 2 pi j / n_out + shift.
    pub fn synthesize_shifted(&self, n_out: usize, shift: f64) -> Vec<Complex64> {
        assert!(
            n_out > 2 * self.max_mode,
            "grid of {} points cannot carry modes up to {}",
            n_out,
            self.max_mode
        );
        let mut buf = vec![Complex64::new(0.0, 0.0); n_out];
        for m in 0..=2 * self.max_mode {
            let mode = m as i64 - self.max_mode as i64;
            let bin = mode.rem_euclid(n_out as i64) as usize;
            buf[bin] = self.coeffs[m] * (I * (mode as f64) * shift).exp();
        }
        fft_in_place(&mut buf, true);
        buf
    }

    /// Evaluate the trigonometric sum at one angle.
    pub fn eval_at(&self, phi: f64) -> Complex64 {
        let zp = (I * phi).exp();
        let zm = zp.conj();
        // Horner over positive and negative mode ladders.
        let m = self.max_mode as i64;
        let mut pos = Complex64::new(0.0, 0.0);
        for mode in (1..=m).rev() {
            pos = (pos + self.coeff(mode)) * zp;
        }
        let mut neg = Complex64::new(0.0, 0.0);
        for mode in (1..=m).rev() {
            neg = (neg + self.coeff(-mode)) * zm;
        }
        pos + neg + self.coeff(0)
    }

    /// Termwise derivative d/dphi: c_n -> i n c_n.
    pub fn derivative(&self) -> Spectrum {
        let mut coeffs = self.coeffs.clone();
        for (m, c) in coeffs.iter_mut().enumerate() {
            let mode = m as i64 - self.max_mode as i64;
            *c *= I * mode as f64;
        }
        Spectrum {
            coeffs,
            max_mode: self.max_mode,
        }
    }

    /// Conjugate-function multiplier: c_n -> -i sgn(n) c_n, c_0 -> 0.
    pub fn hilbert(&self) -> Spectrum {
        let mut coeffs = self.coeffs.clone();
        for (m, c) in coeffs.iter_mut().enumerate() {
            let mode = m as i64 - self.max_mode as i64;
            *c *= match mode.cmp(&0) {
                std::cmp::Ordering::Greater => -I,
                std::cmp::Ordering::Less => I,
                std::cmp::Ordering::Equal => Complex64::new(0.0, 0.0),
            };
        }
        Spectrum {
            coeffs,
            max_mode: self.max_mode,
        }
    }

    /// Fraction of spectral energy in modes |n| > max_mode / 2.
    ///
    /// A large fraction means the sampled function was not resolved by the
    /// grid and derived quantities cannot be trusted.
    pub fn tail_energy_fraction(&self) -> f64 {
        let cut = self.max_mode / 2;
        let mut tail = 0.0;
        let mut total = 0.0;
        for (m, c) in self.coeffs.iter().enumerate() {
            let mode = (m as i64 - self.max_mode as i64).unsigned_abs() as usize;
            let e = c.norm_sqr();
            total += e;
            if mode > cut {
                tail += e;
            }
        }
        if total == 0.0 {
            0.0
        } else {
            tail / total
        }
    }

    /// Error out when the tail fraction exceeds `limit`.
    pub fn require_resolved(&self, limit: f64) -> Result<()> {
        let fraction = self.tail_energy_fraction();
        if fraction > limit {
            Err(Error::SpectralTail { fraction, limit })
        } else {
            Ok(())
        }
    }
}
