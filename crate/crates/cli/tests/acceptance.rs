//! Acceptance suite: the ten exit criteria of the toolkit, each with its
//! stated tolerance and runtime cap. Every test prints one PASS/FAIL line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::time::Instant;

use qcharm::boundary::{
    boundary_wirtinger, build_boundary_map, hilbert_transform, norms, HilbertMethod,
};
use qcharm::bounds::{
    holder_bound, holder_check, interior_lipschitz_check, jacobian_bound_sweep, kk_bound,
};
use qcharm::curve::JordanCurve;
use qcharm::extension::{qc_forms_check, GridSpec};
use qcharm::fixtures::{
    affine_stretch, example1_k_trend, example1_oscillation_amplitude, example2_fixture,
    identity, rotation, warped_circle, Fixture,
};
use qcharm::spectral::Spectrum;

const I: Complex64 = Complex64::new(0.0, 1.0);

struct Criterion {
    index: usize,
    what: &'static str,
    started: Instant,
    cap_seconds: f64,
}

impl Criterion {
    fn start(index: usize, what: &'static str, cap_seconds: f64) -> Criterion {
        Criterion {
            index,
            what,
            started: Instant::now(),
            cap_seconds,
        }
    }

    fn finish(self) {
        let elapsed = self.started.elapsed().as_secs_f64();
        println!(
            "criterion {:>2}: PASS ({elapsed:.2}s / cap {:.0}s) - {}",
            self.index, self.cap_seconds, self.what
        );
        assert!(
            elapsed < self.cap_seconds,
            "criterion {} exceeded its runtime cap: {elapsed:.2}s",
            self.index
        );
    }
}

/// Seeded trigonometric polynomials of degree <= 32 sampled at N points.
fn random_trig_polys(count: usize, degree: usize, n: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = n / 2 - 1;
            let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * m + 1];
            for mode in -(degree as i64)..=(degree as i64) {
                coeffs[(mode + m as i64) as usize] =
                    Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
            }
            Spectrum::from_coeffs(coeffs, m).synthesize(n)
        })
        .collect()
}

fn sup_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[test]
fn criterion_01_identity_sharpness() {
    let c = Criterion::start(1, "identity boundary map is sharp: K bound = 1, sup K = 1", 5.0);
    let f = identity(4096);
    let d = norms(&f.boundary).unwrap();
    let bound = kk_bound(&d, 1e-6).unwrap();
    assert!(
        (bound.kk - 1.0).abs() < 1e-9,
        "kk_bound = {} not within 1e-9 of 1",
        bound.kk
    );
    let sup = f.harmonic.grid_sup_k(&GridSpec::default()).unwrap();
    assert!(
        (sup.sup_k - 1.0).abs() < 1e-6,
        "measured sup K = {} not within 1e-6 of 1",
        sup.sup_k
    );
    c.finish();
}

#[test]
fn criterion_02_affine_fixture_soundness() {
    let c = Criterion::start(
        2,
        "affine stretch k=1/3: sup K = 2, K bound = sqrt(7) and dominates",
        5.0,
    );
    let f = affine_stretch(1.0 / 3.0, 4096).unwrap();
    let d = norms(&f.boundary).unwrap();
    let bound = kk_bound(&d, 1e-6).unwrap();
    let sup = f.harmonic.grid_sup_k(&GridSpec::default()).unwrap();
    assert!(
        (sup.sup_k - 2.0).abs() < 1e-6,
        "measured sup K = {}",
        sup.sup_k
    );
    assert!(
        (bound.kk - 7f64.sqrt()).abs() < 1e-9,
        "kk_bound = {}",
        bound.kk
    );
    assert!(bound.kk >= sup.sup_k, "bound fails to dominate");
    c.finish();
}

#[test]
fn criterion_03_hilbert_oracle_equivalence() {
    let c = Criterion::start(
        3,
        "spectral and principal-value Hilbert transforms agree to 1e-6",
        10.0,
    );
    let corpus = random_trig_polys(20, 32, 4096, 20260809);
    let mut worst: f64 = 0.0;
    for poly in &corpus {
        let a = hilbert_transform(poly, HilbertMethod::Spectral);
        let b = hilbert_transform(poly, HilbertMethod::PrincipalValue);
        worst = worst.max(sup_diff(&a, &b));
    }
    assert!(worst < 1e-6, "methods differ by {worst:.3e}");
    c.finish();
}

#[test]
fn criterion_04_conjugate_involution() {
    let c = Criterion::start(4, "H(H(f)) = -f + mean(f) to 1e-8", 10.0);
    let corpus = random_trig_polys(20, 32, 4096, 20260809);
    let mut worst: f64 = 0.0;
    for poly in &corpus {
        let n = poly.len();
        let mean = poly.iter().sum::<Complex64>() / n as f64;
        let hh = hilbert_transform(
            &hilbert_transform(poly, HilbertMethod::Spectral),
            HilbertMethod::Spectral,
        );
        let expect: Vec<Complex64> = poly.iter().map(|&v| -v + mean).collect();
        worst = worst.max(sup_diff(&hh, &expect));
    }
    assert!(worst < 1e-8, "involution defect {worst:.3e}");
    c.finish();
}

#[test]
fn criterion_05_oscillatory_warp_trend() {
    let c = Criterion::start(
        5,
        "oscillatory warp: sup K decreasing in b, near 1 at b=0.05, quotient oscillates",
        60.0,
    );
    // Fixed measurement grid capped at r = 0.99: series truncation of the
    // rough boundary is not trustworthy closer to the circle.
    let grid = GridSpec {
        radii: 64,
        angles: 512,
        r_max: 0.99,
    };
    let bs = [0.7, 0.5, 0.3, 0.1, 0.05];
    let trend = example1_k_trend(&bs, 4096, &grid).unwrap();
    for w in trend.windows(2) {
        assert!(
            w[1].sup_k <= w[0].sup_k + 1e-3,
            "not monotone: K({}) = {} vs K({}) = {}",
            w[1].b,
            w[1].sup_k,
            w[0].b,
            w[0].sup_k
        );
    }
    let last = trend.last().unwrap();
    assert!(
        (last.sup_k - 1.0).abs() <= 0.1,
        "sup K at b=0.05 is {} (not within 10% of 1)",
        last.sup_k
    );
    assert!(trend.iter().all(|p| p.sup_k >= 1.0));

    let amplitude = example1_oscillation_amplitude(0.3).unwrap();
    assert!(
        amplitude > 0.3 / 2.0,
        "difference-quotient oscillation {amplitude} below b/2"
    );
    c.finish();
}

#[test]
fn criterion_06_degenerate_polynomial() {
    let c = Criterion::start(
        6,
        "degenerate polynomial: boundary stretch collapses, distortion blows up",
        10.0,
    );
    let f = example2_fixture(4096);
    let d = norms(&f.boundary).unwrap();
    let (wz, wzbar) = boundary_wirtinger(d.f_prime[0], d.hilbert_f_prime[0]);
    assert!((wz - 1.0).abs() < 1e-9, "wz(0) = {wz}");
    assert!((wzbar - 1.0).abs() < 1e-9, "wzbar(0) = {wzbar}");
    assert!(d.l_f <= 1e-2, "l_f = {}", d.l_f);

    let f2 = example2_fixture(8192);
    let d2 = norms(&f2.boundary).unwrap();
    assert!(
        d2.l_f <= d.l_f + 1e-12,
        "l_f did not decrease: {} -> {}",
        d.l_f,
        d2.l_f
    );

    // Closed form on the real axis: K(r) = (|3-2r| + 1) / (|3-2r| - 1).
    let k_at = |r: f64| {
        f.harmonic
            .wirtinger(Complex64::new(r, 0.0))
            .unwrap()
            .k_point
    };
    let closed = |r: f64| {
        let a = (3.0 - 2.0 * r).abs();
        (a + 1.0) / (a - 1.0)
    };
    for r in [0.9, 0.999] {
        assert!((k_at(r) - closed(r)).abs() < 1e-6 * closed(r));
    }
    assert!(k_at(0.999) / k_at(0.9) >= 5.0);

    // The report pipeline refuses the map, end to end.
    assert!(matches!(
        kk_bound(&d, 1e-6),
        Err(qcharm::Error::DegenerateLowerBound { .. })
    ));
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_qcharm"))
        .args(["qc-report", "--boundary", "example2", "--n-samples", "4096"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "DegenerateLowerBound");
    c.finish();
}

#[test]
fn criterion_07_geometry_constants() {
    let c = Criterion::start(
        7,
        "circle geometry: B = pi/2, C_gamma = 1/2, area = pi, kernel bound",
        30.0,
    );
    let curve = JordanCurve::circle(2048);
    let b = curve.chord_arc_constant();
    assert!((b - FRAC_PI_2).abs() < 1e-3, "B = {b}");
    let cg = curve.holder_constant().unwrap();
    assert!((cg - 0.5).abs() < 1e-3, "C_gamma = {cg}");
    assert!((curve.enclosed_area() - PI).abs() < 1e-6);
    let check = curve.kernel_bound_check(512).unwrap();
    assert!(
        check.holds,
        "kernel bound violated by {:.3e} over {} pairs",
        check.max_violation, check.pairs_checked
    );
    c.finish();
}

#[test]
fn criterion_08_jacobian_bound() {
    let c = Criterion::start(
        8,
        "radial Jacobian bound at 100 angles for identity and stretch",
        60.0,
    );
    let phis: Vec<f64> = (0..100).map(|i| TAU * i as f64 / 100.0).collect();

    let f = identity(4096);
    let d = norms(&f.boundary).unwrap();
    let checks = jacobian_bound_sweep(&f.curve, &f.boundary, &f.harmonic, &d, &phis).unwrap();
    for ch in &checks {
        assert!(
            (ch.rhs - PI).abs() < 1e-3,
            "identity rhs = {} at phi = {}",
            ch.rhs,
            ch.phi
        );
        assert!(ch.holds, "identity bound fails at phi = {}", ch.phi);
    }

    let f = affine_stretch(1.0 / 3.0, 4096).unwrap();
    let d = norms(&f.boundary).unwrap();
    let checks = jacobian_bound_sweep(&f.curve, &f.boundary, &f.harmonic, &d, &phis).unwrap();
    for ch in &checks {
        assert!(
            ch.holds,
            "stretch bound fails at phi = {}: measured {} vs rhs {}",
            ch.phi, ch.measured, ch.rhs
        );
    }
    c.finish();
}

#[test]
fn criterion_09_holder_and_lipschitz_inequalities() {
    let c = Criterion::start(
        9,
        "Holder and interior Lipschitz inequalities on normalized fixtures",
        60.0,
    );
    let fixtures: Vec<(&str, Fixture)> = vec![
        ("identity", identity(4096)),
        ("rotation", rotation(4096, PI / 7.0)),
        ("warp", warped_circle(0.2, 4096).unwrap()),
    ];
    for (name, f) in &fixtures {
        let d = norms(&f.boundary).unwrap();
        let sup = f.harmonic.grid_sup_k(&GridSpec::default()).unwrap();
        let k_meas = sup.sup_k;
        let b = f.curve.chord_arc_constant();
        let area = f.curve.enclosed_area();
        let (alpha, holder_c) = holder_bound(k_meas, b, area);
        let hc = holder_check(&f.boundary, &f.curve, alpha, holder_c, 10_000, 0)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(
            hc.holds,
            "{name}: boundary Holder defect {}",
            hc.max_defect
        );
        let ic = interior_lipschitz_check(&f.harmonic, k_meas, d.sup_f_prime, 10_000, 0, 0.999);
        assert!(
            ic.holds,
            "{name}: interior ratio {} above {}",
            ic.max_ratio,
            k_meas * d.sup_f_prime
        );
    }
    // Falsification: halving L must break the harness.
    let f = identity(4096);
    let broken = interior_lipschitz_check(&f.harmonic, 1.0, 0.5, 10_000, 0, 0.999);
    assert!(!broken.holds, "harness failed to flag a halved constant");
    c.finish();
}

#[test]
fn criterion_10_equivalence_of_qc_forms() {
    let c = Criterion::start(
        10,
        "operator-norm and polar distortion forms agree as predicates",
        60.0,
    );
    let fixtures: Vec<Fixture> = vec![
        identity(1024),
        affine_stretch(1.0 / 3.0, 1024).unwrap(),
        warped_circle(0.2, 1024).unwrap(),
        example2_fixture(1024),
    ];
    let ks = [1.0, 1.2, 2.0, 5.0, 101.0];
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for f in &fixtures {
        for _ in 0..10_000 {
            let r = 0.999 * rng.gen::<f64>().sqrt();
            let t = TAU * rng.gen::<f64>();
            let d = match f.harmonic.wirtinger(Complex64::from_polar(r, t)) {
                Ok(d) => d,
                Err(_) => continue,
            };
            if d.jacobian <= 0.0 {
                continue;
            }
            for &k in &ks {
                let (a, b, cc) = qc_forms_check(&d, k).unwrap();
                assert_eq!(a, b, "forms disagree at z = {}, K = {k}", d.z);
                assert!(!a || cc, "implication fails at z = {}, K = {k}", d.z);
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_09b_affine_interior_lipschitz_closed_form() {
    // Companion to criterion 9 on the non-normalized affine fixture: the
    // interior inequality with measured constants, max ratio 1 + k.
    let c = Criterion::start(
        9,
        "affine stretch interior Lipschitz: max ratio <= K L (closed form 1+k)",
        30.0,
    );
    let k = 1.0 / 3.0;
    let f = affine_stretch(k, 2048).unwrap();
    let d = norms(&f.boundary).unwrap();
    let sup = f.harmonic.grid_sup_k(&GridSpec::default()).unwrap();
    let ic = interior_lipschitz_check(&f.harmonic, sup.sup_k, d.sup_f_prime, 10_000, 0, 0.999);
    assert!(ic.max_ratio <= 1.0 + k + 1e-9);
    assert!(ic.holds);
    c.finish();
}

/// The boundary-map identity used throughout: |w_z|^2 + |w_zbar|^2 equals
/// (|f'|^2 + |H(f')|^2) / 2 pointwise. Kept in the acceptance suite as a
/// cross-cutting sanity check on random band-limited maps.
#[test]
fn wirtinger_energy_identity_on_random_maps() {
    let n = 1024;
    let curve = JordanCurve::circle(2048);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..5 {
        // Small random perturbation of the identity keeps it a
        // homeomorphism onto the circle.
        let coeffs: Vec<(i64, Complex64)> = (2..6)
            .map(|m| {
                (
                    m,
                    Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5) * 0.03,
                )
            })
            .collect();
        let values: Vec<Complex64> = (0..n)
            .map(|j| {
                let p = TAU * j as f64 / n as f64;
                let warp: f64 = coeffs
                    .iter()
                    .map(|(m, c)| (c * (I * (*m as f64) * p).exp()).re)
                    .sum();
                (I * (p + warp)).exp()
            })
            .collect();
        let map = build_boundary_map(&values, &curve).unwrap();
        let d = norms(&map).unwrap();
        for j in 0..n {
            let lhs = d.wz_mod[j].powi(2) + d.wzbar_mod[j].powi(2);
            let rhs = 0.5 * (d.f_prime[j].norm_sqr() + d.hilbert_f_prime[j].norm_sqr());
            assert!((lhs - rhs).abs() < 1e-10);
        }
    }
}
