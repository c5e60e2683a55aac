use std::f64::consts::{FRAC_PI_2, PI, TAU};

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symsphere::geometric::gauss_legendre;
use symsphere::lmg::*;
use symsphere::{Error, SymmetricState};

/// `H` in the standard `|s, m⟩` basis, `m = s, s − 1, …, −s`, built from
/// the complex `S_y` matrix.
fn hamiltonian_standard(two_s: usize, gamma: f64, h: f64) -> DMatrix<Complex64> {
    let s = two_s as f64 / 2.0;
    let d = two_s + 1;
    let m = |i: usize| s - i as f64;
    let mut sp = DMatrix::<Complex64>::zeros(d, d);
    for i in 1..d {
        // S_+ |s, m⟩ = sqrt(s(s+1) − m(m+1)) |s, m+1⟩
        let mi = m(i);
        sp[(i - 1, i)] = Complex64::new((s * (s + 1.0) - mi * (mi + 1.0)).sqrt(), 0.0);
    }
    let sm = sp.adjoint();
    let sy = (&sp - &sm) * Complex64::new(0.0, -0.5);
    let mut hm = &sy * &sy * Complex64::new(-gamma / two_s as f64, 0.0);
    for i in 0..d {
        hm[(i, i)] -= Complex64::new(h * m(i), 0.0);
    }
    hm
}

/// Ground state with the basis phase removed: `a_k ↦ i^{−k} a_k`.
fn unphased(state: &SymmetricState) -> Vec<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    state.coeffs().iter().enumerate().map(|(k, a)| a * i.powi(-(k as i32))).collect()
}

fn params(s: f64, h: f64) -> LmgParams {
    LmgParams::new(s, h, 1.0).unwrap()
}

#[test]
fn spin_one_by_hand() {
    let (e, st) = ground_state_with_energy(&params(1.0, 0.0)).unwrap();
    assert!((e + 0.5).abs() < 1e-14);
    // −S_y²/2 for s = 1 in the basis m = 1, 0, −1
    let hand = [[-0.25, 0.0, 0.25], [0.0, -0.5, 0.0], [0.25, 0.0, -0.25]];
    let u = unphased(&st);
    for (r, row) in hand.iter().enumerate() {
        let hu: Complex64 = row.iter().zip(&u).map(|(x, y)| y * *x).sum();
        assert!((hu + u[r] * 0.5).norm() < 1e-14);
    }
    let c = st.coeffs();
    assert!((c[0].re - c[2].re).abs() < 1e-14 && c[1].norm() == 0.0);
}

#[test]
fn matches_dense_hermitian_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let two_s = rng.gen_range(2..=16);
        let gamma = rng.gen_range(0.2..3.0);
        let h = rng.gen_range(0.05..2.5);
        let p = LmgParams { two_s, gamma, h };
        let (e, st) = ground_state_with_energy(&p).unwrap();
        let eig = hamiltonian_standard(two_s, gamma, h).symmetric_eigen();
        let j0 = (0..eig.eigenvalues.len()).min_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b])).unwrap();
        assert!((e - eig.eigenvalues[j0]).abs() < 1e-10 * (1.0 + e.abs()), "{e} vs {}", eig.eigenvalues[j0]);
        let v = eig.eigenvectors.column(j0);
        let u = unphased(&st);
        let overlap: Complex64 = u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
        assert!((overlap.norm() - 1.0).abs() < 1e-10, "2s={two_s} h={h}: {}", overlap.norm());
    }
}

#[test]
fn large_field_is_separable() {
    let st = ground_state(&params(5.0, 100.0)).unwrap();
    assert!(st.fidelity(&SymmetricState::dicke(10, 0)) > 0.999);
}

#[test]
fn parity_reality_and_imaginary_circle() {
    for s in [2.0, 5.0, 15.0, 30.0] {
        for h in [0.3, 1.0, 2.0] {
            let r = analyze(&params(s, h)).unwrap();
            let st = ground_state(&params(s, h)).unwrap();
            for (k, a) in st.coeffs().iter().enumerate() {
                assert_eq!(a.im, 0.0);
                if k % 2 == 1 {
                    assert!(a.norm() < 1e-10, "s={s} h={h} k={k}");
                }
            }
            assert!(st.is_positive(1e-12));
            assert!(r.imaginary_circle_deviation <= 1e-5, "s={s} h={h}: {}", r.imaginary_circle_deviation);
            assert_eq!(r.mps.len(), (2.0 * s) as usize);
        }
    }
}

#[test]
fn finite_size_cpp_latitude() {
    let target = 0.5f64.acos();
    let errs: Vec<f64> = [10.0, 20.0, 30.0]
        .iter()
        .map(|&s| (analyze(&params(s, 0.5)).unwrap().cpp_latitude - target).abs())
        .collect();
    assert!(errs[2] < 0.1, "{errs:?}");
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    let r = analyze(&params(30.0, 2.0)).unwrap();
    assert_eq!(r.cpps.cpps.len(), 1);
    assert!(r.cpp_latitude < 1e-9);
    assert_eq!(r.continuum_cpp_latitude, 0.0);
}

#[test]
fn density_examples() {
    for t in [-3.0, -1.0, 0.0, 0.7, PI] {
        assert!((mp_density(0.0, t).unwrap() - 1.0 / TAU).abs() < 1e-16);
    }
    assert!(mp_density(1.0, PI).unwrap().abs() < 1e-16);
    for t in [0.0f64, 0.4, 2.0, 3.0] {
        let broken = (1.0 + t.cos()) / TAU;
        assert!((mp_density(1.0, t).unwrap() - broken).abs() < 1e-15);
    }
    assert!(matches!(mp_density(2.0, 3.0), Err(Error::OutOfSupport(_))));
    // the density has a square-root edge, so rounding in cos θ shows as 1e-8
    assert!(mp_density(2.0, FRAC_PI_2).unwrap().abs() < 1e-7);
    assert!(mp_density(-0.1, 0.0).is_err());
}

#[test]
fn density_is_normalised() {
    let (x, w) = gauss_legendre(200);
    for h in [0.5, 1.0, 2.0, 3.5] {
        let edge = support_edge(h);
        let total: f64 = x.iter().zip(&w).map(|(&xi, &wi)| wi * edge * mp_density(h, xi * edge).unwrap()).sum();
        // Gauss–Legendre converges slowly on the square-root edge for h > 1
        let tol = if h > 1.0 { 1e-5 } else { 1e-12 };
        assert!((total - 1.0).abs() < tol, "h={h}: {total}");
    }
}

/// Periodic trapezoid rule for the log amplitude, which converges
/// geometrically for a smooth periodic integrand.
fn log_amplitude_quadrature(h: f64, theta: f64) -> f64 {
    let m = 8192;
    let c = theta.cos();
    -(0..m)
        .map(|j| {
            let t = TAU * j as f64 / m as f64;
            (1.0 + h * t.cos()) * (0.5 * (1.0 + c * t.cos())).log2()
        })
        .sum::<f64>()
        / m as f64
}

#[test]
fn log_amplitude_against_quadrature() {
    assert!((log_amplitude_broken(0.0, FRAC_PI_2).unwrap() - 1.0).abs() < 1e-15);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let h = rng.gen_range(0.0..1.0);
        let theta = rng.gen_range(0.15..PI - 0.15);
        let a = log_amplitude_broken(h, theta).unwrap();
        let b = log_amplitude_quadrature(h, theta);
        assert!((a - b).abs() < 1e-8, "h={h} theta={theta}: {a} vs {b}");
    }
    assert!(log_amplitude_broken(1.5, 0.3).is_err());
}

#[test]
fn log_amplitude_is_stationary_at_cpp() {
    for h in [0.1, 0.4, 0.7, 0.95] {
        let t = cpp_latitude(h).unwrap();
        let d = 1e-5;
        let f = |x: f64| log_amplitude_broken(h, x).unwrap();
        let slope = (f(t + d) - f(t - d)) / (2.0 * d);
        assert!(slope.abs() < 1e-8, "h={h}: {slope}");
        assert!(f(t + 0.05) > f(t) && f(t - 0.05) > f(t));
    }
}

#[test]
fn cpp_latitude_examples() {
    assert!((cpp_latitude(0.0).unwrap() - FRAC_PI_2).abs() < 1e-16);
    assert_eq!(cpp_latitude(1.0).unwrap(), 0.0);
    assert_eq!(cpp_latitude(2.0).unwrap(), 0.0);
    assert!((cpp_latitude(0.5).unwrap() - PI / 3.0).abs() < 1e-15);
    assert!(cpp_latitude(-1.0).is_err());
}

#[test]
fn parameter_validation() {
    assert!(LmgParams::new(0.5, 1.0, 1.0).is_err());
    assert!(LmgParams::new(1.25, 1.0, 1.0).is_err());
    assert!(LmgParams::new(1.5, -1.0, 1.0).is_err());
    assert!(LmgParams::new(1.5, 1.0, 0.0).is_err());
    assert_eq!(LmgParams::new(1.5, 1.0, 1.0).unwrap().two_s, 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn jacobi_diagonalises(d in 1usize..12, seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a = vec![vec![0.0; d]; d];
        for i in 0..d {
            for j in i..d {
                let x = rng.gen_range(-1.0..1.0);
                a[i][j] = x;
                a[j][i] = x;
            }
        }
        let (values, vectors) = jacobi_eigen(a.clone());
        for (l, v) in values.iter().zip(&vectors) {
            for i in 0..d {
                let av: f64 = (0..d).map(|j| a[i][j] * v[j]).sum();
                prop_assert!((av - l * v[i]).abs() < 1e-11);
            }
            prop_assert!((v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
        }
        prop_assert!(values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn tridiagonal_vector_matches_jacobi(m in 2usize..20, seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d: Vec<f64> = (0..m).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let e: Vec<f64> = (1..m).map(|_| rng.gen_range(-1.0..-0.1)).collect();
        let mut a = vec![vec![0.0; m]; m];
        for i in 0..m {
            a[i][i] = d[i];
            if i + 1 < m {
                a[i][i + 1] = e[i];
                a[i + 1][i] = e[i];
            }
        }
        let (values, vectors) = jacobi_eigen(a);
        let x = tridiagonal_eigenvector(&d, &e, values[0]);
        let dot: f64 = x.iter().zip(&vectors[0]).map(|(p, q)| p * q).sum();
        prop_assert!((dot.abs() - 1.0).abs() < 1e-9, "{}", dot);
    }
}
