//! Ground states of the Lipkin–Meshkov–Glick model `H = −(γ/n) S_y² − h S_z`
//! at finite spin, and the Majorana-point density and CPP latitude in the
//! thermodynamic limit.
//!
//! Dicke index `k = s − m`, so `S_0` is `|s, s⟩` at the north pole. The
//! basis vectors carry the phase `|s, s − k⟩ → i^k |s, s − k⟩`, which
//! makes the ground state positive with its Majorana points on the great
//! circle `φ ∈ {π/2, 3π/2}`.

use std::f64::consts::{LN_2, PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometric::{positive_cpp_search, CppReport};
use crate::symstate::{state_to_mps_with_tol, BlochPoint, SymmetricState, DEFAULT_CLUSTER_TOL};

/// Relative off-diagonal norm at which the Jacobi sweeps stop.
pub const JACOBI_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LmgParams {
    /// Twice the total spin, which is the number of qubits.
    pub two_s: usize,
    pub gamma: f64,
    pub h: f64,
}

impl LmgParams {
    pub fn new(spin: f64, h: f64, gamma: f64) -> Result<Self> {
        let two_s = 2.0 * spin;
        if !(two_s.is_finite() && two_s.fract() == 0.0 && two_s >= 2.0) {
            return Err(Error::InvalidParameter(format!("spin must be a half-integer >= 1, got {spin}")));
        }
        let p = LmgParams { two_s: two_s as usize, gamma, h };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.two_s < 2 {
            return Err(Error::InvalidParameter(format!("need 2s >= 2, got {}", self.two_s)));
        }
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(Error::InvalidParameter(format!("gamma must be positive, got {}", self.gamma)));
        }
        if !(self.h >= 0.0 && self.h.is_finite()) {
            return Err(Error::InvalidParameter(format!("h must be nonnegative, got {}", self.h)));
        }
        Ok(())
    }

    pub fn spin(&self) -> f64 {
        self.two_s as f64 / 2.0
    }
}

/// Eigenvalues and column eigenvectors of a real symmetric matrix by
/// cyclic Jacobi rotations, sorted by ascending eigenvalue.
pub fn jacobi_eigen(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let d = a.len();
    let mut v: Vec<Vec<f64>> = (0..d).map(|i| (0..d).map(|j| (i == j) as u8 as f64).collect()).collect();
    let total: f64 = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let off = |a: &Vec<Vec<f64>>| {
        let mut s = 0.0;
        for i in 0..d {
            for j in i + 1..d {
                s += 2.0 * a[i][j] * a[i][j];
            }
        }
        s.sqrt()
    };
    for _ in 0..100 {
        if off(&a) <= JACOBI_TOL * total.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..d {
            for q in p + 1..d {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..d {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..d {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    let values = order.iter().map(|&i| a[i][i]).collect();
    let vectors = order.iter().map(|&i| (0..d).map(|r| v[r][i]).collect()).collect();
    (values, vectors)
}

/// Matrix of `H` restricted to Dicke indices `ks`, in the phased basis.
fn block(p: &LmgParams, ks: &[usize]) -> Vec<Vec<f64>> {
    let s = p.spin();
    let n = p.two_s as f64;
    let c = p.gamma / n;
    let jj = s * (s + 1.0);
    let m_of = |k: usize| s - k as f64;
    ks.iter()
        .map(|&k| {
            ks.iter()
                .map(|&l| {
                    let m = m_of(k);
                    if k == l {
                        // S_y² diagonal is (s(s+1) − m²)/2
                        -c * (jj - m * m) / 2.0 - p.h * m
                    } else if k.abs_diff(l) == 2 {
                        let lo = m_of(k.max(l));
                        let ladder = ((jj - lo * (lo + 1.0)) * (jj - (lo + 1.0) * (lo + 2.0))).sqrt();
                        // −(γ/n)·(−ladder/4) picks up i^{±2} = −1 from the basis phase
                        -c * ladder / 4.0
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect()
}

/// Eigenvector of the symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `e` for the eigenvalue `lambda`. Ratios of neighbouring
/// components are accumulated as continued fractions from both ends
/// towards the twist index, so components deep in the decaying tails keep
/// their relative accuracy.
pub fn tridiagonal_eigenvector(d: &[f64], e: &[f64], lambda: f64) -> Vec<f64> {
    let m = d.len();
    let tiny = f64::MIN_POSITIVE.sqrt();
    let guard = |x: f64| if x.abs() < tiny { tiny.copysign(x) } else { x };
    // down[i] = x_{i-1}/x_i · e_{i-1} style pivots from the top
    let mut down = vec![0.0; m];
    for i in 0..m {
        let prev = if i == 0 { 0.0 } else { e[i - 1] * e[i - 1] / down[i - 1] };
        down[i] = guard(d[i] - lambda - prev);
    }
    let mut up = vec![0.0; m];
    for i in (0..m).rev() {
        let next = if i + 1 == m { 0.0 } else { e[i] * e[i] / up[i + 1] };
        up[i] = guard(d[i] - lambda - next);
    }
    let gamma = |i: usize| down[i] + up[i] - (d[i] - lambda);
    let t = (0..m).min_by(|&a, &b| gamma(a).abs().total_cmp(&gamma(b).abs())).unwrap_or(0);
    let mut x = vec![0.0; m];
    x[t] = 1.0;
    for i in (0..t).rev() {
        x[i] = -e[i] * x[i + 1] / down[i];
    }
    for i in t + 1..m {
        x[i] = -e[i - 1] * x[i - 1] / up[i];
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    x.iter().map(|v| v / norm).collect()
}

/// Lowest eigenvalue and ground state. `H` only couples `k` to `k ± 2`, so
/// the even and odd Dicke indices are diagonalised separately; on a tie
/// the even block wins, as it is the one selected by any `h > 0`.
pub fn ground_state_with_energy(p: &LmgParams) -> Result<(f64, SymmetricState)> {
    p.validate()?;
    let n = p.two_s;
    let mut best: Option<(f64, Vec<usize>, Vec<f64>)> = None;
    for parity in [0, 1] {
        let ks: Vec<usize> = (parity..=n).step_by(2).collect();
        let h = block(p, &ks);
        let (values, _) = jacobi_eigen(h.clone());
        let scale = values.iter().map(|x| x.abs()).fold(1.0, f64::max);
        if best.as_ref().is_none_or(|b| values[0] < b.0 - 1e-12 * scale) {
            let d: Vec<f64> = (0..ks.len()).map(|i| h[i][i]).collect();
            let e: Vec<f64> = (1..ks.len()).map(|i| h[i - 1][i]).collect();
            let v = tridiagonal_eigenvector(&d, &e, values[0]);
            best = Some((values[0], ks, v));
        }
    }
    let (energy, ks, v) = best.expect("two blocks");
    let sign = if v.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    for (&k, &x) in ks.iter().zip(&v) {
        coeffs[k] = Complex64::new(sign * x, 0.0);
    }
    Ok((energy, SymmetricState::new(coeffs)?))
}

pub fn ground_state(p: &LmgParams) -> Result<SymmetricState> {
    Ok(ground_state_with_energy(p)?.1)
}

/// Upper end of the density support: `π` in the broken phase,
/// `arccos((h − 2)/h)` in the symmetric phase.
pub fn support_edge(h: f64) -> f64 {
    if h <= 1.0 {
        PI
    } else {
        ((h - 2.0) / h).acos()
    }
}

/// Latitudinal density of Majorana points in the thermodynamic limit, with
/// `γ = 1`.
pub fn mp_density(h: f64, theta: f64) -> Result<f64> {
    if !(h >= 0.0 && h.is_finite()) {
        return Err(Error::InvalidParameter(format!("h must be nonnegative, got {h}")));
    }
    let t = (theta + PI).rem_euclid(TAU) - PI;
    let c = t.cos();
    if h <= 1.0 {
        return Ok((1.0 + h * c) / TAU);
    }
    if t.abs() > support_edge(h) + 1e-12 {
        return Err(Error::OutOfSupport(theta));
    }
    Ok((h * (1.0 + c) * (2.0 - h + h * c)).max(0.0).sqrt() / TAU)
}

/// `−log₂ g²` along the real great circle in the broken phase, as a
/// function of the polar angle `ϑ` of the product state.
pub fn log_amplitude_broken(h: f64, theta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&h) {
        return Err(Error::InvalidParameter(format!("broken phase needs 0 <= h <= 1, got {h}")));
    }
    let (s, c) = (theta.sin().abs(), theta.cos());
    // (1 − |sin ϑ|)/cos ϑ written without the cancellation at ϑ = π/2
    Ok(2.0 - (1.0 + s).log2() - h / LN_2 * c / (1.0 + s))
}

/// Polar angle of the CPPs in the thermodynamic limit.
pub fn cpp_latitude(h: f64) -> Result<f64> {
    if !(h >= 0.0 && h.is_finite()) {
        return Err(Error::InvalidParameter(format!("h must be nonnegative, got {h}")));
    }
    Ok(if h <= 1.0 { h.acos() } else { 0.0 })
}

#[derive(Debug, Clone, Serialize)]
pub struct LmgReport {
    pub params: LmgParams,
    pub energy: f64,
    pub mps: Vec<BlochPoint>,
    pub cpps: CppReport,
    /// Polar angle of the northernmost CPP.
    pub cpp_latitude: f64,
    /// Its counterpart in the thermodynamic limit.
    pub continuum_cpp_latitude: f64,
    /// Largest distance of a Majorana point from the great circle
    /// `φ ∈ {π/2, 3π/2}`, in radians of azimuth.
    pub imaginary_circle_deviation: f64,
}

/// Azimuthal distance of `p` from the great circle through the poles at
/// `φ = π/2`; polar points count as on it.
pub fn imaginary_circle_distance(p: BlochPoint) -> f64 {
    if p.theta.sin() < 1e-9 {
        return 0.0;
    }
    let d = (p.phi - PI / 2.0).rem_euclid(PI);
    d.min(PI - d)
}

pub fn analyze(p: &LmgParams) -> Result<LmgReport> {
    let (energy, state) = ground_state_with_energy(p)?;
    // the tails are accurate to full relative precision, so keep them
    let mps = state_to_mps_with_tol(&state, DEFAULT_CLUSTER_TOL, 0.0)?.points;
    let cpps = positive_cpp_search(&state)?;
    let northmost = cpps.cpps.iter().map(|c| c.theta).fold(PI, f64::min);
    let imaginary_circle_deviation = mps.iter().map(|&m| imaginary_circle_distance(m)).fold(0.0, f64::max);
    Ok(LmgReport {
        params: *p,
        energy,
        mps,
        cpps,
        cpp_latitude: northmost,
        continuum_cpp_latitude: cpp_latitude(p.h / p.gamma)?,
        imaginary_circle_deviation,
    })
}

