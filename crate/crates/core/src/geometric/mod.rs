//! Spherical amplitude function, closest product points and the geometric
//! measure of entanglement.

mod quadrature;

pub use quadrature::gauss_legendre;

use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::optim::{nelder_mead, scan_minima};
use crate::symstate::{sqrt_binomials, BlochPoint, SymmetricState};

/// Relative tolerance on `g` for a local maximum to count as a CPP.
pub const CPP_REL_TOL: f64 = 1e-9;
/// Chordal distance under which two maxima are the same point.
pub const DEDUP_TOL: f64 = 1e-6;
pub const DEFAULT_GRID_DEG: f64 = 1.0;
pub const DEFAULT_REFINE_TOL: f64 = 1e-12;
pub const DEFAULT_QUAD_ORDER: usize = 64;
const PHI_NODES: usize = 256;

/// Closest product points of a state.
#[derive(Debug, Clone, Serialize)]
pub struct CppReport {
    pub cpps: Vec<BlochPoint>,
    pub g_max: f64,
    pub e_g: f64,
    pub local_maxima: Vec<(BlochPoint, f64)>,
    /// Continuous circle of CPPs, if one was detected.
    pub ring: Option<CppRing>,
}

/// Circle of CPPs: the points at angular distance `angle` from `axis`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CppRing {
    pub axis: BlochPoint,
    pub angle: f64,
}

/// Fits a circle through the points; `None` unless all lie on it within
/// `tol`.
fn fit_ring(points: &[BlochPoint], tol: f64) -> Option<CppRing> {
    let vs: Vec<[f64; 3]> = points.iter().map(|p| p.to_vector()).collect();
    let m = vs.len() as f64;
    let mut c = [0.0; 3];
    for v in &vs {
        for a in 0..3 {
            c[a] += v[a] / m;
        }
    }
    let mut cov = nalgebra::Matrix3::<f64>::zeros();
    for v in &vs {
        let d = nalgebra::Vector3::new(v[0] - c[0], v[1] - c[1], v[2] - c[2]);
        cov += d * d.transpose();
    }
    let eig = cov.symmetric_eigen();
    let k = eig.eigenvalues.imin();
    let mut axis = eig.eigenvectors.column(k).into_owned();
    if axis.dot(&nalgebra::Vector3::new(c[0], c[1], c[2])) < 0.0 {
        axis = -axis;
    }
    let h = axis.dot(&nalgebra::Vector3::new(c[0], c[1], c[2]));
    for v in &vs {
        if (axis.dot(&nalgebra::Vector3::new(v[0], v[1], v[2])) - h).abs() > tol {
            return None;
        }
    }
    let axis = crate::symstate::snap_pole(BlochPoint::from_vector([axis[0], axis[1], axis[2]]));
    Some(CppRing { axis, angle: h.clamp(-1.0, 1.0).acos() })
}

impl CppReport {
    fn from_maxima(n: usize, mut maxima: Vec<(BlochPoint, f64)>) -> CppReport {
        maxima.sort_by(|a, b| {
            b.1.total_cmp(&a.1)
                .then(a.0.theta.total_cmp(&b.0.theta))
                .then(a.0.phi.total_cmp(&b.0.phi))
        });
        let mut kept: Vec<(BlochPoint, f64)> = Vec::new();
        for (p, g) in maxima {
            if kept.iter().all(|(q, _)| q.chordal(p) >= DEDUP_TOL) {
                kept.push((p, g));
            }
        }
        let g_max = kept.first().map(|m| m.1).unwrap_or(0.0);
        let cpps: Vec<BlochPoint> = kept
            .iter()
            .filter(|(_, g)| *g >= g_max * (1.0 - CPP_REL_TOL))
            .map(|(p, _)| *p)
            .collect();
        let ring = if cpps.len() > 4 * n { fit_ring(&cpps, 1e-6) } else { None };
        CppReport {
            cpps,
            g_max,
            e_g: -2.0 * g_max.log2(),
            local_maxima: kept,
            ring,
        }
    }

    /// Number of CPPs, or `None` for a continuous ring.
    pub fn count(&self) -> Option<usize> {
        self.ring.is_none().then_some(self.cpps.len())
    }
}

/// Evaluator of `F(σ) = <ψ|σ^{⊗n}>` for single-qubit states `σ`.
#[derive(Debug, Clone)]
pub struct Amplitude {
    n: usize,
    b: Vec<Complex64>,
}

impl Amplitude {
    pub fn new(state: &SymmetricState) -> Self {
        let n = state.n();
        let sq = sqrt_binomials(n);
        let b = state
            .coeffs()
            .iter()
            .zip(&sq)
            .map(|(a, s)| a.conj() * s)
            .collect();
        Amplitude { n, b }
    }

    /// `F(σ)` for a normalised spinor.
    pub fn overlap(&self, s: [Complex64; 2]) -> Complex64 {
        let (lead, r, rev) = if s[0].norm() >= s[1].norm() {
            (s[0], s[1] / s[0], false)
        } else {
            (s[1], s[0] / s[1], true)
        };
        let mut acc = Complex64::new(0.0, 0.0);
        if rev {
            for k in 0..=self.n {
                acc = acc * r + self.b[k];
            }
        } else {
            for k in (0..=self.n).rev() {
                acc = acc * r + self.b[k];
            }
        }
        acc * lead.powu(self.n as u32)
    }

    pub fn at(&self, p: BlochPoint) -> f64 {
        self.overlap(p.spinor()).norm()
    }

    /// `P(0), P'(0), P''(0)` for `P(w) = F(s + w t)`.
    fn jet(&self, s: [Complex64; 2], t: [Complex64; 2]) -> [Complex64; 3] {
        let n = self.n;
        let pw = |base: Complex64, e: i64| -> Complex64 {
            if e < 0 {
                Complex64::new(0.0, 0.0)
            } else {
                base.powu(e as u32)
            }
        };
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for k in 0..=n {
            if self.b[k].norm() == 0.0 {
                continue;
            }
            let m = (n - k) as i64;
            let kk = k as i64;
            // (s0 + w t0)^m up to second order
            let x = [
                pw(s[0], m),
                pw(s[0], m - 1) * t[0] * m as f64,
                pw(s[0], m - 2) * t[0] * t[0] * (m * (m - 1)) as f64 / 2.0,
            ];
            let y = [
                pw(s[1], kk),
                pw(s[1], kk - 1) * t[1] * kk as f64,
                pw(s[1], kk - 2) * t[1] * t[1] * (kk * (kk - 1)) as f64 / 2.0,
            ];
            out[0] += self.b[k] * x[0] * y[0];
            out[1] += self.b[k] * (x[0] * y[1] + x[1] * y[0]);
            out[2] += self.b[k] * (x[0] * y[2] + x[1] * y[1] + x[2] * y[0]) * 2.0;
        }
        out
    }
}

fn orthogonal(s: [Complex64; 2]) -> [Complex64; 2] {
    [-s[1].conj(), s[0].conj()]
}

fn chart_point(s: [Complex64; 2], t: [Complex64; 2], w: Complex64) -> [Complex64; 2] {
    let v = [s[0] + w * t[0], s[1] + w * t[1]];
    let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    [v[0] / norm, v[1] / norm]
}

/// Spherical amplitude `g(θ, φ) = |<ψ|σ(θ,φ)^{⊗n}>|`.
pub fn amplitude(state: &SymmetricState, p: BlochPoint) -> f64 {
    Amplitude::new(state).at(p)
}

/// Nelder–Mead ascent of `g` in the stereographic chart centred at `start`,
/// followed by Newton steps on `log g²`.
fn refine_max(amp: &Amplitude, start: BlochPoint, step: f64, tol: f64) -> (BlochPoint, f64) {
    let s = start.spinor();
    let t = orthogonal(s);
    let f = |x: &[f64]| -> f64 {
        let v = chart_point(s, t, Complex64::new(x[0], x[1]));
        -amp.overlap(v).norm_sqr()
    };
    let res = nelder_mead(f, &[0.0, 0.0], &[step, step], tol, 0.0, 2000);
    let mut sp = chart_point(s, t, Complex64::new(res.x[0], res.x[1]));
    let mut g = amp.overlap(sp).norm();
    newton_polish(amp, &mut sp, &mut g);
    (BlochPoint::from_spinor(sp), g)
}

/// Newton iteration for a stationary point of `log g²`, accepted only while
/// `g` does not decrease and the Hessian is negative definite.
fn newton_polish(amp: &Amplitude, sp: &mut [Complex64; 2], g: &mut f64) {
    let n = amp.n as f64;
    for _ in 0..30 {
        let t = orthogonal(*sp);
        let [p0, p1, p2] = amp.jet(*sp, t);
        if p0.norm() == 0.0 {
            return;
        }
        let q = p1 / p0;
        let dq = (p2 * p0 - p1 * p1) / (p0 * p0);
        let grad = [2.0 * q.re, -2.0 * q.im];
        let huu = 2.0 * dq.re - 2.0 * n;
        let hvv = -2.0 * dq.re - 2.0 * n;
        let huv = -2.0 * dq.im;
        // eigen-decomposition of the 2x2 Hessian; flat directions are left
        // alone so that degenerate maxima (rings) still get polished
        let mean = 0.5 * (huu + hvv);
        let rad = (0.25 * (huu - hvv).powi(2) + huv * huv).sqrt();
        let lam = [mean + rad, mean - rad];
        let scale = 2.0 * n;
        if lam[0] > 1e-6 * scale {
            return;
        }
        let vecs = if rad == 0.0 {
            [[1.0, 0.0], [0.0, 1.0]]
        } else {
            let (x, y) = (huv, lam[0] - huu);
            let l = x.hypot(y);
            let v0 = if l == 0.0 { [1.0, 0.0] } else { [x / l, y / l] };
            [v0, [-v0[1], v0[0]]]
        };
        let (mut du, mut dv) = (0.0, 0.0);
        for i in 0..2 {
            if lam[i] < -1e-6 * scale {
                let proj = vecs[i][0] * grad[0] + vecs[i][1] * grad[1];
                du -= proj / lam[i] * vecs[i][0];
                dv -= proj / lam[i] * vecs[i][1];
            }
        }
        let len = du.hypot(dv);
        if len > 1e-3 {
            return;
        }
        let cand = chart_point(*sp, t, Complex64::new(du, dv));
        let gc = amp.overlap(cand).norm();
        if gc < *g * (1.0 - 1e-12) {
            return;
        }
        *sp = cand;
        *g = gc.max(*g);
        if len < 1e-15 {
            return;
        }
    }
}

/// Closest product points by a grid scan followed by local refinement of
/// every grid local maximum.
pub fn find_cpps(state: &SymmetricState, grid_deg: f64, refine_tol: f64) -> CppReport {
    CppReport::from_maxima(state.n(), local_maxima(state, grid_deg, refine_tol, None))
}

/// Refined local maxima of `g`. With `band = Some(b)` only grid maxima
/// within relative distance `b` of the largest grid value are refined.
pub(crate) fn local_maxima(
    state: &SymmetricState,
    grid_deg: f64,
    refine_tol: f64,
    band: Option<f64>,
) -> Vec<(BlochPoint, f64)> {
    let amp = Amplitude::new(state);
    let n = amp.n;
    let n_theta = (180.0 / grid_deg).round().max(2.0) as usize;
    let n_phi = (360.0 / grid_deg).round().max(3.0) as usize;
    let dt = PI / n_theta as f64;
    let dp = TAU / n_phi as f64;
    let north = amp.at(BlochPoint::north());
    let south = amp.at(BlochPoint::south());
    let phases: Vec<Complex64> = (0..n_phi).map(|j| Complex64::from_polar(1.0, j as f64 * dp)).collect();
    // each row is a polynomial in e^{iφ}
    let rows: Vec<Vec<f64>> = (1..n_theta)
        .into_par_iter()
        .map(|i| {
            let (s, c) = (i as f64 * dt / 2.0).sin_cos();
            let w: Vec<Complex64> = (0..=n)
                .map(|k| amp.b[k] * c.powi((n - k) as i32) * s.powi(k as i32))
                .collect();
            phases
                .iter()
                .map(|&z| w.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &wk| acc * z + wk).norm())
                .collect()
        })
        .collect();
    let ge = |a: f64, b: f64| a >= b * (1.0 - 1e-12);

    let mut starts: Vec<(BlochPoint, f64)> = Vec::new();
    if rows[0].iter().all(|&v| ge(north, v)) {
        starts.push((BlochPoint::north(), north));
    }
    let last = rows.len() - 1;
    if rows[last].iter().all(|&v| ge(south, v)) {
        starts.push((BlochPoint::south(), south));
    }
    for (r, row) in rows.iter().enumerate() {
        for j in 0..n_phi {
            let v = row[j];
            let mut is_max = true;
            'nb: for dr in [-1i64, 0, 1] {
                let rr = r as i64 + dr;
                for dj in [-1i64, 0, 1] {
                    if dr == 0 && dj == 0 {
                        continue;
                    }
                    let w = if rr < 0 {
                        north
                    } else if rr as usize > last {
                        south
                    } else {
                        rows[rr as usize][(j as i64 + dj).rem_euclid(n_phi as i64) as usize]
                    };
                    if !ge(v, w) {
                        is_max = false;
                        break 'nb;
                    }
                }
            }
            if is_max {
                starts.push((BlochPoint::new((r + 1) as f64 * dt, j as f64 * dp), v));
            }
        }
    }
    if let Some(b) = band {
        let top = starts.iter().map(|s| s.1).fold(0.0, f64::max);
        starts.retain(|s| s.1 >= top * (1.0 - b));
    }
    let step = dt / 4.0;
    starts
        .par_iter()
        .map(|&(p, _)| refine_max(&amp, p, step, refine_tol))
        .collect()
}

/// Geometric entanglement `E_g = -log2 G²` with the default search settings.
pub fn entanglement(state: &SymmetricState) -> f64 {
    find_cpps(state, DEFAULT_GRID_DEG, DEFAULT_REFINE_TOL).e_g
}

/// Closed-form entanglement of the Dicke state `S_{n,k}`.
pub fn dicke_entanglement(n: usize, k: usize) -> f64 {
    assert!(k <= n, "k must not exceed n");
    if k == 0 || k == n {
        return 0.0;
    }
    let (nf, kf) = (n as f64, k as f64);
    let log_binom = crate::symstate::binom(n, k).log2();
    kf * (nf / kf).log2() + (nf - kf) * (nf / (nf - kf)).log2() - log_binom
}

/// CPP set of a Dicke state: one pole, or a ring at a fixed latitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DickeCpps {
    pub theta: f64,
    pub continuous: bool,
}

pub fn dicke_cpps(n: usize, k: usize) -> DickeCpps {
    assert!(k <= n, "k must not exceed n");
    let theta = 2.0 * ((k as f64) / (n as f64)).sqrt().asin();
    DickeCpps {
        theta,
        continuous: k != 0 && k != n,
    }
}

/// `∬ g² sinθ dθ dφ`, Gauss–Legendre in `cosθ` and uniform in `φ`.
pub fn integral_check(state: &SymmetricState, quad_order: usize) -> f64 {
    let amp = Amplitude::new(state);
    let (xs, ws) = gauss_legendre(quad_order);
    let n_phi = PHI_NODES.max(2 * state.n() + 2);
    let dp = TAU / n_phi as f64;
    xs.par_iter()
        .zip(ws.par_iter())
        .map(|(&x, &w)| {
            let theta = x.clamp(-1.0, 1.0).acos();
            let row: f64 = (0..n_phi)
                .map(|j| amp.at(BlochPoint::new(theta, j as f64 * dp)).powi(2))
                .sum();
            w * row * dp
        })
        .sum()
}

/// Volume enclosed by the surface `r = g^{2/3}`.
pub fn volume_check(state: &SymmetricState, quad_order: usize) -> f64 {
    integral_check(state, quad_order) / 3.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleFunction {
    /// `g²`
    Amplitude2,
    /// `g^{2/3}`, the radius of the volume surface.
    Volume,
}

#[derive(Debug, Clone, Serialize)]
pub struct SphereSamples {
    pub rows: usize,
    pub cols: usize,
    /// `(theta, phi, value)`, row-major in theta then phi.
    pub samples: Vec<(f64, f64, f64)>,
}

impl SphereSamples {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta,phi,value\n");
        for (t, p, v) in &self.samples {
            out.push_str(&format!("{t:.16e},{p:.16e},{v:.16e}\n"));
        }
        out
    }
}

/// Samples on `rows` latitudes from pole to pole and `cols` azimuths.
pub fn sample_sphere(
    state: &SymmetricState,
    function: SampleFunction,
    resolution: (usize, usize),
) -> Result<SphereSamples> {
    let (rows, cols) = resolution;
    if rows < 2 || cols < 2 {
        return Err(Error::InvalidParameter(format!(
            "resolution must be at least 2x2, got {rows}x{cols}"
        )));
    }
    let amp = Amplitude::new(state);
    let mut samples = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        let theta = PI * i as f64 / (rows - 1) as f64;
        for j in 0..cols {
            let phi = TAU * j as f64 / cols as f64;
            let g2 = amp.overlap(spinor_raw(theta, phi)).norm_sqr();
            let v = match function {
                SampleFunction::Amplitude2 => g2,
                SampleFunction::Volume => g2.cbrt(),
            };
            samples.push((theta, phi, v));
        }
    }
    Ok(SphereSamples { rows, cols, samples })
}

fn spinor_raw(theta: f64, phi: f64) -> [Complex64; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    [Complex64::new(c, 0.0), Complex64::from_polar(s, phi)]
}

/// Largest `m` such that all nonzero amplitudes share an index class mod `m`
/// (0 when at most one amplitude is nonzero).
pub fn rotational_order(state: &SymmetricState, tol: f64) -> usize {
    let support = state.support(tol);
    let k0 = support[0];
    support.iter().skip(1).fold(0, |g, &k| gcd(g, k - k0))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// CPP search restricted to the positive half circle `φ = 0` and its images
/// under the rotational symmetry of a positive state.
pub fn positive_cpp_search(state: &SymmetricState) -> Result<CppReport> {
    if !state.is_positive(1e-12) {
        return Err(Error::NotPositive);
    }
    let n = state.n();
    let amp = Amplitude::new(state);
    let m = rotational_order(state, 1e-12);
    if m == 0 {
        let k = state.support(1e-12)[0];
        let d = dicke_cpps(n, k);
        let g = amp.at(BlochPoint::new(d.theta, 0.0));
        let count = if d.continuous { 4 * n + 4 } else { 1 };
        let maxima = (0..count)
            .map(|r| (BlochPoint::new(d.theta, TAU * r as f64 / count as f64), g))
            .collect();
        return Ok(CppReport::from_maxima(n, maxima));
    }
    let minima = scan_minima(
        |theta| -amp.at(BlochPoint::new(theta, 0.0)),
        0.0,
        PI,
        3600,
        1e-13,
    );
    let mut maxima = Vec::new();
    for (theta, _) in minima {
        let mut sp = BlochPoint::new(theta, 0.0).spinor();
        let mut g = amp.overlap(sp).norm();
        newton_polish(&amp, &mut sp, &mut g);
        let p = BlochPoint::from_spinor(sp);
        for r in 0..m {
            maxima.push((BlochPoint::new(p.theta, p.phi + TAU * r as f64 / m as f64), g));
        }
    }
    Ok(CppReport::from_maxima(n, maxima))
}

/// Dicke amplitudes of the product state `σ^{⊗n}`.
pub fn product_state_coeffs(n: usize, p: BlochPoint) -> Vec<Complex64> {
    let [c, u] = p.spinor();
    let sq = sqrt_binomials(n);
    (0..=n)
        .map(|k| c.powu((n - k) as u32) * u.powu(k as u32) * sq[k])
        .collect()
}

/// Least-squares distance of the state from the span of the product states
/// of its CPPs.
pub fn span_check(state: &SymmetricState, report: &CppReport) -> Result<f64> {
    span_residual(state, &report.cpps)
}

pub fn span_residual(state: &SymmetricState, points: &[BlochPoint]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyCppSet);
    }
    let n = state.n();
    let cols: Vec<Vec<Complex64>> = points.iter().map(|&p| product_state_coeffs(n, p)).collect();
    let a = DMatrix::from_fn(n + 1, points.len(), |i, j| cols[j][i]);
    let psi = DVector::from_column_slice(state.coeffs());
    let svd = a.clone().svd(true, true);
    let x = svd
        .solve(&psi, 1e-12)
        .map_err(|e| Error::InvalidParameter(format!("least squares failed: {e}")))?;
    let r = psi - a * x;
    Ok(r.norm().min(1.0))
}
