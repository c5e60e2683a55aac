//! Symmetric states in the Dicke basis and their Majorana points.

mod io;
mod roots;

pub use io::{read_state_json, state_from_json, state_to_json, StateJson};
pub use roots::polynomial_roots;

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default chordal tolerance for merging degenerate Majorana points.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;

const ZERO_NORM: f64 = 1e-300;
const DEGREE_REL_TOL: f64 = 1e-12;

/// Binomial coefficient as a float.
pub fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    if acc < 9.0e15 {
        acc.round()
    } else {
        acc
    }
}

/// `sqrt(binom(n, k))` for `k = 0..=n`.
pub fn sqrt_binomials(n: usize) -> Vec<f64> {
    (0..=n).map(|k| binom(n, k).sqrt()).collect()
}

/// Permutation-symmetric state of `n` qubits, stored as amplitudes over the
/// orthonormal Dicke basis `S_{n,0} .. S_{n,n}`.
///
/// Values are always normalised with the first nonzero amplitude real and
/// nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricState {
    coeffs: Vec<Complex64>,
}

impl SymmetricState {
    /// Normalises and phase-fixes the given amplitudes (`n = len - 1`).
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidState(format!(
                "need at least 2 amplitudes, got {}",
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        normalize_coeffs(coeffs).map(|coeffs| SymmetricState { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The Dicke state `S_{n,k}`.
    pub fn dicke(n: usize, k: usize) -> Self {
        assert!(n >= 1 && k <= n, "dicke({n}, {k}) out of range");
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[k] = Complex64::new(1.0, 0.0);
        SymmetricState { coeffs }
    }

    /// `(S_{n,0} + S_{n,n}) / sqrt(2)`.
    pub fn ghz(n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        coeffs[n] += Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::new(coeffs).expect("ghz state is nonzero")
    }

    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &SymmetricState) -> Complex64 {
        assert_eq!(self.n(), other.n(), "qubit counts differ");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|<self|other>|`.
    pub fn fidelity(&self, other: &SymmetricState) -> f64 {
        self.inner(other).norm()
    }

    /// True when all amplitudes are real and nonnegative within `tol`.
    pub fn is_positive(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.im.abs() <= tol && c.re >= -tol)
    }

    /// Indices of amplitudes whose modulus exceeds `tol`.
    pub fn support(&self, tol: f64) -> Vec<usize> {
        (0..=self.n())
            .filter(|&k| self.coeffs[k].norm() > tol)
            .collect()
    }

    /// Coefficients of the Majorana polynomial.
    pub fn majorana_polynomial(&self) -> MajoranaPolynomial {
        MajoranaPolynomial::from_state(self)
    }

    /// Replaces every amplitude by its modulus.
    pub fn dephased(&self) -> SymmetricState {
        SymmetricState::new(
            self.coeffs
                .iter()
                .map(|c| Complex64::new(c.norm(), 0.0))
                .collect(),
        )
        .expect("dephasing keeps the norm")
    }
}

/// Returns the normalised, phase-fixed copy of a state.
pub fn normalize(state: &SymmetricState) -> Result<SymmetricState> {
    SymmetricState::new(state.coeffs.clone())
}

fn normalize_coeffs(mut coeffs: Vec<Complex64>) -> Result<Vec<Complex64>> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale < ZERO_NORM {
        return Err(Error::ZeroState);
    }
    // already normalised and phase-fixed: keep bit-for-bit
    let norm_sqr: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    let first = coeffs.iter().find(|c| c.norm() > 0.0).unwrap();
    if (norm_sqr - 1.0).abs() <= 1e-14 && first.im == 0.0 && first.re > 0.0 {
        return Ok(coeffs);
    }
    for c in coeffs.iter_mut() {
        *c /= scale;
    }
    let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let first = coeffs
        .iter()
        .copied()
        .find(|c| c.norm() > 0.0)
        .expect("nonzero after scaling");
    let phase = first.conj() / first.norm();
    for c in coeffs.iter_mut() {
        *c = *c * phase / norm;
    }
    let lead = coeffs.iter_mut().find(|c| c.norm() > 0.0).unwrap();
    lead.im = 0.0;
    Ok(coeffs)
}

/// Point on the Bloch (Majorana) sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochPoint {
    pub theta: f64,
    pub phi: f64,
}

impl BlochPoint {
    /// Wraps arbitrary angles into `theta ∈ [0, π]`, `phi ∈ [0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Self {
        let mut theta = theta.rem_euclid(TAU);
        let mut phi = phi;
        if theta > PI {
            theta = TAU - theta;
            phi += PI;
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        if theta == 0.0 || theta == PI {
            phi = 0.0;
        }
        BlochPoint { theta, phi }
    }

    pub fn north() -> Self {
        BlochPoint { theta: 0.0, phi: 0.0 }
    }

    pub fn south() -> Self {
        BlochPoint { theta: PI, phi: 0.0 }
    }

    pub fn to_vector(self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    pub fn from_vector(v: [f64; 3]) -> Self {
        let rho = v[0].hypot(v[1]);
        if rho == 0.0 {
            return if v[2] >= 0.0 {
                BlochPoint::north()
            } else {
                BlochPoint::south()
            };
        }
        BlochPoint::new(rho.atan2(v[2]), v[1].atan2(v[0]))
    }

    /// Single-qubit state `cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>`.
    pub fn spinor(self) -> [Complex64; 2] {
        if self.theta == PI {
            return [Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, self.phi)];
        }
        let (s, c) = (self.theta / 2.0).sin_cos();
        [Complex64::new(c, 0.0), Complex64::from_polar(s, self.phi)]
    }

    /// Bloch point of a (not necessarily normalised) spinor.
    pub fn from_spinor(s: [Complex64; 2]) -> Self {
        let n0 = s[0].norm();
        let n1 = s[1].norm();
        let theta = 2.0 * n1.atan2(n0);
        let phi = if n0 == 0.0 || n1 == 0.0 {
            0.0
        } else {
            (s[1] * s[0].conj()).arg()
        };
        BlochPoint::new(theta, phi)
    }

    /// Euclidean distance between the unit vectors, which equals the
    /// chordal distance of the corresponding Majorana roots.
    pub fn chordal(self, other: BlochPoint) -> f64 {
        chord(self.to_vector(), other.to_vector())
    }

    pub fn antipode(self) -> Self {
        BlochPoint::new(PI - self.theta, self.phi + PI)
    }
}

pub(crate) fn chord(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

/// A point of the extended complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtendedComplex {
    pub fn finite(re: f64, im: f64) -> Self {
        ExtendedComplex::Finite(Complex64::new(re, im))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtendedComplex::Infinity)
    }

    /// Homogeneous coordinates `(z, 1)` or `(1, 0)`.
    pub fn homogeneous(self) -> [Complex64; 2] {
        match self {
            ExtendedComplex::Finite(z) => [z, Complex64::new(1.0, 0.0)],
            ExtendedComplex::Infinity => [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        }
    }

    /// Point with homogeneous coordinates `(h0, h1)`.
    pub fn from_homogeneous(h: [Complex64; 2]) -> Self {
        let scale = h[0].norm().max(h[1].norm());
        if h[1].norm() <= 1e-300 * scale.max(1e-300) || h[1].norm() == 0.0 {
            ExtendedComplex::Infinity
        } else {
            let z = h[0] / h[1];
            if z.re.is_finite() && z.im.is_finite() {
                ExtendedComplex::Finite(z)
            } else {
                ExtendedComplex::Infinity
            }
        }
    }

    /// Chordal distance on the Riemann sphere of unit radius.
    pub fn chordal(self, other: ExtendedComplex) -> f64 {
        match (self, other) {
            (ExtendedComplex::Infinity, ExtendedComplex::Infinity) => 0.0,
            (ExtendedComplex::Finite(z), ExtendedComplex::Infinity)
            | (ExtendedComplex::Infinity, ExtendedComplex::Finite(z)) => {
                2.0 / (1.0 + z.norm_sqr()).sqrt()
            }
            (ExtendedComplex::Finite(z), ExtendedComplex::Finite(w)) => {
                2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
            }
        }
    }
}

/// Majorana root of a Bloch point: `e^{-iφ} cot(θ/2)`, with the north pole
/// sent to infinity.
pub fn mp_to_root(p: BlochPoint) -> ExtendedComplex {
    if p.theta == 0.0 {
        return ExtendedComplex::Infinity;
    }
    if p.theta == PI {
        return ExtendedComplex::finite(0.0, 0.0);
    }
    let r = 1.0 / (p.theta / 2.0).tan();
    ExtendedComplex::Finite(Complex64::from_polar(r, -p.phi))
}

/// Inverse of [`mp_to_root`].
pub fn root_to_mp(z: ExtendedComplex) -> BlochPoint {
    match z {
        ExtendedComplex::Infinity => BlochPoint::north(),
        ExtendedComplex::Finite(z) => {
            let r = z.norm();
            if r == 0.0 {
                BlochPoint::south()
            } else {
                BlochPoint::new(PI - 2.0 * r.atan(), -z.arg())
            }
        }
    }
}

/// Majorana polynomial `ψ(z) = Σ_k c_k z^k` with `c_k = (-1)^k sqrt(C(n,k)) a_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MajoranaPolynomial {
    pub n: usize,
    pub coeffs: Vec<Complex64>,
    pub degree: usize,
    /// Coefficients at or below this fraction of the largest count as zero.
    pub zero_tol: f64,
}

impl MajoranaPolynomial {
    pub fn from_state(state: &SymmetricState) -> Self {
        Self::from_state_with_tol(state, DEGREE_REL_TOL)
    }

    /// As [`MajoranaPolynomial::from_state`] with an explicit relative zero
    /// threshold; `0.0` keeps every nonzero coefficient.
    pub fn from_state_with_tol(state: &SymmetricState, zero_tol: f64) -> Self {
        let n = state.n();
        let sq = sqrt_binomials(n);
        let coeffs: Vec<Complex64> = state
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                a * (sign * sq[k])
            })
            .collect();
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let degree = (0..=n)
            .rev()
            .find(|&k| coeffs[k].norm() > zero_tol * scale)
            .unwrap_or(0);
        MajoranaPolynomial { n, coeffs, degree, zero_tol }
    }

    /// Lowest index with a coefficient above the degree threshold.
    pub fn low_order(&self) -> usize {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        (0..=self.n)
            .find(|&k| self.coeffs[k].norm() > self.zero_tol * scale)
            .unwrap_or(0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs[..=self.degree]
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }
}

/// Degeneracy-clustered multiset of Majorana points.
#[derive(Debug, Clone, PartialEq)]
pub struct MpDistribution {
    pub n: usize,
    pub points: Vec<BlochPoint>,
    pub clusters: Vec<Cluster>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub point: BlochPoint,
    pub multiplicity: usize,
}

impl MpDistribution {
    /// Clusters raw points by single linkage in the chordal metric.
    pub fn from_points(points: Vec<BlochPoint>, tol: f64) -> Self {
        let n = points.len();
        let vecs: Vec<[f64; 3]> = points.iter().map(|p| p.to_vector()).collect();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                r = parent[r];
            }
            let mut j = i;
            while parent[j] != r {
                let next = parent[j];
                parent[j] = r;
                j = next;
            }
            r
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if chord(vecs[i], vecs[j]) < tol {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                }
            }
        }
        let mut clusters: Vec<(usize, [f64; 3], usize, BlochPoint)> = Vec::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            match clusters.iter_mut().find(|c| c.0 == r) {
                Some(c) => {
                    for a in 0..3 {
                        c.1[a] += vecs[i][a];
                    }
                    c.2 += 1;
                }
                None => clusters.push((r, vecs[i], 1, points[i])),
            }
        }
        let mut clusters: Vec<Cluster> = clusters
            .into_iter()
            .map(|(_, sum, m, first)| {
                let norm = (sum[0] * sum[0] + sum[1] * sum[1] + sum[2] * sum[2]).sqrt();
                let point = if m == 1 || norm == 0.0 {
                    first
                } else {
                    snap_pole(BlochPoint::from_vector([sum[0] / norm, sum[1] / norm, sum[2] / norm]))
                };
                Cluster { point, multiplicity: m }
            })
            .collect();
        sort_clusters(&mut clusters);
        MpDistribution { n, points, clusters }
    }

    /// Sorted multiplicities, largest first.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.clusters.iter().map(|c| c.multiplicity).collect()
    }

    pub fn diversity(&self) -> usize {
        self.clusters.len()
    }

    /// Multiplicity of the cluster at `p` (0 if none lies within `tol`).
    pub fn multiplicity_at(&self, p: BlochPoint, tol: f64) -> usize {
        self.clusters
            .iter()
            .filter(|c| c.point.chordal(p) < tol)
            .map(|c| c.multiplicity)
            .sum()
    }
}

pub(crate) fn snap_pole(p: BlochPoint) -> BlochPoint {
    if p.theta < 1e-15 {
        BlochPoint::north()
    } else if PI - p.theta < 1e-15 {
        BlochPoint::south()
    } else {
        p
    }
}

/// Orders clusters by multiplicity (descending), then `theta`, then `phi`.
pub fn sort_clusters(clusters: &mut [Cluster]) {
    clusters.sort_by(|a, b| {
        b.multiplicity
            .cmp(&a.multiplicity)
            .then(a.point.theta.total_cmp(&b.point.theta))
            .then(a.point.phi.total_cmp(&b.point.phi))
    });
}

/// Builds the state whose Majorana points are `points`.
///
/// The product of the linear forms `φ0 x + φ1 y` of the points gives
/// `Σ e_k x^{n-k} y^k`, and the Dicke amplitudes are `e_k / sqrt(C(n,k))`.
/// Points at the north pole contribute the form `x`, which is the
/// zero padding for roots at infinity.
pub fn state_from_mps(points: &[BlochPoint]) -> Result<SymmetricState> {
    let spinors: Vec<[Complex64; 2]> = points.iter().map(|p| p.spinor()).collect();
    state_from_spinors(&spinors)
}

/// Same as [`state_from_mps`] for unnormalised single-qubit states.
pub fn state_from_spinors(spinors: &[[Complex64; 2]]) -> Result<SymmetricState> {
    if spinors.is_empty() {
        return Err(Error::InvalidState("no Majorana points".into()));
    }
    let n = spinors.len();
    let mut e = vec![Complex64::new(0.0, 0.0); n + 1];
    e[0] = Complex64::new(1.0, 0.0);
    let mut deg = 0;
    for s in spinors {
        let norm = (s[0].norm_sqr() + s[1].norm_sqr()).sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroState);
        }
        let (p0, p1) = (s[0] / norm, s[1] / norm);
        for k in (0..=deg + 1).rev() {
            let mut v = e[k] * p0;
            if k > 0 {
                v += e[k - 1] * p1;
            }
            e[k] = v;
        }
        deg += 1;
    }
    let sq = sqrt_binomials(n);
    SymmetricState::new(e.iter().zip(&sq).map(|(ek, s)| ek / s).collect())
}

/// Majorana points of a state, clustered at chordal distance `cluster_tol`.
pub fn state_to_mps(state: &SymmetricState, cluster_tol: f64) -> Result<MpDistribution> {
    mps_of_polynomial(&state.majorana_polynomial(), cluster_tol)
}

/// As [`state_to_mps`], treating amplitudes as zero only below `zero_tol`
/// times the largest one. States whose tiny amplitudes are accurate, such
/// as spin-model ground states, need a threshold below the default.
pub fn state_to_mps_with_tol(state: &SymmetricState, cluster_tol: f64, zero_tol: f64) -> Result<MpDistribution> {
    mps_of_polynomial(&MajoranaPolynomial::from_state_with_tol(state, zero_tol), cluster_tol)
}

fn mps_of_polynomial(poly: &MajoranaPolynomial, cluster_tol: f64) -> Result<MpDistribution> {
    let roots = polynomial_roots(poly)?;
    let points: Vec<BlochPoint> = roots.into_iter().map(root_to_mp).collect();
    Ok(MpDistribution::from_points(points, cluster_tol))
}

/// `a_k ↦ a_k e^{ikφ}`: rotates all Majorana points by `angle` about Z.
pub fn rotate_z(state: &SymmetricState, angle: f64) -> SymmetricState {
    let coeffs = state
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, a)| a * Complex64::from_polar(1.0, k as f64 * angle))
        .collect();
    SymmetricState::new(coeffs).expect("rotation keeps the norm")
}

/// 2×2 complex matrix in row-major order.
pub type Mat2 = [[Complex64; 2]; 2];

pub fn mat2_apply(m: &Mat2, v: [Complex64; 2]) -> [Complex64; 2] {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

/// `‖U†U − I‖_F`.
pub fn unitarity_defect(u: &Mat2) -> f64 {
    let mut acc = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..2 {
                s += u[k][i].conj() * u[k][j];
            }
            if i == j {
                s -= 1.0;
            }
            acc += s.norm_sqr();
        }
    }
    acc.sqrt()
}

/// Applies `U^{⊗n}` by mapping every Majorana point through `U`.
pub fn apply_su2(state: &SymmetricState, u: &Mat2) -> Result<SymmetricState> {
    let defect = unitarity_defect(u);
    if defect > 1e-10 {
        return Err(Error::NotUnitary(defect));
    }
    apply_local(state, u)
}

/// Applies an invertible local operator `B^{⊗n}` through the Majorana
/// points (the result is renormalised).
pub fn apply_local(state: &SymmetricState, m: &Mat2) -> Result<SymmetricState> {
    let mps = state_to_mps(state, 0.0)?;
    let spinors: Vec<[Complex64; 2]> = mps
        .points
        .iter()
        .map(|p| mat2_apply(m, p.spinor()))
        .collect();
    state_from_spinors(&spinors)
}

/// Rotation `exp(-i θ σ_x / 2)`.
pub fn rx(theta: f64) -> Mat2 {
    let (s, c) = (theta / 2.0).sin_cos();
    [
        [Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
        [Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
    ]
}

/// Rotation `exp(-i θ σ_y / 2)`.
pub fn ry(theta: f64) -> Mat2 {
    let (s, c) = (theta / 2.0).sin_cos();
    [
        [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
    ]
}

/// Rotation `exp(-i θ σ_z / 2)`.
pub fn rz(theta: f64) -> Mat2 {
    [
        [Complex64::from_polar(1.0, -theta / 2.0), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, theta / 2.0)],
    ]
}

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}
