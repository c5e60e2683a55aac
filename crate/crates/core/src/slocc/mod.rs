//! LU and SLOCC equivalence of symmetric states through Möbius maps of their
//! Majorana roots, degeneracy classes, cross-ratios and canonical forms.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::symstate::{
    apply_local, mat2_apply, mat2_mul, mp_to_root, root_to_mp, state_to_mps, BlochPoint, Cluster,
    ExtendedComplex, Mat2, MpDistribution, SymmetricState, DEFAULT_CLUSTER_TOL,
};

/// Default chordal tolerance for matching Majorana multisets.
pub const DEFAULT_MATCH_TOL: f64 = 1e-6;
const DISTINCT_TOL: f64 = 1e-10;
const REAPPLY_TOL: f64 = 1e-9;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Möbius map `z ↦ (az + b)/(cz + d)` with `ad − bc = 1`.
///
/// The same matrix acts on single-qubit spinors, so it doubles as the local
/// operator `B` of an SLOCC transformation `B^{⊗n}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl MobiusMap {
    /// Rescales the matrix to unit determinant.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        let scale = (a.norm_sqr() + b.norm_sqr() + c.norm_sqr() + d.norm_sqr()).max(f64::MIN_POSITIVE);
        if !(det.norm() > 1e-14 * scale) {
            return Err(Error::InvalidParameter("singular Möbius matrix".into()));
        }
        let s = det.sqrt();
        Ok(MobiusMap { a: a / s, b: b / s, c: c / s, d: d / s })
    }

    pub fn from_matrix(m: &Mat2) -> Result<Self> {
        Self::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }

    pub fn identity() -> Self {
        MobiusMap { a: cx(1.0, 0.0), b: cx(0.0, 0.0), c: cx(0.0, 0.0), d: cx(1.0, 0.0) }
    }

    pub fn matrix(&self) -> Mat2 {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn apply(&self, z: ExtendedComplex) -> ExtendedComplex {
        ExtendedComplex::from_homogeneous(mat2_apply(&self.matrix(), z.homogeneous()))
    }

    /// Image of a Majorana point.
    pub fn apply_point(&self, p: BlochPoint) -> BlochPoint {
        BlochPoint::from_spinor(mat2_apply(&self.matrix(), p.spinor()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        let m = mat2_mul(&self.matrix(), &other.matrix());
        MobiusMap::from_matrix(&m).expect("product of unimodular maps is unimodular")
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// `‖M†M − (tr(M†M)/2) I‖_F`, relative to `tr(M†M)/2`.
    pub fn unitarity_defect(&self) -> f64 {
        let m = self.matrix();
        let mut g = [[cx(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                g[i][j] = m[0][i].conj() * m[0][j] + m[1][i].conj() * m[1][j];
            }
        }
        let half = (g[0][0].re + g[1][1].re) / 2.0;
        let off = (g[0][0] - half).norm_sqr() + (g[1][1] - half).norm_sqr() + g[0][1].norm_sqr() + g[1][0].norm_sqr();
        off.sqrt() / half
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }
}

impl Serialize for MobiusMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("MobiusMap", 4)?;
        st.serialize_field("a", &[self.a.re, self.a.im])?;
        st.serialize_field("b", &[self.b.re, self.b.im])?;
        st.serialize_field("c", &[self.c.re, self.c.im])?;
        st.serialize_field("d", &[self.d.re, self.d.im])?;
        st.end()
    }
}

/// Affine Möbius map `z ↦ Az + B` with `A > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffinePart {
    pub a: f64,
    pub b: Complex64,
}

impl AffinePart {
    pub fn matrix(&self) -> Mat2 {
        [[cx(self.a, 0.0), self.b], [cx(0.0, 0.0), cx(1.0, 0.0)]]
    }

    /// `self ∘ other`, again affine.
    pub fn compose(&self, other: &AffinePart) -> AffinePart {
        AffinePart { a: self.a * other.a, b: self.a * other.b + self.b }
    }
}

/// Degeneracy configuration: sorted Majorana multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DCClass {
    pub partition: Vec<usize>,
    pub diversity: usize,
}

impl fmt::Display for DCClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.partition.iter().map(|m| m.to_string()).collect();
        write!(f, "D_{{{}}}", parts.join(","))
    }
}

pub fn dc_class(mps: &MpDistribution) -> DCClass {
    let mut partition = mps.multiplicities();
    partition.sort_unstable_by(|a, b| b.cmp(a));
    DCClass { diversity: partition.len(), partition }
}

fn det2(u: [Complex64; 2], v: [Complex64; 2]) -> Complex64 {
    u[0] * v[1] - u[1] * v[0]
}

/// `(v1 − v3)(v2 − v4) / ((v2 − v3)(v1 − v4))`, with infinity handled in
/// homogeneous coordinates.
pub fn cross_ratio(
    v1: ExtendedComplex,
    v2: ExtendedComplex,
    v3: ExtendedComplex,
    v4: ExtendedComplex,
) -> Result<ExtendedComplex> {
    let v = [v1, v2, v3, v4];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if !(v[i].chordal(v[j]) > 0.0) {
                return Err(Error::DegenerateQuadruple);
            }
        }
    }
    let h: Vec<[Complex64; 2]> = v.iter().map(|z| normalized_homogeneous(*z)).collect();
    let num = det2(h[0], h[2]) * det2(h[1], h[3]);
    let den = det2(h[1], h[2]) * det2(h[0], h[3]);
    Ok(ExtendedComplex::from_homogeneous([num, den]))
}

fn normalized_homogeneous(z: ExtendedComplex) -> [Complex64; 2] {
    let h = z.homogeneous();
    let n = (h[0].norm_sqr() + h[1].norm_sqr()).sqrt();
    [h[0] / n, h[1] / n]
}

/// The distinct values among `λ, 1/λ, 1−λ, 1/(1−λ), λ/(λ−1), (λ−1)/λ`.
pub fn cross_ratio_orbit(lambda: ExtendedComplex) -> Vec<ExtendedComplex> {
    // each image as a Möbius map of λ, evaluated homogeneously
    let one = cx(1.0, 0.0);
    let zero = cx(0.0, 0.0);
    let maps = [
        [[one, zero], [zero, one]],
        [[zero, one], [one, zero]],
        [[-one, one], [zero, one]],
        [[zero, one], [-one, one]],
        [[one, zero], [one, -one]],
        [[one, -one], [one, zero]],
    ];
    let h = lambda.homogeneous();
    let mut out: Vec<ExtendedComplex> = Vec::with_capacity(6);
    for m in &maps {
        let z = ExtendedComplex::from_homogeneous(mat2_apply(m, h));
        if out.iter().all(|w| w.chordal(z) > 1e-12) {
            out.push(z);
        }
    }
    out
}

/// Homogeneous matrix sending `∞, 1, 0` to `p1, p2, p3`.
fn standard_frame(p: [ExtendedComplex; 3]) -> Mat2 {
    let h: Vec<[Complex64; 2]> = p.iter().map(|z| normalized_homogeneous(*z)).collect();
    // α h1 + β h3 = h2
    let det = det2(h[0], h[2]);
    let alpha = det2(h[1], h[2]) / det;
    let beta = det2(h[0], h[1]) / det;
    [[alpha * h[0][0], beta * h[2][0]], [alpha * h[0][1], beta * h[2][1]]]
}

fn mat2_inverse(m: &Mat2) -> Mat2 {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    [[m[1][1] / det, -m[0][1] / det], [-m[1][0] / det, m[0][0] / det]]
}

fn check_distinct(p: &[ExtendedComplex; 3]) -> Result<()> {
    for i in 0..3 {
        for j in (i + 1)..3 {
            if p[i].chordal(p[j]) <= DISTINCT_TOL {
                return Err(Error::DegenerateTriple);
            }
        }
    }
    Ok(())
}

/// The unique Möbius map sending `src[i]` to `dst[i]`.
pub fn mobius_from_triples(src: [ExtendedComplex; 3], dst: [ExtendedComplex; 3]) -> Result<MobiusMap> {
    check_distinct(&src)?;
    check_distinct(&dst)?;
    let m = mat2_mul(&standard_frame(dst), &mat2_inverse(&standard_frame(src)));
    let map = MobiusMap::from_matrix(&m).map_err(|_| Error::DegenerateTriple)?;
    for i in 0..3 {
        if map.apply(src[i]).chordal(dst[i]) > REAPPLY_TOL {
            return Err(Error::DegenerateTriple);
        }
    }
    Ok(map)
}

fn point_triple(p: [BlochPoint; 3]) -> [ExtendedComplex; 3] {
    [mp_to_root(p[0]), mp_to_root(p[1]), mp_to_root(p[2])]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "LU-equivalent")]
    LuEquivalent,
    #[serde(rename = "SLOCC-equivalent-not-LU")]
    SloccEquivalentNotLu,
    #[serde(rename = "inequivalent")]
    Inequivalent,
}

impl Relation {
    pub fn is_equivalent(self) -> bool {
        self != Relation::Inequivalent
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::LuEquivalent => "LU-equivalent",
            Relation::SloccEquivalentNotLu => "SLOCC-equivalent-not-LU",
            Relation::Inequivalent => "inequivalent",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceVerdict {
    pub relation: Relation,
    pub witness: Option<MobiusMap>,
    pub detail: String,
}

fn match_tol(n: usize, tol: f64) -> f64 {
    if n >= 12 {
        tol * 10.0
    } else {
        tol
    }
}

/// True when `map` sends the clusters of `src` onto those of `dst`, with
/// equal multiplicities, within `tol`.
fn maps_multiset(map: &MobiusMap, src: &[Cluster], dst: &[Cluster], tol: f64) -> bool {
    let mut used = vec![false; dst.len()];
    for c in src {
        let img = map.apply_point(c.point);
        let best = (0..dst.len())
            .filter(|&j| !used[j] && dst[j].multiplicity == c.multiplicity)
            .map(|j| (j, dst[j].point.chordal(img)))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((j, d)) if d <= tol => used[j] = true,
            _ => return false,
        }
    }
    true
}

/// Unitary map sending `p` to the north pole and `q` onto the meridian
/// `φ = 0`.
fn frame_rotation(p: BlochPoint, q: BlochPoint) -> MobiusMap {
    let s = p.spinor();
    let u = MobiusMap { a: s[0].conj(), b: s[1].conj(), c: -s[1], d: s[0] };
    let phi = u.apply_point(q).phi;
    let r = MobiusMap {
        a: Complex64::from_polar(1.0, phi / 2.0),
        b: cx(0.0, 0.0),
        c: cx(0.0, 0.0),
        d: Complex64::from_polar(1.0, -phi / 2.0),
    };
    r.compose(&u)
}

/// Map sending `(p1, p2)` to `(q1, p2)`, unitary when the two pairs are at
/// the same distance.
fn pair_map(p: [BlochPoint; 2], q: [BlochPoint; 2]) -> MobiusMap {
    let rp = frame_rotation(p[0], p[1]);
    let rq = frame_rotation(q[0], q[1]);
    let xp = mp_to_root(rp.apply_point(p[1]));
    let xq = mp_to_root(rq.apply_point(q[1]));
    let shift = match (xp, xq) {
        (ExtendedComplex::Finite(a), ExtendedComplex::Finite(b)) => b - a,
        _ => cx(0.0, 0.0),
    };
    let t = MobiusMap { a: cx(1.0, 0.0), b: shift, c: cx(0.0, 0.0), d: cx(1.0, 0.0) };
    rq.inverse().compose(&t.compose(&rp))
}

/// Ordered selections of distinct cluster indices of `dst` whose
/// multiplicities match `mults`, in lexicographic order.
fn matching_tuples(dst: &[Cluster], mults: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(dst: &[Cluster], mults: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == mults.len() {
            out.push(cur.clone());
            return;
        }
        for j in 0..dst.len() {
            if !cur.contains(&j) && dst[j].multiplicity == mults[cur.len()] {
                cur.push(j);
                rec(dst, mults, cur, out);
                cur.pop();
            }
        }
    }
    rec(dst, mults, &mut cur, &mut out);
    out
}

/// All candidate witnesses in deterministic enumeration order.
fn witnesses(src: &[Cluster], dst: &[Cluster], tol: f64) -> Vec<MobiusMap> {
    let d = src.len();
    let mut out = Vec::new();
    match d {
        1 => {
            let p = src[0].point;
            let q = dst[0].point;
            let helper_p = if p.theta < FRAC_PI_2 { BlochPoint::south() } else { BlochPoint::north() };
            let rp = frame_rotation(p, helper_p);
            let rq = frame_rotation(q, helper_p);
            out.push(rq.inverse().compose(&rp));
        }
        2 => {
            for t in matching_tuples(dst, &[src[0].multiplicity, src[1].multiplicity]) {
                out.push(pair_map([src[0].point, src[1].point], [dst[t[0]].point, dst[t[1]].point]));
            }
        }
        _ => {
            let fixed = point_triple([src[0].point, src[1].point, src[2].point]);
            let mults = [src[0].multiplicity, src[1].multiplicity, src[2].multiplicity];
            for t in matching_tuples(dst, &mults) {
                let target = point_triple([dst[t[0]].point, dst[t[1]].point, dst[t[2]].point]);
                if let Ok(m) = mobius_from_triples(fixed, target) {
                    out.push(m);
                }
            }
        }
    }
    out.retain(|m| maps_multiset(m, src, dst, tol));
    out
}

fn equivalence(s1: &SymmetricState, s2: &SymmetricState, tol: f64) -> Result<EquivalenceVerdict> {
    if s1.n() != s2.n() {
        return Err(Error::InvalidParameter(format!(
            "qubit counts differ: {} and {}",
            s1.n(),
            s2.n()
        )));
    }
    let n = s1.n();
    let m1 = state_to_mps(s1, DEFAULT_CLUSTER_TOL)?;
    let m2 = state_to_mps(s2, DEFAULT_CLUSTER_TOL)?;
    let (dc1, dc2) = (dc_class(&m1), dc_class(&m2));
    if dc1 != dc2 {
        return Ok(EquivalenceVerdict {
            relation: Relation::Inequivalent,
            witness: None,
            detail: format!("DC mismatch: {dc1} vs {dc2}"),
        });
    }
    let tol = match_tol(n, tol);
    let found = witnesses(&m1.clusters, &m2.clusters, tol);
    if let Some(u) = found.iter().find(|m| m.is_unitary(tol)) {
        return Ok(EquivalenceVerdict {
            relation: Relation::LuEquivalent,
            witness: Some(*u),
            detail: format!("unitary witness in {dc1}"),
        });
    }
    Ok(match found.first() {
        Some(m) => EquivalenceVerdict {
            relation: Relation::SloccEquivalentNotLu,
            witness: Some(*m),
            detail: format!("only non-unitary witnesses in {dc1}"),
        },
        None => EquivalenceVerdict {
            relation: Relation::Inequivalent,
            witness: None,
            detail: if dc1.diversity == 4 {
                format!("cross-ratio mismatch in {dc1}")
            } else {
                format!("exhaustive triple search failed in {dc1}")
            },
        },
    })
}

/// SLOCC classification of two states. Reports LU equivalence whenever one
/// of the witnesses is unitary.
pub fn slocc_equivalence(s1: &SymmetricState, s2: &SymmetricState, tol: f64) -> Result<EquivalenceVerdict> {
    equivalence(s1, s2, tol)
}

/// LU classification of two states; a witness counts for LU only if it is
/// unitary up to scale. The verdict keeps the SLOCC-only outcome visible.
pub fn lu_equivalence(s1: &SymmetricState, s2: &SymmetricState, tol: f64) -> Result<EquivalenceVerdict> {
    equivalence(s1, s2, tol)
}

/// `B^{⊗n}|ψ>` for the local operator of a Möbius map.
pub fn apply_mobius(state: &SymmetricState, map: &MobiusMap) -> Result<SymmetricState> {
    apply_local(state, &map.matrix())
}

/// Splits `M ∝ U · (Az + B)` into a unitary and an affine map.
pub fn decompose_slocc(map: &MobiusMap) -> (Mat2, AffinePart) {
    let MobiusMap { a, b, c, d } = *map;
    let lambda = (a.norm_sqr() + c.norm_sqr()).sqrt();
    let (alpha, beta) = (a / lambda, c / lambda);
    let l2 = lambda * lambda;
    let shift = if a.norm() >= c.norm() {
        (b * l2 + c.conj()) / a
    } else {
        (d * l2 - a.conj()) / c
    };
    let u = [[alpha, -beta.conj()], [beta, alpha.conj()]];
    (u, AffinePart { a: l2, b: shift })
}

/// Coefficient-wise complex conjugation, reflecting the Majorana points
/// through the X–Z plane.
pub fn conjugate_state(state: &SymmetricState) -> SymmetricState {
    SymmetricState::new(state.coeffs().iter().map(|z| z.conj()).collect()).expect("conjugation keeps the norm")
}

/// Diversity-4 equivalence by cross-ratios: compares the cross-ratio of the
/// clusters of `s1` with those of all multiplicity-respecting orderings of
/// the clusters of `s2`.
pub fn cross_ratio_equivalent(s1: &SymmetricState, s2: &SymmetricState, tol: f64) -> Result<bool> {
    let m1 = state_to_mps(s1, DEFAULT_CLUSTER_TOL)?;
    let m2 = state_to_mps(s2, DEFAULT_CLUSTER_TOL)?;
    if m1.diversity() != 4 {
        return Err(Error::WrongDiversity(m1.diversity()));
    }
    if dc_class(&m1) != dc_class(&m2) {
        return Ok(false);
    }
    let roots = |cl: &[Cluster], idx: &[usize]| -> Vec<ExtendedComplex> { idx.iter().map(|&i| mp_to_root(cl[i].point)).collect() };
    let r1 = roots(&m1.clusters, &[0, 1, 2, 3]);
    let l1 = cross_ratio(r1[0], r1[1], r1[2], r1[3])?;
    let mults: Vec<usize> = m1.clusters.iter().map(|c| c.multiplicity).collect();
    for t in matching_tuples(&m2.clusters, &mults) {
        let r2 = roots(&m2.clusters, &t);
        let l2 = cross_ratio(r2[0], r2[1], r2[2], r2[3])?;
        if l1.chordal(l2) <= match_tol(s1.n(), tol) {
            return Ok(true);
        }
    }
    Ok(false)
}

const SNAP: f64 = 1e-8;

/// Canonical form of a 4-qubit state with four distinct Majorana points:
/// three points are sent to the equatorial triangle at `φ = 0, 2π/3, 4π/3`
/// and the fourth is moved into the fundamental region of the triangle's
/// symmetry group. Returns `t = e^{iφ} tan(θ/2)` of the fourth point and the
/// representative `2S_0 + tS_1 + S_3 + 2tS_4`.
pub fn canonical_rep_4q(state: &SymmetricState) -> Result<(Complex64, SymmetricState)> {
    if state.n() != 4 {
        return Err(Error::InvalidParameter(format!("need 4 qubits, got {}", state.n())));
    }
    let mps = state_to_mps(state, DEFAULT_CLUSTER_TOL)?;
    if mps.diversity() != 4 {
        return Err(Error::WrongDiversity(mps.diversity()));
    }
    let cl = &mps.clusters;
    let triangle = point_triple([
        BlochPoint::new(FRAC_PI_2, 0.0),
        BlochPoint::new(FRAC_PI_2, TAU / 3.0),
        BlochPoint::new(FRAC_PI_2, 2.0 * TAU / 3.0),
    ]);
    let map = mobius_from_triples(point_triple([cl[0].point, cl[1].point, cl[2].point]), triangle)?;
    let p = map.apply_point(cl[3].point);
    let (theta, phi) = fundamental_image(p.theta, p.phi);
    let t = Complex64::from_polar((theta / 2.0).tan(), phi);
    Ok((t, rep_state_4q(t)))
}

/// `2S_0 + tS_1 + S_3 + 2tS_4`, normalised.
pub fn rep_state_4q(t: Complex64) -> SymmetricState {
    SymmetricState::new(vec![cx(2.0, 0.0), t, cx(0.0, 0.0), cx(1.0, 0.0), t * 2.0]).expect("nonzero")
}

fn in_region(theta: f64, phi: f64) -> bool {
    (theta < FRAC_PI_2 && phi < TAU / 3.0) || (theta == FRAC_PI_2 && phi <= PI / 3.0 + SNAP)
}

fn snap_angles(theta: f64, phi: f64) -> (f64, f64) {
    let theta = if (theta - FRAC_PI_2).abs() <= SNAP { FRAC_PI_2 } else { theta };
    let mut phi = phi.rem_euclid(TAU);
    for k in 0..3 {
        let edge = k as f64 * TAU / 3.0;
        if (phi - edge).abs() <= SNAP {
            phi = edge;
        }
    }
    if TAU - phi <= SNAP {
        phi = 0.0;
    }
    if theta <= SNAP {
        phi = 0.0;
    }
    (theta, phi)
}

/// Image of `(θ, φ)` under the dihedral group of the equatorial triangle
/// that lies in `[0, π/2) × [0, 2π/3) ∪ {π/2} × [0, π/3]`.
fn fundamental_image(theta: f64, phi: f64) -> (f64, f64) {
    let mut best: Option<(f64, f64)> = None;
    for flip in [false, true] {
        let (t0, p0) = if flip { (PI - theta, -phi) } else { (theta, phi) };
        for k in 0..3 {
            let (t, p) = snap_angles(t0, p0 + k as f64 * TAU / 3.0);
            if in_region(t, p) {
                let better = match best {
                    None => true,
                    Some((bt, bp)) => (t, p) < (bt, bp),
                };
                if better {
                    best = Some((t, p));
                }
            }
        }
    }
    best.expect("the dihedral images cover the fundamental region")
}

/// Representative `(x³ + y³)(x + y)(x + ty)` of the 5-qubit states with one
/// twofold Majorana degeneracy, for `|t| < 1`, or `|t| = 1` with
/// `arg t ∈ [0, π]`.
pub fn rep_state_5q(t: Complex64) -> Result<SymmetricState> {
    let r = t.norm();
    let on_circle = (r - 1.0).abs() <= 1e-12;
    let arg_ok = t.im >= -1e-12;
    if !(r < 1.0 - 1e-12 || on_circle && arg_ok) {
        return Err(Error::OutOfRange(format!("t = {t} outside the parameter range")));
    }
    let s10 = 10f64.sqrt();
    let s2 = 2f64.sqrt();
    let one = cx(1.0, 0.0);
    SymmetricState::new(vec![
        one * s10,
        (one + t) * s2,
        t,
        one,
        (one + t) * s2,
        t * s10,
    ])
}

/// Majorana roots of a state as extended complex numbers.
pub fn state_roots(state: &SymmetricState) -> Result<Vec<ExtendedComplex>> {
    Ok(state_to_mps(state, 0.0)?.points.into_iter().map(mp_to_root).collect())
}

/// Majorana point of a root, re-exported for callers working with roots.
pub fn root_point(z: ExtendedComplex) -> BlochPoint {
    root_to_mp(z)
}
