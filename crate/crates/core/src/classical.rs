//! Classical point distributions on the sphere: the Thomson problem
//! (minimal Coulomb energy) and the Tóth problem (maximal minimum distance).

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optim::slp_maximin;
use crate::symstate::{state_from_mps, BlochPoint, SymmetricState};

pub const DEFAULT_RESTARTS: usize = 50;
const COINCIDENT: f64 = 1e-12;
const GRADIENT_TOL: f64 = 1e-10;
const MAX_DESCENT_ITER: usize = 200_000;
const RIESZ_EXPONENTS: [f64; 5] = [2.0, 4.0, 8.0, 16.0, 32.0];

/// `n` unit vectors in R³.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    pub points: Vec<[f64; 3]>,
}

impl PointSet {
    /// Normalises every vector; fails for fewer than two points or a zero
    /// vector.
    pub fn new(points: Vec<[f64; 3]>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidParameter(format!("need at least 2 points, got {}", points.len())));
        }
        let mut out = Vec::with_capacity(points.len());
        for p in points {
            let r = norm(p);
            if !(r > 0.0) || !r.is_finite() {
                return Err(Error::InvalidParameter(format!("cannot normalise {p:?}")));
            }
            out.push([p[0] / r, p[1] / r, p[2] / r]);
        }
        Ok(PointSet { points: out })
    }

    pub fn from_bloch(points: &[BlochPoint]) -> Result<Self> {
        Self::new(points.iter().map(|p| p.to_vector()).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn bloch_points(&self) -> Vec<BlochPoint> {
        self.points.iter().map(|&v| BlochPoint::from_vector(v)).collect()
    }

    /// Applies a 3×3 rotation matrix to every point.
    pub fn rotated(&self, r: &[[f64; 3]; 3]) -> PointSet {
        let points = self
            .points
            .iter()
            .map(|p| {
                let mut q = [0.0; 3];
                for i in 0..3 {
                    q[i] = r[i][0] * p[0] + r[i][1] * p[1] + r[i][2] * p[2];
                }
                q
            })
            .collect();
        PointSet { points }
    }
}

fn norm(p: [f64; 3]) -> f64 {
    (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Coulomb energy `Σ_{i<j} 1/|r_i − r_j|`.
pub fn thomson_energy(ps: &PointSet) -> Result<f64> {
    let p = &ps.points;
    let mut e = 0.0;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            let d = norm(sub(p[i], p[j]));
            if d <= COINCIDENT {
                return Err(Error::CoincidentPoints(i, j));
            }
            e += 1.0 / d;
        }
    }
    Ok(e)
}

/// Smallest pairwise chord length.
pub fn toth_objective(ps: &PointSet) -> f64 {
    let p = &ps.points;
    let mut best = f64::INFINITY;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            best = best.min(norm(sub(p[i], p[j])));
        }
    }
    best
}

/// Sorted pairwise chord lengths, a rotation-free fingerprint of a point
/// set.
pub fn distance_multiset(ps: &PointSet) -> Vec<f64> {
    let p = &ps.points;
    let mut out = Vec::with_capacity(p.len() * (p.len() - 1) / 2);
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            out.push(norm(sub(p[i], p[j])));
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// True when the two sets have the same pairwise distance multiset within
/// `tol`, i.e. they agree up to an isometry for the configurations of
/// interest here.
pub fn same_structure(a: &PointSet, b: &PointSet, tol: f64) -> bool {
    a.len() == b.len()
        && distance_multiset(a)
            .iter()
            .zip(distance_multiset(b))
            .all(|(x, y)| (x - y).abs() <= tol)
}

/// Interprets every vector as a Majorana point.
pub fn pointset_to_state(ps: &PointSet) -> Result<SymmetricState> {
    state_from_mps(&ps.bloch_points())
}

/// Outcome of one projected-gradient descent.
#[derive(Debug, Clone)]
pub struct Descent {
    pub points: PointSet,
    /// Objective value after every accepted step, starting with the initial
    /// value.
    pub values: Vec<f64>,
    pub gradient_norm: f64,
}

/// Objective with per-point gradients.
type Objective = dyn Fn(&[[f64; 3]]) -> (f64, Vec<[f64; 3]>) + Sync;

fn coulomb(p: &[[f64; 3]]) -> (f64, Vec<[f64; 3]>) {
    let n = p.len();
    let mut e = 0.0;
    let mut g = vec![[0.0; 3]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = sub(p[i], p[j]);
            let r = norm(d).max(COINCIDENT);
            e += 1.0 / r;
            let f = 1.0 / (r * r * r);
            for a in 0..3 {
                g[i][a] -= d[a] * f;
                g[j][a] += d[a] * f;
            }
        }
    }
    (e, g)
}

/// `(1/l) log Σ |r_i − r_j|^{-l}`, a smooth stand-in for `−log min d`.
fn riesz_log(l: f64) -> impl Fn(&[[f64; 3]]) -> (f64, Vec<[f64; 3]>) + Sync {
    move |p: &[[f64; 3]]| {
        let n = p.len();
        let mut terms = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                let d = sub(p[i], p[j]);
                let r2 = dot(d, d).max(COINCIDENT * COINCIDENT);
                terms.push((i, j, d, r2, -0.5 * l * r2.ln()));
            }
        }
        let top = terms.iter().map(|t| t.4).fold(f64::NEG_INFINITY, f64::max);
        let z: f64 = terms.iter().map(|t| (t.4 - top).exp()).sum();
        let value = (top + z.ln()) / l;
        let mut g = vec![[0.0; 3]; n];
        for (i, j, d, r2, e) in terms {
            let w = (e - top).exp() / z;
            for a in 0..3 {
                g[i][a] -= w * d[a] / r2;
                g[j][a] += w * d[a] / r2;
            }
        }
        (value, g)
    }
}

fn tangential(p: &[[f64; 3]], g: &[[f64; 3]]) -> Vec<[f64; 3]> {
    p.iter()
        .zip(g)
        .map(|(r, gi)| {
            let k = dot(*r, *gi);
            [gi[0] - k * r[0], gi[1] - k * r[1], gi[2] - k * r[2]]
        })
        .collect()
}

fn grad_norm(t: &[[f64; 3]]) -> f64 {
    t.iter().map(|v| dot(*v, *v)).sum::<f64>().sqrt()
}

/// Projected gradient descent on the sphere with step halving; only steps
/// that do not increase the objective are accepted.
fn descend(start: Vec<[f64; 3]>, objective: &Objective, tol: f64, max_iter: usize) -> Descent {
    let mut p = start;
    let (mut value, g) = objective(&p);
    let mut t = tangential(&p, &g);
    let mut gn = grad_norm(&t);
    let mut values = vec![value];
    let mut step = 0.1 / (1.0 + gn);
    for _ in 0..max_iter {
        if gn < tol {
            break;
        }
        // Barzilai-Borwein proposal, halved until the value does not increase
        let mut h = step;
        let mut accepted = None;
        while h > 1e-18 {
            let trial: Vec<[f64; 3]> = p
                .iter()
                .zip(&t)
                .map(|(r, ti)| {
                    let q = [r[0] - h * ti[0], r[1] - h * ti[1], r[2] - h * ti[2]];
                    let k = norm(q);
                    [q[0] / k, q[1] / k, q[2] / k]
                })
                .collect();
            let (tv, tg) = objective(&trial);
            // within rounding of the value, fall back on the gradient norm
            let flat = tv - value <= 8.0 * f64::EPSILON * value.abs()
                && grad_norm(&tangential(&trial, &tg)) < gn;
            if tv <= value || flat {
                accepted = Some((trial, tv, tg));
                break;
            }
            h *= 0.5;
        }
        let Some((trial, tv, tg)) = accepted else { break };
        let nt = tangential(&trial, &tg);
        let mut ss = 0.0;
        let mut sy = 0.0;
        for i in 0..p.len() {
            for k in 0..3 {
                let sk = trial[i][k] - p[i][k];
                ss += sk * sk;
                sy += sk * (nt[i][k] - t[i][k]);
            }
        }
        step = if sy > 0.0 { (ss / sy).min(1e3) } else { h * 2.0 };
        p = trial;
        value = tv;
        t = nt;
        gn = grad_norm(&t);
        values.push(value);
    }
    Descent { points: PointSet { points: p }, values, gradient_norm: gn }
}

fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<[f64; 3]> {
    (0..n)
        .map(|_| {
            let z: f64 = rng.gen_range(-1.0..1.0);
            let phi: f64 = rng.gen_range(0.0..TAU);
            let r = (1.0 - z * z).sqrt();
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// Descent on the Coulomb energy from a given configuration.
pub fn thomson_descent(start: &PointSet) -> Descent {
    descend(start.points.clone(), &coulomb, GRADIENT_TOL, MAX_DESCENT_ITER)
}

fn lexicographic(a: &PointSet, b: &PointSet) -> std::cmp::Ordering {
    for (p, q) in a.points.iter().zip(&b.points) {
        for k in 0..3 {
            let o = p[k].total_cmp(&q[k]);
            if o != std::cmp::Ordering::Equal {
                return o;
            }
        }
    }
    std::cmp::Ordering::Equal
}

/// Best of `restarts` descents of the Coulomb energy from uniform random
/// starts.
pub fn optimize_thomson(n: usize, restarts: usize, seed: u64) -> Result<PointSet> {
    check_n(n)?;
    let runs: Vec<(f64, PointSet)> = (0..restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = restart_rng(seed, r);
            let d = descend(random_points(&mut rng, n), &coulomb, GRADIENT_TOL, MAX_DESCENT_ITER);
            (*d.values.last().unwrap(), d.points)
        })
        .collect();
    Ok(pick_best(runs, |a, b| a < b))
}

fn pick_best(runs: Vec<(f64, PointSet)>, better: impl Fn(f64, f64) -> bool) -> PointSet {
    let mut best: Option<(f64, PointSet)> = None;
    for (v, ps) in runs {
        let replace = match &best {
            None => true,
            Some((bv, bp)) => better(v, *bv) || (v == *bv && lexicographic(&ps, bp).is_lt()),
        };
        if replace {
            best = Some((v, ps));
        }
    }
    best.unwrap().1
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    Ok(())
}

/// Local maximisation of the minimum chord length by sequential linear
/// programming over the near-active pairs.
pub fn maximin_polish(ps: &PointSet) -> PointSet {
    let n = ps.len();
    let x0: Vec<f64> = ps.points.iter().flat_map(|p| p.iter().copied()).collect();
    let eval = |x: &[f64]| -> (Vec<f64>, Vec<Vec<f64>>) {
        let pts: Vec<[f64; 3]> = (0..n).map(|i| [x[3 * i], x[3 * i + 1], x[3 * i + 2]]).collect();
        let mut pairs = Vec::new();
        let mut dmin = f64::INFINITY;
        for i in 0..n {
            for j in (i + 1)..n {
                let d = norm(sub(pts[i], pts[j]));
                dmin = dmin.min(d);
                pairs.push((i, j, d));
            }
        }
        let mut vals = Vec::new();
        let mut grads = Vec::new();
        for (i, j, d) in pairs {
            if d > dmin + 0.1 {
                continue;
            }
            let u = sub(pts[i], pts[j]);
            let mut g = vec![0.0; 3 * n];
            // derivative of |r_i/|r_i| − r_j/|r_j|| at unit vectors
            let gi = {
                let k = dot(pts[i], u);
                [u[0] - k * pts[i][0], u[1] - k * pts[i][1], u[2] - k * pts[i][2]]
            };
            let gj = {
                let k = dot(pts[j], u);
                [u[0] - k * pts[j][0], u[1] - k * pts[j][1], u[2] - k * pts[j][2]]
            };
            for a in 0..3 {
                g[3 * i + a] = gi[a] / d;
                g[3 * j + a] = -gj[a] / d;
            }
            vals.push(d);
            grads.push(g);
        }
        (vals, grads)
    };
    let retract = |x: &mut Vec<f64>| {
        for i in 0..n {
            let r = (x[3 * i] * x[3 * i] + x[3 * i + 1] * x[3 * i + 1] + x[3 * i + 2] * x[3 * i + 2]).sqrt();
            for a in 0..3 {
                x[3 * i + a] /= r;
            }
        }
    };
    let (x, _) = slp_maximin(x0, eval, retract, 0.02, 1e-13, 2000);
    PointSet { points: (0..n).map(|i| [x[3 * i], x[3 * i + 1], x[3 * i + 2]]).collect() }
}

/// Best of `restarts` runs of a Riesz-energy homotopy with exponents
/// `2, 4, .., 32` followed by a maximin polish.
pub fn optimize_toth(n: usize, restarts: usize, seed: u64) -> Result<PointSet> {
    check_n(n)?;
    let runs: Vec<(f64, PointSet)> = (0..restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = restart_rng(seed, r);
            let mut p = random_points(&mut rng, n);
            for l in RIESZ_EXPONENTS {
                let f = riesz_log(l);
                p = descend(p, &f, 1e-9, 20_000).points.points;
            }
            let polished = maximin_polish(&PointSet { points: p });
            (toth_objective(&polished), polished)
        })
        .collect();
    Ok(pick_best(runs, |a, b| a > b))
}

/// Vertices of the regular icosahedron with two vertices at the poles.
pub fn icosahedron_points() -> Vec<BlochPoint> {
    let t = (1.0f64 / 5f64.sqrt()).acos();
    let mut pts = vec![BlochPoint::north()];
    pts.extend((0..5).map(|k| BlochPoint::new(t, k as f64 * TAU / 5.0)));
    pts.extend((0..5).map(|k| BlochPoint::new(PI - t, (k as f64 + 0.5) * TAU / 5.0)));
    pts.push(BlochPoint::south());
    pts
}

/// The 11-point Tóth optimum: an icosahedron with one vertex removed.
pub fn toth_11() -> PointSet {
    PointSet::from_bloch(&icosahedron_points()[1..]).expect("valid points")
}
