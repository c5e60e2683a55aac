//! Search for maximally entangled symmetric states: minimise the largest
//! spherical amplitude over a parametrised family of states.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometric::{dicke_entanglement, find_cpps, local_maxima, product_state_coeffs, CppReport, DEFAULT_REFINE_TOL};
use crate::optim::{golden_min, nelder_mead, scan_minima, slp_maximin};
use crate::symstate::{sqrt_binomials, BlochPoint, SymmetricState};

/// Grid spacing of the sphere scan while searching.
pub const SEARCH_GRID_DEG: f64 = 2.0;
/// Grid spacing of the final CPP analysis.
pub const FINAL_GRID_DEG: f64 = 0.5;
pub const DEFAULT_SEARCH_RESTARTS: usize = 8;
/// Local maxima within this relative distance of `G` take part in the
/// equalisation step.
const ACTIVE_BAND: f64 = 0.05;
const MERIDIAN_SAMPLES: usize = 360;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "family")]
pub enum Family {
    /// Complex amplitudes, with one Majorana point fixed at the north pole
    /// and the remaining phase freedom removed.
    General,
    /// Real nonnegative amplitudes.
    Positive,
    /// Amplitudes supported on `l + j m` for some offset `l`.
    Rotational { m: usize },
    /// Real nonnegative superpositions of `S_{k1}` and `S_{k2}`.
    TwoDicke { k1: usize, k2: usize },
}

impl Family {
    /// Parses `general`, `positive`, `rotational:M` or `two-dicke:K1,K2`.
    pub fn parse(s: &str) -> Result<Family> {
        let bad = || Error::InvalidParameter(format!("unknown family '{s}'"));
        let (head, tail) = match s.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        match (head, tail) {
            ("general", None) => Ok(Family::General),
            ("positive", None) => Ok(Family::Positive),
            ("rotational", Some(m)) => Ok(Family::Rotational { m: m.trim().parse().map_err(|_| bad())? }),
            ("two-dicke", Some(ks)) => {
                let (a, b) = ks.split_once(',').ok_or_else(bad)?;
                Ok(Family::TwoDicke {
                    k1: a.trim().parse().map_err(|_| bad())?,
                    k2: b.trim().parse().map_err(|_| bad())?,
                })
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchAnsatz {
    pub family: Family,
    pub n: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl SearchAnsatz {
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if n < 2 {
            return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
        }
        match self.family {
            Family::Rotational { m } if !(2..=n).contains(&m) => {
                Err(Error::InvalidParameter(format!("rotational order {m} outside [2, {n}]")))
            }
            Family::TwoDicke { k1, k2 } if k1 == k2 || k1 > n || k2 > n => {
                Err(Error::InvalidParameter(format!("two-dicke indices ({k1}, {k2}) must be distinct in [0, {n}]")))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchStats {
    pub restarts: usize,
    pub best_restart: usize,
    pub evaluations: usize,
    /// The result is `S_{⌊n/2⌋}` because no restart did better.
    pub dicke_fallback: bool,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub state: SymmetricState,
    pub report: CppReport,
    pub stats: SearchStats,
}

/// Linear map from a real parameter vector to Dicke amplitudes; entry `i`
/// adds `x_i` (or `i x_i` when `imag`) to amplitude `k`.
#[derive(Debug, Clone)]
struct Param {
    n: usize,
    slots: Vec<(usize, bool)>,
    /// Amplitudes are `|x_i|`; the maximum then lies on the `φ = 0`
    /// meridian.
    positive: bool,
}

impl Param {
    fn for_family(family: Family, n: usize, offset: usize) -> Param {
        let mut slots = Vec::new();
        match family {
            Family::General => {
                slots.push((0, false));
                if n >= 2 {
                    slots.push((1, false));
                }
                for k in 2..n {
                    slots.push((k, false));
                    slots.push((k, true));
                }
            }
            Family::Positive => slots.extend((0..=n).map(|k| (k, false))),
            Family::Rotational { m } => {
                for (j, k) in (offset..=n).step_by(m).enumerate() {
                    slots.push((k, false));
                    if j >= 2 {
                        slots.push((k, true));
                    }
                }
            }
            Family::TwoDicke { k1, k2 } => slots.extend([(k1, false), (k2, false)]),
        }
        let positive = matches!(family, Family::Positive | Family::TwoDicke { .. });
        Param { n, slots, positive }
    }

    fn coeffs(&self, x: &[f64]) -> Vec<Complex64> {
        let mut a = vec![Complex64::new(0.0, 0.0); self.n + 1];
        for (&(k, imag), &xi) in self.slots.iter().zip(x) {
            let v = if self.positive { xi.abs() } else { xi };
            if imag {
                a[k].im += v;
            } else {
                a[k].re += v;
            }
        }
        a
    }

    fn state(&self, x: &[f64]) -> Result<SymmetricState> {
        SymmetricState::new(self.coeffs(x))
    }

    /// Local maxima of `g` with their parameter gradients.
    fn maxima(&self, x: &[f64], grid_deg: f64) -> Option<Vec<(BlochPoint, f64)>> {
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm > 1e-300) {
            return None;
        }
        if self.positive {
            let a: Vec<f64> = self.coeffs(x).iter().map(|c| c.re / norm).collect();
            Some(meridian_maxima(&a))
        } else {
            let state = self.state(x).ok()?;
            Some(local_maxima(&state, grid_deg, 1e-10, Some(2.0 * ACTIVE_BAND)))
        }
    }

    fn g_max(&self, x: &[f64], grid_deg: f64) -> f64 {
        match self.maxima(x, grid_deg) {
            Some(m) => m.iter().map(|m| m.1).fold(0.0, f64::max),
            None => f64::INFINITY,
        }
    }

    /// Gradient of `g(p) = |<ψ(x)|σ_p^{⊗n}>|` in `x` at a fixed point.
    fn gradient(&self, x: &[f64], p: BlochPoint) -> Vec<f64> {
        let norm2: f64 = x.iter().map(|v| v * v).sum();
        let norm = norm2.sqrt();
        let b = product_state_coeffs(self.n, p);
        let a = self.coeffs(x);
        let amp: Complex64 = a.iter().zip(&b).map(|(ak, bk)| ak.conj() * bk).sum();
        let mag = amp.norm();
        self.slots
            .iter()
            .zip(x)
            .map(|(&(k, imag), &xi)| {
                let sign = if self.positive && xi < 0.0 { -1.0 } else { 1.0 };
                let d = if imag { Complex64::new(0.0, -sign) * b[k] } else { b[k] * sign };
                let dmag = if mag > 0.0 { (amp.conj() * d).re / mag } else { 0.0 };
                dmag / norm - mag * xi / (norm2 * norm)
            })
            .collect()
    }
}

/// Local maxima of `g` along the meridian `φ = 0` for real amplitudes `a`.
fn meridian_maxima(a: &[f64]) -> Vec<(BlochPoint, f64)> {
    let n = a.len() - 1;
    let w: Vec<f64> = a.iter().zip(sqrt_binomials(n)).map(|(ak, s)| ak * s).collect();
    let g = |theta: f64| -> f64 {
        let (s, c) = (theta / 2.0).sin_cos();
        // Horner in tan(θ/2) or cot(θ/2), whichever is bounded
        let v = if c.abs() >= s.abs() {
            let r = s / c;
            w.iter().rev().fold(0.0, |acc, &wk| acc * r + wk) * c.powi(n as i32)
        } else {
            let r = c / s;
            w.iter().fold(0.0, |acc, &wk| acc * r + wk) * s.powi(n as i32)
        };
        v.abs()
    };
    scan_minima(|t| -g(t), 0.0, PI, MERIDIAN_SAMPLES, 1e-12)
        .into_iter()
        .map(|(t, v)| (BlochPoint::new(t, 0.0), -v))
        .collect()
}

fn random_start(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// Nelder–Mead on `G`, restarted from its own output until it stops
/// improving.
fn minimise_g(param: &Param, x0: Vec<f64>, evaluations: &mut usize) -> Vec<f64> {
    let d = x0.len();
    let mut x = x0;
    let mut best = f64::INFINITY;
    for round in 0..6 {
        let scale = x.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-3);
        let step = vec![scale * if round == 0 { 0.3 } else { 0.05 }; d];
        let res = nelder_mead(
            |y| param.g_max(y, SEARCH_GRID_DEG),
            &x,
            &step,
            1e-9 * scale,
            1e-14,
            400 * d,
        );
        *evaluations += res.evaluations;
        let improved = res.f < best * (1.0 - 1e-12);
        x = res.x;
        best = best.min(res.f);
        if !improved {
            break;
        }
    }
    x
}

/// Equalises the near-maximal local maxima by sequential linear
/// programming on `max_x min_i (-g_i(x))`.
fn equalise(param: &Param, x0: Vec<f64>, grid_deg: f64, evaluations: &mut usize) -> Vec<f64> {
    let count = std::cell::Cell::new(0usize);
    let eval = |x: &[f64]| -> (Vec<f64>, Vec<Vec<f64>>) {
        count.set(count.get() + 1);
        let Some(maxima) = param.maxima(x, grid_deg) else {
            return (vec![f64::NEG_INFINITY], vec![vec![0.0; x.len()]]);
        };
        let g_max = maxima.iter().map(|m| m.1).fold(0.0, f64::max);
        let mut vals = Vec::new();
        let mut grads = Vec::new();
        for (p, g) in maxima {
            if g >= g_max * (1.0 - ACTIVE_BAND) {
                vals.push(-g);
                grads.push(param.gradient(x, p).iter().map(|v| -v).collect());
            }
        }
        (vals, grads)
    };
    let retract = |x: &mut Vec<f64>| {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if r > 0.0 {
            x.iter_mut().for_each(|v| *v /= r);
        }
    };
    let (x, _) = slp_maximin(x0, eval, retract, 1e-2, 1e-14, 500);
    *evaluations += count.get();
    x
}

fn run_restart(param: &Param, rng: &mut ChaCha8Rng) -> (f64, Vec<f64>, usize) {
    let mut evaluations = 0;
    let x = random_start(rng, param.slots.len());
    let x = minimise_g(param, x, &mut evaluations);
    let x = equalise(param, x, SEARCH_GRID_DEG, &mut evaluations);
    (param.g_max(&x, SEARCH_GRID_DEG), x, evaluations)
}

fn finish(param: &Param, x: &[f64], stats: SearchStats) -> Result<SearchResult> {
    let state = param.state(x)?;
    let report = find_cpps(&state, FINAL_GRID_DEG, DEFAULT_REFINE_TOL);
    Ok(SearchResult { state, report, stats })
}

/// Multistart minimisation of `G` over the ansatz family.
pub fn search_max_entangled(ansatz: &SearchAnsatz) -> Result<SearchResult> {
    ansatz.validate()?;
    if let Family::TwoDicke { k1, k2 } = ansatz.family {
        return two_dicke_optimum(ansatz.n, k1.min(k2), k1.max(k2));
    }
    let n = ansatz.n;
    let restarts = ansatz.restarts.max(1);
    let offsets = match ansatz.family {
        Family::Rotational { m } => m,
        _ => 1,
    };
    let runs: Vec<(f64, Vec<f64>, usize, usize)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(ansatz.seed);
            rng.set_stream(r as u64);
            let offset = r % offsets;
            let param = Param::for_family(ansatz.family, n, offset);
            let (g, x, evals) = run_restart(&param, &mut rng);
            (g, x, evals, offset)
        })
        .collect();
    let evaluations = runs.iter().map(|r| r.2).sum();
    let best_restart = (0..runs.len())
        .min_by(|&a, &b| runs[a].0.total_cmp(&runs[b].0).then(a.cmp(&b)))
        .unwrap();
    let (g, x, _, offset) = &runs[best_restart];
    // every family contains S_{⌊n/2⌋}; fall back to it if no restart beats it
    let k = n / 2;
    let g_dicke = 2f64.powf(-dicke_entanglement(n, k) / 2.0);
    let mut stats = SearchStats { restarts, best_restart, evaluations, dicke_fallback: false };
    if *g > g_dicke * (1.0 + 1e-12) {
        stats.dicke_fallback = true;
        let offset = match ansatz.family {
            Family::Rotational { m } => k % m,
            _ => 0,
        };
        let param = Param::for_family(ansatz.family, n, offset);
        let x: Vec<f64> = param.slots.iter().map(|&s| if s == (k, false) { 1.0 } else { 0.0 }).collect();
        return finish(&param, &x, stats);
    }
    let param = Param::for_family(ansatz.family, n, *offset);
    finish(&param, x, stats)
}

/// Best mixing weight of `cos t S_{k1} + sin t S_{k2}`, `t ∈ [0, π/2]`.
pub fn two_dicke_optimum(n: usize, k1: usize, k2: usize) -> Result<SearchResult> {
    if !(k1 < k2 && k2 <= n) {
        return Err(Error::InvalidParameter(format!("need 0 <= k1 < k2 <= n, got ({k1}, {k2}, {n})")));
    }
    let param = Param::for_family(Family::TwoDicke { k1, k2 }, n, 0);
    let xt = |t: f64| [t.cos(), t.sin()];
    let mut evaluations = 0;
    let mut g = |t: f64| {
        evaluations += 1;
        param.g_max(&xt(t), SEARCH_GRID_DEG)
    };
    let samples = 2000;
    let h = PI / 2.0 / samples as f64;
    let vals: Vec<f64> = (0..=samples).map(|i| g(i as f64 * h)).collect();
    let i = (0..=samples).min_by(|&a, &b| vals[a].total_cmp(&vals[b]).then(a.cmp(&b))).unwrap();
    let lo = (i.max(1) - 1) as f64 * h;
    let hi = (i + 1).min(samples) as f64 * h;
    let (t, v) = golden_min(&mut g, lo, hi, 1e-13);
    let t = if v <= vals[i] { t } else { i as f64 * h };
    finish(&param, &xt(t), SearchStats { restarts: 1, best_restart: 0, evaluations, dicke_fallback: false })
}
