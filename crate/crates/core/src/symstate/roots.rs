//! Roots of the Majorana polynomial on the Riemann sphere.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{ExtendedComplex, MajoranaPolynomial};
use crate::error::{Error, Result};

const COMPANION_MAX_DEGREE: usize = 30;
const RESIDUAL_TOL: f64 = 1e-8;
const GROUP_RADIUS: f64 = 0.1;
const MULTIPLE_ROOT_TOL: f64 = 1e-11;

/// All `n` roots of the Majorana polynomial, with `n - degree` roots at
/// infinity and exact zeros for vanishing low-order coefficients.
pub fn polynomial_roots(poly: &MajoranaPolynomial) -> Result<Vec<ExtendedComplex>> {
    let n = poly.n;
    let d = poly.degree;
    let l = poly.low_order().min(d);
    let mut out = Vec::with_capacity(n);
    out.extend(std::iter::repeat(ExtendedComplex::Infinity).take(n - d));
    out.extend(std::iter::repeat(ExtendedComplex::finite(0.0, 0.0)).take(l));
    let q: Vec<Complex64> = poly.coeffs[l..=d].to_vec();
    if q.len() > 1 {
        let approx = if q.len() - 1 <= COMPANION_MAX_DEGREE {
            companion_roots(&q).unwrap_or_else(|| aberth(&q))
        } else {
            aberth(&q)
        };
        for z in refine(&q, approx)? {
            out.push(ExtendedComplex::Finite(z));
        }
    }
    Ok(out)
}

fn companion_roots(q: &[Complex64]) -> Option<Vec<Complex64>> {
    let m = q.len() - 1;
    let lead = q[m];
    let mut c = DMatrix::<Complex64>::zeros(m, m);
    for i in 1..m {
        c[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..m {
        c[(i, m - 1)] = -q[i] / lead;
    }
    let schur = nalgebra::linalg::Schur::try_new(c, 1e-15, 10_000)?;
    let ev = schur.eigenvalues()?;
    let roots: Vec<Complex64> = ev.iter().copied().collect();
    roots
        .iter()
        .all(|z| z.re.is_finite() && z.im.is_finite())
        .then_some(roots)
}

/// Aberth–Ehrlich iteration; Newton ratios are evaluated in the reversed
/// polynomial outside the unit disc so that nothing overflows.
fn aberth(q: &[Complex64]) -> Vec<Complex64> {
    let m = q.len() - 1;
    let lead = q[m];
    let monic: Vec<Complex64> = q.iter().map(|c| c / lead).collect();
    let reversed: Vec<Complex64> = monic.iter().rev().copied().collect();
    let d_monic = derivative(&monic);
    let d_reversed = derivative(&reversed);
    let newton = |z: Complex64| -> Complex64 {
        if z.norm() <= 1.0 {
            horner(&monic, z) / horner(&d_monic, z)
        } else {
            let w = 1.0 / z;
            let r = horner(&reversed, w);
            let dr = horner(&d_reversed, w);
            z * r / (m as f64 * r - w * dr)
        }
    };
    let radius = monic[..m]
        .iter()
        .enumerate()
        .map(|(k, c)| c.norm().powf(1.0 / (m - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..m)
        .map(|k| Complex64::from_polar(radius, (k as f64 + seed.arg()) * std::f64::consts::TAU / m as f64))
        .collect();
    for _ in 0..2000 {
        let mut change: f64 = 0.0;
        for i in 0..m {
            let ratio = newton(z[i]);
            if !ratio.re.is_finite() || !ratio.im.is_finite() {
                continue;
            }
            let repulsion: Complex64 = (0..m).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                change = change.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if change < 1e-15 {
            break;
        }
    }
    z
}

fn derivative(q: &[Complex64]) -> Vec<Complex64> {
    (1..q.len()).map(|k| q[k] * k as f64).collect()
}

fn horner(q: &[Complex64], z: Complex64) -> Complex64 {
    q.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Chart of the sphere used for a root: the polynomial itself inside the
/// unit disc, the reversed polynomial in `w = 1/z` outside.
struct Chart {
    coeffs: Vec<Complex64>,
    inverted: bool,
}

impl Chart {
    fn for_root(q: &[Complex64], z: Complex64) -> Chart {
        if z.norm() <= 1.0 {
            Chart { coeffs: q.to_vec(), inverted: false }
        } else {
            Chart { coeffs: q.iter().rev().copied().collect(), inverted: true }
        }
    }

    fn to_local(&self, z: Complex64) -> Complex64 {
        if self.inverted {
            1.0 / z
        } else {
            z
        }
    }

    fn to_global(&self, x: Complex64) -> Complex64 {
        if self.inverted {
            1.0 / x
        } else {
            x
        }
    }

    /// `j`-th derivative at `x` divided by `j!`, and the matching sum of
    /// absolute terms.
    fn taylor(&self, j: usize, x: Complex64) -> (Complex64, f64) {
        let m = self.coeffs.len() - 1;
        let mut val = Complex64::new(0.0, 0.0);
        let mut abs = 0.0;
        let ax = x.norm();
        for i in (j..=m).rev() {
            let w = super::binom(i, j);
            val = val * x + self.coeffs[i] * w;
            abs = abs * ax + self.coeffs[i].norm() * w;
        }
        (val, abs)
    }

    fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

fn refine(q: &[Complex64], approx: Vec<Complex64>) -> Result<Vec<Complex64>> {
    let m = approx.len();
    let ext: Vec<ExtendedComplex> = approx.iter().map(|&z| ExtendedComplex::Finite(z)).collect();
    let mut group = vec![usize::MAX; m];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..m {
        if group[i] != usize::MAX {
            continue;
        }
        let g = groups.len();
        group[i] = g;
        let mut members = vec![i];
        let mut head = 0;
        while head < members.len() {
            let a = members[head];
            head += 1;
            for b in 0..m {
                if group[b] == usize::MAX && ext[a].chordal(ext[b]) < GROUP_RADIUS {
                    group[b] = g;
                    members.push(b);
                }
            }
        }
        groups.push(members);
    }

    let mut out = vec![Complex64::new(0.0, 0.0); m];
    for members in groups {
        let mut rest = members;
        // peel off the largest subsets that pass the multiple-root test
        let mut k = rest.len();
        while k >= 2 && rest.len() >= 2 {
            let mut found = None;
            for &seed in &rest {
                let mut near = rest.clone();
                near.sort_by(|&a, &b| {
                    ext[a].chordal(ext[seed]).total_cmp(&ext[b].chordal(ext[seed])).then(a.cmp(&b))
                });
                near.truncate(k);
                let zs: Vec<Complex64> = near.iter().map(|&i| approx[i]).collect();
                if let Some(z) = multiple_root(q, &zs) {
                    found = Some((near, z));
                    break;
                }
            }
            match found {
                Some((near, z)) => {
                    for &i in &near {
                        out[i] = z;
                    }
                    rest.retain(|i| !near.contains(i));
                    k = k.min(rest.len());
                }
                None => k -= 1,
            }
        }
        for &i in &rest {
            out[i] = polish(q, approx[i])?;
        }
    }
    Ok(out)
}

/// Newton iteration on the polynomial in the chart of the root.
fn polish(q: &[Complex64], z0: Complex64) -> Result<Complex64> {
    let chart = Chart::for_root(q, z0);
    let scale = chart.scale();
    let mut x = chart.to_local(z0);
    let mut best = (chart.taylor(0, x).0.norm(), x);
    for _ in 0..40 {
        let (p, _) = chart.taylor(0, x);
        let (dp, _) = chart.taylor(1, x);
        if dp.norm() == 0.0 || p.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        x -= step;
        let r = chart.taylor(0, x).0.norm();
        if r < best.0 {
            best = (r, x);
        }
        if step.norm() <= 1e-17 * (1.0 + x.norm()) {
            break;
        }
    }
    let residual = best.0 / scale;
    if !(residual <= RESIDUAL_TOL) {
        return Err(Error::RootFindingFailed { residual });
    }
    Ok(chart.to_global(best.1))
}

/// Tests whether a group of nearby approximate roots is one multiple root and
/// returns its refined location.
fn multiple_root(q: &[Complex64], zs: &[Complex64]) -> Option<Complex64> {
    let k = zs.len();
    let centre = zs.iter().sum::<Complex64>() / k as f64;
    let chart = Chart::for_root(q, centre);
    let mut x = zs.iter().map(|&z| chart.to_local(z)).sum::<Complex64>() / k as f64;
    for _ in 0..40 {
        let (p, _) = chart.taylor(k - 1, x);
        let (dp, _) = chart.taylor(k, x);
        if dp.norm() == 0.0 || p.norm() == 0.0 {
            break;
        }
        let step = p / (dp * k as f64);
        x -= step;
        if step.norm() <= 1e-17 * (1.0 + x.norm()) {
            break;
        }
    }
    for j in 0..k {
        let (v, abs) = chart.taylor(j, x);
        if abs > 0.0 && v.norm() > MULTIPLE_ROOT_TOL * abs {
            return None;
        }
    }
    let z = chart.to_global(x);
    (z.re.is_finite() && z.im.is_finite()).then_some(z)
}
