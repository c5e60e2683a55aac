//! Small derivative-free optimisers shared by the search routines.

/// Outcome of a Nelder–Mead run.
#[derive(Debug, Clone)]
pub struct Simplex {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub evaluations: usize,
}

/// Minimises `f` with the Nelder–Mead simplex method.
///
/// Stops when every vertex lies within `xtol` of the best one, when the
/// spread of function values drops below `ftol`, or after `max_iter`
/// iterations.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], step: &[f64], xtol: f64, ftol: f64, max_iter: usize) -> Simplex
where
    F: FnMut(&[f64]) -> f64,
{
    let d = x0.len();
    let mut evals = 0;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(d + 1);
    pts.push(x0.to_vec());
    for i in 0..d {
        let mut p = x0.to_vec();
        p[i] += step[i];
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| eval(p, &mut evals)).collect();
    let mut iter = 0;
    while iter < max_iter {
        iter += 1;
        let mut order: Vec<usize> = (0..=d).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.iter().map(|&i| pts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        let diameter = pts[1..]
            .iter()
            .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if diameter <= xtol || (vals[d] - vals[0]).abs() <= ftol {
            break;
        }

        let mut centroid = vec![0.0; d];
        for p in &pts[..d] {
            for (c, x) in centroid.iter_mut().zip(p) {
                *c += x / d as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&pts[d])
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };
        let xr = along(-1.0);
        let fr = eval(&xr, &mut evals);
        if fr < vals[0] {
            let xe = along(-2.0);
            let fe = eval(&xe, &mut evals);
            if fe < fr {
                pts[d] = xe;
                vals[d] = fe;
            } else {
                pts[d] = xr;
                vals[d] = fr;
            }
            continue;
        }
        if fr < vals[d - 1] {
            pts[d] = xr;
            vals[d] = fr;
            continue;
        }
        let (xc, fc) = if fr < vals[d] {
            let xc = along(-0.5);
            let fc = eval(&xc, &mut evals);
            (xc, fc)
        } else {
            let xc = along(0.5);
            let fc = eval(&xc, &mut evals);
            (xc, fc)
        };
        if fc < vals[d].min(fr) {
            pts[d] = xc;
            vals[d] = fc;
            continue;
        }
        for i in 1..=d {
            let shrunk: Vec<f64> = pts[i].iter().zip(&pts[0]).map(|(x, b)| b + 0.5 * (x - b)).collect();
            vals[i] = eval(&shrunk, &mut evals);
            pts[i] = shrunk;
        }
    }
    let best = (0..=d).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap();
    Simplex {
        x: pts[best].clone(),
        f: vals[best],
        iterations: iter,
        evaluations: evals,
    }
}

/// Golden-section minimisation of a unimodal function on `[a, b]`.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Local minima of `f` on `[a, b]` found by scanning `samples` equidistant
/// points and refining each bracket by golden section.
pub fn scan_minima<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, samples: usize, tol: f64) -> Vec<(f64, f64)> {
    let h = (b - a) / samples as f64;
    let xs: Vec<f64> = (0..=samples).map(|i| a + h * i as f64).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut out = Vec::new();
    for i in 0..=samples {
        let left = if i > 0 { vs[i - 1] } else { f64::INFINITY };
        let right = if i < samples { vs[i + 1] } else { f64::INFINITY };
        if vs[i] <= left && vs[i] < right || vs[i] < left && vs[i] <= right {
            let lo = if i > 0 { xs[i - 1] } else { xs[i] };
            let hi = if i < samples { xs[i + 1] } else { xs[i] };
            let (x, v) = golden_min(&mut f, lo, hi, tol);
            let (x, v) = if v <= vs[i] { (x, v) } else { (xs[i], vs[i]) };
            out.push((x, v));
        }
    }
    out
}

/// Sequential linear programming for `max_x min_i f_i(x)`.
///
/// `eval` returns the values of the terms that may become the minimum near
/// `x` together with their gradients; the smallest returned value must be
/// the true minimum. Each step maximises the linearised minimum inside the
/// box `|δ_j| ≤ Δ` and `retract` maps the trial point back to the feasible
/// manifold. The box grows after a successful step and shrinks after a
/// failed one; iteration stops once it falls below `min_delta`.
pub fn slp_maximin<E, R>(
    x0: Vec<f64>,
    mut eval: E,
    mut retract: R,
    delta0: f64,
    min_delta: f64,
    max_iter: usize,
) -> (Vec<f64>, f64)
where
    E: FnMut(&[f64]) -> (Vec<f64>, Vec<Vec<f64>>),
    R: FnMut(&mut Vec<f64>),
{
    use microlp::{ComparisonOp, OptimizationDirection, Problem};

    let mut x = x0;
    retract(&mut x);
    let (mut vals, mut grads) = eval(&x);
    let mut best = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let mut delta = delta0;
    for _ in 0..max_iter {
        if delta < min_delta {
            break;
        }
        let d = x.len();
        let mut lp = Problem::new(OptimizationDirection::Maximize);
        let steps: Vec<_> = (0..d).map(|_| lp.add_var(0.0, (-delta, delta))).collect();
        let t = lp.add_var(1.0, (f64::NEG_INFINITY, f64::INFINITY));
        for (v, g) in vals.iter().zip(&grads) {
            // v - best + g·δ ≥ t  (shifted so the optimum is the gain)
            let mut terms: Vec<_> = steps.iter().zip(g).map(|(&s, &gj)| (s, gj)).collect();
            terms.push((t, -1.0));
            lp.add_constraint(terms.as_slice(), ComparisonOp::Ge, best - v);
        }
        let sol = match lp.solve().ok().and_then(|o| o.into_solution().ok()) {
            Some(sol) => sol,
            None => {
                delta *= 0.25;
                continue;
            }
        };
        let gain = sol.var_value(t);
        if !(gain > 0.0) {
            break;
        }
        let mut trial: Vec<f64> = x.iter().zip(&steps).map(|(xi, &s)| xi + sol.var_value(s)).collect();
        retract(&mut trial);
        let (tv, tg) = eval(&trial);
        let value = tv.iter().copied().fold(f64::INFINITY, f64::min);
        if value > best {
            x = trial;
            vals = tv;
            grads = tg;
            let improved = value - best;
            best = value;
            if improved > 0.5 * gain {
                delta *= 2.0;
            }
            if improved <= 1e-15 * best.abs().max(1.0) {
                break;
            }
        } else {
            delta *= 0.25;
        }
    }
    (x, best)
}
