//! Named reference states with their entanglement, CPP structure and
//! classification metadata.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometric::{amplitude, dicke_entanglement, find_cpps, local_maxima, DEFAULT_GRID_DEG, DEFAULT_REFINE_TOL};
use crate::optim::golden_min;
use crate::slocc::dc_class;
use crate::symstate::{state_from_mps, state_to_mps, BlochPoint, SymmetricState, DEFAULT_CLUSTER_TOL};

/// Relative tolerance on `g` used to count CPPs of entries whose
/// coefficients are truncated decimals.
const DECIMAL_CPP_TOL: f64 = 1e-6;

/// Which classical point-distribution problems the configuration solves.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Solves {
    pub toth: bool,
    pub thomson: bool,
    pub majorana: bool,
}

/// Entry-specific structural check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum StructureCheck {
    /// Every CPP coincides with a Majorana point.
    CppsAtMps,
    /// `x = cos²θ` of every non-polar CPP is a root of the polynomial with
    /// these coefficients (highest degree first).
    CppLatitudeRoot(Vec<f64>),
}

/// Another state shipped with an entry, with the relation it is expected
/// to satisfy.
#[derive(Debug, Clone)]
pub struct Related {
    pub name: String,
    pub state: SymmetricState,
    /// Catalog name of the state it is LU-equivalent to.
    pub lu_equivalent_to: String,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Vec<(String, f64)>,
    pub state: SymmetricState,
    /// Reference entanglement; `None` where no value is known.
    pub reference_e_g: Option<f64>,
    /// Closed form of the reference, if there is one.
    pub exact: Option<String>,
    /// Tolerance for comparing the recomputed entanglement.
    pub tol: f64,
    pub reference_cpps: String,
    /// `None` for a continuous ring or where no count is known.
    pub cpp_count: Option<usize>,
    pub positive: bool,
    /// Group under which the state is totally invariant.
    pub group: Option<String>,
    pub solves: Solves,
    pub dc_class: Option<String>,
    pub checks: Vec<StructureCheck>,
    pub related: Vec<Related>,
}

impl CatalogEntry {
    fn new(name: &str, state: SymmetricState) -> Self {
        CatalogEntry {
            name: name.to_string(),
            params: Vec::new(),
            state,
            reference_e_g: None,
            exact: None,
            tol: 1e-6,
            reference_cpps: String::new(),
            cpp_count: None,
            positive: false,
            group: None,
            solves: Solves::default(),
            dc_class: None,
            checks: Vec::new(),
            related: Vec::new(),
        }
    }

    fn exact(mut self, value: f64, expr: &str) -> Self {
        self.reference_e_g = Some(value);
        self.exact = Some(expr.to_string());
        self.tol = 1e-6;
        self
    }

    fn decimal(mut self, value: f64, tol: f64) -> Self {
        self.reference_e_g = Some(value);
        self.tol = tol;
        self
    }

    fn cpps(mut self, count: Option<usize>, description: &str) -> Self {
        self.cpp_count = count;
        self.reference_cpps = description.to_string();
        self
    }

    fn flags(mut self, positive: bool, group: Option<&str>, toth: bool, thomson: bool, majorana: bool) -> Self {
        self.positive = positive;
        self.group = group.map(str::to_string);
        self.solves = Solves { toth, thomson, majorana };
        self
    }

    fn param(mut self, key: &str, value: f64) -> Self {
        self.params.push((key.to_string(), value));
        self
    }

    fn class(mut self, partition: &[usize]) -> Self {
        let parts: Vec<String> = partition.iter().filter(|&&m| m > 0).map(|m| m.to_string()).collect();
        self.dc_class = Some(format!("D_{{{}}}", parts.join(",")));
        self
    }

    fn check(mut self, c: StructureCheck) -> Self {
        self.checks.push(c);
        self
    }

    pub fn n(&self) -> usize {
        self.state.n()
    }
}

/// Names accepted by [`named_state`]; parametric ones take arguments in
/// parentheses or through `n`.
pub const NAMES: &[&str] = &[
    "ghz(n)",
    "w(n)",
    "dicke(n,k)",
    "tetrahedron",
    "trigonal_bipyramid",
    "square_pyramid",
    "octahedron",
    "pentagonal_dipyramid_7",
    "cube",
    "asym_pentagonal_dipyramid_8",
    "antiprism_8(A)",
    "nine_max",
    "triaugmented_prism_9",
    "gyro_bipyramid_10(theta)",
    "ten_pos",
    "rot_pos_10",
    "eleven_max",
    "eleven_pos",
    "toth_11",
    "icosahedron",
    "twelve_pos",
    "dodecahedron",
    "x_state(n)",
    "cluster4_equiv_fixture",
];

/// Root of `p` (highest degree first) in `[lo, hi]` by bisection followed
/// by Newton; `p(lo)` and `p(hi)` must differ in sign.
pub fn polynomial_root(p: &[f64], lo: f64, hi: f64) -> Result<f64> {
    let eval = |x: f64| p.iter().fold(0.0, |acc, &c| acc * x + c);
    let deriv = |x: f64| {
        let m = p.len() - 1;
        p.iter().take(m).enumerate().fold(0.0, |acc, (i, &c)| acc * x + c * (m - i) as f64)
    };
    let (mut a, mut b) = (lo, hi);
    let (fa, fb) = (eval(a), eval(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::RootFindingFailed { residual: fa.abs().min(fb.abs()) });
    }
    while b - a > 1e-6 {
        let m = 0.5 * (a + b);
        if eval(m).signum() == fa.signum() {
            a = m;
        } else {
            b = m;
        }
    }
    let mut x = 0.5 * (a + b);
    for _ in 0..50 {
        let step = eval(x) / deriv(x);
        let next = (x - step).clamp(a, b);
        if (next - x).abs() <= 1e-16 * x.abs().max(1.0) {
            x = next;
            break;
        }
        x = next;
    }
    let residual = eval(x).abs();
    let scale = p.iter().map(|c| c.abs()).fold(0.0, f64::max);
    if residual > 1e-14 * scale {
        return Err(Error::RootFindingFailed { residual });
    }
    Ok(x)
}

fn real_state(coeffs: &[(usize, f64)], n: usize) -> SymmetricState {
    let mut a = vec![0.0; n + 1];
    for &(k, v) in coeffs {
        a[k] = v;
    }
    SymmetricState::from_real(&a).expect("catalog coefficients are nonzero")
}

/// `E_g` from the value of `g` on the meridian `φ = 0` at the polar angle
/// with `cos²θ = x` in the northern hemisphere.
fn e_g_at_latitude(state: &SymmetricState, x: f64) -> f64 {
    let theta = x.sqrt().acos();
    -2.0 * amplitude(state, BlochPoint::new(theta, 0.0)).log2()
}

/// Largest root in `(0, 1)` of `4x⁴ + 4x³ + 4x² − x − 1`, the latitude of
/// the nontrivial CPPs of the square pyramid state.
pub fn square_pyramid_root() -> f64 {
    polynomial_root(&[4.0, 4.0, 4.0, -1.0, -1.0], 0.0, 1.0).expect("bracketed root")
}

pub fn square_pyramid_a() -> f64 {
    let x = square_pyramid_root();
    5f64.sqrt() / (4.0 * x * (1.0 - x * x))
}

/// Real root of `x⁶ − x⁴ + 2x² − 1`, the cosine of the half-angle of the
/// nontrivial CPPs of the optimal antiprism.
pub fn antiprism_root() -> f64 {
    polynomial_root(&[1.0, -1.0, 2.0, -1.0], 0.0, 1.0).expect("bracketed root").sqrt()
}

pub fn antiprism_optimal_a() -> f64 {
    let x = antiprism_root();
    let y2 = 1.0 - x * x;
    (1.0 - x.powi(8) + y2.powi(4)) / (70f64.sqrt() * x.powi(4) * y2.powi(2))
}

fn antiprism_state(a: f64) -> SymmetricState {
    real_state(&[(0, 1.0), (4, a), (8, -1.0)], 8)
}

/// Coefficient `A` that puts the eight non-polar Majorana points at polar
/// angles `θ` and `π − θ`.
pub fn gyro_a(theta: f64) -> f64 {
    let tau = (theta / 2.0).tan().powi(4);
    10f64.sqrt() * (1.0 - tau * tau) / (tau * 252f64.sqrt())
}

fn gyro_state(theta: f64) -> SymmetricState {
    real_state(&[(1, 1.0), (5, gyro_a(theta)), (9, -1.0)], 10)
}

/// Majorana-point latitude maximising the entanglement of the
/// gyroelongated square bipyramid family, by golden section on `G`.
pub fn gyro_optimal_theta() -> f64 {
    static THETA: OnceLock<f64> = OnceLock::new();
    *THETA.get_or_init(|| {
        let g = |theta: f64| {
            local_maxima(&gyro_state(theta), DEFAULT_GRID_DEG, 1e-12, Some(0.05))
                .iter()
                .map(|m| m.1)
                .fold(0.0, f64::max)
        };
        golden_min(g, 1.0, 1.3, 1e-10).0
    })
}

fn triaugmented_a() -> f64 {
    (1.0 + 8.0 * 2f64.sqrt()) / (2.0 * 21f64.sqrt())
}

fn icosahedron_state() -> SymmetricState {
    let (s7, s11) = (7f64.sqrt() / 5.0, 11f64.sqrt() / 5.0);
    real_state(&[(1, s7), (6, -s11), (11, -s7)], 12)
}

fn dodecahedron_state() -> SymmetricState {
    let c = 1.0 / (25.0 * 3f64.sqrt());
    real_state(
        &[
            (0, 187f64.sqrt() * c),
            (5, 627f64.sqrt() * c),
            (10, 247f64.sqrt() * c),
            (15, -627f64.sqrt() * c),
            (20, 187f64.sqrt() * c),
        ],
        20,
    )
}

/// The symmetric states whose reduced density matrices are all maximally
/// mixed, each paired with the catalog state it is LU-equivalent to.
pub fn gisin_states() -> Vec<Related> {
    let i = Complex64::new(0.0, 1.0);
    let r = |x: f64| Complex64::new(x, 0.0);
    let (s2, s3, s5) = (2f64.sqrt(), 3f64.sqrt(), 5f64.sqrt());
    let mut out = Vec::new();
    let mut push = |name: &str, coeffs: Vec<Complex64>, target: &str| {
        out.push(Related {
            name: name.to_string(),
            state: SymmetricState::new(coeffs).expect("nonzero"),
            lu_equivalent_to: target.to_string(),
        });
    };
    for s in [1.0, -1.0] {
        let tag = if s > 0.0 { "+" } else { "-" };
        push(&format!("psi3{tag}1"), vec![r(1.0), r(0.0), r(0.0), r(s)], "ghz(3)");
        push(&format!("psi3{tag}2"), vec![r(1.0), r(s * s3), r(-s3), r(-s)], "ghz(3)");
    }
    for s in [1.0, -1.0] {
        let tag = if s > 0.0 { "+" } else { "-" };
        push(&format!("psi4{tag}1"), vec![r(-s3), r(2.0 * s), r(s2), r(2.0 * s), r(-s3)], "tetrahedron");
    }
    push("psi4,2", vec![r(1.0), r(0.0), i * s2, r(0.0), r(1.0)], "tetrahedron");
    for s in [1.0, -1.0] {
        let tag = if s > 0.0 { "+" } else { "-" };
        let mut c = vec![r(0.0); 7];
        c[1] = r(1.0);
        c[5] = r(s);
        push(&format!("psi6{tag}1"), c, "octahedron");
    }
    push("psi6,2", vec![r(-s3), r(0.0), r(s5), r(0.0), r(s5), r(0.0), r(-s3)], "octahedron");
    for s in [1.0, -1.0] {
        let tag = if s > 0.0 { "+" } else { "-" };
        let mut c = vec![r(0.0); 7];
        c[0] = r(s2);
        c[3] = i * (s * s5);
        c[6] = r(s2);
        push(&format!("psi6{tag}3"), c, "octahedron");
    }
    out
}

/// Splits `base(a,b)` into the base name and its arguments.
fn parse_name(name: &str) -> Result<(String, Vec<f64>)> {
    let name = name.trim();
    match name.split_once('(') {
        None => Ok((name.to_string(), Vec::new())),
        Some((base, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::InvalidParameter(format!("unbalanced parentheses in '{name}'")))?;
            let args = inner
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::InvalidParameter(format!("bad argument '{s}' in '{name}'")))
                })
                .collect::<Result<Vec<f64>>>()?;
            Ok((base.trim().to_string(), args))
        }
    }
}

fn as_index(v: f64, what: &str) -> Result<usize> {
    if v >= 0.0 && v.fract() == 0.0 && v < 1e6 {
        Ok(v as usize)
    } else {
        Err(Error::InvalidParameter(format!("{what} must be a nonnegative integer, got {v}")))
    }
}

/// Looks up a catalog entry. Parametric names take their arguments inline,
/// as in `dicke(4,2)` or `antiprism_8(1.9)`, or `n` from the second
/// argument.
pub fn named_state(name: &str, n: Option<usize>) -> Result<CatalogEntry> {
    let (base, args) = parse_name(name)?;
    let arg_n = |i: usize| -> Result<usize> {
        match args.get(i) {
            Some(&v) => as_index(v, "n"),
            None => n.ok_or_else(|| Error::MissingParameter(format!("{base} needs n"))),
        }
    };
    let log2 = f64::log2;
    let e = match base.as_str() {
        "ghz" => {
            let n = arg_n(0)?;
            if n < 2 {
                return Err(Error::InvalidParameter(format!("ghz needs n >= 2, got {n}")));
            }
            let ring = n == 2;
            let group = format!("D_{n}");
            CatalogEntry::new("ghz", SymmetricState::ghz(n))
                .param("n", n as f64)
                .exact(1.0, "1")
                .cpps(
                    if ring { None } else { Some(2) },
                    if ring { "ring on the equator" } else { "the two poles" },
                )
                .flags(true, Some(&group), n == 3, n == 3, false)
                .class(&vec![1; n])
        }
        "w" | "dicke" => {
            let (n, k) = if base == "w" {
                (arg_n(0)?, 1)
            } else if args.len() >= 2 {
                (as_index(args[0], "n")?, as_index(args[1], "k")?)
            } else if args.len() == 1 {
                let n = n.ok_or_else(|| Error::MissingParameter("dicke needs n and k".into()))?;
                (n, as_index(args[0], "k")?)
            } else {
                return Err(Error::MissingParameter("dicke needs n and k, as dicke(n,k)".into()));
            };
            if n < 1 || k > n {
                return Err(Error::InvalidParameter(format!("dicke needs 0 <= k <= n, got n={n}, k={k}")));
            }
            let value = dicke_entanglement(n, k);
            let expr = format!("log2(C({n},{k})^-1 ({n}/{k})^{k} ({n}/{})^{})", n - k, n - k);
            let ring = k != 0 && k != n;
            let group = if !ring {
                "SO(3)"
            } else if 2 * k == n {
                "O(2)"
            } else {
                "SO(2)"
            };
            CatalogEntry::new(&base, SymmetricState::dicke(n, k))
                .param("n", n as f64)
                .param("k", k as f64)
                .exact(value, &expr)
                .cpps(if ring { None } else { Some(1) }, if ring { "ring of constant latitude" } else { "one pole" })
                .flags(true, Some(group), false, false, n == 3 && (k == 1 || k == 2))
                .class(&[n - k.min(n - k), k.min(n - k)])
        }
        "tetrahedron" => {
            let s = real_state(&[(0, (1.0f64 / 3.0).sqrt()), (3, (2.0f64 / 3.0).sqrt())], 4);
            CatalogEntry::new("tetrahedron", s)
                .exact(log2(3.0), "log2(3)")
                .cpps(Some(4), "coincide with the Majorana points")
                .flags(true, Some("T"), true, true, true)
                .check(StructureCheck::CppsAtMps)
        }
        "trigonal_bipyramid" => CatalogEntry::new("trigonal_bipyramid", real_state(&[(1, 1.0), (4, 1.0)], 5))
            .exact(log2(16.0 / 5.0), "log2(16/5)")
            .cpps(Some(3), "the three equatorial Majorana points")
            .flags(true, Some("D_3"), true, true, false),
        "square_pyramid" => {
            let a = square_pyramid_a();
            CatalogEntry::new("square_pyramid", real_state(&[(0, 1.0), (4, a)], 5))
                .param("A", a)
                .exact(log2(1.0 + a * a), "log2(1 + A^2)")
                .cpps(Some(5), "north pole and a ring of four below the Majorana points")
                .flags(true, None, false, false, true)
        }
        "octahedron" => CatalogEntry::new("octahedron", real_state(&[(1, 1.0), (5, 1.0)], 6))
            .exact(log2(4.5), "log2(9/2)")
            .cpps(Some(8), "face centres, forming a cube")
            .flags(true, Some("O"), true, true, true),
        "pentagonal_dipyramid_7" => {
            let s = real_state(&[(1, 1.0), (6, 1.0)], 7);
            let poly = vec![49.0, 165.0, -205.0, 55.0];
            let x = polynomial_root(&poly, 0.0, 0.5)?;
            let value = e_g_at_latitude(&s, x);
            CatalogEntry::new("pentagonal_dipyramid_7", s)
                .param("cos2_theta_cpp", x)
                .decimal(value, 1e-6)
                .cpps(Some(10), "two rings of five, cos^2(theta) a root of 49x^3 + 165x^2 - 205x + 55")
                .flags(true, Some("D_5"), false, true, true)
                .check(StructureCheck::CppLatitudeRoot(poly))
        }
        "cube" => {
            let c = 1.0 / (2.0 * 6f64.sqrt());
            let s = real_state(&[(0, 5f64.sqrt() * c), (4, 14f64.sqrt() * c), (8, 5f64.sqrt() * c)], 8);
            CatalogEntry::new("cube", s)
                .exact(log2(4.8), "log2(24/5)")
                .cpps(Some(6), "face centres, forming an octahedron")
                .flags(true, Some("O"), false, false, false)
        }
        "asym_pentagonal_dipyramid_8" => {
            CatalogEntry::new("asym_pentagonal_dipyramid_8", real_state(&[(1, 0.671588032), (6, 0.740924770)], 8))
                .decimal(2.445210159, 1e-6)
                .cpps(Some(10), "two rings of five")
                .flags(true, None, false, false, true)
        }
        "antiprism_8" => {
            let (a, optimal) = match args.first() {
                Some(&a) => (a, false),
                None => (antiprism_optimal_a(), true),
            };
            let mut e = CatalogEntry::new("antiprism_8", antiprism_state(a))
                .param("A", a)
                .flags(false, None, false, false, false);
            e = if optimal {
                e.exact(log2(2.0 + a * a), "log2(2 + A^2)")
                    .cpps(Some(10), "both poles and two rings of four")
            } else {
                e.cpps(None, "depends on A")
            };
            e
        }
        "nine_max" => {
            let s = real_state(&[(2, 1.0), (7, 1.0)], 9);
            let poly = vec![81.0, 385.0, -245.0, 35.0];
            let x = polynomial_root(&poly, 0.0, 0.3)?;
            let value = e_g_at_latitude(&s, x);
            CatalogEntry::new("nine_max", s)
                .param("cos2_theta_cpp", x)
                .decimal(value, 1e-6)
                .cpps(Some(10), "two rings of five, cos^2(theta) a root of 81x^3 + 385x^2 - 245x + 35")
                .flags(true, Some("D_5"), false, false, true)
                .check(StructureCheck::CppLatitudeRoot(poly))
        }
        "triaugmented_prism_9" => {
            let a = match args.first() {
                Some(&a) => a,
                None => triaugmented_a(),
            };
            let e = CatalogEntry::new("triaugmented_prism_9", real_state(&[(0, 1.0), (3, -a), (6, -a), (9, 1.0)], 9))
                .param("A", a)
                .flags(false, None, false, false, false);
            if args.is_empty() {
                let v = (213.0 + 16.0 * 2f64.sqrt()) / 42.0;
                e.exact(log2(v), "log2((213 + 16 sqrt 2)/42)")
                    .cpps(Some(5), "both poles and the three equatorial Majorana points")
            } else {
                e.cpps(None, "depends on A")
            }
        }
        "gyro_bipyramid_10" => {
            let (theta, optimal) = match args.first() {
                Some(&t) => (t, false),
                None => (gyro_optimal_theta(), true),
            };
            let e = CatalogEntry::new("gyro_bipyramid_10", gyro_state(theta))
                .param("theta", theta)
                .param("A", gyro_a(theta))
                .flags(false, None, false, false, optimal);
            if optimal {
                e.decimal(2.737432003, 1e-5).cpps(Some(8), "two rings of four")
            } else {
                e.cpps(None, "depends on theta")
            }
        }
        "ten_pos" => CatalogEntry::new(
            "ten_pos",
            real_state(&[(0, 0.395053091), (4, 0.678420822), (9, 0.619417665)], 10),
        )
        .decimal(2.679763092, 1e-5)
        .cpps(Some(3), "three, all on the positive half circle")
        .flags(true, None, false, false, false),
        "rot_pos_10" => CatalogEntry::new("rot_pos_10", real_state(&[(2, 1.0), (8, 1.0)], 10))
            .exact(log2(6.4), "log2(32/5)")
            .cpps(Some(12), "two rings of six")
            .flags(true, Some("D_6"), false, false, false),
        "eleven_max" => CatalogEntry::new(
            "eleven_max",
            real_state(&[(0, 0.376611967), (5, 0.715661256), (10, -0.588211181)], 11),
        )
        .decimal(2.817698505, 1e-5)
        .cpps(Some(11), "north pole and two rings of five")
        .flags(false, None, false, false, true),
        "eleven_pos" => CatalogEntry::new(
            "eleven_pos",
            real_state(&[(1, 0.550982113), (5, 0.578058577), (10, 0.601886195)], 11),
        )
        .decimal(2.773622669, 1e-5)
        .cpps(Some(2), "two, on the positive half circle")
        .flags(true, None, false, false, false),
        "toth_11" => {
            let s = real_state(&[(0, 462f64.sqrt() / 25.0), (5, 11.0 / 25.0), (10, -42f64.sqrt() / 25.0)], 11);
            CatalogEntry::new("toth_11", s)
                .exact(log2(625.0 / 462.0), "log2(625/462)")
                .cpps(Some(1), "antipodal to the removed icosahedron vertex")
                .flags(false, None, true, false, false)
        }
        "icosahedron" => CatalogEntry::new("icosahedron", icosahedron_state())
            .exact(log2(243.0 / 28.0), "log2(243/28)")
            .cpps(Some(20), "face centres, forming a dodecahedron")
            .flags(false, Some("Y"), true, true, true),
        "twelve_pos" => CatalogEntry::new(
            "twelve_pos",
            real_state(&[(1, 0.555046977), (6, 0.619552827), (11, 0.555046977)], 12),
        )
        .decimal(2.993524700, 1e-5)
        .cpps(Some(15), "three rings of five, one on the equator")
        .flags(true, None, false, false, false),
        "dodecahedron" => CatalogEntry::new("dodecahedron", dodecahedron_state())
            .exact(log2(1875.0 / 187.0), "log2(1875/187)")
            .cpps(Some(12), "face centres, forming an icosahedron")
            .flags(false, Some("Y"), false, false, false),
        "x_state" => {
            let n = arg_n(0)?;
            if n < 3 {
                return Err(Error::InvalidParameter(format!("x_state needs n >= 3, got {n}")));
            }
            CatalogEntry::new("x_state", real_state(&[(1, (n as f64).sqrt()), (n, ((n - 2) as f64).sqrt())], n))
                .param("n", n as f64)
                .cpps(None, "not tabulated")
        }
        "cluster4_equiv_fixture" => {
            let mut e = CatalogEntry::new("cluster4_equiv_fixture", SymmetricState::ghz(3))
                .exact(1.0, "1")
                .cpps(Some(2), "the two poles")
                .flags(true, Some("D_3"), true, true, false);
            e.related = gisin_states();
            e
        }
        _ => return Err(Error::UnknownName(base)),
    };
    Ok(e)
}

/// One compared quantity of a [`VerifyReport`].
#[derive(Debug, Clone, Serialize)]
pub struct FieldCheck {
    pub field: String,
    pub value: f64,
    pub reference: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub name: String,
    pub e_g: f64,
    pub dc_class: String,
    pub checks: Vec<FieldCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn field(name: &str, value: f64, reference: f64, tol: f64) -> FieldCheck {
    FieldCheck {
        field: name.to_string(),
        value,
        reference,
        tol,
        pass: (value - reference).abs() <= tol,
        detail: None,
    }
}

/// Recomputes the Majorana points, CPPs, entanglement and DC class of an
/// entry and compares them with the stored references.
pub fn verify_entry(entry: &CatalogEntry) -> Result<VerifyReport> {
    let state = &entry.state;
    let n = state.n();
    let report = find_cpps(state, DEFAULT_GRID_DEG, DEFAULT_REFINE_TOL);
    let mps = state_to_mps(state, DEFAULT_CLUSTER_TOL)?;
    let dc = dc_class(&mps).to_string();
    let mut checks = Vec::new();

    let norm: f64 = state.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    checks.push(field("norm", norm, 1.0, 1e-12));
    if let Some(r) = entry.reference_e_g {
        checks.push(field("e_g", report.e_g, r, entry.tol));
    }
    let bound = ((n + 1) as f64).log2();
    let mut c = field("upper_bound", report.e_g, bound, 0.0);
    c.pass = report.e_g <= bound + 1e-12;
    checks.push(c);

    let back = state_from_mps(&mps.points)?;
    checks.push(field("mp_roundtrip_fidelity", back.fidelity(state), 1.0, 1e-10));

    if let Some(count) = entry.cpp_count {
        let decimal = entry.exact.is_none() && entry.tol > 1e-6;
        let found = if decimal {
            report
                .local_maxima
                .iter()
                .filter(|m| m.1 >= report.g_max * (1.0 - DECIMAL_CPP_TOL))
                .count()
        } else {
            report.cpps.len()
        };
        let mut c = field("cpp_count", found as f64, count as f64, 0.0);
        c.pass = report.ring.is_none() && found == count;
        checks.push(c);
    }
    if entry.positive {
        let mut c = field("positive", state.is_positive(1e-12) as u8 as f64, 1.0, 0.0);
        c.pass = state.is_positive(1e-12);
        checks.push(c);
    }
    if let Some(expected) = &entry.dc_class {
        let mut c = field("dc_class", 0.0, 0.0, 0.0);
        c.pass = &dc == expected;
        c.detail = Some(format!("{dc} vs {expected}"));
        checks.push(c);
    }
    for check in &entry.checks {
        match check {
            StructureCheck::CppsAtMps => {
                let worst = report
                    .cpps
                    .iter()
                    .map(|c| mps.points.iter().map(|p| p.chordal(*c)).fold(f64::INFINITY, f64::min))
                    .fold(0.0, f64::max);
                checks.push(field("cpps_at_mps", worst, 0.0, 1e-6));
            }
            StructureCheck::CppLatitudeRoot(poly) => {
                let eval = |x: f64| poly.iter().fold(0.0, |acc, &c| acc * x + c);
                let worst = report
                    .cpps
                    .iter()
                    .filter(|p| p.theta > 1e-6 && p.theta < PI - 1e-6)
                    .map(|p| eval(p.theta.cos().powi(2)).abs())
                    .fold(0.0, f64::max);
                checks.push(field("cpp_latitude_root", worst, 0.0, 1e-9));
            }
        }
    }
    for rel in &entry.related {
        let target = named_state(&rel.lu_equivalent_to, None)?;
        let v = crate::slocc::lu_equivalence(&rel.state, &target.state, crate::slocc::DEFAULT_MATCH_TOL)?;
        let mut c = field(&format!("lu_equivalent:{}", rel.name), 0.0, 0.0, 0.0);
        c.pass = v.relation == crate::slocc::Relation::LuEquivalent;
        c.detail = Some(format!("{} vs {}", v.relation, rel.lu_equivalent_to));
        checks.push(c);
    }
    Ok(VerifyReport { name: entry.name.clone(), e_g: report.e_g, dc_class: dc, checks })
}

/// All non-parametric entries plus representative parametric ones.
pub fn all_entries() -> Result<Vec<CatalogEntry>> {
    let mut out = vec![
        named_state("ghz(3)", None)?,
        named_state("w(3)", None)?,
        named_state("dicke(4,2)", None)?,
        named_state("x_state(5)", None)?,
    ];
    for name in NAMES {
        if !name.contains('(') {
            out.push(named_state(name, None)?);
        }
    }
    out.push(named_state("antiprism_8", None)?);
    out.push(named_state("gyro_bipyramid_10", None)?);
    Ok(out)
}
