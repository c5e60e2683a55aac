use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symsphere::slocc::*;
use symsphere::symstate::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn fin(re: f64, im: f64) -> ExtendedComplex {
    ExtendedComplex::finite(re, im)
}

const INF: ExtendedComplex = ExtendedComplex::Infinity;

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> SymmetricState {
    let v: Vec<Complex64> = (0..=n)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    SymmetricState::new(v).unwrap()
}

fn random_su2(rng: &mut ChaCha8Rng) -> Mat2 {
    mat2_mul(
        &rz(rng.gen_range(0.0..TAU)),
        &mat2_mul(&ry(rng.gen_range(0.0..PI)), &rz(rng.gen_range(0.0..TAU))),
    )
}

/// `U1 diag(s1, s2) U2` with singular values in `[0.2, 5]`.
fn random_map(rng: &mut ChaCha8Rng) -> MobiusMap {
    let d = [
        [c(rng.gen_range(0.2..5.0), 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(rng.gen_range(0.2..5.0), 0.0)],
    ];
    let m = mat2_mul(&random_su2(rng), &mat2_mul(&d, &random_su2(rng)));
    MobiusMap::from_matrix(&m).unwrap()
}

fn random_point(rng: &mut ChaCha8Rng) -> ExtendedComplex {
    fin(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
}

fn close(a: ExtendedComplex, b: ExtendedComplex, tol: f64) -> bool {
    a.chordal(b) <= tol
}

fn tetrahedron() -> SymmetricState {
    SymmetricState::from_real(&[(1.0f64 / 3.0).sqrt(), 0.0, 0.0, (2.0f64 / 3.0).sqrt(), 0.0]).unwrap()
}

fn octahedron() -> SymmetricState {
    SymmetricState::from_real(&[0.0, FRAC_1_SQRT_2, 0.0, 0.0, 0.0, -FRAC_1_SQRT_2, 0.0]).unwrap()
}

#[test]
fn cross_ratio_examples() {
    let l = cross_ratio(fin(0.0, 0.0), fin(1.0, 0.0), fin(2.0, 0.0), fin(3.0, 0.0)).unwrap();
    assert!(close(l, fin(4.0 / 3.0, 0.0), 1e-15));
    let l = cross_ratio(fin(2.0, 0.0), fin(1.0, 0.0), fin(0.0, 0.0), INF).unwrap();
    assert!(close(l, fin(2.0, 0.0), 1e-15));
    assert!(matches!(
        cross_ratio(fin(1.0, 0.0), fin(1.0, 0.0), fin(0.0, 0.0), INF),
        Err(symsphere::Error::DegenerateQuadruple)
    ));
}

#[test]
fn cross_ratio_invariance_1000() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let v: Vec<ExtendedComplex> = (0..4).map(|_| random_point(&mut rng)).collect();
        let m = random_map(&mut rng);
        let before = cross_ratio(v[0], v[1], v[2], v[3]).unwrap();
        let w: Vec<ExtendedComplex> = v.iter().map(|&z| m.apply(z)).collect();
        let after = cross_ratio(w[0], w[1], w[2], w[3]).unwrap();
        assert!(close(before, after, 1e-9));
    }
}

/// Oracle: the cross-ratios of all 24 orderings of four points.
fn permutation_values(v: [ExtendedComplex; 4]) -> Vec<ExtendedComplex> {
    let mut out: Vec<ExtendedComplex> = Vec::new();
    let idx = [0usize, 1, 2, 3];
    for a in idx {
        for b in idx {
            for cc in idx {
                for d in idx {
                    let mut s = [a, b, cc, d];
                    s.sort_unstable();
                    if s != idx {
                        continue;
                    }
                    let l = cross_ratio(v[a], v[b], v[cc], v[d]).unwrap();
                    if out.iter().all(|w| w.chordal(l) > 1e-12) {
                        out.push(l);
                    }
                }
            }
        }
    }
    out
}

fn same_set(a: &[ExtendedComplex], b: &[ExtendedComplex]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.iter().any(|y| close(*x, *y, 1e-12)))
}

#[test]
fn cross_ratio_orbit_examples() {
    let orbit = cross_ratio_orbit(fin(4.0 / 3.0, 0.0));
    let expect = [4.0 / 3.0, 0.75, -1.0 / 3.0, -3.0, 4.0, 0.25].map(|x| fin(x, 0.0));
    assert!(same_set(&orbit, &expect));
    let oracle = permutation_values([fin(0.0, 0.0), fin(1.0, 0.0), fin(2.0, 0.0), fin(3.0, 0.0)]);
    assert!(same_set(&orbit, &oracle));

    let harmonic = [-1.0, 2.0, 0.5].map(|x| fin(x, 0.0));
    assert!(same_set(&cross_ratio_orbit(fin(-1.0, 0.0)), &harmonic));
    assert!(same_set(&cross_ratio_orbit(fin(0.5, 0.0)), &harmonic));

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let v = [0; 4].map(|_| random_point(&mut rng));
    let l = cross_ratio(v[0], v[1], v[2], v[3]).unwrap();
    assert!(same_set(&cross_ratio_orbit(l), &permutation_values(v)));
}

#[test]
fn triples_examples() {
    let src = [fin(0.0, 0.0), fin(1.0, 0.0), INF];
    let m = mobius_from_triples(src, src).unwrap();
    let id = MobiusMap::identity();
    assert!((m.a - id.a).norm() < 1e-12 || (m.a + id.a).norm() < 1e-12);
    assert!(m.b.norm() < 1e-12 && m.c.norm() < 1e-12);

    let m = mobius_from_triples(src, [fin(1.0, 0.0), INF, fin(0.0, 0.0)]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let z = random_point(&mut rng);
        let ExtendedComplex::Finite(zv) = z else { unreachable!() };
        assert!(close(m.apply(z), ExtendedComplex::Finite(1.0 / (1.0 - zv)), 1e-12));
    }

    let w = Complex64::from_polar(1.0, TAU / 3.0);
    let roots = [c(1.0, 0.0), w, w * w].map(ExtendedComplex::Finite);
    let halves = [c(0.5, 0.0), w / 2.0, w * w / 2.0].map(ExtendedComplex::Finite);
    let m = mobius_from_triples(roots, halves).unwrap();
    assert!(m.b.norm() < 1e-12 && m.c.norm() < 1e-12);
    assert!(((m.a / m.d) - 0.5).norm() < 1e-12);

    assert!(matches!(
        mobius_from_triples([fin(0.0, 0.0), fin(0.0, 0.0), INF], src),
        Err(symsphere::Error::DegenerateTriple)
    ));
}

#[test]
fn dc_class_examples() {
    let w = state_to_mps(&SymmetricState::dicke(3, 1), DEFAULT_CLUSTER_TOL).unwrap();
    assert_eq!(dc_class(&w).partition, vec![2, 1]);
    assert_eq!(dc_class(&w).to_string(), "D_{2,1}");
    let g = state_to_mps(&SymmetricState::ghz(3), DEFAULT_CLUSTER_TOL).unwrap();
    assert_eq!(dc_class(&g).partition, vec![1, 1, 1]);
    let p = state_to_mps(&SymmetricState::dicke(6, 0), DEFAULT_CLUSTER_TOL).unwrap();
    assert_eq!(dc_class(&p), DCClass { partition: vec![6], diversity: 1 });
}

fn ghz_family(alpha: Complex64, beta: Complex64) -> SymmetricState {
    SymmetricState::new(vec![alpha, c(0.0, 0.0), c(0.0, 0.0), beta]).unwrap()
}

#[test]
fn equivalence_examples() {
    let ghz = SymmetricState::ghz(3);
    let v = slocc_equivalence(&ghz, &ghz_family(c(0.8, 0.0), c(0.0, 0.6)), DEFAULT_MATCH_TOL).unwrap();
    assert_eq!(v.relation, Relation::SloccEquivalentNotLu);
    let v = lu_equivalence(&ghz, &ghz_family(c(0.3, 0.0), c(0.9, 0.2)), DEFAULT_MATCH_TOL).unwrap();
    assert_eq!(v.relation, Relation::SloccEquivalentNotLu);
    let v = lu_equivalence(&ghz, &ghz_family(c(1.0, 0.0), c(0.0, -1.0)), DEFAULT_MATCH_TOL).unwrap();
    assert_eq!(v.relation, Relation::LuEquivalent);

    let v = slocc_equivalence(&SymmetricState::ghz(4), &tetrahedron(), DEFAULT_MATCH_TOL).unwrap();
    assert_eq!(v.relation, Relation::Inequivalent);
    assert!(v.witness.is_none());

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 2..=7 {
        let s = random_state(&mut rng, n);
        let v = slocc_equivalence(&s, &s, DEFAULT_MATCH_TOL).unwrap();
        assert_eq!(v.relation, Relation::LuEquivalent);
        let w = v.witness.unwrap();
        assert!(w.unitarity_defect() < 1e-9);
        let v = lu_equivalence(&s, &rotate_z(&s, 0.7), DEFAULT_MATCH_TOL).unwrap();
        assert_eq!(v.relation, Relation::LuEquivalent, "n = {n}");
    }

    // W and GHZ differ in their degeneracy classes
    let v = slocc_equivalence(&SymmetricState::dicke(3, 1), &ghz, DEFAULT_MATCH_TOL).unwrap();
    assert_eq!(v.relation, Relation::Inequivalent);
    assert!(v.detail.contains("DC mismatch"));
}

fn gisin_states() -> Vec<(SymmetricState, SymmetricState)> {
    let s3 = 3f64.sqrt();
    let s2 = 2f64.sqrt();
    let s5 = 5f64.sqrt();
    let real = |v: &[f64]| SymmetricState::from_real(v).unwrap();
    let mut out = Vec::new();
    for sign in [1.0, -1.0] {
        out.push((real(&[1.0, 0.0, 0.0, sign]), SymmetricState::ghz(3)));
        out.push((real(&[1.0, sign * s3, -s3, -sign]), SymmetricState::ghz(3)));
        out.push((real(&[-s3, sign * 2.0, s2, sign * 2.0, -s3]), tetrahedron()));
        out.push((real(&[0.0, 1.0, 0.0, 0.0, 0.0, sign, 0.0]), octahedron()));
        out.push((
            SymmetricState::new(vec![
                c(s2, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, sign * s5),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(s2, 0.0),
            ])
            .unwrap(),
            octahedron(),
        ));
    }
    out.push((
        SymmetricState::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, s2), c(0.0, 0.0), c(1.0, 0.0)]).unwrap(),
        tetrahedron(),
    ));
    out.push((real(&[-s3, 0.0, s5, 0.0, s5, 0.0, -s3]), octahedron()));
    out
}

#[test]
fn gisin_states_lu_equivalent() {
    for (i, (g, target)) in gisin_states().iter().enumerate() {
        let v = lu_equivalence(g, target, DEFAULT_MATCH_TOL).unwrap();
        assert_eq!(v.relation, Relation::LuEquivalent, "fixture {i}");
        let img = apply_mobius(g, &v.witness.unwrap()).unwrap();
        assert!(img.fidelity(target) > 1.0 - 1e-9);
    }
}

#[test]
fn constructed_pairs_are_detected() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [4, 5, 6] {
        for _ in 0..40 {
            let s = random_state(&mut rng, n);
            let m = random_map(&mut rng);
            let t = apply_mobius(&s, &m).unwrap();
            let v = slocc_equivalence(&s, &t, DEFAULT_MATCH_TOL).unwrap();
            assert!(v.relation.is_equivalent());
            // witness really maps one state onto the other
            let img = apply_mobius(&s, &v.witness.unwrap()).unwrap();
            assert!(img.fidelity(&t) > 1.0 - 1e-8);
            let d1 = dc_class(&state_to_mps(&s, DEFAULT_CLUSTER_TOL).unwrap());
            let d2 = dc_class(&state_to_mps(&t, DEFAULT_CLUSTER_TOL).unwrap());
            assert_eq!(d1, d2);
        }
    }
}

#[test]
fn degenerate_pairs_are_detected() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for mults in [vec![2, 1, 1], vec![3, 2], vec![2, 2, 1, 1], vec![4], vec![3, 1, 1, 1]] {
        let mut pts = Vec::new();
        for &m in &mults {
            let p = BlochPoint::new(rng.gen_range(0.2..2.9), rng.gen_range(0.0..TAU));
            pts.extend(std::iter::repeat(p).take(m));
        }
        let s = state_from_mps(&pts).unwrap();
        let t = apply_mobius(&s, &random_map(&mut rng)).unwrap();
        let v = slocc_equivalence(&s, &t, DEFAULT_MATCH_TOL).unwrap();
        assert!(v.relation.is_equivalent(), "{mults:?}");
        let img = apply_mobius(&s, &v.witness.unwrap()).unwrap();
        assert!(img.fidelity(&t) > 1.0 - 1e-8, "{mults:?}");
        // a rotation is found as LU
        let r = apply_su2(&s, &random_su2(&mut rng)).unwrap();
        assert_eq!(lu_equivalence(&s, &r, DEFAULT_MATCH_TOL).unwrap().relation, Relation::LuEquivalent, "{mults:?}");
    }
}

#[test]
fn hierarchy_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let n = rng.gen_range(2..=6);
        let s = random_state(&mut rng, n);
        let t = match rng.gen_range(0..3) {
            0 => apply_su2(&s, &random_su2(&mut rng)).unwrap(),
            1 => apply_mobius(&s, &random_map(&mut rng)).unwrap(),
            _ => random_state(&mut rng, n),
        };
        let lu = lu_equivalence(&s, &t, DEFAULT_MATCH_TOL).unwrap();
        let sl = slocc_equivalence(&s, &t, DEFAULT_MATCH_TOL).unwrap();
        if lu.relation == Relation::LuEquivalent {
            assert!(sl.relation.is_equivalent());
        }
        if sl.relation.is_equivalent() {
            let d1 = dc_class(&state_to_mps(&s, DEFAULT_CLUSTER_TOL).unwrap());
            let d2 = dc_class(&state_to_mps(&t, DEFAULT_CLUSTER_TOL).unwrap());
            assert_eq!(d1, d2);
        }
    }
}

#[test]
fn cross_ratio_test_agrees_with_triple_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut agree_equiv = 0;
    for i in 0..60 {
        let s = random_state(&mut rng, 4);
        let t = if i % 2 == 0 {
            apply_mobius(&s, &random_map(&mut rng)).unwrap()
        } else {
            random_state(&mut rng, 4)
        };
        let by_triples = slocc_equivalence(&s, &t, DEFAULT_MATCH_TOL).unwrap().relation.is_equivalent();
        let by_cross = cross_ratio_equivalent(&s, &t, DEFAULT_MATCH_TOL).unwrap();
        assert_eq!(by_triples, by_cross);
        agree_equiv += by_cross as usize;
    }
    assert_eq!(agree_equiv, 30);
}

#[test]
fn decomposition_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let u = MobiusMap::from_matrix(&random_su2(&mut rng)).unwrap();
    let (_, aff) = decompose_slocc(&u);
    assert!((aff.a - 1.0).abs() < 1e-12 && aff.b.norm() < 1e-12);

    let half = MobiusMap::new(c(FRAC_1_SQRT_2, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2f64.sqrt(), 0.0)).unwrap();
    let (u, aff) = decompose_slocc(&half);
    assert!((u[0][0] - 1.0).norm() < 1e-12 && u[0][1].norm() < 1e-12);
    assert!((aff.a - 0.5).abs() < 1e-12 && aff.b.norm() < 1e-12);
}

fn proportional(a: &Mat2, b: &Mat2, tol: f64) -> bool {
    // pick the largest entry of b as the scale reference
    let mut best = (0, 0);
    for i in 0..2 {
        for j in 0..2 {
            if b[i][j].norm() > b[best.0][best.1].norm() {
                best = (i, j);
            }
        }
    }
    let k = a[best.0][best.1] / b[best.0][best.1];
    (0..2).all(|i| (0..2).all(|j| (a[i][j] - k * b[i][j]).norm() <= tol * k.norm().max(1.0)))
}

#[test]
fn decomposition_reconstructs_1000() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..1000 {
        let m = if i % 10 == 0 {
            // a = 0 exercises the second branch
            MobiusMap::new(c(0.0, 0.0), c(rng.gen_range(-2.0..2.0), 1.0), c(1.0, rng.gen_range(-2.0..2.0)), c(0.3, 0.1)).unwrap()
        } else {
            random_map(&mut rng)
        };
        let (u, aff) = decompose_slocc(&m);
        assert!(unitarity_defect(&u) < 1e-12);
        assert!(aff.a > 0.0);
        assert!(proportional(&mat2_mul(&u, &aff.matrix()), &m.matrix(), 1e-9));
    }
    // affine maps compose to affine maps
    let f = AffinePart { a: 2.0, b: c(1.0, -1.0) };
    let g = AffinePart { a: 0.5, b: c(0.0, 3.0) };
    let fg = f.compose(&g);
    assert!(proportional(&fg.matrix(), &mat2_mul(&f.matrix(), &g.matrix()), 1e-15));
}

#[test]
fn canonical_form_examples() {
    let t0 = c(0.3, 0.0);
    let (t, rep) = canonical_rep_4q(&rep_state_4q(t0)).unwrap();
    assert!((t - t0).norm() < 1e-8, "{t}");
    assert!(rep.fidelity(&rep_state_4q(t0)) > 1.0 - 1e-12);

    // the representative really has the triangle plus the fourth point
    let p = BlochPoint::new(0.9, 1.1);
    let tp = Complex64::from_polar((p.theta / 2.0).tan(), p.phi);
    let mps = state_to_mps(&rep_state_4q(tp), DEFAULT_CLUSTER_TOL).unwrap();
    assert_eq!(mps.multiplicity_at(p, 1e-9), 1);
    for k in 0..3 {
        assert_eq!(mps.multiplicity_at(BlochPoint::new(PI / 2.0, k as f64 * TAU / 3.0), 1e-9), 1);
    }

    let ghz4 = SymmetricState::ghz(4);
    let (tg, _) = canonical_rep_4q(&ghz4).unwrap();
    for k in 1..4 {
        let (tr, _) = canonical_rep_4q(&rotate_z(&ghz4, k as f64 * PI / 2.0)).unwrap();
        assert!((tr - tg).norm() < 1e-8);
        let (tr, _) = canonical_rep_4q(&rotate_z(&ghz4, 0.37 * k as f64)).unwrap();
        assert!((tr - tg).norm() < 1e-8);
    }
    assert!(matches!(canonical_rep_4q(&SymmetricState::dicke(4, 1)), Err(symsphere::Error::WrongDiversity(2))));
}

#[test]
fn canonical_form_is_slocc_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let s = random_state(&mut rng, 4);
        let t = apply_mobius(&s, &random_map(&mut rng)).unwrap();
        let (ts, rs) = canonical_rep_4q(&s).unwrap();
        let (tt, _) = canonical_rep_4q(&t).unwrap();
        assert!((ts - tt).norm() < 1e-8, "{ts} vs {tt}");
        // and the representative is itself equivalent to the input
        assert!(slocc_equivalence(&s, &rs, DEFAULT_MATCH_TOL).unwrap().relation.is_equivalent());
    }
}

#[test]
fn five_qubit_representatives() {
    let dc = |s: &SymmetricState| dc_class(&state_to_mps(s, DEFAULT_CLUSTER_TOL).unwrap()).partition;
    // t = 0 adds a north-pole point, keeping the single double point
    let s0 = rep_state_5q(c(0.0, 0.0)).unwrap();
    assert_eq!(dc(&s0), vec![2, 1, 1, 1]);
    assert_eq!(state_to_mps(&s0, DEFAULT_CLUSTER_TOL).unwrap().multiplicity_at(BlochPoint::north(), 1e-9), 1);
    assert_eq!(dc(&rep_state_5q(c(1.0, 0.0)).unwrap()), vec![3, 1, 1]);
    assert_eq!(dc(&rep_state_5q(Complex64::from_polar(1.0, TAU / 3.0)).unwrap()), vec![2, 2, 1]);
    assert_eq!(dc(&rep_state_5q(c(0.0, 1.0)).unwrap()), vec![2, 1, 1, 1]);

    let ts = [c(0.0, 0.0), c(0.3, 0.2), c(-0.5, -0.4), c(0.0, 1.0), c(0.6, 0.1)];
    for i in 0..ts.len() {
        for j in (i + 1)..ts.len() {
            let a = rep_state_5q(ts[i]).unwrap();
            let b = rep_state_5q(ts[j]).unwrap();
            assert_eq!(slocc_equivalence(&a, &b, DEFAULT_MATCH_TOL).unwrap().relation, Relation::Inequivalent);
        }
    }
    assert!(matches!(rep_state_5q(c(1.5, 0.0)), Err(symsphere::Error::OutOfRange(_))));
    assert!(matches!(rep_state_5q(c(0.0, -1.0)), Err(symsphere::Error::OutOfRange(_))));
}

#[test]
fn conjugation_examples() {
    let s = tetrahedron();
    assert_eq!(conjugate_state(&s), s);
    let p = BlochPoint::new(1.0, PI / 3.0);
    let s = state_from_mps(&[p, BlochPoint::north(), BlochPoint::new(2.0, 0.0)]).unwrap();
    let m = state_to_mps(&conjugate_state(&s), DEFAULT_CLUSTER_TOL).unwrap();
    assert_eq!(m.multiplicity_at(BlochPoint::new(1.0, -PI / 3.0), 1e-9), 1);

    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let s = random_state(&mut rng, 5);
    let v = slocc_equivalence(&s, &conjugate_state(&s), DEFAULT_MATCH_TOL).unwrap();
    assert_eq!(v.relation, Relation::Inequivalent);
}

#[test]
fn verdict_json() {
    let v = slocc_equivalence(&SymmetricState::ghz(3), &SymmetricState::ghz(3), DEFAULT_MATCH_TOL).unwrap();
    let j: serde_json::Value = serde_json::to_value(&v).unwrap();
    assert_eq!(j["relation"], "LU-equivalent");
    assert_eq!(j["witness"]["a"].as_array().unwrap().len(), 2);
    let v = slocc_equivalence(&SymmetricState::ghz(4), &tetrahedron(), DEFAULT_MATCH_TOL).unwrap();
    let j: serde_json::Value = serde_json::to_value(&v).unwrap();
    assert_eq!(j["relation"], "inequivalent");
    assert!(j["witness"].is_null());
}

proptest! {
    #[test]
    fn cross_ratio_invariant(
        pts in prop::collection::vec((-4.0f64..4.0, -4.0f64..4.0), 4),
        m in prop::collection::vec(-2.0f64..2.0, 8),
    ) {
        let v: Vec<ExtendedComplex> = pts.iter().map(|&(x, y)| fin(x, y)).collect();
        for i in 0..4 {
            for j in (i + 1)..4 {
                prop_assume!(v[i].chordal(v[j]) > 1e-3);
            }
        }
        let map = MobiusMap::new(c(m[0], m[1]), c(m[2], m[3]), c(m[4], m[5]), c(m[6], m[7]));
        prop_assume!(map.is_ok());
        let map = map.unwrap();
        let sv = {
            let mat = map.matrix();
            let f: f64 = mat.iter().flatten().map(|z| z.norm_sqr()).sum();
            f
        };
        prop_assume!(sv < 30.0);
        let before = cross_ratio(v[0], v[1], v[2], v[3]).unwrap();
        let w: Vec<ExtendedComplex> = v.iter().map(|&z| map.apply(z)).collect();
        let after = cross_ratio(w[0], w[1], w[2], w[3]).unwrap();
        prop_assert!(before.chordal(after) < 1e-9);
    }
}
