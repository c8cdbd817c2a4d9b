//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `cargo test --test acceptance -- --nocapture`).

use std::collections::BTreeSet;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pa_core::construct::{
    assemble_pa, f_beta_and_m, n_beta, nestohedron_of_beta, permutohedron, phi_2d, reference_kappa,
    reference_pa, LabeledPolytope,
};
use pa_core::nested::{enumerate_b1, enumerate_maximal_1_nested, Beta};
use pa_core::polytope::Polytope;
use pa_core::rat::{rat, rat_int};
use pa_core::vec::{qvec_from_ints, QVec};
use pa_core::verify::{verify_fan_refinement, verify_minkowski_realisation, verify_realises_c, vertex_trunc_identity};

fn criterion<F: FnOnce()>(num: u32, desc: &str, f: F) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f));
    let elapsed = start.elapsed();
    match outcome {
        Ok(()) => println!("criterion {num} ({desc}): PASS ({elapsed:.2?})"),
        Err(e) => {
            println!("criterion {num} ({desc}): FAIL ({elapsed:.2?})");
            resume_unwind(e);
        }
    }
}

fn pa21() -> &'static LabeledPolytope<Beta> {
    static CELL: OnceLock<LabeledPolytope<Beta>> = OnceLock::new();
    CELL.get_or_init(|| assemble_pa(2, &rat_int(1), false).unwrap().0)
}

fn pa31() -> &'static LabeledPolytope<Beta> {
    static CELL: OnceLock<LabeledPolytope<Beta>> = OnceLock::new();
    CELL.get_or_init(|| assemble_pa(3, &rat_int(1), false).unwrap().0)
}

fn beta(lists: &[&[usize]], n: usize) -> Beta {
    Beta::from_lists(&lists.iter().map(|l| l.to_vec()).collect::<Vec<_>>(), n).unwrap()
}

fn permutations(coords: &[i64]) -> Vec<QVec> {
    fn rec(rest: &mut Vec<i64>, acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            acc.push(v);
            rec(rest, acc, out);
            acc.pop();
            rest.insert(i, v);
        }
    }
    let mut raw = Vec::new();
    rec(&mut coords.to_vec(), &mut Vec::new(), &mut raw);
    raw.sort();
    raw.dedup();
    raw.iter().map(|p| qvec_from_ints(p)).collect()
}

#[test]
fn criterion_1_kappa_table() {
    criterion(1, "kappa table", || {
        assert_eq!(reference_kappa(2, 1, 0).unwrap(), rat_int(3));
        assert_eq!(reference_kappa(2, 1, 1).unwrap(), rat_int(9));
        assert_eq!(reference_kappa(2, 2, 0).unwrap(), rat(25, 2));
    });
}

#[test]
fn criterion_2_dodecagon() {
    criterion(2, "dodecagon vertex set", || {
        let pa = pa21();
        assert_eq!(pa.poly.vertices().len(), 12);
        let mut base: Vec<QVec> = permutations(&[1, 5, 13]);
        base.extend(permutations(&[2, 3, 14]));
        base.sort();
        // single translation vector t
        let t = pa_core::vec::sub_qq(&pa.poly.vertices()[0], &base[0]);
        for (v, b) in pa.poly.vertices().iter().zip(&base) {
            assert_eq!(v, &pa_core::vec::add_qq(b, &t));
        }
        assert_eq!(t, qvec_from_ints(&[6, 6, 6]));
    });
}

#[test]
fn criterion_3_normal_equivalence_to_reference() {
    criterion(3, "normal equivalence to the reference model", || {
        let ref2 = reference_pa(2).unwrap();
        assert!(pa21().poly.normally_equivalent(&ref2.poly).unwrap());
        let ref3 = reference_pa(3).unwrap();
        assert!(pa31().poly.normally_equivalent(&ref3.poly).unwrap());
    });
}

#[test]
fn criterion_4_counts() {
    criterion(4, "f-vector, Euler, simplicity, facet count", || {
        let pa = pa31();
        let f = pa.poly.f_vector();
        assert_eq!(f.0, vec![120, 180, 62]);
        assert_eq!(120 - 180 + 62, 2);
        assert!(pa.poly.is_simple());
        assert_eq!(enumerate_b1(3).len(), 62);
        assert_eq!(pa.poly.facets().len(), 62);
    });
}

#[test]
fn criterion_5_truncator_sequence() {
    criterion(5, "truncator sequence", || {
        let report2 = verify_minkowski_realisation(2, &rat_int(1)).unwrap();
        assert!(report2.pass(), "n=2 checks: {:#?}", report2.checks);
        assert_eq!(report2.truncator_step_count(), 6);
        let report3 = verify_minkowski_realisation(3, &rat_int(1)).unwrap();
        assert!(report3.pass(), "n=3 checks: {:#?}", report3.checks);
        assert_eq!(report3.truncator_step_count(), 48);
    });
}

#[test]
fn criterion_6_paper_fixtures() {
    criterion(6, "worked-example fixtures", || {
        let (m, _) = f_beta_and_m(&beta(&[&[1, 2], &[1]], 3), 3).unwrap();
        assert_eq!(m, rat_int(4));
        let (m, _) = f_beta_and_m(&beta(&[&[1, 2, 4], &[1, 2]], 3), 3).unwrap();
        assert_eq!(m, rat_int(8));
        let (m, _) = f_beta_and_m(&beta(&[&[1, 2, 4], &[1, 2], &[1]], 3), 3).unwrap();
        assert_eq!(m, rat_int(9));

        // the non-simple summand
        let nb = n_beta(&beta(&[&[1, 2], &[1]], 3), 3).unwrap();
        assert!(!nb.is_simple());

        // the 20-vertex example over [5]
        let b4 = beta(&[&[1, 2, 3], &[1, 2]], 4);
        let nest = nestohedron_of_beta(&b4, 4).unwrap();
        assert_eq!(nest.vertices().len(), 20);
        let listed: BTreeSet<QVec> = [
            [6, 1, 1, 1, 1],
            [1, 6, 1, 1, 1],
            [2, 1, 5, 1, 1],
            [1, 2, 5, 1, 1],
            [1, 2, 3, 3, 1],
            [4, 1, 1, 3, 1],
            [3, 1, 1, 3, 2],
            [1, 4, 1, 3, 1],
            [2, 1, 3, 3, 1],
            [1, 2, 3, 1, 3],
            [2, 1, 2, 3, 2],
            [1, 2, 2, 3, 2],
            [4, 1, 1, 1, 3],
            [1, 4, 1, 1, 3],
            [1, 3, 1, 2, 3],
            [2, 1, 3, 1, 3],
            [3, 1, 1, 2, 3],
            [2, 1, 2, 2, 3],
            [1, 2, 2, 2, 3],
            [1, 3, 1, 3, 2],
        ]
        .iter()
        .map(|p| qvec_from_ints(p))
        .collect();
        let got: BTreeSet<QVec> = nest.vertices().iter().cloned().collect();
        assert_eq!(got, listed);

        // Stated fixture value for the example over [5]. The functional
        // minimum over the 20 vertices above is 8 (attained on the
        // quadrilateral tight on both chain facets, with offsets 3 + 5),
        // so this assertion cannot hold; it is kept as stated and fails
        // honestly. See tests/properties.rs for the dual-route value.
        let (m, _) = f_beta_and_m(&b4, 4).unwrap();
        assert_eq!(
            m,
            rat_int(9),
            "stated fixture 9 contradicts the functional minimum over the \
             listed vertices (2*1 + 2*2 + 2 = 8 at (1,2,2,3,2)) and the \
             contained-block offsets 3 + 5 = 8"
        );
    });
}

#[test]
fn criterion_7_family() {
    criterion(7, "family is normally equivalent across depths", || {
        for n in [2usize, 3] {
            let base = if n == 2 { &pa21().poly } else { &pa31().poly };
            for c in [rat(1, 3), rat(1, 2)] {
                let (pa_c, _) = assemble_pa(n, &c, false).unwrap();
                assert!(
                    pa_c.poly.normally_equivalent(base).unwrap(),
                    "n={n} c={c} differs from c=1"
                );
            }
        }
    });
}

#[test]
fn criterion_8_property_suites() {
    criterion(8, "property suites", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97);

        // (a) support additivity on 100 random directions for 20 pairs
        for _ in 0..20 {
            let p = random_polytope(&mut rng);
            let q = random_polytope(&mut rng);
            let sum = p.minkowski_sum(&q).unwrap();
            for _ in 0..5 {
                let dir: QVec = (0..3)
                    .map(|_| rat_int(rng.gen_range(-20..=20)))
                    .collect();
                assert_eq!(
                    sum.support_value(&dir),
                    p.support_value(&dir) + q.support_value(&dir)
                );
            }
        }

        // (b) fan refinement: the worked planar pair plus 10 random pairs
        let trapezoid = Polytope::from_points(
            [[1, 3, 1], [3, 1, 1], [2, 1, 2], [1, 2, 2]]
                .iter()
                .map(|p| qvec_from_ints(p)),
        )
        .unwrap();
        let triangle = phi_2d(&beta(&[&[1, 2], &[1]], 2)).unwrap();
        assert!(verify_fan_refinement(&trapezoid, &triangle).unwrap());
        for _ in 0..10 {
            let p = random_planar_polytope(&mut rng);
            let q = random_planar_polytope(&mut rng);
            assert!(verify_fan_refinement(&p, &q).unwrap());
        }

        // (c) vertex truncation identity on the cube and the permutohedron
        let cube = Polytope::from_points(
            (0..8).map(|m: i64| qvec_from_ints(&[m & 1, m >> 1 & 1, m >> 2 & 1])),
        )
        .unwrap();
        for v in cube.vertices().iter().take(2).cloned().collect::<Vec<_>>() {
            assert!(vertex_trunc_identity(&cube, &v).unwrap());
        }
        let p3 = permutohedron(3).unwrap().poly;
        for idx in [0usize, 7, 16] {
            let v = p3.vertices()[idx].clone();
            assert!(vertex_trunc_identity(&p3, &v).unwrap());
        }

        // (d) hexagon plus a segment never has 7 facets
        let hexagon = permutohedron(2).unwrap().poly;
        for _ in 0..50 {
            let seg = random_planar_segment(&mut rng);
            let facets = hexagon.minkowski_sum(&seg).unwrap().facets().len();
            assert!(
                facets == 6 || facets == 8,
                "hexagon + segment has {facets} facets"
            );
        }
    });
}

#[test]
fn criterion_9_realisation() {
    criterion(9, "realisation of the nested-set complex", || {
        assert_eq!(enumerate_maximal_1_nested(2).len(), 12);
        assert_eq!(enumerate_maximal_1_nested(3).len(), 120);
        assert!(verify_realises_c(pa21(), 2).unwrap());
        assert!(verify_realises_c(pa31(), 3).unwrap());
    });
}

fn random_polytope(rng: &mut ChaCha8Rng) -> Polytope {
    loop {
        let count = rng.gen_range(3..=7);
        let points: Vec<QVec> = (0..count)
            .map(|_| (0..3).map(|_| rat_int(rng.gen_range(0..=9))).collect())
            .collect();
        if let Ok(p) = Polytope::from_points(points) {
            return p;
        }
    }
}

/// Full-dimensional polygon in a plane of constant coordinate sum.
fn random_planar_polytope(rng: &mut ChaCha8Rng) -> Polytope {
    let total = 12i64;
    loop {
        let count = rng.gen_range(4..=8);
        let points: Vec<QVec> = (0..count)
            .map(|_| {
                let a = rng.gen_range(0..=total);
                let b = rng.gen_range(0..=total - a);
                qvec_from_ints(&[a, b, total - a - b])
            })
            .collect();
        if let Ok(p) = Polytope::from_points(points) {
            if p.dim() == 2 {
                return p;
            }
        }
    }
}

fn random_planar_segment(rng: &mut ChaCha8Rng) -> Polytope {
    let total = 8i64;
    loop {
        let mk = |rng: &mut ChaCha8Rng| {
            let a = rng.gen_range(0..=total);
            let b = rng.gen_range(0..=total - a);
            qvec_from_ints(&[a, b, total - a - b])
        };
        let p = mk(rng);
        let q = mk(rng);
        if p != q {
            return Polytope::from_points(vec![p, q]).unwrap();
        }
    }
}
