//! Mechanical verification of the construction: deformation and
//! truncator-summand checks, fan-refinement conditions, realisation of the
//! nested-set complex, and the end-to-end certificate for `PA_{n,c}`.

use std::collections::BTreeSet;
use std::time::Instant;

use num_traits::Signed;

use crate::construct::{
    assemble_pa, assembly_order, n_beta_c, reference_pa_with_deadline, standard_simplex,
    LabeledPolytope,
};
use crate::error::{Error, Result};
use crate::halfspace::Halfspace;
use crate::nested::{enumerate_b1, enumerate_maximal_1_nested, labels_share_vertex, Beta, Block};
use crate::polytope::Polytope;
use crate::rat::{Int, Rat};
use crate::vec::{canonical_quotient_key, ivec_to_q, neg_i, IVec, QVec};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub witness: Option<String>,
}

/// Outcome of `verify_minkowski_realisation`: one entry per check plus the
/// three summary conditions (realisation, sum decomposition, truncator
/// steps).
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub n: usize,
    pub c: Rat,
    pub checks: Vec<CheckResult>,
    pub realises: bool,
    pub sum_decomposition: bool,
    pub truncator_steps: bool,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn truncator_step_count(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.name.starts_with("truncator_step"))
            .count()
    }
}

/// F-deformation test: `p2` against the truncation of `p1` at the given
/// face by the given half-space. Condition (i) asks that every facet
/// direction of `p2` occurs among the truncation's and that the supporting
/// face of `p2` parallel to the cut is normally equivalent to the new
/// facet; condition (ii) asks that the tight hyperplane set of every
/// truncation vertex meets `p2` in a vertex.
pub fn is_f_deformation(
    p2: &Polytope,
    p1: &Polytope,
    face_vertexset: &[QVec],
    trunc_halfspace: &Halfspace,
) -> Result<bool> {
    let beyond: BTreeSet<QVec> = p1
        .vertices()
        .iter()
        .filter(|v| trunc_halfspace.eval(v).is_negative())
        .cloned()
        .collect();
    let face_set: BTreeSet<QVec> = face_vertexset.iter().cloned().collect();
    if beyond != face_set {
        return Err(Error::InvalidFace(
            "half-space does not truncate exactly the given face".into(),
        ));
    }
    let tr = p1.cut_with_halfspace(trunc_halfspace)?;
    let tr_keys = tr.outward_facet_keys()?;
    let p2_keys = p2.outward_facet_keys()?;
    let tr_key_set: BTreeSet<&IVec> = tr_keys.iter().collect();
    if !p2_keys.iter().all(|k| tr_key_set.contains(k)) {
        return Ok(false);
    }

    // (i) second part: the supporting face parallel to the cut.
    let new_key = canonical_quotient_key(&neg_i(&trunc_halfspace.normal))?;
    let Some(new_facet) = tr_keys.iter().position(|k| *k == new_key) else {
        return Ok(false);
    };
    let tr_face = tr.face_polytope(&tr.facet_vertices(new_facet).iter_ones().collect::<Vec<_>>())?;
    let p2_face = {
        let maxima = p2.argmax_vertices(&new_key);
        p2.face_polytope(&maxima)?
    };
    if !p2_face.normally_equivalent(&tr_face)? {
        return Ok(false);
    }

    // (ii) every truncation vertex maps to a vertex of p2 through the
    // supporting hyperplanes with the same directions.
    let argmax_by_key: Vec<Vec<usize>> =
        tr_keys.iter().map(|k| p2.argmax_vertices(k)).collect();
    let tr_vf = tr.vertex_facets();
    let eq_rows: Vec<QVec> = p2
        .equalities()
        .iter()
        .map(|(a, _)| ivec_to_q(a))
        .collect();
    for vf in &tr_vf {
        let tight: Vec<usize> = vf.iter_ones().collect();
        let mut common: Option<BTreeSet<usize>> = None;
        for &f in &tight {
            let s: BTreeSet<usize> = argmax_by_key[f].iter().copied().collect();
            common = Some(match common {
                None => s,
                Some(c) => c.intersection(&s).copied().collect(),
            });
        }
        let common = common.unwrap_or_default();
        if common.len() != 1 {
            return Ok(false);
        }
        let mut rows = eq_rows.clone();
        rows.extend(tight.iter().map(|&f| ivec_to_q(&tr_keys[f])));
        if crate::linalg::rank(&rows) != p2.ambient_dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Truncator-summand test at fixed depth 1/2: the Minkowski sum must be
/// normally equivalent to the parallel truncation at the face spanned by
/// the given vertices.
pub fn check_truncator_step(
    s_prev: &Polytope,
    q: &Polytope,
    face_vertexset: &[QVec],
) -> Result<bool> {
    let ids = defining_facets(s_prev, face_vertexset)?;
    let (tr, _) = s_prev.truncate_at_face(&ids, &Rat::new(Int::from(1), Int::from(2)))?;
    let sum = s_prev.minkowski_sum(q)?;
    sum.normally_equivalent(&tr)
}

/// Facets of `p` tight on all the given vertices; errors unless their
/// intersection is exactly the given vertex set.
fn defining_facets(p: &Polytope, face_vertexset: &[QVec]) -> Result<Vec<usize>> {
    let mut idx = Vec::with_capacity(face_vertexset.len());
    for v in face_vertexset {
        idx.push(p.vertex_index(v).ok_or(Error::NotAVertex)?);
    }
    let ids: Vec<usize> = (0..p.facets().len())
        .filter(|&f| idx.iter().all(|&i| p.facet_vertices(f).get(i)))
        .collect();
    let mut span = p.face_from_facets(&ids);
    span.sort_unstable();
    let mut want = idx.clone();
    want.sort_unstable();
    if span != want {
        return Err(Error::InvalidFace(
            "vertex set is not a face of the polytope".into(),
        ));
    }
    Ok(ids)
}

/// For a simple polytope, summing with the hull of the other vertices is
/// the same (up to translation and scale two) as the midpoint truncation
/// at the vertex.
pub fn vertex_trunc_identity(p: &Polytope, v: &QVec) -> Result<bool> {
    if !p.is_simple() {
        return Err(Error::NotSimple);
    }
    let idx = p.vertex_index(v).ok_or(Error::NotAVertex)?;
    let others: Vec<QVec> = p
        .vertices()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != idx)
        .map(|(_, w)| w.clone())
        .collect();
    let p2 = Polytope::from_points(others.clone())?;
    // Midpoint truncation: replace the vertex by the midpoints of its edges.
    let half = Rat::new(Int::from(1), Int::from(2));
    let mut tr_points = others;
    for (a, b) in p.edges() {
        let other = if a == idx {
            b
        } else if b == idx {
            a
        } else {
            continue;
        };
        tr_points.push(crate::vec::scale_q(
            &half,
            &crate::vec::add_qq(v, &p.vertices()[other]),
        ));
    }
    let tr = Polytope::from_points(tr_points)?;
    let sum = p.minkowski_sum(&p2)?;
    let doubled = tr.scale(&Rat::from_integer(2.into()))?;
    Ok(sum.translation_to(&doubled).is_some())
}

/// Common-refinement conditions for the fan of a Minkowski sum: every
/// vertex cone of the sum is the intersection of vertex cones of the
/// summands, and every full-dimensional pairwise intersection appears as a
/// vertex cone of the sum.
pub fn verify_fan_refinement(p: &Polytope, q: &Polytope) -> Result<bool> {
    let sum = p.minkowski_sum(q)?;
    let full_dim = sum.dim();
    let cones_p: Vec<_> = (0..p.vertices().len())
        .map(|i| p.normal_cone_at(i))
        .collect::<Result<Vec<_>>>()?;
    let cones_q: Vec<_> = (0..q.vertices().len())
        .map(|i| q.normal_cone_at(i))
        .collect::<Result<Vec<_>>>()?;
    let mut hit = vec![false; sum.vertices().len()];
    for (i, u) in p.vertices().iter().enumerate() {
        for (j, v) in q.vertices().iter().enumerate() {
            let meet = cones_p[i].intersect(&cones_q[j])?;
            if meet.dim() != full_dim {
                continue;
            }
            let w = crate::vec::add_qq(u, v);
            let Some(widx) = sum.vertex_index(&w) else {
                return Ok(false);
            };
            if sum.normal_cone_at(widx)? != meet {
                return Ok(false);
            }
            hit[widx] = true;
        }
    }
    Ok(hit.iter().all(|&h| h))
}

/// Realisation test for a labelled polytope: facet count, simplicity, the
/// bijection from maximal 1-nested sets onto vertices through facet
/// intersections, and agreement of the label-adjacency rule with geometry.
pub fn verify_realises_c(pa: &LabeledPolytope<Beta>, n: usize) -> Result<bool> {
    let labels_expected: BTreeSet<Beta> = enumerate_b1(n).into_iter().collect();
    let labels_have: BTreeSet<Beta> = pa.labels.values().cloned().collect();
    if labels_have.len() != pa.labels.len() {
        return Err(Error::Label("duplicate facet labels".into()));
    }
    if !labels_have.is_subset(&labels_expected) {
        return Err(Error::Label("labels outside the label family".into()));
    }
    if pa.poly.facets().len() != labels_expected.len() {
        return Ok(false);
    }
    if !pa.poly.is_simple() {
        return Ok(false);
    }

    // (c) maximal 1-nested sets biject onto vertices via facet meets.
    let facet_of: Vec<usize> = {
        let mut map = Vec::new();
        for beta in &labels_expected {
            match pa.facet_of_label(beta) {
                Some(f) => map.push(f),
                None => return Err(Error::Label(format!("missing facet for {beta:?}"))),
            }
        }
        map
    };
    let beta_list: Vec<&Beta> = labels_expected.iter().collect();
    let facet_by_beta = |b: &Beta| -> usize {
        facet_of[beta_list.binary_search_by(|x| (*x).cmp(b)).unwrap()]
    };
    let mut seen = vec![false; pa.poly.vertices().len()];
    for nested in enumerate_maximal_1_nested(n) {
        let mut meet: Option<crate::bits::Bits> = None;
        for beta in &nested.0 {
            let inc = pa.poly.facet_vertices(facet_by_beta(beta)).clone();
            meet = Some(match meet {
                None => inc,
                Some(m) => m.intersection(&inc),
            });
        }
        let meet = meet.expect("nonempty nested set");
        if meet.count() != 1 {
            return Ok(false);
        }
        let v = meet.iter_ones().next().unwrap();
        if seen[v] {
            return Ok(false);
        }
        seen[v] = true;
    }
    if !seen.iter().all(|&s| s) {
        return Ok(false);
    }

    // (d) label adjacency matches geometric facet adjacency.
    for (i, b1) in beta_list.iter().enumerate() {
        for b2 in beta_list.iter().skip(i + 1) {
            let geometric = !pa
                .poly
                .facet_vertices(facet_by_beta(b1))
                .intersection(pa.poly.facet_vertices(facet_by_beta(b2)))
                .is_empty();
            if geometric != labels_share_vertex(b1, b2, n) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Small deterministic generator for sample directions.
struct XorShift(u64);

impl XorShift {
    fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn small_int(&mut self, bound: i64) -> Int {
        Int::from(self.next_u64() as i64 % bound)
    }
}

/// Builds `PA_{n,c}` with recording and checks the full certificate:
/// realisation of the complex, the exact sum decomposition, one truncator
/// step per recorded summand, and normal equivalence to the reference
/// model (skipped at `n = 4` unless a deadline allows it).
pub fn verify_minkowski_realisation(n: usize, c: &Rat) -> Result<VerificationReport> {
    verify_minkowski_realisation_with_deadline(n, c, None)
}

pub fn verify_minkowski_realisation_with_deadline(
    n: usize,
    c: &Rat,
    reference_deadline: Option<Instant>,
) -> Result<VerificationReport> {
    let (pa, log) = assemble_pa(n, c, true)?;
    let mut checks = Vec::new();

    let realises = verify_realises_c(&pa, n)?;
    checks.push(CheckResult {
        name: "realises_C".into(),
        status: if realises {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        witness: None,
    });

    // Condition (ii): the polytope is the simplex plus one summand per
    // label; checked structurally and by support additivity on the label
    // directions and sampled directions.
    let sum_decomposition = {
        let logged: Vec<Beta> = log.steps.iter().map(|s| s.beta.clone()).collect();
        let structural = logged == assembly_order(n);
        let mut summands: Vec<Polytope> = vec![standard_simplex(&Block::full(n), n)?];
        for beta in enumerate_b1(n) {
            if beta.is_singleton() {
                summands.push(standard_simplex(&beta.union_block(), n)?);
            } else {
                summands.push(n_beta_c(&beta, n, c)?);
            }
        }
        let mut dirs: Vec<QVec> = enumerate_b1(n)
            .iter()
            .map(|b| ivec_to_q(&b.kappa_vec(n)))
            .collect();
        let mut rng = XorShift(0x5eed_0f_9a71);
        for _ in 0..50 {
            dirs.push((0..n + 1).map(|_| Rat::from_integer(rng.small_int(40))).collect());
        }
        structural
            && dirs.iter().all(|d| {
                let total: Rat = summands.iter().map(|s| s.support_value(d)).sum();
                pa.poly.support_value(d) == total
            })
    };
    checks.push(CheckResult {
        name: "sum_decomposition".into(),
        status: if sum_decomposition {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        witness: None,
    });

    let mut truncator_steps = true;
    for (i, step) in log.steps.iter().enumerate() {
        let q = n_beta_c(&step.beta, n, c)?;
        let face: Vec<QVec> = step
            .face_vertices
            .iter()
            .map(|&idx| step.before.vertices()[idx].clone())
            .collect();
        let ok = check_truncator_step(&step.before, &q, &face)?;
        truncator_steps &= ok;
        checks.push(CheckResult {
            name: format!("truncator_step {} beta={:?}", i + 1, step.beta.to_lists()),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            witness: (!ok).then(|| format!("face vertices {:?}", step.face_vertices)),
        });
    }

    // Normal equivalence against the reference model.
    let reference_check = if n <= 3 || reference_deadline.is_some() {
        match reference_pa_with_deadline(n, reference_deadline) {
            Ok(reference) => {
                let eq = pa.poly.normally_equivalent(&reference.poly)?;
                CheckResult {
                    name: "reference_equivalence".into(),
                    status: if eq { CheckStatus::Pass } else { CheckStatus::Fail },
                    witness: None,
                }
            }
            Err(Error::Timeout) => CheckResult {
                name: "reference_equivalence".into(),
                status: CheckStatus::Skipped,
                witness: Some("time budget exceeded".into()),
            },
            Err(e) => return Err(e),
        }
    } else {
        CheckResult {
            name: "reference_equivalence".into(),
            status: CheckStatus::Skipped,
            witness: Some("reference enumeration gated behind the time budget".into()),
        }
    };
    checks.push(reference_check);

    Ok(VerificationReport {
        n,
        c: c.clone(),
        checks,
        realises,
        sum_decomposition,
        truncator_steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{f_beta_and_m, nestohedron_of_beta, permutohedron};
    use num_traits::Zero;
    use crate::rat::{rat, rat_int};
    use crate::vec::qvec_from_ints;

    fn beta(lists: &[&[usize]], n: usize) -> Beta {
        Beta::from_lists(&lists.iter().map(|l| l.to_vec()).collect::<Vec<_>>(), n).unwrap()
    }

    fn trapezoid() -> Polytope {
        Polytope::from_points(
            [[1, 3, 1], [3, 1, 1], [2, 1, 2], [1, 2, 2]]
                .iter()
                .map(|p| qvec_from_ints(p)),
        )
        .unwrap()
    }

    #[test]
    fn truncation_is_a_deformation_of_itself() {
        let t = trapezoid();
        let d = vec![qvec_from_ints(&[1, 2, 2])];
        let ids = defining_facets(&t, &d).unwrap();
        let (tr, h) = t.truncate_at_face(&ids, &rat(1, 2)).unwrap();
        assert!(is_f_deformation(&tr, &t, &d, &h).unwrap());
    }

    #[test]
    fn triangle_is_deformation_of_trapezoid() {
        let t = trapezoid();
        let d = vec![qvec_from_ints(&[1, 2, 2])];
        let ids = defining_facets(&t, &d).unwrap();
        let (_, h) = t.truncate_at_face(&ids, &rat(1, 2)).unwrap();
        let triangle = Polytope::from_points(
            [[1, 3, 1], [3, 1, 1], [2, 1, 2]].iter().map(|p| qvec_from_ints(p)),
        )
        .unwrap();
        assert!(is_f_deformation(&triangle, &t, &d, &h).unwrap());
        // a segment is not a deformation of the trapezoid
        let seg = Polytope::from_points(
            [[1, 3, 1], [3, 1, 1]].iter().map(|p| qvec_from_ints(p)),
        )
        .unwrap();
        assert!(!is_f_deformation(&seg, &t, &d, &h).unwrap());
    }

    #[test]
    fn summand_deformations_for_all_small_labels() {
        for n in [2usize, 3] {
            for b in assembly_order(n) {
                let nest = nestohedron_of_beta(&b, n).unwrap();
                let (_, face) = f_beta_and_m(&b, n).unwrap();
                let ids = defining_facets(&nest, &face).unwrap();
                let (_, h) = nest.truncate_at_face(&ids, &rat(1, 2)).unwrap();
                for c in [rat_int(1), rat(1, 3)] {
                    let q = n_beta_c(&b, n, &c).unwrap();
                    assert!(
                        is_f_deformation(&q, &nest, &face, &h).unwrap(),
                        "deformation fails for {:?} at c={c}",
                        b.to_lists()
                    );
                    assert!(
                        check_truncator_step(&nest, &q, &face).unwrap(),
                        "truncator step fails for {:?} at c={c}",
                        b.to_lists()
                    );
                }
            }
        }
    }

    #[test]
    fn hexagon_plus_triangle_truncates_a_vertex() {
        let hexagon = permutohedron(2).unwrap();
        let tri = crate::construct::phi_2d(&beta(&[&[1, 2], &[1]], 2)).unwrap();
        // vertex common to the facets labelled {{1,2}} and {{1}}
        let v = vec![qvec_from_ints(&[1, 2, 4])];
        assert!(check_truncator_step(&hexagon.poly, &tri, &v).unwrap());
        // a segment is never a truncator summand for the hexagon
        let seg = Polytope::from_points(
            [[0, 2, 0], [2, 0, 0]].iter().map(|p| qvec_from_ints(p)),
        )
        .unwrap();
        for i in 0..6 {
            let v = vec![hexagon.poly.vertices()[i].clone()];
            assert!(!check_truncator_step(&hexagon.poly, &seg, &v).unwrap());
        }
    }

    #[test]
    fn vertex_truncation_identity_on_cube_and_permutohedra() {
        let cube = Polytope::from_points(
            (0..8).map(|m| qvec_from_ints(&[m & 1, m >> 1 & 1, m >> 2 & 1])),
        )
        .unwrap();
        assert!(vertex_trunc_identity(&cube, &qvec_from_ints(&[0, 0, 0])).unwrap());
        let hexagon = permutohedron(2).unwrap().poly;
        for v in hexagon.vertices().to_vec() {
            assert!(vertex_trunc_identity(&hexagon, &v).unwrap());
        }
        let p3 = permutohedron(3).unwrap().poly;
        for v in p3.vertices().iter().step_by(9) {
            assert!(vertex_trunc_identity(&p3, v).unwrap());
        }
        let seg = Polytope::from_points(
            [[1, 3, 1], [3, 1, 1], [2, 1, 2]].iter().map(|p| qvec_from_ints(p)),
        )
        .unwrap();
        assert!(vertex_trunc_identity(&seg, &qvec_from_ints(&[9, 9, 9])).is_err());
    }

    #[test]
    fn fan_refinement_examples() {
        let t = trapezoid();
        assert!(verify_fan_refinement(&t, &t).unwrap());
        let tri = Polytope::from_points(
            [[1, 3, 1], [3, 1, 1], [2, 1, 2]].iter().map(|p| qvec_from_ints(p)),
        )
        .unwrap();
        assert!(verify_fan_refinement(&t, &tri).unwrap());
        let hexagon = permutohedron(2).unwrap().poly;
        let summand = crate::construct::n_beta(&beta(&[&[1, 2], &[1]], 2), 2).unwrap();
        assert!(verify_fan_refinement(&hexagon, &summand).unwrap());
    }

    #[test]
    fn realisation_small() {
        let pa = crate::construct::reference_pa(2).unwrap();
        assert!(verify_realises_c(&pa, 2).unwrap());
        let (built, _) = assemble_pa(2, &rat_int(1), false).unwrap();
        assert!(verify_realises_c(&built, 2).unwrap());
        // hexagon with forced labels fails on the facet count
        let hexagon = permutohedron(2).unwrap();
        assert!(!verify_realises_c(&hexagon, 2).unwrap());
    }

    #[test]
    fn full_verification_n2() {
        let report = verify_minkowski_realisation(2, &rat_int(1)).unwrap();
        assert!(report.pass(), "report: {:#?}", report.checks);
        assert_eq!(report.truncator_step_count(), 6);
        assert!(report.realises && report.sum_decomposition && report.truncator_steps);
    }

    #[test]
    fn cone_bookkeeping_for_planar_deformations() {
        // Every vertex cone of the deformed summand contains at least one
        // truncation-vertex cone, and at most one at a vertex on the cut.
        let n = 2;
        for b in assembly_order(n) {
            let nest = nestohedron_of_beta(&b, n).unwrap();
            let (_, face) = f_beta_and_m(&b, n).unwrap();
            let ids = defining_facets(&nest, &face).unwrap();
            let (tr, h) = nest.truncate_at_face(&ids, &rat(1, 2)).unwrap();
            let p2 = crate::construct::n_beta(&b, n).unwrap();
            for i in 0..p2.vertices().len() {
                let cone2 = p2.normal_cone_at(i).unwrap();
                let mut contained = 0usize;
                let mut on_cut = 0usize;
                for j in 0..tr.vertices().len() {
                    let conet = tr.normal_cone_at(j).unwrap();
                    if cone2.contains_cone(&conet) {
                        contained += 1;
                        if h.eval(&tr.vertices()[j]).is_zero() {
                            on_cut += 1;
                        }
                    }
                }
                assert!(contained >= 1);
                assert!(on_cut <= 1);
            }
        }
    }
}
