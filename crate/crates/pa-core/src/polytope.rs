//! Exact V-/H-representation polytopes.
//!
//! A `Polytope` is stored by its canonically sorted vertex list together
//! with its affine-hull equalities, facet half-spaces and vertex-facet
//! incidence, all computed once at construction by exact double
//! description. Facet normals are stored in a deterministic canonical form
//! reduced modulo the equality span; for polytopes in a `sum x_i = const`
//! hyperplane that form is the subtract-minimum quotient key of the inward
//! normal.

use std::collections::BTreeSet;
use std::time::Instant;

use num_traits::{Signed, Zero};

use crate::affine::{affine_hull, Equalities};
use crate::bits::Bits;
use crate::cone::Cone;
use crate::dd;
use crate::error::{Error, Result};
use crate::halfspace::Halfspace;
use crate::linalg;
use crate::rat::{Int, Rat};
use crate::vec::{
    add_qq, canonical_quotient_key, dot_iq, dot_qq, ivec_to_q, neg_i, ones, primitive_direction,
    sub_qq, IVec, QVec,
};

#[derive(Clone, Debug)]
pub struct Polytope {
    ambient: usize,
    vertices: Vec<QVec>,
    equalities: Equalities,
    facets: Vec<Halfspace>,
    /// Per facet, the set of vertices it is tight on.
    incidence: Vec<Bits>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.vertices == other.vertices
    }
}
impl Eq for Polytope {}

/// Face counts by dimension, `counts[i]` = number of `i`-faces,
/// `i = 0 .. dim-1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FVector(pub Vec<usize>);

impl Polytope {
    /// Convex hull: the exact extreme points of the input.
    pub fn from_points(points: impl IntoIterator<Item = QVec>) -> Result<Polytope> {
        let dedup: BTreeSet<QVec> = points.into_iter().collect();
        let points: Vec<QVec> = dedup.into_iter().collect();
        let first = points.first().ok_or(Error::EmptyInput)?;
        let ambient = first.len();
        if points.iter().any(|p| p.len() != ambient) {
            return Err(Error::DimensionMismatch);
        }
        let (dim, equalities) = affine_hull(&points)?;
        if dim == 0 {
            return Ok(Polytope {
                ambient,
                vertices: points,
                equalities,
                facets: Vec::new(),
                incidence: Vec::new(),
            });
        }

        // Basis of the difference space and exact coordinates within it.
        let origin = points[0].clone();
        let diffs: Vec<QVec> = points[1..].iter().map(|p| sub_qq(p, &origin)).collect();
        let basis: Vec<QVec> = linalg::independent_rows(&diffs)
            .into_iter()
            .map(|i| diffs[i].clone())
            .collect();
        debug_assert_eq!(basis.len(), dim);
        let coord = CoordMap::new(&basis);

        // Dual cone of the lifted points; extreme rays are the facets.
        let rows: Vec<IVec> = points
            .iter()
            .map(|p| {
                let mut u = coord.coords(&sub_qq(p, &origin));
                u.push(Rat::from_integer(1.into()));
                primitive_row(&u)
            })
            .collect();
        let out = dd::extreme_rays(dim + 1, &rows, None)?;
        debug_assert!(
            out.rays
                .iter()
                .all(|r| !r[..dim].iter().all(|x| x.is_zero())),
            "far facet cannot be extreme for a spanning point set"
        );

        // A point is a vertex iff its tight facet normals span the
        // difference space.
        let mut tight_per_point: Vec<Vec<usize>> = vec![Vec::new(); points.len()];
        for (f, z) in out.zero_sets.iter().enumerate() {
            for i in z.iter_ones() {
                tight_per_point[i].push(f);
            }
        }
        let mut vertex_idx = Vec::new();
        for (i, tight) in tight_per_point.iter().enumerate() {
            if tight.len() < dim {
                continue;
            }
            let normals: Vec<QVec> = tight
                .iter()
                .map(|&f| ivec_to_q(&out.rays[f][..dim]))
                .collect();
            if linalg::rank(&normals) == dim {
                vertex_idx.push(i);
            }
        }
        let vertices: Vec<QVec> = vertex_idx.iter().map(|&i| points[i].clone()).collect();

        // Ambient facet half-spaces, canonicalised modulo the equality span.
        let reducer = NormalReducer::new(ambient, &equalities);
        let mut facets: Vec<(Halfspace, Bits)> = Vec::with_capacity(out.rays.len());
        for (f, ray) in out.rays.iter().enumerate() {
            let tight_vertices: Vec<usize> = vertex_idx
                .iter()
                .enumerate()
                .filter(|(_, &pi)| out.zero_sets[f].get(pi))
                .map(|(vi, _)| vi)
                .collect();
            let witness = &vertices[tight_vertices[0]];
            let ambient_normal = coord.pull_back_normal(&basis, &ray[..dim]);
            let h = reducer.canonical_halfspace(&ambient_normal, witness)?;
            debug_assert!(vertices.iter().all(|v| h.contains(v)));
            let bits = Bits::from_indices(vertices.len(), tight_vertices);
            facets.push((h, bits));
        }
        facets.sort_by(|a, b| a.0.cmp(&b.0));
        let (facets, incidence) = facets.into_iter().unzip();

        Ok(Polytope {
            ambient,
            vertices,
            equalities,
            facets,
            incidence,
        })
    }

    /// Exact vertex enumeration of a bounded H-representation.
    pub fn from_hrep(
        ambient: usize,
        equalities: &[(IVec, Rat)],
        halfspaces: &[Halfspace],
    ) -> Result<Polytope> {
        Self::from_hrep_with_deadline(ambient, equalities, halfspaces, None)
    }

    pub fn from_hrep_with_deadline(
        ambient: usize,
        equalities: &[(IVec, Rat)],
        halfspaces: &[Halfspace],
        deadline: Option<Instant>,
    ) -> Result<Polytope> {
        for (a, _) in equalities {
            if a.len() != ambient {
                return Err(Error::DimensionMismatch);
            }
        }
        for h in halfspaces {
            if h.normal.len() != ambient {
                return Err(Error::DimensionMismatch);
            }
        }
        // Parametrise the equality-affine subspace as x0 + N u.
        let eq_rows: Vec<QVec> = equalities.iter().map(|(a, _)| ivec_to_q(a)).collect();
        let eq_rhs: Vec<Rat> = equalities.iter().map(|(_, b)| b.clone()).collect();
        let x0 = if equalities.is_empty() {
            vec![Rat::zero(); ambient]
        } else {
            linalg::solve(&eq_rows, &eq_rhs).ok_or(Error::Infeasible)?
        };
        let null = linalg::nullspace(&eq_rows, ambient);
        let d0 = null.len();

        // Homogenised rows (a~, -b~) plus the ray-at-infinity guard t >= 0.
        let mut rows: Vec<IVec> = Vec::with_capacity(halfspaces.len() + 1);
        for h in halfspaces {
            let a_tilde: QVec = null.iter().map(|nj| dot_iq(&h.normal, nj)).collect();
            let b_tilde = &h.offset - dot_iq(&h.normal, &x0);
            if a_tilde.iter().all(|x| x.is_zero()) {
                if b_tilde.is_positive() {
                    return Err(Error::Infeasible);
                }
                continue;
            }
            let mut row = a_tilde;
            row.push(-b_tilde);
            rows.push(primitive_row(&row));
        }
        let mut t_row = vec![Int::zero(); d0];
        t_row.push(Int::from(1));
        rows.push(t_row);

        let out = dd::extreme_rays(d0 + 1, &rows, deadline).map_err(|e| match e {
            Error::LinealityDirection => Error::Unbounded,
            other => other,
        })?;
        let mut vertices = Vec::new();
        for ray in &out.rays {
            let t = &ray[d0];
            if t.is_zero() {
                return Err(Error::Unbounded);
            }
            debug_assert!(t.is_positive());
            let tq = Rat::from_integer(t.clone());
            let mut x = x0.clone();
            for (j, nj) in null.iter().enumerate() {
                let c = Rat::from_integer(ray[j].clone()) / &tq;
                x = add_qq(&x, &crate::vec::scale_q(&c, nj));
            }
            vertices.push(x);
        }
        if vertices.is_empty() {
            return Err(Error::Infeasible);
        }
        Self::from_points(vertices)
    }

    fn from_parts(
        ambient: usize,
        vertices: Vec<QVec>,
        equalities: Equalities,
        facets: Vec<Halfspace>,
        incidence: Vec<Bits>,
    ) -> Polytope {
        Polytope {
            ambient,
            vertices,
            equalities,
            facets,
            incidence,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.equalities.len()
    }

    pub fn vertices(&self) -> &[QVec] {
        &self.vertices
    }

    pub fn equalities(&self) -> &Equalities {
        &self.equalities
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    /// Vertex set of facet `f` as a bitset over vertex indices.
    pub fn facet_vertices(&self, f: usize) -> &Bits {
        &self.incidence[f]
    }

    pub fn vertex_index(&self, v: &QVec) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    /// Per-vertex sets of tight facets.
    pub fn vertex_facets(&self) -> Vec<Bits> {
        let mut sets = vec![Bits::new(self.facets.len()); self.vertices.len()];
        for (f, inc) in self.incidence.iter().enumerate() {
            for v in inc.iter_ones() {
                sets[v].set(f);
            }
        }
        sets
    }

    pub fn contains_point(&self, x: &QVec) -> bool {
        x.len() == self.ambient
            && self
                .equalities
                .iter()
                .all(|(a, b)| &dot_iq(a, x) == b)
            && self.facets.iter().all(|h| h.contains(x))
    }

    /// Maximum of `<direction, .>` over the polytope.
    pub fn support_value(&self, direction: &QVec) -> Rat {
        self.vertices
            .iter()
            .map(|v| dot_qq(direction, v))
            .max()
            .expect("nonempty polytope")
    }

    /// Vertices attaining the maximum of an integer direction.
    pub fn argmax_vertices(&self, direction: &IVec) -> Vec<usize> {
        let vals: Vec<Rat> = self
            .vertices
            .iter()
            .map(|v| dot_iq(direction, v))
            .collect();
        let max = vals.iter().max().unwrap().clone();
        vals.iter()
            .enumerate()
            .filter(|(_, v)| **v == max)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch);
        }
        let sums = self
            .vertices
            .iter()
            .flat_map(|v| other.vertices.iter().map(move |w| add_qq(v, w)));
        Polytope::from_points(sums)
    }

    pub fn scale(&self, lambda: &Rat) -> Result<Polytope> {
        if !lambda.is_positive() {
            return Err(Error::InvalidParameter("scale factor must be > 0".into()));
        }
        Ok(Polytope::from_parts(
            self.ambient,
            self.vertices
                .iter()
                .map(|v| crate::vec::scale_q(lambda, v))
                .collect(),
            self.equalities
                .iter()
                .map(|(a, b)| (a.clone(), b * lambda))
                .collect(),
            self.facets
                .iter()
                .map(|h| Halfspace {
                    normal: h.normal.clone(),
                    offset: &h.offset * lambda,
                })
                .collect(),
            self.incidence.clone(),
        ))
    }

    pub fn translate(&self, t: &QVec) -> Result<Polytope> {
        if t.len() != self.ambient {
            return Err(Error::DimensionMismatch);
        }
        Ok(Polytope::from_parts(
            self.ambient,
            self.vertices.iter().map(|v| add_qq(v, t)).collect(),
            self.equalities
                .iter()
                .map(|(a, b)| (a.clone(), b + dot_iq(a, t)))
                .collect(),
            self.facets
                .iter()
                .map(|h| Halfspace {
                    normal: h.normal.clone(),
                    offset: &h.offset + dot_iq(&h.normal, t),
                })
                .collect(),
            self.incidence.clone(),
        ))
    }

    /// Edge list from the combinatorial criterion: `(u, v)` is an edge iff
    /// no third vertex lies on every facet common to `u` and `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let vf = self.vertex_facets();
        let n = self.vertices.len();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let common = vf[u].intersection(&vf[v]);
                let blocked = (0..n)
                    .any(|w| w != u && w != v && common.subset_of(&vf[w]));
                if !blocked {
                    edges.push((u, v));
                }
            }
        }
        edges
    }

    /// Intersection with a half-space: vertices on the closed inner side are
    /// kept (touching vertices included), crossed edges contribute their
    /// boundary intersection points.
    pub fn cut_with_halfspace(&self, h: &Halfspace) -> Result<Polytope> {
        if h.normal.len() != self.ambient {
            return Err(Error::DimensionMismatch);
        }
        let vals: Vec<Rat> = self.vertices.iter().map(|v| h.eval(v)).collect();
        if vals.iter().all(|s| !s.is_negative()) {
            return Ok(self.clone());
        }
        if vals.iter().all(|s| s.is_negative()) {
            return Err(Error::EmptyCut);
        }
        let mut points: Vec<QVec> = self
            .vertices
            .iter()
            .zip(&vals)
            .filter(|(_, s)| !s.is_negative())
            .map(|(v, _)| v.clone())
            .collect();
        for (u, v) in self.edges() {
            let (su, sv) = (&vals[u], &vals[v]);
            if su.is_positive() && sv.is_negative() || su.is_negative() && sv.is_positive() {
                // w = (s_u * v - s_v * u) / (s_u - s_v)
                let denom = su - sv;
                let w: QVec = self.vertices[u]
                    .iter()
                    .zip(&self.vertices[v])
                    .map(|(xu, xv)| (su * xv - sv * xu) / &denom)
                    .collect();
                points.push(w);
            }
        }
        Polytope::from_points(points)
    }

    /// Parallel truncation at the face defined by a set of facets. The
    /// cutting normal is the sum of the chosen inward facet normals; the cut
    /// sits at depth `c` strictly between the face and the nearest other
    /// vertex, so `c` must lie in (0, 1).
    pub fn truncate_at_face(
        &self,
        facet_ids: &[usize],
        c: &Rat,
    ) -> Result<(Polytope, Halfspace)> {
        if !(c.is_positive() && c < &Rat::from_integer(1.into())) {
            return Err(Error::InvalidParameter(
                "truncation depth must be in (0,1)".into(),
            ));
        }
        if facet_ids.is_empty() {
            return Err(Error::InvalidFace("no facets selected".into()));
        }
        if facet_ids.iter().any(|&f| f >= self.facets.len()) {
            return Err(Error::InvalidFace("facet id out of range".into()));
        }
        let face = self.face_from_facets(facet_ids);
        if face.is_empty() {
            return Err(Error::InvalidFace("facets have empty intersection".into()));
        }
        let face_points: Vec<QVec> = face.iter().map(|&i| self.vertices[i].clone()).collect();
        let (face_dim, _) = affine_hull(&face_points)?;
        if face_dim + 1 >= self.dim() {
            return Err(Error::InvalidFace(
                "face must be a proper non-facet face".into(),
            ));
        }
        let mut normal = vec![Int::zero(); self.ambient];
        for &f in facet_ids {
            for (x, y) in normal.iter_mut().zip(&self.facets[f].normal) {
                *x += y;
            }
        }
        let on_face = Bits::from_indices(self.vertices.len(), face.iter().copied());
        let m0 = dot_iq(&normal, &face_points[0]);
        debug_assert!(face_points.iter().all(|p| dot_iq(&normal, p) == m0));
        let m1 = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| !on_face.get(*i))
            .map(|(_, v)| dot_iq(&normal, v))
            .min()
            .ok_or_else(|| Error::InvalidFace("face is the whole polytope".into()))?;
        debug_assert!(m1 > m0);
        let offset = &m0 + c * (&m1 - &m0);
        let h = Halfspace::reduced(normal, offset)?;
        Ok((self.cut_with_halfspace(&h)?, h))
    }

    /// True iff every vertex lies on exactly `dim` facets.
    pub fn is_simple(&self) -> bool {
        let d = self.dim();
        self.vertex_facets().iter().all(|s| s.count() == d)
    }

    /// Normal cone at a vertex, generated by the outward normals of the
    /// facets through it, in the quotient modulo the all-ones direction.
    pub fn normal_cone_at_vertex(&self, v: &QVec) -> Result<Cone> {
        let idx = self.vertex_index(v).ok_or(Error::NotAVertex)?;
        self.normal_cone_at(idx)
    }

    pub fn normal_cone_at(&self, idx: usize) -> Result<Cone> {
        let vf = self.vertex_facets();
        let gens = vf[idx]
            .iter_ones()
            .map(|f| neg_i(&self.facets[f].normal));
        Cone::from_generators(self.ambient, gens)
    }

    /// Canonical quotient keys of the outward facet normals; the key scheme
    /// is chosen by the equality span so that two polytopes with the same
    /// span get comparable keys.
    pub fn outward_facet_keys(&self) -> Result<Vec<IVec>> {
        let in_ones_plane = self.equalities.len() == 1 && self.equalities[0].0 == ones(self.ambient);
        self.facets
            .iter()
            .map(|h| {
                if in_ones_plane {
                    h.outward_key()
                } else if self.equalities.is_empty() {
                    Ok(neg_i(&h.normal))
                } else {
                    // General span: stored normals are already reduced modulo
                    // the span, so negation is the canonical outward form.
                    Ok(neg_i(&h.normal))
                }
            })
            .collect()
    }

    /// Normal equivalence via facet keys and vertex-facet incidence: exact
    /// for the polytopes handled here, where vertex data determines the fan.
    pub fn normally_equivalent(&self, other: &Polytope) -> Result<bool> {
        if self.ambient != other.ambient {
            return Ok(false);
        }
        let span_a: Vec<IVec> = self.equalities.iter().map(|(a, _)| a.clone()).collect();
        let span_b: Vec<IVec> = other.equalities.iter().map(|(a, _)| a.clone()).collect();
        if !same_span(&span_a, &span_b, self.ambient) {
            return Ok(false);
        }
        let keys_a = self.outward_facet_keys()?;
        let keys_b = other.outward_facet_keys()?;
        let set_a: BTreeSet<&IVec> = keys_a.iter().collect();
        let set_b: BTreeSet<&IVec> = keys_b.iter().collect();
        if set_a != set_b || keys_a.len() != keys_b.len() {
            return Ok(false);
        }
        Ok(tight_key_family(self, &keys_a) == tight_key_family(other, &keys_b))
    }

    /// Face counts per dimension, faces enumerated as closed intersections
    /// of facet vertex sets.
    pub fn f_vector(&self) -> FVector {
        let dim = self.dim();
        if dim == 0 {
            return FVector(Vec::new());
        }
        let mut faces: BTreeSet<Bits> = self.incidence.iter().cloned().collect();
        let mut frontier: Vec<Bits> = faces.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for f in &frontier {
                for g in &self.incidence {
                    let meet = f.intersection(g);
                    if !meet.is_empty() && !faces.contains(&meet) {
                        faces.insert(meet.clone());
                        next.push(meet);
                    }
                }
            }
            frontier = next;
        }
        let mut counts = vec![0usize; dim];
        for face in &faces {
            let pts: Vec<QVec> = face
                .iter_ones()
                .map(|i| self.vertices[i].clone())
                .collect();
            let (fdim, _) = affine_hull(&pts).expect("nonempty face");
            if fdim < dim {
                counts[fdim] += 1;
            }
        }
        let euler: i64 = counts
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum();
        debug_assert_eq!(euler, 1 - if dim % 2 == 0 { 1 } else { -1 });
        FVector(counts)
    }

    /// Vertex indices tight on every listed facet.
    pub fn face_from_facets(&self, facet_ids: &[usize]) -> Vec<usize> {
        let mut bits = Bits::from_indices(self.vertices.len(), 0..self.vertices.len());
        for &f in facet_ids {
            bits = bits.intersection(&self.incidence[f]);
        }
        bits.iter_ones().collect()
    }

    /// The polytope spanned by a subset of vertices.
    pub fn face_polytope(&self, vertex_ids: &[usize]) -> Result<Polytope> {
        Polytope::from_points(vertex_ids.iter().map(|&i| self.vertices[i].clone()))
    }

    /// Translation sending `self` onto `other`, when one exists.
    pub fn translation_to(&self, other: &Polytope) -> Option<QVec> {
        if self.ambient != other.ambient || self.vertices.len() != other.vertices.len() {
            return None;
        }
        let t = sub_qq(&other.vertices[0], &self.vertices[0]);
        self.vertices
            .iter()
            .zip(&other.vertices)
            .all(|(a, b)| &add_qq(a, &t) == b)
            .then_some(t)
    }
}

fn tight_key_family(p: &Polytope, keys: &[IVec]) -> BTreeSet<BTreeSet<IVec>> {
    p.vertex_facets()
        .iter()
        .map(|vf| vf.iter_ones().map(|f| keys[f].clone()).collect())
        .collect()
}

fn same_span(a: &[IVec], b: &[IVec], width: usize) -> bool {
    let qa: Vec<QVec> = a.iter().map(|v| ivec_to_q(v)).collect();
    let qb: Vec<QVec> = b.iter().map(|v| ivec_to_q(v)).collect();
    let mut ra = qa.clone();
    let mut rb = qb.clone();
    linalg::rref(&mut ra);
    linalg::rref(&mut rb);
    let _ = width;
    ra == rb
}

/// Clears denominators and reduces, preserving direction.
fn primitive_row(v: &[Rat]) -> IVec {
    primitive_direction(v).expect("nonzero row")
}

/// Exact coordinates with respect to a rational basis, via an invertible
/// coordinate submatrix.
struct CoordMap {
    pivot_rows: Vec<usize>,
    inv: Vec<QVec>,
}

impl CoordMap {
    fn new(basis: &[QVec]) -> CoordMap {
        let ambient = basis[0].len();
        let d = basis.len();
        let col_rows: Vec<QVec> = (0..ambient)
            .map(|i| basis.iter().map(|b| b[i].clone()).collect())
            .collect();
        let pivot_rows: Vec<usize> = linalg::independent_rows(&col_rows)
            .into_iter()
            .take(d)
            .collect();
        let m: Vec<QVec> = pivot_rows.iter().map(|&r| col_rows[r].clone()).collect();
        let inv = linalg::invert(&m).expect("pivot submatrix invertible");
        CoordMap { pivot_rows, inv }
    }

    /// u with `sum u_j basis_j = x`, for `x` in the span of the basis.
    fn coords(&self, x: &QVec) -> QVec {
        let rhs: QVec = self.pivot_rows.iter().map(|&r| x[r].clone()).collect();
        self.inv.iter().map(|row| dot_qq(row, &rhs)).collect()
    }

    /// Some ambient normal `a` with `<a, basis_j> = a~_j` for all j.
    fn pull_back_normal(&self, basis: &[QVec], a_tilde: &[Int]) -> QVec {
        let rows: Vec<QVec> = basis.to_vec();
        let rhs: QVec = a_tilde
            .iter()
            .map(|x| Rat::from_integer(x.clone()))
            .collect();
        linalg::solve(&rows, &rhs).expect("full-rank basis system")
    }
}

/// Canonicalises inward facet normals modulo the equality span.
struct NormalReducer {
    ambient: usize,
    ones_plane: bool,
    /// rref basis of the equality span with pivot columns.
    rref_rows: Vec<QVec>,
    pivots: Vec<usize>,
}

impl NormalReducer {
    fn new(ambient: usize, equalities: &Equalities) -> NormalReducer {
        let ones_plane = equalities.len() == 1 && equalities[0].0 == ones(ambient);
        let mut rows: Vec<QVec> = equalities.iter().map(|(a, _)| ivec_to_q(a)).collect();
        let pivots = linalg::rref(&mut rows);
        NormalReducer {
            ambient,
            ones_plane,
            rref_rows: rows,
            pivots,
        }
    }

    fn canonical_halfspace(&self, inward: &QVec, tight_point: &QVec) -> Result<Halfspace> {
        let normal = if self.ones_plane {
            canonical_quotient_key(&primitive_direction(inward)?)?
        } else {
            let mut a = inward.clone();
            for (row, &p) in self.rref_rows.iter().zip(&self.pivots) {
                if !a[p].is_zero() {
                    let f = a[p].clone();
                    for (x, y) in a.iter_mut().zip(row) {
                        *x = &*x - &(&f * y);
                    }
                }
            }
            debug_assert!(!a.iter().all(|x| x.is_zero()), "facet normal in equality span");
            primitive_direction(&a)?
        };
        let _ = self.ambient;
        let offset = dot_iq(&normal, tight_point);
        Halfspace::new(normal, offset)
    }
}
