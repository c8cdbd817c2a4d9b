//! The polytope constructions: standard simplices, permutohedra,
//! nestohedra of the `B_beta` building sets, the truncated summand family
//! `N_beta^c`, the reference half-space model `PA_n`, and the assembly of
//! `PA_{n,c}` as a Minkowski sum with one truncator summand per
//! non-singleton label.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::Zero;

use crate::affine::Equalities;
use crate::error::{Error, Result};
use crate::halfspace::Halfspace;
use crate::nested::{
    b_beta, enumerate_b1, is_building_set, Beta, Block, BuildingSet,
};
use crate::polytope::Polytope;
use crate::rat::{int_pow, Int, Rat};
use crate::vec::{dot_iq, ivec_to_q, ones, unit_q, IVec, QVec};

/// A polytope with a bijective facet labelling, keyed by the stored
/// (canonical inward) facet normal.
#[derive(Clone, Debug)]
pub struct LabeledPolytope<L> {
    pub poly: Polytope,
    pub labels: BTreeMap<IVec, L>,
}

impl<L: Clone + PartialEq> LabeledPolytope<L> {
    pub fn new(poly: Polytope, labels: BTreeMap<IVec, L>) -> Result<Self> {
        if labels.len() != poly.facets().len() {
            return Err(Error::Label(format!(
                "{} labels for {} facets",
                labels.len(),
                poly.facets().len()
            )));
        }
        for h in poly.facets() {
            if !labels.contains_key(&h.normal) {
                return Err(Error::Label(format!("unlabelled facet {:?}", h.normal)));
            }
        }
        Ok(LabeledPolytope { poly, labels })
    }

    pub fn label_of_facet(&self, f: usize) -> &L {
        &self.labels[&self.poly.facets()[f].normal]
    }

    pub fn facet_of_label(&self, label: &L) -> Option<usize> {
        let (key, _) = self.labels.iter().find(|(_, l)| *l == label)?;
        self.poly
            .facets()
            .iter()
            .position(|h| &h.normal == key)
    }
}

/// `conv{ e_i : i in I }` inside `R^{n+1}`.
pub fn standard_simplex(block: &Block, n: usize) -> Result<Polytope> {
    if block.is_empty() || block.0.iter().any(|&i| !(1..=n + 1).contains(&i)) {
        return Err(Error::InvalidParameter("block out of range".into()));
    }
    Polytope::from_points(block.0.iter().map(|&i| unit_q(n + 1, i - 1)))
}

/// The permutohedron as the sum of all standard simplices, with each facet
/// labelled by the singleton label of its block.
pub fn permutohedron(n: usize) -> Result<LabeledPolytope<Beta>> {
    if n < 1 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let full = Block::full(n);
    let mut sum = standard_simplex(&full, n)?;
    let mut proper_blocks = Vec::new();
    for mask in 1u32..(1 << (n + 1)) {
        let b = Block::new((1..=n + 1).filter(|&v| mask >> (v - 1) & 1 == 1));
        if b.len() <= n {
            proper_blocks.push(b);
        }
    }
    for b in &proper_blocks {
        sum = sum.minkowski_sum(&standard_simplex(b, n)?)?;
    }
    let labels: BTreeMap<IVec, Beta> = proper_blocks
        .iter()
        .map(|b| Ok((b.indicator(n), Beta::singleton(b.clone(), n)?)))
        .collect::<Result<_>>()?;
    LabeledPolytope::new(sum, labels)
}

/// Minkowski sum of the standard simplices of a connected building set
/// containing the ground set.
pub fn nestohedron(building: &BuildingSet) -> Result<Polytope> {
    let n = building.ground - 1;
    if !is_building_set(&building.blocks, n) || !building.contains(&Block::full(n)) {
        return Err(Error::InvalidParameter(
            "not a building set containing the ground set".into(),
        ));
    }
    let mut blocks = building.blocks.iter();
    let first = blocks.next().expect("nonempty building set");
    let mut sum = standard_simplex(first, n)?;
    for b in blocks {
        sum = sum.minkowski_sum(&standard_simplex(b, n)?)?;
    }
    Ok(sum)
}

pub fn nestohedron_of_beta(beta: &Beta, n: usize) -> Result<Polytope> {
    nestohedron(&b_beta(beta, n)?)
}

/// H-representation of the nestohedron of `B_beta`: total sum equal to the
/// block count, and one inequality per non-ground block with offset the
/// number of blocks it contains.
pub fn nestohedron_hrep(beta: &Beta, n: usize) -> Result<(Equalities, Vec<Halfspace>)> {
    let building = b_beta(beta, n)?;
    let full = Block::full(n);
    let total = Rat::from_integer(Int::from(building.blocks.len() as i64));
    let eqs = vec![(ones(n + 1), total)];
    let mut halfspaces = Vec::new();
    for a in building.blocks.iter().filter(|b| **b != full) {
        let count = building
            .blocks
            .iter()
            .filter(|b| b.is_subset(a))
            .count() as i64;
        halfspaces.push(Halfspace::new(
            a.indicator(n),
            Rat::from_integer(Int::from(count)),
        )?);
    }
    halfspaces.sort();
    Ok((eqs, halfspaces))
}

/// The linear functional attached to a label, evaluated at a point.
pub fn kappa_beta(beta: &Beta, x: &QVec) -> Rat {
    dot_iq(&beta.kappa_vec(x.len() - 1), x)
}

/// Minimum of the label functional over the nestohedron vertices together
/// with the minimising face, which equals the intersection of the facets
/// labelled by the chain blocks.
pub fn f_beta_and_m(beta: &Beta, n: usize) -> Result<(Rat, Vec<QVec>)> {
    let nest = nestohedron_of_beta(beta, n)?;
    f_beta_on(&nest, beta, n)
}

fn f_beta_on(nest: &Polytope, beta: &Beta, n: usize) -> Result<(Rat, Vec<QVec>)> {
    let kappa = beta.kappa_vec(n);
    let vals: Vec<Rat> = nest.vertices().iter().map(|v| dot_iq(&kappa, v)).collect();
    let m = vals.iter().min().cloned().expect("nonempty");
    let face = nest
        .vertices()
        .iter()
        .zip(&vals)
        .filter(|(_, val)| **val == m)
        .map(|(v, _)| v.clone())
        .collect();
    Ok((m, face))
}

/// Hull of the nestohedron vertices with strict excess of the label
/// functional over its minimum.
pub fn n_beta(beta: &Beta, n: usize) -> Result<Polytope> {
    let nest = nestohedron_of_beta(beta, n)?;
    let (m, _) = f_beta_on(&nest, beta, n)?;
    let kappa = beta.kappa_vec(n);
    Polytope::from_points(
        nest.vertices()
            .iter()
            .filter(|v| dot_iq(&kappa, v) > m)
            .cloned(),
    )
}

/// The truncated summand family: the nestohedron cut by
/// `kappa_beta >= m_beta + c`. For `c` in (0,1) this is a parallel
/// truncation at the minimising face; at `c = 1` it is the strict-excess
/// hull.
pub fn n_beta_c(beta: &Beta, n: usize, c: &Rat) -> Result<Polytope> {
    if !(c > &Rat::zero() && c <= &Rat::from_integer(1.into())) {
        return Err(Error::InvalidParameter("c must lie in (0, 1]".into()));
    }
    let nest = nestohedron_of_beta(beta, n)?;
    let (m, _) = f_beta_on(&nest, beta, n)?;
    let h = Halfspace::reduced(beta.kappa_vec(n), &m + c)?;
    nest.cut_with_halfspace(&h)
}

/// The explicit planar summand for a two-block label over ground set [3]:
/// the triangle `conv{2 e_{i1}, e_{i2} + e_{i3}, 2 e_{i2}}`.
pub fn phi_2d(beta: &Beta) -> Result<Polytope> {
    if beta.k() != 2 || beta.l() != 0 || beta.beta_max().len() != 2 {
        return Err(Error::InvalidParameter(
            "expected a two-element chain over a pair".into(),
        ));
    }
    let i2 = *beta.beta_min().0.iter().next().unwrap();
    let i1 = *beta
        .beta_max()
        .0
        .iter()
        .find(|&&v| v != i2)
        .unwrap();
    if i1 > 3 || i2 > 3 {
        return Err(Error::InvalidParameter("defined for ground set [3]".into()));
    }
    let i3 = (1..=3).find(|v| *v != i1 && *v != i2).unwrap();
    let two = |i: usize| crate::vec::scale_q(&Rat::from_integer(2.into()), &unit_q(3, i - 1));
    let mid = crate::vec::add_qq(&unit_q(3, i2 - 1), &unit_q(3, i3 - 1));
    Polytope::from_points(vec![two(i1), mid, two(i2)])
}

/// Exact offset of the reference half-space model for chain parameters
/// `(k, l)`.
pub fn reference_kappa(n: usize, k: usize, l: usize) -> Result<Rat> {
    if !(1 <= k && k + l <= n) {
        return Err(Error::InvalidParameter("need 1 <= k <= k+l <= n".into()));
    }
    let half = Rat::new(
        int_pow(3, (k + l + 1) as u32) - int_pow(3, (l + 1) as u32),
        Int::from(2),
    );
    let corr = Rat::new(
        int_pow(3, k as u32) - Int::from(3 * k as i64),
        int_pow(3, n as u32) - Int::from(n as i64 + 1),
    );
    Ok(half + corr)
}

/// The reference model: intersection of the labelled half-spaces with the
/// hyperplane `sum x_i = 3^{n+1}`, with facets labelled by their chains.
pub fn reference_pa(n: usize) -> Result<LabeledPolytope<Beta>> {
    reference_pa_with_deadline(n, None)
}

pub fn reference_pa_with_deadline(
    n: usize,
    deadline: Option<Instant>,
) -> Result<LabeledPolytope<Beta>> {
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2".into()));
    }
    let labels_list = enumerate_b1(n);
    let mut halfspaces = Vec::with_capacity(labels_list.len());
    let mut labels = BTreeMap::new();
    for beta in &labels_list {
        let normal = beta.kappa_vec(n);
        let offset = reference_kappa(n, beta.k(), beta.l())?;
        halfspaces.push(Halfspace::new(normal.clone(), offset)?);
        labels.insert(normal, beta.clone());
    }
    let eqs = vec![(
        ones(n + 1),
        Rat::from_integer(int_pow(3, (n + 1) as u32)),
    )];
    let poly = Polytope::from_hrep_with_deadline(n + 1, &eqs, &halfspaces, deadline)?;
    LabeledPolytope::new(poly, labels)
}

/// One recorded assembly step: the summand's label, the face of the
/// partial sum that it truncates, the cutting half-space at depth 1/2, and
/// the partial sums before and after.
#[derive(Clone, Debug)]
pub struct AssemblyStep {
    pub beta: Beta,
    pub face_vertices: Vec<usize>,
    pub halfspace: Halfspace,
    pub before: Polytope,
    pub after: Polytope,
}

#[derive(Clone, Debug, Default)]
pub struct AssemblyLog {
    pub steps: Vec<AssemblyStep>,
}

/// Non-singleton labels in assembly order: non-increasing chain length,
/// ties broken by the canonical label order.
pub fn assembly_order(n: usize) -> Vec<Beta> {
    let mut order: Vec<Beta> = enumerate_b1(n)
        .into_iter()
        .filter(|b| !b.is_singleton())
        .collect();
    order.sort_by(|a, b| b.k().cmp(&a.k()).then_with(|| a.cmp(b)));
    order
}

/// Builds `PA_{n,c}` by adding the truncated summand of every
/// non-singleton label to the permutohedron, largest chains first,
/// checking after each step that exactly one new facet appeared and
/// carrying the facet labels along.
pub fn assemble_pa(n: usize, c: &Rat, record: bool) -> Result<(LabeledPolytope<Beta>, AssemblyLog)> {
    assemble_pa_with_order(n, c, &assembly_order(n), record)
}

/// Assembly with an explicit summand order; the order must list each
/// non-singleton label exactly once.
pub fn assemble_pa_with_order(
    n: usize,
    c: &Rat,
    order: &[Beta],
    record: bool,
) -> Result<(LabeledPolytope<Beta>, AssemblyLog)> {
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2".into()));
    }
    if !(c > &Rat::zero() && c <= &Rat::from_integer(1.into())) {
        return Err(Error::InvalidParameter("c must lie in (0, 1]".into()));
    }
    {
        let mut sorted = order.to_vec();
        sorted.sort();
        sorted.dedup();
        let expect: Vec<Beta> = enumerate_b1(n)
            .into_iter()
            .filter(|b| !b.is_singleton())
            .collect();
        if sorted != expect {
            return Err(Error::InvalidParameter(
                "order must cover the non-singleton labels exactly once".into(),
            ));
        }
    }

    let mut current = permutohedron(n)?;
    let mut log = AssemblyLog::default();
    for beta in order {
        let summand = n_beta_c(beta, n, c)?;

        // Face of the partial sum to be truncated: the intersection of the
        // facets labelled by the singleton labels of the chain blocks.
        let mut facet_ids = Vec::new();
        for block in beta.chain() {
            let singleton = Beta::singleton(block.clone(), n)?;
            let id = current.facet_of_label(&singleton).ok_or_else(|| {
                Error::Label(format!("missing singleton facet for {block:?}"))
            })?;
            facet_ids.push(id);
        }
        let face = current.poly.face_from_facets(&facet_ids);
        if face.is_empty() {
            return Err(Error::InvalidFace(
                "summand face is empty in the partial sum".into(),
            ));
        }
        let halfspace = if record {
            Some(truncation_halfspace(&current.poly, &facet_ids)?)
        } else {
            None
        };

        let next = current.poly.minkowski_sum(&summand)?;

        // Exactly the old facet normals plus the functional of this label.
        let kappa = beta.kappa_vec(n);
        let mut labels = current.labels.clone();
        if labels.insert(kappa.clone(), beta.clone()).is_some() {
            return Err(Error::Label(format!("duplicate facet key {kappa:?}")));
        }
        let next_keys: Vec<&IVec> = next.facets().iter().map(|h| &h.normal).collect();
        if next_keys.len() != labels.len()
            || next_keys.iter().any(|k| !labels.contains_key(*k))
        {
            return Err(Error::Label(format!(
                "facet keys after adding {beta:?} do not extend the previous step by its functional"
            )));
        }

        if record {
            log.steps.push(AssemblyStep {
                beta: beta.clone(),
                face_vertices: face,
                halfspace: halfspace.unwrap(),
                before: current.poly.clone(),
                after: next.clone(),
            });
        }
        current = LabeledPolytope::new(next, labels)?;
    }
    Ok((current, log))
}

/// The half-space of the depth-1/2 parallel truncation at the face cut out
/// by the given facets, without performing the cut.
fn truncation_halfspace(p: &Polytope, facet_ids: &[usize]) -> Result<Halfspace> {
    let face = p.face_from_facets(facet_ids);
    if face.is_empty() {
        return Err(Error::InvalidFace("empty face".into()));
    }
    let mut normal = vec![Int::from(0); p.ambient_dim()];
    for &f in facet_ids {
        for (x, y) in normal.iter_mut().zip(&p.facets()[f].normal) {
            *x += y;
        }
    }
    let face_bits: Vec<bool> = {
        let mut v = vec![false; p.vertices().len()];
        for &i in &face {
            v[i] = true;
        }
        v
    };
    let m0 = dot_iq(&normal, &p.vertices()[face[0]]);
    let m1 = p
        .vertices()
        .iter()
        .enumerate()
        .filter(|(i, _)| !face_bits[*i])
        .map(|(_, v)| dot_iq(&normal, v))
        .min()
        .ok_or_else(|| Error::InvalidFace("face is the whole polytope".into()))?;
    let offset = &m0 + (&m1 - &m0) / Rat::from_integer(2.into());
    Halfspace::reduced(normal, offset)
}

/// Sum of the coordinates of every vertex (all equal for these polytopes).
pub fn coordinate_total(p: &Polytope) -> Rat {
    ivec_to_q(&ones(p.ambient_dim()))
        .iter()
        .zip(&p.vertices()[0])
        .map(|(a, b)| a * b)
        .sum()
}
