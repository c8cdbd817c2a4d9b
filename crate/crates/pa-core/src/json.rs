//! Wire formats: JSON for polytopes, labels, assembly logs and
//! verification reports, plus OFF and inequality text exports.
//!
//! Rationals cross the boundary as strings `"p/q"`/`"p"`; integer vectors
//! as JSON arrays of integers. Output is deterministic byte-for-byte for
//! identical inputs.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::affine::Equalities;
use crate::construct::{AssemblyLog, LabeledPolytope};
use crate::error::{Error, Result};
use crate::halfspace::Halfspace;
use crate::nested::Beta;
use crate::polytope::Polytope;
use crate::rat::{format_rat, parse_rat, Int, Rat};
use crate::vec::{IVec, QVec};
use crate::verify::{CheckStatus, VerificationReport};

#[derive(Serialize, Deserialize)]
struct HalfspaceWire {
    normal: Vec<i64>,
    offset: String,
}

#[derive(Serialize, Deserialize)]
struct PolytopeWire {
    ambient_dim: usize,
    vertices: Vec<Vec<String>>,
    /// Derived blocks; the vertex list is authoritative on input.
    #[serde(default)]
    equalities: Vec<HalfspaceWire>,
    #[serde(default)]
    facets: Vec<HalfspaceWire>,
}

fn ivec_to_wire(v: &IVec) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| {
            x.to_i64()
                .ok_or_else(|| Error::Parse("integer out of i64 range".into()))
        })
        .collect()
}

fn halfspace_to_wire(normal: &IVec, offset: &Rat) -> Result<HalfspaceWire> {
    Ok(HalfspaceWire {
        normal: ivec_to_wire(normal)?,
        offset: format_rat(offset),
    })
}

pub fn polytope_to_json(p: &Polytope) -> Result<String> {
    let wire = PolytopeWire {
        ambient_dim: p.ambient_dim(),
        vertices: p
            .vertices()
            .iter()
            .map(|v| v.iter().map(format_rat).collect())
            .collect(),
        equalities: p
            .equalities()
            .iter()
            .map(|(a, b)| halfspace_to_wire(a, b))
            .collect::<Result<_>>()?,
        facets: p
            .facets()
            .iter()
            .map(|h| halfspace_to_wire(&h.normal, &h.offset))
            .collect::<Result<_>>()?,
    };
    serde_json::to_string_pretty(&wire).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses a polytope file; the vertex list is authoritative and the
/// canonical representation is rebuilt from it.
pub fn polytope_from_json(s: &str) -> Result<Polytope> {
    let wire: PolytopeWire =
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let mut vertices: Vec<QVec> = Vec::with_capacity(wire.vertices.len());
    for v in &wire.vertices {
        if v.len() != wire.ambient_dim {
            return Err(Error::Parse("vertex has wrong dimension".into()));
        }
        vertices.push(v.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?);
    }
    Polytope::from_points(vertices)
}

pub fn beta_to_json(beta: &Beta) -> String {
    serde_json::to_string(&beta.to_lists()).expect("serialisable")
}

pub fn beta_from_json(s: &str, n: usize) -> Result<Beta> {
    let lists: Vec<Vec<usize>> =
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    Beta::from_lists(&lists, n)
}

pub fn report_to_json(report: &VerificationReport) -> String {
    let checks: Vec<serde_json::Value> = report
        .checks
        .iter()
        .map(|c| {
            serde_json::json!({
                "name": c.name,
                "status": match c.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "fail",
                    CheckStatus::Skipped => "skipped",
                },
                "witness": c.witness,
            })
        })
        .collect();
    serde_json::to_string_pretty(&serde_json::json!({
        "n": report.n,
        "c": format_rat(&report.c),
        "checks": checks,
        "conditions": {
            "realises_complex": report.realises,
            "sum_decomposition": report.sum_decomposition,
            "truncator_steps": report.truncator_steps,
        },
        "pass": report.pass(),
    }))
    .expect("serialisable")
}

pub fn assembly_log_to_json(log: &AssemblyLog) -> Result<String> {
    let steps: Vec<serde_json::Value> = log
        .steps
        .iter()
        .map(|s| {
            Ok(serde_json::json!({
                "beta": s.beta.to_lists(),
                "face_vertices": s.face_vertices,
                "halfspace": {
                    "normal": ivec_to_wire(&s.halfspace.normal)?,
                    "offset": format_rat(&s.halfspace.offset),
                },
                "f_before": s.before.f_vector().0,
                "f_after": s.after.f_vector().0,
            }))
        })
        .collect::<Result<_>>()?;
    serde_json::to_string_pretty(&serde_json::json!({ "steps": steps }))
        .map_err(|e| Error::Parse(e.to_string()))
}

pub fn labeled_to_json(pa: &LabeledPolytope<Beta>) -> Result<String> {
    let labels: Vec<serde_json::Value> = pa
        .labels
        .iter()
        .map(|(key, beta)| {
            Ok(serde_json::json!({
                "facet_normal": ivec_to_wire(key)?,
                "label": beta.to_lists(),
            }))
        })
        .collect::<Result<_>>()?;
    let poly: serde_json::Value = serde_json::from_str(&polytope_to_json(&pa.poly)?)
        .map_err(|e| Error::Parse(e.to_string()))?;
    serde_json::to_string_pretty(&serde_json::json!({
        "polytope": poly,
        "labels": labels,
    }))
    .map_err(|e| Error::Parse(e.to_string()))
}

/// Facet system as text: one `==` line per equality, one `>=` line per
/// facet, each `[coefficients] (in)equality offset`.
pub fn ineq_export(equalities: &Equalities, facets: &[Halfspace]) -> String {
    let mut out = String::new();
    for (a, b) in equalities {
        out.push_str(&format!("{:?} == {}\n", wire_or_big(a), format_rat(b)));
    }
    for h in facets {
        out.push_str(&format!(
            "{:?} >= {}\n",
            wire_or_big(&h.normal),
            format_rat(&h.offset)
        ));
    }
    out
}

fn wire_or_big(v: &IVec) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("desk-scale integer")).collect()
}

/// OFF export for 3-dimensional polytopes in `R^4` lying in a hyperplane
/// `sum x_i = const`. Points are projected by the fixed integer matrix
/// `u_i = x_i - x_4 (i = 1..3)`, which is injective on such a hyperplane;
/// coordinates are emitted as floating decimals for external viewers only.
pub fn off_export(p: &Polytope) -> Result<String> {
    if p.ambient_dim() != 4 || p.dim() != 3 {
        return Err(Error::InvalidParameter(
            "OFF export requires a 3-dimensional polytope in R^4".into(),
        ));
    }
    let project = |v: &QVec| -> [f64; 3] {
        let f = |r: &Rat| r.to_f64().expect("finite rational");
        [
            f(&(&v[0] - &v[3])),
            f(&(&v[1] - &v[3])),
            f(&(&v[2] - &v[3])),
        ]
    };
    let projected: Vec<[f64; 3]> = p.vertices().iter().map(project).collect();
    let centroid = {
        let mut c = [0.0f64; 3];
        for q in &projected {
            for i in 0..3 {
                c[i] += q[i];
            }
        }
        c.map(|x| x / projected.len() as f64)
    };

    let edges = p.edges();
    let mut faces = Vec::new();
    for f in 0..p.facets().len() {
        let members: Vec<usize> = p.facet_vertices(f).iter_ones().collect();
        let cycle = walk_polygon(&members, &edges)?;
        faces.push(orient_outward(cycle, &projected, &centroid));
    }

    let mut out = String::new();
    out.push_str("OFF\n");
    out.push_str(&format!("{} {} 0\n", projected.len(), faces.len()));
    for q in &projected {
        out.push_str(&format!("{} {} {}\n", q[0], q[1], q[2]));
    }
    for face in &faces {
        out.push_str(&face.len().to_string());
        for v in face {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Orders the vertices of a polygonal facet along its boundary cycle.
fn walk_polygon(members: &[usize], edges: &[(usize, usize)]) -> Result<Vec<usize>> {
    let in_face = |v: usize| members.contains(&v);
    let mut adjacency: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for &(a, b) in edges {
        if in_face(a) && in_face(b) {
            adjacency.entry(a).or_default().push(b);
            adjacency.entry(b).or_default().push(a);
        }
    }
    let start = members[0];
    let mut cycle = vec![start];
    let mut prev = None;
    let mut cur = start;
    loop {
        let next = adjacency
            .get(&cur)
            .and_then(|ns| ns.iter().find(|&&n| Some(n) != prev).copied())
            .ok_or_else(|| Error::InvalidFace("facet boundary is not a cycle".into()))?;
        if next == start {
            break;
        }
        cycle.push(next);
        prev = Some(cur);
        cur = next;
        if cycle.len() > members.len() {
            return Err(Error::InvalidFace("facet boundary is not a cycle".into()));
        }
    }
    if cycle.len() != members.len() {
        return Err(Error::InvalidFace("facet boundary is not a cycle".into()));
    }
    Ok(cycle)
}

fn orient_outward(
    mut cycle: Vec<usize>,
    projected: &[[f64; 3]],
    centroid: &[f64; 3],
) -> Vec<usize> {
    let sub = |a: &[f64; 3], b: &[f64; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    let p0 = projected[cycle[0]];
    let e1 = sub(&projected[cycle[1]], &p0);
    let e2 = sub(&projected[cycle[2]], &p0);
    let normal = [
        e1[1] * e2[2] - e1[2] * e2[1],
        e1[2] * e2[0] - e1[0] * e2[2],
        e1[0] * e2[1] - e1[1] * e2[0],
    ];
    let outward = sub(&p0, centroid);
    if normal[0] * outward[0] + normal[1] * outward[1] + normal[2] * outward[2] < 0.0 {
        cycle.reverse();
    }
    cycle
}

pub fn to_i64_checked(x: &Int) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Parse("integer out of i64 range".into()))
}
