//! Wire formats: parsing quivers, algebra elements, matrices, module
//! presentations and representations from JSON, and rendering every
//! report type back out. Output goes through serde_json values whose
//! maps are ordered, so serialization is deterministic.

use crate::abelian::{FGAbelianGroup, UnitCoker};
use crate::algebra::{AlgebraElement, AlgebraMatrix};
use crate::blanchfield::TorsionReport;
use crate::ktheory::{BlaSummary, KReport};
use crate::quiver::{Path, Quiver};
use crate::rep::{GradedVec, Rep, Side};
use crate::scalar::FieldSpec;
use crate::weak::{BasisGen, FilteredFreeModule, ModuleVector, Monomial, ProjectiveSplit};
use crate::{Error, Result};
use serde::Deserialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

fn bad(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

#[derive(Deserialize)]
struct QuiverJson {
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<ArrowJson>,
}

#[derive(Deserialize)]
struct ArrowJson {
    name: String,
    src: String,
    dst: String,
}

pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let qj: QuiverJson =
        serde_json::from_str(text).map_err(|e| bad(format!("quiver json: {e}")))?;
    Quiver::new(
        qj.vertices,
        qj.arrows.into_iter().map(|a| (a.name, a.src, a.dst)).collect(),
    )
}

#[derive(Deserialize)]
struct PathJson {
    base: String,
    #[serde(default)]
    arrows: Vec<String>,
}

#[derive(Deserialize)]
struct TermJson {
    path: PathJson,
    coeff: String,
}

#[derive(Deserialize)]
struct ElementJson {
    #[serde(default)]
    terms: Vec<TermJson>,
}

fn path_from_json(pj: &PathJson, q: &Quiver) -> Result<Path> {
    let base = q
        .vertex(&pj.base)
        .ok_or_else(|| bad(format!("unknown vertex {:?}", pj.base)))?;
    if pj.arrows.is_empty() {
        return Ok(Path::trivial(base));
    }
    let arrows: Vec<usize> = pj
        .arrows
        .iter()
        .map(|n| q.arrow_by_name(n).ok_or_else(|| bad(format!("unknown arrow {n:?}"))))
        .collect::<Result<_>>()?;
    let p = Path::from_arrows(q, arrows)?;
    if p.source(q) != base {
        return Err(bad(format!("path does not start at {:?}", pj.base)));
    }
    Ok(p)
}

fn element_from_json(ej: &ElementJson, field: FieldSpec, q: &Quiver) -> Result<AlgebraElement> {
    let mut terms = Vec::with_capacity(ej.terms.len());
    for t in &ej.terms {
        terms.push((path_from_json(&t.path, q)?, field.parse(&t.coeff)?));
    }
    let x = AlgebraElement::from_terms(field, terms);
    x.validate(q)?;
    Ok(x)
}

pub fn parse_element(text: &str, field: FieldSpec, q: &Quiver) -> Result<AlgebraElement> {
    let ej: ElementJson =
        serde_json::from_str(text).map_err(|e| bad(format!("element json: {e}")))?;
    element_from_json(&ej, field, q)
}

#[derive(Deserialize)]
struct MatrixJson {
    row_types: Vec<String>,
    col_types: Vec<String>,
    entries: Vec<Vec<ElementJson>>,
}

pub fn parse_matrix(text: &str, field: FieldSpec, q: &Quiver) -> Result<AlgebraMatrix> {
    let mj: MatrixJson =
        serde_json::from_str(text).map_err(|e| bad(format!("matrix json: {e}")))?;
    let lookup = |names: &[String]| -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| q.vertex(n).ok_or_else(|| bad(format!("unknown vertex {n:?}"))))
            .collect()
    };
    let row_types = lookup(&mj.row_types)?;
    let col_types = lookup(&mj.col_types)?;
    let mut entries = Vec::with_capacity(mj.entries.len());
    for row in &mj.entries {
        entries.push(
            row.iter()
                .map(|e| element_from_json(e, field, q))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let m = AlgebraMatrix::new(field, row_types, col_types, entries)?;
    m.validate(q)?;
    Ok(m)
}

#[derive(Deserialize)]
struct RepJson {
    side: String,
    #[serde(default)]
    dims: BTreeMap<String, usize>,
    #[serde(default)]
    maps: BTreeMap<String, Vec<Vec<String>>>,
}

pub fn parse_rep(text: &str, field: FieldSpec, q: &Quiver) -> Result<Rep> {
    let rj: RepJson = serde_json::from_str(text).map_err(|e| bad(format!("rep json: {e}")))?;
    let side = match rj.side.as_str() {
        "E" => Side::OverE,
        "Ebar" => Side::OverEbar,
        s => return Err(bad(format!("unknown side {s:?}"))),
    };
    let mut dims = vec![0usize; q.vertex_count()];
    for (name, d) in &rj.dims {
        let v = q.vertex(name).ok_or_else(|| bad(format!("unknown vertex {name:?}")))?;
        dims[v] = *d;
    }
    let mut rep = Rep::zero(q, side, field);
    rep.dims = dims;
    // absent arrows get zero matrices of the forced shape
    let mut maps = Vec::with_capacity(q.arrow_count());
    for a in 0..q.arrow_count() {
        let rows = rep.dims[rep.map_out(q, a)];
        let cols = rep.dims[rep.map_in(q, a)];
        let m = match rj.maps.get(&q.arrow(a).name) {
            None => crate::linalg::zeros(field, rows, cols),
            Some(raw) => raw
                .iter()
                .map(|row| row.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        };
        maps.push(m);
    }
    for name in rj.maps.keys() {
        if q.arrow_by_name(name).is_none() {
            return Err(bad(format!("unknown arrow {name:?}")));
        }
    }
    Rep::new(q, side, field, rep.dims, maps)
}

#[derive(Deserialize)]
struct ModuleGenJson {
    label: String,
    vertex: String,
    #[serde(default)]
    mu: usize,
}

#[derive(Deserialize)]
struct ModuleJson {
    basis: Vec<ModuleGenJson>,
}

pub fn parse_module(text: &str, field: FieldSpec, q: &Quiver) -> Result<FilteredFreeModule> {
    let mj: ModuleJson =
        serde_json::from_str(text).map_err(|e| bad(format!("module json: {e}")))?;
    let mut basis = Vec::with_capacity(mj.basis.len());
    for g in &mj.basis {
        let vertex = q
            .vertex(&g.vertex)
            .ok_or_else(|| bad(format!("unknown vertex {:?}", g.vertex)))?;
        basis.push(BasisGen { label: g.label.clone(), vertex, mu: g.mu });
    }
    FilteredFreeModule::new(field, q, basis)
}

fn vector_from_map(
    map: &BTreeMap<String, ElementJson>,
    module: &FilteredFreeModule,
    q: &Quiver,
) -> Result<ModuleVector> {
    let mut coords = Vec::with_capacity(map.len());
    for (label, ej) in map {
        let i = module
            .index_of(label)
            .ok_or_else(|| bad(format!("unknown generator {label:?}")))?;
        coords.push((i, element_from_json(ej, module.field, q)?));
    }
    let v = ModuleVector::from_coords(module.field, coords);
    v.validate(module, q)?;
    Ok(v)
}

/// One vector per line is inconvenient in JSON, so vector files hold a
/// list of label-to-element maps.
pub fn parse_vectors(
    text: &str,
    module: &FilteredFreeModule,
    q: &Quiver,
) -> Result<Vec<ModuleVector>> {
    let raw: Vec<BTreeMap<String, ElementJson>> =
        serde_json::from_str(text).map_err(|e| bad(format!("vector json: {e}")))?;
    raw.iter().map(|m| vector_from_map(m, module, q)).collect()
}

pub fn parse_vector(text: &str, module: &FilteredFreeModule, q: &Quiver) -> Result<ModuleVector> {
    let raw: BTreeMap<String, ElementJson> =
        serde_json::from_str(text).map_err(|e| bad(format!("vector json: {e}")))?;
    vector_from_map(&raw, module, q)
}

// ---- output ----

pub fn path_to_json(p: &Path, q: &Quiver) -> Value {
    json!({
        "base": q.vertex_name(p.base),
        "arrows": p.arrows.iter().map(|&a| q.arrow(a).name.clone()).collect::<Vec<_>>(),
    })
}

pub fn element_to_json(x: &AlgebraElement, q: &Quiver) -> Value {
    let terms: Vec<Value> = x
        .terms
        .iter()
        .map(|(p, c)| json!({"path": path_to_json(p, q), "coeff": c.to_wire()}))
        .collect();
    json!({ "terms": terms })
}

pub fn vector_to_json(v: &ModuleVector, module: &FilteredFreeModule, q: &Quiver) -> Value {
    let mut map = serde_json::Map::new();
    for (i, x) in &v.coords {
        map.insert(module.basis[*i].label.clone(), element_to_json(x, q));
    }
    Value::Object(map)
}

pub fn monomial_to_json(m: &Monomial, module: &FilteredFreeModule, q: &Quiver) -> Value {
    json!({
        "generator": module.basis[m.0].label,
        "path": path_to_json(&m.1, q),
    })
}

pub fn rep_to_json(r: &Rep, q: &Quiver) -> Value {
    let mut dims = serde_json::Map::new();
    for (v, &d) in r.dims.iter().enumerate() {
        dims.insert(q.vertex_name(v).to_string(), json!(d));
    }
    let mut maps = serde_json::Map::new();
    for a in 0..q.arrow_count() {
        let rows: Vec<Vec<String>> = r.maps[a]
            .iter()
            .map(|row| row.iter().map(|x| x.to_wire()).collect())
            .collect();
        maps.insert(q.arrow(a).name.clone(), json!(rows));
    }
    json!({
        "side": match r.side { Side::OverE => "E", Side::OverEbar => "Ebar" },
        "dims": Value::Object(dims),
        "maps": Value::Object(maps),
    })
}

pub fn graded_vec_to_json(v: &GradedVec, q: &Quiver) -> Value {
    let mut map = serde_json::Map::new();
    for (i, comp) in v.iter().enumerate() {
        map.insert(
            q.vertex_name(i).to_string(),
            json!(comp.iter().map(|x| x.to_wire()).collect::<Vec<_>>()),
        );
    }
    Value::Object(map)
}

pub fn group_to_json(g: &FGAbelianGroup) -> Value {
    json!({
        "free_rank": g.free_rank,
        "invariant_factors": g.invariant_factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    })
}

pub fn unit_coker_to_json(u: &UnitCoker) -> Value {
    match u {
        UnitCoker::Finite(g) => json!({"kind": "finite", "group": group_to_json(g)}),
        UnitCoker::Rational { two_torsion, per_prime } => json!({
            "kind": "rational",
            "two_torsion": group_to_json(two_torsion),
            "per_prime": group_to_json(per_prime),
        }),
    }
}

pub fn bla_to_json(b: &BlaSummary) -> Value {
    json!({
        "dmax": b.dmax,
        "generators": b.generators.iter().map(|g| json!({
            "fingerprint": g.fingerprint,
            "endo_degree": g.endo_degree,
        })).collect::<Vec<_>>(),
        "truncated": b.truncated,
    })
}

pub fn kreport_to_json(r: &KReport) -> Value {
    json!({
        "target": r.target.to_string(),
        "degree": r.degree,
        "integer_part": group_to_json(&r.integer_part),
        "unit_part": r.unit_part.as_ref().map(unit_coker_to_json),
        "bla_part": r.bla_part.as_ref().map(bla_to_json),
    })
}

pub fn torsion_report_to_json(t: &TorsionReport, q: &Quiver) -> Value {
    json!({
        "lattice": rep_to_json(&t.lattice, q),
        "generator_images": t.generator_images.iter()
            .map(|v| graded_vec_to_json(v, q)).collect::<Vec<_>>(),
        "length": t.length,
        "factors": t.factors.iter().map(|(r, m)| json!({
            "rep": rep_to_json(r, q),
            "multiplicity": m,
        })).collect::<Vec<_>>(),
        "blanchfield": t.blanchfield,
    })
}

pub fn split_to_json(s: &ProjectiveSplit, module: &FilteredFreeModule, q: &Quiver) -> Value {
    json!({
        "q_generators": s.q_gens.iter().map(|v| vector_to_json(v, module, q)).collect::<Vec<_>>(),
        "dim_l_mod_q": s.dim_l_mod_q,
        "residue_monomials": s.residue_monomials.iter()
            .map(|m| monomial_to_json(m, module, q)).collect::<Vec<_>>(),
        "weights": s.weights,
        "relation_basis": s.relation_basis.iter()
            .map(|v| vector_to_json(v, module, q)).collect::<Vec<_>>(),
        "certificate": json!({
            "generators_suffix_free": s.certificate.generators_suffix_free,
            "stable_from_degree": s.certificate.stable_from_degree,
        }),
    })
}

pub fn quiver_info_json(q: &Quiver) -> Value {
    let (n, _) = q.incidence_n();
    json!({
        "vertices": q.vertex_names(),
        "arrows": q.arrows().iter().map(|a| json!({
            "name": a.name,
            "src": q.vertex_name(a.src),
            "dst": q.vertex_name(a.dst),
        })).collect::<Vec<_>>(),
        "sinks": q.sinks().iter().map(|&v| q.vertex_name(v)).collect::<Vec<_>>(),
        "sources": q.sources().iter().map(|&v| q.vertex_name(v)).collect::<Vec<_>>(),
        "acyclic": q.is_acyclic(),
        "adjacency": q.adjacency(),
        "N_E": n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::samples;

    #[test]
    fn quiver_round_trip() {
        let text = r#"{"vertices":["v1","v2"],"arrows":[{"name":"e","src":"v1","dst":"v1"},{"name":"f","src":"v1","dst":"v2"}]}"#;
        let q = parse_quiver(text).unwrap();
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.arrow_count(), 2);
        let info = quiver_info_json(&q);
        assert_eq!(info["sinks"], json!(["v2"]));
        assert_eq!(info["N_E"], json!([[1], [1]]));
    }

    #[test]
    fn element_round_trip() {
        let q = samples::rose(2);
        let text = r#"{"terms":[{"path":{"base":"v1","arrows":["x1","x2"]},"coeff":"3/2"},{"path":{"base":"v1"},"coeff":"-1"}]}"#;
        let x = parse_element(text, FieldSpec::Q, &q).unwrap();
        assert_eq!(x.terms.len(), 2);
        let back = element_to_json(&x, &q);
        let again = parse_element(&back.to_string(), FieldSpec::Q, &q).unwrap();
        assert_eq!(x, again);
    }

    #[test]
    fn rep_round_trip_and_defaults() {
        let q = samples::toeplitz();
        let text = r#"{"side":"Ebar","dims":{"v1":2},"maps":{"e":[["1","0"],["0","1"]]}}"#;
        let r = parse_rep(text, FieldSpec::Q, &q).unwrap();
        assert_eq!(r.dims, vec![2, 0]);
        let back = rep_to_json(&r, &q);
        let again = parse_rep(&back.to_string(), FieldSpec::Q, &q).unwrap();
        assert_eq!(r.maps, again.maps);
    }

    #[test]
    fn module_and_vector_parse() {
        let q = samples::rose(2);
        let m = parse_module(
            r#"{"basis":[{"label":"b1","vertex":"v1","mu":1},{"label":"b2","vertex":"v1"}]}"#,
            FieldSpec::Q,
            &q,
        )
        .unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.basis[0].mu, 1);
        assert_eq!(m.basis[1].mu, 0);
        let v = parse_vector(
            r#"{"b1":{"terms":[{"path":{"base":"v1","arrows":["x1"]},"coeff":"1"}]}}"#,
            &m,
            &q,
        )
        .unwrap();
        assert!(!v.is_zero());
        let back = vector_to_json(&v, &m, &q);
        assert_eq!(parse_vector(&back.to_string(), &m, &q).unwrap(), v);
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(parse_quiver("{").is_err());
        let q = samples::loop1();
        assert!(parse_element(
            r#"{"terms":[{"path":{"base":"nope"},"coeff":"1"}]}"#,
            FieldSpec::Q,
            &q
        )
        .is_err());
        assert!(parse_rep(r#"{"side":"X"}"#, FieldSpec::Q, &q).is_err());
        assert!(parse_rep(
            r#"{"side":"E","dims":{"v1":1},"maps":{"zz":[["1"]]}}"#,
            FieldSpec::Q,
            &q
        )
        .is_err());
    }

    #[test]
    fn matrix_parse() {
        let q = samples::rose(2);
        let text = r#"{"row_types":["v1"],"col_types":["v1"],"entries":[[{"terms":[{"path":{"base":"v1"},"coeff":"1"},{"path":{"base":"v1","arrows":["x1"]},"coeff":"-1"},{"path":{"base":"v1","arrows":["x2"]},"coeff":"-1"}]}]]}"#;
        let m = parse_matrix(text, FieldSpec::Q, &q).unwrap();
        assert!(m.is_invertible_eps(&q).unwrap());
    }
}
