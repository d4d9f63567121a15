//! Filtered free modules over a path algebra and the weak algorithm:
//! dependence solving, weak basis extraction, membership by normal
//! forms, and the projective splitting of a finitely presented module.
//!
//! A free module here is a direct sum of vertex projectives P p_v,
//! one summand per labelled generator, each carrying a weight mu. The
//! formal degree of a vector is the maximum of path length plus weight
//! over its monomials; all algorithms work degree by degree, which
//! keeps every linear problem finite-dimensional.
//!
//! The central invariant is suffix-freeness: after interreduction no
//! leading monomial of the basis is a trailing segment of another.
//! Because coefficients act by prepending paths, two left multiples of
//! basis elements can only share their leading monomial when one
//! leading monomial is a suffix of the other, so a suffix-free family
//! admits no leading-term cancellation. That makes the reduced family
//! simultaneously a complete rewriting system for membership and an
//! independent family in the filtered sense.

use crate::algebra::AlgebraElement;
use crate::linalg;
use crate::quiver::{Path, Quiver};
use crate::scalar::{FieldSpec, Scalar};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// One free generator: a label, the vertex whose projective it spans,
/// and its filtration weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisGen {
    pub label: String,
    pub vertex: usize,
    pub mu: usize,
}

/// A finite-rank free module with weighted generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredFreeModule {
    pub field: FieldSpec,
    pub basis: Vec<BasisGen>,
}

impl FilteredFreeModule {
    pub fn new(field: FieldSpec, q: &Quiver, basis: Vec<BasisGen>) -> Result<FilteredFreeModule> {
        let mut seen = BTreeSet::new();
        for b in &basis {
            if !seen.insert(b.label.clone()) {
                return Err(Error::Invalid(format!("duplicate generator label {:?}", b.label)));
            }
            if b.vertex >= q.vertex_count() {
                return Err(Error::Invalid(format!("generator {:?} at unknown vertex", b.label)));
            }
        }
        Ok(FilteredFreeModule { field, basis })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }
}

/// A module monomial: a path times a generator. The path must range at
/// the generator's vertex.
pub type Monomial = (usize, Path);

/// Total order on monomials: formal degree first, then generator
/// index, then the canonical path order. Stable under prepending a
/// path to both sides, which is what reduction needs.
fn mono_key<'a>(m: &FilteredFreeModule, mono: &'a Monomial) -> (usize, usize, &'a Path) {
    (mono.1.len() + m.basis[mono.0].mu, mono.0, &mono.1)
}

/// An element of the free module: a coefficient per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleVector {
    pub field: FieldSpec,
    pub coords: BTreeMap<usize, AlgebraElement>,
}

impl ModuleVector {
    pub fn zero(field: FieldSpec) -> ModuleVector {
        ModuleVector { field, coords: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn generator(m: &FilteredFreeModule, i: usize) -> ModuleVector {
        let mut coords = BTreeMap::new();
        coords.insert(i, AlgebraElement::vertex_unit(m.field, m.basis[i].vertex));
        ModuleVector { field: m.field, coords }
    }

    pub fn monomial(field: FieldSpec, mono: &Monomial, coeff: Scalar) -> ModuleVector {
        let mut coords = BTreeMap::new();
        let e = AlgebraElement::single(field, mono.1.clone(), coeff);
        if !e.is_zero() {
            coords.insert(mono.0, e);
        }
        ModuleVector { field, coords }
    }

    pub fn from_coords(
        field: FieldSpec,
        coords: impl IntoIterator<Item = (usize, AlgebraElement)>,
    ) -> ModuleVector {
        let mut out = ModuleVector::zero(field);
        for (i, e) in coords {
            if !e.is_zero() {
                let slot = out
                    .coords
                    .entry(i)
                    .or_insert_with(|| AlgebraElement::zero(field));
                *slot = slot.add(&e).expect("same field");
                if slot.is_zero() {
                    out.coords.remove(&i);
                }
            }
        }
        out
    }

    /// Checks coefficient typing: every path ranges at its generator's
    /// vertex and is valid in the quiver.
    pub fn validate(&self, m: &FilteredFreeModule, q: &Quiver) -> Result<()> {
        for (&i, e) in &self.coords {
            if i >= m.rank() {
                return Err(Error::TypeMismatch(format!("coordinate {i} out of range")));
            }
            if e.field != m.field {
                return Err(Error::FieldMismatch(format!("{} vs {}", e.field, m.field)));
            }
            e.validate(q)?;
            for p in e.terms.keys() {
                if p.range(q) != m.basis[i].vertex {
                    return Err(Error::TypeMismatch(format!(
                        "path {} does not range at vertex {}",
                        p.display(q),
                        q.vertex_name(m.basis[i].vertex)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &ModuleVector) -> Result<ModuleVector> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        let mut out = self.clone();
        for (&i, e) in &other.coords {
            let slot = out
                .coords
                .entry(i)
                .or_insert_with(|| AlgebraElement::zero(self.field));
            *slot = slot.add(e)?;
            if slot.is_zero() {
                out.coords.remove(&i);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> ModuleVector {
        ModuleVector {
            field: self.field,
            coords: self.coords.iter().map(|(&i, e)| (i, e.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &ModuleVector) -> Result<ModuleVector> {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, s: &Scalar) -> ModuleVector {
        if s.is_zero() {
            return ModuleVector::zero(self.field);
        }
        ModuleVector {
            field: self.field,
            coords: self.coords.iter().map(|(&i, e)| (i, e.scalar_mul(s))).collect(),
        }
    }

    /// Left action of an algebra element.
    pub fn left_mul(&self, r: &AlgebraElement, q: &Quiver) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero(self.field);
        for (&i, e) in &self.coords {
            let prod = r.mul(e, q)?;
            if !prod.is_zero() {
                out = out.add(&ModuleVector {
                    field: self.field,
                    coords: BTreeMap::from([(i, prod)]),
                })?;
            }
        }
        Ok(out)
    }

    /// Formal degree; `None` for zero.
    pub fn degree(&self, m: &FilteredFreeModule) -> Option<usize> {
        self.coords
            .iter()
            .flat_map(|(&i, e)| e.terms.keys().map(move |p| p.len() + m.basis[i].mu))
            .max()
    }

    pub fn monomials(&self) -> impl Iterator<Item = (Monomial, &Scalar)> {
        self.coords
            .iter()
            .flat_map(|(&i, e)| e.terms.iter().map(move |(p, c)| ((i, p.clone()), c)))
    }

    /// Largest monomial with its coefficient.
    pub fn leading(&self, m: &FilteredFreeModule) -> Option<(Monomial, Scalar)> {
        self.monomials()
            .max_by(|(a, _), (b, _)| mono_key(m, a).cmp(&mono_key(m, b)))
            .map(|(mono, c)| (mono, c.clone()))
    }

    fn coeff_of(&self, mono: &Monomial) -> Scalar {
        self.coords
            .get(&mono.0)
            .and_then(|e| e.terms.get(&mono.1))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// The common source vertex of all coefficient paths, if one
    /// exists; zero vectors have every vertex, reported as `None`.
    pub fn source_vertex(&self, q: &Quiver) -> Result<Option<usize>> {
        let mut src = None;
        for e in self.coords.values() {
            for p in e.terms.keys() {
                match src {
                    None => src = Some(p.source(q)),
                    Some(v) if v == p.source(q) => {}
                    Some(v) => {
                        return Err(Error::VertexDecomposition(format!(
                            "mixed sources {} and {}",
                            q.vertex_name(v),
                            q.vertex_name(p.source(q))
                        )))
                    }
                }
            }
        }
        Ok(src)
    }

    pub fn display(&self, m: &FilteredFreeModule, q: &Quiver) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coords
            .iter()
            .map(|(&i, e)| format!("({})*{}", e.display(q), m.basis[i].label))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Is `inner` a trailing segment of `outer` (same generator, arrow
/// sequence a suffix)? Returns the complementary leading path.
fn suffix_quotient(outer: &Monomial, inner: &Monomial, q: &Quiver) -> Option<Path> {
    if outer.0 != inner.0 {
        return None;
    }
    outer.1.strip_suffix(&inner.1, q)
}

/// One reduction pass: rewrites every monomial of `m` that has the
/// leading monomial of some basis element as a suffix, largest first.
/// Also accumulates the witness combination when asked.
fn reduce_full(
    m: &ModuleVector,
    basis: &[ModuleVector],
    module: &FilteredFreeModule,
    q: &Quiver,
    mut witness: Option<&mut Vec<AlgebraElement>>,
) -> Result<ModuleVector> {
    let leads: Vec<(Monomial, Scalar)> = basis
        .iter()
        .map(|f| f.leading(module).expect("basis elements are nonzero"))
        .collect();
    let mut cur = m.clone();
    loop {
        // the largest still-reducible monomial
        let mut best: Option<(Monomial, usize, Path)> = None;
        for (mono, _) in cur.monomials() {
            for (bi, (lead, _)) in leads.iter().enumerate() {
                if let Some(lam) = suffix_quotient(&mono, lead, q) {
                    let better = match &best {
                        None => true,
                        Some((bm, _, _)) => mono_key(module, &mono) > mono_key(module, bm),
                    };
                    if better {
                        best = Some((mono.clone(), bi, lam));
                    }
                    break;
                }
            }
        }
        let Some((mono, bi, lam)) = best else { break };
        let c = cur.coeff_of(&mono);
        let factor = c.div(&leads[bi].1)?;
        let r = AlgebraElement::single(module.field, lam, factor);
        cur = cur.sub(&basis[bi].left_mul(&r, q)?)?;
        if let Some(w) = witness.as_deref_mut() {
            w[bi] = w[bi].add(&r)?;
        }
    }
    Ok(cur)
}

/// Normal form of a vector against a weak basis; the remainder has no
/// monomial reducible by the basis and lies in the same coset.
pub fn normal_form(
    m: &ModuleVector,
    basis: &[ModuleVector],
    module: &FilteredFreeModule,
    q: &Quiver,
) -> Result<ModuleVector> {
    reduce_full(m, basis, module, q, None)
}

/// Normal form plus the coefficients used, so that
/// `m = sum r_i basis_i + remainder` exactly.
pub fn normal_form_with_witness(
    m: &ModuleVector,
    basis: &[ModuleVector],
    module: &FilteredFreeModule,
    q: &Quiver,
) -> Result<(ModuleVector, Vec<AlgebraElement>)> {
    let mut w = vec![AlgebraElement::zero(module.field); basis.len()];
    let rem = reduce_full(m, basis, module, q, Some(&mut w))?;
    Ok((rem, w))
}

pub fn is_member(
    m: &ModuleVector,
    basis: &[ModuleVector],
    module: &FilteredFreeModule,
    q: &Quiver,
) -> Result<bool> {
    Ok(normal_form(m, basis, module, q)?.is_zero())
}

/// The part of `v` whose monomials start at vertex `u`. The vertex
/// idempotents act on any submodule, so generators may be replaced by
/// their per-vertex parts without changing the span.
fn source_component(v: &ModuleVector, u: usize, q: &Quiver) -> ModuleVector {
    let coords: Vec<(usize, AlgebraElement)> = v
        .coords
        .iter()
        .map(|(&i, x)| (i, x.left_component(u, q)))
        .collect();
    ModuleVector::from_coords(v.field, coords)
}

/// Computes a weak basis of the submodule generated by `gens`:
/// generators are split into source-homogeneous parts, interreduced
/// until the leading monomials are suffix-free, then tail-reduced and
/// scaled monic. Homogeneity matters: reducing against an element
/// whose monomials started at different vertices would drop the
/// incompatible terms and lose completeness. The result is
/// independent of the input order and presents the submodule freely.
pub fn weak_basis(
    gens: &[ModuleVector],
    module: &FilteredFreeModule,
    q: &Quiver,
) -> Result<Vec<ModuleVector>> {
    for g in gens {
        g.validate(module, q)?;
    }
    let mut basis: Vec<ModuleVector> = Vec::new();
    let mut queue: Vec<ModuleVector> = Vec::new();
    for g in gens {
        for u in 0..q.vertex_count() {
            let part = source_component(g, u, q);
            if !part.is_zero() {
                queue.push(part);
            }
        }
    }
    while let Some(g) = queue.pop() {
        let g = normal_form(&g, &basis, module, q)?;
        if g.is_zero() {
            continue;
        }
        let (lead, lc) = g.leading(module).unwrap();
        let g = g.scalar_mul(&lc.inv()?);
        // pull back anything the new element now reduces
        let mut keep = Vec::new();
        for f in basis.drain(..) {
            let (fl, _) = f.leading(module).unwrap();
            if suffix_quotient(&fl, &lead, q).is_some() {
                queue.push(f);
            } else {
                keep.push(f);
            }
        }
        basis = keep;
        basis.push(g);
    }
    // tail reduction for canonical output
    loop {
        let mut changed = false;
        for i in 0..basis.len() {
            let others: Vec<ModuleVector> = basis
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, f)| f.clone())
                .collect();
            let red = normal_form(&basis[i], &others, module, q)?;
            debug_assert!(!red.is_zero());
            if red != basis[i] {
                basis[i] = red;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    basis.sort_by(|a, b| {
        let (la, _) = a.leading(module).unwrap();
        let (lb, _) = b.leading(module).unwrap();
        mono_key(module, &la).cmp(&mono_key(module, &lb))
    });
    Ok(basis)
}

/// Searches for a dependence witness at target degree `t`: scalars
/// `r_i` typed at each member's source vertex with formal degrees
/// at most `t`, not all zero, top layer nonzero, such that the
/// combination drops below degree `t`. Linear algebra on the degree-t
/// coefficient space.
pub fn dependence_solve(
    family: &[ModuleVector],
    t: usize,
    module: &FilteredFreeModule,
    q: &Quiver,
) -> Result<Option<Vec<AlgebraElement>>> {
    let field = module.field;
    let mut sources = Vec::with_capacity(family.len());
    for m in family {
        m.validate(module, q)?;
        sources.push(m.source_vertex(q)?);
    }
    // a zero member makes the family dependent outright
    if let Some(z) = family.iter().position(|m| m.is_zero()) {
        let mut out = vec![AlgebraElement::zero(field); family.len()];
        out[z] = AlgebraElement::one(field, q);
        return Ok(Some(out));
    }

    // unknowns: coefficients of each path lambda ending at source(m_i)
    // with len(lambda) <= t - deg(m_i)
    let mut unknowns: Vec<(usize, Path)> = Vec::new();
    let mut top_flags: Vec<bool> = Vec::new();
    for (i, m) in family.iter().enumerate() {
        let d = m.degree(module).unwrap();
        if d > t {
            continue;
        }
        let v = sources[i].unwrap();
        for len in 0..=(t - d) {
            for p in q.paths_into(v, len) {
                unknowns.push((i, p));
                top_flags.push(len == t - d);
            }
        }
    }
    if unknowns.is_empty() {
        return Ok(None);
    }

    // rows: monomials of formal degree exactly t in the products
    let mut row_index: BTreeMap<(usize, Path), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    for (col, (i, lam)) in unknowns.iter().enumerate() {
        for ((j, kappa), c) in family[*i].monomials() {
            if lam.len() + kappa.len() + module.basis[j].mu != t {
                continue;
            }
            let prod = lam.compose(&kappa, q).expect("typed composition");
            let n = row_index.len();
            let row = *row_index.entry((j, prod)).or_insert(n);
            entries.push((row, col, c.clone()));
        }
    }
    let mut mat = linalg::zeros(field, row_index.len(), unknowns.len());
    for (r, c, s) in entries {
        mat[r][c] = mat[r][c].add(&s);
    }
    let null = linalg::nullspace(&mat, field);
    for vec in &null {
        let has_top = vec
            .iter()
            .zip(&top_flags)
            .any(|(x, &top)| top && !x.is_zero());
        if !has_top {
            continue;
        }
        let mut out = vec![AlgebraElement::zero(field); family.len()];
        for (x, (i, lam)) in vec.iter().zip(&unknowns) {
            if !x.is_zero() {
                out[*i] = out[*i]
                    .add(&AlgebraElement::single(field, lam.clone(), x.clone()))?;
            }
        }
        return Ok(Some(out));
    }
    Ok(None)
}

/// Result of splitting a finitely presented module into a free direct
/// summand and a finite-dimensional remainder.
#[derive(Debug, Clone)]
pub struct ProjectiveSplit {
    /// Monomial generators of the free submodule, as vectors of the
    /// ambient free module representing classes of the quotient.
    pub q_gens: Vec<ModuleVector>,
    /// Dimension of the quotient by the free part.
    pub dim_l_mod_q: usize,
    /// Monomials whose classes form a basis of that finite piece.
    pub residue_monomials: Vec<Monomial>,
    /// The weights used internally (1 on generators met by relations).
    pub weights: Vec<usize>,
    /// Weak basis of the relation submodule under those weights.
    pub relation_basis: Vec<ModuleVector>,
    pub certificate: SplitCertificate,
}

/// Checked facts recorded alongside the splitting.
#[derive(Debug, Clone)]
pub struct SplitCertificate {
    /// The generators of the free part are pairwise suffix-free, hence
    /// independent and the part they span is free.
    pub generators_suffix_free: bool,
    /// No further quotient classes exist at this degree or above.
    pub stable_from_degree: usize,
}

/// Splits the quotient by the submodule generated by `n_gens` into a
/// free module spanned by monomial classes plus a finite-dimensional
/// complement spanned by the trailing segments of leading monomials.
pub fn projective_split(
    module: &FilteredFreeModule,
    n_gens: &[ModuleVector],
    q: &Quiver,
) -> Result<ProjectiveSplit> {
    for g in n_gens {
        g.validate(module, q)?;
    }
    // weights from the construction: 1 on every generator occurring in
    // the relations, just past the maximal relation degree elsewhere
    let occurring: BTreeSet<usize> = n_gens
        .iter()
        .flat_map(|g| g.coords.keys().copied())
        .collect();
    let max_len = n_gens
        .iter()
        .flat_map(|g| g.coords.values().flat_map(|e| e.terms.keys().map(Path::len)))
        .max()
        .unwrap_or(0);
    let n = max_len + 1; // max formal degree of the relations
    let weights: Vec<usize> = (0..module.rank())
        .map(|i| if occurring.contains(&i) { 1 } else { n + 1 })
        .collect();
    let weighted = FilteredFreeModule {
        field: module.field,
        basis: module
            .basis
            .iter()
            .zip(&weights)
            .map(|(b, &mu)| BasisGen { label: b.label.clone(), vertex: b.vertex, mu })
            .collect(),
    };

    let relation_basis = weak_basis(n_gens, &weighted, q)?;
    let leads: Vec<Monomial> = relation_basis
        .iter()
        .map(|f| f.leading(&weighted).unwrap().0)
        .collect();
    let is_standard = |mono: &Monomial| -> bool {
        leads.iter().all(|l| suffix_quotient(mono, l, q).is_none())
    };

    // trailing proper segments of leading monomials: a basis of the
    // finite-dimensional complement
    let mut residue: BTreeSet<Monomial> = BTreeSet::new();
    for (i, lead) in &leads {
        for cut in 1..=lead.len() {
            let rest = lead.arrows[cut..].to_vec();
            let base = match rest.first() {
                Some(&a) => q.arrow(a).src,
                None => module.basis[*i].vertex,
            };
            residue.insert((*i, Path { base, arrows: rest }));
        }
    }
    debug_assert!(residue.iter().all(|m| is_standard(m)));

    // free generators: unreduced monomials one arrow above the
    // complement, plus untouched trivial monomials
    let mut q_monos: BTreeSet<Monomial> = BTreeSet::new();
    for i in 0..module.rank() {
        let triv = (i, Path::trivial(module.basis[i].vertex));
        if is_standard(&triv) && !residue.contains(&triv) {
            q_monos.insert(triv);
        }
    }
    for (i, w) in &residue {
        let src = w.source(q);
        for (a, arr) in q.arrows().iter().enumerate() {
            if arr.dst != src {
                continue;
            }
            let mut arrows = vec![a];
            arrows.extend_from_slice(&w.arrows);
            let cand = (*i, Path { base: arr.src, arrows });
            if is_standard(&cand) && !residue.contains(&cand) {
                q_monos.insert(cand);
            }
        }
    }

    // certify suffix-freeness of the free generators
    let q_list: Vec<Monomial> = q_monos.iter().cloned().collect();
    let mut suffix_free = true;
    for a in &q_list {
        for b in &q_list {
            if a != b && suffix_quotient(a, b, q).is_some() {
                suffix_free = false;
            }
        }
    }

    // stability: at formal degree n+2 every unreduced monomial loses
    // its leading arrow to a lower-degree unreduced monomial, so no new
    // classes appear there or above
    let stable_from = n + 2;
    for i in 0..module.rank() {
        let mu = weighted.basis[i].mu;
        if stable_from < mu {
            continue;
        }
        let len = stable_from - mu;
        if len == 0 {
            continue;
        }
        for p in q.paths_into(module.basis[i].vertex, len) {
            let mono = (i, p.clone());
            if !is_standard(&mono) {
                continue;
            }
            let rest = p.arrows[1..].to_vec();
            let base = match rest.first() {
                Some(&a) => q.arrow(a).src,
                None => module.basis[i].vertex,
            };
            let tail = (i, Path { base, arrows: rest });
            if !is_standard(&tail) {
                return Err(Error::Invalid(
                    "splitting instability: reducible tail above the cutoff".into(),
                ));
            }
        }
    }

    let q_gens: Vec<ModuleVector> = q_list
        .iter()
        .map(|mono| ModuleVector::monomial(module.field, mono, module.field.one()))
        .collect();
    let residue_monomials: Vec<Monomial> = residue.iter().cloned().collect();
    Ok(ProjectiveSplit {
        dim_l_mod_q: residue_monomials.len(),
        residue_monomials,
        q_gens,
        weights,
        relation_basis,
        certificate: SplitCertificate {
            generators_suffix_free: suffix_free,
            stable_from_degree: stable_from,
        },
    })
}
