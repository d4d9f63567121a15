//! Torsion-module analysis: recognizing modules induced from the
//! localization, extracting a finite-dimensional lattice from a square
//! presentation with invertible augmentation, and iterating lattices
//! down to a stable core.
//!
//! Sink criterion used throughout: for a sink vertex i the right
//! module p_i of the localized algebra coincides with p_i of the
//! reversed path algebra (no arrow leaves i, so no relation touches
//! p_i), hence the component of an induced module at i equals the
//! component of the inducing module at i. Induced modules are exactly
//! those with vanishing sink components.

use crate::algebra::{AlgebraElement, AlgebraMatrix};
use crate::linalg::{self, Mat};
use crate::quiver::{Path, Quiver};
use crate::rep::{self, GradedVec, Rep, Side, Subspace};
use crate::scalar::Scalar;
use crate::weak::{self, BasisGen, FilteredFreeModule, ModuleVector};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// Is the block map (m_e) -> sum e.m_e from the arrow-indexed direct
/// sum onto the module bijective? This characterizes modules coming
/// from the localization, among modules over the plain path algebra.
pub fn is_blanchfield_rep(m: &Rep, q: &Quiver) -> bool {
    if m.side != Side::OverE {
        return false;
    }
    let total = m.total_dim();
    let domain: usize = (0..q.arrow_count()).map(|a| m.dims[q.arrow(a).dst]).sum();
    if domain != total {
        return false;
    }
    if total == 0 {
        return true;
    }
    // columns: e applied to each basis vector of the range component
    let offsets = {
        let mut o = Vec::with_capacity(m.dims.len());
        let mut acc = 0;
        for &d in &m.dims {
            o.push(acc);
            acc += d;
        }
        o
    };
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(domain);
    for a in 0..q.arrow_count() {
        let src = q.arrow(a).src;
        let dst = q.arrow(a).dst;
        for j in 0..m.dims[dst] {
            let mut flat = vec![m.field.zero(); total];
            for i in 0..m.dims[src] {
                flat[offsets[src] + i] = m.maps[a][i][j].clone();
            }
            cols.push(flat);
        }
    }
    linalg::rank(&cols) == total
}

/// The induced module vanishes nowhere it should: components at sinks
/// of the base quiver must be zero.
pub fn is_blanchfield_induced(n: &Rep, q: &Quiver) -> bool {
    n.side == Side::OverEbar && q.sinks().iter().all(|&s| n.dims[s] == 0)
}

/// The reversed-algebra action carried by a module with bijective
/// block map: each arrow acts by the corresponding block of the
/// inverse of that map.
pub fn derived_ebar_rep(m: &Rep, q: &Quiver) -> Result<Rep> {
    if !is_blanchfield_rep(m, q) {
        return Err(Error::NotBlanchfield(
            "block map is not bijective".into(),
        ));
    }
    let field = m.field;
    let mut maps = Vec::with_capacity(q.arrow_count());
    for a in 0..q.arrow_count() {
        maps.push(linalg::zeros(field, m.dims[q.arrow(a).dst], m.dims[q.arrow(a).src]));
    }
    // per source component u, invert the stacked matrix of the arrow
    // maps leaving u (the block map restricted to the u component)
    for u in 0..m.dims.len() {
        let arrows_u: Vec<usize> = (0..q.arrow_count())
            .filter(|&a| q.arrow(a).src == u)
            .collect();
        let du = m.dims[u];
        if du == 0 {
            continue;
        }
        let mut stacked: Mat = Vec::new(); // du x sum of range dims
        for i in 0..du {
            let mut row = Vec::new();
            for &a in &arrows_u {
                for j in 0..m.dims[q.arrow(a).dst] {
                    row.push(m.maps[a][i][j].clone());
                }
            }
            stacked.push(row);
        }
        let inv = linalg::invert(&stacked, field)
            .ok_or_else(|| Error::NotBlanchfield("component block not invertible".into()))?;
        // rows of inv give the preimage coordinates of the u basis
        let mut col = 0;
        for &a in &arrows_u {
            let dd = m.dims[q.arrow(a).dst];
            for j in 0..dd {
                for i in 0..du {
                    maps[a][j][i] = inv[col + j][i].clone();
                }
            }
            col += dd;
        }
    }
    Rep::new(q, Side::OverEbar, field, m.dims.clone(), maps)
}

/// Full analysis of the cokernel of a square presentation with
/// invertible augmentation.
#[derive(Debug, Clone)]
pub struct TorsionReport {
    pub lattice: Rep,
    /// Images of the presentation generators inside the lattice.
    pub generator_images: Vec<GradedVec>,
    pub length: usize,
    /// Surviving composition factors with multiplicities.
    pub factors: Vec<(Rep, usize)>,
    pub blanchfield: bool,
}

/// Extracts a finite-dimensional lattice from the cokernel of a
/// matrix with invertible augmentation and reads off its reversed
/// action, length, and surviving factors.
pub fn sigma_to_lattice(sigma: &AlgebraMatrix, q: &Quiver) -> Result<TorsionReport> {
    let field = sigma.field;
    // align column types with row types so the normalized matrix can
    // carry an identity part
    let n = sigma.row_types.len();
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    {
        let mut used = vec![false; sigma.col_types.len()];
        for &rt in &sigma.row_types {
            let Some(j) = (0..sigma.col_types.len())
                .find(|&j| !used[j] && sigma.col_types[j] == rt)
            else {
                return Err(Error::NotSigma);
            };
            used[j] = true;
            perm.push(j);
        }
    }
    let sigma = AlgebraMatrix::new(
        field,
        sigma.row_types.clone(),
        perm.iter().map(|&j| sigma.col_types[j]).collect(),
        sigma
            .entries
            .iter()
            .map(|row| perm.iter().map(|&j| row[j].clone()).collect())
            .collect(),
    )?;
    let w = sigma.sigma_witness(q)?.ok_or(Error::NotSigma)?;

    // normalized presentation 1 - tau with zero augmentation tail
    let mut tau: Vec<Vec<AlgebraElement>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let mut entry = AlgebraElement::zero(field);
            for k in 0..n {
                if !w[i][k].is_zero() {
                    entry = entry.add(&sigma.entries[k][j].scalar_mul(&w[i][k]))?;
                }
            }
            // tau = 1 - normalized sigma
            let mut t = entry.neg();
            if i == j {
                t = t.add(&AlgebraElement::vertex_unit(field, sigma.row_types[i]))?;
            }
            if t.augmentation(q).iter().any(|c| !c.is_zero()) {
                return Err(Error::NotSigma);
            }
            row.push(t);
        }
        tau.push(row);
    }
    let types: Vec<usize> = sigma.row_types.clone();
    let r = tau
        .iter()
        .flat_map(|row| row.iter().filter_map(AlgebraElement::nu))
        .max()
        .unwrap_or(0);
    let span_len = r.saturating_sub(1);

    // relation engine on the free module with one generator per column
    let module = FilteredFreeModule::new(
        field,
        q,
        (0..n)
            .map(|j| BasisGen { label: format!("g{j}"), vertex: types[j], mu: 0 })
            .collect(),
    )?;
    let rows: Vec<ModuleVector> = (0..n)
        .map(|i| {
            // row i of the normalized matrix: g_i - sum tau_ij g_j
            let mut coords: Vec<(usize, AlgebraElement)> = vec![(
                i,
                AlgebraElement::vertex_unit(field, types[i]),
            )];
            for j in 0..n {
                coords.push((j, tau[i][j].neg()));
            }
            ModuleVector::from_coords(field, coords)
        })
        .collect();
    let basis = weak::weak_basis(&rows, &module, q)?;

    // spanning monomials per source vertex
    let d = q.vertex_count();
    let mut span: Vec<Vec<(usize, Path)>> = vec![Vec::new(); d];
    for j in 0..n {
        for len in 0..=span_len {
            for p in q.paths_into(types[j], len) {
                span[p.source(q)].push((j, p));
            }
        }
    }
    // normal forms, per-vertex coordinates on the monomials appearing
    let nf_of = |mono: &(usize, Path)| -> Result<ModuleVector> {
        let v = ModuleVector::monomial(field, mono, field.one());
        weak::normal_form(&v, &basis, &module, q)
    };
    let mut coord_index: Vec<BTreeMap<(usize, Path), usize>> = vec![BTreeMap::new(); d];
    let mut nf_cache: BTreeMap<(usize, Path), ModuleVector> = BTreeMap::new();
    for u in 0..d {
        for mono in &span[u] {
            let nf = nf_of(mono)?;
            for ((j, p), _) in nf.monomials() {
                let next = coord_index[u].len();
                coord_index[u].entry((j, p)).or_insert(next);
            }
            nf_cache.insert(mono.clone(), nf);
        }
    }
    let coords_of = |u: usize, v: &ModuleVector| -> Result<Vec<Scalar>> {
        let mut out = vec![field.zero(); coord_index[u].len()];
        for (mono, c) in v.monomials() {
            let Some(&k) = coord_index[u].get(&mono) else {
                return Err(Error::Invalid("monomial escaped the lattice span".into()));
            };
            out[k] = out[k].add(c);
        }
        Ok(out)
    };

    // per-vertex echelon bases of the lattice components
    let mut comp_basis: Vec<Mat> = Vec::with_capacity(d);
    for u in 0..d {
        let mut rows_u: Mat = Vec::new();
        for mono in &span[u] {
            rows_u.push(coords_of(u, &nf_cache[mono])?);
        }
        comp_basis.push(linalg::row_basis(&rows_u));
    }
    let dims: Vec<usize> = comp_basis.iter().map(|b| b.len()).collect();

    // express a normal form in the component basis
    let in_basis = |u: usize, v: &ModuleVector| -> Result<Vec<Scalar>> {
        let co = coords_of(u, v)?;
        if comp_basis[u].is_empty() {
            return Ok(Vec::new());
        }
        let bt = linalg::transpose(&comp_basis[u], field);
        linalg::solve(&bt, &co, field)
            .ok_or_else(|| Error::Invalid("vector outside the lattice component".into()))
    };
    // a component basis row back to a module vector
    let basis_vector = |u: usize, row: &[Scalar]| -> ModuleVector {
        let mut coords: Vec<(usize, AlgebraElement)> = Vec::new();
        for (mono, &k) in &coord_index[u] {
            if !row[k].is_zero() {
                coords.push((
                    mono.0,
                    AlgebraElement::single(field, mono.1.clone(), row[k].clone()),
                ));
            }
        }
        ModuleVector::from_coords(field, coords)
    };

    // reversed action: cut a leading arrow on long monomials, read the
    // relation row on bare generators
    let ebar_on_mono = |e: usize, mono: &(usize, Path)| -> Result<ModuleVector> {
        let (j, p) = mono;
        if p.is_empty() {
            let mut coords: Vec<(usize, AlgebraElement)> = Vec::new();
            for l in 0..n {
                coords.push((l, tau[*j][l].left_transduction(e, q)));
            }
            Ok(ModuleVector::from_coords(field, coords))
        } else if p.arrows[0] == e {
            let rest = p.arrows[1..].to_vec();
            let base = match rest.first() {
                Some(&a) => q.arrow(a).src,
                None => types[*j],
            };
            Ok(ModuleVector::monomial(field, &(*j, Path { base, arrows: rest }), field.one()))
        } else {
            Ok(ModuleVector::zero(field))
        }
    };

    let mut maps: Vec<Mat> = Vec::with_capacity(q.arrow_count());
    for e in 0..q.arrow_count() {
        let u = q.arrow(e).src;
        let wv = q.arrow(e).dst;
        let mut m = linalg::zeros(field, dims[wv], dims[u]);
        for (col, brow) in comp_basis[u].iter().enumerate() {
            // act monomial by monomial on the basis vector
            let vec = basis_vector(u, brow);
            let mut img = ModuleVector::zero(field);
            for (mono, c) in vec.monomials() {
                img = img.add(&ebar_on_mono(e, &mono)?.scalar_mul(c))?;
            }
            let img = weak::normal_form(&img, &basis, &module, q)?;
            let co = in_basis(wv, &img)?;
            for (i, x) in co.iter().enumerate() {
                m[i][col] = x.clone();
            }
        }
        maps.push(m);
    }
    let lattice = Rep::new(q, Side::OverEbar, field, dims, maps)?;

    // generator images in the lattice coordinates
    let mut generator_images = Vec::with_capacity(n);
    for j in 0..n {
        let mono = (j, Path::trivial(types[j]));
        let nf = weak::normal_form(
            &ModuleVector::monomial(field, &mono, field.one()),
            &basis,
            &module,
            q,
        )?;
        let mut gv = lattice.zero_vec();
        gv[types[j]] = in_basis(types[j], &nf)?;
        generator_images.push(gv);
    }

    let all_factors = rep::composition_series(&lattice, q)?;
    let mut factors: Vec<(Rep, usize)> = Vec::new();
    for f in all_factors {
        if rep::is_coker_nu(&f, q).is_some() {
            continue;
        }
        let mut merged = false;
        for (kept, mult) in factors.iter_mut() {
            if rep::are_isomorphic(kept, &f, q)? {
                *mult += 1;
                merged = true;
                break;
            }
        }
        if !merged {
            factors.push((f, 1));
        }
    }
    let length = rep::induced_length(&lattice, q)?;
    let blanchfield = is_blanchfield_induced(&lattice, q);
    Ok(TorsionReport { lattice, generator_images, length, factors, blanchfield })
}

/// Iterates A -> sum of the reversed-arrow images of A until stable;
/// the result is a sub-lattice fixed by that sum.
pub fn lattice_core(a: &Rep, q: &Quiver) -> Result<Rep> {
    if !is_blanchfield_induced(a, q) {
        return Err(Error::NotBlanchfield("nonzero sink component".into()));
    }
    let field = a.field;
    let d = a.dims.len();
    let mut cur = Subspace {
        basis: a.dims.iter().map(|&k| linalg::identity(field, k)).collect(),
    };
    loop {
        let mut next = Subspace::empty(d);
        for e in 0..q.arrow_count() {
            let u = a.map_in(q, e);
            let wv = a.map_out(q, e);
            for row in &cur.basis[u] {
                let img = linalg::mat_vec(&a.maps[e], row, field);
                let mut m = next.basis[wv].clone();
                m.push(img);
                next.basis[wv] = linalg::row_basis(&m);
            }
        }
        if next.dims() == cur.dims() {
            return rep::sub_rep(a, q, &cur);
        }
        cur = next;
    }
}
