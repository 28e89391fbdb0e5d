//! Simplicial maps between finite simplicial sets.
//!
//! A map is stored by its values on nondegenerate simplices only; values on
//! degenerate simplices follow by pushing the degeneracy word through.

use std::collections::HashMap;

use crate::error::{Budget, Error, Result};
use crate::simplicial::{word_after_degeneracy, SSet, SimplexRef};

/// A simplicial map.  `images[dim][idx]` is the value on the nondegenerate
/// `dim`-simplex `idx` of the domain; the domain and codomain are passed to
/// the operations explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SMap {
    images: Vec<Vec<SimplexRef>>,
}

impl SMap {
    pub fn from_images(images: Vec<Vec<SimplexRef>>) -> SMap {
        SMap { images }
    }

    pub fn into_images(self) -> Vec<Vec<SimplexRef>> {
        self.images
    }

    pub fn identity(s: &SSet) -> SMap {
        let images = (0..=s.max_dim())
            .map(|dim| s.nondeg_refs(dim).collect())
            .collect();
        SMap { images }
    }

    pub fn images(&self) -> &Vec<Vec<SimplexRef>> {
        &self.images
    }

    pub fn image_of_nondeg(&self, dim: usize, idx: usize) -> &SimplexRef {
        &self.images[dim][idx]
    }

    /// Value on an arbitrary simplex of the domain.
    pub fn eval(&self, r: &SimplexRef) -> SimplexRef {
        let mut out = self.images[r.base_dim][r.base_idx].clone();
        for &j in r.word.iter().rev() {
            out.word = word_after_degeneracy(&out.word, j);
        }
        out
    }

    /// Checks that every stored image exists in `cod` at the right dimension
    /// and that the map commutes with all faces.
    pub fn validate(&self, dom: &SSet, cod: &SSet) -> Result<()> {
        if self.images.len() != dom.max_dim() + 1 {
            return Err(Error::Invalid(format!(
                "map covers {} dimensions, domain has {}",
                self.images.len(),
                dom.max_dim() + 1
            )));
        }
        for dim in 0..=dom.max_dim() {
            if self.images[dim].len() != dom.nondeg_count(dim) {
                return Err(Error::Invalid(format!(
                    "map has {} images in dim {dim}, domain has {} simplices",
                    self.images[dim].len(),
                    dom.nondeg_count(dim)
                )));
            }
            for idx in 0..dom.nondeg_count(dim) {
                let im = &self.images[dim][idx];
                if im.dim() != dim
                    || im.base_dim > cod.max_dim()
                    || im.base_idx >= cod.nondeg_count(im.base_dim)
                {
                    return Err(Error::Invalid(format!(
                        "image of {} is malformed",
                        dom.label(dim, idx)
                    )));
                }
                let r = SimplexRef::nondeg(dim, idx);
                for i in 0..=dim {
                    if dim == 0 {
                        break;
                    }
                    let a = self.eval(&dom.face(&r, i));
                    let b = cod.face(&self.eval(&r), i);
                    if a != b {
                        return Err(Error::Invalid(format!(
                            "map does not commute with d_{i} on {}",
                            dom.label(dim, idx)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `other` after `self` (self: A -> B, other: B -> C).
    pub fn then(&self, other: &SMap) -> SMap {
        let images = self
            .images
            .iter()
            .map(|dim_images| dim_images.iter().map(|r| other.eval(r)).collect())
            .collect();
        SMap { images }
    }
}

/// A partial assignment used to constrain map enumeration: required images
/// of selected nondegenerate domain simplices.
pub type Constraints = HashMap<(usize, usize), SimplexRef>;

/// Enumerates all simplicial maps `dom -> cod`, lowest dimensions first,
/// subject to `constraints`.  Each candidate assignment costs one budget
/// node.
pub fn enumerate_maps(
    dom: &SSet,
    cod: &SSet,
    constraints: &Constraints,
    budget: &mut Budget,
) -> Result<Vec<SMap>> {
    let mut out = Vec::new();
    let mut images: Vec<Vec<SimplexRef>> = vec![Vec::new(); dom.max_dim() + 1];
    // candidate pools per dimension, computed lazily per dim
    let pools: Vec<Vec<SimplexRef>> =
        (0..=dom.max_dim()).map(|dim| cod.simplices(dim)).collect();
    search(dom, cod, constraints, &pools, 0, 0, &mut images, &mut out, budget)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    dom: &SSet,
    cod: &SSet,
    constraints: &Constraints,
    pools: &[Vec<SimplexRef>],
    dim: usize,
    idx: usize,
    images: &mut Vec<Vec<SimplexRef>>,
    out: &mut Vec<SMap>,
    budget: &mut Budget,
) -> Result<()> {
    if dim > dom.max_dim() {
        out.push(SMap { images: images.clone() });
        return Ok(());
    }
    if idx == dom.nondeg_count(dim) {
        return search(dom, cod, constraints, pools, dim + 1, 0, images, out, budget);
    }
    let r = SimplexRef::nondeg(dim, idx);
    // faces of r are already assigned; candidate must match them
    let wanted: Vec<SimplexRef> = if dim == 0 {
        Vec::new()
    } else {
        (0..=dim)
            .map(|i| {
                let f = dom.face(&r, i);
                let partial = SMap { images: images.clone() };
                partial.eval(&f)
            })
            .collect()
    };
    let forced = constraints.get(&(dim, idx));
    for cand in &pools[dim] {
        budget.spend(1)?;
        if let Some(f) = forced {
            if f != cand {
                continue;
            }
        }
        if dim > 0 {
            let ok = (0..=dim).all(|i| cod.face(cand, i) == wanted[i]);
            if !ok {
                continue;
            }
        }
        images[dim].push(cand.clone());
        search(dom, cod, constraints, pools, dim, idx + 1, images, out, budget)?;
        images[dim].pop();
    }
    Ok(())
}

/// Searches for an isomorphism, matching nondegenerate simplices dimension
/// by dimension.  Vertices are assigned in a breadth-first order over the
/// 1-skeleton with directed-edge-multiplicity pruning; higher simplices are
/// then forced by their face tuples up to a finite choice.
pub fn is_isomorphic(a: &SSet, b: &SSet, budget: &mut Budget) -> Result<Option<SMap>> {
    if a.max_dim() != b.max_dim() {
        return Ok(None);
    }
    for dim in 0..=a.max_dim() {
        if a.nondeg_count(dim) != b.nondeg_count(dim) {
            return Ok(None);
        }
    }
    let n0 = a.nondeg_count(0);
    // directed nondegenerate edge multiplicities
    let edge_mult = |s: &SSet| -> HashMap<(usize, usize), usize> {
        let mut m = HashMap::new();
        for e in 0..s.nondeg_count(1) {
            let t = s.stored_face(1, e, 1).base_idx;
            let h = s.stored_face(1, e, 0).base_idx;
            *m.entry((t, h)).or_insert(0) += 1;
        }
        m
    };
    let am = edge_mult(a);
    let bm = edge_mult(b);

    // vertex assignment order: BFS over the undirected 1-skeleton of a
    let mut order = Vec::new();
    let mut seen = vec![false; n0];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n0];
    for (&(t, h), _) in am.iter() {
        adj[t].push(h);
        adj[h].push(t);
    }
    for start in 0..n0 {
        if seen[start] {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    let mut vmap: Vec<Option<usize>> = vec![None; n0];
    let mut used = vec![false; n0];
    if vertex_search(0, &order, &mut vmap, &mut used, &am, &bm, n0, a, b, budget)? {
        // vmap fixed a bijection on vertices; extend upward
        let mut images: Vec<Vec<SimplexRef>> = vec![Vec::new(); a.max_dim() + 1];
        images[0] = vmap
            .iter()
            .map(|v| SimplexRef::nondeg(0, v.unwrap()))
            .collect();
        if extend_iso(a, b, 1, 0, &mut images, budget)? {
            let m = SMap { images };
            return Ok(Some(m));
        }
        // retry other vertex bijections
        let mut vmap: Vec<Option<usize>> = vec![None; n0];
        let mut used = vec![false; n0];
        let mut found = None;
        all_vertex_bijections(
            0, &order, &mut vmap, &mut used, &am, &bm, n0, a, b, budget, &mut found,
        )?;
        return Ok(found);
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn vertex_search(
    pos: usize,
    order: &[usize],
    vmap: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    am: &HashMap<(usize, usize), usize>,
    bm: &HashMap<(usize, usize), usize>,
    n0: usize,
    a: &SSet,
    b: &SSet,
    budget: &mut Budget,
) -> Result<bool> {
    if pos == order.len() {
        return Ok(true);
    }
    let v = order[pos];
    for w in 0..n0 {
        if used[w] {
            continue;
        }
        budget.spend(1)?;
        if !vertex_compatible(v, w, vmap, am, bm) {
            continue;
        }
        vmap[v] = Some(w);
        used[w] = true;
        if vertex_search(pos + 1, order, vmap, used, am, bm, n0, a, b, budget)? {
            return Ok(true);
        }
        vmap[v] = None;
        used[w] = false;
    }
    Ok(false)
}

#[allow(clippy::too_many_arguments)]
fn all_vertex_bijections(
    pos: usize,
    order: &[usize],
    vmap: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    am: &HashMap<(usize, usize), usize>,
    bm: &HashMap<(usize, usize), usize>,
    n0: usize,
    a: &SSet,
    b: &SSet,
    budget: &mut Budget,
    found: &mut Option<SMap>,
) -> Result<()> {
    if found.is_some() {
        return Ok(());
    }
    if pos == order.len() {
        let mut images: Vec<Vec<SimplexRef>> = vec![Vec::new(); a.max_dim() + 1];
        images[0] = vmap
            .iter()
            .map(|v| SimplexRef::nondeg(0, v.unwrap()))
            .collect();
        if extend_iso(a, b, 1, 0, &mut images, budget)? {
            *found = Some(SMap { images });
        }
        return Ok(());
    }
    let v = order[pos];
    for w in 0..n0 {
        if used[w] || found.is_some() {
            continue;
        }
        budget.spend(1)?;
        if !vertex_compatible(v, w, vmap, am, bm) {
            continue;
        }
        vmap[v] = Some(w);
        used[w] = true;
        all_vertex_bijections(pos + 1, order, vmap, used, am, bm, n0, a, b, budget, found)?;
        vmap[v] = None;
        used[w] = false;
    }
    Ok(())
}

fn vertex_compatible(
    v: usize,
    w: usize,
    vmap: &[Option<usize>],
    am: &HashMap<(usize, usize), usize>,
    bm: &HashMap<(usize, usize), usize>,
) -> bool {
    for (u, mu) in vmap.iter().enumerate() {
        let Some(&x) = mu.as_ref() else { continue };
        if am.get(&(v, u)).copied().unwrap_or(0) != bm.get(&(w, x)).copied().unwrap_or(0) {
            return false;
        }
        if am.get(&(u, v)).copied().unwrap_or(0) != bm.get(&(x, w)).copied().unwrap_or(0) {
            return false;
        }
        if v == u && am.get(&(v, v)).copied().unwrap_or(0) != bm.get(&(w, w)).copied().unwrap_or(0)
        {
            return false;
        }
    }
    true
}

/// Extends a partial bijection on nondegenerate simplices, dimension by
/// dimension; each `dim`-simplex must map to an unused nondegenerate
/// `dim`-simplex with matching face images.
fn extend_iso(
    a: &SSet,
    b: &SSet,
    dim: usize,
    idx: usize,
    images: &mut Vec<Vec<SimplexRef>>,
    budget: &mut Budget,
) -> Result<bool> {
    if dim > a.max_dim() {
        return Ok(true);
    }
    if idx == a.nondeg_count(dim) {
        return extend_iso(a, b, dim + 1, 0, images, budget);
    }
    let r = SimplexRef::nondeg(dim, idx);
    let partial = SMap { images: images.clone() };
    let wanted: Vec<SimplexRef> = (0..=dim).map(|i| partial.eval(&a.face(&r, i))).collect();
    for cand_idx in 0..b.nondeg_count(dim) {
        budget.spend(1)?;
        let cand = SimplexRef::nondeg(dim, cand_idx);
        if images[dim].contains(&cand) {
            continue;
        }
        if (0..=dim).any(|i| b.face(&cand, i) != wanted[i]) {
            continue;
        }
        images[dim].push(cand);
        if extend_iso(a, b, dim, idx + 1, images, budget)? {
            return Ok(true);
        }
        images[dim].pop();
    }
    Ok(false)
}
