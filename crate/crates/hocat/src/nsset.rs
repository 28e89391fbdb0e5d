//! Multi-simplicial sets of arity up to 3 with the precategory constancy
//! rule, slice extraction, truncation to isomorphism classes, the
//! recursive equivalence check, and horizontal composition of 2-cells
//! through certified inverse-equivalence data.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, FinCat};
use crate::nerve::category_from_segal;
use crate::simplicial::{sset_from_tables, Tabulated};

/// A functor on a product of simplex categories, tabulated per
/// multi-index.  `faces[(m, d, i)]` is the index map induced by the i-th
/// face in direction d, from the cells at `m` to the cells at `m - e_d`;
/// degeneracies go the other way.
#[derive(Debug, Clone)]
pub struct NSSet {
    pub arity: usize,
    pub bounds: Vec<usize>,
    pub cells: BTreeMap<Vec<usize>, Vec<String>>,
    pub faces: BTreeMap<(Vec<usize>, usize, usize), Vec<usize>>,
    pub degs: BTreeMap<(Vec<usize>, usize, usize), Vec<usize>>,
}

/// All multi-indices within the bounds, lexicographically.
pub fn multi_indices(bounds: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..=b).map(move |v| {
                    let mut m2 = m.clone();
                    m2.push(v);
                    m2
                })
            })
            .collect();
    }
    out
}

fn shifted(m: &[usize], d: usize, delta: isize) -> Vec<usize> {
    let mut m2 = m.to_vec();
    m2[d] = (m2[d] as isize + delta) as usize;
    m2
}

impl NSSet {
    fn face_map(&self, m: &[usize], d: usize, i: usize) -> Result<&Vec<usize>> {
        self.faces
            .get(&(m.to_vec(), d, i))
            .ok_or_else(|| Error::Invalid(format!("missing face ({m:?}, {d}, {i})")))
    }

    fn deg_map(&self, m: &[usize], d: usize, i: usize) -> Result<&Vec<usize>> {
        self.degs
            .get(&(m.to_vec(), d, i))
            .ok_or_else(|| Error::Invalid(format!("missing degeneracy ({m:?}, {d}, {i})")))
    }

    pub fn validate(&self) -> Result<()> {
        if self.bounds.len() != self.arity {
            return Err(Error::Invalid("bounds length differs from arity".into()));
        }
        let all = multi_indices(&self.bounds);
        for m in &all {
            let n = self
                .cells
                .get(m)
                .ok_or_else(|| Error::Invalid(format!("missing cells at {m:?}")))?
                .len();
            for d in 0..self.arity {
                if m[d] >= 1 {
                    for i in 0..=m[d] {
                        let f = self.face_map(m, d, i)?;
                        let lower = self.cells[&shifted(m, d, -1)].len();
                        if f.len() != n || f.iter().any(|&v| v >= lower) {
                            return Err(Error::Invalid(format!(
                                "face ({m:?}, {d}, {i}) malformed"
                            )));
                        }
                    }
                }
                if m[d] < self.bounds[d] {
                    for i in 0..=m[d] {
                        let s = self.deg_map(m, d, i)?;
                        let upper = self.cells[&shifted(m, d, 1)].len();
                        if s.len() != n || s.iter().any(|&v| v >= upper) {
                            return Err(Error::Invalid(format!(
                                "degeneracy ({m:?}, {d}, {i}) malformed"
                            )));
                        }
                    }
                }
            }
        }
        // simplicial identities within each direction
        for m in &all {
            let n = self.cells[m].len();
            for d in 0..self.arity {
                if m[d] >= 2 {
                    let m1 = shifted(m, d, -1);
                    for j in 1..=m[d] {
                        for i in 0..j {
                            let dj = self.face_map(m, d, j)?;
                            let di = self.face_map(m, d, i)?;
                            let a = self.face_map(&m1, d, i)?;
                            let b = self.face_map(&m1, d, j - 1)?;
                            for c in 0..n {
                                if a[dj[c]] != b[di[c]] {
                                    return Err(Error::Invalid(format!(
                                        "d_{i} d_{j} fails at {m:?} dir {d}"
                                    )));
                                }
                            }
                        }
                    }
                }
                if m[d] + 2 <= self.bounds[d] {
                    let m1 = shifted(m, d, 1);
                    for i in 0..=m[d] {
                        for j in i..=m[d] {
                            let sj = self.deg_map(m, d, j)?;
                            let si = self.deg_map(m, d, i)?;
                            let a = self.deg_map(&m1, d, i)?;
                            let b = self.deg_map(&m1, d, j + 1)?;
                            for c in 0..n {
                                if a[sj[c]] != b[si[c]] {
                                    return Err(Error::Invalid(format!(
                                        "s_{i} s_{j} fails at {m:?} dir {d}"
                                    )));
                                }
                            }
                        }
                    }
                }
                if m[d] < self.bounds[d] {
                    let m1 = shifted(m, d, 1);
                    for j in 0..=m[d] {
                        let sj = self.deg_map(m, d, j)?;
                        for i in 0..=m[d] + 1 {
                            let di = self.face_map(&m1, d, i)?;
                            for c in 0..n {
                                let got = di[sj[c]];
                                let want = if i == j || i == j + 1 {
                                    c
                                } else if i < j {
                                    self.deg_map(&shifted(m, d, -1), d, j - 1)?
                                        [self.face_map(m, d, i)?[c]]
                                } else {
                                    self.deg_map(&shifted(m, d, -1), d, j)?
                                        [self.face_map(m, d, i - 1)?[c]]
                                };
                                if got != want {
                                    return Err(Error::Invalid(format!(
                                        "d_{i} s_{j} fails at {m:?} dir {d}"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        // structure maps in distinct directions commute
        for m in &all {
            let n = self.cells[m].len();
            for d in 0..self.arity {
                for e in d + 1..self.arity {
                    for i in 0..=m[d] {
                        for j in 0..=m[e] {
                            if m[d] >= 1 && m[e] >= 1 {
                                let a = self.face_map(&shifted(m, d, -1), e, j)?;
                                let fd = self.face_map(m, d, i)?;
                                let b = self.face_map(&shifted(m, e, -1), d, i)?;
                                let fe = self.face_map(m, e, j)?;
                                for c in 0..n {
                                    if a[fd[c]] != b[fe[c]] {
                                        return Err(Error::Invalid(format!(
                                            "faces in dirs {d},{e} do not commute at {m:?}"
                                        )));
                                    }
                                }
                            }
                            if m[d] >= 1 && m[e] < self.bounds[e] {
                                let a = self.deg_map(&shifted(m, d, -1), e, j)?;
                                let fd = self.face_map(m, d, i)?;
                                let b = self.face_map(&shifted(m, e, 1), d, i)?;
                                let se = self.deg_map(m, e, j)?;
                                for c in 0..n {
                                    if a[fd[c]] != b[se[c]] {
                                        return Err(Error::Invalid(format!(
                                            "face {d} and degeneracy {e} do not commute at {m:?}"
                                        )));
                                    }
                                }
                            }
                            if m[d] < self.bounds[d] && m[e] < self.bounds[e] {
                                let a = self.deg_map(&shifted(m, d, 1), e, j)?;
                                let sd = self.deg_map(m, d, i)?;
                                let b = self.deg_map(&shifted(m, e, 1), d, i)?;
                                let se = self.deg_map(m, e, j)?;
                                for c in 0..n {
                                    if a[sd[c]] != b[se[c]] {
                                        return Err(Error::Invalid(format!(
                                            "degeneracies in dirs {d},{e} do not commute at {m:?}"
                                        )));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        // constancy after the first zero coordinate
        for m in &all {
            if let Some(k) = m.iter().position(|&v| v == 0) {
                for d in k + 1..self.arity {
                    if m[d] >= 1 {
                        let m1 = shifted(m, d, -1);
                        if self.cells[m] != self.cells[&m1] {
                            return Err(Error::Invalid(format!(
                                "cells at {m:?} differ from {m1:?} despite zero at {k}"
                            )));
                        }
                        for i in 0..=m[d] {
                            let f = self.face_map(m, d, i)?;
                            if f.iter().enumerate().any(|(c, &v)| v != c) {
                                return Err(Error::Invalid(format!(
                                    "face ({m:?}, {d}, {i}) not the identity despite zero at {k}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The simplicial set in the last direction with the leading indices
    /// clamped at `front`.
    pub fn slice(&self, front: &[usize]) -> Result<Tabulated<usize>> {
        assert!(self.arity >= 1 && front.len() + 1 == self.arity);
        let q = *self.bounds.last().unwrap();
        let key = |v: usize| {
            let mut m = front.to_vec();
            m.push(v);
            m
        };
        let sets: Vec<Vec<usize>> =
            (0..=q).map(|v| (0..self.cells[&key(v)].len()).collect()).collect();
        let d = self.arity - 1;
        sset_from_tables(
            q,
            &sets,
            |v, &t, i| self.faces[&(key(v), d, i)][t],
            |v, &t, i| self.degs[&(key(v), d, i)][t],
            |v, &t| self.cells[&key(v)][t].clone(),
        )
    }
}

/// Isomorphism class of every object, numbered in order of first
/// appearance.
pub fn iso_classes(c: &FinCat) -> Vec<usize> {
    let n = c.objects.len();
    let mut class: Vec<Option<usize>> = vec![None; n];
    let mut next = 0;
    for x in 0..n {
        if class[x].is_some() {
            continue;
        }
        class[x] = Some(next);
        for y in x + 1..n {
            if class[y].is_none()
                && c.arrows_between(x, y).iter().any(|&a| c.inverse(a).is_some())
            {
                class[y] = Some(next);
            }
        }
        next += 1;
    }
    class.into_iter().map(|c| c.unwrap()).collect()
}

/// The result of one truncation: the lower-arity structure plus, per
/// clamped index, the class of every cell of the zero level.
pub struct Truncation {
    pub t: NSSet,
    pub tau: BTreeMap<Vec<usize>, Vec<usize>>,
    pub cats: BTreeMap<Vec<usize>, FinCat>,
}

/// Replaces every slice category by its set of isomorphism classes.
/// Every slice must literally be a nerve; the failing index is reported
/// otherwise.
pub fn truncate(a: &NSSet) -> Result<Truncation> {
    if a.arity == 0 {
        return Err(Error::Precondition("already a set".into()));
    }
    if *a.bounds.last().unwrap() < 3 {
        return Err(Error::Precondition(
            "need the last direction bounded by at least 3".into(),
        ));
    }
    let front_bounds = &a.bounds[..a.arity - 1];
    let mut tau = BTreeMap::new();
    let mut cats = BTreeMap::new();
    let mut cells = BTreeMap::new();
    for m in multi_indices(front_bounds) {
        let tab = a.slice(&m)?;
        let cat = category_from_segal(&tab.sset).map_err(|e| {
            Error::Precondition(format!("slice at {m:?} is not a nerve: {e}"))
        })?;
        let classes = iso_classes(&cat);
        let ncl = classes.iter().copied().max().map_or(0, |c| c + 1);
        let mut labels = vec![String::new(); ncl];
        for (v, &c) in classes.iter().enumerate() {
            if labels[c].is_empty() {
                labels[c] = format!("[{}]", cat.objects[v]);
            }
        }
        cells.insert(m.clone(), labels);
        tau.insert(m.clone(), classes);
        cats.insert(m, cat);
    }
    let mut faces = BTreeMap::new();
    let mut degs = BTreeMap::new();
    for m in multi_indices(front_bounds) {
        let mut m0 = m.clone();
        m0.push(0);
        let classes = &tau[&m];
        for d in 0..front_bounds.len() {
            if m[d] >= 1 {
                for i in 0..=m[d] {
                    let orig = &a.faces[&(m0.clone(), d, i)];
                    let lower = &tau[&shifted(&m, d, -1)];
                    let map: Vec<usize> = induced_on_classes(classes, orig, lower)
                        .ok_or_else(|| {
                            Error::Invalid(format!(
                                "face ({m:?}, {d}, {i}) not constant on classes"
                            ))
                        })?;
                    faces.insert((m.clone(), d, i), map);
                }
            }
            if m[d] < front_bounds[d] {
                for i in 0..=m[d] {
                    let orig = &a.degs[&(m0.clone(), d, i)];
                    let upper = &tau[&shifted(&m, d, 1)];
                    let map: Vec<usize> = induced_on_classes(classes, orig, upper)
                        .ok_or_else(|| {
                            Error::Invalid(format!(
                                "degeneracy ({m:?}, {d}, {i}) not constant on classes"
                            ))
                        })?;
                    degs.insert((m.clone(), d, i), map);
                }
            }
        }
    }
    let t = NSSet {
        arity: a.arity - 1,
        bounds: front_bounds.to_vec(),
        cells,
        faces,
        degs,
    };
    t.validate()?;
    Ok(Truncation { t, tau, cats })
}

/// The map on classes induced by a map on representatives, or `None` when
/// it is not well defined.
fn induced_on_classes(
    src_class: &[usize],
    orig: &[usize],
    dst_class: &[usize],
) -> Option<Vec<usize>> {
    let ncl = src_class.iter().copied().max().map_or(0, |c| c + 1);
    let mut out = vec![usize::MAX; ncl];
    for (v, &c) in src_class.iter().enumerate() {
        let img = dst_class[orig[v]];
        if out[c] == usize::MAX {
            out[c] = img;
        } else if out[c] != img {
            return None;
        }
    }
    Some(out)
}

/// A map of multi-simplicial sets: an index map per multi-index.
#[derive(Debug, Clone)]
pub struct NMap {
    pub maps: BTreeMap<Vec<usize>, Vec<usize>>,
}

impl NMap {
    pub fn identity(a: &NSSet) -> NMap {
        NMap {
            maps: a.cells.iter().map(|(m, c)| (m.clone(), (0..c.len()).collect())).collect(),
        }
    }

    pub fn validate(&self, a: &NSSet, b: &NSSet) -> Result<()> {
        if a.arity != b.arity || a.bounds != b.bounds {
            return Err(Error::Invalid("shape mismatch".into()));
        }
        for m in multi_indices(&a.bounds) {
            let f = self
                .maps
                .get(&m)
                .ok_or_else(|| Error::Invalid(format!("missing component at {m:?}")))?;
            if f.len() != a.cells[&m].len() || f.iter().any(|&v| v >= b.cells[&m].len()) {
                return Err(Error::Invalid(format!("component at {m:?} malformed")));
            }
            for d in 0..a.arity {
                if m[d] >= 1 {
                    let m1 = shifted(&m, d, -1);
                    for i in 0..=m[d] {
                        let af = &a.faces[&(m.clone(), d, i)];
                        let bf = &b.faces[&(m.clone(), d, i)];
                        for c in 0..f.len() {
                            if self.maps[&m1][af[c]] != bf[f[c]] {
                                return Err(Error::Invalid(format!(
                                    "not natural for face ({m:?}, {d}, {i})"
                                )));
                            }
                        }
                    }
                }
                if m[d] < a.bounds[d] {
                    let m1 = shifted(&m, d, 1);
                    for i in 0..=m[d] {
                        let ad = &a.degs[&(m.clone(), d, i)];
                        let bd = &b.degs[&(m.clone(), d, i)];
                        for c in 0..f.len() {
                            if self.maps[&m1][ad[c]] != bd[f[c]] {
                                return Err(Error::Invalid(format!(
                                    "not natural for degeneracy ({m:?}, {d}, {i})"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The truncated map, checked to be constant on classes.
pub fn truncate_map(f: &NMap, ta: &Truncation, tb: &Truncation) -> Result<NMap> {
    let mut maps = BTreeMap::new();
    for (m, classes) in &ta.tau {
        let mut m0 = m.clone();
        m0.push(0);
        let map = induced_on_classes(classes, &f.maps[&m0], &tb.tau[m]).ok_or_else(|| {
            Error::Invalid(format!("map at {m:?} not constant on classes"))
        })?;
        maps.insert(m.clone(), map);
    }
    Ok(NMap { maps })
}

/// A slice category with the dictionary between its arrows and the
/// level-1 cells.
pub struct SliceCat {
    pub cat: FinCat,
    pub arrow_cell: Vec<usize>,
    pub cell_arrow: Vec<usize>,
}

pub fn slice_cat(a: &NSSet, front: &[usize]) -> Result<SliceCat> {
    let tab = a.slice(front)?;
    let cat = category_from_segal(&tab.sset)?;
    let edges = tab.sset.simplices(1);
    let mut ref_cell = HashMap::new();
    for (c, _) in a.cells[&{
        let mut m = front.to_vec();
        m.push(1);
        m
    }]
        .iter()
        .enumerate()
    {
        ref_cell.insert(tab.refs[&(1, c)].clone(), c);
    }
    let arrow_cell: Vec<usize> = edges.iter().map(|e| ref_cell[e]).collect();
    let mut cell_arrow = vec![0; arrow_cell.len()];
    for (arr, &c) in arrow_cell.iter().enumerate() {
        cell_arrow[c] = arr;
    }
    Ok(SliceCat { cat, arrow_cell, cell_arrow })
}

fn functor_of_nmap(fa: &SliceCat, fb: &SliceCat, f: &NMap) -> Result<CatFunctor> {
    let object_map = f.maps[&vec![0]].clone();
    let arrow_map = fa
        .arrow_cell
        .iter()
        .map(|&c| fb.cell_arrow[f.maps[&vec![1]][c]])
        .collect();
    let functor = CatFunctor { object_map, arrow_map };
    functor.validate(&fa.cat, &fb.cat)?;
    Ok(functor)
}

fn is_equivalence(a: &FinCat, b: &FinCat, f: &CatFunctor) -> bool {
    // fully faithful
    for x in 0..a.objects.len() {
        for y in 0..a.objects.len() {
            let mut images: Vec<usize> = a
                .arrows_between(x, y)
                .into_iter()
                .map(|arr| f.arrow_map[arr])
                .collect();
            images.sort_unstable();
            images.dedup();
            let mut target = b.arrows_between(f.object_map[x], f.object_map[y]);
            target.sort_unstable();
            if images != target {
                return false;
            }
        }
    }
    // essentially surjective
    let bclasses = iso_classes(b);
    let hit: std::collections::BTreeSet<usize> =
        f.object_map.iter().map(|&x| bclasses[x]).collect();
    hit.len() == bclasses.iter().copied().max().map_or(0, |c| c + 1)
}

/// The recursive equivalence check: at depth 1 an equivalence of
/// categories, above that fully faithful on all hom slices plus
/// surjectivity after n truncations.
pub fn n_equivalence_check(a: &NSSet, b: &NSSet, f: &NMap, n: usize) -> Result<bool> {
    f.validate(a, b)?;
    match n {
        1 => {
            if a.arity != 1 {
                return Err(Error::Precondition("depth 1 needs arity 1".into()));
            }
            let fa = slice_cat(a, &[])?;
            let fb = slice_cat(b, &[])?;
            let functor = functor_of_nmap(&fa, &fb, f)?;
            Ok(is_equivalence(&fa.cat, &fb.cat, &functor))
        }
        2 => {
            if a.arity != 2 {
                return Err(Error::Precondition("depth 2 needs arity 2".into()));
            }
            // hom slices are (n-1)-equivalences
            let nobj = a.cells[&vec![0, 0]].len();
            for x in 0..nobj {
                for y in 0..nobj {
                    let (ha, ra) = hom_slice(a, x, y)?;
                    let (hb, rb) = hom_slice(b, f.maps[&vec![0, 0]][x], f.maps[&vec![0, 0]][y])?;
                    let mut maps = BTreeMap::new();
                    for q in 0..=a.bounds[1] {
                        let full = &f.maps[&vec![1, q]];
                        let sub: Vec<usize> = ra[q]
                            .iter()
                            .map(|&c| {
                                rb[q].iter().position(|&c2| c2 == full[c]).ok_or_else(|| {
                                    Error::Invalid(
                                        "map does not preserve hom endpoints".into(),
                                    )
                                })
                            })
                            .collect::<Result<_>>()?;
                        maps.insert(vec![q], sub);
                    }
                    if !n_equivalence_check(&ha, &hb, &NMap { maps }, 1)? {
                        return Ok(false);
                    }
                }
            }
            // T^2(f) surjective
            let ta = truncate(a)?;
            let tb = truncate(b)?;
            let tf = truncate_map(f, &ta, &tb)?;
            let ta2 = truncate(&ta.t)?;
            let tb2 = truncate(&tb.t)?;
            let tf2 = truncate_map(&tf, &ta2, &tb2)?;
            let img: std::collections::BTreeSet<usize> =
                tf2.maps[&Vec::new()].iter().copied().collect();
            Ok(img.len() == tb2.t.cells[&Vec::new()].len())
        }
        _ => Err(Error::Precondition(format!("depth {n} not supported"))),
    }
}

/// The hom slice between two objects of an arity-2 structure, with the
/// original cell index of every slice cell per level.
fn hom_slice(a: &NSSet, x: usize, y: usize) -> Result<(NSSet, Vec<Vec<usize>>)> {
    let q = a.bounds[1];
    let mut keep: Vec<Vec<usize>> = Vec::with_capacity(q + 1);
    for v in 0..=q {
        let m = vec![1, v];
        let src = &a.faces[&(m.clone(), 0, 1)];
        let tgt = &a.faces[&(m.clone(), 0, 0)];
        keep.push(
            (0..a.cells[&m].len()).filter(|&c| src[c] == x && tgt[c] == y).collect(),
        );
    }
    let pos: Vec<HashMap<usize, usize>> = keep
        .iter()
        .map(|ks| ks.iter().enumerate().map(|(i, &c)| (c, i)).collect())
        .collect();
    let mut cells = BTreeMap::new();
    let mut faces = BTreeMap::new();
    let mut degs = BTreeMap::new();
    for v in 0..=q {
        cells.insert(
            vec![v],
            keep[v].iter().map(|&c| a.cells[&vec![1, v]][c].clone()).collect(),
        );
        if v >= 1 {
            for i in 0..=v {
                let orig = &a.faces[&(vec![1, v], 1, i)];
                faces.insert(
                    (vec![v], 0, i),
                    keep[v].iter().map(|&c| pos[v - 1][&orig[c]]).collect(),
                );
            }
        }
        if v < q {
            for i in 0..=v {
                let orig = &a.degs[&(vec![1, v], 1, i)];
                degs.insert(
                    (vec![v], 0, i),
                    keep[v].iter().map(|&c| pos[v + 1][&orig[c]]).collect(),
                );
            }
        }
    }
    let s = NSSet { arity: 1, bounds: vec![q], cells, faces, degs };
    s.validate()?;
    Ok((s, keep))
}

/// A set viewed as a constant structure of the given shape.
pub fn discrete_nsset(labels: &[String], bounds: &[usize]) -> NSSet {
    let cells: BTreeMap<_, _> =
        multi_indices(bounds).into_iter().map(|m| (m, labels.to_vec())).collect();
    let ident: Vec<usize> = (0..labels.len()).collect();
    let mut faces = BTreeMap::new();
    let mut degs = BTreeMap::new();
    for m in multi_indices(bounds) {
        for d in 0..bounds.len() {
            if m[d] >= 1 {
                for i in 0..=m[d] {
                    faces.insert((m.clone(), d, i), ident.clone());
                }
            }
            if m[d] < bounds[d] {
                for i in 0..=m[d] {
                    degs.insert((m.clone(), d, i), ident.clone());
                }
            }
        }
    }
    NSSet { arity: bounds.len(), bounds: bounds.to_vec(), cells, faces, degs }
}

type HomChain = (usize, Vec<usize>);

fn chain_face(c: &FinCat, ch: &HomChain, i: usize) -> HomChain {
    let (x, arrows) = ch;
    let q = arrows.len();
    if i == 0 {
        if q == 1 {
            (c.arrows[arrows[0]].cod, Vec::new())
        } else {
            (c.arrows[arrows[0]].cod, arrows[1..].to_vec())
        }
    } else if i == q {
        (*x, arrows[..q - 1].to_vec())
    } else {
        let mut v = arrows[..i - 1].to_vec();
        v.push(c.compose(arrows[i], arrows[i - 1]));
        v.extend_from_slice(&arrows[i + 1..]);
        (*x, v)
    }
}

fn chain_deg(c: &FinCat, ch: &HomChain, i: usize) -> HomChain {
    let (x, arrows) = ch;
    let obj = if i == 0 { *x } else { c.arrows[arrows[i - 1]].cod };
    let mut v = arrows.clone();
    v.insert(i, c.identity[obj]);
    (*x, v)
}

fn all_chains(c: &FinCat, q: usize) -> Vec<HomChain> {
    let mut out: Vec<HomChain> = (0..c.objects.len()).map(|x| (x, Vec::new())).collect();
    for _ in 0..q {
        out = out
            .into_iter()
            .flat_map(|(x, arrows)| {
                let end = if arrows.is_empty() {
                    x
                } else {
                    c.arrows[*arrows.last().unwrap()].cod
                };
                (0..c.arrows.len())
                    .filter(move |&a| c.arrows[a].dom == end)
                    .map(move |a| {
                        let mut v = arrows.clone();
                        v.push(a);
                        (x, v)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

/// A strict 2-category: hom categories with tabulated horizontal
/// composition functors and unit 1-cells.
pub struct TwoCat {
    pub objects: Vec<String>,
    pub hom: Vec<Vec<FinCat>>,
    pub unit: Vec<usize>,
    /// `comp_ob[&(x,y,z)][f][g]`: composite object of hom(x,z)
    pub comp_ob: HashMap<(usize, usize, usize), Vec<Vec<usize>>>,
    pub comp_arr: HashMap<(usize, usize, usize), Vec<Vec<usize>>>,
}

impl TwoCat {
    pub fn validate(&self) -> Result<()> {
        let n = self.objects.len();
        for x in 0..n {
            for y in 0..n {
                self.hom[x][y].validate()?;
                for z in 0..n {
                    let co = &self.comp_ob[&(x, y, z)];
                    let ca = &self.comp_arr[&(x, y, z)];
                    let h1 = &self.hom[x][y];
                    let h2 = &self.hom[y][z];
                    let h = &self.hom[x][z];
                    for (a1, arr1) in h1.arrows.iter().enumerate() {
                        for (a2, arr2) in h2.arrows.iter().enumerate() {
                            let img = ca[a1][a2];
                            if h.arrows[img].dom != co[arr1.dom][arr2.dom]
                                || h.arrows[img].cod != co[arr1.cod][arr2.cod]
                            {
                                return Err(Error::Invalid(
                                    "horizontal composition breaks endpoints".into(),
                                ));
                            }
                        }
                    }
                    for f in 0..h1.objects.len() {
                        for g in 0..h2.objects.len() {
                            if ca[h1.identity[f]][h2.identity[g]] != h.identity[co[f][g]] {
                                return Err(Error::Invalid(
                                    "horizontal composition breaks identities".into(),
                                ));
                            }
                        }
                    }
                    // interchange with vertical composition
                    for b1 in 0..h1.arrows.len() {
                        for a1 in 0..h1.arrows.len() {
                            if h1.arrows[a1].cod != h1.arrows[b1].dom {
                                continue;
                            }
                            for b2 in 0..h2.arrows.len() {
                                for a2 in 0..h2.arrows.len() {
                                    if h2.arrows[a2].cod != h2.arrows[b2].dom {
                                        continue;
                                    }
                                    let lhs = ca[h1.compose(b1, a1)][h2.compose(b2, a2)];
                                    let rhs = h.compose(ca[b1][b2], ca[a1][a2]);
                                    if lhs != rhs {
                                        return Err(Error::Invalid(
                                            "interchange fails".into(),
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        // strict unit and associativity on objects and arrows
        for x in 0..n {
            for y in 0..n {
                let h = &self.hom[x][y];
                for f in 0..h.objects.len() {
                    if self.comp_ob[&(x, x, y)][self.unit[x]][f] != f
                        || self.comp_ob[&(x, y, y)][f][self.unit[y]] != f
                    {
                        return Err(Error::Invalid("units not strict".into()));
                    }
                }
                for z in 0..n {
                    for w in 0..n {
                        for f in 0..self.hom[x][y].objects.len() {
                            for g in 0..self.hom[y][z].objects.len() {
                                for k in 0..self.hom[z][w].objects.len() {
                                    let fg = self.comp_ob[&(x, y, z)][f][g];
                                    let gk = self.comp_ob[&(y, z, w)][g][k];
                                    if self.comp_ob[&(x, z, w)][fg][k]
                                        != self.comp_ob[&(x, y, w)][f][gk]
                                    {
                                        return Err(Error::Invalid(
                                            "horizontal composition not associative".into(),
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

type PrismCell = (Vec<usize>, Vec<HomChain>);

/// The double nerve of a strict 2-category: a `(p,q)` cell is an object
/// chain with a `q`-chain of 2-cells along each step.
pub fn two_cat_nsset(t: &TwoCat, max_p: usize, max_q: usize) -> Result<NSSet> {
    let nobj = t.objects.len();
    let mut level_cells: BTreeMap<Vec<usize>, Vec<PrismCell>> = BTreeMap::new();
    let mut index: BTreeMap<Vec<usize>, HashMap<PrismCell, usize>> = BTreeMap::new();
    for p in 0..=max_p {
        let mut obj_chains: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..=p {
            obj_chains = obj_chains
                .into_iter()
                .flat_map(|c| {
                    (0..nobj).map(move |x| {
                        let mut c2 = c.clone();
                        c2.push(x);
                        c2
                    })
                })
                .collect();
        }
        for q in 0..=max_q {
            let mut cells = Vec::new();
            for chain in &obj_chains {
                let mut tuples: Vec<Vec<HomChain>> = vec![Vec::new()];
                for k in 0..p {
                    let chains = all_chains(&t.hom[chain[k]][chain[k + 1]], q);
                    tuples = tuples
                        .into_iter()
                        .flat_map(|tp| {
                            chains.iter().map(move |ch| {
                                let mut tp2 = tp.clone();
                                tp2.push(ch.clone());
                                tp2
                            })
                        })
                        .collect();
                }
                for tp in tuples {
                    cells.push((chain.clone(), tp));
                }
            }
            let idx: HashMap<PrismCell, usize> =
                cells.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
            level_cells.insert(vec![p, q], cells);
            index.insert(vec![p, q], idx);
        }
    }
    let label = |(chain, tp): &PrismCell| {
        let os: Vec<&str> = chain.iter().map(|&x| t.objects[x].as_str()).collect();
        let fs: Vec<String> = tp
            .iter()
            .enumerate()
            .map(|(k, (x, arrows))| {
                let h = &t.hom[chain[k]][chain[k + 1]];
                if arrows.is_empty() {
                    h.objects[*x].clone()
                } else {
                    arrows.iter().map(|&a| h.arrows[a].name.clone()).collect::<Vec<_>>().join(";")
                }
            })
            .collect();
        format!("{}:{}", os.join(","), fs.join("|"))
    };
    let mut cells = BTreeMap::new();
    for (m, cs) in &level_cells {
        cells.insert(m.clone(), cs.iter().map(&label).collect::<Vec<String>>());
    }
    let mut faces: BTreeMap<(Vec<usize>, usize, usize), Vec<usize>> = BTreeMap::new();
    let mut degs: BTreeMap<(Vec<usize>, usize, usize), Vec<usize>> = BTreeMap::new();
    for p in 0..=max_p {
        for q in 0..=max_q {
            let m = vec![p, q];
            let cs = &level_cells[&m];
            // horizontal faces: ends drop, middles compose entrywise
            if p >= 1 {
                for i in 0..=p {
                    let target = &index[&vec![p - 1, q]];
                    let map = cs
                        .iter()
                        .map(|(chain, tp)| {
                            let mut c2 = chain.clone();
                            c2.remove(i);
                            let tp2: Vec<HomChain> = if i == 0 {
                                tp[1..].to_vec()
                            } else if i == p {
                                tp[..p - 1].to_vec()
                            } else {
                                let (x, y, z) = (chain[i - 1], chain[i], chain[i + 1]);
                                let co = &t.comp_ob[&(x, y, z)];
                                let ca = &t.comp_arr[&(x, y, z)];
                                let (f, fa) = &tp[i - 1];
                                let (g, ga) = &tp[i];
                                let merged = (
                                    co[*f][*g],
                                    fa.iter()
                                        .zip(ga)
                                        .map(|(&a1, &a2)| ca[a1][a2])
                                        .collect(),
                                );
                                let mut v = tp[..i - 1].to_vec();
                                v.push(merged);
                                v.extend_from_slice(&tp[i + 1..]);
                                v
                            };
                            target[&(c2, tp2)]
                        })
                        .collect();
                    faces.insert((m.clone(), 0, i), map);
                }
            }
            if p < max_p {
                for i in 0..=p {
                    let target = &index[&vec![p + 1, q]];
                    let map = cs
                        .iter()
                        .map(|(chain, tp)| {
                            let mut c2 = chain.clone();
                            c2.insert(i, chain[i]);
                            let h = &t.hom[chain[i]][chain[i]];
                            let u = t.unit[chain[i]];
                            let unit_chain = (u, vec![h.identity[u]; q]);
                            let mut tp2 = tp.clone();
                            tp2.insert(i, unit_chain);
                            target[&(c2, tp2)]
                        })
                        .collect();
                    degs.insert((m.clone(), 0, i), map);
                }
            }
            // vertical structure: componentwise chain calculus
            if q >= 1 {
                for i in 0..=q {
                    let target = &index[&vec![p, q - 1]];
                    let map = cs
                        .iter()
                        .map(|(chain, tp)| {
                            let tp2: Vec<HomChain> = tp
                                .iter()
                                .enumerate()
                                .map(|(k, ch)| {
                                    chain_face(&t.hom[chain[k]][chain[k + 1]], ch, i)
                                })
                                .collect();
                            target[&(chain.clone(), tp2)]
                        })
                        .collect();
                    faces.insert((m.clone(), 1, i), map);
                }
            }
            if q < max_q {
                for i in 0..=q {
                    let target = &index[&vec![p, q + 1]];
                    let map = cs
                        .iter()
                        .map(|(chain, tp)| {
                            let tp2: Vec<HomChain> = tp
                                .iter()
                                .enumerate()
                                .map(|(k, ch)| {
                                    chain_deg(&t.hom[chain[k]][chain[k + 1]], ch, i)
                                })
                                .collect();
                            target[&(chain.clone(), tp2)]
                        })
                        .collect();
                    degs.insert((m.clone(), 1, i), map);
                }
            }
        }
    }
    let a = NSSet { arity: 2, bounds: vec![max_p, max_q], cells, faces, degs };
    a.validate()?;
    Ok(a)
}

/// The nerve of a category as an arity-1 structure.
pub fn nerve_cells(c: &FinCat, max_q: usize) -> NSSet {
    let mut cells = BTreeMap::new();
    let mut index: Vec<HashMap<HomChain, usize>> = Vec::with_capacity(max_q + 1);
    let mut chains: Vec<Vec<HomChain>> = Vec::with_capacity(max_q + 1);
    for q in 0..=max_q {
        let cs = all_chains(c, q);
        index.push(cs.iter().enumerate().map(|(i, ch)| (ch.clone(), i)).collect());
        cells.insert(
            vec![q],
            cs.iter()
                .map(|(x, arrows)| {
                    if arrows.is_empty() {
                        c.objects[*x].clone()
                    } else {
                        arrows
                            .iter()
                            .map(|&a| c.arrows[a].name.clone())
                            .collect::<Vec<_>>()
                            .join(";")
                    }
                })
                .collect::<Vec<String>>(),
        );
        chains.push(cs);
    }
    let mut faces = BTreeMap::new();
    let mut degs = BTreeMap::new();
    for q in 0..=max_q {
        if q >= 1 {
            for i in 0..=q {
                faces.insert(
                    (vec![q], 0, i),
                    chains[q].iter().map(|ch| index[q - 1][&chain_face(c, ch, i)]).collect(),
                );
            }
        }
        if q < max_q {
            for i in 0..=q {
                degs.insert(
                    (vec![q], 0, i),
                    chains[q].iter().map(|ch| index[q + 1][&chain_deg(c, ch, i)]).collect(),
                );
            }
        }
    }
    NSSet { arity: 1, bounds: vec![max_q], cells, faces, degs }
}

/// Inverse-equivalence data for the degree-2 spine functor of an arity-2
/// structure: a functor back from composable pairs plus the components of
/// the natural isomorphism to the identity.
pub struct TwoCellCert {
    pub gamma_ob: Vec<usize>,
    pub gamma_arr: Vec<usize>,
    pub alpha: Vec<usize>,
}

/// The category of composable pairs of 1-cells, with the dictionaries
/// back to the level categories and the spine functor.
pub struct PairData {
    pub c1: SliceCat,
    pub c2: SliceCat,
    pub fcat: FinCat,
    pub ob_pairs: Vec<(usize, usize)>,
    pub arr_pairs: Vec<(usize, usize)>,
    pub ob_index: HashMap<(usize, usize), usize>,
    pub arr_index: HashMap<(usize, usize), usize>,
    pub delta_ob: Vec<usize>,
    pub delta_arr: Vec<usize>,
}

pub fn pair_data(a: &NSSet) -> Result<PairData> {
    if a.arity != 2 || a.bounds[0] < 2 {
        return Err(Error::Precondition("need arity 2 with at least two levels".into()));
    }
    let c1 = slice_cat(a, &[1])?;
    let c2 = slice_cat(a, &[2])?;
    let src = |f: usize| a.faces[&(vec![1, 0], 0, 1)][f];
    let tgt = |f: usize| a.faces[&(vec![1, 0], 0, 0)][f];
    let n1 = a.cells[&vec![1, 0]].len();
    let ob_pairs: Vec<(usize, usize)> = (0..n1)
        .flat_map(|f| (0..n1).map(move |g| (f, g)))
        .filter(|&(f, g)| tgt(f) == src(g))
        .collect();
    let ob_index: HashMap<(usize, usize), usize> =
        ob_pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let na = c1.cat.arrows.len();
    let arr_pairs: Vec<(usize, usize)> = (0..na)
        .flat_map(|u| (0..na).map(move |v| (u, v)))
        .filter(|&(u, v)| {
            ob_index.contains_key(&(c1.cat.arrows[u].dom, c1.cat.arrows[v].dom))
                && ob_index.contains_key(&(c1.cat.arrows[u].cod, c1.cat.arrows[v].cod))
        })
        .collect();
    let arr_index: HashMap<(usize, usize), usize> =
        arr_pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let arrows = arr_pairs
        .iter()
        .map(|&(u, v)| crate::fincat::Arrow {
            name: format!(
                "({},{})",
                c1.cat.arrows[u].name, c1.cat.arrows[v].name
            ),
            dom: ob_index[&(c1.cat.arrows[u].dom, c1.cat.arrows[v].dom)],
            cod: ob_index[&(c1.cat.arrows[u].cod, c1.cat.arrows[v].cod)],
        })
        .collect();
    let identity = ob_pairs
        .iter()
        .map(|&(f, g)| arr_index[&(c1.cat.identity[f], c1.cat.identity[g])])
        .collect();
    let mut comp = HashMap::new();
    for (j, &(u2, v2)) in arr_pairs.iter().enumerate() {
        for (i, &(u1, v1)) in arr_pairs.iter().enumerate() {
            if c1.cat.arrows[u1].cod == c1.cat.arrows[u2].dom
                && c1.cat.arrows[v1].cod == c1.cat.arrows[v2].dom
            {
                comp.insert(
                    (j, i),
                    arr_index[&(c1.cat.compose(u2, u1), c1.cat.compose(v2, v1))],
                );
            }
        }
    }
    let fcat = FinCat {
        name: "pairs".into(),
        objects: ob_pairs
            .iter()
            .map(|&(f, g)| {
                format!("({},{})", a.cells[&vec![1, 0]][f], a.cells[&vec![1, 0]][g])
            })
            .collect(),
        arrows,
        identity,
        comp,
    };
    fcat.validate()?;
    let delta_ob: Vec<usize> = (0..a.cells[&vec![2, 0]].len())
        .map(|s| {
            let first = a.faces[&(vec![2, 0], 0, 2)][s];
            let second = a.faces[&(vec![2, 0], 0, 0)][s];
            ob_index[&(first, second)]
        })
        .collect();
    let delta_arr: Vec<usize> = (0..c2.cat.arrows.len())
        .map(|e| {
            let cell = c2.arrow_cell[e];
            let first = c1.cell_arrow[a.faces[&(vec![2, 1], 0, 2)][cell]];
            let second = c1.cell_arrow[a.faces[&(vec![2, 1], 0, 0)][cell]];
            arr_index[&(first, second)]
        })
        .collect();
    Ok(PairData {
        c1,
        c2,
        fcat,
        ob_pairs,
        arr_pairs,
        ob_index,
        arr_index,
        delta_ob,
        delta_arr,
    })
}

/// Horizontal composition of 1-cells and 2-cells through a certified
/// inverse to the spine functor.  `cells` are two 2-cells (arrows of the
/// level-1 category) with horizontally composable endpoints.  Returns the
/// composite 1-cell and 2-cell.
pub fn horizontal_compose_2cells(
    a: &NSSet,
    cert: &TwoCellCert,
    cells: (usize, usize),
) -> Result<(usize, usize)> {
    let pd = pair_data(a)?;
    let f = &pd.fcat;
    let c2 = &pd.c2.cat;
    // gamma is a functor from pairs into level 2
    let gamma = CatFunctor {
        object_map: cert.gamma_ob.clone(),
        arrow_map: cert.gamma_arr.clone(),
    };
    gamma
        .validate(f, c2)
        .map_err(|e| Error::Invalid(format!("gamma rejected: {e}")))?;
    // alpha: delta gamma => identity, componentwise isomorphisms
    if cert.alpha.len() != f.objects.len() {
        return Err(Error::Invalid("alpha has the wrong length".into()));
    }
    for (o, &al) in cert.alpha.iter().enumerate() {
        let dg = pd.delta_ob[cert.gamma_ob[o]];
        if f.arrows[al].dom != dg || f.arrows[al].cod != o {
            return Err(Error::Invalid(format!(
                "alpha component at {} has wrong endpoints",
                f.objects[o]
            )));
        }
        if f.inverse(al).is_none() {
            return Err(Error::Invalid(format!(
                "alpha component at {} is not an isomorphism",
                f.objects[o]
            )));
        }
    }
    for (m, arr) in f.arrows.iter().enumerate() {
        let dgm = pd.delta_arr[cert.gamma_arr[m]];
        if f.compose(cert.alpha[arr.cod], dgm) != f.compose(m, cert.alpha[arr.dom]) {
            return Err(Error::Invalid(format!(
                "alpha not natural at {}",
                arr.name
            )));
        }
    }
    let (av, bv) = cells;
    let c1 = &pd.c1.cat;
    let o = *pd
        .ob_index
        .get(&(c1.arrows[av].dom, c1.arrows[bv].dom))
        .ok_or_else(|| Error::Precondition("2-cells not horizontally composable".into()))?;
    let o2 = *pd
        .ob_index
        .get(&(c1.arrows[av].cod, c1.arrows[bv].cod))
        .ok_or_else(|| Error::Precondition("2-cells not horizontally composable".into()))?;
    let m = pd.arr_index[&(av, bv)];
    let sigma = cert.gamma_ob[o];
    let sigma2 = cert.gamma_ob[o2];
    // conjugate down to a morphism delta(sigma) -> delta(sigma2)
    let alpha2_inv = f.inverse(cert.alpha[o2]).unwrap();
    let target = f.compose(alpha2_inv, f.compose(m, cert.alpha[o]));
    // the unique lift through the fully faithful spine functor
    let mut lift = None;
    for (e, arr) in c2.arrows.iter().enumerate() {
        if arr.dom == sigma && arr.cod == sigma2 && pd.delta_arr[e] == target {
            if lift.is_some() {
                return Err(Error::Invalid("lift is not unique".into()));
            }
            lift = Some(e);
        }
    }
    let eps =
        lift.ok_or_else(|| Error::Invalid("no lift over the conjugated pair".into()))?;
    let comp_ob = a.faces[&(vec![2, 0], 0, 1)][sigma];
    let eps_cell = pd.c2.arrow_cell[eps];
    let comp_arr = pd.c1.cell_arrow[a.faces[&(vec![2, 1], 0, 1)][eps_cell]];
    Ok((comp_ob, comp_arr))
}

/// The one-object 2-category with invertibly indistinguishable parallel
/// 2-cells: 1-cells form the group of order two, with exactly one 2-cell
/// between any two 1-cells.
pub fn chaotic_z2_two_cat() -> TwoCat {
    let h = crate::fincat::pair_groupoid(2);
    let arrow_of = |x: usize, y: usize| h.arrows_between(x, y)[0];
    let xor = |i: usize, j: usize| i ^ j;
    let comp_ob = vec![vec![xor(0, 0), xor(0, 1)], vec![xor(1, 0), xor(1, 1)]];
    let mut comp_arr = vec![vec![0; h.arrows.len()]; h.arrows.len()];
    for (a1, arr1) in h.arrows.iter().enumerate() {
        for (a2, arr2) in h.arrows.iter().enumerate() {
            comp_arr[a1][a2] =
                arrow_of(xor(arr1.dom, arr2.dom), xor(arr1.cod, arr2.cod));
        }
    }
    let mut co = HashMap::new();
    co.insert((0, 0, 0), comp_ob);
    let mut ca = HashMap::new();
    ca.insert((0, 0, 0), comp_arr);
    TwoCat {
        objects: vec!["*".into()],
        hom: vec![vec![h]],
        unit: vec![0],
        comp_ob: co,
        comp_arr: ca,
    }
}

/// Two objects with an isomorphism-shaped hom category between them:
/// hom(X,Y) is the free-standing isomorphism, the other homs are trivial.
pub fn iso_hom_two_cat() -> TwoCat {
    let term = crate::fincat::discrete(1);
    let fi = crate::fincat::free_iso();
    let empty = FinCat {
        name: "empty".into(),
        objects: Vec::new(),
        arrows: Vec::new(),
        identity: Vec::new(),
        comp: HashMap::new(),
    };
    let hom = vec![vec![term.clone(), fi.clone()], vec![empty, term.clone()]];
    let mut comp_ob = HashMap::new();
    let mut comp_arr = HashMap::new();
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                if x > y || y > z {
                    comp_ob.insert((x, y, z), Vec::new());
                    comp_arr.insert((x, y, z), Vec::new());
                    continue;
                }
                let h1 = &hom[x][y];
                let h2 = &hom[y][z];
                // at most one hom along the chain is nontrivial, so the
                // composite copies the nontrivial side
                let co: Vec<Vec<usize>> = (0..h1.objects.len())
                    .map(|f| {
                        (0..h2.objects.len())
                            .map(|g| if x == y { g } else { f })
                            .collect()
                    })
                    .collect();
                let ca: Vec<Vec<usize>> = (0..h1.arrows.len())
                    .map(|u| {
                        (0..h2.arrows.len())
                            .map(|v| if x == y { v } else { u })
                            .collect()
                    })
                    .collect();
                comp_ob.insert((x, y, z), co);
                comp_arr.insert((x, y, z), ca);
            }
        }
    }
    TwoCat {
        objects: vec!["X".into(), "Y".into()],
        hom,
        unit: vec![0, 0],
        comp_ob,
        comp_arr,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat;

    #[test]
    fn fixtures_validate_and_assemble() {
        let t = chaotic_z2_two_cat();
        t.validate().unwrap();
        two_cat_nsset(&t, 2, 3).unwrap();
        let t = iso_hom_two_cat();
        t.validate().unwrap();
        two_cat_nsset(&t, 3, 3).unwrap();
    }

    #[test]
    fn discrete_truncates_to_itself() {
        let labels: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
        let a = discrete_nsset(&labels, &[3, 3]);
        a.validate().unwrap();
        let tr = truncate(&a).unwrap();
        assert_eq!(tr.t.cells[&vec![0]].len(), 3);
        for (_, classes) in &tr.tau {
            assert_eq!(classes, &vec![0, 1, 2]);
        }
        let tr2 = truncate(&tr.t).unwrap();
        assert_eq!(tr2.t.cells[&Vec::new()].len(), 3);
    }

    #[test]
    fn truncation_collapses_hom_isomorphisms() {
        let a = two_cat_nsset(&iso_hom_two_cat(), 3, 3).unwrap();
        let tr = truncate(&a).unwrap();
        // hom(X,Y) has two isomorphic 1-cells; T identifies them, leaving
        // the nerve of the arrow category
        assert_eq!(tr.t.cells[&vec![0]].len(), 2);
        assert_eq!(tr.t.cells[&vec![1]].len(), 3);
        assert_eq!(tr.t.cells[&vec![2]].len(), 4);
        assert_eq!(tr.t.cells[&vec![3]].len(), 5);
        // tau at level 1 merges exactly the isomorphic pair
        let tau1 = &tr.tau[&vec![1]];
        let cells1 = &a.cells[&vec![1, 0]];
        let u = cells1.iter().position(|l| l == "X,Y:x").unwrap();
        let v = cells1.iter().position(|l| l == "X,Y:y").unwrap();
        assert_eq!(tau1[u], tau1[v]);
        let want = nerve_cells(&fincat::ordinal(1), 3);
        for q in 0..=3usize {
            assert_eq!(tr.t.cells[&vec![q]].len(), want.cells[&vec![q]].len());
        }
        // T^2 is the set of isomorphism classes of the truncated category
        let tr2 = truncate(&tr.t).unwrap();
        assert_eq!(tr2.t.cells[&Vec::new()].len(), 2);
    }

    #[test]
    fn truncation_is_functorial_on_nerve_maps() {
        // terminal -> free_iso -> ordinal(1), both induced by functors
        let term = nerve_cells(&fincat::discrete(1), 3);
        let fi = nerve_cells(&fincat::free_iso(), 3);
        let arrow = nerve_cells(&fincat::ordinal(1), 3);
        let f = nmap_of_functor(&fincat::discrete(1), &fincat::free_iso(), &[0], &term, &fi);
        // collapse the isomorphism onto the identity of object 0
        let g = nmap_of_functor(
            &fincat::free_iso(),
            &fincat::ordinal(1),
            &[0, 0],
            &fi,
            &arrow,
        );
        let tt = truncate(&term).unwrap();
        let tf = truncate(&fi).unwrap();
        let ta = truncate(&arrow).unwrap();
        let tfm = truncate_map(&f, &tt, &tf).unwrap();
        let tgm = truncate_map(&g, &tf, &ta).unwrap();
        // composite of the cell maps, then truncate
        let gf = NMap {
            maps: f
                .maps
                .iter()
                .map(|(m, fm)| (m.clone(), fm.iter().map(|&c| g.maps[m][c]).collect()))
                .collect(),
        };
        let tgf = truncate_map(&gf, &tt, &ta).unwrap();
        for (m, comp) in &tgf.maps {
            let two_step: Vec<usize> =
                tfm.maps[m].iter().map(|&c| tgm.maps[m][c]).collect();
            assert_eq!(comp, &two_step);
        }
    }

    /// The cell map induced by a functor given as an object map, valid when
    /// arrows map uniquely by endpoints or the functor determines them.
    fn nmap_of_functor(
        ca: &fincat::FinCat,
        cb: &fincat::FinCat,
        object_map: &[usize],
        a: &NSSet,
        b: &NSSet,
    ) -> NMap {
        // arrow map: identities to identities, u/v style isos collapse to
        // the chosen target arrow between the mapped endpoints
        let arrow_map: Vec<usize> = ca
            .arrows
            .iter()
            .enumerate()
            .map(|(i, arr)| {
                if ca.is_identity(i) {
                    cb.identity[object_map[arr.dom]]
                } else {
                    *cb.arrows_between(object_map[arr.dom], object_map[arr.cod])
                        .first()
                        .unwrap()
                }
            })
            .collect();
        let q = a.bounds[0];
        let bcells: Vec<HashMap<HomChain, usize>> = (0..=q)
            .map(|v| {
                all_chains(cb, v).into_iter().enumerate().map(|(i, c)| (c, i)).collect()
            })
            .collect();
        let mut maps = BTreeMap::new();
        for v in 0..=q {
            let achains = all_chains(ca, v);
            maps.insert(
                vec![v],
                achains
                    .iter()
                    .map(|(x, arrows)| {
                        let img = (
                            object_map[*x],
                            arrows.iter().map(|&ar| arrow_map[ar]).collect::<Vec<_>>(),
                        );
                        bcells[v][&img]
                    })
                    .collect(),
            );
        }
        let f = NMap { maps };
        f.validate(a, b).unwrap();
        f
    }

    #[test]
    fn equivalences_are_recognised() {
        // a skeleton inclusion is an equivalence
        let term = nerve_cells(&fincat::discrete(1), 3);
        let fi = nerve_cells(&fincat::free_iso(), 3);
        let f = nmap_of_functor(&fincat::discrete(1), &fincat::free_iso(), &[0], &term, &fi);
        assert!(n_equivalence_check(&term, &fi, &f, 1).unwrap());
        // identity maps are equivalences at depth 2
        let a = two_cat_nsset(&iso_hom_two_cat(), 3, 3).unwrap();
        assert!(n_equivalence_check(&a, &a, &NMap::identity(&a), 2).unwrap());
    }

    #[test]
    fn non_surjective_maps_are_rejected() {
        let term = nerve_cells(&fincat::discrete(1), 3);
        let two = nerve_cells(&fincat::discrete(2), 3);
        let f = nmap_of_functor(&fincat::discrete(1), &fincat::discrete(2), &[0], &term, &two);
        assert!(!n_equivalence_check(&term, &two, &f, 1).unwrap());
    }

    /// The exact inverse certificate available in the strict case, where
    /// the spine functor is an isomorphism.
    fn exact_certificate(pd: &PairData) -> TwoCellCert {
        let gamma_ob = (0..pd.fcat.objects.len())
            .map(|o| pd.delta_ob.iter().position(|&d| d == o).unwrap())
            .collect();
        let gamma_arr = (0..pd.fcat.arrows.len())
            .map(|m| pd.delta_arr.iter().position(|&d| d == m).unwrap())
            .collect();
        TwoCellCert {
            gamma_ob,
            gamma_arr,
            alpha: (0..pd.fcat.objects.len()).map(|o| pd.fcat.identity[o]).collect(),
        }
    }

    #[test]
    fn strict_horizontal_composition_matches_the_table() {
        let t = chaotic_z2_two_cat();
        let a = two_cat_nsset(&t, 2, 3).unwrap();
        let pd = pair_data(&a).unwrap();
        let cert = exact_certificate(&pd);
        let c1 = &pd.c1.cat;
        let h = &t.hom[0][0];
        for av in 0..c1.arrows.len() {
            for bv in 0..c1.arrows.len() {
                let (ob, arr) = horizontal_compose_2cells(&a, &cert, (av, bv)).unwrap();
                // compare against the strict table through the labels
                let want_dom = t.comp_ob[&(0, 0, 0)]
                    [label_pos(h, &c1.objects[c1.arrows[av].dom])]
                    [label_pos(h, &c1.objects[c1.arrows[bv].dom])];
                assert_eq!(
                    c1.objects[ob],
                    format!("*,*:{}", h.objects[want_dom]),
                );
                // identity 2-cells compose to the identity 2-cell
                if c1.is_identity(av) && c1.is_identity(bv) {
                    assert!(c1.is_identity(arr));
                    assert_eq!(c1.arrows[arr].dom, ob);
                }
            }
        }
    }

    fn label_pos(h: &fincat::FinCat, label: &str) -> usize {
        h.objects.iter().position(|o| label.ends_with(o.as_str())).unwrap()
    }

    #[test]
    fn certificates_disagreeing_up_to_isomorphism_agree_on_classes() {
        let t = chaotic_z2_two_cat();
        let a = two_cat_nsset(&t, 2, 3).unwrap();
        let pd = pair_data(&a).unwrap();
        let exact = exact_certificate(&pd);
        // a second certificate: everything is sent to the pair of units,
        // legitimate because all 1-cells here are isomorphic
        let unit_pair = pd.delta_ob[exact.gamma_ob[pd.ob_index[&(
            pd.ob_pairs[0].0,
            pd.ob_pairs[0].1,
        )]]];
        let base = exact.gamma_ob[unit_pair];
        let constant = TwoCellCert {
            gamma_ob: vec![base; pd.fcat.objects.len()],
            gamma_arr: vec![pd.c2.cat.identity[base]; pd.fcat.arrows.len()],
            alpha: (0..pd.fcat.objects.len())
                .map(|o| {
                    let from = pd.delta_ob[base];
                    pd.fcat
                        .arrows_between(from, o)
                        .first()
                        .copied()
                        .unwrap()
                })
                .collect(),
        };
        let classes = iso_classes(&pd.c1.cat);
        let c1 = &pd.c1.cat;
        for av in 0..c1.arrows.len() {
            for bv in 0..c1.arrows.len() {
                let (o1, _) = horizontal_compose_2cells(&a, &exact, (av, bv)).unwrap();
                let (o2, _) = horizontal_compose_2cells(&a, &constant, (av, bv)).unwrap();
                assert_eq!(classes[o1], classes[o2]);
            }
        }
    }

    #[test]
    fn broken_certificates_are_rejected() {
        let t = chaotic_z2_two_cat();
        let a = two_cat_nsset(&t, 2, 3).unwrap();
        let pd = pair_data(&a).unwrap();
        let mut cert = exact_certificate(&pd);
        // alpha components with wrong endpoints cannot certify anything
        cert.alpha = (0..pd.fcat.objects.len())
            .map(|o| pd.fcat.identity[(o + 1) % pd.fcat.objects.len()])
            .collect();
        let err = horizontal_compose_2cells(&a, &cert, (0, 0)).unwrap_err();
        assert!(err.to_string().contains("alpha"), "{err}");
    }
}
