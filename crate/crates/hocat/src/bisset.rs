//! Bisimplicial sets stored as rows of simplicial sets with horizontal
//! structure maps, precategories with a discrete object row, levelwise
//! spine comparisons with an equivalence-certificate escape hatch, the
//! homotopy category, and the row nerve of an enriched category.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCat};
use crate::scat::SCat;
use crate::simplicial::{
    sset_from_tables, standard_simplex, Product, SSet, SimplexRef, Tabulated,
};
use crate::smap::SMap;

/// Rows `rows[p]` are the simplicial sets in one direction; the other
/// direction is generated by `hface[p][i]: rows[p] -> rows[p-1]` and
/// `hdeg[p][i]: rows[p] -> rows[p+1]`.
pub struct BiSSet {
    pub rows: Vec<SSet>,
    pub hface: Vec<Vec<SMap>>,
    pub hdeg: Vec<Vec<SMap>>,
}

impl BiSSet {
    pub fn max_p(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn validate(&self) -> Result<()> {
        let np = self.rows.len();
        if self.hface.len() != np || self.hdeg.len() != np - 1 {
            return Err(Error::Invalid("horizontal map table sizes wrong".into()));
        }
        if !self.hface[0].is_empty() {
            return Err(Error::Invalid("row 0 has no faces".into()));
        }
        let q = self.rows[0].max_dim();
        for (p, r) in self.rows.iter().enumerate() {
            r.validate()?;
            if r.max_dim() != q {
                return Err(Error::Invalid(format!(
                    "row {p} bound {} differs from row 0 bound {q}",
                    r.max_dim()
                )));
            }
        }
        for p in 1..np {
            if self.hface[p].len() != p + 1 {
                return Err(Error::Invalid(format!("row {p} needs {} faces", p + 1)));
            }
            for m in &self.hface[p] {
                m.validate(&self.rows[p], &self.rows[p - 1])?;
            }
        }
        for p in 0..np - 1 {
            if self.hdeg[p].len() != p + 1 {
                return Err(Error::Invalid(format!(
                    "row {p} needs {} degeneracies",
                    p + 1
                )));
            }
            for m in &self.hdeg[p] {
                m.validate(&self.rows[p], &self.rows[p + 1])?;
            }
        }
        // horizontal simplicial identities, as equalities of composites
        for p in 2..np {
            for j in 1..=p {
                for i in 0..j {
                    let a = self.hface[p][j].then(&self.hface[p - 1][i]);
                    let b = self.hface[p][i].then(&self.hface[p - 1][j - 1]);
                    if a != b {
                        return Err(Error::Invalid(format!(
                            "d_{i} d_{j} fails at row {p}"
                        )));
                    }
                }
            }
        }
        for p in 0..np.saturating_sub(2) {
            for i in 0..=p {
                for j in i..=p {
                    let a = self.hdeg[p][j].then(&self.hdeg[p + 1][i]);
                    let b = self.hdeg[p][i].then(&self.hdeg[p + 1][j + 1]);
                    if a != b {
                        return Err(Error::Invalid(format!(
                            "s_{i} s_{j} fails at row {p}"
                        )));
                    }
                }
            }
        }
        for p in 0..np - 1 {
            for j in 0..=p {
                for i in 0..=p + 1 {
                    let got = self.hdeg[p][j].then(&self.hface[p + 1][i]);
                    let want = if i == j || i == j + 1 {
                        SMap::identity(&self.rows[p])
                    } else if i < j {
                        self.hface[p][i].then(&self.hdeg[p - 1][j - 1])
                    } else {
                        self.hface[p][i - 1].then(&self.hdeg[p - 1][j])
                    };
                    if got != want {
                        return Err(Error::Invalid(format!(
                            "d_{i} s_{j} fails at row {p}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The structure map of a monotone map into [p] (given by its values),
    /// composed from the generating faces and degeneracies.
    pub fn row_map(&self, p: usize, f: &[usize]) -> SMap {
        let m = f.len() - 1;
        if let Some(v) = (0..=p).find(|v| !f.contains(v)) {
            let f2: Vec<usize> =
                f.iter().map(|&x| if x > v { x - 1 } else { x }).collect();
            return self.hface[p][v].then(&self.row_map(p - 1, &f2));
        }
        if let Some(i) = (0..m).find(|&i| f[i] == f[i + 1]) {
            let mut f2 = f.to_vec();
            f2.remove(i + 1);
            return self.row_map(p, &f2).then(&self.hdeg[m - 1][i]);
        }
        SMap::identity(&self.rows[p])
    }
}

/// `None` when row 0 is constant; otherwise a nondegenerate simplex of
/// positive dimension witnessing the failure.
pub fn is_segal_precat(b: &BiSSet) -> Option<(usize, usize)> {
    for d in 1..=b.rows[0].max_dim() {
        if b.rows[0].nondeg_count(d) > 0 {
            return Some((d, 0));
        }
    }
    None
}

/// A bisimplicial set whose row 0 is the constant simplicial set on the
/// object set.
pub struct SegalPrecat {
    pub b: BiSSet,
    pub objects: Vec<String>,
}

impl SegalPrecat {
    pub fn new(b: BiSSet) -> Result<SegalPrecat> {
        b.validate()?;
        if let Some((d, idx)) = is_segal_precat(&b) {
            return Err(Error::Invalid(format!(
                "row 0 not constant: nondegenerate {d}-simplex {idx}"
            )));
        }
        let objects =
            (0..b.rows[0].nondeg_count(0)).map(|v| b.rows[0].label(0, v).to_string()).collect();
        Ok(SegalPrecat { b, objects })
    }
}

/// The spine comparison map in one row degree, with its explicit
/// fiber-product codomain.
pub struct SegalData {
    pub p: usize,
    pub fiber: Product,
    pub delta: SMap,
}

pub fn segal_data(a: &SegalPrecat, p: usize) -> Result<SegalData> {
    if p < 2 || p > a.b.max_p() {
        return Err(Error::Precondition(format!(
            "degree {p} outside 2..={}",
            a.b.max_p()
        )));
    }
    let b = &a.b;
    let src = &b.hface[1][1];
    let tgt = &b.hface[1][0];
    let factors: Vec<&SSet> = (0..p).map(|_| &b.rows[1]).collect();
    let fiber = Product::new_filtered(&factors, |_, t| {
        t.windows(2).all(|w| tgt.eval(&w[0]).base_idx == src.eval(&w[1]).base_idx)
    });
    let spines: Vec<SMap> = (0..p).map(|k| b.row_map(p, &[k, k + 1])).collect();
    let q = b.rows[p].max_dim();
    let mut images = Vec::with_capacity(q + 1);
    for d in 0..=q {
        let mut row = Vec::new();
        for r in b.rows[p].nondeg_refs(d) {
            let comps: Vec<SimplexRef> = spines.iter().map(|m| m.eval(&r)).collect();
            row.push(fiber.ref_of_tuple(&comps));
        }
        images.push(row);
    }
    Ok(SegalData { p, fiber, delta: SMap::from_images(images) })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegalVerdict {
    Strict,
    CertifiedEquivalent,
    Unknown(String),
}

/// User-supplied evidence that the degree-`p` spine map is a homotopy
/// equivalence: an inverse map with a homotopy on each side, given as maps
/// out of the cylinders.
pub struct SegalCertificate {
    pub p: usize,
    /// fiber product -> row p
    pub gamma: SMap,
    /// homotopy on row p between the identity and gamma after delta
    pub h_row: SMap,
    /// homotopy on the fiber product between the identity and delta after gamma
    pub h_fiber: SMap,
}

/// The inclusion of `x` at end `v` of the cylinder `x * interval`.
fn cylinder_end(x: &SSet, cyl: &Product, interval: &SSet, v: usize) -> SMap {
    let mut images = Vec::with_capacity(x.max_dim() + 1);
    for d in 0..=x.max_dim() {
        let mut row = Vec::new();
        for r in x.nondeg_refs(d) {
            let mut vref = SimplexRef::nondeg(0, v);
            for _ in 0..d {
                vref = interval.degeneracy(&vref, 0);
            }
            row.push(cyl.ref_of_tuple(&[r, vref]));
        }
        images.push(row);
    }
    SMap::from_images(images)
}

/// Checks that `h` is a simplicial homotopy on `x` with ends `f0` and `f1`
/// in either orientation.
fn check_homotopy(x: &SSet, cod: &SSet, h: &SMap, f0: &SMap, f1: &SMap, what: &str) -> Result<()> {
    let interval = standard_simplex(1, x.max_dim());
    let cyl = Product::new(&[x, &interval]);
    h.validate(&cyl.sset, cod)
        .map_err(|e| Error::Invalid(format!("{what}: not a simplicial map: {e}")))?;
    let e0 = cylinder_end(x, &cyl, &interval, 0).then(h);
    let e1 = cylinder_end(x, &cyl, &interval, 1).then(h);
    if (e0 == *f0 && e1 == *f1) || (e0 == *f1 && e1 == *f0) {
        Ok(())
    } else {
        Err(Error::Invalid(format!(
            "{what}: cylinder ends do not match the required pair of maps"
        )))
    }
}

fn verify_certificate(a: &SegalPrecat, sd: &SegalData, cert: &SegalCertificate) -> Result<()> {
    let row = &a.b.rows[sd.p];
    cert.gamma
        .validate(&sd.fiber.sset, row)
        .map_err(|e| Error::Invalid(format!("gamma at degree {}: {e}", sd.p)))?;
    let gd = sd.delta.then(&cert.gamma);
    check_homotopy(
        row,
        row,
        &cert.h_row,
        &SMap::identity(row),
        &gd,
        &format!("row homotopy at degree {}", sd.p),
    )?;
    let dg = cert.gamma.then(&sd.delta);
    check_homotopy(
        &sd.fiber.sset,
        &sd.fiber.sset,
        &cert.h_fiber,
        &SMap::identity(&sd.fiber.sset),
        &dg,
        &format!("fiber homotopy at degree {}", sd.p),
    )?;
    Ok(())
}

/// Whether the spine map is a levelwise bijection; on failure, a witness
/// string naming the level and the offending simplex or tuple.
fn strict_at(a: &SegalPrecat, sd: &SegalData) -> Option<String> {
    let row = &a.b.rows[sd.p];
    for d in 0..=row.max_dim() {
        let mut seen: HashMap<SimplexRef, SimplexRef> = HashMap::new();
        for r in row.simplices(d) {
            let img = sd.delta.eval(&r);
            if let Some(prev) = seen.get(&img) {
                return Some(format!(
                    "level {d}: {} and {} share the spine {}",
                    row.display(prev),
                    row.display(&r),
                    sd.fiber.sset.display(&img)
                ));
            }
            seen.insert(img, r);
        }
        for t in sd.fiber.sset.simplices(d) {
            if !seen.contains_key(&t) {
                return Some(format!(
                    "level {d}: composable tuple {} has no preimage",
                    sd.fiber.sset.display(&t)
                ));
            }
        }
    }
    None
}

/// Per-degree verdicts for `2 <= p <= max_p`.  A certificate whose degree
/// matches is verified before being believed; an invalid one is an error.
pub fn bisimplicial_segal_check(
    a: &SegalPrecat,
    max_p: usize,
    certs: &[SegalCertificate],
) -> Result<Vec<(usize, SegalVerdict)>> {
    let mut out = Vec::new();
    for p in 2..=max_p {
        let sd = segal_data(a, p)?;
        let verdict = match strict_at(a, &sd) {
            None => SegalVerdict::Strict,
            Some(witness) => match certs.iter().find(|c| c.p == p) {
                Some(cert) => {
                    verify_certificate(a, &sd, cert)?;
                    SegalVerdict::CertifiedEquivalent
                }
                None => SegalVerdict::Unknown(witness),
            },
        };
        out.push((p, verdict));
    }
    Ok(out)
}

/// Connected-component class of every vertex, numbered in order of first
/// appearance.
pub fn pi0_classes(s: &SSet) -> Vec<usize> {
    let n = s.nondeg_count(0);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    if s.max_dim() >= 1 {
        for e in s.simplices(1) {
            let a = find(&mut parent, s.face(&e, 1).base_idx);
            let b = find(&mut parent, s.face(&e, 0).base_idx);
            parent[a] = b;
        }
    }
    let mut number = HashMap::new();
    let mut out = Vec::with_capacity(n);
    for v in 0..n {
        let root = find(&mut parent, v);
        let next = number.len();
        out.push(*number.entry(root).or_insert(next));
    }
    out
}

/// The homotopy category: objects are the object set, morphisms the
/// components of row 1, composition through any degree-2 section (checked
/// to be independent of the choice).
pub fn ho_of_segal(a: &SegalPrecat, certs: &[SegalCertificate]) -> Result<FinCat> {
    if a.b.max_p() < 3 {
        return Err(Error::Precondition("need rows up to degree 3".into()));
    }
    for (p, v) in bisimplicial_segal_check(a, 3, certs)? {
        if let SegalVerdict::Unknown(w) = v {
            return Err(Error::Precondition(format!(
                "spine map at degree {p} not known to be an equivalence: {w}"
            )));
        }
    }
    let b = &a.b;
    let src = &b.hface[1][1];
    let tgt = &b.hface[1][0];
    let classes = pi0_classes(&b.rows[1]);
    let narrows = classes.iter().copied().max().map_or(0, |m| m + 1);
    let mut arrows: Vec<Option<Arrow>> = vec![None; narrows];
    for (v, &c) in classes.iter().enumerate() {
        let vr = SimplexRef::nondeg(0, v);
        let dom = src.eval(&vr).base_idx;
        let cod = tgt.eval(&vr).base_idx;
        match &arrows[c] {
            None => {
                arrows[c] = Some(Arrow {
                    name: format!("[{}]", b.rows[1].label(0, v)),
                    dom,
                    cod,
                })
            }
            Some(aw) => {
                if aw.dom != dom || aw.cod != cod {
                    return Err(Error::Invalid(
                        "homotopic morphisms with different endpoints".into(),
                    ));
                }
            }
        }
    }
    let arrows: Vec<Arrow> = arrows.into_iter().map(|a| a.unwrap()).collect();
    let identity: Vec<usize> = (0..a.objects.len())
        .map(|x| classes[b.hdeg[0][0].eval(&SimplexRef::nondeg(0, x)).base_idx])
        .collect();
    // composite class of each component of the fiber product, read off the
    // available degree-2 simplices
    let sd2 = segal_data(a, 2)?;
    let fclasses = pi0_classes(&sd2.fiber.sset);
    let d1 = &b.hface[2][1];
    let mut by_fclass: HashMap<usize, usize> = HashMap::new();
    for s in b.rows[2].simplices(0) {
        let fc = fclasses[sd2.delta.eval(&s).base_idx];
        let comp = classes[d1.eval(&s).base_idx];
        if let Some(&prev) = by_fclass.get(&fc) {
            if prev != comp {
                return Err(Error::Invalid(
                    "composite depends on the choice of section".into(),
                ));
            }
        }
        by_fclass.insert(fc, comp);
    }
    let n1 = b.rows[1].nondeg_count(0);
    let mut comp = HashMap::new();
    for f in 0..n1 {
        for g in 0..n1 {
            let fr = SimplexRef::nondeg(0, f);
            let gr = SimplexRef::nondeg(0, g);
            if tgt.eval(&fr).base_idx != src.eval(&gr).base_idx {
                continue;
            }
            let fv = sd2.fiber.ref_of_tuple(&[fr, gr]).base_idx;
            let gf = *by_fclass.get(&fclasses[fv]).ok_or_else(|| {
                Error::Invalid(format!(
                    "no degree-2 simplex over the pair ({}, {})",
                    b.rows[1].label(0, f),
                    b.rows[1].label(0, g)
                ))
            })?;
            if let Some(&prev) = comp.get(&(classes[g], classes[f])) {
                if prev != gf {
                    return Err(Error::Invalid(
                        "composite not constant on components".into(),
                    ));
                }
            }
            comp.insert((classes[g], classes[f]), gf);
        }
    }
    let c = FinCat {
        name: "ho_segal".into(),
        objects: a.objects.clone(),
        arrows,
        identity,
        comp,
    };
    c.validate()?;
    Ok(c)
}

fn tab_map<T, F>(src: &Tabulated<T>, dst: &Tabulated<T>, q: usize, f: F) -> Result<SMap>
where
    T: Eq + Hash + Clone,
    F: Fn(usize, &T) -> T,
{
    let mut images = Vec::with_capacity(q + 1);
    for d in 0..=q {
        let mut row = Vec::new();
        for t in &src.elems[d] {
            let u = f(d, t);
            let r = dst
                .refs
                .get(&(d, u))
                .ok_or_else(|| Error::Invalid("image escapes the tabulated row".into()))?;
            row.push(r.clone());
        }
        images.push(row);
    }
    Ok(SMap::from_images(images))
}

type ChainElem = (Vec<usize>, Vec<SimplexRef>);

/// Row `p` is the disjoint union over object chains of the product of the
/// hom complexes along the chain; horizontal faces compose, degeneracies
/// insert identities.
pub fn scat_nerve(b: &SCat, max_p: usize) -> Result<SegalPrecat> {
    let nobj = b.objects.len();
    let q = b.hom(0, 0).max_dim();
    let mut tabs: Vec<Tabulated<ChainElem>> = Vec::with_capacity(max_p + 1);
    for p in 0..=max_p {
        // all object chains of length p
        let mut chains: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..=p {
            chains = chains
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
        let mut sets: Vec<Vec<ChainElem>> = Vec::with_capacity(q + 1);
        for d in 0..=q {
            let mut level = Vec::new();
            for chain in &chains {
                let mut tuples: Vec<Vec<SimplexRef>> = vec![Vec::new()];
                for k in 0..p {
                    let simps = b.hom(chain[k], chain[k + 1]).simplices(d);
                    tuples = tuples
                        .into_iter()
                        .flat_map(|t| {
                            simps.iter().map(move |s| {
                                let mut t2 = t.clone();
                                t2.push(s.clone());
                                t2
                            })
                        })
                        .collect();
                }
                for t in tuples {
                    level.push((chain.clone(), t));
                }
            }
            sets.push(level);
        }
        let tab = sset_from_tables(
            q,
            &sets,
            |_, (chain, t), i| {
                let t2 = t
                    .iter()
                    .enumerate()
                    .map(|(k, s)| b.hom(chain[k], chain[k + 1]).face(s, i))
                    .collect();
                (chain.clone(), t2)
            },
            |_, (chain, t), i| {
                let t2 = t
                    .iter()
                    .enumerate()
                    .map(|(k, s)| b.hom(chain[k], chain[k + 1]).degeneracy(s, i))
                    .collect();
                (chain.clone(), t2)
            },
            |_, (chain, t)| {
                let os: Vec<&str> = chain.iter().map(|&x| b.objects[x].as_str()).collect();
                let fs: Vec<String> = t
                    .iter()
                    .enumerate()
                    .map(|(k, s)| b.hom(chain[k], chain[k + 1]).display(s))
                    .collect();
                format!("{}:{}", os.join(","), fs.join("|"))
            },
        )?;
        tabs.push(tab);
    }
    let mut hface: Vec<Vec<SMap>> = vec![Vec::new()];
    for p in 1..=max_p {
        let mut maps = Vec::with_capacity(p + 1);
        for i in 0..=p {
            maps.push(tab_map(&tabs[p], &tabs[p - 1], q, |_, (chain, t)| {
                let mut c2 = chain.clone();
                c2.remove(i);
                let t2 = if i == 0 {
                    t[1..].to_vec()
                } else if i == p {
                    t[..p - 1].to_vec()
                } else {
                    let mut v = t[..i - 1].to_vec();
                    v.push(b.compose(chain[i - 1], chain[i], chain[i + 1], &t[i - 1], &t[i]));
                    v.extend_from_slice(&t[i + 1..]);
                    v
                };
                (c2, t2)
            })?);
        }
        hface.push(maps);
    }
    let mut hdeg: Vec<Vec<SMap>> = Vec::new();
    for p in 0..max_p {
        let mut maps = Vec::with_capacity(p + 1);
        for i in 0..=p {
            maps.push(tab_map(&tabs[p], &tabs[p + 1], q, |d, (chain, t)| {
                let mut c2 = chain.clone();
                c2.insert(i, chain[i]);
                let mut t2 = t.clone();
                t2.insert(i, b.id_at(chain[i], d));
                (c2, t2)
            })?);
        }
        hdeg.push(maps);
    }
    let rows = tabs.into_iter().map(|t| t.sset).collect();
    SegalPrecat::new(BiSSet { rows, hface, hdeg })
}

/// The vertically constant bisimplicial set on a simplicial set: row `p`
/// is discrete on the set of `p`-simplices.
pub fn constant_rows(a: &SSet, max_p: usize, q: usize) -> Result<BiSSet> {
    let mut tabs: Vec<Tabulated<SimplexRef>> = Vec::with_capacity(max_p + 1);
    for p in 0..=max_p {
        let level = a.simplices(p);
        let sets: Vec<Vec<SimplexRef>> = vec![level; q + 1];
        tabs.push(sset_from_tables(
            q,
            &sets,
            |_, t, _| t.clone(),
            |_, t, _| t.clone(),
            |_, t| a.display(t),
        )?);
    }
    let mut hface: Vec<Vec<SMap>> = vec![Vec::new()];
    for p in 1..=max_p {
        let maps = (0..=p)
            .map(|i| tab_map(&tabs[p], &tabs[p - 1], q, |_, t| a.face(t, i)))
            .collect::<Result<Vec<_>>>()?;
        hface.push(maps);
    }
    let mut hdeg: Vec<Vec<SMap>> = Vec::new();
    for p in 0..max_p {
        let maps = (0..=p)
            .map(|i| tab_map(&tabs[p], &tabs[p + 1], q, |_, t| a.degeneracy(t, i)))
            .collect::<Result<Vec<_>>>()?;
        hdeg.push(maps);
    }
    Ok(BiSSet { rows: tabs.into_iter().map(|t| t.sset).collect(), hface, hdeg })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{self, cat_isomorphic};
    use crate::nerve::nerve;
    use crate::scat::{discrete_scat, pi0_category};
    use crate::simplicial::{horn, simplex_vertex_sequence, SSetBuilder};
    use crate::sordinal::s_ordinal;

    #[test]
    fn nonconstant_row_zero_is_flagged() {
        let q = 2;
        let row0 = standard_simplex(1, q);
        let b = BiSSet { rows: vec![row0], hface: vec![Vec::new()], hdeg: Vec::new() };
        assert_eq!(is_segal_precat(&b), Some((1, 0)));
        assert!(SegalPrecat::new(b).is_err());
        let point = constant_rows(&standard_simplex(0, 3), 3, 2).unwrap();
        assert_eq!(is_segal_precat(&point), None);
    }

    #[test]
    fn constant_rows_of_a_nerve_are_strict() {
        for c in [fincat::ordinal(2), fincat::span(), fincat::cyclic_group(2)] {
            let n = nerve(&c, 4);
            let a = SegalPrecat::new(constant_rows(&n.sset, 3, 2).unwrap()).unwrap();
            for (p, v) in bisimplicial_segal_check(&a, 3, &[]).unwrap() {
                assert_eq!(v, SegalVerdict::Strict, "{} at p={p}", c.name);
            }
        }
    }

    #[test]
    fn horn_rows_are_not_segal() {
        let h = horn(2, 1, 3).unwrap();
        let a = SegalPrecat::new(constant_rows(&h, 3, 2).unwrap()).unwrap();
        let verdicts = bisimplicial_segal_check(&a, 2, &[]).unwrap();
        match &verdicts[0].1 {
            SegalVerdict::Unknown(w) => assert!(w.contains("no preimage"), "{w}"),
            v => panic!("expected a failure witness, got {v:?}"),
        }
    }

    #[test]
    fn scat_nerve_is_a_strict_precategory() {
        for b in [discrete_scat(&fincat::span(), 2), s_ordinal(2, 2).scat] {
            let a = scat_nerve(&b, 3).unwrap();
            for (p, v) in bisimplicial_segal_check(&a, 3, &[]).unwrap() {
                assert_eq!(v, SegalVerdict::Strict, "at p={p}");
            }
        }
    }

    #[test]
    fn ho_of_scat_nerve_matches_component_category() {
        for b in [
            discrete_scat(&fincat::ordinal(2), 2),
            discrete_scat(&fincat::parallel_pair(), 2),
            s_ordinal(2, 2).scat,
            s_ordinal(3, 2).scat,
        ] {
            let a = scat_nerve(&b, 3).unwrap();
            let ho = ho_of_segal(&a, &[]).unwrap();
            let want = pi0_category(&b).unwrap();
            assert!(cat_isomorphic(&ho, &want).is_some(), "{}", b.name);
        }
    }

    #[test]
    fn ho_of_a_constant_nerve_recovers_the_category() {
        for c in [fincat::ordinal(2), fincat::span(), fincat::cyclic_group(2)] {
            let n = nerve(&c, 4);
            let a = SegalPrecat::new(constant_rows(&n.sset, 3, 2).unwrap()).unwrap();
            let ho = ho_of_segal(&a, &[]).unwrap();
            assert!(cat_isomorphic(&ho, &c).is_some(), "{}", c.name);
        }
        // the terminal precategory gives the terminal category
        let a =
            SegalPrecat::new(constant_rows(&standard_simplex(0, 4), 3, 2).unwrap()).unwrap();
        let ho = ho_of_segal(&a, &[]).unwrap();
        assert!(cat_isomorphic(&ho, &fincat::discrete(1)).is_some());
    }

    /// One object, one generating morphism, and a degree-2 row that is an
    /// interval instead of a point: not strict, but certifiably equivalent.
    fn interval_precat() -> SegalPrecat {
        let q = 2;
        let point = |name: &str| {
            let mut b = SSetBuilder::new(q);
            b.add_vertex(name);
            b.build().unwrap()
        };
        let row0 = point("x");
        let row1 = point("f");
        let row2 = standard_simplex(1, q);
        // everything to vertex 0 of the target row
        let to_zero = |src: &SSet, dst: &SSet| {
            let mut images = Vec::with_capacity(q + 1);
            for d in 0..=q {
                images.push(vec![degenerate_vertex(dst, 0, d); src.nondeg_count(d)]);
            }
            SMap::from_images(images)
        };
        let hface = vec![
            Vec::new(),
            vec![to_zero(&row1, &row0), to_zero(&row1, &row0)],
            vec![
                to_zero(&row2, &row1),
                to_zero(&row2, &row1),
                to_zero(&row2, &row1),
            ],
        ];
        let hdeg = vec![
            vec![to_zero(&row0, &row1)],
            vec![to_zero(&row1, &row2), to_zero(&row1, &row2)],
        ];
        SegalPrecat::new(BiSSet { rows: vec![row0, row1, row2], hface, hdeg }).unwrap()
    }

    fn degenerate_vertex(s: &SSet, v: usize, dim: usize) -> SimplexRef {
        let mut r = SimplexRef::nondeg(0, v);
        for _ in 0..dim {
            r = s.degeneracy(&r, 0);
        }
        r
    }

    fn ref_with_vertices(s: &SSet, want: &[usize]) -> SimplexRef {
        s.simplices(want.len() - 1)
            .into_iter()
            .find(|r| simplex_vertex_sequence(s, r) == want)
            .unwrap()
    }

    fn interval_certificate(a: &SegalPrecat) -> SegalCertificate {
        let sd = segal_data(a, 2).unwrap();
        let row2 = &a.b.rows[2];
        let q = row2.max_dim();
        // inverse: the unique fiber vertex to vertex 0 of the interval
        let mut gimages = vec![Vec::new(); q + 1];
        gimages[0].push(SimplexRef::nondeg(0, 0));
        let gamma = SMap::from_images(gimages);
        // row homotopy: min(v, t) on the square, contracting to vertex 0
        let interval = standard_simplex(1, q);
        let cyl = Product::new(&[row2, &interval]);
        let mut himages = Vec::with_capacity(q + 1);
        for d in 0..=q {
            let mut row = Vec::new();
            for (idx, _) in cyl.sset.labels(d).iter().enumerate() {
                let comps = &cyl.tuples[d][idx];
                let vs = simplex_vertex_sequence(row2, &comps[0]);
                let ts = simplex_vertex_sequence(&interval, &comps[1]);
                let want: Vec<usize> =
                    vs.iter().zip(&ts).map(|(&v, &t)| v.min(t)).collect();
                row.push(ref_with_vertices(row2, &want));
            }
            himages.push(row);
        }
        let h_row = SMap::from_images(himages);
        // fiber homotopy: the fiber is a point, so project the cylinder
        let fcyl = Product::new(&[&sd.fiber.sset, &standard_simplex(1, q)]);
        let mut fimages = Vec::with_capacity(q + 1);
        for d in 0..=q {
            fimages.push(vec![
                degenerate_vertex(&sd.fiber.sset, 0, d);
                fcyl.sset.nondeg_count(d)
            ]);
        }
        let h_fiber = SMap::from_images(fimages);
        SegalCertificate { p: 2, gamma, h_row, h_fiber }
    }

    #[test]
    fn certificates_are_verified_and_believed() {
        let a = interval_precat();
        // without a certificate the verdict is honest ignorance
        let verdicts = bisimplicial_segal_check(&a, 2, &[]).unwrap();
        assert!(matches!(verdicts[0].1, SegalVerdict::Unknown(_)));
        let cert = interval_certificate(&a);
        let verdicts = bisimplicial_segal_check(&a, 2, &[cert]).unwrap();
        assert_eq!(verdicts[0].1, SegalVerdict::CertifiedEquivalent);
    }

    #[test]
    fn broken_certificates_are_rejected() {
        let a = interval_precat();
        let mut cert = interval_certificate(&a);
        // point the inverse at the other end of the interval: the supplied
        // homotopy no longer connects the right pair of maps
        let mut gimages = vec![Vec::new(); a.b.rows[2].max_dim() + 1];
        gimages[0].push(SimplexRef::nondeg(0, 1));
        cert.gamma = SMap::from_images(gimages);
        let err = bisimplicial_segal_check(&a, 2, &[cert]).unwrap_err();
        assert!(err.to_string().contains("row homotopy"), "{err}");
    }
}
