//! JSON document formats for the command line: explicit tables per kind,
//! canonical emission, and id-resolved parsing with named diagnostics.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bisset::BiSSet;
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCat};
use crate::hammock::{Dir, Hammock, LocPair};
use crate::nsset::NSSet;
use crate::scat::SCat;
use crate::simplicial::{Product, SSet, SSetBuilder, SimplexRef};
use crate::smap::SMap;

pub const FORMAT_VERSION: u32 = 1;

/// A reference to a possibly degenerate simplex: the id of its
/// nondegenerate base plus the degeneracy word.  The total dimension is
/// determined by the position the reference appears in.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RefDoc {
    pub base: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub degens: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SsetDoc {
    pub max_dim: usize,
    pub nd: Vec<Vec<String>>,
    pub faces: BTreeMap<String, Vec<RefDoc>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ArrowDoc {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FincatDoc {
    pub name: String,
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    pub identities: Vec<String>,
    pub comp: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LocpairDoc {
    pub cat: FincatDoc,
    pub weq: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct HammockDoc {
    pub locpair: LocpairDoc,
    pub x: String,
    pub y: String,
    pub width: usize,
    pub dirs: Vec<String>,
    pub interior: Vec<Vec<String>>,
    pub horiz: Vec<Vec<String>>,
    pub vert: Vec<Vec<String>>,
}

/// Images of an index-ordered simplicial map: per dimension, per
/// nondegenerate simplex of the domain.
pub type SmapDoc = Vec<Vec<RefDoc>>;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ScatDoc {
    pub name: String,
    pub objects: Vec<String>,
    pub homs: BTreeMap<String, SsetDoc>,
    pub comp: BTreeMap<String, SmapDoc>,
    pub ids: Vec<RefDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BissetDoc {
    pub rows: Vec<SsetDoc>,
    pub hface: Vec<Vec<SmapDoc>>,
    pub hdeg: Vec<Vec<SmapDoc>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LevelMapDoc {
    pub at: Vec<usize>,
    pub dir: usize,
    pub i: usize,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct NssetDoc {
    pub arity: usize,
    pub bounds: Vec<usize>,
    pub cells: BTreeMap<String, Vec<String>>,
    pub faces: Vec<LevelMapDoc>,
    pub degs: Vec<LevelMapDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Document {
    Sset { format_version: u32, payload: SsetDoc },
    Fincat { format_version: u32, payload: FincatDoc },
    Scat { format_version: u32, payload: ScatDoc },
    Bisset { format_version: u32, payload: BissetDoc },
    Nsset { format_version: u32, payload: NssetDoc },
    Hammock { format_version: u32, payload: HammockDoc },
    Locpair { format_version: u32, payload: LocpairDoc },
}

impl Document {
    pub fn format_version(&self) -> u32 {
        match self {
            Document::Sset { format_version, .. }
            | Document::Fincat { format_version, .. }
            | Document::Scat { format_version, .. }
            | Document::Bisset { format_version, .. }
            | Document::Nsset { format_version, .. }
            | Document::Hammock { format_version, .. }
            | Document::Locpair { format_version, .. } => *format_version,
        }
    }
}

/// Parses and version-checks a document; syntax and shape errors keep the
/// serde position information.
pub fn parse_document(text: &str) -> Result<Document> {
    let doc: Document = serde_json::from_str(text)
        .map_err(|e| Error::Invalid(format!("parse error: {e}")))?;
    if doc.format_version() != FORMAT_VERSION {
        return Err(Error::Invalid(format!(
            "unsupported format_version {}",
            doc.format_version()
        )));
    }
    Ok(doc)
}

/// Canonical emission: two-space indentation, struct field order, map
/// keys sorted, trailing newline.
pub fn emit_document(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}

fn resolve(
    ids: &BTreeMap<String, (usize, usize)>,
    id: &str,
    want_dim: usize,
) -> Result<usize> {
    match ids.get(id) {
        Some(&(d, idx)) if d == want_dim => Ok(idx),
        Some(&(d, _)) => Err(Error::Invalid(format!(
            "id {id} has dimension {d}, expected {want_dim}"
        ))),
        None => Err(Error::Invalid(format!("dangling reference {id}"))),
    }
}

pub fn sset_to_doc(s: &SSet) -> Result<SsetDoc> {
    let mut seen = BTreeMap::new();
    for dim in 0..=s.max_dim() {
        for idx in 0..s.nondeg_count(dim) {
            if seen.insert(s.label(dim, idx).to_string(), (dim, idx)).is_some() {
                return Err(Error::Invalid(format!(
                    "duplicate id {}",
                    s.label(dim, idx)
                )));
            }
        }
    }
    let nd: Vec<Vec<String>> =
        (0..=s.max_dim()).map(|d| s.labels(d).to_vec()).collect();
    let mut faces = BTreeMap::new();
    for dim in 1..=s.max_dim() {
        for idx in 0..s.nondeg_count(dim) {
            let list = (0..=dim)
                .map(|i| {
                    let f = s.stored_face(dim, idx, i);
                    RefDoc {
                        base: s.label(f.base_dim, f.base_idx).to_string(),
                        degens: f.word.clone(),
                    }
                })
                .collect();
            faces.insert(s.label(dim, idx).to_string(), list);
        }
    }
    Ok(SsetDoc { max_dim: s.max_dim(), nd, faces })
}

fn ref_from_doc(
    ids: &BTreeMap<String, (usize, usize)>,
    r: &RefDoc,
    total_dim: usize,
) -> Result<SimplexRef> {
    if r.degens.len() > total_dim {
        return Err(Error::Invalid(format!(
            "reference to {} has too many degeneracies",
            r.base
        )));
    }
    let base_dim = total_dim - r.degens.len();
    let base_idx = resolve(ids, &r.base, base_dim)?;
    Ok(SimplexRef { base_dim, base_idx, word: r.degens.clone() })
}

fn ref_to_doc(s: &SSet, r: &SimplexRef) -> RefDoc {
    RefDoc {
        base: s.label(r.base_dim, r.base_idx).to_string(),
        degens: r.word.clone(),
    }
}

fn id_table(doc: &SsetDoc) -> Result<BTreeMap<String, (usize, usize)>> {
    let mut ids = BTreeMap::new();
    for (dim, labels) in doc.nd.iter().enumerate() {
        for (idx, l) in labels.iter().enumerate() {
            if ids.insert(l.clone(), (dim, idx)).is_some() {
                return Err(Error::Invalid(format!("duplicate id {l}")));
            }
        }
    }
    Ok(ids)
}

pub fn sset_from_doc(doc: &SsetDoc) -> Result<SSet> {
    if doc.nd.len() != doc.max_dim + 1 {
        return Err(Error::Invalid(format!(
            "nd lists {} dimensions for max_dim {}",
            doc.nd.len(),
            doc.max_dim
        )));
    }
    let ids = id_table(doc)?;
    for key in doc.faces.keys() {
        if !ids.contains_key(key) {
            return Err(Error::Invalid(format!("dangling reference {key}")));
        }
    }
    let mut b = SSetBuilder::new(doc.max_dim);
    for l in &doc.nd[0] {
        b.add_vertex(l.clone());
    }
    for dim in 1..=doc.max_dim {
        for l in &doc.nd[dim] {
            let list = doc
                .faces
                .get(l)
                .ok_or_else(|| Error::Invalid(format!("missing faces for {l}")))?;
            if list.len() != dim + 1 {
                return Err(Error::Invalid(format!(
                    "{l} lists {} faces, expected {}",
                    list.len(),
                    dim + 1
                )));
            }
            let faces = list
                .iter()
                .map(|r| ref_from_doc(&ids, r, dim - 1))
                .collect::<Result<Vec<_>>>()?;
            b.add_simplex(dim, l.clone(), faces);
        }
    }
    b.build()
}

pub fn fincat_to_doc(c: &FinCat) -> Result<FincatDoc> {
    let mut seen = BTreeMap::new();
    for a in &c.arrows {
        if a.name.contains('∘') {
            return Err(Error::Invalid(format!("arrow id {} contains ∘", a.name)));
        }
        if seen.insert(a.name.clone(), ()).is_some() {
            return Err(Error::Invalid(format!("duplicate arrow id {}", a.name)));
        }
    }
    let arrows = c
        .arrows
        .iter()
        .map(|a| ArrowDoc {
            id: a.name.clone(),
            dom: c.objects[a.dom].clone(),
            cod: c.objects[a.cod].clone(),
        })
        .collect();
    let identities = c.identity.iter().map(|&i| c.arrows[i].name.clone()).collect();
    let comp = c
        .comp
        .iter()
        .map(|(&(g, f), &gf)| {
            (
                format!("{}∘{}", c.arrows[g].name, c.arrows[f].name),
                c.arrows[gf].name.clone(),
            )
        })
        .collect();
    Ok(FincatDoc {
        name: c.name.clone(),
        objects: c.objects.clone(),
        arrows,
        identities,
        comp,
    })
}

pub fn fincat_from_doc(doc: &FincatDoc) -> Result<FinCat> {
    let obj = |name: &str| {
        doc.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::Invalid(format!("dangling reference {name}")))
    };
    let arr = |name: &str| {
        doc.arrows
            .iter()
            .position(|a| a.id == name)
            .ok_or_else(|| Error::Invalid(format!("dangling reference {name}")))
    };
    let arrows = doc
        .arrows
        .iter()
        .map(|a| {
            Ok(Arrow { name: a.id.clone(), dom: obj(&a.dom)?, cod: obj(&a.cod)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let identity = doc
        .identities
        .iter()
        .map(|n| arr(n))
        .collect::<Result<Vec<_>>>()?;
    let mut comp = std::collections::HashMap::new();
    for (key, gf) in &doc.comp {
        let (g, f) = key
            .split_once('∘')
            .ok_or_else(|| Error::Invalid(format!("bad comp key {key}")))?;
        comp.insert((arr(g)?, arr(f)?), arr(gf)?);
    }
    let c = FinCat {
        name: doc.name.clone(),
        objects: doc.objects.clone(),
        arrows,
        identity,
        comp,
    };
    c.validate()?;
    Ok(c)
}

pub fn locpair_to_doc(p: &LocPair) -> Result<LocpairDoc> {
    Ok(LocpairDoc {
        cat: fincat_to_doc(&p.c)?,
        weq: p.w.iter().map(|&a| p.c.arrows[a].name.clone()).collect(),
    })
}

pub fn locpair_from_doc(doc: &LocpairDoc) -> Result<LocPair> {
    let c = fincat_from_doc(&doc.cat)?;
    let w = doc
        .weq
        .iter()
        .map(|n| {
            c.find_arrow(n)
                .ok_or_else(|| Error::Invalid(format!("dangling reference {n}")))
        })
        .collect::<Result<_>>()?;
    let p = LocPair { c, w };
    p.validate()?;
    Ok(p)
}

pub fn hammock_to_doc(p: &LocPair, h: &Hammock) -> Result<HammockDoc> {
    let c = &p.c;
    Ok(HammockDoc {
        locpair: locpair_to_doc(p)?,
        x: c.objects[h.x].clone(),
        y: c.objects[h.y].clone(),
        width: h.width,
        dirs: h
            .dirs
            .iter()
            .map(|d| match d {
                Dir::Fwd => "fwd".to_string(),
                Dir::Bwd => "bwd".to_string(),
            })
            .collect(),
        interior: h
            .interior
            .iter()
            .map(|col| col.iter().map(|&o| c.objects[o].clone()).collect())
            .collect(),
        horiz: h
            .horiz
            .iter()
            .map(|col| col.iter().map(|&a| c.arrows[a].name.clone()).collect())
            .collect(),
        vert: h
            .vert
            .iter()
            .map(|col| col.iter().map(|&a| c.arrows[a].name.clone()).collect())
            .collect(),
    })
}

pub fn hammock_from_doc(doc: &HammockDoc) -> Result<(LocPair, Hammock)> {
    let p = locpair_from_doc(&doc.locpair)?;
    let c = &p.c;
    let obj = |n: &str| {
        c.find_object(n)
            .ok_or_else(|| Error::Invalid(format!("dangling reference {n}")))
    };
    let arr = |n: &str| {
        c.find_arrow(n)
            .ok_or_else(|| Error::Invalid(format!("dangling reference {n}")))
    };
    let dirs = doc
        .dirs
        .iter()
        .map(|d| match d.as_str() {
            "fwd" => Ok(Dir::Fwd),
            "bwd" => Ok(Dir::Bwd),
            other => Err(Error::Invalid(format!("bad direction {other}"))),
        })
        .collect::<Result<_>>()?;
    let grid = |rows: &Vec<Vec<String>>, f: &dyn Fn(&str) -> Result<usize>| {
        rows.iter()
            .map(|col| col.iter().map(|n| f(n)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
    };
    let h = Hammock {
        x: obj(&doc.x)?,
        y: obj(&doc.y)?,
        width: doc.width,
        dirs,
        interior: grid(&doc.interior, &obj)?,
        horiz: grid(&doc.horiz, &arr)?,
        vert: grid(&doc.vert, &arr)?,
    };
    h.validate(&p)?;
    Ok((p, h))
}

pub fn smap_to_doc(cod: &SSet, m: &SMap) -> SmapDoc {
    m.images()
        .iter()
        .map(|per_dim| per_dim.iter().map(|r| ref_to_doc(cod, r)).collect())
        .collect()
}

pub fn smap_from_doc(dom: &SSet, cod: &SSet, doc: &SmapDoc) -> Result<SMap> {
    let ids = id_table(&sset_to_doc(cod)?)?;
    if doc.len() != dom.max_dim() + 1 {
        return Err(Error::Invalid("map lists the wrong number of dimensions".into()));
    }
    let images = doc
        .iter()
        .enumerate()
        .map(|(dim, per_dim)| {
            if per_dim.len() != dom.nondeg_count(dim) {
                return Err(Error::Invalid(format!(
                    "map lists {} images in dimension {dim}, expected {}",
                    per_dim.len(),
                    dom.nondeg_count(dim)
                )));
            }
            per_dim.iter().map(|r| ref_from_doc(&ids, r, dim)).collect()
        })
        .collect::<Result<Vec<_>>>()?;
    let m = SMap::from_images(images);
    m.validate(dom, cod)?;
    Ok(m)
}

pub fn scat_to_doc(b: &SCat) -> Result<ScatDoc> {
    let n = b.objects.len();
    let mut homs = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            homs.insert(
                format!("{}→{}", b.objects[x], b.objects[y]),
                sset_to_doc(&b.hom[x][y])?,
            );
        }
    }
    let mut comp = BTreeMap::new();
    for ((x, y, z), (_, m)) in &b.comp {
        comp.insert(
            format!("{}→{}→{}", b.objects[*x], b.objects[*y], b.objects[*z]),
            smap_to_doc(&b.hom[*x][*z], m),
        );
    }
    let ids = b
        .ids
        .iter()
        .enumerate()
        .map(|(x, r)| ref_to_doc(&b.hom[x][x], r))
        .collect();
    Ok(ScatDoc { name: b.name.clone(), objects: b.objects.clone(), homs, comp, ids })
}

pub fn scat_from_doc(doc: &ScatDoc) -> Result<SCat> {
    let n = doc.objects.len();
    let mut hom: Vec<Vec<SSet>> = Vec::with_capacity(n);
    for x in 0..n {
        let mut row = Vec::with_capacity(n);
        for y in 0..n {
            let key = format!("{}→{}", doc.objects[x], doc.objects[y]);
            let hd = doc
                .homs
                .get(&key)
                .ok_or_else(|| Error::Invalid(format!("missing hom {key}")))?;
            row.push(sset_from_doc(hd)?);
        }
        hom.push(row);
    }
    let mut comp = std::collections::HashMap::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let key = format!(
                    "{}→{}→{}",
                    doc.objects[x], doc.objects[y], doc.objects[z]
                );
                let md = doc
                    .comp
                    .get(&key)
                    .ok_or_else(|| Error::Invalid(format!("missing comp {key}")))?;
                let p = Product::new(&[&hom[x][y], &hom[y][z]]);
                let m = smap_from_doc(&p.sset, &hom[x][z], md)?;
                comp.insert((x, y, z), (p, m));
            }
        }
    }
    let ids = doc
        .ids
        .iter()
        .enumerate()
        .map(|(x, r)| {
            let table = id_table(&sset_to_doc(&hom[x][x])?)?;
            ref_from_doc(&table, r, r.degens.len())
        })
        .collect::<Result<Vec<_>>>()?;
    let b = SCat {
        name: doc.name.clone(),
        objects: doc.objects.clone(),
        hom,
        comp,
        ids,
    };
    b.validate()?;
    Ok(b)
}

pub fn bisset_to_doc(b: &BiSSet) -> Result<BissetDoc> {
    let rows = b.rows.iter().map(sset_to_doc).collect::<Result<Vec<_>>>()?;
    let hface = b
        .hface
        .iter()
        .enumerate()
        .map(|(p, maps)| {
            maps.iter()
                .map(|m| smap_to_doc(&b.rows[p - 1], m))
                .collect::<Vec<_>>()
        })
        .collect();
    let hdeg = b
        .hdeg
        .iter()
        .enumerate()
        .map(|(p, maps)| {
            maps.iter()
                .map(|m| smap_to_doc(&b.rows[p + 1], m))
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(BissetDoc { rows, hface, hdeg })
}

pub fn bisset_from_doc(doc: &BissetDoc) -> Result<BiSSet> {
    let rows = doc.rows.iter().map(sset_from_doc).collect::<Result<Vec<_>>>()?;
    if doc.hface.len() != rows.len() || doc.hdeg.len() + 1 != rows.len() {
        return Err(Error::Invalid("horizontal map families have the wrong shape".into()));
    }
    let hface = doc
        .hface
        .iter()
        .enumerate()
        .map(|(p, maps)| {
            maps.iter()
                .map(|m| smap_from_doc(&rows[p], &rows[p - 1], m))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let hdeg = doc
        .hdeg
        .iter()
        .enumerate()
        .map(|(p, maps)| {
            maps.iter()
                .map(|m| smap_from_doc(&rows[p], &rows[p + 1], m))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let b = BiSSet { rows, hface, hdeg };
    b.validate()?;
    Ok(b)
}

fn level_key(m: &[usize]) -> String {
    m.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_level_key(s: &str) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.parse::<usize>()
                .map_err(|_| Error::Invalid(format!("bad level key {s}")))
        })
        .collect()
}

pub fn nsset_to_doc(a: &NSSet) -> NssetDoc {
    NssetDoc {
        arity: a.arity,
        bounds: a.bounds.clone(),
        cells: a.cells.iter().map(|(m, c)| (level_key(m), c.clone())).collect(),
        faces: a
            .faces
            .iter()
            .map(|((m, d, i), map)| LevelMapDoc {
                at: m.clone(),
                dir: *d,
                i: *i,
                map: map.clone(),
            })
            .collect(),
        degs: a
            .degs
            .iter()
            .map(|((m, d, i), map)| LevelMapDoc {
                at: m.clone(),
                dir: *d,
                i: *i,
                map: map.clone(),
            })
            .collect(),
    }
}

pub fn nsset_from_doc(doc: &NssetDoc) -> Result<NSSet> {
    let cells = doc
        .cells
        .iter()
        .map(|(k, c)| Ok((parse_level_key(k)?, c.clone())))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let tabled = |entries: &[LevelMapDoc]| {
        entries
            .iter()
            .map(|e| ((e.at.clone(), e.dir, e.i), e.map.clone()))
            .collect::<BTreeMap<_, _>>()
    };
    let a = NSSet {
        arity: doc.arity,
        bounds: doc.bounds.clone(),
        cells,
        faces: tabled(&doc.faces),
        degs: tabled(&doc.degs),
    };
    a.validate()?;
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat;
    use crate::nerve::nerve;
    use crate::simplicial::standard_simplex;

    fn wrap_sset(s: &SSet) -> Document {
        Document::Sset { format_version: FORMAT_VERSION, payload: sset_to_doc(s).unwrap() }
    }

    #[test]
    fn sset_documents_round_trip() {
        for s in [
            standard_simplex(2, 2),
            crate::simplicial::boundary(2, 2),
            crate::simplicial::horn(2, 1, 2).unwrap(),
            nerve(&fincat::ordinal(1), 2).sset,
        ] {
            let text = emit_document(&wrap_sset(&s));
            let doc = parse_document(&text).unwrap();
            let Document::Sset { payload, .. } = &doc else { panic!() };
            let back = sset_from_doc(payload).unwrap();
            assert_eq!(emit_document(&wrap_sset(&back)), text);
        }
    }

    #[test]
    fn dangling_face_references_are_named() {
        let mut doc = sset_to_doc(&standard_simplex(1, 1)).unwrap();
        doc.faces.get_mut("01").unwrap()[0].base = "zz".into();
        let err = sset_from_doc(&doc).unwrap_err();
        assert!(err.to_string().contains("zz"), "{err}");
    }

    #[test]
    fn fincat_documents_round_trip_and_name_missing_composites() {
        for c in fincat::corpus() {
            let doc = fincat_to_doc(&c).unwrap();
            let back = fincat_from_doc(&doc).unwrap();
            assert_eq!(fincat_to_doc(&back).unwrap(), doc);
        }
        let mut doc = fincat_to_doc(&fincat::ordinal(2)).unwrap();
        let removed: Vec<String> = doc
            .comp
            .keys()
            .filter(|k| k.as_str() == "1<2∘0<1")
            .cloned()
            .collect();
        for k in removed {
            doc.comp.remove(&k);
        }
        let err = fincat_from_doc(&doc).unwrap_err();
        assert!(err.to_string().contains("1<2") && err.to_string().contains("0<1"), "{err}");
    }

    #[test]
    fn scat_documents_round_trip() {
        let b = crate::scat::discrete_scat(&fincat::span(), 2);
        let doc = scat_to_doc(&b).unwrap();
        let back = scat_from_doc(&doc).unwrap();
        assert_eq!(scat_to_doc(&back).unwrap(), doc);
    }

    #[test]
    fn nsset_documents_round_trip() {
        let a = crate::nsset::nerve_cells(&fincat::ordinal(1), 3);
        let doc = nsset_to_doc(&a);
        let back = nsset_from_doc(&doc).unwrap();
        assert_eq!(nsset_to_doc(&back), doc);
    }
}
