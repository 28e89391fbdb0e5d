//! The homotopy coherent nerve: n-simplices are simplicial functors from
//! the resolved ordinal S[n], enumerated by backtracking over cube images,
//! with faces and degeneracies given by precomposition with the
//! cosimplicial operators of S[-].

use std::collections::HashMap;

use crate::error::{Budget, Error, Result};
use crate::fincat::FinCat;
use crate::nerve::nerve;
use crate::quasi::{is_quasicategory, HornWitness};
use crate::scat::{build_comp, is_locally_kan, SCat, SFunctor};
use crate::simplicial::{
    sset_from_tables, word_after_degeneracy, SSet, SSetBuilder, SimplexRef, Tabulated,
};
use crate::smap::SMap;
use crate::sordinal::{s_ordinal, s_ordinal_map, SOrdinal};

/// An n-simplex of the nerve: a strict simplicial functor S[n] -> target.
pub struct HcSimplex {
    pub n: usize,
    pub f: SFunctor,
}

/// Canonical data of such a functor: object images plus the image tables
/// of the hom maps for the pairs x < y in lexicographic order.  The maps
/// for x = y (forced to the identity) and y < x (empty) are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HcData {
    pub objects: Vec<usize>,
    pub maps: Vec<Vec<Vec<SimplexRef>>>,
}

fn pair_index(n: usize, x: usize, y: usize) -> usize {
    // pairs (x,y), x < y <= n, lex order
    let before: usize = (0..x).map(|a| n - a).sum();
    before + (y - x - 1)
}

fn eval_partial(images: &[Vec<SimplexRef>], r: &SimplexRef) -> SimplexRef {
    let mut out = images[r.base_dim][r.base_idx].clone();
    for &j in r.word.iter().rev() {
        out.word = word_after_degeneracy(&out.word, j);
    }
    out
}

/// All functor data S[n] -> b, deterministic order.
fn enumerate(b: &SCat, s: &SOrdinal, budget: &mut Budget) -> Result<Vec<HcData>> {
    let n = s.n;
    let nobj = b.objects.len();
    let md = s.max_dim;
    let mut out = Vec::new();
    if nobj == 0 {
        return Ok(out);
    }
    // pairs in increasing gap order so split values only look backwards
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x + 1..=n).map(move |y| (x, y)))
        .collect();
    pairs.sort_by_key(|&(x, y)| (y - x, x));
    // slots: one per nondegenerate cube simplex, dims ascending within a pair
    let mut slots: Vec<(usize, usize, usize)> = Vec::new();
    for (pi, &(x, y)) in pairs.iter().enumerate() {
        let c = s.cubes[&(x, y)].sset();
        for dim in 0..=md {
            for idx in 0..c.nondeg_count(dim) {
                slots.push((pi, dim, idx));
            }
        }
    }

    let mut objects = vec![0usize; n + 1];
    loop {
        // partial image tables, keyed by pair position
        let mut maps: Vec<Vec<Vec<SimplexRef>>> = vec![vec![Vec::new(); md + 1]; pairs.len()];
        search(b, s, &pairs, &slots, 0, &objects, &mut maps, &mut out, budget)?;
        // next object assignment
        let mut pos = 0;
        loop {
            if pos > n {
                return Ok(out);
            }
            objects[pos] += 1;
            if objects[pos] < nobj {
                break;
            }
            objects[pos] = 0;
            pos += 1;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    b: &SCat,
    s: &SOrdinal,
    pairs: &[(usize, usize)],
    slots: &[(usize, usize, usize)],
    at: usize,
    objects: &[usize],
    maps: &mut Vec<Vec<Vec<SimplexRef>>>,
    out: &mut Vec<HcData>,
    budget: &mut Budget,
) -> Result<()> {
    if at == slots.len() {
        let n = s.n;
        let ordered: Vec<Vec<Vec<SimplexRef>>> = (0..n)
            .flat_map(|x| (x + 1..=n).map(move |y| (x, y)))
            .map(|(x, y)| {
                let pi = pairs.iter().position(|p| *p == (x, y)).unwrap();
                maps[pi].clone()
            })
            .collect();
        out.push(HcData { objects: objects.to_vec(), maps: ordered });
        return Ok(());
    }
    let (pi, dim, idx) = slots[at];
    let (i, j) = pairs[pi];
    let cube = &s.cubes[&(i, j)];
    let hom = &b.hom[objects[i]][objects[j]];
    let chain = &cube.tab.elems[dim][idx];
    let candidates: Vec<SimplexRef> = if chain[0] != 0 {
        // lies in a composition facet: value is the spliced composite
        let k = chain[0].trailing_zeros() as usize;
        let p = i + 1 + k;
        let left: Vec<u32> = chain.iter().map(|u| u & ((1 << k) - 1)).collect();
        let right: Vec<u32> = chain.iter().map(|u| u >> (k + 1)).collect();
        let lpi = pairs.iter().position(|q| *q == (i, p)).unwrap();
        let rpi = pairs.iter().position(|q| *q == (p, j)).unwrap();
        let limg = eval_partial(&maps[lpi], &s.cubes[&(i, p)].ref_of_chain(&left));
        let rimg = eval_partial(&maps[rpi], &s.cubes[&(p, j)].ref_of_chain(&right));
        vec![b.compose(objects[i], objects[p], objects[j], &limg, &rimg)]
    } else {
        hom.simplices(dim)
    };
    let me = SimplexRef::nondeg(dim, idx);
    for cand in candidates {
        budget.spend(1)?;
        let ok = (0..=dim).take(if dim == 0 { 0 } else { dim + 1 }).all(|l| {
            let expected = eval_partial(&maps[pi], &cube.sset().face(&me, l));
            hom.face(&cand, l) == expected
        });
        if !ok {
            continue;
        }
        maps[pi][dim].push(cand);
        search(b, s, pairs, slots, at + 1, objects, maps, out, budget)?;
        maps[pi][dim].pop();
    }
    Ok(())
}

/// Full SMap of the functor at an ordered pair of S[n] objects.
fn functor_map_at(b: &SCat, d: &HcData, n: usize, md: usize, x: usize, y: usize) -> SMap {
    if y < x {
        SMap::from_images(vec![Vec::new(); md + 1])
    } else if x == y {
        // the hom S[n](x,x) is a point; send it to the identity
        let mut images = vec![Vec::new(); md + 1];
        images[0].push(b.ids[d.objects[x]].clone());
        SMap::from_images(images)
    } else {
        SMap::from_images(d.maps[pair_index(n, x, y)].clone())
    }
}

fn data_to_functor(b: &SCat, d: &HcData, n: usize, md: usize) -> SFunctor {
    let mut hom_maps = HashMap::new();
    for x in 0..=n {
        for y in 0..=n {
            hom_maps.insert((x, y), functor_map_at(b, d, n, md, x, y));
        }
    }
    SFunctor { object_map: d.objects.clone(), hom_maps }
}

pub fn hc_nerve_simplices(b: &SCat, n: usize, budget: &mut Budget) -> Result<Vec<HcSimplex>> {
    let md = hom_max_dim(b);
    if md + 1 < n {
        return Err(Error::Precondition(format!(
            "hom complexes truncated at {md}, cannot see dimension {n}"
        )));
    }
    let s = s_ordinal(n, md);
    Ok(enumerate(b, &s, budget)?
        .into_iter()
        .map(|d| HcSimplex { n, f: data_to_functor(b, &d, n, md) })
        .collect())
}

fn hom_max_dim(b: &SCat) -> usize {
    b.hom[0][0].max_dim()
}

fn precompose(b: &SCat, via: &SFunctor, m: usize, k: usize, md: usize, d: &HcData) -> HcData {
    let objects: Vec<usize> = (0..=m).map(|x| d.objects[via.object_map[x]]).collect();
    let mut maps = Vec::new();
    for x in 0..m {
        for y in x + 1..=m {
            let (fx, fy) = (via.object_map[x], via.object_map[y]);
            let tgt = functor_map_at(b, d, k, md, fx, fy);
            maps.push(via.hom_maps[&(x, y)].then(&tgt).into_images());
        }
    }
    HcData { objects, maps }
}

fn hc_label(b: &SCat, d: &HcData, k: usize) -> String {
    let mut s = b.objects[d.objects[0]].clone();
    for x in 0..k {
        let f = &d.maps[pair_index(k, x, x + 1)][0][0];
        s.push_str(&format!(
            "|{}|{}",
            b.hom[d.objects[x]][d.objects[x + 1]].display(f),
            b.objects[d.objects[x + 1]]
        ));
    }
    s
}

pub struct HcNerve {
    pub max_n: usize,
    pub tab: Tabulated<HcData>,
    pub ords: Vec<SOrdinal>,
}

impl HcNerve {
    pub fn sset(&self) -> &SSet {
        &self.tab.sset
    }
}

pub fn hc_nerve(b: &SCat, max_n: usize, budget: &mut Budget) -> Result<HcNerve> {
    let md = hom_max_dim(b);
    if md + 1 < max_n {
        return Err(Error::Precondition(format!(
            "hom complexes truncated at {md}, cannot see dimension {max_n}"
        )));
    }
    let ords: Vec<SOrdinal> = (0..=max_n + 1).map(|k| s_ordinal(k, md)).collect();
    let sets: Vec<Vec<HcData>> = (0..=max_n)
        .map(|k| enumerate(b, &ords[k], budget))
        .collect::<Result<Vec<_>>>()?;
    // cosimplicial operators for faces and degeneracies
    let mut deltas: Vec<Vec<SFunctor>> = vec![Vec::new()];
    for k in 1..=max_n {
        deltas.push(
            (0..=k)
                .map(|i| {
                    let f: Vec<usize> = (0..=k).filter(|&v| v != i).collect();
                    s_ordinal_map(&f, &ords[k - 1], &ords[k])
                })
                .collect(),
        );
    }
    let mut sigmas: Vec<Vec<SFunctor>> = Vec::new();
    for k in 0..=max_n {
        sigmas.push(
            (0..=k)
                .map(|i| {
                    let f: Vec<usize> =
                        (0..=k + 1).map(|v| if v <= i { v } else { v - 1 }).collect();
                    s_ordinal_map(&f, &ords[k + 1], &ords[k])
                })
                .collect(),
        );
    }
    let tab = sset_from_tables(
        max_n,
        &sets,
        |k, d, i| precompose(b, &deltas[k][i], k - 1, k, md, d),
        |k, d, i| precompose(b, &sigmas[k][i], k + 1, k, md, d),
        |k, d| hc_label(b, d, k),
    )?;
    Ok(HcNerve { max_n, tab, ords })
}

pub struct HcQuasiReport {
    /// witness against the theorem's local Kan hypothesis, if any
    pub locally_kan_failure: Option<(usize, usize, HornWitness)>,
    /// witness against the conclusion, if any
    pub witness: Option<HornWitness>,
}

impl HcQuasiReport {
    pub fn is_quasi(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn hc_nerve_is_quasi(
    b: &SCat,
    max_n: usize,
    budget: &mut Budget,
) -> Result<(HcNerve, HcQuasiReport)> {
    let locally_kan_failure = is_locally_kan(b, hom_max_dim(b), budget)?;
    let n = hc_nerve(b, max_n, budget)?;
    let witness = is_quasicategory(n.sset(), max_n, budget)?;
    Ok((n, HcQuasiReport { locally_kan_failure, witness }))
}

pub struct CoherenceReport {
    /// per ordered pair (i, j), the cube map into hom(F i, F j)
    pub cubes: Vec<(usize, usize, SMap)>,
    /// splice equations F(u * v) = F(v) . F(u) verified
    pub splits_checked: usize,
    pub lines: Vec<String>,
}

/// Unfolds an n-simplex into its family of cube maps and re-verifies the
/// composite-facet conditions; a failure means the enumerator is broken.
pub fn expand_coherence_data(b: &SCat, s: &SOrdinal, h: &HcSimplex) -> Result<CoherenceReport> {
    let n = h.n;
    let o = &h.f.object_map;
    let mut cubes = Vec::new();
    let mut lines = Vec::new();
    let mut splits_checked = 0usize;
    for i in 0..n {
        for j in i + 1..=n {
            let m = h.f.hom_maps[&(i, j)].clone();
            lines.push(format!(
                "F({i}..{j}): cube of dimension {} -> hom({}, {})",
                j - i - 1,
                b.objects[o[i]],
                b.objects[o[j]]
            ));
            cubes.push((i, j, m));
        }
    }
    for i in 0..n {
        for p in i + 1..=n {
            for j in p + 1..=n {
                let big = &s.cubes[&(i, j)];
                let pos = p - i - 1;
                for dim in 0..=s.max_dim {
                    for u in s.cubes[&(i, p)].sset().simplices(dim) {
                        for v in s.cubes[&(p, j)].sset().simplices(dim) {
                            let cu = s.cubes[&(i, p)].chain_of_ref(&u);
                            let cv = s.cubes[&(p, j)].chain_of_ref(&v);
                            let spliced: Vec<u32> = cu
                                .iter()
                                .zip(cv.iter())
                                .map(|(a, bb)| a | (1 << pos) | (bb << (pos + 1)))
                                .collect();
                            let lhs =
                                h.f.hom_maps[&(i, j)].eval(&big.ref_of_chain(&spliced));
                            let rhs = b.compose(
                                o[i],
                                o[p],
                                o[j],
                                &h.f.hom_maps[&(i, p)].eval(&u),
                                &h.f.hom_maps[&(p, j)].eval(&v),
                            );
                            if lhs != rhs {
                                return Err(Error::Invalid(format!(
                                    "composite facet broken at ({i},{p},{j}) dim {dim}"
                                )));
                            }
                            splits_checked += 1;
                        }
                    }
                }
            }
        }
    }
    lines.push(format!("{splits_checked} composite facet equations hold"));
    Ok(CoherenceReport { cubes, splits_checked, lines })
}

/// The two-object enrichment with a single interesting hom: hom(0,1) is
/// the nerve of `g`, the endpoint homs are points, hom(1,0) is empty.
pub fn suspension_scat(g: &FinCat, max_dim: usize) -> SCat {
    let point = {
        let mut sb = SSetBuilder::new(max_dim);
        sb.add_vertex("id");
        sb.build().unwrap()
    };
    let empty = SSetBuilder::new(max_dim).build().unwrap();
    let gn = nerve(g, max_dim);
    let hom = vec![
        vec![point.clone(), gn.sset.clone()],
        vec![empty, point.clone()],
    ];
    let comp = build_comp(&hom, |x, y, z, f, gg| {
        if x == y {
            gg.clone()
        } else {
            debug_assert!(y == z);
            f.clone()
        }
    });
    SCat {
        name: format!("susp({})", g.name),
        objects: vec!["0".into(), "1".into()],
        hom,
        comp,
        ids: vec![SimplexRef::nondeg(0, 0), SimplexRef::nondeg(0, 0)],
    }
}
