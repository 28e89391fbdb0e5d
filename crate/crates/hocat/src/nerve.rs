//! The nerve of a finite category, Segal maps, and reconstruction of a
//! category from a strict-Segal simplicial set.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fincat::{Arrow, CatFunctor, FinCat};
use crate::simplicial::{SSet, SSetBuilder, SimplexRef};
use crate::smap::SMap;

/// The nerve of a category with its chain bookkeeping: nondegenerate
/// `n`-simplices are chains of `n` composable non-identity arrows.
#[derive(Debug, Clone)]
pub struct Nerve {
    pub sset: SSet,
    /// `chains[n][idx]`: arrow indices of the chain, `a_1 ... a_n` with
    /// `cod(a_i) = dom(a_{i+1})`; `chains[0][idx]` is empty, vertex = object.
    pub chains: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    /// vertex index of each object (objects enter in order, so identical)
    pub max_dim: usize,
}

pub fn nerve(c: &FinCat, max_dim: usize) -> Nerve {
    let mut b = SSetBuilder::new(max_dim);
    let mut chains: Vec<Vec<Vec<usize>>> = vec![Vec::new(); max_dim + 1];
    let mut index: Vec<HashMap<Vec<usize>, usize>> = vec![HashMap::new(); max_dim + 1];
    for (i, o) in c.objects.iter().enumerate() {
        let idx = b.add_vertex(o.clone());
        debug_assert_eq!(idx, i);
        chains[0].push(Vec::new());
    }
    // vertex chains are keyed by the object as a singleton marker
    for n in 1..=max_dim {
        // extend each (n-1)-chain by every composable non-identity arrow
        let prev: Vec<Vec<usize>> = chains[n - 1].clone();
        for (pidx, ch) in prev.iter().enumerate() {
            let end = if n == 1 {
                pidx // vertex index = object index
            } else {
                c.arrows[*ch.last().unwrap()].cod
            };
            for a in 0..c.arrows.len() {
                if c.is_identity(a) || c.arrows[a].dom != end {
                    continue;
                }
                let mut chain = ch.clone();
                if n == 1 {
                    chain.clear();
                }
                chain.push(a);
                let faces = (0..=n)
                    .map(|i| chain_face(c, &chain, i, &index))
                    .collect::<Vec<_>>();
                let label = chain
                    .iter()
                    .map(|&a| c.arrows[a].name.clone())
                    .collect::<Vec<_>>()
                    .join(";");
                let idx = b.add_simplex(n, label, faces);
                index[n].insert(chain.clone(), idx);
                chains[n].push(chain);
            }
        }
    }
    let sset = b.build().expect("nerves satisfy the identities");
    Nerve { sset, chains, index, max_dim }
}

/// Face `d_i` of a chain, as a normal-form ref: ends drop, middles compose,
/// identities created by composition become degeneracies.
fn chain_face(
    c: &FinCat,
    chain: &[usize],
    i: usize,
    index: &[HashMap<Vec<usize>, usize>],
) -> SimplexRef {
    let n = chain.len();
    let reduced: Vec<usize> = if i == 0 {
        chain[1..].to_vec()
    } else if i == n {
        chain[..n - 1].to_vec()
    } else {
        let mut v = chain[..i - 1].to_vec();
        v.push(c.compose(chain[i], chain[i - 1]));
        v.extend_from_slice(&chain[i + 1..]);
        v
    };
    let vertex = if i == 0 {
        // the chain may be empty after dropping; record start object
        if n == 1 { c.arrows[chain[0]].cod } else { c.arrows[reduced[0]].dom }
    } else if reduced.is_empty() {
        c.arrows[chain[0]].dom
    } else {
        c.arrows[reduced[0]].dom
    };
    chain_ref(c, &reduced, vertex, index)
}

/// Normal form of a chain that may contain identity arrows: strip
/// identities from the largest position down, collecting the degeneracy
/// word.
fn chain_ref(
    c: &FinCat,
    chain: &[usize],
    start_object: usize,
    index: &[HashMap<Vec<usize>, usize>],
) -> SimplexRef {
    let mut chain = chain.to_vec();
    let mut word = Vec::new();
    while let Some(pos) = chain.iter().rposition(|&a| c.is_identity(a)) {
        chain.remove(pos);
        word.push(pos);
    }
    if chain.is_empty() {
        SimplexRef { base_dim: 0, base_idx: start_object, word }
    } else {
        SimplexRef { base_dim: chain.len(), base_idx: index[chain.len()][&chain], word }
    }
}

impl Nerve {
    /// The ref of an arbitrary composable chain (identities allowed).
    pub fn ref_of_chain(&self, c: &FinCat, chain: &[usize], start_object: usize) -> SimplexRef {
        chain_ref(c, chain, start_object, &self.index)
    }

    /// The ref of a single arrow as an edge.
    pub fn edge_of_arrow(&self, c: &FinCat, a: usize) -> SimplexRef {
        self.ref_of_chain(c, &[a], c.arrows[a].dom)
    }
}

/// The simplicial map of nerves induced by a functor.
pub fn nerve_functor(
    f: &CatFunctor,
    src: &FinCat,
    dst: &FinCat,
    nsrc: &Nerve,
    ndst: &Nerve,
) -> SMap {
    let mut images: Vec<Vec<SimplexRef>> = Vec::new();
    images.push(
        (0..src.objects.len())
            .map(|o| SimplexRef::nondeg(0, f.object_map[o]))
            .collect(),
    );
    for n in 1..=nsrc.max_dim {
        images.push(
            nsrc.chains[n]
                .iter()
                .map(|ch| {
                    let img: Vec<usize> = ch.iter().map(|&a| f.arrow_map[a]).collect();
                    let start = f.object_map[src.arrows[ch[0]].dom];
                    ndst.ref_of_chain(dst, &img, start)
                })
                .collect(),
        );
    }
    SMap::from_images(images)
}

/// Vertex `k` of a simplex.
pub fn vertex(a: &SSet, x: &SimplexRef, k: usize) -> SimplexRef {
    let mut y = x.clone();
    while y.dim() > k {
        y = a.face(&y, y.dim());
    }
    while y.dim() > 0 {
        y = a.face(&y, 0);
    }
    y
}

/// The spine of a `p`-simplex: its `p` edges between consecutive vertices.
pub fn spine(a: &SSet, x: &SimplexRef) -> Vec<SimplexRef> {
    let p = x.dim();
    (0..p)
        .map(|i| {
            let mut y = x.clone();
            for _ in 0..(p - 1 - i) {
                y = a.face(&y, y.dim());
            }
            for _ in 0..i {
                y = a.face(&y, 0);
            }
            y
        })
        .collect()
}

pub fn edge_source(a: &SSet, e: &SimplexRef) -> SimplexRef {
    a.face(e, 1)
}

pub fn edge_target(a: &SSet, e: &SimplexRef) -> SimplexRef {
    a.face(e, 0)
}

/// The evaluated Segal map in degree `p`, with the explicit fiber-product
/// codomain of composable edge tuples.
#[derive(Debug, Clone)]
pub struct SegalTable {
    pub p: usize,
    /// every `p`-simplex paired with its spine
    pub map: Vec<(SimplexRef, Vec<SimplexRef>)>,
    /// all composable `p`-tuples of edges
    pub codomain: Vec<Vec<SimplexRef>>,
}

pub fn segal_map(a: &SSet, p: usize) -> Result<SegalTable> {
    if p > a.max_dim() {
        return Err(Error::Precondition(format!(
            "degree {p} exceeds max dimension {}",
            a.max_dim()
        )));
    }
    let map = a
        .simplices(p)
        .into_iter()
        .map(|x| {
            let s = spine(a, &x);
            (x, s)
        })
        .collect();
    let edges = a.simplices(1);
    let mut codomain: Vec<Vec<SimplexRef>> = vec![Vec::new()];
    for _ in 0..p {
        let mut next = Vec::new();
        for tuple in &codomain {
            for e in &edges {
                if let Some(last) = tuple.last() {
                    if edge_target(a, last) != edge_source(a, e) {
                        continue;
                    }
                }
                let mut t = tuple.clone();
                t.push(e.clone());
                next.push(t);
            }
        }
        codomain = next;
    }
    Ok(SegalTable { p, map, codomain })
}

#[derive(Debug, Clone)]
pub enum SegalWitness {
    /// a composable tuple with no preimage
    NotSurjective(Vec<SimplexRef>),
    /// two distinct simplices with the same spine
    NotInjective(SimplexRef, SimplexRef),
}

/// `None` when the Segal maps are bijections for all `2 <= p <= max_p`;
/// otherwise the degree and a witness.
pub fn is_strict_segal(a: &SSet, max_p: usize) -> Result<Option<(usize, SegalWitness)>> {
    for p in 2..=max_p {
        let t = segal_map(a, p)?;
        let mut seen: HashMap<Vec<SimplexRef>, SimplexRef> = HashMap::new();
        for (x, s) in &t.map {
            if let Some(y) = seen.get(s) {
                return Ok(Some((p, SegalWitness::NotInjective(y.clone(), x.clone()))));
            }
            seen.insert(s.clone(), x.clone());
        }
        for tuple in &t.codomain {
            if !seen.contains_key(tuple) {
                return Ok(Some((p, SegalWitness::NotSurjective(tuple.clone()))));
            }
        }
    }
    Ok(None)
}

/// Rebuilds a category from a strict-Segal simplicial set: objects are
/// vertices, arrows are edges, composition is `d_1` of the unique
/// 2-simplex over a composable pair.
pub fn category_from_segal(a: &SSet) -> Result<FinCat> {
    if a.max_dim() < 3 {
        return Err(Error::Precondition("need max dimension at least 3".into()));
    }
    if let Some((p, _)) = is_strict_segal(a, 3)? {
        return Err(Error::Precondition(format!("Segal map not bijective at p = {p}")));
    }
    let objects: Vec<String> = (0..a.nondeg_count(0)).map(|v| a.label(0, v).to_string()).collect();
    let edges = a.simplices(1);
    let arrows: Vec<Arrow> = edges
        .iter()
        .map(|e| Arrow {
            name: a.display(e),
            dom: edge_source(a, e).base_idx,
            cod: edge_target(a, e).base_idx,
        })
        .collect();
    let identity: Vec<usize> = (0..objects.len())
        .map(|v| {
            let id = a.degeneracy(&SimplexRef::nondeg(0, v), 0);
            edges.iter().position(|e| *e == id).unwrap()
        })
        .collect();
    // invert the degree-2 Segal bijection
    let t2 = segal_map(a, 2)?;
    let by_spine: HashMap<&Vec<SimplexRef>, &SimplexRef> =
        t2.map.iter().map(|(x, s)| (s, x)).collect();
    let mut comp = HashMap::new();
    for (g, ge) in edges.iter().enumerate() {
        for (f, fe) in edges.iter().enumerate() {
            if edge_target(a, fe) != edge_source(a, ge) {
                continue;
            }
            let x = by_spine[&vec![fe.clone(), ge.clone()]];
            let gf = a.face(x, 1);
            comp.insert((g, f), edges.iter().position(|e| *e == gf).unwrap());
        }
    }
    let c = FinCat { name: "from_segal".into(), objects, arrows, identity, comp };
    c.validate()?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Budget;
    use crate::fincat;
    use crate::simplicial::{boundary, horn, standard_simplex};
    use crate::smap::is_isomorphic;

    #[test]
    fn nerve_of_arrow_is_delta1() {
        let n = nerve(&fincat::ordinal(1), 3);
        let d1 = standard_simplex(1, 3);
        assert!(is_isomorphic(&n.sset, &d1, &mut Budget::default()).unwrap().is_some());
    }

    #[test]
    fn nerve_of_ordinal_n_is_delta_n() {
        for k in 0..=3 {
            let n = nerve(&fincat::ordinal(k), 3);
            let d = standard_simplex(k, 3);
            assert!(
                is_isomorphic(&n.sset, &d, &mut Budget::default()).unwrap().is_some(),
                "nerve of ordinal {k}"
            );
        }
    }

    #[test]
    fn nerve_of_z2_counts() {
        let n = nerve(&fincat::cyclic_group(2), 4);
        for k in 0..=4 {
            assert_eq!(n.sset.simplex_count(k), 1 << k, "dimension {k}");
        }
    }

    #[test]
    fn nerve_validates_on_corpus() {
        for c in fincat::corpus() {
            let n = nerve(&c, 3);
            n.sset.validate().unwrap_or_else(|e| panic!("{}: {e}", c.name));
        }
    }

    #[test]
    fn segal_bijection_on_nerve() {
        let n = nerve(&fincat::ordinal(2), 3);
        assert!(is_strict_segal(&n.sset, 3).unwrap().is_none());
    }

    #[test]
    fn segal_on_point_is_singleton_bijection() {
        let d0 = standard_simplex(0, 3);
        for p in 2..=3 {
            let t = segal_map(&d0, p).unwrap();
            assert_eq!(t.map.len(), 1);
            assert_eq!(t.codomain.len(), 1);
        }
        assert!(is_strict_segal(&d0, 3).unwrap().is_none());
    }

    #[test]
    fn horn_fails_segal_with_missing_pair() {
        let h = horn(2, 1, 2).unwrap();
        let w = is_strict_segal(&h, 2).unwrap();
        match w {
            Some((2, SegalWitness::NotSurjective(t))) => {
                assert_eq!(h.display(&t[0]), "01");
                assert_eq!(h.display(&t[1]), "12");
            }
            other => panic!("expected missing (01,12), got {other:?}"),
        }
    }

    #[test]
    fn boundary_fails_segal() {
        let b = boundary(2, 2);
        assert!(matches!(
            is_strict_segal(&b, 2).unwrap(),
            Some((2, SegalWitness::NotSurjective(_)))
        ));
    }

    #[test]
    fn nerves_are_strict_segal_on_corpus() {
        for c in fincat::corpus() {
            let n = nerve(&c, 3);
            assert!(
                is_strict_segal(&n.sset, 3).unwrap().is_none(),
                "nerve of {} not strict Segal",
                c.name
            );
        }
    }

    #[test]
    fn round_trip_on_corpus() {
        for c in fincat::corpus() {
            let n = nerve(&c, 3);
            let r = category_from_segal(&n.sset).unwrap();
            assert!(
                fincat::cat_isomorphic(&c, &r).is_some(),
                "round trip failed for {}",
                c.name
            );
        }
    }

    #[test]
    fn from_segal_on_point_is_terminal() {
        let d0 = standard_simplex(0, 3);
        let c = category_from_segal(&d0).unwrap();
        assert_eq!(c.objects.len(), 1);
        assert_eq!(c.arrows.len(), 1);
    }

    #[test]
    fn from_segal_recovers_z2_table() {
        let z2 = fincat::cyclic_group(2);
        let n = nerve(&z2, 3);
        let r = category_from_segal(&n.sset).unwrap();
        assert_eq!(r.arrows.len(), 2);
        let g = (0..2).find(|&x| !r.is_identity(x)).unwrap();
        assert_eq!(r.compose(g, g), r.identity[0]);
    }

    #[test]
    fn from_segal_rejects_horn() {
        let h = horn(2, 1, 3).unwrap();
        assert!(category_from_segal(&h).is_err());
    }

    #[test]
    fn segal_naturality_for_a_collapse_functor() {
        // ordinal 2 -> ordinal 1, sending 0 to 0 and both 1, 2 to 1
        let src = fincat::ordinal(2);
        let dst = fincat::ordinal(1);
        let omap = vec![0, 1, 1];
        let amap: Vec<usize> = (0..src.arrows.len())
            .map(|a| {
                let d = omap[src.arrows[a].dom];
                let c = omap[src.arrows[a].cod];
                dst.arrows
                    .iter()
                    .position(|x| x.dom == d && x.cod == c)
                    .unwrap()
            })
            .collect();
        let f = CatFunctor { object_map: omap, arrow_map: amap };
        f.validate(&src, &dst).unwrap();
        let ns = nerve(&src, 3);
        let nd = nerve(&dst, 3);
        let m = nerve_functor(&f, &src, &dst, &ns, &nd);
        m.validate(&ns.sset, &nd.sset).unwrap();
        // Segal naturality: spine of image = image of spine, each degree
        for p in 2..=3 {
            let t = segal_map(&ns.sset, p).unwrap();
            for (x, s) in &t.map {
                let lhs = spine(&nd.sset, &m.eval(x));
                let rhs: Vec<SimplexRef> = s.iter().map(|e| m.eval(e)).collect();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
