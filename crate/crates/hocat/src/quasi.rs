//! Horn fillers, Kan and quasi-category detection, the special outer-horn
//! criterion over nerves, and the fundamental category of a quasi-category.

use std::collections::HashMap;

use crate::error::{Budget, Error, Result};
use crate::fincat::{Arrow, FinCat};
use crate::nerve::{edge_source, edge_target, Nerve};
use crate::simplicial::{horn, simplex_vertex_sequence, SSet, SimplexRef};
use crate::smap::{enumerate_maps, Constraints, SMap};

/// A horn `Λ^i[n]` mapped into a target simplicial set.
#[derive(Debug, Clone)]
pub struct HornInstance {
    pub n: usize,
    pub i: usize,
    pub horn_map: SMap,
}

/// The face of `x` spanned by the given vertex subset (strictly increasing).
pub fn face_by_vertices(a: &SSet, x: &SimplexRef, verts: &[usize]) -> SimplexRef {
    let mut y = x.clone();
    let mut present: Vec<usize> = (0..=x.dim()).collect();
    for v in (0..=x.dim()).rev() {
        if !verts.contains(&v) {
            let pos = present.iter().position(|&w| w == v).unwrap();
            y = a.face(&y, pos);
            present.remove(pos);
        }
    }
    y
}

/// The restriction of an `n`-simplex of `target` along the horn inclusion,
/// compared against the horn map; `true` when `x` fills the horn.
fn fills(target: &SSet, h: &HornInstance, horn_cplx: &SSet, x: &SimplexRef) -> bool {
    for dim in 0..=horn_cplx.max_dim() {
        for idx in 0..horn_cplx.nondeg_count(dim) {
            let r = SimplexRef::nondeg(dim, idx);
            let verts = simplex_vertex_sequence(horn_cplx, &r);
            let restricted = face_by_vertices(target, x, &verts);
            if restricted != h.horn_map.eval(&r) {
                return false;
            }
        }
    }
    true
}

/// Exhaustive filler search over the `n`-simplices of the target.
pub fn find_filler(target: &SSet, h: &HornInstance) -> Result<Option<SimplexRef>> {
    if target.max_dim() < h.n {
        return Err(Error::Precondition(format!(
            "target truncated below horn dimension {}",
            h.n
        )));
    }
    let hc = horn(h.n, h.i, h.n.saturating_sub(1).max(1))?;
    Ok(target
        .simplices(h.n)
        .into_iter()
        .find(|x| fills(target, h, &hc, x)))
}

/// A failed instance, reported by `is_kan` and `is_quasicategory`.
pub type HornWitness = HornInstance;

fn horn_search(
    x: &SSet,
    max_n: usize,
    inner_only: bool,
    budget: &mut Budget,
) -> Result<Option<HornWitness>> {
    let mut cache: HashMap<(usize, usize), SSet> = HashMap::new();
    for n in 1..=max_n {
        for i in 0..=n {
            if inner_only && (i == 0 || i == n) {
                continue;
            }
            let hc = cache
                .entry((n, i))
                .or_insert_with(|| horn(n, i, n.saturating_sub(1).max(1)).unwrap())
                .clone();
            let maps = enumerate_maps(&hc, x, &Constraints::new(), budget)?;
            for m in maps {
                let h = HornInstance { n, i, horn_map: m };
                budget.spend(x.simplex_count(n) as u64)?;
                if find_filler(x, &h)?.is_none() {
                    return Ok(Some(h));
                }
            }
        }
    }
    Ok(None)
}

/// `None` when every horn with `n <= max_n` has a filler.
pub fn is_kan(x: &SSet, max_n: usize, budget: &mut Budget) -> Result<Option<HornWitness>> {
    if max_n > x.max_dim() {
        return Err(Error::Precondition("max_n exceeds max dimension".into()));
    }
    horn_search(x, max_n, false, budget)
}

/// `None` when every inner horn with `n <= max_n` has a filler.
pub fn is_quasicategory(
    x: &SSet,
    max_n: usize,
    budget: &mut Budget,
) -> Result<Option<HornWitness>> {
    if max_n > x.max_dim() {
        return Err(Error::Precondition("max_n exceeds max dimension".into()));
    }
    horn_search(x, max_n, true, budget)
}

/// Outer-horn filler over a nerve: fillable whenever the extreme edge of
/// the horn is an invertible arrow.  Returns the invertibility verdict of
/// that edge together with the search result.
pub fn special_outer_horn_filler(
    c: &FinCat,
    nv: &Nerve,
    h: &HornInstance,
) -> Result<(bool, Option<SimplexRef>)> {
    if h.i != 0 && h.i != h.n {
        return Err(Error::Precondition("horn is not outer".into()));
    }
    let hc = horn(h.n, h.i, h.n.saturating_sub(1).max(1))?;
    // extreme edge: (0,1) for i = 0, (n-1, n) for i = n
    let (u, v) = if h.i == 0 { (0, 1) } else { (h.n - 1, h.n) };
    let edge = if h.n == 1 {
        // a 1-horn carries no edge; treat as invertible (identity filler path)
        None
    } else {
        let idx = hc
            .find(1, &format!("{u}{v}"))
            .ok_or_else(|| Error::Invalid("horn misses its extreme edge".into()))?;
        Some(h.horn_map.eval(&SimplexRef::nondeg(1, idx)))
    };
    let invertible = match edge {
        None => true,
        Some(e) if e.is_degenerate() => true,
        Some(e) => {
            let a = nv.chains[1][e.base_idx][0];
            c.inverse(a).is_some()
        }
    };
    let filler = find_filler(&nv.sset, h)?;
    Ok((invertible, filler))
}

/// Searches for an unfillable `(n,0)`-horn with the given arrow in position
/// `(0,1)`, for `2 <= n <= bound`; finding one certifies that the arrow is
/// not invertible.
pub fn noninvertibility_witness(
    c: &FinCat,
    nv: &Nerve,
    f: usize,
    bound: usize,
    budget: &mut Budget,
) -> Result<Option<HornInstance>> {
    for n in 2..=bound.min(nv.sset.max_dim()) {
        let hc = horn(n, 0, n - 1)?;
        let mut cons = Constraints::new();
        let e01 = hc.find(1, "01").unwrap();
        cons.insert((1, e01), nv.edge_of_arrow(c, f));
        let maps = enumerate_maps(&hc, &nv.sset, &cons, budget)?;
        for m in maps {
            let h = HornInstance { n, i: 0, horn_map: m };
            budget.spend(nv.sset.simplex_count(n) as u64)?;
            if find_filler(&nv.sset, &h)?.is_none() {
                return Ok(Some(h));
            }
        }
    }
    Ok(None)
}

/// A 2-simplex whose faces are `(d_0, d_1, d_2) = (e12, e02, e01)`, if any.
pub fn is_commuting_sphere(
    a: &SSet,
    faces: &[SimplexRef; 3],
) -> Result<Option<SimplexRef>> {
    if a.max_dim() < 2 {
        return Err(Error::Precondition("need max dimension at least 2".into()));
    }
    // the sphere must close up: shared vertices of the three edges
    for e in faces {
        if e.dim() != 1 {
            return Err(Error::Precondition("sphere faces must be edges".into()));
        }
    }
    let [e12, e02, e01] = faces;
    if edge_source(a, e01) != edge_source(a, e02)
        || edge_target(a, e01) != edge_source(a, e12)
        || edge_target(a, e12) != edge_target(a, e02)
    {
        return Err(Error::Precondition("edges do not form a sphere".into()));
    }
    Ok(a.simplices(2).into_iter().find(|b| {
        a.face(b, 0) == *e12 && a.face(b, 1) == *e02 && a.face(b, 2) == *e01
    }))
}

fn two_simplex_with(a: &SSet, d2: &SimplexRef, d1: &SimplexRef, d0: &SimplexRef) -> bool {
    a.simplices(2)
        .into_iter()
        .any(|b| a.face(&b, 0) == *d0 && a.face(&b, 1) == *d1 && a.face(&b, 2) == *d2)
}

/// Left/right homotopy of parallel edges in a quasi-category.  The four
/// one-sided relations agree under the quasi-category hypothesis; all four
/// are computed and cross-checked.
pub fn homotopic_edges(
    a: &SSet,
    f: &SimplexRef,
    g: &SimplexRef,
    budget: &mut Budget,
) -> Result<bool> {
    if f.dim() != 1 || g.dim() != 1 {
        return Err(Error::Precondition("inputs must be edges".into()));
    }
    let x = edge_source(a, f);
    let y = edge_target(a, f);
    if edge_source(a, g) != x || edge_target(a, g) != y {
        return Err(Error::Precondition("edges are not parallel".into()));
    }
    if a.max_dim() < 3 {
        return Err(Error::Precondition("need max dimension at least 3".into()));
    }
    if is_quasicategory(a, 3, budget)?.is_some() {
        return Err(Error::Precondition("target is not a quasi-category".into()));
    }
    let idx = a.degeneracy(&x, 0);
    let idy = a.degeneracy(&y, 0);
    let r1 = two_simplex_with(a, &idx, g, f);
    let r2 = two_simplex_with(a, &idx, f, g);
    let r3 = two_simplex_with(a, f, g, &idy);
    let r4 = two_simplex_with(a, g, f, &idy);
    if !(r1 == r2 && r2 == r3 && r3 == r4) {
        return Err(Error::Invalid(format!(
            "one-sided homotopy relations disagree ({r1},{r2},{r3},{r4})"
        )));
    }
    Ok(r1)
}

/// The fundamental category of a quasi-category: vertices, homotopy classes
/// of edges, composition via inner-horn fillers.  Independence of the
/// filler choice is verified exhaustively.
pub fn ho_category(a: &SSet, budget: &mut Budget) -> Result<FinCat> {
    if a.max_dim() < 3 {
        return Err(Error::Precondition("need max dimension at least 3".into()));
    }
    if is_quasicategory(a, 3, budget)?.is_some() {
        return Err(Error::Precondition("target is not a quasi-category".into()));
    }
    let edges = a.simplices(1);
    // homotopy classes per hom-set
    let mut class_of: HashMap<SimplexRef, usize> = HashMap::new();
    let mut reps: Vec<SimplexRef> = Vec::new();
    for e in &edges {
        budget.spend(1)?;
        let mut found = None;
        for (ci, r) in reps.iter().enumerate() {
            if edge_source(a, r) == edge_source(a, e)
                && edge_target(a, r) == edge_target(a, e)
                && homotopic_edges(a, r, e, budget)?
            {
                found = Some(ci);
                break;
            }
        }
        let ci = match found {
            Some(ci) => ci,
            None => {
                reps.push(e.clone());
                reps.len() - 1
            }
        };
        class_of.insert(e.clone(), ci);
    }
    let objects: Vec<String> =
        (0..a.nondeg_count(0)).map(|v| a.label(0, v).to_string()).collect();
    let arrows: Vec<Arrow> = reps
        .iter()
        .map(|r| Arrow {
            name: format!("[{}]", a.display(r)),
            dom: edge_source(a, r).base_idx,
            cod: edge_target(a, r).base_idx,
        })
        .collect();
    let identity: Vec<usize> = (0..objects.len())
        .map(|v| class_of[&a.degeneracy(&SimplexRef::nondeg(0, v), 0)])
        .collect();
    // composition: all fillers of all representative pairs must land in one
    // class
    let two = a.simplices(2);
    let mut comp: HashMap<(usize, usize), usize> = HashMap::new();
    for (gi, g) in reps.iter().enumerate() {
        for (fi, f) in reps.iter().enumerate() {
            if edge_target(a, f) != edge_source(a, g) {
                continue;
            }
            let mut composite: Option<usize> = None;
            for (fe, ge) in edges.iter().flat_map(|fe| edges.iter().map(move |ge| (fe, ge)))
            {
                if class_of[fe] != fi || class_of[ge] != gi {
                    continue;
                }
                for b in &two {
                    budget.spend(1)?;
                    if a.face(b, 2) == *fe && a.face(b, 0) == *ge {
                        let h = class_of[&a.face(b, 1)];
                        match composite {
                            None => composite = Some(h),
                            Some(h0) if h0 != h => {
                                return Err(Error::Invalid(
                                    "filler choice changes the composite class".into(),
                                ))
                            }
                            _ => {}
                        }
                    }
                }
            }
            let h = composite.ok_or_else(|| {
                Error::Invalid("no inner-horn filler for a composable pair".into())
            })?;
            comp.insert((gi, fi), h);
        }
    }
    let c = FinCat { name: "ho".into(), objects, arrows, identity, comp };
    c.validate()?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat;
    use crate::nerve::nerve;
    use crate::simplicial::{boundary, standard_simplex};

    fn horn_instance_in_nerve(
        c: &FinCat,
        nv: &Nerve,
        n: usize,
        i: usize,
        edges: &[(usize, usize, SimplexRef)],
    ) -> HornInstance {
        // build the horn map from required edge images by constrained search
        let hc = horn(n, i, n.saturating_sub(1).max(1)).unwrap();
        let mut cons = Constraints::new();
        for (u, v, e) in edges {
            let idx = hc.find(1, &format!("{u}{v}")).unwrap();
            cons.insert((1, idx), e.clone());
        }
        let maps = enumerate_maps(&hc, &nv.sset, &cons, &mut Budget::default()).unwrap();
        assert!(!maps.is_empty(), "no horn map with those edges in {}", c.name);
        HornInstance { n, i, horn_map: maps.into_iter().next().unwrap() }
    }

    #[test]
    fn horn_into_point_fills_degenerately() {
        let pt = standard_simplex(0, 3);
        for (n, i) in [(1, 0), (2, 0), (2, 1), (2, 2), (3, 1)] {
            let hc = horn(n, i, n.saturating_sub(1).max(1)).unwrap();
            let m = enumerate_maps(&hc, &pt, &Constraints::new(), &mut Budget::default())
                .unwrap()
                .remove(0);
            let h = HornInstance { n, i, horn_map: m };
            let filler = find_filler(&pt, &h).unwrap().unwrap();
            assert!(filler.is_degenerate());
        }
    }

    #[test]
    fn outer_horn_in_nerve_of_arrow_has_no_filler() {
        let c = fincat::ordinal(1);
        let nv = nerve(&c, 3);
        let f = c.find_arrow("0<1").unwrap();
        let v0 = SimplexRef::nondeg(0, 0);
        let id0 = nv.sset.degeneracy(&v0, 0);
        // (2,0)-horn: d_1 = degenerate edge at 0, d_2 = the arrow
        let h = horn_instance_in_nerve(
            &c,
            &nv,
            2,
            0,
            &[(0, 1, nv.edge_of_arrow(&c, f)), (0, 2, id0)],
        );
        assert!(find_filler(&nv.sset, &h).unwrap().is_none());
    }

    #[test]
    fn inner_horn_in_nerve_fills_with_composite() {
        let c = fincat::ordinal(2);
        let nv = nerve(&c, 3);
        let f = c.find_arrow("0<1").unwrap();
        let g = c.find_arrow("1<2").unwrap();
        let h = horn_instance_in_nerve(
            &c,
            &nv,
            2,
            1,
            &[(0, 1, nv.edge_of_arrow(&c, f)), (1, 2, nv.edge_of_arrow(&c, g))],
        );
        let filler = find_filler(&nv.sset, &h).unwrap().unwrap();
        let gf = c.compose(g, f);
        assert_eq!(nv.sset.face(&filler, 1), nv.edge_of_arrow(&c, gf));
    }

    #[test]
    fn kan_iff_groupoid_on_small_instances() {
        let mut b = Budget::new(50_000_000);
        let g = nerve(&fincat::cyclic_group(2), 3);
        assert!(is_kan(&g.sset, 3, &mut b).unwrap().is_none());
        let o = nerve(&fincat::ordinal(1), 3);
        let w = is_kan(&o.sset, 2, &mut b).unwrap().unwrap();
        assert!(w.i == 0 || w.i == w.n);
    }

    #[test]
    fn point_is_kan() {
        let pt = standard_simplex(0, 3);
        assert!(is_kan(&pt, 3, &mut Budget::default()).unwrap().is_none());
    }

    #[test]
    fn nerves_are_quasicategories() {
        let mut b = Budget::new(100_000_000);
        for c in [fincat::ordinal(2), fincat::parallel_pair(), fincat::idempotent_monoid()] {
            let nv = nerve(&c, 3);
            assert!(
                is_quasicategory(&nv.sset, 3, &mut b).unwrap().is_none(),
                "nerve of {} not quasi",
                c.name
            );
        }
    }

    #[test]
    fn boundary_two_fails_inner_horn() {
        let b = boundary(2, 2);
        let w = is_quasicategory(&b, 2, &mut Budget::default()).unwrap().unwrap();
        assert_eq!((w.n, w.i), (2, 1));
    }

    #[test]
    fn horn_itself_fails_its_own_identity_instance() {
        // the identity map of the horn is an inner horn instance with no
        // filler, so the spine of two edges is not weakly Kan
        let h = horn(2, 1, 2).unwrap();
        let w = is_quasicategory(&h, 2, &mut Budget::default()).unwrap().unwrap();
        assert_eq!((w.n, w.i), (2, 1));
        // up to dimension 1 there is nothing to fill
        assert!(is_quasicategory(&h, 1, &mut Budget::default()).unwrap().is_none());
    }

    #[test]
    fn special_outer_horn_on_free_iso() {
        let c = fincat::free_iso();
        let nv = nerve(&c, 3);
        let u = c.find_arrow("u").unwrap();
        let v = c.find_arrow("v").unwrap();
        // (2,0)-horn with the iso u in position (0,1), d_2 edge = u, and
        // (0,2) edge = anything consistent; pick (0,2) = id-free choice
        let h = horn_instance_in_nerve(
            &c,
            &nv,
            2,
            0,
            &[(0, 1, nv.edge_of_arrow(&c, u)), (0, 2, nv.edge_of_arrow(&c, u))],
        );
        let (inv, filler) = special_outer_horn_filler(&c, &nv, &h).unwrap();
        assert!(inv);
        assert!(filler.is_some());
        assert!(c.inverse(v).is_some());
    }

    #[test]
    fn degenerate_extreme_edge_always_fillable() {
        let c = fincat::ordinal(1);
        let nv = nerve(&c, 3);
        let f = c.find_arrow("0<1").unwrap();
        let id0 = nv.sset.degeneracy(&SimplexRef::nondeg(0, 0), 0);
        let h = horn_instance_in_nerve(
            &c,
            &nv,
            2,
            0,
            &[(0, 1, id0), (0, 2, nv.edge_of_arrow(&c, f))],
        );
        let (inv, filler) = special_outer_horn_filler(&c, &nv, &h).unwrap();
        assert!(inv);
        assert!(filler.is_some());
    }

    #[test]
    fn noninvertible_arrow_has_unfillable_outer_horn() {
        let c = fincat::ordinal(1);
        let nv = nerve(&c, 3);
        let f = c.find_arrow("0<1").unwrap();
        let w = noninvertibility_witness(&c, &nv, f, 3, &mut Budget::default()).unwrap();
        assert!(w.is_some());
        // and no such witness for an invertible arrow
        let ci = fincat::free_iso();
        let nvi = nerve(&ci, 3);
        let u = ci.find_arrow("u").unwrap();
        let mut b = Budget::new(50_000_000);
        assert!(noninvertibility_witness(&ci, &nvi, u, 2, &mut b).unwrap().is_none());
    }

    #[test]
    fn commuting_spheres_in_a_nerve() {
        let c = fincat::ordinal(2);
        let nv = nerve(&c, 3);
        let f = nv.edge_of_arrow(&c, c.find_arrow("0<1").unwrap());
        let g = nv.edge_of_arrow(&c, c.find_arrow("1<2").unwrap());
        let gf = nv.edge_of_arrow(&c, c.find_arrow("0<2").unwrap());
        assert!(is_commuting_sphere(&nv.sset, &[g.clone(), gf.clone(), f.clone()])
            .unwrap()
            .is_some());
        // identity sphere: witnessed by a degenerate simplex
        let idv = nv.sset.degeneracy(&SimplexRef::nondeg(0, 1), 0);
        let b = is_commuting_sphere(&nv.sset, &[g.clone(), g.clone(), idv])
            .unwrap()
            .unwrap();
        assert!(b.is_degenerate());
        // wrong composite: parallel pair has no commuting triangle a = b
        let pp = fincat::parallel_pair();
        let nvp = nerve(&pp, 3);
        let a1 = nvp.edge_of_arrow(&pp, pp.find_arrow("a").unwrap());
        let b1 = nvp.edge_of_arrow(&pp, pp.find_arrow("b").unwrap());
        let idx = nvp.sset.degeneracy(&SimplexRef::nondeg(0, 0), 0);
        assert!(is_commuting_sphere(&nvp.sset, &[a1, b1, idx]).unwrap().is_none());
    }

    #[test]
    fn homotopy_in_nerve_is_equality() {
        let pp = fincat::parallel_pair();
        let nv = nerve(&pp, 3);
        let a1 = nv.edge_of_arrow(&pp, pp.find_arrow("a").unwrap());
        let b1 = nv.edge_of_arrow(&pp, pp.find_arrow("b").unwrap());
        let mut bud = Budget::new(50_000_000);
        assert!(homotopic_edges(&nv.sset, &a1, &a1, &mut bud).unwrap());
        assert!(!homotopic_edges(&nv.sset, &a1, &b1, &mut bud).unwrap());
    }

    #[test]
    fn z2_loops_not_homotopic() {
        let z2 = fincat::cyclic_group(2);
        let nv = nerve(&z2, 3);
        let g = nv.edge_of_arrow(&z2, 1);
        let idl = nv.sset.degeneracy(&SimplexRef::nondeg(0, 0), 0);
        let mut bud = Budget::new(50_000_000);
        assert!(!homotopic_edges(&nv.sset, &g, &idl, &mut bud).unwrap());
    }

    #[test]
    fn ho_of_nerve_recovers_category() {
        for c in [fincat::ordinal(2), fincat::parallel_pair(), fincat::free_iso()] {
            let nv = nerve(&c, 3);
            let mut b = Budget::new(100_000_000);
            let h = ho_category(&nv.sset, &mut b).unwrap();
            assert!(fincat::cat_isomorphic(&c, &h).is_some(), "ho(nerve({}))", c.name);
        }
    }

    #[test]
    fn ho_of_point_is_terminal() {
        let pt = standard_simplex(0, 3);
        let h = ho_category(&pt, &mut Budget::default()).unwrap();
        assert_eq!(h.objects.len(), 1);
        assert_eq!(h.arrows.len(), 1);
    }

    #[test]
    fn ho_of_kan_complex_is_groupoid() {
        let nv = nerve(&fincat::cyclic_group(2), 3);
        let mut b = Budget::new(100_000_000);
        let h = ho_category(&nv.sset, &mut b).unwrap();
        assert!(h.is_groupoid());
    }
}
