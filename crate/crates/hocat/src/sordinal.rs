//! The cosimplicial S-categories S[n]: hom(i,j) is the (j-i-1)-cube, nerve
//! of the poset of subsets of the interior points, with composition the
//! coordinate-1 inclusions.  Includes the interchange square of S[4](0,4).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::scat::{build_comp, empty_sset, SCat, SFunctor};
use crate::simplicial::{sset_from_tables, SSet, SimplexRef, Tabulated};
use crate::smap::SMap;

/// A cube hom complex.  Vertices are bitmasks over `coords` (bit set =
/// split at that interior point); `k`-simplices are weakly increasing
/// chains of `k+1` masks in the subset order.
pub struct Cube {
    pub i: usize,
    pub j: usize,
    /// interior points `i+1 ..= j-1`
    pub coords: Vec<usize>,
    pub tab: Tabulated<Vec<u32>>,
}

/// The path through `i -> ... -> j` splitting exactly at the set bits.
pub fn path_label(i: usize, j: usize, coords: &[usize], mask: u32) -> String {
    if i == j {
        return format!("id{i}");
    }
    let mut pts = vec![i];
    for (p, &c) in coords.iter().enumerate() {
        if mask & (1 << p) != 0 {
            pts.push(c);
        }
    }
    pts.push(j);
    pts.windows(2).map(|w| format!("({}{})", w[0], w[1])).collect()
}

fn weakly_increasing_chains(r: usize, len: usize) -> Vec<Vec<u32>> {
    let full: u32 = (1u32 << r) - 1;
    fn go(prev: u32, full: u32, left: usize, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        // supersets of prev
        let missing = full & !prev;
        let mut add = missing;
        loop {
            let v = prev | add;
            acc.push(v);
            go(v, full, left - 1, acc, out);
            acc.pop();
            if add == 0 {
                break;
            }
            add = (add - 1) & missing;
        }
    }
    let mut out = Vec::new();
    for start in 0..=full {
        go(start, full, len - 1, &mut vec![start], &mut out);
    }
    out.sort();
    out.dedup();
    out
}

impl Cube {
    pub fn new(i: usize, j: usize, max_dim: usize) -> Cube {
        assert!(j >= i);
        let coords: Vec<usize> = (i + 1..j).collect();
        let r = coords.len();
        let sets: Vec<Vec<Vec<u32>>> = (0..=max_dim + 1)
            .map(|k| weakly_increasing_chains(r, k + 1))
            .collect();
        let tab = sset_from_tables(
            max_dim,
            &sets,
            |_, ch, fi| {
                let mut ch = ch.clone();
                ch.remove(fi);
                ch
            },
            |_, ch, di| {
                let mut ch = ch.clone();
                ch.insert(di, ch[di]);
                ch
            },
            |_, ch| {
                ch.iter()
                    .map(|&m| path_label(i, j, &(i + 1..j).collect::<Vec<_>>(), m))
                    .collect::<Vec<_>>()
                    .join("<")
            },
        )
        .expect("cube tables satisfy the identities");
        Cube { i, j, coords, tab }
    }

    pub fn sset(&self) -> &SSet {
        &self.tab.sset
    }

    /// Chain of vertex masks of an arbitrary simplex.
    pub fn chain_of_ref(&self, r: &SimplexRef) -> Vec<u32> {
        let mut ch = self.tab.elems[r.base_dim][r.base_idx].clone();
        for &w in r.word.iter().rev() {
            ch.insert(w, ch[w]);
        }
        ch
    }

    pub fn ref_of_chain(&self, ch: &[u32]) -> SimplexRef {
        self.tab.refs[&(ch.len() - 1, ch.to_vec())].clone()
    }

    /// Position of interior point `p` in the coordinate list.
    pub fn coord_pos(&self, p: usize) -> usize {
        self.coords.iter().position(|&c| c == p).unwrap()
    }
}

/// S[n] with the cube bookkeeping retained.
pub struct SOrdinal {
    pub n: usize,
    pub max_dim: usize,
    pub scat: SCat,
    /// cubes for `i <= j`
    pub cubes: HashMap<(usize, usize), Cube>,
}

pub fn s_ordinal(n: usize, max_dim: usize) -> SOrdinal {
    let mut cubes = HashMap::new();
    for i in 0..=n {
        for j in i..=n {
            cubes.insert((i, j), Cube::new(i, j, max_dim));
        }
    }
    let hom: Vec<Vec<SSet>> = (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| {
                    if j >= i {
                        cubes[&(i, j)].sset().clone()
                    } else {
                        empty_sset(max_dim)
                    }
                })
                .collect()
        })
        .collect();
    let comp = build_comp(&hom, |x, y, z, f, g| {
        compose_chains(&cubes, x, y, z, f, g)
    });
    let ids = (0..=n)
        .map(|i| cubes[&(i, i)].ref_of_chain(&[0]))
        .collect();
    let scat = SCat {
        name: format!("S[{n}]"),
        objects: (0..=n).map(|i| i.to_string()).collect(),
        hom,
        comp,
        ids,
    };
    SOrdinal { n, max_dim, scat, cubes }
}

/// Composition in S[n]: splice the chains with the middle point set to 1.
fn compose_chains(
    cubes: &HashMap<(usize, usize), Cube>,
    x: usize,
    y: usize,
    z: usize,
    f: &SimplexRef,
    g: &SimplexRef,
) -> SimplexRef {
    if x == y {
        return g.clone();
    }
    if y == z {
        return f.clone();
    }
    let ca = &cubes[&(x, y)];
    let cb = &cubes[&(y, z)];
    let cc = &cubes[&(x, z)];
    let chain_a = ca.chain_of_ref(f);
    let chain_b = cb.chain_of_ref(g);
    let pos_y = cc.coord_pos(y);
    let merged: Vec<u32> = chain_a
        .iter()
        .zip(chain_b.iter())
        .map(|(&a, &b)| a | (1 << pos_y) | (b << (pos_y + 1)))
        .collect();
    cc.ref_of_chain(&merged)
}

/// The S-functor S[m] -> S[n] induced by a monotone map of ordinals: each
/// target coordinate takes the max of its preimage coordinates, points
/// outside the image stay composed.
pub fn s_ordinal_map(f: &[usize], src: &SOrdinal, dst: &SOrdinal) -> SFunctor {
    assert_eq!(f.len(), src.n + 1);
    assert!(f.windows(2).all(|w| w[0] <= w[1]) && *f.last().unwrap() <= dst.n);
    let mut hom_maps = HashMap::new();
    for x in 0..=src.n {
        for y in 0..=src.n {
            let max_dim = src.scat.hom[x][y].max_dim();
            if y < x {
                hom_maps.insert((x, y), SMap::from_images(vec![Vec::new(); max_dim + 1]));
                continue;
            }
            let ca = &src.cubes[&(x, y)];
            let cb = &dst.cubes[&(f[x], f[y])];
            let transform = |mask: u32| -> u32 {
                let mut out = 0u32;
                for (p, &c) in ca.coords.iter().enumerate() {
                    if mask & (1 << p) != 0 {
                        let t = f[c];
                        if t > f[x] && t < f[y] {
                            out |= 1 << cb.coord_pos(t);
                        }
                    }
                }
                out
            };
            let images: Vec<Vec<SimplexRef>> = (0..=max_dim)
                .map(|dim| {
                    ca.sset()
                        .nondeg_refs(dim)
                        .map(|r| {
                            let ch: Vec<u32> =
                                ca.chain_of_ref(&r).iter().map(|&m| transform(m)).collect();
                            cb.ref_of_chain(&ch)
                        })
                        .collect()
                })
                .collect();
            hom_maps.insert((x, y), SMap::from_images(images));
        }
    }
    SFunctor { object_map: f.to_vec(), hom_maps }
}

/// The identified square faces of the 3-cube S[4](0,4).
pub struct InterchangeReport {
    /// per facet `(coord position, value)`: which boundary inclusion hits
    /// it, if any
    pub facets: Vec<((usize, u8), Option<usize>)>,
    /// corner vertex labels of the remaining facet, by increasing mask
    pub square_corners: Vec<String>,
}

pub fn interchange_square() -> Result<InterchangeReport> {
    let s4 = s_ordinal(4, 1);
    let s3 = s_ordinal(3, 1);
    let cube = &s4.cubes[&(0, 4)];
    // vertex sets of boundary images in hom(0,4)
    let mut boundary_sets: Vec<(usize, Vec<u32>)> = Vec::new();
    for i in 0..=4usize {
        let delta: Vec<usize> = (0..=4).filter(|&v| v != i).collect();
        let sf = s_ordinal_map(&delta, &s3, &s4);
        let (a, b) = (delta[0], delta[3]);
        let src_cube = &s3.cubes[&(0, 3)];
        let img: Vec<SimplexRef> = src_cube
            .sset()
            .nondeg_refs(0)
            .map(|v| sf.hom_maps[&(0, 3)].eval(&v))
            .collect();
        // outer faces compose with the missing extreme edge
        let composed: Vec<u32> = img
            .iter()
            .map(|v| {
                let w = if i == 0 {
                    let e01 = s4.cubes[&(0, 1)].ref_of_chain(&[0]);
                    s4.scat.compose(0, 1, 4, &e01, v)
                } else if i == 4 {
                    let e34 = s4.cubes[&(3, 4)].ref_of_chain(&[0]);
                    s4.scat.compose(0, 3, 4, v, &e34)
                } else {
                    debug_assert_eq!((a, b), (0, 4));
                    v.clone()
                };
                cube.chain_of_ref(&w)[0]
            })
            .collect();
        let mut set = composed;
        set.sort();
        boundary_sets.push((i, set));
    }
    let mut facets = Vec::new();
    let mut remaining = Vec::new();
    for pos in 0..3usize {
        for val in 0..2u8 {
            let mut verts: Vec<u32> = (0..8u32)
                .filter(|m| ((m >> pos) & 1) as u8 == val)
                .collect();
            verts.sort();
            let hit = boundary_sets.iter().find(|(_, s)| *s == verts).map(|&(i, _)| i);
            facets.push(((pos, val), hit));
            if hit.is_none() {
                remaining.push(verts);
            }
        }
    }
    if remaining.len() != 1 {
        return Err(Error::Invalid(format!(
            "{} facets unmatched, expected exactly one",
            remaining.len()
        )));
    }
    let square_corners = remaining[0]
        .iter()
        .map(|&m| path_label(0, 4, &cube.coords, m))
        .collect();
    Ok(InterchangeReport { facets, square_corners })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Budget;
    use crate::simplicial::{product, standard_simplex, Product};
    use crate::smap::is_isomorphic;

    #[test]
    fn cube_counts() {
        let c0 = Cube::new(0, 1, 2);
        assert_eq!(c0.sset().nondeg_count(0), 1);
        assert_eq!(c0.sset().nondeg_count(1), 0);
        let c1 = Cube::new(0, 2, 2);
        assert_eq!(c1.sset().nondeg_count(0), 2);
        assert_eq!(c1.sset().nondeg_count(1), 1);
        let c2 = Cube::new(0, 3, 2);
        assert_eq!(c2.sset().nondeg_count(0), 4);
        assert_eq!(c2.sset().nondeg_count(1), 5);
        assert_eq!(c2.sset().nondeg_count(2), 2);
    }

    #[test]
    fn cube_is_product_of_intervals() {
        let c2 = Cube::new(0, 3, 2);
        let d1 = standard_simplex(1, 2);
        let sq = product(&d1, &d1);
        assert!(is_isomorphic(c2.sset(), &sq.sset, &mut Budget::default())
            .unwrap()
            .is_some());
        let c3 = Cube::new(0, 4, 2);
        let tri = Product::new(&[&d1, &d1, &d1]);
        assert!(is_isomorphic(c3.sset(), &tri.sset, &mut Budget::default())
            .unwrap()
            .is_some());
    }

    #[test]
    fn s2_hom_is_interval_with_stated_vertices() {
        let s2 = s_ordinal(2, 2);
        let h = &s2.scat.hom[0][2];
        assert_eq!(h.nondeg_count(0), 2);
        assert!(h.find(0, "(02)").is_some());
        assert!(h.find(0, "(01)(12)").is_some());
        assert_eq!(h.nondeg_count(1), 1);
        // the edge runs from the composite to the split path
        let e = SimplexRef::nondeg(1, 0);
        assert_eq!(h.display(&h.face(&e, 1)), "(02)");
        assert_eq!(h.display(&h.face(&e, 0)), "(01)(12)");
    }

    #[test]
    fn s3_golden_square() {
        let s3 = s_ordinal(3, 2);
        let h = &s3.scat.hom[0][3];
        let verts: Vec<&str> = vec!["(03)", "(02)(23)", "(01)(13)", "(01)(12)(23)"];
        for v in &verts {
            assert!(h.find(0, v).is_some(), "missing vertex {v}");
        }
        assert_eq!(h.nondeg_count(0), 4);
        assert_eq!(h.nondeg_count(1), 5);
        // the diagonal edge
        let diag: Vec<usize> = (0..5)
            .filter(|&e| {
                let r = SimplexRef::nondeg(1, e);
                h.display(&h.face(&r, 1)) == "(03)"
                    && h.display(&h.face(&r, 0)) == "(01)(12)(23)"
            })
            .collect();
        assert_eq!(diag.len(), 1);
    }

    #[test]
    fn degenerate_homs_are_points_or_empty() {
        let s3 = s_ordinal(3, 2);
        for i in 0..=3 {
            for j in 0..=3 {
                let h = &s3.scat.hom[i][j];
                if j < i {
                    assert_eq!(h.total_nondeg(), 0);
                } else if j == i || j == i + 1 {
                    assert_eq!(h.total_nondeg(), 1);
                }
            }
        }
    }

    #[test]
    fn s_ordinal_is_a_valid_scat() {
        for n in 0..=3 {
            s_ordinal(n, 2).scat.validate().unwrap();
        }
    }

    #[test]
    fn composition_is_the_coordinate_one_inclusion() {
        let s3 = s_ordinal(3, 2);
        let v02 = s3.cubes[&(0, 2)].ref_of_chain(&[0]); // (02)
        let v23 = s3.cubes[&(2, 3)].ref_of_chain(&[0]);
        let c = s3.scat.compose(0, 2, 3, &v02, &v23);
        assert_eq!(s3.scat.hom[0][3].display(&c), "(02)(23)");
        let split = s3.cubes[&(0, 2)].ref_of_chain(&[1]); // (01)(12)
        let c2 = s3.scat.compose(0, 2, 3, &split, &v23);
        assert_eq!(s3.scat.hom[0][3].display(&c2), "(01)(12)(23)");
    }

    #[test]
    fn cosimplicial_maps_are_sfunctors() {
        let s2 = s_ordinal(2, 2);
        let s3 = s_ordinal(3, 2);
        for i in 0..=3usize {
            let delta: Vec<usize> = (0..=3).filter(|&v| v != i).collect();
            let f = s_ordinal_map(&delta, &s2, &s3);
            f.validate(&s2.scat, &s3.scat)
                .unwrap_or_else(|e| panic!("delta^{i}: {e}"));
        }
        // a degeneracy too
        let f = s_ordinal_map(&[0, 1, 1], &s2, &s_ordinal(1, 2));
        f.validate(&s2.scat, &s_ordinal(1, 2).scat).unwrap();
    }

    #[test]
    fn cosimplicial_maps_compose_functorially() {
        // S[f] after S[g] equals S[f.g] on every hom simplex
        let s1 = s_ordinal(1, 2);
        let s2 = s_ordinal(2, 2);
        let s3 = s_ordinal(3, 2);
        let gs: Vec<Vec<usize>> = vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![1, 1]];
        let fs: Vec<Vec<usize>> = vec![vec![0, 1, 2], vec![0, 1, 3], vec![1, 2, 3], vec![0, 2, 2]];
        for g in &gs {
            for f in &fs {
                let sg = s_ordinal_map(g, &s1, &s2);
                let sf = s_ordinal_map(f, &s2, &s3);
                let fg: Vec<usize> = g.iter().map(|&v| f[v]).collect();
                let direct = s_ordinal_map(&fg, &s1, &s3);
                for x in 0..=1 {
                    for y in x..=1 {
                        for dim in 0..=2 {
                            for r in s1.scat.hom[x][y].nondeg_refs(dim) {
                                let step = sf.hom_maps[&(g[x], g[y])]
                                    .eval(&sg.hom_maps[&(x, y)].eval(&r));
                                assert_eq!(step, direct.hom_maps[&(x, y)].eval(&r));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn interchange_matches_display() {
        let rep = interchange_square().unwrap();
        let matched = rep.facets.iter().filter(|(_, h)| h.is_some()).count();
        assert_eq!(matched, 5);
        assert_eq!(
            rep.square_corners,
            vec!["(02)(24)", "(01)(12)(24)", "(02)(23)(34)", "(01)(12)(23)(34)"]
        );
    }

    #[test]
    fn s5_facet_counts() {
        // hom(0,5) of S[5] is a 4-cube: 8 facets, against the 6 faces of
        // the 5-simplex
        let c = Cube::new(0, 5, 1);
        assert_eq!(c.coords.len(), 4);
        assert_eq!(2 * c.coords.len(), 8);
        assert_eq!(5 + 1, 6);
    }
}
