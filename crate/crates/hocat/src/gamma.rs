//! Morphisms of the category of finite sets with partial covers: a map
//! from S to T assigns to each element of S a subset of T, pairwise
//! disjoint across elements.  Composition takes unions; the simplex
//! category maps in by the interval assignment.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A morphism S -> T: `images[a]` is the subset of `0..target` assigned
/// to element `a` of `0..source`.  Distinct elements get disjoint
/// subsets; elements of the target may be left uncovered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaMap {
    pub source: usize,
    pub target: usize,
    pub images: Vec<BTreeSet<usize>>,
}

impl GammaMap {
    pub fn new(source: usize, target: usize, images: Vec<BTreeSet<usize>>) -> Result<GammaMap> {
        let g = GammaMap { source, target, images };
        g.validate()?;
        Ok(g)
    }

    pub fn identity(n: usize) -> GammaMap {
        GammaMap {
            source: n,
            target: n,
            images: (0..n).map(|i| BTreeSet::from([i])).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.images.len() != self.source {
            return Err(Error::Invalid(format!(
                "{} image sets for a source of size {}",
                self.images.len(),
                self.source
            )));
        }
        let mut seen = BTreeSet::new();
        for (a, img) in self.images.iter().enumerate() {
            for &j in img {
                if j >= self.target {
                    return Err(Error::Invalid(format!(
                        "element {a} hits {j} outside the target of size {}",
                        self.target
                    )));
                }
                if !seen.insert(j) {
                    return Err(Error::Invalid(format!(
                        "images not disjoint at target element {j}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// psi(a) = union of t2 over t1(a).  Disjointness is inherited: the t1
/// images are disjoint and t2 keeps disjoint sets disjoint.
pub fn gamma_compose(t1: &GammaMap, t2: &GammaMap) -> Result<GammaMap> {
    if t1.target != t2.source {
        return Err(Error::Precondition(format!(
            "middle sets differ: {} vs {}",
            t1.target, t2.source
        )));
    }
    let images = t1
        .images
        .iter()
        .map(|img| img.iter().flat_map(|&b| t2.images[b].iter().copied()).collect())
        .collect();
    GammaMap::new(t1.source, t2.target, images)
}

/// The image of a monotone map f: [m] -> [n] (given by its m+1 values):
/// element i of the source set gets the interval (f(i-1), f(i)], read on
/// 1-based set elements.
pub fn delta_to_gamma(f: &[usize], n: usize) -> Result<GammaMap> {
    if f.is_empty() {
        return Err(Error::Precondition("empty value list".into()));
    }
    if f.windows(2).any(|w| w[0] > w[1]) || *f.last().unwrap() > n {
        return Err(Error::Precondition("map not monotone into [n]".into()));
    }
    let m = f.len() - 1;
    // 1-based elements j with f(i-1) < j <= f(i), stored 0-based
    let images = (1..=m)
        .map(|i| (f[i - 1] + 1..=f[i]).map(|j| j - 1).collect())
        .collect();
    GammaMap::new(m, n, images)
}

/// All monotone maps [m] -> [n] as value lists.
pub fn monotone_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn go(cur: &mut Vec<usize>, m: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for v in lo..=n {
            cur.push(v);
            go(cur, m, n, out);
            cur.pop();
        }
    }
    go(&mut cur, m, n, &mut out);
    out
}

/// All morphisms from a source of size m to a target of size n
/// (equivalently: functions from the target to the source plus a point).
pub fn all_gamma_maps(m: usize, n: usize) -> Vec<GammaMap> {
    let mut out = Vec::new();
    let mut owner = vec![0usize; n]; // 0 = uncovered, k = element k-1
    loop {
        let mut images = vec![BTreeSet::new(); m];
        for (j, &o) in owner.iter().enumerate() {
            if o > 0 {
                images[o - 1].insert(j);
            }
        }
        out.push(GammaMap { source: m, target: n, images });
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            owner[pos] += 1;
            if owner[pos] <= m {
                break;
            }
            owner[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gm(m: usize, n: usize, imgs: &[&[usize]]) -> GammaMap {
        GammaMap::new(m, n, imgs.iter().map(|s| s.iter().copied().collect()).collect())
            .unwrap()
    }

    #[test]
    fn disjointness_is_enforced() {
        assert!(GammaMap::new(
            2,
            2,
            vec![BTreeSet::from([0]), BTreeSet::from([0, 1])],
        )
        .is_err());
        assert!(GammaMap::new(1, 1, vec![BTreeSet::from([1])]).is_err());
    }

    #[test]
    fn composition_unfolds_unions() {
        // a |-> {1,2}, then 1 |-> {x}, 2 |-> {y} gives a |-> {x,y}
        let t1 = gm(1, 2, &[&[0, 1]]);
        let t2 = gm(2, 2, &[&[0], &[1]]);
        let c = gamma_compose(&t1, &t2).unwrap();
        assert_eq!(c, gm(1, 2, &[&[0, 1]]));
    }

    #[test]
    fn identity_is_neutral() {
        for g in all_gamma_maps(2, 3) {
            assert_eq!(gamma_compose(&GammaMap::identity(2), &g).unwrap(), g);
            assert_eq!(gamma_compose(&g, &GammaMap::identity(3)).unwrap(), g);
        }
    }

    #[test]
    fn composition_is_associative() {
        for a in all_gamma_maps(2, 2) {
            for b in all_gamma_maps(2, 3) {
                for c in all_gamma_maps(3, 2) {
                    let l = gamma_compose(&gamma_compose(&a, &b).unwrap(), &c).unwrap();
                    let r = gamma_compose(&a, &gamma_compose(&b, &c).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn delta_images_are_intervals() {
        let id = delta_to_gamma(&[0, 1, 2, 3], 3).unwrap();
        assert_eq!(id, GammaMap::identity(3));
        let constant = delta_to_gamma(&[0, 0, 0], 2).unwrap();
        assert!(constant.images.iter().all(|s| s.is_empty()));
        // d_1: [1] -> [2] skipping 1
        let d1 = delta_to_gamma(&[0, 2], 2).unwrap();
        assert_eq!(d1, gm(1, 2, &[&[0, 1]]));
        // s_0: [2] -> [1]
        let s0 = delta_to_gamma(&[0, 0, 1], 1).unwrap();
        assert_eq!(s0, gm(2, 1, &[&[], &[0]]));
        assert!(delta_to_gamma(&[1, 0], 2).is_err());
    }

    #[test]
    fn delta_embedding_is_functorial() {
        for m in 0..=5usize {
            for n in 0..=5usize {
                for k in 0..=5usize {
                    for f in monotone_maps(m, n) {
                        for g in monotone_maps(n, k) {
                            let gf: Vec<usize> = f.iter().map(|&i| g[i]).collect();
                            let lhs = delta_to_gamma(&gf, k).unwrap();
                            let rhs = gamma_compose(
                                &delta_to_gamma(&f, n).unwrap(),
                                &delta_to_gamma(&g, k).unwrap(),
                            )
                            .unwrap();
                            assert_eq!(lhs, rhs, "f={f:?} g={g:?}");
                        }
                    }
                }
            }
        }
    }
}
