//! Finite categories with explicit composition tables, plus the small
//! corpus of test categories used throughout.

use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite category.  Arrows are indices; `comp[(g, f)] = g∘f` is total on
/// composable pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    pub name: String,
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    /// identity arrow of each object
    pub identity: Vec<usize>,
    pub comp: HashMap<(usize, usize), usize>,
}

impl FinCat {
    pub fn is_identity(&self, a: usize) -> bool {
        self.identity[self.arrows[a].dom] == a
    }

    /// `g∘f`; panics if the pair is not composable.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        assert_eq!(self.arrows[f].cod, self.arrows[g].dom, "not composable");
        self.comp[&(g, f)]
    }

    pub fn arrows_between(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].dom == x && self.arrows[a].cod == y)
            .collect()
    }

    pub fn find_object(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn find_arrow(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Unit laws, associativity, and dom/cod closure of the table.
    pub fn validate(&self) -> Result<()> {
        let n = self.arrows.len();
        if self.identity.len() != self.objects.len() {
            return Err(Error::Invalid("identity table size mismatch".into()));
        }
        for (x, &i) in self.identity.iter().enumerate() {
            if self.arrows[i].dom != x || self.arrows[i].cod != x {
                return Err(Error::Invalid(format!(
                    "identity of {} has wrong endpoints",
                    self.objects[x]
                )));
            }
        }
        for g in 0..n {
            for f in 0..n {
                let composable = self.arrows[f].cod == self.arrows[g].dom;
                match self.comp.get(&(g, f)) {
                    Some(&h) if composable => {
                        if self.arrows[h].dom != self.arrows[f].dom
                            || self.arrows[h].cod != self.arrows[g].cod
                        {
                            return Err(Error::Invalid(format!(
                                "{}∘{} has wrong endpoints",
                                self.arrows[g].name, self.arrows[f].name
                            )));
                        }
                    }
                    Some(_) => {
                        return Err(Error::Invalid(format!(
                            "table defines non-composable {}∘{}",
                            self.arrows[g].name, self.arrows[f].name
                        )))
                    }
                    None if composable => {
                        return Err(Error::Invalid(format!(
                            "table misses {}∘{}",
                            self.arrows[g].name, self.arrows[f].name
                        )))
                    }
                    None => {}
                }
            }
        }
        for f in 0..n {
            let idc = self.identity[self.arrows[f].cod];
            let idd = self.identity[self.arrows[f].dom];
            if self.compose(idc, f) != f || self.compose(f, idd) != f {
                return Err(Error::Invalid(format!(
                    "unit law fails at {}",
                    self.arrows[f].name
                )));
            }
        }
        for h in 0..n {
            for g in 0..n {
                if self.arrows[g].cod != self.arrows[h].dom {
                    continue;
                }
                for f in 0..n {
                    if self.arrows[f].cod != self.arrows[g].dom {
                        continue;
                    }
                    if self.compose(self.compose(h, g), f)
                        != self.compose(h, self.compose(g, f))
                    {
                        return Err(Error::Invalid(format!(
                            "associativity fails at ({},{},{})",
                            self.arrows[h].name, self.arrows[g].name, self.arrows[f].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let a = &self.arrows[f];
        self.arrows_between(a.cod, a.dom).into_iter().find(|&g| {
            self.compose(g, f) == self.identity[a.dom]
                && self.compose(f, g) == self.identity[a.cod]
        })
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.arrows.len()).all(|f| self.inverse(f).is_some())
    }

    /// Non-identity endomorphism cycles make free resolutions infinite;
    /// direct categories (in the loose sense used here) avoid them.
    pub fn has_nonidentity_cycle(&self) -> bool {
        // cycle in the directed graph of non-identity arrows
        let n = self.objects.len();
        let mut adj = vec![Vec::new(); n];
        for a in 0..self.arrows.len() {
            if !self.is_identity(a) {
                adj[self.arrows[a].dom].push(self.arrows[a].cod);
            }
        }
        let mut state = vec![0u8; n]; // 0 unseen, 1 on stack, 2 done
        fn dfs(v: usize, adj: &[Vec<usize>], state: &mut [u8]) -> bool {
            state[v] = 1;
            for &w in &adj[v] {
                if state[w] == 1 || (state[w] == 0 && dfs(w, adj, state)) {
                    return true;
                }
            }
            state[v] = 2;
            false
        }
        (0..n).any(|v| state[v] == 0 && dfs(v, &adj, &mut state))
    }
}

/// A functor between finite categories, stored by its object and arrow maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatFunctor {
    pub object_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

impl CatFunctor {
    pub fn identity(c: &FinCat) -> CatFunctor {
        CatFunctor {
            object_map: (0..c.objects.len()).collect(),
            arrow_map: (0..c.arrows.len()).collect(),
        }
    }

    pub fn validate(&self, src: &FinCat, dst: &FinCat) -> Result<()> {
        if self.object_map.len() != src.objects.len()
            || self.arrow_map.len() != src.arrows.len()
        {
            return Err(Error::Invalid("functor table size mismatch".into()));
        }
        for (a, &fa) in self.arrow_map.iter().enumerate() {
            if dst.arrows[fa].dom != self.object_map[src.arrows[a].dom]
                || dst.arrows[fa].cod != self.object_map[src.arrows[a].cod]
            {
                return Err(Error::Invalid(format!(
                    "functor breaks endpoints of {}",
                    src.arrows[a].name
                )));
            }
        }
        for (x, &i) in src.identity.iter().enumerate() {
            if self.arrow_map[i] != dst.identity[self.object_map[x]] {
                return Err(Error::Invalid(format!(
                    "functor breaks identity of {}",
                    src.objects[x]
                )));
            }
        }
        for g in 0..src.arrows.len() {
            for f in 0..src.arrows.len() {
                if src.arrows[f].cod != src.arrows[g].dom {
                    continue;
                }
                if self.arrow_map[src.compose(g, f)]
                    != dst.compose(self.arrow_map[g], self.arrow_map[f])
                {
                    return Err(Error::Invalid(format!(
                        "functor breaks {}∘{}",
                        src.arrows[g].name, src.arrows[f].name
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Searches for an isomorphism of categories by backtracking over object
/// and arrow bijections.
pub fn cat_isomorphic(a: &FinCat, b: &FinCat) -> Option<CatFunctor> {
    if a.objects.len() != b.objects.len() || a.arrows.len() != b.arrows.len() {
        return None;
    }
    let nobj = a.objects.len();
    let mut omap = vec![usize::MAX; nobj];
    let mut oused = vec![false; nobj];
    fn obj_search(
        pos: usize,
        a: &FinCat,
        b: &FinCat,
        omap: &mut Vec<usize>,
        oused: &mut Vec<bool>,
    ) -> Option<CatFunctor> {
        if pos == omap.len() {
            // object bijection fixed; match arrows hom-set by hom-set
            let mut amap = vec![usize::MAX; a.arrows.len()];
            let mut aused = vec![false; b.arrows.len()];
            for (x, &i) in a.identity.iter().enumerate() {
                amap[i] = b.identity[omap[x]];
                aused[b.identity[omap[x]]] = true;
            }
            let free: Vec<usize> =
                (0..a.arrows.len()).filter(|&f| !a.is_identity(f)).collect();
            return arrow_search(0, &free, a, b, omap, &mut amap, &mut aused);
        }
        for w in 0..omap.len() {
            if oused[w] {
                continue;
            }
            omap[pos] = w;
            oused[w] = true;
            if let Some(f) = obj_search(pos + 1, a, b, omap, oused) {
                return Some(f);
            }
            omap[pos] = usize::MAX;
            oused[w] = false;
        }
        None
    }
    fn arrow_search(
        pos: usize,
        free: &[usize],
        a: &FinCat,
        b: &FinCat,
        omap: &[usize],
        amap: &mut Vec<usize>,
        aused: &mut Vec<bool>,
    ) -> Option<CatFunctor> {
        if pos == free.len() {
            let f = CatFunctor { object_map: omap.to_vec(), arrow_map: amap.clone() };
            return if f.validate(a, b).is_ok() { Some(f) } else { None };
        }
        let src = free[pos];
        let (d, c) = (a.arrows[src].dom, a.arrows[src].cod);
        for cand in b.arrows_between(omap[d], omap[c]) {
            if aused[cand] || b.is_identity(cand) {
                continue;
            }
            // partial composition consistency
            let ok = (0..a.arrows.len()).all(|g| {
                if amap[g] == usize::MAX {
                    return true;
                }
                let mut ok = true;
                if a.arrows[src].cod == a.arrows[g].dom {
                    let h = a.compose(g, src);
                    if amap[h] != usize::MAX {
                        ok &= b.compose(amap[g], cand) == amap[h];
                    }
                }
                if a.arrows[g].cod == a.arrows[src].dom {
                    let h = a.compose(src, g);
                    if amap[h] != usize::MAX {
                        ok &= b.compose(cand, amap[g]) == amap[h];
                    }
                }
                ok
            });
            if !ok {
                continue;
            }
            amap[src] = cand;
            aused[cand] = true;
            if let Some(f) = arrow_search(pos + 1, free, a, b, omap, amap, aused) {
                return Some(f);
            }
            amap[src] = usize::MAX;
            aused[cand] = false;
        }
        None
    }
    obj_search(0, a, b, &mut omap, &mut oused)
}

/// Builds a category from generators by saturating the composition table;
/// `relations` maps formal composites "g∘f" to their values.
pub struct FinCatBuilder {
    name: String,
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identity: Vec<usize>,
    comp: HashMap<(usize, usize), usize>,
}

impl FinCatBuilder {
    pub fn new(name: impl Into<String>, objects: &[&str]) -> Self {
        let objects: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
        let mut arrows = Vec::new();
        let mut identity = Vec::new();
        for (i, o) in objects.iter().enumerate() {
            arrows.push(Arrow { name: format!("id_{o}"), dom: i, cod: i });
            identity.push(i);
        }
        FinCatBuilder { name: name.into(), objects, arrows, identity, comp: HashMap::new() }
    }

    pub fn arrow(&mut self, name: &str, dom: &str, cod: &str) -> usize {
        let dom = self.objects.iter().position(|o| o == dom).unwrap();
        let cod = self.objects.iter().position(|o| o == cod).unwrap();
        self.arrows.push(Arrow { name: name.to_string(), dom, cod });
        self.arrows.len() - 1
    }

    pub fn set_comp(&mut self, g: &str, f: &str, gf: &str) {
        let g = self.arrows.iter().position(|a| a.name == g).unwrap();
        let f = self.arrows.iter().position(|a| a.name == f).unwrap();
        let gf = self.arrows.iter().position(|a| a.name == gf).unwrap();
        self.comp.insert((g, f), gf);
    }

    /// Fills in unit composites and validates.
    pub fn build(mut self) -> Result<FinCat> {
        let n = self.arrows.len();
        for f in 0..n {
            let idc = self.identity[self.arrows[f].cod];
            let idd = self.identity[self.arrows[f].dom];
            self.comp.entry((idc, f)).or_insert(f);
            self.comp.entry((f, idd)).or_insert(f);
        }
        let c = FinCat {
            name: self.name,
            objects: self.objects,
            arrows: self.arrows,
            identity: self.identity,
            comp: self.comp,
        };
        c.validate()?;
        Ok(c)
    }
}

/// The poset category of the ordinal `{0 < ... < n}`: one arrow `i -> j`
/// for each `i <= j`.
pub fn ordinal(n: usize) -> FinCat {
    let objects: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    poset(
        &format!("ordinal_{n}"),
        &objects.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
        |i, j| i <= j,
    )
}

/// A poset category from a reflexive-transitive `leq` on the given elements.
pub fn poset(name: &str, elems: &[&str], leq: impl Fn(usize, usize) -> bool) -> FinCat {
    let objects: Vec<String> = elems.iter().map(|s| s.to_string()).collect();
    let mut arrows = Vec::new();
    let mut identity = vec![0; objects.len()];
    let mut of = HashMap::new();
    for i in 0..objects.len() {
        for j in 0..objects.len() {
            if leq(i, j) {
                let name = if i == j {
                    format!("id_{}", objects[i])
                } else {
                    format!("{}<{}", objects[i], objects[j])
                };
                arrows.push(Arrow { name, dom: i, cod: j });
                of.insert((i, j), arrows.len() - 1);
                if i == j {
                    identity[i] = arrows.len() - 1;
                }
            }
        }
    }
    let mut comp = HashMap::new();
    for (&(i, j), &f) in of.iter() {
        for (&(j2, k), &g) in of.iter() {
            if j == j2 {
                comp.insert((g, f), of[&(i, k)]);
            }
        }
    }
    FinCat { name: name.to_string(), objects, arrows, identity, comp }
}

/// The discrete category on `n` objects.
pub fn discrete(n: usize) -> FinCat {
    let objects: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let arrows = objects
        .iter()
        .enumerate()
        .map(|(i, o)| Arrow { name: format!("id_{o}"), dom: i, cod: i })
        .collect();
    let identity = (0..n).collect();
    let mut comp = HashMap::new();
    for i in 0..n {
        comp.insert((i, i), i);
    }
    FinCat { name: format!("discrete_{n}"), objects, arrows, identity, comp }
}

/// The cyclic group of order `n` as a one-object groupoid.
pub fn cyclic_group(n: usize) -> FinCat {
    assert!(n >= 1);
    let objects = vec!["*".to_string()];
    let arrows = (0..n)
        .map(|k| Arrow {
            name: if k == 0 { "id_*".into() } else { format!("g{k}") },
            dom: 0,
            cod: 0,
        })
        .collect();
    let mut comp = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            comp.insert((a, b), (a + b) % n);
        }
    }
    FinCat { name: format!("z{n}"), objects, arrows, identity: vec![0], comp }
}

/// Two objects, two parallel non-identity arrows `a, b: x -> y`.
pub fn parallel_pair() -> FinCat {
    let mut b = FinCatBuilder::new("parallel_pair", &["x", "y"]);
    b.arrow("a", "x", "y");
    b.arrow("b", "x", "y");
    b.build().unwrap()
}

/// The free-living isomorphism: `x ≅ y`.
pub fn free_iso() -> FinCat {
    let mut b = FinCatBuilder::new("free_iso", &["x", "y"]);
    b.arrow("u", "x", "y");
    b.arrow("v", "y", "x");
    b.set_comp("v", "u", "id_x");
    b.set_comp("u", "v", "id_y");
    b.build().unwrap()
}

/// The pair (chaotic) groupoid on `n` objects: exactly one arrow between
/// any ordered pair.
pub fn pair_groupoid(n: usize) -> FinCat {
    let objects: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let names: Vec<&str> = objects.iter().map(|s| s.as_str()).collect();
    let mut c = poset(&format!("pair_groupoid_{n}"), &names, |_, _| true);
    c.name = format!("pair_groupoid_{n}");
    for a in c.arrows.iter_mut() {
        if a.dom != a.cod {
            a.name = format!("e{}{}", a.dom, a.cod);
        }
    }
    c
}

/// The two-element monoid `{1, e}` with `e·e = e`.
pub fn idempotent_monoid() -> FinCat {
    let mut b = FinCatBuilder::new("idempotent_monoid", &["*"]);
    b.arrow("e", "*", "*");
    b.set_comp("e", "e", "e");
    b.build().unwrap()
}

/// Walking retraction: `s: a -> b`, `r: b -> a`, `r∘s = id_a`.
pub fn walking_retraction() -> FinCat {
    let mut b = FinCatBuilder::new("walking_retraction", &["a", "b"]);
    b.arrow("s", "a", "b");
    b.arrow("r", "b", "a");
    b.arrow("e", "b", "b");
    b.set_comp("r", "s", "id_a");
    b.set_comp("s", "r", "e");
    b.set_comp("e", "s", "s");
    b.set_comp("r", "e", "r");
    b.set_comp("e", "e", "e");
    b.build().unwrap()
}

/// The commuting square: the poset `{0,1} × {0,1}`.
pub fn square_poset() -> FinCat {
    poset("square_poset", &["00", "01", "10", "11"], |i, j| {
        let (a, b) = (i / 2, i % 2);
        let (c, d) = (j / 2, j % 2);
        a <= c && b <= d
    })
}

/// Cospan `x -> z <- y`.
pub fn cospan() -> FinCat {
    let mut b = FinCatBuilder::new("cospan", &["x", "y", "z"]);
    b.arrow("f", "x", "z");
    b.arrow("g", "y", "z");
    b.build().unwrap()
}

/// Span `x <- w -> y`.
pub fn span() -> FinCat {
    let mut b = FinCatBuilder::new("span", &["w", "x", "y"]);
    b.arrow("f", "w", "x");
    b.arrow("g", "w", "y");
    b.build().unwrap()
}

/// The Klein four-group as a one-object groupoid.
pub fn klein_four() -> FinCat {
    let objects = vec!["*".to_string()];
    let names = ["id_*", "a", "b", "c"];
    let arrows = names
        .iter()
        .map(|n| Arrow { name: n.to_string(), dom: 0, cod: 0 })
        .collect();
    let mut comp = HashMap::new();
    for x in 0..4usize {
        for y in 0..4usize {
            comp.insert((x, y), x ^ y);
        }
    }
    FinCat { name: "klein_four".into(), objects, arrows, identity: vec![0], comp }
}

/// Disjoint union, renaming objects and arrows apart.
pub fn disjoint_union(name: &str, a: &FinCat, b: &FinCat) -> FinCat {
    let mut objects: Vec<String> = a.objects.iter().map(|o| format!("L{o}")).collect();
    objects.extend(b.objects.iter().map(|o| format!("R{o}")));
    let no = a.objects.len();
    let na = a.arrows.len();
    let mut arrows: Vec<Arrow> = a
        .arrows
        .iter()
        .map(|r| Arrow { name: format!("L{}", r.name), dom: r.dom, cod: r.cod })
        .collect();
    arrows.extend(b.arrows.iter().map(|r| Arrow {
        name: format!("R{}", r.name),
        dom: r.dom + no,
        cod: r.cod + no,
    }));
    let mut identity: Vec<usize> = a.identity.clone();
    identity.extend(b.identity.iter().map(|&i| i + na));
    let mut comp: HashMap<(usize, usize), usize> = a.comp.clone();
    for (&(g, f), &h) in b.comp.iter() {
        comp.insert((g + na, f + na), h + na);
    }
    FinCat { name: name.to_string(), objects, arrows, identity, comp }
}

/// The test corpus: at least twenty categories on at most five objects,
/// at least five of them groupoids.
pub fn corpus() -> Vec<FinCat> {
    let mut v = vec![
        ordinal(0),
        ordinal(1),
        ordinal(2),
        ordinal(3),
        discrete(2),
        discrete(3),
        parallel_pair(),
        free_iso(),
        cyclic_group(2),
        cyclic_group(3),
        cyclic_group(4),
        klein_four(),
        pair_groupoid(2),
        pair_groupoid(3),
        idempotent_monoid(),
        walking_retraction(),
        square_poset(),
        cospan(),
        span(),
        disjoint_union("arrow_plus_point", &ordinal(1), &ordinal(0)),
        disjoint_union("iso_plus_z2", &free_iso(), &cyclic_group(2)),
        poset("fence", &["a", "b", "c", "d"], |i, j| {
            i == j || (i, j) == (0, 1) || (i, j) == (2, 1) || (i, j) == (2, 3)
        }),
    ];
    for c in &v {
        c.validate().expect("corpus category invalid");
    }
    v.sort_by(|a, b| a.name.cmp(&b.name));
    v
}
