//! The comonadic resolution of a finite category: simplices are composable
//! strings of non-identity arrows with nested bracketings, faces remove a
//! bracket level (composing at the innermost), degeneracies duplicate one.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fincat::FinCat;
use crate::scat::{build_comp, SCat};
use crate::simplicial::{sset_from_tables, SSet, SimplexRef, Tabulated};

/// A bracketed composable string.  An `n`-simplex has `n` levels of `List`
/// above `Arrows`; every list below the top level is nonempty, every leaf
/// string is nonempty, and only the top of an endomorphism-free hom(x,x)
/// may be globally empty (the identity).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Arrows(Vec<usize>),
    List(Vec<Tree>),
}

impl Tree {
    pub fn is_empty_elem(&self) -> bool {
        match self {
            Tree::Arrows(v) => v.is_empty(),
            Tree::List(v) => v.is_empty(),
        }
    }
}

/// The arrow structure trees are built over; faces need composition and
/// identity detection only.
pub trait LeafCat {
    fn compose_arrows(&self, g: usize, f: usize) -> usize;
    fn is_identity_arrow(&self, a: usize) -> bool;
    fn arrow_name(&self, a: usize) -> String;
}

impl LeafCat for FinCat {
    fn compose_arrows(&self, g: usize, f: usize) -> usize {
        self.compose(g, f)
    }
    fn is_identity_arrow(&self, a: usize) -> bool {
        self.is_identity(a)
    }
    fn arrow_name(&self, a: usize) -> String {
        self.arrows[a].name.clone()
    }
}

/// Composite of a nonempty left-to-right string.
fn compose_string(cat: &impl LeafCat, s: &[usize]) -> usize {
    let mut acc = s[0];
    for &a in &s[1..] {
        acc = cat.compose_arrows(a, acc);
    }
    acc
}

/// `d_i`: removes bracket level `i` (0 = outermost).  Level `n` composes
/// leaf strings in the base, deleting identities that arise and cascading
/// the removal of lists emptied by it.
pub fn tree_face(cat: &impl LeafCat, t: &Tree, n: usize, i: usize) -> Tree {
    debug_assert!(n >= 1 && i <= n);
    if n == 1 && i == 1 {
        let Tree::List(children) = t else { unreachable!("depth-1 simplex is a list") };
        let arrows = children
            .iter()
            .map(|c| {
                let Tree::Arrows(s) = c else { unreachable!() };
                compose_string(cat, s)
            })
            .filter(|&a| !cat.is_identity_arrow(a))
            .collect();
        return Tree::Arrows(arrows);
    }
    let Tree::List(children) = t else { unreachable!("inner simplex is a list") };
    if i == 0 {
        if n == 1 {
            let mut v = Vec::new();
            for c in children {
                let Tree::Arrows(s) = c else { unreachable!() };
                v.extend_from_slice(s);
            }
            Tree::Arrows(v)
        } else {
            let mut v = Vec::new();
            for c in children {
                let Tree::List(l) = c else { unreachable!() };
                v.extend_from_slice(l);
            }
            Tree::List(v)
        }
    } else {
        let kids = children
            .iter()
            .map(|c| tree_face(cat, c, n - 1, i - 1))
            .filter(|c| !c.is_empty_elem())
            .collect();
        Tree::List(kids)
    }
}

/// `s_i`: duplicates bracket level `i` by wrapping each of its elements in
/// a singleton bracket.
pub fn tree_deg(t: &Tree, n: usize, i: usize) -> Tree {
    debug_assert!(i <= n);
    if i == 0 {
        match t {
            Tree::List(ch) => {
                Tree::List(ch.iter().map(|c| Tree::List(vec![c.clone()])).collect())
            }
            Tree::Arrows(s) => {
                Tree::List(s.iter().map(|&a| Tree::Arrows(vec![a])).collect())
            }
        }
    } else {
        let Tree::List(ch) = t else { unreachable!() };
        Tree::List(ch.iter().map(|c| tree_deg(c, n - 1, i - 1)).collect())
    }
}

pub fn tree_label(cat: &impl LeafCat, t: &Tree) -> String {
    match t {
        Tree::Arrows(s) if s.is_empty() => "()".into(),
        Tree::Arrows(s) => s
            .iter()
            .map(|&a| format!("({})", cat.arrow_name(a)))
            .collect(),
        Tree::List(ch) if ch.is_empty() => "()".into(),
        Tree::List(ch) => ch
            .iter()
            .map(|c| format!("[{}]", tree_label(cat, c)))
            .collect(),
    }
}

/// All non-identity composable paths `x -> y` (the empty path only when
/// `x = y`).
fn paths(c: &FinCat, x: usize, y: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(x, Vec::new())];
    while let Some((at, p)) = stack.pop() {
        if at == y {
            out.push(p.clone());
        }
        for a in 0..c.arrows.len() {
            if !c.is_identity(a) && c.arrows[a].dom == at {
                let mut q = p.clone();
                q.push(a);
                stack.push((c.arrows[a].cod, q));
            }
        }
    }
    // acyclicity bounds the search; a cycle would have been rejected earlier
    out.sort();
    out
}

/// Builds the depth-`n` tree over a path from the cut depths: boundary `b`
/// separates leaf strings at levels whose index from the bottom is at most
/// `depth[b]`.
fn tree_from_cuts(arrows: &[usize], depths: &[usize], n: usize) -> Tree {
    fn build(arrows: &[usize], depths: &[usize], lo: usize, hi: usize, level: usize, n: usize) -> Tree {
        if level == n {
            return Tree::Arrows(arrows[lo..hi].to_vec());
        }
        // split [lo,hi) at boundaries b (between positions b-1 and b) with
        // depths[b-1] >= n - level
        let mut blocks = Vec::new();
        let mut start = lo;
        for b in lo + 1..hi {
            if depths[b - 1] >= n - level {
                blocks.push(build(arrows, depths, start, b, level + 1, n));
                start = b;
            }
        }
        blocks.push(build(arrows, depths, start, hi, level + 1, n));
        Tree::List(blocks)
    }
    if arrows.is_empty() {
        return if n == 0 { Tree::Arrows(Vec::new()) } else { Tree::List(Vec::new()) };
    }
    build(arrows, depths, 0, arrows.len(), 0, n)
}

/// All depth-`n` trees over the given path.
fn trees_over_path(arrows: &[usize], n: usize) -> Vec<Tree> {
    if arrows.is_empty() {
        return vec![tree_from_cuts(arrows, &[], n)];
    }
    let m = arrows.len();
    let mut out = Vec::new();
    let mut depths = vec![0usize; m.saturating_sub(1)];
    loop {
        out.push(tree_from_cuts(arrows, &depths, n));
        // increment mixed-radix over 0..=n
        let mut pos = 0;
        loop {
            if pos == depths.len() {
                out.sort();
                out.dedup();
                return out;
            }
            depths[pos] += 1;
            if depths[pos] <= n {
                break;
            }
            depths[pos] = 0;
            pos += 1;
        }
    }
}

/// The resolution as an SCat, with the tree tabulation kept per hom.
pub struct SRes {
    pub scat: SCat,
    pub tabs: Vec<Vec<Tabulated<Tree>>>,
    pub base: FinCat,
}

impl SRes {
    pub fn tree_of_ref(&self, x: usize, y: usize, r: &SimplexRef) -> Tree {
        let mut t = self.tabs[x][y].elems[r.base_dim][r.base_idx].clone();
        let mut depth = r.base_dim;
        for &w in r.word.iter().rev() {
            t = tree_deg(&t, depth, w);
            depth += 1;
        }
        t
    }

    pub fn ref_of_tree(&self, x: usize, y: usize, depth: usize, t: &Tree) -> SimplexRef {
        self.tabs[x][y].refs[&(depth, t.clone())].clone()
    }
}

pub fn s_resolution(a: &FinCat, max_dim: usize) -> Result<SRes> {
    if a.has_nonidentity_cycle() {
        return Err(Error::Infinite(format!(
            "{} has a non-identity endomorphism cycle, so its free resolution \
             has infinitely many strings",
            a.name
        )));
    }
    let n = a.objects.len();
    let mut tabs: Vec<Vec<Tabulated<Tree>>> = Vec::new();
    for x in 0..n {
        let mut row = Vec::new();
        for y in 0..n {
            let ps = paths(a, x, y);
            let sets: Vec<Vec<Tree>> = (0..=max_dim)
                .map(|k| {
                    let mut v: Vec<Tree> =
                        ps.iter().flat_map(|p| trees_over_path(p, k)).collect();
                    v.sort();
                    v.dedup();
                    v
                })
                .collect();
            let tab = sset_from_tables(
                max_dim,
                &sets,
                |k, t, i| tree_face(a, t, k, i),
                |k, t, i| tree_deg(t, k, i),
                |_, t| tree_label(a, t),
            )?;
            row.push(tab);
        }
        tabs.push(row);
    }
    let hom: Vec<Vec<SSet>> =
        tabs.iter().map(|row| row.iter().map(|t| t.sset.clone()).collect()).collect();
    // composition concatenates top levels; no identities arise
    let sres_tabs = &tabs;
    let comp = build_comp(&hom, |x, y, z, f, g| {
        let depth = f.dim();
        let tf = tree_of_ref_raw(&sres_tabs[x][y], f);
        let tg = tree_of_ref_raw(&sres_tabs[y][z], g);
        let merged = concat_trees(&tf, &tg);
        sres_tabs[x][z].refs[&(depth, merged)].clone()
    });
    let ids = (0..n)
        .map(|x| tabs[x][x].refs[&(0, Tree::Arrows(Vec::new()))].clone())
        .collect();
    let scat = SCat {
        name: format!("S({})", a.name),
        objects: a.objects.clone(),
        hom,
        comp,
        ids,
    };
    Ok(SRes { scat, tabs, base: a.clone() })
}

fn tree_of_ref_raw(tab: &Tabulated<Tree>, r: &SimplexRef) -> Tree {
    let mut t = tab.elems[r.base_dim][r.base_idx].clone();
    let mut depth = r.base_dim;
    for &w in r.word.iter().rev() {
        t = tree_deg(&t, depth, w);
        depth += 1;
    }
    t
}

fn concat_trees(f: &Tree, g: &Tree) -> Tree {
    match (f, g) {
        (Tree::Arrows(a), Tree::Arrows(b)) => {
            Tree::Arrows(a.iter().chain(b.iter()).copied().collect())
        }
        (Tree::List(a), Tree::List(b)) => {
            Tree::List(a.iter().chain(b.iter()).cloned().collect())
        }
        _ => unreachable!("parallel simplices have equal depth"),
    }
}

/// The level category of an SCat: arrows are the `n`-simplices of the homs.
pub struct LevelCat {
    pub n: usize,
    /// arrow -> (x, y, simplex)
    pub arrows: Vec<(usize, usize, SimplexRef)>,
    pub index: HashMap<(usize, usize, SimplexRef), usize>,
    comp: HashMap<(usize, usize), usize>,
    identity: Vec<usize>,
    labels: Vec<String>,
    dom: Vec<usize>,
    cod: Vec<usize>,
}

pub fn level_category(b: &SCat, n: usize) -> LevelCat {
    let nobj = b.objects.len();
    let mut arrows = Vec::new();
    let mut index = HashMap::new();
    let mut labels = Vec::new();
    let mut dom = Vec::new();
    let mut cod = Vec::new();
    for x in 0..nobj {
        for y in 0..nobj {
            for r in b.hom[x][y].simplices(n) {
                index.insert((x, y, r.clone()), arrows.len());
                labels.push(b.hom[x][y].display(&r));
                arrows.push((x, y, r));
                dom.push(x);
                cod.push(y);
            }
        }
    }
    let identity: Vec<usize> = (0..nobj).map(|x| index[&(x, x, b.id_at(x, n))]).collect();
    let mut comp = HashMap::new();
    for (fi, (x, y, f)) in arrows.iter().enumerate() {
        for (gi, (y2, z, g)) in arrows.iter().enumerate() {
            if y == y2 {
                let h = b.compose(*x, *y, *z, f, g);
                comp.insert((gi, fi), index[&(*x, *z, h)]);
            }
        }
    }
    LevelCat { n, arrows, index, comp, identity, labels, dom, cod }
}

impl LeafCat for LevelCat {
    fn compose_arrows(&self, g: usize, f: usize) -> usize {
        self.comp[&(g, f)]
    }
    fn is_identity_arrow(&self, a: usize) -> bool {
        self.identity[self.dom[a]] == a
    }
    fn arrow_name(&self, a: usize) -> String {
        self.labels[a].clone()
    }
}

impl LevelCat {
    fn has_cycle(&self) -> bool {
        let nobj = self.identity.len();
        let mut adj = vec![Vec::new(); nobj];
        for a in 0..self.arrows.len() {
            if !self.is_identity_arrow(a) {
                adj[self.dom[a]].push(self.cod[a]);
            }
        }
        let mut state = vec![0u8; nobj];
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
        (0..nobj).any(|v| state[v] == 0 && dfs(v, &adj, &mut state))
    }

    fn paths(&self, x: usize, y: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(x, Vec::new())];
        while let Some((at, p)) = stack.pop() {
            if at == y {
                out.push(p.clone());
            }
            for a in 0..self.arrows.len() {
                if !self.is_identity_arrow(a) && self.dom[a] == at {
                    let mut q = p.clone();
                    q.push(a);
                    stack.push((self.cod[a], q));
                }
            }
        }
        out.sort();
        out
    }
}

/// Drops leaves that became identities and cascades the removal of lists
/// emptied by it; the top level may legitimately end up empty.
fn prune_identities(cat: &impl LeafCat, t: &Tree) -> Tree {
    match t {
        Tree::Arrows(s) => Tree::Arrows(
            s.iter().copied().filter(|&a| !cat.is_identity_arrow(a)).collect(),
        ),
        Tree::List(ch) => Tree::List(
            ch.iter()
                .map(|c| prune_identities(cat, c))
                .filter(|c| !c.is_empty_elem())
                .collect(),
        ),
    }
}

fn map_leaves(t: &Tree, f: &impl Fn(usize) -> usize) -> Tree {
    match t {
        Tree::Arrows(s) => Tree::Arrows(s.iter().map(|&a| f(a)).collect()),
        Tree::List(ch) => Tree::List(ch.iter().map(|c| map_leaves(c, f)).collect()),
    }
}

/// The diagonal of the levelwise resolution: `n`-simplices of hom(x,y) are
/// depth-`n` trees over the level-`n` category, faces act on the structure
/// and on the leaves simultaneously.
pub fn diag_resolution(b: &SCat, max_dim: usize) -> Result<SCat> {
    let nobj = b.objects.len();
    let levels: Vec<LevelCat> = (0..=max_dim).map(|n| level_category(b, n)).collect();
    for l in &levels {
        if l.has_cycle() {
            return Err(Error::Infinite(format!(
                "level {} of {} has a non-identity cycle",
                l.n, b.name
            )));
        }
    }
    // leaf transport along hom faces and degeneracies
    let leaf_face = |n: usize, a: usize, i: usize| -> usize {
        let (x, y, r) = &levels[n].arrows[a];
        levels[n - 1].index[&(*x, *y, b.hom[*x][*y].face(r, i))]
    };
    let leaf_deg = |n: usize, a: usize, i: usize| -> usize {
        let (x, y, r) = &levels[n].arrows[a];
        levels[n + 1].index[&(*x, *y, b.hom[*x][*y].degeneracy(r, i))]
    };
    let mut tabs: Vec<Vec<Tabulated<Tree>>> = Vec::new();
    for x in 0..nobj {
        let mut row = Vec::new();
        for y in 0..nobj {
            let sets: Vec<Vec<Tree>> = (0..=max_dim)
                .map(|k| {
                    let mut v: Vec<Tree> = levels[k]
                        .paths(x, y)
                        .iter()
                        .flat_map(|p| trees_over_path(p, k))
                        .collect();
                    v.sort();
                    v.dedup();
                    v
                })
                .collect();
            let tab = sset_from_tables(
                max_dim,
                &sets,
                |k, t, i| {
                    let structural = tree_face(&levels[k], t, k, i);
                    let moved = map_leaves(&structural, &|a| leaf_face(k, a, i));
                    prune_identities(&levels[k - 1], &moved)
                },
                |k, t, i| {
                    let structural = tree_deg(t, k, i);
                    map_leaves(&structural, &|a| leaf_deg(k, a, i))
                },
                |k, t| tree_label(&levels[k], t),
            )?;
            row.push(tab);
        }
        tabs.push(row);
    }
    let hom: Vec<Vec<SSet>> =
        tabs.iter().map(|row| row.iter().map(|t| t.sset.clone()).collect()).collect();
    // degeneracy words of diagonal refs raise the depth and the level
    // together, so plain tree_deg does not apply
    let tree_of = |x: usize, y: usize, r: &SimplexRef| -> Tree {
        let mut t = tabs[x][y].elems[r.base_dim][r.base_idx].clone();
        let mut depth = r.base_dim;
        for &w in r.word.iter().rev() {
            let structural = tree_deg(&t, depth, w);
            t = map_leaves(&structural, &|a| leaf_deg(depth, a, w));
            depth += 1;
        }
        t
    };
    let comp = build_comp(&hom, |x, y, z, f, g| {
        let depth = f.dim();
        let merged = concat_trees(&tree_of(x, y, f), &tree_of(y, z, g));
        tabs[x][z].refs[&(depth, merged)].clone()
    });
    let ids = (0..nobj)
        .map(|x| tabs[x][x].refs[&(0, Tree::Arrows(Vec::new()))].clone())
        .collect();
    Ok(SCat {
        name: format!("diagS({})", b.name),
        objects: b.objects.clone(),
        hom,
        comp,
        ids,
    })
}
