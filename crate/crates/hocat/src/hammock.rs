//! Hammock localization: hammocks between two objects relative to a class
//! of weak equivalences, reduction rewriting, composition by
//! concatenation, truncated enumeration of the mapping complexes, and the
//! left-fractions normalization move.

use std::collections::BTreeSet;

use crate::error::{Budget, Error, Result};
use crate::fincat::FinCat;

/// A category with a distinguished subcategory of weak equivalences.
#[derive(Debug, Clone)]
pub struct LocPair {
    pub c: FinCat,
    pub w: BTreeSet<usize>,
}

impl LocPair {
    pub fn identities(c: &FinCat) -> LocPair {
        LocPair { c: c.clone(), w: c.identity.iter().copied().collect() }
    }

    pub fn isomorphisms(c: &FinCat) -> LocPair {
        let w = (0..c.arrows.len()).filter(|&a| c.inverse(a).is_some()).collect();
        LocPair { c: c.clone(), w }
    }

    pub fn validate(&self) -> Result<()> {
        for &id in &self.c.identity {
            if !self.w.contains(&id) {
                return Err(Error::Invalid(format!(
                    "identity {} missing from W",
                    self.c.arrows[id].name
                )));
            }
        }
        for &g in &self.w {
            for &f in &self.w {
                if self.c.arrows[f].cod == self.c.arrows[g].dom
                    && !self.w.contains(&self.c.compose(g, f))
                {
                    return Err(Error::Invalid(format!(
                        "W not closed: {}∘{}",
                        self.c.arrows[g].name, self.c.arrows[f].name
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Fwd,
    Bwd,
}

/// A hammock of width k and length n: k+1 parallel zigzags from x to y
/// joined by vertical weak equivalences.  `interior[j][i]` is the row-i
/// object between columns j and j+1; `horiz[j][i]` the row-i map of
/// column j (pointing left into column j when `dirs[j]` is `Bwd`);
/// `vert[j][i]` the map from row i to row i+1 at interior column j.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hammock {
    pub x: usize,
    pub y: usize,
    pub width: usize,
    pub dirs: Vec<Dir>,
    pub interior: Vec<Vec<usize>>,
    pub horiz: Vec<Vec<usize>>,
    pub vert: Vec<Vec<usize>>,
}

impl Hammock {
    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn identity(x: usize, width: usize) -> Hammock {
        Hammock {
            x,
            y: x,
            width,
            dirs: Vec::new(),
            interior: Vec::new(),
            horiz: Vec::new(),
            vert: Vec::new(),
        }
    }

    /// Object at row i, node position p (0 = x, len = y).
    pub fn node(&self, i: usize, p: usize) -> usize {
        if p == 0 {
            self.x
        } else if p == self.len() {
            self.y
        } else {
            self.interior[p - 1][i]
        }
    }

    /// Vertical map out of row i at node position p; identity at the
    /// shared endpoints.
    fn vertical(&self, c: &FinCat, i: usize, p: usize) -> usize {
        if p == 0 {
            c.identity[self.x]
        } else if p == self.len() {
            c.identity[self.y]
        } else {
            self.vert[p - 1][i]
        }
    }

    pub fn validate(&self, p: &LocPair) -> Result<()> {
        let n = self.len();
        let k = self.width;
        let c = &p.c;
        let shape = self.horiz.len() == n
            && self.interior.len() == n.saturating_sub(1)
            && self.vert.len() == n.saturating_sub(1)
            && self.horiz.iter().all(|col| col.len() == k + 1)
            && self.interior.iter().all(|col| col.len() == k + 1)
            && self.vert.iter().all(|col| col.len() == k);
        if !shape {
            return Err(Error::Invalid("hammock shape mismatch".into()));
        }
        if n == 0 && self.x != self.y {
            return Err(Error::Invalid("length-0 hammock needs equal endpoints".into()));
        }
        for j in 0..n {
            for i in 0..=k {
                let m = self.horiz[j][i];
                let (from, to) = match self.dirs[j] {
                    Dir::Fwd => (self.node(i, j), self.node(i, j + 1)),
                    Dir::Bwd => (self.node(i, j + 1), self.node(i, j)),
                };
                if c.arrows[m].dom != from || c.arrows[m].cod != to {
                    return Err(Error::Invalid(format!(
                        "column {j} row {i} endpoints wrong"
                    )));
                }
                if self.dirs[j] == Dir::Bwd && !p.w.contains(&m) {
                    return Err(Error::Invalid(format!(
                        "backward map {} not in W",
                        c.arrows[m].name
                    )));
                }
            }
            // squares between consecutive rows
            for i in 0..k {
                let pre = self.vertical(c, i, j);
                let post = self.vertical(c, i, j + 1);
                let (top, bot) = (self.horiz[j][i], self.horiz[j][i + 1]);
                let ok = match self.dirs[j] {
                    Dir::Fwd => c.compose(post, top) == c.compose(bot, pre),
                    Dir::Bwd => c.compose(pre, top) == c.compose(bot, post),
                };
                if !ok {
                    return Err(Error::Invalid(format!(
                        "square at column {j} rows {i},{} does not commute",
                        i + 1
                    )));
                }
            }
        }
        for col in &self.vert {
            for v in col {
                if !p.w.contains(v) {
                    return Err(Error::Invalid(format!(
                        "vertical {} not in W",
                        c.arrows[*v].name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_reduced(&self, c: &FinCat) -> bool {
        self.dirs.windows(2).all(|w| w[0] != w[1])
            && (0..self.len()).all(|j| !self.column_is_identities(c, j))
    }

    fn column_is_identities(&self, c: &FinCat, j: usize) -> bool {
        self.horiz[j].iter().all(|&m| c.is_identity(m))
    }

    pub fn display(&self, c: &FinCat) -> String {
        let mut rows = Vec::new();
        for i in 0..=self.width {
            let mut s = c.objects[self.x].clone();
            for j in 0..self.len() {
                let m = &c.arrows[self.horiz[j][i]].name;
                match self.dirs[j] {
                    Dir::Fwd => s.push_str(&format!(" -{m}-> ")),
                    Dir::Bwd => s.push_str(&format!(" <-{m}- ")),
                }
                s.push_str(&c.objects[self.node(i, j + 1)]);
            }
            rows.push(s);
        }
        rows.join(" // ")
    }
}

/// One rewrite at the leftmost applicable position: delete an identity
/// column, or compose an adjacent same-direction pair.  `None` when
/// reduced.
fn rewrite_step(p: &LocPair, h: &Hammock) -> Option<Hammock> {
    let c = &p.c;
    if let Some(j) = (0..h.len()).find(|&j| h.column_is_identities(c, j)) {
        return Some(delete_column(h, j));
    }
    if let Some(j) = (0..h.len().saturating_sub(1)).find(|&j| h.dirs[j] == h.dirs[j + 1]) {
        return Some(compose_columns(p, h, j));
    }
    None
}

fn delete_column(h: &Hammock, j: usize) -> Hammock {
    let mut out = h.clone();
    out.dirs.remove(j);
    out.horiz.remove(j);
    if !out.interior.is_empty() {
        // the identity column's two neighbouring interior columns agree;
        // keep one
        let drop = if j < out.interior.len() { j } else { j - 1 };
        out.interior.remove(drop);
        out.vert.remove(drop);
    }
    out
}

fn compose_columns(p: &LocPair, h: &Hammock, j: usize) -> Hammock {
    let c = &p.c;
    let mut out = h.clone();
    for i in 0..=h.width {
        let (a, b) = (h.horiz[j][i], h.horiz[j + 1][i]);
        out.horiz[j][i] = match h.dirs[j] {
            Dir::Fwd => c.compose(b, a),
            Dir::Bwd => {
                let m = c.compose(a, b);
                debug_assert!(p.w.contains(&m), "W not closed under composition");
                m
            }
        };
    }
    out.dirs.remove(j + 1);
    out.horiz.remove(j + 1);
    out.interior.remove(j);
    out.vert.remove(j);
    out
}

pub fn reduce_hammock(p: &LocPair, h: &Hammock) -> Hammock {
    let mut cur = h.clone();
    while let Some(next) = rewrite_step(p, &cur) {
        debug_assert!(next.len() < cur.len());
        cur = next;
    }
    cur
}

/// Every normal form reachable by any rewrite order (confluence oracle).
pub fn normal_forms_all_orders(p: &LocPair, h: &Hammock) -> BTreeSet<Hammock> {
    fn go(p: &LocPair, h: &Hammock, out: &mut BTreeSet<Hammock>) {
        let c = &p.c;
        let mut any = false;
        for j in 0..h.len() {
            if h.column_is_identities(c, j) {
                any = true;
                go(p, &delete_column(h, j), out);
            }
        }
        for j in 0..h.len().saturating_sub(1) {
            if h.dirs[j] == h.dirs[j + 1] {
                any = true;
                go(p, &compose_columns(p, h, j), out);
            }
        }
        if !any {
            out.insert(h.clone());
        }
    }
    let mut out = BTreeSet::new();
    go(p, h, &mut out);
    out
}

/// Concatenation without the final reduction.
pub fn concatenate_hammocks(p: &LocPair, h1: &Hammock, h2: &Hammock) -> Result<Hammock> {
    if h1.y != h2.x {
        return Err(Error::Precondition("hammock endpoints do not meet".into()));
    }
    if h1.width != h2.width {
        return Err(Error::Precondition("hammock widths differ".into()));
    }
    let k = h1.width;
    let mut h = Hammock {
        x: h1.x,
        y: h2.y,
        width: k,
        dirs: h1.dirs.iter().chain(h2.dirs.iter()).copied().collect(),
        interior: Vec::new(),
        horiz: h1.horiz.iter().chain(h2.horiz.iter()).cloned().collect(),
        vert: Vec::new(),
    };
    h.interior.extend(h1.interior.iter().cloned());
    h.vert.extend(h1.vert.iter().cloned());
    if !h1.is_empty() && !h2.is_empty() {
        // the middle node expands into a vertical line of identities
        h.interior.push(vec![h1.y; k + 1]);
        h.vert.push(vec![p.c.identity[h1.y]; k]);
    }
    h.interior.extend(h2.interior.iter().cloned());
    h.vert.extend(h2.vert.iter().cloned());
    Ok(h)
}

pub fn compose_hammocks(p: &LocPair, h1: &Hammock, h2: &Hammock) -> Result<Hammock> {
    Ok(reduce_hammock(p, &concatenate_hammocks(p, h1, h2)?))
}

/// Deletes row i, composing the verticals across it, then reduces.
pub fn hammock_face(p: &LocPair, h: &Hammock, i: usize) -> Result<Hammock> {
    if h.width == 0 || i > h.width {
        return Err(Error::Precondition(format!("no face {i} at width {}", h.width)));
    }
    let k = h.width;
    let mut out = h.clone();
    out.width = k - 1;
    for col in out.horiz.iter_mut() {
        col.remove(i);
    }
    for col in out.interior.iter_mut() {
        col.remove(i);
    }
    for col in out.vert.iter_mut() {
        if i == 0 {
            col.remove(0);
        } else if i == k {
            col.remove(k - 1);
        } else {
            let merged = p.c.compose(col[i], col[i - 1]);
            col[i - 1] = merged;
            col.remove(i);
        }
    }
    Ok(reduce_hammock(p, &out))
}

/// Duplicates row i with identity verticals in between.
pub fn hammock_degeneracy(p: &LocPair, h: &Hammock, i: usize) -> Result<Hammock> {
    if i > h.width {
        return Err(Error::Precondition(format!(
            "no degeneracy {i} at width {}",
            h.width
        )));
    }
    let mut out = h.clone();
    out.width = h.width + 1;
    for col in out.horiz.iter_mut() {
        let m = col[i];
        col.insert(i + 1, m);
    }
    for (j, col) in out.interior.iter_mut().enumerate() {
        let o = col[i];
        col.insert(i + 1, o);
        out.vert[j].insert(i, p.c.identity[o]);
    }
    Ok(out)
}

/// All reduced hammocks x -> y of the given width, any length up to
/// `max_len`, by column-by-column backtracking.
pub fn enumerate_hammocks(
    p: &LocPair,
    x: usize,
    y: usize,
    width: usize,
    max_len: usize,
    budget: &mut Budget,
) -> Result<Vec<Hammock>> {
    let mut out = Vec::new();
    if x == y {
        out.push(Hammock::identity(x, width));
    }
    for n in 1..=max_len {
        for start in [Dir::Fwd, Dir::Bwd] {
            let dirs: Vec<Dir> = (0..n)
                .map(|j| if j % 2 == 0 { start } else { flip(start) })
                .collect();
            let mut partial = Hammock {
                x,
                y,
                width,
                dirs,
                interior: Vec::new(),
                horiz: Vec::new(),
                vert: Vec::new(),
            };
            extend_columns(p, y, n, 1, &mut partial, &mut out, budget)?;
        }
    }
    Ok(out)
}

fn flip(d: Dir) -> Dir {
    match d {
        Dir::Fwd => Dir::Bwd,
        Dir::Bwd => Dir::Fwd,
    }
}

fn extend_columns(
    p: &LocPair,
    y: usize,
    n: usize,
    pos: usize,
    h: &mut Hammock,
    out: &mut Vec<Hammock>,
    budget: &mut Budget,
) -> Result<()> {
    if pos > n {
        if h.len() == n && !(0..n).any(|j| h.column_is_identities(&p.c, j)) {
            debug_assert!(h.validate(p).is_ok());
            out.push(h.clone());
        }
        return Ok(());
    }
    // choose the column row by row together with the new verticals
    fn rows(
        p: &LocPair,
        h: &mut Hammock,
        pos: usize,
        n: usize,
        y: usize,
        i: usize,
        maps: &mut Vec<usize>,
        objs: &mut Vec<usize>,
        verts: &mut Vec<usize>,
        out: &mut Vec<Hammock>,
        budget: &mut Budget,
    ) -> Result<()> {
        let c = &p.c;
        let k = h.width;
        let last = pos == n;
        let dir = h.dirs[pos - 1];
        if i > k {
            let col_maps = maps.clone();
            let col_objs = objs.clone();
            let col_verts = verts.clone();
            h.horiz.push(col_maps);
            if !last {
                h.interior.push(col_objs);
                h.vert.push(col_verts);
            }
            extend_columns(p, y, n, pos + 1, h, out, budget)?;
            h.horiz.pop();
            if !last {
                h.interior.pop();
                h.vert.pop();
            }
            return Ok(());
        }
        let prev = h.node(i, pos - 1);
        let candidates: Vec<usize> = match dir {
            Dir::Fwd => (0..c.arrows.len())
                .filter(|&m| c.arrows[m].dom == prev && (!last || c.arrows[m].cod == y))
                .collect(),
            Dir::Bwd => p
                .w
                .iter()
                .copied()
                .filter(|&m| c.arrows[m].cod == prev && (!last || c.arrows[m].dom == y))
                .collect(),
        };
        for m in candidates {
            budget.spend(1)?;
            let new_obj = match dir {
                Dir::Fwd => c.arrows[m].cod,
                Dir::Bwd => c.arrows[m].dom,
            };
            // square with the previous row
            if i > 0 {
                let pre = h.vertical(c, i - 1, pos - 1);
                let vert_candidates: Vec<usize> = if last {
                    vec![c.identity[y]]
                } else {
                    p.w
                        .iter()
                        .copied()
                        .filter(|&v| {
                            c.arrows[v].dom == objs[i - 1] && c.arrows[v].cod == new_obj
                        })
                        .collect()
                };
                let top = maps[i - 1];
                for v in vert_candidates {
                    budget.spend(1)?;
                    let ok = match dir {
                        Dir::Fwd => c.compose(v, top) == c.compose(m, pre),
                        Dir::Bwd => c.compose(pre, top) == c.compose(m, v),
                    };
                    if ok {
                        maps.push(m);
                        objs.push(new_obj);
                        verts.push(v);
                        rows(p, h, pos, n, y, i + 1, maps, objs, verts, out, budget)?;
                        maps.pop();
                        objs.pop();
                        verts.pop();
                    }
                }
            } else {
                maps.push(m);
                objs.push(new_obj);
                rows(p, h, pos, n, y, i + 1, maps, objs, verts, out, budget)?;
                maps.pop();
                objs.pop();
            }
        }
        Ok(())
    }
    rows(
        p,
        h,
        pos,
        n,
        y,
        0,
        &mut Vec::new(),
        &mut Vec::new(),
        &mut Vec::new(),
        out,
        budget,
    )
}

pub struct LeftFractionsReport {
    pub cond_i_failures: Vec<String>,
    pub cond_ii_failures: Vec<String>,
}

impl LeftFractionsReport {
    pub fn ok(&self) -> bool {
        self.cond_i_failures.is_empty() && self.cond_ii_failures.is_empty()
    }
}

/// Exhaustively checks the two left-fraction conditions.
pub fn check_left_fractions(p: &LocPair) -> LeftFractionsReport {
    let c = &p.c;
    let mut rep = LeftFractionsReport {
        cond_i_failures: Vec::new(),
        cond_ii_failures: Vec::new(),
    };
    for f in 0..c.arrows.len() {
        for &u in &p.w {
            if c.arrows[f].dom != c.arrows[u].dom {
                continue;
            }
            // (i): find  X' -f'-> Y' <-v- Y  with v in W and vf = f'u
            let found = (0..c.arrows.len()).any(|fp| {
                c.arrows[fp].dom == c.arrows[u].cod
                    && p.w.iter().any(|&v| {
                        c.arrows[v].dom == c.arrows[f].cod
                            && c.arrows[v].cod == c.arrows[fp].cod
                            && c.compose(v, f) == c.compose(fp, u)
                    })
            });
            if !found {
                rep.cond_i_failures.push(format!(
                    "no completion for f={}, u={}",
                    c.arrows[f].name, c.arrows[u].name
                ));
            }
        }
    }
    for f in 0..c.arrows.len() {
        for g in 0..c.arrows.len() {
            if f == g
                || c.arrows[f].dom != c.arrows[g].dom
                || c.arrows[f].cod != c.arrows[g].cod
            {
                continue;
            }
            for &u in &p.w {
                if c.arrows[u].cod != c.arrows[f].dom || c.compose(f, u) != c.compose(g, u)
                {
                    continue;
                }
                // (ii): need v in W with vf = vg
                let found = p.w.iter().any(|&v| {
                    c.arrows[v].dom == c.arrows[f].cod && c.compose(v, f) == c.compose(v, g)
                });
                if !found {
                    rep.cond_ii_failures.push(format!(
                        "no equalizing v for f={}, g={}, u={}",
                        c.arrows[f].name, c.arrows[g].name, c.arrows[u].name
                    ));
                }
            }
        }
    }
    rep
}

/// One left-bias move on a zigzag: the rightmost backward non-identity
/// column followed by a forward column is rewritten with rule (i),
/// returning the connecting width-1 hammock (row 0 is the input, row 1
/// the improved zigzag).  `None` when no move applies.
pub fn left_bias_step(p: &LocPair, h: &Hammock) -> Result<Option<Hammock>> {
    if h.width != 0 {
        return Err(Error::Precondition("left bias step needs a zigzag".into()));
    }
    let c = &p.c;
    let mut h = h.clone();
    // columns are 0-based: column q runs between node positions q and q+1
    let pos = (0..h.len().saturating_sub(1)).rev().find(|&j| {
        h.dirs[j] == Dir::Bwd
            && !c.is_identity(h.horiz[j][0])
            && h.dirs[j + 1] == Dir::Fwd
    });
    let Some(j) = pos else { return Ok(None) };
    if j + 2 == h.len() {
        // the move rewrites the node after the forward column, so make
        // the right endpoint interior first (append a backward identity)
        h.interior.push(vec![h.y; 1]);
        h.vert.push(Vec::new());
        h.dirs.push(Dir::Bwd);
        h.horiz.push(vec![c.identity[h.y]]);
    }
    let u = h.horiz[j][0];
    let f = h.horiz[j + 1][0];
    // rule (i) completion for the span  N_j <-u- N_{j+1} -f-> N_{j+2}
    let completion = (0..c.arrows.len()).find_map(|fp| {
        if c.arrows[fp].dom != c.arrows[u].cod {
            return None;
        }
        p.w.iter()
            .find(|&&v| {
                c.arrows[v].dom == c.arrows[f].cod
                    && c.arrows[v].cod == c.arrows[fp].cod
                    && c.compose(v, f) == c.compose(fp, u)
            })
            .map(|&v| (fp, v))
    });
    let Some((fp, v)) = completion else {
        return Err(Error::Precondition(
            "left fractions rule (i) has no completion here".into(),
        ));
    };
    // assemble the 1-simplex: row 0 the input, row 1 with node j+1
    // replaced by a copy of node j and node j+2 replaced by cod v
    let n = h.len();
    let mut interior: Vec<Vec<usize>> = Vec::new();
    let mut horiz: Vec<Vec<usize>> = Vec::new();
    let mut vert: Vec<Vec<usize>> = Vec::new();
    for q in 1..n {
        let (bottom, vq) = if q == j + 1 {
            (h.node(0, j), u)
        } else if q == j + 2 {
            (c.arrows[v].cod, v)
        } else {
            (h.node(0, q), c.identity[h.node(0, q)])
        };
        interior.push(vec![h.node(0, q), bottom]);
        vert.push(vec![vq]);
    }
    for q in 0..n {
        let top = h.horiz[q][0];
        let bot = if q == j {
            c.identity[h.node(0, j)]
        } else if q == j + 1 {
            fp
        } else if q == j + 2 {
            // backward column into the moved node composes with v
            c.compose(v, top)
        } else {
            top
        };
        horiz.push(vec![top, bot]);
    }
    let out = Hammock {
        x: h.x,
        y: h.y,
        width: 1,
        dirs: h.dirs.clone(),
        interior,
        horiz,
        vert,
    };
    out.validate(p)?;
    Ok(Some(out))
}
