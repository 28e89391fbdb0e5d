//! Finite simplicial sets in Eilenberg-Zilber normal form.
//!
//! Only nondegenerate simplices are stored; every simplex is addressed by a
//! [`SimplexRef`], a nondegenerate base together with a strictly decreasing
//! degeneracy word.  Face evaluation on degenerate simplices rewrites
//! `d_i s_j` words to normal form with the simplicial identities.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};

/// A simplex of dimension `base_dim + word.len()`: the degeneracy word
/// `s_{w_0} s_{w_1} ... s_{w_r}` (strictly decreasing) applied to the
/// nondegenerate simplex `(base_dim, base_idx)` of the owning [`SSet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub base_dim: usize,
    pub base_idx: usize,
    pub word: Vec<usize>,
}

impl SimplexRef {
    pub fn nondeg(dim: usize, idx: usize) -> Self {
        SimplexRef { base_dim: dim, base_idx: idx, word: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.base_dim + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// A degenerate simplex `s_W b` is in the image of `s_i` exactly when
    /// `i` occurs in its normal-form word.
    pub fn is_image_of(&self, i: usize) -> bool {
        self.word.contains(&i)
    }
}

/// Normal form of `s_i` applied on top of an existing degeneracy word,
/// using `s_i s_j = s_{j+1} s_i` for `i <= j`.
pub(crate) fn word_after_degeneracy(word: &[usize], i: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(word.len() + 1);
    let mut carry = Some(i);
    for &j in word {
        match carry {
            Some(i) if i > j => {
                out.push(i);
                out.push(j);
                carry = None;
            }
            Some(_) => out.push(j + 1),
            None => out.push(j),
        }
    }
    if let Some(i) = carry {
        out.push(i);
    }
    out
}

/// All strictly decreasing degeneracy words of length `len` over `0..letters`.
pub(crate) fn decreasing_words(letters: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(max_excl: usize, len: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if len == 0 {
            out.push(acc.clone());
            return;
        }
        for j in (len - 1..max_excl).rev() {
            acc.push(j);
            go(j, len - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(letters, len, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// A finite simplicial set truncated at `max_dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSet {
    max_dim: usize,
    /// Per dimension, the labels of the nondegenerate simplices.
    labels: Vec<Vec<String>>,
    /// `faces[k][idx][i]` is `d_i` of nondegenerate simplex `idx` in dimension
    /// `k`; indexed from `k = 1` (entry 0 is empty).
    faces: Vec<Vec<Vec<SimplexRef>>>,
}

impl SSet {
    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn nondeg_count(&self, dim: usize) -> usize {
        if dim <= self.max_dim {
            self.labels[dim].len()
        } else {
            0
        }
    }

    pub fn total_nondeg(&self) -> usize {
        self.labels.iter().map(|l| l.len()).sum()
    }

    pub fn label(&self, dim: usize, idx: usize) -> &str {
        &self.labels[dim][idx]
    }

    pub fn labels(&self, dim: usize) -> &[String] {
        &self.labels[dim]
    }

    pub fn find(&self, dim: usize, label: &str) -> Option<usize> {
        self.labels[dim].iter().position(|l| l == label)
    }

    pub fn nondeg_refs(&self, dim: usize) -> impl Iterator<Item = SimplexRef> + '_ {
        let n = self.nondeg_count(dim);
        (0..n).map(move |idx| SimplexRef::nondeg(dim, idx))
    }

    /// Stored face of a nondegenerate simplex.
    pub fn stored_face(&self, dim: usize, idx: usize, i: usize) -> &SimplexRef {
        &self.faces[dim][idx][i]
    }

    /// `d_i` of an arbitrary simplex, pushing the face through the
    /// degeneracy word:
    /// `d_i s_j = s_{j-1} d_i` (i < j), `d_i s_j = id` (i = j, j+1),
    /// `d_i s_j = s_j d_{i-1}` (i > j+1).
    pub fn face(&self, r: &SimplexRef, i: usize) -> SimplexRef {
        debug_assert!(r.dim() >= 1 && i <= r.dim());
        let mut i = i;
        let mut word: Vec<usize> = Vec::with_capacity(r.word.len());
        for (pos, &j) in r.word.iter().enumerate() {
            if i < j {
                word.push(j - 1);
            } else if i == j || i == j + 1 {
                word.extend_from_slice(&r.word[pos + 1..]);
                return SimplexRef { base_dim: r.base_dim, base_idx: r.base_idx, word };
            } else {
                word.push(j);
                i -= 1;
            }
        }
        // The face reached the base; stack the rewritten word on top of the
        // stored face, innermost letter first.
        let f = &self.faces[r.base_dim][r.base_idx][i];
        let mut out = f.clone();
        for &j in word.iter().rev() {
            out.word = word_after_degeneracy(&out.word, j);
        }
        out
    }

    /// `s_i` of an arbitrary simplex.
    pub fn degeneracy(&self, r: &SimplexRef, i: usize) -> SimplexRef {
        debug_assert!(i <= r.dim());
        SimplexRef {
            base_dim: r.base_dim,
            base_idx: r.base_idx,
            word: word_after_degeneracy(&r.word, i),
        }
    }

    /// All simplices of dimension `dim`, degenerate ones included, in a
    /// canonical order.
    pub fn simplices(&self, dim: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for base_dim in 0..=dim.min(self.max_dim) {
            let words = decreasing_words(dim, dim - base_dim);
            for base_idx in 0..self.nondeg_count(base_dim) {
                for w in &words {
                    out.push(SimplexRef { base_dim, base_idx, word: w.clone() });
                }
            }
        }
        out
    }

    pub fn simplex_count(&self, dim: usize) -> usize {
        self.simplices(dim).len()
    }

    /// Human-readable name of an arbitrary simplex.
    pub fn display(&self, r: &SimplexRef) -> String {
        if r.word.is_empty() {
            self.label(r.base_dim, r.base_idx).to_string()
        } else {
            let w: String = r.word.iter().map(|j| format!("s{j}")).collect();
            format!("{}({})", w, self.label(r.base_dim, r.base_idx))
        }
    }

    /// Checks `d_i d_j = d_{j-1} d_i` for `i < j` on every stored simplex,
    /// and that every face reference is well formed.
    pub fn validate(&self) -> Result<()> {
        for k in 1..=self.max_dim {
            for idx in 0..self.nondeg_count(k) {
                if self.faces[k][idx].len() != k + 1 {
                    return Err(Error::Invalid(format!(
                        "simplex {} has {} faces, expected {}",
                        self.label(k, idx),
                        self.faces[k][idx].len(),
                        k + 1
                    )));
                }
                for i in 0..=k {
                    let f = &self.faces[k][idx][i];
                    if f.dim() + 1 != k
                        || f.base_dim > self.max_dim
                        || f.base_idx >= self.nondeg_count(f.base_dim)
                    {
                        return Err(Error::Invalid(format!(
                            "face d_{i} of {} is malformed",
                            self.label(k, idx)
                        )));
                    }
                }
            }
        }
        for k in 2..=self.max_dim {
            for idx in 0..self.nondeg_count(k) {
                let r = SimplexRef::nondeg(k, idx);
                for j in 1..=k {
                    for i in 0..j {
                        let a = self.face(&self.face(&r, j), i);
                        let b = self.face(&self.face(&r, i), j - 1);
                        if a != b {
                            return Err(Error::Invalid(format!(
                                "simplicial identity d_{i} d_{j} = d_{} d_{i} fails on {}",
                                j - 1,
                                self.label(k, idx)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Incremental construction of an [`SSet`]; `build` validates.
#[derive(Debug, Clone)]
pub struct SSetBuilder {
    max_dim: usize,
    labels: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<SimplexRef>>>,
}

impl SSetBuilder {
    pub fn new(max_dim: usize) -> Self {
        SSetBuilder {
            max_dim,
            labels: vec![Vec::new(); max_dim + 1],
            faces: vec![Vec::new(); max_dim + 1],
        }
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> usize {
        self.labels[0].push(label.into());
        self.faces[0].push(Vec::new());
        self.labels[0].len() - 1
    }

    pub fn add_simplex(
        &mut self,
        dim: usize,
        label: impl Into<String>,
        faces: Vec<SimplexRef>,
    ) -> usize {
        assert!(dim >= 1 && dim <= self.max_dim && faces.len() == dim + 1);
        self.labels[dim].push(label.into());
        self.faces[dim].push(faces);
        self.labels[dim].len() - 1
    }

    pub fn count(&self, dim: usize) -> usize {
        self.labels[dim].len()
    }

    pub fn build(self) -> Result<SSet> {
        let s = SSet { max_dim: self.max_dim, labels: self.labels, faces: self.faces };
        s.validate()?;
        Ok(s)
    }
}

fn label_verts(verts: &[usize]) -> String {
    if verts.iter().all(|&v| v <= 9) {
        verts.iter().map(|v| v.to_string()).collect()
    } else {
        verts.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")
    }
}

fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == size {
            out.push(acc.clone());
            return;
        }
        for v in start..=n {
            acc.push(v);
            go(v + 1, n, size, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// The standard simplex `Delta[n]` truncated at `max_dim`; nondegenerate
/// `k`-simplices are the `(k+1)`-subsets of `{0..n}`.
pub fn standard_simplex(n: usize, max_dim: usize) -> SSet {
    simplex_complex(n, max_dim, |_| true)
}

/// The boundary of `Delta[n]`: the top simplex removed.
pub fn boundary(n: usize, max_dim: usize) -> SSet {
    assert!(n >= 1);
    simplex_complex(n, max_dim, |verts| verts.len() != n + 1)
}

/// The horn `Lambda^i[n]`: `Delta[n]` minus its top simplex and the `i`-th
/// face of the top simplex.
pub fn horn(n: usize, i: usize, max_dim: usize) -> Result<SSet> {
    if n < 1 || i > n {
        return Err(Error::Invalid(format!("no horn ({n},{i})")));
    }
    Ok(simplex_complex(n, max_dim, |verts| {
        verts.len() != n + 1 && !(verts.len() == n && !verts.contains(&i))
    }))
}

fn simplex_complex(n: usize, max_dim: usize, keep: impl Fn(&[usize]) -> bool) -> SSet {
    let mut b = SSetBuilder::new(max_dim);
    // index maps per dimension: subset -> idx
    let mut idx: Vec<HashMap<Vec<usize>, usize>> = vec![HashMap::new(); max_dim + 1];
    for k in 0..=max_dim.min(n) {
        for verts in subsets_of_size(n, k + 1) {
            if !keep(&verts) {
                continue;
            }
            if k == 0 {
                let i = b.add_vertex(label_verts(&verts));
                idx[0].insert(verts, i);
            } else {
                let faces = (0..=k)
                    .map(|i| {
                        let mut f = verts.clone();
                        f.remove(i);
                        SimplexRef::nondeg(k - 1, idx[k - 1][&f])
                    })
                    .collect();
                let i = b.add_simplex(k, label_verts(&verts), faces);
                idx[k].insert(verts, i);
            }
        }
    }
    b.build().expect("simplex complexes satisfy the identities")
}

/// The vertex sequence (a monotone map into `[n]`) of an arbitrary simplex
/// of a complex built by `simplex_complex`, e.g. `012` or `0112`.
pub fn simplex_vertex_sequence(s: &SSet, r: &SimplexRef) -> Vec<usize> {
    let label = s.label(r.base_dim, r.base_idx);
    let mut seq: Vec<usize> = if label.contains('.') {
        label.split('.').map(|p| p.parse().unwrap()).collect()
    } else {
        label.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()
    };
    for &j in r.word.iter().rev() {
        let v = seq[j];
        seq.insert(j + 1, v);
    }
    seq
}

/// A product of simplicial sets, with the tuple decomposition of its
/// nondegenerate simplices retained for later use.
#[derive(Debug, Clone)]
pub struct Product {
    pub sset: SSet,
    /// `tuples[dim][idx]`: component refs of each nondegenerate simplex.
    pub tuples: Vec<Vec<Vec<SimplexRef>>>,
    index: HashMap<(usize, Vec<SimplexRef>), usize>,
}

impl Product {
    pub fn new(factors: &[&SSet]) -> Product {
        Product::new_filtered(factors, |_, _| true)
    }

    /// Levelwise product restricted to component tuples passing `keep`
    /// (used for fiber products); `keep` must be closed under faces and
    /// degeneracies.
    pub fn new_filtered(
        factors: &[&SSet],
        keep: impl Fn(usize, &[SimplexRef]) -> bool,
    ) -> Product {
        assert!(!factors.is_empty());
        let max_dim = factors.iter().map(|f| f.max_dim()).min().unwrap();
        let mut tuples: Vec<Vec<Vec<SimplexRef>>> = vec![Vec::new(); max_dim + 1];
        let mut index = HashMap::new();
        let mut b = SSetBuilder::new(max_dim);
        for dim in 0..=max_dim {
            let per_factor: Vec<Vec<SimplexRef>> =
                factors.iter().map(|f| f.simplices(dim)).collect();
            if per_factor.iter().any(|p| p.is_empty()) {
                continue;
            }
            let mut cursor = vec![0usize; factors.len()];
            'outer: loop {
                let tuple: Vec<SimplexRef> = cursor
                    .iter()
                    .enumerate()
                    .map(|(f, &c)| per_factor[f][c].clone())
                    .collect();
                let jointly_nondeg =
                    (0..dim).all(|i| !tuple.iter().all(|r| r.is_image_of(i)));
                if jointly_nondeg && keep(dim, &tuple) {
                    let label = format!(
                        "({})",
                        tuple
                            .iter()
                            .enumerate()
                            .map(|(f, r)| factors[f].display(r))
                            .collect::<Vec<_>>()
                            .join(",")
                    );
                    let idx = if dim == 0 {
                        b.add_vertex(label)
                    } else {
                        let faces = (0..=dim)
                            .map(|i| {
                                let comps: Vec<SimplexRef> = tuple
                                    .iter()
                                    .enumerate()
                                    .map(|(f, r)| factors[f].face(r, i))
                                    .collect();
                                normalize_tuple(&comps, &index)
                            })
                            .collect();
                        b.add_simplex(dim, label, faces)
                    };
                    index.insert((dim, tuple.clone()), idx);
                    tuples[dim].push(tuple);
                }
                // advance the mixed-radix cursor
                for f in (0..factors.len()).rev() {
                    cursor[f] += 1;
                    if cursor[f] < per_factor[f].len() {
                        continue 'outer;
                    }
                    cursor[f] = 0;
                    if f == 0 {
                        break 'outer;
                    }
                }
            }
        }
        let sset = b.build().expect("products satisfy the identities");
        Product { sset, tuples, index }
    }

    /// The normal-form ref of the product simplex with the given components.
    pub fn ref_of_tuple(&self, comps: &[SimplexRef]) -> SimplexRef {
        normalize_tuple(comps, &self.index)
    }

    /// Component simplices of an arbitrary product simplex.
    pub fn tuple_of_ref(&self, r: &SimplexRef) -> Vec<SimplexRef> {
        let mut comps = self.tuples[r.base_dim][r.base_idx].clone();
        for &j in r.word.iter().rev() {
            for c in comps.iter_mut() {
                c.word = word_after_degeneracy(&c.word, j);
            }
        }
        comps
    }

    pub fn projection(&self, factor: usize) -> crate::smap::SMap {
        let mut images = Vec::new();
        for dim_tuples in &self.tuples {
            images.push(dim_tuples.iter().map(|t| t[factor].clone()).collect());
        }
        crate::smap::SMap::from_images(images)
    }
}

/// Strip shared degeneracies from a component tuple (greedy, largest index
/// first) and look up the jointly nondegenerate base.
fn normalize_tuple(
    comps: &[SimplexRef],
    index: &HashMap<(usize, Vec<SimplexRef>), usize>,
) -> SimplexRef {
    let mut comps = comps.to_vec();
    let mut word = Vec::new();
    loop {
        let dim = comps[0].dim();
        let shared = (0..dim).rev().find(|&i| comps.iter().all(|r| r.is_image_of(i)));
        match shared {
            Some(i) => {
                for c in comps.iter_mut() {
                    strip_degeneracy(c, i);
                }
                word.push(i);
            }
            None => break,
        }
    }
    let dim = comps[0].dim();
    let idx = *index
        .get(&(dim, comps))
        .expect("jointly nondegenerate tuple must be indexed");
    SimplexRef { base_dim: dim, base_idx: idx, word }
}

/// Remove `s_i` from the outside of a simplex known to be an `s_i`-image:
/// the result `y` with `s_i y = x` is `d_i x`, which the word rewrite
/// computes without consulting any face table.
fn strip_degeneracy(r: &mut SimplexRef, i: usize) {
    debug_assert!(r.is_image_of(i));
    let mut word: Vec<usize> = Vec::with_capacity(r.word.len());
    for (pos, &j) in r.word.iter().enumerate() {
        if i < j {
            word.push(j - 1);
        } else {
            debug_assert!(i == j);
            word.extend_from_slice(&r.word[pos + 1..]);
            r.word = word;
            return;
        }
    }
    unreachable!("letter {i} not found in word");
}

pub fn product(a: &SSet, b: &SSet) -> Product {
    Product::new(&[a, b])
}

/// Builds an [`SSet`] from explicit tables of all simplices (degenerate ones
/// included) with face and degeneracy functions, extracting the
/// Eilenberg-Zilber normal form.  Returns the complex together with the
/// underlying element of each nondegenerate simplex and the ref of every
/// listed element.
pub struct Tabulated<T> {
    pub sset: SSet,
    pub elems: Vec<Vec<T>>,
    pub refs: HashMap<(usize, T), SimplexRef>,
}

pub fn sset_from_tables<T>(
    max_dim: usize,
    sets: &[Vec<T>],
    face: impl Fn(usize, &T, usize) -> T,
    deg: impl Fn(usize, &T, usize) -> T,
    label: impl Fn(usize, &T) -> String,
) -> Result<Tabulated<T>>
where
    T: Eq + Hash + Clone,
{
    assert!(sets.len() >= max_dim + 1);
    let mut b = SSetBuilder::new(max_dim);
    let mut refs: HashMap<(usize, T), SimplexRef> = HashMap::new();
    let mut elems: Vec<Vec<T>> = vec![Vec::new(); max_dim + 1];

    // x is an s_i-image iff s_i(d_i x) = x; strip greedily, largest first.
    let normal_form = |k: usize,
                       x: &T,
                       refs: &HashMap<(usize, T), SimplexRef>,
                       face: &dyn Fn(usize, &T, usize) -> T,
                       deg: &dyn Fn(usize, &T, usize) -> T|
     -> Option<SimplexRef> {
        let mut x = x.clone();
        let mut k = k;
        let mut word = Vec::new();
        loop {
            let mut stripped = false;
            for i in (0..k).rev() {
                let y = face(k, &x, i);
                if deg(k - 1, &y, i) == x {
                    word.push(i);
                    x = y;
                    k -= 1;
                    stripped = true;
                    break;
                }
            }
            if !stripped {
                break;
            }
        }
        refs.get(&(k, x)).map(|base| SimplexRef {
            base_dim: base.base_dim,
            base_idx: base.base_idx,
            word,
        })
    };

    for k in 0..=max_dim {
        // first pass: identify nondegenerate elements
        for x in &sets[k] {
            if refs.contains_key(&(k, x.clone())) {
                continue;
            }
            let nondeg = k == 0
                || (0..k).all(|i| {
                    let y = face(k, x, i);
                    deg(k - 1, &y, i) != *x
                });
            if nondeg {
                let idx = if k == 0 {
                    b.add_vertex(label(k, x))
                } else {
                    let faces = (0..=k)
                        .map(|i| {
                            let f = face(k, x, i);
                            normal_form(k - 1, &f, &refs, &face, &deg).ok_or_else(|| {
                                Error::Invalid(format!(
                                    "face d_{i} of {} escapes the tabulated sets",
                                    label(k, x)
                                ))
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    b.add_simplex(k, label(k, x), faces)
                };
                refs.insert((k, x.clone()), SimplexRef::nondeg(k, idx));
                elems[k].push(x.clone());
            }
        }
        // second pass: record refs of the degenerate elements too
        for x in &sets[k] {
            if !refs.contains_key(&(k, x.clone())) {
                let r = normal_form(k, x, &refs, &face, &deg).ok_or_else(|| {
                    Error::Invalid(format!("cannot normalize {}", label(k, x)))
                })?;
                refs.insert((k, x.clone()), r);
            }
        }
    }
    let sset = b.build()?;
    Ok(Tabulated { sset, elems, refs })
}

impl fmt::Display for SSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..=self.max_dim {
            writeln!(
                f,
                "dim {k}: {}",
                self.labels[k].join(", ")
            )?;
        }
        Ok(())
    }
}
