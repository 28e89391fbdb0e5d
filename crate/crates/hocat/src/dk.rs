//! The free simplicial groupoid G(K) on a simplicial set: level n is the
//! free groupoid on the (n+1)-simplices of K with the s_0 images killed,
//! the twist sitting in the zeroth face formula.

use crate::error::{Error, Result};
use crate::simplicial::{simplex_vertex_sequence, SSet, SimplexRef};

/// A reduced word in a free groupoid; letters are generators of one level
/// paired with an inversion flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrpdWord {
    pub dom: usize,
    pub cod: usize,
    pub letters: Vec<(SimplexRef, bool)>,
}

impl GrpdWord {
    pub fn identity(v: usize) -> GrpdWord {
        GrpdWord { dom: v, cod: v, letters: Vec::new() }
    }

    pub fn inverse(&self) -> GrpdWord {
        GrpdWord {
            dom: self.cod,
            cod: self.dom,
            letters: self.letters.iter().rev().map(|(g, e)| (g.clone(), !e)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Concatenate and cancel to the fixpoint.
pub fn word_concat(a: &GrpdWord, b: &GrpdWord) -> Result<GrpdWord> {
    if a.cod != b.dom {
        return Err(Error::Precondition(format!(
            "word endpoints do not meet: {} vs {}",
            a.cod, b.dom
        )));
    }
    let mut letters = a.letters.clone();
    for l in &b.letters {
        if letters.last().is_some_and(|(g, e)| g == &l.0 && *e != l.1) {
            letters.pop();
        } else {
            letters.push(l.clone());
        }
    }
    Ok(GrpdWord { dom: a.dom, cod: b.cod, letters })
}

/// Reduce an arbitrary letter sequence; also the normal-form oracle used
/// by the confluence test.
pub fn word_reduce(w: &GrpdWord) -> GrpdWord {
    let mut out = GrpdWord { dom: w.dom, cod: w.dom, letters: Vec::new() };
    for l in &w.letters {
        if out.letters.last().is_some_and(|(g, e)| g == &l.0 && *e != l.1) {
            out.letters.pop();
        } else {
            out.letters.push(l.clone());
        }
    }
    out.cod = w.cod;
    out
}

/// The free simplicial groupoid.  Level n generators are indexed by all
/// (n+1)-simplices of the underlying complex; the s_0 images are killed
/// at lookup time, so each level stays literally free on the survivors.
pub struct SimpGrpd {
    pub k: SSet,
    pub max_dim: usize,
    /// kill the s_0 twist in the zeroth face (mutation testing only)
    pub twisted: bool,
}

pub fn dk_groupoid(k: &SSet, max_dim: usize) -> Result<SimpGrpd> {
    if max_dim + 1 > k.max_dim() {
        return Err(Error::Precondition(format!(
            "level {max_dim} needs simplices of dimension {}, complex stops at {}",
            max_dim + 1,
            k.max_dim()
        )));
    }
    Ok(SimpGrpd { k: k.clone(), max_dim, twisted: true })
}

impl SimpGrpd {
    pub fn objects(&self) -> usize {
        self.k.nondeg_count(0)
    }

    /// Level-n generators: every (n+1)-simplex, degenerate ones included.
    pub fn generators(&self, n: usize) -> Vec<SimplexRef> {
        self.k.simplices(n + 1)
    }

    /// Source vertex d_1 d_2 ... d_{n+1} y.
    pub fn gen_dom(&self, y: &SimplexRef) -> usize {
        self.edge_of(y).0
    }

    pub fn gen_cod(&self, y: &SimplexRef) -> usize {
        self.edge_of(y).1
    }

    fn edge_of(&self, y: &SimplexRef) -> (usize, usize) {
        let mut e = y.clone();
        while e.dim() > 1 {
            let d = e.dim();
            e = self.k.face(&e, d);
        }
        (self.k.face(&e, 1).base_idx, self.k.face(&e, 0).base_idx)
    }

    /// The word of a generator index: a single letter, unless the simplex
    /// is an s_0 image, which is an identity by decree.
    pub fn gen_word(&self, y: &SimplexRef) -> GrpdWord {
        if y.is_image_of(0) {
            GrpdWord::identity(self.gen_dom(y))
        } else {
            GrpdWord {
                dom: self.gen_dom(y),
                cod: self.gen_cod(y),
                letters: vec![(y.clone(), false)],
            }
        }
    }

    /// Face on a level-n generator.
    pub fn delta_gen(&self, n: usize, y: &SimplexRef, i: usize) -> Result<GrpdWord> {
        assert!(n >= 1 && i <= n);
        if i > 0 {
            return Ok(self.gen_word(&self.k.face(y, i + 1)));
        }
        let d1 = self.gen_word(&self.k.face(y, 1));
        if !self.twisted {
            return Ok(d1);
        }
        let d0 = self.gen_word(&self.k.face(y, 0));
        word_concat(&d1, &d0.inverse())
    }

    pub fn sigma_gen(&self, _n: usize, y: &SimplexRef, i: usize) -> GrpdWord {
        self.gen_word(&self.k.degeneracy(y, i + 1))
    }

    pub fn delta(&self, n: usize, w: &GrpdWord, i: usize) -> Result<GrpdWord> {
        self.map_word(w, |y| self.delta_gen(n, y, i))
    }

    pub fn sigma(&self, n: usize, w: &GrpdWord, i: usize) -> Result<GrpdWord> {
        self.map_word(w, |y| Ok(self.sigma_gen(n, y, i)))
    }

    fn map_word(
        &self,
        w: &GrpdWord,
        f: impl Fn(&SimplexRef) -> Result<GrpdWord>,
    ) -> Result<GrpdWord> {
        let mut out: Option<GrpdWord> = None;
        for (g, inv) in &w.letters {
            let mut img = f(g)?;
            if *inv {
                img = img.inverse();
            }
            out = Some(match out {
                None => img,
                Some(acc) => word_concat(&acc, &img)?,
            });
        }
        Ok(out.unwrap_or_else(|| GrpdWord::identity(w.dom)))
    }

    pub fn gen_name(&self, y: &SimplexRef) -> String {
        let label = self.k.label(y.base_dim, y.base_idx);
        if label.chars().all(|c| c.is_ascii_digit() || c == '.') {
            simplex_vertex_sequence(&self.k, y)
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("")
        } else {
            self.k.display(y)
        }
    }

    pub fn word_name(&self, w: &GrpdWord) -> String {
        if w.letters.is_empty() {
            return format!("id_{}", w.dom);
        }
        w.letters
            .iter()
            .map(|(g, inv)| {
                format!("({}){}", self.gen_name(g), if *inv { "⁻¹" } else { "" })
            })
            .collect()
    }
}

pub struct DkReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl DkReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every simplicial identity family, endpoint functoriality and
/// object constancy on all generators through the given level.
pub fn verify_simplicial_groupoid(g: &SimpGrpd, max_dim: usize) -> Result<DkReport> {
    let top = max_dim.min(g.max_dim);
    let mut checks = 0usize;
    let mut failures = Vec::new();
    let mut record = |cond: bool, msg: String| {
        checks += 1;
        if !cond {
            failures.push(msg);
        }
    };
    for n in 0..=top {
        for y in g.generators(n) {
            let name = g.gen_name(&y);
            // endpoints well defined and words endpoint-consistent
            let w = g.gen_word(&y);
            record(
                w.dom == g.gen_dom(&y) && (w.is_identity() || w.cod == g.gen_cod(&y)),
                format!("endpoints of {name} at level {n}"),
            );
            if n >= 1 {
                for i in 0..=n {
                    let di = g.delta_gen(n, &y, i)?;
                    record(
                        di.dom == g.gen_dom(&y) || g.gen_word(&y).is_identity(),
                        format!("delta_{i} source of {name} at level {n}"),
                    );
                }
            }
            // delta delta
            if n >= 2 {
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = g.delta(n - 1, &g.delta_gen(n, &y, j)?, i)?;
                        let rhs = g.delta(n - 1, &g.delta_gen(n, &y, i)?, j - 1)?;
                        record(
                            word_reduce(&lhs) == word_reduce(&rhs),
                            format!("d_{i} d_{j} on {name} at level {n}"),
                        );
                    }
                }
            }
            // sigma sigma
            if n + 2 <= top {
                for i in 0..=n {
                    for j in i..=n {
                        let lhs = g.sigma(n + 1, &g.sigma_gen(n, &y, j), i)?;
                        let rhs = g.sigma(n + 1, &g.sigma_gen(n, &y, i), j + 1)?;
                        record(
                            word_reduce(&lhs) == word_reduce(&rhs),
                            format!("s_{i} s_{j} on {name} at level {n}"),
                        );
                    }
                }
            }
            // delta sigma
            if n + 1 <= top {
                for j in 0..=n {
                    let sj = g.sigma_gen(n, &y, j);
                    for i in 0..=n + 1 {
                        let lhs = g.delta(n + 1, &sj, i)?;
                        let rhs = if i == j || i == j + 1 {
                            g.gen_word(&y)
                        } else if i < j {
                            g.sigma(n - 1, &g.delta_gen(n, &y, i)?, j - 1)?
                        } else {
                            g.sigma(n - 1, &g.delta_gen(n, &y, i - 1)?, j)?
                        };
                        record(
                            word_reduce(&lhs) == word_reduce(&rhs),
                            format!("d_{i} s_{j} on {name} at level {n}"),
                        );
                    }
                }
            }
        }
    }
    Ok(DkReport { checks, failures })
}
