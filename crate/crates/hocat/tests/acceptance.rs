//! End-to-end acceptance suite: twelve checks, each printed as one
//! pass/fail line.  Every check recomputes its expected values through a
//! route independent of the code under test (hand tables, combinatorial
//! counting, or a second construction of the same object).

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use hocat::bisset::{
    bisimplicial_segal_check, constant_rows, ho_of_segal, scat_nerve, SegalPrecat,
    SegalVerdict,
};
use hocat::dk::{dk_groupoid, verify_simplicial_groupoid};
use hocat::fincat::{self, cat_isomorphic, FinCatBuilder};
use hocat::gamma::{all_gamma_maps, delta_to_gamma, gamma_compose, monotone_maps, GammaMap};
use hocat::hammock::{
    compose_hammocks, concatenate_hammocks, enumerate_hammocks, normal_forms_all_orders,
    reduce_hammock, Hammock, LocPair,
};
use hocat::hcnerve::{hc_nerve, hc_nerve_is_quasi, suspension_scat};
use hocat::nerve::{
    category_from_segal, edge_source, edge_target, is_strict_segal, nerve, SegalWitness,
};
use hocat::nsset::{
    horizontal_compose_2cells, iso_classes, nerve_cells, pair_data, truncate,
    two_cat_nsset, chaotic_z2_two_cat, iso_hom_two_cat, PairData, TwoCellCert,
};
use hocat::quasi::{ho_category, homotopic_edges, is_kan, is_quasicategory};
use hocat::resolution::s_resolution;
use hocat::scat::{discrete_scat, pi0_category, SCat};
use hocat::simplicial::{boundary, horn, standard_simplex, Product, SSet};
use hocat::smap::is_isomorphic;
use hocat::sordinal::{interchange_square, s_ordinal};
use hocat::{Budget, SimplexRef};

fn ensure(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

/// 1. Every hom of the comonad resolution of an ordinal is a cube of the
/// expected dimension, compared against a literal product of intervals.
fn resolution_cubes() -> Result<(), String> {
    let mut budget = Budget::new(500_000_000);
    for n in 0..=5usize {
        let md = if n >= 4 { 2 } else { 3 };
        let r = s_resolution(&fincat::ordinal(n), md).map_err(|e| e.to_string())?;
        let d1 = standard_simplex(1, md);
        for i in 0..=n {
            for j in (i + 1)..=n {
                let k = j - i - 1;
                let cube = if k == 0 {
                    standard_simplex(0, md)
                } else {
                    let factors: Vec<&SSet> = (0..k).map(|_| &d1).collect();
                    Product::new(&factors).sset
                };
                let iso = is_isomorphic(&r.scat.hom[i][j], &cube, &mut budget)
                    .map_err(|e| e.to_string())?;
                ensure(
                    iso.is_some(),
                    &format!("hom({i},{j}) of [{n}] is not a {k}-cube"),
                )?;
            }
        }
    }
    Ok(())
}

/// 2. The labeled square in hom(0,3) of the third simplicial ordinal.
fn golden_square() -> Result<(), String> {
    let s3 = s_ordinal(3, 2);
    let h = &s3.scat.hom[0][3];
    let corners = ["(03)", "(02)(23)", "(01)(13)", "(01)(12)(23)"];
    ensure(h.nondeg_count(0) == 4, "vertex count is not 4")?;
    for c in corners {
        ensure(h.find(0, c).is_some(), &format!("missing vertex {c}"))?;
    }
    ensure(h.nondeg_count(1) == 5, "edge count is not 5")?;
    let mut edges = BTreeSet::new();
    for e in 0..5 {
        let r = SimplexRef::nondeg(1, e);
        edges.insert((
            h.display(&h.face(&r, 1)),
            h.display(&h.face(&r, 0)),
        ));
    }
    let want: BTreeSet<(String, String)> = [
        ("(03)", "(02)(23)"),
        ("(03)", "(01)(13)"),
        ("(03)", "(01)(12)(23)"),
        ("(02)(23)", "(01)(12)(23)"),
        ("(01)(13)", "(01)(12)(23)"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    ensure(edges == want, &format!("edge set differs: {edges:?}"))?;
    // the comonad resolution yields the same square
    let r = s_resolution(&fincat::ordinal(3), 2).map_err(|e| e.to_string())?;
    let iso = is_isomorphic(&r.scat.hom[0][3], h, &mut Budget::new(100_000_000))
        .map_err(|e| e.to_string())?;
    ensure(iso.is_some(), "resolution hom(0,3) differs from the square")
}

/// 3. hom(0,4) of the fourth ordinal is a 3-cube; five of its six square
/// facets are boundary images and the remaining one has the stated corners.
fn interchange() -> Result<(), String> {
    let rep = interchange_square().map_err(|e| e.to_string())?;
    ensure(rep.facets.len() == 6, "expected six facets")?;
    let hits: Vec<usize> = rep.facets.iter().filter_map(|&(_, h)| h).collect();
    ensure(hits.len() == 5, &format!("{} facets matched, expected 5", hits.len()))?;
    let distinct: BTreeSet<usize> = hits.iter().copied().collect();
    ensure(distinct.len() == 5, "boundary indices repeat")?;
    let want = ["(02)(24)", "(01)(12)(24)", "(02)(23)(34)", "(01)(12)(23)(34)"];
    ensure(
        rep.square_corners == want,
        &format!("corners differ: {:?}", rep.square_corners),
    )
}

/// 4. Nerves are quasi-categories; they are Kan exactly for groupoids.
fn nerve_lemmas() -> Result<(), String> {
    let cs = fincat::corpus();
    ensure(cs.len() >= 20, "corpus too small")?;
    ensure(cs.iter().filter(|c| c.is_groupoid()).count() >= 5, "too few groupoids")?;
    let mut budget = Budget::new(2_000_000_000);
    for c in &cs {
        let nv = nerve(c, 4);
        let w = is_quasicategory(&nv.sset, 4, &mut budget).map_err(|e| e.to_string())?;
        ensure(w.is_none(), &format!("nerve of {} fails an inner horn", c.name))?;
        let nv3 = nerve(c, 3);
        let kan = is_kan(&nv3.sset, 3, &mut budget).map_err(|e| e.to_string())?;
        ensure(
            kan.is_none() == c.is_groupoid(),
            &format!("Kan verdict for {} disagrees with groupoid check", c.name),
        )?;
    }
    Ok(())
}

/// 5. Segal reconstruction round-trips over the corpus; the inner horn and
/// the boundary of the triangle fail strictness with a witness.
fn segal_round_trip() -> Result<(), String> {
    for c in &fincat::corpus() {
        let nv = nerve(c, 3);
        let back = category_from_segal(&nv.sset).map_err(|e| e.to_string())?;
        ensure(
            cat_isomorphic(&back, c).is_some(),
            &format!("reconstruction differs for {}", c.name),
        )?;
    }
    for (name, s) in [
        ("inner horn", horn(2, 1, 2).map_err(|e| e.to_string())?),
        ("triangle boundary", boundary(2, 2)),
    ] {
        match is_strict_segal(&s, 2).map_err(|e| e.to_string())? {
            Some((2, SegalWitness::NotSurjective(sp))) => {
                ensure(!sp.is_empty(), &format!("{name}: empty witness"))?
            }
            other => {
                return Err(format!("{name}: expected a level-2 spine witness, got {other:?}"))
            }
        }
    }
    Ok(())
}

/// 6. The fundamental category of a nerve recovers the category; a Kan
/// nerve gives a groupoid; the composite is independent of filler choice.
fn fundamental_category() -> Result<(), String> {
    let mut budget = Budget::new(2_000_000_000);
    for c in &fincat::corpus() {
        let nv = nerve(c, 3);
        let h = ho_category(&nv.sset, &mut budget).map_err(|e| e.to_string())?;
        ensure(
            cat_isomorphic(&h, c).is_some(),
            &format!("ho(nerve({})) differs", c.name),
        )?;
        // filler independence: all fillers of the same inner 2-horn have
        // homotopic long edges
        for e1 in nv.sset.simplices(1) {
            for e2 in nv.sset.simplices(1) {
                if edge_target(&nv.sset, &e1) != edge_source(&nv.sset, &e2) {
                    continue;
                }
                let fillers: Vec<SimplexRef> = nv
                    .sset
                    .simplices(2)
                    .into_iter()
                    .filter(|x| {
                        nv.sset.face(x, 2) == e1 && nv.sset.face(x, 0) == e2
                    })
                    .collect();
                ensure(!fillers.is_empty(), &format!("unfillable spine in {}", c.name))?;
                for a in &fillers {
                    for b in &fillers {
                        let ha = nv.sset.face(a, 1);
                        let hb = nv.sset.face(b, 1);
                        let hom = homotopic_edges(&nv.sset, &ha, &hb, &mut budget)
                            .map_err(|e| e.to_string())?;
                        ensure(hom, &format!("filler-dependent composite in {}", c.name))?;
                    }
                }
            }
        }
    }
    let h = ho_category(&nerve(&fincat::cyclic_group(2), 3).sset, &mut budget)
        .map_err(|e| e.to_string())?;
    ensure(h.is_groupoid(), "ho of a Kan nerve is not a groupoid")
}

/// 7. Free groupoid levels of the triangle, the twisted zeroth face, the
/// identity checker on small complexes, and the untwisted mutation.
fn free_simplicial_groupoid() -> Result<(), String> {
    let g = dk_groupoid(&standard_simplex(2, 3), 1).map_err(|e| e.to_string())?;
    let free = |n: usize| {
        let mut v: Vec<String> = g
            .generators(n)
            .iter()
            .filter(|y| !g.gen_word(y).is_identity())
            .map(|y| g.gen_name(y))
            .collect();
        v.sort();
        v
    };
    ensure(free(0) == ["01", "02", "12"], &format!("level 0 free on {:?}", free(0)))?;
    ensure(
        free(1) == ["011", "012", "022", "122"],
        &format!("level 1 free on {:?}", free(1)),
    )?;
    let y012 = g
        .generators(1)
        .into_iter()
        .find(|y| g.gen_name(y) == "012")
        .ok_or("generator 012 missing")?;
    let d0 = g.delta_gen(1, &y012, 0).map_err(|e| e.to_string())?;
    ensure(
        g.word_name(&d0) == "(02)(12)⁻¹",
        &format!("d_0(012) reduces to {}", g.word_name(&d0)),
    )?;
    let ks = [
        standard_simplex(0, 4),
        standard_simplex(1, 4),
        standard_simplex(2, 4),
        standard_simplex(3, 4),
        horn(2, 1, 4).map_err(|e| e.to_string())?,
        boundary(2, 4),
    ];
    for k in &ks {
        let gk = dk_groupoid(k, 3).map_err(|e| e.to_string())?;
        let rep = verify_simplicial_groupoid(&gk, 3).map_err(|e| e.to_string())?;
        ensure(rep.ok(), &format!("identities fail: {:?}", rep.failures))?;
        ensure(rep.checks > 0, "no identities checked")?;
    }
    let mut mutant = dk_groupoid(&standard_simplex(2, 3), 2).map_err(|e| e.to_string())?;
    mutant.twisted = false;
    let rep = verify_simplicial_groupoid(&mutant, 2).map_err(|e| e.to_string())?;
    ensure(!rep.ok(), "untwisted zeroth face passes the identity checker")
}

fn hammock_pairs() -> Vec<LocPair> {
    let mut out = vec![
        LocPair::identities(&fincat::ordinal(2)),
        LocPair::identities(&fincat::span()),
        LocPair::isomorphisms(&fincat::free_iso()),
        LocPair::isomorphisms(&fincat::pair_groupoid(2)),
    ];
    let c = fincat::ordinal(2);
    let mut w: BTreeSet<usize> = c.identity.iter().copied().collect();
    w.insert(c.find_arrow("0<1").unwrap());
    out.push(LocPair { c, w });
    let mut b = FinCatBuilder::new("spaniso", &["X", "C", "Y"]);
    b.arrow("w", "C", "X");
    b.arrow("wi", "X", "C");
    b.arrow("c", "C", "Y");
    b.arrow("cwi", "X", "Y");
    b.set_comp("w", "wi", "id_X");
    b.set_comp("wi", "w", "id_C");
    b.set_comp("c", "wi", "cwi");
    b.set_comp("cwi", "w", "c");
    let c = b.build().unwrap();
    let w = ["id_X", "id_C", "id_Y", "w", "wi"]
        .iter()
        .map(|n| c.find_arrow(n).unwrap())
        .collect();
    out.push(LocPair { c, w });
    out
}

/// 8. Hammock reduction terminates and is confluent; composition is
/// associative and unital on deterministically sampled triples; with
/// trivial weak equivalences the width-0 hammocks are the hom sets.
fn hammocks() -> Result<(), String> {
    let mut budget = Budget::new(1_000_000_000);
    let pairs = hammock_pairs();
    // termination and confluence on concatenations of enumerated hammocks
    for p in &pairs {
        let nobj = p.c.objects.len();
        for x in 0..nobj {
            for y in 0..nobj {
                for z in 0..nobj {
                    for width in 0..=2usize {
                        let hs1 = enumerate_hammocks(p, x, y, width, 2, &mut budget)
                            .map_err(|e| e.to_string())?;
                        let hs2 = enumerate_hammocks(p, y, z, width, 2, &mut budget)
                            .map_err(|e| e.to_string())?;
                        for h1 in hs1.iter().take(4) {
                            for h2 in hs2.iter().take(4) {
                                let raw = concatenate_hammocks(p, h1, h2)
                                    .map_err(|e| e.to_string())?;
                                let red = reduce_hammock(p, &raw);
                                ensure(red.len() <= raw.len(), "reduction grows")?;
                                ensure(
                                    reduce_hammock(p, &red) == red,
                                    "reduction is not idempotent",
                                )?;
                                let nfs = normal_forms_all_orders(p, &raw);
                                ensure(nfs.len() == 1, "rewrite orders diverge")?;
                                ensure(
                                    nfs.into_iter().next().unwrap() == red,
                                    "normal form differs from reduce",
                                )?;
                            }
                        }
                    }
                }
            }
        }
    }
    // associativity and units on LCG-sampled triples
    let mut state: u64 = 0x2545F4914F6CDD1D;
    let mut next = move |m: usize| {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) as usize) % m.max(1)
    };
    let mut triples = 0usize;
    'outer: loop {
        for p in &pairs {
            let nobj = p.c.objects.len();
            let (x, y, z, w) = (next(nobj), next(nobj), next(nobj), next(nobj));
            let a = enumerate_hammocks(p, x, y, 0, 2, &mut budget).map_err(|e| e.to_string())?;
            let b = enumerate_hammocks(p, y, z, 0, 2, &mut budget).map_err(|e| e.to_string())?;
            let c = enumerate_hammocks(p, z, w, 0, 2, &mut budget).map_err(|e| e.to_string())?;
            if a.is_empty() || b.is_empty() || c.is_empty() {
                continue;
            }
            let h1 = &a[next(a.len())];
            let h2 = &b[next(b.len())];
            let h3 = &c[next(c.len())];
            let l = compose_hammocks(p, &compose_hammocks(p, h1, h2).map_err(|e| e.to_string())?, h3)
                .map_err(|e| e.to_string())?;
            let r = compose_hammocks(p, h1, &compose_hammocks(p, h2, h3).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            ensure(l == r, "composition is not associative")?;
            let idx = Hammock::identity(h1.x, 0);
            let idy = Hammock::identity(h1.y, 0);
            ensure(
                compose_hammocks(p, &idx, h1).map_err(|e| e.to_string())? == *h1,
                "left unit fails",
            )?;
            ensure(
                compose_hammocks(p, h1, &idy).map_err(|e| e.to_string())? == *h1,
                "right unit fails",
            )?;
            triples += 1;
            if triples >= 120 {
                break 'outer;
            }
        }
    }
    // with W = identities, width-0 hammocks up to length 3 are the hom sets
    for c in [fincat::ordinal(2), fincat::span(), fincat::parallel_pair()] {
        let p = LocPair::identities(&c);
        for x in 0..c.objects.len() {
            for y in 0..c.objects.len() {
                let hs = enumerate_hammocks(&p, x, y, 0, 3, &mut budget)
                    .map_err(|e| e.to_string())?;
                ensure(
                    hs.len() == c.arrows_between(x, y).len(),
                    &format!("{}: hom({x},{y}) has {} hammocks", c.name, hs.len()),
                )?;
            }
        }
    }
    Ok(())
}

/// 9. The homotopy coherent nerve of a groupoid-enriched two-object
/// category is a quasi-category; with discrete homs it is the ordinary nerve.
fn coherent_nerve() -> Result<(), String> {
    let b = suspension_scat(&fincat::cyclic_group(2), 3);
    let mut budget = Budget::new(200_000_000);
    let (_, rep) = hc_nerve_is_quasi(&b, 3, &mut budget).map_err(|e| e.to_string())?;
    ensure(rep.locally_kan_failure.is_none(), "enrichment is not locally Kan")?;
    ensure(rep.is_quasi(), "coherent nerve fails an inner horn")?;
    for c in [fincat::ordinal(2), fincat::span(), fincat::parallel_pair()] {
        let sb = discrete_scat(&c, 3);
        let hn = hc_nerve(&sb, 3, &mut budget).map_err(|e| e.to_string())?;
        let nv = nerve(&c, 3);
        let iso = is_isomorphic(hn.sset(), &nv.sset, &mut budget).map_err(|e| e.to_string())?;
        ensure(iso.is_some(), &format!("coherent nerve of discrete {} differs", c.name))?;
    }
    Ok(())
}

/// 10. Associativity, units and the interval embedding for finite-set
/// morphisms with disjoint-preimage images.
fn gamma_algebra() -> Result<(), String> {
    // units against every map with source and target up to 5
    for m in 0..=5usize {
        for n in 0..=5usize {
            for g in all_gamma_maps(m, n) {
                let l = gamma_compose(&GammaMap::identity(m), &g).map_err(|e| e.to_string())?;
                let r = gamma_compose(&g, &GammaMap::identity(n)).map_err(|e| e.to_string())?;
                ensure(l == g && r == g, "identity is not neutral")?;
            }
        }
    }
    // associativity exhaustively on all triples with sizes up to 3
    for m in 0..=3usize {
        for n in 0..=3usize {
            for k in 0..=3usize {
                for l in 0..=3usize {
                    for a in all_gamma_maps(m, n) {
                        for b in all_gamma_maps(n, k) {
                            for c in all_gamma_maps(k, l) {
                                let lhs = gamma_compose(
                                    &gamma_compose(&a, &b).map_err(|e| e.to_string())?,
                                    &c,
                                )
                                .map_err(|e| e.to_string())?;
                                let rhs = gamma_compose(
                                    &a,
                                    &gamma_compose(&b, &c).map_err(|e| e.to_string())?,
                                )
                                .map_err(|e| e.to_string())?;
                                ensure(lhs == rhs, "composition is not associative")?;
                            }
                        }
                    }
                }
            }
        }
    }
    // functoriality of the interval embedding, all monotone maps up to 5
    for m in 0..=5usize {
        for n in 0..=5usize {
            for k in 0..=5usize {
                for f in monotone_maps(m, n) {
                    for g in monotone_maps(n, k) {
                        let gf: Vec<usize> = f.iter().map(|&i| g[i]).collect();
                        let lhs = delta_to_gamma(&gf, k).map_err(|e| e.to_string())?;
                        let rhs = gamma_compose(
                            &delta_to_gamma(&f, n).map_err(|e| e.to_string())?,
                            &delta_to_gamma(&g, k).map_err(|e| e.to_string())?,
                        )
                        .map_err(|e| e.to_string())?;
                        ensure(lhs == rhs, &format!("embedding not functorial at {f:?};{g:?}"))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn exact_certificate(pd: &PairData) -> TwoCellCert {
    TwoCellCert {
        gamma_ob: (0..pd.fcat.objects.len())
            .map(|o| pd.delta_ob.iter().position(|&d| d == o).unwrap())
            .collect(),
        gamma_arr: (0..pd.fcat.arrows.len())
            .map(|m| pd.delta_arr.iter().position(|&d| d == m).unwrap())
            .collect(),
        alpha: (0..pd.fcat.objects.len()).map(|o| pd.fcat.identity[o]).collect(),
    }
}

/// 11. Segal precategories: strictness of the enriched nerve, its homotopy
/// category, hand-computed truncation tables, and horizontal composition
/// against the strict table.
fn segal_precategories() -> Result<(), String> {
    let scats: Vec<SCat> = vec![
        discrete_scat(&fincat::ordinal(2), 2),
        discrete_scat(&fincat::span(), 2),
        discrete_scat(&fincat::parallel_pair(), 2),
        s_ordinal(2, 2).scat,
        s_ordinal(3, 2).scat,
    ];
    for b in &scats {
        let a = scat_nerve(b, 3).map_err(|e| e.to_string())?;
        for (p, v) in bisimplicial_segal_check(&a, 3, &[]).map_err(|e| e.to_string())? {
            ensure(
                v == SegalVerdict::Strict,
                &format!("{} not strict at p={p}", b.name),
            )?;
        }
        let ho = ho_of_segal(&a, &[]).map_err(|e| e.to_string())?;
        let want = pi0_category(b).map_err(|e| e.to_string())?;
        ensure(
            cat_isomorphic(&ho, &want).is_some(),
            &format!("ho of {} differs from its component category", b.name),
        )?;
    }
    // a nerve with constant rows is also strict and recovers the category
    for c in [fincat::ordinal(2), fincat::cyclic_group(2)] {
        let n = nerve(&c, 4);
        let a = SegalPrecat::new(constant_rows(&n.sset, 3, 2).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let ho = ho_of_segal(&a, &[]).map_err(|e| e.to_string())?;
        ensure(cat_isomorphic(&ho, &c).is_some(), &format!("constant rows of {}", c.name))?;
    }
    // truncation hand tables on the two-object 2-category whose only
    // nontrivial hom is a free isomorphism
    let a = two_cat_nsset(&iso_hom_two_cat(), 3, 3).map_err(|e| e.to_string())?;
    let tr = truncate(&a).map_err(|e| e.to_string())?;
    let counts: Vec<usize> = (0..=3).map(|q| tr.t.cells[&vec![q]].len()).collect();
    ensure(counts == [2, 3, 4, 5], &format!("T cell counts {counts:?}"))?;
    let want = nerve_cells(&fincat::ordinal(1), 3);
    for q in 0..=3usize {
        ensure(
            tr.t.cells[&vec![q]].len() == want.cells[&vec![q]].len(),
            "T differs from the nerve of the arrow",
        )?;
    }
    let tau1 = &tr.tau[&vec![1]];
    let cells1 = &a.cells[&vec![1, 0]];
    let u = cells1.iter().position(|l| l == "X,Y:x").ok_or("cell X,Y:x missing")?;
    let v = cells1.iter().position(|l| l == "X,Y:y").ok_or("cell X,Y:y missing")?;
    ensure(tau1[u] == tau1[v], "isomorphic 1-cells not identified")?;
    let tr2 = truncate(&tr.t).map_err(|e| e.to_string())?;
    ensure(
        tr2.t.cells[&Vec::new()].len() == 2,
        "T^2 is not the two-element set of objects",
    )?;
    // horizontal composition on the one-object strict fixture equals the
    // strict composition table
    let t = chaotic_z2_two_cat();
    let a = two_cat_nsset(&t, 2, 3).map_err(|e| e.to_string())?;
    let pd = pair_data(&a).map_err(|e| e.to_string())?;
    let cert = exact_certificate(&pd);
    let c1 = &pd.c1.cat;
    let h = &t.hom[0][0];
    let pos = |label: &str| h.objects.iter().position(|o| label.ends_with(o.as_str())).unwrap();
    for av in 0..c1.arrows.len() {
        for bv in 0..c1.arrows.len() {
            let (ob, arr) =
                horizontal_compose_2cells(&a, &cert, (av, bv)).map_err(|e| e.to_string())?;
            let want_dom = t.comp_ob[&(0, 0, 0)][pos(&c1.objects[c1.arrows[av].dom])]
                [pos(&c1.objects[c1.arrows[bv].dom])];
            ensure(
                c1.objects[ob] == format!("*,*:{}", h.objects[want_dom]),
                &format!("composite 1-cell differs at ({av},{bv})"),
            )?;
            if c1.is_identity(av) && c1.is_identity(bv) {
                ensure(c1.is_identity(arr), "identities do not compose to an identity")?;
                ensure(c1.arrows[arr].dom == ob, "identity composite at the wrong object")?;
            }
        }
    }
    // a second certificate, constant at the unit pair, agrees up to
    // isomorphism classes
    let unit_pair = pd.delta_ob[cert.gamma_ob[pd.ob_index[&(pd.ob_pairs[0].0, pd.ob_pairs[0].1)]]];
    let base = cert.gamma_ob[unit_pair];
    let constant = TwoCellCert {
        gamma_ob: vec![base; pd.fcat.objects.len()],
        gamma_arr: vec![pd.c2.cat.identity[base]; pd.fcat.arrows.len()],
        alpha: (0..pd.fcat.objects.len())
            .map(|o| pd.fcat.arrows_between(pd.delta_ob[base], o)[0])
            .collect(),
    };
    let classes = iso_classes(c1);
    for av in 0..c1.arrows.len() {
        for bv in 0..c1.arrows.len() {
            let (o1, _) =
                horizontal_compose_2cells(&a, &cert, (av, bv)).map_err(|e| e.to_string())?;
            let (o2, _) =
                horizontal_compose_2cells(&a, &constant, (av, bv)).map_err(|e| e.to_string())?;
            ensure(classes[o1] == classes[o2], "certificates disagree on classes")?;
        }
    }
    Ok(())
}

/// 12. The command line round-trips its fixtures byte-identically and
/// failing verdicts replay from their witness files.
fn cli_round_trip() -> Result<(), String> {
    let fixtures = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let run = |args: &[&str]| -> Result<(i32, String), String> {
        let out = Command::new(env!("CARGO_BIN_EXE_hocat"))
            .args(args)
            .current_dir(&fixtures)
            .output()
            .map_err(|e| e.to_string())?;
        Ok((
            out.status.code().ok_or("no exit code")?,
            String::from_utf8_lossy(&out.stdout).into_owned(),
        ))
    };
    let mut names: Vec<String> = std::fs::read_dir(&fixtures)
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    ensure(!names.is_empty(), "no fixtures found")?;
    for name in &names {
        if name.ends_with(".nmap.json") {
            continue;
        }
        let text = std::fs::read_to_string(fixtures.join(name)).map_err(|e| e.to_string())?;
        let doc = hocat::doc::parse_document(&text)
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(
            hocat::doc::emit_document(&doc) == text,
            &format!("{name} does not round trip"),
        )?;
        if name.ends_with(".sset") {
            let (code, shown) = run(&["sset", "show", name])?;
            ensure(code == 0 && shown == text, &format!("CLI round trip differs for {name}"))?;
        }
    }
    // witness replay for the two fixture-level failures
    let tmp = std::env::temp_dir();
    for (args, input) in [
        (vec!["kan", "nerve_ordinal1.sset", "--max-dim", "2"], "nerve_ordinal1.sset"),
        (vec!["quasi", "horn12.sset", "--max-dim", "2"], "horn12.sset"),
        (vec!["segal", "check", "horn_rows.bisset"], "horn_rows.bisset"),
    ] {
        let w = tmp.join(format!("acceptance_{}.json", args[0]));
        let wpath = w.to_str().ok_or("bad temp path")?.to_string();
        let mut full = args.clone();
        full.push("--witness");
        full.push(&wpath);
        let (code, _) = run(&full)?;
        ensure(code == 1, &format!("{args:?} should fail with a witness"))?;
        let (code, _) = run(&["replay", input, &wpath])?;
        ensure(code == 1, &format!("{args:?} witness does not replay"))?;
        let _ = std::fs::remove_file(&w);
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Result<(), String>)> = vec![
        ("resolution homs are cubes", resolution_cubes),
        ("golden square of the third ordinal", golden_square),
        ("interchange square of the fourth ordinal", interchange),
        ("nerve horn-filling lemmas on the corpus", nerve_lemmas),
        ("Segal reconstruction round trip", segal_round_trip),
        ("fundamental category of a nerve", fundamental_category),
        ("free simplicial groupoid goldens", free_simplicial_groupoid),
        ("hammock rewriting and composition", hammocks),
        ("homotopy coherent nerve", coherent_nerve),
        ("finite-set morphism algebra", gamma_algebra),
        ("Segal precategories and truncation", segal_precategories),
        ("CLI round trip and witness replay", cli_round_trip),
    ];
    let mut failures = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".to_string());
            Err(msg)
        });
        match res {
            Ok(()) => println!("criterion {:2}: pass  {name}", i + 1),
            Err(msg) => {
                println!("criterion {:2}: FAIL  {name}: {msg}", i + 1);
                failures.push(format!("{}: {msg}", i + 1));
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
