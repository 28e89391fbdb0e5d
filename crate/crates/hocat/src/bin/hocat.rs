use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use hocat::bisset::{bisimplicial_segal_check, pi0_classes, SegalPrecat, SegalVerdict};
use hocat::dk::{dk_groupoid, verify_simplicial_groupoid};
use hocat::doc::{self, Document, RefDoc, SmapDoc, FORMAT_VERSION};
use hocat::error::{Budget, Error};
use hocat::fincat::ordinal;
use hocat::gamma::{delta_to_gamma, gamma_compose, GammaMap};
use hocat::hammock::{check_left_fractions, enumerate_hammocks, reduce_hammock};
use hocat::hcnerve::hc_nerve;
use hocat::nerve::{category_from_segal, is_strict_segal, nerve, segal_map, SegalWitness};
use hocat::nsset::{n_equivalence_check, truncate, NMap, NSSet};
use hocat::quasi::{find_filler, ho_category, is_kan, is_quasicategory, HornInstance};
use hocat::report::{Report, EXIT_BUDGET, EXIT_FAIL, EXIT_INVALID, EXIT_OK};
use hocat::resolution::s_resolution;
use hocat::simplicial::{horn, SSet};
use hocat::sordinal::interchange_square;

#[derive(Parser)]
#[command(name = "hocat", version, about = "finite homotopy-coherent category tools")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// write the report or document here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// also write the report (with its witness) to this file
    #[arg(long, global = true)]
    witness: Option<PathBuf>,
    /// search-node budget
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_LIMIT)]
    budget: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// simplicial-set documents
    Sset {
        #[command(subcommand)]
        sub: SsetCmd,
    },
    /// nerve of a category document
    Nerve {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
    /// horn-filling check, all horns
    Kan {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
    },
    /// horn-filling check, inner horns only
    Quasi {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
    },
    /// fundamental category of a quasi-category
    Ho { file: PathBuf },
    /// spine-comparison check per degree
    Segalmap {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
    /// rebuild the category presented by a strict Segal simplicial set
    Fromsegal { file: PathBuf },
    /// hom complex of the standard resolution of [n]
    Sres {
        n: usize,
        #[arg(long, num_args = 2)]
        hom: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
    },
    /// the free square facet of the resolution 3-cube
    Interchange,
    /// connected components of the vertices
    Pi0 { file: PathBuf },
    /// homotopy coherent nerve of an enriched category document
    Hcnerve {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
    /// free simplicial groupoid on a simplicial set
    Gk {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
    /// reduce a hammock document, or enumerate from a locpair document
    Hammock {
        file: PathBuf,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        #[arg(long, default_value_t = 0)]
        width: usize,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// left-fractions conditions for a localization pair
    Leftfrac { file: PathBuf },
    /// Segal-precategory checks on a bisimplicial document
    Segal {
        #[command(subcommand)]
        sub: SegalCmd,
    },
    /// partial-cover maps of finite sets
    Gamma {
        #[command(subcommand)]
        sub: GammaCmd,
    },
    /// collapse every slice category to isomorphism classes
    Truncate { file: PathBuf },
    /// recursive equivalence check between two multi-simplicial documents
    Nequiv {
        a: PathBuf,
        b: PathBuf,
        map: PathBuf,
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// re-check the witness carried by an earlier failing report
    Replay { file: PathBuf, report: PathBuf },
}

#[derive(Subcommand)]
enum SsetCmd {
    Check { file: PathBuf },
    Show { file: PathBuf },
}

#[derive(Subcommand)]
enum SegalCmd {
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
}

#[derive(Subcommand)]
enum GammaCmd {
    /// compose two maps given as JSON {"source","target","images"}
    Compose { first: String, second: String },
    /// image of a monotone map given by its comma-separated values
    Fromdelta {
        values: String,
        #[arg(long)]
        target: usize,
    },
}

struct Outcome {
    exit: i32,
    body: String,
    report: Option<Report>,
}

fn ok_doc(doc: Document) -> Outcome {
    Outcome { exit: EXIT_OK, body: doc::emit_document(&doc), report: None }
}

fn ok_report(r: Report) -> Outcome {
    Outcome { exit: EXIT_OK, body: r.emit(), report: Some(r) }
}

fn fail_report(r: Report) -> Outcome {
    Outcome { exit: EXIT_FAIL, body: r.emit(), report: Some(r) }
}

fn read(path: &PathBuf) -> hocat::Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn load_sset(path: &PathBuf) -> hocat::Result<SSet> {
    match doc::parse_document(&read(path)?)? {
        Document::Sset { payload, .. } => doc::sset_from_doc(&payload),
        _ => Err(Error::Invalid(format!("{}: not an sset document", path.display()))),
    }
}

fn load_nsset(path: &PathBuf) -> hocat::Result<NSSet> {
    match doc::parse_document(&read(path)?)? {
        Document::Nsset { payload, .. } => doc::nsset_from_doc(&payload),
        _ => Err(Error::Invalid(format!("{}: not an nsset document", path.display()))),
    }
}

fn wrap_sset(s: &SSet) -> hocat::Result<Document> {
    Ok(Document::Sset { format_version: FORMAT_VERSION, payload: doc::sset_to_doc(s)? })
}

fn horn_witness_json(target: &SSet, h: &HornInstance) -> serde_json::Value {
    json!({
        "type": "horn",
        "n": h.n,
        "i": h.i,
        "images": doc::smap_to_doc(target, &h.horn_map),
    })
}

fn ref_json(s: &SSet, r: &hocat::SimplexRef) -> serde_json::Value {
    serde_json::to_value(RefDoc {
        base: s.label(r.base_dim, r.base_idx).to_string(),
        degens: r.word.clone(),
    })
    .unwrap()
}

fn segal_witness_json(a: &SSet, p: usize, w: &SegalWitness) -> serde_json::Value {
    match w {
        SegalWitness::NotSurjective(tuple) => json!({
            "type": "not_surjective",
            "p": p,
            "tuple": tuple.iter().map(|r| ref_json(a, r)).collect::<Vec<_>>(),
        }),
        SegalWitness::NotInjective(x, y) => json!({
            "type": "not_injective",
            "p": p,
            "x": ref_json(a, x),
            "y": ref_json(a, y),
        }),
    }
}

fn horn_check(
    command: &str,
    file: &PathBuf,
    max_dim: usize,
    budget: &mut Budget,
    inner_only: bool,
) -> hocat::Result<Outcome> {
    let s = load_sset(file)?;
    let found = if inner_only {
        is_quasicategory(&s, max_dim, budget)?
    } else {
        is_kan(&s, max_dim, budget)?
    };
    let base = Report::new(command, if found.is_none() { "holds" } else { "fails" })
        .bound("max_dim", max_dim as u64);
    Ok(match found {
        None => ok_report(base),
        Some(h) => fail_report(base.witness(horn_witness_json(&s, &h))),
    })
}

fn parse_ref(
    s: &SSet,
    v: &serde_json::Value,
    total_dim: usize,
) -> hocat::Result<hocat::SimplexRef> {
    let r: RefDoc = serde_json::from_value(v.clone())
        .map_err(|e| Error::Invalid(format!("bad reference: {e}")))?;
    let base_dim = total_dim
        .checked_sub(r.degens.len())
        .ok_or_else(|| Error::Invalid("reference has too many degeneracies".into()))?;
    let base_idx = s
        .find(base_dim, &r.base)
        .ok_or_else(|| Error::Invalid(format!("dangling reference {}", r.base)))?;
    Ok(hocat::SimplexRef { base_dim, base_idx, word: r.degens })
}

/// Re-checks the witness of a failing report against the original input;
/// exits 1 exactly when the original verdict is reproduced.
fn replay(file: &PathBuf, report_path: &PathBuf) -> hocat::Result<Outcome> {
    let rep: Report = serde_json::from_str(&read(report_path)?)
        .map_err(|e| Error::Invalid(format!("bad report: {e}")))?;
    let w = rep
        .witness
        .clone()
        .ok_or_else(|| Error::Invalid("report carries no witness".into()))?;
    let wtype = w["type"].as_str().unwrap_or("");
    let reproduced = match wtype {
        "horn" => {
            let s = load_sset(file)?;
            let n = w["n"].as_u64().unwrap_or(0) as usize;
            let i = w["i"].as_u64().unwrap_or(0) as usize;
            let hc = horn(n, i, n.saturating_sub(1).max(1))?;
            let images: SmapDoc = serde_json::from_value(w["images"].clone())
                .map_err(|e| Error::Invalid(format!("bad horn images: {e}")))?;
            let m = doc::smap_from_doc(&hc, &s, &images)?;
            find_filler(&s, &HornInstance { n, i, horn_map: m })?.is_none()
        }
        "not_injective" => {
            let s = load_sset(file)?;
            let p = w["p"].as_u64().unwrap_or(0) as usize;
            let table = segal_map(&s, p)?;
            let x = parse_ref(&s, &w["x"], p)?;
            let y = parse_ref(&s, &w["y"], p)?;
            let spine_of = |r: &hocat::SimplexRef| {
                table.map.iter().find(|(q, _)| q == r).map(|(_, sp)| sp.clone())
            };
            x != y && spine_of(&x).is_some() && spine_of(&x) == spine_of(&y)
        }
        "not_surjective" => {
            let s = load_sset(file)?;
            let p = w["p"].as_u64().unwrap_or(0) as usize;
            let table = segal_map(&s, p)?;
            let tuple = w["tuple"]
                .as_array()
                .ok_or_else(|| Error::Invalid("bad tuple".into()))?
                .iter()
                .map(|v| parse_ref(&s, v, 1))
                .collect::<hocat::Result<Vec<_>>>()?;
            !table.map.iter().any(|(_, sp)| *sp == tuple)
        }
        "left_fractions" => {
            let p = match doc::parse_document(&read(file)?)? {
                Document::Locpair { payload, .. } => doc::locpair_from_doc(&payload)?,
                _ => return Err(Error::Invalid("not a locpair document".into())),
            };
            let rep2 = check_left_fractions(&p);
            let listed = |v: &serde_json::Value, have: &[String]| {
                v.as_array()
                    .map(|a| {
                        a.iter().all(|s| {
                            s.as_str().is_some_and(|s| have.iter().any(|h| h == s))
                        })
                    })
                    .unwrap_or(false)
            };
            listed(&w["cond_i"], &rep2.cond_i_failures)
                && listed(&w["cond_ii"], &rep2.cond_ii_failures)
                && !rep2.ok()
        }
        "segal_precat" => {
            let b = match doc::parse_document(&read(file)?)? {
                Document::Bisset { payload, .. } => doc::bisset_from_doc(&payload)?,
                _ => return Err(Error::Invalid("not a bisset document".into())),
            };
            let a = SegalPrecat::new(b)?;
            let p = w["p"].as_u64().unwrap_or(2) as usize;
            let verdicts = bisimplicial_segal_check(&a, p, &[])?;
            verdicts
                .iter()
                .any(|(q, v)| *q == p && matches!(v, SegalVerdict::Unknown(_)))
        }
        "dk_identities" => {
            let s = load_sset(file)?;
            let max_dim = rep.bounds.get("max_dim").copied().unwrap_or(3) as usize;
            let g = dk_groupoid(&s, max_dim)?;
            !verify_simplicial_groupoid(&g, max_dim)?.ok()
        }
        "nequiv" => {
            let a = load_nsset(file)?;
            let bdoc: doc::NssetDoc = serde_json::from_value(w["b"].clone())
                .map_err(|e| Error::Invalid(format!("bad embedded document: {e}")))?;
            let b = doc::nsset_from_doc(&bdoc)?;
            let maps = nmap_from_value(&w["map"])?;
            let depth = w["depth"].as_u64().unwrap_or(1) as usize;
            !n_equivalence_check(&a, &b, &maps, depth)?
        }
        other => {
            return Err(Error::Invalid(format!("unsupported witness type {other}")))
        }
    };
    let verdict = if reproduced { "fails" } else { "holds" };
    let out = Report::new("replay", verdict).details(json!({"replayed": rep.command}));
    Ok(if reproduced { fail_report(out) } else { ok_report(out) })
}

fn nmap_from_value(v: &serde_json::Value) -> hocat::Result<NMap> {
    let raw: BTreeMap<String, Vec<usize>> = serde_json::from_value(v.clone())
        .map_err(|e| Error::Invalid(format!("bad map: {e}")))?;
    let maps = raw
        .into_iter()
        .map(|(k, m)| {
            let key = if k.is_empty() {
                Vec::new()
            } else {
                k.split(',')
                    .map(|p| {
                        p.parse::<usize>()
                            .map_err(|_| Error::Invalid(format!("bad level key {k}")))
                    })
                    .collect::<hocat::Result<Vec<_>>>()?
            };
            Ok((key, m))
        })
        .collect::<hocat::Result<BTreeMap<_, _>>>()?;
    Ok(NMap { maps })
}

fn gamma_json(g: &GammaMap) -> serde_json::Value {
    json!({
        "source": g.source,
        "target": g.target,
        "images": g.images.iter().map(|s| s.iter().copied().collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn gamma_from_json(text: &str) -> hocat::Result<GammaMap> {
    #[derive(serde::Deserialize)]
    struct Raw {
        source: usize,
        target: usize,
        images: Vec<Vec<usize>>,
    }
    let raw: Raw = serde_json::from_str(text)
        .map_err(|e| Error::Invalid(format!("bad gamma map: {e}")))?;
    GammaMap::new(
        raw.source,
        raw.target,
        raw.images.into_iter().map(|s| s.into_iter().collect()).collect(),
    )
}

fn run(cli: &Cli) -> hocat::Result<Outcome> {
    let mut budget = Budget::new(cli.budget);
    match &cli.cmd {
        Cmd::Sset { sub: SsetCmd::Check { file } } => {
            let s = load_sset(file)?;
            Ok(ok_report(
                Report::new("sset check", "valid")
                    .bound("max_dim", s.max_dim() as u64)
                    .details(json!({"nondegenerate": s.total_nondeg()})),
            ))
        }
        Cmd::Sset { sub: SsetCmd::Show { file } } => Ok(ok_doc(wrap_sset(&load_sset(file)?)?)),
        Cmd::Nerve { file, max_dim } => {
            let c = match doc::parse_document(&read(file)?)? {
                Document::Fincat { payload, .. } => doc::fincat_from_doc(&payload)?,
                _ => return Err(Error::Invalid("not a fincat document".into())),
            };
            Ok(ok_doc(wrap_sset(&nerve(&c, *max_dim).sset)?))
        }
        Cmd::Kan { file, max_dim } => horn_check("kan", file, *max_dim, &mut budget, false),
        Cmd::Quasi { file, max_dim } => {
            horn_check("quasi", file, *max_dim, &mut budget, true)
        }
        Cmd::Ho { file } => {
            let s = load_sset(file)?;
            let c = ho_category(&s, &mut budget)?;
            Ok(ok_doc(Document::Fincat {
                format_version: FORMAT_VERSION,
                payload: doc::fincat_to_doc(&c)?,
            }))
        }
        Cmd::Segalmap { file, max_dim } => {
            let s = load_sset(file)?;
            let base =
                Report::new("segalmap", "strict").bound("max_dim", *max_dim as u64);
            Ok(match is_strict_segal(&s, *max_dim)? {
                None => ok_report(base),
                Some((p, w)) => {
                    let mut r = base.witness(segal_witness_json(&s, p, &w));
                    r.verdict = "fails".into();
                    fail_report(r)
                }
            })
        }
        Cmd::Fromsegal { file } => {
            let s = load_sset(file)?;
            let c = category_from_segal(&s)?;
            Ok(ok_doc(Document::Fincat {
                format_version: FORMAT_VERSION,
                payload: doc::fincat_to_doc(&c)?,
            }))
        }
        Cmd::Sres { n, hom, max_dim } => {
            if hom.len() != 2 {
                return Err(Error::Invalid("--hom takes two object indices".into()));
            }
            let r = s_resolution(&ordinal(*n), *max_dim)?;
            let (i, j) = (hom[0], hom[1]);
            if i > *n || j > *n {
                return Err(Error::Invalid("hom endpoints outside the ordinal".into()));
            }
            Ok(ok_doc(wrap_sset(r.scat.hom(i, j))?))
        }
        Cmd::Interchange => {
            let rep = interchange_square()?;
            Ok(ok_report(
                Report::new("interchange", "one free facet").details(json!({
                    "facets": rep
                        .facets
                        .iter()
                        .map(|((pos, val), hit)| json!({
                            "coord": pos,
                            "value": val,
                            "boundary": hit,
                        }))
                        .collect::<Vec<_>>(),
                    "square_corners": rep.square_corners,
                })),
            ))
        }
        Cmd::Pi0 { file } => {
            let s = load_sset(file)?;
            let classes = pi0_classes(&s);
            let count = classes.iter().copied().max().map_or(0, |c| c + 1);
            Ok(ok_report(Report::new("pi0", "computed").details(json!({
                "classes": count,
                "class_of_vertex": classes,
            }))))
        }
        Cmd::Hcnerve { file, max_dim } => {
            let b = match doc::parse_document(&read(file)?)? {
                Document::Scat { payload, .. } => doc::scat_from_doc(&payload)?,
                _ => return Err(Error::Invalid("not a scat document".into())),
            };
            let n = hc_nerve(&b, *max_dim, &mut budget)?;
            Ok(ok_doc(wrap_sset(n.sset())?))
        }
        Cmd::Gk { file, max_dim } => {
            let s = load_sset(file)?;
            let g = dk_groupoid(&s, *max_dim)?;
            let rep = verify_simplicial_groupoid(&g, *max_dim)?;
            // simplices whose word survives the s_0 quotient freely generate
            let generators: BTreeMap<String, Vec<String>> = (0..=*max_dim)
                .map(|d| {
                    (
                        d.to_string(),
                        g.generators(d)
                            .iter()
                            .filter(|y| !g.gen_word(y).is_identity())
                            .map(|y| g.gen_name(y))
                            .collect(),
                    )
                })
                .collect();
            let base = Report::new("gk", if rep.ok() { "holds" } else { "fails" })
                .bound("max_dim", *max_dim as u64)
                .details(json!({"objects": g.objects(), "generators": generators}));
            Ok(if rep.ok() {
                ok_report(base)
            } else {
                fail_report(base.witness(json!({
                    "type": "dk_identities",
                    "failures": rep.failures,
                })))
            })
        }
        Cmd::Hammock { file, x, y, width, max_len } => {
            match doc::parse_document(&read(file)?)? {
                Document::Hammock { payload, .. } => {
                    let (p, h) = doc::hammock_from_doc(&payload)?;
                    let reduced = reduce_hammock(&p, &h);
                    Ok(ok_doc(Document::Hammock {
                        format_version: FORMAT_VERSION,
                        payload: doc::hammock_to_doc(&p, &reduced)?,
                    }))
                }
                Document::Locpair { payload, .. } => {
                    let p = doc::locpair_from_doc(&payload)?;
                    let (x, y) = match (x, y) {
                        (Some(x), Some(y)) => (x, y),
                        _ => {
                            return Err(Error::Invalid(
                                "enumeration needs --x and --y".into(),
                            ))
                        }
                    };
                    let xo = p
                        .c
                        .find_object(x)
                        .ok_or_else(|| Error::Invalid(format!("dangling reference {x}")))?;
                    let yo = p
                        .c
                        .find_object(y)
                        .ok_or_else(|| Error::Invalid(format!("dangling reference {y}")))?;
                    let all =
                        enumerate_hammocks(&p, xo, yo, *width, *max_len, &mut budget)?;
                    Ok(ok_report(
                        Report::new("hammock", "enumerated")
                            .bound("width", *width as u64)
                            .bound("max_len", *max_len as u64)
                            .details(json!({
                                "count": all.len(),
                                "hammocks": all
                                    .iter()
                                    .map(|h| h.display(&p.c))
                                    .collect::<Vec<_>>(),
                            })),
                    ))
                }
                _ => Err(Error::Invalid("not a hammock or locpair document".into())),
            }
        }
        Cmd::Leftfrac { file } => {
            let p = match doc::parse_document(&read(file)?)? {
                Document::Locpair { payload, .. } => doc::locpair_from_doc(&payload)?,
                _ => return Err(Error::Invalid("not a locpair document".into())),
            };
            let rep = check_left_fractions(&p);
            let base = Report::new("leftfrac", if rep.ok() { "holds" } else { "fails" });
            Ok(if rep.ok() {
                ok_report(base)
            } else {
                fail_report(base.witness(json!({
                    "type": "left_fractions",
                    "cond_i": rep.cond_i_failures,
                    "cond_ii": rep.cond_ii_failures,
                })))
            })
        }
        Cmd::Segal { sub: SegalCmd::Check { file, max_dim } } => {
            let b = match doc::parse_document(&read(file)?)? {
                Document::Bisset { payload, .. } => doc::bisset_from_doc(&payload)?,
                _ => return Err(Error::Invalid("not a bisset document".into())),
            };
            let a = SegalPrecat::new(b)?;
            let verdicts = bisimplicial_segal_check(&a, *max_dim, &[])?;
            let all_strict =
                verdicts.iter().all(|(_, v)| matches!(v, SegalVerdict::Strict));
            let listed: Vec<serde_json::Value> = verdicts
                .iter()
                .map(|(p, v)| match v {
                    SegalVerdict::Strict => json!({"p": p, "verdict": "strict"}),
                    SegalVerdict::CertifiedEquivalent => {
                        json!({"p": p, "verdict": "certified"})
                    }
                    SegalVerdict::Unknown(w) => {
                        json!({"p": p, "verdict": "unknown", "reason": w})
                    }
                })
                .collect();
            let base = Report::new(
                "segal check",
                if all_strict { "strict" } else { "not strict" },
            )
            .bound("max_dim", *max_dim as u64)
            .details(json!(listed));
            Ok(if all_strict {
                ok_report(base)
            } else {
                let first = verdicts
                    .iter()
                    .find_map(|(p, v)| match v {
                        SegalVerdict::Unknown(w) => Some(json!({
                            "type": "segal_precat",
                            "p": p,
                            "reason": w,
                        })),
                        _ => None,
                    })
                    .unwrap();
                fail_report(base.witness(first))
            })
        }
        Cmd::Gamma { sub: GammaCmd::Compose { first, second } } => {
            let a = gamma_from_json(first)?;
            let b = gamma_from_json(second)?;
            let c = gamma_compose(&a, &b)?;
            Ok(ok_report(
                Report::new("gamma compose", "computed").details(gamma_json(&c)),
            ))
        }
        Cmd::Gamma { sub: GammaCmd::Fromdelta { values, target } } => {
            let f = values
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Invalid(format!("bad value {p}")))
                })
                .collect::<hocat::Result<Vec<_>>>()?;
            let g = delta_to_gamma(&f, *target)?;
            Ok(ok_report(
                Report::new("gamma fromdelta", "computed").details(gamma_json(&g)),
            ))
        }
        Cmd::Truncate { file } => {
            let a = load_nsset(file)?;
            let tr = truncate(&a)?;
            let tau: BTreeMap<String, Vec<usize>> = tr
                .tau
                .iter()
                .map(|(m, c)| {
                    (
                        m.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
                        c.clone(),
                    )
                })
                .collect();
            Ok(ok_report(
                Report::new("truncate", "computed").details(json!({
                    "truncated": doc::nsset_to_doc(&tr.t),
                    "tau": tau,
                })),
            ))
        }
        Cmd::Nequiv { a, b, map, depth } => {
            let sa = load_nsset(a)?;
            let sb = load_nsset(b)?;
            let maps = nmap_from_value(
                &serde_json::from_str(&read(map)?)
                    .map_err(|e| Error::Invalid(format!("bad map file: {e}")))?,
            )?;
            let holds = n_equivalence_check(&sa, &sb, &maps, *depth)?;
            let base = Report::new("nequiv", if holds { "holds" } else { "fails" })
                .bound("depth", *depth as u64);
            Ok(if holds {
                ok_report(base)
            } else {
                let map_json: BTreeMap<String, Vec<usize>> = maps
                    .maps
                    .iter()
                    .map(|(m, v)| {
                        (
                            m.iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join(","),
                            v.clone(),
                        )
                    })
                    .collect();
                fail_report(base.witness(json!({
                    "type": "nequiv",
                    "depth": depth,
                    "b": doc::nsset_to_doc(&sb),
                    "map": map_json,
                })))
            })
        }
        Cmd::Replay { file, report } => replay(file, report),
    }
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(out) => {
            match &cli.out {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, &out.body) {
                        eprintln!("error: cannot write {}: {e}", p.display());
                        std::process::exit(EXIT_INVALID);
                    }
                }
                None => print!("{}", out.body),
            }
            if let (Some(p), Some(rep)) = (&cli.witness, &out.report) {
                if rep.witness.is_some() {
                    if let Err(e) = std::fs::write(p, rep.emit()) {
                        eprintln!("error: cannot write {}: {e}", p.display());
                        std::process::exit(EXIT_INVALID);
                    }
                }
            }
            eprintln!("# elapsed: {:?}", start.elapsed());
            std::process::exit(out.exit);
        }
        Err(Error::BudgetExceeded(n)) => {
            eprintln!("error: budget exceeded after {n} search nodes");
            std::process::exit(EXIT_BUDGET);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(EXIT_INVALID);
        }
    }
}

// quiet the unused-constant lint when every path above exits explicitly
const _: i32 = EXIT_OK;
