//! One function per subcommand, each building every output form at once.

use std::fmt::Write;

use anyhow::Result;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use grid_catalan::checks::{fan_battery, random_point, tableaux_battery};
use grid_catalan::complexes::{h_from_f, NonkissingComplex};
use grid_catalan::fan::{facet_inequalities, shard, Fan, Sign};
use grid_catalan::lattice::Poset;
use grid_catalan::tableaux::{descents, enumerate_syt, h_prime};
use grid_catalan::tamari::{congruence_lattice, count_containment_filters, GridTamari};
use grid_catalan::triangles::{
    f_multivariate, f_triangle, h_multivariate, h_triangle, m_triangle, verify_fh, verify_fh_multivariate, verify_fm,
    Triangle,
};
use grid_catalan::wide::WideLattice;
use grid_catalan::{Catalog, Error, SegSet, Shape};

use crate::usage;

/// Largest rank for which `verify-fh` also expands the multivariate identity.
const MULTIVARIATE_RANK: usize = 4;

pub struct Report {
    pub json: Value,
    pub text: String,
    pub dot: Option<String>,
    /// A verification came back negative.
    pub refuted: bool,
}

impl Report {
    fn new(json: Value, text: String) -> Report {
        Report { json, text, dot: None, refuted: false }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Identity {
    FH,
    FM,
}

fn setup(shape: &Shape) -> Result<(Catalog, NonkissingComplex)> {
    let cat = Catalog::new(shape);
    let nk = NonkissingComplex::new(&cat)?;
    Ok((cat, nk))
}

fn seg_list(cat: &Catalog, set: &SegSet) -> Vec<Value> {
    set.ones().map(|s| json!(cat.segment(s))).collect()
}

fn seg_text(cat: &Catalog, set: &SegSet) -> String {
    let parts: Vec<String> = set.ones().map(|s| cat.segment(s).to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn vector_text<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn triangle_text(out: &mut String, name: &str, t: &Triangle) {
    let _ = writeln!(out, "{name} ({}):", t.convention);
    for (i, row) in t.coeffs.iter().enumerate() {
        let _ = writeln!(out, "  {}", vector_text(&row[..=i]));
    }
}

fn hasse_dot(name: &str, poset: &Poset, node: impl Fn(usize) -> String, edge: impl Fn(usize) -> Option<String>) -> String {
    let mut out = format!("digraph {name} {{\n  rankdir=BT;\n");
    for k in 0..poset.len() {
        let _ = writeln!(out, "  n{k} [label={:?}];", node(k));
    }
    for c in poset.covers() {
        match edge(c.label) {
            Some(label) => {
                let _ = writeln!(out, "  n{} -> n{} [label={label:?}];", c.lower, c.upper);
            }
            None => {
                let _ = writeln!(out, "  n{} -> n{};", c.lower, c.upper);
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn facets(shape: &Shape) -> Result<Report> {
    let (cat, nk) = setup(shape)?;
    let f = nk.f_vector();
    let h = h_from_f(&f, cat.rank());
    let facets: Vec<Vec<usize>> = nk.facets().iter().map(|x| x.ones().collect()).collect();
    let json = json!({
        "shape": shape.to_json(),
        "rank": cat.rank(),
        "paths": cat.paths(),
        "num_facets": nk.num_facets(),
        "facets": facets,
        "f_vector": f,
        "h_vector": h,
    });
    let mut text = format!(
        "rank: {}\nfacets: {}\nf-vector: {}\nh-vector: {}\n",
        cat.rank(),
        nk.num_facets(),
        vector_text(&f),
        vector_text(&h)
    );
    for (k, facet) in facets.iter().enumerate() {
        let paths: Vec<String> = facet.iter().map(|&p| cat.path(p).to_string()).collect();
        let _ = writeln!(text, "{k}: {}", paths.join(" "));
    }
    Ok(Report::new(json, text))
}

pub fn tamari(shape: &Shape) -> Result<Report> {
    let (cat, nk) = setup(shape)?;
    let gt = GridTamari::new(&nk)?;
    let poset = gt.poset();
    let covers: Vec<Value> = poset
        .covers()
        .iter()
        .map(|c| json!({"lower": c.lower, "upper": c.upper, "label": cat.segment(c.label)}))
        .collect();
    let json = json!({
        "elements": gt.len(),
        "bottom": gt.bottom(),
        "top": gt.top(),
        "covers": covers,
    });
    let mut text = format!("elements: {}\ncovers: {}\n", gt.len(), poset.covers().len());
    for c in poset.covers() {
        let _ = writeln!(text, "{} < {} by {}", c.lower, c.upper, cat.segment(c.label));
    }
    let dot = hasse_dot("tamari", poset, |k| k.to_string(), |s| Some(cat.segment(s).to_string()));
    Ok(Report { dot: Some(dot), ..Report::new(json, text) })
}

pub fn triangles(shape: &Shape) -> Result<Report> {
    let (cat, nk) = setup(shape)?;
    let f = f_triangle(&cat, &nk);
    let h = h_triangle(&cat);
    let m = m_triangle(&WideLattice::new(&cat)?);
    let json = json!({"rank": cat.rank(), "F": f, "H": h, "M": m});
    let mut text = String::new();
    for (name, t) in [("F", &f), ("H", &h), ("M", &m)] {
        triangle_text(&mut text, name, t);
    }
    Ok(Report::new(json, text))
}

pub fn verify(shape: &Shape, identity: Identity) -> Result<Report> {
    let (cat, nk) = setup(shape)?;
    let f = f_triangle(&cat, &nk);
    let r = cat.rank();
    let (name, outcome, multivariate) = match identity {
        Identity::FH => {
            let h = h_triangle(&cat);
            let mut outcome = verify_fh(&f, &h);
            let multivariate = r <= MULTIVARIATE_RANK;
            if outcome.is_ok() && multivariate {
                outcome = verify_fh_multivariate(&f_multivariate(&cat, &nk), &h_multivariate(&cat), r);
            }
            ("F=H", outcome, multivariate)
        }
        Identity::FM => ("F=M", verify_fm(&f, &m_triangle(&WideLattice::new(&cat)?)), false),
    };
    let status = if outcome.is_ok() { "CONFIRMED" } else { "REFUTED" };
    let json = json!({
        "identity": name,
        "shape": shape.to_json(),
        "rank": r,
        "multivariate": multivariate,
        "status": status,
        "detail": outcome.as_ref().err(),
    });
    let text = match &outcome {
        Ok(()) => format!("{name}: {status} (rank {r})\n"),
        Err(e) => format!("{name}: {status} on {}: {e}\n", shape.to_json()),
    };
    Ok(Report { refuted: outcome.is_err(), ..Report::new(json, text) })
}

fn sign_name(sign: Sign) -> &'static str {
    match sign {
        Sign::NonNegative => ">= 0",
        Sign::NonPositive => "<= 0",
    }
}

fn inequalities_json(cat: &Catalog, ineqs: &[(usize, Sign)]) -> Vec<Value> {
    ineqs.iter().map(|&(s, sign)| json!({"segment": cat.segment(s), "sign": sign})).collect()
}

pub fn shards(shape: &Shape) -> Result<Report> {
    let (cat, nk) = setup(shape)?;
    let gt = GridTamari::new(&nk)?;
    let fan = Fan::new(&cat, &nk)?;
    let rays: Vec<Value> = (0..cat.num_paths()).map(|p| json!({"path": cat.path(p), "g": fan.ray(p)})).collect();
    let facets: Vec<Value> = (0..nk.num_facets())
        .map(|f| {
            json!({
                "paths": nk.facet(f).ones().collect::<Vec<_>>(),
                "inequalities": inequalities_json(&cat, &facet_inequalities(&cat, &gt, f)),
            })
        })
        .collect();
    let shards: Vec<_> = (0..cat.num_segments()).map(|s| shard(&cat, s)).collect();
    let shard_json: Vec<Value> = shards
        .iter()
        .map(|sh| {
            json!({
                "segment": cat.segment(sh.segment),
                "paths": sh.paths.ones().collect::<Vec<_>>(),
                "inequalities": inequalities_json(&cat, &sh.inequalities),
            })
        })
        .collect();
    let json = json!({"rank": cat.rank(), "rays": rays, "facets": facets, "shards": shard_json});
    let mut text = format!("rank: {}\nrays: {}\n", cat.rank(), cat.num_paths());
    for p in 0..cat.num_paths() {
        let _ = writeln!(text, "  {p}: {} g = {:?}", cat.path(p), fan.ray(p));
    }
    let _ = writeln!(text, "shards: {}", shards.len());
    for sh in &shards {
        let ineqs: Vec<String> = sh
            .inequalities
            .iter()
            .map(|&(t, sign)| format!("a{} {}", cat.segment(t), sign_name(sign)))
            .collect();
        let _ = writeln!(
            text,
            "  {}: {} paths; a{} = 0, {}",
            cat.segment(sh.segment),
            sh.paths.count_ones(..),
            cat.segment(sh.segment),
            ineqs.join(", ")
        );
    }
    Ok(Report::new(json, text))
}

pub fn fan_check(shape: &Shape, points: usize, seed: u64) -> Result<Report> {
    let (cat, nk) = setup(shape)?;
    let fan = Fan::new(&cat, &nk)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample: Vec<_> = (0..points).map(|_| random_point(&mut rng, cat.rank())).collect();
    let unique = sample
        .par_iter()
        .filter(|x| {
            let Ok(loc) = fan.locate(x) else { return false };
            let star: Vec<usize> = (0..nk.num_facets()).filter(|&f| loc.face.is_subset(nk.facet(f))).collect();
            nk.graph().is_face(&loc.face)
                && loc.facets == star
                && loc.coefficients.len() == loc.face.count_ones(..)
                && loc.coefficients.iter().all(|(_, c)| *c > 0.into())
        })
        .count();
    // Ridges against shards, shard inequalities and interval cones.
    let structure = fan_battery(shape, 0, seed).map(|_| ());
    let ok = unique == points && structure.is_ok();
    let json = json!({
        "points": points,
        "seed": seed,
        "unique": unique,
        "structure": structure.as_ref().err(),
        "status": if ok { "CONFIRMED" } else { "REFUTED" },
    });
    let mut text = format!("unique-cone: {unique}/{points}\n");
    if let Err(e) = &structure {
        let _ = writeln!(text, "structure: {e}");
    }
    Ok(Report { refuted: !ok, ..Report::new(json, text) })
}

pub fn tableaux(shape: &Shape) -> Result<Report> {
    let cat = Catalog::new(shape);
    let syt = match enumerate_syt(shape) {
        Err(Error::NotReflectedSkew) => return Err(usage("tableaux needs a reflected skew shape")),
        other => other?,
    };
    let described = syt
        .par_iter()
        .map(|t| Ok(json!({"rows": t, "descents": seg_list(&cat, &descents(&cat, t)?)})))
        .collect::<Result<Vec<Value>, Error>>()?;
    let hp = h_prime(&cat)?;
    let battery = tableaux_battery(shape);
    let json = json!({
        "count": syt.len(),
        "tableaux": described,
        "h_prime": hp,
        "status": if battery.is_ok() { "CONFIRMED" } else { "REFUTED" },
        "detail": battery.as_ref().err(),
    });
    let mut text = format!("tableaux: {}\n", syt.len());
    for t in &syt {
        let rows: Vec<String> = t
            .rows()
            .iter()
            .map(|row| row.iter().map(|c| c.map_or("-".to_string(), |k| k.to_string())).collect::<Vec<_>>().join(" "))
            .collect();
        let _ = writeln!(text, "{}  des {}", rows.join(" / "), seg_text(&cat, &descents(&cat, t)?));
    }
    let _ = writeln!(text, "H' (x^i y^j):");
    for (i, row) in hp.iter().enumerate() {
        let _ = writeln!(text, "  {}", vector_text(&row[..=i]));
    }
    let _ = match &battery {
        Ok(()) => writeln!(text, "descents, reconstruction, twist, H = H': CONFIRMED"),
        Err(e) => writeln!(text, "REFUTED: {e}"),
    };
    Ok(Report { refuted: battery.is_err(), ..Report::new(json, text) })
}

pub fn congruences(shape: &Shape) -> Result<Report> {
    let (cat, nk) = setup(shape)?;
    let lattice = GridTamari::new(&nk)?.lattice()?;
    let report = congruence_lattice(&cat, &nk, &lattice)?;
    let filters = count_containment_filters(&cat);
    let json = json!({
        "congruences": report.congruences,
        "order_filters": filters,
        "join_irreducibles": report.join_irreducibles,
        "segments": report.segments,
        "uniform": report.uniform,
        "theta_by_containment": report.theta_by_containment,
        "filters_match": report.filters_match,
        "status": if report.ok() { "CONFIRMED" } else { "REFUTED" },
    });
    let text = format!(
        "congruences: {}\norder filters of (Seg, containment): {filters}\njoin-irreducibles: {}\nsegments: {}\ncongruence uniform: {}\n",
        report.congruences, report.join_irreducibles, report.segments, report.uniform
    );
    Ok(Report { refuted: !report.ok(), ..Report::new(json, text) })
}

pub fn wide(shape: &Shape) -> Result<Report> {
    let cat = Catalog::new(shape);
    let w = WideLattice::new(&cat)?;
    let elements: Vec<Value> = (0..w.len())
        .map(|k| json!({"segments": seg_list(&cat, &w.sets()[k]), "rank": w.rank(k)}))
        .collect();
    let covers: Vec<[usize; 2]> = w.poset().covers().iter().map(|c| [c.lower, c.upper]).collect();
    let json = json!({
        "elements": elements,
        "covers": covers,
        "rank_generating": w.rank_generating(),
    });
    let mut text = format!("wide sets: {}\nrank-generating: {}\n", w.len(), vector_text(&w.rank_generating()));
    for k in 0..w.len() {
        let _ = writeln!(text, "{k}: rank {} {}", w.rank(k), seg_text(&cat, &w.sets()[k]));
    }
    let dot = hasse_dot("wide", w.poset(), |k| seg_text(&cat, &w.sets()[k]), |_| None);
    Ok(Report { dot: Some(dot), ..Report::new(json, text) })
}
