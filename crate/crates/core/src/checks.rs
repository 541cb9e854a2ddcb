//! Exhaustive verification batteries shared by the test suites and the CLI.
//!
//! Each battery returns `Err` with a human-readable description of the first
//! failed property.

use std::collections::{BTreeSet, HashSet};

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::biclosed::{bic_join, bic_meet, closure, down_projection, enumerate_biclosed, eta, is_biclosed, phi};
use crate::catalog::{Catalog, SegSet};
use crate::complexes::{h_from_f, isolated_lazy, CompatGraph, NonkissingComplex};
use crate::fan::{
    alpha, facet_inequalities, max_face_size, satisfies, scale_to_integers, shard, shard_paths, Fan, Rational,
    ShardOrder, Sign,
};
use crate::kostant::kostant_volume;
use crate::lattice::Lattice;
use crate::paths::Walk;
use crate::shape::Shape;
use crate::tableaux::{
    descent_graph, descents, enumerate_syt, h_prime, is_valid_descent_set, tableau_from_descents, twist, Family,
};
use crate::tamari::{canonical_join_rep, congruence_lattice, GridTamari};
use crate::triangles::{
    f_multivariate, f_triangle, h_multivariate, h_triangle, m_triangle, specialize, verify_fh,
    verify_fh_multivariate, verify_fm,
};
use crate::wide::{psi_l, WideLattice, WideRules};

pub type CheckResult = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn show(cat: &Catalog, set: &SegSet) -> String {
    let parts: Vec<String> = set.ones().map(|s| cat.segment(s).to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Semidistributivity, congruence uniformity, congruences as order filters,
/// canonical join representations and descent sets of the Grid-Tamari lattice.
pub fn tamari_battery(cat: &Catalog, nk: &NonkissingComplex) -> CheckResult {
    let gt = GridTamari::new(nk).map_err(err)?;
    let lattice = gt.lattice().map_err(err)?;
    ensure!(lattice.is_semidistributive(), "Grid-Tamari lattice is not semidistributive");
    let report = congruence_lattice(cat, nk, &lattice).map_err(err)?;
    ensure!(report.ok(), "congruence check failed: {report:?}");

    let nf = CompatGraph::nonfriendly(cat);
    let mut descent_sets = HashSet::new();
    for f in 0..lattice.len() {
        let des = gt.descents(cat, f);
        ensure!(nf.is_face(&des), "Des of facet {f} is not a nonfriendly face");
        descent_sets.insert(des);
        let rep = canonical_join_rep(cat, nk, &gt, f).map_err(err)?;
        ensure!(rep == canonical_joinands(&lattice, f), "canonical join representation of facet {f} differs");
        ensure!(lattice.join_all(rep.iter().copied()) == f, "canonical joinands of {f} do not join to it");
    }
    let faces = nf.faces().count();
    ensure!(
        descent_sets.len() == lattice.len() && faces == lattice.len(),
        "{} facets, {} distinct descent sets, {} nonfriendly faces",
        lattice.len(),
        descent_sets.len(),
        faces
    );
    Ok(())
}

/// For each lower cover `x ⋖ f`, the unique minimal `z` with `x ∨ z = f`.
fn canonical_joinands(lattice: &Lattice, f: usize) -> Vec<usize> {
    let poset = lattice.poset();
    let mut out: Vec<usize> = poset
        .lower_covers(f)
        .map(|c| {
            let solutions: Vec<usize> = poset.down_set(f).ones().filter(|&z| lattice.join(c.lower, z) == f).collect();
            let minimal: Vec<usize> = solutions
                .iter()
                .copied()
                .filter(|&z| solutions.iter().all(|&w| w == z || !poset.le(w, z)))
                .collect();
            assert_eq!(minimal.len(), 1, "joinand not unique in a semidistributive lattice");
            minimal[0]
        })
        .collect();
    out.sort();
    out
}

/// The maps `η`, `φ`, `X^↓` and the lattice operations of biclosed sets.
pub fn biclosed_battery(cat: &Catalog, nk: &NonkissingComplex) -> CheckResult {
    let gt = GridTamari::new(nk).map_err(err)?;
    let lattice = gt.lattice().map_err(err)?;
    let bics = enumerate_biclosed(cat);

    for x in &bics {
        ensure!(
            x.is_clear() || x.ones().any(|s| {
                let mut y = x.clone();
                y.remove(s);
                is_biclosed(cat, &y)
            }),
            "biclosed {} has no biclosed subset one smaller",
            show(cat, x)
        );
    }

    let mut etas = Vec::with_capacity(bics.len());
    let mut minimal = BTreeSet::new();
    for x in &bics {
        let facet = eta(cat, x).map_err(err)?;
        let id = nk.facet_id(&facet).ok_or_else(|| format!("eta({}) is not a facet", show(cat, x)))?;
        for p in facet.ones() {
            ensure!(
                cat.path_sw(p).is_subset(x) && cat.path_ne(p).is_disjoint(x),
                "A_p or K_p condition fails for a path of eta({})",
                show(cat, x)
            );
        }
        let down = down_projection(cat, x);
        ensure!(phi(cat, &facet) == down, "phi(eta(X)) differs from X-down for X = {}", show(cat, x));
        minimal.insert(down);
        etas.push(id);
    }
    ensure!(minimal.len() == nk.num_facets(), "{} minimal sets for {} facets", minimal.len(), nk.num_facets());

    let phis: Vec<SegSet> = nk.facets().iter().map(|f| phi(cat, f)).collect();
    for (f, x) in phis.iter().enumerate() {
        ensure!(is_biclosed(cat, x), "phi of facet {f} is not biclosed");
        ensure!(eta(cat, x).map_err(err)? == *nk.facet(f), "eta(phi(F)) differs from F for facet {f}");
        for (g, y) in phis.iter().enumerate() {
            ensure!(
                lattice.poset().le(f, g) == x.is_subset(y),
                "phi is not an order embedding at facets {f}, {g}"
            );
        }
    }

    for (a, x) in bics.iter().enumerate() {
        for (b, y) in bics.iter().enumerate().skip(a) {
            let join = bic_join(cat, x, y);
            let meet = bic_meet(cat, x, y);
            ensure!(is_biclosed(cat, &join) && is_biclosed(cat, &meet), "join or meet is not biclosed");
            let mut common = x.clone();
            common.intersect_with(y);
            ensure!(meet.is_subset(&common), "meet is not a lower bound");
            let mut both = x.clone();
            both.union_with(y);
            ensure!(both.is_subset(&join), "join is not an upper bound");
            for z in &bics {
                ensure!(!z.is_subset(&common) || z.is_subset(&meet), "meet is not the greatest lower bound");
                ensure!(!both.is_subset(z) || join.is_subset(z), "join is not the least upper bound");
            }
            let ej = nk.facet_id(&eta(cat, &join).map_err(err)?).expect("facet");
            let em = nk.facet_id(&eta(cat, &meet).map_err(err)?).expect("facet");
            ensure!(ej == lattice.join(etas[a], etas[b]), "eta does not preserve joins");
            ensure!(em == lattice.meet(etas[a], etas[b]), "eta does not preserve meets");
            if down_projection(cat, x) == *x && down_projection(cat, y) == *y {
                ensure!(down_projection(cat, &meet) == meet, "meet of minimal sets is not minimal");
            }
        }
    }

    for s in 0..cat.num_segments() {
        for t in 0..cat.num_segments() {
            let mut extra = closure(cat, &cat.segset([s, t]));
            extra.remove(s);
            extra.remove(t);
            let allowed: Vec<usize> = cat
                .concatenations()
                .iter()
                .filter(|&&(a, b, _)| (a, b) == (s, t) || (a, b) == (t, s))
                .map(|&(_, _, u)| u)
                .collect();
            ensure!(extra.ones().all(|u| allowed.contains(&u)), "closure of a pair adds a non-concatenation");
        }
    }
    Ok(())
}

/// `W ∪ closure((X ∪ Y) ∖ W)` is biclosed whenever `W ⊆ X ∩ Y` are biclosed.
pub fn biclosed_w_union(cat: &Catalog) -> CheckResult {
    let bics = enumerate_biclosed(cat);
    for x in &bics {
        for y in &bics {
            let mut common = x.clone();
            common.intersect_with(y);
            let mut both = x.clone();
            both.union_with(y);
            for w in bics.iter().filter(|w| w.is_subset(&common)) {
                let mut rest = both.clone();
                rest.difference_with(w);
                let mut z = closure(cat, &rest);
                z.union_with(w);
                ensure!(is_biclosed(cat, &z), "W-union property fails");
            }
        }
    }
    Ok(())
}

/// Descents of `F` in `λ` are the transposed ascents of the transposed facet in `λ^tr`.
pub fn transpose_duality(shape: &Shape) -> CheckResult {
    let cat = Catalog::new(shape);
    let nk = NonkissingComplex::new(&cat).map_err(err)?;
    let gt = GridTamari::new(&nk).map_err(err)?;
    let tcat = Catalog::new(&shape.transpose());
    let tnk = NonkissingComplex::new(&tcat).map_err(err)?;
    let tgt = GridTamari::new(&tnk).map_err(err)?;
    let seg_map: Vec<usize> = cat
        .segments()
        .iter()
        .map(|s| tcat.segment_id(&s.transpose()).expect("transposed segment"))
        .collect();
    for f in 0..nk.num_facets() {
        let mut tf = FixedBitSet::with_capacity(tcat.num_paths());
        for p in nk.facet(f).ones() {
            tf.insert(tcat.path_id(&cat.path(p).transpose()).ok_or("transposed path missing")?);
        }
        let g = tnk.facet_id(&tf).ok_or("transposed facet missing")?;
        let des = tcat.segset(gt.descents(&cat, f).ones().map(|s| seg_map[s]));
        ensure!(des == tgt.ascents(&tcat, g), "descent/ascent duality fails at facet {f}");
    }
    ensure!(
        cat.segments().iter().all(|s| s.transpose().vertices().len() == s.vertices().len()),
        "transpose changes segment length"
    );
    Ok(())
}

/// Every lattice-side check on one shape.
pub fn lattice_battery(shape: &Shape) -> CheckResult {
    let cat = Catalog::new(shape);
    let nk = NonkissingComplex::new(&cat).map_err(err)?;
    tamari_battery(&cat, &nk)?;
    biclosed_battery(&cat, &nk)?;
    transpose_duality(shape)
}

/// `Ψ^f ≅ Ψ^l ≅ Ψ^w`, gradedness by `|NF(T)|`, and the rank-generating
/// polynomial against the h-vector.
pub fn shard_battery(shape: &Shape) -> CheckResult {
    let cat = Catalog::new(shape);
    let nk = NonkissingComplex::new(&cat).map_err(err)?;
    let gt = GridTamari::new(&nk).map_err(err)?;
    let lattice = gt.lattice().map_err(err)?;
    let wide = WideLattice::new(&cat).map_err(err)?;
    ensure!(wide.poset().is_lattice(), "wide sets do not form a lattice");
    let h = h_from_f(&nk.f_vector(), cat.rank());
    let ranks: Vec<i128> = wide.rank_generating().iter().map(|&c| c as i128).collect();
    ensure!(ranks == h, "rank-generating polynomial {ranks:?} differs from h-vector {h:?}");

    // Ψ^l: ψ(F) is the closure of Des(F), and distinct facets give distinct sets.
    let mut seen = HashSet::new();
    for f in 0..lattice.len() {
        let psi = psi_l(&cat, &lattice, f);
        ensure!(psi == closure(&cat, &gt.descents(&cat, f)), "psi of facet {f} is not the closure of its descents");
        ensure!(wide.index_of(&psi).is_some(), "psi of facet {f} is not wide");
        seen.insert(psi);
    }
    ensure!(seen.len() == wide.len(), "psi is not a bijection onto the wide sets");

    // Ψ^f: every intersection of shards corresponds to its wide set of shards.
    let order = ShardOrder::new(&cat, &nk).map_err(err)?;
    ensure!(order.len() == wide.len(), "{} shard intersections for {} wide sets", order.len(), wide.len());
    let shards: Vec<FixedBitSet> = (0..cat.num_segments()).map(|s| shard_paths(&cat, s)).collect();
    let mut image = Vec::with_capacity(order.len());
    for z in 0..order.len() {
        let t = order.segments(z);
        let k = wide.index_of(t).ok_or_else(|| format!("shards containing element {z} are not a wide set"))?;
        ensure!(order.codim(z) == wide.rank(k), "codimension of element {z} differs from |NF(T)|");
        let mut back = FixedBitSet::with_capacity(cat.num_paths());
        back.insert_range(..);
        for s in t.ones() {
            back.intersect_with(&shards[s]);
        }
        ensure!(back == *order.paths(z), "element {z} is not the intersection of its shards");
        image.push(k);
    }
    ensure!(image.iter().collect::<HashSet<_>>().len() == image.len(), "shard intersections collide");
    for a in 0..order.len() {
        for b in 0..order.len() {
            ensure!(
                order.poset().le(a, b) == wide.poset().le(image[a], image[b]),
                "order differs between shard intersections {a} and {b}"
            );
        }
    }
    ensure!(order.poset().is_lattice(), "shard intersections do not form a lattice");

    let nf = CompatGraph::nonfriendly(&cat);
    for x in nf.faces() {
        let mut z = FixedBitSet::with_capacity(cat.num_paths());
        z.insert_range(..);
        for s in x.ones() {
            z.intersect_with(&shards[s]);
        }
        let codim = cat.rank() - max_face_size(nk.graph(), &z);
        ensure!(codim == x.count_ones(..), "nonfriendly {} cuts codimension {codim}", show(&cat, &x));
    }
    shard_claims(&cat, &shards)
}

/// The three intersection claims as identities between shard path sets.
fn shard_claims(cat: &Catalog, shards: &[FixedBitSet]) -> CheckResult {
    let meet = |a: usize, b: usize| {
        let mut z = shards[a].clone();
        z.intersect_with(&shards[b]);
        z
    };
    for &(s, t, u) in cat.concatenations() {
        ensure!(meet(s, t) == meet(s, u) && meet(s, u) == meet(t, u), "first shard claim fails");
    }
    let rules = WideRules::new(cat);
    for &(u, s1, t, s2) in rules.splits() {
        let z = meet(u, t);
        ensure!(z.is_subset(&shards[s1]) && z.is_subset(&shards[s2]), "second shard claim fails");
    }
    for (s, t, along) in rules.friendly() {
        let z = meet(*s, *t);
        ensure!(along.ones().all(|u| z.is_subset(&shards[u])), "third shard claim fails");
    }
    Ok(())
}

/// A random rational point with small numerators and denominators.
pub fn random_point<R: Rng>(rng: &mut R, r: usize) -> Vec<Rational> {
    (0..r).map(|_| Rational::new(rng.gen_range(-6..=6), rng.gen_range(1..=3))).collect()
}

/// Outcome of the sampled fan checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FanReport {
    pub points: usize,
    pub unique: usize,
}

/// Sampled checks of completeness and simpliciality, facet inequalities,
/// ridges against shards, shard inequalities, adjacent cones and intervals.
pub fn fan_battery(shape: &Shape, points: usize, seed: u64) -> std::result::Result<FanReport, String> {
    let cat = Catalog::new(shape);
    let nk = NonkissingComplex::new(&cat).map_err(err)?;
    let gt = GridTamari::new(&nk).map_err(err)?;
    let fan = Fan::new(&cat, &nk).map_err(err)?;
    let r = cat.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inequalities: Vec<Vec<(usize, Sign)>> = (0..nk.num_facets()).map(|f| facet_inequalities(&cat, &gt, f)).collect();

    let mut unique = 0;
    for _ in 0..points {
        let x = random_point(&mut rng, r);
        let xi = scale_to_integers(&x);
        let loc = fan.locate(&x).map_err(err)?;
        ensure!(nk.graph().is_face(&loc.face), "located support is not a face");
        let expected: Vec<usize> = (0..nk.num_facets()).filter(|&f| loc.face.is_subset(nk.facet(f))).collect();
        ensure!(loc.facets == expected, "containing facets differ from the star of the located face");
        for f in 0..nk.num_facets() {
            ensure!(
                fan.contains(f, &xi) == satisfies(&cat, &inequalities[f], &xi),
                "facet {f} inequalities disagree with its rays"
            );
        }
        unique += 1;
    }

    let shards: Vec<FixedBitSet> = (0..cat.num_segments()).map(|s| shard_paths(&cat, s)).collect();
    for e in nk.flips() {
        let mut ridge = nk.facet(e.source).clone();
        ridge.remove(e.removed);
        ensure!(ridge.is_subset(&shards[e.label]), "ridge labelled {} is not in its shard", cat.segment(e.label));
        for q in ridge.ones() {
            ensure!(alpha(&cat, e.label, fan.ray(q)) == 0, "ridge ray off the wall");
        }
        ensure!(
            alpha(&cat, e.label, fan.ray(e.removed)) == -1 && alpha(&cat, e.label, fan.ray(e.added)) == 1,
            "flip rays on the wrong sides of the wall"
        );
        let sh = shard(&cat, e.label);
        for _ in 0..8 {
            let x = random_combination(&mut rng, &fan, ridge.ones());
            ensure!(alpha(&cat, e.label, &x) == 0 && satisfies(&cat, &sh.inequalities, &x), "ridge point outside its shard");
            ensure!(fan.contains(e.source, &x) && fan.contains(e.target, &x), "ridge point outside a facet");
        }
        // C(F) ∩ C(F') = C(F ∩ F').
        for _ in 0..8 {
            let x = random_combination(&mut rng, &fan, nk.facet(e.source).ones());
            if fan.contains(e.target, &x) {
                let loc = fan.locate(&to_rational(&x)).map_err(err)?;
                ensure!(loc.face.is_subset(&ridge), "common point of adjacent cones is off their ridge");
            }
        }
    }

    // The inequality description of each shard covers only faces of the shard.
    let mut hits = 0usize;
    for s in 0..cat.num_segments() {
        let sh = shard(&cat, s);
        let first = cat.segment_vertices(s).next().expect("segments are nonempty");
        for _ in 0..64 {
            let mut x: Vec<i128> = (0..r).map(|_| rng.gen_range(-2..=2)).collect();
            x[first] = 0;
            x[first] = -alpha(&cat, s, &x);
            if !satisfies(&cat, &sh.inequalities, &x) {
                continue;
            }
            hits += 1;
            let loc = fan.locate(&to_rational(&x)).map_err(err)?;
            ensure!(loc.face.is_subset(&sh.paths), "point of the shard cone {} lies on a face outside it", cat.segment(s));
        }
    }

    ensure!(hits > 0 || r == 0, "no sampled point satisfied any shard inequalities");

    // Unions of cones over intervals are cut out by descents of the bottom and ascents of the top.
    let lattice = gt.lattice().map_err(err)?;
    for _ in 0..16 {
        let f1 = rng.gen_range(0..lattice.len());
        let above: Vec<usize> = lattice.poset().up_set(f1).ones().collect();
        let f2 = above[rng.gen_range(0..above.len())];
        let mut cone = Vec::new();
        for s in gt.descents(&cat, f1).ones() {
            cone.extend(cat.seg_sw(s).ones().map(|t| (t, Sign::NonNegative)));
        }
        for s in gt.ascents(&cat, f2).ones() {
            cone.extend(cat.seg_ne(s).ones().map(|t| (t, Sign::NonPositive)));
        }
        for _ in 0..64 {
            let x = random_point(&mut rng, r);
            let xi = scale_to_integers(&x);
            let loc = fan.locate(&x).map_err(err)?;
            let in_union = loc.facets.iter().any(|&f| lattice.poset().le(f1, f) && lattice.poset().le(f, f2));
            ensure!(in_union == satisfies(&cat, &cone, &xi), "interval [{f1}, {f2}] differs from its cone");
        }
    }
    Ok(FanReport { points, unique })
}

fn random_combination<R: Rng>(rng: &mut R, fan: &Fan, rays: impl Iterator<Item = usize>) -> Vec<i128> {
    let mut x = vec![0i128; fan.rank()];
    for p in rays {
        let c: i128 = rng.gen_range(0..=3);
        for (xi, &g) in x.iter_mut().zip(fan.ray(p)) {
            *xi += c * g as i128;
        }
    }
    x
}

fn to_rational(x: &[i128]) -> Vec<Rational> {
    x.iter().map(|&v| Rational::from_integer(v as i64)).collect()
}

/// Random linear extensions of the Grid-Tamari order are shellings whose
/// restriction sizes count lower covers and reproduce the h-vector.
pub fn shelling_check(shape: &Shape, extensions: usize, seed: u64) -> CheckResult {
    let cat = Catalog::new(shape);
    let nk = NonkissingComplex::new(&cat).map_err(err)?;
    let gt = GridTamari::new(&nk).map_err(err)?;
    let h = h_from_f(&nk.f_vector(), cat.rank());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..extensions {
        let order = gt.poset().random_linear_extension(&mut rng);
        let sizes = nk.shelling_restrictions(&order).map_err(err)?;
        let mut from_shelling = vec![0i128; cat.rank() + 1];
        for (&f, &size) in order.iter().zip(&sizes) {
            ensure!(size == gt.poset().lower_covers(f).count(), "restriction of facet {f} differs from its lower covers");
            from_shelling[size] += 1;
        }
        ensure!(from_shelling == h, "shelling h-vector {from_shelling:?} differs from {h:?}");
    }
    Ok(())
}

/// Reconstruction from descents, the descent-set characterization, the twist
/// map in both directions and `H = H'` on a reflected skew shape.
pub fn tableaux_battery(shape: &Shape) -> CheckResult {
    let cat = Catalog::new(shape);
    let syt = enumerate_syt(shape).map_err(err)?;
    ensure!(
        syt.len() as u128 == shape.cell_poset().count_linear_extensions(),
        "{} tableaux but {} linear extensions",
        syt.len(),
        shape.cell_poset().count_linear_extensions()
    );
    let mut descent_sets = HashSet::new();
    for t in &syt {
        let des = descents(&cat, t).map_err(err)?;
        ensure!(is_valid_descent_set(&cat, &des), "descent set {} fails the characterization", show(&cat, &des));
        ensure!(tableau_from_descents(&cat, &des).map_err(err)? == *t, "reconstruction differs for {:?}", t.rows());
        ensure!(descent_sets.insert(des), "two tableaux share a descent set");
    }
    let valid = descent_graph(&cat).faces().count();
    ensure!(valid == syt.len(), "{valid} valid descent sets for {} tableaux", syt.len());

    let nf = CompatGraph::nonfriendly(&cat);
    let mut images = HashSet::new();
    for x in &descent_sets {
        let y = twist(&cat, x, Family::Descent).map_err(err)?;
        ensure!(nf.is_face(&y), "twist of {} is not nonfriendly", show(&cat, x));
        ensure!(y.count_ones(..) == x.count_ones(..), "twist changes the size of {}", show(&cat, x));
        ensure!(
            isolated_lazy(&cat, &y).count_ones(..) == isolated_lazy(&cat, x).count_ones(..),
            "twist changes the isolated lazy count of {}",
            show(&cat, x)
        );
        ensure!(twist(&cat, &y, Family::Nonfriendly).map_err(err)? == *x, "twist does not invert on {}", show(&cat, x));
        images.insert(y);
    }
    ensure!(images.len() == nf.faces().count(), "twist is not onto the nonfriendly faces");

    let h: Vec<Vec<i128>> = h_prime(&cat)
        .map_err(err)?
        .into_iter()
        .map(|row| row.into_iter().map(|c| c as i128).collect())
        .collect();
    ensure!(h == h_triangle(&cat).coeffs, "H' differs from H");
    Ok(())
}

/// All the counts that equal the number of facets, returned when they agree.
pub fn counting_chain(shape: &Shape) -> std::result::Result<u128, String> {
    let cat = Catalog::new(shape);
    let nk = NonkissingComplex::new(&cat).map_err(err)?;
    let gt = GridTamari::new(&nk).map_err(err)?;
    let facets = nk.num_facets() as u128;
    let descent_images = (0..nk.num_facets()).map(|f| gt.descents(&cat, f)).collect::<HashSet<_>>().len() as u128;
    let nf_faces = CompatGraph::nonfriendly(&cat).faces().count() as u128;
    let wide = WideLattice::new(&cat).map_err(err)?.len() as u128;
    let volume = kostant_volume(shape);
    let mut counts = vec![
        ("facets", facets),
        ("distinct descent sets", descent_images),
        ("nonfriendly faces", nf_faces),
        ("wide sets", wide),
        ("Kostant volume", volume),
    ];
    if shape.is_reflected_skew() {
        counts.push(("tableaux", enumerate_syt(shape).map_err(err)?.len() as u128));
        counts.push(("linear extensions", shape.cell_poset().count_linear_extensions()));
    }
    ensure!(counts.iter().all(|&(_, c)| c == facets), "counts disagree: {counts:?}");
    Ok(facets)
}

/// Shape of the three triangles, their row sums, and the F=H and F=M identities.
pub fn triangle_battery(shape: &Shape) -> CheckResult {
    let cat = Catalog::new(shape);
    let nk = NonkissingComplex::new(&cat).map_err(err)?;
    let r = cat.rank();
    let f = f_triangle(&cat, &nk);
    let h = h_triangle(&cat);
    let m = m_triangle(&WideLattice::new(&cat).map_err(err)?);
    for t in [&f, &h, &m] {
        ensure!(t.rank() == r && t.is_lower_triangular(), "triangle is not {r}x{r} lower-triangular");
    }
    let fv: Vec<i128> = nk.f_vector().iter().map(|&c| c as i128).collect();
    ensure!(f.row_sums() == fv, "F row sums {:?} differ from the f-vector {fv:?}", f.row_sums());
    ensure!(h.row_sums() == h_from_f(&nk.f_vector(), r), "H row sums differ from the h-vector");
    verify_fh(&f, &h)?;
    verify_fm(&f, &m)?;
    if r <= MULTIVARIATE_LIMIT {
        let fm = f_multivariate(&cat, &nk);
        let hm = h_multivariate(&cat);
        ensure!(specialize(&fm, r, true) == f, "multivariate F does not specialize to F");
        ensure!(specialize(&hm, r, false) == h, "multivariate H does not specialize to H");
        verify_fh_multivariate(&fm, &hm, r)?;
    }
    Ok(())
}

/// Largest rank for which the multivariate F=H identity is expanded.
pub const MULTIVARIATE_LIMIT: usize = 4;
