//! Acceptance criteria 1–12, one line each, with brute-force oracles.
//!
//! Runs without the libtest harness so the lines always print. Exits
//! non-zero when a criterion fails that is not listed in `UNATTAINABLE`.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use theta_core::completion::{build_contraction, check_universal_property, completion_classes, count_boundary_fillers, is_groupoid_object, ObjectKind};
use theta_core::flags::random::{random_essentially_surjective_map, random_groupoid, random_set_flag, rng};
use theta_core::flags::{cech_flag, cech_groupoid, flag_catalog, flagged_nerve, is_flagged, FlaggedSeq};
use theta_core::segal::is_segal;
use theta_core::strict::catalog::{finite_catalog, groupoid_catalog};
use theta_core::strict::{count_functors, from_theta, is_functor, theta_cat, StrictNCat};
use theta_core::theta::{compose, factor_active_closed, objects_up_to, vertex, HomCache, ThetaMor, ThetaObj};
use theta_core::theta_set::{e_nerve, nerve, set_colimit, CellComplex, ComplexPresheaf, ThetaSet};

/// Default node bound.
const B: usize = 6;
const HEIGHTS: std::ops::RangeInclusive<usize> = 1..=3;
const BUDGET: Duration = Duration::from_secs(60);
/// Bound for exhaustive associativity triples per height (index = height).
const TRIPLE_BOUND: [usize; 4] = [0, 5, 4, 4];
const PROBE_BOUND: usize = 4;
const SEEDS: u64 = 20;

/// Criteria implemented faithfully that cannot pass here, with the reason.
const UNATTAINABLE: [(usize, &str); 2] = [
    (1, "exhaustive associativity at B = 6 needs ~6e8 (height 1) to ~1.5e12 (height 3) composable triples; one core composes ~5e6/s"),
    (7, "no strict functor c_2 × S → S restricts to const_0 and id for non-linear S at height 2: naturality of (c, id) against the two parallel 1-cells y of S forces H(c, id_1) = y for both"),
];

struct Verdict {
    pass: bool,
    summary: String,
}

fn verdict(pass: bool, summary: impl Into<String>) -> Verdict {
    Verdict { pass, summary: summary.into() }
}

// ---------------------------------------------------------------- oracles

/// Non-decreasing maps [p] → [q].
fn monotone(p: usize, q: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..=p {
        out = out
            .into_iter()
            .flat_map(|m: Vec<usize>| {
                let lo = m.last().copied().unwrap_or(0);
                (lo..=q).map(move |v| {
                    let mut m2 = m.clone();
                    m2.push(v);
                    m2
                })
            })
            .collect();
    }
    out
}

/// All maps [p] → [q].
fn functions(p: usize, q: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..=p {
        out = out.into_iter().flat_map(|m: Vec<usize>| (0..=q).map(move |v| [m.clone(), vec![v]].concat())).collect();
    }
    out
}

/// |Hom(S, T)| from the wreath recursion.
fn hom_count(s: &ThetaObj, t: &ThetaObj, memo: &mut HashMap<(ThetaObj, ThetaObj), usize>) -> usize {
    if s.height() == 0 {
        return 1;
    }
    if let Some(&n) = memo.get(&(s.clone(), t.clone())) {
        return n;
    }
    let mut total = 0;
    for sigma in monotone(s.width(), t.width()) {
        let mut prod = 1;
        for i in 1..=s.width() {
            for j in sigma[i - 1] + 1..=sigma[i] {
                prod *= hom_count(s.child(i), t.child(j), memo);
            }
        }
        total += prod;
    }
    memo.insert((s.clone(), t.clone()), total);
    total
}

/// |𝖤(T)(S)|: functions on objects, and a datum per spanned index.
fn e_count(t: &ThetaObj, s: &ThetaObj) -> usize {
    if s.height() == 0 {
        return 1;
    }
    functions(s.width(), t.width())
        .iter()
        .map(|f| {
            (1..=s.width())
                .map(|j| (f[j - 1].min(f[j]) + 1..=f[j - 1].max(f[j])).map(|i| e_count(t.child(i), s.child(j))).product::<usize>())
                .product::<usize>()
        })
        .sum()
}

fn closed(m: &ThetaMor) -> bool {
    let s = m.sigma();
    s.iter().enumerate().all(|(i, &v)| v == s[0] + i) && (1..s.len()).all(|i| m.tau_block(i).iter().all(closed))
}

fn active(m: &ThetaMor) -> bool {
    let s = m.sigma();
    s[0] == 0 && s[s.len() - 1] == m.target().width() && (1..s.len()).all(|i| m.tau_block(i).iter().all(active))
}

/// Objects joined by a 1-cell with a two-sided inverse, as a partition.
fn iso_partition(c: &StrictNCat) -> BTreeSet<BTreeSet<usize>> {
    let invertible = |x: usize| {
        (0..c.count(1)).any(|y| {
            let unit = |z: Option<usize>| z.is_some_and(|z| c.is_identity_cell(1, z));
            unit(c.compose(1, 0, x, y)) && unit(c.compose(1, 0, y, x))
        })
    };
    let mut class: Vec<usize> = (0..c.object_count()).collect();
    for x in (0..c.count(1)).filter(|&x| invertible(x)) {
        let (a, b) = (class[c.src(1, x)], class[c.tgt(1, x)]);
        for v in class.iter_mut() {
            if *v == b {
                *v = a;
            }
        }
    }
    partition(&class)
}

/// Connected components of the underlying graph.
fn components(c: &StrictNCat) -> usize {
    let mut class: Vec<usize> = (0..c.object_count()).collect();
    for x in 0..c.count(1) {
        let (a, b) = (class[c.src(1, x)], class[c.tgt(1, x)]);
        for v in class.iter_mut() {
            if *v == b {
                *v = a;
            }
        }
    }
    partition(&class).len()
}

fn partition(class: &[usize]) -> BTreeSet<BTreeSet<usize>> {
    let mut m: HashMap<usize, BTreeSet<usize>> = HashMap::new();
    for (o, &c) in class.iter().enumerate() {
        m.entry(c).or_default().insert(o);
    }
    m.into_values().collect()
}

/// The spine `{0,1} ∪ {1,2}` as a simplicial set: `n`-simplices are monotone
/// maps into {0,1,2} with image in one edge.
fn spine_simplices(n: usize) -> Vec<Vec<usize>> {
    monotone(n, 2).into_iter().filter(|m| m.iter().all(|&v| v <= 1) || m.iter().all(|&v| v >= 1)).collect()
}

// --------------------------------------------------------------- criteria

fn c1_category_laws() -> Verdict {
    let mut hc = HomCache::new();
    let mut units = 0usize;
    let mut bad = 0usize;
    for h in HEIGHTS {
        let objs = objects_up_to(h, B);
        for s in &objs {
            for t in &objs {
                for f in hc.hom(s, t).unwrap().iter() {
                    units += 1;
                    if compose(&ThetaMor::identity(t), f).unwrap() != *f || compose(f, &ThetaMor::identity(s)).unwrap() != *f {
                        bad += 1;
                    }
                }
            }
        }
    }
    let mut triples = 0usize;
    let mut needed = Vec::new();
    for h in HEIGHTS {
        let objs = objects_up_to(h, TRIPLE_BOUND[h]);
        for s in &objs {
            for t in &objs {
                let st = hc.hom(s, t).unwrap();
                for u in &objs {
                    let tu = hc.hom(t, u).unwrap();
                    let gf: Vec<Vec<ThetaMor>> = tu.iter().map(|g| st.iter().map(|f| compose(g, f).unwrap()).collect()).collect();
                    for v in &objs {
                        for hm in hc.hom(u, v).unwrap().iter() {
                            for (gi, g) in tu.iter().enumerate() {
                                let hg = compose(hm, g).unwrap();
                                for (fi, f) in st.iter().enumerate() {
                                    triples += 1;
                                    if compose(hm, &gf[gi][fi]).unwrap() != compose(&hg, f).unwrap() {
                                        bad += 1;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        // composable triples at the full bound, from hom counts
        let objs = objects_up_to(h, B);
        let n = objs.len();
        let m: Vec<Vec<f64>> = objs.iter().map(|s| objs.iter().map(|t| hc.hom(s, t).unwrap().len() as f64).collect()).collect();
        let row: Vec<f64> = (0..n).map(|j| (0..n).map(|i| m[i][j]).sum()).collect();
        let two: Vec<f64> = (0..n).map(|k| (0..n).map(|j| row[j] * m[j][k]).sum()).collect();
        needed.push(format!("{:.1e}", (0..n).map(|k| two[k] * m[k].iter().sum::<f64>()).sum::<f64>()));
    }
    let full = TRIPLE_BOUND[1..].iter().all(|&b| b >= B);
    verdict(
        bad == 0 && full,
        format!(
            "{units} unit checks at B={B}, {triples} associativity triples at B={:?} per height, {bad} violations; triples at B={B} would be {}",
            &TRIPLE_BOUND[1..],
            needed.join(" / ")
        ),
    )
}

fn c2_factorization() -> Verdict {
    let mut hc = HomCache::new();
    let (mut checked, mut bad) = (0, 0);
    for h in HEIGHTS {
        let objs = objects_up_to(h, B);
        for s in &objs {
            for t in &objs {
                // every (active, closed) pair through every middle object
                let mut count: HashMap<ThetaMor, usize> = HashMap::new();
                for u in &objs {
                    let acts: Vec<ThetaMor> = hc.hom(s, u).unwrap().iter().filter(|a| active(a)).cloned().collect();
                    for c in hc.hom(u, t).unwrap().iter().filter(|c| closed(c)) {
                        for a in &acts {
                            *count.entry(compose(c, a).unwrap()).or_default() += 1;
                        }
                    }
                }
                for m in hc.hom(s, t).unwrap().iter() {
                    checked += 1;
                    let (a, c) = factor_active_closed(m);
                    let ok = active(&a) && closed(&c) && compose(&c, &a).unwrap() == *m && factor_active_closed(m) == (a, c) && count.get(m) == Some(&1);
                    bad += usize::from(!ok);
                }
            }
        }
    }
    verdict(bad == 0, format!("{checked} morphisms at B={B}, each with exactly one (active, closed) factorization; {bad} failures"))
}

fn c3_full_faithfulness() -> Verdict {
    let mut hc = HomCache::new();
    let mut memo = HashMap::new();
    let (mut pairs, mut bad) = (0, 0);
    for h in HEIGHTS {
        let objs = objects_up_to(h, B);
        let cats: Vec<StrictNCat> = objs.iter().map(from_theta).collect();
        for (s, cs) in objs.iter().zip(&cats) {
            for (t, ct) in objs.iter().zip(&cats) {
                pairs += 1;
                let want = hom_count(s, t, &mut memo);
                if hc.hom(s, t).unwrap().len() != want || count_functors(cs, ct).unwrap() != want {
                    bad += 1;
                }
            }
        }
    }
    verdict(bad == 0, format!("{pairs} pairs at B={B}: |Hom| = |Fun| = wreath count; {bad} mismatches"))
}

fn c4_e_formula() -> Verdict {
    let mut bad = Vec::new();
    for p in 0..=4 {
        let e = e_nerve(&ThetaObj::linear(p, 1));
        for q in 0..=4 {
            let got = e.eval(&ThetaObj::linear(q, 1)).unwrap().len();
            if got != (p + 1).pow(q as u32 + 1) {
                bad.push(format!("[{p}]([{q}]) = {got}"));
            }
        }
    }
    // 1-cells of the completion of the walking 2-cell 0 ⇒ 1 (two parallel
    // 1-cells s, t : 0 → 1): the identities, s and t, and their inverses.
    let hand = ["id_0", "id_1", "s", "t", "s^-1", "t^-1"].len();
    let c2 = ThetaObj::cell(2, 2);
    let got = e_nerve(&c2).eval(&ThetaObj::cell(1, 2)).unwrap().len();
    if got != hand || e_count(&c2, &ThetaObj::cell(1, 2)) != hand {
        bad.push(format!("𝖤(c_2)(c_1) = {got}"));
    }
    let mut cross = 0;
    for t in objects_up_to(2, 4) {
        let e = e_nerve(&t);
        for s in objects_up_to(2, 4) {
            cross += 1;
            if e.eval(&s).unwrap().len() != e_count(&t, &s) {
                bad.push(format!("𝖤({t})({s})"));
            }
        }
    }
    verdict(bad.is_empty(), format!("25 values of (p+1)^(q+1), 𝖤(c_2)(c_1) = {got} vs {hand} by hand, {cross} height-2 values against the recursive count; mismatches {bad:?}"))
}

/// |Fun(θT, G)| for the catalog groupoids, by hand.
fn functors_into(name: &str, t: &ThetaObj) -> usize {
    let (objects, edges) = (t.width() + 1, t.width() as u32);
    match name {
        "terminal" => 1,
        "walking_iso" => 2usize.pow(objects as u32),
        "discrete(2)" => 2,
        "cyclic(2)" => 2usize.pow(edges),
        "cyclic(3)" => 3usize.pow(edges),
        _ => panic!("no oracle for {name}"),
    }
}

fn c5_universal_property() -> Verdict {
    let (mut checked, mut bad) = (0, Vec::new());
    for h in HEIGHTS {
        let cats = groupoid_catalog(h);
        for t in objects_up_to(h, B) {
            for (name, g) in &cats {
                checked += 1;
                let r = check_universal_property(&t, g, PROBE_BOUND).unwrap();
                let want = functors_into(name, &t);
                if !r.ok() || r.restricted != want || r.extended != want {
                    bad.push(format!("{t} into {name}: {} / {} vs {want}", r.extended, r.restricted));
                }
            }
        }
    }
    verdict(bad.is_empty(), format!("{checked} (T, G) pairs at B={B}, extensions probed to {PROBE_BOUND} nodes; failures {bad:?}"))
}

fn c6_segal() -> Verdict {
    let mut bad = Vec::new();
    let mut checked = 0;
    for h in HEIGHTS {
        for (name, c) in finite_catalog(h) {
            checked += 1;
            if !is_segal(&nerve(c), B).unwrap().ok() {
                bad.push(format!("N({name}) at height {h}"));
            }
        }
        for t in objects_up_to(h, B) {
            checked += 1;
            if !is_segal(&e_nerve(&t), B).unwrap().ok() {
                bad.push(format!("𝖤({t})"));
            }
        }
    }
    let lhs = spine_simplices(2).len();
    let edges = spine_simplices(1);
    let rhs = edges.iter().flat_map(|x| edges.iter().map(move |y| (x, y))).filter(|(x, y)| x[1] == y[0]).count();
    let r = is_segal(&ComplexPresheaf::new(CellComplex::spine2()), B).unwrap();
    let first = r.first_failure().map(|f| (f.object.clone(), f.lhs_card, f.rhs_card));
    let spine_ok = (lhs, rhs) == (7, 8) && first == Some(("[2]([0],[0])".to_string(), lhs, rhs));
    verdict(
        bad.is_empty() && spine_ok,
        format!("{checked} nerves and 𝖤-nerves at B={B}, failures {bad:?}; spine first fails at {first:?}, oracle {lhs} vs {rhs}"),
    )
}

fn c7_contraction() -> Verdict {
    let mut built = [0, 0, 0];
    let mut failed: Vec<String> = Vec::new();
    let mut bad = Vec::new();
    for h in 1..=2 {
        let cn = ThetaObj::cell(h, h);
        let tc = theta_cat(&cn);
        let (e0, e1) = (tc.index_of(0, &vertex(&cn, 0)).unwrap(), tc.index_of(0, &vertex(&cn, 1)).unwrap());
        for s in objects_up_to(h, B) {
            match build_contraction(&s) {
                Ok(c) => {
                    built[h] += 1;
                    let ts = theta_cat(&s);
                    let init = ts.index_of(0, &vertex(&s, 0)).unwrap();
                    let mut ok = is_functor(&c.domain, &ts.cat, &c.h).is_ok();
                    for k in 0..=h {
                        let m = ts.cat.count(k);
                        for y in 0..m {
                            ok &= c.h.map(k, tc.cat.ident_to(0, e0, k) * m + y) == ts.cat.ident_to(0, init, k);
                            ok &= c.h.map(k, tc.cat.ident_to(0, e1, k) * m + y) == y;
                        }
                    }
                    if !ok {
                        bad.push(s.to_string());
                    }
                }
                Err(_) => {
                    let linear = s.children().iter().all(|c| c.width() == 0);
                    if h == 1 || linear || count_boundary_fillers(&s).unwrap() != 0 {
                        bad.push(s.to_string());
                    }
                    failed.push(s.to_string());
                }
            }
        }
    }
    verdict(
        failed.is_empty() && bad.is_empty(),
        format!(
            "built and verified {} of {} at height 1, {} of {} at height 2; {} height-2 objects have no strict filler of the boundary ({}…); unexpected {bad:?}",
            built[1],
            objects_up_to(1, B).len(),
            built[2],
            objects_up_to(2, B).len(),
            failed.len(),
            failed.iter().take(3).cloned().collect::<Vec<_>>().join(", ")
        ),
    )
}

fn c8_iso_classes() -> Verdict {
    let mut bad = Vec::new();
    let mut checked = 0;
    for h in HEIGHTS {
        for (name, c) in finite_catalog(h) {
            checked += 1;
            let n = nerve(c.clone());
            let pts = n.eval(&ThetaObj::point(h)).unwrap();
            let got: BTreeSet<BTreeSet<usize>> = completion_classes(&n, &ThetaObj::point(h))
                .unwrap()
                .classes
                .iter()
                .map(|cl| cl.iter().map(|&i| pts.elems[i].object_map()[0]).collect())
                .collect();
            if got != iso_partition(&c) {
                bad.push(format!("{name} at height {h}"));
            }
        }
    }
    verdict(bad.is_empty(), format!("{checked} catalog categories at heights 1–3 against the invertible-arrow search; mismatches {bad:?}"))
}

fn c9_collapse() -> Verdict {
    let mut bad = Vec::new();
    let mut checked = 0;
    for h in HEIGHTS {
        for t in objects_up_to(h, B) {
            checked += 1;
            let n = completion_classes(&e_nerve(&t), &ThetaObj::point(h)).unwrap().classes.len();
            if n != 1 {
                bad.push(format!("𝖤({t}): {n}"));
            }
        }
    }
    verdict(bad.is_empty(), format!("{checked} objects at B={B} collapse to one class at [0]; failures {bad:?}"))
}

fn c10_flag_strategies() -> Verdict {
    let (mut checked, mut bad) = (0, Vec::new());
    for h in HEIGHTS {
        for (name, seq) in flag_catalog(h).unwrap() {
            let f = flagged_nerve(seq);
            for t in objects_up_to(h, B) {
                checked += 1;
                let mut a = f.eval_ladder(&t).unwrap();
                let mut b = f.eval_pullback(&t).unwrap();
                a.sort();
                b.sort();
                if a != b {
                    bad.push(format!("{name} at {t}: {} vs {}", a.len(), b.len()));
                }
            }
        }
    }
    verdict(bad.is_empty(), format!("{checked} (flag, T) pairs at B={B}, ladder = iterated pullback; mismatches {bad:?}"))
}

fn c11_cech() -> Verdict {
    let mut bad = Vec::new();
    for seed in 0..SEEDS {
        let mut r = rng(seed);
        let h = 1 + (seed % 3) as usize;
        let flag = random_set_flag(&mut r, h, 8);
        let want = flag.levels[h].len();
        let x = cech_flag(flag).unwrap();
        let (s, g, c) = (is_segal(&x, B).unwrap().ok(), is_groupoid_object(&x, ObjectKind::Generic).unwrap(), set_colimit(&x).unwrap().len());
        if !(s && g && c == want) {
            bad.push(format!("seed {seed} flag: {s} {g} {c} vs {want}"));
        }
        let grp = random_groupoid(&mut r, 8);
        let map = random_essentially_surjective_map(&mut r, &grp, 8);
        let want = components(&grp);
        let y = cech_groupoid(map, grp).unwrap();
        let (s, g, c) = (is_segal(&y, B).unwrap().ok(), is_groupoid_object(&y, ObjectKind::Generic).unwrap(), set_colimit(&y).unwrap().len());
        if !(s && g && c == want) {
            bad.push(format!("seed {seed} groupoid: {s} {g} {c} vs {want}"));
        }
    }
    verdict(bad.is_empty(), format!("{SEEDS} seeds, set flags and maps into groupoids: Segal, groupoid, colimit = target count; failures {bad:?}"))
}

fn c12_maximal_flags() -> Verdict {
    let (mut checked, mut bad) = (0, Vec::new());
    for h in HEIGHTS {
        for (name, c) in finite_catalog(h) {
            let seq = FlaggedSeq::maximal_subcategories(&c).unwrap();
            // C_{≤i} has no non-identity cells above dimension i
            let truncated = seq.cats.iter().enumerate().all(|(i, ci)| (i + 1..=h).all(|k| (0..ci.count(k)).all(|x| ci.is_identity_cell(k, x))));
            if is_flagged(&seq).is_some() || !truncated {
                bad.push(format!("{name} at height {h} is not flagged"));
            }
            let (f, n) = (flagged_nerve(seq), nerve(c));
            for t in objects_up_to(h, B) {
                checked += 1;
                let (a, b) = (f.eval(&t).unwrap().len(), n.eval(&t).unwrap().len());
                if a != b {
                    bad.push(format!("{name} at {t}: {a} vs {b}"));
                }
            }
        }
    }
    verdict(bad.is_empty(), format!("{checked} (C, T) pairs at B={B}, flagged nerve = nerve; failures {bad:?}"))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 12] = [
        ("category laws", c1_category_laws),
        ("factorization", c2_factorization),
        ("full faithfulness", c3_full_faithfulness),
        ("𝖤 formula", c4_e_formula),
        ("𝖤 universal property", c5_universal_property),
        ("Segal checker", c6_segal),
        ("contraction H_S", c7_contraction),
        ("completion vs iso classes", c8_iso_classes),
        ("groupoid collapse", c9_collapse),
        ("flagged nerve strategies", c10_flag_strategies),
        ("Cech round trip", c11_cech),
        ("maximal-subcategory flags", c12_maximal_flags),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut unexpected = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        if !filter.is_empty() && !filter.iter().any(|f| f == &n.to_string()) {
            continue;
        }
        let start = Instant::now();
        let v = run();
        let took = start.elapsed();
        let pass = v.pass && took < BUDGET;
        let known = UNATTAINABLE.iter().find(|(k, _)| *k == n);
        println!(
            "criterion {n:>2} {} {:>6.1}s  {name}: {}",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            v.summary
        );
        if !pass {
            match known {
                Some((_, why)) => println!("              known unattainable: {why}"),
                None => unexpected.push(n),
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
