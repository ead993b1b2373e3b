//! Named batteries of exhaustive checks, run at a node bound and a seed.
//!
//! Output is deterministic: every enumeration is ordered and the only
//! randomness is seeded.

use std::collections::HashMap;
use std::fmt::Write;

use serde::Serialize;

use crate::completion::{build_contraction, check_universal_property, completion_classes, is_groupoid_object, ObjectKind};
use crate::error::{Error, Result};
use crate::flags::random::{random_essentially_surjective_map, random_groupoid, random_set_flag, rng};
use crate::flags::{cech_flag, cech_groupoid, flag_catalog, flagged_nerve, is_flagged, FlaggedSeq};
use crate::segal::is_segal;
use crate::strict::catalog::{finite_catalog, groupoid_catalog};
use crate::strict::{count_functors, from_theta, inverse, StrictNCat};
use crate::theta::{compose, factor_active_closed, objects_up_to, HomCache, ThetaMor, ThetaObj};
use crate::theta_set::{e_nerve, nerve, representable, set_colimit, CellComplex, ComplexPresheaf, ThetaSet};

pub const SUITES: [&str; 5] = ["core", "segal", "completion", "flags", "all"];

/// Heights covered by every suite.
pub const MAX_HEIGHT: usize = 3;

/// Node bound for exhaustive associativity triples, per height: the number
/// of composable triples grows past 10^8 one step above these.
pub const ASSOCIATIVITY_BOUND: [usize; 4] = [0, 5, 4, 4];

/// Probe bound for the extension half of the universal property.
pub const UNIVERSAL_PROBE_BOUND: usize = 4;

pub const CECH_SEEDS: u64 = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteRow {
    pub suite: &'static str,
    pub property: &'static str,
    pub bound: usize,
    pub checked: usize,
    pub failures: usize,
    /// First failure, if any.
    pub witness: Option<String>,
}

impl SuiteRow {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub bound: usize,
    pub seed: u64,
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(SuiteRow::ok)
    }

    pub fn table(&self) -> String {
        let mut s = String::new();
        writeln!(s, "suite {} (bound {}, seed {})", self.name, self.bound, self.seed).unwrap();
        writeln!(s, "{:<11} {:<22} {:>5} {:>9} {:>8}  status", "suite", "property", "bound", "checked", "failures").unwrap();
        for r in &self.rows {
            let status = if r.ok() { "pass" } else { "FAIL" };
            writeln!(s, "{:<11} {:<22} {:>5} {:>9} {:>8}  {status}", r.suite, r.property, r.bound, r.checked, r.failures).unwrap();
            if let Some(w) = &r.witness {
                writeln!(s, "    first failure: {w}").unwrap();
            }
        }
        let failed = self.rows.iter().filter(|r| !r.ok()).count();
        writeln!(s, "{} of {} properties pass", self.rows.len() - failed, self.rows.len()).unwrap();
        s
    }
}

/// Tallies checks for one row.
struct Tally {
    row: SuiteRow,
}

impl Tally {
    fn new(suite: &'static str, property: &'static str, bound: usize) -> Self {
        Tally { row: SuiteRow { suite, property, bound, checked: 0, failures: 0, witness: None } }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.row.checked += 1;
        if !ok {
            self.row.failures += 1;
            if self.row.witness.is_none() {
                self.row.witness = Some(witness());
            }
        }
    }
}

pub fn run_suite(name: &str, bound: usize, seed: u64) -> Result<SuiteReport> {
    let rows = match name {
        "core" => core(bound)?,
        "segal" => segal(bound)?,
        "completion" => completion(bound)?,
        "flags" => flags(bound, seed)?,
        "all" => {
            let mut rows = core(bound)?;
            rows.extend(segal(bound)?);
            rows.extend(completion(bound)?);
            rows.extend(flags(bound, seed)?);
            rows
        }
        _ => return Err(Error::UnknownCatalog(format!("suite {name}; expected one of {}", SUITES.join(", ")))),
    };
    Ok(SuiteReport { name: name.to_string(), bound, seed, rows })
}

fn core(bound: usize) -> Result<Vec<SuiteRow>> {
    let mut hc = HomCache::new();
    let mut units = Tally::new("core", "units", bound);
    let mut closed = Tally::new("core", "closed_composition", bound);
    let mut factor = Tally::new("core", "factorization", bound);
    let mut faithful = Tally::new("core", "full_faithfulness", bound);
    let mut assoc = Tally::new("core", "associativity", bound.min(ASSOCIATIVITY_BOUND[1]));
    for h in 1..=MAX_HEIGHT {
        let objs = objects_up_to(h, bound);
        for s in &objs {
            for t in &objs {
                let hom = hc.hom(s, t)?;
                let (is, it) = (ThetaMor::identity(s), ThetaMor::identity(t));
                for f in hom.iter() {
                    units.check(compose(&it, f)? == *f && compose(f, &is)? == *f, || format!("{f:?}"));
                }
                faithful.check(count_functors(&from_theta(s), &from_theta(t))? == hom.len(), || format!("{s} → {t}"));
            }
        }
        for s in &objs {
            for t in &objs {
                let st = hc.hom(s, t)?;
                for u in &objs {
                    let tu = hc.hom(t, u)?;
                    for f in st.iter().filter(|f| f.is_closed()) {
                        for g in tu.iter().filter(|g| g.is_closed()) {
                            closed.check(compose(g, f)?.is_closed(), || format!("{g:?} ∘ {f:?}"));
                        }
                    }
                }
            }
        }
        factorization(&objs, &mut hc, &mut factor)?;
        let ab = bound.min(ASSOCIATIVITY_BOUND[h]);
        assoc.row.bound = assoc.row.bound.min(ab);
        associativity(&objects_up_to(h, ab), &mut hc, &mut assoc)?;
    }
    Ok(vec![units.row, assoc.row, closed.row, factor.row, faithful.row])
}

/// Recomposition, and uniqueness: every morphism arises from exactly one
/// (active, closed) pair through an object within the bound.
fn factorization(objs: &[ThetaObj], hc: &mut HomCache, tally: &mut Tally) -> Result<()> {
    for s in objs {
        for t in objs {
            let mut seen: HashMap<ThetaMor, usize> = HashMap::new();
            for u in objs {
                let active: Vec<ThetaMor> = hc.hom(s, u)?.iter().filter(|a| a.is_active()).cloned().collect();
                if active.is_empty() {
                    continue;
                }
                for c in hc.hom(u, t)?.iter().filter(|c| c.is_closed()) {
                    for a in &active {
                        *seen.entry(compose(c, a)?).or_default() += 1;
                    }
                }
            }
            for m in hc.hom(s, t)?.iter() {
                let (a, c) = factor_active_closed(m);
                let ok = a.is_active() && c.is_closed() && compose(&c, &a)? == *m && seen.get(m) == Some(&1);
                tally.check(ok, || format!("{m:?}"));
            }
        }
    }
    Ok(())
}

fn associativity(objs: &[ThetaObj], hc: &mut HomCache, tally: &mut Tally) -> Result<()> {
    for s in objs {
        for t in objs {
            let st = hc.hom(s, t)?;
            for u in objs {
                let tu = hc.hom(t, u)?;
                let gf: Vec<Vec<ThetaMor>> =
                    tu.iter().map(|g| st.iter().map(|f| compose(g, f)).collect()).collect::<Result<_>>()?;
                for v in objs {
                    let uv = hc.hom(u, v)?;
                    for h in uv.iter() {
                        let hg: Vec<ThetaMor> = tu.iter().map(|g| compose(h, g)).collect::<Result<_>>()?;
                        for (gi, g) in tu.iter().enumerate() {
                            for (fi, f) in st.iter().enumerate() {
                                let ok = compose(h, &gf[gi][fi])? == compose(&hg[gi], f)?;
                                tally.check(ok, || format!("{h:?} ∘ {g:?} ∘ {f:?}"));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn segal(bound: usize) -> Result<Vec<SuiteRow>> {
    let mut nerves = Tally::new("segal", "catalog_nerves", bound);
    let mut enerves = Tally::new("segal", "e_nerves", bound);
    let mut reps = Tally::new("segal", "representables", bound);
    let mut spine = Tally::new("segal", "spine_defect", bound);
    for h in 1..=MAX_HEIGHT {
        for (name, c) in finite_catalog(h) {
            let r = is_segal(&nerve(c), bound)?;
            nerves.check(r.ok(), || format!("{name} at height {h}: {:?}", r.first_failure()));
        }
        for t in objects_up_to(h, bound) {
            let r = is_segal(&e_nerve(&t), bound)?;
            enerves.check(r.ok(), || format!("𝖤({t}): {:?}", r.first_failure()));
            let r = is_segal(&representable(&t), bound)?;
            reps.check(r.ok(), || format!("y({t}): {:?}", r.first_failure()));
        }
    }
    let r = is_segal(&ComplexPresheaf::new(CellComplex::spine2()), bound)?;
    let first = r.first_failure();
    let ok = first.map(|row| (row.object.as_str(), row.lhs_card, row.rhs_card)) == Some(("[2]([0],[0])", 7, 8));
    spine.check(ok, || format!("{first:?}"));
    Ok(vec![nerves.row, enerves.row, reps.row, spine.row])
}

/// Objects of `c` joined by an invertible 1-cell, as sorted classes.
pub fn iso_classes(c: &StrictNCat) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for o in 0..c.object_count() {
        let iso = |a: usize, b: usize| (0..c.count(1)).any(|x| c.src(1, x) == a && c.tgt(1, x) == b && inverse(c, 1, x).is_some());
        match out.iter_mut().find(|cl| iso(cl[0], o)) {
            Some(cl) => cl.push(o),
            None => out.push(vec![o]),
        }
    }
    out
}

fn completion(bound: usize) -> Result<Vec<SuiteRow>> {
    let mut formula = Tally::new("completion", "e_formula", 4);
    for p in 0..=4 {
        for q in 0..=4 {
            let got = e_nerve(&ThetaObj::linear(p, 1)).eval(&ThetaObj::linear(q, 1))?.len();
            formula.check(got == (p + 1).pow(q as u32 + 1), || format!("𝖤([{p}])([{q}]) = {got}"));
        }
    }
    let got = e_nerve(&ThetaObj::cell(2, 2)).eval(&ThetaObj::cell(1, 2))?.len();
    formula.check(got == 6, || format!("𝖤(c_2)(c_1) = {got}"));

    let mut universal = Tally::new("completion", "universal_property", bound);
    let mut collapse = Tally::new("completion", "groupoid_collapse", bound);
    for h in 1..=MAX_HEIGHT {
        let cats = groupoid_catalog(h);
        for t in objects_up_to(h, bound) {
            for (name, g) in &cats {
                let r = check_universal_property(&t, g, UNIVERSAL_PROBE_BOUND)?;
                universal.check(r.ok(), || format!("{t} into {name}: {r:?}"));
            }
            let cl = completion_classes(&e_nerve(&t), &ThetaObj::point(h))?;
            collapse.check(cl.classes.len() == 1, || format!("𝖤({t}) has {} classes at [0]", cl.classes.len()));
        }
    }

    let mut contraction = Tally::new("completion", "contraction", bound);
    for h in 1..=2 {
        for s in objects_up_to(h, bound) {
            let r = build_contraction(&s);
            contraction.check(r.is_ok(), || format!("{s}: {}", r.err().unwrap()));
        }
    }

    let mut iso = Tally::new("completion", "iso_classes", 1);
    for h in 1..=MAX_HEIGHT {
        for (name, c) in finite_catalog(h) {
            let want = iso_classes(&c);
            let got = completion_classes(&nerve(c), &ThetaObj::point(h))?.classes;
            iso.check(got == want, || format!("{name} at height {h}: {got:?} vs {want:?}"));
        }
    }
    Ok(vec![formula.row, universal.row, contraction.row, iso.row, collapse.row])
}

fn flags(bound: usize, seed: u64) -> Result<Vec<SuiteRow>> {
    let mut strategies = Tally::new("flags", "ladder_vs_pullback", bound);
    let mut maximal = Tally::new("flags", "maximal_flags", bound);
    for h in 1..=MAX_HEIGHT {
        let objs = objects_up_to(h, bound);
        for (name, seq) in flag_catalog(h)? {
            let f = flagged_nerve(seq);
            for t in &objs {
                let mut a = f.eval_ladder(t)?;
                let mut b = f.eval_pullback(t)?;
                a.sort();
                b.sort();
                strategies.check(a == b, || format!("{name} at {t}: {} vs {}", a.len(), b.len()));
            }
        }
        for (name, c) in finite_catalog(h) {
            let seq = FlaggedSeq::maximal_subcategories(&c)?;
            let flagged = is_flagged(&seq);
            maximal.check(flagged.is_none(), || format!("{name}: {flagged:?}"));
            let (f, n) = (flagged_nerve(seq), nerve(c));
            for t in &objs {
                let (a, b) = (f.eval(t)?.len(), n.eval(t)?.len());
                maximal.check(a == b, || format!("{name} at {t}: {a} vs {b}"));
            }
        }
    }

    let mut cech = Tally::new("flags", "cech_round_trip", bound);
    for s in seed..seed + CECH_SEEDS {
        let mut r = rng(s);
        let h = 1 + (s % MAX_HEIGHT as u64) as usize;
        let flag = random_set_flag(&mut r, h, 8);
        let target = flag.levels[h].len();
        let x = cech_flag(flag)?;
        let segal = is_segal(&x, bound)?.ok();
        let gpd = is_groupoid_object(&x, ObjectKind::Generic)?;
        let col = set_colimit(&x)?.len();
        cech.check(segal && gpd && col == target, || format!("seed {s} flag: segal {segal}, groupoid {gpd}, colimit {col} vs {target}"));

        let g = random_groupoid(&mut r, 8);
        let map = random_essentially_surjective_map(&mut r, &g, 8);
        let want = iso_classes(&g).len();
        let y = cech_groupoid(map, g)?;
        let segal = is_segal(&y, bound)?.ok();
        let gpd = is_groupoid_object(&y, ObjectKind::Generic)?;
        let col = set_colimit(&y)?.len();
        cech.check(segal && gpd && col == want, || format!("seed {s} groupoid: segal {segal}, groupoid {gpd}, colimit {col} vs {want}"));
    }
    Ok(vec![strategies.row, maximal.row, cech.row])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strict::catalog::{walking_iso, walking_retraction};
    use crate::strict::discrete;

    #[test]
    fn iso_classes_of_small_categories() {
        assert_eq!(iso_classes(&walking_iso(1)), vec![vec![0, 1]]);
        assert_eq!(iso_classes(&walking_retraction(1)), vec![vec![0], vec![1]]);
        assert_eq!(iso_classes(&discrete(3, 2)), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn small_core_suite() {
        let r = run_suite("core", 3, 0).unwrap();
        assert!(r.ok(), "{}", r.table());
        assert_eq!(r.rows.len(), 5);
        assert!(run_suite("nope", 3, 0).is_err());
    }
}
