//! Flagged strict n-categories and Cech nerves of flags of sets.
//!
//! Connectivity is checked on the nose: a filler must exist strictly, not
//! up to equivalence.

mod cech;
mod nerve;
pub mod random;

use std::collections::HashSet;

use serde::Serialize;
use serde_json::Value as Json;

pub use cech::{cech_flag, cech_groupoid, extract_flag, groupoid_from_json, pullback_groupoid, CechGroupoid, CechNerve, SetFlag};
pub use nerve::{flagged_nerve, FlaggedNerve};

use crate::error::{Error, Result};
use crate::strict::catalog::finite_catalog;
use crate::strict::{discrete, from_theta, is_functor, truncate_max_sub, NFunctor, StrictNCat};
use crate::theta::ThetaObj;

/// `g ∘ h = f` for an injective `g`, if such `h` exists.
pub fn factor_through(f: &NFunctor, g: &NFunctor, g_target: &StrictNCat) -> Option<NFunctor> {
    let mut cells = Vec::with_capacity(f.cells().len());
    for (k, row) in f.cells().iter().enumerate() {
        let mut inv = vec![usize::MAX; g_target.count(k)];
        for (x, &y) in g.cells()[k].iter().enumerate() {
            inv[y] = x;
        }
        let mapped: Vec<usize> = row.iter().map(|&y| inv[y]).collect();
        if mapped.contains(&usize::MAX) {
            return None;
        }
        cells.push(mapped);
    }
    Some(NFunctor::new(cells))
}

/// For every pair of parallel `(k−1)`-cells `u, v` of `c` (any two objects
/// when `k = 1`, nothing when `k = 0`), every `k`-cell `F u → F v` of `d` has
/// a preimage `u → v`. Cells represent maps out of `c_k`, so this is the
/// filler condition along `∂c_k ↪ c_k`.
pub fn k_surjective(c: &StrictNCat, d: &StrictNCat, f: &NFunctor, k: usize) -> bool {
    if k == 0 {
        let hit: HashSet<usize> = f.cells()[0].iter().copied().collect();
        return hit.len() == d.count(0);
    }
    let mut bd: std::collections::HashMap<(usize, usize), Vec<usize>> = std::collections::HashMap::new();
    for y in 0..d.count(k) {
        bd.entry((d.src(k, y), d.tgt(k, y))).or_default().push(y);
    }
    let mut hit: std::collections::HashMap<(usize, usize), HashSet<usize>> = std::collections::HashMap::new();
    for x in 0..c.count(k) {
        hit.entry((c.src(k, x), c.tgt(k, x))).or_default().insert(f.map(k, x));
    }
    let parallel = |u: usize, v: usize| k == 1 || (c.src(k - 1, u) == c.src(k - 1, v) && c.tgt(k - 1, u) == c.tgt(k - 1, v));
    for u in 0..c.count(k - 1) {
        for v in 0..c.count(k - 1) {
            if !parallel(u, v) {
                continue;
            }
            let need = bd.get(&(f.map(k - 1, u), f.map(k - 1, v))).map_or(0, Vec::len);
            let got = hit.get(&(u, v)).map_or(0, HashSet::len);
            if got < need {
                return false;
            }
        }
    }
    true
}

pub fn i_connective(c: &StrictNCat, d: &StrictNCat, f: &NFunctor, i: usize) -> bool {
    (0..=i.min(c.level())).all(|k| k_surjective(c, d, f, k))
}

/// `C_0 → C_1 → ⋯ → C_n`, all at level `n`.
#[derive(Clone, Debug)]
pub struct FlaggedSeq {
    pub cats: Vec<StrictNCat>,
    pub maps: Vec<NFunctor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FlagFailure {
    /// `maps[i]` is not a functor.
    NotAFunctor { i: usize },
    /// `C_i` has a non-identity cell of dimension `k > i`.
    NotAnICategory { i: usize, k: usize },
    /// `C_i → C_j` is not `k`-surjective, `k ≤ i`.
    NotConnective { i: usize, j: usize, k: usize },
}

impl FlaggedSeq {
    pub fn new(cats: Vec<StrictNCat>, maps: Vec<NFunctor>) -> Result<Self> {
        let n = cats.len().checked_sub(1).ok_or_else(|| Error::FlagInvariant("a flag needs at least one category".into()))?;
        if maps.len() != n {
            return Err(Error::FlagInvariant(format!("{} categories need {n} maps", cats.len())));
        }
        for c in &cats {
            if c.level() != n {
                return Err(Error::LevelMismatch(c.level(), n));
            }
        }
        Ok(FlaggedSeq { cats, maps })
    }

    pub fn len(&self) -> usize {
        self.cats.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `C_i → C_j`.
    pub fn composite(&self, i: usize, j: usize) -> NFunctor {
        let mut f = NFunctor::identity(&self.cats[i]);
        for m in &self.maps[i..j] {
            f = m.after(&f);
        }
        f
    }

    /// `{"cats": [category, …], "maps": [[[cells of dim 0], [dim 1], …], …]}`,
    /// categories in either JSON form, padded to the flag's length.
    pub fn from_json(v: &Json) -> Result<Self> {
        let cats = v.get("cats").and_then(Json::as_array).ok_or_else(|| Error::Json("missing cats".into()))?;
        let n = cats.len().checked_sub(1).ok_or_else(|| Error::Json("a flag needs at least one category".into()))?;
        let cats = cats.iter().map(|c| StrictNCat::from_json(c, Some(n))).collect::<Result<Vec<_>>>()?;
        let maps: Vec<Vec<Vec<usize>>> = serde_json::from_value(v.get("maps").cloned().unwrap_or(Json::Array(Vec::new())))?;
        FlaggedSeq::new(cats, maps.into_iter().map(NFunctor::new).collect())
    }

    pub fn to_json(&self) -> Json {
        serde_json::json!({
            "cats": self.cats.iter().map(StrictNCat::to_json).collect::<Vec<_>>(),
            "maps": self.maps.iter().map(|m| m.cells().to_vec()).collect::<Vec<_>>(),
        })
    }

    /// The flag `C_{≤0} → C_{≤1} → ⋯ → C` of maximal sub-`i`-categories.
    pub fn maximal_subcategories(c: &StrictNCat) -> Result<Self> {
        let n = c.level();
        let truncs: Vec<(StrictNCat, NFunctor)> = (0..=n).map(|i| truncate_max_sub(c, i)).collect::<Result<_>>()?;
        let maps = (0..n)
            .map(|i| factor_through(&truncs[i].1, &truncs[i + 1].1, c).expect("truncations are nested"))
            .collect();
        FlaggedSeq::new(truncs.into_iter().map(|t| t.0).collect(), maps)
    }
}

/// Named flags used as test subjects, at length `n`: the maximal
/// subcategory flags of the finite catalog, and two points under the arrow.
pub fn flag_catalog(n: usize) -> Result<Vec<(String, FlaggedSeq)>> {
    let mut out = Vec::new();
    for (name, c) in finite_catalog(n) {
        out.push((format!("max({name})"), FlaggedSeq::maximal_subcategories(&c)?));
    }
    let arrow = from_theta(&ThetaObj::cell(1, n));
    let incl = NFunctor::new((0..=n).map(|k| vec![arrow.ident_to(0, 0, k), arrow.ident_to(0, 1, k)]).collect());
    let mut cats = vec![discrete(2, n)];
    let mut maps = vec![incl];
    for _ in 1..n {
        cats.push(arrow.clone());
        maps.push(NFunctor::identity(&arrow));
    }
    cats.push(arrow);
    out.push(("points_under_arrow".to_string(), FlaggedSeq::new(cats, maps)?));
    Ok(out)
}

/// Checks both flag conditions; the first failure found is returned.
pub fn is_flagged(seq: &FlaggedSeq) -> Option<FlagFailure> {
    let n = seq.len();
    for i in 0..n {
        if is_functor(&seq.cats[i], &seq.cats[i + 1], &seq.maps[i]).is_err() {
            return Some(FlagFailure::NotAFunctor { i });
        }
    }
    for (i, c) in seq.cats.iter().enumerate() {
        for k in i + 1..=n {
            if (0..c.count(k)).any(|x| !c.is_identity_cell(k, x)) {
                return Some(FlagFailure::NotAnICategory { i, k });
            }
        }
    }
    for i in 0..=n {
        for j in i..=n {
            let f = seq.composite(i, j);
            if let Some(k) = (0..=i).find(|&k| !k_surjective(&seq.cats[i], &seq.cats[j], &f, k)) {
                return Some(FlagFailure::NotConnective { i, j, k });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use std::ops::ControlFlow;

    use super::*;
    use crate::strict::catalog::walking_iso;
    use crate::strict::{boundary_cell, empty, for_each_functor, terminal};

    /// Fillers along `∂c_k ↪ c_k`, enumerated as functors.
    fn k_surjective_by_functors(c: &StrictNCat, d: &StrictNCat, f: &NFunctor, k: usize) -> bool {
        let n = c.level();
        let cell = from_theta(&ThetaObj::cell(k, n));
        let bd = boundary_cell(k, n).unwrap();
        // any injective functor ∂c_k → c_k is the boundary up to an
        // automorphism of ∂c_k, which permutes the b's below
        let mut incl = None;
        for_each_functor(&bd, &cell, |g| {
            if g.cells().iter().all(|r| r.iter().collect::<HashSet<_>>().len() == r.len()) {
                incl = Some(g.clone());
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        })
        .unwrap();
        let incl = incl.unwrap();
        let fill_c = crate::strict::enumerate_functors(&cell, c).unwrap();
        let fill_d = crate::strict::enumerate_functors(&cell, d).unwrap();
        for b in crate::strict::enumerate_functors(&bd, c).unwrap() {
            let fb = f.after(&b);
            let want: HashSet<&NFunctor> = fill_d.iter().filter(|y| y.after(&incl) == fb).collect();
            let got: HashSet<NFunctor> = fill_c.iter().filter(|x| x.after(&incl) == b).map(|x| f.after(x)).collect();
            if want.iter().any(|y| !got.contains(*y)) {
                return false;
            }
        }
        true
    }

    #[test]
    fn surjectivity_examples() {
        let d2 = discrete(2, 1);
        let i1 = from_theta(&ThetaObj::cell(1, 1));
        let incl = NFunctor::new(vec![vec![0, 1], vec![i1.ident(0, 0), i1.ident(0, 1)]]);
        is_functor(&d2, &i1, &incl).unwrap();
        assert!(k_surjective(&d2, &i1, &incl, 0));
        assert!(!k_surjective(&d2, &i1, &incl, 1));
        let konst = NFunctor::new(vec![vec![0], vec![0]]);
        assert!(!k_surjective(&terminal(1), &d2, &konst, 0));
        let w = walking_iso(1);
        assert!(i_connective(&w, &w, &NFunctor::identity(&w), 1));
        assert!(!i_connective(&d2, &w, &incl, 1));
    }

    #[test]
    fn cell_and_functor_routes_agree() {
        for n in 1..=2 {
            let cats = finite_catalog(n);
            for (_, c) in &cats {
                for (_, d) in &cats {
                    let mut fs = Vec::new();
                    for_each_functor::<()>(c, d, |f| {
                        fs.push(f.clone());
                        if fs.len() >= 6 { ControlFlow::Break(()) } else { ControlFlow::Continue(()) }
                    })
                    .unwrap();
                    for f in &fs {
                        for k in 0..=n {
                            assert_eq!(k_surjective(c, d, f, k), k_surjective_by_functors(c, d, f, k));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn flags() {
        for n in 1..=2 {
            for (name, c) in finite_catalog(n) {
                assert_eq!(is_flagged(&FlaggedSeq::maximal_subcategories(&c).unwrap()), None, "{name}");
            }
        }
        let i1 = from_theta(&ThetaObj::cell(1, 1));
        for n in 1..=3 {
            for (name, f) in flag_catalog(n).unwrap() {
                assert_eq!(is_flagged(&f), None, "{name}");
            }
        }
        let bad = FlaggedSeq::new(vec![empty(1), i1.clone()], vec![NFunctor::new(vec![vec![], vec![]])]).unwrap();
        assert_eq!(is_flagged(&bad), Some(FlagFailure::NotConnective { i: 0, j: 1, k: 0 }));
        let incl = NFunctor::new(vec![vec![0, 1], vec![i1.ident(0, 0), i1.ident(0, 1)]]);
        let good = FlaggedSeq::new(vec![discrete(2, 1), i1], vec![incl]).unwrap();
        assert_eq!(is_flagged(&good), None);
        let back = FlaggedSeq::from_json(&good.to_json()).unwrap();
        assert_eq!((back.cats, back.maps), (good.cats, good.maps));
    }
}
