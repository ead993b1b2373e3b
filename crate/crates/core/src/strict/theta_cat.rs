//! The embedding Θ_n ↪ strict n-categories.
//!
//! The k-cells of `θT` are the Θ_n-morphisms `c_k → T`. Boundaries and
//! identities are precomposition with the globular maps among cells;
//! composition is computed structurally on the morphisms (concatenation of
//! τ-blocks along `∘_0`, recursion into the τ's otherwise).

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use super::cat::{Dim, StrictNCat};
use super::functor::NFunctor;
use crate::error::{Error, Result};
use crate::theta::{boundary_inclusion, compose, degeneracy, HomCache, ThetaMor, ThetaObj};

pub struct ThetaCat {
    pub obj: ThetaObj,
    pub cat: StrictNCat,
    /// `cells[k][x]` is the morphism `c_k → T` behind cell `x`.
    pub cells: Vec<Vec<ThetaMor>>,
    index: Vec<HashMap<ThetaMor, usize>>,
}

impl ThetaCat {
    pub fn index_of(&self, k: usize, m: &ThetaMor) -> Option<usize> {
        self.index[k].get(m).copied()
    }

    /// The cell `k`-cell of `θT` given by a morphism `c_k → T`.
    fn cell(&self, k: usize, m: &ThetaMor) -> usize {
        self.index[k][m]
    }
}

static CACHE: LazyLock<Mutex<HashMap<ThetaObj, Arc<ThetaCat>>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// `θT` with its cell bookkeeping, memoized.
pub fn theta_cat(t: &ThetaObj) -> Arc<ThetaCat> {
    if let Some(c) = CACHE.lock().unwrap().get(t) {
        return c.clone();
    }
    let built = Arc::new(build(t));
    CACHE.lock().unwrap().entry(t.clone()).or_insert(built).clone()
}

/// The strict n-category `θT`, `n` the height of `T`.
pub fn from_theta(t: &ThetaObj) -> StrictNCat {
    theta_cat(t).cat.clone()
}

/// `x ∘_j y` for cells `x, y : c_k → T` with matching `j`-boundaries.
pub fn compose_cells(x: &ThetaMor, y: &ThetaMor, j: usize) -> ThetaMor {
    let t = x.target().clone();
    let ck = x.source().clone();
    if j == 0 {
        let (a, c) = (y.sigma()[0], x.sigma()[1]);
        let taus = vec![y.tau_block(1).iter().chain(x.tau_block(1)).cloned().collect()];
        return ThetaMor::raw(ck, t, vec![a, c], taus);
    }
    let block = x
        .tau_block(1)
        .iter()
        .zip(y.tau_block(1))
        .map(|(u, v)| compose_cells(u, v, j - 1))
        .collect();
    ThetaMor::raw(ck, t, x.sigma().to_vec(), vec![block])
}

fn build(t: &ThetaObj) -> ThetaCat {
    let n = t.height();
    let mut homs = HomCache::new();
    let cells: Vec<Vec<ThetaMor>> = (0..=n)
        .map(|k| homs.hom(&ThetaObj::cell(k, n), t).unwrap().as_ref().clone())
        .collect();
    let index: Vec<HashMap<ThetaMor, usize>> =
        cells.iter().map(|cs| cs.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect()).collect();
    let mut dims: Vec<Dim> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut d = Dim { count: cells[k].len(), ..Default::default() };
        if k > 0 {
            let (s, e) = (boundary_inclusion(k, n, 0), boundary_inclusion(k, n, 1));
            for x in &cells[k] {
                d.src.push(index[k - 1][&compose(x, &s).unwrap()]);
                d.tgt.push(index[k - 1][&compose(x, &e).unwrap()]);
            }
        }
        if k < n {
            let dg = degeneracy(k + 1, n);
            d.ident = cells[k].iter().map(|x| index[k + 1][&compose(x, &dg).unwrap()]).collect();
        }
        dims.push(d);
    }
    // j-boundaries, for grouping composable pairs
    let bd = |dims: &[Dim], k: usize, mut x: usize, j: usize, end: usize| {
        for d in (j + 1..=k).rev() {
            x = if end == 0 { dims[d].src[x] } else { dims[d].tgt[x] };
        }
        x
    };
    for k in 1..=n {
        let mut comp = Vec::with_capacity(k);
        for j in 0..k {
            let mut by_src: HashMap<usize, Vec<usize>> = HashMap::new();
            for x in 0..cells[k].len() {
                by_src.entry(bd(&dims, k, x, j, 0)).or_default().push(x);
            }
            let mut table = HashMap::new();
            for y in 0..cells[k].len() {
                let Some(xs) = by_src.get(&bd(&dims, k, y, j, 1)) else { continue };
                for &x in xs {
                    let z = compose_cells(&cells[k][x], &cells[k][y], j);
                    table.insert((x, y), index[k][&z]);
                }
            }
            comp.push(table);
        }
        dims[k].comp = comp;
    }
    let names = (0..cells[0].len()).map(|a| a.to_string()).collect();
    let cat = StrictNCat::from_dims_unchecked(n, names, dims);
    ThetaCat { obj: t.clone(), cat, cells, index }
}

/// `θ(m) : θS → θT`, acting on cells by postcomposition.
pub fn theta_functor(m: &ThetaMor) -> NFunctor {
    let (s, t) = (theta_cat(m.source()), theta_cat(m.target()));
    let cells = s
        .cells
        .iter()
        .enumerate()
        .map(|(k, cs)| cs.iter().map(|x| t.cell(k, &compose(m, x).unwrap())).collect())
        .collect();
    NFunctor::new(cells)
}

/// Reads a functor `θS → θT` back as a Θ_n-morphism, when it is one.
pub fn functor_to_morphism(s: &ThetaObj, t: &ThetaObj, f: &NFunctor) -> Result<ThetaMor> {
    let mut homs = HomCache::new();
    for m in homs.hom(s, t)?.iter() {
        if theta_functor(m) == *f {
            return Ok(m.clone());
        }
    }
    Err(Error::NotAFunctor("no Θ-morphism induces this functor".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strict::functor::{count_functors, is_functor};
    use crate::theta::{composition_shape, parse_obj, parse_obj_at};

    #[test]
    fn small_cases() {
        let pt = from_theta(&ThetaObj::point(0));
        assert_eq!(pt.counts(), vec![1]);
        let c1 = from_theta(&ThetaObj::cell(1, 1));
        assert_eq!(c1.counts(), vec![2, 3]);
        let two = ThetaObj::linear(2, 1);
        assert_eq!(count_functors(&c1, &from_theta(&two)).unwrap(), 6);
        let c2 = from_theta(&ThetaObj::cell(2, 2));
        assert_eq!(c2.counts(), vec![2, 4, 5]);
    }

    #[test]
    fn lawful_at_small_bound() {
        for h in 1..=3 {
            for t in crate::theta::objects_up_to(h, 5) {
                let c = from_theta(&t);
                assert!(c.law_violations().is_empty(), "{t:?}: {:?}", c.law_violations());
            }
        }
    }

    #[test]
    fn hom_of_wreath() {
        let t = parse_obj("[2]([1]([0]),[0])").unwrap();
        let h = from_theta(&t).hom(0, 2);
        assert_eq!(h.counts(), vec![2, 3]);
    }

    #[test]
    fn structural_composite_matches_shape() {
        // x ∘_j y equals the restriction along the composite face of the
        // unique map out of the composition shape restricting to x and y
        for t in ["[2]([1]([0]),[2]([0],[0]))", "[1]([2]([1]([0]),[0]))"] {
            let t = parse_obj_at(t, 3).unwrap();
            let tc = theta_cat(&t);
            for k in 1..=3 {
                for j in 0..k {
                    let sh = composition_shape(k, j, 3);
                    for m in enumerate_morphisms_shape(&sh.object, &t) {
                        let y = compose(&m, &sh.first).unwrap();
                        let x = compose(&m, &sh.second).unwrap();
                        let z = compose(&m, &sh.composite).unwrap();
                        assert_eq!(compose_cells(&x, &y, j), z);
                        let (xi, yi) = (tc.cell(k, &x), tc.cell(k, &y));
                        assert_eq!(tc.cat.compose(k, j, xi, yi), Some(tc.cell(k, &z)));
                    }
                }
            }
        }
    }

    fn enumerate_morphisms_shape(s: &ThetaObj, t: &ThetaObj) -> Vec<ThetaMor> {
        crate::theta::enumerate_morphisms(s, t).unwrap()
    }

    #[test]
    fn theta_functor_is_functor() {
        let s = parse_obj("[2]([1]([0]),[0])").unwrap();
        let t = parse_obj("[3]([1]([0]),[0],[2]([0],[0]))").unwrap();
        for m in crate::theta::enumerate_morphisms(&s, &t).unwrap() {
            let f = theta_functor(&m);
            is_functor(&from_theta(&s), &from_theta(&t), &f).unwrap();
            assert_eq!(functor_to_morphism(&s, &t, &f).unwrap(), m);
        }
    }
}
