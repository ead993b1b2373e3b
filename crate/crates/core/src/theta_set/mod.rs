//! Presheaves of finite sets on Θ_n.

mod colimit;
mod complex;
mod e_nerve;
mod nerve;
mod product;

use std::collections::HashMap;

use rustc_hash::FxHashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

pub use colimit::set_colimit;
pub(crate) use colimit::classes;
pub use complex::{eval_complex, CellComplex, ComplexPresheaf};
pub(crate) use complex::LimitPlan;
pub use e_nerve::{e_nerve, ENerve, EElem};
pub use nerve::{nerve, representable, Nerve, Representable};
pub use product::{theta_set_product, Product};

use crate::error::{Error, Result};
use crate::strict::{Dim, NFunctor, StrictNCat, theta_cat};
use crate::theta::{boundary_inclusion, composition_shape, degeneracy, objects_up_to, HomCache, ThetaMor, ThetaObj};

/// The value of a presheaf at one object: elements in a fixed order, with
/// their positions (indexed on first lookup).
#[derive(Debug)]
pub struct Value<E> {
    pub elems: Vec<E>,
    pos: OnceLock<FxHashMap<E, usize>>,
}

impl<E: Clone + Eq + Hash> Value<E> {
    pub fn new(elems: Vec<E>) -> Self {
        Value { elems, pos: OnceLock::new() }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.pos.get_or_init(|| self.elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect()).get(e).copied()
    }
}

/// A presheaf of finite sets on Θ_n, given by an evaluator.
///
/// `eval` must return the same value (same order) every time; `act(m, x)`
/// is the restriction of `x ∈ F(T)` along `m : S → T`.
pub trait ThetaSet: Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn height(&self) -> usize;

    fn eval(&self, t: &ThetaObj) -> Result<Arc<Value<Self::Elem>>>;

    fn act(&self, m: &ThetaMor, x: &Self::Elem) -> Result<Self::Elem>;

    /// The strict n-category read off from the values at cells. Only
    /// meaningful when the presheaf is Segal.
    fn cellular(&self) -> Result<Arc<StrictNCat>> {
        extract_cellular(self).map(Arc::new)
    }
}

pub(crate) struct Memo<E> {
    map: Mutex<HashMap<ThetaObj, Arc<Value<E>>>>,
}

impl<E: Clone + Eq + Hash> Memo<E> {
    pub(crate) fn new() -> Self {
        Memo { map: Mutex::new(HashMap::new()) }
    }

    pub(crate) fn get_or(&self, t: &ThetaObj, build: impl FnOnce() -> Result<Vec<E>>) -> Result<Arc<Value<E>>> {
        if let Some(v) = self.map.lock().unwrap().get(t) {
            return Ok(v.clone());
        }
        let v = Arc::new(Value::new(build()?));
        Ok(self.map.lock().unwrap().entry(t.clone()).or_insert(v).clone())
    }
}

pub(crate) fn check_height(f: &impl ThetaSet, t: &ThetaObj) -> Result<()> {
    if t.height() != f.height() {
        return Err(Error::HeightMismatch(t.height(), f.height()));
    }
    Ok(())
}

/// Reads a strict n-category off the values at cells: `k`-cells are
/// `F(c_k)`, boundaries and identities come from the globular maps, and
/// `x ∘_j y` is read from the unique element of `F` at the composition
/// shape restricting to `y` and `x`.
pub fn extract_cellular<F: ThetaSet + ?Sized>(f: &F) -> Result<StrictNCat> {
    let n = f.height();
    let cells: Vec<Arc<Value<F::Elem>>> = (0..=n).map(|k| f.eval(&ThetaObj::cell(k, n))).collect::<Result<_>>()?;
    let idx = |k: usize, e: &F::Elem| {
        cells[k].index_of(e).ok_or_else(|| Error::Evaluation(format!("restriction left F(c_{k})")))
    };
    let mut dims = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut d = Dim { count: cells[k].len(), ..Default::default() };
        if k > 0 {
            let (s, t) = (boundary_inclusion(k, n, 0), boundary_inclusion(k, n, 1));
            for x in &cells[k].elems {
                d.src.push(idx(k - 1, &f.act(&s, x)?)?);
                d.tgt.push(idx(k - 1, &f.act(&t, x)?)?);
            }
        }
        if k < n {
            let dg = degeneracy(k + 1, n);
            for x in &cells[k].elems {
                d.ident.push(idx(k + 1, &f.act(&dg, x)?)?);
            }
        }
        for j in 0..k {
            let sh = composition_shape(k, j, n);
            let mut table = HashMap::new();
            for w in &f.eval(&sh.object)?.elems {
                let y = idx(k, &f.act(&sh.first, w)?)?;
                let x = idx(k, &f.act(&sh.second, w)?)?;
                let z = idx(k, &f.act(&sh.composite, w)?)?;
                if let Some(old) = table.insert((x, y), z) {
                    if old != z {
                        return Err(Error::Evaluation(format!("two composites for {k}-cells {x} ∘_{j} {y}")));
                    }
                }
            }
            d.comp.push(table);
        }
        dims.push(d);
    }
    let names = (0..cells[0].len()).map(|a| a.to_string()).collect();
    StrictNCat::from_dims(n, names, dims)
}

/// The functor `θT → cellular(F)` classifying `x ∈ F(T)`: a cell
/// `c : c_k → T` goes to `c^*x ∈ F(c_k)`.
pub fn classifying_functor<F: ThetaSet + ?Sized>(f: &F, t: &ThetaObj, x: &F::Elem) -> Result<NFunctor> {
    let n = f.height();
    let tc = theta_cat(t);
    let mut cells = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let fk = f.eval(&ThetaObj::cell(k, n))?;
        let mut row = Vec::with_capacity(tc.cells[k].len());
        for c in &tc.cells[k] {
            let e = f.act(c, x)?;
            row.push(fk.index_of(&e).ok_or_else(|| Error::Evaluation("restriction left F(c_k)".into()))?);
        }
        cells.push(row);
    }
    Ok(NFunctor::new(cells))
}

/// A functoriality violation: `act(id) ≠ id` or `act(g∘f) ≠ act(f)∘act(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorialityDefect {
    pub morphisms: Vec<String>,
    pub element: String,
}

/// Checks `act(id) = id` on every object with at most `bound` nodes and
/// `act(g∘f) = act(f)∘act(g)` on composable pairs among objects whose node
/// counts sum to at most `pair_bound`. Returns the first defect.
pub fn check_functoriality<F: ThetaSet + ?Sized>(f: &F, bound: usize, pair_bound: usize) -> Result<Option<FunctorialityDefect>> {
    let objs = objects_up_to(f.height(), bound);
    for t in &objs {
        let id = ThetaMor::identity(t);
        for x in &f.eval(t)?.elems {
            if f.act(&id, x)? != *x {
                return Ok(Some(FunctorialityDefect { morphisms: vec![format!("{id:?}")], element: format!("{x:?}") }));
            }
        }
    }
    let mut homs = HomCache::new();
    for r in &objs {
        for s in &objs {
            for t in &objs {
                if r.node_count() + s.node_count() + t.node_count() > pair_bound {
                    continue;
                }
                let (fs, gs) = (homs.hom(r, s)?, homs.hom(s, t)?);
                if fs.is_empty() || gs.is_empty() {
                    continue;
                }
                let vt = f.eval(t)?;
                for g in gs.iter() {
                    let gx: Vec<F::Elem> = vt.elems.iter().map(|x| f.act(g, x)).collect::<Result<_>>()?;
                    for m in fs.iter() {
                        let gm = g.after(m)?;
                        for (x, y) in vt.elems.iter().zip(&gx) {
                            if f.act(&gm, x)? != f.act(m, y)? {
                                return Ok(Some(FunctorialityDefect {
                                    morphisms: vec![format!("{m:?}"), format!("{g:?}")],
                                    element: format!("{x:?}"),
                                }));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// `(object term, cardinality)` for each requested object.
pub fn tabulate<F: ThetaSet + ?Sized>(f: &F, objects: &[ThetaObj]) -> Result<Vec<(String, usize)>> {
    objects.iter().map(|t| Ok((t.to_string(), f.eval(t)?.len()))).collect()
}
