//! Univalent completion at the level of connected components.
//!
//! Elements `x, y ∈ F(T)` are identified when some witness in
//! `F(T × E)`, `E` the walking isomorphism, restricts to `x` and `y` along
//! the two endpoints. Witnesses are read as functors
//! `θT × E → cellular(F)` and their restrictions are matched against the
//! classifying functors of elements of `F(T)`.

mod contraction;
mod universal;

use std::collections::HashMap;
use std::ops::ControlFlow;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

pub use contraction::{build_contraction, constant_at_initial, count_boundary_fillers, declared_composite, endpoint_inclusion, Contraction};
pub use universal::{check_universal_property, UniversalReport};

use crate::error::{Error, Result};
use crate::strict::catalog::walking_iso;
use crate::strict::{for_each_functor, is_strict_groupoid, product, suspend, theta_cat, NFunctor, StrictNCat};
use crate::theta::ThetaObj;
use crate::theta_set::{classes, classifying_functor, ThetaSet};

#[derive(Clone, Debug, Serialize)]
pub struct CompletionClasses {
    pub object: String,
    pub elements: usize,
    /// Indices into `F(T)`, each class sorted, classes by least member.
    pub classes: Vec<Vec<usize>>,
    /// Pairs of distinct elements joined by a witness, in discovery order.
    pub witness_log: Vec<(usize, usize)>,
    pub witnesses: usize,
}

impl CompletionClasses {
    pub fn class_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.elements];
        for (c, members) in self.classes.iter().enumerate() {
            for &x in members {
                out[x] = c;
            }
        }
        out
    }
}

/// `θT → θT × E` at the endpoint `e` of `E`.
fn endpoint(t: &ThetaObj, wi: &StrictNCat, e: usize) -> NFunctor {
    let tc = theta_cat(t);
    NFunctor::new(
        (0..=t.height())
            .map(|k| {
                let m = wi.count(k);
                (0..tc.cat.count(k)).map(|x| x * m + wi.ident_to(0, e, k)).collect()
            })
            .collect(),
    )
}

pub fn completion_classes<F: ThetaSet + ?Sized>(f: &F, t: &ThetaObj) -> Result<CompletionClasses> {
    let n = f.height();
    if t.height() != n {
        return Err(Error::HeightMismatch(t.height(), n));
    }
    let target = f.cellular()?;
    let elems = f.eval(t)?;
    let mut lookup: HashMap<NFunctor, usize> = HashMap::with_capacity(elems.len());
    for (i, x) in elems.elems.iter().enumerate() {
        lookup.insert(classifying_functor(f, t, x)?, i);
    }
    let wi = walking_iso(n);
    let domain = product(&theta_cat(t).cat, &wi)?;
    let (j0, j1) = (endpoint(t, &wi, 0), endpoint(t, &wi, 1));
    let mut uf = UnionFind::<usize>::new(elems.len());
    let mut log = Vec::new();
    let mut witnesses = 0;
    let missing = for_each_functor(&domain, &target, |h| {
        witnesses += 1;
        let (a, b) = (lookup.get(&h.after(&j0)), lookup.get(&h.after(&j1)));
        match (a, b) {
            (Some(&a), Some(&b)) => {
                if uf.union(a, b) {
                    log.push((a.min(b), a.max(b)));
                }
                ControlFlow::Continue(())
            }
            _ => ControlFlow::Break(()),
        }
    })?;
    if missing.is_some() {
        return Err(Error::Evaluation(format!("a witness over {t} restricts to a functor classifying no element")));
    }
    Ok(CompletionClasses { object: t.to_string(), elements: elems.len(), classes: classes(&mut uf, elems.len()), witness_log: log, witnesses })
}

/// The quotient map `F(T) → classes`, as class indices.
pub fn unit_map<F: ThetaSet + ?Sized>(f: &F, t: &ThetaObj) -> Result<Vec<usize>> {
    Ok(completion_classes(f, t)?.class_of())
}

/// `Σ^{i−1} E` at level `n`, with the index of its generating `i`-cell.
pub fn suspended_iso(i: usize, n: usize) -> (StrictNCat, usize) {
    assert!(i >= 1 && i <= n);
    let mut c = walking_iso(n + 1 - i);
    let mut x = 2;
    for _ in 1..i {
        c = suspend(&c);
        x += 2;
    }
    (c, x)
}

#[derive(Clone, Copy, Debug)]
pub enum ObjectKind<'a> {
    /// `F` is the nerve of this category.
    Nerve(&'a StrictNCat),
    /// Anything else; checked through its cellular category.
    Generic,
}

/// For each `0 < i ≤ n`, whether every `i`-cell of `F` extends along the
/// generating cell of `Σ^{i−1}E`.
pub fn filler_surjectivity<F: ThetaSet + ?Sized>(f: &F) -> Result<Vec<(usize, bool)>> {
    let n = f.height();
    let target = f.cellular()?;
    let mut out = Vec::new();
    for i in 1..=n {
        let (dom, x) = suspended_iso(i, n);
        let mut hit = vec![false; target.count(i)];
        for_each_functor::<()>(&dom, &target, |h| {
            hit[h.map(i, x)] = true;
            ControlFlow::Continue(())
        })?;
        out.push((i, hit.iter().all(|&b| b)));
    }
    Ok(out)
}

pub fn is_groupoid_object<F: ThetaSet + ?Sized>(f: &F, kind: ObjectKind<'_>) -> Result<bool> {
    match kind {
        ObjectKind::Nerve(c) => Ok(is_strict_groupoid(c)),
        ObjectKind::Generic => Ok(filler_surjectivity(f)?.iter().all(|&(_, ok)| ok)),
    }
}
