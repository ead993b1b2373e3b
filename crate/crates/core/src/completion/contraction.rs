//! The contraction `H_S : c_n × S → S` from the constant functor at the
//! initial object to the identity.

use std::ops::ControlFlow;

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::strict::{for_each_functor_fixing, is_functor, product, theta_cat, NFunctor, StrictNCat};
use crate::theta::{closed_slice_poset, degeneracy, vertex, ThetaMor, ThetaObj};

#[derive(Clone, Debug)]
pub struct Contraction {
    pub s: ThetaObj,
    /// `θc_n × θS`, cells of `θc_n` major.
    pub domain: StrictNCat,
    pub h: NFunctor,
}

/// The value of `H_S ∘ (id, m)` for `m : c_n → S` consecutive: on objects
/// `0 ↦ 0`, `1 ↦ m(1)`; on homs constant at `0` below the top edge and
/// recursive on it.
pub fn declared_composite(m: &ThetaMor) -> ThetaMor {
    let (c, s) = (m.source(), m.target());
    if s.height() == 0 || s.width() == 0 {
        return m.clone();
    }
    let (a, b) = (m.sigma()[0], m.sigma()[1]);
    let mut block: Vec<ThetaMor> = (1..=b).map(|j| ThetaMor::constant(c.child(1), s.child(j), 0)).collect();
    if b == a + 1 {
        block[b - 1] = declared_composite(m.tau(1, b));
    }
    ThetaMor::new(c.clone(), s.clone(), vec![0, b], vec![block]).expect("declared composite is well-typed")
}

/// `{e} × S ↪ c_n × S` for an object `e` of `c_n`.
pub fn endpoint_inclusion(s: &ThetaObj, e: usize) -> NFunctor {
    let n = s.height();
    let (tc, ts) = (theta_cat(&ThetaObj::cell(n, n)), theta_cat(s));
    let e = tc.index_of(0, &vertex(&tc.obj, e)).unwrap();
    NFunctor::new(
        (0..=n)
            .map(|k| {
                let m = ts.cat.count(k);
                (0..m).map(|y| tc.cat.ident_to(0, e, k) * m + y).collect()
            })
            .collect(),
    )
}

/// The constant functor `S → S` at the initial object.
pub fn constant_at_initial(s: &ThetaObj) -> NFunctor {
    let ts = theta_cat(s);
    let o = ts.index_of(0, &vertex(s, 0)).unwrap();
    NFunctor::new((0..=s.height()).map(|k| vec![ts.cat.ident_to(0, o, k); ts.cat.count(k)]).collect())
}

/// The prescribed values of `H_S`: both ends, and `H_S ∘ (id, m)` for each
/// maximal cell of `S` (precomposed with degeneracies up to `c_n`).
fn prescribed(s: &ThetaObj) -> Vec<(usize, usize, usize)> {
    let n = s.height();
    let cn = ThetaObj::cell(n, n);
    let (tc, ts) = (theta_cat(&cn), theta_cat(s));
    let pair = |k: usize, x: usize, y: usize| x * ts.cat.count(k) + y;
    let (i0, i1, k0) = (endpoint_inclusion(s, 0), endpoint_inclusion(s, 1), constant_at_initial(s));
    let mut out = Vec::new();
    for k in 0..=n {
        for y in 0..ts.cat.count(k) {
            out.push((k, i0.map(k, y), k0.map(k, y)));
            out.push((k, i1.map(k, y), y));
        }
    }
    let poset = closed_slice_poset(s, true);
    for (a, f) in poset.elements.iter().enumerate() {
        if poset.order.iter().any(|&(x, y, _)| x == a && y != a) {
            continue;
        }
        let mut m = f.clone();
        for d in f.source().cell_dim().unwrap() + 1..=n {
            m = m.after(&degeneracy(d, n)).unwrap();
        }
        let d = declared_composite(&m);
        for k in 0..=n {
            for (zi, z) in tc.cells[k].iter().enumerate() {
                let y = ts.index_of(k, &m.after(z).unwrap()).unwrap();
                let v = ts.index_of(k, &d.after(z).unwrap()).unwrap();
                out.push((k, pair(k, zi, y), v));
            }
        }
    }
    out
}

/// Builds `H_S` from its prescribed values and the first strict functor
/// extending them, then verifies it.
pub fn build_contraction(s: &ThetaObj) -> Result<Contraction> {
    let n = s.height();
    let (tc, ts) = (theta_cat(&ThetaObj::cell(n, n)), theta_cat(s));
    let domain = product(&tc.cat, &ts.cat)?;
    let h = for_each_functor_fixing(&domain, &ts.cat, &prescribed(s), |f| ControlFlow::Break(f.clone()))?.ok_or_else(|| {
        Error::NotAFunctor(format!("no strict functor c_{n} × {s} → {s} takes the prescribed values"))
    })?;
    let c = Contraction { s: s.clone(), domain, h };
    c.verify()?;
    Ok(c)
}

/// Number of strict functors `c_n × S → S` restricting to the constant
/// functor at `0` and to the identity, ignoring the declared composites.
pub fn count_boundary_fillers(s: &ThetaObj) -> Result<usize> {
    let n = s.height();
    let (tc, ts) = (theta_cat(&ThetaObj::cell(n, n)), theta_cat(s));
    let domain = product(&tc.cat, &ts.cat)?;
    let (i0, i1, k0) = (endpoint_inclusion(s, 0), endpoint_inclusion(s, 1), constant_at_initial(s));
    let mut fixed = Vec::new();
    for k in 0..=n {
        for y in 0..ts.cat.count(k) {
            fixed.push((k, i0.map(k, y), k0.map(k, y)));
            fixed.push((k, i1.map(k, y), y));
        }
    }
    let mut count = 0;
    for_each_functor_fixing::<()>(&domain, &ts.cat, &fixed, |_| {
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(count)
}

impl Contraction {
    /// Functoriality and both boundary equalities, as functor tables.
    pub fn verify(&self) -> Result<()> {
        let ts = theta_cat(&self.s);
        is_functor(&self.domain, &ts.cat, &self.h)?;
        if self.h.after(&endpoint_inclusion(&self.s, 0)) != constant_at_initial(&self.s) {
            return Err(Error::NotAFunctor("H_S does not restrict to the constant functor at 0".into()));
        }
        if self.h.after(&endpoint_inclusion(&self.s, 1)) != NFunctor::identity(&ts.cat) {
            return Err(Error::NotAFunctor("H_S does not restrict to the identity at 1".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Json {
        json!({ "object": self.s.to_string(), "cells": self.h.cells() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::parse_obj_at;

    #[test]
    fn small_cases() {
        let c = build_contraction(&ThetaObj::point(1)).unwrap();
        assert_eq!(c.h.object_map(), &[0, 0]);
        // [1] at height 1: (e, a) ↦ e·a on objects
        let c = build_contraction(&ThetaObj::cell(1, 1)).unwrap();
        assert_eq!(c.h.object_map(), &[0, 0, 0, 1]);
        for t in ["[2]", "[3]"] {
            build_contraction(&parse_obj_at(t, 2).unwrap()).unwrap();
        }
    }

    #[test]
    fn no_strict_filler_for_the_two_cell() {
        assert_eq!(count_boundary_fillers(&ThetaObj::cell(2, 2)).unwrap(), 0);
        assert!(build_contraction(&ThetaObj::cell(2, 2)).is_err());
    }
}
