use std::ops::ControlFlow;

use super::cat::StrictNCat;
use super::functor::{for_each_functor, NFunctor};

/// A strict `∘_{k-1}`-inverse of the `k`-cell `x`, if any.
pub fn inverse(c: &StrictNCat, k: usize, x: usize) -> Option<usize> {
    assert!(k >= 1);
    let (s, t) = (c.src(k, x), c.tgt(k, x));
    let (is, it) = (c.ident(k - 1, s), c.ident(k - 1, t));
    (0..c.count(k)).find(|&y| {
        c.src(k, y) == t
            && c.tgt(k, y) == s
            && c.compose(k, k - 1, x, y) == Some(it)
            && c.compose(k, k - 1, y, x) == Some(is)
    })
}

/// Every cell of positive dimension is strictly invertible.
pub fn is_strict_groupoid(c: &StrictNCat) -> bool {
    (1..=c.level()).all(|k| (0..c.count(k)).all(|x| inverse(c, k, x).is_some()))
}

/// Every strictly invertible cell is an identity.
pub fn is_gaunt(c: &StrictNCat) -> bool {
    (1..=c.level()).all(|k| (0..c.count(k)).all(|x| c.is_identity_cell(k, x) || inverse(c, k, x).is_none()))
}

/// An isomorphism `c → d`, if one exists.
pub fn find_isomorphism(c: &StrictNCat, d: &StrictNCat) -> Option<NFunctor> {
    if c.level() != d.level() || c.counts() != d.counts() {
        return None;
    }
    for_each_functor(c, d, |f| if f.is_bijective(d) { ControlFlow::Break(f.clone()) } else { ControlFlow::Continue(()) })
        .ok()
        .flatten()
}

pub fn is_isomorphic(c: &StrictNCat, d: &StrictNCat) -> bool {
    find_isomorphism(c, d).is_some()
}
