//! The globular maps among cells used to read off cellular structure.

use super::mor::ThetaMor;
use super::obj::ThetaObj;

/// Source (`end = 0`) or target (`end = 1`) inclusion `c_{k-1} → c_k` at height `n`.
pub fn boundary_inclusion(k: usize, n: usize, end: usize) -> ThetaMor {
    assert!(k >= 1 && k <= n && end <= 1);
    let src = ThetaObj::cell(k - 1, n);
    let tgt = ThetaObj::cell(k, n);
    if k == 1 {
        return ThetaMor::raw(src, tgt, vec![end], vec![]);
    }
    let inner = boundary_inclusion(k - 1, n - 1, end);
    ThetaMor::raw(src, tgt, vec![0, 1], vec![vec![inner]])
}

/// The iterated `j`-dimensional source/target inclusion `c_j → c_k`.
pub fn iterated_boundary(j: usize, k: usize, n: usize, end: usize) -> ThetaMor {
    let mut m = ThetaMor::identity(&ThetaObj::cell(k, n));
    for d in (j + 1..=k).rev() {
        m = m.after(&boundary_inclusion(d, n, end)).unwrap();
    }
    m
}

/// The degeneracy `c_k → c_{k-1}` collapsing the top cell to an identity.
pub fn degeneracy(k: usize, n: usize) -> ThetaMor {
    assert!(k >= 1 && k <= n);
    let src = ThetaObj::cell(k, n);
    let tgt = ThetaObj::cell(k - 1, n);
    if k == 1 {
        return ThetaMor::raw(src, tgt, vec![0, 0], vec![vec![]]);
    }
    let inner = degeneracy(k - 1, n - 1);
    ThetaMor::raw(src, tgt, vec![0, 1], vec![vec![inner]])
}

/// Two `k`-cells glued along a `j`-cell, with its three cells:
/// the first factor `y`, the second factor `x`, and the composite `x ∘_j y`.
pub struct CompositionShape {
    pub object: ThetaObj,
    pub first: ThetaMor,
    pub second: ThetaMor,
    pub composite: ThetaMor,
}

pub fn composition_shape(k: usize, j: usize, n: usize) -> CompositionShape {
    assert!(j < k && k <= n);
    if j == 0 {
        let inner = ThetaObj::cell(k - 1, n - 1);
        let id = ThetaMor::identity(&inner);
        let object = ThetaObj::new(n, vec![inner.clone(), inner.clone()]).unwrap();
        let ck = ThetaObj::cell(k, n);
        let face = |a: usize| ThetaMor::raw(ck.clone(), object.clone(), vec![a, a + 1], vec![vec![id.clone()]]);
        return CompositionShape {
            first: face(0),
            second: face(1),
            composite: ThetaMor::raw(ck.clone(), object.clone(), vec![0, 2], vec![vec![id.clone(), id.clone()]]),
            object,
        };
    }
    let inner = composition_shape(k - 1, j - 1, n - 1);
    let object = inner.object.suspend();
    let ck = ThetaObj::cell(k, n);
    let lift = |m: ThetaMor| ThetaMor::raw(ck.clone(), object.clone(), vec![0, 1], vec![vec![m]]);
    CompositionShape {
        first: lift(inner.first),
        second: lift(inner.second),
        composite: lift(inner.composite),
        object,
    }
}

/// The vertex `[0] → t` at top-level object `a`.
pub fn vertex(t: &ThetaObj, a: usize) -> ThetaMor {
    ThetaMor::constant(&ThetaObj::point(t.height()), t, a)
}
