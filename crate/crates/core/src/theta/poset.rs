use std::fmt::Write;

use super::mor::{closed_into, compose, ThetaMor};
use super::obj::ThetaObj;

/// The poset of closed morphisms into a fixed object, ordered by closed
/// factorization.
#[derive(Clone, Debug)]
pub struct ClosedSlicePoset {
    pub base: ThetaObj,
    pub elements: Vec<ThetaMor>,
    /// `(a, b, h)` with `elements[a] = elements[b] ∘ h`, for every `a ≤ b`
    /// including `a = b`.
    pub order: Vec<(usize, usize, ThetaMor)>,
}

impl ClosedSlicePoset {
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.iter().any(|&(x, y, _)| x == a && y == b)
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.elements.len()).find(|&m| (0..self.elements.len()).all(|a| self.leq(a, m)))
    }

    /// Strict relations `a < b` with nothing in between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.elements.len();
        let mut out = Vec::new();
        for &(a, b, _) in &self.order {
            if a != b && !(0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b)) {
                out.push((a, b));
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        writeln!(s, "digraph closed_slice {{").unwrap();
        writeln!(s, "  label=\"{}\";", self.base).unwrap();
        for (i, m) in self.elements.iter().enumerate() {
            writeln!(s, "  n{i} [label=\"{} σ={:?}\"];", m.source(), m.sigma()).unwrap();
        }
        for (a, b) in self.covers() {
            writeln!(s, "  n{a} -> n{b};").unwrap();
        }
        writeln!(s, "}}").unwrap();
        s
    }
}

pub fn closed_slice_poset(t: &ThetaObj, cells_only: bool) -> ClosedSlicePoset {
    let elements: Vec<ThetaMor> = closed_into(t)
        .into_iter()
        .filter(|m| !cells_only || m.source().is_cell())
        .collect();
    let mut order = Vec::new();
    for (b, mb) in elements.iter().enumerate() {
        let subs = closed_into(mb.source());
        for (a, ma) in elements.iter().enumerate() {
            if ma.source().node_count() > mb.source().node_count() {
                continue;
            }
            let hits: Vec<&ThetaMor> = subs
                .iter()
                .filter(|h| h.source() == ma.source() && compose(mb, h).as_ref() == Ok(ma))
                .collect();
            debug_assert!(hits.len() <= 1, "closed morphisms are monic");
            if let Some(h) = hits.first() {
                order.push((a, b, (*h).clone()));
            }
        }
    }
    ClosedSlicePoset { base: t.clone(), elements, order }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::parse_obj;

    #[test]
    fn point() {
        let p = closed_slice_poset(&ThetaObj::point(0), true);
        assert_eq!(p.elements.len(), 1);
        assert_eq!(p.maximum(), Some(0));
    }

    #[test]
    fn two_cell() {
        let p = closed_slice_poset(&ThetaObj::cell(2, 2), true);
        assert_eq!(p.elements.len(), 5);
        let dims: Vec<usize> = p.elements.iter().map(|m| m.source().cell_dim().unwrap()).collect();
        assert_eq!(dims.iter().filter(|&&d| d == 0).count(), 2);
        assert_eq!(dims.iter().filter(|&&d| d == 1).count(), 2);
        assert_eq!(dims.iter().filter(|&&d| d == 2).count(), 1);
        assert!(p.maximum().is_some());
    }

    #[test]
    fn linear_two() {
        // three vertices and two edges; the whole [2] is not a cell
        let t = parse_obj("[2]([0],[0])").unwrap();
        assert_eq!(closed_slice_poset(&t, true).elements.len(), 5);
        assert_eq!(closed_slice_poset(&t, false).elements.len(), 6);
        assert_eq!(closed_slice_poset(&t, true).maximum(), None);
        assert!(closed_slice_poset(&t, true).to_dot().contains("->"));
    }
}
