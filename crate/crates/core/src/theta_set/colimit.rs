use petgraph::unionfind::UnionFind;

use super::ThetaSet;
use crate::error::Result;
use crate::theta::{iterated_boundary, ThetaObj};

/// `G(c_0)` modulo the equivalence generated by the two vertex restrictions
/// of each element of `G(c_n)`. Classes are lists of indices into `G(c_0)`,
/// each sorted, ordered by least member.
pub fn set_colimit<G: ThetaSet + ?Sized>(g: &G) -> Result<Vec<Vec<usize>>> {
    let n = g.height();
    let pts = g.eval(&ThetaObj::cell(0, n))?;
    let mut uf = UnionFind::<usize>::new(pts.len());
    if n > 0 {
        let (s, t) = (iterated_boundary(0, n, n, 0), iterated_boundary(0, n, n, 1));
        for e in &g.eval(&ThetaObj::cell(n, n))?.elems {
            let a = pts.index_of(&g.act(&s, e)?).expect("restriction lands in G(c_0)");
            let b = pts.index_of(&g.act(&t, e)?).expect("restriction lands in G(c_0)");
            uf.union(a, b);
        }
    }
    Ok(classes(&mut uf, pts.len()))
}

pub(crate) fn classes(uf: &mut UnionFind<usize>, n: usize) -> Vec<Vec<usize>> {
    let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
    let mut first: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for i in 0..n {
        let r = uf.find(i);
        let key = *first.entry(r).or_insert(i);
        by_root.entry(key).or_default().push(i);
    }
    by_root.into_values().collect()
}
