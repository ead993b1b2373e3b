use std::collections::HashMap;

use super::cat::{Dim, StrictNCat};
use super::functor::NFunctor;
use crate::error::{Error, Result};

/// A 1-category from its arrows. `arrows[x] = (src, tgt)`, `ident[a]` is the
/// identity arrow of object `a`, and `comp(x, y)` is `x ∘ y` for every
/// composable pair. Laws are checked.
pub fn level1(names: &[&str], arrows: &[(usize, usize)], ident: &[usize], comp: impl Fn(usize, usize) -> usize) -> Result<StrictNCat> {
    let mut table = HashMap::new();
    for (x, &(sx, _)) in arrows.iter().enumerate() {
        for (y, &(_, ty)) in arrows.iter().enumerate() {
            if sx == ty {
                table.insert((x, y), comp(x, y));
            }
        }
    }
    let d0 = Dim { count: names.len(), ident: ident.to_vec(), ..Default::default() };
    let d1 = Dim {
        count: arrows.len(),
        src: arrows.iter().map(|a| a.0).collect(),
        tgt: arrows.iter().map(|a| a.1).collect(),
        ident: Vec::new(),
        comp: vec![table],
    };
    lawful(StrictNCat::from_dims(1, names.iter().map(|s| s.to_string()).collect(), vec![d0, d1])?)
}

pub(crate) fn lawful(c: StrictNCat) -> Result<StrictNCat> {
    match c.law_violations().first() {
        Some(v) => Err(Error::MalformedCategory(v.clone())),
        None => Ok(c),
    }
}

/// Reinterprets `c` at a higher level by adding only identity cells.
pub fn pad_to_level(c: &StrictNCat, n: usize) -> Result<StrictNCat> {
    if n < c.level() {
        return Err(Error::LevelMismatch(c.level(), n));
    }
    let mut dims = c.dims().to_vec();
    for m in c.level()..n {
        let top = &dims[m];
        let cnt = top.count;
        let mut comp: Vec<HashMap<(usize, usize), usize>> = top.comp.clone();
        comp.push((0..cnt).map(|x| ((x, x), x)).collect());
        let up = Dim { count: cnt, src: (0..cnt).collect(), tgt: (0..cnt).collect(), ident: Vec::new(), comp };
        dims[m].ident = (0..cnt).collect();
        dims.push(up);
    }
    Ok(StrictNCat::from_dims_unchecked(n, c.names().to_vec(), dims))
}

/// `k` objects and nothing else, at level `n`.
pub fn discrete(k: usize, n: usize) -> StrictNCat {
    let c = StrictNCat::from_dims_unchecked(0, (0..k).map(|a| a.to_string()).collect(), vec![Dim { count: k, ..Default::default() }]);
    pad_to_level(&c, n).unwrap()
}

pub fn terminal(n: usize) -> StrictNCat {
    discrete(1, n)
}

pub fn empty(n: usize) -> StrictNCat {
    discrete(0, n)
}

/// `ΣC`: objects `{0, 1}`, `hom(0,1) = C`, terminal endo-homs, `hom(1,0)` empty.
pub fn suspend(c: &StrictNCat) -> StrictNCat {
    let n = c.level() + 1;
    let mut dims = vec![Dim { count: 2, ident: vec![0, 1], ..Default::default() }];
    for d in 1..=n {
        let inner = c.dim(d - 1);
        let sh = |x: usize| x + 2;
        let mut nd = Dim { count: inner.count + 2, ..Default::default() };
        if d == 1 {
            nd.src = [0, 1].into_iter().chain(std::iter::repeat_n(0, inner.count)).collect();
            nd.tgt = [0, 1].into_iter().chain(std::iter::repeat_n(1, inner.count)).collect();
        } else {
            nd.src = [0, 1].into_iter().chain(inner.src.iter().map(|&x| sh(x))).collect();
            nd.tgt = [0, 1].into_iter().chain(inner.tgt.iter().map(|&x| sh(x))).collect();
        }
        if d < n {
            nd.ident = [0, 1].into_iter().chain(inner.ident.iter().map(|&x| sh(x))).collect();
        }
        // ∘_0: units at the two ends
        let mut c0: HashMap<(usize, usize), usize> = [((0, 0), 0), ((1, 1), 1)].into_iter().collect();
        for x in 0..inner.count {
            c0.insert((1, sh(x)), sh(x));
            c0.insert((sh(x), 0), sh(x));
        }
        nd.comp.push(c0);
        for j in 1..d {
            let mut t: HashMap<(usize, usize), usize> = [((0, 0), 0), ((1, 1), 1)].into_iter().collect();
            for (&(x, y), &z) in &inner.comp[j - 1] {
                t.insert((sh(x), sh(y)), sh(z));
            }
            nd.comp.push(t);
        }
        dims.push(nd);
    }
    StrictNCat::from_dims_unchecked(n, vec!["0".into(), "1".into()], dims)
}

/// `∂c_k` at level `n ≥ k − 1`: empty, two points, then iterated suspension.
pub fn boundary_cell(k: usize, n: usize) -> Result<StrictNCat> {
    if k.saturating_sub(1) > n {
        return Err(Error::LevelMismatch(k, n));
    }
    let c = match k {
        0 => empty(0),
        1 => discrete(2, 0),
        _ => suspend(&boundary_cell(k - 1, k - 2)?),
    };
    pad_to_level(&c, n)
}

/// Cells are pairs, numbered `x * |D_k| + y`.
pub fn product(c: &StrictNCat, d: &StrictNCat) -> Result<StrictNCat> {
    if c.level() != d.level() {
        return Err(Error::LevelMismatch(c.level(), d.level()));
    }
    let n = c.level();
    let mut dims = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let (a, b) = (c.dim(k), d.dim(k));
        let m = b.count;
        let pair = |x: usize, y: usize| x * m + y;
        let mut nd = Dim { count: a.count * m, ..Default::default() };
        let pairs = || (0..a.count).flat_map(move |x| (0..m).map(move |y| (x, y)));
        if k > 0 {
            let mb = d.count(k - 1);
            nd.src = pairs().map(|(x, y)| a.src[x] * mb + b.src[y]).collect();
            nd.tgt = pairs().map(|(x, y)| a.tgt[x] * mb + b.tgt[y]).collect();
        }
        if k < n {
            let ma = d.count(k + 1);
            nd.ident = pairs().map(|(x, y)| a.ident[x] * ma + b.ident[y]).collect();
        }
        for j in 0..k {
            let mut t = HashMap::with_capacity(a.comp[j].len() * b.comp[j].len());
            for (&(x1, y1), &z1) in &a.comp[j] {
                for (&(x2, y2), &z2) in &b.comp[j] {
                    t.insert((pair(x1, x2), pair(y1, y2)), pair(z1, z2));
                }
            }
            nd.comp.push(t);
        }
        dims.push(nd);
    }
    let names = c.names().iter().flat_map(|p| d.names().iter().map(move |q| format!("({p},{q})"))).collect();
    Ok(StrictNCat::from_dims_unchecked(n, names, dims))
}

/// The projections `C × D → C` and `C × D → D`.
pub fn projections(c: &StrictNCat, d: &StrictNCat) -> (NFunctor, NFunctor) {
    let mut p1 = Vec::new();
    let mut p2 = Vec::new();
    for k in 0..=c.level() {
        let m = d.count(k);
        p1.push((0..c.count(k) * m).map(|x| x / m).collect());
        p2.push((0..c.count(k) * m).map(|x| x % m).collect());
    }
    (NFunctor::new(p1), NFunctor::new(p2))
}

/// The maximal sub-`i`-category: every cell of dimension `≤ i`, and above
/// that only identities, padded back to the level of `c`. Returned with its
/// inclusion functor.
pub fn truncate_max_sub(c: &StrictNCat, i: usize) -> Result<(StrictNCat, NFunctor)> {
    let n = c.level();
    if i > n {
        return Err(Error::LevelMismatch(i, n));
    }
    let mut dims = c.dims()[..=i].to_vec();
    dims[i].ident.clear();
    let low = StrictNCat::from_dims_unchecked(i, c.names().to_vec(), dims);
    let padded = pad_to_level(&low, n)?;
    let mut maps: Vec<Vec<usize>> = (0..=i).map(|k| (0..c.count(k)).collect()).collect();
    for m in i + 1..=n {
        maps.push((0..c.count(i)).map(|x| c.ident_to(i, x, m)).collect());
    }
    Ok((padded, NFunctor::new(maps)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strict::functor::{count_functors, enumerate_functors, is_functor};
    use crate::strict::theta_cat::from_theta;
    use crate::theta::ThetaObj;

    #[test]
    fn suspension_of_terminal_is_the_arrow() {
        let s = suspend(&terminal(0));
        assert!(s.law_violations().is_empty());
        assert_eq!(s.counts(), from_theta(&ThetaObj::cell(1, 1)).counts());
        let s2 = suspend(&suspend(&terminal(0)));
        assert_eq!(s2.counts(), from_theta(&ThetaObj::cell(2, 2)).counts());
        assert!(s2.law_violations().is_empty());
    }

    #[test]
    fn boundaries() {
        assert_eq!(boundary_cell(0, 2).unwrap().counts(), vec![0, 0, 0]);
        assert_eq!(boundary_cell(1, 2).unwrap().counts(), vec![2, 2, 2]);
        let b2 = boundary_cell(2, 2).unwrap();
        assert_eq!(b2.counts(), vec![2, 4, 4]);
        assert!(b2.law_violations().is_empty());
        // pairs of parallel 1-cells of the walking 2-cell, counted with
        // both ends: 0→0, 1→1 and the four pairs in {α_s, α_t}²
        assert_eq!(count_functors(&b2, &from_theta(&ThetaObj::cell(2, 2))).unwrap(), 6);
    }

    #[test]
    fn padding_and_products_are_lawful() {
        let c = from_theta(&ThetaObj::linear(2, 1));
        let p = pad_to_level(&c, 3).unwrap();
        assert!(p.law_violations().is_empty());
        let d = from_theta(&ThetaObj::cell(1, 1));
        let cd = product(&c, &d).unwrap();
        assert!(cd.law_violations().is_empty());
        assert_eq!(cd.object_count(), 6);
        let (p1, p2) = projections(&c, &d);
        is_functor(&cd, &c, &p1).unwrap();
        is_functor(&cd, &d, &p2).unwrap();
        let e = from_theta(&ThetaObj::cell(1, 1));
        assert_eq!(
            count_functors(&e, &cd).unwrap(),
            count_functors(&e, &c).unwrap() * count_functors(&e, &d).unwrap()
        );
    }

    #[test]
    fn truncation() {
        let c1 = from_theta(&ThetaObj::cell(1, 1));
        let (t0, inc) = truncate_max_sub(&c1, 0).unwrap();
        assert_eq!(t0.counts(), vec![2, 2]);
        is_functor(&t0, &c1, &inc).unwrap();
        let c2 = from_theta(&ThetaObj::cell(2, 2));
        let (t1, inc) = truncate_max_sub(&c2, 1).unwrap();
        assert!(t1.law_violations().is_empty());
        is_functor(&t1, &c2, &inc).unwrap();
        // two parallel arrows, not the walking arrow
        assert_eq!(t1.counts(), vec![2, 4, 4]);
        assert_eq!(truncate_max_sub(&c2, 2).unwrap().0, c2);
        assert_eq!(enumerate_functors(&t1, &boundary_cell(2, 2).unwrap()).unwrap().len(), 6);
    }
}
