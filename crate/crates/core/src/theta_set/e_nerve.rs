//! The explicit groupoid-completion presheaf `𝖤(T)`.
//!
//! An element of `𝖤(T)(S)`, `T = [p](T_1..T_p)`, `S = [q](S_1..S_q)`, is a
//! function `f : {0..q} → {0..p}` together with, for each edge `0 < j ≤ q`
//! of `S` and each `i` in the interval `(min, max]` of `{f(j−1), f(j)}`, an
//! element `g_ij ∈ 𝖤(T_i)(S_j)`.
//!
//! Restriction along `(σ, τ) : S' → S` precomposes `f` with `σ`. For an
//! edge `j'` of `S'` and an index `i` it spans, the path
//! `f(σ(j'−1)), …, f(σ(j'))` crosses `i` at least once in its net
//! direction; the datum is pulled back along `τ_{j'l}` from the first such
//! crossing edge `l`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{check_height, Memo, ThetaSet, Value};
use crate::error::Result;
use crate::strict::StrictNCat;
use crate::theta::{ThetaMor, ThetaObj};
use crate::util::Odometer;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EElem {
    pub f: Vec<usize>,
    /// `g[j-1][i - lo - 1]` is `g_ij`, `lo = min(f(j−1), f(j))`.
    pub g: Vec<Vec<EElem>>,
}

impl std::fmt::Debug for EElem {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "{:?}", self.f)?;
        if self.g.iter().any(|b| !b.is_empty()) {
            write!(fm, "{:?}", self.g)?;
        }
        Ok(())
    }
}

pub struct ENerve {
    obj: ThetaObj,
    values: Mutex<HashMap<(ThetaObj, ThetaObj), Arc<Vec<EElem>>>>,
    memo: Memo<EElem>,
    cellular: OnceLock<Arc<StrictNCat>>,
}

pub fn e_nerve(t: &ThetaObj) -> ENerve {
    ENerve { obj: t.clone(), values: Mutex::new(HashMap::new()), memo: Memo::new(), cellular: OnceLock::new() }
}

impl ENerve {
    pub fn object(&self) -> &ThetaObj {
        &self.obj
    }

    fn values(&self, t: &ThetaObj, s: &ThetaObj) -> Arc<Vec<EElem>> {
        let key = (t.clone(), s.clone());
        if let Some(v) = self.values.lock().unwrap().get(&key) {
            return v.clone();
        }
        let v = Arc::new(self.build(t, s));
        self.values.lock().unwrap().insert(key, v.clone());
        v
    }

    fn build(&self, t: &ThetaObj, s: &ThetaObj) -> Vec<EElem> {
        let (p, q) = (t.width(), s.width());
        if s.height() == 0 {
            return vec![EElem { f: vec![0], g: Vec::new() }];
        }
        let mut out = Vec::new();
        for f in Odometer::new(vec![p + 1; q + 1]) {
            // slots (j, i) in order, with their value lists
            let mut slots = Vec::new();
            for j in 1..=q {
                let (lo, hi) = span(f[j - 1], f[j]);
                for i in lo + 1..=hi {
                    slots.push((j, self.values(t.child(i), s.child(j))));
                }
            }
            for idx in Odometer::new(slots.iter().map(|s| s.1.len()).collect()) {
                let mut g: Vec<Vec<EElem>> = vec![Vec::new(); q];
                for (n, (j, vals)) in slots.iter().enumerate() {
                    g[j - 1].push(vals[idx[n]].clone());
                }
                out.push(EElem { f: f.clone(), g });
            }
        }
        out
    }

    /// The unit `T → 𝖤(T)`: the identity function with the units of the
    /// children as `g_jj`.
    pub fn unit(t: &ThetaObj) -> EElem {
        if t.height() == 0 {
            return EElem { f: vec![0], g: Vec::new() };
        }
        EElem { f: (0..=t.width()).collect(), g: t.children().iter().map(|c| vec![ENerve::unit(c)]).collect() }
    }
}

fn span(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn restrict(t: &ThetaObj, m: &ThetaMor, x: &EElem) -> EElem {
    if m.height() == 0 {
        return x.clone();
    }
    let sigma = m.sigma();
    let f: Vec<usize> = sigma.iter().map(|&s| x.f[s]).collect();
    let mut g = Vec::with_capacity(f.len() - 1);
    for jp in 1..f.len() {
        let (a, b) = (f[jp - 1], f[jp]);
        let (lo, hi) = span(a, b);
        let mut block = Vec::with_capacity(hi - lo);
        for i in lo + 1..=hi {
            let l = (sigma[jp - 1] + 1..=sigma[jp])
                .find(|&l| {
                    let (u, v) = (x.f[l - 1], x.f[l]);
                    if b > a {
                        u < i && i <= v
                    } else {
                        v < i && i <= u
                    }
                })
                .expect("a path spanning i crosses it in its net direction");
            let llo = x.f[l - 1].min(x.f[l]);
            let gil = &x.g[l - 1][i - llo - 1];
            block.push(restrict(t.child(i), m.tau(jp, l), gil));
        }
        g.push(block);
    }
    EElem { f, g }
}

impl ThetaSet for ENerve {
    type Elem = EElem;

    fn height(&self) -> usize {
        self.obj.height()
    }

    fn eval(&self, s: &ThetaObj) -> Result<Arc<Value<EElem>>> {
        check_height(self, s)?;
        self.memo.get_or(s, || Ok(self.build(&self.obj, s)))
    }

    fn act(&self, m: &ThetaMor, x: &EElem) -> Result<EElem> {
        Ok(restrict(&self.obj, m, x))
    }

    fn cellular(&self) -> Result<Arc<StrictNCat>> {
        if let Some(c) = self.cellular.get() {
            return Ok(c.clone());
        }
        let c = Arc::new(super::extract_cellular(self)?);
        Ok(self.cellular.get_or_init(|| c).clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::{parse_obj_at, ThetaObj};
    use crate::theta_set::check_functoriality;

    #[test]
    fn counts_at_height_one() {
        for p in 0..=3 {
            let e = e_nerve(&ThetaObj::linear(p, 1));
            for q in 0..=3 {
                assert_eq!(e.eval(&ThetaObj::linear(q, 1)).unwrap().len(), (p + 1).pow(q as u32 + 1));
            }
        }
    }

    #[test]
    fn walking_two_cell() {
        let e = e_nerve(&ThetaObj::cell(2, 2));
        assert_eq!(e.eval(&ThetaObj::cell(0, 2)).unwrap().len(), 2);
        assert_eq!(e.eval(&ThetaObj::cell(1, 2)).unwrap().len(), 6);
        assert_eq!(e.eval(&parse_obj_at("[2]", 2).unwrap()).unwrap().len(), 18);
    }

    #[test]
    fn functorial_at_height_one() {
        for p in 0..=3 {
            assert!(check_functoriality(&e_nerve(&ThetaObj::linear(p, 1)), 4, 9).unwrap().is_none());
        }
    }
}
