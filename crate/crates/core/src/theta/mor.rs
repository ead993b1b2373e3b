use std::collections::HashMap;
use std::fmt;

use super::obj::ThetaObj;
use crate::error::{Error, Result};
use crate::util::Odometer;

/// A morphism `(σ, (τ_ij))` of Θ_n.
///
/// `taus[i-1]` holds `τ_ij` for `σ(i-1) < j ≤ σ(i)` in increasing `j`.
/// Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaMor {
    source: ThetaObj,
    target: ThetaObj,
    sigma: Vec<usize>,
    taus: Vec<Vec<ThetaMor>>,
}

impl ThetaMor {
    /// Checked constructor.
    pub fn new(source: ThetaObj, target: ThetaObj, sigma: Vec<usize>, taus: Vec<Vec<ThetaMor>>) -> Result<Self> {
        if source.height() != target.height() {
            return Err(Error::HeightMismatch(source.height(), target.height()));
        }
        let p = source.width();
        let q = target.width();
        if sigma.len() != p + 1 {
            return Err(Error::MalformedMorphism(format!("σ has {} values, source has {} objects", sigma.len(), p + 1)));
        }
        if sigma.iter().any(|&s| s > q) || sigma.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::MalformedMorphism(format!("σ = {sigma:?} is not a monotone map into [{q}]")));
        }
        if taus.len() != p {
            return Err(Error::MalformedMorphism("wrong number of τ blocks".into()));
        }
        for i in 1..=p {
            let block = &taus[i - 1];
            if block.len() != sigma[i] - sigma[i - 1] {
                return Err(Error::MalformedMorphism(format!("τ block {i} has the wrong length")));
            }
            for (off, t) in block.iter().enumerate() {
                let j = sigma[i - 1] + 1 + off;
                if t.source != *source.child(i) || t.target != *target.child(j) {
                    return Err(Error::MalformedMorphism(format!("τ_{i}{j} has the wrong endpoints")));
                }
            }
        }
        Ok(ThetaMor { source, target, sigma, taus })
    }

    pub(crate) fn raw(source: ThetaObj, target: ThetaObj, sigma: Vec<usize>, taus: Vec<Vec<ThetaMor>>) -> Self {
        ThetaMor { source, target, sigma, taus }
    }

    pub fn identity(t: &ThetaObj) -> Self {
        let p = t.width();
        let taus = (1..=p).map(|i| vec![ThetaMor::identity(t.child(i))]).collect();
        ThetaMor { source: t.clone(), target: t.clone(), sigma: (0..=p).collect(), taus }
    }

    /// The morphism sending every object of `s` to object `a` of `t`.
    pub fn constant(s: &ThetaObj, t: &ThetaObj, a: usize) -> Self {
        assert!(a <= t.width());
        ThetaMor {
            source: s.clone(),
            target: t.clone(),
            sigma: vec![a; s.width() + 1],
            taus: vec![Vec::new(); s.width()],
        }
    }

    pub fn source(&self) -> &ThetaObj {
        &self.source
    }

    pub fn target(&self) -> &ThetaObj {
        &self.target
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// `τ_ij`, for `σ(i-1) < j ≤ σ(i)`.
    pub fn tau(&self, i: usize, j: usize) -> &ThetaMor {
        &self.taus[i - 1][j - self.sigma[i - 1] - 1]
    }

    pub fn tau_block(&self, i: usize) -> &[ThetaMor] {
        &self.taus[i - 1]
    }

    pub fn height(&self) -> usize {
        self.source.height()
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &ThetaMor) -> Result<ThetaMor> {
        compose(self, f)
    }

    /// Closed: σ is a consecutive inclusion and every τ is closed.
    pub fn is_closed(&self) -> bool {
        let s0 = self.sigma[0];
        self.sigma.iter().enumerate().all(|(i, &s)| s == s0 + i)
            && self.taus.iter().flatten().all(ThetaMor::is_closed)
    }

    /// Active: σ preserves both endpoints and every τ is active.
    pub fn is_active(&self) -> bool {
        self.sigma[0] == 0
            && *self.sigma.last().unwrap() == self.target.width()
            && self.taus.iter().flatten().all(ThetaMor::is_active)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && *self == ThetaMor::identity(&self.source)
    }

    /// JSON `{"sigma": [...], "taus": [{"i", "j", "tau"}, ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut taus = Vec::new();
        for i in 1..=self.source.width() {
            for j in self.sigma[i - 1] + 1..=self.sigma[i] {
                taus.push(serde_json::json!({"i": i, "j": j, "tau": self.tau(i, j).to_json()}));
            }
        }
        serde_json::json!({"sigma": self.sigma, "taus": taus})
    }

    pub fn from_json(value: &serde_json::Value, source: &ThetaObj, target: &ThetaObj) -> Result<ThetaMor> {
        let sigma: Vec<usize> = serde_json::from_value(value.get("sigma").cloned().ok_or_else(|| Error::Json("missing sigma".into()))?)?;
        let entries = value.get("taus").and_then(|t| t.as_array()).cloned().unwrap_or_default();
        let mut found: HashMap<(usize, usize), &serde_json::Value> = HashMap::new();
        for e in &entries {
            let i = e.get("i").and_then(|v| v.as_u64()).ok_or_else(|| Error::Json("tau entry needs i".into()))? as usize;
            let j = e.get("j").and_then(|v| v.as_u64()).ok_or_else(|| Error::Json("tau entry needs j".into()))? as usize;
            let tau = e.get("tau").ok_or_else(|| Error::Json("tau entry needs tau".into()))?;
            found.insert((i, j), tau);
        }
        if sigma.len() != source.width() + 1 || sigma.iter().any(|&s| s > target.width()) {
            return Err(Error::MalformedMorphism(format!("σ = {sigma:?} does not fit the endpoints")));
        }
        let mut taus = Vec::new();
        let mut used = 0;
        for i in 1..=source.width() {
            let mut block = Vec::new();
            for j in sigma[i - 1] + 1..=sigma[i].max(sigma[i - 1]) {
                let v = found.get(&(i, j)).ok_or_else(|| Error::MalformedMorphism(format!("missing τ_{i}{j}")))?;
                block.push(ThetaMor::from_json(v, source.child(i), target.child(j))?);
                used += 1;
            }
            taus.push(block);
        }
        if used != found.len() {
            return Err(Error::MalformedMorphism("τ entries outside the index set".into()));
        }
        ThetaMor::new(source.clone(), target.clone(), sigma, taus)
    }
}

impl fmt::Debug for ThetaMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{} σ={:?}", self.source, self.target, self.sigma)?;
        if self.taus.iter().any(|b| !b.is_empty()) {
            write!(f, " τ={:?}", self.taus)?;
        }
        Ok(())
    }
}

/// `g ∘ f`.
pub fn compose(g: &ThetaMor, f: &ThetaMor) -> Result<ThetaMor> {
    if f.target != g.source {
        return Err(Error::NotComposable(format!("target {} ≠ source {}", f.target, g.source)));
    }
    Ok(compose_unchecked(g, f))
}

fn compose_unchecked(g: &ThetaMor, f: &ThetaMor) -> ThetaMor {
    let sigma: Vec<usize> = f.sigma.iter().map(|&s| g.sigma[s]).collect();
    let mut taus = Vec::with_capacity(f.source.width());
    for i in 1..=f.source.width() {
        let mut block = Vec::new();
        // the intervals (σ_g(k-1), σ_g(k)] for σ_f(i-1) < k ≤ σ_f(i) tile (σ(i-1), σ(i)]
        for k in f.sigma[i - 1] + 1..=f.sigma[i] {
            let tf = f.tau(i, k);
            for j in g.sigma[k - 1] + 1..=g.sigma[k] {
                block.push(compose_unchecked(g.tau(k, j), tf));
            }
        }
        taus.push(block);
    }
    ThetaMor { source: f.source.clone(), target: g.target.clone(), sigma, taus }
}

/// Factors `m = closed ∘ active` through the image interval at every level.
pub fn factor_active_closed(m: &ThetaMor) -> (ThetaMor, ThetaMor) {
    let p = m.source.width();
    let a = m.sigma[0];
    let b = m.sigma[p];
    let mut mids = Vec::with_capacity(b - a);
    let mut act_taus = Vec::with_capacity(p);
    let mut cls_taus = Vec::with_capacity(b - a);
    for i in 1..=p {
        let mut block = Vec::new();
        for j in m.sigma[i - 1] + 1..=m.sigma[i] {
            let (act, cls) = factor_active_closed(m.tau(i, j));
            mids.push(act.target.clone());
            block.push(act);
            cls_taus.push(vec![cls]);
        }
        act_taus.push(block);
    }
    let middle = if m.height() == 0 {
        ThetaObj::point(0)
    } else {
        ThetaObj::new(m.height(), mids).expect("factor heights agree")
    };
    let active = ThetaMor {
        source: m.source.clone(),
        target: middle.clone(),
        sigma: m.sigma.iter().map(|s| s - a).collect(),
        taus: act_taus,
    };
    let closed = ThetaMor {
        source: middle,
        target: m.target.clone(),
        sigma: (a..=b).collect(),
        taus: cls_taus,
    };
    (active, closed)
}

/// Memoizing enumerator of Hom sets.
#[derive(Default)]
pub struct HomCache {
    homs: HashMap<(ThetaObj, ThetaObj), std::sync::Arc<Vec<ThetaMor>>>,
}

impl HomCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every morphism `s → t`: σ in lexicographic order, then τ choices in
    /// index order with the last index varying fastest.
    pub fn hom(&mut self, s: &ThetaObj, t: &ThetaObj) -> Result<std::sync::Arc<Vec<ThetaMor>>> {
        if s.height() != t.height() {
            return Err(Error::HeightMismatch(s.height(), t.height()));
        }
        Ok(self.hom_unchecked(s, t))
    }

    fn hom_unchecked(&mut self, s: &ThetaObj, t: &ThetaObj) -> std::sync::Arc<Vec<ThetaMor>> {
        let key = (s.clone(), t.clone());
        if let Some(h) = self.homs.get(&key) {
            return h.clone();
        }
        let mut out = Vec::new();
        if s.height() == 0 {
            out.push(ThetaMor::identity(s));
        } else {
            let p = s.width();
            let q = t.width();
            for sigma in monotone_maps(p, q) {
                let mut slots: Vec<(usize, usize)> = Vec::new();
                for i in 1..=p {
                    for j in sigma[i - 1] + 1..=sigma[i] {
                        slots.push((i, j));
                    }
                }
                let choices: Vec<_> = slots.iter().map(|&(i, j)| self.hom_unchecked(s.child(i), t.child(j))).collect();
                for idx in Odometer::new(choices.iter().map(|c| c.len()).collect()) {
                    let mut taus: Vec<Vec<ThetaMor>> = vec![Vec::new(); p];
                    for (n, &(i, _)) in slots.iter().enumerate() {
                        taus[i - 1].push(choices[n][idx[n]].clone());
                    }
                    out.push(ThetaMor { source: s.clone(), target: t.clone(), sigma: sigma.clone(), taus });
                }
            }
        }
        let out = std::sync::Arc::new(out);
        self.homs.insert(key, out.clone());
        out
    }
}

/// Weakly monotone maps `{0..p} → {0..q}` in lexicographic order.
pub fn monotone_maps(p: usize, q: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p + 1);
    fn go(p: usize, q: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=q {
            cur.push(v);
            go(p, q, v, cur, out);
            cur.pop();
        }
    }
    go(p, q, 0, &mut cur, &mut out);
    out
}

pub fn enumerate_morphisms(s: &ThetaObj, t: &ThetaObj) -> Result<Vec<ThetaMor>> {
    Ok(HomCache::new().hom(s, t)?.as_ref().clone())
}

/// Every closed morphism into `t`, generated directly from intervals.
pub fn closed_into(t: &ThetaObj) -> Vec<ThetaMor> {
    if t.height() == 0 {
        return vec![ThetaMor::identity(t)];
    }
    let q = t.width();
    let subs: Vec<Vec<ThetaMor>> = (1..=q).map(|j| closed_into(t.child(j))).collect();
    let mut out = Vec::new();
    for a in 0..=q {
        for b in a..=q {
            let lists: Vec<&Vec<ThetaMor>> = (a + 1..=b).map(|j| &subs[j - 1]).collect();
            for idx in Odometer::new(lists.iter().map(|l| l.len()).collect()) {
                let chosen: Vec<&ThetaMor> = lists.iter().zip(&idx).map(|(l, &k)| &l[k]).collect();
                let children: Vec<ThetaObj> = chosen.iter().map(|m| m.source.clone()).collect();
                let source = ThetaObj::new(t.height(), children).expect("heights agree");
                out.push(ThetaMor {
                    source,
                    target: t.clone(),
                    sigma: (a..=b).collect(),
                    taus: chosen.into_iter().map(|m| vec![m.clone()]).collect(),
                });
            }
        }
    }
    out
}
