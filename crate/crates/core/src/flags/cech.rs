use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value as Json};

use crate::error::{Error, Result};
use crate::strict::{is_strict_groupoid, level1, StrictNCat};
use crate::theta::{ThetaMor, ThetaObj};
use crate::theta_set::{set_colimit, ThetaSet, Value};
use crate::util::Odometer;

/// `X_0 → X_1 → ⋯ → X_n` of finite sets; `maps[i] : X_i → X_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFlag {
    pub levels: Vec<Vec<String>>,
    pub maps: Vec<Vec<usize>>,
}

impl SetFlag {
    /// `X_0 → X_1` surjective and every later map bijective.
    pub fn new(levels: Vec<Vec<String>>, maps: Vec<Vec<usize>>) -> Result<Self> {
        if levels.len() < 2 || maps.len() != levels.len() - 1 {
            return Err(Error::FlagInvariant("a set flag needs n ≥ 1 and one map per level".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.len() != levels[i].len() || m.iter().any(|&y| y >= levels[i + 1].len()) {
                return Err(Error::FlagInvariant(format!("map {i} is not a function X_{i} → X_{}", i + 1)));
            }
            let mut hit = vec![false; levels[i + 1].len()];
            for &y in m {
                hit[y] = true;
            }
            if hit.contains(&false) {
                return Err(Error::FlagInvariant(format!("X_{i} → X_{} is not surjective", i + 1)));
            }
            if i > 0 && m.len() != levels[i + 1].len() {
                return Err(Error::FlagInvariant(format!("X_{i} → X_{} is not bijective", i + 1)));
            }
        }
        Ok(SetFlag { levels, maps })
    }

    pub fn height(&self) -> usize {
        self.maps.len()
    }

    /// The fibers of `X_0 → X_1`, by element of `X_1`.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.levels[1].len()];
        for (x, &y) in self.maps[0].iter().enumerate() {
            out[y].push(x);
        }
        out
    }

    /// Equal up to relabelling: same height, same fiber sizes.
    pub fn is_isomorphic(&self, other: &SetFlag) -> bool {
        let sizes = |f: &SetFlag| {
            let mut s: Vec<usize> = f.fibers().iter().map(Vec::len).collect();
            s.sort();
            s
        };
        self.height() == other.height() && sizes(self) == sizes(other)
    }

    /// `{"levels": [[names…], …], "maps": [{"a": "x", …}, …]}`.
    pub fn from_json(v: &Json) -> Result<Self> {
        let bad = |m: &str| Error::Json(m.to_string());
        let levels: Vec<Vec<String>> = v
            .get("levels")
            .and_then(Json::as_array)
            .ok_or_else(|| bad("missing levels"))?
            .iter()
            .map(|l| {
                l.as_array()
                    .ok_or_else(|| bad("a level must be an array"))?
                    .iter()
                    .map(|s| s.as_str().map(str::to_string).ok_or_else(|| bad("elements are strings")))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let raw = v.get("maps").and_then(Json::as_array).ok_or_else(|| bad("missing maps"))?;
        let mut maps = Vec::new();
        for (i, m) in raw.iter().enumerate() {
            let obj = m.as_object().ok_or_else(|| bad("a map must be an object"))?;
            let (from, to) = (levels.get(i).ok_or_else(|| bad("too many maps"))?, levels.get(i + 1).ok_or_else(|| bad("too many maps"))?);
            let mut f = Vec::with_capacity(from.len());
            for x in from {
                let y = obj.get(x).and_then(Json::as_str).ok_or_else(|| Error::Json(format!("map {i} misses {x}")))?;
                f.push(to.iter().position(|z| z == y).ok_or_else(|| Error::Json(format!("map {i} sends {x} outside the next level")))?);
            }
            maps.push(f);
        }
        SetFlag::new(levels, maps)
    }

    pub fn to_json(&self) -> Json {
        let maps: Vec<Json> = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let obj: Map<String, Json> =
                    m.iter().enumerate().map(|(x, &y)| (self.levels[i][x].clone(), json!(self.levels[i + 1][y]))).collect();
                Json::Object(obj)
            })
            .collect();
        json!({ "levels": self.levels, "maps": maps })
    }
}

/// The Cech nerve of a set flag: at `T`, labellings of the objects of `T`
/// by elements of `X_0` lying in a single fiber over `X_1`. The later
/// levels are bijective, so they add no data.
pub struct CechNerve {
    flag: SetFlag,
    memo: std::sync::Mutex<BTreeMap<ThetaObj, Arc<Value<Vec<usize>>>>>,
}

pub fn cech_flag(flag: SetFlag) -> Result<CechNerve> {
    let flag = SetFlag::new(flag.levels, flag.maps)?;
    Ok(CechNerve { flag, memo: Default::default() })
}

impl CechNerve {
    pub fn flag(&self) -> &SetFlag {
        &self.flag
    }
}

impl ThetaSet for CechNerve {
    type Elem = Vec<usize>;

    fn height(&self) -> usize {
        self.flag.height()
    }

    fn eval(&self, t: &ThetaObj) -> Result<Arc<Value<Vec<usize>>>> {
        if t.height() != self.height() {
            return Err(Error::HeightMismatch(t.height(), self.height()));
        }
        let mut memo = self.memo.lock().unwrap();
        if let Some(v) = memo.get(t) {
            return Ok(v.clone());
        }
        let mut elems = Vec::new();
        for fiber in self.flag.fibers() {
            for idx in Odometer::new(vec![fiber.len(); t.width() + 1]) {
                elems.push(idx.iter().map(|&i| fiber[i]).collect::<Vec<_>>());
            }
        }
        elems.sort();
        let v = Arc::new(Value::new(elems));
        memo.insert(t.clone(), v.clone());
        Ok(v)
    }

    fn act(&self, m: &ThetaMor, x: &Vec<usize>) -> Result<Vec<usize>> {
        Ok(m.sigma().iter().map(|&s| x[s]).collect())
    }
}

/// The height-1 Cech nerve of `f : X_0 → ob G`: at `[q]`, tuples
/// `(x_0..x_q; φ_1..φ_q)` with `φ_t : f(x_{t−1}) → f(x_t)`.
pub struct CechGroupoid {
    map: Vec<usize>,
    g: StrictNCat,
    memo: std::sync::Mutex<BTreeMap<ThetaObj, Arc<Value<(Vec<usize>, Vec<usize>)>>>>,
}

pub fn cech_groupoid(map: Vec<usize>, g: StrictNCat) -> Result<CechGroupoid> {
    if g.level() != 1 || !is_strict_groupoid(&g) {
        return Err(Error::NotAGroupoid("expected a 1-groupoid".into()));
    }
    if map.iter().any(|&a| a >= g.object_count()) {
        return Err(Error::NotAGroupoid("the map leaves the objects of G".into()));
    }
    Ok(CechGroupoid { map, g, memo: Default::default() })
}

/// A finite groupoid from
/// `{"objects": [..], "morphisms": [{"name", "source", "target", "inverse"}, ..],
/// "compose": [[g, f, g∘f], ..]}`. Identities are implied as `id_<object>`.
pub fn groupoid_from_json(v: &Json) -> Result<StrictNCat> {
    let bad = |m: String| Error::Json(m);
    let objects = v.get("objects").cloned().ok_or_else(|| bad("missing objects".into()))?;
    let morphisms = v.get("morphisms").and_then(Json::as_array).ok_or_else(|| bad("missing morphisms".into()))?;
    let field = |m: &Json, k: &str| m.get(k).and_then(Json::as_str).map(str::to_string).ok_or_else(|| bad(format!("a morphism needs \"{k}\"")));
    let mut arrows = Vec::new();
    let mut inverses = Vec::new();
    for m in morphisms {
        let name = field(m, "name")?;
        arrows.push(json!([name, field(m, "source")?, field(m, "target")?]));
        inverses.push((name, field(m, "inverse")?));
    }
    let pres = json!({ "objects": objects, "arrows": arrows, "compose": v.get("compose").cloned().unwrap_or(json!([])) });
    let g = StrictNCat::from_json(&pres, None)?;
    if !is_strict_groupoid(&g) {
        return Err(Error::NotAGroupoid("some morphism has no inverse".into()));
    }
    let ids = g.object_count();
    let index = |n: &str| -> Result<usize> {
        if let Some(o) = n.strip_prefix("id_").and_then(|o| g.names().iter().position(|x| x == o)) {
            return Ok(g.ident(0, o));
        }
        inverses.iter().position(|(m, _)| m == n).map(|i| ids + i).ok_or_else(|| bad(format!("unknown morphism {n}")))
    };
    for (m, inv) in &inverses {
        let (x, y) = (index(m)?, index(inv)?);
        let unit = |a: Option<usize>| a.is_some_and(|a| g.is_identity_cell(1, a));
        if !unit(g.compose(1, 0, x, y)) || !unit(g.compose(1, 0, y, x)) {
            return Err(Error::NotAGroupoid(format!("{inv} is not inverse to {m}")));
        }
    }
    Ok(g)
}

impl CechGroupoid {
    pub fn groupoid(&self) -> &StrictNCat {
        &self.g
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    fn arrows(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.g.count(1)).filter(|&x| self.g.src(1, x) == a && self.g.tgt(1, x) == b).collect()
    }
}

impl ThetaSet for CechGroupoid {
    type Elem = (Vec<usize>, Vec<usize>);

    fn height(&self) -> usize {
        1
    }

    fn eval(&self, t: &ThetaObj) -> Result<Arc<Value<Self::Elem>>> {
        if t.height() != 1 {
            return Err(Error::HeightMismatch(t.height(), 1));
        }
        let mut memo = self.memo.lock().unwrap();
        if let Some(v) = memo.get(t) {
            return Ok(v.clone());
        }
        let q = t.width();
        let mut elems = Vec::new();
        for xs in Odometer::new(vec![self.map.len(); q + 1]) {
            let choices: Vec<Vec<usize>> = (1..=q).map(|j| self.arrows(self.map[xs[j - 1]], self.map[xs[j]])).collect();
            for idx in Odometer::new(choices.iter().map(Vec::len).collect()) {
                elems.push((xs.clone(), idx.iter().enumerate().map(|(j, &i)| choices[j][i]).collect()));
            }
        }
        let v = Arc::new(Value::new(elems));
        memo.insert(t.clone(), v.clone());
        Ok(v)
    }

    fn act(&self, m: &ThetaMor, x: &Self::Elem) -> Result<Self::Elem> {
        let sigma = m.sigma();
        let xs = sigma.iter().map(|&s| x.0[s]).collect();
        let mut phis = Vec::with_capacity(sigma.len().saturating_sub(1));
        for w in sigma.windows(2) {
            let mut acc = self.g.ident(0, self.map[x.0[w[0]]]);
            for t in w[0] + 1..=w[1] {
                acc = self.g.compose(1, 0, x.1[t - 1], acc).expect("consecutive arrows compose");
            }
            phis.push(acc);
        }
        Ok((xs, phis))
    }
}

/// `f^* G`: objects `X_0`, arrows `x → y` the arrows `f(x) → f(y)` of `G`.
pub fn pullback_groupoid(map: &[usize], g: &StrictNCat) -> Result<StrictNCat> {
    let mut arrows = Vec::new();
    let mut label = Vec::new();
    for x in 0..map.len() {
        for y in 0..map.len() {
            for a in (0..g.count(1)).filter(|&a| g.src(1, a) == map[x] && g.tgt(1, a) == map[y]) {
                arrows.push((x, y));
                label.push(a);
            }
        }
    }
    let pos = |x: usize, y: usize, a: usize| (0..arrows.len()).find(|&i| arrows[i] == (x, y) && label[i] == a).unwrap();
    let ident: Vec<usize> = (0..map.len()).map(|x| pos(x, x, g.ident(0, map[x]))).collect();
    let names: Vec<String> = (0..map.len()).map(|x| x.to_string()).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    level1(&names, &arrows, &ident, |u, v| {
        let (x, _) = arrows[v];
        let (_, z) = arrows[u];
        pos(x, z, g.compose(1, 0, label[u], label[v]).unwrap())
    })
}

/// Reads a flag back off a Cech nerve: `X_0 = F(c_0)` and every later
/// level the set of connected components.
pub fn extract_flag<F: ThetaSet + ?Sized>(f: &F) -> Result<SetFlag> {
    let n = f.height();
    let points = f.eval(&ThetaObj::point(n))?.len();
    let classes = set_colimit(f)?;
    let mut to_class = vec![0; points];
    for (c, members) in classes.iter().enumerate() {
        for &x in members {
            to_class[x] = c;
        }
    }
    let mut levels = vec![(0..points).map(|x| format!("x{x}")).collect::<Vec<_>>()];
    let mut maps = vec![to_class];
    for i in 1..=n {
        levels.push((0..classes.len()).map(|c| format!("c{c}")).collect());
        if i < n {
            maps.push((0..classes.len()).collect());
        }
    }
    SetFlag::new(levels, maps)
}
