use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use serde_json::{json, Value as Json};

use super::{check_height, Memo, ThetaSet, Value};
use crate::error::{Error, Result};
use crate::theta::{enumerate_morphisms, parse_obj, ThetaMor, ThetaObj};

/// A finite diagram of representables, read as a formal colimit.
/// `edges` holds `(from, to, m)` with `m : vertices[from] → vertices[to]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    pub vertices: Vec<ThetaObj>,
    pub edges: Vec<(usize, usize, ThetaMor)>,
}

impl CellComplex {
    pub fn new(vertices: Vec<ThetaObj>, edges: Vec<(usize, usize, ThetaMor)>) -> Result<Self> {
        let h = vertices.first().map(ThetaObj::height).unwrap_or(0);
        for v in &vertices {
            if v.height() != h {
                return Err(Error::HeightMismatch(v.height(), h));
            }
        }
        for (a, b, m) in &edges {
            if *a >= vertices.len() || *b >= vertices.len() {
                return Err(Error::MalformedMorphism(format!("edge {a} → {b} leaves the diagram")));
            }
            if m.source() != &vertices[*a] || m.target() != &vertices[*b] {
                return Err(Error::MalformedMorphism(format!("edge {a} → {b} has the wrong endpoints")));
            }
        }
        Ok(CellComplex { vertices, edges })
    }

    pub fn representable(t: &ThetaObj) -> Self {
        CellComplex { vertices: vec![t.clone()], edges: Vec::new() }
    }

    pub fn height(&self) -> usize {
        self.vertices.first().map(ThetaObj::height).unwrap_or(0)
    }

    /// `c_1 ⊔_{c_0} c_1` at height 1.
    pub fn spine2() -> Self {
        let (c0, c1) = (ThetaObj::cell(0, 1), ThetaObj::cell(1, 1));
        let end = |a: usize| ThetaMor::new(c0.clone(), c1.clone(), vec![a], vec![]).unwrap();
        CellComplex::new(vec![c1.clone(), c0.clone(), c1.clone()], vec![(1, 0, end(1)), (1, 2, end(0))]).unwrap()
    }

    /// `{"height": n?, "vertices": [obj, …], "edges": [{"from", "to", "mor"}, …]}`;
    /// objects as terms or nested arrays, padded to a common height.
    pub fn from_json(v: &Json) -> Result<Self> {
        let verts = v.get("vertices").and_then(Json::as_array).ok_or_else(|| Error::Json("missing vertices".into()))?;
        let mut objs = Vec::new();
        for o in verts {
            objs.push(match o {
                Json::String(s) => parse_obj(s)?,
                _ => ThetaObj::from_json(o)?,
            });
        }
        let h = match v.get("height") {
            Some(h) => h.as_u64().ok_or_else(|| Error::Json("height must be a natural number".into()))? as usize,
            None => objs.iter().map(ThetaObj::height).max().unwrap_or(0),
        };
        let objs = objs.into_iter().map(|o| o.pad(h)).collect::<Result<Vec<_>>>()?;
        let mut edges = Vec::new();
        for e in v.get("edges").and_then(Json::as_array).map(Vec::as_slice).unwrap_or(&[]) {
            let end = |k: &str| {
                e.get(k)
                    .and_then(Json::as_u64)
                    .map(|x| x as usize)
                    .filter(|&x| x < objs.len())
                    .ok_or_else(|| Error::Json(format!("edge needs a valid \"{k}\"")))
            };
            let (a, b) = (end("from")?, end("to")?);
            let mor = e.get("mor").ok_or_else(|| Error::Json("edge needs \"mor\"".into()))?;
            edges.push((a, b, ThetaMor::from_json(mor, &objs[a], &objs[b])?));
        }
        CellComplex::new(objs, edges)
    }

    pub fn to_json(&self) -> Json {
        json!({
            "height": self.height(),
            "vertices": self.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|(a, b, m)| json!({"from": a, "to": b, "mor": m.to_json()})).collect::<Vec<_>>(),
        })
    }

    /// Vertices in an order where every edge target precedes its source.
    fn reverse_topological(&self) -> Result<Vec<usize>> {
        let n = self.vertices.len();
        let mut out_deg = vec![0usize; n];
        let mut into: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (a, b, _) in &self.edges {
            out_deg[*a] += 1;
            into[*b].push(*a);
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| out_deg[v] == 0).collect();
        ready.reverse();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for &a in &into[v] {
                out_deg[a] -= 1;
                if out_deg[a] == 0 {
                    ready.push(a);
                }
            }
        }
        if order.len() != n {
            return Err(Error::MalformedMorphism("diagram has a cycle".into()));
        }
        Ok(order)
    }
}

/// The limit of `F` over the diagram: families `(x_v ∈ F(X_v))` with
/// `m^* x_to = x_from` along every edge, in a deterministic order.
pub fn eval_complex<F: ThetaSet + ?Sized>(f: &F, x: &CellComplex) -> Result<Vec<Vec<F::Elem>>> {
    let plan = LimitPlan::new(f, x)?;
    let mut out = Vec::new();
    plan.for_each(|idx| out.push(idx.iter().enumerate().map(|(v, &i)| plan.values[v].elems[i].clone()).collect()));
    Ok(out)
}

/// The limit worked on indices. Vertices without outgoing edges are
/// branched on; the rest are read off restriction tables.
pub(crate) struct LimitPlan<E> {
    pub values: Vec<Arc<Value<E>>>,
    order: Vec<usize>,
    /// `(from, to, table)`: `table[i]` indexes `m^* values[to][i]` in `values[from]`.
    pub tables: Vec<(usize, usize, Vec<usize>)>,
    outgoing: Vec<Vec<usize>>,
}

impl<E: Clone + Eq + std::hash::Hash + std::fmt::Debug> LimitPlan<E> {
    pub fn new<F: ThetaSet<Elem = E> + ?Sized>(f: &F, x: &CellComplex) -> Result<Self> {
        let order = x.reverse_topological()?;
        let values: Vec<_> = x.vertices.iter().map(|v| f.eval(v)).collect::<Result<_>>()?;
        let mut tables = Vec::with_capacity(x.edges.len());
        let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); x.vertices.len()];
        for (e, (a, b, m)) in x.edges.iter().enumerate() {
            outgoing[*a].push(e);
            let table = values[*b]
                .elems
                .iter()
                .map(|y| {
                    let r = f.act(m, y)?;
                    values[*a].index_of(&r).ok_or_else(|| Error::Evaluation(format!("restriction {r:?} is not in F({})", x.vertices[*a])))
                })
                .collect::<Result<_>>()?;
            tables.push((*a, *b, table));
        }
        Ok(LimitPlan { values, order, tables, outgoing })
    }

    /// Vertices whose component determines a family.
    pub fn free(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&v| self.outgoing[v].is_empty()).collect()
    }

    /// Completes an assignment on the free vertices, if compatible.
    pub fn complete(&self, cur: &mut [usize]) -> bool {
        for &v in &self.order {
            if let Some((&first, rest)) = self.outgoing[v].split_first() {
                let forced = self.forced(first, cur);
                if rest.iter().any(|&e| self.forced(e, cur) != forced) {
                    return false;
                }
                cur[v] = forced;
            }
        }
        true
    }

    fn forced(&self, e: usize, cur: &[usize]) -> usize {
        let (_, b, t) = &self.tables[e];
        t[cur[*b]]
    }

    pub fn for_each(&self, mut visit: impl FnMut(&[usize])) {
        let mut cur = vec![usize::MAX; self.values.len()];
        self.go(0, &mut cur, &mut visit);
    }

    pub fn count(&self) -> usize {
        let mut n = 0;
        self.for_each(|_| n += 1);
        n
    }

    fn go(&self, step: usize, cur: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if step == self.order.len() {
            visit(cur);
            return;
        }
        let v = self.order[step];
        if let Some((&first, rest)) = self.outgoing[v].split_first() {
            let forced = self.forced(first, cur);
            if rest.iter().all(|&e| self.forced(e, cur) == forced) {
                cur[v] = forced;
                self.go(step + 1, cur, visit);
            }
        } else {
            for i in 0..self.values[v].len() {
                cur[v] = i;
                self.go(step + 1, cur, visit);
            }
        }
        cur[v] = usize::MAX;
    }
}

/// The presheaf colimit of a cell complex: `S ↦ (⊔_v Hom(S, X_v)) / ∼`.
/// Elements are canonical representatives `(v, a)`, the least in their class.
pub struct ComplexPresheaf {
    complex: CellComplex,
    memo: Memo<(usize, ThetaMor)>,
    canon: std::sync::Mutex<HashMap<(usize, ThetaMor), (usize, ThetaMor)>>,
}

impl ComplexPresheaf {
    pub fn new(complex: CellComplex) -> Self {
        ComplexPresheaf { complex, memo: Memo::new(), canon: std::sync::Mutex::new(HashMap::new()) }
    }

    pub fn complex(&self) -> &CellComplex {
        &self.complex
    }

    fn build(&self, s: &ThetaObj) -> Result<Vec<(usize, ThetaMor)>> {
        let mut all: Vec<(usize, ThetaMor)> = Vec::new();
        for (v, xv) in self.complex.vertices.iter().enumerate() {
            all.extend(enumerate_morphisms(s, xv)?.into_iter().map(|m| (v, m)));
        }
        let pos: HashMap<&(usize, ThetaMor), usize> = all.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut uf = UnionFind::<usize>::new(all.len());
        for (a, b, m) in &self.complex.edges {
            for (i, (v, x)) in all.iter().enumerate() {
                if v == a {
                    let j = pos[&(*b, m.after(x)?)];
                    uf.union(i, j);
                }
            }
        }
        // least member of each class (all is sorted by vertex, then hom order)
        let mut rep: HashMap<usize, usize> = HashMap::new();
        for i in 0..all.len() {
            rep.entry(uf.find(i)).or_insert(i);
        }
        let mut canon = self.canon.lock().unwrap();
        let mut elems = Vec::new();
        for i in 0..all.len() {
            let r = rep[&uf.find(i)];
            canon.insert(all[i].clone(), all[r].clone());
            if r == i {
                elems.push(all[i].clone());
            }
        }
        Ok(elems)
    }
}

impl ThetaSet for ComplexPresheaf {
    type Elem = (usize, ThetaMor);

    fn height(&self) -> usize {
        self.complex.height()
    }

    fn eval(&self, s: &ThetaObj) -> Result<Arc<Value<Self::Elem>>> {
        check_height(self, s)?;
        self.memo.get_or(s, || self.build(s))
    }

    fn act(&self, m: &ThetaMor, x: &Self::Elem) -> Result<Self::Elem> {
        self.eval(m.source())?;
        let raw = (x.0, x.1.after(m)?);
        Ok(self.canon.lock().unwrap()[&raw].clone())
    }
}
