//! Segal covers and the set-level Segal condition.

use std::collections::{HashMap, HashSet};
use std::fmt::Write;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::theta::{closed_into, closed_slice_poset, objects_up_to, ClosedSlicePoset, ThetaMor, ThetaObj};
use crate::theta_set::{CellComplex, LimitPlan, ThetaSet, Value};

/// The cell poset of `T` as a diagram, with its cocone.
#[derive(Clone, Debug)]
pub struct SegalCover {
    pub target: ThetaObj,
    pub poset: ClosedSlicePoset,
    /// One vertex per cell `c_k ↪ T`; one edge per strict relation.
    pub diagram: CellComplex,
    /// The closed inclusion of each vertex into `T`.
    pub legs: Vec<ThetaMor>,
}

pub fn maximal_segal_cover(t: &ThetaObj) -> SegalCover {
    let poset = closed_slice_poset(t, true);
    let vertices = poset.elements.iter().map(|m| m.source().clone()).collect();
    let edges = poset.order.iter().filter(|(a, b, _)| a != b).map(|(a, b, h)| (*a, *b, h.clone())).collect();
    let diagram = CellComplex::new(vertices, edges).expect("poset edges are well-typed");
    SegalCover { target: t.clone(), legs: poset.elements.clone(), poset, diagram }
}

impl SegalCover {
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        writeln!(s, "digraph segal_cover {{").unwrap();
        writeln!(s, "  label=\"{}\";", self.target).unwrap();
        writeln!(s, "  target [shape=box, label=\"{}\"];", self.target).unwrap();
        for (i, m) in self.legs.iter().enumerate() {
            writeln!(s, "  n{i} [label=\"{} σ={:?}\"];", m.source(), m.sigma()).unwrap();
        }
        for (a, b) in self.poset.covers() {
            writeln!(s, "  n{a} -> n{b};").unwrap();
        }
        if let Some(top) = self.poset.maximum() {
            writeln!(s, "  n{top} -> target [style=dashed];").unwrap();
        } else {
            for (i, _) in self.legs.iter().enumerate() {
                if !self.poset.covers().iter().any(|&(a, _)| a == i) {
                    writeln!(s, "  n{i} -> target [style=dashed];").unwrap();
                }
            }
        }
        writeln!(s, "}}").unwrap();
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegalRow {
    pub object: String,
    pub lhs_card: usize,
    pub rhs_card: usize,
    pub status: &'static str,
}

/// What went wrong at the first failing object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SegalDefect {
    /// A compatible family with no preimage.
    Missing { object: String, family: String },
    /// Two elements with the same restrictions.
    Duplicated { object: String, first: String, second: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct SegalReport {
    pub rows: Vec<SegalRow>,
    pub defect: Option<SegalDefect>,
}

impl SegalReport {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(|r| r.status == "pass")
    }

    pub fn first_failure(&self) -> Option<&SegalRow> {
        self.rows.iter().find(|r| r.status != "pass")
    }
}

/// Compares `F(T)` with the limit of `F` over the maximal Segal cover of
/// `T`, for every `T` of `F`'s height with at most `bound` nodes.
pub fn is_segal<F: ThetaSet + ?Sized>(f: &F, bound: usize) -> Result<SegalReport> {
    let objs = objects_up_to(f.height(), bound);
    let mut rows = Vec::with_capacity(objs.len());
    let mut defect = None;
    for t in &objs {
        let (row, d) = segal_at(f, t)?;
        if defect.is_none() {
            defect = d;
        }
        rows.push(row);
    }
    Ok(SegalReport { rows, defect })
}

/// The Segal comparison at a single object.
pub fn segal_at<F: ThetaSet + ?Sized>(f: &F, t: &ThetaObj) -> Result<(SegalRow, Option<SegalDefect>)> {
    let cover = maximal_segal_cover(t);
    let lhs = f.eval(t)?;
    let plan = LimitPlan::new(f, &cover.diagram)?;
    let free = plan.free();
    let mut seen: FxHashMap<Vec<usize>, usize> = FxHashMap::with_capacity_and_hasher(lhs.len(), Default::default());
    let mut defect = None;
    let mut cur = vec![0; cover.legs.len()];
    for (i, x) in lhs.elems.iter().enumerate() {
        for &v in &free {
            let r = f.act(&cover.legs[v], x)?;
            cur[v] = plan.values[v].index_of(&r).ok_or_else(|| Error::Evaluation(format!("restriction {r:?} is not in F({})", cover.legs[v].source())))?;
        }
        if !plan.complete(&mut cur) {
            return Err(Error::Evaluation(format!("restriction of {x:?} is not a compatible family over {t}")));
        }
        let key = free.iter().map(|&v| cur[v]).collect();
        if let Some(prev) = seen.insert(key, i) {
            defect.get_or_insert(SegalDefect::Duplicated {
                object: t.to_string(),
                first: format!("{:?}", lhs.elems[prev]),
                second: format!("{x:?}"),
            });
        }
    }
    let rhs_card = plan.count();
    if defect.is_none() && rhs_card != lhs.len() {
        let mut missing = None;
        plan.for_each(|idx| {
            if missing.is_none() && !seen.contains_key(&free.iter().map(|&v| idx[v]).collect::<Vec<_>>()) {
                let fam: Vec<_> = idx.iter().enumerate().map(|(v, &i)| &plan.values[v].elems[i]).collect();
                missing = Some(format!("{fam:?}"));
            }
        });
        defect = missing.map(|family| SegalDefect::Missing { object: t.to_string(), family });
    }
    let row = SegalRow {
        object: t.to_string(),
        lhs_card: lhs.len(),
        rhs_card,
        status: if defect.is_none() { "pass" } else { "fail" },
    };
    Ok((row, defect))
}

/// `Hom_cls(−, U)`, evaluated only along closed maps.
struct ClosedHom {
    probe: ThetaObj,
    memo: std::sync::Mutex<HashMap<ThetaObj, Arc<Value<ThetaMor>>>>,
}

impl ThetaSet for ClosedHom {
    type Elem = ThetaMor;

    fn height(&self) -> usize {
        self.probe.height()
    }

    fn eval(&self, s: &ThetaObj) -> Result<Arc<Value<ThetaMor>>> {
        let mut memo = self.memo.lock().unwrap();
        let v = memo.entry(s.clone()).or_insert_with(|| {
            Arc::new(Value::new(closed_into(&self.probe).into_iter().filter(|m| m.source() == s).collect()))
        });
        Ok(v.clone())
    }

    fn act(&self, m: &ThetaMor, x: &ThetaMor) -> Result<ThetaMor> {
        x.after(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeRow {
    pub probe: String,
    pub lhs_card: usize,
    pub rhs_card: usize,
    pub bijective: bool,
}

/// Checks, for every probe `U` with at most `bound` nodes, that closed maps
/// `T → U` correspond bijectively to compatible families of closed maps out
/// of the diagram. `legs[v] : X_v → T` is the cocone.
pub fn verify_cover_in_closed(t: &ThetaObj, diagram: &CellComplex, legs: &[ThetaMor], bound: usize) -> Result<Vec<ProbeRow>> {
    if legs.len() != diagram.vertices.len() {
        return Err(Error::MalformedMorphism("one leg per vertex required".into()));
    }
    for (v, m) in legs.iter().enumerate() {
        if m.source() != &diagram.vertices[v] || m.target() != t || !m.is_closed() {
            return Err(Error::MalformedMorphism(format!("leg {v} is not a closed map into {t}")));
        }
    }
    for (a, b, h) in &diagram.edges {
        if !h.is_closed() || legs[*b].after(h)? != legs[*a] {
            return Err(Error::MalformedMorphism(format!("edge {a} → {b} is not closed or the cocone does not commute")));
        }
    }
    let mut rows = Vec::new();
    for u in objects_up_to(t.height(), bound) {
        let hom = ClosedHom { probe: u.clone(), memo: Default::default() };
        let lhs = hom.eval(t)?;
        let rhs = LimitPlan::new(&hom, diagram)?.count();
        let images: HashSet<Vec<ThetaMor>> =
            lhs.elems.iter().map(|x| legs.iter().map(|m| x.after(m)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        let bijective = images.len() == lhs.len() && images.len() == rhs;
        rows.push(ProbeRow { probe: u.to_string(), lhs_card: lhs.len(), rhs_card: rhs, bijective });
    }
    Ok(rows)
}
