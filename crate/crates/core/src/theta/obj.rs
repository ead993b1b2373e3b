use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An object `[p](S_1,…,S_p)` of Θ_n, carrying its height `n` explicitly.
///
/// Height-0 objects are the single point `[0]`. At height `n > 0` every child
/// has height `n - 1`. Cloning is cheap: children are shared.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaObj {
    height: usize,
    children: Arc<[ThetaObj]>,
}

impl ThetaObj {
    /// The object `[0]` at the given height.
    pub fn point(height: usize) -> Self {
        ThetaObj { height, children: Arc::from(Vec::new()) }
    }

    pub fn new(height: usize, children: Vec<ThetaObj>) -> Result<Self> {
        if height == 0 && !children.is_empty() {
            return Err(Error::HeightMismatch(0, 1));
        }
        for c in &children {
            if c.height + 1 != height {
                return Err(Error::HeightMismatch(c.height + 1, height));
            }
        }
        Ok(ThetaObj { height, children: Arc::from(children) })
    }

    /// `[p]([0],…,[0])` at the given height (`height ≥ 1` unless `p = 0`).
    pub fn linear(p: usize, height: usize) -> Self {
        assert!(height >= 1 || p == 0, "[p] with p > 0 needs height at least 1");
        if p == 0 {
            return Self::point(height);
        }
        let child = Self::point(height - 1);
        ThetaObj { height, children: Arc::from(vec![child; p]) }
    }

    /// The k-cell `c_k = [1](c_{k-1})`, padded to `height ≥ k`.
    pub fn cell(k: usize, height: usize) -> Self {
        assert!(k <= height, "c_{k} does not live at height {height}");
        if k == 0 {
            return Self::point(height);
        }
        ThetaObj { height, children: Arc::from(vec![Self::cell(k - 1, height - 1)]) }
    }

    /// `[1](S)`, one height above `S`.
    pub fn suspend(&self) -> Self {
        ThetaObj { height: self.height + 1, children: Arc::from(vec![self.clone()]) }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.children.len()
    }

    pub fn children(&self) -> &[ThetaObj] {
        &self.children
    }

    pub fn child(&self, i: usize) -> &ThetaObj {
        &self.children[i - 1]
    }

    /// Number of bracket nodes in the term tree.
    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(ThetaObj::node_count).sum::<usize>()
    }

    /// Reinterpret at a larger height (the inclusion Θ_i ↪ Θ_j).
    pub fn pad(&self, height: usize) -> Result<Self> {
        if height < self.height {
            return Err(Error::HeightMismatch(self.height, height));
        }
        if height == self.height {
            return Ok(self.clone());
        }
        let children = self
            .children
            .iter()
            .map(|c| c.pad(height - 1))
            .collect::<Result<Vec<_>>>()?;
        Ok(ThetaObj { height, children: Arc::from(children) })
    }

    /// The smallest height at which this shape lives.
    pub fn min_height(&self) -> usize {
        self.children.iter().map(|c| c.min_height() + 1).max().unwrap_or(0)
    }

    /// If this object is a cell `c_k`, returns `k`.
    pub fn cell_dim(&self) -> Option<usize> {
        match self.children.len() {
            0 => Some(0),
            1 => self.children[0].cell_dim().map(|k| k + 1),
            _ => None,
        }
    }

    pub fn is_cell(&self) -> bool {
        self.cell_dim().is_some()
    }

    /// JSON encoding `[p, [child, …]]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!([self.width(), self.children.iter().map(ThetaObj::to_json).collect::<Vec<_>>()])
    }

    /// Decodes `[p, [child, …]]`, returning the object at its minimal height.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        fn go(v: &serde_json::Value) -> Result<ThetaObj> {
            let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::Json(format!("expected [p, [..]], got {v}")))?;
            let p = arr[0].as_u64().ok_or_else(|| Error::Json("width must be a natural number".into()))? as usize;
            let kids = arr[1].as_array().ok_or_else(|| Error::Json("children must be an array".into()))?;
            if kids.len() != p {
                return Err(Error::Arity { pos: 0, width: p, found: kids.len() });
            }
            let kids = kids.iter().map(go).collect::<Result<Vec<_>>>()?;
            assemble(kids)
        }
        go(value)
    }
}

/// Builds `[p](children)` padding children to a common height.
pub(crate) fn assemble(children: Vec<ThetaObj>) -> Result<ThetaObj> {
    if children.is_empty() {
        return Ok(ThetaObj::point(0));
    }
    let h = children.iter().map(ThetaObj::height).max().unwrap_or(0);
    let children = children.into_iter().map(|c| c.pad(h)).collect::<Result<Vec<_>>>()?;
    ThetaObj::new(h + 1, children)
}

impl fmt::Display for ThetaObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.width())?;
        if !self.children.is_empty() {
            write!(f, "(")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ThetaObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}@{}", self.height)
    }
}

/// Every object of the given height with at most `max_nodes` nodes, in a
/// deterministic order (by node count, then structurally).
pub fn objects_up_to(height: usize, max_nodes: usize) -> Vec<ThetaObj> {
    let mut out = Vec::new();
    for nodes in 1..=max_nodes {
        out.extend(objects_with_nodes(height, nodes));
    }
    out
}

fn objects_with_nodes(height: usize, nodes: usize) -> Vec<ThetaObj> {
    if nodes == 0 {
        return Vec::new();
    }
    if height == 0 {
        return if nodes == 1 { vec![ThetaObj::point(0)] } else { Vec::new() };
    }
    // children are sequences of height-(h-1) objects whose node counts sum to nodes-1
    let mut out = Vec::new();
    let mut stack = Vec::new();
    sequences(height - 1, nodes - 1, &mut stack, &mut out, height);
    out
}

fn sequences(
    child_height: usize,
    remaining: usize,
    stack: &mut Vec<ThetaObj>,
    out: &mut Vec<ThetaObj>,
    height: usize,
) {
    if remaining == 0 {
        out.push(ThetaObj { height, children: Arc::from(stack.clone()) });
        return;
    }
    for n in 1..=remaining {
        for c in objects_with_nodes(child_height, n) {
            stack.push(c);
            sequences(child_height, remaining - n, stack, out, height);
            stack.pop();
        }
    }
}
