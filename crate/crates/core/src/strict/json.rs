//! JSON forms of a strict n-category.
//!
//! Full form, round-trips exactly:
//!
//! ```json
//! {"level": 1, "objects": ["a", "b"],
//!  "cells": [{"src": [0, 1, 0], "tgt": [0, 1, 1]}],
//!  "identities": [[0, 1]],
//!  "compose": [[[0, 2, 0, 2], ...]]}
//! ```
//!
//! `cells[k-1]` gives boundaries of the k-cells, `identities[k]` the identity
//! of each k-cell, and `compose[k-1]` lists `[j, x, y, x ∘_j y]`.
//!
//! Presentation form for 1-categories, identities named `id_<object>` and
//! unit composites implied:
//!
//! ```json
//! {"objects": ["a", "b"], "arrows": [["f", "a", "b"], ["g", "b", "a"]],
//!  "compose": [["g", "f", "id_a"], ["f", "g", "id_b"]]}
//! ```

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::build::{lawful, pad_to_level};
use super::cat::{Dim, StrictNCat};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct Full {
    level: usize,
    objects: Vec<String>,
    cells: Vec<Boundaries>,
    identities: Vec<Vec<usize>>,
    compose: Vec<Vec<[usize; 4]>>,
}

#[derive(Serialize, Deserialize)]
struct Boundaries {
    src: Vec<usize>,
    tgt: Vec<usize>,
}

#[derive(Deserialize)]
struct Presentation {
    objects: Vec<String>,
    arrows: Vec<(String, String, String)>,
    #[serde(default)]
    compose: Vec<(String, String, String)>,
}

impl StrictNCat {
    pub fn to_json(&self) -> Value {
        let n = self.level();
        let mut compose = Vec::new();
        for k in 1..=n {
            let mut rows: Vec<[usize; 4]> = (0..k)
                .flat_map(|j| self.dim(k).comp[j].iter().map(move |(&(x, y), &z)| [j, x, y, z]))
                .collect();
            rows.sort();
            compose.push(rows);
        }
        let full = Full {
            level: n,
            objects: self.names().to_vec(),
            cells: (1..=n).map(|k| Boundaries { src: self.dim(k).src.clone(), tgt: self.dim(k).tgt.clone() }).collect(),
            identities: (0..n).map(|k| self.dim(k).ident.clone()).collect(),
            compose,
        };
        serde_json::to_value(full).expect("serializable")
    }

    /// Reads either form; the laws are checked. A presentation is padded to
    /// `level` when given.
    pub fn from_json(v: &Value, level: Option<usize>) -> Result<StrictNCat> {
        let c = if v.get("arrows").is_some() {
            from_presentation(serde_json::from_value(v.clone())?)?
        } else {
            let f: Full = serde_json::from_value(v.clone())?;
            from_full(f)?
        };
        match level {
            Some(n) => pad_to_level(&c, n),
            None => Ok(c),
        }
    }
}

fn from_full(f: Full) -> Result<StrictNCat> {
    let n = f.level;
    if f.cells.len() != n || f.identities.len() != n || f.compose.len() != n {
        return Err(Error::Json(format!("level {n} needs {n} entries in cells, identities and compose")));
    }
    let mut dims = vec![Dim { count: f.objects.len(), ..Default::default() }];
    for k in 1..=n {
        let b = &f.cells[k - 1];
        if b.src.len() != b.tgt.len() {
            return Err(Error::Json(format!("dimension {k}: src and tgt lengths differ")));
        }
        let mut d = Dim { count: b.src.len(), src: b.src.clone(), tgt: b.tgt.clone(), ..Default::default() };
        d.comp = vec![HashMap::new(); k];
        for &[j, x, y, z] in &f.compose[k - 1] {
            if j >= k {
                return Err(Error::Json(format!("dimension {k}: no composition ∘_{j}")));
            }
            d.comp[j].insert((x, y), z);
        }
        dims.push(d);
    }
    for k in 0..n {
        dims[k].ident = f.identities[k].clone();
    }
    lawful(StrictNCat::from_dims(n, f.objects, dims)?)
}

fn from_presentation(p: Presentation) -> Result<StrictNCat> {
    let obj: HashMap<&str, usize> = p.objects.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let mut names: Vec<String> = p.objects.iter().map(|o| format!("id_{o}")).collect();
    let mut ends: Vec<(usize, usize)> = (0..p.objects.len()).map(|a| (a, a)).collect();
    for (name, s, t) in &p.arrows {
        let look = |o: &String| obj.get(o.as_str()).copied().ok_or_else(|| Error::Json(format!("unknown object {o}")));
        names.push(name.clone());
        ends.push((look(s)?, look(t)?));
    }
    let arrow: HashMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    if arrow.len() != names.len() {
        return Err(Error::Json("arrow names must be distinct".into()));
    }
    let look = |a: &String| arrow.get(a.as_str()).copied().ok_or_else(|| Error::Json(format!("unknown arrow {a}")));
    let ids = p.objects.len();
    let mut table = HashMap::new();
    for (x, &(sx, _)) in ends.iter().enumerate() {
        for (y, &(_, ty)) in ends.iter().enumerate() {
            if sx == ty && (x < ids || y < ids) {
                table.insert((x, y), if x < ids { y } else { x });
            }
        }
    }
    for (g, f, h) in &p.compose {
        table.insert((look(g)?, look(f)?), look(h)?);
    }
    let d0 = Dim { count: ids, ident: (0..ids).collect(), ..Default::default() };
    let d1 = Dim {
        count: ends.len(),
        src: ends.iter().map(|e| e.0).collect(),
        tgt: ends.iter().map(|e| e.1).collect(),
        ident: Vec::new(),
        comp: vec![table],
    };
    lawful(StrictNCat::from_dims(1, p.objects, vec![d0, d1])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strict::catalog::walking_iso;
    use crate::strict::props::is_isomorphic;
    use crate::strict::theta_cat::from_theta;
    use crate::theta::parse_obj;

    #[test]
    fn full_round_trip() {
        let c = from_theta(&parse_obj("[2]([1]([0]),[0])").unwrap());
        assert_eq!(StrictNCat::from_json(&c.to_json(), None).unwrap(), c);
    }

    #[test]
    fn presentation() {
        let v = serde_json::json!({
            "objects": ["a", "b"],
            "arrows": [["f", "a", "b"], ["g", "b", "a"]],
            "compose": [["g", "f", "id_a"], ["f", "g", "id_b"]]
        });
        let c = StrictNCat::from_json(&v, Some(2)).unwrap();
        assert!(is_isomorphic(&c, &walking_iso(2)));
        let bad = serde_json::json!({"objects": ["a"], "arrows": [["e", "a", "a"]]});
        assert!(matches!(StrictNCat::from_json(&bad, None), Err(Error::MalformedCategory(_))));
    }
}
