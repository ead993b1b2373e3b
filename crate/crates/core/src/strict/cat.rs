use std::collections::HashMap;

use crate::error::{Error, Result};

/// Cells of one dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Dim {
    pub count: usize,
    /// Empty at dimension 0.
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    /// Identity `(k+1)`-cell of each `k`-cell; empty at the top dimension.
    pub ident: Vec<usize>,
    /// `comp[j][(x, y)] = x ∘_j y`, defined when `src_j(x) = tgt_j(y)`.
    pub comp: Vec<HashMap<(usize, usize), usize>>,
}

/// A finite strict n-category.
///
/// Stored by its cells: `dims[k]` holds the k-cells together with their
/// boundaries, identities and the partial compositions `∘_j` for `j < k`.
/// The enriched view (objects plus hom (n−1)-categories) is [`StrictNCat::hom`].
/// Composition data is taken as given; [`StrictNCat::law_violations`] audits
/// the strict associativity, unit and interchange laws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictNCat {
    level: usize,
    names: Vec<String>,
    dims: Vec<Dim>,
}

impl StrictNCat {
    /// Structural validation only: indices in range, globular boundaries,
    /// identities with the right boundary, compositions with matching
    /// `j`-boundaries. The algebraic laws are not required.
    pub fn from_dims(level: usize, names: Vec<String>, dims: Vec<Dim>) -> Result<Self> {
        let c = StrictNCat { level, names, dims };
        c.check_structure()?;
        Ok(c)
    }

    pub(crate) fn from_dims_unchecked(level: usize, names: Vec<String>, dims: Vec<Dim>) -> Self {
        StrictNCat { level, names, dims }
    }

    fn check_structure(&self) -> Result<()> {
        let bad = |m: String| Err(Error::MalformedCategory(m));
        if self.dims.len() != self.level + 1 {
            return bad(format!("expected {} dimensions, found {}", self.level + 1, self.dims.len()));
        }
        if self.names.len() != self.dims[0].count {
            return bad("one name per object required".into());
        }
        for k in 0..=self.level {
            let d = &self.dims[k];
            let below = if k > 0 { self.dims[k - 1].count } else { 0 };
            let above = if k < self.level { self.dims[k + 1].count } else { 0 };
            let expect_bd = if k == 0 { 0 } else { d.count };
            if d.src.len() != expect_bd || d.tgt.len() != expect_bd {
                return bad(format!("dimension {k}: boundary arrays have the wrong length"));
            }
            if d.src.iter().chain(&d.tgt).any(|&x| x >= below) {
                return bad(format!("dimension {k}: boundary out of range"));
            }
            let expect_id = if k < self.level { d.count } else { 0 };
            if d.ident.len() != expect_id || d.ident.iter().any(|&x| x >= above) {
                return bad(format!("dimension {k}: identities malformed"));
            }
            if d.comp.len() != k {
                return bad(format!("dimension {k}: expected {k} composition tables"));
            }
            if k >= 2 {
                for x in 0..d.count {
                    let (s, t) = (d.src[x], d.tgt[x]);
                    let lower = &self.dims[k - 1];
                    if lower.src[s] != lower.src[t] || lower.tgt[s] != lower.tgt[t] {
                        return bad(format!("{k}-cell {x} is not globular"));
                    }
                }
            }
            if k < self.level {
                let up = &self.dims[k + 1];
                for x in 0..d.count {
                    let i = d.ident[x];
                    if up.src[i] != x || up.tgt[i] != x {
                        return bad(format!("identity of {k}-cell {x} has the wrong boundary"));
                    }
                }
            }
            for j in 0..k {
                for (&(x, y), &z) in &d.comp[j] {
                    if x >= d.count || y >= d.count || z >= d.count {
                        return bad(format!("dimension {k}: composite out of range"));
                    }
                    if self.src_j(k, x, j) != self.tgt_j(k, y, j) {
                        return bad(format!("dimension {k}: ∘_{j} of non-composable cells"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn object_count(&self) -> usize {
        self.dims[0].count
    }

    pub fn count(&self, k: usize) -> usize {
        self.dims[k].count
    }

    pub fn counts(&self) -> Vec<usize> {
        self.dims.iter().map(|d| d.count).collect()
    }

    pub fn dim(&self, k: usize) -> &Dim {
        &self.dims[k]
    }

    pub(crate) fn dims(&self) -> &[Dim] {
        &self.dims
    }

    pub fn src(&self, k: usize, x: usize) -> usize {
        self.dims[k].src[x]
    }

    pub fn tgt(&self, k: usize, x: usize) -> usize {
        self.dims[k].tgt[x]
    }

    /// The `j`-dimensional source of a `k`-cell (`j ≤ k`).
    pub fn src_j(&self, k: usize, mut x: usize, j: usize) -> usize {
        for d in (j + 1..=k).rev() {
            x = self.dims[d].src[x];
        }
        x
    }

    pub fn tgt_j(&self, k: usize, mut x: usize, j: usize) -> usize {
        for d in (j + 1..=k).rev() {
            x = self.dims[d].tgt[x];
        }
        x
    }

    pub fn ident(&self, k: usize, x: usize) -> usize {
        self.dims[k].ident[x]
    }

    /// The iterated identity of a `k`-cell, as an `m`-cell (`k ≤ m`).
    pub fn ident_to(&self, k: usize, mut x: usize, m: usize) -> usize {
        for d in k..m {
            x = self.dims[d].ident[x];
        }
        x
    }

    pub fn compose(&self, k: usize, j: usize, x: usize, y: usize) -> Option<usize> {
        self.dims[k].comp[j].get(&(x, y)).copied()
    }

    /// Whether a `k`-cell is an identity of a `(k−1)`-cell.
    pub fn is_identity_cell(&self, k: usize, x: usize) -> bool {
        k > 0 && self.dims[k - 1].ident[self.dims[k].src[x]] == x
    }

    /// Audits the strict laws: completeness of composition, boundaries of
    /// composites, units, associativity, interchange and identities of
    /// composites. Returns human-readable violations (empty when lawful).
    pub fn law_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for k in 1..=self.level {
            let d = &self.dims[k];
            for j in 0..k {
                // completeness
                for x in 0..d.count {
                    for y in 0..d.count {
                        let composable = self.src_j(k, x, j) == self.tgt_j(k, y, j);
                        let defined = d.comp[j].contains_key(&(x, y));
                        if composable != defined {
                            out.push(format!("dim {k}: ∘_{j}({x},{y}) defined={defined} composable={composable}"));
                        }
                    }
                }
                for (&(x, y), &z) in &d.comp[j] {
                    // boundaries
                    if j == k - 1 {
                        if d.src[z] != d.src[y] || d.tgt[z] != d.tgt[x] {
                            out.push(format!("dim {k}: boundary of {x}∘_{j}{y}"));
                        }
                    } else {
                        let lo = &self.dims[k - 1];
                        if lo.comp[j].get(&(d.src[x], d.src[y])) != Some(&d.src[z])
                            || lo.comp[j].get(&(d.tgt[x], d.tgt[y])) != Some(&d.tgt[z])
                        {
                            out.push(format!("dim {k}: boundary of {x}∘_{j}{y}"));
                        }
                    }
                    // identities of composites
                    if k < self.level {
                        let up = &self.dims[k + 1];
                        if up.comp[j].get(&(d.ident[x], d.ident[y])) != Some(&d.ident[z]) {
                            out.push(format!("dim {k}: id({x}∘_{j}{y}) ≠ id∘id"));
                        }
                    }
                }
                // units
                for x in 0..d.count {
                    let lu = self.ident_to(j, self.tgt_j(k, x, j), k);
                    let ru = self.ident_to(j, self.src_j(k, x, j), k);
                    if d.comp[j].get(&(lu, x)) != Some(&x) || d.comp[j].get(&(x, ru)) != Some(&x) {
                        out.push(format!("dim {k}: unit law fails for {x} along {j}"));
                    }
                }
                // associativity
                for (&(x, y), &xy) in &d.comp[j] {
                    for z in 0..d.count {
                        if let Some(&yz) = d.comp[j].get(&(y, z)) {
                            let a = d.comp[j].get(&(xy, z));
                            let b = d.comp[j].get(&(x, yz));
                            if a.is_none() || a != b {
                                out.push(format!("dim {k}: ({x}∘{y})∘{z} ≠ {x}∘({y}∘{z}) along {j}"));
                            }
                        }
                    }
                }
            }
            // interchange: (x ∘_j x') ∘_i (y ∘_j y') = (x ∘_i y) ∘_j (x' ∘_i y') for i < j
            for j in 1..k {
                for i in 0..j {
                    for (&(x, xp), &xxp) in &d.comp[j] {
                        for (&(y, yp), &yyp) in &d.comp[j] {
                            let lhs = d.comp[i].get(&(xxp, yyp));
                            let (Some(&xy), Some(&xpyp)) = (d.comp[i].get(&(x, y)), d.comp[i].get(&(xp, yp))) else {
                                continue;
                            };
                            let rhs = d.comp[j].get(&(xy, xpyp));
                            if lhs != rhs {
                                out.push(format!("dim {k}: interchange fails for ∘_{i}, ∘_{j}"));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// The hom (n−1)-category between two objects.
    pub fn hom(&self, a: usize, b: usize) -> StrictNCat {
        assert!(self.level >= 1, "a 0-category has no homs");
        // cells of dimension k+1 with 0-source a and 0-target b
        let mut keep: Vec<Vec<usize>> = Vec::new();
        let mut index: Vec<HashMap<usize, usize>> = Vec::new();
        for k in 1..=self.level {
            let cells: Vec<usize> = (0..self.dims[k].count)
                .filter(|&x| self.src_j(k, x, 0) == a && self.tgt_j(k, x, 0) == b)
                .collect();
            index.push(cells.iter().enumerate().map(|(i, &x)| (x, i)).collect());
            keep.push(cells);
        }
        let mut dims = Vec::new();
        for k in 1..=self.level {
            let d = &self.dims[k];
            let cells = &keep[k - 1];
            let mut nd = Dim { count: cells.len(), ..Default::default() };
            if k >= 2 {
                nd.src = cells.iter().map(|&x| index[k - 2][&d.src[x]]).collect();
                nd.tgt = cells.iter().map(|&x| index[k - 2][&d.tgt[x]]).collect();
            }
            if k < self.level {
                nd.ident = cells.iter().map(|&x| index[k][&d.ident[x]]).collect();
            }
            for j in 1..k {
                let mut table = HashMap::new();
                for (&(x, y), &z) in &d.comp[j] {
                    if let (Some(&x), Some(&y), Some(&z)) = (index[k - 1].get(&x), index[k - 1].get(&y), index[k - 1].get(&z)) {
                        table.insert((x, y), z);
                    }
                }
                nd.comp.push(table);
            }
            dims.push(nd);
        }
        let names = keep[0].iter().map(|x| format!("{x}")).collect();
        StrictNCat { level: self.level - 1, names, dims }
    }
}
