use std::collections::{HashMap, VecDeque};
use std::ops::ControlFlow;

use super::cat::StrictNCat;
use crate::error::{Error, Result};

/// A strict functor, stored as one cell map per dimension.
///
/// Source and target are not carried; operations that need them take the
/// categories explicitly. This keeps functors cheap to hash and compare,
/// which matters when they are the elements of a nerve.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NFunctor {
    cells: Vec<Vec<usize>>,
}

impl NFunctor {
    pub fn new(cells: Vec<Vec<usize>>) -> Self {
        NFunctor { cells }
    }

    pub fn identity(c: &StrictNCat) -> Self {
        NFunctor { cells: c.counts().into_iter().map(|n| (0..n).collect()).collect() }
    }

    pub fn level(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn object_map(&self) -> &[usize] {
        &self.cells[0]
    }

    pub fn map(&self, k: usize, x: usize) -> usize {
        self.cells[k][x]
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &NFunctor) -> NFunctor {
        let cells = f
            .cells
            .iter()
            .zip(&self.cells)
            .map(|(fk, gk)| fk.iter().map(|&x| gk[x]).collect())
            .collect();
        NFunctor { cells }
    }

    /// The induced functor `hom_C(a, b) → hom_D(Fa, Fb)`.
    pub fn hom_map(&self, c: &StrictNCat, d: &StrictNCat, a: usize, b: usize) -> NFunctor {
        let (fa, fb) = (self.cells[0][a], self.cells[0][b]);
        let mut cells = Vec::new();
        for k in 1..=c.level() {
            let src: Vec<usize> = (0..c.count(k)).filter(|&x| c.src_j(k, x, 0) == a && c.tgt_j(k, x, 0) == b).collect();
            let tgt: HashMap<usize, usize> = (0..d.count(k))
                .filter(|&y| d.src_j(k, y, 0) == fa && d.tgt_j(k, y, 0) == fb)
                .enumerate()
                .map(|(i, y)| (y, i))
                .collect();
            cells.push(src.iter().map(|&x| tgt[&self.cells[k][x]]).collect());
        }
        NFunctor { cells }
    }

    /// Whether every cell map is a bijection.
    pub fn is_bijective(&self, d: &StrictNCat) -> bool {
        self.cells.iter().enumerate().all(|(k, m)| {
            let mut seen = vec![false; d.count(k)];
            m.len() == d.count(k) && m.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        })
    }
}

/// Checks that `f` is a strict functor `c → d`.
pub fn is_functor(c: &StrictNCat, d: &StrictNCat, f: &NFunctor) -> Result<()> {
    let bad = |m: String| Err(Error::NotAFunctor(m));
    if c.level() != d.level() {
        return Err(Error::LevelMismatch(c.level(), d.level()));
    }
    if f.cells.len() != c.level() + 1 {
        return bad("wrong number of cell maps".into());
    }
    for k in 0..=c.level() {
        if f.cells[k].len() != c.count(k) || f.cells[k].iter().any(|&y| y >= d.count(k)) {
            return bad(format!("cell map in dimension {k} has the wrong shape"));
        }
        for x in 0..c.count(k) {
            let y = f.cells[k][x];
            if k > 0 && (d.src(k, y) != f.cells[k - 1][c.src(k, x)] || d.tgt(k, y) != f.cells[k - 1][c.tgt(k, x)]) {
                return bad(format!("{k}-cell {x}: boundary not preserved"));
            }
            if k < c.level() && d.ident(k, y) != f.cells[k + 1][c.ident(k, x)] {
                return bad(format!("{k}-cell {x}: identity not preserved"));
            }
        }
        for j in 0..k {
            for (&(x, y), &z) in &c.dim(k).comp[j] {
                if d.compose(k, j, f.cells[k][x], f.cells[k][y]) != Some(f.cells[k][z]) {
                    return bad(format!("{k}-cells {x} ∘_{j} {y}: composite not preserved"));
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy)]
enum Step {
    Free,
    Ident(usize),
    Comp(usize, usize, usize),
}

/// Assignment order and per-step constraint lists for backtracking.
struct Plan {
    order: Vec<(usize, usize, Step)>,
    /// Composition triples `(k, j, x, y, z)` whose last member is assigned at each step.
    checks: Vec<Vec<(usize, usize, usize, usize, usize)>>,
}

fn plan(c: &StrictNCat) -> Plan {
    let mut order = Vec::new();
    let mut pos: Vec<Vec<usize>> = Vec::new();
    for k in 0..=c.level() {
        let n = c.count(k);
        let mut at = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        let place = |x: usize, s: Step, at: &mut Vec<usize>, queue: &mut VecDeque<usize>, order: &mut Vec<(usize, usize, Step)>| {
            at[x] = order.len();
            order.push((k, x, s));
            queue.push_back(x);
        };
        if k > 0 {
            for y in 0..c.count(k - 1) {
                place(c.ident(k - 1, y), Step::Ident(y), &mut at, &mut queue, &mut order);
            }
        }
        // triples keyed by factor, skipping those where the result is a factor
        let mut by_factor: Vec<Vec<(usize, usize, usize, usize)>> = vec![Vec::new(); n];
        for j in 0..k {
            for (&(x, y), &z) in &c.dim(k).comp[j] {
                if z != x && z != y {
                    by_factor[x].push((j, x, y, z));
                    if y != x {
                        by_factor[y].push((j, x, y, z));
                    }
                }
            }
        }
        let mut composite = vec![false; n];
        for list in &by_factor {
            for &(_, _, _, z) in list {
                composite[z] = true;
            }
        }
        // generators first, so that composites end up forced
        let free_order: Vec<usize> = (0..n).filter(|&x| !composite[x]).chain((0..n).filter(|&x| composite[x])).collect();
        let mut next_free = 0;
        loop {
            while let Some(p) = queue.pop_front() {
                for &(j, x, y, z) in &by_factor[p] {
                    if at[x] != usize::MAX && at[y] != usize::MAX && at[z] == usize::MAX {
                        place(z, Step::Comp(j, x, y), &mut at, &mut queue, &mut order);
                    }
                }
            }
            while next_free < n && at[free_order[next_free]] != usize::MAX {
                next_free += 1;
            }
            if next_free == n {
                break;
            }
            place(free_order[next_free], Step::Free, &mut at, &mut queue, &mut order);
        }
        pos.push(at);
    }
    let mut checks = vec![Vec::new(); order.len()];
    for k in 1..=c.level() {
        for j in 0..k {
            for (&(x, y), &z) in &c.dim(k).comp[j] {
                let last = pos[k][x].max(pos[k][y]).max(pos[k][z]);
                checks[last].push((k, j, x, y, z));
            }
        }
    }
    Plan { order, checks }
}

/// Visits every strict functor `c → d` in a deterministic order: the free
/// choices are made in a fixed cell order, each ranging over candidates in
/// increasing index.
pub fn for_each_functor<B>(
    c: &StrictNCat,
    d: &StrictNCat,
    visit: impl FnMut(&NFunctor) -> ControlFlow<B>,
) -> Result<Option<B>> {
    for_each_functor_fixing(c, d, &[], visit)
}

/// As [`for_each_functor`], visiting only functors that agree with the
/// prescribed values `(k, x, y)`: cell `x ∈ c_k` goes to `y ∈ d_k`.
pub fn for_each_functor_fixing<B>(
    c: &StrictNCat,
    d: &StrictNCat,
    fixed: &[(usize, usize, usize)],
    mut visit: impl FnMut(&NFunctor) -> ControlFlow<B>,
) -> Result<Option<B>> {
    if c.level() != d.level() {
        return Err(Error::LevelMismatch(c.level(), d.level()));
    }
    let plan = plan(c);
    let mut by_bd: Vec<HashMap<(usize, usize), Vec<usize>>> = vec![HashMap::new(); d.level() + 1];
    for k in 1..=d.level() {
        for y in 0..d.count(k) {
            by_bd[k].entry((d.src(k, y), d.tgt(k, y))).or_default().push(y);
        }
    }
    let all_objects: Vec<usize> = (0..d.count(0)).collect();
    let mut pinned: Vec<Vec<Option<usize>>> = c.counts().into_iter().map(|n| vec![None; n]).collect();
    for &(k, x, y) in fixed {
        if k > c.level() || x >= c.count(k) || y >= d.count(k) {
            return Err(Error::NotAFunctor(format!("prescribed value ({k}, {x}, {y}) is out of range")));
        }
        match pinned[k][x] {
            Some(z) if z != y => return Ok(None),
            _ => pinned[k][x] = Some(y),
        }
    }
    let mut f = NFunctor { cells: c.counts().into_iter().map(|n| vec![usize::MAX; n]).collect() };
    let empty = Vec::new();

    struct Ctx<'a, V> {
        c: &'a StrictNCat,
        d: &'a StrictNCat,
        plan: &'a Plan,
        by_bd: &'a [HashMap<(usize, usize), Vec<usize>>],
        all_objects: &'a [usize],
        empty: &'a Vec<usize>,
        pinned: &'a [Vec<Option<usize>>],
        visit: V,
    }

    fn consistent(ctx: &Ctx<'_, impl Sized>, f: &NFunctor, step: usize) -> bool {
        let (k, x, _) = ctx.plan.order[step];
        let y = f.cells[k][x];
        if k > 0 && (ctx.d.src(k, y) != f.cells[k - 1][ctx.c.src(k, x)] || ctx.d.tgt(k, y) != f.cells[k - 1][ctx.c.tgt(k, x)]) {
            return false;
        }
        ctx.plan.checks[step]
            .iter()
            .all(|&(k, j, a, b, z)| ctx.d.compose(k, j, f.cells[k][a], f.cells[k][b]) == Some(f.cells[k][z]))
    }

    fn go<B, V: FnMut(&NFunctor) -> ControlFlow<B>>(ctx: &mut Ctx<'_, V>, f: &mut NFunctor, step: usize) -> ControlFlow<B> {
        if step == ctx.plan.order.len() {
            return (ctx.visit)(f);
        }
        let (k, x, kind) = ctx.plan.order[step];
        let forced = match kind {
            Step::Ident(y) => Some(ctx.d.ident(k - 1, f.cells[k - 1][y])),
            Step::Comp(j, a, b) => match ctx.d.compose(k, j, f.cells[k][a], f.cells[k][b]) {
                Some(z) => Some(z),
                None => return ControlFlow::Continue(()),
            },
            Step::Free => None,
        };
        let pin = ctx.pinned[k][x];
        if let Some(y) = forced {
            if pin.is_some_and(|p| p != y) {
                return ControlFlow::Continue(());
            }
            f.cells[k][x] = y;
            if consistent(ctx, f, step) {
                go(ctx, f, step + 1)?;
            }
            return ControlFlow::Continue(());
        }
        let one;
        let cands: &[usize] = if let Some(p) = pin {
            one = [p];
            &one
        } else if k == 0 {
            ctx.all_objects
        } else {
            let key = (f.cells[k - 1][ctx.c.src(k, x)], f.cells[k - 1][ctx.c.tgt(k, x)]);
            ctx.by_bd[k].get(&key).unwrap_or(ctx.empty)
        };
        for &y in cands {
            f.cells[k][x] = y;
            if consistent(ctx, f, step) {
                go(ctx, f, step + 1)?;
            }
        }
        ControlFlow::Continue(())
    }

    let mut ctx = Ctx { c, d, plan: &plan, by_bd: &by_bd, all_objects: &all_objects, empty: &empty, pinned: &pinned, visit: &mut visit };
    Ok(match go(&mut ctx, &mut f, 0) {
        ControlFlow::Break(b) => Some(b),
        ControlFlow::Continue(()) => None,
    })
}

pub fn enumerate_functors(c: &StrictNCat, d: &StrictNCat) -> Result<Vec<NFunctor>> {
    let mut out = Vec::new();
    for_each_functor::<()>(c, d, |f| {
        out.push(f.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn count_functors(c: &StrictNCat, d: &StrictNCat) -> Result<usize> {
    let mut n = 0;
    for_each_functor::<()>(c, d, |_| {
        n += 1;
        ControlFlow::Continue(())
    })?;
    Ok(n)
}
