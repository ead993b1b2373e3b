use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::{Arc, Mutex};

use super::{factor_through, FlaggedSeq};
use crate::error::{Error, Result};
use crate::strict::{enumerate_functors, for_each_functor_fixing, theta_cat, theta_functor, truncate_max_sub, NFunctor, StrictNCat};
use crate::theta::{ThetaMor, ThetaObj};
use crate::theta_set::{ThetaSet, Value};

/// The truncation tower `T_{≤0} → ⋯ → T_{≤n} = θT`, with each level's
/// inclusion into `θT` and the maps between consecutive levels.
struct Tower {
    levels: Vec<StrictNCat>,
    incl: Vec<NFunctor>,
    step: Vec<NFunctor>,
}

fn tower(t: &ThetaObj) -> Result<Tower> {
    let tc = theta_cat(t);
    let n = t.height();
    let (levels, incl): (Vec<_>, Vec<_>) = (0..=n).map(|i| truncate_max_sub(&tc.cat, i)).collect::<Result<Vec<_>>>()?.into_iter().unzip();
    let step = (0..n).map(|i| factor_through(&incl[i], &incl[i + 1], &tc.cat).expect("truncations are nested")).collect();
    Ok(Tower { levels, incl, step })
}

/// `T ↦` ladders `(φ_i : T_{≤i} → C_i)` commuting with the flag and the
/// truncation tower.
pub struct FlaggedNerve {
    seq: FlaggedSeq,
    towers: Mutex<HashMap<ThetaObj, Arc<Tower>>>,
    memo: Mutex<HashMap<ThetaObj, Arc<Value<Vec<NFunctor>>>>>,
}

pub fn flagged_nerve(seq: FlaggedSeq) -> FlaggedNerve {
    FlaggedNerve { seq, towers: Mutex::new(HashMap::new()), memo: Mutex::new(HashMap::new()) }
}

impl FlaggedNerve {
    pub fn seq(&self) -> &FlaggedSeq {
        &self.seq
    }

    fn tower(&self, t: &ThetaObj) -> Result<Arc<Tower>> {
        if let Some(tw) = self.towers.lock().unwrap().get(t) {
            return Ok(tw.clone());
        }
        let tw = Arc::new(tower(t)?);
        self.towers.lock().unwrap().insert(t.clone(), tw.clone());
        Ok(tw)
    }

    /// Ladders built level by level, each level pinned by the one below.
    pub fn eval_ladder(&self, t: &ThetaObj) -> Result<Vec<Vec<NFunctor>>> {
        let tw = self.tower(t)?;
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.ladder_level(&tw, 0, &mut cur, &mut out)?;
        Ok(out)
    }

    fn ladder_level(&self, tw: &Tower, i: usize, cur: &mut Vec<NFunctor>, out: &mut Vec<Vec<NFunctor>>) -> Result<()> {
        if i == tw.levels.len() {
            out.push(cur.clone());
            return Ok(());
        }
        let mut pins = Vec::new();
        if i > 0 {
            let below = self.seq.maps[i - 1].after(&cur[i - 1]);
            for (k, row) in tw.step[i - 1].cells().iter().enumerate() {
                for (x, &y) in row.iter().enumerate() {
                    pins.push((k, y, below.map(k, x)));
                }
            }
        }
        let mut found = Vec::new();
        for_each_functor_fixing::<()>(&tw.levels[i], &self.seq.cats[i], &pins, |f| {
            found.push(f.clone());
            ControlFlow::Continue(())
        })?;
        for f in found {
            cur.push(f);
            self.ladder_level(tw, i + 1, cur, out)?;
            cur.pop();
        }
        Ok(())
    }

    /// The iterated pullback of `C_i(T_{≤i}) → C_{i+1}(T_{≤i}) ← C_{i+1}(T_{≤i+1})`,
    /// joined on the middle terms.
    pub fn eval_pullback(&self, t: &ThetaObj) -> Result<Vec<Vec<NFunctor>>> {
        let tw = self.tower(t)?;
        let mut partial: Vec<Vec<NFunctor>> =
            enumerate_functors(&tw.levels[0], &self.seq.cats[0])?.into_iter().map(|f| vec![f]).collect();
        for i in 1..tw.levels.len() {
            let mut by_middle: HashMap<NFunctor, Vec<NFunctor>> = HashMap::new();
            for a in enumerate_functors(&tw.levels[i], &self.seq.cats[i])? {
                by_middle.entry(a.after(&tw.step[i - 1])).or_default().push(a);
            }
            let mut next = Vec::new();
            for l in partial {
                let middle = self.seq.maps[i - 1].after(l.last().unwrap());
                for a in by_middle.get(&middle).map(Vec::as_slice).unwrap_or(&[]) {
                    let mut l2 = l.clone();
                    l2.push(a.clone());
                    next.push(l2);
                }
            }
            partial = next;
        }
        Ok(partial)
    }
}

impl ThetaSet for FlaggedNerve {
    type Elem = Vec<NFunctor>;

    fn height(&self) -> usize {
        self.seq.len()
    }

    /// Both strategies, compared as sets; a disagreement is an error.
    fn eval(&self, t: &ThetaObj) -> Result<Arc<Value<Vec<NFunctor>>>> {
        if let Some(v) = self.memo.lock().unwrap().get(t) {
            return Ok(v.clone());
        }
        if t.height() != self.height() {
            return Err(Error::HeightMismatch(t.height(), self.height()));
        }
        let mut a = self.eval_ladder(t)?;
        let mut b = self.eval_pullback(t)?;
        a.sort();
        b.sort();
        if a != b {
            return Err(Error::StrategyMismatch(format!("{t}: {} ladders, {} pullback elements", a.len(), b.len())));
        }
        let v = Arc::new(Value::new(a));
        self.memo.lock().unwrap().insert(t.clone(), v.clone());
        Ok(v)
    }

    fn act(&self, m: &ThetaMor, x: &Vec<NFunctor>) -> Result<Vec<NFunctor>> {
        let (ts, tt) = (self.tower(m.source())?, self.tower(m.target())?);
        let theta = theta_functor(m);
        let target = &theta_cat(m.target()).cat;
        (0..x.len())
            .map(|i| {
                let mi = factor_through(&theta.after(&ts.incl[i]), &tt.incl[i], target)
                    .ok_or_else(|| Error::Evaluation("a morphism left the truncation".into()))?;
                Ok(x[i].after(&mi))
            })
            .collect()
    }
}
