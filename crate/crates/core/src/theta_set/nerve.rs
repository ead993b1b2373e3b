use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{check_height, Memo, ThetaSet, Value};
use crate::error::Result;
use crate::strict::{enumerate_functors, theta_cat, theta_functor, NFunctor, StrictNCat};
use crate::theta::{enumerate_morphisms, ThetaMor, ThetaObj};

/// `T ↦ Fun(θT, C)`, acting by precomposition.
pub struct Nerve {
    cat: Arc<StrictNCat>,
    memo: Memo<NFunctor>,
    functors: Mutex<HashMap<ThetaMor, Arc<NFunctor>>>,
    cellular: OnceLock<Arc<StrictNCat>>,
}

pub fn nerve(c: StrictNCat) -> Nerve {
    Nerve { cat: Arc::new(c), memo: Memo::new(), functors: Mutex::new(HashMap::new()), cellular: OnceLock::new() }
}

impl Nerve {
    pub fn category(&self) -> &StrictNCat {
        &self.cat
    }

    fn theta(&self, m: &ThetaMor) -> Arc<NFunctor> {
        if let Some(f) = self.functors.lock().unwrap().get(m) {
            return f.clone();
        }
        let f = Arc::new(theta_functor(m));
        self.functors.lock().unwrap().insert(m.clone(), f.clone());
        f
    }
}

impl ThetaSet for Nerve {
    type Elem = NFunctor;

    fn height(&self) -> usize {
        self.cat.level()
    }

    fn eval(&self, t: &ThetaObj) -> Result<Arc<Value<NFunctor>>> {
        check_height(self, t)?;
        self.memo.get_or(t, || enumerate_functors(&theta_cat(t).cat, &self.cat))
    }

    fn act(&self, m: &ThetaMor, x: &NFunctor) -> Result<NFunctor> {
        Ok(x.after(&self.theta(m)))
    }

    /// Isomorphic to `C`, with cells in the order of `F(c_k)`.
    fn cellular(&self) -> Result<Arc<StrictNCat>> {
        if let Some(c) = self.cellular.get() {
            return Ok(c.clone());
        }
        let c = Arc::new(super::extract_cellular(self)?);
        Ok(self.cellular.get_or_init(|| c).clone())
    }
}

/// The representable `y(T) = Hom(−, T)`.
pub struct Representable {
    obj: ThetaObj,
    memo: Memo<ThetaMor>,
}

pub fn representable(t: &ThetaObj) -> Representable {
    Representable { obj: t.clone(), memo: Memo::new() }
}

impl ThetaSet for Representable {
    type Elem = ThetaMor;

    fn height(&self) -> usize {
        self.obj.height()
    }

    fn eval(&self, s: &ThetaObj) -> Result<Arc<Value<ThetaMor>>> {
        check_height(self, s)?;
        self.memo.get_or(s, || enumerate_morphisms(s, &self.obj))
    }

    fn act(&self, m: &ThetaMor, x: &ThetaMor) -> Result<ThetaMor> {
        x.after(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strict::catalog::walking_iso;
    use crate::strict::{from_theta, terminal};
    use crate::theta_set::{check_functoriality, extract_cellular};

    #[test]
    fn nerve_values() {
        let n = nerve(terminal(1));
        for t in crate::theta::objects_up_to(1, 4) {
            assert_eq!(n.eval(&t).unwrap().len(), 1);
        }
        let two = nerve(from_theta(&ThetaObj::linear(2, 1)));
        assert_eq!(two.eval(&ThetaObj::cell(1, 1)).unwrap().len(), 6);
        let wi = nerve(walking_iso(1));
        assert_eq!(wi.eval(&ThetaObj::cell(1, 1)).unwrap().len(), 4);
        assert!(check_functoriality(&wi, 4, 6).unwrap().is_none());
    }

    #[test]
    fn cellular_of_representable_is_theta() {
        let t = crate::theta::parse_obj("[2]([1]([0]),[0])").unwrap();
        let c = extract_cellular(&representable(&t)).unwrap();
        assert_eq!(c, from_theta(&t));
    }

    #[test]
    fn cellular_of_nerve_is_the_category() {
        let c = crate::strict::catalog::walking_retraction(2);
        assert!(crate::strict::is_isomorphic(&nerve(c.clone()).cellular().unwrap(), &c));
    }
}
