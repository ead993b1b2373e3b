use std::sync::Arc;

use super::{Memo, ThetaSet, Value};
use crate::error::{Error, Result};
use crate::theta::{ThetaMor, ThetaObj};

/// The pointwise product `F × G`.
pub struct Product<F: ThetaSet, G: ThetaSet> {
    pub left: F,
    pub right: G,
    memo: Memo<(F::Elem, G::Elem)>,
}

pub fn theta_set_product<F: ThetaSet, G: ThetaSet>(left: F, right: G) -> Result<Product<F, G>> {
    if left.height() != right.height() {
        return Err(Error::HeightMismatch(left.height(), right.height()));
    }
    Ok(Product { left, right, memo: Memo::new() })
}

impl<F: ThetaSet, G: ThetaSet> ThetaSet for Product<F, G> {
    type Elem = (F::Elem, G::Elem);

    fn height(&self) -> usize {
        self.left.height()
    }

    fn eval(&self, t: &ThetaObj) -> Result<Arc<Value<Self::Elem>>> {
        self.memo.get_or(t, || {
            let (a, b) = (self.left.eval(t)?, self.right.eval(t)?);
            Ok(a.elems.iter().flat_map(|x| b.elems.iter().map(move |y| (x.clone(), y.clone()))).collect())
        })
    }

    fn act(&self, m: &ThetaMor, x: &Self::Elem) -> Result<Self::Elem> {
        Ok((self.left.act(m, &x.0)?, self.right.act(m, &x.1)?))
    }
}
