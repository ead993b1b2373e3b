use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::Result;
use crate::strict::{count_functors, for_each_functor, is_functor, theta_cat, StrictNCat};
use crate::theta::{objects_up_to, ThetaObj};
use crate::theta_set::{classifying_functor, e_nerve, ENerve, ThetaSet};

/// Restriction along the unit `θT → cellular(𝖤(T))`, into a groupoid `G`.
#[derive(Clone, Debug, Serialize)]
pub struct UniversalReport {
    pub object: String,
    /// `|Fun(cellular(𝖤T), G)|`.
    pub extended: usize,
    /// `|Fun(θT, G)|`.
    pub restricted: usize,
    pub injective: bool,
    /// Every extension sends every element of `𝖤(T)(S)`, `S` up to the
    /// probe bound, to a functor `θS → G`.
    pub extends: bool,
}

impl UniversalReport {
    pub fn ok(&self) -> bool {
        self.injective && self.extends && self.extended == self.restricted
    }
}

pub fn check_universal_property(t: &ThetaObj, g: &StrictNCat, probe_bound: usize) -> Result<UniversalReport> {
    let e = e_nerve(t);
    let cell = e.cellular()?;
    let unit = classifying_functor(&e, t, &ENerve::unit(t))?;
    let mut probes = Vec::new();
    for s in objects_up_to(t.height(), probe_bound) {
        for x in &e.eval(&s)?.elems {
            probes.push((theta_cat(&s), classifying_functor(&e, &s, x)?));
        }
    }
    let mut seen = HashSet::new();
    let (mut extended, mut injective, mut extends) = (0, true, true);
    for_each_functor::<()>(&cell, g, |phi| {
        extended += 1;
        injective &= seen.insert(phi.after(&unit));
        if extends {
            extends = probes.iter().all(|(s, c)| is_functor(&s.cat, g, &phi.after(c)).is_ok());
        }
        ControlFlow::Continue(())
    })?;
    Ok(UniversalReport { object: t.to_string(), extended, restricted: count_functors(&theta_cat(t).cat, g)?, injective, extends })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strict::catalog::{double_delooping, groupoid_catalog};

    #[test]
    fn groupoids_at_small_objects() {
        for h in 1..=2 {
            for (_, g) in groupoid_catalog(h) {
                for t in objects_up_to(h, 4) {
                    assert!(check_universal_property(&t, &g, 3).unwrap().ok(), "{t}");
                }
            }
        }
    }

    #[test]
    fn fails_for_a_two_groupoid() {
        let t = crate::theta::parse_obj_at("[2]([0],[1])", 2).unwrap();
        let r = check_universal_property(&t, &double_delooping(2, 2), 3).unwrap();
        assert!(!r.ok());
        assert!(check_universal_property(&ThetaObj::linear(2, 2), &double_delooping(2, 2), 3).unwrap().ok());
    }
}
