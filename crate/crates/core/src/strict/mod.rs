//! Finite strict n-categories.

mod build;
mod cat;
pub mod catalog;
mod functor;
mod json;
mod props;
mod theta_cat;

pub use build::{boundary_cell, discrete, empty, level1, pad_to_level, product, projections, suspend, terminal, truncate_max_sub};
pub use cat::{Dim, StrictNCat};
pub use functor::{count_functors, enumerate_functors, for_each_functor, for_each_functor_fixing, is_functor, NFunctor};
pub use props::{find_isomorphism, inverse, is_gaunt, is_isomorphic, is_strict_groupoid};
pub use theta_cat::{compose_cells, from_theta, functor_to_morphism, theta_cat, theta_functor, ThetaCat};
