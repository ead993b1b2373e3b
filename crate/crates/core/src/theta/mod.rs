//! Joyal's Θ_n as a term calculus.

mod cells;
mod mor;
mod obj;
mod parse;
mod poset;

pub use cells::{boundary_inclusion, composition_shape, degeneracy, iterated_boundary, vertex, CompositionShape};
pub use mor::{closed_into, compose, enumerate_morphisms, factor_active_closed, monotone_maps, HomCache, ThetaMor};
pub use obj::{objects_up_to, ThetaObj};
pub use parse::{parse_obj, parse_obj_at};
pub use poset::{closed_slice_poset, ClosedSlicePoset};
