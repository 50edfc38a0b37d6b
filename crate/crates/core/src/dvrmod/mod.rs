//! Finite modules over DVR quotients: submodules, Hall numbers, automorphisms.

mod aut;
mod hall;
mod module;

pub use aut::{
    aut_generate, aut_order, aut_order_formula, aut_polynomial, beta_image_contains, beta_image_order, beta_of,
    AutGroup, AutMatrix, BetaPair,
};
pub use hall::{
    chain_count, chain_value, chain_value_with, hall_number, hall_polynomial, hall_table, hall_value,
    HALL_POLY_WEIGHT_LIMIT,
};
pub use module::{FiniteModule, Submodule};
