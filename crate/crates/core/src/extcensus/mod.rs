//! Central extensions and the census: Ext two ways, the extension orbit
//! space and its action, Burnside counting, the centre recursion and the
//! PORC fitter.

mod burnside;
mod census;
mod ext;
mod materialize;
mod porc;
mod space;
mod typed;

pub use burnside::{beta_multiset, orbit_count_explicit, orbit_count_naive, orbit_representatives};
pub use census::{census, orbit_count, Census, CensusTable, CensusTerm, Engine};
pub use ext::{ext_hat_tensor, ext_log_order, ext_via_resolution};
pub use materialize::{materialize, LieRingModel};
pub use porc::{porc_fit, porc_search, PorcFormula, PorcOutcome, PorcRejection, DEFAULT_MODULI};
pub use space::{ExtensionDatum, ExtensionSpace};
pub use typed::orbit_count_typed;
