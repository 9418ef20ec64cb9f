//! Characters, Littlewood–Richardson products, exterior and symmetric
//! powers, and evaluation of bundle expressions.

mod character;
mod decomposition;
mod eval;
mod lr;
mod plethysm;

pub use character::{gt_weights, irreducible_character, Character};
pub use decomposition::{decompose_character, straighten, Decomposition};
pub use eval::Engine;
pub use lr::{lr_block, lr_tensor};
pub use plethysm::{fast_powers, irreducible_powers, power, sym_power, wedge_power, Backend, PowerKind};
