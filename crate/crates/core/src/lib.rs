//! Exact computations with dual pairings of modules over finite rings.

pub mod alphacond;
pub mod caps;
pub mod error;
pub mod exactlin;
pub mod instance;
pub mod labcli;
pub mod modules;
pub mod pairings;
pub mod rings;
pub mod theoremlab;

pub use caps::Caps;
pub use error::{Error, Result};
