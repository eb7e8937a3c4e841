pub mod complex;
pub mod config;
pub mod error;
pub mod format;
pub mod group;
pub mod integer;
pub mod kzero;
pub mod module;
pub mod realize;
pub mod ring;
pub mod silence;
pub mod transform;

pub use error::{Error, Result};
pub use group::GroupData;
pub use integer::IntMatrix;
pub use ring::{GroupRingElement, GroupRingMatrix};
