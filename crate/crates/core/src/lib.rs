//! Quadratic forms, Witt rings and algebras with involution over Q and
//! quadratic number fields, with exact deciders for hyperbolicity.

pub mod error;
pub mod exactnum;
pub mod hyperbolic;
pub mod involution;
pub mod oracle;
pub mod qform;
pub mod syntax;
pub mod wittring;

pub use error::{Error, Result};
