//! Executable extremal combinatorics for H-free hypergraphs: density
//! invariants, copy hypergraphs and codegrees, exact extremal numbers and
//! counts, the balanced-supersaturation builder, container trees and the
//! randomized deletion lower bounds.

pub mod error;
pub mod exactnum;
pub mod hypercore;
pub mod copyindex;
pub mod exact;
pub mod supersat;
pub mod containers;
pub mod lbound;
pub mod cli;

pub use error::{Error, Result};
pub use hypercore::Hypergraph;
