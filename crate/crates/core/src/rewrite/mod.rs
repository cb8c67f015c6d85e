//! Elements of the path algebra, homogeneous ideals, and their completed
//! rewriting systems.

mod element;
mod order;
mod parse;
mod system;

pub use element::{AlgebraElement, ElementDisplay};
pub use order::MonomialOrder;
pub use parse::parse_element;
pub use system::{Ambiguity, RewriteRule, RewriteSystem, Site};
