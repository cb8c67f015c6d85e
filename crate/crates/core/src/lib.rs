pub mod battery;
pub mod error;
pub mod hilbert;
pub mod iso;
pub mod linalg;
pub mod mesh;
pub mod oracle;
pub mod quiver;
pub mod rewrite;
pub mod scalar;

pub use error::{Error, Result};
pub use linalg::{IntMatrix, Matrix};
pub use quiver::{Arrow, ArrowId, Path, Quiver, VertexId, VertexPermutation};
pub use rewrite::{AlgebraElement, MonomialOrder, RewriteSystem};
pub use scalar::{Field, QuadExt, Rational};
