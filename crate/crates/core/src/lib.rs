//! Hilbert series of the invariants `Λ(W)^G` of exterior algebras of
//! polynomial GL(n)-modules `W`, for `G` one of SL(n), O(n), SO(n) and
//! Sp(2d).
//!
//! The pipeline is
//!
//! 1. [`modspec`]: weights of `W` and `H(Λ(W); x, t) = ∏ (1 + x^α t)`;
//! 2. [`mult`]: the multiplicity series by Vandermonde extraction;
//! 3. [`specialize`]: one filter per group.
//!
//! [`wedge`] builds explicit SL(n)-invariants in `Λ^p(S^k C^n)` and their
//! Hodge duals, and [`oracle`] recomputes invariant dimensions directly as
//! Lie-algebra nullspaces.
//!
//! ```
//! use lambda_invariants::{ExteriorAlgebra, GroupFamily};
//!
//! let alg = ExteriorAlgebra::parse("S3", 2).unwrap();
//! let so = alg.invariant_series(GroupFamily::So).unwrap();
//! assert_eq!(so.to_string(), "1 + 2t^2 + t^4");
//! ```

pub mod error;
pub mod golden;
pub mod group;
pub mod hilbert;
pub mod modspec;
pub mod mult;
pub mod oracle;
pub mod partition;
pub mod pipeline;
pub mod poly;
pub mod specialize;
pub mod wedge;

pub use error::{Error, Result};
pub use group::{GroupFamily, GroupId};
pub use hilbert::{HilbertPolynomial, Notation};
pub use modspec::{ModuleSpec, TermKind, WeightMultiset};
pub use mult::{DegreeDecomposition, Extraction, MultiplicitySeries};
pub use partition::Partition;
pub use pipeline::ExteriorAlgebra;
pub use poly::{Monomial, SparsePoly};
