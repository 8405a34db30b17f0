//! Sparse solutions of linear Diophantine systems `A x = b` over `Z^n` and
//! of integer-programming feasibility problems over `Z_{>=0}^n`, in exact
//! arithmetic.
//!
//! * [`linalg`]: determinants, Hermite and Smith normal forms, lattice
//!   membership and equality.
//! * [`number_theory`]: factorization and the `Ω`/`ω` counting functions.
//! * [`sparsify`]: shrinking a column set without changing its lattice.
//! * [`dioph`]: sparse integer solutions.
//! * [`semigroup`]: sparse nonnegative solutions and the bound calculator.
//! * [`oracle`]: brute-force minimum supports for cross-checking.
//! * [`cli`]: the `dioph-sparse` command line.

pub mod cli;
pub mod dioph;
pub mod error;
pub mod index_set;
pub mod linalg;
pub mod number_theory;
pub mod oracle;
pub mod semigroup;
pub mod simplex;
pub mod sparsify;

pub use error::{Error, Result};
pub use index_set::IndexSet;
pub use linalg::{IntMatrix, IntVector};
