//! Exact minimization and maximization of posimodular set functions
//! `f: 2^V → ℝ`, `f(X) + f(Y) >= f(X \ Y) + f(Y \ X)`, accessed through a
//! counting value oracle.
//!
//! ```
//! use posimod::{instances::make_example1, minimize::min_posimodular, SubsetMask};
//!
//! let s = SubsetMask::from_elements([0, 1, 2, 3]);
//! let f = make_example1(8, s).unwrap();
//! let r = min_posimodular(&f).unwrap();
//! assert_eq!(r.witness, s);
//! assert_eq!(r.value, 0.into());
//! ```

pub mod cli;
pub mod error;
pub mod horn;
pub mod instances;
pub mod maximize;
pub mod minimize;
pub mod oracle;
pub mod subset;
pub mod verify;

pub use error::{Error, Result};
pub use oracle::{CountMode, SetFunction, SetFunctionOracle, Value};
pub use subset::{GroundSet, SubsetMask};
