//! Persistence lattices of finite diagrams of vector spaces over F_p.
//!
//! A diagram of spaces and linear maps is completed to a lattice whose
//! meets and joins are realized by pullbacks and pushouts. On distributive
//! completions the Heyting implication `a ⇒ b` and negation `¬a` are
//! tabulated, and propositional formulas can be checked for validity.
//! Chains, bifiltration grids and zig-zag modules have closed forms for
//! `⇒`, which are compared with the tabulated values.
//!
//! ```
//! use persilat::complete;
//!
//! let c = complete::zigzag(3, 2)?;
//! assert_eq!(
//!     c.summary().to_string(),
//!     "16 elements; 7 original, 6 limit, 3 colimit; distributive: yes; boolean: no"
//! );
//! let h = c.heyting()?;
//! let l = c.lattice();
//! let answer = c.implies(&h, l.find("X0")?, l.find("X1")?)?;
//! assert_eq!(l.label(answer.value), "Q13");
//! assert_eq!(answer.agrees(), Some(true));
//! # Ok::<(), persilat::Error>(())
//! ```

pub mod cli;
pub mod complete;
pub mod diagram;
pub mod error;
pub mod heyting;
pub mod homology;
pub mod lattice;
pub mod linalg;
pub mod shapes;

pub use error::{Error, Result};
