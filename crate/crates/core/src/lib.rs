//! Exact arithmetic in McAlister inverse semigroups `M_λ`.
//!
//! Elements are quadruples of words `((a,b),(c,d))` with `ac^t = bd^t ≠ ε`,
//! plus a zero, multiplied componentwise in the polycyclic monoid.

pub mod autom;
pub mod error;
pub mod mcalister;
pub mod oracle;
pub mod polycyclic;
pub mod text;
pub mod topology;
pub mod words;

pub use error::{Error, Result};
pub use mcalister::{m_inv, m_make, m_mul, GreenRel, MElem};
pub use words::{Alphabet, Letter, Word};
