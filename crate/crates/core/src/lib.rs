//! Exact group-ring arithmetic over `Q` and `F_p`, G-circulant matrices and
//! semisimplicity verdicts for `k[G]` with recomputable certificates.

pub mod circulant;
pub mod cli;
pub mod error;
pub mod exactla;
pub mod field;
pub mod group;
pub mod groupring;
pub mod maschke;
pub mod selftest;

pub use circulant::{embed, extract, is_g_circulant, regular_rep, RegularRepMatrix};
pub use error::{Error, Result};
pub use exactla::{ExactMatrix, Polynomial};
pub use field::{FieldSpec, Scalar};
pub use group::{FiniteGroup, GroupError, GroupSpec};
pub use groupring::GroupRingElement;
pub use maschke::{verdict, MaschkeVerdict, RadicalBasis};
