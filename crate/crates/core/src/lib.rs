//! Exact engine for simply-laced root systems organised around a Coxeter
//! element: compatible simple systems, the periodic Auslander–Reiten quiver
//! `Î`, the canonical bijection `Φ: R → Î`, the non-symmetric Euler form,
//! reduced words for the longest element, and the comparison with
//! Auslander–Reiten theory of quiver representations.

pub mod arq;
pub mod coxeter;
pub mod error;
pub mod euler;
pub mod linalg;
pub mod par;
pub mod quiverrep;
pub mod rootsys;
pub mod verify;

pub use coxeter::{BetaFamily, CoxeterContext, Orientation};
pub use error::{Error, Result};
pub use par::Execution;
pub use rootsys::{
    DynkinType, Family, Root, RootId, RootSystem, SimpleSystem, WeylElement, ENUMERATION_CAP,
};
