//! Exact computations around KLR algebras, the integral quantum group `_A f`,
//! Lusztig flag fibers of Dynkin quivers over finite fields, and the parity
//! sheaf peeling algorithm.
//!
//! The crate is organised bottom-up:
//!
//! * [`qlaurent`]: `Z[q, q^-1]` and `Q(q)`, quantum integers and factorials.
//! * [`linalg`] and [`ffield`]: exact linear algebra over `Q`, `F_p` and `F_q`.
//! * [`quiver`]: Dynkin quivers, dimension vectors, flag types, roots,
//!   indecomposables and orbits.
//! * [`klr`]: the KLR algebra in normal form and its polynomial representation.
//! * [`qf`]: the algebra `f` on words, its coproduct and bilinear form.
//! * [`flagcount`]: point counts of flag fibers, Poincare polynomials, type A
//!   cell recursion, restriction constants.
//! * [`paritycalc`]: stalk tables, peeling, parity bases.
//! * [`cli`]: the `qparity` batch front end and its result store.

mod bigstr;
pub mod cli;
pub mod ffield;
pub mod flagcount;
pub mod klr;
pub mod linalg;
pub mod paritycalc;
pub mod qf;
pub mod qlaurent;
pub mod quiver;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field of order {0} exceeds the supported table size")]
    FieldTooLarge(u32),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("config error: {0}")]
    Config(String),
    /// A fiber whose counts are not those of an even variety; the payload is the JSON alert.
    #[error("EVENNESS-ALERT: {0}")]
    EvennessAlert(String),
    /// A peeling residual that no parity decomposition explains; the payload is the JSON alert.
    #[error("PARITY-ALERT: {0}")]
    ParityAlert(String),
    #[error("defect: {0}")]
    Defect(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
