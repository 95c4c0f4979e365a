//! Exact q-series engine for graded dimensions of affine `sl_2` and Virasoro
//! minimal-model modules.
//!
//! The crate computes irreducible characters as truncated q-series with exact
//! rational coefficients, forms Wronskians of character bases, and studies the
//! holomorphic modular forms `F = W'/W` they produce: when they vanish, how
//! they decompose over `Δ`, `E4`, `E6` and `j`, their congruences modulo
//! `p = 2k + 3`, and where the zeros of their `j`-polynomials lie.
//!
//! - [`qseries`]: truncated series over lattices `(1/N)Z` and eta powers
//! - [`characters`]: character expansions, vanishing classification, identities
//! - [`wronskian`]: Wronskian determinants and the forms `F_V`
//! - [`modforms`]: Bernoulli numbers, Eisenstein series, `Δ`, `j`, decomposition
//! - [`modp`]: p-adic valuations and congruence checks
//! - [`roots`]: Sturm-sequence root isolation for `j`-polynomials
//! - [`suite`]: the end-to-end verification battery
#![allow(clippy::result_large_err)]

pub mod arith;
pub mod characters;
pub mod modforms;
pub mod modp;
pub mod qseries;
pub mod roots;
pub mod suite;
pub mod wronskian;

pub use characters::{AffineCharSpec, CharError, Family, VirasoroCharSpec};
pub use modforms::{Decomposition, JPolynomial};
pub use modp::{CongruenceReport, ReportKind};
pub use qseries::{eta_power, QSeries, QSeriesError};
pub use roots::RootReport;
pub use wronskian::WronskianResult;
