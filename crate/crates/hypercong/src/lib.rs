//! Exact-arithmetic verification engine for congruences of truncated
//! hypergeometric series.
//!
//! The crate is organised in layers:
//!
//! * [`arith`] — exact rationals, fixed-modulus residues, p-adic valuations.
//! * [`poly`] — dense univariate polynomials over Q and the shifted
//!   Pochhammer / series polynomials built from them.
//! * [`hyperg`] — rising factorials, harmonic numbers, binomials, Catalan
//!   numbers and the truncated hypergeometric evaluator, generic over the
//!   coefficient ring.
//! * [`checks`] — one checker per congruence or identity in the verified
//!   family, each returning a structured [`checks::Verdict`].
//! * [`sweep`] — parameter-sweep driver, JSON/CSV reports, config parsing.

pub mod arith;
pub mod checks;
pub mod hyperg;
pub mod poly;
pub mod sweep;

pub use arith::{p_valuation, reduce_mod, Rational, Residue, Valuation};
pub use checks::{CheckParams, Claim, Mode, Observed, Status, Verdict};
pub use hyperg::{
    binomial, catalan, harmonic, rising, terminating_hyper, trunc_hyper, HyperSeriesSpec,
};
pub use poly::{phi_poly, pochhammer_shift_poly, psi_poly, PolyQ};
pub use sweep::{run_sweep, Report, SweepConfig};
