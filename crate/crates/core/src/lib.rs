//! Exact Brill-Noether calculus: BN numbers, the regions T, BMNO and the
//! product region of the BN map, certified non-emptiness decisions and the
//! constructions behind them.

pub mod cli;
pub mod construct;
pub mod error;
pub mod exact;
pub mod numbers;
pub mod oracle;
pub mod plot;
pub mod regions;
