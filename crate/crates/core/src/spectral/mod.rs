//! Resonances on the critical line: scanning the Fredholm determinants,
//! refining their zeros and checking the period functions behind them.

pub mod period;
pub mod residuals;
pub mod scan;

pub use period::{reconstruct_psi, PeriodFunction, Psi};
pub use residuals::{boundary_residual, cocycle_residuals, three_term_residual};
pub use scan::{
    brent_minimize, det_pair, evaluate_at, find_resonances, lambda_of, refine_resonance,
    scan_critical_line, scan_with, DipCandidate, RefinedDip, ResonanceResult, ScanRange,
    Tolerances, DEFAULT_DIP_FACTOR, REFINE_DISCRETIZATION,
};
