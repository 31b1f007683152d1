//! Time scales from energy models, periodicity detection in autocorrelation
//! traces, the revival phase rule and eigenstate projections.

mod periodicity;
mod phase;
mod projection;
mod timescales;

pub use periodicity::{
    detect_periodicity, Peak, PeriodReport, RevivalCandidate, RevivalKind, CANDIDATE_FRACTION,
    DEFAULT_THRESHOLD, REVIVAL_WINDOW,
};
pub use phase::{revival_phase_rule, PhaseRule, RevivalPhase};
pub use projection::{projection_s, projection_s_with, projection_source};
pub use timescales::{
    closed_form_timescales, model_timescales, timescale_from_derivatives, TimeScales,
    DERIVATIVE_FLOOR,
};
