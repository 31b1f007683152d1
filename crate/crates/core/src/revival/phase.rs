use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RevivalPhase {
    /// `8√q` and `4√q` integer: full revival at `T_rev` and at `T_rev/2`.
    ExactAtRevivalAndHalf,
    /// `8√q` integer: full revival at `T_rev`.
    ExactAtRevival,
    /// Residual phase left at `T_rev`; the revival peak comes early.
    Early,
}

impl RevivalPhase {
    pub fn as_str(self) -> &'static str {
        match self {
            RevivalPhase::ExactAtRevivalAndHalf => "exact-at-trev-and-half",
            RevivalPhase::ExactAtRevival => "exact-at-trev",
            RevivalPhase::Early => "early",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseRule {
    pub class: RevivalPhase,
    /// `16π√q mod 2π`.
    pub residual: f64,
}

fn is_integer(x: f64) -> bool {
    (x - x.round()).abs() <= 1e-9 * x.abs().max(1.0)
}

/// Whether the harmonic phase `e^{−iω_h T_rev}` returns to one at the
/// quantum revival time, where `ω_h T_rev = 16π√q`.
pub fn revival_phase_rule(q: f64) -> PhaseRule {
    let x = 8.0 * q.sqrt();
    let class = if is_integer(x) {
        if is_integer(0.5 * x) {
            RevivalPhase::ExactAtRevivalAndHalf
        } else {
            RevivalPhase::ExactAtRevival
        }
    } else {
        RevivalPhase::Early
    };
    let residual = if class == RevivalPhase::Early {
        2.0 * PI * x.fract()
    } else {
        0.0
    };
    PhaseRule { class, residual }
}
