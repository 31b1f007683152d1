use crate::dynamics::AutocorrelationTrace;
use crate::error::{Error, Result};

use super::timescales::TimeScales;

pub const DEFAULT_THRESHOLD: f64 = 0.7;

/// Half-width of a revival window relative to the predicted time.
pub const REVIVAL_WINDOW: f64 = 0.1;

/// Candidates must reach this fraction of the best peak in their window.
pub const CANDIDATE_FRACTION: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    /// Parabola-refined time of the maximum.
    pub time: f64,
    /// `|A|²` at the peak sample.
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RevivalKind {
    Revival,
    SuperRevival,
}

impl RevivalKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RevivalKind::Revival => "revival",
            RevivalKind::SuperRevival => "super-revival",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RevivalCandidate {
    pub kind: RevivalKind,
    pub predicted: f64,
    pub peak: Peak,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodReport {
    pub peaks: Vec<Peak>,
    /// Median spacing of consecutive peaks, at least two samples.
    pub period: f64,
    pub candidates: Vec<RevivalCandidate>,
    pub threshold: f64,
    pub window: f64,
}

impl PeriodReport {
    /// Highest candidate of one kind.
    pub fn best(&self, kind: RevivalKind) -> Option<RevivalCandidate> {
        self.candidates
            .iter()
            .filter(|c| c.kind == kind)
            .copied()
            .max_by(|a, b| a.peak.value.total_cmp(&b.peak.value))
    }
}

/// Local maxima of `|A|²` above `threshold`, the fundamental period, and
/// the revival candidates inside `±10%` windows around the revival and
/// super-revival times of `predicted`.
pub fn detect_periodicity(
    trace: &AutocorrelationTrace,
    threshold: f64,
    predicted: Option<&TimeScales>,
) -> Result<PeriodReport> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::domain(
            "threshold",
            format!("must be in (0, 1], got {threshold}"),
        ));
    }
    let h = match trace.sample_spacing() {
        Some(h) if h > 0.0 => h,
        _ => {
            return Err(Error::NoPeriodicity {
                peaks: 0,
                threshold,
            })
        }
    };
    let uniform = trace
        .times
        .windows(2)
        .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.max(w[1].abs()));
    if !uniform {
        return Err(Error::domain("trace", "samples are not uniformly spaced"));
    }

    let y = trace.abs_sq();
    let mut peaks = Vec::new();
    for i in 1..y.len().saturating_sub(1) {
        if y[i] >= threshold && y[i] > y[i - 1] && y[i] >= y[i + 1] {
            let curv = y[i - 1] - 2.0 * y[i] + y[i + 1];
            let shift = if curv < 0.0 {
                (0.5 * (y[i - 1] - y[i + 1]) / curv).clamp(-0.5, 0.5)
            } else {
                0.0
            };
            peaks.push(Peak {
                time: trace.times[i] + shift * h,
                value: y[i],
            });
        }
    }
    if peaks.len() < 2 {
        return Err(Error::NoPeriodicity {
            peaks: peaks.len(),
            threshold,
        });
    }
    let mut gaps: Vec<f64> = peaks.windows(2).map(|w| w[1].time - w[0].time).collect();
    gaps.sort_by(f64::total_cmp);
    let mid = gaps.len() / 2;
    let median = if gaps.len() % 2 == 1 {
        gaps[mid]
    } else {
        0.5 * (gaps[mid - 1] + gaps[mid])
    };
    let period = median.max(2.0 * h);

    let mut candidates = Vec::new();
    if let Some(ts) = predicted {
        for (kind, t) in [
            (RevivalKind::Revival, ts.t_rev),
            (RevivalKind::SuperRevival, ts.t_spr),
        ] {
            let Some(t) = t else { continue };
            let inside: Vec<Peak> = peaks
                .iter()
                .filter(|p| (p.time - t).abs() <= REVIVAL_WINDOW * t)
                .copied()
                .collect();
            let top = inside.iter().map(|p| p.value).fold(0.0, f64::max);
            candidates.extend(
                inside
                    .into_iter()
                    .filter(|p| p.value >= CANDIDATE_FRACTION * top)
                    .map(|peak| RevivalCandidate {
                        kind,
                        predicted: t,
                        peak,
                    }),
            );
        }
    }
    Ok(PeriodReport {
        peaks,
        period,
        candidates,
        threshold,
        window: REVIVAL_WINDOW,
    })
}
