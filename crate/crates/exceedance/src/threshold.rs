//! Threshold schedules: the moving target a series must hit.
//!
//! A schedule assigns to every phase `s = 0, 1, 2, ...` a target region
//! `β_s`. The waiting time at start `t` is the first `s` with
//! `V_{t+s} ∈ β_s`. Most applications use upper-exceedance intervals
//! `β_s = (b_s, ∞)` (membership is the strict comparison `v > b_s`), either
//! with a constant level, a periodically varying level (seasonal
//! thresholds), or an arbitrary level function. A fully general region can
//! be supplied as an opaque membership predicate `(s, v) -> bool`; it works
//! with every estimator but disables the closed-form and periodic fast
//! paths.
//!
//! A schedule may carry a *floor*: a constant interval `(b̃, ∞)` contained
//! in every `β_s`. The floor is bookkeeping for transit-time/discrepancy
//! diagnostics; interval schedules spot-check the containment on the phases
//! they are asked about.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Level function of a varying-interval schedule.
pub type LevelFn = Arc<dyn Fn(usize) -> f64 + Send + Sync>;
/// Membership predicate of a general-region schedule.
pub type RegionFn = Arc<dyn Fn(usize, f64) -> bool + Send + Sync>;

#[derive(Clone)]
pub(crate) enum ScheduleKind {
    /// `β_s = (b, ∞)` for every phase.
    Constant { level: f64 },
    /// `β_s = (levels[s mod Y], ∞)`; the period is `levels.len()`.
    Periodic { levels: Arc<Vec<f64>> },
    /// `β_s = (b(s), ∞)` for an arbitrary level function.
    Varying { level_at: LevelFn },
    /// Arbitrary region via a membership predicate.
    General { contains: RegionFn },
}

/// A (possibly time-varying) target-region schedule.
#[derive(Clone)]
pub struct ThresholdSchedule {
    pub(crate) kind: ScheduleKind,
    floor: Option<f64>,
}

impl ThresholdSchedule {
    /// Constant upper-exceedance interval `(level, ∞)`.
    pub fn constant(level: f64) -> Self {
        Self {
            kind: ScheduleKind::Constant { level },
            floor: None,
        }
    }

    /// Periodic upper-exceedance intervals `(levels[s mod Y], ∞)` with
    /// period `Y = levels.len()`.
    ///
    /// Errors if `levels` is empty or contains a non-finite entry.
    pub fn periodic(levels: Vec<f64>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Config("periodic schedule needs at least one level".into()));
        }
        if levels.iter().any(|l| !l.is_finite()) {
            return Err(Error::Config("periodic schedule levels must be finite".into()));
        }
        Ok(Self {
            kind: ScheduleKind::Periodic {
                levels: Arc::new(levels),
            },
            floor: None,
        })
    }

    /// Upper-exceedance intervals with an arbitrary level function
    /// `β_s = (level_at(s), ∞)`.
    pub fn varying(level_at: impl Fn(usize) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            kind: ScheduleKind::Varying {
                level_at: Arc::new(level_at),
            },
            floor: None,
        }
    }

    /// Fully general region given by a membership predicate
    /// `contains(s, v)`. Estimators fall back to direct scans.
    pub fn general(contains: impl Fn(usize, f64) -> bool + Send + Sync + 'static) -> Self {
        Self {
            kind: ScheduleKind::General {
                contains: Arc::new(contains),
            },
            floor: None,
        }
    }

    /// Attach a constant floor interval `(floor_level, ∞)` that must be
    /// contained in every `β_s` (so `floor_level ≥ b_s` for interval
    /// schedules). Used by transit-time/discrepancy bookkeeping.
    pub fn with_floor(mut self, floor_level: f64) -> Self {
        self.floor = Some(floor_level);
        self
    }

    /// The floor level, if one was attached.
    pub fn floor(&self) -> Option<f64> {
        self.floor
    }

    /// Interval level at phase `s`, if this is an interval schedule.
    pub fn level_at(&self, s: usize) -> Option<f64> {
        match &self.kind {
            ScheduleKind::Constant { level } => Some(*level),
            ScheduleKind::Periodic { levels } => Some(levels[s % levels.len()]),
            ScheduleKind::Varying { level_at } => Some(level_at(s)),
            ScheduleKind::General { .. } => None,
        }
    }

    /// Constant level, if this is a constant-interval schedule.
    pub fn constant_level(&self) -> Option<f64> {
        match &self.kind {
            ScheduleKind::Constant { level } => Some(*level),
            _ => None,
        }
    }

    /// Periodic level table, if this is a periodic-interval schedule.
    pub fn periodic_levels(&self) -> Option<&[f64]> {
        match &self.kind {
            ScheduleKind::Periodic { levels } => Some(levels),
            _ => None,
        }
    }

    /// Membership test `v ∈ β_s`.
    ///
    /// Debug builds spot-check floor containment for interval schedules:
    /// a floor below the phase level would mean the floor interval is not a
    /// subset of `β_s`.
    pub fn contains(&self, s: usize, v: f64) -> bool {
        #[cfg(debug_assertions)]
        if let (Some(floor), Some(level)) = (self.floor, self.level_at(s)) {
            debug_assert!(
                floor >= level,
                "floor level {floor} is below the phase-{s} level {level}: floor region is not contained in the schedule"
            );
        }
        match &self.kind {
            ScheduleKind::Constant { level } => v > *level,
            ScheduleKind::Periodic { levels } => v > levels[s % levels.len()],
            ScheduleKind::Varying { level_at } => v > level_at(s),
            ScheduleKind::General { contains } => contains(s, v),
        }
    }
}

impl fmt::Debug for ThresholdSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ScheduleKind::Constant { level } => {
                write!(f, "ThresholdSchedule::constant({level})")
            }
            ScheduleKind::Periodic { levels } => {
                write!(f, "ThresholdSchedule::periodic(Y={})", levels.len())
            }
            ScheduleKind::Varying { .. } => write!(f, "ThresholdSchedule::varying(..)"),
            ScheduleKind::General { .. } => write!(f, "ThresholdSchedule::general(..)"),
        }?;
        if let Some(floor) = self.floor {
            write!(f, ".with_floor({floor})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_membership_is_strict() {
        let sch = ThresholdSchedule::constant(4.0);
        assert!(sch.contains(0, 5.0));
        assert!(!sch.contains(0, 4.0));
        assert!(!sch.contains(7, 3.9));
        assert_eq!(sch.constant_level(), Some(4.0));
    }

    #[test]
    fn periodic_wraps_phases() {
        let sch = ThresholdSchedule::periodic(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(sch.level_at(0), Some(1.0));
        assert_eq!(sch.level_at(4), Some(2.0));
        assert_eq!(sch.level_at(5), Some(3.0));
        assert!(sch.contains(4, 2.5));
        assert!(!sch.contains(5, 2.5));
    }

    #[test]
    fn periodic_rejects_bad_levels() {
        assert!(ThresholdSchedule::periodic(vec![]).is_err());
        assert!(ThresholdSchedule::periodic(vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn varying_and_general_agree_on_intervals() {
        let varying = ThresholdSchedule::varying(|s| s as f64);
        let general = ThresholdSchedule::general(|s, v| v > s as f64);
        for s in 0..5 {
            for v in [-1.0, 0.5, 2.0, 10.0] {
                assert_eq!(varying.contains(s, v), general.contains(s, v));
            }
        }
        assert_eq!(varying.level_at(3), Some(3.0));
        assert_eq!(general.level_at(3), None);
    }

    #[test]
    fn floor_is_recorded() {
        let sch = ThresholdSchedule::constant(4.0).with_floor(4.0);
        assert_eq!(sch.floor(), Some(4.0));
        assert!(sch.contains(0, 4.5));
    }
}
