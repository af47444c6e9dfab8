//! Outcome of an identity check on a grid.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::scalar::Real;

/// One checked identity: where it was evaluated, how far the two sides were
/// apart and whether that is within tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub grid: Vec<f64>,
    #[serde(with = "lenient_f64")]
    pub max_rel_err: f64,
    #[serde(with = "lenient_f64")]
    pub mean_rel_err: f64,
    #[serde(with = "lenient_f64")]
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// Builds a report from per-point errors; an empty or non-finite error set fails.
    pub fn from_errors(identity: impl Into<String>, grid: Vec<f64>, errors: &[f64], tolerance: f64) -> Self {
        let max = errors.iter().copied().fold(0.0_f64, |m, e| if e.is_nan() || m.is_nan() { f64::NAN } else { m.max(e) });
        let mean = if errors.is_empty() { f64::NAN } else { errors.iter().sum::<f64>() / errors.len() as f64 };
        let pass = !errors.is_empty() && max.is_finite() && max <= tolerance;
        Self { identity: identity.into(), grid, max_rel_err: max, mean_rel_err: mean, tolerance, pass, notes: Vec::new() }
    }

    /// Relative errors `|lhs − rhs| / max(|rhs|, floor)` at each grid point.
    pub fn compare<T: Real>(
        identity: impl Into<String>,
        grid: &[T],
        pairs: &[(T, T)],
        floor: T,
        tolerance: f64,
    ) -> Self {
        let errors: Vec<f64> = pairs.iter().map(|&(l, r)| relative_error(l, r, floor).as_f64()).collect();
        Self::from_errors(identity, grid.iter().map(|g| g.as_f64()).collect(), &errors, tolerance)
    }

    /// A report that failed before any comparison could be made.
    pub fn failed(identity: impl Into<String>, tolerance: f64, reason: impl Into<String>) -> Self {
        let mut r = Self::from_errors(identity, Vec::new(), &[], tolerance);
        r.notes.push(reason.into());
        r
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: max rel err {:.3e} (mean {:.3e}, tol {:.1e}, {} points)",
            if self.pass { "PASS" } else { "FAIL" },
            self.identity,
            self.max_rel_err,
            self.mean_rel_err,
            self.tolerance,
            self.grid.len()
        )?;
        for n in &self.notes {
            write!(f, "; {n}")?;
        }
        Ok(())
    }
}

/// Values below this fraction of the largest reference value are compared absolutely.
pub const FLOOR_FRACTION: f64 = 1e-6;

/// Evaluates `(lhs, rhs)` at each grid point and compares them relatively, with
/// a floor of [`FLOOR_FRACTION`] times the largest `|rhs|`. An evaluation error
/// fails the report with the error as a note.
pub fn grid_report<T: Real>(
    identity: impl Into<String>,
    grid: &[T],
    tolerance: f64,
    eval: impl Fn(T) -> Result<(T, T)>,
) -> VerificationReport {
    let identity = identity.into();
    let mut pairs = Vec::with_capacity(grid.len());
    for &x in grid {
        match eval(x) {
            Ok(p) => pairs.push(p),
            Err(e) => return VerificationReport::failed(identity, tolerance, format!("at {x}: {e}")),
        }
    }
    let scale = pairs.iter().fold(T::zero(), |m, &(_, r)| m.max(r.abs()));
    let floor = (scale * T::lit(FLOOR_FRACTION)).max(T::min_positive_value());
    VerificationReport::compare(identity, grid, &pairs, floor, tolerance)
}

/// `|a − b| / max(|b|, floor)`.
pub fn relative_error<T: Real>(a: T, b: T, floor: T) -> T {
    (a - b).abs() / b.abs().max(floor)
}

/// Finite values as numbers, NaN and infinities as the strings `"NaN"`, `"inf"`, `"-inf"`.
mod lenient_f64 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("NaN")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Text(t) => match t.as_str() {
                "NaN" => Ok(f64::NAN),
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                _ => Err(serde::de::Error::custom(format!("expected a number, got `{t}`"))),
            },
        }
    }
}
