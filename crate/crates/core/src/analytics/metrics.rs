use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// An exact fraction, rendered as a percentage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Ratio {
    pub num: usize,
    pub den: usize,
}

impl Ratio {
    pub fn new(num: usize, den: usize) -> Self {
        Ratio { num, den }
    }

    /// Percentage at full precision; `None` when the denominator is zero.
    pub fn percent(self) -> Option<f64> {
        (self.den > 0).then(|| 100.0 * self.num as f64 / self.den as f64)
    }

    /// Percentage rounded half-up to two decimals, or `NAN`.
    ///
    /// Computed on the integers so that ties such as 1/32 = 3.125% round up
    /// regardless of binary floating-point representation.
    pub fn render_percent(self) -> String {
        if self.den == 0 {
            return "NAN".into();
        }
        let (num, den) = (self.num as u128, self.den as u128);
        let hundredths = (20_000 * num + den) / (2 * den);
        format!("{}.{:02}", hundredths / 100, hundredths % 100)
    }

    /// `"46.67 (7/15)"` style cell.
    pub fn render_with_fraction(self) -> String {
        format!("{} ({}/{})", self.render_percent(), self.num, self.den)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("inconsistent counts: hits={hits}, visited={visited}, oracle_size={oracle_size}")]
    InconsistentCounts {
        hits: usize,
        visited: usize,
        oracle_size: usize,
    },
}

/// Precision, recall and F-measure of one visited set against the oracle,
/// as percentages.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    /// `None` when nothing was visited (rendered `NAN`).
    pub precision: Option<f64>,
    pub recall: f64,
    pub f_measure: f64,
    pub hits: usize,
    pub visited: usize,
    pub oracle_size: usize,
}

pub fn compute_metrics(
    hits: usize,
    visited: usize,
    oracle_size: usize,
) -> Result<Metrics, MetricsError> {
    if oracle_size == 0 || hits > visited || hits > oracle_size {
        return Err(MetricsError::InconsistentCounts {
            hits,
            visited,
            oracle_size,
        });
    }
    let precision = Ratio::new(hits, visited).percent();
    let recall = 100.0 * hits as f64 / oracle_size as f64;
    let f_measure = match precision {
        Some(p) if p + recall > 0.0 => 2.0 * p * recall / (p + recall),
        _ => 0.0,
    };
    Ok(Metrics {
        precision,
        recall,
        f_measure,
        hits,
        visited,
        oracle_size,
    })
}

impl Metrics {
    pub fn precision_ratio(&self) -> Ratio {
        Ratio::new(self.hits, self.visited)
    }

    pub fn recall_ratio(&self) -> Ratio {
        Ratio::new(self.hits, self.oracle_size)
    }

    /// F-measure as the exact fraction 2·hits / (visited + oracle_size).
    pub fn f_ratio(&self) -> Ratio {
        Ratio::new(2 * self.hits, self.visited + self.oracle_size)
    }

    /// `P=4.43 R=43.14 F=8.03`
    pub fn summary(&self) -> String {
        format!(
            "P={} R={} F={}",
            self.precision_ratio().render_percent(),
            self.recall_ratio().render_percent(),
            self.f_ratio().render_percent()
        )
    }
}

impl Serialize for Metrics {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Metrics", 7)?;
        s.serialize_field("precision", &self.precision)?;
        s.serialize_field("precision_is_nan", &self.precision.is_none())?;
        s.serialize_field("recall", &self.recall)?;
        s.serialize_field("f_measure", &self.f_measure)?;
        s.serialize_field("hits", &self.hits)?;
        s.serialize_field("visited", &self.visited)?;
        s.serialize_field("oracle_size", &self.oracle_size)?;
        s.end()
    }
}
