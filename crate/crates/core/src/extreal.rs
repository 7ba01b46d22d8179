use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// An extended real: a finite double or one of the sentinels `-inf`, `+inf`.
///
/// NaN is unrepresentable, so the order is total.
#[derive(Debug, Clone, Copy)]
pub enum ExtReal {
    Bottom,
    Finite(f64),
    Top,
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal::Finite(0.0);

    /// Maps `±inf` onto the sentinels. Returns `None` for NaN.
    pub fn from_f64(v: f64) -> Option<ExtReal> {
        if v.is_nan() {
            None
        } else if v == f64::INFINITY {
            Some(ExtReal::Top)
        } else if v == f64::NEG_INFINITY {
            Some(ExtReal::Bottom)
        } else {
            Some(ExtReal::Finite(v))
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            ExtReal::Bottom => f64::NEG_INFINITY,
            ExtReal::Finite(v) => v,
            ExtReal::Top => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    /// Applies a strictly increasing map to finite values; sentinels stay put.
    pub fn map_finite(self, f: impl Fn(f64) -> f64) -> ExtReal {
        match self {
            ExtReal::Finite(v) => ExtReal::Finite(f(v)),
            other => other,
        }
    }

    /// `self > other + tol` in the extended order.
    ///
    /// A `Top` on the right never exceeds, a `Bottom` on the left never
    /// exceeds, and any finite value exceeds `Bottom`.
    pub fn exceeds(self, other: ExtReal, tol: f64) -> bool {
        match (self, other) {
            (_, ExtReal::Top) | (ExtReal::Bottom, _) => false,
            (ExtReal::Top, _) | (ExtReal::Finite(_), ExtReal::Bottom) => true,
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a > b + tol,
        }
    }

    /// Equality up to `tol` on finite values, exact on sentinels.
    pub fn approx_eq(self, other: ExtReal, tol: f64) -> bool {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => (a - b).abs() <= tol,
            (a, b) => a == b,
        }
    }

    /// `self - other` when both are finite.
    pub fn slack(self, other: ExtReal) -> Option<f64> {
        Some(self.finite()? - other.finite()?)
    }

    /// Maximum of a nonempty collection.
    pub fn max_of(values: impl IntoIterator<Item = ExtReal>) -> Option<ExtReal> {
        values.into_iter().max()
    }
}

impl PartialEq for ExtReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtReal::*;
        match (self, other) {
            (Bottom, Bottom) | (Top, Top) => Ordering::Equal,
            (Bottom, _) | (_, Top) => Ordering::Less,
            (_, Bottom) | (Top, _) => Ordering::Greater,
            // finite values are never NaN
            (Finite(a), Finite(b)) => a.partial_cmp(b).unwrap_or(Ordering::Equal),
        }
    }
}

impl From<f64> for ExtReal {
    /// # Panics
    ///
    /// Panics on NaN.
    fn from(v: f64) -> Self {
        ExtReal::from_f64(v).expect("NaN is not an extended real")
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Bottom => f.write_str("-inf"),
            ExtReal::Top => f.write_str("inf"),
            // shortest representation that parses back to the same double
            ExtReal::Finite(v) => {
                let a = v.abs();
                if a != 0.0 && !(1e-5..1e16).contains(&a) {
                    write!(f, "{v:e}")
                } else {
                    write!(f, "{v}")
                }
            }
        }
    }
}

impl FromStr for ExtReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" | "TOP" => Ok(ExtReal::Top),
            "-inf" | "BOTTOM" => Ok(ExtReal::Bottom),
            t => {
                let v: f64 = t
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("not a number: `{t}`")))?;
                ExtReal::from_f64(v).ok_or_else(|| Error::InvalidParameter("NaN".into()))
            }
        }
    }
}
