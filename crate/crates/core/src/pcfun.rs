//! Piecewise-constant functions on a bounded open interval.
//!
//! Everything here is almost-everywhere: the value of a [`StepFunction`] at
//! one of its breakpoints is not observable. Construction merges equal
//! adjacent pieces, so the stored breakpoints are exactly the jump set.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a.is_finite() && b.is_finite() && a < b {
            Ok(Interval { a, b })
        } else {
            Err(Error::InvalidInterval { a, b })
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    /// Strict interior membership.
    pub fn contains(&self, t: f64) -> bool {
        self.a < t && t < self.b
    }
}

/// The ordered jumps `[u](t_i) = v_i - v_{i-1}` of a step function.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpProfile(Vec<f64>);

impl JumpProfile {
    pub fn jumps(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }
}

/// A piecewise-constant function `u ∈ PC(a, b)` with a minimal jump set.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    interval: Interval,
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl StepFunction {
    /// Builds a step function, merging pieces whose values coincide.
    ///
    /// `values[i]` is the value on the `i`-th piece; there is one more value
    /// than there are breakpoints.
    pub fn new(interval: Interval, breakpoints: &[f64], values: &[f64]) -> Result<Self> {
        if values.len() != breakpoints.len() + 1 {
            return Err(Error::LengthMismatch {
                breaks: breakpoints.len(),
                expected: breakpoints.len() + 1,
                got: values.len(),
            });
        }
        if let Some(&v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue(v));
        }
        let ordered = breakpoints.windows(2).all(|w| w[0] < w[1]);
        if !ordered || !breakpoints.iter().all(|&t| interval.contains(t)) {
            return Err(Error::InvalidBreakpoints {
                a: interval.a,
                b: interval.b,
            });
        }

        let mut kept_breaks = Vec::with_capacity(breakpoints.len());
        let mut kept_values = Vec::with_capacity(values.len());
        kept_values.push(values[0]);
        for (&t, &v) in breakpoints.iter().zip(&values[1..]) {
            if v != *kept_values.last().unwrap() {
                kept_breaks.push(t);
                kept_values.push(v);
            }
        }
        Ok(StepFunction {
            interval,
            breakpoints: kept_breaks,
            values: kept_values,
        })
    }

    pub fn constant(interval: Interval, value: f64) -> Result<Self> {
        Self::new(interval, &[], &[value])
    }

    /// Builds `u` from a starting value and a list of jumps placed at
    /// `breakpoints`; the values are the running sums.
    pub fn from_jumps(
        interval: Interval,
        start: f64,
        breakpoints: &[f64],
        jumps: &[f64],
    ) -> Result<Self> {
        if jumps.len() != breakpoints.len() {
            return Err(Error::LengthMismatch {
                breaks: breakpoints.len(),
                expected: breakpoints.len(),
                got: jumps.len(),
            });
        }
        let mut values = Vec::with_capacity(jumps.len() + 1);
        values.push(start);
        let mut acc = start;
        for &j in jumps {
            acc += j;
            values.push(acc);
        }
        Self::new(interval, breakpoints, &values)
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    /// The jump set `S(u)`.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn jump_count(&self) -> usize {
        self.breakpoints.len()
    }

    pub fn jump_profile(&self) -> JumpProfile {
        JumpProfile(self.values.windows(2).map(|w| w[1] - w[0]).collect())
    }

    /// Value at an interior point that is not a breakpoint.
    pub fn value_at(&self, t: f64) -> Option<f64> {
        if !self.interval.contains(t) {
            return None;
        }
        match self.breakpoints.binary_search_by(|b| b.total_cmp(&t)) {
            Ok(_) => None,
            Err(i) => Some(self.values[i]),
        }
    }

    /// Pieces as `(left, right, value)` triples.
    pub fn pieces(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let n = self.values.len();
        (0..n).map(move |i| {
            let left = if i == 0 {
                self.interval.a
            } else {
                self.breakpoints[i - 1]
            };
            let right = if i + 1 == n {
                self.interval.b
            } else {
                self.breakpoints[i]
            };
            (left, right, self.values[i])
        })
    }

    /// `∫_I |u - v|`, exact up to floating rounding, over the merged partition.
    pub fn l1_distance(&self, other: &StepFunction) -> Result<f64> {
        if self.interval != other.interval {
            return Err(Error::IntervalMismatch);
        }
        let (p, q) = (&self.breakpoints, &other.breakpoints);
        let (mut i, mut j) = (0usize, 0usize);
        let mut left = self.interval.a;
        let mut total = 0.0;
        loop {
            let next_p = p.get(i).copied().unwrap_or(f64::INFINITY);
            let next_q = q.get(j).copied().unwrap_or(f64::INFINITY);
            let right = next_p.min(next_q).min(self.interval.b);
            total += (self.values[i] - other.values[j]).abs() * (right - left);
            if right >= self.interval.b {
                break;
            }
            if next_p == right {
                i += 1;
            }
            if next_q == right {
                j += 1;
            }
            left = right;
        }
        Ok(total)
    }
}

/// Free-function form of [`StepFunction::new`].
pub fn make_step_function(
    interval: Interval,
    breakpoints: &[f64],
    values: &[f64],
) -> Result<StepFunction> {
    StepFunction::new(interval, breakpoints, values)
}

pub fn jump_profile(u: &StepFunction) -> JumpProfile {
    u.jump_profile()
}

pub fn l1_distance(u: &StepFunction, v: &StepFunction) -> Result<f64> {
    u.l1_distance(v)
}

fn check_jumps(expected: usize, u: &StepFunction) -> Result<()> {
    if u.jump_count() == expected {
        Ok(())
    } else {
        Err(Error::InvalidSequence(format!(
            "expected {expected} jumps but rounding left {}",
            u.jump_count()
        )))
    }
}

/// `z` on `(a, t0]`, `z + w` on `(t0, t1]`, `z + w + v` on `(t1, b)`.
///
/// Its jump profile is `[w, v]`.
pub fn two_jump_sequence(
    z: f64,
    w: f64,
    v: f64,
    t0: f64,
    t1: f64,
    interval: Interval,
) -> Result<StepFunction> {
    if !(interval.contains(t0) && interval.contains(t1) && t0 < t1) {
        return Err(Error::InvalidSequence(format!(
            "need a < t0 < t1 < b, got t0 = {t0}, t1 = {t1}"
        )));
    }
    if w == 0.0 || v == 0.0 {
        return Err(Error::InvalidSequence("jumps must be nonzero".into()));
    }
    let u = StepFunction::from_jumps(interval, z, &[t0, t1], &[w, v])?;
    check_jumps(2, &u)?;
    Ok(u)
}

/// The jump-splitting construction: the jump `w1 + w2` at `t1` of the limit
/// is replaced by `w1` at `t1` followed by `w2` at `t1 + 1/n`.
///
/// Jump profile `[y, w1, w2]`; see [`split_jump_limit`] for the limit.
#[allow(clippy::too_many_arguments)]
pub fn split_jump_sequence(
    z: f64,
    y: f64,
    w1: f64,
    w2: f64,
    t0: f64,
    t1: f64,
    n: u64,
    interval: Interval,
) -> Result<StepFunction> {
    if n == 0 {
        return Err(Error::InvalidSequence("n must be positive".into()));
    }
    check_split_params(y, w1, w2, t0, t1, interval)?;
    let t2 = t1 + 1.0 / n as f64;
    if !(t2 < interval.b() && t2 > t1) {
        return Err(Error::InvalidSequence(format!(
            "t1 + 1/n = {t2} does not fit inside the interval for n = {n}"
        )));
    }
    let u = StepFunction::from_jumps(interval, z, &[t0, t1, t2], &[y, w1, w2])?;
    check_jumps(3, &u)?;
    Ok(u)
}

/// Limit of [`split_jump_sequence`] as `n → ∞`; jump profile `[y, w1 + w2]`.
pub fn split_jump_limit(
    z: f64,
    y: f64,
    w1: f64,
    w2: f64,
    t0: f64,
    t1: f64,
    interval: Interval,
) -> Result<StepFunction> {
    check_split_params(y, w1, w2, t0, t1, interval)?;
    let u = StepFunction::from_jumps(interval, z, &[t0, t1], &[y, w1 + w2])?;
    check_jumps(2, &u)?;
    Ok(u)
}

fn check_split_params(y: f64, w1: f64, w2: f64, t0: f64, t1: f64, iv: Interval) -> Result<()> {
    if !(iv.contains(t0) && iv.contains(t1) && t0 < t1) {
        return Err(Error::InvalidSequence(format!(
            "need a < t0 < t1 < b, got t0 = {t0}, t1 = {t1}"
        )));
    }
    if y == 0.0 || w1 == 0.0 || w2 == 0.0 || w1 + w2 == 0.0 {
        return Err(Error::InvalidSequence(
            "y, w1, w2 and w1 + w2 must all be nonzero".into(),
        ));
    }
    Ok(())
}

impl fmt::Display for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "interval {} {}", self.interval.a, self.interval.b)?;
        for v in &self.values {
            writeln!(f, "piece {v}")?;
        }
        for t in &self.breakpoints {
            writeln!(f, "break {t}")?;
        }
        Ok(())
    }
}

impl FromStr for StepFunction {
    type Err = Error;

    /// Parses the `interval` / `piece` / `break` record format. Blank lines
    /// and `#` comments are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let mut interval = None;
        let mut values = Vec::new();
        let mut breaks = Vec::new();
        for (idx, raw) in s.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse {
                line: line_no,
                msg: msg.to_string(),
            };
            let mut toks = line.split_whitespace();
            let key = toks.next().unwrap();
            let nums: Vec<f64> = toks
                .map(|t| {
                    t.parse::<f64>()
                        .map_err(|_| err(&format!("bad number `{t}`")))
                })
                .collect::<Result<_>>()?;
            match (key, nums.as_slice()) {
                ("interval", &[a, b]) => {
                    if interval.is_some() {
                        return Err(err("duplicate interval line"));
                    }
                    interval = Some(Interval::new(a, b)?);
                }
                ("piece", &[v]) => values.push(v),
                ("break", &[t]) => breaks.push(t),
                _ => return Err(err(&format!("unrecognised record `{line}`"))),
            }
        }
        let interval = interval.ok_or(Error::Parse {
            line: 0,
            msg: "missing interval line".into(),
        })?;
        StepFunction::new(interval, &breaks, &values)
    }
}
