//! Finite checkers for the structural conditions on densities.
//!
//! Every checker enumerates its whole quantifier domain (rows in parallel)
//! and reports the lexicographically first violation in grid order, so the
//! report does not depend on scheduling.

use std::fmt;

use rayon::prelude::*;

use crate::supremand::{validate_alphabet, Density, LocalDensity};
use crate::{Error, ExtReal, Result};

/// What to do with a tuple whose evaluation leaves the domain of `h`,
/// typically because `w1 + w2` is not in a finite alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SumPolicy {
    RequireInDomain,
    #[default]
    SkipUndefined,
}

impl std::str::FromStr for SumPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "require-in-domain" | "require" => Ok(SumPolicy::RequireInDomain),
            "skip-undefined" | "skip" => Ok(SumPolicy::SkipUndefined),
            other => Err(Error::InvalidParameter(format!(
                "unknown sum policy `{other}`"
            ))),
        }
    }
}

/// Finite quantifier domain for the triple conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleGrid {
    points: Vec<f64>,
    sum_policy: SumPolicy,
}

impl TripleGrid {
    pub fn new(points: Vec<f64>, sum_policy: SumPolicy) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyGrid);
        }
        validate_alphabet(&points)?;
        Ok(TripleGrid { points, sum_policy })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn sum_policy(&self) -> SumPolicy {
        self.sum_policy
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    Asymmetric,
    NonDiagonal,
    CartesianSubmaximality,
    SeparateSubmaximality,
    Submaximality,
    LowerSemicontinuity,
}

impl WitnessKind {
    pub fn label(self) -> &'static str {
        match self {
            WitnessKind::Asymmetric => "asymmetric",
            WitnessKind::NonDiagonal => "non-diagonal",
            WitnessKind::CartesianSubmaximality => "cartesian-submaximality",
            WitnessKind::SeparateSubmaximality => "separate-submaximality",
            WitnessKind::Submaximality => "submaximality",
            WitnessKind::LowerSemicontinuity => "lower-semicontinuity",
        }
    }
}

/// A concrete tuple on which a condition fails.
///
/// For the inequality kinds `lhs` exceeds `rhs` by more than the tolerance.
/// Argument layouts: `(w1, w2, y)` for Cartesian, `(y, w1, w2)` for separate,
/// `(x1, x2)` for one-dimensional submaximality, `(ξ, η)` for symmetry and
/// diagonality, `(ξ, η, ξ', η')` for lower semicontinuity where the primed
/// pair is the net point attaining the minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolationWitness {
    pub kind: WitnessKind,
    pub arguments: Vec<f64>,
    pub lhs: ExtReal,
    pub rhs: ExtReal,
    pub slack: Option<f64>,
}

impl ViolationWitness {
    pub fn new(kind: WitnessKind, arguments: Vec<f64>, lhs: ExtReal, rhs: ExtReal) -> Self {
        ViolationWitness {
            kind,
            arguments,
            lhs,
            rhs,
            slack: lhs.slack(rhs),
        }
    }
}

/// Outcome of a checker run.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    witness: Option<ViolationWitness>,
    tuples_checked: usize,
    tuples_skipped: usize,
    tolerance: f64,
    note: Option<String>,
    resolution: Option<(f64, usize)>,
}

impl CheckReport {
    pub(crate) fn pass(checked: usize, skipped: usize, tolerance: f64) -> Self {
        debug_assert!(checked > 0);
        CheckReport {
            witness: None,
            tuples_checked: checked,
            tuples_skipped: skipped,
            tolerance,
            note: None,
            resolution: None,
        }
    }

    pub(crate) fn fail(
        witness: ViolationWitness,
        checked: usize,
        skipped: usize,
        tol: f64,
    ) -> Self {
        CheckReport {
            witness: Some(witness),
            ..CheckReport::pass(checked.max(1), skipped, tol)
        }
    }

    /// A pass with nothing to check, explained by `note`.
    pub(crate) fn vacuous(skipped: usize, tolerance: f64, note: &str) -> Self {
        CheckReport {
            witness: None,
            tuples_checked: 0,
            tuples_skipped: skipped,
            tolerance,
            note: Some(note.to_string()),
            resolution: None,
        }
    }

    fn with_resolution(mut self, delta: f64, net_density: usize) -> Self {
        self.resolution = Some((delta, net_density));
        self
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub fn witness(&self) -> Option<&ViolationWitness> {
        self.witness.as_ref()
    }

    pub fn tuples_checked(&self) -> usize {
        self.tuples_checked
    }

    pub fn tuples_skipped(&self) -> usize {
        self.tuples_skipped
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    /// `(delta, net_density)` for numerical lower-semicontinuity runs.
    pub fn lsc_resolution(&self) -> Option<(f64, usize)> {
        self.resolution
    }

    /// Line-oriented `key<TAB>value` rendering.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: String| {
            out.push_str(k);
            out.push('\t');
            out.push_str(&v);
            out.push('\n');
        };
        put(
            "verdict",
            if self.passed() { "pass" } else { "fail" }.into(),
        );
        put("tuples_checked", self.tuples_checked.to_string());
        put("tuples_skipped", self.tuples_skipped.to_string());
        put("tolerance", ExtReal::Finite(self.tolerance).to_string());
        if let Some((delta, net)) = self.resolution {
            put("delta", ExtReal::Finite(delta).to_string());
            put("net_density", net.to_string());
        }
        if let Some(note) = &self.note {
            put("note", note.clone());
        }
        if let Some(w) = &self.witness {
            put("witness_kind", w.kind.label().into());
            let args: Vec<String> = w.arguments.iter().map(|a| a.to_string()).collect();
            put("witness_arguments", args.join(","));
            put("witness_lhs", w.lhs.to_string());
            put("witness_rhs", w.rhs.to_string());
            if let Some(s) = w.slack {
                put("witness_slack", s.to_string());
            }
        }
        out
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "verdict         {verdict}")?;
        writeln!(f, "tuples checked  {}", self.tuples_checked)?;
        writeln!(f, "tuples skipped  {}", self.tuples_skipped)?;
        writeln!(f, "tolerance       {:e}", self.tolerance)?;
        if let Some((delta, net)) = self.resolution {
            writeln!(f, "resolution      delta = {delta:e}, net = {net}x{net}")?;
        }
        if let Some(note) = &self.note {
            writeln!(f, "note            {note}")?;
        }
        if let Some(w) = &self.witness {
            let args: Vec<String> = w.arguments.iter().map(|a| a.to_string()).collect();
            writeln!(
                f,
                "witness         {} at ({})",
                w.kind.label(),
                args.join(", ")
            )?;
            writeln!(f, "  lhs           {}", w.lhs)?;
            writeln!(f, "  rhs           {}", w.rhs)?;
            if let Some(s) = w.slack {
                writeln!(f, "  slack         {s}")?;
            }
        }
        Ok(())
    }
}

enum Outcome {
    Skip,
    Ok,
    Violation(ViolationWitness),
}

#[derive(Default)]
struct Tally {
    checked: usize,
    skipped: usize,
    first: Option<ViolationWitness>,
    all: Vec<ViolationWitness>,
}

/// Runs `row(i)` for every leading index in parallel and folds the rows in
/// index order. The first error in enumeration order wins.
fn scan<F>(rows: usize, keep_all: bool, row: F) -> Result<Tally>
where
    F: Fn(usize) -> Vec<Result<Outcome>> + Sync + Send,
{
    let per_row: Vec<Vec<Result<Outcome>>> = (0..rows).into_par_iter().map(&row).collect();
    let mut tally = Tally::default();
    for outcome in per_row.into_iter().flatten() {
        match outcome? {
            Outcome::Skip => tally.skipped += 1,
            Outcome::Ok => tally.checked += 1,
            Outcome::Violation(w) => {
                tally.checked += 1;
                if tally.first.is_none() {
                    tally.first = Some(w.clone());
                }
                if keep_all {
                    tally.all.push(w);
                }
            }
        }
    }
    Ok(tally)
}

fn finish(tally: Tally, tol: f64, what: &str) -> Result<CheckReport> {
    if tally.checked == 0 {
        return Err(Error::NoAdmissibleTuple(format!(
            "every {what} was skipped ({} in total)",
            tally.skipped
        )));
    }
    Ok(match tally.first {
        Some(w) => CheckReport::fail(w, tally.checked, tally.skipped, tol),
        None => CheckReport::pass(tally.checked, tally.skipped, tol),
    })
}

fn is_domain_error(e: &Error) -> bool {
    matches!(e, Error::OutOfDomain { .. } | Error::NotInAlphabet(_))
}

/// Applies the sum policy to a fallible evaluation of one tuple.
fn settle(policy: SumPolicy, r: Result<Outcome>) -> Result<Outcome> {
    match r {
        Err(e) if is_domain_error(&e) && policy == SumPolicy::SkipUndefined => Ok(Outcome::Skip),
        other => other,
    }
}

fn cartesian_tally(h: &dyn Density, grid: &TripleGrid, tol: f64, keep_all: bool) -> Result<Tally> {
    let p = grid.points();
    scan(p.len(), keep_all, |i| {
        let w1 = p[i];
        let mut out = Vec::with_capacity(p.len() * p.len());
        for &w2 in p {
            for &y in p {
                let s = w1 + w2;
                if s == 0.0 {
                    out.push(Ok(Outcome::Skip));
                    continue;
                }
                let r = (|| {
                    let lhs = h.eval(s, y)?;
                    let rhs = h.eval(w1, y)?.max(h.eval(w2, y)?).max(h.eval(w1, w2)?);
                    Ok(if lhs.exceeds(rhs, tol) {
                        Outcome::Violation(ViolationWitness::new(
                            WitnessKind::CartesianSubmaximality,
                            vec![w1, w2, y],
                            lhs,
                            rhs,
                        ))
                    } else {
                        Outcome::Ok
                    })
                })();
                out.push(settle(grid.sum_policy(), r));
            }
        }
        out
    })
}

/// `h(w1 + w2, y) <= max{h(w1, y), h(w2, y), h(w1, w2)}` over all ordered
/// triples of grid points with `w1 + w2 != 0`.
pub fn check_cartesian_submaximality(
    h: &dyn Density,
    grid: &TripleGrid,
    tol: f64,
) -> Result<CheckReport> {
    check_tol(tol)?;
    finish(cartesian_tally(h, grid, tol, false)?, tol, "triple")
}

/// Every violating triple, in enumeration order, plus the tuple counts.
pub fn cartesian_violations(
    h: &dyn Density,
    grid: &TripleGrid,
    tol: f64,
) -> Result<(Vec<ViolationWitness>, usize, usize)> {
    check_tol(tol)?;
    let t = cartesian_tally(h, grid, tol, true)?;
    Ok((t.all, t.checked, t.skipped))
}

/// `h(y, w1 + w2) <= max{h(y, w1), h(y, w2)}` over `(y, w1, w2)`.
pub fn check_separate_submaximality(
    h: &dyn Density,
    grid: &TripleGrid,
    tol: f64,
) -> Result<CheckReport> {
    check_tol(tol)?;
    let p = grid.points();
    let tally = scan(p.len(), false, |i| {
        let y = p[i];
        let mut out = Vec::with_capacity(p.len() * p.len());
        for &w1 in p {
            for &w2 in p {
                let s = w1 + w2;
                if s == 0.0 {
                    out.push(Ok(Outcome::Skip));
                    continue;
                }
                let r = (|| {
                    let lhs = h.eval(y, s)?;
                    let rhs = h.eval(y, w1)?.max(h.eval(y, w2)?);
                    Ok(if lhs.exceeds(rhs, tol) {
                        Outcome::Violation(ViolationWitness::new(
                            WitnessKind::SeparateSubmaximality,
                            vec![y, w1, w2],
                            lhs,
                            rhs,
                        ))
                    } else {
                        Outcome::Ok
                    })
                })();
                out.push(settle(grid.sum_policy(), r));
            }
        }
        out
    })?;
    finish(tally, tol, "triple")
}

/// `g(x1 + x2) <= max{g(x1), g(x2)}` over ordered pairs with `x1 != -x2`.
pub fn check_submaximal_1d(g: &LocalDensity, grid: &TripleGrid, tol: f64) -> Result<CheckReport> {
    check_tol(tol)?;
    let p = grid.points();
    let tally = scan(p.len(), false, |i| {
        let x1 = p[i];
        p.iter()
            .map(|&x2| {
                let s = x1 + x2;
                if s == 0.0 {
                    return Ok(Outcome::Skip);
                }
                let r = (|| {
                    let lhs = g.eval(s)?;
                    let rhs = g.eval(x1)?.max(g.eval(x2)?);
                    Ok(if lhs.exceeds(rhs, tol) {
                        Outcome::Violation(ViolationWitness::new(
                            WitnessKind::Submaximality,
                            vec![x1, x2],
                            lhs,
                            rhs,
                        ))
                    } else {
                        Outcome::Ok
                    })
                })();
                settle(grid.sum_policy(), r)
            })
            .collect()
    })?;
    finish(tally, tol, "pair")
}

pub const DEFAULT_LSC_DELTA: f64 = 1e-3;
pub const DEFAULT_LSC_NET: usize = 32;
/// The net is resampled at `δ, δ/2, …, δ/2^LSC_HALVINGS`.
pub const LSC_HALVINGS: u32 = 10;

/// Smallest admissible value on the punctured lattice of radius `radius`.
fn net_minimum(
    h: &dyn Density,
    (px, py): (f64, f64),
    radius: f64,
    net_density: usize,
) -> Option<(ExtReal, f64, f64)> {
    let offsets: Vec<f64> = if net_density == 1 {
        vec![0.0]
    } else {
        (0..net_density)
            .map(|i| -radius + 2.0 * radius * i as f64 / (net_density - 1) as f64)
            .collect()
    };
    let mut best: Option<(ExtReal, f64, f64)> = None;
    for &dx in &offsets {
        for &dy in &offsets {
            let (qx, qy) = (px + dx, py + dy);
            if (qx == px && qy == py) || qx == 0.0 || qy == 0.0 {
                continue;
            }
            let Ok(v) = h.eval(qx, qy) else { continue };
            if best.is_none_or(|(b, _, _)| v < b) {
                best = Some((v, qx, qy));
            }
        }
    }
    best
}

/// One-sided numerical lower-semicontinuity test.
///
/// Around each probe point `p` a `net_density × net_density` lattice on
/// `[p - r, p + r]²` is sampled for `r = δ, δ/2, …, δ/2^LSC_HALVINGS`, with
/// `p` itself and points off the domain of `h` excluded. Writing `gap(r)`
/// for `h(p)` minus the lattice minimum, `p` is flagged when the finest gap
/// exceeds `tol` and has not shrunk below half the coarsest gap: a
/// continuous `h` has `gap(r) → 0` with `r`, a downward jump next to `p`
/// keeps it bounded away from zero. A failure is evidence at resolution
/// `δ`, a pass proves nothing. Tabulated densities live on isolated points
/// and pass vacuously.
pub fn check_lsc_numeric(
    h: &dyn Density,
    probe_points: &[(f64, f64)],
    delta: f64,
    net_density: usize,
    tol: f64,
) -> Result<CheckReport> {
    check_tol(tol)?;
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "delta must be positive, got {delta}"
        )));
    }
    if net_density == 0 {
        return Err(Error::InvalidParameter(
            "net density must be positive".into(),
        ));
    }
    if probe_points.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if h.alphabet().is_some() {
        return Ok(
            CheckReport::vacuous(probe_points.len(), tol, "lsc trivial on finite alphabet")
                .with_resolution(delta, net_density),
        );
    }
    let tally = scan(probe_points.len(), false, |k| {
        let p = probe_points[k];
        let r = (|| {
            let at = h.eval(p.0, p.1)?;
            let empty = || {
                Error::InvalidParameter(format!(
                    "probe point ({}, {}) has an empty admissible net",
                    p.0, p.1
                ))
            };
            let (coarse, _, _) = net_minimum(h, p, delta, net_density).ok_or_else(empty)?;
            let fine_radius = delta / f64::powi(2.0, LSC_HALVINGS as i32);
            let (fine, qx, qy) = net_minimum(h, p, fine_radius, net_density).ok_or_else(empty)?;
            let persistent = match (at.slack(fine), at.slack(coarse)) {
                (Some(g_fine), Some(g_coarse)) => g_fine > 0.5 * g_coarse,
                // a sentinel on either side: the gap is infinite or absent
                _ => true,
            };
            Ok(if at.exceeds(fine, tol) && persistent {
                Outcome::Violation(ViolationWitness::new(
                    WitnessKind::LowerSemicontinuity,
                    vec![p.0, p.1, qx, qy],
                    at,
                    fine,
                ))
            } else {
                Outcome::Ok
            })
        })();
        vec![r]
    })?;
    Ok(finish(tally, tol, "probe point")?.with_resolution(delta, net_density))
}

fn check_tol(tol: f64) -> Result<()> {
    if tol >= 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "tolerance must be >= 0, got {tol}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::supremand::{catalog, Domain, GridSupremand, Supremand};

    fn grid(points: &[f64]) -> TripleGrid {
        TripleGrid::new(points.to_vec(), SumPolicy::SkipUndefined).unwrap()
    }

    #[test]
    fn triple_grid_validation() {
        assert!(matches!(
            TripleGrid::new(vec![], SumPolicy::SkipUndefined),
            Err(Error::EmptyGrid)
        ));
        assert!(TripleGrid::new(vec![1.0, 0.0], SumPolicy::SkipUndefined).is_err());
        assert!(TripleGrid::new(vec![1.0, 1.0], SumPolicy::SkipUndefined).is_err());
        assert_eq!(
            "require".parse::<SumPolicy>().unwrap(),
            SumPolicy::RequireInDomain
        );
        assert!("bogus".parse::<SumPolicy>().is_err());
    }

    #[test]
    fn sin_ratio_sum_fails_at_quarter_turns() {
        let h = catalog("sin-ratio-sum", None).unwrap();
        let r = check_cartesian_submaximality(&h, &grid(&[PI / 2.0, PI]), 1e-12).unwrap();
        let w = r.witness().expect("violation");
        assert_eq!(w.arguments, vec![PI / 2.0, PI / 2.0, PI / 2.0]);
        assert!((w.lhs.finite().unwrap() - 2.0 / (3.0 * PI)).abs() < 1e-12);
        assert!(w.rhs.finite().unwrap().abs() < 1e-12);
        assert_eq!(r.tuples_checked(), 8);
    }

    #[test]
    fn constant_always_passes() {
        let h = Supremand::constant(ExtReal::Finite(1.0));
        let g = grid(&[-2.0, -1.0, 1.0, 3.0]);
        let r = check_cartesian_submaximality(&h, &g, 0.0).unwrap();
        assert!(r.passed());
        // pairs (w1, -w1) are skipped: (-1, 1) and (1, -1), each with 4 ys
        assert_eq!(r.tuples_skipped(), 8);
        assert!(check_separate_submaximality(&h, &g, 0.0).unwrap().passed());
    }

    #[test]
    fn require_policy_turns_gaps_into_errors() {
        let g = GridSupremand::new(vec![1.0, 2.0], vec![vec![ExtReal::ZERO; 2]; 2]).unwrap();
        let strict = TripleGrid::new(vec![1.0, 2.0], SumPolicy::RequireInDomain).unwrap();
        assert!(matches!(
            check_cartesian_submaximality(&g, &strict, 0.0),
            Err(Error::NotInAlphabet(_))
        ));
        let r = check_cartesian_submaximality(&g, &grid(&[1.0, 2.0]), 0.0).unwrap();
        // only w1 = w2 = 1 produces a sum in the alphabet
        assert_eq!((r.tuples_checked(), r.tuples_skipped()), (2, 6));
        let lonely = GridSupremand::new(vec![1.0], vec![vec![ExtReal::ZERO]]).unwrap();
        assert!(matches!(
            check_cartesian_submaximality(&lonely, &grid(&[1.0]), 0.0),
            Err(Error::NoAdmissibleTuple(_))
        ));
    }

    #[test]
    fn one_dimensional_examples() {
        let abs = LocalDensity::from_spec("abs", None).unwrap();
        let neg = LocalDensity::from_spec("neg-abs", None).unwrap();
        let g = grid(&[1.0, 2.0, 3.0]);
        assert!(check_submaximal_1d(&neg, &g, 0.0).unwrap().passed());
        let r = check_submaximal_1d(&abs, &g, 0.0).unwrap();
        // (1, 1) comes first: g(2) = 2 > max{g(1), g(1)} = 1
        let w = r.witness().unwrap();
        assert_eq!(w.arguments, vec![1.0, 1.0]);
        assert_eq!((w.lhs, w.rhs), (ExtReal::Finite(2.0), ExtReal::Finite(1.0)));
        let c = LocalDensity::from_spec("constant:4", None).unwrap();
        assert!(check_submaximal_1d(&c, &g, 0.0).unwrap().passed());
    }

    #[test]
    fn sin_ratio_is_submaximal_on_positive_multiples() {
        let g = LocalDensity::from_spec("sin-ratio", None).unwrap();
        let pts: Vec<f64> = (1..=16).map(|k| k as f64 * PI / 8.0).collect();
        assert!(check_submaximal_1d(&g, &grid(&pts), 1e-12)
            .unwrap()
            .passed());
    }

    #[test]
    fn extended_order_in_checks() {
        // rhs = TOP never fails, lhs = TOP fails against finite rhs
        let top_rhs = GridSupremand::new(
            vec![1.0, 2.0],
            vec![
                vec![ExtReal::Top, ExtReal::Finite(5.0)],
                vec![ExtReal::Finite(5.0), ExtReal::Finite(9.0)],
            ],
        )
        .unwrap();
        assert!(
            check_cartesian_submaximality(&top_rhs, &grid(&[1.0, 2.0]), 0.0)
                .unwrap()
                .passed()
        );
        let top_lhs = GridSupremand::new(
            vec![1.0, 2.0],
            vec![
                vec![ExtReal::Finite(0.0), ExtReal::Top],
                vec![ExtReal::Top, ExtReal::Finite(0.0)],
            ],
        )
        .unwrap();
        let r = check_cartesian_submaximality(&top_lhs, &grid(&[1.0, 2.0]), 0.0).unwrap();
        let w = r.witness().unwrap();
        // (1, 1, 1): h(2, 1) = TOP > max{h(1,1), h(1,1), h(1,1)} = 0
        assert_eq!(w.arguments, vec![1.0, 1.0, 1.0]);
        assert_eq!(w.lhs, ExtReal::Top);
        assert_eq!(w.slack, None);
    }

    fn step(flipped: bool) -> Supremand {
        let src = if flipped {
            "branch(x - 1, 1, 0, 0)"
        } else {
            "branch(x - 1, 0, 1, 1)"
        };
        Supremand::from_expression(crate::expr::Expr::parse(src).unwrap(), ExtReal::ZERO)
    }

    #[test]
    fn lsc_flags_upper_step() {
        let r = check_lsc_numeric(&step(false), &[(1.0, 0.5)], 1e-3, 32, 0.0).unwrap();
        assert!(!r.passed());
        let w = r.witness().unwrap();
        assert_eq!(&w.arguments[..2], &[1.0, 0.5]);
        assert!(w.arguments[2] < 1.0);
        assert_eq!((w.lhs, w.rhs), (ExtReal::Finite(1.0), ExtReal::Finite(0.0)));
        assert_eq!(r.lsc_resolution(), Some((1e-3, 32)));
    }

    #[test]
    fn lsc_accepts_lower_step_and_continuous() {
        assert!(check_lsc_numeric(&step(true), &[(1.0, 0.5)], 1e-3, 32, 0.0)
            .unwrap()
            .passed());
        let h = catalog("sin-ratio-max", None).unwrap();
        let probes = [(0.5, 0.7), (1.0, 2.0), (PI, PI / 2.0)];
        assert!(check_lsc_numeric(&h, &probes, 1e-3, 32, 1e-12)
            .unwrap()
            .passed());
    }

    #[test]
    fn lsc_on_grid_is_vacuous() {
        let g = GridSupremand::new(vec![1.0], vec![vec![ExtReal::ZERO]]).unwrap();
        let r = check_lsc_numeric(&g, &[(1.0, 1.0)], 1e-3, 32, 0.0).unwrap();
        assert!(r.passed());
        assert_eq!(r.tuples_checked(), 0);
        assert_eq!(r.tuples_skipped(), 1);
        assert_eq!(r.note(), Some("lsc trivial on finite alphabet"));
    }

    #[test]
    fn lsc_parameter_errors() {
        let h = Supremand::constant(ExtReal::ZERO);
        assert!(check_lsc_numeric(&h, &[(1.0, 1.0)], 0.0, 8, 0.0).is_err());
        assert!(check_lsc_numeric(&h, &[(1.0, 1.0)], 1e-3, 0, 0.0).is_err());
        // a single-point net is just p itself, which is punctured away
        assert!(check_lsc_numeric(&h, &[(1.0, 1.0)], 1e-3, 1, 0.0).is_err());
        assert!(check_lsc_numeric(&h, &[], 1e-3, 8, 0.0).is_err());
        let quadrant = Supremand::from_fn("q", Domain::PositiveQuadrant, ExtReal::ZERO, |_, _| 1.0);
        assert!(check_lsc_numeric(&quadrant, &[(-1.0, 1.0)], 1e-3, 8, 0.0).is_err());
    }

    #[test]
    fn reports_render() {
        let h = catalog("sin-ratio-sum", None).unwrap();
        let r = check_cartesian_submaximality(&h, &grid(&[PI / 2.0, PI]), 1e-12).unwrap();
        let kv = r.to_kv();
        assert!(kv.starts_with("verdict\tfail\n"));
        assert!(kv.contains("witness_kind\tcartesian-submaximality\n"));
        let human = r.to_string();
        assert!(human.contains("FAIL"));
    }
}
